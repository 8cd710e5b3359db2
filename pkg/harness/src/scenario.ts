/**
 * Scenario JSON: seeds the data model before a sample runs and states what
 * the store must contain afterwards.
 *
 * {
 *   "entities": [
 *     {"id": "c1", "type": "Contact", "text": "all advisors in the committee"},
 *     {"id": "m1", "type": "Message", "sender": {"$ref": "c1"}, ...},
 *     {"id": "x", "type": "Content", "text": "decline", "store": false}
 *   ],
 *   "assertions": [
 *     {"entity_type": "CalendarEntity", "expected": []}
 *   ]
 * }
 *
 * Entities seed in listing order; a $ref must point at an id defined earlier.
 * "store": false constructs the entity (so later $refs can use it) without
 * putting it in the store. Assertion "expected" entries are either {"$ref"}
 * or inline field objects (type defaults to the assertion's entity_type);
 * the check is an order-insensitive multiset comparison.
 */

import { constructEntity, entityTypeDef, fail } from "./api.js";
import { DataModel, Entity, Value, valuesEqual } from "./model.js";

interface AssertionSpec {
  entityType: string;
  expected: Value[];
}

export interface Scenario {
  assertions: AssertionSpec[];
}

function scenarioError(message: string): never {
  fail("ScenarioError", message);
}

function asRecord(raw: unknown, what: string): Record<string, unknown> {
  if (typeof raw !== "object" || raw === null || Array.isArray(raw)) {
    scenarioError(`${what} must be a JSON object`);
  }
  return raw as Record<string, unknown>;
}

function buildValue(raw: unknown, ids: Map<string, Entity>): Value {
  if (raw === null || typeof raw === "boolean" || typeof raw === "number" || typeof raw === "string") {
    return raw;
  }
  if (Array.isArray(raw)) return raw.map((item) => buildValue(item, ids));
  const record = asRecord(raw, "field value");
  const ref = record["$ref"];
  if (typeof ref === "string") {
    const entity = ids.get(ref);
    if (entity === undefined) scenarioError(`$ref to unknown entity id ${JSON.stringify(ref)}`);
    return entity;
  }
  scenarioError("object field values must be {\"$ref\": id}");
}

function buildEntity(
  record: Record<string, unknown>,
  typeName: string,
  ids: Map<string, Entity>,
): Entity {
  const def = entityTypeDef(typeName);
  if (def === undefined) scenarioError(`unknown entity type ${JSON.stringify(typeName)}`);
  const kwargs = new Map<string, Value>();
  for (const [key, raw] of Object.entries(record)) {
    if (key === "id" || key === "type" || key === "store") continue;
    kwargs.set(key, buildValue(raw, ids));
  }
  return constructEntity(def, kwargs);
}

/** Seed the model from scenario JSON and return the parsed assertions. */
export function seedScenario(model: DataModel, raw: unknown): Scenario {
  if (raw === null || raw === undefined) return { assertions: [] };
  const root = asRecord(raw, "scenario");
  const ids = new Map<string, Entity>();

  const entities = root["entities"] ?? [];
  if (!Array.isArray(entities)) scenarioError("\"entities\" must be a list");
  for (const item of entities) {
    const record = asRecord(item, "entity spec");
    const typeName = record["type"];
    if (typeof typeName !== "string") scenarioError("entity spec needs a string \"type\"");
    const entity = buildEntity(record, typeName, ids);
    const id = record["id"];
    if (id !== undefined) {
      if (typeof id !== "string") scenarioError("entity \"id\" must be a string");
      if (ids.has(id)) scenarioError(`duplicate entity id ${JSON.stringify(id)}`);
      ids.set(id, entity);
    }
    if (record["store"] !== false) model.append(entity);
  }
  model.markSeeded();

  const assertions: AssertionSpec[] = [];
  const rawAssertions = root["assertions"] ?? [];
  if (!Array.isArray(rawAssertions)) scenarioError("\"assertions\" must be a list");
  for (const item of rawAssertions) {
    const record = asRecord(item, "assertion spec");
    const entityType = record["entity_type"];
    if (typeof entityType !== "string") scenarioError("assertion needs a string \"entity_type\"");
    if (entityTypeDef(entityType) === undefined) {
      scenarioError(`unknown entity type ${JSON.stringify(entityType)}`);
    }
    const rawExpected = record["expected"];
    if (!Array.isArray(rawExpected)) scenarioError("assertion \"expected\" must be a list");
    const expected: Value[] = rawExpected.map((raw) => {
      const spec = asRecord(raw, "expected entity");
      if (typeof spec["$ref"] === "string") return buildValue(spec, ids);
      const inlineType = typeof spec["type"] === "string" ? (spec["type"] as string) : entityType;
      return buildEntity(spec, inlineType, ids);
    });
    assertions.push({ entityType, expected });
  }
  return { assertions };
}

/** Compare the store against the assertions; return mismatch details. */
export function checkAssertions(model: DataModel, scenario: Scenario): string[] {
  const details: string[] = [];
  for (const { entityType, expected } of scenario.assertions) {
    const actual = model.getData(entityType);
    if (actual.length !== expected.length) {
      details.push(`${entityType}: expected ${expected.length}, found ${actual.length}`);
      continue;
    }
    const unmatched = actual.slice();
    let ok = true;
    for (const want of expected) {
      const hit = unmatched.findIndex((got) => valuesEqual(got, want));
      if (hit < 0) {
        ok = false;
        break;
      }
      unmatched.splice(hit, 1);
    }
    if (!ok) details.push(`${entityType}: stored entities do not match the expected set`);
  }
  return details;
}
