/** In-memory data model: typed entity records in insertion order. */

export type Value =
  | null
  | boolean
  | number
  | string
  | Value[]
  | Entity;

export class Entity {
  readonly entityType: string;
  readonly fields: Map<string, Value>;

  constructor(entityType: string, fields: Map<string, Value>) {
    this.entityType = entityType;
    this.fields = fields;
  }
}

/** Structural equality: entities compare by type and fields, lists elementwise. */
export function valuesEqual(a: Value, b: Value): boolean {
  if (a instanceof Entity || b instanceof Entity) {
    if (!(a instanceof Entity) || !(b instanceof Entity)) return false;
    if (a === b) return true;
    if (a.entityType !== b.entityType) return false;
    if (a.fields.size !== b.fields.size) return false;
    for (const [key, value] of a.fields) {
      if (!b.fields.has(key)) return false;
      if (!valuesEqual(value, b.fields.get(key)!)) return false;
    }
    return true;
  }
  if (Array.isArray(a) || Array.isArray(b)) {
    if (!Array.isArray(a) || !Array.isArray(b)) return false;
    if (a.length !== b.length) return false;
    return a.every((item, i) => valuesEqual(item, b[i]));
  }
  // bool and number compare numerically, like the source language
  if (typeof a === "boolean" && typeof b === "number") return Number(a) === b;
  if (typeof a === "number" && typeof b === "boolean") return a === Number(b);
  return a === b;
}

/**
 * Filter equality: entities compare by IDENTITY, everything else like
 * valuesEqual. Two distinct seeded contacts can carry identical text; a
 * find_* keyed on one of them must not return records linked to the other.
 */
export function filterEquals(a: Value, b: Value): boolean {
  if (a instanceof Entity || b instanceof Entity) return a === b;
  if (Array.isArray(a) || Array.isArray(b)) {
    if (!Array.isArray(a) || !Array.isArray(b)) return false;
    if (a.length !== b.length) return false;
    return a.every((item, i) => filterEquals(item, b[i]));
  }
  return valuesEqual(a, b);
}

export interface MutationRecord {
  type: string;
  action: string;
}

/** One row of the per-type reply summary. */
export interface MutationSummary {
  type: string;
  count: number;
  actions: string[];
}

export class DataModel {
  private store: Entity[] = [];
  private log: MutationRecord[] = [];
  private seedCounts = new Map<string, number>();

  append(entity: Entity): void {
    this.store.push(entity);
  }

  markSeeded(): void {
    this.seedCounts = new Map();
    for (const e of this.store) {
      this.seedCounts.set(e.entityType, (this.seedCounts.get(e.entityType) ?? 0) + 1);
    }
  }

  getData(entityType: string): Entity[] {
    return this.store.filter((e) => e.entityType === entityType);
  }

  /** All records of a type whose provided fields all match; omitted = wildcard. */
  filter(entityType: string, filters: Map<string, Value>): Entity[] {
    return this.getData(entityType).filter((e) => {
      for (const [key, want] of filters) {
        const got = e.fields.get(key);
        if (got === undefined || !filterEquals(got, want)) return false;
      }
      return true;
    });
  }

  /** Record a non-mutating action invocation in the per-type summary. */
  note(entityType: string, action: string): void {
    this.log.push({ type: entityType, action });
  }

  create(entity: Entity, action: string): Entity {
    this.store.push(entity);
    this.log.push({ type: entity.entityType, action: `${action}: created 1` });
    return entity;
  }

  delete(entityType: string, filters: Map<string, Value>, action: string): number {
    const doomed = new Set(this.filter(entityType, filters));
    this.store = this.store.filter((e) => !doomed.has(e));
    this.log.push({ type: entityType, action: `${action}: removed ${doomed.size}` });
    return doomed.size;
  }

  /** Per-type summary: final count plus the action invocations that touched it. */
  mutationSummary(): MutationSummary[] {
    const types = new Set<string>();
    for (const e of this.store) types.add(e.entityType);
    for (const r of this.log) types.add(r.type);
    for (const t of this.seedCounts.keys()) types.add(t);
    return [...types].sort().map((type) => ({
      type,
      count: this.getData(type).length,
      actions: this.log.filter((r) => r.type === type).map((r) => r.action),
    }));
  }
}
