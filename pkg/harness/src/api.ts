/** The simulated API surface: entity types plus action namespaces.
 *
 * Entity types declare their field names; constructing one with an unknown
 * keyword is a TypeError, mirroring "incorrectly calling functions with
 * unexpected arguments" being a runtime failure. New types and actions are
 * added through registerEntityType / registerNamespace.
 */

import { DataModel, Entity, Value } from "./model.js";
import { spansMatch } from "./matcher.js";

export class RuntimeFailure extends Error {
  readonly kind: string;

  constructor(kind: string, message: string) {
    super(`${kind}: ${message}`);
    this.kind = kind;
  }
}

export function fail(kind: string, message: string): never {
  throw new RuntimeFailure(kind, message);
}

export interface EntityTypeDef {
  name: string;
  fields: readonly string[];
}

const registry = new Map<string, EntityTypeDef>();

export function registerEntityType(name: string, fields: readonly string[]): EntityTypeDef {
  const def = { name, fields };
  registry.set(name, def);
  return def;
}

export function entityTypeDef(name: string): EntityTypeDef | undefined {
  return registry.get(name);
}

export function entityTypeNames(): string[] {
  return [...registry.keys()];
}

// the core surface: the ten record types the scenarios seed
registerEntityType("Contact", ["text"]);
registerEntityType("Content", ["text"]);
registerEntityType("DateTime", ["text"]);
registerEntityType("EventName", ["text"]);
registerEntityType("Message", ["sender", "recipient", "content", "text"]);
registerEntityType("CalendarEntity", ["event_name", "participants", "date_time"]);
registerEntityType("Reminder", ["date_time", "content", "text"]);
registerEntityType("WeatherForecast", ["date_time", "location", "condition", "text"]);
registerEntityType("Product", ["text", "price"]);
registerEntityType("Response", ["text", "product"]);
// registered extension, not part of the core ten
registerEntityType("Timer", ["date_time", "duration", "text"]);

export function constructEntity(def: EntityTypeDef, kwargs: Map<string, Value>): Entity {
  for (const key of kwargs.keys()) {
    if (!def.fields.includes(key)) {
      fail("TypeError", `${def.name}() got an unexpected keyword argument '${key}'`);
    }
  }
  return new Entity(def.name, new Map(kwargs));
}

function textOf(entity: Entity): string | null {
  const text = entity.fields.get("text");
  return typeof text === "string" ? text : null;
}

/** Seeded entities of a type whose stored text the span matches. */
export function resolveManyFromText(
  model: DataModel,
  def: EntityTypeDef,
  span: Value,
): Entity[] {
  if (typeof span !== "string") {
    fail("TypeError", `${def.name}.resolve_from_text expects a string span`);
  }
  const found = model
    .getData(def.name)
    .filter((e) => textOf(e) !== null && spansMatch(span as string, textOf(e)!));
  if (found.length === 0) {
    fail("ResolutionError", `no ${def.name} matches ${JSON.stringify(span)}`);
  }
  return found;
}

export function resolveFromText(model: DataModel, def: EntityTypeDef, span: Value): Entity {
  return resolveManyFromText(model, def, span)[0];
}

function linkedEntities(def: EntityTypeDef, source: Value): Entity[] {
  const out: Entity[] = [];
  const visit = (value: Value): void => {
    if (value instanceof Entity) {
      if (value.entityType === def.name) out.push(value);
      return;
    }
    if (Array.isArray(value)) value.forEach(visit);
  };
  if (source instanceof Entity) {
    for (const value of source.fields.values()) visit(value);
  } else if (Array.isArray(source)) {
    for (const item of source) {
      if (item instanceof Entity) for (const value of item.fields.values()) visit(value);
    }
  } else {
    fail("TypeError", `${def.name}.resolve_from_entity expects an entity or list`);
  }
  return out;
}

export function resolveManyFromEntity(def: EntityTypeDef, source: Value): Entity[] {
  const found = linkedEntities(def, source);
  if (found.length === 0) {
    fail("ResolutionError", `source carries no linked ${def.name}`);
  }
  return found;
}

export function resolveFromEntity(def: EntityTypeDef, source: Value): Entity {
  return resolveManyFromEntity(def, source)[0];
}

export type ActionFn = (model: DataModel, kwargs: Map<string, Value>) => Value;

export interface NamespaceDef {
  name: string;
  actions: Map<string, ActionFn>;
}

const namespaces = new Map<string, NamespaceDef>();

export function registerNamespace(
  name: string,
  actions: Record<string, ActionFn>,
): NamespaceDef {
  const def = { name, actions: new Map(Object.entries(actions)) };
  namespaces.set(name, def);
  return def;
}

export function namespaceDef(name: string): NamespaceDef | undefined {
  return namespaces.get(name);
}

function requireKwargs(
  action: string,
  kwargs: Map<string, Value>,
  allowed: readonly string[],
): void {
  for (const key of kwargs.keys()) {
    if (!allowed.includes(key)) {
      fail("TypeError", `${action}() got an unexpected keyword argument '${key}'`);
    }
  }
}

function finder(typeName: string, action: string): ActionFn {
  return (model, kwargs) => {
    const def = registry.get(typeName)!;
    requireKwargs(action, kwargs, def.fields);
    const found = model.filter(typeName, kwargs);
    model.note(typeName, `${action}: found ${found.length}`);
    return found;
  };
}

function creator(typeName: string, action: string): ActionFn {
  return (model, kwargs) => {
    const entity = constructEntity(registry.get(typeName)!, kwargs);
    return model.create(entity, action);
  };
}

registerNamespace("Messages", {
  find_messages: finder("Message", "Messages.find_messages"),
  send_message: creator("Message", "Messages.send_message"),
});

registerNamespace("Calendar", {
  find_events: finder("CalendarEntity", "Calendar.find_events"),
  delete_events: (model, kwargs) => {
    const def = registry.get("CalendarEntity")!;
    requireKwargs("Calendar.delete_events", kwargs, def.fields);
    model.delete("CalendarEntity", kwargs, "Calendar.delete_events");
    return null;
  },
});

registerNamespace("Reminders", {
  create_reminder: creator("Reminder", "Reminders.create_reminder"),
});

registerNamespace("Weather", {
  find_weather_forecasts: finder("WeatherForecast", "Weather.find_weather_forecasts"),
});

registerNamespace("Shopping", {
  find_products: finder("Product", "Shopping.find_products"),
  order: (model, kwargs) => {
    requireKwargs("Shopping.order", kwargs, ["product"]);
    const fields = new Map<string, Value>([["text", "order placed"]]);
    const product = kwargs.get("product");
    if (product !== undefined) fields.set("product", product);
    return model.create(new Entity("Response", fields), "Shopping.order");
  },
});

registerNamespace("Responder", {
  respond: (model, kwargs) => {
    requireKwargs("Responder.respond", kwargs, ["text", "response"]);
    const text = kwargs.get("text") ?? kwargs.get("response") ?? "";
    const rendered = typeof text === "string" ? text : JSON.stringify(text);
    return model.create(
      new Entity("Response", new Map([["text", rendered as Value]])),
      "Responder.respond",
    );
  },
});

registerNamespace("Clock", {
  create_timer: creator("Timer", "Clock.create_timer"),
});
