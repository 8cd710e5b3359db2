/**
 * Tree-walking interpreter for the statement subset.
 *
 * Values are the data-model values plus a few callable wrappers (entity
 * types, namespaces, builtins, bound methods). A wall-clock deadline is
 * checked on every statement and loop iteration; blowing it raises
 * TimeoutSignal, which the runner maps to the "timeout" status.
 */

import {
  entityTypeDef,
  EntityTypeDef,
  constructEntity,
  fail,
  namespaceDef,
  NamespaceDef,
  resolveFromEntity,
  resolveFromText,
  resolveManyFromEntity,
  resolveManyFromText,
  RuntimeFailure,
} from "./api.js";
import { DataModel, Entity, Value, valuesEqual } from "./model.js";
import { Expr, Stmt } from "./parser.js";

export class TimeoutSignal extends Error {
  constructor() {
    super("timed out");
  }
}

type EtypeVal = { kind: "etype"; def: EntityTypeDef };
type NsVal = { kind: "ns"; def: NamespaceDef };
type BuiltinVal = { kind: "builtin"; name: string };
type BoundVal = { kind: "bound"; recv: Value[] | EtypeVal | NsVal; name: string };
type RVal = Value | EtypeVal | NsVal | BuiltinVal | BoundVal;

const BUILTINS = new Set(["all", "any", "bool", "len", "range", "str"]);

function isWrapper(v: RVal): v is EtypeVal | NsVal | BuiltinVal | BoundVal {
  return (
    typeof v === "object" && v !== null && !Array.isArray(v) &&
    !(v instanceof Entity) && "kind" in v
  );
}

function asValue(v: RVal, what: string): Value {
  if (isWrapper(v)) fail("TypeError", `${what} is not a data value`);
  return v;
}

export function truthy(v: Value): boolean {
  if (v === null) return false;
  if (typeof v === "boolean") return v;
  if (typeof v === "number") return v !== 0;
  if (typeof v === "string") return v.length > 0;
  if (Array.isArray(v)) return v.length > 0;
  return true; // entities
}

function typeName(v: RVal): string {
  if (v === null) return "NoneType";
  if (typeof v === "boolean") return "bool";
  if (typeof v === "number") return Number.isInteger(v) ? "int" : "float";
  if (typeof v === "string") return "str";
  if (Array.isArray(v)) return "list";
  if (v instanceof Entity) return v.entityType;
  return v.kind;
}

export class Interpreter {
  private env = new Map<string, RVal>();
  private ops = 0;

  constructor(private model: DataModel, private deadline: number) {}

  /** Read a top-level binding (test/debug hook). */
  binding(name: string): unknown {
    return this.env.get(name);
  }

  private tick(): void {
    this.ops += 1;
    if ((this.ops & 63) === 0 && Date.now() > this.deadline) {
      throw new TimeoutSignal();
    }
  }

  private checkDeadline(): void {
    if (Date.now() > this.deadline) throw new TimeoutSignal();
  }

  run(body: Stmt[]): void {
    this.execBlock(body);
  }

  private execBlock(body: Stmt[]): void {
    for (const stmt of body) this.exec(stmt);
  }

  private exec(stmt: Stmt): void {
    this.checkDeadline();
    switch (stmt.k) {
      case "pass":
        return;
      case "exprstmt":
        this.eval(stmt.value);
        return;
      case "assign": {
        const value = this.eval(stmt.value);
        for (const target of stmt.targets) this.assign(target, value);
        return;
      }
      case "aug": {
        const current = this.eval(stmt.target);
        const incr = this.eval(stmt.value);
        this.assign(stmt.target, this.binop("+", current, incr));
        return;
      }
      case "ann": {
        if (stmt.value !== null) this.assign(stmt.target, this.eval(stmt.value));
        return;
      }
      case "if": {
        if (truthy(asValue(this.eval(stmt.test), "condition"))) {
          this.execBlock(stmt.body);
        } else {
          this.execBlock(stmt.orelse);
        }
        return;
      }
      case "while": {
        while (truthy(asValue(this.eval(stmt.test), "condition"))) {
          this.checkDeadline();
          this.execBlock(stmt.body);
        }
        this.execBlock(stmt.orelse);
        return;
      }
      case "for": {
        const iter = this.eval(stmt.iter);
        const items = this.iterate(iter);
        for (const item of items) {
          this.checkDeadline();
          this.assign(stmt.target, item);
          this.execBlock(stmt.body);
        }
        this.execBlock(stmt.orelse);
        return;
      }
    }
  }

  private iterate(v: RVal): RVal[] {
    if (Array.isArray(v)) return v.slice();
    if (typeof v === "string") return v.split("");
    fail("TypeError", `'${typeName(v)}' object is not iterable`);
  }

  private assign(target: Expr, value: RVal): void {
    switch (target.k) {
      case "name":
        this.env.set(target.id, value);
        return;
      case "tuple":
      case "list": {
        if (!Array.isArray(value)) {
          fail("TypeError", `cannot unpack non-sequence ${typeName(value)}`);
        }
        if (value.length !== target.items.length) {
          fail(
            "ValueError",
            `expected ${target.items.length} values to unpack, got ${value.length}`,
          );
        }
        target.items.forEach((item, i) => this.assign(item, value[i]));
        return;
      }
      case "attr": {
        const obj = this.eval(target.value);
        if (!(obj instanceof Entity)) {
          fail("TypeError", `cannot set attribute on ${typeName(obj)}`);
        }
        const def = entityTypeDef(obj.entityType);
        if (def !== undefined && !def.fields.includes(target.attr)) {
          fail("TypeError", `${obj.entityType} has no field '${target.attr}'`);
        }
        obj.fields.set(target.attr, asValue(value, "field value"));
        return;
      }
      case "sub": {
        const obj = this.eval(target.value);
        if (!Array.isArray(obj)) {
          fail("TypeError", `'${typeName(obj)}' object does not support item assignment`);
        }
        const idx = this.index(obj, this.eval(target.index));
        obj[idx] = asValue(value, "list item");
        return;
      }
      default:
        fail("TypeError", "invalid assignment target");
    }
  }

  private index(seq: Value[] | string, raw: RVal): number {
    if (typeof raw !== "number" || !Number.isInteger(raw)) {
      fail("TypeError", "indices must be integers");
    }
    const n = seq.length;
    const idx = raw < 0 ? raw + n : raw;
    if (idx < 0 || idx >= n) fail("IndexError", "index out of range");
    return idx;
  }

  private eval(expr: Expr): RVal {
    this.tick();
    switch (expr.k) {
      case "num":
        return expr.v;
      case "str":
        return expr.v;
      case "bool":
        return expr.v;
      case "none":
        return null;
      case "name":
        return this.lookup(expr.id);
      case "list":
      case "tuple":
        return expr.items.map((item) => asValue(this.eval(item), "sequence item"));
      case "attr":
        return this.getAttr(this.eval(expr.value), expr.attr);
      case "sub": {
        const obj = this.eval(expr.value);
        if (typeof obj === "string") return obj[this.index(obj, this.eval(expr.index))];
        if (Array.isArray(obj)) return obj[this.index(obj, this.eval(expr.index))];
        fail("TypeError", `'${typeName(obj)}' object is not subscriptable`);
        return null; // unreachable
      }
      case "unary": {
        const operand = this.eval(expr.operand);
        if (expr.op === "not") return !truthy(asValue(operand, "operand"));
        if (typeof operand !== "number" && typeof operand !== "boolean") {
          fail("TypeError", `bad operand type for unary -: '${typeName(operand)}'`);
        }
        return -Number(operand);
      }
      case "boolop": {
        let last: RVal = null;
        for (const part of expr.values) {
          last = this.eval(part);
          const t = truthy(asValue(last, "operand"));
          if (expr.op === "and" && !t) return last;
          if (expr.op === "or" && t) return last;
        }
        return last;
      }
      case "bin":
        return this.binop(
          expr.op,
          this.eval(expr.left),
          this.eval(expr.right),
        );
      case "compare": {
        let left = this.eval(expr.left);
        for (let i = 0; i < expr.ops.length; i++) {
          const right = this.eval(expr.comparators[i]);
          if (!this.compareOnce(expr.ops[i], left, right)) return false;
          left = right;
        }
        return true;
      }
      case "call":
        return this.call(expr);
    }
  }

  private lookup(id: string): RVal {
    const bound = this.env.get(id);
    if (bound !== undefined) return bound;
    const etype = entityTypeDef(id);
    if (etype !== undefined) return { kind: "etype", def: etype };
    const ns = namespaceDef(id);
    if (ns !== undefined) return { kind: "ns", def: ns };
    if (BUILTINS.has(id)) return { kind: "builtin", name: id };
    fail("NameError", `name '${id}' is not defined`);
  }

  private getAttr(obj: RVal, attr: string): RVal {
    if (obj instanceof Entity) {
      const got = obj.fields.get(attr);
      if (got === undefined) {
        fail("AttributeError", `'${obj.entityType}' object has no attribute '${attr}'`);
      }
      return got;
    }
    if (Array.isArray(obj)) {
      if (attr === "append") return { kind: "bound", recv: obj, name: "append" };
      fail("AttributeError", `'list' object has no attribute '${attr}'`);
    }
    if (isWrapper(obj)) {
      if (obj.kind === "etype") {
        if (
          attr === "resolve_from_text" || attr === "resolve_many_from_text" ||
          attr === "resolve_from_entity" || attr === "resolve_many_from_entity"
        ) {
          return { kind: "bound", recv: obj, name: attr };
        }
        fail("AttributeError", `type '${obj.def.name}' has no attribute '${attr}'`);
      }
      if (obj.kind === "ns") {
        if (obj.def.actions.has(attr)) {
          return { kind: "bound", recv: obj, name: attr };
        }
        fail("AttributeError", `'${obj.def.name}' has no action '${attr}'`);
      }
    }
    fail("AttributeError", `'${typeName(obj)}' object has no attribute '${attr}'`);
  }

  private call(expr: Expr & { k: "call" }): RVal {
    const callee = this.eval(expr.func);
    const args = expr.args.map((a) => this.eval(a));
    const kwargs = new Map<string, Value>();
    for (const [name, valueExpr] of expr.kwargs) {
      if (kwargs.has(name)) fail("TypeError", `repeated keyword argument '${name}'`);
      kwargs.set(name, asValue(this.eval(valueExpr), `argument '${name}'`));
    }

    if (isWrapper(callee)) {
      if (callee.kind === "etype") {
        if (args.length > 0) {
          fail("TypeError", `${callee.def.name}() takes keyword arguments only`);
        }
        return constructEntity(callee.def, kwargs);
      }
      if (callee.kind === "builtin") return this.callBuiltin(callee.name, args, kwargs);
      if (callee.kind === "bound") return this.callBound(callee, args, kwargs);
      fail("TypeError", `'${typeName(callee)}' object is not callable`);
    }
    fail("TypeError", `'${typeName(callee)}' object is not callable`);
  }

  private callBound(bound: BoundVal, args: RVal[], kwargs: Map<string, Value>): RVal {
    const recv = bound.recv;
    if (Array.isArray(recv)) {
      // list.append
      if (args.length !== 1 || kwargs.size > 0) {
        fail("TypeError", "append() takes exactly one argument");
      }
      recv.push(asValue(args[0], "list item"));
      return null;
    }
    if (recv.kind === "etype") {
      const def = recv.def;
      if (kwargs.size > 0 || args.length !== 1) {
        fail("TypeError", `${bound.name}() takes exactly one positional argument`);
      }
      const arg = asValue(args[0], "argument");
      switch (bound.name) {
        case "resolve_from_text":
          return resolveFromText(this.model, def, arg);
        case "resolve_many_from_text":
          return resolveManyFromText(this.model, def, arg);
        case "resolve_from_entity":
          return resolveFromEntity(def, arg);
        case "resolve_many_from_entity":
          return resolveManyFromEntity(def, arg);
      }
      fail("AttributeError", `type '${def.name}' has no attribute '${bound.name}'`);
    }
    if (args.length > 0) {
      fail("TypeError", `${recv.def.name}.${bound.name}() takes keyword arguments only`);
    }
    return recv.def.actions.get(bound.name)!(this.model, kwargs);
  }

  private callBuiltin(name: string, args: RVal[], kwargs: Map<string, Value>): RVal {
    if (kwargs.size > 0) fail("TypeError", `${name}() takes no keyword arguments`);
    switch (name) {
      case "len": {
        if (args.length !== 1) fail("TypeError", "len() takes exactly one argument");
        const v = args[0];
        if (typeof v === "string" || Array.isArray(v)) return v.length;
        fail("TypeError", `object of type '${typeName(v)}' has no len()`);
        return null;
      }
      case "bool": {
        if (args.length > 1) fail("TypeError", "bool() takes at most one argument");
        return args.length === 0 ? false : truthy(asValue(args[0], "argument"));
      }
      case "all":
      case "any": {
        if (args.length !== 1) fail("TypeError", `${name}() takes exactly one argument`);
        const items = this.iterate(args[0]);
        for (const item of items) {
          const t = truthy(asValue(item, "item"));
          if (name === "all" && !t) return false;
          if (name === "any" && t) return true;
        }
        return name === "all";
      }
      case "str": {
        if (args.length > 1) fail("TypeError", "str() takes at most one argument");
        if (args.length === 0) return "";
        return this.stringify(asValue(args[0], "argument"));
      }
      case "range": {
        if (args.length < 1 || args.length > 3) {
          fail("TypeError", "range() takes one to three arguments");
        }
        const nums = args.map((a) => {
          if (typeof a !== "number" || !Number.isInteger(a)) {
            fail("TypeError", "range() arguments must be integers");
          }
          return a;
        });
        let [start, stop, step] = [0, 0, 1];
        if (nums.length === 1) stop = nums[0];
        else if (nums.length === 2) [start, stop] = [nums[0], nums[1]];
        else [start, stop, step] = [nums[0], nums[1], nums[2]];
        if (step === 0) fail("ValueError", "range() step must not be zero");
        const count = step > 0
          ? Math.max(0, Math.ceil((stop - start) / step))
          : Math.max(0, Math.ceil((start - stop) / -step));
        if (count > 10_000_000) fail("OverflowError", "range() result too large");
        const out: number[] = new Array(count);
        for (let i = 0; i < count; i++) out[i] = start + i * step;
        return out;
      }
    }
    fail("NameError", `name '${name}' is not defined`);
  }

  private stringify(v: Value): string {
    if (v === null) return "None";
    if (typeof v === "boolean") return v ? "True" : "False";
    if (typeof v === "number") return String(v);
    if (typeof v === "string") return v;
    if (Array.isArray(v)) return `[${v.map((x) => this.reprish(x)).join(", ")}]`;
    return `${v.entityType}(...)`;
  }

  private reprish(v: Value): string {
    if (typeof v === "string") return `'${v}'`;
    return this.stringify(v);
  }

  private binop(op: "+" | "-" | "*" | "/", left: RVal, right: RVal): Value {
    if (op === "+") {
      if (typeof left === "string" && typeof right === "string") return left + right;
      if (Array.isArray(left) && Array.isArray(right)) return [...left, ...right];
    }
    const lNum = typeof left === "number" || typeof left === "boolean";
    const rNum = typeof right === "number" || typeof right === "boolean";
    if (lNum && rNum) {
      const a = Number(left);
      const b = Number(right);
      switch (op) {
        case "+":
          return a + b;
        case "-":
          return a - b;
        case "*":
          return a * b;
        case "/":
          if (b === 0) fail("ZeroDivisionError", "division by zero");
          return a / b;
      }
    }
    if (op === "*" && Array.isArray(left) && typeof right === "number") {
      return this.repeatList(left, right);
    }
    if (op === "*" && typeof left === "number" && Array.isArray(right)) {
      return this.repeatList(right, left);
    }
    if (op === "*" && typeof left === "string" && typeof right === "number") {
      return left.repeat(Math.max(0, Math.trunc(right)));
    }
    fail(
      "TypeError",
      `unsupported operand type(s) for ${op}: '${typeName(left)}' and '${typeName(right)}'`,
    );
  }

  private repeatList(items: Value[], count: number): Value[] {
    if (!Number.isInteger(count)) fail("TypeError", "can't multiply list by non-int");
    const n = Math.max(0, count);
    if (n * items.length > 10_000_000) fail("OverflowError", "repeated list too large");
    const out: Value[] = [];
    for (let i = 0; i < n; i++) out.push(...items);
    return out;
  }

  private compareOnce(op: string, left: RVal, right: RVal): boolean {
    if (op === "==" || op === "!=") {
      const eq = valuesEqual(asValue(left, "operand"), asValue(right, "operand"));
      return op === "==" ? eq : !eq;
    }
    if (op === "in" || op === "not in") {
      const member = this.contains(asValue(right, "container"), asValue(left, "member"));
      return op === "in" ? member : !member;
    }
    const lv = asValue(left, "operand");
    const rv = asValue(right, "operand");
    const lNum = typeof lv === "number" || typeof lv === "boolean";
    const rNum = typeof rv === "number" || typeof rv === "boolean";
    let result: boolean;
    if (lNum && rNum) {
      const a = Number(lv);
      const b = Number(rv);
      result = op === "<" ? a < b : op === "<=" ? a <= b : op === ">" ? a > b : a >= b;
    } else if (typeof lv === "string" && typeof rv === "string") {
      result = op === "<" ? lv < rv : op === "<=" ? lv <= rv : op === ">" ? lv > rv : lv >= rv;
    } else {
      fail(
        "TypeError",
        `'${op}' not supported between instances of '${typeName(lv)}' and '${typeName(rv)}'`,
      );
      return false;
    }
    return result;
  }

  private contains(container: Value, member: Value): boolean {
    if (Array.isArray(container)) {
      return container.some((item) => valuesEqual(item, member));
    }
    if (typeof container === "string") {
      if (typeof member !== "string") {
        fail("TypeError", "'in <string>' requires string as left operand");
      }
      return container.includes(member);
    }
    fail("TypeError", `argument of type '${typeName(container)}' is not iterable`);
  }
}

export { RuntimeFailure };
