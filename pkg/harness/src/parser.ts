/** Recursive-descent parser producing the statement/expression tree. */

import { CodeSyntaxError, Tok, tokenize } from "./lexer.js";

export type Expr =
  | { k: "name"; id: string }
  | { k: "str"; v: string }
  | { k: "num"; v: number }
  | { k: "bool"; v: boolean }
  | { k: "none" }
  | { k: "attr"; value: Expr; attr: string }
  | { k: "call"; func: Expr; args: Expr[]; kwargs: Array<[string, Expr]> }
  | { k: "list"; items: Expr[] }
  | { k: "tuple"; items: Expr[] }
  | { k: "boolop"; op: "and" | "or"; values: Expr[] }
  | { k: "unary"; op: "not" | "-"; operand: Expr }
  | { k: "compare"; left: Expr; ops: string[]; comparators: Expr[] }
  | { k: "bin"; op: "+" | "-" | "*" | "/"; left: Expr; right: Expr }
  | { k: "sub"; value: Expr; index: Expr };

export type Stmt =
  | { k: "assign"; targets: Expr[]; value: Expr; line: number }
  | { k: "aug"; target: Expr; op: "+="; value: Expr; line: number }
  | { k: "ann"; target: Expr; ann: Expr; value: Expr | null; line: number }
  | { k: "exprstmt"; value: Expr; line: number }
  | { k: "pass"; line: number }
  | { k: "if"; test: Expr; body: Stmt[]; orelse: Stmt[]; line: number }
  | { k: "for"; target: Expr; iter: Expr; body: Stmt[]; orelse: Stmt[]; line: number }
  | { k: "while"; test: Expr; body: Stmt[]; orelse: Stmt[]; line: number };

const COMPARE_OPS = new Set(["==", "!=", "<", "<=", ">", ">="]);

class Parser {
  private toks: Tok[];
  private i = 0;

  constructor(source: string) {
    this.toks = tokenize(source);
  }

  private peek(): Tok {
    return this.toks[this.i];
  }

  private next(): Tok {
    return this.toks[this.i++];
  }

  private at(kind: string, value?: string): boolean {
    const t = this.peek();
    return t.kind === kind && (value === undefined || t.value === value);
  }

  private eat(kind: string, value?: string): Tok | null {
    if (this.at(kind, value)) return this.next();
    return null;
  }

  private expect(kind: string, value?: string): Tok {
    const t = this.peek();
    if (!this.at(kind, value)) {
      const want = value ?? kind;
      throw new CodeSyntaxError(`expected ${want}, got ${t.value || t.kind}`, t.line);
    }
    return this.next();
  }

  parseProgram(): Stmt[] {
    const body: Stmt[] = [];
    while (!this.at("eof")) {
      if (this.eat("newline")) continue;
      body.push(this.stmt());
    }
    return body;
  }

  private stmt(): Stmt {
    const t = this.peek();
    if (t.kind === "keyword") {
      if (t.value === "if") return this.ifStmt();
      if (t.value === "for") return this.forStmt();
      if (t.value === "while") return this.whileStmt();
      if (t.value === "pass") {
        this.next();
        this.expect("newline");
        return { k: "pass", line: t.line };
      }
    }
    return this.simpleStmt();
  }

  private simpleStmt(): Stmt {
    const line = this.peek().line;
    const first = this.exprList();
    if (this.eat("op", ":")) {
      this.requireTarget(first, "annotated assignment");
      if (first.k !== "name") {
        throw new CodeSyntaxError("only a name can be annotated", line);
      }
      const ann = this.expr();
      let value: Expr | null = null;
      if (this.eat("op", "=")) value = this.exprList();
      this.expect("newline");
      return { k: "ann", target: first, ann, value, line };
    }
    if (this.eat("op", "+=")) {
      this.requireTarget(first, "augmented assignment");
      const value = this.exprList();
      this.expect("newline");
      return { k: "aug", target: first, op: "+=", value, line };
    }
    if (this.at("op", "=")) {
      const targets: Expr[] = [first];
      let value: Expr = first;
      while (this.eat("op", "=")) {
        value = this.exprList();
        targets.push(value);
      }
      const last = targets.pop()!;
      for (const target of targets) this.requireTarget(target, "assignment");
      this.expect("newline");
      return { k: "assign", targets, value: last, line };
    }
    this.expect("newline");
    return { k: "exprstmt", value: first, line };
  }

  private requireTarget(e: Expr, what: string): void {
    if (e.k === "name" || e.k === "attr" || e.k === "sub") return;
    if (e.k === "tuple" || e.k === "list") {
      for (const item of e.items) this.requireTarget(item, what);
      return;
    }
    throw new CodeSyntaxError(`invalid target for ${what}`, this.peek().line);
  }

  private block(): Stmt[] {
    this.expect("op", ":");
    this.expect("newline");
    this.expect("indent");
    const body: Stmt[] = [];
    while (!this.at("dedent") && !this.at("eof")) {
      if (this.eat("newline")) continue;
      body.push(this.stmt());
    }
    this.expect("dedent");
    return body;
  }

  private ifStmt(): Stmt {
    const line = this.expect("keyword", "if").line;
    const test = this.expr();
    const body = this.block();
    let orelse: Stmt[] = [];
    if (this.at("keyword", "elif")) {
      const tok = this.next();
      this.i -= 1; // rewind: parse the elif chain as a nested if
      this.toks[this.i] = { ...tok, value: "if" };
      orelse = [this.stmt()];
    } else if (this.eat("keyword", "else")) {
      orelse = this.block();
    }
    return { k: "if", test, body, orelse, line };
  }

  private forStmt(): Stmt {
    const line = this.expect("keyword", "for").line;
    const target = this.targetList();
    this.requireTarget(target, "for loop");
    this.expect("keyword", "in");
    const iter = this.exprList();
    const body = this.block();
    const orelse = this.eat("keyword", "else") ? this.block() : [];
    return { k: "for", target, iter, body, orelse, line };
  }

  /**
   * Comma list of assignment targets, parsed below the comparison layer so
   * the for statement's own 'in' keyword is never taken for the operator.
   */
  private targetList(): Expr {
    const first = this.postfix();
    if (!this.at("op", ",")) return first;
    const items = [first];
    while (this.eat("op", ",")) {
      if (this.at("keyword", "in")) break; // trailing comma
      items.push(this.postfix());
    }
    return { k: "tuple", items };
  }

  private whileStmt(): Stmt {
    const line = this.expect("keyword", "while").line;
    const test = this.expr();
    const body = this.block();
    const orelse = this.eat("keyword", "else") ? this.block() : [];
    return { k: "while", test, body, orelse, line };
  }

  /** expr (',' expr)* [','] — a bare comma list is a tuple */
  private exprList(): Expr {
    const first = this.expr();
    if (!this.at("op", ",")) return first;
    const items = [first];
    while (this.eat("op", ",")) {
      if (this.listEnds()) break; // trailing comma
      items.push(this.expr());
    }
    return { k: "tuple", items };
  }

  private listEnds(): boolean {
    return (
      this.at("newline") || this.at("op", ")") || this.at("op", "]") ||
      this.at("op", ":") || this.at("op", "=") || this.at("eof")
    );
  }

  private expr(): Expr {
    return this.orExpr();
  }

  private orExpr(): Expr {
    let left = this.andExpr();
    if (!this.at("keyword", "or")) return left;
    const values = [left];
    while (this.eat("keyword", "or")) values.push(this.andExpr());
    return { k: "boolop", op: "or", values };
  }

  private andExpr(): Expr {
    const left = this.notExpr();
    if (!this.at("keyword", "and")) return left;
    const values = [left];
    while (this.eat("keyword", "and")) values.push(this.notExpr());
    return { k: "boolop", op: "and", values };
  }

  private notExpr(): Expr {
    if (this.eat("keyword", "not")) {
      return { k: "unary", op: "not", operand: this.notExpr() };
    }
    return this.comparison();
  }

  private comparison(): Expr {
    const left = this.arith();
    const ops: string[] = [];
    const comparators: Expr[] = [];
    for (;;) {
      if (this.at("op") && COMPARE_OPS.has(this.peek().value)) {
        ops.push(this.next().value);
      } else if (this.at("keyword", "in")) {
        this.next();
        ops.push("in");
      } else if (this.at("keyword", "not")) {
        // only 'not in' is valid here
        const save = this.i;
        this.next();
        if (!this.eat("keyword", "in")) {
          this.i = save;
          break;
        }
        ops.push("not in");
      } else {
        break;
      }
      comparators.push(this.arith());
    }
    if (ops.length === 0) return left;
    return { k: "compare", left, ops, comparators };
  }

  private arith(): Expr {
    let left = this.term();
    while (this.at("op", "+") || this.at("op", "-")) {
      const op = this.next().value as "+" | "-";
      left = { k: "bin", op, left, right: this.term() };
    }
    return left;
  }

  private term(): Expr {
    let left = this.unary();
    while (this.at("op", "*") || this.at("op", "/")) {
      const op = this.next().value as "*" | "/";
      left = { k: "bin", op, left, right: this.unary() };
    }
    return left;
  }

  private unary(): Expr {
    if (this.eat("op", "-")) {
      return { k: "unary", op: "-", operand: this.unary() };
    }
    return this.postfix();
  }

  private postfix(): Expr {
    let value = this.atom();
    for (;;) {
      if (this.eat("op", ".")) {
        const attr = this.expect("name").value;
        value = { k: "attr", value, attr };
      } else if (this.at("op", "(")) {
        value = this.callArgs(value);
      } else if (this.eat("op", "[")) {
        const index = this.exprList();
        this.expect("op", "]");
        value = { k: "sub", value, index };
      } else {
        return value;
      }
    }
  }

  private callArgs(func: Expr): Expr {
    this.expect("op", "(");
    const args: Expr[] = [];
    const kwargs: Array<[string, Expr]> = [];
    while (!this.at("op", ")")) {
      if (this.at("name") && this.toks[this.i + 1]?.kind === "op" && this.toks[this.i + 1].value === "=") {
        const name = this.next().value;
        this.next(); // '='
        kwargs.push([name, this.expr()]);
      } else {
        if (kwargs.length > 0) {
          throw new CodeSyntaxError("positional argument after keyword argument", this.peek().line);
        }
        args.push(this.expr());
      }
      if (!this.eat("op", ",")) break;
    }
    this.expect("op", ")");
    return { k: "call", func, args, kwargs };
  }

  private atom(): Expr {
    const t = this.peek();
    if (t.kind === "name") {
      this.next();
      return { k: "name", id: t.value };
    }
    if (t.kind === "string") {
      this.next();
      return { k: "str", v: t.value };
    }
    if (t.kind === "number") {
      this.next();
      return { k: "num", v: Number(t.value) };
    }
    if (t.kind === "keyword") {
      if (t.value === "True" || t.value === "False") {
        this.next();
        return { k: "bool", v: t.value === "True" };
      }
      if (t.value === "None") {
        this.next();
        return { k: "none" };
      }
    }
    if (this.eat("op", "(")) {
      const inner = this.exprList();
      this.expect("op", ")");
      return inner;
    }
    if (this.eat("op", "[")) {
      const items: Expr[] = [];
      while (!this.at("op", "]")) {
        items.push(this.expr());
        if (!this.eat("op", ",")) break;
      }
      this.expect("op", "]");
      return { k: "list", items };
    }
    throw new CodeSyntaxError(`unexpected ${t.value || t.kind}`, t.line);
  }
}

export function parseProgram(source: string): Stmt[] {
  return new Parser(source).parseProgram();
}
