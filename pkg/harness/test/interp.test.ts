import { describe, expect, it } from "vitest";

import { RuntimeFailure } from "../src/api.js";
import { Interpreter } from "../src/interp.js";
import { CodeSyntaxError } from "../src/lexer.js";
import { DataModel, Entity } from "../src/model.js";
import { parseProgram } from "../src/parser.js";

function run(code: string, model = new DataModel()): Interpreter {
  const interp = new Interpreter(model, Date.now() + 5000);
  interp.run(parseProgram(code));
  return interp;
}

function failing(code: string, model = new DataModel()): string {
  try {
    run(code, model);
  } catch (err) {
    if (err instanceof RuntimeFailure || err instanceof CodeSyntaxError) return err.message;
    throw err;
  }
  throw new Error(`expected a failure from: ${code}`);
}

describe("expressions", () => {
  const table: Array<[string, unknown]> = [
    ["x = 1 + 2 * 3", 7],
    ["x = (1 + 2) * 3", 9],
    ["x = 7 / 2", 3.5],
    ["x = 10 - 2 - 3", 5],
    ["x = -4 + 1", -3],
    ["x = 2 * -3", -6],
    ["x = 'ab' + 'cd'", "abcd"],
    ["x = 'ab' * 3", "ababab"],
    ["x = [1] + [2, 3]", [1, 2, 3]],
    ["x = [0] * 3", [0, 0, 0]],
    ["x = not []", true],
    ["x = not 'text'", false],
    ["x = [] or 'fallback'", "fallback"],
    ["x = 'first' or 'second'", "first"],
    ["x = 0 and 1", 0],
    ["x = 1 and 2", 2],
    ["x = 1 < 2 < 3", true],
    ["x = 1 < 2 > 5", false],
    ["x = 1 == 1.0", true],
    ["x = True == 1", true],
    ["x = 'a' != 'b'", true],
    ["x = 2 in [1, 2, 3]", true],
    ["x = 4 not in [1, 2, 3]", true],
    ["x = 'ell' in 'hello'", true],
    ["x = None", null],
    ["x = [1, 'two', None]", [1, "two", null]],
    ["x = (1, 2)", [1, 2]],
    ["x = len('abcd')", 4],
    ["x = len([1, 2])", 2],
    ["x = str(None)", "None"],
    ["x = str(True)", "True"],
    ["x = str(3.5)", "3.5"],
    ["x = bool([])", false],
    ["x = bool('x')", true],
    ["x = all([1, 'a'])", true],
    ["x = all([[1], []])", false],
    ["x = any([0, '', 3])", true],
    ["x = any([])", false],
    ["x = range(4)", [0, 1, 2, 3]],
    ["x = range(1, 4)", [1, 2, 3]],
    ["x = range(6, 0, -2)", [6, 4, 2]],
    ["x = [10, 20, 30][1]", 20],
    ["x = [10, 20, 30][-1]", 30],
    ["x = 'abc'[0]", "a"],
  ];
  for (const [code, want] of table) {
    it(code, () => {
      expect(run(code).binding("x")).toEqual(want);
    });
  }
});

describe("statements", () => {
  it("chained and tuple assignment", () => {
    const interp = run("a = b = 3\nc, d = [b, a + 1]\n");
    expect(interp.binding("a")).toBe(3);
    expect(interp.binding("b")).toBe(3);
    expect(interp.binding("c")).toBe(3);
    expect(interp.binding("d")).toBe(4);
  });

  it("augmented assignment", () => {
    expect(run("x = 1\nx += 5\n").binding("x")).toBe(6);
    expect(run("x = [1]\nx += [2]\n").binding("x")).toEqual([1, 2]);
  });

  it("annotated assignment ignores the annotation", () => {
    expect(run("x: SomeUnknownName = 2\n").binding("x")).toBe(2);
  });

  it("index assignment", () => {
    expect(run("x = [1, 2]\nx[0] = 9\n").binding("x")).toEqual([9, 2]);
  });

  it("if / elif / else", () => {
    const code = [
      "def_label = ''",
      "n = 7",
      "if n < 5:",
      "    def_label = 'small'",
      "elif n < 10:",
      "    def_label = 'medium'",
      "else:",
      "    def_label = 'large'",
      "",
    ].join("\n");
    expect(run(code).binding("def_label")).toBe("medium");
  });

  it("for over a list, with else", () => {
    const code = [
      "total = 0",
      "for n in [1, 2, 3]:",
      "    total += n",
      "else:",
      "    total += 100",
      "",
    ].join("\n");
    expect(run(code).binding("total")).toBe(106);
  });

  it("for unpacks tuples", () => {
    const code = [
      "pairs = [[1, 'a'], [2, 'b']]",
      "keys = []",
      "for k, v in pairs:",
      "    keys.append(k)",
      "",
    ].join("\n");
    expect(run(code).binding("keys")).toEqual([1, 2]);
  });

  it("while with condition", () => {
    const code = "n = 0\nwhile n < 5:\n    n += 1\n";
    expect(run(code).binding("n")).toBe(5);
  });

  it("pass does nothing", () => {
    run("pass\nif True:\n    pass\n");
  });

  it("multi-line calls join implicitly", () => {
    const code = [
      "x = len(",
      "    [1,",
      "     2,",
      "     3]  # trailing comment",
      ")",
      "",
      "# a comment line",
      "y = x",
      "",
    ].join("\n");
    expect(run(code).binding("y")).toBe(3);
  });

  it("bindings shadow API names", () => {
    expect(run("Contact = 5\nx = Contact\n").binding("x")).toBe(5);
  });
});

describe("entities and actions", () => {
  it("constructs entities with keyword arguments", () => {
    const interp = run("c = Contact(text='alice')\n");
    const c = interp.binding("c") as Entity;
    expect(c).toBeInstanceOf(Entity);
    expect(c.entityType).toBe("Contact");
    expect(c.fields.get("text")).toBe("alice");
  });

  it("reads and writes entity fields", () => {
    const interp = run("c = Contact(text='a')\nc.text = 'b'\nx = c.text\n");
    expect(interp.binding("x")).toBe("b");
  });

  it("send_message stores a record", () => {
    const model = new DataModel();
    run("Messages.send_message(text='hi')\n", model);
    expect(model.getData("Message")).toHaveLength(1);
    expect(model.getData("Message")[0].fields.get("text")).toBe("hi");
  });

  it("find filters by provided fields only", () => {
    const model = new DataModel();
    const code = [
      "Messages.send_message(text='one', recipient='a')",
      "Messages.send_message(text='two', recipient='b')",
      "found = Messages.find_messages(recipient='b')",
      "n = len(found)",
      "",
    ].join("\n");
    expect(run(code, model).binding("n")).toBe(1);
  });

  it("resolve_from_text uses fuzzy matching over seeded text", () => {
    const model = new DataModel();
    model.append(new Entity("EventName", new Map([["text", "my meeting with them"]])));
    model.markSeeded();
    const interp = run("e = EventName.resolve_from_text('my meetings with them')\nt = e.text\n", model);
    expect(interp.binding("t")).toBe("my meeting with them");
  });

  it("resolve_many_from_text returns every match in order", () => {
    const model = new DataModel();
    model.append(new Entity("Contact", new Map([["text", "team alpha"]])));
    model.append(new Entity("Contact", new Map([["text", "team alpha"]])));
    const interp = run("n = len(Contact.resolve_many_from_text('team alpha'))\n", model);
    expect(interp.binding("n")).toBe(2);
  });

  it("resolve_from_entity follows links", () => {
    const model = new DataModel();
    const when = new Entity("DateTime", new Map([["text", "tomorrow 9am"]]));
    const event = new Entity("CalendarEntity", new Map<string, Entity>([["date_time", when]]));
    model.append(when);
    model.append(event);
    const code = "e = CalendarEntity.resolve_many_from_text('tomorrow 9am')\n";
    // the event has no text field, so text resolution must skip it entirely
    expect(failing(code, model)).toContain("ResolutionError");
    const interp = run(
      "events = Calendar.find_events()\nd = DateTime.resolve_from_entity(events[0])\nt = d.text\n",
      model,
    );
    expect(interp.binding("t")).toBe("tomorrow 9am");
  });
});

describe("failures", () => {
  const table: Array<[string, string]> = [
    ["x = missing_name\n", "NameError"],
    ["x = 1 / 0\n", "ZeroDivisionError"],
    ["x = [1][5]\n", "IndexError"],
    ["x = [1][-2]\n", "IndexError"],
    ["a, b = [1]\n", "ValueError"],
    ["x = 'a' + 1\n", "TypeError"],
    ["x = None < 1\n", "TypeError"],
    ["x = 5(1)\n", "TypeError"],
    ["c = Contact(text='a')\nx = c.missing\n", "AttributeError"],
    ["c = Contact(nope='a')\n", "TypeError"],
    ["c = Contact('positional')\n", "TypeError"],
    ["Messages.find_messages(bogus=1)\n", "TypeError"],
    ["Messages.find_messages(1)\n", "TypeError"],
    ["x = Contact.resolve_from_text('anyone')\n", "ResolutionError"],
    ["x = Contact.resolve_from_text(7)\n", "TypeError"],
    ["x = range(100000000)\n", "OverflowError"],
    ["for x in 5:\n    pass\n", "TypeError"],
  ];
  for (const [code, kind] of table) {
    it(`${JSON.stringify(code.split("\n")[0])} -> ${kind}`, () => {
      expect(failing(code)).toContain(kind);
    });
  }

  const syntaxTable: string[] = [
    "x = (1\n",
    "if True\n    pass\n",
    "x = 'unterminated\n",
    "for in [1]:\n    pass\n",
    "x = f(a=1, 2)\n",
    "1 = x\n",
    "if True:\npass\n",
    "\tx = 1\n",
  ];
  for (const code of syntaxTable) {
    it(`syntax error: ${JSON.stringify(code)}`, () => {
      expect(() => parseProgram(code)).toThrow(CodeSyntaxError);
    });
  }

  it("deadline already passed stops a loop immediately", () => {
    const interp = new Interpreter(new DataModel(), Date.now() - 1);
    expect(() => interp.run(parseProgram("while True:\n    pass\n"))).toThrow();
  });
});
