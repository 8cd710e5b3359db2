/** Tokenizer for the statement language the generated programs are written in.
 *
 * Indentation produces indent/dedent tokens; newlines inside parentheses or
 * square brackets are ignored (implicit line joining); # starts a comment.
 */

export type TokKind =
  | "name"
  | "keyword"
  | "number"
  | "string"
  | "op"
  | "newline"
  | "indent"
  | "dedent"
  | "eof";

export interface Tok {
  kind: TokKind;
  value: string;
  line: number;
  col: number;
}

export class CodeSyntaxError extends Error {
  constructor(message: string, line: number) {
    super(`SyntaxError: ${message} (line ${line})`);
  }
}

const KEYWORDS = new Set([
  "if", "elif", "else", "for", "while", "in", "not", "and", "or",
  "True", "False", "None", "pass",
]);

const TWO_CHAR_OPS = new Set(["==", "!=", "<=", ">=", "+="]);
const ONE_CHAR_OPS = new Set(["(", ")", "[", "]", ",", ":", ".", "=", "<", ">", "+", "-", "*", "/"]);

const ESCAPES: Record<string, string> = {
  "\\": "\\",
  "'": "'",
  '"': '"',
  n: "\n",
  r: "\r",
  t: "\t",
};

export function tokenize(source: string): Tok[] {
  const toks: Tok[] = [];
  const indents = [0];
  let depth = 0;
  let line = 0;
  const lines = source.split("\n");

  const push = (kind: TokKind, value: string, col: number) =>
    toks.push({ kind, value, line: line + 1, col });

  let pos = 0; // within the current line
  let text = "";

  const lexLine = (): void => {
    while (pos < text.length) {
      const ch = text[pos];
      if (ch === " " || ch === "\t") {
        pos += 1;
        continue;
      }
      if (ch === "#") return;
      if (ch === "(" || ch === "[") {
        depth += 1;
        push("op", ch, pos);
        pos += 1;
        continue;
      }
      if (ch === ")" || ch === "]") {
        depth -= 1;
        if (depth < 0) throw new CodeSyntaxError(`unmatched '${ch}'`, line + 1);
        push("op", ch, pos);
        pos += 1;
        continue;
      }
      if (ch === "'" || ch === '"') {
        const start = pos;
        pos += 1;
        let value = "";
        while (pos < text.length && text[pos] !== ch) {
          if (text[pos] === "\\") {
            const esc = text[pos + 1];
            if (esc === undefined) throw new CodeSyntaxError("trailing backslash in string", line + 1);
            value += ESCAPES[esc] ?? "\\" + esc;
            pos += 2;
          } else {
            value += text[pos];
            pos += 1;
          }
        }
        if (pos >= text.length) throw new CodeSyntaxError("unterminated string", line + 1);
        pos += 1;
        push("string", value, start);
        continue;
      }
      if (ch >= "0" && ch <= "9") {
        const start = pos;
        while (pos < text.length && text[pos] >= "0" && text[pos] <= "9") pos += 1;
        if (text[pos] === "." && text[pos + 1] >= "0" && text[pos + 1] <= "9") {
          pos += 1;
          while (pos < text.length && text[pos] >= "0" && text[pos] <= "9") pos += 1;
        }
        if (text[pos] === "e" || text[pos] === "E") {
          let ahead = pos + 1;
          if (text[ahead] === "+" || text[ahead] === "-") ahead += 1;
          if (text[ahead] >= "0" && text[ahead] <= "9") {
            pos = ahead;
            while (pos < text.length && text[pos] >= "0" && text[pos] <= "9") pos += 1;
          }
        }
        push("number", text.slice(start, pos), start);
        continue;
      }
      if (/[A-Za-z_]/.test(ch)) {
        const start = pos;
        while (pos < text.length && /[A-Za-z0-9_]/.test(text[pos])) pos += 1;
        const word = text.slice(start, pos);
        push(KEYWORDS.has(word) ? "keyword" : "name", word, start);
        continue;
      }
      const two = text.slice(pos, pos + 2);
      if (TWO_CHAR_OPS.has(two)) {
        push("op", two, pos);
        pos += 2;
        continue;
      }
      if (ONE_CHAR_OPS.has(ch)) {
        push("op", ch, pos);
        pos += 1;
        continue;
      }
      throw new CodeSyntaxError(`unexpected character ${JSON.stringify(ch)}`, line + 1);
    }
  };

  for (line = 0; line < lines.length; line += 1) {
    text = lines[line];
    pos = 0;
    if (depth === 0) {
      let width = 0;
      while (pos < text.length && text[pos] === " ") {
        width += 1;
        pos += 1;
      }
      if (text[pos] === "\t") throw new CodeSyntaxError("tab in indentation", line + 1);
      const rest = text.slice(pos);
      if (rest === "" || rest.startsWith("#")) continue; // blank or comment-only
      if (width > indents[indents.length - 1]) {
        indents.push(width);
        push("indent", "", 0);
      } else {
        while (width < indents[indents.length - 1]) {
          indents.pop();
          push("dedent", "", 0);
        }
        if (width !== indents[indents.length - 1]) {
          throw new CodeSyntaxError("unindent does not match any outer level", line + 1);
        }
      }
      const before = toks.length;
      lexLine();
      if (depth === 0 && toks.length > before) push("newline", "", pos);
    } else {
      lexLine(); // continuation line inside brackets: no indent handling
      if (depth === 0 && toks.length > 0 && toks[toks.length - 1].kind !== "newline") {
        push("newline", "", pos);
      }
    }
  }
  if (depth > 0) throw new CodeSyntaxError("unclosed bracket at end of input", line);
  while (indents.length > 1) {
    indents.pop();
    toks.push({ kind: "dedent", value: "", line: lines.length, col: 0 });
  }
  toks.push({ kind: "eof", value: "", line: lines.length, col: 0 });
  return toks;
}
