/**
 * One sample, start to finish: seed the scenario, run the code against a
 * fresh data model, check the assertions, and fold every outcome into the
 * four-status reply. Never throws.
 */

import { RuntimeFailure } from "./api.js";
import { CodeSyntaxError } from "./lexer.js";
import { Interpreter, TimeoutSignal } from "./interp.js";
import { DataModel, MutationSummary } from "./model.js";
import { parseProgram } from "./parser.js";
import { checkAssertions, seedScenario } from "./scenario.js";

export type Status = "ok" | "exception" | "assertion_failure" | "timeout";

export interface HarnessResult {
  status: Status;
  detail: string | null;
  mutations: MutationSummary[];
}

export function runSample(scenario: unknown, code: string, timeoutS: number): HarnessResult {
  const model = new DataModel();
  const reply = (status: Status, detail: string | null): HarnessResult => ({
    status,
    detail,
    mutations: model.mutationSummary(),
  });

  let parsed;
  try {
    parsed = seedScenario(model, scenario);
  } catch (err) {
    return reply("exception", describe(err));
  }

  let program;
  try {
    program = parseProgram(code);
  } catch (err) {
    return reply("exception", describe(err));
  }

  const deadline = Date.now() + Math.max(0, timeoutS) * 1000;
  try {
    new Interpreter(model, deadline).run(program);
  } catch (err) {
    if (err instanceof TimeoutSignal) return reply("timeout", `timed out after ${timeoutS}s`);
    return reply("exception", describe(err));
  }

  const mismatches = checkAssertions(model, parsed);
  if (mismatches.length > 0) {
    return reply("assertion_failure", mismatches.join("; "));
  }
  return reply("ok", null);
}

function describe(err: unknown): string {
  if (err instanceof RuntimeFailure || err instanceof CodeSyntaxError) return err.message;
  if (err instanceof Error) return `${err.constructor.name}: ${err.message}`;
  return String(err);
}
