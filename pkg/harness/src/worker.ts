/**
 * Stdin/stdout worker: reads one JSON request, writes one JSON reply, exits 0.
 *
 * Request:  {"scenario": <object|null>, "code": <string>, "timeout_s": <number>}
 * Reply:    {"status": "ok"|"exception"|"assertion_failure"|"timeout",
 *            "detail": <string|null>, "mutations": [...]}
 *
 * A malformed request still gets a reply (status "exception") so the caller
 * can keep its one-process-per-sample loop simple.
 */

import { runSample, HarnessResult } from "./runner.js";

function readStdin(): Promise<string> {
  return new Promise((resolve, reject) => {
    const chunks: Buffer[] = [];
    process.stdin.on("data", (chunk) => chunks.push(chunk));
    process.stdin.on("end", () => resolve(Buffer.concat(chunks).toString("utf8")));
    process.stdin.on("error", reject);
  });
}

function handle(text: string): HarnessResult {
  let request: unknown;
  try {
    request = JSON.parse(text);
  } catch {
    return { status: "exception", detail: "request is not valid JSON", mutations: [] };
  }
  if (typeof request !== "object" || request === null || Array.isArray(request)) {
    return { status: "exception", detail: "request must be a JSON object", mutations: [] };
  }
  const record = request as Record<string, unknown>;
  const code = record["code"];
  if (typeof code !== "string") {
    return { status: "exception", detail: "request needs a string \"code\"", mutations: [] };
  }
  const rawTimeout = record["timeout_s"];
  const timeoutS = typeof rawTimeout === "number" && rawTimeout > 0 ? rawTimeout : 10;
  return runSample(record["scenario"] ?? null, code, timeoutS);
}

async function main(): Promise<void> {
  const text = await readStdin();
  const result = handle(text);
  process.stdout.write(JSON.stringify(result) + "\n");
}

main().then(
  () => process.exit(0),
  (err) => {
    const detail = err instanceof Error ? err.message : String(err);
    process.stdout.write(
      JSON.stringify({ status: "exception", detail, mutations: [] }) + "\n",
    );
    process.exit(0);
  },
);
