/**
 * Fuzzy span matching: content-word BLEU with an inclusive 0.5 threshold.
 *
 * This mirrors the Python matcher operation for operation so both sides
 * reach identical doubles:
 *   N = min(maxOrder, len(candidate), len(reference))
 *   p_1 = clipped unigram matches / len(candidate); zero matches => score 0
 *   p_i (i >= 2) = (clipped matches + 1) / (windows + 1)
 *   BP = 1 if len(candidate) >= len(reference) else exp(1 - len(r)/len(c))
 *   score = BP * exp((ln p_1 + ... + ln p_N) / N)
 * Log terms are accumulated in order 1..N; changing the order changes the
 * last bits of the result, so don't. ln and exp come from portmath, the
 * fixed ports shared with the Python side, never from the platform math
 * library: platform libraries disagree in the last ulp and the score
 * contract is bit for bit.
 */

import { portableExp, portableLog } from "./portmath.js";

export const DEFAULT_STOPWORDS: ReadonlySet<string> = new Set([
  "the", "a", "an", "this", "that", "these", "those",
  "my", "your", "his", "her", "its", "our", "their",
  "of", "in", "on", "at", "to", "for", "from", "with", "by",
  "about", "as", "into", "over", "after", "before",
  "all",
]);

export interface MatcherConfig {
  stopwords: ReadonlySet<string>;
  threshold: number;
  maxOrder: number;
}

export const DEFAULT_CONFIG: MatcherConfig = {
  stopwords: DEFAULT_STOPWORDS,
  threshold: 0.5,
  maxOrder: 4,
};

const PUNCTUATION = new Set("!\"#$%&'()*+,-./:;<=>?@[\\]^_`{|}~");

function stripEdgePunctuation(token: string): string {
  let start = 0;
  let end = token.length;
  while (start < end && PUNCTUATION.has(token[start])) start += 1;
  while (end > start && PUNCTUATION.has(token[end - 1])) end -= 1;
  return token.slice(start, end);
}

export function normalizeSpan(
  text: string,
  cfg: MatcherConfig = DEFAULT_CONFIG,
): string[] {
  const out: string[] = [];
  for (const raw of text.toLowerCase().split(/\s+/)) {
    const token = stripEdgePunctuation(raw);
    if (token.length > 0 && !cfg.stopwords.has(token)) out.push(token);
  }
  return out;
}

// tokens never contain whitespace, so a control separator cannot collide
const SEP = "";

function ngramCounts(tokens: string[], order: number): Map<string, number> {
  const counts = new Map<string, number>();
  for (let i = 0; i + order <= tokens.length; i += 1) {
    const gram = tokens.slice(i, i + order).join(SEP);
    counts.set(gram, (counts.get(gram) ?? 0) + 1);
  }
  return counts;
}

export function bleuScore(
  candidate: string[],
  reference: string[],
  cfg: MatcherConfig = DEFAULT_CONFIG,
): number {
  const n = Math.min(cfg.maxOrder, candidate.length, reference.length);
  if (n === 0) return 0.0;
  let logSum = 0.0;
  for (let order = 1; order <= n; order += 1) {
    const candCounts = ngramCounts(candidate, order);
    const refCounts = ngramCounts(reference, order);
    let matches = 0;
    for (const [gram, count] of candCounts) {
      matches += Math.min(count, refCounts.get(gram) ?? 0);
    }
    const total = candidate.length - order + 1;
    let p: number;
    if (order === 1) {
      if (matches === 0) return 0.0;
      p = matches / total;
    } else {
      p = (matches + 1) / (total + 1);
    }
    logSum += portableLog(p);
  }
  const bp =
    candidate.length >= reference.length
      ? 1.0
      : portableExp(1.0 - reference.length / candidate.length);
  return bp * portableExp(logSum / n);
}

export function matchScore(
  candidate: string,
  reference: string,
  cfg: MatcherConfig = DEFAULT_CONFIG,
): number {
  return bleuScore(normalizeSpan(candidate, cfg), normalizeSpan(reference, cfg), cfg);
}

export function spansMatch(
  candidate: string,
  reference: string,
  cfg: MatcherConfig = DEFAULT_CONFIG,
): boolean {
  return matchScore(candidate, reference, cfg) >= cfg.threshold;
}
