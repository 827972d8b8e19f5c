/** Shared mock API plumbing for the contract tests. */

import type { FetchLike } from "../src/api";

export const FEATURES_PAYLOAD = {
  dimensions: [
    {
      name: "agreement",
      values: [
        { value: "3sg", label: "3rd singular", implies: null },
        { value: "1sg", label: "1st singular", implies: null },
      ],
    },
    { name: "aspect", values: [{ value: "past", label: "Past", implies: "verb" }] },
    {
      name: "case",
      values: [
        { value: "dative", label: "Dative", implies: "noun" },
        { value: "nominative", label: "Nominative", implies: null },
      ],
    },
    {
      name: "category",
      values: [
        { value: "noun", label: "Noun", implies: null },
        { value: "verb", label: "Verb", implies: null },
      ],
    },
    { name: "possessive", values: [{ value: "3sg", label: "3rd singular", implies: "noun" }] },
    {
      name: "sense",
      values: [{ value: "negative-capability", label: "Negative capability", implies: "verb" }],
    },
    { name: "tense", values: [{ value: "past", label: "Past", implies: "verb" }] },
    { name: "voice", values: [{ value: "passive", label: "Passive", implies: "verb" }] },
    { name: "suffix", values: [{ value: "PL", label: "PL", implies: null }] },
    { name: "root", values: [] },
  ],
};

export const KESILEMEDI_SENTENCE = "Musluğun akıntısı bir türlü kesilemedi.";

export const SEARCH_PAYLOAD = {
  hits: [
    {
      sentenceId: 0,
      text: KESILEMEDI_SENTENCE,
      matches: [4],
      spans: [[28, 38]] as [number, number][],
    },
  ],
  total: 1,
};

export const ANALYSIS_PAYLOAD = {
  sentenceId: 0,
  tokenIndex: 4,
  lexicalGloss: "kes+Hl+yAmA+DH",
  fields: [
    { label: "Root", value: "kes" },
    { label: "Category", value: "Verb" },
    { label: "Sense", value: "Negative capability" },
    { label: "Voice", value: "Passive" },
    { label: "Agreement", value: "3rd singular" },
    { label: "Aspect", value: "Past" },
  ],
};

export const CONFLICT_PAYLOAD = {
  error: "Conflict",
  features: [
    ["case", "dative"],
    ["tense", "past"],
  ] as [string, string][],
  explanation:
    "case=dative implies category=noun but tense=past implies category=verb; " +
    "no single word form can satisfy all of them",
};

function json(status: number, payload: unknown): Response {
  return new Response(JSON.stringify(payload), {
    status,
    headers: { "Content-Type": "application/json; charset=utf-8" },
  });
}

export interface MockLog {
  requests: string[];
}

/** A FetchLike over canned payloads, recording every requested URL. */
export function mockFetch(
  overrides: Partial<Record<"features" | "search" | "analysis", (url: string) => Response>> = {},
): { fetchFn: FetchLike; log: MockLog } {
  const log: MockLog = { requests: [] };
  const fetchFn: FetchLike = (url) => {
    log.requests.push(url);
    if (url.startsWith("/api/features")) {
      return Promise.resolve(overrides.features?.(url) ?? json(200, FEATURES_PAYLOAD));
    }
    if (url.startsWith("/api/search")) {
      return Promise.resolve(overrides.search?.(url) ?? json(200, SEARCH_PAYLOAD));
    }
    if (url.startsWith("/api/analysis")) {
      return Promise.resolve(overrides.analysis?.(url) ?? json(200, ANALYSIS_PAYLOAD));
    }
    return Promise.resolve(json(404, { error: "NotFound" }));
  };
  return { fetchFn, log };
}

export function jsonResponse(status: number, payload: unknown): Response {
  return json(status, payload);
}

export async function flush(): Promise<void> {
  await new Promise((resolve) => setTimeout(resolve, 0));
  await new Promise((resolve) => setTimeout(resolve, 0));
}
