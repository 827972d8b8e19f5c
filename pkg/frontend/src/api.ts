/**
 * Typed client for the morfwork search service.
 *
 * Every piece of linguistic content shown in the UI comes from these
 * endpoints; the client never derives morphology on its own.
 */

export interface FeatureValue {
  value: string;
  label: string;
  implies: string | null;
}

export interface FeatureDimension {
  name: string;
  values: FeatureValue[];
}

export interface FeaturesResponse {
  dimensions: FeatureDimension[];
}

export interface SentenceHit {
  sentenceId: number;
  text: string;
  matches: number[];
  spans: [number, number][];
}

export interface SearchResponse {
  hits: SentenceHit[];
  total: number;
}

export interface ConflictResponse {
  error: "Conflict";
  features: [string, string][];
  explanation: string;
}

export interface AnalysisField {
  label: string;
  value: string;
}

export interface AnalysisResponse {
  sentenceId: number;
  tokenIndex: number;
  lexicalGloss: string | null;
  fields: AnalysisField[];
  noAnalysis?: boolean;
}

/** The ten feature dimensions of the search panel, in display order. */
export const DIMENSIONS = [
  "agreement",
  "aspect",
  "case",
  "category",
  "possessive",
  "sense",
  "tense",
  "voice",
  "suffix",
  "root",
] as const;

export type DimensionName = (typeof DIMENSIONS)[number];

export type QuerySelection = Partial<Record<DimensionName, string>>;

/** Serialize the selected controls to the exact /api/search query string. */
export function buildSearchQuery(selection: QuerySelection): string {
  const params = new URLSearchParams();
  for (const dim of DIMENSIONS) {
    const value = selection[dim];
    if (value !== undefined && value !== "") {
      params.set(dim, value);
    }
  }
  return params.toString();
}

export class ApiError extends Error {
  constructor(
    public readonly status: number,
    message: string,
  ) {
    super(message);
  }
}

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export type SearchOutcome =
  | { kind: "hits"; response: SearchResponse }
  | { kind: "conflict"; conflict: ConflictResponse };

export class ApiClient {
  constructor(private readonly fetchFn: FetchLike = (i, init) => fetch(i, init)) {}

  async features(): Promise<FeaturesResponse> {
    const resp = await this.fetchFn("/api/features");
    if (!resp.ok) throw new ApiError(resp.status, "failed to load features");
    return (await resp.json()) as FeaturesResponse;
  }

  async search(selection: QuerySelection, signal?: AbortSignal): Promise<SearchOutcome> {
    const qs = buildSearchQuery(selection);
    const resp = await this.fetchFn(`/api/search?${qs}`, { signal });
    if (resp.status === 409) {
      return { kind: "conflict", conflict: (await resp.json()) as ConflictResponse };
    }
    if (!resp.ok) {
      const body = await resp.json().catch(() => ({ message: resp.statusText }));
      throw new ApiError(resp.status, body.message ?? "search failed");
    }
    return { kind: "hits", response: (await resp.json()) as SearchResponse };
  }

  async analysis(sentenceId: number, tokenIndex: number): Promise<AnalysisResponse> {
    const resp = await this.fetchFn(
      `/api/analysis?sentence=${sentenceId}&token=${tokenIndex}`,
    );
    if (!resp.ok) throw new ApiError(resp.status, "failed to load analysis");
    return (await resp.json()) as AnalysisResponse;
  }
}
