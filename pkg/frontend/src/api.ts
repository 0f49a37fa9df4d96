/** Thin typed client for the review service HTTP API. */

import type { CandidatePage, Candidate, DecisionResult, Summary, Verdict } from "./types.js";

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

/** HTTP-level failure (non-2xx); carries the status so callers can
 * distinguish conflicts (409) from missing ids (404). */
export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly detail: string,
  ) {
    super(`HTTP ${status}: ${detail}`);
    this.name = "ApiError";
  }
}

async function parseError(response: Response): Promise<never> {
  let detail = response.statusText;
  try {
    const body = (await response.json()) as { detail?: string };
    if (body.detail) detail = body.detail;
  } catch {
    // non-JSON error body; keep the status text
  }
  throw new ApiError(response.status, detail);
}

export class ReviewApi {
  constructor(
    private readonly baseUrl: string = "",
    private readonly fetchFn: FetchLike = (input, init) => fetch(input, init),
  ) {}

  async candidatePage(status: string | null, page: number, pageSize: number): Promise<CandidatePage> {
    const params = new URLSearchParams({ page: String(page), page_size: String(pageSize) });
    if (status) params.set("status", status);
    const response = await this.fetchFn(`${this.baseUrl}/candidates?${params}`);
    if (!response.ok) await parseError(response);
    return (await response.json()) as CandidatePage;
  }

  /** Fetch every page of candidates with the given status. */
  async allCandidates(status: string | null = "pending", pageSize = 100): Promise<Candidate[]> {
    const all: Candidate[] = [];
    let page = 0;
    for (;;) {
      const body = await this.candidatePage(status, page, pageSize);
      all.push(...body.items);
      page += 1;
      if (page >= body.pages || body.items.length === 0) break;
    }
    return all;
  }

  async submitDecision(attackId: string, verdict: Verdict, reason?: string, reviewer?: string): Promise<DecisionResult> {
    const response = await this.fetchFn(`${this.baseUrl}/decision`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({
        attack_id: attackId,
        verdict,
        reason: reason ?? null,
        reviewer: reviewer ?? "review-ui",
      }),
    });
    if (!response.ok) await parseError(response);
    return (await response.json()) as DecisionResult;
  }

  async summary(): Promise<Summary> {
    const response = await this.fetchFn(`${this.baseUrl}/manifest/summary`);
    if (!response.ok) await parseError(response);
    return (await response.json()) as Summary;
  }
}
