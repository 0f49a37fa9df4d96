/** Wire types of the review service; field names match the HTTP API. */

export type Status = "pending" | "accepted" | "rejected" | "auto_rejected";
export type Verdict = "accepted" | "rejected";

export interface Candidate {
  attack_id: string;
  key_id: string;
  partner_id: string;
  status: Status;
  reject_reason: string | null;
  warp: number;
  auto: Record<string, unknown> | null;
  morph_url: string;
  source_a_url: string;
  source_b_url: string;
}

export interface CandidatePage {
  items: Candidate[];
  page: number;
  page_size: number;
  total: number;
  pages: number;
}

export interface DecisionResult {
  attack_id: string;
  status: Status;
  reject_reason: string | null;
  changed: boolean;
}

export interface Summary {
  split: string;
  counts: Record<Status, number>;
  total: number;
}
