/** Review session state machine.
 *
 * Owns the candidate list, the cursor, and decision submission. Guarantees:
 * at most one POST per attack_id (double keystrokes are ignored), optimistic
 * advance with rollback + server refetch on a conflict, and a retry queue so
 * no decision is lost while the service is unreachable.
 */

import { ApiError, ReviewApi } from "./api.js";
import type { Candidate, Verdict } from "./types.js";

interface PendingRetry {
  attackId: string;
  verdict: Verdict;
  reason?: string;
}

export interface QueueListener {
  onChange(): void;
  onDecisionError(attackId: string, message: string): void;
  onConnectivity(offline: boolean, queued: number): void;
}

const NO_LISTENER: QueueListener = {
  onChange: () => undefined,
  onDecisionError: () => undefined,
  onConnectivity: () => undefined,
};

export class ReviewQueue {
  private candidates: Candidate[] = [];
  private cursor = 0;
  /** attack_ids with an in-flight or already-successful POST */
  private posted = new Set<string>();
  /** at most one keyboard decision in flight; double presses are swallowed */
  private deciding = false;
  private retries: PendingRetry[] = [];
  decidedCount = 0;

  constructor(
    private readonly api: ReviewApi,
    private readonly listener: QueueListener = NO_LISTENER,
  ) {}

  async load(): Promise<void> {
    this.candidates = await this.api.allCandidates("pending");
    this.cursor = 0;
    this.posted.clear();
    this.decidedCount = 0;
    this.listener.onChange();
  }

  all(): readonly Candidate[] {
    return this.candidates;
  }

  current(): Candidate | null {
    return this.candidates[this.cursor] ?? null;
  }

  position(): { index: number; total: number; remaining: number } {
    const remaining = this.candidates.filter((c) => c.status === "pending").length;
    return { index: this.cursor, total: this.candidates.length, remaining };
  }

  queuedRetries(): number {
    return this.retries.length;
  }

  next(): void {
    if (this.cursor < this.candidates.length - 1) {
      this.cursor += 1;
      this.listener.onChange();
    }
  }

  prev(): void {
    if (this.cursor > 0) {
      this.cursor -= 1;
      this.listener.onChange();
    }
  }

  /** Advance to the next still-pending candidate, if any. */
  private advancePastDecided(): void {
    for (let i = this.cursor; i < this.candidates.length; i += 1) {
      if (this.candidates[i].status === "pending" && !this.posted.has(this.candidates[i].attack_id)) {
        this.cursor = i;
        this.listener.onChange();
        return;
      }
    }
    this.cursor = this.candidates.length;
    this.listener.onChange();
  }

  done(): boolean {
    return this.cursor >= this.candidates.length;
  }

  /** Decide the current candidate. Exactly one POST is issued per attack_id,
   * and a second keystroke while one decision is in flight is swallowed, so
   * a double press can neither repeat a POST nor spill onto the next
   * candidate. */
  async decide(verdict: Verdict, reason?: string): Promise<void> {
    if (this.deciding) return;
    const candidate = this.current();
    if (!candidate || candidate.status !== "pending") return;
    if (this.posted.has(candidate.attack_id)) return;
    this.posted.add(candidate.attack_id);
    this.deciding = true;

    // optimistic: move on immediately, reconcile when the server answers
    this.advancePastDecided();
    try {
      await this.submit({ attackId: candidate.attack_id, verdict, reason }, candidate);
    } finally {
      this.deciding = false;
    }
  }

  private async submit(retry: PendingRetry, candidate: Candidate | null): Promise<void> {
    const local = candidate ?? this.candidates.find((c) => c.attack_id === retry.attackId) ?? null;
    try {
      const result = await this.api.submitDecision(retry.attackId, retry.verdict, retry.reason);
      if (local) {
        local.status = result.status;
        local.reject_reason = result.reject_reason;
      }
      this.decidedCount += 1;
      this.listener.onConnectivity(false, this.retries.length);
      this.listener.onChange();
    } catch (error) {
      if (error instanceof ApiError) {
        // server refused (conflict, unknown id): roll back and resync
        this.posted.delete(retry.attackId);
        await this.refetchCandidate(retry.attackId);
        this.listener.onDecisionError(retry.attackId, error.detail);
        this.listener.onChange();
      } else {
        // network failure: keep the decision queued, nothing is lost
        this.retries.push(retry);
        this.listener.onConnectivity(true, this.retries.length);
      }
    }
  }

  /** Pull one candidate's server state back into the local list. */
  private async refetchCandidate(attackId: string): Promise<void> {
    try {
      const fresh = await this.api.allCandidates(null);
      const byId = new Map(fresh.map((c) => [c.attack_id, c]));
      for (const candidate of this.candidates) {
        const server = byId.get(candidate.attack_id);
        if (server) {
          candidate.status = server.status;
          candidate.reject_reason = server.reject_reason;
        }
      }
    } catch {
      // refetch is best effort; the next successful call resyncs
    }
  }

  /** Resubmit queued decisions (called on a timer or manual retry). */
  async flushRetries(): Promise<void> {
    const queued = this.retries;
    this.retries = [];
    for (const retry of queued) {
      await this.submit(retry, null);
    }
    this.listener.onConnectivity(this.retries.length > 0, this.retries.length);
  }
}
