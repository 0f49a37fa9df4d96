/** DOM layer: side-by-side triptych, keyboard-first decisions, summary view.
 *
 * Keys: A = accept, R = reject (with reason prompt), arrows = navigate,
 * S = toggle the summary dashboard.
 */

import { ReviewApi } from "./api.js";
import { ReviewQueue } from "./queue.js";
import type { Candidate, Summary } from "./types.js";

export interface AppOptions {
  baseUrl?: string;
  fetchFn?: typeof fetch;
  promptFn?: (message: string) => string | null;
  retryIntervalMs?: number;
}

export interface AppHandle {
  queue: ReviewQueue;
  api: ReviewApi;
  refreshSummary(): Promise<void>;
  root: HTMLElement;
  stop(): void;
}

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

export async function initApp(root: HTMLElement, options: AppOptions = {}): Promise<AppHandle> {
  const api = new ReviewApi(
    options.baseUrl ?? "",
    options.fetchFn ?? ((input, init) => fetch(input, init)),
  );
  const promptFn =
    options.promptFn ??
    ((message: string) => (typeof window.prompt === "function" ? window.prompt(message) : ""));

  root.innerHTML = "";
  const banner = el("div", "banner hidden");
  const header = el("header", "header");
  const progress = el("span", "progress");
  const inlineError = el("span", "decision-error hidden");
  header.append(progress, inlineError);
  const stage = el("main", "stage");
  const summaryPane = el("section", "summary hidden");
  root.append(banner, header, stage, summaryPane);

  let showSummary = false;

  function renderCandidate(candidate: Candidate, position: { index: number; total: number; remaining: number }): void {
    progress.textContent = `${position.index + 1} / ${position.total} (${position.remaining} pending)`;
    stage.innerHTML = "";
    const triptych = el("div", "triptych");
    for (const [label, url] of [
      ["source A", candidate.source_a_url],
      [`morph (w=${candidate.warp.toFixed(3)})`, candidate.morph_url],
      ["source B", candidate.source_b_url],
    ] as const) {
      const pane = el("figure", "pane");
      const img = el("img");
      img.src = url;
      img.alt = label;
      const caption = el("figcaption", undefined, label);
      pane.append(img, caption);
      triptych.append(pane);
    }
    const meta = el("p", "meta", `${candidate.attack_id} - status: ${candidate.status}`);
    const help = el("p", "help", "A accept - R reject - arrows navigate - S summary");
    stage.append(triptych, meta, help);
  }

  function renderEmpty(): void {
    progress.textContent = "";
    stage.innerHTML = "";
    stage.append(el("p", "empty", "No pending candidates. Press S for the summary."));
  }

  function renderSummary(summary: Summary): void {
    summaryPane.innerHTML = "";
    summaryPane.append(el("h2", undefined, `Review summary - ${summary.split} split`));
    const list = el("ul", "counts");
    for (const status of ["pending", "accepted", "rejected", "auto_rejected"] as const) {
      list.append(el("li", `count-${status}`, `${status}: ${summary.counts[status] ?? 0}`));
    }
    list.append(el("li", "count-total", `total: ${summary.total}`));
    const refresh = el("button", "refresh", "Refresh");
    refresh.addEventListener("click", () => void refreshSummary());
    summaryPane.append(list, refresh);
  }

  async function refreshSummary(): Promise<void> {
    try {
      renderSummary(await api.summary());
      banner.classList.add("hidden");
    } catch {
      banner.textContent = "review service unreachable";
      banner.classList.remove("hidden");
    }
  }

  const queue = new ReviewQueue(api, {
    onChange: () => render(),
    onDecisionError: (attackId, message) => {
      inlineError.textContent = `${attackId}: ${message}`;
      inlineError.classList.remove("hidden");
    },
    onConnectivity: (offline, queued) => {
      if (offline) {
        banner.textContent = `review service unreachable - ${queued} decision(s) queued for retry`;
        banner.classList.remove("hidden");
      } else if (queued === 0) {
        banner.classList.add("hidden");
      }
    },
  });

  function render(): void {
    summaryPane.classList.toggle("hidden", !showSummary);
    stage.classList.toggle("hidden", showSummary);
    const candidate = queue.current();
    if (candidate) {
      renderCandidate(candidate, queue.position());
    } else {
      renderEmpty();
      void refreshSummary().then(() => {
        showSummary = true;
        summaryPane.classList.remove("hidden");
        stage.classList.add("hidden");
      });
    }
  }

  function onKey(event: KeyboardEvent): void {
    const key = event.key.toLowerCase();
    if (key === "a") {
      inlineError.classList.add("hidden");
      void queue.decide("accepted");
    } else if (key === "r") {
      inlineError.classList.add("hidden");
      const reason = promptFn("Rejection reason:") ?? "";
      void queue.decide("rejected", reason || undefined);
    } else if (key === "arrowright") {
      queue.next();
    } else if (key === "arrowleft") {
      queue.prev();
    } else if (key === "s") {
      showSummary = !showSummary;
      if (showSummary) void refreshSummary();
      render();
    }
  }
  document.addEventListener("keydown", onKey);

  const retryTimer = setInterval(() => {
    if (queue.queuedRetries() > 0) void queue.flushRetries();
  }, options.retryIntervalMs ?? 3000);

  try {
    await queue.load();
  } catch {
    banner.textContent = "review service unreachable";
    banner.classList.remove("hidden");
    renderEmpty();
  }

  return {
    queue,
    api,
    refreshSummary,
    root,
    stop: () => {
      clearInterval(retryTimer);
      document.removeEventListener("keydown", onKey);
    },
  };
}
