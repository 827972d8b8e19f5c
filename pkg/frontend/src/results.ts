/**
 * The matching-sentence list.  Matched words are emphasized with <strong>
 * elements built from the API's character spans, and only those emphasized
 * words are clickable.
 */

import type { SentenceHit } from "./api";
import { displayText } from "./ascii";

export interface ResultCallbacks {
  onWordClick(sentenceId: number, tokenIndex: number): void;
}

/** Alternating plain/bold segments of one sentence, cut at the API spans. */
export function segmentSentence(
  text: string,
  spans: [number, number][],
): { text: string; bold: boolean; spanIndex: number | null }[] {
  const segments: { text: string; bold: boolean; spanIndex: number | null }[] = [];
  let cursor = 0;
  spans.forEach(([start, end], i) => {
    if (start > cursor) {
      segments.push({ text: text.slice(cursor, start), bold: false, spanIndex: null });
    }
    segments.push({ text: text.slice(start, end), bold: true, spanIndex: i });
    cursor = end;
  });
  if (cursor < text.length) {
    segments.push({ text: text.slice(cursor), bold: false, spanIndex: null });
  }
  return segments;
}

export class ResultList {
  constructor(
    private readonly root: HTMLElement,
    private readonly callbacks: ResultCallbacks,
  ) {}

  renderHits(hits: SentenceHit[], asciiMode: boolean): void {
    this.root.textContent = "";
    const heading = document.createElement("h2");
    heading.textContent = "Sentences:";
    this.root.appendChild(heading);

    if (hits.length === 0) {
      const empty = document.createElement("p");
      empty.className = "placeholder";
      empty.textContent = "no sentences";
      this.root.appendChild(empty);
      return;
    }

    const list = document.createElement("ul");
    list.className = "sentence-list";
    for (const hit of hits) {
      const item = document.createElement("li");
      item.dataset.sentenceId = String(hit.sentenceId);
      for (const segment of segmentSentence(hit.text, hit.spans)) {
        if (segment.bold && segment.spanIndex !== null) {
          const strong = document.createElement("strong");
          strong.textContent = displayText(segment.text, asciiMode);
          strong.className = "match";
          const tokenIndex = hit.matches[segment.spanIndex];
          strong.dataset.tokenIndex = String(tokenIndex);
          strong.addEventListener("click", () =>
            this.callbacks.onWordClick(hit.sentenceId, tokenIndex),
          );
          item.appendChild(strong);
        } else {
          item.appendChild(
            document.createTextNode(displayText(segment.text, asciiMode)),
          );
        }
      }
      list.appendChild(item);
    }
    this.root.appendChild(list);
  }

  renderConflict(explanation: string, features: [string, string][]): void {
    this.root.textContent = "";
    const banner = document.createElement("div");
    banner.className = "conflict-banner";
    const title = document.createElement("strong");
    title.textContent = "Conflicting features";
    banner.appendChild(title);
    const detail = document.createElement("p");
    detail.textContent = explanation;
    banner.appendChild(detail);
    const list = document.createElement("ul");
    for (const [dim, value] of features) {
      const item = document.createElement("li");
      item.textContent = `${dim}=${value}`;
      list.appendChild(item);
    }
    banner.appendChild(list);
    this.root.appendChild(banner);
  }

  renderError(message: string, onRetry: () => void): void {
    this.root.textContent = "";
    const banner = document.createElement("div");
    banner.className = "error-banner";
    banner.textContent = message + " ";
    const retry = document.createElement("button");
    retry.textContent = "retry";
    retry.addEventListener("click", onRetry);
    banner.appendChild(retry);
    this.root.appendChild(banner);
  }

  markSelected(sentenceId: number, tokenIndex: number): void {
    for (const el of this.root.querySelectorAll("strong.match")) {
      el.classList.remove("selected");
    }
    const selector =
      `li[data-sentence-id="${sentenceId}"] ` +
      `strong.match[data-token-index="${tokenIndex}"]`;
    this.root.querySelector(selector)?.classList.add("selected");
  }
}
