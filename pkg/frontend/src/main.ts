/**
 * Application wiring: settings panel on the left, sentence list in the
 * middle, analysis pane below, mirroring the original corpus-searcher
 * layout.  At most one search is in flight; starting a new one aborts the
 * previous request.
 */

import { ApiClient } from "./api";
import { AnalysisPane } from "./analysis";
import { FeaturePanel } from "./panel";
import { ResultList } from "./results";
import { hasSelection, initialState, type UiState } from "./state";

export function startApp(rootEl: HTMLElement, client: ApiClient = new ApiClient()): void {
  rootEl.innerHTML = `
    <header><h1>Corpus Searcher</h1>
      <label class="ascii-toggle"><input type="checkbox" id="ascii-toggle"> ASCII view</label>
    </header>
    <div class="layout">
      <aside id="panel"></aside>
      <main id="results"></main>
    </div>
    <section id="analysis" hidden></section>
  `;

  let state: UiState = initialState();
  let inflight: AbortController | null = null;

  const panelEl = rootEl.querySelector<HTMLElement>("#panel")!;
  const resultsEl = rootEl.querySelector<HTMLElement>("#results")!;
  const analysisEl = rootEl.querySelector<HTMLElement>("#analysis")!;
  const asciiToggle = rootEl.querySelector<HTMLInputElement>("#ascii-toggle")!;

  const analysisPane = new AnalysisPane(analysisEl);
  const results = new ResultList(resultsEl, {
    onWordClick: (sentenceId, tokenIndex) => {
      void showAnalysis(sentenceId, tokenIndex);
    },
  });
  const panel = new FeaturePanel(panelEl, {
    onChange: (selection) => {
      state = { ...state, selection };
    },
    onSearch: () => {
      void runSearch();
    },
  });

  asciiToggle.addEventListener("change", () => {
    state = { ...state, asciiMode: asciiToggle.checked };
    rerender();
  });

  function rerender(): void {
    if (state.conflict) {
      results.renderConflict(state.conflict.explanation, state.conflict.features);
    } else if (state.hits !== null) {
      results.renderHits(state.hits, state.asciiMode);
    }
    if (state.selectedWord === null) {
      analysisPane.clear();
    }
  }

  async function runSearch(): Promise<void> {
    if (!hasSelection(state)) return;
    inflight?.abort();
    inflight = new AbortController();
    try {
      const outcome = await client.search(state.selection, inflight.signal);
      if (outcome.kind === "conflict") {
        state = { ...state, conflict: outcome.conflict, hits: null, selectedWord: null };
      } else {
        state = {
          ...state,
          hits: outcome.response.hits,
          conflict: null,
          selectedWord: null,
        };
      }
      rerender();
    } catch (err) {
      if ((err as Error).name === "AbortError") return;
      results.renderError(`search failed: ${(err as Error).message}`, () => {
        void runSearch();
      });
    }
  }

  async function showAnalysis(sentenceId: number, tokenIndex: number): Promise<void> {
    try {
      const analysis = await client.analysis(sentenceId, tokenIndex);
      state = { ...state, selectedWord: { sentenceId, tokenIndex } };
      results.markSelected(sentenceId, tokenIndex);
      analysisPane.render(analysis, state.asciiMode);
    } catch (err) {
      analysisPane.render(
        {
          sentenceId,
          tokenIndex,
          lexicalGloss: null,
          fields: [],
          noAnalysis: true,
        },
        state.asciiMode,
      );
    }
  }

  void (async () => {
    try {
      const features = await client.features();
      panel.render(features);
    } catch (err) {
      results.renderError(`could not load feature catalog: ${(err as Error).message}`, () => {
        window.location.reload();
      });
    }
  })();
}

if (typeof document !== "undefined" && document.getElementById("app")) {
  startApp(document.getElementById("app")!);
}
