/**
 * UI state and its transitions.
 *
 * Invariants kept here: the analysis pane is visible exactly when a word is
 * selected; a conflict banner and a hit list are mutually exclusive.
 */

import type { ConflictResponse, QuerySelection, SentenceHit } from "./api";

export interface SelectedWord {
  sentenceId: number;
  tokenIndex: number;
}

export interface UiState {
  selection: QuerySelection;
  hits: SentenceHit[] | null;
  conflict: ConflictResponse | null;
  selectedWord: SelectedWord | null;
  error: string | null;
  asciiMode: boolean;
}

export function initialState(): UiState {
  return {
    selection: {},
    hits: null,
    conflict: null,
    selectedWord: null,
    error: null,
    asciiMode: false,
  };
}

export function hasSelection(state: UiState): boolean {
  return Object.values(state.selection).some((v) => v !== undefined && v !== "");
}

export function withSearchResults(state: UiState, hits: SentenceHit[]): UiState {
  return { ...state, hits, conflict: null, selectedWord: null, error: null };
}

export function withConflict(state: UiState, conflict: ConflictResponse): UiState {
  return { ...state, conflict, hits: null, selectedWord: null, error: null };
}

export function withError(state: UiState, message: string): UiState {
  return { ...state, error: message };
}

export function withSelectedWord(state: UiState, word: SelectedWord | null): UiState {
  return { ...state, selectedWord: word };
}
