/**
 * The search-settings panel: one control per feature dimension.
 *
 * Eight closed dimensions and the suffix inventory render as selects with an
 * empty "any" option; root is a free text input.  Selecting a value whose
 * implication is known shows a hint next to the category control.
 */

import { DIMENSIONS, type DimensionName, type FeaturesResponse, type QuerySelection } from "./api";

export interface PanelCallbacks {
  onChange(selection: QuerySelection): void;
  onSearch(): void;
}

const LABELS: Record<DimensionName, string> = {
  agreement: "Agreement",
  aspect: "Aspect",
  case: "Case",
  category: "Category",
  possessive: "Possessive",
  sense: "Sense",
  tense: "Tense",
  voice: "Voice",
  suffix: "Suffix",
  root: "Root",
};

export class FeaturePanel {
  private readonly selection: QuerySelection = {};
  private readonly impliesByValue = new Map<string, string>();
  private hintEl: HTMLElement | null = null;
  private searchButton: HTMLButtonElement | null = null;

  constructor(
    private readonly root: HTMLElement,
    private readonly callbacks: PanelCallbacks,
  ) {}

  render(features: FeaturesResponse): void {
    this.root.textContent = "";
    const heading = document.createElement("h2");
    heading.textContent = "Search Settings";
    this.root.appendChild(heading);

    const byName = new Map(features.dimensions.map((d) => [d.name, d]));
    for (const dim of DIMENSIONS) {
      const row = document.createElement("div");
      row.className = "panel-row";
      row.dataset.dimension = dim;

      const label = document.createElement("label");
      label.textContent = LABELS[dim] + ":";
      label.htmlFor = `control-${dim}`;
      row.appendChild(label);

      if (dim === "root") {
        const input = document.createElement("input");
        input.type = "text";
        input.id = "control-root";
        input.addEventListener("input", () => {
          this.setValue("root", input.value.trim());
        });
        row.appendChild(input);
      } else {
        const select = document.createElement("select");
        select.id = `control-${dim}`;
        const empty = document.createElement("option");
        empty.value = "";
        empty.textContent = "";
        select.appendChild(empty);
        for (const entry of byName.get(dim)?.values ?? []) {
          const option = document.createElement("option");
          option.value = entry.value;
          option.textContent = entry.label;
          select.appendChild(option);
          if (entry.implies) {
            this.impliesByValue.set(`${dim}=${entry.value}`, entry.implies);
          }
        }
        select.addEventListener("change", () => {
          this.setValue(dim, select.value);
        });
        row.appendChild(select);
      }

      if (dim === "category") {
        const hint = document.createElement("span");
        hint.className = "implied-hint";
        hint.id = "implied-hint";
        row.appendChild(hint);
        this.hintEl = hint;
      }
      this.root.appendChild(row);
    }

    const actions = document.createElement("div");
    actions.className = "panel-actions";
    const searchButton = document.createElement("button");
    searchButton.id = "search-button";
    searchButton.textContent = "Search";
    searchButton.disabled = true;
    searchButton.addEventListener("click", () => this.callbacks.onSearch());
    actions.appendChild(searchButton);

    const clearButton = document.createElement("button");
    clearButton.id = "clear-button";
    clearButton.textContent = "Clear";
    clearButton.addEventListener("click", () => this.clear());
    actions.appendChild(clearButton);

    this.root.appendChild(actions);
    this.searchButton = searchButton;
  }

  current(): QuerySelection {
    return { ...this.selection };
  }

  private setValue(dim: DimensionName, value: string): void {
    if (value === "") {
      delete this.selection[dim];
    } else {
      this.selection[dim] = value;
    }
    this.refreshHint();
    this.refreshButton();
    this.callbacks.onChange(this.current());
  }

  private refreshHint(): void {
    if (!this.hintEl) return;
    if (this.selection.category) {
      this.hintEl.textContent = "";
      return;
    }
    const implied = new Set<string>();
    for (const [dim, value] of Object.entries(this.selection)) {
      const hit = this.impliesByValue.get(`${dim}=${value}`);
      if (hit) implied.add(hit);
    }
    this.hintEl.textContent =
      implied.size === 1 ? `implied: ${[...implied][0]}` : "";
  }

  private refreshButton(): void {
    if (this.searchButton) {
      this.searchButton.disabled = !Object.values(this.selection).some(
        (v) => v !== undefined && v !== "",
      );
    }
  }

  private clear(): void {
    for (const dim of DIMENSIONS) {
      delete this.selection[dim];
    }
    for (const select of this.root.querySelectorAll("select")) {
      select.value = "";
    }
    const input = this.root.querySelector<HTMLInputElement>("#control-root");
    if (input) input.value = "";
    this.refreshHint();
    this.refreshButton();
    this.callbacks.onChange(this.current());
  }
}
