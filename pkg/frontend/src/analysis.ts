/**
 * The morphological-analysis pane for the clicked word: the lexical gloss
 * followed by the labeled fields exactly as the API provides them.
 */

import type { AnalysisResponse } from "./api";
import { displayText } from "./ascii";

export class AnalysisPane {
  constructor(private readonly root: HTMLElement) {}

  render(analysis: AnalysisResponse, asciiMode: boolean): void {
    this.root.textContent = "";
    this.root.hidden = false;
    const heading = document.createElement("h2");
    heading.textContent = "Morphological Analysis:";
    this.root.appendChild(heading);

    if (analysis.noAnalysis || analysis.lexicalGloss === null) {
      const note = document.createElement("p");
      note.className = "placeholder";
      note.textContent = "no analysis (punctuation/unknown)";
      this.root.appendChild(note);
      return;
    }

    const gloss = document.createElement("p");
    gloss.className = "lexical-gloss";
    gloss.textContent = displayText(analysis.lexicalGloss, asciiMode);
    this.root.appendChild(gloss);

    const table = document.createElement("dl");
    table.className = "analysis-fields";
    for (const field of analysis.fields) {
      const dt = document.createElement("dt");
      dt.textContent = field.label + ":";
      const dd = document.createElement("dd");
      dd.textContent = displayText(field.value, asciiMode);
      dd.dataset.label = field.label;
      table.appendChild(dt);
      table.appendChild(dd);
    }
    this.root.appendChild(table);
  }

  clear(): void {
    this.root.textContent = "";
    this.root.hidden = true;
  }
}
