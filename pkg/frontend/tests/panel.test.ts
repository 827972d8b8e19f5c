import { beforeEach, describe, expect, it } from "vitest";

import { ApiClient, DIMENSIONS } from "../src/api";
import { startApp } from "../src/main";
import { flush, mockFetch } from "./helpers";

async function mount() {
  document.body.innerHTML = '<div id="app"></div>';
  const { fetchFn, log } = mockFetch();
  startApp(document.getElementById("app")!, new ApiClient(fetchFn));
  await flush();
  return { log };
}

describe("feature panel", () => {
  beforeEach(() => {
    document.body.innerHTML = "";
  });

  it("exposes exactly the ten feature dimensions", async () => {
    await mount();
    const rows = document.querySelectorAll("#panel .panel-row");
    expect(rows).toHaveLength(10);
    const names = [...rows].map((r) => (r as HTMLElement).dataset.dimension);
    expect(names).toEqual([...DIMENSIONS]);
    // nine selects plus one free-text root input, all initially clear
    expect(document.querySelectorAll("#panel select")).toHaveLength(9);
    const rootInput = document.querySelector<HTMLInputElement>("#control-root");
    expect(rootInput).not.toBeNull();
    expect(rootInput!.value).toBe("");
  });

  it("disables search until a feature is set and after clearing", async () => {
    await mount();
    const button = document.querySelector<HTMLButtonElement>("#search-button")!;
    expect(button.disabled).toBe(true);

    const caseSelect = document.querySelector<HTMLSelectElement>("#control-case")!;
    caseSelect.value = "dative";
    caseSelect.dispatchEvent(new Event("change"));
    expect(button.disabled).toBe(false);

    document.querySelector<HTMLButtonElement>("#clear-button")!.click();
    expect(button.disabled).toBe(true);
    expect(caseSelect.value).toBe("");
  });

  it("shows the implied category as a hint when case=dative is selected", async () => {
    await mount();
    const caseSelect = document.querySelector<HTMLSelectElement>("#control-case")!;
    caseSelect.value = "dative";
    caseSelect.dispatchEvent(new Event("change"));
    expect(document.querySelector("#implied-hint")!.textContent).toBe("implied: noun");

    // an explicit category suppresses the hint
    const catSelect = document.querySelector<HTMLSelectElement>("#control-category")!;
    catSelect.value = "noun";
    catSelect.dispatchEvent(new Event("change"));
    expect(document.querySelector("#implied-hint")!.textContent).toBe("");
  });

  it("renders vocabularies with display labels", async () => {
    await mount();
    const agreement = document.querySelector<HTMLSelectElement>("#control-agreement")!;
    const labels = [...agreement.options].map((o) => o.textContent);
    expect(labels).toContain("3rd singular");
  });

  it("shows a retry banner when the catalog cannot be loaded", async () => {
    document.body.innerHTML = '<div id="app"></div>';
    const { fetchFn } = mockFetch({
      features: () => new Response("[]", { status: 500 }),
    });
    startApp(document.getElementById("app")!, new ApiClient(fetchFn));
    await flush();
    expect(document.querySelector(".error-banner")).not.toBeNull();
  });
});
