import { describe, expect, it } from "vitest";

import { ApiClient, ApiError, buildSearchQuery } from "../src/api";
import { asciiFold } from "../src/ascii";
import { CONFLICT_PAYLOAD, jsonResponse, mockFetch } from "./helpers";

describe("api client", () => {
  it("returns hits for a successful search", async () => {
    const { fetchFn } = mockFetch();
    const client = new ApiClient(fetchFn);
    const outcome = await client.search({ voice: "passive" });
    expect(outcome.kind).toBe("hits");
    if (outcome.kind === "hits") {
      expect(outcome.response.hits[0].matches).toEqual([4]);
    }
  });

  it("returns the conflict payload on 409 instead of throwing", async () => {
    const { fetchFn } = mockFetch({ search: () => jsonResponse(409, CONFLICT_PAYLOAD) });
    const client = new ApiClient(fetchFn);
    const outcome = await client.search({ case: "dative", tense: "past" });
    expect(outcome.kind).toBe("conflict");
    if (outcome.kind === "conflict") {
      expect(outcome.conflict.features).toContainEqual(["case", "dative"]);
    }
  });

  it("throws ApiError with the HTTP status on other failures", async () => {
    const { fetchFn } = mockFetch({
      search: () => jsonResponse(422, { message: "unknown value" }),
    });
    const client = new ApiClient(fetchFn);
    await expect(client.search({ case: "nope" })).rejects.toMatchObject({
      status: 422,
    });
    await expect(client.search({ case: "nope" })).rejects.toBeInstanceOf(ApiError);
  });

  it("never mutates values while serializing", () => {
    expect(buildSearchQuery({ root: "göz" })).toBe("root=g%C3%B6z");
  });
});

describe("ascii fold", () => {
  it("maps the six special letters to upper-case ASCII", () => {
    expect(asciiFold("çğıöşü")).toBe("CGIOSU");
    expect(asciiFold("ÇĞİÖŞÜ")).toBe("CGIOSU");
    expect(asciiFold("kesilemedi")).toBe("kesilemedi");
    expect(asciiFold("Musluğun akıntısı")).toBe("MusluGun akIntIsI");
  });
});
