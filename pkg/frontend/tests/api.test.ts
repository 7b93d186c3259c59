import { describe, expect, it } from "vitest";

import { ApiClient, ApiError, tableUrl } from "../src/api.js";

function jsonResponse(body: unknown, status = 200): Response {
  return new Response(JSON.stringify(body), {
    status,
    headers: { "content-type": "application/json" },
  });
}

describe("tableUrl", () => {
  it("builds the table endpoint with encoded query parameters", () => {
    const url = tableUrl("", "abc", {
      q: "RPY1980 fra",
      sort: "times",
      dir: "desc",
      limit: 40,
    });
    expect(url).toBe("/api/sessions/abc/table?q=RPY1980+fra&sort=times&dir=desc&limit=40");
  });

  it("omits absent parameters", () => {
    expect(tableUrl("http://x", "abc", {})).toBe("http://x/api/sessions/abc/table");
  });
});

describe("ApiClient", () => {
  it("parses a successful table response", async () => {
    const payload = { total_matches: 1, rows: [] };
    const client = new ApiClient("", async () => jsonResponse(payload));
    const result = await client.table("s", { q: "x" });
    expect(result).toEqual(payload);
  });

  it("raises ApiError with the service's error code and detail", async () => {
    const client = new ApiClient("", async () =>
      jsonResponse({ error: "payload_too_large", detail: "upload exceeds 15728640 bytes" }, 413),
    );
    const err = await client.spectrogram("s").catch((e) => e);
    expect(err).toBeInstanceOf(ApiError);
    expect(err.status).toBe(413);
    expect(err.errorCode).toBe("payload_too_large");
    expect(err.message).toContain("15728640");
  });

  it("aborts the older table query so only the newest resolves", async () => {
    const settled: string[] = [];
    const fetchFn = (input: RequestInfo | URL, init?: RequestInit): Promise<Response> => {
      const url = String(input);
      return new Promise((resolve, reject) => {
        const signal = init?.signal;
        signal?.addEventListener("abort", () =>
          reject(new DOMException("aborted", "AbortError")),
        );
        // the older (first) request stays pending until aborted; the
        // newer one resolves on the next tick
        if (url.includes("q=new")) {
          setTimeout(() => resolve(jsonResponse({ total_matches: 2, rows: [] })), 0);
        }
      });
    };
    const client = new ApiClient("", fetchFn as typeof fetch);

    const first = client.table("s", { q: "old" }).then((r) => {
      settled.push("old");
      return r;
    });
    const second = client.table("s", { q: "new" }).then((r) => {
      settled.push("new");
      return r;
    });

    expect(await first).toBeNull(); // superseded
    expect(await second).toEqual({ total_matches: 2, rows: [] });
    expect(settled).toEqual(["old", "new"]);
  });

  it("posts uploads as multipart form data with the mode in the query", async () => {
    let captured: { url: string; body: unknown } | null = null;
    const client = new ApiClient("", (async (input: RequestInfo | URL, init?: RequestInit) => {
      captured = { url: String(input), body: init?.body };
      return jsonResponse({ id: "x", mode: "multi", records: 1, references: 2 }, 201);
    }) as typeof fetch);
    const summary = await client.createSession(new Blob(["PY 2013\nER\n"]), "multi");
    expect(summary.id).toBe("x");
    expect(captured!.url).toBe("/api/sessions?mode=multi");
    expect(captured!.body).toBeInstanceOf(FormData);
  });
});
