/**
 * Protocol-level golden tests against the real Python server: the UI
 * click path and the CLI path must produce byte-identical seed JSON (B1),
 * and clicking a frozen vertex must leave the state hash unchanged (B2).
 */

import { execFileSync } from "node:child_process";
import { mkdtempSync, rmSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { canonicalJson } from "../src/canonical.js";
import { SessionClient, BuildParams } from "../src/protocol.js";
import { StdioTransport } from "../src/stdio.js";

const BIGON: BuildParams = { surface: "polygon", n: 3, k: 0,
                             variant: "extended" };
const QCAW = process.env.QCAW_CMD ?? "qcaw";

function cliSeedJson(word: string[]): string {
  const dir = mkdtempSync(join(tmpdir(), "qcaw-"));
  const state = join(dir, "state.json");
  try {
    execFileSync(QCAW, ["seed", "build", "--surface", "polygon", "--n", "3",
                        "--k", "0", "--variant", "extended",
                        "--state", state]);
    if (word.length) {
      execFileSync(QCAW, ["mutate", "--word", word.join(","),
                          "--state", state]);
    }
    return execFileSync(QCAW, ["export", "--format", "json",
                               "--state", state], { encoding: "utf8" })
      .trim();
  } finally {
    rmSync(dir, { recursive: true, force: true });
  }
}

describe("session protocol against the live server", () => {
  let client: SessionClient;

  beforeAll(() => {
    client = new SessionClient(new StdioTransport());
  });

  afterAll(async () => {
    await client.quit();
  });

  it("B1: click sequence and CLI word give byte-identical seed JSON",
     async () => {
    const clicks = ["11", "22", "12"];
    await client.build(BIGON);
    for (const v of clicks) {
      const resp = await client.mutate(v);
      expect(resp.ok).toBe(true);
    }
    const resp = await client.getState();
    expect(resp.ok).toBe(true);
    const uiJson = canonicalJson(resp.state);
    const cliJson = cliSeedJson(clicks);
    expect(uiJson).toBe(cliJson);
  }, 120000);

  it("B2: frozen-vertex click is a protocol no-op", async () => {
    await client.build(BIGON);
    const before = canonicalJson((await client.getState()).state);
    const resp = await client.mutate("01");
    expect(resp.ok).toBe(false);
    expect(resp.error).toMatch(/not mutable/);
    const after = canonicalJson((await client.getState()).state);
    expect(after).toBe(before);
  }, 120000);

  it("undo restores the exact previous state", async () => {
    await client.build(BIGON);
    const initial = canonicalJson((await client.getState()).state);
    await client.mutate("21");
    await client.undo();
    const back = canonicalJson((await client.getState()).state);
    expect(back).toBe(initial);
  }, 120000);

  it("greenness flips to red after a mutation", async () => {
    await client.build(BIGON);
    await client.mutate("11");
    const resp = await client.greenness();
    expect(resp.green!["11"]).toBe(false);
    expect(resp.green!["22"]).toBe(true);
  }, 120000);

  it("named flip emits one frame per mutation", async () => {
    await client.build({ surface: "polygon", n: 3, k: 2,
                         variant: "reduced" });
    const resp = await client.runNamedSequence("flip", {}, [1, 3]);
    expect(resp.ok).toBe(true);
    expect(resp.frames).toHaveLength(4);
    expect(resp.word).toHaveLength(4);
  }, 120000);

  it("variable inspector returns exact Laurent terms", async () => {
    await client.build(BIGON);
    await client.mutate("11");
    const resp = await client.variable("11");
    expect(resp.ok).toBe(true);
    expect(resp.terms!.length).toBeGreaterThan(1);
    for (const term of resp.terms!) {
      for (const [, coeff] of term.coeff) {
        expect(Number.isInteger(coeff)).toBe(true);
      }
    }
  }, 120000);
});
