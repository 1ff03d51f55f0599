// End-to-end: a real `yodi serve` process, the fetch client, the editor
// model and the DOM renderer, wired together the way the browser runs them.

import { execFileSync, spawn, type ChildProcess } from "node:child_process";
import { mkdtempSync, readFileSync, rmSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";

import { JSDOM } from "jsdom";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { ApiClient } from "../src/api.js";
import { EditorModel } from "../src/editor.js";
import { stripDiacritics } from "../src/strip.js";
import { renderTokenRow } from "../src/view.js";

const PORT = 8941;
const BASE = `http://127.0.0.1:${PORT}`;

// gba appears with three diacritizations: gbà x3, gbá x1, gba x1
const TRAINING_LINES = [
  "wọ́n gbà owó",
  "wọ́n gbà á",
  "mo gbà ọmọ",
  "ó gbá bọ́ọ̀lù",
  "mo gba ìwé",
];

let workdir: string;
let server: ChildProcess | undefined;
let feedbackPath: string;

async function waitForHealth(api: ApiClient, attempts = 60): Promise<void> {
  for (let i = 0; i < attempts; i++) {
    if (await api.health()) return;
    await new Promise((resolve) => setTimeout(resolve, 500));
  }
  throw new Error("service did not become healthy");
}

beforeAll(async () => {
  workdir = mkdtempSync(join(tmpdir(), "yodi-e2e-"));
  const raw = join(workdir, "raw.txt");
  writeFileSync(raw, TRAINING_LINES.map((line) => line + "\n").join(""), "utf-8");
  const lexicon = join(workdir, "lexicon.tsv");
  const model = join(workdir, "model.tsv");
  feedbackPath = join(workdir, "feedback.jsonl");
  execFileSync("yodi", ["lexicon", raw, "-o", lexicon]);
  execFileSync("yodi", ["train", raw, "-o", model]);
  server = spawn(
    "yodi",
    [
      "serve",
      "--model", model,
      "--lexicon", lexicon,
      "--port", String(PORT),
      "--feedback", feedbackPath,
    ],
    { stdio: "ignore" },
  );
  await waitForHealth(new ApiClient(BASE));
});

afterAll(() => {
  server?.kill();
  rmSync(workdir, { recursive: true, force: true });
});

describe("correction loop against the live service", () => {
  it("restores gba with 3 alternatives, records the picked correction", async () => {
    const api = new ApiClient(BASE);
    const model = new EditorModel();

    // restore
    const seq = model.beginRestore("gba");
    const response = await api.restore("gba");
    expect(model.applyRestoration(seq, response)).toBe(true);

    // render: the ambiguous token shows all three ranked alternatives
    const dom = new JSDOM("<main><div id='editor'></div></main>");
    const container = dom.window.document.getElementById("editor") as HTMLElement;
    renderTokenRow(container, model, {
      onSelect: (index, form) => model.select(index, form),
    });
    const chip = container.querySelector("span.token.ambiguous") as HTMLElement;
    expect(chip).not.toBeNull();
    chip.click();
    const rendered = container.querySelectorAll("li.alternative");
    expect(rendered).toHaveLength(3);
    expect(new Set(Array.from(rendered).map((li) => li.getAttribute("data-form")))).toEqual(
      new Set(["gbà", "gba", "gbá"]),
    );

    // pick the second-ranked alternative through the DOM
    (rendered[1] as HTMLElement).click();
    const secondForm = rendered[1].getAttribute("data-form")!;
    expect(model.tokens[0].selected).toBe(secondForm);

    // submit
    await api.submitFeedback(model.feedbackPayload("e2e"));
    model.clearOverrides();

    // exactly one feedback record, strip-consistent with the source
    const records = readFileSync(feedbackPath, "utf-8")
      .split("\n")
      .filter((line) => line.trim())
      .map((line) => JSON.parse(line) as { source: string; corrected: string });
    expect(records).toHaveLength(1);
    expect(records[0].source).toBe("gba");
    expect(records[0].corrected).toBe(secondForm);
    expect(stripDiacritics(records[0].corrected)).toBe("gba");
  });

  it("server rejects a synthesized (strip-inconsistent) correction", async () => {
    const api = new ApiClient(BASE);
    await expect(
      api.submitFeedback({ source: "gba", corrected: "ọdún" }),
    ).rejects.toMatchObject({ status: 422 });
    // still exactly one stored record
    const lines = readFileSync(feedbackPath, "utf-8").split("\n").filter((l) => l.trim());
    expect(lines).toHaveLength(1);
  });
});
