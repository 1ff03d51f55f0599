// Application wiring: input box -> /restore -> token row -> /feedback.

import { ApiClient, ApiError } from "./api.js";
import { EditorModel, MalformedResponseError } from "./editor.js";
import {
  clearTokenErrors,
  closeDropdowns,
  hideBanner,
  markTokenError,
  renderTokenRow,
  showBanner,
  showConfirmation,
} from "./view.js";

const api = new ApiClient("");
const model = new EditorModel();

function byId<T extends HTMLElement>(id: string): T {
  const element = document.getElementById(id);
  if (!element) throw new Error(`missing #${id}`);
  return element as T;
}

const input = byId<HTMLInputElement>("source-input");
const restoreButton = byId<HTMLButtonElement>("restore-button");
const submitButton = byId<HTMLButtonElement>("submit-button");
const editorRoot = byId<HTMLDivElement>("editor");
const statusRoot = byId<HTMLDivElement>("status");

function redraw(): void {
  renderTokenRow(editorRoot, model, {
    onSelect(index, form) {
      model.select(index, form);
      closeDropdowns(editorRoot);
      redraw();
    },
  });
  submitButton.disabled = model.isEmpty;
}

async function restore(): Promise<void> {
  const text = input.value.trim();
  if (!text) return;
  hideBanner(statusRoot);
  const seq = model.beginRestore(text);
  try {
    const response = await api.restore(text);
    if (!model.applyRestoration(seq, response)) return; // stale: newer input won
    clearTokenErrors(editorRoot);
    redraw();
  } catch (error) {
    if (error instanceof MalformedResponseError || error instanceof ApiError) {
      showBanner(statusRoot, error.message); // editor state stays as it was
    } else {
      showBanner(statusRoot, "service unreachable");
    }
  }
}

async function submit(): Promise<void> {
  if (model.isEmpty) return;
  clearTokenErrors(editorRoot);
  try {
    await api.submitFeedback(model.feedbackPayload("editor"));
    model.clearOverrides();
    redraw();
    showConfirmation(statusRoot, "correction saved — thank you");
  } catch (error) {
    if (error instanceof ApiError) {
      markTokenError(editorRoot, error.detail);
      showBanner(statusRoot, error.detail);
    } else {
      showBanner(statusRoot, "submit failed, nothing recorded");
    }
  }
}

restoreButton.addEventListener("click", () => void restore());
input.addEventListener("keydown", (event) => {
  if (event.key === "Enter") void restore();
});
submitButton.addEventListener("click", () => void submit());
