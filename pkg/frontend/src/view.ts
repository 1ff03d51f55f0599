// DOM rendering: a row of token chips, a ranked-alternatives dropdown,
// error banner and confirmation line. No framework — plain elements, so the
// bundle stays a static asset the service can host.

import type { EditorModel } from "./editor.js";

export interface ViewHandlers {
  onSelect(index: number, form: string): void;
}

export function renderTokenRow(
  container: HTMLElement,
  model: EditorModel,
  handlers: ViewHandlers,
): void {
  container.textContent = "";
  const row = container.ownerDocument.createElement("div");
  row.className = "token-row";
  model.tokens.forEach((token, index) => {
    const chip = container.ownerDocument.createElement("span");
    chip.className = "token";
    chip.dataset.index = String(index);
    chip.dataset.status = token.status;
    chip.textContent = token.selected;
    chip.title = `source: ${token.source}`;
    if (model.isAmbiguous(index)) {
      chip.classList.add("ambiguous");
      chip.addEventListener("click", () => {
        closeDropdowns(container);
        chip.appendChild(renderDropdown(container.ownerDocument, model, index, handlers));
      });
    }
    if (token.status === "user-overridden") chip.classList.add("overridden");
    if (token.status === "passthrough") chip.classList.add("passthrough");
    row.appendChild(chip);
  });
  container.appendChild(row);
}

function renderDropdown(
  doc: Document,
  model: EditorModel,
  index: number,
  handlers: ViewHandlers,
): HTMLElement {
  const list = doc.createElement("ul");
  list.className = "alternatives";
  for (const alt of model.alternativesAt(index)) {
    const item = doc.createElement("li");
    item.className = "alternative";
    item.dataset.form = alt.form;
    const label = doc.createElement("span");
    label.textContent = alt.form;
    const score = doc.createElement("span");
    score.className = "score";
    score.textContent = alt.score.toFixed(3);
    item.append(label, score);
    item.addEventListener("click", (event) => {
      event.stopPropagation();
      handlers.onSelect(index, alt.form);
    });
    list.appendChild(item);
  }
  return list;
}

export function closeDropdowns(container: HTMLElement): void {
  for (const list of Array.from(container.querySelectorAll("ul.alternatives"))) {
    list.remove();
  }
}

export function showBanner(container: HTMLElement, message: string): void {
  let banner = container.querySelector<HTMLElement>(".banner");
  if (!banner) {
    banner = container.ownerDocument.createElement("div");
    banner.className = "banner";
    container.prepend(banner);
  }
  banner.textContent = message;
  banner.hidden = false;
}

export function hideBanner(container: HTMLElement): void {
  const banner = container.querySelector<HTMLElement>(".banner");
  if (banner) banner.hidden = true;
}

export function showConfirmation(container: HTMLElement, message: string): void {
  let note = container.querySelector<HTMLElement>(".confirmation");
  if (!note) {
    note = container.ownerDocument.createElement("div");
    note.className = "confirmation";
    container.appendChild(note);
  }
  note.textContent = message;
  note.hidden = false;
}

/** Mark the token a server-side validation error complained about. */
export function markTokenError(container: HTMLElement, detail: string): void {
  const match = detail.match(/'([^']+)'/);
  const chips = Array.from(container.querySelectorAll<HTMLElement>("span.token"));
  const offender = match
    ? chips.find((chip) => chip.textContent === match[1])
    : undefined;
  (offender ?? chips[0])?.classList.add("error");
  if (offender) offender.title = detail;
}

export function clearTokenErrors(container: HTMLElement): void {
  for (const chip of Array.from(container.querySelectorAll("span.token.error"))) {
    chip.classList.remove("error");
  }
}
