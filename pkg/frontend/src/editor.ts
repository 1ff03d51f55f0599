// Editor state: the served restoration, per-token selections, and the
// feedback record they produce. Selection-only editing — the model never
// synthesizes a diacritized form, it only picks among the alternatives the
// service returned, which keeps every correction strip-consistent by
// construction.

import type {
  Alternative,
  FeedbackRequest,
  RestoreResponse,
  TokenStatus,
  TokenView,
} from "./types.js";

export class MalformedResponseError extends Error {
  constructor(reason: string) {
    super(`malformed restore response: ${reason}`);
    this.name = "MalformedResponseError";
  }
}

function checkResponse(response: unknown): asserts response is RestoreResponse {
  const r = response as RestoreResponse;
  if (r === null || typeof r !== "object") throw new MalformedResponseError("not an object");
  if (typeof r.restored !== "string") throw new MalformedResponseError("missing restored text");
  if (!Array.isArray(r.tokens)) throw new MalformedResponseError("missing tokens");
  for (const token of r.tokens) {
    if (typeof token.source !== "string" || typeof token.best !== "string") {
      throw new MalformedResponseError("token missing source/best");
    }
    if (!Array.isArray(token.alternatives) || token.alternatives.length === 0) {
      throw new MalformedResponseError(`token ${token.source} has no alternatives`);
    }
    for (const alt of token.alternatives) {
      if (typeof alt.form !== "string" || typeof alt.score !== "number") {
        throw new MalformedResponseError("alternative missing form/score");
      }
    }
    if (!token.alternatives.some((alt) => alt.form === token.best)) {
      throw new MalformedResponseError(`best form ${token.best} not among alternatives`);
    }
  }
}

function statusFor(token: TokenView): TokenStatus {
  if (token.alternatives.length === 1 && token.alternatives[0].form === token.source) {
    return "passthrough";
  }
  return token.selected === token.served ? "auto" : "user-overridden";
}

export class EditorModel {
  /** Sentence as typed by the writer (undiacritized). */
  sourceText = "";
  tokens: TokenView[] = [];

  private requestCounter = 0;
  private appliedSeq = 0;

  /** Start a restore round trip; returns the sequence number to apply with. */
  beginRestore(sourceText: string): number {
    this.sourceText = sourceText;
    return ++this.requestCounter;
  }

  /**
   * Apply a service response. Returns false (and changes nothing) when a
   * newer request was issued meanwhile — the latest input wins. Malformed
   * responses throw without touching existing state.
   */
  applyRestoration(seq: number, response: unknown): boolean {
    if (seq < this.requestCounter || seq <= this.appliedSeq) return false;
    checkResponse(response);
    const tokens = response.tokens.map((token) => {
      const view: TokenView = {
        source: token.source,
        selected: token.best,
        served: token.best,
        alternatives: token.alternatives.map((alt) => ({ ...alt })),
        status: "auto",
      };
      view.status = statusFor(view);
      return view;
    });
    this.tokens = tokens;
    this.appliedSeq = seq;
    return true;
  }

  get isEmpty(): boolean {
    return this.tokens.length === 0;
  }

  /** Positions the UI should mark as ambiguous (a real choice exists). */
  isAmbiguous(index: number): boolean {
    return this.tokens[index].alternatives.length >= 2;
  }

  alternativesAt(index: number): Alternative[] {
    return this.tokens[index].alternatives;
  }

  /**
   * Select one of the served alternatives at a position. Forms that did not
   * come from the service are rejected — the editor never synthesizes.
   */
  select(index: number, form: string): void {
    const token = this.tokens[index];
    if (token === undefined) throw new RangeError(`no token at ${index}`);
    if (!token.alternatives.some((alt) => alt.form === form)) {
      throw new RangeError(`form ${form} was not offered for ${token.source}`);
    }
    token.selected = form;
    token.status = statusFor(token);
  }

  correctedSentence(): string {
    return this.tokens.map((token) => token.selected).join(" ");
  }

  servedSentence(): string {
    return this.tokens.map((token) => token.served).join(" ");
  }

  overriddenCount(): number {
    return this.tokens.filter((token) => token.status === "user-overridden").length;
  }

  /** Build the feedback record; valid with zero edits (confirms the output). */
  feedbackPayload(clientId?: string): FeedbackRequest {
    if (this.isEmpty) throw new Error("nothing to submit");
    return {
      source: this.sourceText,
      served: this.servedSentence(),
      corrected: this.correctedSentence(),
      choices: this.tokens.map((token) => token.selected),
      client_id: clientId,
    };
  }

  /** After a successful submit the selections become the accepted baseline. */
  clearOverrides(): void {
    for (const token of this.tokens) {
      token.served = token.selected;
      token.status = statusFor(token);
    }
  }
}
