// Wire types mirroring the restoration service JSON.

export interface Alternative {
  form: string;
  score: number;
}

export interface TokenResult {
  source: string;
  best: string;
  alternatives: Alternative[];
}

export interface RestoreResponse {
  restored: string;
  tokens: TokenResult[];
}

export interface FeedbackRequest {
  source: string;
  corrected: string;
  served?: string;
  choices?: string[];
  client_id?: string;
}

// Editor-side view of one token.
export type TokenStatus = "auto" | "user-overridden" | "passthrough";

export interface TokenView {
  source: string;
  selected: string;
  served: string;
  alternatives: Alternative[];
  status: TokenStatus;
}
