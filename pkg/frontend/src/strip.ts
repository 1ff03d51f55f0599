// Client-side diacritic stripping, mirroring the service's canonical form.
// Used only to sanity-check corrections before they leave the browser; the
// server remains the authority.

const COMBINING_MARKS = /\p{Mark}/gu;

export function stripDiacritics(text: string): string {
  return text.normalize("NFD").replace(COMBINING_MARKS, "").normalize("NFC");
}

export function normalize(text: string): string {
  return text.normalize("NFC");
}
