/**
 * Historical ASCII display mode: the six special Turkish letters become the
 * nearest ASCII letter in upper case.  Display-only; query values and API
 * payloads are never folded.
 */

const FOLD: Record<string, string> = {
  ç: "C",
  ğ: "G",
  ı: "I",
  ö: "O",
  ş: "S",
  ü: "U",
  Ç: "C",
  Ğ: "G",
  İ: "I",
  Ö: "O",
  Ş: "S",
  Ü: "U",
};

export function asciiFold(text: string): string {
  let out = "";
  for (const ch of text) {
    out += FOLD[ch] ?? ch;
  }
  return out;
}

export function displayText(text: string, asciiMode: boolean): string {
  return asciiMode ? asciiFold(text) : text;
}
