/**
 * Client-side checks for the id grammars used by the lexical volumes.
 *
 * Entry ids look like `fra.abondant.27.e`; pivot ("axie") ids look like
 * `axi.[fra:abondant,khm:sambō].27.1.e`. The server is the authority, the
 * UI only validates what it displays.
 */

export interface ParsedAxieId {
  srcLang: string;
  srcHeadword: string;
  dstLang: string;
  dstHeadword: string;
  ordinal: number;
  senseIndex: number;
}

const ENTRY_RE = /^([a-z]{3})\.([^.]+)\.([0-9]+)\.e$/;
const AXIE_RE =
  /^axi\.\[([a-z]{3}):([^,[\]:]+),([a-z]{3}):([^,[\]:]+)\]\.([0-9]+)\.([0-9]+)\.e$/;

// characters that appear percent-escaped inside headword segments
export function unescapeHeadword(segment: string): string {
  return segment.replace(/%([0-9A-Fa-f]{2})/g, (_, hex) =>
    String.fromCharCode(parseInt(hex, 16)),
  );
}

export function parseEntryId(
  id: string,
): { lang: string; headword: string; ordinal: number } | null {
  const m = ENTRY_RE.exec(id);
  if (!m) return null;
  const ordinal = parseInt(m[3], 10);
  if (ordinal < 1) return null;
  return { lang: m[1], headword: unescapeHeadword(m[2]), ordinal };
}

export function parseAxieId(id: string): ParsedAxieId | null {
  const m = AXIE_RE.exec(id);
  if (!m) return null;
  const ordinal = parseInt(m[5], 10);
  const senseIndex = parseInt(m[6], 10);
  if (ordinal < 1 || senseIndex < 1) return null;
  return {
    srcLang: m[1],
    srcHeadword: unescapeHeadword(m[2]),
    dstLang: m[3],
    dstHeadword: unescapeHeadword(m[4]),
    ordinal,
    senseIndex,
  };
}

export function isAxieId(id: string): boolean {
  return parseAxieId(id) !== null;
}
