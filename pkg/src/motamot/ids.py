"""Identifier grammars for entries and pivot (axie) records.

Entry ids look like ``fra.abondant.27.e``; axie ids like
``axi.[fra:abondant,khm:sambō].27.1.e``.  Headwords are percent-escaped so
the delimiters ``. , [ ] :`` (and ``%`` itself) can never be confused with
grammar punctuation, which keeps parse(render(x)) == x for any headword.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import InvalidInputError

_ESCAPED = "%.,[]:"


def escape_headword(text: str) -> str:
    return "".join(f"%{ord(c):02X}" if c in _ESCAPED else c for c in text)


def unescape_headword(text: str) -> str:
    return re.sub(r"%([0-9A-Fa-f]{2})", lambda m: chr(int(m.group(1), 16)), text)


_ENTRY_RE = re.compile(r"^([a-z]{3})\.([^.]+)\.([0-9]+)\.e$")
_AXIE_RE = re.compile(
    r"^axi\.\[([a-z]{3}):([^,\[\]:]+),([a-z]{3}):([^,\[\]:]+)\]\.([0-9]+)\.([0-9]+)\.e$"
)


@dataclass(frozen=True)
class EntryId:
    lang: str
    headword: str
    ordinal: int

    def render(self) -> str:
        return f"{self.lang}.{escape_headword(self.headword)}.{self.ordinal}.e"

    @classmethod
    def parse(cls, text: str) -> "EntryId":
        m = _ENTRY_RE.match(text)
        if not m:
            raise InvalidInputError(f"not an entry id: {text!r}")
        return cls(m.group(1), unescape_headword(m.group(2)), int(m.group(3)))


@dataclass(frozen=True)
class AxieId:
    src_lang: str
    src_headword: str
    dst_lang: str
    dst_headword: str
    ordinal: int
    sense_index: int

    def render(self) -> str:
        return (
            f"axi.[{self.src_lang}:{escape_headword(self.src_headword)},"
            f"{self.dst_lang}:{escape_headword(self.dst_headword)}]"
            f".{self.ordinal}.{self.sense_index}.e"
        )

    @classmethod
    def parse(cls, text: str) -> "AxieId":
        m = _AXIE_RE.match(text)
        if not m:
            raise InvalidInputError(f"not an axie id: {text!r}")
        return cls(
            m.group(1),
            unescape_headword(m.group(2)),
            m.group(3),
            unescape_headword(m.group(4)),
            int(m.group(5)),
            int(m.group(6)),
        )


def make_entry_id(lang: str, headword: str, ordinal: int) -> str:
    """Build an entry id string such as ``fra.abondant.27.e``."""
    if not headword:
        raise InvalidInputError("empty headword")
    if not re.fullmatch(r"[a-z]{3}", lang):
        raise InvalidInputError(f"language must be a 3-letter code, got {lang!r}")
    if ordinal < 1:
        raise InvalidInputError(f"ordinal must be >= 1, got {ordinal}")
    return EntryId(lang, headword, ordinal).render()


def make_axie_id(
    fr_headword: str,
    khm_translit: str,
    ordinal: int,
    sense_index: int,
    src_lang: str = "fra",
    dst_lang: str = "khm",
) -> str:
    """Build an axie id string such as ``axi.[fra:abondant,khm:sambō].27.1.e``.

    The default language pair is French/Khmer; transitive link inference
    reuses the same grammar with other language codes.
    """
    if not fr_headword or not khm_translit:
        raise InvalidInputError("empty headword component in axie id")
    if ordinal < 1 or sense_index < 1:
        raise InvalidInputError("ordinal and sense index must be >= 1")
    return AxieId(src_lang, fr_headword, dst_lang, khm_translit, ordinal, sense_index).render()


def parse_entry_id(text: str) -> EntryId:
    return EntryId.parse(text)


def parse_axie_id(text: str) -> AxieId:
    return AxieId.parse(text)


def is_axie_id(text: str) -> bool:
    return _AXIE_RE.match(text) is not None
