"""Parse the two-column source dictionary into tagged intermediate XML.

Source format (".mam-src"): UTF-8, one entry per line, French column TAB
Khmer column.  Word senses are separated by " — " in both columns and
alternative translations of one sense by " / ".  Lines starting with "#"
are comments.
"""

from __future__ import annotations

import re
import xml.etree.ElementTree as ET
from dataclasses import dataclass, field

from .errors import AlignmentError, MalformedLineError

SENSE_SEP = " — "
ALT_SEP = " / "

_POS_HINT_RE = re.compile(r"\(([a-zéèàâêîôûëïün]{1,8}\.)\)")


@dataclass
class RawEntry:
    headword: str
    fem_suffix: str | None = None
    pos_hint: str | None = None
    senses: list[tuple[str, list[str]]] = field(default_factory=list)


def split_feminine(raw_headword: str) -> tuple[str, str | None]:
    """Split "abondant, e" into the masculine headword and the expanded
    feminine form.

    A one-letter suffix is appended ("abondant" + "e"); a longer suffix
    replaces the masculine from the last occurrence of the suffix's first
    letter ("beau, belle" -> "belle"); when that letter is absent the
    suffix is appended as-is.
    """
    if ", " not in raw_headword:
        return raw_headword, None
    masc, suffix = raw_headword.split(", ", 1)
    masc, suffix = masc.strip(), suffix.strip()
    if not suffix:
        return masc, None
    if len(suffix) == 1:
        return masc, masc + suffix
    cut = masc.rfind(suffix[0])
    if cut == -1:
        return masc, masc + suffix
    return masc, masc[:cut] + suffix


def _headword_part(first_segment: str) -> str:
    """Original headword block: the first French segment up to its first
    parenthesized annotation."""
    cut = first_segment.find(" (")
    part = first_segment if cut == -1 else first_segment[:cut]
    return part.strip()


def parse_source_line(line: str) -> RawEntry:
    """Parse one entry line into aligned (gloss, translations) senses."""
    if "\t" not in line:
        raise MalformedLineError(f"missing TAB separator: {line!r}")
    french_col, khmer_col = line.split("\t", 1)
    french_segments = french_col.split(SENSE_SEP)
    khmer_segments = khmer_col.split(SENSE_SEP)
    if len(french_segments) != len(khmer_segments):
        raise AlignmentError(len(french_segments), len(khmer_segments), line)

    first = french_segments[0]
    raw_head = _headword_part(first)
    headword, feminine = split_feminine(raw_head)
    fem_suffix = raw_head.split(", ", 1)[1].strip() if feminine else None
    pos_match = _POS_HINT_RE.search(first)
    senses = [
        (gloss.strip(), [t.strip() for t in khm.split(ALT_SEP)])
        for gloss, khm in zip(french_segments, khmer_segments)
    ]
    return RawEntry(
        headword=headword,
        fem_suffix=fem_suffix,
        pos_hint=pos_match.group(1) if pos_match else None,
        senses=senses,
    )


def tag_volume(lines) -> tuple[ET.Element, list[tuple[int, str]]]:
    """Tag a whole source file as a <volume> of <article> elements.

    Returns the volume plus an error report of (line number, message)
    pairs; bad lines are skipped, the run never aborts mid-corpus.
    """
    root = ET.Element("volume")
    errors: list[tuple[int, str]] = []
    for lineno, line in enumerate(lines, start=1):
        line = line.rstrip("\n")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        try:
            raw = parse_source_line(line)
        except (MalformedLineError, AlignmentError) as exc:
            errors.append((lineno, str(exc)))
            continue
        root.append(article_xml(raw))
    return root, errors


def article_xml(raw: RawEntry) -> ET.Element:
    article = ET.Element("article")
    ET.SubElement(article, "vedette").text = raw.headword
    for gloss, translations in raw.senses:
        sens = ET.SubElement(article, "sens")
        # the original entry form stays duplicated in the gloss
        ET.SubElement(sens, "glose").text = gloss
        for t in translations:
            trad = ET.SubElement(sens, "traduction")
            ET.SubElement(trad, "api").text = t
    return article


def read_source(path) -> tuple[ET.Element, list[tuple[int, str]]]:
    with open(path, encoding="utf-8") as fh:
        return tag_volume(fh)
