"""Convert tagged articles into the namespaced entry structure.

The target layout follows the LMF core meta-model: entry corresponds to
LexicalEntry, head to Form, headword to Lemma, sense to Sense, gloss to
Definition and the axie reference to Equivalent.  Headword blocks can be
enriched from a supplement lexicon (pronunciation, part-of-speech).
"""

from __future__ import annotations

import re
import xml.etree.ElementTree as ET
from dataclasses import dataclass, field

from .errors import InvalidArticleError
from .ids import make_entry_id
from .ingest import split_feminine
from .model import Lexie, Vocable, Volume
from .xmlutil import local


@dataclass
class SupplementEntry:
    pronunciation: str
    pos: str
    homonym_count: int = 1
    fem_pron: str | None = None


@dataclass
class SupplementLexicon:
    entries: dict[str, SupplementEntry] = field(default_factory=dict)

    @classmethod
    def load(cls, path) -> "SupplementLexicon":
        """TSV columns: headword, pronunciation, pos, homonym_count and an
        optional explicit feminine pronunciation."""
        supp = cls()
        with open(path, encoding="utf-8") as fh:
            for line in fh:
                line = line.rstrip("\n")
                if not line.strip() or line.startswith("#"):
                    continue
                cols = line.split("\t")
                headword, pron, pos, count = cols[0], cols[1], cols[2], int(cols[3])
                if count < 1:
                    raise InvalidArticleError(
                        f"homonym count must be >= 1 for {headword!r}")
                fem_pron = cols[4] if len(cols) > 4 and cols[4] else None
                supp.entries[headword] = SupplementEntry(pron, pos, count, fem_pron)
        return supp


def _recover_feminine(headword: str, first_gloss: str) -> str | None:
    """The first gloss duplicates the original entry form, so a feminine
    suffix like "abondant, e (...)" can be read back from it."""
    m = re.match(re.escape(headword) + r", ([^()]+?)(?: \(|$)", first_gloss)
    if not m:
        return None
    _, feminine = split_feminine(f"{headword}, {m.group(1).strip()}")
    return feminine


def to_motamot_entry(article: ET.Element, ordinal: int) -> Vocable:
    """Build a Vocable from one tagged <article>; senses are numbered
    s1..sn in order and translations carried through verbatim."""
    if local(article.tag) != "article":
        raise InvalidArticleError(f"expected <article>, got <{article.tag}>")
    vedette = article.find("vedette")
    if vedette is None or not (vedette.text or "").strip():
        raise InvalidArticleError("article has no <vedette>")
    headword = vedette.text.strip()
    sens_elements = article.findall("sens")
    if not sens_elements:
        raise InvalidArticleError(f"article {headword!r} has no <sens>")

    senses = []
    for i, sens in enumerate(sens_elements, start=1):
        glose = sens.find("glose")
        if glose is None:
            raise InvalidArticleError(f"sense {i} of {headword!r} has no <glose>")
        translations = [api.text or "" for api in sens.findall("traduction/api")]
        senses.append(Lexie(
            sense_id=f"s{i}",
            gloss=glose.text or "",
            translations=translations,
        ))

    return Vocable(
        id=make_entry_id("fra", headword, ordinal),
        headword=headword,
        pos=None,
        senses=senses,
    )


def recover_feminines(volume: Volume) -> Volume:
    """Separate feminine forms into the head block, reading them back from
    the first gloss (which duplicates the original entry form)."""
    for entry in volume.entries:
        if entry.senses and entry.fem_form is None:
            entry.fem_form = _recover_feminine(entry.headword,
                                               entry.senses[0].gloss or "")
    return volume


def restructure_volume(tagged_root: ET.Element, name: str = "fra",
                       lang: str = "fra") -> Volume:
    """Ordinals are assigned by input order, starting at 1."""
    vol = Volume(name=name, lang=lang)
    for ordinal, article in enumerate(tagged_root.findall("article"), start=1):
        vol.entries.append(to_motamot_entry(article, ordinal))
    return vol


# element -> meta-model object; anything else is reported as a violation
_LMF_MAPPING = {
    "entry": "LexicalEntry",
    "head": "Form",
    "headword": "Lemma",
    "headword_khmer": "Lemma",
    "pronunciation": "Form",
    "pos": "Form",
    "fem_form": "Form",
    "fem_pron": "Form",
    "sense": "Sense",
    "gloss": "Definition",
    "formula": "Definition",
    "domain": "Sense",
    "translations": "Sense",
    "translation": "Sense",
    "refaxie": "Equivalent",
    "reflexie": "Equivalent",
    "example": "Sense",
    "idiom": "Sense",
    "misc": "Sense",
    "vocablelink": "Sense",
}


def validate_lmf_shape(entry: ET.Element | Vocable) -> list[str]:
    """Report-only structural check of one entry against the element
    mapping; an empty list means the entry fits the meta-model."""
    from .model import vocable_to_xml

    if isinstance(entry, Vocable):
        entry = vocable_to_xml(entry)
    report: list[str] = []
    if local(entry.tag) != "entry":
        report.append(f"unexpected root element: {local(entry.tag)}")
        return report
    if entry.find(f"{{*}}head") is None and not any(
            local(c.tag) == "head" for c in entry):
        report.append("Form missing: entry has no head block")
    else:
        head = next(c for c in entry if local(c.tag) == "head")
        if not any(local(c.tag) == "headword" for c in head):
            report.append("Lemma missing: head has no headword")

    def walk(el: ET.Element) -> None:
        for child in el:
            tag = local(child.tag)
            if tag not in _LMF_MAPPING:
                report.append(f"unexpected element: {tag}")
            walk(child)

    walk(entry)
    return report


def enrich_from_supplement(volume: Volume, supp: SupplementLexicon
                           ) -> tuple[Volume, dict]:
    """Copy pronunciation (always) and part-of-speech (non-homonymous
    headwords only) from the supplement into matching headword blocks.
    Senses, ids and translations are never touched."""
    stats = {"enriched": 0, "missing": 0, "homonym_pos_skipped": []}
    for entry in volume.entries:
        se = supp.entries.get(entry.headword)
        if se is None:
            stats["missing"] += 1
            continue
        entry.pronunciation = se.pronunciation
        if se.homonym_count == 1:
            entry.pos = se.pos
        else:
            stats["homonym_pos_skipped"].append(entry.headword)
        if entry.fem_form is not None and se.fem_pron:
            entry.fem_pron = se.fem_pron
        stats["enriched"] += 1
    return volume, stats
