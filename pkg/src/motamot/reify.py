"""Split the monodirectional French->Khmer volume into three volumes.

Every (sense, translation) pair becomes an axie; the French sense keeps a
reference to the axie, and one Khmer entry per distinct translation string
gathers the reverse references, one sense per incoming link.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .errors import NotFoundError
from .ids import EntryId, make_axie_id, make_entry_id
from .model import (Axie, AxieRef, AxieVolume, Lexie, Vocable, Volume)

# leading parenthesized particles such as "(dā'el)" are not part of the
# Khmer word: "(dā'el) sambō" merges under the key "sambō"
_LEADING_PARENS = re.compile(r"^(\([^)]*\)\s*)+")


def merge_key(translation: str) -> str:
    stripped = _LEADING_PARENS.sub("", translation.strip())
    return re.sub(r"\s+", " ", stripped).strip()


@dataclass
class ReifyResult:
    french: Volume
    axies: AxieVolume
    khmer: Volume
    report: list[str] = field(default_factory=list)


def reify_links(french_volume: Volume, khmer_name: str = "khm",
                axie_name: str = "axi") -> ReifyResult:
    """Each translation of each French sense yields one axie and one sense
    of the merged Khmer entry for that translation string."""
    axies = AxieVolume(axie_name)
    khmer = Volume(name=khmer_name, lang="khm")
    khmer_by_word: dict[str, Vocable] = {}
    report: list[str] = []

    for entry in french_volume.entries:
        ordinal = EntryId.parse(entry.id).ordinal
        k = 0  # numbers (sense, translation) pairs within the entry
        for sense in entry.senses:
            for translation in sense.translations:
                word = merge_key(translation)
                if not word:
                    report.append(
                        f"{entry.id}/{sense.sense_id}: empty translation skipped")
                    continue
                k += 1
                axie_id = make_axie_id(entry.headword, word, ordinal, k)

                khm_entry = khmer_by_word.get(word)
                if khm_entry is None:
                    khm_entry = Vocable(
                        id=make_entry_id("khm", word, len(khmer_by_word) + 1),
                        headword=word,
                    )
                    khmer_by_word[word] = khm_entry
                    khmer.entries.append(khm_entry)
                khm_sense = Lexie(sense_id=khm_entry.next_sense_id(),
                                  axie_refs=[axie_id])
                khm_entry.senses.append(khm_sense)

                axies.axies.append(Axie(
                    id=axie_id,
                    refs=[
                        AxieRef(french_volume.name, entry.id, sense.sense_id),
                        AxieRef(khmer_name, khm_entry.id, khm_sense.sense_id),
                    ],
                ))
                sense.axie_refs.append(axie_id)
            sense.translations = []
    return ReifyResult(french_volume, axies, khmer, report)


def sort_volume(volume: Volume) -> Volume:
    """Order entries by code-point sequence of the headword (the Khmer
    script form when present); stable for equal keys."""
    volume.entries.sort(key=lambda e: e.sort_key)
    return volume


def check_integrity(french: Volume, axies: AxieVolume, khmer: Volume) -> list[str]:
    """Cross-volume consistency report; empty means consistent."""
    report: list[str] = []
    axie_by_id = {a.id: a for a in axies.axies}
    entries = {french.name: {e.id: e for e in french.entries},
               khmer.name: {e.id: e for e in khmer.entries}}

    # (a) every sense-level axie reference resolves
    translation_refs = 0
    for vol in (french, khmer):
        for entry in vol.entries:
            for sense in entry.senses:
                for ref in sense.axie_refs:
                    if ref not in axie_by_id:
                        report.append(
                            f"dangling refaxie {ref} in {entry.id}/{sense.sense_id}")
    for entry in french.entries:
        for sense in entry.senses:
            translation_refs += len(sense.axie_refs)

    # (b) every axie resolves to exactly one French sense and one Khmer entry
    for a in axies.axies:
        fr_refs = [r for r in a.refs if r.volume == french.name]
        km_refs = [r for r in a.refs if r.volume == khmer.name]
        if len(fr_refs) != 1 or len(km_refs) != 1:
            report.append(
                f"axie {a.id} must reference one French sense and one Khmer "
                f"entry, has {len(fr_refs)} French and {len(km_refs)} Khmer")
            continue
        for ref in a.refs:
            volume_entries = entries.get(ref.volume)
            if volume_entries is None or ref.entry not in volume_entries:
                report.append(f"axie {a.id} references unknown entry {ref.entry}")
                continue
            if ref.sense is not None:
                try:
                    volume_entries[ref.entry].sense(ref.sense)
                except NotFoundError:
                    report.append(
                        f"axie {a.id} references unknown sense "
                        f"{ref.entry}/{ref.sense}")
        if fr_refs and fr_refs[0].sense is None:
            report.append(f"axie {a.id} French reference has no sense")

    # (c) link conservation between the French volume and the pivot
    if translation_refs != len(axies.axies):
        report.append(
            f"axie count {len(axies.axies)} != French sense reference "
            f"count {translation_refs}")

    # (d) Khmer entries are merged: one entry per distinct headword
    seen: dict[str, str] = {}
    for entry in khmer.entries:
        if entry.headword in seen:
            report.append(
                f"Khmer headword {entry.headword!r} split across "
                f"{seen[entry.headword]} and {entry.id}")
        seen[entry.headword] = entry.id
    return report
