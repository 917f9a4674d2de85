"""Domain model for the three-volume pivot lexical database.

A dictionary is split into one monolingual volume per language plus a
central pivot volume of "axies".  Every cross-language translation is
reified as an axie holding one reference per linked entry, so bilingual
links never live inside monolingual entries.
"""

from __future__ import annotations

import xml.etree.ElementTree as ET
from dataclasses import dataclass, field, replace

from .errors import InvalidInputError, NotFoundError
from .ids import AxieId, EntryId, make_axie_id
from .xmlutil import local, q, sub

PROMOTION_THRESHOLD = 10
MAX_LEVEL = 5


def check_level(level: int) -> int:
    if not 1 <= level <= MAX_LEVEL:
        raise InvalidInputError(f"quality level must be 1..{MAX_LEVEL}, got {level}")
    return level


@dataclass
class Contributor:
    name: str
    skill: int = 1
    validated_streak: int = 0

    def __post_init__(self):
        check_level(self.skill)


@dataclass
class VocableLevelLink:
    """Vocable-to-vocable note: 'one sense of this entry translates some
    sense of that entry', pending refinement into a real link."""

    target_volume: str
    target_entry: str
    refine: str = "urgent"


@dataclass
class Lexie:
    sense_id: str
    gloss: str | None = None
    semantic_formula: str | None = None
    domain: str | None = None
    axie_refs: list[str] = field(default_factory=list)
    examples: list[str] = field(default_factory=list)
    idioms: list[str] = field(default_factory=list)
    misc: str | None = None
    level: int | None = None
    translations: list[str] = field(default_factory=list)  # pre-reification only
    refine: bool = False


@dataclass
class Vocable:
    id: str
    headword: str
    pronunciation: str | None = None
    pos: str | None = None
    fem_form: str | None = None
    fem_pron: str | None = None
    khmer_headword: str | None = None
    senses: list[Lexie] = field(default_factory=list)
    pending_notes: list[VocableLevelLink] = field(default_factory=list)
    level: int | None = None
    revision: int = 0

    def sense(self, sense_id: str) -> Lexie:
        for s in self.senses:
            if s.sense_id == sense_id:
                return s
        raise NotFoundError(f"no sense {sense_id!r} in {self.id}")

    def next_sense_id(self) -> str:
        return f"s{len(self.senses) + 1}"

    @property
    def sort_key(self) -> str:
        return self.khmer_headword or self.headword


@dataclass(frozen=True)
class AxieRef:
    volume: str
    entry: str
    sense: str | None = None


@dataclass
class Axie:
    id: str
    refs: list[AxieRef] = field(default_factory=list)
    level: int | None = None
    refine: bool = False


@dataclass
class LinkRequest:
    source: tuple[str, str | None]  # (entry id, sense id or None)
    target: tuple[str, str | None]
    creator: Contributor


@dataclass
class Volume:
    name: str
    lang: str
    entries: list[Vocable] = field(default_factory=list)

    def find(self, entry_id: str) -> Vocable:
        for e in self.entries:
            if e.id == entry_id:
                return e
        raise NotFoundError(f"no entry {entry_id!r} in volume {self.name}")

    def has(self, entry_id: str) -> bool:
        return any(e.id == entry_id for e in self.entries)


@dataclass
class AxieVolume:
    name: str
    axies: list[Axie] = field(default_factory=list)


@dataclass
class VolumeSet:
    """The monolingual volumes plus the pivot volume of one dictionary."""

    volumes: dict[str, Volume] = field(default_factory=dict)
    axies: AxieVolume = field(default_factory=lambda: AxieVolume("axi"))

    def add(self, volume: Volume) -> None:
        self.volumes[volume.name] = volume

    def find_entry(self, entry_id: str) -> tuple[Volume, Vocable]:
        for vol in self.volumes.values():
            if vol.has(entry_id):
                return vol, vol.find(entry_id)
        raise NotFoundError(f"entry {entry_id!r} not found in any volume")


# ---------------------------------------------------------------- XML I/O

def _level_attr(level: int | None) -> str:
    return "" if level is None else str(level)


def _parse_level(text: str | None) -> int | None:
    return int(text) if text else None


def lexie_to_xml(s: Lexie) -> ET.Element:
    el = ET.Element(q("sense"), {"id": s.sense_id, "level": _level_attr(s.level)})
    if s.refine:
        el.set("refine", "true")
    if s.gloss is not None:
        sub(el, "gloss", s.gloss)
    if s.semantic_formula is not None:
        sub(el, "formula", s.semantic_formula)
    if s.domain is not None:
        sub(el, "domain", s.domain)
    if s.translations:
        trs = sub(el, "translations")
        for t in s.translations:
            sub(trs, "translation", t)
    for ref in s.axie_refs:
        sub(el, "refaxie", idrefaxie=ref)
    for ex in s.examples:
        sub(el, "example", ex)
    for idm in s.idioms:
        sub(el, "idiom", idm)
    if s.misc is not None:
        sub(el, "misc", s.misc)
    return el


def lexie_from_xml(el: ET.Element) -> Lexie:
    s = Lexie(
        sense_id=el.get("id", ""),
        level=_parse_level(el.get("level")),
        refine=el.get("refine") == "true",
    )
    for child in el:
        tag = local(child.tag)
        text = child.text or ""
        if tag == "gloss":
            s.gloss = text
        elif tag == "formula":
            s.semantic_formula = text
        elif tag == "domain":
            s.domain = text
        elif tag == "translations":
            s.translations = [t.text or "" for t in child]
        elif tag in ("refaxie", "reflexie"):  # both spellings occur in the wild
            s.axie_refs.append(child.get("idrefaxie") or child.get("idref") or "")
        elif tag == "example":
            s.examples.append(text)
        elif tag == "idiom":
            s.idioms.append(text)
        elif tag == "misc":
            s.misc = text
    return s


def vocable_to_xml(v: Vocable) -> ET.Element:
    el = ET.Element(q("entry"), {"id": v.id, "level": _level_attr(v.level)})
    head = sub(el, "head")
    sub(head, "headword", v.headword)
    if v.khmer_headword is not None:
        sub(head, "headword_khmer", v.khmer_headword)
    if v.pronunciation is not None:
        sub(head, "pronunciation", v.pronunciation)
    sub(head, "pos", v.pos or "")
    if v.fem_form is not None:
        sub(head, "fem_form", v.fem_form)
    if v.fem_pron is not None:
        sub(head, "fem_pron", v.fem_pron)
    for s in v.senses:
        el.append(lexie_to_xml(s))
    for note in v.pending_notes:
        sub(el, "vocablelink", volume=note.target_volume,
            entry=note.target_entry, refine=note.refine)
    return el


def vocable_from_xml(el: ET.Element) -> Vocable:
    v = Vocable(
        id=el.get("id", ""),
        headword="",
        level=_parse_level(el.get("level")),
    )
    for child in el:
        tag = local(child.tag)
        if tag == "head":
            for h in child:
                htag, htext = local(h.tag), h.text or ""
                if htag == "headword":
                    v.headword = htext
                elif htag == "headword_khmer":
                    v.khmer_headword = htext
                elif htag == "pronunciation":
                    v.pronunciation = htext
                elif htag == "pos":
                    v.pos = htext or None
                elif htag == "fem_form":
                    v.fem_form = htext
                elif htag == "fem_pron":
                    v.fem_pron = htext
        elif tag == "sense":
            v.senses.append(lexie_from_xml(child))
        elif tag == "vocablelink":
            v.pending_notes.append(VocableLevelLink(
                target_volume=child.get("volume", ""),
                target_entry=child.get("entry", ""),
                refine=child.get("refine", "urgent"),
            ))
    return v


def axie_to_xml(a: Axie) -> ET.Element:
    el = ET.Element(q("axie"), {"id": a.id, "level": _level_attr(a.level)})
    if a.refine:
        el.set("refine", "true")
    for ref in a.refs:
        attrs = {"volume": ref.volume, "idref": ref.entry}
        if ref.sense is not None:
            attrs["sense"] = ref.sense
        sub(el, "reflexie", **attrs)
    return el


def axie_from_xml(el: ET.Element) -> Axie:
    a = Axie(
        id=el.get("id", ""),
        level=_parse_level(el.get("level")),
        refine=el.get("refine") == "true",
    )
    for child in el:
        if local(child.tag) in ("reflexie", "refaxie"):
            a.refs.append(AxieRef(
                volume=child.get("volume", ""),
                entry=child.get("idref", ""),
                sense=child.get("sense"),
            ))
    return a


def volume_to_xml(vol: Volume) -> ET.Element:
    root = ET.Element(q("volume"), {"name": vol.name, "lang": vol.lang})
    for e in vol.entries:
        root.append(vocable_to_xml(e))
    return root


def volume_from_xml(root: ET.Element) -> Volume:
    vol = Volume(name=root.get("name", ""), lang=root.get("lang", ""))
    for child in root:
        if local(child.tag) == "entry":
            vol.entries.append(vocable_from_xml(child))
    return vol


def axie_volume_to_xml(vol: AxieVolume) -> ET.Element:
    root = ET.Element(q("volume"), {"name": vol.name, "lang": "axi"})
    for a in vol.axies:
        root.append(axie_to_xml(a))
    return root


def axie_volume_from_xml(root: ET.Element) -> AxieVolume:
    vol = AxieVolume(name=root.get("name", "axi"))
    for child in root:
        if local(child.tag) == "axie":
            vol.axies.append(axie_from_xml(child))
    return vol


# ------------------------------------------------------------- operations

def _next_sense_index(axies: list[Axie], src_lang: str, src_headword: str,
                      ordinal: int) -> int:
    """Smallest unused sense index for axie ids built from the same
    (language, headword, ordinal) triple."""
    used = set()
    for a in axies:
        try:
            aid = AxieId.parse(a.id)
        except InvalidInputError:
            continue
        if (aid.src_lang == src_lang and aid.src_headword == src_headword
                and aid.ordinal == ordinal):
            used.add(aid.sense_index)
    k = 1
    while k in used:
        k += 1
    return k


def add_translation_link(req: LinkRequest, volumes: VolumeSet
                         ) -> tuple[Axie | None, list[Vocable]]:
    """Create a translation link between two entries of different volumes.

    Three shapes, depending on which side names a sense:
      * sense to sense: one axie referencing both senses, recorded on both;
      * sense to bare vocable: a draft sense is created on the target first,
        then linked as above, everything flagged for refinement;
      * vocable to vocable: only a pending note on the source vocable,
        flagged for urgent refinement.  No axie is created.
    """
    src_id, src_sense = req.source
    tgt_id, tgt_sense = req.target
    vol_a, entry_a = volumes.find_entry(src_id)
    vol_b, entry_b = volumes.find_entry(tgt_id)
    if vol_a.name == vol_b.name:
        raise InvalidInputError(
            f"cannot link {src_id} to {tgt_id}: both live in volume {vol_a.name}")

    if src_sense is None:
        # vocable-to-vocable: note on the source only, the target is untouched
        entry_a.pending_notes.append(
            VocableLevelLink(target_volume=vol_b.name, target_entry=tgt_id))
        return None, [entry_a]

    lexie_a = entry_a.sense(src_sense)
    refine = False
    if tgt_sense is None:
        new_sense = Lexie(sense_id=entry_b.next_sense_id(), level=1, refine=True)
        entry_b.senses.append(new_sense)
        tgt_sense = new_sense.sense_id
        refine = True
    lexie_b = entry_b.sense(tgt_sense)

    ordinal = EntryId.parse(src_id).ordinal
    k = _next_sense_index(volumes.axies.axies, vol_a.lang, entry_a.headword, ordinal)
    axie = Axie(
        id=make_axie_id(entry_a.headword, entry_b.headword, ordinal, k,
                        src_lang=vol_a.lang, dst_lang=vol_b.lang),
        refs=[AxieRef(vol_a.name, src_id, src_sense),
              AxieRef(vol_b.name, tgt_id, tgt_sense)],
        level=min(req.creator.skill, MAX_LEVEL),
        refine=refine,
    )
    lexie_a.axie_refs.append(axie.id)
    lexie_b.axie_refs.append(axie.id)
    volumes.axies.axies.append(axie)
    return axie, [entry_a, entry_b]


def infer_transitive_links(volumes: VolumeSet) -> list[Axie]:
    """One step of pivot link composition.

    Whenever two axies share a reference (same volume, entry, sense), their
    remaining references are joined into a new draft axie, unless an axie
    with exactly that pair of references already exists.  Axies that are
    themselves unrevised drafts are not composed further, so running this
    again on the result adds nothing.
    """
    axies = volumes.axies.axies
    existing = {frozenset(a.refs) for a in axies}
    created: list[Axie] = []
    sources = [a for a in axies if not a.refine]
    for i, x in enumerate(sources):
        for y in sources[i + 1:]:
            shared = set(x.refs) & set(y.refs)
            for r in shared:
                for ra in x.refs:
                    if ra == r:
                        continue
                    for rc in y.refs:
                        if rc == r or rc.volume == ra.volume:
                            continue
                        pair = frozenset((ra, rc))
                        if pair in existing:
                            continue
                        eid = EntryId.parse(ra.entry)
                        other = EntryId.parse(rc.entry)
                        lang_a = volumes.volumes[ra.volume].lang if ra.volume in volumes.volumes else eid.lang
                        lang_c = volumes.volumes[rc.volume].lang if rc.volume in volumes.volumes else other.lang
                        k = _next_sense_index(axies + created, lang_a,
                                              eid.headword, eid.ordinal)
                        axie = Axie(
                            id=make_axie_id(eid.headword, other.headword,
                                            eid.ordinal, k,
                                            src_lang=lang_a, dst_lang=lang_c),
                            refs=[ra, rc],
                            level=1,
                            refine=True,
                        )
                        created.append(axie)
                        existing.add(pair)
    axies.extend(created)
    return created


def revise_entry(entry: Vocable, contributor: Contributor) -> Vocable:
    """Revision by a contributor lifts the entry to the contributor's skill
    level; it never lowers an already higher level."""
    current = entry.level if entry.level is not None else 1
    entry.level = max(current, min(contributor.skill, MAX_LEVEL))
    entry.revision += 1
    return entry


def update_contributor_streak(contributor: Contributor, outcome: str,
                              threshold: int = PROMOTION_THRESHOLD) -> Contributor:
    """Track validations of a contributor's work.

    A run of `threshold` validations promotes the contributor one skill
    level (never past 5, the streak just keeps counting there); any
    correction by a reviewer resets the run.
    """
    if outcome == "corrected":
        return replace(contributor, validated_streak=0)
    if outcome != "validated":
        raise InvalidInputError(f"unknown outcome {outcome!r}")
    streak = contributor.validated_streak + 1
    if streak >= threshold and contributor.skill < MAX_LEVEL:
        return replace(contributor, skill=contributor.skill + 1, validated_streak=0)
    return replace(contributor, validated_streak=streak)
