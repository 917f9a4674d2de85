"""XML volume store with lookup indexes and optimistic revision checks.

Default backend: one directory per volume holding the volume XML plus a
JSON sidecar (revisions and descriptor); indexes are rebuilt on load and
therefore need no persistence format of their own.  Writes to one volume
are serialized by a per-volume lock, readers never see a partial edit.
"""

from __future__ import annotations

import json
import threading
import xml.etree.ElementTree as ET
from dataclasses import dataclass, field
from pathlib import Path

from .errors import ConflictError, ImportError_, NotFoundError, InvalidInputError
from .model import MAX_LEVEL, Contributor
from .xmlutil import NSMAP, local, q, tostring

LICENSE_COMMENT = (
    " This lexical volume is distributed under the Creative Commons "
    "Attribution (CC BY) license. "
)

DEFAULT_INDEXES = [
    ("cdm-headword", "m:head/m:headword"),
    ("cdm-headword-khmer", "m:head/m:headword_khmer"),
    ("cdm-pronunciation", "m:head/m:pronunciation"),
    ("cdm-pos", "m:head/m:pos"),
    ("cdm-domain", "m:sense/m:domain"),
    ("cdm-example", "m:sense/m:example"),
    ("cdm-idiom", "m:sense/m:idiom"),
    ("cdm-translation", "m:sense/m:translations/m:translation"),
    ("cdm-gloss", "m:sense/m:gloss"),
]


@dataclass
class VolumeDescriptor:
    name: str
    language: str
    indexed_fields: list[tuple[str, str]] = field(default_factory=lambda: list(DEFAULT_INDEXES))

    def __post_init__(self):
        names = [c for c, _ in self.indexed_fields]
        if len(names) != len(set(names)):
            raise InvalidInputError("criteria names must be unique per volume")


def _values(entry: ET.Element, path: str) -> list[str]:
    return [el.text or "" for el in entry.findall(path, NSMAP)]


class VolumeHandle:
    """One imported volume: entries by id, criteria indexes, revisions."""

    def __init__(self, descriptor: VolumeDescriptor, directory: Path | None = None):
        self.descriptor = descriptor
        self.directory = Path(directory) if directory is not None else None
        self.entries: dict[str, ET.Element] = {}
        self.order: list[str] = []
        self.revisions: dict[str, int] = {}
        self.indexes: dict[str, dict[str, list[str]]] = {}
        self.lock = threading.Lock()

    # -- internal -------------------------------------------------------

    def _sort_key(self, entry_id: str) -> str:
        entry = self.entries[entry_id]
        khm = _values(entry, "m:head/m:headword_khmer")
        if khm and khm[0]:
            return khm[0]
        hw = _values(entry, "m:head/m:headword")
        return hw[0] if hw else entry_id

    def _rebuild_indexes(self) -> None:
        self.indexes = {name: {} for name, _ in self.descriptor.indexed_fields}
        for entry_id in self.order:
            self._index_entry(entry_id)

    def _index_entry(self, entry_id: str) -> None:
        entry = self.entries[entry_id]
        for name, path in self.descriptor.indexed_fields:
            for value in _values(entry, path):
                if value:
                    bucket = self.indexes[name].setdefault(value, [])
                    if entry_id not in bucket:
                        bucket.append(entry_id)

    def _unindex_entry(self, entry_id: str) -> None:
        for index in self.indexes.values():
            for value in list(index):
                if entry_id in index[value]:
                    index[value].remove(entry_id)
                    if not index[value]:
                        del index[value]

    # -- persistence ----------------------------------------------------

    def persist(self) -> None:
        if self.directory is None:
            return
        self.directory.mkdir(parents=True, exist_ok=True)
        xml_tmp = self.directory / "volume.xml.tmp"
        xml_tmp.write_text(export_volume(self), encoding="utf-8")
        xml_tmp.replace(self.directory / "volume.xml")
        meta = {
            "descriptor": {
                "name": self.descriptor.name,
                "language": self.descriptor.language,
                "indexed_fields": self.descriptor.indexed_fields,
            },
            "revisions": self.revisions,
        }
        meta_tmp = self.directory / "meta.json.tmp"
        meta_tmp.write_text(json.dumps(meta, ensure_ascii=False, indent=1),
                            encoding="utf-8")
        meta_tmp.replace(self.directory / "meta.json")


def import_volume(xml_text: str, descriptor: VolumeDescriptor,
                  directory: Path | None = None) -> VolumeHandle:
    """Parse and index a volume; all-or-nothing (a rejected import leaves
    no handle and no files behind)."""
    try:
        root = ET.fromstring(xml_text)
    except ET.ParseError as exc:
        raise ImportError_(f"malformed XML at {exc.position}: {exc}") from exc
    handle = VolumeHandle(descriptor, directory)
    for position, child in enumerate(root, start=1):
        if local(child.tag) not in ("entry", "axie"):
            continue
        entry_id = child.get("id")
        if not entry_id:
            raise ImportError_(
                f"entry at position {position} has no id "
                f"(volume {descriptor.name})")
        if entry_id in handle.entries:
            raise ImportError_(f"duplicate id {entry_id} in volume {descriptor.name}")
        handle.entries[entry_id] = child
        handle.order.append(entry_id)
        handle.revisions[entry_id] = 1
    handle._rebuild_indexes()
    handle.persist()
    return handle


def load_volume(directory: Path | str) -> VolumeHandle:
    directory = Path(directory)
    meta = json.loads((directory / "meta.json").read_text(encoding="utf-8"))
    descriptor = VolumeDescriptor(
        name=meta["descriptor"]["name"],
        language=meta["descriptor"]["language"],
        indexed_fields=[tuple(pair) for pair in meta["descriptor"]["indexed_fields"]],
    )
    handle = import_volume((directory / "volume.xml").read_text(encoding="utf-8"),
                           descriptor)
    handle.directory = directory
    handle.revisions.update({k: int(v) for k, v in meta["revisions"].items()})
    return handle


def query(handle: VolumeHandle, criteria: str, value: str,
          strategy: str = "exact", count: int | None = None,
          start_index: int = 0) -> list[str]:
    """Entry ids matching one criteria, sorted by headword code points,
    windowed by (start_index, count).

    With the prefix strategy, "*" matches every value (an empty prefix is
    not expressible as a URL path segment, so clients send "*" instead).
    """
    if strategy not in ("exact", "prefix"):
        raise InvalidInputError(f"unknown strategy {strategy!r}")
    if strategy == "prefix" and value == "*":
        value = ""
    if criteria == "handle":
        matches = [value] if value in handle.entries else []
    else:
        index = handle.indexes.get(criteria)
        if index is None:
            raise InvalidInputError(f"unknown criteria {criteria!r}")
        if strategy == "exact":
            matches = list(index.get(value, []))
        else:
            matches = [eid for key, ids in index.items()
                       if key.startswith(value) for eid in ids]
    seen = set()
    unique = [m for m in matches if not (m in seen or seen.add(m))]
    unique.sort(key=lambda eid: (handle._sort_key(eid), eid))
    if count is None:
        return unique[start_index:]
    return unique[start_index:start_index + count]


def get_entry_xml(handle: VolumeHandle, entry_id: str) -> str:
    entry = handle.entries.get(entry_id)
    if entry is None:
        raise NotFoundError(f"no entry {entry_id} in volume {handle.descriptor.name}")
    return tostring(entry)


def update_entry(handle: VolumeHandle, entry_id: str, new_xml: str,
                 contributor: Contributor, expected_revision: int) -> int:
    """Replace one entry under an optimistic revision check.

    The stored quality level is lifted to the contributor's skill (never
    lowered), indexes are refreshed, and the new revision is returned."""
    try:
        new_entry = ET.fromstring(new_xml)
    except ET.ParseError as exc:
        raise InvalidInputError(f"malformed entry XML: {exc}") from exc
    if new_entry.get("id") not in (None, "", entry_id):
        raise InvalidInputError(
            f"entry id mismatch: body says {new_entry.get('id')!r}")
    with handle.lock:
        if entry_id not in handle.entries:
            raise NotFoundError(f"no entry {entry_id} in volume "
                                f"{handle.descriptor.name}")
        current = handle.revisions[entry_id]
        if current != expected_revision:
            raise ConflictError(entry_id, expected_revision, current)
        old_level = handle.entries[entry_id].get("level") or ""
        previous = int(old_level) if old_level else 1
        new_entry.set("id", entry_id)
        new_entry.set("level", str(max(previous, min(contributor.skill, MAX_LEVEL))))
        handle._unindex_entry(entry_id)
        handle.entries[entry_id] = new_entry
        handle.revisions[entry_id] = current + 1
        handle._index_entry(entry_id)
        handle.persist()
        return current + 1


def add_entry(handle: VolumeHandle, entry_xml: ET.Element) -> None:
    """Insert a brand-new entry (used by link creation)."""
    entry_id = entry_xml.get("id")
    if not entry_id:
        raise InvalidInputError("entry without id")
    with handle.lock:
        if entry_id in handle.entries:
            raise InvalidInputError(f"entry {entry_id} already exists")
        handle.entries[entry_id] = entry_xml
        handle.order.append(entry_id)
        handle.revisions[entry_id] = 1
        handle._index_entry(entry_id)
        handle.persist()


def export_volume(handle: VolumeHandle) -> str:
    """Deterministic volume XML with a license header; import-export
    round-trips byte-identically after the first normalization pass."""
    root = ET.Element(q("volume"), {
        "name": handle.descriptor.name,
        "lang": handle.descriptor.language,
    })
    for entry_id in handle.order:
        root.append(handle.entries[entry_id])
    body = tostring(root)
    return f'<?xml version="1.0" encoding="UTF-8"?>\n<!--{LICENSE_COMMENT}-->\n{body}\n'


class Store:
    """All volumes of all dictionaries under one data directory; keyed by
    (dictionary name, language)."""

    def __init__(self, root: Path | None = None):
        self.root = Path(root) if root else None
        self.volumes: dict[tuple[str, str], VolumeHandle] = {}
        if self.root is not None and self.root.exists():
            for meta in sorted(self.root.glob("*/*/meta.json")):
                directory = meta.parent
                handle = load_volume(directory)
                self.volumes[(directory.parent.name, handle.descriptor.language)] = handle

    def volume_dir(self, dictionary: str, lang: str) -> Path | None:
        if self.root is None:
            return None
        return self.root / dictionary / lang

    def add_volume(self, dictionary: str, xml_text: str,
                   descriptor: VolumeDescriptor) -> VolumeHandle:
        handle = import_volume(xml_text, descriptor,
                               self.volume_dir(dictionary, descriptor.language))
        self.volumes[(dictionary, descriptor.language)] = handle
        return handle

    def select(self, dictionary: str, lang: str) -> list[tuple[str, str, VolumeHandle]]:
        """Volumes matching the (possibly wildcard '*') dictionary and
        language selectors, in stable name order."""
        out = []
        for (d, l), handle in sorted(self.volumes.items()):
            if dictionary not in ("*", d):
                continue
            if lang not in ("*", l):
                continue
            out.append((d, l, handle))
        return out
