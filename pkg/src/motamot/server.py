"""REST service over the volume store.

Routes:
  GET /api/{dict}/{lang}/{criteria}/{value}[/{key}]?strategy&count&startIndex
  PUT /api/{dict}/{lang}/entry/{id}         (authenticated, If-Match)
  GET /api/{dict}/export?lang=...
  GET /api/{dict}/{lang}/schema             (JSON field list for form editors)

"*" is accepted for the dictionary, language and key segments.  The HTTP
layer holds no state of its own: every response is the result of one store
or model call.
"""

from __future__ import annotations

import json
import xml.etree.ElementTree as ET
from dataclasses import dataclass, field
from pathlib import Path

from fastapi import FastAPI, Request, Response
from fastapi.middleware.cors import CORSMiddleware

from . import model, store as store_mod
from .errors import (ConflictError, InvalidInputError, MotamotError,
                     NotFoundError)
from .restructure import validate_lmf_shape
from .store import Store, VolumeHandle
from .xmlutil import NSMAP, local, q, tostring

DEFAULT_COUNT = 10


@dataclass
class ServerConfig:
    data_dir: str = "."
    listen: str = "127.0.0.1:8000"
    default_count: int = DEFAULT_COUNT
    # token -> contributor
    contributors: dict[str, model.Contributor] = field(default_factory=dict)

    @classmethod
    def load(cls, path) -> "ServerConfig":
        raw = json.loads(Path(path).read_text(encoding="utf-8"))
        contributors = {
            c["token"]: model.Contributor(c["name"], int(c.get("skill", 1)))
            for c in raw.get("contributors", [])
        }
        return cls(
            data_dir=raw.get("data_dir", "."),
            listen=raw.get("listen", "127.0.0.1:8000"),
            default_count=int(raw.get("default_count", DEFAULT_COUNT)),
            contributors=contributors,
        )


def _xml_response(element: ET.Element, status: int = 200) -> Response:
    return Response(content=tostring(element), status_code=status,
                    media_type="application/xml")


def _error(status: int, message: str) -> Response:
    el = ET.Element("error")
    el.text = message
    return _xml_response(el, status)


def _int_param(value: str | None, default: int, name: str) -> int:
    if value is None or value == "":
        return default
    try:
        n = int(value)
    except ValueError:
        raise InvalidInputError(f"query parameter {name} must be an integer")
    if n < 0:
        raise InvalidInputError(f"query parameter {name} must be >= 0")
    return n


def create_app(store: Store, config: ServerConfig | None = None) -> FastAPI:
    config = config or ServerConfig()
    app = FastAPI(title="motamot lexical API")
    app.add_middleware(CORSMiddleware, allow_origins=["*"], allow_methods=["*"],
                       allow_headers=["*"])

    def _authenticate(request: Request) -> model.Contributor | None:
        token = request.headers.get("X-Auth-Token")
        if token is None:
            auth = request.headers.get("Authorization", "")
            if auth.startswith("Bearer "):
                token = auth[len("Bearer "):]
        if token is None:
            return None
        return config.contributors.get(token)

    def _collect_matches(dictionary: str, lang: str, criteria: str, value: str,
                         strategy: str) -> list[tuple[VolumeHandle, str]]:
        selected = store.select(dictionary, lang)
        if not selected:
            raise NotFoundError(f"no volume matches {dictionary}/{lang}")
        matches: list[tuple[VolumeHandle, str]] = []
        seen: set[str] = set()
        known_criteria = False
        for _d, _l, handle in selected:
            if criteria != "handle" and criteria not in handle.indexes:
                continue
            known_criteria = True
            for entry_id in store_mod.query(handle, criteria, value, strategy):
                if entry_id not in seen:
                    seen.add(entry_id)
                    matches.append((handle, entry_id))
        if not known_criteria:
            raise InvalidInputError(f"unknown criteria {criteria!r}")
        return matches

    @app.get("/api/{dictionary}/export")
    def export(dictionary: str, lang: str | None = None):
        selected = [(d, l, h) for d, l, h in store.select(dictionary, "*")
                    if lang in (None, l)]
        if not selected:
            return _error(404, f"unknown dictionary {dictionary!r}")
        if len(selected) > 1:
            return _error(400, "several volumes match; pass ?lang=")
        xml_text = store_mod.export_volume(selected[0][2])
        return Response(content=xml_text, media_type="application/xml")

    @app.get("/api/{dictionary}/{lang}/schema")
    def schema(dictionary: str, lang: str):
        selected = store.select(dictionary, lang)
        if not selected:
            return Response(status_code=404)
        handle = selected[0][2]
        return {
            "volume": handle.descriptor.name,
            "language": handle.descriptor.language,
            "criteria": [name for name, _ in handle.descriptor.indexed_fields],
            "entry": {
                "head": ["headword", "pronunciation", "pos", "fem_form", "fem_pron"],
                "sense": ["gloss", "formula", "domain", "refaxie", "example",
                          "idiom", "misc"],
            },
        }

    @app.get("/api/{dictionary}/{lang}/{criteria}/{value}")
    @app.get("/api/{dictionary}/{lang}/{criteria}/{value}/{key}")
    def lookup(dictionary: str, lang: str, criteria: str, value: str,
               key: str | None = None, strategy: str = "exact",
               count: str | None = None, startIndex: str | None = None):
        try:
            n = _int_param(count, config.default_count, "count")
            start = _int_param(startIndex, 0, "startIndex")
            if strategy not in ("exact", "prefix"):
                raise InvalidInputError(f"unknown strategy {strategy!r}")
            matches = _collect_matches(dictionary, lang, criteria, value, strategy)
        except NotFoundError as exc:
            return _error(404, str(exc))
        except InvalidInputError as exc:
            return _error(400, str(exc))
        if not matches:
            return _error(404, "no match")
        total = len(matches)
        window = matches[start:start + n]

        if key is None:
            wrapper = ET.Element("entry-list", {
                "total": str(total), "start": str(start), "count": str(len(window)),
            })
            for handle, entry_id in window:
                wrapper.append(handle.entries[entry_id])
            return _xml_response(wrapper)

        wrapper = ET.Element("value-list", {
            "total": str(total), "start": str(start), "count": str(len(window)),
        })
        found_any = False
        for handle, entry_id in window:
            paths = ([(key, dict(handle.descriptor.indexed_fields).get(key))]
                     if key != "*" else handle.descriptor.indexed_fields)
            for crit_name, path in paths:
                if path is None:
                    continue
                for v in store_mod._values(handle.entries[entry_id], path):
                    found_any = True
                    el = ET.SubElement(wrapper, "value",
                                       {"entry": entry_id, "criteria": crit_name})
                    el.text = v
        if key != "*" and not any(
                key in dict(h.descriptor.indexed_fields) for h, _ in window):
            return _error(400, f"unknown key {key!r}")
        if not found_any:
            return _error(404, f"no value for key {key!r}")
        return _xml_response(wrapper)

    @app.put("/api/{dictionary}/{lang}/entry/{entry_id:path}")
    async def edit(dictionary: str, lang: str, entry_id: str, request: Request):
        contributor = _authenticate(request)
        if contributor is None:
            return _error(401, "authentication required")
        if_match = request.headers.get("If-Match")
        if if_match is None:
            return _error(400, "If-Match header with expected revision required")
        try:
            expected = int(if_match.strip('"'))
        except ValueError:
            return _error(400, "If-Match must carry an integer revision")
        selected = store.select(dictionary, lang)
        if not selected:
            return _error(404, f"no volume matches {dictionary}/{lang}")
        dict_name, _lang, handle = selected[0]
        body = (await request.body()).decode("utf-8")
        try:
            entry_el = ET.fromstring(body)
        except ET.ParseError as exc:
            return _error(422, f"body is not well-formed XML: {exc}")

        try:
            axie_ids = _apply_link_requests(store, dict_name, entry_el,
                                            entry_id, contributor)
        except NotFoundError as exc:
            return _error(404, str(exc))
        except InvalidInputError as exc:
            return _error(422, str(exc))

        violations = validate_lmf_shape(entry_el)
        if violations:
            return _error(422, "; ".join(violations))
        try:
            revision = store_mod.update_entry(handle, entry_id,
                                              tostring(entry_el),
                                              contributor, expected)
        except ConflictError as exc:
            return _error(409, str(exc))
        except NotFoundError as exc:
            return _error(404, str(exc))
        except InvalidInputError as exc:
            return _error(422, str(exc))
        result = ET.Element("updated", {"id": entry_id, "revision": str(revision)})
        for aid in axie_ids:
            ET.SubElement(result, "axie", {"id": aid})
        return _xml_response(result)

    return app


def _apply_link_requests(store: Store, dictionary: str, entry_el: ET.Element,
                         entry_id: str, contributor: model.Contributor) -> list[str]:
    """Resolve <m:link target-entry=".." [target-sense=".."]/> elements in
    the submitted entry: an axie is generated in the background, both sides
    gain their references, and the link element becomes a refaxie."""
    links = [(sense, link) for sense in entry_el.findall("m:sense", NSMAP)
             for link in sense.findall("m:link", NSMAP)]
    # entry-level links (no source sense) request a vocable-to-vocable note
    links += [(None, link) for link in entry_el.findall("m:link", NSMAP)]
    if not links:
        return []

    handles = {l: h for _d, l, h in store.select(dictionary, "*")}
    volumes = model.VolumeSet()
    for lang, handle in handles.items():
        if lang == "axi":
            volumes.axies = model.AxieVolume(
                "axi", [model.axie_from_xml(e) for e in handle.entries.values()])
        else:
            volumes.add(model.Volume(lang, lang, [
                model.vocable_from_xml(e) for e in handle.entries.values()]))

    # the submitted (possibly edited) entry replaces its stored version
    source_lang = None
    for lang, vol in volumes.volumes.items():
        if vol.has(entry_id):
            source_lang = lang
            vol.entries[[e.id for e in vol.entries].index(entry_id)] = \
                model.vocable_from_xml(entry_el)
    if source_lang is None:
        raise NotFoundError(f"no entry {entry_id} in dictionary {dictionary}")

    axie_ids: list[str] = []
    for sense, link in links:
        target_entry = link.get("target-entry")
        if not target_entry:
            raise InvalidInputError("m:link without target-entry")
        req = model.LinkRequest(
            source=(entry_id, sense.get("id") if sense is not None else None),
            target=(target_entry, link.get("target-sense")),
            creator=contributor,
        )
        axie, modified = model.add_translation_link(req, volumes)
        if axie is not None:
            axie_ids.append(axie.id)
        # write back the counterpart entries and the new axie
        for entry in modified:
            if entry.id == entry_id:
                continue
            for lang, vol in volumes.volumes.items():
                if vol.has(entry.id) and lang in handles:
                    _replace_entry(handles[lang], entry.id,
                                   model.vocable_to_xml(entry))
        if axie is not None and "axi" in handles:
            store_mod.add_entry(handles["axi"], model.axie_to_xml(axie))
        # reflect the new reference in the submitted XML
        parent = sense if sense is not None else entry_el
        parent.remove(link)
        if axie is not None and sense is not None:
            ET.SubElement(sense, q("refaxie"), {"idrefaxie": axie.id})

    # pending vocable-level notes added by case-3 links
    submitted = model.vocable_from_xml(entry_el)
    fresh = next(v for v in volumes.volumes[source_lang].entries
                 if v.id == entry_id)
    if len(fresh.pending_notes) > len(submitted.pending_notes):
        for note in fresh.pending_notes[len(submitted.pending_notes):]:
            ET.SubElement(entry_el, q("vocablelink"), {
                "volume": note.target_volume, "entry": note.target_entry,
                "refine": note.refine})
    return axie_ids


def _replace_entry(handle: VolumeHandle, entry_id: str,
                   new_el: ET.Element) -> None:
    with handle.lock:
        handle._unindex_entry(entry_id)
        handle.entries[entry_id] = new_el
        handle.revisions[entry_id] = handle.revisions.get(entry_id, 0) + 1
        handle._index_entry(entry_id)
        handle.persist()
