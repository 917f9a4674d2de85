"""Namespace plumbing and canonical serialization for volume XML."""

from __future__ import annotations

import xml.etree.ElementTree as ET

NS = "urn:motamot:lexicon"
NSMAP = {"m": NS}

ET.register_namespace("m", NS)


def q(tag: str) -> str:
    """Qualified tag name for the m: namespace."""
    return f"{{{NS}}}{tag}"


def local(tag: str) -> str:
    """Local part of a possibly-qualified tag name."""
    return tag.rsplit("}", 1)[-1]


def sub(parent: ET.Element, tag: str, text: str | None = None, **attrs: str) -> ET.Element:
    el = ET.SubElement(parent, q(tag), dict(attrs))
    if text is not None:
        el.text = text
    return el


def tostring(el: ET.Element) -> str:
    return ET.tostring(el, encoding="unicode")


def fromstring(text: str) -> ET.Element:
    return ET.fromstring(text)


def indent(el: ET.Element) -> None:
    ET.indent(el, space="  ")
