import xml.etree.ElementTree as ET
from pathlib import Path

import pytest

from motamot import ingest, restructure, reify, translit, model

DATA = Path(__file__).resolve().parents[1] / "src" / "motamot" / "data"

FIG3_LINE1 = ("abondant, e (fruits, riz...) — (pluie) (trempé-humide)"
              "\t(dā'el) sambō — (dā'el) cōk-coam")


@pytest.fixture(scope="session")
def tables():
    return translit.load_rule_tables()


@pytest.fixture(scope="session")
def sample_lines():
    return (DATA / "sample.mam-src").read_text(encoding="utf-8").splitlines()


@pytest.fixture()
def sample_volume(sample_lines):
    """Freshly restructured (pre-reification) sample volume."""
    tagged, errors = ingest.tag_volume(sample_lines)
    assert errors == []
    return restructure.restructure_volume(tagged)


@pytest.fixture()
def reified_sample(sample_volume):
    restructure.recover_feminines(sample_volume)
    supp = restructure.SupplementLexicon.load(DATA / "fem.tsv")
    volume, _ = restructure.enrich_from_supplement(sample_volume, supp)
    return reify.reify_links(volume)


def structural(el: ET.Element):
    """Element names, attributes and text, recursively; whitespace-only
    text is ignored so indentation differences do not matter."""
    text = (el.text or "").strip()
    return (el.tag, dict(el.attrib), text, [structural(c) for c in el])


def assert_same_structure(actual: ET.Element, expected: ET.Element):
    assert structural(actual) == structural(expected)
