import xml.etree.ElementTree as ET

import pytest

from motamot.errors import AlignmentError, MalformedLineError
from motamot.ingest import parse_source_line, split_feminine, tag_volume

from conftest import FIG3_LINE1, assert_same_structure

TAGGED_ABONDANT = """\
<article>
<vedette>abondant</vedette>
<sens>
<glose>abondant, e (fruits, riz...)</glose>
<traduction><api>(dā'el) sambō</api>
</traduction></sens>
<sens>
<glose>(pluie) (trempé-humide)</glose>
<traduction><api>(dā'el) cōk-coam</api>
</traduction></sens>
</article>
"""


class TestParseSourceLine:
    def test_two_sense_entry(self):
        raw = parse_source_line(FIG3_LINE1)
        assert raw.headword == "abondant"
        assert raw.fem_suffix == "e"
        assert raw.senses == [
            ("abondant, e (fruits, riz...)", ["(dā'el) sambō"]),
            ("(pluie) (trempé-humide)", ["(dā'el) cōk-coam"]),
        ]

    def test_alternative_translations(self):
        raw = parse_source_line("abord (adv.) (d'—)\tmun-dambōŋ / dā'əm-lā'əj")
        assert raw.headword == "abord"
        assert raw.pos_hint == "adv."
        assert len(raw.senses) == 1
        assert raw.senses[0][1] == ["mun-dambōŋ", "dā'əm-lā'əj"]

    def test_minimal_line(self):
        raw = parse_source_line("x\ty")
        assert raw.headword == "x"
        assert raw.senses == [("x", ["y"])]

    def test_missing_tab(self):
        with pytest.raises(MalformedLineError):
            parse_source_line("no tab here")

    def test_sense_count_mismatch(self):
        with pytest.raises(AlignmentError) as err:
            parse_source_line("a — b\tc")
        assert (err.value.french_count, err.value.khmer_count) == (2, 1)


FEMININE_PAIRS = [
    ("abondant, e", "abondante"),
    ("grand, e", "grande"),
    ("petit, e", "petite"),
    ("chaud, e", "chaude"),
    ("absent, e", "absente"),
    ("lourd, e", "lourde"),
    ("beau, belle", "belle"),
    ("nouveau, nouvelle", "nouvelle"),
    ("vieux, vieille", "vieille"),
    ("bon, bonne", "bonne"),
    ("gros, grosse", "grosse"),
    ("blanc, blanche", "blanche"),
    ("frais, fraîche", "fraîche"),
    ("long, longue", "longue"),
    ("doux, douce", "douce"),
    ("faux, fausse", "fausse"),
    ("sec, sèche", "sèche"),
    ("public, publique", "publique"),
    ("fou, folle", "folle"),
    ("heureux, euse", "heureuse"),
    ("premier, ière", "première"),
    ("gentil, gentille", "gentille"),
]


class TestSplitFeminine:
    @pytest.mark.parametrize("raw,expected", FEMININE_PAIRS)
    def test_adjective_pairs(self, raw, expected):
        masc = raw.split(",")[0]
        assert split_feminine(raw) == (masc, expected)

    def test_no_comma_passes_through(self):
        assert split_feminine("abord") == ("abord", None)


class TestTagVolume:
    def test_fig_shape_article(self):
        root, errors = tag_volume([FIG3_LINE1])
        assert errors == []
        assert_same_structure(root[0], ET.fromstring(TAGGED_ABONDANT))

    def test_empty_input(self):
        root, errors = tag_volume([])
        assert len(root) == 0 and errors == []

    def test_comments_and_blanks_skipped(self):
        root, errors = tag_volume(["# comment", "", "x\ty"])
        assert len(root) == 1 and errors == []

    def test_errors_collected_not_fatal(self):
        root, errors = tag_volume(["bad line without tab", "x\ty"])
        assert len(root) == 1
        assert len(errors) == 1
        assert errors[0][0] == 1

    def test_sample_corpus_tags_50_articles(self, sample_lines):
        root, errors = tag_volume(sample_lines)
        assert errors == []
        assert len(root.findall("article")) == 50
        # schema of the tagged shape
        for article in root:
            assert article.find("vedette") is not None
            sens = article.findall("sens")
            assert sens
            for s in sens:
                assert s.find("glose") is not None
                assert s.findall("traduction/api")

    def test_lossless_sense_count(self, sample_lines):
        segments = sum(
            line.split("\t")[0].count(" — ") + 1
            for line in sample_lines
            if line.strip() and not line.startswith("#"))
        root, _ = tag_volume(sample_lines)
        assert len(root.findall("article/sens")) == segments

    def test_api_segment_byte_identical(self):
        root, _ = tag_volume([FIG3_LINE1])
        apis = [el.text for el in root.findall("article/sens/traduction/api")]
        assert apis == ["(dā'el) sambō", "(dā'el) cōk-coam"]

    def test_deterministic_and_order_preserving(self, sample_lines):
        a = ET.tostring(tag_volume(sample_lines)[0])
        b = ET.tostring(tag_volume(sample_lines)[0])
        assert a == b
        root, _ = tag_volume(sample_lines)
        heads = [a.findtext("vedette") for a in root]
        expected = [parse_source_line(l).headword for l in sample_lines
                    if l.strip() and not l.startswith("#")]
        assert heads == expected
