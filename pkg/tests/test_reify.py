import random

import pytest

from motamot.ids import make_entry_id
from motamot.model import Lexie, Vocable, Volume
from motamot.reify import check_integrity, merge_key, reify_links, sort_volume


def volume_from_spec(spec):
    """spec: list of (headword, [[t, t], [t]]) — translations per sense."""
    vol = Volume("fra", "fra")
    for ordinal, (headword, senses) in enumerate(spec, start=1):
        vol.entries.append(Vocable(
            id=make_entry_id("fra", headword, ordinal),
            headword=headword,
            senses=[Lexie(sense_id=f"s{i}", gloss=f"{headword} {i}",
                          translations=list(ts))
                    for i, ts in enumerate(senses, start=1)],
        ))
    return vol


class TestMergeKey:
    def test_strips_leading_particles(self):
        assert merge_key("(dā'el) sambō") == "sambō"

    def test_squeezes_whitespace(self):
        assert merge_key("  cōl-cū  t ") == "cōl-cū t"

    def test_plain_word_unchanged(self):
        assert merge_key("sambō") == "sambō"


class TestReifyLinks:
    def test_abondant_enumeration(self):
        vol = volume_from_spec([("x", [["a"]])] * 26 +
                               [("abondant",
                                 [["(dā'el) sambō"], ["(dā'el) cōk-coam"]])])
        result = reify_links(vol)
        abondant_axies = [a for a in result.axies.axies
                          if "abondant" in a.id]
        assert [a.id for a in abondant_axies] == [
            "axi.[fra:abondant,khm:sambō].27.1.e",
            "axi.[fra:abondant,khm:cōk-coam].27.2.e",
        ]
        # the four links: each axie ties one French sense and one Khmer entry
        fr = result.french.find("fra.abondant.27.e")
        assert fr.sense("s1").axie_refs == ["axi.[fra:abondant,khm:sambō].27.1.e"]
        assert fr.sense("s2").axie_refs == ["axi.[fra:abondant,khm:cōk-coam].27.2.e"]
        khm_words = {e.headword: e for e in result.khmer.entries}
        assert "axi.[fra:abondant,khm:sambō].27.1.e" in [
            r for s in khm_words["sambō"].senses for r in s.axie_refs]
        assert "axi.[fra:abondant,khm:cōk-coam].27.2.e" in [
            r for s in khm_words["cōk-coam"].senses for r in s.axie_refs]

    def test_minimal_volume(self):
        result = reify_links(volume_from_spec([("x", [["y"]])]))
        assert len(result.axies.axies) == 1
        assert len(result.khmer.entries) == 1
        fr_sense = result.french.entries[0].senses[0]
        assert len(fr_sense.axie_refs) == 1
        assert fr_sense.translations == []

    def test_merge_groups_by_translation_string(self):
        vol = volume_from_spec([
            ("un", [["(dā'el) sambō"]]),
            ("deux", [["sambō"], ["autre"]]),
            ("trois", [["sambō"]]),
        ])
        result = reify_links(vol)
        by_word = {e.headword: e for e in result.khmer.entries}
        assert len(by_word["sambō"].senses) == 3
        assert len(result.axies.axies) == 4
        # oracle: distinct merge keys over all (sense, translation) pairs
        distinct = {merge_key(t)
                    for t in ["(dā'el) sambō", "sambō", "autre", "sambō"]}
        assert len(result.khmer.entries) == len(distinct)

    def test_empty_translation_reported_not_fatal(self):
        vol = volume_from_spec([("x", [["(seul)"]])])
        result = reify_links(vol)
        assert result.axies.axies == []
        assert len(result.report) == 1

    def test_sample_corpus_merges_sambo(self, reified_sample):
        sambo = [e for e in reified_sample.khmer.entries if e.headword == "sambō"]
        assert len(sambo) == 1
        assert len(sambo[0].senses) == 3


class TestConservation:
    @pytest.mark.parametrize("seed", range(5))
    def test_identities_on_random_corpora(self, seed):
        rng = random.Random(seed)
        words = [f"w{i}" for i in range(40)]
        spec = []
        for i in range(rng.randint(1, 60)):
            senses = [[rng.choice(words) for _ in range(rng.randint(1, 3))]
                      for _ in range(rng.randint(1, 5))]
            spec.append((f"fr{i}", senses))
        vol = volume_from_spec(spec)
        n_pairs = sum(len(ts) for _, senses in spec for ts in senses)
        distinct = {merge_key(t) for _, senses in spec for ts in senses for t in ts}
        n_entries = len(vol.entries)
        result = reify_links(vol)
        assert len(result.axies.axies) == n_pairs
        assert len(result.khmer.entries) == len(distinct)
        assert len(result.french.entries) == n_entries
        assert check_integrity(result.french, result.axies, result.khmer) == []


class TestSortVolume:
    def entries(self, words):
        return Volume("khm", "khm", [
            Vocable(id=make_entry_id("khm", w, i), headword=w, senses=[])
            for i, w in enumerate(words, start=1)])

    def test_code_point_order_stable(self):
        vol = self.entries(["ក", "ខ", "ក"])
        sort_volume(vol)
        assert [e.headword for e in vol.entries] == ["ក", "ក", "ខ"]
        # stability: equal keys keep input order
        assert [e.id for e in vol.entries] == \
            ["khm.ក.1.e", "khm.ក.3.e", "khm.ខ.2.e"]

    def test_empty_volume(self):
        vol = self.entries([])
        assert sort_volume(vol).entries == []

    def test_matches_reference_sort(self):
        rng = random.Random(7)
        alphabet = "abcéŋā-ក ខគxyz"
        words = ["".join(rng.choice(alphabet) for _ in range(rng.randint(1, 8)))
                 for _ in range(200)]
        vol = self.entries(words)
        sort_volume(vol)
        # independent oracle: compare by code point tuples
        expected = sorted(words, key=lambda w: tuple(ord(c) for c in w))
        assert [e.headword for e in vol.entries] == expected

    def test_khmer_script_headword_preferred(self):
        vol = self.entries(["zz", "aa"])
        vol.entries[0].khmer_headword = "ក"
        vol.entries[1].khmer_headword = "ខ"
        sort_volume(vol)
        assert [e.headword for e in vol.entries] == ["zz", "aa"]


class TestIntegrity:
    def test_reified_sample_is_clean(self, reified_sample):
        assert check_integrity(reified_sample.french, reified_sample.axies,
                               reified_sample.khmer) == []

    def test_dangling_refaxie_named(self, reified_sample):
        reified_sample.french.entries[0].senses[0].axie_refs.append("axi.broken")
        report = check_integrity(reified_sample.french, reified_sample.axies,
                                 reified_sample.khmer)
        assert any("axi.broken" in line for line in report)

    def test_single_ref_axie_reported(self, reified_sample):
        reified_sample.axies.axies[0].refs = \
            reified_sample.axies.axies[0].refs[:1]
        report = check_integrity(reified_sample.french, reified_sample.axies,
                                 reified_sample.khmer)
        assert any("one French sense and one Khmer" in line for line in report)
