"""Rule-driven transliteration from IPA notation to Khmer script.

Three staged rewrite passes, each compiled from an external TSV table:

  normalize     correct IPA notation and fold combining diacritics,
  intermediate  group multi-letter sequences into single Khmer-letter
                units and tag consonants with their series (A or B),
  generate      map (grapheme, series) pairs to Khmer code points.

Each pass applies leftmost-longest matching: at a position the longest
applicable pattern wins, context-restricted rules (word-initial /
word-final) before unrestricted ones, file order breaking remaining ties.
Words are separated by "-" in the IPA source.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from importlib import resources

from .errors import InvalidInputError, UntranslatableGraphemeError

DEFAULT_SERIES = "A"  # untyped consonants fall back to series A, low confidence

VOWEL_CHARS = set("aeiouāēīōūəɔ̥̄")


@dataclass(frozen=True)
class Rule:
    stage: str
    pattern: str
    replacement: str
    context: str = "any"  # any | initial | final
    when: str = "always"  # always | never (disabled pending review)

    def __post_init__(self):
        if not self.pattern:
            raise InvalidInputError("empty rule pattern")
        if self.context not in ("any", "initial", "final"):
            raise InvalidInputError(f"unknown rule context {self.context!r}")


@dataclass(frozen=True)
class TypedToken:
    grapheme: str
    series: str | None = None  # A | B | None (untyped)
    kind: str = "consonant"  # consonant | vowel | separator

    def __str__(self) -> str:
        return f"{self.grapheme} {self.series}" if self.series else self.grapheme


@dataclass
class TranslitReport:
    unknown_chars: list[str] = field(default_factory=list)
    untyped: list[str] = field(default_factory=list)
    low_confidence: list[str] = field(default_factory=list)

    @property
    def clean(self) -> bool:
        return not (self.unknown_chars or self.untyped or self.low_confidence)


def load_rule_tables(path=None) -> dict[str, list[Rule]]:
    """Load the staged rule tables from TSV: stage, pattern, replacement,
    context, and an optional enable column ("never" disables a row)."""
    if path is None:
        path = resources.files("motamot").joinpath("data/rules.tsv")
    tables: dict[str, list[Rule]] = {"normalize": [], "intermediate": [], "generate": []}
    text = path.read_text(encoding="utf-8")
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip() or line.startswith("#"):
            continue
        cols = line.split("\t")
        if len(cols) < 4:
            raise InvalidInputError(f"rules line {lineno}: expected 4+ columns")
        stage, pattern, replacement, context = cols[0], cols[1], cols[2], cols[3]
        when = cols[4] if len(cols) > 4 and cols[4] else "always"
        if stage not in tables:
            raise InvalidInputError(f"rules line {lineno}: unknown stage {stage!r}")
        tables[stage].append(Rule(stage, pattern, replacement, context, when))
    return tables


def _match_at(word: str, pos: int, rules: list[Rule]) -> Rule | None:
    """Longest applicable pattern at `pos`; context-restricted rules beat
    unrestricted ones, then pattern length, then file order."""
    best: Rule | None = None
    best_key = None
    for order, rule in enumerate(rules):
        if rule.when == "never":
            continue
        if rule.context == "initial" and pos != 0:
            continue
        end = pos + len(rule.pattern)
        if rule.context == "final" and end != len(word):
            continue
        if not word.startswith(rule.pattern, pos):
            continue
        key = (rule.context != "any", len(rule.pattern), -order)
        if best_key is None or key > best_key:
            best, best_key = rule, key
    return best


def _rewrite_word(word: str, rules: list[Rule],
                  report: TranslitReport | None = None) -> str:
    out: list[str] = []
    pos = 0
    while pos < len(word):
        rule = _match_at(word, pos, rules)
        if rule is None:
            ch = word[pos]
            if report is not None and ch not in VOWEL_CHARS and not ch.isalpha() \
                    and ch not in "-' ":
                report.unknown_chars.append(ch)
            out.append(ch)
            pos += 1
        else:
            out.append(rule.replacement)
            pos += len(rule.pattern)
    return "".join(out)


def normalize_ipa(s: str, rules: list[Rule],
                  report: TranslitReport | None = None) -> str:
    """Single correction/folding pass; idempotent for the bundled table."""
    return "-".join(_rewrite_word(w, rules, report) for w in s.split("-"))


def _classify(grapheme: str) -> str:
    if grapheme and grapheme[0] in VOWEL_CHARS or grapheme.startswith("-"):
        return "vowel"
    return "consonant"


def _emit(tokens: list[TypedToken], spec_text: str) -> None:
    """Expand one replacement specification into typed tokens.

    Token syntax: ``g`` plain, ``g:A``/``g:B`` typed consonant, ``<A``/``<B``
    retroactively types the closest untyped consonant already emitted."""
    for item in spec_text.split(" "):
        if not item:
            continue
        if item in ("<A", "<B"):
            # types the consonant immediately before the vowel, if untyped
            if tokens and tokens[-1].kind == "consonant" and tokens[-1].series is None:
                tokens[-1] = TypedToken(tokens[-1].grapheme, item[1], "consonant")
            continue
        if ":" in item:
            grapheme, series = item.rsplit(":", 1)
            tokens.append(TypedToken(grapheme, series, "consonant"))
        else:
            tokens.append(TypedToken(item, None, _classify(item)))


def to_intermediate(s: str, rules: list[Rule],
                    report: TranslitReport | None = None) -> list[TypedToken]:
    """Group IPA letter sequences into Khmer-letter units and tag series.

    Spaces are letter-separating notation and carry no meaning; "-" word
    separators are kept as separator tokens."""
    tokens: list[TypedToken] = []
    for wi, word in enumerate(s.replace(" ", "").split("-")):
        if wi > 0:
            tokens.append(TypedToken("-", None, "separator"))
        pos = 0
        while pos < len(word):
            rule = _match_at(word, pos, rules)
            if rule is None:
                ch = word[pos]
                if ch == "'":
                    tokens.append(TypedToken(ch, None, "consonant"))
                else:
                    tokens.append(TypedToken(ch, None, _classify(ch)))
                pos += 1
            else:
                _emit(tokens, rule.replacement)
                pos += len(rule.pattern)
    if report is not None:
        report.untyped.extend(t.grapheme for t in tokens
                              if t.kind == "consonant" and t.series is None)
    return [t for t in tokens if t.grapheme]


def intermediate_notation(tokens: list[TypedToken]) -> str:
    """Human-readable form of the intermediate stage, e.g. "b A ūə"."""
    return " ".join(str(t) for t in tokens)


def generate_khmer(tokens: list[TypedToken], rules: list[Rule],
                   report: TranslitReport | None = None) -> str:
    """Map each token through the generation table.

    Vowels map series-independently; consonants per series; untyped
    consonants use the default series and are flagged low-confidence."""
    lookup = {r.pattern: r.replacement for r in rules if r.when != "never"}
    out: list[str] = []
    for offset, token in enumerate(tokens):
        if token.kind == "separator":
            continue  # word separators are dropped at generation
        g = token.grapheme
        if token.kind == "consonant":
            series = token.series
            if series is None:
                series = DEFAULT_SERIES
                if report is not None:
                    report.low_confidence.append(g)
            replacement = lookup.get(f"{g}:{series}", lookup.get(g))
        else:
            replacement = lookup.get(g)
        if replacement is None:
            raise UntranslatableGraphemeError(g, offset)
        out.append(replacement)
    return "".join(out)


def transliterate(s: str, tables: dict[str, list[Rule]] | None = None
                  ) -> tuple[str, TranslitReport]:
    """normalize -> intermediate -> generate, aggregating one report."""
    if tables is None:
        tables = load_rule_tables()
    report = TranslitReport()
    normalized = normalize_ipa(s, tables["normalize"], report)
    tokens = to_intermediate(normalized, tables["intermediate"], report)
    khmer = generate_khmer(tokens, tables["generate"], report)
    return khmer, report


def transliterate_trace(s: str, tables: dict[str, list[Rule]] | None = None) -> dict:
    """Per-stage outputs, for the CLI --trace mode."""
    if tables is None:
        tables = load_rule_tables()
    report = TranslitReport()
    normalized = normalize_ipa(s, tables["normalize"], report)
    tokens = to_intermediate(normalized, tables["intermediate"], report)
    khmer = generate_khmer(tokens, tables["generate"], report)
    return {
        "input": s,
        "normalized": normalized,
        "intermediate": intermediate_notation(tokens),
        "khmer": khmer,
        "report": report,
    }
