"""Command-line pipeline driver and operations console.

Every stage reads and writes plain files, so each one can be golden-file
tested on its own and the whole chain is reproducible byte for byte.
Exit codes: 0 ok, 1 validation failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
import xml.etree.ElementTree as ET
from pathlib import Path

from . import ingest as ingest_mod
from . import model, reify as reify_mod, restructure as restructure_mod
from . import store as store_mod
from . import translit as translit_mod
from .errors import MotamotError
from .xmlutil import indent, tostring

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_USAGE = 2


def _write_xml(root: ET.Element, path: Path) -> None:
    indent(root)
    path.write_text('<?xml version="1.0" encoding="UTF-8"?>\n'
                    + tostring(root) + "\n", encoding="utf-8")


def _write_report(path: Path | None, payload) -> None:
    if path is None:
        return
    path.write_text(json.dumps(payload, ensure_ascii=False, indent=1),
                    encoding="utf-8")


def _read_volume(path: Path) -> model.Volume:
    return model.volume_from_xml(ET.parse(path).getroot())


def cmd_ingest(args) -> int:
    root, errors = ingest_mod.read_source(args.infile)
    _write_xml(root, args.out)
    if errors:
        _write_report(args.report, [{"line": n, "error": e} for n, e in errors])
        print(f"{len(errors)} line(s) failed to parse", file=sys.stderr)
        return EXIT_VALIDATION
    return EXIT_OK


def cmd_restructure(args) -> int:
    tagged = ET.parse(args.infile).getroot()
    volume = restructure_mod.restructure_volume(tagged)
    _write_xml(model.volume_to_xml(volume), args.out)
    return EXIT_OK


def cmd_enrich(args) -> int:
    volume = _read_volume(args.infile)
    restructure_mod.recover_feminines(volume)
    supp = restructure_mod.SupplementLexicon.load(args.supp)
    volume, stats = restructure_mod.enrich_from_supplement(volume, supp)
    _write_xml(model.volume_to_xml(volume), args.out)
    _write_report(args.report, stats)
    return EXIT_OK


def cmd_reify(args) -> int:
    volume = _read_volume(args.infile)
    result = reify_mod.reify_links(volume)
    outdir = args.out_dir
    outdir.mkdir(parents=True, exist_ok=True)
    _write_xml(model.volume_to_xml(result.french), outdir / "fra.xml")
    _write_xml(model.axie_volume_to_xml(result.axies), outdir / "axi.xml")
    _write_xml(model.volume_to_xml(result.khmer), outdir / "khm.xml")
    if result.report:
        _write_report(args.report, result.report)
        print("\n".join(result.report), file=sys.stderr)
    return EXIT_OK


def cmd_translit(args) -> int:
    tables = translit_mod.load_rule_tables(args.rules)
    if args.text:
        for word in args.text:
            trace = translit_mod.transliterate_trace(word, tables)
            if args.trace:
                print(f"input:        {trace['input']}")
                print(f"normalized:   {trace['normalized']}")
                print(f"intermediate: {trace['intermediate']}")
                print(f"khmer:        {trace['khmer']}")
            else:
                print(trace["khmer"])
        return EXIT_OK
    if args.infile is None or args.out is None:
        print("translit needs either words or --in/--out", file=sys.stderr)
        return EXIT_USAGE
    # fill Khmer-script headwords of a volume, then sort by them
    volume = _read_volume(args.infile)
    issues = []
    for entry in volume.entries:
        khmer, report = translit_mod.transliterate(entry.headword, tables)
        entry.khmer_headword = khmer
        if not report.clean:
            issues.append({"entry": entry.id,
                           "unknown": report.unknown_chars,
                           "untyped": report.untyped,
                           "low_confidence": report.low_confidence})
    reify_mod.sort_volume(volume)
    _write_xml(model.volume_to_xml(volume), args.out)
    _write_report(args.report, issues)
    return EXIT_OK


def cmd_import(args) -> int:
    st = store_mod.Store(args.data)
    xml_text = args.infile.read_text(encoding="utf-8")
    lang = args.lang or ET.fromstring(xml_text).get("lang", "")
    descriptor = store_mod.VolumeDescriptor(name=f"{args.dict}-{lang}",
                                            language=lang)
    st.add_volume(args.dict, xml_text, descriptor)
    return EXIT_OK


def cmd_export(args) -> int:
    st = store_mod.Store(args.data)
    selected = [(d, l, h) for d, l, h in st.select(args.dict, args.lang or "*")]
    if not selected:
        print(f"no volume for {args.dict}/{args.lang or '*'}", file=sys.stderr)
        return EXIT_VALIDATION
    if len(selected) > 1:
        print("several volumes match; pass --lang", file=sys.stderr)
        return EXIT_USAGE
    text = store_mod.export_volume(selected[0][2])
    if args.out:
        args.out.write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_check(args) -> int:
    from .restructure import validate_lmf_shape

    french = _read_volume(args.dir / "fra.xml")
    khmer = _read_volume(args.dir / "khm.xml")
    axies = model.axie_volume_from_xml(ET.parse(args.dir / "axi.xml").getroot())
    report = reify_mod.check_integrity(french, axies, khmer)
    for vol in (french, khmer):
        for entry in vol.entries:
            for violation in validate_lmf_shape(entry):
                report.append(f"{entry.id}: {violation}")
    if report:
        _write_report(args.report, report)
        print("\n".join(report), file=sys.stderr)
        return EXIT_VALIDATION
    print("ok")
    return EXIT_OK


def cmd_serve(args) -> int:
    import uvicorn

    from .server import ServerConfig, create_app

    config = ServerConfig.load(args.config) if args.config else ServerConfig()
    if args.data:
        config.data_dir = str(args.data)
    st = store_mod.Store(Path(config.data_dir))
    app = create_app(st, config)
    host, _, port = config.listen.partition(":")
    uvicorn.run(app, host=host or "127.0.0.1", port=int(port or 8000))
    return EXIT_OK


def cmd_pipeline(args) -> int:
    """ingest -> restructure -> enrich -> reify -> transliterate -> sort."""
    outdir = args.out_dir
    outdir.mkdir(parents=True, exist_ok=True)
    tagged, errors = ingest_mod.read_source(args.infile)
    _write_xml(tagged, outdir / "tagged.xml")
    if errors:
        _write_report(outdir / "errors.json",
                      [{"line": n, "error": e} for n, e in errors])
    volume = restructure_mod.restructure_volume(tagged)
    restructure_mod.recover_feminines(volume)
    if args.supp:
        supp = restructure_mod.SupplementLexicon.load(args.supp)
        volume, _stats = restructure_mod.enrich_from_supplement(volume, supp)
    _write_xml(model.volume_to_xml(volume), outdir / "restructured.xml")
    result = reify_mod.reify_links(volume)

    tables = translit_mod.load_rule_tables(args.rules)
    for entry in result.khmer.entries:
        khmer, _report = translit_mod.transliterate(entry.headword, tables)
        entry.khmer_headword = khmer
    reify_mod.sort_volume(result.khmer)

    _write_xml(model.volume_to_xml(result.french), outdir / "fra.xml")
    _write_xml(model.axie_volume_to_xml(result.axies), outdir / "axi.xml")
    _write_xml(model.volume_to_xml(result.khmer), outdir / "khm.xml")
    report = reify_mod.check_integrity(result.french, result.axies, result.khmer)
    if report:
        _write_report(outdir / "integrity.json", report)
        print("\n".join(report), file=sys.stderr)
        return EXIT_VALIDATION
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="motamot")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, **kwargs):
        p = sub.add_parser(name, **kwargs)
        p.set_defaults(func=func)
        p.add_argument("--report", type=Path, default=None,
                       help="write a machine-readable error report here")
        return p

    p = add("ingest", cmd_ingest, help="source text to tagged XML")
    p.add_argument("--in", dest="infile", type=Path, required=True)
    p.add_argument("--out", type=Path, required=True)

    p = add("restructure", cmd_restructure, help="tagged XML to entry volume")
    p.add_argument("--in", dest="infile", type=Path, required=True)
    p.add_argument("--out", type=Path, required=True)

    p = add("enrich", cmd_enrich, help="add pronunciation/pos from a supplement")
    p.add_argument("--in", dest="infile", type=Path, required=True)
    p.add_argument("--supp", type=Path, required=True)
    p.add_argument("--out", type=Path, required=True)

    p = add("reify", cmd_reify, help="split into French/pivot/Khmer volumes")
    p.add_argument("--in", dest="infile", type=Path, required=True)
    p.add_argument("--out-dir", type=Path, required=True)

    p = add("translit", cmd_translit, help="IPA to Khmer script")
    p.add_argument("text", nargs="*", help="words to transliterate")
    p.add_argument("--in", dest="infile", type=Path, default=None)
    p.add_argument("--out", type=Path, default=None)
    p.add_argument("--rules", type=Path, default=None)
    p.add_argument("--trace", action="store_true",
                   help="print all three stage outputs")

    p = add("import", cmd_import, help="import a volume into the store")
    p.add_argument("--in", dest="infile", type=Path, required=True)
    p.add_argument("--data", type=Path, required=True)
    p.add_argument("--dict", required=True)
    p.add_argument("--lang", default=None)

    p = add("export", cmd_export, help="export a volume from the store")
    p.add_argument("--data", type=Path, required=True)
    p.add_argument("--dict", required=True)
    p.add_argument("--lang", default=None)
    p.add_argument("--out", type=Path, default=None)

    p = add("check", cmd_check, help="integrity + shape checks on a volume set")
    p.add_argument("--dir", type=Path, required=True)

    p = add("serve", cmd_serve, help="run the REST API server")
    p.add_argument("--config", type=Path, default=None)
    p.add_argument("--data", type=Path, default=None)

    p = add("pipeline", cmd_pipeline, help="run all conversion stages")
    p.add_argument("--in", dest="infile", type=Path, required=True)
    p.add_argument("--supp", type=Path, default=None)
    p.add_argument("--rules", type=Path, default=None)
    p.add_argument("--out-dir", type=Path, required=True)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except MotamotError as exc:
        report = getattr(args, "report", None)
        _write_report(report, {"error": str(exc)})
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
