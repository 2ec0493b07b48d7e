"""``plancontrast`` command line: ingest, compare, narrate, eval.

Typical run::

    plancontrast ingest  --manifest scenarios/manifest.json --kb run.kb
    plancontrast compare --kb run.kb
    plancontrast narrate --kb run.kb --specificity 3 --restrict-class Quality
    plancontrast eval    --kb run.kb --rows

Exit status: 0 success, 1 bad input (files, traces, snapshots, KB
contents), 2 internal error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from .acxon import acxon
from .inference import ComparisonRun, InferenceConfig, Polarity, Verdict, compare_all_plans
from .ingest import ManifestError, ParseError, ingest_plan, load_manifest
from .kb import ALWAYS, Interval, KBError, KnowledgeGraph, parse_time
from .metrics import compare_report, format_rows, format_table
from .narrative import LabelTable
from .ontology import PLAN, QualityKind, new_kb, plan_relations, plan_qualities, plans

log = logging.getLogger("plancontrast")

EXIT_OK, EXIT_INPUT, EXIT_INTERNAL = 0, 1, 2


class InputError(Exception):
    """Bad user input; reported with exit status 1."""


@dataclass
class RunConfig:
    kb_snapshot: Optional[Path] = None
    manifest: Optional[Path] = None
    specificity: int = 3
    restrict_class: Optional[str] = None
    locality: Interval = ALWAYS
    rows: bool = False
    label_table: Optional[Path] = None
    equality_tolerance: float = 0.0
    polarity: dict = field(default_factory=dict)
    class_pairs: list = field(default_factory=lambda: [(PLAN, PLAN)])
    keep_going: bool = False

    def inference(self) -> InferenceConfig:
        return InferenceConfig(dict(self.polarity), self.equality_tolerance)


def _read_snapshot(path: Path) -> KnowledgeGraph:
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read snapshot {path}: {exc.strerror}") from exc
    return new_kb().load(text)


def _write_snapshot(kb: KnowledgeGraph, path: Path) -> None:
    try:
        path.write_text(kb.dump(), encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot write snapshot {path}: {exc.strerror}") from exc


def _ingest_manifest(kb: KnowledgeGraph, manifest: Path) -> list:
    try:
        text = manifest.read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read manifest {manifest}: {exc.strerror}") from exc
    pds = load_manifest(text, manifest.parent)
    for pd in pds:
        ingest_plan(kb, pd, ALWAYS)
    return pds


def load_kb(config: RunConfig) -> KnowledgeGraph:
    """Snapshot if given, otherwise a manifest ingested and compared in memory."""
    if config.kb_snapshot is not None:
        if config.manifest is not None or config.kb_snapshot.exists():
            return _read_snapshot(config.kb_snapshot)
    if config.manifest is not None:
        kb = new_kb()
        _ingest_manifest(kb, config.manifest)
        _report_errors(compare_all_plans(kb, config.inference()))
        return kb
    raise InputError("a knowledge base is needed: pass --kb SNAPSHOT or --manifest FILE")


def _report_errors(run: ComparisonRun) -> None:
    if run.errors:
        (a, b), exc = next(iter(run.errors.items()))
        raise KBError(f"comparing {a!r} and {b!r}: {exc}")


def _fmt_number(value) -> str:
    return str(value) if value is not None else "?"


def cmd_ingest(config: RunConfig, out) -> int:
    if config.manifest is None:
        raise InputError("ingest needs --manifest")
    kb = new_kb()
    if config.kb_snapshot is not None and config.kb_snapshot.exists():
        kb = _read_snapshot(config.kb_snapshot)
    pds = _ingest_manifest(kb, config.manifest)
    if config.kb_snapshot is not None:
        _write_snapshot(kb, config.kb_snapshot)
    width = max(len(pd.name) for pd in pds)
    kinds = list(QualityKind)
    print(f"{'plan'.ljust(width)}  tasks  cost  makespan", file=out)
    for pd in pds:
        values = {q.kind: q.value for q in plan_qualities(kb, pd.name)}
        print(f"{pd.name.ljust(width)}  {_fmt_number(values.get(kinds[2])):>5}  "
              f"{_fmt_number(values.get(kinds[0])):>4}  {_fmt_number(values.get(kinds[1])):>8}",
              file=out)
    return EXIT_OK


def cmd_compare(config: RunConfig, out) -> int:
    if config.kb_snapshot is None:
        raise InputError("compare needs --kb")
    kb = _read_snapshot(config.kb_snapshot)
    run = compare_all_plans(kb, config.inference())
    _write_snapshot(kb, config.kb_snapshot)
    if not run.verdicts and not run.errors:
        print("no pairs", file=out)
    for (a, b), verdict in sorted(run.verdicts.items()):
        if verdict is Verdict.UNDECIDED:
            print(f"{a} / {b}: no dominance relation", file=out)
        for x, y in ((a, b), (b, a)):
            for rel in sorted(plan_relations(kb, x, y)):
                print(f"{x}\t{rel}\t{y}", file=out)
    for (a, b), exc in sorted(run.errors.items()):
        print(f"{a} / {b}: error: {exc}", file=sys.stderr)
    return EXIT_INPUT if run.errors else EXIT_OK


def _labels(config: RunConfig) -> LabelTable:
    if config.label_table is None:
        return LabelTable.default()
    try:
        return LabelTable.from_file(config.label_table, LabelTable.default())
    except OSError as exc:
        raise InputError(f"cannot read label table {config.label_table}: {exc.strerror}") from exc


def cmd_narrate(config: RunConfig, out) -> int:
    kb = load_kb(config)
    errors = {}
    narratives = acxon(kb, config.class_pairs, config.locality, config.specificity,
                       config.restrict_class, _labels(config), errors=errors)
    for n in narratives:
        if config.rows:
            print(json.dumps(n.as_record(), ensure_ascii=False), file=out)
        else:
            print(f"[{n.pair.a} / {n.pair.b}]", file=out)
            print(n.text, file=out)
    for pair, exc in errors.items():
        print(f"{pair.a} / {pair.b}: error: {exc}", file=sys.stderr)
    if not narratives and not errors:
        print("no pairs", file=sys.stderr)
    return EXIT_INPUT if errors else EXIT_OK


def cmd_eval(config: RunConfig, out) -> int:
    kb = load_kb(config)
    errors = {} if config.keep_going else None
    grid = compare_report(kb, config.class_pairs, config.locality, (1, 2, 3), errors=errors)
    out.write(format_rows(grid) if config.rows else format_table(grid))
    for (algorithm, level, pair), exc in (errors or {}).items():
        print(f"{algorithm} s={level} {pair[0]} / {pair[1]}: error: {exc}", file=sys.stderr)
    return EXIT_OK


COMMANDS = {"ingest": cmd_ingest, "compare": cmd_compare, "narrate": cmd_narrate,
            "eval": cmd_eval}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _time_token(token: str):
    try:
        return parse_time(token)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not a time point: {token!r} (use a number, _ or Inf)") from exc


def _polarity(token: str):
    name, _, value = token.partition("=")
    kinds = {k.name.lower(): k for k in QualityKind}
    if name.lower() not in kinds or value not in {p.value for p in Polarity}:
        raise argparse.ArgumentTypeError(
            f"expected KIND=lower|higher with KIND in {sorted(kinds)}, got {token!r}")
    return kinds[name.lower()], Polarity(value)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="plancontrast", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true", help="log warnings and progress")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    common = _Parser(add_help=False)
    common.add_argument("--kb", type=Path, help="knowledge-base snapshot (read, and written by ingest/compare)")
    common.add_argument("--manifest", type=Path, help="JSON plan manifest")
    common.add_argument("--tolerance", type=float, default=0.0,
                        help="values closer than this count as equal")
    common.add_argument("--polarity", type=_polarity, action="append", default=[],
                        metavar="KIND=lower|higher", help="which direction is better for a quality")

    narr = _Parser(add_help=False)
    narr.add_argument("--locality", nargs=2, type=_time_token, metavar=("START", "END"))
    narr.add_argument("--class-pair", nargs=2, action="append", metavar=("CLASS_A", "CLASS_B"),
                      help="classes whose instances are compared (default: Plan Plan)")

    sub.add_parser("ingest", parents=[common], help="parse plans into a snapshot")
    sub.add_parser("compare", parents=[common], help="run the comparison rules")
    p = sub.add_parser("narrate", parents=[common, narr], help="contrastive narratives per pair")
    p.add_argument("--specificity", type=int, choices=(1, 2, 3), default=3)
    p.add_argument("--restrict-class", metavar="NAME")
    p.add_argument("--labels", type=Path, help="property<TAB>phrase table")
    p.add_argument("--rows", action="store_true", help="one JSON record per narrative")
    p = sub.add_parser("eval", parents=[common, narr], help="metrics grid, ACXON vs baseline")
    p.add_argument("--rows", action="store_true", help="comma-separated rows")
    p.add_argument("--keep-going", action="store_true", help="skip failing cells")
    return parser


def config_from_args(args) -> RunConfig:
    locality = ALWAYS
    if getattr(args, "locality", None):
        try:
            locality = Interval(*args.locality)
        except ValueError as exc:
            raise InputError(f"bad --locality: {exc}") from exc
    return RunConfig(
        kb_snapshot=args.kb,
        manifest=args.manifest,
        specificity=getattr(args, "specificity", 3),
        restrict_class=getattr(args, "restrict_class", None),
        locality=locality,
        rows=getattr(args, "rows", False),
        label_table=getattr(args, "labels", None),
        equality_tolerance=args.tolerance,
        polarity=dict(args.polarity),
        class_pairs=[tuple(cp) for cp in (getattr(args, "class_pair", None) or [(PLAN, PLAN)])],
        keep_going=getattr(args, "keep_going", False),
    )


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.ERROR,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        config = config_from_args(args)
        return COMMANDS[args.command](config, out)
    except (InputError, ParseError, ManifestError, KBError) as exc:
        print(f"plancontrast {args.command}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except Exception as exc:  # noqa: BLE001 - last-resort reporting
        log.debug("internal error", exc_info=True)
        print(f"plancontrast {args.command}: internal error: {type(exc).__name__}: {exc}",
              file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
