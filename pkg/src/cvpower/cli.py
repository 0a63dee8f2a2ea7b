"""Command-line interface.

Exit codes:
  0  success (for selftest: every check passed)
  1  selftest found failing checks
  2  validation error (bad arguments, unreadable or malformed input document,
     out-of-range configuration)
  3  computation-integrity error (internal cross-checks disagreed)
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Sequence

from .errors import CvpError, IntegrityError, InputDocumentError, InvalidConfigError, InvalidInputError
from .fixtures import builtin_fixtures, run_fixture
from .io import parse_input, render_json, render_table, write_waveform_csv
from .pipeline import analyze
from .waveforms import WaveformGrid, synthesize

__all__ = ["main"]

_EXIT_OK = 0
_EXIT_SELFTEST_FAILED = 1
_EXIT_VALIDATION = 2
_EXIT_INTEGRITY = 3


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cvpower",
        description=(
            "Complex-vector power decomposition of three-phase sinusoidal "
            "measurements: intraphase P + jQ plus the cross-phase unbalance "
            "vector, in phase, sequence and four-wire equivalent coordinates."
        ),
        epilog=(
            "exit codes: 0 success; 1 selftest failure; 2 validation error; "
            "3 computation-integrity error"
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    analyze_parser = sub.add_parser(
        "analyze", help="run a full analysis of one measurement document"
    )
    analyze_parser.add_argument("--input", required=True, help="input document (JSON)")
    analyze_parser.add_argument(
        "--format", choices=("table", "json"), default="table", help="output form"
    )
    analyze_parser.add_argument(
        "--ieee1459",
        action="store_true",
        help="include the positive-sequence / unbalance power comparison",
    )
    analyze_parser.add_argument("--out", help="write the report here instead of stdout")
    analyze_parser.set_defaults(handler=_cmd_analyze)

    waveform_parser = sub.add_parser(
        "waveform", help="export sampled time-domain waveforms as CSV"
    )
    waveform_parser.add_argument("--input", required=True, help="input document (JSON)")
    waveform_parser.add_argument("--cycles", type=int, default=2, help="number of cycles (default 2)")
    waveform_parser.add_argument(
        "--samples-per-cycle", type=int, default=256, help="samples per cycle (default 256, min 16)"
    )
    waveform_parser.add_argument("--out", required=True, help="CSV output path")
    waveform_parser.set_defaults(handler=_cmd_waveform)

    selftest_parser = sub.add_parser(
        "selftest", help="verify the built-in reference measurement sets"
    )
    selftest_parser.set_defaults(handler=_cmd_selftest)

    return parser


def _read_document(path_text: str) -> bytes:
    path = Path(path_text)
    try:
        return path.read_bytes()
    except OSError as exc:
        raise InputDocumentError(f"cannot read input document {path_text!r}: {exc}") from exc


def _cmd_analyze(args: argparse.Namespace) -> int:
    document = parse_input(_read_document(args.input))
    report = analyze(document.to_request(), include_ieee1459=args.ieee1459)
    text = render_json(report) if args.format == "json" else render_table(report)
    if args.out:
        Path(args.out).write_text(text if text.endswith("\n") else text + "\n", encoding="utf-8")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
    return _EXIT_OK


def _cmd_waveform(args: argparse.Namespace) -> int:
    document = parse_input(_read_document(args.input))
    request = document.to_request()
    grid = WaveformGrid(
        frequency_hz=request.frequency_hz,
        samples_per_cycle=args.samples_per_cycle,
        cycles=args.cycles,
    )
    waves = synthesize(request.voltages, request.currents, grid)
    with open(args.out, "w", encoding="utf-8", newline="") as stream:
        write_waveform_csv(waves, stream)
    return _EXIT_OK


def _cmd_selftest(args: argparse.Namespace) -> int:
    failures = 0
    for fixture in builtin_fixtures():
        try:
            _, results = run_fixture(fixture)
        except CvpError as exc:
            print(f"{fixture.label} analysis failed: {exc} FAIL")
            failures += 1
            continue
        for result in results:
            print(result.line(fixture.label))
            if not result.passed:
                failures += 1
    if failures:
        print(f"selftest: {failures} check(s) failed")
        return _EXIT_SELFTEST_FAILED
    print("selftest: all checks passed")
    return _EXIT_OK


def main(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except IntegrityError as exc:
        print(f"computation-integrity error: {exc}", file=sys.stderr)
        return _EXIT_INTEGRITY
    except (InputDocumentError, InvalidInputError, InvalidConfigError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return _EXIT_VALIDATION
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return _EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
