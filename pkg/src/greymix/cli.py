"""Command line entry point: ``greymix rank FILE`` and ``greymix paper-example``."""
from __future__ import annotations

import argparse
import logging
import sys

from .core import GreyMixError
from .document import parse_document, paper_example_text
from .pipeline import PipelineConfig, PipelineError, comparison_table, emit_report, run_pipeline

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_DEGENERATE = 3
EXIT_IO = 4

log = logging.getLogger("greymix")


def _add_config_options(p):
    p.add_argument("--danger", type=float, help="danger index in [0, 1] (default 0.5)")
    p.add_argument("--rho", type=float, help="distinguishing coefficient in (0, 1) (default 0.5)")
    p.add_argument("--theta-plus", type=float, help="preference coefficient for the positive ideal")
    p.add_argument("--theta-minus", type=float, help="preference coefficient for the negative ideal")
    p.add_argument("--incidence-form", choices=["paper", "classic"])
    p.add_argument("--normalization", choices=["strict-paper", "symmetric"])
    p.add_argument("--weight-application", choices=["whitened", "split"])
    p.add_argument("--beta-form", choices=["logistic", "printed"], help=argparse.SUPPRESS)
    p.add_argument("--output", choices=["json", "table"], default="json")
    p.add_argument("--out", metavar="PATH", help="write the report here instead of stdout")
    p.add_argument("--lenient", action="store_true", help="warn about unknown fields instead of failing")
    p.add_argument("--seed-check", action="store_true", help="run twice and verify byte-identical reports")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="greymix", description="Rank plans with super-mixed grey fuzzy attributes")
    parser.add_argument("--debug", action="store_true", help="verbose logging")
    sub = parser.add_subparsers(dest="command", required=True)
    rank = sub.add_parser("rank", help="rank the plans of a JSON decision document")
    rank.add_argument("file")
    _add_config_options(rank)
    example = sub.add_parser("paper-example", help="run the bundled example document and compare with reference scores")
    _add_config_options(example)
    return parser


def _theta_overrides(args):
    # Setting one preference coefficient implies the other.
    plus, minus = args.theta_plus, args.theta_minus
    if plus is not None and minus is None:
        minus = 1.0 - plus
    elif minus is not None and plus is None:
        plus = 1.0 - minus
    return plus, minus


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.debug else logging.WARNING, format="%(levelname)s %(message)s")

    try:
        if args.command == "paper-example":
            text = paper_example_text()
        else:
            with open(args.file, encoding="utf-8") as fh:
                text = fh.read()
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO

    theta_plus, theta_minus = _theta_overrides(args)
    try:
        doc = parse_document(text, lenient=args.lenient)
        config = PipelineConfig.from_document(
            doc,
            danger=args.danger,
            rho=args.rho,
            theta_plus=theta_plus,
            theta_minus=theta_minus,
            incidence_form=args.incidence_form,
            normalization=args.normalization,
            weight_application=args.weight_application,
            beta_form=args.beta_form,
        )
        report = run_pipeline(doc, config)
        output = emit_report(report, args.output)
        if args.seed_check:
            again = emit_report(run_pipeline(doc, config), args.output)
            if again != output:
                print("error: repeated run produced a different report", file=sys.stderr)
                return EXIT_DEGENERATE
            log.info("seed check passed: repeated run is byte-identical")
    except PipelineError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE if exc.degenerate else EXIT_PARSE
    except GreyMixError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE

    if args.command == "paper-example":
        output = output + "\n" + comparison_table(report) if args.output == "table" else output
        if args.output == "json":
            sys.stderr.write(comparison_table(report))

    try:
        if args.out:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(output)
        else:
            sys.stdout.write(output)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
