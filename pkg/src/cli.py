"""
cli.py

Command-line front end: build or load a space, run one check, emit a JSON report.

Commands (the two-word forms "catalog list", "check go", "demo exp-image", ... are
accepted too):

    catalog-list         examples with dimensions, signatures and provenance
    catalog-export       space bundle JSON of a catalog example
    validate             Lie algebra axioms and reductive-space invariants
    lcs                  lower central series of g (or of the nilradical)
    signature            signature of the metric on m (and of the Killing form)
    check-invariance     ad-invariance of the metric (h = 0) or of the Killing form
    check-go             geodesic-orbit survey
    check-two-step       two-step criterion on the nilradical
    check-weak-symmetry  weak-symmetry witnesses on seeded tangent vectors
    demo-exp-image       exponential-image decision for a 3x3 matrix, or a seeded survey

Exit codes: 0 pass, 1 fail, 2 usage or input error. stdout carries only the JSON
report (or the pandas summary with --pretty); logging goes to stderr.
"""
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple
import argparse
import json
import logging
import sys

import numpy as np
import pandas as pd

from catalog import get_entry, list_entries, normalize_id
from config import load_config, resolve_seed
from errors import InputError, InternalContradictionError, WsymError
from exact import fraction_array, parse_rational
from expdemo import exp_image_report, exp_image_survey
from forms import invariance_defect, signature
from geodesic import SamplerConfig, go_survey, two_step_criterion
from homogeneous import ReductiveSpace
from lie_core import (Subspace, ideal_series, killing_form, lower_central_series,
                      series_step, validate)
from report import Report, VERDICT_ERROR, VERDICT_FAIL, exit_code_for, to_jsonable
from serialization import dump_json, load_space, space_to_dict
from weak_symmetry import metric_family_independence, verify_witness, weak_symmetry_survey, witness_for

logger = logging.getLogger(__name__)

COMMANDS = (
    "catalog-list", "catalog-export", "validate", "lcs", "signature", "check-invariance",
    "check-go", "check-two-step", "check-weak-symmetry", "demo-exp-image",
)
COMMAND_GROUPS = ("catalog", "check", "demo")
PARAM_FLAGS = ("p", "q", "a", "b", "n", "m")


@dataclass
class RunConfig:
    """Everything one invocation needs; seed and samples end up in the report verbatim."""
    command: str
    space_id: Optional[str] = None
    file: Optional[str] = None
    params: Dict[str, Any] = field(default_factory=dict)
    seed: int = 0
    samples: int = 100
    output: Optional[str] = None
    pretty: bool = False
    matrix: Optional[str] = None
    xi: Optional[str] = None
    nilradical: bool = False
    killing: bool = False
    settings: Dict[str, Any] = field(default_factory=dict)

    @property
    def indent(self) -> Optional[int]:
        return self.settings.get("report", {}).get("indent", 2)


def normalize_argv(argv: Sequence[str]) -> List[str]:
    """Join "check go" style commands into "check-go"."""
    argv = list(argv)
    if len(argv) >= 2 and argv[0] in COMMAND_GROUPS and not argv[1].startswith("-"):
        return [f"{argv[0]}-{argv[1]}"] + argv[2:]
    return argv


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wsym", description="Exact checks on reductive pseudo-Riemannian homogeneous spaces")
    parser.add_argument("command", choices=COMMANDS)
    source = parser.add_mutually_exclusive_group()
    source.add_argument("--space", "--id", dest="space", help="catalog example id")
    source.add_argument("--file", help="space bundle JSON file")
    for name in PARAM_FLAGS:
        parser.add_argument(f"--{name}", dest=name, default=None,
                            help=f"catalog parameter {name}")
    parser.add_argument("--seed", type=int, default=None,
                        help="sampling seed (default: WSYM_SEED, then the config file)")
    parser.add_argument("--samples", type=int, default=None, help="number of seeded samples")
    parser.add_argument("--output", help="write the JSON document to this file")
    parser.add_argument("--pretty", action="store_true", help="print a table instead of JSON")
    parser.add_argument("--matrix", help="3x3 matrix as JSON, for demo-exp-image")
    parser.add_argument("--xi", help="tangent vector in m coordinates, comma-separated rationals")
    parser.add_argument("--nilradical", action="store_true",
                        help="lcs of the nilradical instead of g")
    parser.add_argument("--killing", action="store_true", help="use the Killing form of g")
    parser.add_argument("--config", help="configuration file (default: ./wsym_config.json)")
    parser.add_argument("--verbose", action="store_true", help="log progress (INFO)")
    parser.add_argument("--debug", action="store_true", help="log details (DEBUG)")
    return parser


def configure_logging(verbose: bool = False, debug: bool = False) -> None:
    level = logging.DEBUG if debug else logging.INFO if verbose else logging.WARNING
    logging.basicConfig(level=level, stream=sys.stderr,
                        format="%(levelname)s %(name)s: %(message)s", force=True)


def _load_space(config: RunConfig) -> Tuple[ReductiveSpace, Optional[Subspace], Dict[str, Any]]:
    if config.file:
        space, nilradical = load_space(config.file)
        return space, nilradical, {"file": config.file, "space": space.name}
    if not config.space_id:
        raise InputError(f"{config.command} needs --space <id> or --file <bundle.json>")
    entry = get_entry(config.space_id, config.params)
    return entry.space, entry.nilradical, {"space": entry.id, "params": dict(entry.params)}


def _parse_xi(text: str) -> np.ndarray:
    return fraction_array([parse_rational(part) for part in text.split(",") if part.strip()])


def _parse_matrix(text: str) -> np.ndarray:
    try:
        matrix = np.array(json.loads(text), dtype=float)
    except (json.JSONDecodeError, TypeError, ValueError) as exc:
        raise InputError(f"--matrix must be a JSON array of numbers: {exc}") from exc
    return matrix


def _series_report(check: str, series: List[Subspace], subject: Dict[str, Any]) -> Report:
    report = Report(check=check, subject=subject)
    step = series_step(series)
    report.add("lower_central_series", True, dims=[s.dim for s in series], step=step)
    report.message = f"step {step}"
    return report


def _dispatch(config: RunConfig) -> Tuple[Report, Optional[Dict[str, Any]]]:
    """Run the command; the optional dict is a document emitted instead of the report."""
    command = config.command
    if command == "catalog-list":
        entries = list_entries()
        report = Report(check="catalog-list", subject={"entries": entries})
        report.add("catalog", True, count=len(entries))
        return report, None

    if command == "demo-exp-image":
        expdemo_settings = config.settings["expdemo"]
        if config.matrix is not None:
            return exp_image_report(_parse_matrix(config.matrix), True,
                                    expdemo_settings["tolerance"]), None
        return exp_image_survey(config.samples, config.seed, expdemo_settings["tolerance"],
                                expdemo_settings["exp_residual_tolerance"]), None

    space, nilradical, subject = _load_space(config)

    if command == "catalog-export":
        if config.file:
            raise InputError("catalog-export takes --space <id>, not --file")
        bundle = space_to_dict(space, nilradical)
        report = Report(check="catalog-export", subject=subject)
        report.add("bundle", True, dim_g=space.g.dim, dim_m=space.dim, output=config.output)
        return report, bundle

    if command == "validate":
        report = validate(space.g)
        report.subject.update(subject)
        report.add("reductive_space", True, dim_g=space.g.dim, dim_h=space.h.dim,
                   dim_m=space.dim)
        return report, None

    if command == "lcs":
        if config.nilradical:
            if nilradical is None:
                raise InputError(f"{subject} has no nilradical on record")
            return _series_report("lcs", ideal_series(space.g, nilradical),
                                  dict(subject, of="nilradical")), None
        return _series_report("lcs", lower_central_series(space.g), subject), None

    if command == "signature":
        report = Report(check="signature", subject=subject)
        sig = signature(space.metric)
        report.add("metric", True, signature=sig.to_dict())
        if config.killing:
            report.add("killing", True, signature=signature(killing_form(space.g)).to_dict())
        report.message = f"metric signature {sig.as_tuple()}"
        return report, None

    if command == "check-invariance":
        if config.killing:
            form = killing_form(space.g)
        elif space.h.dim == 0:
            form = space.metric
        else:
            raise InputError("check-invariance needs h = 0 (metric on all of g) or --killing")
        report = invariance_defect(space.g, form)
        report.subject.update(subject, form="killing" if config.killing else "metric")
        return report, None

    if command == "check-go":
        sampler = SamplerConfig(config.seed, config.samples,
                                config.settings["survey"]["entry_bound"])
        report = go_survey(space, sampler, subject.get("space")).as_report()
        report.subject.update(subject)
        return report, None

    if command == "check-two-step":
        if nilradical is None:
            raise InputError(f"{subject} has no nilradical on record")
        report = two_step_criterion(space, nilradical)
        report.subject.update(subject)
        return report, None

    if command == "check-weak-symmetry":
        if config.file:
            raise InputError("check-weak-symmetry needs a catalog --space; witnesses are "
                             "built from the example's recipe")
        example_id = normalize_id(config.space_id)
        grid = config.settings["weak_symmetry"]["metric_grid"]
        if config.xi is not None:
            xi = _parse_xi(config.xi)
            report = verify_witness(space, witness_for(example_id, config.params, xi), xi)
            family = metric_family_independence(example_id, config.params, xi, grid)
            for entry in family.entries:
                report.entries.append(entry)
            report.subject.update(subject)
            return report, None
        report = weak_symmetry_survey(example_id, config.params, config.samples, config.seed,
                                      grid, config.settings["survey"]["entry_bound"])
        report.subject.update(subject)
        return report, None

    raise InputError(f"Unknown command: {command}")


def run(config: RunConfig) -> Tuple[int, Dict[str, Any]]:
    """
    Execute one command and return (exit code, JSON document).

    Input errors become an "error" report with exit code 2; an internal contradiction
    becomes a "fail" report with exit code 1.
    """
    document = None
    try:
        report, document = _dispatch(config)
    except InternalContradictionError as exc:
        logger.error("Internal contradiction: %s", exc)
        report = Report(check=config.command, message=str(exc))
        report.add("internal_consistency", False, detail=str(exc))
    except (WsymError, FileNotFoundError, json.JSONDecodeError, KeyError) as exc:
        logger.error("%s", exc)
        report = Report(check=config.command, error=str(exc), message=str(exc))
        document = None

    if report.seed is None:
        report.seed = config.seed
    if report.samples is None:
        report.samples = config.samples
    code = exit_code_for(report.verdict)
    if report.verdict in (VERDICT_FAIL, VERDICT_ERROR):
        logger.info("%s finished with verdict %s", config.command, report.verdict)
    return code, document if document is not None else report.to_dict()


def pretty_table(document: Dict[str, Any]) -> str:
    """pandas rendering of a report (or of the catalog listing) for people."""
    if document.get("check") == "catalog-list":
        frame = pd.DataFrame(document["subject"]["entries"])
        return frame.to_string(index=False)
    if "checks" not in document:
        return json.dumps(document, indent=2, sort_keys=True)
    rows = []
    for check in document["checks"]:
        detail = {k: v for k, v in check.items() if k not in ("name", "passed", "informational")}
        rows.append({"check": check["name"], "passed": check["passed"],
                     "informational": check.get("informational", False),
                     "detail": json.dumps(detail, sort_keys=True)[:80]})
    frame = pd.DataFrame(rows, columns=["check", "passed", "informational", "detail"])
    header = f"{document['check']}: {document['verdict']}"
    if document.get("message"):
        header += f" ({document['message']})"
    return header + "\n" + frame.to_string(index=False)


def config_from_args(args: argparse.Namespace, settings: Dict[str, Any]) -> RunConfig:
    params = {name: getattr(args, name) for name in PARAM_FLAGS if getattr(args, name) is not None}
    default_samples = (settings["weak_symmetry"]["samples"]
                       if args.command == "check-weak-symmetry"
                       else settings["survey"]["samples"])
    samples = args.samples if args.samples is not None else default_samples
    if samples < 0:
        raise InputError(f"--samples must be non-negative, got {samples}")
    return RunConfig(
        command=args.command,
        space_id=args.space,
        file=args.file,
        params=params,
        seed=resolve_seed(settings, args.seed),
        samples=int(samples),
        output=args.output,
        pretty=args.pretty,
        matrix=args.matrix,
        xi=args.xi,
        nilradical=args.nilradical,
        killing=args.killing,
        settings=settings,
    )


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = normalize_argv(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(argv)
    configure_logging(args.verbose, args.debug)

    try:
        settings = load_config(args.config)
        config = config_from_args(args, settings)
    except InputError as exc:
        logger.error("%s", exc)
        report = Report(check=args.command, error=str(exc), message=str(exc))
        print(report.to_json())
        return exit_code_for(report.verdict)

    code, document = run(config)
    document = to_jsonable(document)
    text = dump_json(document, config.output, config.indent)
    if config.pretty:
        print(pretty_table(document))
    elif config.output is None:
        print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
