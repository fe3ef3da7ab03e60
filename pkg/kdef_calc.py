import sys
import argparse
from dataclasses import dataclass

from typing import List, Optional, Tuple

import pandas as pd

from data.matrix_io import MatrixFormatError, load_matrix_pair
from model.characters import local_dimension, u1_characters
from model.connectivity import connectivity_bounds, connectivity_table
from model.graded_abelian import GradedGroup, GradingError
from model.group_kdef import (
    ExprSemanticError,
    NonOrientable,
    Orientable,
    cohomology,
    expr_to_text,
    kdef,
    ktheory,
    moduli_graded,
    moduli_model,
    qcd,
    rdef_graded,
)
from model.hermitian_eigen import NumericError
from model.torus_moduli import torus_moduli_report
from pipeline.criteria import atiyah_segal_compare, consistency_suite
from pipeline.expr_parser import ExprSyntaxError, parse_expr
from pipeline.report_utils import load_config, log, render_frame, setup_log, to_json_text


EXIT_OK = 0
EXIT_SYNTAX = 2
EXIT_SEMANTIC = 3
EXIT_VERIFICATION = 4
EXIT_NUMERIC = 5

EXPRESSION_COMMANDS = [
    "kdef",
    "rdef",
    "moduli",
    "cohomology",
    "ktheory",
    "compare",
    "check",
    "characters",
    "connectivity",
]
COMMANDS = EXPRESSION_COMMANDS + ["torus-map"]

CONVENTION_NOTE = {
    "rdef": "R^def convention: degree 0 includes the dimension summand Z",
    "moduli": "moduli convention: the dimension summand Z is removed from degree 0, "
    "the rdef values keep it",
}


@dataclass
class Command:
    subcommand: str
    expression: Optional[str] = None
    input_path: Optional[str] = None
    degrees: Optional[Tuple[int, int]] = None
    ranks: Tuple[int, int] = (1, 10)
    json_output: bool = False
    seed: Optional[int] = None
    tol: Optional[float] = None
    samples: Optional[int] = None
    config_path: Optional[str] = None

    def __post_init__(self) -> None:
        assert self.subcommand in COMMANDS, f"unknown subcommand {self.subcommand}"
        for name, bounds in [("degree", self.degrees), ("rank", self.ranks)]:
            if bounds is None:
                continue
            lo, hi = bounds
            if lo < 0 or lo > hi:
                raise ValueError(f"{name} range must satisfy 0 <= a <= b, got {lo}..{hi}")


def parse_range(text: str) -> Tuple[int, int]:
    parts = text.split("..")
    if len(parts) != 2 or not all(p.strip().isdigit() for p in parts):
        raise argparse.ArgumentTypeError(f"expected a range a..b of nonnegative integers, got {text!r}")
    lo, hi = int(parts[0]), int(parts[1])
    if lo > hi:
        raise argparse.ArgumentTypeError(f"range bounds must satisfy a <= b, got {text!r}")
    return lo, hi


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit JSON instead of tables")
    common.add_argument("--degrees", type=parse_range, default=None, help="degree range a..b")
    common.add_argument("--seed", type=int, default=None, help="random seed")
    common.add_argument("--tol", type=float, default=None, help="validation tolerance")
    common.add_argument("--samples", type=int, default=None, help="number of samples")
    common.add_argument("--ranks", type=parse_range, default=(1, 10), help="rank range a..b")
    common.add_argument(
        "-c", "--config_path", type=str, default=None, help="path to the YAML config"
    )

    parser = argparse.ArgumentParser(
        prog="kdef_calc", description="deformation K-theory calculator for surface groups"
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)
    for name in EXPRESSION_COMMANDS:
        p = sub.add_parser(name, parents=[common])
        p.add_argument("expression", type=str, help="group expression, e.g. 'M(2) x N(3)'")
    p = sub.add_parser("torus-map", parents=[common])
    p.add_argument("--input", type=str, required=True, help="matrix-pair JSON file")
    return parser


def parse_command(argv: List[str]) -> Command:
    args = build_parser().parse_args(argv)
    return Command(
        subcommand=args.subcommand,
        expression=getattr(args, "expression", None),
        input_path=getattr(args, "input", None),
        degrees=args.degrees,
        ranks=args.ranks,
        json_output=args.json,
        seed=args.seed,
        tol=args.tol,
        samples=args.samples,
        config_path=args.config_path,
    )


def _graded_rows(groups: GradedGroup, lo: int, hi: int) -> List[dict]:
    return [{"degree": d, **groups[d].to_dict()} for d in range(lo, hi + 1)]


def _graded_text(groups: GradedGroup, lo: int, hi: int) -> str:
    frame = pd.DataFrame([{"degree": d, "pi_d": str(groups[d])} for d in range(lo, hi + 1)])
    return render_frame(frame)


########################################## subcommands ##########################################


def _run_homotopy(c: Command, e, convention: str) -> Tuple[int, str]:
    lo, hi = c.degrees if c.degrees is not None else (0, qcd(e) + 2)
    graded = rdef_graded if convention == "rdef" else moduli_graded
    groups = graded(e, lo, hi)
    if c.json_output:
        payload = {
            "expression": expr_to_text(e),
            "convention": convention,
            "note": CONVENTION_NOTE[convention],
            "groups": _graded_rows(groups, lo, hi),
        }
        if convention == "moduli":
            payload["model"] = moduli_model(e)
            payload["rdef_groups"] = _graded_rows(rdef_graded(e, lo, hi), lo, hi)
        return EXIT_OK, to_json_text(payload)
    lines = [f"# {expr_to_text(e)}", f"# {CONVENTION_NOTE[convention]}"]
    if convention == "moduli":
        lines.append(f"# homotopy type: {moduli_model(e)}")
    lines.append(_graded_text(groups, lo, hi))
    return EXIT_OK, "\n".join(lines)


def _run_graded(c: Command, groups: GradedGroup, e) -> Tuple[int, str]:
    if c.json_output:
        return EXIT_OK, to_json_text(
            {"expression": expr_to_text(e), "grading": groups.grading, "groups": groups.to_json()}
        )
    if c.degrees is not None:
        return EXIT_OK, _graded_text(groups, *c.degrees)
    return EXIT_OK, str(groups)


def _run_report(c: Command, report) -> Tuple[int, str]:
    code = EXIT_OK if report.passed else EXIT_VERIFICATION
    if c.json_output:
        return code, to_json_text(report.to_dict())
    status = "PASSED" if report.passed else "FAILED"
    header = f"# {report.expression}  qcd = {report.qcd}  {status}"
    return code, header + "\n" + render_frame(report.to_frame())


def _run_characters(c: Command, e, hyp: dict) -> Tuple[int, str]:
    if not isinstance(e, NonOrientable):
        raise ExprSemanticError(
            f"characters are sampled for a single non-orientable surface N(q), got {expr_to_text(e)}"
        )
    points = u1_characters(e.q, hyp["samples"], hyp["seed"])
    rows = [
        {
            "label": point.label,
            "local_dimension": local_dimension(point, e),
            "angles": [round(float(a), 6) for a in point.angles()],
        }
        for point in points
    ]
    frame = pd.DataFrame(rows)
    counts = frame["label"].value_counts().sort_index().to_dict()
    if c.json_output:
        return EXIT_OK, to_json_text(
            {
                "expression": expr_to_text(e),
                "seed": hyp["seed"],
                "samples": hyp["samples"],
                "components": {str(k): int(v) for k, v in counts.items()},
                "points": rows,
            }
        )
    header = f"# {expr_to_text(e)}  seed = {hyp['seed']}  components {counts}"
    return EXIT_OK, header + "\n" + render_frame(frame)


def _run_connectivity(c: Command, e) -> Tuple[int, str]:
    if not isinstance(e, (Orientable, NonOrientable)):
        raise ExprSemanticError(
            f"connectivity formulas are stated for a single surface, got {expr_to_text(e)}"
        )
    lo, hi = c.ranks
    ranks = list(range(max(1, lo), hi + 1))
    if not ranks:
        raise ValueError(f"rank range {lo}..{hi} holds no rank n >= 1")
    if c.json_output:
        return EXIT_OK, to_json_text([connectivity_bounds(e, n).to_dict() for n in ranks])
    frame = connectivity_table(e, ranks)
    return EXIT_OK, render_frame(frame.fillna("-"))


def _run_torus_map(c: Command, hyp: dict) -> Tuple[int, str]:
    a, b = load_matrix_pair(c.input_path)
    log(f"read a commuting pair of size {a.shape[0]} from {c.input_path}")
    report = torus_moduli_report(
        a,
        b,
        tol=hyp["validation_tol"],
        seed=hyp["seed"],
        jacobi_tol=hyp["jacobi_tol"],
        max_sweeps=hyp["max_sweeps"],
        max_depth=hyp["max_refine_depth"],
        multiset_tol=hyp["multiset_tol"],
    )
    code = EXIT_OK if report["conjugation_invariant"] else EXIT_VERIFICATION
    if c.json_output:
        return code, to_json_text(report)
    lines = [f"# joint eigenvalues, n = {report['n']}, seed = {report['seed']}"]
    lines.append(render_frame(pd.DataFrame(report["multiset"])))
    for name, value in report["residuals"].items():
        lines.append(f"# {name} residual {value:.3e}")
    lines.append(f"# conjugation distance {report['conjugation_distance']:.3e}")
    return code, "\n".join(lines)


def _dispatch(c: Command, hyp: dict) -> Tuple[int, str]:
    if c.subcommand == "torus-map":
        return _run_torus_map(c, hyp)

    e = parse_expr(c.expression)
    log(f"{c.subcommand} {expr_to_text(e)}")
    if c.subcommand == "kdef":
        module = kdef(e)
        if c.json_output:
            return EXIT_OK, to_json_text(
                {"expression": expr_to_text(e), "text": str(module), "summands": module.to_json()}
            )
        return EXIT_OK, str(module)
    if c.subcommand in ("rdef", "moduli"):
        return _run_homotopy(c, e, c.subcommand)
    if c.subcommand == "cohomology":
        return _run_graded(c, cohomology(e), e)
    if c.subcommand == "ktheory":
        return _run_graded(c, ktheory(e), e)
    if c.subcommand == "compare":
        return _run_report(c, atiyah_segal_compare(e, hyp["degree_padding"]))
    if c.subcommand == "check":
        return _run_report(c, consistency_suite(e, hyp["degree_padding"]))
    if c.subcommand == "characters":
        return _run_characters(c, e, hyp)
    return _run_connectivity(c, e)


def run(c: Command) -> Tuple[int, str]:
    """execute a command, returning the exit code and the rendered output

    Exit codes: 0 ok, 2 parse error, 3 semantic error, 4 verification failure,
    5 numeric failure. On error the output is the error message.

    """
    try:
        hyp = load_config(c.config_path)
        setup_log(hyp)
        if c.seed is not None:
            hyp["seed"] = c.seed
        if c.tol is not None:
            hyp["validation_tol"] = c.tol
        if c.samples is not None:
            hyp["samples"] = c.samples
        return _dispatch(c, hyp)
    except ExprSyntaxError as err:
        return EXIT_SYNTAX, f"syntax error: {err}\n{err.pointer()}"
    except MatrixFormatError as err:
        return EXIT_SEMANTIC, f"input error: {err}"
    except (ExprSemanticError, GradingError) as err:
        return EXIT_SEMANTIC, f"semantic error: {err}"
    except NumericError as err:
        return EXIT_NUMERIC, f"numeric error: {err}"
    except ValueError as err:
        return EXIT_SEMANTIC, f"error: {err}"
    except OSError as err:
        return EXIT_SEMANTIC, f"input error: {err}"


def main(argv: List[str] = None) -> int:
    command = parse_command(sys.argv[1:] if argv is None else argv)
    code, output = run(command)
    if code in (EXIT_OK, EXIT_VERIFICATION):
        print(output)
    else:
        print(output, file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
