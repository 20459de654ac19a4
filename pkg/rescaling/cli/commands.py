"""
Command-line interface - one JSON problem description in, one report out

Exit codes: 0 success, 2 schema error, 3 mathematical error.
"""
import argparse
import json
import logging
import sys
from dataclasses import dataclass
from typing import Any, Callable, Dict, List, Optional, TextIO

from rescaling.cli.examples import get_example
from rescaling.cli.reports import render
from rescaling.cli.schemas import Command, KoszulMode, ProblemSpec, parse_spec
from rescaling.config import settings
from rescaling.exceptions import InvalidParameter, MathematicalError, SchemaError
from rescaling.models.power_series import PowerSeries
from rescaling.services.algebra_service import algebra_service
from rescaling.services.geometry_service import geometry_service
from rescaling.services.lcs_service import lcs_service
from rescaling.services.malcev_service import malcev_service
from rescaling.services.quillen_service import quillen_service
from rescaling.services.tensor_lie_service import tensor_lie_service

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_SCHEMA = 2
EXIT_MATH = 3


@dataclass
class RunContext:
    truncation: int
    k: int
    mode: KoszulMode


# ==================== Handlers ====================

def _hilbert(spec: ProblemSpec, ctx: RunContext) -> Dict[str, Any]:
    algebra = spec.algebra.to_presentation(ctx.truncation)
    return {
        "algebra": algebra.to_dict(),
        "hilbert": algebra_service.hilbert(algebra, ctx.truncation),
        "quadratic": algebra.is_quadratic(),
    }


def _rescale(spec: ProblemSpec, ctx: RunContext) -> Dict[str, Any]:
    algebra = spec.algebra.to_presentation(ctx.truncation)
    rescaled = algebra_service.rescale_algebra(algebra, ctx.k)
    return {
        "algebra": algebra.to_dict(),
        "k": ctx.k,
        "scale": rescaled.scale,
        "hilbert": algebra_service.hilbert(algebra, ctx.truncation),
        "rescaled_hilbert": algebra_service.rescaled_hilbert(rescaled, ctx.truncation),
        "identity": "eq:rescaled-hilbert",
    }


def _holonomy(spec: ProblemSpec, ctx: RunContext) -> Dict[str, Any]:
    algebra = spec.algebra.to_presentation(ctx.truncation)
    weight = algebra_service.default_holonomy_weight(ctx.truncation)
    holonomy = algebra_service.holonomy_lie(algebra, weight)
    return {
        "holonomy": holonomy.to_dict(),
        "weight": weight,
        "k": ctx.k,
        "rescaled_dims": tensor_lie_service.rescale_lie_dims(holonomy.dims, ctx.k).to_dict(),
    }


def _source_series(spec: ProblemSpec, ctx: RunContext) -> PowerSeries:
    if spec.series is not None:
        return spec.series.to_series(ctx.truncation)
    return algebra_service.hilbert(spec.algebra.to_presentation(ctx.truncation), ctx.truncation)


def _lcs_ranks(spec: ProblemSpec, ctx: RunContext) -> Dict[str, Any]:
    series = _source_series(spec, ctx)
    ranks = lcs_service.extract_ranks(series, ctx.truncation)
    return {
        "series": series,
        "ranks": ranks.to_dict(),
        "product": ranks.product(ctx.truncation),
        "identity": "eq:lcs",
    }


def _homotopy_ranks(spec: ProblemSpec, ctx: RunContext) -> Dict[str, Any]:
    series = _source_series(spec, ctx)
    ranks = lcs_service.homotopy_ranks(series, ctx.k, ctx.truncation)
    product = lcs_service.homotopy_product(ranks, ctx.k, ctx.truncation)
    expected = series.substitute(-1, 2 * ctx.k + 1, ctx.truncation)
    return {
        "series": series,
        "k": ctx.k,
        "homotopy_ranks": ranks.to_dict(),
        "product": product,
        "rescaled_poincare_at_minus_t": expected,
        "product_matches": product == expected,
        "identity": "eq:hlcs",
    }


def _loop_poincare(spec: ProblemSpec, ctx: RunContext) -> Dict[str, Any]:
    series = _source_series(spec, ctx)
    loop = lcs_service.loop_poincare(series, ctx.k, ctx.truncation)
    report: Dict[str, Any] = {"series": series, "k": ctx.k, "loop_poincare": loop, "identity": "eq:loop-poincare"}
    if spec.algebra is not None:
        algebra = spec.algebra.to_presentation(ctx.truncation)
        if algebra.is_quadratic():
            report["pbw"] = lcs_service.pbw_check(algebra, ctx.k, loop)
    return report


def _koszul_test(spec: ProblemSpec, ctx: RunContext) -> Dict[str, Any]:
    algebra = spec.algebra.to_presentation(ctx.truncation)
    modes = [KoszulMode.SERIES, KoszulMode.QUILLEN, KoszulMode.CE] if ctx.mode == KoszulMode.ALL else [ctx.mode]
    verdicts = []
    for mode in modes:
        if mode == KoszulMode.SERIES:
            verdicts.append(algebra_service.koszul_series_test(algebra, ctx.truncation))
        elif mode == KoszulMode.QUILLEN:
            verdicts.append(quillen_service.koszul_quillen_test(algebra, ctx.k, ctx.truncation))
        else:
            verdicts.append(quillen_service.koszul_ce_test(algebra, spec.p_max, spec.weight_max))
    outcomes = {v.passed for v in verdicts}
    return {
        "algebra": algebra.to_dict(),
        "k": ctx.k,
        "mode": ctx.mode,
        "verdicts": verdicts,
        "tests_agree": len(outcomes) == 1,
    }


def _quillen_homology(spec: ProblemSpec, ctx: RunContext) -> Dict[str, Any]:
    algebra = spec.algebra.to_presentation(ctx.truncation)
    rescaled = algebra_service.rescale_algebra(algebra, ctx.k)
    model = quillen_service.build_quillen_model(rescaled, ctx.truncation)
    homology = quillen_service.quillen_homology(model, ctx.truncation)
    return {"algebra": algebra.to_dict(), "k": ctx.k, "model": model.to_dict(), "homology": homology.to_dict()}


def _bch(spec: ProblemSpec, ctx: RunContext) -> Dict[str, Any]:
    payload = spec.bch
    x, y = payload.element(payload.x), payload.element(payload.y)
    for element in (x, y):
        tensor_lie_service.ensure_lie(element.lie)
    return {"x": x, "y": y, "bch": malcev_service.bch(x, y, payload.r), "identity": "eq:bch"}


def _ch_represent(spec: ProblemSpec, ctx: RunContext) -> Dict[str, Any]:
    word = spec.words.single_word()
    return {
        "word": word.format(),
        "r": spec.words.r,
        "rho": malcev_service.ch_representation(word, spec.words.r),
        "identity": "eq:bch",
    }


def _link_derivation(spec: ProblemSpec, ctx: RunContext) -> Dict[str, Any]:
    payload = spec.words
    longitudes = payload.group_words(payload.longitudes)
    invariant = malcev_service.ch_invariant_raw(longitudes, payload.r)
    report: Dict[str, Any] = {
        "longitudes": [w.format() for w in longitudes],
        "invariant": invariant,
        "word_linking_matrix": malcev_service.word_linking_matrix(longitudes),
    }
    if payload.compare_with is not None:
        other = payload.group_words(payload.compare_with)
        second = malcev_service.ch_invariant_raw(other, payload.r)
        report["compared_with"] = second
        report["comparison"] = malcev_service.compare_invariants(invariant, second)
    return report


def _link_report(spec: ProblemSpec, ctx: RunContext) -> Dict[str, Any]:
    return geometry_service.link_report(spec.link.to_graph(), ctx.k, ctx.truncation).to_dict()


def _arrangement_report(spec: ProblemSpec, ctx: RunContext) -> Dict[str, Any]:
    return geometry_service.arrangement_series(spec.arrangement.to_spec(), ctx.k, ctx.truncation).to_dict()


def _rebracket(spec: ProblemSpec, ctx: RunContext) -> Dict[str, Any]:
    payload = spec.rebracket
    return lcs_service.rebracket_dims(payload.to_dims(), payload.m).to_dict()


HANDLERS: Dict[Command, Callable[[ProblemSpec, RunContext], Dict[str, Any]]] = {
    Command.HILBERT: _hilbert,
    Command.RESCALE: _rescale,
    Command.HOLONOMY: _holonomy,
    Command.LCS_RANKS: _lcs_ranks,
    Command.HOMOTOPY_RANKS: _homotopy_ranks,
    Command.LOOP_POINCARE: _loop_poincare,
    Command.KOSZUL_TEST: _koszul_test,
    Command.QUILLEN_HOMOLOGY: _quillen_homology,
    Command.BCH: _bch,
    Command.CH_REPRESENT: _ch_represent,
    Command.LINK_DERIVATION: _link_derivation,
    Command.LINK_REPORT: _link_report,
    Command.ARRANGEMENT_REPORT: _arrangement_report,
    Command.REBRACKET: _rebracket,
}


# ==================== Entry point ====================

def load_spec(text: str) -> ProblemSpec:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise SchemaError(f"Input is not valid JSON: {e}") from e
    return parse_spec(data)


def _first(*values: Optional[int]) -> int:
    return next(v for v in values if v is not None)


def execute(spec: ProblemSpec, truncation: Optional[int] = None, k: Optional[int] = None,
            mode: Optional[str] = None) -> Dict[str, Any]:
    """
    Run one problem description

    Command-line values win over the description, which wins over settings.

    Raises:
        MathematicalError: invalid parameters or a failed exact computation
    """
    ctx = RunContext(
        truncation=_first(truncation, spec.truncation, settings.DEFAULT_TRUNCATION),
        k=_first(k, spec.k, settings.DEFAULT_K),
        mode=KoszulMode(mode) if mode else spec.mode,
    )
    if ctx.truncation < 1 or ctx.k < 1:
        raise InvalidParameter(f"Truncation and k must be >= 1, got N={ctx.truncation}, k={ctx.k}")
    logger.info(f"Running {spec.command.value} (N={ctx.truncation}, k={ctx.k})")
    body = HANDLERS[spec.command](spec, ctx)
    return {"command": spec.command.value, "name": spec.name, "truncation": ctx.truncation, "result": body}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rescaling", description=settings.APP_NAME)
    parser.add_argument("--input", "-i", help="problem description (JSON); stdin when omitted")
    parser.add_argument("--example", help="run a bundled example by name")
    parser.add_argument("--truncate", "-N", type=int, help=f"top degree (default {settings.DEFAULT_TRUNCATION})")
    parser.add_argument("--k", type=int, help=f"rescaling parameter (default {settings.DEFAULT_K})")
    parser.add_argument("--mode", choices=[m.value for m in KoszulMode], help="koszul-test mode")
    parser.add_argument("--format", choices=["json", "table"], default="json")
    parser.add_argument("--log-level", default=settings.LOG_LEVEL)
    return parser


def configure_logging(level: str) -> None:
    logging.basicConfig(level=level.upper(), format=settings.LOG_FORMAT, stream=sys.stderr)


def run(argv: Optional[List[str]] = None, stdin: Optional[TextIO] = None, stdout: Optional[TextIO] = None) -> int:
    args = build_parser().parse_args(argv)
    configure_logging(args.log_level)
    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout
    command = None
    try:
        if args.example:
            spec = get_example(args.example)
        elif args.input:
            with open(args.input, encoding="utf-8") as handle:
                spec = load_spec(handle.read())
        else:
            spec = load_spec(stdin.read())
        command = spec.command.value
        report = execute(spec, args.truncate, args.k, args.mode)
        code = EXIT_OK
    except SchemaError as e:
        logger.error(f"Schema error: {e}")
        report, code = {"command": command, "error": e.error_name, "message": str(e)}, EXIT_SCHEMA
    except MathematicalError as e:
        logger.error(f"{e.error_name}: {e}")
        report, code = {"command": command, "error": e.error_name, "message": str(e)}, EXIT_MATH
    except OSError as e:
        logger.error(f"Cannot read input: {e}")
        report, code = {"command": command, "error": "SchemaError", "message": str(e)}, EXIT_SCHEMA
    stdout.write(render(report, args.format) + "\n")
    return code
