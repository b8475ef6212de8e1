"""Main qswitch task implementations."""

from __future__ import annotations

import csv
import io
import itertools
import logging
import math
import sys
from fractions import Fraction
from functools import wraps
from pathlib import Path
from typing import TYPE_CHECKING, Any, Callable, TypeVar

import numpy as np
import yaml
from dacite import from_dict
from jsonschema.validators import validator_for
from jsonschema_pyref import RefResolver
from rich.console import Console

import qswitch.constants as const
from qswitch import display, utils
from qswitch.channels import (
    Ensemble,
    KrausChannel,
    check_density_matrix,
    make_cdpc,
    make_identity_channel,
    validate_cptp,
)
from qswitch.configuration import EnsembleConfig, SwitchSpecConfig
from qswitch.diagram import (
    build_diagram,
    count_loops,
    is_information_transmitting,
    modify_diagram,
)
from qswitch.errors import QSwitchCheckError, QSwitchSpecError, QSwitchValueError
from qswitch.objects import SwitchSpec
from qswitch.optimizer import (
    holevo_of_protocol,
    is_pairwise_mutually_cyclic,
    score,
    search_best,
    search_sampled,
)
from qswitch.perm import Permutation, is_mutually_cyclic
from qswitch.schema import ENSEMBLE_SCHEMA, SWITCH_SPEC_SCHEMA
from qswitch.switch import bruteforce, fast
from qswitch.verify import run_suite

if TYPE_CHECKING:
    from os import PathLike

    from qswitch.configuration import RunConfig
    from qswitch.objects import SwitchOutput

T = TypeVar("T")

log = logging.getLogger("qswitch")

console = Console(stderr=True)


def _read_document(document: PathLike | str) -> Any:  # noqa: ANN401
    """Parse a JSON or YAML file, reporting the position of syntax errors."""
    path = Path(document)
    try:
        with path.open() as _document:
            return yaml.safe_load(_document)
    except OSError as e:
        raise QSwitchSpecError(f"Cannot read <{path}>: {e.strerror}", [e]) from e
    except yaml.YAMLError as e:
        mark = getattr(e, "problem_mark", None)
        where = f" at line {mark.line + 1}, column {mark.column + 1}" if mark else ""
        problem = getattr(e, "problem", None) or str(e)
        raise QSwitchSpecError(f"Malformed document <{path}>{where}: {problem}", [e]) from e


def _load_document(document: PathLike | str | dict, schema: dict) -> dict:
    """Load a document and validate it against ``schema``.

    :param document: Parsed document or path to a JSON or YAML file
    :type document: PathLike | str | dict
    :param schema: JSON schema
    :type schema: dict
    :raises QSwitchSpecError: If the document is malformed or invalid
    :return: The parsed document
    :rtype: dict
    """
    config = document if isinstance(document, dict) else _read_document(document)

    validator_cls = validator_for(schema)
    validator = validator_cls(schema, resolver=RefResolver.from_schema(schema))
    errors = []
    for error in validator.iter_errors(config):
        location = "/".join(str(part) for part in error.absolute_path) or "<root>"
        log.error("%s: %s", location, error.message)
        errors.append(error)
    if errors:
        raise QSwitchSpecError("JSON Schema Validation Error", errors)

    return config


def _build_channel(config: Any, d: int, label: int) -> KrausChannel:  # noqa: ANN401
    if config.kind == const.CDPC:
        return make_cdpc(d)
    if config.kind == const.IDENTITY:
        return make_identity_channel(d)

    if config.d is not None and config.d != d:
        raise QSwitchValueError(
            f"Channel {label} acts on dimension {config.d}, the switch on dimension {d}"
        )
    channel = KrausChannel(
        d, [utils.decode_matrix(op, f"Kraus operator of channel {label}") for op in config.kraus]
    )
    if not validate_cptp(channel):
        raise QSwitchValueError(f"Channel {label} is not trace preserving")
    return channel


def validate_spec(func: Callable[..., T]) -> Callable[..., T]:
    """Decorator to validate and build a switch specification.

    The decorated function receives a :class:`SwitchSpec` in place of the
    document passed by the caller.

    :param func: The function to be decorated
    :type func: Callable[..., T]
    :return: A wrapped function that builds the switch before executing the
    original function
    :rtype: Callable[..., T]
    :raises QSwitchSpecError: if the document is malformed or invalid
    :raises QSwitchValueError: if the switch breaks an invariant
    """

    @wraps(func)
    def wrapper(switch_spec: PathLike | str | dict, *args: Any, **kwargs: Any) -> T:  # noqa: ANN401
        log.debug("Check switch specification")
        config = from_dict(SwitchSpecConfig, _load_document(switch_spec, SWITCH_SPEC_SCHEMA))
        perms = [Permutation.from_json(perm) for perm in config.perms]
        spec = SwitchSpec(
            d=config.d,
            channels=[
                _build_channel(channel, config.d, label)
                for label, channel in enumerate(config.channels, start=1)
            ],
            perms=perms,
            control=utils.control_from_value(config.control, len(perms)),
        )
        return func(spec, *args, **kwargs)

    return wrapper


@validate_spec
def load_switch_spec(spec: SwitchSpec) -> SwitchSpec:
    """Load a switch specification from a document or a path."""
    return spec


def load_ensemble(document: PathLike | str | dict, d: int) -> Ensemble:
    """Load an ensemble, ``basis`` for the equiprobable computational basis.

    :param document: ``basis``, a parsed document or a path
    :type document: PathLike | str | dict
    :param d: Dimension of the states
    :type d: int
    :raises QSwitchSpecError: If the document is malformed or invalid
    :return: The ensemble
    :rtype: Ensemble
    """
    if document == const.ENSEMBLE_BASIS:
        return utils.basis_ensemble(d)

    config = from_dict(EnsembleConfig, _load_document(document, ENSEMBLE_SCHEMA))
    return Ensemble([
        (float(state.p), utils.state_from_value(state.rho, d)) for state in config.states
    ])


def _load_matrix(value: str, d: int, what: str) -> np.ndarray:
    """Return a named state or the matrix stored in the document ``value``."""
    if value in utils.NAMED_STATES:
        return utils.named_state(value, d)

    if not Path(value).is_file():
        raise QSwitchValueError(
            f"The {what} '{value}' is neither a named state "
            f"({', '.join(utils.NAMED_STATES)}) nor a file"
        )

    return utils.decode_matrix(_read_document(value), what)


def _require(cfg: RunConfig, *names: str) -> None:
    missing = [name for name in names if getattr(cfg, name) is None]
    if missing:
        raise QSwitchValueError(
            f"Command '{cfg.command}' needs {', '.join(missing)} to be set"
        )


def _emit(text: str, output: PathLike | None) -> None:
    if output:
        Path(output).write_text(text)
        log.debug("Report written to %s", output)
    else:
        sys.stdout.write(text)


def _output_report(spec: SwitchSpec, rho: np.ndarray, out: SwitchOutput) -> dict:
    return {
        "d": spec.d,
        "N": spec.n,
        "M": spec.m,
        "perms": [perm.to_json() for perm in spec.perms],
        "rho": utils.encode_matrix(rho),
        "control": utils.encode_matrix(spec.control),
        "blocks": [
            [utils.encode_matrix(out.block(p, q)) for q in range(out.m)]
            for p in range(out.m)
        ],
    }


def evaluate(cfg: RunConfig) -> None:
    """Evaluate a switch on one input state and write its output blocks.

    Without a specification document the switch is made of N completely
    depolarising channels of dimension d.

    :param cfg: Run configuration
    :type cfg: RunConfig
    :raises QSwitchValueError: If options are missing or the fast evaluator is
    asked for channels that are not completely depolarising
    :raises QSwitchCheckError: If the two evaluators disagree
    """
    if cfg.spec is not None:
        spec = load_switch_spec(cfg.spec)
    else:
        _require(cfg, "d", "n")
        perms = utils.perms_from_spec(cfg.perms, cfg.n)
        control: Any = (
            const.FOURIER
            if cfg.control == const.FOURIER
            else utils.encode_matrix(_load_matrix(cfg.control, len(perms), "control"))
        )
        spec = load_switch_spec({
            "d": cfg.d,
            "channels": [{"kind": const.CDPC}] * cfg.n,
            "perms": [perm.to_json() for perm in perms],
            "control": control,
        })

    rho = check_density_matrix(_load_matrix(cfg.rho, spec.d, "input state"))
    if rho.shape != (spec.d, spec.d):
        raise QSwitchValueError(f"Input state has shape {rho.shape}, expected d = {spec.d}")

    if cfg.mode != "bruteforce" and not fast.is_cdpc_spec(spec, cfg.tolerance):
        raise QSwitchValueError(
            "The fast evaluator only handles completely depolarising channels"
        )

    log.debug("Evaluate a switch of %d channels over %d orderings", spec.n, spec.m)
    deviation = None
    if cfg.mode == "fast":
        out = fast.switch_output_fast(spec.d, spec.perms, spec.control, rho)
    else:
        out = bruteforce.switch_output(spec, rho)

    report = _output_report(spec, rho, out)
    report["mode"] = cfg.mode
    if cfg.mode == "both":
        deviation = out.max_deviation(
            fast.switch_output_fast(spec.d, spec.perms, spec.control, rho)
        )
        report["max_deviation"] = deviation

    _emit(utils.dumps(report), cfg.output)
    if deviation is not None and deviation > cfg.tolerance:
        raise QSwitchCheckError(
            "Evaluators disagree",
            [f"max deviation {deviation:.3g} exceeds tolerance {cfg.tolerance:.3g}"],
        )


def classify(cfg: RunConfig) -> None:
    """Classify every ordered pair of orderings with both the cycle rule and diagrams.

    :param cfg: Run configuration
    :type cfg: RunConfig
    :raises QSwitchValueError: If N exceeds the classification ceiling
    :raises QSwitchCheckError: If the cycle rule and the diagrams disagree
    """
    _require(cfg, "n")
    if cfg.n > const.MAX_CLASSIFY_N:
        raise QSwitchValueError(
            f"Classification is limited to N <= {const.MAX_CLASSIFY_N}, got N = {cfg.n}"
        )

    perms = utils.perms_from_spec(cfg.perms, cfg.n)
    rows = []
    disagreements = []
    for pi, pi_prime in itertools.product(perms, repeat=2):
        term = fast.classify_term(pi, pi_prime)
        diagram = build_diagram(pi, pi_prime)
        diagram_kind = (
            const.KIND_IDENTITY
            if is_information_transmitting(diagram)
            else const.KIND_DEPOLARISING
        )
        diagram_loops = count_loops(modify_diagram(diagram))
        if diagram_kind != term.kind or diagram_loops != term.cycle_count:
            disagreements.append(f"{pi} {pi_prime}")

        rows.append({
            "pi": str(pi),
            "pi_prime": str(pi_prime),
            "kind": term.kind,
            "cycle_count": term.cycle_count,
            "coeff_exponent": term.coefficient_log_d,
            "cds_sortable": term.cds_sortable,
            "mutually_cyclic": pi != pi_prime and is_mutually_cyclic(pi, pi_prime),
            "diagram_kind": diagram_kind,
            "diagram_loops": diagram_loops,
        })

    display.classification(console, rows)
    if cfg.output_format == "csv":
        buffer = io.StringIO()
        writer = csv.DictWriter(buffer, fieldnames=list(rows[0]), lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
        _emit(buffer.getvalue(), cfg.output)
    else:
        _emit(utils.dumps(rows), cfg.output)

    if disagreements:
        raise QSwitchCheckError("Cycle rule and diagrams disagree", disagreements)


def search(cfg: RunConfig) -> None:
    """Search the M-subsets of orderings of N channels that maximise O(S).

    :param cfg: Run configuration
    :type cfg: RunConfig
    :raises QSwitchValueError: If the search size is infeasible
    :raises QSwitchCheckError: If a maximiser is not pairwise rotated and the
    cyclic check is requested
    """
    _require(cfg, "n", "m", "d")
    if cfg.sample:
        scores = search_sampled(cfg.n, cfg.m, cfg.d, cfg.samples, cfg.seed)
    else:
        scores = search_best(cfg.n, cfg.m, cfg.d, workers=cfg.workers)

    display.maximisers(console, scores)
    if cfg.sample:
        scanned = cfg.samples
    else:
        scanned = math.comb(math.factorial(cfg.n), cfg.m)
    report = {
        "N": cfg.n,
        "M": cfg.m,
        "d": cfg.d,
        "mode": "sampled" if cfg.sample else "exhaustive",
        "cyclic_objective": str(Fraction(cfg.m - 1, cfg.d**2)),
        "objective": float(scores[0].objective),
        "maximizers": [result.to_json() for result in scores],
        "subsets_scanned": scanned,
    }
    if cfg.sample:
        report.update(seed=cfg.seed, samples=cfg.samples)
    _emit(utils.dumps(report), cfg.output)

    if cfg.check_cyclic:
        failures = [
            " ".join(str(perm) for perm in result.perm_set)
            for result in scores
            if not is_pairwise_mutually_cyclic(result.perm_set)
        ]
        if failures:
            raise QSwitchCheckError("Maximisers that are not pairwise cyclic", failures)


def verify(cfg: RunConfig) -> None:
    """Run the verification suite and display a summary table.

    :param cfg: Run configuration
    :type cfg: RunConfig
    :raises QSwitchCheckError: If a check fails
    """
    results = run_suite(
        quick=cfg.quick,
        tolerance=cfg.tolerance,
        seed=const.DEFAULT_SEED if cfg.seed is None else cfg.seed,
        workers=cfg.workers,
    )
    display.checks(console, results)
    if cfg.output:
        _emit(
            utils.dumps([
                {
                    "name": result.name,
                    "status": result.status,
                    "max_error": result.max_error,
                    "detail": result.detail,
                }
                for result in results
            ]),
            cfg.output,
        )

    failures = [f"{r.name}: {r.detail}" for r in results if not r.passed]
    if failures:
        raise QSwitchCheckError("Verification failed", failures)


def holevo(cfg: RunConfig) -> None:
    """Compute the Holevo quantity of an ensemble sent through a depolarising switch.

    Reports the value with the control kept and with the control discarded, next
    to the O(S) score of the orderings.

    :param cfg: Run configuration
    :type cfg: RunConfig
    """
    _require(cfg, "n", "d")
    perms = utils.perms_from_spec(cfg.perms, cfg.n)
    control = (
        utils.control_from_value(const.FOURIER, len(perms))
        if cfg.control == const.FOURIER
        else _load_matrix(cfg.control, len(perms), "control")
    )
    ensemble = load_ensemble(cfg.ensemble, cfg.d)
    objective = score(perms, cfg.d).objective
    report = {
        "N": cfg.n,
        "d": cfg.d,
        "perms": [perm.to_json() for perm in perms],
        "chi": holevo_of_protocol(perms, cfg.d, ensemble, control),
        "chi_control_discarded": holevo_of_protocol(
            perms, cfg.d, ensemble, control, discard_control=True
        ),
        "objective": float(objective),
        "objective_exact": str(objective),
    }
    _emit(utils.dumps(report), cfg.output)
