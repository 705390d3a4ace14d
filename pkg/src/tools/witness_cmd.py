"""
Witness commands - construct, evaluate and certify witness files.

Usage:
    witness construct STATE --special | --corollary --k0 K | --hyperplane [--output W]
    witness evaluate W STATE [STATE ...]
    witness certify W [--output W2]
"""

import logging
from pathlib import Path
from typing import List, Optional, Sequence, Tuple, Union

from core.errors import SearchFailure, ValidationError, WitnessKitError
from core.sequence import SequenceMixture
from criteria.report import CriterionReport, Side
from hyperplane.feature_map import FeatureMap
from hyperplane.search import search
from utils.settings import Settings
from witness.construct import corollary_witness, special_witness
from witness.evaluate import certify, evaluate
from witness.model import Certification, FiniteRankWitness

from .check import EXIT_INPUT_ERROR, EXIT_OK, OUT_OF_MEMORY, prepare_state
from .formatting import banner, format_number, render_reports, to_json
from .state_files import load_state, load_witness, save_witness, witness_to_dict

logger = logging.getLogger(__name__)

CONSTRUCTIONS = ("special", "corollary", "hyperplane")
PathLike = Union[str, Path]


def _emit(witness: FiniteRankWitness, output: Optional[PathLike]) -> str:
    if output is None:
        return to_json(witness_to_dict(witness))
    path = save_witness(witness, output)
    return f"wrote {path}"


def _hyperplane_witness(loaded, settings: Settings) -> Tuple[FiniteRankWitness, CriterionReport]:
    if not loaded.components:
        raise ValidationError("hyperplane construction needs terms labelled with 'component'",
                              field="component")
    fmap = FeatureMap(tuple(loaded.components), settings.tolerances.orthonormality)
    cfg = settings.search_config()
    result = search(fmap, loaded.state, cfg)
    infimum = 1.0 - result.separable_max
    tol = settings.tolerances.certification
    record = Certification(infimum, "seesaw", tol, cfg.optimizer.restarts,
                           cfg.optimizer.seed, infimum >= -tol)
    witness = result.witness().with_certification(record)
    margin = evaluate(witness, loaded.state)
    report = CriterionReport.from_margin(
        "witness", margin, settings.tolerances.report, Side.BELOW,
        construction="hyperplane", components=loaded.component_labels,
        coefficients=[float(a) for a in result.coefficients],
        separable_max=result.separable_max, rounds=len(result.trace),
        remainder_weight=result.remainder_weight)
    return witness, report


def cmd_witness_construct(state_path: PathLike, method: str, settings: Settings,
                          k0: Optional[int] = None, output: Optional[PathLike] = None,
                          as_json: bool = False) -> Tuple[int, str]:
    """
    Build a witness for the state in a file.

    Args:
        state_path: state file
        method: special, corollary or hyperplane
        settings: merged settings
        k0: 1-based term index for the corollary construction
        output: witness file to write; the witness JSON is printed when omitted
        as_json: machine-readable summary

    Returns:
        Tuple of (exit code, output text)
    """
    if method not in CONSTRUCTIONS:
        return EXIT_INPUT_ERROR, f"Error: unknown construction '{method}'"
    try:
        loaded = load_state(state_path, settings.tolerances.validation)
        tol = settings.tolerances.report
        if method == "special":
            witness = special_witness(loaded.state, tol)
            report = CriterionReport.from_margin(
                "witness", evaluate(witness, loaded.state), tol, Side.BELOW,
                construction="special", alpha=witness.alpha, is_witness=witness.is_witness)
        elif method == "corollary":
            if k0 is None:
                raise ValidationError("--corollary needs --k0", field="k0")
            witness, report = corollary_witness(loaded.state, k0 - 1, tol)
        else:
            if isinstance(loaded.state, SequenceMixture):
                raise ValidationError("hyperplane construction needs a finite mixture",
                                      field="kind")
            witness, report = _hyperplane_witness(loaded, settings)
        written = _emit(witness, output)
    except SearchFailure as e:
        logger.info(f"search stopped after {len(e.trace)} rounds")
        return EXIT_INPUT_ERROR, f"Error: {e}"
    except WitnessKitError as e:
        return EXIT_INPUT_ERROR, f"Error: {e}"
    except MemoryError:
        return EXIT_INPUT_ERROR, OUT_OF_MEMORY

    if as_json:
        document = {"state": str(state_path), "witness": witness_to_dict(witness),
                    "reports": [report.to_dict()]}
        if output is not None:
            document["output"] = str(output)
        return EXIT_OK, to_json(document)
    extra = {"construction": method, "alpha": format_number(witness.alpha),
             "terms": len(witness.terms)}
    text = render_reports(f"Witness for {state_path}", [report], extra)
    return EXIT_OK, f"{text}\n{written}"


def cmd_witness_evaluate(witness_path: PathLike, state_paths: Sequence[PathLike],
                         settings: Settings, truncate: Optional[int] = None,
                         as_json: bool = False) -> Tuple[int, str]:
    """Tr(W rho) for every state file, one row each."""
    try:
        witness = load_witness(witness_path)
        tol = settings.tolerances.report
        reports: List[CriterionReport] = []
        for path in state_paths:
            loaded = load_state(path, settings.tolerances.validation)
            if isinstance(loaded.state, SequenceMixture) and not witness.is_finite:
                margin = evaluate(witness, loaded.state)
                info = {}
            else:
                rho, info = prepare_state(loaded.state, settings, truncate)
                margin = evaluate(witness, rho)
            report = CriterionReport.from_margin("witness", margin, tol, Side.BELOW,
                                                 state=str(path), **info)
            reports.append(report)
    except WitnessKitError as e:
        return EXIT_INPUT_ERROR, f"Error: {e}"
    except MemoryError:
        return EXIT_INPUT_ERROR, OUT_OF_MEMORY

    if as_json:
        return EXIT_OK, to_json({"witness": str(witness_path),
                                 "reports": [r.to_dict() for r in reports]})
    lines = banner(f"Witness: {witness_path}")
    lines.append(f"  {'state':<40}{'Tr(W rho)':<22}verdict")
    lines.append("  " + "-" * 70)
    for report in reports:
        lines.append(f"  {report.config['state']:<40}{format_number(report.margin):<22}"
                     f"{report.verdict.value}")
    return EXIT_OK, "\n".join(lines)


def cmd_witness_certify(witness_path: PathLike, settings: Settings,
                        output: Optional[PathLike] = None,
                        as_json: bool = False) -> Tuple[int, str]:
    """
    Attach a certification block; the input file is rewritten unless
    --output is given.
    """
    try:
        witness = load_witness(witness_path)
        record = certify(witness, settings.optimizer, settings.tolerances.certification)
        path = save_witness(witness.with_certification(record), output or witness_path)
    except WitnessKitError as e:
        return EXIT_INPUT_ERROR, f"Error: {e}"

    if as_json:
        return EXIT_OK, to_json({"witness": str(path), "certification": record.to_dict()})
    lines = banner(f"Certification: {witness_path}")
    lines.append(f"  infimum:   {format_number(record.infimum)}")
    lines.append(f"  method:    {record.method}")
    lines.append(f"  restarts:  {record.restarts} (seed {record.seed})")
    lines.append(f"  certified: {record.certified} (tolerance {record.tolerance:g})")
    lines.append(f"  wrote {path}")
    return EXIT_OK, "\n".join(lines)
