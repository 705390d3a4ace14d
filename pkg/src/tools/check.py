"""
Check command - run every criterion on one state file.

Exit codes: 0 when the run completes (whatever the verdicts), 2 on input
or configuration errors.
"""

import logging
from dataclasses import replace
from pathlib import Path
from typing import Any, Dict, Optional, Tuple, Union

from core.bipartite import DensityOperator, TruncationSpec
from core.errors import ValidationError, WitnessKitError
from core.sequence import SequenceMixture
from core.truncation import default_truncation, truncate_normalize
from criteria.ppt import ppt_check
from criteria.realignment import realignment_check
from criteria.report import CriterionReport, Side
from utils.settings import Settings
from witness.evaluate import evaluate

from .formatting import render_reports, to_json
from .state_files import load_state, load_witness

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_ROW_FAILED = 1
EXIT_INPUT_ERROR = 2

OUT_OF_MEMORY = "Error: state too large for dense evaluation; pass a smaller --truncate"


def _check_dense_size(rows: int, cols: int, settings: Settings) -> None:
    limit = settings.tolerances.max_dense_dim
    if rows * cols > limit:
        raise ValidationError(f"truncated dimension {rows}x{cols} = {rows * cols} exceeds "
                              f"max_dense_dim {limit}; pass a smaller --truncate",
                              field="truncate")


def prepare_state(state: Union[DensityOperator, SequenceMixture], settings: Settings,
                  truncate: Optional[int] = None) -> Tuple[DensityOperator, Dict[str, Any]]:
    """
    Dense state the criteria can run on, plus truncation metadata.

    Sequence mixtures are always truncated (default size from the tail
    tolerance); dense states only when --truncate is given. Truncations
    above tolerances.max_dense_dim are refused before any matrix is built.
    """
    if isinstance(state, SequenceMixture):
        spec, tail = default_truncation(state, settings.tolerances, truncate)
        _check_dense_size(spec.k, spec.l, settings)
        info = {"N": spec.l, "rows": spec.k, "cols": spec.l, "tail": tail}
        return truncate_normalize(state, spec, settings.tolerances.validation), info
    if truncate is None:
        return state, {}
    spec = TruncationSpec(min(truncate, state.dim_a), min(truncate, state.dim_b))
    info = {"N": truncate, "rows": spec.k, "cols": spec.l}
    return truncate_normalize(state, spec, settings.tolerances.validation), info


def cmd_check(state_path: Union[str, Path], settings: Settings,
              truncate: Optional[int] = None, witness_path: Optional[Union[str, Path]] = None,
              as_json: bool = False) -> Tuple[int, str]:
    """
    PPT, realignment and (optionally) witness evaluation on a state file.

    Args:
        state_path: state file
        settings: merged settings (tolerances.report is --tol)
        truncate: --truncate N
        witness_path: --witness file to evaluate as well
        as_json: emit JSON instead of a table

    Returns:
        Tuple of (exit code, output text)
    """
    try:
        loaded = load_state(state_path, settings.tolerances.validation)
        rho, truncation = prepare_state(loaded.state, settings, truncate)
        tol = settings.tolerances.report
        config = dict(settings.describe(), dims=list(rho.dims))
        if truncation:
            config["truncation"] = truncation

        reports = []
        for check in (ppt_check(rho, tol), realignment_check(rho, tol)):
            reports.append(CriterionReport(check.criterion, check.verdict, check.margin,
                                           check.tolerance, dict(config)))
        if witness_path is not None:
            witness = load_witness(witness_path)
            if isinstance(loaded.state, SequenceMixture) and not witness.is_finite:
                margin = evaluate(witness, loaded.state)
            else:
                margin = evaluate(witness, rho)
            report = CriterionReport.from_margin("witness", margin, tol, Side.BELOW)
            reports.append(replace(report, config=dict(config, witness=str(witness_path))))
    except WitnessKitError as e:
        logger.debug(f"check failed: {e}")
        return EXIT_INPUT_ERROR, f"Error: {e}"
    except MemoryError:
        return EXIT_INPUT_ERROR, OUT_OF_MEMORY

    if as_json:
        document = {"state": str(state_path), "kind": loaded.kind,
                    "reports": [r.to_dict() for r in reports]}
        return EXIT_OK, to_json(document)
    extra = {"dims": f"{rho.dim_a}x{rho.dim_b}", "kind": loaded.kind}
    if truncation:
        extra["truncation"] = (f"N={truncation['N']} ({truncation['rows']}x{truncation['cols']})"
                               + (f", tail {truncation['tail']:.3g}" if "tail" in truncation
                                  else ""))
    return EXIT_OK, render_reports(f"State: {state_path}", reports, extra)
