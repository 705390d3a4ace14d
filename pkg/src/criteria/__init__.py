"""
Criteria - PPT and realignment separability tests with raw margins.
"""

from .ppt import partial_transpose, ppt_check
from .realignment import realign, realignment_check, trace_norm
from .report import CriterionReport, Side, Verdict, verdict_for

__all__ = [
    'partial_transpose', 'ppt_check',
    'realign', 'realignment_check', 'trace_norm',
    'CriterionReport', 'Side', 'Verdict', 'verdict_for',
]
