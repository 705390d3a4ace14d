"""
State and Witness Files - JSON formats read and written by the CLI

State file kinds:

    {"kind": "mixture", "dims": [3, 3], "basis": "computational",
     "terms": [{"weight": 0.2, "coefficients": [[re, im], ...],
                "component": "rho1"}, ...]}

    {"kind": "dense", "dims": [2, 2], "matrix": [[[re, im], ...], ...]}

    {"kind": "sequence-mixture",
     "terms": [{"weight": 0.65, "family": "inverse-linear", "shift": 0}, ...]}

Coefficients are row-major over the product basis (index i * dim_b + j);
a plain number is accepted for a real entry. Mixture terms sharing a
"component" label form one normalized component of a feature map.

Witness file:

    {"alpha": 0.333, "dims": [3, 3], "is_witness": true,
     "terms": [{"lambda": -1.0, "coefficients": [...]}
               or {"lambda": -1.0, "family": "inverse-linear", "shift": 0}],
     "certification": {"infimum": ..., "method": "seesaw", ...}}

Floats are written with repr(), the shortest decimal that reads back to
the same double, so files round-trip bit-identically.
"""

import json
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple, Union

import numpy as np

from core.bipartite import BipartiteVector, DensityOperator, assemble_mixture
from core.errors import StateFileError, ValidationError
from core.sequence import SequenceMixture, SequenceVector, WeightFamily
from core.tolerances import DEFAULT_TOLERANCES
from witness.model import Certification, FiniteRankWitness

STATE_KINDS = ("mixture", "dense", "sequence-mixture")

StateLike = Union[DensityOperator, SequenceMixture]


@dataclass
class StateFile:
    """Parsed state file."""
    path: Optional[Path]
    kind: str
    state: StateLike
    components: Optional[List[DensityOperator]] = None
    component_labels: Optional[List[str]] = None


def _line_of(text: str, field: Optional[str]) -> Optional[int]:
    """Best-effort line of a dotted field path such as terms[2].weight."""
    if not text or not field:
        return None
    parts = re.findall(r"([A-Za-z_-]+)(?:\[(\d+)\])?", field)
    if not parts:
        return None
    key = parts[-1][0]
    occurrence = 0
    if len(parts) >= 2 and parts[-2][1]:
        occurrence = int(parts[-2][1])
    matches = [m.start() for m in re.finditer(f'"{re.escape(key)}"', text)]
    if not matches:
        return None
    position = matches[min(occurrence, len(matches) - 1)]
    return text.count("\n", 0, position) + 1


def _fail(message: str, field: Optional[str], text: str) -> StateFileError:
    return StateFileError(message, field=field, line=_line_of(text, field))


def _complex_entries(raw: Any, field: str, text: str) -> np.ndarray:
    if not isinstance(raw, list):
        raise _fail("expected a list of [re, im] entries", field, text)
    values = []
    for position, entry in enumerate(raw):
        if isinstance(entry, (int, float)) and not isinstance(entry, bool):
            values.append(complex(entry, 0.0))
        elif (isinstance(entry, list) and len(entry) == 2
              and all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in entry)):
            values.append(complex(entry[0], entry[1]))
        else:
            raise _fail(f"entry {position} is not a number or [re, im] pair", field, text)
    return np.array(values, dtype=complex)


def _dims(data: Dict[str, Any], text: str) -> Tuple[int, int]:
    dims = data.get("dims")
    if (not isinstance(dims, list) or len(dims) != 2
            or not all(isinstance(d, int) and not isinstance(d, bool) and d >= 1 for d in dims)):
        raise _fail("dims must be two positive integers", "dims", text)
    return dims[0], dims[1]


def _number(term: Dict[str, Any], key: str, field: str, text: str) -> float:
    value = term.get(key)
    if not isinstance(value, (int, float)) or isinstance(value, bool):
        raise _fail(f"'{key}' must be a number", field, text)
    return float(value)


def _read_json(path: Path) -> Tuple[Any, str]:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise StateFileError(f"cannot read {path}: {e}")
    try:
        return json.loads(text), text
    except json.JSONDecodeError as e:
        raise StateFileError(f"invalid JSON: {e.msg}", line=e.lineno)


def parse_state(data: Any, text: str = "", path: Optional[Path] = None,
                tol: float = DEFAULT_TOLERANCES.validation) -> StateFile:
    """
    Validate a decoded state document.

    Args:
        data: decoded JSON
        text: original text, used to locate offending fields
        path: source file for messages
        tol: validation tolerance

    Returns:
        StateFile
    """
    if not isinstance(data, dict):
        raise _fail("state file must be a JSON object", None, text)
    kind = data.get("kind")
    if kind not in STATE_KINDS:
        raise _fail(f"kind must be one of {', '.join(STATE_KINDS)}", "kind", text)
    basis = data.get("basis", "computational")
    if basis != "computational":
        raise _fail(f"unsupported basis '{basis}'", "basis", text)
    terms = data.get("terms")
    if kind != "dense" and (not isinstance(terms, list) or not terms):
        raise _fail("terms must be a non-empty list", "terms", text)

    try:
        if kind == "sequence-mixture":
            parsed = []
            for index, term in enumerate(terms):
                field = f"terms[{index}]"
                if not isinstance(term, dict):
                    raise _fail("term must be an object", field, text)
                weight = _number(term, "weight", f"{field}.weight", text)
                family = term.get("family")
                if not isinstance(family, str):
                    raise _fail("family must be a string", f"{field}.family", text)
                shift = term.get("shift", 0)
                if not isinstance(shift, int) or isinstance(shift, bool):
                    raise _fail("shift must be an integer", f"{field}.shift", text)
                parsed.append((weight, SequenceVector(WeightFamily.parse(family), shift)))
            return StateFile(path, kind, SequenceMixture(tuple(parsed), tol))

        dim_a, dim_b = _dims(data, text)
        if kind == "dense":
            rows = data.get("matrix")
            if not isinstance(rows, list) or len(rows) != dim_a * dim_b:
                raise _fail(f"matrix must have {dim_a * dim_b} rows", "matrix", text)
            entries = []
            for r, row in enumerate(rows):
                entries.append(_complex_entries(row, f"matrix[{r}]", text))
                if entries[-1].shape[0] != dim_a * dim_b:
                    raise _fail(f"row {r} needs {dim_a * dim_b} entries", "matrix", text)
            matrix = np.stack(entries)
            return StateFile(path, kind, DensityOperator.from_matrix(matrix, dim_a, dim_b, tol))

        parsed = []
        labels: List[Optional[str]] = []
        for index, term in enumerate(terms):
            field = f"terms[{index}]"
            if not isinstance(term, dict):
                raise _fail("term must be an object", field, text)
            weight = _number(term, "weight", f"{field}.weight", text)
            amplitudes = _complex_entries(term.get("coefficients"), f"{field}.coefficients", text)
            if amplitudes.shape[0] != dim_a * dim_b:
                raise _fail(f"expected {dim_a * dim_b} coefficients, got {amplitudes.shape[0]}",
                            f"{field}.coefficients", text)
            parsed.append((weight, BipartiteVector.from_amplitudes(amplitudes, dim_a, dim_b)))
            label = term.get("component")
            if label is not None and not isinstance(label, str):
                raise _fail("component must be a string", f"{field}.component", text)
            labels.append(label)
        state = assemble_mixture(parsed, tol=tol)
        components, names = _components(parsed, labels, tol)
        return StateFile(path, kind, state, components, names)
    except StateFileError:
        raise
    except ValidationError as e:
        raise StateFileError(str(e), field=e.field, line=_line_of(text, e.field))


def _components(parsed, labels, tol) -> Tuple[Optional[List[DensityOperator]], Optional[List[str]]]:
    """Group labelled terms into normalized component states."""
    if not any(labels):
        return None, None
    groups: Dict[str, List[Tuple[float, BipartiteVector]]] = {}
    for (weight, vector), label in zip(parsed, labels):
        if label is None:
            continue
        groups.setdefault(label, []).append((weight, vector))
    components, names = [], []
    for label, members in groups.items():
        total = sum(w for w, _ in members)
        if total <= 0:
            # a zero-weight component still defines a direction: weigh members equally
            members = [(1.0, v) for _, v in members]
            total = float(len(members))
        components.append(assemble_mixture([(w / total, v) for w, v in members], tol=tol))
        names.append(label)
    return components, names


def load_state(path: Union[str, Path],
               tol: float = DEFAULT_TOLERANCES.validation) -> StateFile:
    """Read and validate a state file."""
    path = Path(path)
    data, text = _read_json(path)
    return parse_state(data, text, path, tol)


def _pairs(values: np.ndarray) -> List[List[float]]:
    return [[float(v.real), float(v.imag)] for v in np.asarray(values).ravel()]


def state_to_dict(state: StateLike, labels: Optional[List[Optional[str]]] = None) -> Dict[str, Any]:
    """Serialize a state; dense states without a decomposition keep their matrix."""
    if isinstance(state, SequenceMixture):
        return {
            "kind": "sequence-mixture",
            "terms": [{"weight": p, "family": v.family.label, "shift": v.row_shift}
                      for p, v in state.terms],
        }
    if state.terms:
        terms = []
        for index, (weight, vector) in enumerate(state.terms):
            entry = {"weight": weight, "coefficients": _pairs(vector.ket())}
            if labels and labels[index]:
                entry["component"] = labels[index]
            terms.append(entry)
        return {"kind": "mixture", "dims": list(state.dims), "basis": "computational",
                "terms": terms}
    return {"kind": "dense", "dims": list(state.dims), "basis": "computational",
            "matrix": [_pairs(row) for row in state.matrix]}


def witness_to_dict(witness: FiniteRankWitness) -> Dict[str, Any]:
    terms = []
    for lam, vector in witness.terms:
        if isinstance(vector, SequenceVector):
            terms.append({"lambda": lam, "family": vector.family.label,
                          "shift": vector.row_shift})
        else:
            terms.append({"lambda": lam, "coefficients": _pairs(vector.ket())})
    data: Dict[str, Any] = {"alpha": witness.alpha}
    if witness.dims is not None:
        data["dims"] = list(witness.dims)
    if witness.is_witness is not None:
        data["is_witness"] = witness.is_witness
    data["terms"] = terms
    if witness.certification is not None:
        data["certification"] = witness.certification.to_dict()
    return data


def parse_witness(data: Any, text: str = "") -> FiniteRankWitness:
    """Validate a decoded witness document."""
    if not isinstance(data, dict):
        raise _fail("witness file must be a JSON object", None, text)
    alpha = _number(data, "alpha", "alpha", text)
    terms = data.get("terms")
    if not isinstance(terms, list):
        raise _fail("terms must be a list", "terms", text)
    dims = _dims(data, text) if "dims" in data else None
    try:
        parsed = []
        for index, term in enumerate(terms):
            field = f"terms[{index}]"
            if not isinstance(term, dict):
                raise _fail("term must be an object", field, text)
            lam = _number(term, "lambda", f"{field}.lambda", text)
            if "family" in term:
                shift = term.get("shift", 0)
                if not isinstance(shift, int) or isinstance(shift, bool):
                    raise _fail("shift must be an integer", f"{field}.shift", text)
                parsed.append((lam, SequenceVector(WeightFamily.parse(term["family"]), shift)))
                continue
            if dims is None:
                raise _fail("finite witness terms need dims", "dims", text)
            amplitudes = _complex_entries(term.get("coefficients"), f"{field}.coefficients", text)
            if amplitudes.shape[0] != dims[0] * dims[1]:
                raise _fail(f"expected {dims[0] * dims[1]} coefficients, got "
                            f"{amplitudes.shape[0]}", f"{field}.coefficients", text)
            parsed.append((lam, BipartiteVector.from_amplitudes(amplitudes, *dims)))
        certification = None
        if data.get("certification") is not None:
            try:
                certification = Certification.from_dict(data["certification"])
            except (KeyError, TypeError, ValueError) as e:
                raise _fail(f"bad certification block: {e}", "certification", text)
        flag = data.get("is_witness")
        return FiniteRankWitness(alpha, tuple(parsed), certification,
                                 bool(flag) if flag is not None else None)
    except StateFileError:
        raise
    except ValidationError as e:
        raise StateFileError(str(e), field=e.field, line=_line_of(text, e.field))


def load_witness(path: Union[str, Path]) -> FiniteRankWitness:
    data, text = _read_json(Path(path))
    return parse_witness(data, text)


def write_json(path: Union[str, Path], data: Dict[str, Any]) -> Path:
    """Write a document as UTF-8 JSON."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
        json.dump(data, f, indent=2)
        f.write("\n")
    return path


def save_witness(witness: FiniteRankWitness, path: Union[str, Path]) -> Path:
    return write_json(path, witness_to_dict(witness))


def save_state(state: StateLike, path: Union[str, Path],
               labels: Optional[List[Optional[str]]] = None) -> Path:
    return write_json(path, state_to_dict(state, labels))
