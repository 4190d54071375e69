"""Loader for user-supplied Hamiltonians.

The file is a JSON document::

    {
      "dim": 2,
      "terms": [
        {"coefficient": [1.0, 0.0], "frequency": 0.0,
         "matrix": [[[0, 0], [1, 0]], [[1, 0], [0, 0]]]}
      ]
    }

and describes ``H(t) = sum_terms coefficient * exp(i * frequency * t) * matrix``.
Matrix entries and the coefficient are ``[re, im]`` pairs; ``frequency`` is
optional (default 0, i.e. a constant term).
"""

from __future__ import annotations

import cmath
import json
import math
import re
from pathlib import Path

import numpy as np

from .models import ZERO_DIAGONAL_RTOL, TimeDependentHamiltonian, constant_hamiltonian

_NONFINITE = re.compile(r"-?\b(?:NaN|Infinity)\b")


class HamiltonianFileError(ValueError):
    pass


def _line_col(text: str, pos: int) -> tuple[int, int]:
    line = text.count("\n", 0, pos) + 1
    col = pos - (text.rfind("\n", 0, pos) + 1) + 1
    return line, col


def _reject_constant(name):
    raise HamiltonianFileError(f"non-finite literal {name!r}")


def _complex(value, where: str) -> complex:
    if (not isinstance(value, list) or len(value) != 2
            or not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in value)):
        raise HamiltonianFileError(f"{where}: expected a [re, im] pair, got {value!r}")
    re_, im_ = float(value[0]), float(value[1])
    if not (math.isfinite(re_) and math.isfinite(im_)):
        raise HamiltonianFileError(f"{where}: non-finite value")
    return complex(re_, im_)


def _matrix(rows, dim: int, where: str) -> np.ndarray:
    if not isinstance(rows, list) or len(rows) != dim:
        raise HamiltonianFileError(f"{where}: expected {dim} rows")
    out = np.zeros((dim, dim), dtype=np.complex128)
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != dim:
            raise HamiltonianFileError(f"{where} row {i + 1}: expected {dim} entries (matrix must be square)")
        for j, entry in enumerate(row):
            out[i, j] = _complex(entry, f"{where}[{i + 1},{j + 1}]")
    return out


def parse_hamiltonian(text: str) -> TimeDependentHamiltonian:
    m = _NONFINITE.search(text)
    if m:
        line, col = _line_col(text, m.start())
        raise HamiltonianFileError(f"line {line}, column {col}: non-finite literal {m.group()!r}")
    try:
        doc = json.loads(text, parse_constant=_reject_constant)
    except json.JSONDecodeError as exc:
        raise HamiltonianFileError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if not isinstance(doc, dict):
        raise HamiltonianFileError("top level must be an object with 'dim' and 'terms'")
    dim = doc.get("dim")
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
        raise HamiltonianFileError(f"'dim' must be a positive integer, got {dim!r}")
    terms = doc.get("terms")
    if not isinstance(terms, list) or not terms:
        raise HamiltonianFileError("'terms' must be a non-empty list")

    parsed = []
    for k, term in enumerate(terms):
        where = f"terms[{k}]"
        if not isinstance(term, dict):
            raise HamiltonianFileError(f"{where}: expected an object")
        coeff = _complex(term.get("coefficient", [1.0, 0.0]), f"{where}.coefficient")
        freq = term.get("frequency", 0.0)
        if not isinstance(freq, (int, float)) or isinstance(freq, bool) or not math.isfinite(freq):
            raise HamiltonianFileError(f"{where}.frequency: expected a finite real number")
        parsed.append((coeff, float(freq), _matrix(term.get("matrix"), dim, f"{where}.matrix")))

    if all(freq == 0.0 for _, freq, _ in parsed):
        return constant_hamiltonian(sum(c * mat for c, _, mat in parsed))

    zero_diag = all(
        np.linalg.norm(np.diag(mat)) <= ZERO_DIAGONAL_RTOL * max(1.0, np.linalg.norm(mat))
        for _, _, mat in parsed
    )

    def evaluate(t: float) -> np.ndarray:
        h = np.zeros((dim, dim), dtype=np.complex128)
        for c, freq, mat in parsed:
            h += (c * cmath.exp(1j * freq * t)) * mat
        return h

    return TimeDependentHamiltonian(dim, evaluate, has_zero_diagonal=zero_diag)


def load_custom_hamiltonian(path) -> TimeDependentHamiltonian:
    return parse_hamiltonian(Path(path).read_text())
