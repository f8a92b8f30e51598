"""JSON encodings for matrices, polygonal paths and projections.

A matrix is ``{"re": [[...]], "im": [[...]]}``.  A path is
``{"n", "b", "start", "breakpoints", "exponents"}``.  A projection is either a
plain matrix or ``{"basis": <n x m matrix>}``.
"""

import json
import os
import tempfile

import numpy as np

from .grassmann import as_projection, projection_from_basis
from .unitary_paths import PolygonalPath


def matrix_to_json(A):
    A = np.asarray(A, dtype=np.complex128)
    if A.ndim == 1:
        A = A[:, None]
    return {"re": A.real.tolist(), "im": A.imag.tolist()}


def matrix_from_json(obj):
    try:
        re = np.asarray(obj["re"], dtype=float)
        im = np.asarray(obj.get("im", np.zeros_like(re)), dtype=float)
    except (KeyError, TypeError, AttributeError) as exc:
        raise ValueError(f"not a matrix object: {exc}") from exc
    if re.ndim != 2 or re.shape != im.shape:
        raise ValueError("matrix 're' and 'im' must be 2-D arrays of the same shape")
    return re + 1j * im


def path_to_json(P):
    return {
        "n": P.n,
        "b": P.b,
        "start": matrix_to_json(P.start),
        "breakpoints": [float(t) for t in P.breakpoints],
        "exponents": [matrix_to_json(X) for X in P.exponents],
    }


def path_from_json(obj):
    try:
        start = matrix_from_json(obj["start"])
        path = PolygonalPath(start, obj["breakpoints"], [matrix_from_json(X) for X in obj["exponents"]])
    except KeyError as exc:
        raise ValueError(f"path object missing key {exc}") from exc
    if "n" in obj and obj["n"] != path.n:
        raise ValueError(f"declared n={obj['n']} but start is {path.n} x {path.n}")
    if "b" in obj and not np.isclose(obj["b"], path.b, rtol=1e-12, atol=0.0):
        raise ValueError(f"declared b={obj['b']} but last breakpoint is {path.b}")
    return path


def projection_from_json(obj):
    if isinstance(obj, dict) and "basis" in obj:
        return projection_from_basis(matrix_from_json(obj["basis"]))
    return as_projection(matrix_from_json(obj))


def load_json(path):
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def dump_json(obj):
    return json.dumps(obj, indent=2, sort_keys=True, allow_nan=False) + "\n"


def write_atomic(path, text):
    """Write ``text`` to ``path`` via a temporary file in the same directory and a rename."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(prefix=".tmp-", suffix=".json", dir=directory)
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
