"""JSON documents for algebras, modules, bimodules, pairs and copairs.

Field elements are integers in ``0..p-1`` and matrices are written as
``{"rows": r, "cols": c, "data": [[...], ...]}`` in row-major order.
Errors carry a JSON-pointer-like path to the offending entry.
"""

from __future__ import annotations

import hashlib
import json
from pathlib import Path

import numpy as np

from .algebra import Algebra, Quiver, build_path_algebra
from .errors import DocumentError, TensorRingError
from .exactla import FieldSpec
from .fdmod import Bimodule, FdModule

FORMAT_VERSION = "1"


def dumps(doc) -> str:
    """Canonical serialization: sorted keys, fixed separators, trailing newline."""
    return json.dumps(doc, sort_keys=True, indent=1, separators=(",", ": ")) + "\n"


def digest(doc) -> str:
    return hashlib.sha256(json.dumps(doc, sort_keys=True, separators=(",", ":")).encode()).hexdigest()[:16]


def read_json(path) -> dict:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise DocumentError(f"cannot read file: {exc.strerror}", str(path)) from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}", str(path)) from exc


def write_json(path, doc) -> None:
    Path(path).write_text(dumps(doc), encoding="utf-8")


# -- primitives ------------------------------------------------------------


def _get(doc, key, path):
    if not isinstance(doc, dict):
        raise DocumentError("expected an object", path)
    if key not in doc:
        raise DocumentError(f"missing key {key!r}", path)
    return doc[key]


def _int(value, path, lo=None, hi=None) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise DocumentError(f"expected an integer, got {value!r}", path)
    if (lo is not None and value < lo) or (hi is not None and value > hi):
        raise DocumentError(f"value {value} out of range [{lo}, {hi}]", path)
    return value


def _array(value, shape, p, path) -> np.ndarray:
    """Nested integer list of the given shape with entries in 0..p-1."""
    try:
        arr = np.array(value, dtype=object)
    except ValueError as exc:
        raise DocumentError("ragged array", path) from exc
    if arr.shape != tuple(shape):
        if arr.size == 0 and int(np.prod(shape)) == 0:
            return np.zeros(shape, dtype=np.int64)
        raise DocumentError(f"expected shape {tuple(shape)}, got {arr.shape}", path)
    for idx, v in np.ndenumerate(arr):
        _int(v, path + "".join(f"/{k}" for k in idx), 0, p - 1)
    return arr.astype(np.int64)


def matrix_to_json(m: np.ndarray) -> dict:
    m = np.asarray(m)
    return {"rows": int(m.shape[0]), "cols": int(m.shape[1]), "data": m.astype(int).tolist()}


def matrix_from_json(doc, p: int, path: str = "", shape=None) -> np.ndarray:
    rows = _int(_get(doc, "rows", path), path + "/rows", 0)
    cols = _int(_get(doc, "cols", path), path + "/cols", 0)
    if shape is not None and (rows, cols) != tuple(shape):
        raise DocumentError(f"expected a {shape[0]}x{shape[1]} matrix, got {rows}x{cols}", path)
    return _array(_get(doc, "data", path), (rows, cols), p, path + "/data")


def field_from_json(doc, path: str = "/field") -> FieldSpec:
    p = _int(_get(doc, "p", path), path + "/p", 2)
    try:
        return FieldSpec(p)
    except (ValueError, TensorRingError) as exc:
        raise DocumentError(str(exc), path + "/p") from exc


# -- algebras --------------------------------------------------------------


def algebra_to_json(a: Algebra) -> dict:
    return {
        "field": {"p": a.p},
        "dim": a.dim,
        "labels": list(a.labels),
        "unit": a.unit.astype(int).tolist(),
        "structconst": a.struct.astype(int).tolist(),
        "idempotents": a.idempotents.astype(int).tolist(),
        "radical": a.radical.astype(int).tolist(),
    }


def quiver_from_json(doc, field: FieldSpec, path: str = "") -> Algebra:
    n = _int(_get(doc, "vertices", path), path + "/vertices", 1)
    arrows = []
    for k, arr in enumerate(_get(doc, "arrows", path)):
        ap = f"{path}/arrows/{k}"
        name = _get(arr, "name", ap)
        if not isinstance(name, str) or not name:
            raise DocumentError("arrow name must be a non-empty string", ap + "/name")
        src = _int(_get(arr, "from", ap), ap + "/from", 0, n - 1)
        tgt = _int(_get(arr, "to", ap), ap + "/to", 0, n - 1)
        arrows.append((name, src, tgt))
    rels = doc.get("relations", [])
    order = doc.get("order", "right-to-left")
    try:
        return build_path_algebra(field, Quiver(n, tuple(arrows)), rels, order=order)
    except (TensorRingError, ValueError, KeyError) as exc:
        raise DocumentError(str(exc), path) from exc


def algebra_from_json(doc, path: str = "") -> Algebra:
    """Load either a structure-constant document or a quiver document."""
    field = field_from_json(_get(doc, "field", path), path + "/field")
    if "arrows" in doc:
        return quiver_from_json(doc, field, path)
    p = field.p
    d = _int(_get(doc, "dim", path), path + "/dim", 1)
    struct = _array(_get(doc, "structconst", path), (d, d, d), p, path + "/structconst")
    unit = _array(_get(doc, "unit", path), (d,), p, path + "/unit")
    idem_raw = _get(doc, "idempotents", path)
    idem = _array(idem_raw, (len(idem_raw), d), p, path + "/idempotents")
    rad_raw = _get(doc, "radical", path)
    rad = _array(rad_raw, (len(rad_raw), d), p, path + "/radical") if rad_raw else np.zeros((0, d), dtype=np.int64)
    labels = doc.get("labels")
    try:
        return Algebra(field, struct, unit, idem, rad, labels=labels)
    except TensorRingError as exc:
        raise DocumentError(str(exc), path) from exc


# -- modules ---------------------------------------------------------------


def _stack_to_json(acts: np.ndarray) -> list:
    return acts.astype(int).tolist()


def module_to_json(x: FdModule, side: str = "left") -> dict:
    return {"dim": x.dim, "side": side, "actions": _stack_to_json(x.actions)}


def module_from_json(doc, alg: Algebra, path: str = "") -> FdModule:
    """``alg`` is the algebra acting on the left (``A.opposite`` for right modules)."""
    n = _int(_get(doc, "dim", path), path + "/dim", 0)
    acts = _array(_get(doc, "actions", path), (alg.dim, n, n), alg.p, path + "/actions")
    try:
        return FdModule(alg, acts, check=True)
    except TensorRingError as exc:
        raise DocumentError(str(exc), path) from exc


def bimodule_to_json(m: Bimodule) -> dict:
    return {"dim": m.dim, "left": _stack_to_json(m.left), "right": _stack_to_json(m.right)}


def bimodule_from_json(doc, left: Algebra, right: Algebra | None = None, path: str = "") -> Bimodule:
    right = right or left
    n = _int(_get(doc, "dim", path), path + "/dim", 0)
    lacts = _array(_get(doc, "left", path), (left.dim, n, n), left.p, path + "/left")
    racts = _array(_get(doc, "right", path), (right.dim, n, n), right.p, path + "/right")
    try:
        return Bimodule(left, right, lacts, racts, check=True)
    except TensorRingError as exc:
        raise DocumentError(str(exc), path) from exc


def pair_to_json(pair) -> dict:
    return {"X": module_to_json(pair.x), "u": matrix_to_json(pair.u)}


def pair_from_json(doc, tp, path: str = ""):
    from .tring import PairModule

    x = module_from_json(_get(doc, "X", path), tp.base, path + "/X")
    probe = PairModule(tp, x, None, check=False)
    u = matrix_from_json(_get(doc, "u", path), tp.p, path + "/u", (x.dim, probe.tensor.dim))
    try:
        return PairModule(tp, x, u, check=True, tensor=probe.tensor)
    except TensorRingError as exc:
        raise DocumentError(str(exc), path + "/u") from exc


def copair_to_json(cp) -> dict:
    return {"Y": module_to_json(cp.y, side="right"), "vbar": matrix_to_json(cp.vbar)}


def copair_from_json(doc, tp, path: str = ""):
    from .tring import CopairModule

    y = module_from_json(_get(doc, "Y", path), tp.base.opposite, path + "/Y")
    probe = CopairModule(tp, y, None, check=False)
    vbar = matrix_from_json(_get(doc, "vbar", path), tp.p, path + "/vbar", (y.dim, probe.tensor.dim))
    try:
        return CopairModule(tp, y, vbar, check=True, tensor=probe.tensor)
    except TensorRingError as exc:
        raise DocumentError(str(exc), path + "/vbar") from exc


# -- manifests ---------------------------------------------------------------


def manifest(field_p: int, algebra_file: str = "algebra.json", bimodule_file: str = "bimodule.json") -> dict:
    return {"version": FORMAT_VERSION, "field": {"p": field_p}, "algebra": algebra_file, "bimodule": bimodule_file}


def load_instance(algebra_path, bimodule_path=None) -> tuple[Algebra, Bimodule]:
    """Load ``(R, M)`` from two files, or from a directory holding ``manifest.json``."""
    base = Path(algebra_path)
    if base.is_dir():
        mpath = base / "manifest.json"
        man = read_json(mpath)
        version = _get(man, "version", str(mpath))
        if version != FORMAT_VERSION:
            raise DocumentError(f"unsupported manifest version {version!r}", f"{mpath}/version")
        alg_file = base / _get(man, "algebra", str(mpath))
        bim_file = base / _get(man, "bimodule", str(mpath))
        field = field_from_json(_get(man, "field", str(mpath)), f"{mpath}/field")
    else:
        if bimodule_path is None:
            raise DocumentError("a bimodule document is required", str(base))
        alg_file, bim_file, field = base, Path(bimodule_path), None
    alg = algebra_from_json(read_json(alg_file), str(alg_file))
    if field is not None and field.p != alg.p:
        raise DocumentError(f"manifest field F_{field.p} differs from algebra field F_{alg.p}", str(alg_file))
    bim = bimodule_from_json(read_json(bim_file), alg, path=str(bim_file))
    return alg, bim


def save_instance(directory, alg: Algebra, bim: Bimodule) -> None:
    d = Path(directory)
    d.mkdir(parents=True, exist_ok=True)
    write_json(d / "algebra.json", algebra_to_json(alg))
    write_json(d / "bimodule.json", bimodule_to_json(bim))
    write_json(d / "manifest.json", manifest(alg.p))
