"""JSON encodings of soft objects, frame specs and local-frame documents.

Complex numbers are ``[re, im]`` pairs (a bare real number is accepted on
input).  Decoding errors raise :class:`FrameSpecError` carrying a JSONPath-like
location such as ``$.blocks[2].values.p0[1][0]``.
"""

from __future__ import annotations

import json
import math
from numbers import Real
from pathlib import Path

import numpy as np

from .composition import LocalFrameFamily
from .errors import FrameSpecError
from .gframe import FrameBoundsCertificate, SoftGFrame
from .operators import SoftOperator
from .soft_core import ParameterSet, SoftReal, SoftVector

__all__ = [
    "dumps",
    "load_json",
    "format_float",
    "soft_real_to_json",
    "soft_real_from_json",
    "soft_vector_to_json",
    "soft_vector_from_json",
    "soft_operator_to_json",
    "soft_operator_from_json",
    "frame_to_json",
    "frame_from_json",
    "certificate_to_json",
    "local_frames_from_json",
]


# -- emitting ----------------------------------------------------------------

def format_float(x: float, digits: int = 17) -> str:
    if not math.isfinite(x):
        return "null"
    text = format(x, f".{digits}g")
    if not any(c in text for c in ".en"):
        text += ".0"
    return text


def _is_scalar(obj):
    return obj is None or isinstance(obj, (bool, int, float, str, np.floating, np.integer))


def _scalar(obj):
    if obj is None:
        return "null"
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return format_float(float(obj))
    if isinstance(obj, str):
        return json.dumps(obj)
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _inline(obj) -> bool:
    if _is_scalar(obj):
        return True
    if isinstance(obj, (list, tuple)):
        return all(_is_scalar(x) or (isinstance(x, (list, tuple)) and all(map(_is_scalar, x)))
                   for x in obj)
    return False


def _emit(obj, indent: int) -> str:
    pad = "  " * indent
    if _is_scalar(obj):
        return _scalar(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f'{pad}  {json.dumps(str(k))}: {_emit(v, indent + 1)}' for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + f"\n{pad}}}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        if _inline(obj):
            return "[" + ", ".join(_emit(x, 0) for x in obj) + "]"
        items = [f"{pad}  {_emit(x, indent + 1)}" for x in obj]
        return "[\n" + ",\n".join(items) + f"\n{pad}]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj) -> str:
    """Deterministic JSON with 17 significant digits for every float."""
    return _emit(obj, 0) + "\n"


def load_json(path) -> object:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise FrameSpecError(f"cannot read {path}: {exc.strerror or exc}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FrameSpecError(f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None


# -- encoders ----------------------------------------------------------------

def _complex_list(array):
    return [[float(z.real), float(z.imag)] for z in np.asarray(array).ravel()]


def soft_real_to_json(x: SoftReal) -> dict:
    return {label: float(v) for label, v in x.items()}


def soft_vector_to_json(x: SoftVector) -> dict:
    return {
        "dim": x.dim,
        "values": {label: _complex_list(x.values[i]) for i, label in enumerate(x.params)},
    }


def _matrix_json(m):
    return [_complex_list(row) for row in m]


def soft_operator_to_json(op: SoftOperator) -> dict:
    return {
        "rows": op.rows,
        "cols": op.cols,
        "values": {label: _matrix_json(op.values[i]) for i, label in enumerate(op.params)},
    }


def frame_to_json(F: SoftGFrame, name: str | None = None, description: str | None = None) -> dict:
    doc = {}
    if name is not None:
        doc["name"] = name
    if description is not None:
        doc["description"] = description
    doc["parameters"] = list(F.params.labels)
    doc["ambient_dim"] = F.ambient_dim
    doc["blocks"] = [
        {"rows": b.rows, "values": soft_operator_to_json(b)["values"]} for b in F.blocks
    ]
    return doc


def certificate_to_json(cert: FrameBoundsCertificate) -> dict:
    return {
        "lower": soft_real_to_json(cert.lower),
        "upper": soft_real_to_json(cert.upper),
        "condition": soft_real_to_json(cert.condition),
        "is_frame": cert.is_frame,
        "is_tight": cert.is_tight,
    }


# -- decoders ----------------------------------------------------------------

def _expect(obj, kind, path):
    if not isinstance(obj, kind) or isinstance(obj, bool) and kind is not bool:
        names = kind.__name__ if isinstance(kind, type) else "/".join(k.__name__ for k in kind)
        raise FrameSpecError(f"expected {names}, got {type(obj).__name__}", path)
    return obj


def _field(doc, key, path):
    if key not in doc:
        raise FrameSpecError(f"missing field {key!r}", path)
    return doc[key]


def _positive_int(obj, path):
    if not isinstance(obj, int) or isinstance(obj, bool) or obj < 1:
        raise FrameSpecError(f"expected a positive integer, got {obj!r}", path)
    return obj


def _complex(obj, path) -> complex:
    if isinstance(obj, Real) and not isinstance(obj, bool):
        return complex(float(obj))
    if (isinstance(obj, list) and len(obj) == 2
            and all(isinstance(x, Real) and not isinstance(x, bool) for x in obj)):
        return complex(float(obj[0]), float(obj[1]))
    raise FrameSpecError(f"expected a complex number [re, im], got {obj!r}", path)


def _complex_vector(obj, length, path):
    _expect(obj, list, path)
    if len(obj) != length:
        raise FrameSpecError(f"expected {length} entries, got {len(obj)}", path)
    return [_complex(z, f"{path}[{i}]") for i, z in enumerate(obj)]


def _per_label(values, params, path):
    _expect(values, dict, path)
    missing = [label for label in params if label not in values]
    extra = [label for label in values if label not in params]
    if missing:
        raise FrameSpecError(f"missing parameter label {missing[0]!r}", path)
    if extra:
        raise FrameSpecError(f"unknown parameter label {extra[0]!r}", path)
    return [(label, values[label], f"{path}.{label}") for label in params]


def parameters_from_json(obj, path="$.parameters") -> ParameterSet:
    _expect(obj, list, path)
    for i, label in enumerate(obj):
        _expect(label, str, f"{path}[{i}]")
    try:
        return ParameterSet(obj)
    except ValueError as exc:
        raise FrameSpecError(str(exc), path) from None


def soft_real_from_json(doc, params: ParameterSet, path="$") -> SoftReal:
    vals = []
    for label, v, p in _per_label(doc, params, path):
        if not isinstance(v, Real) or isinstance(v, bool):
            raise FrameSpecError(f"expected a real number, got {v!r}", p)
        vals.append(float(v))
    return SoftReal(params, vals)


def soft_vector_from_json(doc, params: ParameterSet, path="$", dim: int | None = None) -> SoftVector:
    _expect(doc, dict, path)
    n = _positive_int(_field(doc, "dim", path), f"{path}.dim")
    if dim is not None and n != dim:
        raise FrameSpecError(f"vector has dim {n}, expected {dim}", f"{path}.dim")
    rows = [_complex_vector(v, n, p)
            for _, v, p in _per_label(_field(doc, "values", path), params, f"{path}.values")]
    return SoftVector(params, rows)


def _matrix(obj, rows, cols, path):
    _expect(obj, list, path)
    if len(obj) != rows:
        raise FrameSpecError(f"expected {rows} rows, got {len(obj)}", path)
    return [_complex_vector(r, cols, f"{path}[{i}]") for i, r in enumerate(obj)]


def soft_operator_from_json(doc, params: ParameterSet, path="$", cols: int | None = None) -> SoftOperator:
    _expect(doc, dict, path)
    m = _positive_int(_field(doc, "rows", path), f"{path}.rows")
    if "cols" in doc or cols is None:
        n = _positive_int(_field(doc, "cols", path), f"{path}.cols")
        if cols is not None and n != cols:
            raise FrameSpecError(f"block has {n} columns, ambient_dim is {cols}", f"{path}.cols")
    else:
        n = cols
    mats = [_matrix(v, m, n, p)
            for _, v, p in _per_label(_field(doc, "values", path), params, f"{path}.values")]
    return SoftOperator(params, mats)


def frame_from_json(doc) -> SoftGFrame:
    """Decode a frame spec ``{"parameters", "ambient_dim", "blocks"}``."""
    _expect(doc, dict, "$")
    params = parameters_from_json(_field(doc, "parameters", "$"))
    n = _positive_int(_field(doc, "ambient_dim", "$"), "$.ambient_dim")
    blocks = _expect(_field(doc, "blocks", "$"), list, "$.blocks")
    if not blocks:
        raise FrameSpecError("a frame needs at least one block", "$.blocks")
    ops = [soft_operator_from_json(b, params, f"$.blocks[{j}]", cols=n) for j, b in enumerate(blocks)]
    return SoftGFrame(ops)


def local_frames_from_json(doc, F: SoftGFrame, tol: float) -> LocalFrameFamily:
    """Decode ``{"families": [{"vectors": [...], "tight": bool}, ...]}`` against ``F``."""
    _expect(doc, dict, "$")
    fams = _expect(_field(doc, "families", "$"), list, "$.families")
    if len(fams) != len(F):
        raise FrameSpecError(f"expected {len(F)} families (one per block), got {len(fams)}", "$.families")
    families, tight = [], []
    for j, (fam, d) in enumerate(zip(fams, F.block_dims)):
        p = f"$.families[{j}]"
        _expect(fam, dict, p)
        vecs = _expect(_field(fam, "vectors", p), list, f"{p}.vectors")
        if not vecs:
            raise FrameSpecError("a local family needs at least one vector", f"{p}.vectors")
        families.append([soft_vector_from_json(v, F.params, f"{p}.vectors[{k}]", dim=d)
                         for k, v in enumerate(vecs)])
        flag = fam.get("tight", False)
        tight.append(_expect(flag, bool, f"{p}.tight"))
    return LocalFrameFamily(families, tight=tight, tol=tol)
