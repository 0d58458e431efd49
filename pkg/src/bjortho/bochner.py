"""Vector-valued functions on a discrete measure, i.e. elements of L^p(mu, X)."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidArgument
from .measure import (DiscreteMeasure, measure_from_dict, measure_to_dict,
                      product_measure)
from .space import (SmoothSpace, as_vector, row_norms, space_from_dict,
                    space_to_dict, vector_from_json, vector_to_json)


@dataclass(frozen=True, eq=False)
class BochnerFunction:
    measure: DiscreteMeasure
    space: SmoothSpace
    values: np.ndarray  # shape (atoms, dim)

    def __post_init__(self):
        V = np.asarray(self.values)
        n, d = len(self.measure), self.space.dim
        if V.ndim == 1 and d == 1:
            V = V.reshape(-1, 1)
        if V.shape != (n, d):
            raise InvalidArgument(
                f"values of shape {V.shape} do not match {n} atoms x dim {d}")
        if np.iscomplexobj(V) and not self.space.is_complex:
            if np.any(V.imag != 0):
                raise InvalidArgument("complex values in a real space")
            V = V.real
        V = np.array(V, dtype=self.space.dtype)
        if not np.all(np.isfinite(V)):
            raise InvalidArgument("values must be finite")
        V.setflags(write=False)
        object.__setattr__(self, "values", V)

    def pointwise_norms(self) -> np.ndarray:
        return row_norms(self.space, self.values)

    def __add__(self, other):
        _check_compatible(self, other)
        return self._new(self.values + other.values)

    def __sub__(self, other):
        _check_compatible(self, other)
        return self._new(self.values - other.values)

    def __neg__(self):
        return self._new(-self.values)

    def scale(self, a) -> "BochnerFunction":
        if not self.space.is_complex and np.iscomplexobj(a) and np.imag(a) != 0:
            raise InvalidArgument("complex scalar on a real space")
        return self._new(self.values * (a if self.space.is_complex else np.real(a)))

    def _new(self, V):
        return BochnerFunction(self.measure, self.space, V)

    def is_zero(self) -> bool:
        return not np.any(self.values != 0)


def _check_compatible(f: BochnerFunction, g: BochnerFunction):
    if f.measure != g.measure:
        raise InvalidArgument("functions live on different measures")
    if f.space != g.space:
        raise InvalidArgument("functions take values in different spaces")


def zero_function(m: DiscreteMeasure, sp: SmoothSpace) -> BochnerFunction:
    return BochnerFunction(m, sp, np.zeros((len(m), sp.dim), dtype=sp.dtype))


def scalar_function(m: DiscreteMeasure, values, field: str = "real") -> BochnerFunction:
    sp = SmoothSpace(field, 1, "scalar")
    return BochnerFunction(m, sp, np.asarray(values).reshape(-1, 1))


def lp_norm(f: BochnerFunction, p: float) -> float:
    """(sum_s w_s ||f(s)||^p)^(1/p)."""
    if not p >= 1:
        raise InvalidArgument(f"need p >= 1, got {p}")
    r = f.pointwise_norms()
    m = r.max()
    if m == 0:
        return 0.0
    return float(m * np.dot(f.measure.weights, (r / m) ** p) ** (1.0 / p))


def zero_set(f: BochnerFunction, eps_zero: float = 0.0) -> np.ndarray:
    """Indices of atoms where ||f(s)|| <= eps_zero."""
    if eps_zero < 0:
        raise InvalidArgument("eps_zero must be nonnegative")
    return np.flatnonzero(f.pointwise_norms() <= eps_zero)


def zero_mask(f: BochnerFunction, eps_zero: float = 0.0) -> np.ndarray:
    if eps_zero < 0:
        raise InvalidArgument("eps_zero must be nonnegative")
    return f.pointwise_norms() <= eps_zero


def float_eps_zero(f: BochnerFunction, rel: float = 1e-12) -> float:
    """Zero-set threshold for data that went through floating point."""
    r = f.pointwise_norms()
    return float(rel * r.max()) if r.size else 0.0


def elementary_tensor(fscalar: BochnerFunction, x, sp: SmoothSpace) -> BochnerFunction:
    """The function s -> fscalar(s) x representing the tensor fscalar (x) x."""
    if fscalar.space.dim != 1 or fscalar.space.kind != "scalar":
        raise InvalidArgument("first factor must be scalar-valued")
    if fscalar.space.field != sp.field:
        raise InvalidArgument("scalar field of the factors differs")
    x = as_vector(sp, x)
    return BochnerFunction(fscalar.measure, sp, np.outer(fscalar.values[:, 0], x))


def scalar_product_function(f1: BochnerFunction, f2: BochnerFunction) -> BochnerFunction:
    """(s, t) -> f1(s) f2(t) on the product measure."""
    for f in (f1, f2):
        if f.space.kind != "scalar":
            raise InvalidArgument("both factors must be scalar-valued")
    if f1.space.field != f2.space.field:
        raise InvalidArgument("scalar field of the factors differs")
    m = product_measure(f1.measure, f2.measure)
    vals = np.outer(f1.values[:, 0], f2.values[:, 0]).reshape(-1, 1)
    return BochnerFunction(m, f1.space, vals)


def bochner_to_dict(f: BochnerFunction) -> dict:
    return {"measure": measure_to_dict(f.measure),
            "space": space_to_dict(f.space),
            "values": [vector_to_json(f.space, v) for v in f.values]}


def bochner_from_dict(d: dict) -> BochnerFunction:
    try:
        m = measure_from_dict(d["measure"])
        sp = space_from_dict(d["space"])
        rows = d["values"]
    except (KeyError, TypeError) as exc:
        raise InvalidArgument(f"malformed function: {exc}") from exc
    if len(rows) != len(m):
        raise InvalidArgument(f"{len(rows)} values for {len(m)} atoms")
    V = np.array([vector_from_json(sp, r) for r in rows], dtype=sp.dtype)
    return BochnerFunction(m, sp, V.reshape(len(m), sp.dim))
