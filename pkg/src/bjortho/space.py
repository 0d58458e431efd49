"""Finite-dimensional smooth normed spaces and their duality maps.

Three norm kinds are supported, all smooth away from the origin:
``lp`` (1 < p_X < inf), ``hilbert`` (Euclidean) and ``scalar`` (absolute
value on a one-dimensional space). The support functional of a nonzero
``x`` is the unique norm-one functional ``F_x`` with ``F_x(x) = ||x||``;
functionals act by ``F(z) = sum_i coeffs_i * z_i`` without conjugation.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidArgument, NoSupportFunctional

MAX_EXPONENT = 8.0
KINDS = ("lp", "hilbert", "scalar")
FIELDS = ("real", "complex")


@dataclass(frozen=True)
class SmoothSpace:
    field: str
    dim: int
    kind: str = "hilbert"
    exponent: float | None = None
    max_exponent: float = MAX_EXPONENT

    def __post_init__(self):
        if self.field not in FIELDS:
            raise InvalidArgument(f"field must be one of {FIELDS}")
        if self.kind not in KINDS:
            raise InvalidArgument(
                f"unsupported norm kind {self.kind!r}; only smooth kinds {KINDS}")
        if int(self.dim) != self.dim or self.dim < 1:
            raise InvalidArgument(f"dim must be a positive integer, got {self.dim}")
        object.__setattr__(self, "dim", int(self.dim))
        if self.kind == "scalar" and self.dim != 1:
            raise InvalidArgument("scalar kind forces dim = 1")
        if self.kind == "lp":
            p = self.exponent
            if p is None or not 1.0 < p < np.inf:
                # l1 and l-infinity norms are not smooth
                raise InvalidArgument(f"lp kind needs 1 < p_X < inf, got {p}")
            if p > self.max_exponent:
                raise InvalidArgument(
                    f"p_X={p} exceeds max_exponent={self.max_exponent}")
            object.__setattr__(self, "exponent", float(p))
        else:
            object.__setattr__(self, "exponent", None)

    @property
    def dtype(self):
        return np.complex128 if self.field == "complex" else np.float64

    @property
    def is_complex(self) -> bool:
        return self.field == "complex"

    @property
    def p(self) -> float:
        """Exponent of the underlying coordinate norm (2 for hilbert/scalar)."""
        return self.exponent if self.kind == "lp" else 2.0

    @property
    def q(self) -> float:
        return conjugate_exponent(self.p)

    def vector(self, coords) -> np.ndarray:
        return as_vector(self, coords)

    def scalar_space(self) -> "SmoothSpace":
        return scalar_space(self.field)


def hilbert(dim: int, field: str = "real") -> SmoothSpace:
    return SmoothSpace(field, dim, "hilbert")


def lp_space(dim: int, p: float, field: str = "real", **kw) -> SmoothSpace:
    return SmoothSpace(field, dim, "lp", p, **kw)


def scalar_space(field: str = "real") -> SmoothSpace:
    return SmoothSpace(field, 1, "scalar")


def conjugate_exponent(p: float) -> float:
    return p / (p - 1.0)


def as_vector(sp: SmoothSpace, coords) -> np.ndarray:
    v = np.asarray(coords)
    if v.ndim == 0:
        v = v.reshape(1)
    if v.shape != (sp.dim,):
        raise InvalidArgument(f"vector of shape {v.shape} not in {sp.dim}-dim space")
    if np.iscomplexobj(v) and not sp.is_complex:
        if np.any(v.imag != 0):
            raise InvalidArgument("complex entries in a real space")
        v = v.real
    v = v.astype(sp.dtype)
    if not np.all(np.isfinite(v)):
        raise InvalidArgument("vector entries must be finite")
    return v


def sign(z):
    """z/|z| elementwise, with sign(0) = 0."""
    z = np.asarray(z)
    out = np.zeros_like(z)
    nz = z != 0
    if np.iscomplexobj(z):
        # rescale first: complex division by a subnormal modulus gives nan
        w = z[nz]
        m = np.maximum(np.abs(w.real), np.abs(w.imag))
        re, im = w.real / m, w.imag / m
        r = np.hypot(re, im)
        out[nz] = (re / r) + 1j * (im / r)
    else:
        out[nz] = np.sign(z[nz])
    return out


def row_norms(sp: SmoothSpace, V: np.ndarray) -> np.ndarray:
    """Norm of each row of an (n, dim) array."""
    A = np.abs(V)
    if sp.kind == "lp":
        p = sp.exponent
        # rescale by the max entry so |x|^p cannot overflow
        m = A.max(axis=-1, keepdims=True)
        safe = np.where(m > 0, m, 1.0)
        return (m * (np.sum((A / safe) ** p, axis=-1, keepdims=True)) ** (1.0 / p))[..., 0]
    return np.sqrt(np.sum(A * A, axis=-1))


def norm(sp: SmoothSpace, v) -> float:
    v = as_vector(sp, v)
    return float(row_norms(sp, v[None, :])[0])


def support_rows(sp: SmoothSpace, V: np.ndarray) -> np.ndarray:
    """Support-functional coefficients for each row; zero rows map to 0."""
    V = np.asarray(V)
    nrm = row_norms(sp, V)
    out = np.zeros_like(V, dtype=sp.dtype)
    nz = nrm > 0
    if not np.any(nz):
        return out
    X = V[nz] / nrm[nz][:, None]
    if sp.kind == "lp":
        out[nz] = np.abs(X) ** (sp.exponent - 1.0) * np.conj(sign(X))
    else:
        out[nz] = np.conj(X)
    return out


@dataclass(frozen=True, eq=False)
class Functional:
    """Linear functional z -> sum(coeffs * z) on a SmoothSpace."""
    space: SmoothSpace
    coeffs: np.ndarray

    def __call__(self, z):
        z = as_vector(self.space, z)
        val = np.dot(self.coeffs, z)
        return complex(val) if self.space.is_complex else float(np.real(val))

    def __sub__(self, other: "Functional") -> "Functional":
        return Functional(self.space, self.coeffs - other.coeffs)


def support_functional(sp: SmoothSpace, x) -> Functional:
    x = as_vector(sp, x)
    if not np.any(x != 0):
        raise NoSupportFunctional("the zero vector has no support functional")
    return Functional(sp, support_rows(sp, x[None, :])[0])


def dual_norm(sp: SmoothSpace, F: Functional) -> float:
    """Exact dual norm: l^q for lp kind, Euclidean otherwise."""
    c = np.abs(np.asarray(F.coeffs))
    if sp.kind == "lp":
        m = c.max()
        if m == 0:
            return 0.0
        return float(m * np.sum((c / m) ** sp.q) ** (1.0 / sp.q))
    return float(np.sqrt(np.sum(c * c)))


def dual_point(sp: SmoothSpace, coeffs) -> np.ndarray:
    """A vector whose support functional is proportional to ``coeffs``.

    Inverse of the duality map up to positive scaling; handy for building
    vectors orthogonal to a given subspace.
    """
    c = np.asarray(coeffs, dtype=sp.dtype)
    if sp.kind == "lp":
        return (np.abs(c) ** (sp.q - 1.0) * np.conj(sign(c))).astype(sp.dtype)
    return np.conj(c)


def _check_phase(sp: SmoothSpace, phi: float):
    if not sp.is_complex:
        c = np.cos(phi)
        if not (np.isclose(c, 1.0) or np.isclose(c, -1.0)):
            raise InvalidArgument("real field admits only phases 0 and pi")


def phase_gateaux(sp: SmoothSpace, x, y, phi: float) -> float:
    """One-sided derivative of t -> ||x + t e^{i phi} y|| at t = 0+."""
    _check_phase(sp, phi)
    x = as_vector(sp, x)
    y = as_vector(sp, y)
    if not np.any(x != 0):
        return norm(sp, y)
    F = support_functional(sp, x)
    return float(np.real(np.exp(1j * phi) * np.dot(F.coeffs, y)))


def space_to_dict(sp: SmoothSpace) -> dict:
    kind = {"lp": sp.exponent} if sp.kind == "lp" else sp.kind
    return {"field": sp.field, "dim": sp.dim, "kind": kind}


def space_from_dict(d) -> SmoothSpace:
    if isinstance(d, str):
        if d in ("hilbert", "scalar"):
            raise InvalidArgument(f"shorthand {d!r} needs a field; use an object")
        raise InvalidArgument(f"malformed space descriptor {d!r}")
    try:
        field = d.get("field", "real")
        kind = d.get("kind", "hilbert")
        dim = d.get("dim", 1)
    except AttributeError as exc:
        raise InvalidArgument(f"malformed space descriptor {d!r}") from exc
    if isinstance(kind, dict):
        if set(kind) != {"lp"}:
            raise InvalidArgument(f"unknown kind {kind!r}")
        return SmoothSpace(field, dim, "lp", float(kind["lp"]))
    return SmoothSpace(field, dim, kind)


def vector_to_json(sp: SmoothSpace, v) -> list:
    v = np.asarray(v)
    if sp.is_complex:
        return [[float(z.real), float(z.imag)] for z in v.astype(complex)]
    return [float(x) for x in np.real(v)]


def vector_from_json(sp: SmoothSpace, data) -> np.ndarray:
    if sp.dim == 1 and not isinstance(data, (list, tuple)):
        data = [data]
    elif (sp.dim == 1 and sp.is_complex and len(data) == 2
          and not any(isinstance(e, (list, tuple)) for e in data)):
        data = [data]
    try:
        if sp.is_complex:
            coords = [complex(e[0], e[1]) if isinstance(e, (list, tuple)) else complex(e)
                      for e in data]
        else:
            coords = [float(e) for e in data]
    except (TypeError, IndexError, ValueError) as exc:
        raise InvalidArgument(f"malformed vector {data!r}") from exc
    return as_vector(sp, coords)
