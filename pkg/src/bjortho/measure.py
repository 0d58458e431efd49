"""Finite positive measures given as weighted atom lists.

Every integral in the package is a weighted sum over atoms. Indicator
integrals are exact whenever the set boundaries coincide with cell
boundaries of an interval quadrature.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Callable, Hashable, Sequence

import numpy as np

from .errors import InvalidArgument


@dataclass(frozen=True, eq=False)
class DiscreteMeasure:
    atoms: tuple
    weights: np.ndarray
    coords: tuple | None = None

    def __post_init__(self):
        atoms = tuple(self.atoms)
        weights = np.array(self.weights, dtype=float).reshape(-1)
        if len(atoms) == 0:
            raise InvalidArgument("a measure needs at least one atom")
        if len(atoms) != weights.size:
            raise InvalidArgument(
                f"{len(atoms)} atoms but {weights.size} weights")
        if not np.all(np.isfinite(weights)) or np.any(weights < 0):
            raise InvalidArgument("weights must be finite and nonnegative")
        if not weights.sum() > 0:
            raise InvalidArgument("total mass must be positive")
        if len(set(atoms)) != len(atoms):
            raise InvalidArgument("atom labels must be distinct")
        if self.coords is not None and len(self.coords) != len(atoms):
            raise InvalidArgument("coords must align with atoms")
        weights.setflags(write=False)
        object.__setattr__(self, "atoms", atoms)
        object.__setattr__(self, "weights", weights)
        if self.coords is not None:
            object.__setattr__(self, "coords", tuple(self.coords))

    def __len__(self):
        return len(self.atoms)

    def __eq__(self, other):
        if not isinstance(other, DiscreteMeasure):
            return NotImplemented
        return (self.atoms == other.atoms
                and np.array_equal(self.weights, other.weights))

    def __hash__(self):
        return hash((self.atoms, self.weights.tobytes()))

    @property
    def mass(self) -> float:
        return float(self.weights.sum())

    @property
    def positive(self) -> np.ndarray:
        """Boolean mask of atoms carrying positive weight."""
        return self.weights > 0

    def index(self, label: Hashable) -> int:
        return self.atoms.index(label)

    def indicator(self, members: Callable[[Any], bool] | Sequence) -> np.ndarray:
        """0/1 values of a set given as a label collection or a predicate.

        A predicate receives the atom coordinate when the measure has
        coordinates and the label otherwise.
        """
        if callable(members):
            keys = self.coords if self.coords is not None else self.atoms
            return np.array([1.0 if members(k) else 0.0 for k in keys])
        chosen = set(members)
        return np.array([1.0 if a in chosen else 0.0 for a in self.atoms])

    def measure_of(self, members) -> float:
        return integrate(self, self.indicator(members))


def counting_measure(n: int) -> DiscreteMeasure:
    """Atoms 1..n, each of mass one."""
    if int(n) != n or n < 1:
        raise InvalidArgument(f"counting measure needs n >= 1, got {n}")
    n = int(n)
    return DiscreteMeasure(tuple(range(1, n + 1)), np.ones(n))


def interval_quadrature(a: float, b: float, n: int) -> DiscreteMeasure:
    """Midpoint rule on [a, b] with n equal cells.

    Atom k sits at a + (k + 1/2) h with weight h = (b - a)/n, so the
    indicator of any union of cells integrates exactly.
    """
    if not a < b:
        raise InvalidArgument(f"need a < b, got a={a}, b={b}")
    if int(n) != n or n < 1:
        raise InvalidArgument(f"need n >= 1 cells, got {n}")
    n = int(n)
    h = (b - a) / n
    mids = tuple(a + (k + 0.5) * h for k in range(n))
    return DiscreteMeasure(tuple(range(n)), np.full(n, h), coords=mids)


def product_measure(m1: DiscreteMeasure, m2: DiscreteMeasure) -> DiscreteMeasure:
    """Product of two atom lists; atom (s, t) has weight w1(s) w2(t)."""
    atoms = tuple((s, t) for s in m1.atoms for t in m2.atoms)
    weights = np.outer(m1.weights, m2.weights).reshape(-1)
    coords = None
    if m1.coords is not None or m2.coords is not None:
        c1 = m1.coords if m1.coords is not None else m1.atoms
        c2 = m2.coords if m2.coords is not None else m2.atoms
        coords = tuple((u, v) for u in c1 for v in c2)
    return DiscreteMeasure(atoms, weights, coords=coords)


def integrate(m: DiscreteMeasure, values) -> float | complex:
    """Weighted sum of per-atom scalar values."""
    values = np.asarray(values)
    if values.shape != (len(m),):
        raise InvalidArgument(
            f"expected {len(m)} values, got shape {values.shape}")
    total = np.dot(m.weights, values)
    return complex(total) if np.iscomplexobj(total) else float(total)


def _label_to_json(label):
    if isinstance(label, tuple):
        return [_label_to_json(x) for x in label]
    return label


def _label_from_json(obj):
    if isinstance(obj, list):
        return tuple(_label_from_json(x) for x in obj)
    return obj


def measure_to_dict(m: DiscreteMeasure) -> dict:
    out = {"atoms": [_label_to_json(a) for a in m.atoms],
           "weights": [float(w) for w in m.weights]}
    if m.coords is not None:
        out["coords"] = [_label_to_json(c) for c in m.coords]
    return out


def measure_from_dict(d: dict) -> DiscreteMeasure:
    try:
        atoms = tuple(_label_from_json(a) for a in d["atoms"])
        weights = d["weights"]
    except (KeyError, TypeError) as exc:
        raise InvalidArgument(f"malformed measure: {exc}") from exc
    coords = d.get("coords")
    if coords is not None:
        coords = tuple(_label_from_json(c) for c in coords)
    return DiscreteMeasure(atoms, weights, coords=coords)
