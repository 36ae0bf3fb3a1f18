"""Vector algebra of Lorentz-Minkowski 3-space.

The ambient space is R^3 with the indefinite metric dx^2 + dy^2 - dz^2.
Everything here is a pure function of its arguments; there is no hidden
state and all operations are safe to call concurrently.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .errors import ParameterError

# Relative tolerance used to decide the causal character of a vector.
DEFAULT_CAUSALITY_TOL = 1e-9


class Causality(Enum):
    SPACELIKE = "spacelike"
    TIMELIKE = "timelike"
    LIGHTLIKE = "lightlike"


@dataclass(frozen=True, slots=True)
class MVec3:
    """Point or vector of L^3 in the standard basis."""

    x: float
    y: float
    z: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y) and math.isfinite(self.z)):
            raise ParameterError(f"MVec3 components must be finite, got ({self.x}, {self.y}, {self.z})")

    def __add__(self, other: "MVec3") -> "MVec3":
        return MVec3(self.x + other.x, self.y + other.y, self.z + other.z)

    def __sub__(self, other: "MVec3") -> "MVec3":
        return MVec3(self.x - other.x, self.y - other.y, self.z - other.z)

    def __neg__(self) -> "MVec3":
        return MVec3(-self.x, -self.y, -self.z)

    def __mul__(self, a: float) -> "MVec3":
        return MVec3(self.x * a, self.y * a, self.z * a)

    __rmul__ = __mul__

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.x, self.y, self.z)


E1 = MVec3(1.0, 0.0, 0.0)
E2 = MVec3(0.0, 1.0, 0.0)
E3 = MVec3(0.0, 0.0, 1.0)
ZERO = MVec3(0.0, 0.0, 0.0)


def inner(u: MVec3, v: MVec3) -> float:
    """Indefinite inner product u.x*v.x + u.y*v.y - u.z*v.z."""
    return u.x * v.x + u.y * v.y - u.z * v.z


def euclidean_sq(v: MVec3) -> float:
    """Auxiliary positive-definite squared norm, used only for tolerance scaling."""
    return v.x * v.x + v.y * v.y + v.z * v.z


def det3(u: MVec3, v: MVec3, w: MVec3) -> float:
    """Determinant of the 3x3 matrix with rows u, v, w."""
    return (u.x * (v.y * w.z - v.z * w.y)
            - u.y * (v.x * w.z - v.z * w.x)
            + u.z * (v.x * w.y - v.y * w.x))


def cross(u: MVec3, v: MVec3) -> MVec3:
    """Lorentzian vector product: the unique c with inner(c, w) = det3(u, v, w) for all w.

    In coordinates this is the Euclidean cross product with the z component
    negated, e.g. e1 x e2 = (0, 0, -1) and e2 x e3 = (1, 0, 0).
    """
    return MVec3(u.y * v.z - u.z * v.y,
                 u.z * v.x - u.x * v.z,
                 -(u.x * v.y - u.y * v.x))


def causality(v: MVec3, tol: float = DEFAULT_CAUSALITY_TOL) -> Causality:
    """Causal character of v.

    The zero vector is spacelike by convention.  The lightlike band is
    |<v,v>| <= tol * max(|v|_euclid^2, 1), so near-null vectors classify
    stably at any overall scale.
    """
    if tol <= 0:
        raise ParameterError(f"causality tolerance must be positive, got {tol}")
    q = inner(v, v)
    m = euclidean_sq(v)
    if m == 0.0:
        return Causality.SPACELIKE
    band = tol * max(m, 1.0)
    if abs(q) <= band:
        return Causality.LIGHTLIKE
    if q > 0.0:
        return Causality.SPACELIKE
    return Causality.TIMELIKE


def lorentz_norm(v: MVec3) -> float:
    """sqrt(|<v,v>|); the modulus of a spacelike or timelike vector."""
    return math.sqrt(abs(inner(v, v)))
