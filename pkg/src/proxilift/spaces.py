"""Finite metric spaces and exact-rational probability measures.

A finite metric space stands in for the compact space under study; probability
measures over it are vectors of exact rationals summing to one.  The grid
simplex collects all measures with a fixed common denominator q, which is the
finite stand-in for the full probability simplex: deterministic pushforward
maps the q-grid into itself, so lifted dynamics stay exact.

Weak* convergence on a finite space is metrized equivalently by total
variation or by Wasserstein-1; both are provided, the latter computed exactly
by integer min-cost flow after clearing denominators.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from .errors import DimensionMismatch, ValidationError
from .transport import min_cost_transport

ZERO = Fraction(0)
ONE = Fraction(1)


def _as_fraction(x: int | Fraction) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise ValidationError(f"expected an exact rational, got {type(x).__name__}")


@dataclass(frozen=True)
class FiniteSpace:
    """Point labels plus a symmetric rational metric matrix."""

    labels: tuple[str, ...]
    metric: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self) -> None:
        m = len(self.labels)
        if m == 0:
            raise ValidationError("a space needs at least one point")
        if len(set(self.labels)) != m:
            raise ValidationError("point labels must be distinct")
        if len(self.metric) != m or any(len(row) != m for row in self.metric):
            raise DimensionMismatch("metric matrix must be square of size", m)
        for i in range(m):
            if self.metric[i][i] != 0:
                raise ValidationError(f"metric diagonal must be zero at {i}")
            for j in range(i + 1, m):
                d = self.metric[i][j]
                if d != self.metric[j][i]:
                    raise ValidationError(f"metric not symmetric at ({i},{j})")
                if d <= 0:
                    raise ValidationError(
                        f"distinct points {i},{j} need positive distance"
                    )
        # A metric with all off-diagonal entries equal satisfies the triangle
        # inequality outright (d <= d + d); skip the cubic sweep then.
        off = {
            self.metric[i][j] for i in range(m) for j in range(m) if i != j
        }
        if len(off) > 1:
            for i in range(m):
                row_i = self.metric[i]
                for j in range(m):
                    d_ij = row_i[j]
                    row_j = self.metric[j]
                    for k in range(m):
                        if d_ij + row_j[k] < row_i[k]:
                            raise ValidationError(
                                f"triangle inequality fails on ({i},{j},{k})"
                            )

    @classmethod
    def discrete(cls, labels: Sequence[str]) -> "FiniteSpace":
        """All distinct distances equal to 1 (the discrete metric)."""
        m = len(labels)
        rows = tuple(
            tuple(ZERO if i == j else ONE for j in range(m)) for i in range(m)
        )
        return cls(tuple(labels), rows)

    @classmethod
    def from_rows(
        cls, labels: Sequence[str], rows: Sequence[Sequence[int | Fraction]]
    ) -> "FiniteSpace":
        return cls(
            tuple(labels),
            tuple(tuple(_as_fraction(x) for x in row) for row in rows),
        )

    def __len__(self) -> int:
        return len(self.labels)

    def distance(self, i: int, j: int) -> Fraction:
        return self.metric[i][j]

    def diameter(self) -> Fraction:
        m = len(self.labels)
        return max(
            (self.metric[i][j] for i in range(m) for j in range(i + 1, m)),
            default=ZERO,
        )


@dataclass(frozen=True)
class Measure:
    """Exact probability vector; the index set is supplied by context."""

    weights: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if not self.weights:
            raise ValidationError("a measure needs at least one coordinate")
        total = ZERO
        for w in self.weights:
            if not isinstance(w, Fraction):
                raise ValidationError("measure weights must be Fractions")
            if w < 0 or w > 1:
                raise ValidationError(f"weight {w} outside [0,1]")
            total += w
        if total != 1:
            raise ValidationError(f"weights sum to {total}, not 1")

    @classmethod
    def from_weights(cls, weights: Iterable[int | Fraction]) -> "Measure":
        return cls(tuple(_as_fraction(w) for w in weights))

    @classmethod
    def point_mass(cls, m: int, i: int) -> "Measure":
        if not 0 <= i < m:
            raise ValidationError(f"point index {i} outside 0..{m - 1}")
        return cls(tuple(ONE if j == i else ZERO for j in range(m)))

    @classmethod
    def uniform(cls, m: int) -> "Measure":
        return cls(tuple(Fraction(1, m) for _ in range(m)))

    def __len__(self) -> int:
        return len(self.weights)

    def support(self) -> tuple[int, ...]:
        return tuple(i for i, w in enumerate(self.weights) if w > 0)

    def mass_of(self, points: Iterable[int]) -> Fraction:
        return sum((self.weights[i] for i in set(points)), ZERO)

    def is_point_mass(self) -> bool:
        return any(w == 1 for w in self.weights)

    def point_of_mass(self) -> int:
        """Index carrying full mass; only valid for point masses."""
        for i, w in enumerate(self.weights):
            if w == 1:
                return i
        raise ValidationError("measure is not a point mass")

    def mix(self, other: "Measure", a: Fraction) -> "Measure":
        """Convex combination a*self + (1-a)*other, exact."""
        if len(other) != len(self):
            raise DimensionMismatch("measure sizes differ", len(self), len(other))
        if a < 0 or a > 1:
            raise ValidationError("mixing weight outside [0,1]")
        return Measure(
            tuple(
                a * w + (1 - a) * v for w, v in zip(self.weights, other.weights)
            )
        )


def tv_distance(mu: Measure, nu: Measure) -> Fraction:
    """Total variation (1/2) sum |mu_i - nu_i|, exact."""
    if len(mu) != len(nu):
        raise DimensionMismatch("measure sizes differ", len(mu), len(nu))
    return sum((abs(a - b) for a, b in zip(mu.weights, nu.weights)), ZERO) / 2


def w1_distance(space: FiniteSpace, mu: Measure, nu: Measure) -> Fraction:
    """Optimal-transport cost between mu and nu under the space metric.

    Masses are scaled by a common denominator and the resulting integer
    transportation problem is solved exactly, so the value is an exact
    rational and satisfies the metric axioms.
    """
    m = len(space)
    if len(mu) != m or len(nu) != m:
        raise DimensionMismatch("measure size does not match space", m)
    if mu == nu:
        return ZERO
    denom = 1
    for w in mu.weights + nu.weights:
        denom = denom * w.denominator // math.gcd(denom, w.denominator)
    supply = [int(w * denom) for w in mu.weights]
    demand = [int(w * denom) for w in nu.weights]
    cost = [list(row) for row in space.metric]
    return min_cost_transport(supply, demand, cost) / denom


def grid_atoms(m: int, q: int) -> list[Measure]:
    """All measures on m points with weights a_i/q, in lexicographic order.

    Lexicographic on the numerator vectors (a_0, ..., a_{m-1}); there are
    binomial(q+m-1, m-1) of them.
    """
    if m < 1 or q < 1:
        raise ValidationError("need m >= 1 and q >= 1")
    out: list[Measure] = []
    prefix: list[int] = []

    def rec(pos: int, left: int) -> None:
        if pos == m - 1:
            prefix.append(left)
            out.append(
                Measure(tuple(Fraction(a, q) for a in prefix))
            )
            prefix.pop()
            return
        for a in range(left + 1):
            prefix.append(a)
            rec(pos + 1, left - a)
            prefix.pop()

    rec(0, q)
    return out


@dataclass(frozen=True)
class GridSimplex:
    """The resolution-q discretization of the probability simplex over base."""

    base: FiniteSpace
    resolution: int
    atoms: tuple[Measure, ...]

    def __post_init__(self) -> None:
        m, q = len(self.base), self.resolution
        if q < 1:
            raise ValidationError("resolution must be positive")
        if len(self.atoms) != math.comb(q + m - 1, m - 1):
            raise ValidationError("atom count does not match binomial(q+m-1,m-1)")
        if len(set(self.atoms)) != len(self.atoms):
            raise ValidationError("grid atoms must be pairwise distinct")

    @classmethod
    def build(cls, base: FiniteSpace, q: int) -> "GridSimplex":
        return cls(base, q, tuple(grid_atoms(len(base), q)))

    def __len__(self) -> int:
        return len(self.atoms)

    @cached_property
    def _index(self) -> dict[Measure, int]:
        return {atom: i for i, atom in enumerate(self.atoms)}

    def atom_index(self, mu: Measure) -> int:
        try:
            return self._index[mu]
        except KeyError:
            raise ValidationError(
                f"measure is not on the resolution-{self.resolution} grid"
            ) from None

    def vertex_index(self, point: int) -> int:
        """Atom index of the point mass at the given base point."""
        return self.atom_index(Measure.point_mass(len(self.base), point))


def tightness_profile(
    seq: Sequence[Measure], sets: Sequence[Sequence[int]]
) -> list[Fraction]:
    """For each set K (nested increasing), the worst-case mass min_n seq[n](K).

    A sequence is tight at level 1-eps when some K achieves min >= 1-eps;
    profiles strictly below that level for every K in an exhaustion flag mass
    escaping to infinity.
    """
    if not seq:
        raise ValidationError("tightness profile needs a nonempty sequence")
    m = len(seq[0])
    if any(len(mu) != m for mu in seq):
        raise DimensionMismatch("measures in the sequence differ in size", m)
    prev: set[int] = set()
    profile: list[Fraction] = []
    for raw in sets:
        k = set(raw)
        if not prev <= k:
            raise ValidationError("sets must be nested increasing")
        if any(not 0 <= i < m for i in k):
            raise ValidationError("set contains an invalid point index")
        profile.append(min(mu.mass_of(k) for mu in seq))
        prev = k
    return profile


def tight_at(profile: Sequence[Fraction], epsilon: Fraction) -> bool:
    """Whether some set in the profile retains mass at least 1-epsilon."""
    return any(p >= 1 - epsilon for p in profile)


def random_measure(rng: random.Random, m: int, granularity: int = 12) -> Measure:
    """A random exact-rational measure: integer masses up to granularity,
    normalized by their sum."""
    nums = [rng.randint(0, granularity) for _ in range(m)]
    if not any(nums):
        nums[rng.randrange(m)] = 1
    total = sum(nums)
    return Measure(tuple(Fraction(a, total) for a in nums))
