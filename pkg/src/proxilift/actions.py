"""Semigroup actions on finite spaces: words, closure, pushforward, convolution.

Generators are either deterministic transformations (total selfmaps of the
point set) or row-stochastic rational matrices acting affinely on measures.
Words are sequences of generator indices applied left-to-right: the word
(g, h) sends x to h(g(x)), and a measure mu to mu applied through g then h.
That convention is fixed here and used everywhere witnesses are reported.
"""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .errors import DimensionMismatch, UnsupportedKind, ValidationError
from .spaces import ZERO, FiniteSpace, Measure

Word = tuple[int, ...]


class Kind(enum.Enum):
    DETERMINISTIC = "deterministic"
    STOCHASTIC = "stochastic"


@dataclass(frozen=True)
class Transformation:
    """Total selfmap of {0..m-1}; image[i] is where point i goes."""

    image: tuple[int, ...]

    def __post_init__(self) -> None:
        m = len(self.image)
        if m == 0:
            raise ValidationError("transformation on an empty set")
        if any(not 0 <= j < m for j in self.image):
            raise ValidationError("transformation image out of range")

    @classmethod
    def identity(cls, m: int) -> "Transformation":
        return cls(tuple(range(m)))

    @classmethod
    def constant(cls, m: int, target: int) -> "Transformation":
        return cls(tuple(target for _ in range(m)))

    def __len__(self) -> int:
        return len(self.image)

    def __call__(self, i: int) -> int:
        return self.image[i]

    def then(self, other: "Transformation") -> "Transformation":
        """Composite doing self first, then other (left-to-right)."""
        if len(other) != len(self):
            raise DimensionMismatch("transformation sizes differ")
        return Transformation(tuple(other.image[j] for j in self.image))

    def is_constant(self) -> bool:
        return len(set(self.image)) == 1

    def is_permutation(self) -> bool:
        return len(set(self.image)) == len(self.image)


@dataclass(frozen=True)
class StochasticMatrix:
    """Square matrix of exact transition probabilities, rows summing to 1."""

    rows: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self) -> None:
        m = len(self.rows)
        if m == 0:
            raise ValidationError("empty stochastic matrix")
        for i, row in enumerate(self.rows):
            if len(row) != m:
                raise DimensionMismatch("stochastic matrix must be square", m)
            total = ZERO
            for p in row:
                if not isinstance(p, Fraction):
                    raise ValidationError("entries must be Fractions")
                if p < 0 or p > 1:
                    raise ValidationError(f"entry {p} outside [0,1]")
                total += p
            if total != 1:
                raise ValidationError(f"row {i} sums to {total}, not 1")

    @classmethod
    def from_rows(
        cls, rows: Sequence[Sequence[int | Fraction]]
    ) -> "StochasticMatrix":
        return cls(tuple(tuple(Fraction(x) for x in row) for row in rows))

    @classmethod
    def from_transformation(cls, t: Transformation) -> "StochasticMatrix":
        m = len(t)
        return cls(
            tuple(
                tuple(Fraction(1) if j == t(i) else ZERO for j in range(m))
                for i in range(m)
            )
        )

    def __len__(self) -> int:
        return len(self.rows)

    def then(self, other: "StochasticMatrix") -> "StochasticMatrix":
        """Matrix product self * other: apply self first on row vectors."""
        m = len(self)
        if len(other) != m:
            raise DimensionMismatch("stochastic matrix sizes differ")
        cols = list(zip(*other.rows))
        return StochasticMatrix(
            tuple(
                tuple(
                    sum((a * b for a, b in zip(row, col)), ZERO) for col in cols
                )
                for row in self.rows
            )
        )

    def is_deterministic(self) -> bool:
        return all(all(p in (0, 1) for p in row) for row in self.rows)

    def to_transformation(self) -> Transformation:
        if not self.is_deterministic():
            raise ValidationError("matrix has non 0/1 entries")
        return Transformation(tuple(row.index(Fraction(1)) for row in self.rows))


Generator = Union[Transformation, StochasticMatrix]


@dataclass(frozen=True)
class ActionSystem:
    """A finite space together with finitely many generating selfmaps."""

    space: FiniteSpace
    kind: Kind
    generators: tuple[Generator, ...]

    def __post_init__(self) -> None:
        if not self.generators:
            raise ValidationError("an action system needs at least one generator")
        m = len(self.space)
        want = Transformation if self.kind is Kind.DETERMINISTIC else StochasticMatrix
        for g in self.generators:
            if not isinstance(g, want):
                raise ValidationError(
                    f"{self.kind.value} system got a {type(g).__name__} generator"
                )
            if len(g) != m:
                raise DimensionMismatch("generator size does not match space", m)

    @classmethod
    def deterministic(
        cls, space: FiniteSpace, images: Iterable[Sequence[int]]
    ) -> "ActionSystem":
        gens = tuple(Transformation(tuple(img)) for img in images)
        return cls(space, Kind.DETERMINISTIC, gens)

    @classmethod
    def stochastic(
        cls, space: FiniteSpace, matrices: Iterable[StochasticMatrix]
    ) -> "ActionSystem":
        return cls(space, Kind.STOCHASTIC, tuple(matrices))

    def check_word(self, w: Word) -> None:
        k = len(self.generators)
        if any(not 0 <= a < k for a in w):
            raise ValidationError(f"word letter outside 0..{k - 1}")

    def word_transformation(self, w: Word) -> Transformation:
        """The single transformation realized by a word, left-to-right."""
        if self.kind is not Kind.DETERMINISTIC:
            raise UnsupportedKind("word_transformation needs a deterministic system")
        self.check_word(w)
        t = Transformation.identity(len(self.space))
        for a in w:
            t = t.then(self.generators[a])
        return t

    def word_matrix(self, w: Word) -> StochasticMatrix:
        """The product matrix realized by a word, left-to-right."""
        self.check_word(w)
        m = len(self.space)
        out = StochasticMatrix.from_transformation(Transformation.identity(m))
        for a in w:
            g = self.generators[a]
            if isinstance(g, Transformation):
                g = StochasticMatrix.from_transformation(g)
            out = out.then(g)
        return out


@dataclass(frozen=True)
class MonoidClosure:
    """All word-reachable transformations with shortest witness words."""

    elements: tuple[Transformation, ...]
    witnesses: tuple[Word, ...]
    truncated: bool

    def __len__(self) -> int:
        return len(self.elements)


def closure(sys: ActionSystem, cap: int = 100_000) -> MonoidClosure:
    """Breadth-first composition closure of the generators, identity included.

    Elements are deduplicated by image vector.  Witness words are
    length-minimal with ties broken lexicographically by generator index,
    which FIFO order over generators in index order delivers.
    """
    if sys.kind is not Kind.DETERMINISTIC:
        raise UnsupportedKind("closure is defined for deterministic systems only")
    if cap < 1:
        raise ValidationError("closure cap must be positive")
    ident = Transformation.identity(len(sys.space))
    seen: dict[Transformation, Word] = {ident: ()}
    order = [ident]
    queue: deque[Transformation] = deque([ident])
    truncated = False
    while queue:
        t = queue.popleft()
        base = seen[t]
        for gi, g in enumerate(sys.generators):
            u = t.then(g)
            if u in seen:
                continue
            if len(seen) >= cap:
                truncated = True
                queue.clear()
                break
            seen[u] = base + (gi,)
            order.append(u)
            queue.append(u)
    return MonoidClosure(
        tuple(order), tuple(seen[t] for t in order), truncated
    )


def _push_one_deterministic(t: Transformation, mu: Measure) -> Measure:
    out = [ZERO] * len(mu)
    for i, w in enumerate(mu.weights):
        out[t(i)] += w
    return Measure(tuple(out))


def _push_one_stochastic(s: StochasticMatrix, mu: Measure) -> Measure:
    cols = list(zip(*s.rows))
    return Measure(
        tuple(sum((w * c for w, c in zip(mu.weights, col)), ZERO) for col in cols)
    )


def pushforward(sys: ActionSystem, w: Word, mu: Measure) -> Measure:
    """Image measure of mu under the word, letter by letter.

    Deterministic letters sum mu over preimages (t mu (E) = mu(t^{-1} E));
    stochastic letters multiply the row vector by the matrix.  The empty word
    is the identity.
    """
    if len(mu) != len(sys.space):
        raise DimensionMismatch("measure size does not match space", len(sys.space))
    sys.check_word(w)
    for a in w:
        g = sys.generators[a]
        if isinstance(g, Transformation):
            mu = _push_one_deterministic(g, mu)
        else:
            mu = _push_one_stochastic(g, mu)
    return mu


@dataclass(frozen=True)
class SemigroupTable:
    """Total binary operation on {0..m-1}; associativity checked on build."""

    table: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        m = len(self.table)
        if m == 0:
            raise ValidationError("empty semigroup table")
        for row in self.table:
            if len(row) != m or any(not 0 <= x < m for x in row):
                raise ValidationError("table is not a total operation")
        for x in range(m):
            for y in range(m):
                xy = self.table[x][y]
                for z in range(m):
                    if self.table[xy][z] != self.table[x][self.table[y][z]]:
                        raise ValidationError(
                            f"operation not associative at ({x},{y},{z})"
                        )

    @classmethod
    def cyclic(cls, n: int) -> "SemigroupTable":
        return cls(tuple(tuple((x + y) % n for y in range(n)) for x in range(n)))

    @classmethod
    def left_zero(cls, n: int) -> "SemigroupTable":
        return cls(tuple(tuple(x for _ in range(n)) for x in range(n)))

    def __len__(self) -> int:
        return len(self.table)

    def __call__(self, x: int, y: int) -> int:
        return self.table[x][y]


def convolution(table: SemigroupTable, mu: Measure, nu: Measure) -> Measure:
    """(mu * nu)(z) = sum over x.y = z of mu(x) nu(y), exact."""
    m = len(table)
    if len(mu) != m or len(nu) != m:
        raise DimensionMismatch("measure size does not match table", m)
    out = [ZERO] * m
    for x, wx in enumerate(mu.weights):
        if wx == 0:
            continue
        row = table.table[x]
        for y, wy in enumerate(nu.weights):
            if wy == 0:
                continue
            out[row[y]] += wx * wy
    return Measure(tuple(out))


def dobrushin(s: StochasticMatrix) -> Fraction:
    """Contraction coefficient: half the largest L1 gap between two rows.

    Zero exactly when all rows agree (rank one); total variation between
    pushed measures contracts by at least this factor, and the coefficient is
    submultiplicative under matrix products.
    """
    m = len(s)
    best = ZERO
    for i in range(m):
        for j in range(i + 1, m):
            gap = sum(
                (abs(a - b) for a, b in zip(s.rows[i], s.rows[j])), ZERO
            )
            if gap > best:
                best = gap
    return best / 2
