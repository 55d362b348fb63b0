"""The lifted action on the grid-discretized probability simplex.

Deterministic pushforward keeps denominators, so the resolution-q grid is an
invariant finite subset of the probability simplex and every generator
induces a transformation of its atoms.  That lifted system is analyzed with
the same exact decision procedures as the base system, which turns the two
equivalences under study into executable checks:

  * the base system is strongly proximal iff the lifted system is proximal;
  * the base system is strongly proximal iff the lifted system is.

The barycenter map sends a measure on measures to its mean measure.  Its four
laws (equivariance, the delta section, point-mass pullback, and the semigroup
homomorphism law under convolution) are asserted as exact rational identities
over randomized trials.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Optional

from .actions import (
    ActionSystem,
    Kind,
    SemigroupTable,
    Transformation,
    Word,
    convolution,
    pushforward,
)
from .errors import DimensionMismatch, UnsupportedKind
from .linalg import polytope_vertices
from .proximality import (
    Budget,
    Status,
    Verdict,
    is_proximal,
    strongly_proximal,
)
from .spaces import (
    ZERO,
    FiniteSpace,
    GridSimplex,
    Measure,
    random_measure,
    w1_distance,
)
from .util import parallel_map

# A meta-measure is a probability vector over grid atoms: same validation,
# different index set, so the measure type is reused as-is.
MetaMeasure = Measure


@dataclass(frozen=True)
class LiftedSystem:
    """Grid atoms as points, with the generator-induced atom maps."""

    grid: GridSimplex
    generators: tuple[Transformation, ...]

    @cached_property
    def atom_space(self) -> FiniteSpace:
        labels = tuple(
            "("
            + ",".join(
                str(w.numerator * (self.grid.resolution // w.denominator))
                for w in atom.weights
            )
            + ")"
            for atom in self.grid.atoms
        )
        return FiniteSpace.discrete(labels)

    @cached_property
    def system(self) -> ActionSystem:
        """The lifted dynamics as a plain deterministic action system."""
        return ActionSystem(self.atom_space, Kind.DETERMINISTIC, self.generators)

    @cached_property
    def metric(self) -> tuple[tuple[Fraction, ...], ...]:
        """Pairwise Wasserstein-1 distances between atoms (built on demand;
        the exact decision procedures only use the discrete topology)."""
        atoms = self.grid.atoms
        n = len(atoms)
        base = self.grid.base

        def row(i: int) -> tuple[Fraction, ...]:
            return tuple(
                w1_distance(base, atoms[i], atoms[j]) for j in range(n)
            )

        return tuple(parallel_map(row, range(n)))

    def __len__(self) -> int:
        return len(self.grid.atoms)


@lru_cache(maxsize=256)
def lift_system(sys: ActionSystem, q: int) -> LiftedSystem:
    """Lift a deterministic system to its resolution-q grid simplex."""
    if sys.kind is not Kind.DETERMINISTIC:
        raise UnsupportedKind("only deterministic systems lift to the grid")
    grid = GridSimplex.build(sys.space, q)
    lifted = []
    for gi in range(len(sys.generators)):
        images = tuple(
            grid.atom_index(pushforward(sys, (gi,), atom))
            for atom in grid.atoms
        )
        lifted.append(Transformation(images))
    return LiftedSystem(grid, tuple(lifted))


def barycenter(grid: GridSimplex, rho: MetaMeasure) -> Measure:
    """Mean measure of rho: sum over atoms of rho(atom) * atom, exact."""
    if len(rho) != len(grid.atoms):
        raise DimensionMismatch(
            "meta-measure size does not match grid", len(grid.atoms)
        )
    m = len(grid.base)
    out = [ZERO] * m
    for weight, atom in zip(rho.weights, grid.atoms):
        if weight == 0:
            continue
        for j in range(m):
            out[j] += weight * atom.weights[j]
    return Measure(tuple(out))


def push_meta(lifted: LiftedSystem, w: Word, rho: MetaMeasure) -> MetaMeasure:
    """Pushforward of a meta-measure along the lifted atom maps."""
    return pushforward(lifted.system, w, rho)


def meta_is_vertex_point_mass(grid: GridSimplex, rho: MetaMeasure) -> bool:
    """Whether rho is a point mass at an atom that is itself a point mass."""
    return rho.is_point_mass() and grid.atoms[rho.point_of_mass()].is_point_mass()


@dataclass(frozen=True)
class CheckReport:
    """Outcome of a randomized law check; empty violations means it held."""

    name: str
    trials: int
    violations: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.violations


def _random_word(rng: random.Random, gen_count: int, max_len: int = 6) -> Word:
    return tuple(rng.randrange(gen_count) for _ in range(rng.randint(0, max_len)))


def psi_checks(
    sys: ActionSystem, q: int, trials: int, seed: int
) -> CheckReport:
    """Exact randomized checks of the barycenter laws on the q-grid.

    (a) equivariance: pushing the meta-measure and then taking barycenters
        equals taking the barycenter and then pushing, for random words;
    (b) delta section: the barycenter of a point mass at an atom is the atom;
    (c) point-mass pullback: a meta-measure whose barycenter is a vertex
        point mass puts all its mass on that single vertex atom.
    """
    lifted = lift_system(sys, q)
    grid = lifted.grid
    n = len(grid.atoms)
    rng = random.Random(seed)
    violations: list[str] = []

    for i, atom in enumerate(grid.atoms):
        got = barycenter(grid, Measure.point_mass(n, i))
        if got != atom:
            violations.append(f"delta section fails at atom {i}")

    m = len(grid.base)
    vertex_atoms = {grid.vertex_index(x): x for x in range(m)}
    for t in range(trials):
        rho = random_measure(rng, n)
        w = _random_word(rng, len(sys.generators))
        lhs = barycenter(grid, push_meta(lifted, w, rho))
        rhs = pushforward(sys, w, barycenter(grid, rho))
        if lhs != rhs:
            violations.append(f"equivariance fails on trial {t}, word {w}")
        bc = barycenter(grid, rho)
        if bc.is_point_mass():
            x = bc.point_of_mass()
            if not (
                rho.is_point_mass()
                and rho.point_of_mass() == grid.vertex_index(x)
            ):
                violations.append(f"point-mass pullback fails on trial {t}")
        # Adversarial direction for (c): mass split between a vertex atom and
        # any other atom must never average back to the vertex.
        vi = rng.choice(list(vertex_atoms))
        other = rng.randrange(n)
        if other != vi:
            mix = Measure.point_mass(n, vi).mix(
                Measure.point_mass(n, other), Fraction(rng.randint(1, 5), 6)
            )
            if barycenter(grid, mix) == grid.atoms[vi]:
                violations.append(
                    f"point-mass pullback fails on mixture trial {t}"
                )
    return CheckReport("psi_laws", trials, tuple(violations))


def psi_homomorphism_check(
    table: SemigroupTable, q: int, trials: int, seed: int
) -> CheckReport:
    """Check that the barycenter respects convolution exactly.

    Meta-level convolution pushes the product of two q-grid meta-measures
    through the semigroup product of atoms; the results live on the q^2 grid
    (no rounding), where the identity barycenter(rho1 conv rho2) =
    barycenter(rho1) * barycenter(rho2) is asserted exactly.
    """
    m = len(table)
    base = FiniteSpace.discrete(tuple(f"s{i}" for i in range(m)))
    grid = GridSimplex.build(base, q)
    fine = GridSimplex.build(base, q * q)
    n = len(grid.atoms)
    rng = random.Random(seed)
    violations: list[str] = []
    for t in range(trials):
        rho1 = random_measure(rng, n)
        rho2 = random_measure(rng, n)
        fine_weights = [ZERO] * len(fine.atoms)
        for wa, a in zip(rho1.weights, grid.atoms):
            if wa == 0:
                continue
            for wb, b in zip(rho2.weights, grid.atoms):
                if wb == 0:
                    continue
                fine_weights[fine.atom_index(convolution(table, a, b))] += wa * wb
        lhs = barycenter(fine, Measure(tuple(fine_weights)))
        rhs = convolution(
            table, barycenter(grid, rho1), barycenter(grid, rho2)
        )
        if lhs != rhs:
            violations.append(f"homomorphism law fails on trial {t}")
    return CheckReport("psi_homomorphism", trials, tuple(violations))


class HarnessMode(enum.Enum):
    LIFT_PROXIMAL = "prop1"
    LIFT_STRONG = "thm"


@dataclass(frozen=True)
class HarnessRow:
    """Verdict pair at one grid resolution."""

    q: int
    base: Verdict
    lift: Verdict

    @property
    def agree(self) -> Optional[bool]:
        if Status.UNKNOWN in (self.base.status, self.lift.status):
            return None
        return self.base.status is self.lift.status


@dataclass(frozen=True)
class HarnessReport:
    mode: HarnessMode
    rows: tuple[HarnessRow, ...]

    @property
    def outcome(self) -> str:
        flags = [row.agree for row in self.rows]
        if any(f is False for f in flags):
            return "FAIL"
        if any(f is None for f in flags):
            return "INCONCLUSIVE"
        return "PASS"

    @property
    def consistent_across_q(self) -> bool:
        """Decided lift statuses agree between all tested resolutions."""
        decided = {
            row.lift.status for row in self.rows
            if row.lift.status is not Status.UNKNOWN
        }
        return len(decided) <= 1


def equivalence_harness(
    sys: ActionSystem, q: int, b: Budget, mode: HarnessMode
) -> HarnessReport:
    """Compare the base strong-proximality verdict with the lifted verdict.

    Mode LIFT_PROXIMAL asks whether the lifted system is proximal; mode
    LIFT_STRONG asks whether it is strongly proximal.  Either way the two
    verdicts must agree; UNKNOWN on either side makes the row inconclusive
    rather than failed.  Resolutions 1, 2, 3 are always cross-checked
    alongside the requested q as a stability probe.
    """
    base_verdict = strongly_proximal(sys, b)
    rows = []
    for qq in sorted({1, 2, 3, q}):
        lifted = lift_system(sys, qq)
        if mode is HarnessMode.LIFT_PROXIMAL:
            lift_verdict = is_proximal(lifted.system, b)
        else:
            lift_verdict = strongly_proximal(lifted.system, b)
        rows.append(HarnessRow(qq, base_verdict, lift_verdict))
    return HarnessReport(mode, tuple(rows))


def invariant_metas(sys: ActionSystem, q: int) -> list[MetaMeasure]:
    """Extreme points of the polytope of generator-invariant meta-measures.

    Invariance under each generator (hence under the generated semigroup)
    is a linear condition: the pushforward along the lifted atom map must
    reproduce the meta-measure.  The resulting polytope is described by its
    extreme points, exactly.  For a strongly proximal system every extreme
    point is expected to be a point mass at a vertex atom, and a non
    point-mass extreme certifies failure of strong proximality.
    """
    lifted = lift_system(sys, q)
    n = len(lifted.grid.atoms)
    rows: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    for t in lifted.generators:
        preimages: dict[int, list[int]] = {}
        for i, j in enumerate(t.image):
            preimages.setdefault(j, []).append(i)
        if all(p == [j] for j, p in preimages.items()):
            continue  # identity atom map constrains nothing
        for j in range(n):
            row = [ZERO] * n
            for i in preimages.get(j, []):
                row[i] += 1
            row[j] -= 1
            if any(row):
                rows.append(row)
                rhs.append(ZERO)
    rows.append([Fraction(1)] * n)
    rhs.append(Fraction(1))
    vertices = polytope_vertices(rows, rhs, n)
    metas = [Measure(tuple(v)) for v in vertices]
    metas.sort(key=lambda mmeas: mmeas.weights)
    return metas
