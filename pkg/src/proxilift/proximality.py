"""Decision procedures for proximal and strongly proximal actions.

On a finite discrete space, convergence of a sequence t_n x is eventual
equality, so a pair of points is proximal exactly when some word over the
generators merges them; the pair graph (states are unordered pairs plus a
diagonal goal) decides that by breadth-first search.  A finite deterministic
system is strongly proximal exactly when some word acts as a constant map, a
reset word: applied to any measure it yields a point mass, and conversely a
sequence pushing every measure toward point masses must eventually act
constantly on a finite set.  Subset BFS from the full point set finds a
length-minimal reset word.

Stochastic systems get semi-decisions under an explicit budget: YES verdicts
carry a replayable word plus a contraction certificate, NO verdicts are
emitted only with a checkable obstruction, everything else is UNKNOWN.
"""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .actions import (
    ActionSystem,
    Kind,
    StochasticMatrix,
    Transformation,
    Word,
    dobrushin,
    pushforward,
)
from .errors import UnsupportedKind, ValidationError
from .linalg import solve_affine
from .spaces import Measure, tv_distance


class Status(enum.Enum):
    YES = "YES"
    NO = "NO"
    UNKNOWN = "UNKNOWN"


@dataclass(frozen=True)
class Verdict:
    """Outcome of a decision procedure, always with evidence attached."""

    status: Status
    witness: Optional[Word] = None
    certificate: Optional[str] = None

    def __post_init__(self) -> None:
        if self.status is Status.YES:
            if self.witness is None and self.certificate is None:
                raise ValidationError("YES verdict needs a witness or certificate")
        elif self.certificate is None:
            raise ValidationError(f"{self.status.value} verdict needs a certificate")


def yes(witness: Optional[Word] = None, certificate: Optional[str] = None) -> Verdict:
    return Verdict(Status.YES, witness, certificate)


def no(certificate: str) -> Verdict:
    return Verdict(Status.NO, None, certificate)


def unknown(certificate: str) -> Verdict:
    return Verdict(Status.UNKNOWN, None, certificate)


@dataclass(frozen=True)
class Budget:
    """Search limits; epsilon is the stochastic closeness threshold."""

    max_word_len: int = 64
    max_closure: int = 100_000
    epsilon: Fraction = Fraction(1, 1000)

    def __post_init__(self) -> None:
        if self.max_word_len < 1 or self.max_closure < 1:
            raise ValidationError("budget limits must be positive")
        if not 0 < self.epsilon < 1:
            raise ValidationError("epsilon must lie strictly between 0 and 1")


def _gens_as_transformations(sys: ActionSystem) -> Optional[list[Transformation]]:
    """Deterministic generator list, unwrapping 0/1 stochastic matrices."""
    out: list[Transformation] = []
    for g in sys.generators:
        if isinstance(g, Transformation):
            out.append(g)
        elif isinstance(g, StochasticMatrix) and g.is_deterministic():
            out.append(g.to_transformation())
        else:
            return None
    return out


def _pair_bfs(gens: list[Transformation], x: int, y: int) -> Optional[Word]:
    """Shortest word merging x and y, ties lexicographic; None if impossible."""
    if x == y:
        return ()
    start = (min(x, y), max(x, y))
    parent: dict[tuple[int, int], tuple[tuple[int, int], int]] = {}
    seen = {start}
    queue: deque[tuple[int, int]] = deque([start])
    goal: Optional[tuple[int, int]] = None
    final_letter = -1
    while queue and goal is None:
        p = queue.popleft()
        for gi, g in enumerate(gens):
            a, b = g(p[0]), g(p[1])
            if a == b:
                goal = p
                final_letter = gi
                break
            q = (min(a, b), max(a, b))
            if q not in seen:
                seen.add(q)
                parent[q] = (p, gi)
                queue.append(q)
    if goal is None:
        return None
    letters = [final_letter]
    node = goal
    while node != start:
        node, gi = parent[node]
        letters.append(gi)
    return tuple(reversed(letters))


def _mergeable_pairs(gens: list[Transformation], m: int) -> set[tuple[int, int]]:
    """All unordered pairs from which the diagonal is reachable."""
    pairs = [(i, j) for i in range(m) for j in range(i + 1, m)]
    reverse: dict[tuple[int, int], list[tuple[int, int]]] = {p: [] for p in pairs}
    direct: list[tuple[int, int]] = []
    for p in pairs:
        for g in gens:
            a, b = g(p[0]), g(p[1])
            if a == b:
                direct.append(p)
            else:
                reverse[(min(a, b), max(a, b))].append(p)
    merged = set(direct)
    queue = deque(direct)
    while queue:
        q = queue.popleft()
        for p in reverse[q]:
            if p not in merged:
                merged.add(p)
                queue.append(p)
    return merged


def proximal_pair(sys: ActionSystem, x: int, y: int, b: Budget) -> Verdict:
    """Does some word send x and y to a common point (or epsilon-close masses)?

    Deterministic systems are decided exactly on the pair graph.  Stochastic
    systems search greedily for a word driving tv(delta_x S_w, delta_y S_w)
    below epsilon, with the Dobrushin product as an alternative certificate.
    """
    m = len(sys.space)
    if not (0 <= x < m and 0 <= y < m):
        raise ValidationError(f"point indices must lie in 0..{m - 1}")
    gens = _gens_as_transformations(sys)
    if gens is not None:
        w = _pair_bfs(gens, x, y)
        if w is None:
            return no(
                f"pair graph exhausted: diagonal unreachable from ({x},{y})"
            )
        return yes(w, f"word merges {x} and {y} exactly")
    return _stochastic_pair_search(
        sys,
        Measure.point_mass(m, x),
        Measure.point_mass(m, y),
        b,
        f"({x},{y})",
    )


def _stochastic_pair_search(
    sys: ActionSystem, mu: Measure, nu: Measure, b: Budget, label: str
) -> Verdict:
    """Greedy descent over words on tv(mu S_w, nu S_w), Dobrushin as tiebreak."""
    word: Word = ()
    matrix = sys.word_matrix(())
    cur_mu, cur_nu = mu, nu
    if tv_distance(cur_mu, cur_nu) < b.epsilon:
        return yes((), f"tv already below epsilon for {label}")
    for _ in range(b.max_word_len):
        best = None
        for gi, g in enumerate(sys.generators):
            assert isinstance(g, StochasticMatrix)
            nxt = matrix.then(g)
            t_mu = pushforward(sys, (gi,), cur_mu)
            t_nu = pushforward(sys, (gi,), cur_nu)
            key = (tv_distance(t_mu, t_nu), dobrushin(nxt), gi)
            if best is None or key < best[0]:
                best = (key, gi, nxt, t_mu, t_nu)
        assert best is not None
        (tv, coeff, _), gi, matrix, cur_mu, cur_nu = best
        word = word + (gi,)
        if tv < b.epsilon:
            return yes(word, f"tv = {tv} < epsilon = {b.epsilon} for {label}")
        if coeff < b.epsilon:
            return yes(
                word,
                f"dobrushin product = {coeff} < epsilon bounds tv for {label}",
            )
    return unknown(
        f"budget exhausted (max_word_len={b.max_word_len}); last tv = {tv}"
    )


def is_proximal(sys: ActionSystem, b: Budget) -> Verdict:
    """Is every pair of points proximal?

    Deterministic: exact, via multi-source reachability of the diagonal in
    the pair graph.  Stochastic: YES once some word has Dobrushin coefficient
    strictly below 1 (its powers contract every pair), otherwise UNKNOWN.
    """
    m = len(sys.space)
    gens = _gens_as_transformations(sys)
    if gens is not None:
        if m == 1:
            return yes(certificate="single point, trivially proximal")
        merged = _mergeable_pairs(gens, m)
        total = m * (m - 1) // 2
        if len(merged) == total:
            return yes(certificate=f"all {total} point pairs reach the diagonal")
        bad = min(
            (i, j) for i in range(m) for j in range(i + 1, m)
            if (i, j) not in merged
        )
        return no(
            f"pair {bad} cannot reach the diagonal "
            f"({total - len(merged)} of {total} pairs obstructed)"
        )
    word: Word = ()
    matrix = sys.word_matrix(())
    for _ in range(b.max_word_len):
        best = None
        for gi, g in enumerate(sys.generators):
            assert isinstance(g, StochasticMatrix)
            nxt = matrix.then(g)
            key = (dobrushin(nxt), gi)
            if best is None or key < best[0]:
                best = (key, gi, nxt)
        assert best is not None
        (coeff, _), gi, matrix = best
        word = word + (gi,)
        if coeff < 1:
            return yes(
                word,
                f"dobrushin(S_w) = {coeff} < 1, so powers of the word "
                "contract every pair of measures",
            )
    return unknown(
        f"budget exhausted (max_word_len={b.max_word_len}); "
        "no word with contraction coefficient below 1 found"
    )


def _apply_to_mask(images: list[int], mask: int) -> int:
    out = 0
    m = mask
    i = 0
    while m:
        if m & 1:
            out |= 1 << images[i]
        m >>= 1
        i += 1
    return out


def reset_word(sys: ActionSystem, b: Budget) -> Verdict:
    """Length-minimal word acting as a constant map, by subset BFS.

    States are images of the full point set; BFS is exact whenever the
    reachable subset family fits the closure budget.  Beyond the budget a
    greedy pair-merging fallback still produces valid (possibly non-minimal)
    witnesses or an exact pair obstruction.
    """
    gens = _gens_as_transformations(sys)
    if gens is None:
        raise UnsupportedKind("reset_word is defined for deterministic systems")
    m = len(sys.space)
    images = [list(g.image) for g in gens]
    full = (1 << m) - 1
    if m == 1:
        return yes((), "single point, identity already constant")
    parent: dict[int, tuple[int, int]] = {}
    seen = {full}
    queue: deque[int] = deque([full])
    exhausted = True
    while queue:
        mask = queue.popleft()
        for gi in range(len(gens)):
            nxt = _apply_to_mask(images[gi], mask)
            if nxt in seen:
                continue
            if len(seen) >= b.max_closure:
                exhausted = False
                queue.clear()
                break
            seen.add(nxt)
            parent[nxt] = (mask, gi)
            queue.append(nxt)
            if nxt & (nxt - 1) == 0:
                letters = []
                node = nxt
                while node != full:
                    node, g = parent[node]
                    letters.append(g)
                return yes(
                    tuple(reversed(letters)),
                    f"word is constant to point {nxt.bit_length() - 1}",
                )
    if exhausted:
        return no(
            f"subset BFS exhausted {len(seen)} reachable subsets, "
            "none a singleton"
        )
    return _greedy_reset(sys, gens, b)


def _greedy_reset(
    sys: ActionSystem, gens: list[Transformation], b: Budget
) -> Verdict:
    m = len(sys.space)
    current = list(range(m))
    word: Word = ()
    cap = b.max_word_len * m
    while len(set(current)) > 1:
        distinct = sorted(set(current))
        piece = _pair_bfs(gens, distinct[0], distinct[1])
        if piece is None:
            return no(
                f"pair ({distinct[0]},{distinct[1]}) can never merge, "
                "so no constant word exists"
            )
        word = word + piece
        if len(word) > cap:
            return unknown(
                f"greedy fallback exceeded word budget ({cap} letters)"
            )
        t = sys.word_transformation(piece)
        current = [t(p) for p in current]
    return yes(
        word,
        f"greedy pair merging, constant to point {current[0]} "
        "(witness may be non-minimal)",
    )


def strongly_proximal(sys: ActionSystem, b: Budget) -> Verdict:
    """Can every measure be pushed to (epsilon-close to) a point mass?

    Deterministic systems reduce exactly to reset_word: a constant word
    collapses every measure to a point mass, and on a finite space no weaker
    behaviour achieves convergence to point masses for all measures.
    Stochastic systems: YES when some word takes every row within epsilon of
    one common vertex row; NO for a single generator with a unique
    full-support stationary distribution plus strict contraction (all orbits
    then converge to an interior point); otherwise UNKNOWN.
    """
    gens = _gens_as_transformations(sys)
    if gens is not None:
        det_sys = (
            sys
            if sys.kind is Kind.DETERMINISTIC
            else ActionSystem(sys.space, Kind.DETERMINISTIC, tuple(gens))
        )
        v = reset_word(det_sys, b)
        if v.status is Status.YES:
            return yes(
                v.witness,
                "reset word collapses every measure to a point mass",
            )
        if v.status is Status.NO:
            return no(f"no constant word exists ({v.certificate})")
        return v
    if len(sys.generators) == 1:
        blocked = _single_generator_obstruction(sys, b)
        if blocked is not None:
            return blocked
    return _stochastic_vertex_search(sys, b)


def _single_generator_obstruction(sys: ActionSystem, b: Budget) -> Optional[Verdict]:
    """NO when orbits provably converge to one interior distribution."""
    s = sys.generators[0]
    assert isinstance(s, StochasticMatrix)
    m = len(s)
    rows = [
        [s.rows[i][j] - (1 if i == j else 0) for i in range(m)] for j in range(m)
    ]
    rows.append([Fraction(1)] * m)
    rhs = [Fraction(0)] * m + [Fraction(1)]
    solved = solve_affine([list(map(Fraction, r)) for r in rows], rhs)
    if solved is None:
        return None
    pi, basis = solved
    if basis or any(p <= 0 for p in pi):
        return None
    power = s
    for k in range(1, b.max_word_len + 1):
        coeff = dobrushin(power)
        if coeff < 1:
            margin = 1 - max(pi)
            return no(
                "unique stationary distribution "
                f"({', '.join(str(p) for p in pi)}) has full support and "
                f"dobrushin(S^{k}) = {coeff} < 1: every orbit converges to it, "
                f"staying tv >= {margin} away from every point mass in the limit"
            )
        power = power.then(s)
    return None


def _stochastic_vertex_search(sys: ActionSystem, b: Budget) -> Verdict:
    """Greedy search for a word whose rows all crowd one vertex column."""
    word: Word = ()
    matrix = sys.word_matrix(())

    def score(mat: StochasticMatrix) -> Fraction:
        # max over columns of the smallest entry; tv(row, delta_x) = 1 - row[x],
        # so rows all lie within eps of delta_x exactly when this exceeds 1-eps.
        return max(min(col) for col in zip(*mat.rows))

    for _ in range(b.max_word_len):
        best = None
        for gi, g in enumerate(sys.generators):
            assert isinstance(g, StochasticMatrix)
            nxt = matrix.then(g)
            key = (-score(nxt), dobrushin(nxt), gi)
            if best is None or key < best[0]:
                best = (key, gi, nxt)
        assert best is not None
        _, gi, matrix = best
        word = word + (gi,)
        s = score(matrix)
        if 1 - s < b.epsilon:
            cols = list(zip(*matrix.rows))
            target = max(range(len(cols)), key=lambda j: min(cols[j]))
            return yes(
                word,
                f"every row of S_w is within {1 - s} < epsilon of the "
                f"vertex row at point {target}",
            )
    return unknown(
        f"budget exhausted (max_word_len={b.max_word_len}); "
        "no word crowds all rows near one vertex"
    )


def measure_pair_proximal(
    sys: ActionSystem, mu: Measure, nu: Measure, b: Budget
) -> Verdict:
    """Does some word push mu and nu to equal (or epsilon-close) images?

    Deterministic: the joint orbit of (mu, nu) is finite, so BFS decides
    exactly within the closure budget.  Stochastic: greedy tv descent.
    """
    m = len(sys.space)
    if len(mu) != m or len(nu) != m:
        raise ValidationError("measures must match the space size")
    gens = _gens_as_transformations(sys)
    if gens is None:
        return _stochastic_pair_search(sys, mu, nu, b, "(mu,nu)")
    det_sys = (
        sys
        if sys.kind is Kind.DETERMINISTIC
        else ActionSystem(sys.space, Kind.DETERMINISTIC, tuple(gens))
    )
    if mu == nu:
        return yes((), "measures already equal")
    start = (mu, nu)
    parent: dict[tuple[Measure, Measure], tuple[tuple[Measure, Measure], int]] = {}
    seen = {start}
    queue: deque[tuple[Measure, Measure]] = deque([start])
    while queue:
        pair = queue.popleft()
        for gi in range(len(gens)):
            a = pushforward(det_sys, (gi,), pair[0])
            bb = pushforward(det_sys, (gi,), pair[1])
            if a == bb:
                letters = [gi]
                node = pair
                while node != start:
                    node, g = parent[node]
                    letters.append(g)
                return yes(
                    tuple(reversed(letters)),
                    "word pushes both measures to the same image",
                )
            nxt = (a, bb)
            if nxt in seen:
                continue
            if len(seen) >= b.max_closure:
                return unknown(
                    f"orbit budget exhausted (max_closure={b.max_closure})"
                )
            seen.add(nxt)
            parent[nxt] = (pair, gi)
            queue.append(nxt)
    return no(
        f"joint orbit exhausted ({len(seen)} image pairs), images never equal"
    )
