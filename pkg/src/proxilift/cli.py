"""Command line front end: spec files, analysis reports, and the SL demo.

Spec files are JSON with every rational given exactly (integers or "p/q"
strings; floats are rejected), so any system can round-trip through the
format without loss.  Reports are JSON with stable key order and a content
digest over everything except timing, which makes equal inputs produce
byte-identical reports up to the timing block.

The demo subcommand is the one deliberately floating-point corner: it
tabulates a determinant-one diagonal action on R^3 that merges pairs in a
plane (proximality evidence) while pushing volume off every fixed cube, so
no subsequence can drive measures to point masses (strong proximality
fails).
"""

from __future__ import annotations

import argparse
import hashlib
import json
import math
import re
import sys as _sys
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Optional, Sequence

from . import __version__
from .actions import (
    ActionSystem,
    Kind,
    SemigroupTable,
    StochasticMatrix,
    Transformation,
    dobrushin,
)
from .affine import (
    AffineVertexMap,
    SimplexModel,
    corollary_harness,
    f_equivariance_check,
)
from .errors import ProxiliftError, SpecError
from .lift import (
    HarnessMode,
    HarnessReport,
    HarnessRow,
    CheckReport,
    equivalence_harness,
    invariant_metas,
    lift_system,
    push_meta,
    psi_checks,
    psi_homomorphism_check,
)
from .proximality import (
    Budget,
    Status,
    Verdict,
    is_proximal,
    reset_word,
    strongly_proximal,
)
from .spaces import (
    FiniteSpace,
    Measure,
    tightness_profile,
)
from .util import env_override

_RATIONAL_RE = re.compile(r"^-?\d+(/[1-9]\d*)?$")

Replay = tuple[str, Callable[[], bool]]


# ---------------------------------------------------------------------------
# Spec parsing (exact rationals only; every error carries its JSON path).

def parse_rational(node: Any, path: str) -> Fraction:
    if isinstance(node, bool):
        raise SpecError(path, "expected a rational, got a boolean")
    if isinstance(node, int):
        return Fraction(node)
    if isinstance(node, float):
        raise SpecError(path, "floats are forbidden in spec files; write \"p/q\"")
    if isinstance(node, str):
        if not _RATIONAL_RE.match(node):
            raise SpecError(path, f"not a rational literal: {node!r}")
        return Fraction(node)
    raise SpecError(path, f"expected a rational, got {type(node).__name__}")


def _expect_list(node: Any, path: str) -> list:
    if not isinstance(node, list):
        raise SpecError(path, f"expected a list, got {type(node).__name__}")
    return node


def _expect_int(node: Any, path: str) -> int:
    if isinstance(node, bool) or not isinstance(node, int):
        raise SpecError(path, f"expected an integer, got {type(node).__name__}")
    return node


def parse_space(node: Any, path: str) -> FiniteSpace:
    if not isinstance(node, dict):
        raise SpecError(path, "expected an object with labels and metric")
    labels = _expect_list(node.get("labels"), f"{path}.labels")
    if not all(isinstance(x, str) for x in labels):
        raise SpecError(f"{path}.labels", "labels must be strings")
    metric_node = _expect_list(node.get("metric"), f"{path}.metric")
    rows = []
    for i, row_node in enumerate(metric_node):
        row = _expect_list(row_node, f"{path}.metric[{i}]")
        rows.append(
            tuple(
                parse_rational(x, f"{path}.metric[{i}][{j}]")
                for j, x in enumerate(row)
            )
        )
    try:
        return FiniteSpace(tuple(labels), tuple(rows))
    except ProxiliftError as exc:
        raise SpecError(path, str(exc)) from exc


def parse_action(node: Any, space: FiniteSpace, path: str) -> ActionSystem:
    if not isinstance(node, dict):
        raise SpecError(path, "expected an object with kind and generators")
    kind_raw = node.get("kind")
    try:
        kind = Kind(kind_raw)
    except ValueError:
        raise SpecError(
            f"{path}.kind",
            f"kind must be 'deterministic' or 'stochastic', got {kind_raw!r}",
        ) from None
    gen_nodes = _expect_list(node.get("generators"), f"{path}.generators")
    if not gen_nodes:
        raise SpecError(f"{path}.generators", "need at least one generator")
    gens: list = []
    for gi, gnode in enumerate(gen_nodes):
        gpath = f"{path}.generators[{gi}]"
        glist = _expect_list(gnode, gpath)
        if kind is Kind.DETERMINISTIC:
            image = tuple(
                _expect_int(x, f"{gpath}[{i}]") for i, x in enumerate(glist)
            )
            try:
                gens.append(Transformation(image))
            except ProxiliftError as exc:
                raise SpecError(gpath, str(exc)) from exc
        else:
            rows = []
            for i, row_node in enumerate(glist):
                row = _expect_list(row_node, f"{gpath}[{i}]")
                rows.append(
                    tuple(
                        parse_rational(x, f"{gpath}[{i}][{j}]")
                        for j, x in enumerate(row)
                    )
                )
            try:
                gens.append(StochasticMatrix(tuple(rows)))
            except ProxiliftError as exc:
                raise SpecError(gpath, str(exc)) from exc
    try:
        return ActionSystem(space, kind, tuple(gens))
    except ProxiliftError as exc:
        raise SpecError(path, str(exc)) from exc


def parse_table(node: Any, path: str) -> SemigroupTable:
    rows = []
    for i, row_node in enumerate(_expect_list(node, path)):
        row = _expect_list(row_node, f"{path}[{i}]")
        rows.append(
            tuple(_expect_int(x, f"{path}[{i}][{j}]") for j, x in enumerate(row))
        )
    try:
        return SemigroupTable(tuple(rows))
    except ProxiliftError as exc:
        raise SpecError(path, str(exc)) from exc


def parse_simplex(
    node: Any, path: str
) -> tuple[SimplexModel, tuple[AffineVertexMap, ...]]:
    if not isinstance(node, dict):
        raise SpecError(path, "expected an object with vertices and maps")
    vert_nodes = _expect_list(node.get("vertices"), f"{path}.vertices")
    vertices = []
    for i, vnode in enumerate(vert_nodes):
        row = _expect_list(vnode, f"{path}.vertices[{i}]")
        vertices.append(
            tuple(
                parse_rational(x, f"{path}.vertices[{i}][{j}]")
                for j, x in enumerate(row)
            )
        )
    try:
        model = SimplexModel(tuple(vertices))
    except ProxiliftError as exc:
        raise SpecError(f"{path}.vertices", str(exc)) from exc
    map_nodes = _expect_list(node.get("maps"), f"{path}.maps")
    if not map_nodes:
        raise SpecError(f"{path}.maps", "need at least one map")
    maps = []
    for mi, mnode in enumerate(map_nodes):
        mpath = f"{path}.maps[{mi}]"
        mlist = _expect_list(mnode, mpath)
        try:
            if all(isinstance(x, int) and not isinstance(x, bool) for x in mlist):
                maps.append(
                    AffineVertexMap.from_vertex_images(mlist, model.n)
                )
            else:
                rows = []
                for i, row_node in enumerate(mlist):
                    row = _expect_list(row_node, f"{mpath}[{i}]")
                    rows.append(
                        tuple(
                            parse_rational(x, f"{mpath}[{i}][{j}]")
                            for j, x in enumerate(row)
                        )
                    )
                maps.append(AffineVertexMap(tuple(rows)))
        except SpecError:
            raise
        except ProxiliftError as exc:
            raise SpecError(mpath, str(exc)) from exc
    return model, tuple(maps)


@dataclass(frozen=True)
class ParsedSpec:
    path: str
    sha256: str
    system: Optional[ActionSystem]
    table: Optional[SemigroupTable]
    simplex: Optional[SimplexModel]
    maps: Optional[tuple[AffineVertexMap, ...]]


_KNOWN_KEYS = {"space", "action", "table", "simplex"}


def load_spec(path: str) -> ParsedSpec:
    with open(path, "rb") as fh:
        raw = fh.read()
    digest = hashlib.sha256(raw).hexdigest()
    try:
        doc = json.loads(raw.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise SpecError(path, f"not valid UTF-8 JSON ({exc})") from exc
    if not isinstance(doc, dict):
        raise SpecError(path, "top level must be a JSON object")
    unknown = set(doc) - _KNOWN_KEYS
    if unknown:
        raise SpecError(path, f"unknown keys: {sorted(unknown)}")
    system = None
    if "action" in doc:
        if "space" not in doc:
            raise SpecError(path, "action requires a space")
        space = parse_space(doc["space"], "space")
        system = parse_action(doc["action"], space, "action")
    elif "space" in doc:
        parse_space(doc["space"], "space")
        raise SpecError(path, "space without an action is useless; add one")
    table = parse_table(doc["table"], "table") if "table" in doc else None
    model, maps = (None, None)
    if "simplex" in doc:
        model, maps = parse_simplex(doc["simplex"], "simplex")
    return ParsedSpec(path, digest, system, table, model, maps)


def rational_str(x: Fraction) -> str:
    return str(x)


def serialize_spec(spec: ParsedSpec) -> dict:
    """Spec back to its JSON form; parsing the result reproduces the spec."""
    out: dict[str, Any] = {}
    if spec.system is not None:
        sysm = spec.system
        out["space"] = {
            "labels": list(sysm.space.labels),
            "metric": [
                [rational_str(x) for x in row] for row in sysm.space.metric
            ],
        }
        if sysm.kind is Kind.DETERMINISTIC:
            gens: list = [list(g.image) for g in sysm.generators]
        else:
            gens = [
                [[rational_str(x) for x in row] for row in g.rows]
                for g in sysm.generators
            ]
        out["action"] = {"kind": sysm.kind.value, "generators": gens}
    if spec.table is not None:
        out["table"] = [list(row) for row in spec.table.table]
    if spec.simplex is not None and spec.maps is not None:
        out["simplex"] = {
            "vertices": [
                [rational_str(x) for x in v] for v in spec.simplex.vertices
            ],
            "maps": [
                list(m.vertex_images())
                if m.is_deterministic()
                else [[rational_str(x) for x in row] for row in m.rows]
                for m in spec.maps
            ],
        }
    return out


# ---------------------------------------------------------------------------
# Report assembly.

def verdict_json(v: Verdict) -> dict:
    return {
        "status": v.status.value,
        "witness": list(v.witness) if v.witness is not None else None,
        "certificate": v.certificate,
    }


def check_report_json(rep: CheckReport) -> dict:
    return {
        "name": rep.name,
        "trials": rep.trials,
        "violations": list(rep.violations),
        "ok": rep.ok,
    }


def harness_row_json(row: HarnessRow) -> dict:
    return {
        "q": row.q,
        "base": verdict_json(row.base),
        "lift": verdict_json(row.lift),
        "agree": row.agree,
    }


def harness_json(rep: HarnessReport) -> dict:
    return {
        "mode": rep.mode.value,
        "rows": [harness_row_json(r) for r in rep.rows],
        "outcome": rep.outcome,
        "consistent_across_q": rep.consistent_across_q,
    }


def _constant_replay(sysm: ActionSystem, word: tuple) -> Callable[[], bool]:
    def run() -> bool:
        return sysm.word_transformation(word).is_constant()

    return run


def _contraction_replay(
    sysm: ActionSystem, word: tuple
) -> Callable[[], bool]:
    def run() -> bool:
        return dobrushin(sysm.word_matrix(word)) < 1

    return run


def _vertex_crowd_replay(
    sysm: ActionSystem, word: tuple, epsilon: Fraction
) -> Callable[[], bool]:
    def run() -> bool:
        mat = sysm.word_matrix(word)
        crowd = max(min(col) for col in zip(*mat.rows))
        return 1 - crowd < epsilon

    return run


def _mode_base(
    system: ActionSystem, b: Budget
) -> tuple[dict, int, list[Replay]]:
    results: dict[str, Any] = {}
    replays: list[Replay] = []
    prox = is_proximal(system, b)
    strong = strongly_proximal(system, b)
    results["is_proximal"] = verdict_json(prox)
    results["strongly_proximal"] = verdict_json(strong)
    verdicts = [prox, strong]
    if system.kind is Kind.DETERMINISTIC:
        reset = reset_word(system, b)
        results["reset_word"] = verdict_json(reset)
        verdicts.append(reset)
        for name, v in (("reset_word", reset), ("strongly_proximal", strong)):
            if v.status is Status.YES and v.witness is not None:
                replays.append(
                    (f"{name} witness is constant", _constant_replay(system, v.witness))
                )
    else:
        if prox.status is Status.YES and prox.witness is not None:
            replays.append(
                ("is_proximal witness contracts", _contraction_replay(system, prox.witness))
            )
        if strong.status is Status.YES and strong.witness is not None:
            replays.append(
                (
                    "strongly_proximal witness crowds a vertex",
                    _vertex_crowd_replay(system, strong.witness, b.epsilon),
                )
            )
    code = 0 if all(v.status is not Status.UNKNOWN for v in verdicts) else 2
    return results, code, replays


def _mode_harness(
    system: ActionSystem, q: int, b: Budget, mode: HarnessMode
) -> tuple[dict, int, list[Replay]]:
    rep = equivalence_harness(system, q, b, mode)
    replays: list[Replay] = []
    for row in rep.rows:
        if row.base.status is Status.YES and row.base.witness is not None:
            replays.append(
                (
                    f"q={row.q} base witness is constant",
                    _constant_replay(system, row.base.witness),
                )
            )
        if row.lift.status is Status.YES and row.lift.witness is not None:
            lifted = lift_system(system, row.q)
            replays.append(
                (
                    f"q={row.q} lift witness is constant",
                    _constant_replay(lifted.system, row.lift.witness),
                )
            )
    code = {"PASS": 0, "INCONCLUSIVE": 2, "FAIL": 1}[rep.outcome]
    return {"harness": harness_json(rep)}, code, replays


def _mode_psi(
    spec: ParsedSpec, system: ActionSystem, q: int, trials: int, seed: int
) -> tuple[dict, int, list[Replay]]:
    results: dict[str, Any] = {
        "psi_laws": check_report_json(psi_checks(system, q, trials, seed))
    }
    ok = results["psi_laws"]["ok"]
    if spec.table is not None:
        rep2 = psi_homomorphism_check(spec.table, q, trials, seed)
        results["psi_homomorphism"] = check_report_json(rep2)
        ok = ok and rep2.ok
    return results, 0 if ok else 1, []


def _mode_invariant(
    system: ActionSystem, q: int
) -> tuple[dict, int, list[Replay]]:
    metas = invariant_metas(system, q)
    lifted = lift_system(system, q)
    grid = lifted.grid
    rows = []
    for meta in metas:
        atom_ok = meta.is_point_mass() and grid.atoms[
            meta.point_of_mass()
        ].is_point_mass()
        rows.append(
            {
                "weights": [rational_str(w) for w in meta.weights],
                "point_mass_at_vertex": atom_ok,
            }
        )
    replays: list[Replay] = []
    for idx, meta in enumerate(metas):
        def run(meta: Measure = meta) -> bool:
            return all(
                push_meta(lifted, (gi,), meta) == meta
                for gi in range(len(system.generators))
            )

        replays.append((f"extreme meta {idx} is invariant", run))
    results = {
        "invariant_metas": {
            "count": len(metas),
            "extremes": rows,
            "all_point_masses_at_vertices": all(
                r["point_mass_at_vertex"] for r in rows
            ),
        }
    }
    return results, 0, replays


def _mode_affine(
    spec: ParsedSpec, q: int, b: Budget, trials: int, seed: int
) -> tuple[dict, int, list[Replay]]:
    if spec.simplex is None or spec.maps is None:
        raise SpecError(spec.path, "mode affine needs a simplex block")
    equiv = f_equivariance_check(spec.simplex, spec.maps, trials, seed)
    cor = corollary_harness(spec.simplex, spec.maps, q, b)
    results = {
        "f_equivariance": check_report_json(equiv),
        "corollary": {
            "extended": cor.extended,
            "proximal": verdict_json(cor.proximal),
            "strong": verdict_json(cor.strong),
            "outcome": cor.outcome,
        },
    }
    replays: list[Replay] = []
    from .affine import vertex_system

    lifted = lift_system(vertex_system(spec.simplex, spec.maps), q)
    if cor.strong.status is Status.YES and cor.strong.witness is not None:
        replays.append(
            (
                "corollary strong witness is constant",
                _constant_replay(lifted.system, cor.strong.witness),
            )
        )
    if cor.outcome == "FAIL" or not equiv.ok:
        code = 1
    elif cor.outcome == "INCONCLUSIVE":
        code = 2
    else:
        code = 0
    return results, code, replays


def _canonical_digest(report: dict) -> str:
    body = {k: v for k, v in report.items() if k not in ("timing", "report_digest")}
    blob = json.dumps(body, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode("utf-8")).hexdigest()


def _text_lines(obj: Any, indent: int = 0) -> list[str]:
    pad = "  " * indent
    if isinstance(obj, dict):
        lines = []
        for k, v in obj.items():
            if isinstance(v, (dict, list)):
                lines.append(f"{pad}{k}:")
                lines.extend(_text_lines(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {v}")
        return lines
    if isinstance(obj, list):
        lines = []
        for v in obj:
            if isinstance(v, (dict, list)):
                lines.append(f"{pad}-")
                lines.extend(_text_lines(v, indent + 1))
            else:
                lines.append(f"{pad}- {v}")
        return lines
    return [f"{pad}{obj}"]


def analyze(args: argparse.Namespace) -> int:
    started = time.monotonic()
    spec = load_spec(args.spec)
    b = Budget(args.max_word_len, args.max_closure, args.epsilon)
    mode = args.mode
    needs_system = mode in ("base", "prop1", "thm", "psi", "invariant")
    if needs_system and spec.system is None:
        raise SpecError(spec.path, f"mode {mode} needs a space and action")
    if mode == "base":
        results, code, replays = _mode_base(spec.system, b)
    elif mode in ("prop1", "thm"):
        results, code, replays = _mode_harness(
            spec.system, args.grid, b, HarnessMode(mode)
        )
    elif mode == "psi":
        results, code, replays = _mode_psi(
            spec, spec.system, args.grid, args.trials, args.seed
        )
    elif mode == "invariant":
        results, code, replays = _mode_invariant(spec.system, args.grid)
    else:
        results, code, replays = _mode_affine(
            spec, args.grid, b, args.trials, args.seed
        )
    report: dict[str, Any] = {
        "tool": {"name": "proxilift", "version": __version__},
        "input": {"path": spec.path, "sha256": spec.sha256},
        "flags": {
            "mode": mode,
            "grid": args.grid,
            "max_word_len": args.max_word_len,
            "max_closure": args.max_closure,
            "epsilon": rational_str(args.epsilon),
            "seed": args.seed,
            "trials": args.trials,
        },
        "results": results,
    }
    if args.verify:
        failures = [desc for desc, run in replays if not run()]
        report["verify"] = {
            "checked": len(replays),
            "ok": not failures,
            "failures": failures,
        }
        if failures:
            code = 1
    report["report_digest"] = _canonical_digest(report)
    report["timing"] = {"seconds": round(time.monotonic() - started, 6)}
    if args.format == "json":
        print(json.dumps(report, indent=2, sort_keys=True))
    else:
        print("\n".join(_text_lines(report)))
    return code


# ---------------------------------------------------------------------------
# The SL demo: floats on purpose, everything else in the tool stays exact.

def _demo_schedule(n_max: int, steps: int) -> list[int]:
    if steps < 2 or n_max < 2:
        return [max(1, n_max)]
    vals = {1, n_max}
    for i in range(steps):
        vals.add(max(1, round(n_max ** (i / (steps - 1)))))
    return sorted(vals)


def _ball_slab_volume(a: float, r: float, cells: int) -> float:
    """Volume of {x^2+y^2+z^2 <= r^2, |x| <= a, |y| <= a} by midpoint rule."""
    if a >= r:
        return 4.0 / 3.0 * math.pi * r**3
    dx = 2.0 * a / cells
    total = 0.0
    for i in range(cells):
        x = -a + (i + 0.5) * dx
        for j in range(cells):
            y = -a + (j + 0.5) * dx
            rest = r * r - x * x - y * y
            if rest > 0:
                total += 2.0 * math.sqrt(rest) * dx * dx
    return total


def _cube_mass(n: int, c: Fraction) -> Fraction:
    """Exact mass of the pushed uniform cube measure inside [-c, c]^3.

    The uniform measure on [-1, 1]^3 pushed through diag(1/n, 1/n, n^2) is
    uniform on [-1/n, 1/n]^2 x [-n^2, n^2] with density 1/8 (determinant
    one preserves volume), so the cube mass factorizes per axis.
    """
    hw = min(Fraction(1, n), c)
    zh = min(Fraction(n * n), c)
    return hw * hw * zh


def demo_sl(args: argparse.Namespace) -> int:
    radius = args.radius
    cubes = args.cubes
    if sorted(cubes) != cubes or len(set(cubes)) != len(cubes):
        raise SpecError("--cubes", "cube half-widths must be strictly increasing")
    schedule = _demo_schedule(args.n_max, args.steps)
    density = 1.0 / 8.0
    ball_volume = 4.0 / 3.0 * math.pi * radius**3

    # Pair evidence: x and y differ inside the contracted plane, so the
    # determinant-one map shrinks their gap by exactly 1/n.
    x0, y0 = (1.0, 0.0, 0.0), (0.0, 1.0, 0.0)
    initial_gap = math.dist(x0, y0)

    header = ["n", "pair_gap", "max_ball_mass"] + [
        f"mass_in_K{i + 1}" for i in range(len(cubes))
    ]
    rows: list[list[float]] = []
    shell_measures: list[Measure] = []
    for n in schedule:
        gap = initial_gap / n
        a = min(1.0 / n, radius)
        ball_mass = density * _ball_slab_volume(a, radius, args.grid)
        cube_masses = [_cube_mass(n, c) for c in cubes]
        rows.append([float(n), gap, ball_mass] + [float(m) for m in cube_masses])
        shells = [cube_masses[0]]
        for prev, cur in zip(cube_masses, cube_masses[1:]):
            shells.append(cur - prev)
        shells.append(1 - cube_masses[-1])
        shell_measures.append(Measure(tuple(shells)))

    csv_lines = [",".join(header)]
    for row in rows:
        csv_lines.append(",".join(f"{v:.12g}" for v in row))
    csv_text = "\n".join(csv_lines) + "\n"

    nested = [list(range(i + 1)) for i in range(len(cubes))]
    profile = tightness_profile(shell_measures, nested)

    summary = []
    final_n = schedule[-1]
    summary.append(
        f"pair gap: {initial_gap:.6g} at n=1, {initial_gap / final_n:.6g} at "
        f"n={final_n} (ratio {1 / final_n:.3g}; shrinks as 1/n)"
    )
    peak = max(row[2] for row in rows)
    summary.append(
        f"max ball mass (radius {radius:g}): peak {peak:.6g} vs uniform bound "
        f"density*volume = {density * ball_volume:.6g}"
    )
    for c, p, per_step in zip(
        cubes, profile, zip(*[r[3:] for r in rows])
    ):
        below = next(
            (schedule[i] for i, v in enumerate(per_step) if v < 0.9), None
        )
        where = f"from n={below} onward" if below is not None else "never"
        summary.append(
            f"cube |x|<={c}: min mass over the run {float(p):.6g}; "
            f"below 0.9 {where}"
        )
    summary.append(
        "no fixed cube retains mass 0.9, so the pushed measures admit no "
        "limit at all, let alone a point mass: strong proximality fails "
        "along this sequence while pair gaps vanish"
    )
    summary_text = "\n".join(summary) + "\n"

    if args.out and args.out != "-":
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(csv_text)
        _sys.stdout.write(summary_text)
    else:
        _sys.stdout.write(csv_text)
        _sys.stderr.write(summary_text)
    return 0


# ---------------------------------------------------------------------------
# Argument plumbing; every flag can also come from PROXILIFT_<NAME>.

def _env_int(name: str, fallback: int) -> int:
    raw = env_override(name)
    if raw is None:
        return fallback
    try:
        return int(raw)
    except ValueError:
        return fallback


def _env_str(name: str, fallback: str) -> str:
    raw = env_override(name)
    return raw if raw is not None else fallback


def _rational_flag(text: str) -> Fraction:
    try:
        return parse_rational(text, "flag")
    except SpecError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _cube_list(text: str) -> list[Fraction]:
    out = []
    for part in text.split(","):
        out.append(parse_rational(part.strip(), "--cubes"))
    return out


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="proxilift",
        description=(
            "Exact analysis of semigroup actions on finite metric spaces "
            "and their lifts to measure simplices"
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    an = sub.add_parser("analyze", help="analyze a JSON system spec")
    an.add_argument("spec", help="path to the spec file")
    an.add_argument(
        "--mode",
        choices=["base", "prop1", "thm", "psi", "invariant", "affine"],
        default=_env_str("MODE", "base"),
    )
    an.add_argument("--grid", type=int, default=_env_int("GRID", 2))
    an.add_argument(
        "--max-word-len", type=int, default=_env_int("MAX_WORD_LEN", 64)
    )
    an.add_argument(
        "--max-closure", type=int, default=_env_int("MAX_CLOSURE", 100_000)
    )
    an.add_argument(
        "--epsilon",
        type=_rational_flag,
        default=Fraction(_env_str("EPSILON", "1/1000")),
    )
    an.add_argument(
        "--format", choices=["json", "text"], default=_env_str("FORMAT", "json")
    )
    an.add_argument("--seed", type=int, default=_env_int("SEED", 0))
    an.add_argument("--trials", type=int, default=_env_int("TRIALS", 200))
    an.add_argument(
        "--verify",
        action="store_true",
        help="replay every YES witness and record the outcome",
    )
    an.set_defaults(func=analyze)

    demo = sub.add_parser(
        "demo-sl", help="numeric demo of a proximal, not strongly proximal action"
    )
    demo.add_argument("--n-max", type=int, default=_env_int("N_MAX", 2000))
    demo.add_argument("--steps", type=int, default=_env_int("STEPS", 12))
    demo.add_argument(
        "--grid",
        type=int,
        default=_env_int("GRID", 200),
        help="quadrature cells per axis for the ball-mass integral",
    )
    demo.add_argument("--radius", type=float, default=0.1)
    demo.add_argument(
        "--cubes",
        type=_cube_list,
        default=[Fraction(1), Fraction(10), Fraction(100)],
        help="nested cube half-widths, comma separated rationals",
    )
    demo.add_argument("--out", default=None, help="CSV path ('-' for stdout)")
    demo.set_defaults(func=demo_sl)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SpecError as exc:
        print(f"error: {exc}", file=_sys.stderr)
        return 1
    except ProxiliftError as exc:
        print(f"error: {exc}", file=_sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=_sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
