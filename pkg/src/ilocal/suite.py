"""Seeded randomized verification suites and the generators backing them.

Each suite draws its cases from a ``random.Random`` seeded once, checks a
structural identity, and reports counterexamples as JSON-able dicts; a
clean run is the expected outcome, so any failure indicates a bug in the
operations (or a deliberately mutated one under test).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional

from . import complexes as cx
from . import connected as cn
from . import doubling as db
from . import towers as tw
from .homology import homology

# -- random objects -------------------------------------------------------


def random_combination(
    rng: random.Random, max_terms: int, max_index: int, allow_cancelling: bool = False
) -> cn.LinearCombination:
    n = rng.randint(0, max_terms)
    indices = [rng.randint(1, max_index) for _ in range(n)]
    if allow_cancelling:
        terms = [(rng.choice((1, -1)), i) for i in indices]
    else:
        sign_of = {i: rng.choice((1, -1)) for i in set(indices)}
        terms = [(sign_of[i], i) for i in indices]
    return cn.LinearCombination(tuple(terms))


def random_even_d(rng: random.Random, lo: int = -10, hi: int = 10) -> Fraction:
    return Fraction(2 * rng.randint(lo // 2, hi // 2))


def _cycle_space(masks: List[int]) -> List[int]:
    """Combination-tracking nullspace of an F2 matrix given as column masks."""
    pivots: Dict[int, tuple] = {}
    cycles = []
    for j, col in enumerate(masks):
        combo = 1 << j
        while col:
            p = col.bit_length() - 1
            if p not in pivots:
                break
            pc, pcombo = pivots[p]
            col ^= pc
            combo ^= pcombo
        if col:
            pivots[col.bit_length() - 1] = (col, combo)
        else:
            cycles.append(combo)
    return cycles


def random_geometric_complex(rng: random.Random, max_cells: int = 12) -> cx.GeometricComplex:
    """A random valid complex grown cell by cell; every boundary is a cycle."""
    n0 = rng.randint(1, 3)
    cells = [cx.Cell(f"c{k}", 0, Fraction(2 * rng.randint(-3, 3))) for k in range(n0)]
    bdry: Dict[str, frozenset] = {}
    budget = rng.randint(n0, max_cells)
    k = n0
    while k < budget:
        base_dim = rng.choice(sorted({c.dim for c in cells}))
        layer = [c for c in cells if c.dim == base_dim]
        lower = [c for c in cells if c.dim == base_dim - 1]
        lpos = {c.id: i for i, c in enumerate(lower)}
        masks = [sum(1 << lpos[t] for t in bdry.get(c.id, ())) for c in layer]
        cycles = _cycle_space(masks)
        if cycles and rng.random() < 0.8:
            combo = 0
            for v in cycles:
                if rng.random() < 0.5:
                    combo ^= v
            if not combo:
                combo = rng.choice(cycles)
            support = {layer[i].id for i in range(len(layer)) if combo >> i & 1}
        else:
            support = set()
        if support:
            gr_of = {c.id: c.gr for c in layer}
            gr = min(gr_of[cid] for cid in support) - 2 * rng.randint(0, 3)
        else:
            gr = Fraction(2 * rng.randint(-5, 2))
        cells.append(cx.Cell(f"c{k}", base_dim + 1, gr))
        bdry[f"c{k}"] = frozenset(support)
        k += 1
    offset = Fraction(0)
    if rng.random() < 0.25:
        offset = Fraction(rng.randint(1, 3), rng.choice((1, 2, 3)))
    if offset:
        cells = [cx.Cell(c.id, c.dim, c.gr + offset) for c in cells]
    return cx.GeometricComplex(cells, bdry)


def _regrade(rng: random.Random, sc: cx.SplitComplex) -> cx.SplitComplex:
    """Remap the grading levels monotonically; shape and J are untouched."""
    levels = sorted({c.gr for c in sc.cells.values()}, reverse=True)
    new = {}
    cur = Fraction(2 * rng.randint(-2, 2))
    for lv in levels:
        new[lv] = cur
        cur -= 2 * rng.randint(1, 3)
    offset = Fraction(0)
    if rng.random() < 0.25:
        offset = Fraction(rng.randint(1, 3), rng.choice((1, 2)))
    cells = [cx.Cell(c.id, c.dim, new[c.gr] + offset) for c in sc.cells.values()]
    return cx.SplitComplex(cx.GeometricComplex(cells, sc.bdry), sc.J)


def random_split_complex(rng: random.Random, max_cells: int = 10) -> cx.SplitComplex:
    """A random split complex with free rank one, built from verified ops."""
    seed_kind = rng.randrange(3)
    if seed_kind == 0:
        s = cx.build_trivial()
    elif seed_kind == 1:
        s = cx.build_xi(rng.randint(1, 4))
    else:
        x = rng.randint(1, 2)
        s = cx.build_misordered(x, x + rng.randint(1, 2))
    for _ in range(rng.randint(0, 4)):
        ops = ["dual"]
        if len(s) + 2 <= max_cells:
            ops.append("double")
        if len(s) * 3 <= max_cells:
            ops.append("tensor")
        op = rng.choice(ops)
        if op == "dual":
            s = cx.dual(s)
        elif op == "double":
            w = s.width()
            cap = 4 if w == tw.INFINITE else min(4, int(w) // 2)
            s = db.double(s, rng.randint(0, cap), random_splitting(rng, s)).complex
        else:
            s = cx.tensor(s, cx.build_xi(rng.randint(1, 3)))
    if rng.random() < 0.7:
        s = _regrade(rng, s)
    return s


def random_splitting(rng: random.Random, sc: cx.SplitComplex) -> frozenset:
    return frozenset(rng.choice(pair) for pair in sc.pairs())


def admissible_deltas(sc: cx.SplitComplex, cap: int = 6) -> range:
    """All doubling parameters to probe; capped when the width is infinite."""
    w = sc.width()
    top = cap if w == tw.INFINITE else min(cap, int(w) // 2)
    return range(0, top + 1)


# -- the suites -----------------------------------------------------------


@dataclass(frozen=True)
class SuiteConfig:
    kunneth_cases: int = 25
    doubling_cases: int = 25
    local_cases: int = 10
    representative_cases: int = 40
    roundtrip_cases: int = 150
    duality_cases: int = 25
    max_terms: int = 4
    max_index: int = 6
    max_cells: int = 10


@dataclass
class SuiteResult:
    name: str
    cases: int = 0
    failures: List[dict] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures


@dataclass
class SuiteReport:
    seed: int
    results: List[SuiteResult]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def to_json(self) -> dict:
        return {
            "seed": self.seed,
            "passed": self.passed,
            "suites": [
                {"name": r.name, "cases": r.cases, "failures": r.failures}
                for r in self.results
            ],
        }


def _module_str(m: tw.FUModule) -> str:
    parts = []
    for t in m.canonical():
        length = "inf" if t.is_free else str(t.length)
        parts.append(f"T[{t.top}]({length})")
    return " + ".join(parts) if parts else "0"


def _guarded(result: SuiteResult, case: dict, check) -> None:
    """Run one case; any exception or mismatch becomes a counterexample."""
    result.cases += 1
    try:
        failure = check()
    except Exception as exc:  # noqa: BLE001 - reported as a counterexample
        failure = {"error": f"{type(exc).__name__}: {exc}"}
    if failure:
        result.failures.append({**case, **failure})


def _suite_kunneth(rng, config, result):
    for _ in range(config.kunneth_cases):
        c1 = random_geometric_complex(rng, config.max_cells)
        c2 = random_geometric_complex(rng, config.max_cells)

        def check(c1=c1, c2=c2):
            lhs = homology(cx.tensor(c1, c2)).module
            rhs = tw.kunneth(homology(c1).module, homology(c2).module)
            if lhs != rhs:
                return {"tensor_homology": _module_str(lhs), "kunneth": _module_str(rhs)}
            return None

        case = {"left": cx.complex_to_json(c1), "right": cx.complex_to_json(c2)}
        _guarded(result, case, check)


def _suite_doubling(rng, config, result):
    for _ in range(config.doubling_cases):
        sc = random_split_complex(rng, config.max_cells)
        base_module = homology(sc).module
        g = sc.maslov(sc.fixed)
        for delta in admissible_deltas(sc, cap=4):
            splitting = random_splitting(rng, sc)

            def check(sc=sc, delta=delta, splitting=splitting, g=g, base=base_module):
                got = homology(db.double(sc, delta, splitting).complex).module
                extra = (tw.Tower(g, delta),) if delta > 0 else ()
                expected = tw.FUModule(base.towers + extra)
                if got != expected:
                    return {"expected": _module_str(expected), "got": _module_str(got)}
                return None

            case = {"complex": cx.complex_to_json(sc), "delta": delta}
            _guarded(result, case, check)


def _suite_local_pair(rng, config, result):
    for _ in range(config.local_cases):
        sc = random_split_complex(rng, config.max_cells)
        for delta in admissible_deltas(sc, cap=3):
            splitting = random_splitting(rng, sc)

            def check(sc=sc, delta=delta, splitting=splitting):
                f = db.local_map_f(sc, delta, splitting)
                g = db.local_map_g(sc, delta, splitting)
                report = db.verify_local_pair(f, g)
                return None if report.passed else {"report": report.to_json()}

            case = {"complex": cx.complex_to_json(sc), "delta": delta}
            _guarded(result, case, check)


def _suite_representative(rng, config, result):
    for _ in range(config.representative_cases):
        lc = random_combination(
            rng, config.max_terms, config.max_index, allow_cancelling=rng.random() < 0.3
        )

        def check(lc=lc):
            got = homology(cn.representative(lc)).module.torsion()
            expected = cn.place_towers(lc)
            if got != expected:
                return {"expected": _module_str(expected), "got": _module_str(got)}
            return None

        _guarded(result, {"combination": lc.to_json()}, check)


def _suite_roundtrip(rng, config, result):
    for _ in range(config.roundtrip_cases):
        lc = random_combination(rng, config.max_terms, config.max_index)
        d = random_even_d(rng)

        def check(lc=lc, d=d):
            back = cn.decode(cn.hf_conn(lc, d), d)
            return None if back == lc else {"decoded": back.to_json()}

        _guarded(result, {"combination": lc.to_json(), "d": str(d)}, check)


def _suite_duality(rng, config, result):
    for _ in range(config.duality_cases):
        c = random_geometric_complex(rng, config.max_cells)

        def check(c=c):
            h = homology(c).module
            hd = homology(cx.dual(c)).module
            ok = (
                hd.torsion() == tw.reflect(h.torsion())
                and cx.width(cx.dual(c)) == cx.width(c)
                and sorted(-t.top for t in h.free_towers)
                == sorted(t.top for t in hd.free_towers)
            )
            if not ok:
                return {"homology": _module_str(h), "dual_homology": _module_str(hd)}
            return None

        _guarded(result, {"complex": cx.complex_to_json(c)}, check)


_SUITES = (
    ("kunneth", _suite_kunneth),
    ("doubling_homology", _suite_doubling),
    ("local_equivalence", _suite_local_pair),
    ("representative_match", _suite_representative),
    ("decode_roundtrip", _suite_roundtrip),
    ("duality_reflection", _suite_duality),
)


def run_suite(seed: int, config: Optional[SuiteConfig] = None) -> SuiteReport:
    """Run every randomized suite from one seed; failures carry witnesses."""
    config = config or SuiteConfig()
    results = []
    for name, fn in _SUITES:
        rng = random.Random(f"{seed}:{name}")
        result = SuiteResult(name)
        fn(rng, config, result)
        results.append(result)
    return SuiteReport(seed, results)
