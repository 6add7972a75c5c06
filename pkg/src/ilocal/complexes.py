"""Finite F2 skeleta with grading data, and the basic complexes built on them.

A geometric complex is a finite collection of cells, each carrying a
dimensional grading ``dim`` and a rational grading ``gr``; the boundary
relation has degree -1 in ``dim``, never decreases ``gr``, and all gaps are
even.  The derived free F2[U]-complex has differential

    d(e) = sum over e' in bdry(e) of U^((gr(e') - gr(e)) / 2) e'

and Maslov grading M(e) = gr(e) + dim(e) (U has Maslov degree -2 and
dimensional degree 0).  All ``gr`` values lie in one coset of 2Z in Q,
represented by ``tau``.  The skeleton is not required to come from an
actual cell complex: any degree -1 differential over F2 is allowed, which
keeps the class closed under dualization.

A split complex adds a cell-level involution J commuting with the boundary
and fixing exactly one cell.  Instances are immutable; every operation here
returns a fresh, fully validated complex.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, FrozenSet, Iterable, Iterator, Mapping, Tuple, Union

from .errors import InvalidComplex, NotSplit
from .towers import INFINITE, Grading, grading_to_str

#: An F2 chain in a skeleton: the set of cells with coefficient 1.
Chain = FrozenSet[str]

TENSOR_SEP = "⊗"  # the id of a product cell is "left⊗right"


@dataclass(frozen=True)
class Cell:
    id: str
    dim: int
    gr: Grading

    def __post_init__(self):
        if not isinstance(self.id, str) or not self.id:
            raise InvalidComplex(f"cell id must be a non-empty string, got {self.id!r}")
        if not isinstance(self.dim, int):
            raise InvalidComplex(f"cell {self.id!r} has non-integer dimension {self.dim!r}")
        object.__setattr__(self, "gr", Fraction(self.gr))

    @property
    def maslov(self) -> Grading:
        return self.gr + self.dim


class GeometricComplex:
    """Skeleton plus grading function; see the module docstring."""

    def __init__(self, cells: Iterable[Cell], bdry: Mapping[str, Iterable[str]],
                 tau: Grading = None):
        cell_list = tuple(cells)
        self.cells: Dict[str, Cell] = {}
        for c in cell_list:
            if c.id in self.cells:
                raise InvalidComplex(f"duplicate cell id {c.id!r}")
            self.cells[c.id] = c
        self.bdry: Dict[str, Chain] = {}
        for cid, targets in dict(bdry).items():
            if cid not in self.cells:
                raise InvalidComplex(f"bdry source {cid!r} is not a cell")
            self.bdry[cid] = frozenset(targets)
        for cid in self.cells:
            self.bdry.setdefault(cid, frozenset())
        if tau is None:
            tau = next(iter(self.cells.values())).gr if self.cells else Fraction(0)
        self.tau = Fraction(tau) % 2
        self._validate()

    def _validate(self):
        for cid, c in self.cells.items():
            if (c.gr - self.tau) % 2 != 0:
                raise InvalidComplex(
                    f"cell {cid!r} has gr {c.gr} outside the coset tau={self.tau} + 2Z"
                )
        for cid, targets in self.bdry.items():
            e = self.cells[cid]
            for tid in targets:
                t = self.cells.get(tid)
                if t is None:
                    raise InvalidComplex(f"boundary of {cid!r} mentions unknown cell {tid!r}")
                if t.dim != e.dim - 1:
                    raise InvalidComplex(
                        f"boundary pair ({cid!r}, {tid!r}) is not of dimensional degree -1"
                    )
                if t.gr < e.gr:
                    raise InvalidComplex(
                        f"grading decreases along boundary pair ({cid!r}, {tid!r})"
                    )
        # bdry o bdry = 0 over F2
        for cid in self.cells:
            acc: Chain = frozenset()
            for tid in self.bdry[cid]:
                acc ^= self.bdry[tid]
            if acc:
                raise InvalidComplex(
                    f"bdry^2 is nonzero at cell {cid!r} (hits {sorted(acc)})"
                )

    # -- basic accessors ------------------------------------------------

    def ids(self) -> Tuple[str, ...]:
        return tuple(self.cells)

    def __len__(self) -> int:
        return len(self.cells)

    def __contains__(self, cid: str) -> bool:
        return cid in self.cells

    def cell(self, cid: str) -> Cell:
        return self.cells[cid]

    def maslov(self, cid: str) -> Grading:
        return self.cells[cid].maslov

    def max_dim(self) -> int:
        return max((c.dim for c in self.cells.values()), default=0)

    def u_exponent(self, src: str, tgt: str) -> int:
        """U-power on ``tgt`` in the derived differential of ``src``."""
        gap = self.cells[tgt].gr - self.cells[src].gr
        if gap < 0 or gap % 2 != 0:
            raise InvalidComplex(f"invalid grading gap on boundary pair ({src!r}, {tgt!r})")
        return int(gap / 2)

    def fu_bdry(self, cid: str) -> Dict[str, int]:
        """Derived F2[U]-differential of a cell as {target: U-exponent}."""
        return {tid: self.u_exponent(cid, tid) for tid in self.bdry[cid]}

    def width(self) -> Union[int, float]:
        """Twice the minimal U-exponent in the differential; INFINITE if d = 0."""
        gaps = [
            self.cells[tid].gr - self.cells[cid].gr
            for cid in self.cells
            for tid in self.bdry[cid]
        ]
        return int(min(gaps)) if gaps else INFINITE

    def relabeled(self, mapping: Mapping[str, str]) -> "GeometricComplex":
        m = dict(mapping)
        cells = [Cell(m[c.id], c.dim, c.gr) for c in self.cells.values()]
        bdry = {m[cid]: frozenset(m[t] for t in ts) for cid, ts in self.bdry.items()}
        return GeometricComplex(cells, bdry, self.tau)


class SplitComplex:
    """A geometric complex with an involution J having exactly one fixed cell."""

    def __init__(self, base: GeometricComplex, J: Mapping[str, str]):
        self.base = base
        self.J = dict(J)
        if set(self.J) != set(base.cells):
            raise NotSplit("J must be defined on exactly the cells of the complex")
        fixed = []
        for cid, jid in self.J.items():
            if jid not in base.cells:
                raise NotSplit(f"J sends {cid!r} to unknown cell {jid!r}")
            if self.J[jid] != cid:
                raise NotSplit(f"J is not an involution on the pair ({cid!r}, {jid!r})")
            c, jc = base.cells[cid], base.cells[jid]
            if c.dim != jc.dim or c.gr != jc.gr:
                raise NotSplit(f"J does not preserve the gradings of ({cid!r}, {jid!r})")
            if jid == cid:
                fixed.append(cid)
        if len(fixed) != 1:
            raise NotSplit(f"exactly one J-fixed cell required, found {sorted(fixed)}")
        self.fixed = fixed[0]
        for cid in base.cells:
            image = frozenset(self.J[t] for t in base.bdry[cid])
            if image != base.bdry[self.J[cid]]:
                raise NotSplit(f"J does not commute with bdry at cell {cid!r}")

    # -- delegation to the underlying complex ---------------------------

    @property
    def cells(self) -> Dict[str, Cell]:
        return self.base.cells

    @property
    def bdry(self) -> Dict[str, Chain]:
        return self.base.bdry

    @property
    def tau(self) -> Grading:
        return self.base.tau

    def ids(self) -> Tuple[str, ...]:
        return self.base.ids()

    def __len__(self) -> int:
        return len(self.base)

    def __contains__(self, cid: str) -> bool:
        return cid in self.base

    def cell(self, cid: str) -> Cell:
        return self.base.cell(cid)

    def maslov(self, cid: str) -> Grading:
        return self.base.maslov(cid)

    def max_dim(self) -> int:
        return self.base.max_dim()

    def width(self) -> Union[int, float]:
        return self.base.width()

    def pairs(self) -> Iterator[Tuple[str, str]]:
        """The two-element J-orbits, each reported once as (min, max)."""
        for cid, jid in self.J.items():
            if cid < jid:
                yield cid, jid

    def relabeled(self, mapping: Mapping[str, str]) -> "SplitComplex":
        m = dict(mapping)
        return SplitComplex(self.base.relabeled(m), {m[a]: m[b] for a, b in self.J.items()})


AnyComplex = Union[GeometricComplex, SplitComplex]


def base_of(c: AnyComplex) -> GeometricComplex:
    return c.base if isinstance(c, SplitComplex) else c


def width(c: AnyComplex) -> Union[int, float]:
    return base_of(c).width()


# -- splittings ---------------------------------------------------------


def canonical_splitting(sc: SplitComplex) -> FrozenSet[str]:
    """Lexicographically smallest member of each J-orbit pair."""
    return frozenset(a for a, _ in sc.pairs())


def validate_splitting(sc: SplitComplex, chosen: Iterable[str]) -> FrozenSet[str]:
    chosen = frozenset(chosen)
    if sc.fixed in chosen:
        raise ValueError("a splitting never contains the fixed cell")
    for cid in chosen:
        if cid not in sc.base:
            raise ValueError(f"splitting mentions unknown cell {cid!r}")
        if sc.J[cid] in chosen:
            raise ValueError(f"splitting contains both members of the pair ({cid!r}, {sc.J[cid]!r})")
    if len(chosen) * 2 + 1 != len(sc.base):
        raise ValueError("splitting must pick exactly one cell from each J-pair")
    return chosen


def decompose(sc: SplitComplex, chain: Iterable[str], chosen: Iterable[str]):
    """Write a chain uniquely as a + (1+J)b + eps*eta with a, b in the splitting.

    Per pair {c, Jc} with c chosen: c alone contributes to a; Jc alone
    contributes c to both a and b (Jc = c + (1+J)c over F2); both contribute
    c to b.  Returns (a, b, eps).
    """
    chain = frozenset(chain)
    chosen = frozenset(chosen)
    for cid in chain:
        if cid not in sc.base:
            raise ValueError(f"chain mentions unknown cell {cid!r}")
    a, b = set(), set()
    for c in chosen:
        in_c, in_j = c in chain, sc.J[c] in chain
        if in_c and in_j:
            b.add(c)
        elif in_c:
            a.add(c)
        elif in_j:
            a.add(c)
            b.add(c)
    eps = 1 if sc.fixed in chain else 0
    return frozenset(a), frozenset(b), eps


# -- builders -----------------------------------------------------------


def build_trivial() -> SplitComplex:
    """The trivial complex: a single J-fixed 0-cell in grading zero, d = 0."""
    g = GeometricComplex([Cell("eta", 0, Fraction(0))], {}, Fraction(0))
    return SplitComplex(g, {"eta": "eta"})


def _xi_complex(i: int) -> SplitComplex:
    # internal variant that also admits i = 0 (needed by the local maps at
    # doubling parameter zero); the public builder insists on i >= 1
    cells = [Cell("a", 0, Fraction(0)), Cell("Ja", 0, Fraction(0)), Cell("b", 1, Fraction(-2 * i))]
    g = GeometricComplex(cells, {"b": {"a", "Ja"}}, Fraction(0))
    return SplitComplex(g, {"a": "Ja", "Ja": "a", "b": "b"})


def build_xi(i: int) -> SplitComplex:
    """The basis complex with generators a, Ja, b and d(b) = U^i (a + Ja)."""
    if not isinstance(i, int) or i < 1:
        raise ValueError(f"basis index must be a positive integer, got {i!r}")
    return _xi_complex(i)


def build_misordered(x: int, y: int) -> SplitComplex:
    """The disk complex with a misordered grading function (0 < x < y).

    Its torsion homology places the shorter tower in higher grading, so its
    connected module is rejected by the decoder.
    """
    if not (isinstance(x, int) and isinstance(y, int) and 0 < x < y):
        raise ValueError(f"misordered complex requires integers 0 < x < y, got ({x!r}, {y!r})")
    cells = [
        Cell("e0", 0, Fraction(0)),
        Cell("Je0", 0, Fraction(0)),
        Cell("e1", 1, Fraction(-2 * x)),
        Cell("Je1", 1, Fraction(-2 * x)),
        Cell("e2", 2, Fraction(-2 * (x + y))),
    ]
    bdry = {"e1": {"e0", "Je0"}, "Je1": {"e0", "Je0"}, "e2": {"e1", "Je1"}}
    J = {"e0": "Je0", "Je0": "e0", "e1": "Je1", "Je1": "e1", "e2": "e2"}
    return SplitComplex(GeometricComplex(cells, bdry, Fraction(0)), J)


# -- tensor and dual ----------------------------------------------------


def tensor(c1: AnyComplex, c2: AnyComplex) -> AnyComplex:
    """Tensor product: cells are pairs, dim and gr add, Leibniz boundary.

    If both factors are split the product is split with J acting
    coordinatewise; its fixed cell is the pair of fixed cells.
    """
    b1, b2 = base_of(c1), base_of(c2)

    def pid(u: str, v: str) -> str:
        return f"{u}{TENSOR_SEP}{v}"

    cells = [
        Cell(pid(u.id, v.id), u.dim + v.dim, u.gr + v.gr)
        for u in b1.cells.values()
        for v in b2.cells.values()
    ]
    bdry = {}
    for u in b1.ids():
        for v in b2.ids():
            terms = {pid(du, v) for du in b1.bdry[u]} | {pid(u, dv) for dv in b2.bdry[v]}
            bdry[pid(u, v)] = terms
    g = GeometricComplex(cells, bdry, (b1.tau + b2.tau) % 2)
    if isinstance(c1, SplitComplex) and isinstance(c2, SplitComplex):
        J = {pid(u, v): pid(c1.J[u], c2.J[v]) for u in b1.ids() for v in b2.ids()}
        return SplitComplex(g, J)
    return g


def dual(c: AnyComplex) -> AnyComplex:
    """Dual complex: reversed boundary, M(e*) = -M(e).

    With n the maximal dimension of the input, the dual cell e* has
    dim n - dim(e) and gr -gr(e) - n, which keeps dual dimensions of actual
    cell complexes non-negative; complementary shifts of (dim, gr) leave the
    F2[U]-complex unchanged.
    """
    b = base_of(c)
    n = b.max_dim()
    cells = [Cell(cid + "*", n - cell.dim, -cell.gr - n) for cid, cell in b.cells.items()]
    bdry = {
        cid + "*": frozenset(src + "*" for src in b.ids() if cid in b.bdry[src])
        for cid in b.ids()
    }
    g = GeometricComplex(cells, bdry, (-b.tau - n) % 2)
    if isinstance(c, SplitComplex):
        return SplitComplex(g, {cid + "*": c.J[cid] + "*" for cid in b.ids()})
    return g


# -- monomial matrices and JSON --------------------------------------------


@dataclass(frozen=True)
class FUMatrix:
    """Boundary matrix of one dimensional degree; entries are U-exponents."""

    rows: Tuple[str, ...]
    cols: Tuple[str, ...]
    entries: Mapping[Tuple[str, str], int]  # (target row, source col) -> k for U^k


def to_fu_matrices(c: AnyComplex) -> Dict[int, FUMatrix]:
    """Graded monomial boundary matrices, one per dimensional degree present."""
    b = base_of(c)
    by_dim: Dict[int, list] = {}
    for cid, cell in b.cells.items():
        by_dim.setdefault(cell.dim, []).append(cid)
    matrices = {}
    for d in sorted(by_dim):
        cols = tuple(by_dim[d])
        rows = tuple(by_dim.get(d - 1, ()))
        entries = {
            (tid, cid): b.u_exponent(cid, tid)
            for cid in cols
            for tid in b.bdry[cid]
        }
        matrices[d] = FUMatrix(rows, cols, entries)
    return matrices


def complex_to_json(c: AnyComplex) -> dict:
    b = base_of(c)
    out = {
        "tau": grading_to_str(b.tau),
        "cells": [
            {"id": cell.id, "dim": cell.dim, "gr": grading_to_str(cell.gr)}
            for cell in b.cells.values()
        ],
        "bdry": sorted([src, tgt] for src in b.ids() for tgt in b.bdry[src]),
    }
    if isinstance(c, SplitComplex):
        out["J"] = sorted([a, j] for a, j in c.pairs())
        out["fixed"] = c.fixed
    return out


def complex_from_json(obj: dict) -> AnyComplex:
    cells = [Cell(e["id"], int(e["dim"]), Fraction(e["gr"])) for e in obj["cells"]]
    bdry: Dict[str, set] = {}
    for src, tgt in obj.get("bdry", ()):
        bdry.setdefault(src, set()).add(tgt)
    tau = Fraction(obj["tau"]) if "tau" in obj else None
    g = GeometricComplex(cells, bdry, tau)
    if "J" not in obj and "fixed" not in obj:
        return g
    J = {}
    for a, jb in obj.get("J", ()):
        J[a] = jb
        J[jb] = a
    fixed = obj.get("fixed")
    if fixed is not None:
        J[fixed] = fixed
    return SplitComplex(g, J)
