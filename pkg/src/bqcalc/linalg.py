"""Sparse exact Gauss-Jordan elimination over any of the coefficient fields.

Vectors are dicts ``{column: scalar}`` with no zero entries.  Column keys can
be anything hashable; pivots are chosen as the smallest column under
``key`` so results are deterministic.
"""
from __future__ import annotations

from typing import Callable, Hashable, Iterable

Vector = dict


def _axpy(target: dict, alpha, source: dict) -> None:
    """target += alpha * source, dropping zeros."""
    for col, val in source.items():
        new = target.get(col)
        new = alpha * val if new is None else new + alpha * val
        if new:
            target[col] = new
        else:
            target.pop(col, None)


class Echelon:
    """Incrementally maintained reduced row echelon form."""

    def __init__(self, key: Callable[[Hashable], object] | None = None,
                 pivot_filter: Callable[[Hashable], bool] | None = None):
        self.key = key
        self.pivot_filter = pivot_filter
        self.rows: dict[Hashable, dict] = {}

    def reduce(self, vec: dict) -> dict:
        out = dict(vec)
        for col in [c for c in out if c in self.rows]:
            val = out.get(col)
            if val:
                _axpy(out, -val, self.rows[col])
        return out

    def _choose(self, vec: dict):
        cands = [c for c in vec if self.pivot_filter is None or self.pivot_filter(c)]
        if not cands:
            return None
        return min(cands, key=self.key) if self.key else min(cands)

    def add(self, vec: dict) -> bool:
        """Insert a vector; return True if it increased the rank."""
        red = self.reduce(vec)
        # reduce() touches only columns present at call time; repeat until stable
        while any(c in self.rows for c in red):
            red = self.reduce(red)
        if not red:
            return False
        pivot = self._choose(red)
        if pivot is None:
            self.rows[("__inconsistent__",)] = red
            return False
        inv = red[pivot].inverse() if hasattr(red[pivot], "inverse") else 1 / red[pivot]
        red = {c: v * inv for c, v in red.items()}
        for col, row in self.rows.items():
            val = row.get(pivot)
            if val:
                _axpy(row, -val, red)
        self.rows[pivot] = red
        return True

    @property
    def rank(self) -> int:
        return sum(1 for k in self.rows if k != ("__inconsistent__",))

    @property
    def inconsistent(self) -> bool:
        return ("__inconsistent__",) in self.rows

    def sorted_rows(self) -> list[tuple[Hashable, dict]]:
        keyf = self.key or (lambda c: c)
        return sorted(((p, r) for p, r in self.rows.items() if p != ("__inconsistent__",)),
                      key=lambda pr: keyf(pr[0]))


def transpose(columns: list[dict]) -> list[dict]:
    rows: dict = {}
    for j, col in enumerate(columns):
        for r, val in col.items():
            if val:
                rows.setdefault(r, {})[j] = val
    return list(rows.values())


def nullspace(columns: list[dict], one) -> list[dict]:
    """Kernel basis of the linear map whose j-th column is ``columns[j]``.

    Each returned vector maps unknown indices to scalars.
    """
    ech = Echelon()
    for row in transpose(columns):
        ech.add(row)
    pivots = set(ech.rows)
    kernel = []
    for f in range(len(columns)):
        if f in pivots:
            continue
        vec = {f: one}
        for p, row in ech.rows.items():
            val = row.get(f)
            if val:
                vec[p] = -val
        kernel.append(vec)
    return kernel


_RHS = ("__rhs__",)


def solve(columns: list[dict], target: dict, zero) -> dict | None:
    """A solution x of sum_j x_j columns[j] = target, or None if infeasible."""
    rows: dict = {}
    for j, col in enumerate(columns):
        for r, val in col.items():
            if val:
                rows.setdefault(r, {})[j] = val
    for r, val in target.items():
        if val:
            rows.setdefault(r, {})[_RHS] = val
    ech = Echelon(key=lambda c: (1, 0) if c == _RHS else (0, c),
                  pivot_filter=lambda c: c != _RHS)
    for row in rows.values():
        ech.add(row)
    if ech.inconsistent:
        return None
    sol = {}
    for p, row in ech.rows.items():
        val = row.get(_RHS)
        if val:
            sol[p] = val
    return sol


def rank(vectors: Iterable[dict]) -> int:
    ech = Echelon()
    for v in vectors:
        ech.add(v)
    return ech.rank


def echelon_basis(vectors: Iterable[dict], key: Callable | None = None) -> list[dict]:
    """Reduced echelon basis of span(vectors), pivots smallest under ``key``."""
    ech = Echelon(key=key)
    for v in vectors:
        ech.add(v)
    return [row for _, row in ech.sorted_rows()]
