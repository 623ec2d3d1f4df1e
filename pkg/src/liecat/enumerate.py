"""Exhaustive enumeration of structure-preserving maps over F2.

Maps are built column by column; vectors are bitmasks over the target basis.
Each constraint names the columns it reads and is tested as soon as the
last of them is assigned, so most of the ``2^entries`` candidates are never
visited.  The number of free entries is capped at 24.
"""
from __future__ import annotations

from typing import Callable, Dict, FrozenSet, List, Optional, Sequence, Tuple

from .linalg import Matrix
from .monoidal import GradedObject, Morphism, tensor_data

MAX_ENTRIES = 24


class SizeGuardError(ValueError):
    """The search space exceeds the enumeration cap."""


Constraint = Tuple[FrozenSet[int], Callable[[List[int]], bool]]


def _bits(mask: int):
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


def _mask(vec: dict) -> int:
    out = 0
    for i, v in vec.items():
        if v % 2:
            out |= 1 << i
    return out


def _require_f2(*objs: GradedObject):
    for o in objs:
        if o.field.char != 2:
            raise ValueError("enumeration is only available over F2")


class _Table:
    """Bitmask form of a bilinear map ``T (x) T -> T'``."""

    def __init__(self, mor: Morphism, left: GradedObject, right: GradedObject):
        td = tensor_data(left, right)
        self.t = [[_mask(mor.col(td.pairs[(i, j)])) if (i, j) in td.pairs else 0
                   for j in range(right.dim)] for i in range(left.dim)]

    def __call__(self, u: int, v: int) -> int:
        out = 0
        for i in _bits(u):
            row = self.t[i]
            for j in _bits(v):
                out ^= row[j]
        return out


def _apply(cols: List[int], mask: int) -> int:
    out = 0
    for j in _bits(mask):
        out ^= cols[j]
    return out


def _linear(mor: Morphism) -> List[int]:
    return [_mask(mor.col(j)) for j in range(mor.source.dim)]


def enumerate_maps(source: GradedObject, target: GradedObject,
                   constraints: Sequence[Constraint]) -> List[Morphism]:
    """All degree-0 maps ``source -> target`` over F2 satisfying every constraint."""
    _require_f2(source, target)
    n = source.dim
    allowed = [sum(1 << i for i in range(target.dim) if target.degrees[i] == source.degrees[j])
               for j in range(n)]
    entries = sum(bin(a).count("1") for a in allowed)
    if entries > MAX_ENTRIES:
        raise SizeGuardError(f"{entries} free entries exceed the cap of {MAX_ENTRIES}")
    by_last: Dict[int, List[Callable]] = {}
    for deps, pred in constraints:
        last = max(deps) if deps else 0
        by_last.setdefault(last, []).append(pred)
    found: List[List[int]] = []
    cols = [0] * n

    def rec(j: int):
        if j == n:
            found.append(list(cols))
            return
        a = allowed[j]
        sub = a
        while True:
            cols[j] = sub
            if all(pred(cols) for pred in by_last.get(j, ())):
                rec(j + 1)
            if sub == 0:
                break
            sub = (sub - 1) & a
        cols[j] = 0

    if n == 0:
        found.append([])
    else:
        rec(0)
    F = source.field
    out = []
    for c in sorted(found):
        M = Matrix(target.dim, n, F, [{i: 1 for i in _bits(m)} for m in c])
        out.append(Morphism(source, target, M, check=False))
    return out


def _lie_constraints(L1, L2) -> List[Constraint]:
    X, Y = L1.carrier, L2.carrier
    src = _Table(L1.bracket, X, X)
    tgt = _Table(L2.bracket, Y, Y)
    out = []
    for i in range(X.dim):
        for j in range(X.dim):
            b = src.t[i][j]

            def pred(cols, i=i, j=j, b=b):
                return _apply(cols, b) == tgt(cols[i], cols[j])
            out.append((frozenset({i, j, *_bits(b)}), pred))
    out.extend(_differential_constraints(X, Y))
    return out


def _differential_constraints(X: GradedObject, Y: GradedObject) -> List[Constraint]:
    if not X.category.has_differential or (X.differential is None and Y.differential is None):
        return []
    dX = [_mask(X.d().col(j)) for j in range(X.dim)]
    dY = [_mask(Y.d().col(j)) for j in range(Y.dim)]
    out = []
    for j in range(X.dim):
        def pred(cols, j=j):
            return _apply(cols, dX[j]) == _apply(dY, cols[j])
        out.append((frozenset({j, *_bits(dX[j])}), pred))
    return out


def enumerate_lie_homs(L1, L2, kill: Optional[Morphism] = None) -> List[Morphism]:
    """Lie morphisms ``L1 -> L2``; with ``kill: L2 -> Z`` only those with ``kill o f = 0``."""
    cons = _lie_constraints(L1, L2)
    if kill is not None:
        km = _linear(kill)
        for j in range(L1.carrier.dim):
            cons.append((frozenset({j}), lambda cols, j=j: _apply(km, cols[j]) == 0))
    return enumerate_maps(L1.carrier, L2.carrier, cons)


def enumerate_monoid_homs(A1, A2) -> List[Morphism]:
    """Unit-preserving maps with ``f(ab) = f(a) f(b)`` on every basis pair."""
    X, Y = A1.carrier, A2.carrier
    src = _Table(A1.m, X, X)
    tgt = _Table(A2.m, Y, Y)
    u1, u2 = _mask(A1.u.col(0)), _mask(A2.u.col(0))
    cons: List[Constraint] = [(frozenset(_bits(u1)), lambda cols: _apply(cols, u1) == u2)]
    for i in range(X.dim):
        for j in range(X.dim):
            b = src.t[i][j]

            def pred(cols, i=i, j=j, b=b):
                return _apply(cols, b) == tgt(cols[i], cols[j])
            cons.append((frozenset({i, j, *_bits(b)}), pred))
    cons.extend(_differential_constraints(X, Y))
    return enumerate_maps(X, Y, cons)


def enumerate_point_homs(P, P2) -> List[Morphism]:
    """Lie morphisms ``g: A -> A'`` with ``p' g = p`` and ``g s = s'``."""
    cons = _lie_constraints(P.A, P2.A)
    p = _linear(P.p)
    p2 = _linear(P2.p)
    s = _linear(P.s)
    s2 = _linear(P2.s)
    for j in range(P.A.carrier.dim):
        cons.append((frozenset({j}), lambda cols, j=j: _apply(p2, cols[j]) == p[j]))
    for b in range(P.B.carrier.dim):
        cons.append((frozenset(_bits(s[b])) or frozenset({0}),
                     lambda cols, b=b: _apply(cols, s[b]) == s2[b]))
    return enumerate_maps(P.A.carrier, P2.A.carrier, cons)


def enumerate_homs_F2(kind: str, source, target, **kw) -> List[Morphism]:
    if kind == "lie":
        return enumerate_lie_homs(source, target, **kw)
    if kind == "monoid":
        return enumerate_monoid_homs(source, target)
    if kind == "point":
        return enumerate_point_homs(source, target)
    raise ValueError(f"unknown hom kind {kind!r}")


def matrix_key(f: Morphism) -> tuple:
    return tuple(tuple(sorted(f.col(j).items())) for j in range(f.source.dim))


def check_ul_bijection(B, U, A, augmentation: Morphism) -> dict:
    """``g_bar -> g_bar o nu`` between ``Hom_Mon(U_d(B), A)`` and Lie maps ``B -> L(A)`` into ``ker e_A``."""
    from .lie import commutator_lie
    mon = enumerate_monoid_homs(U, A)
    lie = enumerate_lie_homs(B, commutator_lie(A), kill=augmentation)
    images = [matrix_key(g @ U.nu) for g in mon]
    lie_keys = {matrix_key(f) for f in lie}
    return {
        "monoid_homs": len(mon),
        "lie_homs": len(lie),
        "injective": len(set(images)) == len(images),
        "surjective": set(images) >= lie_keys,
        "into": set(images) <= lie_keys,
    }
