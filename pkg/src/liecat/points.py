"""Points over a Lie object, semidirect products, the kernel functor and the truncated exponent."""
from __future__ import annotations

import random
from typing import Callable, List, NamedTuple, Optional, Sequence

from .actions import (EquivariantLieObject, LieAction, action_nilpotency_bound, check_equivariant,
                      check_lie_action, convolution_lie, exp_translation_action,
                      hom_postcompose, lie_to_monoid_action, monoid_to_lie_action)
from .enveloping import TruncatedUEA, TruncationError, uea
from .lie import LieObject, check_lie, check_lie_morphism, restrict_lie
from .linalg import Matrix, kernel_basis, solve
from .monoidal import (CategoryError, DirectSum, GradedObject, Morphism, curry, direct_sum,
                       graded_kernel, hom_object, identity, symmetry, tensor_morphisms,
                       tensor_objects)
from .reports import Check, Report, compare


class Point:
    """Split epimorphism ``p: A -> B`` of Lie objects with section ``s``."""

    def __init__(self, A: LieObject, B: LieObject, p: Morphism, s: Morphism):
        if p.source != A.carrier or p.target != B.carrier:
            raise CategoryError("p must be A -> B")
        if s.source != B.carrier or s.target != A.carrier:
            raise CategoryError("s must be B -> A")
        self.A, self.B, self.p, self.s = A, B, p, s
        self._kernel = None

    def kernel(self):
        if self._kernel is None:
            self._kernel = kernel_functor(self)
        return self._kernel


def check_point(P: Point) -> Report:
    rep = Report("check-point")
    rep.extend_prefixed("A.", check_lie(P.A))
    rep.extend_prefixed("B.", check_lie(P.B))
    c = check_lie_morphism(P.p, P.A, P.B)
    rep.add(Check("p-lie-morphism", c.passed, c.witness, c.detail))
    c = check_lie_morphism(P.s, P.B, P.A)
    rep.add(Check("s-lie-morphism", c.passed, c.witness, c.detail))
    rep.add(compare("split", P.p @ P.s, identity(P.B.carrier), [P.B.carrier]))
    return rep


class Kernel(NamedTuple):
    lie: LieObject
    k: Morphism


def kernel_functor(P: Point) -> Kernel:
    """``Ker(p)`` with the bracket restricted from ``A``."""
    k = graded_kernel(P.p)
    return Kernel(restrict_lie(P.A, k), k)


def section_splitting(P: Point) -> Morphism:
    """The unique ``l: A -> Ker(p)`` with ``k l = id - s p``."""
    k = P.kernel().k
    rhs = identity(P.A.carrier) - P.s @ P.p
    sol = solve(k.matrix, rhs.matrix)
    if sol is None:
        raise ValueError("p s != id")
    return Morphism(P.A.carrier, k.source, sol, check=False)


def point_to_action(P: Point) -> EquivariantLieObject:
    """``W``: the kernel with ``theta`` solving ``k theta = b_A (s (x) k)``."""
    K, k = P.kernel()
    rhs = P.A.bracket @ tensor_morphisms(P.s, k)
    sol = solve(k.matrix, rhs.matrix)
    if sol is None:
        raise ValueError("kernel is not an ideal")
    src = tensor_objects(P.B.carrier, K.carrier)
    return EquivariantLieObject(P.B, K, Morphism(src, K.carrier, sol, check=False))


class Semidirect(NamedTuple):
    point: Point
    sum: DirectSum


def action_to_point(E: EquivariantLieObject, validate: bool = True) -> Semidirect:
    """``B |x X`` on ``B (+) X`` with blocks ``i1 b_B``, ``theta``, ``-theta sigma``, ``i2 b_X``.

    With ``validate`` the equivariant object is checked first and
    ``ValueError`` is raised on failure.
    """
    if validate:
        bad = [c for r in (check_lie(E.B), check_lie(E.lie), check_lie_action(E.action),
                           check_equivariant(E)) for c in r.checks if not c.passed]
        if bad:
            raise ValueError(f"equivariant object fails {bad[0].law} at {bad[0].witness}")
    Bc, Xc = E.B.carrier, E.carrier
    ds = direct_sum(Bc, Xc)
    p1, p2, i1, i2 = ds.p1, ds.p2, ds.i1, ds.i2
    b = (i1 @ E.B.bracket @ tensor_morphisms(p1, p1)
         + i2 @ E.theta @ tensor_morphisms(p1, p2)
         - i2 @ E.theta @ symmetry(Xc, Bc) @ tensor_morphisms(p2, p1)
         + i2 @ E.lie.bracket @ tensor_morphisms(p2, p2))
    A = LieObject(ds.obj, b)
    return Semidirect(Point(A, E.B, p1, i1), ds)


def check_equivariant_morphism(f: Morphism, E1: EquivariantLieObject,
                               E2: EquivariantLieObject) -> Report:
    rep = Report("check-equivariant-morphism")
    c = check_lie_morphism(f, E1.lie, E2.lie)
    rep.add(Check("bracket", c.passed, c.witness, c.detail))
    Bc = E1.B.carrier
    rep.add(compare("action", f @ E1.theta, E2.theta @ tensor_morphisms(identity(Bc), f),
                    [Bc, E1.carrier]))
    return rep


def lift_morphism(P: Point, P2: Point, f: Morphism, check: bool = True,
                  k2: Optional[Morphism] = None) -> Morphism:
    """``g = k' f l + s' p`` for an equivariant ``f: Ker(P) -> Ker(P')``."""
    if check:
        rep = check_equivariant_morphism(f, point_to_action(P), point_to_action(P2))
        if not rep.passed:
            bad = rep.failures()[0]
            raise ValueError(f"kernel map is not equivariant ({bad.law} at {bad.witness})")
    l = section_splitting(P)
    kk = k2 if k2 is not None else P2.kernel().k
    return kk @ f @ l + P2.s @ P.p


def check_point_morphism(g: Morphism, P: Point, P2: Point) -> Report:
    rep = Report("check-point-morphism")
    c = check_lie_morphism(g, P.A, P2.A)
    rep.add(Check("lie-morphism", c.passed, c.witness, c.detail))
    rep.add(compare("over-base", P2.p @ g, P.p, [P.A.carrier]))
    rep.add(compare("section", g @ P.s, P2.s, [P.B.carrier]))
    return rep


def kernel_map(g: Morphism, P: Point, P2: Point) -> Morphism:
    """``W(g)``: the restriction of ``g`` to the kernels."""
    k, k2 = P.kernel().k, P2.kernel().k
    sol = solve(k2.matrix, (g @ k).matrix)
    if sol is None:
        raise ValueError("g does not map kernel into kernel")
    return Morphism(k.source, k2.source, sol, check=False)


def compare_points(P: Point):
    """Comparison ``g: P -> W^{-1} W P`` built by :func:`lift_morphism` from the identity, and its invertibility."""
    E = point_to_action(P)
    Q = action_to_point(E, validate=False)
    K = E.carrier
    g = lift_morphism(P, Q.point, identity(K), check=False, k2=Q.sum.i2)
    return g, g.matrix.rank() == g.matrix.nrows == g.matrix.ncols


# ---------------------------------------------------------------------------
# exponent


class ExponentObject:
    """The truncated exponent of ``X`` along ``B``: ``R`` on ``Hom(U_d(B), X)`` and ``B |x R``."""

    def __init__(self, B: LieObject, X: LieObject, d: int):
        if not B.category.closed:
            raise CategoryError("the lp instance has no exponent")
        if d < 1:
            raise ValueError("truncation bound must be >= 1")
        self.B, self.X, self.truncation = B, X, d
        self.U = uea(B, d)
        self.hom = hom_object(self.U.carrier, X.carrier)
        conv = convolution_lie(self.U, X)
        self.translation = exp_translation_action(self.U, X.carrier)
        theta = monoid_to_lie_action(self.translation, self.U).theta
        self.R = EquivariantLieObject(B, conv, theta)
        sd = action_to_point(self.R, validate=False)
        self.point = sd.point
        self.sum = sd.sum

    @property
    def k(self) -> Morphism:
        return self.sum.i2

    def report(self) -> Report:
        rep = Report("exponent")
        rep.extend_prefixed("R.", check_lie(self.R.lie))
        rep.extend(check_lie_action(self.R.action).checks)
        rep.extend(check_equivariant(self.R).checks)
        rep.extend_prefixed("point.", check_point(self.point))
        rep.data.update({"truncation": self.truncation, "dim_U": self.U.dim,
                         "dim_R": self.R.carrier.dim, "dim_point": self.point.A.carrier.dim})
        return rep


def exponent(B: LieObject, X: LieObject, d: int) -> ExponentObject:
    return ExponentObject(B, X, d)


def transpose_down(Fm: Morphism, P: Point, Ex: ExponentObject) -> Morphism:
    """``h = ev o (pi_R F k (x) u)``: evaluate the ``R``-part of ``F`` at the unit word."""
    k = P.kernel().k
    toR = Ex.sum.p2 @ Fm @ k
    return Ex.hom.ev @ tensor_morphisms(toR, Ex.U.u)


def transpose_up(h: Morphism, P: Point, Ex: ExponentObject, check: bool = False,
                 guard: bool = True) -> Morphism:
    """Point morphism ``P -> B |x R`` from a Lie morphism ``h: Ker(P) -> X``.

    ``f(x)(w) = +-h(w.x)`` is the curry of ``h phi sigma`` where ``phi`` is the
    ``U_d(B)``-action on the kernel; raises :class:`TruncationError` when the
    kernel action is not nilpotent of order ``<= d`` unless ``guard`` is off.
    """
    E = point_to_action(P)
    phi = lie_to_monoid_action(E.action, Ex.U, guard=guard).phi
    K = E.carrier
    f = curry(h @ phi @ symmetry(K, Ex.U.carrier), K, Ex.U.carrier)
    return lift_morphism(P, Ex.point, f, check=check, k2=Ex.k)


def exponent_map(psi: Morphism, Ex: ExponentObject, Ex2: ExponentObject) -> Morphism:
    """``id_B (+) Hom(U, psi)`` between exponent points of ``X`` and ``X'``."""
    Hpsi = hom_postcompose(Ex.U.carrier, psi)
    return Ex2.sum.i1 @ Ex.sum.p1 + Ex2.sum.i2 @ Hpsi @ Ex.sum.p2


# ---------------------------------------------------------------------------
# sampling and the adjunction check


def _random_scalar(F, rng: random.Random):
    if F.char == 0:
        return F(rng.randint(-3, 3))
    return rng.randrange(F.char)


def random_combination(basis: Sequence[Sequence], F, rng: random.Random) -> List:
    n = len(basis[0]) if basis else 0
    out = [F.zero] * n
    for v in basis:
        c = _random_scalar(F, rng)
        out = [F.norm(a + c * b) for a, b in zip(out, v)]
    return out


def linear_solution_space(source: GradedObject, target: GradedObject,
                          equations: Callable[[Morphism], Morphism]) -> List[Morphism]:
    """Basis of degree-0 maps ``f`` with the linear expression ``equations(f) = 0``."""
    F = source.field
    slots = [(i, j) for j in range(source.dim) for i in range(target.dim)
             if target.degrees[i] == source.degrees[j]]
    if not slots:
        return []
    cols = []
    for (i, j) in slots:
        f = Morphism(source, target, Matrix.from_entries(target.dim, source.dim, F, {(i, j): F.one}),
                     check=False)
        e = equations(f).matrix
        vec = {}
        for c in range(e.ncols):
            for r, v in e.col(c).items():
                vec[c * e.nrows + r] = v
        cols.append(vec)
    size = max([max(v) + 1 for v in cols if v] + [1])
    M = Matrix(size, len(slots), F, cols)
    out = []
    for v in kernel_basis(M):
        entries = {slots[t]: x for t, x in enumerate(v) if x != 0}
        out.append(Morphism(source, target, Matrix.from_entries(target.dim, source.dim, F, entries),
                            check=False))
    return out


def sample_lie_morphisms(K: LieObject, X: LieObject, n: int, rng: random.Random,
                         tries: int = 50) -> List[Morphism]:
    """Up to ``n`` Lie morphisms ``K -> X``: random elements of the space killing ``[K, K]``,
    kept when they are Lie morphisms, falling back to rank-one maps into one line of ``X``."""
    F = K.field
    space = linear_solution_space(K.carrier, X.carrier, lambda f: f @ K.bracket)
    out: List[Morphism] = []
    if not space:
        return [Morphism(K.carrier, X.carrier, Matrix.zeros(X.dim, K.dim, F), check=False)] * n
    for _ in range(n):
        got = None
        for t in range(tries):
            pick = space if t < tries // 2 else [rng.choice(space)]
            f = pick[0].scale(_random_scalar(F, rng))
            for g in pick[1:]:
                f = f + g.scale(_random_scalar(F, rng))
            if check_lie_morphism(f, K, X).passed:
                got = f
                break
        out.append(got if got is not None else pick[0].scale(F.zero))
    return out


def sample_equivariant_morphisms(E1: EquivariantLieObject, E2: EquivariantLieObject, n: int,
                                 rng: random.Random, tries: int = 50) -> List[Morphism]:
    Bc = E1.B.carrier
    space = linear_solution_space(
        E1.carrier, E2.carrier,
        lambda f: f @ E1.theta - E2.theta @ tensor_morphisms(identity(Bc), f))
    F = E1.carrier.field
    zero = Morphism(E1.carrier, E2.carrier, Matrix.zeros(E2.carrier.dim, E1.carrier.dim, F),
                    check=False)
    out = []
    for _ in range(n):
        got = zero
        for t in range(tries if space else 0):
            pick = space if t < tries // 2 else [rng.choice(space)]
            f = zero
            for g in pick:
                f = f + g.scale(_random_scalar(F, rng))
            if check_lie_morphism(f, E1.lie, E2.lie).passed:
                got = f
                break
        out.append(got)
    return out


def random_lie_automorphism(X: LieObject, rng: random.Random) -> Morphism:
    """A nonzero scalar on an abelian ``X``; otherwise ``exp(c ad x)`` for a basis ``x`` with nilpotent
    even ``ad x`` (characteristic 0), or the identity when none exists."""
    F = X.field
    Xc = X.carrier
    if X.is_abelian():
        return identity(Xc).scale(_random_scalar(F, rng) or F.one)
    if F.char != 0:
        return identity(Xc)
    G = Xc.category.grading
    cands = []
    for i in range(Xc.dim):
        if Xc.degrees[i] != G.zero:
            continue
        ad = Matrix(Xc.dim, Xc.dim, F, [X.bracket.col(i * Xc.dim + j) for j in range(Xc.dim)])
        powers = [Matrix.identity(Xc.dim, F)]
        while not powers[-1].is_zero() and len(powers) <= Xc.dim + 1:
            powers.append(powers[-1] @ ad)
        if powers[-1].is_zero():
            cands.append(powers)
    if not cands:
        return identity(Xc)
    powers = rng.choice(cands)
    c = _random_scalar(F, rng)
    M = Matrix.zeros(Xc.dim, Xc.dim, F)
    fact = 1
    for k, Pk in enumerate(powers):
        if k:
            fact *= k
        M = M + Pk.scale(F(c) ** k / fact)
    return Morphism(Xc, Xc, M.materialize(), check=False)


def adjunction_check(P: Point, X: LieObject, d: int, mode: str = "sample", seed: int = 0,
                     samples: int = 20) -> Report:
    """Round trips of both transposes, naturality squares, and (``enumerate-f2``) counts."""
    rep = Report("adjoint-check")
    rep.data.update({"mode": mode, "seed": seed, "truncation": d})
    Ex = exponent(P.B, X, d)
    E = point_to_action(P)
    bound = action_nilpotency_bound(E.action, d)
    rep.data["nilpotency_bound"] = bound
    guarded = bound is not None
    rep.add(Check("nilpotency-guard", guarded, None,
                  None if guarded else f"kernel action is not nilpotent of order <= {d}"))

    def up(h):
        return transpose_up(h, P, Ex, guard=guarded)

    rng = random.Random(seed)
    K = E.lie
    hs = sample_lie_morphisms(K, X, samples, rng)
    ups = [up(h) for h in hs]
    bad = next((h for h, g in zip(hs, ups) if not transpose_down(g, P, Ex) == h), None)
    rep.add(Check("down-after-up", bad is None))
    bad = next((h for h, g in zip(hs, ups) if not check_point_morphism(g, P, Ex.point).passed), None)
    rep.add(Check("up-is-point-morphism", bad is None))
    fs = sample_equivariant_morphisms(E, Ex.R, samples, rng)
    rep.data["nonzero_equivariant_samples"] = sum(not f.is_zero() for f in fs)
    bad = None
    for f in fs:
        g = lift_morphism(P, Ex.point, f, check=False, k2=Ex.k)
        if not up(transpose_down(g, P, Ex)) == g:
            bad = f
            break
    rep.add(Check("up-after-down", bad is None))
    # naturality in X: Exp(psi) o up(h) = up(psi o h)
    psi = random_lie_automorphism(X, rng)
    ok = all(exponent_map(psi, Ex, Ex) @ g == up(psi @ h) for h, g in zip(hs[:5], ups))
    rep.add(Check("naturality-X", ok))
    # naturality in P: up(h) o G = up(h o W(G)) for G = lift of an equivariant endomorphism
    ends = sample_equivariant_morphisms(E, E, 5, rng)
    ok = True
    for f, h, g in zip(ends, hs, ups):
        G = lift_morphism(P, P, f, check=False)
        ok = ok and g @ G == up(h @ kernel_map(G, P, P))
    rep.add(Check("naturality-P", ok))
    rep.data["samples"] = len(hs)
    if mode == "enumerate-f2":
        from .enumerate import enumerate_lie_homs, enumerate_point_homs
        n_pt = len(enumerate_point_homs(P, Ex.point))
        n_lie = len(enumerate_lie_homs(K, X))
        rep.data["count_point_homs"] = n_pt
        rep.data["count_lie_homs"] = n_lie
        rep.add(Check("cardinality", n_pt == n_lie, None, f"{n_pt} vs {n_lie}"))
    return rep
