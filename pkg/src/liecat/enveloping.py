"""Monoids, bimonoids, truncated free monoids and truncated enveloping algebras.

``U_d(B)`` is the truncated tensor algebra ``F_d(B)`` (words of length at
most ``d``) modulo the span of ``w1 r w2`` where ``r`` runs over the relators
``x y - eps(x, y) y x - [x, y]`` and ``|w1| + |w2| + 2 <= d``.  The quotient
basis is the set of non-pivot words when rows are reduced with longer and
lexicographically larger words eliminated first, so it consists of ordered
(PBW) monomials.  A product of two basis words whose lengths sum past ``d``
is zero.  On triples of total length at most ``d`` the multiplication is
exactly that of the untruncated algebra; past that bound it is not
associative in general, so associativity and multiplicativity of the
comultiplication are checked under the word-length guard.
"""
from __future__ import annotations

import itertools
from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple

from .lie import LieObject, check_lie, check_lie_morphism, commutator_lie
from .linalg import Matrix, image_basis, kernel_basis, quotient_basis
from .monoidal import (CategoryError, GradedObject, Morphism, differential_mismatch,
                       graded_kernel, identity, interchange, symmetry, tensor_data,
                       tensor_morphisms, tensor_objects, tensor_vectors, split_index)
from .reports import Check, Report, compare

WORD_SEP = "·"


class TruncationError(ValueError):
    """An action or morphism does not factor through the chosen truncation."""


class MonoidObject:
    """``(A, m, u)``.  ``lengths``/``bound`` enable the word-length guard."""

    def __init__(self, carrier: GradedObject, m: Morphism, u: Morphism,
                 lengths: Optional[Sequence[int]] = None, bound: Optional[int] = None):
        AA = tensor_objects(carrier, carrier)
        I = carrier.category.unit()
        if m.source != AA or m.target != carrier:
            raise CategoryError("m must be A (x) A -> A")
        if u.source != I or u.target != carrier:
            raise CategoryError("u must be I -> A")
        self.carrier = carrier
        self.m = m
        self.u = u
        self.lengths = tuple(lengths) if lengths is not None else None
        self.bound = bound

    @property
    def category(self):
        return self.carrier.category

    @property
    def field(self):
        return self.carrier.field

    @property
    def dim(self):
        return self.carrier.dim

    def mul(self, a: dict, b: dict) -> dict:
        """Product of two coordinate vectors."""
        return self.m.apply(tensor_vectors(self.carrier, self.carrier, a, b))

    def unit_vector(self) -> dict:
        return dict(self.u.col(0))

    def guarded(self, *idx: int) -> bool:
        if self.bound is None or self.lengths is None:
            return True
        return sum(self.lengths[i] for i in idx) <= self.bound


class BimonoidObject(MonoidObject):
    """Monoid with ``delta: A -> A (x) A``, ``counit: A -> I`` and optional ``antipode``."""

    def __init__(self, carrier, m, u, delta: Morphism, counit: Morphism,
                 antipode: Optional[Morphism] = None, lengths=None, bound=None):
        super().__init__(carrier, m, u, lengths, bound)
        self.delta = delta
        self.counit = counit
        self.antipode = antipode


# ---------------------------------------------------------------------------
# free monoid


def _word_name(X: GradedObject, w: Tuple[int, ...]) -> str:
    return WORD_SEP.join(X.names[i] for i in w) if w else "1"


def _enumerate_words(X: GradedObject, d: int) -> List[Tuple[int, ...]]:
    C = X.category
    G = C.grading
    words = []
    for k in range(d + 1):
        for w in itertools.product(range(X.dim), repeat=k):
            deg = G.zero
            for i in w:
                deg = G.add(deg, X.degrees[i])
            if C.kind == "lp" and deg[0] >= 2:
                continue
            C.check_degree(deg)
            words.append(w)
    return words


class FreeMonoid(MonoidObject):
    """``F_d(X)``: words of length ``<= d``; overflowing concatenations are zero."""

    def __init__(self, X: GradedObject, d: int):
        if d < 0:
            raise ValueError("truncation bound must be >= 0")
        C = X.category
        G = C.grading
        F = C.field
        self.generators = X
        self.words = _enumerate_words(X, d)
        self.word_index = {w: i for i, w in enumerate(self.words)}
        names = tuple(_word_name(X, w) for w in self.words)
        degrees = []
        for w in self.words:
            deg = G.zero
            for i in w:
                deg = G.add(deg, X.degrees[i])
            degrees.append(deg)
        dmat = None
        if C.has_differential and X.differential is not None:
            dX = X.d()

            def dcol(k):
                w = self.words[k]
                out: dict = {}
                s = F.one
                for pos, i in enumerate(w):
                    for i2, v in dX.col(i).items():
                        t = self.word_index.get(w[:pos] + (i2,) + w[pos + 1:])
                        if t is not None:
                            out[t] = out.get(t, 0) + s * v
                    s = s * C.leibniz_sign(X.degrees[i])
                return out

            dmat = Matrix.lazy(len(self.words), len(self.words), F, dcol).materialize()
        if len(self.words) == 1:
            A = C.unit()
        else:
            A = GradedObject(C, names, tuple(degrees), dmat)
        td = tensor_data(A, A)
        n = len(self.words)

        def mcol(k):
            a, b = td.split[k]
            t = self.word_index.get(self.words[a] + self.words[b])
            if t is None or len(self.words[a]) + len(self.words[b]) > d:
                return {}
            return {t: F.one}

        m = Morphism(td.obj, A, Matrix.lazy(n, td.obj.dim, F, mcol), check=False)
        u = Morphism(C.unit(), A, Matrix(n, 1, F, [{0: F.one}]), check=False)
        super().__init__(A, m, u, [len(w) for w in self.words], d)
        self.truncation = d

    def word_vector(self, w: Tuple[int, ...]) -> dict:
        return {self.word_index[w]: self.field.one}


def free_monoid_truncated(X: GradedObject, d: int) -> FreeMonoid:
    return FreeMonoid(X, d)


# ---------------------------------------------------------------------------
# truncated enveloping algebra


class TruncatedUEA(BimonoidObject):
    """``U_d(B)`` with ``m, u, delta, counit, antipode`` and ``nu: B -> U_d(B)``."""

    def __init__(self, B: LieObject, d: int):
        if d < 1:
            raise ValueError("truncation bound must be >= 1")
        X = B.carrier
        C = X.category
        if C.kind == "lp":
            raise CategoryError("enveloping algebras are not supported in the lp instance")
        F = C.field
        self.lie = B
        self.truncation = d
        free = FreeMonoid(X, d)
        self.free = free
        N = len(free.words)
        widx = free.word_index
        relators = []
        for i in range(X.dim):
            for j in range(X.dim):
                r: Dict[Tuple[int, ...], object] = {}
                r[(i, j)] = r.get((i, j), 0) + F.one
                r[(j, i)] = r.get((j, i), 0) - C.sign(X.degrees[i], X.degrees[j])
                for k, v in B.bracket.col(i * X.dim + j).items():
                    r[(k,)] = r.get((k,), 0) - v
                r = {w: v for w, v in r.items() if F.norm(v) != 0}
                if r:
                    relators.append(r)
        gens = []
        for w1 in free.words:
            for w2 in free.words:
                if len(w1) + len(w2) + 2 > d:
                    continue
                for r in relators:
                    vec = [F.zero] * N
                    for w, v in r.items():
                        t = widx[w1 + w + w2]
                        vec[t] = F.norm(vec[t] + v)
                    if any(x != 0 for x in vec):
                        gens.append(vec)
        self.ideal_generators = gens
        reps, q = quotient_basis(N, gens, F, column_order=list(reversed(range(N))))
        self.rep_words = [free.words[r] for r in reps]
        self.lengths_ = [len(w) for w in self.rep_words]
        rep_pos = {w: k for k, w in enumerate(self.rep_words)}
        n = len(reps)
        if n == 1:
            U = C.unit()
        else:
            U = GradedObject(C, tuple(free.carrier.names[r] for r in reps),
                             tuple(free.carrier.degrees[r] for r in reps), None)
        self.q = Morphism(free.carrier, U, q, check=False)
        # induced differential
        if C.has_differential and free.carrier.differential is not None:
            dq = q @ free.carrier.d()
            for g in gens:
                if dq.apply({t: v for t, v in enumerate(g) if v != 0}):
                    raise CategoryError("relation ideal is not stable under the differential")
            incl = Matrix(N, n, F, [{r: F.one} for r in reps])
            dU = (dq @ incl).materialize()
            U = GradedObject(C, U.names, U.degrees, dU, U.is_unit)
            self.q = Morphism(free.carrier, U, q, check=False)
        self.rep_pos = rep_pos

        def qword(w: Tuple[int, ...]) -> dict:
            return q.col(widx[w])

        self._qword = qword
        td = tensor_data(U, U)

        def mcol(k):
            a, b = td.split[k]
            wa, wb = self.rep_words[a], self.rep_words[b]
            if len(wa) + len(wb) > d:
                return {}
            return qword(wa + wb)

        m = Morphism(td.obj, U, Matrix.lazy(n, td.obj.dim, F, mcol), check=False)
        u = Morphism(C.unit(), U, Matrix(n, 1, F, [qword(())]), check=False)
        eps = C.sign
        deg = X.degrees

        def dcol(k):
            w = self.rep_words[k]
            out: dict = {}
            L = len(w)
            for mask in range(1 << L):
                left = tuple(w[i] for i in range(L) if mask >> i & 1)
                right = tuple(w[i] for i in range(L) if not mask >> i & 1)
                s = F.one
                for i in range(L):
                    if mask >> i & 1:
                        continue
                    for j in range(i + 1, L):
                        if mask >> j & 1:
                            s = s * eps(deg[w[i]], deg[w[j]])
                for t, v in tensor_vectors(U, U, qword(left), qword(right)).items():
                    out[t] = out.get(t, 0) + s * v
            return out

        delta = Morphism(U, td.obj, Matrix.lazy(td.obj.dim, n, F, dcol), check=False)
        counit = Morphism(U, C.unit(), Matrix(1, n, F, [({0: F.one} if not w else {})
                                                         for w in self.rep_words]), check=False)

        def scol(k):
            w = self.rep_words[k]
            s = F(-1) ** len(w)
            for i in range(len(w)):
                for j in range(i + 1, len(w)):
                    s = s * eps(deg[w[i]], deg[w[j]])
            return {t: s * v for t, v in qword(tuple(reversed(w))).items()}

        antipode = Morphism(U, U, Matrix.lazy(n, n, F, scol), check=False)
        nu = Morphism(X, U, Matrix(n, X.dim, F, [qword((i,)) for i in range(X.dim)]), check=False)
        super().__init__(U, m, u, delta, counit, antipode, self.lengths_, d)
        self.nu = nu

    @property
    def words(self) -> List[str]:
        return list(self.carrier.names)

    def word(self, names: Sequence[str]) -> dict:
        """Class of a word given by generator names (zero when longer than ``d``)."""
        X = self.lie.carrier
        w = tuple(X.index(n) for n in names)
        if len(w) > self.truncation:
            return {}
        return dict(self._qword(w))

    def dims_by_length(self) -> List[int]:
        out = [0] * (self.truncation + 1)
        for L in self.lengths_:
            out[L] += 1
        return out


def uea(B: LieObject, d: int) -> TruncatedUEA:
    return TruncatedUEA(B, d)


def pbw_count(n_even: int, n_odd: int, d: int) -> int:
    """Monomials of total degree ``<= d``: symmetric in even, exterior in odd generators."""
    from math import comb
    def sym(m):
        return comb(n_even + m - 1, m) if n_even else int(m == 0)

    return sum(comb(n_odd, j) * sym(k - j)
               for k in range(d + 1) for j in range(min(k, n_odd) + 1))


# ---------------------------------------------------------------------------
# derived structures


def tensor_monoid(A: MonoidObject, B: MonoidObject) -> MonoidObject:
    """``A (x) B`` with ``m = (m_A (x) m_B) o interchange``."""
    AB = tensor_objects(A.carrier, B.carrier)
    m = tensor_morphisms(A.m, B.m) @ interchange(A.carrier, B.carrier, A.carrier, B.carrier)
    u = tensor_morphisms(A.u, B.u)
    return MonoidObject(AB, m, u)


def delta_monoid(A: MonoidObject) -> Morphism:
    """``a -> u (x) a + a (x) u`` under the strict unitors."""
    ida = identity(A.carrier)
    return tensor_morphisms(A.u, ida) + tensor_morphisms(ida, A.u)


def uea_comultiplication(U: TruncatedUEA) -> Morphism:
    return U.delta


def uea_counit(U: TruncatedUEA) -> Morphism:
    return U.counit


def uea_antipode(U: TruncatedUEA) -> Morphism:
    return U.antipode


def _tensor_cols(A: MonoidObject, k: int, guard: bool) -> List[int]:
    """Columns of ``A^{(x)k}`` satisfying the word-length guard."""
    factors = [A.carrier] * k
    from .monoidal import tensor_fold
    T = tensor_fold(factors)
    if not guard or A.bound is None:
        return list(range(T.dim))
    return [c for c in range(T.dim) if A.guarded(*split_index(factors, c))]


def check_monoid(A: MonoidObject) -> Report:
    X = A.carrier
    rep = Report("check-monoid")
    rep.data["dim"] = X.dim
    ida = identity(X)
    lhs = A.m @ tensor_morphisms(ida, A.m)
    rhs = A.m @ tensor_morphisms(A.m, ida)
    rep.add(compare("associativity", lhs, rhs, [X, X, X], _tensor_cols(A, 3, True)))
    rep.add(compare("left-unit", A.m @ tensor_morphisms(A.u, ida), ida, [X]))
    rep.add(compare("right-unit", A.m @ tensor_morphisms(ida, A.u), ida, [X]))
    if X.category.has_differential:
        for name, f in (("m-differential", A.m), ("u-differential", A.u)):
            j = differential_mismatch(f)
            rep.add(Check(name, j is None))
    return rep


def check_bimonoid(A: BimonoidObject, cocommutative: bool = True) -> Report:
    X = A.carrier
    I = X.category.unit()
    rep = check_monoid(A)
    rep.task = "check-bimonoid"
    ida = identity(X)
    D, e = A.delta, A.counit
    rep.add(compare("coassociativity", tensor_morphisms(D, ida) @ D,
                    tensor_morphisms(ida, D) @ D, [X]))
    rep.add(compare("left-counit", tensor_morphisms(e, ida) @ D, ida, [X]))
    rep.add(compare("right-counit", tensor_morphisms(ida, e) @ D, ida, [X]))
    if cocommutative:
        rep.add(compare("cocommutativity", symmetry(X, X) @ D, D, [X]))
    lhs = D @ A.m
    rhs = tensor_morphisms(A.m, A.m) @ interchange(X, X, X, X) @ tensor_morphisms(D, D)
    rep.add(compare("delta-multiplicative", lhs, rhs, [X, X], _tensor_cols(A, 2, True)))
    rep.add(compare("delta-unit", D @ A.u, tensor_morphisms(A.u, A.u), [I]))
    rep.add(compare("counit-multiplicative", e @ A.m, tensor_morphisms(e, e), [X, X],
                    _tensor_cols(A, 2, True)))
    rep.add(compare("counit-unit", e @ A.u, identity(I), [I]))
    return rep


def check_hopf(A: BimonoidObject) -> Report:
    rep = check_bimonoid(A)
    rep.task = "hopf-check"
    X = A.carrier
    if A.antipode is None:
        rep.add(Check("antipode", False, None, "no antipode"))
        return rep
    s = A.antipode
    ida = identity(X)
    ue = A.u @ A.counit
    rep.add(compare("antipode-left", A.m @ tensor_morphisms(s, ida) @ A.delta, ue, [X]))
    rep.add(compare("antipode-right", A.m @ tensor_morphisms(ida, s) @ A.delta, ue, [X]))
    return rep


class Primitives(NamedTuple):
    inclusion: Morphism
    lie: Optional[LieObject]
    closed: Check

    @property
    def dim(self) -> int:
        return self.inclusion.source.dim


def primitives(A: BimonoidObject) -> Primitives:
    """Kernel of ``delta - delta_A``, with the commutator bracket restricted to it."""
    k = graded_kernel(A.delta - delta_monoid(A), prefix="p")
    P = k.source
    LA = commutator_lie(A)
    rhs = LA.bracket @ tensor_morphisms(k, k)
    from .linalg import solve
    sol = solve(k.matrix, rhs.matrix)
    if sol is None:
        return Primitives(k, None, Check("primitives-closed", False))
    PP = tensor_objects(P, P)
    L = LieObject(P, Morphism(PP, P, sol, check=False))
    return Primitives(k, L, Check("primitives-closed", True))


def check_monoid_morphism(f: Morphism, A: MonoidObject, A2: MonoidObject) -> Check:
    X = A.carrier
    lhs = f @ A.m
    rhs = A2.m @ tensor_morphisms(f, f)
    c = compare("monoid-morphism", lhs, rhs, [X, X])
    if not c.passed:
        return c
    if not (f @ A.u) == A2.u:
        return Check("monoid-morphism", False, ("1",), "unit not preserved")
    return c


def nilpotency_class(ops: Sequence[dict], A: MonoidObject, dmax: int) -> Optional[int]:
    """Smallest ``k <= dmax`` with every ``(k+1)``-fold product of ``ops`` zero, else None."""
    F = A.field
    n = A.dim
    span = [dict(o) for o in _independent(ops, n, F)]
    k = 0
    while span:
        if k >= dmax:
            return None
        prods = [A.mul(s, o) for s in span for o in ops]
        span = _independent(prods, n, F)
        k += 1
    return k


def _independent(vecs: Sequence[dict], n: int, F) -> List[dict]:
    vecs = [v for v in vecs if v]
    if not vecs:
        return []
    M = Matrix(n, len(vecs), F, vecs)
    return [{i: x for i, x in enumerate(v) if x != 0} for v in image_basis(M)]


def extend_to_monoid(U: TruncatedUEA, g: Morphism, A: MonoidObject, check: bool = True) -> Morphism:
    """The monoid morphism ``U_d(B) -> A`` extending ``g: B -> A`` along ``nu``.

    Basis words ``x1...xk`` go to ``g(x1)...g(xk)``.  With ``check`` the
    images of ``g`` must have all ``(d+1)``-fold products zero, otherwise
    :class:`TruncationError` is raised.
    """
    d = U.truncation
    X = U.lie.carrier
    ops = [g.col(i) for i in range(X.dim)]
    if check and nilpotency_class(ops, A, d) is None:
        raise TruncationError(f"image is not nilpotent of class <= {d}")
    one = A.unit_vector()
    cols = []
    for w in U.rep_words:
        v = one
        for i in w:
            v = A.mul(v, ops[i])
        cols.append(v)
    return Morphism(U.carrier, A.carrier, Matrix(A.dim, U.dim, A.field, cols), check=False)


def check_unit_nu(U: TruncatedUEA) -> Check:
    """``nu`` is a Lie morphism ``B -> L(U_d(B))``.

    Brackets of generators have length 2, so for ``d = 1`` the law lies
    entirely outside the word-length guard and the check is vacuous.
    """
    if U.truncation < 2:
        return Check("lie-morphism", True, None, "vacuous under the length guard (d < 2)")
    return check_lie_morphism(U.nu, U.lie, commutator_lie(U))
