"""Internal Lie algebras: validation, morphisms, and the commutator functor."""
from __future__ import annotations

from typing import Iterable, Optional, Sequence, Tuple

from .linalg import Matrix, solve
from .monoidal import (CategoryError, GradedObject, Morphism, cyclic, differential_mismatch,
                       factor_names, identity, morphism_from_images, symmetry, tensor_morphisms,
                       tensor_objects, zero_morphism)
from .reports import Check, Report, compare, vanishes


class LieObject:
    """A carrier ``X`` with a degree-0 bracket ``b: X (x) X -> X``.

    Construction does not validate the laws; call :func:`check_lie`.
    """

    __slots__ = ("carrier", "bracket")

    def __init__(self, carrier: GradedObject, bracket: Morphism):
        XX = tensor_objects(carrier, carrier)
        if bracket.source != XX or bracket.target != carrier:
            raise CategoryError("bracket must be a morphism X (x) X -> X")
        self.carrier = carrier
        self.bracket = bracket

    @property
    def category(self):
        return self.carrier.category

    @property
    def field(self):
        return self.carrier.field

    @property
    def dim(self) -> int:
        return self.carrier.dim

    def br(self, a: str, b: str) -> dict:
        """``[a, b]`` for basis names, as ``{name: coefficient}``."""
        X = self.carrier
        k = X.index(a) * X.dim + X.index(b)
        return {X.names[i]: v for i, v in self.bracket.col(k).items()}

    def is_abelian(self) -> bool:
        return self.bracket.is_zero()

    def __repr__(self):
        return f"LieObject({list(self.carrier.names)})"


def lie_from_constants(X: GradedObject, constants: Iterable[Tuple[str, str, str, object]],
                       check_degree: bool = True) -> LieObject:
    """Bracket from structure constants ``(a, b, c, k)`` meaning ``[a, b] += k c``.

    Omitted triples are zero; no antisymmetrization is applied.
    """
    images: dict = {}
    for a, b, c, k in constants:
        X.index(a), X.index(b)
        key = f"{a}⊗{b}"
        images.setdefault(key, {})
        images[key][c] = images[key].get(c, 0) + X.field(k)
    XX = tensor_objects(X, X)
    return LieObject(X, morphism_from_images(XX, X, images, check=check_degree))


def abelian_lie(X: GradedObject) -> LieObject:
    return LieObject(X, zero_morphism(tensor_objects(X, X), X))


def check_lie(L: LieObject, strict: bool = False) -> Report:
    """Alternating and Jacobi laws as matrix identities, with first failing basis tuple.

    ``strict`` additionally demands ``[x, x] = 0`` on basis vectors whose
    self-symmetry sign is +1 (the quasi-Lie/Lie distinction in characteristic 2).
    Chain and lp instances also check that the bracket commutes with the structure map.
    """
    X = L.carrier
    b = L.bracket
    rep = Report("check-lie")
    rep.data["dim"] = X.dim
    bad = b.inhomogeneous_entry()
    if bad is not None or any(x != 0 for x in b.degree):
        i, j = bad if bad is not None else (None, None)
        w = factor_names([X, X], j) + (X.names[i],) if bad is not None else None
        rep.add(Check("degree", False, w, "bracket is not homogeneous of degree 0"))
        return rep
    rep.add(Check("degree", True))
    XX = tensor_objects(X, X)
    alt = b @ (identity(XX) + symmetry(X, X))
    rep.add(vanishes("alternating", alt, [X, X]))
    if strict:
        C = X.category
        diag = [i * X.dim + i for i in range(X.dim)
                if C.sign(X.degrees[i], X.degrees[i]) == C.field.one]
        rep.add(vanishes("alternating-strict", b, [X, X], diag))
    XXX = tensor_objects(XX, X)
    c = cyclic(X)
    cyc = identity(XXX) + c + c @ c
    jac = b @ tensor_morphisms(identity(X), b) @ cyc
    rep.add(vanishes("jacobi", jac, [X, X, X]))
    if X.category.has_differential:
        j = differential_mismatch(b)
        rep.add(Check("differential", j is None,
                      None if j is None else factor_names([X, X], j)))
    return rep


def check_lie_morphism(f: Morphism, source: LieObject, target: LieObject) -> Check:
    """``f o b = b' o (f (x) f)``; chain/lp morphisms must also commute with ``d``."""
    if f.source != source.carrier or f.target != target.carrier:
        raise CategoryError("morphism does not match the Lie objects")
    if any(x != 0 for x in f.degree) or f.inhomogeneous_entry() is not None:
        return Check("lie-morphism", False, None, "not homogeneous of degree 0")
    X = source.carrier
    chk = compare("lie-morphism", f @ source.bracket,
                  target.bracket @ tensor_morphisms(f, f), [X, X])
    if chk.passed and X.category.has_differential:
        j = differential_mismatch(f)
        if j is not None:
            return Check("lie-morphism", False, (X.names[j],), "does not commute with d")
    return chk


def commutator_lie(A) -> LieObject:
    """``L(A)``: carrier of the monoid ``A`` with bracket ``m o (id - sigma)``."""
    X = A.carrier
    XX = tensor_objects(X, X)
    return LieObject(X, A.m @ (identity(XX) - symmetry(X, X)))


def restrict_lie(L: LieObject, k: Morphism, carrier: Optional[GradedObject] = None) -> LieObject:
    """Bracket induced on a subobject ``k: K >-> X`` closed under the bracket.

    Raises ``ValueError`` when the image of ``k`` is not a subalgebra.
    """
    K = k.source
    rhs = L.bracket @ tensor_morphisms(k, k)
    sol = solve(k.matrix, rhs.matrix)
    if sol is None:
        raise ValueError("subspace is not closed under the bracket")
    KK = tensor_objects(K, K)
    return LieObject(K, Morphism(KK, K, sol, check=False))


def direct_product_lie(L1: LieObject, L2: LieObject):
    """Product Lie algebra on ``L1 (+) L2`` with its biproduct data."""
    from .monoidal import direct_sum
    ds = direct_sum(L1.carrier, L2.carrier)
    S = ds.obj
    b = (ds.i1 @ L1.bracket @ tensor_morphisms(ds.p1, ds.p1)
         + ds.i2 @ L2.bracket @ tensor_morphisms(ds.p2, ds.p2))
    return LieObject(S, b), ds
