"""Monoid and Lie actions, the endomorphism monoid, and the structures on ``Hom(A, X)``.

Every structure map here is a composite of explicit symmetries, evaluations
and curryings, so no Koszul sign is entered by hand.
"""
from __future__ import annotations

from typing import List, Optional

from .enveloping import (BimonoidObject, MonoidObject, TruncatedUEA, TruncationError,
                         extend_to_monoid)
from .lie import LieObject, check_lie, check_lie_morphism, commutator_lie
from .linalg import Matrix, image_basis
from .monoidal import (CategoryError, GradedObject, Morphism, curry, differential_mismatch,
                       hom_object, identity, interchange, symmetry, tensor_many,
                       tensor_morphisms, tensor_objects, uncurry)
from .reports import Check, Report, compare


class MonoidAction:
    def __init__(self, A: MonoidObject, X: GradedObject, phi: Morphism):
        if phi.source != tensor_objects(A.carrier, X) or phi.target != X:
            raise CategoryError("action must be A (x) X -> X")
        self.A, self.X, self.phi = A, X, phi


class LieAction:
    def __init__(self, B: LieObject, X: GradedObject, theta: Morphism):
        if theta.source != tensor_objects(B.carrier, X) or theta.target != X:
            raise CategoryError("action must be B (x) X -> X")
        self.B, self.X, self.theta = B, X, theta

    def operator(self, i: int) -> Matrix:
        """Matrix of ``theta(b_i (x) -)`` on ``X``."""
        from .monoidal import tensor_data
        td = tensor_data(self.B.carrier, self.X)
        F = self.X.field
        return Matrix(self.X.dim, self.X.dim, F,
                      [self.theta.col(td.pairs[(i, x)]) for x in range(self.X.dim)])


class EquivariantLieObject:
    """A Lie object ``(X, b_X)`` with a Lie action ``theta`` of ``B`` on ``X``."""

    def __init__(self, B: LieObject, X: LieObject, theta: Morphism):
        self.B = B
        self.lie = X
        self.action = LieAction(B, X.carrier, theta)

    @property
    def theta(self) -> Morphism:
        return self.action.theta

    @property
    def carrier(self) -> GradedObject:
        return self.lie.carrier


def check_monoid_action(act: MonoidAction) -> Report:
    A, X, phi = act.A, act.X, act.phi
    rep = Report("check-monoid-action")
    Ac = A.carrier
    lhs = phi @ tensor_morphisms(A.m, identity(X))
    rhs = phi @ tensor_morphisms(identity(Ac), phi)
    rep.add(compare("action-associativity", lhs, rhs, [Ac, Ac, X]))
    rep.add(compare("action-unit", phi @ tensor_morphisms(A.u, identity(X)), identity(X), [X]))
    if X.category.has_differential:
        j = differential_mismatch(phi)
        rep.add(Check("action-differential", j is None))
    return rep


def check_lie_action(act: LieAction) -> Report:
    """``theta (b (x) id) = theta (id (x) theta) ((id - sigma) (x) id)``."""
    B, X, theta = act.B, act.X, act.theta
    Bc = B.carrier
    rep = Report("check-lie-action")
    BB = tensor_objects(Bc, Bc)
    lhs = theta @ tensor_morphisms(B.bracket, identity(X))
    rhs = (theta @ tensor_morphisms(identity(Bc), theta)
           @ tensor_morphisms(identity(BB) - symmetry(Bc, Bc), identity(X)))
    rep.add(compare("lie-action", lhs, rhs, [Bc, Bc, X]))
    if X.category.has_differential:
        j = differential_mismatch(theta)
        rep.add(Check("action-differential", j is None))
    return rep


def action_tensor(t1: LieAction, t2: LieAction) -> LieAction:
    """``theta * theta' = (theta (x) id) + (id (x) theta') sigma (id (x) sigma)`` on ``X (x) X'``."""
    if t1.B.carrier != t2.B.carrier:
        raise CategoryError("actions of different Lie objects")
    Bc, X, X2 = t1.B.carrier, t1.X, t2.X
    first = tensor_morphisms(t1.theta, identity(X2))
    BX2 = tensor_objects(Bc, X2)
    second = (tensor_morphisms(identity(X), t2.theta) @ symmetry(BX2, X)
              @ tensor_morphisms(identity(Bc), symmetry(X, X2)))
    return LieAction(t1.B, tensor_objects(X, X2), first + second)


def check_equivariant(E: EquivariantLieObject) -> Report:
    """``theta (id (x) b_X) = b_X (theta * theta)``."""
    rep = Report("check-equivariant")
    Bc, X = E.B.carrier, E.carrier
    lhs = E.theta @ tensor_morphisms(identity(Bc), E.lie.bracket)
    rhs = E.lie.bracket @ action_tensor(E.action, E.action).theta
    rep.add(compare("equivariance", lhs, rhs, [Bc, X, X]))
    return rep


def check_equivariant_full(E: EquivariantLieObject) -> Report:
    rep = Report("check-equivariant")
    rep.extend_prefixed("B.", check_lie(E.B))
    rep.extend_prefixed("X.", check_lie(E.lie))
    rep.extend(check_lie_action(E.action).checks)
    rep.extend(check_equivariant(E).checks)
    return rep


# ---------------------------------------------------------------------------
# endomorphism monoid and the action correspondence


def endo_monoid(X: GradedObject) -> MonoidObject:
    """``E(X)`` on ``Hom(X, X)``: ``m`` curries ``ev o (id (x) ev)``, ``u`` curries the unitor."""
    H = hom_object(X, X)
    Hc = H.obj
    HH = tensor_objects(Hc, Hc)
    m = curry(H.ev @ tensor_morphisms(identity(Hc), H.ev), HH, X)
    I = X.category.unit()
    u = curry(identity(X), I, X)  # I (x) X is X under the strict unitor
    return MonoidObject(Hc, m, u)


def action_transpose(act: LieAction) -> Morphism:
    """``theta_bar: B -> X^X`` with ``ev (theta_bar (x) id) = theta``."""
    return curry(act.theta, act.B.carrier, act.X)


def action_untranspose(B: LieObject, X: GradedObject, theta_bar: Morphism) -> LieAction:
    return LieAction(B, X, uncurry(theta_bar, X, X))


def action_nilpotency_bound(act: LieAction, dmax: int) -> Optional[int]:
    """Smallest ``k <= dmax`` with all ``(k+1)``-fold composites of the operators zero, else None."""
    F = act.X.field
    ops = [act.operator(i) for i in range(act.B.carrier.dim)]
    span: List[dict] = [{i: F.one} for i in range(act.X.dim)]
    k = 0
    while True:
        imgs = [o.apply(v) for o in ops for v in span]
        imgs = [v for v in imgs if v]
        if not imgs:
            return k
        if k >= dmax:
            return None
        M = Matrix(act.X.dim, len(imgs), F, imgs)
        span = [{i: x for i, x in enumerate(v) if x != 0} for v in image_basis(M)]
        k += 1


def lie_to_monoid_action(act: LieAction, U: TruncatedUEA, guard: bool = True) -> MonoidAction:
    """Extend ``theta`` to ``U_d(B) (x) X -> X`` through ``E(X)``.

    Raises :class:`TruncationError` when the action is not nilpotent of order
    ``<= d``.  ``guard=False`` skips that test and returns the word-by-word
    composite, which is then not a monoid action in general.
    """
    if U.lie.carrier != act.B.carrier:
        raise CategoryError("enveloping algebra of a different Lie object")
    if guard and action_nilpotency_bound(act, U.truncation) is None:
        raise TruncationError(f"action is not nilpotent of order <= {U.truncation}")
    E = endo_monoid(act.X)
    phibar = extend_to_monoid(U, action_transpose(act), E, check=False)
    return MonoidAction(U, act.X, uncurry(phibar, act.X, act.X))


def monoid_to_lie_action(act: MonoidAction, U: TruncatedUEA) -> LieAction:
    """``theta = phi o (nu (x) id)``."""
    return LieAction(U.lie, act.X, act.phi @ tensor_morphisms(U.nu, identity(act.X)))


def monoid_action_tensor(a1: MonoidAction, a2: MonoidAction) -> MonoidAction:
    """``(phi (x) phi') o interchange o (delta (x) id)`` for a bimonoid ``A``."""
    A = a1.A
    if not isinstance(A, BimonoidObject):
        raise CategoryError("tensoring actions needs a comultiplication")
    Ac, X, X2 = A.carrier, a1.X, a2.X
    phi = (tensor_morphisms(a1.phi, a2.phi) @ interchange(Ac, Ac, X, X2)
           @ tensor_morphisms(A.delta, identity(tensor_objects(X, X2))))
    return MonoidAction(A, tensor_objects(X, X2), phi)


def regular_action(A: MonoidObject) -> MonoidAction:
    return MonoidAction(A, A.carrier, A.m)


# ---------------------------------------------------------------------------
# structures on Hom(A, X)


def convolution_lie(A: BimonoidObject, X: LieObject) -> LieObject:
    """Bracket on ``Hom(A, X)``: curry of ``b_X (ev (x) ev) i (id (x) delta)``."""
    H = hom_object(A.carrier, X.carrier)
    Hc, Ac = H.obj, A.carrier
    HH = tensor_objects(Hc, Hc)
    theta = (X.bracket @ tensor_morphisms(H.ev, H.ev) @ interchange(Hc, Hc, Ac, Ac)
             @ tensor_morphisms(identity(HH), A.delta))
    return LieObject(Hc, curry(theta, HH, Ac))


def exp_translation_action(A: MonoidObject, X: GradedObject) -> MonoidAction:
    """``A`` acting on ``Hom(A, X)`` by ``(a.f)(a') = +-f(a' a)``.

    Curry of ``ev (id (x) m) (id (x) sigma) (sigma (x) id)`` on ``A (x) Hom(A, X) (x) A``.
    """
    H = hom_object(A.carrier, X)
    Hc, Ac = H.obj, A.carrier
    phi = (H.ev @ tensor_morphisms(identity(Hc), A.m)
           @ tensor_morphisms(identity(Hc), symmetry(Ac, Ac))
           @ tensor_morphisms(symmetry(Ac, Hc), identity(Ac)))
    AH = tensor_objects(Ac, Hc)
    return MonoidAction(A, Hc, curry(phi, AH, Ac))


def hom_postcompose(A: GradedObject, psi: Morphism) -> Morphism:
    """``Hom(A, psi): Hom(A, X) -> Hom(A, X')``, ``f -> psi o f``."""
    H = hom_object(A, psi.source)
    H2 = hom_object(A, psi.target)
    theta = psi @ H.ev
    return curry(theta, H.obj, A)


def hom_precompose(g: Morphism, X: GradedObject) -> Morphism:
    """``Hom(g, X): Hom(A', X) -> Hom(A, X)``, ``f -> f o g`` for ``g: A -> A'``."""
    H = hom_object(g.target, X)
    theta = H.ev @ tensor_morphisms(identity(H.obj), g)
    return curry(theta, H.obj, g.source)
