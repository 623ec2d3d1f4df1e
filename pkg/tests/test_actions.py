import random

import pytest

from conftest import abelian, heisenberg, line, nonabelian2, sl2
from liecat.actions import (EquivariantLieObject, LieAction, MonoidAction, action_nilpotency_bound,
                            action_tensor, action_transpose, action_untranspose, check_equivariant,
                            check_lie_action, check_monoid_action, convolution_lie, endo_monoid,
                            exp_translation_action, hom_postcompose, hom_precompose,
                            lie_to_monoid_action, monoid_action_tensor, monoid_to_lie_action,
                            regular_action)
from liecat.enveloping import TruncationError, check_monoid, uea
from liecat.lie import check_lie, check_lie_morphism, commutator_lie
from liecat.linalg import QQ, Matrix
from liecat.monoidal import (Morphism, Super, Vect, identity, make_object, morphism_from_images,
                             tensor_objects)


def adjoint(L):
    return LieAction(L, L.carrier, L.bracket)


def line_action(X, cols, B=None):
    """``t`` acting on ``X`` by the matrix with the given columns."""
    B = B or line()
    src = tensor_objects(B.carrier, X)
    images = {f"t⊗{X.names[j]}": {X.names[i]: v for i, v in enumerate(c) if v}
              for j, c in enumerate(cols)}
    return LieAction(B, X, morphism_from_images(src, X, images))


def test_adjoint_actions():
    for L in (sl2(), heisenberg(), nonabelian2()):
        assert check_lie_action(adjoint(L)).passed
        assert check_equivariant(EquivariantLieObject(L, L, L.bracket)).passed


def test_non_action_detected():
    L = nonabelian2()
    X = make_object(Vect(QQ), [("v", 0)])
    src = tensor_objects(L.carrier, X)
    # t1 acts by 1, t2 by 0: [t2, t1] = t1 would need 0 = 1
    theta = morphism_from_images(src, X, {"t1⊗v": {"v": 1}})
    assert not check_lie_action(LieAction(L, X, theta)).passed


@pytest.mark.parametrize("cat,degs", [(Vect(QQ), [0, 0]), (Super(QQ), [0, 1])])
def test_endo_monoid(cat, degs):
    X = make_object(cat, [("a", degs[0]), ("b", degs[1])])
    E = endo_monoid(X)
    assert check_monoid(E).passed
    assert check_lie(commutator_lie(E)).passed
    # ev is a monoid action
    from liecat.monoidal import hom_object
    assert check_monoid_action(MonoidAction(E, X, hom_object(X, X).ev)).passed


def test_transpose_roundtrip_and_lie_morphism():
    act = adjoint(sl2())
    tb = action_transpose(act)
    assert action_untranspose(act.B, act.X, tb).theta == act.theta
    assert check_lie_morphism(tb, act.B, commutator_lie(endo_monoid(act.X))).passed


def test_nilpotency_bound():
    X = abelian(3).carrier
    jordan = line_action(X, [[0, 1, 0], [0, 0, 1], [0, 0, 0]])
    assert action_nilpotency_bound(jordan, 5) == 2
    assert action_nilpotency_bound(adjoint(sl2()), 5) is None
    zero = line_action(X, [[0] * 3] * 3)
    assert action_nilpotency_bound(zero, 1) == 0


def test_lie_to_monoid_guard():
    X = abelian(4).carrier
    cols = [[0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1], [0, 0, 0, 0]]
    act = line_action(X, cols)
    with pytest.raises(TruncationError):
        lie_to_monoid_action(act, uea(line(), 2))
    phi = lie_to_monoid_action(act, uea(line(), 3))
    assert check_monoid_action(phi).passed


def test_lie_monoid_roundtrip():
    X = abelian(3).carrier
    act = line_action(X, [[0, 2, 0], [0, 0, -1], [0, 0, 0]])
    U = uea(line(), 3)
    phi = lie_to_monoid_action(act, U)
    assert check_monoid_action(phi).passed
    assert monoid_to_lie_action(phi, U).theta == act.theta


def test_heisenberg_nilpotent_rep_roundtrip():
    H = heisenberg()
    V = make_object(Vect(QQ), [("v1", 0), ("v2", 0), ("v3", 0)])
    src = tensor_objects(H.carrier, V)
    theta = morphism_from_images(src, V, {"x⊗v2": {"v1": 1}, "y⊗v3": {"v2": 1}, "z⊗v3": {"v1": 1}})
    act = LieAction(H, V, theta)
    assert check_lie_action(act).passed
    U = uea(H, 2)
    phi = lie_to_monoid_action(act, U)
    assert check_monoid_action(phi).passed
    assert monoid_to_lie_action(phi, U).theta == theta


def test_action_tensor_is_action_and_matches_delta_route():
    rng = random.Random(5)
    U = uea(line(), 3)
    for _ in range(5):
        n1, n2 = rng.randint(1, 3), rng.randint(1, 3)
        cols1 = [[rng.randint(-2, 2) if i < j else 0 for i in range(n1)] for j in range(n1)]
        cols2 = [[rng.randint(-2, 2) if i < j else 0 for i in range(n2)] for j in range(n2)]
        a1 = line_action(abelian(n1, prefix="a").carrier, cols1)
        a2 = line_action(abelian(n2, prefix="b").carrier, cols2)
        t = action_tensor(a1, a2)
        assert check_lie_action(t).passed
        route = monoid_to_lie_action(
            monoid_action_tensor(lie_to_monoid_action(a1, U), lie_to_monoid_action(a2, U)), U)
        assert route.theta == t.theta


def test_action_tensor_super_signs():
    X = make_object(Super(QQ), [("e", 0), ("o", 1)])
    from liecat.lie import lie_from_constants
    # odd generator s acting: s.e = o, s.o = 0 ; [s, s] = 0
    Bc = make_object(Super(QQ), [("s", 1)])
    from liecat.lie import abelian_lie
    B = abelian_lie(Bc)
    theta = morphism_from_images(tensor_objects(Bc, X), X, {"s⊗e": {"o": 1}}, check=True)
    a = LieAction(B, X, theta)
    assert check_lie_action(a).passed
    t = action_tensor(a, a)
    assert check_lie_action(t).passed
    U = uea(B, 2)
    route = monoid_to_lie_action(
        monoid_action_tensor(lie_to_monoid_action(a, U), lie_to_monoid_action(a, U)), U)
    assert route.theta == t.theta
    # s.(o (x) e) = s.o (x) e + (-1) o (x) s.e = -o (x) o
    assert t.theta("s⊗o⊗e") == {"o⊗o": -1}


def test_convolution_lie():
    U = uea(line(), 2)
    R = convolution_lie(U, sl2())
    assert check_lie(R).passed
    R2 = convolution_lie(uea(heisenberg(), 2), heisenberg())
    assert check_lie(R2).passed


def test_translation_action():
    U = uea(line(), 2)
    T = exp_translation_action(U, sl2().carrier)
    assert check_monoid_action(T).passed
    U2 = uea(abelian(2), 3)
    assert check_monoid_action(exp_translation_action(U2, line().carrier)).passed


def test_regular_action():
    assert check_monoid_action(regular_action(uea(abelian(2), 2))).passed


def test_truncated_product_associative_only_under_guard():
    U = uea(sl2(), 2)
    assert check_monoid(U).passed
    h, e = U.word(["h"]), U.word(["e"])
    # (h e) h keeps the [h, e] = 2e part; h (e h) overflows to zero
    assert U.mul(U.mul(h, e), h) != U.mul(h, U.mul(e, h))


def test_hom_functoriality():
    U = uea(line(), 2)
    X = sl2().carrier
    f = identity(X).scale(QQ(2))
    assert hom_postcompose(U.carrier, f) @ hom_postcompose(U.carrier, f) == \
        hom_postcompose(U.carrier, f @ f)
    g = identity(U.carrier)
    assert hom_precompose(g, X) == identity(hom_postcompose(U.carrier, f).source)


def test_jordan_block_phi_on_square_word():
    X = abelian(3).carrier
    cols = [[0, 1, 0], [0, 0, 1], [0, 0, 0]]
    act = line_action(X, cols)
    U = uea(line(), 3)
    phi = lie_to_monoid_action(act, U).phi
    t2 = U.word(["t", "t"])
    from liecat.monoidal import tensor_vectors
    # N^2 a0 = a2
    assert phi.apply(tensor_vectors(U.carrier, X, t2, {0: QQ(1)})) == {2: 1}


def test_translation_is_shift():
    U = uea(line(), 2)
    X = make_object(Vect(QQ), [("x", 0)])
    T = exp_translation_action(U, X)
    op = monoid_to_lie_action(T, U)
    from liecat.monoidal import hom_object
    H = hom_object(U.carrier, X)
    names = H.obj.names
    # t.(t |-> x) = (1 |-> x), t.(t.t |-> x) = (t |-> x), t.(1 |-> x) = 0
    assert op.theta("t⊗(t↦x)") == {"(1↦x)": 1}
    assert op.theta("t⊗(t·t↦x)") == {"(t↦x)": 1}
    assert op.theta("t⊗(1↦x)") == {}
    assert action_nilpotency_bound(op, 5) == 2
