from math import comb

import pytest

from conftest import F2, heisenberg, line, load_lie, nonabelian2, odd_line, sl2, abelian
from liecat.actions import endo_monoid
from liecat.enveloping import (TruncationError, check_bimonoid, check_hopf, check_monoid,
                               check_monoid_morphism, check_unit_nu, delta_monoid, extend_to_monoid,
                               free_monoid_truncated, pbw_count, primitives, tensor_monoid, uea)
from liecat.lie import check_lie, check_lie_morphism, commutator_lie
from liecat.linalg import QQ, Matrix
from liecat.monoidal import (Chain, CategoryError, LP, Morphism, Super, Vect, hom_object,
                             make_object, tensor_data, tensor_objects)


def test_pbw_count_formula():
    # n even generators: C(n + d, d); odd generators are exterior
    assert pbw_count(3, 0, 2) == comb(5, 2)
    assert pbw_count(0, 1, 5) == 2
    assert pbw_count(0, 2, 2) == 4
    assert pbw_count(1, 1, 2) == 1 + 2 + 2


@pytest.mark.parametrize("d,dim", [(1, 4), (2, 10), (3, 20)])
def test_sl2_dims(d, dim):
    U = uea(sl2(), d)
    assert U.dim == dim == pbw_count(3, 0, d)


def test_odd_line_dim():
    assert uea(odd_line(), 2).dim == 2


@pytest.mark.parametrize("d", [1, 2, 3])
def test_heisenberg_and_abelian_dims(d):
    assert uea(heisenberg(), d).dim == comb(3 + d, d)
    assert uea(abelian(2), d).dim == comb(2 + d, d)


def test_super_mixed_dims():
    X = make_object(Super(QQ), [("e", 0), ("o", 1)])
    from liecat.lie import abelian_lie, lie_from_constants
    assert uea(abelian_lie(X), 3).dim == pbw_count(1, 1, 3)
    # [o, o] = e: o^2 = e/2 so PBW monomials still e^a o^b, b <= 1
    L = lie_from_constants(X, [("o", "o", "e", 1)])
    assert uea(L, 3).dim == pbw_count(1, 1, 3)


def test_relations_hold_in_sl2():
    U = uea(sl2(), 2)
    ef = U.mul(U.word(["e"]), U.word(["f"]))
    fe = U.mul(U.word(["f"]), U.word(["e"]))
    diff = {k: ef.get(k, 0) - fe.get(k, 0) for k in set(ef) | set(fe)}
    diff = {k: v for k, v in diff.items() if v}
    assert diff == U.word(["h"])


def test_overflow_is_zero():
    U = uea(line(), 2)
    t = U.word(["t"])
    t2 = U.mul(t, t)
    assert t2 and U.mul(t2, t) == {}
    assert U.word(["t", "t", "t"]) == {}


def test_primitive_generators():
    U = uea(sl2(), 2)
    for g in ("h", "e", "f"):
        x = U.word([g])
        d = U.delta.apply(x)
        expected = U.delta.apply({})  # zero
        td = tensor_data(U.carrier, U.carrier)
        one = U.unit_vector()
        from liecat.monoidal import tensor_vectors
        a = tensor_vectors(U.carrier, U.carrier, x, one)
        b = tensor_vectors(U.carrier, U.carrier, one, x)
        s = {k: a.get(k, 0) + b.get(k, 0) for k in set(a) | set(b)}
        assert d == {k: v for k, v in s.items() if v}
        assert U.antipode.apply(x) == {k: -v for k, v in x.items()}


def test_antipode_on_odd_words_by_hand():
    X = make_object(Super(QQ), [("o", 1), ("p", 1)])
    from liecat.lie import abelian_lie
    U = uea(abelian_lie(X), 2)
    op = U.word(["o", "p"])
    # S(op) = (-1)^2 eps(o, p) p o = -p o = o p
    assert U.antipode.apply(op) == op


@pytest.mark.parametrize("name", ["sl2.json", "heisenberg.json", "odd_1dim_super.json",
                                  "colour_heisenberg.json", "dg_2term.json"])
@pytest.mark.parametrize("d", [1, 2])
def test_hopf_bundled(name, d):
    U = uea(load_lie(name), d)
    rep = check_hopf(U)
    assert rep.passed, rep.failures()
    assert check_unit_nu(U).passed


def test_lp_has_no_uea():
    with pytest.raises(CategoryError):
        uea(load_lie("lp_module.json"), 2)


def test_chain_uea_differential():
    U = uea(load_lie("dg_2term.json"), 3)
    assert U.carrier.differential is not None or U.dim == 1
    assert (U.carrier.d() @ U.carrier.d()).is_zero()
    assert check_monoid(U).passed


def test_free_monoid():
    X = make_object(Vect(QQ), [("a", 0), ("b", 0)])
    A = free_monoid_truncated(X, 3)
    assert A.dim == 1 + 2 + 4 + 8
    assert check_monoid(A).passed


def test_free_monoid_chain_leibniz():
    C = Chain(QQ, -8, 8)
    X = make_object(C, [("x1", 1), ("x0", 0)], Matrix.from_entries(2, 2, QQ, {(1, 0): 1}))
    A = free_monoid_truncated(X, 2)
    assert check_monoid(A).passed
    assert (A.carrier.d() @ A.carrier.d()).is_zero()


def test_broken_unit_monoid():
    from liecat.io import Loader, read_json
    from conftest import corpus
    doc = read_json(corpus("broken_unit_monoid.json"))
    A = Loader(doc).monoid(doc["monoid"], "$.monoid")
    rep = check_monoid(A)
    assert not rep.passed
    assert rep.failures()[0].law == "left-unit"
    assert tuple(rep.failures()[0].witness) == ("1",)


def test_primitives_sl2():
    U = uea(sl2(), 2)
    P = primitives(U)
    assert P.dim == 3 and P.closed.passed
    # P equals the image of nu
    assert P.inclusion.matrix.rank() == U.nu.matrix.rank() == 3
    from liecat.linalg import solve
    assert solve(P.inclusion.matrix, U.nu.matrix) is not None
    assert check_lie(P.lie).passed


def test_primitives_line():
    U = uea(line(), 2)
    P = primitives(U)
    assert P.dim == 1
    assert P.inclusion.source.names == ("t",)


def test_primitives_char_p_extra():
    # t^2 is primitive over F2
    U = uea(line(F2), 2)
    assert primitives(U).dim == 2


@pytest.mark.parametrize("A", ["sl2", "line", "free"])
def test_delta_is_lie_morphism(A):
    if A == "sl2":
        M = uea(sl2(), 2)
    elif A == "line":
        M = uea(line(), 2)
    else:
        M = free_monoid_truncated(make_object(Vect(QQ), [("a", 0), ("b", 0)]), 2)
    D = delta_monoid(M)
    assert check_lie_morphism(D, commutator_lie(M), commutator_lie(tensor_monoid(M, M))).passed


def test_delta_super():
    X = make_object(Super(QQ), [("o", 1), ("e", 0)])
    M = free_monoid_truncated(X, 2)
    D = delta_monoid(M)
    assert check_lie_morphism(D, commutator_lie(M), commutator_lie(tensor_monoid(M, M))).passed


def heis_rep():
    H = heisenberg()
    V = make_object(Vect(QQ), [("v1", 0), ("v2", 0), ("v3", 0)])
    E = endo_monoid(V)
    Hm = hom_object(V, V)
    def E_(i, j):  # v_j -> v_i
        return {Hm.index(j, i): QQ(1)}
    g = Morphism(H.carrier, E.carrier,
                 Matrix(E.dim, 3, QQ, [E_(0, 1), E_(1, 2), E_(0, 2)]), check=False)
    return H, E, g


def test_universal_property_into_matrices():
    H, E, g = heis_rep()
    assert check_lie_morphism(g, H, commutator_lie(E)).passed
    U = uea(H, 2)
    gb = extend_to_monoid(U, g, E)
    assert check_monoid_morphism(gb, U, E).passed
    assert gb @ U.nu == g


def test_extension_guard():
    H, E, g = heis_rep()
    U = uea(H, 1)
    with pytest.raises(TruncationError):
        extend_to_monoid(U, g, E)


def test_bimonoid_without_cocommutativity_flag():
    U = uea(line(), 3)
    assert check_bimonoid(U, cocommutative=False).passed
