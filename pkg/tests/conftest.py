import json
import sys
import os
import random

import pytest

from liecat import QQ, GF, Vect, Super, Chain, make_object, lie_from_constants, abelian_lie
from liecat.io import CORPUS_DIR, Loader, read_json
from liecat.linalg import Matrix
from liecat.monoidal import Morphism, morphism_from_images, tensor_objects
from liecat.enveloping import MonoidObject
from liecat.points import Point

F2 = GF(2)


def corpus(name):
    return os.path.join(CORPUS_DIR, name)


def load_lie(name, field=None):
    doc = read_json(corpus(name))
    loader = Loader(doc, field)
    if "algebra" in doc:
        return loader.lie(doc, "$")
    return loader.lie(doc["lie"], "$.lie")


def sl2(F=QQ):
    X = make_object(Vect(F), [("h", 0), ("e", 0), ("f", 0)])
    return lie_from_constants(X, [
        ("h", "e", "e", 2), ("e", "h", "e", -2), ("h", "f", "f", -2), ("f", "h", "f", 2),
        ("e", "f", "h", 1), ("f", "e", "h", -1)])


def heisenberg(F=QQ):
    X = make_object(Vect(F), [("x", 0), ("y", 0), ("z", 0)])
    return lie_from_constants(X, [("x", "y", "z", 1), ("y", "x", "z", -1)])


def line(F=QQ, name="t"):
    return abelian_lie(make_object(Vect(F), [(name, 0)]))


def abelian(n, F=QQ, cat=None, prefix="a", degrees=None):
    cat = cat or Vect(F)
    degrees = degrees or [0] * n
    return abelian_lie(make_object(cat, [(f"{prefix}{i}", degrees[i]) for i in range(n)]))


def nonabelian2(F=QQ):
    X = make_object(Vect(F), [("t1", 0), ("t2", 0)])
    return lie_from_constants(X, [("t2", "t1", "t1", 1), ("t1", "t2", "t1", -1)])


def odd_line(F=QQ):
    return abelian_lie(make_object(Super(F), [("t", 1)]))


def semidirect_point(K, ops, F=QQ):
    """Point ``span{t} |x K`` where ``t`` acts on ``K`` by the matrix ``ops`` (column lists)."""
    from liecat.actions import EquivariantLieObject
    from liecat.points import action_to_point
    B = line(F)
    Kc = K.carrier
    src = tensor_objects(B.carrier, Kc)
    images = {f"t⊗{Kc.names[j]}": {Kc.names[i]: v for i, v in enumerate(col) if v}
              for j, col in enumerate(ops)}
    theta = morphism_from_images(src, Kc, images)
    return action_to_point(EquivariantLieObject(B, K, theta)).point


def algebra(names, table, F=F2, aug=True):
    """Commutative unital algebra from ``table[(a, b)] = c`` with first name as unit."""
    X = make_object(Vect(F), [(n, 0) for n in names])
    XX = tensor_objects(X, X)
    I = X.category.unit()
    imgs = {}
    one = names[0]
    for n in names:
        imgs[f"{one}⊗{n}"] = {n: 1}
        imgs[f"{n}⊗{one}"] = {n: 1}
    for (a, b), c in table.items():
        imgs[f"{a}⊗{b}"] = {c: 1}
    m = morphism_from_images(XX, X, imgs)
    u = morphism_from_images(I, X, {"1": {one: 1}})
    A = MonoidObject(X, m, u)
    A.augmentation = morphism_from_images(X, I, {one: {"1": 1}}) if aug else None
    return A


@pytest.fixture
def rng():
    return random.Random(1234)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
