"""Concrete symmetric monoidal categories of finite-dimensional graded spaces.

Five instance families share one interface:

* ``vect``   -- plain vector spaces (trivial grading),
* ``super``  -- Z/2-graded spaces with the Koszul sign ``(-1)^{ab}``,
* ``colour`` -- spaces graded by a finite or free abelian group with a
  bicharacter ``eps`` deciding the symmetry sign,
* ``chain``  -- Z-graded chain complexes over a fixed finite degree window,
* ``lp``     -- linear maps ``V -> W`` with the infinitesimal tensor product.

The monoidal structure is strict: ``(X (x) Y) (x) Z`` and ``X (x) (Y (x) Z)``
enumerate the same flattened basis and the unit collapses (``I (x) X`` *is*
``X``).  Every nontrivial coherence sign lives in :func:`symmetry` and in the
Koszul rule of :func:`tensor_morphisms`.

An ``lp`` object ``f: V -> W`` is stored as a two-degree object: ``V`` in
degree 1, ``W`` in degree 0, and ``f`` as its degree -1 structure map.  The
tensor drops the ``V (x) V'`` block, so the structure map of the product is
``[f (x) id, id (x) f']`` with no sign.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple

from .linalg import Field, Matrix, QQ, Vector

Degree = Tuple[int, ...]

TENSOR_SEP = "⊗"


class CategoryError(ValueError):
    """Mixed instances, unsupported structure, or out-of-range degrees."""


# ---------------------------------------------------------------------------
# grading groups


@dataclass(frozen=True)
class GradeGroup:
    """Grading group with a sign bicharacter.

    ``kind`` is one of ``trivial``, ``Z2``, ``Z``, ``Z2xZ2``, ``Zn``.  Finite
    groups may carry an explicit ``table`` mapping pairs of elements to a
    nonzero rational; otherwise the closed form ``(-1)^{<a,b>}`` is used.
    """

    kind: str = "trivial"
    rank: int = 0
    table: Optional[Tuple[Tuple[Tuple[Degree, Degree], object], ...]] = None

    def __post_init__(self):
        ranks = {"trivial": 0, "Z2": 1, "Z": 1, "Z2xZ2": 2}
        if self.kind in ranks:
            object.__setattr__(self, "rank", ranks[self.kind])
        elif self.kind == "Zn":
            if self.rank < 1:
                raise CategoryError("Zn grading needs rank >= 1")
        else:
            raise CategoryError(f"unknown grading group {self.kind!r}")
        if self.table is not None and not self.finite:
            raise CategoryError("bicharacter tables are only supported for finite groups")

    @property
    def finite(self) -> bool:
        return self.kind in ("trivial", "Z2", "Z2xZ2")

    @property
    def zero(self) -> Degree:
        return (0,) * self.rank

    def normalize(self, d) -> Degree:
        if self.kind == "trivial":
            return ()
        if isinstance(d, int):
            d = (d,)
        d = tuple(int(x) for x in d)
        if len(d) != self.rank:
            raise CategoryError(f"degree {d} does not belong to {self.kind}")
        if self.kind in ("Z2", "Z2xZ2"):
            d = tuple(x % 2 for x in d)
        return d

    def add(self, a: Degree, b: Degree) -> Degree:
        return self.normalize(tuple(x + y for x, y in zip(a, b)))

    def neg(self, a: Degree) -> Degree:
        return self.normalize(tuple(-x for x in a))

    def sub(self, a: Degree, b: Degree) -> Degree:
        return self.add(a, self.neg(b))

    def elements(self) -> List[Degree]:
        if not self.finite:
            raise CategoryError(f"{self.kind} is infinite")
        return [tuple(t) for t in itertools.product(range(2), repeat=self.rank)]

    def epsilon(self, a: Degree, b: Degree):
        """Bicharacter value as an int or Fraction (never a float)."""
        if self.table is not None:
            return _table_dict(self.table)[(a, b)]
        return -1 if sum(x * y for x, y in zip(a, b)) % 2 else 1

    def check_bicharacter(self) -> Optional[Tuple[str, tuple]]:
        """First violated bicharacter law on the finite group, or None."""
        els = self.elements()
        eps = self.epsilon
        for a, b, c in itertools.product(els, repeat=3):
            if eps(self.add(a, b), c) != eps(a, c) * eps(b, c):
                return ("left-multiplicative", (a, b, c))
            if eps(a, self.add(b, c)) != eps(a, b) * eps(a, c):
                return ("right-multiplicative", (a, b, c))
        for a, b in itertools.product(els, repeat=2):
            if eps(a, b) * eps(b, a) != 1:
                return ("involutive", (a, b))
        return None


@lru_cache(maxsize=None)
def _table_dict(table):
    return dict(table)


# ---------------------------------------------------------------------------
# category instances


@dataclass(frozen=True)
class Category:
    kind: str
    field: Field = QQ
    grading: GradeGroup = GradeGroup()
    degree_range: Optional[Tuple[int, int]] = None

    def __post_init__(self):
        if self.kind not in ("vect", "super", "colour", "chain", "lp"):
            raise CategoryError(f"unknown category {self.kind!r}")
        if self.kind == "chain" and self.degree_range is None:
            raise CategoryError("chain instance needs a finite degree range")
        if self.kind == "colour" and self.grading.finite and self.grading.kind != "trivial":
            bad = self.grading.check_bicharacter()
            if bad:
                raise CategoryError(f"bicharacter is not {bad[0]} at {bad[1]}")

    @property
    def closed(self) -> bool:
        return self.kind != "lp"

    @property
    def has_differential(self) -> bool:
        return self.kind in ("chain", "lp")

    @property
    def zero_degree(self) -> Degree:
        return self.grading.zero

    def sign(self, a: Degree, b: Degree):
        """Symmetry sign eps(a, b) as a field element."""
        if self.kind in ("vect", "lp"):
            return self.field.one
        return self.field(self.grading.epsilon(a, b))

    def leibniz_sign(self, a: Degree):
        if self.kind == "chain":
            return self.field(-1 if a[0] % 2 else 1)
        return self.field.one

    def check_degree(self, d: Degree):
        if self.kind == "chain":
            lo, hi = self.degree_range
            if not lo <= d[0] <= hi:
                raise CategoryError(f"degree {d[0]} outside chain range [{lo}, {hi}]")
        elif self.kind == "lp" and d[0] not in (0, 1):
            raise CategoryError(f"lp degree must be 0 (W) or 1 (V), got {d[0]}")

    def unit(self) -> "GradedObject":
        return GradedObject(self, ("1",), (self.zero_degree,), None, True)

    def zero_object(self) -> "GradedObject":
        return GradedObject(self, (), (), None)

    @property
    def label(self) -> str:
        return self.kind


def Vect(field: Field = QQ) -> Category:
    return Category("vect", field, GradeGroup("trivial"))


def Super(field: Field = QQ) -> Category:
    return Category("super", field, GradeGroup("Z2"))


def Colour(field: Field = QQ, grading: Optional[GradeGroup] = None) -> Category:
    return Category("colour", field, grading or GradeGroup("Z2xZ2"))


def Chain(field: Field = QQ, lo: int = -4, hi: int = 4) -> Category:
    return Category("chain", field, GradeGroup("Z"), (lo, hi))


def LP(field: Field = QQ) -> Category:
    return Category("lp", field, GradeGroup("Z"))


# ---------------------------------------------------------------------------
# objects and morphisms


@dataclass(frozen=True, eq=False)
class GradedObject:
    """Finite basis of named homogeneous vectors, with an optional differential.

    ``differential`` is a square matrix of degree -1 (chain / lp only).
    Equality and hashing use the category, names, degrees, unit flag and
    the nonzero entries of the differential.
    """

    category: Category
    names: Tuple[str, ...]
    degrees: Tuple[Degree, ...]
    differential: Optional[Matrix] = None
    is_unit: bool = False
    _index: Dict[str, int] = dc_field(default=None, repr=False, compare=False)
    _dsig: tuple = dc_field(default=(), repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_index", {n: i for i, n in enumerate(self.names)})
        if self.differential is not None:
            d = self.differential.materialize()
            object.__setattr__(self, "differential", d)
            sig = tuple((j, tuple(sorted(d.col(j).items()))) for j in range(d.ncols) if d.col(j))
            object.__setattr__(self, "_dsig", sig)
        if len(self._index) != len(self.names):
            seen = set()
            dup = next(n for n in self.names if n in seen or seen.add(n))
            raise CategoryError(f"duplicate basis name {dup!r}")

    @property
    def dim(self) -> int:
        return len(self.names)

    @property
    def field(self) -> Field:
        return self.category.field

    @property
    def key(self):
        return (self.category, self.names, self.degrees, self.is_unit, self._dsig)

    def __eq__(self, other):
        return isinstance(other, GradedObject) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"unknown basis name {name!r}") from None

    @property
    def basis(self) -> List[Tuple[str, Degree]]:
        return list(zip(self.names, self.degrees))

    def dims_by_degree(self) -> Dict[Degree, int]:
        out: Dict[Degree, int] = {}
        for d in self.degrees:
            out[d] = out.get(d, 0) + 1
        return dict(sorted(out.items()))

    def d(self) -> Matrix:
        if self.differential is None:
            return Matrix.zeros(self.dim, self.dim, self.field)
        return self.differential

    def __repr__(self):
        return f"GradedObject({self.category.kind}, {list(self.names)})"


def make_object(category: Category, basis: Sequence[Tuple[str, object]],
                differential: Optional[Matrix] = None) -> GradedObject:
    """Validated constructor: names unique, degrees in range, ``d`` homogeneous with ``d o d = 0``."""
    names = tuple(n for n, _ in basis)
    degrees = tuple(category.grading.normalize(d) for _, d in basis)
    for d in degrees:
        category.check_degree(d)
    if differential is not None:
        if not category.has_differential:
            raise CategoryError(f"{category.kind} objects carry no differential")
        if differential.shape != (len(names), len(names)):
            raise CategoryError("differential has the wrong shape")
    X = GradedObject(category, names, degrees, differential)
    if differential is not None:
        minus1 = category.grading.normalize((-1,))
        bad = _inhomogeneous_entry(X, X, differential, minus1)
        if bad is not None:
            raise CategoryError(f"differential is not of degree -1 at {X.names[bad[1]]} -> {X.names[bad[0]]}")
        dd = differential @ differential
        j = dd.first_nonzero_column()
        if j is not None:
            raise CategoryError(f"d o d != 0 on {X.names[j]}")
    return X


def _inhomogeneous_entry(S: GradedObject, T: GradedObject, M: Matrix, degree: Degree):
    G = S.category.grading
    for j in range(M.ncols):
        want = G.add(S.degrees[j], degree)
        for i in M.col(j):
            if T.degrees[i] != want:
                return (i, j)
    return None


def _check_same(*objs: GradedObject):
    cats = {o.category for o in objs}
    if len(cats) > 1:
        raise CategoryError("objects belong to different category instances")


class Morphism:
    """Homogeneous linear map between graded objects.

    ``f @ g`` is composition ``f o g``.  Construction validates that every
    nonzero entry respects ``degree`` unless ``check=False``.
    """

    __slots__ = ("source", "target", "matrix", "degree")

    def __init__(self, source: GradedObject, target: GradedObject, matrix: Matrix,
                 degree: Optional[Degree] = None, check: bool = True):
        _check_same(source, target)
        if matrix.shape != (target.dim, source.dim):
            raise CategoryError(f"matrix shape {matrix.shape} does not match {target.dim}x{source.dim}")
        if matrix.field != source.field:
            raise CategoryError("matrix field differs from the category field")
        self.source = source
        self.target = target
        self.matrix = matrix
        self.degree = source.category.zero_degree if degree is None else source.category.grading.normalize(degree)
        if check:
            bad = self.inhomogeneous_entry()
            if bad is not None:
                i, j = bad
                raise CategoryError(
                    f"entry {source.names[j]} -> {target.names[i]} breaks degree {self.degree}")

    @property
    def category(self) -> Category:
        return self.source.category

    @property
    def field(self) -> Field:
        return self.source.field

    def inhomogeneous_entry(self):
        return _inhomogeneous_entry(self.source, self.target, self.matrix, self.degree)

    def col(self, j: int) -> Vector:
        return self.matrix.col(j)

    def apply(self, vec: Vector) -> Vector:
        return self.matrix.apply(vec)

    def __call__(self, name: str) -> Dict[str, object]:
        """Image of a named basis vector as ``{target name: coefficient}``."""
        return {self.target.names[i]: v for i, v in self.col(self.source.index(name)).items()}

    def __matmul__(self, other: "Morphism") -> "Morphism":
        if other.target != self.source:
            raise CategoryError(f"cannot compose: {other.target!r} != {self.source!r}")
        G = self.category.grading
        return Morphism(other.source, self.target, self.matrix @ other.matrix,
                        G.add(self.degree, other.degree), check=False)

    def _like(self, other: "Morphism"):
        if other.source != self.source or other.target != self.target:
            raise CategoryError("morphisms have different source/target")

    def __add__(self, other: "Morphism") -> "Morphism":
        self._like(other)
        return Morphism(self.source, self.target, self.matrix + other.matrix, self.degree, check=False)

    def __sub__(self, other: "Morphism") -> "Morphism":
        self._like(other)
        return Morphism(self.source, self.target, self.matrix - other.matrix, self.degree, check=False)

    def __neg__(self) -> "Morphism":
        return Morphism(self.source, self.target, -self.matrix, self.degree, check=False)

    def scale(self, c) -> "Morphism":
        return Morphism(self.source, self.target, self.matrix.scale(c), self.degree, check=False)

    __rmul__ = scale

    def __eq__(self, other):
        if not isinstance(other, Morphism):
            return NotImplemented
        return (self.source == other.source and self.target == other.target
                and self.matrix == other.matrix)

    __hash__ = None

    def is_zero(self) -> bool:
        return self.matrix.is_zero()

    def materialize(self) -> "Morphism":
        return Morphism(self.source, self.target, self.matrix.materialize(), self.degree, check=False)

    def __repr__(self):
        return f"Morphism({self.source.dim} -> {self.target.dim}, degree={self.degree})"


def morphism_from_images(source: GradedObject, target: GradedObject,
                         images: Dict[str, Dict[str, object]], degree=None,
                         check: bool = True) -> Morphism:
    """Build a morphism from ``{source name: {target name: scalar}}``; omitted images are zero."""
    F = source.field
    entries = {}
    for s, img in images.items():
        j = source.index(s)
        for t, v in img.items():
            i = target.index(t)
            entries[(i, j)] = entries.get((i, j), 0) + F(v)
    M = Matrix.from_entries(target.dim, source.dim, F, entries)
    return Morphism(source, target, M, degree, check=check)


def identity(X: GradedObject) -> Morphism:
    return Morphism(X, X, Matrix.identity(X.dim, X.field), check=False)


def zero_morphism(X: GradedObject, Y: GradedObject, degree=None) -> Morphism:
    _check_same(X, Y)
    return Morphism(X, Y, Matrix.zeros(Y.dim, X.dim, X.field), degree, check=False)


def differential(X: GradedObject) -> Morphism:
    return Morphism(X, X, X.d(), X.category.grading.normalize((-1,)) if X.category.has_differential
                    else None, check=False)


# ---------------------------------------------------------------------------
# tensor product


class TensorData(NamedTuple):
    obj: GradedObject
    pairs: Dict[Tuple[int, int], int]
    split: List[Tuple[int, int]]


@lru_cache(maxsize=4096)
def _tensor(X: GradedObject, Y: GradedObject) -> TensorData:
    _check_same(X, Y)
    C = X.category
    if X.is_unit:
        pairs = {(0, j): j for j in range(Y.dim)}
        return TensorData(Y, pairs, [(0, j) for j in range(Y.dim)])
    if Y.is_unit:
        pairs = {(i, 0): i for i in range(X.dim)}
        return TensorData(X, pairs, [(i, 0) for i in range(X.dim)])
    G = C.grading
    names, degrees, split = [], [], []
    for i in range(X.dim):
        for j in range(Y.dim):
            deg = G.add(X.degrees[i], Y.degrees[j])
            if C.kind == "lp" and deg[0] >= 2:
                continue
            C.check_degree(deg)
            names.append(f"{X.names[i]}{TENSOR_SEP}{Y.names[j]}")
            degrees.append(deg)
            split.append((i, j))
    pairs = {p: k for k, p in enumerate(split)}
    d = None
    if C.has_differential and (X.differential is not None or Y.differential is not None):
        dX, dY = X.d(), Y.d()

        def dcol(k):
            i, j = split[k]
            out = {}
            for i2, v in dX.col(i).items():
                out[pairs[(i2, j)]] = out.get(pairs[(i2, j)], 0) + v
            s = C.leibniz_sign(X.degrees[i])
            for j2, v in dY.col(j).items():
                out[pairs[(i, j2)]] = out.get(pairs[(i, j2)], 0) + s * v
            return out

        d = Matrix.lazy(len(split), len(split), C.field, dcol).materialize()
    return TensorData(GradedObject(C, tuple(names), tuple(degrees), d), pairs, split)


def tensor_objects(X: GradedObject, Y: GradedObject) -> GradedObject:
    """``X (x) Y``: left-major pairs, degrees add, Leibniz differential."""
    return _tensor(X, Y).obj


def tensor_data(X: GradedObject, Y: GradedObject) -> TensorData:
    return _tensor(X, Y)


def tensor_power(X: GradedObject, k: int) -> GradedObject:
    out = X.category.unit()
    for _ in range(k):
        out = tensor_objects(out, X)
    return out


def tensor_vectors(X: GradedObject, Y: GradedObject, u: Vector, v: Vector) -> Vector:
    """The vector ``u (x) v`` in ``X (x) Y`` (no sign: both are elements, not maps)."""
    pairs = _tensor(X, Y).pairs
    out: Vector = {}
    for i, a in u.items():
        for j, b in v.items():
            k = pairs.get((i, j))
            if k is None:
                continue
            out[k] = out.get(k, 0) + a * b
    return out


def tensor_morphisms(f: Morphism, g: Morphism) -> Morphism:
    """``f (x) g`` with the Koszul rule ``(f (x) g)(x (x) y) = eps(|g|,|x|) f(x) (x) g(y)``."""
    _check_same(f.source, g.source)
    C = f.category
    S = _tensor(f.source, g.source)
    T = _tensor(f.target, g.target)
    gdeg = g.degree
    sdeg = f.source.degrees

    def colfunc(k):
        j1, j2 = S.split[k]
        s = C.sign(gdeg, sdeg[j1])
        out = {}
        for i1, a in f.col(j1).items():
            for i2, b in g.col(j2).items():
                t = T.pairs.get((i1, i2))
                if t is None:
                    raise CategoryError("tensor of morphisms leaves the lp tensor object")
                out[t] = out.get(t, 0) + s * a * b
        return out

    M = Matrix.lazy(T.obj.dim, S.obj.dim, C.field, colfunc)
    return Morphism(S.obj, T.obj, M, C.grading.add(f.degree, g.degree), check=False)


def tensor_many(*fs: Morphism) -> Morphism:
    out = fs[0]
    for f in fs[1:]:
        out = tensor_morphisms(out, f)
    return out


def symmetry(X: GradedObject, Y: GradedObject) -> Morphism:
    """``sigma: X (x) Y -> Y (x) X``, ``x (x) y -> eps(|x|,|y|) y (x) x``."""
    C = X.category
    S = _tensor(X, Y)
    T = _tensor(Y, X)

    def colfunc(k):
        i, j = S.split[k]
        return {T.pairs[(j, i)]: C.sign(X.degrees[i], Y.degrees[j])}

    return Morphism(S.obj, T.obj, Matrix.lazy(T.obj.dim, S.obj.dim, C.field, colfunc), check=False)


def interchange(A: GradedObject, B: GradedObject, C: GradedObject, D: GradedObject) -> Morphism:
    """Middle interchange ``(A (x) B) (x) (C (x) D) -> (A (x) C) (x) (B (x) D)``, built from sigma."""
    return tensor_many(identity(A), symmetry(B, C), identity(D))


def cyclic(X: GradedObject) -> Morphism:
    """``sigma o alpha`` on ``X (x) X (x) X``: ``x (x) y (x) z -> eps(x, y+z) y (x) z (x) x``."""
    return symmetry(X, tensor_objects(X, X))


def tensor_fold(factors: Sequence[GradedObject]) -> GradedObject:
    out = factors[0]
    for Y in factors[1:]:
        out = tensor_objects(out, Y)
    return out


def split_index(factors: Sequence[GradedObject], k: int) -> Tuple[int, ...]:
    """Basis indices in each factor of the flattened basis vector ``k`` of ``tensor_fold(factors)``."""
    if len(factors) == 1:
        return (k,)
    td = _tensor(tensor_fold(factors[:-1]), factors[-1])
    i, j = td.split[k]
    return split_index(factors[:-1], i) + (j,)


def factor_names(factors: Sequence[GradedObject], k: int) -> Tuple[str, ...]:
    return tuple(X.names[i] for X, i in zip(factors, split_index(factors, k)))


# ---------------------------------------------------------------------------
# direct sums


class DirectSum(NamedTuple):
    obj: GradedObject
    i1: Morphism
    i2: Morphism
    p1: Morphism
    p2: Morphism


def direct_sum(X: GradedObject, Y: GradedObject) -> DirectSum:
    """Biproduct ``X (+) Y``; clashing names are prefixed ``1:``/``2:``."""
    _check_same(X, Y)
    C = X.category
    F = C.field
    if set(X.names) & set(Y.names):
        names = tuple(f"1:{n}" for n in X.names) + tuple(f"2:{n}" for n in Y.names)
    else:
        names = X.names + Y.names
    n, m = X.dim, Y.dim
    d = None
    if X.differential is not None or Y.differential is not None:
        cols = [{i: v for i, v in X.d().col(j).items()} for j in range(n)]
        cols += [{n + i: v for i, v in Y.d().col(j).items()} for j in range(m)]
        d = Matrix(n + m, n + m, F, cols)
    S = GradedObject(C, names, X.degrees + Y.degrees, d)
    i1 = Matrix(n + m, n, F, [{j: F.one} for j in range(n)])
    i2 = Matrix(n + m, m, F, [{n + j: F.one} for j in range(m)])
    p1 = Matrix(n, n + m, F, [{j: F.one} for j in range(n)] + [{} for _ in range(m)])
    p2 = Matrix(m, n + m, F, [{} for _ in range(n)] + [{j: F.one} for j in range(m)])
    return DirectSum(S, Morphism(X, S, i1, check=False), Morphism(Y, S, i2, check=False),
                     Morphism(S, X, p1, check=False), Morphism(S, Y, p2, check=False))


def pair_morphism(f: Morphism, g: Morphism, target: DirectSum) -> Morphism:
    """``<f, g>: W -> X (+) Y``."""
    return target.i1 @ f + target.i2 @ g


def copair_morphism(h: Morphism, k: Morphism, source: DirectSum) -> Morphism:
    """``[h, k]: X (+) Y -> Z``."""
    return h @ source.p1 + k @ source.p2


# ---------------------------------------------------------------------------
# closed structure


class HomObject(NamedTuple):
    """Internal hom ``Y^X`` with its evaluation ``ev: Y^X (x) X -> Y``."""

    obj: GradedObject
    source: GradedObject
    target: GradedObject
    ev: Morphism

    def index(self, x: int, y: int) -> int:
        """Basis index of the elementary map sending basis ``x`` to basis ``y``."""
        return x * self.target.dim + y

    def element(self, f: Morphism) -> Vector:
        """Coordinates of a morphism ``source -> target`` inside ``obj``."""
        out = {}
        for x in range(self.source.dim):
            for y, v in f.col(x).items():
                out[self.index(x, y)] = v
        return out

    def to_morphism(self, vec: Vector, degree=None) -> Morphism:
        entries = {}
        m = self.target.dim
        for k, v in vec.items():
            x, y = divmod(k, m)
            entries[(y, x)] = v
        M = Matrix.from_entries(self.target.dim, self.source.dim, self.obj.field, entries)
        return Morphism(self.source, self.target, M, degree, check=False)


@lru_cache(maxsize=1024)
def hom_object(X: GradedObject, Y: GradedObject) -> HomObject:
    """Internal hom: degree-``g`` part is the degree-``g`` linear maps ``X -> Y``.

    Basis: elementary maps ``(x|->y)``, source-major.  The chain instance
    carries ``D f = d f - (-1)^{|f|} f d``.  Not available for ``lp``.
    """
    _check_same(X, Y)
    C = X.category
    if not C.closed:
        raise CategoryError("the lp instance has no internal hom (closed structure unsupported)")
    G = C.grading
    F = C.field
    names, degrees = [], []
    for i in range(X.dim):
        for j in range(Y.dim):
            deg = G.sub(Y.degrees[j], X.degrees[i])
            C.check_degree(deg)
            names.append(f"({X.names[i]}↦{Y.names[j]})")
            degrees.append(deg)
    m = Y.dim
    d = None
    if C.kind == "chain" and (X.differential is not None or Y.differential is not None):
        dX, dY = X.d(), Y.d()
        dXT = dX.transpose()

        def dcol(k):
            x, y = divmod(k, m)
            out = {}
            for y2, v in dY.col(y).items():      # d o E_{y,x}
                out[x * m + y2] = out.get(x * m + y2, 0) + v
            s = C.leibniz_sign(degrees[k])
            for x2, v in dXT.col(x).items():     # E_{y,x} o d
                out[x2 * m + y] = out.get(x2 * m + y, 0) - s * v
            return out

        d = Matrix.lazy(len(names), len(names), F, dcol).materialize()
    H = GradedObject(C, tuple(names), tuple(degrees), d)
    td = tensor_data(H, X)

    def evcol(k):
        h, x = td.split[k]
        xs, y = divmod(h, m)
        return {y: F.one} if xs == x else {}

    ev = Morphism(td.obj, Y, Matrix.lazy(Y.dim, td.obj.dim, F, evcol), check=False)
    return HomObject(H, X, Y, ev)


def curry(theta: Morphism, left: GradedObject, right: GradedObject) -> Morphism:
    """``theta: left (x) right -> Y`` to ``left -> Y^right``."""
    H = hom_object(right, theta.target)
    td = tensor_data(left, right)
    if td.obj != theta.source:
        raise CategoryError("theta source is not left (x) right")
    m = theta.target.dim

    def colfunc(b):
        out = {}
        for x in range(right.dim):
            for y, v in theta.col(td.pairs[(b, x)]).items():
                out[x * m + y] = v
        return out

    M = Matrix.lazy(H.obj.dim, left.dim, left.field, colfunc)
    return Morphism(left, H.obj, M, theta.degree, check=False)


def uncurry(theta_bar: Morphism, right: GradedObject, target: GradedObject) -> Morphism:
    H = hom_object(right, target)
    return H.ev @ tensor_morphisms(theta_bar, identity(right))


# ---------------------------------------------------------------------------
# checks shared by the structure modules


def differential_mismatch(f: Morphism) -> Optional[int]:
    """First source basis index where ``d f != (-1)^{|f|} f d``, or None.

    Always None outside the chain/lp instances.
    """
    C = f.category
    if not C.has_differential:
        return None
    if f.source.differential is None and f.target.differential is None:
        return None
    lhs = f.target.d() @ f.matrix
    rhs = (f.matrix @ f.source.d()).scale(C.leibniz_sign(f.degree))
    return lhs.first_mismatch(rhs)


def graded_kernel(f: Morphism, prefix: str = "k") -> Morphism:
    """Inclusion ``k: K >-> source`` of the kernel of a homogeneous morphism.

    The kernel is computed degree by degree so ``K`` has a homogeneous basis.
    Kernel vectors that are standard basis vectors keep their name; the rest
    are named ``<prefix><i>``.  ``K`` inherits the differential when ``f``
    is a chain map.
    """
    from .linalg import kernel_basis, solve as _solve
    S = f.source
    F = S.field
    by_degree: Dict[Degree, List[int]] = {}
    for j, d in enumerate(S.degrees):
        by_degree.setdefault(d, []).append(j)
    vecs, degs = [], []
    for d in sorted(by_degree):
        idx = by_degree[d]
        sub = f.matrix.restrict_columns(idx)
        for v in kernel_basis(sub):
            vecs.append({idx[i]: x for i, x in enumerate(v) if x != 0})
            degs.append(d)
    order = sorted(range(len(vecs)), key=lambda t: min(vecs[t]))
    vecs = [vecs[t] for t in order]
    degs = [degs[t] for t in order]
    names = []
    for t, v in enumerate(vecs):
        if len(v) == 1 and next(iter(v.values())) == F.one:
            names.append(S.names[next(iter(v))])
        else:
            names.append(f"{prefix}{t}")
    if len(set(names)) != len(names):
        names = [f"{prefix}{t}" for t in range(len(vecs))]
    kmat = Matrix(S.dim, len(vecs), F, vecs)
    d = None
    if S.category.has_differential and S.differential is not None:
        d = _solve(kmat, S.d() @ kmat)
        if d is None:
            raise CategoryError("kernel is not stable under the differential")
    K = GradedObject(S.category, tuple(names), tuple(degs), d)
    return Morphism(K, S, kmat, check=False)
