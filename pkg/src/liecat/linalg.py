"""Exact linear algebra over the rationals and prime fields.

Matrices are stored column-sparse: column ``j`` is a dict ``{row: value}``
holding the image of the ``j``-th basis vector.  Columns may also be produced
on demand by a function (lazy matrices), which keeps composites such as
``(m (x) m) o i o (D (x) D)`` cheap when only a few columns are inspected.

Entries over Q are :class:`fractions.Fraction`; entries over F_p are plain
``int`` in ``[0, p)``.  No floating point is used anywhere.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

Vector = Dict[int, object]


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


@dataclass(frozen=True)
class Field:
    """A ground field: ``Field(0)`` is Q, ``Field(p)`` is F_p (p prime, p <= 251)."""

    char: int = 0

    def __post_init__(self):
        if self.char != 0 and not (_is_prime(self.char) and self.char <= 251):
            raise ValueError(f"unsupported field characteristic {self.char}")

    @property
    def name(self) -> str:
        return "Q" if self.char == 0 else f"F{self.char}"

    def __repr__(self):
        return f"Field({self.name})"

    @property
    def zero(self):
        return Fraction(0) if self.char == 0 else 0

    @property
    def one(self):
        return Fraction(1) if self.char == 0 else 1

    def __call__(self, x):
        """Coerce ``x`` (int, Fraction, or a ``"p/q"`` string) into the field."""
        if isinstance(x, str):
            x = Fraction(x.strip())
        if isinstance(x, bool) or not isinstance(x, (int, Fraction)):
            raise TypeError(f"cannot coerce {x!r} into {self.name}")
        if self.char == 0:
            return Fraction(x)
        if isinstance(x, Fraction):
            if x.denominator % self.char == 0:
                raise ZeroDivisionError(f"{x} has no image in {self.name}")
            return x.numerator * pow(x.denominator, -1, self.char) % self.char
        return x % self.char

    def norm(self, x):
        return x if self.char == 0 else x % self.char

    def inv(self, x):
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.char == 0:
            return 1 / Fraction(x)
        return pow(x, -1, self.char)

    def elements(self):
        if self.char == 0:
            raise ValueError("Q is infinite")
        return range(self.char)

    def to_json(self, x):
        """Serialize a scalar without floats: int when integral, else ``"p/q"``."""
        if self.char == 0:
            x = Fraction(x)
            return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
        return int(x)


QQ = Field(0)


def GF(p: int) -> Field:
    return Field(p)


def parse_field(spec: str) -> Field:
    """Parse ``"Q"``, ``"F2"``, ``"F<p>"`` or ``"Fp:<p>"``."""
    s = spec.strip()
    if s.upper() == "Q":
        return QQ
    if s.startswith("Fp:"):
        return Field(int(s[3:]))
    if s[:1] in "Ff" and s[1:].isdigit():
        return Field(int(s[1:]))
    raise ValueError(f"unknown field {spec!r}")


class Matrix:
    """Column-sparse matrix over a :class:`Field`.

    Treat instances as immutable.  ``colfunc`` makes a lazy matrix whose
    columns are computed (once) on demand.
    """

    __slots__ = ("nrows", "ncols", "field", "_cols", "_colfunc")

    def __init__(self, nrows: int, ncols: int, field: Field,
                 cols: Optional[Sequence[Vector]] = None,
                 colfunc: Optional[Callable[[int], Vector]] = None):
        self.nrows = nrows
        self.ncols = ncols
        self.field = field
        if cols is not None:
            if len(cols) != ncols:
                raise ValueError("column count mismatch")
            self._cols = {j: _clean(c, field) for j, c in enumerate(cols)}
            self._colfunc = None
        else:
            self._cols = {}
            self._colfunc = colfunc

    # construction -------------------------------------------------------
    @classmethod
    def zeros(cls, nrows, ncols, field):
        return cls(nrows, ncols, field, [{} for _ in range(ncols)])

    @classmethod
    def identity(cls, n, field):
        return cls(n, n, field, [{j: field.one} for j in range(n)])

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], field: Field, ncols: Optional[int] = None):
        nrows = len(rows)
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        cols: List[Vector] = [{} for _ in range(ncols)]
        for i, row in enumerate(rows):
            if len(row) != ncols:
                raise ValueError("ragged rows")
            for j, v in enumerate(row):
                v = field(v) if not _is_field_elem(v, field) else v
                if v != 0:
                    cols[j][i] = v
        return cls(nrows, ncols, field, cols)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], field: Field, nrows: int):
        cols = [{i: field(v) for i, v in enumerate(c) if v != 0} for c in columns]
        return cls(nrows, len(columns), field, cols)

    @classmethod
    def from_entries(cls, nrows, ncols, field, entries: Dict[Tuple[int, int], object]):
        cols: List[Vector] = [{} for _ in range(ncols)]
        for (i, j), v in entries.items():
            cols[j][i] = field.norm(cols[j].get(i, field.zero) + v)
        return cls(nrows, ncols, field, cols)

    @classmethod
    def lazy(cls, nrows, ncols, field, colfunc):
        return cls(nrows, ncols, field, colfunc=colfunc)

    # access ---------------------------------------------------------------
    def col(self, j: int) -> Vector:
        c = self._cols.get(j)
        if c is None:
            if self._colfunc is None or not 0 <= j < self.ncols:
                raise IndexError(j)
            c = _clean(self._colfunc(j), self.field)
            self._cols[j] = c
        return c

    def entry(self, i: int, j: int):
        return self.col(j).get(i, self.field.zero)

    def materialize(self) -> "Matrix":
        if self._colfunc is None:
            return self
        return Matrix(self.nrows, self.ncols, self.field, [self.col(j) for j in range(self.ncols)])

    def rows(self) -> List[List]:
        """Dense row-major copy."""
        z = self.field.zero
        out = [[z] * self.ncols for _ in range(self.nrows)]
        for j in range(self.ncols):
            for i, v in self.col(j).items():
                out[i][j] = v
        return out

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def nnz(self) -> int:
        return sum(len(self.col(j)) for j in range(self.ncols))

    # arithmetic -------------------------------------------------------------
    def apply(self, vec: Vector) -> Vector:
        """Image of a sparse vector."""
        F = self.field
        out: Vector = {}
        for j, a in vec.items():
            for i, v in self.col(j).items():
                out[i] = out.get(i, 0) + a * v
        return _clean(out, F)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        _same_field(self, other)
        return Matrix.lazy(self.nrows, other.ncols, self.field,
                           lambda j: self.apply(other.col(j)))

    def __add__(self, other: "Matrix") -> "Matrix":
        _same_shape(self, other)
        return Matrix.lazy(self.nrows, self.ncols, self.field,
                           lambda j: _vadd(self.col(j), other.col(j)))

    def __sub__(self, other: "Matrix") -> "Matrix":
        _same_shape(self, other)
        return Matrix.lazy(self.nrows, self.ncols, self.field,
                           lambda j: _vadd(self.col(j), {i: -v for i, v in other.col(j).items()}))

    def __neg__(self) -> "Matrix":
        return self.scale(-1)

    def scale(self, c) -> "Matrix":
        c = self.field(c) if not _is_field_elem(c, self.field) else c
        return Matrix.lazy(self.nrows, self.ncols, self.field,
                           lambda j: {i: v * c for i, v in self.col(j).items()})

    __rmul__ = scale

    def transpose(self) -> "Matrix":
        entries = {}
        for j in range(self.ncols):
            for i, v in self.col(j).items():
                entries[(j, i)] = v
        return Matrix.from_entries(self.ncols, self.nrows, self.field, entries)

    @property
    def T(self):
        return self.transpose()

    def kron(self, other: "Matrix") -> "Matrix":
        """Kronecker product with row-major (left-major) index order."""
        _same_field(self, other)
        n2, m2 = other.nrows, other.ncols

        def colfunc(j):
            j1, j2 = divmod(j, m2)
            out = {}
            for i1, a in self.col(j1).items():
                for i2, b in other.col(j2).items():
                    out[i1 * n2 + i2] = a * b
            return out

        return Matrix.lazy(self.nrows * n2, self.ncols * m2, self.field, colfunc)

    def restrict_columns(self, idx: Sequence[int]) -> "Matrix":
        return Matrix(self.nrows, len(idx), self.field, [self.col(j) for j in idx])

    def hstack(self, other: "Matrix") -> "Matrix":
        if self.nrows != other.nrows:
            raise ValueError("row count mismatch")
        return Matrix(self.nrows, self.ncols + other.ncols, self.field,
                      [self.col(j) for j in range(self.ncols)] + [other.col(j) for j in range(other.ncols)])

    # predicates -------------------------------------------------------------
    def is_zero(self, columns: Optional[Iterable[int]] = None) -> bool:
        return self.first_nonzero_column(columns) is None

    def first_nonzero_column(self, columns: Optional[Iterable[int]] = None) -> Optional[int]:
        cols = range(self.ncols) if columns is None else columns
        for j in cols:
            if self.col(j):
                return j
        return None

    def first_mismatch(self, other: "Matrix", columns: Optional[Iterable[int]] = None) -> Optional[int]:
        _same_shape(self, other)
        cols = range(self.ncols) if columns is None else columns
        for j in cols:
            if self.col(j) != other.col(j):
                return j
        return None

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (self.shape == other.shape and self.field == other.field
                and self.first_mismatch(other) is None)

    __hash__ = None

    def rank(self) -> int:
        return len(rref(self)[1])

    def __repr__(self):
        return f"Matrix({self.nrows}x{self.ncols} over {self.field.name})"


def _is_field_elem(v, field: Field) -> bool:
    if field.char == 0:
        return isinstance(v, Fraction)
    return isinstance(v, int) and not isinstance(v, bool) and 0 <= v < field.char


def _clean(vec: Vector, field: Field) -> Vector:
    if field.char == 0:
        return {i: (v if isinstance(v, Fraction) else Fraction(v)) for i, v in vec.items() if v != 0}
    p = field.char
    out = {}
    for i, v in vec.items():
        v %= p
        if v:
            out[i] = v
    return out


def _vadd(a: Vector, b: Vector) -> Vector:
    out = dict(a)
    for i, v in b.items():
        out[i] = out.get(i, 0) + v
    return out


def _same_shape(a: Matrix, b: Matrix):
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch {a.shape} vs {b.shape}")
    _same_field(a, b)


def _same_field(a: Matrix, b: Matrix):
    if a.field != b.field:
        raise ValueError(f"field mismatch {a.field.name} vs {b.field.name}")


def rref(M: Matrix, column_order: Optional[Sequence[int]] = None) -> Tuple[Matrix, List[int]]:
    """Reduced row-echelon form.

    Pivots are chosen leftmost column first, then topmost row with a nonzero
    entry.  ``column_order`` reorders the column priority (the returned matrix
    keeps the original column indexing and pivot indices refer to it).

    Returns ``(R, pivots)`` where ``pivots`` lists pivot columns in the order
    they were found (strictly increasing when ``column_order`` is None).
    """
    F = M.field
    rows = M.rows()
    nrows, ncols = M.nrows, M.ncols
    order = list(range(ncols)) if column_order is None else list(column_order)
    pivots: List[int] = []
    r = 0
    for c in order:
        if r >= nrows:
            break
        piv = next((i for i in range(r, nrows) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = F.inv(rows[r][c])
        if inv != 1:
            rows[r] = [F.norm(v * inv) for v in rows[r]]
        pr = rows[r]
        nz = [k for k in range(ncols) if pr[k] != 0]
        for i in range(nrows):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                ri = rows[i]
                for k in nz:
                    ri[k] = F.norm(ri[k] - f * pr[k])
        pivots.append(c)
        r += 1
    return Matrix.from_rows(rows, F, ncols), pivots


def kernel_basis(M: Matrix) -> List[List]:
    """Basis of ``{v : M v = 0}`` as dense column vectors (one per free column)."""
    F = M.field
    R, pivots = rref(M)
    rows = R.rows()
    pivset = set(pivots)
    basis = []
    for free in range(M.ncols):
        if free in pivset:
            continue
        v = [F.zero] * M.ncols
        v[free] = F.one
        for r, pc in enumerate(pivots):
            v[pc] = F.norm(-rows[r][free])
        basis.append(v)
    return basis


def image_basis(M: Matrix) -> List[List]:
    """Basis of the column space: the pivot columns of ``M``."""
    _, pivots = rref(M)
    z = M.field.zero
    out = []
    for j in pivots:
        c = M.col(j)
        out.append([c.get(i, z) for i in range(M.nrows)])
    return out


def quotient_basis(ambient: int, subspace: Sequence[Sequence], field: Field,
                   column_order: Optional[Sequence[int]] = None) -> Tuple[List[int], Matrix]:
    """Quotient of ``field**ambient`` by the span of ``subspace``.

    Returns ``(reps, q)``: ``reps`` are the ambient indices whose unit vectors
    map to a basis of the quotient (in increasing order) and ``q`` is the
    surjective projection, ``len(reps) x ambient``, with ``q v = 0`` for every
    ``v`` in the span.  ``column_order`` gives pivot priority; coordinates
    taken as pivots first are the ones eliminated.
    """
    F = field
    if subspace:
        S = Matrix.from_rows([list(v) for v in subspace], F, ambient)
        R, pivots = rref(S, column_order)
        rrows = R.rows()
    else:
        pivots, rrows = [], []
    pivset = set(pivots)
    reps = [j for j in range(ambient) if j not in pivset]
    pos = {j: k for k, j in enumerate(reps)}
    cols: List[Vector] = [{} for _ in range(ambient)]
    for j in reps:
        cols[j][pos[j]] = F.one
    for r, pc in enumerate(pivots):
        row = rrows[r]
        cols[pc] = {pos[k]: F.norm(-row[k]) for k in reps if row[k] != 0}
    return reps, Matrix(len(reps), ambient, F, cols)


def solve(A: Matrix, B: Matrix) -> Optional[Matrix]:
    """A solution ``X`` of ``A X = B`` (free variables set to zero), or None."""
    F = A.field
    if A.nrows != B.nrows:
        raise ValueError("row count mismatch")
    aug = A.hstack(B.materialize())
    R, pivots = rref(aug, list(range(A.ncols)))
    rows = R.rows()
    if any(p >= A.ncols for p in pivots):
        return None
    rank = len(pivots)
    for r in range(rank, A.nrows):
        if any(rows[r][A.ncols + k] != 0 for k in range(B.ncols)):
            return None
    cols: List[Vector] = [{} for _ in range(B.ncols)]
    for r, pc in enumerate(pivots):
        for k in range(B.ncols):
            v = rows[r][A.ncols + k]
            if v != 0:
                cols[k][pc] = v
    return Matrix(A.ncols, B.ncols, F, cols)


def left_inverse(K: Matrix) -> Matrix:
    """A left inverse of an injective matrix (``L K = I``)."""
    if K.rank() != K.ncols:
        raise ValueError("matrix is not injective")
    # solve K^T L^T = I
    Lt = solve(K.transpose(), Matrix.identity(K.ncols, K.field))
    assert Lt is not None
    return Lt.transpose()


def vec_to_dict(v: Sequence) -> Vector:
    return {i: x for i, x in enumerate(v) if x != 0}


def dict_to_vec(d: Vector, n: int, field: Field) -> List:
    z = field.zero
    return [d.get(i, z) for i in range(n)]
