"""JSON spec files: objects, Lie algebras, monoids, actions and points.

Every loader error is a :class:`SpecError` carrying a JSON path such as
``$.bracket[3][2]``.  Scalars are integers or ``"p/q"`` strings; floats are
rejected.
"""
from __future__ import annotations

import json
import os
from fractions import Fraction
from typing import Any, Dict, List, Optional, Tuple

from .linalg import Field, Matrix, QQ, parse_field
from .monoidal import (Category, CategoryError, GradeGroup, GradedObject, Morphism, TENSOR_SEP,
                       make_object, tensor_objects)
from .lie import LieObject, abelian_lie
from .enveloping import MonoidObject


class SpecError(ValueError):
    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path
        self.message = message


CORPUS_DIR = os.path.join(os.path.dirname(__file__), "corpus")


def resolve_path(path: str) -> str:
    """``path`` itself, or a bundled corpus file with the same basename."""
    if os.path.exists(path):
        return path
    cand = os.path.join(CORPUS_DIR, os.path.basename(path))
    if os.path.exists(cand):
        return cand
    if not cand.endswith(".json") and os.path.exists(cand + ".json"):
        return cand + ".json"
    raise SpecError("$", f"no such file {path!r}")


def bundled_examples() -> List[str]:
    return sorted(f for f in os.listdir(CORPUS_DIR) if f.endswith(".json"))


def read_json(path: str) -> Dict[str, Any]:
    real = resolve_path(path)
    try:
        with open(real, encoding="utf-8") as fh:
            doc = json.load(fh, parse_float=_no_float)
    except json.JSONDecodeError as e:
        raise SpecError("$", f"malformed JSON: {e.msg} at line {e.lineno} column {e.colno}") from None
    except _FloatSeen:
        raise SpecError("$", "floating-point scalars are not allowed; use integers or \"p/q\" strings") from None
    if not isinstance(doc, dict):
        raise SpecError("$", "top level must be an object")
    return doc


class _FloatSeen(Exception):
    pass


def _no_float(s):
    raise _FloatSeen(s)


# ---------------------------------------------------------------------------


class Loader:
    """Resolves references inside one document and caches built objects."""

    def __init__(self, doc: Dict[str, Any], field_override: Optional[Field] = None):
        self.doc = doc
        self.field_override = field_override
        self._lie_cache: Dict[str, LieObject] = {}

    # scalars and fields ------------------------------------------------
    def scalar(self, F: Field, x, path: str):
        if isinstance(x, bool) or not isinstance(x, (int, str)):
            raise SpecError(path, f"scalar must be an integer or \"p/q\" string, got {x!r}")
        try:
            return F(x)
        except (ValueError, ZeroDivisionError) as e:
            raise SpecError(path, f"bad scalar {x!r}: {e}") from None

    def field(self, spec: Dict[str, Any], path: str) -> Field:
        f = spec.get("field")
        if f is None or f == "any":
            return self.field_override or QQ
        if not isinstance(f, str):
            raise SpecError(f"{path}.field", "must be a string")
        try:
            return parse_field(f)
        except ValueError as e:
            raise SpecError(f"{path}.field", str(e)) from None

    # objects ----------------------------------------------------------
    def category(self, spec: Dict[str, Any], path: str) -> Category:
        kind = spec.get("category", "vect")
        F = self.field(spec, path)
        try:
            if kind == "vect":
                return Category("vect", F, GradeGroup("trivial"))
            if kind == "super":
                return Category("super", F, GradeGroup("Z2"))
            if kind == "chain":
                rng = spec.get("range", [-6, 6])
                if (not isinstance(rng, list) or len(rng) != 2
                        or not all(isinstance(v, int) for v in rng) or rng[0] > rng[1]):
                    raise SpecError(f"{path}.range", "must be [lo, hi] with integers lo <= hi")
                return Category("chain", F, GradeGroup("Z"), (rng[0], rng[1]))
            if kind == "lp":
                return Category("lp", F, GradeGroup("Z"))
            if kind == "colour":
                return Category("colour", F, self.grading(spec.get("grading", {}), f"{path}.grading"))
        except CategoryError as e:
            raise SpecError(path, str(e)) from None
        raise SpecError(f"{path}.category", f"unknown category {kind!r}")

    def grading(self, g: Dict[str, Any], path: str) -> GradeGroup:
        if not isinstance(g, dict):
            raise SpecError(path, "must be an object")
        group = str(g.get("group", "Z2xZ2")).replace("×", "x").replace("Z^n", "Zn")
        rank = g.get("rank", 0)
        table = None
        if "table" in g:
            table = []
            for i, row in enumerate(g["table"]):
                p = f"{path}.table[{i}]"
                if not isinstance(row, list) or len(row) != 3:
                    raise SpecError(p, "entries are [a, b, value]")
                a, b, v = row
                a = tuple(a) if isinstance(a, list) else (a,)
                b = tuple(b) if isinstance(b, list) else (b,)
                table.append(((a, b), self.scalar(QQ, v, f"{p}[2]")))
            table = tuple(table)
        try:
            return GradeGroup(group, rank, table)
        except CategoryError as e:
            raise SpecError(path, str(e)) from None

    def object(self, spec: Dict[str, Any], path: str) -> GradedObject:
        if not isinstance(spec, dict):
            raise SpecError(path, "must be an object")
        C = self.category(spec, path)
        basis = spec.get("basis")
        if not isinstance(basis, list):
            raise SpecError(f"{path}.basis", "must be a list")
        items = []
        seen = set()
        for i, b in enumerate(basis):
            p = f"{path}.basis[{i}]"
            if not isinstance(b, dict) or not isinstance(b.get("name"), str):
                raise SpecError(p, "basis entries are {\"name\": str, \"degree\": ...}")
            name = b["name"]
            if not name or TENSOR_SEP in name:
                raise SpecError(f"{p}.name", f"invalid basis name {name!r}")
            if name in seen:
                raise SpecError(f"{p}.name", f"duplicate basis name {name!r}")
            seen.add(name)
            deg = b.get("degree", 0)
            if C.grading.kind == "trivial":
                deg = 0
            if not (isinstance(deg, int) or (isinstance(deg, list) and all(isinstance(x, int) for x in deg))):
                raise SpecError(f"{p}.degree", "degree must be an integer or a list of integers")
            try:
                items.append((name, C.grading.normalize(deg)))
                C.check_degree(items[-1][1])
            except CategoryError as e:
                raise SpecError(f"{p}.degree", str(e)) from None
        d = None
        if "differential" in spec and spec["differential"]:
            if not C.has_differential:
                raise SpecError(f"{path}.differential", f"{C.kind} objects carry no differential")
            idx = {n: k for k, (n, _) in enumerate(items)}
            entries: Dict[Tuple[int, int], Any] = {}
            for i, row in enumerate(spec["differential"]):
                p = f"{path}.differential[{i}]"
                if not isinstance(row, list) or len(row) != 3:
                    raise SpecError(p, "entries are [source, target, scalar]")
                s, t, v = row
                for k, nm in ((0, s), (1, t)):
                    if nm not in idx:
                        raise SpecError(f"{p}[{k}]", f"unknown basis name {nm!r}")
                key = (idx[t], idx[s])
                entries[key] = entries.get(key, 0) + self.scalar(C.field, v, f"{p}[2]")
            d = Matrix.from_entries(len(items), len(items), C.field, entries)
        try:
            return make_object(C, items, d)
        except CategoryError as e:
            raise SpecError(f"{path}.differential", str(e)) from None

    # morphisms ------------------------------------------------------
    def linear_map(self, rows, S: GradedObject, T: GradedObject, path: str, arity: int = 1,
                   check_degree: bool = True) -> Morphism:
        """Entries ``[s1, ..., s_arity, t, scalar]`` on the ``arity``-fold tensor of ``S``."""
        if not isinstance(rows, list):
            raise SpecError(path, "must be a list")
        factors = [S] * arity if isinstance(S, GradedObject) else list(S)
        src = factors[0]
        for Y in factors[1:]:
            src = tensor_objects(src, Y)
        F = src.field
        entries: Dict[Tuple[int, int], Any] = {}
        for i, row in enumerate(rows):
            p = f"{path}[{i}]"
            if not isinstance(row, list) or len(row) != len(factors) + 2:
                raise SpecError(p, f"entries have {len(factors) + 2} components")
            names = row[:len(factors)]
            for k, (Y, nm) in enumerate(zip(factors, names)):
                if nm not in Y._index:
                    raise SpecError(f"{p}[{k}]", f"unknown basis name {nm!r}")
            t = row[len(factors)]
            if t not in T._index:
                raise SpecError(f"{p}[{len(factors)}]", f"unknown basis name {t!r}")
            sname = TENSOR_SEP.join(names)
            if sname not in src._index:
                raise SpecError(p, "tensor basis element does not exist in this instance")
            key = (T.index(t), src.index(sname))
            entries[key] = entries.get(key, 0) + self.scalar(F, row[-1], f"{p}[{len(factors) + 1}]")
        M = Matrix.from_entries(T.dim, src.dim, F, entries)
        try:
            return Morphism(src, T, M, check=check_degree)
        except CategoryError as e:
            raise SpecError(path, str(e)) from None

    # Lie algebras ---------------------------------------------------
    def lie(self, ref, path: str) -> LieObject:
        """A Lie spec given inline or as a name in the top-level ``algebras`` map.

        A bare object spec (no ``algebra`` key) is read as an abelian Lie object.
        """
        if isinstance(ref, str):
            algs = self.doc.get("algebras", {})
            if ref not in algs:
                raise SpecError(path, f"unknown algebra reference {ref!r}")
            if ref not in self._lie_cache:
                self._lie_cache[ref] = self.lie(algs[ref], f"$.algebras.{ref}")
            return self._lie_cache[ref]
        if not isinstance(ref, dict):
            raise SpecError(path, "must be an algebra spec or a reference name")
        if "algebra" in ref:
            X = self.object(ref["algebra"], f"{path}.algebra")
            b = self.linear_map(ref.get("bracket", []), X, X, f"{path}.bracket", 2, check_degree=False)
            return LieObject(X, b)
        return abelian_lie(self.object(ref, path))

    def monoid(self, spec, path: str) -> MonoidObject:
        if not isinstance(spec, dict):
            raise SpecError(path, "must be an object")
        X = self.object(spec.get("object"), f"{path}.object")
        m = self.linear_map(spec.get("product", []), X, X, f"{path}.product", 2)
        I = X.category.unit()
        unit = spec.get("unit")
        if not isinstance(unit, list):
            raise SpecError(f"{path}.unit", "must be a list of [name, scalar]")
        rows = []
        for i, row in enumerate(unit):
            if not isinstance(row, list) or len(row) != 2:
                raise SpecError(f"{path}.unit[{i}]", "entries are [name, scalar]")
            rows.append(["1", row[0], row[1]])
        u = self.linear_map(rows, I, X, f"{path}.unit")
        aug = None
        if "augmentation" in spec:
            rows = [[n, "1", v] for n, v in spec["augmentation"]]
            aug = self.linear_map(rows, X, I, f"{path}.augmentation")
        A = MonoidObject(X, m, u)
        A.augmentation = aug
        return A

    def action_map(self, spec, path: str):
        from .actions import EquivariantLieObject
        if not isinstance(spec, dict):
            raise SpecError(path, "must be an object")
        for key in ("actor", "module", "map"):
            if key not in spec:
                raise SpecError(f"{path}.{key}", "missing")
        B = self.lie(spec["actor"], f"{path}.actor")
        X = self.lie(spec["module"], f"{path}.module")
        if B.category != X.category:
            raise SpecError(path, "actor and module live in different category instances")
        theta = self.linear_map(spec["map"], [B.carrier, X.carrier], X.carrier, f"{path}.map")
        return EquivariantLieObject(B, X, theta)

    def point(self, spec, path: str):
        from .points import Point
        if not isinstance(spec, dict):
            raise SpecError(path, "must be an object")
        for key in ("algebra", "base", "projection", "section"):
            if key not in spec:
                raise SpecError(f"{path}.{key}", "missing")
        A = self.lie(spec["algebra"], f"{path}.algebra")
        B = self.lie(spec["base"], f"{path}.base")
        if A.category != B.category:
            raise SpecError(path, "algebra and base live in different category instances")
        p = self.linear_map(spec["projection"], A.carrier, B.carrier, f"{path}.projection")
        s = self.linear_map(spec["section"], B.carrier, A.carrier, f"{path}.section")
        return Point(A, B, p, s)


# ---------------------------------------------------------------------------
# serialization


def scalar_json(F: Field, x):
    return F.to_json(x)


def morphism_entries(f: Morphism) -> List[list]:
    """Sparse ``[source name, target name, scalar]`` list in column order."""
    out = []
    F = f.field
    for j in range(f.source.dim):
        for i, v in sorted(f.col(j).items()):
            out.append([f.source.names[j], f.target.names[i], F.to_json(v)])
    return out


def lie_to_spec(L: LieObject) -> Dict[str, Any]:
    from .monoidal import factor_names
    X = L.carrier
    C = X.category
    alg: Dict[str, Any] = {"category": C.kind, "field": C.field.name,
                           "basis": [{"name": n, "degree": _deg_json(d)} for n, d in X.basis]}
    if C.kind == "chain":
        alg["range"] = list(C.degree_range)
    if X.differential is not None:
        alg["differential"] = [[s, t, v] for s, t, v in morphism_entries(
            Morphism(X, X, X.d(), check=False))]
    bracket = []
    F = X.field
    for k in range(L.bracket.source.dim):
        a, b = factor_names([X, X], k)
        for i, v in sorted(L.bracket.col(k).items()):
            bracket.append([a, b, X.names[i], F.to_json(v)])
    return {"algebra": alg, "bracket": bracket}


def _deg_json(d):
    if len(d) == 0:
        return 0
    if len(d) == 1:
        return d[0]
    return list(d)


def dump_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False)
