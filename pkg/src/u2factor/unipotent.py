"""Unipotent-matrix predicates, the commutator calculus, and the
self-verifying certificate data model.

A certificate stores the pair (X, Y) for every factor rather than the
product [X, Y], so verification is an independent recomputation.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field

from .field import FieldSpec, FieldElement, parse_field_spec, parse_element
from .linalg import Matrix, identity, direct_sum, Singular


class CertificateError(Exception):
    pass


class NotU2(CertificateError):
    pass


def is_unipotent_index(A: Matrix, k: int) -> bool:
    """(A - I)^k == 0 and (A - I)^(k-1) != 0, both checked exactly."""
    if k < 1:
        raise ValueError("index must be >= 1")
    N = A - identity(A.field, A.n)
    power = identity(A.field, A.n)
    for _ in range(k - 1):
        power = power @ N
    if power.is_zero():
        return False
    return (power @ N).is_zero()


def is_u2(A: Matrix) -> bool:
    return is_unipotent_index(A, 2)


def commutator(X: Matrix, Y: Matrix) -> Matrix:
    """[X, Y] = X Y X^-1 Y^-1."""
    return X @ Y @ X.inverse() @ Y.inverse()


@dataclass(frozen=True)
class U2Type:
    """Classification of a 2x2 U2-matrix [[1+a, b], [c, 1-a]], a^2+bc=0."""

    tag: str  # type_i_upper | type_i_lower | type_ii
    a: FieldElement
    b: FieldElement
    c: FieldElement


def classify_u2_sl2(A: Matrix) -> U2Type:
    if A.n != 2:
        raise NotU2("classification is for 2x2 matrices")
    field = A.field
    one = field.one()
    a = A[0, 0] - one
    b = A[0, 1]
    c = A[1, 0]
    if A[1, 1] != one - a:
        raise NotU2("trace != 2, not a U2-matrix")
    if not (a * a + b * c).is_zero():
        raise NotU2("a^2 + bc != 0")
    if a.is_zero() and b.is_zero() and c.is_zero():
        raise NotU2("identity matrix has index 1")
    if a.is_zero():
        return U2Type("type_i_upper" if not b.is_zero() else "type_i_lower",
                      a, b, c)
    return U2Type("type_ii", a, b, c)


@dataclass(frozen=True)
class CommutatorPair:
    """A certified pair of U2-matrices; the factor it certifies is [X, Y]."""

    x: Matrix
    y: Matrix

    def __post_init__(self):
        for name, m in (("X", self.x), ("Y", self.y)):
            if not is_u2(m):
                raise NotU2(f"{name} is not a U2-matrix")

    def value(self) -> Matrix:
        return commutator(self.x, self.y)


@dataclass(frozen=True)
class Factorization:
    """Target matrix, ordered commutator pairs, and a route trail."""

    target: Matrix
    pairs: tuple
    route: tuple

    def __post_init__(self):
        object.__setattr__(self, "pairs", tuple(self.pairs))
        object.__setattr__(self, "route", tuple(self.route))

    def product(self) -> Matrix:
        acc = identity(self.target.field, self.target.n)
        for pair in self.pairs:
            acc = acc @ pair.value()
        return acc

    def pair_count(self) -> int:
        return len(self.pairs)


@dataclass
class Report:
    """Per-check verification report; failures are entries, not exceptions."""

    entries: list = dc_field(default_factory=list)

    def record(self, name: str, ok: bool, detail: str = ""):
        self.entries.append((name, ok, detail))

    @property
    def passed(self) -> bool:
        return all(ok for _, ok, _ in self.entries)

    def failures(self):
        return [(n, d) for n, ok, d in self.entries if not ok]

    def text(self) -> str:
        lines = []
        for name, ok, detail in self.entries:
            status = "ok" if ok else "FAIL"
            lines.append(f"{status:4s} {name}" + (f" ({detail})" if detail else ""))
        lines.append("PASS" if self.passed else "FAIL")
        return "\n".join(lines)


def verify(f: Factorization) -> Report:
    report = Report()
    one = f.target.field.one()
    for i, pair in enumerate(f.pairs):
        for name, m in ((f"pair[{i}].X", pair.x), (f"pair[{i}].Y", pair.y)):
            ok = is_u2(m)
            report.record(f"{name} is U2", ok,
                          "" if ok else "index condition fails")
        try:
            det = pair.value().det()
            report.record(f"pair[{i}] value det=1", det == one,
                          "" if det == one else f"det={det.token()}")
        except Singular:
            report.record(f"pair[{i}] value det=1", False, "singular factor")
    prod_ok = f.product() == f.target
    report.record("product equals target", prod_ok,
                  "" if prod_ok else "recomposition mismatch")
    return report


# -- transport operations ----------------------------------------------------

def invert_factorization(f: Factorization) -> Factorization:
    """Certificate for target^-1: pairs reversed, each (X, Y) -> (Y, X)."""
    pairs = tuple(CommutatorPair(p.y, p.x) for p in reversed(f.pairs))
    return Factorization(f.target.inverse(), pairs,
                         f.route + ("transport:invert",))


def conjugate_factorization(f: Factorization, P: Matrix) -> Factorization:
    """Certificate for P target P^-1."""
    Pinv = P.inverse()
    pairs = tuple(CommutatorPair(P @ p.x @ Pinv, P @ p.y @ Pinv)
                  for p in f.pairs)
    return Factorization(P @ f.target @ Pinv, pairs,
                         f.route + ("transport:conjugate",))


def direct_sum_factorization(f: Factorization, g: Factorization) -> Factorization:
    """Certificate for target_f (+) target_g with max(r, s) pairs.

    The shorter pair list is padded with identity blocks on its side;
    a padded pair is legal because the other side's members are already
    certified U2 (asserted via CommutatorPair validation on combine).
    """
    if f.target.field != g.target.field:
        raise CertificateError("direct sum over different fields")
    field = f.target.field
    m, n = f.target.n, g.target.n
    im, in_ = identity(field, m), identity(field, n)
    r, s = len(f.pairs), len(g.pairs)
    pairs = []
    for i in range(max(r, s)):
        fx, fy = (f.pairs[i].x, f.pairs[i].y) if i < r else (im, im)
        gx, gy = (g.pairs[i].x, g.pairs[i].y) if i < s else (in_, in_)
        x = direct_sum(fx, gx)
        y = direct_sum(fy, gy)
        if x.is_identity() and y.is_identity():
            # both inputs exhausted; cannot happen inside max(r, s)
            continue
        pairs.append(CommutatorPair(x, y))
    return Factorization(direct_sum(f.target, g.target), tuple(pairs),
                         f.route + g.route)


def identity_factorization(field: FieldSpec, n: int) -> Factorization:
    return Factorization(identity(field, n), (), ())


def embed_factorization(f: Factorization, before: int, after: int) -> Factorization:
    """Certificate for I_before (+) target (+) I_after."""
    field = f.target.field
    out = f
    if before:
        out = direct_sum_factorization(identity_factorization(field, before), out)
    if after:
        out = direct_sum_factorization(out, identity_factorization(field, after))
    return out


def concat_factorizations(target: Matrix, parts, route_extra=()) -> Factorization:
    """Certificate for a product target = part_1 ... part_k by pair
    concatenation; recomposition is asserted."""
    pairs = []
    route = []
    for part in parts:
        pairs.extend(part.pairs)
        route.extend(part.route)
    f = Factorization(target, tuple(pairs), tuple(route) + tuple(route_extra))
    assert f.product() == target, "concatenated certificate does not recompose"
    return f


def expand_to_u2_product(f: Factorization):
    """Ordered U2-matrices (at most two per pair) whose product is the
    target: [X, Y] = X * (Y X^-1 Y^-1)."""
    out = []
    for pair in f.pairs:
        second = pair.y @ pair.x.inverse() @ pair.y.inverse()
        if not is_u2(second):
            raise CertificateError("conjugated inverse lost the U2 property")
        out.append(pair.x)
        out.append(second)
    return out


# -- certificate JSON ----------------------------------------------------------

def factorization_to_dict(f: Factorization) -> dict:
    return {
        "field": f.target.field.spec_string(),
        "n": f.target.n,
        "target": f.target.tokens(),
        "pairs": [{"x": p.x.tokens(), "y": p.y.tokens()} for p in f.pairs],
        "route": list(f.route),
    }


def factorization_from_dict(d: dict) -> Factorization:
    field = parse_field_spec(d["field"])
    n = d["n"]

    def mat(tokens):
        if len(tokens) != n or any(len(r) != n for r in tokens):
            raise CertificateError("matrix token block has wrong shape")
        return Matrix(field, [[parse_element(field, t) for t in row]
                              for row in tokens])

    target = mat(d["target"])
    pairs = tuple(CommutatorPair(mat(p["x"]), mat(p["y"]))
                  for p in d["pairs"])
    return Factorization(target, pairs, tuple(d.get("route", ())))


def factorization_to_json(f: Factorization) -> str:
    return json.dumps(factorization_to_dict(f), indent=2) + "\n"


def factorization_from_json(text: str) -> Factorization:
    return factorization_from_dict(json.loads(text))
