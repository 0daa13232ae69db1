"""Exact arithmetic for GF(p), GF(p^k), and the rationals.

Elements carry a reference to their field descriptor and a canonical
representation: a residue in [0, p) for prime fields, a coefficient
tuple (ascending degree, each in [0, p)) for extension fields, and a
reduced ``Fraction`` for the rationals.  All witness-producing scans
(square roots, sum-of-squares, pairings) walk elements in a fixed
canonical order so results are reproducible run to run.
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Iterator, Optional


class FieldError(Exception):
    pass


class NotPrime(FieldError):
    pass


class ReducibleModulus(FieldError):
    pass


class NoBuiltinModulus(FieldError):
    pass


class DivisionByZero(FieldError):
    pass


class FieldMismatch(FieldError):
    pass


class FieldTooSmall(FieldError):
    pass


class NotASquare(FieldError):
    pass


# Fixed irreducible moduli (ascending coefficients, monic) so element
# encodings are stable across runs.
BUILTIN_MODULI = {
    4: (1, 1, 1),          # x^2 + x + 1
    8: (1, 1, 0, 1),       # x^3 + x + 1
    9: (1, 0, 1),          # x^2 + 1
    16: (1, 1, 0, 0, 1),   # x^4 + x + 1
    25: (1, 1, 1),         # x^2 + x + 1
    27: (1, 2, 0, 1),      # x^3 + 2x + 1
}

_MAX_IRRED_CHECK = 1 << 20


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    for d in range(2, math.isqrt(p) + 1):
        if p % d == 0:
            return False
    return True


# -- dense polynomial helpers over GF(p), coefficients as plain ints --

def _ptrim(c):
    while c and c[-1] == 0:
        c = c[:-1]
    return c


def _pmul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _ptrim(out)


def _pmod(a, m, p):
    # remainder of a mod monic-normalizable m over GF(p)
    a = list(a)
    dm = len(m) - 1
    lead_inv = pow(m[-1], -1, p)
    while len(a) - 1 >= dm and any(a):
        a = _ptrim(a)
        if len(a) - 1 < dm:
            break
        coef = (a[-1] * lead_inv) % p
        shift = len(a) - 1 - dm
        for i, c in enumerate(m):
            a[shift + i] = (a[shift + i] - coef * c) % p
        a = _ptrim(a)
    return _ptrim(a)


def _poly_is_irreducible(modulus, p: int) -> bool:
    """Brute-force irreducibility over GF(p): no monic factor of degree
    1..k//2 divides the modulus."""
    k = len(modulus) - 1
    if k < 1 or modulus[-1] % p == 0:
        return False
    if p ** k > _MAX_IRRED_CHECK:
        raise FieldError("modulus too large to certify irreducible")
    for d in range(1, k // 2 + 1):
        for tail in itertools.product(range(p), repeat=d):
            cand = list(tail) + [1]  # monic degree d
            if not _pmod(modulus, cand, p):
                return False
    return True


class FieldSpec:
    """Descriptor for GF(p), GF(p^k), or Q.

    Immutable after construction; arithmetic tables for small extension
    fields are cached lazily.
    """

    __slots__ = ("kind", "p", "k", "modulus", "size", "_elements",
                 "_squares", "_sqrt_of", "_mul_table", "_inv_table",
                 "_hash")

    def __init__(self, kind: str, p: int = 0, k: int = 1, modulus=None):
        if kind == "rational":
            self.kind, self.p, self.k = "rational", 0, 1
            self.modulus = None
            self.size = None
        elif kind == "prime":
            if not _is_prime(p):
                raise NotPrime(f"{p} is not prime")
            self.kind, self.p, self.k = "prime", p, 1
            self.modulus = None
            self.size = p
        elif kind == "extension":
            if not _is_prime(p):
                raise NotPrime(f"{p} is not prime")
            if k < 2:
                raise FieldError("extension degree must be >= 2")
            q = p ** k
            if modulus is None:
                if q not in BUILTIN_MODULI:
                    raise NoBuiltinModulus(f"no built-in modulus for GF({q})")
                modulus = BUILTIN_MODULI[q]
            modulus = tuple(c % p for c in modulus)
            if len(modulus) != k + 1 or modulus[-1] != 1:
                raise FieldError("modulus must be monic of degree k")
            if not _poly_is_irreducible(modulus, p):
                raise ReducibleModulus(f"modulus {modulus} reducible mod {p}")
            self.kind, self.p, self.k = "extension", p, k
            self.modulus = modulus
            self.size = q
        else:
            raise FieldError(f"unknown field kind {kind!r}")
        self._elements = None
        self._squares = None
        self._sqrt_of = None
        self._mul_table = None
        self._inv_table = None
        self._hash = hash((self.kind, self.p, self.k, self.modulus))

    # identity -------------------------------------------------------
    def __eq__(self, other):
        if self is other:
            return True
        return (isinstance(other, FieldSpec)
                and self.kind == other.kind and self.p == other.p
                and self.k == other.k and self.modulus == other.modulus)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"FieldSpec({self.spec_string()})"

    @property
    def char(self) -> int:
        return self.p

    @property
    def is_finite(self) -> bool:
        return self.kind != "rational"

    def spec_string(self) -> str:
        if self.kind == "rational":
            return "Q"
        if self.kind == "prime":
            return f"GF({self.p})"
        coeffs = ",".join(str(c) for c in self.modulus)
        return f"GF({self.size};{coeffs})"

    # element construction -------------------------------------------
    def zero(self) -> "FieldElement":
        return self.element(0)

    def one(self) -> "FieldElement":
        return self.element(1)

    def element(self, value) -> "FieldElement":
        """Coerce an int, Fraction, or coefficient sequence."""
        if self.kind == "prime":
            return FieldElement(self, int(value) % self.p)
        if self.kind == "rational":
            return FieldElement(self, Fraction(value))
        if isinstance(value, int):
            rep = (value % self.p,) + (0,) * (self.k - 1)
            return FieldElement(self, rep)
        rep = tuple(int(c) % self.p for c in value)
        if len(rep) < self.k:
            rep = rep + (0,) * (self.k - len(rep))
        if len(rep) != self.k:
            raise FieldError("coefficient vector has wrong length")
        return FieldElement(self, rep)

    def generator(self) -> "FieldElement":
        """The class of x in GF(p)[x]/(modulus)."""
        if self.kind != "extension":
            raise FieldError("generator only defined for extension fields")
        return FieldElement(self, (0, 1) + (0,) * (self.k - 2))

    # enumeration in canonical order ----------------------------------
    def elements(self):
        if not self.is_finite:
            raise FieldError("cannot enumerate an infinite field")
        if self._elements is None:
            if self.kind == "prime":
                elems = [FieldElement(self, r) for r in range(self.p)]
            else:
                elems = [FieldElement(self, rep) for rep in
                         sorted(itertools.product(range(self.p),
                                                  repeat=self.k))]
            self._elements = tuple(elems)
        return self._elements

    def nonzero_elements(self):
        return tuple(e for e in self.elements() if not e.is_zero())

    def squares(self) -> frozenset:
        """S = {a^2 : a nonzero}, with a canonical root recorded per entry."""
        if self._squares is None:
            sqrt_of = {}
            for a in self.nonzero_elements():
                s = a * a
                sqrt_of.setdefault(s, a)
            self._squares = frozenset(sqrt_of)
            self._sqrt_of = sqrt_of
        return self._squares

    # small-field extension arithmetic tables -------------------------
    def _tables(self):
        if self._mul_table is None:
            mul = {}
            inv = {}
            p, mod = self.p, self.modulus
            reps = [e.rep for e in self.elements()]
            for ra in reps:
                for rb in reps:
                    prod = _pmod(_pmul(_ptrim(list(ra)), _ptrim(list(rb)), p),
                                 mod, p)
                    res = tuple(prod) + (0,) * (self.k - len(prod))
                    mul[(ra, rb)] = res
            one = (1,) + (0,) * (self.k - 1)
            for ra in reps:
                for rb in reps:
                    if mul[(ra, rb)] == one:
                        inv[ra] = rb
            self._mul_table, self._inv_table = mul, inv
        return self._mul_table, self._inv_table


class FieldElement:
    """A canonical element of a FieldSpec; arithmetic is pure and exact."""

    __slots__ = ("field", "rep")

    def __init__(self, field: FieldSpec, rep):
        self.field = field
        self.rep = rep

    # helpers ----------------------------------------------------------
    def _check(self, other):
        if not isinstance(other, FieldElement):
            raise TypeError(f"expected FieldElement, got {type(other)}")
        if other.field is not self.field and other.field != self.field:
            raise FieldMismatch("elements belong to different fields")

    def is_zero(self) -> bool:
        f = self.field
        if f.kind == "prime":
            return self.rep == 0
        if f.kind == "rational":
            return self.rep == 0
        return not any(self.rep)

    def is_one(self) -> bool:
        return self == self.field.one()

    def sort_key(self):
        """Total order on canonical representations (field-internal)."""
        return self.rep

    # arithmetic -------------------------------------------------------
    def __add__(self, other):
        self._check(other)
        f = self.field
        if f.kind == "prime":
            return FieldElement(f, (self.rep + other.rep) % f.p)
        if f.kind == "rational":
            return FieldElement(f, self.rep + other.rep)
        return FieldElement(f, tuple((a + b) % f.p
                                     for a, b in zip(self.rep, other.rep)))

    def __sub__(self, other):
        self._check(other)
        f = self.field
        if f.kind == "prime":
            return FieldElement(f, (self.rep - other.rep) % f.p)
        if f.kind == "rational":
            return FieldElement(f, self.rep - other.rep)
        return FieldElement(f, tuple((a - b) % f.p
                                     for a, b in zip(self.rep, other.rep)))

    def __neg__(self):
        f = self.field
        if f.kind == "prime":
            return FieldElement(f, (-self.rep) % f.p)
        if f.kind == "rational":
            return FieldElement(f, -self.rep)
        return FieldElement(f, tuple((-a) % f.p for a in self.rep))

    def __mul__(self, other):
        self._check(other)
        f = self.field
        if f.kind == "prime":
            return FieldElement(f, (self.rep * other.rep) % f.p)
        if f.kind == "rational":
            return FieldElement(f, self.rep * other.rep)
        mul, _ = f._tables()
        return FieldElement(f, mul[(self.rep, other.rep)])

    def inverse(self):
        f = self.field
        if self.is_zero():
            raise DivisionByZero("inverse of zero")
        if f.kind == "prime":
            return FieldElement(f, pow(self.rep, -1, f.p))
        if f.kind == "rational":
            return FieldElement(f, 1 / self.rep)
        _, inv = f._tables()
        return FieldElement(f, inv[self.rep])

    def __truediv__(self, other):
        self._check(other)
        return self * other.inverse()

    def __pow__(self, exp: int):
        if exp < 0:
            return self.inverse() ** (-exp)
        result = self.field.one()
        base = self
        while exp:
            if exp & 1:
                result = result * base
            base = base * base
            exp >>= 1
        return result

    # identity ----------------------------------------------------------
    def __eq__(self, other):
        return (isinstance(other, FieldElement) and self.field == other.field
                and self.rep == other.rep)

    def __hash__(self):
        return hash((self.field._hash, self.rep))

    def __repr__(self):
        return f"<{self.token()} in {self.field.spec_string()}>"

    # serialization -------------------------------------------------------
    def token(self) -> str:
        f = self.field
        if f.kind == "prime":
            return str(self.rep)
        if f.kind == "rational":
            if self.rep.denominator == 1:
                return str(self.rep.numerator)
            return f"{self.rep.numerator}/{self.rep.denominator}"
        return "(" + ",".join(str(c) for c in self.rep) + ")"


def arith(a: FieldElement, b: Optional[FieldElement], op: str) -> FieldElement:
    """Binary/unary field arithmetic by name (add, sub, mul, div, inv, neg)."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        if b.is_zero():
            raise DivisionByZero("division by zero")
        return a / b
    if op == "inv":
        return a.inverse()
    if op == "neg":
        return -a
    raise ValueError(f"unknown op {op!r}")


def make_field(kind: str, p: int = 0, k: int = 1, modulus=None) -> FieldSpec:
    return FieldSpec(kind, p, k, modulus)


def GF(q: int, modulus=None) -> FieldSpec:
    """Convenience: GF(q) for prime or built-in prime-power q."""
    if _is_prime(q):
        return FieldSpec("prime", q)
    for p in range(2, q):
        if _is_prime(p):
            k = 0
            n = q
            while n % p == 0:
                n //= p
                k += 1
            if n == 1 and k >= 2:
                return FieldSpec("extension", p, k, modulus)
            if n == 1:
                break
    raise FieldError(f"{q} is not a prime power")


def rationals() -> FieldSpec:
    return FieldSpec("rational")


# -- spec grammar: GF(7), GF(9;1,0,1), Q ---------------------------------

_SPEC_RE = re.compile(r"^GF\(\s*(\d+)\s*(?:;\s*([0-9,\s]+))?\)$")


def parse_field_spec(text: str) -> FieldSpec:
    text = text.strip()
    if text == "Q":
        return rationals()
    m = _SPEC_RE.match(text)
    if not m:
        raise FieldError(f"cannot parse field spec {text!r}")
    q = int(m.group(1))
    if m.group(2) is None:
        return GF(q)
    coeffs = tuple(int(c) for c in m.group(2).replace(" ", "").split(","))
    return GF(q, coeffs)


_EXT_TOKEN_RE = re.compile(r"^\(\s*(-?\d+(?:\s*,\s*-?\d+)*)\s*\)$")


def parse_element(field: FieldSpec, token: str) -> FieldElement:
    token = token.strip()
    if field.kind == "rational":
        return field.element(Fraction(token))
    if field.kind == "prime":
        return field.element(int(token))
    if token.lstrip("-").isdigit():
        return field.element(int(token))  # prime-subfield embedding
    m = _EXT_TOKEN_RE.match(token)
    if not m:
        raise FieldError(f"bad extension element token {token!r}")
    return field.element(tuple(int(c) for c in
                               m.group(1).replace(" ", "").split(",")))


# -- number-theoretic predicates the factorization routes branch on -------

def sqrt(a: FieldElement) -> Optional[FieldElement]:
    """Some b with b*b == a, or None.  Deterministic: first hit in the
    canonical element order for finite fields, positive root over Q."""
    f = a.field
    if a.is_zero():
        return f.zero()
    if f.kind == "rational":
        fr = a.rep
        if fr < 0:
            return None
        rn, rd = math.isqrt(fr.numerator), math.isqrt(fr.denominator)
        if rn * rn == fr.numerator and rd * rd == fr.denominator:
            return f.element(Fraction(rn, rd))
        return None
    f.squares()
    root = f._sqrt_of.get(a)
    return root


def is_square(a: FieldElement) -> bool:
    if a.is_zero():
        return True
    return sqrt(a) is not None


def sum_of_two_nonzero_squares(target: FieldElement):
    """Nonzero (a, b) with a^2 + b^2 == target, or None.

    Exhaustive canonical scan over finite fields.  Over Q the only
    supported use is target = -1, which has no solution (ordered field).
    """
    f = target.field
    if f.kind == "rational":
        return None
    for a in f.nonzero_elements():
        need = target - a * a
        if need.is_zero():
            continue
        b = sqrt(need)
        if b is not None and not b.is_zero():
            return (a, b)
    return None


def square_ne_inverse_witness(F: FieldSpec) -> FieldElement:
    """First nonzero b (canonical order) with b^2 != b^-2, i.e. b^4 != 1."""
    if F.kind == "rational":
        return F.element(2)
    if F.size in (2, 3, 5):
        raise FieldTooSmall(f"no such witness in GF({F.size})")
    one = F.one()
    for b in F.nonzero_elements():
        if b ** 4 != one:
            return b
    raise FieldTooSmall(f"no such witness in GF({F.size})")


@dataclass(frozen=True)
class SquareClassData:
    """Partition of the nonzero squares S into exceptional set E and
    mutually-inverse pairs (alpha, alpha^-1)."""

    field: FieldSpec
    S: Optional[frozenset]
    E: frozenset
    pairs: Optional[tuple] = None  # finite fields only

    def iter_pairs(self) -> Iterator[tuple]:
        if self.pairs is not None:
            return iter(self.pairs)
        return self._rational_stream()

    def _rational_stream(self):
        F = self.field
        n = 2
        while True:
            a = F.element(Fraction(n * n))
            yield (a, a.inverse())
            n += 1


def square_class_pairing(F: FieldSpec) -> SquareClassData:
    if F.kind == "rational":
        # -1 is not a rational square, so E = {1}.
        return SquareClassData(F, None, frozenset({F.one()}), None)
    if F.size in (2, 3, 5):
        raise FieldTooSmall(f"GF({F.size}) has no inverse-pair decomposition")
    S = F.squares()
    one = F.one()
    minus_one = -one
    if F.p == 2 or minus_one not in S:
        E = frozenset({one})
    else:
        E = frozenset({one, minus_one})
    pairs = []
    used = set(E)
    for a in sorted(S - E, key=lambda e: e.sort_key()):
        if a in used:
            continue
        inv = a.inverse()
        pairs.append((a, inv))
        used.add(a)
        used.add(inv)
    k = len(pairs)
    q = F.size
    expected = (q - 2) // 2 if F.p == 2 else \
        ((q - 3) // 4 if minus_one not in S else (q - 5) // 4)
    assert k == expected, (k, expected, q)
    return SquareClassData(F, S, E, tuple(pairs))
