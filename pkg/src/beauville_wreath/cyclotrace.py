"""Exact cyclotomic integers and traces of the degree qr+2 representation.

An element of Z[zeta_N], N = p^k, is stored in the power basis
zeta^0 .. zeta^(phi(N)-1).  Reduction uses

    zeta^((p-1)M) = -(1 + zeta^M + ... + zeta^((p-2)M)),   M = N / p,

which clears every exponent in [phi(N), N) in a single step.

The representation sends x to Xi + zeta_q + 1 and y to Upsilon + 1 + zeta_r,
so the trace of (v, s) is ``fix(v, s) + zeta_q^(sum v) + zeta_r^s``.
"""

from __future__ import annotations

import cmath
from collections import defaultdict
from dataclasses import dataclass, field

from . import permcore
from . import wreath as W
from .wreath import GroupParams, WreathElement, prime_power_exponent


class ModulusError(ValueError):
    pass


def _prime_of(n: int) -> int:
    d = 2
    while d * d <= n:
        if n % d == 0:
            return d
        d += 1
    return n


class CycInt:
    """An element of Z[zeta_N] in canonical power-basis form."""

    __slots__ = ("modulus", "p", "coeffs")

    def __init__(self, modulus: int, coeffs=()):
        if modulus < 1:
            raise ModulusError("modulus must be positive")
        p = _prime_of(modulus) if modulus > 1 else 1
        if modulus > 1 and prime_power_exponent(modulus, p) is None:
            raise ModulusError("modulus %d is not a prime power" % modulus)
        self.modulus = modulus
        self.p = p
        self.coeffs = _reduce(modulus, p, dict(enumerate(coeffs)) if not isinstance(coeffs, dict) else coeffs)

    @classmethod
    def _raw(cls, modulus, p, coeffs):
        obj = cls.__new__(cls)
        obj.modulus = modulus
        obj.p = p
        obj.coeffs = coeffs
        return obj

    @property
    def phi(self) -> int:
        return _phi(self.modulus, self.p)

    def embed(self, modulus: int) -> "CycInt":
        """The same value in Z[zeta_modulus]; modulus must be a multiple."""
        if modulus == self.modulus:
            return self
        if modulus % self.modulus:
            raise ModulusError("cannot embed Z[zeta_%d] in Z[zeta_%d]" % (self.modulus, modulus))
        if self.modulus > 1 and _prime_of(modulus) != self.p:
            raise ModulusError("moduli %d and %d have different primes" % (self.modulus, modulus))
        k = modulus // self.modulus
        terms = {e * k: c for e, c in enumerate(self.coeffs) if c}
        return CycInt(modulus, terms)

    def _common(self, other) -> tuple:
        if isinstance(other, int):
            other = CycInt(self.modulus, [other])
        if not isinstance(other, CycInt):
            return NotImplemented, NotImplemented
        n = max(self.modulus, other.modulus)
        return self.embed(n), other.embed(n)

    def __add__(self, other):
        a, b = self._common(other)
        if a is NotImplemented:
            return NotImplemented
        m = max(len(a.coeffs), len(b.coeffs))
        ca = a.coeffs + (0,) * (m - len(a.coeffs))
        cb = b.coeffs + (0,) * (m - len(b.coeffs))
        return CycInt._raw(a.modulus, a.p, tuple(x + y for x, y in zip(ca, cb)))

    __radd__ = __add__

    def __neg__(self):
        return CycInt._raw(self.modulus, self.p, tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        return self + (-other if isinstance(other, CycInt) else -other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        a, b = self._common(other)
        if a is NotImplemented:
            return NotImplemented
        terms: dict = defaultdict(int)
        for i, x in enumerate(a.coeffs):
            if x:
                for j, y in enumerate(b.coeffs):
                    if y:
                        terms[i + j] += x * y
        return CycInt(a.modulus, dict(terms))

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, int):
            other = CycInt(self.modulus, [other])
        if not isinstance(other, CycInt):
            return NotImplemented
        a, b = self._common(other)
        m = max(len(a.coeffs), len(b.coeffs))
        return a.coeffs + (0,) * (m - len(a.coeffs)) == b.coeffs + (0,) * (m - len(b.coeffs))

    def __hash__(self):
        # hash the value in the smallest ring containing it
        c = self._minimal()
        return hash((c.modulus, c.coeffs))

    def _minimal(self) -> "CycInt":
        c = self
        while c.modulus > 1:
            n, p = c.modulus, c.p
            if any(x for e, x in enumerate(c.coeffs) if e % p):
                break
            small = n // p
            if small == 1:
                if any(c.coeffs[1:]):
                    break
                c = CycInt._raw(1, 1, c.coeffs[:1])
                break
            # canonical forms using only exponents divisible by p come from Z[zeta_{N/p}]
            c = CycInt(small, {e // p: x for e, x in enumerate(c.coeffs) if x})
        return c

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def to_complex(self) -> complex:
        z = cmath.exp(2j * cmath.pi / self.modulus)
        return sum(c * z ** e for e, c in enumerate(self.coeffs))

    def to_json(self) -> dict:
        """Exponent-map encoding: modulus plus [exponent, coefficient] pairs."""
        return {"modulus": self.modulus, "terms": [[e, c] for e, c in enumerate(self.coeffs) if c]}

    @classmethod
    def from_json(cls, data: dict) -> "CycInt":
        return cls(data["modulus"], {e: c for e, c in data["terms"]})

    def __repr__(self):
        return "CycInt(%d, %s)" % (self.modulus, self.format())

    def format(self, symbol: str = "z") -> str:
        parts = []
        for e, c in enumerate(self.coeffs):
            if not c:
                continue
            if e == 0:
                parts.append(str(c))
                continue
            mon = "%s^%d" % (symbol, e) if e > 1 else symbol
            parts.append(mon if c == 1 else "-" + mon if c == -1 else "%d*%s" % (c, mon))
        return " + ".join(parts).replace("+ -", "- ") or "0"


def _phi(n: int, p: int) -> int:
    return 1 if n == 1 else n - n // p


def _reduce(n: int, p: int, terms: dict) -> tuple:
    if n == 1:
        return (sum(terms.values()),)
    phi = _phi(n, p)
    m = n // p
    out = [0] * phi
    for e, c in terms.items():
        if not c:
            continue
        e %= n
        if e < phi:
            out[e] += c
        else:
            base = e - (p - 1) * m
            for j in range(p - 1):
                out[base + j * m] -= c
    return tuple(out)


def root_power(n: int, i: int) -> CycInt:
    """``zeta_n ** i``."""
    if n == 1:
        return CycInt(1, [1])
    return CycInt(n, {i % n: 1})


def cyc_add(a: CycInt, b: CycInt) -> CycInt:
    return a + b


def cyc_mul(a: CycInt, b: CycInt) -> CycInt:
    return a * b


def cyc_eq(a: CycInt, b: CycInt) -> bool:
    return a == b


# -- traces -------------------------------------------------------------------

def _ring(params: GroupParams) -> int:
    return max(params.q, params.r)


def fixed_points(e: WreathElement) -> int:
    """Fixed points of ``to_permutation(e)`` without building it."""
    if e.shift:
        return 0
    return e.params.q * sum(1 for v in e.base if v == 0)


def trace(e: WreathElement) -> CycInt:
    P = e.params
    n = _ring(P)
    return (
        CycInt(n, [fixed_points(e)])
        + root_power(P.q, sum(e.base)).embed(n)
        + root_power(P.r, e.shift).embed(n)
    )


def trace_via_permutation(e: WreathElement) -> CycInt:
    P = e.params
    n = _ring(P)
    fix = permcore.fixed_point_count(W.to_permutation(e))
    return CycInt(n, [fix]) + root_power(P.q, sum(e.base)).embed(n) + root_power(P.r, e.shift).embed(n)


# -- the closed forms ---------------------------------------------------------------

def family_words(params: GroupParams) -> dict:
    """The six elements whose power traces have closed forms."""
    x, y = W.gen_x(params), W.gen_y(params)
    yi = W.invert(y)
    a3 = W.conj(x, y) * x * W.conj(x, yi)
    xyx = x * y * x
    return {
        "X": x,
        "Y": y,
        "XY": x * y,
        "X^Y X X^(Y^-1)": a3,
        "XYX": xyx,
        "X^Y X X^(Y^-1) XYX": a3 * xyx,
    }


def closed_forms(params: GroupParams) -> dict:
    """Family name -> function of i giving the predicted trace."""
    q, r = params.q, params.r
    n = _ring(params)

    def zq(k):
        return root_power(q, k).embed(n)

    def zr(k):
        return root_power(r, k).embed(n)

    def const(c):
        return CycInt(n, [c])

    return {
        "X": lambda i: const(q * r - q + 1) + zq(i),
        "Y": lambda i: const(1) + zr(i),
        "XY": lambda i: zq(i) + zr(i),
        "X^Y X X^(Y^-1)": lambda i: const(q * r - 3 * q + 1) + zq(3 * i),
        "XYX": lambda i: zq(2 * i) + zr(i),
        "X^Y X X^(Y^-1) XYX": lambda i: zq(5 * i) + zr(i),
    }


def closed_form_strings(params: GroupParams) -> list:
    """Human-readable closed forms with q and r substituted."""
    q, r = params.q, params.r
    zq, zr = "ζ_%d" % q, "ζ_%d" % r
    return [
        ("X", "Tr(X^i) = %d + %s^i" % (q * r - q + 1, zq)),
        ("Y", "Tr(Y^i) = 1 + %s^i" % zr),
        ("XY", "Tr((XY)^i) = %s^i + %s^i" % (zq, zr)),
        ("X^Y X X^(Y^-1)", "Tr((X^Y X X^(Y^-1))^i) = %d + %s^(3i)" % (q * r - 3 * q + 1, zq)),
        ("XYX", "Tr((XYX)^i) = %s^(2i) + %s^i" % (zq, zr)),
        ("X^Y X X^(Y^-1) XYX", "Tr((X^Y X X^(Y^-1) XYX)^i) = %s^(5i) + %s^i" % (zq, zr)),
    ]


@dataclass
class TraceCheck:
    ok: bool
    checked: int = 0
    counterexample: dict | None = None
    per_family: dict = field(default_factory=dict)

    def __bool__(self):
        return self.ok


def verify_trace_formulas(params: GroupParams) -> TraceCheck:
    """Compare every non-identity power of each family with its closed form."""
    words = family_words(params)
    forms = closed_forms(params)
    checked = 0
    per_family = {}
    for name, g in words.items():
        order = W.element_order(g)
        h = g
        for i in range(1, order):
            got, want = trace(h), forms[name](i)
            checked += 1
            if got != want:
                return TraceCheck(False, checked, {
                    "family": name, "i": i,
                    "computed": got.to_json(), "closed_form": want.to_json(),
                }, per_family)
            h = h * g
        per_family[name] = order - 1
    return TraceCheck(True, checked, None, per_family)


# -- non-conjugacy certificates ---------------------------------------------------

@dataclass
class CertificateReport:
    holds: bool
    compared: int
    collisions: list
    conjugate_pairs: list

    @property
    def collision_count(self) -> int:
        return len(self.collisions)

    def to_json(self) -> dict:
        return {
            "holds": self.holds,
            "compared_classes": self.compared,
            "collisions": self.collisions,
            "conjugate_pairs": self.conjugate_pairs,
        }


def _noncentral_powers(triple) -> dict:
    """Trace value -> list of (member, exponent, element) for non-central powers."""
    out = defaultdict(list)
    for name, g in zip(("a", "b", "ab"), triple.members):
        order = W.element_order(g)
        h = g
        for i in range(1, order):
            if not W.is_central(h):
                out[trace(h)].append((name, i, h))
            h = h * g
    return out


def distinctness_certificate(t1, t2) -> CertificateReport:
    """Non-conjugacy of the non-central powers of two triples.

    Powers with different traces cannot be conjugate.  Trace collisions are
    recorded and settled by exact conjugacy; the certificate fails only when
    a colliding pair really is conjugate.
    """
    left = _noncentral_powers(t1)
    right = _noncentral_powers(t2)
    collisions, conjugate_pairs = [], []
    for value in sorted(set(left) & set(right), key=lambda c: c.coeffs):
        for n1, i, g in left[value]:
            for n2, j, h in right[value]:
                entry = {"left": "%s^%d" % (n1, i), "right": "%s^%d" % (n2, j)}
                collisions.append(entry)
                if W.are_conjugate(g, h):
                    conjugate_pairs.append(entry)
    compared = sum(len(v) for v in left.values()) * sum(len(v) for v in right.values())
    return CertificateReport(not conjugate_pairs, compared, collisions, conjugate_pairs)
