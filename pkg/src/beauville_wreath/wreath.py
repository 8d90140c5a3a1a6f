"""The wreath product C_q wr C_r as pairs (base vector, shift).

An element ``(v, s)`` acts on the points ``k*r + j`` (level ``k`` in Z_q,
position ``j`` in 1..r) by ``(k, j) -> (k + v[j], j + s)``.  With the right
action used by :mod:`permcore` this forces the product

    (v, s) * (w, t) = (v + w o shift_s, s + t),   (w o shift_s)[j] = w[j + s]

so that :func:`to_permutation` is a homomorphism.  The generator ``x`` has a
single unit entry at the middle position ``m = (r + 1) / 2`` and ``y`` is the
unit shift; their images are exactly the permutations Xi and Upsilon.

Base vectors are stored 0-based internally: ``base[i]`` is position ``i + 1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable

from . import permcore
from .permcore import Permutation


class InvalidParams(ValueError):
    pass


class ParameterMismatch(ValueError):
    pass


class NotInImage(ValueError):
    pass


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def prime_power_exponent(n: int, p: int) -> int | None:
    """``k`` with ``n == p**k`` and ``k >= 1``, else None."""
    if n < p:
        return None
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k if n == 1 else None


@dataclass(frozen=True)
class GroupParams:
    p: int
    q: int
    r: int

    def __post_init__(self):
        p, q, r = self.p, self.q, self.r
        if not _is_prime(p):
            raise InvalidParams("p=%d is not prime" % p)
        if p == 2:
            raise InvalidParams("p must be odd")
        if prime_power_exponent(q, p) is None:
            raise InvalidParams("q=%d is not a positive power of p=%d" % (q, p))
        if prime_power_exponent(r, p) is None:
            raise InvalidParams("r=%d is not a positive power of p=%d" % (r, p))

    @classmethod
    def from_qr(cls, q: int, r: int) -> "GroupParams":
        p = next((d for d in range(2, q + 1) if q % d == 0), None)
        if p is None:
            raise InvalidParams("q=%d is not a prime power" % q)
        return cls(p, q, r)

    @property
    def b(self) -> int:
        return prime_power_exponent(self.q, self.p)

    @property
    def a(self) -> int:
        return prime_power_exponent(self.r, self.p)

    @property
    def mid(self) -> int:
        """The 1-based middle position ``(r + 1) / 2``."""
        return (self.r + 1) // 2

    @property
    def degree(self) -> int:
        return self.q * self.r

    @property
    def group_order(self) -> int:
        return self.q ** self.r * self.r

    @property
    def quotient_order(self) -> int:
        return self.q ** (self.r - 1) * self.r

    def supports_structure(self) -> bool:
        """Whether the witness structure is defined (r > 3 when p = 3)."""
        return not (self.p == 3 and self.r <= 3)

    def __str__(self):
        return "C_%d wr C_%d" % (self.q, self.r)


class WreathElement:
    __slots__ = ("params", "base", "shift", "_hash")

    def __init__(self, params: GroupParams, base: Iterable[int], shift: int = 0):
        base = tuple(int(c) % params.q for c in base)
        if len(base) != params.r:
            raise ValueError("base has length %d, expected %d" % (len(base), params.r))
        self.params = params
        self.base = base
        self.shift = int(shift) % params.r
        self._hash = None

    @classmethod
    def _trusted(cls, params, base, shift):
        obj = cls.__new__(cls)
        obj.params = params
        obj.base = base
        obj.shift = shift
        obj._hash = None
        return obj

    def __eq__(self, other):
        if not isinstance(other, WreathElement):
            return NotImplemented
        return self.params == other.params and self.base == other.base and self.shift == other.shift

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.params, self.base, self.shift))
        return self._hash

    def __mul__(self, other):
        return multiply(self, other)

    def __pow__(self, k: int):
        return power(self, k)

    def __invert__(self):
        return invert(self)

    def __repr__(self):
        return "WreathElement(%s; %d)" % (",".join(map(str, self.base)), self.shift)

    def is_identity(self) -> bool:
        return self.shift == 0 and not any(self.base)


def identity(params: GroupParams) -> WreathElement:
    return WreathElement._trusted(params, (0,) * params.r, 0)


def gen_x(params: GroupParams) -> WreathElement:
    base = [0] * params.r
    base[params.mid - 1] = 1
    return WreathElement(params, base, 0)


def gen_y(params: GroupParams) -> WreathElement:
    return WreathElement(params, [0] * params.r, 1)


def unit(params: GroupParams, position: int, value: int = 1) -> WreathElement:
    """The base element with ``value`` at 1-based ``position`` (read mod r)."""
    base = [0] * params.r
    base[(position - 1) % params.r] = value
    return WreathElement(params, base, 0)


def _check(a: WreathElement, b: WreathElement) -> None:
    if a.params != b.params:
        raise ParameterMismatch("%s vs %s" % (a.params, b.params))


def multiply(a: WreathElement, b: WreathElement) -> WreathElement:
    _check(a, b)
    P = a.params
    q, r, s = P.q, P.r, a.shift
    w = b.base
    base = tuple((v + w[(i + s) % r]) % q for i, v in enumerate(a.base))
    return WreathElement._trusted(P, base, (s + b.shift) % r)


def invert(a: WreathElement) -> WreathElement:
    # (v, s)^-1 = (-(v o shift_{-s}), -s)
    P = a.params
    q, r, s = P.q, P.r, a.shift
    v = a.base
    base = tuple(-v[(i - s) % r] % q for i in range(r))
    return WreathElement._trusted(P, base, -s % r)


def power(a: WreathElement, k: int) -> WreathElement:
    if k < 0:
        return power(invert(a), -k)
    result = identity(a.params)
    sq = a
    while k:
        if k & 1:
            result = multiply(result, sq)
        sq = multiply(sq, sq)
        k >>= 1
    return result


def conj(a: WreathElement, g: WreathElement) -> WreathElement:
    """``a^g = g^-1 a g``."""
    return multiply(multiply(invert(g), a), g)


def commutator(a: WreathElement, b: WreathElement) -> WreathElement:
    return multiply(multiply(invert(a), invert(b)), multiply(a, b))


def element_order(a: WreathElement) -> int:
    e = identity(a.params)
    g = a
    n = 1
    while g != e:
        g = multiply(g, a)
        n += 1
    return n


def is_central(a: WreathElement) -> bool:
    return a.shift == 0 and len(set(a.base)) == 1


def center_elements(params: GroupParams) -> list:
    """The diagonal elements ``(c, ..., c; 0)``."""
    return [WreathElement(params, (c,) * params.r, 0) for c in range(params.q)]


def all_elements(params: GroupParams):
    """Iterate over all ``q**r * r`` elements (small parameters only)."""
    from itertools import product

    for shift in range(params.r):
        for base in product(range(params.q), repeat=params.r):
            yield WreathElement._trusted(params, base, shift)


# -- permutation representation ---------------------------------------------

def xi(params: GroupParams) -> Permutation:
    q, r, m = params.q, params.r, params.mid
    return Permutation.from_cycles(q * r, [[m + k * r for k in range(q)]])


def upsilon(params: GroupParams) -> Permutation:
    q, r = params.q, params.r
    return Permutation.from_cycles(q * r, [[k * r + j for j in range(1, r + 1)] for k in range(q)])


def involution_t(params: GroupParams) -> Permutation:
    """``(1, qr)(2, qr - 1)...``: the point reflection ``j -> qr + 1 - j``."""
    n = params.degree
    return Permutation(n + 1 - j for j in range(1, n + 1))


def to_permutation(e: WreathElement) -> Permutation:
    q, r = e.params.q, e.params.r
    v, s = e.base, e.shift
    images = [0] * (q * r)
    for k in range(q):
        for i in range(r):
            images[k * r + i] = ((k + v[i]) % q) * r + (i + s) % r + 1
    return Permutation._trusted(tuple(images))


def from_permutation(g: Permutation, params: GroupParams) -> WreathElement:
    """Inverse of :func:`to_permutation`; raises NotInImage off the image."""
    q, r = params.q, params.r
    if g.degree != q * r:
        raise NotInImage("degree %d, expected %d" % (g.degree, q * r))
    img = g.images
    shift = (img[0] - 1) % r
    base = []
    for i in range(r):
        v = ((img[i] - 1) // r) % q
        base.append(v)
        for k in range(q):
            target = img[k * r + i] - 1
            if target // r != (k + v) % q or target % r != (i + shift) % r:
                raise NotInImage("permutation does not act on blocks as a wreath element")
    return WreathElement._trusted(params, tuple(base), shift)


def apply_t(e: WreathElement) -> WreathElement:
    """Conjugation by the involution t, as a map on wreath elements.

    ``t`` sends level ``k`` to ``-1 - k`` and position ``j`` to ``r + 1 - j``,
    which gives ``(v, s)^t = (w, -s)`` with ``w[j] = -v[r + 1 - j]``.
    """
    P = e.params
    q, r = P.q, P.r
    v = e.base
    base = tuple(-v[r - 1 - i] % q for i in range(r))
    return WreathElement._trusted(P, base, -e.shift % r)


def apply_t_via_permutation(e: WreathElement) -> WreathElement:
    """The same map computed through the permutation representation."""
    t = involution_t(e.params)
    g = permcore.conjugate(to_permutation(e), t)
    try:
        return from_permutation(g, e.params)
    except NotInImage as exc:  # t normalizes the image
        raise AssertionError("t failed to normalize the wreath product") from exc


# -- conjugacy ----------------------------------------------------------------

@dataclass(frozen=True, order=True)
class ConjInvariant:
    """Top shift plus base sums over the shift's position orbits, up to rotation."""

    shift: int
    orbit_sums: tuple

    def is_central(self) -> bool:
        return self.shift == 0 and len(set(self.orbit_sums)) <= 1


def _min_rotation(t: tuple) -> tuple:
    return min(t[i:] + t[:i] for i in range(len(t))) if t else t


def orbit_sums(e: WreathElement) -> tuple:
    r, q = e.params.r, e.params.q
    g = gcd(e.shift, r)  # gcd(0, r) == r
    sums = [0] * g
    for i, v in enumerate(e.base):
        sums[i % g] += v
    return tuple(c % q for c in sums)


def conj_invariant(e: WreathElement) -> ConjInvariant:
    return ConjInvariant(e.shift, _min_rotation(orbit_sums(e)))


def coset_invariant(e: WreathElement) -> ConjInvariant:
    """Class label of ``eZ`` in G/Z: least invariant over the central translates."""
    q, r = e.params.q, e.params.r
    sums = orbit_sums(e)
    step = r // len(sums)  # each orbit has r/g positions
    return min(
        ConjInvariant(e.shift, _min_rotation(tuple((c + z * step) % q for c in sums)))
        for z in range(q)
    )


def find_conjugator(a: WreathElement, b: WreathElement) -> WreathElement | None:
    """Some ``g`` with ``a^g == b``, or None when a and b are not conjugate.

    Conjugating by a power of y rotates the orbit sums into place; the
    remaining base difference ``d`` has zero orbit sums, so
    ``u[i + s] - u[i] = d[i]`` can be solved along each orbit.
    """
    _check(a, b)
    if conj_invariant(a) != conj_invariant(b):
        return None
    P = a.params
    q, r, s = P.q, P.r, a.shift
    y = gen_y(P)
    target = orbit_sums(b)
    for k in range(r):
        yk = power(y, k)
        a1 = conj(a, yk)
        if orbit_sums(a1) != target:
            continue
        d = [(w - v) % q for v, w in zip(a1.base, b.base)]
        u = [None] * r
        for start in range(r):
            if u[start] is not None:
                continue
            u[start] = 0
            i = start
            while u[(i + s) % r] is None:
                u[(i + s) % r] = (u[i] + d[i]) % q
                i = (i + s) % r
        g = multiply(yk, WreathElement(P, u, 0))
        if conj(a, g) == b:
            return g
    raise AssertionError("equal invariants without a conjugator: %r, %r" % (a, b))


def conjugacy_orbit(e: WreathElement) -> set:
    """Conjugacy class of ``e`` by closure under conjugation by x and y."""
    gens = (gen_x(e.params), gen_y(e.params))
    seen = {e}
    stack = [e]
    while stack:
        a = stack.pop()
        for g in gens:
            b = conj(a, g)
            if b not in seen:
                seen.add(b)
                stack.append(b)
    return seen


def are_conjugate(a: WreathElement, b: WreathElement, method: str = "invariant") -> bool:
    """Conjugacy in C_q wr C_r.

    ``method="oracle"`` decides it by enumerating the class of ``a`` instead
    of comparing invariants.
    """
    _check(a, b)
    if method == "invariant":
        return conj_invariant(a) == conj_invariant(b)
    if method == "oracle":
        return b in conjugacy_orbit(a)
    raise ValueError("unknown method %r" % method)


# -- generation ---------------------------------------------------------------

def frattini_image(e: WreathElement) -> tuple:
    p = e.params.p
    return (sum(e.base) % p, e.shift % p)


def generates(a: WreathElement, b: WreathElement) -> bool:
    """Burnside basis test: the Frattini images span (Z_p)^2."""
    _check(a, b)
    (a1, a2), (b1, b2) = frattini_image(a), frattini_image(b)
    return (a1 * b2 - a2 * b1) % a.params.p != 0


# -- presentation -------------------------------------------------------------

def verify_relations(params: GroupParams) -> dict:
    """Check the defining relations on Xi, Upsilon and the order of <Xi, Upsilon>.

    Returns a mapping of relation name to outcome plus the computed order;
    ``all(...)`` over the boolean entries is the overall result.
    """
    X, Y = xi(params), upsilon(params)
    e = permcore.identity(params.degree)
    out = {
        "x^q": permcore.power(X, params.q) == e,
        "y^r": permcore.power(Y, params.r) == e,
    }
    for i in range(1, (params.r - 1) // 2 + 1):
        Xc = permcore.conjugate(X, permcore.power(Y, i))
        out["[x,x^(y^%d)]" % i] = permcore.commutator(X, Xc) == e
    order = permcore.group_order([X, Y])
    out["order"] = order
    out["order=q^r*r"] = order == params.group_order
    return out


def relations_hold(params: GroupParams) -> bool:
    return all(v for k, v in verify_relations(params).items() if k != "order")
