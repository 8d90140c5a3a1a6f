"""The central quotient G/Z and a brute-force engine for small groups.

Z is the diagonal subgroup, so a coset is represented by the element whose
first base entry is 0.  ``SmallGroup`` is a fully enumerated group used as
the validation oracle; groups built from the wreath coding run their closure
and class computations through :mod:`beauville_wreath.kernels`.
"""

from __future__ import annotations

import os
from collections import deque
from dataclasses import dataclass
from typing import Callable, Hashable

from . import kernels
from . import wreath as W
from .wreath import GroupParams, WreathElement

DEFAULT_BUDGET = 10 ** 5


class BudgetExceeded(RuntimeError):
    def __init__(self, order: int, budget: int, label: str = ""):
        self.order = order
        self.budget = budget
        super().__init__("group of order %s exceeds the enumeration budget %d" % (label or order, budget))


def default_budget() -> int:
    env = os.environ.get("BEAUVILLE_BUDGET")
    return int(env) if env else DEFAULT_BUDGET


def _order_label(params: GroupParams, quotient: bool) -> str:
    exp = params.b * (params.r - (1 if quotient else 0)) + params.a
    return "%d^%d" % (params.p, exp)


# -- cosets -------------------------------------------------------------------

class CosetElement:
    __slots__ = ("rep",)

    def __init__(self, rep: WreathElement):
        z = rep.base[0]
        if z:
            q = rep.params.q
            rep = WreathElement._trusted(rep.params, tuple((c - z) % q for c in rep.base), rep.shift)
        self.rep = rep

    @property
    def params(self) -> GroupParams:
        return self.rep.params

    def __eq__(self, other):
        if not isinstance(other, CosetElement):
            return NotImplemented
        return self.rep == other.rep

    def __hash__(self):
        return hash(("coset", self.rep))

    def __mul__(self, other):
        return CosetElement(W.multiply(self.rep, other.rep))

    def __pow__(self, k):
        return CosetElement(W.power(self.rep, k))

    def __invert__(self):
        return CosetElement(W.invert(self.rep))

    def is_identity(self) -> bool:
        return self.rep.is_identity()

    def __repr__(self):
        return "Coset(%s; %d)" % (",".join(map(str, self.rep.base)), self.rep.shift)


def project(e: WreathElement) -> CosetElement:
    return CosetElement(e)


def coset_identity(params: GroupParams) -> CosetElement:
    return CosetElement(W.identity(params))


def coset_order(c: CosetElement) -> int:
    n = 1
    g = c
    while not g.is_identity():
        g = g * c
        n += 1
    return n


def lifts(c: CosetElement) -> list:
    """All ``q`` elements of G in the coset."""
    return [W.multiply(c.rep, z) for z in W.center_elements(c.params)]


def coset_conjugate_test(a: CosetElement, b: CosetElement) -> bool:
    """Conjugacy in G/Z: some central translate of b's lift is conjugate to a's lift."""
    target = W.conj_invariant(a.rep)
    return any(W.conj_invariant(lift) == target for lift in lifts(b))


def apply_t_coset(c: CosetElement) -> CosetElement:
    """The automorphism of G/Z induced by t (t maps Z onto Z)."""
    return CosetElement(W.apply_t(c.rep))


# -- coding between wreath elements and kernel codes -----------------------------

def to_code(e: WreathElement | CosetElement, quotient: bool | None = None) -> int:
    if isinstance(e, CosetElement):
        rep, quotient = e.rep, True if quotient is None else quotient
    else:
        rep, quotient = e, bool(quotient)
    P = rep.params
    return kernels.encode(P.q, P.r, quotient, rep.base, rep.shift)


def from_code(params: GroupParams, code: int, quotient: bool):
    v, s = kernels.decode(params.q, params.r, quotient, code)
    e = WreathElement(params, v, s)
    return CosetElement(e) if quotient else e


# -- small groups ---------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class SmallGroup:
    """An enumerated finite group with hashable element keys.

    ``kernel`` is ``(q, r, quotient)`` when the keys are wreath codes
    ``0..n-1``; the brute-force routines then run on the compiled kernels.
    """

    elements: tuple
    mul: Callable[[Hashable, Hashable], Hashable]
    inv: Callable[[Hashable], Hashable]
    identity: Hashable
    generators: tuple
    kernel: tuple | None = None
    params: GroupParams | None = None

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    def power(self, a, k: int):
        if k < 0:
            a, k = self.inv(a), -k
        result = self.identity
        while k:
            if k & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            k >>= 1
        return result

    def conj(self, a, g):
        return self.mul(self.mul(self.inv(g), a), g)

    def element_order(self, a) -> int:
        n, g = 1, a
        while g != self.identity:
            g = self.mul(g, a)
            n += 1
        return n

    def key(self, e):
        """Key of a WreathElement or CosetElement in a wreath-coded group."""
        if self.kernel is None:
            raise TypeError("not a wreath-coded group")
        return to_code(e, self.kernel[2])


def _wreath_group(params: GroupParams, quotient: bool, budget: int | None) -> SmallGroup:
    budget = default_budget() if budget is None else budget
    q, r = params.q, params.r
    n = params.quotient_order if quotient else params.group_order
    if n > budget:
        raise BudgetExceeded(n, budget, _order_label(params, quotient))
    gx = to_code(W.gen_x(params), quotient)
    gy = to_code(W.gen_y(params), quotient)
    return SmallGroup(
        elements=tuple(range(n)),
        mul=lambda a, b: kernels.mul(q, r, quotient, a, b),
        inv=lambda a: kernels.inv(q, r, quotient, a),
        identity=0,
        generators=(gx, gy),
        kernel=(q, r, quotient),
        params=params,
    )


def enumerate_quotient(params: GroupParams, budget: int | None = None) -> SmallGroup:
    """G/Z as a SmallGroup of ``q**(r-1) * r`` coset codes."""
    return _wreath_group(params, True, budget)


def enumerate_group(params: GroupParams, budget: int | None = None) -> SmallGroup:
    """All of C_q wr C_r as a SmallGroup of ``q**r * r`` codes."""
    return _wreath_group(params, False, budget)


def _smallest_prime_factor(n: int) -> int:
    d = 2
    while d * d <= n:
        if n % d == 0:
            return d
        d += 1
    return n


def brute_class_labels(g: SmallGroup):
    """Map each element key to a class id (the first key of its class)."""
    if g.kernel is not None:
        return kernels.class_labels(*g.kernel)
    labels = {}
    for start in g.elements:
        if start in labels:
            continue
        labels[start] = start
        stack = [start]
        while stack:
            a = stack.pop()
            for s in g.generators:
                b = g.conj(a, s)
                if b not in labels:
                    labels[b] = start
                    stack.append(b)
    return labels


def brute_classes(g: SmallGroup) -> list:
    labels = brute_class_labels(g)
    classes: dict = {}
    for e in g.elements:
        classes.setdefault(labels[e], []).append(e)
    return [frozenset(c) for c in classes.values()]


def closure_size(g: SmallGroup, gens, limit: int | None = None) -> int:
    """Size of the subgroup generated by ``gens``; stops once above ``limit``."""
    limit = g.order if limit is None else limit
    gens = list(gens)
    if g.kernel is not None:
        return kernels.closure_size(*g.kernel, gens, limit)
    seen = {g.identity}
    queue = deque([g.identity])
    while queue:
        a = queue.popleft()
        for s in gens:
            b = g.mul(a, s)
            if b not in seen:
                seen.add(b)
                if len(seen) > limit:
                    return len(seen)
                queue.append(b)
    return len(seen)


def brute_generates(g: SmallGroup, a, b) -> bool:
    """Closure of {a, b} reaches the whole group.

    A proper subgroup has index at least the smallest prime dividing |G|, so
    the closure may stop as soon as it exceeds ``|G| / spf(|G|)`` elements.
    """
    n = g.order
    if n == 1:
        return True
    bound = n // _smallest_prime_factor(n)
    return closure_size(g, [a, b], bound) > bound


def brute_center(g: SmallGroup) -> set:
    return {
        a for a in g.elements
        if all(g.mul(a, s) == g.mul(s, a) for s in g.generators)
    }
