"""Permutations of {1..n} and a deterministic Schreier-Sims stabilizer chain.

Permutations act on the right: ``compose(a, b)`` first applies ``a`` and then
``b``, and conjugation is ``a^b = b^-1 a b``.  Points are 1-based so that the
cycles written down for the wreath product appear here verbatim.
"""

from __future__ import annotations

from collections import deque
from math import gcd
from typing import Iterable, Sequence


class DegreeMismatch(ValueError):
    pass


class Permutation:
    """An immutable bijection of {1..degree}.

    ``images[j - 1]`` is the image of the point ``j``.
    """

    __slots__ = ("_images", "_hash")

    def __init__(self, images: Sequence[int]):
        images = tuple(int(i) for i in images)
        n = len(images)
        if n == 0:
            raise ValueError("degree must be positive")
        if sorted(images) != list(range(1, n + 1)):
            raise ValueError("not a permutation of 1..%d" % n)
        self._images = images
        self._hash = None

    @classmethod
    def _trusted(cls, images: tuple) -> "Permutation":
        obj = cls.__new__(cls)
        obj._images = images
        obj._hash = None
        return obj

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(range(1, n + 1))

    @classmethod
    def from_cycles(cls, n: int, cycles: Iterable[Sequence[int]]) -> "Permutation":
        """Build a permutation of degree ``n`` from disjoint cycles."""
        images = list(range(1, n + 1))
        seen = set()
        for cycle in cycles:
            cycle = list(cycle)
            for a in cycle:
                if not 1 <= a <= n or a in seen:
                    raise ValueError("bad cycle %r" % (cycle,))
                seen.add(a)
            for a, b in zip(cycle, cycle[1:] + cycle[:1]):
                images[a - 1] = b
        return cls(images)

    @property
    def degree(self) -> int:
        return len(self._images)

    @property
    def images(self) -> tuple:
        return self._images

    def __call__(self, j: int) -> int:
        return self._images[j - 1]

    def __eq__(self, other):
        if not isinstance(other, Permutation):
            return NotImplemented
        return self._images == other._images

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self._images)
        return self._hash

    def __mul__(self, other: "Permutation") -> "Permutation":
        return compose(self, other)

    def __invert__(self) -> "Permutation":
        return inverse(self)

    def __pow__(self, k: int) -> "Permutation":
        return power(self, k)

    def is_identity(self) -> bool:
        return all(i == j for j, i in enumerate(self._images, 1))

    def cycles(self, include_fixed: bool = False) -> list:
        out = []
        seen = set()
        for start in range(1, self.degree + 1):
            if start in seen:
                continue
            cycle = [start]
            seen.add(start)
            j = self(start)
            while j != start:
                cycle.append(j)
                seen.add(j)
                j = self(j)
            if include_fixed or len(cycle) > 1:
                out.append(tuple(cycle))
        return out

    def cycle_type(self) -> tuple:
        return tuple(sorted(len(c) for c in self.cycles(include_fixed=True)))

    def __repr__(self):
        cycles = self.cycles()
        if not cycles:
            return "Permutation.identity(%d)" % self.degree
        return "".join("(%s)" % ",".join(map(str, c)) for c in cycles)


def identity(n: int) -> Permutation:
    return Permutation.identity(n)


def compose(a: Permutation, b: Permutation) -> Permutation:
    """The permutation ``j -> b(a(j))``."""
    if a.degree != b.degree:
        raise DegreeMismatch("degrees %d and %d differ" % (a.degree, b.degree))
    bi = b._images
    return Permutation._trusted(tuple(bi[i - 1] for i in a._images))


def inverse(a: Permutation) -> Permutation:
    out = [0] * a.degree
    for j, i in enumerate(a._images, 1):
        out[i - 1] = j
    return Permutation._trusted(tuple(out))


def conjugate(a: Permutation, by: Permutation) -> Permutation:
    """``by^-1 * a * by``."""
    if a.degree != by.degree:
        raise DegreeMismatch("degrees %d and %d differ" % (a.degree, by.degree))
    # (a^by)(by(j)) = by(a(j))
    bi = by._images
    out = [0] * a.degree
    for j, i in enumerate(a._images, 1):
        out[bi[j - 1] - 1] = bi[i - 1]
    return Permutation._trusted(tuple(out))


def power(a: Permutation, k: int) -> Permutation:
    if k < 0:
        return power(inverse(a), -k)
    result = identity(a.degree)
    base = a
    while k:
        if k & 1:
            result = compose(result, base)
        base = compose(base, base)
        k >>= 1
    return result


def order(a: Permutation) -> int:
    result = 1
    for c in a.cycles():
        result = result * len(c) // gcd(result, len(c))
    return result


def fixed_point_count(a: Permutation) -> int:
    return sum(1 for j, i in enumerate(a._images, 1) if i == j)


def commutator(a: Permutation, b: Permutation) -> Permutation:
    """``[a, b] = a^-1 b^-1 a b``."""
    return compose(compose(inverse(a), inverse(b)), compose(a, b))


class _Level:
    __slots__ = ("point", "gens", "transversal", "_inv")

    def __init__(self, point: int, degree: int):
        self.point = point
        self.gens: list = []
        self.transversal = {point: identity(degree)}
        self._inv: dict = {}

    def inverse_rep(self, pt: int) -> Permutation:
        inv = self._inv.get(pt)
        if inv is None:
            inv = self._inv[pt] = inverse(self.transversal[pt])
        return inv


class StabChain:
    """Base, strong generators and explicit transversals for ``<gens>``.

    Built by the deterministic Schreier-Sims algorithm: every Schreier
    generator of every level is sifted through the levels below it.
    """

    def __init__(self, gens: Iterable[Permutation], degree: int | None = None):
        gens = list(gens)
        if degree is None:
            if not gens:
                raise ValueError("degree needed for an empty generating set")
            degree = gens[0].degree
        for g in gens:
            if g.degree != degree:
                raise DegreeMismatch("generator of degree %d, expected %d" % (g.degree, degree))
        self.degree = degree
        self.generators = tuple(gens)
        self.levels: list[_Level] = []
        for g in gens:
            if not g.is_identity():
                residue, _ = self.sift(g)
                if not residue.is_identity():
                    self._add(0, g)

    @property
    def base(self) -> tuple:
        return tuple(level.point for level in self.levels)

    def transversal_sizes(self) -> tuple:
        return tuple(len(level.transversal) for level in self.levels)

    def order(self) -> int:
        n = 1
        for size in self.transversal_sizes():
            n *= size
        return n

    def sift(self, g: Permutation, start: int = 0):
        """Strip ``g`` through the chain from level ``start``.

        Returns ``(residue, level)`` where ``level`` is the index at which the
        sift stopped (``len(levels)`` when it ran through every level).
        """
        for i in range(start, len(self.levels)):
            level = self.levels[i]
            pt = g(level.point)
            if pt not in level.transversal:
                return g, i
            if pt != level.point:
                g = compose(g, level.inverse_rep(pt))
        return g, len(self.levels)

    def contains(self, g: Permutation) -> bool:
        if g.degree != self.degree:
            raise DegreeMismatch("degree %d, chain has degree %d" % (g.degree, self.degree))
        residue, _ = self.sift(g)
        return residue.is_identity()

    def _add(self, i: int, g: Permutation) -> None:
        if i == len(self.levels):
            moved = next(j for j in range(1, self.degree + 1) if g(j) != j)
            self.levels.append(_Level(moved, self.degree))
        level = self.levels[i]
        level.gens.append(g)
        trans = level.transversal

        pending = []
        # old orbit points only need the new generator
        for pt in list(trans):
            pending.append((pt, g))
        queue = deque()

        def visit(pt, s):
            img = s(pt)
            if img not in trans:
                trans[img] = compose(trans[pt], s)
                queue.append(img)
                return
            schreier = compose(compose(trans[pt], s), level.inverse_rep(img))
            if not schreier.is_identity():
                residue, _ = self.sift(schreier, i + 1)
                if not residue.is_identity():
                    self._add(i + 1, residue)

        for pt, s in pending:
            visit(pt, s)
        while queue:
            pt = queue.popleft()
            for s in list(level.gens):
                visit(pt, s)


def stab_chain(gens: Iterable[Permutation], degree: int | None = None) -> StabChain:
    return StabChain(gens, degree)


def group_order(gens: Iterable[Permutation], degree: int | None = None) -> int:
    gens = list(gens)
    if not gens:
        return 1
    return StabChain(gens, degree).order()


def contains(chain: StabChain, g: Permutation) -> bool:
    return chain.contains(g)


def closure(gens: Iterable[Permutation], degree: int | None = None, limit: int | None = None) -> set:
    """All elements of ``<gens>`` by breadth-first multiplication.

    Raises ``OverflowError`` once more than ``limit`` elements are found.
    """
    gens = list(gens)
    if degree is None:
        degree = gens[0].degree
    e = identity(degree)
    seen = {e}
    queue = deque([e])
    while queue:
        a = queue.popleft()
        for s in gens:
            b = compose(a, s)
            if b not in seen:
                seen.add(b)
                if limit is not None and len(seen) > limit:
                    raise OverflowError("closure exceeds %d elements" % limit)
                queue.append(b)
    return seen
