"""Brute-force reference implementations, independent of the package internals.

Rings are pure-Python: Z/n elements are ints, truncated polynomial rings use
coefficient tuples.  Algebras multiply by explicit formulas rather than
structure constants.  Everything here is quadratic or worse and only meant
for rings of a few dozen elements.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Callable


@dataclass
class Ring:
    elements: list
    add: Callable
    mul: Callable
    zero: object
    one: object

    def neg(self, a):
        return next(b for b in self.elements if self.add(a, b) == self.zero)


def zmod(n: int) -> Ring:
    return Ring(list(range(n)), lambda a, b: (a + b) % n, lambda a, b: (a * b) % n, 0, 1 % n)


def trunc(base: Ring, d: int) -> Ring:
    """base[x]/(x^d); elements are coefficient tuples, low degree first."""
    elements = [tuple(reversed(c)) for c in product(base.elements, repeat=d)]

    def add(a, b):
        return tuple(base.add(u, v) for u, v in zip(a, b))

    def mul(a, b):
        out = [base.zero] * d
        for i in range(d):
            for j in range(d - i):
                out[i + j] = base.add(out[i + j], base.mul(a[i], b[j]))
        return tuple(out)

    zero = (base.zero,) * d
    return Ring(elements, add, mul, zero, (base.one,) + (base.zero,) * (d - 1))


def prod_ring(r1: Ring, r2: Ring) -> Ring:
    return Ring(
        [(a, b) for a in r1.elements for b in r2.elements],
        lambda p, q: (r1.add(p[0], q[0]), r2.add(p[1], q[1])),
        lambda p, q: (r1.mul(p[0], q[0]), r2.mul(p[1], q[1])),
        (r1.zero, r2.zero),
        (r1.one, r2.one),
    )


# -- ideals --------------------------------------------------------------------


def generate(R: Ring, gens) -> frozenset:
    ideal = {R.zero}
    frontier = [R.mul(r, g) for g in gens for r in R.elements]
    while frontier:
        new = set()
        for a in frontier:
            if a not in ideal:
                ideal.add(a)
                new.add(a)
        frontier = [R.add(a, b) for a in new for b in ideal]
    return frozenset(ideal)


def all_ideals(R: Ring) -> set[frozenset]:
    """Every ideal of a finite ring is generated by at most |R| elements; close
    principal ideals under sums until nothing new appears."""
    ideals = {generate(R, [a]) for a in R.elements}
    while True:
        more = {generate(R, list(i | j)) for i in ideals for j in ideals}
        if more <= ideals:
            return ideals
        ideals |= more


def ideal_product(R: Ring, i, j) -> frozenset:
    return generate(R, [R.mul(a, b) for a in i for b in j])


def radical(R: Ring, ideal) -> frozenset:
    out = set()
    for a in R.elements:
        p = a
        for _ in range(len(R.elements) + 1):
            if p in ideal:
                out.add(a)
                break
            p = R.mul(p, a)
    return frozenset(out)


def is_prime(R: Ring, ideal) -> bool:
    if len(ideal) == len(R.elements):
        return False
    return all(a in ideal or b in ideal for a in R.elements for b in R.elements if R.mul(a, b) in ideal)


def annihilator(R: Ring, ideal) -> frozenset:
    return frozenset(r for r in R.elements if all(R.mul(r, a) == R.zero for a in ideal))


# -- algebras ------------------------------------------------------------------


@dataclass
class Algebra:
    R: Ring
    rank: int
    mul: Callable  # coordinate tuples -> coordinate tuple

    def elements(self):
        return [tuple(c) for c in product(self.R.elements, repeat=self.rank)]

    @property
    def zero(self):
        return (self.R.zero,) * self.rank


def alg_trunc(R: Ring, d: int) -> Algebra:
    return Algebra(R, d, trunc(R, d).mul)


def alg_quad(R: Ring, a) -> Algebra:
    def mul(f, g):
        (p, q), (r, s) = f, g
        return (R.add(R.mul(p, r), R.mul(a, R.mul(q, s))), R.add(R.mul(p, s), R.mul(q, r)))

    return Algebra(R, 2, mul)


def alg_group(R: Ring, n: int) -> Algebra:
    def mul(f, g):
        out = [R.zero] * n
        for i in range(n):
            for j in range(n):
                out[(i + j) % n] = R.add(out[(i + j) % n], R.mul(f[i], g[j]))
        return tuple(out)

    return Algebra(R, n, mul)


def alg_identity(R: Ring) -> Algebra:
    return Algebra(R, 1, lambda f, g: (R.mul(f[0], g[0]),))


def content(S: Algebra, f) -> frozenset:
    """Intersection of every ideal I with f in IS (coordinatewise for free S)."""
    out = frozenset(S.R.elements)
    for ideal in all_ideals(S.R):
        if all(c in ideal for c in f):
            out &= ideal
    return out


def is_mccoy(S: Algebra) -> bool:
    R = S.R
    elems = S.elements()
    for f in elems:
        if any(g != S.zero and S.mul(f, g) == S.zero for g in elems):
            if not any(r != R.zero and all(R.mul(r, c) == R.zero for c in f) for r in R.elements):
                return False
    return True


def is_weak_content(S: Algebra) -> bool:
    R = S.R
    elems = S.elements()
    cont = {f: content(S, f) for f in elems}
    for f in elems:
        for g in elems:
            lhs = radical(R, cont[S.mul(f, g)])
            rhs = radical(R, ideal_product(R, cont[f], cont[g]))
            if lhs != rhs:
                return False
    return True


def is_residually_mccoy_prime(S: Algebra) -> bool:
    """R/p -> S/pS McCoy for each prime p, computed on cosets directly."""
    R = S.R
    elems = S.elements()
    for p in all_ideals(R):
        if not is_prime(R, p):
            continue

        def in_pS(f):
            return all(c in p for c in f)

        for f in elems:
            if in_pS(f):
                continue
            killed = any(not in_pS(g) and in_pS(S.mul(f, g)) for g in elems)
            if killed and not any(
                r not in p and all(R.mul(r, c) in p for c in f) for r in R.elements
            ):
                return False
    return True
