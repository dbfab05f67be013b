"""Finite commutative rings given by explicit operation tables.

Elements of a ring of size ``n`` are the integers ``0..n-1``; the canonical
order of those indices is fixed by the construction expression, so every
report derived from a ring is reproducible from its descriptor.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import TYPE_CHECKING, Callable

import numpy as np

from .errors import (
    DomainMismatchError,
    InvalidModulusError,
    InvalidMultSetError,
    SizeCapError,
)

if TYPE_CHECKING:
    from .ideals import Ideal, SaturatedMultSet

DEFAULT_MAX_RING = 4096


def table_dtype(size: int):
    return np.int16 if size <= np.iinfo(np.int16).max else np.int32


def _check_cap(what: str, size: int, cap: int | None) -> None:
    if cap is not None and size > cap:
        raise SizeCapError(what, size, cap)


def _needs_parens(text: str) -> bool:
    depth = 0
    for i, ch in enumerate(text):
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        elif ch in "+-" and depth == 0 and i > 0:
            return True
    return False


def format_linear(coeff_names: list[str], basis_names: list[str], zero: str = "0", one: str = "1") -> str:
    """Render ``sum c_i * b_i`` with zero coefficients dropped."""
    terms = []
    for c, b in zip(coeff_names, basis_names):
        if c == zero:
            continue
        if b == "1":
            terms.append(c)
        elif c == one:
            terms.append(b)
        elif c.isdigit():
            terms.append(c + b)
        elif _needs_parens(c):
            terms.append(f"({c})*{b}")
        else:
            terms.append(f"{c}*{b}")
    return "+".join(terms) if terms else zero


def power_names(symbol: str, count: int) -> list[str]:
    names = []
    for k in range(count):
        if k == 0:
            names.append("1")
        elif k == 1:
            names.append(symbol)
        else:
            names.append(f"{symbol}^{k}")
    return names


class FiniteRing:
    """A finite commutative ring with identity, stored as index tables.

    ``symbols`` maps generator names (``x`` for a truncation) to element
    indices; ``names`` holds the canonical printed form of every element.
    """

    def __init__(
        self,
        add_table: np.ndarray,
        mul_table: np.ndarray,
        zero: int,
        one: int,
        descriptor: str,
        names: list[str],
        symbols: dict[str, int] | None = None,
        components: tuple["FiniteRing", ...] | None = None,
        lift: tuple["FiniteRing", "RingMap"] | None = None,
        constants: tuple["FiniteRing", "RingMap"] | None = None,
    ):
        self.size = int(add_table.shape[0])
        self.add_table = add_table
        self.mul_table = mul_table
        self.zero = int(zero)
        self.one = int(one)
        self.descriptor = descriptor
        self.names = names
        self.symbols = dict(symbols or {})
        self.components = components
        # quotient rings evaluate expressions upstairs and project
        self._lift = lift
        # rings built over a coefficient ring resolve unknown atoms there
        self._constants = constants
        self.add_table.setflags(write=False)
        self.mul_table.setflags(write=False)

    def __repr__(self) -> str:
        return f"FiniteRing({self.descriptor!r}, size={self.size})"

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if not isinstance(other, FiniteRing):
            return NotImplemented
        return (
            self.size == other.size
            and self.descriptor == other.descriptor
            and self.zero == other.zero
            and self.one == other.one
            and np.array_equal(self.add_table, other.add_table)
            and np.array_equal(self.mul_table, other.mul_table)
        )

    def __hash__(self) -> int:
        return hash((self.descriptor, self.size))

    def __len__(self) -> int:
        return self.size

    # -- element arithmetic -------------------------------------------------

    @cached_property
    def neg_table(self) -> np.ndarray:
        return np.argmax(self.add_table == self.zero, axis=1).astype(self.add_table.dtype)

    def add(self, a: int, b: int) -> int:
        return int(self.add_table[a, b])

    def mul(self, a: int, b: int) -> int:
        return int(self.mul_table[a, b])

    def neg(self, a: int) -> int:
        return int(self.neg_table[a])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def power(self, a: int, k: int) -> int:
        result, base = self.one, a
        while k:
            if k & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            k >>= 1
        return result

    def from_int(self, k: int) -> int:
        """Image of the integer ``k`` under Z -> R."""
        result, base = self.zero, self.one
        if k < 0:
            k, base = -k, self.neg(self.one)
        while k:
            if k & 1:
                result = self.add(result, base)
            base = self.add(base, base)
            k >>= 1
        return result

    def elem(self, index: int) -> "RingElement":
        return RingElement(self, int(index))

    def name(self, index: int) -> str:
        return self.names[index]

    def elements(self) -> range:
        return range(self.size)

    def evaluate(self, node: tuple) -> int:
        """Evaluate an expression tree produced by the descriptor parser."""
        if self._lift is not None:
            parent, proj = self._lift
            return proj(parent.evaluate(node))
        kind = node[0]
        if kind == "int":
            return self.from_int(node[1])
        if kind == "sym" and node[1] in self.symbols:
            return self.symbols[node[1]]
        if kind == "pair" and self.components is not None:
            r1, r2 = self.components
            return r1.evaluate(node[1]) * r2.size + r2.evaluate(node[2])
        if kind in ("sym", "pair"):
            if self._constants is None:
                raise KeyError(node[1] if kind == "sym" else "pair literal")
            base, embed = self._constants
            return embed(base.evaluate(node))
        if kind == "neg":
            return self.neg(self.evaluate(node[1]))
        if kind == "pow":
            return self.power(self.evaluate(node[1]), node[2])
        a, b = self.evaluate(node[1]), self.evaluate(node[2])
        if kind == "add":
            return self.add(a, b)
        if kind == "sub":
            return self.sub(a, b)
        if kind == "mul":
            return self.mul(a, b)
        raise ValueError(f"unknown expression node {kind!r}")

    def all_symbols(self) -> set[str]:
        if self._lift is not None:
            return self._lift[0].all_symbols()
        found = set(self.symbols)
        for comp in self.components or ():
            found |= comp.all_symbols()
        if self._constants is not None:
            found |= self._constants[0].all_symbols()
        return found

    # -- derived data -------------------------------------------------------

    @cached_property
    def unit_mask(self) -> np.ndarray:
        return (self.mul_table == self.one).any(axis=1)

    @cached_property
    def zero_divisor_mask(self) -> np.ndarray:
        """z is a zero-divisor when z*r = 0 for some nonzero r."""
        nonzero = np.arange(self.size) != self.zero
        return ((self.mul_table == self.zero) & nonzero[None, :]).any(axis=1)

    @cached_property
    def idempotent_power(self) -> np.ndarray:
        """For every r, the unique idempotent among its powers r^k (k >= 1)."""
        out = np.empty(self.size, dtype=np.int64)
        mul = self.mul_table
        for r in range(self.size):
            seen = {}
            k, p = 1, r
            while p not in seen:
                seen[p] = k
                p = int(mul[p, r])
                k += 1
            start, period = seen[p], k - seen[p]
            # smallest exponent >= start that is a multiple of period
            e = -(-start // period) * period
            out[r] = self.power(r, e)
        return out


@dataclass(frozen=True)
class RingElement:
    ring: FiniteRing
    index: int

    def __post_init__(self):
        if not 0 <= self.index < self.ring.size:
            raise ValueError(f"index {self.index} out of range for {self.ring!r}")

    def _other(self, other) -> int:
        if isinstance(other, RingElement):
            if other.ring is not self.ring and other.ring != self.ring:
                raise DomainMismatchError("elements of different rings")
            return other.index
        if isinstance(other, int):
            return self.ring.from_int(other)
        return NotImplemented

    def __add__(self, other):
        return RingElement(self.ring, self.ring.add(self.index, self._other(other)))

    __radd__ = __add__

    def __mul__(self, other):
        return RingElement(self.ring, self.ring.mul(self.index, self._other(other)))

    __rmul__ = __mul__

    def __sub__(self, other):
        return RingElement(self.ring, self.ring.sub(self.index, self._other(other)))

    def __neg__(self):
        return RingElement(self.ring, self.ring.neg(self.index))

    def __pow__(self, k: int):
        return RingElement(self.ring, self.ring.power(self.index, k))

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            return self.index == self.ring.from_int(other)
        if isinstance(other, RingElement):
            return self.ring == other.ring and self.index == other.index
        return NotImplemented

    def __hash__(self) -> int:
        return hash((id(self.ring), self.index))

    def __str__(self) -> str:
        return self.ring.name(self.index)

    def __repr__(self) -> str:
        return f"RingElement({self.ring.descriptor}, {self})"

    def is_zero(self) -> bool:
        return self.index == self.ring.zero


class RingMap:
    """A ring homomorphism given by its image table."""

    def __init__(self, source: FiniteRing, target: FiniteRing, image):
        self.source = source
        self.target = target
        self.image = np.asarray(image, dtype=np.int64)
        self.image.setflags(write=False)

    def __call__(self, index: int) -> int:
        return int(self.image[index])

    def __repr__(self) -> str:
        return f"RingMap({self.source.descriptor} -> {self.target.descriptor})"

    def is_homomorphism(self) -> bool:
        s, t, im = self.source, self.target, self.image
        if im[s.zero] != t.zero or im[s.one] != t.one:
            return False
        if not np.array_equal(im[s.add_table], t.add_table[np.ix_(im, im)]):
            return False
        return bool(np.array_equal(im[s.mul_table], t.mul_table[np.ix_(im, im)]))


# -- constructions -----------------------------------------------------------


def make_zmod(n: int, max_size: int | None = DEFAULT_MAX_RING) -> FiniteRing:
    if n < 1:
        raise InvalidModulusError(f"modulus must be positive, got {n}")
    _check_cap(f"Z/{n}", n, max_size)
    r = np.arange(n, dtype=np.int64)
    dt = table_dtype(n)
    add = ((r[:, None] + r[None, :]) % n).astype(dt)
    mul = ((r[:, None] * r[None, :]) % n).astype(dt)
    return FiniteRing(add, mul, 0, 1 % n, f"Z/{n}", [str(i) for i in range(n)])


def make_product(r1: FiniteRing, r2: FiniteRing, max_size: int | None = DEFAULT_MAX_RING) -> FiniteRing:
    """Componentwise ring on pairs; (a, b) has index a*|R2| + b."""
    n1, n2 = r1.size, r2.size
    size = n1 * n2
    descriptor = f"prod({r1.descriptor},{r2.descriptor})"
    _check_cap(descriptor, size, max_size)
    dt = table_dtype(size)
    idx = np.arange(size)
    a, b = idx // n2, idx % n2
    add = (r1.add_table[np.ix_(a, a)].astype(np.int64) * n2 + r2.add_table[np.ix_(b, b)]).astype(dt)
    mul = (r1.mul_table[np.ix_(a, a)].astype(np.int64) * n2 + r2.mul_table[np.ix_(b, b)]).astype(dt)
    names = [f"[{r1.names[i]},{r2.names[j]}]" for i, j in zip(a, b)]
    return FiniteRing(
        add, mul, r1.zero * n2 + r2.zero, r1.one * n2 + r2.one,
        descriptor, names, components=(r1, r2),
    )


def _fresh_symbol(base: FiniteRing) -> str:
    taken = base.all_symbols()
    if "x" not in taken:
        return "x"
    k = 2
    while f"x{k}" in taken:
        k += 1
    return f"x{k}"


def make_truncated_poly_ring(
    r0: FiniteRing, d: int, max_size: int | None = DEFAULT_MAX_RING
) -> tuple[FiniteRing, RingElement]:
    """R0[x]/(x^d); the coefficient vector (c_0..c_{d-1}) has index sum c_i |R0|^i."""
    if d < 1:
        raise ValueError(f"truncation depth must be positive, got {d}")
    n0 = r0.size
    size = n0**d
    descriptor = f"trunc({r0.descriptor},{d})"
    _check_cap(descriptor, size, max_size)
    dt = table_dtype(size)
    idx = np.arange(size, dtype=np.int64)
    coeffs = [(idx // n0**i) % n0 for i in range(d)]
    add = np.zeros((size, size), dtype=np.int64)
    mul = np.zeros((size, size), dtype=np.int64)
    for k in range(d):
        ck = coeffs[k]
        add += r0.add_table[np.ix_(ck, ck)].astype(np.int64) * n0**k
        acc = np.full((size, size), r0.zero, dtype=np.int64)
        for i in range(k + 1):
            term = r0.mul_table[np.ix_(coeffs[i], coeffs[k - i])]
            acc = r0.add_table[acc, term]
        mul += acc * n0**k
    zero = sum(r0.zero * n0**i for i in range(d))
    one = r0.one + sum(r0.zero * n0**i for i in range(1, d))
    symbol = _fresh_symbol(r0)
    basis = power_names(symbol, d)
    zname, oname = r0.names[r0.zero], r0.names[r0.one]
    names = [format_linear([r0.names[c[i]] for c in coeffs], basis, zname, oname) for i in range(size)]
    if d > 1:
        x = zero - r0.zero * n0 + r0.one * n0
    else:
        x = zero
    ring = FiniteRing(
        add.astype(dt), mul.astype(dt), zero, one, descriptor, names,
        symbols={symbol: x},
    )
    higher = sum(r0.zero * n0**i for i in range(1, d))
    ring._constants = (r0, RingMap(r0, ring, np.arange(n0) + higher))
    return ring, ring.elem(x)


def coset_ids(ring: FiniteRing, members: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Label additive cosets of ``members``; cosets ordered by least representative."""
    labels = np.full(ring.size, -1, dtype=np.int64)
    reps = []
    for r in range(ring.size):
        if labels[r] < 0:
            labels[ring.add_table[r, members]] = len(reps)
            reps.append(r)
    return labels, np.asarray(reps, dtype=np.int64)


def make_quotient(ring: FiniteRing, ideal: "Ideal") -> tuple[FiniteRing, RingMap]:
    if ideal.ring is not ring and ideal.ring != ring:
        raise DomainMismatchError(f"ideal lives over {ideal.ring!r}, not {ring!r}")
    members = ideal.indices
    labels, reps = coset_ids(ring, members)
    q = len(reps)
    dt = table_dtype(q)
    add = labels[ring.add_table[np.ix_(reps, reps)]].astype(dt)
    mul = labels[ring.mul_table[np.ix_(reps, reps)]].astype(dt)
    gens = ",".join(ring.names[g] for g in ideal.canonical_generators)
    descriptor = f"quot({ring.descriptor}; {gens})"
    names = [ring.names[r] for r in reps]
    quotient = FiniteRing(add, mul, labels[ring.zero], labels[ring.one], descriptor, names)
    proj = RingMap(ring, quotient, labels)
    quotient._lift = (ring, proj)
    return quotient, proj


@dataclass(frozen=True)
class ElementClasses:
    units: frozenset
    zero_divisors: frozenset
    nilpotents: frozenset
    idempotents: frozenset
    regular: frozenset


def classify_elements(ring: FiniteRing) -> ElementClasses:
    idx = np.arange(ring.size)
    units = ring.unit_mask
    zd = ring.zero_divisor_mask
    regular = ~zd
    # regular elements of a finite ring are units
    assert np.array_equal(regular, units), "regular element that is not a unit"
    diag = ring.mul_table[idx, idx]
    idempotent = diag == idx
    nilpotent = ring.idempotent_power == ring.zero
    as_set = lambda mask: frozenset(int(i) for i in np.flatnonzero(mask))
    return ElementClasses(
        units=as_set(units),
        zero_divisors=as_set(zd),
        nilpotents=as_set(nilpotent),
        idempotents=as_set(idempotent),
        regular=as_set(regular),
    )


def localize(ring: FiniteRing, mult_set: "SaturatedMultSet") -> tuple[FiniteRing, RingMap]:
    """W^-1 R realised as R / {r : wr = 0 for some w in W}."""
    from .ideals import Ideal

    if mult_set.ring is not ring and mult_set.ring != ring:
        raise DomainMismatchError("multiplicative set over a different ring")
    for p in mult_set.primes:
        if not p.is_prime():
            raise InvalidMultSetError(f"{p} is not a prime ideal")
    w = np.flatnonzero(mult_set.mask)
    killed = (ring.mul_table[:, w] == ring.zero).any(axis=1)
    kernel = Ideal.from_mask(ring, killed)
    local, proj = make_quotient(ring, kernel)
    images = np.unique(proj.image[w])
    assert local.unit_mask[images].all(), "localization left an element of W non-invertible"
    return local, proj


# -- checks ------------------------------------------------------------------


def verify_axioms(ring: FiniteRing, max_size: int = 256) -> None:
    """Exhaustive O(n^3) table check; raises AssertionError on failure."""
    n = ring.size
    _check_cap(f"axiom scan of {ring.descriptor}", n, max_size)
    add, mul = ring.add_table.astype(np.int64), ring.mul_table.astype(np.int64)
    idx = np.arange(n)
    assert np.array_equal(add, add.T), "addition not commutative"
    assert np.array_equal(mul, mul.T), "multiplication not commutative"
    assert (add[ring.zero] == idx).all(), "zero is not an additive identity"
    assert (mul[ring.one] == idx).all(), "one is not a multiplicative identity"
    assert (add == ring.zero).any(axis=1).all(), "missing additive inverse"
    if n > 1:
        assert ring.zero != ring.one, "zero equals one in a nonzero ring"
    for table in (add, mul):
        left = table[table[:, :, None], idx[None, None, :]]
        right = table[idx[:, None, None], table[None, :, :]]
        assert np.array_equal(left, right), "operation not associative"
    lhs = mul[idx[:, None, None], add[None, :, :]]
    rhs = add[mul[:, :, None], mul[:, None, :]]
    assert np.array_equal(lhs, rhs), "multiplication does not distribute"


def find_isomorphism(r1: FiniteRing, r2: FiniteRing) -> dict[int, int] | None:
    """Backtracking search for a ring isomorphism r1 -> r2.

    Assigning an image to one element propagates through sums and products
    of already-assigned elements, so the search branches only on a
    generating set.
    """
    if r1.size != r2.size:
        return None

    def signature(ring: FiniteRing, r: int) -> tuple:
        order, acc = 1, r
        while acc != ring.zero:
            acc = ring.add(acc, r)
            order += 1
        return (
            order,
            bool(ring.unit_mask[r]),
            int(ring.mul_table[r, r]) == r,
            int(ring.idempotent_power[r]) == ring.zero,
            int((ring.mul_table[r] == ring.zero).sum()),
        )

    sig1 = [signature(r1, r) for r in range(r1.size)]
    sig2 = [signature(r2, r) for r in range(r2.size)]

    def propagate(mapping: dict[int, int], rev: dict[int, int], a: int, b: int) -> bool:
        stack = [(a, b)]
        while stack:
            a, b = stack.pop()
            if a in mapping:
                if mapping[a] != b:
                    return False
                continue
            if b in rev or sig1[a] != sig2[b]:
                return False
            mapping[a] = b
            rev[b] = a
            for c, d in list(mapping.items()):
                stack.append((r1.add(a, c), r2.add(b, d)))
                stack.append((r1.mul(a, c), r2.mul(b, d)))
        return True

    def search(mapping: dict[int, int], rev: dict[int, int]) -> dict[int, int] | None:
        if len(mapping) == r1.size:
            return mapping
        a = next(r for r in range(r1.size) if r not in mapping)
        for b in range(r2.size):
            if b in rev or sig1[a] != sig2[b]:
                continue
            m2, rv2 = dict(mapping), dict(rev)
            if propagate(m2, rv2, a, b):
                found = search(m2, rv2)
                if found is not None:
                    return found
        return None

    mapping: dict[int, int] = {}
    rev: dict[int, int] = {}
    if not propagate(mapping, rev, r1.zero, r2.zero) or not propagate(mapping, rev, r1.one, r2.one):
        return None
    return search(mapping, rev)


def is_isomorphic(r1: FiniteRing, r2: FiniteRing) -> bool:
    return find_isomorphism(r1, r2) is not None


RingFactory = Callable[..., FiniteRing]
