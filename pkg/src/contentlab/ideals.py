"""Ideals of finite rings: arithmetic, radicals, primality, and the full lattice.

An :class:`Ideal` stores its members as a Python integer bitset over element
indices.  Generation is a breadth-first additive closure: the set of all
multiples ``r*g`` is closed under multiplication by the ring, so the additive
subgroup it generates is already the ideal.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import DomainMismatchError, InvalidMultSetError, SizeCapError
from .finring import FiniteRing, RingMap

DEFAULT_MAX_IDEALS = 20_000

FAMILIES = ("all", "radical", "prime")


def mask_to_int(mask: np.ndarray) -> int:
    return int.from_bytes(np.packbits(mask, bitorder="little").tobytes(), "little")


def int_to_mask(bits: int, size: int) -> np.ndarray:
    raw = bits.to_bytes((size + 7) // 8 or 1, "little")
    return np.unpackbits(np.frombuffer(raw, dtype=np.uint8), bitorder="little")[:size].astype(bool)


def _same_ring(a: FiniteRing, b: FiniteRing) -> bool:
    return a is b or a == b


def additive_closure(ring: FiniteRing, start: np.ndarray, seeds: Iterable[int]) -> np.ndarray:
    """Smallest additive subgroup containing the subgroup ``start`` and ``seeds``."""
    add = ring.add_table
    current = start.copy()
    for x in seeds:
        if current[x]:
            continue
        base = np.flatnonzero(current)
        grown = current.copy()
        t = int(x)
        # adjoin the cosets base + k*x until k*x falls back into base
        while not current[t]:
            grown[add[base, t]] = True
            t = int(add[t, x])
        current = grown
    return current


def _zero_mask(ring: FiniteRing) -> np.ndarray:
    mask = np.zeros(ring.size, dtype=bool)
    mask[ring.zero] = True
    return mask


@dataclass(frozen=True, eq=False)
class Ideal:
    ring: FiniteRing
    members: int
    generators: tuple[int, ...] = field(default=())

    @classmethod
    def from_mask(cls, ring: FiniteRing, mask: np.ndarray, generators: Sequence[int] = ()) -> "Ideal":
        ideal = cls(ring, mask_to_int(np.asarray(mask, dtype=bool)), tuple(int(g) for g in generators))
        ideal.__dict__["mask"] = np.asarray(mask, dtype=bool)
        return ideal

    @cached_property
    def mask(self) -> np.ndarray:
        return int_to_mask(self.members, self.ring.size)

    @cached_property
    def indices(self) -> np.ndarray:
        return np.flatnonzero(self.mask)

    @property
    def size(self) -> int:
        return self.members.bit_count()

    def __len__(self) -> int:
        return self.size

    def __contains__(self, r: int) -> bool:
        return bool((self.members >> int(r)) & 1)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Ideal):
            return NotImplemented
        return self.members == other.members and _same_ring(self.ring, other.ring)

    def __hash__(self) -> int:
        return hash(self.members)

    def __le__(self, other: "Ideal") -> bool:
        return self.members & ~other.members == 0

    def __lt__(self, other: "Ideal") -> bool:
        return self <= other and self.members != other.members

    def __add__(self, other: "Ideal") -> "Ideal":
        return ideal_combine(self, other, "sum")

    def __mul__(self, other: "Ideal") -> "Ideal":
        return ideal_combine(self, other, "product")

    def __and__(self, other: "Ideal") -> "Ideal":
        return ideal_combine(self, other, "intersection")

    def __pow__(self, k: int) -> "Ideal":
        result = unit_ideal(self.ring)
        for _ in range(k):
            result = result * self
        return result

    @cached_property
    def canonical_generators(self) -> tuple[int, ...]:
        """Greedy generators: scan members in canonical order, keep those not yet covered."""
        ring = self.ring
        covered = _zero_mask(ring)
        gens = []
        for r in self.indices:
            if covered[r]:
                continue
            gens.append(int(r))
            covered = additive_closure(ring, covered, np.unique(ring.mul_table[:, r]))
            if covered.sum() == self.size:
                break
        return tuple(gens)

    def __str__(self) -> str:
        gens = self.canonical_generators
        if not gens:
            return "(0)"
        return "(" + ",".join(self.ring.names[g] for g in gens) + ")"

    def __repr__(self) -> str:
        return f"Ideal{self} of {self.ring.descriptor}"

    def is_unit(self) -> bool:
        return self.ring.one in self

    def is_zero(self) -> bool:
        return self.members == 1 << self.ring.zero

    def is_closed(self) -> bool:
        """Re-check closure under addition and absorption from the bitset alone."""
        ring, mask, idx = self.ring, self.mask, self.indices
        if not mask[ring.zero]:
            return False
        if not mask[ring.add_table[np.ix_(idx, idx)]].all():
            return False
        return bool(mask[ring.mul_table[:, idx]].all())

    def is_prime(self) -> bool:
        if self.is_unit():
            return False
        outside = np.flatnonzero(~self.mask)
        return not self.mask[self.ring.mul_table[np.ix_(outside, outside)]].any()

    def is_maximal(self) -> bool:
        if self.is_unit():
            return False
        ring = self.ring
        one_coset = self.mask[ring.add_table[:, ring.neg(ring.one)]]
        outside = np.flatnonzero(~self.mask)
        return bool(one_coset[ring.mul_table[outside]].any(axis=1).all())

    def is_radical(self) -> bool:
        return radical(self) == self


def ideal_generate(ring: FiniteRing, gens: Iterable[int]) -> Ideal:
    gens = [int(g) for g in gens]
    for g in gens:
        if not 0 <= g < ring.size:
            raise DomainMismatchError(f"element {g} not in {ring.descriptor}")
    if not gens:
        return Ideal.from_mask(ring, _zero_mask(ring))
    seeds = np.unique(ring.mul_table[:, gens])
    return Ideal.from_mask(ring, additive_closure(ring, _zero_mask(ring), seeds), gens)


def zero_ideal(ring: FiniteRing) -> Ideal:
    return ideal_generate(ring, [])


def unit_ideal(ring: FiniteRing) -> Ideal:
    return Ideal.from_mask(ring, np.ones(ring.size, dtype=bool), [ring.one])


def _gens(ideal: Ideal) -> tuple[int, ...]:
    return ideal.generators or ideal.canonical_generators


def ideal_combine(a: Ideal, b: Ideal, op: str) -> Ideal:
    if not _same_ring(a.ring, b.ring):
        raise DomainMismatchError(f"{a.ring!r} and {b.ring!r} differ")
    ring = a.ring
    if op == "sum":
        mask = additive_closure(ring, a.mask, b.indices)
        return Ideal.from_mask(ring, mask, _gens(a) + _gens(b))
    if op == "product":
        # (g)(h) = (gh) on generating sets
        ga, gb = _gens(a), _gens(b)
        return ideal_generate(ring, [ring.mul(g, h) for g in ga for h in gb])
    if op == "intersection":
        return Ideal.from_mask(ring, a.mask & b.mask)
    if op == "colon":
        gb = list(_gens(b))
        if not gb:
            return unit_ideal(ring)
        mask = a.mask[ring.mul_table[:, gb]].all(axis=1)
        return Ideal.from_mask(ring, mask)
    raise ValueError(f"unknown ideal operation {op!r}")


def annihilator(ideal: Ideal) -> Ideal:
    return ideal_combine(zero_ideal(ideal.ring), ideal, "colon")


def radical(ideal: Ideal) -> Ideal:
    # r^k lies in I for some k iff the idempotent power of r does
    return Ideal.from_mask(ideal.ring, ideal.mask[ideal.ring.idempotent_power])


def image_ideal(m: RingMap, ideal: Ideal) -> Ideal:
    if not _same_ring(m.source, ideal.ring):
        raise DomainMismatchError("ideal does not live over the map's source")
    return ideal_generate(m.target, [m(g) for g in _gens(ideal)])


def preimage_ideal(m: RingMap, ideal: Ideal) -> Ideal:
    if not _same_ring(m.target, ideal.ring):
        raise DomainMismatchError("ideal does not live over the map's target")
    return Ideal.from_mask(m.source, ideal.mask[m.image])


class IdealLattice:
    """Every ideal of a finite ring, in canonical order (by size, then bitset).

    Built as the join-closure of the principal ideals.  Sum, product and
    radical tables over lattice positions are computed on first use.
    """

    def __init__(self, ring: FiniteRing, max_ideals: int = DEFAULT_MAX_IDEALS):
        self.ring = ring
        by_bits: dict[int, Ideal] = {}
        element_bits = []
        for r in range(ring.size):
            ideal = ideal_generate(ring, [r])
            by_bits.setdefault(ideal.members, ideal)
            element_bits.append(ideal.members)
        principals = list(by_bits.values())
        queue = list(principals)
        while queue:
            ideal = queue.pop()
            for p in principals:
                if p <= ideal:
                    continue
                joined = ideal + p
                if joined.members not in by_bits:
                    by_bits[joined.members] = joined
                    queue.append(joined)
                    if len(by_bits) > max_ideals:
                        raise SizeCapError(f"ideal lattice of {ring.descriptor}", len(by_bits), max_ideals)
        self.ideals: list[Ideal] = sorted(by_bits.values(), key=lambda i: (i.size, i.members))
        self.position = {ideal.members: k for k, ideal in enumerate(self.ideals)}
        self.principal = np.array([self.position[b] for b in element_bits], dtype=np.int64)
        self.zero_id = self.position[zero_ideal(ring).members]
        self.unit_id = len(self.ideals) - 1

    def __len__(self) -> int:
        return len(self.ideals)

    def __iter__(self):
        return iter(self.ideals)

    def index(self, ideal: Ideal) -> int:
        return self.position[ideal.members]

    def _table(self, op: str) -> np.ndarray:
        n = len(self.ideals)
        table = np.empty((n, n), dtype=np.int64)
        for i in range(n):
            for j in range(i, n):
                k = self.position[ideal_combine(self.ideals[i], self.ideals[j], op).members]
                table[i, j] = table[j, i] = k
        return table

    @cached_property
    def sum_table(self) -> np.ndarray:
        return self._table("sum")

    @cached_property
    def product_table(self) -> np.ndarray:
        return self._table("product")

    @cached_property
    def radical_of(self) -> np.ndarray:
        return np.array([self.position[radical(i).members] for i in self.ideals], dtype=np.int64)

    @cached_property
    def annihilator_nonzero(self) -> np.ndarray:
        return np.array([not annihilator(i).is_zero() for i in self.ideals], dtype=bool)

    def power(self, k: int, e: int) -> int:
        result = self.unit_id
        for _ in range(e):
            result = int(self.product_table[result, k])
        return result

    @cached_property
    def primes(self) -> list[Ideal]:
        return [i for i in self.ideals if i.is_prime()]

    def family(self, name: str) -> list[Ideal]:
        if name == "all":
            return list(self.ideals)
        if name == "radical":
            return [i for k, i in enumerate(self.ideals) if self.radical_of[k] == k]
        if name == "prime":
            return list(self.primes)
        raise ValueError(f"unknown ideal family {name!r}; expected one of {FAMILIES}")


def lattice(ring: FiniteRing, max_ideals: int = DEFAULT_MAX_IDEALS) -> IdealLattice:
    """Per-ring cached :class:`IdealLattice`."""
    cached = ring.__dict__.get("_ideal_lattice")
    if cached is None:
        cached = IdealLattice(ring, max_ideals)
        ring.__dict__["_ideal_lattice"] = cached
    return cached


def enumerate_ideals(ring: FiniteRing, filter: str = "all", max_ideals: int = DEFAULT_MAX_IDEALS) -> list[Ideal]:
    return lattice(ring, max_ideals).family(filter)


def spectrum(ring: FiniteRing) -> list[Ideal]:
    return enumerate_ideals(ring, "prime")


@dataclass(frozen=True, eq=False)
class SaturatedMultSet:
    """W = R minus the union of the listed primes."""

    ring: FiniteRing
    primes: tuple[Ideal, ...]

    def __post_init__(self):
        for p in self.primes:
            if not _same_ring(p.ring, self.ring):
                raise DomainMismatchError("prime over a different ring")
            if not p.is_prime():
                raise InvalidMultSetError(f"{p} is not a prime ideal")

    @cached_property
    def mask(self) -> np.ndarray:
        covered = np.zeros(self.ring.size, dtype=bool)
        for p in self.primes:
            covered |= p.mask
        return ~covered

    @property
    def members(self) -> int:
        return mask_to_int(self.mask)

    def __contains__(self, r: int) -> bool:
        return bool(self.mask[r])

    def meets(self, ideal: Ideal) -> bool:
        return bool((ideal.mask & self.mask).any())

    def __str__(self) -> str:
        return "{" + ", ".join(str(p) for p in self.primes) + "}"


def saturated_mult_sets(ring: FiniteRing) -> list[SaturatedMultSet]:
    """All sets R minus a union of primes, one per set of primes, in canonical order."""
    primes = spectrum(ring)
    out = []
    for k in range(len(primes) + 1):
        for subset in itertools.combinations(primes, k):
            out.append(SaturatedMultSet(ring, subset))
    return out
