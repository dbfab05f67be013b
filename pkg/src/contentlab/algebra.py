"""Free commutative algebras over finite rings, given by structure constants.

An algebra ``S`` of rank ``m`` over ``R`` has basis ``e_0..e_{m-1}`` with
``e_i * e_j = sum_k struct[i, j, k] e_k``.  Elements are coordinate vectors;
the element with coordinates ``(c_0..c_{m-1})`` has canonical index
``sum c_k |R|^k``.

Because ``S`` is free, ``f`` lies in ``IS`` exactly when every coordinate of
``f`` lies in ``I``, so the content of ``f`` is the ideal generated by its
coordinates.  :func:`content_oracle` recomputes it the long way, by
intersecting every ideal ``I`` with ``f`` in ``IS``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import Iterator, Sequence

import numpy as np

from .errors import DomainMismatchError, InvalidMonoidError, SizeCapError
from .finring import FiniteRing, RingMap, format_linear, localize, make_quotient, power_names
from .ideals import Ideal, SaturatedMultSet, ideal_generate, lattice

DEFAULT_MAX_ALG = 4096
# entries per block when multiplying many pairs at once
BLOCK_ENTRIES = 1 << 21


def _free_symbol(base: FiniteRing, preferred: Sequence[str]) -> str:
    taken = base.all_symbols()
    for s in preferred:
        if s not in taken:
            return s
    raise ValueError(f"no free generator symbol among {preferred}")


@dataclass(frozen=True)
class MonoidTable:
    size: int
    op_table: tuple[tuple[int, ...], ...]
    identity: int
    path: str | None = None

    def __post_init__(self):
        n = self.size
        table = np.asarray(self.op_table, dtype=np.int64)
        if table.shape != (n, n) or (table < 0).any() or (table >= n).any():
            raise InvalidMonoidError(f"op table must be {n}x{n} with entries in [0, {n})")
        if not 0 <= self.identity < n:
            raise InvalidMonoidError("identity index out of range")
        idx = np.arange(n)
        if not ((table[self.identity] == idx).all() and (table[:, self.identity] == idx).all()):
            raise InvalidMonoidError("identity law fails")
        if not np.array_equal(table[table[:, :, None], idx], table[idx[:, None, None], table[None]]):
            raise InvalidMonoidError("operation is not associative")

    @property
    def table(self) -> np.ndarray:
        return np.asarray(self.op_table, dtype=np.int64)

    def is_commutative(self) -> bool:
        t = self.table
        return bool(np.array_equal(t, t.T))

    @classmethod
    def from_text(cls, text: str, path: str | None = None) -> "MonoidTable":
        lines = [ln.split() for ln in text.strip().splitlines() if ln.strip()]
        if not lines or len(lines[0]) != 2:
            raise InvalidMonoidError("first line must hold the size and the identity index")
        try:
            size, identity = int(lines[0][0]), int(lines[0][1])
            rows = tuple(tuple(int(v) for v in row) for row in lines[1:])
        except ValueError as exc:
            raise InvalidMonoidError(f"non-integer entry in monoid table: {exc}") from None
        if len(rows) != size:
            raise InvalidMonoidError(f"expected {size} table rows, found {len(rows)}")
        return cls(size, rows, identity, path)

    @classmethod
    def from_file(cls, path: str | Path) -> "MonoidTable":
        return cls.from_text(Path(path).read_text(), str(path))

    def to_text(self) -> str:
        rows = "\n".join(" ".join(str(v) for v in row) for row in self.op_table)
        return f"{self.size} {self.identity}\n{rows}\n"


def cyclic_group(n: int) -> MonoidTable:
    return MonoidTable(n, tuple(tuple((i + j) % n for j in range(n)) for i in range(n)), 0)


class FreeAlgebra:
    """A commutative, associative, unital free algebra over a finite ring."""

    def __init__(
        self,
        base: FiniteRing,
        struct_consts: np.ndarray,
        unit: Sequence[int],
        basis_names: Sequence[str],
        kind: str = "custom",
        param=None,
        max_size: int | None = DEFAULT_MAX_ALG,
        check: bool = True,
    ):
        struct_consts = np.asarray(struct_consts, dtype=np.int64)
        m = struct_consts.shape[0]
        if m < 1 or struct_consts.shape != (m, m, m):
            raise ValueError("structure constants must have shape (m, m, m) with m >= 1")
        size = base.size**m
        self.base = base
        self.rank = m
        self.struct_consts = struct_consts
        self.struct_consts.setflags(write=False)
        self.unit = tuple(int(u) for u in unit)
        self.basis_names = list(basis_names)
        self.kind = kind
        self.param = param
        if max_size is not None and size > max_size:
            raise SizeCapError(f"algebra {self.descriptor} over {base.descriptor}", size, max_size)
        self.size = size
        # free of positive rank; over the zero ring faithful flatness is vacuous
        self.faithfully_flat = True
        if check:
            self.verify_structure()

    def __repr__(self) -> str:
        return f"FreeAlgebra({self.descriptor!r} over {self.base.descriptor!r}, rank={self.rank})"

    @property
    def descriptor(self) -> str:
        if self.kind == "id":
            return "id"
        if self.kind == "trunc":
            return f"trunc({self.param})"
        if self.kind == "quad":
            return f"quad({self.base.names[self.param]})"
        if self.kind == "group":
            return f"group(Z/{self.param})"
        if self.kind == "monoid":
            return f"monoid({self.param.path})"
        return "custom"

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if not isinstance(other, FreeAlgebra):
            return NotImplemented
        return (
            self.base == other.base
            and self.unit == other.unit
            and np.array_equal(self.struct_consts, other.struct_consts)
        )

    def __hash__(self) -> int:
        return hash((self.base.descriptor, self.descriptor, self.rank))

    # -- structure ----------------------------------------------------------

    def _mul_vec(self, a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
        R = self.base
        out = [R.zero] * self.rank
        for i, ai in enumerate(a):
            if ai == R.zero:
                continue
            for j, bj in enumerate(b):
                if bj == R.zero:
                    continue
                ab = R.mul(ai, bj)
                for k in range(self.rank):
                    out[k] = R.add(out[k], R.mul(ab, int(self.struct_consts[i, j, k])))
        return tuple(out)

    def verify_structure(self) -> None:
        """Exhaustive commutativity, associativity, and unit checks on the basis."""
        m, c = self.rank, self.struct_consts
        if not np.array_equal(c, c.transpose(1, 0, 2)):
            raise ValueError("structure constants are not symmetric")
        basis = [self.basis_vector(i) for i in range(m)]
        for i in range(m):
            if self._mul_vec(self.unit, basis[i]) != basis[i]:
                raise ValueError(f"unit does not fix basis element {i}")
            for j in range(m):
                eij = tuple(int(v) for v in c[i, j])
                for k in range(m):
                    left = self._mul_vec(eij, basis[k])
                    right = self._mul_vec(basis[i], tuple(int(v) for v in c[j, k]))
                    if left != right:
                        raise ValueError(f"associativity fails on basis triple {(i, j, k)}")

    def basis_vector(self, i: int) -> tuple[int, ...]:
        R = self.base
        return tuple(R.one if k == i else R.zero for k in range(self.rank))

    # -- elements -----------------------------------------------------------

    @cached_property
    def radix(self) -> np.ndarray:
        return self.base.size ** np.arange(self.rank, dtype=np.int64)

    @cached_property
    def coords_table(self) -> np.ndarray:
        idx = np.arange(self.size, dtype=np.int64)
        table = (idx[:, None] // self.radix[None, :]) % self.base.size
        table.setflags(write=False)
        return table

    def encode(self, coords: np.ndarray) -> np.ndarray:
        return np.asarray(coords, dtype=np.int64) @ self.radix

    def element(self, coords: Sequence[int]) -> "AlgebraElement":
        coords = tuple(int(c) for c in coords)
        if len(coords) != self.rank:
            raise ValueError(f"expected {self.rank} coordinates, got {len(coords)}")
        return AlgebraElement(self, coords)

    def from_index(self, index: int) -> "AlgebraElement":
        return AlgebraElement(self, tuple(int(c) for c in self.coords_table[index]))

    def zero(self) -> "AlgebraElement":
        return self.element([self.base.zero] * self.rank)

    def one(self) -> "AlgebraElement":
        return self.element(self.unit)

    def scalar(self, r: int) -> "AlgebraElement":
        R = self.base
        return self.element([R.mul(r, u) for u in self.unit])

    def basis(self, i: int) -> "AlgebraElement":
        return self.element(self.basis_vector(i))

    def elements(self) -> Iterator["AlgebraElement"]:
        for i in range(self.size):
            yield self.from_index(i)

    def format_index(self, index: int) -> str:
        return self.from_index(index).__str__()

    def evaluate(self, node: tuple) -> "AlgebraElement":
        kind = node[0]
        if kind == "int":
            return self.scalar(self.base.from_int(node[1]))
        if kind == "sym" and node[1] in self.basis_names:
            return self.basis(self.basis_names.index(node[1]))
        if kind in ("sym", "pair"):
            return self.scalar(self.base.evaluate(node))
        if kind == "neg":
            return -self.evaluate(node[1])
        if kind == "pow":
            return self.evaluate(node[1]) ** node[2]
        a, b = self.evaluate(node[1]), self.evaluate(node[2])
        if kind == "add":
            return a + b
        if kind == "sub":
            return a - b
        if kind == "mul":
            return a * b
        raise ValueError(f"unknown expression node {kind!r}")

    # -- bulk arithmetic ----------------------------------------------------

    def multiplication_matrices(self, f_coords: np.ndarray) -> np.ndarray:
        """M[b, k, j] = e_k-coordinate of f_b * e_j, for a block of elements f_b."""
        R, c, m = self.base, self.struct_consts, self.rank
        f_coords = np.atleast_2d(f_coords)
        out = np.empty((f_coords.shape[0], m, m), dtype=np.int64)
        for k in range(m):
            for j in range(m):
                acc = np.full(f_coords.shape[0], R.zero, dtype=np.int64)
                for i in range(m):
                    acc = R.add_table[acc, R.mul_table[f_coords[:, i], c[i, j, k]]]
                out[:, k, j] = acc
        return out

    def products(self, f_indices: np.ndarray, g_indices: np.ndarray | None = None) -> np.ndarray:
        """Indices of f*g for every f in ``f_indices`` (rows) and g (columns)."""
        R, m = self.base, self.rank
        f_indices = np.atleast_1d(np.asarray(f_indices, dtype=np.int64))
        G = self.coords_table if g_indices is None else self.coords_table[g_indices]
        M = self.multiplication_matrices(self.coords_table[f_indices])
        result = np.zeros((len(f_indices), G.shape[0]), dtype=np.int64)
        for k in range(m):
            acc = np.full(result.shape, R.zero, dtype=R.add_table.dtype)
            for j in range(m):
                acc = R.add_table[acc, R.mul_table[M[:, k, j][:, None], G[None, :, j]]]
            result += acc.astype(np.int64) * int(self.radix[k])
        return result

    def product_blocks(self, f_indices: np.ndarray | None = None) -> Iterator[tuple[np.ndarray, np.ndarray]]:
        """Yield (f block, products of that block with every element) in canonical order."""
        if f_indices is None:
            f_indices = np.arange(self.size, dtype=np.int64)
        step = max(1, BLOCK_ENTRIES // max(self.size, 1))
        for start in range(0, len(f_indices), step):
            block = f_indices[start:start + step]
            yield block, self.products(block)

    @cached_property
    def content_ids(self) -> np.ndarray:
        """Lattice position of content(f) for every element f."""
        lat = lattice(self.base)
        coords = self.coords_table
        ids = lat.principal[coords[:, 0]]
        for i in range(1, self.rank):
            ids = lat.sum_table[ids, lat.principal[coords[:, i]]]
        ids.setflags(write=False)
        return ids


@dataclass(frozen=True)
class AlgebraElement:
    algebra: FreeAlgebra
    coords: tuple[int, ...]

    @property
    def index(self) -> int:
        return int(sum(c * int(r) for c, r in zip(self.coords, self.algebra.radix)))

    def _check(self, other: "AlgebraElement") -> None:
        if other.algebra is not self.algebra and other.algebra != self.algebra:
            raise DomainMismatchError("elements of different algebras")

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        self._check(other)
        R = self.algebra.base
        return AlgebraElement(self.algebra, tuple(R.add(a, b) for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "AlgebraElement":
        R = self.algebra.base
        return AlgebraElement(self.algebra, tuple(R.neg(a) for a in self.coords))

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        return self + (-other)

    def __mul__(self, other: "AlgebraElement") -> "AlgebraElement":
        self._check(other)
        return AlgebraElement(self.algebra, self.algebra._mul_vec(self.coords, other.coords))

    def scale(self, r: int) -> "AlgebraElement":
        R = self.algebra.base
        return AlgebraElement(self.algebra, tuple(R.mul(r, a) for a in self.coords))

    def __pow__(self, k: int) -> "AlgebraElement":
        result = self.algebra.one()
        for _ in range(k):
            result = result * self
        return result

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.coords == other.coords and (self.algebra is other.algebra or self.algebra == other.algebra)

    def __hash__(self) -> int:
        return hash(self.coords)

    def is_zero(self) -> bool:
        return all(c == self.algebra.base.zero for c in self.coords)

    def __str__(self) -> str:
        R = self.algebra.base
        names = R.names
        return format_linear([names[c] for c in self.coords], self.algebra.basis_names, names[R.zero], names[R.one])

    def __repr__(self) -> str:
        return f"AlgebraElement({self})"


def alg_arith(f: AlgebraElement, g: AlgebraElement | None, op: str):
    if op == "add":
        return f + g
    if op == "mul":
        return f * g
    if op == "neg":
        return -f
    if op == "eq":
        f._check(g)
        return f == g
    raise ValueError(f"unknown algebra operation {op!r}")


# -- constructors ------------------------------------------------------------


def _empty_struct(base: FiniteRing, m: int) -> np.ndarray:
    return np.full((m, m, m), base.zero, dtype=np.int64)


def alg_identity(base: FiniteRing, max_size: int | None = DEFAULT_MAX_ALG) -> FreeAlgebra:
    c = _empty_struct(base, 1)
    c[0, 0, 0] = base.one
    return FreeAlgebra(base, c, [base.one], ["1"], "id", None, max_size)


def alg_truncated(base: FiniteRing, d: int, max_size: int | None = DEFAULT_MAX_ALG) -> FreeAlgebra:
    """R[t]/(t^d) with basis 1, t, ..., t^(d-1); t is named x unless the base already uses x."""
    if d < 1:
        raise ValueError(f"truncation depth must be positive, got {d}")
    c = _empty_struct(base, d)
    for i in range(d):
        for j in range(d - i):
            c[i, j, i + j] = base.one
    unit = [base.one] + [base.zero] * (d - 1)
    symbol = _free_symbol(base, ("x", "y", "z", "u", "v", "w"))
    return FreeAlgebra(base, c, unit, power_names(symbol, d), "trunc", d, max_size)


def alg_quadratic(base: FiniteRing, a: int, max_size: int | None = DEFAULT_MAX_ALG) -> FreeAlgebra:
    """R[y]/(y^2 - a) with basis {1, y}."""
    a = int(a)
    c = _empty_struct(base, 2)
    c[0, 0, 0] = c[0, 1, 1] = c[1, 0, 1] = base.one
    c[1, 1, 0] = a
    symbol = _free_symbol(base, ("y", "z", "u", "v", "w"))
    return FreeAlgebra(base, c, [base.one, base.zero], ["1", symbol], "quad", a, max_size)


def alg_monoid(base: FiniteRing, monoid: MonoidTable, max_size: int | None = DEFAULT_MAX_ALG) -> FreeAlgebra:
    """Monoid algebra R[M] with e_u * e_v = e_{uv}."""
    if not monoid.is_commutative():
        raise InvalidMonoidError("monoid is not commutative")
    n = monoid.size
    c = _empty_struct(base, n)
    table = monoid.table
    for u in range(n):
        for v in range(n):
            c[u, v, table[u, v]] = base.one
    unit = [base.one if u == monoid.identity else base.zero for u in range(n)]
    return FreeAlgebra(base, c, unit, [f"e{u}" for u in range(n)], "monoid", monoid, max_size)


def alg_group(base: FiniteRing, n: int, max_size: int | None = DEFAULT_MAX_ALG) -> FreeAlgebra:
    """Group algebra R[Z/n] with basis 1, t, ..., t^(n-1)."""
    if n < 1:
        raise ValueError(f"group order must be positive, got {n}")
    algebra = alg_monoid(base, cyclic_group(n), max_size)
    symbol = _free_symbol(base, ("t", "s", "u", "v", "w"))
    algebra.basis_names = power_names(symbol, n)
    algebra.kind, algebra.param = "group", n
    return algebra


# -- content -----------------------------------------------------------------


def content(f: AlgebraElement) -> Ideal:
    """The ideal generated by the coordinates of f; (0) for f = 0."""
    return ideal_generate(f.algebra.base, f.coords)


def in_extended(f: AlgebraElement, ideal: Ideal) -> bool:
    """f in IS, tested coordinatewise (S is free)."""
    return all(c in ideal for c in f.coords)


def content_oracle(f: AlgebraElement) -> Ideal:
    """Intersection of every ideal I of R with f in IS."""
    R = f.algebra.base
    bits = (1 << R.size) - 1
    for ideal in lattice(R).ideals:
        if in_extended(f, ideal):
            bits &= ideal.members
    result = Ideal(R, bits)
    # Ohm-Rush: the intersection is itself one of the ideals
    assert in_extended(f, result), f"{f} not in c(f)S"
    return result


# -- base change and localization ---------------------------------------------


class AlgebraMap:
    """Coordinatewise image of S -> S' induced by a base ring map."""

    def __init__(self, source: FreeAlgebra, target: FreeAlgebra, ring_map: RingMap):
        self.source = source
        self.target = target
        self.ring_map = ring_map

    @cached_property
    def image(self) -> np.ndarray:
        return self.target.encode(self.ring_map.image[self.source.coords_table])

    def __call__(self, f: AlgebraElement) -> AlgebraElement:
        if f.algebra is not self.source and f.algebra != self.source:
            raise DomainMismatchError("element does not belong to the map's source")
        return self.target.element([self.ring_map(c) for c in f.coords])


def push_forward(S: FreeAlgebra, proj: RingMap) -> tuple[FreeAlgebra, AlgebraMap]:
    """S tensored along a surjection R -> R', keeping the basis."""
    target = proj.target
    c = proj.image[S.struct_consts]
    unit = [proj(u) for u in S.unit]
    param = proj(S.param) if S.kind == "quad" else S.param
    image = FreeAlgebra(target, c, unit, S.basis_names, S.kind, param, max_size=None, check=False)
    return image, AlgebraMap(S, image, proj)


def base_change(S: FreeAlgebra, ideal: Ideal) -> tuple[FreeAlgebra, AlgebraMap]:
    """S/IS as a free algebra over R/I."""
    if ideal.ring is not S.base and ideal.ring != S.base:
        raise DomainMismatchError("ideal does not live over the algebra's base ring")
    _, proj = make_quotient(S.base, ideal)
    return push_forward(S, proj)


def localize_algebra(S: FreeAlgebra, mult_set: SaturatedMultSet) -> tuple[FreeAlgebra, AlgebraMap]:
    if mult_set.ring is not S.base and mult_set.ring != S.base:
        raise DomainMismatchError("multiplicative set does not live over the algebra's base ring")
    _, proj = localize(S.base, mult_set)
    return push_forward(S, proj)
