"""Decision procedures for content-theoretic properties of free algebras.

Each checker returns a :class:`Verdict`.  A failing verdict always carries a
witness, chosen as the first one in canonical element order, and
:func:`revalidate` re-derives the failure from the raw definitions.

Weak content (radical form), the Dedekind-Mertens condition and the
semicontent condition only look at a pair ``(f, g)`` through the triple of
content ideals ``(c(f), c(g), c(fg))``.  :func:`pair_profile` runs the
``|S|^2`` product scan once per algebra and records, for every triple that
occurs, the first pair producing it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

import numpy as np

from .algebra import (
    AlgebraElement,
    FreeAlgebra,
    base_change,
    content,
    content_oracle,
    in_extended,
)
from .finring import FiniteRing, localize, make_quotient
from .ideals import (
    annihilator,
    image_ideal,
    lattice,
    radical,
    saturated_mult_sets,
    spectrum,
)

DEFAULT_NMAX = 8


@dataclass
class Verdict:
    holds: bool
    witness: dict[str, Any] | None = None
    checked_count: int = 0
    info: dict[str, Any] = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.holds

    def __post_init__(self):
        if not self.holds and self.witness is None:
            raise ValueError("a failing verdict needs a witness")


def _zero_index(S: FreeAlgebra) -> int:
    return S.zero().index


def _zero_divisor_scan(S: FreeAlgebra, candidates: np.ndarray) -> tuple[int, int] | None:
    """First (f, g) with f in candidates, g != 0 and fg = 0, in canonical order."""
    zero = _zero_index(S)
    for block, prods in S.product_blocks(candidates):
        hits = prods == zero
        hits[:, zero] = False
        rows = np.flatnonzero(hits.any(axis=1))
        if len(rows):
            r = rows[0]
            return int(block[r]), int(np.argmax(hits[r]))
    return None


def pair_profile(S: FreeAlgebra) -> dict[tuple[int, int, int], tuple[int, int]]:
    """Map each occurring (c(f), c(g), c(fg)) lattice-position triple to its first pair."""
    cached = S.__dict__.get("_pair_profile")
    if cached is not None:
        return cached
    L = len(lattice(S.base))
    cid = S.content_ids
    n = S.size
    found: dict[int, tuple[int, int]] = {}
    for block, prods in S.product_blocks():
        code = (cid[block][:, None] * L + cid[None, :]) * L + cid[prods]
        values, first = np.unique(code.ravel(), return_index=True)
        for v, pos in zip(values.tolist(), first.tolist()):
            if v not in found:
                found[v] = (int(block[pos // n]), pos % n)
    profile = {(v // (L * L), (v // L) % L, v % L): pair for v, pair in found.items()}
    S.__dict__["_pair_profile"] = profile
    return profile


def _first_failure(profile, failing) -> tuple[tuple[int, int, int], tuple[int, int]] | None:
    best = None
    for triple, pair in profile.items():
        if failing(triple) and (best is None or pair < best[1]):
            best = (triple, pair)
    return best


# -- McCoy -------------------------------------------------------------------


def is_mccoy(S: FreeAlgebra) -> Verdict:
    """Every zero-divisor f of S has c(f) killed by a nonzero element of R.

    Only f whose content has zero annihilator can break the property, so
    the zero-divisor scan is restricted to those.
    """
    lat = lattice(S.base)
    candidates = np.flatnonzero(~lat.annihilator_nonzero[S.content_ids])
    hit = _zero_divisor_scan(S, candidates)
    checked = len(candidates) * S.size
    if hit is None:
        return Verdict(True, checked_count=checked)
    f, g = hit
    return Verdict(False, {"f": S.from_index(f), "g": S.from_index(g)}, checked)


# -- weak content ---------------------------------------------------------------


def is_weak_content_radical(S: FreeAlgebra) -> Verdict:
    """rad c(fg) = rad c(f)c(g) for all f, g."""
    lat = lattice(S.base)
    rad, prod = lat.radical_of, lat.product_table
    profile = pair_profile(S)
    bad = _first_failure(profile, lambda t: rad[t[2]] != rad[prod[t[0], t[1]]])
    checked = S.size * S.size
    if bad is None:
        return Verdict(True, checked_count=checked)
    f, g = bad[1]
    return Verdict(False, {"f": S.from_index(f), "g": S.from_index(g)}, checked)


def is_weak_content_primes(S: FreeAlgebra) -> Verdict:
    """For every prime p of R, pS = S or S/pS has no nonzero zero-divisors."""
    checked = 0
    for p in spectrum(S.base):
        fiber, _ = base_change(S, p)
        if fiber.size == 1:
            continue
        zero = _zero_index(fiber)
        nonzero = np.array([i for i in range(fiber.size) if i != zero], dtype=np.int64)
        checked += fiber.size * fiber.size
        hit = _zero_divisor_scan(fiber, nonzero)
        if hit is not None:
            f, g = hit
            witness = {"prime": p, "f": fiber.from_index(f), "g": fiber.from_index(g)}
            return Verdict(False, witness, checked)
    return Verdict(True, checked_count=checked)


# -- Dedekind-Mertens / content algebra ---------------------------------------


def dm_exact(lat, cf: int, cg: int, cfg: int) -> int | None:
    """Least n with c(f)^(n+1) c(g) = c(f)^n c(fg), on lattice positions.

    The chain c(f)^n (n >= 1) descends and so stabilizes; past that point
    both sides are constant, so absence is decided once it settles.
    """
    prod = lat.product_table
    power, n = lat.unit_id, 0
    while True:
        nxt = int(prod[power, cf])
        if prod[nxt, cg] == prod[power, cfg]:
            return n
        if n >= 1 and nxt == power:
            return None
        power, n = nxt, n + 1


def dedekind_mertens_number(f: AlgebraElement, g: AlgebraElement, n_max: int = DEFAULT_NMAX) -> int | None:
    """Least n <= n_max with c(f)^(n+1) c(g) = c(f)^n c(fg), or None."""
    cf, cg, cfg = content(f), content(g), content(f * g)
    power = cf**0
    for n in range(n_max + 1):
        nxt = power * cf
        if nxt * cg == power * cfg:
            return n
        power = nxt
    return None


def is_content_algebra(S: FreeAlgebra, n_max: int = DEFAULT_NMAX) -> Verdict:
    """Faithfully flat (free) and Dedekind-Mertens with exponent at most n_max.

    The witness records whether the failing pair has no exponent at all
    ("definite") or only one beyond n_max ("nmax_exhausted").
    """
    lat = lattice(S.base)
    profile = pair_profile(S)
    checked = S.size * S.size
    if not S.faithfully_flat:
        return Verdict(False, {"reason": "not faithfully flat"}, 0)
    numbers = {t: dm_exact(lat, *t) for t in profile}
    bad = _first_failure(profile, lambda t: numbers[t] is None or numbers[t] > n_max)
    finite = [n for n in numbers.values() if n is not None]
    info = {"max_dm_number": max(finite) if finite else None}
    if bad is None:
        return Verdict(True, checked_count=checked, info=info)
    triple, (f, g) = bad
    kind = "definite" if numbers[triple] is None else "nmax_exhausted"
    witness = {"f": S.from_index(f), "g": S.from_index(g), "kind": kind}
    if numbers[triple] is not None:
        witness["dm_number"] = numbers[triple]
    return Verdict(False, witness, checked, info)


# -- semicontent ----------------------------------------------------------------


def is_semicontent(S: FreeAlgebra) -> Verdict:
    """c(f) meeting W forces c(fg)_W = c(g)_W, for every saturated W."""
    lat = lattice(S.base)
    profile = pair_profile(S)
    checked = 0
    if not S.faithfully_flat:
        return Verdict(False, {"reason": "not faithfully flat"}, 0)
    for T in saturated_mult_sets(S.base):
        _, proj = localize(S.base, T)
        images = [image_ideal(proj, ideal).members for ideal in lat.ideals]
        meets = [T.meets(ideal) for ideal in lat.ideals]
        checked += S.size * S.size
        bad = _first_failure(profile, lambda t: meets[t[0]] and images[t[2]] != images[t[1]])
        if bad is not None:
            f, g = bad[1]
            return Verdict(False, {"mult_set": T, "f": S.from_index(f), "g": S.from_index(g)}, checked)
    return Verdict(True, checked_count=checked)


# -- residually McCoy -----------------------------------------------------------


def is_residually_mccoy(S: FreeAlgebra, family: str = "all") -> Verdict:
    """R/I -> S/IS is McCoy for every ideal I in the family."""
    checked = 0
    for ideal in lattice(S.base).family(family):
        fiber, _ = base_change(S, ideal)
        inner = is_mccoy(fiber)
        checked += inner.checked_count
        if not inner.holds:
            witness = {"ideal": ideal, "f": inner.witness["f"], "g": inner.witness["g"]}
            return Verdict(False, witness, checked)
    return Verdict(True, checked_count=checked)


# -- property (A) ---------------------------------------------------------------


def has_property_A(R: FiniteRing) -> Verdict:
    """Every ideal made of zero-divisors has a nonzero annihilator."""
    zd = R.zero_divisor_mask
    checked = 0
    for J in lattice(R).ideals:
        if not zd[J.indices].all():
            continue
        checked += 1
        if annihilator(J).is_zero():
            return Verdict(False, {"ideal": J}, checked)
    return Verdict(True, checked_count=checked)


def has_fidel_A(R: FiniteRing) -> Verdict:
    """Property (A) for R/I, for every ideal I."""
    checked = 0
    for ideal in lattice(R).ideals:
        quotient, _ = make_quotient(R, ideal)
        inner = has_property_A(quotient)
        checked += inner.checked_count
        if not inner.holds:
            return Verdict(False, {"ideal": ideal, "inner": inner.witness["ideal"]}, checked)
    return Verdict(True, checked_count=checked)


# -- Ohm-Rush consistency -------------------------------------------------------


def sample_indices(S: FreeAlgebra, full_limit: int = 1024, sample: int = 1000, seed: int = 0) -> np.ndarray:
    if S.size <= full_limit:
        return np.arange(S.size, dtype=np.int64)
    rng = np.random.default_rng(seed)
    return np.sort(rng.choice(S.size, size=min(sample, S.size), replace=False))


def ohm_rush_consistency(S: FreeAlgebra, full_limit: int = 1024, sample: int = 1000, seed: int = 0) -> Verdict:
    """content(f) = content_oracle(f), f in c(f)S, and the bulk content table agrees."""
    lat = lattice(S.base)
    seen: dict[frozenset, int] = {}
    indices = sample_indices(S, full_limit, sample, seed)
    for i in indices:
        f = S.from_index(int(i))
        key = frozenset(f.coords)
        if key not in seen:
            direct = content(f)
            oracle = content_oracle(f)
            if direct != oracle or not in_extended(f, direct):
                return Verdict(False, {"f": f, "content": direct, "oracle": oracle}, len(seen))
            seen[key] = lat.index(direct)
        if S.content_ids[i] != seen[key]:
            return Verdict(False, {"f": f, "content": lat.ideals[seen[key]], "table": lat.ideals[S.content_ids[i]]}, len(seen))
    return Verdict(True, checked_count=len(indices))


CHECKERS = {
    "mccoy": is_mccoy,
    "weak_content_radical": is_weak_content_radical,
    "weak_content_primes": is_weak_content_primes,
    "content_algebra": is_content_algebra,
    "semicontent": is_semicontent,
    "residually_mccoy_all": lambda S: is_residually_mccoy(S, "all"),
    "residually_mccoy_radical": lambda S: is_residually_mccoy(S, "radical"),
    "residually_mccoy_prime": lambda S: is_residually_mccoy(S, "prime"),
    "ohm_rush_consistency": ohm_rush_consistency,
}


# -- witness re-validation ------------------------------------------------------


def _mccoy_failure(f: AlgebraElement, g: AlgebraElement) -> bool:
    R = f.algebra.base
    if not (f * g).is_zero() or g.is_zero():
        return False
    for r in range(R.size):
        if r != R.zero and all(R.mul(r, c) == R.zero for c in f.coords):
            return False
    return True


def revalidate(S: FreeAlgebra, name: str, verdict: Verdict, n_max: int = DEFAULT_NMAX) -> bool:
    """True when a failing verdict's witness really violates the definition.

    A malformed witness (missing or mistyped fields) does not re-validate.
    """
    if verdict.holds:
        return True
    try:
        return _revalidate(S, name, verdict.witness, n_max)
    except (KeyError, TypeError, AttributeError):
        return False


def _revalidate(S: FreeAlgebra, name: str, w: dict, n_max: int) -> bool:
    if "reason" in w:
        return not S.faithfully_flat
    if name == "mccoy":
        return _mccoy_failure(w["f"], w["g"])
    if name.startswith("residually_mccoy"):
        fiber, _ = base_change(S, w["ideal"])
        return fiber == w["f"].algebra and _mccoy_failure(w["f"], w["g"])
    if name == "weak_content_radical":
        f, g = w["f"], w["g"]
        return radical(content(f * g)) != radical(content(f) * content(g))
    if name == "weak_content_primes":
        p, f, g = w["prime"], w["f"], w["g"]
        fiber, _ = base_change(S, p)
        return (
            p.is_prime() and fiber == f.algebra
            and not f.is_zero() and not g.is_zero() and (f * g).is_zero()
        )
    if name == "content_algebra":
        f, g = w["f"], w["g"]
        return dedekind_mertens_number(f, g, n_max) is None
    if name == "semicontent":
        T, f, g = w["mult_set"], w["f"], w["g"]
        _, proj = localize(S.base, T)
        return T.meets(content(f)) and image_ideal(proj, content(f * g)) != image_ideal(proj, content(g))
    if name == "ohm_rush_consistency":
        f = w["f"]
        if "table" in w:
            return w["table"] != content(f)
        return content(f) != content_oracle(f)
    raise ValueError(f"no re-validation rule for {name!r}")


def revalidate_ring(R: FiniteRing, name: str, verdict: Verdict) -> bool:
    if verdict.holds:
        return True
    if name == "property_A":
        J = verdict.witness["ideal"]
        return bool(R.zero_divisor_mask[J.indices].all()) and annihilator(J).is_zero()
    if name == "fidel_A":
        quotient, proj = make_quotient(R, verdict.witness["ideal"])
        return not has_property_A(quotient).holds
    raise ValueError(f"no re-validation rule for {name!r}")

