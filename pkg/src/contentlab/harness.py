"""Corpus generation, per-instance reports, and the theorem-suite runner.

Every corpus instance is built by parsing its descriptor pair, so a
descriptor always reconstructs its instance exactly.  The suite checks the
equivalences and implications among the decided properties pointwise; over
finite (hence Noetherian, zero-dimensional) bases every one of them is a
theorem, so a violation is always a bug in this package.
"""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable

from .algebra import DEFAULT_MAX_ALG, AlgebraElement, FreeAlgebra, base_change, content, localize_algebra
from .descriptors import parse_algebra, parse_ring
from .errors import DegenerateDepthError, SizeCapError
from .finring import DEFAULT_MAX_RING, FiniteRing, make_truncated_poly_ring, make_zmod
from .ideals import Ideal, SaturatedMultSet, ideal_generate, lattice, radical, spectrum, zero_ideal
from .properties import (
    CHECKERS,
    DEFAULT_NMAX,
    Verdict,
    has_fidel_A,
    has_property_A,
    is_content_algebra,
    is_mccoy,
    ohm_rush_consistency,
    revalidate,
    revalidate_ring,
)
from .algebra import alg_quadratic

log = logging.getLogger(__name__)

SCHEMA_VERSION = 1

DEFAULT_MODULI = (2, 3, 4, 5, 6, 8, 9, 12)
DEFAULT_DEPTHS = (2, 3)
DEFAULT_GROUPS = (2, 3)
DEFAULT_COMPOSITES = ("trunc(Z/2,2)", "prod(Z/2,Z/2)", "trunc(Z/2,4)")


@dataclass(frozen=True)
class CorpusParams:
    moduli: tuple[int, ...] = DEFAULT_MODULI
    depths: tuple[int, ...] = DEFAULT_DEPTHS
    quad: bool = True
    groups: tuple[int, ...] = DEFAULT_GROUPS
    monoids: tuple[str, ...] = ()
    composites: tuple[str, ...] = DEFAULT_COMPOSITES
    identity: bool = True
    max_ring: int = DEFAULT_MAX_RING
    max_alg: int = DEFAULT_MAX_ALG
    seed: int = 0


@dataclass
class Instance:
    base: FiniteRing
    algebra: FreeAlgebra

    @property
    def descriptor(self) -> str:
        return f"{self.base.descriptor} | {self.algebra.descriptor}"


@dataclass
class Corpus:
    instances: list[Instance]
    params: CorpusParams
    skipped: list[tuple[str, str]] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.instances)

    def __iter__(self):
        return iter(self.instances)


def instance_from_descriptor(base_text: str, alg_text: str, max_ring: int = DEFAULT_MAX_RING, max_alg: int = DEFAULT_MAX_ALG) -> Instance:
    base = parse_ring(base_text, max_ring)
    return Instance(base, parse_algebra(alg_text, base, max_alg))


def _algebra_descriptors(base: FiniteRing, params: CorpusParams) -> list[str]:
    out = []
    if params.identity:
        out.append("id")
    out += [f"trunc({d})" for d in params.depths]
    if params.quad:
        out += [f"quad({name})" for name in base.names]
    out += [f"group(Z/{k})" for k in params.groups]
    out += [f"monoid({path})" for path in params.monoids]
    return out


def generate_corpus(params: CorpusParams = CorpusParams()) -> Corpus:
    """Deterministic grid: Z/n bases first, then composites, each with every algebra family."""
    instances, skipped = [], []
    bases = [f"Z/{n}" for n in params.moduli] + list(params.composites)
    for base_text in bases:
        try:
            base = parse_ring(base_text, params.max_ring)
        except SizeCapError as exc:
            log.warning("skipping base %s: %s", base_text, exc)
            skipped.append((base_text, str(exc)))
            continue
        for alg_text in _algebra_descriptors(base, params):
            try:
                instances.append(Instance(base, parse_algebra(alg_text, base, params.max_alg)))
            except SizeCapError as exc:
                log.warning("skipping %s | %s: %s", base_text, alg_text, exc)
                skipped.append((f"{base_text} | {alg_text}", str(exc)))
    return Corpus(instances, params, skipped)


# -- reports -------------------------------------------------------------------

# clause name -> (theorem label, verdict names it relates)
CLAUSES: dict[str, tuple[str, tuple[str, ...]]] = {
    "dual_characterization": ("weak content characterizations", ("weak_content_radical", "weak_content_primes")),
    "wcarmc": ("weak content iff residually McCoy (prime, radical)", ("weak_content_radical", "residually_mccoy_prime", "residually_mccoy_radical")),
    "noetherian": ("Noetherian five-way equivalence", ("weak_content_radical", "semicontent", "residually_mccoy_all", "residually_mccoy_radical", "residually_mccoy_prime")),
    "content_implies_semicontent": ("implication diagram", ("content_algebra", "semicontent")),
    "semicontent_implies_weak": ("implication diagram", ("semicontent", "weak_content_radical")),
    "residual_implies_weak": ("implication diagram", ("residually_mccoy_all", "weak_content_radical")),
    "residual_implies_mccoy": ("implication diagram", ("residually_mccoy_all", "mccoy")),
    "semicontent_implies_residual": ("semicontent over locally fidel (A) base", ("semicontent", "residually_mccoy_all")),
    "mccoy_is_zero_residue": ("McCoy equals the residual check at (0)", ("mccoy", "mccoy_at_zero")),
    "ring_property_A": ("finite rings have fidel (A)", ()),
    "ohm_rush": ("content equals its oracle", ("ohm_rush_consistency",)),
    "witnesses": ("failing witnesses re-validate", ()),
}

THEOREM_GROUPS = {
    "wcarmc": ("wcarmc",),
    "noetherian": ("noetherian",),
    "diagram": ("content_implies_semicontent", "semicontent_implies_weak", "residual_implies_weak", "residual_implies_mccoy"),
    "mccoy_sca_fidel": ("semicontent_implies_residual", "ring_property_A"),
    "dual_characterization": ("dual_characterization",),
    "ohm_rush": ("ohm_rush",),
    "internal": ("mccoy_is_zero_residue", "witnesses"),
}


@dataclass
class PropertyReport:
    base_descriptor: str
    alg_descriptor: str
    verdicts: dict[str, Verdict]
    ring_facts: dict[str, Any]
    timings: dict[str, float]
    inconsistencies: list[dict[str, Any]] = field(default_factory=list)
    incomplete: str | None = None

    @property
    def descriptor(self) -> str:
        return f"{self.base_descriptor} | {self.alg_descriptor}"

    @property
    def consistent(self) -> bool:
        return not self.inconsistencies and self.incomplete is None

    def holds(self, name: str) -> bool:
        aliases = {"weak_content": "weak_content_radical", "content": "content_algebra"}
        name = aliases.get(name, name)
        if name in self.verdicts:
            return self.verdicts[name].holds
        if name in ("property_A", "fidel_A"):
            return self.ring_facts[name].holds
        raise KeyError(name)

    @property
    def flags(self) -> dict[str, bool]:
        out = {name: v.holds for name, v in self.verdicts.items()}
        out["weak_content"] = out.get("weak_content_radical", False)
        out["property_A"] = self.ring_facts["property_A"].holds
        out["fidel_A"] = self.ring_facts["fidel_A"].holds
        return out


def _clause_holds(name: str, v: dict[str, bool], report_facts: dict[str, Any]) -> bool:
    if name == "dual_characterization":
        return v["weak_content_radical"] == v["weak_content_primes"]
    if name == "wcarmc":
        return v["weak_content_radical"] == v["residually_mccoy_prime"] == v["residually_mccoy_radical"]
    if name == "noetherian":
        return len({v[k] for k in CLAUSES["noetherian"][1]}) == 1
    if name == "content_implies_semicontent":
        return not v["content_algebra"] or v["semicontent"]
    if name == "semicontent_implies_weak":
        return not v["semicontent"] or v["weak_content_radical"]
    if name == "residual_implies_weak":
        return not v["residually_mccoy_all"] or v["weak_content_radical"]
    if name == "residual_implies_mccoy":
        return not v["residually_mccoy_all"] or v["mccoy"]
    if name == "semicontent_implies_residual":
        return not v["semicontent"] or v["residually_mccoy_all"]
    if name == "mccoy_is_zero_residue":
        return v["mccoy"] == v["mccoy_at_zero"]
    if name == "ring_property_A":
        return report_facts["property_A"].holds and report_facts["fidel_A"].holds
    if name == "ohm_rush":
        return v["ohm_rush_consistency"]
    raise KeyError(name)


def full_report(
    instance: Instance,
    n_max: int = DEFAULT_NMAX,
    seed: int = 0,
) -> PropertyReport:
    S, R = instance.algebra, instance.base
    verdicts: dict[str, Verdict] = {}
    timings: dict[str, float] = {}
    report = PropertyReport(R.descriptor, S.descriptor, verdicts, {}, timings)
    checkers: dict[str, Callable[[], Verdict]] = {
        name: (lambda fn=fn: fn(S)) for name, fn in CHECKERS.items()
    }
    checkers["content_algebra"] = lambda: is_content_algebra(S, n_max)
    checkers["ohm_rush_consistency"] = lambda: ohm_rush_consistency(S, seed=seed)
    checkers["mccoy_at_zero"] = lambda: is_mccoy(base_change(S, zero_ideal(R))[0])
    for name, run in checkers.items():
        start = time.perf_counter()
        try:
            verdicts[name] = run()
        except SizeCapError as exc:
            report.incomplete = f"{name}: {exc}"
            return report
        timings[name] = time.perf_counter() - start
    start = time.perf_counter()
    report.ring_facts = {
        "property_A": has_property_A(R),
        "fidel_A": has_fidel_A(R),
        "spectrum_size": len(spectrum(R)),
        "ideal_count": len(lattice(R)),
        "ring_size": R.size,
        "algebra_size": S.size,
        "rank": S.rank,
    }
    timings["ring_facts"] = time.perf_counter() - start

    flags = {name: v.holds for name, v in verdicts.items()}
    for clause in CLAUSES:
        if clause == "witnesses":
            continue
        if not _clause_holds(clause, flags, report.ring_facts):
            involved = CLAUSES[clause][1]
            report.inconsistencies.append({
                "clause": clause,
                "theorem": CLAUSES[clause][0],
                "verdicts": {k: flags[k] for k in involved},
                "witnesses": {k: verdicts[k].witness for k in involved if verdicts[k].witness},
            })
    bad = [name for name, v in verdicts.items() if name != "mccoy_at_zero" and not revalidate(S, name, v, n_max)]
    if name_ring_bad := [k for k in ("property_A", "fidel_A") if not revalidate_ring(R, k, report.ring_facts[k])]:
        bad += name_ring_bad
    if bad:
        report.inconsistencies.append({
            "clause": "witnesses", "theorem": CLAUSES["witnesses"][0],
            "verdicts": {k: False for k in bad}, "witnesses": {},
        })
    return report


# -- suites --------------------------------------------------------------------


@dataclass
class SuiteSummary:
    instance_count: int
    violations: list[dict[str, Any]]
    reports: list[PropertyReport]

    @property
    def passed(self) -> bool:
        return not self.violations

    def violations_for(self, group: str) -> list[dict[str, Any]]:
        clauses = THEOREM_GROUPS[group]
        return [v for v in self.violations if v["clause"] in clauses]

    def counts(self) -> dict[str, int]:
        return {group: len(self.violations_for(group)) for group in THEOREM_GROUPS}

    def summary_line(self) -> str:
        return f"{len(self.violations)} violations / {self.instance_count} instances"


def verify_theorem_suite(corpus: Iterable[Instance] | Iterable[PropertyReport], n_max: int = DEFAULT_NMAX, seed: int = 0) -> SuiteSummary:
    reports = [item if isinstance(item, PropertyReport) else full_report(item, n_max, seed) for item in corpus]
    violations = []
    for report in reports:
        if report.incomplete:
            violations.append({"instance": report.descriptor, "clause": "incomplete", "detail": report.incomplete})
        for bad in report.inconsistencies:
            violations.append({"instance": report.descriptor, **bad})
    return SuiteSummary(len(reports), violations, reports)


@dataclass
class LemmaSummary:
    instance_count: int
    unit_localization_mismatches: list[str]
    globalization_violations: list[str]
    globalization_nonvacuous: int

    @property
    def passed(self) -> bool:
        return not self.unit_localization_mismatches and not self.globalization_violations


def verify_localization_lemmas(corpus: Iterable[Instance]) -> LemmaSummary:
    """(a) McCoy is unchanged by inverting the regular elements (the units here);
    (b) McCoy at every maximal ideal implies McCoy."""
    count, mismatches, violations, nonvacuous = 0, [], [], 0
    for inst in corpus:
        count += 1
        S, R = inst.algebra, inst.base
        primes = spectrum(R)
        global_mccoy = is_mccoy(S).holds
        units_only = SaturatedMultSet(R, tuple(primes))
        local, _ = localize_algebra(S, units_only)
        if is_mccoy(local).holds != global_mccoy:
            mismatches.append(inst.descriptor)
        maximal = [m for m in primes if m.is_maximal()]
        local_all = all(is_mccoy(localize_algebra(S, SaturatedMultSet(R, (m,)))[0]).holds for m in maximal)
        if local_all:
            nonvacuous += 1
            if not global_mccoy:
                violations.append(inst.descriptor)
    return LemmaSummary(count, mismatches, violations, nonvacuous)


@dataclass
class Example1Report:
    depth: int
    content_y_squared_ideal: Ideal
    content_of_y_squared: Ideal
    radical_of_content: Ideal
    weak_content_radical: Verdict
    weak_content_primes: Verdict
    mccoy: Verdict
    assertions: dict[str, bool]

    @property
    def passed(self) -> bool:
        return all(self.assertions.values())


def example1_instance(depth: int, max_alg: int = DEFAULT_MAX_ALG) -> Instance:
    R, x = make_truncated_poly_ring(make_zmod(2), depth, max_size=None)
    return Instance(R, alg_quadratic(R, (x**3).index, max_alg))


def verify_example1(depth: int, max_alg: int = DEFAULT_MAX_ALG) -> Example1Report:
    """Finite analog over F2[x]/(x^N) of the cusp algebra R[y]/(y^2 - x^3)."""
    if depth < 4:
        raise DegenerateDepthError(f"depth {depth} < 4 makes x^3 = 0, degenerating the content claims")
    if 4**depth > max_alg:
        raise SizeCapError(f"cusp algebra at depth {depth}", 4**depth, max_alg)
    inst = example1_instance(depth, max_alg)
    R, S = inst.base, inst.algebra
    x = R.symbols["x"]
    y = S.basis(1)
    unit = ideal_generate(R, [R.one])
    c_y = content(y)
    c_y2 = content(y * y)
    rad = radical(c_y2)
    x3 = ideal_generate(R, [R.power(x, 3)])
    wc_r = CHECKERS["weak_content_radical"](S)
    wc_p = CHECKERS["weak_content_primes"](S)
    assertions = {
        "content(y)^2 = (1)": c_y * c_y == unit,
        "content(y^2) = (x^3)": c_y2 == x3,
        "radical(content(y^2)) = (x), proper": rad == ideal_generate(R, [x]) and not rad.is_unit(),
        "weak content fails": not wc_r.holds and not wc_p.holds,
        "weak content witness is (y, y)": (not wc_r.holds and wc_r.witness["f"] == y and wc_r.witness["g"] == y),
    }
    return Example1Report(depth, c_y * c_y, c_y2, rad, wc_r, wc_p, is_mccoy(S), assertions)


# -- search --------------------------------------------------------------------

PREDICATES: dict[str, str] = {
    "mccoy_not_weak_content": "mccoy & !weak_content",
    "semicontent_not_content": "semicontent & !content_algebra",
    "weak_content_not_semicontent": "weak_content & !semicontent",
    "not_ohm_rush": "!ohm_rush_consistency",
}

OPEN_QUESTIONS = ("semicontent_not_content", "weak_content_not_semicontent")


def compile_predicate(text: str) -> Callable[[PropertyReport], bool]:
    """Boolean expression over report flags: names, !/not, &/and, |/or, parentheses."""
    import re

    text = PREDICATES.get(text, text)
    tokens = re.findall(r"[A-Za-z_]+|[!&|()]", text)
    pos = 0

    def peek():
        return tokens[pos] if pos < len(tokens) else None

    def take():
        nonlocal pos
        if pos >= len(tokens):
            raise ValueError(f"unexpected end of predicate {text!r}")
        pos += 1
        return tokens[pos - 1]

    def disj():
        node = conj()
        while peek() in ("|", "or"):
            take()
            left, right = node, conj()
            node = lambda r, a=left, b=right: a(r) or b(r)
        return node

    def conj():
        node = neg()
        while peek() in ("&", "and"):
            take()
            left, right = node, neg()
            node = lambda r, a=left, b=right: a(r) and b(r)
        return node

    def neg():
        if peek() in ("!", "not"):
            take()
            inner = neg()
            return lambda r: not inner(r)
        if peek() == "(":
            take()
            node = disj()
            if take() != ")":
                raise ValueError(f"unbalanced parentheses in predicate {text!r}")
            return node
        name = take()
        if not re.fullmatch(r"[A-Za-z_]+", name):
            raise ValueError(f"malformed predicate {text!r}")
        return lambda r: r.holds(name)

    pred = disj()
    if pos != len(tokens):
        raise ValueError(f"trailing tokens in predicate {text!r}")
    return pred


@dataclass
class SearchResult:
    predicate: str
    match: PropertyReport | None
    critical: bool
    searched: int


def search_counterexample(corpus: Iterable[Instance] | Iterable[PropertyReport], predicate: str, n_max: int = DEFAULT_NMAX) -> SearchResult:
    """First instance (canonical order) whose report satisfies the predicate.

    A match for an open-question predicate is flagged critical: over finite
    bases it can only come from a bug.
    """
    pred = compile_predicate(predicate)
    open_preds = [compile_predicate(PREDICATES[q]) for q in OPEN_QUESTIONS]
    searched = 0
    for item in corpus:
        report = item if isinstance(item, PropertyReport) else full_report(item, n_max)
        searched += 1
        if report.incomplete:
            continue
        if pred(report):
            critical = any(p(report) for p in open_preds)
            return SearchResult(predicate, report, critical, searched)
    return SearchResult(predicate, None, False, searched)


# -- serialization -------------------------------------------------------------


def render(value) -> Any:
    if isinstance(value, (AlgebraElement, Ideal, SaturatedMultSet)):
        return str(value)
    if isinstance(value, dict):
        return {k: render(v) for k, v in value.items()}
    if isinstance(value, Verdict):
        return value.holds
    return value


def report_to_json(report: PropertyReport, timings: bool = True) -> dict[str, Any]:
    record = {
        "schema_version": SCHEMA_VERSION,
        "descriptor": {"base": report.base_descriptor, "algebra": report.alg_descriptor},
        "verdicts": {k: v.holds for k, v in report.verdicts.items()},
        "witnesses": {k: render(v.witness) for k, v in report.verdicts.items() if v.witness},
        "ring_facts": render(report.ring_facts),
        "consistent": report.consistent,
        "inconsistencies": render(report.inconsistencies),
        "incomplete": report.incomplete,
    }
    if timings:
        record["timings"] = {k: round(v, 6) for k, v in report.timings.items()}
    return record


def summary_to_json(summary: SuiteSummary) -> dict[str, Any]:
    return {
        "schema_version": SCHEMA_VERSION,
        "instance_count": summary.instance_count,
        "violation_count": len(summary.violations),
        "by_theorem": summary.counts(),
        "violations": render(summary.violations),
    }
