"""Acceptance criteria 1-11, one test each.

Each test prints (and records for the terminal summary) one PASS/FAIL line.
Criteria are checked exactly as stated; nothing here is loosened to go green.
"""

import time

import pytest

from acceptance_log import criterion
from contentlab import (
    alg_group,
    alg_truncated,
    content,
    content_oracle,
    has_fidel_A,
    has_property_A,
    is_mccoy,
    is_weak_content_primes,
    is_weak_content_radical,
    make_zmod,
    parse_algebra,
    parse_element,
    parse_ring,
)
from contentlab import harness
from contentlab.cli import main
from contentlab.properties import sample_indices

EXAMPLE1 = "trunc(Z/2,4) | quad(x^3)"


def _bases(corpus):
    seen = {}
    for inst in corpus:
        seen.setdefault(inst.base.descriptor, inst.base)
    return list(seen.values())


def test_criterion_01_example1():
    with criterion(1, "cusp example (verify-example1), N in {4,5}") as note:
        failures, details = [], []
        for n in (4, 5):
            start = time.perf_counter()
            rep = harness.verify_example1(n)
            elapsed = time.perf_counter() - start
            for claim in ("content(y)^2 = (1)", "content(y^2) = (x^3)",
                          "radical(content(y^2)) = (x), proper", "weak content fails"):
                if not rep.assertions[claim]:
                    failures.append(f"N={n}: {claim} fails")
            if elapsed >= 10:
                failures.append(f"N={n}: {elapsed:.1f}s exceeds 10s")
            if not rep.mccoy.holds:
                failures.append(
                    f"N={n}: exhaustive scan reports mccoy=false "
                    f"(f={rep.mccoy.witness['f']}, g={rep.mccoy.witness['g']})"
                )
            details.append(f"N={n} {elapsed:.2f}s")
        assert not failures, "; ".join(failures)
        note["detail"] = ", ".join(details)


def test_criterion_02_wcarmc(timed_suite, default_corpus):
    summary, elapsed = timed_suite
    with criterion(2, "weak content <=> residually McCoy (prime) <=> (radical)") as note:
        assert summary.instance_count == len(default_corpus) > 0
        assert not summary.violations_for("wcarmc"), summary.violations_for("wcarmc")[:3]
        assert not [v for v in summary.violations if v["clause"] == "incomplete"]
        assert elapsed < 300, f"suite took {elapsed:.0f}s"
        note["detail"] = f"0 violations / {summary.instance_count} instances, suite {elapsed:.1f}s"


def test_criterion_03_noetherian(default_suite):
    with criterion(3, "five-way equivalence over Noetherian bases") as note:
        assert not default_suite.violations_for("noetherian"), default_suite.violations_for("noetherian")[:3]
        note["detail"] = f"{default_suite.instance_count} instances"


def test_criterion_04_diagram(default_suite):
    with criterion(4, "implication diagram pointwise"):
        assert not default_suite.violations_for("diagram"), default_suite.violations_for("diagram")[:3]


def test_criterion_05_semicontent_fidel(default_suite, default_corpus):
    with criterion(5, "semicontent => residually McCoy (all); fidel (A) bases") as note:
        assert not default_suite.violations_for("mccoy_sca_fidel")
        bases = _bases(default_corpus)
        for r in bases:
            assert has_property_A(r).holds, f"property (A) fails on {r.descriptor}"
            assert has_fidel_A(r).holds, f"fidel (A) fails on {r.descriptor}"
        note["detail"] = f"{len(bases)} base rings"


def test_criterion_06_ohm_rush(default_corpus):
    with criterion(6, "content equals the intersection oracle") as note:
        checked = 0
        for inst in default_corpus:
            S = inst.algebra
            idx = sample_indices(S, full_limit=1024, sample=1000)
            assert S.size > 1024 or len(idx) == S.size
            assert S.size <= 1024 or len(idx) == 1000
            for i in idx:
                f = S.from_index(int(i))
                assert content(f) == content_oracle(f), f"{inst.descriptor}: f={f}"
            checked += len(idx)
        note["detail"] = f"{checked} elements"


def test_criterion_07_dual(default_suite):
    with criterion(7, "radical and prime forms of weak content agree"):
        assert not default_suite.violations_for("dual_characterization")
        for rep in default_suite.reports:
            assert rep.holds("weak_content_radical") == rep.holds("weak_content_primes"), rep.descriptor


def test_criterion_08_localization(default_lemmas):
    with criterion(8, "localization lemmas (a) and (b)") as note:
        assert not default_lemmas.unit_localization_mismatches, default_lemmas.unit_localization_mismatches[:3]
        assert not default_lemmas.globalization_violations, default_lemmas.globalization_violations[:3]
        note["detail"] = (f"{default_lemmas.instance_count} instances, "
                          f"{default_lemmas.globalization_nonvacuous} non-vacuous for (b)")


def test_criterion_09_negative_controls(default_corpus):
    with criterion(9, "negative controls") as note:
        count = 0
        for r in _bases(default_corpus):
            for d in (2, 3):
                S = alg_truncated(r, d)
                assert not is_weak_content_radical(S).holds, f"{r.descriptor} trunc({d}) weak content"
                assert not is_weak_content_primes(S).holds, f"{r.descriptor} trunc({d}) weak content (primes)"
                count += 1
            S = alg_truncated(r, 2)
            x = S.basis(1)
            assert (x * x).is_zero() and content(x).is_unit()
            assert not is_mccoy(S).holds, f"{r.descriptor} trunc(2) is McCoy"
        F = alg_group(make_zmod(2), 2)
        v = is_mccoy(F)
        assert not v.holds and str(v.witness["f"]) == "1+t", f"F2[Z/2] witness {v.witness}"
        note["detail"] = f"{count} truncated algebras"


def test_criterion_10_search(default_suite):
    with criterion(10, "search sanity") as note:
        reports = default_suite.reports
        for question in harness.OPEN_QUESTIONS:
            res = harness.search_counterexample(reports, question)
            assert res.match is None, f"{question} matched {res.match.descriptor} (CRITICAL)"
        assert harness.search_counterexample(reports, "!ohm_rush_consistency").match is None
        found = harness.search_counterexample(reports, "mccoy & !weak_content")
        assert found.match is not None and found.match.descriptor == EXAMPLE1, (
            f"'mccoy & !weak_content' returned "
            f"{found.match.descriptor if found.match else 'absent'} over {found.searched} instances"
        )
        note["detail"] = f"found {found.match.descriptor}"


RING_SUITE = [
    "Z/1", "Z/2", "Z/9", "Z/12", "trunc(Z/2,4)", "trunc(Z/3,2)", "trunc(Z/4,2)", "prod(Z/2,Z/3)",
    "prod(Z/2,Z/2)", "prod(trunc(Z/2,2),Z/3)", "trunc(prod(Z/2,Z/2),2)", "trunc(trunc(Z/2,2),2)",
    "quot(Z/12; 4)", "quot(Z/12; 6, 4)", "quot(trunc(Z/2,4); x^2)", "quot(trunc(Z/2,4); x^3 + x^2)",
    "quot(prod(Z/2,Z/3); [1,0])", "quot(trunc(Z/3,3); 2x)",
]
ALG_SUITE = [
    ("Z/4", "id"), ("Z/4", "trunc(2)"), ("Z/6", "trunc(3)"), ("trunc(Z/2,4)", "quad(x^3)"),
    ("trunc(Z/2,4)", "quad(x^3 + x)"), ("Z/5", "quad(2)"), ("Z/6", "quad(-1)"), ("Z/3", "group(Z/3)"),
    ("prod(Z/2,Z/3)", "quad([1,2])"), ("trunc(Z/2,2)", "trunc(2)"), ("trunc(Z/2,2)", "group(Z/2)"),
    ("quot(Z/12; 4)", "quad(3)"),
]
ELEM_SUITE = [
    ("trunc(Z/2,4)", "quad(x^3)", "y*y"), ("trunc(Z/2,4)", "quad(x^3)", "(1+x)^3 y + x^2"),
    ("trunc(Z/2,4)", "quad(x^3)", "-(x y)^2"), ("Z/4", "trunc(2)", "2 + 3x"), ("Z/4", "trunc(2)", "(1+x)^3"),
    ("Z/6", "trunc(3)", "5x^2 - x + 7"), ("Z/6", "quad(5)", "(2+y)(3+y)"), ("Z/3", "group(Z/3)", "1 + t + t^2"),
    ("Z/2", "group(Z/2)", "(1+t)^2"), ("prod(Z/2,Z/3)", "quad([1,2])", "[1,1]y + [0,2]"),
    ("trunc(Z/2,2)", "trunc(2)", "x y + y"), ("trunc(Z/2,2)", "group(Z/2)", "x t + 1"),
    ("trunc(Z/3,2)", "quad(x)", "2x*y - 1"), ("quot(Z/12; 4)", "quad(3)", "3y + 2"),
    ("Z/5", "quad(2)", "(1+y)^4"), ("Z/9", "id", "-4"), ("Z/12", "trunc(2)", "11x - 13"),
    ("trunc(Z/2,4)", "trunc(2)", "x^3 + y"),
    ("prod(Z/2,Z/2)", "trunc(2)", "[1,0] + [0,1]x"), ("Z/8", "group(Z/2)", "3 - t"),
]


def _round_trip_cases():
    for text in RING_SUITE:
        yield ("ring", text, None, None)
    for base, alg in ALG_SUITE:
        yield ("alg", base, alg, None)
    for base, alg, elem in ELEM_SUITE:
        yield ("elem", base, alg, elem)


def test_criterion_11_cli_contract(capsys, monkeypatch):
    with criterion(11, "descriptor round-trip and exit statuses") as note:
        cases = list(_round_trip_cases())
        assert len(cases) == 50
        for kind, base_text, alg_text, elem_text in cases:
            base = parse_ring(base_text)
            again = parse_ring(base.descriptor)
            assert again == base, f"ring {base_text} -> {base.descriptor}"
            assert again.descriptor == base.descriptor
            if kind == "ring":
                continue
            S = parse_algebra(alg_text, base)
            S2 = parse_algebra(S.descriptor, again)
            assert S2 == S, f"algebra {alg_text} -> {S.descriptor}"
            if kind == "elem":
                f = parse_element(elem_text, S)
                assert parse_element(str(f), S2) == f, f"element {elem_text} -> {f}"
                assert str(parse_element(str(f), S)) == str(f)

        def status(*argv):
            code = main(list(argv))
            capsys.readouterr()
            return code

        assert status("check", "mccoy", "--base", "Z/4", "--alg", "trunc(2)") == 0
        assert status("verify-theorems", "--moduli", "2,3", "--depths", "2", "--composite", "Z/4") == 0
        assert status("content", "--base", "trunc(Z/0,2)", "--alg", "id", "--elem", "1") == 2
        assert status("check", "nonsense", "--base", "Z/4", "--alg", "id") == 2
        assert status("analyze", "--base", "Z/4") == 2
        assert status("verify-example1", "--depth", "3") == 2
        from contentlab import properties

        with monkeypatch.context() as m:
            m.setitem(properties.CHECKERS, "semicontent", lambda S: properties.Verdict(True))
            assert status("verify-theorems", "--moduli", "4", "--depths", "2", "--composite", "Z/2") == 1
        note["detail"] = f"{len(cases)} expressions"


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-v"]))
