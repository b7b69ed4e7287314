"""Acceptance criteria 1-12, one reported line each.

Run with ``pytest tests/test_acceptance.py`` (lines appear in the terminal
summary) or directly with ``python tests/test_acceptance.py``.
"""

from __future__ import annotations

import itertools
import random
import time
from fractions import Fraction

from tropbundles import cech, semiring as sr, submodules as sm, topo, valuations as vl
from tropbundles.linalg import (LiftInstance, all_matrices, boolean_module_corpus,
                                check_projectivity_witness, find_basis, gln_compose, gln_decompose,
                                gln_recompose, invert, is_generalized_permutation, module_homs,
                                perm_compose, projective_example, random_gln)
from tropbundles.polynomial import Verdict, quotient
from tropbundles.puiseux import PuiseuxScalar, valuation
from tropbundles.semiring import BOOLEAN, TROPICAL

REPORT: list[str] = []


def report(n: int, ok: bool, detail: str, elapsed: float, limit: float | None = None) -> None:
    timing = f"{elapsed:.2f}s" + (f" (limit {limit:g}s)" if limit else "")
    REPORT.append(f"criterion {n:>2}: {'PASS' if ok else 'FAIL'}  {detail}  [{timing}]")


# 1 ---------------------------------------------------------------------------

def test_c01_boolean_gln_is_permutations():
    start = time.perf_counter()
    counts, agree = [], True
    for n in (1, 2, 3):
        brute = [m for m in all_matrices(BOOLEAN, n) if invert(m, "brute") is not None]
        structural = [m for m in all_matrices(BOOLEAN, n) if is_generalized_permutation(m)]
        agree &= brute == structural
        counts.append(len(brute))
    elapsed = time.perf_counter() - start
    ok = agree and counts == [1, 2, 6] and elapsed < 1
    report(1, ok, f"|GL_n(B)| = {counts}, brute force matches structural test: {agree}", elapsed, 1)
    assert ok


# 2 ---------------------------------------------------------------------------

def _tropical_unit(rng):
    return Fraction(rng.randint(-20, 20), rng.randint(1, 6))


def test_c02_semidirect_product_gl3():
    rng = random.Random(2)
    start = time.perf_counter()
    bad = 0
    for _ in range(1000):
        a = random_gln(TROPICAL, 3, rng, lambda: _tropical_unit(rng))
        b = random_gln(TROPICAL, 3, rng, lambda: _tropical_unit(rng))
        fa, fb = gln_decompose(a), gln_decompose(b)
        prod = gln_compose(fa, fb, TROPICAL)
        if gln_recompose(prod, TROPICAL) != a @ b or gln_decompose(a @ b).perm != perm_compose(fa.perm, fb.perm):
            bad += 1
    elapsed = time.perf_counter() - start
    ok = bad == 0 and elapsed < 5
    report(2, ok, f"1000 GL_3(T_Q) pairs, mismatches {bad}", elapsed, 5)
    assert ok


# 3 ---------------------------------------------------------------------------

def projectivity_instances(p, max_size: int = 8):
    out = []
    for N, M, f in boolean_module_corpus(max_size):
        for g in module_homs(p, M):
            out.append(LiftInstance(N, M, f, g))
    return out


def test_c03_projective_not_free():
    start = time.perf_counter()
    p, _ = projective_example()
    instances = projectivity_instances(p)
    rep = check_projectivity_witness(p, instances)
    basis = find_basis(p)
    elapsed = time.perf_counter() - start
    ok = p.size == 3 and rep.instances >= 100 and rep.all_lift and not basis.free
    report(3, ok, f"|P| = {p.size}, lifts {rep.lifted}/{rep.instances} (unique {rep.unique}), "
                  f"free: {basis.free}", elapsed)
    assert ok


# 4 ---------------------------------------------------------------------------

def semiring_corpus_check(r: sr.FiniteTable) -> tuple[bool, bool, bool]:
    spec = sr.spec_primes(r)
    pairs = sr.idempotent_pairs(r)
    connected_ok = not spec.connected or all(p.trivial for p in pairs)
    nil = sr.nilradical(r)
    classes = sr.bourne_congruence(r, nil.elements)
    mod_pairs = [(e, f) for e in r.elements for f in r.elements
                 if classes[r.mul(e, f)] == classes[r.zero] and classes[r.add(e, f)] == classes[r.one]]
    lift_ok = True
    for pair in mod_pairs:
        try:
            sr.lift_idempotent_pair(r, pair)
        except sr.SemiringError:
            lift_ok = False
    return connected_ok, nil.saturated, lift_ok


def test_c04_small_semiring_corpus():
    start = time.perf_counter()
    tables = [r for size in (2, 3, 4) for r in sr.enumerate_semiring_tables(size)]
    results = [semiring_corpus_check(r) for r in tables]
    elapsed = time.perf_counter() - start
    fails = [r.name for r, res in zip(tables, results) if not all(res)]
    ok = not fails and elapsed < 120
    report(4, ok, f"{len(tables)} semirings of size <= 4, failures {fails}", elapsed, 120)
    assert ok


# 5 ---------------------------------------------------------------------------

def test_c05_picard_groups():
    start = time.perf_counter()
    got = {name: cech.picard_group(name).describe() for name in ("P1", "A1", "A2", "A3", "P1xP1")}
    want = {"P1": "Z", "A1": "0", "A2": "0", "A3": "0", "P1xP1": "Z^2"}
    elapsed = time.perf_counter() - start
    ok = got == want
    report(5, ok, ", ".join(f"Pic({k}) = {v}" for k, v in got.items()), elapsed)
    assert ok


# 6 ---------------------------------------------------------------------------

def test_c06_decomposition_invariant_under_conjugation():
    rng = random.Random(6)
    start = time.perf_counter()
    instances = bad = 0
    for name in ("P1", "P2"):
        cover = cech.CechCover.preset(name)
        pic = cech.picard_group(cover)
        for rank in (2, 3):
            for _ in range(50):
                c = cech.random_cocycle(cover, rank, rng)
                lines = cech.decompose_into_lines(c)
                base = sorted(pic.class_of(x) for x in lines)
                if len(lines) != rank:
                    bad += 1
                for _ in range(50):
                    d = cech.conjugate(c, cech.random_cochain(cover, rank, rng))
                    if sorted(pic.class_of(x) for x in cech.decompose_into_lines(d)) != base:
                        bad += 1
                instances += 1
    elapsed = time.perf_counter() - start
    ok = bad == 0
    report(6, ok, f"{instances} cocycles x 50 conjugations, multiset changes {bad}", elapsed)
    assert ok


# 7 ---------------------------------------------------------------------------

def test_c07_scalar_extension_bijection():
    rng = random.Random(7)
    start = time.perf_counter()
    checked = bad = 0
    for name in ("P1", "P2", "P1xP1"):
        mono = cech.CechCover.preset(name, "monoid")
        trop = cech.CechCover.preset(name, "tropicalQ")
        vm = cech.classify_vect_n(mono, 1)
        vt = cech.classify_vect_n(trop, 1)
        if (vm.pic.free_rank, vm.pic.torsion) != (vt.pic.free_rank, vt.pic.torsion):
            bad += 1
        for n in (1, 2, 3):
            cls_m = cech.VectClassification(vm.pic, n)
            cls_t = cech.VectClassification(vt.pic, n)
            for orbit in cls_m.representatives_in_box(1):
                c = cls_m.representative(orbit)
                up = cech.base_change_cocycle(c)
                back = cech.restrict_to_monoid(up)
                if cls_t.class_of(up) != tuple(orbit) or cls_m.class_of(back) != tuple(orbit):
                    bad += 1
                checked += 1
            # tropical cocycles with scalar parts come back to an equivalent cocycle
            for _ in range(5):
                c = cech.random_cocycle(trop, n, rng, spread=1)
                again = cech.base_change_cocycle(cech.restrict_to_monoid(c))
                if not isinstance(cech.cocycle_equivalent(c, again), cech.Equivalence):
                    bad += 1
                checked += 1
    elapsed = time.perf_counter() - start
    ok = bad == 0
    report(7, ok, f"{checked} orbit and roundtrip checks on P1, P2, P1xP1 for n <= 3, failures {bad}", elapsed)
    assert ok


# 8 ---------------------------------------------------------------------------

def test_c08_topological_bundles():
    rng = random.Random(8)
    start = time.perf_counter()
    circle, tree = topo.preset_complex("circle"), topo.preset_complex("tree")
    line_ok = all(topo.is_trivial_bundle(topo.random_top_cocycle(circle, 1, rng, level=rng.randint(0, 2))).trivial
                  for _ in range(50))
    # rank 2 on the circle: classes of permutation data, up to equivalence
    reps = []
    for perms in topo.all_perm_classes(circle, 2):
        if not any(topo.perm_cocycles_equivalent(circle, perms, r, 2) is not None for r in reps):
            reps.append(perms)
    coverings = sorted(topo.covering_from_perm(p, circle, 2).count for p in reps)
    sections = [topo.split_section(circle, p, 2, 1) for p in reps]
    assigned = True
    for _ in range(50):
        c = topo.random_top_cocycle(circle, 2, rng)
        hits = [k for k, s in enumerate(sections) if topo.top_cocycles_equivalent(c, s) is not None]
        assigned &= len(hits) == 1
    tree_ok = all(topo.is_trivial_bundle(topo.random_top_cocycle(tree, n, rng)).trivial
                  for n in (1, 2, 3) for _ in range(20))
    elapsed = time.perf_counter() - start
    ok = line_ok and len(reps) == 2 and coverings == [1, 2] and assigned and tree_ok
    report(8, ok, f"circle rank 1 trivial: {line_ok}; rank 2 classes {len(reps)} with coverings of "
                  f"{coverings} components, random cocycles land in one class: {assigned}; "
                  f"tree ranks 1-3 trivial: {tree_ok}", elapsed)
    assert ok


# 9 ---------------------------------------------------------------------------

def monomials(nvars: int, max_degree: int):
    for d in range(max_degree + 1):
        for e in itertools.product(range(d + 1), repeat=nvars):
            if sum(e) == d:
                yield e


def cusp_congruence_agrees(max_degree: int = 10) -> tuple[bool, bool, bool]:
    tp = vl.trop_algebra(vl.preset_algebra("cusp"))
    ring = tp.ring
    ref = quotient(ring, [(ring.term((2, 0), Fraction(0)), ring.term((0, 3), Fraction(0)))])
    forward = all(ref.eq(a, b) is Verdict.EQUAL for a, b in tp.pairs)
    backward = all(tp.eq(a, b) is Verdict.EQUAL for a, b in ref.congruence)
    terms = [ring.term(e, Fraction(0)) for e in monomials(2, max_degree)]
    closure = all((tp.eq(a, b) is Verdict.EQUAL) == (ref.eq(a, b) is Verdict.EQUAL)
                  for a, b in itertools.combinations(terms, 2))
    return forward, backward, closure


def test_c09_tropicalization():
    start = time.perf_counter()
    forward, backward, closure = cusp_congruence_agrees(10)
    a = vl.preset_algebra("x2-tx")
    verdicts = [vl.check_monomial_valuation(a, vl.MonomialValuationWitness((Fraction(w),))).status.value
                for w in (-1, 0)]
    elapsed = time.perf_counter() - start
    ok = forward and backward and closure and verdicts == ["valid", "violated"]
    report(9, ok, f"cusp congruence = <x^2 = y^3>: inclusions {forward}/{backward}, degree-10 monomial "
                  f"closure agrees {closure}; w(x) in (-1, 0) -> {verdicts}", elapsed)
    assert ok


# 10 --------------------------------------------------------------------------

def test_c10_fractional_ideals():
    rng = random.Random(10)
    start = time.perf_counter()
    bad = 0
    for _ in range(500):
        i = vl.FractionalIdeal(tuple(vl.random_generator_list(rng)))
        j = vl.FractionalIdeal(tuple(vl.random_generator_list(rng)))
        if (i + j).value != max(i.value, j.value):
            bad += 1
        if (i * j).value != TROPICAL.mul(i.value, j.value):
            bad += 1
        for ideal in (i, j, i + j, i * j):
            g = ideal.principal_generator()
            if not ideal.equals(vl.FractionalIdeal((g,))) or valuation(g) != ideal.value:
                bad += 1
    elapsed = time.perf_counter() - start
    ok = bad == 0
    report(10, ok, f"500 generator-list pairs, identity or principality failures {bad}", elapsed)
    assert ok


# 11 --------------------------------------------------------------------------

def test_c11_submodule_calculus():
    start = time.perf_counter()
    alg = sm.preset_normal_algebra("K[x]")
    x = alg.monomial((1,))
    loc = sm.localization_iso_check(alg, x, samples=200, seed=11)
    rng = random.Random(11)
    disagree = 0
    for _ in range(200):
        f, g = sm.random_factored(alg, rng), sm.random_factored(alg, rng)
        if not sm.basic_open_correspondence(alg, f, g)["agree"]:
            disagree += 1
    elapsed = time.perf_counter() - start
    ok = loc.ok and loc.samples == 200 and disagree == 0
    report(11, ok, f"localization at x: homomorphism {loc.homomorphism_ok}, injectivity {loc.injectivity_ok}, "
                   f"surjectivity {loc.surjectivity_ok} on {loc.samples} samples; basic opens disagree "
                   f"{disagree}/200", elapsed)
    assert ok


# 12 --------------------------------------------------------------------------

def test_c12_invertible_submodules_and_lifting():
    rng = random.Random(12)
    start = time.perf_counter()
    alg = sm.preset_normal_algebra("K[x^±]")
    gen_bad = 0
    for _ in range(100):
        n, n_inv = sm.invertible_monomial_sample(alg, rng)
        u = sm.principal_unit_generator(n, n_inv)
        if not alg.is_unit(u) or sm.OKSubmodule(alg, (u,)) != n:
            gen_bad += 1
    trip_bad = 0
    for _ in range(50):
        size = rng.randint(2, 4)
        base = sm.coboundary_cocycle(alg, [sm.random_unit(alg, rng) for _ in range(size)])
        twist = sm.random_unit(alg, rng)
        values = dict(base.values)
        if size == 2:
            values[(0, 1)] = alg.mul(values[(0, 1)], twist)
            values[(1, 0)] = alg.inverse(values[(0, 1)])
        c = sm.UnitCocycle(alg, size, values)
        res = sm.picard_transport(c)
        if not (res["same_class"] and res["gauge_in_OK_units"]):
            trip_bad += 1
    lift_bad = 0
    for name in ("K[x^±]", "K[x^±,y^±]"):
        a = sm.preset_normal_algebra(name)
        for _ in range(25):
            m = tuple(rng.randint(-3, 3) for _ in range(a.nvars))
            q = Fraction(rng.randint(-6, 6), rng.choice((1, 2, 3)))
            tau = sm.lift_line_bundle(a, 2, {(0, 1): (q, m)}, saturated=True)
            tau_s = sm.lift_line_bundle(a, 2, {(0, 1): (q, m)}, saturated=False)
            expect = a.monomial(m, PuiseuxScalar.monomial(1, -q))
            if tau.cocycle.values != tau_s.cocycle.values or not tau_s.hypothesis_holds \
                    or tau.cocycle[(0, 1)] != expect:
                lift_bad += 1
    elapsed = time.perf_counter() - start
    ok = gen_bad == trip_bad == lift_bad == 0
    report(12, ok, f"unit generators failed {gen_bad}/100, transport roundtrips off-class {trip_bad}/50, "
                   f"tau vs tau_s mismatches {lift_bad}/50", elapsed)
    assert ok


if __name__ == "__main__":
    tests = [v for k, v in sorted(globals().items()) if k.startswith("test_c")]
    for fn in tests:
        try:
            fn()
        except AssertionError:
            pass
    print("\n".join(REPORT))
