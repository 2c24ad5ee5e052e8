"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the per-criterion
lines and timings.
"""

import itertools
import random
import time

import networkx as nx
import pytest

from noneq import (
    Falsified,
    FreeFactor,
    FreeProductGroup,
    FreeWord,
    Satisfied,
    act,
    axis_overlap_edges,
    canonicalize,
    classify,
    cyclic_group,
    distance,
    evaluate_matrix,
    expected_pattern,
    fold,
    fp_commutes,
    fp_invert,
    fp_multiply,
    fp_power,
    fp_qth_root,
    geodesic,
    is_primitive,
    multiply,
    parse_word,
    search_power_decomposition,
    verify_certificate,
)
from noneq.bass_serre import Elliptic, Hyperbolic

from test_bass_serre import rand_hyperbolic
from test_free_product import random_value
from tree_oracle import build_ball

w = parse_word


def _report(num: int, ok: bool, desc: str, detail: str = ""):
    status = "PASS" if ok else "FAIL"
    print(f"\ncriterion {num:02d} [{status}] {desc}" + (f" ({detail})" if detail else ""))
    assert ok, f"criterion {num:02d} failed: {desc} {detail}"


@pytest.fixture(scope="module")
def matrix_reports():
    out = {}
    for n in (2, 3, 4):
        start = time.perf_counter()
        out[n] = (evaluate_matrix(n), time.perf_counter() - start)
    return out


def all_reduced_words_f2(max_len: int):
    level = [()]
    words = [()]
    for _ in range(max_len):
        nxt = []
        for prefix in level:
            for x in (1, -1, 2, -2):
                if prefix and prefix[-1] == -x:
                    continue
                nxt.append(prefix + (x,))
        level = nxt
        words.extend(level)
    return words


def test_criterion_01_pattern_reproduction(matrix_reports):
    ok = True
    details = []
    for n in (2, 3, 4):
        report, elapsed = matrix_reports[n]
        if report.sat != expected_pattern(n):
            ok = False
            details.append(f"n={n} pattern mismatch")
        for cell in report.cells:
            if cell.satisfied and cell.basis_ok is not True:
                ok = False
                details.append(f"n={n} missing basis certificate at {cell.a_pos}x{cell.b_pos}")
        details.append(f"n={n}: {elapsed:.2f}s")
    if matrix_reports[4][1] >= 60.0:
        ok = False
        details.append("n=4 exceeded 60s")
    _report(1, ok, "witness matrices reproduce the satisfaction pattern, n=2,3,4",
            "; ".join(details))


def test_criterion_02_certificate_soundness(matrix_reports):
    from noneq import build_matrices

    report, _ = matrix_reports[4]
    mats = build_matrices(4)
    total = falsified = satisfied = verified = 0
    for cell in report.cells:
        (i, j), (k, l) = cell.a_pos, cell.b_pos
        a, b = mats.a[i - 1][j - 1], mats.b[k - 1][l - 1]
        total += 1
        if isinstance(cell.certificate, Falsified):
            falsified += 1
        elif isinstance(cell.certificate, Satisfied):
            satisfied += 1
        if verify_certificate(cell.certificate, a, b):
            verified += 1
    ok = verified == total == 256 and falsified + satisfied == total
    _report(2, ok, "n=4 certificates replay: powers recompose, traces reach length 1",
            f"{verified}/{total} verified, {falsified} falsified, {satisfied} satisfied")


def test_criterion_03_same_row_product_identity():
    from noneq import build_matrices

    mats = build_matrices(4)
    checked = 0
    ok = True
    for i, j, l in itertools.product(range(1, 5), repeat=3):
        if j == l:
            continue
        product = multiply(mats.a[i - 1][j - 1], mats.b[i - 1][l - 1])
        expected = multiply(w(f"e{i + j}^5"), w(f"e{i + l}^-4"))
        checked += 1
        if product != expected:
            ok = False
    _report(3, ok, "same-row products equal e_{i+j}^5 e_{i+l}^-4 exactly",
            f"{checked} pairs")


def test_criterion_04_whitehead_vs_stallings_oracle():
    start = time.perf_counter()
    words = all_reduced_words_f2(6)
    free_words = [FreeWord.from_letters(ls) for ls in words]
    abelianized = []
    for ls in words:
        s1 = sum(1 if x == 1 else -1 if x == -1 else 0 for x in ls)
        s2 = sum(1 if x == 2 else -1 if x == -2 else 0 for x in ls)
        abelianized.append((s1, s2))
    e1, e2 = FreeWord.generator(1), FreeWord.generator(2)

    def oracle(idx: int) -> bool:
        s1, s2 = abelianized[idx]
        word = free_words[idx]
        for jdx in range(len(words)):
            t1, t2 = abelianized[jdx]
            # A complement must make the abelianization unimodular.
            if abs(s1 * t2 - s2 * t1) != 1:
                continue
            graph = fold([word, free_words[jdx]])
            if graph.rank() == 2 and graph.contains(e1) and graph.contains(e2):
                return True
        return False

    mismatches = 0
    for idx, word in enumerate(free_words):
        if is_primitive(word, 2).primitive != oracle(idx):
            mismatches += 1
    elapsed = time.perf_counter() - start
    ok = mismatches == 0 and elapsed < 300.0
    _report(4, ok, "primitivity agrees with the Stallings complement oracle, all |w| <= 6",
            f"{len(free_words)} words, {mismatches} mismatches, {elapsed:.1f}s")


def test_criterion_05_distance_oracle(z2z3):
    ball, _ = build_ball(z2z3, 8)
    nodes = list(ball.nodes)
    mismatches = 0
    pairs = 0
    for u in nodes:
        lengths = nx.single_source_shortest_path_length(ball, u)
        paths = nx.single_source_shortest_path(ball, u)
        for v in nodes:
            pairs += 1
            if distance(u, v) != lengths[v] or geodesic(u, v) != paths[v]:
                mismatches += 1
    ok = mismatches == 0
    _report(5, ok, "closed-form distance and geodesic match BFS on the radius-8 ball",
            f"{len(nodes)} vertices, {pairs} ordered pairs, {mismatches} mismatches")


def test_criterion_06_cyclically_reduced_translation(z2z3, z3f2):
    rng = random.Random(0xC0FFEE)
    failures = 0
    samples = 0
    for group in (z2z3, z3f2):
        bases = [canonicalize(group.identity(), 0), canonicalize(group.identity(), 1)]
        for _ in range(200):
            u = rand_hyperbolic(group, rng, max_pairs=5)
            samples += 1
            for x in bases:
                if distance(x, act(u, x)) != u.syl_length:
                    failures += 1
                if distance(x, act(fp_power(u, 2), x)) != 2 * u.syl_length:
                    failures += 1
    ok = failures == 0
    _report(6, ok, "d(x, ux) = syl(u) and d(x, u^2x) = 2 syl(u) for cyclically reduced u",
            f"{samples} samples, {failures} failures")


def _random_elliptic(group, rng, max_conj=4):
    side = rng.randrange(2)
    value = random_value(group.factors[side], rng)
    conj = group.identity()
    start = rng.randrange(2)
    for t in range(rng.randint(0, max_conj)):
        idx = (start + t) % 2
        conj = group.multiply(conj, group.syllable(idx, random_value(group.factors[idx], rng)))
    return group.multiply(group.multiply(conj, group.syllable(side, value)), group.invert(conj))


def test_criterion_07_elliptic_products(z2z3, z3f2):
    rng = random.Random(0xBEEF)
    failures = 0
    samples = 0
    for group in (z2z3, z3f2):
        while samples < (100 if group is z2z3 else 200):
            g1 = _random_elliptic(group, rng)
            g2 = _random_elliptic(group, rng)
            c1, c2 = classify(g1), classify(g2)
            if not (isinstance(c1, Elliptic) and isinstance(c2, Elliptic)):
                failures += 1
                samples += 1
                continue
            if c1.fixed is None or c2.fixed is None or c1.fixed == c2.fixed:
                continue
            samples += 1
            product = classify(fp_multiply(g1, g2))
            expected = 2 * distance(c1.fixed, c2.fixed)
            if not (isinstance(product, Hyperbolic) and product.translation == expected):
                failures += 1
    ok = failures == 0 and samples == 200
    _report(7, ok, "elliptic pairs with distinct fixed points: tr(gg') = 2 d(Fix g, Fix g')",
            f"{samples} pairs, {failures} failures")


def test_criterion_08_overlap_forces_commutation(z2z3, z3f2):
    rng = random.Random(0xFACE)
    certified = 0
    failures = 0
    for group in (z2z3, z3f2):
        for _ in range(60):
            h = rand_hyperbolic(group, rng, max_pairs=2)
            conj = _random_elliptic(group, rng)
            a, b = rng.randint(1, 2), rng.randint(1, 2)
            u = group.multiply(group.multiply(conj, fp_power(h, a)), group.invert(conj))
            v = group.multiply(group.multiply(conj, fp_power(h, b)), group.invert(conj))
            tr_u = classify(u).translation
            tr_v = classify(v).translation
            needed = tr_u + tr_v + 1
            for radius in range(needed, 4 * needed):
                if axis_overlap_edges(u, v, radius) >= needed:
                    certified += 1
                    if not fp_commutes(u, v):
                        failures += 1
                    break
    # Independent pairs must never certify without commuting.
    spot = 0
    for group in (z2z3, z3f2):
        for _ in range(40):
            u = rand_hyperbolic(group, rng, max_pairs=2)
            v = rand_hyperbolic(group, rng, max_pairs=2)
            tr_u, tr_v = classify(u).translation, classify(v).translation
            needed = tr_u + tr_v + 1
            if axis_overlap_edges(u, v, 2 * needed) >= needed:
                spot += 1
                if not fp_commutes(u, v):
                    failures += 1
    ok = failures == 0 and certified >= 100
    _report(8, ok, "pairs with certified axis overlap >= tr(u)+tr(v)+1 commute",
            f"{certified} constructed + {spot} spot certified, {failures} failures")


def test_criterion_09_root_completeness(z3f1):
    letters = [z3f1.parse(t) for t in ("Z3.1", "Z3.2", "e1", "e1^-1")]
    syllables = [x.syls[0] for x in letters]
    elements = [z3f1.identity()]
    level = [()]
    for _ in range(3):
        nxt = []
        for prefix in level:
            for syl in syllables:
                if prefix and prefix[-1][0] == syl[0]:
                    continue
                nxt.append(prefix + (syl,))
        level = nxt
        elements.extend(z3f1.from_syllables(seq) for seq in level)
    failures = 0
    checked = 0
    for q in (4, 5):
        for v in elements:
            z = fp_power(v, q)
            roots = fp_qth_root(z, q)
            brute = {cand for cand in elements if fp_power(cand, q) == z}
            checked += 1
            if v not in roots or roots != brute:
                failures += 1
    ok = failures == 0
    _report(9, ok, "q-th root sets over syl <= 3 equal brute-force enumeration, q in {4,5}",
            f"{checked} targets, {failures} failures")


def test_criterion_10_power_decomposition_search(z3f2):
    letters = [z3f2.parse(t) for t in ("Z3.1", "Z3.2", "e1", "e1^-1", "e2", "e2^-1")]
    start = time.perf_counter()
    none_found = search_power_decomposition(z3f2.parse("e1"), 5, 4, 3, letters)
    elapsed = time.perf_counter() - start

    u0, v0 = z3f2.parse("Z3.1"), z3f2.parse("e1")
    target = fp_multiply(fp_power(u0, 5), fp_power(v0, 4))
    planted = search_power_decomposition(target, 5, 4, 3, letters)
    recovered = False
    if planted is not None:
        u, v = planted
        recovered = (
            fp_multiply(fp_power(u, 5), fp_power(v, 4)) == target
            and not fp_commutes(u, v)
        )
    ok = none_found is None and recovered
    _report(10, ok, "no u^5 v^4 decomposition of e1 within syl bound 3; planted instance recovered",
            f"refutation {elapsed:.2f}s")
