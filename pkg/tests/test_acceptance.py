"""One test per acceptance criterion; all comparisons are exact.

Each test prints a pass/fail line and the summary section at the end of the
run lists all of them with their wall time against the budget.
"""

import random
import time
from fractions import Fraction

import pytest

from fplkit.core import asm_to_fpl, fpl_to_asm, validate_fpl
from fplkit.enumeration import SymmetryClass, count_class, count_formula_A, enumerate_asms
from fplkit.linkpat import (
    all_link_patterns,
    apply_e,
    apply_e_sym,
    ht_decode,
    ht_words,
    pattern_counts,
    qqt_reduce,
    random_pattern,
    rotate_word,
)
from fplkit import verify as V
from fplkit import tilings

PLAIN, HT, QT, QQT = SymmetryClass.PLAIN, SymmetryClass.HALF_TURN, SymmetryClass.QUARTER_TURN, SymmetryClass.QUASI_QUARTER_TURN


def _start(criterion, cid, budget, text):
    criterion.update(id=cid, budget=budget, text=text)
    return time.perf_counter()


def _done(criterion, t0, ok):
    elapsed = time.perf_counter() - t0
    within = elapsed < criterion["budget"]
    print(f"criterion {criterion['id']}: {'PASS' if ok and within else 'FAIL'} ({elapsed:.2f}s) {criterion['text']}")
    assert ok
    assert within, f"took {elapsed:.1f}s, budget {criterion['budget']}s"


def test_c01_plain_counts(criterion):
    t0 = _start(criterion, 1, 60, "|enumerate_asms(n)| = A(n) for n = 1..7")
    got = [sum(1 for _ in enumerate_asms(n, PLAIN)) for n in range(1, 8)]
    expected = [count_formula_A(n) for n in range(1, 8)]
    assert expected[-1] == 218348
    _done(criterion, t0, got == expected)


def test_c02_size_twenty_quarter_turn(criterion):
    t0 = _start(criterion, 2, 600, "A_HT(10) * A(5)^2 = 114640611228")
    a_ht = count_class(10, HT)
    _done(criterion, t0, a_ht == 622908 and a_ht * count_formula_A(5) ** 2 == 114640611228)


def test_c03_size_eighteen_product(criterion):
    t0 = _start(criterion, 3, 300, "A_HT(9) = 39204 and 39204*429*42 = 706377672")
    a_ht = count_class(9, HT)
    product = a_ht * count_formula_A(5) * count_formula_A(4)
    report = V.verify_qqt_count(4)
    _done(criterion, t0, a_ht == 39204 and product == 706377672 and report.rhs == 706377672)


def test_c04_quasi_quarter_turn_counts(criterion):
    t0 = _start(criterion, 4, 1800, "qQT totals 6, 350, 172872; per-pattern equality for n <= 2")
    totals = [V.verify_qqt_count(n) for n in (1, 2, 3)]
    per_pattern = [V.verify_qqt(n) for n in (1, 2)]
    direct = sum(1 for _ in enumerate_asms(10, QQT))
    ok = (
        [r.lhs for r in totals] == [6, 350, 172872]
        and all(r.status == V.VERIFIED for r in totals + per_pattern)
        and direct == 350
    )
    _done(criterion, t0, ok)


def test_c05_quarter_turn_patterns(criterion):
    t0 = _start(criterion, 5, 1800, "A_QT(4n; w) = A_HT(2n; w) A(n)^2 per word, n = 1..3")
    reports = [V.verify_qt(n) for n in (1, 2, 3)]
    ok = all(r.status == V.VERIFIED for r in reports) and [r.lhs for r in reports] == [2, 40, 6860]
    _done(criterion, t0, ok)


def test_c06_stationary_plain(criterion):
    t0 = _start(criterion, 6, 300, "mu(pi) = A(N; pi)/A(N) exactly for N <= 5")
    reports = [V.verify_rs(n) for n in range(1, 6)]
    ok = all(r.status == V.VERIFIED for r in reports) and len(reports[-1].per_pattern) == 42
    _done(criterion, t0, ok)


def test_c07_stationary_half_turn(criterion):
    t0 = _start(criterion, 7, 300, "half-turn chain matches A_HT(N; w)/A_HT(N) for N <= 6")
    reports = [V.verify_degier(n) for n in range(2, 7)]
    last = reports[-1]
    total = sum(pattern_counts(6, HT).counts.values())
    ok = all(r.status == V.VERIFIED for r in reports) and len(last.per_pattern) == 20 and total == 140
    _done(criterion, t0, ok)


def test_c08_refined_identity(criterion):
    t0 = _start(criterion, 8, 600, "refined qQT polynomial identity at n = 1, 2")
    reports = [V.verify_refined(n) for n in (1, 2)]
    _done(criterion, t0, all(r.status == V.VERIFIED for r in reports))


def test_c09_qcsscpp_three_ways(criterion):
    t0 = _start(criterion, 9, 120, "brute = LGV = closed form = 2, 14, 294, 18018")
    values = []
    for n in (1, 2, 3, 4):
        trio = {tilings.count_qcsscpp(2 * n + 1, m) for m in ("brute", "ciucu_lgv", "closed_form")}
        values.append(trio)
    _done(criterion, t0, values == [{2}, {14}, {294}, {18018}])


def test_c10_ciucu_instances(criterion):
    t0 = _start(criterion, 10, 120, "M(G_{2n+1}) = 2^n M*(G'_{2n+1}) for n = 1..3")
    ok = True
    for n in (1, 2, 3):
        g = tilings.qcssc_region(2 * n + 1)
        halved, factor = tilings.ciucu_factorize(g, 2 * n)
        ok &= factor == 2 ** n and tilings.count_matchings(g) == factor * tilings.count_matchings(halved)
        ok &= V.verify_ciucu(n).status == V.VERIFIED
    _done(criterion, t0, ok)


def test_c11_quotient_bijection(criterion):
    t0 = _start(criterion, 11, 300, "fpl_to_quotient_matching injective with equal cardinalities, n <= 2")
    reports = [V.verify_thm6(n) for n in (1, 2)]
    ok = all(r.status == V.VERIFIED for r in reports)
    sizes = {}
    for size in (4, 6, 8, 10):
        fam = tilings.rarest_pattern_family(size)
        images = {tilings.fpl_to_quotient_matching(f) for f in fam}
        q = tilings.quotient_by_rotation(tilings.fixed_edge_closure(size).residual, 4)
        sizes[size] = (len(fam), len(images), int(tilings.count_matchings(q)))
    ok &= sizes == {4: (1, 1, 1), 6: (2, 2, 2), 8: (4, 4, 4), 10: (14, 14, 14)}
    _done(criterion, t0, ok)


def _tl_ok(p, m, op):
    for i in range(1, m + 1):
        once = op(i, p)
        if not once.is_noncrossing() or op(i, once) != once:
            return False
        for j in range(1, m + 1):
            d = min((i - j) % m, (j - i) % m)
            if d == 1 and op(i, op(j, once)) != once:
                return False
            if d >= 2 and op(i, op(j, p)) != op(j, once):
                return False
    return True


def test_c12_property_suites(criterion):
    t0 = _start(criterion, 12, 300, "TL relations, round trip, rotation invariance, babaababba -> babca")
    ok = all(_tl_ok(p, 2 * n, apply_e) for n in range(1, 6) for p in all_link_patterns(n))
    ok &= all(_tl_ok(ht_decode(w), n, apply_e_sym) for n in range(3, 6) for w in ht_words(n))
    rng = random.Random(2024)
    for _ in range(1000):
        n = rng.randint(1, 8)
        ok &= _tl_ok(random_pattern(n, rng), 2 * n, apply_e)
    for _ in range(1000):
        n = rng.randint(3, 8)
        ok &= _tl_ok(ht_decode(rng.choice(ht_words(n))), n, apply_e_sym)
    for n in range(1, 6):
        for a in enumerate_asms(n):
            ok &= fpl_to_asm(validate_fpl(asm_to_fpl(a))) == a
        counts = pattern_counts(n).counts
        ok &= all(counts[rotate_word(w, PLAIN)] == c for w, c in counts.items())
    ok &= qqt_reduce("babaababba") == "babca"
    _done(criterion, t0, ok)


def test_c13_out_of_reach_terms(criterion):
    t0 = _start(criterion, 13, 120, "size-24 QT and size-22 qQT: formula sides only, enumeration skipped")
    qt = V.verify_qt_count(6)
    qqt = V.verify_qqt_count(5)
    ok = (
        qt.status == V.SKIPPED and qt.rhs == 10995014015567296 and qt.lhs is None
        and qqt.status == V.SKIPPED and qqt.rhs == 23679655141428 and qqt.lhs is None
        and count_class(11, HT) == 7422987
    )
    _done(criterion, t0, ok)
