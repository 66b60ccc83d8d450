"""Exit criteria for the toolkit, one test per criterion.

Each test prints a single ``[PASS]``/``[FAIL]`` line (visible with ``-s``).
"""

import time
from fractions import Fraction

import mpmath

from csperiod import hypergeom, identities, modular, pade, relations
from csperiod.hypergeom import HyperParams
from csperiod.identities import catalog, get_case, probe_linear_forms, verify_all
from csperiod.numtheory import DiscriminantError, class_number, kronecker, validate_discriminant
from csperiod.periods import span_values
from csperiod.precision import PrecisionContext, exp, log, log_gamma, nth_root, pi

from test_numtheory import dirichlet_class_number, kronecker_oracle


def report(n, ok, detail):
    print(f"\n[{'PASS' if ok else 'FAIL'}] criterion {n}: {detail}")
    assert ok, detail


def test_1_appendix_identities():
    t = time.perf_counter()
    recs = verify_all(PrecisionContext(300))
    elapsed = time.perf_counter() - t
    worst = max(r.rel_residual.upper for r in recs)
    ok = len(recs) == 12 and all(r.rel_residual.upper < mpmath.mpf(10) ** -250 for r in recs) and elapsed < 120
    report(1, ok, f"12 identities, worst rel residual {mpmath.nstr(worst, 3)} < 1e-250, {elapsed:.1f}s < 120s")


def test_2_cm_j_value():
    ctx = PrecisionContext(300)
    j = modular.j_invariant(modular.CMPoint(-163), ctx)
    target = -1728 * 53360 ** 3
    rel = (abs(j.value - target) + j.err) / abs(target)
    report(2, rel < mpmath.mpf(10) ** -240, f"j((1+sqrt(-163))/2) rel error {mpmath.nstr(rel, 3)} < 1e-240")


def test_3_parameterisation():
    ctx = PrecisionContext(200)
    res = [modular.check_f0_sqrtE4(modular.CMPoint.imaginary(t), ctx) for t in (2, 3)]
    tol = mpmath.mpf(10) ** -(ctx.digits - 30)
    ok = all(r.upper < tol for r in res)
    report(3, ok, "3F2 = sqrt(E4) at 2i, 3i: residual bounds "
           + ", ".join(mpmath.nstr(r.upper, 3) for r in res) + " < 1e-170")


def test_4_relation_rediscovery():
    ctx = PrecisionContext(300)
    times, ok = [], True
    for case in catalog():
        for which in range(3):
            xs = identities.relation_inputs(case, which, ctx)
            expected = relations.normalize(case.identities[which].relation)
            K = max(len(str(abs(v))) for v in expected)
            t = time.perf_counter()
            found = relations.find_relation(xs, K, ctx)
            times.append(time.perf_counter() - t)
            ok &= isinstance(found, relations.IntegerRelation) and found.m == expected
    ok &= max(times) < 10
    report(4, ok, f"12/12 catalog vectors rediscovered at 300 digits, slowest {max(times):.3f}s < 10s")


def test_5_class_numbers():
    cases_ok = [class_number(D) for D in (-148, -232, -267, -163)] == [2, 2, 2, 1]
    checked = 0
    ok = cases_ok
    for D in range(-3, -401, -1):
        try:
            validate_discriminant(D)
        except DiscriminantError:
            continue
        ok &= class_number(D) == dirichlet_class_number(D)
        checked += 1
    report(5, ok, f"h = 2, 2, 2, 1 for the catalog fields; Dirichlet oracle agrees on {checked} discriminants")


def test_6_kronecker_properties():
    ok = True
    rng = range(-1000, 1001)
    for D in (-148, -232, -267, -163):
        n = abs(D)
        ok &= all(kronecker(D, j) == kronecker_oracle(D, j) for j in rng)
        ok &= all(kronecker(D, j) == kronecker(D, j + n) for j in range(1, 1001))
        ok &= all(kronecker(D, j * k) == kronecker(D, j) * kronecker(D, k)
                  for j in range(-1000, 1001, 7) for k in range(-1000, 1001, 13))
    report(6, ok, "multiplicativity, period |D| and definitional oracle over |j| <= 1000")


def test_7_probe():
    case = get_case(-163)
    rep = probe_linear_forms(case, 50, Fraction(1, 2), PrecisionContext(120))
    full, sl = rep["_results"]
    ok = rep["exhaustive"] and full.holds and full.min_form.lower >= full.bound
    report(7, ok, f"height 50: min |form| {mpmath.nstr(full.min_form.value, 6)} at m = {full.height} "
           f">= bound {full.bound:.3e}; m1 = 0 slice min {mpmath.nstr(sl.min_form.value, 6)} "
           f"at m = {sl.height} (reported)")


def test_8_hermite_pade():
    ok = True
    summary = []
    for s, Z in ((Fraction(1, 6), -53360 ** 3), (Fraction(1, 4), -882 ** 2),
                 (Fraction(1, 4), 99 ** 4), (Fraction(1, 3), -500 ** 2)):
        for n in range(1, 7):
            f = pade.construct(s, (n, n, n, n))
            ser = f.remainder_series(4 * n + 11)
            ok &= all(c == 0 for c in ser[: 4 * n + 3]) and f.order >= 4 * n + 3
        rep = pade.remainder_decay(s, Z, 6, PrecisionContext(150))
        ok &= rep["strictly_decreasing"]
        summary.append(f"s={s} Z={Z}: rate {rep['remainder_rate']:.1f}")
    report(8, ok, "orders >= 4n+3 exact through 4n+10, |R_n| strictly decreasing; " + "; ".join(summary))


def _sampled_quantities(ctx):
    out = []
    for x in [Fraction(k, 29) for k in range(1, 29, 2)] + [Fraction(1, 3), Fraction(1, 4), Fraction(1, 6)]:
        out.append((f"logGamma({x})", log_gamma(x, ctx)))
    out.append(("pi", pi(ctx)))
    out.append(("log 2", log(2, ctx)))
    out.append(("exp 3", exp(3, ctx)))
    out.append(("cbrt 10005", nth_root(10005, 3, ctx)))
    for case in catalog():
        pv = span_values(case.D, case.d, ctx, case.h)
        out += [(f"Omega {case.D}", pv.omega), (f"pi sqrt d {case.D}", pv.pi_sqrt_d),
                (f"Omega/pi {case.D}", pv.omega_over_pi), (f"pi/Omega {case.D}", pv.pi_over_omega)]
        out += [(f"span {case.D}[{k}]", pv.span_entries[k]) for k in (1, 2, 3)]
        out += [(f"f{i} {case.D}", hypergeom.eval(HyperParams(case.s, i), case.Z, ctx)) for i in range(3)]
    for D in (-4, -16, -163):
        out.append((f"j {D}", modular.j_invariant(modular.CMPoint(D), ctx)))
        E = modular.eisenstein_values(modular.CMPoint(D), ctx, ks=(2, 4, 6))
        out += [(f"E{k} {D}", E[k]) for k in (2, 4, 6)]
    return out


def test_9_precision_soundness():
    lo = _sampled_quantities(PrecisionContext(100))
    hi = _sampled_quantities(PrecisionContext(200))
    bad = [name for (name, a), (_, b) in zip(lo, hi) if abs(a.value - b.value) > a.err]
    report(9, not bad and len(lo) >= 50, f"{len(lo)} quantities re-landed inside their 100-digit balls; misses {bad}")
