"""Acceptance criteria, each at its stated tolerance.

Every criterion prints one PASS/FAIL line (also collected into the pytest
terminal summary). Run directly with ``python tests/test_acceptance.py``.
"""
import numpy as np
import pytest

from qutrit_ybe import algebra as alg
from qutrit_ybe import checks
from qutrit_ybe import dynamics as dyn
from qutrit_ybe import geometric as geo
from qutrit_ybe import yangbaxter as yb
from qutrit_ybe.tensor import commutator, dagger, distance, eigvals_hermitian

SEED = 12345
RESULTS: dict[int, str] = {}


def _rng(criterion):
    return np.random.default_rng([SEED, criterion])


def _report(n, title, ok, detail):
    line = f"{'PASS' if ok else 'FAIL'} criterion {n:2d}: {title} | {detail}"
    RESULTS[n] = line
    print(line)
    return ok


def _nondegenerate_points(rng, n):
    pts = []
    for _ in range(n):
        theta = rng.uniform(0.05, np.pi - 0.05)
        w1, w2 = rng.uniform(0.2, 3.0, size=2) * rng.choice([-1, 1], size=2)
        if abs(w1 + w2) < 0.1:
            w2 = -w2
        pts.append((dyn.HamiltonianSpec(theta, w1, w2), rng.uniform(0, 10)))
    return pts


def criterion_1():
    grid = np.linspace(0, np.pi, 12)[1:-1]
    phases = _rng(1).uniform(0, 2 * np.pi, size=(20, 2))
    worst = max(yb.ybe_residual(a, b, p1, p2) for p1, p2 in phases for a in grid for b in grid)
    return _report(1, "Yang-Baxter identity", worst < 1e-10, f"max residual {worst:.2e} < 1e-10")


def criterion_2():
    params = [alg.HeckeParams(*ph) for ph in _rng(2).uniform(0, 2 * np.pi, size=(100, 2))]
    quad = max(alg.quadratic_residual(p) for p in params)
    three = max(alg.hecke_residual(p) for p in params)
    mult_ok = True
    for p in params:
        vals = eigvals_hermitian(alg.build_M(p))
        mult_ok &= int(np.sum(np.abs(vals - 2) < 1e-10)) == 3 and int(np.sum(np.abs(vals + 1) < 1e-10)) == 6
    ok = quad < 1e-10 and three < 1e-10 and mult_ok
    return _report(2, "Hecke relations", ok,
                   f"quadratic {quad:.2e}, three-site {three:.2e}, multiplicities {{2:3,-1:6}} {mult_ok}")


def criterion_3():
    thetas = np.linspace(0, 2 * np.pi, 50, endpoint=False)
    phases = [(0.0, 0.0)] + [tuple(p) for p in _rng(3).uniform(0, 2 * np.pi, size=(20, 2))]
    unit = inv = 0.0
    for p1, p2 in phases:
        for th in thetas:
            r = yb.build_R(yb.RParams(th, p1, p2))
            unit = max(unit, distance(dagger(r) @ r, np.eye(9)))
            inv = max(inv, distance(r @ yb.build_R(yb.RParams(-th, p1, p2)), np.eye(9)))
    prod = max(abs(yb.unitarity_product(th) - 1) for th in thetas)
    ok = unit < 1e-12 and inv < 1e-12 and prod < 1e-12
    return _report(3, "unitarity and inverse", ok,
                   f"R^dag R {unit:.2e}, R(t)R(-t) {inv:.2e}, product identity {prod:.2e}")


def criterion_4():
    thetas = np.linspace(0, np.pi, 50)
    worst = 0.0
    for th in thetas:
        closed = yb.negativity_closed(th)
        for m in alg.LABELS:
            for n in alg.LABELS:
                worst = max(worst, abs(yb.negativity(yb.act_on_basis(yb.RParams(th, 0.4, 1.7), m, n)) - closed))
    peak = abs(yb.negativity(yb.act_on_basis(yb.RParams(np.pi / 3), 1, 1)) - 1)
    fine = np.linspace(0, np.pi, 3001)
    on_grid_max = max(yb.negativity_closed(t) for t in fine)
    at_half = abs(yb.negativity(yb.act_on_basis(yb.RParams(np.pi / 2), 1, 1)) - 8 / 9)
    phase_dev = 0.0
    for p1, p2 in _rng(4).uniform(0, 2 * np.pi, size=(20, 2)):
        for th in (0.5, np.pi / 3, 2.0):
            ref = yb.negativity(yb.act_on_basis(yb.RParams(th), 0, 0))
            phase_dev = max(phase_dev, abs(yb.negativity(yb.act_on_basis(yb.RParams(th, p1, p2), 0, 0)) - ref))
    ok = worst < 1e-10 and peak < 1e-10 and on_grid_max <= 1 + 1e-10 and at_half < 1e-10 and phase_dev < 1e-10
    return _report(4, "negativity closed form", ok,
                   f"all columns {worst:.2e}, N(pi/3)-1 {peak:.2e}, max on grid {on_grid_max:.12f}, "
                   f"N(pi/2)-8/9 {at_half:.2e}, phase dependence {phase_dev:.2e}")


def criterion_5():
    spec_err = tdep = leak = 0.0
    for s, t in _nondegenerate_points(_rng(5), 20):
        H = dyn.build_H(s, t)
        leak = max(leak, dyn.block_leakage(H))
        for k in (1, 2, 3):
            now = dyn.numeric_spectrum(s, k, t)
            spec_err = max(spec_err, float(np.max(np.abs(now - np.array(dyn.closed_form_spectrum(s, k))))))
            for dt in (0.77, 3.1):
                tdep = max(tdep, float(np.max(np.abs(now - dyn.numeric_spectrum(s, k, t + dt)))))
    ok = spec_err < 1e-10 and tdep < 1e-10 and leak < 1e-12
    return _report(5, "block spectra", ok,
                   f"closed form {spec_err:.2e}, t-dependence {tdep:.2e}, leakage {leak:.2e}")


def criterion_6():
    o = dyn.o_matrix()
    orth = distance(o @ o.T, np.eye(9))
    pattern = zero = 0.0
    for s, t in _nondegenerate_points(_rng(6), 20):
        Ht = dyn.block_diagonalize(dyn.build_H(s, t))
        pattern = max(pattern, dyn.off_pattern_norm(Ht))
        zero = max(zero, max(abs(Ht[i, i]) for i in dyn.SINGLET_SLOTS.values()))
    cas = max(distance(dyn.casimir_blocks(k), dyn.casimir_block_target(k)) for k in (1, 2, 3))
    ok = orth < 1e-15 and pattern < 1e-12 and zero < 1e-12 and cas < 1e-12
    return _report(6, "block diagonalization by O", ok,
                   f"OO^T-I {orth:.2e}, off-pattern {pattern:.2e}, singlets {zero:.2e}, Casimir {cas:.2e}")


def criterion_7():
    plus_err = zero_max = sum_err = 0.0
    ratios = []
    for theta in (np.pi / 6, np.pi / 4, np.pi / 2):
        s = dyn.HamiltonianSpec(theta, 1.0, 2.0)
        exact = geo.berry_analytic(theta, "+")
        for k in (1, 2, 3):
            plus = geo.discrete_berry_phase(geo.LoopSpec(s, k, "+", 2048))
            minus = geo.discrete_berry_phase(geo.LoopSpec(s, k, "-", 2048))
            zero = geo.discrete_berry_phase(geo.LoopSpec(s, k, "0", 2048))
            plus_err = max(plus_err, geo.phase_difference(plus, exact))
            sum_err = max(sum_err, geo.phase_difference(plus + minus, 0.0))
            zero_max = max(zero_max, abs(zero))
            errs = [geo.phase_difference(geo.discrete_berry_phase(geo.LoopSpec(s, k, "+", n)), exact)
                    for n in (128, 256)]
            ratios.append(errs[0] / errs[1])
    ratio_ok = all(3 <= r <= 5 for r in ratios)
    ok = plus_err < 1e-5 and zero_max < 1e-8 and sum_err < 2e-5 and ratio_ok
    return _report(7, "Berry phase", ok,
                   f"band + {plus_err:.2e}, band 0 {zero_max:.2e}, sum rule {sum_err:.2e}, "
                   f"convergence ratios [{min(ratios):.3f}, {max(ratios):.3f}]")


def criterion_8():
    f = alg.structure_constants()
    su3 = 0.0
    gens = {k: alg.su3_realization(k).generators() for k in (1, 2, 3)}
    for i in (1, 2, 3):
        for j in (1, 2, 3):
            for a in range(8):
                for b in range(8):
                    rhs = 1j * np.tensordot(f[a, b], np.array(gens[i]), axes=1) if i == j else 0
                    su3 = max(su3, distance(commutator(gens[i][a], gens[j][b]), rhs))
    su2 = cas = 0.0
    for k in (1, 2, 3):
        s = alg.su2_realization(k)
        su2 = max(su2, distance(commutator(s.s_plus, s.s_minus), 2 * s.s3),
                  distance(s.s_plus @ s.s_plus, 0), distance(s.s_minus @ s.s_minus, 0))
        for j in (1, 2, 3):
            if j != k:
                o = alg.su2_realization(j)
                su2 = max(su2, max(distance(commutator(x, y), 0)
                                   for x in (s.s_plus, s.s_minus, s.s3) for y in (o.s_plus, o.s_minus, o.s3)))
        vals = eigvals_hermitian(s.casimir)
        cas = max(cas, float(np.max(np.minimum(np.abs(vals), np.abs(vals - 0.75)))))
    ok = su3 < 1e-12 and su2 < 1e-12 and cas < 1e-10
    return _report(8, "SU(3)/SU(2) algebra", ok,
                   f"SU(3) commutators {su3:.2e}, SU(2) relations {su2:.2e}, Casimir spectrum {cas:.2e}")


def criterion_9():
    worst = max(geo.coherent_state_check(s, t) for s, t in _nondegenerate_points(_rng(9), 20))
    return _report(9, "spin coherent states", worst <= 1e-8, f"max 1-|overlap| {worst:.2e} <= 1e-8")


def criterion_10():
    records = list(checks.informational_checks(checks.VerifyConfig(), _rng(10)))
    hamiltonian = [r for r in checks.hamiltonian_checks(checks.VerifyConfig(trials=0), _rng(10))
                   if r.kind == "informational"]
    records += hamiltonian
    fields = {"name", "residual", "tolerance", "pass", "paper_anchor", "informational"}
    structured = all(fields <= set(r.as_json()) and r.kind == "informational" for r in records)
    kinds = {r.name.split(".")[0] for r in records}
    expected = {"printed-B-list", "printed-operator-expansion", "printed-eigenstate", "printed-coherent-state-zeta"}
    mismatched = sum(not r.passed for r in records)
    ok = structured and expected <= kinds and bool(records)
    return _report(10, "discrepancy reporting", ok,
                   f"{len(records)} informational records, {mismatched} flagged mismatches, structured {structured}")


def criterion_11():
    ybe = yb.ybe_residual(0.7, 1.1, 0.3, 1.7, middle_shift=0.1)
    hecke = alg.hecke_residual(alg.HeckeParams(0.3, 1.7), g=3.0)
    recs = checks.run_checks(checks.VerifyConfig(trials=0, inject_ybe_fault=True))
    suite_fails = not checks.all_passed(recs)
    ok = ybe > 1e-3 and hecke > 1e-3 and suite_fails
    return _report(11, "negative controls", ok,
                   f"perturbed YBE {ybe:.2e}, perturbed Hecke {hecke:.2e}, faulted suite fails {suite_fails}")


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6,
            criterion_7, criterion_8, criterion_9, criterion_10, criterion_11]


@pytest.mark.parametrize("criterion", CRITERIA, ids=[f"criterion_{i}" for i in range(1, 12)])
def test_acceptance(criterion):
    assert criterion()


if __name__ == "__main__":
    import sys

    sys.exit(0 if all([c() for c in CRITERIA]) else 1)
