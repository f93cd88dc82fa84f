"""Acceptance suite.

Each test runs one acceptance criterion at its stated tolerance and prints a
single pass/fail line (run with ``pytest -s`` to see them).
"""

import time

import numpy as np

from epsrs import (
    ChiralityModelParams,
    Contour,
    ToyModelParams,
    chirality_eigenvalues,
    chirality_h0,
    chirality_xi2,
    chirality_xi4,
    cluster_spectrum,
    eig,
    eigenvalues,
    frobenius_norm,
    greens_function,
    passive_bound_check,
    petermann_factor,
    projector_of_state,
    spectral_decomposition,
    spectral_norm,
    surface_scan,
    toy_h0,
    toy_h1,
    toy_xi2,
    toy_xi3,
    xi_residue,
    xi_special,
    xi_via_petermann,
)
from epsrs.experiments import DEFAULT_SEED, fig4_grid, log_grid, toy_ep2_report, toy_params, toy_splitting

from helpers import ginibre, jordan_conjugated, random_diagonalizable, random_unitary


def _line(num: int, name: str, ok: bool, detail: str = "") -> None:
    status = "PASS" if ok else "FAIL"
    suffix = f" ({detail})" if detail else ""
    print(f"[criterion {num:02d}] {name}: {status}{suffix}")


DETUNINGS_50 = np.logspace(-3, 0, 50)


def _residue_errors():
    errors = []
    for d in DETUNINGS_50:
        xi_exact = toy_xi2(toy_params(d))
        rep = toy_ep2_report(d, r_c=1e-11)
        errors.append(abs(rep.strength - xi_exact) / xi_exact)
    return np.array(errors)


def test_criterion_01_residue_accuracy():
    t0 = time.perf_counter()
    errors = _residue_errors()
    elapsed = time.perf_counter() - t0
    ok = bool(errors.max() <= 1e-12 and elapsed < 10.0)
    _line(1, "residue accuracy, 50 detunings, r_C = 1e-11", ok,
          f"max rel err {errors.max():.2e}, {elapsed:.1f} s")
    assert errors.max() <= 1e-12
    assert elapsed < 10.0


def test_criterion_02_residue_beats_petermann():
    res = _residue_errors()
    pet = []
    for i, d in enumerate(DETUNINGS_50):
        xi_exact = toy_xi2(toy_params(d))
        est = xi_via_petermann(toy_h0(toy_params(d)), 0.0, 2, eta=1e-21,
                               seed=DEFAULT_SEED + i)
        pet.append(abs(est.xi - xi_exact) / xi_exact)
    pet = np.array(pet)
    ok = bool(np.all(res <= pet))
    _line(2, "residue error <= regularized-Petermann error everywhere", ok,
          f"min margin x{np.min(pet / np.maximum(res, 1e-300)):.1e}")
    assert np.all(res <= pet)


def test_criterion_03_splitting_bound():
    eps = 1e-8
    checked = 0
    ok = True
    for d in log_grid(1e-4, 1.0):
        splitting = toy_splitting(d, eps)
        if d >= 1e-2:
            ok = ok and splitting**2 <= eps * toy_xi2(toy_params(d))
            checked += 1
    xi3 = toy_xi3(ToyModelParams(e_a=0.0, e_b=0.0, a=-1.0, b=-1.0))
    assert xi3 == 1.0
    splitting0 = toy_splitting(0.0, eps)
    ok = ok and splitting0**3 <= eps * xi3
    _line(3, "n-th root splitting bounds (Eq. 15 regimes)", ok,
          f"{checked} detunings >= 1e-2 plus the zero-detuning EP3 case")
    assert ok


def test_criterion_04_nth_root_scaling():
    d = 2e-3

    def slope(eps_lo, eps_hi):
        eps = log_grid(eps_lo, eps_hi)
        split = [toy_splitting(d, e) for e in eps]
        return float(np.polyfit(np.log10(eps), np.log10(split), 1)[0])

    s_half = slope(1e-13, 1e-10)
    s_third = slope(1e-6, 1e-3)
    ok = abs(s_half - 0.5) <= 0.05 and abs(s_third - 1.0 / 3.0) <= 0.05
    _line(4, "log-log splitting slopes 1/2 and 1/3", ok,
          f"slopes {s_half:.4f}, {s_third:.4f}")
    assert abs(s_half - 0.5) <= 0.05
    assert abs(s_third - 1.0 / 3.0) <= 0.05


def test_criterion_05_divergence_law():
    def gen(d):
        return toy_h0(ToyModelParams(e_a=0.0, e_b=d, a=-1.0, b=-1.0))

    detunings = log_grid(1e-4, 1e-2)
    table = surface_scan(gen, detunings, order=2)
    comp = np.array(table.column("compensated"))
    xi = np.array(table.column("xi"))
    dev = np.abs(comp - 1.0).max()
    slope = float(np.polyfit(np.log10(detunings), np.log10(xi), 1)[0])
    ok = dev <= 1e-3 and abs(slope + 1.0) <= 0.02
    _line(5, "xi_2 divergence: compensated limit and slope -1", ok,
          f"max |xi*d - 1| = {dev:.2e}, slope {slope:.4f}")
    assert dev <= 1e-3
    assert abs(slope + 1.0) <= 0.02


def _draw_b0_params(rng):
    def coupling():
        return complex(np.exp(rng.uniform(np.log(0.1), np.log(10.0)))
                       * np.exp(1j * rng.uniform(0, 2 * np.pi)))

    while True:
        p = ChiralityModelParams(omega_is=coupling(), omega_ch=coupling(),
                                 v=coupling(), a=coupling(), b=0.0)
        evs = chirality_eigenvalues(p)
        if abs(evs[0] - evs[1]) > 0.2 * max(abs(x) for x in evs):
            return p


def test_criterion_06_chirality_model():
    rng = np.random.default_rng(2024)
    worst = 0.0
    for _ in range(20):
        p = _draw_b0_params(rng)
        h0 = chirality_h0(p)
        evs = chirality_eigenvalues(p)
        for cluster in cluster_spectrum(h0):
            branch = (+1 if abs(cluster.eigenvalue - evs[0])
                      < abs(cluster.eigenvalue - evs[1]) else -1)
            xi_exact = chirality_xi2(p, branch)
            rep = xi_residue(h0, cluster)
            worst = max(worst, abs(rep.strength - xi_exact) / xi_exact)

    worst_ratio = 0.0
    for _ in range(20):
        ois = 1.0 + 0.2j
        och = ois - 2 * complex(np.exp(rng.uniform(np.log(0.5), np.log(2.0)))
                                * np.exp(1j * rng.uniform(0, 2 * np.pi)))
        c = (ois - och) / 2
        s = 1e-3 * abs(c) * np.exp(1j * rng.uniform(0, 2 * np.pi))
        a = complex(np.exp(rng.uniform(np.log(0.1), np.log(10.0)))
                    * np.exp(1j * rng.uniform(0, 2 * np.pi)))
        p = ChiralityModelParams(omega_is=ois, omega_ch=och,
                                 v=np.sqrt(s**2 - c**2), a=a, b=0.0)
        evs = chirality_eigenvalues(p)
        gap = abs(evs[0] - evs[1])
        assert gap <= 1e-2 * abs(p.v)
        xi4 = chirality_xi4(ChiralityModelParams(omega_is=ois, omega_ch=och,
                                                 v=1j * c, a=a, b=0.0))
        for branch in (+1, -1):
            ratio = chirality_xi2(p, branch) * gap**2 / xi4
            worst_ratio = max(worst_ratio, abs(ratio - 1.0))

    ok = worst <= 1e-10 and worst_ratio <= 1e-2
    _line(6, "4x4 model: residue vs closed form and k = 2 merging law", ok,
          f"max rel err {worst:.2e}, max |ratio-1| {worst_ratio:.2e}")
    assert worst <= 1e-10
    assert worst_ratio <= 1e-2


def test_criterion_07_separatrix():
    t0 = time.perf_counter()
    _, c_star = fig4_grid()
    elapsed = time.perf_counter() - t0
    ok = abs(c_star - (-8.9262)) <= 0.01 and elapsed < 60.0
    _line(7, "pseudospectrum separatrix level", ok,
          f"c* = {c_star:.4f}, {elapsed:.1f} s")
    assert abs(c_star - (-8.9262)) <= 0.01
    assert elapsed < 60.0


def test_criterion_08_petermann_identities():
    rng = np.random.default_rng(88)
    worst = 0.0
    k_min = np.inf
    for _ in range(100):
        a = random_diagonalizable(int(rng.integers(2, 7)), rng)
        for pair in eig(a):
            k = petermann_factor(pair)
            k_min = min(k_min, k)
            root_k = np.sqrt(k)
            norm = spectral_norm(projector_of_state(pair))
            worst = max(worst, abs(root_k - norm) / norm)

    p = ToyModelParams(e_a=0.0, e_b=0.5, a=-1.0, b=-1.0)
    xi2 = toy_xi2(p)
    pairs = sorted(eig(toy_h0(p) + 1e-10 * toy_h1()),
                   key=lambda q: abs(q.value))
    ratio_dev = max(
        abs(np.sqrt(petermann_factor(q)) * 2 * abs(q.value) / xi2 - 1.0)
        for q in pairs[:2])

    ok = worst <= 1e-10 and ratio_dev <= 1e-3 and k_min >= 1.0 - 1e-12
    _line(8, "Petermann identities: sqrt(K) = ||P||, Eq. 17 ratio, K >= 1", ok,
          f"max |sqrt(K)-||P||| rel {worst:.2e}, ratio dev {ratio_dev:.2e}")
    assert worst <= 1e-10
    assert ratio_dev <= 1e-3
    assert k_min >= 1.0 - 1e-12


def _check_reconstruction(h0, rng, tolerance=None):
    deco = spectral_decomposition(h0) if tolerance is None else \
        spectral_decomposition(h0, cluster_spectrum(h0, tolerance))
    m = h0.shape[0]
    eye = np.eye(m)
    total = sum(deco.projectors)
    assert frobenius_norm(total - eye) <= 1e-10
    for i, pi in enumerate(deco.projectors):
        for j, pj in enumerate(deco.projectors):
            target = pi if i == j else np.zeros((m, m))
            assert frobenius_norm(pi @ pj - target) <= 1e-10
    w = eigenvalues(h0)
    scale = max(1.0, float(np.abs(w).max()))
    worst = 0.0
    count = 0
    while count < 20:
        en = complex(rng.uniform(-2, 2), rng.uniform(-2, 2)) * scale
        if np.min(np.abs(w - en)) < 0.1 * scale:
            continue
        count += 1
        direct = greens_function(h0, en)
        worst = max(worst, frobenius_norm(deco.reconstruct_greens(en) - direct)
                    / frobenius_norm(direct))
    return worst


def test_criterion_09_decomposition_reconstruction():
    rng = np.random.default_rng(99)
    worst_toy = _check_reconstruction(toy_h0(toy_params(2e-3)), rng)
    p_b0 = ChiralityModelParams(omega_is=1.0 + 0.1j, omega_ch=-0.5, v=0.8,
                                a=1.3j, b=0.0)
    worst_b0 = _check_reconstruction(chirality_h0(p_b0), rng)
    p_gen = ChiralityModelParams(omega_is=1.0 + 0.1j, omega_ch=-0.5, v=0.8,
                                 a=1.3j, b=0.4)
    worst_gen = _check_reconstruction(chirality_h0(p_gen), rng)
    worst = max(worst_toy, worst_b0, worst_gen)
    ok = worst <= 1e-10
    _line(9, "resolvent expansion reconstruction (toy + 4x4)", ok,
          f"max rel err {worst:.2e}")
    assert worst <= 1e-10


def test_criterion_10_passive_bound():
    rep_toy = xi_residue(toy_h0(toy_params(2e-3)),
                         cluster_spectrum(toy_h0(toy_params(2e-3)))[0])
    violated = passive_bound_check(rep_toy)
    rep_jordan = xi_special(np.array([[-1.0j, 1.5], [0.0, -1.0j]]), -1.0j, 2)
    held = passive_bound_check(rep_jordan)
    ok = (not violated.satisfied) and violated.bound == 0.0 \
        and held.satisfied and abs(held.bound - 2.0) <= 1e-15
    _line(10, "passive bound: m > n violation and m = n validity", ok,
          f"embedded EP2 bound {violated.bound}, Jordan bound {held.bound}")
    assert not violated.satisfied
    assert held.satisfied


def test_criterion_11_special_general_equivalence():
    rng = np.random.default_rng(1111)
    worst = 0.0
    for _ in range(50):
        n = int(rng.integers(2, 7))
        h0, lam, _ = jordan_conjugated(n, rng)
        special = xi_special(h0, lam, n)
        cluster = cluster_spectrum(h0, tolerance=0.05)[0]
        assert cluster.order == n
        residue = xi_residue(h0, cluster)
        worst = max(worst, abs(residue.strength - special.strength)
                    / special.strength)
    ok = worst <= 1e-11
    _line(11, "xi_special vs xi_residue on 50 defective conjugates", ok,
          f"max rel diff {worst:.2e}")
    assert worst <= 1e-11


def test_criterion_12_property_suites():
    rng = np.random.default_rng(1212)
    ok = True

    # norm axioms and unitary invariance of both norms
    for _ in range(25):
        n = int(rng.integers(2, 7))
        a = ginibre(n, rng)
        v = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        spec, fro = spectral_norm(a), frobenius_norm(a)
        ok = ok and spec <= fro * (1 + 1e-15)
        ok = ok and np.linalg.norm(a @ v) <= spec * np.linalg.norm(v) * (1 + 1e-12)
        u, w = random_unitary(n, rng), random_unitary(n, rng)
        for norm in (spectral_norm, frobenius_norm):
            ok = ok and abs(norm(u @ a @ w) - norm(a)) <= 1e-12 * norm(a)

    # unitary invariance of xi
    p = ToyModelParams(e_a=0.0, e_b=0.5, a=-1.0, b=-1.0)
    h0 = toy_h0(p)
    base = xi_residue(h0, cluster_spectrum(h0)[0]).strength
    for _ in range(5):
        u = random_unitary(3, rng)
        conj = u.conj().T @ h0 @ u
        ep2 = [c for c in cluster_spectrum(conj, tolerance=1e-5)
               if c.order == 2][0]
        ok = ok and abs(xi_residue(conj, ep2).strength - base) <= 1e-11 * base

    # contour-radius independence and node-count stability
    ep2 = cluster_spectrum(h0)[0]
    for radius in (0.125, 0.25 * 0.9, 0.45):
        got = xi_residue(h0, ep2, Contour(ep2.eigenvalue, radius)).strength
        ok = ok and abs(got - base) <= 1e-12 * base
    more = xi_residue(h0, ep2, Contour(ep2.eigenvalue, 0.2, nodes=512)).strength
    ok = ok and abs(more - base) <= 1e-12 * base

    # W is rank 1 for every EP report
    for _ in range(10):
        n = int(rng.integers(2, 6))
        dense, lam, _ = jordan_conjugated(n, rng)
        rep = xi_residue(dense, cluster_spectrum(dense, tolerance=0.05)[0])
        s = np.linalg.svd(rep.w_operator, compute_uv=False)
        ok = ok and s[1] <= 1e-10 * s[0]

    _line(12, "property batch: norms, xi invariances, rank-1 W", bool(ok))
    assert ok
