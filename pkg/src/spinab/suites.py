"""Named verification checks grouped into suites.

Each check yields a ``Check`` carrying the measured value and its bound.
Upper-bound checks scale their threshold by ``tol_scale``; lower-bound
checks (growth factors, violation sizes) do not.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import diffops as d
from . import dirac as dr
from . import interference as itf
from . import potentials as pot
from . import spectra as sp
from .qalgebra import (
    commutator,
    cross,
    dirac_alpha,
    dirac_beta,
    dot,
    pauli,
    spin_half,
    spin_one,
)
from .specfun import assoc_legendre, bessel_j, hyp1f1, sph_harm

__all__ = ["Check", "SUITES", "run_suite", "CRITERIA"]


@dataclass(frozen=True)
class Check:
    name: str
    value: float
    threshold: float
    # "max": value <= threshold * tol_scale; "min": value >= threshold;
    # "below": value < threshold, a fixed physical bound
    mode: str = "max"

    def passed(self, tol_scale: float = 1.0) -> bool:
        if not math.isfinite(self.value):
            return False
        if self.mode == "max":
            return self.value <= self.threshold * tol_scale
        if self.mode == "below":
            return self.value < self.threshold
        return self.value >= self.threshold

    def bound(self, tol_scale: float = 1.0) -> float:
        return self.threshold * tol_scale if self.mode == "max" else self.threshold


def _maxabs(a) -> float:
    return float(np.max(np.abs(np.asarray(a))))


def _unit_vectors(rng, n):
    v = rng.normal(size=(n, 3))
    return v / np.linalg.norm(v, axis=1)[:, None]


# ---------------------------------------------------------------------------
# exact algebra


def exact_algebra(rng) -> list:
    out = []
    S = spin_half()
    out.append(Check("spin_half_SxS=ihS", _maxabs(cross(S, S) - 1j * S), 1e-15))
    S1 = spin_one()
    out.append(Check("spin_one_SxS=ihS", _maxabs(cross(S1, S1) - 1j * S1), 1e-15))
    s = pauli()
    out.append(Check("pauli_xy=iz", _maxabs(s[0] @ s[1] - 1j * s[2]), 1e-15))
    err = 0.0
    for n in _unit_vectors(rng, 20):
        ns = dot(n, s)
        err = max(err, _maxabs(ns @ ns - np.eye(2)))
    out.append(Check("(n.sigma)^2=1", err, 1e-14))
    pts = d.random_points(20, rng)
    ea, ec, ep = 0.0, 0.0, 0.0
    for spin in (S, S1):
        n = spin.shape[1]
        for g in (1.0, 2.0, 3.0):
            for p in pts:
                r2 = p @ p
                if n == 2:
                    ea = max(ea, _maxabs(pot.potential_square(g, spin, p) - g * g / (2 * r2) * np.eye(n)))
                axa = pot.potential_self_cross(g, spin, p)
                ref = 1j * g * g * np.multiply.outer(p, dot(p, spin)) / r2**2
                ec = max(ec, _maxabs(axa - ref))
                if n == 2:
                    phi = pot.scalar_potential(g, spin, p)
                    ep = max(ep, _maxabs(phi @ phi - pot.potential_square(g, spin, p)))
    out.append(Check("A.A=g^2h^2/2r^2", ea, 1e-14))
    out.append(Check("AxA=ihg^2(r.S)r/r^4", ec, 1e-14))
    out.append(Check("phi^2-A^2=0", ep, 1e-14))
    return out


def dirac_algebra(rng) -> list:
    al = dirac_alpha()
    be = dirac_beta()
    cl = 0.0
    for i in range(3):
        cl = max(cl, _maxabs(al[i] @ be + be @ al[i]))
        for j in range(3):
            cl = max(cl, _maxabs(al[i] @ al[j] + al[j] @ al[i] - 2.0 * (i == j) * np.eye(4)))
    out = [Check("dirac_clifford", cl, 1e-15), Check("beta^2=1", _maxabs(be @ be - np.eye(4)), 1e-15)]
    s1, s2 = dr.sigma1(True), dr.sigma2(True)
    out.append(Check("sigma1_sigma2_commute", max(_maxabs(commutator(a, b)) for a in s1 for b in s2), 0.0))
    cat = {t.label: t for t in dr.interaction_catalogue()}
    tr, par = 0.0, 0.0
    for p in d.random_points(10, rng):
        tr = max(tr, abs(np.trace(cat["tensor_force"].at(p))))
        par = max(par, _maxabs(cat["dm_type"].at(p) + cat["dm_type"].at(-p)))
    out.append(Check("tensor_force_traceless", tr, 1e-14))
    out.append(Check("dm_parity_odd", par, 0.0))
    return out


# ---------------------------------------------------------------------------
# potentials and generators


THEOREM1_FAMILIES = [
    ("case_i", {"W1": 0.7, "W2": lambda r, t: r * math.cos(t)}),
    ("case_ii2_a", {"G_r": -1.0, "C": -1.0}),
    ("case_ii2_b", {"G_r": -1.0, "C": 1.0}),
    ("case_ii3", {"G_r": lambda r: 1.0 / r, "C": 0.3}),
    ("case_iiD_a", {"G_r": lambda r: r, "mu": 0.4, "C1": 0.2, "C2": -0.5}),
    ("case_iiD_b", {"G_r": -1.0, "T": lambda r: r * r, "C1": 0.1, "C2": 0.7}),
    ("case_iiD_c", {"G_r": 2.0, "W": lambda r, t: math.sin(t) / r, "C": -0.3}),
]


def theorem1(rng) -> list:
    samples = pot.theorem1_samples(20, rng)
    out = []
    for label, params in THEOREM1_FAMILIES:
        rep = pot.check_theorem1(pot.g_family(label, params), samples)
        out.append(Check(f"theorem1_{label}", max(rep.max_residual_cond, rep.max_residual_abelian), 1e-6))
    radial = pot.g_family("custom", func=lambda r, t, f: (1.0, 0.0, 0.0))
    out.append(Check("theorem1_radial_violates", pot.check_theorem1(radial, samples).max_residual_cond,
                     1e-2, "min"))
    return out


def wu_yang_checks(rng) -> list:
    g = 1.3
    worst = 0.0
    from ._fd import curl

    for sp_ in pot.theorem1_samples(20, rng):
        p = sp_.cartesian
        c = curl(lambda q: pot.wu_yang("a", g, q), p, 1e-3, order=4)
        ref = pot.monopole_field(g, p)
        worst = max(worst, float(np.linalg.norm(c - ref) / np.linalg.norm(ref)))
    out = [Check("curl_A_a=g r/r^3", worst, 1e-5)]
    ea = 0.0
    for sp_ in pot.theorem1_samples(20, rng):
        for C, region in ((-1.0, "a"), (1.0, "b")):
            G = pot.g_family("case_ii2_a", G_r=-1.0, C=C)
            ea = max(ea, _maxabs(pot.extract_potential(G, sp_, scale=g) - pot.wu_yang(region, g, sp_)))
    out.append(Check("extract_potential_wu_yang", ea, 1e-12))
    return out


def spin_potential_fields(rng) -> list:
    from ._fd import divergence

    S = spin_half()
    pts = d.random_points(20, rng)
    div = max(_maxabs(divergence(lambda q: pot.spin_potential(1.7, S, q), p, 1e-3)) for p in pts)
    out = [Check("div_A=0", div, 1e-6)]
    eb, divb = 0.0, 0.0
    for g in (1.0, 2.0, 3.0):
        for p in pts[:10]:
            ft = pot.field_tensor(g, S, p)
            eb = max(eb, _maxabs(ft.B - ft.B_fd))
            divb = max(divb, _maxabs(divergence(lambda q: pot.magnetic_closed_form(g, S, q), p, 1e-3)))
    out.append(Check("B_closed=curlA-(i/h)AxA", eb, 1e-6))
    out.append(Check("div_B=0", divb, 1e-6))
    return out


def generators(rng) -> list:
    """The commutator generators of the spin potential."""
    g = 1.7
    S = spin_half()
    s = pauli()
    fields = d.gaussian_test_fields(3, 2, rng)
    pts = d.random_points(5, rng)
    L = d.angular_momentum()
    X = d.position()
    P = d.momentum()
    sig = d.VecOp([d.const(m) for m in s])
    inv_r2 = d.MatrixFn(lambda q: 1.0 / (q @ q), "1/r2")
    sig_l = inv_r2 * d.vdot(sig, L)
    sig_r = d.MatrixFn(lambda q: dot(q, s), "s.r")
    half_sr = d.MatrixFn(lambda q: dot(q, s) / (2.0 * np.linalg.norm(q)), "s.r/2r")
    forms = {
        "generator_[s.l/r2,r]": lambda i: (0.5j * g) * (sig_l * X[i] - X[i] * sig_l),
        "generator_[s.l/r2,r]_sign_flipped": lambda i: (-0.5j * g) * (sig_l * X[i] - X[i] * sig_l),
        "generator_[l/r2,s.r]": lambda i: (0.5j * g) * ((inv_r2 * L[i]) * sig_r - sig_r * (inv_r2 * L[i])),
        "generator_[s.r/2r,[s.r/2r,p]]": lambda i: g * (
            half_sr * (half_sr * P[i] - P[i] * half_sr) - (half_sr * P[i] - P[i] * half_sr) * half_sr),
    }
    out = []
    for name, build in forms.items():
        worst = 0.0
        for i in range(3):
            op = build(i)
            for f in fields:
                for p in pts:
                    rhs = pot.spin_potential(g, S, p)[i] @ f(p)
                    worst = max(worst, d.relative_residual(d.op_apply(op, f, p), rhs, ref=np.linalg.norm(f(p))))
        out.append(Check(name, worst, 1e-4))
    alg = max(_maxabs(pot.generator_matrix_forms(g, p) - pot.spin_potential(g, S, p)) for p in pts)
    out.append(Check("generator_[s,s.r/r2]", alg, 1e-12))
    return out


def operator_identities(rng) -> list:
    S = spin_half()
    fields = d.gaussian_test_fields(5, 2, rng)
    pts = d.random_points(5, rng)
    J = d.angular_momentum() + d.matrix_vector(lambda q: S, "S")
    JxJ = d.vcross(J, J)
    worst = 0.0
    for f in fields:
        for p in pts:
            lhs = np.stack([d.op_apply(c, f, p) for c in JxJ])
            rhs = np.stack([1j * d.op_apply(c, f, p) for c in J])
            worst = max(worst, d.relative_residual(lhs, rhs))
    out = [Check("JxJ=ihJ", worst, 1e-3)]
    for g in (1.0, 2.0, 3.0):
        Pi = d.canonical_momentum(g, S)
        C = d.vcross(Pi, Pi)
        worst = 0.0
        for f in fields[:3]:
            for p in pts:
                lhs = np.stack([d.op_apply(c, f, p) for c in C])
                B = pot.magnetic_closed_form(g, S, p)
                rhs = np.stack([1j * B[i] @ f(p) for i in range(3)])
                ref = np.linalg.norm(f(p)) if g == 2.0 else None
                worst = max(worst, d.relative_residual(lhs, rhs, ref=ref))
        out.append(Check(f"PixPi=ihB_g{g:g}", worst, 1e-3))
    s = pauli()
    L = d.angular_momentum()
    P = d.momentum()
    for g in (1.0, 3.0):
        Pi = d.canonical_momentum(g, S)
        lhs_op = d.vdot(Pi, Pi)
        rhs_op = d.vdot(P, P) + g * (d.MatrixFn(lambda q: 1.0 / (q @ q)) * d.vdot(d.VecOp([d.const(m) for m in s]), L)) \
            + d.MatrixFn(lambda q, g=g: g * g / (2.0 * (q @ q)))
        worst = 0.0
        for f in fields[:3]:
            for p in pts:
                worst = max(worst, d.relative_residual(d.op_apply(lhs_op, f, p), d.op_apply(rhs_op, f, p)))
        out.append(Check(f"H_S_expansion_g{g:g}", worst, 1e-3))
    return out


# ---------------------------------------------------------------------------
# spectra


EIGEN_CASES = [(2, 1, "B"), (2, 0, "A"), (1, 2, "A"), (3, 1, "B")]


def spectrum(rng) -> list:
    kmin = min(sp.kappa(g=g, l=l, branch=b) for g in range(-10, 11) for l in range(31)
               for b in ("A", "B") if not (b == "B" and l == 0))
    zeros = sorted((g, l, b) for g in range(-10, 11) for l in range(31) for b in ("A", "B")
                   if not (b == "B" and l == 0) and sp.kappa(g=g, l=l, branch=b) == 0.0)
    out = [Check("kappa>=0", kmin, 0.0, "min")]
    out.append(Check("kappa=0_only_at_(0,0,A),(2,1,B)", 0.0 if zeros == [(0, 0, "A"), (2, 1, "B")] else 1.0, 0.0))
    dev = 0.0
    for l in range(31):
        dev = max(dev, abs(sp.SpinQN(2, l, 0, "A").nu - (l + 1.5)))
        if l >= 1:
            dev = max(dev, abs(sp.SpinQN(2, l, 0, "B").nu - (l - 0.5)))
    out.append(Check("nu_g2=l+3/2,l-1/2", dev, 1e-14))
    return out


def eigen_residuals(rng) -> list:
    S = spin_half()
    pts = d.random_points(10, rng)
    es = sp.EnergySpec.spherical(1.0)
    out = []
    for g, l, b in EIGEN_CASES:
        qn = sp.SpinQN(g, l, 0, b)
        H = d.h_spin(g, S)
        f = lambda q, qn=qn: sp.psi_spin(qn, es, q)
        worst = max(d.relative_residual(d.op_apply(H, f, p), es.E * f(p), ref=np.linalg.norm(f(p))) for p in pts)
        out.append(Check(f"H_S_residual_g{g}_l{l}_{b}", worst, 1e-3))
    f0 = lambda q: sp.psi_spin_zero_energy(1.0, 0.5 - 0.25j, q)
    H2 = d.h_spin(2, S)
    out.append(Check("zero_mode_H_S_residual", max(
        np.linalg.norm(d.op_apply(H2, f0, p)) / np.linalg.norm(f0(p)) for p in pts), 1e-3))
    Pi = d.canonical_momentum(2, S)
    out.append(Check("zero_mode_(p-A)psi", max(_maxabs(d.op_apply(c, f0, p)) for p in pts for c in Pi), 1e-4))
    # solenoid: phase factor and Bessel solution outside the flux tube
    spec = pot.SolenoidSpec.from_flux(2 * math.pi * 0.37, 0.4)
    fr = spec.flux_ratio()
    kvec = np.array([0.3, -0.2, 0.5])
    xi = lambda q: sp.psi_magnetic_phase(fr, (0.0, 0.0, 0.0), q)
    piM = d.momentum() + d.matrix_vector(lambda q: pot.magnetic_ab(spec, q), "A_M")
    mpts = [p for p in d.random_points(30, rng) if np.hypot(p[0], p[1]) > 0.6 and not (p[0] < 0 and abs(p[1]) < 0.1)][:10]
    out.append(Check("magnetic_(p+eA/c)xi", max(_maxabs(d.op_apply(c, xi, p)) for p in mpts for c in piM), 1e-5))
    qn = sp.MagQN(2, fr, 0.4)
    esM = sp.EnergySpec.cylindrical(1.0, 0.4)
    fM = lambda q: sp.psi_magnetic(qn, esM, q)
    HM = d.h_magnetic(spec)
    out.append(Check("H_M_residual", max(d.relative_residual(d.op_apply(HM, fM, p), esM.E * fM(p)) for p in mpts), 1e-3))
    fP = lambda q: sp.psi_magnetic_phase(fr, kvec, q)
    out.append(Check("H_M_plane_phase_residual", max(
        d.relative_residual(d.op_apply(HM, fP, p), 0.5 * (kvec @ kvec) * fP(p)) for p in mpts), 1e-3))
    H0 = d.h_free()
    es0 = sp.EnergySpec.spherical(0.8)
    ff = lambda q: sp.psi_free(3, -2, es0, q)
    out.append(Check("H_0_residual", max(d.relative_residual(d.op_apply(H0, ff, p), es0.E * ff(p)) for p in pts), 1e-4))
    # l.S eigenvalues
    L = d.angular_momentum()
    lS = d.vdot(d.matrix_vector(lambda q: S, "S"), L)
    worst = 0.0
    for l in (1, 2, 3):
        for b in ("A", "B"):
            qn = sp.SpinQN(1, l, 0, b)
            f = lambda q, qn=qn: np.exp(-q @ q / 3.0) * sp.angular_spinor(
                qn, *(lambda s_: (s_.theta, s_.phi))(pot.SphericalPoint.from_cartesian(q)))
            for p in pts[:5]:
                worst = max(worst, d.relative_residual(d.op_apply(lS, f, p), qn.K * f(p)))
    out.append(Check("l.S_eigenvalues", worst, 1e-5))
    return out


def negative_energy(rng) -> list:
    out = []
    for kap in (0.0, 2.0, 6.0):
        for which in (1, 2):
            r80 = sp.negative_energy_radial(kap, -1.0 / 16.0, 80.0, which)
            r20 = sp.negative_energy_radial(kap, -1.0 / 16.0, 20.0, which)
            out.append(Check(f"E<0_growth_kappa{kap:g}_w{which}", abs(r80) / abs(r20), 1e3, "min"))
    return out


# ---------------------------------------------------------------------------
# interference


M_SCAN = (1, -1, 2, -2, 5, -5, 10, -10, 15, -15)
L_SCAN = (2, 5, 10, 15, 20, 25)


def interference_curves(rng) -> list:
    out = []
    grid = np.linspace(0.0, 4.0 * math.pi, 1024)
    d2 = 3.0 * math.pi / 5.0
    pm = itf.p_magnetic(grid, N=0.5, delta2=d2)
    peaks = itf.p_magnetic(-d2 + 2 * math.pi * np.arange(-2, 3), N=0.5, delta2=d2)
    out.append(Check("magnetic_peak=1_at_-3pi/5_mod_2pi", _maxabs(peaks - 1.0), 1e-12))
    out.append(Check("magnetic_grid_max<=1", max(0.0, float(pm.max()) - 1.0), 1e-12))
    # the grid maximum must sit within one step of a peak position
    step = grid[1] - grid[0]
    arg = grid[int(np.argmax(pm))]
    off = abs((arg + d2 + math.pi) % (2 * math.pi) - math.pi)
    out.append(Check("magnetic_argmax_offset_in_steps", off / step, 1.0))
    sym = 0.0
    for l in L_SCAN:
        pr = itf.InterferenceParams(-1.0, 0.0, 1.0, 2.0, l, 2)
        for x in np.linspace(0.0, 2.0 * math.pi, 1024):
            sym = max(sym, abs(itf.p_spin(2 * math.pi + x, pr) - itf.p_spin(2 * math.pi - x, pr)))
    out.append(Check("spin_symmetric_about_2pi", sym, 1e-12))
    for m in M_SCAN:
        pr = itf.InterferenceParams(-1.0, 0.0, 1.0, 2.0, 20, m)
        out.append(Check(f"spin_mscan_max<1_m{m:+d}", float(itf.p_spin(grid, pr).max()), 1.0, "below"))
    po = itf.p_ordinary(grid)
    for l in range(2, 26):
        pr = itf.InterferenceParams(1.0, 2.0, 1.0, 2.0, l, 1)
        corr = float(np.corrcoef(itf.p_spin(grid, pr), po)[0, 1])
        out.append(Check(f"equal_weight_corr_l{l}", corr, 0.999, "min"))
    return out


def interference_invariants(rng) -> list:
    out = []
    grid = np.linspace(0.0, 4.0 * math.pi, 1024)
    ev, per = 0.0, 0.0
    for m in (1, -3, 2, 7):
        pr = itf.InterferenceParams(*rng.uniform(-1, 2, size=4), 6, m)
        ev = max(ev, _maxabs(itf.p_spin(grid, pr) - itf.p_spin(-grid, pr)))
    pr = itf.InterferenceParams(-1.0, 0.0, 1.0, 2.0, 20, 2)
    per = _maxabs(itf.p_spin(grid + 4 * math.pi, pr) - itf.p_spin(grid, pr))
    out.append(Check("spin_even", ev, 1e-12))
    out.append(Check("spin_m2_4pi_periodic", per, 1e-12))
    pm = itf.p_magnetic(grid, flux_ratio=0.37, N=0.5)
    out.append(Check("magnetic_in_[0,4N^2]", max(0.0, -pm.min(), pm.max() - 1.0), 0.0))
    out.append(Check("magnetic_flux0=ordinary", _maxabs(itf.p_magnetic(grid, 0.0, 0.5) - itf.p_ordinary(grid, 0.5)), 1e-15))
    out.append(Check("magnetic_flux1=ordinary", _maxabs(itf.p_magnetic(grid, 1.0, 0.5) - itf.p_ordinary(grid, 0.5)), 1e-12))
    pr = itf.InterferenceParams(0.4, 1.3, 0.0, 0.0, 5, 3, c2=0.0)
    ratio = itf.p_spin(grid, pr) / itf.p_ordinary_visibility(grid, 1.3)
    out.append(Check("c2=0_matches_visibility_form", float(np.ptp(ratio) / ratio.mean()), 1e-12))
    return out


def loop_phase(rng) -> list:
    r0 = 0.5
    spec = pot.SolenoidSpec.from_flux(2 * math.pi * 0.37, r0)
    fr = spec.flux_ratio()
    out = []
    vals = []
    for k in (1.5, 3.0):
        path = itf.PathSpec.circle(k * r0, n_steps=256)
        I = itf.loop_integral(lambda q: pot.magnetic_ab(spec, q), path).real
        vals.append(I)
        out.append(Check(f"loop_phase_r{k:g}r0", abs(I - 2 * math.pi * fr), 1e-8))
        # Stokes route: winding number times enclosed flux
        stokes = itf.winding_number(path) * spec.flux
        out.append(Check(f"loop_vs_stokes_r{k:g}r0", abs(I - stokes), 1e-8))
    out.append(Check("loop_phase_radius_independent", abs(vals[0] - vals[1]), 1e-8))
    return out


# ---------------------------------------------------------------------------
# Dirac


def dirac_square(rng) -> list:
    fields = d.gaussian_test_fields(3, 8, rng)
    pts = d.random_points(3, rng)
    out = []
    for g in (0.0, 1.0, 2.0, 3.0):
        for M in (0.0, 1.0):
            rep = dr.dirac_square_check(g, M, fields, pts)
            out.append(Check(f"dirac_square_g{g:g}_M{M:g}", rep.max_residual, 2e-3))
    p = pts[0]
    lhs = -dr.alpha_dot_potential(1.3, p)
    rhs = -(1.3 / 2.0) * np.kron(pauli()[0], np.eye(4)) @ dr.dm_matrix(p, True)
    out.append(Check("alpha.A_contraction", _maxabs(lhs - rhs), 1e-14))
    return out


def dirac_terms(rng) -> list:
    fields = d.gaussian_test_fields(3, 4, rng)
    pts = d.random_points(3, rng)
    pairs = [("h1", "h2", 1e-4), ("h1", "h1_closed", 1e-4), ("h3", "h3_closed", 1e-10),
             ("h4", "h4_expanded", 1e-3), ("h5", "h5_closed", 1e-3), ("h6", "h6_closed", 1e-10),
             ("cross_term", "cross_term_closed", 1e-3), ("h456_sum", "h456_sum_closed", 1e-3)]
    out = []
    for g in (1.0, 3.0):
        T = dr.interaction_terms(g)
        for a, b, tol in pairs:
            worst = 0.0
            for f in fields:
                for p in pts:
                    worst = max(worst, d.relative_residual(d.op_apply(T[a], f, p), d.op_apply(T[b], f, p),
                                                           ref=np.linalg.norm(f(p))))
            out.append(Check(f"{a}={b}_g{g:g}", worst, tol))
    s1, s2 = dr.sigma1(False), dr.sigma2(False)
    L = d.angular_momentum()
    P = d.momentum()
    lhs = d.vdot(L, d.VecOp([d.const(m) for m in cross(s1, s2)]))
    rs1 = d.MatrixFn(lambda q: dot(q, s1))
    rs2 = d.MatrixFn(lambda q: dot(q, s2))
    rhs = rs1 * d.vdot(P, d.VecOp([d.const(m) for m in s2])) - rs2 * d.vdot(P, d.VecOp([d.const(m) for m in s1]))
    worst = max(d.relative_residual(d.op_apply(lhs, f, p), d.op_apply(rhs, f, p)) for f in fields for p in pts)
    out.append(Check("l.(s1xs2)_identity", worst, 1e-3))
    return out


def dirac_eigen_action(rng) -> list:
    """h1 on a source-spin harmonic: -(g/r^2) K hbar^2 times the field."""
    g = 1.5
    T = dr.interaction_terms(g)
    out = []
    pts = d.random_points(4, rng)
    worst = 0.0
    chi = np.array([0.6, 0.8j])  # particle spin, spectator for h1
    for l in (1, 2):
        qn = sp.SpinQN(1, l, 0, "A")

        def f(q, qn=qn):
            s_ = pot.SphericalPoint.from_cartesian(q)
            return np.kron(chi, np.exp(-s_.r) * sp.angular_spinor(qn, s_.theta, s_.phi))

        for p in pts:
            rhs = -(g / (p @ p)) * qn.K * f(p)
            worst = max(worst, d.relative_residual(d.op_apply(T["h1"], f, p), rhs))
    out.append(Check("h1_on_Phi_A", worst, 1e-4))
    return out


def heisenberg(rng) -> list:
    out = []
    for g in (0.0, 1.0, 2.0, 3.0):
        rep = dr.heisenberg_checks(g, seed=int(rng.integers(2**31)))
        out.append(Check(f"velocity_g{g:g}", rep.velocity_residual, 5e-3))
        out.append(Check(f"force_g{g:g}", rep.force_residual, 5e-3))
    return out


# ---------------------------------------------------------------------------
# special functions


def special_functions(rng) -> list:
    out = []
    worst = 0.0
    for nu in (0.5, 1.0, 2.5, 7.0):
        for x in np.linspace(0.5, 20.0, 40):
            lhs = bessel_j(nu - 1, x) + bessel_j(nu + 1, x)
            rhs = 2 * nu / x * bessel_j(nu, x)
            worst = max(worst, abs(lhs - rhs) / max(abs(rhs), 1e-300))
    out.append(Check("bessel_recurrence", worst, 1e-10))
    worst = 0.0
    for n in (1, 2, 3):
        for x in np.linspace(0.1, 20.0, 25):
            worst = max(worst, abs(bessel_j(-n, x) - (-1) ** n * bessel_j(n, x)))
    out.append(Check("bessel_reflection", worst, 1e-12))
    xg, wg = np.polynomial.legendre.leggauss(64)
    th = np.arccos(xg)
    ph = 2 * np.pi * np.arange(128) / 128
    T, F = np.meshgrid(th, ph, indexing="ij")
    W = np.outer(wg, np.full(128, 2 * np.pi / 128))
    ys = {(l, m): sph_harm(l, m, T, F) for l in range(11) for m in range(-l, l + 1)}
    keys = list(ys)
    stack = np.stack([ys[k].ravel() for k in keys])
    gram = (stack * W.ravel()) @ stack.conj().T
    out.append(Check("Ylm_orthonormality", _maxabs(gram - np.eye(len(keys))), 1e-8))
    worst = 0.0
    h = 1e-2
    from ._fd import central_stencil

    off1, w1 = central_stencil(8, 1)
    off2, w2 = central_stencil(8, 2)
    for l in range(9):
        for m in range(l + 1):
            norm = math.sqrt((2 * l + 1) / 2 * math.factorial(l - m) / math.factorial(l + m))
            for t in np.linspace(0.25, math.pi - 0.25, 20):
                f = lambda tt: norm * assoc_legendre(l, m, math.cos(tt))
                d1 = sum(w * f(t + o * h) for o, w in zip(off1, w1)) / h
                d2 = sum(w * f(t + o * h) for o, w in zip(off2, w2)) / h**2
                res = d2 + d1 / math.tan(t) + (l * (l + 1) - m * m / math.sin(t) ** 2) * f(t)
                worst = max(worst, abs(res))
    out.append(Check("legendre_theta_ode", worst, 1e-7))
    worst = 0.0
    for _ in range(40):
        a = rng.uniform(-3, 3)
        g = rng.uniform(0.3, 4)
        tau = rng.uniform(-15, 15)
        lhs = hyp1f1(a, g, tau)
        rhs = math.exp(tau) * hyp1f1(g - a, g, -tau)
        worst = max(worst, abs(lhs - rhs) / max(abs(lhs), 1e-300))
    out.append(Check("kummer_transformation", worst, 1e-10))
    return out


# ---------------------------------------------------------------------------


SUITES = {
    "algebra": [exact_algebra, dirac_algebra, special_functions],
    "potentials": [theorem1, wu_yang_checks, spin_potential_fields, generators, operator_identities],
    "eigen": [spectrum, eigen_residuals, negative_energy],
    "interference": [interference_curves, interference_invariants, loop_phase],
    "dirac": [dirac_square, dirac_terms, dirac_eigen_action, heisenberg],
}

CRITERIA = {
    1: [exact_algebra],
    2: [theorem1, wu_yang_checks],
    3: [spectrum],
    4: [eigen_residuals],
    5: [negative_energy],
    6: [interference_curves],
    7: [loop_phase],
    8: [operator_identities, generators, dirac_square, dirac_terms, heisenberg],
    9: [special_functions],
}


def run_suite(name: str, seed: int = 42) -> list:
    """Run every check group of a suite; each group gets its own seeded stream."""
    if name == "all":
        out = []
        for key in SUITES:
            out.extend(run_suite(key, seed))
        return out
    groups = SUITES[name]
    out = []
    for idx, fn in enumerate(groups):
        rng = np.random.default_rng([seed, idx])
        out.extend(fn(rng))
    return out
