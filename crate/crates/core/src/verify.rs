//! Verification suites: every algebraic identity the model rests on, turned
//! into a finite numerical check with a measured defect, a pinned tolerance
//! and a pass/fail verdict.
//!
//! Homogeneous checks report the worst raw defect against the tolerance of
//! that identity class. Composite checks (wavefunctions, overlaps, the dual
//! Hahn embedding) mix identities with different error floors; they report
//! the worst ratio defect/tolerance over their parts against 1.0, with the
//! raw numbers in the params list.

use crate::dualhahn::{eval_hypergeometric, eval_recurrence_scaled, orthogonality_defect,
    DualHahnParams};
use crate::orthopoly::mu_number;
use crate::osp::{
    build_generators, coproduct_generators, dual_hahn_embedding, level_block, q12, scasimir,
    sl21_generators, su11_embedding, symmetry_generators, Op, OspError, RepLabel, TensorBasis,
};
use crate::overlaps::{
    align_rows_to, q12_diagonalization_check, quadrature_matrix, recurrence_check, OverlapError,
    OverlapMatrix, QuadratureSpec,
};
use crate::quadrature::gauss_legendre_on;
use crate::spinor::{
    phi_angular, phi_angular_derivative, psi_1d, psi_1d_derivative, q_eigenvector, radial,
    PolarState,
};
use crate::Sign;
use nalgebra::Complex;
use rayon::prelude::*;
use std::time::{Duration, Instant};

/// Result of one verification check. `passed` ⇔ `defect <= tolerance`.
#[derive(Clone, Debug)]
pub struct CheckReport {
    pub name: String,
    pub params: Vec<(String, String)>,
    pub defect: f64,
    pub tolerance: f64,
    pub passed: bool,
    pub runtime: Duration,
}

impl CheckReport {
    fn new(
        name: impl Into<String>,
        params: Vec<(String, String)>,
        defect: f64,
        tolerance: f64,
        started: Instant,
    ) -> Self {
        CheckReport {
            name: name.into(),
            params,
            defect,
            tolerance,
            passed: defect <= tolerance,
            runtime: started.elapsed(),
        }
    }

    pub fn one_line(&self) -> String {
        let params: Vec<String> = self.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        format!(
            "{} {} [{}] defect={:e} tol={:e} t={:.1}ms",
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            params.join(" "),
            self.defect,
            self.tolerance,
            self.runtime.as_secs_f64() * 1e3,
        )
    }
}

/// Running maximum with the location of the worst entry, for failure
/// diagnostics.
struct DefectTracker {
    worst: f64,
    at: String,
}

impl DefectTracker {
    fn new() -> Self {
        DefectTracker { worst: 0.0, at: String::from("-") }
    }

    fn update(&mut self, defect: f64, at: impl FnOnce() -> String) {
        if defect > self.worst {
            self.worst = defect;
            self.at = at();
        }
    }

    fn update_op(&mut self, residual: &Op, margin: usize, label: &str) {
        let (d, (i, j)) = residual.interior_max_abs(margin);
        self.update(d, || format!("{label}[{i},{j}]"));
    }
}

fn fmt_params(pairs: &[(&str, String)]) -> Vec<(String, String)> {
    pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

/// The defining relations of the algebra plus (s)Casimir behaviour on one
/// module, on interior indices.
pub fn check_osp12(label: RepLabel, n_max: u32) -> Result<CheckReport, OspError> {
    let started = Instant::now();
    let g = build_generators(label, n_max)?;
    let s = g.scasimir();
    let q = g.casimir();
    let dim = g.a0.dim();
    let mut t = DefectTracker::new();
    t.update_op(
        &g.aplus.anticommutator(&g.aminus).sub(&g.a0.scaled(2.0)),
        2,
        "{A+,A-}-2A0",
    );
    t.update_op(&g.a0.commutator(&g.aplus).sub(&g.aplus), 1, "[A0,A+]-A+");
    t.update_op(&g.a0.commutator(&g.aminus).add(&g.aminus), 1, "[A0,A-]+A-");
    t.update_op(&g.parity.commutator(&g.a0), 1, "[P,A0]");
    t.update_op(&g.parity.anticommutator(&g.aplus), 1, "{P,A+}");
    t.update_op(&g.parity.anticommutator(&g.aminus), 1, "{P,A-}");
    t.update_op(&s.commutator(&g.a0), 1, "[S,A0]");
    t.update_op(&s.anticommutator(&g.aplus), 1, "{S,A+}");
    t.update_op(&s.anticommutator(&g.aminus), 1, "{S,A-}");
    let q_expected = -label.epsilon.value() * label.mu;
    t.update_op(&q.sub(&Op::identity(dim).scaled(q_expected)), 1, "Q+eps*mu");
    let params = fmt_params(&[
        ("mu", format!("{}", label.mu)),
        ("eps", format!("{}", label.epsilon)),
        ("n_max", format!("{n_max}")),
        ("argmax", t.at.clone()),
    ]);
    Ok(CheckReport::new("osp12", params, t.worst, 1e-12, started))
}

/// The full sl(2|1) relation table in the one-module realization, on
/// interior indices. E± are defined as {F±, F̄±}, so that pair of relations
/// is definitional and the rest are checked.
pub fn check_sl21(k: f64, n_max: u32) -> Result<CheckReport, OspError> {
    let started = Instant::now();
    let sl = sl21_generators(k, Sign::Plus, n_max)?;
    let g = build_generators(RepLabel::new(k, Sign::Plus)?, n_max)?;
    let a0 = g.a0.to_complex();
    let two = Complex::new(2.0, 0.0);
    let half = Complex::new(0.5, 0.0);
    let mut t = DefectTracker::new();
    let mut push = |residual: &crate::osp::ComplexOp, margin: usize, label: &str| {
        let (d, (i, j)) = residual.interior_max_abs(margin);
        t.update(d, || format!("{label}[{i},{j}]"));
    };

    // The second osp(1|2) copy closed by the tilde charges.
    push(&sl.atp.anticommutator(&sl.atm).sub(&a0.scaled(two)), 2, "{At+,At-}-2A0");
    push(&a0.commutator(&sl.atp).sub(&sl.atp), 1, "[A0,At+]-At+");
    push(&a0.commutator(&sl.atm).add(&sl.atm), 1, "[A0,At-]+At-");

    push(&sl.hbar.commutator(&sl.ep).sub(&sl.ep), 2, "[H,E+]-E+");
    push(&sl.hbar.commutator(&sl.em).add(&sl.em), 2, "[H,E-]+E-");
    push(&sl.ep.commutator(&sl.em).sub(&sl.hbar.scaled(two)), 4, "[E+,E-]-2H");
    push(&sl.z.commutator(&sl.ep), 2, "[Z,E+]");
    push(&sl.z.commutator(&sl.em), 2, "[Z,E-]");
    push(&sl.z.commutator(&sl.hbar), 0, "[Z,H]");

    push(&sl.fp.anticommutator(&sl.fbm).sub(&sl.z.sub(&sl.hbar)), 2, "{F+,Fb-}-(Z-H)");
    push(&sl.fm.anticommutator(&sl.fbp).sub(&sl.z.add(&sl.hbar)), 2, "{F-,Fb+}-(Z+H)");

    push(&sl.fp.anticommutator(&sl.fp), 2, "{F+,F+}");
    push(&sl.fm.anticommutator(&sl.fm), 2, "{F-,F-}");
    push(&sl.fbp.anticommutator(&sl.fbp), 2, "{Fb+,Fb+}");
    push(&sl.fbm.anticommutator(&sl.fbm), 2, "{Fb-,Fb-}");
    push(&sl.fp.anticommutator(&sl.fm), 2, "{F+,F-}");
    push(&sl.fbp.anticommutator(&sl.fbm), 2, "{Fb+,Fb-}");

    push(&sl.hbar.commutator(&sl.fp).sub(&sl.fp.scaled(half)), 1, "[H,F+]-F+/2");
    push(&sl.hbar.commutator(&sl.fm).add(&sl.fm.scaled(half)), 1, "[H,F-]+F-/2");
    push(&sl.z.commutator(&sl.fp).sub(&sl.fp.scaled(half)), 1, "[Z,F+]-F+/2");
    push(&sl.z.commutator(&sl.fm).sub(&sl.fm.scaled(half)), 1, "[Z,F-]-F-/2");
    push(&sl.hbar.commutator(&sl.fbp).sub(&sl.fbp.scaled(half)), 1, "[H,Fb+]-Fb+/2");
    push(&sl.hbar.commutator(&sl.fbm).add(&sl.fbm.scaled(half)), 1, "[H,Fb-]+Fb-/2");
    push(&sl.z.commutator(&sl.fbp).add(&sl.fbp.scaled(half)), 1, "[Z,Fb+]+Fb+/2");
    push(&sl.z.commutator(&sl.fbm).add(&sl.fbm.scaled(half)), 1, "[Z,Fb-]+Fb-/2");

    push(&sl.ep.commutator(&sl.fm).add(&sl.fp), 3, "[E+,F-]+F+");
    push(&sl.em.commutator(&sl.fp).add(&sl.fm), 3, "[E-,F+]+F-");
    push(&sl.ep.commutator(&sl.fbm).sub(&sl.fbp), 3, "[E+,Fb-]-Fb+");
    push(&sl.em.commutator(&sl.fbp).sub(&sl.fbm), 3, "[E-,Fb+]-Fb-");
    push(&sl.ep.commutator(&sl.fp), 3, "[E+,F+]");
    push(&sl.em.commutator(&sl.fm), 3, "[E-,F-]");
    push(&sl.ep.commutator(&sl.fbp), 3, "[E+,Fb+]");
    push(&sl.em.commutator(&sl.fbm), 3, "[E-,Fb-]");

    let params = fmt_params(&[
        ("k", format!("{k}")),
        ("n_max", format!("{n_max}")),
        ("argmax", t.at.clone()),
    ]);
    Ok(CheckReport::new("sl21", params, t.worst, 1e-10, started))
}

/// The dual −1 Hahn symmetry-algebra relations on every fixed-energy block,
/// for all four (ε₁, ε₂) combinations at the given (μ₁, μ₂) = (k₁, k₂).
///
/// The central element is the sCasimir sum S⁽¹⁾+S⁽²⁾; written through the
/// spin operators it equals −(ε₁Q⁽¹⁾Σ₁₂ + ε₂Q⁽²⁾Σ₃₄) under the convention
/// Σ₁₂ = −σ₃⊗1, and both constructions are compared. In the cubic relation
/// the central factor multiplies K₃ from the left.
pub fn check_dualhahn_algebra(k1: f64, k2: f64, n_max: u32) -> Result<CheckReport, OspError> {
    let started = Instant::now();
    let mut t = DefectTracker::new();
    for eps1 in [Sign::Plus, Sign::Minus] {
        for eps2 in [Sign::Plus, Sign::Minus] {
            let labels = (RepLabel::new(k1, eps1)?, RepLabel::new(k2, eps2)?);
            let basis = TensorBasis::new(labels, n_max);
            let sg = symmetry_generators(&basis)?;
            let tag = format!("eps=({eps1},{eps2})");

            // Central element two ways.
            let c_full = sg.s1.add(&sg.s2);
            let c_alt = sg
                .q1
                .mul(&sg.sigma12)
                .scaled(eps1.value())
                .add(&sg.q2.mul(&sg.sigma34).scaled(eps2.value()))
                .scaled(-1.0);
            t.update(c_full.sub(&c_alt).max_abs(), || format!("{tag} central-presentations"));

            // Every generator preserves the total degree, so the relations
            // decompose over fixed-energy blocks and are checked there.
            for level in 0..=n_max {
                let k1m = level_block(&sg.k1, &basis, level);
                let k2m = level_block(&sg.k2, &basis, level);
                let k3m = level_block(&sg.k3, &basis, level);
                let s12 = level_block(&sg.sigma12, &basis, level);
                let s34 = level_block(&sg.sigma34, &basis, level);
                let s1m = level_block(&sg.s1, &basis, level);
                let s2m = level_block(&sg.s2, &basis, level);
                let h = level_block(&sg.h12, &basis, level);
                let c = &s1m + &s2m;
                let id = nalgebra::DMatrix::<f64>::identity(c.nrows(), c.ncols());

                let mut push = |residual: nalgebra::DMatrix<f64>, label: &str| {
                    let d = residual.abs().max();
                    t.update(d, || format!("{tag} N={level} {label}"));
                };
                let comm = |a: &nalgebra::DMatrix<f64>, b: &nalgebra::DMatrix<f64>| a * b - b * a;
                let acomm = |a: &nalgebra::DMatrix<f64>, b: &nalgebra::DMatrix<f64>| a * b + b * a;

                push(comm(&k1m, &k2m) - &k3m, "[K1,K2]-K3");
                push(
                    comm(&k1m, &k3m) - &k2m + &c - 0.5 * &id,
                    "[K1,K3]-K2+(S1+S2-1/2)",
                );
                // The central factor multiplies K3 from the left.
                let rhs = 2.0 * &c * &k3m + 4.0 * (&c - &id) * &k1m - 2.0 * &h * (&s1m - &s2m);
                push(comm(&k2m, &k3m) - rhs, "[K2,K3]-cubic-rhs");
                let central2 = 2.0 * &c - &id;
                push(acomm(&k2m, &s12) - &central2 * &s12, "{K2,S12}-(2S-1)S12");
                push(acomm(&k2m, &s34) - &central2 * &s34, "{K2,S34}-(2S-1)S34");
                push(comm(&k1m, &s12), "[K1,S12]");
                push(comm(&k1m, &s34), "[K1,S34]");
                push(acomm(&k3m, &s12), "{K3,S12}");
                push(acomm(&k3m, &s34), "{K3,S34}");
                push(comm(&s12, &s34), "[S12,S34]");
            }
        }
    }
    let params = fmt_params(&[
        ("k1", format!("{k1}")),
        ("k2", format!("{k2}")),
        ("n_max", format!("{n_max}")),
        ("argmax", t.at.clone()),
    ]);
    Ok(CheckReport::new("dualhahn-algebra", params, t.worst, 1e-10, started))
}

/// Spectrum of Δ(Q): every fixed-energy block N carries the eigenvalues
/// ε₁₂(−1)^{z+1}(z+μ₁+μ₂+1/2), z = 0..N, each with multiplicity one.
pub fn check_q12_spectrum(k1: f64, k2: f64, n_max: u32) -> Result<CheckReport, OspError> {
    let started = Instant::now();
    let mut t = DefectTracker::new();
    for eps1 in [Sign::Plus, Sign::Minus] {
        for eps2 in [Sign::Plus, Sign::Minus] {
            let labels = (RepLabel::new(k1, eps1)?, RepLabel::new(k2, eps2)?);
            let basis = TensorBasis::new(labels, n_max);
            let q = q12(&basis);
            let e12 = (eps1 * eps2).value();
            for level in 0..=n_max {
                let block = level_block(&q, &basis, level);
                let mut eigs: Vec<f64> =
                    block.symmetric_eigen().eigenvalues.iter().copied().collect();
                eigs.sort_by(f64::total_cmp);
                let mut expected: Vec<f64> = (0..=level)
                    .map(|z| {
                        let flip = if z % 2 == 0 { -1.0 } else { 1.0 };
                        e12 * flip * (z as f64 + k1 + k2 + 0.5)
                    })
                    .collect();
                expected.sort_by(f64::total_cmp);
                for (z, (a, b)) in eigs.iter().zip(&expected).enumerate() {
                    t.update((a - b).abs(), || {
                        format!("eps=({eps1},{eps2}) N={level} slot={z}")
                    });
                }
            }
        }
    }
    let params = fmt_params(&[
        ("k1", format!("{k1}")),
        ("k2", format!("{k2}")),
        ("n_max", format!("{n_max}")),
        ("argmax", t.at.clone()),
    ]);
    Ok(CheckReport::new("q12-spectrum", params, t.worst, 1e-10, started))
}

/// The su(1,1) embedding: single-module relations and the Casimir identity
/// C = (S² + S − 3/4)/4 entrywise, plus the dual Hahn algebra closed by
/// 𝒦₁ = J₀⁽¹⁾ − J₀⁽²⁾ and 𝒦₂ = C⁽¹²⁾ with central elements
/// δ₁ = 4J₀⁽¹²⁾(C⁽¹⁾−C⁽²⁾) and δ₂ = 2(J₀⁽¹²⁾)² + 4(C⁽¹⁾+C⁽²⁾).
///
/// Cubic products of C⁽¹²⁾ reach magnitudes ~E³, so the two-module relation
/// defects are normalized by the scale of their sides. Sub-tolerances:
/// 1e−10 for relations, 1e−12 for the entrywise Casimir identity; the
/// reported defect is the worst ratio against them.
pub fn check_dual_hahn_embedding(k1: f64, k2: f64, n_max: u32) -> Result<CheckReport, OspError> {
    let started = Instant::now();
    let mut rel = DefectTracker::new();
    let mut casimir = DefectTracker::new();

    for &mu in &[k1, k2] {
        let label = RepLabel::new(mu, Sign::Plus)?;
        let su = su11_embedding(label, n_max)?;
        let tag = format!("mu={mu}");
        let r1 = su.j0.commutator(&su.jplus).sub(&su.jplus);
        let (d, at) = r1.interior_max_abs(2);
        rel.update(d, || format!("{tag} [J0,J+]-J+[{},{}]", at.0, at.1));
        let r2 = su.j0.commutator(&su.jminus).add(&su.jminus);
        let (d, at) = r2.interior_max_abs(2);
        rel.update(d, || format!("{tag} [J0,J-]+J-[{},{}]", at.0, at.1));
        let r3 = su.jplus.commutator(&su.jminus).add(&su.j0.scaled(2.0));
        let (d, at) = r3.interior_max_abs(4);
        rel.update(d, || format!("{tag} [J+,J-]+2J0[{},{}]", at.0, at.1));

        let s = scasimir(label, n_max)?;
        let identity_rhs = s.mul(&s).add(&s).plus_identity(-0.75).scaled(0.25);
        let r4 = su.casimir.sub(&identity_rhs);
        casimir.update(r4.max_abs(), || format!("{tag} C-(S^2+S-3/4)/4"));
    }

    let labels = (RepLabel::new(k1, Sign::Plus)?, RepLabel::new(k2, Sign::Plus)?);
    let basis = TensorBasis::new(labels, n_max);
    let emb = dual_hahn_embedding(&basis)?;
    let delta1 = emb.j0_12.mul(&emb.c1.sub(&emb.c2)).scaled(4.0);
    let delta2 = emb
        .j0_12
        .mul(&emb.j0_12)
        .scaled(2.0)
        .add(&emb.c1.add(&emb.c2).scaled(4.0));

    // [K2, K3] = −2{K1, K2} + δ₁.
    let lhs1 = emb.kk2.commutator(&emb.kk3);
    let rhs1 = emb.kk1.anticommutator(&emb.kk2).scaled(-2.0).add(&delta1);
    let scale1 = lhs1.max_abs().max(rhs1.max_abs()).max(1.0);
    rel.update(lhs1.sub(&rhs1).max_abs() / scale1, || "[K2,K3] relation".to_string());

    // [K3, K1] = −2K1² − 4K2 + δ₂.
    let lhs2 = emb.kk3.commutator(&emb.kk1);
    let rhs2 = emb
        .kk1
        .mul(&emb.kk1)
        .scaled(-2.0)
        .sub(&emb.kk2.scaled(4.0))
        .add(&delta2);
    let scale2 = lhs2.max_abs().max(rhs2.max_abs()).max(1.0);
    rel.update(lhs2.sub(&rhs2).max_abs() / scale2, || "[K3,K1] relation".to_string());

    // Central elements commute with everything in the algebra.
    let central = delta1.commutator(&emb.kk2).max_abs() / scale1.max(delta1.max_abs());
    rel.update(central, || "delta1 centrality".to_string());

    let ratio = (rel.worst / 1e-10).max(casimir.worst / 1e-12);
    let at = if rel.worst / 1e-10 >= casimir.worst / 1e-12 {
        rel.at.clone()
    } else {
        casimir.at.clone()
    };
    let params = fmt_params(&[
        ("k1", format!("{k1}")),
        ("k2", format!("{k2}")),
        ("n_max", format!("{n_max}")),
        ("relations_defect", format!("{:e}", rel.worst)),
        ("casimir_identity_defect", format!("{:e}", casimir.worst)),
        ("argmax", at),
    ]);
    Ok(CheckReport::new("dual-hahn-embedding", params, ratio, 1.0, started))
}

/// Ladder matrix element ⟨m+1, k|A₊|m, k⟩ by quadrature with analytic
/// derivatives.
fn ladder_amplitude(m: u32, k: u32) -> f64 {
    let energy = (m + 1 + k) as f64 + 0.5;
    let rule = gauss_legendre_on(160, 0.0, (2.0 * energy).sqrt() + 8.0);
    let ksign = if m % 2 == 0 { 1.0 } else { -1.0 };
    2.0 * rule.integrate(|rho| {
        psi_1d(m + 1, k, rho)
            * (rho * psi_1d(m, k, rho) - psi_1d_derivative(m, k, rho)
                + ksign * k as f64 * psi_1d(m, k, rho) / rho)
            / 2.0f64.sqrt()
    })
}

/// Wavefunction certification: unit norms by quadrature, second-order ODE
/// residuals, ladder matrix elements against √([m]_k), the polar/Cartesian
/// level degeneracy match, and the first-order system satisfied by the
/// Casimir eigencombinations. Composite ratio defect against 1.0.
pub fn check_wavefunctions(k1: u32, k2: u32, max_level: u32) -> CheckReport {
    let started = Instant::now();
    let mut norm_t = DefectTracker::new();
    let mut ode_t = DefectTracker::new();
    let mut angular_ode_t = DefectTracker::new();
    let mut radial_ode_t = DefectTracker::new();
    let mut ladder_t = DefectTracker::new();
    let mut count_t = DefectTracker::new();
    let mut system_t = DefectTracker::new();
    let h = 1e-3;
    // Fourth-derivative scale of the central-difference truncation: ~E² for
    // the one-dimensional functions (≤ 1e3 over this grid), ~|m|⁴/12 for the
    // angular and radial ones, which reaches ~1.7e3 at |m| = 12; their
    // constant is pinned at 1e4.
    let c_1d = 1e3;
    let c_2d = 1e4;

    for &k in &[k1, k2] {
        for m in 0..=6u32 {
            // Full-line unit norm.
            let energy = (m + k) as f64 + 0.5;
            let rule = gauss_legendre_on(160, 0.0, (2.0 * energy).sqrt() + 8.0);
            let nrm = 2.0 * rule.integrate(|rho| psi_1d(m, k, rho).powi(2));
            norm_t.update((nrm - 1.0).abs(), || format!("1d-norm m={m} k={k}"));
            // Schroedinger residual, O(h²) with constant <= 1e3.
            let s = if m % 2 == 0 { 1.0 } else { -1.0 };
            let kf = k as f64;
            for i in 0..50 {
                let rho = 0.5 + 3.0 * i as f64 / 49.0;
                let dd =
                    (psi_1d(m, k, rho + h) - 2.0 * psi_1d(m, k, rho) + psi_1d(m, k, rho - h))
                        / (h * h);
                let v = 0.5 * (rho * rho + kf * (kf - s) / (rho * rho));
                let res = (-0.5 * dd + (v - energy) * psi_1d(m, k, rho)).abs();
                ode_t.update(res / (h * h) / c_1d, || format!("1d-ode m={m} k={k} rho={rho}"));
            }
            // Ladder element.
            let amp = ladder_amplitude(m, k);
            let expected = mu_number(m + 1, k as f64).sqrt();
            ladder_t.update((amp - expected).abs(), || format!("ladder m={m} k={k}"));
        }
    }

    // Angular and radial factors.
    let phi_rule = gauss_legendre_on(200, 0.0, std::f64::consts::FRAC_PI_2);
    for twice_ell in 0..=6u32 {
        let sectors: &[(Sign, Sign)] = if twice_ell % 2 == 0 {
            &[(Sign::Plus, Sign::Plus), (Sign::Minus, Sign::Minus)]
        } else {
            &[(Sign::Plus, Sign::Minus), (Sign::Minus, Sign::Plus)]
        };
        for &(s1, s2) in sectors {
            let st = PolarState::new(twice_ell, 0, s1, s2, k1, k2).unwrap();
            if st.jacobi_degree() < 0 {
                continue;
            }
            let nrm = phi_rule.integrate(|phi| phi_angular(&st, phi).powi(2));
            norm_t.update((nrm - 1.0).abs(), || format!("angular-norm 2l={twice_ell}"));
            let b1 = k1 as f64 * (k1 as f64 - s1.value());
            let b2 = k2 as f64 * (k2 as f64 - s2.value());
            let m2 = st.abs_m().powi(2);
            for i in 0..30 {
                let phi = 0.25 + (std::f64::consts::FRAC_PI_2 - 0.5) * i as f64 / 29.0;
                let dd = (phi_angular(&st, phi + h) - 2.0 * phi_angular(&st, phi)
                    + phi_angular(&st, phi - h))
                    / (h * h);
                let res = dd
                    - (b1 / phi.cos().powi(2) + b2 / phi.sin().powi(2) - m2)
                        * phi_angular(&st, phi);
                angular_ode_t.update(res.abs() / (h * h) / c_2d, || {
                    format!("angular-ode 2l={twice_ell} phi={phi}")
                });
            }
        }
    }
    for n_r in 0..=4u32 {
        for abs_m in [0.0, 1.0, 3.0, 5.0] {
            let energy = 2.0 * n_r as f64 + abs_m + 1.0;
            let rule = gauss_legendre_on(200, 0.0, (2.0 * energy).sqrt() + 8.0);
            let nrm = rule.integrate(|r| radial(n_r, abs_m, r).powi(2) * r);
            norm_t.update((nrm - 1.0).abs(), || format!("radial-norm n_r={n_r} |m|={abs_m}"));
            let f = |r: f64| radial(n_r, abs_m, r);
            for i in 0..30 {
                let r = 0.6 + 2.8 * i as f64 / 29.0;
                let dd = (f(r + h) - 2.0 * f(r) + f(r - h)) / (h * h);
                let dr = (f(r + h) - f(r - h)) / (2.0 * h);
                let res = dd + dr / r + (2.0 * energy - r * r - abs_m * abs_m / (r * r)) * f(r);
                radial_ode_t.update(res.abs() / (h * h) / c_2d, || {
                    format!("radial-ode n_r={n_r} |m|={abs_m} r={r}")
                });
            }
        }
    }

    // Polar and Cartesian level degeneracies agree.
    for level in 0..=max_level {
        let mut polar = 0u32;
        for twice_ell in (level % 2..=level).step_by(2) {
            let sectors: &[(Sign, Sign)] = if twice_ell % 2 == 0 {
                &[(Sign::Plus, Sign::Plus), (Sign::Minus, Sign::Minus)]
            } else {
                &[(Sign::Plus, Sign::Minus), (Sign::Minus, Sign::Plus)]
            };
            for &(s1, s2) in sectors {
                let st =
                    PolarState::new(twice_ell, (level - twice_ell) / 2, s1, s2, k1, k2).unwrap();
                if st.jacobi_degree() >= 0 {
                    polar += 1;
                }
            }
        }
        count_t.update(u32::abs_diff(polar, level + 1) as f64, || {
            format!("degeneracy level={level}")
        });
    }

    // First-order system for the Casimir eigencombinations.
    let eps1 = Sign::from_parity(k1);
    let eps2 = Sign::from_parity(k2);
    let (e1, e12) = (eps1.value(), (eps1 * eps2).value());
    let (k1f, k2f) = (k1 as f64, k2 as f64);
    for z in 0..=5u32 {
        for delta in [Sign::Plus, Sign::Minus] {
            let q = q_eigenvector(z, k1, k2, eps1, eps2, delta);
            let qz = q.eigenvalue();
            for i in 0..20 {
                let phi = 0.15 + (std::f64::consts::FRAC_PI_2 - 0.3) * i as f64 / 19.0;
                let fm = q.c_minus * phi_angular(&q.minus_state, phi);
                let fp = q.c_plus * phi_angular(&q.plus_state, phi);
                let dfm = q.c_minus * phi_angular_derivative(&q.minus_state, phi);
                let dfp = q.c_plus * phi_angular_derivative(&q.plus_state, phi);
                let (tn, ct) = (phi.tan(), 1.0 / phi.tan());
                let (r1, r2) = match delta {
                    Sign::Plus => (
                        e1 * (dfp - k1f * tn * fp + k2f * ct * fp)
                            - e12 * (k1f + k2f + 0.5) * fm
                            - qz * fm,
                        e1 * (-dfm - k1f * tn * fm + k2f * ct * fm)
                            + e12 * (k1f + k2f - 0.5) * fp
                            - qz * fp,
                    ),
                    Sign::Minus => (
                        e1 * (dfm - k1f * tn * fm - k2f * ct * fm)
                            + e12 * (k1f - k2f + 0.5) * fp
                            - qz * fp,
                        e1 * (-dfp - k1f * tn * fp - k2f * ct * fp)
                            - e12 * (k1f - k2f - 0.5) * fm
                            - qz * fm,
                    ),
                };
                system_t.update(r1.abs().max(r2.abs()), || {
                    format!("first-order z={z} delta={delta} phi={phi}")
                });
            }
        }
    }

    let parts = [
        (norm_t.worst / 1e-8, &norm_t.at),
        (ode_t.worst, &ode_t.at),
        (angular_ode_t.worst, &angular_ode_t.at),
        (radial_ode_t.worst, &radial_ode_t.at),
        (ladder_t.worst / 1e-7, &ladder_t.at),
        (count_t.worst, &count_t.at),
        (system_t.worst / 1e-9, &system_t.at),
    ];
    let (ratio, at) = parts
        .iter()
        .max_by(|a, b| a.0.total_cmp(&b.0))
        .map(|(r, a)| (*r, (*a).clone()))
        .unwrap();
    let params = fmt_params(&[
        ("k1", format!("{k1}")),
        ("k2", format!("{k2}")),
        ("max_level", format!("{max_level}")),
        ("norm_defect", format!("{:e}", norm_t.worst)),
        ("ode_1d_ratio", format!("{:e}", ode_t.worst)),
        ("ode_angular_ratio", format!("{:e}", angular_ode_t.worst)),
        ("ode_radial_ratio", format!("{:e}", radial_ode_t.worst)),
        ("ladder_defect", format!("{:e}", ladder_t.worst)),
        ("first_order_defect", format!("{:e}", system_t.worst)),
        ("argmax", at),
    ]);
    CheckReport::new("wavefunctions", params, ratio, 1.0, started)
}

/// Overlap certification: unitarity of the closed form, agreement with the
/// eigenvector route, the monic recurrence of the matrix elements, and (for
/// k ≤ 2, N ≤ 6) agreement with quadrature. Composite ratio defect.
pub fn check_overlaps(k1: u32, k2: u32, n_max: u32) -> Result<CheckReport, OverlapError> {
    let started = Instant::now();
    let mut unit_t = DefectTracker::new();
    let mut eig_t = DefectTracker::new();
    let mut rec_t = DefectTracker::new();
    let mut quad_t = DefectTracker::new();

    for level in 0..=n_max {
        let closed = OverlapMatrix::closed_form(level, k1, k2)?;
        unit_t.update(closed.unitarity_defect(), || format!("unitarity N={level}"));
        eig_t.update(q12_diagonalization_check(level, k1, k2)?, || {
            format!("eigen-route N={level}")
        });
        if level >= 1 {
            rec_t.update(recurrence_check(level, k1, k2), || format!("recurrence N={level}"));
        }
        if level <= 6 && k1 <= 2 && k2 <= 2 {
            let spec = QuadratureSpec::default();
            let mut quad = quadrature_matrix(level, k1, k2, &spec)?;
            align_rows_to(&closed.entries, &mut quad);
            quad_t.update((quad - &closed.entries).abs().max(), || {
                format!("quadrature N={level}")
            });
        }
    }

    let parts = [
        (unit_t.worst / 1e-9, &unit_t.at),
        (eig_t.worst / 1e-9, &eig_t.at),
        (rec_t.worst / 1e-9, &rec_t.at),
        (quad_t.worst / 1e-6, &quad_t.at),
    ];
    let (ratio, at) = parts
        .iter()
        .max_by(|a, b| a.0.total_cmp(&b.0))
        .map(|(r, a)| (*r, (*a).clone()))
        .unwrap();
    let params = fmt_params(&[
        ("k1", format!("{k1}")),
        ("k2", format!("{k2}")),
        ("n_max", format!("{n_max}")),
        ("unitarity_defect", format!("{:e}", unit_t.worst)),
        ("eigen_defect", format!("{:e}", eig_t.worst)),
        ("recurrence_defect", format!("{:e}", rec_t.worst)),
        ("quadrature_defect", format!("{:e}", quad_t.worst)),
        ("argmax", at),
    ]);
    Ok(CheckReport::new("overlaps", params, ratio, 1.0, started))
}

/// Orthogonality of the dual −1 Hahn family over a parameter grid.
pub fn check_dualhahn_orthogonality(max_cap: u32, grid: &[f64]) -> CheckReport {
    let started = Instant::now();
    let mut t = DefectTracker::new();
    for cap in 0..=max_cap {
        for &xi in grid {
            for &zeta in grid {
                let p = DualHahnParams::new(xi, zeta, cap).unwrap();
                t.update(orthogonality_defect(&p), || {
                    format!("N={cap} xi={xi} zeta={zeta}")
                });
            }
        }
    }
    let params = fmt_params(&[
        ("max_N", format!("{max_cap}")),
        ("grid", format!("{grid:?}")),
        ("argmax", t.at.clone()),
    ]);
    CheckReport::new("dualhahn-orthogonality", params, t.worst, 1e-8, started)
}

/// Hypergeometric closed forms against the recurrence across all four
/// parity branches, relative to the recurrence cancellation scale.
pub fn check_dualhahn_closed_form(max_cap: u32, grid: &[f64]) -> CheckReport {
    let started = Instant::now();
    let mut t = DefectTracker::new();
    for cap in 0..=max_cap {
        for &xi in grid {
            for &zeta in grid {
                let p = DualHahnParams::new(xi, zeta, cap).unwrap();
                let r = 2.0 * cap as f64 + 2.0 * xi + 2.0 * zeta + 6.0;
                for n in 0..=cap {
                    for i in 0..25 {
                        let x = -r + 2.0 * r * (i as f64 + 0.5) / 25.0;
                        let (a, scale) = eval_recurrence_scaled(n, x, &p).unwrap();
                        let b = eval_hypergeometric(n, x, &p).unwrap();
                        let d = (a - b).abs() / scale.max(a.abs()).max(b.abs());
                        t.update(d, || format!("N={cap} n={n} xi={xi} zeta={zeta} x={x}"));
                    }
                }
            }
        }
    }
    let params = fmt_params(&[
        ("max_N", format!("{max_cap}")),
        ("grid", format!("{grid:?}")),
        ("argmax", t.at.clone()),
    ]);
    CheckReport::new("dualhahn-closed-form", params, t.worst, 1e-9, started)
}

/// Coproduct consistency: Δ(Q) from the closed expression equals
/// Δ(S)Δ(P) built from the coproduct generators, exactly on the whole
/// truncated triangle, and commutes with Δ(A₀).
pub fn check_coproduct(k1: f64, k2: f64, n_max: u32) -> Result<CheckReport, OspError> {
    let started = Instant::now();
    let mut t = DefectTracker::new();
    for eps1 in [Sign::Plus, Sign::Minus] {
        for eps2 in [Sign::Plus, Sign::Minus] {
            let labels = (RepLabel::new(k1, eps1)?, RepLabel::new(k2, eps2)?);
            let basis = TensorBasis::new(labels, n_max);
            let cg = coproduct_generators(&basis)?;
            let q = q12(&basis);
            let tag = format!("eps=({eps1},{eps2})");
            let ds = cg.daplus.mul(&cg.daminus).sub(&cg.da0).plus_identity(0.5);
            t.update(q.sub(&ds.mul(&cg.dparity)).max_abs(), || {
                format!("{tag} Q12-DS*DP")
            });
            t.update(q.commutator(&cg.da0).max_abs(), || format!("{tag} [Q12,DA0]"));
            // Coproduct images close the algebra away from the top level.
            let r = cg.daplus.anticommutator(&cg.daminus).sub(&cg.da0.scaled(2.0));
            let safe = basis.level_range(n_max - 2).end;
            let mut worst = 0.0f64;
            for i in 0..safe {
                for j in 0..safe {
                    worst = worst.max(r.entry(i, j).abs());
                }
            }
            t.update(worst, || format!("{tag} {{DA+,DA-}}-2DA0"));
        }
    }
    let params = fmt_params(&[
        ("k1", format!("{k1}")),
        ("k2", format!("{k2}")),
        ("n_max", format!("{n_max}")),
        ("argmax", t.at.clone()),
    ]);
    Ok(CheckReport::new("coproduct", params, t.worst, 1e-12, started))
}

/// All checks of the default suite, run concurrently. Deterministic given
/// the (fixed) parameters.
pub fn default_suite() -> Vec<CheckReport> {
    run_suite(None).expect("default suite names are valid")
}

pub fn suite_check_names() -> Vec<&'static str> {
    vec![
        "dualhahn-orthogonality",
        "dualhahn-closed-form",
        "osp12",
        "sl21",
        "coproduct",
        "dualhahn-algebra",
        "q12-spectrum",
        "dual-hahn-embedding",
        "wavefunctions",
        "overlaps",
    ]
}

/// Run the default suite, optionally filtered to a subset of check names.
/// Unknown names are an error.
pub fn run_suite(only: Option<&[String]>) -> Result<Vec<CheckReport>, String> {
    if let Some(names) = only {
        let known = suite_check_names();
        for n in names {
            if !known.contains(&n.as_str()) {
                return Err(format!("unknown check '{n}'; known checks: {}", known.join(", ")));
            }
        }
    }
    let wanted = |name: &str| only.is_none_or(|names| names.iter().any(|n| n == name));

    let mu_grid = [0.0, 0.5, 1.0, 2.0];
    let k_grid: Vec<(u32, u32)> =
        (0..=3).flat_map(|a| (0..=3).map(move |b| (a, b))).collect();
    let poly_grid = [0.1, 0.5, 1.0, 2.5];

    let mut jobs: Vec<Box<dyn Fn() -> CheckReport + Send + Sync>> = Vec::new();
    if wanted("dualhahn-orthogonality") {
        jobs.push(Box::new(move || check_dualhahn_orthogonality(16, &poly_grid)));
    }
    if wanted("dualhahn-closed-form") {
        jobs.push(Box::new(move || check_dualhahn_closed_form(12, &poly_grid)));
    }
    if wanted("osp12") {
        for &mu in &mu_grid {
            for eps in [Sign::Plus, Sign::Minus] {
                jobs.push(Box::new(move || {
                    check_osp12(RepLabel::new(mu, eps).unwrap(), 24).unwrap()
                }));
            }
        }
    }
    if wanted("sl21") {
        for &k in &mu_grid {
            jobs.push(Box::new(move || check_sl21(k, 24).unwrap()));
        }
    }
    if wanted("coproduct") {
        for &(a, b) in &[(0u32, 0u32), (1, 2), (3, 1)] {
            jobs.push(Box::new(move || check_coproduct(a as f64, b as f64, 12).unwrap()));
        }
    }
    if wanted("dualhahn-algebra") {
        for &(a, b) in &k_grid {
            jobs.push(Box::new(move || {
                check_dualhahn_algebra(a as f64, b as f64, 20).unwrap()
            }));
        }
    }
    if wanted("q12-spectrum") {
        for &(a, b) in &k_grid {
            jobs.push(Box::new(move || check_q12_spectrum(a as f64, b as f64, 20).unwrap()));
        }
    }
    if wanted("dual-hahn-embedding") {
        for &(a, b) in &k_grid {
            jobs.push(Box::new(move || {
                check_dual_hahn_embedding(a as f64, b as f64, 12).unwrap()
            }));
        }
    }
    if wanted("wavefunctions") {
        for &(a, b) in &k_grid {
            jobs.push(Box::new(move || check_wavefunctions(a, b, 6)));
        }
    }
    if wanted("overlaps") {
        for &(a, b) in &k_grid {
            jobs.push(Box::new(move || check_overlaps(a, b, 12).unwrap()));
        }
    }

    Ok(jobs.par_iter().map(|job| job()).collect())
}

pub fn all_passed(reports: &[CheckReport]) -> bool {
    reports.iter().all(|r| r.passed)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn osp12_passes_and_guards() {
        let free = check_osp12(RepLabel::new(0.0, Sign::Plus).unwrap(), 16).unwrap();
        assert!(free.passed, "{}", free.one_line());
        let generic = check_osp12(RepLabel::new(1.5, Sign::Minus).unwrap(), 16).unwrap();
        assert!(generic.passed && generic.defect <= 1e-12, "{}", generic.one_line());
        assert!(matches!(
            check_osp12(RepLabel::new(1.0, Sign::Plus).unwrap(), 1),
            Err(OspError::InvalidTruncation { .. })
        ));
    }

    #[test]
    fn sl21_passes() {
        for &k in &[0.0, 2.0] {
            let r = check_sl21(k, 20).unwrap();
            assert!(r.passed && r.defect <= 1e-10, "{}", r.one_line());
        }
    }

    #[test]
    fn dualhahn_algebra_blocks_are_exact() {
        for &(a, b) in &[(0.0, 0.0), (1.0, 2.0), (0.5, 1.7), (3.0, 3.0)] {
            let r = check_dualhahn_algebra(a, b, 10).unwrap();
            assert!(r.passed, "{}", r.one_line());
        }
    }

    #[test]
    fn q12_spectrum_matches() {
        let r = check_q12_spectrum(1.0, 2.0, 10).unwrap();
        assert!(r.passed, "{}", r.one_line());
        // Non-integer asymmetric parameters too.
        let r2 = check_q12_spectrum(0.3, 1.9, 8).unwrap();
        assert!(r2.passed, "{}", r2.one_line());
    }

    #[test]
    fn embedding_passes() {
        for &(a, b) in &[(0.0, 0.0), (1.0, 2.0), (3.0, 1.0)] {
            let r = check_dual_hahn_embedding(a, b, 12).unwrap();
            assert!(r.passed, "{}", r.one_line());
        }
    }

    #[test]
    fn coproduct_passes() {
        let r = check_coproduct(1.0, 2.0, 10).unwrap();
        assert!(r.passed, "{}", r.one_line());
    }

    #[test]
    fn wavefunctions_pass() {
        let r = check_wavefunctions(1, 2, 6);
        assert!(r.passed, "{}", r.one_line());
        // Spot value from the check's own oracle: m=4, k=2 ladder element.
        let amp = ladder_amplitude(4, 2);
        assert!((amp - mu_number(5, 2.0).sqrt()).abs() <= 1e-7);
    }

    #[test]
    fn overlaps_pass_small() {
        let r = check_overlaps(1, 2, 6).unwrap();
        assert!(r.passed, "{}", r.one_line());
    }

    #[test]
    fn unknown_check_name_is_rejected() {
        assert!(run_suite(Some(&["no-such-check".to_string()])).is_err());
    }

    #[test]
    fn filtered_suite_is_deterministic() {
        let names = vec!["osp12".to_string(), "q12-spectrum".to_string()];
        let a = run_suite(Some(&names)).unwrap();
        let b = run_suite(Some(&names)).unwrap();
        assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.name, y.name);
            assert_eq!(x.defect, y.defect);
            assert_eq!(x.passed, y.passed);
        }
        assert!(all_passed(&a));
    }
}
