//! Acceptance suite: the eight headline properties of the library, each run
//! at its pinned tolerance and parameter grid, with one pass/fail line per
//! criterion.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines.

use hahnosc::dualhahn::{orthogonality_defect, DualHahnParams};
use hahnosc::overlaps::{
    align_rows_to, q12_diagonalization_check, quadrature_matrix, OverlapMatrix, QuadratureSpec,
};
use hahnosc::verify::{
    check_dual_hahn_embedding, check_dualhahn_algebra, check_dualhahn_closed_form, check_osp12,
    check_q12_spectrum, check_sl21, check_wavefunctions, default_suite, CheckReport,
};
use hahnosc::osp::RepLabel;
use hahnosc::Sign;
use std::time::{Duration, Instant};

struct Criterion {
    name: &'static str,
    defect: f64,
    tolerance: f64,
    runtime: Duration,
    budget: Duration,
}

impl Criterion {
    fn passed(&self) -> bool {
        self.defect <= self.tolerance && self.runtime <= self.budget
    }

    fn line(&self) -> String {
        format!(
            "{} {}: defect={:.3e} (tol {:.0e}), runtime={:.2}s (budget {:.0}s)",
            if self.passed() { "PASS" } else { "FAIL" },
            self.name,
            self.defect,
            self.tolerance,
            self.runtime.as_secs_f64(),
            self.budget.as_secs_f64(),
        )
    }
}

fn worst_of(reports: &[CheckReport]) -> f64 {
    reports.iter().map(|r| r.defect).fold(0.0, f64::max)
}

fn k_pairs() -> Vec<(u32, u32)> {
    (0..=3).flat_map(|a| (0..=3).map(move |b| (a, b))).collect()
}

/// 1. Discrete orthogonality of the dual −1 Hahn family.
fn criterion_orthogonality() -> Criterion {
    let started = Instant::now();
    let grid = [0.1, 0.5, 1.0, 2.5];
    let mut worst = 0.0f64;
    for cap in 0..=16u32 {
        for &xi in &grid {
            for &zeta in &grid {
                let p = DualHahnParams::new(xi, zeta, cap).unwrap();
                worst = worst.max(orthogonality_defect(&p));
            }
        }
    }
    Criterion {
        name: "1 dual -1 Hahn orthogonality",
        defect: worst,
        tolerance: 1e-8,
        runtime: started.elapsed(),
        budget: Duration::from_secs(5),
    }
}

/// 2. Hypergeometric closed forms against the recurrence, all four parity
/// branches.
fn criterion_closed_form() -> Criterion {
    let started = Instant::now();
    let report = check_dualhahn_closed_form(12, &[0.1, 0.5, 1.0, 2.5]);
    Criterion {
        name: "2 closed form vs recurrence",
        defect: report.defect,
        tolerance: 1e-9,
        runtime: started.elapsed(),
        budget: Duration::from_secs(2),
    }
}

/// 3. osp(1|2) and sl(2|1) relation suites at n_max = 24.
fn criterion_relation_suites() -> Criterion {
    let started = Instant::now();
    let mut reports = Vec::new();
    for &mu in &[0.0, 0.5, 1.0, 2.0] {
        for eps in [Sign::Plus, Sign::Minus] {
            reports.push(check_osp12(RepLabel::new(mu, eps).unwrap(), 24).unwrap());
        }
        reports.push(check_sl21(mu, 24).unwrap());
    }
    Criterion {
        name: "3 osp(1|2) and sl(2|1) relations",
        defect: worst_of(&reports),
        tolerance: 1e-10,
        runtime: started.elapsed(),
        budget: Duration::from_secs(3),
    }
}

/// 4. Dual −1 Hahn symmetry algebra, block-exact for N ≤ 20.
fn criterion_symmetry_algebra() -> Criterion {
    let started = Instant::now();
    let reports: Vec<CheckReport> = k_pairs()
        .into_iter()
        .map(|(a, b)| check_dualhahn_algebra(a as f64, b as f64, 20).unwrap())
        .collect();
    Criterion {
        name: "4 dual -1 Hahn symmetry algebra",
        defect: worst_of(&reports),
        tolerance: 1e-10,
        runtime: started.elapsed(),
        budget: Duration::from_secs(5),
    }
}

/// 5. Spectrum of the total Casimir per block, multiplicity one.
fn criterion_q12_spectrum() -> Criterion {
    let started = Instant::now();
    let reports: Vec<CheckReport> = k_pairs()
        .into_iter()
        .map(|(a, b)| check_q12_spectrum(a as f64, b as f64, 20).unwrap())
        .collect();
    Criterion {
        name: "5 total Casimir block spectrum",
        defect: worst_of(&reports),
        tolerance: 1e-10,
        runtime: started.elapsed(),
        budget: Duration::from_secs(2),
    }
}

/// 6. Overlap unitarity and three-way agreement.
fn criterion_overlaps() -> Criterion {
    let started = Instant::now();
    let mut ratio = 0.0f64;
    // Unitarity ≤ 1e−9 for N ≤ 12, k ∈ {0..3}².
    for (k1, k2) in k_pairs() {
        for level in 0..=12u32 {
            let closed = OverlapMatrix::closed_form(level, k1, k2).unwrap();
            ratio = ratio.max(closed.unitarity_defect() / 1e-9);
        }
    }
    // Closed form vs eigenvectors ≤ 1e−9 and vs quadrature ≤ 1e−6 for
    // N ≤ 6, k ≤ 2.
    let spec = QuadratureSpec::default();
    for k1 in 0..=2u32 {
        for k2 in 0..=2u32 {
            for level in 0..=6u32 {
                let eig = q12_diagonalization_check(level, k1, k2).unwrap();
                ratio = ratio.max(eig / 1e-9);
                let closed = OverlapMatrix::closed_form(level, k1, k2).unwrap();
                let mut quad = quadrature_matrix(level, k1, k2, &spec).unwrap();
                align_rows_to(&closed.entries, &mut quad);
                ratio = ratio.max((quad - closed.entries).abs().max() / 1e-6);
            }
        }
    }
    Criterion {
        name: "6 overlap unitarity and three-way agreement",
        defect: ratio,
        tolerance: 1.0,
        runtime: started.elapsed(),
        budget: Duration::from_secs(30),
    }
}

/// 7. Wavefunction certification: norms, ODE residuals, ladder elements.
fn criterion_wavefunctions() -> Criterion {
    let started = Instant::now();
    let reports: Vec<CheckReport> =
        k_pairs().into_iter().map(|(a, b)| check_wavefunctions(a, b, 6)).collect();
    Criterion {
        name: "7 wavefunction certification",
        defect: worst_of(&reports),
        tolerance: 1.0,
        runtime: started.elapsed(),
        budget: Duration::from_secs(20),
    }
}

/// 8. su(1,1) embedding relations and the Casimir identity.
fn criterion_embedding() -> Criterion {
    let started = Instant::now();
    let reports: Vec<CheckReport> = k_pairs()
        .into_iter()
        .map(|(a, b)| check_dual_hahn_embedding(a as f64, b as f64, 12).unwrap())
        .collect();
    Criterion {
        name: "8 su(1,1) / dual Hahn embedding",
        defect: worst_of(&reports),
        tolerance: 1.0,
        runtime: started.elapsed(),
        budget: Duration::from_secs(2),
    }
}

#[test]
fn acceptance_criteria() {
    let criteria = [
        criterion_orthogonality(),
        criterion_closed_form(),
        criterion_relation_suites(),
        criterion_symmetry_algebra(),
        criterion_q12_spectrum(),
        criterion_overlaps(),
        criterion_wavefunctions(),
        criterion_embedding(),
    ];
    let mut all_ok = true;
    for c in &criteria {
        println!("{}", c.line());
        all_ok &= c.passed();
    }
    assert!(all_ok, "at least one acceptance criterion failed (see lines above)");
}

#[test]
fn default_suite_passes_within_a_minute() {
    let started = Instant::now();
    let reports = default_suite();
    let elapsed = started.elapsed();
    let failed: Vec<String> =
        reports.iter().filter(|r| !r.passed).map(|r| r.one_line()).collect();
    println!(
        "default suite: {} checks in {:.2}s",
        reports.len(),
        elapsed.as_secs_f64()
    );
    assert!(failed.is_empty(), "failing checks:\n{}", failed.join("\n"));
    assert!(
        elapsed <= Duration::from_secs(60),
        "suite took {:.2}s, budget is 60s",
        elapsed.as_secs_f64()
    );
}
