//! Overlap coefficients ⟨q_z | m, N−m⟩ between the Casimir eigenbasis and
//! the Cartesian eigenbasis at a fixed energy level — the Clebsch-Gordan
//! coefficients of the model.
//!
//! Three independent routes are implemented and certified against each
//! other: the dual −1 Hahn closed form, numerical diagonalization of the
//! Casimir block, and two-dimensional quadrature of the sampled spinors.
//! Eigenvector and quadrature routes fix each row's overall sign by making
//! its largest-magnitude entry positive; the closed form is aligned the same
//! way before comparison, since the per-row phase is conventional.

use crate::dualhahn::{norm_log, weight_log, DualHahnError, DualHahnParams};
use crate::orthopoly::mu_number;
use crate::osp::{level_block, q12, OspError, RepLabel, TensorBasis};
use crate::quadrature::gauss_legendre_on;
use crate::spinor::{
    psi_1d, q_eigenvector, sample_spinor, CartesianState, QEigenvector, SpinorError, SpinorState,
};
use crate::Sign;
use nalgebra::DMatrix;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum OverlapError {
    #[error("index ({z}, {m}) out of range 0..={max}")]
    IndexOutOfRange { z: u32, m: u32, max: u32 },
    #[error("quadrature not converged: resolutions differ by {difference:e} (tolerance {tol:e})")]
    QuadratureNotConverged { difference: f64, tol: f64 },
    #[error("degenerate block: eigenvalues {a} and {b} collide")]
    DegenerateBlock { a: f64, b: f64 },
    #[error(transparent)]
    DualHahn(#[from] DualHahnError),
    #[error(transparent)]
    Spinor(#[from] SpinorError),
    #[error(transparent)]
    Osp(#[from] OspError),
}

/// Quadrature configuration: tensor-product Gauss–Legendre on [0, L]² with
/// `nodes` points per axis, doubled once for the convergence estimate.
#[derive(Clone, Copy, Debug)]
pub struct QuadratureSpec {
    pub nodes: usize,
    pub tol: f64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec { nodes: 160, tol: 1e-8 }
    }
}

/// The (N+1)×(N+1) overlap matrix at energy level N, rows indexed by z and
/// columns by m = m₁.
#[derive(Clone, Debug)]
pub struct OverlapMatrix {
    pub level: u32,
    pub k1: u32,
    pub k2: u32,
    pub entries: DMatrix<f64>,
}

fn eps12(k1: u32, k2: u32) -> f64 {
    if (k1 + k2) % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// q_z = ε₁₂(−1)^{z+1}(z + k₁ + k₂ + 1/2) with ε_i = (−1)^{k_i}.
pub fn q_eigenvalue(z: u32, k1: u32, k2: u32) -> f64 {
    let flip = if z % 2 == 0 { -1.0 } else { 1.0 };
    eps12(k1, k2) * flip * (z as f64 + (k1 + k2) as f64 + 0.5)
}

/// The spectral point x_z = (−1)^{N+z+1}(2z + 2k₁ + 2k₂ + 1).
pub fn spectral_point(z: u32, level: u32, k1: u32, k2: u32) -> f64 {
    let sign = if (level + z) % 2 == 0 { -1.0 } else { 1.0 };
    sign * (2.0 * z as f64 + 2.0 * (k1 + k2) as f64 + 1.0)
}

/// P_0 .. P_deg at x for the (k₁, k₂, N) family; the recurrence extends one
/// degree past N (u_{N+1} = 0), where P_{N+1} vanishes on the grid.
fn poly_values_up_to(deg: u32, x: f64, k1: u32, k2: u32, level: u32) -> Vec<f64> {
    let (xi, zeta) = (k1 as f64, k2 as f64);
    let cap_sign = if level % 2 == 0 { 1.0 } else { -1.0 };
    let mut out = Vec::with_capacity(deg as usize + 1);
    let mut prev = 0.0;
    let mut cur = 1.0;
    out.push(cur);
    for m in 0..deg {
        let b = 2.0 * (if m % 2 == 0 { -1.0 } else { 1.0 }) * (xi + cap_sign * zeta) - 1.0;
        let u = if m == 0 {
            0.0
        } else {
            4.0 * mu_number(m, xi) * mu_number(level + 1 - m, zeta)
        };
        let next = (x - b) * cur - u * prev;
        prev = cur;
        cur = next;
        out.push(cur);
    }
    out
}

/// The m-dependent sign ε₂^m (−1)^{m(m+2N+1)/2} carried by the substitution
/// that turns the overlap matrix elements into the monic polynomial family.
/// It is a phase convention of the Cartesian basis vectors (a column sign,
/// so not absorbable into the |q_z⟩ phases) and is required for the closed
/// form to match the eigenvector and quadrature routes entrywise.
fn column_sign(m: u32, level: u32, k2: u32) -> f64 {
    let e2 = if (m * k2) % 2 == 0 { 1.0 } else { -1.0 };
    let exponent = (m as u64 * (m as u64 + 2 * level as u64 + 1)) / 2;
    let swap = if exponent % 2 == 0 { 1.0 } else { -1.0 };
    e2 * swap
}

/// Closed-form overlap
/// ⟨q_z | m, N−m⟩ = σ_m P_m(x_z; k₁, k₂, N) √(w_idx / ν_m),
/// with the weight index z for N odd and N−z for N even, and σ_m the
/// Cartesian-basis phase of [`column_sign`].
pub fn overlap_closed_form(
    z: u32,
    m: u32,
    level: u32,
    k1: u32,
    k2: u32,
) -> Result<f64, OverlapError> {
    if z > level || m > level {
        return Err(OverlapError::IndexOutOfRange { z, m, max: level });
    }
    let params = DualHahnParams::new(k1 as f64, k2 as f64, level)?;
    let x = spectral_point(z, level, k1, k2);
    let value = poly_values_up_to(m, x, k1, k2, level)[m as usize];
    let widx = if level % 2 == 1 { z } else { level - z };
    let ratio = weight_log(widx, &params)?.div(norm_log(m, &params)?);
    Ok(column_sign(m, level, k2) * value * ratio.sqrt().to_f64())
}

impl OverlapMatrix {
    /// The full closed-form matrix at level N.
    pub fn closed_form(level: u32, k1: u32, k2: u32) -> Result<Self, OverlapError> {
        let n = level as usize;
        let mut entries = DMatrix::zeros(n + 1, n + 1);
        let params = DualHahnParams::new(k1 as f64, k2 as f64, level)?;
        for z in 0..=level {
            let x = spectral_point(z, level, k1, k2);
            let widx = if level % 2 == 1 { z } else { level - z };
            let wlog = weight_log(widx, &params)?;
            let values = poly_values_up_to(level, x, k1, k2, level);
            for m in 0..=level {
                let ratio = wlog.div(norm_log(m, &params)?);
                entries[(z as usize, m as usize)] =
                    column_sign(m, level, k2) * values[m as usize] * ratio.sqrt().to_f64();
            }
        }
        Ok(OverlapMatrix { level, k1, k2, entries })
    }

    /// max(|MᵀM − 1|, |MMᵀ − 1|) over entries.
    pub fn unitarity_defect(&self) -> f64 {
        let m = &self.entries;
        let n = m.nrows();
        let id = DMatrix::<f64>::identity(n, n);
        let a = (m.transpose() * m - &id).abs().max();
        let b = (m * m.transpose() - id).abs().max();
        a.max(b)
    }
}

/// Flip each row's sign so its leading large entry is positive. The pivot is
/// the first entry within a factor 2 of the row's maximum magnitude, so that
/// two matrices agreeing entrywise to far better than their entry scale pick
/// the same pivot even when magnitudes tie exactly.
pub fn sign_align_rows(m: &mut DMatrix<f64>) {
    for r in 0..m.nrows() {
        let mut max_mag = 0.0f64;
        for c in 0..m.ncols() {
            max_mag = max_mag.max(m[(r, c)].abs());
        }
        let pivot = (0..m.ncols())
            .find(|&c| m[(r, c)].abs() >= 0.5 * max_mag)
            .unwrap_or(0);
        if m[(r, pivot)] < 0.0 {
            for c in 0..m.ncols() {
                m[(r, c)] = -m[(r, c)];
            }
        }
    }
}

/// Flip rows of `candidate` to match the sign convention of `reference`
/// (row phases are conventional; the dot product fixes them unambiguously).
pub fn align_rows_to(reference: &DMatrix<f64>, candidate: &mut DMatrix<f64>) {
    for r in 0..candidate.nrows() {
        let dot: f64 = (0..candidate.ncols())
            .map(|c| reference[(r, c)] * candidate[(r, c)])
            .sum();
        if dot < 0.0 {
            for c in 0..candidate.ncols() {
                candidate[(r, c)] = -candidate[(r, c)];
            }
        }
    }
}

/// The |q_z⟩ eigenvector placed at energy level N (sector δ = (−1)^N,
/// representation signs ε_i = (−1)^{k_i}).
pub fn q_state_at_level(
    z: u32,
    level: u32,
    k1: u32,
    k2: u32,
) -> Result<QEigenvector, OverlapError> {
    let delta = Sign::from_parity(level);
    let q = q_eigenvector(z, k1, k2, Sign::from_parity(k1), Sign::from_parity(k2), delta);
    Ok(q.at_level(level)?)
}

/// Overlap of an arbitrary q-eigenvector with an arbitrary Cartesian state
/// by two-dimensional quadrature. A spinor slot mismatch yields exact 0
/// without integrating; otherwise the rule is run at `nodes` and 2·`nodes`
/// per axis and the pair must agree to `tol`.
pub fn state_overlap_quadrature(
    q: &QEigenvector,
    cart: &CartesianState,
    spec: &QuadratureSpec,
) -> Result<f64, OverlapError> {
    let slot = cart.slot();
    if slot != q.minus_state.slot() && slot != q.plus_state.slot() {
        return Ok(0.0);
    }
    let energy = cart.energy().max(q.minus_state.energy());
    let cutoff = (2.0 * energy).sqrt() + 8.0;
    let coarse = integrate_pair(q, cart, spec.nodes, cutoff)?;
    let fine = integrate_pair(q, cart, 2 * spec.nodes, cutoff)?;
    let difference = (coarse - fine).abs();
    if difference > spec.tol {
        return Err(OverlapError::QuadratureNotConverged { difference, tol: spec.tol });
    }
    Ok(fine)
}

/// ⟨q_z | m, N−m⟩ by quadrature at level N.
pub fn overlap_quadrature(
    z: u32,
    m: u32,
    level: u32,
    k1: u32,
    k2: u32,
    spec: &QuadratureSpec,
) -> Result<f64, OverlapError> {
    if z > level || m > level {
        return Err(OverlapError::IndexOutOfRange { z, m, max: level });
    }
    let q = q_state_at_level(z, level, k1, k2)?;
    let cart = CartesianState::new(m, level - m, k1, k2);
    state_overlap_quadrature(&q, &cart, spec)
}

fn integrate_pair(
    q: &QEigenvector,
    cart: &CartesianState,
    nodes: usize,
    cutoff: f64,
) -> Result<f64, OverlapError> {
    let rule = gauss_legendre_on(nodes, 0.0, cutoff);
    let points: Vec<(f64, f64)> = rule
        .nodes
        .iter()
        .flat_map(|&x| rule.nodes.iter().map(move |&y| (x, y)))
        .collect();
    let qv = sample_spinor(&SpinorState::Q(*q), &points)?;
    let cv = sample_spinor(&SpinorState::Cartesian(*cart), &points)?;
    let mut total = 0.0;
    let mut idx = 0;
    for &wx in &rule.weights {
        for &wy in &rule.weights {
            let dot: f64 = qv[idx].iter().zip(&cv[idx]).map(|(a, b)| a * b).sum();
            total += wx * wy * dot;
            idx += 1;
        }
    }
    Ok(total)
}

/// The full overlap matrix at level N by quadrature, with the convergence
/// estimate applied entrywise. States are sampled once per grid, so the cost
/// is O((N+1)·nodes²) evaluations rather than O((N+1)²·nodes²).
pub fn quadrature_matrix(
    level: u32,
    k1: u32,
    k2: u32,
    spec: &QuadratureSpec,
) -> Result<DMatrix<f64>, OverlapError> {
    let energy = (level + k1 + k2 + 1) as f64;
    let cutoff = (2.0 * energy).sqrt() + 8.0;
    let coarse = quadrature_matrix_at(level, k1, k2, spec.nodes, cutoff)?;
    let fine = quadrature_matrix_at(level, k1, k2, 2 * spec.nodes, cutoff)?;
    let worst = (&coarse - &fine).abs().max();
    if worst > spec.tol {
        return Err(OverlapError::QuadratureNotConverged { difference: worst, tol: spec.tol });
    }
    Ok(fine)
}

fn quadrature_matrix_at(
    level: u32,
    k1: u32,
    k2: u32,
    nodes: usize,
    cutoff: f64,
) -> Result<DMatrix<f64>, OverlapError> {
    let n = level as usize;
    let rule = gauss_legendre_on(nodes, 0.0, cutoff);
    // 1D factor tables: psi_a[m][i] = ψ_{m,k₁}(x_i), psi_b likewise on y.
    let psi_a: Vec<Vec<f64>> = (0..=level)
        .map(|m| rule.nodes.iter().map(|&x| psi_1d(m, k1, x)).collect())
        .collect();
    let psi_b: Vec<Vec<f64>> = (0..=level)
        .map(|m| rule.nodes.iter().map(|&x| psi_1d(m, k2, x)).collect())
        .collect();
    let points: Vec<(f64, f64)> = rule
        .nodes
        .iter()
        .flat_map(|&x| rule.nodes.iter().map(move |&y| (x, y)))
        .collect();

    let mut entries = DMatrix::zeros(n + 1, n + 1);
    for z in 0..=level {
        let q = q_state_at_level(z, level, k1, k2)?;
        let qv = sample_spinor(&SpinorState::Q(q), &points)?;
        for m in 0..=level {
            let cart = CartesianState::new(m, level - m, k1, k2);
            let slot = cart.slot();
            if slot != q.minus_state.slot() && slot != q.plus_state.slot() {
                continue;
            }
            let mut total = 0.0;
            let mut idx = 0;
            for (i, &wx) in rule.weights.iter().enumerate() {
                for (j, &wy) in rule.weights.iter().enumerate() {
                    let cart_v = 2.0 * psi_a[m as usize][i] * psi_b[(level - m) as usize][j];
                    total += wx * wy * qv[idx][slot] * cart_v;
                    idx += 1;
                }
            }
            entries[(z as usize, m as usize)] = total;
        }
    }
    Ok(entries)
}

/// Verify the three-term recurrence satisfied by the overlap matrix elements
/// in monic form,
/// (−1)^N [2ε₁₂ q_z] 𝒩_m = 𝒩_{m+1} + [2(−1)^{m+1}(k₁+(−1)^N k₂)−1] 𝒩_m
///                        + 4[m]_{k₁}[N−m+1]_{k₂} 𝒩_{m−1},
/// at every spectral point. Returns the maximum defect relative to the
/// largest term magnitude of each instance.
pub fn recurrence_check(level: u32, k1: u32, k2: u32) -> f64 {
    let (xi, zeta) = (k1 as f64, k2 as f64);
    let cap_sign = if level % 2 == 0 { 1.0 } else { -1.0 };
    let e12 = eps12(k1, k2);
    let mut worst = 0.0f64;
    for z in 0..=level {
        let x = spectral_point(z, level, k1, k2);
        let qz = q_eigenvalue(z, k1, k2);
        let values = poly_values_up_to(level + 1, x, k1, k2, level);
        for m in 0..=level {
            let b = 2.0 * (if m % 2 == 0 { -1.0 } else { 1.0 }) * (xi + cap_sign * zeta) - 1.0;
            let u = if m == 0 {
                0.0
            } else {
                4.0 * mu_number(m, xi) * mu_number(level + 1 - m, zeta)
            };
            let prev = if m == 0 { 0.0 } else { values[m as usize - 1] };
            let lhs = cap_sign * 2.0 * e12 * qz * values[m as usize];
            let t1 = values[m as usize + 1];
            let t2 = b * values[m as usize];
            let t3 = u * prev;
            let scale = lhs.abs().max(t1.abs()).max(t2.abs()).max(t3.abs()).max(1.0);
            worst = worst.max((lhs - (t1 + t2 + t3)).abs() / scale);
        }
    }
    worst
}

/// Overlap rows from numerically diagonalizing the level-N block of Δ(Q)
/// with μ_i = k_i, ε_i = (−1)^{k_i}. Row z holds the eigenvector matched to
/// the eigenvalue q_z (multiplicity one demanded), with its sign convention
/// left as the eigensolver produced it. Also returns the worst eigenvalue
/// deviation from the q_z formula.
pub fn eigen_matrix(level: u32, k1: u32, k2: u32) -> Result<(DMatrix<f64>, f64), OverlapError> {
    let labels = (RepLabel::physical(k1), RepLabel::physical(k2));
    let basis = TensorBasis::new(labels, level);
    let block = level_block(&q12(&basis), &basis, level);
    let eigen = block.symmetric_eigen();
    let n = level as usize;

    let mut rows = DMatrix::zeros(n + 1, n + 1);
    let mut worst = 0.0f64;
    for z in 0..=level {
        let target = q_eigenvalue(z, k1, k2);
        // Match by eigenvalue, demanding a unique hit.
        let mut best = 0usize;
        let mut best_d = f64::INFINITY;
        let mut second = f64::INFINITY;
        for (j, &lambda) in eigen.eigenvalues.iter().enumerate() {
            let d = (lambda - target).abs();
            if d < best_d {
                second = best_d;
                best_d = d;
                best = j;
            } else if d < second {
                second = d;
            }
        }
        if second < 1e-6 {
            return Err(OverlapError::DegenerateBlock { a: eigen.eigenvalues[best], b: target });
        }
        worst = worst.max(best_d);
        for m in 0..=n {
            rows[(z as usize, m)] = eigen.eigenvectors[(m, best)];
        }
    }
    Ok((rows, worst))
}

/// Diagonalize the level-N block of Δ(Q) and match eigenvalues against q_z
/// and eigenvector components against the closed-form overlap rows,
/// sign-aligned. Returns the worst mismatch.
pub fn q12_diagonalization_check(level: u32, k1: u32, k2: u32) -> Result<f64, OverlapError> {
    let (mut eig_rows, mut worst) = eigen_matrix(level, k1, k2)?;
    let closed = OverlapMatrix::closed_form(level, k1, k2)?.entries;
    align_rows_to(&closed, &mut eig_rows);
    worst = worst.max((eig_rows - closed).abs().max());
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dualhahn::{eval_recurrence, grid_point, norm, weight};
    use approx::assert_relative_eq;

    #[test]
    fn single_state_level_is_unimodular() {
        for &(k1, k2) in &[(0u32, 0u32), (1, 2), (3, 1)] {
            let m = OverlapMatrix::closed_form(0, k1, k2).unwrap();
            assert_relative_eq!(m.entries[(0, 0)].abs(), 1.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn two_state_level_from_first_principles() {
        // Recompute the 2×2 entries directly from the dual −1 Hahn data.
        let (k1, k2) = (1u32, 1u32);
        let p = DualHahnParams::new(1.0, 1.0, 1).unwrap();
        let m = OverlapMatrix::closed_form(1, k1, k2).unwrap();
        for z in 0..=1u32 {
            let x = spectral_point(z, 1, k1, k2);
            // N odd: x_z hits the grid at s = z.
            assert_relative_eq!(x, grid_point(z, &p).unwrap(), epsilon = 1e-12);
            for dm in 0..=1u32 {
                let expect = column_sign(dm, 1, k2)
                    * eval_recurrence(dm, x, &p).unwrap()
                    * (weight(z, &p).unwrap() / norm(dm, &p).unwrap()).sqrt();
                assert_relative_eq!(m.entries[(z as usize, dm as usize)], expect, epsilon = 1e-12);
            }
        }
        assert!(m.unitarity_defect() <= 1e-12);
    }

    #[test]
    fn unitarity_over_parameter_grid() {
        for level in 0..=12u32 {
            for k1 in 0..=3u32 {
                for k2 in 0..=3u32 {
                    let m = OverlapMatrix::closed_form(level, k1, k2).unwrap();
                    let defect = m.unitarity_defect();
                    assert!(
                        defect <= 1e-9,
                        "unitarity defect {defect} at N={level} k=({k1},{k2})"
                    );
                }
            }
        }
    }

    #[test]
    fn recurrence_defects() {
        assert!(recurrence_check(1, 1, 1) <= 1e-12);
        assert!(recurrence_check(10, 2, 1) <= 1e-9);
        // The relation is k-symmetric for N even.
        let a = recurrence_check(8, 3, 1);
        let b = recurrence_check(8, 1, 3);
        assert!(a <= 1e-9 && b <= 1e-9 && (a - b).abs() <= 1e-9);
    }

    #[test]
    fn eigen_route_matches_closed_form() {
        assert!(q12_diagonalization_check(0, 1, 1).unwrap() <= 1e-12);
        assert!(q12_diagonalization_check(5, 1, 2).unwrap() <= 1e-9);
        assert!(q12_diagonalization_check(9, 3, 0).unwrap() <= 1e-9);
    }

    #[test]
    fn quadrature_matches_closed_form_small_levels() {
        let spec = QuadratureSpec { nodes: 80, tol: 1e-8 };
        for level in 0..=3u32 {
            for &(k1, k2) in &[(0u32, 0u32), (1, 2)] {
                let mut quad = quadrature_matrix(level, k1, k2, &spec).unwrap();
                let closed = OverlapMatrix::closed_form(level, k1, k2).unwrap().entries;
                align_rows_to(&closed, &mut quad);
                let defect = (quad - closed).abs().max();
                assert!(
                    defect <= 1e-6,
                    "quadrature mismatch {defect} at N={level} k=({k1},{k2})"
                );
            }
        }
    }

    #[test]
    fn single_entry_quadrature_agrees_with_batch() {
        let spec = QuadratureSpec { nodes: 80, tol: 1e-8 };
        let batch = quadrature_matrix(2, 1, 0, &spec).unwrap();
        for z in 0..=2u32 {
            for m in 0..=2u32 {
                let single = overlap_quadrature(z, m, 2, 1, 0, &spec).unwrap();
                assert_relative_eq!(single, batch[(z as usize, m as usize)], epsilon = 1e-10);
            }
        }
    }

    #[test]
    fn slot_mismatch_is_exact_zero() {
        // A q-state at an even level occupies slots {0, 3}; a Cartesian state
        // at an odd level occupies slot 1 or 2. No integration happens.
        let spec = QuadratureSpec { nodes: 4, tol: 1e-8 };
        let q = q_state_at_level(1, 4, 1, 1).unwrap();
        let cart = CartesianState::new(2, 1, 1, 1);
        assert_eq!(state_overlap_quadrature(&q, &cart, &spec).unwrap(), 0.0);
    }

    #[test]
    fn energy_superselection_by_quadrature() {
        // Same sector, different levels: the radial factors are orthogonal.
        let spec = QuadratureSpec { nodes: 120, tol: 1e-8 };
        let q = q_state_at_level(2, 4, 1, 1).unwrap();
        for m in 0..=2u32 {
            let cart = CartesianState::new(m, 2 - m, 1, 1);
            let v = state_overlap_quadrature(&q, &cart, &spec).unwrap();
            assert!(v.abs() <= 1e-8, "superselection violated at m={m}: {v}");
        }
    }

    #[test]
    fn ground_overlap_diagonal_is_unit() {
        // N = 0: single entry ±1; quadrature reproduces it with sign.
        let spec = QuadratureSpec { nodes: 80, tol: 1e-8 };
        let v = overlap_quadrature(0, 0, 0, 1, 2, &spec).unwrap();
        let c = overlap_closed_form(0, 0, 0, 1, 2).unwrap();
        assert_relative_eq!(v.abs(), 1.0, epsilon = 1e-8);
        assert_relative_eq!(c.abs(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn out_of_range_indices_error() {
        assert!(matches!(
            overlap_closed_form(3, 1, 2, 0, 0),
            Err(OverlapError::IndexOutOfRange { .. })
        ));
        let spec = QuadratureSpec::default();
        assert!(matches!(
            overlap_quadrature(0, 5, 2, 0, 0, &spec),
            Err(OverlapError::IndexOutOfRange { .. })
        ));
    }
}
