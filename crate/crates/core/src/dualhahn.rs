//! The monic dual −1 Hahn polynomials P_n(x; ξ, ζ, N): three-term recurrence,
//! hypergeometric closed forms for all four parity branches, the finite
//! orthogonality grid with its weights and normalizations, and a certifier
//! that measures the orthogonality defect.
//!
//! The recurrence is the reference evaluation path; the closed forms are the
//! cross-check. Weights and norms are assembled in sign/log-magnitude form
//! because their Pochhammer products overflow `f64` well before the ratios
//! that actually matter do.

use crate::orthopoly::{
    hyp3f2_terminating, ln_factorial, mu_number, pochhammer_log, OrthopolyError, PolyEval,
};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum DualHahnError {
    #[error("index {index} out of range 0..={max}")]
    IndexOutOfRange { index: u32, max: u32 },
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error(transparent)]
    Orthopoly(#[from] OrthopolyError),
}

/// Parameter triple (ξ, ζ, N) with ξ, ζ > −1/2 and N ≥ 0.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DualHahnParams {
    xi: f64,
    zeta: f64,
    n_max: u32,
}

impl DualHahnParams {
    pub fn new(xi: f64, zeta: f64, n_max: u32) -> Result<Self, DualHahnError> {
        if !(xi > -0.5) || !xi.is_finite() {
            return Err(DualHahnError::InvalidParams(format!("xi must be > -1/2, got {xi}")));
        }
        if !(zeta > -0.5) || !zeta.is_finite() {
            return Err(DualHahnError::InvalidParams(format!("zeta must be > -1/2, got {zeta}")));
        }
        Ok(DualHahnParams { xi, zeta, n_max })
    }

    pub fn xi(&self) -> f64 {
        self.xi
    }

    pub fn zeta(&self) -> f64 {
        self.zeta
    }

    pub fn n_max(&self) -> u32 {
        self.n_max
    }

    fn check_index(&self, n: u32) -> Result<(), DualHahnError> {
        if n > self.n_max {
            Err(DualHahnError::IndexOutOfRange { index: n, max: self.n_max })
        } else {
            Ok(())
        }
    }
}

/// Recurrence coefficients (b_n, u_n) of
/// x P_n = P_{n+1} + b_n P_n + u_n P_{n−1}, with
/// b_n = 2(−1)^{n+1}(ξ + (−1)^N ζ) − 1 and u_n = 4 [n]_ξ [N−n+1]_ζ.
///
/// u_0 = 0 by convention (it multiplies P_{−1}).
pub fn recurrence_coefficients(n: u32, p: &DualHahnParams) -> Result<(f64, f64), DualHahnError> {
    p.check_index(n)?;
    let sign_n = if n % 2 == 0 { -1.0 } else { 1.0 };
    let sign_cap = if p.n_max % 2 == 0 { 1.0 } else { -1.0 };
    let b = 2.0 * sign_n * (p.xi + sign_cap * p.zeta) - 1.0;
    let u = if n == 0 {
        0.0
    } else {
        4.0 * mu_number(n, p.xi) * mu_number(p.n_max - n + 1, p.zeta)
    };
    Ok((b, u))
}

/// Monic P_n(x) from the three-term recurrence, P_0 = 1, P_{−1} = 0.
pub fn eval_recurrence(n: u32, x: f64, p: &DualHahnParams) -> Result<f64, DualHahnError> {
    Ok(eval_recurrence_scaled(n, x, p)?.0)
}

/// P_n(x) together with its cancellation scale: the largest term magnitude
/// |x − b_m|·|P_m| + |u_m|·|P_{m−1}| seen while running the recurrence.
///
/// Near a root of P_n the value itself is tiny while the recurrence cancels
/// terms of this size, so independent evaluations of P_n can only be expected
/// to agree relative to the scale, not to |P_n|.
pub fn eval_recurrence_scaled(
    n: u32,
    x: f64,
    p: &DualHahnParams,
) -> Result<(f64, f64), DualHahnError> {
    p.check_index(n)?;
    let mut prev = 0.0;
    let mut cur = 1.0;
    let mut scale = 1.0f64;
    for m in 0..n {
        let (b, u) = recurrence_coefficients(m, p)?;
        scale = scale.max(((x - b) * cur).abs() + (u * prev).abs());
        let next = (x - b) * cur - u * prev;
        prev = cur;
        cur = next;
    }
    Ok((cur, scale))
}

/// P_n(x) from the hypergeometric closed forms (one of four branches chosen
/// by the parities of N and n).
pub fn eval_hypergeometric(n: u32, x: f64, p: &DualHahnParams) -> Result<f64, DualHahnError> {
    p.check_index(n)?;
    let (xi, zeta, nn) = (p.xi, p.zeta, p.n_max as f64);
    let t = n / 2;
    let tf = t as f64;
    let scale = 16f64.powi(t as i32);
    let value = if p.n_max % 2 == 0 {
        let delta = -0.5 * (xi + zeta + nn);
        let (a2, a3) = (delta + 0.25 * (1.0 + x), delta - 0.25 * (1.0 + x));
        let b2 = 0.5 - 0.5 * nn - zeta;
        if n % 2 == 0 {
            let b1 = -0.5 * nn;
            scale
                * pochhammer_log(b1, t).to_f64()
                * pochhammer_log(b2, t).to_f64()
                * hyp3f2_terminating(t, a2, a3, b1, b2)?
        } else {
            let b1 = 1.0 - 0.5 * nn;
            (x + 2.0 * xi + 2.0 * zeta + 1.0)
                * scale
                * pochhammer_log(b1, t).to_f64()
                * pochhammer_log(b2, t).to_f64()
                * hyp3f2_terminating(t, a2, a3, b1, b2)?
        }
    } else {
        let eta = 0.5 * (xi + zeta + 1.0);
        let (a2, a3) = (eta + 0.25 * (1.0 + x), eta - 0.25 * (1.0 + x));
        let b1 = 0.5 * (1.0 - nn);
        if n % 2 == 0 {
            let b2 = xi + 0.5;
            scale
                * pochhammer_log(b1, t).to_f64()
                * pochhammer_log(b2, t).to_f64()
                * hyp3f2_terminating(t, a2, a3, b1, b2)?
        } else {
            let b2 = xi + 1.5;
            (x + 2.0 * xi - 2.0 * zeta + 1.0)
                * scale
                * pochhammer_log(b1, t).to_f64()
                * pochhammer_log(b2, t).to_f64()
                * hyp3f2_terminating(t, a2, a3, b1, b2)?
        }
    };
    debug_assert!(tf >= 0.0);
    Ok(value)
}

/// Grid point x_s: (−1)^s (2s − 2ξ − 2ζ − 2N − 1) for N even,
/// (−1)^s (2s + 2ξ + 2ζ + 1) for N odd.
pub fn grid_point(s: u32, p: &DualHahnParams) -> Result<f64, DualHahnError> {
    p.check_index(s)?;
    let sign = if s % 2 == 0 { 1.0 } else { -1.0 };
    let sf = s as f64;
    let v = if p.n_max % 2 == 0 {
        2.0 * sf - 2.0 * p.xi - 2.0 * p.zeta - 2.0 * p.n_max as f64 - 1.0
    } else {
        2.0 * sf + 2.0 * p.xi + 2.0 * p.zeta + 1.0
    };
    Ok(sign * v)
}

/// Weight w_s in sign/log-magnitude form, s = 2m + j with j = s mod 2.
pub fn weight_log(s: u32, p: &DualHahnParams) -> Result<PolyEval, DualHahnError> {
    p.check_index(s)?;
    let m = s / 2;
    let j = s % 2;
    let (xi, zeta, nn) = (p.xi, p.zeta, p.n_max as f64);
    let msign = if m % 2 == 0 { 1.0 } else { -1.0 };
    let inv_mfact = PolyEval::from_ln(1.0, -ln_factorial(m));
    let w = if p.n_max % 2 == 0 {
        pochhammer_log(-0.5 * nn, m + j)
            .mul(inv_mfact)
            .mul(pochhammer_log(0.5 * (1.0 - nn) - zeta, m))
            .div(pochhammer_log(0.5 * (1.0 - nn) - xi, m))
            .mul(pochhammer_log(-nn - xi - zeta, m))
            .div(pochhammer_log(-0.5 * nn - xi - zeta, m + j))
    } else {
        pochhammer_log(0.5 * (1.0 - nn), m)
            .mul(inv_mfact)
            .mul(pochhammer_log(xi + 0.5, m + j))
            .div(pochhammer_log(zeta + 0.5, m + j))
            .mul(pochhammer_log(1.0 + xi + zeta, m))
            .div(pochhammer_log(0.5 * (nn + 2.0 * xi + 2.0 * zeta + 3.0), m))
    };
    Ok(w.mul(PolyEval::from_value(msign)))
}

/// Weight w_s as an `f64`.
pub fn weight(s: u32, p: &DualHahnParams) -> Result<f64, DualHahnError> {
    Ok(weight_log(s, p)?.to_f64())
}

/// Normalization ν_n in sign/log-magnitude form, n = 2m + j.
pub fn norm_log(n: u32, p: &DualHahnParams) -> Result<PolyEval, DualHahnError> {
    p.check_index(n)?;
    let m = n / 2;
    let j = n % 2;
    let (xi, zeta, nn) = (p.xi, p.zeta, p.n_max as f64);
    let jsign = if j == 0 { 1.0 } else { -1.0 };
    let two_pow = PolyEval::from_ln(1.0, 4.0 * n as f64 * std::f64::consts::LN_2);
    let mfact = PolyEval::from_ln(1.0, ln_factorial(m));
    let v = if p.n_max % 2 == 0 {
        two_pow
            .mul(mfact)
            .mul(pochhammer_log(xi + 0.5, m + j))
            .mul(pochhammer_log(0.5 * (1.0 - nn) - zeta, m))
            .mul(pochhammer_log(-0.5 * nn, m + j))
            .mul(pochhammer_log(-nn - xi - zeta, p.n_max / 2))
            .div(pochhammer_log(0.5 * (1.0 - nn) - xi, p.n_max / 2))
    } else {
        two_pow
            .mul(mfact)
            .mul(pochhammer_log(xi + 0.5, m + j))
            .mul(pochhammer_log(0.5 * (1.0 - nn), m))
            .mul(pochhammer_log(-zeta - 0.5 * nn, m + j))
            .mul(pochhammer_log(xi + zeta + 1.0, (p.n_max + 1) / 2))
            .div(pochhammer_log(zeta + 0.5, (p.n_max + 1) / 2))
    };
    Ok(v.mul(PolyEval::from_value(jsign)))
}

/// Normalization ν_n as an `f64`.
pub fn norm(n: u32, p: &DualHahnParams) -> Result<f64, DualHahnError> {
    Ok(norm_log(n, p)?.to_f64())
}

/// Grid, weights and normalizations of the finite orthogonality relation.
#[derive(Clone, Debug)]
pub struct OrthogonalityData {
    pub grid: Vec<f64>,
    pub weights: Vec<f64>,
    pub norms: Vec<f64>,
}

impl OrthogonalityData {
    pub fn new(p: &DualHahnParams) -> Result<Self, DualHahnError> {
        let n = p.n_max;
        let grid = (0..=n).map(|s| grid_point(s, p)).collect::<Result<Vec<_>, _>>()?;
        let weights = (0..=n).map(|s| weight(s, p)).collect::<Result<Vec<_>, _>>()?;
        let norms = (0..=n).map(|m| norm(m, p)).collect::<Result<Vec<_>, _>>()?;
        Ok(OrthogonalityData { grid, weights, norms })
    }
}

/// Normalized orthogonality defect:
/// max over n, m of |Σ_s w_s P_n(x_s) P_m(x_s) / √(ν_n ν_m) − δ_{nm}|.
///
/// The √(ν_n ν_m) scaling makes every entry an O(1) quantity; without it the
/// off-diagonal sums cancel through magnitudes ~√(ν_n ν_m) and no `f64`
/// evaluation could certify a small absolute defect at large N.
pub fn orthogonality_defect(p: &DualHahnParams) -> f64 {
    let n = p.n_max as usize;
    let grid: Vec<f64> = (0..=n).map(|s| grid_point(s as u32, p).unwrap()).collect();
    let wlog: Vec<PolyEval> = (0..=n).map(|s| weight_log(s as u32, p).unwrap()).collect();
    let vlog: Vec<PolyEval> = (0..=n).map(|m| norm_log(m as u32, p).unwrap()).collect();

    // values[k][s] = P_k(x_s), built column-by-column with the recurrence.
    let mut values = vec![vec![0.0; n + 1]; n + 1];
    for (s, &x) in grid.iter().enumerate() {
        let mut prev = 0.0;
        let mut cur = 1.0;
        for k in 0..=n {
            values[k][s] = cur;
            let (b, u) = recurrence_coefficients(k as u32, p).unwrap();
            let next = (x - b) * cur - u * prev;
            prev = cur;
            cur = next;
        }
    }

    let mut worst = 0.0f64;
    for a in 0..=n {
        for b in 0..=n {
            let ln_scale = 0.5 * (vlog[a].ln_abs() + vlog[b].ln_abs());
            let mut sum = 0.0;
            for s in 0..=n {
                let pa = values[a][s];
                let pb = values[b][s];
                if pa == 0.0 || pb == 0.0 || wlog[s].is_zero() {
                    continue;
                }
                let ln_term = wlog[s].ln_abs() + pa.abs().ln() + pb.abs().ln() - ln_scale;
                sum += wlog[s].signum() * pa.signum() * pb.signum() * ln_term.exp();
            }
            let target = if a == b { 1.0 } else { 0.0 };
            worst = worst.max((sum - target).abs());
        }
    }
    worst
}
