//! Classical building-block polynomials: Pochhammer symbols, terminating
//! hypergeometric series, Laguerre and Jacobi polynomials with their
//! derivative identities, and the generalized Hermite family.
//!
//! All evaluators are pure functions of their arguments. Polynomials are
//! evaluated by forward three-term recurrence in the degree, which is stable
//! on the orthogonality domains used here. Gamma-function ratios in
//! normalizations go through `ln`-gamma differences so that degrees up to a
//! few hundred stay inside `f64` range.

use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum OrthopolyError {
    /// A lower parameter of a terminating hypergeometric series hits a
    /// nonpositive integer inside the sum.
    #[error("pole in denominator: ({param})_{k} vanishes inside the truncated series")]
    PoleInDenominator { param: f64, k: u32 },
    /// Evaluation at a point where the requested identity is singular.
    #[error("singular point: {0}")]
    SingularPoint(&'static str),
}

/// A scaled evaluation result: the represented number is
/// `value * exp(log_scale)`. Exact zero is stored as `(0.0, 0.0)`.
///
/// Used wherever Pochhammer-symbol products would overflow `f64` long before
/// the final ratio does.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PolyEval {
    pub value: f64,
    pub log_scale: f64,
}

impl PolyEval {
    pub const ONE: PolyEval = PolyEval { value: 1.0, log_scale: 0.0 };
    pub const ZERO: PolyEval = PolyEval { value: 0.0, log_scale: 0.0 };

    pub fn from_value(v: f64) -> PolyEval {
        PolyEval { value: v, log_scale: 0.0 }.normalized()
    }

    /// `sign * exp(ln_magnitude)`.
    pub fn from_ln(sign: f64, ln_magnitude: f64) -> PolyEval {
        if sign == 0.0 {
            PolyEval::ZERO
        } else {
            PolyEval { value: sign.signum(), log_scale: ln_magnitude }
        }
    }

    pub fn is_zero(self) -> bool {
        self.value == 0.0
    }

    /// Keep the mantissa within a range where repeated multiplication cannot
    /// overflow or lose the exponent.
    fn normalized(mut self) -> PolyEval {
        if self.value == 0.0 {
            return PolyEval::ZERO;
        }
        let mag = self.value.abs();
        if !(1e-8..=1e8).contains(&mag) {
            self.log_scale += mag.ln();
            self.value = self.value.signum();
        }
        self
    }

    pub fn mul(self, rhs: PolyEval) -> PolyEval {
        if self.is_zero() || rhs.is_zero() {
            return PolyEval::ZERO;
        }
        PolyEval {
            value: self.value * rhs.value,
            log_scale: self.log_scale + rhs.log_scale,
        }
        .normalized()
    }

    pub fn div(self, rhs: PolyEval) -> PolyEval {
        assert!(!rhs.is_zero(), "PolyEval division by zero");
        if self.is_zero() {
            return PolyEval::ZERO;
        }
        PolyEval {
            value: self.value / rhs.value,
            log_scale: self.log_scale - rhs.log_scale,
        }
        .normalized()
    }

    /// Square root of a nonnegative quantity.
    pub fn sqrt(self) -> PolyEval {
        assert!(self.value >= 0.0, "PolyEval::sqrt of a negative quantity");
        if self.is_zero() {
            return PolyEval::ZERO;
        }
        PolyEval {
            value: self.value.sqrt(),
            log_scale: 0.5 * self.log_scale,
        }
        .normalized()
    }

    pub fn signum(self) -> f64 {
        self.value.signum() * f64::from(!self.is_zero() as u8)
    }

    pub fn ln_abs(self) -> f64 {
        self.value.abs().ln() + self.log_scale
    }

    /// Collapse to an ordinary `f64`; may overflow to infinity if the
    /// represented magnitude exceeds `f64` range.
    pub fn to_f64(self) -> f64 {
        self.value * self.log_scale.exp()
    }
}

/// Pochhammer symbol (c)_k = c (c+1) ··· (c+k−1), with (c)_0 = 1.
pub fn pochhammer(c: f64, k: u32) -> f64 {
    let mut p = 1.0;
    for i in 0..k {
        p *= c + i as f64;
    }
    p
}

/// Pochhammer symbol in sign/log-magnitude form.
pub fn pochhammer_log(c: f64, k: u32) -> PolyEval {
    let mut sign = 1.0;
    let mut ln = 0.0;
    for i in 0..k {
        let f = c + i as f64;
        if f == 0.0 {
            return PolyEval::ZERO;
        }
        sign *= f.signum();
        ln += f.abs().ln();
    }
    PolyEval::from_ln(sign, ln)
}

/// ln Γ(x) for x > 0.
pub fn ln_gamma(x: f64) -> f64 {
    debug_assert!(x > 0.0, "ln_gamma needs a positive argument, got {x}");
    libm::lgamma(x)
}

/// ln n!
pub fn ln_factorial(n: u32) -> f64 {
    ln_gamma(n as f64 + 1.0)
}

/// Terminating series ₃F₂(−n, a₂, a₃; b₁, b₂; 1) summed over k = 0..=n.
///
/// Fails if (b₁)_k or (b₂)_k vanishes for some k ≤ n, i.e. a pole sits inside
/// the truncated sum.
pub fn hyp3f2_terminating(
    n: u32,
    a2: f64,
    a3: f64,
    b1: f64,
    b2: f64,
) -> Result<f64, OrthopolyError> {
    let mut sum = 1.0;
    let mut term = 1.0;
    for k in 0..n {
        let kf = k as f64;
        let d1 = b1 + kf;
        let d2 = b2 + kf;
        if d1 == 0.0 {
            return Err(OrthopolyError::PoleInDenominator { param: b1, k: k + 1 });
        }
        if d2 == 0.0 {
            return Err(OrthopolyError::PoleInDenominator { param: b2, k: k + 1 });
        }
        term *= (kf - n as f64) * (a2 + kf) * (a3 + kf) / (d1 * d2 * (kf + 1.0));
        sum += term;
    }
    Ok(sum)
}

/// Generalized Laguerre polynomial L_n^{(α)}(x) by forward recurrence.
pub fn laguerre(n: u32, alpha: f64, x: f64) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let mut prev = 1.0;
    let mut cur = 1.0 + alpha - x;
    for k in 1..n {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0 + alpha - x) * cur - (kf + alpha) * prev) / (kf + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// d/dx L_n^{(α)}(x) = −L_{n−1}^{(α+1)}(x).
pub fn laguerre_derivative(n: u32, alpha: f64, x: f64) -> f64 {
    if n == 0 {
        0.0
    } else {
        -laguerre(n - 1, alpha + 1.0, x)
    }
}

/// Jacobi polynomial P_n^{(α,β)}(x) by forward recurrence.
pub fn jacobi(n: u32, alpha: f64, beta: f64, x: f64) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let mut prev = 1.0;
    let mut cur = 0.5 * (alpha - beta) + 0.5 * (alpha + beta + 2.0) * x;
    for k in 1..n {
        let kf = k as f64;
        let ab = alpha + beta;
        let c1 = 2.0 * (kf + 1.0) * (kf + ab + 1.0) * (2.0 * kf + ab);
        let c2 = (2.0 * kf + ab + 1.0) * (alpha * alpha - beta * beta);
        let c3 = (2.0 * kf + ab) * (2.0 * kf + ab + 1.0) * (2.0 * kf + ab + 2.0);
        let c4 = 2.0 * (kf + alpha) * (kf + beta) * (2.0 * kf + ab + 2.0);
        let next = ((c2 + c3 * x) * cur - c4 * prev) / c1;
        prev = cur;
        cur = next;
    }
    cur
}

/// d/dx P_n^{(α,β)}(x) = ((n+α+β+1)/2) P_{n−1}^{(α+1,β+1)}(x).
pub fn jacobi_derivative(n: u32, alpha: f64, beta: f64, x: f64) -> f64 {
    if n == 0 {
        0.0
    } else {
        0.5 * (n as f64 + alpha + beta + 1.0) * jacobi(n - 1, alpha + 1.0, beta + 1.0, x)
    }
}

/// The mixed contiguity form of the Jacobi derivative,
/// ((α+n)/(x−1)) P_n^{(α−1,β+1)}(x) − (α/(x−1)) P_n^{(α,β)}(x).
///
/// Agrees with [`jacobi_derivative`] away from x = 1.
pub fn jacobi_mixed_derivative(
    n: u32,
    alpha: f64,
    beta: f64,
    x: f64,
) -> Result<f64, OrthopolyError> {
    if x == 1.0 {
        return Err(OrthopolyError::SingularPoint("jacobi_mixed_derivative at x = 1"));
    }
    let d = x - 1.0;
    Ok((alpha + n as f64) / d * jacobi(n, alpha - 1.0, beta + 1.0, x)
        - alpha / d * jacobi(n, alpha, beta, x))
}

/// Generalized Hermite polynomial H_m^k(x): two interleaved Laguerre
/// sequences, m = 2n + p with p ∈ {0, 1},
/// H_{2n+p}^k(x) = (−1)^n √(n!/Γ(n+p+k+1/2)) x^p L_n^{(k−1/2+p)}(x²).
///
/// Requires k > −1/2 so the Γ in the normalization stays positive.
pub fn gen_hermite(m: u32, k: f64, x: f64) -> f64 {
    assert!(k > -0.5, "gen_hermite needs k > -1/2, got {k}");
    let n = m / 2;
    let p = m % 2;
    let nf = n as f64;
    let pf = p as f64;
    let nrm = (0.5 * (ln_factorial(n) - ln_gamma(nf + pf + k + 0.5))).exp();
    let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
    let xp = if p == 0 { 1.0 } else { x };
    sign * nrm * xp * laguerre(n, k - 0.5 + pf, x * x)
}

/// The mu-number [n]_μ = n + μ(1 − (−1)^n): n for even n, n + 2μ for odd n.
pub fn mu_number(n: u32, mu: f64) -> f64 {
    if n % 2 == 0 {
        n as f64
    } else {
        n as f64 + 2.0 * mu
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    /// Explicit-sum Laguerre via Pochhammer ratios, the independent oracle
    /// for the recurrence: L_n^{(α)}(x) = ((α+1)_n/n!) Σ_k (−n)_k x^k / ((α+1)_k k!).
    fn laguerre_sum(n: u32, alpha: f64, x: f64) -> f64 {
        let mut sum = 0.0;
        for k in 0..=n {
            sum += pochhammer(-(n as f64), k) / (pochhammer(alpha + 1.0, k) * pochhammer(1.0, k))
                * x.powi(k as i32);
        }
        pochhammer(alpha + 1.0, n) / pochhammer(1.0, n) * sum
    }

    /// Explicit-sum Jacobi via its ₂F₁ form, expanded around the nearer
    /// endpoint so the alternating sum stays well conditioned.
    fn jacobi_sum(n: u32, alpha: f64, beta: f64, x: f64) -> f64 {
        if x < 0.0 {
            let refl = jacobi_sum(n, beta, alpha, -x);
            return if n % 2 == 0 { refl } else { -refl };
        }
        let mut sum = 0.0;
        for k in 0..=n {
            sum += pochhammer(-(n as f64), k) * pochhammer(n as f64 + alpha + beta + 1.0, k)
                / (pochhammer(alpha + 1.0, k) * pochhammer(1.0, k))
                * (0.5 * (1.0 - x)).powi(k as i32);
        }
        pochhammer(alpha + 1.0, n) / pochhammer(1.0, n) * sum
    }

    fn central_diff(f: impl Fn(f64) -> f64, x: f64, h: f64) -> f64 {
        (f(x + h) - f(x - h)) / (2.0 * h)
    }

    #[test]
    fn pochhammer_values() {
        assert_eq!(pochhammer(123.4, 0), 1.0);
        assert_eq!(pochhammer(-2.0, 3), 0.0);
        assert_relative_eq!(pochhammer(0.5, 3), 1.875, max_relative = 1e-15);
    }

    #[test]
    fn pochhammer_log_matches_direct() {
        for &(c, k) in &[(0.5, 7), (-3.5, 9), (2.0, 12), (-6.0, 4)] {
            let direct = pochhammer(c, k);
            let lg = pochhammer_log(c, k);
            assert_relative_eq!(lg.to_f64(), direct, max_relative = 1e-13);
        }
        assert!(pochhammer_log(-4.0, 6).is_zero());
    }

    #[test]
    fn hyp3f2_small_cases() {
        assert_eq!(hyp3f2_terminating(0, 1.0, 2.0, 3.0, 4.0).unwrap(), 1.0);
        assert_relative_eq!(
            hyp3f2_terminating(1, 1.0, 1.0, 2.0, 2.0).unwrap(),
            0.75,
            max_relative = 1e-15
        );
        // Pairwise-cancelling parameters reduce to Σ (−2)_k / k! = 1 − 2 + 1.
        assert_relative_eq!(
            hyp3f2_terminating(2, 5.0, 7.0, 5.0, 7.0).unwrap(),
            0.0,
            epsilon = 1e-14
        );
    }

    #[test]
    fn hyp3f2_pole_detection() {
        let err = hyp3f2_terminating(3, 1.0, 1.0, -1.0, 2.0).unwrap_err();
        assert!(matches!(err, OrthopolyError::PoleInDenominator { .. }));
        // Pole at or beyond the truncation index is not reached.
        assert!(hyp3f2_terminating(2, 1.0, 1.0, -2.0, 3.0).is_ok());
    }

    #[test]
    fn laguerre_values() {
        assert_eq!(laguerre(0, 1.3, 4.2), 1.0);
        assert_relative_eq!(laguerre(1, 0.5, 2.0), -0.5, max_relative = 1e-15);
        // L_n^{(α)}(0) = (α+1)_n / n!
        for n in 0..=8u32 {
            for &alpha in &[0.0, 0.5, 2.5] {
                assert_relative_eq!(
                    laguerre(n, alpha, 0.0),
                    pochhammer(alpha + 1.0, n) / pochhammer(1.0, n),
                    max_relative = 1e-12
                );
            }
        }
    }

    #[test]
    fn laguerre_recurrence_matches_explicit_sum() {
        for n in 0..=10u32 {
            for &alpha in &[0.1, 0.5, 1.0, 2.5] {
                for &x in &[0.3, 1.7, 4.9] {
                    let a = laguerre(n, alpha, x);
                    let b = laguerre_sum(n, alpha, x);
                    assert_relative_eq!(a, b, max_relative = 1e-10, epsilon = 1e-10);
                }
            }
        }
    }

    #[test]
    fn laguerre_derivative_identity() {
        assert_eq!(laguerre_derivative(0, 0.5, 2.0), 0.0);
        assert_relative_eq!(laguerre_derivative(1, 0.5, 2.0), -1.0, max_relative = 1e-15);
        for n in 1..=6u32 {
            for &alpha in &[0.1, 1.0, 2.5] {
                for &x in &[0.4, 1.1, 3.3] {
                    let fd = central_diff(|t| laguerre(n, alpha, t), x, 1e-5);
                    let an = laguerre_derivative(n, alpha, x);
                    assert_relative_eq!(an, fd, max_relative = 1e-6, epsilon = 1e-6);
                }
            }
        }
    }

    #[test]
    fn jacobi_values() {
        assert_eq!(jacobi(0, 0.7, 0.9, 0.2), 1.0);
        assert_relative_eq!(jacobi(1, 0.0, 0.0, 0.37), 0.37, max_relative = 1e-15);
        // Endpoint identity P_n^{(α,β)}(1) = (α+1)_n / n!
        for n in 0..=8u32 {
            for &(alpha, beta) in &[(0.5, 0.5), (1.5, 0.1), (0.0, 2.0)] {
                assert_relative_eq!(
                    jacobi(n, alpha, beta, 1.0),
                    pochhammer(alpha + 1.0, n) / pochhammer(1.0, n),
                    max_relative = 1e-12
                );
            }
        }
    }

    #[test]
    fn jacobi_recurrence_matches_explicit_sum() {
        for n in 0..=10u32 {
            for &(alpha, beta) in &[(0.1, 0.5), (1.0, 2.5), (2.5, 0.1)] {
                for &x in &[-0.8, -0.2, 0.4, 0.9] {
                    assert_relative_eq!(
                        jacobi(n, alpha, beta, x),
                        jacobi_sum(n, alpha, beta, x),
                        max_relative = 1e-10,
                        epsilon = 1e-10
                    );
                }
            }
        }
    }

    #[test]
    fn jacobi_derivative_identity() {
        assert_eq!(jacobi_derivative(0, 1.0, 2.0, 0.3), 0.0);
        assert_relative_eq!(jacobi_derivative(1, 0.0, 0.0, 0.3), 1.0, max_relative = 1e-15);
        for n in 1..=6u32 {
            for &(alpha, beta) in &[(0.1, 1.0), (2.5, 0.5)] {
                for &x in &[-0.7, 0.0, 0.6] {
                    let fd = central_diff(|t| jacobi(n, alpha, beta, t), x, 1e-5);
                    let an = jacobi_derivative(n, alpha, beta, x);
                    assert_relative_eq!(an, fd, max_relative = 1e-6, epsilon = 1e-6);
                }
            }
        }
    }

    #[test]
    fn mixed_derivative_matches_derivative() {
        assert_eq!(jacobi_mixed_derivative(0, 1.5, 0.5, 0.3).unwrap(), 0.0);
        assert_relative_eq!(
            jacobi_mixed_derivative(1, 1.0, 0.0, 0.0).unwrap(),
            jacobi_derivative(1, 1.0, 0.0, 0.0),
            max_relative = 1e-14
        );
        assert!(matches!(
            jacobi_mixed_derivative(2, 1.0, 1.0, 1.0),
            Err(OrthopolyError::SingularPoint(_))
        ));
        // The spec grid: n ≤ 12, α, β in {0.1, 0.5, 1.0, 2.5}, 20 points.
        for n in 0..=12u32 {
            for &alpha in &[0.1, 0.5, 1.0, 2.5] {
                for &beta in &[0.1, 0.5, 1.0, 2.5] {
                    for i in 0..20 {
                        let x = -0.95 + 1.9 * i as f64 / 19.0;
                        let a = jacobi_mixed_derivative(n, alpha, beta, x).unwrap();
                        let b = jacobi_derivative(n, alpha, beta, x);
                        assert_relative_eq!(a, b, max_relative = 1e-11, epsilon = 1e-11);
                    }
                }
            }
        }
    }

    #[test]
    fn gen_hermite_values() {
        // H_0^1 = √(1/Γ(3/2)) with Γ(3/2) = √π/2.
        let expected = (2.0 / std::f64::consts::PI.sqrt()).sqrt();
        assert_relative_eq!(gen_hermite(0, 1.0, 0.77), expected, max_relative = 1e-14);
        assert_eq!(gen_hermite(1, 0.3, 0.0), 0.0);
        // L_1^{(0)}(1) = 0, so H_2^{1/2}(1) vanishes.
        assert_relative_eq!(gen_hermite(2, 0.5, 1.0), 0.0, epsilon = 1e-14);
    }

    #[test]
    fn mu_number_values() {
        assert_eq!(mu_number(0, 3.7), 0.0);
        assert_eq!(mu_number(2, 7.0), 2.0);
        assert_eq!(mu_number(3, 0.5), 4.0);
    }

    proptest! {
        #[test]
        fn gen_hermite_parity(m in 0u32..12, k in -0.4f64..4.0, x in -5.0f64..5.0) {
            let lhs = gen_hermite(m, k, -x);
            let rhs = if m % 2 == 0 { gen_hermite(m, k, x) } else { -gen_hermite(m, k, x) };
            let scale = lhs.abs().max(rhs.abs()).max(1.0);
            prop_assert!((lhs - rhs).abs() <= 1e-13 * scale);
        }

        #[test]
        fn mu_number_nonnegative(n in 0u32..64, mu in -0.49f64..10.0) {
            prop_assert!(mu_number(n, mu) >= 0.0);
            prop_assert_eq!(mu_number(0, mu), 0.0);
        }

        #[test]
        fn poly_eval_roundtrip(v in -1e6f64..1e6) {
            let pe = PolyEval::from_value(v);
            prop_assert!((pe.to_f64() - v).abs() <= 1e-12 * v.abs().max(1.0));
        }
    }
}
