//! Closed-form eigenfunctions of the two-dimensional spinorial singular
//! oscillator: Cartesian products of one-dimensional solutions, polar
//! separated solutions, and the eigenvector combinations that diagonalize
//! the total Casimir at fixed energy.
//!
//! Spinor slotting is table-driven: component index = 2·b₁ + b₂ where bᵢ is
//! 0 for (even wavefunction / spin up) and 1 for (odd / spin down). Both the
//! Cartesian parity rule and the polar (s₁, s₂) rule go through
//! [`spinor_slot`], so the two bases can never disagree about slots.
//!
//! All two-dimensional inner products live on the open first quadrant with
//! measure dρ₁dρ₂. One-dimensional solutions are unit-norm on the full line,
//! so Cartesian products carry an extra factor 2 on the quadrant to match
//! the polar family's normalization.

use crate::orthopoly::{
    jacobi, jacobi_derivative, laguerre, laguerre_derivative, ln_factorial, ln_gamma,
};
use crate::Sign;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum SpinorError {
    #[error("invalid quantum numbers: {0}")]
    InvalidQuantumNumbers(String),
    #[error("domain error: {0}")]
    DomainError(String),
}

/// Component index of the 4-spinor: bit 1 from the first factor, bit 0 from
/// the second, with 0 ↔ (even, spin up) and 1 ↔ (odd, spin down).
pub fn spinor_slot(b1: u32, b2: u32) -> usize {
    debug_assert!(b1 <= 1 && b2 <= 1);
    (2 * b1 + b2) as usize
}

fn sign_bit(s: Sign) -> u32 {
    match s {
        Sign::Plus => 0,
        Sign::Minus => 1,
    }
}

/// One-dimensional eigenfunction ψ_{m,k}(ρ) = e^{−ρ²/2} ρ^k H_m^k(ρ), i.e.
/// (−1)^{⌊m/2⌋} √(n!/Γ(n+k+p+1/2)) e^{−ρ²/2} ρ^{k+p} L_n^{(k+p−1/2)}(ρ²)
/// with m = 2n + p, unit-normalized on the real line.
///
/// The (−1)^{⌊m/2⌋} is the phase under which the ladder operators act with
/// positive amplitudes, A₊ψ_{m,k} = √([m+1]_k) ψ_{m+1,k}; cancelling it
/// against the generalized-Hermite internal sign flips every second ladder
/// matrix element to −√([m+1]_k).
pub fn psi_1d(m: u32, k: u32, rho: f64) -> f64 {
    let n = m / 2;
    let p = m % 2;
    let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
    let a = (k + p) as f64;
    let nrm = (0.5 * (ln_factorial(n) - ln_gamma(n as f64 + a + 0.5))).exp();
    sign * nrm
        * (-0.5 * rho * rho).exp()
        * rho.powi((k + p) as i32)
        * laguerre(n, a - 0.5, rho * rho)
}

/// dψ_{m,k}/dρ in closed form.
pub fn psi_1d_derivative(m: u32, k: u32, rho: f64) -> f64 {
    let n = m / 2;
    let p = m % 2;
    let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
    let a = k + p;
    let af = a as f64;
    let alpha = af - 0.5;
    let nrm = (0.5 * (ln_factorial(n) - ln_gamma(n as f64 + af + 0.5))).exp();
    let gauss = (-0.5 * rho * rho).exp();
    let power_term = if a > 0 { af * rho.powi(a as i32 - 1) } else { 0.0 };
    sign * nrm
        * gauss
        * ((power_term - rho.powi(a as i32 + 1)) * laguerre(n, alpha, rho * rho)
            + 2.0 * rho.powi(a as i32 + 1) * laguerre_derivative(n, alpha, rho * rho))
}

/// A Cartesian product eigenstate |m₁, m₂, k₁, k₂⟩.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CartesianState {
    pub m1: u32,
    pub m2: u32,
    pub k1: u32,
    pub k2: u32,
}

impl CartesianState {
    pub fn new(m1: u32, m2: u32, k1: u32, k2: u32) -> Self {
        CartesianState { m1, m2, k1, k2 }
    }

    /// The single nonzero spinor component, fixed by the parities of m₁, m₂.
    pub fn slot(&self) -> usize {
        spinor_slot(self.m1 % 2, self.m2 % 2)
    }

    /// E = m₁ + m₂ + k₁ + k₂ + 1.
    pub fn energy(&self) -> f64 {
        (self.m1 + self.m2 + self.k1 + self.k2 + 1) as f64
    }

    pub fn level(&self) -> u32 {
        self.m1 + self.m2
    }

    /// Representation sign ε₁ = (−1)^{k₁}, forced by the realization.
    pub fn eps1(&self) -> Sign {
        Sign::from_parity(self.k1)
    }

    pub fn eps2(&self) -> Sign {
        Sign::from_parity(self.k2)
    }
}

/// A polar separated eigenstate |ℓ, N′, s₁, s₂, k₁, k₂⟩. ℓ is stored doubled
/// so that half-integers stay exact; it is an integer iff s₁s₂ = +1.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PolarState {
    twice_ell: u32,
    pub n_r: u32,
    pub s1: Sign,
    pub s2: Sign,
    pub k1: u32,
    pub k2: u32,
}

impl PolarState {
    pub fn new(
        twice_ell: u32,
        n_r: u32,
        s1: Sign,
        s2: Sign,
        k1: u32,
        k2: u32,
    ) -> Result<Self, SpinorError> {
        let integer_ell = twice_ell % 2 == 0;
        if integer_ell != (s1 == s2) {
            return Err(SpinorError::InvalidQuantumNumbers(format!(
                "2l = {twice_ell} contradicts (s1, s2) = ({s1}, {s2}): l is an integer iff s1*s2 = +1"
            )));
        }
        Ok(PolarState { twice_ell, n_r, s1, s2, k1, k2 })
    }

    pub fn ell(&self) -> f64 {
        self.twice_ell as f64 / 2.0
    }

    pub fn twice_ell(&self) -> u32 {
        self.twice_ell
    }

    pub fn slot(&self) -> usize {
        spinor_slot(sign_bit(self.s1), sign_bit(self.s2))
    }

    /// |m| = 2ℓ + k₁ + k₂.
    pub fn abs_m(&self) -> f64 {
        (self.twice_ell + self.k1 + self.k2) as f64
    }

    /// E = 2(N′ + ℓ) + k₁ + k₂ + 1.
    pub fn energy(&self) -> f64 {
        (2 * self.n_r + self.twice_ell + self.k1 + self.k2 + 1) as f64
    }

    pub fn level(&self) -> u32 {
        2 * self.n_r + self.twice_ell
    }

    /// Degree of the Jacobi factor, ℓ − (2 − s₁ − s₂)/4; −1 flags the
    /// identically vanishing (ℓ = 0, −, −) member.
    pub fn jacobi_degree(&self) -> i64 {
        let offset = ((2.0 - self.s1.value() - self.s2.value()) / 2.0) as i64;
        (self.twice_ell as i64 - offset) / 2
    }

    /// ln of the positive normalization constant of Φ.
    fn angular_norm_ln(&self) -> f64 {
        let (ell, k1, k2) = (self.ell(), self.k1 as f64, self.k2 as f64);
        let (s1, s2) = (self.s1.value(), self.s2.value());
        let cap_k = k1 + k2;
        // 2(2ℓ+k₁+k₂)·Γ(ℓ+k₁+k₂+(2−s₁−s₂)/4) degenerates to 0·Γ(0) only for
        // (ℓ = 0, +, +, k₁ = k₂ = 0); the pair is then the limit 2Γ(K+1).
        let q = 0.25 * (2.0 - s1 - s2);
        let front_ln = if q == 0.0 && self.twice_ell == 0 {
            std::f64::consts::LN_2 + ln_gamma(cap_k + 1.0)
        } else {
            (2.0 * (2.0 * ell + cap_k)).ln() + ln_gamma(ell + cap_k + q)
        };
        let a1 = ell + k1 + 0.25 * (2.0 - s1 + s2);
        let a2 = ell + k2 + 0.25 * (2.0 + s1 - s2);
        let d = self.jacobi_degree();
        debug_assert!(d >= 0);
        0.5 * (front_ln + ln_factorial(d as u32) - ln_gamma(a1) - ln_gamma(a2))
    }
}

/// Orthonormalized angular factor Φ_{ℓ,s₁,s₂}^{k₁,k₂}(φ) on (0, π/2).
///
/// The (ℓ = 0, −, −) member vanishes identically (its Jacobi degree would be
/// −1) and evaluates to 0.
pub fn phi_angular(st: &PolarState, phi: f64) -> f64 {
    let d = st.jacobi_degree();
    if d < 0 {
        return 0.0;
    }
    let nrm = st.angular_norm_ln().exp();
    let cos_exp = st.k1 + sign_bit(st.s1);
    let sin_exp = st.k2 + sign_bit(st.s2);
    let alpha = st.k1 as f64 - 0.5 * st.s1.value();
    let beta = st.k2 as f64 - 0.5 * st.s2.value();
    nrm * phi.cos().powi(cos_exp as i32)
        * phi.sin().powi(sin_exp as i32)
        * jacobi(d as u32, alpha, beta, -(2.0 * phi).cos())
}

/// dΦ/dφ in closed form through the Jacobi derivative identity.
pub fn phi_angular_derivative(st: &PolarState, phi: f64) -> f64 {
    let d = st.jacobi_degree();
    if d < 0 {
        return 0.0;
    }
    let nrm = st.angular_norm_ln().exp();
    let cos_exp = (st.k1 + sign_bit(st.s1)) as f64;
    let sin_exp = (st.k2 + sign_bit(st.s2)) as f64;
    let (c, s) = (phi.cos(), phi.sin());
    let alpha = st.k1 as f64 - 0.5 * st.s1.value();
    let beta = st.k2 as f64 - 0.5 * st.s2.value();
    let x = -(2.0 * phi).cos();
    let pd = jacobi(d as u32, alpha, beta, x);
    let pd_prime = jacobi_derivative(d as u32, alpha, beta, x);
    let prefactor = nrm * c.powi(cos_exp as i32) * s.powi(sin_exp as i32);
    // dx/dφ = 2 sin 2φ = 4 sinφ cosφ.
    prefactor * ((-cos_exp * s / c + sin_exp * c / s) * pd + 4.0 * s * c * pd_prime)
}

/// Orthonormalized radial factor with ∫ R² r dr = 1:
/// R_{N′}(r) = √(2 N′!/Γ(N′+|m|+1)) r^{|m|} e^{−r²/2} L_{N′}^{(|m|)}(r²).
pub fn radial(n_r: u32, abs_m: f64, r: f64) -> f64 {
    let nrm = (0.5 * (2.0f64.ln() + ln_factorial(n_r) - ln_gamma(n_r as f64 + abs_m + 1.0))).exp();
    // |m| = 2l + k1 + k2 is integral for every state of the model.
    let power = if abs_m.fract() == 0.0 && abs_m.abs() < 1e6 {
        r.powi(abs_m as i32)
    } else {
        r.powf(abs_m)
    };
    nrm * power * (-0.5 * r * r).exp() * laguerre(n_r, abs_m, r * r)
}

/// An eigenvector of the total Casimir in the sector Σ₁₂Σ₃₄ = δ: an
/// orthonormal combination c₋|Φ; Σ₃₄ = −1⟩ + c₊|Φ; Σ₃₄ = +1⟩ of two polar
/// states sharing one radial factor.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QEigenvector {
    pub z: u32,
    pub delta: Sign,
    pub k1: u32,
    pub k2: u32,
    pub eps1: Sign,
    pub eps2: Sign,
    pub c_minus: f64,
    pub c_plus: f64,
    pub minus_state: PolarState,
    pub plus_state: PolarState,
}

/// The eigenvector |q_z⟩ in the sector Σ₁₂Σ₃₄ = δ, with its constituents at
/// radial quantum number N′ = 0 (use [`QEigenvector::at_level`] to place it
/// at a higher energy level).
///
/// ε₁, ε₂ are free parameters of the abstract eigenproblem here; the
/// spinorial realization itself forces ε_i = (−1)^{k_i}, which
/// wavefunction-level callers apply.
pub fn q_eigenvector(
    z: u32,
    k1: u32,
    k2: u32,
    eps1: Sign,
    eps2: Sign,
    delta: Sign,
) -> QEigenvector {
    let e12 = eps1 * eps2;
    // The ket with Q-eigenvalue sign s covers z = 2ℓ − (1 − s·ε₁₂)/2 in both
    // sectors, so z fixes (ℓ, s) given the sector parity of 2ℓ.
    let (twice_ell, s) = match (delta, z % 2 == 0) {
        (Sign::Plus, true) => (z, -e12),
        (Sign::Plus, false) => (z + 1, e12),
        (Sign::Minus, false) => (z, e12),
        (Sign::Minus, true) => (z + 1, -e12),
    };
    let ell = twice_ell as f64 / 2.0;
    let (k1f, k2f) = (k1 as f64, k2 as f64);
    let ll = twice_ell as f64 + k1f + k2f;
    let se = s.value() * e12.value();
    // Weight split: the full k₁+k₂ in the δ = +1 sector, the k's separately
    // in the δ = −1 sector.
    let (wm, wp) = match delta {
        Sign::Plus => (
            ell + 0.5 * (1.0 - se) * (k1f + k2f),
            ell + 0.5 * (1.0 + se) * (k1f + k2f),
        ),
        Sign::Minus => (
            ell + 0.5 * (1.0 - se) * k1f + 0.5 * (1.0 + se) * k2f,
            ell + 0.5 * (1.0 + se) * k1f + 0.5 * (1.0 - se) * k2f,
        ),
    };
    let (c_minus, c_plus) = if ll == 0.0 {
        // z = 0 with k₁ = k₂ = 0: the lone eigenstate.
        (1.0, 0.0)
    } else {
        ((wm / ll).sqrt(), -s.value() * eps1.value() * (wp / ll).sqrt())
    };
    let (minus_state, plus_state) = match delta {
        Sign::Plus => (
            PolarState::new(twice_ell, 0, Sign::Plus, Sign::Plus, k1, k2).unwrap(),
            PolarState::new(twice_ell, 0, Sign::Minus, Sign::Minus, k1, k2).unwrap(),
        ),
        Sign::Minus => (
            PolarState::new(twice_ell, 0, Sign::Minus, Sign::Plus, k1, k2).unwrap(),
            PolarState::new(twice_ell, 0, Sign::Plus, Sign::Minus, k1, k2).unwrap(),
        ),
    };
    QEigenvector {
        z,
        delta,
        k1,
        k2,
        eps1,
        eps2,
        c_minus,
        c_plus,
        minus_state,
        plus_state,
    }
}

impl QEigenvector {
    /// q_z = ε₁₂ (−1)^{z+1} (z + k₁ + k₂ + 1/2).
    pub fn eigenvalue(&self) -> f64 {
        let e12 = (self.eps1 * self.eps2).value();
        let flip = if self.z % 2 == 0 { -1.0 } else { 1.0 };
        e12 * flip * (self.z as f64 + self.k1 as f64 + self.k2 as f64 + 0.5)
    }

    pub fn twice_ell(&self) -> u32 {
        self.minus_state.twice_ell()
    }

    /// The same combination with its radial factor set for energy level
    /// `level` = m₁ + m₂, i.e. N′ = (level − 2ℓ)/2.
    pub fn at_level(&self, level: u32) -> Result<QEigenvector, SpinorError> {
        let twice_ell = self.twice_ell();
        if level % 2 != twice_ell % 2 {
            return Err(SpinorError::InvalidQuantumNumbers(format!(
                "level {level} has the wrong parity for the delta = {} sector",
                self.delta
            )));
        }
        if level < twice_ell {
            return Err(SpinorError::InvalidQuantumNumbers(format!(
                "level {level} is below 2l = {twice_ell}"
            )));
        }
        let n_r = (level - twice_ell) / 2;
        let mut shifted = *self;
        shifted.minus_state.n_r = n_r;
        shifted.plus_state.n_r = n_r;
        Ok(shifted)
    }
}

/// A state whose full 4-component spinor can be sampled pointwise.
#[derive(Clone, Copy, Debug)]
pub enum SpinorState {
    Cartesian(CartesianState),
    Q(QEigenvector),
}

/// Spinor values at points of the open first quadrant, in Cartesian
/// coordinates (ρ₁, ρ₂). Exactly the slots allowed by the state's quantum
/// numbers are nonzero.
pub fn sample_spinor(
    state: &SpinorState,
    points: &[(f64, f64)],
) -> Result<Vec<[f64; 4]>, SpinorError> {
    for &(x, y) in points {
        if !(x > 0.0 && y > 0.0) {
            return Err(SpinorError::DomainError(format!(
                "point ({x}, {y}) is outside the open first quadrant"
            )));
        }
    }
    let out = match state {
        SpinorState::Cartesian(c) => {
            let slot = c.slot();
            points
                .iter()
                .map(|&(x, y)| {
                    let mut v = [0.0; 4];
                    v[slot] = 2.0 * psi_1d(c.m1, c.k1, x) * psi_1d(c.m2, c.k2, y);
                    v
                })
                .collect()
        }
        SpinorState::Q(q) => {
            let slot_minus = q.minus_state.slot();
            let slot_plus = q.plus_state.slot();
            let abs_m = q.minus_state.abs_m();
            let n_r = q.minus_state.n_r;
            points
                .iter()
                .map(|&(x, y)| {
                    let r = x.hypot(y);
                    let phi = y.atan2(x);
                    let rad = radial(n_r, abs_m, r);
                    let mut v = [0.0; 4];
                    v[slot_minus] = q.c_minus * phi_angular(&q.minus_state, phi) * rad;
                    v[slot_plus] += q.c_plus * phi_angular(&q.plus_state, phi) * rad;
                    v
                })
                .collect()
        }
    };
    Ok(out)
}
