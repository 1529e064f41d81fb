//! One-module operators: the discrete-series generator matrices, the
//! (s)Casimir elements, the su(1,1) even subalgebra and the sl(2|1)
//! dynamical-algebra realization.

use super::operator::{ComplexOp, Op};
use super::{OspError, RepLabel};
use crate::orthopoly::mu_number;
use crate::Sign;
use nalgebra::{Complex, DMatrix};

/// Generator matrices of one (μ, ε) module truncated at basis size
/// n_max + 1: A₀ diagonal n + μ + 1/2, A₊ subdiagonal √([n+1]_μ),
/// A₋ superdiagonal √([n]_μ), P diagonal ε(−1)^n.
#[derive(Clone, Debug)]
pub struct Generators {
    pub label: RepLabel,
    pub n_max: u32,
    pub a0: Op,
    pub aplus: Op,
    pub aminus: Op,
    pub parity: Op,
}

pub fn build_generators(label: RepLabel, n_max: u32) -> Result<Generators, OspError> {
    if n_max < 2 {
        return Err(OspError::InvalidTruncation { n_max, min: 2 });
    }
    let dim = n_max as usize + 1;
    let mu = label.mu;
    let eps = label.epsilon.value();

    let mut a0 = DMatrix::zeros(dim, dim);
    let mut ap = DMatrix::zeros(dim, dim);
    let mut am = DMatrix::zeros(dim, dim);
    let mut p = DMatrix::zeros(dim, dim);
    for n in 0..dim {
        a0[(n, n)] = n as f64 + mu + 0.5;
        p[(n, n)] = eps * if n % 2 == 0 { 1.0 } else { -1.0 };
        if n + 1 < dim {
            let amp = mu_number(n as u32 + 1, mu).sqrt();
            ap[(n + 1, n)] = amp;
            am[(n, n + 1)] = amp;
        }
    }
    Ok(Generators {
        label,
        n_max,
        a0: Op::from_matrix(a0),
        aplus: Op::from_matrix(ap),
        aminus: Op::from_matrix(am),
        parity: Op::from_matrix(p),
    })
}

impl Generators {
    /// sCasimir S = A₊A₋ − A₀ + 1/2. Exact on every truncated index because
    /// A₊A₋ lowers before raising.
    pub fn scasimir(&self) -> Op {
        self.aplus.mul(&self.aminus).sub(&self.a0).plus_identity(0.5)
    }

    /// Casimir Q = S·P, a multiple −εμ of the identity on the module.
    pub fn casimir(&self) -> Op {
        self.scasimir().mul(&self.parity)
    }
}

/// sCasimir matrix of the (μ, ε) module.
pub fn scasimir(label: RepLabel, n_max: u32) -> Result<Op, OspError> {
    Ok(build_generators(label, n_max)?.scasimir())
}

/// Casimir matrix of the (μ, ε) module.
pub fn casimir(label: RepLabel, n_max: u32) -> Result<Op, OspError> {
    Ok(build_generators(label, n_max)?.casimir())
}

/// The su(1,1) subalgebra sitting inside one module:
/// J± = A±²/2, J₀ = A₀/2, C = J₀² − J₊J₋ − J₀.
#[derive(Clone, Debug)]
pub struct Su11 {
    pub j0: Op,
    pub jplus: Op,
    pub jminus: Op,
    pub casimir: Op,
}

pub fn su11_embedding(label: RepLabel, n_max: u32) -> Result<Su11, OspError> {
    if n_max < 4 {
        return Err(OspError::InvalidTruncation { n_max, min: 4 });
    }
    let g = build_generators(label, n_max)?;
    let j0 = g.a0.scaled(0.5);
    let jplus = g.aplus.mul(&g.aplus).scaled(0.5);
    let jminus = g.aminus.mul(&g.aminus).scaled(0.5);
    let casimir = j0.mul(&j0).sub(&jplus.mul(&jminus)).sub(&j0);
    Ok(Su11 { j0, jplus, jminus, casimir })
}

/// The sl(2|1) ≃ osp(2|2) dynamical algebra realized on one module.
///
/// σ₃ acts диagonally as (−1)^n in the number basis, so Y = σ₃/(2i) and
/// everything built from it stays a matrix in the same basis. Complex
/// arithmetic is confined to this construction.
#[derive(Clone, Debug)]
pub struct Sl21 {
    pub hbar: ComplexOp,
    pub z: ComplexOp,
    pub fp: ComplexOp,
    pub fm: ComplexOp,
    pub fbp: ComplexOp,
    pub fbm: ComplexOp,
    pub ep: ComplexOp,
    pub em: ComplexOp,
    pub y: ComplexOp,
    pub atp: ComplexOp,
    pub atm: ComplexOp,
}

pub fn sl21_generators(k: f64, epsilon: Sign, n_max: u32) -> Result<Sl21, OspError> {
    if n_max < 4 {
        return Err(OspError::InvalidTruncation { n_max, min: 4 });
    }
    let label = RepLabel::new(k, epsilon)?;
    let g = build_generators(label, n_max)?;
    let dim = n_max as usize + 1;

    let a0 = g.a0.to_complex();
    let ap = g.aplus.to_complex();
    let am = g.aminus.to_complex();

    let sigma3 = |n: usize| if n % 2 == 0 { 1.0 } else { -1.0 };
    // Y = σ₃ / (2i) = −i σ₃ / 2.
    let y = ComplexOp::from_fn(dim, |i, j| {
        if i == j {
            Complex::new(0.0, -0.5 * sigma3(i))
        } else {
            Complex::new(0.0, 0.0)
        }
    });
    let atp = ap.commutator(&y);
    let atm = am.commutator(&y);

    let hbar = a0.scaled(Complex::new(0.5, 0.0));
    let z = ComplexOp::from_fn(dim, |i, j| {
        if i == j {
            Complex::new(-0.5 * (k + 0.5 * sigma3(i)), 0.0)
        } else {
            Complex::new(0.0, 0.0)
        }
    });

    let inv = Complex::new(1.0 / (2.0 * 2.0f64.sqrt()), 0.0);
    let i_unit = Complex::new(0.0, 1.0);
    let fp = atp.sub(&ap.scaled(i_unit)).scaled(inv);
    let fm = atm.sub(&am.scaled(i_unit)).scaled(-i_unit * inv);
    let fbp = atp.add(&ap.scaled(i_unit)).scaled(i_unit * inv);
    let fbm = atm.add(&am.scaled(i_unit)).scaled(-inv);
    let ep = fp.anticommutator(&fbp);
    let em = fm.anticommutator(&fbm);

    Ok(Sl21 { hbar, z, fp, fm, fbp, fbm, ep, em, y, atp, atm })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn label(mu: f64, eps: Sign) -> RepLabel {
        RepLabel::new(mu, eps).unwrap()
    }

    #[test]
    fn generator_matrix_elements() {
        let g = build_generators(label(1.0, Sign::Plus), 8).unwrap();
        // <1|A+|0> = sqrt([1]_1) = sqrt(3)
        assert_relative_eq!(g.aplus.entry(1, 0), 3.0f64.sqrt(), max_relative = 1e-15);
        // A- annihilates the lowest state.
        for i in 0..g.aminus.dim() {
            assert_eq!(g.aminus.entry(i, 0), 0.0);
        }
        let g2 = build_generators(label(0.5, Sign::Minus), 8).unwrap();
        assert_eq!(g2.a0.entry(4, 4), 5.0);
        assert_eq!(g2.parity.entry(3, 3), 1.0);
        assert!(matches!(
            build_generators(label(1.0, Sign::Plus), 1),
            Err(OspError::InvalidTruncation { .. })
        ));
    }

    #[test]
    fn casimir_is_constant() {
        for &(mu, eps) in &[(1.0, Sign::Plus), (0.0, Sign::Plus), (2.5, Sign::Minus)] {
            let g = build_generators(label(mu, eps), 10).unwrap();
            let q = g.casimir();
            let expected = -eps.value() * mu;
            for n in 0..=9 {
                assert_relative_eq!(q.entry(n, n), expected, epsilon = 1e-12);
            }
            let off = q.sub(&Op::identity(q.dim()).scaled(expected));
            assert!(off.interior_max_abs(1).0 <= 1e-12);
        }
    }

    #[test]
    fn scasimir_anticommutes_with_raising() {
        let g = build_generators(label(1.5, Sign::Plus), 12).unwrap();
        let s = g.scasimir();
        let (defect, _) = s.anticommutator(&g.aplus).interior_max_abs(1);
        assert!(defect <= 1e-12);
        let (defect0, _) = s.commutator(&g.a0).interior_max_abs(1);
        assert!(defect0 <= 1e-12);
    }

    #[test]
    fn su11_relations_hold_on_interior() {
        let su = su11_embedding(label(0.7, Sign::Minus), 16).unwrap();
        let r1 = su.j0.commutator(&su.jplus).sub(&su.jplus);
        let r2 = su.j0.commutator(&su.jminus).add(&su.jminus);
        let r3 = su.jplus.commutator(&su.jminus).add(&su.j0.scaled(2.0));
        assert!(r1.interior_max_abs(2).0 <= 1e-12);
        assert!(r2.interior_max_abs(2).0 <= 1e-12);
        assert!(r3.interior_max_abs(4).0 <= 1e-12);
    }

    #[test]
    fn su11_casimir_identity() {
        // C = (S² + S − 3/4)/4, on every index (both sides exact).
        for &mu in &[0.0, 1.0, 2.5] {
            let l = label(mu, Sign::Plus);
            let su = su11_embedding(l, 12).unwrap();
            let s = scasimir(l, 12).unwrap();
            let rhs = s.mul(&s).add(&s).plus_identity(-0.75).scaled(0.25);
            assert!(su.casimir.sub(&rhs).max_abs() <= 1e-12);
        }
    }

    #[test]
    fn sl21_tilde_charges_close_osp12() {
        let sl = sl21_generators(2.0, Sign::Plus, 16).unwrap();
        let g = build_generators(label(2.0, Sign::Plus), 16).unwrap();
        let a0 = g.a0.to_complex();
        let r = sl.atp.anticommutator(&sl.atm).sub(&a0.scaled(Complex::new(2.0, 0.0)));
        assert!(r.interior_max_abs(2).0 <= 1e-12);
    }

    #[test]
    fn sl21_spot_relations() {
        let sl = sl21_generators(1.0, Sign::Plus, 16).unwrap();
        // {F+, F+} = 0
        assert!(sl.fp.anticommutator(&sl.fp).interior_max_abs(2).0 <= 1e-12);
        // [Z, E+] = 0 on the interior.
        assert!(sl.z.commutator(&sl.ep).interior_max_abs(2).0 <= 1e-12);
        // {F+, Fbar-} = Z − H at n = 3: compare both sides entrywise there.
        let lhs = sl.fp.anticommutator(&sl.fbm);
        let rhs = sl.z.sub(&sl.hbar);
        assert_relative_eq!(lhs.entry(3, 3).re, rhs.entry(3, 3).re, epsilon = 1e-12);
        assert_relative_eq!(lhs.entry(3, 3).im, rhs.entry(3, 3).im, epsilon = 1e-12);
    }
}
