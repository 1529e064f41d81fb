//! Operators on a truncated two-module tensor basis: the coproduct images of
//! the generators, the total Casimir Δ(Q), the symmetry generators of the
//! two-dimensional model, and the su(1,1) dual Hahn embedding.

use super::operator::Op;
use super::{OspError, RepLabel};
use crate::orthopoly::mu_number;
use nalgebra::DMatrix;

/// Basis states (n₁, n₂) with n₁ + n₂ ≤ N_max, ordered by total degree and
/// then by n₁, so every fixed-energy block is contiguous.
#[derive(Clone, Debug)]
pub struct TensorBasis {
    labels: (RepLabel, RepLabel),
    n_max: u32,
    states: Vec<(u32, u32)>,
}

impl TensorBasis {
    pub fn new(labels: (RepLabel, RepLabel), n_max: u32) -> Self {
        let mut states = Vec::with_capacity(((n_max + 1) * (n_max + 2) / 2) as usize);
        for level in 0..=n_max {
            for n1 in 0..=level {
                states.push((n1, level - n1));
            }
        }
        TensorBasis { labels, n_max, states }
    }

    pub fn labels(&self) -> (RepLabel, RepLabel) {
        self.labels
    }

    pub fn n_max(&self) -> u32 {
        self.n_max
    }

    pub fn dim(&self) -> usize {
        self.states.len()
    }

    pub fn states(&self) -> &[(u32, u32)] {
        &self.states
    }

    pub fn index(&self, n1: u32, n2: u32) -> Option<usize> {
        let level = n1 + n2;
        if level > self.n_max {
            return None;
        }
        Some((level * (level + 1) / 2 + n1) as usize)
    }

    /// Index range of the fixed-degree block n₁ + n₂ = level.
    pub fn level_range(&self, level: u32) -> std::ops::Range<usize> {
        assert!(level <= self.n_max);
        let start = (level * (level + 1) / 2) as usize;
        start..start + level as usize + 1
    }

    /// Diagonal operator from a function of (n₁, n₂).
    pub fn diagonal(&self, f: impl Fn(u32, u32) -> f64) -> Op {
        let dim = self.dim();
        let mut m = DMatrix::zeros(dim, dim);
        for (idx, &(n1, n2)) in self.states.iter().enumerate() {
            m[(idx, idx)] = f(n1, n2);
        }
        Op::from_matrix(m)
    }

    /// Shift operator: ⟨(n₁+d₁, n₂+d₂)| Op |(n₁, n₂)⟩ = amp(n₁, n₂), entries
    /// whose target leaves the truncated triangle are dropped.
    pub fn hop(&self, d1: i64, d2: i64, amp: impl Fn(u32, u32) -> f64) -> Op {
        let dim = self.dim();
        let mut m = DMatrix::zeros(dim, dim);
        for (src, &(n1, n2)) in self.states.iter().enumerate() {
            let t1 = n1 as i64 + d1;
            let t2 = n2 as i64 + d2;
            if t1 < 0 || t2 < 0 {
                continue;
            }
            if let Some(dst) = self.index(t1 as u32, t2 as u32) {
                m[(dst, src)] = amp(n1, n2);
            }
        }
        Op::from_matrix(m)
    }
}

/// Coproduct images Δ(A₀), Δ(A±), Δ(P) on the truncated tensor basis.
#[derive(Clone, Debug)]
pub struct CoproductGenerators {
    pub da0: Op,
    pub daplus: Op,
    pub daminus: Op,
    pub dparity: Op,
}

pub fn coproduct_generators(basis: &TensorBasis) -> Result<CoproductGenerators, OspError> {
    if basis.n_max < 2 {
        return Err(OspError::InvalidTruncation { n_max: basis.n_max, min: 2 });
    }
    let (l1, l2) = basis.labels;
    let (mu1, mu2) = (l1.mu, l2.mu);
    let (e1, e2) = (l1.epsilon.value(), l2.epsilon.value());
    let par = |n: u32| if n % 2 == 0 { 1.0 } else { -1.0 };

    let da0 = basis.diagonal(|n1, n2| n1 as f64 + n2 as f64 + mu1 + mu2 + 1.0);
    let dparity = basis.diagonal(|n1, n2| e1 * e2 * par(n1 + n2));
    // Δ(A±) = A± ⊗ P + 1 ⊗ A±.
    let up1 = basis.hop(1, 0, |n1, n2| mu_number(n1 + 1, mu1).sqrt() * e2 * par(n2));
    let up2 = basis.hop(0, 1, |_, n2| mu_number(n2 + 1, mu2).sqrt());
    let dn1 = basis.hop(-1, 0, |n1, n2| mu_number(n1, mu1).sqrt() * e2 * par(n2));
    let dn2 = basis.hop(0, -1, |_, n2| mu_number(n2, mu2).sqrt());
    Ok(CoproductGenerators {
        da0,
        daplus: up1.add(&up2),
        daminus: dn1.add(&dn2),
        dparity,
    })
}

/// Δ(Q) = (A₋⁽¹⁾A₊⁽²⁾ − A₊⁽¹⁾A₋⁽²⁾)P⁽¹⁾ + Q⁽¹⁾P⁽²⁾ + Q⁽²⁾P⁽¹⁾ − ½P⁽¹⁾P⁽²⁾.
///
/// Every summand preserves the total degree, so the matrix is exact on the
/// whole truncated triangle and commutes with Δ(A₀) exactly, not just on
/// interior indices.
pub fn q12(basis: &TensorBasis) -> Op {
    let (l1, l2) = basis.labels;
    let (mu1, mu2) = (l1.mu, l2.mu);
    let (e1, e2) = (l1.epsilon.value(), l2.epsilon.value());
    let par = |n: u32| if n % 2 == 0 { 1.0 } else { -1.0 };

    let lower_raise = basis.hop(-1, 1, |n1, n2| {
        (mu_number(n1, mu1) * mu_number(n2 + 1, mu2)).sqrt() * e1 * par(n1)
    });
    let raise_lower = basis.hop(1, -1, |n1, n2| {
        -(mu_number(n1 + 1, mu1) * mu_number(n2, mu2)).sqrt() * e1 * par(n1)
    });
    let diag = basis.diagonal(|n1, n2| {
        let p1 = e1 * par(n1);
        let p2 = e2 * par(n2);
        (-e1 * mu1) * p2 + (-e2 * mu2) * p1 - 0.5 * p1 * p2
    });
    lower_raise.add(&raise_lower).add(&diag)
}

/// The symmetry generators of the two-dimensional model together with the
/// central elements entering their relations.
#[derive(Clone, Debug)]
pub struct SymmetryGenerators {
    pub k1: Op,
    pub k2: Op,
    pub k3: Op,
    pub sigma12: Op,
    pub sigma34: Op,
    /// sCasimirs S⁽¹⁾, S⁽²⁾ of the two factors on the tensor basis.
    pub s1: Op,
    pub s2: Op,
    /// Casimirs Q⁽¹⁾, Q⁽²⁾ of the two factors on the tensor basis.
    pub q1: Op,
    pub q2: Op,
    /// Total Hamiltonian H₁₂ = Δ(A₀).
    pub h12: Op,
}

pub fn symmetry_generators(basis: &TensorBasis) -> Result<SymmetryGenerators, OspError> {
    if basis.n_max < 3 {
        return Err(OspError::InvalidTruncation { n_max: basis.n_max, min: 3 });
    }
    let (l1, l2) = basis.labels;
    let (mu1, mu2) = (l1.mu, l2.mu);
    let (e1, e2) = (l1.epsilon.value(), l2.epsilon.value());
    let par = |n: u32| if n % 2 == 0 { 1.0 } else { -1.0 };

    let k1 = basis.diagonal(|n1, n2| 0.5 * (n1 as f64 + mu1 - n2 as f64 - mu2));
    let sigma12 = basis.diagonal(|n1, _| -par(n1));
    let sigma34 = basis.diagonal(|_, n2| -par(n2));

    // Factor sCasimirs built from the factor ladder matrices; the
    // lower-then-raise products are exact on the triangle.
    let a1p = basis.hop(1, 0, |n1, _| mu_number(n1 + 1, mu1).sqrt());
    let a1m = basis.hop(-1, 0, |n1, _| mu_number(n1, mu1).sqrt());
    let a2p = basis.hop(0, 1, |_, n2| mu_number(n2 + 1, mu2).sqrt());
    let a2m = basis.hop(0, -1, |_, n2| mu_number(n2, mu2).sqrt());
    let a1_0 = basis.diagonal(|n1, _| n1 as f64 + mu1 + 0.5);
    let a2_0 = basis.diagonal(|_, n2| n2 as f64 + mu2 + 0.5);
    let p1 = basis.diagonal(|n1, _| e1 * par(n1));
    let p2 = basis.diagonal(|_, n2| e2 * par(n2));
    let s1 = a1p.mul(&a1m).sub(&a1_0).plus_identity(0.5);
    let s2 = a2p.mul(&a2m).sub(&a2_0).plus_identity(0.5);
    let q1 = s1.mul(&p1);
    let q2 = s2.mul(&p2);

    let k2 = q12(basis)
        .mul(&sigma12)
        .mul(&sigma34)
        .scaled(e1 * e2);
    let k3 = k1.commutator(&k2);
    let h12 = basis.diagonal(|n1, n2| n1 as f64 + n2 as f64 + mu1 + mu2 + 1.0);

    Ok(SymmetryGenerators { k1, k2, k3, sigma12, sigma34, s1, s2, q1, q2, h12 })
}

/// su(1,1) data for the dual Hahn embedding: 𝒦₁ = J₀⁽¹⁾ − J₀⁽²⁾,
/// 𝒦₂ = C⁽¹²⁾, 𝒦₃ = [𝒦₁, 𝒦₂], plus the central elements J₀⁽¹²⁾, C⁽¹⁾, C⁽²⁾.
#[derive(Clone, Debug)]
pub struct DualHahnEmbedding {
    pub kk1: Op,
    pub kk2: Op,
    pub kk3: Op,
    pub j0_12: Op,
    pub c1: Op,
    pub c2: Op,
}

pub fn dual_hahn_embedding(basis: &TensorBasis) -> Result<DualHahnEmbedding, OspError> {
    if basis.n_max < 4 {
        return Err(OspError::InvalidTruncation { n_max: basis.n_max, min: 4 });
    }
    let (l1, l2) = basis.labels;
    let (mu1, mu2) = (l1.mu, l2.mu);

    let j0_1 = basis.diagonal(|n1, _| 0.5 * (n1 as f64 + mu1 + 0.5));
    let j0_2 = basis.diagonal(|_, n2| 0.5 * (n2 as f64 + mu2 + 0.5));
    let j0_12 = j0_1.add(&j0_2);

    // J±^{(i)} = (A±^{(i)})²/2 as two-step hops in one slot.
    let two_step = |mu: f64, n: u32| (mu_number(n + 1, mu) * mu_number(n + 2, mu)).sqrt();
    let jp1 = basis.hop(2, 0, |n1, _| 0.5 * two_step(mu1, n1));
    let jp2 = basis.hop(0, 2, |_, n2| 0.5 * two_step(mu2, n2));
    let jm1 = basis.hop(-2, 0, |n1, _| {
        if n1 >= 2 { 0.5 * two_step(mu1, n1 - 2) } else { 0.0 }
    });
    let jm2 = basis.hop(0, -2, |_, n2| {
        if n2 >= 2 { 0.5 * two_step(mu2, n2 - 2) } else { 0.0 }
    });

    let c1 = j0_1.mul(&j0_1).sub(&jp1.mul(&jm1)).sub(&j0_1);
    let c2 = j0_2.mul(&j0_2).sub(&jp2.mul(&jm2)).sub(&j0_2);

    let jp12 = jp1.add(&jp2);
    let jm12 = jm1.add(&jm2);
    let kk2 = j0_12.mul(&j0_12).sub(&jp12.mul(&jm12)).sub(&j0_12);
    let kk1 = j0_1.sub(&j0_2);
    let kk3 = kk1.commutator(&kk2);

    Ok(DualHahnEmbedding { kk1, kk2, kk3, j0_12, c1, c2 })
}

/// Extract the fixed-degree block of a degree-preserving operator.
pub fn level_block(op: &Op, basis: &TensorBasis, level: u32) -> DMatrix<f64> {
    let range = basis.level_range(level);
    op.matrix().view_range(range.clone(), range).into_owned()
}
