//! Truncated matrix representations of the osp(1|2) discrete series and
//! everything built on top of them: Casimir and sCasimir elements, tensor
//! products through the coproduct, the symmetry generators of the
//! two-dimensional model, and the su(1,1) / sl(2|1) embeddings.
//!
//! Truncation corrupts only basis-boundary matrix elements. A product of
//! operators with bands b₁…b_k is therefore trusted only on indices at least
//! Σbᵢ away from both ends of the basis; relation checks restrict to that
//! window. Operators that preserve or lower-then-restore the degree are exact
//! everywhere, which is what makes the fixed-energy block checks exact.

mod operator;
mod single;
mod tensor;

pub use operator::{ComplexOp, Op, TruncatedOperator};
pub use single::{
    build_generators, casimir, scasimir, sl21_generators, su11_embedding, Generators, Sl21, Su11,
};
pub use tensor::{
    coproduct_generators, dual_hahn_embedding, level_block, q12, symmetry_generators,
    CoproductGenerators, DualHahnEmbedding, SymmetryGenerators, TensorBasis,
};

use crate::Sign;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum OspError {
    #[error("invalid truncation: n_max = {n_max} but at least {min} is required")]
    InvalidTruncation { n_max: u32, min: u32 },
    #[error("invalid representation label: {0}")]
    InvalidLabel(String),
}

/// Discrete-series representation label (μ, ε) with μ ≥ 0.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RepLabel {
    pub mu: f64,
    pub epsilon: Sign,
}

impl RepLabel {
    pub fn new(mu: f64, epsilon: Sign) -> Result<Self, OspError> {
        if !(mu >= 0.0) || !mu.is_finite() {
            return Err(OspError::InvalidLabel(format!("mu must be >= 0, got {mu}")));
        }
        Ok(RepLabel { mu, epsilon })
    }

    /// The physical label of the spinorial oscillator with parameter k:
    /// μ = k, ε = (−1)^k.
    pub fn physical(k: u32) -> RepLabel {
        RepLabel { mu: k as f64, epsilon: Sign::from_parity(k) }
    }
}

/// One irreducible component of (μ₁,ε₁) ⊗ (μ₂,ε₂):
/// μ₁₂ = μ₁ + μ₂ + j + 1/2 and ε₁₂ = (−1)^j ε₁ε₂.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CGBranch {
    pub j: u32,
    pub mu12: f64,
    pub epsilon12: Sign,
}

/// The branches j = 0..=j_max of the Clebsch-Gordan decomposition.
pub fn cg_decompose(labels: (RepLabel, RepLabel), j_max: u32) -> Vec<CGBranch> {
    (0..=j_max)
        .map(|j| CGBranch {
            j,
            mu12: labels.0.mu + labels.1.mu + j as f64 + 0.5,
            epsilon12: if j % 2 == 0 {
                labels.0.epsilon * labels.1.epsilon
            } else {
                -(labels.0.epsilon * labels.1.epsilon)
            },
        })
        .collect()
}
