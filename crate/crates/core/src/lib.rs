//! Dual −1 Hahn polynomials and the two-dimensional spinorial singular
//! oscillator whose symmetry algebra they encode.
//!
//! The crate has three layers:
//!
//! * closed-form special functions: classical orthogonal polynomials
//!   ([`orthopoly`]) and the dual −1 Hahn family with its discrete
//!   orthogonality data ([`dualhahn`]);
//! * operator algebra: truncated matrix representations of the osp(1|2)
//!   discrete series, tensor products, symmetry generators and embedded
//!   algebras ([`osp`]), plus the separated eigenfunctions of the spinorial
//!   oscillator ([`spinor`]) and the inter-basis overlap coefficients
//!   ([`overlaps`]);
//! * certification: every algebraic identity the model relies on is turned
//!   into a finite numerical check with a measured defect ([`verify`]),
//!   driven from the command line ([`cli`]).

pub mod cli;
pub mod dualhahn;
pub mod orthopoly;
pub mod osp;
pub mod overlaps;
pub mod quadrature;
pub mod spinor;
pub mod verify;

/// A sign in {+1, −1}, used for representation labels, parities and spin
/// projections.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    /// The sign as ±1.0.
    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    /// (−1)^n.
    pub fn from_parity(n: u32) -> Sign {
        if n % 2 == 0 {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn is_plus(self) -> bool {
        matches!(self, Sign::Plus)
    }
}

impl std::ops::Mul for Sign {
    type Output = Sign;

    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl std::ops::Neg for Sign {
    type Output = Sign;

    fn neg(self) -> Sign {
        self.flip()
    }
}

impl std::fmt::Display for Sign {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Sign::Plus => write!(f, "+1"),
            Sign::Minus => write!(f, "-1"),
        }
    }
}
