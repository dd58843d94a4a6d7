//! Exact counting of fine gradings on matrix algebras and on the classical
//! simple Lie algebras of series A, B, C and D, together with the numerical
//! machinery for their asymptotic behaviour.
//!
//! The counting side reduces to Burnside orbit counts of two finite group
//! actions on the points of `Z_2^{2m}`: the natural affine action of
//! `ASp_{2m}(2)` and the twisted action of `Sp_{2m}(2)` restricted to the
//! level sets of a quadratic form.  Everything exact is done in
//! arbitrary-precision integers; the asymptotic side (optimization constants
//! and log-periodic envelope functions) is ordinary `f64` numerics.
//!
//! Module map:
//! - [`partitions`]: integer partitions, shapes, and the pigeonhole count
//!   used in the Burnside sums.
//! - [`gf2`]: bit-packed linear algebra over GF(2), enumeration of
//!   `Sp_{2m}(2)`, and cycle-type distributions of the group actions.
//! - [`orbits`]: orbit counting on multisets (two independent Burnside
//!   paths plus a direct oracle), orbit-count bounds, and the cycle-index
//!   file format.
//! - [`census`]: the grading-count formulas for matrix algebras and the
//!   four classical series.
//! - [`asym`]: optimization constants, envelope functions and the
//!   constrained binomial maximization.

pub mod asym;
pub mod census;
pub mod gf2;
pub mod golden;
pub mod orbits;
pub mod partitions;

/// The three group actions whose orbit counts drive the census.
///
/// `Asp` is the natural affine action `x -> Ax + t` of `ASp_{2m}(2)` on all
/// of `Z_2^{2m}`.  The twisted variants are the action `x -> Ax + t_A` of
/// `Sp_{2m}(2)` restricted to the points where the quadratic form vanishes
/// (`TwistedPlus`) or equals one (`TwistedMinus`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Action {
    Asp,
    TwistedPlus,
    TwistedMinus,
}

impl Action {
    /// Stable tag used in the cycle-index file format and on the CLI.
    pub fn tag(self) -> &'static str {
        match self {
            Action::Asp => "asp",
            Action::TwistedPlus => "sp+",
            Action::TwistedMinus => "sp-",
        }
    }

    /// Inverse of [`Action::tag`].
    pub fn from_tag(tag: &str) -> Option<Action> {
        match tag {
            "asp" => Some(Action::Asp),
            "sp+" => Some(Action::TwistedPlus),
            "sp-" => Some(Action::TwistedMinus),
            _ => None,
        }
    }

    /// Number of points the action moves for a given `m`.
    ///
    /// `Asp` acts on all `4^m` vectors; the twisted actions act on the
    /// quadric strata of sizes `2^{m-1}(2^m + 1)` and `2^{m-1}(2^m - 1)`.
    pub fn point_count(self, m: u32) -> u64 {
        match self {
            Action::Asp => 1u64 << (2 * m),
            Action::TwistedPlus => {
                if m == 0 {
                    1
                } else {
                    (1u64 << (m - 1)) * ((1u64 << m) + 1)
                }
            }
            Action::TwistedMinus => {
                if m == 0 {
                    0
                } else {
                    (1u64 << (m - 1)) * ((1u64 << m) - 1)
                }
            }
        }
    }
}

impl std::fmt::Display for Action {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.tag())
    }
}

/// Sign selecting one of the two quadric strata (or one of the two
/// perturbed optimization problems in [`asym`]).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn action(self) -> Action {
        match self {
            Sign::Plus => Action::TwistedPlus,
            Sign::Minus => Action::TwistedMinus,
        }
    }

    pub fn as_f64(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }
}
