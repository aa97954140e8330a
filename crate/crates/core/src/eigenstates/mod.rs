//! Eigenfunctions of the symmetric free-particle time-of-arrival operator
//!
//! ```text
//! T = -(μ/2)(p⁻¹q + qp⁻¹)      Tφ = -iμħ (1/p ∂_p - 1/(2p²)) φ
//! ```
//!
//! in momentum and position representation, their free evolution, their
//! large-`|q|` behaviour and the density at the collapse time `t = τ_R`.
//! The arrival point is the origin; other arrival points are a translation
//! in `q` left to callers.

mod asymptotic;
mod momentum;
mod position;

pub(crate) use position::PositionKernel;

pub use asymptotic::{asymptotic_crossover, varphi_asymptotic, AsymptoticEval};
pub use momentum::{ab_operator_apply, phi_momentum, varphi_momentum};
pub use position::{
    collapse_density, evolved_density, varphi_evolved, varphi_position, varphi_position_eval,
    PositionEval,
};

use crate::error::{Error, Result};
use num_complex::Complex64;

/// Mass and reduced Planck constant, the only dimensional parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalParams {
    pub mu: f64,
    pub hbar: f64,
}

impl Default for PhysicalParams {
    fn default() -> Self {
        PhysicalParams { mu: 1.0, hbar: 1.0 }
    }
}

impl PhysicalParams {
    pub fn new(mu: f64, hbar: f64) -> Result<Self> {
        if !(mu > 0.0 && mu.is_finite() && hbar > 0.0 && hbar.is_finite()) {
            return Err(Error::Domain(format!(
                "mass and hbar must be positive and finite (mu {mu}, hbar {hbar})"
            )));
        }
        Ok(PhysicalParams { mu, hbar })
    }
}

/// Complex eigenvalue `τ = τ_R + iτ_I`.
///
/// Normalized states need `τ_I > 0`; `τ_I = 0` is accepted only by
/// [`phi_momentum`] and [`varphi_asymptotic`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Eigenvalue {
    pub tau_r: f64,
    pub tau_i: f64,
}

impl Eigenvalue {
    pub fn new(tau_r: f64, tau_i: f64) -> Result<Self> {
        if !(tau_r.is_finite() && tau_i.is_finite()) {
            return Err(Error::Domain(format!("eigenvalue {tau_r} + {tau_i}i is not finite")));
        }
        Ok(Eigenvalue { tau_r, tau_i })
    }

    pub fn as_complex(&self) -> Complex64 {
        Complex64::new(self.tau_r, self.tau_i)
    }

    /// `τ - t`: the eigenvalue of the state evolved for a time `t`.
    pub fn shifted(&self, t: f64) -> Eigenvalue {
        Eigenvalue {
            tau_r: self.tau_r - t,
            tau_i: self.tau_i,
        }
    }

    pub fn is_normalizable(&self) -> bool {
        self.tau_i > 0.0
    }

    pub fn require_normalizable(&self) -> Result<()> {
        if self.is_normalizable() {
            Ok(())
        } else {
            Err(Error::Normalizability { tau_i: self.tau_i })
        }
    }
}

/// Parity type: `n = 0` even (nonnodal), `n = 1` odd (nodal).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ParityIndex(u8);

impl ParityIndex {
    pub const EVEN: ParityIndex = ParityIndex(0);
    pub const ODD: ParityIndex = ParityIndex(1);

    pub fn new(n: u32) -> Result<Self> {
        match n {
            0 => Ok(Self::EVEN),
            1 => Ok(Self::ODD),
            _ => Err(Error::Domain(format!("parity index must be 0 or 1, got {n}"))),
        }
    }

    pub fn n(self) -> u32 {
        self.0 as u32
    }

    pub fn as_f64(self) -> f64 {
        self.0 as f64
    }

    /// `(-1)^n`
    pub fn sign(self) -> f64 {
        if self.0 == 0 {
            1.0
        } else {
            -1.0
        }
    }
}

/// Sign `α` of the momentum support.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MomentumBranch {
    Positive,
    Negative,
}

impl MomentumBranch {
    pub fn alpha(self) -> f64 {
        match self {
            MomentumBranch::Positive => 1.0,
            MomentumBranch::Negative => -1.0,
        }
    }

    /// `Θ(αp)` with `Θ(0) = 1/2`.
    pub fn heaviside(self, p: f64) -> f64 {
        let x = self.alpha() * p;
        if x > 0.0 {
            1.0
        } else if x < 0.0 {
            0.0
        } else {
            0.5
        }
    }
}

/// `sgn(0) = 0`.
pub(crate) fn sgn(x: f64) -> f64 {
    if x > 0.0 {
        1.0
    } else if x < 0.0 {
        -1.0
    } else {
        0.0
    }
}

/// Position and time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpacetimePoint {
    pub q: f64,
    pub t: f64,
}

impl SpacetimePoint {
    pub fn new(q: f64, t: f64) -> Result<Self> {
        if !(q.is_finite() && t.is_finite()) {
            return Err(Error::Domain(format!("spacetime point ({q}, {t}) is not finite")));
        }
        Ok(SpacetimePoint { q, t })
    }
}
