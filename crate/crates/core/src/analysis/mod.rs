//! Quantitative checks on the eigenstates: normalization, width at half
//! maximum, modified spread, energy uncertainty, delta-sequence behaviour of
//! the collapse density and a closed-form ₁F₁ integral.

mod delta;
mod norm;
mod peaks;
mod residual;
mod spread;
mod uncertainty;

pub use delta::{
    delta_sequence_test, half_line_u_integral, half_mass_limit, integral_formula_check,
    integral_formula_rhs, DeltaTestReport, DeltaVerdict, IntegralFormulaReport,
};
pub use norm::{norm_check, norm_check_with, position_moment, Representation};
pub use peaks::{peak_census, whm, PeakCensus, WhmResult, PEAK_RELATIVE_THRESHOLD};
pub use residual::{eigenvalue_residual, schrodinger_residual};
pub use spread::{spread, spread_with, time_step, SpreadResult};
pub use uncertainty::{energy_moments, energy_uncertainty};
