//! Local equations of the Fano variety of lines on a cyclic cubic fourfold.
//!
//! The lines near `l0 = <p, e_c>` are written `x0 = lambda`, `x_c = mu`,
//! `x_j = -lambda p1j + mu p0j` for the four remaining `j`; the condition
//! `F(line) = 0` splits into the four bihomogeneous coefficients `phi^{ij}`.

mod chart;
mod gamma;
mod planes;
mod residual;
mod translate;

use crate::cubic_model::ModelError;
use crate::polyring::PolyError;

pub use chart::{
    blowup, central_fiber, closed_form_blowup, closed_form_equations, fano_chart, BlowupEquations, CentralFiber,
    FanoLocalEquations,
};
pub use gamma::{gamma_chart, gamma_local_model, shift_chart, GammaChart, GammaModel};
pub use planes::{negative_control_fourfold, plane_search, PlaneSearchResult};
pub use residual::{
    equivariance_check, plucker, residual_conic, residual_line, same_line, sample_secants, sample_tangents,
    sigma_action, EquivarianceReport, Line, ResidualConic, ResidualLine, Xi,
};
pub use translate::{translate_chart, TranslatedChart};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum FanoError {
    #[error("chart structure: {0}")]
    Structure(String),
    #[error("transversality fails: {0}")]
    Transversality(String),
    #[error("degenerate configuration: {0}")]
    Degenerate(String),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}
