//! Berry connection and phase for the three families, and the Laplace
//! transform linking su(1,1) Barut-Girardello and Perelomov states.

mod berry;
mod laplace;
pub mod quadrature;

pub use berry::{
    berry_phase_loop, connection_closed, connection_coefficient, connection_fd_oracle, loop_integral, LoopSpec,
};
pub use laplace::{
    bg_series_f, gamma_quadrature_error, laplace_check, laplace_rhs, laplace_rhs_sqrt_prefactor, pcs_series_g,
    LaplaceProbe, LaplaceReport, QuadratureMethod, DEFAULT_QUAD_NODES,
};
