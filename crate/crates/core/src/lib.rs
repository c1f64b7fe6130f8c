//! Spectral simulator and verification harness for the damped evolution
//! equation u_tt + Lu + (I+L)⁻¹u_t = 0 with L = log(I − Δ).
//!
//! Every Fourier mode is solved in closed form ([`mode_dynamics`]), checked
//! against an adaptive integrator ([`ode_oracle`]), compared with the
//! asymptotic profiles ([`profiles`]) and integrated over frequency space
//! ([`radial_quadrature`]) to measure decay rates ([`decay_rates`]).
//!
//! ```
//! use logdamp::symbol_core::compute_thresholds;
//! let th = compute_thresholds().unwrap();
//! assert!(th.eta < th.delta && th.delta < th.delta0 && th.delta0 < th.r_unit);
//! ```

pub mod cli_report;
pub mod decay_rates;
pub mod error;
pub mod mode_dynamics;
pub mod ode_oracle;
pub mod profiles;
pub mod radial_quadrature;
pub mod scaled;
pub mod spectral_data;
pub mod symbol_core;

pub use error::{Error, Result};
