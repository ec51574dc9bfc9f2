//! Two-qubit mixed states under XX Ising dynamics.
//!
//! The crate builds the maximally entangled mixed states, Werner states and
//! the `ρⁿ` / `ρᵐ` families, evolves them exactly under
//! `H = (J/2)(σxσx + σyσy) + B(σz⊗I + I⊗σz)`, and measures concurrence,
//! quantum discord, linear entropy and Bell-CHSH violation.
//!
//! ```
//! use mixcorr::prelude::*;
//!
//! let rho = make_rho_m(0.5, 0.125, 0.6, 0.0)?;
//! let r = report(&rho)?;
//! assert!((r.concurrence - 0.5).abs() < 1e-10);
//! assert!((r.linear_entropy - 0.125).abs() < 1e-12);
//! assert!(r.bell_violated);
//! # Ok::<(), mixcorr::Error>(())
//! ```
//!
//! The guide in `book/` walks through each module; its code listings are
//! compiled as doctests of this crate.

pub mod correlations;
pub mod dynamics;
pub mod error;
pub mod linalg;
pub mod states;
pub mod sweeps;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    mod readme {}
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/linalg.md")]
    mod linalg {}
    #[doc = include_str!("../../../book/src/states.md")]
    mod states {}
    #[doc = include_str!("../../../book/src/dynamics.md")]
    mod dynamics {}
    #[doc = include_str!("../../../book/src/correlations.md")]
    mod correlations {}
    #[doc = include_str!("../../../book/src/sweeps.md")]
    mod sweeps {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
    #[doc = include_str!("../../../book/src/printed.md")]
    mod printed {}
}

pub mod prelude {
    pub use crate::correlations::{
        concurrence, concurrence_x, conditional_entropy, horodecki_m, lambda_param,
        linear_entropy, quantum_discord, quantum_discord_with, report, report_with, spin_flip,
        vn_entropy, x_state_m, BlochVector, CorrelationReport, DiscordOptions, ReportOptions,
    };
    pub use crate::dynamics::{
        build_hamiltonian, closed_form_evolve, evolve, paper_evolved_state, paper_linear_entropy,
        uniform_grid, EvolutionMode, HamiltonianSpec,
    };
    pub use crate::error::{Error, Result};
    pub use crate::linalg::{kron, partial_trace, pauli, ComplexMat2, ComplexMat4, Subsystem};
    pub use crate::states::{
        bell_phi_plus, d_parameter, make_mems, make_mems_as_printed, make_rho_m, make_rho_n,
        make_werner, s_max, swap_unitary, validate_state, DensityMatrix, Family, StateSpec,
    };
    pub use crate::sweeps::{
        phi_window_physical, phi_window_violation, sudden_death_intervals, time_sweep, SweepRow,
        SweepSpec, Window, WindowKind,
    };
}
