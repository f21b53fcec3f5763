//! Simulation of generalized two-atom Tavis-Cummings models with
//! intensity-dependent coupling: exact block-structured evolution on a
//! truncated Fock space, the coherent-state approximate solution with its
//! fractional-revival closed forms, entanglement diagnostics, and the
//! field-measurement entangling protocols (POVMs, GHZ/W generation, the
//! two-mode Bell measurement).
//!
//! The three concrete models are Tavis-Cummings (f = 1), Buck-Sukumar
//! (linear eigenfrequencies, perfect revivals) and the trapped-ion
//! sideband model with Laguerre-polynomial coupling. All dynamics run in
//! the resonant interaction picture with time in units of 1/Ω.

pub mod error;
pub mod special;
pub mod model;
pub mod hilbert;
pub mod evolution;
pub mod observables;
pub mod entanglement;
pub mod protocols;
pub mod runs;
