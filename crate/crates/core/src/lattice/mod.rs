//! Lattice vertex algebras over configurable free-field frames.

pub mod config;
pub mod coords;
pub mod expr;
pub mod frame;
pub mod state;
pub mod vertex;

pub use config::{frame_from_toml, frame_to_toml, load_frame, save_frame};
pub use expr::{parse_state, print_state};
pub use frame::Frame;
pub use state::{FockState, Gen, LatticePoint, Poly, Word};
pub use vertex::{
    bracket_direct, bracket_modes, charge_of, divided_translate, max_nonzero_mode, mode_apply, parity,
    skew_rhs, translate, weight_of,
};
