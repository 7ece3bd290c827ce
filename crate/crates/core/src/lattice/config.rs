//! Declarative frame files (TOML).
//!
//! ```toml
//! schema = "nwvoa-frame/1"
//! generators = ["c1", "d1"]
//! gram = [["0", "2"], ["2", "0"]]
//! lattice_basis = [["1", "0"], ["0", "1"]]
//! cocycle = [[0, 0], [0, 0]]                                         # optional
//! conformal = "(+ (* 1/2 (mode c1 1) (mode d1 1)) (* -1/2 (mode d1 2)))"  # optional
//! charge = ["0", "1"]                                                  # optional
//! ```

use serde::{Deserialize, Serialize};

use super::expr::{parse_state, print_state};
use super::frame::Frame;
use super::state::LatticePoint;
use crate::error::{Error, Result};
use crate::exact::{fmt_q, parse_q, Q};

pub const FRAME_SCHEMA: &str = "nwvoa-frame/1";

#[derive(Serialize, Deserialize)]
struct FrameFile {
    schema: String,
    generators: Vec<String>,
    gram: Vec<Vec<String>>,
    lattice_basis: Vec<Vec<String>>,
    /// Rows of 0/1 bits: 1 where ε(a_i, a_j) = -1.
    #[serde(skip_serializing_if = "Option::is_none")]
    cocycle: Option<Vec<Vec<u8>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    conformal: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    charge: Option<Vec<String>>,
}

fn parse_row(r: &[String]) -> Result<Vec<Q>> {
    r.iter().map(|s| parse_q(s)).collect()
}

fn print_row(r: &[Q]) -> Vec<String> {
    r.iter().map(fmt_q).collect()
}

pub fn frame_from_toml(src: &str) -> Result<Frame> {
    let f: FrameFile = toml::from_str(src).map_err(|e| Error::Parse(e.to_string()))?;
    if f.schema != FRAME_SCHEMA {
        return Err(Error::Parse(format!("unsupported frame schema {}", f.schema)));
    }
    let gram = f.gram.iter().map(|r| parse_row(r)).collect::<Result<Vec<_>>>()?;
    let basis = f
        .lattice_basis
        .iter()
        .map(|r| parse_row(r).map(LatticePoint))
        .collect::<Result<Vec<_>>>()?;
    let mut frame = Frame::new(f.generators, gram, basis)?;
    if let Some(bits) = f.cocycle {
        frame = frame.with_cocycle_bits(bits.iter().map(|r| r.iter().map(|b| *b != 0).collect()).collect())?;
    }
    if let Some(h) = f.charge {
        let h = LatticePoint(parse_row(&h)?);
        if h.dim() != frame.dim() {
            return Err(Error::Parse("charge vector of wrong dimension".into()));
        }
        frame = frame.with_charge(h);
    }
    if let Some(src) = f.conformal {
        let omega = parse_state(&frame, &src)?;
        frame = frame.with_conformal(omega);
    }
    Ok(frame)
}

pub fn frame_to_toml(frame: &Frame) -> String {
    let f = FrameFile {
        schema: FRAME_SCHEMA.into(),
        generators: frame.names().to_vec(),
        gram: frame.gram().iter().map(|r| print_row(r)).collect(),
        lattice_basis: frame.lattice_basis().iter().map(|b| print_row(&b.0)).collect(),
        cocycle: Some(frame.cocycle_bits().iter().map(|r| r.iter().map(|b| *b as u8).collect()).collect()),
        conformal: frame.conformal().map(|s| print_state(frame, s)),
        charge: frame.charge_vector().map(|h| print_row(&h.0)),
    };
    toml::to_string(&f).expect("frame serialization")
}

pub fn load_frame(path: &std::path::Path) -> Result<Frame> {
    frame_from_toml(&std::fs::read_to_string(path)?)
}

pub fn save_frame(frame: &Frame, path: &std::path::Path) -> Result<()> {
    std::fs::write(path, frame_to_toml(frame))?;
    Ok(())
}
