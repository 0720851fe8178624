//! Rapid decay of `W(F) phi` for rapidly decreasing `F` and merely
//! square-integrable `phi`: `|W(F) phi| (1 + xi^2)^m` should level off for
//! every `m` the symbol itself supports.

use serde::Serialize;

use crate::error::Result;
use crate::numerics::envelope::{envelope_plateau, EnvelopeSample, Plateau};
use crate::numerics::function::{PhaseSpaceFunction, SampledFunction};
use crate::wigner::weyl::weyl_apply_kernel;

use super::certify::PLATEAU_SLACK;

#[derive(Clone, Debug, Serialize)]
pub struct SchwartzReport {
    pub m_max: usize,
    /// First power at which `|F| (1 + x^2 + u^2)^m` fails to level off.
    pub refused_at: Option<usize>,
    pub symbol: Vec<Plateau>,
    pub output: Vec<Plateau>,
    pub passed: bool,
}

fn polynomial_plateau(points: impl Iterator<Item = (Vec<f64>, f64)>, m: usize) -> Plateau {
    let samples: Vec<EnvelopeSample> = points
        .map(|(p, magnitude)| {
            let r2: f64 = p.iter().map(|c| c * c).sum();
            EnvelopeSample { radius: r2.sqrt(), exponent: m as f64 * r2.ln_1p(), magnitude }
        })
        .collect();
    envelope_plateau(&samples, PLATEAU_SLACK)
}

pub fn schwartz_mapping_check(f: &PhaseSpaceFunction, phi: &SampledFunction, m_max: usize) -> Result<SchwartzReport> {
    let mut symbol = Vec::new();
    for m in 0..=m_max {
        let p = polynomial_plateau(f.values.indexed_iter().map(|(i, v)| (f.grid.point(&i), v.norm())), m);
        symbol.push(p);
        if !p.plateau {
            return Ok(SchwartzReport { m_max, refused_at: Some(m), symbol, output: Vec::new(), passed: false });
        }
    }
    let psi = weyl_apply_kernel(f, phi)?;
    let output: Vec<Plateau> =
        (0..=m_max).map(|m| polynomial_plateau(psi.values.indexed_iter().map(|(i, v)| (psi.grid.point(&i), v.norm())), m)).collect();
    let passed = output.iter().all(|p| p.plateau);
    Ok(SchwartzReport { m_max, refused_at: None, symbol, output, passed })
}
