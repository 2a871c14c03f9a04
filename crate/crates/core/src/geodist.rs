//! Geometric distance estimate from the surface systole and incenter chords.
//!
//! One face class is designated red. An X-type logical path hops between
//! incenters of red faces, each hop covering the red-to-red chord `t_r`;
//! its weight is estimated as `2 * ceil(L / t_r)` where `L` is the systole.
//! A Z-type logical path crosses the other two classes alternately, each
//! step covering `a_g + a_b`; its weight is `ceil(L / (a_g + a_b))`. The
//! estimate is the minimum over the three red choices and both path types.

use serde::{Deserialize, Serialize};

use crate::derive::{self, DeriveError};
use crate::hypgeo::{self, OddNonOrientableSystole, SemiRegularSig};

/// Ratios within this distance of an integer are treated as that integer
/// before taking the ceiling.
pub const CEIL_SNAP: f64 = 1e-9;

pub type Result<T> = std::result::Result<T, DeriveError>;

/// Estimated distance with the lengths that produced it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DistanceEstimate {
    pub d_x: usize,
    pub d_z: usize,
    pub d: usize,
    pub systole_used: f64,
    /// Red-to-red chord for each choice of red slot.
    pub chords_used: [f64; 3],
    /// Step length of the Z path for each choice of red slot.
    pub steps_used: [f64; 3],
    /// Winning convention, e.g. `red=8,X`.
    pub convention_tag: String,
}

fn snapped_ceil(x: f64) -> usize {
    let r = x.round();
    if (x - r).abs() < CEIL_SNAP {
        r as usize
    } else {
        x.ceil() as usize
    }
}

fn check_admissible(sig: SemiRegularSig, genus: u32, orientable: bool) -> Result<()> {
    hypgeo::check_genus(genus, orientable)?;
    derive::semiregular_counts_direct(sig, hypgeo::euler_characteristic(genus, orientable))?;
    Ok(())
}

/// Red-to-red chord when slot `red` is red: incenters of two red faces
/// flanking a face of the next slot, `chord(a_red + a_s, m_s)`.
pub fn red_chord(sig: SemiRegularSig, red: usize) -> Result<f64> {
    let prof = hypgeo::semiregular_profile(sig)?;
    let s = (red + 1) % 3;
    let m = sig.sizes();
    Ok(hypgeo::incenter_chord(prof.apothems[red] + prof.apothems[s], m[s])?)
}

/// Z-path step when slot `red` is red: `a_g + a_b` over the other two slots.
pub fn non_red_step(sig: SemiRegularSig, red: usize) -> Result<f64> {
    let prof = hypgeo::semiregular_profile(sig)?;
    Ok(prof.apothems[(red + 1) % 3] + prof.apothems[(red + 2) % 3])
}

fn systole(genus: u32, orientable: bool, odd: OddNonOrientableSystole) -> Result<f64> {
    Ok(hypgeo::systole_with(genus, orientable, odd)?)
}

/// `2 * ceil(L / t_r)`.
pub fn estimate_dx(sig: SemiRegularSig, genus: u32, orientable: bool, red: usize) -> Result<usize> {
    check_admissible(sig, genus, orientable)?;
    let l = systole(genus, orientable, OddNonOrientableSystole::default())?;
    Ok(2 * snapped_ceil(l / red_chord(sig, red)?))
}

/// `ceil(L / (a_g + a_b))`.
pub fn estimate_dz(sig: SemiRegularSig, genus: u32, orientable: bool, red: usize) -> Result<usize> {
    check_admissible(sig, genus, orientable)?;
    let l = systole(genus, orientable, OddNonOrientableSystole::default())?;
    Ok(snapped_ceil(l / non_red_step(sig, red)?))
}

pub fn estimate_distance(sig: SemiRegularSig, genus: u32, orientable: bool) -> Result<DistanceEstimate> {
    estimate_distance_with(sig, genus, orientable, OddNonOrientableSystole::default())
}

/// Minimum over red slots and path types. Ties keep the earliest slot, and
/// X before Z within a slot. The result is at least 2.
pub fn estimate_distance_with(
    sig: SemiRegularSig,
    genus: u32,
    orientable: bool,
    odd: OddNonOrientableSystole,
) -> Result<DistanceEstimate> {
    check_admissible(sig, genus, orientable)?;
    let l = systole(genus, orientable, odd)?;
    let mut chords = [0.0; 3];
    let mut steps = [0.0; 3];
    let mut best: Option<(usize, usize, usize, String)> = None;
    let m = sig.sizes();
    for red in 0..3 {
        chords[red] = red_chord(sig, red)?;
        steps[red] = non_red_step(sig, red)?;
        let dx = 2 * snapped_ceil(l / chords[red]);
        let dz = snapped_ceil(l / steps[red]);
        for (val, kind) in [(dx, "X"), (dz, "Z")] {
            if best.as_ref().is_none_or(|b| val < b.2) {
                best = Some((dx, dz, val, format!("red={},{kind}", m[red])));
            }
        }
    }
    let (d_x, d_z, d, tag) = best.expect("three red choices");
    Ok(DistanceEstimate {
        d_x,
        d_z,
        d: d.max(2),
        systole_used: l,
        chords_used: chords,
        steps_used: steps,
        convention_tag: tag,
    })
}
