//! Metric quantities of regular and trivalent semi-regular hyperbolic
//! tessellations, at curvature -1.
//!
//! Regular `{p,q}` quantities are closed forms. The semi-regular edge length
//! is the unique positive root of
//!
//! ```text
//! sum_i asin(cos(pi/m_i) / cosh(l/2)) = pi
//! ```
//!
//! whose left-hand side is strictly decreasing in `cosh(l/2)`; we bisect on
//! `c = cosh(l/2)` and polish with Newton steps.

use std::f64::consts::PI;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Agreement required between the two closed forms of the regular edge length.
pub const EDGE_FORM_AGREEMENT: f64 = 1e-12;
/// Maximum residual of the semi-regular edge equation at the returned root.
pub const EDGE_RESIDUAL_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error("{{{p},{q}}} is not hyperbolic (1/p + 1/q must be < 1/2)")]
    NotHyperbolicRegular { p: u32, q: u32 },
    #[error("Euclidean triple {0} (1/m1 + 1/m2 + 1/m3 = 1/2)")]
    EuclideanTriple(SemiRegularSig),
    #[error("spherical triple {0} (1/m1 + 1/m2 + 1/m3 > 1/2)")]
    SphericalTriple(SemiRegularSig),
    #[error("polygon sizes must be at least 3, got {0}")]
    DegeneratePolygon(u32),
    #[error("genus {genus} is below the minimum {min} for a {kind} hyperbolic surface")]
    GenusTooSmall { genus: u32, min: u32, kind: &'static str },
    #[error("incenter distance must be positive, got {0}")]
    NonPositiveDistance(f64),
    #[error("edge-length solve did not converge (residual {0:e})")]
    NoConvergence(f64),
}

pub type Result<T> = std::result::Result<T, GeometryError>;

/// Regular tessellation `{p,q}`: `p`-gon faces, valence `q` vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RegularSig {
    p: u32,
    q: u32,
}

impl RegularSig {
    pub fn new(p: u32, q: u32) -> Result<Self> {
        for m in [p, q] {
            if m < 3 {
                return Err(GeometryError::DegeneratePolygon(m));
            }
        }
        // 1/p + 1/q < 1/2  <=>  pq - 2p - 2q > 0
        if (p as i64) * (q as i64) - 2 * (p as i64) - 2 * (q as i64) <= 0 {
            return Err(GeometryError::NotHyperbolicRegular { p, q });
        }
        Ok(Self { p, q })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// `pq - 2p - 2q`, strictly positive for hyperbolic signatures.
    pub fn defect(&self) -> i64 {
        let (p, q) = (self.p as i64, self.q as i64);
        p * q - 2 * p - 2 * q
    }
}

impl fmt::Display for RegularSig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{}}}", self.p, self.q)
    }
}

/// Trivalent vertex type `[m1,m2,m3]`.
///
/// The triple is kept in the order given; use [`SemiRegularSig::normalized`]
/// for the sorted form used as a catalog key.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SemiRegularSig {
    m: [u32; 3],
}

impl SemiRegularSig {
    pub fn new(m: [u32; 3]) -> Result<Self> {
        for &mi in &m {
            if mi < 3 {
                return Err(GeometryError::DegeneratePolygon(mi));
            }
        }
        let sig = Self { m };
        match sig.curvature_sign() {
            s if s < 0 => Ok(sig),
            0 => Err(GeometryError::EuclideanTriple(sig)),
            _ => Err(GeometryError::SphericalTriple(sig)),
        }
    }

    /// Sign of `1/m1 + 1/m2 + 1/m3 - 1/2` computed in integers.
    fn curvature_sign(&self) -> i64 {
        let [a, b, c] = self.m.map(|x| x as i64);
        (2 * (a * b + b * c + c * a) - a * b * c).signum()
    }

    pub fn sizes(&self) -> [u32; 3] {
        self.m
    }

    /// Sorted copy.
    pub fn normalized(&self) -> Self {
        let mut m = self.m;
        m.sort_unstable();
        Self { m }
    }

    pub fn is_normalized(&self) -> bool {
        self.m[0] <= self.m[1] && self.m[1] <= self.m[2]
    }
}

impl fmt::Display for SemiRegularSig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{},{}]", self.m[0], self.m[1], self.m[2])
    }
}

/// Edge length, apothems, circumradii and incenter gaps of a semi-regular
/// tessellation. `incenter_gaps[i]` is the distance between the incenters of
/// adjacent `m_i`- and `m_{i+1}`-gons (indices mod 3).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MetricProfile {
    pub edge: f64,
    pub apothems: [f64; 3],
    pub circumradii: [f64; 3],
    pub incenter_gaps: [f64; 3],
}

fn cot(x: f64) -> f64 {
    x.cos() / x.sin()
}

/// Edge length of `{p,q}`: `2 acosh(cos(pi/p) / sin(pi/q))`.
///
/// Also evaluates the single-`acosh` form
/// `acosh((cos^2(pi/q) + cos(2pi/p)) / sin^2(pi/q))` and asserts agreement.
pub fn regular_edge_length(sig: RegularSig) -> f64 {
    let l = regular_edge_length_half_angle(sig);
    let alt = regular_edge_length_direct(sig);
    assert!(
        (l - alt).abs() <= EDGE_FORM_AGREEMENT * l.max(1.0),
        "edge-length forms disagree for {sig}: {l} vs {alt}"
    );
    l
}

/// `2 acosh(cos(pi/p) cosec(pi/q))`.
pub fn regular_edge_length_half_angle(sig: RegularSig) -> f64 {
    let (p, q) = (sig.p as f64, sig.q as f64);
    2.0 * ((PI / p).cos() / (PI / q).sin()).acosh()
}

/// `acosh((cos^2(pi/q) + cos(2pi/p)) / sin^2(pi/q))`.
pub fn regular_edge_length_direct(sig: RegularSig) -> f64 {
    let (p, q) = (sig.p as f64, sig.q as f64);
    let s = (PI / q).sin();
    (((PI / q).cos().powi(2) + (2.0 * PI / p).cos()) / (s * s)).acosh()
}

/// Apothem and circumradius of a `{p,q}` face.
pub fn regular_apothem_circumradius(sig: RegularSig) -> (f64, f64) {
    let (p, q) = (sig.p as f64, sig.q as f64);
    let a = ((PI / q).cos() / (PI / p).sin()).acosh();
    let r = (cot(PI / p) * cot(PI / q)).acosh();
    (a, r)
}

/// Area of one `{p,q}` face: `(pq - 2p - 2q) pi / q`.
pub fn polygon_area(sig: RegularSig) -> f64 {
    sig.defect() as f64 * PI / sig.q as f64
}

/// Euler characteristic of the closed surface of the given genus.
pub fn euler_characteristic(genus: u32, orientable: bool) -> i64 {
    if orientable {
        2 - 2 * genus as i64
    } else {
        2 - genus as i64
    }
}

/// Smallest genus carrying a hyperbolic metric.
pub fn min_hyperbolic_genus(orientable: bool) -> u32 {
    if orientable {
        2
    } else {
        3
    }
}

pub(crate) fn check_genus(genus: u32, orientable: bool) -> Result<()> {
    let min = min_hyperbolic_genus(orientable);
    if genus < min {
        return Err(GeometryError::GenusTooSmall {
            genus,
            min,
            kind: if orientable { "orientable" } else { "non-orientable" },
        });
    }
    Ok(())
}

/// Gauss-Bonnet area `-2 pi chi`.
pub fn surface_area(genus: u32, orientable: bool) -> Result<f64> {
    check_genus(genus, orientable)?;
    Ok(-2.0 * PI * euler_characteristic(genus, orientable) as f64)
}

/// `sum_i asin(cos(pi/m_i) / c) - pi`, strictly decreasing in `c >= 1`.
fn edge_equation(m: &[u32; 3], c: f64) -> f64 {
    m.iter()
        .map(|&mi| ((PI / mi as f64).cos() / c).asin())
        .sum::<f64>()
        - PI
}

fn edge_equation_dc(m: &[u32; 3], c: f64) -> f64 {
    m.iter()
        .map(|&mi| {
            let k = (PI / mi as f64).cos();
            -k / (c * (c * c - k * k).sqrt())
        })
        .sum()
}

/// Solves for `c = cosh(l/2)`.
fn solve_half_edge_cosh(sig: SemiRegularSig) -> Result<f64> {
    let m = sig.m;
    let (mut lo, mut hi) = (1.0_f64, 1.0e6_f64);
    debug_assert!(edge_equation(&m, lo) > 0.0 && edge_equation(&m, hi) < 0.0);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if edge_equation(&m, mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mut c = 0.5 * (lo + hi);
    for _ in 0..2 {
        let d = edge_equation_dc(&m, c);
        if d.is_finite() && d != 0.0 {
            let next = c - edge_equation(&m, c) / d;
            if next > 1.0 && next.is_finite() {
                c = next;
            }
        }
    }
    let residual = edge_equation(&m, c).abs();
    if residual >= EDGE_RESIDUAL_TOL {
        return Err(GeometryError::NoConvergence(residual));
    }
    Ok(c)
}

/// Edge length of the semi-regular tessellation `[m1,m2,m3]`.
pub fn semiregular_edge_length(sig: SemiRegularSig) -> Result<f64> {
    Ok(2.0 * solve_half_edge_cosh(sig)?.acosh())
}

/// Residual of the edge equation at `l`, exposed for verification.
pub fn semiregular_edge_residual(sig: SemiRegularSig, l: f64) -> f64 {
    edge_equation(&sig.m, (l / 2.0).cosh())
}

pub fn semiregular_profile(sig: SemiRegularSig) -> Result<MetricProfile> {
    let edge = semiregular_edge_length(sig)?;
    let half = edge / 2.0;
    let apothems = sig
        .m
        .map(|mi| (half.tanh() * cot(PI / mi as f64)).asinh());
    let circumradii = apothems.map(|a| (a.cosh() * half.cosh()).acosh());
    let incenter_gaps = [0, 1, 2].map(|i| apothems[i] + apothems[(i + 1) % 3]);
    Ok(MetricProfile {
        edge,
        apothems,
        circumradii,
        incenter_gaps,
    })
}

/// Distance between the incenters of two same-class faces that both touch a
/// common `m_next`-gon and sit two steps apart around it, where `gap` is the
/// incenter distance from each of them to the `m_next`-gon.
pub fn incenter_chord(gap: f64, m_next: u32) -> Result<f64> {
    if gap.is_nan() || gap <= 0.0 {
        return Err(GeometryError::NonPositiveDistance(gap));
    }
    if m_next < 3 {
        return Err(GeometryError::DegeneratePolygon(m_next));
    }
    let angle = 4.0 * PI / m_next as f64;
    let arg = gap.cosh().powi(2) - gap.sinh().powi(2) * angle.cos();
    Ok(arg.max(1.0).acosh())
}

/// Override for the odd-genus non-orientable systole, which has no closed
/// form of its own.
#[derive(Debug, Clone, Copy, Default)]
pub enum OddNonOrientableSystole {
    /// `2 acosh(cot(pi / 2g))`, by analogy with the `2g`-gon fundamental
    /// region.
    #[default]
    PolygonAnalogy,
    Custom(fn(u32) -> f64),
}

/// Length of the shortest homologically non-trivial geodesic of the
/// fundamental-polygon surface.
///
/// Orientable genus `g`: `2 acosh(cot(pi / 4g))`. Non-orientable genus `2h`
/// coincides with orientable genus `h`.
pub fn systole(genus: u32, orientable: bool) -> Result<f64> {
    systole_with(genus, orientable, OddNonOrientableSystole::default())
}

pub fn systole_with(genus: u32, orientable: bool, odd: OddNonOrientableSystole) -> Result<f64> {
    check_genus(genus, orientable)?;
    let g = genus as f64;
    if orientable {
        return Ok(2.0 * cot(PI / (4.0 * g)).acosh());
    }
    if genus % 2 == 1 {
        if let OddNonOrientableSystole::Custom(f) = odd {
            return Ok(f(genus));
        }
    }
    Ok(2.0 * cot(PI / (2.0 * g)).acosh())
}

/// `sum (m_i - 2) pi / m_i > 2 pi`, evaluated exactly.
pub fn vertex_type_admissible(m: &[u32]) -> bool {
    if m.iter().any(|&x| x < 3) {
        return false;
    }
    // sum (1 - 2/m_i) > 2  <=>  (len - 2) * L > 2 * sum(L / m_i), L = lcm-free product
    let prod: u128 = m.iter().map(|&x| x as u128).product();
    let lhs = (m.len() as u128).saturating_sub(2) * prod;
    let rhs: u128 = m.iter().map(|&x| 2 * prod / x as u128).sum();
    lhs > rhs
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn reg(p: u32, q: u32) -> RegularSig {
        RegularSig::new(p, q).unwrap()
    }

    fn semi(m: [u32; 3]) -> SemiRegularSig {
        SemiRegularSig::new(m).unwrap()
    }

    #[test]
    fn regular_edge_examples() {
        let l88 = regular_edge_length(reg(8, 8));
        assert_abs_diff_eq!(l88, 2.0 * cot(PI / 8.0).acosh(), epsilon = 1e-14);
        assert_abs_diff_eq!(l88, 3.057142, epsilon = 1e-6);
        let l83 = regular_edge_length(reg(8, 3));
        assert_abs_diff_eq!(l83, 2.0 * ((PI / 8.0).cos() / (PI / 3.0).sin()).acosh(), epsilon = 1e-14);
        assert_abs_diff_eq!(l83, 0.72704, epsilon = 1e-5);
        assert!(matches!(
            RegularSig::new(4, 4),
            Err(GeometryError::NotHyperbolicRegular { p: 4, q: 4 })
        ));
        assert!(RegularSig::new(6, 3).is_err());
    }

    #[test]
    fn regular_radii() {
        let (a, r) = regular_apothem_circumradius(reg(8, 8));
        assert_abs_diff_eq!(r, cot(PI / 8.0).powi(2).acosh(), epsilon = 1e-14);
        assert_abs_diff_eq!(r, 2.4485, epsilon = 1e-4);
        assert!(a < r);
        let (a, r) = regular_apothem_circumradius(reg(8, 3));
        assert_abs_diff_eq!(a, 0.7643, epsilon = 1e-4);
        assert!(a < r);
    }

    #[test]
    fn areas() {
        assert_abs_diff_eq!(polygon_area(reg(8, 8)), 4.0 * PI, epsilon = 1e-12);
        assert_abs_diff_eq!(polygon_area(reg(8, 3)), 2.0 * PI / 3.0, epsilon = 1e-12);
        assert_abs_diff_eq!(surface_area(2, true).unwrap(), 4.0 * PI, epsilon = 1e-12);
        assert_abs_diff_eq!(surface_area(3, false).unwrap(), 2.0 * PI, epsilon = 1e-12);
        assert_eq!(surface_area(4, false).unwrap(), surface_area(2, true).unwrap());
        assert!(surface_area(1, true).is_err());
        assert!(surface_area(2, false).is_err());
    }

    /// Bisection on the edge length itself, to 1e-13.
    fn oracle_edge(m: [u32; 3]) -> f64 {
        let lhs = |l: f64| -> f64 {
            m.iter()
                .map(|&k| ((PI / k as f64).cos() / (l / 2.0).cosh()).asin())
                .sum::<f64>()
        };
        let (mut lo, mut hi) = (1e-9, 40.0);
        while hi - lo > 1e-13 {
            let mid = 0.5 * (lo + hi);
            if lhs(mid) > PI {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }

    #[test]
    fn semiregular_668() {
        let sig = semi([6, 6, 8]);
        let l = semiregular_edge_length(sig).unwrap();
        assert_abs_diff_eq!(l, oracle_edge([6, 6, 8]), epsilon = 1e-11);
        assert!(semiregular_edge_residual(sig, l).abs() < EDGE_RESIDUAL_TOL);
        // quoted approximations were propagated from cosh(l/2) rounded to 1.0240
        assert_abs_diff_eq!((l / 2.0).cosh(), 1.0240, epsilon = 2e-4);
        assert_abs_diff_eq!(l, 0.4373, epsilon = 2e-3);

        let prof = semiregular_profile(sig).unwrap();
        let t = (l / 2.0).tanh();
        let a6 = (t / (PI / 6.0).tan()).asinh();
        let a8 = (t / (PI / 8.0).tan()).asinh();
        assert_abs_diff_eq!(prof.apothems[0], a6, epsilon = 1e-12);
        assert_abs_diff_eq!(prof.apothems[2], a8, epsilon = 1e-12);
        assert_abs_diff_eq!(prof.incenter_gaps[0], 2.0 * a6, epsilon = 1e-12);
        assert_abs_diff_eq!(prof.incenter_gaps[1], a6 + a8, epsilon = 1e-12);
        assert_abs_diff_eq!(prof.apothems[0], 0.3647, epsilon = 2e-3);
        assert_abs_diff_eq!(prof.apothems[2], 0.4988, epsilon = 2e-3);
        assert_abs_diff_eq!(prof.incenter_gaps[0], 0.7293, epsilon = 3e-3);
        assert_abs_diff_eq!(prof.incenter_gaps[1], 0.8635, epsilon = 3e-3);
        // the (6,6) gap is the {8,3} edge length
        assert_abs_diff_eq!(prof.incenter_gaps[0], regular_edge_length(reg(8, 3)), epsilon = 1e-11);
        for i in 0..3 {
            let lhs = prof.circumradii[i].cosh();
            let rhs = prof.apothems[i].cosh() * (prof.edge / 2.0).cosh();
            assert_abs_diff_eq!(lhs, rhs, epsilon = 1e-12);
            assert!(prof.apothems[i] < prof.circumradii[i]);
        }
    }

    #[test]
    fn euclidean_and_spherical_triples_rejected() {
        assert!(matches!(
            SemiRegularSig::new([6, 6, 6]),
            Err(GeometryError::EuclideanTriple(_))
        ));
        assert!(matches!(
            SemiRegularSig::new([4, 8, 8]),
            Err(GeometryError::EuclideanTriple(_))
        ));
        assert!(matches!(
            SemiRegularSig::new([4, 6, 8]),
            Err(GeometryError::SphericalTriple(_))
        ));
    }

    #[test]
    fn regular_limit_of_semiregular() {
        for k in [8u32, 10, 12, 20] {
            let s = semiregular_edge_length(semi([k, k, k])).unwrap();
            let r = regular_edge_length(reg(k, 3));
            assert_abs_diff_eq!(s, r, epsilon = 1e-9);
        }
    }

    #[test]
    fn chord_examples() {
        let a: f64 = 0.8635;
        let six = incenter_chord(a, 6).unwrap();
        let eight = incenter_chord(a, 8).unwrap();
        assert_abs_diff_eq!(six, (a.cosh().powi(2) + 0.5 * a.sinh().powi(2)).acosh(), epsilon = 1e-12);
        assert_abs_diff_eq!(eight, a.cosh().powi(2).acosh(), epsilon = 1e-12);
        assert_abs_diff_eq!(six, 1.5329, epsilon = 1e-3);
        assert_abs_diff_eq!(eight, 1.2872, epsilon = 1e-3);
        assert_abs_diff_eq!(incenter_chord(0.7, 4).unwrap(), 1.4, epsilon = 1e-12);
        assert!(incenter_chord(0.0, 6).is_err());
        assert!(incenter_chord(-1.0, 6).is_err());
    }

    #[test]
    fn systole_examples() {
        assert_abs_diff_eq!(systole(2, true).unwrap(), 3.0571, epsilon = 1e-4);
        let s3 = systole(3, true).unwrap();
        assert_abs_diff_eq!(s3, 2.0 * (1.0 / (PI / 12.0).tan()).acosh(), epsilon = 1e-12);
        assert_abs_diff_eq!(s3, 3.9835, epsilon = 5e-4);
        for h in 2..10 {
            assert_abs_diff_eq!(
                systole(2 * h, false).unwrap(),
                systole(h, true).unwrap(),
                epsilon = 1e-12
            );
        }
        assert!(systole(1, true).is_err());
        assert!(systole(2, false).is_err());
        let custom = systole_with(5, false, OddNonOrientableSystole::Custom(|g| g as f64)).unwrap();
        assert_eq!(custom, 5.0);
        // overrides never touch the even case
        let even = systole_with(4, false, OddNonOrientableSystole::Custom(|_| 0.0)).unwrap();
        assert_eq!(even, systole(2, true).unwrap());
    }

    #[test]
    fn admissible_vertex_types() {
        assert!(vertex_type_admissible(&[8, 8, 8]));
        assert!(!vertex_type_admissible(&[6, 6, 6]));
        assert!(vertex_type_admissible(&[4, 6, 14]));
        assert!(!vertex_type_admissible(&[4, 6, 12]));
        assert!(vertex_type_admissible(&[5, 5, 5, 5]));
        assert!(!vertex_type_admissible(&[4, 4, 4, 4]));
        assert!(!vertex_type_admissible(&[2, 100, 100]));
    }
}
