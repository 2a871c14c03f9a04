//! Clipping and incenter derivations of regular tessellations.
//!
//! Both are available as count transformers on `(p, q, chi)` and as explicit
//! rewrites of a combinatorial map. The rewrites work at the level of
//! corners and edge ends, so faces glued to themselves (fundamental
//! polygons) and non-orientable gluings need no special cases.
//!
//! Clipping cuts a small neighbourhood of every vertex: each `p`-gon becomes
//! a `2p`-gon and each `q`-valent vertex becomes a `q`-gon, giving
//! `[2p,2p,q]`. Incenter subdivision joins the incenters of adjacent faces
//! through the edge midpoints and the vertices, giving `[2p,2q,4]`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::hypgeo::{GeometryError, RegularSig, SemiRegularSig};
use crate::surface::{self, SlotRef, Slot, SurfaceComplex, SurfaceError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DeriveError {
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Surface(#[from] SurfaceError),
    #[error("source is not a {{{p},{q}}} complex: {reason}")]
    NotRegular { p: u32, q: u32, reason: String },
    #[error("{sig} does not tessellate a surface with euler characteristic {chi}: counts are not integral")]
    NonIntegral { sig: SemiRegularSig, chi: i64 },
}

pub type Result<T> = std::result::Result<T, DeriveError>;

/// Vertex, edge and face counts of a trivalent semi-regular tessellation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DerivedCounts {
    pub signature: SemiRegularSig,
    pub n_f: u64,
    pub n_e: u64,
    pub n_v: u64,
    /// Number of faces of each size.
    pub face_census: BTreeMap<u32, u64>,
    /// Whether `n_v / m_i` is integral for every entry of the signature.
    /// This is what a face 3-coloring with one color per signature slot
    /// needs.
    pub color_classes_integral: bool,
}

impl DerivedCounts {
    fn build(signature: SemiRegularSig, n_v: u64, face_census: BTreeMap<u32, u64>) -> Self {
        let n_f = face_census.values().sum();
        let color_classes_integral = signature.sizes().iter().all(|&m| n_v.is_multiple_of(m as u64));
        Self {
            signature,
            n_f,
            n_e: 3 * n_v / 2,
            n_v,
            face_census,
            color_classes_integral,
        }
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.n_v as i64 - self.n_e as i64 + self.n_f as i64
    }
}

fn census(entries: &[(u32, u64)]) -> BTreeMap<u32, u64> {
    let mut out = BTreeMap::new();
    for &(size, count) in entries {
        *out.entry(size).or_insert(0) += count;
    }
    out
}

/// Counts of the clipped tessellation `[2p,2p,q]`:
/// `n_f = F + V`, `n_e = 3pF/2`, `n_v = pF`.
pub fn clip_counts(p: u32, q: u32, chi: i64) -> Result<DerivedCounts> {
    let sig = RegularSig::new(p, q)?;
    let src = surface::regular_counts_chi(sig, chi)?;
    let signature = SemiRegularSig::new([2 * p, 2 * p, q])?;
    let n_v = p as u64 * src.faces;
    Ok(DerivedCounts::build(
        signature,
        n_v,
        census(&[(2 * p, src.faces), (q, src.vertices)]),
    ))
}

/// Counts of the incenter tessellation `[2p,2q,4]`:
/// `n_f = F + E + V`, `n_e = 3pF`, `n_v = 2pF`.
pub fn incenter_counts(p: u32, q: u32, chi: i64) -> Result<DerivedCounts> {
    let sig = RegularSig::new(p, q)?;
    let src = surface::regular_counts_chi(sig, chi)?;
    let signature = SemiRegularSig::new([2 * p, 2 * q, 4])?;
    let n_v = 2 * p as u64 * src.faces;
    Ok(DerivedCounts::build(
        signature,
        n_v,
        census(&[(2 * p, src.faces), (2 * q, src.vertices), (4, src.edges)]),
    ))
}

/// Counts of a vertex-transitive `[m1,m2,m3]` tessellation from the Euler
/// characteristic alone: `n_v = chi / (1/m1 + 1/m2 + 1/m3 - 1/2)`.
///
/// Returned only if `n_v`, `n_e` and the number of faces of every distinct
/// size are positive integers. Faces of size `s` number
/// `n_v * mult(s) / s`, where `mult(s)` is how often `s` occurs in the
/// signature. Whether each slot on its own is integral is reported in
/// [`DerivedCounts::color_classes_integral`].
pub fn semiregular_counts_direct(sig: SemiRegularSig, chi: i64) -> Result<DerivedCounts> {
    let non_integral = DeriveError::NonIntegral { sig, chi };
    let [a, b, c] = sig.sizes().map(|x| x as i128);
    let den = 2 * (a * b + b * c + c * a) - a * b * c;
    let num = chi as i128 * 2 * a * b * c;
    if den >= 0 || chi >= 0 || num % den != 0 {
        return Err(non_integral);
    }
    let n_v = num / den;
    if n_v <= 0 || n_v % 2 != 0 {
        return Err(non_integral);
    }
    let mut mult: BTreeMap<u32, u64> = BTreeMap::new();
    for m in sig.sizes() {
        *mult.entry(m).or_insert(0) += 1;
    }
    let mut faces = BTreeMap::new();
    for (&size, &k) in &mult {
        let total = n_v as u64 * k;
        if !total.is_multiple_of(size as u64) {
            return Err(non_integral);
        }
        faces.insert(size, total / size as u64);
    }
    Ok(DerivedCounts::build(sig, n_v as u64, faces))
}

fn check_regular(c: &SurfaceComplex, p: u32, q: u32) -> Result<()> {
    RegularSig::new(p, q)?;
    let not_regular = |reason: String| DeriveError::NotRegular { p, q, reason };
    if let Some((f, face)) = c.faces().iter().enumerate().find(|(_, f)| f.len() != p as usize) {
        return Err(not_regular(format!("face {f} has {} sides", face.len())));
    }
    if let Some((v, d)) = c
        .vertex_degrees()
        .into_iter()
        .enumerate()
        .find(|&(_, d)| d != q as usize)
    {
        return Err(not_regular(format!("vertex {v} has degree {d}")));
    }
    Ok(())
}

/// Per-face offsets into a flat per-slot numbering.
fn slot_offsets(c: &SurfaceComplex) -> (Vec<usize>, usize) {
    let mut offsets = Vec::with_capacity(c.face_count());
    let mut total = 0;
    for face in c.faces() {
        offsets.push(total);
        total += face.len();
    }
    (offsets, total)
}

/// Explicit clipping of a `{p,q}` complex.
///
/// New vertices are the edge ends of the source (id `2e + end`). Edge `e`
/// keeps its id as the truncated edge; corner `k` (flat corner numbering)
/// becomes edge `E + k`. Faces are the source faces, now `2p`-gons, in source
/// order, followed by one `q`-gon per source vertex in link order.
pub fn clip_complex(c: &SurfaceComplex, p: u32, q: u32) -> Result<SurfaceComplex> {
    check_regular(c, p, q)?;
    let e_count = c.edge_count();
    let (offsets, corner_count) = slot_offsets(c);
    let corner_id = |r: SlotRef| offsets[r.face] + r.slot;

    let mut edges: Vec<[usize; 2]> = (0..e_count).map(|e| [2 * e, 2 * e + 1]).collect();
    edges.resize(e_count + corner_count, [0, 0]);
    for (f, face) in c.faces().iter().enumerate() {
        for i in 0..face.len() {
            let r = SlotRef { face: f, slot: i };
            let [x, y] = c.corner_ends(r);
            edges[e_count + corner_id(r)] = [x.index(), y.index()];
        }
    }

    let mut faces: Vec<Vec<Slot>> = Vec::with_capacity(c.face_count() + c.vertex_count());
    for (f, face) in c.faces().iter().enumerate() {
        let mut out = Vec::with_capacity(2 * face.len());
        for (i, s) in face.iter().enumerate() {
            out.push(Slot::new(s.edge, s.dir));
            out.push(Slot::fwd(e_count + corner_id(SlotRef { face: f, slot: i })));
        }
        faces.push(out);
    }
    for link in c.vertex_links()? {
        let face = link
            .steps
            .iter()
            .map(|step| {
                let [x, _] = c.corner_ends(step.corner);
                // corner edges run from the head end to the following tail end
                let dir = if step.exit == x { -1 } else { 1 };
                Slot::new(e_count + corner_id(step.corner), dir)
            })
            .collect();
        faces.push(face);
    }
    Ok(SurfaceComplex::new(
        c.orientable(),
        c.genus(),
        2 * e_count,
        edges,
        faces,
    )?)
}

/// Explicit incenter subdivision of a `{p,q}` complex.
///
/// New vertices are flags `(face, slot, end)` with id `2 * slot_id + end`,
/// where end 0 sits at the tail of the slot and end 1 at its head. Edges are
/// numbered slot edges first (one per slot), then corner edges (one per
/// corner), then cross edges (one per source edge end, id
/// `2 * slot_count + 2e + end`). Faces are the `2p`-gons in source face
/// order, then the `4`-gons in source edge order, then the `2q`-gons in link
/// order.
pub fn incenter_complex(c: &SurfaceComplex, p: u32, q: u32) -> Result<SurfaceComplex> {
    check_regular(c, p, q)?;
    let (offsets, slot_count) = slot_offsets(c);
    let sid = |r: SlotRef| offsets[r.face] + r.slot;
    let flag = |r: SlotRef, end: usize| 2 * sid(r) + end;
    // flag of slot `r` at source edge end `x`
    let flag_at = |r: SlotRef, x: surface::EdgeEnd| {
        if c.slot(r).tail() == x {
            flag(r, 0)
        } else {
            flag(r, 1)
        }
    };
    let slot_edge = |r: SlotRef| sid(r);
    let corner_edge = |r: SlotRef| slot_count + sid(r);
    let cross_edge = |x: surface::EdgeEnd| 2 * slot_count + x.index();

    let mut edges = vec![[0usize; 2]; 2 * slot_count + 2 * c.edge_count()];
    for (f, face) in c.faces().iter().enumerate() {
        for i in 0..face.len() {
            let r = SlotRef { face: f, slot: i };
            edges[slot_edge(r)] = [flag(r, 0), flag(r, 1)];
            edges[corner_edge(r)] = [flag(r, 1), flag(c.next_slot(r), 0)];
        }
    }
    for e in 0..c.edge_count() {
        let [a, b] = c.edge_slots(e);
        for end in 0..2u8 {
            let x = surface::EdgeEnd { edge: e, end };
            edges[cross_edge(x)] = [flag_at(a, x), flag_at(b, x)];
        }
    }

    let mut faces: Vec<Vec<Slot>> =
        Vec::with_capacity(c.face_count() + c.edge_count() + c.vertex_count());
    for (f, face) in c.faces().iter().enumerate() {
        let mut out = Vec::with_capacity(2 * face.len());
        for i in 0..face.len() {
            let r = SlotRef { face: f, slot: i };
            out.push(Slot::fwd(slot_edge(r)));
            out.push(Slot::fwd(corner_edge(r)));
        }
        faces.push(out);
    }
    for e in 0..c.edge_count() {
        let [a, b] = c.edge_slots(e);
        let (x0, x1) = (
            surface::EdgeEnd { edge: e, end: 0 },
            surface::EdgeEnd { edge: e, end: 1 },
        );
        // a: x0 -> x1, cross at x1 a -> b, b: x1 -> x0, cross at x0 b -> a
        let a_dir = if c.slot(a).dir > 0 { 1 } else { -1 };
        let b_dir = if c.slot(b).dir > 0 { -1 } else { 1 };
        faces.push(vec![
            Slot::new(slot_edge(a), a_dir),
            Slot::fwd(cross_edge(x1)),
            Slot::new(slot_edge(b), b_dir),
            Slot::rev(cross_edge(x0)),
        ]);
    }
    for link in c.vertex_links()? {
        let mut out = Vec::with_capacity(2 * link.steps.len());
        for step in &link.steps {
            let r = step.corner;
            let [head, _] = c.corner_ends(r);
            let (corner_dir, owner) = if step.exit == head {
                (-1, r)
            } else {
                (1, c.next_slot(r))
            };
            out.push(Slot::new(corner_edge(r), corner_dir));
            let [first, _] = c.edge_slots(step.exit.edge);
            out.push(Slot::new(cross_edge(step.exit), if owner == first { 1 } else { -1 }));
        }
        faces.push(out);
    }
    Ok(SurfaceComplex::new(
        c.orientable(),
        c.genus(),
        2 * slot_count,
        edges,
        faces,
    )?)
}

/// Derivation used to build an explicit complex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Derivation {
    Clip,
    Incenter,
}

/// Explicit complex for `sig` on the given surface, when one is reachable
/// by deriving the fundamental polygon `{P,P}` (`P = 4g` orientable,
/// `P = 2g` non-orientable): incenter gives `[4,2P,2P]`, clipping gives
/// `[P,2P,2P]`. Returns `None` for every other signature.
pub fn explicit_complex(
    sig: SemiRegularSig,
    genus: u32,
    orientable: bool,
) -> Option<Result<(Derivation, SurfaceComplex)>> {
    crate::hypgeo::check_genus(genus, orientable).ok()?;
    let p = if orientable { 4 * genus } else { 2 * genus };
    let key = sig.normalized().sizes();
    let derivation = if key == [4, 2 * p, 2 * p] {
        Derivation::Incenter
    } else if key == [p, 2 * p, 2 * p] {
        Derivation::Clip
    } else {
        return None;
    };
    Some(derive_fundamental(genus, orientable, derivation).map(|c| (derivation, c)))
}

/// Clip or incenter of the fundamental polygon.
pub fn derive_fundamental(genus: u32, orientable: bool, derivation: Derivation) -> Result<SurfaceComplex> {
    let src = surface::fundamental_polygon(genus, orientable)?;
    let p = src.face(0).len() as u32;
    match derivation {
        Derivation::Clip => clip_complex(&src, p, p),
        Derivation::Incenter => incenter_complex(&src, p, p),
    }
}
