//! Combinatorial surface complexes.
//!
//! A complex is a set of vertices and edges plus faces given as cyclic
//! sequences of directed edge slots. Slot `(e, +1)` walks edge `e` from
//! `ends[0]` to `ends[1]`; `(e, -1)` walks it backwards. Every edge lies in
//! exactly two slots, so the faces glue into a closed surface, orientable or
//! not.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::hypgeo::{self, GeometryError, RegularSig};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SurfaceError {
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("open surface: edge {0} lies on only one face slot")]
    OpenSurface(usize),
    #[error("edge {0} lies on no face")]
    UnusedEdge(usize),
    #[error("edge {edge} lies on {count} face slots; a surface edge needs exactly two")]
    NonManifoldEdge { edge: usize, count: usize },
    #[error("face {0} is empty")]
    EmptyFace(usize),
    #[error("face {face} slot {slot} references unknown edge {edge}")]
    UnknownEdge { face: usize, slot: usize, edge: usize },
    #[error("edge {edge} references unknown vertex {vertex}")]
    UnknownVertex { edge: usize, vertex: usize },
    #[error("face {face} slot {slot}: direction must be +1 or -1, got {dir}")]
    BadDirection { face: usize, slot: usize, dir: i8 },
    #[error("face {face} is not a closed walk (breaks after slot {slot})")]
    OpenBoundary { face: usize, slot: usize },
    #[error("{what} ids must be 0..{len} in order (position {pos} holds {id})")]
    BadIds { what: &'static str, len: usize, pos: usize, id: usize },
    #[error("vertex {0} is not a manifold point (its link is not a single cycle)")]
    NonManifoldVertex(usize),
    #[error("vertex {0} has degree {1}; degenerate corners are not supported")]
    DegenerateVertex(usize, usize),
    #[error("complex is not connected")]
    Disconnected,
    #[error("euler characteristic {actual} does not match declared genus {genus} ({kind}, expected {expected})")]
    EulerMismatch { actual: i64, expected: i64, genus: u32, kind: &'static str },
    #[error("declared orientable={declared} but the face orientations say otherwise")]
    OrientabilityMismatch { declared: bool },
    #[error("{{{p},{q}}} does not tessellate this surface: counts are not integral")]
    NonIntegralCounts { p: u32, q: u32 },
    #[error("malformed complex document: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, SurfaceError>;

/// Directed occurrence of an edge in a face boundary.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Slot {
    pub edge: usize,
    pub dir: i8,
}

impl Slot {
    pub fn new(edge: usize, dir: i8) -> Self {
        Self { edge, dir }
    }

    pub fn fwd(edge: usize) -> Self {
        Self { edge, dir: 1 }
    }

    pub fn rev(edge: usize) -> Self {
        Self { edge, dir: -1 }
    }

    /// Edge end the walk leaves from.
    pub fn tail(&self) -> EdgeEnd {
        EdgeEnd {
            edge: self.edge,
            end: if self.dir > 0 { 0 } else { 1 },
        }
    }

    /// Edge end the walk arrives at.
    pub fn head(&self) -> EdgeEnd {
        EdgeEnd {
            edge: self.edge,
            end: if self.dir > 0 { 1 } else { 0 },
        }
    }
}

/// One end of an edge. Distinct from the vertex it sits on: a loop has two
/// ends at the same vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeEnd {
    pub edge: usize,
    pub end: u8,
}

impl EdgeEnd {
    pub fn index(&self) -> usize {
        2 * self.edge + self.end as usize
    }
}

/// Position in a face boundary.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SlotRef {
    pub face: usize,
    pub slot: usize,
}

/// Corner of face `face` between slot `slot` and the next one.
pub type Corner = SlotRef;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edge {
    pub id: usize,
    pub ends: [usize; 2],
}

/// One step of a vertex link: the corner, and the edge end through which
/// the walk continues to the next corner.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LinkStep {
    pub corner: Corner,
    pub exit: EdgeEnd,
}

/// Cyclic sequence of corners around a vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexLink {
    pub vertex: usize,
    pub steps: Vec<LinkStep>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ComplexDoc {
    orientable: bool,
    genus: u32,
    vertices: Vec<usize>,
    edges: Vec<Edge>,
    faces: Vec<Vec<Slot>>,
}

/// Closed combinatorial surface. Immutable once validated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceComplex {
    orientable: bool,
    genus: u32,
    vertex_count: usize,
    edges: Vec<[usize; 2]>,
    faces: Vec<Vec<Slot>>,
    /// The two slots of each edge, in (face, slot) order.
    edge_slots: Vec<[SlotRef; 2]>,
}

impl SurfaceComplex {
    /// Builds and validates a complex.
    pub fn new(
        orientable: bool,
        genus: u32,
        vertex_count: usize,
        edges: Vec<[usize; 2]>,
        faces: Vec<Vec<Slot>>,
    ) -> Result<Self> {
        for (e, ends) in edges.iter().enumerate() {
            for &v in ends {
                if v >= vertex_count {
                    return Err(SurfaceError::UnknownVertex { edge: e, vertex: v });
                }
            }
        }
        let mut occurrences: Vec<Vec<SlotRef>> = vec![Vec::new(); edges.len()];
        for (f, face) in faces.iter().enumerate() {
            if face.is_empty() {
                return Err(SurfaceError::EmptyFace(f));
            }
            for (i, s) in face.iter().enumerate() {
                if s.dir != 1 && s.dir != -1 {
                    return Err(SurfaceError::BadDirection { face: f, slot: i, dir: s.dir });
                }
                if s.edge >= edges.len() {
                    return Err(SurfaceError::UnknownEdge { face: f, slot: i, edge: s.edge });
                }
                occurrences[s.edge].push(SlotRef { face: f, slot: i });
            }
        }
        let mut edge_slots = Vec::with_capacity(edges.len());
        for (e, occ) in occurrences.iter().enumerate() {
            match occ.len() {
                2 => edge_slots.push([occ[0], occ[1]]),
                1 => return Err(SurfaceError::OpenSurface(e)),
                0 => return Err(SurfaceError::UnusedEdge(e)),
                n => return Err(SurfaceError::NonManifoldEdge { edge: e, count: n }),
            }
        }
        let complex = Self {
            orientable,
            genus,
            vertex_count,
            edges,
            faces,
            edge_slots,
        };
        for (f, face) in complex.faces.iter().enumerate() {
            for i in 0..face.len() {
                let here = complex.end_vertex(face[i].head());
                let next = complex.end_vertex(face[(i + 1) % face.len()].tail());
                if here != next {
                    return Err(SurfaceError::OpenBoundary { face: f, slot: i });
                }
            }
        }
        let links = complex.vertex_links()?;
        let mut seen = vec![false; vertex_count];
        for link in &links {
            if seen[link.vertex] {
                return Err(SurfaceError::NonManifoldVertex(link.vertex));
            }
            seen[link.vertex] = true;
        }
        if let Some(v) = seen.iter().position(|s| !s) {
            return Err(SurfaceError::NonManifoldVertex(v));
        }
        if !complex.is_connected() {
            return Err(SurfaceError::Disconnected);
        }
        let expected = hypgeo::euler_characteristic(genus, orientable);
        let actual = complex.euler_characteristic();
        if actual != expected {
            return Err(SurfaceError::EulerMismatch {
                actual,
                expected,
                genus,
                kind: if orientable { "orientable" } else { "non-orientable" },
            });
        }
        if complex.check_orientability() != orientable {
            return Err(SurfaceError::OrientabilityMismatch { declared: orientable });
        }
        Ok(complex)
    }

    /// Glues polygons along edges and identifies corners into vertices with
    /// a union-find over edge ends.
    pub fn from_gluing(
        orientable: bool,
        genus: u32,
        edge_count: usize,
        faces: Vec<Vec<Slot>>,
    ) -> Result<Self> {
        let mut uf = UnionFind::new(2 * edge_count);
        for (f, face) in faces.iter().enumerate() {
            for (i, s) in face.iter().enumerate() {
                if s.edge >= edge_count {
                    return Err(SurfaceError::UnknownEdge { face: f, slot: i, edge: s.edge });
                }
            }
            for i in 0..face.len() {
                let a = face[i].head().index();
                let b = face[(i + 1) % face.len()].tail().index();
                uf.union(a, b);
            }
        }
        let mut class_of_root: BTreeMap<usize, usize> = BTreeMap::new();
        let mut vertex_of_end = vec![0; 2 * edge_count];
        for (idx, v) in vertex_of_end.iter_mut().enumerate() {
            let root = uf.find(idx);
            let next = class_of_root.len();
            *v = *class_of_root.entry(root).or_insert(next);
        }
        let edges = (0..edge_count)
            .map(|e| [vertex_of_end[2 * e], vertex_of_end[2 * e + 1]])
            .collect();
        Self::new(orientable, genus, class_of_root.len(), edges, faces)
    }

    pub fn orientable(&self) -> bool {
        self.orientable
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn edges(&self) -> &[[usize; 2]] {
        &self.edges
    }

    pub fn faces(&self) -> &[Vec<Slot>] {
        &self.faces
    }

    pub fn face(&self, f: usize) -> &[Slot] {
        &self.faces[f]
    }

    pub fn slot(&self, r: SlotRef) -> Slot {
        self.faces[r.face][r.slot]
    }

    /// Both slots of an edge.
    pub fn edge_slots(&self, e: usize) -> [SlotRef; 2] {
        self.edge_slots[e]
    }

    /// The two faces on either side of an edge (equal when a face meets itself).
    pub fn edge_faces(&self, e: usize) -> [usize; 2] {
        let [a, b] = self.edge_slots[e];
        [a.face, b.face]
    }

    pub fn end_vertex(&self, end: EdgeEnd) -> usize {
        self.edges[end.edge][end.end as usize]
    }

    /// The slot following `r` in its face.
    pub fn next_slot(&self, r: SlotRef) -> SlotRef {
        SlotRef {
            face: r.face,
            slot: (r.slot + 1) % self.faces[r.face].len(),
        }
    }

    /// The slot preceding `r` in its face.
    pub fn prev_slot(&self, r: SlotRef) -> SlotRef {
        let len = self.faces[r.face].len();
        SlotRef {
            face: r.face,
            slot: (r.slot + len - 1) % len,
        }
    }

    /// Edge ends touched by a corner: the head of its slot and the tail of
    /// the following slot.
    pub fn corner_ends(&self, c: Corner) -> [EdgeEnd; 2] {
        [self.slot(c).head(), self.slot(self.next_slot(c)).tail()]
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertex_count as i64 - self.edges.len() as i64 + self.faces.len() as i64
    }

    pub fn face_sizes(&self) -> Vec<usize> {
        self.faces.iter().map(Vec::len).collect()
    }

    /// Face-size histogram.
    pub fn face_census(&self) -> BTreeMap<usize, usize> {
        let mut census = BTreeMap::new();
        for f in &self.faces {
            *census.entry(f.len()).or_insert(0) += 1;
        }
        census
    }

    pub fn vertex_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.vertex_count];
        for ends in &self.edges {
            deg[ends[0]] += 1;
            deg[ends[1]] += 1;
        }
        deg
    }

    /// Neighbours of each vertex in the 1-skeleton, sorted and deduplicated.
    pub fn vertex_adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertex_count];
        for &[a, b] in &self.edges {
            if a != b {
                adj[a].push(b);
                adj[b].push(a);
            }
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        adj
    }

    fn is_connected(&self) -> bool {
        if self.faces.is_empty() {
            return self.vertex_count <= 1;
        }
        let mut seen = vec![false; self.faces.len()];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        let mut count = 1;
        while let Some(f) = queue.pop_front() {
            for s in &self.faces[f] {
                for g in self.edge_faces(s.edge) {
                    if !seen[g] {
                        seen[g] = true;
                        count += 1;
                        queue.push_back(g);
                    }
                }
            }
        }
        count == self.faces.len()
    }

    /// Whether faces can be oriented so every edge is walked once in each
    /// direction. Breadth-first propagation of face signs with conflict
    /// detection.
    pub fn check_orientability(&self) -> bool {
        let mut sign: Vec<i8> = vec![0; self.faces.len()];
        for start in 0..self.faces.len() {
            if sign[start] != 0 {
                continue;
            }
            sign[start] = 1;
            let mut queue = VecDeque::from([start]);
            while let Some(f) = queue.pop_front() {
                for s in &self.faces[f] {
                    let [a, b] = self.edge_slots[s.edge];
                    let (da, db) = (self.slot(a).dir, self.slot(b).dir);
                    // need sign[a]*da == -sign[b]*db
                    for (this, this_dir, other, other_dir) in
                        [(a.face, da, b.face, db), (b.face, db, a.face, da)]
                    {
                        if sign[this] == 0 {
                            continue;
                        }
                        let want = -sign[this] * this_dir * other_dir;
                        if sign[other] == 0 {
                            sign[other] = want;
                            queue.push_back(other);
                        } else if sign[other] != want {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// Corners at each edge end.
    fn corners_at_ends(&self) -> Vec<Vec<Corner>> {
        let mut at = vec![Vec::with_capacity(2); 2 * self.edges.len()];
        for (f, face) in self.faces.iter().enumerate() {
            for i in 0..face.len() {
                let c = Corner { face: f, slot: i };
                for end in self.corner_ends(c) {
                    at[end.index()].push(c);
                }
            }
        }
        at
    }

    /// Vertex links, one cyclic corner sequence per vertex, ordered by the
    /// first corner they contain.
    pub fn vertex_links(&self) -> Result<Vec<VertexLink>> {
        let at = self.corners_at_ends();
        let corner_id = |c: Corner, offsets: &[usize]| offsets[c.face] + c.slot;
        let mut offsets = Vec::with_capacity(self.faces.len());
        let mut total = 0;
        for face in &self.faces {
            offsets.push(total);
            total += face.len();
        }
        let mut visited = vec![false; total];
        let mut links = Vec::new();
        for (f, face) in self.faces.iter().enumerate() {
            for i in 0..face.len() {
                let start = Corner { face: f, slot: i };
                if visited[corner_id(start, &offsets)] {
                    continue;
                }
                let [enter, _] = self.corner_ends(start);
                let vertex = self.end_vertex(enter);
                let mut steps = Vec::new();
                let mut corner = start;
                let mut from = enter;
                loop {
                    let id = corner_id(corner, &offsets);
                    if visited[id] {
                        if corner == start {
                            break;
                        }
                        return Err(SurfaceError::NonManifoldVertex(vertex));
                    }
                    visited[id] = true;
                    let [x, y] = self.corner_ends(corner);
                    if x == y {
                        return Err(SurfaceError::DegenerateVertex(vertex, 1));
                    }
                    let exit = if x == from { y } else { x };
                    steps.push(LinkStep { corner, exit });
                    let here = &at[exit.index()];
                    if here.len() != 2 {
                        return Err(SurfaceError::NonManifoldVertex(vertex));
                    }
                    let next = if here[0] == corner { here[1] } else { here[0] };
                    corner = next;
                    from = exit;
                }
                if steps.len() < 3 {
                    return Err(SurfaceError::DegenerateVertex(vertex, steps.len()));
                }
                links.push(VertexLink { vertex, steps });
            }
        }
        Ok(links)
    }

    /// Dual complex: one vertex per face, one edge per edge, one face per
    /// vertex. Dual edge `e` runs from the face of the first slot of `e` to
    /// the face of its second slot.
    pub fn dual(&self) -> Self {
        let links = self
            .vertex_links()
            .expect("validated complex has well-formed vertex links");
        let edges = (0..self.edges.len())
            .map(|e| {
                let [a, b] = self.edge_slots[e];
                [a.face, b.face]
            })
            .collect();
        let faces = links
            .iter()
            .map(|link| {
                link.steps
                    .iter()
                    .map(|step| {
                        // crossing from the slot of `step.corner` that owns the exit end
                        let c = step.corner;
                        let owner = if self.slot(c).head() == step.exit {
                            c
                        } else {
                            self.next_slot(c)
                        };
                        let first = self.edge_slots[step.exit.edge][0];
                        Slot::new(step.exit.edge, if owner == first { 1 } else { -1 })
                    })
                    .collect()
            })
            .collect();
        Self::new(self.orientable, self.genus, self.faces.len(), edges, faces)
            .expect("dual of a valid complex is valid")
    }

    /// Isomorphism as a generalized map (flag structure), which covers both
    /// orientable and non-orientable surfaces.
    pub fn is_isomorphic(&self, other: &Self) -> bool {
        if self.vertex_count != other.vertex_count
            || self.edges.len() != other.edges.len()
            || self.faces.len() != other.faces.len()
            || self.face_census() != other.face_census()
        {
            return false;
        }
        let a = FlagMap::new(self);
        let b = FlagMap::new(other);
        (0..b.len()).any(|target| a.maps_onto(&b, 0, target))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_doc()).expect("complex serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: ComplexDoc =
            serde_json::from_str(text).map_err(|e| SurfaceError::Parse(e.to_string()))?;
        Self::from_doc(doc)
    }

    fn to_doc(&self) -> ComplexDoc {
        ComplexDoc {
            orientable: self.orientable,
            genus: self.genus,
            vertices: (0..self.vertex_count).collect(),
            edges: self
                .edges
                .iter()
                .enumerate()
                .map(|(id, &ends)| Edge { id, ends })
                .collect(),
            faces: self.faces.clone(),
        }
    }

    fn from_doc(doc: ComplexDoc) -> Result<Self> {
        for (pos, &id) in doc.vertices.iter().enumerate() {
            if id != pos {
                return Err(SurfaceError::BadIds { what: "vertex", len: doc.vertices.len(), pos, id });
            }
        }
        for (pos, e) in doc.edges.iter().enumerate() {
            if e.id != pos {
                return Err(SurfaceError::BadIds { what: "edge", len: doc.edges.len(), pos, id: e.id });
            }
        }
        Self::new(
            doc.orientable,
            doc.genus,
            doc.vertices.len(),
            doc.edges.into_iter().map(|e| e.ends).collect(),
            doc.faces,
        )
    }
}

impl Serialize for SurfaceComplex {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_doc().serialize(s)
    }
}

impl<'de> Deserialize<'de> for SurfaceComplex {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let doc = ComplexDoc::deserialize(d)?;
        Self::from_doc(doc).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for SurfaceComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} surface of genus {}: V={} E={} F={}",
            if self.orientable { "orientable" } else { "non-orientable" },
            self.genus,
            self.vertex_count,
            self.edges.len(),
            self.faces.len()
        )
    }
}

/// Flags `(face, slot, end)` with the three generalized-map involutions.
struct FlagMap {
    offsets: Vec<usize>,
    alpha: Vec<[usize; 3]>,
}

impl FlagMap {
    fn new(c: &SurfaceComplex) -> Self {
        let mut offsets = Vec::with_capacity(c.faces.len());
        let mut total = 0;
        for face in &c.faces {
            offsets.push(total);
            total += 2 * face.len();
        }
        let id = |r: SlotRef, end: usize| offsets[r.face] + 2 * r.slot + end;
        let mut alpha = vec![[0; 3]; total];
        for (f, face) in c.faces.iter().enumerate() {
            for i in 0..face.len() {
                let r = SlotRef { face: f, slot: i };
                for end in 0..2 {
                    let me = id(r, end);
                    let a0 = id(r, 1 - end);
                    let a1 = if end == 1 { id(c.next_slot(r), 0) } else { id(c.prev_slot(r), 1) };
                    let s = c.slot(r);
                    let edge_end = if s.dir > 0 { end } else { 1 - end };
                    let [x, y] = c.edge_slots[s.edge];
                    let other = if x == r { y } else { x };
                    let os = c.slot(other);
                    let other_end = if os.dir > 0 { edge_end } else { 1 - edge_end };
                    let a2 = id(other, other_end);
                    alpha[me] = [a0, a1, a2];
                }
            }
        }
        Self { offsets, alpha }
    }

    fn len(&self) -> usize {
        self.alpha.len()
    }

    fn maps_onto(&self, other: &Self, root: usize, target: usize) -> bool {
        let _ = &self.offsets;
        let mut image = vec![usize::MAX; self.len()];
        let mut used = vec![false; other.len()];
        image[root] = target;
        used[target] = true;
        let mut stack = vec![root];
        while let Some(x) = stack.pop() {
            for k in 0..3 {
                let y = self.alpha[x][k];
                let want = other.alpha[image[x]][k];
                if image[y] == usize::MAX {
                    if used[want] {
                        return false;
                    }
                    image[y] = want;
                    used[want] = true;
                    stack.push(y);
                } else if image[y] != want {
                    return false;
                }
            }
        }
        image.iter().all(|&i| i != usize::MAX)
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}

/// Fundamental polygon of the closed surface.
///
/// Orientable genus `g`: a `4g`-gon with opposite sides identified
/// (`a1 .. a2g a1^-1 .. a2g^-1`), a `{4g,4g}` complex with one face and one
/// vertex. Non-orientable genus `g`: a `2g`-gon with word `a1 a1 a2 a2 ..`,
/// a `{2g,2g}` complex.
pub fn fundamental_polygon(genus: u32, orientable: bool) -> Result<SurfaceComplex> {
    hypgeo::check_genus(genus, orientable)?;
    let g = genus as usize;
    let face: Vec<Slot> = if orientable {
        (0..2 * g)
            .map(Slot::fwd)
            .chain((0..2 * g).map(Slot::rev))
            .collect()
    } else {
        (0..g).flat_map(|e| [Slot::fwd(e), Slot::fwd(e)]).collect()
    };
    let edge_count = if orientable { 2 * g } else { g };
    SurfaceComplex::from_gluing(orientable, genus, edge_count, vec![face])
}

/// Face, edge and vertex counts of a `{p,q}` tessellation of a closed surface.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegularCounts {
    pub faces: u64,
    pub edges: u64,
    pub vertices: u64,
}

/// `F = -2 chi q / D`, `E = -chi p q / D`, `V = -2 chi p / D` with
/// `D = pq - 2p - 2q`; only integral positive solutions are returned.
pub fn regular_counts(p: u32, q: u32, genus: u32, orientable: bool) -> Result<RegularCounts> {
    hypgeo::check_genus(genus, orientable)?;
    regular_counts_chi(RegularSig::new(p, q)?, hypgeo::euler_characteristic(genus, orientable))
}

pub fn regular_counts_chi(sig: RegularSig, chi: i64) -> Result<RegularCounts> {
    let (p, q) = (sig.p() as i64, sig.q() as i64);
    let d = sig.defect();
    let non_integral = SurfaceError::NonIntegralCounts { p: sig.p(), q: sig.q() };
    if chi >= 0 {
        return Err(non_integral);
    }
    let nums = [-2 * chi * q, -chi * p * q, -2 * chi * p];
    if nums.iter().any(|n| n % d != 0) {
        return Err(non_integral);
    }
    let [faces, edges, vertices] = nums.map(|n| (n / d) as u64);
    debug_assert_eq!(q as u64 * vertices, 2 * edges);
    debug_assert_eq!(p as u64 * faces, 2 * edges);
    Ok(RegularCounts { faces, edges, vertices })
}
