//! Face 3-colorings of trivalent complexes and the induced two-body checks.
//!
//! An edge takes the color absent from its two faces. Green edges carry
//! `XX` checks, blue edges `YY` and red edges `ZZ`. Round `r` measures the
//! green, blue or red checks for `r mod 3 = 0, 1, 2`.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::surface::SurfaceComplex;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Color {
    R,
    G,
    B,
}

impl Color {
    pub const ALL: [Color; 3] = [Color::R, Color::G, Color::B];

    pub fn index(self) -> usize {
        self as usize
    }

    /// The color different from both arguments, which must differ.
    pub fn third(a: Color, b: Color) -> Color {
        debug_assert_ne!(a, b);
        Color::ALL[3 - a.index() - b.index()]
    }

    /// Pauli type of checks on edges of this color.
    pub fn check_pauli(self) -> PauliKind {
        match self {
            Color::G => PauliKind::X,
            Color::B => PauliKind::Y,
            Color::R => PauliKind::Z,
        }
    }

    /// Color whose checks are measured in round `r`.
    pub fn of_round(r: usize) -> Color {
        match r % 3 {
            0 => Color::G,
            1 => Color::B,
            _ => Color::R,
        }
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Color::R => "R",
            Color::G => "G",
            Color::B => "B",
        })
    }
}

/// Single-qubit Pauli label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PauliKind {
    X,
    Y,
    Z,
}

impl PauliKind {
    pub fn bits(self) -> (bool, bool) {
        match self {
            PauliKind::X => (true, false),
            PauliKind::Y => (true, true),
            PauliKind::Z => (false, true),
        }
    }

    fn pair_label(self) -> &'static str {
        match self {
            PauliKind::X => "XX",
            PauliKind::Y => "YY",
            PauliKind::Z => "ZZ",
        }
    }
}

/// Two-body check on an edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Check {
    pub edge: usize,
    pub color: Color,
    pub pauli: PauliKind,
    pub qubits: [usize; 2],
}

#[derive(Serialize)]
struct CheckDoc {
    color: String,
    pauli: &'static str,
    qubits: [usize; 2],
}

/// First violated condition of a color-code tiling.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ColoringError {
    #[error("vertex {vertex} has degree {degree}; a color-code tiling is trivalent")]
    NotTrivalent { vertex: usize, degree: usize },
    #[error("face {face} has odd size {size}")]
    OddFace { face: usize, size: usize },
    #[error("face {face} meets itself along edge {edge}, so no proper face coloring exists")]
    SelfAdjacent { face: usize, edge: usize },
    #[error("face adjacency graph is not 3-colorable")]
    NotThreeColorable,
}

/// Proper face 3-coloring with the induced edge colors and checks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColorAssignment {
    n: usize,
    face_color: Vec<Color>,
    edge_color: Vec<Color>,
    checks: Vec<Check>,
    face_qubits: Vec<Vec<usize>>,
}

impl ColorAssignment {
    /// Number of qubits (vertices).
    pub fn qubit_count(&self) -> usize {
        self.n
    }

    pub fn face_colors(&self) -> &[Color] {
        &self.face_color
    }

    pub fn edge_colors(&self) -> &[Color] {
        &self.edge_color
    }

    /// All checks in edge order.
    pub fn checks(&self) -> &[Check] {
        &self.checks
    }

    /// Vertices on the boundary of each face, in boundary order.
    pub fn face_qubits(&self) -> &[Vec<usize>] {
        &self.face_qubits
    }

    /// Number of faces of each color, indexed R, G, B.
    pub fn class_sizes(&self) -> [usize; 3] {
        let mut out = [0; 3];
        for c in &self.face_color {
            out[c.index()] += 1;
        }
        out
    }

    /// Pauli type of the face stabilizer of face `f`: green faces are
    /// X-type, blue Y-type, red Z-type.
    pub fn face_pauli(&self, f: usize) -> PauliKind {
        self.face_color[f].check_pauli()
    }

    /// Checks as JSON `[{"color","pauli","qubits"}]`.
    pub fn checks_json(&self) -> String {
        checks_to_json(&self.checks)
    }
}

pub fn checks_to_json(checks: &[Check]) -> String {
    let docs: Vec<CheckDoc> = checks
        .iter()
        .map(|c| CheckDoc {
            color: c.color.to_string(),
            pauli: c.pauli.pair_label(),
            qubits: c.qubits,
        })
        .collect();
    serde_json::to_string_pretty(&docs).expect("checks serialize")
}

fn structural_check(c: &SurfaceComplex) -> Result<(), ColoringError> {
    if let Some((vertex, &degree)) = c.vertex_degrees().iter().enumerate().find(|(_, &d)| d != 3) {
        return Err(ColoringError::NotTrivalent { vertex, degree });
    }
    if let Some((face, f)) = c.faces().iter().enumerate().find(|(_, f)| f.len() % 2 == 1) {
        return Err(ColoringError::OddFace { face, size: f.len() });
    }
    for e in 0..c.edge_count() {
        let [a, b] = c.edge_faces(e);
        if a == b {
            return Err(ColoringError::SelfAdjacent { face: a, edge: e });
        }
    }
    Ok(())
}

/// Whether `c` is trivalent with even faces and a properly 3-colorable face
/// adjacency graph. The error names the first violated condition.
pub fn is_color_code_tiling(c: &SurfaceComplex) -> Result<(), ColoringError> {
    three_color(c).map(|_| ())
}

/// Face neighbours in boundary order, deduplicated.
fn face_neighbours(c: &SurfaceComplex) -> Vec<Vec<usize>> {
    c.faces()
        .iter()
        .enumerate()
        .map(|(f, face)| {
            let mut out: Vec<usize> = Vec::with_capacity(face.len());
            for s in face {
                let [a, b] = c.edge_faces(s.edge);
                let g = if a == f { b } else { a };
                if !out.contains(&g) {
                    out.push(g);
                }
            }
            out
        })
        .collect()
}

/// Deterministic proper face 3-coloring.
///
/// Faces are visited in breadth-first order from face 0, neighbours in
/// boundary order, and colors are tried in the order R, G, B with
/// backtracking. Face 0 therefore gets R.
pub fn three_color(c: &SurfaceComplex) -> Result<ColorAssignment, ColoringError> {
    structural_check(c)?;
    let nbrs = face_neighbours(c);
    let nf = c.face_count();

    let mut order = Vec::with_capacity(nf);
    let mut seen = vec![false; nf];
    for start in 0..nf {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(f) = queue.pop_front() {
            order.push(f);
            for &g in &nbrs[f] {
                if !seen[g] {
                    seen[g] = true;
                    queue.push_back(g);
                }
            }
        }
    }

    let mut color: Vec<Option<Color>> = vec![None; nf];
    let mut next_try = vec![0usize; nf];
    let mut pos = 0;
    while pos < nf {
        let f = order[pos];
        let mut placed = false;
        while next_try[pos] < 3 {
            let cand = Color::ALL[next_try[pos]];
            next_try[pos] += 1;
            if nbrs[f].iter().all(|&g| color[g] != Some(cand)) {
                color[f] = Some(cand);
                placed = true;
                break;
            }
        }
        if placed {
            pos += 1;
        } else {
            color[f] = None;
            next_try[pos] = 0;
            if pos == 0 {
                return Err(ColoringError::NotThreeColorable);
            }
            pos -= 1;
            color[order[pos]] = None;
        }
    }
    let face_color: Vec<Color> = color.into_iter().map(|c| c.expect("all faces colored")).collect();

    let mut edge_color = Vec::with_capacity(c.edge_count());
    let mut checks = Vec::with_capacity(c.edge_count());
    for (e, &ends) in c.edges().iter().enumerate() {
        let [a, b] = c.edge_faces(e);
        let col = Color::third(face_color[a], face_color[b]);
        edge_color.push(col);
        checks.push(Check {
            edge: e,
            color: col,
            pauli: col.check_pauli(),
            qubits: ends,
        });
    }
    let face_qubits = c
        .faces()
        .iter()
        .map(|face| face.iter().map(|s| c.end_vertex(s.tail())).collect())
        .collect();
    Ok(ColorAssignment {
        n: c.vertex_count(),
        face_color,
        edge_color,
        checks,
        face_qubits,
    })
}

/// Checks measured in round `r`.
pub fn checks_for_round(assign: &ColorAssignment, r: usize) -> Vec<Check> {
    let col = Color::of_round(r);
    assign.checks.iter().copied().filter(|c| c.color == col).collect()
}
