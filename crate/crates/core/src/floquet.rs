//! Symplectic Pauli algebra, instantaneous stabilizer groups and logical
//! operators of the colored-check schedule.
//!
//! Paulis are bit vectors over GF(2)^{2n} with phases dropped. A stabilizer
//! group is stored in fully reduced row-echelon form, which is canonical, so
//! two groups are equal exactly when their row lists are equal.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coloring::{checks_for_round, three_color, ColorAssignment, PauliKind};
use crate::derive;
use crate::geodist;
use crate::hypgeo::{self, SemiRegularSig};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FloquetError {
    #[error("schedule needs at least 6 rounds, got {0}")]
    TooFewRounds(usize),
    #[error("no period-3 steady state within {0} rounds")]
    NotSteady(usize),
    #[error("n = {n} exceeds the exact-distance bound {max_n}; use the geometric estimator")]
    BoundExceeded { n: usize, max_n: usize },
    #[error("the steady code encodes no logical qubits")]
    NoLogicals,
    #[error("no logical operator of weight <= {0}; raise the weight bound or use the geometric estimator")]
    WeightBoundExceeded(usize),
    #[error("logical count mismatch: genus rule gives k = {rule}, stabilizer rank gives k = {rank}")]
    LogicalCountMismatch { rule: usize, rank: usize },
    #[error("no explicit colorable complex with n <= {max_n} for {sig} on this surface; use the geometric estimator")]
    NoExplicitComplex { sig: SemiRegularSig, max_n: usize },
}

pub type Result<T> = std::result::Result<T, FloquetError>;

fn words(n: usize) -> usize {
    n.div_ceil(64)
}

/// Pauli operator on `n` qubits, phase ignored. Bits are laid out as the X
/// part followed by the Z part, each padded to whole words.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PauliOperator {
    n: usize,
    bits: Vec<u64>,
}

impl PauliOperator {
    pub fn identity(n: usize) -> Self {
        Self {
            n,
            bits: vec![0; 2 * words(n)],
        }
    }

    /// Product of single-qubit Paulis on the given qubits.
    pub fn from_sparse(n: usize, terms: &[(usize, PauliKind)]) -> Self {
        let mut p = Self::identity(n);
        for &(q, kind) in terms {
            p.mul_single(q, kind);
        }
        p
    }

    /// Same Pauli type on every listed qubit.
    pub fn uniform(n: usize, qubits: &[usize], kind: PauliKind) -> Self {
        let mut p = Self::identity(n);
        for &q in qubits {
            p.mul_single(q, kind);
        }
        p
    }

    fn mul_single(&mut self, q: usize, kind: PauliKind) {
        assert!(q < self.n, "qubit {q} out of range for n = {}", self.n);
        let w = words(self.n);
        let (x, z) = kind.bits();
        if x {
            self.bits[q / 64] ^= 1 << (q % 64);
        }
        if z {
            self.bits[w + q / 64] ^= 1 << (q % 64);
        }
    }

    pub fn qubit_count(&self) -> usize {
        self.n
    }

    pub fn x_bit(&self, q: usize) -> bool {
        self.bits[q / 64] >> (q % 64) & 1 == 1
    }

    pub fn z_bit(&self, q: usize) -> bool {
        self.bits[words(self.n) + q / 64] >> (q % 64) & 1 == 1
    }

    pub fn is_identity(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    pub fn weight(&self) -> usize {
        let w = words(self.n);
        (0..w)
            .map(|i| (self.bits[i] | self.bits[w + i]).count_ones() as usize)
            .sum()
    }

    /// Symplectic form `x1.z2 + z1.x2` is zero.
    pub fn commutes_with(&self, other: &Self) -> bool {
        debug_assert_eq!(self.n, other.n);
        let w = words(self.n);
        let mut acc = 0u64;
        for i in 0..w {
            acc ^= (self.bits[i] & other.bits[w + i]) ^ (self.bits[w + i] & other.bits[i]);
        }
        acc.count_ones().is_multiple_of(2)
    }

    /// Product up to phase.
    pub fn mul_assign(&mut self, other: &Self) {
        for (a, b) in self.bits.iter_mut().zip(&other.bits) {
            *a ^= b;
        }
    }

    pub fn product(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.mul_assign(other);
        out
    }

    fn first_set_bit(&self) -> Option<usize> {
        self.bits
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, &w)| 64 * i + w.trailing_zeros() as usize)
    }

    fn bit(&self, pos: usize) -> bool {
        self.bits[pos / 64] >> (pos % 64) & 1 == 1
    }

    /// `x` and `z` as 0/1 vectors of length `n`.
    pub fn to_bit_rows(&self) -> (Vec<u8>, Vec<u8>) {
        (
            (0..self.n).map(|q| self.x_bit(q) as u8).collect(),
            (0..self.n).map(|q| self.z_bit(q) as u8).collect(),
        )
    }
}

impl fmt::Debug for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for q in 0..self.n {
            let c = match (self.x_bit(q), self.z_bit(q)) {
                (false, false) => 'I',
                (true, false) => 'X',
                (true, true) => 'Y',
                (false, true) => 'Z',
            };
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// Stabilizer group in fully reduced row-echelon form, rows ordered by
/// pivot.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilizerGroup {
    n: usize,
    rows: Vec<PauliOperator>,
    pivots: Vec<usize>,
}

/// JSON bit-matrix form of a set of Paulis: `x[i][q]`, `z[i][q]` in {0,1}.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BitMatrix {
    pub n: usize,
    pub x: Vec<Vec<u8>>,
    pub z: Vec<Vec<u8>>,
}

impl BitMatrix {
    pub fn from_paulis(n: usize, ops: &[PauliOperator]) -> Self {
        let (x, z) = ops.iter().map(PauliOperator::to_bit_rows).unzip();
        Self { n, x, z }
    }
}

impl StabilizerGroup {
    pub fn new(n: usize) -> Self {
        Self {
            n,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn from_generators<'a>(n: usize, gens: impl IntoIterator<Item = &'a PauliOperator>) -> Self {
        let mut g = Self::new(n);
        for p in gens {
            g.insert(p.clone());
        }
        g
    }

    pub fn qubit_count(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn generators(&self) -> &[PauliOperator] {
        &self.rows
    }

    fn reduce(&self, p: &mut PauliOperator) {
        for (row, &piv) in self.rows.iter().zip(&self.pivots) {
            if p.bit(piv) {
                p.mul_assign(row);
            }
        }
    }

    /// Whether `p` lies in the row space.
    pub fn contains(&self, p: &PauliOperator) -> bool {
        let mut v = p.clone();
        self.reduce(&mut v);
        v.is_identity()
    }

    /// Adds `p` if independent. Returns whether the rank grew.
    pub fn insert(&mut self, mut p: PauliOperator) -> bool {
        self.reduce(&mut p);
        let Some(piv) = p.first_set_bit() else {
            return false;
        };
        for row in &mut self.rows {
            if row.bit(piv) {
                row.mul_assign(&p);
            }
        }
        let at = self.pivots.partition_point(|&x| x < piv);
        self.rows.insert(at, p);
        self.pivots.insert(at, piv);
        true
    }

    /// Projective measurement of `check`, signs ignored.
    ///
    /// A commuting check is added if independent. Otherwise the first
    /// anticommuting generator is multiplied into every other anticommuting
    /// generator and then replaced by the check.
    pub fn measure(&mut self, check: &PauliOperator) {
        let anti: Vec<usize> = (0..self.rows.len())
            .filter(|&i| !self.rows[i].commutes_with(check))
            .collect();
        let Some((&first, rest)) = anti.split_first() else {
            self.insert(check.clone());
            return;
        };
        let g0 = self.rows[first].clone();
        for &i in rest {
            self.rows[i].mul_assign(&g0);
        }
        let kept: Vec<PauliOperator> = self
            .rows
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != first)
            .map(|(_, r)| r.clone())
            .collect();
        let mut rebuilt = Self::new(self.n);
        for r in kept {
            rebuilt.insert(r);
        }
        rebuilt.insert(check.clone());
        *self = rebuilt;
    }

    /// Whether every pair of generators commutes.
    pub fn is_abelian(&self) -> bool {
        self.rows
            .iter()
            .enumerate()
            .all(|(i, a)| self.rows[i + 1..].iter().all(|b| a.commutes_with(b)))
    }

    /// Whether `p` commutes with every generator.
    pub fn centralizes(&self, p: &PauliOperator) -> bool {
        self.rows.iter().all(|r| r.commutes_with(p))
    }

    /// Logical operator test: commutes with the group but is not in it.
    pub fn is_logical(&self, p: &PauliOperator) -> bool {
        self.centralizes(p) && !self.contains(p)
    }

    pub fn to_bit_matrix(&self) -> BitMatrix {
        BitMatrix::from_paulis(self.n, &self.rows)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_bit_matrix()).expect("bit matrix serializes")
    }
}

/// `n - rank`.
pub fn logical_count(isg: &StabilizerGroup) -> usize {
    isg.qubit_count() - isg.rank()
}

/// Check operator of a colored edge.
pub fn check_operator(n: usize, check: &crate::coloring::Check) -> PauliOperator {
    PauliOperator::uniform(n, &check.qubits, check.pauli)
}

/// Face stabilizer of the color-appropriate type.
pub fn face_operator(assign: &ColorAssignment, f: usize) -> PauliOperator {
    PauliOperator::uniform(assign.qubit_count(), &assign.face_qubits()[f], assign.face_pauli(f))
}

/// Per-round stabilizer groups of the schedule, starting from the empty
/// group. `groups[r]` is the group after round `r`.
#[derive(Debug, Clone)]
pub struct Trajectory {
    pub groups: Vec<StabilizerGroup>,
    /// First round `r` with `groups[r] == groups[r - 3]`.
    pub steady_from: usize,
}

impl Trajectory {
    pub fn ranks(&self) -> Vec<usize> {
        self.groups.iter().map(StabilizerGroup::rank).collect()
    }

    /// The three steady-state groups with the round index they follow.
    pub fn steady_phases(&self) -> [(usize, &StabilizerGroup); 3] {
        let s = self.steady_from;
        [s, s + 1, s + 2].map(|r| (r, &self.groups[r]))
    }

    /// Number of logical qubits at steady state.
    pub fn logical_count(&self) -> usize {
        logical_count(&self.groups[self.steady_from])
    }
}

/// Runs the colored schedule for `rounds` rounds. Since the update of round
/// `r` depends only on `r mod 3`, the group is periodic from the first
/// round whose group equals the one three rounds earlier.
pub fn run_schedule(assign: &ColorAssignment, rounds: usize) -> Result<Trajectory> {
    if rounds < 6 {
        return Err(FloquetError::TooFewRounds(rounds));
    }
    let n = assign.qubit_count();
    let per_round: Vec<Vec<PauliOperator>> = (0..3)
        .map(|r| {
            checks_for_round(assign, r)
                .iter()
                .map(|c| check_operator(n, c))
                .collect()
        })
        .collect();
    let mut isg = StabilizerGroup::new(n);
    let mut groups = Vec::with_capacity(rounds + 2);
    let mut steady = None;
    let mut r = 0;
    while r < rounds || steady.is_some_and(|s| r < s + 3) {
        for check in &per_round[r % 3] {
            isg.measure(check);
            debug_assert!(isg.is_abelian());
        }
        groups.push(isg.clone());
        if steady.is_none() && r >= 3 && groups[r] == groups[r - 3] {
            steady = Some(r);
        }
        r += 1;
    }
    let steady_from = steady.ok_or(FloquetError::NotSteady(rounds))?;
    Ok(Trajectory { groups, steady_from })
}

/// Which supports the distance search enumerates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum SupportMode {
    /// Supports that induce a connected subgraph of the qubit graph.
    #[default]
    Connected,
    /// Every subset of qubits.
    Exhaustive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DistanceOptions {
    pub max_n: usize,
    pub max_weight: usize,
    pub supports: SupportMode,
    pub parallel: bool,
}

impl Default for DistanceOptions {
    fn default() -> Self {
        Self {
            max_n: 40,
            max_weight: 6,
            supports: SupportMode::Connected,
            parallel: true,
        }
    }
}

/// Minimum-weight logical found in one steady phase.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhaseDistance {
    pub round: usize,
    pub weight: usize,
    pub witness: PauliOperator,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceReport {
    pub d: usize,
    pub phases: Vec<PhaseDistance>,
}

/// Syndrome masks: bit `i` of `masks[q][kind]` is set when the single-qubit
/// Pauli `kind` on qubit `q` anticommutes with generator `i`.
struct SyndromeTable {
    masks: Vec<[Vec<u64>; 3]>,
    words: usize,
}

const KINDS: [PauliKind; 3] = [PauliKind::X, PauliKind::Y, PauliKind::Z];

impl SyndromeTable {
    fn new(isg: &StabilizerGroup) -> Self {
        let n = isg.qubit_count();
        let w = isg.rank().div_ceil(64).max(1);
        let masks = (0..n)
            .map(|q| {
                KINDS.map(|kind| {
                    let single = PauliOperator::from_sparse(n, &[(q, kind)]);
                    let mut m = vec![0u64; w];
                    for (i, g) in isg.generators().iter().enumerate() {
                        if !g.commutes_with(&single) {
                            m[i / 64] |= 1 << (i % 64);
                        }
                    }
                    m
                })
            })
            .collect();
        Self { masks, words: w }
    }
}

/// Searches all `3^w` labelings of a support for a logical operator.
fn search_support(
    isg: &StabilizerGroup,
    table: &SyndromeTable,
    support: &[usize],
) -> Option<PauliOperator> {
    let w = support.len();
    let mut labels = vec![0usize; w];
    let mut acc = vec![vec![0u64; table.words]; w + 1];
    // depth-first over labelings with running syndromes
    let mut depth = 0;
    loop {
        if depth == w {
            if acc[w].iter().all(|&x| x == 0) {
                let terms: Vec<(usize, PauliKind)> = support
                    .iter()
                    .zip(&labels)
                    .map(|(&q, &l)| (q, KINDS[l]))
                    .collect();
                let p = PauliOperator::from_sparse(isg.qubit_count(), &terms);
                if !isg.contains(&p) {
                    return Some(p);
                }
            }
            // advance
            loop {
                if depth == 0 {
                    return None;
                }
                depth -= 1;
                labels[depth] += 1;
                if labels[depth] < 3 {
                    break;
                }
                labels[depth] = 0;
            }
        }
        let q = support[depth];
        let (lo, hi) = acc.split_at_mut(depth + 1);
        for ((dst, &a), &m) in hi[0].iter_mut().zip(&lo[depth]).zip(&table.masks[q][labels[depth]]) {
            *dst = a ^ m;
        }
        depth += 1;
    }
}

/// Connected vertex sets of size `k` containing `root` as their smallest
/// vertex, each produced once (extension-set enumeration).
fn connected_sets_from(
    adj: &[Vec<usize>],
    root: usize,
    k: usize,
    visit: &mut dyn FnMut(&[usize]) -> bool,
) -> bool {
    fn extend(
        adj: &[Vec<usize>],
        root: usize,
        k: usize,
        current: &mut Vec<usize>,
        extension: Vec<usize>,
        visit: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        if current.len() == k {
            return visit(current);
        }
        let mut ext = extension;
        while let Some(w) = ext.pop() {
            let mut next_ext = ext.clone();
            for &u in &adj[w] {
                if u > root
                    && !current.contains(&u)
                    && !next_ext.contains(&u)
                    && u != w
                    && !current.iter().any(|&c| adj[c].contains(&u))
                {
                    next_ext.push(u);
                }
            }
            current.push(w);
            if extend(adj, root, k, current, next_ext, visit) {
                return true;
            }
            current.pop();
        }
        false
    }
    let ext: Vec<usize> = adj[root].iter().copied().filter(|&u| u > root).collect();
    let mut current = vec![root];
    extend(adj, root, k, &mut current, ext, visit)
}

/// All `k`-subsets with smallest element `root`.
fn subsets_from(n: usize, root: usize, k: usize, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
    fn rec(n: usize, k: usize, current: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if current.len() == k {
            return visit(current);
        }
        let start = current.last().map_or(0, |&x| x + 1);
        for v in start..n {
            if n - v < k - current.len() {
                break;
            }
            current.push(v);
            if rec(n, k, current, visit) {
                return true;
            }
            current.pop();
        }
        false
    }
    let mut current = vec![root];
    rec(n, k, &mut current, visit)
}

/// Minimum weight of a logical of a single stabilizer group, searching
/// supports of weight `1..=max_weight`.
pub fn group_distance(
    isg: &StabilizerGroup,
    adjacency: &[Vec<usize>],
    opts: &DistanceOptions,
) -> Option<PauliOperator> {
    let n = isg.qubit_count();
    let table = SyndromeTable::new(isg);
    for w in 1..=opts.max_weight.min(n) {
        let search_root = |root: usize| -> Option<PauliOperator> {
            let mut found = None;
            let mut visit = |support: &[usize]| -> bool {
                if let Some(p) = search_support(isg, &table, support) {
                    found = Some(p);
                    true
                } else {
                    false
                }
            };
            match opts.supports {
                SupportMode::Connected => connected_sets_from(adjacency, root, w, &mut visit),
                SupportMode::Exhaustive => subsets_from(n, root, w, &mut visit),
            };
            found
        };
        let hit = if opts.parallel {
            (0..n).into_par_iter().map(search_root).find_first(Option::is_some).flatten()
        } else {
            (0..n).map(search_root).find(Option::is_some).flatten()
        };
        if hit.is_some() {
            return hit;
        }
    }
    None
}

/// Exact distance: the minimum over the three steady phases of the
/// smallest logical weight.
pub fn exact_distance(
    assign: &ColorAssignment,
    adjacency: &[Vec<usize>],
    traj: &Trajectory,
    opts: &DistanceOptions,
) -> Result<DistanceReport> {
    let n = assign.qubit_count();
    if n > opts.max_n {
        return Err(FloquetError::BoundExceeded { n, max_n: opts.max_n });
    }
    if traj.logical_count() == 0 {
        return Err(FloquetError::NoLogicals);
    }
    let mut phases = Vec::with_capacity(3);
    for (round, isg) in traj.steady_phases() {
        let witness = group_distance(isg, adjacency, opts)
            .ok_or(FloquetError::WeightBoundExceeded(opts.max_weight))?;
        phases.push(PhaseDistance {
            round,
            weight: witness.weight(),
            witness,
        });
    }
    let d = phases.iter().map(|p| p.weight).min().expect("three phases");
    Ok(DistanceReport { d, phases })
}

/// Logical-qubit count from the genus: `2g` orientable, `g` non-orientable.
pub fn k_rule(genus: u32, orientable: bool) -> usize {
    if orientable {
        2 * genus as usize
    } else {
        genus as usize
    }
}

/// Provenance of a distance value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DSource {
    Exact,
    GeometricEstimate,
}

impl fmt::Display for DSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DSource::Exact => "exact",
            DSource::GeometricEstimate => "geometric_estimate",
        })
    }
}

/// `[[n,k,d]]` with provenance and derived ratios.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CodeParams {
    pub n: usize,
    pub k: usize,
    pub d: usize,
    pub d_source: DSource,
    pub k_n: f64,
    pub kd2_n: f64,
    pub d_n: f64,
}

impl CodeParams {
    pub fn new(n: usize, k: usize, d: usize, d_source: DSource) -> Self {
        let nf = n as f64;
        Self {
            n,
            k,
            d,
            d_source,
            k_n: k as f64 / nf,
            kd2_n: (k * d * d) as f64 / nf,
            d_n: d as f64 / nf,
        }
    }
}

impl fmt::Display for CodeParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{},{}]]", self.n, self.k, self.d)
    }
}

/// How `code_params` obtains the distance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DMode {
    /// Exact when an explicit colorable complex with `n <= max_n` exists,
    /// geometric otherwise.
    #[default]
    Auto,
    Exact,
    Geometric,
}

/// Knobs of [`code_params_with`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ParamOptions {
    pub d_mode: DMode,
    pub distance: DistanceOptions,
    pub rounds: usize,
    /// Largest explicit complex on which the genus rule for `k` is
    /// cross-checked against the stabilizer rank.
    pub rank_check_max_n: usize,
}

impl Default for ParamOptions {
    fn default() -> Self {
        Self {
            d_mode: DMode::Auto,
            distance: DistanceOptions::default(),
            rounds: 9,
            rank_check_max_n: 64,
        }
    }
}

/// Parameters with the distance provenance detail.
#[derive(Debug, Clone, PartialEq)]
pub struct ParamsReport {
    pub params: CodeParams,
    /// Estimator convention when the distance is geometric.
    pub convention_tag: Option<String>,
    /// Stabilizer-rank `k`, when an explicit complex was simulated.
    pub rank_k: Option<usize>,
}

/// Steady-state simulation of an explicit colored complex.
pub struct Simulation {
    pub assign: ColorAssignment,
    pub adjacency: Vec<Vec<usize>>,
    pub trajectory: Trajectory,
}

/// Colors `c` and runs the schedule.
pub fn simulate(c: &crate::surface::SurfaceComplex, rounds: usize) -> crate::Result<Simulation> {
    let assign = three_color(c)?;
    let trajectory = run_schedule(&assign, rounds)?;
    Ok(Simulation {
        assign,
        adjacency: c.vertex_adjacency(),
        trajectory,
    })
}

/// `[[n,k,d]]` of `sig` on the surface with default options.
pub fn code_params(sig: SemiRegularSig, genus: u32, orientable: bool, d_mode: DMode) -> crate::Result<CodeParams> {
    let opts = ParamOptions { d_mode, ..ParamOptions::default() };
    Ok(code_params_with(sig, genus, orientable, &opts)?.params)
}

/// `n` from counting, `k` from the genus rule (checked against the
/// stabilizer rank whenever an explicit complex is simulated, failing on
/// disagreement), `d` per the mode.
pub fn code_params_with(
    sig: SemiRegularSig,
    genus: u32,
    orientable: bool,
    opts: &ParamOptions,
) -> crate::Result<ParamsReport> {
    hypgeo::check_genus(genus, orientable)?;
    let chi = hypgeo::euler_characteristic(genus, orientable);
    let counts = derive::semiregular_counts_direct(sig, chi)?;
    let n = counts.n_v as usize;
    let k = k_rule(genus, orientable);

    let want_exact = opts.d_mode != DMode::Geometric && n <= opts.distance.max_n;
    let simulate_explicit = want_exact || n <= opts.rank_check_max_n;
    let mut sim = None;
    if simulate_explicit {
        if let Some(built) = derive::explicit_complex(sig, genus, orientable) {
            let (_, complex) = built?;
            match simulate(&complex, opts.rounds) {
                Ok(s) => sim = Some(s),
                Err(crate::Error::Coloring(_)) => {}
                Err(e) => return Err(e),
            }
        }
    }
    let rank_k = sim.as_ref().map(|s| s.trajectory.logical_count());
    if let Some(rank) = rank_k {
        if rank != k {
            return Err(FloquetError::LogicalCountMismatch { rule: k, rank }.into());
        }
    }
    if want_exact {
        if let Some(s) = &sim {
            let rep = exact_distance(&s.assign, &s.adjacency, &s.trajectory, &opts.distance)?;
            return Ok(ParamsReport {
                params: CodeParams::new(n, k, rep.d, DSource::Exact),
                convention_tag: None,
                rank_k,
            });
        }
    }
    if opts.d_mode == DMode::Exact {
        return Err(FloquetError::NoExplicitComplex { sig, max_n: opts.distance.max_n }.into());
    }
    let est = geodist::estimate_distance(sig, genus, orientable)?;
    Ok(ParamsReport {
        params: CodeParams::new(n, k, est.d, DSource::GeometricEstimate),
        convention_tag: Some(est.convention_tag),
        rank_k,
    })
}
