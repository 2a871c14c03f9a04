//! Property-based invariants across the geometry, surface, derivation,
//! coloring and stabilizer layers.

use std::f64::consts::PI;

use proptest::prelude::*;

use hypfloquet::catalog;
use hypfloquet::coloring::{three_color, Color};
use hypfloquet::derive::{self, Derivation};
use hypfloquet::floquet::{self, PauliOperator, StabilizerGroup};
use hypfloquet::coloring::PauliKind;
use hypfloquet::hypgeo::{self, RegularSig, SemiRegularSig};
use hypfloquet::surface::{self, SurfaceComplex};

fn hyperbolic_triple() -> impl Strategy<Value = SemiRegularSig> {
    (3u32..=200, 3u32..=200, 3u32..=200).prop_filter_map("hyperbolic", |(a, b, c)| SemiRegularSig::new([a, b, c]).ok())
}

fn regular_pair(max: u32) -> impl Strategy<Value = RegularSig> {
    (3u32..=max, 3u32..=max).prop_filter_map("hyperbolic", |(p, q)| RegularSig::new(p, q).ok())
}

fn surface_kind() -> impl Strategy<Value = (u32, bool)> {
    prop_oneof![(2u32..=12).prop_map(|g| (g, true)), (3u32..=14).prop_map(|g| (g, false))]
}

fn pauli(n: usize) -> impl Strategy<Value = PauliOperator> {
    proptest::collection::vec(0u8..4, n).prop_map(move |v| {
        let terms: Vec<(usize, PauliKind)> = v
            .iter()
            .enumerate()
            .filter_map(|(q, &k)| match k {
                1 => Some((q, PauliKind::X)),
                2 => Some((q, PauliKind::Y)),
                3 => Some((q, PauliKind::Z)),
                _ => None,
            })
            .collect();
        PauliOperator::from_sparse(n, &terms)
    })
}

/// Symplectic form evaluated qubit by qubit.
fn naive_anticommute(a: &PauliOperator, b: &PauliOperator) -> bool {
    (0..a.qubit_count()).fold(false, |acc, q| acc ^ (a.x_bit(q) & b.z_bit(q)) ^ (a.z_bit(q) & b.x_bit(q)))
}

fn colorable_complexes() -> Vec<SurfaceComplex> {
    [(2, true), (3, false), (4, false), (5, false), (3, true)]
        .into_iter()
        .map(|(g, o)| derive::derive_fundamental(g, o, Derivation::Incenter).unwrap())
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 256, ..ProptestConfig::default() })]

    #[test]
    fn edge_equation_residual_vanishes(sig in hyperbolic_triple()) {
        let l = hypgeo::semiregular_edge_length(sig).unwrap();
        prop_assert!(l > 0.0);
        prop_assert!(hypgeo::semiregular_edge_residual(sig, l).abs() < 1e-10);
    }

    #[test]
    fn edge_length_is_symmetric(sig in hyperbolic_triple()) {
        let [a, b, c] = sig.sizes();
        let l = hypgeo::semiregular_edge_length(sig).unwrap();
        for perm in [[b, c, a], [c, a, b], [b, a, c]] {
            let other = hypgeo::semiregular_edge_length(SemiRegularSig::new(perm).unwrap()).unwrap();
            prop_assert!((l - other).abs() < 1e-12);
        }
    }

    #[test]
    fn uniform_triple_matches_regular(half in 4u32..=50) {
        let k = 2 * half;
        let semi = hypgeo::semiregular_edge_length(SemiRegularSig::new([k, k, k]).unwrap()).unwrap();
        let reg = hypgeo::regular_edge_length(RegularSig::new(k, 3).unwrap());
        prop_assert!((semi - reg).abs() < 1e-10, "{k}: {semi} vs {reg}");
    }

    #[test]
    fn regular_edge_forms_agree(sig in regular_pair(80)) {
        let a = hypgeo::regular_edge_length_half_angle(sig);
        let b = hypgeo::regular_edge_length_direct(sig);
        prop_assert!((a - b).abs() <= 1e-10 * a.max(1.0));
    }

    #[test]
    fn chord_half_angle_identity(gap in 0.01f64..3.0, m in 3u32..=64) {
        let t = hypgeo::incenter_chord(gap, m).unwrap();
        let half = gap.sinh() * (2.0 * PI / m as f64).sin().abs();
        prop_assert!(((t / 2.0).sinh() - half).abs() < 1e-9 * (1.0 + half));
    }

    #[test]
    fn regular_counts_identities(sig in regular_pair(60), g in 2u32..=30, o in any::<bool>()) {
        prop_assume!(o || g >= 3);
        if let Ok(rc) = surface::regular_counts(sig.p(), sig.q(), g, o) {
            let chi = hypgeo::euler_characteristic(g, o);
            prop_assert_eq!(rc.vertices as i64 - rc.edges as i64 + rc.faces as i64, chi);
            prop_assert_eq!(sig.p() as u64 * rc.faces, 2 * rc.edges);
            prop_assert_eq!(sig.q() as u64 * rc.vertices, 2 * rc.edges);
            let area = hypgeo::polygon_area(sig) * rc.faces as f64;
            let total = hypgeo::surface_area(g, o).unwrap();
            prop_assert!((area - total).abs() < 1e-9 * total);
        }
    }

    #[test]
    fn direct_counts_satisfy_euler(sig in hyperbolic_triple(), (g, o) in surface_kind()) {
        let chi = hypgeo::euler_characteristic(g, o);
        if let Ok(c) = derive::semiregular_counts_direct(sig, chi) {
            prop_assert_eq!(c.euler_characteristic(), chi);
            let rate = catalog::rate_exact(sig, g, o);
            prop_assert_eq!(rate * num_rational::Ratio::from_integer(c.n_v as i128),
                num_rational::Ratio::from_integer(floquet::k_rule(g, o) as i128));
        }
    }

    #[test]
    fn derivations_preserve_topology((g, o) in surface_kind()) {
        let src = surface::fundamental_polygon(g, o).unwrap();
        let p = src.face(0).len() as u32;
        let chi = hypgeo::euler_characteristic(g, o);
        let clip = derive::clip_complex(&src, p, p).unwrap();
        let inc = derive::incenter_complex(&src, p, p).unwrap();
        for c in [&clip, &inc] {
            prop_assert_eq!(c.euler_characteristic(), chi);
            prop_assert_eq!(c.check_orientability(), o);
            prop_assert!(c.vertex_degrees().iter().all(|&d| d == 3));
        }
        let cc = derive::clip_counts(p, p, chi).unwrap();
        let ic = derive::incenter_counts(p, p, chi).unwrap();
        prop_assert_eq!((clip.vertex_count() as u64, clip.edge_count() as u64, clip.face_count() as u64), (cc.n_v, cc.n_e, cc.n_f));
        prop_assert_eq!((inc.vertex_count() as u64, inc.edge_count() as u64, inc.face_count() as u64), (ic.n_v, ic.n_e, ic.n_f));
    }

    #[test]
    fn dual_is_an_involution((g, o) in surface_kind(), incenter in any::<bool>()) {
        let der = if incenter { Derivation::Incenter } else { Derivation::Clip };
        let c = derive::derive_fundamental(g, o, der).unwrap();
        let d = c.dual();
        prop_assert_eq!(d.vertex_count(), c.face_count());
        prop_assert_eq!(d.face_count(), c.vertex_count());
        prop_assert_eq!(d.euler_characteristic(), c.euler_characteristic());
        prop_assert!(d.dual().is_isomorphic(&c));
    }

    #[test]
    fn json_round_trip((g, o) in surface_kind()) {
        let c = derive::derive_fundamental(g, o, Derivation::Incenter).unwrap();
        let back = SurfaceComplex::from_json(&c.to_json()).unwrap();
        prop_assert_eq!(&back, &c);
    }

    #[test]
    fn symplectic_form_is_bilinear(a in pauli(70), b in pauli(70), c in pauli(70)) {
        prop_assert_eq!(!a.commutes_with(&b), naive_anticommute(&a, &b));
        prop_assert_eq!(a.commutes_with(&b), b.commutes_with(&a));
        let lhs = !a.commutes_with(&b.product(&c));
        prop_assert_eq!(lhs, !a.commutes_with(&b) ^ !a.commutes_with(&c));
        prop_assert!(a.commutes_with(&a));
    }

    #[test]
    fn group_form_is_canonical(gens in proptest::collection::vec(pauli(10), 1..8), seed in any::<u64>()) {
        let forward = StabilizerGroup::from_generators(10, &gens);
        let mut shuffled = gens.clone();
        let len = shuffled.len();
        shuffled.rotate_left((seed as usize) % len);
        shuffled.reverse();
        let backward = StabilizerGroup::from_generators(10, &shuffled);
        prop_assert_eq!(&forward, &backward);
        for gen in &gens {
            prop_assert!(forward.contains(gen));
        }
    }

    #[test]
    fn measurement_keeps_group_abelian(checks in proptest::collection::vec(pauli(8), 1..20)) {
        let mut g = StabilizerGroup::new(8);
        for ch in &checks {
            g.measure(ch);
            prop_assert!(g.is_abelian());
            if !ch.is_identity() {
                prop_assert!(g.contains(ch));
            }
        }
    }
}

#[test]
fn schedule_is_period_three_and_commuting() {
    for c in colorable_complexes() {
        let assign = three_color(&c).unwrap();
        let traj = floquet::run_schedule(&assign, 15).unwrap();
        assert!(traj.steady_from < 9);
        for (r, g) in traj.groups.iter().enumerate() {
            assert!(g.is_abelian(), "round {r}");
            if r >= traj.steady_from + 3 {
                assert_eq!(g, &traj.groups[r - 3], "round {r}");
            }
        }
        let k = floquet::k_rule(c.genus(), c.orientable());
        for (_, g) in traj.steady_phases() {
            assert_eq!(floquet::logical_count(g), k);
            for f in 0..c.face_count() {
                assert!(g.centralizes(&floquet::face_operator(&assign, f)));
            }
        }
    }
}

#[test]
fn coloring_is_proper() {
    for c in colorable_complexes() {
        let assign = three_color(&c).unwrap();
        let colors = assign.face_colors();
        assert_eq!(colors[0], Color::R);
        for e in 0..c.edge_count() {
            let [f1, f2] = c.edge_faces(e);
            assert_ne!(colors[f1], colors[f2]);
            assert_eq!(assign.edge_colors()[e], Color::third(colors[f1], colors[f2]));
        }
    }
}

#[test]
fn results_are_deterministic() {
    let run = || {
        let c = derive::derive_fundamental(4, false, Derivation::Incenter).unwrap();
        let a = three_color(&c).unwrap();
        let t = floquet::run_schedule(&a, 9).unwrap();
        (c.to_json(), a.checks_json(), t.ranks(), t.groups[t.steady_from].to_json())
    };
    assert_eq!(run(), run());
    let table = || catalog::to_csv(&catalog::build_table(2..=2, true, floquet::DMode::Auto).unwrap());
    assert_eq!(table(), table());
}

#[test]
fn catalog_rows_satisfy_euler_exactly() {
    for (g, o) in [(2, true), (3, true), (3, false), (4, false)] {
        let chi = hypgeo::euler_characteristic(g, o) as i128;
        for row in catalog::build_table(g..=g, o, floquet::DMode::Geometric).unwrap() {
            let [a, b, c] = row.signature.sizes().map(|x| x as i128);
            let n = row.params.n as i128;
            // n (1/a + 1/b + 1/c - 1/2) = chi, scaled by 2abc
            assert_eq!(n * (2 * (b * c + a * c + a * b) - a * b * c), chi * 2 * a * b * c, "{}", row.signature);
        }
    }
}
