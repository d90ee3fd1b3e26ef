use proptest::prelude::*;

use symquandle::algebra::{make_trivial, make_trivial_action, GoodInvolution, SymmetricQuandle};
use symquandle::catalog::{braid_closure, BraidLetter};
use symquandle::coloring::{brute_force_all, build_constraints, count_colorings, count_colorings_with, solve_all, Conventions};
use symquandle::diagram::{euler_characteristic, surface_components, ChDiagram, Smoothing};
use symquandle::diagram::count_components;
use symquandle::Exec;

fn letter(strands: usize) -> impl Strategy<Value = BraidLetter> {
    (1..strands, 0..6u8).prop_map(|(i, k)| match k {
        0 | 1 => BraidLetter::Sigma(i, true),
        2 | 3 => BraidLetter::Sigma(i, false),
        4 => BraidLetter::Saddle(i),
        _ => BraidLetter::SideSaddle(i),
    })
}

fn marked_braid() -> impl Strategy<Value = ChDiagram> {
    (2usize..5).prop_flat_map(|n| {
        proptest::collection::vec(letter(n), 0..9).prop_map(move |w| braid_closure(n, &w).unwrap())
    })
}

fn swap_quandle() -> SymmetricQuandle {
    SymmetricQuandle::new(make_trivial(2).unwrap(), GoodInvolution::from_table(vec![1, 0]).unwrap()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn orientations_are_swap_colorings(d in marked_braid()) {
        let comps = surface_components(&d);
        let expected = if comps.iter().all(|c| c.orientable) { 1u64 << comps.len() } else { 0 };
        prop_assert_eq!(count_colorings(&d, &swap_quandle(), None), expected);
    }

    #[test]
    fn euler_characteristic_adds_over_components(d in marked_braid()) {
        let total: i64 = surface_components(&d).iter().map(|c| c.euler_characteristic).sum();
        prop_assert_eq!(total, euler_characteristic(&d));
        let mu = count_components(&d.smooth(Smoothing::Minus)) + count_components(&d.smooth(Smoothing::Plus));
        prop_assert_eq!(euler_characteristic(&d), mu as i64 - d.vertex_count() as i64);
    }

    #[test]
    fn solver_matches_oracle_on_random_closures(d in marked_braid(), anti in any::<bool>()) {
        let sq = if anti { SymmetricQuandle::dihedral_antipodal(4) } else { SymmetricQuandle::dihedral_identity(3) }.unwrap();
        let y = make_trivial_action(&sq);
        let cs = build_constraints(&d, &sq, &y);
        prop_assert_eq!(solve_all(&cs, &sq, &y), brute_force_all(&cs, &sq, &y, 1 << 24).unwrap());
    }

    #[test]
    fn counts_survive_flips_mirror_and_policy(d in marked_braid(), pick in any::<prop::sample::Index>()) {
        let sq = SymmetricQuandle::dihedral_antipodal(4).unwrap();
        let base = count_colorings(&d, &sq, None);
        if !d.edges().is_empty() {
            let f = d.flip_edge(pick.index(d.edges().len())).unwrap();
            prop_assert_eq!(count_colorings(&f, &sq, None), base);
        }
        prop_assert_eq!(count_colorings(&d.mirror(), &sq, None), base);
        prop_assert_eq!(count_colorings_with(&d, &sq, None, Conventions { over_rho: true }, Exec::Sequential), base);
        prop_assert_eq!(count_colorings_with(&d, &sq, None, Conventions::default(), Exec::Parallel), base);
    }
}
