use std::f64::consts::PI;

use proptest::prelude::*;
use structmor::analysis::{
    compute_moments, frequency_grid, match_report, passivity_sample, sample_right_half_plane, sweep,
    sweep_error, GridScale, THEOREM1_TOL, THEOREM2_TOL,
};
use structmor::densela::{Matrix, DEFAULT_RANK_TOL};
use structmor::krylov::{build_basis, build_maximal_basis, make_operator, DEFAULT_DEFLATION_TOL};
use structmor::netlist::{assemble_mna, mna_to_first_order, mna_to_second_order, parse_netlist};
use structmor::reduce::{structure_check, StructuredForm};
use structmor::synth::{random_corpus, random_higher_order, rlc_ladder, rng, CorpusSystem, HigherOrderSpec};
use structmor::systems::{Model, ModelFile};
use structmor::{
    c64, higher_order_reduce, linearize_higher_order, linearize_second_order, prima_reduce, sprim_reduce,
    FirstOrderSystem, SpecialSecondOrderSystem, TransferFunction,
};

const LADDER3: &str = "R r1 1 2 1\nR r2 2 3 1\nC c1 1 0 1\nC c2 2 0 1\nC c3 3 0 1\nR t 3 0 2\nI u 1 0 PORT 1\n";

fn ladder(text: &str) -> (SpecialSecondOrderSystem, FirstOrderSystem) {
    let so = mna_to_second_order(&assemble_mna(&parse_netlist(text).unwrap()).unwrap()).unwrap();
    let fo = linearize_second_order(&so).unwrap().0;
    (so, fo)
}

#[test]
fn rc_ladder_prima_and_sprim_floors() {
    let (so, fo) = ladder(LADDER3);
    let s0 = c64(0.0, 0.0);
    let basis = build_basis(&make_operator(&fo, s0).unwrap(), 2, DEFAULT_DEFLATION_TOL).unwrap();
    assert_eq!(basis.j(), 2);
    let prima = prima_reduce(&fo, &basis).unwrap();
    assert!(match_report(&fo, &prima, 4, THEOREM1_TOL).unwrap().matched_count >= 2);
    let sprim = sprim_reduce(&so, &fo, &basis, DEFAULT_RANK_TOL).unwrap();
    let r = match_report(&fo, &sprim, 5, THEOREM2_TOL).unwrap();
    assert_eq!(r.expected_bound, 4);
    assert!(r.matched_count >= 4 && r.meets_bound);
}

#[test]
fn rlc_ladder_sprim_doubles_at_peec_point() {
    let (so, fo) = ladder(&rlc_ladder(5, 7, false));
    let s0 = c64(2.0 * PI * 1e9, 0.0);
    let basis = build_basis(&make_operator(&fo, s0).unwrap(), 4, DEFAULT_DEFLATION_TOL).unwrap();
    assert_eq!(basis.j(), 2);
    let sprim = sprim_reduce(&so, &fo, &basis, DEFAULT_RANK_TOL).unwrap();
    let r = match_report(&fo, &sprim, 6, THEOREM2_TOL).unwrap();
    assert!(r.matched_count >= 4, "{:?}", r.errors);
    // The second-order form has state dimension n1 = columns of V1.
    let Some(StructuredForm::SecondOrder(red)) = &sprim.structured else { panic!() };
    assert_eq!(red.state_dim(), sprim.provenance.block_columns[0]);
    assert!(structure_check(&sprim).all_exact);
    // PRIMA from the same basis sees the same Krylov statistics.
    let prima = prima_reduce(&fo, &basis).unwrap();
    assert_eq!(prima.provenance.boundaries, sprim.provenance.boundaries);
    assert_eq!(prima.provenance.deflations, sprim.provenance.deflations);
}

#[test]
fn rlc_ladder_sprim_beats_prima_over_a_decade() {
    let (so, fo) = ladder(&rlc_ladder(5, 7, false));
    let s0 = c64(2.0 * PI * 1e9, 0.0);
    let f0 = 1e9;
    let grid = frequency_grid(f0 / 10f64.sqrt(), f0 * 10f64.sqrt(), 100, GridScale::Log).unwrap();
    let exact = sweep(&so, &grid, "exact");
    let basis = build_basis(&make_operator(&fo, s0).unwrap(), 4, DEFAULT_DEFLATION_TOL).unwrap();
    let p = sweep_error(&exact, &sweep(&prima_reduce(&fo, &basis).unwrap(), &grid, "p")).unwrap();
    let s = sweep_error(&exact, &sweep(&sprim_reduce(&so, &fo, &basis, DEFAULT_RANK_TOL).unwrap(), &grid, "s")).unwrap();
    assert!(s.max_abs <= p.max_abs, "sprim {} prima {}", s.max_abs, p.max_abs);
}

#[test]
fn hermitian_order_two_doubles() {
    let spec = HigherOrderSpec {
        order: 2,
        n: 5,
        inputs: 1,
        outputs: 1,
        hermitian: true,
        complex: true,
        omega: 1.0,
    };
    let sys = random_higher_order(&mut rng(41), spec).unwrap();
    let (fo, _) = linearize_higher_order(&sys).unwrap();
    let s0 = c64(0.8, 0.0);
    let basis = build_basis(&make_operator(&fo, s0).unwrap(), 2, DEFAULT_DEFLATION_TOL).unwrap();
    let red = higher_order_reduce(&sys, &fo, &basis, DEFAULT_RANK_TOL).unwrap();
    let r = match_report(&fo, &red, 6, THEOREM2_TOL).unwrap();
    assert!(r.matched_count >= 4, "{:?}", r.errors);
    let check = structure_check(&red);
    assert!(check.all_exact && !check.blocks.is_empty());
    // One merged basis S of r columns per companion block.
    let Some(StructuredForm::HigherOrder(ho)) = &red.structured else { panic!() };
    assert_eq!(ho.state_dim(), red.provenance.block_columns[0]);
    assert_eq!(red.state_dim(), 2 * ho.state_dim());
}

#[test]
fn reduced_model_survives_json() {
    let (so, fo) = ladder(&rlc_ladder(4, 3, true));
    let s0 = c64(2.0 * PI * 1e9, 0.0);
    let basis = build_basis(&make_operator(&fo, s0).unwrap(), 4, DEFAULT_DEFLATION_TOL).unwrap();
    let red = sprim_reduce(&so, &fo, &basis, DEFAULT_RANK_TOL).unwrap();
    let text = ModelFile::new(Model::Reduced(red.clone()), serde_json::Value::Null).to_json().unwrap();
    let Model::Reduced(back) = ModelFile::from_json(&text).unwrap() else { panic!() };
    let s = c64(1e8, 3e9);
    assert_eq!(red.eval_transfer(s).unwrap(), back.eval_transfer(s).unwrap());
    assert_eq!(red.provenance, back.provenance);
}

#[test]
fn taylor_series_tracks_transfer_function() {
    for sys in random_corpus(43, 8, 1.0).unwrap() {
        let fo = match &sys {
            CorpusSystem::SecondOrder(m) => linearize_second_order(m).unwrap().0,
            CorpusSystem::HigherOrder(m) => linearize_higher_order(m).unwrap().0,
        };
        let s0 = c64(0.9, 0.2);
        let table = compute_moments(&fo, s0, 8).unwrap();
        let s = s0 + c64(0.6, 0.8) * (1e-3 * s0.norm());
        let h = fo.eval_transfer(s).unwrap();
        let err = (&h - &table.series(s).unwrap()).norm_fro() / h.norm_fro();
        assert!(err < 1e-6, "{err}");
    }
}

#[test]
fn full_basis_sweep_is_exact() {
    let (so, fo) = ladder(&rlc_ladder(3, 5, false));
    let s0 = c64(2.0 * PI * 1e9, 0.0);
    let full = build_maximal_basis(&make_operator(&fo, s0).unwrap(), DEFAULT_DEFLATION_TOL).unwrap();
    assert!(full.exhausted && full.n() <= fo.state_dim());
    let grid = frequency_grid(1e8, 1e10, 50, GridScale::Log).unwrap();
    let exact = sweep(&so, &grid, "exact");
    for red in [prima_reduce(&fo, &full).unwrap(), sprim_reduce(&so, &fo, &full, DEFAULT_RANK_TOL).unwrap()] {
        let e = sweep_error(&exact, &sweep(&red, &grid, "red")).unwrap();
        assert!(e.max_rel < 1e-10, "{}", e.max_rel);
    }
}

#[test]
fn ladders_are_passive_and_stay_so_under_sprim() {
    for seed in [1, 2, 3] {
        let text = rlc_ladder(12, seed, seed % 2 == 0);
        let (so, _) = ladder(&text);
        let points = sample_right_half_plane(20, 2.0 * PI * 1e9, seed);
        assert!(passivity_sample(&so, &points).unwrap().all_psd);
        let fo = mna_to_first_order(&assemble_mna(&parse_netlist(&text).unwrap()).unwrap()).unwrap();
        let basis = build_basis(&make_operator(&fo, c64(2.0 * PI * 1e9, 0.0)).unwrap(), 6, DEFAULT_DEFLATION_TOL).unwrap();
        let red = sprim_reduce(&so, &fo, &basis, DEFAULT_RANK_TOL).unwrap();
        let Some(StructuredForm::SecondOrder(red_so)) = &red.structured else { panic!() };
        assert!(red_so.is_hermitian());
        assert!(passivity_sample(&red, &points).unwrap().all_psd);
    }
}

fn symmetric_defect(m: &Matrix) -> f64 {
    m.max_abs_diff(&m.adjoint())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn prima_floor_holds_on_random_corpora(seed in any::<u64>(), re in 0.2f64..2.0, im in -1.0f64..1.0) {
        let s0 = c64(re, im);
        for sys in random_corpus(seed, 6, 1.0).unwrap().iter() {
            let fo = match sys {
                CorpusSystem::SecondOrder(m) => linearize_second_order(m).unwrap().0,
                CorpusSystem::HigherOrder(m) => linearize_higher_order(m).unwrap().0,
            };
            let Ok(op) = make_operator(&fo, s0) else { continue };
            let full = build_maximal_basis(&op, DEFAULT_DEFLATION_TOL).unwrap();
            for j in 1..=full.j().min(4) {
                let b = full.truncate(j);
                let reds = [
                    prima_reduce(&fo, &b),
                    match sys {
                        CorpusSystem::SecondOrder(m) => sprim_reduce(m, &fo, &b, DEFAULT_RANK_TOL),
                        CorpusSystem::HigherOrder(m) => higher_order_reduce(m, &fo, &b, DEFAULT_RANK_TOL),
                    },
                ];
                for red in reds.into_iter().flatten() {
                    let r = match_report(&fo, &red, j + 1, THEOREM1_TOL).unwrap();
                    prop_assert!(r.matched_count >= j, "{:?}", r.errors);
                    prop_assert!(structure_check(&red).all_exact);
                }
            }
        }
    }

    #[test]
    fn sprim_keeps_hermitian_data_hermitian(seed in any::<u64>(), s0 in 0.2f64..2.0) {
        for sys in random_corpus(seed, 8, 1.0).unwrap().iter().filter(|s| s.is_hermitian()) {
            let CorpusSystem::SecondOrder(m) = sys else { continue };
            let fo = linearize_second_order(m).unwrap().0;
            let full = build_maximal_basis(&make_operator(&fo, c64(s0, 0.0)).unwrap(), DEFAULT_DEFLATION_TOL).unwrap();
            let red = sprim_reduce(m, &fo, &full.truncate(1), DEFAULT_RANK_TOL).unwrap();
            let Some(StructuredForm::SecondOrder(r)) = &red.structured else { panic!() };
            prop_assert!(symmetric_defect(r.p1()) < 1e-12 * r.p1().max_abs());
            prop_assert!(symmetric_defect(r.p0()) < 1e-12 * r.p0().max_abs());
            prop_assert!(r.l().max_abs_diff(&r.b().adjoint()) == 0.0);
        }
    }
}
