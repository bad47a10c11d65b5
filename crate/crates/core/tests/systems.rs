use proptest::prelude::*;
use structmor::densela::Matrix;
use structmor::synth::{
    random_corpus, random_higher_order, random_points, random_second_order, rng, CorpusSystem,
    HigherOrderSpec, SecondOrderSpec,
};
use structmor::systems::{
    verify_j_relations, Factorization, HermitianStructure, IntegralTerm, Model, ModelFile,
};
use structmor::{
    c64, linearize_higher_order, linearize_second_order, HigherOrderSystem, SpecialSecondOrderSystem,
    TransferFunction, C64,
};

fn rel(a: &Matrix, b: &Matrix) -> f64 {
    (a - b).norm_fro() / a.norm_fro()
}

/// `H(s)` of an order-`l` system from its coefficients, by Horner on `P` and `L`.
fn direct_higher_order(sys: &HigherOrderSystem, s: C64) -> Matrix {
    let n = sys.state_dim();
    let mut p = Matrix::zeros(n, n);
    for pi in sys.p().iter().rev() {
        p = &p.scale(s) + pi;
    }
    let mut l = Matrix::zeros(sys.l()[0].rows(), n);
    for lj in sys.l().iter().rev() {
        l = &l.scale(s) + lj;
    }
    let x = structmor::densela::lu_factor(&p).unwrap().solve(sys.b());
    &l.matmul(&x) + sys.d()
}

fn scalar(x: f64) -> Matrix {
    Matrix::from_real_rows(&[[x]])
}

#[test]
fn hermitian_second_order_linearization() {
    let mut r = rng(21);
    for variant in [Factorization::Product, Factorization::InverseProduct] {
        let spec = SecondOrderSpec {
            n: 4,
            n0: 2,
            inputs: 2,
            outputs: 2,
            variant,
            hermitian: true,
            complex: true,
            omega: 1.0,
        };
        let sys = random_second_order(&mut r, spec).unwrap();
        assert!(sys.is_hermitian());
        let (fo, map) = linearize_second_order(&sys).unwrap();
        assert_eq!(map.target_dim(), fo.state_dim());
        assert_eq!(fo.state_dim(), 6);
        for s in random_points(&mut r, 5, 1.0) {
            assert!(rel(&sys.eval_transfer(s).unwrap(), &fo.eval_transfer(s).unwrap()) < 1e-10);
        }
    }
}

#[test]
fn companion_matches_direct_evaluation() {
    let mut r = rng(22);
    let spec = HigherOrderSpec {
        order: 3,
        n: 3,
        inputs: 2,
        outputs: 1,
        hermitian: false,
        complex: true,
        omega: 1.0,
    };
    let sys = random_higher_order(&mut r, spec).unwrap();
    let (fo, map) = linearize_higher_order(&sys).unwrap();
    assert_eq!(map.target_dim(), 9);
    for s in random_points(&mut r, 5, 1.0) {
        let h = direct_higher_order(&sys, s);
        assert!(rel(&h, &fo.eval_transfer(s).unwrap()) < 1e-9);
        assert!(rel(&h, &sys.eval_transfer(s).unwrap()) < 1e-12);
    }
}

#[test]
fn minimal_rlc_j_relations() {
    let sys = SpecialSecondOrderSystem::new(
        scalar(1.0),
        scalar(1.0),
        IntegralTerm {
            variant: Factorization::InverseProduct,
            f1: scalar(1.0),
            f2: scalar(1.0),
            g: scalar(1.0),
        },
        scalar(1.0),
        scalar(1.0),
        scalar(0.0),
    )
    .unwrap();
    let (fo, _) = linearize_second_order(&sys).unwrap();
    let j = HermitianStructure::second_order(1, 1);
    assert_eq!(j.j, Matrix::from_real_rows(&[[1.0, 0.0], [0.0, -1.0]]));
    assert!(verify_j_relations(&fo, &j, 1.0).unwrap().all_hold);
    // By hand: K = s0 E - A = [[2, 1], [-1, 1]], J K = [[2, 1], [1, -1]].
    let jk = j.j.matmul(&fo.pencil_at(c64(1.0, 0.0)));
    assert_eq!(jk, Matrix::from_real_rows(&[[2.0, 1.0], [1.0, -1.0]]));
}

#[test]
fn order_two_hermitian_j_relations() {
    let mut r = rng(23);
    let spec = HigherOrderSpec {
        order: 2,
        n: 3,
        inputs: 2,
        outputs: 2,
        hermitian: true,
        complex: true,
        omega: 1.0,
    };
    let sys = random_higher_order(&mut r, spec).unwrap();
    let (fo, _) = linearize_higher_order(&sys).unwrap();
    let j = HermitianStructure::higher_order(&sys, 0.5);
    let report = verify_j_relations(&fo, &j, 0.5).unwrap();
    assert!(report.all_hold);
    // A perturbed s0 makes J stale.
    assert!(verify_j_relations(&fo, &j, 0.6).is_err());
}

#[test]
fn non_hermitian_source_fails_relations() {
    let mut r = rng(24);
    let spec = SecondOrderSpec {
        n: 3,
        n0: 1,
        inputs: 1,
        outputs: 1,
        variant: Factorization::InverseProduct,
        hermitian: false,
        complex: false,
        omega: 1.0,
    };
    let sys = random_second_order(&mut r, spec).unwrap();
    assert!(!sys.is_hermitian());
    let (fo, _) = linearize_second_order(&sys).unwrap();
    assert!(verify_j_relations(&fo, &HermitianStructure::second_order(3, 1), 1.0).is_err());
}

#[test]
fn model_file_round_trip() {
    for (k, sys) in random_corpus(25, 6, 1.0).unwrap().into_iter().enumerate() {
        let model = match sys {
            CorpusSystem::SecondOrder(s) => Model::SecondOrder(s),
            CorpusSystem::HigherOrder(s) => Model::HigherOrder(s),
        };
        let text = ModelFile::new(model.clone(), serde_json::json!({ "k": k })).to_json().unwrap();
        let back = ModelFile::from_json(&text).unwrap();
        let s = c64(0.3, 1.1);
        // Shortest round-trip float formatting makes this bit-exact.
        assert_eq!(model.eval_transfer(s).unwrap(), back.eval_transfer(s).unwrap());
        assert_eq!(model.dimensions(), back.dimensions());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn conjugate_symmetry_of_hermitian_systems(seed in any::<u64>(), re in 0.05f64..3.0, im in -3.0f64..3.0) {
        let corpus = random_corpus(seed, 4, 1.0).unwrap();
        let s = c64(re, im);
        for sys in corpus.iter().filter(|s| s.is_hermitian()) {
            let fo = match sys {
                CorpusSystem::SecondOrder(m) => linearize_second_order(m).unwrap().0,
                CorpusSystem::HigherOrder(m) => linearize_higher_order(m).unwrap().0,
            };
            let (Ok(h), Ok(hc)) = (fo.eval_transfer(s), fo.eval_transfer(s.conj())) else { continue };
            prop_assert!(rel(&h, &hc.adjoint()) < 1e-9);
        }
    }

    #[test]
    fn linearization_equivalence(seed in any::<u64>()) {
        let corpus = random_corpus(seed, 8, 1.0).unwrap();
        let mut r = rng(seed ^ 0x5a5a);
        for sys in &corpus {
            let s = random_points(&mut r, 1, 1.0)[0];
            let (h, h1) = match sys {
                CorpusSystem::SecondOrder(m) => (m.eval_transfer(s), linearize_second_order(m).unwrap().0.eval_transfer(s)),
                CorpusSystem::HigherOrder(m) => (m.eval_transfer(s), linearize_higher_order(m).unwrap().0.eval_transfer(s)),
            };
            if let (Ok(h), Ok(h1)) = (h, h1) {
                prop_assert!(rel(&h, &h1) < 1e-9);
            }
        }
    }

    #[test]
    fn hermitian_sources_pass_j_relations(seed in any::<u64>(), s0 in -2.0f64..2.0) {
        for sys in random_corpus(seed, 8, 1.0).unwrap().iter().filter(|s| s.is_hermitian()) {
            let ok = match sys {
                CorpusSystem::SecondOrder(m) => {
                    let fo = linearize_second_order(m).unwrap().0;
                    verify_j_relations(&fo, &HermitianStructure::second_order(m.state_dim(), m.inner_dim()), s0).is_ok()
                }
                CorpusSystem::HigherOrder(m) => {
                    let fo = linearize_higher_order(m).unwrap().0;
                    verify_j_relations(&fo, &HermitianStructure::higher_order(m, s0), s0).is_ok()
                }
            };
            prop_assert!(ok);
        }
    }
}
