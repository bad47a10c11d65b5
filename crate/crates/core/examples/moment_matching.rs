//! Moments of full and reduced models side by side.

use structmor::analysis::compute_moments;
use structmor::densela::DEFAULT_RANK_TOL;
use structmor::krylov::DEFAULT_DEFLATION_TOL;
use structmor::synth::{random_second_order, rng, SecondOrderSpec};
use structmor::systems::Factorization;
use structmor::{build_basis, c64, linearize_second_order, make_operator, sprim_reduce};

fn main() -> structmor::Result<()> {
    let spec = SecondOrderSpec {
        n: 15,
        n0: 6,
        inputs: 1,
        outputs: 1,
        variant: Factorization::InverseProduct,
        hermitian: true,
        complex: false,
        omega: 1.0,
    };
    let sys = random_second_order(&mut rng(3), spec)?;
    let fo = linearize_second_order(&sys)?.0;
    let s0 = c64(0.5, 0.0);
    let basis = build_basis(&make_operator(&fo, s0)?, 3, DEFAULT_DEFLATION_TOL)?;
    let red = sprim_reduce(&sys, &fo, &basis, DEFAULT_RANK_TOL)?;
    let full = compute_moments(&fo, s0, 8)?;
    let reduced = compute_moments(&red.first_order, s0, 8)?;
    println!("j = {}", basis.j());
    for (i, (a, b)) in full.moments.iter().zip(&reduced.moments).enumerate() {
        let err = (a - b).norm_fro() / a.norm_fro();
        println!("  M_{i}: {:+.6e}  rel err {err:.1e}", a[(0, 0)].re);
    }
    Ok(())
}
