//! Companion linearization of a cubic matrix polynomial.

use structmor::synth::{random_higher_order, rng, HigherOrderSpec};
use structmor::{c64, linearize_higher_order, TransferFunction};

fn main() -> structmor::Result<()> {
    let spec = HigherOrderSpec {
        order: 3,
        n: 4,
        inputs: 2,
        outputs: 2,
        hermitian: false,
        complex: true,
        omega: 1.0,
    };
    let sys = random_higher_order(&mut rng(5), spec)?;
    let (fo, map) = linearize_higher_order(&sys)?;
    println!("order {} with n = {} -> first order with N = {}", sys.order(), sys.state_dim(), map.target_dim());
    for s in [c64(0.3, 0.7), c64(1.5, -0.2)] {
        let h = sys.eval_transfer(s)?;
        let err = (&h - &fo.eval_transfer(s)?).norm_fro() / h.norm_fro();
        println!("s = {s:.2}: relative gap {err:.1e}");
    }
    Ok(())
}
