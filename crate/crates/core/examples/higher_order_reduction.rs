//! Structure-preserving reduction of a Hermitian quadratic system.

use structmor::analysis::{match_report, THEOREM2_TOL};
use structmor::densela::DEFAULT_RANK_TOL;
use structmor::krylov::DEFAULT_DEFLATION_TOL;
use structmor::reduce::StructuredForm;
use structmor::synth::{random_higher_order, rng, HigherOrderSpec};
use structmor::{build_basis, c64, higher_order_reduce, linearize_higher_order, make_operator, prima_reduce, structure_check};

fn main() -> structmor::Result<()> {
    let spec = HigherOrderSpec {
        order: 2,
        n: 12,
        inputs: 2,
        outputs: 2,
        hermitian: true,
        complex: true,
        omega: 1.0,
    };
    let sys = random_higher_order(&mut rng(11), spec)?;
    let (fo, _) = linearize_higher_order(&sys)?;
    let basis = build_basis(&make_operator(&fo, c64(0.7, 0.0))?, 6, DEFAULT_DEFLATION_TOL)?;
    let red = higher_order_reduce(&sys, &fo, &basis, DEFAULT_RANK_TOL)?;
    let Some(StructuredForm::HigherOrder(ho)) = &red.structured else { unreachable!() };
    println!("order {} kept, state {} -> {}", ho.order(), sys.state_dim(), ho.state_dim());
    for b in &structure_check(&red).blocks {
        println!("  {:<12} exact {}", b.block, b.exact);
    }
    let k = 2 * basis.j() + 2;
    let structured = match_report(&fo, &red, k, THEOREM2_TOL)?;
    let plain = match_report(&fo, &prima_reduce(&fo, &basis)?, k, THEOREM2_TOL)?;
    println!("moments matched: structured {}, plain projection {}", structured.matched_count, plain.matched_count);
    Ok(())
}
