//! PRIMA and SPRIM from one Krylov basis on an interconnect ladder.

use std::f64::consts::PI;

use structmor::analysis::{frequency_grid, match_report, sweep, sweep_error, GridScale, THEOREM1_TOL, THEOREM2_TOL};
use structmor::densela::DEFAULT_RANK_TOL;
use structmor::krylov::DEFAULT_DEFLATION_TOL;
use structmor::netlist::{assemble_mna, mna_to_second_order, parse_netlist};
use structmor::synth::rlc_ladder;
use structmor::{build_basis, c64, linearize_second_order, make_operator, prima_reduce, sprim_reduce, structure_check};

fn main() -> structmor::Result<()> {
    let so = mna_to_second_order(&assemble_mna(&parse_netlist(&rlc_ladder(20, 7, true))?)?)?;
    let fo = linearize_second_order(&so)?.0;
    let s0 = c64(2.0 * PI * 1e9, 0.0);
    let grid = frequency_grid(1e8, 1e10, 200, GridScale::Log)?;
    let exact = sweep(&so, &grid, "exact");
    for n in [4, 8, 12] {
        let basis = build_basis(&make_operator(&fo, s0)?, n, DEFAULT_DEFLATION_TOL)?;
        let prima = prima_reduce(&fo, &basis)?;
        let sprim = sprim_reduce(&so, &fo, &basis, DEFAULT_RANK_TOL)?;
        let k = 2 * basis.j() + 2;
        let mp = match_report(&fo, &prima, k, THEOREM1_TOL)?;
        let ms = match_report(&fo, &sprim, k, THEOREM2_TOL)?;
        let ep = sweep_error(&exact, &sweep(&prima, &grid, "prima"))?;
        let es = sweep_error(&exact, &sweep(&sprim, &grid, "sprim"))?;
        println!(
            "n = {:2}: PRIMA dim {:2} moments {:2} err {:.2e} | SPRIM dim {:2} moments {:2} err {:.2e} exact blocks {}",
            basis.n(),
            prima.state_dim(),
            mp.matched_count,
            ep.max_rel,
            sprim.state_dim(),
            ms.matched_count,
            es.max_rel,
            structure_check(&sprim).all_exact,
        );
    }
    Ok(())
}
