//! Sampled passivity and J-relations for a ladder and its SPRIM model.

use std::f64::consts::PI;

use structmor::analysis::{passivity_sample, sample_right_half_plane};
use structmor::densela::DEFAULT_RANK_TOL;
use structmor::krylov::DEFAULT_DEFLATION_TOL;
use structmor::netlist::{assemble_mna, mna_to_second_order, parse_netlist};
use structmor::synth::rlc_ladder;
use structmor::systems::{verify_j_relations, HermitianStructure};
use structmor::{build_basis, c64, linearize_second_order, make_operator, sprim_reduce};

fn main() -> structmor::Result<()> {
    let so = mna_to_second_order(&assemble_mna(&parse_netlist(&rlc_ladder(15, 4, true))?)?)?;
    let fo = linearize_second_order(&so)?.0;
    let w0 = 2.0 * PI * 1e9;
    let j = HermitianStructure::second_order(so.state_dim(), so.inner_dim());
    let rel = verify_j_relations(&fo, &j, w0)?;
    println!("J-relations hold: {}", rel.all_hold);

    let points = sample_right_half_plane(50, w0, 1);
    println!("full model PSD at all samples: {}", passivity_sample(&so, &points)?.all_psd);
    let basis = build_basis(&make_operator(&fo, c64(w0, 0.0))?, 8, DEFAULT_DEFLATION_TOL)?;
    let red = sprim_reduce(&so, &fo, &basis, DEFAULT_RANK_TOL)?;
    let report = passivity_sample(&red, &points)?;
    println!("SPRIM model (dim {}) PSD at all samples: {}, failures {:?}", red.state_dim(), report.all_psd, report.failures);
    Ok(())
}
