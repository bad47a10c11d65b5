//! Block Arnoldi on a system with a redundant input column.

use structmor::krylov::{build_maximal_basis, DEFAULT_DEFLATION_TOL};
use structmor::netlist::{assemble_mna, mna_to_first_order, parse_netlist};
use structmor::{build_basis, c64, make_operator};

// Ports 1 and 2 drive the same node, so the second start column deflates.
const NETLIST: &str = "\
I a 1 0 PORT 1
I b 1 0 PORT 2
R r1 1 2 1
C c1 1 0 1
C c2 2 0 1
L l2 2 0 1
R r2 2 0 4
";

fn main() -> structmor::Result<()> {
    let fo = mna_to_first_order(&assemble_mna(&parse_netlist(NETLIST)?)?)?;
    let op = make_operator(&fo, c64(1.0, 0.0))?;
    let full = build_maximal_basis(&op, DEFAULT_DEFLATION_TOL)?;
    println!("boundaries {:?}, widths {:?}, exhausted {}", full.boundaries, full.block_widths, full.exhausted);
    for d in &full.deflations {
        println!("  block {} dropped column {} (residual {:.1e} of {:.1e})", d.iteration, d.column, d.residual, d.original_norm);
    }
    let b = build_basis(&op, 2, DEFAULT_DEFLATION_TOL)?;
    println!("asked for n = 2, got n = {} (snapped: {})", b.n(), b.snapped());
    Ok(())
}
