//! Sweep a generated ladder and print a CSV slice.

use structmor::analysis::{frequency_grid, sweep, GridScale};
use structmor::netlist::{assemble_mna, mna_to_second_order, parse_netlist};
use structmor::synth::rc_ladder;

fn main() -> structmor::Result<()> {
    let so = mna_to_second_order(&assemble_mna(&parse_netlist(&rc_ladder(30, 2))?)?)?;
    let grid = frequency_grid(1e6, 1e11, 11, GridScale::Log)?;
    let response = sweep(&so, &grid, "rc30");
    print!("{}", response.to_csv(Some(&[(0, 0)])));
    Ok(())
}
