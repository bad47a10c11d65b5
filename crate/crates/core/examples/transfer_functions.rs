//! Evaluate a ladder's impedance in both MNA forms.

use structmor::netlist::{assemble_mna, mna_to_first_order, mna_to_second_order, parse_netlist};
use structmor::synth::rlc_ladder;
use structmor::{c64, TransferFunction};

fn main() -> structmor::Result<()> {
    let mna = assemble_mna(&parse_netlist(&rlc_ladder(8, 3, true))?)?;
    let so = mna_to_second_order(&mna)?;
    let fo = mna_to_first_order(&mna)?;
    for f in [1e7, 1e8, 1e9, 1e10] {
        let s = c64(0.0, 2.0 * std::f64::consts::PI * f);
        let h = so.eval_transfer(s)?;
        let diff = (&h - &fo.eval_transfer(s)?).norm_fro() / h.norm_fro();
        println!("f = {f:.0e} Hz  |Z11| = {:.4e}  |Z21| = {:.4e}  forms differ by {diff:.1e}", h[(0, 0)].norm(), h[(1, 0)].norm());
    }
    Ok(())
}
