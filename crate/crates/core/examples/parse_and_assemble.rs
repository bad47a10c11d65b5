//! Parse a small RLC netlist and look at the MNA blocks.

use structmor::netlist::{assemble_mna, mna_to_second_order, parse_netlist};

const NETLIST: &str = "\
# two coupled loops
I in 1 0 PORT 1
R r1 1 2 10
C c1 2 0 1p
L l1 2 3 1n
L l2 3 0 2n
K k12 l1 l2 0.5n
C c2 3 0 2p
";

fn main() -> structmor::Result<()> {
    let nl = parse_netlist(NETLIST)?;
    println!("nodes {:?}, ports {}", nl.nodes(), nl.num_ports());
    let mna = assemble_mna(&nl)?;
    println!("A_c {:?}  A_g {:?}  A_l {:?}  A_i {:?}", mna.a_c.shape(), mna.a_g.shape(), mna.a_l.shape(), mna.a_i.shape());
    let so = mna_to_second_order(&mna)?;
    println!("N = {}, N0 = {}, hermitian = {}", so.state_dim(), so.inner_dim(), so.is_hermitian());
    println!("canonical form:\n{nl}");
    Ok(())
}
