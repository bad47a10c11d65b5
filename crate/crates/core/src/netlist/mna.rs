use serde::{Deserialize, Serialize};

use super::{ElementKind, Netlist};
use crate::densela::{c64, cholesky, Matrix};
use crate::error::{Error, Result};
use crate::systems::{Factorization, FirstOrderSystem, IntegralTerm, SpecialSecondOrderSystem};

/// Incidence and element matrices of an RCL circuit.
///
/// Incidence matrices are branch x node (datum excluded). Rows follow
/// declaration order within each kind, except `a_i`, whose row `k-1` belongs
/// to the source on port `k`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MnaData {
    pub a_i: Matrix,
    pub a_g: Matrix,
    pub a_c: Matrix,
    pub a_l: Matrix,
    pub g: Matrix,
    pub c: Matrix,
    pub l: Matrix,
    pub node_names: Vec<String>,
}

impl MnaData {
    pub fn num_nodes(&self) -> usize {
        self.node_names.len()
    }

    pub fn num_inductors(&self) -> usize {
        self.a_l.rows()
    }

    pub fn num_ports(&self) -> usize {
        self.a_i.rows()
    }
}

pub fn assemble_mna(nl: &Netlist) -> Result<MnaData> {
    let index = nl.node_index();
    let n = nl.nodes().len();

    let incidence = |rows: Vec<&[String; 2]>| {
        let mut a = Matrix::zeros(rows.len(), n);
        for (r, [p, q]) in rows.into_iter().enumerate() {
            if let Some(&j) = index.get(p.as_str()) {
                a[(r, j)] = c64(1.0, 0.0);
            }
            if let Some(&j) = index.get(q.as_str()) {
                a[(r, j)] = c64(-1.0, 0.0);
            }
        }
        a
    };
    let terminals = |kind| nl.elements_of(kind).map(|e| &e.terminals).collect::<Vec<_>>();

    let mut sources: Vec<_> = nl.elements_of(ElementKind::I).collect();
    sources.sort_by_key(|e| e.port());
    let a_i = incidence(sources.iter().map(|e| &e.terminals).collect());
    let a_g = incidence(terminals(ElementKind::R));
    let a_c = incidence(terminals(ElementKind::C));
    let a_l = incidence(terminals(ElementKind::L));

    let g = Matrix::from_diag(
        &nl.elements_of(ElementKind::R)
            .map(|e| c64(1.0 / e.value, 0.0))
            .collect::<Vec<_>>(),
    );
    let c = Matrix::from_diag(
        &nl.elements_of(ElementKind::C)
            .map(|e| c64(e.value, 0.0))
            .collect::<Vec<_>>(),
    );

    let inductors: Vec<&str> = nl.elements_of(ElementKind::L).map(|e| e.name.as_str()).collect();
    let mut l = Matrix::from_diag(
        &nl.elements_of(ElementKind::L)
            .map(|e| c64(e.value, 0.0))
            .collect::<Vec<_>>(),
    );
    let pos = |name: &str| inductors.iter().position(|&x| x == name).expect("validated");
    for k in nl.elements_of(ElementKind::K) {
        let (i, j) = (pos(&k.terminals[0]), pos(&k.terminals[1]));
        l[(i, j)] += c64(k.value, 0.0);
        l[(j, i)] += c64(k.value, 0.0);
    }
    if !inductors.is_empty() {
        cholesky(&l).map_err(|_| Error::NonPdInductance)?;
    }

    Ok(MnaData {
        a_i,
        a_g,
        a_c,
        a_l,
        g,
        c,
        l,
        node_names: nl.nodes().to_vec(),
    })
}

/// `P1 = Ac^T C Ac`, `P0 = Ag^T G Ag`, `P_-1 = Al^T L^-1 Al` (inverse-product
/// factorization with `F1 = F2 = Al^T`, inner matrix `L`), `B = Ai^T`,
/// `L_out = B^H`.
pub fn mna_to_second_order(d: &MnaData) -> Result<SpecialSecondOrderSystem> {
    let p1 = d.c.congruence(&d.a_c);
    let p0 = d.g.congruence(&d.a_g);
    let alt = d.a_l.transpose();
    let b = d.a_i.transpose();
    let m = b.cols();
    SpecialSecondOrderSystem::new(
        p1,
        p0,
        IntegralTerm {
            variant: Factorization::InverseProduct,
            f1: alt.clone(),
            f2: alt,
            g: d.l.clone(),
        },
        b.clone(),
        b.adjoint(),
        Matrix::zeros(m, m),
    )
}

/// `E = diag(Ac^T C Ac, L)`, `A = [-Ag^T G Ag, -Al^T; Al, 0]`, `B = [Ai^T; 0]`,
/// `L_out = B^H`.
pub fn mna_to_first_order(d: &MnaData) -> Result<FirstOrderSystem> {
    let nl = d.num_inductors();
    let p1 = d.c.congruence(&d.a_c);
    let minus_p0 = -&d.g.congruence(&d.a_g);
    let minus_alt = -&d.a_l.transpose();
    let zero = Matrix::zeros(nl, nl);
    let e = Matrix::block_diag(&[&p1, &d.l]);
    let a = Matrix::from_blocks(&[
        vec![Some(&minus_p0), Some(&minus_alt)],
        vec![Some(&d.a_l), Some(&zero)],
    ]);
    let m = d.num_ports();
    let b = Matrix::vstack(&[&d.a_i.transpose(), &Matrix::zeros(nl, m)]);
    FirstOrderSystem::new(e, a, b.clone(), b.adjoint(), Matrix::zeros(m, m))
}
