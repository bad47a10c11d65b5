//! Seeded synthetic systems and circuit netlists.

use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::densela::{c64, Matrix, C64};
use crate::error::Result;
use crate::systems::{Factorization, HigherOrderSystem, IntegralTerm, SpecialSecondOrderSystem};

pub type SynthRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SynthRng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn entry(rng: &mut SynthRng, complex: bool) -> C64 {
    let re = rng.gen_range(-1.0..1.0);
    let im = if complex { rng.gen_range(-1.0..1.0) } else { 0.0 };
    c64(re, im)
}

pub fn random_matrix(rng: &mut SynthRng, rows: usize, cols: usize, complex: bool) -> Matrix {
    Matrix::from_fn(rows, cols, |_, _| entry(rng, complex))
}

/// `X X^H / n + shift I`, Hermitian positive definite with eigenvalues in
/// roughly `[shift, shift + 4]`.
pub fn random_hpd(rng: &mut SynthRng, n: usize, shift: f64, complex: bool) -> Matrix {
    let x = random_matrix(rng, n, n, complex);
    let mut m = x.matmul(&x.adjoint()).scale(c64(1.0 / n.max(1) as f64, 0.0));
    for i in 0..n {
        m[(i, i)] += c64(shift, 0.0);
    }
    m.hermitian_part()
}

/// Random matrix with diagonal `shift + U(0, 1)`, well away from singular.
fn random_shifted(rng: &mut SynthRng, n: usize, shift: f64, complex: bool) -> Matrix {
    let mut m = random_matrix(rng, n, n, complex).scale(c64(0.5 / (n as f64).sqrt(), 0.0));
    for i in 0..n {
        m[(i, i)] += c64(shift + rng.gen_range(0.0..1.0), 0.0);
    }
    m
}

#[derive(Clone, Copy, Debug)]
pub struct SecondOrderSpec {
    pub n: usize,
    pub n0: usize,
    pub inputs: usize,
    pub outputs: usize,
    pub variant: Factorization,
    pub hermitian: bool,
    pub complex: bool,
    /// Characteristic angular frequency: the system is `H(s / omega)` of a
    /// unit-scale one.
    pub omega: f64,
}

/// Random special second-order system. Hermitian ones have `P1, P0, G`
/// positive definite, `F1 = F2` and `L = B^H`.
pub fn random_second_order(rng: &mut SynthRng, spec: SecondOrderSpec) -> Result<SpecialSecondOrderSystem> {
    let SecondOrderSpec { n, n0, inputs, .. } = spec;
    let cx = spec.complex;
    let (p1, p0, f1, f2) = if spec.hermitian {
        let f = random_matrix(rng, n, n0, cx);
        (random_hpd(rng, n, 0.5, cx), random_hpd(rng, n, 0.5, cx), f.clone(), f)
    } else {
        (
            random_shifted(rng, n, 1.0, cx),
            random_shifted(rng, n, 1.0, cx),
            random_matrix(rng, n, n0, cx),
            random_matrix(rng, n, n0, cx),
        )
    };
    let g = if spec.hermitian {
        random_hpd(rng, n0, 0.5, cx)
    } else {
        random_shifted(rng, n0, 1.0, cx)
    };
    let b = random_matrix(rng, n, inputs, cx);
    let l = if spec.hermitian {
        b.adjoint()
    } else {
        random_matrix(rng, spec.outputs, n, cx)
    };
    // H(s / omega): P1 -> P1 / omega, P_-1 -> omega P_-1.
    let w = c64(spec.omega, 0.0);
    let g = match spec.variant {
        Factorization::Product => g.scale(w),
        Factorization::InverseProduct => g.scale(w.inv()),
    };
    let d = Matrix::zeros(l.rows(), inputs);
    SpecialSecondOrderSystem::new(
        p1.scale(w.inv()),
        p0,
        IntegralTerm {
            variant: spec.variant,
            f1,
            f2,
            g,
        },
        b,
        l,
        d,
    )
}

#[derive(Clone, Copy, Debug)]
pub struct HigherOrderSpec {
    pub order: usize,
    pub n: usize,
    pub inputs: usize,
    pub outputs: usize,
    pub hermitian: bool,
    pub complex: bool,
    pub omega: f64,
}

/// Random order-`l` system. Hermitian ones have every `P_i` positive
/// definite, `L_0 = B^H` and `L_j = 0` for `j > 0`.
pub fn random_higher_order(rng: &mut SynthRng, spec: HigherOrderSpec) -> Result<HigherOrderSystem> {
    let HigherOrderSpec { order, n, inputs, .. } = spec;
    let cx = spec.complex;
    let winv = c64(1.0 / spec.omega, 0.0);
    let mut scale = c64(1.0, 0.0);
    let mut p = Vec::with_capacity(order + 1);
    for _ in 0..=order {
        let m = if spec.hermitian {
            random_hpd(rng, n, 0.5, cx)
        } else {
            random_shifted(rng, n, 1.0, cx)
        };
        p.push(m.scale(scale));
        scale *= winv;
    }
    let b = random_matrix(rng, n, inputs, cx);
    let l: Vec<Matrix> = if spec.hermitian {
        std::iter::once(b.adjoint())
            .chain((1..order).map(|_| Matrix::zeros(inputs, n)))
            .collect()
    } else {
        let mut scale = c64(1.0, 0.0);
        (0..order)
            .map(|_| {
                let m = random_matrix(rng, spec.outputs, n, cx).scale(scale);
                scale *= winv;
                m
            })
            .collect()
    };
    let d = Matrix::zeros(l[0].rows(), inputs);
    HigherOrderSystem::new(p, b, l, d)
}

/// One member of the randomized test corpus.
#[derive(Clone, Debug)]
pub enum CorpusSystem {
    SecondOrder(SpecialSecondOrderSystem),
    HigherOrder(HigherOrderSystem),
}

impl CorpusSystem {
    pub fn is_hermitian(&self) -> bool {
        match self {
            CorpusSystem::SecondOrder(s) => s.is_hermitian(),
            CorpusSystem::HigherOrder(s) => s.is_hermitian(),
        }
    }
}

/// `count` random systems alternating between second-order (both
/// factorizations, `N <= 12`, `N0 <= 6`) and higher-order (`l <= 4`,
/// `N <= 8`); every other pair is Hermitian.
pub fn random_corpus(seed: u64, count: usize, omega: f64) -> Result<Vec<CorpusSystem>> {
    let mut rng = rng(seed);
    let mut out = Vec::with_capacity(count);
    for k in 0..count {
        let hermitian = (k / 2) % 2 == 0;
        let complex = k % 3 == 0;
        let inputs = rng.gen_range(1..=3);
        let outputs = if hermitian { inputs } else { rng.gen_range(1..=3) };
        if k % 2 == 0 {
            let n = rng.gen_range(2..=12);
            let n0 = rng.gen_range(0..=n.min(6));
            let variant = if k % 4 == 0 {
                Factorization::InverseProduct
            } else {
                Factorization::Product
            };
            let spec = SecondOrderSpec {
                n,
                n0,
                inputs,
                outputs,
                variant,
                hermitian,
                complex,
                omega,
            };
            out.push(CorpusSystem::SecondOrder(random_second_order(&mut rng, spec)?));
        } else {
            let spec = HigherOrderSpec {
                order: rng.gen_range(1..=4),
                n: rng.gen_range(2..=8),
                inputs,
                outputs,
                hermitian,
                complex,
                omega,
            };
            out.push(CorpusSystem::HigherOrder(random_higher_order(&mut rng, spec)?));
        }
    }
    Ok(out)
}

/// `count` points with `0.1 <= Re(s) <= 2` and `|Im(s)| <= 2`, times `omega`.
pub fn random_points(rng: &mut SynthRng, count: usize, omega: f64) -> Vec<C64> {
    (0..count)
        .map(|_| c64(rng.gen_range(0.1..2.0), rng.gen_range(-2.0..2.0)) * omega)
        .collect()
}

fn jitter(rng: &mut SynthRng, x: f64) -> f64 {
    x * rng.gen_range(0.8..1.2)
}

/// RC ladder: series `R` from node `k` to `k+1`, shunt `C` at every node,
/// a terminating resistor at the last node and one port at node 1.
pub fn rc_ladder(sections: usize, seed: u64) -> String {
    let mut rng = rng(seed);
    let mut out = format!("# RC ladder, {sections} sections, seed {seed}\nI in 1 0 PORT 1\n");
    for k in 1..=sections + 1 {
        let _ = writeln!(out, "C c{k} {k} 0 {:e}", jitter(&mut rng, 5e-13));
    }
    for k in 1..=sections {
        let _ = writeln!(out, "R r{k} {k} {} {:e}", k + 1, jitter(&mut rng, 5.0));
    }
    let _ = writeln!(out, "R rterm {} 0 {:e}", sections + 1, 50.0);
    out
}

/// Nominal per-section element values of the ladder generators; each
/// instance is jittered by up to 20%.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LadderValues {
    pub r: f64,
    pub l: f64,
    pub c: f64,
    /// Port termination resistance.
    pub r_term: f64,
}

impl Default for LadderValues {
    /// On-chip interconnect scale: about 5 ohm, 100 pH and 50 fF per section.
    fn default() -> Self {
        LadderValues {
            r: 5.0,
            l: 1e-10,
            c: 5e-14,
            r_term: 50.0,
        }
    }
}

/// RLC ladder: per section a series `R`-`L` pair and a shunt `C`; ports at
/// both ends, each terminated by `r_term`. With `coupling`, adjacent
/// inductors are coupled with coefficient up to 0.3.
pub fn rlc_ladder(sections: usize, seed: u64, coupling: bool) -> String {
    rlc_ladder_with(sections, seed, coupling, LadderValues::default())
}

pub fn rlc_ladder_with(sections: usize, seed: u64, coupling: bool, v: LadderValues) -> String {
    let mut rng = rng(seed);
    let last = sections + 1;
    let mut out = format!(
        "# RLC ladder, {sections} sections, seed {seed}{}\nI in 1 0 PORT 1\nI out {last} 0 PORT 2\n",
        if coupling { ", coupled" } else { "" }
    );
    let _ = writeln!(out, "R rin 1 0 {:e}", v.r_term);
    let _ = writeln!(out, "R rout {last} 0 {:e}", v.r_term);
    let _ = writeln!(out, "C c1 1 0 {:e}", jitter(&mut rng, v.c));
    let mut inductances = Vec::with_capacity(sections);
    for k in 1..=sections {
        let mid = format!("m{k}");
        let l = jitter(&mut rng, v.l);
        inductances.push(l);
        let _ = writeln!(out, "R r{k} {k} {mid} {:e}", jitter(&mut rng, v.r));
        let _ = writeln!(out, "L l{k} {mid} {} {:e}", k + 1, l);
        let _ = writeln!(out, "C c{} {} 0 {:e}", k + 1, k + 1, jitter(&mut rng, v.c));
    }
    if coupling {
        for k in 1..sections {
            let kc = rng.gen_range(0.05..0.3);
            let m = kc * (inductances[k - 1] * inductances[k]).sqrt();
            let _ = writeln!(out, "K k{k} l{k} l{} {:e}", k + 1, m);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::netlist::{assemble_mna, parse_netlist};

    #[test]
    fn generators_are_deterministic() {
        assert_eq!(rlc_ladder(6, 7, true), rlc_ladder(6, 7, true));
        assert_ne!(rlc_ladder(6, 7, false), rlc_ladder(6, 8, false));
    }

    #[test]
    fn ladders_assemble() {
        let nl = parse_netlist(&rlc_ladder(5, 1, true)).unwrap();
        assert_eq!(nl.num_ports(), 2);
        let d = assemble_mna(&nl).unwrap();
        assert_eq!(d.num_inductors(), 5);
        assert_eq!(d.num_nodes(), 11);
        let nl = parse_netlist(&rc_ladder(2, 1)).unwrap();
        assert_eq!(nl.nodes().len(), 3);
    }

    #[test]
    fn corpus_mix() {
        let c = random_corpus(11, 8, 1.0).unwrap();
        assert_eq!(c.len(), 8);
        assert!(c[0].is_hermitian());
        assert!(!c[2].is_hermitian());
        assert!(matches!(c[1], CorpusSystem::HigherOrder(_)));
    }
}
