//! Equivalent first-order formulations of second-order and order-`l` systems.

use serde::{Deserialize, Serialize};

use crate::densela::{lu_factor, Matrix};
use crate::error::{Error, Result};
use crate::systems::{
    Factorization, FirstOrderSystem, HigherOrderSystem, SpecialSecondOrderSystem,
};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "source", rename_all = "snake_case")]
pub enum LinearizationMap {
    /// State `[x; z2]`, `N1 = N + N0`.
    SecondOrder {
        n: usize,
        n0: usize,
        variant: Factorization,
    },
    /// State `[x; x'; ...; x^(l-1)]`, `N1 = l N`.
    HigherOrder { order: usize, n: usize },
}

impl LinearizationMap {
    pub fn target_dim(&self) -> usize {
        match *self {
            LinearizationMap::SecondOrder { n, n0, .. } => n + n0,
            LinearizationMap::HigherOrder { order, n } => order * n,
        }
    }

    /// `(offset, size)` of each block of first-order state rows.
    pub fn blocks(&self) -> Vec<(usize, usize)> {
        match *self {
            LinearizationMap::SecondOrder { n, n0, .. } => vec![(0, n), (n, n0)],
            LinearizationMap::HigherOrder { order, n } => (0..order).map(|i| (i * n, n)).collect(),
        }
    }
}

/// First-order realization of a special second-order system, in the form
/// matching its `P_-1` factorization:
///
/// * `F1 G F2^H`: `A = [-P0, -F1 G; (F2 G)^H, 0]`, `E = diag(P1, G^H)`
/// * `F1 G^-1 F2^H`: `A = [-P0, -F1; F2^H, 0]`, `E = diag(P1, G)`
///
/// with `B = [B; 0]`, `L = [L, 0]` in both cases.
pub fn linearize_second_order(
    sys: &SpecialSecondOrderSystem,
) -> Result<(FirstOrderSystem, LinearizationMap)> {
    let n = sys.state_dim();
    let n0 = sys.inner_dim();
    let t = sys.integral();
    let (a12, a21, e22) = match t.variant {
        Factorization::Product => {
            let f1g = t.f1.matmul(&t.g);
            let f2g = t.f2.matmul(&t.g);
            (-&f1g, f2g.adjoint(), t.g.adjoint())
        }
        Factorization::InverseProduct => {
            if n0 > 0 {
                lu_factor(&t.g).map_err(|_| Error::SingularInnerG)?;
            }
            (-&t.f1, t.f2.adjoint(), t.g.clone())
        }
    };
    let minus_p0 = -sys.p0();
    let a = Matrix::from_blocks(&[
        vec![Some(&minus_p0), Some(&a12)],
        vec![Some(&a21), Some(&Matrix::zeros(n0, n0))],
    ]);
    let e = Matrix::block_diag(&[sys.p1(), &e22]);
    let m = sys.b().cols();
    let p = sys.l().rows();
    let b = Matrix::vstack(&[sys.b(), &Matrix::zeros(n0, m)]);
    let l = Matrix::hstack(&[sys.l(), &Matrix::zeros(p, n0)]);
    let fo = FirstOrderSystem::with_hint(e, a, b, l, sys.d().clone(), Some(sys.regularity_witness()))?;
    Ok((
        fo,
        LinearizationMap::SecondOrder {
            n,
            n0,
            variant: t.variant,
        },
    ))
}

/// Companion realization of an order-`l` system:
/// `E = diag(I, .., I, P_l)`, `A = -[0, -I, ..; ..; P_0, .., P_{l-1}]`,
/// `B = [0; ..; 0; B]`, `L = [L_0, .., L_{l-1}]`.
pub fn linearize_higher_order(sys: &HigherOrderSystem) -> Result<(FirstOrderSystem, LinearizationMap)> {
    let l = sys.order();
    let n = sys.state_dim();
    let (e, a) = companion_pencil(sys.p(), n);
    let m = sys.b().cols();
    let mut b = Matrix::zeros(l * n, m);
    b.set_block((l - 1) * n, 0, sys.b());
    let lmat = Matrix::hstack(&sys.l().iter().collect::<Vec<_>>());
    let fo = FirstOrderSystem::with_hint(e, a, b, lmat, sys.d().clone(), Some(sys.regularity_witness()))?;
    Ok((fo, LinearizationMap::HigherOrder { order: l, n }))
}

/// `(E, A)` of the companion form; identity and zero blocks are exact.
pub(crate) fn companion_pencil(p: &[Matrix], n: usize) -> (Matrix, Matrix) {
    let l = p.len() - 1;
    let eye = Matrix::identity(n);
    let mut e = Matrix::identity(l * n);
    e.set_block((l - 1) * n, (l - 1) * n, &p[l]);
    let mut a = Matrix::zeros(l * n, l * n);
    for i in 0..l - 1 {
        a.set_block(i * n, (i + 1) * n, &eye);
    }
    for (k, pk) in p.iter().take(l).enumerate() {
        a.set_block((l - 1) * n, k * n, &-pk);
    }
    (e, a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::densela::c64;
    use crate::systems::{IntegralTerm, TransferFunction};

    fn scalar(x: f64) -> Matrix {
        Matrix::from_real_rows(&[[x]])
    }

    fn rlc(variant: Factorization) -> SpecialSecondOrderSystem {
        SpecialSecondOrderSystem::new(
            scalar(1.0),
            scalar(1.0),
            IntegralTerm {
                variant,
                f1: scalar(1.0),
                f2: scalar(1.0),
                g: scalar(1.0),
            },
            scalar(1.0),
            scalar(1.0),
            scalar(0.0),
        )
        .unwrap()
    }

    #[test]
    fn minimal_rlc_both_variants() {
        let expected_a = Matrix::from_real_rows(&[[-1.0, -1.0], [1.0, 0.0]]);
        for v in [Factorization::InverseProduct, Factorization::Product] {
            let (fo, map) = linearize_second_order(&rlc(v)).unwrap();
            assert_eq!(fo.a(), &expected_a);
            assert_eq!(fo.e(), &Matrix::identity(2));
            assert_eq!(fo.b(), &Matrix::from_real_rows(&[[1.0], [0.0]]));
            assert_eq!(map.target_dim(), 2);
        }
    }

    #[test]
    fn order_one_is_identity_mapping() {
        let p0 = Matrix::from_real_rows(&[[2.0, 1.0], [0.0, 3.0]]);
        let p1 = Matrix::from_real_rows(&[[1.0, 0.0], [0.5, 1.0]]);
        let sys = HigherOrderSystem::new(
            vec![p0.clone(), p1.clone()],
            Matrix::unit(2, 0),
            vec![Matrix::unit(2, 1).adjoint()],
            scalar(0.0),
        )
        .unwrap();
        let (fo, map) = linearize_higher_order(&sys).unwrap();
        assert_eq!(fo.e(), &p1);
        assert_eq!(fo.a(), &-&p0);
        assert_eq!(map.target_dim(), 2);
    }

    #[test]
    fn scalar_second_order_companion() {
        let sys = HigherOrderSystem::new(
            vec![scalar(1.0), scalar(1.0), scalar(1.0)],
            scalar(1.0),
            vec![scalar(1.0), scalar(0.0)],
            scalar(0.0),
        )
        .unwrap();
        let (fo, _) = linearize_higher_order(&sys).unwrap();
        assert_eq!(fo.e(), &Matrix::identity(2));
        assert_eq!(fo.a(), &Matrix::from_real_rows(&[[0.0, 1.0], [-1.0, -1.0]]));
        assert_eq!(fo.b(), &Matrix::from_real_rows(&[[0.0], [1.0]]));
        assert_eq!(fo.l(), &Matrix::from_real_rows(&[[1.0, 0.0]]));
        let h = fo.eval_transfer(c64(1.0, 0.0)).unwrap();
        assert!((h[(0, 0)] - c64(1.0 / 3.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn no_integral_term() {
        let sys = SpecialSecondOrderSystem::new(
            scalar(1.0),
            scalar(1.0),
            IntegralTerm::none(1),
            scalar(1.0),
            scalar(1.0),
            scalar(0.0),
        )
        .unwrap();
        let (fo, map) = linearize_second_order(&sys).unwrap();
        assert_eq!(fo.state_dim(), 1);
        assert_eq!(map.blocks(), vec![(0, 1), (1, 0)]);
    }
}
