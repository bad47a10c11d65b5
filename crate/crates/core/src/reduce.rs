//! Projection-based reduced-order models.
//!
//! * PRIMA: `A_n = V^H A V`, `E_n = V^H E V`, `B_n = V^H B`, `L_n = L V`.
//! * SPRIM: the basis is split into its `x` and `z2` row blocks, each block is
//!   re-orthonormalized on its own, and the block-diagonal projector keeps the
//!   special second-order structure.
//! * Higher order: the `l` row blocks are merged into one `N x r` basis `S`
//!   and `diag(S, .., S)` keeps the companion structure.
//!
//! Zero and identity blocks of the structured reductions are assembled, never
//! computed, so they hold bit for bit.

use serde::{Deserialize, Serialize};

use crate::densela::{lu_factor, orthonormalize, vec_norm, Matrix, C64};
use crate::error::{Error, Result};
use crate::krylov::KrylovBasis;
use crate::linearize::companion_pencil;
use crate::systems::{
    Factorization, FirstOrderSystem, HigherOrderSystem, IntegralTerm, SpecialSecondOrderSystem,
    TransferFunction,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReductionMethod {
    Prima,
    Sprim,
    HigherOrder,
}

impl ReductionMethod {
    pub fn name(self) -> &'static str {
        match self {
            ReductionMethod::Prima => "prima",
            ReductionMethod::Sprim => "sprim",
            ReductionMethod::HigherOrder => "higher_order",
        }
    }

    pub fn is_structure_preserving(self) -> bool {
        !matches!(self, ReductionMethod::Prima)
    }
}

/// Reduced model in the structure of its source.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "form", rename_all = "snake_case")]
pub enum StructuredForm {
    SecondOrder(SpecialSecondOrderSystem),
    HigherOrder(HigherOrderSystem),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub s0: C64,
    pub requested_n: usize,
    /// Columns of the Krylov basis used.
    pub n: usize,
    /// Number of Krylov blocks `j(n)`.
    pub j: usize,
    pub boundaries: Vec<usize>,
    pub block_widths: Vec<usize>,
    pub deflations: usize,
    /// Column counts of the structured projector blocks: `[n1, n2]` for SPRIM,
    /// `[r]` for higher order, `[n]` for PRIMA.
    pub block_columns: Vec<usize>,
    /// Source satisfies the Hermitian identities.
    pub hermitian_source: bool,
    pub rank_tol: f64,
}

impl Provenance {
    fn new(basis: &KrylovBasis, block_columns: Vec<usize>, hermitian_source: bool, tol: f64) -> Self {
        Provenance {
            s0: basis.s0,
            requested_n: basis.requested_n,
            n: basis.n(),
            j: basis.j(),
            boundaries: basis.boundaries.clone(),
            block_widths: basis.block_widths.clone(),
            deflations: basis.deflations.len(),
            block_columns,
            hermitian_source,
            rank_tol: tol,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ReducedModel {
    pub method: ReductionMethod,
    /// `(E_n, A_n, B_n, L_n, D_n)`
    pub first_order: FirstOrderSystem,
    pub structured: Option<StructuredForm>,
    /// The projector `V` (`N1 x n_red`).
    pub projection: Matrix,
    pub provenance: Provenance,
}

impl ReducedModel {
    pub fn state_dim(&self) -> usize {
        self.first_order.state_dim()
    }

    /// Doubling applies: Hermitian source, real `s0`, structure-preserving
    /// projection.
    pub fn doubling_expected(&self) -> bool {
        self.provenance.hermitian_source
            && self.method.is_structure_preserving()
            && self.provenance.s0.im == 0.0
    }
}

impl TransferFunction for ReducedModel {
    fn num_inputs(&self) -> usize {
        self.first_order.num_inputs()
    }

    fn num_outputs(&self) -> usize {
        self.first_order.num_outputs()
    }

    fn eval_transfer(&self, s: C64) -> Result<Matrix> {
        self.first_order.eval_transfer(s)
    }
}

fn check_basis(sys: &FirstOrderSystem, basis: &KrylovBasis) -> Result<()> {
    if basis.v.rows() != sys.state_dim() {
        return Err(Error::Dimension(format!(
            "basis has {} rows but the system has {} states",
            basis.v.rows(),
            sys.state_dim()
        )));
    }
    if basis.n() == 0 {
        return Err(Error::InvalidArgument("empty Krylov basis".into()));
    }
    Ok(())
}

/// Builds the reduced first-order system, rejecting a singular `s0 E_n - A_n`.
fn reduced_system(e: Matrix, a: Matrix, b: Matrix, l: Matrix, d: Matrix, s0: C64) -> Result<FirstOrderSystem> {
    let pencil = &e.scale(s0) - &a;
    lu_factor(&pencil).map_err(|_| Error::ReducedPencilSingular)?;
    FirstOrderSystem::with_hint(e, a, b, l, d, Some(s0)).map_err(|err| match err {
        Error::SingularPencil => Error::ReducedPencilSingular,
        other => other,
    })
}

/// Orthonormal basis of `range(block)`, dropping columns that are negligible
/// relative to the unit-norm Krylov vectors they came from.
fn orthonormal_range(block: &Matrix, tol: f64) -> Matrix {
    let keep: Vec<usize> = (0..block.cols())
        .filter(|&j| vec_norm(block.col(j)) >= tol)
        .collect();
    orthonormalize(&block.select_cols(&keep), None, tol).0
}

pub fn prima_reduce(sys: &FirstOrderSystem, basis: &KrylovBasis) -> Result<ReducedModel> {
    check_basis(sys, basis)?;
    let v = &basis.v;
    let first_order = reduced_system(
        sys.e().congruence(v),
        sys.a().congruence(v),
        v.adjoint_mul(sys.b()),
        sys.l().matmul(v),
        sys.d().clone(),
        basis.s0,
    )?;
    Ok(ReducedModel {
        method: ReductionMethod::Prima,
        first_order,
        structured: None,
        projection: v.clone(),
        provenance: Provenance::new(basis, vec![v.cols()], false, basis.tol),
    })
}

/// SPRIM. `sys_fo` must be `linearize_second_order(sys)` and `basis` a Krylov
/// basis of it.
///
/// With an integral term (`N0 > 0`), `s = 0` is a singular point of
/// `s P1 + P0 + P_-1 / s` and is rejected as an expansion point: the split
/// basis then gives `F~ = 0` and a singular reduced pencil.
pub fn sprim_reduce(
    sys: &SpecialSecondOrderSystem,
    sys_fo: &FirstOrderSystem,
    basis: &KrylovBasis,
    tol: f64,
) -> Result<ReducedModel> {
    check_basis(sys_fo, basis)?;
    let n = sys.state_dim();
    let n0 = sys.inner_dim();
    if sys_fo.state_dim() != n + n0 {
        return Err(Error::Dimension("first-order data do not match the second-order system".into()));
    }
    if n0 > 0 && basis.s0 == C64::new(0.0, 0.0) {
        return Err(Error::ExpansionPointIsPole { re: 0.0, im: 0.0 });
    }
    let v1 = orthonormal_range(&basis.v.rows_range(0, n), tol);
    let v2 = orthonormal_range(&basis.v.rows_range(n, n0), tol);
    let (n1, n2) = (v1.cols(), v2.cols());

    let t = sys.integral();
    let g_red = t.g.congruence(&v2);
    let g_lu = if n2 > 0 {
        Some(lu_factor(&g_red).map_err(|_| Error::ReducedInnerGSingular)?)
    } else {
        None
    };

    let p1 = sys.p1().congruence(&v1);
    // P0 here, not P1.
    let p0 = sys.p0().congruence(&v1);
    let b = v1.adjoint_mul(sys.b());
    let l = sys.l().matmul(&v1);
    let m = b.cols();
    let p = l.rows();

    // Off-diagonal blocks of A_n, and the recovered factors of P~_-1.
    let (a12, a21, e22, integral) = match t.variant {
        Factorization::InverseProduct => {
            let f1 = v1.adjoint_mul(&t.f1.matmul(&v2));
            let f2 = v1.adjoint_mul(&t.f2.matmul(&v2));
            let term = IntegralTerm {
                variant: Factorization::InverseProduct,
                f1: f1.clone(),
                f2: f2.clone(),
                g: g_red.clone(),
            };
            (-&f1, f2.adjoint(), g_red.clone(), term)
        }
        Factorization::Product => {
            // X_k = V1^H F_k G V2 = F~_k G~
            let x1 = v1.adjoint_mul(&t.f1.matmul(&t.g).matmul(&v2));
            let x2 = v1.adjoint_mul(&t.f2.matmul(&t.g).matmul(&v2));
            let right_solve = |x: &Matrix| match &g_lu {
                Some(lu) => lu.solve_adjoint(&x.adjoint()).adjoint(),
                None => x.clone(),
            };
            let term = IntegralTerm {
                variant: Factorization::Product,
                f1: right_solve(&x1),
                f2: right_solve(&x2),
                g: g_red.clone(),
            };
            (-&x1, x2.adjoint(), g_red.adjoint(), term)
        }
    };

    let zero22 = Matrix::zeros(n2, n2);
    let minus_p0 = -&p0;
    let e = Matrix::block_diag(&[&p1, &e22]);
    let a = Matrix::from_blocks(&[
        vec![Some(&minus_p0), Some(&a12)],
        vec![Some(&a21), Some(&zero22)],
    ]);
    let bn = Matrix::vstack(&[&b, &Matrix::zeros(n2, m)]);
    let ln = Matrix::hstack(&[&l, &Matrix::zeros(p, n2)]);
    let first_order = reduced_system(e, a, bn, ln, sys.d().clone(), basis.s0)?;

    let structured = SpecialSecondOrderSystem::new(p1, p0, integral, b, l, sys.d().clone())
        .map_err(|err| match err {
            Error::SingularPencil => Error::ReducedPencilSingular,
            Error::SingularInnerG => Error::ReducedInnerGSingular,
            other => other,
        })?;

    Ok(ReducedModel {
        method: ReductionMethod::Sprim,
        first_order,
        structured: Some(StructuredForm::SecondOrder(structured)),
        projection: Matrix::block_diag(&[&v1, &v2]),
        provenance: Provenance::new(basis, vec![n1, n2], sys.is_hermitian(), tol),
    })
}

/// Structure-preserving reduction of an order-`l` system. `sys_fo` must be
/// `linearize_higher_order(sys)` and `basis` a Krylov basis of it.
pub fn higher_order_reduce(
    sys: &HigherOrderSystem,
    sys_fo: &FirstOrderSystem,
    basis: &KrylovBasis,
    tol: f64,
) -> Result<ReducedModel> {
    check_basis(sys_fo, basis)?;
    let order = sys.order();
    let n = sys.state_dim();
    if sys_fo.state_dim() != order * n {
        return Err(Error::Dimension("first-order data do not match the higher-order system".into()));
    }
    let s = if order == 1 {
        basis.v.clone()
    } else {
        let blocks: Vec<Matrix> = (0..order).map(|i| basis.v.rows_range(i * n, n)).collect();
        orthonormal_range(&Matrix::hstack(&blocks.iter().collect::<Vec<_>>()), tol)
    };
    let r = s.cols();

    let p_red: Vec<Matrix> = sys.p().iter().map(|pi| pi.congruence(&s)).collect();
    let b_red = s.adjoint_mul(sys.b());
    let l_red: Vec<Matrix> = sys.l().iter().map(|lj| lj.matmul(&s)).collect();

    let (e, a) = companion_pencil(&p_red, r);
    let mut bn = Matrix::zeros(order * r, b_red.cols());
    bn.set_block((order - 1) * r, 0, &b_red);
    let ln = Matrix::hstack(&l_red.iter().collect::<Vec<_>>());
    let first_order = reduced_system(e, a, bn, ln, sys.d().clone(), basis.s0)?;

    let structured = HigherOrderSystem::new(p_red, b_red, l_red, sys.d().clone()).map_err(|err| match err {
        Error::SingularPencil => Error::ReducedPencilSingular,
        other => other,
    })?;

    Ok(ReducedModel {
        method: ReductionMethod::HigherOrder,
        first_order,
        structured: Some(StructuredForm::HigherOrder(structured)),
        projection: Matrix::block_diag(&vec![&s; order]),
        provenance: Provenance::new(basis, vec![r], sys.is_hermitian(), tol),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BlockCheck {
    pub block: String,
    pub exact: bool,
}

/// Bitwise check of the zero and identity blocks a structured reduction must
/// carry; empty for PRIMA.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StructureCheck {
    pub blocks: Vec<BlockCheck>,
    pub all_exact: bool,
}

fn is_exact(m: &Matrix, identity: bool) -> bool {
    let one = 1f64.to_bits();
    (0..m.cols()).all(|j| {
        m.col(j).iter().enumerate().all(|(i, z)| {
            let re = if identity && i == j { one } else { 0 };
            z.re.to_bits() == re && z.im.to_bits() == 0
        })
    })
}

pub fn structure_check(model: &ReducedModel) -> StructureCheck {
    let fo = &model.first_order;
    let (e, a, b, l) = (fo.e(), fo.a(), fo.b(), fo.l());
    let mut blocks = Vec::new();
    let mut push = |name: String, m: Matrix, identity: bool| {
        let exact = is_exact(&m, identity);
        blocks.push(BlockCheck { block: name, exact });
    };
    match model.method {
        ReductionMethod::Prima => {}
        ReductionMethod::Sprim => {
            let (n1, n2) = (model.provenance.block_columns[0], model.provenance.block_columns[1]);
            push("E12".into(), e.submatrix(0, n1, n1, n2), false);
            push("E21".into(), e.submatrix(n1, 0, n2, n1), false);
            push("A22".into(), a.submatrix(n1, n1, n2, n2), false);
            push("B2".into(), b.rows_range(n1, n2), false);
            push("L2".into(), l.submatrix(0, n1, l.rows(), n2), false);
        }
        ReductionMethod::HigherOrder => {
            let r = model.provenance.block_columns[0];
            let order = fo.state_dim() / r.max(1);
            for i in 0..order.saturating_sub(1) {
                for k in 0..order {
                    push(format!("E{}{}", i + 1, k + 1), e.submatrix(i * r, k * r, r, r), i == k);
                    push(format!("A{}{}", i + 1, k + 1), a.submatrix(i * r, k * r, r, r), k == i + 1);
                }
                push(format!("E{}{}", order, i + 1), e.submatrix((order - 1) * r, i * r, r, r), false);
                push(format!("B{}", i + 1), b.rows_range(i * r, r), false);
            }
        }
    }
    let all_exact = blocks.iter().all(|c| c.exact);
    StructureCheck { blocks, all_exact }
}
