//! J-matrices of linearized Hermitian systems and the relations they satisfy.
//!
//! For a special second-order source, `J = diag(I_N, -I_N0)` is Hermitian and
//! the checked identities are `J K = K^H J`, `J E = E J`, `L^H = J B` with
//! `K = s0 E - A`.
//!
//! For an order-`l` source the J-matrix is the product of a block upper
//! bidiagonal matrix (`I` on the diagonal, `-s0 I` above) with a block Hankel
//! matrix of the shifted sums `P̂_j = sum_{i=0}^{l-j} s0^i P_{j+i}` whose
//! top-right block is `I`. That `J` is not Hermitian, and the identities that
//! actually hold (and that the twice-as-many-moments argument consumes) are
//! `J K = (J K)^H`, `J E = (J E)^H` and `L^H = J B`. For Hermitian `J` these
//! coincide with the second-order forms.

use serde::{Deserialize, Serialize};

use super::{FirstOrderSystem, HigherOrderSystem};
use crate::densela::{c64, Matrix, C64, ONE};
use crate::error::{Error, Result};

/// Relative tolerance (times the max-norm of the compared matrices).
pub const J_RELATION_RTOL: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum StructureKind {
    SecondOrder { n: usize, n0: usize },
    HigherOrder { order: usize, n: usize, s0: f64 },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HermitianStructure {
    pub kind: StructureKind,
    pub j: Matrix,
}

impl HermitianStructure {
    /// `J = diag(I_N, -I_N0)`
    pub fn second_order(n: usize, n0: usize) -> Self {
        let d: Vec<C64> = (0..n + n0)
            .map(|i| if i < n { ONE } else { -ONE })
            .collect();
        HermitianStructure {
            kind: StructureKind::SecondOrder { n, n0 },
            j: Matrix::from_diag(&d),
        }
    }

    pub fn higher_order(sys: &HigherOrderSystem, s0: f64) -> Self {
        let l = sys.order();
        let n = sys.state_dim();
        let s = c64(s0, 0.0);
        // P̂_j for j = 0..=l
        let p_hat: Vec<Matrix> = (0..=l)
            .map(|j| {
                let mut acc = Matrix::zeros(n, n);
                let mut pow = ONE;
                for i in 0..=(l - j) {
                    acc = acc.axpy(pow, &sys.p()[j + i]);
                    pow *= s;
                }
                acc
            })
            .collect();
        let eye = Matrix::identity(n);
        let mut hankel = Matrix::zeros(l * n, l * n);
        for bi in 0..l {
            for bk in 0..l {
                let idx = bi + bk + 1;
                if bi == 0 && bk == l - 1 {
                    hankel.set_block(0, bk * n, &eye);
                } else if idx <= l {
                    hankel.set_block(bi * n, bk * n, &p_hat[idx]);
                }
            }
        }
        let mut upper = Matrix::identity(l * n);
        let shift = eye.scale(-s);
        for bi in 0..l.saturating_sub(1) {
            upper.set_block(bi * n, (bi + 1) * n, &shift);
        }
        HermitianStructure {
            kind: StructureKind::HigherOrder { order: l, n, s0 },
            j: upper.matmul(&hankel),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RelationCheck {
    pub relation: String,
    pub residual: f64,
    pub tolerance: f64,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct JRelationReport {
    pub s0: f64,
    pub checks: Vec<RelationCheck>,
    pub all_hold: bool,
}

fn compare(relation: &str, lhs: &Matrix, rhs: &Matrix) -> RelationCheck {
    let scale = lhs.max_abs().max(rhs.max_abs()).max(f64::MIN_POSITIVE);
    let residual = lhs.max_abs_diff(rhs);
    let tolerance = J_RELATION_RTOL * scale;
    RelationCheck {
        relation: relation.to_string(),
        residual,
        tolerance,
        holds: residual <= tolerance,
    }
}

/// Evaluates every J-relation and reports all residuals.
pub fn j_relation_report(
    sys: &FirstOrderSystem,
    j: &HermitianStructure,
    s0: f64,
) -> Result<JRelationReport> {
    let n1 = sys.state_dim();
    if j.j.shape() != (n1, n1) {
        return Err(Error::Dimension(format!(
            "J is {}x{} but the system has state dimension {n1}",
            j.j.rows(),
            j.j.cols()
        )));
    }
    if let StructureKind::HigherOrder { s0: js0, .. } = j.kind {
        if js0 != s0 {
            return Err(Error::InvalidArgument(format!(
                "J was built for s0 = {js0}, checked at s0 = {s0}"
            )));
        }
    }
    let jm = &j.j;
    let k = sys.pencil_at(c64(s0, 0.0));
    let e = sys.e();
    let jk = jm * &k;
    let je = jm * e;
    let mut checks = Vec::new();
    match j.kind {
        StructureKind::SecondOrder { .. } => {
            checks.push(compare("J(s0E-A) = (s0E-A)^H J", &jk, &(&k.adjoint() * jm)));
            checks.push(compare("J E = E J", &je, &(e * jm)));
            checks.push(compare("J = J^H", jm, &jm.adjoint()));
        }
        StructureKind::HigherOrder { .. } => {
            checks.push(compare("J(s0E-A) = (s0E-A)^H J^H", &jk, &jk.adjoint()));
            checks.push(compare("J E = E^H J^H", &je, &je.adjoint()));
        }
    }
    checks.push(compare("L^H = J B", &sys.l().adjoint(), &(jm * sys.b())));
    let all_hold = checks.iter().all(|c| c.holds);
    Ok(JRelationReport {
        s0,
        checks,
        all_hold,
    })
}

/// Like [`j_relation_report`] but fails with the first violated identity.
pub fn verify_j_relations(
    sys: &FirstOrderSystem,
    j: &HermitianStructure,
    s0: f64,
) -> Result<JRelationReport> {
    let report = j_relation_report(sys, j, s0)?;
    if let Some(bad) = report.checks.iter().find(|c| !c.holds) {
        return Err(Error::RelationViolated {
            relation: bad.relation.clone(),
            residual: bad.residual,
            tolerance: bad.tolerance,
        });
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn second_order_j_is_an_involution() {
        let j = HermitianStructure::second_order(3, 2).j;
        assert!(j.is_hermitian(0.0));
        assert_eq!(&j * &j, Matrix::identity(5));
    }

    #[test]
    fn order_one_j_is_identity() {
        let sys = HigherOrderSystem::new(
            vec![Matrix::identity(2), Matrix::identity(2)],
            Matrix::unit(2, 0),
            vec![Matrix::unit(2, 0).adjoint()],
            Matrix::zeros(1, 1),
        )
        .unwrap();
        assert_eq!(HermitianStructure::higher_order(&sys, 0.7).j, Matrix::identity(2));
    }
}
