use serde::{Deserialize, Serialize};

use super::{find_regular_point, HermitianReport, TransferFunction, HERMITIAN_TOL};
use crate::densela::{lu_factor, Matrix, C64, ONE, ZERO};
use crate::error::{Error, Result};

/// How `P_-1` is factored.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Factorization {
    /// `P_-1 = F1 G F2^H`, `G` may be singular.
    #[serde(rename = "AF1")]
    Product,
    /// `P_-1 = F1 G^-1 F2^H`, `G` nonsingular.
    #[serde(rename = "AF2")]
    InverseProduct,
}

/// Factored representation of the integral-term matrix `P_-1`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct IntegralTerm {
    pub variant: Factorization,
    pub f1: Matrix,
    pub f2: Matrix,
    pub g: Matrix,
}

impl IntegralTerm {
    pub fn inner_dim(&self) -> usize {
        self.g.rows()
    }

    /// No integral term (`N0 = 0`).
    pub fn none(n: usize) -> Self {
        IntegralTerm {
            variant: Factorization::InverseProduct,
            f1: Matrix::zeros(n, 0),
            f2: Matrix::zeros(n, 0),
            g: Matrix::zeros(0, 0),
        }
    }

    /// Dense `P_-1`.
    pub fn dense(&self) -> Result<Matrix> {
        let f2h = self.f2.adjoint();
        let inner = match self.variant {
            Factorization::Product => self.g.matmul(&f2h),
            Factorization::InverseProduct => {
                if self.inner_dim() == 0 {
                    f2h
                } else {
                    lu_factor(&self.g)
                        .map_err(|_| Error::SingularInnerG)?
                        .solve(&f2h)
                }
            }
        };
        Ok(self.f1.matmul(&inner))
    }
}

/// Special second-order (integro-DAE) system
/// `P1 x' + P0 x + P_-1 ∫x = B u`, `y = D u + L x`.
#[derive(Clone, Debug, Serialize)]
pub struct SpecialSecondOrderSystem {
    p1: Matrix,
    p0: Matrix,
    integral: IntegralTerm,
    b: Matrix,
    l: Matrix,
    d: Matrix,
    #[serde(skip)]
    pm1: Matrix,
    #[serde(skip)]
    probe: C64,
}

impl SpecialSecondOrderSystem {
    pub fn new(
        p1: Matrix,
        p0: Matrix,
        integral: IntegralTerm,
        b: Matrix,
        l: Matrix,
        d: Matrix,
    ) -> Result<Self> {
        let n = p1.rows();
        let n0 = integral.g.rows();
        let check = |ok: bool, what: &str| {
            if ok {
                Ok(())
            } else {
                Err(Error::Dimension(format!("second-order system: {what}")))
            }
        };
        check(p1.shape() == (n, n), "P1 must be square")?;
        check(p0.shape() == (n, n), "P0 must match P1")?;
        check(integral.g.shape() == (n0, n0), "G must be square")?;
        check(integral.f1.shape() == (n, n0), "F1 must be N x N0")?;
        check(integral.f2.shape() == (n, n0), "F2 must be N x N0")?;
        check(b.rows() == n, "B rows must equal N")?;
        check(l.cols() == n, "L columns must equal N")?;
        check(d.shape() == (l.rows(), b.cols()), "D must be p x m")?;
        let all = [&p1, &p0, &integral.f1, &integral.f2, &integral.g, &b, &l, &d];
        if !all.iter().all(|m| m.is_finite()) {
            return Err(Error::NonFinite);
        }
        let pm1 = integral.dense()?;
        let probe = find_regular_point(None, |s| {
            lu_factor(&stiffness(&p1, &p0, &pm1, n0, s)).is_ok()
        })
        .ok_or(Error::SingularPencil)?;
        Ok(SpecialSecondOrderSystem {
            p1,
            p0,
            integral,
            b,
            l,
            d,
            pm1,
            probe,
        })
    }

    pub fn p1(&self) -> &Matrix {
        &self.p1
    }
    pub fn p0(&self) -> &Matrix {
        &self.p0
    }
    pub fn integral(&self) -> &IntegralTerm {
        &self.integral
    }
    /// Dense `P_-1`.
    pub fn p_minus_one(&self) -> &Matrix {
        &self.pm1
    }
    pub fn b(&self) -> &Matrix {
        &self.b
    }
    pub fn l(&self) -> &Matrix {
        &self.l
    }
    pub fn d(&self) -> &Matrix {
        &self.d
    }

    pub fn state_dim(&self) -> usize {
        self.p1.rows()
    }

    pub fn inner_dim(&self) -> usize {
        self.integral.inner_dim()
    }

    pub fn regularity_witness(&self) -> C64 {
        self.probe
    }

    /// Checks `L = B^H`, `P0`, `P1`, `G` Hermitian and `F1 = F2`.
    pub fn hermitian_report(&self) -> HermitianReport {
        let mut failures = Vec::new();
        let bh = self.b.adjoint();
        if self.l.shape() != bh.shape() || self.l.max_abs_diff(&bh) > HERMITIAN_TOL {
            failures.push("L = B^H".to_string());
        }
        for (name, m) in [("P0", &self.p0), ("P1", &self.p1), ("G", &self.integral.g)] {
            if !m.is_hermitian(HERMITIAN_TOL) {
                failures.push(format!("{name} = {name}^H"));
            }
        }
        if self.integral.f1.max_abs_diff(&self.integral.f2) > HERMITIAN_TOL {
            failures.push("F1 = F2".to_string());
        }
        HermitianReport {
            hermitian: failures.is_empty(),
            failures,
        }
    }

    pub fn is_hermitian(&self) -> bool {
        self.hermitian_report().hermitian
    }
}

fn stiffness(p1: &Matrix, p0: &Matrix, pm1: &Matrix, n0: usize, s: C64) -> Matrix {
    let mut k = p0.axpy(s, p1);
    if n0 > 0 {
        k = k.axpy(s.inv(), pm1);
    }
    k
}

impl TransferFunction for SpecialSecondOrderSystem {
    fn num_inputs(&self) -> usize {
        self.b.cols()
    }

    fn num_outputs(&self) -> usize {
        self.l.rows()
    }

    fn eval_transfer(&self, s: C64) -> Result<Matrix> {
        if s == ZERO && self.inner_dim() > 0 {
            return Err(Error::pole(s));
        }
        let k = stiffness(&self.p1, &self.p0, &self.pm1, self.inner_dim(), s);
        let lu = lu_factor(&k).map_err(|_| Error::pole(s))?;
        Ok(self.d.axpy(ONE, &self.l.matmul(&lu.solve(&self.b))))
    }
}

#[derive(Deserialize)]
struct SecondOrderRepr {
    p1: Matrix,
    p0: Matrix,
    integral: IntegralTerm,
    b: Matrix,
    l: Matrix,
    d: Matrix,
}

impl<'de> Deserialize<'de> for SpecialSecondOrderSystem {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let r = SecondOrderRepr::deserialize(de)?;
        SpecialSecondOrderSystem::new(r.p1, r.p0, r.integral, r.b, r.l, r.d)
            .map_err(serde::de::Error::custom)
    }
}
