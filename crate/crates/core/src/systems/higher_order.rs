use serde::{Deserialize, Serialize};

use super::{find_regular_point, HermitianReport, TransferFunction, HERMITIAN_TOL};
use crate::densela::{lu_factor, Matrix, C64, ONE};
use crate::error::{Error, Result};

/// Order-`l` system `sum_i P_i x^(i) = B u`, `y = D u + sum_j L_j x^(j)`.
#[derive(Clone, Debug, Serialize)]
pub struct HigherOrderSystem {
    /// `P_0 .. P_l`
    p: Vec<Matrix>,
    b: Matrix,
    /// `L_0 .. L_{l-1}`
    l: Vec<Matrix>,
    d: Matrix,
    #[serde(skip)]
    probe: C64,
}

impl HigherOrderSystem {
    pub fn new(p: Vec<Matrix>, b: Matrix, l: Vec<Matrix>, d: Matrix) -> Result<Self> {
        if p.len() < 2 {
            return Err(Error::Dimension("order l must be at least 1".into()));
        }
        let order = p.len() - 1;
        if l.len() != order {
            return Err(Error::Dimension(format!(
                "expected {order} output matrices L_0..L_{{l-1}}, got {}",
                l.len()
            )));
        }
        let n = p[0].rows();
        let pout = d.rows();
        if p.iter().any(|m| m.shape() != (n, n))
            || b.rows() != n
            || l.iter().any(|m| m.shape() != (pout, n))
            || d.cols() != b.cols()
        {
            return Err(Error::Dimension("higher-order system: inconsistent shapes".into()));
        }
        if !p.iter().chain(&l).chain([&b, &d]).all(Matrix::is_finite) {
            return Err(Error::NonFinite);
        }
        let probe = find_regular_point(None, |s| lu_factor(&poly_eval(&p, s)).is_ok())
            .ok_or(Error::SingularPencil)?;
        Ok(HigherOrderSystem { p, b, l, d, probe })
    }

    pub fn order(&self) -> usize {
        self.p.len() - 1
    }

    pub fn state_dim(&self) -> usize {
        self.p[0].rows()
    }

    /// Coefficients `P_0 .. P_l`.
    pub fn p(&self) -> &[Matrix] {
        &self.p
    }

    pub fn b(&self) -> &Matrix {
        &self.b
    }

    /// Output coefficients `L_0 .. L_{l-1}`.
    pub fn l(&self) -> &[Matrix] {
        &self.l
    }

    pub fn d(&self) -> &Matrix {
        &self.d
    }

    pub fn regularity_witness(&self) -> C64 {
        self.probe
    }

    /// `P(s) = sum s^i P_i`
    pub fn p_at(&self, s: C64) -> Matrix {
        poly_eval(&self.p, s)
    }

    /// `L(s) = sum s^j L_j`
    pub fn l_at(&self, s: C64) -> Matrix {
        poly_eval(&self.l, s)
    }

    /// Checks `P_i = P_i^H`, `L_0 = B^H`, `L_j = 0` for `j >= 1`.
    pub fn hermitian_report(&self) -> HermitianReport {
        let mut failures = Vec::new();
        for (i, pi) in self.p.iter().enumerate() {
            if !pi.is_hermitian(HERMITIAN_TOL) {
                failures.push(format!("P{i} = P{i}^H"));
            }
        }
        let bh = self.b.adjoint();
        if self.l[0].shape() != bh.shape() || self.l[0].max_abs_diff(&bh) > HERMITIAN_TOL {
            failures.push("L0 = B^H".to_string());
        }
        for (j, lj) in self.l.iter().enumerate().skip(1) {
            if lj.max_abs() > HERMITIAN_TOL {
                failures.push(format!("L{j} = 0"));
            }
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

/// Horner evaluation of a matrix polynomial with coefficients in ascending order.
fn poly_eval(coeffs: &[Matrix], s: C64) -> Matrix {
    let mut acc = coeffs.last().expect("non-empty polynomial").clone();
    for c in coeffs.iter().rev().skip(1) {
        acc = c.axpy(s, &acc);
    }
    acc
}

impl TransferFunction for HigherOrderSystem {
    fn num_inputs(&self) -> usize {
        self.b.cols()
    }

    fn num_outputs(&self) -> usize {
        self.d.rows()
    }

    fn eval_transfer(&self, s: C64) -> Result<Matrix> {
        let lu = lu_factor(&self.p_at(s)).map_err(|_| Error::pole(s))?;
        Ok(self.d.axpy(ONE, &self.l_at(s).matmul(&lu.solve(&self.b))))
    }
}

#[derive(Deserialize)]
struct HigherOrderRepr {
    p: Vec<Matrix>,
    b: Matrix,
    l: Vec<Matrix>,
    d: Matrix,
}

impl<'de> Deserialize<'de> for HigherOrderSystem {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let r = HigherOrderRepr::deserialize(de)?;
        HigherOrderSystem::new(r.p, r.b, r.l, r.d).map_err(serde::de::Error::custom)
    }
}
