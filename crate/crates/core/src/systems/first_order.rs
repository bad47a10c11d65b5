use serde::{Deserialize, Serialize};

use super::{find_regular_point, TransferFunction};
use crate::densela::{lu_factor, Matrix, C64};
use crate::error::{Error, Result};

/// Descriptor system `E z' - A z = B u`, `y = D u + L z`.
#[derive(Clone, Debug, Serialize)]
pub struct FirstOrderSystem {
    e: Matrix,
    a: Matrix,
    b: Matrix,
    l: Matrix,
    d: Matrix,
    #[serde(skip)]
    probe: C64,
}

impl FirstOrderSystem {
    pub fn new(e: Matrix, a: Matrix, b: Matrix, l: Matrix, d: Matrix) -> Result<Self> {
        Self::with_hint(e, a, b, l, d, None)
    }

    /// Like [`new`](Self::new) but tries `hint` first as the regularity witness.
    pub fn with_hint(
        e: Matrix,
        a: Matrix,
        b: Matrix,
        l: Matrix,
        d: Matrix,
        hint: Option<C64>,
    ) -> Result<Self> {
        let n = e.rows();
        let check = |ok: bool, what: &str| {
            if ok {
                Ok(())
            } else {
                Err(Error::Dimension(format!("first-order system: {what}")))
            }
        };
        check(e.shape() == (n, n), "E must be square")?;
        check(a.shape() == (n, n), "A must match E")?;
        check(b.rows() == n, "B rows must equal state dimension")?;
        check(l.cols() == n, "L columns must equal state dimension")?;
        check(d.shape() == (l.rows(), b.cols()), "D must be p x m")?;
        if ![&e, &a, &b, &l, &d].iter().all(|m| m.is_finite()) {
            return Err(Error::NonFinite);
        }
        let probe = find_regular_point(hint, |s| lu_factor(&e.scale(s).axpy(-C64::new(1.0, 0.0), &a)).is_ok())
            .ok_or(Error::SingularPencil)?;
        Ok(FirstOrderSystem {
            e,
            a,
            b,
            l,
            d,
            probe,
        })
    }

    pub fn e(&self) -> &Matrix {
        &self.e
    }
    pub fn a(&self) -> &Matrix {
        &self.a
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

    /// A point where `sE - A` was verified nonsingular.
    pub fn regularity_witness(&self) -> C64 {
        self.probe
    }

    pub fn state_dim(&self) -> usize {
        self.e.rows()
    }

    /// `s E - A`
    pub fn pencil_at(&self, s: C64) -> Matrix {
        self.e.scale(s).axpy(C64::new(-1.0, 0.0), &self.a)
    }
}

impl TransferFunction for FirstOrderSystem {
    fn num_inputs(&self) -> usize {
        self.b.cols()
    }

    fn num_outputs(&self) -> usize {
        self.l.rows()
    }

    fn eval_transfer(&self, s: C64) -> Result<Matrix> {
        let lu = lu_factor(&self.pencil_at(s)).map_err(|_| Error::pole(s))?;
        Ok(&self.d + &self.l.matmul(&lu.solve(&self.b)))
    }
}

#[derive(Deserialize)]
pub(crate) struct FirstOrderRepr {
    e: Matrix,
    a: Matrix,
    b: Matrix,
    l: Matrix,
    d: Matrix,
}

impl<'de> Deserialize<'de> for FirstOrderSystem {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let r = FirstOrderRepr::deserialize(de)?;
        FirstOrderSystem::new(r.e, r.a, r.b, r.l, r.d).map_err(serde::de::Error::custom)
    }
}
