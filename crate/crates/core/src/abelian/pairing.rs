use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::matrix::IntMatrix;
use crate::{Error, Result};

use super::{FpAbGroup, GroupHom, QModZ};

/// A bilinear pairing `left x right -> Q/Z` between finite groups, stored by
/// its values on generator pairs. The bilinear extension is recomputed on
/// demand from the generator table.
#[derive(Clone, PartialEq, Eq)]
pub struct BilinearPairing {
    left: FpAbGroup,
    right: FpAbGroup,
    values: Vec<Vec<QModZ>>,
}

impl BilinearPairing {
    /// Build from the generator value table `values[i][j] = <l_i, r_j>`.
    /// Each value must be annihilated by the orders of both generators,
    /// otherwise no bilinear extension exists.
    pub fn new(left: FpAbGroup, right: FpAbGroup, values: Vec<Vec<QModZ>>) -> Result<Self> {
        if !left.is_finite() {
            return Err(Error::NotFinite(left.free_rank()));
        }
        if !right.is_finite() {
            return Err(Error::NotFinite(right.free_rank()));
        }
        if values.len() != left.num_generators()
            || values.iter().any(|row| row.len() != right.num_generators())
        {
            return Err(Error::Shape(format!(
                "pairing table must be {}x{}",
                left.num_generators(),
                right.num_generators()
            )));
        }
        for (i, row) in values.iter().enumerate() {
            let d = left.generator_order(i);
            for (j, v) in row.iter().enumerate() {
                let e = right.generator_order(j);
                if !v.scaled(&d).is_zero() || !v.scaled(&e).is_zero() {
                    return Err(Error::NotBilinear);
                }
            }
        }
        Ok(BilinearPairing {
            left,
            right,
            values,
        })
    }

    /// The zero pairing.
    pub fn zero(left: FpAbGroup, right: FpAbGroup) -> Result<Self> {
        let values =
            vec![vec![QModZ::zero(); right.num_generators()]; left.num_generators()];
        BilinearPairing::new(left, right, values)
    }

    pub fn left(&self) -> &FpAbGroup {
        &self.left
    }

    pub fn right(&self) -> &FpAbGroup {
        &self.right
    }

    pub fn values(&self) -> &[Vec<QModZ>] {
        &self.values
    }

    /// Bilinear extension to arbitrary elements.
    pub fn evaluate(&self, x: &[BigInt], y: &[BigInt]) -> QModZ {
        let x = self.left.reduce(x);
        let y = self.right.reduce(y);
        let mut acc = QModZ::zero();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                acc = &acc + &self.values[i][j].scaled(&(xi * yj));
            }
        }
        acc
    }

    /// The pairing with the two sides exchanged.
    pub fn swap(&self) -> BilinearPairing {
        let mut values =
            vec![vec![QModZ::zero(); self.left.num_generators()]; self.right.num_generators()];
        for (i, row) in self.values.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                values[j][i] = v.clone();
            }
        }
        BilinearPairing {
            left: self.right.clone(),
            right: self.left.clone(),
            values,
        }
    }

    /// The induced homomorphism `left -> right*` sending `x` to `<x, ->`.
    pub fn adjoint(&self) -> GroupHom {
        let dual = self.right.torsion(); // right* has the same invariant factors
        let mut m = IntMatrix::zero(dual.num_generators(), self.left.num_generators());
        for (i, row) in self.values.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                let e_j = self.right.generator_order(j);
                // coordinate of the character: value num * (e_j / den)
                let (q, r) = e_j.div_rem(&v.order());
                debug_assert!(r.is_zero(), "bilinearity bounds the denominator");
                m.set(j, i, v.numerator() * q);
            }
        }
        GroupHom::new(self.left.clone(), dual, m).expect("adjoint is well defined")
    }

    /// Perfectness: the adjoint is an isomorphism onto the dual of the right
    /// side (injectivity plus equality of orders).
    pub fn is_perfect(&self) -> bool {
        self.left.order() == self.right.order() && self.adjoint().is_injective()
    }
}

impl fmt::Debug for BilinearPairing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "pairing {} x {}:", self.left, self.right)?;
        for row in &self.values {
            write!(f, " [")?;
            for (j, v) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{v}")?;
            }
            write!(f, "]")?;
        }
        Ok(())
    }
}
