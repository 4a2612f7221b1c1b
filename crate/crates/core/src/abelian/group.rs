use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::matrix::IntMatrix;
use crate::{Error, Result};

/// A finitely presented abelian group in normal form: a free part of rank
/// `free_rank` plus one cyclic factor `Z/d` per invariant factor, with
/// `d_1 | d_2 | ...` and every `d_i >= 2`. The trivial group is
/// `(free_rank 0, empty chain)`.
///
/// Elements are generator-coordinate vectors of length
/// [`num_generators`](Self::num_generators), torsion coordinates first (in
/// invariant-factor order) followed by the free coordinates. Torsion
/// coordinates are reduced eagerly into `[0, d_i)`, so equality of reduced
/// coordinate vectors is element equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FpAbGroup {
    free_rank: usize,
    invariant_factors: Vec<BigInt>,
}

impl FpAbGroup {
    pub fn new(free_rank: usize, invariant_factors: Vec<BigInt>) -> Result<Self> {
        let two = BigInt::from(2);
        for (i, d) in invariant_factors.iter().enumerate() {
            if d < &two {
                return Err(Error::BadInvariantFactors(invariant_factors.clone()));
            }
            if i + 1 < invariant_factors.len()
                && !invariant_factors[i + 1].mod_floor(d).is_zero()
            {
                return Err(Error::BadInvariantFactors(invariant_factors.clone()));
            }
        }
        Ok(FpAbGroup {
            free_rank,
            invariant_factors,
        })
    }

    pub fn trivial() -> Self {
        FpAbGroup {
            free_rank: 0,
            invariant_factors: Vec::new(),
        }
    }

    pub fn free(rank: usize) -> Self {
        FpAbGroup {
            free_rank: rank,
            invariant_factors: Vec::new(),
        }
    }

    /// The cyclic group `Z/n` for `n >= 1`; `Z/1` is the trivial group.
    pub fn cyclic(n: impl Into<BigInt>) -> Self {
        let n = n.into();
        assert!(n >= BigInt::one(), "cyclic: order must be >= 1");
        if n.is_one() {
            FpAbGroup::trivial()
        } else {
            FpAbGroup {
                free_rank: 0,
                invariant_factors: vec![n],
            }
        }
    }

    /// Normal form of `Z/n_1 x ... x Z/n_k x Z^free_rank` for arbitrary
    /// orders `n_i >= 1`.
    pub fn from_orders(orders: &[BigInt], free_rank: usize) -> Self {
        let diag = IntMatrix::diagonal(orders);
        let (group, _) = super::cokernel_group(&diag);
        FpAbGroup {
            free_rank: group.free_rank + free_rank,
            invariant_factors: group.invariant_factors,
        }
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.invariant_factors
    }

    pub fn torsion_count(&self) -> usize {
        self.invariant_factors.len()
    }

    pub fn num_generators(&self) -> usize {
        self.invariant_factors.len() + self.free_rank
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.invariant_factors.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    pub fn is_free(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    /// Order of the group; `None` when infinite.
    pub fn order(&self) -> Option<BigInt> {
        if !self.is_finite() {
            return None;
        }
        Some(
            self.invariant_factors
                .iter()
                .fold(BigInt::one(), |acc, d| acc * d),
        )
    }

    /// Smallest `n >= 1` with `n * g = 0` for all `g`; `None` when infinite.
    pub fn exponent(&self) -> Option<BigInt> {
        if !self.is_finite() {
            return None;
        }
        Some(
            self.invariant_factors
                .last()
                .cloned()
                .unwrap_or_else(BigInt::one),
        )
    }

    /// Order of the `i`-th generator; zero stands for infinite order.
    pub fn generator_order(&self, i: usize) -> BigInt {
        assert!(i < self.num_generators(), "generator index out of range");
        if i < self.invariant_factors.len() {
            self.invariant_factors[i].clone()
        } else {
            BigInt::zero()
        }
    }

    /// The torsion subgroup as an abstract group (same invariant factors,
    /// free part dropped).
    pub fn torsion(&self) -> FpAbGroup {
        FpAbGroup {
            free_rank: 0,
            invariant_factors: self.invariant_factors.clone(),
        }
    }

    /// Relation matrix of the normal-form presentation: one column `d_i e_i`
    /// per invariant factor, shape `num_generators x torsion_count`.
    pub fn relation_matrix(&self) -> IntMatrix {
        let g = self.num_generators();
        let k = self.torsion_count();
        let mut m = IntMatrix::zero(g, k);
        for (i, d) in self.invariant_factors.iter().enumerate() {
            m.set(i, i, d.clone());
        }
        m
    }

    /// Canonical coordinates: torsion entries reduced mod their orders.
    pub fn reduce(&self, coords: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(coords.len(), self.num_generators(), "coordinate length mismatch");
        coords
            .iter()
            .enumerate()
            .map(|(i, c)| {
                if i < self.invariant_factors.len() {
                    c.mod_floor(&self.invariant_factors[i])
                } else {
                    c.clone()
                }
            })
            .collect()
    }

    pub fn is_zero_element(&self, coords: &[BigInt]) -> bool {
        self.reduce(coords).iter().all(|c| c.is_zero())
    }

    pub fn zero_element(&self) -> Vec<BigInt> {
        vec![BigInt::zero(); self.num_generators()]
    }

    pub fn generator(&self, i: usize) -> Vec<BigInt> {
        let mut e = self.zero_element();
        e[i] = BigInt::one();
        e
    }

    /// All elements in canonical coordinates, lexicographic in the generator
    /// coordinates. Panics on infinite groups.
    pub fn elements(&self) -> Vec<Vec<BigInt>> {
        assert!(self.is_finite(), "cannot enumerate an infinite group");
        let mut out = vec![self.zero_element()];
        for (i, d) in self.invariant_factors.iter().enumerate() {
            let mut next = Vec::new();
            for base in &out {
                let mut v = BigInt::zero();
                while &v < d {
                    let mut e = base.clone();
                    e[i] = v.clone();
                    next.push(e);
                    v += 1;
                }
            }
            out = next;
        }
        out
    }

    /// Serialized descriptor `free_rank; d1,d2,...`.
    pub fn descriptor(&self) -> String {
        let factors: Vec<String> = self.invariant_factors.iter().map(|d| d.to_string()).collect();
        format!("{}; {}", self.free_rank, factors.join(","))
    }

    /// Parse a descriptor produced by [`descriptor`](Self::descriptor).
    pub fn parse_descriptor(s: &str) -> Result<FpAbGroup> {
        let bad = |m: &str| Error::Shape(format!("bad group descriptor {s:?}: {m}"));
        let (rank, factors) = s.split_once(';').ok_or_else(|| bad("missing ';'"))?;
        let free_rank: usize = rank
            .trim()
            .parse()
            .map_err(|_| bad("free rank is not a count"))?;
        let factors = factors.trim();
        let mut invariant_factors = Vec::new();
        if !factors.is_empty() {
            for tok in factors.split(',') {
                let d: BigInt = tok
                    .trim()
                    .parse()
                    .map_err(|_| bad("invariant factor is not an integer"))?;
                invariant_factors.push(d);
            }
        }
        FpAbGroup::new(free_rank, invariant_factors)
    }
}

impl fmt::Display for FpAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for d in &self.invariant_factors {
            parts.push(format!("Z/{d}"));
        }
        write!(f, "{}", parts.join(" x "))
    }
}

impl fmt::Debug for FpAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
