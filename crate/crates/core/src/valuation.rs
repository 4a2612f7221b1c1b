//! Valuation-level shadow of the local cohomology of `R = k[[t]]`.
//!
//! Units of `R` are never modeled: for the groups computed here
//! (`K*/R* ≅ Z` and its quotients `Z/n`) the valuation is a complete
//! invariant, so a class is just an integer. This does not faithfully model
//! `H^1(K, mu_{p^m})` in characteristic `p` — only the local-cohomology
//! quotients have this valuation description — which is all the evaluation
//! formulas below need.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::abelian::QModZ;
use crate::matrix::IntMatrix;
use crate::monodromy::{ExtConnectingOracle, UniformizationDatum};
use crate::{Error, Result};

/// Class of `x ∈ K*` in `K*/R* ≅ Z`: its valuation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValuationClass {
    pub valuation: BigInt,
}

impl ValuationClass {
    pub fn new(valuation: impl Into<BigInt>) -> Self {
        ValuationClass {
            valuation: valuation.into(),
        }
    }

    /// The unit class.
    pub fn unit() -> Self {
        ValuationClass::new(0)
    }
}

/// Class of a point of a split torus of rank `d` in `T(K)/T^0(R) ≅ Z^d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitTorusClass {
    pub valuations: Vec<BigInt>,
}

impl SplitTorusClass {
    pub fn new(valuations: Vec<BigInt>) -> Self {
        SplitTorusClass { valuations }
    }

    pub fn rank(&self) -> usize {
        self.valuations.len()
    }
}

/// An element of `Z/n`, kept in canonical form `0 <= value < modulus`.
/// `n = 1` is the trivial group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidueClass {
    value: BigInt,
    modulus: BigInt,
}

impl ResidueClass {
    pub fn new(value: impl Into<BigInt>, modulus: impl Into<BigInt>) -> Result<Self> {
        let modulus = modulus.into();
        if modulus < BigInt::one() {
            return Err(Error::BadModulus(modulus));
        }
        Ok(ResidueClass {
            value: value.into().mod_floor(&modulus),
            modulus,
        })
    }

    pub fn value(&self) -> &BigInt {
        &self.value
    }

    pub fn modulus(&self) -> &BigInt {
        &self.modulus
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }
}

/// Evaluation of characters: `t̄ -> (φ -> ν(φ(t)))`. Since
/// `ν(∏ x_i^{φ_i}) = Σ φ_i ν(x_i)`, this is a dot product.
pub fn eval_characters(t: &SplitTorusClass, character: &[BigInt]) -> Result<BigInt> {
    if character.len() != t.rank() {
        return Err(Error::Shape(format!(
            "character length {} does not match torus rank {}",
            character.len(),
            t.rank()
        )));
    }
    Ok(t.valuations
        .iter()
        .zip(character)
        .map(|(v, c)| v * c)
        .sum())
}

/// Class of `x` under the boundary of the Kummer sequence: the valuation
/// mod `n`.
pub fn kummer_class(x: &ValuationClass, n: &BigInt) -> Result<ResidueClass> {
    ResidueClass::new(x.valuation.clone(), n.clone())
}

/// The cup product `H^1 x H^0 -> H^1` at valuation level:
/// `(ζ̄, ī) -> ζ^i` becomes multiplication of the valuation by `i`.
pub fn cup_h1_h0(zeta: &ResidueClass, i: &ResidueClass) -> Result<ResidueClass> {
    if zeta.modulus() != i.modulus() {
        return Err(Error::ModulusMismatch(
            zeta.modulus().clone(),
            i.modulus().clone(),
        ));
    }
    ResidueClass::new(zeta.value() * i.value(), zeta.modulus().clone())
}

/// The valuation-level pairing `<ζ, i> = ν(x^i)` reduced mod `q` and
/// embedded into `Q/Z` by `a -> a/q`.
pub fn residue_pairing(zeta: &ResidueClass, i: &ResidueClass) -> Result<QModZ> {
    let prod = cup_h1_h0(zeta, i)?;
    Ok(QModZ::new(prod.value().clone(), prod.modulus().clone()))
}

/// Exhaustive commutativity check of the evaluation diagram at level `q`:
/// for every `x ∈ {-q..q}` and every `i ∈ Z/q`, the character obtained by
/// pushing the valuation of `x` through the Ext connecting map (the
/// `ext1_z` chase on the datum `[q]`) agrees with
/// `residue_pairing(kummer_class(x, q), i)`.
pub fn check_eval_diagram(q: &BigInt) -> Result<bool> {
    if q < &BigInt::from(2) {
        return Err(Error::BadModulus(q.clone()));
    }
    let datum = UniformizationDatum::new(IntMatrix::from_vec(1, 1, vec![q.clone()]))
        .expect("q >= 2 is nonsingular");
    let oracle = ExtConnectingOracle::new(&datum);
    let mut x = -q.clone();
    while x <= *q {
        let class = kummer_class(&ValuationClass::new(x.clone()), q)?;
        let mut i = BigInt::zero();
        while i < *q {
            let via_ext = oracle.pair(&[x.clone()], &[i.clone()]);
            let via_eval = residue_pairing(&class, &ResidueClass::new(i.clone(), q.clone())?)?;
            if via_ext != via_eval {
                return Ok(false);
            }
            i += 1;
        }
        x += 1;
    }
    Ok(true)
}

/// Number of cases `check_eval_diagram(q)` verifies: `(2q + 1) * q`.
pub fn eval_diagram_case_count(q: &BigInt) -> BigInt {
    (BigInt::from(2) * q + 1) * q
}
