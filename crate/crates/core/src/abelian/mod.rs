//! Finitely presented abelian groups: normal forms, homomorphisms,
//! Pontrjagin duals, `Ext^1(-, Z)`, primary decomposition, and bilinear
//! pairings into `Q/Z` with perfectness testing.

mod constructions;
mod group;
mod hom;
mod pairing;
mod qmodz;
pub(crate) mod subquotient;

pub use constructions::{
    direct_sum, direct_sum_power, kronecker, tensor_hom, tensor_product, DirectSum, TensorProduct,
};
pub use group::FpAbGroup;
pub use hom::GroupHom;
pub use pairing::BilinearPairing;
pub use qmodz::QModZ;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::matrix::IntMatrix;
use crate::{Error, Result};

use subquotient::Subquotient;

/// Cokernel of `a : Z^cols -> Z^rows` in normal form, with the (surjective)
/// projection from `Z^rows`.
pub fn cokernel_group(a: &IntMatrix) -> (FpAbGroup, GroupHom) {
    let sq = Subquotient::new(a.rows(), None, a);
    let free = FpAbGroup::free(a.rows());
    let proj = GroupHom::new(free, sq.group.clone(), sq.projection_matrix())
        .expect("cokernel projection is well defined");
    (sq.group, proj)
}

pub(crate) fn cokernel_presentation(a: &IntMatrix) -> Subquotient {
    Subquotient::new(a.rows(), None, a)
}

/// Pontrjagin dual `G* = hom(G, Q/Z)` of a finite group, together with the
/// evaluation pairing `G x G* -> Q/Z`. The dual has the same invariant
/// factors; the coordinate `c` of a character against the `i`-th dual
/// generator means `gen_i -> c / d_i`.
pub fn pontryagin_dual(g: &FpAbGroup) -> Result<(FpAbGroup, BilinearPairing)> {
    if !g.is_finite() {
        return Err(Error::NotFinite(g.free_rank()));
    }
    let dual = g.torsion();
    let k = g.torsion_count();
    let mut values = vec![vec![QModZ::zero(); k]; k];
    for (i, row) in values.iter_mut().enumerate() {
        row[i] = QModZ::new(BigInt::one(), g.generator_order(i));
    }
    let pairing = BilinearPairing::new(g.clone(), dual.clone(), values)?;
    Ok((dual, pairing))
}

/// `Ext^1(G, Z)` computed from the normal-form free presentation (the
/// cokernel of the transposed relation matrix), together with the canonical
/// isomorphism onto the Pontrjagin dual of the torsion subgroup obtained by
/// chasing the coefficient sequence `0 -> Z -> Q -> Q/Z -> 0`.
pub fn ext1_z(g: &FpAbGroup) -> (FpAbGroup, GroupHom) {
    let rel = g.relation_matrix();
    let sq = cokernel_presentation(&rel.transpose());
    let ext = sq.group.clone();
    // chase: an Ext class with representative xi in hom(Z^k, Z) corresponds
    // to the character gen_i -> xi_i / d_i, whose dual coordinates are xi_i
    let witness_matrix = sq.reps.clone();
    let dual_torsion = g.torsion();
    let witness = GroupHom::new(ext.clone(), dual_torsion, witness_matrix)
        .expect("Ext chase lands in the dual");
    debug_assert!(witness.is_isomorphism());
    (ext, witness)
}

/// Primary decomposition of a finite group: its `p`-primary parts, primes
/// ascending. The group is the internal direct sum of the parts.
pub fn primary_decomposition(g: &FpAbGroup) -> Result<Vec<(BigInt, FpAbGroup)>> {
    if !g.is_finite() {
        return Err(Error::NotFinite(g.free_rank()));
    }
    let mut primes: Vec<BigInt> = Vec::new();
    let mut factored: Vec<Vec<(BigInt, u32)>> = Vec::new();
    for d in g.invariant_factors() {
        let f = factorize(d);
        for (p, _) in &f {
            if !primes.contains(p) {
                primes.push(p.clone());
            }
        }
        factored.push(f);
    }
    primes.sort();
    let mut out = Vec::new();
    for p in primes {
        let mut orders: Vec<BigInt> = Vec::new();
        for f in &factored {
            if let Some((_, e)) = f.iter().find(|(q, _)| q == &p) {
                orders.push(p.pow(*e));
            }
        }
        orders.sort();
        let part = FpAbGroup::new(0, orders).expect("prime powers chain");
        out.push((p, part));
    }
    Ok(out)
}

fn factorize(n: &BigInt) -> Vec<(BigInt, u32)> {
    let mut n = n.clone();
    let mut out: Vec<(BigInt, u32)> = Vec::new();
    let mut p = BigInt::from(2);
    while &p * &p <= n {
        let mut e = 0u32;
        while n.mod_floor(&p).is_zero() {
            n = &n / &p;
            e += 1;
        }
        if e > 0 {
            out.push((p.clone(), e));
        }
        p = if p == BigInt::from(2) {
            BigInt::from(3)
        } else {
            &p + 2
        };
    }
    if n > BigInt::one() {
        out.push((n, 1));
    }
    out
}
