//! Čech cochain complexes of presheaves on the nerve of a finite covering,
//! with the Alexander-Whitney cup product on cochains.
//!
//! The covering is abstracted to its index set: a value group is assigned to
//! every nonempty subset of indices (standing for the value on the
//! corresponding fiber product, so it depends only on the support), with a
//! restriction map for every inclusion. The cochain complex is built on all
//! ordered tuples with repetition — the alternating subcomplex cannot even
//! state the Alexander-Whitney formula, whose middle index repeats:
//!
//! ```text
//! (a ∪ b)_{i_0..i_{r+s}} = a_{i_0..i_r} ⊗ b_{i_r..i_{r+s}}
//! ```
//!
//! This product carries no sign (compare the signed bar-resolution variant
//! in `group_cohomology`) and satisfies the plain Leibniz rule
//! `d(a∪b) = da∪b + (-1)^r a∪db`.

use std::collections::BTreeMap;

use num_bigint::BigInt;

use crate::abelian::{
    direct_sum, tensor_hom, tensor_product, DirectSum, FpAbGroup, GroupHom, TensorProduct,
};
use crate::complex::Complex;
use crate::matrix::IntMatrix;
use crate::{Error, Result};

/// A presheaf on the subsets of a finite index set `{0, .., n-1}`: one group
/// per nonempty subset (encoded as a bitmask) and one restriction map per
/// inclusion. Restrictions are derived from the one-step inclusions and
/// checked to be path independent.
#[derive(Clone)]
pub struct CoveringPresheaf {
    n: usize,
    values: BTreeMap<u32, FpAbGroup>,
    restrictions: BTreeMap<(u32, u32), GroupHom>,
}

impl CoveringPresheaf {
    /// `one_steps` must contain a map for every inclusion `S ⊂ S ∪ {i}` of
    /// nonempty subsets. All longer restrictions are composed along chains
    /// and verified independent of the chain.
    pub fn new(
        n: usize,
        values: BTreeMap<u32, FpAbGroup>,
        one_steps: BTreeMap<(u32, u32), GroupHom>,
    ) -> Result<Self> {
        if n == 0 || n > 16 {
            return Err(Error::BadCovering(format!(
                "index count must be between 1 and 16, got {n}"
            )));
        }
        let full: u32 = (1 << n) - 1;
        for mask in 1..=full {
            if !values.contains_key(&mask) {
                return Err(Error::BadCovering(format!(
                    "missing value group for subset {mask:#b}"
                )));
            }
        }
        let mut restrictions: BTreeMap<(u32, u32), GroupHom> = BTreeMap::new();
        for mask in 1..=full {
            restrictions.insert((mask, mask), GroupHom::identity(&values[&mask]));
        }
        for s in 1..=full {
            for i in 0..n {
                let bit = 1u32 << i;
                if s & bit != 0 {
                    continue;
                }
                let t = s | bit;
                let hom = one_steps.get(&(s, t)).ok_or_else(|| {
                    Error::BadCovering(format!("missing restriction {s:#b} -> {t:#b}"))
                })?;
                if hom.source() != &values[&s] || hom.target() != &values[&t] {
                    return Err(Error::BadCovering(format!(
                        "restriction {s:#b} -> {t:#b} has wrong endpoints"
                    )));
                }
                restrictions.insert((s, t), hom.clone());
            }
        }
        // derive longer restrictions along the add-lowest-bit-first chain
        for s in 1..=full {
            let mut targets: Vec<u32> = (1..=full).filter(|t| t & s == s).collect();
            targets.sort_by_key(|t| t.count_ones());
            for t in targets {
                if restrictions.contains_key(&(s, t)) {
                    continue;
                }
                let diff = t & !s;
                let lowest = diff & diff.wrapping_neg();
                let mid = s | lowest;
                let second = restrictions[&(mid, t)].clone();
                let first = restrictions[&(s, mid)].clone();
                restrictions.insert((s, t), second.compose(&first));
            }
        }
        // functoriality: every two-step factorization must agree
        for (&(s, t), hom) in &restrictions {
            for mid in 1..=full {
                if mid & s == s && t & mid == mid && mid != s && mid != t {
                    let via = restrictions[&(mid, t)].compose(&restrictions[&(s, mid)]);
                    if &via != hom {
                        return Err(Error::BadCovering(format!(
                            "restrictions not functorial: {s:#b} -> {mid:#b} -> {t:#b}"
                        )));
                    }
                }
            }
        }
        Ok(CoveringPresheaf {
            n,
            values,
            restrictions,
        })
    }

    /// The constant presheaf: one group everywhere, identity restrictions.
    pub fn constant(n: usize, group: FpAbGroup) -> Self {
        let full: u32 = (1 << n) - 1;
        let mut values = BTreeMap::new();
        let mut one_steps = BTreeMap::new();
        for mask in 1..=full {
            values.insert(mask, group.clone());
        }
        for s in 1..=full {
            for i in 0..n {
                let bit = 1u32 << i;
                if s & bit == 0 {
                    one_steps.insert((s, s | bit), GroupHom::identity(&group));
                }
            }
        }
        CoveringPresheaf::new(n, values, one_steps).expect("constant presheaf is functorial")
    }

    /// A presheaf whose value depends only on the size of the subset:
    /// `groups[k-1]` on subsets of size `k`, with `maps[k-1]` restricting
    /// from size `k` to size `k+1`. Path independence is automatic.
    pub fn by_levels(n: usize, groups: Vec<FpAbGroup>, maps: Vec<GroupHom>) -> Result<Self> {
        if groups.len() != n || maps.len() + 1 != n {
            return Err(Error::BadCovering(
                "need one group per level and one map per adjacent pair".into(),
            ));
        }
        let full: u32 = (1 << n) - 1;
        let mut values = BTreeMap::new();
        let mut one_steps = BTreeMap::new();
        for mask in 1..=full {
            values.insert(mask, groups[mask.count_ones() as usize - 1].clone());
        }
        for s in 1..=full {
            let k = s.count_ones() as usize;
            for i in 0..n {
                let bit = 1u32 << i;
                if s & bit == 0 {
                    one_steps.insert((s, s | bit), maps[k - 1].clone());
                }
            }
        }
        CoveringPresheaf::new(n, values, one_steps)
    }

    pub fn index_count(&self) -> usize {
        self.n
    }

    pub fn value(&self, mask: u32) -> &FpAbGroup {
        &self.values[&mask]
    }

    pub fn restriction(&self, s: u32, t: u32) -> &GroupHom {
        &self.restrictions[&(s, t)]
    }

    /// The tensor presheaf `(F ⊗ G)(S) = F(S) ⊗ G(S)` with the tensor
    /// restrictions, plus the per-subset change-of-basis data.
    pub fn tensor(&self, other: &CoveringPresheaf) -> Result<TensorPresheaf> {
        if self.n != other.n {
            return Err(Error::BadCovering(
                "tensor of presheaves on different index sets".into(),
            ));
        }
        let full: u32 = (1 << self.n) - 1;
        let mut products = BTreeMap::new();
        let mut values = BTreeMap::new();
        for mask in 1..=full {
            let t = tensor_product(self.value(mask), other.value(mask));
            values.insert(mask, t.group.clone());
            products.insert(mask, t);
        }
        let mut one_steps = BTreeMap::new();
        for s in 1..=full {
            for i in 0..self.n {
                let bit = 1u32 << i;
                if s & bit != 0 {
                    continue;
                }
                let t = s | bit;
                let hom = tensor_hom(
                    self.restriction(s, t),
                    other.restriction(s, t),
                    &products[&s],
                    &products[&t],
                );
                one_steps.insert((s, t), hom);
            }
        }
        let presheaf = CoveringPresheaf::new(self.n, values, one_steps)?;
        Ok(TensorPresheaf { presheaf, products })
    }
}

/// Tensor of two covering presheaves with the per-subset grid bookkeeping.
pub struct TensorPresheaf {
    pub presheaf: CoveringPresheaf,
    products: BTreeMap<u32, TensorProduct>,
}

impl TensorPresheaf {
    pub fn product(&self, mask: u32) -> &TensorProduct {
        &self.products[&mask]
    }
}

fn support(n: usize, tuple: &[usize]) -> u32 {
    let mut mask = 0u32;
    for &i in tuple {
        assert!(i < n, "index out of range");
        mask |= 1 << i;
    }
    mask
}

fn tuples(n: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        let mut next = Vec::with_capacity(out.len() * n);
        for t in &out {
            for i in 0..n {
                let mut t2 = t.clone();
                t2.push(i);
                next.push(t2);
            }
        }
        out = next;
    }
    out
}

fn tuple_index(n: usize, t: &[usize]) -> usize {
    t.iter().fold(0, |acc, &i| acc * n + i)
}

/// The Čech complex on all ordered tuples:
/// `C^r = ⊕_{(i_0..i_r)} F(support)`, differential the alternating sum of
/// face restrictions. Degrees `0..=max_degree` are materialized; cohomology
/// is reliable in degrees `< max_degree`.
pub struct CechComplex {
    pub complex: Complex,
    pub sums: Vec<DirectSum>,
    n: usize,
}

pub fn cech_complex(f: &CoveringPresheaf, max_degree: usize) -> CechComplex {
    let n = f.index_count();
    let mut sums = Vec::new();
    let mut parts_per_degree: Vec<Vec<u32>> = Vec::new();
    for r in 0..=max_degree {
        let masks: Vec<u32> = tuples(n, r + 1)
            .iter()
            .map(|t| support(n, t))
            .collect();
        let parts: Vec<FpAbGroup> = masks.iter().map(|&m| f.value(m).clone()).collect();
        sums.push(direct_sum(&parts));
        parts_per_degree.push(masks);
    }
    let mut terms = Vec::new();
    let mut diffs = Vec::new();
    for sum in &sums {
        terms.push(sum.group.clone());
    }
    for r in 0..max_degree {
        let source = &sums[r];
        let target = &sums[r + 1];
        let mut raw = IntMatrix::zero(target.ambient_rank(), source.ambient_rank());
        for (ti, tuple) in tuples(n, r + 2).into_iter().enumerate() {
            let t_mask = parts_per_degree[r + 1][ti];
            for j in 0..=r + 1 {
                let mut face = tuple.clone();
                face.remove(j);
                let fi = tuple_index(n, &face);
                let f_mask = parts_per_degree[r][fi];
                let res = f.restriction(f_mask, t_mask);
                let sign = if j % 2 == 0 {
                    BigInt::from(1)
                } else {
                    BigInt::from(-1)
                };
                raw.accumulate(target.offset(ti), source.offset(fi), res.matrix(), &sign);
            }
        }
        let mat = &(target.ambient_projection() * &raw) * source.ambient_lift();
        diffs.push(
            GroupHom::new(source.group.clone(), target.group.clone(), mat)
                .expect("Čech differential is well defined"),
        );
    }
    let complex = Complex::new(0, terms, diffs).expect("Čech complex squares to zero");
    CechComplex { complex, sums, n }
}

impl CechComplex {
    /// Total-complex coordinates of a cochain.
    pub fn cochain_coords(&self, a: &CechCochain) -> Vec<BigInt> {
        let sum = &self.sums[a.degree];
        let mut concat = Vec::with_capacity(sum.ambient_rank());
        for comp in &a.components {
            concat.extend(comp.iter().cloned());
        }
        sum.project_concat(&concat)
    }

    /// Cohomology class of a cocycle.
    pub fn class_of(&self, a: &CechCochain) -> Vec<BigInt> {
        self.complex
            .cohomology_at(a.degree as i64)
            .class_of(&self.cochain_coords(a))
    }

    pub fn index_count(&self) -> usize {
        self.n
    }
}

/// A Čech `r`-cochain: one component per ordered `(r+1)`-tuple, each lying
/// in the value group of the tuple's support.
#[derive(Clone, PartialEq, Debug)]
pub struct CechCochain {
    degree: usize,
    components: Vec<Vec<BigInt>>,
}

impl CechCochain {
    pub fn new(
        f: &CoveringPresheaf,
        degree: usize,
        components: Vec<Vec<BigInt>>,
    ) -> Result<Self> {
        let n = f.index_count();
        let expected = n.pow(degree as u32 + 1);
        if components.len() != expected {
            return Err(Error::Shape(format!(
                "degree {degree} cochain needs {expected} components, got {}",
                components.len()
            )));
        }
        let mut reduced = Vec::with_capacity(expected);
        for (ti, tuple) in tuples(n, degree + 1).into_iter().enumerate() {
            let group = f.value(support(n, &tuple));
            if components[ti].len() != group.num_generators() {
                return Err(Error::Shape(format!(
                    "component {ti} must have {} coordinates",
                    group.num_generators()
                )));
            }
            reduced.push(group.reduce(&components[ti]));
        }
        Ok(CechCochain {
            degree,
            components: reduced,
        })
    }

    pub fn zero(f: &CoveringPresheaf, degree: usize) -> Self {
        let n = f.index_count();
        let components = tuples(n, degree + 1)
            .iter()
            .map(|t| f.value(support(n, t)).zero_element())
            .collect();
        CechCochain { degree, components }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn component(&self, f: &CoveringPresheaf, tuple: &[usize]) -> &[BigInt] {
        assert_eq!(tuple.len(), self.degree + 1);
        &self.components[tuple_index(f.index_count(), tuple)]
    }

    pub fn components(&self) -> &[Vec<BigInt>] {
        &self.components
    }

    /// Alternating sum of face restrictions.
    pub fn differential(&self, f: &CoveringPresheaf) -> CechCochain {
        let n = f.index_count();
        let mut out = Vec::new();
        for tuple in tuples(n, self.degree + 2) {
            let t_mask = support(n, &tuple);
            let group = f.value(t_mask);
            let mut acc = group.zero_element();
            for j in 0..tuple.len() {
                let mut face = tuple.clone();
                face.remove(j);
                let f_mask = support(n, &face);
                let restricted = f
                    .restriction(f_mask, t_mask)
                    .apply(self.component(f, &face));
                for (a, b) in acc.iter_mut().zip(&restricted) {
                    if j % 2 == 0 {
                        *a += b;
                    } else {
                        *a -= b;
                    }
                }
            }
            out.push(group.reduce(&acc));
        }
        CechCochain {
            degree: self.degree + 1,
            components: out,
        }
    }

    pub fn is_cocycle(&self, f: &CoveringPresheaf) -> bool {
        let d = self.differential(f);
        tuples(f.index_count(), d.degree + 1)
            .iter()
            .enumerate()
            .all(|(ti, t)| f.value(support(f.index_count(), t)).is_zero_element(&d.components[ti]))
    }

    pub fn add(&self, f: &CoveringPresheaf, other: &CechCochain) -> CechCochain {
        assert_eq!(self.degree, other.degree);
        let n = f.index_count();
        let mut components = Vec::with_capacity(self.components.len());
        for (ti, tuple) in tuples(n, self.degree + 1).into_iter().enumerate() {
            let group = f.value(support(n, &tuple));
            let sum: Vec<BigInt> = self.components[ti]
                .iter()
                .zip(&other.components[ti])
                .map(|(a, b)| a + b)
                .collect();
            components.push(group.reduce(&sum));
        }
        CechCochain {
            degree: self.degree,
            components,
        }
    }

    pub fn negate(&self, f: &CoveringPresheaf) -> CechCochain {
        let n = f.index_count();
        let mut components = Vec::with_capacity(self.components.len());
        for (ti, tuple) in tuples(n, self.degree + 1).into_iter().enumerate() {
            let group = f.value(support(n, &tuple));
            let neg: Vec<BigInt> = self.components[ti].iter().map(|a| -a).collect();
            components.push(group.reduce(&neg));
        }
        CechCochain {
            degree: self.degree,
            components,
        }
    }
}

/// Alexander-Whitney cup product on Čech cochains (no sign):
/// `(a ∪ b)_{i_0..i_{r+s}} = a_{i_0..i_r} ⊗ b_{i_r..i_{r+s}}`, both factors
/// restricted into the support of the whole tuple before tensoring. The
/// result lives over the tensor presheaf, returned alongside.
pub fn aw_cup_cech(
    f: &CoveringPresheaf,
    a: &CechCochain,
    g: &CoveringPresheaf,
    b: &CechCochain,
) -> Result<(TensorPresheaf, CechCochain)> {
    if f.index_count() != g.index_count() {
        return Err(Error::BadCovering(
            "cup product needs cochains over the same covering".into(),
        ));
    }
    let n = f.index_count();
    let (r, s) = (a.degree, b.degree);
    let tensor = f.tensor(g)?;
    let mut components = Vec::new();
    for tuple in tuples(n, r + s + 1) {
        let t_mask = support(n, &tuple);
        let left_tuple = &tuple[..=r];
        let right_tuple = &tuple[r..];
        let x = f
            .restriction(support(n, left_tuple), t_mask)
            .apply(a.component(f, left_tuple));
        let y = g
            .restriction(support(n, right_tuple), t_mask)
            .apply(b.component(g, right_tuple));
        components.push(tensor.product(t_mask).pure_tensor(&x, &y));
    }
    let cochain = CechCochain {
        degree: r + s,
        components,
    };
    Ok((tensor, cochain))
}
