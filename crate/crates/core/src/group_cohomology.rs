//! Cohomology of a finite cyclic group acting on a finite module.
//!
//! The acting group is always the cyclic group generated by one
//! distinguished automorphism `sigma`; a procyclic group acting through a
//! finite quotient is represented by nothing more than that quotient
//! generator, so `H^0` is the invariants `ker(sigma - 1)` and `H^1` the
//! coinvariants `coker(sigma - 1)`. Bar cochains in degrees up to 2 are
//! stored as exhaustive tables over tuples of group elements, which keeps
//! the Alexander-Whitney formula a literal transcription:
//!
//! ```text
//! (m ∪ n)(g_1..g_{r+s}) = (-1)^{r+s} m(g_1..g_r) ⊗ g_1…g_r · n(g_{r+1}..g_{r+s})
//! ```
//!
//! Note the global sign `(-1)^{r+s}`: the cochain-level Leibniz identity for
//! this convention reads `d(u∪v) = -(du∪v + (-1)^r u∪dv)`. The Čech product
//! (see the `cech` module) is the signless variant and satisfies the plain
//! identity; the two conventions agree up to that global sign.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::abelian::{direct_sum_power, BilinearPairing, DirectSum, FpAbGroup, GroupHom, QModZ};
use crate::complex::Complex;
use crate::matrix::{kernel_basis, IntMatrix};
use crate::{Error, Result};

/// A finite module with a distinguished automorphism of finite order: the
/// image of a procyclic group acting through the finite quotient generated
/// by `sigma`.
#[derive(Clone)]
pub struct MonogenicModule {
    module: FpAbGroup,
    sigma: GroupHom,
    order: usize,
    powers: Vec<GroupHom>,
}

impl MonogenicModule {
    pub fn new(module: FpAbGroup, sigma: GroupHom) -> Result<Self> {
        if !module.is_finite() {
            return Err(Error::NotFinite(module.free_rank()));
        }
        if sigma.source() != &module || sigma.target() != &module {
            return Err(Error::Shape(
                "sigma must be an endomorphism of the module".into(),
            ));
        }
        let order = sigma.multiplicative_order()?;
        let mut powers = vec![GroupHom::identity(&module)];
        for _ in 1..order {
            powers.push(sigma.compose(powers.last().unwrap()));
        }
        Ok(MonogenicModule {
            module,
            sigma,
            order,
            powers,
        })
    }

    /// Convenience constructor: `Z/n` with sigma = multiplication by `u`.
    pub fn cyclic_with_unit(n: impl Into<BigInt>, u: impl Into<BigInt>) -> Result<Self> {
        let module = FpAbGroup::cyclic(n);
        let g = module.num_generators();
        let mut m = IntMatrix::zero(g, g);
        let u = u.into();
        for i in 0..g {
            m.set(i, i, u.clone());
        }
        let sigma = GroupHom::new(module.clone(), module.clone(), m)?;
        MonogenicModule::new(module, sigma)
    }

    pub fn module(&self) -> &FpAbGroup {
        &self.module
    }

    pub fn sigma(&self) -> &GroupHom {
        &self.sigma
    }

    /// Order of the acting cyclic group.
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn sigma_power(&self, j: usize) -> &GroupHom {
        &self.powers[j % self.order]
    }

    /// The dual module: `hom(module, Q/Z)` with the contragredient action
    /// `(sigma · phi)(n) = phi(sigma^{-1}(n))`, the convention under which
    /// evaluation is invariant, `<sigma x, sigma phi> = <x, phi>`. (The
    /// variant `phi ∘ sigma` differs only by relabeling the generator of the
    /// acting group; it produces the same invariants, coinvariants and
    /// cohomology groups, but its evaluation pairing is merely adjoint and
    /// the cochain-level Leibniz rule for the cup product breaks.)
    pub fn dual(&self) -> MonogenicModule {
        let inverse = self.sigma_power(self.order - 1);
        let dual_sigma = inverse.dual();
        MonogenicModule::new(self.module.torsion(), dual_sigma)
            .expect("dual of an automorphism is an automorphism")
    }

    fn sigma_minus_one(&self) -> GroupHom {
        self.sigma.add(&GroupHom::identity(&self.module).negate())
    }

    /// The norm `1 + sigma + ... + sigma^{order-1}`.
    pub fn norm(&self) -> GroupHom {
        let mut acc = GroupHom::zero(&self.module, &self.module);
        for p in &self.powers {
            acc = acc.add(p);
        }
        acc
    }

    /// Invariants `H^0 = ker(sigma - 1)` as a subgroup, with inclusion.
    pub fn h0(&self) -> (FpAbGroup, GroupHom) {
        self.sigma_minus_one().kernel()
    }

    /// Coinvariants `H^1 = coker(sigma - 1)`, with projection.
    pub fn h1(&self) -> (FpAbGroup, GroupHom) {
        self.sigma_minus_one().cokernel()
    }

    /// Cohomology from the 2-periodic resolution of a cyclic group:
    /// `H^0 = ker(sigma-1)`, `H^1 = ker(Norm)/im(sigma-1)`,
    /// `H^2 = ker(sigma-1)/im(Norm)`.
    pub fn periodic_cohomology(&self, r: usize) -> Result<FpAbGroup> {
        match r {
            0 => Ok(self.h0().0),
            1 => Ok(sub_quotient_of_homs(&self.norm(), &self.sigma_minus_one())),
            2 => Ok(sub_quotient_of_homs(&self.sigma_minus_one(), &self.norm())),
            _ => Err(Error::DegreeOutOfRange(r, 2)),
        }
    }

    /// The bar cochain complex `C^r = Maps(G^r, module)` in degrees
    /// `0..=max_degree`, with the block bookkeeping of each degree.
    pub fn bar_complex(&self, max_degree: usize) -> BarComplex {
        let m = self.order;
        let mut sums = Vec::new();
        for r in 0..=max_degree {
            sums.push(direct_sum_power(&self.module, m.pow(r as u32)));
        }
        let g = self.module.num_generators();
        let mut terms = Vec::new();
        let mut diffs = Vec::new();
        for sum in &sums {
            terms.push(sum.group.clone());
        }
        for r in 0..max_degree {
            let source = &sums[r];
            let target = &sums[r + 1];
            let mut raw = IntMatrix::zero(target.ambient_rank(), source.ambient_rank());
            let one = BigInt::one();
            let neg_one = -BigInt::one();
            let id = IntMatrix::identity(g);
            for (ti, tuple) in tuples(m, r + 1).into_iter().enumerate() {
                // face 0 acts by sigma^{g_1}
                let face0: Vec<usize> = tuple[1..].to_vec();
                raw.accumulate(
                    ti * g,
                    tuple_index(m, &face0) * g,
                    self.sigma_power(tuple[0]).matrix(),
                    &one,
                );
                // inner faces merge adjacent entries
                for i in 1..=r {
                    let mut merged: Vec<usize> = Vec::with_capacity(r);
                    merged.extend_from_slice(&tuple[..i - 1]);
                    merged.push((tuple[i - 1] + tuple[i]) % m);
                    merged.extend_from_slice(&tuple[i + 1..]);
                    let sign = if i % 2 == 0 { &one } else { &neg_one };
                    raw.accumulate(ti * g, tuple_index(m, &merged) * g, &id, sign);
                }
                // last face drops the final entry
                let last: Vec<usize> = tuple[..r].to_vec();
                let sign = if (r + 1) % 2 == 0 { &one } else { &neg_one };
                raw.accumulate(ti * g, tuple_index(m, &last) * g, &id, sign);
            }
            let mat = &(target.ambient_projection() * &raw) * source.ambient_lift();
            diffs.push(
                GroupHom::new(source.group.clone(), target.group.clone(), mat)
                    .expect("bar differential is well defined"),
            );
        }
        let complex = Complex::new(0, terms, diffs).expect("bar complex squares to zero");
        BarComplex { complex, sums }
    }

    /// Cohomology of the bar cochain complex in degree `r <= 2`.
    pub fn bar_cohomology(&self, r: usize) -> Result<FpAbGroup> {
        if r > 2 {
            return Err(Error::DegreeOutOfRange(r, 2));
        }
        let bar = self.bar_complex(r + 1);
        Ok(bar.complex.cohomology(r as i64))
    }
}

/// `ker(ker_of) / im(im_of)` for two endomorphisms with
/// `ker_of ∘ im_of = 0`.
fn sub_quotient_of_homs(ker_of: &GroupHom, im_of: &GroupHom) -> FpAbGroup {
    let mid = ker_of.source();
    let g = mid.num_generators();
    let w = ker_of.matrix().hstack(&ker_of.target().relation_matrix());
    let ker = kernel_basis(&w).select_rows(&(0..g).collect::<Vec<_>>());
    let image = im_of.matrix().hstack(&mid.relation_matrix());
    crate::abelian::subquotient::Subquotient::new(g, Some(&ker), &image).group
}

/// Bar cochain complex with per-degree block structure.
pub struct BarComplex {
    pub complex: Complex,
    pub sums: Vec<DirectSum>,
}

fn tuples(m: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        let mut next = Vec::with_capacity(out.len() * m);
        for t in &out {
            for g in 0..m {
                let mut t2 = t.clone();
                t2.push(g);
                next.push(t2);
            }
        }
        out = next;
    }
    out
}

fn tuple_index(m: usize, t: &[usize]) -> usize {
    t.iter().fold(0, |acc, &g| acc * m + g)
}

/// An inhomogeneous bar cochain: a total function from `G^degree` to the
/// module, stored as an exhaustive value table indexed by tuples.
#[derive(Clone, PartialEq, Debug)]
pub struct BarCochain {
    degree: usize,
    values: Vec<Vec<BigInt>>,
}

impl BarCochain {
    pub fn new(m: &MonogenicModule, degree: usize, values: Vec<Vec<BigInt>>) -> Result<Self> {
        let expected = m.order().pow(degree as u32);
        if values.len() != expected {
            return Err(Error::Shape(format!(
                "degree {degree} cochain needs {expected} values, got {}",
                values.len()
            )));
        }
        let values = values.into_iter().map(|v| m.module().reduce(&v)).collect();
        Ok(BarCochain { degree, values })
    }

    pub fn zero(m: &MonogenicModule, degree: usize) -> Self {
        let count = m.order().pow(degree as u32);
        BarCochain {
            degree,
            values: vec![m.module().zero_element(); count],
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn value(&self, m: &MonogenicModule, tuple: &[usize]) -> &[BigInt] {
        assert_eq!(tuple.len(), self.degree);
        &self.values[tuple_index(m.order(), tuple)]
    }

    pub fn values(&self) -> &[Vec<BigInt>] {
        &self.values
    }

    /// The bar differential
    /// `(dφ)(g_1..g_{n+1}) = g_1·φ(g_2..) + Σ (-1)^i φ(..g_i g_{i+1}..) + (-1)^{n+1} φ(g_1..g_n)`.
    pub fn differential(&self, m: &MonogenicModule) -> BarCochain {
        let ord = m.order();
        let n = self.degree;
        let module = m.module();
        let mut out = Vec::new();
        for tuple in tuples(ord, n + 1) {
            let mut acc = m.sigma_power(tuple[0]).apply(self.value(m, &tuple[1..]));
            for i in 1..=n {
                let mut merged: Vec<usize> = Vec::with_capacity(n);
                merged.extend_from_slice(&tuple[..i - 1]);
                merged.push((tuple[i - 1] + tuple[i]) % ord);
                merged.extend_from_slice(&tuple[i + 1..]);
                let v = self.value(m, &merged);
                for (a, b) in acc.iter_mut().zip(v) {
                    if i % 2 == 0 {
                        *a += b;
                    } else {
                        *a -= b;
                    }
                }
            }
            let v = self.value(m, &tuple[..n]);
            for (a, b) in acc.iter_mut().zip(v) {
                if (n + 1) % 2 == 0 {
                    *a += b;
                } else {
                    *a -= b;
                }
            }
            out.push(module.reduce(&acc));
        }
        BarCochain {
            degree: n + 1,
            values: out,
        }
    }

    pub fn is_cocycle(&self, m: &MonogenicModule) -> bool {
        self.differential(m)
            .values
            .iter()
            .all(|v| m.module().is_zero_element(v))
    }

    pub fn add(&self, m: &MonogenicModule, other: &BarCochain) -> BarCochain {
        assert_eq!(self.degree, other.degree);
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| {
                let sum: Vec<BigInt> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                m.module().reduce(&sum)
            })
            .collect();
        BarCochain {
            degree: self.degree,
            values,
        }
    }
}

/// A `Q/Z`-valued cochain with trivial action, the value space of cup
/// products of a module against its dual.
#[derive(Clone, PartialEq, Debug)]
pub struct QmzCochain {
    group_order: usize,
    degree: usize,
    values: Vec<QModZ>,
}

impl QmzCochain {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn value(&self, tuple: &[usize]) -> &QModZ {
        assert_eq!(tuple.len(), self.degree);
        &self.values[tuple_index(self.group_order, tuple)]
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(QModZ::is_zero)
    }

    /// Bar differential with trivial coefficients.
    pub fn differential(&self) -> QmzCochain {
        let m = self.group_order;
        let n = self.degree;
        let mut out = Vec::new();
        for tuple in tuples(m, n + 1) {
            let mut acc = self.value(&tuple[1..]).clone();
            for i in 1..=n {
                let mut merged: Vec<usize> = Vec::with_capacity(n);
                merged.extend_from_slice(&tuple[..i - 1]);
                merged.push((tuple[i - 1] + tuple[i]) % m);
                merged.extend_from_slice(&tuple[i + 1..]);
                let v = self.value(&merged);
                acc = if i % 2 == 0 { &acc + v } else { &acc - v };
            }
            let v = self.value(&tuple[..n]);
            acc = if (n + 1) % 2 == 0 { &acc + v } else { &acc - v };
            out.push(acc);
        }
        QmzCochain {
            group_order: m,
            degree: n + 1,
            values: out,
        }
    }

    pub fn is_cocycle(&self) -> bool {
        self.differential().is_zero()
    }

    pub fn add(&self, other: &QmzCochain) -> QmzCochain {
        assert_eq!(self.degree, other.degree);
        assert_eq!(self.group_order, other.group_order);
        QmzCochain {
            group_order: self.group_order,
            degree: self.degree,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn negate(&self) -> QmzCochain {
        QmzCochain {
            group_order: self.group_order,
            degree: self.degree,
            values: self.values.iter().map(|v| -v).collect(),
        }
    }
}

/// Alexander-Whitney cup product on bar cochains, with values pushed
/// through a coefficient pairing into `Q/Z`:
///
/// `(u ∪ v)(g_1..g_{r+s}) = (-1)^{r+s} <u(g_1..g_r), sigma^{g_1+..+g_r} v(g_{r+1}..g_{r+s})>`.
///
/// `pairing` must pair `left.module x right.module -> Q/Z`; both modules
/// must carry an action of the same cyclic group.
pub fn aw_cup_bar(
    left: &MonogenicModule,
    u: &BarCochain,
    right: &MonogenicModule,
    v: &BarCochain,
    pairing: &BilinearPairing,
) -> Result<QmzCochain> {
    if left.order() != right.order() {
        return Err(Error::ModulusMismatch(
            BigInt::from(left.order()),
            BigInt::from(right.order()),
        ));
    }
    let (r, s) = (u.degree(), v.degree());
    if r + s > 2 {
        return Err(Error::DegreeOutOfRange(r + s, 2));
    }
    if pairing.left() != left.module() || pairing.right() != right.module() {
        return Err(Error::Shape(
            "coefficient pairing does not match the modules".into(),
        ));
    }
    let m = left.order();
    let negate = (r + s) % 2 == 1;
    let mut values = Vec::new();
    for tuple in tuples(m, r + s) {
        let prefix: usize = tuple[..r].iter().sum();
        let twisted = right
            .sigma_power(prefix % m)
            .apply(v.value(right, &tuple[r..]));
        let val = pairing.evaluate(u.value(left, &tuple[..r]), &twisted);
        values.push(if negate { -&val } else { val });
    }
    Ok(QmzCochain {
        group_order: m,
        degree: r + s,
        values,
    })
}

/// The tame duality pairing `H^0(M) x H^1(M*) -> Q/Z`, `<a, [phi]> =
/// phi(a)`, together with its perfectness verdict.
pub fn tame_duality_pairing(m: &MonogenicModule) -> (BilinearPairing, bool) {
    let (h0, incl) = m.h0();
    let dual = m.dual();
    let h1_sq = dual.sigma_minus_one().cokernel_presentation();
    let h1 = h1_sq.group.clone();
    let orders: Vec<BigInt> = (0..m.module().num_generators())
        .map(|t| m.module().generator_order(t))
        .collect();
    let mut values = vec![vec![QModZ::zero(); h1.num_generators()]; h0.num_generators()];
    for (i, row) in values.iter_mut().enumerate() {
        let a = incl.apply(&h0.generator(i));
        for (j, slot) in row.iter_mut().enumerate() {
            let phi = h1_sq.reps.column(j);
            let mut acc = QModZ::zero();
            for t in 0..a.len() {
                if a[t].is_zero() || phi[t].is_zero() {
                    continue;
                }
                acc = &acc + &QModZ::new(&a[t] * &phi[t], orders[t].clone());
            }
            *slot = acc;
        }
    }
    let pairing = BilinearPairing::new(h0, h1, values).expect("duality pairing is bilinear");
    let perfect = pairing.is_perfect();
    (pairing, perfect)
}
