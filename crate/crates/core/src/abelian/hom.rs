use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::matrix::{kernel_basis, IntMatrix, LinearSystem};
use crate::{Error, Result};

use super::subquotient::Subquotient;
use super::FpAbGroup;

/// A homomorphism between finitely presented abelian groups, stored as an
/// integer matrix acting on generator columns: column `j` is the image of
/// the `j`-th source generator in target coordinates.
///
/// Construction fails when the matrix does not map the source relations into
/// the relation lattice of the target; a matrix that silently "almost" works
/// would let modeling errors slip through diagram checks. Rows belonging to
/// torsion generators of the target are reduced eagerly, so two equal maps
/// have equal matrices.
#[derive(Clone, PartialEq, Eq)]
pub struct GroupHom {
    source: FpAbGroup,
    target: FpAbGroup,
    matrix: IntMatrix,
}

impl GroupHom {
    pub fn new(source: FpAbGroup, target: FpAbGroup, matrix: IntMatrix) -> Result<Self> {
        if matrix.rows() != target.num_generators() || matrix.cols() != source.num_generators() {
            return Err(Error::Shape(format!(
                "hom matrix must be {}x{}, got {}x{}",
                target.num_generators(),
                source.num_generators(),
                matrix.rows(),
                matrix.cols()
            )));
        }
        // well-definedness: d_j * (column j) must lie in the target relations
        for j in 0..source.torsion_count() {
            let d = source.generator_order(j);
            for i in 0..target.num_generators() {
                let e = target.generator_order(i);
                let v = matrix.at(i, j) * &d;
                let ok = if e.is_zero() {
                    v.is_zero()
                } else {
                    v.mod_floor(&e).is_zero()
                };
                if !ok {
                    return Err(Error::IllDefinedHom(j));
                }
            }
        }
        let mut reduced = matrix;
        for i in 0..target.torsion_count() {
            let e = target.generator_order(i);
            for j in 0..reduced.cols() {
                let v = reduced.at(i, j).mod_floor(&e);
                reduced.set(i, j, v);
            }
        }
        Ok(GroupHom {
            source,
            target,
            matrix: reduced,
        })
    }

    pub fn identity(group: &FpAbGroup) -> Self {
        GroupHom::new(
            group.clone(),
            group.clone(),
            IntMatrix::identity(group.num_generators()),
        )
        .expect("identity is always well defined")
    }

    pub fn zero(source: &FpAbGroup, target: &FpAbGroup) -> Self {
        GroupHom {
            source: source.clone(),
            target: target.clone(),
            matrix: IntMatrix::zero(target.num_generators(), source.num_generators()),
        }
    }

    pub fn source(&self) -> &FpAbGroup {
        &self.source
    }

    pub fn target(&self) -> &FpAbGroup {
        &self.target
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn apply(&self, coords: &[BigInt]) -> Vec<BigInt> {
        self.target.reduce(&self.matrix.apply(coords))
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &GroupHom) -> GroupHom {
        assert_eq!(
            other.target, self.source,
            "compose: inner target must equal outer source"
        );
        GroupHom::new(
            other.source.clone(),
            self.target.clone(),
            &self.matrix * &other.matrix,
        )
        .expect("composition of well-defined maps is well defined")
    }

    pub fn add(&self, other: &GroupHom) -> GroupHom {
        assert_eq!(self.source, other.source, "add: source mismatch");
        assert_eq!(self.target, other.target, "add: target mismatch");
        GroupHom::new(
            self.source.clone(),
            self.target.clone(),
            &self.matrix + &other.matrix,
        )
        .expect("sum of well-defined maps is well defined")
    }

    pub fn negate(&self) -> GroupHom {
        GroupHom::new(self.source.clone(), self.target.clone(), -&self.matrix)
            .expect("negative of a well-defined map is well defined")
    }

    pub fn scale(&self, k: &BigInt) -> GroupHom {
        GroupHom::new(self.source.clone(), self.target.clone(), self.matrix.scale(k))
            .expect("scalar multiple of a well-defined map is well defined")
    }

    pub fn is_zero_map(&self) -> bool {
        self.matrix.is_zero()
    }

    /// Kernel subgroup in normal form, with the inclusion into the source as
    /// witness.
    pub fn kernel(&self) -> (FpAbGroup, GroupHom) {
        let sq = self.kernel_presentation();
        let incl = GroupHom::new(sq.group.clone(), self.source.clone(), sq.reps.clone())
            .expect("kernel inclusion is well defined");
        (sq.group, incl)
    }

    pub(crate) fn kernel_presentation(&self) -> Subquotient {
        // lattice of coordinate vectors mapping into the target relations
        let w = self.matrix.hstack(&self.target.relation_matrix());
        let ker = kernel_basis(&w);
        let lattice = ker.select_rows(&(0..self.source.num_generators()).collect::<Vec<_>>());
        Subquotient::new(
            self.source.num_generators(),
            Some(&lattice),
            &self.source.relation_matrix(),
        )
    }

    /// Cokernel in normal form, with the projection from the target as
    /// witness.
    pub fn cokernel(&self) -> (FpAbGroup, GroupHom) {
        let sq = self.cokernel_presentation();
        let proj = GroupHom::new(self.target.clone(), sq.group.clone(), sq.projection_matrix())
            .expect("cokernel projection is well defined");
        (sq.group, proj)
    }

    pub(crate) fn cokernel_presentation(&self) -> Subquotient {
        let modulo = self.matrix.hstack(&self.target.relation_matrix());
        Subquotient::new(self.target.num_generators(), None, &modulo)
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().0.is_trivial()
    }

    pub fn is_surjective(&self) -> bool {
        self.cokernel().0.is_trivial()
    }

    pub fn is_isomorphism(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }

    /// Some preimage of `y`, or `None` if `y` is not in the image.
    pub fn preimage(&self, y: &[BigInt]) -> Option<Vec<BigInt>> {
        let w = self.matrix.hstack(&self.target.relation_matrix());
        let sol = LinearSystem::new(&w).solve(y)?;
        Some(
            self.source
                .reduce(&sol[..self.source.num_generators()]),
        )
    }

    /// Pontrjagin-dual map between the dual groups: `f*(ψ) = ψ ∘ f`. Both
    /// sides must be finite.
    pub fn dual(&self) -> GroupHom {
        assert!(
            self.source.is_finite() && self.target.is_finite(),
            "dual: groups must be finite"
        );
        let src_dual = self.target.torsion();
        let tgt_dual = self.source.torsion();
        let k_s = self.source.torsion_count();
        let k_t = self.target.torsion_count();
        let mut m = IntMatrix::zero(k_s, k_t);
        for i in 0..k_s {
            let d_i = self.source.generator_order(i);
            for j in 0..k_t {
                let e_j = self.target.generator_order(j);
                // d_i * F[j][i] / e_j is integral by well-definedness
                let (q, r) = (self.matrix.at(j, i) * &d_i).div_rem(&e_j);
                debug_assert!(r.is_zero());
                m.set(i, j, q);
            }
        }
        GroupHom::new(src_dual, tgt_dual, m).expect("dual map is well defined")
    }

    /// Smallest `m >= 1` with `self^m = identity`; the endomorphism must be
    /// an automorphism of a finite group.
    pub fn multiplicative_order(&self) -> Result<usize> {
        if self.source != self.target {
            return Err(Error::NotAutomorphism);
        }
        if !self.is_isomorphism() {
            return Err(Error::NotAutomorphism);
        }
        let id = GroupHom::identity(&self.source);
        let mut power = self.clone();
        let mut m = 1usize;
        while power != id {
            power = self.compose(&power);
            m += 1;
        }
        Ok(m)
    }
}

impl fmt::Debug for GroupHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {} via {}", self.source, self.target, self.matrix)
    }
}
