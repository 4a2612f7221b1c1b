//! Presentation engine: normal forms of subquotients of free presentations.
//!
//! Everything that produces an `FpAbGroup` out of matrix data funnels through
//! [`Subquotient::new`]: cokernels, kernels, cohomology, direct sums and
//! tensor products. Given an ambient `Z^g` carrying a lattice `L` (spanned by
//! the columns of `lattice`, or all of `Z^g` when absent) and a sublattice
//! `M` (spanned by the columns of `modulo`, required to lie inside `L`), it
//! presents `L / M` in normal form and keeps enough change-of-basis data to
//! map elements in and out.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::matrix::{
    column_span_basis, smith_normal_form, IntMatrix, LinearSystem, SmithDecomposition,
};

use super::FpAbGroup;

pub(crate) struct Subquotient {
    ambient_rank: usize,
    pub(crate) group: FpAbGroup,
    /// Basis of the lattice `L` (columns independent); `None` means `Z^g`.
    basis: Option<IntMatrix>,
    basis_solver: Option<LinearSystem>,
    /// Smith decomposition of the relation matrix expressed in the basis.
    snf: SmithDecomposition,
    /// Indices (in basis coordinates after the SNF change of basis) of the
    /// generators that survive normalization.
    kept: Vec<usize>,
    /// Representatives of the group generators in ambient coordinates,
    /// shape `g x num_generators`.
    pub(crate) reps: IntMatrix,
}

impl Subquotient {
    pub(crate) fn new(
        ambient_rank: usize,
        lattice: Option<&IntMatrix>,
        modulo: &IntMatrix,
    ) -> Subquotient {
        assert_eq!(modulo.rows(), ambient_rank, "modulo: ambient rank mismatch");
        let basis = lattice.map(|l| {
            assert_eq!(l.rows(), ambient_rank, "lattice: ambient rank mismatch");
            column_span_basis(l)
        });
        let basis_solver = basis.as_ref().map(LinearSystem::new);
        let rank = basis.as_ref().map_or(ambient_rank, |b| b.cols());

        // relations in basis coordinates
        let rel = match &basis_solver {
            None => modulo.clone(),
            Some(solver) => {
                let mut rel = IntMatrix::zero(rank, modulo.cols());
                for j in 0..modulo.cols() {
                    let col = solver
                        .solve(&modulo.column(j))
                        .expect("modulo lattice must lie inside the ambient lattice");
                    for (i, v) in col.into_iter().enumerate() {
                        rel.set(i, j, v);
                    }
                }
                rel
            }
        };

        let snf = smith_normal_form(&rel);
        let diag = snf.diagonal();
        let mut kept = Vec::new();
        let mut invariant_factors = Vec::new();
        let mut free_rank = 0;
        for i in 0..rank {
            let d = diag.get(i).cloned().unwrap_or_else(BigInt::zero);
            if d.is_one() {
                continue;
            }
            kept.push(i);
            if d.is_zero() {
                free_rank += 1;
            } else {
                invariant_factors.push(d);
            }
        }
        let group = FpAbGroup::new(free_rank, invariant_factors)
            .expect("Smith diagonal always yields a valid chain");

        let reps_in_basis = snf.u_inverse().select_columns(&kept);
        let reps = match &basis {
            None => reps_in_basis,
            Some(b) => b * &reps_in_basis,
        };

        Subquotient {
            ambient_rank,
            group,
            basis,
            basis_solver,
            snf,
            kept,
            reps,
        }
    }

    /// Group coordinates of an ambient vector. Panics when the vector does
    /// not lie in the lattice.
    pub(crate) fn project(&self, x: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(x.len(), self.ambient_rank, "project: length mismatch");
        let in_basis = match &self.basis_solver {
            None => x.to_vec(),
            Some(solver) => solver
                .solve(x)
                .expect("projected element must lie in the lattice"),
        };
        let rotated = self.snf.u.apply(&in_basis);
        let coords: Vec<BigInt> = self.kept.iter().map(|&i| rotated[i].clone()).collect();
        self.group.reduce(&coords)
    }

    /// Matrix of `project` on the standard basis; only meaningful when the
    /// lattice is all of `Z^g`.
    pub(crate) fn projection_matrix(&self) -> IntMatrix {
        assert!(
            self.basis.is_none(),
            "projection matrix only defined on the full ambient lattice"
        );
        let full = self.snf.u.select_rows(&self.kept);
        let mut out = IntMatrix::zero(full.rows(), full.cols());
        for c in 0..full.cols() {
            let reduced = self.group.reduce(&full.column(c));
            for (r, v) in reduced.into_iter().enumerate() {
                out.set(r, c, v);
            }
        }
        out
    }
}
