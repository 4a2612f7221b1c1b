//! Direct sums and tensor products with generator bookkeeping.
//!
//! Normal forms alone are cheap to combine; the point of these helpers is to
//! keep the change-of-basis data so that block maps (differentials of total
//! complexes, Kronecker products of homomorphisms) can be transported onto
//! the normalized generators.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::matrix::IntMatrix;

use super::subquotient::Subquotient;
use super::{FpAbGroup, GroupHom};

/// A direct sum in normal form together with the embeddings and projections
/// of its summands, and the change of basis between the concatenated
/// "ambient" generators of the blocks and the normalized generators.
pub struct DirectSum {
    pub group: FpAbGroup,
    embeddings: Vec<GroupHom>,
    projections: Vec<GroupHom>,
    /// group coordinates of each ambient generator, shape `g_sum x total`
    ambient_projection: IntMatrix,
    /// ambient representative of each group generator, shape `total x g_sum`
    ambient_lift: IntMatrix,
    offsets: Vec<usize>,
}

impl DirectSum {
    pub fn components(&self) -> usize {
        self.embeddings.len()
    }

    pub fn embedding(&self, i: usize) -> &GroupHom {
        &self.embeddings[i]
    }

    pub fn projection(&self, i: usize) -> &GroupHom {
        &self.projections[i]
    }

    /// Offset of block `i` in ambient (concatenated) coordinates.
    pub fn offset(&self, i: usize) -> usize {
        self.offsets[i]
    }

    pub fn ambient_rank(&self) -> usize {
        *self.offsets.last().unwrap_or(&0)
    }

    pub fn ambient_projection(&self) -> &IntMatrix {
        &self.ambient_projection
    }

    pub fn ambient_lift(&self) -> &IntMatrix {
        &self.ambient_lift
    }

    /// Group coordinates of a concatenated block vector.
    pub fn project_concat(&self, x: &[BigInt]) -> Vec<BigInt> {
        self.group.reduce(&self.ambient_projection.apply(x))
    }
}

/// Direct sum of arbitrary groups.
pub fn direct_sum(parts: &[FpAbGroup]) -> DirectSum {
    let mut offsets = vec![0usize];
    for p in parts {
        offsets.push(offsets.last().unwrap() + p.num_generators());
    }
    let total = *offsets.last().unwrap();
    let torsion_cols: usize = parts.iter().map(|p| p.torsion_count()).sum();
    let mut rel = IntMatrix::zero(total, torsion_cols);
    let mut col = 0;
    for (b, p) in parts.iter().enumerate() {
        let r = p.relation_matrix();
        rel.paste(offsets[b], col, &r);
        col += r.cols();
    }
    let sq = Subquotient::new(total, None, &rel);
    let ambient_projection = sq.projection_matrix();
    let ambient_lift = sq.reps.clone();
    let group = sq.group;

    let mut embeddings = Vec::new();
    let mut projections = Vec::new();
    for (b, p) in parts.iter().enumerate() {
        let g = p.num_generators();
        let cols: Vec<usize> = (offsets[b]..offsets[b] + g).collect();
        let emb = ambient_projection.select_columns(&cols);
        embeddings.push(
            GroupHom::new(p.clone(), group.clone(), emb).expect("sum embedding is well defined"),
        );
        let rows: Vec<usize> = (offsets[b]..offsets[b] + g).collect();
        let proj = ambient_lift.select_rows(&rows);
        projections.push(
            GroupHom::new(group.clone(), p.clone(), proj)
                .expect("sum projection is well defined"),
        );
    }
    DirectSum {
        group,
        embeddings,
        projections,
        ambient_projection,
        ambient_lift,
        offsets,
    }
}

/// Direct sum of `copies` copies of one group. Same result as the generic
/// construction but assembled by index bookkeeping alone, which matters for
/// the large sums behind bar and Čech complexes.
pub fn direct_sum_power(part: &FpAbGroup, copies: usize) -> DirectSum {
    let k = part.torsion_count();
    let r = part.free_rank();
    let g = part.num_generators();
    let mut factors = Vec::with_capacity(k * copies);
    for d in part.invariant_factors() {
        for _ in 0..copies {
            factors.push(d.clone());
        }
    }
    let group = FpAbGroup::new(r * copies, factors).expect("replicated chain stays a chain");

    // sum generator index of (block b, part generator t)
    let index = |b: usize, t: usize| -> usize {
        if t < k {
            t * copies + b
        } else {
            k * copies + b * r + (t - k)
        }
    };

    let total = g * copies;
    let g_sum = group.num_generators();
    let mut ambient_projection = IntMatrix::zero(g_sum, total);
    let mut ambient_lift = IntMatrix::zero(total, g_sum);
    for b in 0..copies {
        for t in 0..g {
            let s = index(b, t);
            let a = b * g + t;
            ambient_projection.set(s, a, 1.into());
            ambient_lift.set(a, s, 1.into());
        }
    }

    let mut embeddings = Vec::new();
    let mut projections = Vec::new();
    for b in 0..copies {
        let cols: Vec<usize> = (0..g).map(|t| b * g + t).collect();
        let emb = ambient_projection.select_columns(&cols);
        embeddings.push(
            GroupHom::new(part.clone(), group.clone(), emb)
                .expect("power embedding is well defined"),
        );
        let rows: Vec<usize> = (0..g).map(|t| b * g + t).collect();
        let proj = ambient_lift.select_rows(&rows);
        projections.push(
            GroupHom::new(group.clone(), part.clone(), proj)
                .expect("power projection is well defined"),
        );
    }
    let offsets = (0..=copies).map(|b| b * g).collect();
    DirectSum {
        group,
        embeddings,
        projections,
        ambient_projection,
        ambient_lift,
        offsets,
    }
}

/// A tensor product `A ⊗ B` in normal form with the change of basis between
/// the generator grid `a_i ⊗ b_j` and the normalized generators. Grid index
/// convention: `(i, j) -> i * g_B + j`.
pub struct TensorProduct {
    pub group: FpAbGroup,
    left_gens: usize,
    right_gens: usize,
    /// group coordinates of each grid generator, `g x (g_A * g_B)`
    grid_projection: IntMatrix,
    /// grid representative of each group generator, `(g_A * g_B) x g`
    grid_lift: IntMatrix,
}

impl TensorProduct {
    pub fn grid_projection(&self) -> &IntMatrix {
        &self.grid_projection
    }

    pub fn grid_lift(&self) -> &IntMatrix {
        &self.grid_lift
    }

    /// Class of the elementary tensor `x ⊗ y`.
    pub fn pure_tensor(&self, x: &[BigInt], y: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(x.len(), self.left_gens);
        assert_eq!(y.len(), self.right_gens);
        let mut grid = vec![BigInt::zero(); self.left_gens * self.right_gens];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                grid[i * self.right_gens + j] = xi * yj;
            }
        }
        self.group.reduce(&self.grid_projection.apply(&grid))
    }
}

/// Tensor product of two groups, presented on the generator grid.
pub fn tensor_product(a: &FpAbGroup, b: &FpAbGroup) -> TensorProduct {
    let (ga, gb) = (a.num_generators(), b.num_generators());
    let total = ga * gb;
    // relations: d_i (e_i ⊗ e_j) for torsion generators of A, and
    // symmetrically for B
    let cols = a.torsion_count() * gb + ga * b.torsion_count();
    let mut rel = IntMatrix::zero(total, cols);
    let mut c = 0;
    for i in 0..a.torsion_count() {
        let d = a.generator_order(i);
        for j in 0..gb {
            rel.set(i * gb + j, c, d.clone());
            c += 1;
        }
    }
    for j in 0..b.torsion_count() {
        let d = b.generator_order(j);
        for i in 0..ga {
            rel.set(i * gb + j, c, d.clone());
            c += 1;
        }
    }
    let sq = Subquotient::new(total, None, &rel);
    TensorProduct {
        grid_projection: sq.projection_matrix(),
        grid_lift: sq.reps.clone(),
        group: sq.group,
        left_gens: ga,
        right_gens: gb,
    }
}

/// Kronecker product matching the grid index convention of
/// [`tensor_product`].
pub fn kronecker(f: &IntMatrix, g: &IntMatrix) -> IntMatrix {
    let mut out = IntMatrix::zero(f.rows() * g.rows(), f.cols() * g.cols());
    for i in 0..f.rows() {
        for j in 0..f.cols() {
            let a = f.at(i, j);
            if a.is_zero() {
                continue;
            }
            for k in 0..g.rows() {
                for l in 0..g.cols() {
                    let b = g.at(k, l);
                    if b.is_zero() {
                        continue;
                    }
                    out.set(i * g.rows() + k, j * g.cols() + l, a * b);
                }
            }
        }
    }
    out
}

/// The induced map `A ⊗ C -> B ⊗ D` of `f: A -> B` and `g: C -> D`.
pub fn tensor_hom(
    f: &GroupHom,
    g: &GroupHom,
    source: &TensorProduct,
    target: &TensorProduct,
) -> GroupHom {
    let kron = kronecker(f.matrix(), g.matrix());
    let m = target.grid_projection() * &(&kron * source.grid_lift());
    GroupHom::new(source.group.clone(), target.group.clone(), m)
        .expect("tensor of well-defined maps is well defined")
}
