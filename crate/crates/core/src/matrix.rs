//! Dense matrices over the integers with exact arithmetic.
//!
//! Everything downstream (group presentations, cohomology, pairings) reduces
//! to the normal forms and solvers in this module. Entries are
//! arbitrary-precision: the elimination algorithms used for the normal forms
//! are known to blow up intermediate coefficients even on small inputs.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Row-major integer matrix. Shapes with zero rows or columns are allowed
/// everywhere; they behave as the corresponding empty linear maps.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn diagonal(entries: &[BigInt]) -> Self {
        let n = entries.len();
        let mut m = IntMatrix::zero(n, n);
        for (i, e) in entries.iter().enumerate() {
            m.set(i, i, e.clone());
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, entries: Vec<BigInt>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count must be rows*cols");
        IntMatrix {
            rows,
            cols,
            entries,
        }
    }

    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> Self {
        IntMatrix::from_vec(
            rows,
            cols,
            entries.iter().map(|&e| BigInt::from(e)).collect(),
        )
    }

    /// Column vector from a slice.
    pub fn column_vector(entries: &[BigInt]) -> Self {
        IntMatrix::from_vec(entries.len(), 1, entries.to_vec())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &BigInt {
        assert!(r < self.rows && c < self.cols, "index out of range");
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: BigInt) {
        assert!(r < self.rows && c < self.cols, "index out of range");
        self.entries[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> Vec<BigInt> {
        (0..self.cols).map(|c| self.at(r, c).clone()).collect()
    }

    pub fn column(&self, c: usize) -> Vec<BigInt> {
        (0..self.rows).map(|r| self.at(r, c).clone()).collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zero(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.at(r, c).clone());
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.rows, other.rows, "hstack: row counts differ");
        let mut m = IntMatrix::zero(self.rows, self.cols + other.cols);
        m.paste(0, 0, self);
        m.paste(0, self.cols, other);
        m
    }

    /// Vertical concatenation `[self; other]`.
    pub fn vstack(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.cols, "vstack: column counts differ");
        let mut m = IntMatrix::zero(self.rows + other.rows, self.cols);
        m.paste(0, 0, self);
        m.paste(self.rows, 0, other);
        m
    }

    /// Copy `block` into this matrix with its top-left corner at `(r0, c0)`.
    pub fn paste(&mut self, r0: usize, c0: usize, block: &IntMatrix) {
        assert!(r0 + block.rows <= self.rows && c0 + block.cols <= self.cols);
        for r in 0..block.rows {
            for c in 0..block.cols {
                self.set(r0 + r, c0 + c, block.at(r, c).clone());
            }
        }
    }

    /// Add `scale * block` into this matrix at `(r0, c0)`.
    pub fn accumulate(&mut self, r0: usize, c0: usize, block: &IntMatrix, scale: &BigInt) {
        assert!(r0 + block.rows <= self.rows && c0 + block.cols <= self.cols);
        if scale.is_zero() {
            return;
        }
        for r in 0..block.rows {
            for c in 0..block.cols {
                let b = block.at(r, c);
                if b.is_zero() {
                    continue;
                }
                let v = self.at(r0 + r, c0 + c) + b * scale;
                self.set(r0 + r, c0 + c, v);
            }
        }
    }

    /// Keep the listed columns, in the given order.
    pub fn select_columns(&self, keep: &[usize]) -> IntMatrix {
        let mut m = IntMatrix::zero(self.rows, keep.len());
        for (j, &c) in keep.iter().enumerate() {
            for r in 0..self.rows {
                m.set(r, j, self.at(r, c).clone());
            }
        }
        m
    }

    /// Keep the listed rows, in the given order.
    pub fn select_rows(&self, keep: &[usize]) -> IntMatrix {
        let mut m = IntMatrix::zero(keep.len(), self.cols);
        for (i, &r) in keep.iter().enumerate() {
            for c in 0..self.cols {
                m.set(i, c, self.at(r, c).clone());
            }
        }
        m
    }

    pub fn apply(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.cols, "apply: length mismatch");
        let mut out = vec![BigInt::zero(); self.rows];
        for c in 0..self.cols {
            if v[c].is_zero() {
                continue;
            }
            for (r, o) in out.iter_mut().enumerate() {
                let e = self.at(r, c);
                if !e.is_zero() {
                    *o += e * &v[c];
                }
            }
        }
        out
    }

    pub fn scale(&self, k: &BigInt) -> IntMatrix {
        let entries = self.entries.iter().map(|e| e * k).collect();
        IntMatrix::from_vec(self.rows, self.cols, entries)
    }

    /// Determinant by the Bareiss fraction-free algorithm. The determinant of
    /// the empty matrix is 1.
    pub fn det(&self) -> BigInt {
        assert!(self.is_square(), "det: matrix must be square");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = 1i8;
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a.at(k, k).is_zero() {
                match (k + 1..n).find(|&r| !a.at(r, k).is_zero()) {
                    Some(r) => {
                        a.swap_rows(k, r);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = a.at(i, j) * a.at(k, k) - a.at(i, k) * a.at(k, j);
                    let (q, r) = num.div_rem(&prev);
                    debug_assert!(r.is_zero(), "Bareiss division must be exact");
                    a.set(i, j, q);
                }
            }
            for i in k + 1..n {
                a.set(i, k, BigInt::zero());
            }
            prev = a.at(k, k).clone();
        }
        let d = a.at(n - 1, n - 1).clone();
        if sign < 0 {
            -d
        } else {
            d
        }
    }

    /// Adjugate matrix: `adj(A) * A = det(A) * I`. Cofactor expansion; fine
    /// for the small square matrices this library works with.
    pub fn adjugate(&self) -> IntMatrix {
        assert!(self.is_square(), "adjugate: matrix must be square");
        let n = self.rows;
        if n == 0 {
            return IntMatrix::zero(0, 0);
        }
        let mut adj = IntMatrix::zero(n, n);
        for r in 0..n {
            for c in 0..n {
                let minor = self.minor(r, c);
                let mut cof = minor.det();
                if (r + c) % 2 == 1 {
                    cof = -cof;
                }
                // adj[c][r] = cofactor[r][c]
                adj.set(c, r, cof);
            }
        }
        adj
    }

    fn minor(&self, r: usize, c: usize) -> IntMatrix {
        let mut m = IntMatrix::zero(self.rows - 1, self.cols - 1);
        let mut ri = 0;
        for i in 0..self.rows {
            if i == r {
                continue;
            }
            let mut cj = 0;
            for j in 0..self.cols {
                if j == c {
                    continue;
                }
                m.set(ri, cj, self.at(i, j).clone());
                cj += 1;
            }
            ri += 1;
        }
        m
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries
                .swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for r in 0..self.rows {
            self.entries
                .swap(r * self.cols + a, r * self.cols + b);
        }
    }

    /// row[target] += q * row[source]
    fn add_multiple_of_row(&mut self, target: usize, source: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for c in 0..self.cols {
            let add = {
                let s = self.at(source, c);
                if s.is_zero() {
                    continue;
                }
                s * q
            };
            let t = self.at(target, c) + add;
            self.set(target, c, t);
        }
    }

    /// col[target] += q * col[source]
    fn add_multiple_of_col(&mut self, target: usize, source: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for r in 0..self.rows {
            let add = {
                let s = self.at(r, source);
                if s.is_zero() {
                    continue;
                }
                s * q
            };
            let t = self.at(r, target) + add;
            self.set(r, target, t);
        }
    }

    fn negate_row(&mut self, r: usize) {
        for c in 0..self.cols {
            let v = -self.at(r, c).clone();
            self.set(r, c, v);
        }
    }
}

impl Add for &IntMatrix {
    type Output = IntMatrix;
    fn add(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "add: shape mismatch");
        let entries = self
            .entries
            .iter()
            .zip(&rhs.entries)
            .map(|(a, b)| a + b)
            .collect();
        IntMatrix::from_vec(self.rows, self.cols, entries)
    }
}

impl Sub for &IntMatrix {
    type Output = IntMatrix;
    fn sub(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "sub: shape mismatch");
        let entries = self
            .entries
            .iter()
            .zip(&rhs.entries)
            .map(|(a, b)| a - b)
            .collect();
        IntMatrix::from_vec(self.rows, self.cols, entries)
    }
}

impl Neg for &IntMatrix {
    type Output = IntMatrix;
    fn neg(self) -> IntMatrix {
        let entries = self.entries.iter().map(|a| -a).collect();
        IntMatrix::from_vec(self.rows, self.cols, entries)
    }
}

impl Mul for &IntMatrix {
    type Output = IntMatrix;
    fn mul(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.rows, "mul: shape mismatch");
        let mut out = IntMatrix::zero(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.at(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let v = out.at(i, j) + a * b;
                    out.set(i, j, v);
                }
            }
        }
        out
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}x{}]", self.rows, self.cols)?;
        for r in 0..self.rows {
            write!(f, " [")?;
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.at(r, c))?;
            }
            write!(f, "]")?;
        }
        Ok(())
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Result of `smith_normal_form`: `u * source * v = s` with `u`, `v`
/// unimodular and `s` diagonal, nonnegative, each entry dividing the next,
/// zeros last.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
    pub source: IntMatrix,
    u_inv: IntMatrix,
}

impl SmithDecomposition {
    /// Diagonal of `s` (length `min(rows, cols)`).
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.s.rows().min(self.s.cols()))
            .map(|i| self.s.at(i, i).clone())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|d| !d.is_zero()).count()
    }

    /// Inverse of `u`, tracked during the reduction.
    pub fn u_inverse(&self) -> &IntMatrix {
        &self.u_inv
    }
}

/// Smith normal form by elimination. Pivot selection: entry of smallest
/// nonzero absolute value in the working submatrix, ties broken by lowest
/// `(row, col)`.
pub fn smith_normal_form(a: &IntMatrix) -> SmithDecomposition {
    let (m, n) = (a.rows(), a.cols());
    let mut s = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut u_inv = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);

    let mut k = 0;
    while k < m.min(n) {
        'pivot: loop {
            let Some((pr, pc)) = find_pivot(&s, k) else {
                // remaining submatrix is zero
                return finish_snf(s, u, u_inv, v, a);
            };
            if pr != k {
                s.swap_rows(k, pr);
                u.swap_rows(k, pr);
                u_inv.swap_cols(k, pr);
            }
            if pc != k {
                s.swap_cols(k, pc);
                v.swap_cols(k, pc);
            }
            let pivot = s.at(k, k).clone();
            // clear the pivot column
            for r in k + 1..m {
                if s.at(r, k).is_zero() {
                    continue;
                }
                let q = -(s.at(r, k) / &pivot);
                s.add_multiple_of_row(r, k, &q);
                u.add_multiple_of_row(r, k, &q);
                u_inv.add_multiple_of_col(k, r, &(-&q));
                if !s.at(r, k).is_zero() {
                    continue 'pivot;
                }
            }
            // clear the pivot row
            for c in k + 1..n {
                if s.at(k, c).is_zero() {
                    continue;
                }
                let q = -(s.at(k, c) / &pivot);
                s.add_multiple_of_col(c, k, &q);
                v.add_multiple_of_col(c, k, &q);
                if !s.at(k, c).is_zero() {
                    continue 'pivot;
                }
            }
            // the pivot must divide the remaining submatrix
            let mut offending = None;
            'search: for r in k + 1..m {
                for c in k + 1..n {
                    if !s.at(r, c).mod_floor(&pivot).is_zero() {
                        offending = Some(r);
                        break 'search;
                    }
                }
            }
            match offending {
                Some(r) => {
                    let one = BigInt::one();
                    s.add_multiple_of_row(k, r, &one);
                    u.add_multiple_of_row(k, r, &one);
                    u_inv.add_multiple_of_col(r, k, &(-&one));
                }
                None => break,
            }
        }
        if s.at(k, k).is_negative() {
            s.negate_row(k);
            u.negate_row(k);
            for r in 0..m {
                let val = -u_inv.at(r, k).clone();
                u_inv.set(r, k, val);
            }
        }
        k += 1;
    }
    finish_snf(s, u, u_inv, v, a)
}

fn finish_snf(
    s: IntMatrix,
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
    source: &IntMatrix,
) -> SmithDecomposition {
    SmithDecomposition {
        u,
        s,
        v,
        source: source.clone(),
        u_inv,
    }
}

fn find_pivot(s: &IntMatrix, k: usize) -> Option<(usize, usize)> {
    let mut best: Option<(BigInt, usize, usize)> = None;
    for r in k..s.rows() {
        for c in k..s.cols() {
            let e = s.at(r, c);
            if e.is_zero() {
                continue;
            }
            let a = e.abs();
            match &best {
                Some((b, _, _)) if *b <= a => {}
                _ => best = Some((a, r, c)),
            }
        }
    }
    best.map(|(_, r, c)| (r, c))
}

/// Row-style Hermite normal form: returns `(h, u)` with `u * a = h`, `u`
/// unimodular, `h` in row echelon form with positive pivots and the entries
/// above each pivot reduced into `[0, pivot)`.
pub fn hermite_normal_form(a: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let (m, n) = (a.rows(), a.cols());
    let mut h = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut row = 0;
    for col in 0..n {
        if row == m {
            break;
        }
        // bring the smallest nonzero entry of the column (at or below `row`)
        // into pivot position, eliminating until the column is clear
        loop {
            let mut best: Option<(BigInt, usize)> = None;
            for r in row..m {
                let e = h.at(r, col);
                if e.is_zero() {
                    continue;
                }
                let a = e.abs();
                match &best {
                    Some((b, _)) if *b <= a => {}
                    _ => best = Some((a, r)),
                }
            }
            let Some((_, pr)) = best else {
                break;
            };
            if pr != row {
                h.swap_rows(row, pr);
                u.swap_rows(row, pr);
            }
            let pivot = h.at(row, col).clone();
            let mut clear = true;
            for r in row + 1..m {
                if h.at(r, col).is_zero() {
                    continue;
                }
                let q = -(h.at(r, col) / &pivot);
                h.add_multiple_of_row(r, row, &q);
                u.add_multiple_of_row(r, row, &q);
                if !h.at(r, col).is_zero() {
                    clear = false;
                }
            }
            if clear {
                break;
            }
        }
        if h.at(row, col).is_zero() {
            continue;
        }
        if h.at(row, col).is_negative() {
            h.negate_row(row);
            u.negate_row(row);
        }
        let pivot = h.at(row, col).clone();
        for r in 0..row {
            let q = -h.at(r, col).div_floor(&pivot);
            h.add_multiple_of_row(r, row, &q);
            u.add_multiple_of_row(r, row, &q);
        }
        row += 1;
    }
    (h, u)
}

/// Basis of the integer kernel `{x : a*x = 0}`, as matrix columns.
pub fn kernel_basis(a: &IntMatrix) -> IntMatrix {
    let snf = smith_normal_form(a);
    let diag = snf.diagonal();
    let keep: Vec<usize> = (0..a.cols())
        .filter(|&i| i >= diag.len() || diag[i].is_zero())
        .collect();
    snf.v.select_columns(&keep)
}

/// Basis of the column span (the lattice generated by the columns), as the
/// nonzero columns of a column-style Hermite form. Columns are independent.
pub fn column_span_basis(a: &IntMatrix) -> IntMatrix {
    let (h, _) = hermite_normal_form(&a.transpose());
    let ht = h.transpose();
    let keep: Vec<usize> = (0..ht.cols())
        .filter(|&c| (0..ht.rows()).any(|r| !ht.at(r, c).is_zero()))
        .collect();
    ht.select_columns(&keep)
}

/// Prefactored linear system `a * x = b`, for solving against many right-hand
/// sides. Which solution is returned is unspecified but deterministic.
pub struct LinearSystem {
    snf: SmithDecomposition,
}

impl LinearSystem {
    pub fn new(a: &IntMatrix) -> Self {
        LinearSystem {
            snf: smith_normal_form(a),
        }
    }

    pub fn solve(&self, b: &[BigInt]) -> Option<Vec<BigInt>> {
        let a = &self.snf.source;
        assert_eq!(b.len(), a.rows(), "solve: length of b must match rows");
        let c = self.snf.u.apply(b);
        let diag = self.snf.diagonal();
        let mut y = vec![BigInt::zero(); a.cols()];
        for (i, ci) in c.iter().enumerate() {
            if i < diag.len() && !diag[i].is_zero() {
                let (q, r) = ci.div_rem(&diag[i]);
                if !r.is_zero() {
                    return None;
                }
                y[i] = q;
            } else if !ci.is_zero() {
                return None;
            }
        }
        Some(self.snf.v.apply(&y))
    }
}

/// Solve `a * x = b` over the integers; `None` when no solution exists.
pub fn solve_integer(a: &IntMatrix, b: &[BigInt]) -> Option<Vec<BigInt>> {
    LinearSystem::new(a).solve(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    /// Determinantal-divisor oracle: the k-th diagonal entry of the Smith
    /// form is gcd(k-minors)/gcd((k-1)-minors).
    fn minor_gcd_diagonal(a: &IntMatrix) -> Vec<BigInt> {
        let n = a.rows().min(a.cols());
        let mut prev = BigInt::one();
        let mut out = Vec::new();
        for k in 1..=n {
            let mut g = BigInt::zero();
            for rows in combinations(a.rows(), k) {
                for cols in combinations(a.cols(), k) {
                    let sub = a.select_rows(&rows).select_columns(&cols);
                    g = g.gcd(&sub.det());
                }
            }
            if g.is_zero() {
                out.push(BigInt::zero());
                continue;
            }
            let q = &g / &prev;
            out.push(q);
            prev = g;
        }
        // once a zero appears all later quotients are zero
        let mut seen_zero = false;
        for d in out.iter_mut() {
            if d.is_zero() {
                seen_zero = true;
            }
            if seen_zero {
                *d = BigInt::zero();
            }
        }
        out
    }

    fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if cur.len() == k {
                out.push(cur.clone());
                return;
            }
            for i in start..n {
                cur.push(i);
                rec(i + 1, n, k, cur, out);
                cur.pop();
            }
        }
        rec(0, n, k, &mut cur, &mut out);
        out
    }

    fn check_snf(a: &IntMatrix) -> SmithDecomposition {
        let snf = smith_normal_form(a);
        assert_eq!(&(&snf.u * a) * &snf.v, snf.s, "U*A*V != S for {a}");
        assert_eq!(snf.u.det().abs(), BigInt::one());
        assert_eq!(snf.v.det().abs(), BigInt::one());
        assert_eq!(&snf.u * snf.u_inverse(), IntMatrix::identity(a.rows()));
        let d = snf.diagonal();
        for i in 0..d.len() {
            assert!(!d[i].is_negative());
            if i + 1 < d.len() {
                if d[i].is_zero() {
                    assert!(d[i + 1].is_zero(), "zeros must come last");
                } else {
                    assert!(d[i + 1].mod_floor(&d[i]).is_zero(), "chain broken in {d:?}");
                }
            }
        }
        for r in 0..snf.s.rows() {
            for c in 0..snf.s.cols() {
                if r != c {
                    assert!(snf.s.at(r, c).is_zero());
                }
            }
        }
        snf
    }

    #[test]
    fn snf_diag_2_3() {
        // gcd-of-minors oracle: d1 = gcd of entries = 1, d2 = |det| = 6
        let a = IntMatrix::diagonal(&[big(2), big(3)]);
        let snf = check_snf(&a);
        assert_eq!(snf.diagonal(), vec![big(1), big(6)]);
        assert_eq!(minor_gcd_diagonal(&a), vec![big(1), big(6)]);
    }

    #[test]
    fn snf_identity() {
        let a = IntMatrix::identity(4);
        let snf = check_snf(&a);
        assert_eq!(snf.s, IntMatrix::identity(4));
        assert_eq!(snf.u, IntMatrix::identity(4));
        assert_eq!(snf.v, IntMatrix::identity(4));
    }

    #[test]
    fn snf_zero_matrix() {
        let a = IntMatrix::zero(2, 2);
        let snf = check_snf(&a);
        assert!(snf.s.is_zero());
    }

    #[test]
    fn snf_empty_shapes() {
        for (r, c) in [(0, 0), (0, 3), (3, 0)] {
            let a = IntMatrix::zero(r, c);
            let snf = check_snf(&a);
            assert_eq!(snf.s.rows(), r);
            assert_eq!(snf.s.cols(), c);
        }
    }

    #[test]
    fn snf_matches_minor_gcd_oracle() {
        let cases = [
            IntMatrix::from_i64(2, 2, &[2, 4, 1, 3]),
            IntMatrix::from_i64(3, 3, &[2, 0, 0, 0, 6, 0, 0, 0, 15]),
            IntMatrix::from_i64(2, 3, &[4, 6, 10, 2, 8, 6]),
            IntMatrix::from_i64(3, 2, &[0, 0, 3, 9, 6, 3]),
            IntMatrix::from_i64(3, 3, &[1, 2, 3, 4, 5, 6, 7, 8, 9]),
        ];
        for a in &cases {
            let snf = check_snf(a);
            assert_eq!(snf.diagonal(), minor_gcd_diagonal(a), "oracle mismatch for {a}");
        }
    }

    #[test]
    fn snf_invariant_under_permutation() {
        let a = IntMatrix::from_i64(3, 3, &[2, 7, 1, 0, 4, 8, 5, 3, 9]);
        let perm_rows = a.select_rows(&[2, 0, 1]);
        let perm_cols = a.select_columns(&[1, 2, 0]);
        assert_eq!(
            smith_normal_form(&a).diagonal(),
            smith_normal_form(&perm_rows).diagonal()
        );
        assert_eq!(
            smith_normal_form(&a).diagonal(),
            smith_normal_form(&perm_cols).diagonal()
        );
    }

    /// Exhaustive oracle for 2x2 HNF: enumerate unimodular row operations by
    /// searching over products of elementary matrices with small entries and
    /// pick the unique result in Hermite shape.
    fn hnf_2x2_oracle(a: &IntMatrix) -> IntMatrix {
        let bound = 12i64;
        let mut best: Option<IntMatrix> = None;
        for u11 in -bound..=bound {
            for u12 in -bound..=bound {
                for u21 in -bound..=bound {
                    for u22 in -bound..=bound {
                        if u11 * u22 - u12 * u21 != 1 && u11 * u22 - u12 * u21 != -1 {
                            continue;
                        }
                        let u = IntMatrix::from_i64(2, 2, &[u11, u12, u21, u22]);
                        let h = &u * a;
                        if !is_hermite_shape(&h) {
                            continue;
                        }
                        match &best {
                            None => best = Some(h),
                            Some(b) => assert_eq!(b, &h, "HNF not unique"),
                        }
                    }
                }
            }
        }
        best.expect("oracle found no Hermite form in range")
    }

    fn is_hermite_shape(h: &IntMatrix) -> bool {
        // row echelon, positive pivots, entries above pivots in [0, pivot)
        let mut prev_col: Option<usize> = None;
        let mut seen_zero_row = false;
        for r in 0..h.rows() {
            let pivot_col = (0..h.cols()).find(|&c| !h.at(r, c).is_zero());
            match pivot_col {
                None => seen_zero_row = true,
                Some(c) => {
                    if seen_zero_row {
                        return false;
                    }
                    if let Some(p) = prev_col {
                        if c <= p {
                            return false;
                        }
                    }
                    let pivot = h.at(r, c);
                    if pivot.is_negative() {
                        return false;
                    }
                    for rr in 0..r {
                        let e = h.at(rr, c);
                        if e.is_negative() || e >= pivot {
                            return false;
                        }
                    }
                    prev_col = Some(c);
                }
            }
        }
        true
    }

    #[test]
    fn hnf_2x2_golden() {
        let a = IntMatrix::from_i64(2, 2, &[2, 4, 1, 3]);
        let (h, u) = hermite_normal_form(&a);
        assert_eq!(&u * &a, h);
        assert_eq!(u.det().abs(), BigInt::one());
        assert_eq!(h, IntMatrix::from_i64(2, 2, &[1, 1, 0, 2]));
        assert_eq!(h, hnf_2x2_oracle(&a));
    }

    #[test]
    fn hnf_identity_and_zero() {
        let (h, _) = hermite_normal_form(&IntMatrix::identity(3));
        assert_eq!(h, IntMatrix::identity(3));
        let (h, _) = hermite_normal_form(&IntMatrix::zero(1, 1));
        assert_eq!(h, IntMatrix::zero(1, 1));
    }

    #[test]
    fn hnf_more_2x2_against_oracle() {
        for a in [
            IntMatrix::from_i64(2, 2, &[6, 4, 2, 8]),
            IntMatrix::from_i64(2, 2, &[0, 5, 3, 1]),
            IntMatrix::from_i64(2, 2, &[-2, 3, 4, -1]),
            IntMatrix::from_i64(2, 2, &[0, 0, 0, 4]),
        ] {
            let (h, u) = hermite_normal_form(&a);
            assert_eq!(&u * &a, h);
            assert!(is_hermite_shape(&h), "not hermite: {h}");
            assert_eq!(h, hnf_2x2_oracle(&a), "oracle mismatch for {a}");
        }
    }

    #[test]
    fn solve_diag() {
        let a = IntMatrix::diagonal(&[big(2), big(3)]);
        let x = solve_integer(&a, &[big(4), big(9)]).unwrap();
        assert_eq!(x, vec![big(2), big(3)]);
        assert!(solve_integer(&a, &[big(1), big(0)]).is_none());
    }

    #[test]
    fn solve_underdetermined_verified_by_remultiplication() {
        let a = IntMatrix::from_i64(1, 2, &[1, 1]);
        let b = vec![big(5)];
        let x = solve_integer(&a, &b).unwrap();
        assert_eq!(a.apply(&x), b);
    }

    #[test]
    fn solve_iff_in_column_span() {
        // membership via HNF of the augmented matrix: b is in the span iff
        // the augmented lattice has the same column-span basis
        let a = IntMatrix::from_i64(2, 2, &[2, 4, 0, 6]);
        for b in [
            vec![big(2), big(0)],
            vec![big(1), big(0)],
            vec![big(0), big(3)],
            vec![big(6), big(6)],
        ] {
            let aug = a.hstack(&IntMatrix::column_vector(&b));
            let same_span = column_span_basis(&a) == column_span_basis(&aug);
            assert_eq!(solve_integer(&a, &b).is_some(), same_span, "b = {b:?}");
        }
    }

    #[test]
    fn kernel_basis_spans_kernel() {
        let a = IntMatrix::from_i64(2, 3, &[1, 2, 3, 2, 4, 6]);
        let k = kernel_basis(&a);
        assert_eq!(k.cols(), 2);
        assert!((&a * &k).is_zero());
    }

    #[test]
    fn adjugate_identity() {
        let a = IntMatrix::from_i64(3, 3, &[2, 1, 0, 0, 3, 1, 1, 0, 2]);
        let adj = a.adjugate();
        let d = a.det();
        let prod = &adj * &a;
        assert_eq!(prod, IntMatrix::diagonal(&[d.clone(), d.clone(), d]));
    }

    proptest! {
        #[test]
        fn snf_random_properties(
            rows in 0usize..5,
            cols in 0usize..5,
            seed in proptest::collection::vec(-10i64..=10, 25),
        ) {
            let entries: Vec<i64> = seed.into_iter().take(rows * cols).collect();
            prop_assume!(entries.len() == rows * cols);
            let a = IntMatrix::from_i64(rows, cols, &entries);
            let snf = check_snf(&a);
            if rows == cols {
                prop_assert_eq!(snf.s.det().abs(), a.det().abs());
            }
        }

        #[test]
        fn solve_random_consistency(
            entries in proptest::collection::vec(-6i64..=6, 9),
            xs in proptest::collection::vec(-4i64..=4, 3),
        ) {
            let a = IntMatrix::from_i64(3, 3, &entries);
            let x: Vec<BigInt> = xs.iter().map(|&v| big(v)).collect();
            let b = a.apply(&x);
            // a solution certainly exists; the returned one must satisfy A*x=b
            let got = solve_integer(&a, &b).expect("constructed system must be solvable");
            prop_assert_eq!(a.apply(&got), b);
        }
    }
}
