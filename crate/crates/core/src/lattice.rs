//! Exact integer and rational linear algebra on finite-rank lattices.
//!
//! Everything in this module works over arbitrary-precision integers
//! ([`Int`]) and rationals ([`Rat`]); no floating point appears anywhere.
//! The three workhorses are Smith normal form (invariant factors and
//! unimodular transforms), column echelon form over the integers (canonical
//! coset representatives), and rational Gaussian elimination (solving and
//! inverting).

use num::bigint::BigInt;
use num::integer::Integer;
use num::rational::BigRational;
use num::traits::{One, Signed, Zero};

pub type Int = BigInt;
pub type Rat = BigRational;
pub type IntVec = Vec<Int>;
pub type RatVec = Vec<Rat>;

/// Integer vector from machine integers.
pub fn int_vec(entries: &[i64]) -> IntVec {
    entries.iter().map(|&e| Int::from(e)).collect()
}

/// Rational vector from an integer one.
pub fn to_rat_vec(v: &[Int]) -> RatVec {
    v.iter().map(|e| Rat::from_integer(e.clone())).collect()
}

/// Rational vector from machine integers.
pub fn rat_vec(entries: &[i64]) -> RatVec {
    entries.iter().map(|&e| Rat::from_integer(Int::from(e))).collect()
}

/// Exact dot product of an integer covector with an integer vector.
pub fn dot(a: &[Int], b: &[Int]) -> Int {
    assert_eq!(a.len(), b.len(), "dot product of unequal lengths");
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Exact dot product of an integer covector with a rational vector.
pub fn dot_int_rat(a: &[Int], b: &[Rat]) -> Rat {
    assert_eq!(a.len(), b.len(), "dot product of unequal lengths");
    a.iter()
        .zip(b)
        .map(|(x, y)| Rat::from_integer(x.clone()) * y)
        .sum()
}

/// True when every coordinate is an integer.
pub fn is_integral(v: &[Rat]) -> bool {
    v.iter().all(|x| x.is_integer())
}

/// Divide a nonzero integer vector by the gcd of its entries.
pub fn primitive_part(v: &[Int]) -> IntVec {
    let mut g = Int::zero();
    for e in v {
        g = g.gcd(e);
    }
    if g.is_zero() || g.is_one() {
        return v.to_vec();
    }
    v.iter().map(|e| e / &g).collect()
}

/// Dense row-major matrix of arbitrary-precision integers.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    a: Vec<Int>,
}

impl std::fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                write!(f, "{} ", self.get(i, j))?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, a: vec![Int::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, Int::one());
        }
        m
    }

    /// Build from machine-integer rows (each row must have equal length).
    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut m = IntMatrix::zero(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, &e) in row.iter().enumerate() {
                m.set(i, j, Int::from(e));
            }
        }
        m
    }

    /// Build an `n x k` matrix whose columns are the given vectors.
    pub fn from_cols(n: usize, cols: &[IntVec]) -> Self {
        let mut m = IntMatrix::zero(n, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), n, "column of wrong height");
            for i in 0..n {
                m.set(i, j, col[i].clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Int {
        &self.a[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Int) {
        self.a[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> IntVec {
        (0..self.cols).map(|j| self.get(i, j).clone()).collect()
    }

    pub fn col(&self, j: usize) -> IntVec {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut p = IntMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut s = Int::zero();
                for k in 0..self.cols {
                    s += self.get(i, k) * other.get(k, j);
                }
                p.set(i, j, s);
            }
        }
        p
    }

    /// Matrix-vector product.
    pub fn mul_vec(&self, v: &[Int]) -> IntVec {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        (0..self.rows).map(|i| dot(&self.row(i), v)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.a.iter().all(|e| e.is_zero())
    }

    /// Keep only the listed rows and columns, in the given order.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> IntMatrix {
        let mut m = IntMatrix::zero(rows.len(), cols.len());
        for (i, &ri) in rows.iter().enumerate() {
            for (j, &cj) in cols.iter().enumerate() {
                m.set(i, j, self.get(ri, cj).clone());
            }
        }
        m
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, other: &IntMatrix) -> IntMatrix {
        let mut m = IntMatrix::zero(self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j).clone());
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                m.set(self.rows + i, self.cols + j, other.get(i, j).clone());
            }
        }
        m
    }

    pub fn to_rat(&self) -> RatMatrix {
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            a: self.a.iter().map(|e| Rat::from_integer(e.clone())).collect(),
        }
    }

    /// Rank over the rationals.
    pub fn rank(&self) -> usize {
        self.to_rat().rank()
    }

    fn swap_rows(&mut self, i1: usize, i2: usize) {
        if i1 == i2 {
            return;
        }
        for j in 0..self.cols {
            self.a.swap(i1 * self.cols + j, i2 * self.cols + j);
        }
    }

    fn swap_cols(&mut self, j1: usize, j2: usize) {
        if j1 == j2 {
            return;
        }
        for i in 0..self.rows {
            self.a.swap(i * self.cols + j1, i * self.cols + j2);
        }
    }

    /// row[dst] += c * row[src]
    fn row_axpy(&mut self, dst: usize, src: usize, c: &Int) {
        if c.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let add = c * self.get(src, j);
            let v = self.get(dst, j) + add;
            self.set(dst, j, v);
        }
    }

    /// col[dst] += c * col[src]
    fn col_axpy(&mut self, dst: usize, src: usize, c: &Int) {
        if c.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let add = c * self.get(i, src);
            let v = self.get(i, dst) + add;
            self.set(i, dst, v);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -self.get(i, j).clone();
            self.set(i, j, v);
        }
    }
}

/// Dense row-major matrix of arbitrary-precision rationals.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    a: Vec<Rat>,
}

impl RatMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        RatMatrix { rows, cols, a: vec![Rat::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RatMatrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, Rat::one());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rat {
        &self.a[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rat) {
        self.a[i * self.cols + j] = v;
    }

    pub fn mul_vec(&self, v: &[Rat]) -> RatVec {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j) * &v[j]).sum())
            .collect()
    }

    pub fn mul(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut p = RatMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut s = Rat::zero();
                for k in 0..self.cols {
                    s += self.get(i, k) * other.get(k, j);
                }
                p.set(i, j, s);
            }
        }
        p
    }

    /// Row echelon reduction in place; returns pivot columns.
    fn echelonize(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self.get(i, c).is_zero()) else {
                continue;
            };
            for j in 0..self.cols {
                self.a.swap(r * self.cols + j, p * self.cols + j);
            }
            let inv = self.get(r, c).recip();
            for j in c..self.cols {
                let v = self.get(r, j) * &inv;
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i != r && !self.get(i, c).is_zero() {
                    let f = self.get(i, c).clone();
                    for j in c..self.cols {
                        let v = self.get(i, j) - &f * self.get(r, j);
                        self.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.echelonize().len()
    }

    /// Exact inverse; `None` when singular.
    pub fn inverse(&self) -> Option<RatMatrix> {
        assert_eq!(self.rows, self.cols, "inverse of non-square matrix");
        let n = self.rows;
        let mut aug = RatMatrix::zero(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, Rat::one());
        }
        let pivots = aug.echelonize();
        if pivots.len() < n || pivots.iter().enumerate().any(|(k, &c)| c != k) {
            return None;
        }
        let mut inv = RatMatrix::zero(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, aug.get(i, n + j).clone());
            }
        }
        Some(inv)
    }
}

/// Solve `a * x = b` exactly over the rationals.
///
/// Returns one solution (free coordinates set to zero) or `None` when the
/// system is inconsistent.  The solution is unique exactly when `a` has full
/// column rank.
pub fn solve_rational(a: &IntMatrix, b: &[Rat]) -> Option<RatVec> {
    assert_eq!(a.rows(), b.len(), "right-hand side of wrong height");
    let mut aug = RatMatrix::zero(a.rows(), a.cols() + 1);
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            aug.set(i, j, Rat::from_integer(a.get(i, j).clone()));
        }
        aug.set(i, a.cols(), b[i].clone());
    }
    let pivots = aug.echelonize();
    if pivots.contains(&a.cols()) {
        return None; // a pivot in the augmented column: inconsistent
    }
    let mut x = vec![Rat::zero(); a.cols()];
    for (r, &c) in pivots.iter().enumerate() {
        // After full reduction each pivot row reads x_c + (free terms) = rhs,
        // so with free coordinates at zero the pivot value is the rhs.
        x[c] = aug.get(r, a.cols()).clone();
    }
    Some(x)
}

/// Exact inverse of an integer matrix that happens to be invertible over the
/// integers; `None` when it is not unimodular.
pub fn int_inverse(m: &IntMatrix) -> Option<IntMatrix> {
    let inv = m.to_rat().inverse()?;
    let mut out = IntMatrix::zero(inv.rows(), inv.cols());
    for i in 0..inv.rows() {
        for j in 0..inv.cols() {
            let e = inv.get(i, j);
            if !e.is_integer() {
                return None;
            }
            out.set(i, j, e.to_integer());
        }
    }
    Some(out)
}

/// Smith normal form `u * m * v = d` with `u`, `v` unimodular and `d`
/// diagonal with a divisibility chain `d_1 | d_2 | ...`.
pub struct SmithNormalForm {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    pub rank: usize,
}

impl SmithNormalForm {
    /// The nonzero diagonal entries.
    pub fn invariant_factors(&self) -> IntVec {
        (0..self.rank).map(|i| self.d.get(i, i).clone()).collect()
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> SmithNormalForm {
    let rows = m.rows();
    let cols = m.cols();
    let mut a = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);
    let mut t = 0;

    while t < rows.min(cols) {
        // Pivot: a nonzero entry of minimal absolute value in a[t.., t..].
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !a.get(i, j).is_zero() {
                    let better = match pivot {
                        None => true,
                        Some((pi, pj)) => a.get(i, j).abs() < a.get(pi, pj).abs(),
                    };
                    if better {
                        pivot = Some((i, j));
                    }
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        a.swap_rows(t, pi);
        u.swap_rows(t, pi);
        a.swap_cols(t, pj);
        v.swap_cols(t, pj);

        loop {
            // Clear below and to the right of the pivot; truncating division
            // leaves remainders strictly smaller in absolute value.
            let mut dirty = false;
            for i in t + 1..rows {
                if !a.get(i, t).is_zero() {
                    let q = -(a.get(i, t) / a.get(t, t));
                    a.row_axpy(i, t, &q);
                    u.row_axpy(i, t, &q);
                    if !a.get(i, t).is_zero() {
                        dirty = true;
                    }
                }
            }
            for j in t + 1..cols {
                if !a.get(t, j).is_zero() {
                    let q = -(a.get(t, j) / a.get(t, t));
                    a.col_axpy(j, t, &q);
                    v.col_axpy(j, t, &q);
                    if !a.get(t, j).is_zero() {
                        dirty = true;
                    }
                }
            }
            if dirty {
                // A remainder smaller than the pivot appeared; promote the
                // smallest nonzero entry of row/column t to the pivot slot.
                let mut best: Option<(usize, usize)> = None;
                for i in t..rows {
                    if !a.get(i, t).is_zero() {
                        let better = match best {
                            None => true,
                            Some((bi, bj)) => a.get(i, t).abs() < a.get(bi, bj).abs(),
                        };
                        if better {
                            best = Some((i, t));
                        }
                    }
                }
                for j in t..cols {
                    if !a.get(t, j).is_zero() {
                        let better = match best {
                            None => true,
                            Some((bi, bj)) => a.get(t, j).abs() < a.get(bi, bj).abs(),
                        };
                        if better {
                            best = Some((t, j));
                        }
                    }
                }
                let (bi, bj) = best.expect("pivot vanished during reduction");
                a.swap_rows(t, bi);
                u.swap_rows(t, bi);
                a.swap_cols(t, bj);
                v.swap_cols(t, bj);
                continue;
            }
            // Pivot divides its row and column; enforce divisibility of the
            // remaining submatrix so the diagonal forms a chain.
            let mut fix: Option<usize> = None;
            'scan: for i in t + 1..rows {
                for j in t + 1..cols {
                    if !(a.get(i, j) % a.get(t, t)).is_zero() {
                        fix = Some(i);
                        break 'scan;
                    }
                }
            }
            match fix {
                Some(i) => {
                    let one = Int::one();
                    a.row_axpy(t, i, &one);
                    u.row_axpy(t, i, &one);
                }
                None => break,
            }
        }
        if a.get(t, t).is_negative() {
            a.negate_row(t);
            u.negate_row(t);
        }
        t += 1;
    }

    SmithNormalForm { u, d: a, v, rank: t }
}

/// Basis of the integer kernel `{x : m x = 0}`, as columns.
pub fn int_kernel_basis(m: &IntMatrix) -> Vec<IntVec> {
    let snf = smith_normal_form(m);
    (snf.rank..m.cols()).map(|j| snf.v.col(j)).collect()
}

/// Column echelon basis of the lattice spanned by the columns of a matrix.
///
/// The retained columns have strictly increasing pivot rows, positive
/// pivots, and each pivot is the only nonzero entry of its row among the
/// basis columns.  That triangular shape makes coset representatives unique.
pub struct ColumnEchelon {
    /// Ambient dimension.
    pub ambient: usize,
    /// Basis columns of the lattice.
    pub basis: Vec<IntVec>,
    /// `pivot_rows[k]` is the topmost nonzero row of `basis[k]`.
    pub pivot_rows: Vec<usize>,
}

pub fn column_echelon(m: &IntMatrix) -> ColumnEchelon {
    let rows = m.rows();
    let cols = m.cols();
    let mut a = m.clone();
    let mut c = 0; // next column slot to fill with a pivot
    let mut pivot_rows = Vec::new();

    for r in 0..rows {
        if c == cols {
            break;
        }
        loop {
            let mut best: Option<usize> = None;
            for j in c..cols {
                if !a.get(r, j).is_zero() {
                    let better = match best {
                        None => true,
                        Some(bj) => a.get(r, j).abs() < a.get(r, bj).abs(),
                    };
                    if better {
                        best = Some(j);
                    }
                }
            }
            let Some(bj) = best else { break };
            a.swap_cols(c, bj);
            let mut clean = true;
            for j in c + 1..cols {
                if !a.get(r, j).is_zero() {
                    let q = -(a.get(r, j) / a.get(r, c));
                    a.col_axpy(j, c, &q);
                    if !a.get(r, j).is_zero() {
                        clean = false;
                    }
                }
            }
            if clean {
                if a.get(r, c).is_negative() {
                    for i in 0..rows {
                        let v = -a.get(i, c).clone();
                        a.set(i, c, v);
                    }
                }
                // Reduce the columns left of the pivot at this row so the
                // full form (hence the canonical representative) is unique.
                for j in 0..c {
                    let q = -a.get(r, j).div_floor(a.get(r, c));
                    a.col_axpy(j, c, &q);
                }
                pivot_rows.push(r);
                c += 1;
                break;
            }
        }
    }

    let basis = (0..c).map(|j| a.col(j)).collect();
    ColumnEchelon { ambient: rows, basis, pivot_rows }
}

/// A finite-rank quotient `Z^n / (column lattice of `relations`)`.
///
/// Supports canonical coset representatives, class equality, invariant
/// factors of the torsion subgroup, and canonical lifts of torsion
/// generators.
pub struct QuotientLattice {
    ambient: usize,
    echelon: ColumnEchelon,
    /// Smith form of the relation matrix (`u * relations * v = d`).
    snf: SmithNormalForm,
    /// Inverse of the row transform, for generator lifts.
    u_inv: IntMatrix,
    torsion: IntVec,
    free_rank: usize,
}

impl QuotientLattice {
    /// Quotient of `Z^ambient` by the columns of `relations`.
    pub fn new(ambient: usize, relations: &IntMatrix) -> Self {
        assert_eq!(relations.rows(), ambient, "relations live in the ambient lattice");
        let echelon = column_echelon(relations);
        let snf = smith_normal_form(relations);
        let u_inv = int_inverse(&snf.u).expect("row transform of a Smith form is unimodular");
        let torsion: IntVec = snf
            .invariant_factors()
            .into_iter()
            .filter(|d| !d.is_one())
            .collect();
        let free_rank = ambient - snf.rank;
        QuotientLattice { ambient, echelon, snf, u_inv, torsion, free_rank }
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient
    }

    /// Invariant factors `> 1` of the torsion subgroup, in a divisibility
    /// chain `d_1 | d_2 | ...`.
    pub fn torsion_invariants(&self) -> &[Int] {
        &self.torsion
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    /// The quotient is finite exactly when nothing survives rationally.
    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    /// Group order for finite quotients.
    pub fn order(&self) -> Option<Int> {
        if self.is_finite() {
            Some(self.torsion.iter().product())
        } else {
            None
        }
    }

    /// Canonical representative of the coset of `v`.
    ///
    /// Two vectors get the same representative exactly when they differ by
    /// an element of the relation lattice.
    pub fn canonical(&self, v: &[Int]) -> IntVec {
        assert_eq!(v.len(), self.ambient, "vector of wrong dimension");
        let mut w = v.to_vec();
        for (k, &p) in self.echelon.pivot_rows.iter().enumerate() {
            let h = &self.echelon.basis[k][p];
            let q = w[p].div_floor(h);
            if !q.is_zero() {
                for i in 0..self.ambient {
                    let sub = &q * &self.echelon.basis[k][i];
                    w[i] -= sub;
                }
            }
        }
        w
    }

    pub fn same_class(&self, a: &[Int], b: &[Int]) -> bool {
        self.canonical(a) == self.canonical(b)
    }

    pub fn is_zero_class(&self, v: &[Int]) -> bool {
        self.canonical(v).iter().all(|e| e.is_zero())
    }

    /// Coordinates of the class of `v`: one residue per torsion factor
    /// (reduced into `[0, d_i)`) followed by the free coordinates.
    pub fn class_coordinates(&self, v: &[Int]) -> (IntVec, IntVec) {
        assert_eq!(v.len(), self.ambient, "vector of wrong dimension");
        let y = self.snf.u.mul_vec(v);
        let mut torsion_coords = Vec::new();
        for i in 0..self.snf.rank {
            let d = self.snf.d.get(i, i);
            if !d.is_one() {
                torsion_coords.push(y[i].mod_floor(d));
            }
        }
        let free_coords = y[self.snf.rank..].to_vec();
        (torsion_coords, free_coords)
    }

    /// A lift of the canonical generator of the `k`-th torsion factor
    /// (indexed as in [`Self::torsion_invariants`]).
    pub fn torsion_generator_lift(&self, k: usize) -> IntVec {
        let mut seen = 0;
        for i in 0..self.snf.rank {
            if !self.snf.d.get(i, i).is_one() {
                if seen == k {
                    return self.u_inv.col(i);
                }
                seen += 1;
            }
        }
        panic!("torsion factor index {k} out of range");
    }

    /// Lifts of the canonical free generators (empty for finite quotients).
    pub fn free_generator_lifts(&self) -> Vec<IntVec> {
        (self.snf.rank..self.ambient).map(|i| self.u_inv.col(i)).collect()
    }
}
