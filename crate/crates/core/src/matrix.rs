//! Dense integer matrices and Smith normal form, generic over the integer
//! type. The decision pipeline instantiates them at [`num_bigint::BigInt`]
//! (see [`crate::IntMatrix`]); fixed-width instantiations exist for tests and
//! for callers that can bound their entries.

use std::fmt::{self, Debug, Display};

use num_integer::Integer;
use num_traits::Signed;

/// Integer scalar usable in [`IntegerMatrix`].
pub trait IntegerScalar: Integer + Signed + Clone + Debug + Display + From<i32> + Send + Sync {}

impl<T> IntegerScalar for T where T: Integer + Signed + Clone + Debug + Display + From<i32> + Send + Sync {}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntegerMatrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: IntegerScalar> IntegerMatrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntegerMatrix { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = T::one();
        }
        m
    }

    /// Builds a matrix from row vectors. All rows must have length `cols`.
    pub fn from_rows(cols: usize, rows: Vec<Vec<T>>) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix row");
            data.extend(r);
        }
        IntegerMatrix { rows: n, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch in matrix product");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j).clone() + a.clone() * other.get(k, j).clone();
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    /// Row vector times matrix.
    pub fn left_apply(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.rows);
        (0..self.cols)
            .map(|j| {
                v.iter()
                    .enumerate()
                    .fold(T::zero(), |acc, (i, x)| acc + x.clone() * self.get(i, j).clone())
            })
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[target] += c * row[source]
    fn row_axpy(&mut self, target: usize, source: usize, c: &T) {
        for j in 0..self.cols {
            let v = self.get(target, j).clone() + c.clone() * self.get(source, j).clone();
            self.set(target, j, v);
        }
    }

    /// col[target] += c * col[source]
    fn col_axpy(&mut self, target: usize, source: usize, c: &T) {
        for i in 0..self.rows {
            let v = self.get(i, target).clone() + c.clone() * self.get(i, source).clone();
            self.set(i, target, v);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -self.get(i, j).clone();
            self.set(i, j, v);
        }
    }

    fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            let v = -self.get(i, j).clone();
            self.set(i, j, v);
        }
    }
}

impl<T: IntegerScalar> Debug for IntegerMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{:?}", self.row(i))?;
        }
        write!(f, "]")
    }
}

/// `U * A * V = D` with `U`, `V` unimodular. The inverses are tracked so that
/// unimodularity is checkable exactly by multiplication.
#[derive(Clone)]
pub struct SmithForm<T> {
    pub d: IntegerMatrix<T>,
    pub u: IntegerMatrix<T>,
    pub v: IntegerMatrix<T>,
    pub u_inv: IntegerMatrix<T>,
    pub v_inv: IntegerMatrix<T>,
}

impl<T: IntegerScalar> Debug for SmithForm<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SmithForm").field("d", &self.d).field("u", &self.u).field("v", &self.v).finish()
    }
}

impl<T: IntegerScalar> SmithForm<T> {
    /// The `min(rows, cols)` diagonal entries, nonnegative, each dividing the next.
    pub fn diagonal(&self) -> Vec<T> {
        (0..self.d.rows.min(self.d.cols)).map(|i| self.d.get(i, i).clone()).collect()
    }

    /// Number of nonzero diagonal entries.
    pub fn rank(&self) -> usize {
        self.diagonal().iter().take_while(|d| !d.is_zero()).count()
    }

    /// Exact re-check of every structural claim against the input matrix.
    pub fn verify(&self, a: &IntegerMatrix<T>) -> bool {
        let m = a.rows;
        let n = a.cols;
        if self.u.mul(a).mul(&self.v) != self.d {
            return false;
        }
        if self.u.mul(&self.u_inv) != IntegerMatrix::identity(m) || self.v.mul(&self.v_inv) != IntegerMatrix::identity(n) {
            return false;
        }
        for i in 0..m {
            for j in 0..n {
                if i != j && !self.d.get(i, j).is_zero() {
                    return false;
                }
            }
        }
        let diag = self.diagonal();
        if diag.iter().any(|x| x.is_negative()) {
            return false;
        }
        diag.windows(2).all(|p| {
            if p[0].is_zero() {
                p[1].is_zero()
            } else {
                p[1].is_multiple_of(&p[0])
            }
        })
    }
}

struct SnfState<T> {
    a: IntegerMatrix<T>,
    u: IntegerMatrix<T>,
    u_inv: IntegerMatrix<T>,
    v: IntegerMatrix<T>,
    v_inv: IntegerMatrix<T>,
}

impl<T: IntegerScalar> SnfState<T> {
    fn swap_rows(&mut self, a: usize, b: usize) {
        self.a.swap_rows(a, b);
        self.u.swap_rows(a, b);
        self.u_inv.swap_cols(a, b);
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        self.a.swap_cols(a, b);
        self.v.swap_cols(a, b);
        self.v_inv.swap_rows(a, b);
    }

    fn row_axpy(&mut self, target: usize, source: usize, c: &T) {
        self.a.row_axpy(target, source, c);
        self.u.row_axpy(target, source, c);
        self.u_inv.col_axpy(source, target, &-c.clone());
    }

    fn col_axpy(&mut self, target: usize, source: usize, c: &T) {
        self.a.col_axpy(target, source, c);
        self.v.col_axpy(target, source, c);
        self.v_inv.row_axpy(source, target, &-c.clone());
    }

    fn negate_row(&mut self, i: usize) {
        self.a.negate_row(i);
        self.u.negate_row(i);
        self.u_inv.negate_col(i);
    }

    /// Smallest nonzero |entry| in the trailing block, ties by row-major position.
    fn pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, T)> = None;
        for i in t..self.a.rows {
            for j in t..self.a.cols {
                let x = self.a.get(i, j);
                if x.is_zero() {
                    continue;
                }
                let ax = x.abs();
                if best.as_ref().is_none_or(|b| ax < b.2) {
                    best = Some((i, j, ax));
                }
            }
        }
        best.map(|(i, j, _)| (i, j))
    }
}

/// Smith normal form with deterministic pivoting: the pivot is the entry of
/// smallest nonzero absolute value in the active block, ties broken by
/// row-major position.
pub fn smith_normal_form<T: IntegerScalar>(a: &IntegerMatrix<T>) -> SmithForm<T> {
    let (m, n) = (a.rows, a.cols);
    let mut s = SnfState {
        a: a.clone(),
        u: IntegerMatrix::identity(m),
        u_inv: IntegerMatrix::identity(m),
        v: IntegerMatrix::identity(n),
        v_inv: IntegerMatrix::identity(n),
    };
    let mut t = 0;
    while t < m.min(n) {
        let Some((pi, pj)) = s.pivot(t) else { break };
        s.swap_rows(t, pi);
        s.swap_cols(t, pj);
        let p = s.a.get(t, t).clone();

        let mut leftover = false;
        for i in t + 1..m {
            let x = s.a.get(i, t).clone();
            if x.is_zero() {
                continue;
            }
            let q = x.div_floor(&p);
            s.row_axpy(i, t, &-q);
            leftover |= !s.a.get(i, t).is_zero();
        }
        for j in t + 1..n {
            let x = s.a.get(t, j).clone();
            if x.is_zero() {
                continue;
            }
            let q = x.div_floor(&p);
            s.col_axpy(j, t, &-q);
            leftover |= !s.a.get(t, j).is_zero();
        }
        if leftover {
            // A strictly smaller remainder now exists; re-pivot at the same step.
            continue;
        }

        let offender = (t + 1..m).find(|&i| (t + 1..n).any(|j| !s.a.get(i, j).is_multiple_of(&p)));
        if let Some(i) = offender {
            s.row_axpy(t, i, &T::one());
            continue;
        }

        if p.is_negative() {
            s.negate_row(t);
        }
        t += 1;
    }

    let form = SmithForm { d: s.a, u: s.u, v: s.v, u_inv: s.u_inv, v_inv: s.v_inv };
    debug_assert!(form.verify(a), "Smith normal form self-check failed");
    form
}
