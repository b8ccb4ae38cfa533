//! Dense exact linear algebra over a [`Field`].
//!
//! Matrices are row vectors (`Vec<Vec<Elem>>`). Everything is exact, so the
//! rank of a matrix does not depend on pivot choice or evaluation order.

use crate::field::Field;

pub type Row<F> = Vec<<F as Field>::Elem>;

/// Brings `rows` to reduced row echelon form in place and drops zero rows.
///
/// Returns the pivot column of every remaining row; each pivot entry is 1 and
/// the pivot columns are zero in all other rows.
pub fn rref<F: Field>(field: &F, rows: &mut Vec<Row<F>>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut next = 0;
    for col in 0..ncols {
        if next == rows.len() {
            break;
        }
        let Some(found) = (next..rows.len()).find(|&i| !field.is_zero(&rows[i][col])) else {
            continue;
        };
        rows.swap(next, found);
        let inv = field.inv(&rows[next][col]).expect("pivot is nonzero");
        for x in rows[next].iter_mut() {
            *x = field.mul(x, &inv);
        }
        let pivot_row = rows[next].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == next || field.is_zero(&row[col]) {
                continue;
            }
            let factor = row[col].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row).skip(col) {
                if !field.is_zero(p) {
                    *x = field.sub(x, &field.mul(&factor, p));
                }
            }
        }
        pivots.push(col);
        next += 1;
    }
    rows.truncate(next);
    pivots
}

/// Rank by forward elimination; `rows` is left untouched.
pub fn rank<F: Field>(field: &F, rows: &[Row<F>]) -> usize {
    let mut basis = EchelonBasis::new(field.clone(), rows.first().map_or(0, Vec::len));
    for row in rows {
        basis.insert(row.clone());
    }
    basis.rank()
}

/// Basis of the right kernel `{x : A x = 0}` of a matrix with `ncols` columns.
///
/// One vector per free column, with a 1 in that column and 0 in the other
/// free columns.
pub fn kernel<F: Field>(field: &F, rows: &[Row<F>], ncols: usize) -> Vec<Row<F>> {
    let mut reduced = rows.to_vec();
    let pivots = rref(field, &mut reduced);
    let mut is_pivot = vec![false; ncols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    (0..ncols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![field.zero(); ncols];
            v[free] = field.one();
            for (row, &p) in reduced.iter().zip(&pivots) {
                v[p] = field.neg(&row[free]);
            }
            v
        })
        .collect()
}

/// Basis of the left kernel `{y : y^T A = 0}`, i.e. the linear dependencies among the rows.
pub fn left_kernel<F: Field>(field: &F, rows: &[Row<F>]) -> Vec<Row<F>> {
    let ncols = rows.first().map_or(0, Vec::len);
    let transposed: Vec<Row<F>> = (0..ncols)
        .map(|c| rows.iter().map(|r| r[c].clone()).collect())
        .collect();
    kernel(field, &transposed, rows.len())
}

pub fn transpose<F: Field>(rows: &[Row<F>], ncols: usize) -> Vec<Row<F>> {
    (0..ncols)
        .map(|c| rows.iter().map(|r| r[c].clone()).collect())
        .collect()
}

/// Determinant of a square matrix.
pub fn determinant<F: Field>(field: &F, square: &[Row<F>]) -> F::Elem {
    let n = square.len();
    let mut m = square.to_vec();
    let mut det = field.one();
    for col in 0..n {
        let Some(found) = (col..n).find(|&i| !field.is_zero(&m[i][col])) else {
            return field.zero();
        };
        if found != col {
            m.swap(found, col);
            det = field.neg(&det);
        }
        det = field.mul(&det, &m[col][col]);
        let inv = field.inv(&m[col][col]).expect("pivot is nonzero");
        for i in col + 1..n {
            if field.is_zero(&m[i][col]) {
                continue;
            }
            let factor = field.mul(&m[i][col], &inv);
            for j in col..n {
                let t = field.mul(&factor, &m[col][j]);
                m[i][j] = field.sub(&m[i][j], &t);
            }
        }
    }
    det
}

/// Incrementally maintained, fully reduced row echelon basis.
///
/// Rows are reduced only at the pivot columns where they are nonzero, which
/// keeps insertion cheap for the sparse rows of Jacobian matrices.
#[derive(Clone, Debug)]
pub struct EchelonBasis<F: Field> {
    field: F,
    ncols: usize,
    rows: Vec<(usize, Row<F>)>,
}

impl<F: Field> EchelonBasis<F> {
    pub fn new(field: F, ncols: usize) -> Self {
        EchelonBasis {
            field,
            ncols,
            rows: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the basis.
    pub fn reduce(&self, v: &mut Row<F>) {
        let f = &self.field;
        for (pivot, row) in &self.rows {
            if f.is_zero(&v[*pivot]) {
                continue;
            }
            let factor = v[*pivot].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !f.is_zero(r) {
                    *x = f.sub(x, &f.mul(&factor, r));
                }
            }
        }
    }

    pub fn contains(&self, v: &Row<F>) -> bool {
        let mut v = v.clone();
        self.reduce(&mut v);
        v.iter().all(|x| self.field.is_zero(x))
    }

    /// Adds `v` to the span; returns whether the rank grew.
    pub fn insert(&mut self, mut v: Row<F>) -> bool {
        assert_eq!(v.len(), self.ncols, "row length mismatch");
        if v.iter().all(|x| self.field.is_zero(x)) {
            return false;
        }
        self.reduce(&mut v);
        let f = self.field.clone();
        let Some(pivot) = v.iter().position(|x| !f.is_zero(x)) else {
            return false;
        };
        let inv = f.inv(&v[pivot]).expect("pivot is nonzero");
        for x in v.iter_mut() {
            *x = f.mul(x, &inv);
        }
        for (_, row) in self.rows.iter_mut() {
            if f.is_zero(&row[pivot]) {
                continue;
            }
            let factor = row[pivot].clone();
            for (x, p) in row.iter_mut().zip(&v) {
                if !f.is_zero(p) {
                    *x = f.sub(x, &f.mul(&factor, p));
                }
            }
        }
        self.rows.push((pivot, v));
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    fn q(rows: &[&[i64]]) -> Vec<Row<Rationals>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| Rationals.from_i64(x)).collect())
            .collect()
    }

    #[test]
    fn rank_and_kernel_of_small_matrix() {
        let m = q(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(rank(&Rationals, &m), 2);
        let k = kernel(&Rationals, &m, 3);
        assert_eq!(k.len(), 1);
        for row in &m {
            let dot = row
                .iter()
                .zip(&k[0])
                .fold(Rationals.zero(), |acc, (a, b)| acc + a * b);
            assert_eq!(dot, Rationals.zero());
        }
    }

    #[test]
    fn left_kernel_finds_row_dependencies() {
        let m = q(&[&[1, 0], &[0, 1], &[1, 1]]);
        let k = left_kernel(&Rationals, &m);
        assert_eq!(k.len(), 1);
        assert_eq!(k[0], q(&[&[-1, -1, 1]])[0]);
    }

    #[test]
    fn determinant_matches_cofactor_expansion() {
        let m = q(&[&[2, -1, 0], &[1, 3, 4], &[0, 5, -2]]);
        // 2(3*-2 - 4*5) + 1(1*-2 - 0) = -52 - 2
        assert_eq!(determinant(&Rationals, &m), Rationals.from_i64(-54));
    }

    #[test]
    fn echelon_basis_over_prime_field() {
        let f = PrimeField::new(7).unwrap();
        let mut b = EchelonBasis::new(f, 3);
        assert!(b.insert(vec![1, 2, 3]));
        assert!(!b.insert(vec![2, 4, 6]));
        assert!(b.insert(vec![0, 1, 1]));
        assert!(!b.insert(vec![1, 3, 4]));
        assert_eq!(b.rank(), 2);
        assert!(b.contains(&vec![1, 3, 4]));
        assert!(!b.contains(&vec![0, 0, 1]));
    }

    #[test]
    fn rref_is_reduced() {
        let mut m = q(&[&[0, 2, 4], &[1, 1, 1], &[1, 3, 5]]);
        let piv = rref(&Rationals, &mut m);
        assert_eq!(piv, vec![0, 1]);
        assert_eq!(m, q(&[&[1, 0, -1], &[0, 1, 2]]));
    }
}
