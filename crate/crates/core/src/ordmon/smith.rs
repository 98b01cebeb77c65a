//! Smith normal form by plain integer elimination.
//!
//! Only column operations are recorded: the quotient `Z^m / rowspace(A)` and
//! integer kernels are both read off from the column transform `V` with
//! `U A V = D`.

use crate::linalg::Matrix;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    /// Positive diagonal entries `d_1 | d_2 | ... | d_rank`.
    pub diagonal: Vec<i64>,
    /// Unimodular `m x m` column transform.
    pub column_transform: Matrix<i64>,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.diagonal.len()
    }

    /// Columns of `V` past the rank: a basis of the integer kernel of `A`.
    pub fn kernel_basis(&self) -> Vec<Vec<i64>> {
        let m = self.column_transform.ncols();
        (self.rank()..m)
            .map(|j| self.column_transform.column(j))
            .collect()
    }
}

/// Smith normal form of an `r x m` integer matrix given by rows.
pub fn smith_form(rows: &[Vec<i64>], m: usize) -> SmithForm {
    let r = rows.len();
    let mut a: Vec<Vec<i64>> = rows.to_vec();
    let mut v: Vec<Vec<i64>> = (0..m)
        .map(|i| (0..m).map(|j| i64::from(i == j)).collect())
        .collect();

    let swap_cols = |a: &mut Vec<Vec<i64>>, v: &mut Vec<Vec<i64>>, c1: usize, c2: usize| {
        if c1 == c2 {
            return;
        }
        for row in a.iter_mut() {
            row.swap(c1, c2);
        }
        for row in v.iter_mut() {
            row.swap(c1, c2);
        }
    };
    // col_dst -= q * col_src
    let col_axpy =
        |a: &mut Vec<Vec<i64>>, v: &mut Vec<Vec<i64>>, dst: usize, src: usize, q: i64| {
            for row in a.iter_mut() {
                row[dst] -= q * row[src];
            }
            for row in v.iter_mut() {
                row[dst] -= q * row[src];
            }
        };

    let mut diagonal = Vec::new();
    let mut t = 0;
    while t < r.min(m) {
        // smallest nonzero entry of the trailing block
        let mut best: Option<(usize, usize)> = None;
        for (i, row) in a.iter().enumerate().skip(t) {
            for (j, &x) in row.iter().enumerate().skip(t) {
                if x != 0 && best.is_none_or(|(bi, bj)| x.abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        swap_cols(&mut a, &mut v, t, pj);

        loop {
            // re-pivot on the smallest nonzero entry of row t / column t
            let mut best = (t, t);
            for i in t..r {
                if a[i][t] != 0 && a[i][t].abs() < a[best.0][best.1].abs() {
                    best = (i, t);
                }
            }
            for j in t..m {
                if a[t][j] != 0 && a[t][j].abs() < a[best.0][best.1].abs() {
                    best = (t, j);
                }
            }
            if best.0 != t {
                a.swap(t, best.0);
            }
            if best.1 != t {
                swap_cols(&mut a, &mut v, t, best.1);
            }

            let p = a[t][t];
            let mut clean = true;
            for i in t + 1..r {
                if a[i][t] != 0 {
                    let q = a[i][t].div_euclid(p);
                    let pivot_row = a[t].clone();
                    for (x, y) in a[i].iter_mut().zip(&pivot_row) {
                        *x -= q * y;
                    }
                    clean &= a[i][t] == 0;
                }
            }
            for j in t + 1..m {
                if a[t][j] != 0 {
                    let q = a[t][j].div_euclid(p);
                    col_axpy(&mut a, &mut v, j, t, q);
                    clean &= a[t][j] == 0;
                }
            }
            if !clean {
                continue;
            }
            // divisibility of the trailing block by the pivot
            let offender = (t + 1..r).find(|&i| a[i].iter().skip(t + 1).any(|&x| x % p != 0));
            match offender {
                Some(i) => {
                    let row_i = a[i].clone();
                    for (x, y) in a[t].iter_mut().zip(&row_i) {
                        *x += y;
                    }
                }
                None => break,
            }
        }
        if a[t][t] < 0 {
            for x in a[t].iter_mut() {
                *x = -*x;
            }
        }
        diagonal.push(a[t][t]);
        t += 1;
    }

    SmithForm {
        diagonal,
        column_transform: Matrix::from_rows(v).expect("square transform"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Integer kernel membership by direct evaluation.
    fn in_kernel(rows: &[Vec<i64>], x: &[i64]) -> bool {
        rows.iter()
            .all(|r| r.iter().zip(x).map(|(a, b)| a * b).sum::<i64>() == 0)
    }

    #[test]
    fn single_entry() {
        let s = smith_form(&[vec![1]], 1);
        assert_eq!(s.diagonal, vec![1]);
        assert!(s.kernel_basis().is_empty());
    }

    #[test]
    fn divisibility_chain_is_restored() {
        // diag(2, 3) has Smith form diag(1, 6)
        let s = smith_form(&[vec![2, 0], vec![0, 3]], 2);
        assert_eq!(s.diagonal, vec![1, 6]);
    }

    #[test]
    fn known_example() {
        // classic: [[2,4,4],[-6,6,12],[10,-4,-16]] ~ diag(2,6,12)
        let rows = vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]];
        let s = smith_form(&rows, 3);
        assert_eq!(s.diagonal, vec![2, 6, 12]);
    }

    #[test]
    fn kernel_of_rank_deficient_matrix() {
        let rows = vec![vec![1, 1, 0], vec![2, 2, 0]];
        let s = smith_form(&rows, 3);
        assert_eq!(s.rank(), 1);
        let k = s.kernel_basis();
        assert_eq!(k.len(), 2);
        for x in &k {
            assert!(in_kernel(&rows, x));
        }
    }

    #[test]
    fn zero_matrix() {
        let s = smith_form(&[vec![0, 0]], 2);
        assert_eq!(s.rank(), 0);
        assert_eq!(s.kernel_basis().len(), 2);
    }
}
