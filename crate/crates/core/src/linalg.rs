//! Row reduction and subspace enumeration over `F_q`.

use crate::field::Field;

/// Reduces `rows` in place to reduced row echelon form, dropping zero rows.
/// Returns the pivot columns.
pub fn rref(field: &Field, rows: &mut Vec<Vec<u32>>) -> Vec<usize> {
    let n = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(found) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, found);
        let inv = field.inv(rows[r][c]).expect("nonzero pivot");
        for x in rows[r].iter_mut() {
            *x = field.mul(inv, *x);
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && row[c] != 0 {
                let f = row[c];
                for (x, &p) in row.iter_mut().zip(&pivot_row) {
                    *x = field.sub(*x, field.mul(f, p));
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

pub fn rank(field: &Field, rows: &[Vec<u32>]) -> usize {
    let mut rows = rows.to_vec();
    rref(field, &mut rows).len()
}

/// All `k`-dimensional subspaces of `F_q^n` as RREF bases, ordered by pivot
/// set (lexicographic) and then by free entries.
pub fn subspaces(field: &Field, n: usize, k: usize) -> Vec<Vec<Vec<u32>>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let q = field.order();
    for pivots in combinations(n, k) {
        // free slots: row i, column c > pivots[i], c not a pivot
        let slots: Vec<(usize, usize)> = (0..k)
            .flat_map(|i| {
                let pivots = &pivots;
                ((pivots[i] + 1)..n).filter(move |c| !pivots.contains(c)).map(move |c| (i, c))
            })
            .collect();
        let mut digits = vec![0u32; slots.len()];
        loop {
            let mut basis = vec![vec![0u32; n]; k];
            for (i, &p) in pivots.iter().enumerate() {
                basis[i][p] = 1;
            }
            for (&(i, c), &d) in slots.iter().zip(&digits) {
                basis[i][c] = d;
            }
            out.push(basis);
            if !odometer(&mut digits, q) {
                break;
            }
        }
    }
    out
}

/// Advances a base-`q` counter (last digit fastest); false on wraparound.
pub fn odometer(digits: &mut [u32], q: u32) -> bool {
    for d in digits.iter_mut().rev() {
        *d += 1;
        if *d < q {
            return true;
        }
        *d = 0;
    }
    false
}

/// `k`-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut c: Vec<usize> = (0..k).collect();
    loop {
        out.push(c.clone());
        let Some(i) = (0..k).rev().find(|&i| c[i] < n - k + i) else {
            break;
        };
        c[i] += 1;
        for j in i + 1..k {
            c[j] = c[j - 1] + 1;
        }
    }
    out
}

/// Reduces `v` by an RREF basis with the given pivots.
pub fn reduce(field: &Field, basis: &[Vec<u32>], pivots: &[usize], v: &mut [u32]) {
    for (row, &p) in basis.iter().zip(pivots) {
        let f = v[p];
        if f != 0 {
            for (x, &b) in v.iter_mut().zip(row) {
                *x = field.sub(*x, field.mul(f, b));
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subspace_counts_match_gaussian() {
        for (p, r) in [(2, 1), (3, 1), (2, 2)] {
            let f = Field::new(p, r).unwrap();
            for n in 0..=4usize {
                for k in 0..=n {
                    let got = subspaces(&f, n, k).len();
                    let want = crate::counting::gaussian(n as i64, k as i64, f.order() as u64);
                    assert_eq!(num_bigint::BigUint::from(got), want, "q={} n={n} k={k}", f.order());
                }
            }
        }
    }

    #[test]
    fn rref_is_idempotent_and_rank_is_right() {
        let f = Field::new(3, 1).unwrap();
        let mut rows = vec![vec![1, 2, 0], vec![2, 1, 0], vec![0, 1, 1]];
        let pivots = rref(&f, &mut rows);
        assert_eq!(pivots, vec![0, 1]);
        let again = rows.clone();
        let mut rows2 = rows.clone();
        rref(&f, &mut rows2);
        assert_eq!(rows2, again);
        assert_eq!(rank(&f, &[vec![1, 1], vec![2, 2]]), 1);
        assert_eq!(combinations(4, 2).len(), 6);
        assert_eq!(combinations(3, 0), vec![Vec::<usize>::new()]);
    }
}
