//! Exact rank of small integer matrices.

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Rank over the rationals via fraction-free (Bareiss) elimination.
pub fn rank(rows: &[Vec<i64>]) -> usize {
    let nr = rows.len();
    if nr == 0 {
        return 0;
    }
    let nc = rows[0].len();
    let mut m: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..nc {
        let Some(p) = (r..nr).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for i in r + 1..nr {
            for j in c + 1..nc {
                let v = (&m[r][c] * &m[i][j] - &m[i][c] * &m[r][j]) / &prev;
                m[i][j] = v;
            }
            m[i][c] = BigInt::zero();
        }
        prev = m[r][c].clone();
        r += 1;
        if r == nr {
            break;
        }
    }
    r
}

/// Column indices kept after dropping zero columns and every column that is
/// a rational multiple of an earlier kept one.
pub fn independent_representatives(rows: &[Vec<i64>]) -> Vec<usize> {
    let nc = rows.first().map_or(0, Vec::len);
    let col = |j: usize| -> Vec<i64> { rows.iter().map(|r| r[j]).collect() };
    let collinear = |u: &[i64], v: &[i64]| {
        (0..u.len()).all(|i| (i..u.len()).all(|k| u[i] as i128 * v[k] as i128 == u[k] as i128 * v[i] as i128))
    };
    let mut kept: Vec<usize> = Vec::new();
    for j in 0..nc {
        let cj = col(j);
        if cj.iter().all(|&x| x == 0) {
            continue;
        }
        if kept.iter().any(|&k| collinear(&col(k), &cj)) {
            continue;
        }
        kept.push(j);
    }
    kept
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranks() {
        assert_eq!(rank(&[]), 0);
        assert_eq!(rank(&[vec![0, 0], vec![0, 0]]), 0);
        assert_eq!(rank(&[vec![1, 2], vec![2, 4]]), 1);
        assert_eq!(rank(&[vec![1, 1, 0], vec![0, 1, 1], vec![1, 0, -1]]), 2);
        assert_eq!(rank(&[vec![2, 0, 0], vec![0, 3, 0], vec![0, 0, 5]]), 3);
        assert_eq!(rank(&[vec![0, 1], vec![1, 0], vec![1, 1]]), 2);
    }

    #[test]
    fn representatives_skip_zero_and_collinear() {
        let m = vec![vec![1, 0, 2, 0], vec![1, 0, 2, 1]];
        assert_eq!(independent_representatives(&m), vec![0, 3]);
    }
}
