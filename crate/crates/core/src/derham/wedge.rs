//! Exterior powers in lexicographically ordered bases.

use num_traits::Zero;

use crate::linalg::{IntMatrix, Int, Rat};

/// All `p`-subsets of `0..n`, in lexicographic order.
pub fn subsets(n: usize, p: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, p: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == p {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < p - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if p <= n {
        go(0, n, p, &mut Vec::new(), &mut out);
    }
    out
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// Matrix of `v ∧ −` from `∧^p` to `∧^{p+1}` of a space of dimension `v.len()`.
pub fn wedge_matrix(v: &[Int], p: usize) -> IntMatrix {
    let n = v.len();
    let src = subsets(n, p);
    let dst = subsets(n, p + 1);
    let mut m = IntMatrix::zeros(dst.len(), src.len());
    for (c, set) in src.iter().enumerate() {
        for (j, vj) in v.iter().enumerate() {
            if vj.is_zero() || set.contains(&j) {
                continue;
            }
            // e_j ∧ e_I: move e_j past the smaller indices of I
            let before = set.iter().filter(|&&i| i < j).count();
            let mut target = set.clone();
            target.insert(before, j);
            let r = dst.binary_search(&target).expect("subset of size p + 1");
            let val = if before % 2 == 0 { vj.clone() } else { -vj };
            m.set(r, c, val);
        }
    }
    m
}

/// `∧^p a` for an integer matrix `a` (entries are `p × p` minors).
pub fn exterior_power(a: &IntMatrix, p: usize) -> IntMatrix {
    let rows = subsets(a.rows(), p);
    let cols = subsets(a.cols(), p);
    let mut m = IntMatrix::zeros(rows.len(), cols.len());
    for (i, r) in rows.iter().enumerate() {
        for (j, c) in cols.iter().enumerate() {
            let minor = a.select_rows(r).select_cols(c);
            m.set(i, j, if p == 0 { Int::from(1) } else { minor.determinant() });
        }
    }
    m
}

/// `a · x` for an integer matrix and a rational vector.
pub fn apply(a: &IntMatrix, x: &[Rat]) -> Vec<Rat> {
    (0..a.rows())
        .map(|i| {
            (0..a.cols())
                .filter(|&j| !a.get(i, j).is_zero() && !x[j].is_zero())
                .map(|j| Rat::from_integer(a.get(i, j).clone()) * &x[j])
                .sum()
        })
        .collect()
}
