//! Independent oracles shared by the integration tests.

#![allow(dead_code)]

use orbitforge::algebra::Poly;

/// All permutations of `0..k` with their parity (`true` = even).
pub fn permutations(k: usize) -> Vec<(Vec<usize>, bool)> {
    fn go(rest: Vec<usize>) -> Vec<(Vec<usize>, bool)> {
        if rest.len() <= 1 {
            return vec![(rest, true)];
        }
        let mut out = Vec::new();
        for idx in 0..rest.len() {
            let mut tail = rest.clone();
            let head = tail.remove(idx);
            for (mut perm, even) in go(tail) {
                perm.insert(0, head);
                out.push((perm, even == (idx % 2 == 0)));
            }
        }
        out
    }
    go((0..k).collect())
}

/// Leibniz determinant of an integer matrix.
pub fn leibniz_i128(m: &[Vec<i128>]) -> i128 {
    permutations(m.len())
        .into_iter()
        .map(|(p, even)| {
            let prod: i128 = p.iter().enumerate().map(|(r, &c)| m[r][c]).product();
            if even { prod } else { -prod }
        })
        .sum()
}

/// Leibniz expansion of the minor of the strictly lower-triangular matrix
/// of variables `y_{ij}` on 1-based rows and columns.
pub fn phi_minor_oracle(rows: &[usize], cols: &[usize]) -> Poly {
    assert_eq!(rows.len(), cols.len());
    permutations(rows.len())
        .into_iter()
        .map(|(p, even)| {
            let mut term = Poly::int(1);
            for (r, &c) in p.iter().enumerate() {
                let (i, j) = (rows[r], cols[c]);
                if i <= j {
                    return Poly::int(0);
                }
                term = term * Poly::y(i, j);
            }
            if even { term } else { -term }
        })
        .fold(Poly::int(0), |a, b| a + b)
}

/// Same polynomial up to an overall sign.
pub fn same_up_to_sign(a: &Poly, b: &Poly) -> bool {
    a.sign_normalized() == b.sign_normalized()
}

/// Inversion count computed from the definition.
pub fn inversions(images: &[usize]) -> usize {
    let n = images.len();
    (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).filter(|&(a, b)| images[a] > images[b]).count()
}
