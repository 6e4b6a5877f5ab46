//! Test-side oracles that share no code with the library's elimination.

#![allow(dead_code)]

use gequiv::{Field, Matrix, SampleKey, SampleMap};

/// Determinant by the permutation expansion.
pub fn leibniz_det<F: Field>(m: &Matrix<F>) -> F::Elem {
    let f = m.field();
    let n = m.rows();
    let mut total = f.zero();
    let mut perm: Vec<usize> = (0..n).collect();
    permute(&mut perm, 0, true, &mut |p, even| {
        let mut term = f.one();
        for (i, &j) in p.iter().enumerate() {
            term = f.mul(&term, &m[(i, j)]);
        }
        total = if even { f.add(&total, &term) } else { f.sub(&total, &term) };
    });
    total
}

fn permute(p: &mut Vec<usize>, start: usize, even: bool, visit: &mut impl FnMut(&[usize], bool)) {
    if start == p.len() {
        visit(p, even);
        return;
    }
    for i in start..p.len() {
        p.swap(start, i);
        permute(p, start + 1, if i == start { even } else { !even }, visit);
        p.swap(start, i);
    }
}

/// Cramer's rule; `None` when `a` is singular.
pub fn cramer<F: Field>(a: &Matrix<F>, b: &[F::Elem]) -> Option<Vec<F::Elem>> {
    let f = a.field();
    let d = leibniz_det(a);
    if f.is_zero(&d) {
        return None;
    }
    let n = a.rows();
    Some(
        (0..n)
            .map(|j| {
                let mut replaced = a.clone();
                for (i, bi) in b.iter().enumerate() {
                    replaced[(i, j)] = bi.clone();
                }
                f.div(&leibniz_det(&replaced), &d).unwrap()
            })
            .collect(),
    )
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// `g x + b` written out entrywise.
pub fn affine_apply<F: Field>(g: &Matrix<F>, b: Option<&[F::Elem]>, x: &[F::Elem]) -> Vec<F::Elem> {
    let f = g.field();
    (0..g.rows())
        .map(|i| {
            let mut acc = b.map_or(f.zero(), |b| b[i].clone());
            for (j, xj) in x.iter().enumerate() {
                acc = f.add(&acc, &f.mul(&g[(i, j)], xj));
            }
            acc
        })
        .collect()
}

/// Whether `x -> g x + b` sends every sample of `u` to the matching sample of `v`.
pub fn maps_onto<F: Field>(u: &SampleMap<F>, v: &SampleMap<F>, g: &Matrix<F>, b: Option<&[F::Elem]>) -> bool {
    let f = u.field();
    u.keys().all(|k| {
        let lhs = affine_apply(g, b, u.get(k).unwrap());
        let rhs = v.get(k).unwrap();
        lhs.iter().zip(rhs).all(|(a, c)| f.equal(a, c))
    })
}

pub fn keys_of<F: Field>(map: &SampleMap<F>) -> Vec<SampleKey> {
    map.keys().cloned().collect()
}
