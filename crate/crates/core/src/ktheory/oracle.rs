//! Independent routes to the same invariants, for cross-checking.
//!
//! None of these share code with the Smith normal form: minors are taken
//! by fraction-free elimination, and finite groups are enumerated outright
//! and classified by counting `p^k`-torsion.

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{AbGroupInvariants, FinCommMonoid, IntMatrix};

/// Determinant by Bareiss elimination.
pub fn determinant(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Invariant factors from determinantal divisors: `d₁⋯d_k` is the gcd of
/// the `k×k` minors. Exponential in the matrix size; meant for small inputs.
pub fn gcd_of_minors(m: &IntMatrix) -> Vec<BigInt> {
    let mut divisors = vec![BigInt::one()];
    for k in 1..=m.rows().min(m.cols()) {
        let mut g = BigInt::zero();
        for rows in (0..m.rows()).combinations(k) {
            for cols in (0..m.cols()).combinations(k) {
                let minor: Vec<Vec<BigInt>> = rows.iter().map(|&i| cols.iter().map(|&j| m.get(i, j).clone()).collect()).collect();
                g = g.gcd(&determinant(&minor));
            }
        }
        if g.is_zero() {
            break;
        }
        divisors.push(g);
    }
    divisors.windows(2).map(|w| &w[1] / &w[0]).collect()
}

/// Classifies a finite abelian group given by elements `0..order` and an
/// addition function.
pub fn finite_group_invariants(order: usize, zero: usize, add: impl Fn(usize, usize) -> usize) -> AbGroupInvariants {
    let times = |g: usize, k: usize| (0..k).fold(zero, |acc, _| add(acc, g));
    let mut by_prime: Vec<(usize, Vec<u32>)> = Vec::new();
    for p in primes_dividing(order) {
        // c[k] = #{g : p^k g = 0}; the number of cyclic p-factors of order at
        // least p^k is log_p(c[k] / c[k-1]).
        let mut counts = vec![1usize];
        let mut multiple: Vec<usize> = (0..order).collect();
        loop {
            multiple.iter_mut().for_each(|g| *g = times(*g, p));
            let c = multiple.iter().filter(|&&g| g == zero).count();
            if c == *counts.last().expect("non-empty") {
                break;
            }
            counts.push(c);
        }
        let at_least: Vec<u32> = counts.windows(2).map(|w| log_exact(w[1] / w[0], p)).collect();
        // Partition conjugation: exponents of the individual factors.
        let factors = at_least[0] as usize;
        let exps: Vec<u32> = (0..factors).map(|i| at_least.iter().filter(|&&n| n as usize > i).count() as u32).collect();
        by_prime.push((p, exps));
    }
    let t = by_prime.iter().map(|(_, e)| e.len()).max().unwrap_or(0);
    let mut torsion: Vec<BigInt> = (0..t)
        .map(|i| by_prime.iter().fold(BigInt::one(), |acc, (p, e)| acc * BigInt::from(*p).pow(e.get(i).copied().unwrap_or(0))))
        .collect();
    torsion.reverse();
    AbGroupInvariants { rank: 0, torsion }
}

fn primes_dividing(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn log_exact(mut n: usize, p: usize) -> u32 {
    let mut k = 0;
    while n > 1 {
        assert_eq!(n % p, 0, "torsion count is not a power of {p}");
        n /= p;
        k += 1;
    }
    k
}

/// The group of formal differences: pairs `(a, b)` with `(a, b) ~ (c, d)`
/// iff `a + d + k = c + b + k` for some `k`. A finite monoid always has a
/// finite group completion.
pub fn pair_construction(m: &FinCommMonoid) -> AbGroupInvariants {
    let n = m.len();
    let equivalent = |(a, b): (usize, usize), (c, d): (usize, usize)| {
        let l = m.op(a, d);
        let r = m.op(c, b);
        (0..n).any(|k| m.op(l, k) == m.op(r, k))
    };
    let mut classes: Vec<(usize, usize)> = Vec::new();
    let mut class_of = vec![0usize; n * n];
    for a in 0..n {
        for b in 0..n {
            class_of[a * n + b] = match classes.iter().position(|&rep| equivalent(rep, (a, b))) {
                Some(i) => i,
                None => {
                    classes.push((a, b));
                    classes.len() - 1
                }
            };
        }
    }
    let u = m.unit();
    let zero = class_of[u * n + u];
    finite_group_invariants(classes.len(), zero, |x, y| {
        let ((a, b), (c, d)) = (classes[x], classes[y]);
        class_of[m.op(a, c) * n + m.op(b, d)]
    })
}

/// `ℤⁿ / rows(relations)` by Hermite-style elimination and enumeration of
/// coset representatives. Returns `None` when the quotient is infinite or
/// has more than `max_order` elements.
pub fn enumerate_quotient(relations: &IntMatrix, max_order: usize) -> Option<AbGroupInvariants> {
    let n = relations.cols();
    let mut rows: Vec<Vec<BigInt>> = (0..relations.rows()).map(|i| (0..n).map(|j| relations.get(i, j).clone()).collect()).collect();
    let mut basis: Vec<Vec<BigInt>> = Vec::with_capacity(n);
    for col in 0..n {
        loop {
            let live: Vec<usize> = (0..rows.len()).filter(|&i| !rows[i][col].is_zero()).collect();
            let &p = live.iter().min_by_key(|&&i| rows[i][col].abs())?;
            if live.len() == 1 {
                let mut pivot = rows.swap_remove(p);
                if pivot[col].is_negative() {
                    pivot.iter_mut().for_each(|x| *x = -x.clone());
                }
                basis.push(pivot);
                break;
            }
            let pivot = rows[p].clone();
            for &i in &live {
                if i != p {
                    let q = rows[i][col].div_floor(&pivot[col]);
                    for j in col..n {
                        let s = &pivot[j] * &q;
                        rows[i][j] -= s;
                    }
                }
            }
        }
    }
    let sizes: Vec<usize> = basis.iter().enumerate().map(|(j, r)| r[j].to_usize()).collect::<Option<_>>()?;
    let order = sizes.iter().try_fold(1usize, |acc, &s| acc.checked_mul(s)).filter(|&o| o <= max_order)?;
    let reduce = |mut v: Vec<BigInt>| -> usize {
        let mut index = 0;
        for j in 0..n {
            let q = v[j].div_floor(&basis[j][j]);
            if !q.is_zero() {
                for k in j..n {
                    let s = &basis[j][k] * &q;
                    v[k] -= s;
                }
            }
            index = index * sizes[j] + v[j].to_usize().expect("reduced entry");
        }
        index
    };
    let decode = |mut i: usize| -> Vec<BigInt> {
        let mut v = vec![BigInt::zero(); n];
        for j in (0..n).rev() {
            v[j] = BigInt::from(i % sizes[j]);
            i /= sizes[j];
        }
        v
    };
    Some(finite_group_invariants(order, 0, |x, y| reduce(decode(x).into_iter().zip(decode(y)).map(|(a, b)| a + b).collect())))
}
