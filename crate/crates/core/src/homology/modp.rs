//! Ranks over prime fields by column reduction.

use std::collections::HashMap;

use super::complex::BoundaryMatrix;

pub fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

fn inv_mod(a: u64, p: u64) -> u64 {
    // p is prime, so a^(p-2) is the inverse
    let (mut base, mut exp, mut acc) = (a % p, p - 2, 1u64);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = ((acc as u128 * base as u128) % p as u128) as u64;
        }
        base = ((base as u128 * base as u128) % p as u128) as u64;
        exp >>= 1;
    }
    acc
}

/// Rank of `b` over `𝔽_p`. `p` must be prime.
pub fn rank_mod_p(b: &BoundaryMatrix, p: u64) -> usize {
    assert!(is_prime(p), "{p} is not prime");
    let reduce = |v: i64| v.rem_euclid(p as i64) as u64;
    // column -> sorted (row, value); pivot row = largest row index
    let mut reduced: Vec<Vec<(usize, u64)>> = Vec::with_capacity(b.cols());
    let mut pivot_of: HashMap<usize, usize> = HashMap::new();
    for col in b.columns() {
        let mut c: Vec<(usize, u64)> = col.iter().map(|&(i, v)| (i, reduce(v))).filter(|&(_, v)| v != 0).collect();
        while let Some(&(low, lv)) = c.last() {
            let Some(&k) = pivot_of.get(&low) else { break };
            let other = &reduced[k];
            let ov = other.last().expect("pivot column is nonzero").1;
            let f = (lv as u128 * inv_mod(ov, p) as u128 % p as u128) as u64;
            c = axpy(&c, other, p - f, p);
        }
        if let Some(&(low, _)) = c.last() {
            pivot_of.insert(low, reduced.len());
        }
        reduced.push(c);
    }
    pivot_of.len()
}

/// `x + f·y` over `𝔽_p` for sorted sparse vectors.
fn axpy(x: &[(usize, u64)], y: &[(usize, u64)], f: u64, p: u64) -> Vec<(usize, u64)> {
    let mul = |v: u64| (v as u128 * f as u128 % p as u128) as u64;
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let take_x = j >= y.len() || (i < x.len() && x[i].0 < y[j].0);
        let take_y = i >= x.len() || (j < y.len() && y[j].0 < x[i].0);
        if take_x {
            out.push(x[i]);
            i += 1;
        } else if take_y {
            out.push((y[j].0, mul(y[j].1)));
            j += 1;
        } else {
            let v = (x[i].1 + mul(y[j].1)) % p;
            if v != 0 {
                out.push((x[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes() {
        let ps: Vec<u64> = (0..30).filter(|&p| is_prime(p)).collect();
        assert_eq!(ps, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert_eq!(inv_mod(3, 7), 5);
    }

    #[test]
    fn ranks() {
        let m = BoundaryMatrix::from_dense(&[vec![2, 0], vec![0, 3]]);
        assert_eq!(rank_mod_p(&m, 2), 1);
        assert_eq!(rank_mod_p(&m, 3), 1);
        assert_eq!(rank_mod_p(&m, 5), 2);
        let t = BoundaryMatrix::from_dense(&[vec![-1, 0, -1], vec![1, -1, 0], vec![0, 1, 1]]);
        for p in [2, 3, 5] {
            assert_eq!(rank_mod_p(&t, p), 2);
        }
    }
}
