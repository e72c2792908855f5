//! Small integer number theory used by the cyclotomic layer.

use num_integer::Integer;

pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Prime factorisation as (prime, exponent) pairs in increasing order.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn totient(n: u64) -> u64 {
    factorize(n)
        .iter()
        .fold(n, |acc, &(p, _)| acc / p * (p - 1))
}

pub fn mobius(n: u64) -> i64 {
    let f = factorize(n);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

pub fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

/// Multiplicative order of `a` modulo `m`; `None` when `gcd(a, m) != 1`.
pub fn multiplicative_order(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(1);
    }
    if gcd(a % m, m) != 1 {
        return None;
    }
    let mut x = a % m;
    let mut ord = 1;
    while x != 1 {
        x = x * (a % m) % m;
        ord += 1;
    }
    Some(ord)
}

/// Ramanujan sum `c_m(t)`, the sum of `zeta^{t j}` over the units `j` mod `m`.
pub fn ramanujan_sum(m: u64, t: u64) -> i64 {
    let g = gcd(t % m, m);
    let q = m / g;
    mobius(q) * (totient(m) / totient(q)) as i64
}

pub fn binomial(n: i64, k: i64) -> u64 {
    if n < 0 || k < 0 || k > n {
        return 0;
    }
    let k = k.min(n - k) as u64;
    let n = n as u64;
    let mut acc: u64 = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn totients_and_mobius() {
        assert_eq!(totient(5), 4);
        assert_eq!(totient(12), 4);
        assert_eq!(totient(8), 4);
        assert_eq!(mobius(6), 1);
        assert_eq!(mobius(4), 0);
        assert_eq!(mobius(7), -1);
    }

    #[test]
    fn ramanujan_sums_match_root_sums() {
        // Sum of primitive 5th roots is -1; sum of primitive 4th roots is 0.
        assert_eq!(ramanujan_sum(5, 1), -1);
        assert_eq!(ramanujan_sum(4, 1), 0);
        assert_eq!(ramanujan_sum(4, 2), -2);
        assert_eq!(ramanujan_sum(12, 0), 4);
    }

    #[test]
    fn orders() {
        assert_eq!(multiplicative_order(2, 5), Some(4));
        assert_eq!(multiplicative_order(11, 5), Some(1));
        assert_eq!(multiplicative_order(2, 4), None);
    }

    #[test]
    fn pascal() {
        for n in 1..10i64 {
            for k in 0..=n {
                assert_eq!(binomial(n, k), binomial(n - 1, k) + binomial(n - 1, k - 1));
            }
        }
        assert_eq!(binomial(3, -1), 0);
        assert_eq!(binomial(3, 4), 0);
    }
}
