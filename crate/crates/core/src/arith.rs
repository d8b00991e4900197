//! Small number-theory helpers over machine integers.

pub use num_integer::{gcd, lcm};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime factorization as `(prime, exponent)` pairs, primes ascending.
pub fn factorize(mut n: u128) -> Vec<(u128, u32)> {
    let mut out = Vec::new();
    let mut d = 2u128;
    while d * d <= n {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
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

/// Prime factors with multiplicity, ascending.
pub fn prime_factors(n: u64) -> Vec<u64> {
    factorize(n as u128)
        .into_iter()
        .flat_map(|(p, e)| std::iter::repeat(p as u64).take(e as usize))
        .collect()
}

pub fn distinct_primes(n: u128) -> Vec<u128> {
    factorize(n).into_iter().map(|(p, _)| p).collect()
}

pub fn divisors(n: u128) -> Vec<u128> {
    let mut divs = vec![1u128];
    for (p, e) in factorize(n) {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for &d in &divs {
            let mut q = d;
            for _ in 0..=e {
                next.push(q);
                q *= p;
            }
        }
        divs = next;
    }
    divs.sort_unstable();
    divs
}

pub fn mobius(n: u64) -> i64 {
    let mut sign = 1;
    for (_, e) in factorize(n as u128) {
        if e > 1 {
            return 0;
        }
        sign = -sign;
    }
    sign
}
