//! Small integer helpers: prime divisors and π-parts of group orders.

/// Distinct prime divisors of `n`, ascending.
pub fn prime_divisors(mut n: u64) -> Vec<u64> {
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

/// Largest divisor of `n` whose prime divisors all lie in `primes`.
pub fn pi_part(mut n: u64, primes: &[u64]) -> u64 {
    let mut part = 1;
    for &p in primes {
        while n.is_multiple_of(p) {
            n /= p;
            part *= p;
        }
    }
    part
}

/// True when every prime divisor of `n` is in `primes`.
pub fn is_pi_number(n: u64, primes: &[u64]) -> bool {
    pi_part(n, primes) == n
}

/// `Some(p)` when `n = p^k` for a prime `p` and `k ≥ 1`.
pub fn prime_power_base(n: u64) -> Option<u64> {
    match prime_divisors(n).as_slice() {
        [p] => Some(*p),
        _ => None,
    }
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && prime_divisors(n) == [n]
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// All non-empty subsets of `primes` with at most `max_size` members.
pub fn prime_subsets(primes: &[u64], max_size: usize) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    for mask in 1u32..(1 << primes.len()) {
        if mask.count_ones() as usize <= max_size {
            out.push(
                primes
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask & (1 << i) != 0)
                    .map(|(_, &p)| p)
                    .collect(),
            );
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divisors_and_parts() {
        assert_eq!(prime_divisors(1), Vec::<u64>::new());
        assert_eq!(prime_divisors(360), vec![2, 3, 5]);
        assert_eq!(prime_divisors(97), vec![97]);
        assert_eq!(pi_part(360, &[2, 5]), 40);
        assert_eq!(pi_part(360, &[7]), 1);
        assert!(is_pi_number(12, &[2, 3]));
        assert!(!is_pi_number(12, &[2]));
        assert_eq!(prime_power_base(64), Some(2));
        assert_eq!(prime_power_base(12), None);
        assert_eq!(prime_power_base(1), None);
        assert_eq!(gcd(12, 18), 6);
    }

    #[test]
    fn subsets_respect_size_cap() {
        let s = prime_subsets(&[2, 3, 5, 7], 3);
        assert_eq!(s.len(), 4 + 6 + 4);
        assert!(s.iter().all(|x| !x.is_empty() && x.len() <= 3));
    }
}
