/// Deterministic trial-division primality test.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) || n.is_multiple_of(3) {
        return false;
    }
    let mut d = 5u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) || n.is_multiple_of(d + 2) {
            return false;
        }
        d += 6;
    }
    true
}

/// Representative of `x` in `0..p`.
#[inline]
pub fn modp(x: i128, p: u64) -> u64 {
    x.rem_euclid(p as i128) as u64
}

/// Inverse of `a` modulo the prime `p` (`a` not divisible by `p`).
pub fn inv_mod(a: u64, p: u64) -> u64 {
    // Fermat: a^(p−2)
    let mut result: u128 = 1;
    let mut base = (a % p) as u128;
    let mut e = p - 2;
    let p128 = p as u128;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p128;
        }
        base = base * base % p128;
        e >>= 1;
    }
    result as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_primes() {
        let primes: Vec<u64> = (0..40).filter(|&n| is_prime(n)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]);
        assert!(is_prime(401) && !is_prime(403));
    }

    #[test]
    fn inverses() {
        for p in [5u64, 7, 13, 101] {
            for a in 1..p {
                assert_eq!(a * inv_mod(a, p) % p, 1);
            }
        }
        assert_eq!(modp(-3, 7), 4);
    }
}
