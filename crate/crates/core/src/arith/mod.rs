//! Exact number kernel: rationals, the ordered field Q(√3), the torus norm
//! and prime iteration.

mod quad;
mod rational;
mod speeds;

pub use quad::{quad_sign, QuadExt};
pub use rational::Rational;
pub use speeds::{SpeedSet, MAX_SPEED};

/// Distance from `x` to the nearest integer, in `[0, 1/2]`.
pub fn torus_norm(x: &Rational) -> Rational {
    let f = x.fract();
    let g = Rational::one() - &f;
    f.min(g)
}

/// Torus norm of `num/den` as the numerator over `den`: `min(r, den - r)`
/// with `r = num mod den`. Integer-only fast path used by the gap engine.
#[inline]
pub(crate) fn torus_norm_numer(num: u128, den: u128) -> u128 {
    let r = num % den;
    r.min(den - r)
}

/// Deterministic trial division.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Smallest prime `p ≥ lower` dividing no member of `speeds`.
pub fn next_prime_not_dividing(lower: u64, speeds: &SpeedSet) -> u64 {
    let mut p = lower.max(2);
    loop {
        if is_prime(p) && speeds.iter().all(|s| s % p != 0) {
            return p;
        }
        p += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn torus_norm_examples() {
        assert_eq!(torus_norm(&Rational::new(7, 3)), Rational::new(1, 3));
        assert_eq!(torus_norm(&Rational::from(5)), Rational::zero());
        assert_eq!(torus_norm(&Rational::half()), Rational::half());
        assert_eq!(torus_norm(&Rational::new(-7, 3)), Rational::new(1, 3));
        assert_eq!(torus_norm(&Rational::new(-1, 10)), Rational::new(1, 10));
    }

    // Brute scan over nearby integers, independent of fract().
    fn norm_oracle(x: &Rational) -> Rational {
        let base = x.numer() / x.denom();
        (-2i64..=2)
            .map(|k| (x - &Rational::from_integer(&base + BigInt::from(k))).abs())
            .min()
            .unwrap()
    }

    #[test]
    fn torus_norm_matches_residue_formula_and_scan() {
        for q in 1u64..=40 {
            for p in -90i64..=90 {
                let x = Rational::new(p, q as i64);
                let n = torus_norm(&x);
                assert_eq!(n, norm_oracle(&x));
                let (rp, rq) = (x.numer().clone(), x.denom().clone());
                let r = ((rp % &rq) + &rq) % &rq;
                let m = std::cmp::min(r.clone(), &rq - &r);
                assert_eq!(n, Rational::new(m, rq));
            }
        }
    }

    #[test]
    fn norm_numer_fast_path() {
        assert_eq!(torus_norm_numer(7, 3), 1);
        assert_eq!(torus_norm_numer(5, 10), 5);
        assert_eq!(torus_norm_numer(10, 5), 0);
    }

    #[test]
    fn primes() {
        let ps: Vec<u64> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(ps, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert!(is_prime(999_983));
        assert!(!is_prime(999_981));
    }

    #[test]
    fn next_prime_examples() {
        let s = |v: Vec<u64>| SpeedSet::new(v).unwrap();
        assert_eq!(next_prime_not_dividing(2, &s(vec![2, 3])), 5);
        assert_eq!(next_prime_not_dividing(6, &s(vec![1, 2])), 7);
        assert_eq!(next_prime_not_dividing(11, &s(vec![11])), 13);
    }
}
