use std::fmt;

use crate::{Error, Result};

/// Deterministic Miller-Rabin for the full `u64` range.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const SMALL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &sp in &SMALL {
        if n.is_multiple_of(sp) {
            return n == sp;
        }
    }
    let mut d = n - 1;
    let mut r = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        r += 1;
    }
    'witness: for &a in &SMALL {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..r {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Largest `r` with `r * r <= n`.
pub fn isqrt(n: u64) -> u64 {
    if n < 2 {
        return n;
    }
    let mut r = (n as f64).sqrt() as u64;
    while (r as u128) * (r as u128) > n as u128 {
        r -= 1;
    }
    while ((r + 1) as u128) * ((r + 1) as u128) <= n as u128 {
        r += 1;
    }
    r
}

/// An odd prime `p`, checked on construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PrimeModulus(u64);

impl PrimeModulus {
    pub fn new(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p < 3 {
            return Err(Error::ModulusTooSmall(p));
        }
        Ok(PrimeModulus(p))
    }

    pub fn get(self) -> u64 {
        self.0
    }

    pub fn residue(self, q: u64) -> Result<Residue> {
        Residue::new(q, self)
    }

    /// All residues `0 < q < p`.
    pub fn residues(self) -> impl Iterator<Item = Residue> {
        (1..self.0).map(move |q| Residue { q, p: self })
    }
}

impl fmt::Display for PrimeModulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// An integer `q` with `0 < q < p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Residue {
    q: u64,
    p: PrimeModulus,
}

impl Residue {
    pub fn new(q: u64, p: PrimeModulus) -> Result<Self> {
        if q == 0 || q >= p.get() {
            return Err(Error::ResidueOutOfRange { q, p: p.get() });
        }
        Ok(Residue { q, p })
    }

    pub fn q(self) -> u64 {
        self.q
    }

    pub fn p(self) -> u64 {
        self.p.get()
    }

    pub fn modulus(self) -> PrimeModulus {
        self.p
    }

    /// `q'` with `q q' ≡ 1 (mod p)`.
    pub fn inverse(self) -> Residue {
        mod_inverse(self)
    }

    /// `p - q`.
    pub fn negate(self) -> Residue {
        Residue {
            q: self.p.get() - self.q,
            p: self.p,
        }
    }
}

pub fn mod_inverse(r: Residue) -> Residue {
    let p = r.p() as i128;
    let (mut old_r, mut cur_r) = (r.q() as i128, p);
    let (mut old_s, mut cur_s) = (1i128, 0i128);
    while cur_r != 0 {
        let quot = old_r / cur_r;
        (old_r, cur_r) = (cur_r, old_r - quot * cur_r);
        (old_s, cur_s) = (cur_s, old_s - quot * cur_s);
    }
    debug_assert_eq!(old_r, 1);
    Residue {
        q: old_s.rem_euclid(p) as u64,
        p: r.p,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality_matches_trial_division() {
        let trial = |n: u64| {
            n >= 2
                && (2..)
                    .take_while(|d| d * d <= n)
                    .all(|d| !n.is_multiple_of(d))
        };
        for n in 0..5000 {
            assert_eq!(is_prime(n), trial(n), "n = {n}");
        }
        assert!(is_prime(61_169));
        assert!(is_prime(544_109));
        assert!(!is_prime(3_215_031_751)); // strong pseudoprime to bases 2, 3, 5, 7
        assert!(is_prime(18_446_744_073_709_551_557));
    }

    #[test]
    fn modulus_rejects_composites_and_two() {
        assert_eq!(PrimeModulus::new(6), Err(Error::NotPrime(6)));
        assert_eq!(PrimeModulus::new(2), Err(Error::ModulusTooSmall(2)));
        assert!(PrimeModulus::new(3).is_ok());
    }

    #[test]
    fn inverse_examples() {
        let p7 = PrimeModulus::new(7).unwrap();
        assert_eq!(p7.residue(1).unwrap().inverse().q(), 1);
        assert_eq!(p7.residue(3).unwrap().inverse().q(), 5);
        let big = PrimeModulus::new(61_169).unwrap();
        assert_eq!(big.residue(61_168).unwrap().inverse().q(), 61_168);
    }

    #[test]
    fn inverse_is_involutive() {
        for p in [3u64, 5, 101, 1009] {
            let p = PrimeModulus::new(p).unwrap();
            for r in p.residues() {
                let inv = r.inverse();
                assert_eq!((r.q() as u128 * inv.q() as u128) % p.get() as u128, 1);
                assert_eq!(inv.inverse(), r);
            }
        }
    }

    #[test]
    fn residue_range() {
        let p = PrimeModulus::new(5).unwrap();
        assert!(p.residue(0).is_err());
        assert!(p.residue(5).is_err());
    }

    #[test]
    fn isqrt_edges() {
        assert_eq!(isqrt(0), 0);
        assert_eq!(isqrt(17), 4);
        assert_eq!(isqrt(16), 4);
        assert_eq!(isqrt(u64::MAX), 4_294_967_295);
    }
}
