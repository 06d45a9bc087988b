//! Exact modular arithmetic and quadratic-residue identities.
//!
//! Everything here is integer arithmetic over `Z_p` for odd primes `p`.
//! The closed-form identities ([`legendre_pair_sum`], [`residue_successor_sum`],
//! [`consecutive_residue_count`], [`count_curve_points`]) each have a
//! brute-force counterpart so they can be cross-checked independently.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModError {
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("modulus {0} must be at least 2")]
    BadModulus(u64),
}

/// An odd prime `p >= 3`, certified at construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OddPrime(u64);

impl OddPrime {
    pub fn new(p: u64) -> Result<Self, ModError> {
        if p >= 3 && p % 2 == 1 && is_prime(p) {
            Ok(OddPrime(p))
        } else {
            Err(ModError::NotOddPrime(p))
        }
    }

    pub fn get(self) -> u64 {
        self.0
    }
}

impl std::fmt::Display for OddPrime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Deterministic trial-division primality test (fine for the magnitudes in scope).
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    if n % 3 == 0 {
        return n == 3;
    }
    let mut k = 5;
    while k * k <= n {
        if n % k == 0 || n % (k + 2) == 0 {
            return false;
        }
        k += 6;
    }
    true
}

/// Least non-negative representative of `n mod m`.
pub fn reduce(n: i64, m: u64) -> u64 {
    n.rem_euclid(m as i64) as u64
}

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    (a as u128 * b as u128 % m as u128) as u64
}

pub fn pow_mod(base: u64, mut exp: u64, m: u64) -> u64 {
    let m128 = m as u128;
    let mut b = (base % m) as u128;
    let mut acc = 1u128 % m128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m128;
        }
        b = b * b % m128;
        exp >>= 1;
    }
    acc as u64
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// The Legendre symbol `(n/p)`, computed by Euler's criterion.
///
/// Returns `+1` if `n` is a nonzero quadratic residue mod `p`, `-1` if it is a
/// nonresidue, and `0` if `p | n`. Negative `n` is reduced mod `p` first.
pub fn legendre(n: i64, p: OddPrime) -> i32 {
    let pp = p.get();
    let r = reduce(n, pp);
    if r == 0 {
        0
    } else if pow_mod(r, (pp - 1) / 2, pp) == 1 {
        1
    } else {
        -1
    }
}

/// Modular inverse of `n` mod `m`, or `None` when `gcd(n, m) != 1`.
pub fn inverse_mod(n: i64, m: u64) -> Option<u64> {
    assert!(m >= 2, "modulus must be at least 2");
    let m = m as i128;
    let (mut t, mut new_t) = (0i128, 1i128);
    let (mut r, mut new_r) = (m, (n as i128).rem_euclid(m));
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    if r != 1 {
        None
    } else {
        Some(t.rem_euclid(m) as u64)
    }
}

/// Square root of `n` mod `p` via Tonelli-Shanks, with the `p ≡ 3 mod 4`
/// shortcut `n^((p+1)/4)`.
///
/// Of the two roots `±r`, returns the one in `[0, (p-1)/2]` so outputs are
/// deterministic. `None` when `n` is a nonresidue.
pub fn sqrt_mod(n: i64, p: OddPrime) -> Option<u64> {
    let pp = p.get();
    let a = reduce(n, pp);
    if a == 0 {
        return Some(0);
    }
    if legendre(n, p) == -1 {
        return None;
    }
    let r = if pp % 4 == 3 {
        pow_mod(a, (pp + 1) / 4, pp)
    } else {
        tonelli_shanks(a, pp)
    };
    debug_assert_eq!(mul_mod(r, r, pp), a);
    Some(r.min(pp - r))
}

// Deterministic: the witness nonresidue is the smallest one.
fn tonelli_shanks(a: u64, p: u64) -> u64 {
    let mut q = p - 1;
    let mut s = 0u32;
    while q % 2 == 0 {
        q /= 2;
        s += 1;
    }
    let z = (2..p)
        .find(|&z| pow_mod(z, (p - 1) / 2, p) == p - 1)
        .expect("odd prime has a nonresidue");
    let mut m = s;
    let mut c = pow_mod(z, q, p);
    let mut t = pow_mod(a, q, p);
    let mut r = pow_mod(a, (q + 1) / 2, p);
    while t != 1 {
        let mut i = 0u32;
        let mut t2 = t;
        while t2 != 1 {
            t2 = mul_mod(t2, t2, p);
            i += 1;
        }
        let b = pow_mod(c, 1 << (m - i - 1), p);
        m = i;
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        r = mul_mod(r, b, p);
    }
    r
}

/// `Σ_{n=1}^{p-2} (n/p)((n+1)/p)`, by direct summation. Equals `-1` for every
/// odd prime `p >= 5`.
pub fn legendre_pair_sum(p: OddPrime) -> i64 {
    (1..=p.get() - 2)
        .map(|n| (legendre(n as i64, p) * legendre(n as i64 + 1, p)) as i64)
        .sum()
}

/// `N(p)`, the number of consecutive residue pairs in `[1, p-1]`, by the
/// closed form `(p - 4 - (-1)^((p-1)/2)) / 4`.
pub fn consecutive_residue_count(p: OddPrime) -> u64 {
    let pi = p.get() as i64;
    let sign = if ((pi - 1) / 2) % 2 == 0 { 1 } else { -1 };
    ((pi - 4 - sign) / 4) as u64
}

/// Brute-force counterpart of [`consecutive_residue_count`]: counts `n` with
/// both `n` and `n+1` residues.
pub fn consecutive_residue_count_brute(p: OddPrime) -> u64 {
    (1..=p.get() - 2)
        .filter(|&n| legendre(n as i64, p) == 1 && legendre(n as i64 + 1, p) == 1)
        .count() as u64
}

/// `Σ over residues n of ((n+1)/p)`, by direct summation. Equals `-1` for
/// every odd prime `p >= 5`, and also equals
/// `(1-p)/2 + 2 N(p) + (1 + (-1)^((p-1)/2)) / 2`.
pub fn residue_successor_sum(p: OddPrime) -> i64 {
    (1..p.get())
        .filter(|&n| legendre(n as i64, p) == 1)
        .map(|n| legendre(n as i64 + 1, p) as i64)
        .sum()
}

/// An integer polynomial, coefficients low degree first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntPolynomial {
    coeffs: Vec<i64>,
}

impl IntPolynomial {
    pub fn new(coeffs: Vec<i64>) -> Self {
        IntPolynomial { coeffs }
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    /// Horner evaluation of `f(x) mod m`.
    pub fn eval_mod(&self, x: u64, m: u64) -> u64 {
        let m = m as i128;
        let x = x as i128;
        let mut acc = 0i128;
        for &c in self.coeffs.iter().rev() {
            acc = (acc * x + c as i128).rem_euclid(m);
        }
        acc as u64
    }
}

/// `Υ(f) = p + Σ_{n=0}^{p-1} (f(n)/p)`, the number of pairs `(x, y)` in
/// `Z_p²` with `y² ≡ f(x) mod p`.
pub fn count_curve_points(f: &IntPolynomial, p: OddPrime) -> u64 {
    let pp = p.get();
    let s: i64 = (0..pp)
        .map(|n| legendre(f.eval_mod(n, pp) as i64, p) as i64)
        .sum();
    (pp as i64 + s) as u64
}

/// Brute-force counterpart of [`count_curve_points`]: enumerates all `p²` pairs.
pub fn count_curve_points_brute(f: &IntPolynomial, p: OddPrime) -> u64 {
    let pp = p.get();
    let mut count = 0;
    for x in 0..pp {
        let fx = f.eval_mod(x, pp);
        for y in 0..pp {
            if mul_mod(y, y, pp) == fx {
                count += 1;
            }
        }
    }
    count
}
