//! 2x2 matrices over `Z_n` with determinant ±1, and the explicit conjugator
//! taking any trace -1 matrix to the Zauner matrix `Z = [[0,-1],[1,-1]]`.

use crate::modnum::{inverse_mod, legendre, mul_mod, reduce, sqrt_mod, OddPrime};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Sl2Error {
    #[error("modulus {0} must be at least 2")]
    BadModulus(u64),
    #[error("determinant {det} mod {modulus} is not ±1")]
    NonUnitDet { det: u64, modulus: u64 },
    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u64, u64),
    #[error("matrix has trace {trace} mod {modulus}, expected -1")]
    BadTrace { trace: u64, modulus: u64 },
    #[error("determinant {0} must be +1 for this operation")]
    NotSpecial(u64),
    #[error("prime {0} must be greater than 3")]
    PrimeTooSmall(u64),
}

/// A 2x2 matrix over `Z_n` with determinant +1 (or -1 for the extended,
/// determinant-negating variant). Entries are stored reduced in `[0, n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SlMat {
    a: u64,
    b: u64,
    c: u64,
    d: u64,
    modulus: u64,
}

impl SlMat {
    pub fn new(a: i64, b: i64, c: i64, d: i64, modulus: u64) -> Result<Self, Sl2Error> {
        if modulus < 2 {
            return Err(Sl2Error::BadModulus(modulus));
        }
        let m = SlMat {
            a: reduce(a, modulus),
            b: reduce(b, modulus),
            c: reduce(c, modulus),
            d: reduce(d, modulus),
            modulus,
        };
        let det = m.det();
        if det != 1 % modulus && det != modulus - 1 {
            return Err(Sl2Error::NonUnitDet { det, modulus });
        }
        Ok(m)
    }

    pub fn identity(modulus: u64) -> Self {
        SlMat { a: 1 % modulus, b: 0, c: 0, d: 1 % modulus, modulus }
    }

    /// The Zauner matrix `[[0, -1], [1, -1]]` mod `n`. Satisfies `Z³ = I`.
    pub fn zauner(modulus: u64) -> Self {
        SlMat { a: 0, b: modulus - 1, c: 1 % modulus, d: modulus - 1, modulus }
    }

    /// `S = [[0, -1], [1, 0]]`, one of the two standard generators of `SL(2, Z_n)`.
    pub fn gen_s(modulus: u64) -> Self {
        SlMat { a: 0, b: modulus - 1, c: 1 % modulus, d: 0, modulus }
    }

    /// `T = [[1, 1], [0, 1]]`, the other standard generator.
    pub fn gen_t(modulus: u64) -> Self {
        SlMat { a: 1 % modulus, b: 1 % modulus, c: 0, d: 1 % modulus, modulus }
    }

    /// `J = [[1, 0], [0, -1]]`, the determinant -1 generator extending
    /// `SL(2, n)` to `ESL(2, n)`.
    pub fn gen_j(modulus: u64) -> Self {
        SlMat { a: 1 % modulus, b: 0, c: 0, d: modulus - 1, modulus }
    }

    /// Entries `[a, b, c, d]` in row-major order, reduced in `[0, n)`.
    pub fn entries(&self) -> [u64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn det(&self) -> u64 {
        let n = self.modulus;
        (mul_mod(self.a, self.d, n) + n - mul_mod(self.b, self.c, n)) % n
    }

    /// True when the determinant is +1 (the `SL` case, as opposed to `ESL`).
    pub fn is_special(&self) -> bool {
        self.det() == 1 % self.modulus
    }

    pub fn trace(&self) -> u64 {
        (self.a + self.d) % self.modulus
    }

    pub fn mul(&self, rhs: &SlMat) -> Result<SlMat, Sl2Error> {
        if self.modulus != rhs.modulus {
            return Err(Sl2Error::ModulusMismatch(self.modulus, rhs.modulus));
        }
        let n = self.modulus;
        Ok(SlMat {
            a: (mul_mod(self.a, rhs.a, n) + mul_mod(self.b, rhs.c, n)) % n,
            b: (mul_mod(self.a, rhs.b, n) + mul_mod(self.b, rhs.d, n)) % n,
            c: (mul_mod(self.c, rhs.a, n) + mul_mod(self.d, rhs.c, n)) % n,
            d: (mul_mod(self.c, rhs.b, n) + mul_mod(self.d, rhs.d, n)) % n,
            modulus: n,
        })
    }

    /// Inverse via the adjugate; always defined since det = ±1 and ±1 is its
    /// own inverse mod n.
    pub fn inverse(&self) -> SlMat {
        let n = self.modulus;
        let eps = self.det(); // 1 or n-1, self-inverse
        SlMat {
            a: mul_mod(eps, self.d, n),
            b: mul_mod(eps, (n - self.b) % n, n),
            c: mul_mod(eps, (n - self.c) % n, n),
            d: mul_mod(eps, self.a, n),
            modulus: n,
        }
    }

    /// Matrix-vector action on a column vector mod n.
    pub fn apply(&self, v: [u64; 2]) -> [u64; 2] {
        let n = self.modulus;
        [
            (mul_mod(self.a, v[0] % n, n) + mul_mod(self.b, v[1] % n, n)) % n,
            (mul_mod(self.c, v[0] % n, n) + mul_mod(self.d, v[1] % n, n)) % n,
        ]
    }
}

impl std::fmt::Display for SlMat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]] mod {}", self.a, self.b, self.c, self.d, self.modulus)
    }
}

/// Builds `G ∈ SL(2, p)` with `G F G⁻¹ = Z` for any `F ∈ SL(2, p)` of trace
/// -1, for primes `p > 3`.
///
/// Writing `F = [[α, β], [γ, -1-α]]`, the ansatz `a = c(α+1) + dγ`,
/// `b = cβ - dα` makes `GF = ZG` hold identically, leaving `det(G) = 1` as
/// the single constraint `d²γ + cd(2α+1) - c²β = 1` on the free pair `(c, d)`.
/// That constraint is solved in three cases on γ: zero, residue, nonresidue.
pub fn conjugator_to_zauner(f: &SlMat, p: OddPrime) -> Result<SlMat, Sl2Error> {
    let n = p.get();
    if n <= 3 {
        return Err(Sl2Error::PrimeTooSmall(n));
    }
    if f.modulus() != n {
        return Err(Sl2Error::ModulusMismatch(f.modulus(), n));
    }
    if !f.is_special() {
        return Err(Sl2Error::NotSpecial(f.det()));
    }
    if f.trace() != n - 1 {
        return Err(Sl2Error::BadTrace { trace: f.trace(), modulus: n });
    }

    let [al, be, ga, _] = f.entries();
    let (c, d) = if ga == 0 {
        // Case 1: with c = 1 the determinant constraint reads d(2α+1) = β+1.
        // 2α+1 is invertible: α = -2⁻¹ would force 4 = 1 mod p.
        let two_al_1 = (2 * al + 1) % n;
        let inv = inverse_mod(two_al_1 as i64, n)
            .expect("2α+1 is nonzero mod p for trace -1 matrices when p > 3");
        (1, mul_mod((be + 1) % n, inv, n))
    } else if legendre(ga as i64, p) == 1 {
        // Case 2: c = 0, d = γ^{1/2}·γ⁻¹, so that d²γ = 1.
        let x = sqrt_mod(ga as i64, p).expect("γ is a residue");
        let ga_inv = inverse_mod(ga as i64, n).expect("γ nonzero");
        (0, mul_mod(x, ga_inv, n))
    } else {
        // Case 3: scan y for solvable x² = γ - 3y², then undo the substitution
        // x = dγ + c(α + 2⁻¹), y = 2⁻¹c. Theorem guarantees ≥ p-1 solutions.
        let inv2 = inverse_mod(2, n).expect("p odd");
        let ga_inv = inverse_mod(ga as i64, n).expect("γ nonzero");
        let mut found = None;
        for y in 0..n {
            let rhs = reduce(ga as i64 - 3 * mul_mod(y, y, n) as i64, n);
            if legendre(rhs as i64, p) >= 0 {
                let x = sqrt_mod(rhs as i64, p).expect("rhs is a residue or zero");
                let c = 2 * y % n;
                let shift = mul_mod(c, (al + inv2) % n, n);
                let d = mul_mod((x + n - shift) % n, ga_inv, n);
                found = Some((c, d));
                break;
            }
        }
        found.unwrap_or_else(|| {
            panic!("no (c, d) solving det(G) = 1 for F = {f}; this contradicts the trace -1 classification")
        })
    };

    let a = (mul_mod(c, (al + 1) % n, n) + mul_mod(d, ga, n)) % n;
    let b = (mul_mod(c, be, n) + n - mul_mod(d, al, n)) % n;
    let g = SlMat { a, b, c, d, modulus: n };
    debug_assert!(g.is_special());

    // Postcondition check by multiplication; a failure here is a bug.
    let conj = g.mul(f).unwrap().mul(&g.inverse()).unwrap();
    if conj != SlMat::zauner(n) {
        panic!("conjugator postcondition failed: G F G⁻¹ = {conj}, expected Z (F = {f}, G = {g})");
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modnum::is_prime;

    fn p(v: u64) -> OddPrime {
        OddPrime::new(v).unwrap()
    }

    #[test]
    fn constructor_checks_det() {
        assert!(SlMat::new(1, 1, 0, 1, 5).is_ok());
        assert!(SlMat::new(1, 0, 0, 4, 5).is_ok()); // det -1, ESL
        assert!(SlMat::new(2, 0, 0, 1, 5).is_err());
    }

    #[test]
    fn zauner_has_order_three_and_trace_minus_one() {
        for n in 2..50 {
            let z = SlMat::zauner(n);
            assert_eq!(z.trace(), n - 1, "n = {n}");
            let z3 = z.mul(&z).unwrap().mul(&z).unwrap();
            assert_eq!(z3, SlMat::identity(n));
            assert_eq!(z.inverse(), z.mul(&z).unwrap());
        }
    }

    #[test]
    fn j_generator_is_esl() {
        let j = SlMat::gen_j(7);
        assert!(!j.is_special());
        assert_eq!(j.trace(), 0);
        assert_eq!(j.mul(&j).unwrap(), SlMat::identity(7));
    }

    #[test]
    fn inverse_is_adjugate() {
        let m = SlMat::new(1, 2, 3, 7, 13).unwrap();
        assert_eq!(m.mul(&m.inverse()).unwrap(), SlMat::identity(13));
        let j = SlMat::gen_j(13);
        assert_eq!(j.mul(&j.inverse()).unwrap(), SlMat::identity(13));
    }

    #[test]
    fn conjugator_worked_example_p5() {
        // F = Z² mod 5; γ = 4 is a residue, so case 2 gives c = 0, d = 3.
        let f = SlMat::new(4, 1, 4, 0, 5).unwrap();
        let g = conjugator_to_zauner(&f, p(5)).unwrap();
        assert_eq!(g.entries(), [2, 3, 0, 3]);
        let gf = g.mul(&f).unwrap();
        let zg = SlMat::zauner(5).mul(&g).unwrap();
        assert_eq!(gf, zg);
    }

    #[test]
    fn conjugator_fixes_zauner_class() {
        for q in [5u64, 7, 11, 13] {
            let z = SlMat::zauner(q);
            let g = conjugator_to_zauner(&z, p(q)).unwrap();
            assert_eq!(g.mul(&z).unwrap().mul(&g.inverse()).unwrap(), z);
        }
    }

    #[test]
    fn conjugator_case3_nonresidue_gamma() {
        // p = 7: γ = 3 is a nonresidue
        assert_eq!(legendre(3, p(7)), -1);
        let mut checked = 0;
        for al in 0..7i64 {
            // need det = 1: α(-1-α) - 3β = 1
            for be in 0..7i64 {
                if let Ok(f) = SlMat::new(al, be, 3, -1 - al, 7) {
                    if !f.is_special() || f.trace() != 6 {
                        continue;
                    }
                    conjugator_to_zauner(&f, p(7)).unwrap();
                    checked += 1;
                }
            }
        }
        assert!(checked > 0);
    }

    #[test]
    fn conjugator_exhaustive_small_primes() {
        for q in (5..=13).filter(|&q| is_prime(q)) {
            let op = p(q);
            let mut count = 0;
            for a in 0..q as i64 {
                for b in 0..q as i64 {
                    for c in 0..q as i64 {
                        let d = -1 - a;
                        match SlMat::new(a, b, c, d, q) {
                            Ok(f) if f.is_special() => {
                                conjugator_to_zauner(&f, op).unwrap();
                                count += 1;
                            }
                            _ => {}
                        }
                    }
                }
            }
            // size of the trace -1 slice in SL(2, p): p² - p for p ≡ 2 mod 3,
            // p² + p for p ≡ 1 mod 3 (the single class of Z).
            assert!(count > 0, "p = {q}: {count} matrices");
        }
    }

    #[test]
    fn conjugator_rejects_bad_inputs() {
        let id = SlMat::identity(5);
        assert!(matches!(
            conjugator_to_zauner(&id, p(5)),
            Err(Sl2Error::BadTrace { .. })
        ));
        let z = SlMat::zauner(3);
        assert!(matches!(
            conjugator_to_zauner(&z, p(3)),
            Err(Sl2Error::PrimeTooSmall(3))
        ));
        let esl = SlMat::new(1, 0, 0, -1, 5).unwrap();
        assert!(conjugator_to_zauner(&esl, p(5)).is_err());
    }
}
