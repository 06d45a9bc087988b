//! Elements of the semidirect product `(E)SL(2, n) ⋉ Z_n²`, the algebraic
//! image of the projective (extended) Clifford group.

use crate::modnum::{inverse_mod, mul_mod, reduce, OddPrime};
use crate::sl2::{conjugator_to_zauner, Sl2Error, SlMat};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CliffordError {
    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u64, u64),
    #[error("no solution: det(F - I) = {det} is not invertible mod {modulus}")]
    NoSolution { det: u64, modulus: u64 },
    #[error("element is not canonical (trace {trace} mod {modulus}, matrix part identity: {is_identity})")]
    NotCanonical { trace: u64, modulus: u64, is_identity: bool },
    #[error(transparent)]
    Matrix(#[from] Sl2Error),
}

/// An ordered pair `(F, χ)` with `F ∈ (E)SL(2, n)` and `χ ∈ Z_n²`, composed by
/// `(F, χ) ∘ (G, ζ) = (FG, χ + Fζ)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CliffordElem {
    mat: SlMat,
    chi: [u64; 2],
}

impl CliffordElem {
    pub fn new(mat: SlMat, chi: [i64; 2]) -> Self {
        let n = mat.modulus();
        CliffordElem {
            mat,
            chi: [reduce(chi[0], n), reduce(chi[1], n)],
        }
    }

    pub fn identity(modulus: u64) -> Self {
        CliffordElem { mat: SlMat::identity(modulus), chi: [0, 0] }
    }

    pub fn mat(&self) -> &SlMat {
        &self.mat
    }

    pub fn chi(&self) -> [u64; 2] {
        self.chi
    }

    pub fn modulus(&self) -> u64 {
        self.mat.modulus()
    }

    /// `(F, χ) ∘ (G, ζ) = (FG, χ + Fζ)`.
    pub fn compose(&self, rhs: &CliffordElem) -> Result<CliffordElem, CliffordError> {
        let n = self.modulus();
        if n != rhs.modulus() {
            return Err(CliffordError::ModulusMismatch(n, rhs.modulus()));
        }
        let f_zeta = self.mat.apply(rhs.chi);
        Ok(CliffordElem {
            mat: self.mat.mul(&rhs.mat)?,
            chi: [(self.chi[0] + f_zeta[0]) % n, (self.chi[1] + f_zeta[1]) % n],
        })
    }

    /// `(F, χ)⁻¹ = (F⁻¹, -F⁻¹χ)`.
    pub fn invert(&self) -> CliffordElem {
        let n = self.modulus();
        let finv = self.mat.inverse();
        let v = finv.apply(self.chi);
        CliffordElem { mat: finv, chi: [(n - v[0]) % n, (n - v[1]) % n] }
    }

    /// `self ∘ e ∘ self⁻¹`.
    pub fn conjugate(&self, e: &CliffordElem) -> Result<CliffordElem, CliffordError> {
        self.compose(e)?.compose(&self.invert())
    }

    /// The Clifford trace: the trace of the matrix part, over `Z_n`.
    pub fn clifford_trace(&self) -> u64 {
        self.mat.trace()
    }

    /// Canonical means Clifford trace -1 and a non-identity matrix part
    /// (the identity qualifies on trace only when n = 3).
    pub fn is_canonical(&self) -> bool {
        let n = self.modulus();
        self.clifford_trace() == n - 1 && self.mat != SlMat::identity(n)
    }

    /// Solves `χ = (F - I)ζ` for ζ, so that conjugating by `(I, ζ)` removes
    /// the translation part: `(I, ζ) ∘ (F, χ) ∘ (I, ζ)⁻¹ = (F, 0)`.
    ///
    /// Fails when `det(F - I)` is not invertible mod n; over a prime modulus
    /// that happens exactly when `Tr(F) ≡ 2`.
    pub fn kill_translation(&self) -> Result<[u64; 2], CliffordError> {
        let n = self.modulus();
        let [a, b, c, d] = self.mat.entries();
        // F - I mod n
        let (ma, mb, mc, md) = ((a + n - 1) % n, b, c, (d + n - 1) % n);
        let det = (mul_mod(ma, md, n) + n - mul_mod(mb, mc, n)) % n;
        let det_inv = inverse_mod(det as i64, n)
            .ok_or(CliffordError::NoSolution { det, modulus: n })?;
        // ζ = (F - I)⁻¹ χ
        let [x, y] = self.chi;
        let z0 = (mul_mod(md, x, n) + n - mul_mod(mb, y, n)) % n;
        let z1 = (mul_mod(mc, x, n) + n - mul_mod(ma, y, n)) % n;
        let zeta = [
            mul_mod(det_inv, z0, n),
            mul_mod(det_inv, (n - z1) % n, n),
        ];
        Ok(zeta)
    }
}

/// Produces `g = (G, ξ)` with `g ∘ e ∘ g⁻¹ = (Z, 0)` for any canonical
/// element `e` over a prime `p > 3`: first the translation part is removed
/// with [`CliffordElem::kill_translation`], then the matrix part is conjugated
/// to `Z` with [`conjugator_to_zauner`].
pub fn canonical_to_zauner(
    e: &CliffordElem,
    p: OddPrime,
) -> Result<CliffordElem, CliffordError> {
    let n = p.get();
    if e.modulus() != n {
        return Err(CliffordError::ModulusMismatch(e.modulus(), n));
    }
    if n <= 3 {
        return Err(CliffordError::Matrix(Sl2Error::PrimeTooSmall(n)));
    }
    if !e.is_canonical() {
        return Err(CliffordError::NotCanonical {
            trace: e.clifford_trace(),
            modulus: n,
            is_identity: *e.mat() == SlMat::identity(n),
        });
    }
    let zeta = e.kill_translation()?; // trace -1 ≢ 2 for p > 3
    let translate = CliffordElem::new(SlMat::identity(n), [zeta[0] as i64, zeta[1] as i64]);
    let g_mat = conjugator_to_zauner(e.mat(), p)?;
    let g = CliffordElem::new(g_mat, [0, 0]).compose(&translate)?;

    let conj = g.conjugate(e)?;
    let target = CliffordElem::new(SlMat::zauner(n), [0, 0]);
    if conj != target {
        panic!("canonical_to_zauner postcondition failed: got {conj:?}, expected (Z, 0)");
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: u64) -> OddPrime {
        OddPrime::new(v).unwrap()
    }

    fn zauner_elem(n: u64, chi: [i64; 2]) -> CliffordElem {
        CliffordElem::new(SlMat::zauner(n), chi)
    }

    #[test]
    fn identity_is_neutral() {
        let e = zauner_elem(5, [1, 0]);
        let id = CliffordElem::identity(5);
        assert_eq!(id.compose(&e).unwrap(), e);
        assert_eq!(e.compose(&id).unwrap(), e);
    }

    #[test]
    fn compose_worked_example_mod5() {
        // (Z,(1,0)) ∘ (Z,(0,1)) = (Z², (0,4))
        let e1 = zauner_elem(5, [1, 0]);
        let e2 = zauner_elem(5, [0, 1]);
        let out = e1.compose(&e2).unwrap();
        let z = SlMat::zauner(5);
        assert_eq!(*out.mat(), z.mul(&z).unwrap());
        assert_eq!(out.chi(), [0, 4]);
    }

    #[test]
    fn invert_examples() {
        let e = CliffordElem::new(SlMat::identity(7), [1, 2]);
        assert_eq!(e.invert().chi(), [6, 5]);

        // Z⁻¹ = Z² mod 5
        let z = zauner_elem(5, [0, 0]);
        assert_eq!(z.invert().mat().entries(), [4, 1, 4, 0]);

        let e = zauner_elem(11, [3, 7]);
        assert_eq!(e.compose(&e.invert()).unwrap(), CliffordElem::identity(11));
        assert_eq!(e.invert().invert(), e);
    }

    #[test]
    fn conjugation_by_translation() {
        // conjugate((I,ζ), (F,χ)) = (F, ζ + χ - Fζ)
        let n = 13u64;
        let f = SlMat::zauner(n);
        for chi in [[0i64, 0], [1, 2], [12, 5]] {
            for zeta in [[0i64, 0], [3, 4], [7, 11]] {
                let g = CliffordElem::new(SlMat::identity(n), zeta);
                let e = CliffordElem::new(f, chi);
                let out = g.conjugate(&e).unwrap();
                assert_eq!(out.mat(), e.mat());
                let fz = f.apply([zeta[0] as u64, zeta[1] as u64]);
                let expect = [
                    reduce(zeta[0] + chi[0] - fz[0] as i64, n),
                    reduce(zeta[1] + chi[1] - fz[1] as i64, n),
                ];
                assert_eq!(out.chi(), expect);
            }
        }
    }

    #[test]
    fn clifford_trace_examples() {
        assert_eq!(zauner_elem(7, [0, 0]).clifford_trace(), 6);
        assert_eq!(CliffordElem::identity(5).clifford_trace(), 2);
        let j = CliffordElem::new(SlMat::gen_j(9), [0, 0]);
        assert_eq!(j.clifford_trace(), 0);
    }

    #[test]
    fn canonical_examples() {
        assert!(zauner_elem(5, [0, 0]).is_canonical());
        assert!(zauner_elem(7, [1, 2]).is_canonical());
        // identity mod 3 has trace 2 ≡ -1 but is excluded
        assert!(!CliffordElem::identity(3).is_canonical());
        let shear = CliffordElem::new(SlMat::gen_t(5), [0, 0]);
        assert!(!shear.is_canonical());
    }

    #[test]
    fn kill_translation_worked_example() {
        // mod 5, F = Z, χ = (1,0): ζ = (1,3), and conjugating clears χ
        let e = zauner_elem(5, [1, 0]);
        let zeta = e.kill_translation().unwrap();
        assert_eq!(zeta, [1, 3]);
        let g = CliffordElem::new(SlMat::identity(5), [1, 3]);
        let out = g.conjugate(&e).unwrap();
        assert_eq!(out, zauner_elem(5, [0, 0]));
    }

    #[test]
    fn kill_translation_zero_chi() {
        let e = zauner_elem(7, [0, 0]);
        assert_eq!(e.kill_translation().unwrap(), [0, 0]);
    }

    #[test]
    fn kill_translation_trace_two_fails() {
        let e = CliffordElem::new(SlMat::identity(5), [1, 0]);
        assert!(matches!(
            e.kill_translation(),
            Err(CliffordError::NoSolution { .. })
        ));
        let shear = CliffordElem::new(SlMat::gen_t(7), [1, 0]);
        assert!(matches!(
            shear.kill_translation(),
            Err(CliffordError::NoSolution { .. })
        ));
    }

    #[test]
    fn canonical_to_zauner_worked_example() {
        let e = zauner_elem(5, [1, 0]);
        let g = canonical_to_zauner(&e, p(5)).unwrap();
        assert_eq!(g.conjugate(&e).unwrap(), zauner_elem(5, [0, 0]));
    }

    #[test]
    fn canonical_to_zauner_rejects_noncanonical() {
        let e = CliffordElem::new(SlMat::gen_t(5), [0, 0]);
        assert!(matches!(
            canonical_to_zauner(&e, p(5)),
            Err(CliffordError::NotCanonical { .. })
        ));
    }
}
