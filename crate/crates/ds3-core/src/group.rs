//! The symmetric group S₃ and the representation data used by the anyon model.
//!
//! Elements are ordered (e, c, c², t, tc, tc²); this ordering doubles as the
//! qudit basis ordering everywhere in the crate. The multiplication law is
//! generated from the relations c³ = e, t² = e, ct = tc² rather than stored,
//! and the unit tests pin the resulting Cayley table against a hardcoded
//! expectation.

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::numerics::{omega, omega_bar, ComplexMatrix};
use crate::{Error, Result};

/// One of the six S₃ elements, written as t^s·c^k.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum GroupElement {
    E,
    C,
    C2,
    T,
    Tc,
    Tc2,
}

use GroupElement::*;

impl GroupElement {
    /// All six elements in canonical order.
    pub const ALL: [GroupElement; 6] = [E, C, C2, T, Tc, Tc2];

    /// Position in the canonical ordering (and in the qudit basis).
    pub fn index(self) -> usize {
        match self {
            E => 0,
            C => 1,
            C2 => 2,
            T => 3,
            Tc => 4,
            Tc2 => 5,
        }
    }

    pub fn from_index(i: usize) -> Option<Self> {
        Self::ALL.get(i).copied()
    }

    /// Decomposes into (reflection exponent s ∈ {0,1}, rotation exponent k ∈ {0,1,2}).
    fn decompose(self) -> (u8, u8) {
        let i = self.index() as u8;
        (i / 3, i % 3)
    }

    fn compose(s: u8, k: u8) -> Self {
        Self::ALL[(s % 2 * 3 + k % 3) as usize]
    }

    /// Group multiplication, derived from c³ = e, t² = e, ct = tc².
    ///
    /// Writing a = t^s1·c^k1 and b = t^s2·c^k2 and pushing rotations through
    /// reflections with c·t = t·c⁻¹ gives t^(s1+s2)·c^(k2 + (−1)^s2·k1).
    pub fn multiply(self, other: Self) -> Self {
        let (s1, k1) = self.decompose();
        let (s2, k2) = other.decompose();
        let k1_signed = if s2 == 1 { 3 - k1 } else { k1 };
        Self::compose(s1 + s2, (k2 + k1_signed) % 3)
    }

    /// Group inverse: rotations invert, reflections are involutions.
    pub fn inverse(self) -> Self {
        let (s, k) = self.decompose();
        if s == 0 {
            Self::compose(0, (3 - k) % 3)
        } else {
            self
        }
    }

    /// g·x·g⁻¹.
    pub fn conjugate_by(self, g: Self) -> Self {
        g.multiply(self).multiply(g.inverse())
    }

    pub fn is_rotation(self) -> bool {
        self.decompose().0 == 0
    }

    pub fn as_str(self) -> &'static str {
        match self {
            E => "e",
            C => "c",
            C2 => "c2",
            T => "t",
            Tc => "tc",
            Tc2 => "tc2",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.iter().copied().find(|g| g.as_str() == s)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Serialize for GroupElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

impl<'de> Deserialize<'de> for GroupElement {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        GroupElement::parse(&s)
            .ok_or_else(|| serde::de::Error::custom(format!("unknown group element {s:?}")))
    }
}

/// A conjugacy class together with the normalizer of its base element and
/// coset representatives q_i satisfying q_i·base·q_i⁻¹ = elements[i].
#[derive(Clone, Debug)]
pub struct ConjugacyClassData {
    pub elements: Vec<GroupElement>,
    pub normalizer: Vec<GroupElement>,
    pub coset_reps: Vec<GroupElement>,
}

impl ConjugacyClassData {
    fn build(base: GroupElement) -> Self {
        // Conjugacy class by brute force over the group.
        let mut elements = vec![base];
        for g in GroupElement::ALL {
            let x = base.conjugate_by(g);
            if !elements.contains(&x) {
                elements.push(x);
            }
        }
        // Centralizer of the base element (the normalizer used by the model).
        let normalizer: Vec<GroupElement> = GroupElement::ALL
            .iter()
            .copied()
            .filter(|&g| g.multiply(base) == base.multiply(g))
            .collect();
        // One coset representative per class element, found by search.
        let coset_reps: Vec<GroupElement> = elements
            .iter()
            .map(|&target| {
                GroupElement::ALL
                    .iter()
                    .copied()
                    .find(|&q| base.conjugate_by(q) == target)
                    .expect("conjugating element exists by construction")
            })
            .collect();
        Self {
            elements,
            normalizer,
            coset_reps,
        }
    }

    /// The class of the identity: {e}, normalizer all of S₃.
    pub fn class_e() -> Self {
        Self::build(E)
    }

    /// The rotation class {c, c²} with normalizer ℤ₃ = {e, c, c²}.
    pub fn class_c() -> Self {
        Self::build(C)
    }

    /// The reflection class {t, tc, tc²} with normalizer {e, t}.
    pub fn class_t() -> Self {
        Self::build(T)
    }

    pub fn base(&self) -> GroupElement {
        self.elements[0]
    }
}

/// Labels for the irreducible representations used by the model.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum IrrepLabel {
    /// Trivial representation of S₃ (anyon A / 1).
    Trivial,
    /// Sign representation of S₃ (anyon B / Λ).
    Sign,
    /// Two-dimensional representation of S₃ (anyon Φ).
    TwoDim,
    /// The ω representation of the ℤ₃ normalizer (anyon G).
    Z3Omega,
}

impl fmt::Display for IrrepLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            IrrepLabel::Trivial => "S3_1",
            IrrepLabel::Sign => "S3_-1",
            IrrepLabel::TwoDim => "S3_2",
            IrrepLabel::Z3Omega => "Z3_omega",
        };
        f.write_str(s)
    }
}

/// An irreducible representation: unitary matrices over its domain.
#[derive(Clone, Debug)]
pub struct Irrep {
    pub label: IrrepLabel,
    pub dimension: usize,
    pub domain: Vec<GroupElement>,
    matrices: Vec<Option<ComplexMatrix>>,
}

impl Irrep {
    pub fn new(label: IrrepLabel) -> Self {
        let one = |z: Complex64| ComplexMatrix::new(1, 1, vec![z]).unwrap();
        let w = omega();
        let wb = omega_bar();
        let re = |x: f64| Complex64::new(x, 0.0);
        let zero = Complex64::new(0.0, 0.0);

        let mut matrices: Vec<Option<ComplexMatrix>> = vec![None; 6];
        let (dimension, domain) = match label {
            IrrepLabel::Trivial => {
                for g in GroupElement::ALL {
                    matrices[g.index()] = Some(one(re(1.0)));
                }
                (1, GroupElement::ALL.to_vec())
            }
            IrrepLabel::Sign => {
                for g in GroupElement::ALL {
                    let sign = if g.is_rotation() { 1.0 } else { -1.0 };
                    matrices[g.index()] = Some(one(re(sign)));
                }
                (1, GroupElement::ALL.to_vec())
            }
            IrrepLabel::TwoDim => {
                let m = |a, b, c, d| {
                    ComplexMatrix::new(2, 2, vec![a, b, c, d]).unwrap()
                };
                matrices[E.index()] = Some(m(re(1.0), zero, zero, re(1.0)));
                matrices[C.index()] = Some(m(wb, zero, zero, w));
                matrices[C2.index()] = Some(m(w, zero, zero, wb));
                matrices[T.index()] = Some(m(zero, re(1.0), re(1.0), zero));
                matrices[Tc.index()] = Some(m(zero, w, wb, zero));
                matrices[Tc2.index()] = Some(m(zero, wb, w, zero));
                (2, GroupElement::ALL.to_vec())
            }
            IrrepLabel::Z3Omega => {
                matrices[E.index()] = Some(one(re(1.0)));
                matrices[C.index()] = Some(one(w));
                matrices[C2.index()] = Some(one(wb));
                (1, vec![E, C, C2])
            }
        };
        Self {
            label,
            dimension,
            domain,
            matrices,
        }
    }

    /// The representation matrix of `g`, or a domain error.
    pub fn matrix(&self, g: GroupElement) -> Result<&ComplexMatrix> {
        self.matrices[g.index()]
            .as_ref()
            .ok_or_else(|| Error::OutsideIrrepDomain {
                element: g.to_string(),
                irrep: self.label.to_string(),
            })
    }

    /// χ(g) = Tr Γ(g).
    pub fn character(&self, g: GroupElement) -> Result<Complex64> {
        Ok(self.matrix(g)?.trace())
    }

    pub fn contains(&self, g: GroupElement) -> bool {
        self.domain.contains(&g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Hardcoded Cayley table in canonical order; the generated law must match.
    const CAYLEY: [[GroupElement; 6]; 6] = [
        [E, C, C2, T, Tc, Tc2],
        [C, C2, E, Tc2, T, Tc],
        [C2, E, C, Tc, Tc2, T],
        [T, Tc, Tc2, E, C, C2],
        [Tc, Tc2, T, C2, E, C],
        [Tc2, T, Tc, C, C2, E],
    ];

    #[test]
    fn generated_law_matches_hardcoded_table() {
        for a in GroupElement::ALL {
            for b in GroupElement::ALL {
                assert_eq!(
                    a.multiply(b),
                    CAYLEY[a.index()][b.index()],
                    "{a}·{b}"
                );
            }
        }
    }

    #[test]
    fn generator_relations() {
        assert_eq!(C.multiply(C), C2);
        assert_eq!(C.multiply(C).multiply(C), E);
        assert_eq!(T.multiply(T), E);
        // The defining relation ct = tc².
        assert_eq!(C.multiply(T), Tc2);
    }

    #[test]
    fn non_commutativity_witnessed() {
        assert_ne!(C.multiply(T), T.multiply(C));
    }

    #[test]
    fn cayley_table_is_latin_square() {
        for a in GroupElement::ALL {
            let mut row: Vec<_> = GroupElement::ALL.iter().map(|&b| a.multiply(b)).collect();
            let mut col: Vec<_> = GroupElement::ALL.iter().map(|&b| b.multiply(a)).collect();
            row.sort();
            col.sort();
            assert_eq!(row, GroupElement::ALL.to_vec());
            assert_eq!(col, GroupElement::ALL.to_vec());
        }
    }

    #[test]
    fn associativity_full() {
        for a in GroupElement::ALL {
            for b in GroupElement::ALL {
                for c in GroupElement::ALL {
                    assert_eq!(a.multiply(b).multiply(c), a.multiply(b.multiply(c)));
                }
            }
        }
    }

    #[test]
    fn inverses() {
        assert_eq!(E.inverse(), E);
        assert_eq!(C.inverse(), C2);
        assert_eq!(Tc.inverse(), Tc);
        for a in GroupElement::ALL {
            assert_eq!(a.multiply(a.inverse()), E);
            assert_eq!(a.inverse().multiply(a), E);
            // Brute-force check against the table.
            let found = GroupElement::ALL
                .iter()
                .copied()
                .find(|&b| a.multiply(b) == E)
                .unwrap();
            assert_eq!(found, a.inverse());
        }
    }

    #[test]
    fn conjugacy_classes_partition_the_group() {
        let ce = ConjugacyClassData::class_e();
        let cc = ConjugacyClassData::class_c();
        let ct = ConjugacyClassData::class_t();
        assert_eq!(ce.elements, vec![E]);
        assert_eq!(cc.elements, vec![C, C2]);
        assert_eq!(ct.elements, vec![T, Tc, Tc2]);
        let mut all: Vec<_> = ce
            .elements
            .iter()
            .chain(&cc.elements)
            .chain(&ct.elements)
            .copied()
            .collect();
        all.sort();
        assert_eq!(all, GroupElement::ALL.to_vec());
    }

    #[test]
    fn class_invariants() {
        for class in [
            ConjugacyClassData::class_e(),
            ConjugacyClassData::class_c(),
            ConjugacyClassData::class_t(),
        ] {
            assert_eq!(class.elements.len() * class.normalizer.len(), 6);
            assert_eq!(class.coset_reps.len(), class.elements.len());
            for (i, &q) in class.coset_reps.iter().enumerate() {
                assert_eq!(class.base().conjugate_by(q), class.elements[i]);
            }
        }
        let cc = ConjugacyClassData::class_c();
        assert_eq!(cc.normalizer, vec![E, C, C2]);
    }

    #[test]
    fn irreps_are_unitary_homomorphisms() {
        for label in [
            IrrepLabel::Trivial,
            IrrepLabel::Sign,
            IrrepLabel::TwoDim,
            IrrepLabel::Z3Omega,
        ] {
            let r = Irrep::new(label);
            for &g in &r.domain {
                assert!(r.matrix(g).unwrap().unitarity_residual() < 1e-12);
            }
            for &g in &r.domain {
                for &h in &r.domain {
                    let gh = g.multiply(h);
                    if !r.contains(gh) {
                        continue; // ℤ₃ domain is closed, so this never triggers
                    }
                    let lhs = r.matrix(g).unwrap().matmul(r.matrix(h).unwrap());
                    assert!(
                        lhs.approx_eq(r.matrix(gh).unwrap(), 1e-12),
                        "{label:?}: Γ({g})Γ({h}) ≠ Γ({gh})"
                    );
                }
            }
        }
    }

    #[test]
    fn two_dim_irrep_table_entries() {
        let r = Irrep::new(IrrepLabel::TwoDim);
        let m = r.matrix(C).unwrap();
        assert!((m[(0, 0)] - omega_bar()).norm() < 1e-15);
        assert!((m[(1, 1)] - omega()).norm() < 1e-15);
        // Γ(c)·Γ(t) must be the table entry for tc² (since ct = tc²).
        let prod = r.matrix(C).unwrap().matmul(r.matrix(T).unwrap());
        assert!(prod.approx_eq(r.matrix(Tc2).unwrap(), 1e-12));
    }

    #[test]
    fn characters() {
        let two = Irrep::new(IrrepLabel::TwoDim);
        assert!((two.character(E).unwrap() - Complex64::new(2.0, 0.0)).norm() < 1e-15);
        // Trace of diag(ω̄, ω) is ω + ω̄ = −1.
        assert!((two.character(C).unwrap() - Complex64::new(-1.0, 0.0)).norm() < 1e-15);

        let g = Irrep::new(IrrepLabel::Z3Omega);
        assert!((g.character(C).unwrap() - omega()).norm() < 1e-15);
        assert!(g.character(T).is_err());

        let trivial = Irrep::new(IrrepLabel::Trivial);
        for gel in GroupElement::ALL {
            assert!((trivial.character(gel).unwrap() - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        }
    }

    #[test]
    fn element_serialization() {
        for g in GroupElement::ALL {
            let s = serde_json::to_string(&g).unwrap();
            let back: GroupElement = serde_json::from_str(&s).unwrap();
            assert_eq!(back, g);
        }
        assert_eq!(serde_json::to_string(&Tc2).unwrap(), "\"tc2\"");
    }
}
