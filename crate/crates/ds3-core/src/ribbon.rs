//! Ribbon-operator calculus for the {A, B, G} anyons of the D(S₃) model.
//!
//! Single-site building blocks are the translation operators L^h and the
//! charge projectors T^g on the 6-dimensional group Hilbert space, composed
//! into group ribbon operators F^{h,g} = L^h·T^g = |hg⟩⟨g|. String operators
//! for the Abelian anyons and the minimal G ribbon are weighted sums of such
//! factors; the basis transforms produce those sums from character data.
//!
//! Products of ribbon operators on two crossing ribbons are kept symbolic as
//! a [`RibbonWord`] so the exchange relation
//!
//! ```text
//! F^{h,g}_{ρ₂} F^{k,l}_{ρ₁}  =  F^{k, l·ḡ·h̄·g}_{ρ₁} F^{h,g}_{ρ₂}
//! ```
//!
//! can be applied term by term before the word is collapsed onto a single
//! site. Comparing the collapsed forward and reversed products per fusion
//! channel yields the exchange (R) matrix, and F·R²·F⁻¹ the braiding matrix.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::group::{ConjugacyClassData, GroupElement, Irrep};
use crate::numerics::{eig_hermitian, omega, omega_bar, ComplexMatrix};
use crate::{Error, Result};

/// Operator on the 6-dimensional qudit in basis (|e⟩,|c⟩,|c²⟩,|t⟩,|tc⟩,|tc²⟩).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuditOperator(ComplexMatrix);

impl QuditOperator {
    pub fn new(m: ComplexMatrix) -> Result<Self> {
        if m.rows() != 6 || m.cols() != 6 {
            return Err(Error::DimMismatch(format!(
                "qudit operator must be 6x6, got {}x{}",
                m.rows(),
                m.cols()
            )));
        }
        m.check_finite()?;
        Ok(Self(m))
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.0
    }

    /// Top-left 3×3 block, the restriction to the rotation states.
    pub fn qutrit_block(&self) -> QutritOperator {
        QutritOperator(self.0.block(0, 0, 3, 3))
    }
}

/// Operator on the qutrit spanned by (|e⟩,|c⟩,|c²⟩).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QutritOperator(ComplexMatrix);

impl QutritOperator {
    pub fn new(m: ComplexMatrix) -> Result<Self> {
        if m.rows() != 3 || m.cols() != 3 {
            return Err(Error::DimMismatch(format!(
                "qutrit operator must be 3x3, got {}x{}",
                m.rows(),
                m.cols()
            )));
        }
        m.check_finite()?;
        Ok(Self(m))
    }

    pub fn identity() -> Self {
        Self(ComplexMatrix::identity(3))
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.0
    }
}

/// Whether a triangle operator faces along or against the oriented edge.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum Orientation {
    Along,
    Away,
}

/// Left-translation operator: along → Σ_g |hg⟩⟨g|, away → Σ_g |gh⁻¹⟩⟨g|.
pub fn l_operator(h: GroupElement, orientation: Orientation) -> QuditOperator {
    let mut m = ComplexMatrix::zeros(6, 6);
    for g in GroupElement::ALL {
        let target = match orientation {
            Orientation::Along => h.multiply(g),
            Orientation::Away => g.multiply(h.inverse()),
        };
        m[(target.index(), g.index())] = Complex64::new(1.0, 0.0);
    }
    QuditOperator(m)
}

/// Charge projector: along → |g⟩⟨g|, away → |g⟩⟨g⁻¹|.
pub fn t_operator(g: GroupElement, orientation: Orientation) -> QuditOperator {
    let mut m = ComplexMatrix::zeros(6, 6);
    let col = match orientation {
        Orientation::Along => g,
        Orientation::Away => g.inverse(),
    };
    m[(g.index(), col.index())] = Complex64::new(1.0, 0.0);
    QuditOperator(m)
}

/// Group ribbon operator F^{h,g} = L^h·T^g = |hg⟩⟨g| (both triangles along).
pub fn f_hg(h: GroupElement, g: GroupElement) -> QuditOperator {
    QuditOperator(
        l_operator(h, Orientation::Along)
            .matrix()
            .matmul(t_operator(g, Orientation::Along).matrix()),
    )
}

/// The two Abelian string operators.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum StringLabel {
    A,
    B,
}

/// F^A = 1 and F^B = diag(1,1,1,−1,−1,−1) on the qudit.
pub fn string_operator(label: StringLabel) -> QuditOperator {
    let mut m = ComplexMatrix::identity(6);
    if label == StringLabel::B {
        for g in GroupElement::ALL {
            if !g.is_rotation() {
                m[(g.index(), g.index())] = Complex64::new(-1.0, 0.0);
            }
        }
    }
    QuditOperator(m)
}

/// Restriction of a string operator to the qutrit block (both are 1₃).
pub fn string_operator_qutrit(label: StringLabel) -> QutritOperator {
    string_operator(label).qutrit_block()
}

/// Ribbon path labels used by the symbolic calculus.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum RibbonId {
    Rho0,
    Rho1,
    Rho2,
}

impl RibbonId {
    pub fn as_str(self) -> &'static str {
        match self {
            RibbonId::Rho0 => "rho0",
            RibbonId::Rho1 => "rho1",
            RibbonId::Rho2 => "rho2",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        [RibbonId::Rho0, RibbonId::Rho1, RibbonId::Rho2]
            .into_iter()
            .find(|r| r.as_str() == s)
    }
}

impl fmt::Display for RibbonId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One weighted group-ribbon factor coeff·F^{flux,charge} on a labelled ribbon.
#[derive(Clone, Copy, Debug)]
pub struct RibbonTerm {
    pub coeff: Complex64,
    pub ribbon: RibbonId,
    pub flux: GroupElement,
    pub charge: GroupElement,
}

impl RibbonTerm {
    pub fn new(
        coeff: Complex64,
        ribbon: RibbonId,
        flux: GroupElement,
        charge: GroupElement,
    ) -> Self {
        Self {
            coeff,
            ribbon,
            flux,
            charge,
        }
    }
}

/// An ordered product of unit-weight factors with an overall coefficient;
/// the leftmost factor is applied last.
#[derive(Clone, Debug)]
pub struct RibbonProduct {
    pub coeff: Complex64,
    pub factors: Vec<(RibbonId, GroupElement, GroupElement)>,
}

/// A formal complex-weighted sum of ordered ribbon-factor products.
///
/// Built either from a single formal sum (one-factor products) or as the
/// fully expanded product of two formal sums on distinct ribbons.
#[derive(Clone, Debug, Default)]
pub struct RibbonWord {
    pub products: Vec<RibbonProduct>,
}

impl RibbonWord {
    /// Word with one factor per product: the formal sum itself.
    pub fn from_sum(terms: &[RibbonTerm]) -> Self {
        let products = terms
            .iter()
            .map(|t| RibbonProduct {
                coeff: t.coeff,
                factors: vec![(t.ribbon, t.flux, t.charge)],
            })
            .collect();
        Self { products }
    }

    /// Expanded product (Σ left)·(Σ right) with the left factor applied last.
    /// The ribbon labels of the inputs are overridden by `left_ribbon` and
    /// `right_ribbon`.
    pub fn two_ribbon_product(
        left: &[RibbonTerm],
        left_ribbon: RibbonId,
        right: &[RibbonTerm],
        right_ribbon: RibbonId,
    ) -> Self {
        let mut products = Vec::with_capacity(left.len() * right.len());
        for a in left {
            for b in right {
                products.push(RibbonProduct {
                    coeff: a.coeff * b.coeff,
                    factors: vec![
                        (left_ribbon, a.flux, a.charge),
                        (right_ribbon, b.flux, b.charge),
                    ],
                });
            }
        }
        Self { products }
    }

    /// Σ over products of |coeff|; the exchange rewrite must preserve this.
    pub fn coefficient_l1_mass(&self) -> f64 {
        self.products.iter().map(|p| p.coeff.norm()).sum()
    }

    /// Merges products with identical factor sequences, dropping exact zeros.
    pub fn collect_like_terms(&self) -> Self {
        let mut map: BTreeMap<Vec<(RibbonId, usize, usize)>, Complex64> = BTreeMap::new();
        for p in &self.products {
            let key: Vec<_> = p
                .factors
                .iter()
                .map(|&(r, h, g)| (r, h.index(), g.index()))
                .collect();
            *map.entry(key).or_insert(Complex64::new(0.0, 0.0)) += p.coeff;
        }
        let products = map
            .into_iter()
            .filter(|(_, c)| c.norm() > 1e-15)
            .map(|(key, coeff)| RibbonProduct {
                coeff,
                factors: key
                    .iter()
                    .map(|&(r, h, g)| {
                        (
                            r,
                            GroupElement::from_index(h).unwrap(),
                            GroupElement::from_index(g).unwrap(),
                        )
                    })
                    .collect(),
            })
            .collect();
        Self { products }
    }

    /// Identifies all ribbons with a single site and materializes the word as
    /// a qutrit operator, multiplying each product's factors leftmost-last.
    pub fn collapse_to_site(&self) -> Result<QutritOperator> {
        let mut acc = ComplexMatrix::zeros(3, 3);
        for p in &self.products {
            let mut m = ComplexMatrix::identity(3);
            for &(_, flux, charge) in &p.factors {
                m = m.matmul(qutrit_factor_matrix(flux, charge)?.matrix());
            }
            acc = acc.add(&m.scale(p.coeff));
        }
        QutritOperator::new(acc)
    }
}

// RibbonWord serializes as a list of factor lists; each factor is
// {coeff: [re, im], ribbon: "rho1", h: "c", g: "e"}. The product coefficient
// rides on the first factor; the remaining factors carry coeff 1.
#[derive(Serialize, Deserialize)]
struct FactorRepr {
    coeff: [f64; 2],
    ribbon: String,
    h: GroupElement,
    g: GroupElement,
}

impl Serialize for RibbonWord {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let lists: Vec<Vec<FactorRepr>> = self
            .products
            .iter()
            .map(|p| {
                p.factors
                    .iter()
                    .enumerate()
                    .map(|(i, &(r, h, g))| {
                        let c = if i == 0 {
                            p.coeff
                        } else {
                            Complex64::new(1.0, 0.0)
                        };
                        FactorRepr {
                            coeff: [c.re, c.im],
                            ribbon: r.as_str().to_string(),
                            h,
                            g,
                        }
                    })
                    .collect()
            })
            .collect();
        lists.serialize(s)
    }
}

impl<'de> Deserialize<'de> for RibbonWord {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let lists: Vec<Vec<FactorRepr>> = Vec::deserialize(d)?;
        let mut products = Vec::with_capacity(lists.len());
        for list in lists {
            let mut coeff = Complex64::new(1.0, 0.0);
            let mut factors = Vec::with_capacity(list.len());
            for f in list {
                coeff *= Complex64::new(f.coeff[0], f.coeff[1]);
                let ribbon = RibbonId::parse(&f.ribbon).ok_or_else(|| {
                    serde::de::Error::custom(format!("unknown ribbon {:?}", f.ribbon))
                })?;
                factors.push((ribbon, f.h, f.g));
            }
            products.push(RibbonProduct { coeff, factors });
        }
        Ok(RibbonWord { products })
    }
}

/// Single-site qutrit form of F^{flux,charge} with hermiticity imposed:
/// flux e acts as the projector |g⟩⟨g|, flux c as |cg⟩⟨g|, and flux c² as
/// the adjoint (F^{c,g})† = |g⟩⟨cg|. Fluxes or charges outside the rotation
/// subgroup have no single-qutrit form.
pub fn qutrit_factor_matrix(flux: GroupElement, charge: GroupElement) -> Result<QutritOperator> {
    if !flux.is_rotation() || !charge.is_rotation() {
        return Err(Error::InvalidWord(format!(
            "factor F^{{{flux},{charge}}} does not act on the qutrit"
        )));
    }
    let g = charge.index();
    let cg = GroupElement::C.multiply(charge).index();
    let mut m = ComplexMatrix::zeros(3, 3);
    match flux {
        GroupElement::E => m[(g, g)] = Complex64::new(1.0, 0.0),
        GroupElement::C => m[(cg, g)] = Complex64::new(1.0, 0.0),
        GroupElement::C2 => m[(g, cg)] = Complex64::new(1.0, 0.0),
        _ => unreachable!(),
    }
    QutritOperator::new(m)
}

/// Abelian basis transform Σ_g χ̄(g)·F^{e,g} for a one-dimensional character
/// of the full group.
pub fn abelian_transform(chi: &Irrep) -> Result<Vec<RibbonTerm>> {
    if chi.dimension != 1 || chi.domain.len() != 6 {
        return Err(Error::NotOneDimensional(chi.label.to_string()));
    }
    GroupElement::ALL
        .iter()
        .map(|&g| {
            Ok(RibbonTerm::new(
                chi.character(g)?.conj(),
                RibbonId::Rho0,
                GroupElement::E,
                g,
            ))
        })
        .collect()
}

/// Non-Abelian basis transform with the internal (u, v) indices traced out:
///
/// ```text
/// Σ_i Σ_{n ∈ N_C} χ̄_R(n) · F^{c_i⁻¹, q_i·n·q_i⁻¹}
/// ```
///
/// The overall n_R/|N_C| normalization is dropped; the fusion and exchange
/// identities all hold in this convention. Terms with zero character weight
/// are omitted, and the output is sorted by (flux, charge).
pub fn nonabelian_transform(class: &ConjugacyClassData, rep: &Irrep) -> Result<Vec<RibbonTerm>> {
    for &n in &class.normalizer {
        if !rep.contains(n) {
            return Err(Error::OutsideIrrepDomain {
                element: n.to_string(),
                irrep: rep.label.to_string(),
            });
        }
    }
    let mut map: BTreeMap<(usize, usize), Complex64> = BTreeMap::new();
    for (i, &q) in class.coset_reps.iter().enumerate() {
        let flux = class.elements[i].inverse();
        for &n in &class.normalizer {
            let charge = n.conjugate_by(q);
            *map.entry((flux.index(), charge.index()))
                .or_insert(Complex64::new(0.0, 0.0)) += rep.character(n)?.conj();
        }
    }
    Ok(map
        .into_iter()
        .filter(|(_, c)| c.norm() > 1e-15)
        .map(|((h, g), coeff)| {
            RibbonTerm::new(
                coeff,
                RibbonId::Rho0,
                GroupElement::from_index(h).unwrap(),
                GroupElement::from_index(g).unwrap(),
            )
        })
        .collect())
}

/// Materializes a formal sum on the 6-dimensional qudit: Σ coeff·|hg⟩⟨g|.
pub fn materialize_qudit(terms: &[RibbonTerm]) -> QuditOperator {
    let mut acc = ComplexMatrix::zeros(6, 6);
    for t in terms {
        acc = acc.add(&f_hg(t.flux, t.charge).matrix().scale(t.coeff));
    }
    QuditOperator(acc)
}

/// Materializes a formal sum on the qutrit with imposed hermiticity.
pub fn materialize_qutrit(terms: &[RibbonTerm]) -> Result<QutritOperator> {
    let mut acc = ComplexMatrix::zeros(3, 3);
    for t in terms {
        acc = acc.add(
            &qutrit_factor_matrix(t.flux, t.charge)?
                .matrix()
                .scale(t.coeff),
        );
    }
    QutritOperator::new(acc)
}

/// The six weighted factors of the G ribbon:
/// F^{c,e} + ω F^{c,c} + ω̄ F^{c,c²} + F^{c²,e} + ω̄ F^{c²,c} + ω F^{c²,c²}.
pub fn g_ribbon_terms() -> Vec<RibbonTerm> {
    use GroupElement::{C, C2, E};
    let one = Complex64::new(1.0, 0.0);
    let w = omega();
    let wb = omega_bar();
    vec![
        RibbonTerm::new(one, RibbonId::Rho0, C, E),
        RibbonTerm::new(w, RibbonId::Rho0, C, C),
        RibbonTerm::new(wb, RibbonId::Rho0, C, C2),
        RibbonTerm::new(one, RibbonId::Rho0, C2, E),
        RibbonTerm::new(wb, RibbonId::Rho0, C2, C),
        RibbonTerm::new(w, RibbonId::Rho0, C2, C2),
    ]
}

/// The minimal hermiticity-imposed G ribbon operator on the qutrit:
/// |c⟩⟨e| + ω|c²⟩⟨c| + ω̄|e⟩⟨c²| + h.c.
pub fn minimal_g_ribbon() -> QutritOperator {
    materialize_qutrit(&g_ribbon_terms()).expect("G ribbon acts on the qutrit")
}

/// Coefficients of a qutrit operator over the fusion-channel span
/// {F^A|₃, F^B|₃, F^G}. Because the A and B restrictions coincide on the
/// qutrit, the identity component is split evenly between them (the
/// minimum-norm solution); the G component is the orthogonal projection
/// onto F^G. `residual_norm` measures whatever lies outside the span.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct AnyonDecomposition {
    pub coeff_a: Complex64,
    pub coeff_b: Complex64,
    pub coeff_g: Complex64,
    pub residual_norm: f64,
}

impl AnyonDecomposition {
    pub fn coeffs(&self) -> [Complex64; 3] {
        [self.coeff_a, self.coeff_b, self.coeff_g]
    }
}

/// Decomposes a·b over the fusion channels by projection onto the
/// orthogonalized span of {1₃, F^G} (Tr F^G = 0, ‖F^G‖_F² = 6).
pub fn fuse(a: &QutritOperator, b: &QutritOperator) -> AnyonDecomposition {
    let p = a.matrix().matmul(b.matrix());
    let fg = minimal_g_ribbon();
    let id_component = p.trace() / Complex64::new(3.0, 0.0);
    let g_component = fg.matrix().adjoint().matmul(&p).trace() / Complex64::new(6.0, 0.0);
    let fit = ComplexMatrix::identity(3)
        .scale(id_component)
        .add(&fg.matrix().scale(g_component));
    let residual_norm = p.sub(&fit).frobenius_norm();
    AnyonDecomposition {
        coeff_a: id_component / 2.0,
        coeff_b: id_component / 2.0,
        coeff_g: g_component,
        residual_norm,
    }
}

/// Applies the exchange relation to every product of a two-ribbon word:
/// the right factor moves left with its charge conjugated,
/// (h,g)·(k,l) → (k, l·ḡ·h̄·g)·(h,g). Like terms are collected afterwards.
pub fn exchange_rewrite(word: &RibbonWord) -> Result<RibbonWord> {
    let mut pair: Option<(RibbonId, RibbonId)> = None;
    for p in &word.products {
        if p.factors.len() != 2 {
            return Err(Error::InvalidWord(format!(
                "exchange needs exactly two factors per product, got {}",
                p.factors.len()
            )));
        }
        let (left, right) = (p.factors[0].0, p.factors[1].0);
        if left == right {
            return Err(Error::InvalidWord(format!(
                "exchange needs distinct ribbons, both factors on {left}"
            )));
        }
        match pair {
            None => pair = Some((left, right)),
            Some(expected) if expected == (left, right) => {}
            Some(expected) => {
                return Err(Error::InvalidWord(format!(
                    "inconsistent ribbon pair: expected ({}, {}), got ({left}, {right})",
                    expected.0, expected.1
                )))
            }
        }
    }

    let products = word
        .products
        .iter()
        .map(|p| {
            let (rib_l, h, g) = p.factors[0];
            let (rib_r, k, l) = p.factors[1];
            let new_charge = l.multiply(g.inverse()).multiply(h.inverse()).multiply(g);
            RibbonProduct {
                coeff: p.coeff,
                factors: vec![(rib_r, k, new_charge), (rib_l, h, g)],
            }
        })
        .collect();
    Ok(RibbonWord { products }.collect_like_terms())
}

/// The reversed product F^G_{ρ₂}·F^G_{ρ₁}: expands the 36-term word,
/// rewrites it with the exchange relation, collapses to one site and
/// materializes. Equals ω̄(F^A|₃ + F^B|₃) + ω F^G = 2ω̄·1₃ + ω·F^G.
pub fn reversed_g_product() -> QutritOperator {
    let sum = g_ribbon_terms();
    let word = RibbonWord::two_ribbon_product(&sum, RibbonId::Rho2, &sum, RibbonId::Rho1);
    let rewritten = exchange_rewrite(&word).expect("well-formed two-ribbon word");
    rewritten
        .collapse_to_site()
        .expect("G factors act on the qutrit")
}

/// The forward product F^G·F^G (direct square of the minimal ribbon); the
/// fusion identity says this equals F^A|₃ + F^B|₃ + F^G.
pub fn forward_g_product() -> QutritOperator {
    let fg = minimal_g_ribbon();
    QutritOperator::new(fg.matrix().matmul(fg.matrix())).unwrap()
}

/// Channel-wise ratio of the reversed to the forward decomposition:
/// diag(revᵢ/fwdᵢ) in the (A, B, G) basis.
pub fn extract_r_matrix(
    forward: &AnyonDecomposition,
    reversed: &AnyonDecomposition,
) -> Result<ComplexMatrix> {
    let names = ["A", "B", "G"];
    let fwd = forward.coeffs();
    let rev = reversed.coeffs();
    let mut diag = Vec::with_capacity(3);
    for i in 0..3 {
        if fwd[i].norm() < 1e-12 {
            return Err(Error::UndefinedFusionChannel(names[i]));
        }
        diag.push(rev[i] / fwd[i]);
    }
    Ok(ComplexMatrix::diag(&diag))
}

/// Braiding matrix B = F·R²·F⁻¹ for a unitary F and diagonal R.
pub fn braiding_matrix(f: &ComplexMatrix, r: &ComplexMatrix) -> Result<ComplexMatrix> {
    if !f.is_square() || f.rows() != r.rows() || r.rows() != r.cols() {
        return Err(Error::DimMismatch(format!(
            "braiding needs square F and R of equal size, got {}x{} and {}x{}",
            f.rows(),
            f.cols(),
            r.rows(),
            r.cols()
        )));
    }
    let residual = f.unitarity_residual();
    if residual > 1e-9 {
        return Err(Error::NotUnitary { residual });
    }
    if !r.is_diagonal(1e-12) {
        return Err(Error::InvalidParameter("R matrix must be diagonal".into()));
    }
    Ok(f.matmul(&r.matmul(r)).matmul(&f.adjoint()))
}

/// Fusion matrix F^G_{GGG} in the (A, B, G) channel basis.
pub fn f_matrix_ggg() -> ComplexMatrix {
    let s = 2f64.sqrt();
    let re = |x: f64| Complex64::new(x, 0.0);
    ComplexMatrix::from_rows(&[
        vec![re(0.5), re(0.5), re(s / 2.0)],
        vec![re(0.5), re(0.5), re(-s / 2.0)],
        vec![re(s / 2.0), re(-s / 2.0), re(0.0)],
    ])
    .unwrap()
}

/// Exchange matrix R^{GG} = diag(ω̄, ω̄, ω).
pub fn r_matrix_gg() -> ComplexMatrix {
    ComplexMatrix::diag(&[omega_bar(), omega_bar(), omega()])
}

/// Fusion matrix F^Φ_{ΦΦΦ} in the (1, Λ, Φ) channel basis.
pub fn f_matrix_phi() -> ComplexMatrix {
    let s = 2f64.sqrt();
    let re = |x: f64| Complex64::new(x, 0.0);
    ComplexMatrix::from_rows(&[
        vec![re(0.5), re(0.5), re(-s / 2.0)],
        vec![re(0.5), re(0.5), re(s / 2.0)],
        vec![re(-s / 2.0), re(s / 2.0), re(0.0)],
    ])
    .unwrap()
}

/// Exchange matrix R^{ΦΦ} = diag(1, −1, 1).
pub fn r_matrix_phi() -> ComplexMatrix {
    let re = |x: f64| Complex64::new(x, 0.0);
    ComplexMatrix::diag(&[re(1.0), re(-1.0), re(1.0)])
}

/// The eight anyon species of the model.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub enum AnyonLabel {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
    H,
}

impl AnyonLabel {
    pub const ALL: [AnyonLabel; 8] = [
        AnyonLabel::A,
        AnyonLabel::B,
        AnyonLabel::C,
        AnyonLabel::D,
        AnyonLabel::E,
        AnyonLabel::F,
        AnyonLabel::G,
        AnyonLabel::H,
    ];
}

impl fmt::Display for AnyonLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// Fusion rules of the full model, carried as data for all eight species.
/// Output is sorted by label; the table is symmetric and A is the identity.
pub fn fusion_lookup(a: AnyonLabel, b: AnyonLabel) -> Vec<AnyonLabel> {
    use AnyonLabel::*;
    let (x, y) = if a <= b { (a, b) } else { (b, a) };
    let mut out = match (x, y) {
        (A, other) => vec![other],
        (B, B) => vec![A],
        (B, C) => vec![C],
        (B, D) => vec![E],
        (B, E) => vec![D],
        (B, F) => vec![F],
        (B, G) => vec![G],
        (B, H) => vec![H],
        (C, C) => vec![A, B, C],
        (C, D) | (C, E) => vec![D, E],
        (C, F) => vec![G, H],
        (C, G) => vec![F, H],
        (C, H) => vec![F, G],
        (D, D) | (E, E) => vec![A, C, F, G, H],
        (D, E) => vec![B, C, F, G, H],
        (D, F) | (D, G) | (D, H) | (E, F) | (E, G) | (E, H) => vec![D, E],
        (F, F) => vec![A, B, F],
        (F, G) => vec![C, H],
        (F, H) => vec![C, G],
        (G, G) => vec![A, B, G],
        (G, H) => vec![C, F],
        (H, H) => vec![A, B, H],
        _ => unreachable!("ordered pairs are exhaustive"),
    };
    out.sort();
    out
}

/// Eigenvalues of a Hermitian qutrit operator, ascending.
pub fn hermitian_spectrum(op: &QutritOperator) -> Result<Vec<f64>> {
    Ok(eig_hermitian(op.matrix())?.eigenvalues)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::IrrepLabel;
    use GroupElement::{C, C2, E, T, Tc2};

    fn c64(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn ket_bra(row: GroupElement, col: GroupElement) -> ComplexMatrix {
        let mut m = ComplexMatrix::zeros(6, 6);
        m[(row.index(), col.index())] = c64(1.0, 0.0);
        m
    }

    fn expected_fg() -> ComplexMatrix {
        let w = omega();
        let wb = omega_bar();
        ComplexMatrix::from_rows(&[
            vec![c64(0.0, 0.0), c64(1.0, 0.0), wb],
            vec![c64(1.0, 0.0), c64(0.0, 0.0), wb],
            vec![w, w, c64(0.0, 0.0)],
        ])
        .unwrap()
    }

    fn basis_vec(g: GroupElement) -> Vec<Complex64> {
        let mut v = vec![c64(0.0, 0.0); 6];
        v[g.index()] = c64(1.0, 0.0);
        v
    }

    fn one_hot_index(v: &[Complex64]) -> usize {
        let mut idx = None;
        for (i, z) in v.iter().enumerate() {
            if z.norm() > 0.5 {
                assert!(idx.is_none());
                assert!((z - c64(1.0, 0.0)).norm() < 1e-14);
                idx = Some(i);
            }
        }
        idx.expect("one-hot vector")
    }

    #[test]
    fn l_operator_examples() {
        assert!(l_operator(E, Orientation::Along)
            .matrix()
            .approx_eq(&ComplexMatrix::identity(6), 0.0));
        // Brute force against the group law for both orientations.
        for h in GroupElement::ALL {
            let along = l_operator(h, Orientation::Along);
            let away = l_operator(h, Orientation::Away);
            for g in GroupElement::ALL {
                let va = along.matrix().matvec(&basis_vec(g));
                assert_eq!(one_hot_index(&va), h.multiply(g).index());
                let vb = away.matrix().matvec(&basis_vec(g));
                assert_eq!(one_hot_index(&vb), g.multiply(h.inverse()).index());
            }
        }
        // (c, along) sends |t⟩ to |ct⟩ = |tc²⟩.
        let v = l_operator(C, Orientation::Along)
            .matrix()
            .matvec(&basis_vec(T));
        assert_eq!(one_hot_index(&v), Tc2.index());
    }

    #[test]
    fn t_operator_examples() {
        assert!(t_operator(E, Orientation::Along)
            .matrix()
            .approx_eq(&ket_bra(E, E), 0.0));
        assert!(t_operator(C, Orientation::Along)
            .matrix()
            .approx_eq(&ket_bra(C, C), 0.0));
        // Away orientation pairs |c⟩ with ⟨c⁻¹| = ⟨c²|.
        assert!(t_operator(C, Orientation::Away)
            .matrix()
            .approx_eq(&ket_bra(C, C2), 0.0));
    }

    #[test]
    fn f_hg_examples() {
        assert!(f_hg(C, E).matrix().approx_eq(&ket_bra(C, E), 0.0));
        assert!(f_hg(C, C).matrix().approx_eq(&ket_bra(C2, C), 0.0));
        for g in GroupElement::ALL {
            assert!(f_hg(E, g).matrix().approx_eq(&ket_bra(g, g), 0.0));
        }
    }

    #[test]
    fn string_operators() {
        let a = string_operator(StringLabel::A);
        let b = string_operator(StringLabel::B);
        assert!(a.matrix().approx_eq(&ComplexMatrix::identity(6), 0.0));
        let expected_b = ComplexMatrix::diag(&[
            c64(1.0, 0.0),
            c64(1.0, 0.0),
            c64(1.0, 0.0),
            c64(-1.0, 0.0),
            c64(-1.0, 0.0),
            c64(-1.0, 0.0),
        ]);
        assert!(b.matrix().approx_eq(&expected_b, 0.0));
        assert!(a.matrix().is_unitary(1e-12));
        assert!(b.matrix().is_unitary(1e-12));
        // Their sum is twice the qutrit projector.
        let sum = a.matrix().add(b.matrix());
        let mut proj = ComplexMatrix::zeros(6, 6);
        for g in [E, C, C2] {
            proj[(g.index(), g.index())] = c64(2.0, 0.0);
        }
        assert!(sum.approx_eq(&proj, 0.0));
    }

    #[test]
    fn abelian_transform_terms_and_materialization() {
        let trivial = abelian_transform(&Irrep::new(IrrepLabel::Trivial)).unwrap();
        assert_eq!(trivial.len(), 6);
        for t in &trivial {
            assert_eq!(t.flux, E);
            assert!((t.coeff - c64(1.0, 0.0)).norm() < 1e-15);
        }
        assert!(materialize_qudit(&trivial)
            .matrix()
            .approx_eq(&ComplexMatrix::identity(6), 1e-15));

        let sign = abelian_transform(&Irrep::new(IrrepLabel::Sign)).unwrap();
        for t in &sign {
            let expected = if t.charge.is_rotation() { 1.0 } else { -1.0 };
            assert!((t.coeff - c64(expected, 0.0)).norm() < 1e-15);
        }
        assert!(materialize_qudit(&sign)
            .matrix()
            .approx_eq(string_operator(StringLabel::B).matrix(), 1e-15));

        // Two-dimensional input is rejected.
        assert!(abelian_transform(&Irrep::new(IrrepLabel::TwoDim)).is_err());
        // So is a character not defined on the whole group.
        assert!(abelian_transform(&Irrep::new(IrrepLabel::Z3Omega)).is_err());
    }

    #[test]
    fn nonabelian_transform_phi_coefficients() {
        let terms = nonabelian_transform(
            &ConjugacyClassData::class_e(),
            &Irrep::new(IrrepLabel::TwoDim),
        )
        .unwrap();
        // 2F^{e,e} − F^{e,c} − F^{e,c²}; the zero-character reflection terms drop.
        assert_eq!(terms.len(), 3);
        let expected = [(E, E, 2.0), (E, C, -1.0), (E, C2, -1.0)];
        for (t, (h, g, coeff)) in terms.iter().zip(expected) {
            assert_eq!((t.flux, t.charge), (h, g));
            assert!((t.coeff - c64(coeff, 0.0)).norm() < 1e-14);
        }
    }

    #[test]
    fn nonabelian_transform_g_coefficients() {
        let terms = nonabelian_transform(
            &ConjugacyClassData::class_c(),
            &Irrep::new(IrrepLabel::Z3Omega),
        )
        .unwrap();
        let w = omega();
        let wb = omega_bar();
        let one = c64(1.0, 0.0);
        let expected = [
            (C, E, one),
            (C, C, w),
            (C, C2, wb),
            (C2, E, one),
            (C2, C, wb),
            (C2, C2, w),
        ];
        assert_eq!(terms.len(), 6);
        for (t, (h, g, coeff)) in terms.iter().zip(expected) {
            assert_eq!((t.flux, t.charge), (h, g), "flux/charge order");
            assert!((t.coeff - coeff).norm() < 1e-14, "coefficient of ({h},{g})");
        }
        // Materialized on one site it is exactly the minimal G ribbon.
        let mat = materialize_qutrit(&terms).unwrap();
        assert!(mat.matrix().approx_eq(minimal_g_ribbon().matrix(), 1e-14));
    }

    #[test]
    fn nonabelian_transform_trivial_is_full_projector_sum() {
        let terms = nonabelian_transform(
            &ConjugacyClassData::class_e(),
            &Irrep::new(IrrepLabel::Trivial),
        )
        .unwrap();
        assert_eq!(terms.len(), 6);
        assert!(terms
            .iter()
            .all(|t| (t.coeff - c64(1.0, 0.0)).norm() < 1e-15));
        // Domain mismatch: the ℤ₃ irrep cannot serve the reflection class.
        assert!(nonabelian_transform(
            &ConjugacyClassData::class_t(),
            &Irrep::new(IrrepLabel::Z3Omega)
        )
        .is_err());
    }

    #[test]
    fn minimal_g_ribbon_matrix() {
        let fg = minimal_g_ribbon();
        assert!(fg.matrix().approx_eq(&expected_fg(), 1e-15));
        // ⟨e|F^G|c²⟩ = ω̄.
        assert!((fg.matrix()[(0, 2)] - omega_bar()).norm() < 1e-15);
        // Hermiticity is imposed by construction.
        assert!(fg.matrix().hermitian_asymmetry() < 1e-15);
        // Spectrum {−1, −1, 2}: the fusion identity forces F² = F + 2·1.
        let spectrum = hermitian_spectrum(&fg).unwrap();
        assert!((spectrum[0] + 1.0).abs() < 1e-12);
        assert!((spectrum[1] + 1.0).abs() < 1e-12);
        assert!((spectrum[2] - 2.0).abs() < 1e-12);
    }

    #[test]
    fn fusion_identity() {
        // F^G·F^G = F^A|₃ + F^B|₃ + F^G entrywise.
        let fg = minimal_g_ribbon();
        let lhs = forward_g_product();
        let rhs = string_operator_qutrit(StringLabel::A)
            .matrix()
            .add(string_operator_qutrit(StringLabel::B).matrix())
            .add(fg.matrix());
        assert!(lhs.matrix().max_abs_diff(&rhs) < 1e-12);

        let w = omega();
        let wb = omega_bar();
        let expected = ComplexMatrix::from_rows(&[
            vec![c64(2.0, 0.0), c64(1.0, 0.0), wb],
            vec![c64(1.0, 0.0), c64(2.0, 0.0), wb],
            vec![w, w, c64(2.0, 0.0)],
        ])
        .unwrap();
        assert!(lhs.matrix().approx_eq(&expected, 1e-12));
    }

    #[test]
    fn fuse_examples() {
        let fg = minimal_g_ribbon();
        let one = c64(1.0, 0.0);

        let d = fuse(&fg, &fg);
        assert!((d.coeff_a - one).norm() < 1e-12);
        assert!((d.coeff_b - one).norm() < 1e-12);
        assert!((d.coeff_g - one).norm() < 1e-12);
        assert!(d.residual_norm < 1e-12);

        let id = QutritOperator::identity();
        let d = fuse(&id, &fg);
        assert!(d.coeff_a.norm() < 1e-12);
        assert!(d.coeff_b.norm() < 1e-12);
        assert!((d.coeff_g - one).norm() < 1e-12);

        // F^B|₃·F^B|₃ = 1₃; the projection rule splits the identity evenly
        // between the indistinguishable A and B channels.
        let b3 = string_operator_qutrit(StringLabel::B);
        let d = fuse(&b3, &b3);
        assert!((d.coeff_a - c64(0.5, 0.0)).norm() < 1e-12);
        assert!((d.coeff_b - c64(0.5, 0.0)).norm() < 1e-12);
        assert!(d.coeff_g.norm() < 1e-12);
        assert!(d.residual_norm < 1e-12);

        // Something outside the span leaves a residual.
        let mut m = ComplexMatrix::zeros(3, 3);
        m[(0, 1)] = one;
        let off = QutritOperator::new(m).unwrap();
        let d = fuse(&off, &QutritOperator::identity());
        assert!(d.residual_norm > 0.1);
    }

    #[test]
    fn exchange_rewrite_examples() {
        // Abelian factors commute: charges unchanged for all g, l.
        for g in GroupElement::ALL {
            for l in GroupElement::ALL {
                let word = RibbonWord::two_ribbon_product(
                    &[RibbonTerm::new(c64(1.0, 0.0), RibbonId::Rho0, E, g)],
                    RibbonId::Rho2,
                    &[RibbonTerm::new(c64(1.0, 0.0), RibbonId::Rho0, E, l)],
                    RibbonId::Rho1,
                );
                let out = exchange_rewrite(&word).unwrap();
                assert_eq!(out.products.len(), 1);
                let p = &out.products[0];
                assert_eq!(p.factors[0], (RibbonId::Rho1, E, l));
                assert_eq!(p.factors[1], (RibbonId::Rho2, E, g));
            }
        }

        // F^{c,e}_{ρ₂}F^{c,e}_{ρ₁} → F^{c,c²}_{ρ₁}F^{c,e}_{ρ₂}.
        let word = RibbonWord::two_ribbon_product(
            &[RibbonTerm::new(c64(1.0, 0.0), RibbonId::Rho0, C, E)],
            RibbonId::Rho2,
            &[RibbonTerm::new(c64(1.0, 0.0), RibbonId::Rho0, C, E)],
            RibbonId::Rho1,
        );
        let out = exchange_rewrite(&word).unwrap();
        assert_eq!(out.products[0].factors[0], (RibbonId::Rho1, C, C2));
        assert_eq!(out.products[0].factors[1], (RibbonId::Rho2, C, E));

        // F^{c,t}_{ρ₂}F^{c,e}_{ρ₁} → F^{c,c}_{ρ₁}F^{c,t}_{ρ₂}
        // since e·t⁻¹·c⁻¹·t = t·c²·t = c.
        let word = RibbonWord::two_ribbon_product(
            &[RibbonTerm::new(c64(1.0, 0.0), RibbonId::Rho0, C, T)],
            RibbonId::Rho2,
            &[RibbonTerm::new(c64(1.0, 0.0), RibbonId::Rho0, C, E)],
            RibbonId::Rho1,
        );
        let out = exchange_rewrite(&word).unwrap();
        assert_eq!(out.products[0].factors[0], (RibbonId::Rho1, C, C));
        assert_eq!(out.products[0].factors[1], (RibbonId::Rho2, C, T));
    }

    #[test]
    fn exchange_rewrite_rejects_malformed_words() {
        // Three factors.
        let word = RibbonWord {
            products: vec![RibbonProduct {
                coeff: c64(1.0, 0.0),
                factors: vec![
                    (RibbonId::Rho0, C, E),
                    (RibbonId::Rho1, C, E),
                    (RibbonId::Rho2, C, E),
                ],
            }],
        };
        assert!(exchange_rewrite(&word).is_err());
        // Shared ribbon label.
        let word = RibbonWord {
            products: vec![RibbonProduct {
                coeff: c64(1.0, 0.0),
                factors: vec![(RibbonId::Rho1, C, E), (RibbonId::Rho1, C, C)],
            }],
        };
        assert!(exchange_rewrite(&word).is_err());
    }

    #[test]
    fn exchange_preserves_l1_mass() {
        let sum = g_ribbon_terms();
        let word = RibbonWord::two_ribbon_product(&sum, RibbonId::Rho2, &sum, RibbonId::Rho1);
        assert_eq!(word.products.len(), 36);
        let before = word.coefficient_l1_mass();
        let after = exchange_rewrite(&word).unwrap().coefficient_l1_mass();
        assert!((before - after).abs() < 1e-12);
        assert!((before - 36.0).abs() < 1e-12); // all |coeff| = 1
    }

    /// Decomposes an already-multiplied operator by fusing with the identity.
    fn fuse_product(p: &QutritOperator) -> AnyonDecomposition {
        fuse(p, &QutritOperator::identity())
    }

    #[test]
    fn reversed_product_matrix_and_decomposition() {
        let rev = reversed_g_product();
        let w = omega();
        let wb = omega_bar();
        let expected = ComplexMatrix::from_rows(&[
            vec![wb * 2.0, w, c64(1.0, 0.0)],
            vec![w, wb * 2.0, c64(1.0, 0.0)],
            vec![wb, wb, wb * 2.0],
        ])
        .unwrap();
        assert!(rev.matrix().max_abs_diff(&expected) < 1e-12);

        // Equivalently 2ω̄·1₃ + ω·F^G.
        let alt = ComplexMatrix::identity(3)
            .scale(wb * 2.0)
            .add(&minimal_g_ribbon().matrix().scale(w));
        assert!(rev.matrix().max_abs_diff(&alt) < 1e-12);

        // Channel decomposition (ω̄, ω̄, ω).
        let d = fuse_product(&rev);
        assert!((d.coeff_a - wb).norm() < 1e-12);
        assert!((d.coeff_b - wb).norm() < 1e-12);
        assert!((d.coeff_g - w).norm() < 1e-12);
        assert!(d.residual_norm < 1e-12);
    }

    #[test]
    fn appendix_variant_of_forward_product_disagrees_with_direct_square() {
        // A published variant of the forward-product matrix disagrees with the
        // direct square of the minimal ribbon; the square is authoritative
        // (it matches the fusion identity) and the discrepancy is surfaced.
        let w = omega();
        let wb = omega_bar();
        let variant = ComplexMatrix::from_rows(&[
            vec![c64(2.0, 0.0), wb, wb],
            vec![c64(1.0, 0.0), c64(2.0, 0.0), w],
            vec![c64(1.0, 0.0), w, c64(2.0, 0.0)],
        ])
        .unwrap();
        let square = forward_g_product();
        assert!(square.matrix().max_abs_diff(&variant) > 0.5);
    }

    #[test]
    fn r_matrix_extraction() {
        let fwd = fuse(&minimal_g_ribbon(), &minimal_g_ribbon());
        let rev = fuse_product(&reversed_g_product());
        let r = extract_r_matrix(&fwd, &rev).unwrap();
        assert!(r.approx_eq(&r_matrix_gg(), 1e-12));

        // Identical products give the identity.
        let r = extract_r_matrix(&fwd, &fwd).unwrap();
        assert!(r.approx_eq(&ComplexMatrix::identity(3), 1e-12));

        // The ratio is scale invariant.
        let scale = |d: &AnyonDecomposition, s: Complex64| AnyonDecomposition {
            coeff_a: d.coeff_a * s,
            coeff_b: d.coeff_b * s,
            coeff_g: d.coeff_g * s,
            residual_norm: d.residual_norm,
        };
        let r =
            extract_r_matrix(&scale(&fwd, c64(2.0, 0.0)), &scale(&rev, c64(2.0, 0.0))).unwrap();
        assert!(r.approx_eq(&r_matrix_gg(), 1e-12));

        // Zero forward coefficient is an undefined channel.
        let broken = AnyonDecomposition {
            coeff_a: c64(0.0, 0.0),
            coeff_b: c64(1.0, 0.0),
            coeff_g: c64(1.0, 0.0),
            residual_norm: 0.0,
        };
        assert!(matches!(
            extract_r_matrix(&broken, &rev),
            Err(Error::UndefinedFusionChannel("A"))
        ));
    }

    #[test]
    fn braiding_matrices() {
        // Both fusion matrices are unitary and self-inverse.
        for f in [f_matrix_ggg(), f_matrix_phi()] {
            assert!(f.unitarity_residual() < 1e-12);
            assert!(f.matmul(&f).approx_eq(&ComplexMatrix::identity(3), 1e-12));
        }

        let b = braiding_matrix(&f_matrix_ggg(), &r_matrix_gg()).unwrap();
        let angle = 2.0 * std::f64::consts::PI / 3.0;
        let expected = ComplexMatrix::from_rows(&[
            vec![c64(angle.cos(), 0.0), c64(0.0, angle.sin()), c64(0.0, 0.0)],
            vec![c64(0.0, angle.sin()), c64(angle.cos(), 0.0), c64(0.0, 0.0)],
            vec![c64(0.0, 0.0), c64(0.0, 0.0), c64(angle.cos(), angle.sin())],
        ])
        .unwrap();
        assert!(b.approx_eq(&expected, 1e-12));

        // The Φ sector braids trivially.
        let b = braiding_matrix(&f_matrix_phi(), &r_matrix_phi()).unwrap();
        assert!(b.approx_eq(&ComplexMatrix::identity(3), 1e-12));

        let id = ComplexMatrix::identity(3);
        assert!(braiding_matrix(&id, &id).unwrap().approx_eq(&id, 1e-15));

        // Non-unitary F is rejected.
        let bad = ComplexMatrix::identity(3).scale(c64(2.0, 0.0));
        assert!(braiding_matrix(&bad, &id).is_err());

        // Non-Abelian character: F and R² do not commute in the G sector.
        let r2 = r_matrix_gg().matmul(&r_matrix_gg());
        let fr = f_matrix_ggg().matmul(&r2);
        let rf = r2.matmul(&f_matrix_ggg());
        assert!(fr.max_abs_diff(&rf) > 0.5);
    }

    #[test]
    fn fusion_table() {
        use AnyonLabel::*;
        assert_eq!(fusion_lookup(G, G), vec![A, B, G]);
        assert_eq!(fusion_lookup(D, D), vec![A, C, F, G, H]);
        assert_eq!(fusion_lookup(B, B), vec![A]);
        assert_eq!(fusion_lookup(G, B), vec![G]);
        for x in AnyonLabel::ALL {
            assert_eq!(fusion_lookup(A, x), vec![x], "A is the identity");
            for y in AnyonLabel::ALL {
                assert_eq!(fusion_lookup(x, y), fusion_lookup(y, x), "commutative");
            }
        }
    }

    #[test]
    fn ribbon_word_serialization() {
        let sum = g_ribbon_terms();
        let word = RibbonWord::two_ribbon_product(&sum, RibbonId::Rho2, &sum, RibbonId::Rho1);
        let json = serde_json::to_string(&word).unwrap();
        assert!(json.contains("\"ribbon\":\"rho2\""));
        assert!(json.contains("\"h\":\"c\""));
        let back: RibbonWord = serde_json::from_str(&json).unwrap();
        assert_eq!(back.products.len(), word.products.len());
        let a = back.collapse_to_site().unwrap();
        let b = word.collapse_to_site().unwrap();
        assert!(a.matrix().approx_eq(b.matrix(), 1e-14));
    }

    #[test]
    fn qutrit_factor_rejects_reflections() {
        assert!(qutrit_factor_matrix(T, E).is_err());
        assert!(qutrit_factor_matrix(C, T).is_err());
    }
}
