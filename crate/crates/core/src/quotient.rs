//! The quotient `𝓑/τ` of the powerset by τ-null sets, its ideals, the
//! disjoint variation, and the two measures built from a σ-ideal.
//!
//! Sets are identified modulo null atoms; a class is named by its
//! canonical representative (the set with every null atom removed), and
//! `A^τ ≤ B^τ` is inclusion of representatives.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ext::ExtNonneg;
use crate::measure::{require_exhaustive, MaxMeasure, SigmaIdeal, Space, Subset, EXHAUSTIVE_CAP};

/// Largest number of non-null atoms for which the lattice bounds are audited
/// pair by pair.
pub const LATTICE_AUDIT_CAP: usize = 8;

/// Largest number of non-null atoms for which quotient ideals are enumerated.
pub const IDEAL_ENUM_CAP: usize = 6;

/// Largest space on which [`localize`] re-checks its defining conditions.
const LOCALIZE_AUDIT_CAP: usize = 16;

fn check_subset(tau: &MaxMeasure, b: Subset) -> Result<()> {
    if b.universe_size() != tau.space().len() {
        return Err(Error::SpaceMismatch);
    }
    Ok(())
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuotientClass {
    representative: Subset,
    null_atoms: Subset,
}

impl QuotientClass {
    pub fn representative(&self) -> Subset {
        self.representative
    }

    pub fn null_atoms(&self) -> Subset {
        self.null_atoms
    }

    /// Whether `b` belongs to this class.
    pub fn contains(&self, b: Subset) -> bool {
        b.difference(&self.null_atoms) == self.representative
    }
}

impl fmt::Debug for QuotientClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:?}]", self.representative)
    }
}

pub fn canonical_rep(tau: &MaxMeasure, b: Subset) -> Result<QuotientClass> {
    check_subset(tau, b)?;
    let null_atoms = tau.null_atoms();
    Ok(QuotientClass { representative: b.difference(&null_atoms), null_atoms })
}

/// `A^τ ≤ B^τ`: `A ⊆ B ∪ N` for some τ-null `N`.
pub fn quotient_leq(tau: &MaxMeasure, a: Subset, b: Subset) -> Result<bool> {
    let ra = canonical_rep(tau, a)?.representative;
    let rb = canonical_rep(tau, b)?.representative;
    Ok(ra.is_subset_of(&rb))
}

/// `𝓑/τ` on a finite space: isomorphic to the powerset of the non-null
/// atoms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientLattice {
    space: Arc<Space>,
    non_null_atoms: Subset,
}

impl QuotientLattice {
    pub fn space(&self) -> &Arc<Space> {
        &self.space
    }

    pub fn non_null_atoms(&self) -> Subset {
        self.non_null_atoms
    }

    pub fn rank(&self) -> usize {
        self.non_null_atoms.count()
    }

    pub fn class_count(&self) -> u128 {
        1u128 << self.rank()
    }

    pub fn class_of(&self, b: Subset) -> QuotientClass {
        QuotientClass {
            representative: b.intersection(&self.non_null_atoms),
            null_atoms: self.non_null_atoms.complement(),
        }
    }

    pub fn bottom(&self) -> QuotientClass {
        self.class_of(self.space.empty())
    }

    pub fn top(&self) -> QuotientClass {
        self.class_of(self.non_null_atoms)
    }

    /// Every class, in mask order of the representative.
    pub fn classes(&self) -> Result<Vec<QuotientClass>> {
        require_exhaustive(self.rank(), EXHAUSTIVE_CAP)?;
        let mut out: Vec<QuotientClass> = self.non_null_atoms.subsets().map(|b| self.class_of(b)).collect();
        out.sort();
        Ok(out)
    }

    pub fn leq(&self, a: &QuotientClass, b: &QuotientClass) -> bool {
        a.representative.is_subset_of(&b.representative)
    }

    pub fn join(&self, a: &QuotientClass, b: &QuotientClass) -> QuotientClass {
        self.class_of(a.representative.union(&b.representative))
    }

    pub fn meet(&self, a: &QuotientClass, b: &QuotientClass) -> QuotientClass {
        self.class_of(a.representative.intersection(&b.representative))
    }

    /// Checks that [`join`](Self::join) and [`meet`](Self::meet) are the
    /// least upper and greatest lower bounds among all classes, for every
    /// pair. Refused above [`LATTICE_AUDIT_CAP`] non-null atoms.
    pub fn audit_bounds(&self) -> Result<bool> {
        require_exhaustive(self.rank(), LATTICE_AUDIT_CAP)?;
        let classes = self.classes()?;
        for a in &classes {
            for b in &classes {
                let j = self.join(a, b);
                let m = self.meet(a, b);
                if !(self.leq(a, &j) && self.leq(b, &j) && self.leq(&m, a) && self.leq(&m, b)) {
                    return Ok(false);
                }
                for c in &classes {
                    if self.leq(a, c) && self.leq(b, c) && !self.leq(&j, c) {
                        return Ok(false);
                    }
                    if self.leq(c, a) && self.leq(c, b) && !self.leq(c, &m) {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }
}

pub fn build_quotient(tau: &MaxMeasure) -> Result<QuotientLattice> {
    require_exhaustive(tau.space().len(), EXHAUSTIVE_CAP)?;
    Ok(QuotientLattice { space: tau.space().clone(), non_null_atoms: tau.null_atoms().complement() })
}

/// An ideal of `𝓑/τ` (downward closed, closed under joins), listed by the
/// representatives of its classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientIdeal {
    pub members: Vec<Subset>,
    /// A member above every other member, if there is one.
    pub top: Option<Subset>,
}

/// Every ideal of the quotient lattice. Built class by class in mask
/// order: a class is forced in when it is the union of earlier members and
/// may only enter when all its immediate subclasses are members.
pub fn quotient_ideals(q: &QuotientLattice) -> Result<Vec<QuotientIdeal>> {
    require_exhaustive(q.rank(), IDEAL_ENUM_CAP)?;
    let positions: Vec<usize> = q.non_null_atoms.iter().collect();
    let k = positions.len();
    let size = 1usize << k;
    let mut included = vec![false; size];
    let mut families = Vec::new();
    included[0] = true;
    ideal_dfs(1, k, &mut included, &mut families);
    let n = q.space.len();
    let to_subset = |j: usize| {
        let bits = positions.iter().enumerate().filter(|(b, _)| j >> b & 1 == 1).fold(0u64, |acc, (_, &p)| acc | 1 << p);
        Subset::from_bits(bits, n)
    };
    Ok(families
        .into_iter()
        .map(|fam: Vec<usize>| {
            let members: Vec<Subset> = fam.iter().map(|&j| to_subset(j)).collect();
            let top = members.iter().copied().find(|t| members.iter().all(|m| m.is_subset_of(t)));
            QuotientIdeal { members, top }
        })
        .collect())
}

fn ideal_dfs(x: usize, k: usize, included: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
    if x == included.len() {
        out.push((0..included.len()).filter(|&j| included[j]).collect());
        return;
    }
    let below_union = (0..x).filter(|&a| included[a] && a & x == a).fold(0, |acc, a| acc | a);
    let forced = below_union == x;
    let allowed = (0..k).filter(|b| x >> b & 1 == 1).all(|b| included[x & !(1 << b)]);
    if allowed {
        included[x] = true;
        ideal_dfs(x + 1, k, included, out);
        included[x] = false;
    }
    if !forced {
        ideal_dfs(x + 1, k, included, out);
    }
}

/// `L = rep(I.top)`: the localization of `𝕀` modulo null sets.
///
/// On spaces up to 16 atoms both conditions are re-checked: `S ∖ L` is
/// negligible for every `S ∈ 𝕀`, and `L ∖ B` is negligible whenever every
/// member of `𝕀` is contained in `B` up to a null set.
pub fn localize(tau: &MaxMeasure, ideal: &SigmaIdeal) -> Result<Subset> {
    if ideal.space() != tau.space() {
        return Err(Error::SpaceMismatch);
    }
    let l = canonical_rep(tau, ideal.top())?.representative;
    if tau.space().len() <= LOCALIZE_AUDIT_CAP {
        let null = |s: Subset| tau.eval(s).map(|m| m.is_zero());
        for s in ideal.top().subsets() {
            if !null(s.difference(&l))? {
                return Err(Error::Precondition("an ideal member escapes its localization".into()));
            }
        }
        for b in tau.space().full().subsets() {
            if null(ideal.top().difference(&b))? && !null(l.difference(&b))? {
                return Err(Error::Precondition("localization is not least".into()));
            }
        }
    }
    Ok(l)
}

/// `B ↦ ⊕_{I ∈ 𝕀} τ(B ∩ I)`, which on a finite space is `τ(B ∩ I.top)`.
pub fn localization_measure(tau: &MaxMeasure, ideal: &SigmaIdeal) -> Result<MaxMeasure> {
    if ideal.space() != tau.space() {
        return Err(Error::SpaceMismatch);
    }
    let top = ideal.top();
    let mass = (0..tau.space().len())
        .map(|i| if top.contains(i) { tau.mass(i).clone() } else { ExtNonneg::zero() })
        .collect();
    MaxMeasure::new(tau.space().clone(), mass)
}

/// `B ↦ inf { t > 0 : B ∈ 𝒥_t }` with `𝒥_t = { I ∪ B : I ∈ 𝕀, τ(B) ≤ t }`,
/// in closed form `τ(B ∖ I.top)`.
pub fn nguyen_measure(tau: &MaxMeasure, ideal: &SigmaIdeal) -> Result<MaxMeasure> {
    if ideal.space() != tau.space() {
        return Err(Error::SpaceMismatch);
    }
    let top = ideal.top();
    let mass = (0..tau.space().len())
        .map(|i| if top.contains(i) { ExtNonneg::zero() } else { tau.mass(i).clone() })
        .collect();
    MaxMeasure::new(tau.space().clone(), mass)
}

/// A measure evaluated by summing atom masses; `∞ + x = ∞`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdditiveMeasure {
    space: Arc<Space>,
    mass: Vec<ExtNonneg>,
}

impl AdditiveMeasure {
    pub fn new(space: Arc<Space>, mass: Vec<ExtNonneg>) -> Result<Self> {
        if mass.len() != space.len() {
            return Err(Error::SpaceMismatch);
        }
        Ok(AdditiveMeasure { space, mass })
    }

    pub fn space(&self) -> &Arc<Space> {
        &self.space
    }

    pub fn masses(&self) -> &[ExtNonneg] {
        &self.mass
    }

    pub fn eval(&self, b: Subset) -> Result<ExtNonneg> {
        if b.universe_size() != self.space.len() {
            return Err(Error::SpaceMismatch);
        }
        Ok(b.iter().fold(ExtNonneg::zero(), |acc, i| acc.plus(&self.mass[i])))
    }

    pub fn null_atoms(&self) -> Subset {
        let n = self.space.len();
        Subset::from_bits((0..n).filter(|&i| self.mass[i].is_zero()).fold(0, |b, i| b | 1 << i), n)
    }
}

/// `m(B) = sup_π Σ_{B' ∈ π} τ(B ∩ B')` over finite partitions. The
/// supremum is reached at the partition into atoms, so `m` sums τ's
/// atom masses.
pub fn disjoint_variation(tau: &MaxMeasure) -> Result<AdditiveMeasure> {
    require_exhaustive(tau.space().len(), EXHAUSTIVE_CAP)?;
    AdditiveMeasure::new(tau.space().clone(), tau.masses().to_vec())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Cardinality {
    Countable,
    Uncountable,
}

/// Evidence about the countable chain condition.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum CCCWitness {
    /// A finite space has only finite disjoint families.
    FiniteSpaceTrivial,
    /// A family of pairwise-disjoint sets on an abstract space, each of mass
    /// `member_mass`, described rather than built.
    IntensionalFamily { description: String, cardinality: Cardinality, member_mass: ExtNonneg },
}

/// The four equivalent conditions: σ-principal, CCC, every quotient ideal
/// principal, and a σ-additive measure with the same null sets.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CccVerdict {
    pub holds: bool,
    pub sigma_principal: bool,
    pub ccc: bool,
    pub quotient_principal: bool,
    pub additive_dominating: bool,
    pub certificate: CCCWitness,
    #[serde(skip)]
    pub variation: Option<AdditiveMeasure>,
    pub note: String,
}

pub fn check_ccc(tau: &MaxMeasure, witness: Option<&CCCWitness>) -> Result<CccVerdict> {
    let finite = |note: &str| -> Result<CccVerdict> {
        let variation = if tau.space().len() <= EXHAUSTIVE_CAP { Some(disjoint_variation(tau)?) } else { None };
        Ok(CccVerdict {
            holds: true,
            sigma_principal: true,
            ccc: true,
            quotient_principal: true,
            additive_dominating: true,
            certificate: CCCWitness::FiniteSpaceTrivial,
            variation,
            note: note.into(),
        })
    };
    match witness {
        None | Some(CCCWitness::FiniteSpaceTrivial) => finite("finite space: every disjoint family is finite"),
        Some(CCCWitness::IntensionalFamily { member_mass, .. }) if member_mass.is_zero() => {
            Err(Error::InvalidWitness("members of mass 0 are negligible".into()))
        }
        Some(CCCWitness::IntensionalFamily { cardinality: Cardinality::Countable, .. }) => {
            finite("a countable family does not refute the chain condition")
        }
        Some(w @ CCCWitness::IntensionalFamily { cardinality: Cardinality::Uncountable, .. }) => Ok(CccVerdict {
            holds: false,
            sigma_principal: false,
            ccc: false,
            quotient_principal: false,
            additive_dominating: false,
            certificate: w.clone(),
            variation: None,
            note: "uncountable family of pairwise-disjoint non-negligible sets".into(),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measure::{check_maxitive, delta_sharp};

    fn v(s: &str) -> ExtNonneg {
        s.parse().unwrap()
    }

    fn m(space: &Arc<Space>, masses: &[&str]) -> MaxMeasure {
        MaxMeasure::new(space.clone(), masses.iter().map(|x| v(x)).collect()).unwrap()
    }

    fn abc() -> Arc<Space> {
        Space::new(["a", "b", "c"]).unwrap()
    }

    #[test]
    fn canonical_rep_examples() {
        let s = Space::new(["a", "b"]).unwrap();
        let tau = m(&s, &["0", "1"]);
        let r = canonical_rep(&tau, s.full()).unwrap();
        assert_eq!(r.representative(), s.subset(["b"]).unwrap());
        assert!(canonical_rep(&tau, s.subset(["a"]).unwrap()).unwrap().representative().is_empty());
        assert_eq!(canonical_rep(&tau, r.representative()).unwrap(), r);
        let pos = m(&abc(), &["1", "2", "3"]);
        for b in pos.space().subsets().unwrap() {
            assert_eq!(canonical_rep(&pos, b).unwrap().representative(), b);
        }
    }

    #[test]
    fn quotient_leq_examples() {
        let s = abc();
        let tau = m(&s, &["0", "1", "1"]);
        assert!(quotient_leq(&tau, s.subset(["a", "c"]).unwrap(), s.subset(["b", "c"]).unwrap()).unwrap());
        let pos = m(&s, &["1", "1", "1"]);
        assert!(!quotient_leq(&pos, s.subset(["a"]).unwrap(), s.subset(["b"]).unwrap()).unwrap());
        let other = Space::new(["x"]).unwrap();
        assert_eq!(quotient_leq(&tau, other.full(), s.full()), Err(Error::SpaceMismatch));
    }

    #[test]
    fn class_counts_and_bounds() {
        let s = Space::new(["a", "b"]).unwrap();
        assert_eq!(build_quotient(&m(&s, &["0", "1"])).unwrap().class_count(), 2);
        assert_eq!(build_quotient(&MaxMeasure::zero(s)).unwrap().class_count(), 1);
        let q = build_quotient(&m(&abc(), &["1", "2", "3"])).unwrap();
        assert_eq!(q.class_count(), 8);
        assert!(q.audit_bounds().unwrap());
    }

    #[test]
    fn ideals_are_principal() {
        let q = build_quotient(&m(&abc(), &["1", "0", "3"])).unwrap();
        let ideals = quotient_ideals(&q).unwrap();
        assert_eq!(ideals.len(), 4);
        assert!(ideals.iter().all(|i| i.top.is_some()));
    }

    #[test]
    fn localize_examples() {
        let s = abc();
        let tau = m(&s, &["1", "2", "3"]);
        let ab = s.subset(["a", "b"]).unwrap();
        assert_eq!(localize(&tau, &SigmaIdeal::principal(s.clone(), ab).unwrap()).unwrap(), ab);
        assert!(localize(&tau, &SigmaIdeal::trivial(s.clone())).unwrap().is_empty());
        let s2 = Space::new(["a", "b"]).unwrap();
        let tau2 = m(&s2, &["0", "1"]);
        let a = s2.subset(["a"]).unwrap();
        let l = localize(&tau2, &SigmaIdeal::principal(s2.clone(), a).unwrap()).unwrap();
        assert!(tau2.eval(l.difference(&a)).unwrap().is_zero());
    }

    #[test]
    fn ideal_measure_examples() {
        let s = abc();
        let tau = m(&s, &["1", "2", "3"]);
        let ideal = SigmaIdeal::principal(s.clone(), s.subset(["a", "b"]).unwrap()).unwrap();
        let loc = localization_measure(&tau, &ideal).unwrap();
        assert_eq!(loc.masses(), &[v("1"), v("2"), v("0")]);
        assert_eq!(loc.total(), v("2"));
        assert_eq!(localization_measure(&tau, &SigmaIdeal::full(s.clone())).unwrap(), tau);
        assert_eq!(localization_measure(&tau, &SigmaIdeal::trivial(s.clone())).unwrap(), MaxMeasure::zero(s.clone()));

        let ideal = SigmaIdeal::principal(s.clone(), s.subset(["a"]).unwrap()).unwrap();
        let ng = nguyen_measure(&tau, &ideal).unwrap();
        assert_eq!(ng.masses(), &[v("0"), v("2"), v("3")]);
        assert_eq!(ng.eval(s.subset(["a", "b"]).unwrap()).unwrap(), v("2"));
        assert!(check_maxitive(&ng.table().unwrap()));
        assert_eq!(nguyen_measure(&tau, &SigmaIdeal::full(s.clone())).unwrap(), MaxMeasure::zero(s.clone()));
        assert_eq!(nguyen_measure(&tau, &SigmaIdeal::trivial(s.clone())).unwrap(), tau);
    }

    #[test]
    fn disjoint_variation_examples() {
        let s = Space::new(["a", "b"]).unwrap();
        let var = disjoint_variation(&m(&s, &["1", "2"])).unwrap();
        assert_eq!(var.eval(s.full()).unwrap(), v("3"));
        assert_eq!(var.eval(s.empty()).unwrap(), v("0"));
        let d = disjoint_variation(&delta_sharp(abc())).unwrap();
        assert_eq!(d.eval(d.space().full()).unwrap(), v("3"));
        assert!(matches!(disjoint_variation(&MaxMeasure::zero(Space::numbered(21).unwrap())), Err(Error::SizeCap { .. })));
    }

    #[test]
    fn ccc_examples() {
        let tau = delta_sharp(abc());
        let v0 = check_ccc(&tau, None).unwrap();
        assert!(v0.holds && v0.certificate == CCCWitness::FiniteSpaceTrivial);
        let w = CCCWitness::IntensionalFamily {
            description: "all singletons of an uncountable set".into(),
            cardinality: Cardinality::Uncountable,
            member_mass: v("1"),
        };
        let v1 = check_ccc(&tau, Some(&w)).unwrap();
        assert!(!v1.holds);
        assert_eq!(v1.certificate, w);
        let bad = CCCWitness::IntensionalFamily {
            description: "null singletons".into(),
            cardinality: Cardinality::Uncountable,
            member_mass: v("0"),
        };
        assert!(matches!(check_ccc(&tau, Some(&bad)), Err(Error::InvalidWitness(_))));
    }
}
