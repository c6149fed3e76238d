//! Finite measurable spaces and σ-maxitive measures on their powerset.
//!
//! The σ-algebra is always the full powerset of a finite atom set, so a
//! σ-maxitive measure is determined by its atom masses and
//! `μ(B) = ⊕_{x ∈ B} μ({x})`.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::arith::PseudoMul;
use crate::error::{Error, Result};
use crate::ext::{oplus_all, ExtNonneg};

/// Upper bound on atoms for any operation that scans all subsets.
pub const EXHAUSTIVE_CAP: usize = 20;

/// Hard limit imposed by the 64-bit subset representation.
pub const MAX_ATOMS: usize = 64;

pub fn require_exhaustive(n: usize, cap: usize) -> Result<()> {
    if n > cap {
        Err(Error::SizeCap { n, cap })
    } else {
        Ok(())
    }
}

/// An ordered list of distinct atom labels.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Space {
    atoms: Vec<String>,
}

impl Space {
    pub fn new<I, S>(atoms: I) -> Result<Arc<Self>>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let atoms: Vec<String> = atoms.into_iter().map(Into::into).collect();
        if atoms.is_empty() {
            return Err(Error::InvalidSpace("a space needs at least one atom".into()));
        }
        if atoms.len() > MAX_ATOMS {
            return Err(Error::InvalidSpace(format!("{} atoms exceeds the limit of {MAX_ATOMS}", atoms.len())));
        }
        let mut seen = HashMap::new();
        for (i, a) in atoms.iter().enumerate() {
            if let Some(j) = seen.insert(a.as_str(), i) {
                return Err(Error::InvalidSpace(format!("atom `{a}` appears at positions {j} and {i}")));
            }
        }
        Ok(Arc::new(Space { atoms }))
    }

    /// Atoms `x0, x1, ...`.
    pub fn numbered(n: usize) -> Result<Arc<Self>> {
        Space::new((0..n).map(|i| format!("x{i}")))
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn atoms(&self) -> &[String] {
        &self.atoms
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.atoms.iter().position(|a| a == label)
    }

    pub fn full(&self) -> Subset {
        Subset::full(self.len())
    }

    pub fn empty(&self) -> Subset {
        Subset::empty(self.len())
    }

    pub fn subset<'a, I: IntoIterator<Item = &'a str>>(&self, labels: I) -> Result<Subset> {
        let mut bits = 0u64;
        for l in labels {
            let i = self.index_of(l).ok_or_else(|| Error::InvalidSpace(format!("unknown atom `{l}`")))?;
            bits |= 1 << i;
        }
        Ok(Subset { bits, n: self.len() })
    }

    /// All `2^n` subsets. Refuses beyond [`EXHAUSTIVE_CAP`].
    pub fn subsets(&self) -> Result<impl Iterator<Item = Subset>> {
        require_exhaustive(self.len(), EXHAUSTIVE_CAP)?;
        let n = self.len();
        Ok((0..1u64 << n).map(move |bits| Subset { bits, n }))
    }

    pub fn labels(&self, b: Subset) -> Vec<&str> {
        b.iter().map(|i| self.atoms[i].as_str()).collect()
    }

    pub fn format_subset(&self, b: Subset) -> String {
        format!("{{{}}}", self.labels(b).join(","))
    }
}

/// A subset of an `n`-atom space, as a bit mask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subset {
    bits: u64,
    n: usize,
}

impl Subset {
    pub fn empty(n: usize) -> Self {
        Subset { bits: 0, n }
    }

    pub fn full(n: usize) -> Self {
        let bits = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        Subset { bits, n }
    }

    /// Mask bits beyond `n` are dropped.
    pub fn from_bits(bits: u64, n: usize) -> Self {
        Subset { bits: bits & Subset::full(n).bits, n }
    }

    pub fn singleton(i: usize, n: usize) -> Self {
        assert!(i < n);
        Subset { bits: 1 << i, n }
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn universe_size(&self) -> usize {
        self.n
    }

    pub fn contains(&self, i: usize) -> bool {
        i < self.n && self.bits >> i & 1 == 1
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn count(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> {
        let bits = self.bits;
        (0..self.n).filter(move |i| bits >> i & 1 == 1)
    }

    fn same_universe(&self, other: &Subset) {
        assert_eq!(self.n, other.n, "subsets of different spaces");
    }

    pub fn union(&self, other: &Subset) -> Subset {
        self.same_universe(other);
        Subset { bits: self.bits | other.bits, n: self.n }
    }

    pub fn intersection(&self, other: &Subset) -> Subset {
        self.same_universe(other);
        Subset { bits: self.bits & other.bits, n: self.n }
    }

    pub fn difference(&self, other: &Subset) -> Subset {
        self.same_universe(other);
        Subset { bits: self.bits & !other.bits, n: self.n }
    }

    pub fn complement(&self) -> Subset {
        Subset { bits: !self.bits & Subset::full(self.n).bits, n: self.n }
    }

    pub fn is_subset_of(&self, other: &Subset) -> bool {
        self.same_universe(other);
        self.bits & !other.bits == 0
    }

    /// All subsets of `self`, including `∅` and `self`.
    pub fn subsets(&self) -> impl Iterator<Item = Subset> {
        let (mask, n) = (self.bits, self.n);
        let mut next = Some(0u64);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == mask { None } else { Some((cur.wrapping_sub(mask)) & mask) };
            Some(Subset { bits: cur, n })
        })
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

fn check_subset(space: &Space, b: &Subset) -> Result<()> {
    if b.n != space.len() {
        Err(Error::SpaceMismatch)
    } else {
        Ok(())
    }
}

/// A σ-maxitive measure given by its atom masses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaxMeasure {
    space: Arc<Space>,
    mass: Vec<ExtNonneg>,
}

impl MaxMeasure {
    pub fn new(space: Arc<Space>, mass: Vec<ExtNonneg>) -> Result<Self> {
        if mass.len() != space.len() {
            return Err(Error::SpaceMismatch);
        }
        Ok(MaxMeasure { space, mass })
    }

    pub fn from_labels<'a, I>(space: Arc<Space>, masses: I) -> Result<Self>
    where
        I: IntoIterator<Item = (&'a str, ExtNonneg)>,
    {
        let mut mass = vec![ExtNonneg::zero(); space.len()];
        for (label, m) in masses {
            let i = space.index_of(label).ok_or_else(|| Error::InvalidSpace(format!("unknown atom `{label}`")))?;
            mass[i] = m;
        }
        MaxMeasure::new(space, mass)
    }

    pub fn zero(space: Arc<Space>) -> Self {
        let n = space.len();
        MaxMeasure { space, mass: vec![ExtNonneg::zero(); n] }
    }

    pub fn space(&self) -> &Arc<Space> {
        &self.space
    }

    pub fn masses(&self) -> &[ExtNonneg] {
        &self.mass
    }

    pub fn mass(&self, i: usize) -> &ExtNonneg {
        &self.mass[i]
    }

    /// `μ(B)`.
    pub fn eval(&self, b: Subset) -> Result<ExtNonneg> {
        check_subset(&self.space, &b)?;
        Ok(oplus_all(b.iter().map(|i| &self.mass[i])))
    }

    pub fn total(&self) -> ExtNonneg {
        oplus_all(self.mass.iter())
    }

    /// `r ⊙ μ`, atom by atom.
    pub fn scaled(&self, pm: &PseudoMul, r: &ExtNonneg) -> Result<Self> {
        let mass = self.mass.iter().map(|m| pm.omul(r, m)).collect::<Result<Vec<_>>>()?;
        Ok(MaxMeasure { space: self.space.clone(), mass })
    }

    /// Atoms of zero mass.
    pub fn null_atoms(&self) -> Subset {
        let n = self.space.len();
        let bits = (0..n).filter(|&i| self.mass[i].is_zero()).fold(0u64, |b, i| b | 1 << i);
        Subset::from_bits(bits, n)
    }

    pub fn same_space(&self, other: &MaxMeasure) -> Result<()> {
        if self.space == other.space {
            Ok(())
        } else {
            Err(Error::SpaceMismatch)
        }
    }

    pub fn table(&self) -> Result<SetFunctionTable> {
        let values = self.space.subsets()?.map(|b| self.eval(b)).collect::<Result<Vec<_>>>()?;
        Ok(SetFunctionTable { space: self.space.clone(), values })
    }
}

/// `δ_#`: mass 1 on every atom, so `δ_#(B) = 1` for nonempty `B`.
pub fn delta_sharp(space: Arc<Space>) -> MaxMeasure {
    let n = space.len();
    MaxMeasure { space, mass: vec![ExtNonneg::one(); n] }
}

/// `μ(B)`.
pub fn measure_eval(mu: &MaxMeasure, b: Subset) -> Result<ExtNonneg> {
    mu.eval(b)
}

/// A map from atoms to `[0, ∞]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MeasurableFn {
    space: Arc<Space>,
    value: Vec<ExtNonneg>,
}

impl MeasurableFn {
    pub fn new(space: Arc<Space>, value: Vec<ExtNonneg>) -> Result<Self> {
        if value.len() != space.len() {
            return Err(Error::SpaceMismatch);
        }
        Ok(MeasurableFn { space, value })
    }

    pub fn from_labels<'a, I>(space: Arc<Space>, values: I) -> Result<Self>
    where
        I: IntoIterator<Item = (&'a str, ExtNonneg)>,
    {
        let m = MaxMeasure::from_labels(space, values)?;
        Ok(MeasurableFn { space: m.space, value: m.mass })
    }

    pub fn constant(space: Arc<Space>, c: ExtNonneg) -> Self {
        let n = space.len();
        MeasurableFn { space, value: vec![c; n] }
    }

    /// `1_B`.
    pub fn indicator(space: Arc<Space>, b: Subset) -> Result<Self> {
        check_subset(&space, &b)?;
        let value = (0..space.len()).map(|i| if b.contains(i) { ExtNonneg::one() } else { ExtNonneg::zero() }).collect();
        Ok(MeasurableFn { space, value })
    }

    pub fn space(&self) -> &Arc<Space> {
        &self.space
    }

    pub fn values(&self) -> &[ExtNonneg] {
        &self.value
    }

    pub fn at(&self, i: usize) -> &ExtNonneg {
        &self.value[i]
    }

    /// `{f > t}`.
    pub fn level_set_above(&self, t: &ExtNonneg) -> Subset {
        self.select(|v| v > t)
    }

    /// `{f ≥ t}`.
    pub fn level_set_at_least(&self, t: &ExtNonneg) -> Subset {
        self.select(|v| v >= t)
    }

    pub fn select<P: Fn(&ExtNonneg) -> bool>(&self, pred: P) -> Subset {
        let n = self.space.len();
        let bits = (0..n).filter(|&i| pred(&self.value[i])).fold(0u64, |b, i| b | 1 << i);
        Subset::from_bits(bits, n)
    }

    /// Pointwise `r ⊙ f`.
    pub fn scaled(&self, pm: &PseudoMul, r: &ExtNonneg) -> Result<Self> {
        let value = self.value.iter().map(|v| pm.omul(r, v)).collect::<Result<Vec<_>>>()?;
        Ok(MeasurableFn { space: self.space.clone(), value })
    }

    /// Pointwise maximum of `self` and `other`.
    pub fn oplus(&self, other: &MeasurableFn) -> Result<Self> {
        if self.space != other.space {
            return Err(Error::SpaceMismatch);
        }
        let value = self.value.iter().zip(&other.value).map(|(a, b)| a.oplus(b)).collect();
        Ok(MeasurableFn { space: self.space.clone(), value })
    }

    /// Values replaced by `0` outside `b`.
    pub fn restricted(&self, b: Subset) -> Result<Self> {
        check_subset(&self.space, &b)?;
        let value = (0..self.space.len())
            .map(|i| if b.contains(i) { self.value[i].clone() } else { ExtNonneg::zero() })
            .collect();
        Ok(MeasurableFn { space: self.space.clone(), value })
    }
}

/// A σ-ideal of the powerset, represented by its largest member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SigmaIdeal {
    space: Arc<Space>,
    top: Subset,
    generators: Vec<Subset>,
}

impl SigmaIdeal {
    /// The ideal generated by `generators`; on a finite powerset this is the
    /// powerset of their union.
    pub fn generated_by(space: Arc<Space>, generators: Vec<Subset>) -> Result<Self> {
        let mut top = space.empty();
        for g in &generators {
            check_subset(&space, g)?;
            top = top.union(g);
        }
        Ok(SigmaIdeal { space, top, generators })
    }

    pub fn principal(space: Arc<Space>, top: Subset) -> Result<Self> {
        SigmaIdeal::generated_by(space, vec![top])
    }

    /// `{∅}`.
    pub fn trivial(space: Arc<Space>) -> Self {
        let top = space.empty();
        SigmaIdeal { space, top, generators: Vec::new() }
    }

    pub fn full(space: Arc<Space>) -> Self {
        let top = space.full();
        SigmaIdeal { space, top, generators: vec![top] }
    }

    pub fn space(&self) -> &Arc<Space> {
        &self.space
    }

    pub fn top(&self) -> Subset {
        self.top
    }

    pub fn generators(&self) -> &[Subset] {
        &self.generators
    }

    pub fn contains(&self, b: Subset) -> bool {
        b.universe_size() == self.top.universe_size() && b.is_subset_of(&self.top)
    }
}

/// A set function tabulated over all `2^n` subsets, indexed by bit mask.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetFunctionTable {
    space: Arc<Space>,
    values: Vec<ExtNonneg>,
}

impl SetFunctionTable {
    pub fn new(space: Arc<Space>, values: Vec<ExtNonneg>) -> Result<Self> {
        require_exhaustive(space.len(), EXHAUSTIVE_CAP)?;
        if values.len() != 1usize << space.len() {
            return Err(Error::SpaceMismatch);
        }
        Ok(SetFunctionTable { space, values })
    }

    pub fn space(&self) -> &Arc<Space> {
        &self.space
    }

    pub fn get(&self, b: Subset) -> &ExtNonneg {
        &self.values[b.bits() as usize]
    }

    pub fn values(&self) -> &[ExtNonneg] {
        &self.values
    }
}

/// Whether `table(B ∪ B') = table(B) ⊕ table(B')` for all pairs and the
/// table vanishes at `∅`.
///
/// Checked through the equivalent recurrence `table(B) = table(B ∖ {x}) ⊕
/// table({x})` with `x` the lowest atom of `B`, which is linear in the table.
pub fn check_maxitive(table: &SetFunctionTable) -> bool {
    if !table.values[0].is_zero() {
        return false;
    }
    (1..table.values.len()).all(|b| {
        let low = b & b.wrapping_neg();
        table.values[b] == table.values[b ^ low].oplus(&table.values[low])
    })
}

pub fn is_negligible(mu: &MaxMeasure, b: Subset) -> Result<bool> {
    Ok(mu.eval(b)?.is_zero())
}

/// Atom-wise: every atom carries ⊙-finite mass.
pub fn is_sigma_odot_finite(pm: &PseudoMul, mu: &MaxMeasure) -> Result<bool> {
    for m in mu.masses() {
        if !pm.is_odot_finite(m)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether `μ(B)` equals the supremum of `μ(A)` over ⊙-finite `A ⊆ B`, for
/// every `B`. Exhaustive over the subset lattice.
pub fn is_semi_odot_finite(pm: &PseudoMul, mu: &MaxMeasure) -> Result<bool> {
    let table = mu.table()?;
    let n = mu.space().len();
    // finite_sup[B] = sup { μ(A) : A ⊆ B, μ(A) ⊙-finite }, built by
    // dropping one atom at a time.
    let mut finite_sup = Vec::with_capacity(table.values.len());
    for b in 0..table.values.len() {
        let own = &table.values[b];
        let mut best = if pm.is_odot_finite(own)? { own.clone() } else { ExtNonneg::zero() };
        for i in 0..n {
            if b >> i & 1 == 1 {
                let below: &ExtNonneg = &finite_sup[b ^ (1 << i)];
                if *below > best {
                    best = below.clone();
                }
            }
        }
        finite_sup.push(best);
    }
    Ok(finite_sup.iter().zip(&table.values).all(|(s, v)| s == v))
}

/// Atom-wise form of [`is_semi_odot_finite`]: no atom of ⊙-infinite mass.
pub fn is_semi_odot_finite_atomwise(pm: &PseudoMul, mu: &MaxMeasure) -> Result<bool> {
    is_sigma_odot_finite(pm, mu)
}

/// ⊙-spots: sets of ⊙-infinite measure all of whose subsets have measure
/// zero or ⊙-infinite.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpotReport {
    /// The set of ⊙-infinite atoms, when nonempty. Every spot is contained
    /// in it up to null atoms.
    pub maximal: Option<Vec<String>>,
    /// Singleton spots `{x}`.
    pub atoms: Vec<String>,
}

impl SpotReport {
    pub fn is_empty(&self) -> bool {
        self.maximal.is_none()
    }
}

pub fn find_odot_spots(pm: &PseudoMul, mu: &MaxMeasure) -> Result<SpotReport> {
    let s = odot_infinite_atoms(pm, mu)?;
    let space = mu.space();
    let atoms: Vec<String> = space.labels(s).into_iter().map(String::from).collect();
    let maximal = if s.is_empty() { None } else { Some(atoms.clone()) };
    Ok(SpotReport { maximal, atoms })
}

/// Atoms carrying ⊙-infinite mass.
pub fn odot_infinite_atoms(pm: &PseudoMul, mu: &MaxMeasure) -> Result<Subset> {
    let n = mu.space().len();
    let mut bits = 0u64;
    for i in 0..n {
        if !pm.is_odot_finite(mu.mass(i))? {
            bits |= 1 << i;
        }
    }
    Ok(Subset::from_bits(bits, n))
}

/// Whether `b` is a ⊙-spot of `mu`, straight from the definition.
pub fn is_odot_spot(pm: &PseudoMul, mu: &MaxMeasure, b: Subset) -> Result<bool> {
    if pm.is_odot_finite(&mu.eval(b)?)? {
        return Ok(false);
    }
    for a in b.subsets() {
        let m = mu.eval(a)?;
        if !m.is_zero() && pm.is_odot_finite(&m)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::ChainOp;

    fn v(s: &str) -> ExtNonneg {
        s.parse().unwrap()
    }

    fn measure(pairs: &[(&str, &str)]) -> MaxMeasure {
        let space = Space::new(pairs.iter().map(|p| p.0)).unwrap();
        MaxMeasure::from_labels(space, pairs.iter().map(|(a, m)| (*a, v(m)))).unwrap()
    }

    #[test]
    fn space_rejects_duplicates_and_empty() {
        assert!(Space::new(["a", "b", "a"]).is_err());
        assert!(Space::new(Vec::<String>::new()).is_err());
        assert!(Space::numbered(65).is_err());
        assert!(Space::numbered(64).is_ok());
    }

    #[test]
    fn eval_examples() {
        let nu = measure(&[("a", "1"), ("b", "3")]);
        let s = nu.space().clone();
        assert_eq!(nu.eval(s.full()).unwrap(), v("3"));
        assert_eq!(nu.eval(s.empty()).unwrap(), v("0"));
        let d = delta_sharp(Space::new(["a", "b", "c"]).unwrap());
        assert_eq!(d.eval(d.space().subset(["c"]).unwrap()).unwrap(), v("1"));
        assert_eq!(d.eval(d.space().full()).unwrap(), v("1"));
        assert_eq!(d.eval(d.space().empty()).unwrap(), v("0"));
        assert_eq!(delta_sharp(Space::new(["a"]).unwrap()).mass(0), &v("1"));
    }

    #[test]
    fn foreign_subset_is_a_space_mismatch() {
        let nu = measure(&[("a", "1"), ("b", "3")]);
        assert_eq!(nu.eval(Subset::full(3)), Err(Error::SpaceMismatch));
    }

    #[test]
    fn negligible_examples() {
        let mu = measure(&[("a", "0"), ("b", "1")]);
        let s = mu.space().clone();
        assert!(is_negligible(&mu, s.subset(["a"]).unwrap()).unwrap());
        assert!(is_negligible(&mu, s.empty()).unwrap());
        let d = delta_sharp(s.clone());
        assert!(!is_negligible(&d, s.subset(["a"]).unwrap()).unwrap());
    }

    #[test]
    fn sigma_finiteness_examples() {
        let times = PseudoMul::StandardProduct;
        assert!(is_sigma_odot_finite(&times, &measure(&[("a", "2"), ("b", "3")])).unwrap());
        let inf_delta = measure(&[("a", "inf"), ("b", "inf"), ("c", "inf")]);
        assert!(!is_sigma_odot_finite(&times, &inf_delta).unwrap());
        assert!(is_sigma_odot_finite(&PseudoMul::Minimum, &measure(&[("a", "inf")])).unwrap());
    }

    #[test]
    fn semi_finiteness_examples() {
        let times = PseudoMul::StandardProduct;
        assert!(!is_semi_odot_finite(&times, &measure(&[("a", "inf")])).unwrap());
        assert!(is_semi_odot_finite(&times, &measure(&[("a", "2"), ("b", "1/3")])).unwrap());
        assert!(is_semi_odot_finite(&PseudoMul::Minimum, &measure(&[("a", "inf"), ("b", "4")])).unwrap());
    }

    #[test]
    fn spot_examples() {
        let times = PseudoMul::StandardProduct;
        let mu = measure(&[("a", "inf"), ("b", "1")]);
        let r = find_odot_spots(&times, &mu).unwrap();
        assert_eq!(r.maximal, Some(vec!["a".to_string()]));
        assert!(find_odot_spots(&times, &measure(&[("a", "4"), ("b", "1")])).unwrap().is_empty());
        let chain = PseudoMul::Chain(ChainOp::frontier_fixture());
        let r = find_odot_spots(&chain, &measure(&[("a", "2")])).unwrap();
        assert_eq!(r.maximal, Some(vec!["a".to_string()]));
    }

    #[test]
    fn maxitive_tables() {
        let mu = measure(&[("a", "1"), ("b", "5/2"), ("c", "0")]);
        assert!(check_maxitive(&mu.table().unwrap()));
        let s = Space::new(["a", "b"]).unwrap();
        let additive = SetFunctionTable::new(s.clone(), vec![v("0"), v("1"), v("1"), v("2")]).unwrap();
        assert!(!check_maxitive(&additive));
        let constant = SetFunctionTable::new(s, vec![v("1"); 4]).unwrap();
        assert!(!check_maxitive(&constant));
    }

    #[test]
    fn subset_enumeration() {
        let b = Subset::from_bits(0b1011, 5);
        let subs: Vec<u64> = b.subsets().map(|s| s.bits()).collect();
        assert_eq!(subs.len(), 8);
        assert!(subs.iter().all(|s| s & !0b1011 == 0));
        assert_eq!(Subset::empty(3).subsets().count(), 1);
        assert_eq!(Subset::full(3).complement(), Subset::empty(3));
    }

    #[test]
    fn exhaustive_cap_is_enforced() {
        let s = Space::numbered(21).unwrap();
        assert!(matches!(s.subsets(), Err(Error::SizeCap { n: 21, cap: 20 })));
        assert!(matches!(MaxMeasure::zero(s).table(), Err(Error::SizeCap { .. })));
    }
}
