//! Pseudo-multiplications on `[0, ∞]` and their finiteness theory.
//!
//! A pseudo-multiplication `⊙` is associative, monotone in each argument,
//! has a left identity `1_⊙`, has `0` as annihilator and no zero divisors.
//! The zero map is `O(t) = inf_{s > 0} s ⊙ t`; `t` is ⊙-finite when
//! `O(t) = 0`. The ⊙-finite elements form either all of `[0, ∞]` or an
//! interval `[0, φ)`, and [`finiteness_profile`] tells which.

use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ext::ExtNonneg;

/// Relative tolerance used for custom (binary64) pseudo-multiplications.
pub const APPROX_TOLERANCE: f64 = 1e-12;

/// Number of halvings used when estimating `O(t)` for a custom operation.
const ZERO_MAP_STEPS: i32 = 60;

type BinaryFn = dyn Fn(f64, f64) -> f64 + Send + Sync;

/// A pseudo-multiplication given by a closure over binary64 values.
/// `f64::INFINITY` stands for `∞`.
#[derive(Clone)]
pub struct CustomOp {
    name: String,
    op: Arc<BinaryFn>,
    identity: f64,
    samples: Vec<f64>,
    tolerance: f64,
}

impl CustomOp {
    /// `samples` is the sampling domain used by validation and by
    /// [`finiteness_profile`]; `0` and `∞` are always added.
    pub fn new<F>(name: impl Into<String>, identity: f64, samples: Vec<f64>, op: F) -> Self
    where
        F: Fn(f64, f64) -> f64 + Send + Sync + 'static,
    {
        let mut samples: Vec<f64> = samples
            .into_iter()
            .filter(|x| !x.is_nan() && *x >= 0.0)
            .chain([0.0, f64::INFINITY])
            .collect();
        samples.sort_by(|a, b| a.partial_cmp(b).unwrap());
        samples.dedup();
        CustomOp { name: name.into(), op: Arc::new(op), identity, samples, tolerance: APPROX_TOLERANCE }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    fn eval(&self, s: f64, t: f64) -> Result<f64> {
        let v = (self.op)(s, t);
        if v.is_nan() || v < 0.0 {
            Err(Error::NotAValue(v))
        } else {
            Ok(v)
        }
    }
}

impl fmt::Debug for CustomOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CustomOp").field("name", &self.name).field("identity", &self.identity).finish()
    }
}

/// A pseudo-multiplication on a finite chain `0 = c_0 < c_1 < ... < c_k`,
/// given by its full operation table.
///
/// Chains are test fixtures: continuity is vacuous on them, which is what
/// makes a finite frontier `φ` reachable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainOp {
    carrier: Vec<ExtNonneg>,
    table: Vec<Vec<usize>>,
    identity: usize,
}

impl ChainOp {
    /// Builds a chain operation. `identity` may be given explicitly; when it
    /// is `None` the first left identity found in the table is used.
    pub fn new(carrier: Vec<ExtNonneg>, table: Vec<Vec<ExtNonneg>>, identity: Option<ExtNonneg>) -> Result<Self> {
        if carrier.is_empty() || !carrier[0].is_zero() {
            return Err(Error::InvalidOp("chain carrier must start with 0".into()));
        }
        if carrier.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidOp("chain carrier must be strictly increasing".into()));
        }
        let n = carrier.len();
        if table.len() != n {
            return Err(Error::InvalidOp(format!("table has {} rows, carrier has {} elements", table.len(), n)));
        }
        let index_of = |v: &ExtNonneg| carrier.binary_search(v).map_err(|_| Error::Domain(v.clone()));
        let mut idx_table = Vec::with_capacity(n);
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidOp(format!("table row {i} has {} entries, expected {n}", row.len())));
            }
            idx_table.push(row.iter().map(index_of).collect::<Result<Vec<_>>>()?);
        }
        let identity = match identity {
            Some(e) => index_of(&e)?,
            None => (0..n)
                .find(|&e| (0..n).all(|t| idx_table[e][t] == t))
                .ok_or_else(|| Error::InvalidOp("table has no left identity".into()))?,
        };
        Ok(ChainOp { carrier, table: idx_table, identity })
    }

    pub fn carrier(&self) -> &[ExtNonneg] {
        &self.carrier
    }

    pub fn identity(&self) -> &ExtNonneg {
        &self.carrier[self.identity]
    }

    /// Table entries as carrier values, row = left operand.
    pub fn table(&self) -> Vec<Vec<ExtNonneg>> {
        self.table.iter().map(|row| row.iter().map(|&j| self.carrier[j].clone()).collect()).collect()
    }

    fn index(&self, v: &ExtNonneg) -> Result<usize> {
        self.carrier.binary_search(v).map_err(|_| Error::Domain(v.clone()))
    }

    /// The four-element fixture `{0, 1, 2, ∞}`: max on positives except
    /// `1 ⊙ 1 = 1`, so `1` is the identity and `φ = 2`.
    pub fn frontier_fixture() -> Self {
        let c = vec![ExtNonneg::zero(), ExtNonneg::one(), ExtNonneg::from_int(2), ExtNonneg::Infinity];
        let t = |row: [usize; 4]| row.iter().map(|&j| c[j].clone()).collect::<Vec<_>>();
        let table = vec![t([0, 0, 0, 0]), t([0, 1, 2, 3]), t([0, 2, 2, 3]), t([0, 3, 3, 3])];
        ChainOp::new(c.clone(), table, None).expect("fixture is well-formed")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum NumericMode {
    Exact,
    Approximate { tolerance: f64 },
}

/// A pseudo-multiplication `⊙`.
#[derive(Debug, Clone)]
pub enum PseudoMul {
    /// Ordinary product; the integral is Shilkret's.
    StandardProduct,
    /// `min`; the integral is Sugeno's.
    Minimum,
    Custom(CustomOp),
    Chain(ChainOp),
}

impl PseudoMul {
    pub fn name(&self) -> &str {
        match self {
            PseudoMul::StandardProduct => "times",
            PseudoMul::Minimum => "min",
            PseudoMul::Custom(c) => c.name(),
            PseudoMul::Chain(_) => "chain",
        }
    }

    /// The left identity `1_⊙`.
    pub fn identity(&self) -> ExtNonneg {
        match self {
            PseudoMul::StandardProduct => ExtNonneg::one(),
            PseudoMul::Minimum => ExtNonneg::Infinity,
            PseudoMul::Custom(c) => ExtNonneg::from_f64(c.identity).unwrap_or_else(ExtNonneg::zero),
            PseudoMul::Chain(c) => c.identity().clone(),
        }
    }

    pub fn numeric_mode(&self) -> NumericMode {
        match self {
            PseudoMul::Custom(c) => NumericMode::Approximate { tolerance: c.tolerance },
            _ => NumericMode::Exact,
        }
    }

    pub fn is_exact(&self) -> bool {
        self.numeric_mode() == NumericMode::Exact
    }

    /// `s ⊙ t`.
    pub fn omul(&self, s: &ExtNonneg, t: &ExtNonneg) -> Result<ExtNonneg> {
        match self {
            PseudoMul::StandardProduct => Ok(s.times(t)),
            PseudoMul::Minimum => Ok(s.min_of(t)),
            PseudoMul::Custom(c) => {
                let v = c.eval(s.to_f64(), t.to_f64())?;
                ExtNonneg::from_f64(v).ok_or(Error::NotAValue(v))
            }
            PseudoMul::Chain(c) => {
                let (i, j) = (c.index(s)?, c.index(t)?);
                Ok(c.carrier[c.table[i][j]].clone())
            }
        }
    }

    /// Rejects values the operation cannot take as operands.
    pub fn check_member(&self, v: &ExtNonneg) -> Result<()> {
        match self {
            PseudoMul::Chain(c) => c.index(v).map(|_| ()),
            _ => Ok(()),
        }
    }

    /// Equality up to the numeric mode's tolerance.
    pub fn approx_eq(&self, a: &ExtNonneg, b: &ExtNonneg) -> bool {
        match self.numeric_mode() {
            NumericMode::Exact => a == b,
            NumericMode::Approximate { tolerance } => approx_eq_f64(a.to_f64(), b.to_f64(), tolerance),
        }
    }

    /// `a ≤ b` up to the numeric mode's tolerance.
    pub fn approx_le(&self, a: &ExtNonneg, b: &ExtNonneg) -> bool {
        a <= b || (!self.is_exact() && self.approx_eq(a, b))
    }

    /// `O(t) = inf_{s > 0} s ⊙ t`.
    pub fn zero_map(&self, t: &ExtNonneg) -> Result<ExtNonneg> {
        match self.zero_map_estimate(t)? {
            ZeroMap::Value(v) => Ok(v),
            ZeroMap::Unresolved { lo, hi } => Err(Error::Unresolved { lo: Box::new(lo), hi: Box::new(hi) }),
        }
    }

    /// Like [`PseudoMul::zero_map`], but a non-converged custom estimate is
    /// returned as a bracket instead of an error.
    pub fn zero_map_estimate(&self, t: &ExtNonneg) -> Result<ZeroMap> {
        self.check_member(t)?;
        let v = match self {
            PseudoMul::StandardProduct => {
                if t.is_infinite() {
                    ExtNonneg::Infinity
                } else {
                    ExtNonneg::zero()
                }
            }
            PseudoMul::Minimum => ExtNonneg::zero(),
            PseudoMul::Chain(c) => chain_zero_map(c, t),
            PseudoMul::Custom(c) => return custom_zero_map(c, t.to_f64()),
        };
        Ok(ZeroMap::Value(v))
    }

    /// `t ≪_⊙ ∞`.
    pub fn is_odot_finite(&self, t: &ExtNonneg) -> Result<bool> {
        Ok(self.zero_map(t)?.is_zero())
    }

    /// `O(1_⊙) ≠ 0`.
    pub fn is_degenerate(&self) -> Result<bool> {
        Ok(!self.is_odot_finite(&self.identity())?)
    }

    /// Fails with [`Error::Degenerate`] for degenerate operations.
    pub fn require_non_degenerate(&self) -> Result<()> {
        let o = self.zero_map(&self.identity())?;
        if o.is_zero() {
            Ok(())
        } else {
            Err(Error::Degenerate(o))
        }
    }
}

fn approx_eq_f64(a: f64, b: f64, tolerance: f64) -> bool {
    if a == b {
        return true;
    }
    if a.is_infinite() || b.is_infinite() {
        return false;
    }
    (a - b).abs() <= tolerance * a.abs().max(b.abs()).max(1.0)
}

/// Outcome of a zero-map evaluation.
#[derive(Debug, Clone, PartialEq)]
pub enum ZeroMap {
    Value(ExtNonneg),
    /// The decreasing estimate had not settled; the infimum lies in `[lo, hi]`.
    Unresolved { lo: ExtNonneg, hi: ExtNonneg },
}

// On a finite chain the infimum over `s > 0` stops at the least positive
// element, so a literal minimum leaves every positive element ⊙-infinite.
// Finiteness is read off through the inverse criterion instead: `t` is
// ⊙-finite iff `s ⊙ t ≤ 1_⊙` for some positive `s`.
fn chain_zero_map(c: &ChainOp, t: &ExtNonneg) -> ExtNonneg {
    if t.is_zero() {
        return ExtNonneg::zero();
    }
    let ti = c.index(t).expect("checked by caller");
    let positives = 1..c.carrier.len();
    if positives.clone().any(|s| c.table[s][ti] <= c.identity) {
        return ExtNonneg::zero();
    }
    let min = positives.map(|s| c.table[s][ti]).min().unwrap_or(0);
    c.carrier[min].clone()
}

fn custom_zero_map(c: &CustomOp, t: f64) -> Result<ZeroMap> {
    let mut prev = f64::INFINITY;
    let mut cur = f64::INFINITY;
    for k in 0..=ZERO_MAP_STEPS {
        let s = (2.0f64).powi(-k);
        prev = cur;
        cur = cur.min(c.eval(s, t)?);
    }
    let to_ext = |x: f64| ExtNonneg::from_f64(x).ok_or(Error::NotAValue(x));
    if cur.is_infinite() {
        return Ok(ZeroMap::Value(ExtNonneg::Infinity));
    }
    if cur < c.tolerance {
        return Ok(ZeroMap::Value(ExtNonneg::zero()));
    }
    if approx_eq_f64(prev, cur, c.tolerance) {
        Ok(ZeroMap::Value(to_ext(cur)?))
    } else {
        Ok(ZeroMap::Unresolved { lo: ExtNonneg::zero(), hi: to_ext(cur)? })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FrontierShape {
    /// Every element is ⊙-finite.
    WholeInterval,
    /// The ⊙-finite elements are `[0, φ)`.
    HalfOpen,
}

#[derive(Debug, Clone)]
pub struct FinitenessProfile {
    pm: PseudoMul,
    pub shape: FrontierShape,
    /// Supremum of the ⊙-finite elements.
    pub phi: ExtNonneg,
    pub degenerate: bool,
    /// The ⊙-finite carrier elements, for chain operations.
    pub finite_elements: Option<Vec<ExtNonneg>>,
}

impl FinitenessProfile {
    pub fn zero_map(&self, t: &ExtNonneg) -> Result<ExtNonneg> {
        self.pm.zero_map(t)
    }

    pub fn is_finite(&self, t: &ExtNonneg) -> bool {
        match self.shape {
            FrontierShape::WholeInterval => true,
            FrontierShape::HalfOpen => *t < self.phi,
        }
    }
}

/// Classifies the set of ⊙-finite elements.
pub fn finiteness_profile(pm: &PseudoMul) -> Result<FinitenessProfile> {
    let degenerate = pm.is_degenerate()?;
    let (shape, phi, finite_elements) = match pm {
        PseudoMul::StandardProduct => (FrontierShape::HalfOpen, ExtNonneg::Infinity, None),
        PseudoMul::Minimum => (FrontierShape::WholeInterval, ExtNonneg::Infinity, None),
        PseudoMul::Chain(c) => {
            let mut finite = Vec::new();
            let mut first_infinite = None;
            for t in &c.carrier {
                if pm.is_odot_finite(t)? {
                    finite.push(t.clone());
                } else if first_infinite.is_none() {
                    first_infinite = Some(t.clone());
                }
            }
            match first_infinite {
                None => (FrontierShape::WholeInterval, c.carrier.last().cloned().unwrap(), Some(finite)),
                Some(phi) => (FrontierShape::HalfOpen, phi, Some(finite)),
            }
        }
        PseudoMul::Custom(c) => {
            let (shape, phi) = custom_frontier(pm, c)?;
            (shape, phi, None)
        }
    };
    Ok(FinitenessProfile { pm: pm.clone(), shape, phi, degenerate, finite_elements })
}

fn custom_frontier(pm: &PseudoMul, c: &CustomOp) -> Result<(FrontierShape, ExtNonneg)> {
    let finite_at = |x: f64| -> Result<bool> {
        let v = ExtNonneg::from_f64(x).ok_or(Error::NotAValue(x))?;
        pm.is_odot_finite(&v)
    };
    if finite_at(f64::INFINITY)? {
        return Ok((FrontierShape::WholeInterval, ExtNonneg::Infinity));
    }
    let mut last_finite = 0.0;
    let mut first_infinite = f64::INFINITY;
    for &x in &c.samples {
        if finite_at(x)? {
            last_finite = x;
        } else {
            first_infinite = x;
            break;
        }
    }
    if first_infinite.is_infinite() {
        return Ok((FrontierShape::HalfOpen, ExtNonneg::Infinity));
    }
    let (mut lo, mut hi) = (last_finite, first_infinite);
    for _ in 0..200 {
        if hi - lo <= c.tolerance * hi.max(1.0) {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if finite_at(mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok((FrontierShape::HalfOpen, ExtNonneg::from_f64(hi).ok_or(Error::NotAValue(hi))?))
}

// ---------------------------------------------------------------------------
// Axiom validation
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationBudget {
    /// Random rationals added to the fixed sample set (exact built-ins).
    pub random_samples: usize,
    pub seed: u64,
}

impl Default for ValidationBudget {
    fn default() -> Self {
        ValidationBudget { random_samples: 24, seed: 0x5eed }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Axiom {
    Associativity,
    Monotonicity,
    LeftIdentity,
    Annihilator,
    NoZeroDivisors,
    Continuity,
    /// The ⊙-finite elements are downward closed.
    DownwardClosed,
    /// `φ > 1_⊙` when the frontier is half-open.
    FrontierAboveIdentity,
    /// `O(φ) = φ` and `φ ⊙ φ = φ`.
    FrontierIdempotent,
    /// `t ⊙ φ = φ ⊙ t = φ` for `0 < t ≤ φ`.
    FrontierAbsorbing,
    /// `([0, 1_⊙], ⊙)` is commutative.
    UnitIntervalCommutative,
    /// No `t < φ < t'` with `t ⊙ t' = φ`.
    NoCrossing,
    /// `t` ⊙-finite iff `s ⊙ t ≤ 1_⊙` (or `t ⊙ s ≤ 1_⊙`, or either product
    /// ⊙-finite) for some `s > 0`.
    FiniteInverse,
}

impl Axiom {
    pub fn label(&self) -> &'static str {
        match self {
            Axiom::Associativity => "associativity",
            Axiom::Monotonicity => "monotonicity",
            Axiom::LeftIdentity => "left identity",
            Axiom::Annihilator => "0 is an annihilator",
            Axiom::NoZeroDivisors => "absence of zero divisors",
            Axiom::Continuity => "continuity (sampled)",
            Axiom::DownwardClosed => "finite elements downward closed",
            Axiom::FrontierAboveIdentity => "phi above identity",
            Axiom::FrontierIdempotent => "O(phi) = phi and phi idempotent",
            Axiom::FrontierAbsorbing => "t * phi = phi * t = phi",
            Axiom::UnitIntervalCommutative => "commutative on [0, 1]",
            Axiom::NoCrossing => "no crossing of phi",
            Axiom::FiniteInverse => "finite-inverse criterion",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum CheckStatus {
    Pass,
    Fail { witness: Vec<ExtNonneg> },
    Skipped { reason: String },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AxiomCheck {
    pub axiom: Axiom,
    #[serde(flatten)]
    pub status: CheckStatus,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub checks: Vec<AxiomCheck>,
    pub degenerate: bool,
    /// Whether scans covered the whole carrier (chains) or a sample.
    pub exhaustive: bool,
    pub sample_size: usize,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| !matches!(c.status, CheckStatus::Fail { .. }))
    }

    pub fn status(&self, axiom: Axiom) -> Option<&CheckStatus> {
        self.checks.iter().find(|c| c.axiom == axiom).map(|c| &c.status)
    }

    pub fn failures(&self) -> impl Iterator<Item = &AxiomCheck> {
        self.checks.iter().filter(|c| matches!(c.status, CheckStatus::Fail { .. }))
    }
}

/// The fixed probe set used for exact built-ins, before random additions.
fn base_samples() -> Vec<ExtNonneg> {
    let mut v = vec![
        ExtNonneg::zero(),
        ExtNonneg::ratio(1, 1024),
        ExtNonneg::ratio(1, 7),
        ExtNonneg::ratio(1, 2),
        ExtNonneg::one(),
        ExtNonneg::ratio(3, 2),
        ExtNonneg::from_int(2),
        ExtNonneg::from_int(5),
        ExtNonneg::from_int(1000),
        ExtNonneg::Infinity,
    ];
    v.sort();
    v
}

/// The carrier sample used by [`validate_pseudo_mul`].
pub fn sample_carrier(pm: &PseudoMul, budget: ValidationBudget) -> Vec<ExtNonneg> {
    let mut v = match pm {
        PseudoMul::Chain(c) => return c.carrier.clone(),
        PseudoMul::Custom(c) => c.samples.iter().filter_map(|&x| ExtNonneg::from_f64(x)).collect(),
        _ => base_samples(),
    };
    if !matches!(pm, PseudoMul::Custom(_)) {
        let mut rng = ChaCha8Rng::seed_from_u64(budget.seed);
        for _ in 0..budget.random_samples {
            let num: u64 = rng.gen_range(0..2000);
            let den: u64 = rng.gen_range(1..64);
            v.push(ExtNonneg::ratio(num, den));
        }
    }
    v.push(pm.identity());
    v.sort();
    v.dedup();
    v
}

/// Positive probes for existential checks over `s > 0`: positive carrier
/// samples plus dyadic values down to `2^-60` (continuous operations only).
fn positive_probes(pm: &PseudoMul, samples: &[ExtNonneg]) -> Vec<ExtNonneg> {
    let mut v: Vec<ExtNonneg> = samples.iter().filter(|x| x.is_positive()).cloned().collect();
    if !matches!(pm, PseudoMul::Chain(_)) {
        for k in 1..=60u32 {
            v.push(ExtNonneg::ratio(1, 1u64 << k));
        }
    }
    v.sort();
    v.dedup();
    v
}

/// Checks the pseudo-multiplication axioms and, for non-degenerate
/// operations, the structure of the ⊙-finite frontier.
///
/// Scans are exhaustive for chains and sampled otherwise. Failures carry a
/// witness (pair or triple of operands); evaluation errors are reported as
/// failures with an empty witness.
pub fn validate_pseudo_mul(pm: &PseudoMul, budget: ValidationBudget) -> AxiomReport {
    let samples = sample_carrier(pm, budget);
    let mut checks = Vec::new();
    let mut push = |axiom: Axiom, status: CheckStatus| checks.push(AxiomCheck { axiom, status });

    let mul = |s: &ExtNonneg, t: &ExtNonneg| pm.omul(s, t);
    push(Axiom::Associativity, check_associativity(pm, &samples));
    push(Axiom::Monotonicity, check_monotonicity(pm, &samples));

    let one = pm.identity();
    push(
        Axiom::LeftIdentity,
        first_failure(samples.iter().map(|t| {
            let ok = mul(&one, t).map(|v| pm.approx_eq(&v, t));
            (ok, vec![one.clone(), t.clone()])
        })),
    );
    let zero = ExtNonneg::zero();
    push(
        Axiom::Annihilator,
        first_failure(samples.iter().map(|t| {
            let ok = mul(&zero, t).and_then(|a| Ok(a.is_zero() && mul(t, &zero)?.is_zero()));
            (ok, vec![zero.clone(), t.clone()])
        })),
    );
    push(
        Axiom::NoZeroDivisors,
        first_failure(pairs(&samples).filter(|(s, t)| s.is_positive() && t.is_positive()).map(|(s, t)| {
            let ok = mul(s, t).map(|v| v.is_positive() && !(pm.approx_eq(&v, &zero) && !pm.is_exact()));
            (ok, vec![s.clone(), t.clone()])
        })),
    );
    match pm {
        PseudoMul::Custom(c) => push(Axiom::Continuity, check_continuity(c, &samples)),
        PseudoMul::Chain(_) => push(Axiom::Continuity, CheckStatus::Skipped { reason: "vacuous on a finite chain".into() }),
        _ => push(Axiom::Continuity, CheckStatus::Pass),
    }

    let degenerate = pm.is_degenerate().unwrap_or(true);
    let skip = || CheckStatus::Skipped { reason: "degenerate operation".into() };
    if degenerate {
        for a in [
            Axiom::DownwardClosed,
            Axiom::FrontierAboveIdentity,
            Axiom::FrontierIdempotent,
            Axiom::FrontierAbsorbing,
            Axiom::UnitIntervalCommutative,
            Axiom::NoCrossing,
            Axiom::FiniteInverse,
        ] {
            push(a, skip());
        }
    } else {
        for (axiom, status) in frontier_checks(pm, &samples) {
            push(axiom, status);
        }
    }

    AxiomReport {
        checks,
        degenerate,
        exhaustive: matches!(pm, PseudoMul::Chain(_)),
        sample_size: samples.len(),
    }
}

fn pairs(samples: &[ExtNonneg]) -> impl Iterator<Item = (&ExtNonneg, &ExtNonneg)> + '_ {
    samples.iter().flat_map(move |s| samples.iter().map(move |t| (s, t)))
}

fn first_failure<I>(cases: I) -> CheckStatus
where
    I: IntoIterator<Item = (Result<bool>, Vec<ExtNonneg>)>,
{
    for (ok, witness) in cases {
        if !matches!(ok, Ok(true)) {
            return CheckStatus::Fail { witness };
        }
    }
    CheckStatus::Pass
}

fn check_associativity(pm: &PseudoMul, samples: &[ExtNonneg]) -> CheckStatus {
    for s in samples {
        for t in samples {
            let st = pm.omul(s, t);
            for u in samples {
                let ok = (|| -> Result<bool> {
                    let left = pm.omul(st.as_ref().map_err(Clone::clone)?, u)?;
                    let right = pm.omul(s, &pm.omul(t, u)?)?;
                    Ok(pm.approx_eq(&left, &right))
                })();
                if !matches!(ok, Ok(true)) {
                    return CheckStatus::Fail { witness: vec![s.clone(), t.clone(), u.clone()] };
                }
            }
        }
    }
    CheckStatus::Pass
}

fn check_monotonicity(pm: &PseudoMul, samples: &[ExtNonneg]) -> CheckStatus {
    // samples are sorted, so adjacent pairs suffice
    for w in samples.windows(2) {
        let (lo, hi) = (&w[0], &w[1]);
        for t in samples {
            let ok = (|| -> Result<bool> {
                Ok(pm.approx_le(&pm.omul(lo, t)?, &pm.omul(hi, t)?) && pm.approx_le(&pm.omul(t, lo)?, &pm.omul(t, hi)?))
            })();
            if !matches!(ok, Ok(true)) {
                return CheckStatus::Fail { witness: vec![lo.clone(), hi.clone(), t.clone()] };
            }
        }
    }
    CheckStatus::Pass
}

/// ε–δ probe at finite points: perturbing either operand by a relative
/// `2^-30` must move the product by at most `1e-6` relative.
fn check_continuity(c: &CustomOp, samples: &[ExtNonneg]) -> CheckStatus {
    const DELTA: f64 = 1.0 / (1u64 << 30) as f64;
    const EPS: f64 = 1e-6;
    for s in samples.iter().map(ExtNonneg::to_f64).filter(|x| *x > 0.0 && x.is_finite()) {
        for t in samples.iter().map(ExtNonneg::to_f64).filter(|x| x.is_finite()) {
            let ok = (|| -> Result<bool> {
                let v = c.eval(s, t)?;
                for (ds, dt) in [(1.0 + DELTA, 1.0), (1.0 - DELTA, 1.0), (1.0, 1.0 + DELTA), (1.0, 1.0 - DELTA)] {
                    let w = c.eval(s * ds, t * dt)?;
                    if v.is_infinite() != w.is_infinite() {
                        return Ok(false);
                    }
                    if v.is_finite() && (v - w).abs() > EPS * v.abs().max(1.0) {
                        return Ok(false);
                    }
                }
                Ok(true)
            })();
            if !matches!(ok, Ok(true)) {
                let witness = [s, t].iter().filter_map(|&x| ExtNonneg::from_f64(x)).collect();
                return CheckStatus::Fail { witness };
            }
        }
    }
    CheckStatus::Pass
}

fn frontier_checks(pm: &PseudoMul, samples: &[ExtNonneg]) -> Vec<(Axiom, CheckStatus)> {
    let mut out = Vec::new();
    let finite: Vec<Option<bool>> = samples.iter().map(|t| pm.is_odot_finite(t).ok()).collect();

    // downward closure, on sorted samples
    let mut status = CheckStatus::Pass;
    for i in 0..samples.len() {
        for j in 0..i {
            if finite[i] == Some(true) && finite[j] != Some(true) {
                status = CheckStatus::Fail { witness: vec![samples[j].clone(), samples[i].clone()] };
                break;
            }
        }
        if status != CheckStatus::Pass {
            break;
        }
    }
    out.push((Axiom::DownwardClosed, status));

    let one = pm.identity();
    let profile = finiteness_profile(pm);
    match profile {
        Ok(p) if p.shape == FrontierShape::HalfOpen => {
            let phi = p.phi.clone();
            out.push((
                Axiom::FrontierAboveIdentity,
                if phi > one { CheckStatus::Pass } else { CheckStatus::Fail { witness: vec![phi.clone(), one.clone()] } },
            ));
            let idem = (|| -> Result<bool> {
                Ok(pm.approx_eq(&pm.zero_map(&phi)?, &phi) && pm.approx_eq(&pm.omul(&phi, &phi)?, &phi))
            })();
            out.push((
                Axiom::FrontierIdempotent,
                if matches!(idem, Ok(true)) { CheckStatus::Pass } else { CheckStatus::Fail { witness: vec![phi.clone()] } },
            ));
            let absorbing = first_failure(samples.iter().filter(|t| t.is_positive() && **t <= phi).map(|t| {
                let ok = (|| -> Result<bool> {
                    Ok(pm.approx_eq(&pm.omul(t, &phi)?, &phi) && pm.approx_eq(&pm.omul(&phi, t)?, &phi))
                })();
                (ok, vec![t.clone(), phi.clone()])
            }));
            out.push((Axiom::FrontierAbsorbing, absorbing));
            let crossing = first_failure(
                pairs(samples)
                    .filter(|(t, u)| **t < phi && **u > phi)
                    .map(|(t, u)| (pm.omul(t, u).map(|v| !pm.approx_eq(&v, &phi)), vec![t.clone(), u.clone()])),
            );
            out.push((Axiom::NoCrossing, crossing));
        }
        Ok(_) => {
            let whole = || CheckStatus::Skipped { reason: "every element is finite".into() };
            out.push((Axiom::FrontierAboveIdentity, whole()));
            out.push((Axiom::FrontierIdempotent, whole()));
            out.push((Axiom::FrontierAbsorbing, whole()));
            out.push((Axiom::NoCrossing, whole()));
        }
        Err(_) => {
            for a in [Axiom::FrontierAboveIdentity, Axiom::FrontierIdempotent, Axiom::FrontierAbsorbing, Axiom::NoCrossing] {
                out.push((a, CheckStatus::Fail { witness: vec![] }));
            }
        }
    }

    let unit: Vec<&ExtNonneg> = samples.iter().filter(|t| **t <= one).collect();
    let commutative = first_failure(unit.iter().flat_map(|s| unit.iter().map(move |t| (*s, *t))).map(|(s, t)| {
        let ok = (|| -> Result<bool> { Ok(pm.approx_eq(&pm.omul(s, t)?, &pm.omul(t, s)?)) })();
        (ok, vec![s.clone(), t.clone()])
    }));
    out.push((Axiom::UnitIntervalCommutative, commutative));

    let probes = positive_probes(pm, samples);
    let inverse = first_failure(samples.iter().map(|t| {
        let ok = finite_inverse_holds(pm, t, &probes);
        (ok, vec![t.clone()])
    }));
    out.push((Axiom::FiniteInverse, inverse));
    out
}

/// Evaluates the five equivalent finiteness conditions for `t` over the
/// given positive probes and reports whether they agree.
pub fn finite_inverse_holds(pm: &PseudoMul, t: &ExtNonneg, probes: &[ExtNonneg]) -> Result<bool> {
    let one = pm.identity();
    let finite = pm.is_odot_finite(t)?;
    let mut left_le_one = false;
    let mut right_le_one = false;
    let mut left_finite = false;
    let mut right_finite = false;
    for s in probes {
        let st = pm.omul(s, t)?;
        let ts = pm.omul(t, s)?;
        left_le_one |= pm.approx_le(&st, &one);
        right_le_one |= pm.approx_le(&ts, &one);
        left_finite |= pm.is_odot_finite(&st)?;
        right_finite |= pm.is_odot_finite(&ts)?;
    }
    Ok([left_le_one, right_le_one, left_finite, right_finite].iter().all(|&b| b == finite))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(s: &str) -> ExtNonneg {
        s.parse().unwrap()
    }

    #[test]
    fn omul_examples() {
        let times = PseudoMul::StandardProduct;
        assert_eq!(times.omul(&v("0"), &v("inf")).unwrap(), v("0"));
        for t in ["0", "3/7", "12", "inf"] {
            assert_eq!(times.omul(&v("1"), &v(t)).unwrap(), v(t));
        }
        assert_eq!(PseudoMul::Minimum.omul(&v("inf"), &v("5")).unwrap(), v("5"));
    }

    #[test]
    fn chain_rejects_values_outside_its_carrier() {
        let chain = PseudoMul::Chain(ChainOp::frontier_fixture());
        assert_eq!(chain.omul(&v("3"), &v("1")), Err(Error::Domain(v("3"))));
        assert_eq!(chain.omul(&v("2"), &v("2")).unwrap(), v("2"));
    }

    #[test]
    fn zero_map_examples() {
        let times = PseudoMul::StandardProduct;
        assert_eq!(times.zero_map(&v("5")).unwrap(), v("0"));
        assert_eq!(times.zero_map(&v("inf")).unwrap(), v("inf"));
        assert_eq!(PseudoMul::Minimum.zero_map(&v("inf")).unwrap(), v("0"));
    }

    #[test]
    fn profile_of_built_ins() {
        let p = finiteness_profile(&PseudoMul::StandardProduct).unwrap();
        assert_eq!((p.shape, p.phi.clone(), p.degenerate), (FrontierShape::HalfOpen, v("inf"), false));
        let p = finiteness_profile(&PseudoMul::Minimum).unwrap();
        assert_eq!(p.shape, FrontierShape::WholeInterval);
        assert!(p.is_finite(&v("inf")));
    }

    #[test]
    fn profile_of_chain_fixture() {
        let p = finiteness_profile(&PseudoMul::Chain(ChainOp::frontier_fixture())).unwrap();
        assert_eq!(p.shape, FrontierShape::HalfOpen);
        assert_eq!(p.phi, v("2"));
        assert_eq!(p.finite_elements, Some(vec![v("0"), v("1")]));
        assert_eq!(p.zero_map(&v("2")).unwrap(), v("2"));
        assert_eq!(p.zero_map(&v("inf")).unwrap(), v("inf"));
    }

    #[test]
    fn chain_construction_errors() {
        let c = vec![v("0"), v("1")];
        let wrong_arity = vec![vec![v("0"), v("0")]];
        assert!(matches!(ChainOp::new(c.clone(), wrong_arity, None), Err(Error::InvalidOp(_))));
        let short_row = vec![vec![v("0"), v("0")], vec![v("0")]];
        assert!(matches!(ChainOp::new(c.clone(), short_row, None), Err(Error::InvalidOp(_))));
        let foreign = vec![vec![v("0"), v("0")], vec![v("0"), v("7")]];
        assert_eq!(ChainOp::new(c.clone(), foreign, None), Err(Error::Domain(v("7"))));
        let unsorted = vec![v("0"), v("2"), v("1")];
        assert!(ChainOp::new(unsorted, vec![], None).is_err());
        let no_identity = vec![vec![v("0"), v("0")], vec![v("0"), v("0")]];
        assert!(matches!(ChainOp::new(c, no_identity, None), Err(Error::InvalidOp(_))));
    }

    #[test]
    fn built_ins_pass_validation() {
        for pm in [PseudoMul::StandardProduct, PseudoMul::Minimum, PseudoMul::Chain(ChainOp::frontier_fixture())] {
            let report = validate_pseudo_mul(&pm, ValidationBudget::default());
            assert!(report.passed(), "{}: {:?}", pm.name(), report.failures().collect::<Vec<_>>());
            assert!(!report.degenerate);
        }
    }

    #[test]
    fn zero_divisor_is_reported_with_its_witness() {
        let c = vec![v("0"), v("1"), v("2")];
        let t = |r: [&str; 3]| r.iter().map(|x| v(x)).collect::<Vec<_>>();
        let table = vec![t(["0", "0", "0"]), t(["0", "1", "0"]), t(["0", "2", "2"])];
        let pm = PseudoMul::Chain(ChainOp::new(c, table, Some(v("1"))).unwrap());
        let report = validate_pseudo_mul(&pm, ValidationBudget::default());
        assert_eq!(report.status(Axiom::NoZeroDivisors), Some(&CheckStatus::Fail { witness: vec![v("1"), v("2")] }));
    }

    #[test]
    fn custom_product_matches_built_in() {
        let custom = PseudoMul::Custom(CustomOp::new("times-f64", 1.0, vec![0.25, 0.5, 1.0, 2.0, 8.0], |s, t| {
            if s == 0.0 || t == 0.0 {
                0.0
            } else {
                s * t
            }
        }));
        assert_eq!(custom.zero_map(&v("5")).unwrap(), v("0"));
        assert_eq!(custom.zero_map(&v("inf")).unwrap(), v("inf"));
        let p = finiteness_profile(&custom).unwrap();
        assert_eq!((p.shape, p.phi), (FrontierShape::HalfOpen, v("inf")));
        let report = validate_pseudo_mul(&custom, ValidationBudget::default());
        assert!(report.passed(), "{:?}", report.failures().collect::<Vec<_>>());
    }

    #[test]
    fn right_projection_is_degenerate() {
        // s ⊙ t = t for s > 0: every positive element has O(t) = t.
        let proj = PseudoMul::Custom(CustomOp::new("proj", 1.0, vec![0.5, 1.0, 3.0], |s, t| if s == 0.0 { 0.0 } else { t }));
        assert!(proj.is_degenerate().unwrap());
        assert!(matches!(proj.require_non_degenerate(), Err(Error::Degenerate(_))));
        let report = validate_pseudo_mul(&proj, ValidationBudget::default());
        assert!(report.degenerate);
        assert!(report.passed());
    }

    #[test]
    fn slow_zero_map_is_unresolved() {
        // s ⊙ t = (1 + t) s^(1/100): decreases far too slowly to settle in 60 halvings
        let slow = PseudoMul::Custom(CustomOp::new("slow", 1.0, vec![1.0], |s, t| if s == 0.0 || t == 0.0 { 0.0 } else { (1.0 + t) * s.powf(0.01) }));
        assert!(matches!(slow.zero_map_estimate(&v("1")).unwrap(), ZeroMap::Unresolved { .. }));
        assert!(matches!(slow.zero_map(&v("1")), Err(Error::Unresolved { .. })));
    }

    #[test]
    fn discontinuous_custom_op_fails_continuity() {
        let step = PseudoMul::Custom(CustomOp::new("step", 1.0, vec![0.5, 1.0, 2.0], |s, t| {
            if s == 0.0 || t == 0.0 {
                0.0
            } else if s * t < 1.0 {
                s * t
            } else {
                2.0 * s * t
            }
        }));
        let report = validate_pseudo_mul(&step, ValidationBudget::default());
        assert!(matches!(report.status(Axiom::Continuity), Some(CheckStatus::Fail { .. })));
    }
}
