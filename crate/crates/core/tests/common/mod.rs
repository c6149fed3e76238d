//! Generators and brute-force oracles shared by the integration tests.
//!
//! The oracles work from raw atom masses and bit masks and do not call the
//! library's evaluators.
#![allow(dead_code)]

use std::collections::BTreeSet;
use std::sync::Arc;

use maxitive::arith::PseudoMul;
use maxitive::measure::{MaxMeasure, MeasurableFn, Space, Subset};
use maxitive::ExtNonneg;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn v(s: &str) -> ExtNonneg {
    s.parse().unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    rand::SeedableRng::seed_from_u64(seed)
}

/// A positive rational `p/q` with `p ≤ 40`, `q ≤ 8`.
pub fn finite_positive(rng: &mut ChaCha8Rng) -> ExtNonneg {
    ExtNonneg::ratio(rng.gen_range(1..=40), rng.gen_range(1..=8))
}

/// Mostly positive rationals, with `0` and `∞` mixed in.
pub fn any_value(rng: &mut ChaCha8Rng) -> ExtNonneg {
    match rng.gen_range(0..10) {
        0 => ExtNonneg::zero(),
        1 => ExtNonneg::Infinity,
        _ => finite_positive(rng),
    }
}

pub fn finite_value(rng: &mut ChaCha8Rng) -> ExtNonneg {
    if rng.gen_bool(0.1) {
        ExtNonneg::zero()
    } else {
        finite_positive(rng)
    }
}

pub fn measure_from(space: &Arc<Space>, mass: Vec<ExtNonneg>) -> MaxMeasure {
    MaxMeasure::new(space.clone(), mass).unwrap()
}

pub fn function_from(space: &Arc<Space>, values: Vec<ExtNonneg>) -> MeasurableFn {
    MeasurableFn::new(space.clone(), values).unwrap()
}

pub fn random_measure<F: FnMut(&mut ChaCha8Rng) -> ExtNonneg>(rng: &mut ChaCha8Rng, space: &Arc<Space>, mut gen: F) -> MaxMeasure {
    let mass = (0..space.len()).map(|_| gen(rng)).collect();
    measure_from(space, mass)
}

pub fn random_function<F: FnMut(&mut ChaCha8Rng) -> ExtNonneg>(
    rng: &mut ChaCha8Rng,
    space: &Arc<Space>,
    mut gen: F,
) -> MeasurableFn {
    let values = (0..space.len()).map(|_| gen(rng)).collect();
    function_from(space, values)
}

pub fn random_subset(rng: &mut ChaCha8Rng, n: usize) -> Subset {
    let bits = if n == 64 { rng.gen() } else { rng.gen_range(0..(1u64 << n)) };
    Subset::from_bits(bits, n)
}

pub fn all_subsets(n: usize) -> impl Iterator<Item = Subset> {
    (0..(1u64 << n)).map(move |b| Subset::from_bits(b, n))
}

/// `max_{x ∈ b} mass[x]`.
pub fn set_eval(mass: &[ExtNonneg], bits: u64) -> ExtNonneg {
    let mut acc = ExtNonneg::zero();
    for (i, m) in mass.iter().enumerate() {
        if bits >> i & 1 == 1 && *m > acc {
            acc = m.clone();
        }
    }
    acc
}

/// `sup_t t ⊙ ν(B ∩ {f > t})` with `t` running over `0`, every value of
/// `f` approached from below by `v (1 - 2^-k)`, `k ≤ depth`, and `probe`.
pub fn integral_sup_grid(pm: &PseudoMul, f: &[ExtNonneg], nu: &[ExtNonneg], bits: u64, depth: u32, probe: u64) -> ExtNonneg {
    let mut grid = vec![ExtNonneg::zero(), ExtNonneg::from_int(probe)];
    for x in f {
        if let Some(r) = x.as_rational() {
            grid.push(x.clone());
            for k in 1..=depth {
                let scale = num_rational::BigRational::new(((1u64 << k) - 1).into(), (1u64 << k).into());
                grid.push(ExtNonneg::Finite(r * scale));
            }
        }
    }
    let mut acc = ExtNonneg::zero();
    for t in &grid {
        let above = (0..f.len()).filter(|&i| bits >> i & 1 == 1 && f[i] > *t).fold(0u64, |b, i| b | 1 << i);
        let term = pm.omul(t, &set_eval(nu, above)).unwrap();
        if term > acc {
            acc = term;
        }
    }
    acc
}

/// `⊕_{x ∈ B} f(x) ⊙ ν({x})` straight from masses.
pub fn integral_atoms(pm: &PseudoMul, f: &[ExtNonneg], nu: &[ExtNonneg], bits: u64) -> ExtNonneg {
    let mut acc = ExtNonneg::zero();
    for i in 0..f.len() {
        if bits >> i & 1 == 1 {
            let t = pm.omul(&f[i], &nu[i]).unwrap();
            if t > acc {
                acc = t;
            }
        }
    }
    acc
}

/// `ν(B) = ∫_B c ⊙ dτ` on every subset.
pub fn is_density(pm: &PseudoMul, c: &[ExtNonneg], nu: &[ExtNonneg], tau: &[ExtNonneg]) -> bool {
    let n = c.len();
    (0..(1u64 << n)).all(|b| pm.approx_eq(&integral_atoms(pm, c, tau, b), &set_eval(nu, b)))
}

/// `ν(B) ≤ ∞ ⊙ τ(B)` for every `B` with `τ(B)` ⊙-finite.
pub fn abs_continuous_by_definition(pm: &PseudoMul, nu: &[ExtNonneg], tau: &[ExtNonneg]) -> bool {
    let n = nu.len();
    (0..(1u64 << n)).all(|b| {
        let t = set_eval(tau, b);
        !pm.is_odot_finite(&t).unwrap() || set_eval(nu, b) <= pm.omul(&ExtNonneg::Infinity, &t).unwrap()
    })
}

/// `table[A ∪ B] = max(table[A], table[B])` for every pair, and `table[∅] = 0`.
pub fn maxitive_pairscan(table: &[ExtNonneg]) -> bool {
    if !table[0].is_zero() {
        return false;
    }
    for a in 0..table.len() {
        for b in 0..table.len() {
            let m = if table[a] > table[b] { &table[a] } else { &table[b] };
            if table[a | b] != *m {
                return false;
            }
        }
    }
    true
}

/// `inf { t > 0 : B ∈ 𝒥_t }`, `𝒥_t = { I ∪ C : I ⊆ top, τ(C) ≤ t }`,
/// scanning `t` over the τ-values of all subsets in increasing order.
pub fn nguyen_by_thresholds(tau: &[ExtNonneg], top: u64, b: u64) -> ExtNonneg {
    let n = tau.len();
    let full = (1u64 << n) - 1;
    let mut thresholds: Vec<ExtNonneg> = (0..=full).map(|c| set_eval(tau, c)).collect();
    thresholds.sort();
    thresholds.dedup();
    // decompositions B = I ∪ C with I ⊆ top
    let mut admissible = Vec::new();
    for c in 0..=full {
        let mut i = top;
        loop {
            if i | c == b {
                admissible.push(c);
                break;
            }
            if i == 0 {
                break;
            }
            i = (i - 1) & top;
        }
    }
    for t in &thresholds {
        if admissible.iter().any(|&c| set_eval(tau, c) <= *t) {
            // membership at t = 0 persists for every t > 0
            return t.clone();
        }
    }
    ExtNonneg::Infinity
}

/// Every partition of `0..n` as a list of blocks (bit masks).
pub fn set_partitions(n: usize) -> Vec<Vec<u64>> {
    fn go(i: usize, n: usize, blocks: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if i == n {
            out.push(blocks.clone());
            return;
        }
        for k in 0..blocks.len() {
            blocks[k] |= 1 << i;
            go(i + 1, n, blocks, out);
            blocks[k] &= !(1 << i);
        }
        blocks.push(1 << i);
        go(i + 1, n, blocks, out);
        blocks.pop();
    }
    let mut out = Vec::new();
    go(0, n, &mut Vec::new(), &mut out);
    out
}

/// `sup_π Σ_{P ∈ π} τ(B ∩ P)` over all partitions of the space.
pub fn partition_sup(tau: &[ExtNonneg], b: u64, partitions: &[Vec<u64>]) -> ExtNonneg {
    let mut best = ExtNonneg::zero();
    for p in partitions {
        let s = p.iter().fold(ExtNonneg::zero(), |acc, &blk| acc.plus(&set_eval(tau, b & blk)));
        if s > best {
            best = s;
        }
    }
    best
}

/// Every family of subsets of `0..k` that contains `∅` and is closed
/// downward and under unions, by checking all `2^(2^k)` families.
pub fn ideals_brute(k: usize) -> BTreeSet<Vec<u64>> {
    let size = 1usize << k;
    assert!(size <= 16);
    let mut out = BTreeSet::new();
    for fam in 0u64..(1u64 << size) {
        let has = |x: usize| fam >> x & 1 == 1;
        if !has(0) {
            continue;
        }
        let ok = (0..size).all(|a| {
            !has(a) || ((0..size).all(|s| s & a != s || has(s)) && (0..size).all(|b| !has(b) || has(a | b)))
        });
        if ok {
            out.insert((0..size).filter(|&x| has(x)).map(|x| x as u64).collect());
        }
    }
    out
}
