//! Families of subsets of `[n]` that realize every pattern on every `l`-set.
//!
//! Element `i` of `[n]` (1-based) is bit `i - 1` of a member and corresponds
//! to the vertex with internal id `i - 1`. Witnesses and hand-built families
//! use the 1-based convention; [`SubsetFamily::member_vertices`] returns
//! 0-based vertex ids.

use std::fmt;
use std::str::FromStr;

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest universe for which the full power set may be built.
pub const EXHAUSTIVE_MAX_N: usize = 24;
/// Largest `C(n, l) * 2^l` the greedy cover is allowed to track.
pub const GREEDY_MAX_CONSTRAINTS: u128 = 10_000_000;
/// Largest `C(n, l) * 2^l` the verifier will enumerate.
pub const VERIFY_MAX_CONSTRAINTS: u128 = 100_000_000;
/// Failure probability used when `auto` falls back to the randomized strategy.
pub const AUTO_DELTA: f64 = 1e-3;
/// Random candidates scored per greedy round, in addition to one repair candidate.
const GREEDY_CANDIDATES: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Strategy {
    Auto,
    Exhaustive,
    Greedy,
    Randomized,
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(match self {
            Strategy::Auto => "auto",
            Strategy::Exhaustive => "exhaustive",
            Strategy::Greedy => "greedy",
            Strategy::Randomized => "randomized",
        })
    }
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "auto" => Ok(Strategy::Auto),
            "exhaustive" => Ok(Strategy::Exhaustive),
            "greedy" => Ok(Strategy::Greedy),
            "randomized" => Ok(Strategy::Randomized),
            other => Err(Error::input(format!("unknown strategy {other:?}"))),
        }
    }
}

/// An `l`-set `a` and a subset `b` of it that no member realizes. 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub a: Vec<usize>,
    pub b: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verification {
    Verified,
    Failed(Witness),
    Unverified,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Provenance {
    /// The concrete strategy; never `Auto`.
    pub strategy: Strategy,
    pub seed: Option<u64>,
    pub delta: Option<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SubsetFamily {
    pub n: usize,
    pub l: usize,
    words: usize,
    bits: Vec<u64>,
    pub provenance: Provenance,
    pub verified: Verification,
}

impl SubsetFamily {
    fn empty(n: usize, l: usize, provenance: Provenance) -> Self {
        SubsetFamily {
            n,
            l,
            words: n.div_ceil(64).max(1),
            bits: Vec::new(),
            provenance,
            verified: Verification::Unverified,
        }
    }

    /// Builds a family from explicit 1-based member sets.
    pub fn from_sets(n: usize, l: usize, sets: &[&[usize]]) -> Result<Self> {
        check_params(n, l)?;
        let mut f = Self::empty(
            n,
            l,
            Provenance {
                strategy: Strategy::Exhaustive,
                seed: None,
                delta: None,
            },
        );
        for set in sets {
            let mut member = vec![0u64; f.words];
            for &e in *set {
                if e == 0 || e > n {
                    return Err(Error::input(format!("element {e} outside [1, {n}]")));
                }
                member[(e - 1) / 64] |= 1 << ((e - 1) % 64);
            }
            f.bits.extend_from_slice(&member);
        }
        Ok(f)
    }

    pub fn len(&self) -> usize {
        self.bits.len() / self.words
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn member(&self, i: usize) -> &[u64] {
        &self.bits[i * self.words..(i + 1) * self.words]
    }

    pub fn members(&self) -> impl Iterator<Item = &[u64]> + '_ {
        self.bits.chunks(self.words)
    }

    /// Whether member `i` contains vertex id `v` (element `v + 1`).
    pub fn contains(&self, i: usize, v: usize) -> bool {
        self.member(i)[v / 64] >> (v % 64) & 1 == 1
    }

    pub fn member_size(&self, i: usize) -> usize {
        self.member(i).iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Vertex ids (0-based) of member `i`, ascending.
    pub fn member_vertices(&self, i: usize) -> Vec<usize> {
        bits_to_vertices(self.member(i))
    }

    /// Characteristic vector of member `i` as a `0`/`1` string, element 1 first.
    pub fn member_bitstring(&self, i: usize) -> String {
        (0..self.n)
            .map(|v| if self.contains(i, v) { '1' } else { '0' })
            .collect()
    }
}

pub(crate) fn bits_to_vertices(words: &[u64]) -> Vec<usize> {
    let mut out = Vec::new();
    for (wi, &w) in words.iter().enumerate() {
        let mut w = w;
        while w != 0 {
            let b = w.trailing_zeros() as usize;
            out.push(wi * 64 + b);
            w &= w - 1;
        }
    }
    out
}

fn check_params(n: usize, l: usize) -> Result<()> {
    if n == 0 || l == 0 {
        return Err(Error::input(format!("need 1 <= l <= n, got n = {n}, l = {l}")));
    }
    if l > n {
        return Err(Error::input(format!("l = {l} exceeds n = {n}")));
    }
    Ok(())
}

/// Exact binomial coefficient, `None` on overflow.
pub fn binomial(n: usize, k: usize) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.checked_mul((n - i) as u128)? / (i as u128 + 1);
    }
    Some(acc)
}

/// `C(n, l) * 2^l`, the number of `(A, B)` pairs a universal family must realize.
pub fn constraint_count(n: usize, l: usize) -> Option<u128> {
    binomial(n, l)?.checked_mul(1u128.checked_shl(l as u32)?)
}

fn ln_binomial(n: usize, k: usize) -> f64 {
    match binomial(n, k) {
        Some(c) => (c as f64).ln(),
        None => (0..k).map(|i| ((n - i) as f64).ln() - ((i + 1) as f64).ln()).sum(),
    }
}

/// Member count of the randomized strategy: `ceil(2^l * ln(C(n,l) * 2^l / delta))`.
pub fn randomized_size(n: usize, l: usize, delta: f64) -> u64 {
    let two_l = (l as f64).exp2();
    let ln_constraints = ln_binomial(n, l) + l as f64 * std::f64::consts::LN_2;
    (two_l * (ln_constraints - delta.ln())).ceil() as u64
}

/// Builds an `(n, l)`-universal family with the requested strategy.
///
/// `auto` picks exhaustive when `n <= 24`, greedy when the constraint space
/// fits its guard, and randomized with `delta = 1e-3` otherwise.
pub fn build_universal_set(
    n: usize,
    l: usize,
    strategy: Strategy,
    seed: Option<u64>,
    delta: Option<f64>,
) -> Result<SubsetFamily> {
    check_params(n, l)?;
    let greedy_ok = constraint_count(n, l).is_some_and(|c| c <= GREEDY_MAX_CONSTRAINTS);
    match strategy {
        Strategy::Auto => {
            if n <= EXHAUSTIVE_MAX_N {
                exhaustive(n, l)
            } else if greedy_ok {
                greedy(n, l)
            } else {
                randomized(n, l, seed.unwrap_or(0), delta.unwrap_or(AUTO_DELTA))
            }
        }
        Strategy::Exhaustive => {
            if n > EXHAUSTIVE_MAX_N {
                return Err(Error::capability(format!(
                    "exhaustive strategy needs n <= {EXHAUSTIVE_MAX_N}, got n = {n}"
                )));
            }
            exhaustive(n, l)
        }
        Strategy::Greedy => {
            if !greedy_ok {
                return Err(Error::capability(format!(
                    "greedy strategy needs C(n,l)*2^l <= {GREEDY_MAX_CONSTRAINTS}, got n = {n}, l = {l}"
                )));
            }
            greedy(n, l)
        }
        Strategy::Randomized => {
            let seed = seed.ok_or_else(|| Error::input("randomized strategy requires a seed"))?;
            let delta = delta.ok_or_else(|| Error::input("randomized strategy requires delta"))?;
            randomized(n, l, seed, delta)
        }
    }
}

fn exhaustive(n: usize, l: usize) -> Result<SubsetFamily> {
    let mut f = SubsetFamily::empty(
        n,
        l,
        Provenance {
            strategy: Strategy::Exhaustive,
            seed: None,
            delta: None,
        },
    );
    f.bits = (0..1u64 << n).collect();
    f.verified = Verification::Verified;
    Ok(f)
}

fn randomized(n: usize, l: usize, seed: u64, delta: f64) -> Result<SubsetFamily> {
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::input(format!("delta must lie in (0, 1), got {delta}")));
    }
    let size = randomized_size(n, l, delta);
    let mut f = SubsetFamily::empty(
        n,
        l,
        Provenance {
            strategy: Strategy::Randomized,
            seed: Some(seed),
            delta: Some(delta),
        },
    );
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let last_mask = tail_mask(n);
    f.bits.reserve(size as usize * f.words);
    for _ in 0..size {
        for w in 0..f.words {
            let mut word = rng.next_u64();
            if w + 1 == f.words {
                word &= last_mask;
            }
            f.bits.push(word);
        }
    }
    Ok(f)
}

fn tail_mask(n: usize) -> u64 {
    match n % 64 {
        0 => u64::MAX,
        r => (1u64 << r) - 1,
    }
}

/// All `l`-subsets of `0..n` in lexicographic order, flattened.
fn all_combinations(n: usize, l: usize) -> Vec<u32> {
    let mut out = Vec::new();
    let mut comb: Vec<usize> = (0..l).collect();
    loop {
        out.extend(comb.iter().map(|&x| x as u32));
        if !next_combination(&mut comb, n) {
            break;
        }
    }
    out
}

/// Advances `comb` to the next `k`-subset of `0..n` in lexicographic order.
pub(crate) fn next_combination(comb: &mut [usize], n: usize) -> bool {
    let k = comb.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if comb[i] < n - k + i {
            comb[i] += 1;
            for j in i + 1..k {
                comb[j] = comb[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

fn pattern(member: &[u64], a: &[u32]) -> usize {
    a.iter().enumerate().fold(0, |acc, (j, &e)| {
        let e = e as usize;
        acc | (((member[e / 64] >> (e % 64)) & 1) as usize) << j
    })
}

/// Greedy set cover over the `(A, B)` constraints. Each round scores a batch
/// of pseudorandom candidates plus one candidate built to satisfy the first
/// open constraint, and keeps the one covering the most open constraints.
fn greedy(n: usize, l: usize) -> Result<SubsetFamily> {
    let mut f = SubsetFamily::empty(
        n,
        l,
        Provenance {
            strategy: Strategy::Greedy,
            seed: None,
            delta: None,
        },
    );
    let combos = all_combinations(n, l);
    let per_a = 1usize << l;
    let total = combos.len() / l * per_a;
    let mut covered = vec![false; total];
    let mut open = total;
    let mut cursor = 0;
    let mut rng = ChaCha8Rng::seed_from_u64(((n as u64) << 32) ^ l as u64);
    let mask = tail_mask(n);
    let words = f.words;

    let random_member = |rng: &mut ChaCha8Rng| -> Vec<u64> {
        let mut m: Vec<u64> = (0..words).map(|_| rng.next_u64()).collect();
        m[words - 1] &= mask;
        m
    };

    while open > 0 {
        while covered[cursor] {
            cursor += 1;
        }
        let mut candidates: Vec<Vec<u64>> =
            (0..GREEDY_CANDIDATES).map(|_| random_member(&mut rng)).collect();
        let mut repair = random_member(&mut rng);
        let (ai, b) = (cursor / per_a, cursor % per_a);
        for (j, &e) in combos[ai * l..(ai + 1) * l].iter().enumerate() {
            let e = e as usize;
            if b >> j & 1 == 1 {
                repair[e / 64] |= 1 << (e % 64);
            } else {
                repair[e / 64] &= !(1 << (e % 64));
            }
        }
        candidates.push(repair);

        let gain = |m: &[u64]| -> usize {
            combos
                .chunks(l)
                .enumerate()
                .filter(|(ai, a)| !covered[ai * per_a + pattern(m, a)])
                .count()
        };
        let mut best = 0;
        let mut best_gain = 0;
        for (i, c) in candidates.iter().enumerate() {
            let g = gain(c);
            if g > best_gain {
                best = i;
                best_gain = g;
            }
        }
        let chosen = &candidates[best];
        for (ai, a) in combos.chunks(l).enumerate() {
            let id = ai * per_a + pattern(chosen, a);
            if !covered[id] {
                covered[id] = true;
                open -= 1;
            }
        }
        f.bits.extend_from_slice(chosen);
    }
    f.verified = Verification::Verified;
    Ok(f)
}

/// Checks universality without touching the family's recorded status.
/// Returns the lexicographically first unrealized `(A, B)`, if any.
pub fn check_universal(f: &SubsetFamily) -> Result<Option<Witness>> {
    let (n, l) = (f.n, f.l);
    check_params(n, l)?;
    match constraint_count(n, l) {
        Some(c) if c <= VERIFY_MAX_CONSTRAINTS => {}
        _ => {
            return Err(Error::capability(format!(
                "verification needs C(n,l)*2^l <= {VERIFY_MAX_CONSTRAINTS}, got n = {n}, l = {l}"
            )))
        }
    }
    let witness = (0..=n - l).into_par_iter().find_map_first(|first| {
        let mut realized = vec![false; 1 << l];
        let mut rest: Vec<usize> = (first + 1..first + l).collect();
        let mut a = vec![0u32; l];
        loop {
            a[0] = first as u32;
            for (j, &x) in rest.iter().enumerate() {
                a[j + 1] = x as u32;
            }
            realized.iter_mut().for_each(|r| *r = false);
            for m in f.members() {
                realized[pattern(m, &a)] = true;
            }
            if let Some(w) = first_missing(&realized, &a) {
                return Some(w);
            }
            if rest.is_empty() || !advance_tail(&mut rest, first + 1, n) {
                return None;
            }
        }
    });
    Ok(witness)
}

/// Next combination of `rest` drawn from `lo..n`.
fn advance_tail(rest: &mut [usize], lo: usize, n: usize) -> bool {
    let mut shifted: Vec<usize> = rest.iter().map(|&x| x - lo).collect();
    let ok = next_combination(&mut shifted, n - lo);
    if ok {
        for (r, s) in rest.iter_mut().zip(shifted) {
            *r = s + lo;
        }
    }
    ok
}

fn first_missing(realized: &[bool], a: &[u32]) -> Option<Witness> {
    realized
        .iter()
        .enumerate()
        .filter(|(_, &r)| !r)
        .map(|(p, _)| {
            a.iter()
                .enumerate()
                .filter(|(j, _)| p >> j & 1 == 1)
                .map(|(_, &e)| e as usize + 1)
                .collect::<Vec<_>>()
        })
        .min()
        .map(|b| Witness {
            a: a.iter().map(|&e| e as usize + 1).collect(),
            b,
        })
}

/// Runs [`check_universal`] and records the outcome on the family.
pub fn verify_universal(f: &mut SubsetFamily) -> Result<Option<Witness>> {
    let witness = check_universal(f)?;
    f.verified = match &witness {
        None => Verification::Verified,
        Some(w) => Verification::Failed(w.clone()),
    };
    Ok(witness)
}
