//! Erdős–Turán Sidon sets and exhaustive Sidon / spacing checks.

use std::collections::HashMap;

use num_bigint::BigUint;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::sets::FiniteIntegerSet;

/// Trial division; inputs here are tiny.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

pub fn is_odd_prime(n: u64) -> bool {
    n != 2 && is_prime(n)
}

/// `{2pi + (i² mod p) : 0 ≤ i < p}` for an odd prime `p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SidonSet {
    p: u64,
    elements: FiniteIntegerSet,
}

impl SidonSet {
    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn elements(&self) -> &FiniteIntegerSet {
        &self.elements
    }

    pub fn max(&self) -> &BigUint {
        self.elements.max().expect("a Sidon set for a prime is never empty")
    }
}

pub fn erdos_turan_sidon(p: u64) -> Result<SidonSet> {
    if !is_odd_prime(p) {
        return Err(Error::invalid(format!("{p} is not an odd prime")));
    }
    let p_big = BigUint::from(p);
    let elements = (0..p)
        .map(|i| {
            let i = BigUint::from(i);
            let residue = (&i * &i) % &p_big;
            BigUint::from(2u32) * &p_big * i + residue
        })
        .collect();
    Ok(SidonSet { p, elements })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SidonVerdict {
    Valid,
    /// `(w, x, y, z)` with `w + x = y + z` and `{w, x} ≠ {y, z}`.
    Counterexample([BigUint; 4]),
}

impl SidonVerdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, SidonVerdict::Valid)
    }
}

/// Sum-multiset check over unordered pairs with repetition.
///
/// Pairs of distinct elements are scanned first in lexicographic order; the
/// doubled elements `2a` are then looked up against them (two doubles never
/// collide with each other).
pub fn verify_sidon(set: &FiniteIntegerSet) -> SidonVerdict {
    let els = set.elements();
    let mut sums: HashMap<BigUint, (usize, usize)> = HashMap::with_capacity(els.len() * els.len() / 2);
    for i in 0..els.len() {
        for j in i + 1..els.len() {
            let s = &els[i] + &els[j];
            if let Some(&(k, l)) = sums.get(&s) {
                return SidonVerdict::Counterexample([els[k].clone(), els[l].clone(), els[i].clone(), els[j].clone()]);
            }
            sums.insert(s, (i, j));
        }
    }
    for a in els {
        let doubled = a * 2u32;
        if let Some(&(k, l)) = sums.get(&doubled) {
            return SidonVerdict::Counterexample([els[k].clone(), els[l].clone(), a.clone(), a.clone()]);
        }
    }
    SidonVerdict::Valid
}

/// Smallest difference between consecutive sorted elements.
pub fn min_pairwise_gap(set: &FiniteIntegerSet) -> Result<BigUint> {
    set.elements()
        .windows(2)
        .map(|w| &w[1] - &w[0])
        .min()
        .ok_or_else(|| Error::invalid("need at least 2 elements for a pairwise gap"))
}

/// Verdict record emitted by the `sidon` subcommand.
#[derive(Debug, Clone, Serialize)]
pub struct SidonReport {
    pub p: u64,
    pub size: usize,
    #[serde(serialize_with = "crate::json::big")]
    pub max: BigUint,
    #[serde(serialize_with = "crate::json::big")]
    pub min_gap: BigUint,
    pub sidon: bool,
}

impl SidonReport {
    pub fn for_set(set: &SidonSet) -> Self {
        SidonReport {
            p: set.p,
            size: set.elements.len(),
            max: set.max().clone(),
            min_gap: min_pairwise_gap(&set.elements).unwrap_or_default(),
            sidon: verify_sidon(&set.elements).is_valid(),
        }
    }

    /// Both Erdős–Turán claims: Sidon, and spacing at least `p`.
    pub fn holds(&self) -> bool {
        self.sidon && self.min_gap >= BigUint::from(self.p)
    }
}
