//! Quotient sets `A/A = {a/a' : a < a'}` as reduced fractions, the gcd-class
//! partition of pairs, and the quotient-size lower bound `α⁴N²/9`.
//!
//! `α = |A|/N` is kept as an exact rational, so every bound here reduces to
//! an integer comparison after cross-multiplying.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::sets::{DensityValue, FiniteIntegerSet};

/// `num/den` in lowest terms with `0 < num < den`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ReducedFraction {
    num: BigUint,
    den: BigUint,
}

impl ReducedFraction {
    /// Reduces `a/b`; requires `0 < a < b`.
    pub fn new(a: &BigUint, b: &BigUint) -> Result<Self> {
        if a.is_zero() || a >= b {
            return Err(Error::invalid(format!("{a}/{b} is not a fraction in (0, 1)")));
        }
        let g = a.gcd(b);
        Ok(ReducedFraction { num: a / &g, den: b / &g })
    }

    pub fn num(&self) -> &BigUint {
        &self.num
    }

    pub fn den(&self) -> &BigUint {
        &self.den
    }
}

impl Ord for ReducedFraction {
    fn cmp(&self, other: &Self) -> Ordering {
        (&self.num * &other.den).cmp(&(&other.num * &self.den))
    }
}

impl PartialOrd for ReducedFraction {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ReducedFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

/// A distinct quotient together with the lexicographically first pair
/// `(a, a')`, `a < a'`, producing it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quotient {
    pub fraction: ReducedFraction,
    pub witness: (BigUint, BigUint),
}

fn require_pairs(set: &FiniteIntegerSet) -> Result<()> {
    if set.len() < 2 {
        return Err(Error::invalid("need at least 2 elements"));
    }
    Ok(())
}

fn quotients_u64(els: &[u64]) -> Vec<Quotient> {
    let mut first: HashMap<(u64, u64), (u64, u64)> = HashMap::new();
    for (i, &a) in els.iter().enumerate() {
        for &b in &els[i + 1..] {
            let g = a.gcd(&b);
            first.entry((a / g, b / g)).or_insert((a, b));
        }
    }
    let mut out: Vec<((u64, u64), (u64, u64))> = first.into_iter().collect();
    out.sort_unstable_by(|((p, q), _), ((r, s), _)| (*p as u128 * *s as u128).cmp(&(*r as u128 * *q as u128)));
    out.into_iter()
        .map(|((p, q), (a, b))| Quotient {
            fraction: ReducedFraction { num: p.into(), den: q.into() },
            witness: (a.into(), b.into()),
        })
        .collect()
}

fn quotients_big(els: &[BigUint]) -> Vec<Quotient> {
    let mut first: HashMap<ReducedFraction, (usize, usize)> = HashMap::new();
    for i in 0..els.len() {
        for j in i + 1..els.len() {
            let f = ReducedFraction::new(&els[i], &els[j]).expect("a < a' for sorted distinct elements");
            first.entry(f).or_insert((i, j));
        }
    }
    let mut out: Vec<Quotient> = first
        .into_iter()
        .map(|(fraction, (i, j))| Quotient { fraction, witness: (els[i].clone(), els[j].clone()) })
        .collect();
    out.sort_unstable_by(|x, y| x.fraction.cmp(&y.fraction));
    out
}

/// Distinct quotients in increasing order, each with its first witness pair.
pub fn quotients_with_witnesses(set: &FiniteIntegerSet) -> Result<Vec<Quotient>> {
    require_pairs(set)?;
    if set.min().is_some_and(|m| m.is_zero()) {
        return Err(Error::invalid("0 cannot appear in a quotient a/a' with a > 0"));
    }
    Ok(match set.to_u64s() {
        Some(small) => quotients_u64(&small),
        None => quotients_big(set.elements()),
    })
}

/// `A/A` in increasing order.
pub fn quotient_set(set: &FiniteIntegerSet) -> Result<Vec<ReducedFraction>> {
    Ok(quotients_with_witnesses(set)?.into_iter().map(|q| q.fraction).collect())
}

/// Pair counts `|(A×A)_d|` keyed by `d = gcd(a, a')`, `a < a'`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GcdClassTable {
    counts: BTreeMap<BigUint, u64>,
}

impl GcdClassTable {
    pub fn get(&self, d: &BigUint) -> u64 {
        self.counts.get(d).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&BigUint, u64)> {
        self.counts.iter().map(|(d, c)| (d, *c))
    }

    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    /// Largest class, smallest `d` on ties.
    pub fn largest(&self) -> Option<(&BigUint, u64)> {
        self.largest_where(|_| true)
    }

    /// Largest class among `d <= limit`, smallest `d` on ties.
    pub fn largest_up_to(&self, limit: &BigUint) -> Option<(&BigUint, u64)> {
        self.largest_where(|d| d <= limit)
    }

    fn largest_where(&self, keep: impl Fn(&BigUint) -> bool) -> Option<(&BigUint, u64)> {
        self.iter().filter(|(d, _)| keep(d)).fold(None, |best, (d, c)| match best {
            Some((_, bc)) if bc >= c => best,
            _ => Some((d, c)),
        })
    }
}

pub fn gcd_classes(set: &FiniteIntegerSet) -> Result<GcdClassTable> {
    require_pairs(set)?;
    let mut counts = BTreeMap::new();
    match set.to_u64s() {
        Some(els) => {
            let mut small: HashMap<u64, u64> = HashMap::new();
            for (i, &a) in els.iter().enumerate() {
                for &b in &els[i + 1..] {
                    *small.entry(a.gcd(&b)).or_default() += 1;
                }
            }
            counts.extend(small.into_iter().map(|(d, c)| (BigUint::from(d), c)));
        }
        None => {
            let els = set.elements();
            for i in 0..els.len() {
                for b in &els[i + 1..] {
                    *counts.entry(els[i].gcd(b)).or_default() += 1;
                }
            }
        }
    }
    Ok(GcdClassTable { counts })
}

fn rational_string(num: &BigInt, den: &BigInt) -> String {
    let g = num.gcd(den);
    if g.is_zero() {
        return format!("0/{den}");
    }
    format!("{}/{}", num / &g, den / &g)
}

/// Outcome of the quotient-size check for `A ⊆ [1, N]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Theorem5Report {
    pub n: u64,
    pub size: usize,
    #[serde(serialize_with = "crate::json::density")]
    pub alpha: DensityValue,
    /// `T = ⌈2/α²⌉`.
    #[serde(rename = "T", serialize_with = "crate::json::big")]
    pub t_param: BigUint,
    #[serde(serialize_with = "crate::json::big")]
    pub best_d: BigUint,
    pub class_size: u64,
    pub quotient_size: usize,
    /// `α⁴N²/9`.
    pub bound: String,
    /// `N²(α²/T − 1/T²)`.
    pub intermediate_bound: String,
    pub intermediate_holds: bool,
    pub class_bound_holds: bool,
    pub quotient_bound_holds: bool,
    pub pass: bool,
}

fn check_universe(set: &FiniteIntegerSet, n: u64) -> Result<()> {
    require_pairs(set)?;
    let lo_ok = set.min().is_some_and(|m| !m.is_zero());
    let hi_ok = set.max().is_some_and(|m| m <= &BigUint::from(n));
    if !lo_ok || !hi_ok {
        return Err(Error::invalid(format!("set is not contained in [1, {n}]")));
    }
    Ok(())
}

pub fn theorem5_check(set: &FiniteIntegerSet, n: u64) -> Result<Theorem5Report> {
    check_universe(set, n)?;
    let size = set.len() as u64;
    let alpha = DensityValue::from_ratio(size, n)?;
    let k = BigUint::from(size);
    let nn = BigUint::from(n);
    let k2 = &k * &k;
    let n2 = &nn * &nn;
    let k4 = &k2 * &k2;
    // T = ⌈2/α²⌉ = ⌈2N²/|A|²⌉
    let t_param = Integer::div_ceil(&(&n2 * 2u32), &k2);

    let classes = gcd_classes(set)?;
    let (best_d, class_size) =
        classes.largest_up_to(&t_param).map(|(d, c)| (d.clone(), c)).unwrap_or((BigUint::one(), 0));
    let quotient_size = quotient_set(set)?.len();

    // α⁴N²/9 = |A|⁴ / (9N²)
    let bound_den = &n2 * 9u32;
    let class_bound_holds = BigUint::from(class_size) * &bound_den >= k4;
    let quotient_bound_holds = BigUint::from(quotient_size) * &bound_den >= k4;

    // N²(α²/T − 1/T²) = (|A|²T − N²) / T²
    let inter_num = BigInt::from(&k2 * &t_param) - BigInt::from(n2.clone());
    let inter_den = BigInt::from(&t_param * &t_param);
    let intermediate_holds = BigInt::from(class_size) * &inter_den >= inter_num;

    Ok(Theorem5Report {
        n,
        size: set.len(),
        alpha,
        t_param,
        best_d,
        class_size,
        quotient_size,
        bound: rational_string(&BigInt::from(k4.clone()), &BigInt::from(bound_den)),
        intermediate_bound: rational_string(&inter_num, &inter_den),
        intermediate_holds,
        class_bound_holds,
        quotient_bound_holds,
        pass: class_bound_holds && quotient_bound_holds,
    })
}

/// Closest adjacent pair of quotients and the integer product gap it induces.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CloseQuotients {
    pub first: String,
    pub second: String,
    #[serde(serialize_with = "crate::json::big_vec")]
    pub first_witness: Vec<BigUint>,
    #[serde(serialize_with = "crate::json::big_vec")]
    pub second_witness: Vec<BigUint>,
    /// `second − first`.
    pub distance: String,
    /// `9α⁻⁴N⁻²`.
    pub distance_bound: String,
    /// `|a·a''' − a'·a''|`.
    #[serde(serialize_with = "crate::json::big")]
    pub product_gap: BigUint,
    /// `9α⁻⁴`.
    pub product_gap_bound: String,
    pub distance_ok: bool,
    pub product_gap_ok: bool,
}

impl CloseQuotients {
    pub fn holds(&self) -> bool {
        self.distance_ok && self.product_gap_ok
    }
}

pub fn close_quotients(set: &FiniteIntegerSet, n: u64) -> Result<CloseQuotients> {
    check_universe(set, n)?;
    let k = BigUint::from(set.len());
    let k4 = k.pow(4);
    let nn = BigUint::from(n);
    let n2 = &nn * &nn;
    // need α⁴N²/9 > 1, i.e. |A|⁴ > 9N²
    if k4 <= &n2 * 9u32 {
        return Err(Error::InsufficientSize(format!("|A|⁴ = {k4} does not exceed 9N² = {}", &n2 * 9u32)));
    }
    let qs = quotients_with_witnesses(set)?;
    if qs.len() < 2 {
        return Err(Error::InsufficientSize("fewer than two distinct quotients".into()));
    }
    // distance of adjacent p/q < r/s is (rq − ps)/(qs)
    let dist = |x: &ReducedFraction, y: &ReducedFraction| (&y.num * &x.den - &x.num * &y.den, &x.den * &y.den);
    let mut best = 0usize;
    let mut best_dist = dist(&qs[0].fraction, &qs[1].fraction);
    for i in 1..qs.len() - 1 {
        let d = dist(&qs[i].fraction, &qs[i + 1].fraction);
        if &d.0 * &best_dist.1 < &best_dist.0 * &d.1 {
            best = i;
            best_dist = d;
        }
    }
    let (x, y) = (&qs[best], &qs[best + 1]);
    let (a, a1) = &x.witness;
    let (a2, a3) = &y.witness;
    let p = a * a3;
    let q = a1 * a2;
    let product_gap = if p >= q { &p - &q } else { &q - &p };

    // distance ≤ 9N²/|A|⁴ and product gap ≤ 9N⁴/|A|⁴
    let distance_ok = &best_dist.0 * &k4 <= &n2 * 9u32 * &best_dist.1;
    let product_gap_ok = &product_gap * &k4 <= &n2 * &n2 * 9u32;
    let int = |v: &BigUint| BigInt::from(v.clone());
    Ok(CloseQuotients {
        first: x.fraction.to_string(),
        second: y.fraction.to_string(),
        first_witness: vec![a.clone(), a1.clone()],
        second_witness: vec![a2.clone(), a3.clone()],
        distance: rational_string(&int(&best_dist.0), &int(&best_dist.1)),
        distance_bound: rational_string(&int(&(&n2 * 9u32)), &int(&k4)),
        product_gap,
        product_gap_bound: rational_string(&int(&(&n2 * &n2 * 9u32)), &int(&k4)),
        distance_ok,
        product_gap_ok,
    })
}

/// Exact `|A/A| / |A|²` and `max_d |(A×A)_d| / |A|²` (both equal the ratio to
/// `α²N²` since `α = |A|/N`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuestionRatios {
    pub quotient_size: usize,
    pub max_class: u64,
    pub q_ratio: (BigUint, BigUint),
    pub class_ratio: (BigUint, BigUint),
}

pub fn question_ratios(set: &FiniteIntegerSet) -> Result<QuestionRatios> {
    let quotient_size = quotient_set(set)?.len();
    let max_class = gcd_classes(set)?.largest().map(|(_, c)| c).unwrap_or(0);
    if (quotient_size as u64) < max_class {
        return Err(Error::Internal(format!("|A/A| = {quotient_size} is below the largest gcd class {max_class}")));
    }
    let k2 = BigUint::from(set.len()).pow(2);
    let reduce = |v: BigUint| {
        let g = v.gcd(&k2);
        (&v / &g, &k2 / &g)
    };
    Ok(QuestionRatios {
        quotient_size,
        max_class,
        q_ratio: reduce(BigUint::from(quotient_size)),
        class_ratio: reduce(BigUint::from(max_class)),
    })
}
