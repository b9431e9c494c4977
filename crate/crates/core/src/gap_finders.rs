//! Pigeonhole searches that force products of a dense set close together.
//!
//! * Difference collisions: in a window of length `L²` (`L = ⌈2/α⌉`) cut into
//!   `L` subwindows of length `L`, two within-subwindow pairs share a
//!   difference `δ < L`. For pairs `(a, a')`, `(a'', a''')` with that
//!   difference, `a·a''' − a'·a'' = δ(a'' − a)`, a nonzero product gap of at
//!   most `(L−1)²(L+1) < 16α⁻³`.
//! * Sum representations: in a window of length `L = ⌈4t/α²⌉` some sum
//!   `s = a + a'` has `t + 1` representations, and the `t + 1` products
//!   `a(s − a)` are distinct and span less than `L² ≤ 25t²α⁻⁴`.
//!
//! Every certificate carries its raw integers and can be re-checked with
//! `verify` without rerunning the search.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::sets::{find_dense_windows, DensityValue, FiniteIntegerSet, Window};

/// Largest `L` accepted by the difference-collision search (window `L²`).
pub const MAX_DIFFERENCE_L: u64 = 4096;

/// Largest `L` accepted by the sum-representation search.
pub const MAX_SUM_L: u64 = 20_000;

/// Whether the density precondition is enforced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Mode {
    #[default]
    Strict,
    /// Skip the density check; a missing collision is reported as `None`.
    Illustrative,
}

fn ceil_ratio(num: &BigUint, den: &BigUint, limit: u64, what: &str) -> Result<u64> {
    let value = Integer::div_ceil(num, den);
    value
        .to_u64()
        .filter(|&v| v <= limit)
        .ok_or_else(|| Error::TooLarge(format!("{what} = {value} exceeds the supported limit {limit}")))
}

fn require_positive(alpha: &DensityValue) -> Result<()> {
    if alpha.is_zero() {
        return Err(Error::invalid("alpha must be positive"));
    }
    Ok(())
}

/// `L = ⌈2/α⌉` for the difference-collision search.
pub fn difference_l(alpha: &DensityValue) -> Result<u64> {
    require_positive(alpha)?;
    ceil_ratio(&(alpha.denom() * 2u32), &alpha.numer(), MAX_DIFFERENCE_L, "L")
}

/// `L = ⌈4t/α²⌉` for the sum-representation search.
pub fn sum_l(alpha: &DensityValue, t: u64) -> Result<u64> {
    require_positive(alpha)?;
    let den = alpha.denom();
    let num = alpha.numer();
    ceil_ratio(&(&den * &den * 4u32 * t), &(&num * &num), MAX_SUM_L, "L")
}

fn abs_diff(a: &BigUint, b: &BigUint) -> BigUint {
    if a >= b {
        a - b
    } else {
        b - a
    }
}

/// Offsets of `set` from `w.lo`, after checking `set ⊆ w` and `|w| = length`.
fn offsets(set: &FiniteIntegerSet, w: &Window, length: u64) -> Result<Vec<u64>> {
    if w.length() != BigUint::from(length) {
        return Err(Error::invalid(format!(
            "window {w} has length {} but the search needs length {length}",
            w.length()
        )));
    }
    if !set.is_subset_of(w) {
        return Err(Error::invalid(format!("set is not contained in window {w}")));
    }
    Ok(set.iter().map(|e| (e - w.lo()).to_u64().expect("offset is below the window length")).collect())
}

/// Two within-subwindow pairs with a common difference.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GapCertificate {
    #[serde(serialize_with = "crate::json::window")]
    pub window: Window,
    #[serde(serialize_with = "crate::json::density")]
    pub alpha: DensityValue,
    pub l: u64,
    /// `(a, a')` and `(a'', a''')` with `a > a'`, `a'' > a'''`.
    #[serde(serialize_with = "crate::json::big_pairs")]
    pub pairs: Vec<(BigUint, BigUint)>,
    pub common_difference: u64,
    /// `(a·a''', a'·a'')`.
    #[serde(serialize_with = "crate::json::big_vec")]
    pub products: Vec<BigUint>,
    #[serde(serialize_with = "crate::json::big")]
    pub product_gap: BigUint,
    /// `(L−1)²(L+1)`.
    #[serde(serialize_with = "crate::json::big")]
    pub bound: BigUint,
    /// `Σ C(A_i, 2)` over the subwindows.
    pub pair_count: u64,
}

impl GapCertificate {
    /// Re-checks every invariant from the raw integers.
    pub fn verify(&self) -> std::result::Result<(), String> {
        let l = self.l;
        let lb = BigUint::from(l);
        if difference_l(&self.alpha).ok() != Some(l) {
            return Err(format!("L = {l} does not match alpha {}", self.alpha));
        }
        if self.window.length() != &lb * &lb {
            return Err("window length is not L²".into());
        }
        let [(a, a1), (a2, a3)] = match self.pairs.as_slice() {
            [p, q] => [p.clone(), q.clone()],
            _ => return Err("expected exactly two pairs".into()),
        };
        let delta = BigUint::from(self.common_difference);
        if self.common_difference == 0 || self.common_difference >= l {
            return Err("common difference outside (0, L)".into());
        }
        if a1 >= a || a3 >= a2 || &a - &a1 != delta || &a2 - &a3 != delta {
            return Err("pairs do not share the common difference".into());
        }
        if a == a2 {
            return Err("pairs are identical".into());
        }
        for (hi, lo) in [(&a, &a1), (&a2, &a3)] {
            if !self.window.contains(hi) || !self.window.contains(lo) {
                return Err("pair leaves the window".into());
            }
            if (lo - self.window.lo()) / &lb != (hi - self.window.lo()) / &lb {
                return Err("pair straddles two subwindows".into());
            }
        }
        let p0 = &a * &a3;
        let p1 = &a1 * &a2;
        if self.products != [p0.clone(), p1.clone()] {
            return Err("products do not match the pairs".into());
        }
        let gap = abs_diff(&p0, &p1);
        if gap != self.product_gap || gap == BigUint::default() {
            return Err("product gap is wrong or zero".into());
        }
        if gap != &delta * abs_diff(&a2, &a) {
            return Err("product gap breaks the identity δ·|a'' − a|".into());
        }
        let bound = (&lb - 1u32) * (&lb - 1u32) * (&lb + 1u32);
        if self.bound != bound || gap > bound {
            return Err("product gap exceeds (L−1)²(L+1)".into());
        }
        // (L−1)²(L+1) < 16/α³
        let (num, den) = (self.alpha.numer(), self.alpha.denom());
        if &bound * num.pow(3) >= den.pow(3) * 16u32 {
            return Err("(L−1)²(L+1) is not below 16α⁻³".into());
        }
        if self.pair_count < l {
            return Err("fewer within-subwindow pairs than L".into());
        }
        Ok(())
    }

    /// `verify` plus membership of all four elements in `set`.
    pub fn verify_in(&self, set: &FiniteIntegerSet) -> std::result::Result<(), String> {
        self.verify()?;
        let all = self.pairs.iter().flat_map(|(x, y)| [x, y]);
        if all.into_iter().any(|e| !set.contains(e)) {
            return Err("certificate element missing from the set".into());
        }
        Ok(())
    }
}

/// Strict difference-collision search.
pub fn find_difference_collision(set: &FiniteIntegerSet, w: &Window, alpha: &DensityValue) -> Result<GapCertificate> {
    search_difference_collision(set, w, alpha, Mode::Strict)?
        .ok_or_else(|| Error::Internal("no difference collision although the pigeonhole bound holds".into()))
}

/// Difference-collision search in either mode.
///
/// Scan order: differences ascending; for a difference, pairs by their
/// smaller element. The first pair is matched with the first later pair from
/// another subwindow; only when no difference has pairs in two subwindows is
/// a same-subwindow collision returned.
pub fn search_difference_collision(
    set: &FiniteIntegerSet,
    w: &Window,
    alpha: &DensityValue,
    mode: Mode,
) -> Result<Option<GapCertificate>> {
    let l = difference_l(alpha)?;
    let offs = offsets(set, w, l * l)?;
    let area = BigUint::from(l * l);
    if mode == Mode::Strict && !alpha.met_by(&BigUint::from(offs.len()), &area) {
        return Err(Error::invalid(format!(
            "{} elements in a window of {} is below density {alpha}",
            offs.len(),
            area
        )));
    }

    // subwindow boundaries in the sorted offset list
    let mut bounds = Vec::with_capacity(l as usize + 1);
    for i in 0..=l {
        bounds.push(offs.partition_point(|&o| o < i * l));
    }
    let pair_count: u64 = bounds
        .windows(2)
        .map(|b| {
            let n = (b[1] - b[0]) as u64;
            n * n.saturating_sub(1) / 2
        })
        .sum();
    if mode == Mode::Strict && pair_count < l {
        return Err(Error::Internal(format!("counting step failed: {pair_count} within-subwindow pairs < L = {l}")));
    }

    // pairs (smaller offset) with difference delta, ordered by smaller offset
    let offs_ref = &offs;
    let pairs_with = |delta: u64| {
        let offs = offs_ref;
        offs.iter().copied().filter(move |&o| {
            let sub = o / l;
            let top = o + delta;
            top / l == sub && offs.binary_search(&top).is_ok()
        })
    };

    let mut chosen: Option<(u64, u64, u64)> = None;
    for delta in 1..l {
        let mut it = pairs_with(delta);
        if let Some(first) = it.next() {
            if let Some(second) = it.find(|&o| o / l != first / l) {
                chosen = Some((delta, first, second));
                break;
            }
        }
    }
    if chosen.is_none() {
        for delta in 1..l {
            let mut it = pairs_with(delta);
            if let (Some(first), Some(second)) = (it.next(), it.next()) {
                chosen = Some((delta, first, second));
                break;
            }
        }
    }
    let Some((delta, first, second)) = chosen else {
        return Ok(None);
    };

    let lo = w.lo();
    let a1 = lo + first;
    let a = &a1 + delta;
    let a3 = lo + second;
    let a2 = &a3 + delta;
    let p0 = &a * &a3;
    let p1 = &a1 * &a2;
    let lb = BigUint::from(l);
    let cert = GapCertificate {
        window: w.clone(),
        alpha: alpha.clone(),
        l,
        product_gap: abs_diff(&p0, &p1),
        products: vec![p0, p1],
        pairs: vec![(a, a1), (a2, a3)],
        common_difference: delta,
        bound: (&lb - 1u32) * (&lb - 1u32) * (&lb + 1u32),
        pair_count,
    };
    Ok(Some(cert))
}

/// `t + 1` representations of one sum inside a short window.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClusterCertificate {
    #[serde(serialize_with = "crate::json::window")]
    pub window: Window,
    #[serde(serialize_with = "crate::json::density")]
    pub alpha: DensityValue,
    pub t: u64,
    pub l: u64,
    #[serde(serialize_with = "crate::json::big")]
    pub s: BigUint,
    /// `(a_i, a_i')` with `a_i <= a_i'`, increasing in `a_i`.
    #[serde(serialize_with = "crate::json::big_pairs")]
    pub pairs: Vec<(BigUint, BigUint)>,
    #[serde(serialize_with = "crate::json::big_vec")]
    pub products: Vec<BigUint>,
    #[serde(serialize_with = "crate::json::big")]
    pub span: BigUint,
    /// Number of unordered sums `a + a'`, `a <= a'`, in the window.
    pub sum_count: u64,
}

impl ClusterCertificate {
    pub fn verify(&self) -> std::result::Result<(), String> {
        let l = self.l;
        if sum_l(&self.alpha, self.t).ok() != Some(l) {
            return Err(format!("L = {l} does not match alpha {} and t {}", self.alpha, self.t));
        }
        let lb = BigUint::from(l);
        let l_sq = &lb * &lb;
        if self.window.length() != lb {
            return Err("window length is not L".into());
        }
        if self.pairs.len() as u64 != self.t + 1 || self.products.len() != self.pairs.len() {
            return Err("expected t + 1 pairs and products".into());
        }
        for (i, ((a, b), p)) in self.pairs.iter().zip(&self.products).enumerate() {
            if a > b || a + b != self.s {
                return Err(format!("pair {i} does not sum to s"));
            }
            if !self.window.contains(a) || !self.window.contains(b) {
                return Err(format!("pair {i} leaves the window"));
            }
            if &(a * b) != p {
                return Err(format!("product {i} is wrong"));
            }
        }
        for i in 0..self.pairs.len() {
            for j in i + 1..self.pairs.len() {
                let (ai, bi) = &self.pairs[i];
                let (aj, _) = &self.pairs[j];
                let gap = abs_diff(&self.products[i], &self.products[j]);
                if gap == BigUint::default() {
                    return Err("products are not distinct".into());
                }
                if gap != abs_diff(ai, aj) * abs_diff(bi, aj) || gap >= l_sq {
                    return Err(format!("products {i}, {j} break |(a_i − a_j)(a_i' − a_j)| < L²"));
                }
            }
        }
        let max = self.products.iter().max().expect("t + 1 >= 2 products");
        let min = self.products.iter().min().expect("t + 1 >= 2 products");
        if self.span != max - min || self.span >= l_sq {
            return Err("span is wrong or not below L²".into());
        }
        // L² ≤ 25 t² / α⁴
        let (num, den) = (self.alpha.numer(), self.alpha.denom());
        if &l_sq * num.pow(4) > den.pow(4) * 25u32 * self.t * self.t {
            return Err("L² exceeds 25t²α⁻⁴".into());
        }
        if !counting_holds(self.sum_count, l, self.t, &self.alpha) {
            return Err("sum count is below the pigeonhole requirement".into());
        }
        Ok(())
    }

    pub fn verify_in(&self, set: &FiniteIntegerSet) -> std::result::Result<(), String> {
        self.verify()?;
        if self.pairs.iter().flat_map(|(x, y)| [x, y]).any(|e| !set.contains(e)) {
            return Err("certificate element missing from the set".into());
        }
        Ok(())
    }
}

/// `sum_count ≥ (αL)²/2` and `sum_count > 2Lt`.
fn counting_holds(sum_count: u64, l: u64, t: u64, alpha: &DensityValue) -> bool {
    let count = BigUint::from(sum_count);
    let (num, den) = (alpha.numer(), alpha.denom());
    let lb = BigUint::from(l);
    let half_square = &count * 2u32 * &den * &den >= &num * &num * &lb * &lb;
    half_square && count > &lb * 2u32 * t
}

/// Strict sum-representation search.
pub fn find_sum_representations(
    set: &FiniteIntegerSet,
    w: &Window,
    alpha: &DensityValue,
    t: u64,
) -> Result<ClusterCertificate> {
    search_sum_representations(set, w, alpha, t, Mode::Strict)?
        .ok_or_else(|| Error::Internal("no sum with t + 1 representations although the pigeonhole bound holds".into()))
}

/// Smallest sum `s` with at least `t + 1` representations `a + a'`,
/// `a <= a'`, and its first `t + 1` representations by `a`.
pub fn search_sum_representations(
    set: &FiniteIntegerSet,
    w: &Window,
    alpha: &DensityValue,
    t: u64,
    mode: Mode,
) -> Result<Option<ClusterCertificate>> {
    if t < 2 {
        return Err(Error::invalid(format!("t must be at least 2, got {t}")));
    }
    let l = sum_l(alpha, t)?;
    let offs = offsets(set, w, l)?;
    let n = offs.len() as u64;
    if mode == Mode::Strict && !alpha.met_by(&BigUint::from(n), &BigUint::from(l)) {
        return Err(Error::invalid(format!("{n} elements in a window of {l} is below density {alpha}")));
    }
    let sum_count = n * (n + 1) / 2;
    if mode == Mode::Strict && !counting_holds(sum_count, l, t, alpha) {
        return Err(Error::Internal(format!("counting step failed: {sum_count} sums against L = {l}, t = {t}")));
    }

    let mut counts = vec![0u32; 2 * l as usize];
    for (i, &x) in offs.iter().enumerate() {
        for &y in &offs[i..] {
            counts[(x + y) as usize] += 1;
        }
    }
    let Some(target) = counts.iter().position(|&c| u64::from(c) > t) else {
        return Ok(None);
    };
    let target = target as u64;

    let lo = w.lo();
    let pairs: Vec<(BigUint, BigUint)> = offs
        .iter()
        .copied()
        .take_while(|&x| 2 * x <= target)
        .filter(|&x| offs.binary_search(&(target - x)).is_ok())
        .take(t as usize + 1)
        .map(|x| (lo + x, lo + (target - x)))
        .collect();
    let products: Vec<BigUint> = pairs.iter().map(|(a, b)| a * b).collect();
    let span = products.iter().max().expect("t + 1 products") - products.iter().min().expect("t + 1 products");
    Ok(Some(ClusterCertificate {
        window: w.clone(),
        alpha: alpha.clone(),
        t,
        l,
        s: lo * 2u32 + target,
        pairs,
        products,
        span,
        sum_count,
    }))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Certificate {
    Gap(GapCertificate),
    Cluster(ClusterCertificate),
}

impl Certificate {
    pub fn window(&self) -> &Window {
        match self {
            Certificate::Gap(c) => &c.window,
            Certificate::Cluster(c) => &c.window,
        }
    }

    /// The product gap for `t = 1`, the span for `t >= 2`.
    pub fn product_spread(&self) -> &BigUint {
        match self {
            Certificate::Gap(c) => &c.product_gap,
            Certificate::Cluster(c) => &c.span,
        }
    }

    pub fn verify_in(&self, set: &FiniteIntegerSet) -> std::result::Result<(), String> {
        match self {
            Certificate::Gap(c) => c.verify_in(set),
            Certificate::Cluster(c) => c.verify_in(set),
        }
    }
}

/// One certificate per disjoint dense window of the observation range.
pub fn certify_small_gaps(
    set: &FiniteIntegerSet,
    alpha: &DensityValue,
    t: u64,
    observation: &Window,
) -> Result<Vec<Certificate>> {
    if alpha.is_zero() || alpha.is_one() {
        return Err(Error::invalid(format!("alpha must satisfy 0 < alpha < 1, got {alpha}")));
    }
    if t == 0 {
        return Err(Error::invalid("t must be at least 1"));
    }
    let window_length = if t == 1 {
        let l = difference_l(alpha)?;
        l * l
    } else {
        sum_l(alpha, t)?
    };
    let windows = find_dense_windows(set, window_length, alpha, observation);
    windows
        .par_iter()
        .map(|w| {
            let local = set.restrict(w);
            if t == 1 {
                find_difference_collision(&local, w, alpha).map(Certificate::Gap)
            } else {
                find_sum_representations(&local, w, alpha, t).map(Certificate::Cluster)
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(n: u64, m: u64) -> DensityValue {
        DensityValue::from_ratio(n, m).unwrap()
    }

    fn w(lo: u64, hi: u64) -> Window {
        Window::from_u64(lo, hi).unwrap()
    }

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    fn pairs(v: &[(u64, u64)]) -> Vec<(BigUint, BigUint)> {
        v.iter().map(|&(a, b)| (big(a), big(b))).collect()
    }

    #[test]
    fn parameter_l() {
        assert_eq!(difference_l(&d(1, 2)).unwrap(), 4);
        assert_eq!(difference_l(&d(1, 1)).unwrap(), 2);
        assert_eq!(difference_l(&d(2, 5)).unwrap(), 5);
        assert_eq!(difference_l(&d(1, 3)).unwrap(), 6);
        assert_eq!(sum_l(&d(1, 1), 2).unwrap(), 8);
        assert_eq!(sum_l(&d(1, 10), 5).unwrap(), 2000);
        assert!(difference_l(&DensityValue::zero()).is_err());
        assert!(matches!(difference_l(&d(1, 5000)), Err(Error::TooLarge(_))));
    }

    #[test]
    fn collision_half_density() {
        let c = find_difference_collision(&FiniteIntegerSet::interval(1, 8), &w(1, 16), &d(1, 2)).unwrap();
        assert_eq!(c.pairs, pairs(&[(2, 1), (6, 5)]));
        assert_eq!(c.common_difference, 1);
        assert_eq!(c.products, vec![big(10), big(6)]);
        assert_eq!(c.product_gap, big(4));
        assert_eq!(c.bound, big(45));
        c.verify_in(&FiniteIntegerSet::interval(1, 8)).unwrap();
    }

    #[test]
    fn collision_full_density() {
        let c = find_difference_collision(&FiniteIntegerSet::interval(1, 4), &w(1, 4), &d(1, 1)).unwrap();
        assert_eq!(c.pairs, pairs(&[(2, 1), (4, 3)]));
        assert_eq!(c.products, vec![big(6), big(4)]);
        assert_eq!(c.product_gap, big(2));
        assert_eq!(c.bound, big(3));
        c.verify().unwrap();
    }

    #[test]
    fn collision_rejects_sparse_input() {
        let r = find_difference_collision(&FiniteIntegerSet::interval(1, 3), &w(1, 16), &d(1, 2));
        assert!(matches!(r, Err(Error::InvalidArgument(_))));
        let r = find_difference_collision(&FiniteIntegerSet::interval(1, 8), &w(1, 15), &d(1, 2));
        assert!(matches!(r, Err(Error::InvalidArgument(_))));
        let r = find_difference_collision(&FiniteIntegerSet::interval(1, 17), &w(1, 16), &d(1, 2));
        assert!(matches!(r, Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn same_subwindow_fallback() {
        // everything in the first subwindow of [1,16]: {1,2,3,4}
        let set = FiniteIntegerSet::interval(1, 4);
        let c = search_difference_collision(&set, &w(1, 16), &d(1, 2), Mode::Illustrative).unwrap().unwrap();
        assert_eq!(c.pairs, pairs(&[(2, 1), (3, 2)]));
        assert_eq!(c.product_gap, big(1));
        c.verify().unwrap();
    }

    #[test]
    fn illustrative_mode_reports_softly() {
        let set = FiniteIntegerSet::from_u64s([1, 6]);
        let got = search_difference_collision(&set, &w(1, 16), &d(1, 2), Mode::Illustrative).unwrap();
        assert_eq!(got, None);
        let got = search_sum_representations(&set, &w(1, 8), &d(1, 1), 2, Mode::Illustrative).unwrap();
        assert_eq!(got, None);
    }

    #[test]
    fn sum_representations_t2() {
        let set = FiniteIntegerSet::interval(1, 8);
        let c = find_sum_representations(&set, &w(1, 8), &d(1, 1), 2).unwrap();
        assert_eq!(c.s, big(6));
        assert_eq!(c.pairs, pairs(&[(1, 5), (2, 4), (3, 3)]));
        assert_eq!(c.products, vec![big(5), big(8), big(9)]);
        assert_eq!(c.span, big(4));
        c.verify_in(&set).unwrap();
    }

    #[test]
    fn sum_representations_t3() {
        let set = FiniteIntegerSet::interval(1, 8);
        let c = find_sum_representations(&set, &w(1, 8), &d(1, 1), 3);
        // L = 12 for t = 3 at full density, so [1,8] is the wrong length
        assert!(matches!(c, Err(Error::InvalidArgument(_))));
        let c = search_sum_representations(&set, &w(1, 12), &d(1, 1), 3, Mode::Illustrative).unwrap().unwrap();
        assert_eq!(c.s, big(8));
        assert_eq!(c.pairs, pairs(&[(1, 7), (2, 6), (3, 5), (4, 4)]));
        assert_eq!(c.products, vec![big(7), big(12), big(15), big(16)]);
        assert_eq!(c.span, big(9));
    }

    #[test]
    fn sum_rejects_sparse_input() {
        let sparse = FiniteIntegerSet::from_u64s([1, 2, 4, 8]);
        let r = find_sum_representations(&sparse, &w(1, 8), &d(1, 1), 2);
        assert!(matches!(r, Err(Error::InvalidArgument(_))));
        assert!(find_sum_representations(&sparse, &w(1, 8), &d(1, 1), 1).is_err());
    }

    #[test]
    fn tampered_certificates_fail() {
        let c = find_difference_collision(&FiniteIntegerSet::interval(1, 8), &w(1, 16), &d(1, 2)).unwrap();
        let mut bad = c.clone();
        bad.product_gap = big(3);
        assert!(bad.verify().is_err());
        let mut bad = c.clone();
        bad.pairs[1] = (big(7), big(5));
        assert!(bad.verify().is_err());
        assert!(c.verify_in(&FiniteIntegerSet::interval(2, 8)).is_err());

        let set = FiniteIntegerSet::interval(1, 8);
        let c = find_sum_representations(&set, &w(1, 8), &d(1, 1), 2).unwrap();
        let mut bad = c.clone();
        bad.products[0] = big(6);
        assert!(bad.verify().is_err());
        let mut bad = c;
        bad.pairs[2] = (big(2), big(4));
        assert!(bad.verify().is_err());
    }

    #[test]
    fn certify_examples() {
        let certs = certify_small_gaps(&FiniteIntegerSet::interval(1, 100), &d(1, 2), 1, &w(1, 100)).unwrap();
        assert_eq!(certs.len(), 6);
        for c in &certs {
            c.verify_in(&FiniteIntegerSet::interval(1, 100)).unwrap();
        }

        let none = certify_small_gaps(&FiniteIntegerSet::empty(), &d(1, 2), 1, &w(1, 100)).unwrap();
        assert!(none.is_empty());

        let evens = FiniteIntegerSet::from_u64s((1..=32).map(|i| 2 * i));
        let certs = certify_small_gaps(&evens, &d(2, 5), 1, &w(1, 64)).unwrap();
        assert_eq!(certs.len(), 2);
        for c in &certs {
            c.verify_in(&evens).unwrap();
            assert!(c.product_spread() < &big(250));
        }

        let certs = certify_small_gaps(&FiniteIntegerSet::interval(1, 8), &d(1, 2), 1, &w(1, 16)).unwrap();
        assert_eq!(certs.len(), 1);
        assert_eq!(certs[0].product_spread(), &big(4));
    }

    #[test]
    fn certify_cluster_windows() {
        // t = 2, alpha = 1/2: L = 32
        let set = FiniteIntegerSet::interval(1, 100);
        let certs = certify_small_gaps(&set, &d(1, 2), 2, &w(1, 100)).unwrap();
        assert_eq!(certs.len(), 3);
        for c in &certs {
            c.verify_in(&set).unwrap();
        }
        assert!(certify_small_gaps(&set, &d(1, 1), 1, &w(1, 100)).is_err());
    }

    #[test]
    fn certificate_json_shape() {
        let c = find_difference_collision(&FiniteIntegerSet::interval(1, 4), &w(1, 4), &d(1, 1)).unwrap();
        let json = serde_json::to_string(&Certificate::Gap(c)).unwrap();
        assert_eq!(
            json,
            r#"{"type":"gap","window":[1,4],"alpha":"1/1","l":2,"pairs":[[2,1],[4,3]],"common_difference":1,"products":[6,4],"product_gap":2,"bound":3,"pair_count":2}"#
        );
    }
}
