//! Product sets `B = A·A` as sorted distinct values, windowed enumeration and
//! gap statistics.

use num_bigint::BigUint;
use num_integer::Integer;
use rayon::prelude::*;
use serde::Serialize;

use crate::constructions::MaterializedSequence;
use crate::error::{Error, Result};
use crate::sets::{FiniteIntegerSet, Window};

/// `{a·a' : a, a' ∈ A}`, duplicates collapsed.
pub fn product_set(set: &FiniteIntegerSet) -> FiniteIntegerSet {
    let els = set.elements();
    let mut out = Vec::with_capacity(els.len() * (els.len() + 1) / 2);
    for (i, a) in els.iter().enumerate() {
        for b in &els[i..] {
            out.push(a * b);
        }
    }
    FiniteIntegerSet::new(out)
}

/// Sorted window of a product set together with its consecutive gaps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GapReport {
    window: Window,
    values: Vec<BigUint>,
    gaps: Vec<BigUint>,
}

impl GapReport {
    fn new(window: Window, mut values: Vec<BigUint>) -> Self {
        values.sort_unstable();
        values.dedup();
        let gaps = t_gaps_of(&values, 1);
        GapReport { window, values, gaps }
    }

    pub fn window(&self) -> &Window {
        &self.window
    }

    pub fn values(&self) -> &[BigUint] {
        &self.values
    }

    pub fn gaps(&self) -> &[BigUint] {
        &self.gaps
    }

    /// `b_{i+t} − b_i` for every admissible `i`.
    pub fn t_gaps(&self, t: usize) -> Vec<BigUint> {
        t_gaps_of(&self.values, t)
    }

    pub fn min_gap(&self) -> Option<BigUint> {
        self.gaps.iter().min().cloned()
    }

    pub fn min_t_gap(&self, t: usize) -> Option<BigUint> {
        self.t_gaps(t).into_iter().min()
    }

    /// JSON view; `values` is dropped when there are more than `max_values`.
    pub fn summary(&self, t: Option<usize>, max_values: usize) -> GapSummary {
        GapSummary {
            window: self.window.clone(),
            count: self.values.len(),
            min_gap: self.min_gap(),
            t: t.filter(|&t| t > 1),
            min_t_gap: t.filter(|&t| t > 1).and_then(|t| self.min_t_gap(t)),
            values: (self.values.len() <= max_values).then(|| self.values.clone()),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct GapSummary {
    #[serde(serialize_with = "crate::json::window")]
    pub window: Window,
    pub count: usize,
    #[serde(serialize_with = "crate::json::big_opt")]
    pub min_gap: Option<BigUint>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t: Option<usize>,
    #[serde(serialize_with = "crate::json::big_opt", skip_serializing_if = "Option::is_none")]
    pub min_t_gap: Option<BigUint>,
    #[serde(serialize_with = "crate::json::big_vec_opt", skip_serializing_if = "Option::is_none")]
    pub values: Option<Vec<BigUint>>,
}

fn t_gaps_of(values: &[BigUint], t: usize) -> Vec<BigUint> {
    if t == 0 || values.len() <= t {
        return Vec::new();
    }
    values.iter().zip(&values[t..]).map(|(lo, hi)| hi - lo).collect()
}

/// Appends every `x·y` in `w` with `x ∈ xs`, `y ∈ ys`; when `same` the two
/// slices are the same list and only pairs `x <= y` are taken.
fn pair_products_into(xs: &[BigUint], ys: &[BigUint], same: bool, w: &Window, out: &mut Vec<BigUint>) {
    for (i, x) in xs.iter().enumerate() {
        if x == &BigUint::default() {
            continue;
        }
        let lo = Integer::div_ceil(w.lo(), x);
        let hi = w.hi() / x;
        let from = if same { i } else { 0 };
        let tail = &ys[from..];
        let a = tail.partition_point(|y| y < &lo);
        let b = tail.partition_point(|y| y <= &hi);
        out.extend(tail[a..b.max(a)].iter().map(|y| x * y));
    }
}

fn require_positive_lo(w: &Window) -> Result<()> {
    if w.lo() == &BigUint::default() {
        return Err(Error::invalid("window must start at 1 or later"));
    }
    Ok(())
}

/// Distinct products of pairs from `set` that land in `w`.
pub fn products_in_window(set: &FiniteIntegerSet, w: &Window) -> Result<GapReport> {
    require_positive_lo(w)?;
    let mut values = Vec::new();
    pair_products_into(set.elements(), set.elements(), true, w, &mut values);
    Ok(GapReport::new(w.clone(), values))
}

/// Distinct products landing in `w` for a block sequence. Only block pairs
/// whose product range `[min·min, max·max]` meets `w` are enumerated.
pub fn block_products_in_window(seq: &MaterializedSequence, w: &Window) -> Result<GapReport> {
    require_positive_lo(w)?;
    let blocks = seq.blocks();
    let pairs: Vec<(usize, usize)> = (0..blocks.len())
        .flat_map(|i| (i..blocks.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| {
            let (a, b) = (&blocks[i].elements, &blocks[j].elements);
            match (a.min(), a.max(), b.min(), b.max()) {
                (Some(amin), Some(amax), Some(bmin), Some(bmax)) => {
                    let lo = amin * bmin;
                    let hi = amax * bmax;
                    &lo <= w.hi() && w.lo() <= &hi
                }
                _ => false,
            }
        })
        .collect();
    let chunks: Vec<Vec<BigUint>> = pairs
        .par_iter()
        .map(|&(i, j)| {
            let mut out = Vec::new();
            pair_products_into(blocks[i].elements.elements(), blocks[j].elements.elements(), i == j, w, &mut out);
            out
        })
        .collect();
    Ok(GapReport::new(w.clone(), chunks.concat()))
}

/// Exact minimum of `b_{n+t} − b_n` over the whole product set.
pub fn min_gap_oracle(set: &FiniteIntegerSet, t: usize) -> Result<BigUint> {
    if t == 0 {
        return Err(Error::invalid("t must be at least 1"));
    }
    let products = product_set(set);
    t_gaps_of(products.elements(), t)
        .into_iter()
        .min()
        .ok_or_else(|| Error::invalid(format!("{} products cannot have a {t}-gap", products.len())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{materialize, theorem2_spec};
    use crate::sets::DensityValue;

    fn set(v: &[u64]) -> FiniteIntegerSet {
        FiniteIntegerSet::from_u64s(v.iter().copied())
    }

    fn bigs(v: &[u64]) -> Vec<BigUint> {
        v.iter().map(|&x| BigUint::from(x)).collect()
    }

    #[test]
    fn product_set_examples() {
        assert_eq!(product_set(&set(&[1, 2, 3])), set(&[1, 2, 3, 4, 6, 9]));
        assert_eq!(product_set(&set(&[7])), set(&[49]));
        assert_eq!(product_set(&set(&[2, 4])), set(&[4, 8, 16]));
    }

    #[test]
    fn window_of_small_interval() {
        let r = products_in_window(&FiniteIntegerSet::interval(1, 5), &Window::from_u64(1, 10).unwrap()).unwrap();
        assert_eq!(r.values(), bigs(&[1, 2, 3, 4, 5, 6, 8, 9, 10]).as_slice());
        assert_eq!(r.gaps(), bigs(&[1, 1, 1, 1, 1, 2, 1, 1]).as_slice());
    }

    #[test]
    fn window_missing_all_products_is_empty() {
        let r = products_in_window(&set(&[1, 2]), &Window::from_u64(5, 100).unwrap()).unwrap();
        assert!(r.values().is_empty());
        assert!(r.gaps().is_empty());
        assert_eq!(r.min_gap(), None);
        assert!(products_in_window(&set(&[1, 2]), &Window::from_u64(0, 4).unwrap()).is_err());
    }

    #[test]
    fn sidon_block_window() {
        let spec = theorem2_spec(&DensityValue::from_ratio(1, 20).unwrap()).unwrap();
        let seq = materialize(&spec, 1).unwrap();
        let w = Window::from_u64(20000, 25000).unwrap();
        let r = block_products_in_window(&seq, &w).unwrap();
        assert_eq!(r.values(), bigs(&[20736, 21744, 22608, 22801, 23707, 24649]).as_slice());
        assert_eq!(r.min_gap(), Some(BigUint::from(193u32)));
        assert_eq!(r, products_in_window(&seq.union(), &w).unwrap());
    }

    #[test]
    fn oracle_examples() {
        assert_eq!(min_gap_oracle(&set(&[1, 2, 3]), 1).unwrap(), BigUint::from(1u32));
        let block = set(&[144, 151, 157]);
        assert_eq!(min_gap_oracle(&block, 1).unwrap(), BigUint::from(193u32));
        assert_eq!(min_gap_oracle(&block, 5).unwrap(), BigUint::from(3913u32));
        assert!(min_gap_oracle(&block, 6).is_err());
        assert!(min_gap_oracle(&block, 0).is_err());
    }

    #[test]
    fn summary_suppresses_large_value_lists() {
        let r = products_in_window(&FiniteIntegerSet::interval(1, 5), &Window::from_u64(1, 10).unwrap()).unwrap();
        let json = serde_json::to_string(&r.summary(Some(2), 3)).unwrap();
        assert_eq!(json, r#"{"window":[1,10],"count":9,"min_gap":1,"t":2,"min_t_gap":2}"#);
        let json = serde_json::to_string(&r.summary(None, 100)).unwrap();
        assert!(json.ends_with(r#""values":[1,2,3,4,5,6,8,9,10]}"#), "{json}");
    }
}
