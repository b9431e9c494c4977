//! Finite integer sets, closed integer windows and exact density estimators.
//!
//! Windows are closed integer ranges `[lo, hi]` whose length counts the
//! integers they contain. Densities are exact rationals in `[0, 1]`; no
//! density comparison ever goes through floating point.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Sorted, duplicate-free collection of nonnegative integers.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct FiniteIntegerSet {
    elements: Vec<BigUint>,
}

impl FiniteIntegerSet {
    /// Builds a set from arbitrary values, sorting and collapsing duplicates.
    pub fn new(mut values: Vec<BigUint>) -> Self {
        values.sort_unstable();
        values.dedup();
        FiniteIntegerSet { elements: values }
    }

    /// Accepts an already strictly increasing list.
    pub fn from_sorted(values: Vec<BigUint>) -> Result<Self> {
        if values.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::invalid("elements are not strictly increasing"));
        }
        Ok(FiniteIntegerSet { elements: values })
    }

    pub fn from_u64s<I: IntoIterator<Item = u64>>(values: I) -> Self {
        Self::new(values.into_iter().map(BigUint::from).collect())
    }

    /// `{lo, lo+1, …, hi}`; empty when `lo > hi`.
    pub fn interval(lo: u64, hi: u64) -> Self {
        FiniteIntegerSet { elements: (lo..=hi).map(BigUint::from).collect() }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn elements(&self) -> &[BigUint] {
        &self.elements
    }

    pub fn into_elements(self) -> Vec<BigUint> {
        self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, BigUint> {
        self.elements.iter()
    }

    pub fn min(&self) -> Option<&BigUint> {
        self.elements.first()
    }

    pub fn max(&self) -> Option<&BigUint> {
        self.elements.last()
    }

    pub fn contains(&self, value: &BigUint) -> bool {
        self.elements.binary_search(value).is_ok()
    }

    /// The elements lying inside `w`, as a contiguous slice.
    pub fn slice_in(&self, w: &Window) -> &[BigUint] {
        let start = self.elements.partition_point(|e| e < &w.lo);
        let end = self.elements.partition_point(|e| e <= &w.hi);
        &self.elements[start..end.max(start)]
    }

    pub fn count_in(&self, w: &Window) -> usize {
        self.slice_in(w).len()
    }

    pub fn restrict(&self, w: &Window) -> FiniteIntegerSet {
        FiniteIntegerSet { elements: self.slice_in(w).to_vec() }
    }

    pub fn is_subset_of(&self, w: &Window) -> bool {
        self.count_in(w) == self.len()
    }

    /// `Some` when every element fits in a `u64`.
    pub fn to_u64s(&self) -> Option<Vec<u64>> {
        self.elements.iter().map(|e| e.to_u64()).collect()
    }

    /// Parses newline-delimited decimals. Blank lines and `#` comments are
    /// ignored; a comment may also trail a number on the same line.
    pub fn parse(text: &str) -> Result<Self> {
        let mut values = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let v = BigUint::from_str(line)
                .map_err(|_| Error::Parse(format!("line {}: not a nonnegative integer: {line:?}", lineno + 1)))?;
            values.push(v);
        }
        Ok(Self::new(values))
    }

    /// Newline-delimited decimals, one per line, trailing newline included.
    pub fn to_lines(&self) -> String {
        let mut out = String::new();
        for e in &self.elements {
            out.push_str(&e.to_string());
            out.push('\n');
        }
        out
    }
}

impl FromIterator<BigUint> for FiniteIntegerSet {
    fn from_iter<T: IntoIterator<Item = BigUint>>(iter: T) -> Self {
        Self::new(iter.into_iter().collect())
    }
}

impl<'a> IntoIterator for &'a FiniteIntegerSet {
    type Item = &'a BigUint;
    type IntoIter = std::slice::Iter<'a, BigUint>;

    fn into_iter(self) -> Self::IntoIter {
        self.elements.iter()
    }
}

/// Closed integer range `[lo, hi]` with `lo <= hi`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Window {
    lo: BigUint,
    hi: BigUint,
}

impl Window {
    pub fn new(lo: BigUint, hi: BigUint) -> Result<Self> {
        if lo > hi {
            return Err(Error::invalid(format!("window lo {lo} exceeds hi {hi}")));
        }
        Ok(Window { lo, hi })
    }

    pub fn from_u64(lo: u64, hi: u64) -> Result<Self> {
        Self::new(lo.into(), hi.into())
    }

    /// Window of `length` integers starting at `lo`. `length` must be positive.
    pub fn with_length(lo: BigUint, length: &BigUint) -> Result<Self> {
        if length.is_zero() {
            return Err(Error::invalid("window length must be positive"));
        }
        let hi = &lo + length - 1u32;
        Ok(Window { lo, hi })
    }

    pub fn lo(&self) -> &BigUint {
        &self.lo
    }

    pub fn hi(&self) -> &BigUint {
        &self.hi
    }

    /// Number of integers in the window.
    pub fn length(&self) -> BigUint {
        &self.hi - &self.lo + 1u32
    }

    pub fn contains(&self, v: &BigUint) -> bool {
        &self.lo <= v && v <= &self.hi
    }

    pub fn intersects(&self, other: &Window) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.lo, self.hi)
    }
}

impl FromStr for Window {
    type Err = Error;

    /// Parses `"lo..hi"`.
    fn from_str(s: &str) -> Result<Self> {
        let (lo, hi) =
            s.split_once("..").ok_or_else(|| Error::Parse(format!("window must look like lo..hi, got {s:?}")))?;
        let parse = |t: &str| BigUint::from_str(t.trim()).map_err(|_| Error::Parse(format!("bad window bound {t:?}")));
        Window::new(parse(lo)?, parse(hi)?)
    }
}

/// Exact rational in `[0, 1]`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DensityValue(BigRational);

impl DensityValue {
    pub fn new(value: BigRational) -> Result<Self> {
        if value < BigRational::zero() || value > BigRational::one() {
            return Err(Error::invalid(format!("density {value} is outside [0, 1]")));
        }
        Ok(DensityValue(value))
    }

    pub fn from_ratio(num: u64, den: u64) -> Result<Self> {
        if den == 0 {
            return Err(Error::invalid("zero denominator"));
        }
        Self::new(BigRational::new(num.into(), den.into()))
    }

    /// `count / total` for counts of unsigned integers.
    pub fn from_counts(count: &BigUint, total: &BigUint) -> Result<Self> {
        if total.is_zero() {
            return Err(Error::invalid("zero denominator"));
        }
        Self::new(BigRational::new(count.clone().into(), total.clone().into()))
    }

    pub fn zero() -> Self {
        DensityValue(BigRational::zero())
    }

    pub fn one() -> Self {
        DensityValue(BigRational::one())
    }

    pub fn as_rational(&self) -> &BigRational {
        &self.0
    }

    /// Reduced numerator as an unsigned integer.
    pub fn numer(&self) -> BigUint {
        self.0.numer().to_biguint().expect("density is nonnegative")
    }

    /// Reduced denominator as an unsigned integer.
    pub fn denom(&self) -> BigUint {
        self.0.denom().to_biguint().expect("denominator is positive")
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    /// Exact test of `count >= self * total`.
    pub fn met_by(&self, count: &BigUint, total: &BigUint) -> bool {
        count * self.denom() >= self.numer() * total
    }
}

impl fmt::Display for DensityValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numer(), self.denom())
    }
}

impl FromStr for DensityValue {
    type Err = Error;

    /// Accepts `"num/den"` or a bare integer. Decimal notation is rejected.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let parse = |t: &str| {
            BigUint::from_str(t.trim()).map_err(|_| Error::Parse(format!("expected a rational num/den, got {s:?}")))
        };
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (parse(n)?, parse(d)?),
            None => (parse(s)?, BigUint::one()),
        };
        if den.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        DensityValue::new(BigRational::new(num.into(), den.into()))
    }
}

/// `|set ∩ w| / |w|`.
pub fn density_in_window(set: &FiniteIntegerSet, w: &Window) -> DensityValue {
    let count = BigUint::from(set.count_in(w));
    DensityValue::from_counts(&count, &w.length()).expect("count never exceeds window length")
}

/// Best density over all windows of `window_length` inside `observation`.
///
/// Any window can be slid right, without losing elements, until its left end
/// sits on an element or its right end reaches `observation.hi`, so only those
/// starts need to be examined.
pub fn banach_density_estimate(
    set: &FiniteIntegerSet,
    window_length: u64,
    observation: &Window,
) -> Result<DensityValue> {
    let k = BigUint::from(window_length);
    if window_length == 0 {
        return Err(Error::invalid("window length must be positive"));
    }
    if k > observation.length() {
        return Err(Error::invalid(format!("window length {window_length} exceeds observation {observation}")));
    }
    let last_start = observation.hi() - &k + 1u32;
    let inside = set.slice_in(observation);
    let count_from = |start: &BigUint| {
        let end = start + &k - 1u32;
        let a = inside.partition_point(|e| e < start);
        let b = inside.partition_point(|e| e <= &end);
        b - a
    };
    let best = inside
        .iter()
        .take_while(|e| *e <= &last_start)
        .map(count_from)
        .chain(std::iter::once(count_from(&last_start)))
        .max()
        .unwrap_or(0);
    DensityValue::from_counts(&BigUint::from(best), &k)
}

/// Greedy left-to-right selection of disjoint windows of `window_length`
/// inside `observation` holding at least `alpha * window_length` elements.
///
/// The leftmost qualifying start at or after the cursor is either the cursor
/// itself or `e - window_length + 1` for some element `e`: the window count
/// only increases when its right end reaches an element.
pub fn find_dense_windows(
    set: &FiniteIntegerSet,
    window_length: u64,
    alpha: &DensityValue,
    observation: &Window,
) -> Vec<Window> {
    let mut found = Vec::new();
    if window_length == 0 {
        return found;
    }
    let k = BigUint::from(window_length);
    let inside = set.slice_in(observation);
    let qualifies = |start: &BigUint| {
        let end = start + &k - 1u32;
        let a = inside.partition_point(|e| e < start);
        let b = inside.partition_point(|e| e <= &end);
        alpha.met_by(&BigUint::from(b - a), &k)
    };

    let mut cursor = observation.lo().clone();
    loop {
        let cursor_end = &cursor + &k - 1u32;
        if &cursor_end > observation.hi() {
            break;
        }
        let start = if qualifies(&cursor) {
            Some(cursor.clone())
        } else {
            let first = inside.partition_point(|e| e <= &cursor_end);
            inside[first..].iter().map(|e| e + 1u32 - &k).find(|s| qualifies(s))
        };
        match start {
            Some(s) => {
                let end = &s + &k - 1u32;
                cursor = &end + 1u32;
                found.push(Window { lo: s, hi: end });
            }
            None => break,
        }
    }
    found
}
