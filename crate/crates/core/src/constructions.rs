//! Block-structured sequences `A = ⋃ (x_n + A_n)` and the extremal
//! constructions built from them.
//!
//! The offsets follow
//! `x_n = x_1 + M_n² + M_n(x_{n-1} + M_{n-1}) + (x_{n-1} + M_{n-1})²`
//! where `M_n = max A_n`. Products mixing different blocks then differ by at
//! least `x_1`, which [`verify_cross_block_separation`] checks exhaustively.

use std::fmt::Write as _;

use num_bigint::BigUint;
use num_traits::One;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::sets::{DensityValue, FiniteIntegerSet};
use crate::sidon::{erdos_turan_sidon, is_odd_prime, SidonSet};

/// Largest block count `materialize` is asked for by the CLI.
pub const MAX_MATERIALIZED_BLOCKS: u64 = 8;

/// Quadruple evaluations allowed in [`verify_cross_block_separation`].
pub const QUADRUPLE_GUARD: u128 = 100_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BlockKind {
    /// `A = ℕ`; used when the density target is too large for blocks to help.
    AllNaturals,
    /// `A_n = {1, …, n}`.
    UniformBlocks,
    /// `A_n = ⋃_{k=1..n} (2km + S)` with `m = 2p²`.
    SidonBlocks { sidon: SidonSet, m: BigUint },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockFamilySpec {
    kind: BlockKind,
    x1: BigUint,
    alpha: Option<DensityValue>,
    t: Option<u64>,
}

impl BlockFamilySpec {
    pub fn uniform(x1: BigUint) -> Result<Self> {
        if x1 == BigUint::default() {
            return Err(Error::invalid("x1 must be positive"));
        }
        Ok(BlockFamilySpec { kind: BlockKind::UniformBlocks, x1, alpha: None, t: None })
    }

    pub fn sidon_blocks(p: u64, x1: BigUint) -> Result<Self> {
        if x1 == BigUint::default() {
            return Err(Error::invalid("x1 must be positive"));
        }
        let sidon = erdos_turan_sidon(p)?;
        let m = BigUint::from(2u32) * p * p;
        Ok(BlockFamilySpec { kind: BlockKind::SidonBlocks { sidon, m }, x1, alpha: None, t: None })
    }

    fn all_naturals() -> Self {
        BlockFamilySpec { kind: BlockKind::AllNaturals, x1: BigUint::one(), alpha: None, t: None }
    }

    fn tagged(mut self, alpha: &DensityValue, t: Option<u64>) -> Self {
        self.alpha = Some(alpha.clone());
        self.t = t;
        self
    }

    pub fn kind(&self) -> &BlockKind {
        &self.kind
    }

    pub fn x1(&self) -> &BigUint {
        &self.x1
    }

    pub fn alpha(&self) -> Option<&DensityValue> {
        self.alpha.as_ref()
    }

    pub fn t(&self) -> Option<u64> {
        self.t
    }

    pub fn is_all_naturals(&self) -> bool {
        self.kind == BlockKind::AllNaturals
    }

    pub fn p(&self) -> Option<u64> {
        match &self.kind {
            BlockKind::SidonBlocks { sidon, .. } => Some(sidon.p()),
            _ => None,
        }
    }

    fn degenerate() -> Error {
        Error::invalid("the all-naturals spec has no block structure to materialize")
    }

    /// `A_n`, sorted.
    pub fn block(&self, n: u64) -> Result<Vec<BigUint>> {
        match &self.kind {
            BlockKind::AllNaturals => Err(Self::degenerate()),
            BlockKind::UniformBlocks => Ok((1..=n).map(BigUint::from).collect()),
            BlockKind::SidonBlocks { sidon, m } => {
                let mut out = Vec::with_capacity((n as usize) * sidon.elements().len());
                for k in 1..=n {
                    let base = BigUint::from(2u32) * k * m;
                    out.extend(sidon.elements().iter().map(|s| &base + s));
                }
                Ok(out)
            }
        }
    }

    /// `M_n = max A_n`.
    pub fn block_max(&self, n: u64) -> Result<BigUint> {
        match &self.kind {
            BlockKind::AllNaturals => Err(Self::degenerate()),
            BlockKind::UniformBlocks => Ok(BigUint::from(n)),
            BlockKind::SidonBlocks { sidon, m } => Ok(BigUint::from(2u32) * n * m + sidon.max()),
        }
    }

    /// Serializable view `{kind, x1, p?, m?, S?, alpha, t?}`.
    pub fn record(&self) -> SpecRecord {
        let (kind, p, m, s) = match &self.kind {
            BlockKind::AllNaturals => ("AllNaturals", None, None, None),
            BlockKind::UniformBlocks => ("UniformBlocks", None, None, None),
            BlockKind::SidonBlocks { sidon, m } => {
                ("SidonBlocks", Some(sidon.p()), Some(m.clone()), Some(sidon.elements().elements().to_vec()))
            }
        };
        SpecRecord {
            kind,
            x1: (!self.is_all_naturals()).then(|| self.x1.clone()),
            p,
            m,
            s,
            alpha: self.alpha.as_ref().map(|a| a.to_string()),
            t: self.t,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SpecRecord {
    pub kind: &'static str,
    #[serde(serialize_with = "crate::json::big_opt", skip_serializing_if = "Option::is_none")]
    pub x1: Option<BigUint>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
    #[serde(serialize_with = "crate::json::big_opt", skip_serializing_if = "Option::is_none")]
    pub m: Option<BigUint>,
    #[serde(rename = "S", serialize_with = "crate::json::big_vec_opt", skip_serializing_if = "Option::is_none")]
    pub s: Option<Vec<BigUint>>,
    pub alpha: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t: Option<u64>,
}

/// Offsets `x_1, …, x_{n_max}`.
pub fn x_values(spec: &BlockFamilySpec, n_max: u64) -> Result<Vec<BigUint>> {
    if n_max == 0 {
        return Err(Error::invalid("block index starts at 1"));
    }
    let mut xs = vec![spec.x1.clone()];
    let mut prev_top = &spec.x1 + spec.block_max(1)?;
    for n in 2..=n_max {
        let m_n = spec.block_max(n)?;
        let x_n = &spec.x1 + &m_n * &m_n + &m_n * &prev_top + &prev_top * &prev_top;
        prev_top = &x_n + &m_n;
        xs.push(x_n);
    }
    Ok(xs)
}

/// The offset `x_n`.
pub fn x_sequence(spec: &BlockFamilySpec, n: u64) -> Result<BigUint> {
    Ok(x_values(spec, n)?.pop().expect("x_values returns n entries"))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    pub index: u64,
    pub offset: BigUint,
    pub elements: FiniteIntegerSet,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaterializedSequence {
    x1: BigUint,
    blocks: Vec<Block>,
}

impl MaterializedSequence {
    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn x1(&self) -> &BigUint {
        &self.x1
    }

    pub fn element_count(&self) -> usize {
        self.blocks.iter().map(|b| b.elements.len()).sum()
    }

    /// All block elements as one set.
    pub fn union(&self) -> FiniteIntegerSet {
        self.blocks.iter().flat_map(|b| b.elements.iter().cloned()).collect()
    }

    /// Newline-delimited decimals with a `# block n x_n=…` comment per block.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for b in &self.blocks {
            let _ = writeln!(out, "# block {} x_n={}", b.index, b.offset);
            out.push_str(&b.elements.to_lines());
        }
        out
    }
}

pub fn materialize(spec: &BlockFamilySpec, n_max: u64) -> Result<MaterializedSequence> {
    let xs = x_values(spec, n_max)?;
    let mut blocks = Vec::with_capacity(xs.len());
    for (i, x) in xs.into_iter().enumerate() {
        let n = i as u64 + 1;
        let elements = spec.block(n)?.into_iter().map(|a| &x + a).collect::<Vec<_>>();
        blocks.push(Block { index: n, offset: x, elements: FiniteIntegerSet::from_sorted(elements)? });
    }
    Ok(MaterializedSequence { x1: spec.x1.clone(), blocks })
}

fn check_alpha(alpha: &DensityValue) -> Result<()> {
    if alpha.is_zero() || alpha.is_one() {
        return Err(Error::invalid(format!("alpha must satisfy 0 < alpha < 1, got {alpha}")));
    }
    Ok(())
}

fn below_one_sixteenth(alpha: &DensityValue) -> bool {
    alpha.numer() * 16u32 < alpha.denom()
}

/// Smallest odd prime strictly inside `(1/(8α), 1/(4α))`.
pub fn select_prime(alpha: &DensityValue) -> Result<u64> {
    let (num, den) = (alpha.numer(), alpha.denom());
    let lo_num = den.clone();
    let lo_den = &num * 8u32;
    let hi_den = &num * 4u32;
    let unavailable =
        || Error::ConstructionUnavailable { lo: format!("{lo_num}/{lo_den}"), hi: format!("{den}/{hi_den}") };
    // first integer strictly above den / (8 num)
    let start = &lo_num / &lo_den + 1u32;
    let start: u64 = u64::try_from(start).map_err(|_| Error::TooLarge(format!("alpha {alpha} is too small")))?;
    let mut p = start;
    loop {
        if BigUint::from(p) * &hi_den >= den {
            return Err(unavailable());
        }
        if is_odd_prime(p) {
            return Ok(p);
        }
        p = p.checked_add(1).ok_or_else(unavailable)?;
    }
}

/// The construction with all product gaps at least `4p³`.
pub fn theorem2_spec(alpha: &DensityValue) -> Result<BlockFamilySpec> {
    check_alpha(alpha)?;
    if !below_one_sixteenth(alpha) {
        return Ok(BlockFamilySpec::all_naturals().tagged(alpha, None));
    }
    let p = select_prime(alpha)?;
    let x1 = BigUint::from(4u32) * BigUint::from(p).pow(3);
    Ok(BlockFamilySpec::sidon_blocks(p, x1)?.tagged(alpha, None))
}

/// The construction with all `t`-gaps of products bounded below.
pub fn theorem4_spec(alpha: &DensityValue, t: u64) -> Result<BlockFamilySpec> {
    check_alpha(alpha)?;
    if t < 2 {
        return Err(Error::invalid(format!("t must be at least 2, got {t}")));
    }
    let t_sq = BigUint::from(t) * t;
    if !below_one_sixteenth(alpha) {
        return Ok(BlockFamilySpec::uniform(t_sq)?.tagged(alpha, Some(t)));
    }
    let p = select_prime(alpha)?;
    let x1 = t_sq * BigUint::from(p).pow(4);
    Ok(BlockFamilySpec::sidon_blocks(p, x1)?.tagged(alpha, Some(t)))
}

/// Minimum nonzero `|c₁c₂ − c₃c₄|` over quadruples from the sequence that do
/// not all lie in one block; `None` when no such quadruple exists.
///
/// Quadruples are covered as pairs of pair-products. After sorting the
/// products, the closest admissible partner above each product is the first
/// strictly larger one that is not a same-block product of the same block.
pub fn verify_cross_block_separation(seq: &MaterializedSequence) -> Result<Option<BigUint>> {
    let n = seq.element_count() as u128;
    let evaluations = n.pow(4);
    if evaluations > QUADRUPLE_GUARD {
        return Err(Error::TooLarge(format!(
            "{n} elements need {evaluations} quadruple evaluations (limit {QUADRUPLE_GUARD}); use a smaller n_max"
        )));
    }
    if seq.blocks.len() < 2 {
        return Ok(None);
    }
    let labelled: Vec<(&BigUint, usize)> =
        seq.blocks.iter().enumerate().flat_map(|(bi, b)| b.elements.iter().map(move |e| (e, bi))).collect();

    // label: Some(block) when both factors come from that block
    let mut products: Vec<(BigUint, Option<usize>)> = Vec::with_capacity(labelled.len() * (labelled.len() + 1) / 2);
    for i in 0..labelled.len() {
        for j in i..labelled.len() {
            let (a, ba) = labelled[i];
            let (b, bb) = labelled[j];
            products.push((a * b, (ba == bb).then_some(ba)));
        }
    }
    products.sort();

    let compatible = |x: Option<usize>, y: Option<usize>| !(x.is_some() && x == y);
    let mut best: Option<BigUint> = None;
    for u in 0..products.len() {
        let (pu, lu) = &products[u];
        for (pv, lv) in &products[u + 1..] {
            if pv == pu || !compatible(*lu, *lv) {
                continue;
            }
            let diff = pv - pu;
            if best.as_ref().is_none_or(|b| &diff < b) {
                best = Some(diff);
            }
            break;
        }
    }
    Ok(best)
}

/// Cross-block separation outcome as reported by [`construction_report`].
#[derive(Debug, Clone, Serialize)]
pub struct SeparationRecord {
    /// `checked`, `single block`, `skipped` (quadruple guard) or `all naturals`.
    pub status: &'static str,
    #[serde(serialize_with = "crate::json::big_opt")]
    pub min: Option<BigUint>,
    #[serde(serialize_with = "crate::json::big_opt")]
    pub x1: Option<BigUint>,
    pub holds: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct BlockRecord {
    pub index: u64,
    #[serde(serialize_with = "crate::json::big")]
    pub x_n: BigUint,
    #[serde(serialize_with = "crate::json::big_vec")]
    pub elements: Vec<BigUint>,
}

/// Machine-readable summary of a materialized construction.
#[derive(Debug, Clone, Serialize)]
pub struct ConstructionReport {
    pub spec: SpecRecord,
    pub n_max: u64,
    pub blocks: Vec<BlockRecord>,
    pub separation: SeparationRecord,
}

/// Materializes `n_max` blocks (at most [`MAX_MATERIALIZED_BLOCKS`]) and runs
/// the separation check. For the all-naturals family there are no blocks and
/// the minimum product gap is 1.
pub fn construction_report(spec: &BlockFamilySpec, n_max: u64) -> Result<ConstructionReport> {
    if n_max == 0 || n_max > MAX_MATERIALIZED_BLOCKS {
        return Err(Error::TooLarge(format!(
            "growth guard: n_max must be between 1 and {MAX_MATERIALIZED_BLOCKS}, got {n_max}"
        )));
    }
    if spec.is_all_naturals() {
        return Ok(ConstructionReport {
            spec: spec.record(),
            n_max,
            blocks: Vec::new(),
            separation: SeparationRecord { status: "all naturals", min: Some(BigUint::one()), x1: None, holds: true },
        });
    }
    let seq = materialize(spec, n_max)?;
    let (status, min) = match verify_cross_block_separation(&seq) {
        Ok(Some(m)) => ("checked", Some(m)),
        Ok(None) => ("single block", None),
        Err(Error::TooLarge(_)) => ("skipped", None),
        Err(e) => return Err(e),
    };
    let holds = min.as_ref().is_none_or(|m| m >= &seq.x1);
    Ok(ConstructionReport {
        spec: spec.record(),
        n_max,
        blocks: seq
            .blocks
            .iter()
            .map(|b| BlockRecord { index: b.index, x_n: b.offset.clone(), elements: b.elements.elements().to_vec() })
            .collect(),
        separation: SeparationRecord { status, min, x1: Some(seq.x1.clone()), holds },
    })
}
