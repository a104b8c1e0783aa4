//! Positive formulas for the structure constants `b_{A,B}^C` of the Peterson
//! Schubert basis, defined by `p_A p_B = Σ_C b_{A,B}^C p_C`.

use std::collections::{BTreeMap, HashMap};
use std::sync::RwLock;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::monomial::{binomial, factorial, multinomial, TMonomial};
use crate::subset::{ConsecutiveBlock, SubsetMask};

/// A triple `(A, B, C)` of subsets of the same `{1, ..., n-1}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct StructureConstantKey {
    a: SubsetMask,
    b: SubsetMask,
    c: SubsetMask,
}

impl StructureConstantKey {
    pub fn new(a: SubsetMask, b: SubsetMask, c: SubsetMask) -> Result<Self> {
        a.same_rank(&b)?;
        a.same_rank(&c)?;
        Ok(Self { a, b, c })
    }

    pub fn a(&self) -> &SubsetMask {
        &self.a
    }

    pub fn b(&self) -> &SubsetMask {
        &self.b
    }

    pub fn c(&self) -> &SubsetMask {
        &self.c
    }

    pub fn rank(&self) -> u32 {
        self.a.rank()
    }

    /// Same key with `A` and `B` exchanged.
    pub fn swapped(&self) -> Self {
        Self {
            a: self.b,
            b: self.a,
            c: self.c,
        }
    }
}

/// The expansion of one product `p_A p_B`: nonzero coefficients keyed by `C`.
pub type ExpansionTable = BTreeMap<SubsetMask, TMonomial>;

/// `b_{A,B}^C` for blocks `A`, `B`, `C`:
///
/// `d! · (H_A - T_B + 1; d, T_A - T_C, H_C - H_B) · (H_B - T_A + 1; d, T_B - T_C, H_C - H_A) · t^d`
///
/// with `d = |A| + |B| - |C|`. Zero when `C ⊉ A ∪ B`, when `d < 0` or when a
/// multinomial has a negative part.
pub fn b_consecutive(a: ConsecutiveBlock, b: ConsecutiveBlock, c: ConsecutiveBlock) -> TMonomial {
    if !c.contains_block(&a) || !c.contains_block(&b) {
        return TMonomial::zero();
    }
    let d = a.len() as i64 + b.len() as i64 - c.len() as i64;
    if d < 0 {
        return TMonomial::zero();
    }
    let (ta, ha) = (a.tail() as i64, a.head() as i64);
    let (tb, hb) = (b.tail() as i64, b.head() as i64);
    let (tc, hc) = (c.tail() as i64, c.head() as i64);
    let left = multinomial(ha - tb + 1, &[d, ta - tc, hc - hb]);
    let right = multinomial(hb - ta + 1, &[d, tb - tc, hc - ha]);
    TMonomial::new(factorial(d as u64) * left * right, d as u32)
}

/// One nonzero summand of the chain expansion for a consecutive `A ∪ B`:
/// `b_{E_1,E_2}^{C_2} b_{C_2,E_3}^{C_3} ... b_{C_{v-1},E_v}^C`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ChainTerm {
    /// `C_2, ..., C_{v-1}`.
    pub intermediates: Vec<ConsecutiveBlock>,
    /// The `v - 1` factors in order.
    pub factors: Vec<TMonomial>,
    pub value: TMonomial,
}

/// Blocks of `A` and of `B` together, sorted by `(tail, head)`.
fn merged_blocks(a: &SubsetMask, b: &SubsetMask) -> Vec<ConsecutiveBlock> {
    let mut blocks = a.decompose();
    blocks.extend(b.decompose());
    blocks.sort();
    blocks
}

/// Every nonzero summand of the chain expansion of `Π p_{E_i}` at the block
/// `C`, for blocks sorted by tail whose union is consecutive.
fn chain_terms(blocks: &[ConsecutiveBlock], c: ConsecutiveBlock) -> Vec<ChainTerm> {
    let mut out = Vec::new();
    match blocks {
        [] => {}
        [only] => {
            if *only == c {
                out.push(ChainTerm {
                    intermediates: Vec::new(),
                    factors: Vec::new(),
                    value: TMonomial::one(),
                });
            }
        }
        [first, rest @ ..] => {
            let mut stack = Vec::new();
            let mut factors = Vec::new();
            extend_chain(*first, rest, c, &mut stack, &mut factors, &mut out);
        }
    }
    out
}

fn extend_chain(
    current: ConsecutiveBlock,
    rest: &[ConsecutiveBlock],
    c: ConsecutiveBlock,
    stack: &mut Vec<ConsecutiveBlock>,
    factors: &mut Vec<TMonomial>,
    out: &mut Vec<ChainTerm>,
) {
    let (next, tail) = rest.split_first().expect("chain has a next block");
    if tail.is_empty() {
        let last = b_consecutive(current, *next, c);
        if !last.is_zero() {
            let mut all = factors.clone();
            all.push(last);
            let value = all.iter().fold(TMonomial::one(), |acc, f| &acc * f);
            out.push(ChainTerm {
                intermediates: stack.clone(),
                factors: all,
                value,
            });
        }
        return;
    }
    if !current.joins(next) {
        return;
    }
    let seed = current.hull(next);
    for step in seed.extensions_within(&c, current.len() + next.len()) {
        let factor = b_consecutive(current, *next, step);
        if factor.is_zero() {
            continue;
        }
        stack.push(step);
        factors.push(factor);
        extend_chain(step, tail, c, stack, factors, out);
        stack.pop();
        factors.pop();
    }
}

/// The nonzero summands of `b_{A,B}^C` when `A ∪ B` is consecutive.
pub fn union_consecutive_terms(
    a: &SubsetMask,
    b: &SubsetMask,
    c: ConsecutiveBlock,
) -> Result<Vec<ChainTerm>> {
    if a.is_empty() {
        return Err(Error::EmptyOperand("A"));
    }
    if b.is_empty() {
        return Err(Error::EmptyOperand("B"));
    }
    let union = a.union(b);
    if !union.is_consecutive() {
        return Err(Error::NotConsecutive(union.to_string()));
    }
    Ok(chain_terms(&merged_blocks(a, b), c))
}

/// `b_{A,B}^C` for nonempty `A`, `B` with `A ∪ B` consecutive and `C` a block.
pub fn b_union_consecutive(
    a: &SubsetMask,
    b: &SubsetMask,
    c: ConsecutiveBlock,
) -> Result<TMonomial> {
    let terms = union_consecutive_terms(a, b, c)?;
    TMonomial::try_sum(terms.iter().map(|term| &term.value))
}

/// Coefficient of `p_C` in `Π p_{E_i}` for blocks `E_i` and a block `C`.
///
/// A consecutive union is expanded as a chain. Otherwise two blocks whose
/// union is consecutive are multiplied out first: the pair is the first
/// block in `(tail, head)` order that joins a later block, together with the
/// earliest such later block.
pub fn multi_class_coefficient(blocks: &[ConsecutiveBlock], c: ConsecutiveBlock) -> TMonomial {
    if blocks.is_empty() || blocks.iter().any(|e| !c.contains_block(e)) {
        return TMonomial::zero();
    }
    let mut sorted = blocks.to_vec();
    sorted.sort();
    let union = sorted.iter().fold(0u64, |acc, e| acc | e.bits());
    let hull = sorted.iter().fold(sorted[0], |acc, e| acc.hull(e));
    if union == hull.bits() {
        let terms = chain_terms(&sorted, c);
        return TMonomial::try_sum(terms.iter().map(|term| &term.value))
            .expect("chain summands share a degree");
    }

    let pair = (0..sorted.len()).find_map(|j| {
        (j + 1..sorted.len())
            .find(|&k| sorted[j].joins(&sorted[k]))
            .map(|k| (j, k))
    });
    let Some((j, k)) = pair else {
        return TMonomial::zero();
    };
    let (ej, ek) = (sorted[j], sorted[k]);
    let rest: Vec<ConsecutiveBlock> = sorted
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != j && i != k)
        .map(|(_, e)| *e)
        .collect();

    let mut total = TMonomial::zero();
    for f in ej.hull(&ek).extensions_within(&c, ej.len() + ek.len()) {
        let factor = b_consecutive(ej, ek, f);
        if factor.is_zero() {
            continue;
        }
        let mut next = rest.clone();
        next.push(f);
        let term = &factor * &multi_class_coefficient(&next, c);
        total = total
            .checked_add(&term)
            .expect("summands of one coefficient share a degree");
    }
    total
}

/// `b_{A,B}^C` for nonempty `A`, `B` and a block `C`.
///
/// With `A ∪ B = D_1 ∪ ... ∪ D_u` in blocks, sums over blocks
/// `D_i ⊆ E_i ⊆ C` with `|E_i| <= |A ∩ D_i| + |B ∩ D_i|` the products
/// `Π b_{A∩D_i, B∩D_i}^{E_i}` times the coefficient of `p_C` in `Π p_{E_i}`.
pub fn b_c_consecutive(a: &SubsetMask, b: &SubsetMask, c: ConsecutiveBlock) -> Result<TMonomial> {
    if a.is_empty() {
        return Err(Error::EmptyOperand("A"));
    }
    if b.is_empty() {
        return Err(Error::EmptyOperand("B"));
    }
    a.same_rank(b)?;
    let union = a.union(b);
    if union.bits() & !c.bits() != 0 {
        return Ok(TMonomial::zero());
    }

    // For each D_i: the admissible E_i with their factor b_{A^i,B^i}^{E_i}.
    let mut choices: Vec<Vec<(ConsecutiveBlock, TMonomial)>> = Vec::new();
    for d in union.decompose() {
        let part_a = SubsetMask::from_bits(a.rank(), a.bits() & d.bits())?;
        let part_b = SubsetMask::from_bits(a.rank(), b.bits() & d.bits())?;
        let options = if part_a.is_empty() || part_b.is_empty() {
            vec![(d, TMonomial::one())]
        } else {
            let blocks = merged_blocks(&part_a, &part_b);
            let mut options = Vec::new();
            for e in d.extensions_within(&c, part_a.len() + part_b.len()) {
                let terms = chain_terms(&blocks, e);
                let factor = TMonomial::try_sum(terms.iter().map(|term| &term.value))?;
                if !factor.is_zero() {
                    options.push((e, factor));
                }
            }
            options
        };
        choices.push(options);
    }

    let mut total = TMonomial::zero();
    let mut picked = Vec::with_capacity(choices.len());
    sum_over_choices(&choices, c, &mut picked, TMonomial::one(), &mut total)?;
    Ok(total)
}

fn sum_over_choices(
    choices: &[Vec<(ConsecutiveBlock, TMonomial)>],
    c: ConsecutiveBlock,
    picked: &mut Vec<ConsecutiveBlock>,
    weight: TMonomial,
    total: &mut TMonomial,
) -> Result<()> {
    let depth = picked.len();
    if depth == choices.len() {
        let term = &weight * &multi_class_coefficient(picked, c);
        *total = total.checked_add(&term)?;
        return Ok(());
    }
    for (e, factor) in &choices[depth] {
        picked.push(*e);
        sum_over_choices(choices, c, picked, &weight * factor, total)?;
        picked.pop();
    }
    Ok(())
}

/// `b_{A,B}^C` for arbitrary subsets.
///
/// Uses `p_∅ = 1` for empty operands, then factors over the blocks `C_k` of
/// `C`. Only the support condition `A ∪ B ⊆ C` is checked up front; the
/// nonvanishing criterion is left to the formulas so that it can be tested
/// against them.
pub fn b_general(key: &StructureConstantKey) -> TMonomial {
    let (a, b, c) = (key.a(), key.b(), key.c());
    if a.is_empty() {
        return indicator(b == c);
    }
    if b.is_empty() {
        return indicator(a == c);
    }
    if !a.union(b).is_subset_of(c) {
        return TMonomial::zero();
    }
    let mut acc = TMonomial::one();
    for block in c.decompose() {
        let part_a = SubsetMask::from_bits(a.rank(), a.bits() & block.bits()).expect("same rank");
        let part_b = SubsetMask::from_bits(a.rank(), b.bits() & block.bits()).expect("same rank");
        let factor = match (part_a.is_empty(), part_b.is_empty()) {
            (true, true) => TMonomial::zero(),
            (true, false) => indicator(part_b.bits() == block.bits()),
            (false, true) => indicator(part_a.bits() == block.bits()),
            (false, false) => {
                b_c_consecutive(&part_a, &part_b, block).expect("operands are nonempty")
            }
        };
        if factor.is_zero() {
            return TMonomial::zero();
        }
        acc = &acc * &factor;
    }
    acc
}

fn indicator(holds: bool) -> TMonomial {
    if holds {
        TMonomial::one()
    } else {
        TMonomial::zero()
    }
}

/// The positivity criterion: `A ∪ B ⊆ C` and every block `C_k` of `C` has
/// `|C_k| <= |C_k ∩ A| + |C_k ∩ B|`. Empty operands follow `p_∅ = 1`.
pub fn nonvanishing(key: &StructureConstantKey) -> bool {
    let (a, b, c) = (key.a(), key.b(), key.c());
    if a.is_empty() {
        return b == c;
    }
    if b.is_empty() {
        return a == c;
    }
    if !a.union(b).is_subset_of(c) {
        return false;
    }
    c.decompose().iter().all(|block| {
        let in_a = (a.bits() & block.bits()).count_ones() as usize;
        let in_b = (b.bits() & block.bits()).count_ones() as usize;
        block.len() <= in_a + in_b
    })
}

/// All `C` with `A ∪ B ⊆ C` and `|C| <= |A| + |B|`, in (cardinality, bits)
/// order.
pub fn candidate_supports(a: &SubsetMask, b: &SubsetMask) -> Result<Vec<SubsetMask>> {
    a.same_rank(b)?;
    let union = a.union(b);
    let free = SubsetMask::full(a.rank())?.difference(&union);
    let budget = a.len() + b.len() - union.len();
    let mut out = Vec::new();
    let mut extra = free.bits();
    loop {
        if (extra.count_ones() as usize) <= budget {
            out.push(SubsetMask::from_bits(a.rank(), union.bits() | extra)?);
        }
        if extra == 0 {
            break;
        }
        extra = (extra - 1) & free.bits();
    }
    out.sort();
    Ok(out)
}

/// `p_A p_B` expanded in the Peterson Schubert basis, nonzero entries only.
pub fn expand_product(a: &SubsetMask, b: &SubsetMask) -> Result<ExpansionTable> {
    let mut table = ExpansionTable::new();
    for c in candidate_supports(a, b)? {
        let value = b_general(&StructureConstantKey::new(*a, *b, c)?);
        if !value.is_zero() {
            table.insert(c, value);
        }
    }
    Ok(table)
}

/// The ordinary (non-equivariant) structure constant: the coefficient of
/// `b_{A,B}^C` when `|C| = |A| + |B|`, zero otherwise.
pub fn b_ordinary(key: &StructureConstantKey) -> BigUint {
    if key.c().len() != key.a().len() + key.b().len() {
        return BigUint::default();
    }
    b_general(key).coeff().clone()
}

/// Two-binomial form of the ordinary constant for blocks with
/// `A ∪ B ⊆ C` and `|C| = |A| + |B|`.
pub fn ordinary_consecutive(
    a: ConsecutiveBlock,
    b: ConsecutiveBlock,
    c: ConsecutiveBlock,
) -> BigUint {
    let (a, b) = if a.tail() <= b.tail() { (a, b) } else { (b, a) };
    if !c.contains_block(&a) || !c.contains_block(&b) || c.len() != a.len() + b.len() {
        return BigUint::default();
    }
    let (ta, ha) = (a.tail() as i64, a.head() as i64);
    let (tb, hb) = (b.tail() as i64, b.head() as i64);
    let tc = c.tail() as i64;
    binomial(ha - tb + 1, ta - tc) * binomial(hb - ta + 1, tb - tc)
}

/// For blocks `B ⊆ A`, the intertwined pair `A' = [T_A, H_B]`,
/// `B' = [T_B, H_A]` with `|A|! |B|! b_{A,B}^C = |A'|! |B'|! b_{A',B'}^C`.
pub fn nested_conversion(
    a: ConsecutiveBlock,
    b: ConsecutiveBlock,
) -> Result<(ConsecutiveBlock, ConsecutiveBlock)> {
    if !a.contains_block(&b) {
        return Err(Error::BlockNotContained {
            inner_tail: b.tail(),
            inner_head: b.head(),
            outer_tail: a.tail(),
            outer_head: a.head(),
        });
    }
    Ok((
        ConsecutiveBlock::new(a.tail(), b.head())?,
        ConsecutiveBlock::new(b.tail(), a.head())?,
    ))
}

/// One memoized coefficient, as stored in cache snapshots.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct MemoEntry {
    pub n: u32,
    pub a: u64,
    pub b: u64,
    pub c: u64,
    pub coeff: String,
    pub power: u32,
}

/// Process-wide memo of `b_general` keyed by `(A, B, C)`. Safe to share
/// between threads.
#[derive(Debug, Default)]
pub struct StructureEngine {
    memo: RwLock<HashMap<StructureConstantKey, TMonomial>>,
}

impl StructureEngine {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn b_general(&self, key: &StructureConstantKey) -> TMonomial {
        if let Some(hit) = self.memo.read().expect("memo lock").get(key) {
            return hit.clone();
        }
        let value = b_general(key);
        self.memo
            .write()
            .expect("memo lock")
            .insert(*key, value.clone());
        value
    }

    pub fn expand_product(&self, a: &SubsetMask, b: &SubsetMask) -> Result<ExpansionTable> {
        let mut table = ExpansionTable::new();
        for c in candidate_supports(a, b)? {
            let value = self.b_general(&StructureConstantKey::new(*a, *b, c)?);
            if !value.is_zero() {
                table.insert(c, value);
            }
        }
        Ok(table)
    }

    pub fn len(&self) -> usize {
        self.memo.read().expect("memo lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Memo contents sorted by key.
    pub fn snapshot(&self) -> Vec<MemoEntry> {
        let memo = self.memo.read().expect("memo lock");
        let mut keys: Vec<_> = memo.keys().copied().collect();
        keys.sort();
        keys.into_iter()
            .map(|key| {
                let value = &memo[&key];
                MemoEntry {
                    n: key.rank(),
                    a: key.a().bits(),
                    b: key.b().bits(),
                    c: key.c().bits(),
                    coeff: value.coeff().to_string(),
                    power: value.power(),
                }
            })
            .collect()
    }

    /// Seeds the memo from a snapshot.
    pub fn load(&self, entries: &[MemoEntry]) -> Result<()> {
        let mut memo = self.memo.write().expect("memo lock");
        for entry in entries {
            let key = StructureConstantKey::new(
                SubsetMask::from_bits(entry.n, entry.a)?,
                SubsetMask::from_bits(entry.n, entry.b)?,
                SubsetMask::from_bits(entry.n, entry.c)?,
            )?;
            let coeff: BigUint = entry.coeff.parse().map_err(|_| Error::Parse {
                input: entry.coeff.clone(),
                reason: "bad coefficient".into(),
            })?;
            memo.insert(key, TMonomial::new(coeff, entry.power));
        }
        Ok(())
    }
}
