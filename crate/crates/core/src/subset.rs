//! Index subsets of `{1, ..., n-1}`, their maximal consecutive blocks and the
//! reduced words attached to Peterson fixed points.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// Largest supported ambient rank. Members of a subset live in `1..=63`, so a
/// subset fits in one `u64` with bit `i` standing for index `i`.
pub const MAX_RANK: u32 = 64;

/// A subset of `{1, ..., n-1}`.
///
/// Ordering is by ambient rank, then cardinality, then the numeric value of
/// the bitmask. This is the order used for fixed points in the localization
/// solver and for rows in every table.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct SubsetMask {
    n: u32,
    bits: u64,
}

impl SubsetMask {
    pub fn empty(n: u32) -> Result<Self> {
        check_rank(n)?;
        Ok(Self { n, bits: 0 })
    }

    /// The full set `{1, ..., n-1}`.
    pub fn full(n: u32) -> Result<Self> {
        check_rank(n)?;
        Ok(Self {
            n,
            bits: universe_bits(n),
        })
    }

    pub fn new<I: IntoIterator<Item = u32>>(n: u32, members: I) -> Result<Self> {
        check_rank(n)?;
        let mut bits = 0u64;
        for index in members {
            if index == 0 || index >= n {
                return Err(Error::IndexOutOfRange { index, n });
            }
            bits |= 1 << index;
        }
        Ok(Self { n, bits })
    }

    pub fn from_bits(n: u32, bits: u64) -> Result<Self> {
        check_rank(n)?;
        let stray = bits & !universe_bits(n);
        if stray != 0 {
            return Err(Error::IndexOutOfRange {
                index: stray.trailing_zeros(),
                n,
            });
        }
        Ok(Self { n, bits })
    }

    /// The interval `[block.tail, block.head]` as a subset.
    pub fn from_block(n: u32, block: ConsecutiveBlock) -> Result<Self> {
        Self::new(n, block.tail..=block.head)
    }

    /// Parses the textual syntax `"1,2,4-5"`: a comma list of indices and
    /// inclusive dash ranges. The empty string (or only whitespace) is `∅`.
    pub fn parse(n: u32, input: &str) -> Result<Self> {
        let parse_err = |reason: String| Error::Parse {
            input: input.to_string(),
            reason,
        };
        let parse_index = |s: &str| -> Result<u32> {
            s.trim()
                .parse::<u32>()
                .map_err(|e| parse_err(format!("{:?}: {}", s.trim(), e)))
        };

        let mut members = Vec::new();
        let trimmed = input.trim();
        if !trimmed.is_empty() {
            for part in trimmed.split(',') {
                let part = part.trim();
                if part.is_empty() {
                    return Err(parse_err("empty list entry".into()));
                }
                match part.split_once('-') {
                    Some((lo, hi)) => {
                        let (lo, hi) = (parse_index(lo)?, parse_index(hi)?);
                        if lo > hi {
                            return Err(parse_err(format!("descending range {}-{}", lo, hi)));
                        }
                        members.extend(lo..=hi);
                    }
                    None => members.push(parse_index(part)?),
                }
            }
        }
        Self::new(n, members)
    }

    /// Every subset of `{1, ..., n-1}` in (cardinality, numeric value) order.
    pub fn all(n: u32) -> Result<Vec<Self>> {
        check_rank(n)?;
        if n > 25 {
            return Err(Error::RankOutOfRange(n));
        }
        let count = 1u64 << (n - 1);
        let mut out: Vec<Self> = (0..count).map(|raw| Self { n, bits: raw << 1 }).collect();
        out.sort();
        Ok(out)
    }

    /// All subsets of `self`, in (cardinality, numeric value) order.
    pub fn subsets(&self) -> Vec<Self> {
        let mut out = Vec::with_capacity(1 << self.len());
        let mut sub = self.bits;
        loop {
            out.push(Self {
                n: self.n,
                bits: sub,
            });
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & self.bits;
        }
        out.sort();
        out
    }

    pub fn rank(&self) -> u32 {
        self.n
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn contains(&self, index: u32) -> bool {
        index < 64 && self.bits & (1 << index) != 0
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        let bits = self.bits;
        (1..self.n).filter(move |i| bits & (1 << i) != 0)
    }

    pub fn to_vec(&self) -> Vec<u32> {
        self.iter().collect()
    }

    pub fn is_subset_of(&self, other: &Self) -> bool {
        self.bits & !other.bits == 0
    }

    pub fn union(&self, other: &Self) -> Self {
        Self {
            n: self.n.max(other.n),
            bits: self.bits | other.bits,
        }
    }

    pub fn intersection(&self, other: &Self) -> Self {
        Self {
            n: self.n.max(other.n),
            bits: self.bits & other.bits,
        }
    }

    pub fn difference(&self, other: &Self) -> Self {
        Self {
            n: self.n,
            bits: self.bits & !other.bits,
        }
    }

    pub fn same_rank(&self, other: &Self) -> Result<()> {
        if self.n == other.n {
            Ok(())
        } else {
            Err(Error::RankMismatch(self.n, other.n))
        }
    }

    /// Maximal runs of consecutive members, ordered by tail.
    pub fn decompose(&self) -> Vec<ConsecutiveBlock> {
        let mut blocks = Vec::new();
        let mut rest = self.bits;
        while rest != 0 {
            let tail = rest.trailing_zeros();
            // length of the run of ones starting at `tail`
            let run = (!(rest >> tail)).trailing_zeros();
            let head = tail + run - 1;
            blocks.push(ConsecutiveBlock { tail, head });
            rest &= !run_bits(tail, head);
        }
        blocks
    }

    /// True iff the set is a single nonempty run. `∅` is not consecutive.
    pub fn is_consecutive(&self) -> bool {
        if self.bits == 0 {
            return false;
        }
        let shifted = self.bits >> self.bits.trailing_zeros();
        shifted & (shifted + 1) == 0
    }

    /// The single block of a consecutive set.
    pub fn as_block(&self) -> Result<ConsecutiveBlock> {
        match self.decompose().as_slice() {
            [block] => Ok(*block),
            _ => Err(Error::NotConsecutive(self.to_string())),
        }
    }

    /// The maximal block of `self` containing `index`, if any.
    pub fn block_containing(&self, index: u32) -> Option<ConsecutiveBlock> {
        if !self.contains(index) {
            return None;
        }
        let mut tail = index;
        while tail > 1 && self.contains(tail - 1) {
            tail -= 1;
        }
        let mut head = index;
        while self.contains(head + 1) {
            head += 1;
        }
        Some(ConsecutiveBlock { tail, head })
    }

    /// The reduced word `W_A` for the longest element of the parabolic
    /// subgroup generated by `A`: block words concatenated in block order,
    /// where the block `[T, H]` contributes `T..=H, T..=H-1, ..., T..=T+1, T`.
    pub fn staircase_word(&self) -> ReducedWord {
        let mut letters = Vec::new();
        for block in self.decompose() {
            letters.extend(block.staircase_word().0);
        }
        ReducedWord(letters)
    }

    /// The reduced word `(a_1, ..., a_k)` for `v_A`, members in increasing order.
    pub fn increasing_word(&self) -> ReducedWord {
        ReducedWord(self.to_vec())
    }
}

impl Ord for SubsetMask {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.n, self.len(), self.bits).cmp(&(other.n, other.len(), other.bits))
    }
}

impl PartialOrd for SubsetMask {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Canonical form: the sorted comma list, e.g. `1,2,4,5`. `∅` prints as the
/// empty string.
impl fmt::Display for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for i in self.iter() {
            if !first {
                f.write_str(",")?;
            }
            write!(f, "{}", i)?;
            first = false;
        }
        Ok(())
    }
}

/// A nonempty run `[tail, head]` of consecutive integers.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct ConsecutiveBlock {
    tail: u32,
    head: u32,
}

impl ConsecutiveBlock {
    pub fn new(tail: u32, head: u32) -> Result<Self> {
        if tail == 0 || tail > head || head >= 64 {
            return Err(Error::InvalidBlock { tail, head });
        }
        Ok(Self { tail, head })
    }

    pub fn tail(&self) -> u32 {
        self.tail
    }

    pub fn head(&self) -> u32 {
        self.head
    }

    pub fn len(&self) -> usize {
        (self.head - self.tail + 1) as usize
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, index: u32) -> bool {
        self.tail <= index && index <= self.head
    }

    /// Interval containment `other ⊆ self`.
    pub fn contains_block(&self, other: &Self) -> bool {
        self.tail <= other.tail && other.head <= self.head
    }

    /// True when the union of the two blocks is again a block (they overlap
    /// or touch end to end).
    pub fn joins(&self, other: &Self) -> bool {
        self.tail <= other.head + 1 && other.tail <= self.head + 1
    }

    /// Smallest block covering both.
    pub fn hull(&self, other: &Self) -> Self {
        Self {
            tail: self.tail.min(other.tail),
            head: self.head.max(other.head),
        }
    }

    pub fn bits(&self) -> u64 {
        run_bits(self.tail, self.head)
    }

    pub fn staircase_word(&self) -> ReducedWord {
        let mut letters = Vec::with_capacity(self.len() * (self.len() + 1) / 2);
        for top in (self.tail..=self.head).rev() {
            letters.extend(self.tail..=top);
        }
        ReducedWord(letters)
    }

    /// All blocks `E` with `self ⊆ E ⊆ bound` and `|E| <= max_len`.
    pub fn extensions_within(&self, bound: &Self, max_len: usize) -> Vec<Self> {
        let mut out = Vec::new();
        if !bound.contains_block(self) {
            return out;
        }
        for tail in (bound.tail..=self.tail).rev() {
            for head in self.head..=bound.head {
                if (head - tail + 1) as usize <= max_len {
                    out.push(Self { tail, head });
                }
            }
        }
        out
    }
}

impl fmt::Display for ConsecutiveBlock {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.tail, self.head)
    }
}

/// A word in the simple reflections `s_1, ..., s_{n-1}`, stored by index.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct ReducedWord(pub Vec<u32>);

impl ReducedWord {
    pub fn letters(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

fn check_rank(n: u32) -> Result<()> {
    if n == 0 || n > MAX_RANK {
        Err(Error::RankOutOfRange(n))
    } else {
        Ok(())
    }
}

fn universe_bits(n: u32) -> u64 {
    // bits 1..n-1
    if n <= 1 {
        0
    } else {
        run_bits(1, n - 1)
    }
}

fn run_bits(tail: u32, head: u32) -> u64 {
    let width = head - tail + 1;
    let ones = if width >= 64 {
        u64::MAX
    } else {
        (1u64 << width) - 1
    };
    ones << tail
}
