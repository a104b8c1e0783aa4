//! Ground-truth engines that do not use any of the closed forms.
//!
//! The subword oracle evaluates the AJS-Billey sum with every root specialized
//! to `t`, reading root values off the actual permutation action along the
//! staircase word. The localization solver recovers `b_{A,B}^C` from the
//! restriction table by triangular elimination over fixed points.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigUint;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::monomial::TMonomial;
use crate::subset::SubsetMask;

/// Positive multiplier `k` of a specialized root value `k·t`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct RootValue {
    pub letter: u32,
    pub multiplier: u32,
}

fn identity(n: u32) -> Vec<u8> {
    (0..=n as u8).collect()
}

/// Right multiplication by `s_j` on a one-line permutation (1-indexed, slot 0
/// unused).
fn right_mul(perm: &mut [u8], j: u32) {
    perm.swap(j as usize, j as usize + 1);
}

/// The specialized root `s_{b_1} ... s_{b_{k-1}}(α_{b_k})` for every position
/// `k` of the staircase word `W_C`.
pub fn root_values(c: &SubsetMask) -> Vec<RootValue> {
    let mut prefix = identity(c.rank());
    let mut out = Vec::new();
    for &j in c.staircase_word().letters() {
        let (lo, hi) = (prefix[j as usize], prefix[j as usize + 1]);
        // The word is reduced, so each prefix sends α_j to a positive root
        // e_lo - e_hi = α_lo + ... + α_{hi-1}.
        assert!(lo < hi, "staircase word is not reduced at letter {j}");
        out.push(RootValue {
            letter: j,
            multiplier: u32::from(hi - lo),
        });
        right_mul(&mut prefix, j);
    }
    out
}

/// `p_A|_{w_C}` by summing over subwords of `W_C` whose product is `v_A`.
///
/// `v_A` is a Coxeter element of the parabolic subgroup on `A`, so every
/// reduced word for it uses each letter of `A` exactly once. The DP state is
/// the partial product together with the letters used so far; only letters
/// of `A` can be taken and only when they lengthen the partial product.
pub fn subword_restriction(a: &SubsetMask, c: &SubsetMask) -> TMonomial {
    if !a.is_subset_of(c) {
        return TMonomial::zero();
    }
    let n = c.rank();
    let mut target = identity(n);
    for j in a.iter() {
        right_mul(&mut target, j);
    }

    let letters = c.staircase_word();
    let roots = root_values(c);
    let mut states: HashMap<(Vec<u8>, u64), BigUint> = HashMap::new();
    states.insert((identity(n), 0), BigUint::from(1u32));

    for (&j, root) in letters.letters().iter().zip(&roots) {
        if !a.contains(j) {
            continue;
        }
        let mut next = states.clone();
        for ((perm, used), weight) in &states {
            let bit = 1u64 << j;
            if used & bit != 0 || perm[j as usize] > perm[j as usize + 1] {
                continue;
            }
            let mut moved = perm.clone();
            right_mul(&mut moved, j);
            let entry = next
                .entry((moved, used | bit))
                .or_insert_with(BigUint::zero);
            *entry += weight * BigUint::from(root.multiplier);
        }
        states = next;
    }

    let coeff = states
        .remove(&(target, a.bits()))
        .unwrap_or_else(BigUint::zero);
    TMonomial::new(coeff, a.len() as u32)
}

/// All restrictions `p_X|_{w_D}` for `X ⊆ D ⊆ {1, ..., n-1}`, computed by the
/// subword oracle, plus the triangular solver built on them.
#[derive(Clone, Debug)]
pub struct LocalizationSolver {
    n: u32,
    subsets: Vec<SubsetMask>,
    table: HashMap<(u64, u64), TMonomial>,
}

impl LocalizationSolver {
    pub fn new(n: u32) -> Result<Self> {
        let subsets = SubsetMask::all(n)?;
        let mut table = HashMap::new();
        for d in &subsets {
            for x in d.subsets() {
                table.insert((x.bits(), d.bits()), subword_restriction(&x, d));
            }
        }
        Ok(Self { n, subsets, table })
    }

    pub fn rank(&self) -> u32 {
        self.n
    }

    /// Tabulated `p_X|_{w_D}`; zero off the support.
    pub fn restriction(&self, x: &SubsetMask, d: &SubsetMask) -> TMonomial {
        self.table
            .get(&(x.bits(), d.bits()))
            .cloned()
            .unwrap_or_default()
    }

    /// Expansion of `p_A p_B` in the Peterson Schubert basis, nonzero entries
    /// only.
    pub fn localize_product(
        &self,
        a: &SubsetMask,
        b: &SubsetMask,
    ) -> Result<BTreeMap<SubsetMask, TMonomial>> {
        a.same_rank(b)?;
        if a.rank() != self.n {
            return Err(Error::RankMismatch(a.rank(), self.n));
        }
        let support = a.union(b);
        let mut solved: Vec<(SubsetMask, TMonomial)> = Vec::new();
        // `subsets` is sorted by (cardinality, bits), so every proper subset
        // of D is solved before D.
        for d in self.subsets.iter().filter(|d| support.is_subset_of(d)) {
            let fail = |reason: Error| {
                Error::Consistency(format!("solving A={{{a}}}, B={{{b}}}, D={{{d}}}: {reason}"))
            };
            let mut rest = &self.restriction(a, d) * &self.restriction(b, d);
            for (c, coeff) in &solved {
                if c.is_subset_of(d) {
                    let term = coeff * &self.restriction(c, d);
                    rest = rest.checked_sub(&term).map_err(fail)?;
                }
            }
            let value = rest.exact_div(&self.restriction(d, d)).map_err(fail)?;
            if !value.is_zero() {
                solved.push((*d, value));
            }
        }
        Ok(solved.into_iter().collect())
    }
}

/// One-shot version of [`LocalizationSolver::localize_product`].
pub fn localize_product(
    a: &SubsetMask,
    b: &SubsetMask,
    n: u32,
) -> Result<BTreeMap<SubsetMask, TMonomial>> {
    LocalizationSolver::new(n)?.localize_product(a, b)
}
