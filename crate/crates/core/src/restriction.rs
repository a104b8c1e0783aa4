//! Closed-form restrictions `p_A|_{w_C}` of Peterson Schubert classes to
//! Peterson fixed points.

use crate::error::{Error, Result};
use crate::monomial::{binomial, factorial, TMonomial};
use crate::subset::{ConsecutiveBlock, SubsetMask};

/// `p_A|_{w_D}` for blocks `A ⊆ D`:
/// `binom(H_D - T_A + 1, |A|) · (H_A - T_D + 1)! / (T_A - T_D)! · t^{|A|}`.
pub fn restrict_consecutive(a: ConsecutiveBlock, d: ConsecutiveBlock) -> Result<TMonomial> {
    if !d.contains_block(&a) {
        return Err(Error::BlockNotContained {
            inner_tail: a.tail(),
            inner_head: a.head(),
            outer_tail: d.tail(),
            outer_head: d.head(),
        });
    }
    let (ta, ha) = (a.tail() as i64, a.head() as i64);
    let (td, hd) = (d.tail() as i64, d.head() as i64);
    let len = a.len() as i64;
    let choose = binomial(hd - ta + 1, len);
    let falling = factorial((ha - td + 1) as u64) / factorial((ta - td) as u64);
    Ok(TMonomial::new(choose * falling, a.len() as u32))
}

/// `p_A|_{w_C}`: zero unless `A ⊆ C`, otherwise the product over the blocks
/// of `A` of their restrictions to the enclosing block of `C`.
pub fn restrict(a: &SubsetMask, c: &SubsetMask) -> TMonomial {
    if !a.is_subset_of(c) {
        return TMonomial::zero();
    }
    let mut acc = TMonomial::one();
    for block in a.decompose() {
        let outer = c
            .block_containing(block.tail())
            .expect("A is contained in C");
        let factor = restrict_consecutive(block, outer).expect("block lies in its enclosing run");
        acc = &acc * &factor;
    }
    acc
}

/// `p_A|_{w_A} = ∏ |A_i|! t^{|A_i|}`.
pub fn self_restrict(a: &SubsetMask) -> TMonomial {
    let mut acc = TMonomial::one();
    for block in a.decompose() {
        acc = &acc * &TMonomial::new(factorial(block.len() as u64), block.len() as u32);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn block(t: u32, h: u32) -> ConsecutiveBlock {
        ConsecutiveBlock::new(t, h).unwrap()
    }

    fn set(n: u32, s: &str) -> SubsetMask {
        SubsetMask::parse(n, s).unwrap()
    }

    #[test]
    fn consecutive_examples() {
        assert_eq!(
            restrict_consecutive(block(2, 3), block(1, 6)).unwrap(),
            TMonomial::new(60u32, 2)
        );
        assert_eq!(
            restrict_consecutive(block(1, 2), block(1, 2)).unwrap(),
            TMonomial::new(2u32, 2)
        );
        assert_eq!(
            restrict_consecutive(block(1, 1), block(1, 3)).unwrap(),
            TMonomial::new(3u32, 1)
        );
        assert!(restrict_consecutive(block(1, 4), block(2, 6)).is_err());
    }

    #[test]
    fn general_examples() {
        assert!(restrict(&set(4, "1,3"), &set(4, "1,2")).is_zero());
        assert_eq!(
            restrict(&set(7, "2,3"), &set(7, "1-6")),
            TMonomial::new(60u32, 2)
        );
        assert_eq!(
            restrict(&set(6, "1,4"), &set(6, "1,2,4,5")),
            TMonomial::new(4u32, 2)
        );
        assert_eq!(restrict(&set(4, ""), &set(4, "2")), TMonomial::one());
    }

    #[test]
    fn self_restriction_examples() {
        assert_eq!(self_restrict(&set(5, "2-4")), TMonomial::new(6u32, 3));
        assert_eq!(self_restrict(&set(5, "")), TMonomial::one());
        assert_eq!(self_restrict(&set(5, "1,3")), TMonomial::new(1u32, 2));
    }

    proptest! {
        #[test]
        fn restriction_laws(n in 2u32..10, a_bits in any::<u64>(), c_bits in any::<u64>()) {
            let universe = (1u64 << n) - 2;
            let a = SubsetMask::from_bits(n, a_bits & universe).unwrap();
            let c = SubsetMask::from_bits(n, c_bits & universe).unwrap();
            let value = restrict(&a, &c);
            // zero exactly off the support, and homogeneous of degree |A|
            prop_assert_eq!(value.is_zero(), !a.is_subset_of(&c));
            if !value.is_zero() {
                prop_assert_eq!(value.power() as usize, a.len());
            }
            // factorization over the blocks of A
            let mut product = TMonomial::one();
            for b in a.decompose() {
                let single = SubsetMask::from_bits(n, b.bits()).unwrap();
                product = &product * &restrict(&single, &c);
            }
            prop_assert_eq!(&product, &value);
            // locality: only the blocks of C meeting A matter
            if a.is_subset_of(&c) {
                let mut near = 0u64;
                for b in c.decompose() {
                    if b.bits() & a.bits() != 0 {
                        near |= b.bits();
                    }
                }
                let c0 = SubsetMask::from_bits(n, near).unwrap();
                prop_assert_eq!(restrict(&a, &c0), value);
            }
            prop_assert_eq!(restrict(&a, &a), self_restrict(&a));
        }
    }
}
