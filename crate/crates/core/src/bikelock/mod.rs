//! The generalized Vandermonde identity
//!
//! `Σ_{i,j} binom(w+i+n, w+i+j) · (w+m+j; i, j, m-i, x-i-j, z-x+j, y-x+i)
//!    = binom(w+m, w) binom(y+m, x) binom(w+n, y) binom(z+n, z)`
//!
//! for `w + x = y + z`, counted on both sides by letter matrices and proved
//! bijectively by bike lock moves.

mod matrix;

use std::time::Instant;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::monomial::{binomial, multinomial};

pub use matrix::{
    characterize_s_image, characterize_v_image, column_correspondence, enumerate_s, enumerate_v,
    for_each_characterized_s, for_each_characterized_v, for_each_s, for_each_v, s_counts, v_counts,
    Bottom, SMatrix, Sym, Top, VMatrix, MAX_WIDTH, S_TYPES, V_TYPES,
};

/// Parameters `(m, n, w, x, y, z)` with `m, n >= 0` and `w + x = y + z`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct IdentityParams {
    pub m: i64,
    pub n: i64,
    pub w: i64,
    pub x: i64,
    pub y: i64,
    pub z: i64,
}

impl IdentityParams {
    pub fn new(m: i64, n: i64, w: i64, x: i64, y: i64, z: i64) -> Result<Self> {
        if m < 0 || n < 0 {
            return Err(Error::InvalidParams(format!(
                "m = {m}, n = {n} must be nonnegative"
            )));
        }
        if w + x != y + z {
            return Err(Error::InvalidParams(format!(
                "w + x = {} differs from y + z = {}",
                w + x,
                y + z
            )));
        }
        Ok(Self { m, n, w, x, y, z })
    }

    /// Number of columns `w + m + n`.
    pub fn width(&self) -> i64 {
        self.w + self.m + self.n
    }

    /// Both sides vanish when one of `w, x, y, z` is negative.
    pub fn is_vacuous(&self) -> bool {
        self.w < 0 || self.x < 0 || self.y < 0 || self.z < 0
    }

    /// All points with `0 <= m <= max_m`, `0 <= n <= max_n`,
    /// `0 <= w, x, y, z <= max_entry`, `w + x = y + z` and `w + m + n <= max_width`.
    pub fn grid(max_m: i64, max_n: i64, max_entry: i64, max_width: i64) -> Vec<Self> {
        let mut out = Vec::new();
        for m in 0..=max_m {
            for n in 0..=max_n {
                for w in 0..=max_entry {
                    for x in 0..=max_entry {
                        for y in 0..=max_entry {
                            let z = w + x - y;
                            if (0..=max_entry).contains(&z) && w + m + n <= max_width {
                                out.push(Self { m, n, w, x, y, z });
                            }
                        }
                    }
                }
            }
        }
        out
    }
}

/// `binom(w+m, w) binom(y+m, x) binom(w+n, y) binom(z+n, z)`.
pub fn lhs_count(p: &IdentityParams) -> BigUint {
    let IdentityParams { m, n, w, x, y, z } = *p;
    binomial(w + m, w) * binomial(y + m, x) * binomial(w + n, y) * binomial(z + n, z)
}

/// `Σ_{0<=i<=m, 0<=j<=n} binom(w+i+n, w+i+j) (w+m+j; i, j, m-i, x-i-j, z-x+j, y-x+i)`.
pub fn rhs_count(p: &IdentityParams) -> BigUint {
    let IdentityParams { m, n, w, x, y, z } = *p;
    let mut total = BigUint::default();
    for i in 0..=m {
        for j in 0..=n {
            total += binomial(w + i + n, w + i + j)
                * multinomial(w + m + j, &[i, j, m - i, x - i - j, z - x + j, y - x + i]);
        }
    }
    total
}

/// One pair of the bijection: `v ∈ 𝒱` and the `s ∈ 𝒮` it is sent to, with
/// the intermediate images.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct TracePair {
    pub v: String,
    pub v_image: String,
    pub s_image: String,
    pub s: String,
}

/// Outcome of checking one parameter point.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct IdentityCertificate {
    pub params: IdentityParams,
    #[serde(with = "crate::output::decimal")]
    pub lhs: BigUint,
    #[serde(with = "crate::output::decimal")]
    pub rhs: BigUint,
    pub s_count: u64,
    pub v_count: u64,
    /// Set when one of `w, x, y, z` is negative; nothing is enumerated.
    pub vacuous: bool,
    /// `None` unless the move pipeline was run.
    pub bijection: Option<BijectionReport>,
    pub elapsed_ms: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trace: Option<Vec<TracePair>>,
}

/// The individual checks of the move pipeline.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct BijectionReport {
    pub bl_minus_injective: bool,
    pub bl_minus_image_characterized: bool,
    pub bl_star_injective: bool,
    pub bl_star_image_characterized: bool,
    pub correspondence_bijective: bool,
    pub worked_examples: bool,
}

impl BijectionReport {
    pub fn valid(&self) -> bool {
        self.bl_minus_injective
            && self.bl_minus_image_characterized
            && self.bl_star_injective
            && self.bl_star_image_characterized
            && self.correspondence_bijective
    }
}

impl IdentityCertificate {
    /// The four counts agree, and the pipeline (if run) passed.
    pub fn passed(&self) -> bool {
        let counts = self.lhs == self.rhs
            && (self.vacuous
                || (BigUint::from(self.s_count) == self.lhs
                    && BigUint::from(self.v_count) == self.lhs));
        counts && self.bijection.as_ref().is_none_or(|b| b.valid())
    }
}

fn no_duplicates<T: Ord>(sorted: &[T]) -> bool {
    sorted.windows(2).all(|w| w[0] != w[1])
}

/// Runs the bike lock pipeline at one point.
fn bijection_report(p: &IdentityParams) -> BijectionReport {
    // Images of BL⁻, checked against the predicate one by one.
    let mut s_images = Vec::new();
    let mut s_images_typed = true;
    for_each_s(p, |s| {
        let image = s.bl_minus();
        s_images_typed &= characterize_s_image(p, &image);
        s_images.push(image.key());
    });
    s_images.sort_unstable();
    let bl_minus_injective = no_duplicates(&s_images);
    let mut s_expected = Vec::with_capacity(s_images.len());
    for_each_characterized_s(p, |s| s_expected.push(s.key()));
    s_expected.sort_unstable();
    let bl_minus_image_characterized = s_images_typed && s_images == s_expected;
    drop(s_expected);

    let mut v_images = Vec::new();
    let mut corresponded = Vec::new();
    let mut v_images_typed = true;
    for_each_v(p, |v| {
        let image = v.bl_star();
        v_images_typed &= characterize_v_image(p, &image);
        v_images.push(image.key());
        match matrix::correspond_columns(&image) {
            Some(s) => corresponded.push(s.key()),
            None => v_images_typed = false,
        }
    });
    v_images.sort_unstable();
    let bl_star_injective = no_duplicates(&v_images);
    let mut v_expected = Vec::with_capacity(v_images.len());
    for_each_characterized_v(p, |v| v_expected.push(v.key()));
    v_expected.sort_unstable();
    let bl_star_image_characterized = v_images_typed && v_images == v_expected;
    drop(v_expected);
    drop(v_images);

    corresponded.sort_unstable();
    let correspondence_bijective = v_images_typed && corresponded == s_images;

    BijectionReport {
        bl_minus_injective,
        bl_minus_image_characterized,
        bl_star_injective,
        bl_star_image_characterized,
        correspondence_bijective,
        worked_examples: worked_examples_hold(),
    }
}

/// The two hand-worked move examples.
pub fn worked_examples_hold() -> bool {
    let s = SMatrix::parse("R Q O S P R T R -; C C U C C C C C -").expect("valid literal");
    let s_out = SMatrix::parse("R Q O - S P R T R; C C - U C C C C C").expect("valid literal");
    let v = VMatrix::parse("0 1 0 * *; 0 0 0 * *; 0 1 0 * *; 0 0 * * *").expect("valid literal");
    let v_out =
        VMatrix::parse("0 * 1 0 *; 0 * 0 0 *; * 0 1 * 0; * 0 * * 0").expect("valid literal");
    s.bl_minus() == s_out && v.bl_star() == v_out
}

/// The bijection `𝒱 → 𝒮`: `v ↦ left_align(correspond(BL★(v)))`.
pub fn bijection_pairs(p: &IdentityParams) -> Vec<TracePair> {
    let mut out = Vec::new();
    for_each_v(p, |v| {
        let image = v.bl_star();
        if let Some(s_image) = matrix::correspond_columns(&image) {
            out.push(TracePair {
                v: v.to_string(),
                v_image: image.to_string(),
                s_image: s_image.to_string(),
                s: s_image.left_align().to_string(),
            });
        }
    });
    out
}

/// Counts both sides by formula and by enumeration; with `bijection` also
/// runs the move pipeline, and with `trace` lists every pair.
pub fn verify_identity(
    p: &IdentityParams,
    bijection: bool,
    trace: bool,
) -> Result<IdentityCertificate> {
    let start = Instant::now();
    let (lhs, rhs) = (lhs_count(p), rhs_count(p));
    let vacuous = p.is_vacuous();
    if !vacuous && p.width() as usize > MAX_WIDTH {
        return Err(Error::InvalidParams(format!(
            "w + m + n = {} exceeds {MAX_WIDTH}",
            p.width()
        )));
    }
    let (mut s_count, mut v_count) = (0u64, 0u64);
    let mut report = None;
    let mut pairs = None;
    if !vacuous {
        for_each_s(p, |_| s_count += 1);
        for_each_v(p, |_| v_count += 1);
        if bijection {
            report = Some(bijection_report(p));
        }
        if trace {
            pairs = Some(bijection_pairs(p));
        }
    }
    Ok(IdentityCertificate {
        params: *p,
        lhs,
        rhs,
        s_count,
        v_count,
        vacuous,
        bijection: report,
        elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
        trace: pairs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(m: i64, n: i64, w: i64, x: i64, y: i64, z: i64) -> IdentityParams {
        IdentityParams::new(m, n, w, x, y, z).unwrap()
    }

    #[test]
    fn parameter_validation() {
        assert!(IdentityParams::new(0, 0, 1, 1, 1, 0).is_err());
        assert!(IdentityParams::new(-1, 0, 1, 1, 1, 1).is_err());
        assert!(params(0, 0, -1, 1, 0, 0).is_vacuous());
    }

    #[test]
    fn counts() {
        assert_eq!(lhs_count(&params(0, 0, 2, 2, 2, 2)), BigUint::from(1u32));
        assert_eq!(rhs_count(&params(0, 0, 2, 2, 2, 2)), BigUint::from(1u32));
        assert_eq!(lhs_count(&params(1, 0, 1, 1, 1, 1)), BigUint::from(4u32));
        assert_eq!(rhs_count(&params(1, 0, 1, 1, 1, 1)), BigUint::from(4u32));
        assert_eq!(lhs_count(&params(0, 0, 2, -1, 1, 0)), BigUint::default());
        assert_eq!(rhs_count(&params(0, 0, 2, -1, 1, 0)), BigUint::default());
    }

    #[test]
    fn vandermonde_specialization() {
        // n = 0 with a = x, b = y - x + m, s = m: the i-th term is
        // K binom(a, i) binom(b, s - i) with K = (w + m)! / (x! (z - x)! b!).
        let p = params(2, 0, 2, 2, 2, 2);
        let (a, b, s) = (p.x, p.y - p.x + p.m, p.m);
        let k = crate::monomial::factorial((p.w + p.m) as u64)
            / (crate::monomial::factorial(p.x as u64)
                * crate::monomial::factorial((p.z - p.x) as u64)
                * crate::monomial::factorial(b as u64));
        assert_eq!(k, BigUint::from(6u32));
        let terms: Vec<BigUint> = (0..=s)
            .map(|r| binomial(a, r) * binomial(b, s - r))
            .collect();
        assert_eq!(terms, [1u32, 4, 1].map(BigUint::from));
        assert_eq!(binomial(a + b, s), BigUint::from(6u32));
        assert_eq!(rhs_count(&p), &k * terms.iter().sum::<BigUint>());
        assert_eq!(lhs_count(&p), &k * binomial(a + b, s));
    }

    #[test]
    fn certificates() {
        let cert = verify_identity(&params(0, 0, 0, 0, 0, 0), true, true).unwrap();
        assert!(cert.passed());
        assert_eq!((cert.s_count, cert.v_count), (1, 1));
        let cert = verify_identity(&params(2, 1, 3, 2, 3, 2), true, false).unwrap();
        assert!(cert.passed(), "{cert:?}");
        let cert = verify_identity(&params(0, 0, 1, -1, 0, 0), true, false).unwrap();
        assert!(cert.vacuous && cert.passed());
    }

    #[test]
    fn trace_pairs_are_a_bijection() {
        let p = params(1, 1, 1, 1, 1, 1);
        let pairs = bijection_pairs(&p);
        assert_eq!(pairs.len() as u64, enumerate_s(&p).len() as u64);
        let mut targets: Vec<&str> = pairs.iter().map(|pair| pair.s.as_str()).collect();
        targets.sort_unstable();
        targets.dedup();
        assert_eq!(targets.len(), pairs.len());
        let mut s_side: Vec<String> = enumerate_s(&p).iter().map(|s| s.to_string()).collect();
        s_side.sort_unstable();
        assert_eq!(
            targets,
            s_side.iter().map(String::as_str).collect::<Vec<_>>()
        );
    }

    #[test]
    fn small_grid() {
        for p in IdentityParams::grid(2, 2, 3, 8) {
            let cert = verify_identity(&p, true, false).unwrap();
            assert!(cert.passed(), "{cert:?}");
        }
    }
}
