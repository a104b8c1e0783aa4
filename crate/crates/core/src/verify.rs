//! Exhaustive sweeps comparing the closed forms with the oracles.

use std::fmt;
use std::time::Instant;

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bikelock::{verify_identity, IdentityParams};
use crate::error::Result;
use crate::monomial::{factorial, TMonomial};
use crate::oracle::{subword_restriction, LocalizationSolver};
use crate::restriction::restrict;
use crate::structure::{b_general, nested_conversion, nonvanishing, StructureConstantKey};
use crate::subset::{ConsecutiveBlock, SubsetMask};

/// Counterexamples kept per report.
pub const MAX_COUNTEREXAMPLES: usize = 10;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SweepMode {
    Formula,
    Oracle,
    Conversion,
    Identity,
}

impl fmt::Display for SweepMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SweepMode::Formula => "formula",
            SweepMode::Oracle => "oracle",
            SweepMode::Conversion => "conversion",
            SweepMode::Identity => "identity",
        })
    }
}

/// Summary of one sweep. `checked` counts the units named by `unit`
/// (pairs, restrictions, triples or parameter points).
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct VerifyReport {
    pub mode: SweepMode,
    pub unit: String,
    pub checked: u64,
    /// Triples compared inside the checked units, when that differs.
    pub comparisons: u64,
    pub mismatches: u64,
    pub counterexamples: Vec<String>,
    pub elapsed_ms: f64,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.mismatches == 0
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: checked {} {}, {} mismatches ({:.1} ms)",
            self.mode, self.checked, self.unit, self.mismatches, self.elapsed_ms
        )?;
        for line in &self.counterexamples {
            write!(f, "\n  {line}")?;
        }
        Ok(())
    }
}

#[derive(Default)]
struct Tally {
    checked: u64,
    comparisons: u64,
    mismatches: u64,
    counterexamples: Vec<String>,
}

impl Tally {
    fn fail(&mut self, what: String) {
        self.mismatches += 1;
        if self.counterexamples.len() < MAX_COUNTEREXAMPLES {
            self.counterexamples.push(what);
        }
    }

    fn merge(mut self, other: Tally) -> Tally {
        self.checked += other.checked;
        self.comparisons += other.comparisons;
        self.mismatches += other.mismatches;
        for c in other.counterexamples {
            if self.counterexamples.len() < MAX_COUNTEREXAMPLES {
                self.counterexamples.push(c);
            }
        }
        self
    }

    fn report(self, mode: SweepMode, unit: &str, start: Instant) -> VerifyReport {
        VerifyReport {
            mode,
            unit: unit.into(),
            checked: self.checked,
            comparisons: self.comparisons,
            mismatches: self.mismatches,
            counterexamples: self.counterexamples,
            elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
        }
    }
}

fn pairs(n: u32) -> Result<Vec<(SubsetMask, SubsetMask)>> {
    let all = SubsetMask::all(n)?;
    Ok(all
        .iter()
        .flat_map(|a| all.iter().map(move |b| (*a, *b)))
        .collect())
}

/// Compares `b_general` with the localization oracle for every `(A, B, C)`
/// with `min_n <= n <= max_n`. Each triple is also checked for the degree
/// law and for `b ≠ 0 ⇔ nonvanishing`.
pub fn verify_formula(min_n: u32, max_n: u32) -> Result<VerifyReport> {
    let start = Instant::now();
    let mut total = Tally::default();
    for n in min_n..=max_n {
        let solver = LocalizationSolver::new(n)?;
        let all = SubsetMask::all(n)?;
        let tally = pairs(n)?
            .par_iter()
            .map(|(a, b)| {
                let mut t = Tally {
                    checked: 1,
                    ..Tally::default()
                };
                let oracle = match solver.localize_product(a, b) {
                    Ok(table) => table,
                    Err(e) => {
                        t.fail(format!(
                            "[formula] n={n} A={{{a}}} B={{{b}}}: oracle failed: {e}"
                        ));
                        return t;
                    }
                };
                for c in &all {
                    t.comparisons += 1;
                    let key = StructureConstantKey::new(*a, *b, *c).expect("same rank");
                    let formula = b_general(&key);
                    let expected = oracle.get(c).cloned().unwrap_or_default();
                    let tag = || format!("n={n} A={{{a}}} B={{{b}}} C={{{c}}}");
                    if formula != expected {
                        t.fail(format!(
                            "[formula] {}: formula {formula}, oracle {expected}",
                            tag()
                        ));
                    } else if nonvanishing(&key) == formula.is_zero() {
                        t.fail(format!(
                            "[positivity] {}: criterion disagrees with {formula}",
                            tag()
                        ));
                    } else if !formula.is_zero()
                        && formula.power() as usize + c.len() != a.len() + b.len()
                    {
                        t.fail(format!(
                            "[degree] {}: degree of {formula} breaks |A|+|B|-|C|",
                            tag()
                        ));
                    }
                }
                t
            })
            .reduce(Tally::default, Tally::merge);
        total = total.merge(tally);
    }
    Ok(total.report(SweepMode::Formula, "pairs", start))
}

/// Compares the closed-form restriction with the subword sum for every
/// `A ⊆ C` with `min_n <= n <= max_n`.
pub fn verify_restrictions(min_n: u32, max_n: u32) -> Result<VerifyReport> {
    let start = Instant::now();
    let mut total = Tally::default();
    for n in min_n..=max_n {
        let tally = SubsetMask::all(n)?
            .par_iter()
            .map(|c| {
                let mut t = Tally::default();
                for a in c.subsets() {
                    t.checked += 1;
                    t.comparisons += 1;
                    let (formula, oracle) = (restrict(&a, c), subword_restriction(&a, c));
                    if formula != oracle {
                        t.fail(format!(
                            "n={n} A={{{a}}} C={{{c}}}: formula {formula}, subword {oracle}"
                        ));
                    }
                }
                t
            })
            .reduce(Tally::default, Tally::merge);
        total = total.merge(tally);
    }
    Ok(total.report(SweepMode::Oracle, "restrictions", start))
}

fn blocks(n: u32) -> Vec<ConsecutiveBlock> {
    let mut out = Vec::new();
    for tail in 1..n {
        for head in tail..n {
            out.push(ConsecutiveBlock::new(tail, head).expect("tail <= head"));
        }
    }
    out
}

/// Checks `|A|! |B|! b_{A,B}^C = |A'|! |B'|! b_{A',B'}^C` for all blocks
/// `B ⊆ A` and all `C`, with both sides taken from the localization oracle.
pub fn verify_conversion(min_n: u32, max_n: u32) -> Result<VerifyReport> {
    let start = Instant::now();
    let mut total = Tally::default();
    for n in min_n.max(2)..=max_n {
        let solver = LocalizationSolver::new(n)?;
        let all = SubsetMask::all(n)?;
        let nested: Vec<_> = blocks(n)
            .into_iter()
            .flat_map(|a| {
                blocks(n)
                    .into_iter()
                    .filter(move |b| a.contains_block(b))
                    .map(move |b| (a, b))
            })
            .collect();
        let tally = nested
            .par_iter()
            .map(|&(a, b)| {
                let mut t = Tally {
                    checked: 1,
                    ..Tally::default()
                };
                let (a2, b2) = nested_conversion(a, b).expect("nested pair");
                let mask = |blk| SubsetMask::from_block(n, blk).expect("block fits");
                let weight = |x: ConsecutiveBlock, y: ConsecutiveBlock| {
                    TMonomial::new(factorial(x.len() as u64) * factorial(y.len() as u64), 0)
                };
                let lhs_table = solver.localize_product(&mask(a), &mask(b));
                let rhs_table = solver.localize_product(&mask(a2), &mask(b2));
                let (Ok(lhs_table), Ok(rhs_table)) = (lhs_table, rhs_table) else {
                    t.fail(format!("n={n} A={a} B={b}: oracle failed"));
                    return t;
                };
                for c in &all {
                    t.comparisons += 1;
                    let lhs = &weight(a, b) * &lhs_table.get(c).cloned().unwrap_or_default();
                    let rhs = &weight(a2, b2) * &rhs_table.get(c).cloned().unwrap_or_default();
                    if lhs != rhs {
                        t.fail(format!(
                            "n={n} A={a} B={b} A'={a2} B'={b2} C={{{c}}}: {lhs} vs {rhs}"
                        ));
                    }
                }
                t
            })
            .reduce(Tally::default, Tally::merge);
        total = total.merge(tally);
    }
    Ok(total.report(SweepMode::Conversion, "nested pairs", start))
}

/// Runs [`verify_identity`] at every point of [`IdentityParams::grid`].
pub fn verify_identity_grid(
    max_m: i64,
    max_n: i64,
    max_entry: i64,
    max_width: i64,
    bijection: bool,
) -> Result<VerifyReport> {
    let start = Instant::now();
    let tally = IdentityParams::grid(max_m, max_n, max_entry, max_width)
        .par_iter()
        .map(|p| {
            let mut t = Tally {
                checked: 1,
                ..Tally::default()
            };
            match verify_identity(p, bijection, false) {
                Ok(cert) => {
                    t.comparisons = cert.s_count;
                    if !cert.passed() {
                        t.fail(format!(
                            "{p:?}: lhs={} rhs={} |S|={} |V|={} bijection={:?}",
                            cert.lhs, cert.rhs, cert.s_count, cert.v_count, cert.bijection
                        ));
                    }
                }
                Err(e) => t.fail(format!("{p:?}: {e}")),
            }
            t
        })
        .reduce(Tally::default, Tally::merge);
    Ok(tally.report(SweepMode::Identity, "parameter points", start))
}

/// `Σ_{n=min_n}^{max_n} 4^{n-1}`, the number of pairs a formula sweep visits.
pub fn formula_pair_count(min_n: u32, max_n: u32) -> BigUint {
    (min_n..=max_n)
        .map(|n| BigUint::from(1u8) << (2 * (n - 1)))
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_sweeps_pass() {
        let r = verify_formula(2, 4).unwrap();
        assert!(r.passed(), "{r}");
        assert_eq!(BigUint::from(r.checked), formula_pair_count(2, 4));
        assert!(verify_restrictions(2, 5).unwrap().passed());
        assert!(verify_conversion(2, 5).unwrap().passed());
        let r = verify_identity_grid(1, 1, 2, 6, true).unwrap();
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn report_lists_at_most_ten_counterexamples() {
        let mut t = Tally::default();
        for i in 0..25 {
            t.fail(i.to_string());
        }
        let r = t.report(SweepMode::Formula, "pairs", Instant::now());
        assert_eq!(
            (r.mismatches, r.counterexamples.len()),
            (25, MAX_COUNTEREXAMPLES)
        );
        assert!(!r.passed());
    }
}
