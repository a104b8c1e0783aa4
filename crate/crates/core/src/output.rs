//! Table rows and their text, JSON lines, CSV and LaTeX renderings.

use std::fmt::Write as _;
use std::io::{self, Write};

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::monomial::TMonomial;
use crate::structure::ExpansionTable;
use crate::subset::SubsetMask;

/// Serde adapter writing a `BigUint` as a decimal string.
pub mod decimal {
    use num_bigint::BigUint;
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(value: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&value.to_str_radix(10))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        let text = String::deserialize(d)?;
        BigUint::parse_bytes(text.as_bytes(), 10)
            .ok_or_else(|| de::Error::custom(format!("not a decimal integer: {text:?}")))
    }
}

/// One row: `coeff * t^t_power` is the coefficient of `p_C` (or a
/// restriction value, in which case `b` is empty).
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct OutputRecord {
    pub a: Vec<u32>,
    pub b: Vec<u32>,
    pub c: Vec<u32>,
    pub coeff: String,
    pub t_power: u32,
    pub n: u32,
}

impl OutputRecord {
    pub fn new(a: &SubsetMask, b: &SubsetMask, c: &SubsetMask, value: &TMonomial) -> Self {
        Self {
            a: a.to_vec(),
            b: b.to_vec(),
            c: c.to_vec(),
            coeff: value.coeff().to_string(),
            t_power: value.power(),
            n: c.rank(),
        }
    }

    pub fn value(&self) -> Result<TMonomial> {
        let coeff =
            BigUint::parse_bytes(self.coeff.as_bytes(), 10).ok_or_else(|| Error::Parse {
                input: self.coeff.clone(),
                reason: "coefficient is not a decimal integer".into(),
            })?;
        Ok(TMonomial::new(coeff, self.t_power))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("records always serialize")
    }

    pub fn from_json(line: &str) -> Result<Self> {
        serde_json::from_str(line).map_err(|e| Error::Parse {
            input: line.to_string(),
            reason: e.to_string(),
        })
    }
}

/// Nonzero rows of an expansion, sorted by `(|C|, C)`.
pub fn expansion_records(
    a: &SubsetMask,
    b: &SubsetMask,
    table: &ExpansionTable,
) -> Vec<OutputRecord> {
    // `SubsetMask` already orders by (rank, cardinality, bits).
    table
        .iter()
        .filter(|(_, v)| !v.is_zero())
        .map(|(c, v)| OutputRecord::new(a, b, c, v))
        .collect()
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum Format {
    #[default]
    Text,
    JsonLines,
    Csv,
    Latex,
}

fn braces(set: &[u32]) -> String {
    let items: Vec<String> = set.iter().map(u32::to_string).collect();
    format!("{{{}}}", items.join(","))
}

fn latex_set(set: &[u32]) -> String {
    if set.is_empty() {
        return r"\emptyset".into();
    }
    let items: Vec<String> = set.iter().map(u32::to_string).collect();
    format!(r"\{{{}\}}", items.join(","))
}

fn latex_value(r: &OutputRecord) -> String {
    match r.t_power {
        0 => r.coeff.clone(),
        1 => format!("{}t", r.coeff),
        d => format!("{}t^{{{d}}}", r.coeff),
    }
}

fn text_value(r: &OutputRecord) -> String {
    if r.t_power == 0 {
        r.coeff.clone()
    } else {
        format!("{}*t^{}", r.coeff, r.t_power)
    }
}

fn csv_set(set: &[u32]) -> String {
    let items: Vec<String> = set.iter().map(u32::to_string).collect();
    items.join(" ")
}

/// Renders `records` in `format`. Text and CSV put one record per line,
/// LaTeX wraps them in a `tabular`.
pub fn render(records: &[OutputRecord], format: Format) -> String {
    let mut out = String::new();
    match format {
        Format::Text => {
            for r in records {
                let _ = writeln!(out, "{}\t{}", braces(&r.c), text_value(r));
            }
        }
        Format::JsonLines => {
            for r in records {
                out.push_str(&r.to_json());
                out.push('\n');
            }
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let header = ["n", "A", "B", "C", "coeff", "t_power"];
            w.write_record(header).expect("in-memory write");
            for r in records {
                w.write_record([
                    r.n.to_string(),
                    csv_set(&r.a),
                    csv_set(&r.b),
                    csv_set(&r.c),
                    r.coeff.clone(),
                    r.t_power.to_string(),
                ])
                .expect("in-memory write");
            }
            out.push_str(
                &String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8"),
            );
        }
        Format::Latex => {
            out.push_str("\\begin{tabular}{lll}\n");
            out.push_str("$A$ & $B$ & $b_{A,B}^{C}$ \\\\\n\\hline\n");
            for r in records {
                let _ = writeln!(
                    out,
                    "${}$ & ${}$ & $b^{{{}}} = {}$ \\\\",
                    latex_set(&r.a),
                    latex_set(&r.b),
                    latex_set(&r.c),
                    latex_value(r)
                );
            }
            out.push_str("\\end{tabular}\n");
        }
    }
    out
}

pub fn write_records(
    w: &mut impl Write,
    records: &[OutputRecord],
    format: Format,
) -> io::Result<()> {
    w.write_all(render(records, format).as_bytes())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::expand_product;
    use proptest::prelude::*;

    fn set(n: u32, s: &str) -> SubsetMask {
        SubsetMask::parse(n, s).unwrap()
    }

    #[test]
    fn expansion_rows_are_sorted() {
        let (a, b) = (set(3, "1"), set(3, "1"));
        let rows = expansion_records(&a, &b, &expand_product(&a, &b).unwrap());
        assert_eq!(rows.len(), 2);
        assert_eq!(rows[0].c, vec![1]);
        assert_eq!((rows[0].coeff.as_str(), rows[0].t_power), ("1", 1));
        assert_eq!(rows[1].c, vec![1, 2]);
    }

    #[test]
    fn formats() {
        let r = OutputRecord::new(
            &set(5, "1,2"),
            &set(5, "2-4"),
            &set(5, "1-4"),
            &TMonomial::new(12u32, 1),
        );
        let rows = [r.clone()];
        assert_eq!(render(&rows, Format::Text), "{1,2,3,4}\t12*t^1\n");
        assert_eq!(
            render(&rows, Format::Csv),
            "n,A,B,C,coeff,t_power\n5,1 2,2 3 4,1 2 3 4,12,1\n"
        );
        assert!(render(&rows, Format::Latex)
            .contains(r"$\{1,2\}$ & $\{2,3,4\}$ & $b^{\{1,2,3,4\}} = 12t$"));
        assert_eq!(
            OutputRecord::from_json(render(&rows, Format::JsonLines).trim()).unwrap(),
            r
        );
    }

    #[test]
    fn coefficients_beyond_64_bits() {
        let big = crate::monomial::factorial(40);
        let r = OutputRecord::new(
            &set(3, ""),
            &set(3, ""),
            &set(3, ""),
            &TMonomial::new(big.clone(), 0),
        );
        let back = OutputRecord::from_json(&r.to_json()).unwrap();
        assert_eq!(back.value().unwrap(), TMonomial::new(big, 0));
    }

    proptest! {
        #[test]
        fn json_round_trip(
            a in proptest::collection::vec(1u32..64, 0..8),
            c in proptest::collection::vec(1u32..64, 0..8),
            coeff in any::<u128>(),
            t_power in 0u32..40,
            n in 2u32..65,
        ) {
            let r = OutputRecord { a: a.clone(), b: a, c, coeff: coeff.to_string(), t_power, n };
            prop_assert_eq!(OutputRecord::from_json(&r.to_json()).unwrap(), r);
        }
    }
}
