//! Plot data: each polynomial sampled on an evenly spaced rational grid.

use anyhow::{bail, Result};

use altpoly::scalar::to_decimal;
use altpoly::{format_rational, int, QPoly, Rational};

/// Significant digits of the approximate column.
const DIGITS: usize = 30;

/// CSV with columns `n, x, value` (exact) and `value_approx` (decimal, display only).
pub(crate) fn sample_table(family: &[QPoly], lo: &Rational, hi: &Rational, samples: usize) -> Result<String> {
    if samples < 2 {
        bail!("--samples must be at least 2");
    }
    if lo >= hi {
        bail!("--x-min must be below --x-max");
    }
    let step = (hi - lo) / int(samples as i64 - 1);
    let mut out = String::from("n,x,value,value_approx\n");
    for (n, p) in family.iter().enumerate() {
        for i in 0..samples {
            let x = lo + &step * int(i as i64);
            let value = p.eval(&x);
            out.push_str(&format!(
                "{n},{},{},{}\n",
                format_rational(&x),
                format_rational(&value),
                to_decimal(&value, DIGITS)
            ));
        }
    }
    Ok(out)
}
