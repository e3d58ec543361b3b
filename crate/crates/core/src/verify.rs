//! Outcome type for guarantee checks.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

/// One inequality or equality evaluated on a run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundCheck {
    pub label: &'static str,
    pub observed: String,
    pub required: String,
    pub holds: bool,
}

impl fmt::Display for BoundCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mark = if self.holds { "ok" } else { "VIOLATED" };
        write!(
            f,
            "{}: observed {} vs required {} [{mark}]",
            self.label, self.observed, self.required
        )
    }
}

/// All checks one verifier evaluated. An empty verdict means no check applied.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Verdict {
    pub checks: Vec<BoundCheck>,
}

impl Verdict {
    pub fn holds(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }

    pub fn failures(&self) -> impl Iterator<Item = &BoundCheck> {
        self.checks.iter().filter(|c| !c.holds)
    }

    pub(crate) fn push(&mut self, check: BoundCheck) {
        self.checks.push(check);
    }

    pub fn merge(&mut self, other: Verdict) {
        self.checks.extend(other.checks);
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{c}")?;
        }
        Ok(())
    }
}

pub(crate) fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub(crate) fn int(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// `1 − (1 − 1/d)^e`, exactly.
pub(crate) fn greedy_factor(d: u64, e: u64) -> BigRational {
    if d == 0 {
        return int(0);
    }
    let d = BigInt::from(d);
    let num = num_traits::pow(d.clone() - 1, e as usize);
    let den = num_traits::pow(d, e as usize);
    int(1) - BigRational::new(num, den)
}

pub(crate) fn fmt_ratio(r: &BigRational) -> String {
    if r.is_integer() {
        r.to_integer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub(crate) fn at_least(label: &'static str, lhs: BigRational, rhs: BigRational) -> BoundCheck {
    BoundCheck {
        label,
        observed: fmt_ratio(&lhs),
        required: format!(">= {}", fmt_ratio(&rhs)),
        holds: lhs >= rhs,
    }
}

pub(crate) fn at_least_int(label: &'static str, lhs: u64, rhs: u64) -> BoundCheck {
    BoundCheck {
        label,
        observed: lhs.to_string(),
        required: format!(">= {rhs}"),
        holds: lhs >= rhs,
    }
}

pub(crate) fn equals_int(label: &'static str, lhs: u64, rhs: u64) -> BoundCheck {
    BoundCheck {
        label,
        observed: lhs.to_string(),
        required: format!("== {rhs}"),
        holds: lhs == rhs,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn greedy_factor_values() {
        assert_eq!(greedy_factor(2, 1), ratio(1, 2));
        assert_eq!(greedy_factor(3, 2), ratio(5, 9));
        assert_eq!(greedy_factor(4, 0), int(0));
        assert_eq!(greedy_factor(1, 1), int(1));
    }
}
