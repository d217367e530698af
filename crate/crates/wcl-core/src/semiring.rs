//! Commutative semirings and their values.
//!
//! A [`Value`] carries its semiring as the enum tag, so mixing instances is
//! detected at run time. Real carriers use `f64`; the infinities of the
//! tropical instances are the IEEE infinities, which makes absorption exact.

use alloc::format;
use alloc::string::{String, ToString};
use core::fmt;
use core::str::FromStr;

use crate::error::{Error, Result};

/// Tolerance used for real carriers throughout the test suites.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SemiringId {
    /// (ℕ, +, ·, 0, 1), saturating at `u64::MAX`.
    Natural,
    /// ({0,1}, ∨, ∧, 0, 1).
    Boolean,
    /// (ℝ₊ ∪ {∞}, min, +, ∞, 0).
    MinPlus,
    /// (ℝ₊ ∪ {−∞}, max, +, −∞, 0).
    MaxPlus,
    /// ([0,1], max, ·, 0, 1).
    Viterbi,
    /// ([0,1], max, min, 0, 1).
    Fuzzy,
}

impl SemiringId {
    pub const ALL: [SemiringId; 6] = [
        SemiringId::Natural,
        SemiringId::Boolean,
        SemiringId::MinPlus,
        SemiringId::MaxPlus,
        SemiringId::Viterbi,
        SemiringId::Fuzzy,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SemiringId::Natural => "nat",
            SemiringId::Boolean => "bool",
            SemiringId::MinPlus => "minplus",
            SemiringId::MaxPlus => "maxplus",
            SemiringId::Viterbi => "viterbi",
            SemiringId::Fuzzy => "fuzzy",
        }
    }

    pub fn zero(self) -> Value {
        match self {
            SemiringId::Natural => Value::Nat(0),
            SemiringId::Boolean => Value::Bool(false),
            SemiringId::MinPlus => Value::MinPlus(f64::INFINITY),
            SemiringId::MaxPlus => Value::MaxPlus(f64::NEG_INFINITY),
            SemiringId::Viterbi => Value::Viterbi(0.0),
            SemiringId::Fuzzy => Value::Fuzzy(0.0),
        }
    }

    pub fn one(self) -> Value {
        match self {
            SemiringId::Natural => Value::Nat(1),
            SemiringId::Boolean => Value::Bool(true),
            SemiringId::MinPlus => Value::MinPlus(0.0),
            SemiringId::MaxPlus => Value::MaxPlus(0.0),
            SemiringId::Viterbi => Value::Viterbi(1.0),
            SemiringId::Fuzzy => Value::Fuzzy(1.0),
        }
    }

    pub fn is_idempotent(self) -> bool {
        !matches!(self, SemiringId::Natural)
    }

    /// 0 or 1 of this semiring.
    pub fn indicator(self, b: bool) -> Value {
        if b {
            self.one()
        } else {
            self.zero()
        }
    }

    /// Builds a value from a real number, checking the carrier.
    pub fn value(self, x: f64) -> Result<Value> {
        let bad = || Error::OutOfCarrier {
            semiring: self,
            value: format!("{x}"),
        };
        if x.is_nan() {
            return Err(bad());
        }
        match self {
            SemiringId::Natural => {
                if (0.0..1.8e19).contains(&x) && x == (x as u64) as f64 {
                    Ok(Value::Nat(x as u64))
                } else {
                    Err(bad())
                }
            }
            SemiringId::Boolean => {
                if x == 0.0 {
                    Ok(Value::Bool(false))
                } else if x == 1.0 {
                    Ok(Value::Bool(true))
                } else {
                    Err(bad())
                }
            }
            SemiringId::MinPlus => {
                if x >= 0.0 {
                    Ok(Value::MinPlus(x))
                } else {
                    Err(bad())
                }
            }
            SemiringId::MaxPlus => {
                if (x >= 0.0 && x.is_finite()) || x == f64::NEG_INFINITY {
                    Ok(Value::MaxPlus(x))
                } else {
                    Err(bad())
                }
            }
            SemiringId::Viterbi | SemiringId::Fuzzy => {
                if (0.0..=1.0).contains(&x) {
                    Ok(if self == SemiringId::Viterbi {
                        Value::Viterbi(x)
                    } else {
                        Value::Fuzzy(x)
                    })
                } else {
                    Err(bad())
                }
            }
        }
    }

    /// Parses a weight literal: integers for ℕ, `0`/`1`/`true`/`false` for
    /// the Boolean semiring, nonnegative reals elsewhere, plus `inf` for
    /// min-plus and `-inf` for max-plus.
    pub fn parse_weight(self, literal: &str) -> Result<Value> {
        let text = literal.trim();
        let bad = || Error::BadLiteral {
            semiring: self,
            literal: literal.to_string(),
        };
        match self {
            SemiringId::Natural => text.parse::<u64>().map(Value::Nat).map_err(|_| bad()),
            SemiringId::Boolean => match text {
                "0" | "false" => Ok(Value::Bool(false)),
                "1" | "true" => Ok(Value::Bool(true)),
                _ => Err(bad()),
            },
            _ => {
                let x = match text {
                    "inf" => f64::INFINITY,
                    "-inf" => f64::NEG_INFINITY,
                    _ => {
                        if !text
                            .chars()
                            .all(|c| c.is_ascii_digit() || matches!(c, '.' | 'e' | 'E' | '-' | '+'))
                        {
                            return Err(bad());
                        }
                        text.parse::<f64>().map_err(|_| bad())?
                    }
                };
                self.value(x)
            }
        }
    }
}

impl fmt::Display for SemiringId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SemiringId {
    type Err = String;

    fn from_str(s: &str) -> core::result::Result<Self, Self::Err> {
        match s {
            "nat" | "natural" => Ok(SemiringId::Natural),
            "bool" | "boolean" => Ok(SemiringId::Boolean),
            "minplus" => Ok(SemiringId::MinPlus),
            "maxplus" => Ok(SemiringId::MaxPlus),
            "viterbi" => Ok(SemiringId::Viterbi),
            "fuzzy" => Ok(SemiringId::Fuzzy),
            _ => Err(format!(
                "unknown semiring `{s}` (expected nat, bool, minplus, maxplus, viterbi or fuzzy)"
            )),
        }
    }
}

/// An element of one of the six semirings.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Value {
    Nat(u64),
    Bool(bool),
    MinPlus(f64),
    MaxPlus(f64),
    Viterbi(f64),
    Fuzzy(f64),
}

impl Value {
    pub fn semiring(&self) -> SemiringId {
        match self {
            Value::Nat(_) => SemiringId::Natural,
            Value::Bool(_) => SemiringId::Boolean,
            Value::MinPlus(_) => SemiringId::MinPlus,
            Value::MaxPlus(_) => SemiringId::MaxPlus,
            Value::Viterbi(_) => SemiringId::Viterbi,
            Value::Fuzzy(_) => SemiringId::Fuzzy,
        }
    }

    /// The payload as a real number (Booleans map to 0/1).
    pub fn as_f64(&self) -> f64 {
        match *self {
            Value::Nat(n) => n as f64,
            Value::Bool(b) => {
                if b {
                    1.0
                } else {
                    0.0
                }
            }
            Value::MinPlus(x) | Value::MaxPlus(x) | Value::Viterbi(x) | Value::Fuzzy(x) => x,
        }
    }

    pub fn is_zero(&self) -> bool {
        *self == self.semiring().zero()
    }

    pub fn is_one(&self) -> bool {
        *self == self.semiring().one()
    }

    /// Checked ⊕.
    pub fn plus(self, other: Value) -> Result<Value> {
        same(self, other)?;
        Ok(self.add(other))
    }

    /// Checked ⊗.
    pub fn times(self, other: Value) -> Result<Value> {
        same(self, other)?;
        Ok(self.mul(other))
    }

    /// ⊕ on operands already known to share a semiring.
    ///
    /// # Panics
    /// On mixed operands. Evaluators validate formulas up front so this is
    /// unreachable from the public entry points.
    pub fn add(self, other: Value) -> Value {
        match (self, other) {
            (Value::Nat(a), Value::Nat(b)) => Value::Nat(a.saturating_add(b)),
            (Value::Bool(a), Value::Bool(b)) => Value::Bool(a || b),
            (Value::MinPlus(a), Value::MinPlus(b)) => Value::MinPlus(a.min(b)),
            (Value::MaxPlus(a), Value::MaxPlus(b)) => Value::MaxPlus(a.max(b)),
            (Value::Viterbi(a), Value::Viterbi(b)) => Value::Viterbi(a.max(b)),
            (Value::Fuzzy(a), Value::Fuzzy(b)) => Value::Fuzzy(a.max(b)),
            (a, b) => panic!("mixed semirings: {} and {}", a.semiring(), b.semiring()),
        }
    }

    /// ⊗ on operands already known to share a semiring. Panics like [`Value::add`].
    pub fn mul(self, other: Value) -> Value {
        match (self, other) {
            (Value::Nat(a), Value::Nat(b)) => Value::Nat(a.saturating_mul(b)),
            (Value::Bool(a), Value::Bool(b)) => Value::Bool(a && b),
            (Value::MinPlus(a), Value::MinPlus(b)) => Value::MinPlus(a + b),
            (Value::MaxPlus(a), Value::MaxPlus(b)) => Value::MaxPlus(a + b),
            (Value::Viterbi(a), Value::Viterbi(b)) => Value::Viterbi(a * b),
            (Value::Fuzzy(a), Value::Fuzzy(b)) => Value::Fuzzy(a.min(b)),
            (a, b) => panic!("mixed semirings: {} and {}", a.semiring(), b.semiring()),
        }
    }

    /// k ⊕ k ⊕ … ⊕ k with `count` summands (zero when `count` is 0).
    pub fn repeat(self, count: u64) -> Value {
        let sr = self.semiring();
        if count == 0 {
            return sr.zero();
        }
        if sr.is_idempotent() {
            return self;
        }
        let mut acc = sr.zero();
        let mut base = self;
        let mut n = count;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.add(base);
            }
            base = base.add(base);
            n >>= 1;
        }
        acc
    }

    /// Equality for testing: exact on ℕ and 𝔹, `tol`-close on real
    /// carriers, infinities equal only to themselves. Mixed operands are unequal.
    pub fn approx_eq(&self, other: &Value, tol: f64) -> bool {
        if self.semiring() != other.semiring() {
            return false;
        }
        match (*self, *other) {
            (Value::Nat(a), Value::Nat(b)) => a == b,
            (Value::Bool(a), Value::Bool(b)) => a == b,
            _ => {
                let (a, b) = (self.as_f64(), other.as_f64());
                if a.is_infinite() || b.is_infinite() {
                    a == b
                } else {
                    (a - b).abs() <= tol
                }
            }
        }
    }
}

fn same(a: Value, b: Value) -> Result<()> {
    if a.semiring() == b.semiring() {
        Ok(())
    } else {
        Err(Error::MixedSemiring {
            left: a.semiring(),
            right: b.semiring(),
        })
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Value::Nat(n) => write!(f, "{n}"),
            Value::Bool(b) => f.write_str(if b { "1" } else { "0" }),
            Value::MinPlus(x) | Value::MaxPlus(x) | Value::Viterbi(x) | Value::Fuzzy(x) => {
                if x == f64::INFINITY {
                    f.write_str("inf")
                } else if x == f64::NEG_INFINITY {
                    f.write_str("-inf")
                } else {
                    let s = format!("{x:.9}");
                    let s = s.trim_end_matches('0').trim_end_matches('.');
                    f.write_str(if s == "-0" { "0" } else { s })
                }
            }
        }
    }
}

/// Checked ⊕.
pub fn sr_plus(k1: Value, k2: Value) -> Result<Value> {
    k1.plus(k2)
}

/// Checked ⊗.
pub fn sr_times(k1: Value, k2: Value) -> Result<Value> {
    k1.times(k2)
}

/// Left fold of ⊕ from 0.
pub fn sr_fold_sum<I: IntoIterator<Item = Value>>(sr: SemiringId, values: I) -> Result<Value> {
    values.into_iter().try_fold(sr.zero(), sr_plus)
}

/// Left fold of ⊗ from 1.
pub fn sr_fold_prod<I: IntoIterator<Item = Value>>(sr: SemiringId, values: I) -> Result<Value> {
    values.into_iter().try_fold(sr.one(), sr_times)
}

pub fn sr_eq(k1: Value, k2: Value, tol: f64) -> bool {
    k1.approx_eq(&k2, tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use alloc::vec::Vec;
    use SemiringId::*;

    fn v(sr: SemiringId, x: f64) -> Value {
        sr.value(x).unwrap()
    }

    #[test]
    fn plus_examples() {
        assert_eq!(sr_plus(Value::Nat(5), Value::Nat(3)).unwrap(), Value::Nat(8));
        assert_eq!(sr_plus(v(MinPlus, 2.0), v(MinPlus, 3.0)).unwrap(), v(MinPlus, 2.0));
        for sr in SemiringId::ALL {
            let k = sr.one();
            assert_eq!(sr_plus(k, sr.zero()).unwrap(), k);
        }
    }

    #[test]
    fn times_examples() {
        assert_eq!(sr_times(v(MinPlus, 2.0), v(MinPlus, 3.0)).unwrap(), v(MinPlus, 5.0));
        let p = sr_times(v(Viterbi, 0.5), v(Viterbi, 0.4)).unwrap();
        assert!(p.approx_eq(&v(Viterbi, 0.2), 1e-12));
        for sr in SemiringId::ALL {
            assert_eq!(sr_times(sr.one(), sr.zero()).unwrap(), sr.zero());
            assert_eq!(sr_times(sr.zero(), sr.one()).unwrap(), sr.zero());
        }
    }

    #[test]
    fn mixed_operands_are_rejected() {
        let err = sr_plus(Value::Nat(1), Value::Bool(true)).unwrap_err();
        assert!(matches!(err, Error::MixedSemiring { .. }));
        assert!(sr_times(v(MinPlus, 1.0), v(MaxPlus, 1.0)).is_err());
    }

    #[test]
    fn folds() {
        let three = sr_fold_sum(Natural, vec![Value::Nat(1); 3]).unwrap();
        assert_eq!(three, Value::Nat(3));
        assert_eq!(sr_fold_sum(MinPlus, Vec::new()).unwrap(), Value::MinPlus(f64::INFINITY));
        assert_eq!(sr_fold_prod(MaxPlus, Vec::new()).unwrap(), Value::MaxPlus(0.0));
    }

    #[test]
    fn equality_with_tolerance() {
        assert!(sr_eq(Value::Nat(108), Value::Nat(108), 0.0));
        assert!(sr_eq(v(MinPlus, 2.0), v(MinPlus, 2.0 + 1e-12), 1e-9));
        assert!(!sr_eq(v(MinPlus, f64::INFINITY), v(MinPlus, 5.0), 1e-9));
        assert!(sr_eq(MinPlus.zero(), MinPlus.zero(), 1e-9));
        assert!(!sr_eq(Value::Nat(1), Value::Bool(true), 1.0));
    }

    #[test]
    fn idempotency_flags() {
        for sr in SemiringId::ALL {
            let k = sr.one();
            assert_eq!(k.add(k) == k, sr.is_idempotent(), "{sr}");
        }
    }

    #[test]
    fn repeat_matches_iterated_addition() {
        for sr in SemiringId::ALL {
            let k = match sr {
                Natural => Value::Nat(3),
                _ => sr.one(),
            };
            let mut acc = sr.zero();
            for n in 0..20u64 {
                assert_eq!(k.repeat(n), acc, "{sr} {n}");
                acc = acc.add(k);
            }
        }
    }

    #[test]
    fn carrier_checks() {
        assert!(Viterbi.value(1.5).is_err());
        assert!(Fuzzy.value(-0.1).is_err());
        assert!(MinPlus.value(-1.0).is_err());
        assert!(MaxPlus.value(f64::INFINITY).is_err());
        assert!(MaxPlus.value(f64::NEG_INFINITY).is_ok());
        assert!(Natural.value(2.5).is_err());
        assert!(Boolean.value(2.0).is_err());
    }

    #[test]
    fn literals() {
        assert_eq!(Natural.parse_weight("42").unwrap(), Value::Nat(42));
        assert!(Natural.parse_weight("4.2").is_err());
        assert_eq!(MinPlus.parse_weight("inf").unwrap(), MinPlus.zero());
        assert!(MinPlus.parse_weight("-inf").is_err());
        assert_eq!(MaxPlus.parse_weight("-inf").unwrap(), MaxPlus.zero());
        assert!(Viterbi.parse_weight("1.01").is_err());
        assert_eq!(Viterbi.parse_weight("0.25").unwrap(), Value::Viterbi(0.25));
        assert!(Fuzzy.parse_weight("nan").is_err());
        assert!(Fuzzy.parse_weight("infinity").is_err());
        assert_eq!(Boolean.parse_weight("true").unwrap(), Value::Bool(true));
    }

    #[test]
    fn printing() {
        assert_eq!(Value::Nat(108).to_string(), "108");
        assert_eq!(MinPlus.zero().to_string(), "inf");
        assert_eq!(MaxPlus.zero().to_string(), "-inf");
        assert_eq!(Value::MinPlus(5.0).to_string(), "5");
        assert_eq!(Value::Viterbi(0.2).to_string(), "0.2");
        assert_eq!(Value::Viterbi(1.0 / 3.0).to_string(), "0.333333333");
        assert_eq!(Value::Bool(true).to_string(), "1");
    }

    #[test]
    fn printed_values_parse_back() {
        for sr in SemiringId::ALL {
            for k in [sr.zero(), sr.one()] {
                assert_eq!(sr.parse_weight(&k.to_string()).unwrap(), k);
            }
        }
    }
}
