//! Fern side-length sequences.
//!
//! A *fern* is a finite list of nonnegative side lengths `(t₁, …, t_k)`
//! (1-indexed throughout the documentation). Ferns parameterise every region
//! family and every product formula: the formulas consume the total, the sums
//! of even- and odd-indexed terms, and the partial sums `s_k = t₁ + … + t_k`.
//!
//! Trailing zeros are *not* normalised away automatically: formula argument
//! splicing is sensitive to the parity of the length, so the raw sequence is
//! preserved and any zero-elimination is an explicit reduction step.

use std::fmt;

/// A finite sequence of nonnegative side lengths.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Fern(pub Vec<i64>);

/// Aggregate sums of a fern, as consumed by the product formulas.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FernSums {
    /// Sum of all entries.
    pub total: i64,
    /// Sum of entries at even 1-based positions (t₂ + t₄ + …).
    pub even: i64,
    /// Sum of entries at odd 1-based positions (t₁ + t₃ + …).
    pub odd: i64,
    /// Number of strictly positive entries.
    pub positive: i64,
}

impl Fern {
    /// Build a fern, rejecting negative entries.
    pub fn new(entries: Vec<i64>) -> crate::error::Result<Self> {
        if let Some(&bad) = entries.iter().find(|&&e| e < 0) {
            return Err(crate::Error::Parameter(format!(
                "fern entry {bad} is negative"
            )));
        }
        Ok(Fern(entries))
    }

    /// The empty fern.
    pub fn empty() -> Self {
        Fern(Vec::new())
    }

    /// Number of entries (the paper's `m`/`n`).
    pub fn len(&self) -> i64 {
        self.0.len() as i64
    }

    /// True when the fern has no entries.
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `t_i` with 1-based index; entries beyond the length count as 0.
    pub fn get(&self, i: i64) -> i64 {
        if i >= 1 && (i as usize) <= self.0.len() {
            self.0[i as usize - 1]
        } else {
            0
        }
    }

    /// Total, even-position sum, odd-position sum and positive-entry count.
    pub fn sums(&self) -> FernSums {
        let mut s = FernSums {
            total: 0,
            even: 0,
            odd: 0,
            positive: 0,
        };
        for (idx0, &t) in self.0.iter().enumerate() {
            s.total += t;
            if (idx0 + 1) % 2 == 0 {
                s.even += t;
            } else {
                s.odd += t;
            }
            if t > 0 {
                s.positive += 1;
            }
        }
        s
    }

    /// Partial sum `s_k = t₁ + … + t_k`; indices beyond the length add 0.
    pub fn partial_sum(&self, k: i64) -> i64 {
        (1..=k).map(|i| self.get(i)).sum()
    }

    /// The `+1` operation: add 1 to the last term when the length is even,
    /// append a new term 1 when the length is odd. The empty fern counts as
    /// even length, so `() → (1)`.
    pub fn plus_one(&self) -> Fern {
        let mut v = self.0.clone();
        if v.len() % 2 == 0 {
            match v.last_mut() {
                Some(last) => *last += 1,
                None => v.push(1),
            }
        } else {
            v.push(1);
        }
        Fern(v)
    }

    /// Parse from a comma-separated decimal list; empty string = empty fern.
    pub fn parse(s: &str) -> crate::error::Result<Self> {
        let s = s.trim();
        let s = s.strip_prefix('(').unwrap_or(s);
        let s = s.strip_suffix(')').unwrap_or(s);
        if s.trim().is_empty() {
            return Ok(Fern::empty());
        }
        let mut v = Vec::new();
        for part in s.split(',') {
            let n: i64 = part
                .trim()
                .parse()
                .map_err(|_| crate::Error::Usage(format!("bad fern entry {part:?}")))?;
            v.push(n);
        }
        Fern::new(v)
    }
}

impl fmt::Display for Fern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, t) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{t}")?;
        }
        write!(f, ")")
    }
}

/// Convenience constructor from a slice of machine integers.
pub fn fern(entries: &[i64]) -> Fern {
    Fern::new(entries.to_vec()).expect("nonnegative fern entries")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sums_cases() {
        assert_eq!(
            Fern::empty().sums(),
            FernSums {
                total: 0,
                even: 0,
                odd: 0,
                positive: 0
            }
        );
        assert_eq!(
            fern(&[2, 3, 1]).sums(),
            FernSums {
                total: 6,
                even: 3,
                odd: 3,
                positive: 3
            }
        );
        assert_eq!(
            fern(&[0, 4]).sums(),
            FernSums {
                total: 4,
                even: 4,
                odd: 0,
                positive: 1
            }
        );
    }

    #[test]
    fn partial_sums() {
        let f = fern(&[2, 3, 1]);
        assert_eq!(f.partial_sum(0), 0);
        assert_eq!(f.partial_sum(2), 5);
        // trailing zeros convention: s_5 = s_3
        assert_eq!(f.partial_sum(5), 6);
        assert_eq!(f.partial_sum(f.len()), f.sums().total);
    }

    #[test]
    fn plus_one_cases() {
        assert_eq!(fern(&[2, 3]).plus_one(), fern(&[2, 4]));
        assert_eq!(fern(&[2, 3, 1]).plus_one(), fern(&[2, 3, 1, 1]));
        assert_eq!(Fern::empty().plus_one(), fern(&[1]));
    }

    #[test]
    fn plus_one_increases_total_by_one() {
        for f in [Fern::empty(), fern(&[1]), fern(&[2, 0]), fern(&[1, 2, 3])] {
            assert_eq!(f.plus_one().sums().total, f.sums().total + 1);
        }
    }

    #[test]
    fn parse_roundtrip() {
        assert_eq!(Fern::parse("").unwrap(), Fern::empty());
        assert_eq!(Fern::parse("()").unwrap(), Fern::empty());
        assert_eq!(Fern::parse("2,3,1").unwrap(), fern(&[2, 3, 1]));
        assert_eq!(Fern::parse("(2, 1)").unwrap(), fern(&[2, 1]));
        assert!(Fern::parse("2,x").is_err());
        assert!(Fern::parse("-1").is_err());
    }
}
