use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::RepError;
use crate::poly::Weight;

/// Weakly decreasing positive parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Partition(Vec<u32>);

impl Partition {
    /// Trailing zeros are dropped; the parts must be weakly decreasing.
    pub fn new(mut parts: Vec<u32>) -> Result<Self, RepError> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.windows(2).any(|w| w[0] < w[1]) || parts.contains(&0) {
            return Err(RepError::NotAPartition(parts));
        }
        Ok(Partition(parts))
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Parts padded with zeros to length three.
    pub fn padded3(&self) -> Result<[u32; 3], RepError> {
        if self.0.len() > 3 {
            return Err(RepError::TooManyParts(self.clone()));
        }
        let mut out = [0; 3];
        out[..self.0.len()].copy_from_slice(&self.0);
        Ok(out)
    }

    /// All partitions of `d` with at most `max_parts` parts, in decreasing lex order.
    pub fn all(d: u32, max_parts: usize) -> Vec<Partition> {
        fn rec(left: u32, cap: u32, slots: usize, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if left == 0 {
                out.push(Partition(cur.clone()));
                return;
            }
            if slots == 0 {
                return;
            }
            for part in (1..=cap.min(left)).rev() {
                cur.push(part);
                rec(left - part, part, slots - 1, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(d, d, max_parts, &mut Vec::new(), &mut out);
        out
    }

    /// Cycle-type multiplicities m_i, indexed from 1.
    pub fn multiplicities(&self) -> Vec<u32> {
        let mut m = vec![0; self.size() as usize + 1];
        for &p in &self.0 {
            m[p as usize] += 1;
        }
        m
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.iter().any(|&p| p > 9) {
            let s: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
            return write!(f, "({})", s.join(","));
        }
        for p in &self.0 {
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

/// Accepts compact digits (`221`) or a comma list (`2,2,1`).
impl FromStr for Partition {
    type Err = RepError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        let bad = || RepError::Parse(s.to_string());
        let parts: Vec<u32> = if s.contains(',') {
            s.split(',').map(|x| x.trim().parse().map_err(|_| bad())).collect::<Result<_, _>>()?
        } else {
            s.chars().map(|c| c.to_digit(10).ok_or_else(bad)).collect::<Result<_, _>>()?
        };
        Partition::new(parts)
    }
}

/// A triple of partitions of a common size.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct IsotypicLabel {
    pub lambda: Partition,
    pub mu: Partition,
    pub nu: Partition,
}

impl IsotypicLabel {
    pub fn new(lambda: Partition, mu: Partition, nu: Partition) -> Result<Self, RepError> {
        if lambda.size() != mu.size() || mu.size() != nu.size() {
            return Err(RepError::SizeMismatch(lambda.size(), mu.size().max(nu.size())));
        }
        Ok(IsotypicLabel { lambda, mu, nu })
    }

    /// Shorthand such as `parse("221,221,311")`.
    pub fn parse(s: &str) -> Result<Self, RepError> {
        let parts: Vec<&str> = s.split(['/', ' ', ';', ',']).filter(|x| !x.is_empty()).collect();
        if parts.len() != 3 {
            return Err(RepError::Parse(s.to_string()));
        }
        Self::new(parts[0].parse()?, parts[1].parse()?, parts[2].parse()?)
    }

    pub fn degree(&self) -> u32 {
        self.lambda.size()
    }

    pub fn partitions(&self) -> [&Partition; 3] {
        [&self.lambda, &self.mu, &self.nu]
    }

    /// The dominant weight with these three contents.
    pub fn weight(&self) -> Result<Weight, RepError> {
        Ok(Weight::new(self.lambda.padded3()?, self.mu.padded3()?, self.nu.padded3()?))
    }

    pub fn from_weight(w: &Weight) -> Result<Self, RepError> {
        Self::new(
            Partition::new(w.parts[0].to_vec())?,
            Partition::new(w.parts[1].to_vec())?,
            Partition::new(w.parts[2].to_vec())?,
        )
    }

    /// All labels of degree `d` with at most three parts in each slot.
    pub fn all(d: u32) -> Vec<IsotypicLabel> {
        let ps = Partition::all(d, 3);
        let mut out = Vec::new();
        for a in &ps {
            for b in &ps {
                for c in &ps {
                    out.push(IsotypicLabel { lambda: a.clone(), mu: b.clone(), nu: c.clone() });
                }
            }
        }
        out
    }
}

impl fmt::Display for IsotypicLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.lambda, self.mu, self.nu)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn construction() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert_eq!(Partition::new(vec![2, 1, 0]).unwrap().parts(), &[2, 1]);
        assert_eq!("221".parse::<Partition>().unwrap().parts(), &[2, 2, 1]);
        assert_eq!("3,3".parse::<Partition>().unwrap().to_string(), "33");
        assert!(Partition::new(vec![1, 1, 1, 1]).unwrap().padded3().is_err());
    }

    #[test]
    fn counts() {
        let n: Vec<usize> = (1..=9).map(|d| Partition::all(d, 99).len()).collect();
        assert_eq!(n, vec![1, 2, 3, 5, 7, 11, 15, 22, 30]);
        assert_eq!(Partition::all(6, 3).len(), 7);
    }

    #[test]
    fn labels() {
        let l = IsotypicLabel::parse("221,221,311").unwrap();
        assert_eq!(l.to_string(), "(221,221,311)");
        assert_eq!(l.weight().unwrap(), Weight::new([2, 2, 1], [2, 2, 1], [3, 1, 1]));
        assert!(IsotypicLabel::parse("21,3,1").is_err());
        assert_eq!(IsotypicLabel::all(3).len(), 27);
    }
}
