//! Names for the groups this crate can construct.
//!
//! A descriptor is a small value parsed from strings like `alt:7`,
//! `psl:3,2`, or `m23`; the zoo turns one into a concrete permutation
//! group, and the number-theory side computes orders and parameters from
//! one by closed formula without building anything.

use crate::error::{Error, Result};
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GroupDescriptor {
    /// Alternating group on n points.
    Alt(u32),
    /// Symmetric group on n points.
    Sym(u32),
    /// PSL(d, q) on projective points, d prime with gcd(d, q-1) = 1.
    Psl { d: u32, q: u64 },
    /// PSL(d, q0^2) extended by the field automorphism of order 2.
    PslSigma { d: u32, q0: u64 },
    /// PSL(2, 11) in its exceptional action on 11 points.
    Psl2_11,
    /// Mathieu group on 11 points.
    M11,
    /// Mathieu group on 23 points.
    M23,
    /// Cyclic group of order n in its regular action.
    Cyclic(u32),
    /// Dihedral group of order n acting on n/2 points.
    Dihedral(u32),
    /// Z_p wr S_2 of order 2p^2 on 2p points.
    WreathZpS2(u32),
}

impl GroupDescriptor {
    /// Parses the CLI grammar: `alt:n`, `sym:n`, `psl:d,q`, `psigma:d,q0`,
    /// `psl2_11`, `m11`, `m23`, `cyclic:n`, `dihedral:n` (alias `dN`),
    /// `wreath:p`.
    pub fn parse(s: &str) -> Result<GroupDescriptor> {
        let s = s.trim();
        let bad = || Error::Descriptor(format!("cannot parse group descriptor {:?}", s));
        match s {
            "psl2_11" => return Ok(GroupDescriptor::Psl2_11),
            "m11" => return Ok(GroupDescriptor::M11),
            "m23" => return Ok(GroupDescriptor::M23),
            _ => {}
        }
        if let Some(rest) = s.strip_prefix('d') {
            if let Ok(n) = rest.parse::<u32>() {
                return Ok(GroupDescriptor::Dihedral(n));
            }
        }
        let (head, args) = s.split_once(':').ok_or_else(bad)?;
        let nums: Vec<&str> = args.split(',').collect();
        let one = |v: &[&str]| -> Result<u64> {
            if v.len() == 1 {
                v[0].parse().map_err(|_| bad())
            } else {
                Err(bad())
            }
        };
        match head {
            "alt" => Ok(GroupDescriptor::Alt(one(&nums)? as u32)),
            "sym" => Ok(GroupDescriptor::Sym(one(&nums)? as u32)),
            "cyclic" => Ok(GroupDescriptor::Cyclic(one(&nums)? as u32)),
            "dihedral" => Ok(GroupDescriptor::Dihedral(one(&nums)? as u32)),
            "wreath" => Ok(GroupDescriptor::WreathZpS2(one(&nums)? as u32)),
            "psl" | "psigma" => {
                if nums.len() != 2 {
                    return Err(bad());
                }
                let d: u32 = nums[0].parse().map_err(|_| bad())?;
                let q: u64 = nums[1].parse().map_err(|_| bad())?;
                Ok(match head {
                    "psl" => GroupDescriptor::Psl { d, q },
                    _ => GroupDescriptor::PslSigma { d, q0: q },
                })
            }
            _ => Err(bad()),
        }
    }
}

impl fmt::Display for GroupDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupDescriptor::Alt(n) => write!(f, "alt:{}", n),
            GroupDescriptor::Sym(n) => write!(f, "sym:{}", n),
            GroupDescriptor::Psl { d, q } => write!(f, "psl:{},{}", d, q),
            GroupDescriptor::PslSigma { d, q0 } => write!(f, "psigma:{},{}", d, q0),
            GroupDescriptor::Psl2_11 => write!(f, "psl2_11"),
            GroupDescriptor::M11 => write!(f, "m11"),
            GroupDescriptor::M23 => write!(f, "m23"),
            GroupDescriptor::Cyclic(n) => write!(f, "cyclic:{}", n),
            GroupDescriptor::Dihedral(n) => write!(f, "dihedral:{}", n),
            GroupDescriptor::WreathZpS2(p) => write!(f, "wreath:{}", p),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_round_trips_display() {
        for s in [
            "alt:7", "sym:5", "psl:3,2", "psigma:2,4", "psl2_11", "m11", "m23", "cyclic:6",
            "dihedral:8", "wreath:5",
        ] {
            let d = GroupDescriptor::parse(s).unwrap();
            assert_eq!(d.to_string(), s);
        }
    }

    #[test]
    fn dihedral_alias() {
        assert_eq!(
            GroupDescriptor::parse("d8").unwrap(),
            GroupDescriptor::Dihedral(8)
        );
    }

    #[test]
    fn rejects_malformed() {
        for s in ["", "alt", "alt:", "alt:x", "psl:3", "psl:3,2,1", "foo:4", "d8x"] {
            assert!(GroupDescriptor::parse(s).is_err(), "{:?} parsed", s);
        }
    }
}
