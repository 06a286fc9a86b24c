//! Finite groups as explicit multiplication tables.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("group table is not square: row {0} has wrong length")]
    NotSquare(usize),
    #[error("entry out of range at ({0},{1})")]
    OutOfRange(usize, usize),
    #[error("element 0 is not a two-sided identity (fails at {0})")]
    BadIdentity(usize),
    #[error("element {0} has no two-sided inverse")]
    NoInverse(usize),
    #[error("associativity fails at ({0},{1},{2})")]
    NotAssociative(usize, usize, usize),
    #[error("duplicate element name {0:?}")]
    DuplicateName(String),
    #[error("unknown group element {0:?}")]
    UnknownElement(String),
    #[error("group order must be positive")]
    Empty,
}

/// Index of a group element within its table. The identity is always 0.
pub type GrpElem = usize;

/// A finite group given by its full multiplication table.
///
/// Intended scale is order <= 24; validation is exhaustive.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupTable {
    names: Vec<String>,
    mul: Vec<Vec<GrpElem>>,
    inv: Vec<GrpElem>,
}

impl GroupTable {
    pub fn new(mul: Vec<Vec<GrpElem>>, names: Option<Vec<String>>) -> Result<Self, GroupError> {
        let n = mul.len();
        if n == 0 {
            return Err(GroupError::Empty);
        }
        for (i, row) in mul.iter().enumerate() {
            if row.len() != n {
                return Err(GroupError::NotSquare(i));
            }
            for (j, &e) in row.iter().enumerate() {
                if e >= n {
                    return Err(GroupError::OutOfRange(i, j));
                }
            }
        }
        for a in 0..n {
            if mul[0][a] != a || mul[a][0] != a {
                return Err(GroupError::BadIdentity(a));
            }
        }
        let mut inv = vec![usize::MAX; n];
        for a in 0..n {
            match (0..n).find(|&b| mul[a][b] == 0 && mul[b][a] == 0) {
                Some(b) => inv[a] = b,
                None => return Err(GroupError::NoInverse(a)),
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if mul[mul[a][b]][c] != mul[a][mul[b][c]] {
                        return Err(GroupError::NotAssociative(a, b, c));
                    }
                }
            }
        }
        let names = match names {
            Some(ns) => {
                if ns.len() != n {
                    return Err(GroupError::NotSquare(ns.len()));
                }
                let mut seen = std::collections::BTreeSet::new();
                for name in &ns {
                    if !seen.insert(name.clone()) {
                        return Err(GroupError::DuplicateName(name.clone()));
                    }
                }
                ns
            }
            None => (0..n).map(|i| format!("g{i}")).collect(),
        };
        Ok(GroupTable { names, mul, inv })
    }

    pub fn trivial() -> Self {
        GroupTable::new(vec![vec![0]], Some(vec!["e".into()])).unwrap()
    }

    /// Z/n with elements named 0..n-1.
    pub fn cyclic(n: usize) -> Self {
        let mul = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        let names = (0..n).map(|i| i.to_string()).collect();
        GroupTable::new(mul, Some(names)).unwrap()
    }

    /// Direct product, elements named "a.b".
    pub fn product(&self, other: &GroupTable) -> Self {
        let n = self.order();
        let m = other.order();
        let idx = |a: usize, b: usize| a * m + b;
        let mut mul = vec![vec![0; n * m]; n * m];
        let mut names = vec![String::new(); n * m];
        for a in 0..n {
            for b in 0..m {
                names[idx(a, b)] = format!("{}.{}", self.names[a], other.names[b]);
                for c in 0..n {
                    for d in 0..m {
                        mul[idx(a, b)][idx(c, d)] = idx(self.mul(a, c), other.mul(b, d));
                    }
                }
            }
        }
        GroupTable::new(mul, Some(names)).unwrap()
    }

    /// The symmetric group S3: elements e, r, r2 (3-cycles), s, sr, sr2.
    pub fn symmetric3() -> Self {
        // permutations of {0,1,2} in one-line notation
        let perms: [[usize; 3]; 6] = [
            [0, 1, 2], // e
            [1, 2, 0], // r
            [2, 0, 1], // r2
            [1, 0, 2], // s
            [0, 2, 1], // sr
            [2, 1, 0], // sr2
        ];
        let compose = |p: &[usize; 3], q: &[usize; 3]| [p[q[0]], p[q[1]], p[q[2]]];
        let find = |p: &[usize; 3]| perms.iter().position(|x| x == p).unwrap();
        let mul = (0..6)
            .map(|a| (0..6).map(|b| find(&compose(&perms[a], &perms[b]))).collect())
            .collect();
        let names = ["e", "r", "r2", "s", "sr", "sr2"].iter().map(|s| s.to_string()).collect();
        GroupTable::new(mul, Some(names)).unwrap()
    }

    pub fn order(&self) -> usize {
        self.names.len()
    }

    pub fn id(&self) -> GrpElem {
        0
    }

    pub fn mul(&self, a: GrpElem, b: GrpElem) -> GrpElem {
        self.mul[a][b]
    }

    pub fn inv(&self, a: GrpElem) -> GrpElem {
        self.inv[a]
    }

    pub fn conj(&self, g: GrpElem, a: GrpElem) -> GrpElem {
        self.mul(self.mul(g, a), self.inv(g))
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (0..n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn elements(&self) -> impl Iterator<Item = GrpElem> {
        0..self.order()
    }

    pub fn name(&self, a: GrpElem) -> &str {
        &self.names[a]
    }

    pub fn by_name(&self, name: &str) -> Result<GrpElem, GroupError> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| GroupError::UnknownElement(name.to_string()))
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn mul_table(&self) -> &[Vec<GrpElem>] {
        &self.mul
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_groups_validate() {
        for n in 1..=8 {
            let g = GroupTable::cyclic(n);
            assert_eq!(g.order(), n);
            for a in g.elements() {
                assert_eq!(g.mul(a, g.inv(a)), g.id());
            }
        }
    }

    #[test]
    fn s3_is_nonabelian_of_order_six() {
        let g = GroupTable::symmetric3();
        assert_eq!(g.order(), 6);
        assert!(!g.is_abelian());
        let r = g.by_name("r").unwrap();
        let s = g.by_name("s").unwrap();
        assert_ne!(g.mul(r, s), g.mul(s, r));
    }

    #[test]
    fn bad_tables_are_rejected() {
        // swap breaks the identity row
        let bad = GroupTable::new(vec![vec![1, 0], vec![0, 1]], None);
        assert!(matches!(bad, Err(GroupError::BadIdentity(_))));
        // non-associative magma on 3 elements
        let bad = GroupTable::new(
            vec![vec![0, 1, 2], vec![1, 0, 0], vec![2, 0, 1]],
            None,
        );
        assert!(bad.is_err());
    }
}
