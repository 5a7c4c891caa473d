//! Integer partitions, their multiplicity encoding, and the operations used
//! to cut partitions into blocks.

mod enumerate;
mod nandi;

use std::fmt;

use crate::qalgebra::BiPoly;

pub use enumerate::{count_class_series, count_classes_series, for_each_partition, partitions_of};
pub use nandi::{
    in_class, in_class_parts, satisfies_nandi, satisfies_nandi_mult, satisfies_nandi_parts,
    NandiClass,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PartitionError {
    #[error("parts must be positive")]
    NonPositivePart,
    #[error("parts must be weakly decreasing")]
    NotDecreasing,
}

/// A weakly decreasing sequence of positive integers.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn empty() -> Self {
        Partition::default()
    }

    pub fn new(parts: Vec<u32>) -> Result<Self, PartitionError> {
        if parts.contains(&0) {
            return Err(PartitionError::NonPositivePart);
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(PartitionError::NotDecreasing);
        }
        Ok(Partition { parts })
    }

    /// Sorts the given positive parts into decreasing order.
    pub fn from_unsorted(mut parts: Vec<u32>) -> Result<Self, PartitionError> {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition::new(parts)
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn weight(&self) -> u64 {
        self.parts.iter().map(|&p| p as u64).sum()
    }

    /// `x^len q^weight`
    pub fn wt(&self) -> BiPoly {
        BiPoly::monomial(1, self.len() as u32, self.weight() as u32)
    }

    pub fn multiplicity(&self, i: u32) -> usize {
        self.parts.iter().filter(|&&p| p == i).count()
    }

    pub fn to_multiplicities(&self) -> MultiplicityVector {
        let mut mults = vec![0u32; self.parts.first().copied().unwrap_or(0) as usize];
        for &p in &self.parts {
            mults[p as usize - 1] += 1;
        }
        MultiplicityVector { mults }
    }

    /// Adds `k` to every part.
    pub fn phi_plus(&self, k: u32) -> Partition {
        Partition {
            parts: self.parts.iter().map(|&p| p + k).collect(),
        }
    }

    /// Subtracts `k` from every part, dropping parts `<= k`.
    pub fn phi_minus(&self, k: u32) -> Partition {
        Partition {
            parts: self
                .parts
                .iter()
                .filter(|&&p| p > k)
                .map(|&p| p - k)
                .collect(),
        }
    }

    /// Multiset union of parts.
    pub fn oplus(&self, other: &Partition) -> Partition {
        let mut parts = Vec::with_capacity(self.len() + other.len());
        let (mut i, mut j) = (0, 0);
        while i < self.len() && j < other.len() {
            if self.parts[i] >= other.parts[j] {
                parts.push(self.parts[i]);
                i += 1;
            } else {
                parts.push(other.parts[j]);
                j += 1;
            }
        }
        parts.extend_from_slice(&self.parts[i..]);
        parts.extend_from_slice(&other.parts[j..]);
        Partition { parts }
    }

    /// Parts `<= m`.
    pub fn truncate_le(&self, m: u32) -> Partition {
        Partition {
            parts: self.parts.iter().copied().filter(|&p| p <= m).collect(),
        }
    }

    /// Parts `> m`.
    pub fn truncate_gt(&self, m: u32) -> Partition {
        Partition {
            parts: self.parts.iter().copied().filter(|&p| p > m).collect(),
        }
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(u32::to_string).collect();
        write!(f, "({})", s.join(","))
    }
}

/// `(f_1, f_2, ...)` where `f_i` counts the parts equal to `i`. Trailing
/// zeros are not stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct MultiplicityVector {
    mults: Vec<u32>,
}

impl MultiplicityVector {
    /// `f[0]` is `f_1`.
    pub fn new(mut f: Vec<u32>) -> Self {
        while f.last() == Some(&0) {
            f.pop();
        }
        MultiplicityVector { mults: f }
    }

    /// `f_i` for `i >= 1`; zero outside the support.
    pub fn get(&self, i: usize) -> u32 {
        assert!(i >= 1, "multiplicities are indexed from 1");
        self.mults.get(i - 1).copied().unwrap_or(0)
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.mults
    }

    /// Largest index with a nonzero entry, 0 for the zero vector.
    pub fn support_len(&self) -> usize {
        self.mults.len()
    }

    pub fn to_partition(&self) -> Partition {
        let mut parts = Vec::new();
        for (i, &f) in self.mults.iter().enumerate().rev() {
            parts.extend(std::iter::repeat_n(i as u32 + 1, f as usize));
        }
        Partition { parts }
    }

    /// Pointwise sum, the multiplicity form of [`Partition::oplus`].
    pub fn oplus(&self, other: &MultiplicityVector) -> MultiplicityVector {
        let n = self.mults.len().max(other.mults.len());
        MultiplicityVector::new(
            (1..=n).map(|i| self.get(i) + other.get(i)).collect(),
        )
    }
}

pub fn to_multiplicities(p: &Partition) -> MultiplicityVector {
    p.to_multiplicities()
}

pub fn from_multiplicities(f: &MultiplicityVector) -> Partition {
    f.to_partition()
}

/// A partition witnessing a failure of one of the two modulus clauses.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ModulusViolation {
    #[error("{partition} is in the class but its parts <= m are not")]
    SmallParts { partition: Partition },
    #[error("{partition} is in the class but its image under phi_minus^m is not")]
    Shift { partition: Partition },
}

/// Checks, over all partitions of weight at most `bound`, that the class is
/// closed under keeping the parts `<= m` and under `phi_minus^m`.
pub fn check_modulus_conditions<F>(member: F, m: u32, bound: u32) -> Result<(), ModulusViolation>
where
    F: Fn(&Partition) -> bool,
{
    assert!(m >= 1, "modulus must be positive");
    for n in 0..=bound {
        let mut found = None;
        for_each_partition(n, |parts| {
            if found.is_some() {
                return;
            }
            let p = Partition {
                parts: parts.to_vec(),
            };
            if !member(&p) {
                return;
            }
            if !member(&p.truncate_le(m)) {
                found = Some(ModulusViolation::SmallParts { partition: p });
            } else if !member(&p.phi_minus(m)) {
                found = Some(ModulusViolation::Shift { partition: p });
            }
        });
        if let Some(v) = found {
            return Err(v);
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qalgebra::RationalFunction;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn multiplicity_examples() {
        assert_eq!(p(&[2, 2]).to_multiplicities().as_slice(), &[0, 2]);
        assert_eq!(p(&[]).to_multiplicities().as_slice(), &[] as &[u32]);
        assert_eq!(p(&[5, 2]).to_multiplicities().as_slice(), &[0, 1, 0, 0, 1]);
        let f = MultiplicityVector::new(vec![0, 1, 0, 0, 1, 0, 0]);
        assert_eq!(f.to_partition(), p(&[5, 2]));
        assert_eq!(f.get(9), 0);
    }

    #[test]
    fn constructor_validates() {
        assert_eq!(Partition::new(vec![1, 2]), Err(PartitionError::NotDecreasing));
        assert_eq!(Partition::new(vec![2, 0]), Err(PartitionError::NonPositivePart));
        assert_eq!(Partition::from_unsorted(vec![1, 3, 2]).unwrap(), p(&[3, 2, 1]));
    }

    #[test]
    fn phi_examples() {
        assert_eq!(p(&[2, 1]).phi_plus(2), p(&[4, 3]));
        assert_eq!(p(&[3, 1]).phi_minus(1), p(&[2]));
        let a = p(&[7, 4, 4, 1]);
        assert_eq!(a.phi_plus(3).phi_minus(3), a);
    }

    #[test]
    fn oplus_examples() {
        assert_eq!(p(&[3, 1]).oplus(&p(&[2])), p(&[3, 2, 1]));
        assert_eq!(p(&[3, 1]).oplus(&Partition::empty()), p(&[3, 1]));
        assert_eq!(p(&[2, 2]).oplus(&p(&[2])), p(&[2, 2, 2]));
        let (a, b) = (p(&[4, 2, 2]), p(&[3, 2, 1]));
        assert_eq!(
            a.oplus(&b).to_multiplicities(),
            a.to_multiplicities().oplus(&b.to_multiplicities())
        );
    }

    #[test]
    fn truncation_examples() {
        let a = p(&[5, 2, 2]);
        assert_eq!(a.truncate_le(2), p(&[2, 2]));
        assert_eq!(a.truncate_gt(2), p(&[5]));
        assert_eq!(Partition::empty().truncate_le(3), Partition::empty());
        assert_eq!(a.truncate_le(2).oplus(&a.truncate_gt(2)), a);
    }

    #[test]
    fn weight_shift_is_substitution() {
        let a = p(&[6, 3, 3, 1]);
        let lhs = RationalFunction::from_poly(a.phi_plus(1).wt());
        let rhs = RationalFunction::from_poly(a.wt()).shift_x(1);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn modulus_conditions() {
        assert_eq!(check_modulus_conditions(satisfies_nandi, 2, 25), Ok(()));
        assert_eq!(check_modulus_conditions(|_| true, 3, 12), Ok(()));
        let threes = |q: &Partition| q.parts().iter().all(|&x| x == 3);
        assert_eq!(
            check_modulus_conditions(threes, 2, 6),
            Err(ModulusViolation::Shift { partition: p(&[3]) })
        );
    }
}
