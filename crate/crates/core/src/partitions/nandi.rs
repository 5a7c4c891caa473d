//! Nandi's conditions (N1)-(N6) and the three classes, both on parts and on
//! multiplicity vectors.

use super::{MultiplicityVector, Partition};

/// One of the three mod-14 classes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NandiClass {
    N1,
    N2,
    N3,
}

impl NandiClass {
    pub const ALL: [NandiClass; 3] = [NandiClass::N1, NandiClass::N2, NandiClass::N3];

    pub fn from_index(a: u32) -> Option<Self> {
        match a {
            1 => Some(NandiClass::N1),
            2 => Some(NandiClass::N2),
            3 => Some(NandiClass::N3),
            _ => None,
        }
    }

    pub fn index(self) -> u32 {
        match self {
            NandiClass::N1 => 1,
            NandiClass::N2 => 2,
            NandiClass::N3 => 3,
        }
    }
}

/// Does the difference sequence of `parts` contain `3, 2, ..., 2, 3, 0`?
fn matches_n6(parts: &[u32]) -> bool {
    let d: Vec<u32> = parts.windows(2).map(|w| w[0] - w[1]).collect();
    for i in 0..d.len() {
        if d[i] != 3 {
            continue;
        }
        let mut j = i + 1;
        while j < d.len() && d[j] == 2 {
            j += 1;
        }
        if j + 1 < d.len() && d[j] == 3 && d[j + 1] == 0 {
            return true;
        }
    }
    false
}

/// (N1)-(N6) on a weakly decreasing slice.
pub fn satisfies_nandi_parts(parts: &[u32]) -> bool {
    for w in parts.windows(2) {
        if w[0] - w[1] == 1 {
            return false;
        }
    }
    for w in parts.windows(3) {
        let (a, b, c) = (w[0], w[1], w[2]);
        let gap = a - c;
        if gap < 3 {
            return false;
        }
        let odd = a % 2 == 1;
        if gap == 3 && (a == b || (odd && b == c)) {
            return false;
        }
        if gap == 4 && odd && (a == b || b == c) {
            return false;
        }
    }
    !matches_n6(parts)
}

pub fn satisfies_nandi(p: &Partition) -> bool {
    satisfies_nandi_parts(p.parts())
}

/// Does the slice contain a window `(2k+3, 2k, 2k-2, ..., 4, 2)` with `k >= 1`?
fn matches_staircase(parts: &[u32]) -> bool {
    for (end, &v) in parts.iter().enumerate() {
        if v != 2 {
            continue;
        }
        // walk back through 2, 4, ..., 2k and look for 2k+3 before it
        let mut k = 1usize;
        while k <= end {
            let prev = parts[end - k];
            if prev as usize == 2 * k + 3 {
                return true;
            }
            if prev as usize != 2 * k + 2 {
                break;
            }
            k += 1;
        }
    }
    false
}

fn count(parts: &[u32], v: u32) -> usize {
    parts.iter().filter(|&&p| p == v).count()
}

/// Class membership on a weakly decreasing slice.
pub fn in_class_parts(parts: &[u32], class: NandiClass) -> bool {
    let side = match class {
        NandiClass::N1 => count(parts, 1) == 0,
        NandiClass::N2 => (1..=3).all(|i| count(parts, i) <= 1),
        NandiClass::N3 => {
            count(parts, 1) == 0
                && count(parts, 3) == 0
                && count(parts, 2) <= 1
                && !matches_staircase(parts)
        }
    };
    side && satisfies_nandi_parts(parts)
}

pub fn in_class(p: &Partition, class: NandiClass) -> bool {
    in_class_parts(p.parts(), class)
}

/// The multiplicity-vector form of (N1)-(N6): no forbidden window occurs.
pub fn satisfies_nandi_mult(f: &MultiplicityVector) -> bool {
    let n = f.support_len();
    let g = |i: usize| f.get(i);
    for j in 1..=n {
        if g(j) >= 1 && g(j + 1) >= 1 {
            return false;
        }
        if g(j) + g(j + 1) + g(j + 2) >= 3 {
            return false;
        }
        let gap2 = g(j + 1) == 0 && g(j + 2) == 0;
        if g(j) >= 1 && gap2 && g(j + 3) >= 2 {
            return false;
        }
        if j % 2 == 0 && g(j) >= 2 && gap2 && g(j + 3) >= 1 {
            return false;
        }
        let gap3 = gap2 && g(j + 3) == 0;
        if j % 2 == 1 && gap3 {
            if g(j) >= 2 && g(j + 4) >= 1 {
                return false;
            }
            if g(j) >= 1 && g(j + 4) >= 2 {
                return false;
            }
        }
        if g(j) >= 2 && gap2 && g(j + 3) == 1 && matches_n6_tail(&g, j + 3) {
            return false;
        }
    }
    true
}

/// From a position `p` with `f_p = 1`, does `(0,1)^k, 0, 0, >=1` follow?
fn matches_n6_tail(g: &impl Fn(usize) -> u32, mut p: usize) -> bool {
    loop {
        if g(p + 1) == 0 && g(p + 2) == 0 && g(p + 3) >= 1 {
            return true;
        }
        if g(p + 1) == 0 && g(p + 2) == 1 {
            p += 2;
        } else {
            return false;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::for_each_partition;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn nandi_examples() {
        assert!(satisfies_nandi(&Partition::empty()));
        assert!(!satisfies_nandi(&p(&[8, 5, 2, 2])));
        assert!(satisfies_nandi(&p(&[5, 2])));
        // differences (3, 2, 3, 0)
        assert!(!satisfies_nandi_parts(&[12, 9, 7, 4, 4]));
        assert!(!satisfies_nandi_parts(&[4, 3]));
        assert!(!satisfies_nandi_parts(&[2, 2, 2]));
    }

    #[test]
    fn n6_scan_allows_other_tails() {
        // differences (3, 2, 3, 2): no zero at the end
        assert!(satisfies_nandi_parts(&[14, 11, 9, 6, 4]));
    }

    #[test]
    fn class_examples() {
        let e = Partition::empty();
        for c in NandiClass::ALL {
            assert!(in_class(&e, c));
        }
        let two_two = p(&[2, 2]);
        assert!(in_class(&two_two, NandiClass::N1));
        assert!(!in_class(&two_two, NandiClass::N2));
        assert!(!in_class(&two_two, NandiClass::N3));
        assert!(!in_class(&p(&[5, 2]), NandiClass::N3));
        assert!(!in_class(&p(&[7, 4, 2]), NandiClass::N3));
        assert!(in_class(&p(&[6, 2]), NandiClass::N3));
    }

    #[test]
    fn mult_pattern_examples() {
        assert!(satisfies_nandi_mult(&MultiplicityVector::default()));
        assert!(!satisfies_nandi_mult(&MultiplicityVector::new(vec![0, 1, 1, 1])));
    }

    #[test]
    fn part_and_multiplicity_forms_agree() {
        for n in 0..=30 {
            for_each_partition(n, |parts| {
                let q = Partition::new(parts.to_vec()).unwrap();
                assert_eq!(
                    satisfies_nandi(&q),
                    satisfies_nandi_mult(&q.to_multiplicities()),
                    "{q}"
                );
            });
        }
    }
}
