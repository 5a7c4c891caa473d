//! Exhaustive enumeration of partitions.

use super::nandi::{in_class_parts, NandiClass};
use super::Partition;

/// Calls `visit` on every partition of `n` in lexicographically decreasing
/// order, reusing one buffer.
pub fn for_each_partition<F: FnMut(&[u32])>(n: u32, mut visit: F) {
    if n == 0 {
        visit(&[]);
        return;
    }
    let n = n as usize;
    // ZS1: x[..m] is the current partition, h indexes its last part > 1
    let mut x = vec![1u32; n];
    x[0] = n as u32;
    let mut m = 1usize;
    let mut h = 0usize;
    visit(&x[..m]);
    while x[0] != 1 {
        if x[h] == 2 {
            m += 1;
            x[h] = 1;
            h = h.wrapping_sub(1);
        } else {
            let r = x[h] - 1;
            let mut t = (m - h) as u32;
            x[h] = r;
            while t >= r {
                h += 1;
                x[h] = r;
                t -= r;
            }
            if t == 0 {
                m = h + 1;
            } else {
                m = h + 2;
                if t > 1 {
                    h += 1;
                    x[h] = t;
                }
            }
        }
        visit(&x[..m]);
    }
}

pub fn partitions_of(n: u32) -> Vec<Partition> {
    let mut out = Vec::new();
    for_each_partition(n, |p| {
        out.push(Partition::new(p.to_vec()).expect("enumerated partitions are valid"))
    });
    out
}

/// `c_n` = number of partitions of `n` in the class, for `n <= order`.
pub fn count_class_series(class: NandiClass, order: u32) -> Vec<u64> {
    (0..=order)
        .map(|n| {
            let mut c = 0u64;
            for_each_partition(n, |p| {
                if in_class_parts(p, class) {
                    c += 1;
                }
            });
            c
        })
        .collect()
}

/// All three class counts from one enumeration pass.
pub fn count_classes_series(order: u32) -> [Vec<u64>; 3] {
    let mut out = [
        vec![0u64; order as usize + 1],
        vec![0u64; order as usize + 1],
        vec![0u64; order as usize + 1],
    ];
    for n in 0..=order {
        for_each_partition(n, |p| {
            for (k, class) in NandiClass::ALL.into_iter().enumerate() {
                if in_class_parts(p, class) {
                    out[k][n as usize] += 1;
                }
            }
        });
    }
    out
}
