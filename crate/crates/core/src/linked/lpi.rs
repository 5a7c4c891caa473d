//! Linked partition ideals as regularly linked specs.

use crate::automata::{Alphabet, Regex};
use crate::partitions::Partition;

use super::spec::LinkedSpec;
use super::LinkedError;

/// A linked partition ideal: the finite set of its partitions with parts
/// `<= m`, and for each such partition `lambda` a span `s(lambda)` and the
/// set `L(lambda)` of partitions allowed `s(lambda)` blocks later (the blocks
/// in between being empty). Sets are given by index into `small`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lpi {
    pub m: u32,
    pub small: Vec<Partition>,
    pub linking: Vec<Vec<usize>>,
    pub span: Vec<usize>,
}

/// The `LinkedSpec` with `I = C_{<=m}`, `pi` the identity, no forbidden prefixes and
/// `X = ∪_λ {λ} (I^{s(λ)} \ {∅^{s(λ)-1}} L(λ))`.
///
/// An empty ideal is represented by `X = I`.
pub fn lpi_to_spec(lpi: &Lpi) -> Result<LinkedSpec, LinkedError> {
    let n = lpi.small.len();
    if n == 0 {
        return Err(LinkedError::InvalidSpec("an ideal needs at least one small partition".into()));
    }
    if lpi.linking.len() != n || lpi.span.len() != n {
        return Err(LinkedError::InvalidSpec("linking data must cover every small partition".into()));
    }
    if lpi.span.contains(&0) {
        return Err(LinkedError::InvalidSpec("spans must be positive".into()));
    }
    if lpi.linking.iter().flatten().any(|&j| j >= n) {
        return Err(LinkedError::InvalidSpec("linking set refers to an unknown partition".into()));
    }
    let alphabet = Alphabet::new((0..n).map(|i| i.to_string()).collect())?;
    let empty = lpi.small.iter().position(Partition::is_empty).ok_or_else(|| {
        LinkedError::InvalidSpec("the empty partition must belong to the ideal".into())
    })?;
    let mut words: Vec<Vec<usize>> = Vec::new();
    for lam in 0..n {
        let s = lpi.span[lam];
        for tail in alphabet.words_of_length(s) {
            let allowed = tail[..s - 1].iter().all(|&a| a == empty)
                && lpi.linking[lam].contains(&tail[s - 1]);
            if !allowed {
                let mut w = vec![lam];
                w.extend(tail);
                words.push(w);
            }
        }
    }
    let x = words
        .iter()
        .map(|w| Regex::word(w))
        .reduce(Regex::union)
        .unwrap_or(Regex::Empty);
    LinkedSpec::new(lpi.m, alphabet, lpi.small.clone(), x, Regex::Empty)
}
