use std::collections::{BTreeSet, HashMap, VecDeque};

use super::dfa::Dfa;
use super::regex::Regex;
use super::{Alphabet, AutomataError, Symbol};

/// A nondeterministic automaton with empty-word moves. `None` labels an
/// epsilon edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EpsNfa {
    alphabet: Alphabet,
    edges: Vec<Vec<(Option<Symbol>, usize)>>,
    start: usize,
    accept: Vec<bool>,
}

impl EpsNfa {
    pub fn new(
        alphabet: Alphabet,
        edges: Vec<Vec<(Option<Symbol>, usize)>>,
        start: usize,
        accept: Vec<bool>,
    ) -> Result<Self, AutomataError> {
        let n = edges.len();
        if start >= n || accept.len() != n {
            return Err(AutomataError::Invalid("start or accept set out of range".into()));
        }
        for out in &edges {
            for &(a, t) in out {
                if t >= n || a.is_some_and(|a| a >= alphabet.len()) {
                    return Err(AutomataError::Invalid("transition out of range".into()));
                }
            }
        }
        Ok(EpsNfa {
            alphabet,
            edges,
            start,
            accept,
        })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.edges.len()
    }

    fn add_state(&mut self, accepting: bool) -> usize {
        self.edges.push(Vec::new());
        self.accept.push(accepting);
        self.edges.len() - 1
    }

    /// Copies `other`'s states in, returning the index offset.
    fn absorb(&mut self, other: EpsNfa) -> usize {
        let off = self.edges.len();
        for out in other.edges {
            self.edges
                .push(out.into_iter().map(|(a, t)| (a, t + off)).collect());
        }
        self.accept.extend(other.accept);
        off
    }

    /// Compositional construction: concatenation links accept states of the
    /// left operand to the right start by epsilon; star adds a fresh
    /// accepting start and links old accept states back to the old start.
    pub fn from_regex(r: &Regex, alphabet: &Alphabet) -> EpsNfa {
        let mut n = EpsNfa {
            alphabet: alphabet.clone(),
            edges: Vec::new(),
            start: 0,
            accept: Vec::new(),
        };
        match r {
            Regex::Empty => {
                n.add_state(false);
            }
            Regex::Epsilon => {
                n.add_state(true);
            }
            Regex::Sym(a) => {
                let s = n.add_state(false);
                let t = n.add_state(true);
                n.edges[s].push((Some(*a), t));
            }
            Regex::Union(x, y) => {
                let s = n.add_state(false);
                for part in [x, y] {
                    let sub = EpsNfa::from_regex(part, alphabet);
                    let sub_start = sub.start;
                    let off = n.absorb(sub);
                    n.edges[s].push((None, sub_start + off));
                }
                n.start = s;
            }
            Regex::Concat(x, y) => {
                let left = EpsNfa::from_regex(x, alphabet);
                let right = EpsNfa::from_regex(y, alphabet);
                let left_start = left.start;
                let right_start = right.start;
                let off_l = n.absorb(left);
                let left_accepts: Vec<usize> = (off_l..n.edges.len())
                    .filter(|&q| n.accept[q])
                    .collect();
                let off_r = n.absorb(right);
                for q in left_accepts {
                    n.accept[q] = false;
                    n.edges[q].push((None, right_start + off_r));
                }
                n.start = left_start + off_l;
            }
            Regex::Star(x) => {
                let sub = EpsNfa::from_regex(x, alphabet);
                let sub_start = sub.start;
                let s = n.add_state(true);
                let off = n.absorb(sub);
                let target = sub_start + off;
                n.edges[s].push((None, target));
                for q in off..n.edges.len() {
                    if n.accept[q] {
                        n.edges[q].push((None, target));
                    }
                }
                n.start = s;
            }
        }
        n
    }

    pub fn from_dfa(m: &Dfa) -> EpsNfa {
        let edges = (0..m.num_states())
            .map(|q| {
                (0..m.alphabet().len())
                    .map(|a| (Some(a), m.step(q, a)))
                    .collect()
            })
            .collect();
        EpsNfa {
            alphabet: m.alphabet().clone(),
            edges,
            start: m.start(),
            accept: (0..m.num_states()).map(|q| m.is_accept(q)).collect(),
        }
    }

    /// States reachable from `set` by epsilon moves (including `set`).
    pub fn eps_closure(&self, set: &BTreeSet<usize>) -> BTreeSet<usize> {
        let mut out = set.clone();
        let mut stack: Vec<usize> = set.iter().copied().collect();
        while let Some(q) = stack.pop() {
            for &(a, t) in &self.edges[q] {
                if a.is_none() && out.insert(t) {
                    stack.push(t);
                }
            }
        }
        out
    }

    fn step_set(&self, set: &BTreeSet<usize>, a: Symbol) -> BTreeSet<usize> {
        let mut next = BTreeSet::new();
        for &q in set {
            for &(b, t) in &self.edges[q] {
                if b == Some(a) {
                    next.insert(t);
                }
            }
        }
        self.eps_closure(&next)
    }

    pub fn accepts(&self, word: &[Symbol]) -> bool {
        let mut cur = self.eps_closure(&BTreeSet::from([self.start]));
        for &a in word {
            cur = self.step_set(&cur, a);
        }
        cur.iter().any(|&q| self.accept[q])
    }

    /// Subset construction over the subsets reachable from the start closure.
    pub fn to_dfa(&self) -> Dfa {
        let k = self.alphabet.len();
        let start = self.eps_closure(&BTreeSet::from([self.start]));
        let mut index: HashMap<BTreeSet<usize>, usize> = HashMap::new();
        let mut sets = vec![start.clone()];
        index.insert(start, 0);
        let mut delta: Vec<Vec<usize>> = Vec::new();
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            let mut row = Vec::with_capacity(k);
            for a in 0..k {
                let next = self.step_set(&sets[i], a);
                let j = match index.get(&next) {
                    Some(&j) => j,
                    None => {
                        let j = sets.len();
                        index.insert(next.clone(), j);
                        sets.push(next);
                        queue.push_back(j);
                        j
                    }
                };
                row.push(j);
            }
            if delta.len() <= i {
                delta.resize(i + 1, Vec::new());
            }
            delta[i] = row;
        }
        let accept = sets
            .iter()
            .map(|s| s.iter().any(|&q| self.accept[q]))
            .collect();
        Dfa::new(self.alphabet.clone(), delta, 0, accept).expect("subset construction is total")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::parse_regex;

    #[test]
    fn symbol_and_star() {
        let al = Alphabet::digits(2);
        let a = EpsNfa::from_regex(&Regex::Sym(1), &al);
        assert_eq!(a.num_states(), 2);
        assert!(a.accepts(&[1]));
        assert!(!a.accepts(&[]) && !a.accepts(&[1, 1]));
        let s = EpsNfa::from_regex(&Regex::star(Regex::Sym(1)), &al);
        for n in 0..5 {
            assert!(s.accepts(&vec![1; n]));
        }
        assert!(!s.accepts(&[1, 0]));
    }

    #[test]
    fn nandi_tail_pattern() {
        let al = Alphabet::digits(5);
        let n = EpsNfa::from_regex(&parse_regex("41*03", &al).unwrap(), &al);
        assert!(n.accepts(&[4, 0, 3]));
        assert!(n.accepts(&[4, 1, 0, 3]));
        assert!(n.accepts(&[4, 1, 1, 0, 3]));
        assert!(!n.accepts(&[4, 1, 3]));
        let d = n.to_dfa();
        for len in 0..=6 {
            for w in al.words_of_length(len) {
                assert_eq!(d.accepts(&w), n.accepts(&w));
            }
        }
    }

    #[test]
    fn epsilon_cycle_closure() {
        // 0 -e-> 1 -e-> 2 -e-> 0, 2 -a-> 3
        let al = Alphabet::digits(1);
        let n = EpsNfa::new(
            al,
            vec![
                vec![(None, 1)],
                vec![(None, 2)],
                vec![(None, 0), (Some(0), 3)],
                vec![],
            ],
            0,
            vec![false, false, false, true],
        )
        .unwrap();
        assert_eq!(
            n.eps_closure(&BTreeSet::from([1])),
            BTreeSet::from([0, 1, 2])
        );
        let d = n.to_dfa();
        assert!(d.accepts(&[0]) && !d.accepts(&[]) && !d.accepts(&[0, 0]));
    }
}
