use std::collections::{HashMap, VecDeque};
use std::fmt;

use super::nfa::EpsNfa;
use super::regex::{parse_regex, Regex};
use super::{Alphabet, AutomataError, Symbol};

/// A complete deterministic automaton. States are `0..num_states()`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Dfa {
    alphabet: Alphabet,
    delta: Vec<Vec<usize>>,
    start: usize,
    accept: Vec<bool>,
}

impl Dfa {
    pub fn new(
        alphabet: Alphabet,
        delta: Vec<Vec<usize>>,
        start: usize,
        accept: Vec<bool>,
    ) -> Result<Self, AutomataError> {
        let n = delta.len();
        if n == 0 {
            return Err(AutomataError::Invalid("no states".into()));
        }
        if start >= n || accept.len() != n {
            return Err(AutomataError::Invalid("start or accept set out of range".into()));
        }
        for row in &delta {
            if row.len() != alphabet.len() {
                return Err(AutomataError::Invalid("transition table is not total".into()));
            }
            if row.iter().any(|&t| t >= n) {
                return Err(AutomataError::Invalid("transition out of range".into()));
            }
        }
        Ok(Dfa {
            alphabet,
            delta,
            start,
            accept,
        })
    }

    pub fn from_regex(r: &Regex, alphabet: &Alphabet) -> Dfa {
        EpsNfa::from_regex(r, alphabet).to_dfa()
    }

    /// Parses a regular expression and builds its automaton.
    pub fn from_regex_text(text: &str, alphabet: &Alphabet) -> Result<Dfa, AutomataError> {
        Ok(Dfa::from_regex(&parse_regex(text, alphabet)?, alphabet))
    }

    /// The automaton accepting every word.
    pub fn universal(alphabet: &Alphabet) -> Dfa {
        Dfa::new(alphabet.clone(), vec![vec![0; alphabet.len()]], 0, vec![true])
            .expect("one-state automaton is valid")
    }

    pub fn empty(alphabet: &Alphabet) -> Dfa {
        Dfa::universal(alphabet).complement()
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.delta.len()
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn is_accept(&self, q: usize) -> bool {
        self.accept[q]
    }

    pub fn accept_states(&self) -> Vec<usize> {
        (0..self.num_states()).filter(|&q| self.accept[q]).collect()
    }

    pub fn step(&self, q: usize, a: Symbol) -> usize {
        self.delta[q][a]
    }

    pub fn transitions(&self) -> &[Vec<usize>] {
        &self.delta
    }

    pub fn run(&self, from: usize, word: &[Symbol]) -> usize {
        word.iter().fold(from, |q, &a| self.delta[q][a])
    }

    pub fn accepts(&self, word: &[Symbol]) -> bool {
        self.accept[self.run(self.start, word)]
    }

    pub fn reachable(&self) -> Vec<bool> {
        let mut seen = vec![false; self.num_states()];
        seen[self.start] = true;
        let mut stack = vec![self.start];
        while let Some(q) = stack.pop() {
            for &t in &self.delta[q] {
                if !seen[t] {
                    seen[t] = true;
                    stack.push(t);
                }
            }
        }
        seen
    }

    /// The same machine started at `v`.
    pub fn restart(&self, v: usize) -> Result<Dfa, AutomataError> {
        if v >= self.num_states() {
            return Err(AutomataError::UnknownState(v));
        }
        Ok(Dfa {
            start: v,
            ..self.clone()
        })
    }

    pub fn complement(&self) -> Dfa {
        Dfa {
            accept: self.accept.iter().map(|&b| !b).collect(),
            ..self.clone()
        }
    }

    /// Product automaton over reachable state pairs, accepting where
    /// `op(accept_1, accept_2)` holds.
    pub fn product<F>(&self, other: &Dfa, op: F) -> Result<Dfa, AutomataError>
    where
        F: Fn(bool, bool) -> bool,
    {
        if self.alphabet != other.alphabet {
            return Err(AutomataError::AlphabetMismatch);
        }
        let k = self.alphabet.len();
        let mut index: HashMap<(usize, usize), usize> = HashMap::new();
        let mut pairs = vec![(self.start, other.start)];
        index.insert(pairs[0], 0);
        let mut delta = Vec::new();
        let mut i = 0;
        while i < pairs.len() {
            let (p, q) = pairs[i];
            let mut row = Vec::with_capacity(k);
            for a in 0..k {
                let t = (self.delta[p][a], other.delta[q][a]);
                let j = *index.entry(t).or_insert_with(|| {
                    pairs.push(t);
                    pairs.len() - 1
                });
                row.push(j);
            }
            delta.push(row);
            i += 1;
        }
        let accept = pairs
            .iter()
            .map(|&(p, q)| op(self.accept[p], other.accept[q]))
            .collect();
        Dfa::new(self.alphabet.clone(), delta, 0, accept)
    }

    pub fn intersection(&self, other: &Dfa) -> Result<Dfa, AutomataError> {
        self.product(other, |a, b| a && b)
    }

    pub fn union(&self, other: &Dfa) -> Result<Dfa, AutomataError> {
        self.product(other, |a, b| a || b)
    }

    /// `L(self) \ L(other)`
    pub fn difference(&self, other: &Dfa) -> Result<Dfa, AutomataError> {
        self.product(other, |a, b| a && !b)
    }

    /// `L(self) L(other)`, built as an epsilon-NFA joining accept states of
    /// `self` to the start of `other`, then determinized and minimized.
    pub fn concat(&self, other: &Dfa) -> Result<Dfa, AutomataError> {
        if self.alphabet != other.alphabet {
            return Err(AutomataError::AlphabetMismatch);
        }
        let n1 = self.num_states();
        let k = self.alphabet.len();
        let mut edges: Vec<Vec<(Option<Symbol>, usize)>> = Vec::new();
        for q in 0..n1 {
            let mut out: Vec<_> = (0..k).map(|a| (Some(a), self.delta[q][a])).collect();
            if self.accept[q] {
                out.push((None, n1 + other.start));
            }
            edges.push(out);
        }
        for q in 0..other.num_states() {
            edges.push((0..k).map(|a| (Some(a), n1 + other.delta[q][a])).collect());
        }
        let mut accept = vec![false; n1];
        accept.extend(other.accept.iter().copied());
        let nfa = EpsNfa::new(self.alphabet.clone(), edges, self.start, accept)?;
        Ok(nfa.to_dfa().minimize())
    }

    /// `L(self)^*`, with a fresh accepting start state linked by epsilon to
    /// the old start, and old accept states linked back to it.
    pub fn star(&self) -> Dfa {
        let n = self.num_states();
        let k = self.alphabet.len();
        let mut edges: Vec<Vec<(Option<Symbol>, usize)>> = Vec::new();
        for q in 0..n {
            let mut out: Vec<_> = (0..k).map(|a| (Some(a), self.delta[q][a])).collect();
            if self.accept[q] {
                out.push((None, self.start));
            }
            edges.push(out);
        }
        edges.push(vec![(None, self.start)]);
        let mut accept = self.accept.clone();
        accept.push(true);
        EpsNfa::new(self.alphabet.clone(), edges, n, accept)
            .expect("star construction is valid")
            .to_dfa()
            .minimize()
    }

    /// Drops unreachable states and renumbers breadth-first from the start,
    /// taking symbols in alphabet order.
    pub fn canonical(&self) -> Dfa {
        let mut order = vec![usize::MAX; self.num_states()];
        let mut seq = vec![self.start];
        order[self.start] = 0;
        let mut queue = VecDeque::from([self.start]);
        while let Some(q) = queue.pop_front() {
            for &t in &self.delta[q] {
                if order[t] == usize::MAX {
                    order[t] = seq.len();
                    seq.push(t);
                    queue.push_back(t);
                }
            }
        }
        let delta = seq
            .iter()
            .map(|&q| self.delta[q].iter().map(|&t| order[t]).collect())
            .collect();
        let accept = seq.iter().map(|&q| self.accept[q]).collect();
        Dfa {
            alphabet: self.alphabet.clone(),
            delta,
            start: 0,
            accept,
        }
    }

    /// Minimal automaton by pair marking, in canonical numbering.
    pub fn minimize(&self) -> Dfa {
        let m = self.canonical();
        let n = m.num_states();
        let k = m.alphabet.len();
        let mut marked = vec![vec![false; n]; n];
        for i in 0..n {
            for j in 0..i {
                if m.accept[i] != m.accept[j] {
                    marked[i][j] = true;
                    marked[j][i] = true;
                }
            }
        }
        let mut changed = true;
        while changed {
            changed = false;
            for i in 0..n {
                for j in 0..i {
                    if marked[i][j] {
                        continue;
                    }
                    if (0..k).any(|a| marked[m.delta[i][a]][m.delta[j][a]]) {
                        marked[i][j] = true;
                        marked[j][i] = true;
                        changed = true;
                    }
                }
            }
        }
        // representative = least equivalent state
        let rep: Vec<usize> = (0..n)
            .map(|i| (0..=i).find(|&j| j == i || !marked[i][j]).unwrap())
            .collect();
        let delta = (0..n)
            .map(|q| m.delta[q].iter().map(|&t| rep[t]).collect())
            .collect();
        let quotient = Dfa {
            alphabet: m.alphabet.clone(),
            delta,
            start: rep[m.start],
            accept: m.accept.clone(),
        };
        quotient.canonical()
    }

    /// A bijection `map[q_self] = q_other` of reachable states preserving
    /// start, transitions and acceptance, if one exists.
    pub fn isomorphism(&self, other: &Dfa) -> Option<Vec<usize>> {
        if self.alphabet != other.alphabet {
            return None;
        }
        let reach = self.reachable();
        let other_reach = other.reachable();
        let count = |r: &[bool]| r.iter().filter(|&&b| b).count();
        if count(&reach) != count(&other_reach) {
            return None;
        }
        let mut map = vec![usize::MAX; self.num_states()];
        let mut back = vec![usize::MAX; other.num_states()];
        map[self.start] = other.start;
        back[other.start] = self.start;
        let mut queue = VecDeque::from([self.start]);
        while let Some(p) = queue.pop_front() {
            let q = map[p];
            if self.accept[p] != other.accept[q] {
                return None;
            }
            for a in 0..self.alphabet.len() {
                let (s, t) = (self.delta[p][a], other.delta[q][a]);
                match (map[s], back[t]) {
                    (usize::MAX, usize::MAX) => {
                        map[s] = t;
                        back[t] = s;
                        queue.push_back(s);
                    }
                    (ms, bt) if ms == t && bt == s => {}
                    _ => return None,
                }
            }
        }
        Some(map)
    }

    /// Language equality via isomorphism of minimal automata.
    pub fn equivalent(&self, other: &Dfa) -> Result<bool, AutomataError> {
        if self.alphabet != other.alphabet {
            return Err(AutomataError::AlphabetMismatch);
        }
        Ok(self.minimize().isomorphism(&other.minimize()).is_some())
    }

    /// Language equality via emptiness of the symmetric difference.
    pub fn equivalent_by_product(&self, other: &Dfa) -> Result<bool, AutomataError> {
        Ok(self.product(other, |a, b| a != b)?.is_empty())
    }

    pub fn is_empty(&self) -> bool {
        let reach = self.reachable();
        !(0..self.num_states()).any(|q| reach[q] && self.accept[q])
    }

    /// Every transition out of a reachable accept state stays accepting,
    /// i.e. the language is closed under appending words.
    pub fn accept_is_absorbing(&self) -> bool {
        let reach = self.reachable();
        (0..self.num_states())
            .filter(|&q| reach[q] && self.accept[q])
            .all(|q| self.delta[q].iter().all(|&t| self.accept[t]))
    }

    /// States from which some accept state can be reached.
    fn coreachable(&self) -> Vec<bool> {
        let mut live = self.accept.clone();
        let mut changed = true;
        while changed {
            changed = false;
            for q in 0..self.num_states() {
                if !live[q] && self.delta[q].iter().any(|&t| live[t]) {
                    live[q] = true;
                    changed = true;
                }
            }
        }
        live
    }

    /// Accepted words of length at most `max_len`, shortest first then lexicographic.
    pub fn words_up_to(&self, max_len: usize) -> Vec<Vec<Symbol>> {
        let live = self.coreachable();
        let mut out = Vec::new();
        let mut frontier = vec![(Vec::new(), self.start)];
        for len in 0..=max_len {
            for (w, q) in &frontier {
                if self.accept[*q] {
                    out.push(w.clone());
                }
            }
            if len == max_len {
                break;
            }
            let mut next = Vec::new();
            for (w, q) in frontier {
                for a in 0..self.alphabet.len() {
                    let t = self.delta[q][a];
                    if live[t] {
                        let mut v = w.clone();
                        v.push(a);
                        next.push((v, t));
                    }
                }
            }
            frontier = next;
        }
        out
    }

    /// Whether the language is finite (no cycle through a useful state).
    pub fn is_finite(&self) -> bool {
        let reach = self.reachable();
        let live = self.coreachable();
        let useful: Vec<bool> = (0..self.num_states()).map(|q| reach[q] && live[q]).collect();
        // depth-first search for a back edge among useful states
        let mut color = vec![0u8; self.num_states()];
        fn dfs(m: &Dfa, q: usize, useful: &[bool], color: &mut [u8]) -> bool {
            color[q] = 1;
            for &t in &m.delta[q] {
                if !useful[t] {
                    continue;
                }
                if color[t] == 1 || (color[t] == 0 && dfs(m, t, useful, color)) {
                    return true;
                }
            }
            color[q] = 2;
            false
        }
        !(useful[self.start] && dfs(self, self.start, &useful, &mut color))
    }

    /// Text form listing the alphabet, state count, start, accept states and
    /// one transition row per state.
    pub fn to_table_text(&self) -> String {
        self.to_string()
    }

    pub fn from_table_text(text: &str) -> Result<Dfa, AutomataError> {
        let bad = |msg: &str| AutomataError::Invalid(msg.to_string());
        let mut alphabet = None;
        let mut states = None;
        let mut start = None;
        let mut accept: Vec<usize> = Vec::new();
        let mut rows: Vec<(usize, Vec<usize>)> = Vec::new();
        for line in text.lines().map(str::trim).filter(|l| !l.is_empty()) {
            let (key, rest) = line.split_once(':').ok_or_else(|| bad("expected 'key: value'"))?;
            let rest = rest.trim();
            let nums = || -> Result<Vec<usize>, AutomataError> {
                rest.split_whitespace()
                    .map(|t| t.parse().map_err(|_| bad("expected a state number")))
                    .collect()
            };
            match key.trim() {
                "alphabet" => alphabet = Some(Alphabet::new(rest.split_whitespace().collect())?),
                "states" => states = Some(rest.parse::<usize>().map_err(|_| bad("bad state count"))?),
                "start" => start = Some(rest.parse::<usize>().map_err(|_| bad("bad start state"))?),
                "accept" => accept = nums()?,
                "table" => {}
                k => {
                    let q = k.parse::<usize>().map_err(|_| bad("unknown field"))?;
                    rows.push((q, nums()?));
                }
            }
        }
        let alphabet = alphabet.ok_or_else(|| bad("missing alphabet"))?;
        let n = states.ok_or_else(|| bad("missing state count"))?;
        let start = start.ok_or_else(|| bad("missing start state"))?;
        let mut delta = vec![Vec::new(); n];
        if rows.len() != n {
            return Err(bad("wrong number of transition rows"));
        }
        for (q, row) in rows {
            if q >= n {
                return Err(AutomataError::UnknownState(q));
            }
            delta[q] = row;
        }
        let mut acc = vec![false; n];
        for q in accept {
            *acc.get_mut(q).ok_or(AutomataError::UnknownState(q))? = true;
        }
        Dfa::new(alphabet, delta, start, acc)
    }
}

impl fmt::Display for Dfa {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "alphabet: {}", self.alphabet)?;
        writeln!(f, "states: {}", self.num_states())?;
        writeln!(f, "start: {}", self.start)?;
        let acc: Vec<String> = self.accept_states().iter().map(usize::to_string).collect();
        writeln!(f, "accept: {}", acc.join(" "))?;
        writeln!(f, "table:")?;
        for (q, row) in self.delta.iter().enumerate() {
            let r: Vec<String> = row.iter().map(usize::to_string).collect();
            writeln!(f, "{q}: {}", r.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn al() -> Alphabet {
        Alphabet::digits(5)
    }

    fn re(text: &str) -> Dfa {
        Dfa::from_regex_text(text, &al()).unwrap()
    }

    fn agree_on_short_words(m: &Dfa, f: impl Fn(&[Symbol]) -> bool, max: usize) {
        for len in 0..=max {
            for w in m.alphabet().words_of_length(len) {
                assert_eq!(m.accepts(&w), f(&w), "{w:?}");
            }
        }
    }

    fn contains(w: &[Symbol], pat: &[Symbol]) -> bool {
        w.windows(pat.len()).any(|x| x == pat)
    }

    #[test]
    fn complement_is_involution() {
        let m = re("41*03U2");
        assert!(m.complement().complement().equivalent(&m).unwrap());
    }

    #[test]
    fn product_with_universal() {
        let m = re("(12U3)*4");
        let p = m.intersection(&Dfa::universal(&al())).unwrap();
        assert!(p.equivalent(&m).unwrap());
    }

    #[test]
    fn intersection_of_factor_languages() {
        let any = "(0U1U2U3U4)*";
        let a = re(&format!("{any}12{any}"));
        let b = re(&format!("{any}21{any}"));
        let both = a.intersection(&b).unwrap();
        agree_on_short_words(&both, |w| contains(w, &[1, 2]) && contains(w, &[2, 1]), 6);
    }

    #[test]
    fn minimize_merges_equivalent_accepts() {
        let a2 = Alphabet::digits(2);
        // 0 -> 1 or 2 on any symbol; 1 and 2 are accepting sinks
        let m = Dfa::new(
            a2,
            vec![vec![1, 2], vec![1, 1], vec![2, 2]],
            0,
            vec![false, true, true],
        )
        .unwrap();
        let min = m.minimize();
        assert_eq!(min.num_states(), 2);
        assert!(min.equivalent_by_product(&m).unwrap());
        assert!(min.minimize().isomorphism(&min).is_some());
    }

    #[test]
    fn algebraic_identity() {
        let a = re("12U13");
        let b = re("1(2U3)");
        assert!(a.equivalent(&b).unwrap());
        assert!(a.equivalent_by_product(&b).unwrap());
        assert!(!a.equivalent(&re("12")).unwrap());
    }

    #[test]
    fn concat_and_star_match_regex() {
        let a = re("1U23");
        let b = re("0*4");
        assert!(a.concat(&b).unwrap().equivalent(&re("(1U23)0*4")).unwrap());
        assert!(a.star().equivalent(&re("(1U23)*")).unwrap());
    }

    #[test]
    fn de_morgan() {
        let a = re("(0U1)*2");
        let b = re("3(4U0)*");
        let lhs = a.intersection(&b).unwrap().complement();
        let rhs = a.complement().union(&b.complement()).unwrap();
        assert!(lhs.equivalent(&rhs).unwrap());
    }

    #[test]
    fn restart_at_start_is_identity() {
        let m = re("41*03");
        assert_eq!(m.restart(m.start()).unwrap(), m);
        assert_eq!(m.restart(99), Err(AutomataError::UnknownState(99)));
    }

    #[test]
    fn alphabet_mismatch() {
        let m = re("1");
        let other = Dfa::universal(&Alphabet::digits(3));
        assert_eq!(m.product(&other, |a, _| a), Err(AutomataError::AlphabetMismatch));
        assert_eq!(m.equivalent(&other), Err(AutomataError::AlphabetMismatch));
    }

    #[test]
    fn table_text_round_trip() {
        let m = re("41*03U12").minimize();
        let text = m.to_table_text();
        assert_eq!(Dfa::from_table_text(&text).unwrap(), m);
        assert!(Dfa::from_table_text("states: 1").is_err());
    }

    #[test]
    fn finite_language_listing() {
        let m = re("3U4U12");
        assert!(m.is_finite());
        assert_eq!(m.words_up_to(5), vec![vec![3], vec![4], vec![1, 2]]);
        assert!(!re("1*03").is_finite());
        assert!(Dfa::empty(&al()).is_finite());
    }
}
