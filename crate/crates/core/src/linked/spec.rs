use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::automata::{parse_regex, Alphabet, Dfa, Regex, Symbol};
use crate::partitions::{MultiplicityVector, Partition};

use super::LinkedError;

/// Data `(m, I, pi, X, X')` of a regularly linked set: blocks of length
/// `m`, a symbol alphabet `I`, the block each symbol stands for, and the
/// forbidden patterns `X` and forbidden prefixes `X'`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkedSpec {
    m: u32,
    alphabet: Alphabet,
    pi: Vec<Partition>,
    forbidden_patterns: Regex,
    forbidden_prefixes: Regex,
}

/// On-disk form of a spec (TOML).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecFile {
    pub m: u32,
    pub alphabet: Vec<String>,
    /// Multiplicity vector `(f_1, ..., f_m)` of each symbol's block.
    pub pi: BTreeMap<String, Vec<u32>>,
    pub forbidden_patterns: String,
    #[serde(default)]
    pub forbidden_prefixes: String,
}

fn parse_language(text: &str, alphabet: &Alphabet) -> Result<Regex, LinkedError> {
    if text.trim().is_empty() {
        return Ok(Regex::Empty);
    }
    Ok(parse_regex(text, alphabet)?)
}

impl LinkedSpec {
    pub fn new(
        m: u32,
        alphabet: Alphabet,
        pi: Vec<Partition>,
        forbidden_patterns: Regex,
        forbidden_prefixes: Regex,
    ) -> Result<Self, LinkedError> {
        if m == 0 {
            return Err(LinkedError::InvalidSpec("block length must be positive".into()));
        }
        if pi.len() != alphabet.len() {
            return Err(LinkedError::InvalidSpec("one block per symbol is required".into()));
        }
        for (i, p) in pi.iter().enumerate() {
            if p.parts().first().is_some_and(|&l| l > m) {
                return Err(LinkedError::InvalidSpec(format!(
                    "block of symbol {} has a part larger than {m}",
                    alphabet.symbol(i)
                )));
            }
            if pi[..i].contains(p) {
                return Err(LinkedError::InvalidSpec(format!(
                    "symbol {} repeats an earlier block",
                    alphabet.symbol(i)
                )));
            }
        }
        for (name, r) in [("forbidden patterns", &forbidden_patterns), ("forbidden prefixes", &forbidden_prefixes)] {
            if Dfa::from_regex(r, &alphabet).accepts(&[]) {
                return Err(LinkedError::InvalidSpec(format!("{name} contain the empty word")));
            }
        }
        Ok(LinkedSpec {
            m,
            alphabet,
            pi,
            forbidden_patterns,
            forbidden_prefixes,
        })
    }

    pub fn from_file(f: &SpecFile) -> Result<Self, LinkedError> {
        let alphabet = Alphabet::new(f.alphabet.clone())?;
        let mut pi = Vec::with_capacity(alphabet.len());
        for s in alphabet.symbols() {
            let mults = f
                .pi
                .get(s)
                .ok_or_else(|| LinkedError::InvalidSpec(format!("no block for symbol {s}")))?;
            if mults.len() > f.m as usize {
                return Err(LinkedError::InvalidSpec(format!(
                    "block of symbol {s} is longer than m"
                )));
            }
            pi.push(MultiplicityVector::new(mults.clone()).to_partition());
        }
        if let Some(extra) = f.pi.keys().find(|k| alphabet.index_of(k).is_none()) {
            return Err(LinkedError::InvalidSpec(format!("block given for unknown symbol {extra}")));
        }
        let x = parse_language(&f.forbidden_patterns, &alphabet)?;
        let xp = parse_language(&f.forbidden_prefixes, &alphabet)?;
        LinkedSpec::new(f.m, alphabet, pi, x, xp)
    }

    /// Parses the TOML spec format.
    pub fn from_toml(text: &str) -> Result<Self, LinkedError> {
        let f: SpecFile = toml::from_str(text).map_err(|e| LinkedError::SpecFormat(e.to_string()))?;
        LinkedSpec::from_file(&f)
    }

    pub fn to_file(&self) -> SpecFile {
        let al = &self.alphabet;
        SpecFile {
            m: self.m,
            alphabet: al.symbols().to_vec(),
            pi: (0..al.len())
                .map(|i| (al.symbol(i).to_string(), self.block(i)))
                .collect(),
            forbidden_patterns: self.forbidden_patterns.display(al).to_string(),
            forbidden_prefixes: self.forbidden_prefixes.display(al).to_string(),
        }
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(&self.to_file()).expect("spec files serialize")
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn pi(&self, a: Symbol) -> &Partition {
        &self.pi[a]
    }

    pub fn forbidden_patterns(&self) -> &Regex {
        &self.forbidden_patterns
    }

    pub fn forbidden_prefixes(&self) -> &Regex {
        &self.forbidden_prefixes
    }

    /// A copy with the forbidden prefixes replaced.
    pub fn with_prefixes(&self, prefixes: Regex) -> Result<Self, LinkedError> {
        LinkedSpec::new(
            self.m,
            self.alphabet.clone(),
            self.pi.clone(),
            self.forbidden_patterns.clone(),
            prefixes,
        )
    }

    /// `(f_1, ..., f_m)` for symbol `a`, padded to length `m`.
    pub fn block(&self, a: Symbol) -> Vec<u32> {
        let f = self.pi[a].to_multiplicities();
        (1..=self.m as usize).map(|i| f.get(i)).collect()
    }

    /// The symbol whose block is empty, if any.
    pub fn trivial_symbol(&self) -> Option<Symbol> {
        self.pi.iter().position(Partition::is_empty)
    }

    /// Splits the multiplicity vector of `p` into blocks of length `m` and
    /// names each block by its symbol. The result has no trailing trivial
    /// symbols.
    pub fn encode(&self, p: &Partition) -> Result<Vec<Symbol>, LinkedError> {
        let f = p.to_multiplicities();
        let m = self.m as usize;
        let nblocks = f.support_len().div_ceil(m);
        let blocks: Vec<Vec<u32>> = (0..self.alphabet.len()).map(|a| self.block(a)).collect();
        let mut word = Vec::with_capacity(nblocks);
        for k in 0..nblocks {
            let blk: Vec<u32> = (1..=m).map(|i| f.get(k * m + i)).collect();
            let a = blocks
                .iter()
                .position(|b| *b == blk)
                .ok_or(LinkedError::BlockNotInImage { index: k, block: blk })?;
            word.push(a);
        }
        Ok(word)
    }

    /// `pi(w_1) ⊕ phi_+^m(pi(w_2)) ⊕ phi_+^{2m}(pi(w_3)) ⊕ ...`
    pub fn decode(&self, word: &[Symbol]) -> Partition {
        word.iter()
            .enumerate()
            .fold(Partition::empty(), |acc, (k, &a)| {
                acc.oplus(&self.pi[a].phi_plus(self.m * k as u32))
            })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nandi;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn encode_examples() {
        let s = nandi::spec();
        assert_eq!(s.encode(&p(&[5, 2])).unwrap(), vec![1, 0, 3]);
        assert_eq!(s.encode(&Partition::empty()).unwrap(), Vec::<usize>::new());
        assert_eq!(s.encode(&p(&[2, 2])).unwrap(), vec![2]);
        assert!(matches!(
            s.encode(&p(&[2, 2, 2])),
            Err(LinkedError::BlockNotInImage { index: 0, .. })
        ));
    }

    #[test]
    fn decode_examples() {
        let s = nandi::spec();
        assert_eq!(s.decode(&[1, 0, 3]), p(&[5, 2]));
        assert_eq!(s.decode(&[]), Partition::empty());
        assert_eq!(s.decode(&[3]), p(&[1]));
        assert_eq!(s.decode(&[3, 0, 0]), p(&[1]));
    }

    #[test]
    fn file_round_trip() {
        let s = nandi::spec();
        let again = LinkedSpec::from_toml(&s.to_toml()).unwrap();
        assert_eq!(again, s);
    }

    #[test]
    fn invalid_specs() {
        let base = nandi::spec().to_file();
        let mut f = base.clone();
        f.pi.insert("1".into(), vec![0, 2]);
        assert!(matches!(LinkedSpec::from_file(&f), Err(LinkedError::InvalidSpec(_))));
        let mut f = base.clone();
        f.pi.insert("1".into(), vec![0, 1, 1]);
        assert!(LinkedSpec::from_file(&f).is_err());
        let mut f = base.clone();
        f.forbidden_prefixes = "3U()".into();
        assert!(LinkedSpec::from_file(&f).is_err());
        let mut f = base.clone();
        f.forbidden_patterns = "12U9".into();
        assert!(matches!(LinkedSpec::from_file(&f), Err(LinkedError::Regex(_))));
        assert!(matches!(
            LinkedSpec::from_toml("m = 2"),
            Err(LinkedError::SpecFormat(_))
        ));
    }
}
