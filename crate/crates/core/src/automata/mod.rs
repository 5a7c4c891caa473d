//! Regular expressions and finite automata over a finite, ordered alphabet.

mod dfa;
mod nfa;
mod prefixes;
mod regex;

use std::fmt;

pub use dfa::Dfa;
pub use nfa::EpsNfa;
pub use prefixes::min_forbidden_prefixes;
pub use regex::{parse_regex, Regex};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AutomataError {
    #[error("syntax error at offset {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown symbol {symbol:?} at offset {pos}")]
    UnknownSymbol { pos: usize, symbol: String },
    #[error("automata are over different alphabets")]
    AlphabetMismatch,
    #[error("no state {0}")]
    UnknownState(usize),
    #[error("state {0} is not reachable from the start state")]
    Unreachable(usize),
    #[error("state {0} is accepting")]
    AcceptingState(usize),
    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),
    #[error("invalid automaton: {0}")]
    Invalid(String),
}

/// Symbols are referred to by their index in declaration order.
pub type Symbol = usize;

/// A finite ordered set of named symbols.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Alphabet {
    symbols: Vec<String>,
}

const RESERVED: &[char] = &['U', '*', '(', ')', '!', '\'', ','];

impl Alphabet {
    pub fn new<S: Into<String>>(symbols: Vec<S>) -> Result<Self, AutomataError> {
        let symbols: Vec<String> = symbols.into_iter().map(Into::into).collect();
        if symbols.is_empty() {
            return Err(AutomataError::InvalidAlphabet("no symbols".into()));
        }
        for (i, s) in symbols.iter().enumerate() {
            if s.is_empty() || s.contains('\'') || s.chars().any(char::is_whitespace) {
                return Err(AutomataError::InvalidAlphabet(format!("bad symbol {s:?}")));
            }
            if symbols[..i].contains(s) {
                return Err(AutomataError::InvalidAlphabet(format!("duplicate symbol {s:?}")));
            }
        }
        Ok(Alphabet { symbols })
    }

    /// The digits `0, 1, ..., n-1` (`n <= 10`).
    pub fn digits(n: usize) -> Self {
        assert!((1..=10).contains(&n), "digit alphabets have 1 to 10 symbols");
        Alphabet::new((0..n).map(|i| i.to_string()).collect()).expect("digits are valid symbols")
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn symbol(&self, a: Symbol) -> &str {
        &self.symbols[a]
    }

    pub fn index_of(&self, s: &str) -> Option<Symbol> {
        self.symbols.iter().position(|t| t == s)
    }

    /// Symbols can be written unquoted when every symbol is a single
    /// non-reserved character.
    pub fn is_compact(&self) -> bool {
        self.symbols.iter().all(|s| {
            let mut cs = s.chars();
            matches!((cs.next(), cs.next()), (Some(c), None) if !RESERVED.contains(&c))
        })
    }

    pub fn render_symbol(&self, a: Symbol) -> String {
        if self.is_compact() {
            self.symbols[a].clone()
        } else {
            format!("'{}'", self.symbols[a])
        }
    }

    pub fn render_word(&self, w: &[Symbol]) -> String {
        if w.is_empty() {
            return "()".to_string();
        }
        w.iter().map(|&a| self.render_symbol(a)).collect()
    }

    /// Parses a juxtaposition of symbols, e.g. `403` or `'ab''c'`.
    pub fn parse_word(&self, text: &str) -> Result<Vec<Symbol>, AutomataError> {
        let r = parse_regex(text, self)?;
        r.as_word().ok_or_else(|| AutomataError::Syntax {
            pos: 0,
            msg: "expected a plain word".into(),
        })
    }

    /// All words of length exactly `n`, in lexicographic order.
    pub fn words_of_length(&self, n: usize) -> Vec<Vec<Symbol>> {
        let mut out = vec![Vec::new()];
        for _ in 0..n {
            out = out
                .into_iter()
                .flat_map(|w| {
                    (0..self.len()).map(move |a| {
                        let mut v = w.clone();
                        v.push(a);
                        v
                    })
                })
                .collect();
        }
        out
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.symbols.join(" "))
    }
}
