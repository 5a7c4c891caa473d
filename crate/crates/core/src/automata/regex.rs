//! Regular expression syntax.
//!
//! Symbols are juxtaposed to concatenate; `U` is union and `*` is Kleene
//! star (binding tightest). `()` denotes the empty word and `!` the empty
//! language. When some symbol is longer than one character every symbol
//! must be quoted, as in `'ab'('c' U 'd')*`. Whitespace is ignored.

use std::fmt;

use super::{Alphabet, AutomataError, Symbol};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Regex {
    Empty,
    Epsilon,
    Sym(Symbol),
    Union(Box<Regex>, Box<Regex>),
    Concat(Box<Regex>, Box<Regex>),
    Star(Box<Regex>),
}

impl Regex {
    pub fn union(a: Regex, b: Regex) -> Regex {
        Regex::Union(Box::new(a), Box::new(b))
    }

    pub fn concat(a: Regex, b: Regex) -> Regex {
        Regex::Concat(Box::new(a), Box::new(b))
    }

    pub fn star(a: Regex) -> Regex {
        Regex::Star(Box::new(a))
    }

    /// The word `w` as a chain of concatenations.
    pub fn word(w: &[Symbol]) -> Regex {
        w.iter()
            .map(|&a| Regex::Sym(a))
            .reduce(Regex::concat)
            .unwrap_or(Regex::Epsilon)
    }

    /// Union of all symbols.
    pub fn any(alphabet: &Alphabet) -> Regex {
        (0..alphabet.len())
            .map(Regex::Sym)
            .reduce(Regex::union)
            .expect("alphabets are nonempty")
    }

    /// `Sigma^*`
    pub fn any_star(alphabet: &Alphabet) -> Regex {
        Regex::star(Regex::any(alphabet))
    }

    /// The single word this expression denotes, if it is a plain concatenation of symbols.
    pub fn as_word(&self) -> Option<Vec<Symbol>> {
        match self {
            Regex::Epsilon => Some(Vec::new()),
            Regex::Sym(a) => Some(vec![*a]),
            Regex::Concat(a, b) => {
                let mut w = a.as_word()?;
                w.extend(b.as_word()?);
                Some(w)
            }
            _ => None,
        }
    }

    pub fn display<'a>(&'a self, alphabet: &'a Alphabet) -> RegexDisplay<'a> {
        RegexDisplay {
            regex: self,
            alphabet,
        }
    }

    fn fmt_prec(&self, al: &Alphabet, prec: u8, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // prec: 0 union context, 1 concat context, 2 star operand
        match self {
            Regex::Empty => f.write_str("!"),
            Regex::Epsilon => f.write_str("()"),
            Regex::Sym(a) => f.write_str(&al.render_symbol(*a)),
            Regex::Union(a, b) => {
                if prec > 0 {
                    f.write_str("(")?;
                }
                a.fmt_prec(al, 0, f)?;
                f.write_str("U")?;
                b.fmt_prec(al, 0, f)?;
                if prec > 0 {
                    f.write_str(")")?;
                }
                Ok(())
            }
            Regex::Concat(a, b) => {
                if prec > 1 {
                    f.write_str("(")?;
                }
                a.fmt_prec(al, 1, f)?;
                b.fmt_prec(al, 1, f)?;
                if prec > 1 {
                    f.write_str(")")?;
                }
                Ok(())
            }
            Regex::Star(a) => {
                a.fmt_prec(al, 2, f)?;
                f.write_str("*")
            }
        }
    }
}

pub struct RegexDisplay<'a> {
    regex: &'a Regex,
    alphabet: &'a Alphabet,
}

impl fmt::Display for RegexDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.regex.fmt_prec(self.alphabet, 0, f)
    }
}

struct Parser<'a> {
    chars: Vec<(usize, char)>,
    at: usize,
    alphabet: &'a Alphabet,
    compact: bool,
    len: usize,
}

impl Parser<'_> {
    fn pos(&self) -> usize {
        self.chars.get(self.at).map_or(self.len, |&(p, _)| p)
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.at).map(|&(_, c)| c)
    }

    fn syntax(&self, msg: &str) -> AutomataError {
        AutomataError::Syntax {
            pos: self.pos(),
            msg: msg.to_string(),
        }
    }

    fn union(&mut self) -> Result<Regex, AutomataError> {
        let mut acc = self.concat()?;
        while self.peek() == Some('U') {
            self.at += 1;
            acc = Regex::union(acc, self.concat()?);
        }
        Ok(acc)
    }

    fn concat(&mut self) -> Result<Regex, AutomataError> {
        let mut acc: Option<Regex> = None;
        while let Some(c) = self.peek() {
            if c == 'U' || c == ')' {
                break;
            }
            let r = self.starred()?;
            acc = Some(match acc {
                None => r,
                Some(a) => Regex::concat(a, r),
            });
        }
        acc.ok_or_else(|| self.syntax("expected an expression"))
    }

    fn starred(&mut self) -> Result<Regex, AutomataError> {
        let mut r = self.atom()?;
        while self.peek() == Some('*') {
            self.at += 1;
            r = Regex::star(r);
        }
        Ok(r)
    }

    fn atom(&mut self) -> Result<Regex, AutomataError> {
        let pos = self.pos();
        match self.peek() {
            Some('(') => {
                self.at += 1;
                if self.peek() == Some(')') {
                    self.at += 1;
                    return Ok(Regex::Epsilon);
                }
                let r = self.union()?;
                if self.peek() != Some(')') {
                    return Err(self.syntax("expected ')'"));
                }
                self.at += 1;
                Ok(r)
            }
            Some('!') => {
                self.at += 1;
                Ok(Regex::Empty)
            }
            Some('\'') => {
                self.at += 1;
                let mut name = String::new();
                loop {
                    match self.peek() {
                        Some('\'') => break,
                        Some(c) => {
                            name.push(c);
                            self.at += 1;
                        }
                        None => return Err(self.syntax("unterminated quoted symbol")),
                    }
                }
                self.at += 1;
                self.lookup(&name, pos)
            }
            Some('*') => Err(self.syntax("'*' needs an operand")),
            Some(c) if self.compact => {
                self.at += 1;
                self.lookup(&c.to_string(), pos)
            }
            Some(c) => Err(AutomataError::UnknownSymbol {
                pos,
                symbol: format!("{c} (symbols of this alphabet must be quoted)"),
            }),
            None => Err(self.syntax("unexpected end of input")),
        }
    }

    fn lookup(&self, name: &str, pos: usize) -> Result<Regex, AutomataError> {
        self.alphabet
            .index_of(name)
            .map(Regex::Sym)
            .ok_or_else(|| AutomataError::UnknownSymbol {
                pos,
                symbol: name.to_string(),
            })
    }
}

pub fn parse_regex(text: &str, alphabet: &Alphabet) -> Result<Regex, AutomataError> {
    let mut chars = Vec::new();
    let mut quoted = false;
    for (p, c) in text.char_indices() {
        if c == '\'' {
            quoted = !quoted;
        }
        if quoted || !c.is_whitespace() {
            chars.push((p, c));
        }
    }
    if chars.is_empty() {
        return Err(AutomataError::Syntax {
            pos: 0,
            msg: "empty expression".into(),
        });
    }
    let mut p = Parser {
        chars,
        at: 0,
        alphabet,
        compact: alphabet.is_compact(),
        len: text.len(),
    };
    let r = p.union()?;
    if p.peek().is_some() {
        return Err(p.syntax("unbalanced ')'"));
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn digits() -> Alphabet {
        Alphabet::digits(5)
    }

    #[test]
    fn union_of_words() {
        let r = parse_regex("12U13", &digits()).unwrap();
        assert_eq!(
            r,
            Regex::union(Regex::word(&[1, 2]), Regex::word(&[1, 3]))
        );
    }

    #[test]
    fn star_binds_tightest() {
        let r = parse_regex("41*03", &digits()).unwrap();
        let expected = Regex::concat(
            Regex::concat(
                Regex::concat(Regex::Sym(4), Regex::star(Regex::Sym(1))),
                Regex::Sym(0),
            ),
            Regex::Sym(3),
        );
        assert_eq!(r, expected);
    }

    #[test]
    fn errors() {
        assert!(matches!(
            parse_regex("", &digits()),
            Err(AutomataError::Syntax { .. })
        ));
        assert!(matches!(
            parse_regex("17", &digits()),
            Err(AutomataError::UnknownSymbol { pos: 1, .. })
        ));
        assert!(parse_regex("(12", &digits()).is_err());
        assert!(parse_regex("12)", &digits()).is_err());
        assert!(parse_regex("1UU2", &digits()).is_err());
        assert!(parse_regex("*", &digits()).is_err());
    }

    #[test]
    fn quoted_symbols() {
        let al = Alphabet::new(vec!["ab", "c"]).unwrap();
        let r = parse_regex("'ab'('c' U 'ab')*", &al).unwrap();
        assert_eq!(
            r,
            Regex::concat(
                Regex::Sym(0),
                Regex::star(Regex::union(Regex::Sym(1), Regex::Sym(0)))
            )
        );
        assert!(parse_regex("ab", &al).is_err());
    }

    #[test]
    fn display_round_trips() {
        let al = digits();
        for text in ["12U13", "41*03", "(1U2)*3", "()U!", "2(3U4)*U04"] {
            let r = parse_regex(text, &al).unwrap();
            let shown = r.display(&al).to_string();
            assert_eq!(parse_regex(&shown, &al).unwrap(), r, "{text} -> {shown}");
        }
    }
}
