use super::{AutomataError, Dfa};

/// The least set `X_v` of forbidden prefixes for the machine restarted at
/// `v`, given `x_pattern` recognizing `Sigma^* X`:
/// `X_v = (L(M_v) ∩ L(M_v)^c Sigma) \ Sigma^* X`.
///
/// `v` must be reachable and non-accepting.
pub fn min_forbidden_prefixes(m: &Dfa, v: usize, x_pattern: &Dfa) -> Result<Dfa, AutomataError> {
    if v >= m.num_states() {
        return Err(AutomataError::UnknownState(v));
    }
    if !m.reachable()[v] {
        return Err(AutomataError::Unreachable(v));
    }
    if m.is_accept(v) {
        return Err(AutomataError::AcceptingState(v));
    }
    let mv = m.restart(v)?;
    let one_symbol = Dfa::from_regex(&super::Regex::any(m.alphabet()), m.alphabet());
    let extended = mv.complement().concat(&one_symbol)?;
    let minimal = mv.intersection(&extended)?;
    Ok(minimal.difference(x_pattern)?.minimize())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::Alphabet;

    #[test]
    fn single_pattern_machine() {
        // avoid the factor 11 over {0,1}, and forbid starting with 0
        let al = Alphabet::digits(2);
        let x = Dfa::from_regex_text("(0U1)*11", &al).unwrap();
        let lang = Dfa::from_regex_text("(0U1)*11(0U1)*U0(0U1)*", &al)
            .unwrap()
            .minimize();
        let xs = min_forbidden_prefixes(&lang, lang.start(), &x).unwrap();
        assert!(xs.equivalent(&Dfa::from_regex_text("0", &al).unwrap()).unwrap());
    }

    #[test]
    fn rejects_accepting_state() {
        let al = Alphabet::digits(2);
        let x = Dfa::from_regex_text("(0U1)*11", &al).unwrap();
        let lang = Dfa::from_regex_text("(0U1)*11(0U1)*", &al).unwrap().minimize();
        let acc = lang.accept_states()[0];
        assert_eq!(
            min_forbidden_prefixes(&lang, acc, &x),
            Err(AutomataError::AcceptingState(acc))
        );
    }
}
