use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::automata::{Dfa, Regex};
use crate::partitions::Partition;
use crate::qalgebra::{BiPoly, RationalFunction, RfMatrix};

use super::spec::LinkedSpec;
use super::LinkedError;

/// The minimal automaton for `I^* X I^* ∪ X' I^*`, in canonical numbering.
pub fn build_forbidden_dfa(spec: &LinkedSpec) -> Dfa {
    forbidden_language(spec, spec.forbidden_prefixes())
}

fn forbidden_language(spec: &LinkedSpec, prefixes: &Regex) -> Dfa {
    let al = spec.alphabet();
    let any = Regex::any_star(al);
    let patterns = Regex::concat(
        Regex::concat(any.clone(), spec.forbidden_patterns().clone()),
        any.clone(),
    );
    let r = Regex::union(patterns, Regex::concat(prefixes.clone(), any));
    Dfa::from_regex(&r, al).minimize()
}

/// A system `F_v(x) = sum_u A[v][u] F_u(x q^m)` together with the constant
/// terms `F_v(0)` that pin down its power series solution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QDifferenceSystem {
    step: u32,
    labels: Vec<usize>,
    matrix: RfMatrix,
    seed: Vec<BigRational>,
}

impl QDifferenceSystem {
    /// `seed[v]` is `F_v(0)`; it must be a fixed point of `A(0, q)`.
    pub fn new(
        step: u32,
        labels: Vec<usize>,
        matrix: RfMatrix,
        seed: Vec<BigRational>,
    ) -> Result<Self, LinkedError> {
        let n = labels.len();
        if step == 0 {
            return Err(LinkedError::InvalidSystem("step must be positive".into()));
        }
        if !matrix.is_square() || matrix.rows() != n || seed.len() != n {
            return Err(LinkedError::InvalidSystem("dimension mismatch".into()));
        }
        for v in 0..n {
            let mut acc = RationalFunction::zero();
            for u in 0..n {
                let e = matrix.get(v, u);
                let p = e.as_poly().ok_or(LinkedError::NotPolynomial)?;
                let const_x: BiPoly = BiPoly::from_terms(
                    p.terms()
                        .filter(|&(dx, _, _)| dx == 0)
                        .map(|(dx, dq, c)| ((dx, dq), c.clone())),
                );
                acc = &acc + &(&RationalFunction::from_poly(const_x) * &rational_constant(&seed[u]));
            }
            if acc != rational_constant(&seed[v]) {
                return Err(LinkedError::InvalidSystem(format!(
                    "seed is not fixed by row {v} at x = 0"
                )));
            }
        }
        Ok(QDifferenceSystem {
            step,
            labels,
            matrix,
            seed,
        })
    }

    pub fn step(&self) -> u32 {
        self.step
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn matrix(&self) -> &RfMatrix {
        &self.matrix
    }

    pub fn seed(&self) -> &[BigRational] {
        &self.seed
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn row_of(&self, label: usize) -> Option<usize> {
        self.labels.iter().position(|&l| l == label)
    }

    /// Rows and columns reordered so that row `i` is the old row `order[i]`.
    pub fn permuted(&self, order: &[usize]) -> QDifferenceSystem {
        QDifferenceSystem {
            step: self.step,
            labels: order.iter().map(|&i| self.labels[i]).collect(),
            matrix: self.matrix.permute(order),
            seed: order.iter().map(|&i| self.seed[i].clone()).collect(),
        }
    }
}

fn rational_constant(c: &BigRational) -> RationalFunction {
    RationalFunction::new(
        BiPoly::constant(c.numer().clone()),
        BiPoly::constant(c.denom().clone()),
    )
    .expect("denominators of rationals are nonzero")
}

impl fmt::Display for QDifferenceSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = self.step;
        for (i, &v) in self.labels.iter().enumerate() {
            let terms: Vec<String> = (0..self.size())
                .filter(|&j| !self.matrix.get(i, j).is_zero())
                .map(|j| {
                    let e = self.matrix.get(i, j);
                    let coeff = if e.is_one() {
                        String::new()
                    } else if e.numer().num_terms() > 1 {
                        format!("({e})*")
                    } else {
                        format!("{e}*")
                    };
                    format!("{coeff}F{}(x*q^{m})", self.labels[j])
                })
                .collect();
            let rhs = if terms.is_empty() {
                "0".to_string()
            } else {
                terms.join(" + ")
            };
            writeln!(f, "F{v}(x) = {rhs}")?;
        }
        Ok(())
    }
}

/// A spec together with its forbidden-language automaton.
#[derive(Clone, Debug)]
pub struct LinkedMachine {
    spec: LinkedSpec,
    dfa: Dfa,
}

impl LinkedMachine {
    pub fn new(spec: LinkedSpec) -> Self {
        let dfa = build_forbidden_dfa(&spec);
        LinkedMachine { spec, dfa }
    }

    pub fn spec(&self) -> &LinkedSpec {
        &self.spec
    }

    pub fn dfa(&self) -> &Dfa {
        &self.dfa
    }

    /// Does the all-trivial infinite tail from `v` avoid the accept states?
    fn trivial_tail_survives(&self, v: usize) -> bool {
        let Some(z) = self.spec.trivial_symbol() else {
            return false;
        };
        let mut q = v;
        for _ in 0..=self.dfa.num_states() {
            if self.dfa.is_accept(q) {
                return false;
            }
            q = self.dfa.step(q, z);
        }
        true
    }

    /// Reachable non-accept states in canonical order.
    pub fn live_states(&self) -> Vec<usize> {
        let reach = self.dfa.reachable();
        (0..self.dfa.num_states())
            .filter(|&v| reach[v] && !self.dfa.is_accept(v))
            .collect()
    }

    pub fn derive_system(&self) -> QDifferenceSystem {
        let labels = self.live_states();
        let n = labels.len();
        let mut matrix = RfMatrix::zeros(n.max(1), n.max(1));
        if n == 0 {
            // the start state accepts: the class is empty
            return QDifferenceSystem {
                step: self.spec.m(),
                labels: vec![self.dfa.start()],
                matrix,
                seed: vec![BigRational::zero()],
            };
        }
        for (i, &v) in labels.iter().enumerate() {
            let mut row: Vec<BiPoly> = vec![BiPoly::zero(); n];
            for a in 0..self.spec.alphabet().len() {
                let u = self.dfa.step(v, a);
                if let Some(j) = labels.iter().position(|&l| l == u) {
                    row[j] = &row[j] + &self.spec.pi(a).wt();
                }
            }
            for (j, p) in row.into_iter().enumerate() {
                matrix.set(i, j, RationalFunction::from_poly(p));
            }
        }
        let seed = labels
            .iter()
            .map(|&v| {
                if self.trivial_tail_survives(v) {
                    BigRational::one()
                } else {
                    BigRational::zero()
                }
            })
            .collect();
        QDifferenceSystem {
            step: self.spec.m(),
            labels,
            matrix,
            seed,
        }
    }

    /// The non-accept state `v` whose restarted language equals
    /// `I^* X I^* ∪ extra I^*`, if any.
    pub fn state_for_class(&self, extra_prefixes: &Regex) -> Option<usize> {
        let target = forbidden_language(&self.spec, extra_prefixes);
        self.live_states().into_iter().find(|&v| {
            self.dfa
                .restart(v)
                .expect("live states exist")
                .equivalent(&target)
                .expect("same alphabet")
        })
    }

    /// Membership of `p` in the class carved out from state `v`: its
    /// encoding followed by trivial symbols never reaches an accept state.
    pub fn member(&self, p: &Partition, v: usize) -> Result<bool, LinkedError> {
        if v >= self.dfa.num_states() {
            return Err(LinkedError::UnknownState(v));
        }
        if self.spec.trivial_symbol().is_none() {
            return Err(LinkedError::NoTrivialSymbol);
        }
        let word = match self.spec.encode(p) {
            Ok(w) => w,
            Err(LinkedError::BlockNotInImage { .. }) => return Ok(false),
            Err(e) => return Err(e),
        };
        let mut q = v;
        for &a in &word {
            if self.dfa.is_accept(q) {
                return Ok(false);
            }
            q = self.dfa.step(q, a);
        }
        Ok(self.trivial_tail_survives(q))
    }
}

pub fn derive_system(spec: &LinkedSpec) -> QDifferenceSystem {
    LinkedMachine::new(spec.clone()).derive_system()
}

pub fn state_for_class(spec: &LinkedSpec, extra_prefixes: &Regex) -> Option<usize> {
    LinkedMachine::new(spec.clone()).state_for_class(extra_prefixes)
}

pub fn member(p: &Partition, spec: &LinkedSpec, v: usize) -> Result<bool, LinkedError> {
    LinkedMachine::new(spec.clone()).member(p, v)
}
