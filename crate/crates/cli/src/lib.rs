//! Command-line front end: automaton inspection, equation derivation and
//! identity verification.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use qlinked::automata::{min_forbidden_prefixes, parse_regex, Alphabet, Dfa, Regex};
use qlinked::linked::{LinkedMachine, LinkedSpec};
use qlinked::murraymiller::{eliminate, normalize_equation, reorder_first, triangularize};
use qlinked::nandi;
use qlinked::partitions::{count_class_series, NandiClass};
use qlinked::qalgebra::{render_rational, QSeries, RfMatrix};
use qlinked::qseries::{
    class_product, closed_form_i, double_sum, euler_sides, evaluate_x1, remark_single_sum_check,
    slater_sides, solve_equation, transform_chain, EulerIdentity, SLATER_PARAMS,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Structured,
}

#[derive(Debug, Parser)]
#[command(name = "qlinked", about = "q-difference equations for regularly linked partition sets")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build and inspect the forbidden-language automaton.
    Dfa {
        #[arg(long)]
        spec: PathBuf,
        #[command(subcommand)]
        action: DfaAction,
    },
    /// Derive the system and the single equation for one class.
    Derive {
        #[arg(long)]
        spec: PathBuf,
        /// Extra forbidden prefixes defining the class; `!` (empty) picks the
        /// start state.
        #[arg(long, default_value = "!")]
        target: String,
    },
    /// Check the product, sum and equation sides of the mod 14 identities.
    Verify {
        /// 1, 2, 3 or all
        class: String,
        #[arg(long, default_value_t = 60)]
        order: usize,
        #[arg(long)]
        x_order: Option<usize>,
        /// Spec to derive the equations from (defaults to the built-in one).
        #[arg(long)]
        spec: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
enum DfaAction {
    /// Subset construction, before minimization.
    Build,
    /// The minimal automaton.
    Minimize,
    /// Transition table of the minimal automaton.
    Table,
    /// Minimal forbidden prefixes of the machine restarted at a state.
    Prefixes { state: String },
}

/// Output of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn usage(msg: impl Into<String>) -> Self {
        Outcome {
            code: EXIT_USAGE,
            stdout: String::new(),
            stderr: msg.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DfaReport {
    pub alphabet: Vec<String>,
    pub states: usize,
    pub start: usize,
    pub accept: Vec<usize>,
    pub table: Vec<Vec<usize>>,
    /// The accepted words, when the language is finite.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub words: Option<Vec<String>>,
}

impl DfaReport {
    pub fn from_dfa(d: &Dfa) -> Self {
        let words = d.is_finite().then(|| {
            d.words_up_to(d.num_states())
                .iter()
                .map(|w| d.alphabet().render_word(w))
                .collect()
        });
        DfaReport {
            alphabet: d.alphabet().symbols().to_vec(),
            states: d.num_states(),
            start: d.start(),
            accept: d.accept_states(),
            table: d.transitions().to_vec(),
            words,
        }
    }

    /// Rebuilds the automaton described by the report.
    pub fn to_dfa(&self) -> Result<Dfa, qlinked::automata::AutomataError> {
        let accept = (0..self.states).map(|v| self.accept.contains(&v)).collect();
        Dfa::new(
            Alphabet::new(self.alphabet.clone())?,
            self.table.clone(),
            self.start,
            accept,
        )
    }

    fn to_text(&self) -> String {
        let mut s = String::new();
        let width = self.states.to_string().len() + 1;
        write!(s, "{:>w$} |", "v", w = width + 2).unwrap();
        for a in &self.alphabet {
            write!(s, " {:>w$}", a, w = width).unwrap();
        }
        s.push('\n');
        for (v, row) in self.table.iter().enumerate() {
            let mark = match (v == self.start, self.accept.contains(&v)) {
                (true, true) => ">*",
                (true, false) => "> ",
                (false, true) => " *",
                (false, false) => "  ",
            };
            write!(s, "{mark}{:>w$} |", format!("q{v}"), w = width).unwrap();
            for t in row {
                write!(s, " {:>w$}", format!("q{t}"), w = width).unwrap();
            }
            s.push('\n');
        }
        writeln!(s, "states: {}, start: q{}, accept: {}", self.states, self.start, self.accept.iter().map(|v| format!("q{v}")).collect::<Vec<_>>().join(" ")).unwrap();
        if let Some(words) = &self.words {
            s.push_str(&words_line(words));
        }
        s
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriangularReport {
    pub size: usize,
    pub swaps: Vec<(usize, usize)>,
    pub rows: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeriveReport {
    pub state: usize,
    pub step: u32,
    /// Row labels after moving the target first.
    pub labels: Vec<usize>,
    pub system: Vec<Vec<String>>,
    pub triangular: TriangularReport,
    /// `p_0, p_1, ...` of `sum_i p_i(x) F(x q^{step i}) = 0`.
    pub equation: Vec<String>,
}

fn matrix_strings(m: &RfMatrix) -> Vec<Vec<String>> {
    m.to_rows()
        .iter()
        .map(|r| r.iter().map(render_rational).collect())
        .collect()
}

fn matrix_text(rows: &[Vec<String>]) -> String {
    let ncols = rows.first().map_or(0, Vec::len);
    let widths: Vec<usize> = (0..ncols)
        .map(|j| rows.iter().map(|r| r[j].len()).max().unwrap_or(0))
        .collect();
    let mut s = String::new();
    for r in rows {
        s.push_str("[ ");
        for (j, e) in r.iter().enumerate() {
            write!(s, "{:>w$}  ", e, w = widths[j]).unwrap();
        }
        s.push_str("]\n");
    }
    s
}

impl DeriveReport {
    fn to_text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "target state: q{}", self.state).unwrap();
        writeln!(
            s,
            "system F(x) = M F(x q^{}), rows {}:",
            self.step,
            self.labels.iter().map(|l| format!("q{l}")).collect::<Vec<_>>().join(" ")
        )
        .unwrap();
        s.push_str(&matrix_text(&self.system));
        writeln!(s, "triangularized (stops at s = {}):", self.triangular.size).unwrap();
        s.push_str(&matrix_text(&self.triangular.rows));
        writeln!(s, "equation sum_i p_i(x) F(x q^({} i)) = 0:", self.step).unwrap();
        for (i, p) in self.equation.iter().enumerate() {
            writeln!(s, "  p_{} = {}", self.step as usize * i, p).unwrap();
        }
        s
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub class: Option<usize>,
    pub passed: bool,
    /// Lowest exponent of `q` where the two sides differ.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub first_mismatch: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Check {
    fn compare(name: &str, class: Option<usize>, lhs: &QSeries, rhs: &QSeries) -> Check {
        let first_mismatch = lhs.first_mismatch(rhs);
        Check {
            name: name.to_string(),
            class,
            passed: first_mismatch.is_none(),
            first_mismatch,
            detail: None,
        }
    }

    fn failed(name: &str, class: Option<usize>, detail: String) -> Check {
        Check {
            name: name.to_string(),
            class,
            passed: false,
            first_mismatch: None,
            detail: Some(detail),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub order: usize,
    pub x_order: usize,
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    fn to_text(&self) -> String {
        let mut s = String::new();
        for c in &self.checks {
            let status = if c.passed { "PASS" } else { "FAIL" };
            let class = c.class.map(|a| format!("[a={a}] ")).unwrap_or_default();
            write!(s, "{status} {class}{} through q^{}", c.name, self.order).unwrap();
            if let Some(k) = c.first_mismatch {
                write!(s, " (first mismatch at q^{k})").unwrap();
            }
            if let Some(d) = &c.detail {
                write!(s, " ({d})").unwrap();
            }
            s.push('\n');
        }
        let failed = self.checks.iter().filter(|c| !c.passed).count();
        writeln!(s, "{} checks, {} failed", self.checks.len(), failed).unwrap();
        s
    }
}

fn load_spec(path: &Path) -> Result<LinkedSpec, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    LinkedSpec::from_toml(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn parse_state(text: &str) -> Result<usize, String> {
    let digits = text.strip_prefix('q').unwrap_or(text);
    digits
        .parse()
        .map_err(|_| format!("expected a state like q7 or 7, got {text:?}"))
}

fn words_line(words: &[String]) -> String {
    if words.is_empty() {
        "words: (none)\n".to_string()
    } else {
        format!("words: {}\n", words.join(" "))
    }
}

fn emit<T: Serialize>(format: Format, report: &T, text: impl FnOnce(&T) -> String) -> String {
    match format {
        Format::Text => text(report),
        Format::Structured => {
            let mut s = serde_json::to_string_pretty(report).expect("reports serialize");
            s.push('\n');
            s
        }
    }
}

fn cmd_dfa(format: Format, spec: &Path, action: &DfaAction) -> Outcome {
    let spec = match load_spec(spec) {
        Ok(s) => s,
        Err(e) => return Outcome::usage(e),
    };
    let machine = LinkedMachine::new(spec.clone());
    let dfa = match action {
        DfaAction::Build => {
            let al = spec.alphabet();
            let any = Regex::any_star(al);
            let r = Regex::union(
                Regex::concat(
                    Regex::concat(any.clone(), spec.forbidden_patterns().clone()),
                    any.clone(),
                ),
                Regex::concat(spec.forbidden_prefixes().clone(), any),
            );
            Dfa::from_regex(&r, al)
        }
        DfaAction::Minimize | DfaAction::Table => machine.dfa().clone(),
        DfaAction::Prefixes { state } => {
            let v = match parse_state(state) {
                Ok(v) => v,
                Err(e) => return Outcome::usage(e),
            };
            let al = spec.alphabet();
            let x = Dfa::from_regex(
                &Regex::concat(Regex::any_star(al), spec.forbidden_patterns().clone()),
                al,
            );
            match min_forbidden_prefixes(machine.dfa(), v, &x) {
                Ok(d) => d,
                Err(e) => return Outcome::usage(format!("state {state}: {e}")),
            }
        }
    };
    let report = DfaReport::from_dfa(&dfa);
    let stdout = match action {
        DfaAction::Table => emit(format, &report, DfaReport::to_text),
        _ => emit(format, &report, |r| {
            format!("{}{}", dfa.to_table_text(), r.words.as_deref().map(words_line).unwrap_or_default())
        }),
    };
    Outcome {
        code: EXIT_OK,
        stdout,
        stderr: String::new(),
    }
}

/// Runs the derivation pipeline for the class cut out by `target`.
pub fn derive_report(spec: &LinkedSpec, target: &str) -> Result<DeriveReport, String> {
    let extra = parse_regex(target, spec.alphabet()).map_err(|e| format!("target: {e}"))?;
    let machine = LinkedMachine::new(spec.clone());
    let state = machine
        .state_for_class(&extra)
        .ok_or_else(|| format!("no state of the automaton matches the target {target:?}"))?;
    let sys = reorder_first(&machine.derive_system(), state).map_err(|e| e.to_string())?;
    let tri = triangularize(sys.matrix(), sys.step()).map_err(|e| e.to_string())?;
    let eq = normalize_equation(&eliminate(&tri, sys.step()).map_err(|e| e.to_string())?);
    Ok(DeriveReport {
        state,
        step: sys.step(),
        labels: sys.labels().to_vec(),
        system: matrix_strings(sys.matrix()),
        triangular: TriangularReport {
            size: tri.size,
            swaps: tri.swaps.clone(),
            rows: matrix_strings(&tri.matrix),
        },
        equation: eq.coefficient_strings(),
    })
}

fn cmd_derive(format: Format, spec: &Path, target: &str) -> Outcome {
    let spec = match load_spec(spec) {
        Ok(s) => s,
        Err(e) => return Outcome::usage(e),
    };
    match derive_report(&spec, target) {
        Ok(r) => Outcome {
            code: EXIT_OK,
            stdout: emit(format, &r, DeriveReport::to_text),
            stderr: String::new(),
        },
        Err(e) => Outcome::usage(e),
    }
}

fn class_checks(spec: &LinkedSpec, a: usize, order: usize, x_order: usize) -> Vec<Check> {
    let class = NandiClass::from_index(a as u32).expect("class index checked");
    let product = class_product(a, order).expect("class index checked");
    let brute = QSeries::from_integers(count_class_series(class, order as u32).into_iter().map(num_bigint::BigInt::from));
    let mut checks = vec![
        Check::compare("brute-force count = product", Some(a), &brute, &product),
        Check::compare(
            "double sum = product",
            Some(a),
            &double_sum(a, order).expect("class index checked"),
            &product,
        ),
    ];
    let name = "derived equation at x=1 = product";
    checks.push(
        match derive_report(spec, nandi::CLASS_PREFIXES[a - 1]).and_then(|r| {
            let eq = qlinked::murraymiller::QDifferenceEquation::new(
                r.step,
                0,
                r.equation
                    .iter()
                    .map(|c| qlinked::qalgebra::parse_rational(c).map_err(|e| e.to_string()))
                    .collect::<Result<_, _>>()?,
            );
            solve_equation(&eq, x_order, order).map_err(|e| e.to_string())
        }) {
            Ok(f) => Check::compare(name, Some(a), &evaluate_x1(&f, order), &product),
            Err(e) => Check::failed(name, Some(a), e),
        },
    );
    let (b, s, t) = SLATER_PARAMS[a - 1];
    let (lhs, rhs) = slater_sides(b, s, t, order);
    checks.push(Check::compare(&format!("Slater (b,s,t)=({b},{s},{t})"), Some(a), &lhs, &rhs));
    checks.push(Check {
        name: "single-sum remark identities".into(),
        class: Some(a),
        passed: remark_single_sum_check(a, order).expect("class index checked"),
        first_mismatch: None,
        detail: None,
    });
    let m_max = x_order.min(10);
    let name = "i_M closed form";
    checks.push(match transform_chain(a, m_max, order) {
        Ok(c) => {
            let bad = (0..=m_max).find(|&m| c.i.coeff(m as i64) != closed_form_i(c.params, m, order));
            Check {
                name: name.into(),
                class: Some(a),
                passed: bad.is_none(),
                first_mismatch: None,
                detail: bad.map(|m| format!("differs at M = {m}")),
            }
        }
        Err(e) => Check::failed(name, Some(a), e.to_string()),
    });
    checks
}

fn euler_checks(order: usize) -> Vec<Check> {
    let one = num_rational::BigRational::from_integer(1.into());
    let mut out = Vec::new();
    for (which, label) in [(EulerIdentity::A, "A"), (EulerIdentity::B, "B")] {
        for k in [1usize, 2] {
            let (l, r) = euler_sides(which, &one, k, order).expect("positive power");
            let x = if k == 1 { "q".to_string() } else { format!("q^{k}") };
            out.push(Check::compare(&format!("Euler ({label}) at x={x}"), None, &l, &r));
        }
    }
    out
}

/// Runs the checks for the given classes.
pub fn verify_report(
    spec: &LinkedSpec,
    classes: &[usize],
    order: usize,
    x_order: usize,
) -> VerifyReport {
    let per_class: Vec<Vec<Check>> = std::thread::scope(|scope| {
        let handles: Vec<_> = classes
            .iter()
            .map(|&a| scope.spawn(move || class_checks(spec, a, order, x_order)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("check thread"))
            .collect()
    });
    let mut checks: Vec<Check> = per_class.into_iter().flatten().collect();
    checks.extend(euler_checks(order));
    VerifyReport {
        order,
        x_order,
        checks,
    }
}

fn cmd_verify(
    format: Format,
    class: &str,
    order: usize,
    x_order: Option<usize>,
    spec: Option<&Path>,
) -> Outcome {
    let classes = match class {
        "all" => vec![1, 2, 3],
        "1" | "2" | "3" => vec![class.parse().expect("digit")],
        _ => return Outcome::usage(format!("class must be 1, 2, 3 or all, got {class:?}")),
    };
    let spec = match spec {
        Some(p) => match load_spec(p) {
            Ok(s) => s,
            Err(e) => return Outcome::usage(e),
        },
        None => nandi::spec(),
    };
    let report = verify_report(&spec, &classes, order, x_order.unwrap_or(order));
    Outcome {
        code: if report.passed() { EXIT_OK } else { EXIT_MISMATCH },
        stdout: emit(format, &report, VerifyReport::to_text),
        stderr: String::new(),
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            return if code == EXIT_OK {
                Outcome {
                    code,
                    stdout: rendered,
                    stderr: String::new(),
                }
            } else {
                Outcome::usage(rendered)
            };
        }
    };
    match &cli.command {
        Command::Dfa { spec, action } => cmd_dfa(cli.format, spec, action),
        Command::Derive { spec, target } => cmd_derive(cli.format, spec, target),
        Command::Verify {
            class,
            order,
            x_order,
            spec,
        } => cmd_verify(cli.format, class, *order, *x_order, spec.as_deref()),
    }
}
