//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

mod support;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::strategy::Strategy;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

use qlinked::automata::{min_forbidden_prefixes, parse_regex, Dfa, Regex};
use qlinked::linked::{
    build_forbidden_dfa, lpi_to_spec, series_at_x1, LinkedMachine, LinkedSpec, Lpi,
};
use qlinked::murraymiller::{
    derive_equation, eliminate, normalize_equation, reorder, triangularize, QDifferenceEquation,
};
use qlinked::nandi;
use qlinked::partitions::{
    count_class_series, for_each_partition, in_class, satisfies_nandi, satisfies_nandi_mult,
    satisfies_nandi_parts, NandiClass, Partition,
};
use qlinked::qalgebra::QSeries;
use qlinked::qseries::{
    class_product, closed_form_i, double_sum, euler_check, evaluate_x1, g_recurrence_residual,
    h_equation_residual, i_recurrence_residual, reference_g_equation_residual,
    remark_single_sum_check, slater_check, solve_equation, transform_chain, untransform,
    EulerIdentity, SLATER_PARAMS,
};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ints(s: &QSeries) -> Vec<BigInt> {
    s.integer_coeffs().expect("integer series")
}

fn c1_minimal_dfa() -> Outcome {
    let d = build_forbidden_dfa(&nandi::spec());
    ensure(d.num_states() == 8, || format!("{} states", d.num_states()))?;
    ensure(d.accept_states().len() == 1, || format!("accept states {:?}", d.accept_states()))?;
    let iso = d
        .isomorphism(&nandi::table_dfa())
        .ok_or("not isomorphic to the reference table")?;
    let perm = iso.iter().enumerate().map(|(v, w)| format!("q{v}->q{w}")).collect::<Vec<_>>();
    Ok(format!("8 states, accept q{}; permutation {}", d.accept_states()[0], perm.join(" ")))
}

fn c2_state_identification() -> Outcome {
    let spec = nandi::spec();
    let machine = LinkedMachine::new(spec.clone());
    let d = machine.dfa();
    let al = spec.alphabet();
    let x = Dfa::from_regex(&Regex::concat(Regex::any_star(al), spec.forbidden_patterns().clone()), al);
    let iso = d.isomorphism(&nandi::table_dfa()).ok_or("no isomorphism")?;
    let mut states = Vec::new();
    for (a, prefixes) in nandi::CLASS_PREFIXES.iter().enumerate() {
        let extra = parse_regex(prefixes, al).map_err(|e| e.to_string())?;
        let v = machine.state_for_class(&extra).ok_or_else(|| format!("no state for {prefixes}"))?;
        ensure(!d.is_accept(v), || format!("q{v} accepts"))?;
        ensure(iso[v] == nandi::CLASS_STATES[a], || format!("class {} at q{v}", a + 1))?;
        // restarting at v is the machine built with the prefixes forbidden
        let text = nandi::SPEC_TEXT.replace(
            "forbidden_prefixes = \"\"",
            &format!("forbidden_prefixes = \"{prefixes}\""),
        );
        let with_prefixes = LinkedSpec::from_toml(&text).map_err(|e| e.to_string())?;
        let restarted = d.restart(v).map_err(|e| e.to_string())?;
        ensure(restarted.equivalent(&build_forbidden_dfa(&with_prefixes)).unwrap(), || {
            format!("restart at q{v} differs from the class machine")
        })?;
        // and its minimal forbidden prefixes are the class prefixes
        let xv = min_forbidden_prefixes(d, v, &x).map_err(|e| e.to_string())?;
        ensure(xv.equivalent(&Dfa::from_regex(&extra, al)).unwrap(), || {
            format!("X_q{v} is not {prefixes}")
        })?;
        states.push(v);
    }
    ensure(states[0] != states[1] && states[1] != states[2] && states[0] != states[2], || {
        format!("states not distinct: {states:?}")
    })?;
    Ok(format!("classes 1,2,3 at q{}, q{}, q{}", states[0], states[1], states[2]))
}

fn c3_system() -> Outcome {
    let spec = nandi::spec();
    let machine = LinkedMachine::new(spec);
    let sys = machine.derive_system();
    let iso = machine.dfa().isomorphism(&nandi::table_dfa()).ok_or("no isomorphism")?;
    let order: Vec<usize> = nandi::SYSTEM_LABELS
        .iter()
        .map(|&r| sys.labels().iter().position(|&l| iso[l] == r).ok_or("label missing"))
        .collect::<Result<_, _>>()?;
    let reference = nandi::reference_system();
    ensure(sys.size() == 7, || format!("{} rows", sys.size()))?;
    ensure(sys.permuted(&order).matrix() == reference.matrix(), || "matrix differs".into())?;
    ensure(sys.seed() == reference.seed(), || "seed differs".into())?;
    Ok(format!("7x7 entrywise equal; row order {order:?}"))
}

fn c4_murray_miller() -> Outcome {
    let reference = nandi::reference_system();
    let derived = LinkedMachine::new(nandi::spec()).derive_system();
    let iso = build_forbidden_dfa(&nandi::spec())
        .isomorphism(&nandi::table_dfa())
        .ok_or("no isomorphism")?;
    let mut coefficients = 0;
    for a in 0..3 {
        let sys = reorder(&reference, &nandi::ORDERINGS[a]).map_err(|e| e.to_string())?;
        let tri = triangularize(sys.matrix(), sys.step()).map_err(|e| e.to_string())?;
        ensure(tri.size == nandi::STOP, || format!("a={} stops at {}", a + 1, tri.size))?;
        ensure(tri.matrix == nandi::triangular(a), || format!("P(5) differs for a={}", a + 1))?;
        let eq = normalize_equation(&eliminate(&tri, sys.step()).map_err(|e| e.to_string())?);
        let want = QDifferenceEquation::new(2, 0, nandi::equation(a));
        ensure(eq == want, || format!("equation differs for a={}:\n{eq}", a + 1))?;
        coefficients += eq.coeffs().len();
        // second route: the derived system with the class state moved first
        let v = iso.iter().position(|&w| w == nandi::CLASS_STATES[a]).ok_or("state missing")?;
        let other = derive_equation(&derived, v).map_err(|e| e.to_string())?;
        ensure(other == want, || format!("canonical ordering differs for a={}", a + 1))?;
    }
    Ok(format!("stops at s=5 for a=1,2,3; P(5) and {coefficients} coefficients equal"))
}

fn c5_grand_identity() -> Outcome {
    const T: usize = 60;
    let brute: Vec<Vec<u64>> = std::thread::scope(|s| {
        let hs: Vec<_> = NandiClass::ALL
            .iter()
            .map(|&c| s.spawn(move || count_class_series(c, T as u32)))
            .collect();
        hs.into_iter().map(|h| h.join().unwrap()).collect()
    });
    for a in 1..=3 {
        let product = class_product(a, T).unwrap();
        let b = QSeries::from_integers(brute[a - 1].iter().map(|&c| BigInt::from(c)));
        let eq = QDifferenceEquation::new(2, 0, nandi::equation(a - 1));
        let f = solve_equation(&eq, T, T).map_err(|e| e.to_string())?;
        let sides = [
            ("brute force", b),
            ("double sum", double_sum(a, T).unwrap()),
            ("equation at x=1", evaluate_x1(&f, T)),
        ];
        for (name, s) in &sides {
            if let Some(k) = s.first_mismatch(&product) {
                return Err(format!("a={a}: {name} differs from the product at q^{k}"));
            }
        }
    }
    Ok(format!("four series agree for a=1,2,3 through q^{T}"))
}

fn c6_encodings() -> Outcome {
    let spec = nandi::spec();
    let machine = LinkedMachine::new(spec);
    let iso = machine.dfa().isomorphism(&nandi::table_dfa()).ok_or("no isomorphism")?;
    let class_state = |a: usize| iso.iter().position(|&w| w == nandi::CLASS_STATES[a]).unwrap();
    let start = machine.dfa().start();
    let mut checked = 0usize;
    let mut failure = None;
    for n in 0..=30 {
        for_each_partition(n, |parts| {
            if failure.is_some() {
                return;
            }
            let p = Partition::new(parts.to_vec()).unwrap();
            let direct = satisfies_nandi(&p);
            if satisfies_nandi_parts(parts) != direct
                || satisfies_nandi_mult(&p.to_multiplicities()) != direct
                || machine.member(&p, start).unwrap() != direct
            {
                failure = Some(format!("(N1)-(N6) disagree on {parts:?}"));
                return;
            }
            for (a, class) in NandiClass::ALL.iter().enumerate() {
                if machine.member(&p, class_state(a)).unwrap() != in_class(&p, *class) {
                    failure = Some(format!("class {} disagrees on {parts:?}", a + 1));
                    return;
                }
            }
            checked += 1;
        });
    }
    match failure {
        Some(f) => Err(f),
        None => Ok(format!("{checked} partitions of weight <= 30 agree")),
    }
}

fn c7_transform_chain() -> Outcome {
    for a in 1..=3 {
        let chain = transform_chain(a, 12, 40).map_err(|e| e.to_string())?;
        for m in 0..=10 {
            ensure(chain.i.coeff(m) == closed_form_i(chain.params, m as usize, 40), || {
                format!("a={a}: i_{m} differs from the closed form")
            })?;
        }
        ensure(i_recurrence_residual(&chain).iter().all(QSeries::is_zero), || {
            format!("a={a}: I recurrence residual nonzero")
        })?;
        let small = transform_chain(a, 15, 30).map_err(|e| e.to_string())?;
        ensure(untransform(small.params, &small.i) == small.f, || {
            format!("a={a}: inverting the transforms does not give F")
        })?;
        if a == 1 {
            ensure(g_recurrence_residual(&chain.g).iter().all(QSeries::is_zero), || {
                "g recurrence residual nonzero".into()
            })?;
            ensure(reference_g_equation_residual(&chain.g).is_zero(), || {
                "G equation residual nonzero".into()
            })?;
            ensure(h_equation_residual(&chain.h).is_zero(), || "H equation residual nonzero".into())?;
        }
    }
    Ok("i_M closed form M <= 10 for a=1,2,3; g, G, H, I residuals zero at (12,40)".into())
}

fn c8_classical() -> Outcome {
    const T: usize = 40;
    for (b, s, t) in SLATER_PARAMS {
        ensure(slater_check(b, s, t, T), || format!("Slater ({b},{s},{t})"))?;
    }
    let one = BigRational::from_integer(1.into());
    for which in [EulerIdentity::A, EulerIdentity::B] {
        for k in [1, 2] {
            ensure(euler_check(which, &one, k, T).unwrap(), || format!("Euler {which:?} at x=q^{k}"))?;
        }
    }
    for a in 1..=3 {
        ensure(remark_single_sum_check(a, T).unwrap(), || format!("single sums for a={a}"))?;
    }
    Ok(format!("3 Slater, 4 Euler, 3 single-sum checks through q^{T}"))
}

fn run_cases<S, F>(name: &str, cases: u32, strategy: S, check: F) -> Result<(), String>
where
    S: Strategy,
    F: Fn(S::Value) -> support::Check,
{
    let rng = TestRng::deterministic_rng(RngAlgorithm::ChaCha);
    let mut runner = TestRunner::new_with_rng(
        Config {
            cases,
            failure_persistence: None,
            ..Config::default()
        },
        rng,
    );
    runner.run(&strategy, check).map_err(|e| format!("{name}: {e}"))
}

fn c9_properties() -> Outcome {
    run_cases("minimization", 128, support::sized_regex(), |(k, r)| support::minimization(k, &r))?;
    run_cases(
        "ring axioms",
        256,
        (support::ratfunc(), support::ratfunc(), support::ratfunc()),
        |(a, b, c)| support::ring_axioms(&a, &b, &c),
    )?;
    run_cases(
        "elimination",
        128,
        (support::random_system(), 0usize..3),
        |((step, ones, terms), target)| {
            support::elimination(&support::build_system(step, &ones, &terms), target, 25)
        },
    )?;
    run_cases(
        "polynomial gcd",
        256,
        (support::bipoly(3, 4, 4), support::bipoly(3, 4, 4), support::nonzero_bipoly()),
        |(a, b, c)| support::gcd_divides(&a, &b, &c),
    )?;
    run_cases("render round trip", 256, (support::ratfunc(), support::bipoly(3, 5, 5)), |(a, p)| {
        support::render_round_trip(&a, &p)
    })?;
    run_cases(
        "Appell partial sums",
        256,
        (proptest::collection::vec(-20i64..=20, 1..=9), 0usize..6),
        |(a, extra)| support::appell(&a, extra),
    )?;
    run_cases(
        "oplus",
        256,
        (support::partition(), support::partition(), support::partition()),
        |(p, q, r)| support::oplus_monoid(&p, &q, &r),
    )?;

    let lpi = Lpi {
        m: 1,
        small: vec![Partition::empty(), Partition::new(vec![1]).unwrap()],
        linking: vec![vec![0, 1], vec![0, 1]],
        span: vec![1, 2],
    };
    let sys = LinkedMachine::new(lpi_to_spec(&lpi).map_err(|e| e.to_string())?).derive_system();
    let got = ints(&series_at_x1(&sys, sys.labels()[0], 20).map_err(|e| e.to_string())?);
    let brute: Vec<BigInt> = (0..=20)
        .map(|n| {
            let mut c = 0u32;
            for_each_partition(n, |p| c += p.windows(2).all(|w| w[0] - w[1] >= 2) as u32);
            BigInt::from(c)
        })
        .collect();
    ensure(got == brute, || "difference-2 counts differ".into())?;
    Ok("128 regexes, 256 ring triples, 128 3x3 systems through q^25, gcd/render/Appell/oplus; \
        difference-2 counts through q^20"
        .into())
}

/// Name, runtime budget and check.
type Criterion = (&'static str, Duration, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 9] = [
        ("minimal DFA reproduction", Duration::from_secs(1), c1_minimal_dfa),
        ("state identification", Duration::from_secs(1), c2_state_identification),
        ("system reproduction", Duration::from_secs(1), c3_system),
        ("Murray-Miller golden", Duration::from_secs(5), c4_murray_miller),
        ("grand identity through q^60", Duration::from_secs(60), c5_grand_identity),
        ("oracle equivalence of encodings", Duration::from_secs(20), c6_encodings),
        ("transform chain and closed form", Duration::from_secs(5), c7_transform_chain),
        ("Slater, Euler and single-sum checks", Duration::from_secs(5), c8_classical),
        ("property suites", Duration::from_secs(120), c9_properties),
    ];
    let mut failed = 0;
    for (i, (name, budget, f)) in criteria.into_iter().enumerate() {
        let t = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(f))
            .unwrap_or_else(|_| Err("panicked".to_string()));
        let elapsed = t.elapsed();
        let (pass, detail) = match result {
            Ok(d) if elapsed <= budget => (true, d),
            Ok(d) => (false, format!("{d}; over budget")),
            Err(e) => (false, e),
        };
        if !pass {
            failed += 1;
        }
        println!(
            "{} {}. {name} [{:.3}s / {}s] {detail}",
            if pass { "PASS" } else { "FAIL" },
            i + 1,
            elapsed.as_secs_f64(),
            budget.as_secs()
        );
    }
    println!("{} of 9 criteria passed", 9 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
