//! Nandi's partitions as a regularly linked set, with reference data for
//! the derived automaton, system and equations.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::automata::{Alphabet, Dfa};
use crate::linked::{LinkedSpec, QDifferenceSystem};
use crate::qalgebra::{parse_rational, RationalFunction, RfMatrix};

/// Contents of the shipped `nandi.spec`.
pub const SPEC_TEXT: &str = include_str!("../../../nandi.spec");

pub fn spec() -> LinkedSpec {
    LinkedSpec::from_toml(SPEC_TEXT).expect("shipped spec is valid")
}

/// Extra forbidden prefixes carving out the classes `N_1`, `N_2`, `N_3`.
pub const CLASS_PREFIXES: [&str; 3] = ["3U4", "2U4U04", "2U3U4U04U1*03"];

/// Reference transition table: `TABLE[v][j]` is the successor of `q_v` on
/// symbol `j`. Start `q_0`, accept `q_6`.
pub const TABLE: [[usize; 5]; 8] = [
    [0, 1, 2, 3, 4],
    [5, 1, 6, 6, 6],
    [7, 6, 6, 6, 6],
    [5, 1, 6, 3, 6],
    [7, 4, 6, 6, 6],
    [0, 1, 2, 3, 6],
    [6, 6, 6, 6, 6],
    [0, 1, 2, 6, 6],
];
pub const TABLE_START: usize = 0;
pub const TABLE_ACCEPT: usize = 6;

pub fn table_dfa() -> Dfa {
    Dfa::new(
        Alphabet::digits(5),
        TABLE.iter().map(|r| r.to_vec()).collect(),
        TABLE_START,
        (0..8).map(|v| v == TABLE_ACCEPT).collect(),
    )
    .expect("reference table is a valid automaton")
}

/// Reference state of each class `N_1`, `N_2`, `N_3`.
pub const CLASS_STATES: [usize; 3] = [7, 3, 4];

/// Row labels of the reference system, in its column order.
pub const SYSTEM_LABELS: [usize; 7] = [0, 1, 2, 3, 4, 5, 7];

const SYSTEM_ROWS: [[&str; 7]; 7] = [
    ["1", "x*q^2", "x^2*q^4", "x*q", "x^2*q^2", "0", "0"],
    ["0", "x*q^2", "0", "0", "0", "1", "0"],
    ["0", "0", "0", "0", "0", "0", "1"],
    ["0", "x*q^2", "0", "x*q", "0", "1", "0"],
    ["0", "0", "0", "0", "x*q^2", "0", "1"],
    ["1", "x*q^2", "x^2*q^4", "x*q", "0", "0", "0"],
    ["1", "x*q^2", "x^2*q^4", "0", "0", "0", "0"],
];

fn matrix(rows: &[[&str; 7]]) -> RfMatrix {
    RfMatrix::from_rows(
        rows.iter()
            .map(|r| {
                r.iter()
                    .map(|e| parse_rational(e).expect("reference entries parse"))
                    .collect::<Vec<RationalFunction>>()
            })
            .collect(),
    )
    .expect("reference matrices are square")
}

/// The reference system in reference labels (all constant terms 1).
pub fn reference_system() -> QDifferenceSystem {
    QDifferenceSystem::new(
        2,
        SYSTEM_LABELS.to_vec(),
        matrix(&SYSTEM_ROWS),
        vec![BigRational::from_integer(BigInt::from(1)); 7],
    )
    .expect("reference system is consistent")
}

/// Hand-picked row orders (reference labels) for the three classes; with
/// them, triangularization needs no swaps.
pub const ORDERINGS: [[usize; 7]; 3] = [
    [7, 1, 2, 3, 4, 5, 0],
    [3, 1, 2, 4, 7, 5, 0],
    [4, 7, 2, 3, 5, 1, 0],
];

/// Iteration at which triangularization stops for each class.
pub const STOP: usize = 5;

const TRIANGULAR: [[[&str; 7]; 7]; 3] = [
    [
        ["0", "1", "0", "0", "0", "0", "0"],
        ["x^2", "x + 1", "1", "0", "0", "0", "0"],
        ["(-x^3 + x^2)/q^2", "x/q", "1/q", "1", "0", "0", "0"],
        ["-x^2/q^3", "(-x*q^2 + x^2)/q^4", "(-q^2 + x)/q^4", "(-q^2 + x)/q^3", "1", "0", "0"],
        ["-x^3/q^7", "0", "0", "0", "x/q^4", "0", "0"],
        ["0", "1", "0", "q/(x - 1)", "q^3/(-x^2 + x)", "0", "0"],
        ["0", "1", "0", "q/(x - 1)", "q^3/(-x + 1)", "0", "0"],
    ],
    [
        ["x*q", "1", "0", "0", "0", "0", "0"],
        ["x*q", "x + 1", "1", "0", "0", "0", "0"],
        ["0", "0", "0", "1", "0", "0", "0"],
        ["0", "x^2/q^4", "x^2/q^4", "x/q^2", "1", "0", "0"],
        ["0", "(x^2*q^2 - x^3)/q^8", "(x^2*q^2 - x^3)/q^8", "0", "0", "0", "0"],
        ["x*q", "1", "1", "0", "0", "0", "0"],
        ["x*q", "1", "1", "1", "q^2/(x - 1)", "0", "0"],
    ],
    [
        ["x*q^2", "1", "0", "0", "0", "0", "0"],
        ["0", "0", "1", "0", "0", "0", "0"],
        ["x^2*q^2", "x^2", "1", "1", "0", "0", "0"],
        ["0", "0", "x/q^2", "(x*q + x)/q^2", "1", "0", "0"],
        ["0", "0", "(x*q^2 - x^2)/q^5", "(x*q^2 - x^2)/q^5", "0", "0", "0"],
        ["0", "0", "0", "0", "q/(-x^2 + x)", "0", "0"],
        ["x^2*q^2", "0", "1", "1", "-q/(-x + 1)", "0", "0"],
    ],
];

/// Reference matrix at the stopping iteration for class `a` (0-based),
/// under `ORDERINGS[a]`.
pub fn triangular(a: usize) -> RfMatrix {
    matrix(&TRIANGULAR[a])
}

const UNSHIFTED: [[&str; 6]; 3] = [
    [
        "-1",
        "(q^6 + x*(q^2 + q + 1))/q^6",
        "-(x*q^8 + x^2*(q^5 + q^4 + q^3 - 1))/q^12",
        // sign of the x^3 part fixed to agree with the final equation
        "(x^2*q^4 + x^3*(q^5 - q^2 - q - 1))/q^14",
        "x^3*(x - q^2)*(1 + q + q^2)/q^13",
        "-x^3*(x - 1)*(x - q^2)/q^9",
    ],
    [
        "-1",
        "(q^7 + x*(1 + q + q^3))/q^7",
        "-(x*q^7 + x^2*q^2 + x^2)/q^11",
        "(x^2*q^4 - x^3*q^2 - x^3)/q^10",
        "x^3*(x - q^2)*(1 + q^2 + q^3)/q^11",
        "-x^3*(x - 1)*(x - q^2)/q^7",
    ],
    [
        "-1",
        "(q^6 + x*(q^3 + q^2 + 1))/q^6",
        "-(x^2*q^2 + x*q^3 + x^2)/q^7",
        "(x^2*q^4 - x^3*q^2 - x^3)/q^10",
        "x^3*(x - q^2)*(1 + q + q^3)/q^8",
        "-x^3*(x - 1)*(x - q^2)/q^3",
    ],
];

/// Coefficients of `G(x q^{-8}), G(x q^{-6}), ..., G(x q^2)` in the
/// eliminated equation for class `a` (0-based), before the shift
/// `x -> x q^8`.
pub fn unshifted_equation(a: usize) -> Vec<RationalFunction> {
    UNSHIFTED[a]
        .iter()
        .map(|e| parse_rational(e).expect("reference entries parse"))
        .collect()
}

const EQUATIONS: [[&str; 6]; 3] = [
    [
        "1",
        "-1 - x*(q^2 + q^3 + q^4)",
        "x*q^4*(1 - x + x*q^3 + x*q^4 + x*q^5)",
        "x^2*q^6*(-1 + x*q^4*(1 + q + q^2 - q^5))",
        "x^3*q^13*(1 + q + q^2)*(1 - x*q^6)",
        "x^3*q^17*(1 - x*q^6)*(1 - x*q^8)",
    ],
    [
        "1",
        "-1 - x*(q + q^2 + q^4)",
        "x*q^4*(1 + x*q + x*q^3)",
        "x^2*q^10*(-1 + x*q^4 + x*q^6)",
        "x^3*q^15*(1 + q^2 + q^3)*(1 - x*q^6)",
        "x^3*q^19*(1 - x*q^6)*(1 - x*q^8)",
    ],
    [
        "1",
        "-1 - x*(q^2 + q^4 + q^5)",
        "x*q^4*(1 + x*q^5 + x*q^7)",
        "x^2*q^10*(-1 + x*q^4 + x*q^6)",
        "x^3*q^18*(1 + q + q^3)*(1 - x*q^6)",
        "x^3*q^23*(1 - x*q^6)*(1 - x*q^8)",
    ],
];

/// Coefficient strings `p_0, p_2, ..., p_10` of the final equation for
/// class `a` (0-based), in the reference's factored form.
pub fn equation_text(a: usize) -> [&'static str; 6] {
    EQUATIONS[a]
}

/// The coefficients of [`equation_text`] as rational functions.
pub fn equation(a: usize) -> Vec<RationalFunction> {
    EQUATIONS[a]
        .iter()
        .map(|e| parse_rational(e).expect("reference entries parse"))
        .collect()
}
