//! Acceptance gate. Each test prints one `PASS`/`FAIL` line with its
//! elapsed time; every equality is exact.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use freelie::cohomology::{betti_table, exact_rank, operator_matrix, Algebra, Basis, BettiEntry};
use freelie::lie::{bracket_expand, is_lie};
use freelie::ncalg::{q, qi, word_basis, Letter, Poly, Scalar};
use freelie::operators::{
    ant, antisymmetrizer, delta, delta_a, g_a, g_closed_form, g_homotopy, p_project, r_embed,
    s_retract, tau_defect,
};
use freelie::oracle::{randomized_identity_check, Identity, TrialConfig};
use freelie::series::bch;
use freelie::syntax::{format, parse};
use freelie::verify::{g4_diagnostics, lie_cocycles};
use num::{One, Zero};

const LIMIT_SIMPLICIAL: Duration = Duration::from_secs(10);
const LIMIT_PROJECTOR_COMMUTES: Duration = Duration::from_secs(60);
const LIMIT_HOMOTOPY: Duration = Duration::from_secs(300);
const LIMIT_PR_RANT: Duration = Duration::from_secs(60);
const LIMIT_INVARIANT_HOMOTOPY: Duration = Duration::from_secs(120);
const LIMIT_BETTI: Duration = Duration::from_secs(120);
const LIMIT_CLOSED_FORM: Duration = Duration::from_secs(60);
const LIMIT_EXACTNESS: Duration = Duration::from_secs(120);
const LIMIT_BCH: Duration = Duration::from_secs(60);
const LIMIT_ORACLE: Duration = Duration::from_secs(60);
const LIMIT_PARSER: Duration = Duration::from_secs(5);

const ORACLE_TRIALS: usize = 100;
const ORACLE_MATRIX_SIZE: usize = 3;
const ORACLE_SEED: u64 = 20_240_601;

/// Runs `body`, prints the verdict line, then fails the test on a defect or overrun.
fn gate(label: &str, limit: Duration, body: impl FnOnce() -> Result<String, String>) {
    let start = Instant::now();
    let outcome = body();
    let elapsed = start.elapsed();
    let timely = elapsed < limit;
    match (&outcome, timely) {
        (Ok(note), true) => println!("PASS {label} ({elapsed:.2?}, limit {limit:?}) {note}"),
        (Ok(_), false) => println!("FAIL {label}: took {elapsed:.2?}, limit {limit:?}"),
        (Err(msg), _) => println!("FAIL {label} ({elapsed:.2?}): {msg}"),
    }
    assert!(outcome.is_ok(), "{label}: {}", outcome.unwrap_err());
    assert!(timely, "{label}: took {elapsed:?}, limit {limit:?}");
}

fn words(n: usize, d: usize) -> Vec<Poly> {
    word_basis(n, d)
        .into_iter()
        .map(|w| Poly::word(n, w).unwrap())
        .collect()
}

/// Checks `defect(f) = 0` on every word of every listed bidegree.
fn on_words(
    cells: impl IntoIterator<Item = (usize, usize)>,
    defect: impl Fn(&Poly) -> freelie::Result<Poly>,
) -> Result<String, String> {
    let mut cases = 0;
    for (n, d) in cells {
        for f in words(n, d) {
            let r = defect(&f).map_err(|e| format!("n={n} d={d} input {f}: {e}"))?;
            if !r.is_zero() {
                return Err(format!("n={n} d={d} input {f}: defect {r}"));
            }
            cases += 1;
        }
    }
    Ok(format!("[{cases} basis inputs]"))
}

fn cells(
    n: std::ops::RangeInclusive<usize>,
    d: std::ops::RangeInclusive<usize>,
) -> Vec<(usize, usize)> {
    n.flat_map(|n| d.clone().map(move |d| (n, d))).collect()
}

#[test]
fn c01_simplicial_homotopy() {
    gate(
        "1 s∘δ + δ∘s = Id, n ≤ 4, d ≤ 4",
        LIMIT_SIMPLICIAL,
        || {
            on_words(cells(1..=4, 0..=4), |f| {
                let lhs = &s_retract(&delta(f)?)? + &delta(&s_retract(f)?)?;
                Ok(&lhs - f)
            })
        },
    );
}

#[test]
fn c02_differentials_square_to_zero() {
    gate(
        "2 δ∘δ = 0 and δ_A∘δ_A = 0, n ≤ 4, d ≤ 4",
        LIMIT_SIMPLICIAL,
        || {
            let a = on_words(cells(1..=4, 0..=4), |f| delta(&delta(f)?))?;
            let b = on_words(cells(1..=4, 0..=4), |f| delta_a(&delta_a(f)?))?;
            Ok(format!("{a} {b}"))
        },
    );
}

#[test]
fn c03_projector_commutes_with_delta() {
    gate(
        "3 δ∘P = P∘δ, n ≤ 3, d ≤ 4",
        LIMIT_PROJECTOR_COMMUTES,
        || {
            on_words(cells(1..=3, 0..=4), |f| {
                Ok(&delta(&p_project(f)?)? - &p_project(&delta(f)?)?)
            })
        },
    );
}

#[test]
fn c04_chain_homotopy() {
    let mut range = cells(1..=3, 0..=4);
    range.extend(cells(4..=4, 0..=3));
    gate(
        "4 G∘δ + δ∘G = Id − P, n ≤ 3 with d ≤ 4 and n = 4 with d ≤ 3",
        LIMIT_HOMOTOPY,
        || {
            on_words(range, |f| {
                let lhs = &g_homotopy(&delta(f)?)? + &delta(&g_homotopy(f)?)?;
                Ok(&lhs - &(f - &p_project(f)?))
            })
        },
    );
}

#[test]
fn c05_projector_restricts_to_ant() {
    gate("5 P∘R = R∘Ant, m ≤ 3, d ≤ 4", LIMIT_PR_RANT, || {
        on_words(cells(1..=3, 0..=4), |g| {
            Ok(&p_project(&r_embed(g)?)? - &r_embed(&ant(g)?)?)
        })
    });
}

#[test]
fn c06_invariant_homotopy() {
    gate(
        "6 G_A∘δ_A + δ_A∘G_A = Id − Ant with τ-invariance of G(Rg), m ≤ 3, d ≤ 4",
        LIMIT_INVARIANT_HOMOTOPY,
        || {
            let invariance = on_words(cells(1..=3, 0..=4), |g| {
                tau_defect(&g_homotopy(&r_embed(g)?)?)
            })?;
            let identity = on_words(cells(1..=3, 0..=4), |g| {
                let lhs = &g_a(&delta_a(g)?)? + &delta_a(&g_a(g)?)?;
                Ok(&lhs - &(g - &ant(g)?))
            })?;
            Ok(format!("{invariance} {identity}"))
        },
    );
}

fn coords(basis: &Basis, f: &Poly) -> Vec<Scalar> {
    basis.coordinates(f).unwrap()
}

/// Rank of the δ_A image at `(n, d)` with extra vectors appended.
fn image_rank_with(n: usize, d: usize, extra: &[Poly]) -> usize {
    let mut columns: Vec<Vec<Scalar>> = Vec::new();
    if n > 1 {
        let m = operator_matrix("delta_A", Algebra::Assoc, n - 1, d).unwrap();
        columns.extend((0..m.cols()).map(|j| m.entries.column(j)));
    }
    let basis = Basis::words(n, d);
    columns.extend(extra.iter().map(|f| coords(&basis, f)));
    if columns.is_empty() {
        return 0;
    }
    exact_rank(&freelie::cohomology::Matrix::from_rows(columns))
}

fn table_line(entries: &[BettiEntry]) -> String {
    entries
        .iter()
        .map(|e| e.betti.to_string())
        .collect::<Vec<_>>()
        .join("")
}

#[test]
fn c07_betti_table_associative() {
    gate(
        "7 betti(T, n, d) = [d = n] for n, d ≤ 4, generators ≡ A_n",
        LIMIT_BETTI,
        || {
            let table = betti_table(Algebra::Assoc, 4, 4, 1).map_err(|e| e.to_string())?;
            for e in &table {
                let expected = usize::from(e.n == e.d);
                if e.betti != expected || e.generators.len() != e.betti {
                    return Err(format!(
                        "betti({}, {}) = {}, expected {expected}",
                        e.n, e.d, e.betti
                    ));
                }
                if e.rank_out + e.rank_in > e.dim {
                    return Err(format!("rank bound violated at ({}, {})", e.n, e.d));
                }
                if e.betti == 1 {
                    let (n, d) = (e.n, e.d);
                    let rep = &e.generators[0];
                    let a = antisymmetrizer(n);
                    if !delta_a(&a).unwrap().is_zero() || !delta_a(rep).unwrap().is_zero() {
                        return Err(format!("non-cocycle at ({n}, {d})"));
                    }
                    let base = image_rank_with(n, d, &[]);
                    let with_rep = image_rank_with(n, d, std::slice::from_ref(rep));
                    let with_both = image_rank_with(n, d, &[rep.clone(), a.clone()]);
                    let with_a = image_rank_with(n, d, &[a]);
                    if with_rep != base + 1 || with_a != base + 1 || with_both != with_rep {
                        return Err(format!("generator at ({n}, {d}) is not congruent to A_{n}"));
                    }
                }
            }
            Ok(format!("[betti by (n, d): {}]", table_line(&table)))
        },
    );
}

#[test]
fn c08_betti_table_lie() {
    gate(
        "8 betti(L, n, d) = 1 only at (1,1) and (2,2), n ≤ 4, d ≤ 5",
        LIMIT_BETTI,
        || {
            let table = betti_table(Algebra::Lie, 4, 5, 1).map_err(|e| e.to_string())?;
            let x = |n, i| Poly::generator(n, i).unwrap();
            for e in &table {
                let expected: Vec<Poly> = match (e.n, e.d) {
                    (1, 1) => vec![x(1, 1)],
                    (2, 2) => vec![bracket_expand(&x(2, 1), &x(2, 2)).unwrap()],
                    _ => Vec::new(),
                };
                if e.betti != expected.len() || e.generators != expected {
                    return Err(format!(
                        "({}, {}): betti {} generators {:?}",
                        e.n, e.d, e.betti, e.generators
                    ));
                }
                if e.rank_out + e.rank_in > e.dim {
                    return Err(format!("rank bound violated at ({}, {})", e.n, e.d));
                }
            }
            Ok(format!("[betti by (n, d): {}]", table_line(&table)))
        },
    );
}

#[test]
fn c09_closed_form_g3() {
    gate(
        "9 closed-form G³ = inductive G³ on arity-3 words, d ≤ 4",
        LIMIT_CLOSED_FORM,
        || {
            let verdict = on_words(cells(3..=3, 0..=4), |f| {
                Ok(&g_closed_form(3, f)? - &g_homotopy(f)?)
            })?;
            let report = g4_diagnostics(2).map_err(|e| e.to_string())?;
            let agree = report.iter().filter(|r| r.1).count();
            println!("note: G⁴ closed form matches the inductive G⁴ on {agree}/{} arity-4 words of degree ≤ 2", report.len());
            for (input, _, diff) in report.iter().filter(|r| !r.1) {
                println!("note: G⁴ at {input}: closed form − inductive = {diff}");
            }
            Ok(verdict)
        },
    );
}

#[test]
fn c10_exactness_certificates() {
    gate(
        "10 δ_A(G_A f) = f for every Lie cocycle f, n ∈ {3, 4}, d ≤ 4",
        LIMIT_EXACTNESS,
        || {
            let mut count = 0;
            for n in 3..=4 {
                for d in 1..=4 {
                    let cocycles = lie_cocycles(n, d).map_err(|e| e.to_string())?;
                    for f in cocycles {
                        if !is_lie(&f) || !delta_a(&f).unwrap().is_zero() {
                            return Err(format!("({n}, {d}): {f} is not a Lie cocycle"));
                        }
                        let back = delta_a(&g_a(&f).map_err(|e| e.to_string())?).unwrap();
                        if back != f {
                            return Err(format!("({n}, {d}): δ_A G_A f ≠ f for f = {f}"));
                        }
                        count += 1;
                    }
                }
            }
            Ok(format!("[{count} cocycles]"))
        },
    );
}

type Series = BTreeMap<Vec<u8>, Scalar>;

fn series_mul(a: &Series, b: &Series, max: usize) -> Series {
    let mut out = Series::new();
    for (u, x) in a {
        for (v, y) in b {
            if u.len() + v.len() <= max {
                let w: Vec<u8> = u.iter().chain(v).copied().collect();
                *out.entry(w).or_insert_with(Scalar::zero) += x * y;
            }
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// log(e^{x1} e^{x2}) from the double sum Σ x1^a x2^b / (a! b!) and the
/// logarithm series, on words encoded as byte strings.
fn bch_brute_force(max: usize) -> Series {
    let fact = |k: usize| (1..=k).fold(Scalar::one(), |a, i| a * qi(i as i64));
    let mut z = Series::new();
    for a in 0..=max {
        for b in 0..=max - a {
            if a + b > 0 {
                let w: Vec<u8> = std::iter::repeat_n(1, a)
                    .chain(std::iter::repeat_n(2, b))
                    .collect();
                z.insert(w, (fact(a) * fact(b)).recip());
            }
        }
    }
    let mut out = Series::new();
    let mut power = z.clone();
    for k in 1..=max {
        let c = Scalar::new(
            if k % 2 == 1 { 1.into() } else { (-1).into() },
            (k as i64).into(),
        );
        for (w, x) in &power {
            *out.entry(w.clone()).or_insert_with(Scalar::zero) += x * &c;
        }
        power = series_mul(&power, &z, max);
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn to_series(f: &Poly) -> Series {
    f.terms()
        .map(|(w, c)| {
            (
                w.letters()
                    .iter()
                    .map(|l| l.active_index().unwrap() as u8)
                    .collect(),
                c.clone(),
            )
        })
        .collect()
}

#[test]
fn c11_bch() {
    gate(
        "11 bch(5) is Lie with the classical degree-2 and degree-3 parts",
        LIMIT_BCH,
        || {
            let z = bch(5);
            if !is_lie(&z) {
                return Err("bch(5) fails the Lie test".into());
            }
            let oracle = bch_brute_force(5);
            if to_series(&z) != oracle {
                return Err("bch(5) differs from the brute-force expansion".into());
            }
            let x = |i| Poly::generator(2, i).unwrap();
            let br = |a: &Poly, b: &Poly| bracket_expand(a, b).unwrap();
            let two = br(&x(1), &x(2)).scale(&q(1, 2));
            let three = &br(&x(1), &br(&x(1), &x(2))).scale(&q(1, 12))
                + &br(&x(2), &br(&x(2), &x(1))).scale(&q(1, 12));
            for (d, expected) in [(2, two), (3, three)] {
                let part = z.homogeneous_component(d);
                let brute: Series = oracle
                    .iter()
                    .filter(|(w, _)| w.len() == d)
                    .map(|(w, c)| (w.clone(), c.clone()))
                    .collect();
                if part != expected || to_series(&expected) != brute {
                    return Err(format!("degree {d}: got {part}, expected {expected}"));
                }
            }
            Ok(String::new())
        },
    );
}

#[test]
fn c12_oracle_suite() {
    gate(
        "12 randomized matrix oracle: 100 trials each, k = 3, and fault injection fails",
        LIMIT_ORACLE,
        || {
            let checks = [
                (Identity::SDeltaHomotopy, 4, 4),
                (Identity::GHomotopyIdentity, 3, 4),
                (Identity::GaHomotopyIdentity, 3, 3),
            ];
            let mut notes = Vec::new();
            for (identity, n, d) in checks {
                let cfg = TrialConfig {
                    n,
                    d,
                    trials: ORACLE_TRIALS,
                    k: ORACLE_MATRIX_SIZE,
                    seed: ORACLE_SEED,
                    fault_inject: false,
                    threads: 4,
                };
                let report =
                    randomized_identity_check(identity, &cfg).map_err(|e| e.to_string())?;
                if !report.ok() || report.passed != ORACLE_TRIALS {
                    return Err(format!("{report}"));
                }
                let faulty = randomized_identity_check(
                    identity,
                    &TrialConfig {
                        fault_inject: true,
                        ..cfg
                    },
                )
                .map_err(|e| e.to_string())?;
                if faulty.ok() {
                    return Err(format!("fault injection went unnoticed for {identity}"));
                }
                notes.push(format!("{identity}@({n},{d})"));
            }
            Ok(format!("[{}]", notes.join(", ")))
        },
    );
}

const CORPUS: [(&str, &str); 20] = [
    ("[x1,x2]", "x1*x2 - x2*x1"),
    ("2/3*x1^2", "2/3*x1*x1"),
    ("x2 + x1", "x1 + x2"),
    ("-x1", "-x1"),
    ("0", "0"),
    ("1/2 - x1", "1/2 - x1"),
    ("(x1 + x2)^2", "x1*x1 + x1*x2 + x2*x1 + x2*x2"),
    ("[x1, [x1, x2]]", "x1*x1*x2 - 2*x1*x2*x1 + x2*x1*x1"),
    ("x1*x2 - x1*x2", "0"),
    ("3*x1*y", "3*x1*y"),
    ("4/6 x1", "2/3*x1"),
    ("[x1,x1]", "0"),
    ("(x1 - x2)*(x1 + x2)", "x1*x1 + x1*x2 - x2*x1 - x2*x2"),
    ("[x2 - x1, x3 - x2]", "x1*x2 - x1*x3 - x2*x1 + x2*x3 + x3*x1 - x3*x2"),
    ("-1/2*[x1,x2] + 1/2*x1*x2", "1/2*x2*x1"),
    ("x1^3", "x1*x1*x1"),
    ("  x1 *  x2  ", "x1*x2"),
    ("-(x1 + 2)", "-2 - x1"),
    (
        "1/12*[x1,[x1,x2]] + 1/12*[x2,[x2,x1]]",
        "1/12*x1*x1*x2 - 1/6*x1*x2*x1 + 1/12*x1*x2*x2 + 1/12*x2*x1*x1 - 1/6*x2*x1*x2 + 1/12*x2*x2*x1",
    ),
    ("x2*(3/4 - x1)^2", "9/16*x2 - 3/2*x2*x1 + x2*x1*x1"),
];

#[test]
fn c13_parser_round_trip() {
    gate(
        "13 parse∘format round trip on word bases n, d ≤ 4 and a 20-expression corpus",
        LIMIT_PARSER,
        || {
            let mut count = 0;
            for n in 1..=4 {
                for d in 0..=4 {
                    for w in word_basis(n, d) {
                        let f = Poly::word(n, w).unwrap();
                        let back = parse(&format(&f), Some(n)).map_err(|e| e.to_string())?;
                        if back != f {
                            return Err(format!("{f} reparsed as {back}"));
                        }
                        count += 1;
                    }
                }
            }
            for (text, canonical) in CORPUS {
                let f = parse(text, None).map_err(|e| format!("{text}: {e}"))?;
                if format(&f) != canonical {
                    return Err(format!(
                        "{text} formatted as {}, expected {canonical}",
                        format(&f)
                    ));
                }
                if parse(canonical, Some(f.arity())).map_err(|e| e.to_string())? != f {
                    return Err(format!("{canonical} does not reparse to itself"));
                }
            }
            let with_param =
                &Poly::generator(1, 1).unwrap() * &Poly::letter(1, Letter::y()).unwrap();
            if parse(&format(&with_param), Some(1)).unwrap() != with_param {
                return Err("parameter letter round trip".into());
            }
            Ok(format!("[{count} words, {} expressions]", CORPUS.len()))
        },
    );
}
