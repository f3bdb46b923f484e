//! Exhaustive identity checks on canonical bases.
//!
//! Each check evaluates a defect that must vanish on every input of a
//! word or Lyndon basis at a bidegree `(n, d)`.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::cohomology::{nullspace, operator_matrix, Algebra};
use crate::error::{Error, Result};
use crate::lie::{is_lie, lyndon_basis};
use crate::ncalg::{word_basis, Poly};
use crate::operators::{
    ant, antisymmetrizer, closed_form_g4_report, delta, delta_a, g_a, g_closed_form, g_homotopy,
    p_project, r_embed, r_invert, s_retract, tau_defect,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Simplicial,
    Projector,
    Homotopy,
    Invariant,
    Lie,
    ClosedForm,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::Simplicial,
        Suite::Projector,
        Suite::Homotopy,
        Suite::Invariant,
        Suite::Lie,
        Suite::ClosedForm,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Simplicial => "simplicial",
            Suite::Projector => "projector",
            Suite::Homotopy => "homotopy",
            Suite::Invariant => "invariant",
            Suite::Lie => "lie",
            Suite::ClosedForm => "closedform",
        }
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Suite, String> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| format!("unknown suite {s}"))
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Result of one check at one bidegree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub n: usize,
    pub d: usize,
    pub cases: usize,
    /// First input with a nonzero defect, and the defect.
    pub failure: Option<String>,
}

impl CheckOutcome {
    pub fn ok(&self) -> bool {
        self.failure.is_none()
    }
}

impl fmt::Display for CheckOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.failure {
            None => write!(
                f,
                "PASS {} n={} d={} ({} cases)",
                self.name, self.n, self.d, self.cases
            ),
            Some(msg) => write!(f, "FAIL {} n={} d={}: {}", self.name, self.n, self.d, msg),
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct SuiteReport {
    pub checks: Vec<CheckOutcome>,
    /// Informational lines that carry no verdict.
    pub diagnostics: Vec<String>,
}

impl SuiteReport {
    pub fn ok(&self) -> bool {
        self.checks.iter().all(CheckOutcome::ok)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckOutcome> {
        self.checks.iter().filter(|c| !c.ok())
    }

    fn extend(&mut self, other: SuiteReport) {
        self.checks.extend(other.checks);
        self.diagnostics.extend(other.diagnostics);
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{c}")?;
        }
        for d in &self.diagnostics {
            writeln!(f, "note: {d}")?;
        }
        let failed = self.failures().count();
        write!(f, "{} checks, {} failed", self.checks.len(), failed)
    }
}

/// Evaluates `defect` on every input; an error counts as a failure.
pub fn check_inputs<F>(
    name: &'static str,
    n: usize,
    d: usize,
    inputs: &[Poly],
    threads: usize,
    defect: F,
) -> CheckOutcome
where
    F: Fn(&Poly) -> Result<Poly> + Sync + Send,
{
    let judge = |f: &Poly| match defect(f) {
        Ok(r) if r.is_zero() => None,
        Ok(r) => Some(format!("input {f}: defect {r}")),
        Err(e) => Some(format!("input {f}: {e}")),
    };
    let failure = if threads <= 1 {
        inputs.iter().find_map(judge)
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .expect("thread pool");
        let found: Vec<Option<String>> = pool.install(|| inputs.par_iter().map(judge).collect());
        found.into_iter().flatten().next()
    };
    CheckOutcome {
        name,
        n,
        d,
        cases: inputs.len(),
        failure,
    }
}

/// All words of degree `d` in `n` letters, as polynomials.
pub fn word_inputs(n: usize, d: usize) -> Vec<Poly> {
    word_basis(n, d)
        .into_iter()
        .map(|w| Poly::word(n, w).expect("basis word"))
        .collect()
}

fn check_words<F>(name: &'static str, n: usize, d: usize, threads: usize, defect: F) -> CheckOutcome
where
    F: Fn(&Poly) -> Result<Poly> + Sync + Send,
{
    check_inputs(name, n, d, &word_inputs(n, d), threads, defect)
}

fn grid(n_max: usize, d_max: usize) -> impl Iterator<Item = (usize, usize)> {
    (1..=n_max).flat_map(move |n| (0..=d_max).map(move |d| (n, d)))
}

fn sum(a: Result<Poly>, b: Result<Poly>) -> Result<Poly> {
    Ok(&a? + &b?)
}

fn simplicial(n_max: usize, d_max: usize, threads: usize) -> SuiteReport {
    let mut r = SuiteReport::default();
    for (n, d) in grid(n_max, d_max) {
        r.checks
            .push(check_words("s_delta_homotopy", n, d, threads, |f| {
                Ok(&sum(s_retract(&delta(f)?), delta(&s_retract(f)?))? - f)
            }));
        r.checks
            .push(check_words("delta_squared", n, d, threads, |f| {
                delta(&delta(f)?)
            }));
        r.checks
            .push(check_words("delta_a_squared", n, d, threads, |f| {
                delta_a(&delta_a(f)?)
            }));
        r.checks
            .push(check_words("delta_r_commute", n, d, threads, |g| {
                Ok(&delta(&r_embed(g)?)? - &r_embed(&delta_a(g)?)?)
            }));
        r.checks
            .push(check_words("tau_r_vanishes", n, d, threads, |g| {
                tau_defect(&r_embed(g)?)
            }));
        r.checks.push(check_words("r_inverse", n, d, threads, |g| {
            Ok(&r_invert(&r_embed(g)?)? - g)
        }));
    }
    r
}

fn projector(n_max: usize, d_max: usize, threads: usize) -> SuiteReport {
    let mut r = SuiteReport::default();
    for (n, d) in grid(n_max, d_max) {
        r.checks
            .push(check_words("delta_p_commute", n, d, threads, |f| {
                Ok(&delta(&p_project(f)?)? - &p_project(&delta(f)?)?)
            }));
        r.checks
            .push(check_words("p_idempotent", n, d, threads, |f| {
                let p = p_project(f)?;
                Ok(&p_project(&p)? - &p)
            }));
        r.checks.push(check_words("pr_rant", n, d, threads, |g| {
            Ok(&p_project(&r_embed(g)?)? - &r_embed(&ant(g)?)?)
        }));
        r.checks
            .push(check_words("ant_idempotent", n, d, threads, |g| {
                let a = ant(g)?;
                Ok(&ant(&a)? - &a)
            }));
        r.checks
            .push(check_words("ant_repeated_letter", n, d, threads, |g| {
                let w = g.terms().next().map(|(w, _)| w.clone());
                match w {
                    Some(w) if !w.is_multilinear(n) => ant(g),
                    _ => Ok(Poly::zero(n)),
                }
            }));
    }
    for n in 1..=n_max {
        let a = antisymmetrizer(n);
        r.checks.push(check_inputs(
            "ant_fixes_antisymmetrizer",
            n,
            n,
            &[a],
            1,
            |a| Ok(&ant(a)? - a),
        ));
    }
    r
}

fn homotopy(n_max: usize, d_max: usize, threads: usize) -> SuiteReport {
    let mut r = SuiteReport::default();
    for (n, d) in grid(n_max, d_max) {
        r.checks
            .push(check_words("g_homotopy_identity", n, d, threads, |f| {
                let lhs = sum(g_homotopy(&delta(f)?), delta(&g_homotopy(f)?))?;
                Ok(&lhs - &(f - &p_project(f)?))
            }));
    }
    r
}

/// Lie cocycles at `(n, d)`: a basis of the kernel of `δ_A` on `L_n`.
pub fn lie_cocycles(n: usize, d: usize) -> Result<Vec<Poly>> {
    let m = operator_matrix("delta_A", Algebra::Lie, n, d)?;
    Ok(nullspace(&m.entries)
        .iter()
        .map(|v| m.source.combine(v))
        .collect())
}

fn invariant(n_max: usize, d_max: usize, threads: usize) -> Result<SuiteReport> {
    let mut r = SuiteReport::default();
    for (n, d) in grid(n_max, d_max) {
        // g_a fails with an error unless G(R g) is translation-invariant
        r.checks
            .push(check_words("ga_homotopy_identity", n, d, threads, |g| {
                let lhs = sum(g_a(&delta_a(g)?), delta_a(&g_a(g)?))?;
                Ok(&lhs - &(g - &ant(g)?))
            }));
    }
    for n in 3..=n_max {
        for d in 1..=d_max {
            let cocycles = lie_cocycles(n, d)?;
            r.checks.push(check_inputs(
                "exactness_certificate",
                n,
                d,
                &cocycles,
                threads,
                |f| Ok(&delta_a(&g_a(f)?)? - f),
            ));
        }
    }
    Ok(r)
}

type NamedOp = (&'static str, fn(&Poly) -> Result<Poly>);

fn lie(n_max: usize, d_max: usize, threads: usize) -> SuiteReport {
    let ops: [NamedOp; 8] = [
        ("lie_preserved_delta", delta),
        ("lie_preserved_delta_a", delta_a),
        ("lie_preserved_s", s_retract),
        ("lie_preserved_r", r_embed),
        ("lie_preserved_p", p_project),
        ("lie_preserved_g", g_homotopy),
        ("lie_preserved_g_a", g_a),
        ("lie_preserved_ant", ant),
    ];
    let mut r = SuiteReport::default();
    for n in 1..=n_max {
        for d in 1..=d_max {
            let inputs = lyndon_basis(n, d).elements;
            for (name, op) in ops {
                r.checks
                    .push(check_inputs(name, n, d, &inputs, threads, |f| {
                        let img = op(f)?;
                        Ok(if is_lie(&img) {
                            Poly::zero(img.arity())
                        } else {
                            img
                        })
                    }));
            }
            if n >= 3 {
                r.checks.push(check_inputs(
                    "ant_vanishes_on_lie",
                    n,
                    d,
                    &inputs,
                    threads,
                    ant,
                ));
            }
        }
    }
    r
}

fn closed_form(d_max: usize, threads: usize) -> Result<SuiteReport> {
    let mut r = SuiteReport::default();
    for d in 0..=d_max {
        r.checks
            .push(check_words("g3_closed_form", 3, d, threads, |f| {
                Ok(&g_closed_form(3, f)? - &g_homotopy(f)?)
            }));
    }
    let reports = g4_diagnostics(d_max.min(2))?;
    let agree = reports.iter().filter(|x| x.1).count();
    r.diagnostics.push(format!(
        "G4 closed form agrees with inductive G4 on {agree}/{} inputs",
        reports.len()
    ));
    for (input, same, diff) in reports.into_iter().filter(|x| !x.1) {
        debug_assert!(!same);
        r.diagnostics
            .push(format!("G4 {input}: closed form - inductive = {diff}"));
    }
    Ok(r)
}

/// Compares the displayed arity-4 closed form with the inductive homotopy on
/// every arity-4 word of degree at most `d_max`: `(input, agrees, difference)`.
pub fn g4_diagnostics(d_max: usize) -> Result<Vec<(String, bool, String)>> {
    let mut out = Vec::new();
    for d in 0..=d_max {
        for f in word_inputs(4, d) {
            let rep = closed_form_g4_report(&f)?;
            out.push((f.to_string(), rep.agrees(), rep.difference.to_string()));
        }
    }
    Ok(out)
}

/// Runs one suite over `1 ≤ n ≤ n_max`, `0 ≤ d ≤ d_max`.
pub fn run_suite(suite: Suite, n_max: usize, d_max: usize, threads: usize) -> Result<SuiteReport> {
    if n_max == 0 {
        return Err(Error::ArityTooSmall { min: 1, found: 0 });
    }
    Ok(match suite {
        Suite::Simplicial => simplicial(n_max, d_max, threads),
        Suite::Projector => projector(n_max, d_max, threads),
        Suite::Homotopy => homotopy(n_max, d_max, threads),
        Suite::Invariant => invariant(n_max, d_max, threads)?,
        Suite::Lie => lie(n_max, d_max, threads),
        Suite::ClosedForm => closed_form(d_max, threads)?,
    })
}

/// Runs every suite.
pub fn run_all(n_max: usize, d_max: usize, threads: usize) -> Result<SuiteReport> {
    let mut r = SuiteReport::default();
    for s in Suite::ALL {
        r.extend(run_suite(s, n_max, d_max, threads)?);
    }
    Ok(r)
}
