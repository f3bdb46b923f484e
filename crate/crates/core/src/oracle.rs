//! Independent cross-checks by evaluating polynomials on random rational
//! matrices.
//!
//! A symbolic identity `lhs = rhs` is confirmed by comparing the two sides
//! after substituting seeded random `k×k` rational matrices for the letters.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ncalg::{qi, word_basis, Letter, Poly, Scalar};
use crate::operators::{ant, delta, delta_a, g_a, g_homotopy, p_project, r_embed, s_retract};

/// Dense square matrix of rationals, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatMatrix {
    k: usize,
    entries: Vec<Scalar>,
}

impl RatMatrix {
    pub fn zero(k: usize) -> RatMatrix {
        RatMatrix {
            k,
            entries: vec![Scalar::zero(); k * k],
        }
    }

    pub fn identity(k: usize) -> RatMatrix {
        let mut m = RatMatrix::zero(k);
        for i in 0..k {
            m.entries[i * k + i] = Scalar::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> RatMatrix {
        let k = rows.len();
        assert!(rows.iter().all(|r| r.len() == k), "matrix must be square");
        RatMatrix {
            k,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    /// Entries drawn as `a/b` with `a ∈ [−9, 9]`, `b ∈ [1, 4]`.
    pub fn random<R: Rng>(k: usize, rng: &mut R) -> RatMatrix {
        let entries = (0..k * k)
            .map(|_| {
                let a: i64 = rng.random_range(-9..=9);
                let b: i64 = rng.random_range(1..=4);
                Scalar::new(a.into(), b.into())
            })
            .collect();
        RatMatrix { k, entries }
    }

    pub fn size(&self) -> usize {
        self.k
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i * self.k + j]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn mul(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.k, other.k);
        let k = self.k;
        let mut out = RatMatrix::zero(k);
        for i in 0..k {
            for l in 0..k {
                let a = &self.entries[i * k + l];
                if a.is_zero() {
                    continue;
                }
                for j in 0..k {
                    out.entries[i * k + j] += a * &other.entries[l * k + j];
                }
            }
        }
        out
    }

    pub fn add_scaled(&mut self, other: &RatMatrix, c: &Scalar) {
        for (a, b) in self.entries.iter_mut().zip(&other.entries) {
            *a += b * c;
        }
    }
}

impl fmt::Display for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.k {
            if i > 0 {
                write!(f, ", ")?;
            }
            let row: Vec<String> = (0..self.k).map(|j| self.get(i, j).to_string()).collect();
            write!(f, "[{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Matrices of a common size assigned to letters.
#[derive(Clone, Debug)]
pub struct Assignment {
    k: usize,
    matrices: BTreeMap<Letter, RatMatrix>,
}

impl Assignment {
    pub fn new(k: usize) -> Assignment {
        Assignment {
            k,
            matrices: BTreeMap::new(),
        }
    }

    pub fn with(mut self, letter: Letter, m: RatMatrix) -> Assignment {
        assert_eq!(m.size(), self.k, "matrix size differs from the assignment");
        self.matrices.insert(letter, m);
        self
    }

    pub fn random<R: Rng>(
        k: usize,
        letters: impl IntoIterator<Item = Letter>,
        rng: &mut R,
    ) -> Assignment {
        letters.into_iter().fold(Assignment::new(k), |a, l| {
            let m = RatMatrix::random(k, rng);
            a.with(l, m)
        })
    }

    pub fn size(&self) -> usize {
        self.k
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Letter, &RatMatrix)> {
        self.matrices.iter()
    }
}

/// Evaluation morphism `T_n → Mat_k(ℚ)`: words go to products, the empty word to the identity.
pub fn matrix_eval(f: &Poly, assignment: &Assignment) -> Result<RatMatrix> {
    let k = assignment.k;
    let mut out = RatMatrix::zero(k);
    for (w, c) in f.terms() {
        let mut acc = RatMatrix::identity(k);
        for l in w.letters() {
            let m = assignment
                .matrices
                .get(l)
                .ok_or_else(|| Error::UnassignedLetter(l.to_string()))?;
            acc = acc.mul(m);
        }
        out.add_scaled(&acc, c);
    }
    Ok(out)
}

/// Identities the randomized harness knows how to check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Identity {
    /// `sδ + δs = Id`
    SDeltaHomotopy,
    /// `δP = Pδ`
    DeltaPCommute,
    /// `Gδ + δG = Id − P`
    GHomotopyIdentity,
    /// `P R = R Ant`
    PrRant,
    /// `G_A δ_A + δ_A G_A = Id − Ant`
    GaHomotopyIdentity,
}

impl Identity {
    pub const ALL: [Identity; 5] = [
        Identity::SDeltaHomotopy,
        Identity::DeltaPCommute,
        Identity::GHomotopyIdentity,
        Identity::PrRant,
        Identity::GaHomotopyIdentity,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Identity::SDeltaHomotopy => "s_delta_homotopy",
            Identity::DeltaPCommute => "delta_p_commute",
            Identity::GHomotopyIdentity => "g_homotopy_identity",
            Identity::PrRant => "pr_rant",
            Identity::GaHomotopyIdentity => "ga_homotopy_identity",
        }
    }

    /// Both sides of the identity at input `f`.
    ///
    /// With `fault` the projector term of the right-hand side (the identity
    /// term for `s_delta_homotopy`) is doubled, so the check must fail.
    pub fn sides(self, f: &Poly, fault: bool) -> Result<(Poly, Poly)> {
        let factor = if fault { qi(2) } else { qi(1) };
        Ok(match self {
            Identity::SDeltaHomotopy => {
                let lhs = &s_retract(&delta(f)?)? + &delta(&s_retract(f)?)?;
                (lhs, f.scale(&factor))
            }
            Identity::DeltaPCommute => {
                let lhs = delta(&p_project(f)?)?;
                (lhs, p_project(&delta(f)?)?.scale(&factor))
            }
            Identity::GHomotopyIdentity => {
                let lhs = &g_homotopy(&delta(f)?)? + &delta(&g_homotopy(f)?)?;
                (lhs, f - &p_project(f)?.scale(&factor))
            }
            Identity::PrRant => {
                let lhs = p_project(&r_embed(f)?)?;
                (lhs, r_embed(&ant(f)?.scale(&factor))?)
            }
            Identity::GaHomotopyIdentity => {
                let lhs = &g_a(&delta_a(f)?)? + &delta_a(&g_a(f)?)?;
                (lhs, f - &ant(f)?.scale(&factor))
            }
        })
    }
}

impl FromStr for Identity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Identity> {
        Identity::ALL
            .into_iter()
            .find(|i| i.name() == s)
            .ok_or_else(|| Error::UnknownIdentity(s.to_string()))
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TrialConfig {
    pub n: usize,
    pub d: usize,
    pub trials: usize,
    pub k: usize,
    pub seed: u64,
    pub fault_inject: bool,
    pub threads: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub trial: usize,
    pub seed: u64,
    pub input: String,
    pub assignment: Vec<(String, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleReport {
    pub identity: Identity,
    pub n: usize,
    pub d: usize,
    pub trials: usize,
    pub k: usize,
    pub seed: u64,
    pub fault_inject: bool,
    pub passed: usize,
    pub counterexample: Option<Counterexample>,
}

impl OracleReport {
    pub fn ok(&self) -> bool {
        self.counterexample.is_none()
    }
}

impl fmt::Display for OracleReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "identity {} n={} d={} trials={} k={} seed={}{}",
            self.identity,
            self.n,
            self.d,
            self.trials,
            self.k,
            self.seed,
            if self.fault_inject {
                " fault-inject"
            } else {
                ""
            }
        )?;
        match &self.counterexample {
            None => write!(f, "PASS {}/{} trials", self.passed, self.trials),
            Some(c) => {
                writeln!(f, "FAIL at trial {} (seed {})", c.trial, c.seed)?;
                writeln!(f, "input: {}", c.input)?;
                for (letter, m) in &c.assignment {
                    writeln!(f, "  {letter} = {m}")?;
                }
                write!(f, "{} trials passed before the failure", self.passed)
            }
        }
    }
}

/// Random element at bidegree `(n, d)`: three random words with small nonzero integer coefficients.
fn random_element<R: Rng>(n: usize, d: usize, rng: &mut R) -> Poly {
    let basis = word_basis(n, d);
    let mut f = Poly::zero(n);
    for _ in 0..3 {
        let w = basis[rng.random_range(0..basis.len())].clone();
        let mut c: i64 = rng.random_range(-3..=2);
        if c >= 0 {
            c += 1;
        }
        f += &Poly::monomial(n, w, qi(c)).expect("basis word");
    }
    f
}

enum TrialOutcome {
    Pass,
    Fail(Counterexample),
}

fn run_trial(identity: Identity, cfg: &TrialConfig, trial: usize) -> Result<TrialOutcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(trial as u64);
    let f = random_element(cfg.n, cfg.d, &mut rng);
    let letters = (1..=cfg.n as u32 + 1).map(Letter::Active);
    let assignment = Assignment::random(cfg.k, letters, &mut rng);
    let (lhs, rhs) = identity.sides(&f, cfg.fault_inject)?;
    if matrix_eval(&lhs, &assignment)? == matrix_eval(&rhs, &assignment)? {
        Ok(TrialOutcome::Pass)
    } else {
        Ok(TrialOutcome::Fail(Counterexample {
            trial,
            seed: cfg.seed,
            input: f.to_string(),
            assignment: assignment
                .iter()
                .map(|(l, m)| (l.to_string(), m.to_string()))
                .collect(),
        }))
    }
}

/// Runs `cfg.trials` seeded trials; the report is identical for any thread count.
pub fn randomized_identity_check(identity: Identity, cfg: &TrialConfig) -> Result<OracleReport> {
    let mut report = OracleReport {
        identity,
        n: cfg.n,
        d: cfg.d,
        trials: cfg.trials,
        k: cfg.k,
        seed: cfg.seed,
        fault_inject: cfg.fault_inject,
        passed: 0,
        counterexample: None,
    };
    if cfg.trials == 0 {
        return Ok(report);
    }
    if cfg.n == 0 {
        return Err(Error::ArityTooSmall { min: 1, found: 0 });
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.threads.max(1))
        .build()
        .expect("thread pool");
    let outcomes: Vec<Result<TrialOutcome>> = pool.install(|| {
        (0..cfg.trials)
            .into_par_iter()
            .map(|t| run_trial(identity, cfg, t))
            .collect()
    });
    for outcome in outcomes {
        match outcome? {
            TrialOutcome::Pass => report.passed += 1,
            TrialOutcome::Fail(c) => {
                report.counterexample = Some(c);
                break;
            }
        }
    }
    Ok(report)
}
