//! Seeded evaluation of polynomial identities and the reports they produce.
//!
//! An identity is a predicate over a tuple of variables. Its domain is
//! enumerated exhaustively when the ring is finite and the domain has at most
//! `exhaustive_threshold` points; otherwise `samples` pseudo-random points are
//! drawn from a ChaCha stream keyed by the seed and the identity id, so every
//! record is reproducible on its own.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::linalg::{self, Vector};
use crate::scalars::Ring;

pub const DEFAULT_SEED: u64 = 20_240_601;
pub const DEFAULT_SAMPLES: usize = 200;
pub const DEFAULT_EXHAUSTIVE_THRESHOLD: u128 = 10_000_000;
pub const DEFAULT_QUADRUPLE_SAMPLES: usize = 100;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SamplingPolicy {
    pub seed: u64,
    pub samples: usize,
    pub exhaustive_threshold: u128,
    /// Sampled quadruples for the structurable operator identity.
    pub quadruple_samples: usize,
}

impl Default for SamplingPolicy {
    fn default() -> Self {
        SamplingPolicy {
            seed: DEFAULT_SEED,
            samples: DEFAULT_SAMPLES,
            exhaustive_threshold: DEFAULT_EXHAUSTIVE_THRESHOLD,
            quadruple_samples: DEFAULT_QUADRUPLE_SAMPLES,
        }
    }
}

/// Kinds of variables an identity quantifies over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Var {
    /// An arbitrary vector of `R^n`.
    Vector,
    /// A vector in which both sides are additive; the base-field basis of
    /// `R^n` is a complete domain.
    Additive,
    /// A scalar of `R`.
    Scalar,
}

/// One assignment of the variables: vectors (for `Vector` and `Additive`
/// variables, in declaration order) and scalars.
#[derive(Debug, Clone)]
pub struct Point<E> {
    pub v: Vec<Vector<E>>,
    pub s: Vec<E>,
}

pub trait Verdict {
    /// `None` when the point does not satisfy the identity's hypotheses.
    fn verdict(self) -> Option<bool>;
}

impl Verdict for bool {
    fn verdict(self) -> Option<bool> {
        Some(self)
    }
}

impl Verdict for Option<bool> {
    fn verdict(self) -> Option<bool> {
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exhaustive,
    Sampled,
    Direct,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Record {
    pub id: String,
    pub reference: String,
    pub status: Status,
    pub mode: Mode,
    pub cases: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
}

impl Record {
    pub fn direct(id: &str, reference: &str, ok: bool, witness: impl FnOnce() -> Value) -> Self {
        Record {
            id: id.into(),
            reference: reference.into(),
            status: if ok { Status::Pass } else { Status::Fail },
            mode: Mode::Direct,
            cases: 1,
            witness: (!ok).then(witness),
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub subject: String,
    pub records: Vec<Record>,
}

impl Report {
    pub fn new(subject: impl Into<String>) -> Self {
        Report { subject: subject.into(), records: Vec::new() }
    }

    pub fn push(&mut self, r: Record) {
        self.records.push(r);
    }

    pub fn extend(&mut self, other: Report) {
        self.records.extend(other.records);
    }

    pub fn all_passed(&self) -> bool {
        self.records.iter().all(Record::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Record> {
        self.records.iter().filter(|r| !r.passed())
    }

    pub fn get(&self, id: &str) -> Option<&Record> {
        self.records.iter().find(|r| r.id == id)
    }

    pub fn to_value(&self) -> Value {
        serde_json::to_value(self).expect("report serializes")
    }

    pub fn summary(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            let mode = match r.mode {
                Mode::Exhaustive => "exhaustive",
                Mode::Sampled => "sampled",
                Mode::Direct => "direct",
            };
            let status = if r.passed() { "PASS" } else { "FAIL" };
            out.push_str(&format!("{status} {} [{}] {} cases, {mode}\n", r.id, r.reference, r.cases));
        }
        let failed = self.failures().count();
        out.push_str(&format!("{}: {} checks, {failed} failed\n", self.subject, self.records.len()));
        out
    }
}

fn fnv1a(s: &str) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in s.bytes() {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    h
}

impl SamplingPolicy {
    pub fn rng_for(&self, id: &str) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed ^ fnv1a(id))
    }

    /// Number of points in the full domain, `None` if infinite or too large
    /// to represent.
    pub fn domain_size<R: Ring>(&self, r: &R, n: usize, vars: &[Var]) -> Option<u128> {
        let q = r.cardinality()?;
        let mut total: u128 = 1;
        for v in vars {
            let size = match v {
                Var::Vector => q.checked_pow(n as u32)?,
                Var::Additive => (n * r.degree()) as u128,
                Var::Scalar => q,
            };
            total = total.checked_mul(size)?;
        }
        Some(total)
    }

    /// Evaluates `pred` on the domain of `vars` and summarizes the outcome.
    pub fn check<R: Ring, V: Verdict>(
        &self,
        r: &R,
        n: usize,
        id: &str,
        reference: &str,
        vars: &[Var],
        pred: impl Fn(&Point<R::Elem>) -> V,
    ) -> Record {
        let exhaustive = self.domain_size(r, n, vars).filter(|&s| s <= self.exhaustive_threshold);
        let mut cases = 0u64;
        let mut witness = None;
        let mut run = |p: Point<R::Elem>| -> bool {
            match pred(&p).verdict() {
                Some(true) => {
                    cases += 1;
                    true
                }
                Some(false) => {
                    cases += 1;
                    witness = Some(point_to_value(r, &p));
                    false
                }
                None => true,
            }
        };
        let mode = match exhaustive {
            Some(total) => {
                for idx in 0..total {
                    if !run(point_at(r, n, vars, idx)) {
                        break;
                    }
                }
                Mode::Exhaustive
            }
            None => {
                let mut rng = self.rng_for(id);
                for _ in 0..self.samples {
                    let p = Point {
                        v: vars
                            .iter()
                            .filter(|v| **v != Var::Scalar)
                            .map(|_| (0..n).map(|_| r.sample(&mut rng)).collect())
                            .collect(),
                        s: vars.iter().filter(|v| **v == Var::Scalar).map(|_| r.sample(&mut rng)).collect(),
                    };
                    if !run(p) {
                        break;
                    }
                }
                Mode::Sampled
            }
        };
        Record {
            id: id.into(),
            reference: reference.into(),
            status: if witness.is_none() { Status::Pass } else { Status::Fail },
            mode,
            cases,
            witness,
        }
    }
}

fn point_at<R: Ring>(r: &R, n: usize, vars: &[Var], mut idx: u128) -> Point<R::Elem> {
    let q = r.cardinality().expect("finite ring");
    let mut p = Point { v: Vec::new(), s: Vec::new() };
    for var in vars {
        match var {
            Var::Vector => {
                let v = (0..n)
                    .map(|_| {
                        let e = r.element_at(idx % q);
                        idx /= q;
                        e
                    })
                    .collect();
                p.v.push(v);
            }
            Var::Additive => {
                let size = (n * r.degree()) as u128;
                p.v.push(linalg::base_basis_vector(r, n, (idx % size) as usize));
                idx /= size;
            }
            Var::Scalar => {
                p.s.push(r.element_at(idx % q));
                idx /= q;
            }
        }
    }
    p
}

pub fn point_to_value<R: Ring>(r: &R, p: &Point<R::Elem>) -> Value {
    json!({
        "vectors": p.v.iter().map(|v| Value::Array(v.iter().map(|x| r.emit(x)).collect())).collect::<Vec<_>>(),
        "scalars": p.s.iter().map(|x| r.emit(x)).collect::<Vec<_>>(),
    })
}
