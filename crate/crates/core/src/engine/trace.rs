use std::fmt;

use crate::kernel::Poly;
use crate::ring::{is_maximal, DimBounds, PrimeId, Ring, RingMap};

/// Rule identifiers and the statement each one applies. The identifiers are
/// stable and appear verbatim in reports.
pub const RULES: &[(&str, &str)] = &[
    ("REDUCE-QUOT", "p lies in cosupp R iff (0) lies in cosupp R/p, via the finite surjection R -> R/p"),
    ("RULE-FIELD", "a field has full cosupport"),
    ("RULE-MAX", "every maximal ideal lies in cosupp R"),
    ("RULE-COUNTABLE", "a countable noetherian ring has full cosupport"),
    ("RULE-DIM1", "a one-dimensional noetherian domain that is not complete local has full cosupport"),
    ("RULE-KXY", "k[x,y] has full cosupport for every field k, and so does every finite ring extension of it"),
    ("RULE-UPPER", "cosupp R is contained in V(a) whenever R is a-adically complete"),
    ("RULE-COMPLOC", "a complete local ring (R, m) has cosupp R = {m}"),
    ("RULE-COMPLETE-IDEAL", "if R is I-adically complete, Spec(R/I) -> V(I) restricts to a bijection cosupp R/I -> cosupp R"),
    ("RULE-FINITE-MAP", "for a finite map f: R -> S, q lies in cosupp S iff f*(q) lies in cosupp R"),
    ("RULE-GJ", "conjectural: nonvanishing of Ext^i(K, R) for polynomial rings at i = min(c+1, n) gives full cosupport to finite type algebras over a field"),
    ("MEMO", "verdict reused from an earlier derivation for the same ring and prime"),
    ("DESCRIBE-FULL", "a ring with full cosupport has cosupp R = Spec R"),
    ("DESCRIBE-CLOSED", "cosupp R = V(c_R) iff R/c_R has full cosupport"),
    ("DESCRIBE-PROBE", "verdicts of individual primes, collected without a closed form"),
    ("SUPP-FITTING", "the support of a finitely generated module is V(Fitt_0)"),
    ("COSUPP-MODULE", "cosupp M = supp M meet cosupp R for M with finitely generated cohomology, given finite Krull dimension or perfection"),
    ("COSUPP-TENSOR", "cosupp (X tensor Y) = supp X meet cosupp Y for finitely generated X under the boundedness hypotheses"),
    ("COSUPP-KAPPA", "over a ring of finite Krull dimension, cosupp k(p) = {p} = supp k(p)"),
    ("COSUPP-INJECTIVE", "cosupp E(R/p) consists of the primes contained in p"),
    ("NOTCLOSED", "infinitely many maximal ideals with zero intersection in cosupp R, plus a prime outside it, make cosupp R non-closed"),
];

pub fn anchor(rule_id: &str) -> &'static str {
    RULES.iter().find(|(id, _)| *id == rule_id).map(|(_, a)| *a).unwrap_or_else(|| panic!("unknown rule {rule_id}"))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Attr {
    Countable,
    Domain,
    Field,
    Local,
    CExact,
}

impl Attr {
    pub fn name(&self) -> &'static str {
        match self {
            Attr::Countable => "countable",
            Attr::Domain => "domain",
            Attr::Field => "field",
            Attr::Local => "local",
            Attr::CExact => "c_exact",
        }
    }
}

/// A fact a step relies on. Every variant except `Assumed` can be checked
/// again from scratch.
#[derive(Clone, Debug)]
pub enum Premise {
    /// `gens ⊄ ideal` in `ring`.
    NotContained { ring: Ring, ideal: Vec<Poly>, gens: Vec<Poly> },
    /// `gens ⊆ ideal` in `ring`.
    Contained { ring: Ring, ideal: Vec<Poly>, gens: Vec<Poly> },
    /// `ring` is complete with respect to `(gens)`.
    CompleteAt { ring: Ring, gens: Vec<Poly> },
    Maximal { prime: PrimeId },
    Attr { ring: Ring, attr: Attr, value: bool },
    Dim { ring: Ring, dim: DimBounds },
    /// `ring` is a finitely generated algebra over a field of dimension `dim`.
    Affine { ring: Ring, dim: usize },
    /// Complete local with maximal ideal inside the certified completeness ideal.
    CompleteLocal { ring: Ring },
    ZeroIdeal { prime: PrimeId },
    /// `quotient = ring / prime`.
    Quotient { ring: Ring, prime: PrimeId, quotient: Ring },
    /// `contracted = map*(prime)`.
    Contraction { map: RingMap, prime: PrimeId, contracted: PrimeId },
    /// A verdict established by the steps that follow.
    Verdict { ring: Ring, prime: PrimeId, value: bool },
    Assumed(String),
}

fn polys(ps: &[Poly]) -> String {
    let v: Vec<String> = ps.iter().map(|p| p.to_string()).collect();
    format!("({})", if v.is_empty() { "0".to_string() } else { v.join(", ") })
}

impl fmt::Display for Premise {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Premise::NotContained { ring, ideal, gens } => write!(f, "{} not inside {} in {ring}", polys(gens), polys(ideal)),
            Premise::Contained { ring, ideal, gens } => write!(f, "{} inside {} in {ring}", polys(gens), polys(ideal)),
            Premise::CompleteAt { ring, gens } => write!(f, "{ring} is complete at {}", polys(gens)),
            Premise::Maximal { prime } => write!(f, "{prime} is maximal in {}", prime.ring),
            Premise::Attr { ring, attr, value } => write!(f, "{ring}: {} = {value}", attr.name()),
            Premise::Dim { ring, dim } => write!(f, "dim {ring} = {dim}"),
            Premise::Affine { ring, dim } => write!(f, "{ring} is of finite type over a field, dimension {dim}"),
            Premise::CompleteLocal { ring } => write!(f, "{ring} is complete local"),
            Premise::ZeroIdeal { prime } => write!(f, "{prime} is the zero ideal of {}", prime.ring),
            Premise::Quotient { ring, prime, quotient } => write!(f, "{ring} / {prime} = {quotient}"),
            Premise::Contraction { map, prime, contracted } => {
                write!(f, "contraction of {prime} along {} -> {} is {contracted}", map.source, map.target)
            }
            Premise::Verdict { ring, prime, value } => {
                write!(f, "{prime} {} cosupp {ring}", if *value { "in" } else { "not in" })
            }
            Premise::Assumed(s) => write!(f, "assumed: {s}"),
        }
    }
}

impl Premise {
    pub fn kind(&self) -> &'static str {
        match self {
            Premise::NotContained { .. } => "not_contained",
            Premise::Contained { .. } => "contained",
            Premise::CompleteAt { .. } => "complete_at",
            Premise::Maximal { .. } => "maximal",
            Premise::Attr { .. } => "attr",
            Premise::Dim { .. } => "dim",
            Premise::Affine { .. } => "affine",
            Premise::CompleteLocal { .. } => "complete_local",
            Premise::ZeroIdeal { .. } => "zero_ideal",
            Premise::Quotient { .. } => "quotient",
            Premise::Contraction { .. } => "contraction",
            Premise::Verdict { .. } => "verdict",
            Premise::Assumed(_) => "assumed",
        }
    }

    /// Re-establishes the premise. `Verdict` is left to the caller, since it
    /// needs an engine.
    pub fn recheck(&self) -> Result<(), String> {
        let fail = |what: &str| Err(format!("{what}: {self}"));
        let ok = |b: bool| if b { Ok(()) } else { fail("premise no longer holds") };
        let err = |e: crate::ring::RingError| format!("{e} while checking: {self}");
        match self {
            Premise::NotContained { ring, ideal, gens } => ok(!ring.contains_all(ideal, gens).map_err(err)?),
            Premise::Contained { ring, ideal, gens } => ok(ring.contains_all(ideal, gens).map_err(err)?),
            Premise::CompleteAt { ring, gens } => {
                let c = &ring.attrs().map_err(err)?.c_known;
                ok(ring.same_ideal(c, gens).map_err(err)?)
            }
            Premise::Maximal { prime } => ok(is_maximal(prime).map_err(err)?.is_true()),
            Premise::Attr { ring, attr, value } => {
                let a = ring.attrs().map_err(err)?;
                let t = match attr {
                    Attr::Countable => &a.countable,
                    Attr::Domain => &a.is_domain,
                    Attr::Field => &a.is_field,
                    Attr::Local => &a.is_local,
                    Attr::CExact => &a.c_exact,
                };
                ok(t.value() == Some(*value))
            }
            Premise::Dim { ring, dim } => ok(ring.attrs().map_err(err)?.krull_dim == *dim),
            Premise::Affine { ring, dim } => {
                let c = ring.canonical().map_err(err)?;
                ok(c.is_affine() && c.dims().map_err(err)? == (*dim, *dim))
            }
            Premise::CompleteLocal { ring } => ok(super::is_complete_local(ring).map_err(err)?),
            Premise::ZeroIdeal { prime } => ok(prime.is_zero_ideal().map_err(err)?),
            Premise::Quotient { ring, prime, quotient } => ok(prime.ring == *ring && prime.quotient_ring().map_err(err)? == *quotient),
            Premise::Contraction { map, prime, contracted } => {
                let c = map.contract_prime(prime).map_err(err)?;
                ok(c.same_as(contracted).map_err(err)?)
            }
            Premise::Verdict { .. } | Premise::Assumed(_) => Ok(()),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Step {
    pub rule_id: &'static str,
    pub paper_anchor: &'static str,
    /// Ring and prime the step concludes about.
    pub subject: String,
    pub conclusion: String,
    pub premises: Vec<Premise>,
    pub assumptions: Vec<String>,
    pub conjecture: bool,
}

impl Step {
    pub fn new(rule_id: &'static str, subject: String, conclusion: impl Into<String>, premises: Vec<Premise>) -> Step {
        Step {
            rule_id,
            paper_anchor: anchor(rule_id),
            subject,
            conclusion: conclusion.into(),
            premises,
            assumptions: Vec::new(),
            conjecture: false,
        }
    }

    pub fn assuming(mut self, a: impl Into<String>) -> Step {
        self.assumptions.push(a.into());
        self
    }
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {}: {}", self.rule_id, self.subject, self.conclusion)?;
        if self.conjecture {
            write!(f, " (conjecture)")?;
        }
        Ok(())
    }
}
