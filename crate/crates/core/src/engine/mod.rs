//! Rule-based decision procedure for membership in the cosupport of a ring.

mod describe;
mod modules;
mod trace;

use std::collections::HashMap;
use std::sync::RwLock;

use crate::cotorsion::CfError;
use crate::kernel::{with_step_limit, KernelError};
use crate::ring::{is_maximal, PrimeId, PrimeStatus, Ring, RingError, RingMap, RingMapKind, Tri};

pub use describe::{notclosed_witness, CrResult, Description, PrimeFamily, WitnessFailure};
pub use modules::ModuleResult;
pub use trace::{anchor, Attr, Premise, Step, RULES};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum EngineError {
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Cf(#[from] CfError),
    #[error("undecided: {0}")]
    Unknown(String),
    #[error("rule conflict at {0}")]
    Conflict(String),
}

impl From<KernelError> for EngineError {
    fn from(e: KernelError) -> Self {
        EngineError::Ring(e.into())
    }
}

#[derive(Clone, Debug)]
pub struct EngineOptions {
    pub assume_gruson_jensen: bool,
    pub max_reduction_depth: usize,
    /// Gröbner step budget per query.
    pub max_steps: Option<u64>,
}

impl Default for EngineOptions {
    fn default() -> Self {
        EngineOptions { assume_gruson_jensen: false, max_reduction_depth: 32, max_steps: None }
    }
}

/// A rule that was tried and did not fire.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Frontier {
    pub rule_id: String,
    pub reason: String,
}

#[derive(Clone, Debug)]
pub struct Membership {
    pub verdict: Tri,
    pub trace: Vec<Step>,
    pub assumptions: Vec<String>,
    pub frontier: Vec<Frontier>,
}

impl Membership {
    fn decided(value: bool, trace: Vec<Step>) -> Membership {
        let mut assumptions = Vec::new();
        for s in &trace {
            for a in &s.assumptions {
                if !assumptions.contains(a) {
                    assumptions.push(a.clone());
                }
            }
        }
        Membership { verdict: Tri::from_bool(value), trace, assumptions, frontier: Vec::new() }
    }

    fn unknown(reason: impl Into<String>, trace: Vec<Step>, frontier: Vec<Frontier>) -> Membership {
        let mut m = Membership::decided(false, trace);
        m.verdict = Tri::unknown(reason);
        m.frontier = frontier;
        m
    }

    pub fn uses_conjecture(&self) -> bool {
        self.trace.iter().any(|s| s.conjecture)
    }
}

/// Complete local: local, with maximal ideal inside the certified
/// completeness ideal.
pub(crate) fn is_complete_local(ring: &Ring) -> Result<bool, RingError> {
    if !ring.is_computable() {
        return Ok(false);
    }
    let a = ring.attrs()?;
    match (&a.maximal_ideal, a.is_local.is_true()) {
        (Some(m), true) => ring.contains_all(&a.c_known, m),
        _ => Ok(false),
    }
}

fn subject(ring: &Ring, p: &PrimeId) -> String {
    format!("{p} in {ring}")
}

pub struct Engine {
    pub opts: EngineOptions,
    maps: Vec<RingMap>,
    families: Vec<PrimeFamily>,
    battery: Vec<PrimeId>,
    memo: RwLock<HashMap<String, Membership>>,
}

impl Engine {
    pub fn new(opts: EngineOptions) -> Engine {
        Engine { opts, maps: Vec::new(), families: Vec::new(), battery: Vec::new(), memo: RwLock::new(HashMap::new()) }
    }

    /// A fresh engine with the same options and registrations but an empty memo.
    pub fn fork(&self) -> Engine {
        Engine {
            opts: self.opts.clone(),
            maps: self.maps.clone(),
            families: self.families.clone(),
            battery: self.battery.clone(),
            memo: RwLock::new(HashMap::new()),
        }
    }

    pub fn register_map(&mut self, map: RingMap) {
        self.maps.push(map);
    }

    pub fn register_family(&mut self, family: PrimeFamily) {
        self.families.push(family);
    }

    /// Adds a prime to the probe battery used when no closed form is known.
    pub fn register_prime(&mut self, p: PrimeId) {
        self.battery.push(p);
    }

    pub(crate) fn budget<T>(&self, f: impl FnOnce() -> T) -> T {
        match self.opts.max_steps {
            Some(n) => with_step_limit(n, f),
            None => f(),
        }
    }

    /// Whether `p` lies in the cosupport of its ring.
    pub fn member(&self, p: &PrimeId) -> Result<Membership, EngineError> {
        p.ensure_usable()?;
        self.budget(|| self.member_at(p, 0))
    }

    fn key(p: &PrimeId) -> String {
        let gens: Vec<String> = p.gens.iter().map(|g| g.to_string()).collect();
        format!("{}|{}", p.ring.desc(), gens.join(","))
    }

    fn member_at(&self, p: &PrimeId, depth: usize) -> Result<Membership, EngineError> {
        let key = Engine::key(p);
        if let Some(hit) = self.memo.read().unwrap().get(&key) {
            let mut m = hit.clone();
            let step = match m.verdict.value() {
                Some(v) => Step::new("MEMO", subject(&p.ring, p), "cached verdict", vec![Premise::Verdict { ring: p.ring.clone(), prime: p.clone(), value: v }]),
                None => Step::new("MEMO", subject(&p.ring, p), "cached unknown", Vec::new()),
            };
            m.trace.insert(0, step);
            return Ok(m);
        }
        if depth > self.opts.max_reduction_depth {
            return Ok(Membership::unknown(
                format!("reduction depth {} exceeded", self.opts.max_reduction_depth),
                Vec::new(),
                vec![Frontier { rule_id: "REDUCE-QUOT".into(), reason: "depth limit".into() }],
            ));
        }
        let m = self.derive(p, depth)?;
        self.memo.write().unwrap().insert(key, m.clone());
        Ok(m)
    }

    fn derive(&self, p: &PrimeId, depth: usize) -> Result<Membership, EngineError> {
        let ring = &p.ring;
        let subj = subject(ring, p);
        let a = ring.attrs()?.clone();
        let zero = p.is_zero_ideal()?;
        let mut frontier = Vec::new();
        let miss = |f: &mut Vec<Frontier>, id: &str, why: String| f.push(Frontier { rule_id: id.into(), reason: why });
        let asserted = (p.status == PrimeStatus::Asserted && !zero).then(|| format!("{p} is prime in {ring} (asserted)"));
        let tag = |mut s: Step| {
            if let Some(a) = &asserted {
                s.assumptions.push(a.clone());
            }
            s
        };

        // refutations
        if ring.is_computable() && !a.c_known.is_empty() {
            if !ring.contains_all(&p.gens, &a.c_known)? {
                let step = Step::new(
                    "RULE-UPPER",
                    subj.clone(),
                    "not in cosupport: the prime misses the completeness ideal",
                    vec![
                        Premise::CompleteAt { ring: ring.clone(), gens: a.c_known.clone() },
                        Premise::NotContained { ring: ring.clone(), ideal: p.gens.clone(), gens: a.c_known.clone() },
                    ],
                );
                return self.refuted(p, vec![tag(step)]);
            }
        } else {
            miss(&mut frontier, "RULE-UPPER", "no nonzero completeness ideal is known".into());
        }
        let quotient = if zero { ring.clone() } else { p.quotient_ring()? };
        if is_complete_local(&quotient)? && quotient.attrs()?.krull_dim.lo >= 1 {
            let mut trace = Vec::new();
            if !zero {
                trace.push(tag(Step::new(
                    "REDUCE-QUOT",
                    subj.clone(),
                    format!("reduce to (0) in {quotient}"),
                    vec![Premise::Quotient { ring: ring.clone(), prime: p.clone(), quotient: quotient.clone() }],
                )));
            }
            let qa = quotient.attrs()?;
            trace.push(tag(Step::new(
                "RULE-COMPLOC",
                subject(&quotient, &PrimeId::zero(&quotient)),
                "not in cosupport: (0) is not the maximal ideal of a complete local ring of positive dimension",
                vec![Premise::CompleteLocal { ring: quotient.clone() }, Premise::Dim { ring: quotient.clone(), dim: qa.krull_dim }],
            )));
            return self.refuted(p, trace);
        }
        miss(&mut frontier, "RULE-COMPLOC", format!("{quotient} is not known to be complete local of positive dimension"));

        // affirmations
        if zero && a.is_field.is_true() {
            let step = Step::new(
                "RULE-FIELD",
                subj,
                "in cosupport",
                vec![Premise::Attr { ring: ring.clone(), attr: Attr::Field, value: true }, Premise::ZeroIdeal { prime: p.clone() }],
            );
            return Ok(Membership::decided(true, vec![step]));
        }
        let max = is_maximal(p)?;
        if max.is_true() {
            let step = Step::new("RULE-MAX", subj, "in cosupport", vec![Premise::Maximal { prime: p.clone() }]);
            return Ok(Membership::decided(true, vec![tag(step)]));
        }
        miss(&mut frontier, "RULE-MAX", format!("{p} is not known to be maximal"));
        match self.full_rule(ring, &mut frontier)? {
            Some(steps) => {
                let mut trace: Vec<Step> = steps.into_iter().map(tag).collect();
                if let Some(last) = trace.last_mut() {
                    last.conclusion = format!("in cosupport: {}", last.conclusion);
                    last.subject = subj.clone();
                }
                return Ok(Membership::decided(true, trace));
            }
            None => {}
        }

        // transfers
        if ring.is_computable() && !ring.is_localization() && !a.c_known.is_empty() {
            let core = ring.quotient(a.c_known.clone(), false)?;
            let q = PrimeId { ring: core.clone(), ..p.clone() };
            let sub = self.member_at(&q, depth + 1)?;
            if let Some(v) = sub.verdict.value() {
                let mut trace = vec![tag(Step::new(
                    "RULE-COMPLETE-IDEAL",
                    subj.clone(),
                    format!("transfer to {core}"),
                    vec![
                        Premise::CompleteAt { ring: ring.clone(), gens: a.c_known.clone() },
                        Premise::Contained { ring: ring.clone(), ideal: p.gens.clone(), gens: a.c_known.clone() },
                        Premise::Verdict { ring: core.clone(), prime: q.clone(), value: v },
                    ],
                ))];
                trace.extend(sub.trace);
                return Ok(Membership::decided(v, trace));
            }
            for f in sub.frontier {
                miss(&mut frontier, &f.rule_id, format!("in {core}: {}", f.reason));
            }
        } else {
            miss(&mut frontier, "RULE-COMPLETE-IDEAL", "no completeness ideal to pass to".into());
        }
        for map in self.maps.iter().filter(|m| m.target == *ring && m.is_finite()) {
            let contracted = match map.contract_prime(p) {
                Ok(c) => c,
                Err(RingError::NotComputable(why)) => {
                    miss(&mut frontier, "RULE-FINITE-MAP", why);
                    continue;
                }
                Err(e) => return Err(e.into()),
            };
            let sub = self.member_at(&contracted, depth + 1)?;
            if let Some(v) = sub.verdict.value() {
                let mut step = Step::new(
                    "RULE-FINITE-MAP",
                    subj.clone(),
                    format!("pull back along {} -> {ring}", map.source),
                    vec![
                        Premise::Contraction { map: map.clone(), prime: p.clone(), contracted: contracted.clone() },
                        Premise::Verdict { ring: map.source.clone(), prime: contracted.clone(), value: v },
                    ],
                );
                if let RingMapKind::Finite { .. } = map.kind {
                    step.assumptions.push(format!("{} -> {ring} is finite (asserted)", map.source));
                }
                let mut trace = vec![tag(step)];
                trace.extend(sub.trace);
                return Ok(Membership::decided(v, trace));
            }
            miss(&mut frontier, "RULE-FINITE-MAP", format!("verdict over {} is unknown", map.source));
        }

        if !zero {
            let q0 = PrimeId::zero(&quotient);
            let sub = self.member_at(&q0, depth + 1)?;
            let reduce = tag(Step::new(
                "REDUCE-QUOT",
                subj,
                format!("reduce to (0) in {quotient}"),
                vec![Premise::Quotient { ring: ring.clone(), prime: p.clone(), quotient: quotient.clone() }],
            ));
            let mut trace = vec![reduce];
            trace.extend(sub.trace);
            return Ok(match sub.verdict.value() {
                Some(v) => {
                    trace[0].premises.push(Premise::Verdict { ring: quotient, prime: q0, value: v });
                    Membership::decided(v, trace)
                }
                None => {
                    frontier.extend(sub.frontier);
                    Membership::unknown(sub.verdict.reason().unwrap_or("no rule applies").to_string(), trace, frontier)
                }
            });
        }

        let mut reason = format!("no rule decides (0) in {ring}");
        if a.is_domain.is_true() && a.c_known.is_empty() && a.c_exact.is_true() && a.countable.is_false() {
            reason = format!("{ring} is an uncountable domain complete only at (0); which such domains have full cosupport is open");
            miss(&mut frontier, "OPEN", "full cosupport of domains that are complete only at the zero ideal is an open question".into());
        }
        Ok(Membership::unknown(reason, Vec::new(), frontier))
    }

    fn refuted(&self, p: &PrimeId, trace: Vec<Step>) -> Result<Membership, EngineError> {
        if is_maximal(p)?.is_true() {
            return Err(EngineError::Conflict(format!("{p} in {} is maximal but was refuted", p.ring)));
        }
        Ok(Membership::decided(false, trace))
    }

    /// A rule giving the whole ring full cosupport, as a derivation whose
    /// last step concludes it.
    fn full_rule(&self, ring: &Ring, frontier: &mut Vec<Frontier>) -> Result<Option<Vec<Step>>, EngineError> {
        let a = ring.attrs()?;
        let subj = ring.to_string();
        let miss = |f: &mut Vec<Frontier>, id: &str, why: String| f.push(Frontier { rule_id: id.into(), reason: why });
        if a.is_field.is_true() {
            let s = Step::new("RULE-FIELD", subj, "full cosupport", vec![Premise::Attr { ring: ring.clone(), attr: Attr::Field, value: true }]);
            return Ok(Some(vec![s]));
        }
        if a.countable.is_true() {
            let s = Step::new("RULE-COUNTABLE", subj, "full cosupport", vec![Premise::Attr { ring: ring.clone(), attr: Attr::Countable, value: true }]);
            return Ok(Some(vec![s]));
        }
        miss(frontier, "RULE-COUNTABLE", format!("{ring} is not known to be countable"));
        if a.is_domain.is_true() && a.krull_dim.value() == Some(1) {
            let mut premises = vec![
                Premise::Attr { ring: ring.clone(), attr: Attr::Domain, value: true },
                Premise::Dim { ring: ring.clone(), dim: a.krull_dim },
            ];
            let not_complete_local = if a.is_local.is_false() {
                premises.push(Premise::Attr { ring: ring.clone(), attr: Attr::Local, value: false });
                true
            } else if a.is_local.is_true() && a.c_exact.is_true() {
                match &a.maximal_ideal {
                    Some(m) if ring.is_computable() && !ring.contains_all(&a.c_known, m)? => {
                        premises.push(Premise::Attr { ring: ring.clone(), attr: Attr::Local, value: true });
                        premises.push(Premise::Attr { ring: ring.clone(), attr: Attr::CExact, value: true });
                        premises.push(Premise::NotContained { ring: ring.clone(), ideal: a.c_known.clone(), gens: m.clone() });
                        true
                    }
                    Some(m) if !ring.is_computable() && a.c_known.is_empty() && m.iter().any(|g| !g.is_zero()) => {
                        premises.push(Premise::Attr { ring: ring.clone(), attr: Attr::Local, value: true });
                        premises.push(Premise::Attr { ring: ring.clone(), attr: Attr::CExact, value: true });
                        true
                    }
                    _ => false,
                }
            } else {
                false
            };
            if not_complete_local {
                return Ok(Some(vec![Step::new("RULE-DIM1", subj, "full cosupport", premises)]));
            }
            miss(frontier, "RULE-DIM1", format!("{ring} is not known to be other than complete local"));
        } else {
            miss(frontier, "RULE-DIM1", format!("{ring} is not known to be a one-dimensional domain"));
        }
        let affine = if ring.is_computable() && !ring.is_localization() {
            let c = ring.canonical()?;
            c.is_affine().then(|| c.dims()).transpose()?
        } else {
            None
        };
        match affine {
            Some((lo, hi)) if hi <= 2 && lo == hi => {
                let s = Step::new(
                    "RULE-KXY",
                    subj,
                    "full cosupport: finite over a polynomial ring in at most two variables by Noether normalization",
                    vec![Premise::Affine { ring: ring.clone(), dim: hi }],
                );
                return Ok(Some(vec![s]));
            }
            _ => miss(frontier, "RULE-KXY", format!("{ring} is not known to be of finite type over a field with dimension at most 2")),
        }
        for map in self.maps.iter().filter(|m| m.target == *ring && m.is_finite() && m.source != *ring) {
            let mut sub = Vec::new();
            if let Some(mut steps) = self.full_rule(&map.source, &mut sub)? {
                let mut step = Step::new("RULE-FINITE-MAP", subj.clone(), format!("full cosupport, finite over {}", map.source), Vec::new());
                if let RingMapKind::Finite { .. } = map.kind {
                    step.assumptions.push(format!("{} -> {ring} is finite (asserted)", map.source));
                }
                steps.push(step);
                return Ok(Some(steps));
            }
        }
        if affine.is_some() {
            if self.opts.assume_gruson_jensen {
                let mut s = Step::new(
                    "RULE-GJ",
                    subj,
                    "full cosupport, assuming the Gruson-Jensen conjecture",
                    vec![Premise::Affine { ring: ring.clone(), dim: affine.unwrap().1 }],
                );
                s.conjecture = true;
                s.assumptions.push("Gruson-Jensen conjecture".into());
                return Ok(Some(vec![s]));
            }
            miss(frontier, "RULE-GJ", "conjecture-based rule disabled (--assume-gruson-jensen)".into());
        }
        Ok(None)
    }

    /// Re-verifies every premise of a trace; verdict premises are
    /// re-derived with a fresh memo.
    pub fn replay(&self, trace: &[Step]) -> Result<(), String> {
        let fresh = self.fork();
        for step in trace {
            if step.rule_id == "MEMO" {
                continue;
            }
            if step.conjecture && !self.opts.assume_gruson_jensen {
                return Err(format!("{step} depends on the conjecture flag"));
            }
            for premise in &step.premises {
                if let Premise::Verdict { prime, value, .. } = premise {
                    let m = fresh.member(prime).map_err(|e| e.to_string())?;
                    if m.verdict.value() != Some(*value) {
                        return Err(format!("{step}: sub-verdict changed for {premise}"));
                    }
                } else {
                    premise.recheck().map_err(|e| format!("{step}: {e}"))?;
                }
            }
        }
        Ok(())
    }
}
