use crate::kernel::{Ideal, Poly};
use crate::ring::{is_maximal, PrimeId, Ring, RingError, RingMap, Tri};
use crate::specset::{closed_v, NotClosed, SpecSet};

use super::trace::{Attr, Premise, Step};
use super::{is_complete_local, Engine, EngineError, Frontier};

/// An indexed family of primes given by generator templates in which the
/// index name is replaced by 1, 2, ...
#[derive(Clone, Debug)]
pub struct PrimeFamily {
    pub name: String,
    pub ring: Ring,
    pub index: String,
    pub templates: Vec<String>,
}

fn substitute_index(text: &str, index: &str, n: u64) -> String {
    let mut out = String::new();
    let mut word = String::new();
    let flush = |word: &mut String, out: &mut String| {
        if word == index {
            out.push_str(&n.to_string());
        } else {
            out.push_str(word);
        }
        word.clear();
    };
    for ch in text.chars() {
        if ch.is_alphanumeric() || ch == '_' {
            word.push(ch);
        } else {
            flush(&mut word, &mut out);
            out.push(ch);
        }
    }
    flush(&mut word, &mut out);
    out
}

impl PrimeFamily {
    pub fn member(&self, n: u64) -> Result<PrimeId, RingError> {
        let texts: Vec<String> = self.templates.iter().map(|t| substitute_index(t, &self.index, n)).collect();
        let gens = texts.iter().map(|t| self.ring.parse(t)).collect::<Result<Vec<_>, _>>()?;
        let mut p = PrimeId::new(&self.ring, gens)?.named(&format!("{}_{n}", self.name));
        p.apply_check(None, false)?;
        Ok(p)
    }

    pub fn label(&self) -> String {
        format!("{} = ({}) for {} = 1, 2, ...", self.name, self.templates.join(", "), self.index)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessFailure {
    pub step: String,
    pub reason: String,
}

impl std::fmt::Display for WitnessFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "step {} failed: {}", self.step, self.reason)
    }
}

/// Checks that the first `n` members of `family` are maximal, lie in the
/// cosupport, and cut out strictly decreasing intersections, and that
/// `no_prime` lies outside the cosupport.
pub fn notclosed_witness(engine: &Engine, family: &PrimeFamily, n: u64, no_prime: &PrimeId) -> Result<Result<NotClosed, WitnessFailure>, EngineError> {
    let fail = |step: &str, reason: String| Ok(Err(WitnessFailure { step: step.into(), reason }));
    let ring = &family.ring;
    if no_prime.ring != *ring {
        return Err(RingError::Mismatch(format!("{} vs {ring}", no_prime.ring)).into());
    }
    let ambient = ring.ambient();
    let mut members = Vec::new();
    let mut checked = Vec::new();
    for i in 1..=n {
        let p = family.member(i)?;
        if p.status == crate::ring::PrimeStatus::Refuted {
            return fail("maximal", format!("{} is not prime: {}", p.label(), p.reason.clone().unwrap_or_default()));
        }
        let t = is_maximal(&p)?;
        if !t.is_true() {
            return fail("maximal", format!("{} is not known to be maximal: {}", p.label(), t.reason().unwrap_or("")));
        }
        members.push(p);
    }
    checked.push(format!("each of the first {n} members is a maximal ideal"));
    for p in &members {
        let m = engine.member(p)?;
        if !m.verdict.is_true() {
            return fail("cosupport", format!("{} is not known to lie in the cosupport", p.label()));
        }
    }
    checked.push(format!("each of the first {n} members lies in the cosupport"));
    let mut running = Ideal::unit(ambient);
    for p in &members {
        let next = running.intersect(&Ideal::new(ambient, p.gens.clone())?)?;
        if next.contains_ideal(&running)? {
            return fail("strict-decrease", format!("intersection does not shrink at {}", p.label()));
        }
        running = next;
    }
    checked.push(format!(
        "intersections of the first 1..{n} members strictly decrease (computed in the polynomial ring {})",
        ambient.vars().join(",")
    ));
    let m = engine.member(no_prime)?;
    if !m.verdict.is_false() {
        let why = match m.verdict.value() {
            Some(true) => "it lies in the cosupport".to_string(),
            _ => format!("its verdict is unknown: {}", m.verdict.reason().unwrap_or("")),
        };
        return fail("outside", format!("{no_prime} is not shown to be outside the cosupport: {why}"));
    }
    checked.push(format!("{no_prime} lies outside the cosupport"));
    let trusted = vec![
        "ideal arithmetic for the family is done in the polynomial subring on the same variables".to_string(),
        "the intersection of all family members is zero: an element divisible by infinitely many pairwise non-associate primes of a factorial domain vanishes".to_string(),
        "so any closed set containing the cosupport is V(0), which contains the excluded prime".to_string(),
    ];
    Ok(Ok(NotClosed { ring: ring.to_string(), family: family.label(), members, no_prime: no_prime.clone(), checked, trusted }))
}

#[derive(Clone, Debug)]
pub struct Description {
    pub set: SpecSet,
    /// Whether `set` is exactly the cosupport (as opposed to a probe).
    pub exact: Tri,
    pub trace: Vec<Step>,
    pub frontier: Vec<Frontier>,
}

#[derive(Clone, Debug)]
pub struct CrResult {
    pub value: Tri,
    pub witness: Option<PrimeId>,
    pub trace: Vec<Step>,
}

impl Engine {
    /// Structural primes probed when no closed form is available: the zero
    /// ideal, each variable, and the ideal of all variables.
    fn structural_primes(&self, ring: &Ring) -> Vec<PrimeId> {
        let mut out = Vec::new();
        let ambient = ring.ambient();
        let mut cands: Vec<Vec<Poly>> = vec![Vec::new()];
        for i in 0..ambient.nvars() {
            cands.push(vec![ambient.var(i)]);
        }
        if ambient.nvars() > 1 {
            cands.push((0..ambient.nvars()).map(|i| ambient.var(i)).collect());
        }
        for gens in cands {
            let Ok(mut p) = PrimeId::new(ring, gens) else { continue };
            if let Ok(t) = p.apply_check(None, false) {
                if t.is_true() {
                    out.push(p);
                }
            }
        }
        out
    }

    pub fn describe(&self, ring: &Ring) -> Result<Description, EngineError> {
        self.budget(|| self.describe_at(ring, 0))
    }

    fn describe_at(&self, ring: &Ring, depth: usize) -> Result<Description, EngineError> {
        let mut frontier = Vec::new();
        if let Some(trace) = self.full_rule(ring, &mut frontier)? {
            let step = Step::new("DESCRIBE-FULL", ring.to_string(), "cosupp = Spec", Vec::new());
            let mut trace = trace;
            trace.push(step);
            return Ok(Description { set: SpecSet::Full, exact: Tri::yes(), trace, frontier: Vec::new() });
        }
        let a = ring.attrs()?.clone();
        if is_complete_local(ring)? {
            let m = a.maximal_ideal.clone().unwrap_or_default();
            let mut mp = PrimeId::new(ring, m)?;
            mp.apply_check(None, false)?;
            let step = Step::new("RULE-COMPLOC", ring.to_string(), format!("cosupp = {{{mp}}}"), vec![Premise::CompleteLocal { ring: ring.clone() }]);
            return Ok(Description { set: SpecSet::FiniteSet(vec![mp]), exact: Tri::yes(), trace: vec![step], frontier: Vec::new() });
        }
        if ring.is_computable() && !ring.is_localization() && !a.c_known.is_empty() && depth < self.opts.max_reduction_depth {
            let pi = RingMap::projection(ring, a.c_known.clone())?;
            let core = self.describe_at(&pi.target, depth + 1)?;
            let mut trace = vec![Step::new(
                "DESCRIBE-CLOSED",
                ring.to_string(),
                format!("transfer from {}", pi.target),
                vec![Premise::CompleteAt { ring: ring.clone(), gens: a.c_known.clone() }],
            )];
            trace.extend(core.trace);
            let set = match &core.set {
                SpecSet::Full => closed_v(ring, a.c_known.clone())?,
                SpecSet::Partial { yes, no, notes, certificate } => {
                    let lift = |ps: &[PrimeId]| ps.iter().map(|q| pi.contract_prime(q)).collect::<Result<Vec<_>, _>>();
                    let mut notes = notes.clone();
                    notes.push(format!("primes lifted from {}", pi.target));
                    SpecSet::Partial { yes: lift(yes)?, no: lift(no)?, notes, certificate: certificate.clone() }
                }
                other => other.pullback(&pi)?,
            };
            return Ok(Description { set, exact: core.exact, trace, frontier: core.frontier });
        }

        // probe
        let mut probes: Vec<PrimeId> = self.battery.iter().filter(|p| p.ring == *ring).cloned().collect();
        for p in self.structural_primes(ring) {
            let dup = probes.iter().any(|q| q.gens == p.gens);
            if !dup {
                probes.push(p);
            }
        }
        let (mut yes, mut no, mut notes) = (Vec::new(), Vec::new(), Vec::new());
        for p in &probes {
            if p.ensure_usable().is_err() {
                continue;
            }
            let m = self.member(p)?;
            match m.verdict.value() {
                Some(true) => yes.push(p.clone()),
                Some(false) => no.push(p.clone()),
                None => notes.push(format!("{p}: unknown ({})", m.verdict.reason().unwrap_or(""))),
            }
            if m.verdict.is_unknown() {
                for f in m.frontier {
                    if !frontier.contains(&f) {
                        frontier.push(f);
                    }
                }
            }
        }
        let mut certificate = None;
        if let Some(bad) = no.first() {
            for fam in self.families.iter().filter(|f| f.ring == *ring) {
                if let Ok(cert) = notclosed_witness(self, fam, 4, bad)? {
                    notes.push(format!("not closed: witnessed by the family {}", fam.label()));
                    for m in &cert.members {
                        if !yes.iter().any(|q: &PrimeId| q.gens == m.gens) {
                            yes.push(m.clone());
                        }
                    }
                    certificate = Some(Box::new(cert));
                    break;
                }
            }
        }
        let step = Step::new(
            "DESCRIBE-PROBE",
            ring.to_string(),
            format!("{} in, {} out, {} undecided", yes.len(), no.len(), probes.len().saturating_sub(yes.len() + no.len())),
            Vec::new(),
        );
        Ok(Description {
            set: SpecSet::Partial { yes, no, notes, certificate },
            exact: Tri::unknown("no closed form; probed primes only"),
            trace: vec![step],
            frontier,
        })
    }

    /// Whether cosupp R = V(c_R), decided through R/c_known.
    pub fn cr_criterion(&self, ring: &Ring) -> Result<CrResult, EngineError> {
        let a = ring.attrs()?.clone();
        if !a.c_exact.is_true() {
            return Ok(CrResult {
                value: Tri::unknown(format!("the completeness ideal of {ring} is not certified: {}", a.c_exact.reason().unwrap_or(""))),
                witness: None,
                trace: Vec::new(),
            });
        }
        let core = if a.c_known.is_empty() { ring.clone() } else { ring.quotient(a.c_known.clone(), false)? };
        let d = self.describe(&core)?;
        let premise = Premise::Attr { ring: ring.clone(), attr: Attr::CExact, value: true };
        let mut trace = vec![Step::new("DESCRIBE-CLOSED", ring.to_string(), format!("examine {core}"), vec![premise])];
        trace.extend(d.trace.clone());
        if matches!(d.set, SpecSet::Full) {
            return Ok(CrResult { value: Tri::yes().because(format!("{core} has full cosupport")), witness: None, trace });
        }
        let no = match &d.set {
            SpecSet::Partial { no, .. } => no.first().cloned(),
            _ => None,
        };
        match no {
            Some(q) => {
                let lifted = PrimeId { ring: ring.clone(), ..q.clone() };
                Ok(CrResult {
                    value: Tri::no().because(format!("{lifted} contains c but lies outside the cosupport")),
                    witness: Some(lifted),
                    trace,
                })
            }
            None => Ok(CrResult { value: Tri::unknown(format!("full cosupport of {core} not decided")), witness: None, trace }),
        }
    }
}
