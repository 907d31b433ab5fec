//! Symbolic cotorsion flat modules (products of completed free localizations)
//! and complexes of them.

use std::fmt;

use crate::kernel::Poly;
use crate::ring::{is_maximal, PrimeId, Ring, RingError, RingMap, RingMapKind, Tri};
use crate::specset::SpecSet;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CfError {
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error("cannot decide whether {0} contains {1}")]
    Undecidable(String, String),
    #[error("invalid complex: {0}")]
    Validation(String),
    #[error("detection requires minimality: {0}")]
    NotMinimal(String),
    #[error("base change along a non-quotient map needs supplied fibers")]
    NoFibers,
}

/// Size of the index set of one component.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum CardTag {
    Zero,
    Finite(u64),
    CountablyInfinite,
    Symbolic(String),
}

impl CardTag {
    pub fn add(&self, other: &CardTag) -> CardTag {
        use CardTag::*;
        match (self, other) {
            (Zero, c) | (c, Zero) => c.clone(),
            (CountablyInfinite, _) | (_, CountablyInfinite) => CountablyInfinite,
            (Finite(a), Finite(b)) => Finite(a.saturating_add(*b)),
            (a, b) => Symbolic(format!("{a}+{b}")),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, CardTag::Zero | CardTag::Finite(0))
    }
}

impl fmt::Display for CardTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CardTag::Zero => write!(f, "0"),
            CardTag::Finite(n) => write!(f, "{n}"),
            CardTag::CountablyInfinite => write!(f, "aleph0"),
            CardTag::Symbolic(s) => write!(f, "{s}"),
        }
    }
}

/// The prime indexing a component: a single prime, or the whole family of
/// maximal ideals containing an ideal (one factor per maximal ideal).
#[derive(Clone, Debug)]
pub enum CfPrime {
    Explicit(PrimeId),
    MaximalAbove(Vec<Poly>),
}

impl fmt::Display for CfPrime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CfPrime::Explicit(p) => write!(f, "{p}"),
            CfPrime::MaximalAbove(i) if i.is_empty() => write!(f, "max"),
            CfPrime::MaximalAbove(i) => {
                let g: Vec<String> = i.iter().map(|p| p.to_string()).collect();
                write!(f, "max({})", g.join(", "))
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct Component {
    pub prime: CfPrime,
    pub card: CardTag,
}

#[derive(Clone, Debug)]
pub struct CFModule {
    pub ring: Ring,
    pub components: Vec<Component>,
}

fn undecided(a: &impl fmt::Display, b: &impl fmt::Display) -> CfError {
    CfError::Undecidable(a.to_string(), b.to_string())
}

/// `a ⊆ b` for ideals of a computable ring.
fn ideal_within(ring: &Ring, a: &[Poly], b: &[Poly]) -> Result<Option<bool>, RingError> {
    if !ring.is_computable() {
        if a.is_empty() {
            return Ok(Some(true));
        }
        return Ok(None);
    }
    ring.contains_all(b, a).map(Some)
}

fn same_prime(ring: &Ring, a: &CfPrime, b: &CfPrime) -> Result<bool, CfError> {
    match (a, b) {
        (CfPrime::Explicit(p), CfPrime::Explicit(q)) => {
            if !ring.is_computable() {
                if p.gens == q.gens {
                    return Ok(true);
                }
                return Err(undecided(p, q));
            }
            Ok(p.same_as(q)?)
        }
        (CfPrime::MaximalAbove(i), CfPrime::MaximalAbove(j)) => {
            if !ring.is_computable() {
                return if i == j { Ok(true) } else { Err(undecided(a, b)) };
            }
            Ok(ring.same_ideal(i, j)?)
        }
        _ => Ok(false),
    }
}

impl CFModule {
    pub fn zero(ring: &Ring) -> CFModule {
        CFModule { ring: ring.clone(), components: Vec::new() }
    }

    /// Builds a module, pruning zero cards and merging repeated primes.
    pub fn new(ring: &Ring, comps: Vec<Component>) -> Result<CFModule, CfError> {
        let mut m = CFModule::zero(ring);
        for c in comps {
            m.push(c)?;
        }
        Ok(m)
    }

    fn push(&mut self, c: Component) -> Result<(), CfError> {
        if c.card.is_zero() {
            return Ok(());
        }
        if let CfPrime::Explicit(p) = &c.prime {
            p.ensure_usable()?;
            if p.ring != self.ring {
                return Err(RingError::Mismatch(format!("prime of {} in a module over {}", p.ring, self.ring)).into());
            }
        }
        for existing in &mut self.components {
            if same_prime(&self.ring, &existing.prime, &c.prime)? {
                existing.card = existing.card.add(&c.card);
                return Ok(());
            }
        }
        self.components.push(c);
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    /// Equality of component sets and cards.
    pub fn same_as(&self, other: &CFModule) -> Result<bool, CfError> {
        if self.components.len() != other.components.len() {
            return Ok(false);
        }
        'outer: for a in &self.components {
            for b in &other.components {
                if same_prime(&self.ring, &a.prime, &b.prime)? {
                    if a.card != b.card {
                        return Ok(false);
                    }
                    continue 'outer;
                }
            }
            return Ok(false);
        }
        Ok(true)
    }
}

impl fmt::Display for CFModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.components.iter().map(|c| format!("T{}^{}", c.prime, c.card)).collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" x "))
        }
    }
}

fn plus(ring: &Ring, i: &[Poly], p: &PrimeId) -> Result<Option<Vec<Poly>>, CfError> {
    let mut all = i.to_vec();
    all.extend(p.gens.iter().cloned());
    if !ring.is_computable() {
        return Err(undecided(&CfPrime::MaximalAbove(i.to_vec()), p));
    }
    if ring.is_unit_ideal(&all)? {
        return Ok(None);
    }
    Ok(Some(all))
}

/// Keeps the components at primes containing `p`.
pub fn cf_completion(t: &CFModule, p: &PrimeId) -> Result<CFModule, CfError> {
    p.ensure_usable()?;
    let mut out = CFModule::zero(&t.ring);
    for c in &t.components {
        match &c.prime {
            CfPrime::Explicit(q) => match ideal_within(&t.ring, &p.gens, &q.gens)? {
                Some(true) => out.push(c.clone())?,
                Some(false) => {}
                None => return Err(undecided(q, p)),
            },
            CfPrime::MaximalAbove(i) => {
                if let Some(all) = plus(&t.ring, i, p)? {
                    out.push(Component { prime: CfPrime::MaximalAbove(all), card: c.card.clone() })?;
                }
            }
        }
    }
    Ok(out)
}

/// Keeps the components at primes contained in `p`.
pub fn cf_colocalize(t: &CFModule, p: &PrimeId) -> Result<CFModule, CfError> {
    p.ensure_usable()?;
    let mut out = CFModule::zero(&t.ring);
    for c in &t.components {
        match &c.prime {
            CfPrime::Explicit(q) => match ideal_within(&t.ring, &q.gens, &p.gens)? {
                Some(true) => out.push(c.clone())?,
                Some(false) => {}
                None => return Err(undecided(p, q)),
            },
            CfPrime::MaximalAbove(i) => {
                // a maximal ideal inside p is p itself
                let above = ideal_within(&t.ring, i, &p.gens)?.ok_or_else(|| undecided(p, &c.prime))?;
                if !above {
                    continue;
                }
                match is_maximal(p)?.value() {
                    Some(true) => out.push(Component { prime: CfPrime::Explicit(p.clone()), card: c.card.clone() })?,
                    Some(false) => {}
                    None => return Err(undecided(&c.prime, p)),
                }
            }
        }
    }
    Ok(out)
}

/// Base change along a finite map. Quotient projections compute their own
/// fibers; other maps need `fibers` listing the primes over each source prime.
pub fn cf_basechange(t: &CFModule, f: &RingMap, fibers: Option<&[(PrimeId, Vec<PrimeId>)]>) -> Result<CFModule, CfError> {
    if f.source != t.ring {
        return Err(RingError::Mismatch(format!("module over {} along a map from {}", t.ring, f.source)).into());
    }
    let mut out = CFModule::zero(&f.target);
    for c in &t.components {
        match (&c.prime, &f.kind) {
            (CfPrime::Explicit(p), RingMapKind::QuotientProjection { .. }) if fibers.is_none() => {
                for q in f.fiber_primes(p)? {
                    out.push(Component { prime: CfPrime::Explicit(q), card: c.card.clone() })?;
                }
            }
            (CfPrime::Explicit(p), _) => {
                let Some(table) = fibers else { return Err(CfError::NoFibers) };
                let mut found = None;
                for (src, over) in table {
                    if src.same_as(p)? {
                        found = Some(over);
                        break;
                    }
                }
                let over = found.ok_or(CfError::NoFibers)?;
                for q in over {
                    out.push(Component { prime: CfPrime::Explicit(q.clone()), card: c.card.clone() })?;
                }
            }
            (CfPrime::MaximalAbove(i), RingMapKind::QuotientProjection { kernel }) => {
                let mut all = i.clone();
                all.extend(kernel.iter().cloned());
                if f.source.is_computable() && f.source.is_unit_ideal(&all)? {
                    continue;
                }
                out.push(Component { prime: CfPrime::MaximalAbove(all), card: c.card.clone() })?;
            }
            (CfPrime::MaximalAbove(_), _) => return Err(CfError::NoFibers),
        }
    }
    Ok(out)
}

/// One product factor per prime, each of rank one.
pub fn cf_prescribe(ring: &Ring, primes: &[PrimeId]) -> Result<CFModule, CfError> {
    let comps = primes.iter().map(|p| Component { prime: CfPrime::Explicit(p.clone()), card: CardTag::Finite(1) }).collect();
    CFModule::new(ring, comps)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DiffTag {
    Zero,
    /// Nonzero after reducing modulo the prime.
    NonzeroModP,
    /// Nonzero, but zero modulo the prime.
    ZeroModPNonzero,
    Unknown,
}

impl DiffTag {
    pub fn name(&self) -> &'static str {
        match self {
            DiffTag::Zero => "zero",
            DiffTag::NonzeroModP => "nonzero_mod_p",
            DiffTag::ZeroModPNonzero => "zero_mod_p",
            DiffTag::Unknown => "unknown",
        }
    }

    pub fn parse(s: &str) -> Option<DiffTag> {
        Some(match s {
            "zero" => DiffTag::Zero,
            "nonzero_mod_p" => DiffTag::NonzeroModP,
            "zero_mod_p" => DiffTag::ZeroModPNonzero,
            "unknown" => DiffTag::Unknown,
            _ => return None,
        })
    }
}

/// Entry of the differential from component `from` in degree `degree` to
/// component `to` in degree `degree + 1`.
#[derive(Clone, Debug)]
pub struct DiffEntry {
    pub degree: i64,
    pub from: usize,
    pub to: usize,
    pub tag: DiffTag,
}

#[derive(Clone, Debug)]
pub struct CFComplex {
    pub ring: Ring,
    /// Degree of `modules[0]`.
    pub start: i64,
    pub modules: Vec<CFModule>,
    pub entries: Vec<DiffEntry>,
    pub semiflat: Tri,
    pub bounded_left: bool,
}

/// Whether two component primes can share a prime.
fn may_overlap(ring: &Ring, a: &CfPrime, b: &CfPrime) -> Result<Tri, CfError> {
    Ok(match (a, b) {
        (CfPrime::Explicit(p), CfPrime::Explicit(q)) => {
            if !ring.is_computable() {
                if p.gens == q.gens {
                    Tri::yes()
                } else {
                    Tri::unknown(format!("equality of {p} and {q} over the integers"))
                }
            } else {
                Tri::from_bool(p.same_as(q)?)
            }
        }
        (CfPrime::MaximalAbove(i), CfPrime::MaximalAbove(j)) => {
            let mut all = i.clone();
            all.extend(j.iter().cloned());
            if !ring.is_computable() {
                Tri::unknown("maximal families over the integers")
            } else {
                Tri::from_bool(!ring.is_unit_ideal(&all)?)
            }
        }
        (CfPrime::MaximalAbove(i), CfPrime::Explicit(q)) | (CfPrime::Explicit(q), CfPrime::MaximalAbove(i)) => {
            match ideal_within(ring, i, &q.gens)? {
                Some(false) => Tri::no(),
                Some(true) => is_maximal(q)?,
                None => Tri::unknown(format!("containment of {q} over the integers")),
            }
        }
    })
}

fn comparable(ring: &Ring, a: &CfPrime, b: &CfPrime) -> Result<Tri, CfError> {
    match (a, b) {
        (CfPrime::Explicit(p), CfPrime::Explicit(q)) => {
            if !ring.is_computable() {
                return Ok(Tri::unknown("containment over the integers"));
            }
            Ok(Tri::from_bool(p.contained_in(q)? || q.contained_in(p)?))
        }
        _ => Ok(Tri::unknown("families of maximal ideals are not compared")),
    }
}

impl CFComplex {
    /// Validates entry indices and forces entries between incomparable
    /// primes to be zero.
    pub fn new(
        ring: &Ring,
        start: i64,
        modules: Vec<CFModule>,
        entries: Vec<DiffEntry>,
        semiflat: Tri,
        bounded_left: bool,
    ) -> Result<CFComplex, CfError> {
        for m in &modules {
            if m.ring != *ring {
                return Err(CfError::Validation(format!("module over {} in a complex over {ring}", m.ring)));
            }
        }
        let end = start + modules.len() as i64;
        for e in &entries {
            if e.degree < start || e.degree + 1 >= end {
                return Err(CfError::Validation(format!("differential entry in degree {} is outside the complex", e.degree)));
            }
            let src = &modules[(e.degree - start) as usize];
            let dst = &modules[(e.degree - start + 1) as usize];
            let (Some(a), Some(b)) = (src.components.get(e.from), dst.components.get(e.to)) else {
                return Err(CfError::Validation(format!("differential entry {}:{}->{} names a missing component", e.degree, e.from, e.to)));
            };
            if e.tag != DiffTag::Zero && comparable(ring, &a.prime, &b.prime)?.is_false() {
                return Err(CfError::Validation(format!(
                    "entry {}:{}->{} between incomparable primes {} and {} must be zero",
                    e.degree, e.from, e.to, a.prime, b.prime
                )));
            }
        }
        Ok(CFComplex { ring: ring.clone(), start, modules, entries, semiflat, bounded_left })
    }

    pub fn single(module: CFModule) -> CFComplex {
        CFComplex {
            ring: module.ring.clone(),
            start: 0,
            modules: vec![module],
            entries: Vec::new(),
            semiflat: Tri::yes().because("a single cotorsion flat module is flat"),
            bounded_left: true,
        }
    }

    fn tag(&self, degree: i64, from: usize, to: usize) -> DiffTag {
        self.entries
            .iter()
            .rev()
            .find(|e| e.degree == degree && e.from == from && e.to == to)
            .map_or(DiffTag::Unknown, |e| e.tag)
    }
}

/// Minimality via vanishing of every differential entry between components
/// at the same prime after reduction modulo that prime.
pub fn cf_is_minimal(b: &CFComplex) -> Result<Tri, CfError> {
    let mut acc = Tri::yes().because("every diagonal entry vanishes modulo its prime");
    for (k, pair) in b.modules.windows(2).enumerate() {
        let degree = b.start + k as i64;
        for (i, a) in pair[0].components.iter().enumerate() {
            for (j, c) in pair[1].components.iter().enumerate() {
                let overlap = may_overlap(&b.ring, &a.prime, &c.prime)?;
                if overlap.is_false() {
                    continue;
                }
                let t = match b.tag(degree, i, j) {
                    DiffTag::Zero | DiffTag::ZeroModPNonzero => continue,
                    DiffTag::NonzeroModP if overlap.is_true() => {
                        return Ok(Tri::no().because(format!(
                            "degree {degree} entry {} -> {} is nonzero modulo the prime",
                            a.prime, c.prime
                        )))
                    }
                    DiffTag::NonzeroModP => Tri::unknown(format!("whether {} and {} share a prime", a.prime, c.prime)),
                    DiffTag::Unknown => Tri::unknown(format!("degree {degree} entry {} -> {} is unknown", a.prime, c.prime)),
                };
                acc = acc.and(&t);
            }
        }
    }
    Ok(acc)
}

/// Primes carried by a minimal complex.
#[derive(Clone, Debug)]
pub struct CfPrimes {
    pub primes: Vec<PrimeId>,
    /// Ideals `I` whose maximal ideals above all occur.
    pub families: Vec<Vec<Poly>>,
    /// Whether these are exactly the cosupport of the represented complex.
    pub equals_cosupport: Tri,
    pub checks: Vec<String>,
}

impl CfPrimes {
    pub fn as_specset(&self, ring: &Ring) -> Result<SpecSet, CfError> {
        if self.families.is_empty() {
            return Ok(if self.primes.is_empty() { SpecSet::Empty } else { SpecSet::FiniteSet(self.primes.clone()) });
        }
        let all_max = self.families.iter().any(|i| i.iter().all(|g| g.is_zero()));
        if all_max {
            let a = ring.attrs()?;
            let has_zero = self.primes.iter().any(|p| p.gens.is_empty());
            if a.is_domain.is_true() && a.krull_dim.hi.is_some_and(|d| d <= 1) && has_zero {
                return Ok(SpecSet::Full);
            }
        }
        let mut notes = vec!["carries every maximal ideal above:".to_string()];
        for i in &self.families {
            notes.push(CfPrime::MaximalAbove(i.clone()).to_string());
        }
        Ok(SpecSet::Partial { yes: self.primes.clone(), no: Vec::new(), notes, certificate: None })
    }
}

pub fn cf_primes(b: &CFComplex) -> Result<CfPrimes, CfError> {
    let minimal = cf_is_minimal(b)?;
    if !minimal.is_true() {
        return Err(CfError::NotMinimal(minimal.reason().unwrap_or("minimality not established").to_string()));
    }
    let mut all = CFModule::zero(&b.ring);
    for m in &b.modules {
        for c in &m.components {
            all.push(Component { prime: c.prime.clone(), card: CardTag::Finite(1) })?;
        }
    }
    let mut primes = Vec::new();
    let mut families = Vec::new();
    for c in all.components {
        match c.prime {
            CfPrime::Explicit(p) => primes.push(p),
            CfPrime::MaximalAbove(i) => families.push(i),
        }
    }
    let mut checks = vec!["complex is minimal".to_string()];
    let dim = b.ring.attrs()?.krull_dim;
    let bounded = if dim.is_finite() {
        checks.push(format!("ring has finite Krull dimension {dim}"));
        true
    } else if b.bounded_left {
        checks.push("complex is bounded on the left".to_string());
        true
    } else {
        false
    };
    let equals_cosupport = match (b.semiflat.value(), bounded) {
        (Some(true), true) => {
            checks.push("complex is semiflat (asserted)".to_string());
            Tri::yes().because("minimal semiflat complex of cotorsion flat modules")
        }
        (Some(true), false) => Tri::unknown("neither finite dimension nor left boundedness is established"),
        _ => Tri::unknown("semiflatness not asserted"),
    };
    Ok(CfPrimes { primes, families, equals_cosupport, checks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::RingDesc;

    fn qxy() -> Ring {
        Ring::new(RingDesc::rationals().poly(&["x", "y"]).unwrap()).unwrap()
    }

    fn p(r: &Ring, g: &[&str]) -> PrimeId {
        PrimeId::parse(r, g).unwrap()
    }

    fn comp(q: PrimeId, card: CardTag) -> Component {
        Component { prime: CfPrime::Explicit(q), card }
    }

    #[test]
    fn card_algebra() {
        use CardTag::*;
        assert_eq!(Finite(2).add(&Finite(3)), Finite(5));
        assert_eq!(Symbolic("X".into()).add(&CountablyInfinite), CountablyInfinite);
        assert_eq!(Zero.add(&Symbolic("X".into())), Symbolic("X".into()));
        assert_eq!(Symbolic("X".into()).add(&Finite(1)), Symbolic("X+1".into()));
    }

    #[test]
    fn filters_on_a_local_domain() {
        let r = Ring::new(RingDesc::rationals().poly(&["x"]).unwrap().localize(&["x"]).unwrap()).unwrap();
        let m = p(&r, &["x"]);
        let t = CFModule::new(&r, vec![comp(PrimeId::zero(&r), CardTag::Finite(1)), comp(m.clone(), CardTag::Finite(1))]).unwrap();
        let done = cf_completion(&t, &m).unwrap();
        assert_eq!(done.components.len(), 1);
        assert!(same_prime(&r, &done.components[0].prime, &CfPrime::Explicit(m.clone())).unwrap());
        assert!(cf_completion(&t, &PrimeId::zero(&r)).unwrap().same_as(&t).unwrap());
        let co = cf_colocalize(&t, &PrimeId::zero(&r)).unwrap();
        assert_eq!(co.components.len(), 1);
        assert!(cf_colocalize(&t, &m).unwrap().same_as(&t).unwrap());
    }

    #[test]
    fn filters_on_the_plane() {
        let r = qxy();
        let t = CFModule::new(&r, vec![comp(p(&r, &["x"]), CardTag::Finite(1))]).unwrap();
        assert!(cf_completion(&t, &p(&r, &["x", "y"])).unwrap().is_zero());
        let t = CFModule::new(&r, vec![comp(p(&r, &["x"]), CardTag::Finite(1)), comp(p(&r, &["y"]), CardTag::Finite(1))]).unwrap();
        let co = cf_colocalize(&t, &p(&r, &["x"])).unwrap();
        assert_eq!(co.components.len(), 1);
        assert_eq!(co.components[0].prime.to_string(), "(x)");
    }

    #[test]
    fn base_change_along_projections() {
        let r = Ring::new(RingDesc::rationals().poly(&["x"]).unwrap()).unwrap();
        let pi = RingMap::projection(&r, r.parse_all(&["x"]).unwrap()).unwrap();
        let t = CFModule::new(&r, vec![comp(p(&r, &["x"]), CardTag::Symbolic("X".into()))]).unwrap();
        let s = cf_basechange(&t, &pi, None).unwrap();
        assert_eq!(s.components.len(), 1);
        assert_eq!(s.components[0].card, CardTag::Symbolic("X".into()));
        let CfPrime::Explicit(q) = &s.components[0].prime else { panic!() };
        assert!(q.is_zero_ideal().unwrap());

        let t = CFModule::new(&r, vec![comp(p(&r, &["x - 1"]), CardTag::Finite(1))]).unwrap();
        assert!(cf_basechange(&t, &pi, None).unwrap().is_zero());

        let r = qxy();
        let pi = RingMap::projection(&r, r.parse_all(&["y"]).unwrap()).unwrap();
        let t = CFModule::new(&r, vec![comp(p(&r, &["y", "x^2 + 1"]), CardTag::Finite(2))]).unwrap();
        let s = cf_basechange(&t, &pi, None).unwrap();
        assert_eq!(s.components[0].card, CardTag::Finite(2));
        let CfPrime::Explicit(q) = &s.components[0].prime else { panic!() };
        assert!(q.same_as(&p(&pi.target, &["x^2 + 1"])).unwrap());
    }

    #[test]
    fn minimality() {
        let r = qxy();
        let m = p(&r, &["x", "y"]);
        let t = CFModule::new(&r, vec![comp(m.clone(), CardTag::Finite(1))]).unwrap();
        let entry = |tag| vec![DiffEntry { degree: 0, from: 0, to: 0, tag }];
        let split = CFComplex::new(&r, 0, vec![t.clone(), t.clone()], entry(DiffTag::NonzeroModP), Tri::yes(), true).unwrap();
        assert!(cf_is_minimal(&split).unwrap().is_false());
        assert!(cf_primes(&split).is_err());
        let zero = CFComplex::new(&r, 0, vec![t.clone(), t.clone()], entry(DiffTag::Zero), Tri::yes(), true).unwrap();
        assert!(cf_is_minimal(&zero).unwrap().is_true());
        let unk = CFComplex::new(&r, 0, vec![t.clone(), t], entry(DiffTag::Unknown), Tri::yes(), true).unwrap();
        assert!(cf_is_minimal(&unk).unwrap().is_unknown());
    }

    #[test]
    fn incomparable_entries_rejected() {
        let r = qxy();
        let a = CFModule::new(&r, vec![comp(p(&r, &["x"]), CardTag::Finite(1))]).unwrap();
        let b = CFModule::new(&r, vec![comp(p(&r, &["y"]), CardTag::Finite(1))]).unwrap();
        let e = vec![DiffEntry { degree: 0, from: 0, to: 0, tag: DiffTag::NonzeroModP }];
        assert!(matches!(CFComplex::new(&r, 0, vec![a, b], e, Tri::yes(), true), Err(CfError::Validation(_))));
    }

    #[test]
    fn pure_injective_resolution_of_a_line() {
        let r = Ring::new(RingDesc::rationals().poly(&["x"]).unwrap()).unwrap();
        let maxes = CFModule::new(&r, vec![Component { prime: CfPrime::MaximalAbove(Vec::new()), card: CardTag::Finite(1) }]).unwrap();
        let generic = CFModule::new(&r, vec![comp(PrimeId::zero(&r), CardTag::Symbolic("X0".into()))]).unwrap();
        let b = CFComplex::new(&r, 0, vec![maxes, generic], Vec::new(), Tri::yes(), true).unwrap();
        assert!(cf_is_minimal(&b).unwrap().is_true());
        let ps = cf_primes(&b).unwrap();
        assert!(ps.equals_cosupport.is_true());
        assert!(matches!(ps.as_specset(&r).unwrap(), SpecSet::Full));
    }

    #[test]
    fn prescribed_round_trip() {
        let r = Ring::new(RingDesc::rationals().poly(&["x"]).unwrap()).unwrap();
        let w = vec![PrimeId::zero(&r), p(&r, &["x"])];
        let m = cf_prescribe(&r, &w).unwrap();
        assert_eq!(m.components.len(), 2);
        let ps = cf_primes(&CFComplex::single(m)).unwrap();
        assert_eq!(ps.primes.len(), 2);
        assert!(cf_prescribe(&r, &[]).unwrap().is_zero());
    }
}
