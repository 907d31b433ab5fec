use std::fmt;

use crate::kernel::Poly;

use super::{LayerKind, Ring, RingError, Tri};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PrimeStatus {
    Asserted,
    Verified,
    Refuted,
}

impl PrimeStatus {
    pub fn name(&self) -> &'static str {
        match self {
            PrimeStatus::Asserted => "asserted",
            PrimeStatus::Verified => "verified",
            PrimeStatus::Refuted => "refuted",
        }
    }
}

/// A prime ideal of a described ring, given by generators in the ring's
/// ambient polynomial ring.
#[derive(Clone, Debug)]
pub struct PrimeId {
    pub ring: Ring,
    pub gens: Vec<Poly>,
    pub status: PrimeStatus,
    pub height_hint: Option<usize>,
    pub name: Option<String>,
    /// Why the status was assigned.
    pub reason: Option<String>,
}

impl PrimeId {
    /// A caller-asserted prime; run [`check_prime`] to verify or refute it.
    pub fn new(ring: &Ring, gens: Vec<Poly>) -> Result<PrimeId, RingError> {
        let gens = gens
            .iter()
            .map(|g| g.embed(ring.ambient()))
            .collect::<Result<Vec<_>, _>>()?
            .into_iter()
            .filter(|g| !g.is_zero())
            .collect();
        Ok(PrimeId { ring: ring.clone(), gens, status: PrimeStatus::Asserted, height_hint: None, name: None, reason: None })
    }

    pub fn parse(ring: &Ring, gens: &[&str]) -> Result<PrimeId, RingError> {
        PrimeId::new(ring, ring.parse_all(gens)?)
    }

    /// Parses and checks in one go; errors if the prime is refuted.
    pub fn checked(ring: &Ring, gens: &[&str]) -> Result<PrimeId, RingError> {
        let mut p = PrimeId::parse(ring, gens)?;
        p.apply_check(None, false)?;
        p.ensure_usable()?;
        Ok(p)
    }

    pub fn zero(ring: &Ring) -> PrimeId {
        PrimeId::new(ring, Vec::new()).expect("zero ideal embeds")
    }

    pub fn named(mut self, name: &str) -> PrimeId {
        self.name = Some(name.to_string());
        self
    }

    /// Runs [`check_prime`] and records the outcome in the status.
    pub fn apply_check(&mut self, witness: Option<(Poly, Poly)>, irreducible: bool) -> Result<Tri, RingError> {
        let t = check_prime(self, witness, irreducible)?;
        self.status = match t.value() {
            Some(true) => PrimeStatus::Verified,
            Some(false) => PrimeStatus::Refuted,
            None => PrimeStatus::Asserted,
        };
        self.reason = t.reason().map(str::to_string);
        Ok(t)
    }

    pub fn ensure_usable(&self) -> Result<(), RingError> {
        if self.status == PrimeStatus::Refuted {
            return Err(RingError::RefutedPrime(self.to_string(), self.reason.clone().unwrap_or_default()));
        }
        Ok(())
    }

    pub fn is_zero_ideal(&self) -> Result<bool, RingError> {
        if self.gens.is_empty() {
            return Ok(true);
        }
        if !self.ring.is_computable() {
            return Ok(false);
        }
        self.ring.contains_all(&[], &self.gens)
    }

    /// Ideal equality in the ring.
    pub fn same_as(&self, other: &PrimeId) -> Result<bool, RingError> {
        if self.ring != other.ring {
            return Err(RingError::Mismatch(format!("{} vs {}", self.ring, other.ring)));
        }
        self.ring.same_ideal(&self.gens, &other.gens)
    }

    /// `self ⊆ other`.
    pub fn contained_in(&self, other: &PrimeId) -> Result<bool, RingError> {
        if self.ring != other.ring {
            return Err(RingError::Mismatch(format!("{} vs {}", self.ring, other.ring)));
        }
        self.ring.contains_all(&other.gens, &self.gens)
    }

    /// `R / p` as a ring known to be a domain.
    pub fn quotient_ring(&self) -> Result<Ring, RingError> {
        self.ensure_usable()?;
        self.ring.quotient(self.gens.clone(), true)
    }

    pub fn label(&self) -> String {
        match &self.name {
            Some(n) => format!("{n} = {self}"),
            None => self.to_string(),
        }
    }
}

impl fmt::Display for PrimeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.gens.iter().map(|g| g.to_string()).collect();
        if gens.is_empty() {
            write!(f, "(0)")
        } else {
            write!(f, "({})", gens.join(", "))
        }
    }
}

impl PartialEq for PrimeId {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.gens == other.gens
    }
}

/// Refutes primes that are the unit ideal or split a supplied product
/// witness; verifies primes whose quotient is a tower over a field, the zero
/// ideal of a domain, and principal primes with an irreducibility
/// certificate in a unique factorization tower. Everything else stays
/// asserted.
pub fn check_prime(p: &PrimeId, witness: Option<(Poly, Poly)>, irreducible: bool) -> Result<Tri, RingError> {
    let ring = &p.ring;
    if !ring.is_computable() {
        if p.gens.iter().any(|g| g.is_constant()) && !ring.desc().over_integers() {
            return Ok(Tri::no().because("unit ideal"));
        }
        return Ok(Tri::unknown("primality over the integers is caller-asserted"));
    }
    if ring.is_unit_ideal(&p.gens)? {
        return Ok(Tri::no().because("generators span the unit ideal"));
    }
    if let Some((a, b)) = witness {
        let a = a.embed(ring.ambient())?;
        let b = b.embed(ring.ambient())?;
        if ring.contains(&p.gens, &(&a * &b))? && !ring.contains(&p.gens, &a)? && !ring.contains(&p.gens, &b)? {
            return Ok(Tri::no().because(format!("({a})*({b}) lies in the ideal but neither factor does")));
        }
    }
    if p.is_zero_ideal()? && ring.attrs()?.is_domain.is_true() {
        return Ok(Tri::yes().because("zero ideal of a domain"));
    }
    if ring.is_localization() {
        return Ok(Tri::unknown("primality in a localization is caller-asserted"));
    }
    let q = ring.quotient(p.gens.clone(), false)?;
    let canon = q.canonical()?;
    if canon.relations.is_empty() {
        return Ok(Tri::yes().because(format!("quotient is isomorphic to the domain {}", canon.to_desc()?)));
    }
    let rc = ring.canonical()?;
    if irreducible && p.gens.len() == 1 && rc.relations.is_empty() && rc.layers.len() <= 2 {
        let ufd = rc.layers.len() <= 1 || rc.layers[0].kind == LayerKind::PowerSeries || rc.layers[0].vars.len() == 1;
        if ufd {
            return Ok(Tri::yes().because("irreducible element of a factorial ring"));
        }
    }
    Ok(Tri::unknown("primality asserted by the caller"))
}

/// Whether `p` is a maximal ideal: `R / p` is a domain, so maximality is
/// `dim R/p = 0`.
pub fn is_maximal(p: &PrimeId) -> Result<Tri, RingError> {
    p.ensure_usable()?;
    let ring = &p.ring;
    if let Some(m) = &ring.model().local_at {
        if !ring.is_computable() {
            let nonzero = p.gens.iter().any(|g| !g.is_zero());
            let m_nonzero = m.iter().any(|g| !g.is_zero());
            if ring.model().layers.is_empty() && ring.model().relations.is_empty() {
                return Ok(Tri::from_bool(nonzero == m_nonzero).because("primes of a localized integer ring"));
            }
            return Ok(Tri::unknown("maximality over the integers beyond Z and its localizations"));
        }
        let tower = ring.model().without_localization();
        let mut pj = p.gens.clone();
        pj.extend(ring.model().relations.iter().cloned());
        return Ok(Tri::from_bool(tower.contains_all(&pj, m)?).because("the maximal ideal of a localization is its prime"));
    }
    if !ring.is_computable() {
        if ring.model().layers.is_empty() && ring.model().relations.is_empty() {
            let nonzero = p.gens.iter().any(|g| !g.is_zero());
            return Ok(Tri::from_bool(nonzero).because("nonzero primes of Z are maximal"));
        }
        return Ok(Tri::unknown("maximality in rings over the integers is not computed"));
    }
    let q = p.quotient_ring()?;
    let dim = q.attrs()?.krull_dim;
    Ok(match dim.value() {
        Some(0) => Tri::yes().because("the quotient is a zero-dimensional domain, hence a field"),
        _ if dim.lo >= 1 => Tri::no().because(format!("the quotient has dimension {dim}")),
        _ => Tri::unknown(format!("dimension of the quotient only bounded by {dim}")),
    })
}
