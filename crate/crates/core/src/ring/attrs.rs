use std::fmt;

use crate::kernel::Poly;

use super::desc::{Cardinality, RingDesc};
use super::model::Root;
use super::{Ring, RingError, Tri};

/// Krull dimension interval; `hi = None` means no finite upper bound is known.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct DimBounds {
    pub lo: usize,
    pub hi: Option<usize>,
}

impl DimBounds {
    pub fn exact(d: usize) -> DimBounds {
        DimBounds { lo: d, hi: Some(d) }
    }

    pub fn range(lo: usize, hi: usize) -> DimBounds {
        DimBounds { lo, hi: Some(hi) }
    }

    pub fn value(&self) -> Option<usize> {
        match self.hi {
            Some(h) if h == self.lo => Some(h),
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.hi.is_some()
    }

    fn shift(&self, n: usize) -> DimBounds {
        DimBounds { lo: self.lo + n, hi: self.hi.map(|h| h + n) }
    }
}

impl fmt::Display for DimBounds {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.hi {
            Some(h) => write!(f, "[{}, {h}]", self.lo),
            None => write!(f, "[{}, inf]", self.lo),
        }
    }
}

/// Inferred attributes of a described ring. Ideals are given by generators
/// in the ring's ambient polynomial ring.
#[derive(Clone, Debug)]
pub struct AttrReport {
    pub countable: Tri,
    pub krull_dim: DimBounds,
    pub is_domain: Tri,
    pub is_field: Tri,
    pub is_local: Tri,
    /// The maximal ideal, when the ring is known to be local.
    pub maximal_ideal: Option<Vec<Poly>>,
    /// An ideal at which the ring is known to be complete.
    pub c_known: Vec<Poly>,
    /// Whether `c_known` is the largest such ideal.
    pub c_exact: Tri,
    /// Whether `c_known` is the Jacobson radical; implies `c_exact`.
    pub c_jacobson: Tri,
    /// One justification line per inference step.
    pub notes: Vec<String>,
}

fn card_tri(card: Cardinality) -> Tri {
    match card {
        Cardinality::Finite | Cardinality::Countable => Tri::yes(),
        Cardinality::Uncountable => Tri::no(),
        Cardinality::Unknown => Tri::unknown("field of unknown cardinality"),
    }
}

fn embed(ps: &[Poly], ring: &Ring) -> Result<Vec<Poly>, RingError> {
    Ok(ps.iter().map(|p| p.embed(ring.ambient())).collect::<Result<Vec<_>, _>>()?)
}

fn exactness(r: &AttrReport) -> Tri {
    if r.c_jacobson.is_true() {
        return Tri::yes().because("the completeness ideal lies in the Jacobson radical, which it equals");
    }
    if r.countable.is_true() && r.is_domain.is_true() && r.c_known.iter().all(|g| g.is_zero()) {
        return Tri::yes().because("a countable domain is complete only at the zero ideal");
    }
    Tri::unknown("no certificate that the completeness ideal is the largest one")
}

pub(crate) fn infer(ring: &Ring) -> Result<AttrReport, RingError> {
    let desc = ring.desc();
    let mut r = match desc {
        RingDesc::Field(k) => AttrReport {
            countable: card_tri(k.cardinality()),
            krull_dim: DimBounds::exact(0),
            is_domain: Tri::yes(),
            is_field: Tri::yes(),
            is_local: Tri::yes(),
            maximal_ideal: Some(Vec::new()),
            c_known: Vec::new(),
            c_exact: Tri::yes(),
            c_jacobson: Tri::yes(),
            notes: vec![format!("{k}: field")],
        },
        RingDesc::Integers => AttrReport {
            countable: Tri::yes(),
            krull_dim: DimBounds::exact(1),
            is_domain: Tri::yes(),
            is_field: Tri::no(),
            is_local: Tri::no(),
            maximal_ideal: None,
            c_known: Vec::new(),
            c_exact: Tri::yes(),
            c_jacobson: Tri::yes(),
            notes: vec!["Z: countable domain of dimension 1 with zero Jacobson radical".into()],
        },
        RingDesc::Poly { base, vars } => {
            let b = Ring::new((**base).clone())?;
            let ba = b.attrs()?;
            let mut notes = ba.notes.clone();
            notes.push(format!("{desc}: adjoining {} polynomial variable(s) keeps countability and gives c = (0)", vars.len()));
            AttrReport {
                countable: ba.countable.clone(),
                krull_dim: ba.krull_dim.shift(vars.len()),
                is_domain: ba.is_domain.clone(),
                is_field: Tri::no(),
                is_local: Tri::no(),
                maximal_ideal: None,
                c_known: Vec::new(),
                c_exact: Tri::unknown("pending"),
                c_jacobson: if ba.is_domain.is_true() {
                    Tri::yes().because("the Jacobson radical of a polynomial ring is its nilradical")
                } else {
                    Tri::unknown("base not known to be reduced")
                },
                notes,
            }
        }
        RingDesc::PowerSeries { base, vars } => {
            let b = Ring::new((**base).clone())?;
            let ba = b.attrs()?;
            let mut c_known = embed(&ba.c_known, ring)?;
            let new_vars: Vec<Poly> = (b.ambient().nvars()..ring.ambient().nvars()).map(|i| ring.ambient().var(i)).collect();
            c_known.extend(new_vars.iter().cloned());
            let maximal_ideal = match &ba.maximal_ideal {
                Some(m) if ba.is_local.is_true() => {
                    let mut m = embed(m, ring)?;
                    m.extend(new_vars.iter().cloned());
                    Some(m)
                }
                _ => None,
            };
            let mut notes = ba.notes.clone();
            notes.push(format!("{desc}: power series are uncountable and complete at c(base) + ({})", vars.join(", ")));
            AttrReport {
                countable: Tri::no(),
                krull_dim: ba.krull_dim.shift(vars.len()),
                is_domain: ba.is_domain.clone(),
                is_field: Tri::no(),
                is_local: ba.is_local.clone(),
                maximal_ideal,
                c_known,
                c_exact: Tri::unknown("pending"),
                c_jacobson: ba.c_jacobson.clone(),
                notes,
            }
        }
        RingDesc::Quotient { base, .. } => infer_quotient(ring, base)?,
        RingDesc::Localize { base, prime } => infer_localization(ring, base, prime)?,
    };
    if r.c_exact.value() != Some(true) {
        r.c_exact = exactness(&r);
    }
    if r.is_local.is_true() {
        if let Some(m) = &r.maximal_ideal {
            if ring.is_computable() && ring.contains_all(&r.c_known, m)? {
                r.c_exact = Tri::yes().because("complete local ring: c is the maximal ideal");
            }
        }
    }
    Ok(r)
}

fn infer_quotient(ring: &Ring, base: &RingDesc) -> Result<AttrReport, RingError> {
    let b = Ring::new(base.clone())?;
    let ba = b.attrs()?;
    let desc = ring.desc();
    let mut notes = ba.notes.clone();
    if !ring.is_computable() {
        notes.push(format!("{desc}: quotient over the integers, attributes bounded from the base"));
        let domain = if ring.model().prime_relations { Tri::yes() } else { Tri::unknown("relations not known to be prime") };
        return Ok(AttrReport {
            countable: ba.countable.clone(),
            krull_dim: DimBounds { lo: 0, hi: ba.krull_dim.hi },
            is_domain: domain,
            is_field: Tri::unknown("quotient over the integers"),
            is_local: Tri::unknown("quotient over the integers"),
            maximal_ideal: None,
            c_known: embed(&ba.c_known, ring)?,
            c_exact: Tri::unknown("quotient over the integers"),
            c_jacobson: Tri::unknown("quotient over the integers"),
            notes,
        });
    }
    let canon = ring.canonical()?;
    if canon.relations.is_empty() {
        // isomorphic to a tower over a field: reuse its attributes
        let c = Ring::new(canon.to_desc()?)?;
        let ca = c.attrs()?;
        notes.push(format!("{desc}: isomorphic to {}", c.desc()));
        return Ok(AttrReport {
            c_known: embed(&ca.c_known, ring)?,
            maximal_ideal: ca.maximal_ideal.as_ref().map(|m| embed(m, ring)).transpose()?,
            notes,
            ..ca.clone()
        });
    }
    let (lo, hi) = canon.dims()?;
    let krull_dim = DimBounds::range(lo, hi);
    let countable = if ba.countable.is_true() {
        Tri::yes()
    } else if canon.is_affine() && card_tri(canon.field.cardinality()).is_true() {
        Tri::yes().because("finitely generated over a countable field")
    } else {
        Tri::unknown("quotient of a ring that is not known to be countable")
    };
    let is_domain = if canon.prime_relations { Tri::yes() } else { Tri::unknown("relations not known to be prime") };
    let is_field = if is_domain.is_true() && krull_dim.value() == Some(0) {
        Tri::yes()
    } else if lo >= 1 {
        Tri::no()
    } else {
        Tri::unknown("zero-dimensional ring not known to be a domain")
    };
    let mut c_known = embed(&ba.c_known, ring)?;
    let (is_local, maximal_ideal) = if canon.is_complete_local() {
        let m: Vec<Poly> = canon.layers.iter().flat_map(|l| l.vars.iter()).map(|i| canon.ambient.var(*i)).collect();
        let m = embed(&m, ring)?;
        c_known = m.clone();
        notes.push(format!("{desc}: quotient of a complete local ring is complete local"));
        (Tri::yes(), Some(m))
    } else if is_field.is_true() {
        (Tri::yes(), Some(Vec::new()))
    } else if canon.is_affine() && lo >= 1 {
        (Tri::no().because("a positive-dimensional affine algebra has infinitely many maximal ideals"), None)
    } else {
        (Tri::unknown("locality of the quotient not decided"), None)
    };
    let c_jacobson = if canon.is_affine() && is_domain.is_true() {
        Tri::yes().because("an affine domain has zero Jacobson radical")
    } else {
        Tri::unknown("Jacobson radical of the quotient not computed")
    };
    notes.push(format!("{desc}: dimension in {krull_dim}"));
    Ok(AttrReport {
        countable,
        krull_dim,
        is_domain,
        is_field,
        is_local,
        maximal_ideal,
        c_known,
        c_exact: Tri::unknown("pending"),
        c_jacobson,
        notes,
    })
}

fn infer_localization(ring: &Ring, base: &RingDesc, prime: &[Poly]) -> Result<AttrReport, RingError> {
    let b = Ring::new(base.clone())?;
    let ba = b.attrs()?;
    let desc = ring.desc();
    let mut notes = ba.notes.clone();
    let zero_prime = if b.is_computable() { b.contains_all(&[], prime)? } else { prime.iter().all(|g| g.is_zero()) };
    let krull_dim = if zero_prime && ba.is_domain.is_true() {
        DimBounds::exact(0)
    } else if ring.model().root == Root::Integers && ring.model().layers.is_empty() && ring.model().relations.is_empty() {
        DimBounds::exact(1)
    } else {
        match (b.is_computable(), ba.is_domain.is_true(), ba.krull_dim.value()) {
            (true, true, Some(d)) if b.canonical().map(|c| c.is_affine()).unwrap_or(false) => {
                // affine domains are catenary: height p = dim R - dim R/p
                let q = b.quotient(prime.to_vec(), true)?;
                match q.attrs()?.krull_dim.value() {
                    Some(e) => DimBounds::exact(d - e),
                    None => DimBounds { lo: 0, hi: Some(d) },
                }
            }
            _ => DimBounds { lo: 0, hi: ba.krull_dim.hi },
        }
    };
    let is_field = if ba.is_domain.is_true() && krull_dim.value() == Some(0) {
        Tri::yes()
    } else if krull_dim.lo >= 1 {
        Tri::no()
    } else {
        Tri::unknown("dimension of the localization not decided")
    };
    notes.push(format!("{desc}: local ring of dimension {krull_dim}"));
    let countable = if ba.countable.is_true() { Tri::yes() } else { Tri::unknown("localization of a ring not known to be countable") };
    Ok(AttrReport {
        countable,
        krull_dim,
        is_domain: ba.is_domain.clone(),
        is_field: is_field.clone(),
        is_local: Tri::yes(),
        maximal_ideal: Some(prime.to_vec()),
        c_known: Vec::new(),
        c_exact: Tri::unknown("pending"),
        c_jacobson: if is_field.is_true() { Tri::yes() } else { Tri::unknown("maximal ideal of the localization is nonzero") },
        notes,
    })
}
