//! Symbolic subsets of a prime spectrum.

use std::fmt;

use crate::kernel::{Ideal, Poly};
use crate::ring::{is_maximal, PrimeId, Ring, RingError, RingMap, RingMapKind, Tri};

/// Evidence that a set of primes is not closed: infinitely many maximal
/// ideals inside the set whose intersection is zero, while a prime that
/// every closed superset must contain lies outside it.
#[derive(Clone, Debug)]
pub struct NotClosed {
    pub ring: String,
    pub family: String,
    pub members: Vec<PrimeId>,
    pub no_prime: PrimeId,
    /// Machine-checked steps, in order.
    pub checked: Vec<String>,
    /// Steps taken on trust (not machine-checked), with their justification.
    pub trusted: Vec<String>,
}

#[derive(Clone, Debug)]
pub enum SpecSet {
    Full,
    Empty,
    /// `V(I)`; generators live in the ring's ambient polynomial ring.
    ClosedV(Vec<Poly>),
    FiniteSet(Vec<PrimeId>),
    /// All primes contained in the given one.
    DownSet(PrimeId),
    /// Preimage of a subset of the map's target.
    Pullback { map: RingMap, inner: Box<SpecSet> },
    Intersect(Vec<SpecSet>),
    Partial { yes: Vec<PrimeId>, no: Vec<PrimeId>, notes: Vec<String>, certificate: Option<Box<NotClosed>> },
}

fn list(ps: &[PrimeId]) -> String {
    ps.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(", ")
}

impl fmt::Display for SpecSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpecSet::Full => write!(f, "Spec"),
            SpecSet::Empty => write!(f, "{{}}"),
            SpecSet::ClosedV(gens) => {
                let g: Vec<String> = gens.iter().map(|p| p.to_string()).collect();
                if g.is_empty() {
                    write!(f, "V(0)")
                } else {
                    write!(f, "V({})", g.join(", "))
                }
            }
            SpecSet::FiniteSet(ps) => write!(f, "{{{}}}", list(ps)),
            SpecSet::DownSet(p) => write!(f, "down{p}"),
            SpecSet::Pullback { map, inner } => write!(f, "pullback[{} -> {}]({inner})", map.source, map.target),
            SpecSet::Intersect(parts) => {
                let s: Vec<String> = parts.iter().map(|p| p.to_string()).collect();
                write!(f, "{}", s.join(" & "))
            }
            SpecSet::Partial { yes, no, .. } => write!(f, "partial(yes: {{{}}}, no: {{{}}})", list(yes), list(no)),
        }
    }
}

fn find(ps: &[PrimeId], p: &PrimeId) -> Result<bool, RingError> {
    for q in ps {
        if q.same_as(p)? {
            return Ok(true);
        }
    }
    Ok(false)
}

fn lift(r: Result<Tri, RingError>) -> Tri {
    match r {
        Ok(t) => t,
        Err(RingError::NotComputable(why)) => Tri::unknown(why),
        Err(e) => Tri::unknown(e.to_string()),
    }
}

impl SpecSet {
    /// Three-valued membership of a prime of the ambient ring.
    pub fn member(&self, p: &PrimeId) -> Result<Tri, RingError> {
        p.ensure_usable()?;
        let ring = &p.ring;
        match self {
            SpecSet::Full => Ok(Tri::yes()),
            SpecSet::Empty => Ok(Tri::no()),
            SpecSet::ClosedV(gens) => {
                if gens.iter().all(|g| g.is_zero()) {
                    return Ok(Tri::yes());
                }
                if !ring.is_computable() {
                    return Ok(Tri::unknown("containment over the integers is not computed"));
                }
                Ok(Tri::from_bool(ring.contains_all(&p.gens, gens)?))
            }
            SpecSet::FiniteSet(ps) => {
                if !ring.is_computable() {
                    return Ok(Tri::unknown("ideal equality over the integers is not computed"));
                }
                Ok(Tri::from_bool(find(ps, p)?))
            }
            SpecSet::DownSet(q) => {
                if !ring.is_computable() {
                    return Ok(Tri::unknown("containment over the integers is not computed"));
                }
                Ok(Tri::from_bool(p.contained_in(q)?))
            }
            SpecSet::Pullback { map, inner } => {
                if map.source != *ring {
                    return Err(RingError::Mismatch(format!("prime of {ring} tested against a set over {}", map.source)));
                }
                match &map.kind {
                    RingMapKind::QuotientProjection { .. } => {
                        let over = map.fiber_primes(p)?;
                        match over.first() {
                            None => Ok(Tri::no().because("prime does not contain the kernel")),
                            Some(q) => inner.member(q),
                        }
                    }
                    RingMapKind::Finite { .. } => Ok(Tri::unknown("membership through a non-surjective map needs the fiber")),
                }
            }
            SpecSet::Intersect(parts) => {
                let mut acc = Tri::yes();
                for s in parts {
                    acc = acc.and(&s.member(p)?);
                    if acc.is_false() {
                        break;
                    }
                }
                Ok(acc)
            }
            SpecSet::Partial { yes, no, .. } => {
                if !ring.is_computable() {
                    for q in yes {
                        if q.gens == p.gens {
                            return Ok(Tri::yes());
                        }
                    }
                    for q in no {
                        if q.gens == p.gens {
                            return Ok(Tri::no());
                        }
                    }
                    return Ok(Tri::unknown("prime not among the probed primes"));
                }
                if find(yes, p)? {
                    Ok(Tri::yes())
                } else if find(no, p)? {
                    Ok(Tri::no())
                } else {
                    Ok(Tri::unknown("prime not among the probed primes"))
                }
            }
        }
    }

    /// Intersection with structural simplification.
    pub fn intersect(&self, other: &SpecSet, ring: &Ring) -> Result<SpecSet, RingError> {
        Ok(match (self, other) {
            (SpecSet::Full, s) | (s, SpecSet::Full) => s.clone(),
            (SpecSet::Empty, _) | (_, SpecSet::Empty) => SpecSet::Empty,
            (SpecSet::ClosedV(a), SpecSet::ClosedV(b)) => {
                let mut gens = a.clone();
                gens.extend(b.iter().cloned());
                closed_v(ring, gens)?
            }
            (SpecSet::FiniteSet(ps), s) | (s, SpecSet::FiniteSet(ps)) => {
                let mut keep = Vec::new();
                let mut undecided = false;
                for p in ps {
                    let t = s.member(p)?;
                    if !t.is_false() {
                        undecided |= t.is_unknown();
                        keep.push(p.clone());
                    }
                }
                if undecided {
                    SpecSet::Intersect(vec![SpecSet::FiniteSet(keep), s.clone()])
                } else if keep.is_empty() {
                    SpecSet::Empty
                } else {
                    SpecSet::FiniteSet(keep)
                }
            }
            (SpecSet::Partial { yes, no, notes, .. }, s) | (s, SpecSet::Partial { yes, no, notes, .. }) => {
                let mut y = Vec::new();
                let mut n = no.clone();
                for p in yes {
                    let t = s.member(p)?;
                    if t.is_true() {
                        y.push(p.clone());
                    } else if t.is_false() {
                        n.push(p.clone());
                    }
                }
                let mut notes = notes.clone();
                notes.push(format!("intersected with {s}"));
                SpecSet::Partial { yes: y, no: n, notes, certificate: None }
            }
            (a, b) => SpecSet::Intersect(vec![a.clone(), b.clone()]),
        })
    }

    /// Preimage along `map` of a subset of its target.
    pub fn pullback(&self, map: &RingMap) -> Result<SpecSet, RingError> {
        let RingMapKind::QuotientProjection { kernel } = &map.kind else {
            return Ok(SpecSet::Pullback { map: map.clone(), inner: Box::new(self.clone()) });
        };
        let src = map.source.ambient();
        Ok(match self {
            SpecSet::Empty => SpecSet::Empty,
            SpecSet::Full => closed_v(&map.source, kernel.clone())?,
            SpecSet::ClosedV(gens) => {
                let mut all = gens.iter().map(|g| g.embed(src)).collect::<Result<Vec<_>, _>>()?;
                all.extend(kernel.iter().cloned());
                closed_v(&map.source, all)?
            }
            SpecSet::FiniteSet(ps) => {
                SpecSet::FiniteSet(ps.iter().map(|q| map.contract_prime(q)).collect::<Result<Vec<_>, _>>()?)
            }
            other => SpecSet::Pullback { map: map.clone(), inner: Box::new(other.clone()) },
        })
    }

    /// Whether the set is Zariski closed, with a defining ideal when it is.
    pub fn is_closed(&self, ring: &Ring) -> Result<(Tri, Option<Vec<Poly>>), RingError> {
        Ok(match self {
            SpecSet::Full => (Tri::yes(), Some(Vec::new())),
            SpecSet::Empty => (Tri::yes(), Some(vec![ring.ambient().one()])),
            SpecSet::ClosedV(g) => (Tri::yes(), Some(g.clone())),
            SpecSet::FiniteSet(ps) => {
                let mut all = Tri::yes();
                for p in ps {
                    all = all.and(&lift(is_maximal(p)));
                }
                if all.is_true() {
                    // a finite union of closed points is cut out by the product
                    let mut prod = vec![ring.ambient().one()];
                    for p in ps {
                        let mut next = Vec::new();
                        for a in &prod {
                            for b in &p.gens {
                                next.push(a * b);
                            }
                        }
                        prod = next;
                    }
                    let witness = if ring.is_computable() && !ring.is_localization() {
                        Ideal::new(ring.ambient(), prod.clone())?.reduced_gens()?
                    } else {
                        prod
                    };
                    (Tri::yes().because("finite set of closed points"), Some(witness))
                } else {
                    (Tri::unknown("finite set containing points not known to be closed"), None)
                }
            }
            SpecSet::Pullback { map, inner } => {
                let (t, w) = inner.is_closed(&map.target)?;
                match (t.value(), map.kernel(), w) {
                    (Some(true), Some(kernel), Some(w)) => {
                        let mut all = w.iter().map(|g| g.embed(map.source.ambient())).collect::<Result<Vec<_>, _>>()?;
                        all.extend(kernel.iter().cloned());
                        (Tri::yes().because("preimage of a closed set"), Some(all))
                    }
                    _ => (Tri::unknown("closedness of the inner set not decided"), None),
                }
            }
            SpecSet::Intersect(parts) => {
                let mut gens = Vec::new();
                for s in parts {
                    let (t, w) = s.is_closed(ring)?;
                    match (t.value(), w) {
                        (Some(true), Some(w)) => gens.extend(w),
                        _ => return Ok((Tri::unknown("an intersected set is not known to be closed"), None)),
                    }
                }
                (Tri::yes().because("intersection of closed sets"), Some(gens))
            }
            SpecSet::DownSet(p) => match lift(is_maximal(p)).value() {
                Some(true) if ring.attrs()?.is_local.is_true() => (Tri::yes().because("every prime lies under the unique maximal ideal"), Some(Vec::new())),
                _ => (Tri::unknown("closedness of a down-set is not decided"), None),
            },
            SpecSet::Partial { certificate: Some(c), .. } => {
                (Tri::no().because(format!("not closed: {} members of {} are in the set, {} is not", c.members.len(), c.family, c.no_prime)), None)
            }
            SpecSet::Partial { .. } => (Tri::unknown("partial description without a certificate"), None),
        })
    }

    pub fn kind(&self) -> &'static str {
        match self {
            SpecSet::Full => "full",
            SpecSet::Empty => "empty",
            SpecSet::ClosedV(_) => "closed",
            SpecSet::FiniteSet(_) => "finite",
            SpecSet::DownSet(_) => "downset",
            SpecSet::Pullback { .. } => "pullback",
            SpecSet::Intersect(_) => "intersect",
            SpecSet::Partial { .. } => "partial",
        }
    }
}

/// `V(gens)` with the generators reduced to a canonical basis when possible;
/// collapses to `Full` or `Empty` for the zero and unit ideals.
pub fn closed_v(ring: &Ring, gens: Vec<Poly>) -> Result<SpecSet, RingError> {
    let gens: Vec<Poly> = gens.into_iter().filter(|g| !g.is_zero()).collect();
    if gens.is_empty() {
        return Ok(SpecSet::Full);
    }
    if !ring.is_computable() {
        return Ok(SpecSet::ClosedV(gens));
    }
    if ring.is_unit_ideal(&gens)? {
        return Ok(SpecSet::Empty);
    }
    if ring.contains_all(&[], &gens)? {
        return Ok(SpecSet::Full);
    }
    if ring.is_localization() {
        return Ok(SpecSet::ClosedV(gens));
    }
    let mut all = gens;
    all.extend(ring.model().relations.iter().cloned());
    let gb = Ideal::new(ring.ambient(), all)?.reduced_gens()?;
    let rels = &ring.model().relations;
    let kept: Vec<Poly> = if rels.is_empty() {
        gb
    } else {
        let mut out = Vec::new();
        for g in gb {
            if !ring.contains(&[], &g)? {
                out.push(g);
            }
        }
        out
    };
    Ok(SpecSet::ClosedV(kept))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::RingDesc;

    fn qxy() -> Ring {
        Ring::new(RingDesc::rationals().poly(&["x", "y"]).unwrap()).unwrap()
    }

    fn prime(r: &Ring, g: &[&str]) -> PrimeId {
        PrimeId::parse(r, g).unwrap()
    }

    #[test]
    fn closed_membership_over_power_series() {
        let r = Ring::new(RingDesc::rationals().poly(&["x"]).unwrap().power_series(&["t"]).unwrap()).unwrap();
        let v = closed_v(&r, r.parse_all(&["t"]).unwrap()).unwrap();
        assert!(v.member(&prime(&r, &["t", "x"])).unwrap().is_true());
        assert!(v.member(&prime(&r, &["x"])).unwrap().is_false());
        assert!(v.is_closed(&r).unwrap().0.is_true());
    }

    #[test]
    fn downset_membership() {
        let r = qxy();
        let d = SpecSet::DownSet(prime(&r, &["x"]));
        assert!(d.member(&prime(&r, &["y"])).unwrap().is_false());
        assert!(d.member(&prime(&r, &["x"])).unwrap().is_true());
        assert!(d.member(&PrimeId::zero(&r)).unwrap().is_true());
    }

    #[test]
    fn intersections_simplify() {
        let r = qxy();
        let vx = closed_v(&r, r.parse_all(&["x"]).unwrap()).unwrap();
        let vy = closed_v(&r, r.parse_all(&["y"]).unwrap()).unwrap();
        assert!(matches!(SpecSet::Full.intersect(&vx, &r).unwrap(), SpecSet::ClosedV(_)));
        let both = vx.intersect(&vy, &r).unwrap();
        let SpecSet::ClosedV(g) = &both else { panic!("{both}") };
        assert!(r.same_ideal(g, &r.parse_all(&["x", "y"]).unwrap()).unwrap());
        let pt = SpecSet::FiniteSet(vec![prime(&r, &["x", "y"])]);
        let cut = vx.intersect(&pt, &r).unwrap();
        assert!(matches!(&cut, SpecSet::FiniteSet(ps) if ps.len() == 1));
    }

    #[test]
    fn pullbacks_along_projections() {
        let r = qxy();
        let pi = RingMap::projection(&r, r.parse_all(&["y"]).unwrap()).unwrap();
        let s = SpecSet::FiniteSet(vec![prime(&pi.target, &["x"])]);
        let SpecSet::FiniteSet(ps) = s.pullback(&pi).unwrap() else { panic!() };
        assert!(ps[0].same_as(&prime(&r, &["x", "y"])).unwrap());
        assert!(matches!(SpecSet::Empty.pullback(&pi).unwrap(), SpecSet::Empty));
        let full = SpecSet::Full.pullback(&pi).unwrap();
        assert!(full.member(&prime(&r, &["y", "x - 3"])).unwrap().is_true());
        assert!(full.member(&prime(&r, &["x"])).unwrap().is_false());
    }

    #[test]
    fn closed_points() {
        let r = qxy();
        let s = SpecSet::FiniteSet(vec![prime(&r, &["x", "y"])]);
        let (t, w) = s.is_closed(&r).unwrap();
        assert!(t.is_true());
        assert!(r.same_ideal(&w.unwrap(), &r.parse_all(&["x", "y"]).unwrap()).unwrap());
    }
}
