use crate::kernel::{Ideal, Poly, PolyRing};

use super::{PrimeId, PrimeStatus, Ring, RingError};

#[derive(Clone, Debug)]
pub enum RingMapKind {
    /// `R → R / kernel`.
    QuotientProjection { kernel: Vec<Poly> },
    /// Sends the i-th source variable to `images[i]` (an element of the
    /// target); finiteness is a caller assertion.
    Finite { images: Vec<Poly>, asserted_finite: bool },
}

#[derive(Clone, Debug)]
pub struct RingMap {
    pub source: Ring,
    pub target: Ring,
    pub kind: RingMapKind,
}

impl RingMap {
    pub fn projection(source: &Ring, kernel: Vec<Poly>) -> Result<RingMap, RingError> {
        let kernel = kernel.iter().map(|k| k.embed(source.ambient())).collect::<Result<Vec<_>, _>>()?;
        let target = source.quotient(kernel.clone(), false)?;
        Ok(RingMap { source: source.clone(), target, kind: RingMapKind::QuotientProjection { kernel } })
    }

    pub fn finite(source: &Ring, target: &Ring, images: Vec<Poly>, asserted_finite: bool) -> Result<RingMap, RingError> {
        if images.len() != source.ambient().nvars() {
            return Err(RingError::Malformed(format!(
                "map needs {} image(s), got {}",
                source.ambient().nvars(),
                images.len()
            )));
        }
        let images = images.iter().map(|p| p.embed(target.ambient())).collect::<Result<Vec<_>, _>>()?;
        Ok(RingMap { source: source.clone(), target: target.clone(), kind: RingMapKind::Finite { images, asserted_finite } })
    }

    pub fn is_finite(&self) -> bool {
        match &self.kind {
            RingMapKind::QuotientProjection { .. } => true,
            RingMapKind::Finite { asserted_finite, .. } => *asserted_finite,
        }
    }

    pub fn kernel(&self) -> Option<&[Poly]> {
        match &self.kind {
            RingMapKind::QuotientProjection { kernel } => Some(kernel),
            RingMapKind::Finite { .. } => None,
        }
    }

    /// The preimage `f*(q)` of a prime of the target.
    pub fn contract_prime(&self, q: &PrimeId) -> Result<PrimeId, RingError> {
        q.ensure_usable()?;
        if q.ring != self.target {
            return Err(RingError::Mismatch(format!("prime of {} given for a map into {}", q.ring, self.target)));
        }
        match &self.kind {
            RingMapKind::QuotientProjection { kernel } => {
                let mut gens = q.gens.iter().map(|g| g.embed(self.source.ambient())).collect::<Result<Vec<_>, _>>()?;
                gens.extend(kernel.iter().cloned());
                let mut p = PrimeId::new(&self.source, gens)?;
                p.status = q.status;
                p.reason = Some("preimage of a prime under a surjection".into());
                Ok(p)
            }
            RingMapKind::Finite { images, .. } => {
                let gens = self.graph_contraction(images, &q.gens)?;
                let mut p = PrimeId::new(&self.source, gens)?;
                p.status = PrimeStatus::Asserted;
                p.reason = Some("contraction along a ring map is prime; computed by graph elimination".into());
                Ok(p)
            }
        }
    }

    /// Eliminates the target variables from `J_S + q + (y_i - f(y_i))`.
    fn graph_contraction(&self, images: &[Poly], q: &[Poly]) -> Result<Vec<Poly>, RingError> {
        let (sm, tm) = (self.source.model(), self.target.model());
        let affine = |m: &super::Model| m.computable().is_ok() && m.local_at.is_none() && m.is_polynomial_tower();
        if !affine(sm) || !affine(tm) || sm.ambient.field() != tm.ambient.field() {
            return Err(RingError::NotComputable(
                "contraction along a non-surjective map needs affine source and target over the same field".into(),
            ));
        }
        let tvars: Vec<String> = tm.ambient.vars().to_vec();
        let mut svars: Vec<String> = Vec::new();
        for v in sm.ambient.vars() {
            let mut name = format!("{v}_src");
            while tvars.contains(&name) || svars.contains(&name) {
                name.push('_');
            }
            svars.push(name);
        }
        let mut all = tvars.clone();
        all.extend(svars.iter().cloned());
        let big = PolyRing::new(tm.ambient.field(), all)?;
        let nt = tvars.len();
        let to_big_t: Vec<Option<usize>> = (0..nt).map(Some).collect();
        let mut gens = Vec::new();
        for g in tm.relations.iter().chain(q.iter()) {
            gens.push(g.map_vars(&big, &to_big_t)?);
        }
        for (i, img) in images.iter().enumerate() {
            gens.push(&big.var(nt + i) - &img.map_vars(&big, &to_big_t)?);
        }
        let drop: Vec<usize> = (0..nt).collect();
        let (elim, sub) = Ideal::new(&big, gens)?.eliminate(&drop)?;
        let back: Vec<Option<usize>> = (0..sub.nvars()).map(Some).collect();
        let mut out = Vec::new();
        for g in elim.reduced_gens()? {
            out.push(g.map_vars(&sm.ambient, &back)?);
        }
        out.extend(sm.relations.iter().cloned());
        Ok(out)
    }

    /// Primes of the target lying over `p`, for quotient projections:
    /// `{p / K}` when `p ⊇ K`, else nothing.
    pub fn fiber_primes(&self, p: &PrimeId) -> Result<Vec<PrimeId>, RingError> {
        p.ensure_usable()?;
        let RingMapKind::QuotientProjection { kernel } = &self.kind else {
            return Err(RingError::NotComputable(
                "fiber computation requires quotient map or caller-supplied fibers".into(),
            ));
        };
        if !self.source.contains_all(&p.gens, kernel)? {
            return Ok(Vec::new());
        }
        let mut q = PrimeId::new(&self.target, p.gens.clone())?;
        q.status = p.status;
        q.name = p.name.clone();
        Ok(vec![q])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::RingDesc;

    fn qxy() -> Ring {
        Ring::new(RingDesc::rationals().poly(&["x", "y"]).unwrap()).unwrap()
    }

    #[test]
    fn projection_contraction() {
        let r = qxy();
        let pi = RingMap::projection(&r, r.parse_all(&["y"]).unwrap()).unwrap();
        let q = PrimeId::parse(&pi.target, &["x"]).unwrap();
        let p = pi.contract_prime(&q).unwrap();
        assert!(r.same_ideal(&p.gens, &r.parse_all(&["x", "y"]).unwrap()).unwrap());
        let zero = PrimeId::zero(&pi.target);
        let k = pi.contract_prime(&zero).unwrap();
        assert!(r.same_ideal(&k.gens, &r.parse_all(&["y"]).unwrap()).unwrap());
    }

    #[test]
    fn finite_map_contraction() {
        let src = Ring::new(RingDesc::rationals().poly(&["t"]).unwrap()).unwrap();
        let tgt = Ring::new(RingDesc::rationals().poly(&["x", "y"]).unwrap().quotient(&["y^2 - x^3"]).unwrap()).unwrap();
        let f = RingMap::finite(&src, &tgt, vec![tgt.parse("x").unwrap()], true).unwrap();
        let q = PrimeId::parse(&tgt, &["x", "y"]).unwrap();
        let p = f.contract_prime(&q).unwrap();
        assert!(src.same_ideal(&p.gens, &src.parse_all(&["t"]).unwrap()).unwrap());
    }

    #[test]
    fn fibers_of_projections() {
        let r = Ring::new(RingDesc::rationals().poly(&["x"]).unwrap()).unwrap();
        let pi = RingMap::projection(&r, r.parse_all(&["x"]).unwrap()).unwrap();
        let over = pi.fiber_primes(&PrimeId::parse(&r, &["x"]).unwrap()).unwrap();
        assert_eq!(over.len(), 1);
        assert!(over[0].is_zero_ideal().unwrap());
        assert!(pi.fiber_primes(&PrimeId::parse(&r, &["x - 1"]).unwrap()).unwrap().is_empty());

        let r = qxy();
        let pi = RingMap::projection(&r, r.parse_all(&["y"]).unwrap()).unwrap();
        let over = pi.fiber_primes(&PrimeId::parse(&r, &["y", "x^2 + 1"]).unwrap()).unwrap();
        assert_eq!(over.len(), 1);
        let t = &pi.target;
        assert!(t.same_ideal(&over[0].gens, &t.parse_all(&["x^2 + 1"]).unwrap()).unwrap());
    }

    #[test]
    fn contract_then_fiber_round_trip() {
        let r = qxy();
        let pi = RingMap::projection(&r, r.parse_all(&["y - x^2"]).unwrap()).unwrap();
        let p = PrimeId::parse(&r, &["y - x^2", "x - 2"]).unwrap();
        let over = pi.fiber_primes(&p).unwrap();
        let back = pi.contract_prime(&over[0]).unwrap();
        assert!(back.same_as(&p).unwrap());
    }
}
