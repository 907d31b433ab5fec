use std::sync::Arc;

use crate::kernel::{Ideal, Monomial, Poly, PolyRing};

use super::desc::{FieldKind, RingDesc};
use super::RingError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LayerKind {
    Poly,
    PowerSeries,
}

/// A block of variables adjoined at once; indices refer to the ambient ring.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Layer {
    pub kind: LayerKind,
    pub vars: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Root {
    Field(FieldKind),
    Integers,
}

/// Flattened view of a ring description: `(tower / relations)` localized at
/// an optional prime. Quotients commute outward past adjoined variables
/// because `(B/I)[x] = B[x]/I B[x]` and likewise for power series over a
/// noetherian base.
#[derive(Clone, Debug)]
pub(crate) struct Model {
    pub ambient: Arc<PolyRing>,
    pub root: Root,
    pub layers: Vec<Layer>,
    pub relations: Vec<Poly>,
    pub local_at: Option<Vec<Poly>>,
    /// The relations are known to generate a prime of the tower.
    pub prime_relations: bool,
}

fn push_layer(layers: &mut Vec<Layer>, kind: LayerKind, vars: Vec<usize>) {
    match layers.last_mut() {
        Some(top) if top.kind == kind => top.vars.extend(vars),
        _ => layers.push(Layer { kind, vars }),
    }
}

fn embed_all(ps: &[Poly], ring: &Arc<PolyRing>) -> Result<Vec<Poly>, RingError> {
    Ok(ps.iter().map(|p| p.embed(ring)).collect::<Result<Vec<_>, _>>()?)
}

impl Model {
    pub fn build(desc: &RingDesc) -> Result<Model, RingError> {
        let ambient = desc.ambient()?;
        Ok(match desc {
            RingDesc::Field(k) => Model {
                ambient,
                root: Root::Field(*k),
                layers: Vec::new(),
                relations: Vec::new(),
                local_at: None,
                prime_relations: true,
            },
            RingDesc::Integers => Model {
                ambient,
                root: Root::Integers,
                layers: Vec::new(),
                relations: Vec::new(),
                local_at: None,
                prime_relations: true,
            },
            RingDesc::Poly { base, vars } | RingDesc::PowerSeries { base, vars } => {
                let inner = Model::build(base)?;
                let kind = if matches!(desc, RingDesc::Poly { .. }) { LayerKind::Poly } else { LayerKind::PowerSeries };
                let mut layers = inner.layers.clone();
                let start = inner.ambient.nvars();
                push_layer(&mut layers, kind, (start..start + vars.len()).collect());
                Model {
                    relations: embed_all(&inner.relations, &ambient)?,
                    ambient,
                    root: inner.root,
                    layers,
                    local_at: None,
                    prime_relations: inner.prime_relations,
                }
            }
            RingDesc::Quotient { base, relations, prime } => {
                let inner = Model::build(base)?;
                let mut rels = inner.relations.clone();
                rels.extend(relations.iter().filter(|p| !p.is_zero()).cloned());
                let added = relations.iter().any(|p| !p.is_zero());
                Model {
                    ambient,
                    root: inner.root,
                    layers: inner.layers,
                    relations: rels,
                    local_at: inner.local_at,
                    prime_relations: if added { *prime } else { inner.prime_relations },
                }
            }
            RingDesc::Localize { base, prime } => {
                let inner = Model::build(base)?;
                Model { local_at: Some(prime.clone()), ..inner }
            }
        })
    }

    pub fn without_localization(&self) -> Model {
        Model { relations: Vec::new(), local_at: None, ..self.clone() }
    }

    pub fn computable(&self) -> Result<(), RingError> {
        match self.root {
            Root::Integers => Err(RingError::NotComputable("element arithmetic over the integers is attribute-only".into())),
            Root::Field(_) => Ok(()),
        }
    }

    pub fn field_kind(&self) -> Option<FieldKind> {
        match self.root {
            Root::Field(k) => Some(k),
            Root::Integers => None,
        }
    }

    pub fn is_polynomial_tower(&self) -> bool {
        self.layers.iter().all(|l| l.kind == LayerKind::Poly)
    }

    /// Whether `f ∈ k·T` for the tower ring `T`. Uses `(kT : f) = (k : f)T`,
    /// valid because `T` is flat over the polynomial ring.
    pub fn tower_contains(&self, k: &[Poly], f: &Poly) -> Result<bool, RingError> {
        self.computable()?;
        if f.is_zero() {
            return Ok(true);
        }
        let ideal = Ideal::new(&self.ambient, k.to_vec())?;
        if self.is_polynomial_tower() {
            return Ok(ideal.contains(f)?);
        }
        if ideal.contains(f)? {
            return Ok(true);
        }
        let colon = ideal.quotient(f)?;
        tower_unit(&self.ambient, &self.layers, colon.gens().to_vec())
    }

    /// Whether `f ∈ I·R` for the described ring `R`.
    pub fn contains(&self, ideal: &[Poly], f: &Poly) -> Result<bool, RingError> {
        if f.is_zero() {
            return Ok(true);
        }
        self.computable()?;
        let mut k = ideal.to_vec();
        k.extend(self.relations.iter().cloned());
        match &self.local_at {
            None => self.tower_contains(&k, f),
            Some(p) => {
                // f ∈ I R_p iff (I + J : f) ⊄ p + J
                let colon = Ideal::new(&self.ambient, k)?.quotient(f)?;
                let mut pj = p.clone();
                pj.extend(self.relations.iter().cloned());
                for g in colon.gens() {
                    if !self.tower_contains(&pj, g)? {
                        return Ok(true);
                    }
                }
                Ok(false)
            }
        }
    }

    pub fn is_unit_ideal(&self, ideal: &[Poly]) -> Result<bool, RingError> {
        self.contains(ideal, &self.ambient.one())
    }

    pub fn contains_all(&self, ideal: &[Poly], gens: &[Poly]) -> Result<bool, RingError> {
        for g in gens {
            if !self.contains(ideal, g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn canonical(&self) -> Result<Canonical, RingError> {
        self.computable()?;
        if self.local_at.is_some() {
            return Err(RingError::Unsupported("canonical towers of localizations".into()));
        }
        Canonical::build(self)
    }
}

/// Unit test for an ideal of a tower ring, peeling layers from the top:
/// `K` is the unit ideal of `B[[t]]` iff `K|_{t=0}` is the unit ideal of
/// `B`; `K` is the unit ideal of `B[x]` iff `K ∩ B` is the unit ideal of `B`
/// (via faithful flatness of `B` over the localizations of the polynomial
/// subring).
fn tower_unit(ambient: &Arc<PolyRing>, layers: &[Layer], k: Vec<Poly>) -> Result<bool, RingError> {
    let k: Vec<Poly> = k.into_iter().filter(|p| !p.is_zero()).collect();
    if k.is_empty() {
        return Ok(false);
    }
    if k.iter().any(|p| p.is_constant()) {
        return Ok(true);
    }
    let Some(top) = layers.last() else {
        return Ok(false);
    };
    let below = &layers[..layers.len() - 1];
    match top.kind {
        LayerKind::PowerSeries => {
            let zero = ambient.zero();
            let k = k
                .iter()
                .map(|p| top.vars.iter().fold(p.clone(), |acc, v| acc.substitute(*v, &zero)))
                .collect();
            tower_unit(ambient, below, k)
        }
        LayerKind::Poly if below.is_empty() => Ok(Ideal::new(ambient, k)?.is_unit()?),
        LayerKind::Poly => {
            let ideal = Ideal::new(ambient, k)?;
            let (elim, _) = ideal.eliminate(&top.vars)?;
            let k = elim.gens().iter().map(|g| g.embed(ambient)).collect::<Result<Vec<_>, _>>()?;
            tower_unit(ambient, below, k)
        }
    }
}

/// Canonical form of a tower quotient over a field: relations as a reduced
/// Gröbner basis, and every variable that a relation expresses in terms of
/// lower or same-layer variables eliminated.
#[derive(Clone, Debug)]
pub struct Canonical {
    pub ambient: Arc<PolyRing>,
    pub field: FieldKind,
    pub layers: Vec<Layer>,
    pub relations: Vec<Poly>,
    pub zero: bool,
    pub prime_relations: bool,
    /// Image in `ambient` of each original variable.
    images: Vec<Poly>,
    original: Arc<PolyRing>,
}

fn compose(f: &Poly, images: &[Poly], target: &Arc<PolyRing>) -> Poly {
    let mut out = target.zero();
    for (m, c) in f.terms() {
        let mut t = target.constant(c.clone());
        for (i, e) in m.0.iter().enumerate() {
            if *e > 0 {
                t = &t * &images[i].pow(*e);
            }
        }
        out = &out + &t;
    }
    out
}

/// A variable that some relation defines: `c·v + rest` with `rest` free of
/// `v` and allowed by the layer discipline.
fn find_elimination(gb: &[Poly], layers: &[Layer]) -> Option<(usize, Poly)> {
    let layer_of = |v: usize| layers.iter().position(|l| l.vars.contains(&v)).unwrap();
    for g in gb {
        let ring = g.ring();
        for v in g.support() {
            let mut unit = Monomial::one(ring.nvars());
            unit.0[v] = 1;
            if g.degree_in(v) != 1 || g.terms().any(|(m, _)| m.0[v] == 1 && *m != unit) {
                continue;
            }
            let c = g.terms().find(|(m, _)| **m == unit).map(|(_, c)| c.clone()).unwrap();
            let rest = g - &ring.monomial(unit.clone(), c.clone());
            let lv = layer_of(v);
            let ok = match layers[lv].kind {
                LayerKind::Poly => rest.support().iter().all(|w| layer_of(*w) <= lv),
                LayerKind::PowerSeries => {
                    rest.support().iter().all(|w| layer_of(*w) == lv) && ring.field().is_zero(&rest.constant_term())
                }
            };
            if ok {
                let value = rest.scale(&ring.field().neg(&ring.field().inv(&c)));
                return Some((v, value));
            }
        }
    }
    None
}

impl Canonical {
    fn build(model: &Model) -> Result<Canonical, RingError> {
        let field = model.field_kind().expect("computable model");
        let mut amb = model.ambient.clone();
        let mut layers = model.layers.clone();
        let mut rels: Vec<Poly> = model.relations.clone();
        let mut images: Vec<Poly> = (0..amb.nvars()).map(|i| amb.var(i)).collect();
        let mut zero = false;
        loop {
            if rels.iter().all(|r| r.is_zero()) {
                rels.clear();
                break;
            }
            if tower_unit(&amb, &layers, rels.clone())? {
                zero = true;
                break;
            }
            let gb = Ideal::new(&amb, rels.clone())?.reduced_gens()?;
            let Some((v, value)) = find_elimination(&gb, &layers) else {
                rels = gb;
                break;
            };
            let keep: Vec<usize> = (0..amb.nvars()).filter(|i| *i != v).collect();
            let next = PolyRing::new(amb.field(), keep.iter().map(|i| amb.vars()[*i].clone()).collect())?;
            let var_map: Vec<Option<usize>> = (0..amb.nvars()).map(|i| keep.iter().position(|k| *k == i)).collect();
            let subst = |p: &Poly| p.substitute(v, &value).map_vars(&next, &var_map);
            rels = gb.iter().map(subst).collect::<Result<Vec<_>, _>>()?;
            rels.retain(|r| !r.is_zero());
            images = images.iter().map(subst).collect::<Result<Vec<_>, _>>()?;
            let mut new_layers: Vec<Layer> = Vec::new();
            for l in &layers {
                let vars: Vec<usize> = l.vars.iter().filter_map(|w| var_map[*w]).collect();
                if !vars.is_empty() {
                    push_layer(&mut new_layers, l.kind, vars);
                }
            }
            layers = new_layers;
            amb = next;
        }
        Ok(Canonical {
            ambient: amb,
            field,
            layers,
            relations: rels,
            zero,
            prime_relations: model.prime_relations,
            images,
            original: model.ambient.clone(),
        })
    }

    /// Maps an element of the original ambient ring into the canonical one.
    pub fn translate(&self, f: &Poly) -> Result<Poly, RingError> {
        let f = f.embed(&self.original)?;
        Ok(compose(&f, &self.images, &self.ambient))
    }

    pub fn nvars(&self) -> usize {
        self.ambient.nvars()
    }

    pub fn is_field(&self) -> bool {
        !self.zero && self.layers.is_empty()
    }

    pub fn is_affine(&self) -> bool {
        self.layers.iter().all(|l| l.kind == LayerKind::Poly)
    }

    /// One power-series layer directly over the field: a complete local ring.
    pub fn is_complete_local(&self) -> bool {
        !self.zero && (self.layers.is_empty() || (self.layers.len() == 1 && self.layers[0].kind == LayerKind::PowerSeries))
    }

    fn relation_ideal(&self) -> Result<Ideal, RingError> {
        Ok(Ideal::new(&self.ambient, self.relations.clone())?)
    }

    /// Krull dimension bounds `(lo, hi)`.
    pub fn dims(&self) -> Result<(usize, usize), RingError> {
        if self.zero {
            return Err(RingError::ZeroRing);
        }
        let n = self.nvars();
        if self.relations.is_empty() {
            return Ok((n, n));
        }
        if self.is_affine() {
            let d = self.relation_ideal()?.krull_dim()?;
            return Ok((d, d));
        }
        if self.is_complete_local() {
            // the local dimension is squeezed between the height bound and
            // the dimension of the affine model
            let hi = self.relation_ideal()?.krull_dim()?;
            if self.relations.iter().all(is_homogeneous) {
                return Ok((hi, hi));
            }
            let lo = n.saturating_sub(self.relations.len()).min(hi);
            return Ok((lo, hi));
        }
        if self.layers.len() == 2
            && self.layers[0].kind == LayerKind::PowerSeries
            && self.layers[0].vars.len() == 1
            && self.layers[1].kind == LayerKind::Poly
        {
            // A[x]/J with A = k[[t]]: when t is a unit modulo J the ring is
            // an affine algebra over k((t)), whose dimension agrees with the
            // one over k(t)
            let t = self.layers[0].vars[0];
            let mut with_t = self.relations.clone();
            with_t.push(self.ambient.var(t));
            if tower_unit(&self.ambient, &self.layers, with_t)? {
                if let Some(d) = self.relation_ideal()?.dim_over_parameters(&[t])? {
                    return Ok((d, d));
                }
            }
        }
        Ok((0, n))
    }

    pub fn to_desc(&self) -> Result<RingDesc, RingError> {
        let mut d = RingDesc::Field(self.field);
        for l in &self.layers {
            let names: Vec<&str> = l.vars.iter().map(|i| self.ambient.vars()[*i].as_str()).collect();
            d = match l.kind {
                LayerKind::Poly => d.poly(&names)?,
                LayerKind::PowerSeries => d.power_series(&names)?,
            };
        }
        if !self.relations.is_empty() || self.zero {
            let rels = if self.zero { vec![self.ambient.one()] } else { self.relations.clone() };
            d = d.quotient_by(rels, self.prime_relations && !self.zero)?;
        }
        Ok(d)
    }
}

fn is_homogeneous(p: &Poly) -> bool {
    let mut degs = p.terms().map(|(m, _)| m.degree());
    match degs.next() {
        Some(d) => degs.all(|e| e == d),
        None => true,
    }
}
