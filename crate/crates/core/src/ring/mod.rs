//! Ring descriptions, inferred attributes, primes and ring maps.

mod attrs;
mod desc;
mod map;
mod model;
mod prime;
mod tri;

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, OnceLock, RwLock};

use crate::kernel::{KernelError, Poly, PolyRing};

pub use attrs::{AttrReport, DimBounds};
pub use desc::{Cardinality, FieldKind, RingDesc};
pub use map::{RingMap, RingMapKind};
pub use model::{Canonical, Layer, LayerKind};
pub(crate) use model::Model;
pub use prime::{check_prime, is_maximal, PrimeId, PrimeStatus};
pub use tri::Tri;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RingError {
    #[error(transparent)]
    Kernel(#[from] KernelError),
    #[error("malformed ring description: {0}")]
    Malformed(String),
    #[error("unsupported construction: {0}")]
    Unsupported(String),
    #[error("not computable: {0}")]
    NotComputable(String),
    #[error("the zero ring has empty spectrum")]
    ZeroRing,
    #[error("prime {0} is refuted: {1}")]
    RefutedPrime(String, String),
    #[error("ring mismatch: {0}")]
    Mismatch(String),
}

struct RingInner {
    desc: RingDesc,
    model: Model,
    canonical: OnceLock<Result<Canonical, RingError>>,
    attrs: OnceLock<Result<AttrReport, RingError>>,
}

/// A validated ring description with its element model. Handles are
/// interned, so equal descriptions share attribute caches.
#[derive(Clone)]
pub struct Ring(Arc<RingInner>);

fn registry() -> &'static RwLock<HashMap<RingDesc, Ring>> {
    static RINGS: OnceLock<RwLock<HashMap<RingDesc, Ring>>> = OnceLock::new();
    RINGS.get_or_init(|| RwLock::new(HashMap::new()))
}

impl Ring {
    pub fn new(desc: RingDesc) -> Result<Ring, RingError> {
        if let Some(r) = registry().read().unwrap().get(&desc) {
            return Ok(r.clone());
        }
        let model = Model::build(&desc)?;
        let ring = Ring(Arc::new(RingInner { desc: desc.clone(), model, canonical: OnceLock::new(), attrs: OnceLock::new() }));
        ring.check_nonzero()?;
        let mut reg = registry().write().unwrap();
        Ok(reg.entry(desc).or_insert(ring).clone())
    }

    fn check_nonzero(&self) -> Result<(), RingError> {
        let m = &self.0.model;
        if m.computable().is_err() {
            if m.relations.iter().any(|r| r.is_constant()) {
                return Err(RingError::ZeroRing);
            }
            return Ok(());
        }
        if let Some(p) = &m.local_at {
            let tower = m.without_localization();
            if tower.is_unit_ideal(p)? {
                return Err(RingError::Malformed("localization at the unit ideal".into()));
            }
            for r in &m.relations {
                if !tower.contains(p, r)? {
                    return Err(RingError::ZeroRing);
                }
            }
            return Ok(());
        }
        if self.canonical()?.zero {
            return Err(RingError::ZeroRing);
        }
        Ok(())
    }

    pub fn desc(&self) -> &RingDesc {
        &self.0.desc
    }

    pub(crate) fn model(&self) -> &Model {
        &self.0.model
    }

    pub fn ambient(&self) -> &Arc<PolyRing> {
        &self.0.model.ambient
    }

    pub fn field_kind(&self) -> Option<FieldKind> {
        self.0.model.field_kind()
    }

    /// Element arithmetic is available (the tower sits over a field).
    pub fn is_computable(&self) -> bool {
        self.0.model.computable().is_ok()
    }

    pub fn is_localization(&self) -> bool {
        self.0.model.local_at.is_some()
    }

    pub fn parse(&self, text: &str) -> Result<Poly, RingError> {
        Ok(self.ambient().parse(text)?)
    }

    pub fn parse_all(&self, texts: &[&str]) -> Result<Vec<Poly>, RingError> {
        texts.iter().map(|t| self.parse(t)).collect()
    }

    /// `f ∈ I·R`.
    pub fn contains(&self, ideal: &[Poly], f: &Poly) -> Result<bool, RingError> {
        self.0.model.contains(ideal, f)
    }

    pub fn contains_all(&self, ideal: &[Poly], gens: &[Poly]) -> Result<bool, RingError> {
        self.0.model.contains_all(ideal, gens)
    }

    pub fn is_unit_ideal(&self, ideal: &[Poly]) -> Result<bool, RingError> {
        self.0.model.is_unit_ideal(ideal)
    }

    pub fn same_ideal(&self, a: &[Poly], b: &[Poly]) -> Result<bool, RingError> {
        Ok(self.contains_all(a, b)? && self.contains_all(b, a)?)
    }

    pub fn canonical(&self) -> Result<&Canonical, RingError> {
        self.0.canonical.get_or_init(|| self.0.model.canonical()).as_ref().map_err(|e| e.clone())
    }

    pub fn attrs(&self) -> Result<&AttrReport, RingError> {
        self.0.attrs.get_or_init(|| attrs::infer(self)).as_ref().map_err(|e| e.clone())
    }

    /// `R / (gens)`; `prime` records that the generators form a prime.
    pub fn quotient(&self, gens: Vec<Poly>, prime: bool) -> Result<Ring, RingError> {
        Ring::new(self.desc().clone().quotient_by(gens, prime)?)
    }

    /// The canonical description: quotients pushed outward, layers merged,
    /// relations reduced and defined variables eliminated.
    pub fn normalize(&self) -> Result<RingDesc, RingError> {
        match self.desc() {
            RingDesc::Localize { base, prime } => {
                let b = Ring::new((**base).clone())?;
                let nb = b.normalize()?;
                if !b.is_computable() {
                    return Ok(RingDesc::Localize { base: Arc::new(nb), prime: prime.clone() });
                }
                let c = b.canonical()?;
                let p = prime.iter().map(|g| c.translate(g)).collect::<Result<Vec<_>, _>>()?;
                let mut gb = crate::kernel::Ideal::new(&c.ambient, p)?.reduced_gens()?;
                if !c.relations.is_empty() {
                    let mut with = gb.clone();
                    with.extend(c.relations.iter().cloned());
                    gb = crate::kernel::Ideal::new(&c.ambient, with)?.reduced_gens()?;
                }
                nb.localize_by(gb)
            }
            _ if !self.is_computable() => Ok(self.desc().clone()),
            _ if self.desc().base().is_some_and(|b| matches!(b.root(), RingDesc::Integers)) => Ok(self.desc().clone()),
            _ if contains_localization(self.desc()) => Ok(self.desc().clone()),
            _ => self.canonical()?.to_desc(),
        }
    }
}

fn contains_localization(d: &RingDesc) -> bool {
    match d {
        RingDesc::Localize { .. } => true,
        _ => d.base().is_some_and(contains_localization),
    }
}

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.desc == other.0.desc
    }
}

impl Eq for Ring {}

impl Hash for Ring {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.desc.hash(state);
    }
}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ring({})", self.0.desc)
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.desc)
    }
}
