use crate::kernel::{fitting0, Poly};
use crate::ring::{PrimeId, Ring};
use crate::specset::{closed_v, SpecSet};

use super::trace::{Premise, Step};
use super::{Engine, EngineError};

#[derive(Clone, Debug)]
pub struct ModuleResult {
    pub set: SpecSet,
    pub trace: Vec<Step>,
    pub assumptions: Vec<String>,
}

fn finite_dim(ring: &Ring) -> Result<Option<String>, EngineError> {
    let d = ring.attrs()?.krull_dim;
    Ok(d.is_finite().then(|| format!("dim {ring} = {d} is finite")))
}

impl Engine {
    /// Support of the cokernel of `pres` (rows are generators, columns relations).
    pub fn supp_module(&self, ring: &Ring, pres: &[Vec<Poly>]) -> Result<ModuleResult, EngineError> {
        if !ring.is_computable() {
            return Err(EngineError::Unknown(format!("{ring} has no computable model for Fitting ideals")));
        }
        let rows = pres.iter().map(|r| r.iter().map(|f| f.embed(ring.ambient())).collect::<Result<Vec<_>, _>>()).collect::<Result<Vec<_>, _>>()?;
        let fitt = self.budget(|| fitting0(ring.ambient(), &rows))?;
        let gens = fitt.gens().to_vec();
        let set = closed_v(ring, gens.clone())?;
        let step = Step::new(
            "SUPP-FITTING",
            ring.to_string(),
            format!("supp = {set}"),
            vec![Premise::Assumed(format!("Fitt_0 generated by {} minor(s)", gens.len()))],
        );
        Ok(ModuleResult { set, trace: vec![step], assumptions: Vec::new() })
    }

    fn hypothesis(&self, ring: &Ring, asserted: Option<&str>, what: &str) -> Result<(String, Vec<String>), EngineError> {
        if let Some(why) = finite_dim(ring)? {
            return Ok((why, Vec::new()));
        }
        match asserted {
            Some(a) => Ok((format!("{a} (asserted)"), vec![a.to_string()])),
            None => Err(EngineError::Unknown(format!(
                "{what} needs finite Krull dimension or an asserted hypothesis; dim {ring} = {}",
                ring.attrs()?.krull_dim
            ))),
        }
    }

    /// cosupp M = supp M ∩ cosupp R.
    pub fn cosupp_module(&self, ring: &Ring, pres: &[Vec<Poly>], perfect: bool) -> Result<ModuleResult, EngineError> {
        let (why, assumptions) = self.hypothesis(ring, perfect.then_some("module is perfect"), "cosupport of a module")?;
        let supp = self.supp_module(ring, pres)?;
        let d = self.describe(ring)?;
        let set = supp.set.intersect(&d.set, ring)?;
        let mut step = Step::new("COSUPP-MODULE", ring.to_string(), format!("cosupp M = {set}"), vec![Premise::Assumed(why)]);
        step.assumptions = assumptions.clone();
        let mut trace = vec![step];
        trace.extend(supp.trace);
        trace.extend(d.trace);
        Ok(ModuleResult { set, trace, assumptions })
    }

    /// cosupp (X ⊗ Y) = supp X ∩ cosupp Y for finitely generated X.
    pub fn cosupp_tensor(&self, ring: &Ring, pres: &[Vec<Poly>], y: &SpecSet, asserted: Option<&str>) -> Result<ModuleResult, EngineError> {
        let (why, assumptions) = self.hypothesis(ring, asserted, "cosupport of a tensor product")?;
        let supp = self.supp_module(ring, pres)?;
        let set = supp.set.intersect(y, ring)?;
        let mut step = Step::new("COSUPP-TENSOR", ring.to_string(), format!("cosupp = {set}"), vec![Premise::Assumed(why)]);
        step.assumptions = assumptions.clone();
        let mut trace = vec![step];
        trace.extend(supp.trace);
        Ok(ModuleResult { set, trace, assumptions })
    }

    pub fn cosupp_kappa(&self, p: &PrimeId) -> Result<ModuleResult, EngineError> {
        p.ensure_usable()?;
        let (why, _) = self.hypothesis(&p.ring, None, "cosupport of a residue field")?;
        let step = Step::new("COSUPP-KAPPA", p.ring.to_string(), format!("cosupp k({p}) = {{{p}}}"), vec![Premise::Assumed(why)]);
        Ok(ModuleResult { set: SpecSet::FiniteSet(vec![p.clone()]), trace: vec![step], assumptions: Vec::new() })
    }

    pub fn cosupp_injective(&self, p: &PrimeId) -> Result<ModuleResult, EngineError> {
        p.ensure_usable()?;
        let (why, _) = self.hypothesis(&p.ring, None, "cosupport of an injective hull")?;
        let step = Step::new("COSUPP-INJECTIVE", p.ring.to_string(), format!("cosupp E(R/{p}) = primes inside {p}"), vec![Premise::Assumed(why)]);
        Ok(ModuleResult { set: SpecSet::DownSet(p.clone()), trace: vec![step], assumptions: Vec::new() })
    }
}
