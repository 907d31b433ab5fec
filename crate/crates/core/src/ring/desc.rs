use std::fmt;
use std::sync::Arc;

use crate::kernel::{Field, Poly, PolyRing};

use super::RingError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Cardinality {
    Finite,
    Countable,
    Uncountable,
    Unknown,
}

impl Cardinality {
    pub fn name(&self) -> &'static str {
        match self {
            Cardinality::Finite => "finite",
            Cardinality::Countable => "countable",
            Cardinality::Uncountable => "uncountable",
            Cardinality::Unknown => "unknown",
        }
    }

    pub fn parse(s: &str) -> Option<Cardinality> {
        match s {
            "finite" => Some(Cardinality::Finite),
            "countable" => Some(Cardinality::Countable),
            "uncountable" => Some(Cardinality::Uncountable),
            "unknown" => Some(Cardinality::Unknown),
            _ => None,
        }
    }
}

/// The coefficient field at the bottom of a ring tower.
///
/// Abstract fields are known only through their cardinality and
/// characteristic. Element arithmetic for them runs over the prime subfield,
/// which is faithful for ideals generated by polynomials with prime-field
/// coefficients.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldKind {
    Rationals,
    Prime(u64),
    Abstract { card: Cardinality, characteristic: u64 },
}

impl FieldKind {
    pub fn characteristic(&self) -> u64 {
        match self {
            FieldKind::Rationals => 0,
            FieldKind::Prime(p) => *p,
            FieldKind::Abstract { characteristic, .. } => *characteristic,
        }
    }

    pub fn cardinality(&self) -> Cardinality {
        match self {
            FieldKind::Rationals => Cardinality::Countable,
            FieldKind::Prime(_) => Cardinality::Finite,
            FieldKind::Abstract { card, .. } => *card,
        }
    }

    /// The computable field used for element arithmetic.
    pub fn arithmetic_field(&self) -> Field {
        match self.characteristic() {
            0 => Field::Rationals,
            p => Field::Prime(p),
        }
    }

    pub fn is_abstract(&self) -> bool {
        matches!(self, FieldKind::Abstract { .. })
    }
}

impl fmt::Display for FieldKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldKind::Rationals => write!(f, "Q"),
            FieldKind::Prime(p) => write!(f, "F({p})"),
            FieldKind::Abstract { card, characteristic: 0 } => write!(f, "field({})", card.name()),
            FieldKind::Abstract { card, characteristic } => write!(f, "field({}, {characteristic})", card.name()),
        }
    }
}

/// A ring construction. Quotient relations and localization primes are
/// polynomials in the ambient ring of the base (all variables introduced
/// below the node, bottom layers first).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RingDesc {
    Field(FieldKind),
    /// The integers; supported at the attribute level only.
    Integers,
    Poly { base: Arc<RingDesc>, vars: Vec<String> },
    PowerSeries { base: Arc<RingDesc>, vars: Vec<String> },
    /// `prime` records that the relations are known to generate a prime ideal.
    Quotient { base: Arc<RingDesc>, relations: Vec<Poly>, prime: bool },
    /// Localization at a prime; supported at the attribute level.
    Localize { base: Arc<RingDesc>, prime: Vec<Poly> },
}

impl RingDesc {
    pub fn rationals() -> RingDesc {
        RingDesc::Field(FieldKind::Rationals)
    }

    pub fn prime_field(p: u64) -> Result<RingDesc, RingError> {
        Field::prime(p)?;
        Ok(RingDesc::Field(FieldKind::Prime(p)))
    }

    pub fn abstract_field(card: Cardinality, characteristic: u64) -> Result<RingDesc, RingError> {
        if characteristic != 0 {
            Field::prime(characteristic)?;
        }
        Ok(RingDesc::Field(FieldKind::Abstract { card, characteristic }))
    }

    pub fn poly(self, vars: &[&str]) -> Result<RingDesc, RingError> {
        let d = RingDesc::Poly { base: Arc::new(self), vars: vars.iter().map(|s| s.to_string()).collect() };
        d.ambient()?;
        Ok(d)
    }

    pub fn power_series(self, vars: &[&str]) -> Result<RingDesc, RingError> {
        let d = RingDesc::PowerSeries { base: Arc::new(self), vars: vars.iter().map(|s| s.to_string()).collect() };
        d.ambient()?;
        Ok(d)
    }

    /// Quotient by the ideal generated by the parsed relations.
    pub fn quotient(self, relations: &[&str]) -> Result<RingDesc, RingError> {
        let amb = self.ambient()?;
        let relations = relations.iter().map(|s| amb.parse(s)).collect::<Result<Vec<_>, _>>()?;
        Ok(RingDesc::Quotient { base: Arc::new(self), relations, prime: false })
    }

    pub fn quotient_by(self, relations: Vec<Poly>, prime: bool) -> Result<RingDesc, RingError> {
        let amb = self.ambient()?;
        let relations = relations.iter().map(|p| p.embed(&amb)).collect::<Result<Vec<_>, _>>()?;
        Ok(RingDesc::Quotient { base: Arc::new(self), relations, prime })
    }

    pub fn localize(self, prime: &[&str]) -> Result<RingDesc, RingError> {
        let amb = self.ambient()?;
        let prime = prime.iter().map(|s| amb.parse(s)).collect::<Result<Vec<_>, _>>()?;
        Ok(RingDesc::Localize { base: Arc::new(self), prime })
    }

    pub fn localize_by(self, prime: Vec<Poly>) -> Result<RingDesc, RingError> {
        let amb = self.ambient()?;
        let prime = prime.iter().map(|p| p.embed(&amb)).collect::<Result<Vec<_>, _>>()?;
        Ok(RingDesc::Localize { base: Arc::new(self), prime })
    }

    pub fn base(&self) -> Option<&RingDesc> {
        match self {
            RingDesc::Field(_) | RingDesc::Integers => None,
            RingDesc::Poly { base, .. }
            | RingDesc::PowerSeries { base, .. }
            | RingDesc::Quotient { base, .. }
            | RingDesc::Localize { base, .. } => Some(base),
        }
    }

    /// The bottom of the tower.
    pub fn root(&self) -> &RingDesc {
        match self.base() {
            Some(b) => b.root(),
            None => self,
        }
    }

    pub fn field_kind(&self) -> Option<FieldKind> {
        match self.root() {
            RingDesc::Field(k) => Some(*k),
            _ => None,
        }
    }

    pub fn over_integers(&self) -> bool {
        matches!(self.root(), RingDesc::Integers)
    }

    /// All variable names, bottom layers first.
    pub fn vars(&self) -> Vec<String> {
        match self {
            RingDesc::Field(_) | RingDesc::Integers => Vec::new(),
            RingDesc::Poly { base, vars } | RingDesc::PowerSeries { base, vars } => {
                let mut v = base.vars();
                v.extend(vars.iter().cloned());
                v
            }
            RingDesc::Quotient { base, .. } | RingDesc::Localize { base, .. } => base.vars(),
        }
    }

    /// The polynomial ring in all variables over the arithmetic field. Over
    /// the integers the rationals serve as a stand-in and no arithmetic is
    /// trusted.
    pub fn ambient(&self) -> Result<Arc<PolyRing>, RingError> {
        let field = match self.root() {
            RingDesc::Field(k) => k.arithmetic_field(),
            _ => Field::Rationals,
        };
        if let RingDesc::Poly { base, vars } | RingDesc::PowerSeries { base, vars } = self {
            if matches!(**base, RingDesc::Localize { .. }) || contains_localization(base) {
                return Err(RingError::Unsupported(format!("adjoining variables {vars:?} over a localization")));
            }
            if vars.is_empty() {
                return Err(RingError::Malformed("empty variable list".into()));
            }
        }
        Ok(PolyRing::new(field, self.vars())?)
    }
}

fn contains_localization(d: &RingDesc) -> bool {
    match d {
        RingDesc::Localize { .. } => true,
        _ => d.base().is_some_and(contains_localization),
    }
}

fn join(ps: &[Poly]) -> String {
    ps.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(", ")
}

impl fmt::Display for RingDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wrapped = |d: &RingDesc| match d {
            RingDesc::Quotient { .. } => format!("({d})"),
            _ => d.to_string(),
        };
        match self {
            RingDesc::Field(k) => write!(f, "{k}"),
            RingDesc::Integers => write!(f, "Z"),
            RingDesc::Poly { base, vars } => write!(f, "{}[{}]", wrapped(base), vars.join(",")),
            RingDesc::PowerSeries { base, vars } => write!(f, "{}[[{}]]", wrapped(base), vars.join(",")),
            RingDesc::Quotient { base, relations, .. } => write!(f, "{base}/({})", join(relations)),
            RingDesc::Localize { base, prime } => write!(f, "localize({base}, ({}))", join(prime)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_and_vars() {
        let d = RingDesc::prime_field(2).unwrap().power_series(&["t"]).unwrap().poly(&["x"]).unwrap();
        assert_eq!(d.to_string(), "F(2)[[t]][x]");
        assert_eq!(d.vars(), vec!["t".to_string(), "x".to_string()]);
        let q = RingDesc::rationals().poly(&["x", "y"]).unwrap().quotient(&["y^2 - x^3"]).unwrap();
        assert_eq!(q.to_string(), "Q[x,y]/(-x^3 + y^2)");
        let z = RingDesc::Integers.localize(&["3"]).unwrap();
        assert_eq!(z.to_string(), "localize(Z, (3))");
    }

    #[test]
    fn rejects_bad_constructions() {
        assert!(RingDesc::prime_field(4).is_err());
        assert!(RingDesc::rationals().poly(&["x", "x"]).is_err());
        let loc = RingDesc::rationals().poly(&["x"]).unwrap().localize(&["x"]).unwrap();
        assert!(matches!(loc.poly(&["y"]), Err(RingError::Unsupported(_))));
        assert!(RingDesc::rationals().poly(&["x"]).unwrap().quotient(&["z"]).is_err());
    }
}
