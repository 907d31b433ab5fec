use std::fmt;

/// A three-valued answer. Unknown answers always carry the reason that
/// blocked a decision; decided answers may carry a justification.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Tri {
    value: Option<bool>,
    reason: Option<String>,
}

impl Tri {
    pub fn yes() -> Tri {
        Tri { value: Some(true), reason: None }
    }

    pub fn no() -> Tri {
        Tri { value: Some(false), reason: None }
    }

    pub fn unknown(reason: impl Into<String>) -> Tri {
        Tri { value: None, reason: Some(reason.into()) }
    }

    pub fn from_bool(b: bool) -> Tri {
        Tri { value: Some(b), reason: None }
    }

    pub fn because(mut self, reason: impl Into<String>) -> Tri {
        self.reason = Some(reason.into());
        self
    }

    pub fn value(&self) -> Option<bool> {
        self.value
    }

    pub fn reason(&self) -> Option<&str> {
        self.reason.as_deref()
    }

    pub fn is_true(&self) -> bool {
        self.value == Some(true)
    }

    pub fn is_false(&self) -> bool {
        self.value == Some(false)
    }

    pub fn is_unknown(&self) -> bool {
        self.value.is_none()
    }

    pub fn not(&self) -> Tri {
        Tri { value: self.value.map(|b| !b), reason: self.reason.clone() }
    }

    /// Kleene conjunction; a false operand wins over an unknown one.
    pub fn and(&self, other: &Tri) -> Tri {
        match (self.value, other.value) {
            (Some(false), _) => self.clone(),
            (_, Some(false)) => other.clone(),
            (Some(true), Some(true)) => Tri::yes(),
            (None, _) => self.clone(),
            (_, None) => other.clone(),
        }
    }

    pub fn or(&self, other: &Tri) -> Tri {
        self.not().and(&other.not()).not()
    }

    pub fn as_str(&self) -> &'static str {
        match self.value {
            Some(true) => "true",
            Some(false) => "false",
            None => "unknown",
        }
    }
}

impl fmt::Display for Tri {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.reason {
            Some(r) => write!(f, "{} ({r})", self.as_str()),
            None => write!(f, "{}", self.as_str()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kleene_tables() {
        let u = Tri::unknown("blocked");
        assert!(Tri::no().and(&u).is_false());
        assert!(u.and(&Tri::yes()).is_unknown());
        assert!(Tri::yes().or(&u).is_true());
        assert!(Tri::no().or(&u).is_unknown());
        assert_eq!(u.and(&Tri::yes()).reason(), Some("blocked"));
    }
}
