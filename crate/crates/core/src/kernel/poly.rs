use std::collections::BTreeMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::coeff::{Coeff, Field};
use super::order::MonomialOrder;
use super::KernelError;

/// Exponent vector, one entry per ring variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other`, assuming `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|e| *e == 0)
    }

    /// Indices of variables with positive exponent.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().filter(|(_, e)| **e > 0).map(|(i, _)| i)
    }
}

/// A polynomial ring `field[vars]`; variables are ordered, first is largest
/// for lexicographic comparisons.
#[derive(Debug, PartialEq, Eq, Hash)]
pub struct PolyRing {
    field: Field,
    vars: Vec<String>,
}

impl PolyRing {
    pub fn new(field: Field, vars: Vec<String>) -> Result<Arc<PolyRing>, KernelError> {
        for (i, v) in vars.iter().enumerate() {
            if vars[..i].contains(v) {
                return Err(KernelError::DuplicateVariable(v.clone()));
            }
        }
        Ok(Arc::new(PolyRing { field, vars }))
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// A variable name not already in use, derived from `stem`.
    pub fn fresh_var(&self, stem: &str) -> String {
        if self.var_index(stem).is_none() {
            return stem.to_string();
        }
        (1..)
            .map(|i| format!("{stem}{i}"))
            .find(|v| self.var_index(v).is_none())
            .unwrap()
    }

    /// The ring with one extra variable appended.
    pub fn extend(&self, name: &str) -> Result<Arc<PolyRing>, KernelError> {
        let mut vars = self.vars.clone();
        vars.push(name.to_string());
        PolyRing::new(self.field, vars)
    }

    pub fn zero(self: &Arc<Self>) -> Poly {
        Poly { ring: self.clone(), terms: BTreeMap::new() }
    }

    pub fn one(self: &Arc<Self>) -> Poly {
        self.constant(self.field.one())
    }

    pub fn constant(self: &Arc<Self>, c: Coeff) -> Poly {
        let mut p = self.zero();
        if !self.field.is_zero(&c) {
            p.terms.insert(Monomial::one(self.nvars()), c);
        }
        p
    }

    pub fn int(self: &Arc<Self>, v: i64) -> Poly {
        self.constant(self.field.from_i64(v))
    }

    pub fn var(self: &Arc<Self>, idx: usize) -> Poly {
        let mut m = Monomial::one(self.nvars());
        m.0[idx] = 1;
        self.monomial(m, self.field.one())
    }

    pub fn var_named(self: &Arc<Self>, name: &str) -> Option<Poly> {
        self.var_index(name).map(|i| self.var(i))
    }

    pub fn monomial(self: &Arc<Self>, m: Monomial, c: Coeff) -> Poly {
        let mut p = self.zero();
        if !self.field.is_zero(&c) {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn from_terms(self: &Arc<Self>, terms: impl IntoIterator<Item = (Monomial, Coeff)>) -> Poly {
        let mut p = self.zero();
        for (m, c) in terms {
            debug_assert_eq!(m.0.len(), self.nvars());
            p.add_term(m, c);
        }
        p
    }

    /// Parses a polynomial expression such as `x^2*y - 3/2*y + 1`.
    pub fn parse(self: &Arc<Self>, text: &str) -> Result<Poly, KernelError> {
        let mut parser = ExprParser { ring: self, chars: text.chars().collect(), pos: 0 };
        let p = parser.expr()?;
        parser.skip_ws();
        if parser.pos != parser.chars.len() {
            return Err(parser.error("unexpected trailing input"));
        }
        Ok(p)
    }
}

/// Sparse multivariate polynomial. No stored coefficient is zero.
#[derive(Clone, Debug)]
pub struct Poly {
    ring: Arc<PolyRing>,
    terms: BTreeMap<Monomial, Coeff>,
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.terms == other.terms
    }
}

impl Eq for Poly {}

impl Hash for Poly {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

impl Poly {
    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn field(&self) -> Field {
        self.ring.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// The constant coefficient (zero when absent).
    pub fn constant_term(&self) -> Coeff {
        self.terms
            .get(&Monomial::one(self.ring.nvars()))
            .cloned()
            .unwrap_or_else(|| self.field().zero())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Coeff)> {
        self.terms.iter()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.0[var]).max().unwrap_or(0)
    }

    /// Indices of the variables that occur.
    pub fn support(&self) -> Vec<usize> {
        let mut used = vec![false; self.ring.nvars()];
        for m in self.terms.keys() {
            for i in m.support() {
                used[i] = true;
            }
        }
        used.iter().enumerate().filter(|(_, u)| **u).map(|(i, _)| i).collect()
    }

    pub fn same_ring(&self, other: &Poly) -> bool {
        Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Coeff) {
        let field = self.ring.field;
        if field.is_zero(&c) {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                let sum = field.add(existing, &c);
                if field.is_zero(&sum) {
                    self.terms.remove(&m);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn scale(&self, c: &Coeff) -> Poly {
        let field = self.field();
        if field.is_zero(c) {
            return self.ring.zero();
        }
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), field.mul(a, c))).collect(),
        }
    }

    pub fn mul_monomial(&self, mono: &Monomial, c: &Coeff) -> Poly {
        let field = self.field();
        if field.is_zero(c) {
            return self.ring.zero();
        }
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.mul(mono), field.mul(a, c))).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut acc = self.ring.one();
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Leading monomial and coefficient with respect to `order`.
    pub fn leading_term(&self, order: &MonomialOrder) -> Option<(&Monomial, &Coeff)> {
        self.terms.iter().max_by(|a, b| order.cmp(a.0, b.0))
    }

    pub fn leading_monomial(&self, order: &MonomialOrder) -> Option<&Monomial> {
        self.leading_term(order).map(|(m, _)| m)
    }

    /// Scales so that the leading coefficient under `order` is one.
    pub fn monic(&self, order: &MonomialOrder) -> Poly {
        match self.leading_term(order) {
            Some((_, c)) => {
                let inv = self.field().inv(c);
                self.scale(&inv)
            }
            None => self.clone(),
        }
    }

    /// Terms sorted by decreasing monomial under `order`.
    pub fn sorted_terms(&self, order: &MonomialOrder) -> Vec<(Monomial, Coeff)> {
        let mut t: Vec<_> = self.terms.iter().map(|(m, c)| (m.clone(), c.clone())).collect();
        t.sort_by(|a, b| order.cmp(&b.0, &a.0));
        t
    }

    /// Replaces variable `var` by `value` (which must live in the same ring).
    pub fn substitute(&self, var: usize, value: &Poly) -> Poly {
        let mut powers: Vec<Poly> = vec![self.ring.one()];
        let mut out = self.ring.zero();
        for (m, c) in &self.terms {
            let e = m.0[var] as usize;
            while powers.len() <= e {
                let next = powers.last().unwrap() * value;
                powers.push(next);
            }
            let mut rest = m.clone();
            rest.0[var] = 0;
            out = &out + &powers[e].mul_monomial(&rest, c);
        }
        out
    }

    /// Re-expresses the polynomial in `target`, sending variable `i` to
    /// `var_map[i]`. Fails if a variable with nonzero exponent has no image.
    pub fn map_vars(&self, target: &Arc<PolyRing>, var_map: &[Option<usize>]) -> Result<Poly, KernelError> {
        let mut out = target.zero();
        for (m, c) in &self.terms {
            let mut nm = Monomial::one(target.nvars());
            for (i, e) in m.0.iter().enumerate() {
                if *e == 0 {
                    continue;
                }
                match var_map[i] {
                    Some(j) => nm.0[j] += e,
                    None => return Err(KernelError::VariableNotAvailable(self.ring.vars[i].clone())),
                }
            }
            let c = convert_coeff(c, self.field(), target.field())?;
            out.add_term(nm, c);
        }
        Ok(out)
    }

    /// Re-expresses the polynomial in a ring that has all of this ring's
    /// variables (matched by name).
    pub fn embed(&self, target: &Arc<PolyRing>) -> Result<Poly, KernelError> {
        if Arc::ptr_eq(&self.ring, target) {
            return Ok(self.clone());
        }
        let map: Vec<Option<usize>> = self.ring.vars.iter().map(|v| target.var_index(v)).collect();
        self.map_vars(target, &map)
    }

    /// Exact division; errors when `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &Poly) -> Result<Poly, KernelError> {
        if divisor.is_zero() {
            return Err(KernelError::DivisionByZero);
        }
        let order = MonomialOrder::Lex;
        let (lm, lc) = divisor.leading_term(&order).map(|(m, c)| (m.clone(), c.clone())).unwrap();
        let field = self.field();
        let mut rem = self.clone();
        let mut quot = self.ring.zero();
        while let Some((m, c)) = rem.leading_term(&order).map(|(m, c)| (m.clone(), c.clone())) {
            if !lm.divides(&m) {
                return Err(KernelError::NotDivisible);
            }
            let qm = m.div(&lm);
            let qc = field.div(&c, &lc);
            rem = &rem - &divisor.mul_monomial(&qm, &qc);
            quot.add_term(qm, qc);
        }
        Ok(quot)
    }
}

fn convert_coeff(c: &Coeff, from: Field, to: Field) -> Result<Coeff, KernelError> {
    if from == to {
        return Ok(c.clone());
    }
    match c {
        Coeff::Q(q) => to.from_rational(q),
        Coeff::Fp(v) => Err(KernelError::FieldMismatch(format!("cannot move residue {v} mod {} into {to}", from.characteristic()))),
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        assert!(self.same_ring(rhs), "polynomials from different rings");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        let field = self.field();
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), field.neg(c))).collect(),
        }
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        assert!(self.same_ring(rhs), "polynomials from different rings");
        let field = self.field();
        let mut out = self.ring.zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), field.mul(c1, c2));
            }
        }
        out
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let field = self.field();
        for (i, (m, c)) in self.sorted_terms(&MonomialOrder::GrevLex).iter().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { field.neg(c) } else { c.clone() };
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut factors: Vec<String> = Vec::new();
            for (v, e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.ring.vars[v].clone()),
                    _ => factors.push(format!("{}^{}", self.ring.vars[v], e)),
                }
            }
            let show_coeff = !field.is_one(&abs) || factors.is_empty();
            if show_coeff {
                factors.insert(0, abs.to_string());
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

struct ExprParser<'a> {
    ring: &'a Arc<PolyRing>,
    chars: Vec<char>,
    pos: usize,
}

impl ExprParser<'_> {
    fn error(&self, msg: &str) -> KernelError {
        KernelError::Parse { pos: self.pos, msg: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Poly, KernelError> {
        let mut acc = match self.peek() {
            Some('-') => {
                self.pos += 1;
                -&self.term()?
            }
            Some('+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some('-') => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly, KernelError> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    acc = &acc * &self.power()?;
                }
                Some('/') => {
                    self.pos += 1;
                    let d = self.power()?;
                    if !d.is_constant() || d.is_zero() {
                        return Err(self.error("can only divide by a nonzero constant"));
                    }
                    let inv = self.ring.field.inv(&d.constant_term());
                    acc = acc.scale(&inv);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<Poly, KernelError> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            self.skip_ws();
            let e = self.integer()?;
            let e: u32 = e.try_into().map_err(|_| self.error("exponent too large"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<BigInt, KernelError> {
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected integer"));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        Ok(s.parse().unwrap())
    }

    fn atom(&mut self) -> Result<Poly, KernelError> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some('-') => {
                self.pos += 1;
                Ok(-&self.power()?)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                let c = self.ring.field.from_rational(&BigRational::from_integer(n))?;
                Ok(self.ring.constant(c))
            }
            Some(c) if c.is_alphabetic() || c == '_' => {
                let start = self.pos;
                while self.pos < self.chars.len() && (self.chars[self.pos].is_alphanumeric() || self.chars[self.pos] == '_') {
                    self.pos += 1;
                }
                let name: String = self.chars[start..self.pos].iter().collect();
                self.ring
                    .var_named(&name)
                    .ok_or(KernelError::UnknownVariable(name))
            }
            _ => Err(self.error("expected a number, variable or '('")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qxy() -> Arc<PolyRing> {
        PolyRing::new(Field::Rationals, vec!["x".into(), "y".into()]).unwrap()
    }

    #[test]
    fn parse_and_print() {
        let r = qxy();
        let p = r.parse("x^2*y - 3/2*y + 1").unwrap();
        assert_eq!(p.to_string(), "x^2*y - 3/2*y + 1");
        assert_eq!(r.parse("(x+y)^2").unwrap(), r.parse("x^2 + 2*x*y + y^2").unwrap());
        assert_eq!(r.parse("-x").unwrap().to_string(), "-x");
    }

    #[test]
    fn cancellation_keeps_no_zero_terms() {
        let r = qxy();
        let p = r.parse("x + y").unwrap();
        let q = r.parse("x").unwrap();
        let d = &(&p - &q) - &r.parse("y").unwrap();
        assert!(d.is_zero());
        assert_eq!(d.num_terms(), 0);
    }

    #[test]
    fn substitution() {
        let r = qxy();
        let p = r.parse("x^2 + y").unwrap();
        let s = p.substitute(0, &r.parse("y + 1").unwrap());
        assert_eq!(s, r.parse("y^2 + 3*y + 1").unwrap());
    }

    #[test]
    fn exact_division() {
        let r = qxy();
        let p = r.parse("x^2 - y^2").unwrap();
        let q = p.div_exact(&r.parse("x - y").unwrap()).unwrap();
        assert_eq!(q, r.parse("x + y").unwrap());
        assert!(p.div_exact(&r.parse("x + 2").unwrap()).is_err());
    }

    #[test]
    fn unknown_variable_is_an_error() {
        assert!(matches!(qxy().parse("z"), Err(KernelError::UnknownVariable(_))));
    }

    #[test]
    fn duplicate_variables_rejected() {
        assert!(PolyRing::new(Field::Rationals, vec!["x".into(), "x".into()]).is_err());
    }
}
