use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::KernelError;

/// Coefficient domain of a polynomial ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    Rationals,
    /// The prime field with the given characteristic.
    Prime(u64),
}

/// A field element. Rationals are kept in lowest terms with a positive
/// denominator (guaranteed by `BigRational`); residues lie in `[0, p)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Coeff {
    Q(BigRational),
    Fp(u64),
}

pub(crate) fn is_prime_u64(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p % 2 == 0 {
        return p == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= p {
        if p % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

impl Field {
    pub fn prime(p: u64) -> Result<Field, KernelError> {
        // Products are formed in u128, so any 63-bit prime is safe.
        if p >= 1 << 63 || !is_prime_u64(p) {
            return Err(KernelError::NotAPrime(p));
        }
        Ok(Field::Prime(p))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rationals => 0,
            Field::Prime(p) => *p,
        }
    }

    pub fn zero(&self) -> Coeff {
        match self {
            Field::Rationals => Coeff::Q(BigRational::zero()),
            Field::Prime(_) => Coeff::Fp(0),
        }
    }

    pub fn one(&self) -> Coeff {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Coeff {
        match self {
            Field::Rationals => Coeff::Q(BigRational::from_integer(BigInt::from(v))),
            Field::Prime(p) => Coeff::Fp((v as i128).rem_euclid(*p as i128) as u64),
        }
    }

    pub fn from_bigint(&self, v: &BigInt) -> Coeff {
        match self {
            Field::Rationals => Coeff::Q(BigRational::from_integer(v.clone())),
            Field::Prime(p) => {
                let r = v.mod_floor(&BigInt::from(*p));
                Coeff::Fp(r.to_u64().expect("residue fits in u64"))
            }
        }
    }

    /// Maps a rational number into the field. Fails over `F_p` when `p`
    /// divides the denominator.
    pub fn from_rational(&self, v: &BigRational) -> Result<Coeff, KernelError> {
        match self {
            Field::Rationals => Ok(Coeff::Q(v.clone())),
            Field::Prime(_) => {
                let num = self.from_bigint(v.numer());
                let den = self.from_bigint(v.denom());
                if self.is_zero(&den) {
                    return Err(KernelError::DenominatorVanishes(v.to_string(), self.characteristic()));
                }
                Ok(self.mul(&num, &self.inv(&den)))
            }
        }
    }

    pub fn is_zero(&self, a: &Coeff) -> bool {
        match a {
            Coeff::Q(q) => q.is_zero(),
            Coeff::Fp(v) => *v == 0,
        }
    }

    pub fn is_one(&self, a: &Coeff) -> bool {
        match a {
            Coeff::Q(q) => q.is_one(),
            Coeff::Fp(v) => *v == 1,
        }
    }

    pub fn add(&self, a: &Coeff, b: &Coeff) -> Coeff {
        match (self, a, b) {
            (Field::Rationals, Coeff::Q(x), Coeff::Q(y)) => Coeff::Q(x + y),
            (Field::Prime(p), Coeff::Fp(x), Coeff::Fp(y)) => Coeff::Fp(((*x as u128 + *y as u128) % *p as u128) as u64),
            _ => panic!("coefficient from a different field"),
        }
    }

    pub fn neg(&self, a: &Coeff) -> Coeff {
        match (self, a) {
            (Field::Rationals, Coeff::Q(x)) => Coeff::Q(-x),
            (Field::Prime(p), Coeff::Fp(x)) => Coeff::Fp(if *x == 0 { 0 } else { p - x }),
            _ => panic!("coefficient from a different field"),
        }
    }

    pub fn sub(&self, a: &Coeff, b: &Coeff) -> Coeff {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Coeff, b: &Coeff) -> Coeff {
        match (self, a, b) {
            (Field::Rationals, Coeff::Q(x), Coeff::Q(y)) => Coeff::Q(x * y),
            (Field::Prime(p), Coeff::Fp(x), Coeff::Fp(y)) => Coeff::Fp(((*x as u128 * *y as u128) % *p as u128) as u64),
            _ => panic!("coefficient from a different field"),
        }
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self, a: &Coeff) -> Coeff {
        match (self, a) {
            (Field::Rationals, Coeff::Q(x)) => {
                assert!(!x.is_zero(), "inverse of zero");
                Coeff::Q(x.recip())
            }
            (Field::Prime(p), Coeff::Fp(x)) => {
                assert!(*x != 0, "inverse of zero");
                Coeff::Fp(pow_mod(*x, p - 2, *p))
            }
            _ => panic!("coefficient from a different field"),
        }
    }

    pub fn div(&self, a: &Coeff, b: &Coeff) -> Coeff {
        self.mul(a, &self.inv(b))
    }
}

fn pow_mod(base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc: u128 = 1;
    let mut b = base as u128 % m as u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m as u128;
        }
        b = b * b % m as u128;
        exp >>= 1;
    }
    acc as u64
}

impl Coeff {
    pub(crate) fn is_negative(&self) -> bool {
        match self {
            Coeff::Q(q) => q.is_negative(),
            Coeff::Fp(_) => false,
        }
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coeff::Q(q) => write!(f, "{q}"),
            Coeff::Fp(v) => write!(f, "{v}"),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "Q"),
            Field::Prime(p) => write!(f, "F({p})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_arithmetic() {
        let f = Field::prime(7).unwrap();
        let a = f.from_i64(-3);
        assert_eq!(a, Coeff::Fp(4));
        assert_eq!(f.mul(&a, &f.inv(&a)), Coeff::Fp(1));
        assert_eq!(f.add(&Coeff::Fp(6), &Coeff::Fp(3)), Coeff::Fp(2));
    }

    #[test]
    fn rejects_composite_modulus() {
        assert!(Field::prime(9).is_err());
        assert!(Field::prime(1).is_err());
        assert!(Field::prime(2).is_ok());
    }

    #[test]
    fn rational_into_prime_field() {
        let f = Field::prime(5).unwrap();
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(f.from_rational(&half).unwrap(), Coeff::Fp(3));
        let fifth = BigRational::new(1.into(), 5.into());
        assert!(f.from_rational(&fifth).is_err());
    }
}
