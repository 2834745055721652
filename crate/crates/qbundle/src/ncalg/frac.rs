//! Fractions of Laurent polynomials, the field used for elimination.

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::scalar::Scalar;

/// Dense polynomial, index = exponent.
type Dense = Vec<BigRational>;

fn dense(s: &Scalar) -> (i32, Dense) {
    let lo = s.min_exp().unwrap_or(0);
    let hi = s.max_exp().unwrap_or(0);
    let mut v = vec![BigRational::zero(); (hi - lo + 1) as usize];
    for (k, c) in s.terms() {
        v[(k - lo) as usize] = c.clone();
    }
    (lo, v)
}

fn sparse(d: &[BigRational], shift: i32) -> Scalar {
    let mut s = Scalar::zero();
    for (i, c) in d.iter().enumerate() {
        if !c.is_zero() {
            s += &Scalar::monomial(c.clone(), i as i32 + shift);
        }
    }
    s
}

fn trim(v: &mut Dense) {
    while v.len() > 1 && v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

fn is_zero_poly(v: &[BigRational]) -> bool {
    v.iter().all(|c| c.is_zero())
}

fn divrem(a: &[BigRational], b: &[BigRational]) -> (Dense, Dense) {
    let mut r: Dense = a.to_vec();
    trim(&mut r);
    let mut b = b.to_vec();
    trim(&mut b);
    let db = b.len() - 1;
    let lead = b[db].clone();
    if r.len() < b.len() {
        return (vec![BigRational::zero()], r);
    }
    let mut quot = vec![BigRational::zero(); r.len() - db];
    while r.len() > db && !is_zero_poly(&r) {
        let dr = r.len() - 1;
        if dr < db {
            break;
        }
        let c = &r[dr] / &lead;
        let off = dr - db;
        for (i, bc) in b.iter().enumerate() {
            r[i + off] -= &c * bc;
        }
        quot[off] = c;
        r.pop();
        trim(&mut r);
    }
    trim(&mut r);
    (quot, r)
}

fn monic(mut v: Dense) -> Dense {
    trim(&mut v);
    let lead = v.last().cloned().unwrap_or_else(BigRational::one);
    if !lead.is_zero() && !lead.is_one() {
        for c in v.iter_mut() {
            *c /= &lead;
        }
    }
    v
}

fn gcd(a: &[BigRational], b: &[BigRational]) -> Dense {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !is_zero_poly(&y) {
        let (_, r) = divrem(&x, &y);
        x = y;
        y = r;
    }
    monic(x)
}

/// `num / den`, normalized so that `den` is a monic polynomial with nonzero constant term
/// sharing no factor with `num`.
#[derive(Clone, PartialEq, Eq)]
pub struct QFrac {
    num: Scalar,
    den: Scalar,
}

impl QFrac {
    pub fn zero() -> Self {
        QFrac { num: Scalar::zero(), den: Scalar::one() }
    }

    pub fn one() -> Self {
        QFrac::from_scalar(Scalar::one())
    }

    pub fn from_scalar(s: Scalar) -> Self {
        QFrac { num: s, den: Scalar::one() }
    }

    pub fn new(num: Scalar, den: Scalar) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return QFrac::zero();
        }
        if den.is_one() {
            return QFrac { num, den };
        }
        if let Some((c, k)) = den.as_monomial() {
            let inv = c.recip();
            return QFrac { num: num.shift(-k).scale_rational(&inv), den: Scalar::one() };
        }
        let (sd, dd) = dense(&den);
        let num = num.shift(-sd);
        let (sn, nd) = dense(&num);
        let g = gcd(&nd, &dd);
        let (nd, dd) = if g.len() > 1 {
            (divrem(&nd, &g).0, divrem(&dd, &g).0)
        } else {
            (nd, dd)
        };
        let mut dd = dd;
        trim(&mut dd);
        let lead = dd.last().unwrap().clone();
        let inv = lead.recip();
        let num = sparse(&nd, sn).scale_rational(&inv);
        let den = sparse(&dd, 0).scale_rational(&inv);
        QFrac { num, den }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn numer(&self) -> &Scalar {
        &self.num
    }

    pub fn denom(&self) -> &Scalar {
        &self.den
    }

    /// Back to a Laurent polynomial when the denominator is trivial.
    pub fn to_scalar(&self) -> Option<Scalar> {
        if self.den.is_one() {
            Some(self.num.clone())
        } else {
            None
        }
    }

    pub fn add(&self, o: &QFrac) -> QFrac {
        if self.den.is_one() && o.den.is_one() {
            return QFrac::from_scalar(&self.num + &o.num);
        }
        if self.den == o.den {
            return QFrac::new(&self.num + &o.num, self.den.clone());
        }
        QFrac::new(&(&self.num * &o.den) + &(&o.num * &self.den), &self.den * &o.den)
    }

    pub fn neg(&self) -> QFrac {
        QFrac { num: -&self.num, den: self.den.clone() }
    }

    pub fn sub(&self, o: &QFrac) -> QFrac {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &QFrac) -> QFrac {
        if self.den.is_one() && o.den.is_one() {
            return QFrac::from_scalar(&self.num * &o.num);
        }
        QFrac::new(&self.num * &o.num, &self.den * &o.den)
    }

    pub fn inv(&self) -> Option<QFrac> {
        if self.is_zero() {
            None
        } else {
            Some(QFrac::new(self.den.clone(), self.num.clone()))
        }
    }

    pub fn div(&self, o: &QFrac) -> Option<QFrac> {
        Some(self.mul(&o.inv()?))
    }
}

impl fmt::Debug for QFrac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cancels_common_factor() {
        // (q^2 - 1)/(q - 1) = q + 1
        let num = Scalar::q_pow(2) - Scalar::one();
        let den = Scalar::q_pow(1) - Scalar::one();
        let f = QFrac::new(num, den);
        assert_eq!(f.to_scalar().unwrap(), Scalar::q_pow(1) + Scalar::one());
    }

    #[test]
    fn inverse_roundtrip() {
        let a = QFrac::from_scalar(Scalar::one() + Scalar::q_pow(2));
        let b = a.inv().unwrap();
        assert!(a.mul(&b).is_one());
        assert!(b.to_scalar().is_none());
    }

    #[test]
    fn monomial_denominator_is_laurent() {
        let f = QFrac::new(Scalar::from_int(3), Scalar::from_int(6).shift(2));
        assert_eq!(f.to_scalar().unwrap(), Scalar::from_ratio(1, 2).shift(-2));
    }
}
