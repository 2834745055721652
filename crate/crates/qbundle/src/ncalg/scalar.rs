//! Laurent polynomials in the formal parameter `q` with exact rational coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// An element of `Q[q, q^-1]`. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Scalar {
    terms: BTreeMap<i32, BigRational>,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::default()
    }

    pub fn one() -> Self {
        Scalar::monomial(BigRational::one(), 0)
    }

    /// `c * q^k`
    pub fn monomial(c: BigRational, k: i32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(k, c);
        }
        Scalar { terms }
    }

    /// `q^k`
    pub fn q_pow(k: i32) -> Self {
        Scalar::monomial(BigRational::one(), k)
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::monomial(BigRational::from_integer(BigInt::from(n)), 0)
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Scalar::monomial(
            BigRational::new(BigInt::from(num), BigInt::from(den)),
            0,
        )
    }

    pub fn from_rational(r: BigRational) -> Self {
        Scalar::monomial(r, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    /// Units of the Laurent ring are exactly the nonzero single-term scalars.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &BigRational)> {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, k: i32) -> BigRational {
        self.terms.get(&k).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn min_exp(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    /// Returns `(c, k)` when the scalar is `c * q^k`.
    pub fn as_monomial(&self) -> Option<(&BigRational, i32)> {
        if self.terms.len() == 1 {
            let (k, c) = self.terms.iter().next().unwrap();
            Some((c, *k))
        } else {
            None
        }
    }

    /// The constant rational when the scalar has no `q` dependence.
    pub fn as_rational(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => self.terms.get(&0).cloned(),
            _ => None,
        }
    }

    pub fn inverse(&self) -> Option<Scalar> {
        let (c, k) = self.as_monomial()?;
        Some(Scalar::monomial(c.recip(), -k))
    }

    /// Integer powers; negative exponents require a unit.
    pub fn pow(&self, n: i64) -> Option<Scalar> {
        if n == 0 {
            return Some(Scalar::one());
        }
        let base = if n < 0 { self.inverse()? } else { self.clone() };
        if let Some((c, k)) = base.as_monomial() {
            let e = n.unsigned_abs();
            let exp = i32::try_from(e as i64 * k as i64).ok()?;
            let mut cc = BigRational::one();
            for _ in 0..e {
                cc *= c;
            }
            return Some(Scalar::monomial(cc, exp));
        }
        let mut acc = Scalar::one();
        for _ in 0..n.unsigned_abs() {
            acc = &acc * &base;
        }
        Some(acc)
    }

    pub fn scale_rational(&self, r: &BigRational) -> Scalar {
        if r.is_zero() {
            return Scalar::zero();
        }
        Scalar {
            terms: self.terms.iter().map(|(k, c)| (*k, c * r)).collect(),
        }
    }

    /// Multiplies by `q^k`.
    pub fn shift(&self, k: i32) -> Scalar {
        Scalar {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    fn add_term(&mut self, k: i32, c: &BigRational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(k).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&k);
        }
    }

    /// Evaluates at `q = 1`; handy as a classical-limit sanity check.
    pub fn at_one(&self) -> BigRational {
        self.terms.values().fold(BigRational::zero(), |a, c| a + c)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(mut self, rhs: Scalar) -> Scalar {
        self += &rhs;
        self
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        for (k, c) in &rhs.terms {
            self.add_term(*k, c);
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        &self - &rhs
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        let mut out = Scalar::zero();
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                out.add_term(a + b, &(x * y));
            }
        }
        out
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        &self * &rhs
    }
}

fn fmt_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl Scalar {
    /// Renders in the expression grammar with the given parameter name.
    pub fn render(&self, param: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (k, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let qpart = match *k {
                0 => None,
                1 => Some(param.to_string()),
                k => Some(format!("{param}^{k}")),
            };
            match qpart {
                None => out.push_str(&fmt_rational(&abs)),
                Some(qp) if abs.is_one() => out.push_str(&qp),
                Some(qp) => {
                    out.push_str(&fmt_rational(&abs));
                    out.push('*');
                    out.push_str(&qp);
                }
            }
        }
        out
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("q"))
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Scalar({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn arb_scalar() -> impl Strategy<Value = Scalar> {
        proptest::collection::vec((-3i32..=3, -4i64..=4, 1i64..=3), 0..4).prop_map(|ts| {
            let mut s = Scalar::zero();
            for (k, n, d) in ts {
                s += &Scalar::from_ratio(n, d).shift(k);
            }
            s
        })
    }

    #[test]
    fn q_times_inverse_is_one() {
        assert!((Scalar::q_pow(1) * Scalar::q_pow(-1)).is_one());
        assert_eq!(Scalar::q_pow(3).inverse().unwrap(), Scalar::q_pow(-3));
    }

    #[test]
    fn zero_has_no_terms() {
        let s = Scalar::from_int(2) - Scalar::from_int(2);
        assert!(s.is_zero());
        assert_eq!(s.len(), 0);
    }

    #[test]
    fn render_forms() {
        let s = Scalar::from_int(1) + Scalar::q_pow(2).scale_rational(&BigRational::from_integer((-3).into()));
        assert_eq!(s.render("q"), "1 - 3*q^2");
        assert_eq!(Scalar::q_pow(-1).render("q"), "q^-1");
        assert_eq!((-Scalar::q_pow(1)).render("q"), "-q");
        assert_eq!(Scalar::from_ratio(1, 2).render("q"), "1/2");
    }

    #[test]
    fn pow_of_sums() {
        let s = Scalar::one() + Scalar::q_pow(1);
        let sq = s.pow(2).unwrap();
        assert_eq!(sq, Scalar::one() + Scalar::from_int(2).shift(1) + Scalar::q_pow(2));
        assert!(s.pow(-1).is_none());
    }

    proptest! {
        #[test]
        fn ring_laws(s in arb_scalar(), t in arb_scalar(), w in arb_scalar()) {
            prop_assert_eq!(&s * &(&t + &w), &(&s * &t) + &(&s * &w));
            prop_assert_eq!(&s * &t, &t * &s);
            prop_assert_eq!(&(&s * &t) * &w, &s * &(&t * &w));
            prop_assert_eq!(&(&s + &t) + &w, &s + &(&t + &w));
            prop_assert!((&s - &s).is_zero());
        }
    }
}
