use std::fmt;

use num_traits::{One, Zero};

use super::rational::{format_q, Q};
use crate::error::{Error, Result};

/// Coefficients kept per series unless the caller asks for more.
pub const DEFAULT_BUDGET: usize = 16;
/// Escalation ceiling for the truncation budget.
pub const MAX_BUDGET: usize = 256;

/// Truncated Laurent series `sum c_i t^(val+i) + O(t^prec)`.
///
/// `prec == None` marks an exact Laurent polynomial. A series with no stored
/// coefficients is zero: exactly so when `prec` is `None`, otherwise only up
/// to `O(t^prec)` (the tracked zero).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Series {
    val: i64,
    coeffs: Vec<Q>,
    prec: Option<i64>,
}

impl fmt::Debug for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = self.val + i as i64;
            let c = format_q(c);
            terms.push(match e {
                0 => c,
                1 => format!("{c}*t"),
                _ => format!("{c}*t^{e}"),
            });
        }
        if let Some(p) = self.prec {
            terms.push(format!("O(t^{p})"));
        }
        if terms.is_empty() {
            return write!(f, "0");
        }
        write!(f, "{}", terms.join(" + "))
    }
}

fn min_prec(a: Option<i64>, b: Option<i64>) -> Option<i64> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

impl Series {
    /// Builds `sum coeffs[i] t^(val+i) + O(t^prec)` and normalizes it.
    pub fn new(val: i64, coeffs: Vec<Q>, prec: Option<i64>) -> Self {
        let mut s = Series { val, coeffs, prec };
        s.normalize();
        s
    }

    fn normalize(&mut self) {
        if let Some(p) = self.prec {
            let keep = (p - self.val).max(0) as usize;
            self.coeffs.truncate(keep);
        }
        let lead = self.coeffs.iter().position(|c| !c.is_zero());
        match lead {
            None => {
                self.coeffs.clear();
                self.val = self.prec.unwrap_or(0);
            }
            Some(k) => {
                self.coeffs.drain(..k);
                self.val += k as i64;
                while self.coeffs.last().is_some_and(|c| c.is_zero()) {
                    self.coeffs.pop();
                }
            }
        }
    }

    pub fn zero() -> Self {
        Series {
            val: 0,
            coeffs: Vec::new(),
            prec: None,
        }
    }

    /// Zero known only up to `O(t^prec)`.
    pub fn zero_to(prec: i64) -> Self {
        Series {
            val: prec,
            coeffs: Vec::new(),
            prec: Some(prec),
        }
    }

    pub fn constant(c: Q) -> Self {
        Self::new(0, vec![c], None)
    }

    pub fn one() -> Self {
        Self::constant(Q::one())
    }

    /// `c t^e`
    pub fn monomial(c: Q, e: i64) -> Self {
        Self::new(e, vec![c], None)
    }

    /// Exact Laurent polynomial from `(exponent, coefficient)` terms.
    pub fn from_terms(terms: &[(i64, Q)]) -> Self {
        terms.iter().fold(Self::zero(), |acc, (e, c)| {
            acc.add(&Self::monomial(c.clone(), *e))
        })
    }

    pub fn is_exact(&self) -> bool {
        self.prec.is_none()
    }

    pub fn precision(&self) -> Option<i64> {
        self.prec
    }

    /// True for the exact zero and for the tracked zero.
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_exact_zero(&self) -> bool {
        self.coeffs.is_empty() && self.prec.is_none()
    }

    /// Least exponent with a nonzero coefficient.
    pub fn valuation(&self) -> Result<i64> {
        match (self.coeffs.is_empty(), self.prec) {
            (false, _) => Ok(self.val),
            (true, None) => Err(Error::ZeroSeries),
            (true, Some(p)) => Err(Error::InsufficientBudget {
                budget: p.max(0) as usize,
            }),
        }
    }

    /// Lower bound on the valuation; exact for nonzero series.
    pub fn valuation_bound(&self) -> Option<i64> {
        if self.is_exact_zero() {
            None
        } else {
            Some(self.val)
        }
    }

    /// Largest stored exponent plus one, or the precision if truncated.
    pub fn end(&self) -> i64 {
        self.prec.unwrap_or(self.val + self.coeffs.len() as i64)
    }

    /// Coefficient of `t^e`, if it is known.
    pub fn coeff(&self, e: i64) -> Result<Q> {
        if let Some(p) = self.prec {
            if e >= p {
                return Err(Error::InsufficientBudget {
                    budget: (p - self.val).max(0) as usize,
                });
            }
        }
        if e < self.val {
            return Ok(Q::zero());
        }
        Ok(self
            .coeffs
            .get((e - self.val) as usize)
            .cloned()
            .unwrap_or_else(Q::zero))
    }

    pub fn leading_coeff(&self) -> Result<Q> {
        let v = self.valuation()?;
        self.coeff(v)
    }

    /// Exact constant value, if the series is an exact constant.
    pub fn as_constant(&self) -> Option<Q> {
        if !self.is_exact() {
            return None;
        }
        match self.coeffs.len() {
            0 => Some(Q::zero()),
            1 if self.val == 0 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    /// `(exponent, coefficient)` pairs of the stored nonzero terms.
    pub fn terms(&self) -> Vec<(i64, Q)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (self.val + i as i64, c.clone()))
            .collect()
    }

    pub fn truncate(&self, prec: i64) -> Self {
        Self::new(
            self.val,
            self.coeffs.clone(),
            min_prec(self.prec, Some(prec)),
        )
    }

    pub fn neg(&self) -> Self {
        Series {
            val: self.val,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
            prec: self.prec,
        }
    }

    pub fn scale(&self, c: &Q) -> Self {
        Self::new(
            self.val,
            self.coeffs.iter().map(|x| x * c).collect(),
            self.prec,
        )
    }

    /// Multiplies by `t^e`.
    pub fn shift(&self, e: i64) -> Self {
        Series {
            val: self.val + e,
            coeffs: self.coeffs.clone(),
            prec: self.prec.map(|p| p + e),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let prec = min_prec(self.prec, o.prec);
        let lo = self.val.min(o.val);
        let hi = prec.unwrap_or_else(|| self.end().max(o.end())).max(lo);
        let mut c = vec![Q::zero(); (hi - lo) as usize];
        for s in [self, o] {
            for (i, x) in s.coeffs.iter().enumerate() {
                let e = s.val + i as i64;
                if e < hi {
                    c[(e - lo) as usize] += x;
                }
            }
        }
        Self::new(lo, c, prec)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_exact_zero() || o.is_exact_zero() {
            return Self::zero();
        }
        let prec = min_prec(self.prec.map(|p| p + o.val), o.prec.map(|p| p + self.val));
        let lo = self.val + o.val;
        let hi = prec
            .unwrap_or(lo + (self.coeffs.len() + o.coeffs.len()) as i64)
            .max(lo);
        let mut c = vec![Q::zero(); (hi - lo) as usize];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                let k = i + j;
                if k >= c.len() {
                    break;
                }
                c[k] += a * b;
            }
        }
        Self::new(lo, c, prec)
    }

    /// Multiplicative inverse with at most `budget` coefficients of relative
    /// precision.
    pub fn inverse(&self, budget: usize) -> Result<Self> {
        let v = self.valuation()?;
        let known = match self.prec {
            Some(p) => ((p - v) as usize).min(budget),
            None => budget,
        };
        let a0_inv = Q::one() / &self.coeffs[0];
        let mut b: Vec<Q> = Vec::with_capacity(known);
        for k in 0..known {
            let mut acc = if k == 0 { Q::one() } else { Q::zero() };
            for i in 1..=k {
                if let Some(a) = self.coeffs.get(i) {
                    if !a.is_zero() {
                        acc -= a * &b[k - i];
                    }
                }
            }
            b.push(acc * &a0_inv);
        }
        // An exact monomial has an exact inverse.
        let exact = self.is_exact() && self.coeffs.len() == 1;
        let prec = if exact { None } else { Some(-v + known as i64) };
        Ok(Self::new(-v, b, prec))
    }

    pub fn div(&self, o: &Self, budget: usize) -> Result<Self> {
        Ok(self.mul(&o.inverse(budget)?))
    }

    /// Integer power; negative exponents go through `inverse`.
    pub fn powi(&self, e: i64, budget: usize) -> Result<Self> {
        let base = if e < 0 {
            self.inverse(budget)?
        } else {
            self.clone()
        };
        let mut out = Self::one();
        for _ in 0..e.unsigned_abs() {
            out = out.mul(&base);
        }
        Ok(out)
    }

    /// Substitutes `t -> t * u(t)` where `u` has valuation zero.
    pub fn reparametrize(&self, u: &Self, budget: usize) -> Result<Self> {
        if u.valuation()? != 0 {
            return Err(Error::InvalidArgument(
                "reparametrization factor must be a unit".into(),
            ));
        }
        let mut out = match self.prec {
            Some(p) => Self::zero_to(p),
            None => Self::zero(),
        };
        for (e, c) in self.terms() {
            let term = u.powi(e, budget)?.shift(e).scale(&c);
            out = out.add(&term);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{q, qf};
    use proptest::prelude::*;

    #[test]
    fn valuations() {
        assert_eq!(
            Series::from_terms(&[(2, q(1)), (3, q(1))])
                .valuation()
                .unwrap(),
            2
        );
        assert_eq!(Series::constant(q(5)).valuation().unwrap(), 0);
        assert_eq!(
            Series::from_terms(&[(-1, q(1)), (0, q(1))])
                .valuation()
                .unwrap(),
            -1
        );
        assert_eq!(Series::zero().valuation(), Err(Error::ZeroSeries));
        assert!(Series::zero_to(4).valuation().unwrap_err().is_budget());
    }

    #[test]
    fn inverse_of_one_minus_t() {
        let s = Series::from_terms(&[(0, q(1)), (1, q(-1))]);
        let inv = s.inverse(5).unwrap();
        for e in 0..5 {
            assert_eq!(inv.coeff(e).unwrap(), q(1));
        }
        assert!(inv.coeff(5).is_err());
        let prod = s.mul(&inv);
        assert_eq!(prod.valuation().unwrap(), 0);
        assert_eq!(prod.coeff(0).unwrap(), q(1));
        assert_eq!(prod.coeff(4).unwrap(), q(0));
    }

    #[test]
    fn monomial_inverse_is_exact() {
        let s = Series::monomial(qf(2, 3), -2);
        let inv = s.inverse(4).unwrap();
        assert!(inv.is_exact());
        assert_eq!(inv, Series::monomial(qf(3, 2), 2));
    }

    #[test]
    fn reparametrize_polynomial() {
        // t^2 under t -> t(1 + t) is t^2 + 2t^3 + t^4.
        let s = Series::monomial(q(1), 2);
        let u = Series::from_terms(&[(0, q(1)), (1, q(1))]);
        let r = s.reparametrize(&u, 8).unwrap();
        assert_eq!(r, Series::from_terms(&[(2, q(1)), (3, q(2)), (4, q(1))]));
    }

    fn small_series() -> impl Strategy<Value = Series> {
        (-3i64..3, proptest::collection::vec(-5i64..5, 1..5)).prop_filter_map(
            "nonzero",
            |(v, cs)| {
                let s = Series::new(v, cs.into_iter().map(q).collect(), None);
                if s.is_zero() {
                    None
                } else {
                    Some(s)
                }
            },
        )
    }

    proptest! {
        #[test]
        fn valuation_additive(a in small_series(), b in small_series()) {
            let p = a.mul(&b);
            prop_assert_eq!(p.valuation().unwrap(), a.valuation().unwrap() + b.valuation().unwrap());
        }

        #[test]
        fn add_sub_roundtrip(a in small_series(), b in small_series()) {
            prop_assert_eq!(a.add(&b).sub(&b), a);
        }

        #[test]
        fn mul_div_roundtrip(a in small_series(), b in small_series()) {
            let back = a.mul(&b).div(&b, 12).unwrap();
            for e in a.valuation().unwrap()..back.end() {
                prop_assert_eq!(back.coeff(e).unwrap(), a.coeff(e).unwrap());
            }
        }
    }
}
