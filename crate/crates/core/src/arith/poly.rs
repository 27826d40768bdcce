use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::MatrixQ;
use super::rational::{format_q, q, Q};
use crate::error::{Error, Result};

/// Univariate polynomial over the rationals, coefficients lowest degree first.
///
/// The coefficient list never ends in a zero, so the zero polynomial is the
/// empty list.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    coeffs: Vec<Q>,
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut terms = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let c = format_q(c);
            terms.push(match i {
                0 => c,
                1 => format!("{c}*x"),
                _ => format!("{c}*x^{i}"),
            });
        }
        write!(f, "{}", terms.join(" + "))
    }
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<Q>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| q(c)).collect())
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: Q) -> Self {
        Self::new(vec![c])
    }

    /// `x - root`
    pub fn linear(root: &Q) -> Self {
        Self::new(vec![-root.clone(), Q::one()])
    }

    pub fn x_pow(k: usize) -> Self {
        let mut c = vec![Q::zero(); k + 1];
        c[k] = Q::one();
        Polynomial { coeffs: c }
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial has none.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Q {
        self.coeffs.last().cloned().unwrap_or_else(Q::zero)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = Q::one() / self.leading();
        Self::new(self.coeffs.iter().map(|c| c * &inv).collect())
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new(
            (0..n)
                .map(|i| {
                    let a = self.coeffs.get(i).cloned().unwrap_or_else(Q::zero);
                    let b = o.coeffs.get(i).cloned().unwrap_or_else(Q::zero);
                    a + b
                })
                .collect(),
        )
    }

    pub fn neg(&self) -> Self {
        Polynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut c = vec![Q::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Self::new(c)
    }

    pub fn scale(&self, s: &Q) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn div_rem(&self, d: &Self) -> Result<(Self, Self)> {
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let dd = d.coeffs.len() - 1;
        let lead_inv = Q::one() / d.leading();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![Q::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[k + j] -= &c * dc;
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Ok((Self::new(quot), Self::new(rem)))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).expect("nonzero divisor").1;
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * q(i as i64))
                .collect(),
        )
    }

    pub fn eval(&self, x: &Q) -> Q {
        let mut acc = Q::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Horner evaluation at a square matrix.
    pub fn eval_matrix(&self, m: &MatrixQ) -> MatrixQ {
        let n = m.rows();
        let mut acc = MatrixQ::zeros(n, n);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(m);
            acc.add_scaled(c, &MatrixQ::identity(n));
        }
        acc
    }

    /// True iff `gcd(p, p')` is constant.
    pub fn is_squarefree(&self) -> Result<bool> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        Ok(self.gcd(&self.derivative()).degree() == Some(0))
    }

    /// `p / gcd(p, p')`, monic.
    pub fn squarefree_part(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let g = self.gcd(&self.derivative());
        Ok(self.div_rem(&g)?.0.monic())
    }

    /// True iff the polynomial is `c * x^k` for some `k`.
    pub fn is_monomial(&self) -> bool {
        !self.is_zero()
            && self.coeffs[..self.coeffs.len() - 1]
                .iter()
                .all(|c| c.is_zero())
    }

    /// Distinct rational roots, in increasing order.
    pub fn rational_roots(&self) -> Result<Vec<Q>> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut f = self.monic();
        let mut roots = Vec::new();
        if f.coeffs[0].is_zero() {
            roots.push(Q::zero());
            while f.coeffs[0].is_zero() {
                f.coeffs.remove(0);
            }
        }
        let n = f.coeffs.len() - 1;
        if n == 0 {
            return Ok(roots);
        }
        // y = D x turns f into a monic integer polynomial g.
        let d = f
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let g: Vec<BigInt> = f
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| (c * Q::from_integer(d.pow((n - i) as u32))).to_integer())
            .collect();
        // Fujiwara bound: |y| <= 2 max |g_{n-i}|^{1/i}.
        let mut bound_bits = 0u64;
        for i in 1..=n {
            let bits = g[n - i].bits();
            if bits > 0 {
                bound_bits = bound_bits.max(bits.div_ceil(i as u64));
            }
        }
        if bound_bits > 26 {
            return Err(Error::Unsupported(format!(
                "rational root search with bound 2^{bound_bits}"
            )));
        }
        let bound: i64 = 2 << bound_bits;
        let g0 = g[0].abs();
        let eval = |y: &BigInt| -> bool {
            let mut acc = BigInt::zero();
            for c in g.iter().rev() {
                acc = acc * y + c;
            }
            acc.is_zero()
        };
        for y in 1..=bound {
            let yb = BigInt::from(y);
            if !(&g0 % &yb).is_zero() {
                continue;
            }
            for cand in [-yb.clone(), yb] {
                if eval(&cand) {
                    roots.push(Q::new(cand, d.clone()));
                }
            }
        }
        roots.sort();
        Ok(roots)
    }

    /// True iff the polynomial is a product of rational linear factors.
    pub fn splits_over_q(&self) -> Result<bool> {
        let sf = self.squarefree_part()?;
        Ok(sf.rational_roots()?.len() == sf.degree().unwrap_or(0))
    }
}

/// Monic polynomial of least degree annihilating `m`, found as the first
/// linear dependence among `I, m, m^2, ...`.
pub fn min_poly(m: &MatrixQ) -> Result<Polynomial> {
    if !m.is_square() {
        return Err(Error::Shape(format!(
            "min_poly of {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    let n = m.rows();
    // Each reduced row remembers which combination of powers produced it.
    struct Reduced {
        vec: Vec<Q>,
        pivot: usize,
        combo: Vec<Q>,
    }
    let mut basis: Vec<Reduced> = Vec::new();
    let mut power = MatrixQ::identity(n);
    for k in 0..=n {
        let mut v = power.entries().to_vec();
        let mut combo = vec![Q::zero(); k + 1];
        combo[k] = Q::one();
        for b in &basis {
            if v[b.pivot].is_zero() {
                continue;
            }
            let f = &v[b.pivot] / &b.vec[b.pivot];
            for (x, y) in v.iter_mut().zip(&b.vec) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
            for (x, y) in combo.iter_mut().zip(&b.combo) {
                *x -= &f * y;
            }
        }
        match v.iter().position(|x| !x.is_zero()) {
            None => return Ok(Polynomial::new(combo).monic()),
            Some(pivot) => basis.push(Reduced {
                vec: v,
                pivot,
                combo,
            }),
        }
        power = power.mul(m);
    }
    unreachable!("Cayley-Hamilton bounds the degree by n")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn min_poly_examples() {
        assert_eq!(
            min_poly(&MatrixQ::identity(2)).unwrap(),
            Polynomial::from_i64(&[-1, 1])
        );
        let d = MatrixQ::diagonal(&[q(1), q(2)]);
        assert_eq!(
            min_poly(&d).unwrap(),
            Polynomial::from_i64(&[-1, 1]).mul(&Polynomial::from_i64(&[-2, 1]))
        );
        let j = MatrixQ::from_i64(&[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]]);
        assert_eq!(min_poly(&j).unwrap(), Polynomial::x_pow(3));
    }

    #[test]
    fn min_poly_matches_power_oracle() {
        // Oracle: the minimal polynomial annihilates m and no proper divisor does.
        let m = MatrixQ::from_i64(&[&[2, 1, 0, 0], &[0, 2, 0, 0], &[0, 0, 3, 0], &[0, 0, 0, 2]]);
        let p = min_poly(&m).unwrap();
        assert!(p.eval_matrix(&m).is_zero());
        assert_eq!(p.degree(), Some(3));
    }

    #[test]
    fn squarefree() {
        assert!(Polynomial::from_i64(&[-1, 0, 1]).is_squarefree().unwrap());
        assert!(!Polynomial::x_pow(2).is_squarefree().unwrap());
        let p = Polynomial::from_i64(&[-1, 1])
            .mul(&Polynomial::from_i64(&[-1, 1]))
            .mul(&Polynomial::from_i64(&[2, 1]));
        assert!(!p.is_squarefree().unwrap());
        assert_eq!(
            Polynomial::zero().is_squarefree(),
            Err(Error::ZeroPolynomial)
        );
    }

    #[test]
    fn roots() {
        let p = Polynomial::from_i64(&[-1, 1])
            .mul(&Polynomial::new(vec![crate::arith::qf(1, 2), q(1)]))
            .mul(&Polynomial::x_pow(1));
        assert_eq!(
            p.rational_roots().unwrap(),
            vec![crate::arith::qf(-1, 2), q(0), q(1)]
        );
        assert!(!Polynomial::from_i64(&[-2, 0, 1]).splits_over_q().unwrap());
        assert!(Polynomial::from_i64(&[-4, 0, 1]).splits_over_q().unwrap());
    }

    #[test]
    fn division() {
        let a = Polynomial::from_i64(&[1, 2, 3, 4]);
        let b = Polynomial::from_i64(&[1, 1]);
        let (qq, r) = a.div_rem(&b).unwrap();
        assert_eq!(qq.mul(&b).add(&r), a);
    }
}
