//! Exact arithmetic kernel: rationals, polynomials, matrices and truncated
//! Laurent series.

mod matrix;
mod poly;
mod rational;
mod series;
mod series_matrix;
mod subspace;

pub use matrix::MatrixQ;
pub use poly::{min_poly, Polynomial};
pub use rational::{format_q, parse_q, q, qf, rational_arith, ArithOp, Q};
pub use series::{Series, DEFAULT_BUDGET, MAX_BUDGET};
pub use series_matrix::{
    valuation_adapted_reduce, with_budget_escalation, ColumnReduction, MatrixL,
};
pub use subspace::Subspace;

/// Coordinate vector over the rationals.
pub type Vector = Vec<Q>;

pub fn zero_vec(n: usize) -> Vector {
    vec![Q::from_integer(0.into()); n]
}

pub fn unit_vec(n: usize, i: usize) -> Vector {
    let mut v = zero_vec(n);
    v[i] = q(1);
    v
}

pub fn is_zero_vec(v: &[Q]) -> bool {
    use num_traits::Zero;
    v.iter().all(|x| x.is_zero())
}

pub fn add_vec(a: &[Q], b: &[Q]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub_vec(a: &[Q], b: &[Q]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale_vec(c: &Q, a: &[Q]) -> Vector {
    a.iter().map(|x| c * x).collect()
}

/// `acc += c * v`
pub fn axpy(acc: &mut [Q], c: &Q, v: &[Q]) {
    use num_traits::Zero;
    if c.is_zero() {
        return;
    }
    for (a, x) in acc.iter_mut().zip(v) {
        if !x.is_zero() {
            *a += c * x;
        }
    }
}

pub fn dot(a: &[Q], b: &[Q]) -> Q {
    let mut s = q(0);
    for (x, y) in a.iter().zip(b) {
        s += x * y;
    }
    s
}

/// Scales `v` so that its first nonzero entry is 1.
pub fn normalize_first(v: &[Q]) -> Vector {
    use num_traits::Zero;
    match v.iter().find(|x| !x.is_zero()) {
        Some(lead) => {
            let inv = q(1) / lead;
            v.iter().map(|x| x * &inv).collect()
        }
        None => v.to_vec(),
    }
}

/// True when `a` and `b` are nonzero multiples of each other.
pub fn proportional(a: &[Q], b: &[Q]) -> bool {
    a.len() == b.len()
        && !is_zero_vec(a)
        && !is_zero_vec(b)
        && normalize_first(a) == normalize_first(b)
}
