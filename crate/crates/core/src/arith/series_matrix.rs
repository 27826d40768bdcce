use itertools::Itertools;
use num_traits::Zero;

use super::matrix::MatrixQ;
use super::series::Series;
use crate::error::{Error, Result};

/// Dense matrix of truncated Laurent series, row-major.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MatrixL {
    rows: usize,
    cols: usize,
    data: Vec<Series>,
}

impl MatrixL {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        MatrixL {
            rows,
            cols,
            data: vec![Series::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Series::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Series) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        MatrixL { rows, cols, data }
    }

    /// Matrix whose columns are the given series vectors.
    pub fn from_cols(height: usize, cols: &[Vec<Series>]) -> Self {
        Self::from_fn(height, cols.len(), |i, j| cols[j][i].clone())
    }

    pub fn from_q(m: &MatrixQ) -> Self {
        Self::from_fn(m.rows(), m.cols(), |i, j| {
            Series::constant(m[(i, j)].clone())
        })
    }

    /// `sum_e t^e m_e` from `(exponent, coefficient matrix)` pairs.
    pub fn from_coefficients(rows: usize, cols: usize, parts: &[(i64, MatrixQ)]) -> Self {
        Self::from_fn(rows, cols, |i, j| {
            Series::from_terms(
                &parts
                    .iter()
                    .map(|(e, m)| (*e, m[(i, j)].clone()))
                    .collect::<Vec<_>>(),
            )
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Series {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, s: Series) {
        self.data[i * self.cols + j] = s;
    }

    pub fn col(&self, j: usize) -> Vec<Series> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_exact(&self) -> bool {
        self.data.iter().all(Series::is_exact)
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        if self.cols != o.rows {
            return Err(Error::Shape(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        Ok(Self::from_fn(self.rows, o.cols, |i, j| {
            let mut acc = Series::zero();
            for k in 0..self.cols {
                let (a, b) = (self.get(i, k), o.get(k, j));
                if !a.is_exact_zero() && !b.is_exact_zero() {
                    acc = acc.add(&a.mul(b));
                }
            }
            acc
        }))
    }

    pub fn mul_vec(&self, v: &[Series]) -> Vec<Series> {
        (0..self.rows)
            .map(|i| {
                let mut acc = Series::zero();
                for (k, x) in v.iter().enumerate() {
                    let a = self.get(i, k);
                    if !a.is_exact_zero() && !x.is_exact_zero() {
                        acc = acc.add(&a.mul(x));
                    }
                }
                acc
            })
            .collect()
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), |i, j| {
            self.get(rows[i], cols[j]).clone()
        })
    }

    /// Least valuation among the nonzero entries; `None` if all are exactly zero.
    pub fn min_valuation(&self) -> Result<Option<i64>> {
        let mut best: Option<i64> = None;
        for s in &self.data {
            if s.is_exact_zero() {
                continue;
            }
            let v = s.valuation_bound().expect("nonzero");
            best = Some(best.map_or(v, |b| b.min(v)));
        }
        // A tracked zero at or below the minimum hides the true value.
        if let Some(b) = best {
            if self
                .data
                .iter()
                .any(|s| s.is_zero() && !s.is_exact() && s.end() <= b)
            {
                return Err(Error::InsufficientBudget { budget: 0 });
            }
        }
        Ok(best)
    }

    /// Coefficient matrix of `t^e`.
    pub fn coefficient(&self, e: i64) -> Result<MatrixQ> {
        let mut out = MatrixQ::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let c = self.get(i, j).coeff(e)?;
                if !c.is_zero() {
                    out[(i, j)] = c;
                }
            }
        }
        Ok(out)
    }

    /// Determinant by the Leibniz expansion.
    pub fn determinant(&self) -> Result<Series> {
        if self.rows != self.cols {
            return Err(Error::Shape(format!(
                "determinant of {}x{}",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        let mut acc = Series::zero();
        for perm in (0..n).permutations(n) {
            let mut term = Series::one();
            for (i, &p) in perm.iter().enumerate() {
                term = term.mul(self.get(i, p));
                if term.is_exact_zero() {
                    break;
                }
            }
            if term.is_exact_zero() {
                continue;
            }
            let inversions = (0..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .filter(|&(i, j)| perm[i] > perm[j])
                .count();
            acc = if inversions % 2 == 0 {
                acc.add(&term)
            } else {
                acc.sub(&term)
            };
        }
        Ok(acc)
    }

    /// All maximal minors of a tall matrix, keyed by increasing row sets.
    pub fn maximal_minors(&self) -> Result<Vec<(Vec<usize>, Series)>> {
        let cols: Vec<usize> = (0..self.cols).collect();
        (0..self.rows)
            .combinations(self.cols)
            .map(|rows| {
                let d = self.submatrix(&rows, &cols).determinant()?;
                Ok((rows, d))
            })
            .collect()
    }

    /// Least valuation of the maximal minors, i.e. the valuation of the
    /// exterior product of the columns.
    pub fn wedge_valuation(&self) -> Result<i64> {
        let minors = self.maximal_minors()?;
        let mut best: Option<i64> = None;
        for (_, d) in &minors {
            if let Some(v) = d.valuation_bound() {
                if !d.is_zero() {
                    best = Some(best.map_or(v, |b| b.min(v)));
                }
            }
        }
        let best = best.ok_or(Error::RankDeficient)?;
        if minors
            .iter()
            .any(|(_, d)| d.is_zero() && !d.is_exact() && d.end() <= best)
        {
            return Err(Error::InsufficientBudget { budget: 0 });
        }
        Ok(best)
    }
}

/// Result of [`valuation_adapted_reduce`].
#[derive(Clone, Debug)]
pub struct ColumnReduction {
    /// Column transformation `T`, invertible over the power series ring.
    pub transform: MatrixL,
    /// `m * T`; column `k` vanishes on the pivot rows of columns before it.
    pub reduced: MatrixL,
    /// Pivot row of each reduced column.
    pub pivot_rows: Vec<usize>,
    /// Pivot valuations in column order, which is nondecreasing.
    pub pivot_valuations: Vec<i64>,
}

impl ColumnReduction {
    pub fn sorted_valuations(&self) -> Vec<i64> {
        let mut v = self.pivot_valuations.clone();
        v.sort();
        v
    }

    pub fn valuation_sum(&self) -> i64 {
        self.pivot_valuations.iter().sum()
    }
}

/// Column-operation variant of Smith reduction.
///
/// At each step the entry of least valuation among unused rows and remaining
/// columns becomes the pivot (ties: lowest valuation, then lowest row, then
/// lowest column); its row is cleared from the remaining columns with
/// multipliers of nonnegative valuation.
pub fn valuation_adapted_reduce(m: &MatrixL, budget: usize) -> Result<ColumnReduction> {
    let (n, r) = (m.rows(), m.cols());
    if r > n {
        return Err(Error::RankDeficient);
    }
    let mut a = m.clone();
    let mut t = MatrixL::identity(r);
    let mut used = vec![false; n];
    let mut pivot_rows = Vec::with_capacity(r);
    let mut pivot_valuations = Vec::with_capacity(r);
    for k in 0..r {
        let mut best: Option<(i64, usize, usize)> = None;
        let mut hidden: Option<i64> = None;
        for i in (0..n).filter(|&i| !used[i]) {
            for j in k..r {
                let s = a.get(i, j);
                if s.is_exact_zero() {
                    continue;
                }
                if s.is_zero() {
                    let e = s.end();
                    hidden = Some(hidden.map_or(e, |h| h.min(e)));
                    continue;
                }
                let key = (s.valuation()?, i, j);
                if best.as_ref().is_none_or(|b| key < *b) {
                    best = Some(key);
                }
            }
        }
        let (v, pi, pj) = match (best, hidden) {
            (None, None) => return Err(Error::RankDeficient),
            (None, Some(_)) => return Err(Error::InsufficientBudget { budget }),
            (Some(b), Some(h)) if h <= b.0 => return Err(Error::InsufficientBudget { budget }),
            (Some(b), _) => b,
        };
        if pj != k {
            for i in 0..n {
                let (x, y) = (a.get(i, k).clone(), a.get(i, pj).clone());
                a.set(i, k, y);
                a.set(i, pj, x);
            }
            for i in 0..r {
                let (x, y) = (t.get(i, k).clone(), t.get(i, pj).clone());
                t.set(i, k, y);
                t.set(i, pj, x);
            }
        }
        let pivot_inv = a.get(pi, k).inverse(budget)?;
        for j in k + 1..r {
            let f = a.get(pi, j).mul(&pivot_inv);
            if f.is_exact_zero() {
                continue;
            }
            for i in 0..n {
                let upd = a.get(i, j).sub(&f.mul(a.get(i, k)));
                a.set(i, j, upd);
            }
            // Exact cancellation on the pivot row.
            a.set(pi, j, Series::zero());
            for i in 0..r {
                let upd = t.get(i, j).sub(&f.mul(t.get(i, k)));
                t.set(i, j, upd);
            }
        }
        used[pi] = true;
        pivot_rows.push(pi);
        pivot_valuations.push(v);
    }
    Ok(ColumnReduction {
        transform: t,
        reduced: a,
        pivot_rows,
        pivot_valuations,
    })
}

/// Runs `f` with the default budget, doubling on budget errors up to the
/// maximum.
pub fn with_budget_escalation<T>(start: usize, mut f: impl FnMut(usize) -> Result<T>) -> Result<T> {
    let mut budget = start.max(1);
    loop {
        match f(budget) {
            Err(e) if e.is_budget() && budget < super::MAX_BUDGET => {
                budget = (budget * 2).min(super::MAX_BUDGET)
            }
            Err(e) if e.is_budget() => return Err(Error::InsufficientBudget { budget }),
            other => return other,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::q;
    use proptest::prelude::*;

    fn t(e: i64) -> Series {
        Series::monomial(q(1), e)
    }

    #[test]
    fn diagonal_examples() {
        let m = MatrixL::from_fn(
            2,
            2,
            |i, j| if i == j { t(i as i64) } else { Series::zero() },
        );
        assert_eq!(
            valuation_adapted_reduce(&m, 16)
                .unwrap()
                .sorted_valuations(),
            vec![0, 1]
        );
        let m = MatrixL::from_fn(2, 2, |i, j| {
            if i == j {
                t(1 - i as i64)
            } else {
                Series::zero()
            }
        });
        let red = valuation_adapted_reduce(&m, 16).unwrap();
        assert_eq!(red.sorted_valuations(), vec![0, 1]);
        assert_eq!(red.pivot_rows, vec![1, 0]);
    }

    #[test]
    fn three_by_two_example() {
        // Columns (1, t, 0) and (0, t, t^2).
        let c1 = vec![t(0), t(1), Series::zero()];
        let c2 = vec![Series::zero(), t(1), t(2)];
        let m = MatrixL::from_cols(3, &[c1, c2]);
        let red = valuation_adapted_reduce(&m, 16).unwrap();
        assert_eq!(red.sorted_valuations(), vec![0, 1]);
        // Oracle: 1x1 minors have least valuation 0, 2x2 minors least valuation 1.
        assert_eq!(m.min_valuation().unwrap(), Some(0));
        assert_eq!(m.wedge_valuation().unwrap(), 1);
    }

    #[test]
    fn rank_deficient() {
        let c = vec![t(0), t(1)];
        let m = MatrixL::from_cols(2, &[c.clone(), c]);
        assert_eq!(
            valuation_adapted_reduce(&m, 16).unwrap_err(),
            Error::RankDeficient
        );
    }

    #[test]
    fn transform_reproduces_reduced() {
        let c1 = vec![t(1), t(0).add(&t(2)), t(3)];
        let c2 = vec![t(0), t(-1), t(1)];
        let m = MatrixL::from_cols(3, &[c1, c2]);
        let red = valuation_adapted_reduce(&m, 16).unwrap();
        let prod = m.mul(&red.transform).unwrap();
        for i in 0..3 {
            for j in 0..2 {
                let d = prod.get(i, j).sub(red.reduced.get(i, j));
                assert!(d.is_zero(), "entry ({i},{j}) differs: {d}");
            }
        }
    }

    fn laurent_poly() -> impl Strategy<Value = Series> {
        (-2i64..3, proptest::collection::vec(-3i64..4, 1..4))
            .prop_map(|(v, cs)| Series::new(v, cs.into_iter().map(q).collect(), None))
    }

    proptest! {
        #[test]
        fn pivot_sum_matches_minor_oracle(entries in proptest::collection::vec(laurent_poly(), 8)) {
            let m = MatrixL::from_fn(4, 2, |i, j| entries[i * 2 + j].clone());
            match valuation_adapted_reduce(&m, 32) {
                Ok(red) => prop_assert_eq!(red.valuation_sum(), m.wedge_valuation().unwrap()),
                Err(Error::RankDeficient) => prop_assert!(m.wedge_valuation().is_err()),
                Err(e) => prop_assert!(false, "unexpected error {e}"),
            }
        }
    }
}
