use serde::Serialize;

use crate::arith::{is_zero_vec, min_poly, sub_vec, MatrixQ, Q};
use crate::error::{Error, Result};

use super::algebra::{Element, LieAlgebra};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ElementClass {
    Zero,
    Semisimple,
    Nilpotent,
    Mixed,
}

/// Semisimple and nilpotent parts of a square matrix.
///
/// With `p` the squarefree part of the minimal polynomial, iterating
/// `S <- S - p(S) p'(S)^{-1}` from `S = m` converges to the semisimple part in
/// finitely many steps. No eigenvalues are needed, so irrational spectra
/// are fine.
pub fn jordan_chevalley_matrix(m: &MatrixQ) -> Result<(MatrixQ, MatrixQ)> {
    let mp = min_poly(m)?;
    let p = mp.squarefree_part()?;
    let dp = p.derivative();
    let mut s = m.clone();
    let n = m.rows();
    for _ in 0..=n {
        let ps = p.eval_matrix(&s);
        if ps.is_zero() {
            let nil = m.sub(&s);
            return Ok((s, nil));
        }
        let inv = dp.eval_matrix(&s).inverse()?;
        s = s.sub(&ps.mul(&inv));
    }
    Err(Error::falsified(
        "Jordan decomposition",
        "Newton iteration did not converge",
    ))
}

/// `x = s + n` with `s` semisimple, `n` nilpotent, `[s, n] = 0`, computed in
/// the realization and pulled back.
pub fn jordan_chevalley(g: &LieAlgebra, x: &[Q]) -> Result<(Element, Element)> {
    if is_zero_vec(x) {
        return Ok((g.zero(), g.zero()));
    }
    let (s, _) = jordan_chevalley_matrix(&g.realize(x)?)?;
    let s = g.coords_of_matrix(&s)?.ok_or_else(|| {
        Error::falsified("Jordan decomposition", "semisimple part left the algebra")
    })?;
    let n = sub_vec(x, &s);
    Ok((s, n))
}

/// Semisimple part only.
pub fn semisimple_part(g: &LieAlgebra, x: &[Q]) -> Result<Element> {
    Ok(jordan_chevalley(g, x)?.0)
}

/// Classification by the minimal polynomial of the realization.
pub fn classify_element(g: &LieAlgebra, x: &[Q]) -> Result<ElementClass> {
    if is_zero_vec(x) {
        return Ok(ElementClass::Zero);
    }
    let mp = min_poly(&g.realize(x)?)?;
    Ok(if mp.is_monomial() {
        ElementClass::Nilpotent
    } else if mp.is_squarefree()? {
        ElementClass::Semisimple
    } else {
        ElementClass::Mixed
    })
}

pub fn is_nilpotent(g: &LieAlgebra, x: &[Q]) -> Result<bool> {
    Ok(matches!(
        classify_element(g, x)?,
        ElementClass::Zero | ElementClass::Nilpotent
    ))
}

pub fn is_semisimple(g: &LieAlgebra, x: &[Q]) -> Result<bool> {
    Ok(matches!(
        classify_element(g, x)?,
        ElementClass::Zero | ElementClass::Semisimple
    ))
}

/// `exp(m)` for a nilpotent matrix, as a finite sum.
pub fn exp_nilpotent(m: &MatrixQ) -> Result<MatrixQ> {
    let n = m.rows();
    let mut term = MatrixQ::identity(n);
    let mut acc = MatrixQ::identity(n);
    for k in 1..=n {
        term = term.mul(m).scale(&crate::arith::qf(1, k as i64));
        if term.is_zero() {
            return Ok(acc);
        }
        acc = acc.add(&term);
    }
    Err(Error::NotNilpotent(format!("{n}x{n} matrix")))
}

/// `exp(ad y)` for `ad`-nilpotent `y`, acting on coordinate columns.
pub fn exp_ad(g: &LieAlgebra, y: &[Q]) -> Result<MatrixQ> {
    exp_nilpotent(&g.ad(y)).map_err(|_| Error::NotNilpotent(g.format_element(y)))
}
