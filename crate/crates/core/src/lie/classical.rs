use crate::arith::{q, MatrixQ, Q};
use crate::error::{Error, Result};

use super::algebra::{Element, LieAlgebra};

/// Classical families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ClassicalKind {
    Sl,
    So,
    Sp,
}

pub fn build_classical(kind: ClassicalKind, n: usize) -> Result<LieAlgebra> {
    match kind {
        ClassicalKind::Sl => sl(n),
        ClassicalKind::So => so(n),
        ClassicalKind::Sp => sp(n),
    }
}

fn index_label(prefix: &str, n: usize, i: usize, j: usize) -> String {
    if n < 10 {
        format!("{prefix}{}{}", i + 1, j + 1)
    } else {
        format!("{prefix}{}_{}", i + 1, j + 1)
    }
}

/// `sl_n` with basis `h_i = E_ii - E_{i+1,i+1}` followed by the `E_ij`,
/// `i != j`; the diagonal part is recorded as split Cartan.
pub fn sl(n: usize) -> Result<LieAlgebra> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("sl_{n} needs n >= 2")));
    }
    let mut labels = Vec::new();
    let mut mats = Vec::new();
    for i in 0..n - 1 {
        let mut d = vec![q(0); n];
        d[i] = q(1);
        d[i + 1] = q(-1);
        labels.push(format!("h{}", i + 1));
        mats.push(MatrixQ::diagonal(&d));
    }
    for i in 0..n {
        for j in 0..n {
            if i != j {
                labels.push(index_label("e", n, i, j));
                mats.push(MatrixQ::unit(n, i, j));
            }
        }
    }
    let g = LieAlgebra::from_matrices(format!("sl{n}"), labels, mats)?;
    let cartan = (0..n - 1).map(|i| g.basis_element(i)).collect();
    g.with_split_cartan(cartan)
}

/// `so_n` as antisymmetric matrices, basis `E_ij - E_ji` for `i < j`.
pub fn so(n: usize) -> Result<LieAlgebra> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!("so_{n} needs n >= 3")));
    }
    let mut labels = Vec::new();
    let mut mats = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            labels.push(index_label("f", n, i, j));
            mats.push(MatrixQ::unit(n, i, j).sub(&MatrixQ::unit(n, j, i)));
        }
    }
    LieAlgebra::from_matrices(format!("so{n}"), labels, mats)
}

/// `sp_n` (`n = 2m`) preserving `J = [[0, I], [-I, 0]]`: matrices
/// `[[A, B], [C, -A^T]]` with `B`, `C` symmetric.
pub fn sp(n: usize) -> Result<LieAlgebra> {
    if n < 2 || !n.is_multiple_of(2) {
        return Err(Error::InvalidArgument(format!("sp_{n} needs even n >= 2")));
    }
    let m = n / 2;
    let mut labels = Vec::new();
    let mut mats = Vec::new();
    for i in 0..m {
        labels.push(format!("a{}{}", i + 1, i + 1));
        mats.push(MatrixQ::unit(n, i, i).sub(&MatrixQ::unit(n, m + i, m + i)));
    }
    for i in 0..m {
        for j in 0..m {
            if i != j {
                labels.push(index_label("a", m, i, j));
                mats.push(MatrixQ::unit(n, i, j).sub(&MatrixQ::unit(n, m + j, m + i)));
            }
        }
    }
    for (prefix, off_r, off_c) in [("b", 0, m), ("c", m, 0)] {
        for i in 0..m {
            for j in i..m {
                labels.push(index_label(prefix, m, i, j));
                let mut x = MatrixQ::unit(n, off_r + i, off_c + j);
                if i != j {
                    x = x.add(&MatrixQ::unit(n, off_r + j, off_c + i));
                }
                mats.push(x);
            }
        }
    }
    let g = LieAlgebra::from_matrices(format!("sp{n}"), labels, mats)?;
    let cartan = (0..m).map(|i| g.basis_element(i)).collect();
    g.with_split_cartan(cartan)
}

/// Direct sum `g1 x g2` with labels suffixed `@1`, `@2`.
pub fn build_product(g1: &LieAlgebra, g2: &LieAlgebra) -> Result<LieAlgebra> {
    let (d1, d2) = (g1.dim(), g2.dim());
    let d = d1 + d2;
    let labels: Vec<String> = g1
        .labels()
        .iter()
        .map(|l| format!("{l}@1"))
        .chain(g2.labels().iter().map(|l| format!("{l}@2")))
        .collect();
    let mut table = vec![Vec::new(); d * d];
    for i in 0..d1 {
        for j in 0..d1 {
            table[i * d + j] = g1.bracket_basis(i, j).to_vec();
        }
    }
    for i in 0..d2 {
        for j in 0..d2 {
            table[(d1 + i) * d + d1 + j] = g2
                .bracket_basis(i, j)
                .iter()
                .map(|(k, c)| (d1 + k, c.clone()))
                .collect();
        }
    }
    let name = format!("{}x{}", g1.name(), g2.name());
    let mut g = LieAlgebra::from_structure_constants(name.clone(), labels.clone(), table)?;
    if g1.has_realization() && g2.has_realization() {
        let mats: Vec<MatrixQ> = (0..d)
            .map(|i| {
                let (x1, x2) = split(&g.basis_element(i), d1);
                Ok(g1.realize(&x1)?.direct_sum(&g2.realize(&x2)?))
            })
            .collect::<Result<_>>()?;
        let rebuilt = LieAlgebra::from_matrices(name, labels, mats)?;
        // Identical structure constants are guaranteed since the realization
        // is block diagonal; from_matrices rechecks them.
        for i in 0..d {
            for j in 0..d {
                if rebuilt.bracket_basis(i, j) != g.bracket_basis(i, j) {
                    return Err(Error::falsified(
                        "product realization",
                        "block realization disagrees with structure constants",
                    ));
                }
            }
        }
        g = rebuilt;
    }
    if let (Some(c1), Some(c2)) = (g1.split_cartan(), g2.split_cartan()) {
        let mut cartan: Vec<Element> = c1.iter().map(|x| embed(x, 0, d)).collect();
        cartan.extend(c2.iter().map(|x| embed(x, d1, d)));
        g = g.with_split_cartan(cartan)?;
    }
    Ok(g)
}

/// Splits a product element into its two factors.
pub fn split(x: &[Q], d1: usize) -> (Element, Element) {
    (x[..d1].to_vec(), x[d1..].to_vec())
}

/// Places `x` at `offset` inside a zero vector of length `total`.
pub fn embed(x: &[Q], offset: usize, total: usize) -> Element {
    let mut v = crate::arith::zero_vec(total);
    v[offset..offset + x.len()].clone_from_slice(x);
    v
}

/// `(x, y)` in a product.
pub fn pair_element(x: &[Q], y: &[Q]) -> Element {
    x.iter().chain(y).cloned().collect()
}
