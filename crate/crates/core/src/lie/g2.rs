use num_traits::Zero;

use crate::arith::{q, MatrixQ, Vector, Q};
use crate::error::{Error, Result};

use super::algebra::{sparse, LieAlgebra};
use super::classical::sl;

/// `g2 = sl3 + V + V*` with `V = Q^3` (columns) and `V*` (rows).
struct Parts {
    a: MatrixQ,
    v: Vector,
    w: Vector,
}

fn cross(x: &[Q], y: &[Q]) -> Vector {
    vec![
        &x[1] * &y[2] - &x[2] * &y[1],
        &x[2] * &y[0] - &x[0] * &y[2],
        &x[0] * &y[1] - &x[1] * &y[0],
    ]
}

fn outer(col: &[Q], row: &[Q]) -> MatrixQ {
    let mut m = MatrixQ::zeros(3, 3);
    for i in 0..3 {
        for j in 0..3 {
            m[(i, j)] = &col[i] * &row[j];
        }
    }
    m
}

fn row_times(row: &[Q], m: &MatrixQ) -> Vector {
    m.transpose().mul_vec(row)
}

fn dot3(x: &[Q], y: &[Q]) -> Q {
    x.iter().zip(y).map(|(a, b)| a * b).sum()
}

/// Bracket on the decomposition:
/// `[A, v] = Av`, `[A, w] = -wA`, `[v, v'] = 2 v x v'`, `[w, w'] = 2 w x w'`,
/// `[v, w] = w(v) I - 3 v w`.
fn bracket(x: &Parts, y: &Parts) -> Parts {
    let id = MatrixQ::identity(3);
    let mut a = x.a.commutator(&y.a);
    a.add_scaled(&dot3(&y.w, &x.v), &id);
    a.add_scaled(&q(-3), &outer(&x.v, &y.w));
    a.add_scaled(&-dot3(&x.w, &y.v), &id);
    a.add_scaled(&q(3), &outer(&y.v, &x.w));
    let two = q(2);
    let v: Vector =
        y.a.mul_vec(&x.v)
            .iter()
            .zip(x.a.mul_vec(&y.v))
            .zip(cross(&x.w, &y.w))
            .map(|((bv, aw), c)| aw - bv + &two * c)
            .collect();
    let w: Vector = row_times(&y.w, &x.a)
        .iter()
        .zip(row_times(&x.w, &y.a))
        .zip(cross(&x.v, &y.v))
        .map(|((ea, xb), c)| xb - ea + &two * c)
        .collect();
    Parts { a, v, w }
}

/// The 14-dimensional split simple algebra of type G2, with basis
/// `h1 h2 e12 e13 e21 e23 e31 e32 v1 v2 v3 w1 w2 w3`, adjoint realization and
/// split Cartan `span{h1, h2}`.
pub fn build_g2() -> Result<LieAlgebra> {
    let sl3 = sl(3)?;
    let mut labels: Vec<String> = sl3.labels().to_vec();
    labels.extend(["v1", "v2", "v3", "w1", "w2", "w3"].map(String::from));
    let dim = 14;
    let zero3 = || vec![Q::zero(); 3];
    let parts: Vec<Parts> = (0..dim)
        .map(|i| {
            if i < 8 {
                Ok(Parts {
                    a: sl3.realize(&sl3.basis_element(i))?,
                    v: zero3(),
                    w: zero3(),
                })
            } else if i < 11 {
                Ok(Parts {
                    a: MatrixQ::zeros(3, 3),
                    v: crate::arith::unit_vec(3, i - 8),
                    w: zero3(),
                })
            } else {
                Ok(Parts {
                    a: MatrixQ::zeros(3, 3),
                    v: zero3(),
                    w: crate::arith::unit_vec(3, i - 11),
                })
            }
        })
        .collect::<Result<_>>()?;
    let mut table = vec![Vec::new(); dim * dim];
    for i in 0..dim {
        for j in 0..dim {
            let b = bracket(&parts[i], &parts[j]);
            let mut coords = sl3
                .coords_of_matrix(&b.a)?
                .ok_or_else(|| Error::falsified("g2 bracket", "matrix part is not traceless"))?;
            coords.extend(b.v);
            coords.extend(b.w);
            table[i * dim + j] = sparse(&coords);
        }
    }
    let g =
        LieAlgebra::from_structure_constants("g2", labels, table)?.with_adjoint_realization()?;
    let cartan = vec![g.basis_element(0), g.basis_element(1)];
    g.with_split_cartan(cartan)
}
