//! Linear systems whose coefficients are truncated power series.
//!
//! Pivots are chosen from the constant part of the matrix, with pivot
//! columns taken left to right in chart order. When the rank at the origin
//! equals the generic rank, the pivot block is invertible as a power series
//! and the remaining rows are consequences of the pivot rows, so kernels and
//! particular solutions can be written down exactly through the truncation
//! degree. Every result is checked against all rows before it is returned.

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{derivative, GeometryError, PolyField, PolyForm1};
use crate::linalg::{self, Matrix};
use crate::poly::{rat, Rational, TruncatedPoly};

type PolyMatrix = Vec<Vec<TruncatedPoly>>;

struct Pivoted {
    rows: Vec<usize>,
    cols: Vec<usize>,
    /// Series inverse of the pivot block.
    inverse: PolyMatrix,
}

fn constant_part(m: &PolyMatrix) -> Matrix {
    m.iter().map(|row| row.iter().map(TruncatedPoly::constant_term).collect()).collect()
}

fn transpose(m: &Matrix) -> Matrix {
    let cols = m.first().map_or(0, Vec::len);
    (0..cols).map(|j| m.iter().map(|r| r[j].clone()).collect()).collect()
}

fn generic_rank(m: &PolyMatrix) -> usize {
    let n = m[0][0].chart().len();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    (0..3)
        .map(|_| {
            let point: Vec<Rational> =
                (0..n).map(|_| rat(rng.gen_range(-5..=5), rng.gen_range(3..=11))).collect();
            let vals: Matrix = m.iter().map(|r| r.iter().map(|p| p.eval(&point)).collect()).collect();
            linalg::rank(&vals)
        })
        .max()
        .unwrap_or(0)
}

fn rational_inverse(a: &Matrix) -> Matrix {
    let r = a.len();
    let mut aug: Matrix = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut v = row.clone();
            v.extend((0..r).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            v
        })
        .collect();
    let order: Vec<usize> = (0..r).collect();
    linalg::rref_with_order(&mut aug, &order);
    aug.into_iter().map(|row| row[r..].to_vec()).collect()
}

fn mat_mul(a: &PolyMatrix, b: &PolyMatrix) -> PolyMatrix {
    let chart = a[0][0].chart().clone();
    let d = a[0][0].degree().min(b[0][0].degree());
    let cols = b[0].len();
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    let mut s = TruncatedPoly::zero(&chart, d);
                    for (k, x) in row.iter().enumerate() {
                        if !x.is_zero() && !b[k][j].is_zero() {
                            s = &s + &(x * &b[k][j]);
                        }
                    }
                    s
                })
                .collect()
        })
        .collect()
}

fn pivot(m: &PolyMatrix) -> Result<Pivoted, GeometryError> {
    let chart = m[0][0].chart().clone();
    let d = m[0][0].degree();
    let m0 = constant_part(m);
    let mut a = m0.clone();
    let cols = linalg::rref(&mut a);
    let mut at = transpose(&m0);
    let rows = linalg::rref(&mut at);
    let generic = generic_rank(m);
    if generic > cols.len() {
        return Err(GeometryError::DegenerateOrigin { origin: cols.len(), generic });
    }
    let r = cols.len();
    let block0: Matrix = rows.iter().map(|&i| cols.iter().map(|&j| m0[i][j].clone()).collect()).collect();
    let inv0 = rational_inverse(&block0);
    let lift = |x: &Matrix| -> PolyMatrix {
        x.iter().map(|row| row.iter().map(|c| TruncatedPoly::constant(&chart, d, c.clone())).collect()).collect()
    };
    let inv0p = lift(&inv0);
    // B = A0⁻¹ (A − A0), A⁻¹ = Σ_j (−B)^j A0⁻¹
    let rest: PolyMatrix = rows
        .iter()
        .map(|&i| cols.iter().map(|&j| &m[i][j] - &TruncatedPoly::constant(&chart, d, m0[i][j].clone())).collect())
        .collect();
    let b = if r == 0 { Vec::new() } else { mat_mul(&inv0p, &rest) };
    let mut term = inv0p.clone();
    let mut inverse = inv0p;
    for _ in 0..d {
        if r == 0 {
            break;
        }
        term = mat_mul(&b, &term);
        term = term.iter().map(|row| row.iter().map(|p| -p).collect()).collect();
        if term.iter().flatten().all(TruncatedPoly::is_zero) {
            break;
        }
        inverse = inverse.iter().zip(&term).map(|(x, y)| x.iter().zip(y).map(|(p, q)| p + q).collect()).collect();
    }
    Ok(Pivoted { rows, cols, inverse })
}

fn common_degree(m: &PolyMatrix) -> PolyMatrix {
    let d = m.iter().flatten().map(TruncatedPoly::degree).min().unwrap_or(0);
    m.iter().map(|r| r.iter().map(|p| p.truncate(d)).collect()).collect()
}

fn apply(m: &PolyMatrix, x: &[TruncatedPoly]) -> Vec<TruncatedPoly> {
    let chart = m[0][0].chart().clone();
    let d = m[0][0].degree().min(x[0].degree());
    m.iter()
        .map(|row| {
            let mut s = TruncatedPoly::zero(&chart, d);
            for (a, b) in row.iter().zip(x) {
                if !a.is_zero() && !b.is_zero() {
                    s = &s + &(a * b);
                }
            }
            s
        })
        .collect()
}

/// Basis of `{X : M X = 0}` over truncated power series, one generator per
/// non-pivot column with that coordinate set to 1. Returns the generators
/// and the free column indices.
pub fn series_kernel(m: &PolyMatrix) -> Result<(Vec<Vec<TruncatedPoly>>, Vec<usize>), GeometryError> {
    let m = common_degree(m);
    let chart = m[0][0].chart().clone();
    let d = m[0][0].degree();
    let n = chart.len();
    let p = pivot(&m)?;
    let mut gens = Vec::new();
    let mut free = Vec::new();
    for f in (0..n).filter(|c| !p.cols.contains(c)) {
        let mut x = vec![TruncatedPoly::zero(&chart, d); n];
        x[f] = TruncatedPoly::one(&chart, d);
        let rhs: Vec<TruncatedPoly> = p.rows.iter().map(|&i| -&m[i][f]).collect();
        for (k, &c) in p.cols.iter().enumerate() {
            let mut s = TruncatedPoly::zero(&chart, d);
            for (inv, r) in p.inverse[k].iter().zip(&rhs) {
                if !inv.is_zero() && !r.is_zero() {
                    s = &s + &(inv * r);
                }
            }
            x[c] = s;
        }
        if let Some(row) = apply(&m, &x).iter().position(|r| !r.is_zero()) {
            return Err(GeometryError::Unverified(row));
        }
        gens.push(x);
        free.push(f);
    }
    Ok((gens, free))
}

/// A solution of `M X = b` with the non-pivot coordinates set to zero.
pub fn series_solve(m: &PolyMatrix, b: &[TruncatedPoly]) -> Result<Vec<TruncatedPoly>, GeometryError> {
    let mut all = m.to_vec();
    for (row, bi) in all.iter_mut().zip(b) {
        row.push(bi.clone());
    }
    let all = common_degree(&all);
    let n = m[0].len();
    let m: PolyMatrix = all.iter().map(|r| r[..n].to_vec()).collect();
    let b: Vec<TruncatedPoly> = all.iter().map(|r| r[n].clone()).collect();
    let chart = m[0][0].chart().clone();
    let d = m[0][0].degree();
    let p = pivot(&m)?;
    let mut x = vec![TruncatedPoly::zero(&chart, d); n];
    for (k, &c) in p.cols.iter().enumerate() {
        let mut s = TruncatedPoly::zero(&chart, d);
        for (inv, &i) in p.inverse[k].iter().zip(&p.rows) {
            if !inv.is_zero() && !b[i].is_zero() {
                s = &s + &(inv * &b[i]);
            }
        }
        x[c] = s;
    }
    let residual: Vec<TruncatedPoly> = apply(&m, &x).iter().zip(&b).map(|(l, r)| l - r).collect();
    if let Some(r) = residual.iter().find(|r| !r.is_zero()) {
        return Err(GeometryError::NotLiftable(r.to_text()));
    }
    Ok(x)
}

/// Generators of a characteristic module and its rank.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelBasis {
    pub generators: Vec<PolyField>,
    /// Coordinate whose basis vector each generator extends.
    pub free: Vec<String>,
    pub rank: usize,
}

impl KernelBasis {
    /// Dimension of the quotient of the chart, phase excluded, by the module.
    pub fn quotient_dimension(&self, chart_len: usize, has_phase: bool) -> usize {
        chart_len - usize::from(has_phase) - self.rank
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("rank {}\n", self.rank);
        for (name, g) in self.free.iter().zip(&self.generators) {
            s.push_str(&format!("[{name}]\n{}", g.to_text()));
        }
        s
    }
}

/// Rows of `i_X θ = …` (when `with_theta`) followed by `i_X dθ = …`.
fn system(theta: &PolyForm1, with_theta: bool) -> PolyMatrix {
    let w = theta.exterior_derivative();
    let n = theta.coefficients.len();
    let mut rows = Vec::new();
    if with_theta {
        rows.push(theta.coefficients.clone());
    }
    for j in 0..n {
        rows.push((0..n).map(|i| w.coefficients[i][j].clone()).collect());
    }
    rows
}

/// `Ker θ ∩ Ker dθ` on charts with a phase coordinate, `Ker dθ` otherwise.
pub fn characteristic_module(theta: &PolyForm1) -> Result<KernelBasis, GeometryError> {
    let chart = theta.chart().clone();
    let with_theta = chart.phase_index().is_ok();
    let (gens, free) = series_kernel(&system(theta, with_theta))?;
    Ok(KernelBasis {
        rank: gens.len(),
        free: free.iter().map(|&i| chart.name(i).to_string()).collect(),
        generators: gens.into_iter().map(PolyField::new).collect(),
    })
}

/// Solution of `i_X dθ = −df`, `i_X θ = f`, unique up to the
/// characteristic module (the non-pivot components are set to zero).
pub fn hamiltonian_lift(f: &TruncatedPoly, theta: &PolyForm1) -> Result<PolyField, GeometryError> {
    let m = system(theta, true);
    let mut b = vec![f.clone()];
    b.extend((0..f.chart().len()).map(|i| -&derivative(f, i)));
    Ok(PolyField::new(series_solve(&m, &b)?))
}

/// `{f, g} = −dθ(X̃_f, X̃_g) = X̃_g(f)`.
pub fn poisson_bracket(f: &TruncatedPoly, g: &TruncatedPoly, theta: &PolyForm1) -> Result<TruncatedPoly, GeometryError> {
    Ok(hamiltonian_lift(g, theta)?.apply(f))
}
