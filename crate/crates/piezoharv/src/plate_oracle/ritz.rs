//! Axisymmetric Rayleigh-Ritz modal solver for the clamped circular plate.
//!
//! Trial functions are the clamped polynomial basis
//!
//! ```text
//! psi_i(x) = (1 - x^2)^2 * x^(2(i-1)),   i = 1..N
//! ```
//!
//! which satisfy psi(1) = psi'(1) = 0 identically. Stiffness and mass
//! matrices are assembled by exact monomial integration of
//!
//! ```text
//! K_ij = int_0^1 [ x psi_i'' psi_j'' + nu (psi_i' psi_j'' + psi_i'' psi_j')
//!                  + psi_i' psi_j' / x ] dx
//! M_ij = int_0^1 psi_i psi_j x dx
//! ```
//!
//! The generalized eigenproblem `K c = lambda^4 M c` is reduced to standard
//! symmetric form through the Cholesky factor of M. Eigenvalues are the
//! dimensionless `lambda^4 = omega^2 mu r^4 / D`; frequencies follow from
//! `f = (lambda^2 / 2 pi r^2) sqrt(D / mu)`. Ritz eigenvalues converge to the
//! Bessel-root references monotonically from above as the basis grows.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

/// Ascending-coefficient dense polynomial.
type Poly = Vec<f64>;

fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = vec![0.0; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0.0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            out[i + j] += ai * bj;
        }
    }
    out
}

fn poly_deriv(a: &Poly) -> Poly {
    if a.len() <= 1 {
        return vec![0.0];
    }
    a.iter()
        .enumerate()
        .skip(1)
        .map(|(k, &c)| k as f64 * c)
        .collect()
}

/// Multiply by x (shift coefficients up one degree).
fn poly_mul_x(a: &Poly) -> Poly {
    let mut out = Vec::with_capacity(a.len() + 1);
    out.push(0.0);
    out.extend_from_slice(a);
    out
}

/// Exact division by x; the constant term must vanish.
fn poly_div_x(a: &Poly) -> Poly {
    debug_assert!(a[0] == 0.0, "polynomial not divisible by x");
    if a.len() == 1 {
        return vec![0.0];
    }
    a[1..].to_vec()
}

/// int_0^1 p(x) dx.
fn poly_integral01(a: &Poly) -> f64 {
    a.iter()
        .enumerate()
        .map(|(k, &c)| c / (k + 1) as f64)
        .sum()
}

/// Monomial coefficients of psi_i = (1 - 2x^2 + x^4) x^(2(i-1)), i >= 1.
fn basis_coeffs(i: usize) -> Poly {
    let shift = 2 * (i - 1);
    let mut p = vec![0.0; shift + 5];
    p[shift] = 1.0;
    p[shift + 2] = -2.0;
    p[shift + 4] = 1.0;
    p
}

/// psi_i evaluated in factored form (exact zeros at the rim).
pub fn basis_eval(i: usize, x: f64) -> f64 {
    let u = 1.0 - x * x;
    u * u * x.powi(2 * (i as i32 - 1))
}

/// psi_i' evaluated in factored form.
pub fn basis_deriv(i: usize, x: f64) -> f64 {
    let m = 2 * (i as i32 - 1);
    let u = 1.0 - x * x;
    if m == 0 {
        -4.0 * x * u
    } else {
        u * x.powi(m - 1) * (m as f64 * u - 4.0 * x * x)
    }
}

/// Assemble the Ritz stiffness and mass matrices for `basis_size` trial
/// functions at composite Poisson ratio `nu`.
pub fn assemble(basis_size: usize, nu: f64) -> (DMatrix<f64>, DMatrix<f64>) {
    let psi: Vec<Poly> = (1..=basis_size).map(basis_coeffs).collect();
    let d1: Vec<Poly> = psi.iter().map(poly_deriv).collect();
    let d2: Vec<Poly> = d1.iter().map(poly_deriv).collect();

    let mut k = DMatrix::zeros(basis_size, basis_size);
    let mut m = DMatrix::zeros(basis_size, basis_size);
    for i in 0..basis_size {
        for j in i..basis_size {
            let bend = poly_integral01(&poly_mul_x(&poly_mul(&d2[i], &d2[j])));
            let cross = poly_integral01(&poly_mul(&d1[i], &d2[j]))
                + poly_integral01(&poly_mul(&d2[i], &d1[j]));
            let membrane = poly_integral01(&poly_div_x(&poly_mul(&d1[i], &d1[j])));
            let kij = bend + nu * cross + membrane;
            let mij = poly_integral01(&poly_mul_x(&poly_mul(&psi[i], &psi[j])));
            k[(i, j)] = kij;
            k[(j, i)] = kij;
            m[(i, j)] = mij;
            m[(j, i)] = mij;
        }
    }
    (k, m)
}

/// Eigenpairs of the Ritz problem, ascending by eigenvalue.
#[derive(Debug, Clone)]
pub struct RitzSolution {
    /// Dimensionless eigenvalues lambda^4 = omega^2 mu r^4 / D.
    pub lambda4: Vec<f64>,
    /// Basis coefficients of each mode, same order as `lambda4`.
    pub coeffs: Vec<Vec<f64>>,
}

impl RitzSolution {
    /// Evaluate mode `j` at normalized radius x (factored basis, exact
    /// clamped conditions at x = 1).
    pub fn eval(&self, j: usize, x: f64) -> f64 {
        self.coeffs[j]
            .iter()
            .enumerate()
            .map(|(i, &c)| c * basis_eval(i + 1, x))
            .sum()
    }

    /// Radial slope of mode `j` at normalized radius x.
    pub fn eval_deriv(&self, j: usize, x: f64) -> f64 {
        self.coeffs[j]
            .iter()
            .enumerate()
            .map(|(i, &c)| c * basis_deriv(i + 1, x))
            .sum()
    }
}

/// Solve the axisymmetric Ritz eigenproblem with `basis_size` trial functions.
pub fn rayleigh_ritz_solve(basis_size: usize, nu: f64) -> Result<RitzSolution> {
    if basis_size == 0 {
        return Err(Error::InvalidInput("basis size must be >= 1".into()));
    }
    let (k, m) = assemble(basis_size, nu);

    let chol = nalgebra::Cholesky::new(m).ok_or_else(|| {
        Error::Numeric(format!(
            "Ritz mass matrix not positive definite at basis size {basis_size}"
        ))
    })?;
    let l = chol.l();

    // A = L^-1 K L^-T, symmetrized against rounding.
    let tmp = l
        .solve_lower_triangular(&k)
        .ok_or_else(|| Error::Numeric("singular Cholesky factor".into()))?;
    let a_t = l
        .solve_lower_triangular(&tmp.transpose())
        .ok_or_else(|| Error::Numeric("singular Cholesky factor".into()))?;
    let a = a_t.transpose();
    let a = 0.5 * (&a + a.transpose());

    let eig = a.symmetric_eigen();
    let mut order: Vec<usize> = (0..basis_size).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].partial_cmp(&eig.eigenvalues[j]).unwrap());

    let lt = l.transpose();
    let mut lambda4 = Vec::with_capacity(basis_size);
    let mut coeffs = Vec::with_capacity(basis_size);
    for &idx in &order {
        let lam4 = eig.eigenvalues[idx];
        if !(lam4 > 0.0) {
            return Err(Error::Numeric(format!(
                "nonpositive Ritz eigenvalue {lam4} at basis size {basis_size}"
            )));
        }
        let y: DVector<f64> = eig.eigenvectors.column(idx).into();
        let c = lt
            .solve_upper_triangular(&y)
            .ok_or_else(|| Error::Numeric("singular Cholesky factor".into()))?;
        lambda4.push(lam4);
        coeffs.push(c.iter().copied().collect());
    }
    Ok(RitzSolution { lambda4, coeffs })
}
