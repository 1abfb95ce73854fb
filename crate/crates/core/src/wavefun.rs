//! Basis sampling, wavefunction reconstruction and grid diagnostics.

use crate::error::{Result, TraError};
use crate::opoly::{chebyshev_u_sequence, jacobi_sequence, laguerre_sequence, norm_jacobi, norm_laguerre};
use crate::real::{idx, lit, Real};
use crate::wavop::{coulomb_recurrence, validate_basis_choice, CoulombParams, SystemParams};

/// Largest expansion length accepted by [`reconstruct_bound`].
pub const MAX_BASIS_TERMS: usize = 8192;

/// A real function sampled on strictly ascending abscissae.
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction<T> {
    abscissae: Vec<T>,
    values: Vec<T>,
}

impl<T: Real> GridFunction<T> {
    pub fn new(abscissae: Vec<T>, values: Vec<T>) -> Result<Self> {
        if abscissae.len() != values.len() {
            return Err(TraError::Domain(format!(
                "{} abscissae but {} values",
                abscissae.len(),
                values.len()
            )));
        }
        check_ascending(&abscissae)?;
        Ok(GridFunction { abscissae, values })
    }

    pub fn from_fn(abscissae: Vec<T>, f: impl Fn(T) -> T) -> Result<Self> {
        let values = abscissae.iter().map(|&x| f(x)).collect();
        Self::new(abscissae, values)
    }

    pub fn abscissae(&self) -> &[T] {
        &self.abscissae
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn max_abs(&self) -> T {
        self.values.iter().fold(T::zero(), |m, v| m.max(v.abs()))
    }

    /// Trapezoidal `∫ f g dx` on the shared grid.
    pub fn inner(&self, other: &Self) -> Result<T> {
        if self.abscissae != other.abscissae {
            return Err(TraError::Domain("grid functions live on different grids".into()));
        }
        let x = &self.abscissae;
        let mut sum = T::zero();
        for i in 1..x.len() {
            let left = self.values[i - 1] * other.values[i - 1];
            let right = self.values[i] * other.values[i];
            sum = sum + (x[i] - x[i - 1]) * (left + right) / lit(2.0);
        }
        Ok(sum)
    }

    /// `max |f - g|` on the shared grid.
    pub fn max_distance(&self, other: &Self) -> Result<T> {
        if self.abscissae != other.abscissae {
            return Err(TraError::Domain("grid functions live on different grids".into()));
        }
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .fold(T::zero(), |m, (&a, &b)| m.max((a - b).abs())))
    }
}

fn check_ascending<T: Real>(x: &[T]) -> Result<()> {
    if x.iter().any(|v| !v.is_finite()) {
        return Err(TraError::Domain("abscissae must be finite".into()));
    }
    if x.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(TraError::Domain("abscissae must be strictly ascending".into()));
    }
    Ok(())
}

/// `points` equally spaced abscissae from `a` to `b` inclusive.
pub fn uniform_grid<T: Real>(a: T, b: T, points: usize) -> Result<Vec<T>> {
    if points < 2 || !(b > a) {
        return Err(TraError::Domain(format!(
            "uniform grid needs b > a and at least 2 points, got [{a}, {b}] with {points}"
        )));
    }
    let h = (b - a) / idx::<T>(points - 1);
    let mut grid: Vec<T> = (0..points).map(|i| a + h * idx::<T>(i)).collect();
    grid[points - 1] = b;
    Ok(grid)
}

/// How expansion coefficients are scaled.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Normalization {
    /// Unit-norm eigenvector of the truncated matrix.
    Eigenvector,
    /// Includes the spectral weight factor.
    Weighted,
}

/// Expansion coefficients `f_0 .. f_{N-1}` of a state in the basis `φ_n`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExpansionCoefficients<T> {
    coeffs: Vec<T>,
    normalization: Normalization,
}

impl<T: Real> ExpansionCoefficients<T> {
    pub fn new(coeffs: Vec<T>, normalization: Normalization) -> Result<Self> {
        if coeffs.is_empty() || coeffs.iter().all(|c| *c == T::zero()) {
            return Err(TraError::Domain("expansion coefficients are all zero".into()));
        }
        if let Some(i) = coeffs.iter().position(|c| !c.is_finite()) {
            return Err(TraError::NonFinite(i));
        }
        Ok(ExpansionCoefficients { coeffs, normalization })
    }

    pub fn eigenvector(coeffs: Vec<T>) -> Result<Self> {
        Self::new(coeffs, Normalization::Eigenvector)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn normalization(&self) -> Normalization {
        self.normalization
    }

    /// The first `n` coefficients.
    pub fn truncated(&self, n: usize) -> Result<Self> {
        Self::new(self.coeffs[..n.min(self.coeffs.len())].to_vec(), self.normalization)
    }
}

fn domain_slack<T: Real>(half: T) -> T {
    half * lit::<T>(16.0) * T::epsilon()
}

/// `φ_0(x) ..= φ_{n_max}(x)` at a single abscissa.
fn basis_column<T: Real>(system: &SystemParams<T>, n_max: usize, x: T) -> Result<Vec<T>> {
    let half = lit::<T>(0.5);
    let two = lit::<T>(2.0);
    match system {
        SystemParams::Well(p) => {
            let h = p.length() / two;
            if x.abs() > h + domain_slack(h) {
                return Err(TraError::Domain(format!("x = {x} lies outside |x| ≤ L/2 = {h}")));
            }
            let lam = p.lambda();
            // cos(λx) written so that it vanishes exactly on the walls
            let c = (lam * (h - x.abs()).max(T::zero())).sin();
            let s = (lam * x).sin().max(-T::one()).min(T::one());
            let pref = (two * lam / T::PI()).sqrt() * c;
            Ok(chebyshev_u_sequence(n_max, s).into_iter().map(|u| pref * u).collect())
        }
        SystemParams::Scarf(p) => {
            let h = p.length() / two;
            if x.abs() > h + domain_slack(h) {
                return Err(TraError::Domain(format!("x = {x} lies outside |x| ≤ L/2 = {h}")));
            }
            let lam = p.lambda();
            let (mu, nu) = (p.mu(), p.nu());
            let choice = validate_basis_choice(system)?;
            let beta = choice.beta.unwrap_or(nu / two + lit(0.25));
            // 1 ∓ sin(λx) = 2 sin²(λ(L/2 ∓ x)/2)
            let one_minus = two * (lam * (h - x).max(T::zero()) / two).sin().powi(2);
            let one_plus = two * (lam * (h + x).max(T::zero()) / two).sin().powi(2);
            let y = (lam * x).sin().max(-T::one()).min(T::one());
            let pref = lam.sqrt() * one_minus.powf(choice.alpha) * one_plus.powf(beta);
            let poly = jacobi_sequence(n_max, mu, nu, y)?;
            poly.into_iter()
                .enumerate()
                .map(|(n, v)| Ok(pref * norm_jacobi(n, mu, nu)? * v))
                .collect()
        }
        SystemParams::Coulomb(p) => {
            if x < T::zero() {
                return Err(TraError::Domain(format!("radius r = {x} must be non-negative")));
            }
            let y = p.lambda() * x;
            let alpha = idx::<T>(p.ell() as usize + 1);
            let nu = p.laguerre_order();
            let pref = if y == T::zero() {
                T::zero()
            } else {
                (alpha * y.ln() - half * y).exp()
            };
            laguerre_sequence(n_max, nu, y)?
                .into_iter()
                .enumerate()
                .map(|(n, v)| Ok(pref * norm_laguerre(n, nu)? * v))
                .collect()
        }
        SystemParams::Morse(p) => {
            let choice = validate_basis_choice(system)?;
            let lx = p.lambda() * x;
            let limit = T::max_value().ln();
            if lx > limit {
                return Err(TraError::Domain(format!("λx = {lx} overflows e^(λx) (limit {limit})")));
            }
            let y = lx.exp();
            let nu = p.nu();
            let pref = (half * p.lambda().ln() + choice.alpha * lx - half * y).exp();
            laguerre_sequence(n_max, nu, y)?
                .into_iter()
                .enumerate()
                .map(|(n, v)| Ok(pref * norm_laguerre(n, nu)? * v))
                .collect()
        }
    }
}

/// Samples the `n`-th basis function of `system` on `grid`.
///
/// Well, Scarf and Morse bases are orthonormal in `x`; the Coulomb basis
/// carries `A_n = sqrt(n!/Γ(n+2ℓ+2))` and is not.
pub fn basis_sample<T: Real>(system: &SystemParams<T>, n: usize, grid: &[T]) -> Result<GridFunction<T>> {
    check_ascending(grid)?;
    let values = grid
        .iter()
        .map(|&x| Ok(basis_column(system, n, x)?[n]))
        .collect::<Result<Vec<T>>>()?;
    GridFunction::new(grid.to_vec(), values)
}

fn expand<T: Real>(system: &SystemParams<T>, coeffs: &[T], grid: &[T]) -> Result<Vec<T>> {
    let n_max = coeffs.len() - 1;
    grid.iter()
        .map(|&x| {
            let col = basis_column(system, n_max, x)?;
            Ok(col.iter().zip(coeffs).fold(T::zero(), |s, (&phi, &c)| s + c * phi))
        })
        .collect()
}

/// `ψ(x) = Σ_n f_n φ_n(x)`, left un-normalized.
pub fn reconstruct_bound<T: Real>(
    system: &SystemParams<T>,
    coeffs: &ExpansionCoefficients<T>,
    grid: &[T],
) -> Result<GridFunction<T>> {
    let c = coeffs.coeffs();
    if c.len() > MAX_BASIS_TERMS {
        return Err(TraError::Mismatch {
            given: c.len(),
            available: MAX_BASIS_TERMS,
        });
    }
    check_ascending(grid)?;
    GridFunction::new(grid.to_vec(), expand(system, c, grid)?)
}

/// How the Coulomb series is summed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Summation {
    Partial,
    /// Arithmetic mean of the first `N` partial sums, i.e. term weights `1 - n/N`.
    Cesaro,
}

/// Partial sum `Σ_{n<N} A_n P_n L_n^{2ℓ+1}(λr)` of the Coulomb scattering state,
/// scaled to `max |ψ| = 1`.
pub fn reconstruct_scatter_coulomb<T: Real>(
    p: &CoulombParams<T>,
    n_terms: usize,
    grid: &[T],
) -> Result<GridFunction<T>> {
    reconstruct_scatter_coulomb_with(p, n_terms, grid, Summation::Partial)
}

/// The series terms fall off only like `n^{-3/4}` with an oscillating sign, so
/// plain partial sums settle slowly; [`Summation::Cesaro`] damps the tail.
pub fn reconstruct_scatter_coulomb_with<T: Real>(
    p: &CoulombParams<T>,
    n_terms: usize,
    grid: &[T],
    summation: Summation,
) -> Result<GridFunction<T>> {
    if n_terms == 0 {
        return Err(TraError::Domain("n_terms must be at least 1".into()));
    }
    check_ascending(grid)?;
    let mut coeffs = coulomb_recurrence(p).sequence(n_terms - 1)?.values;
    if summation == Summation::Cesaro {
        let total = idx::<T>(n_terms);
        for (n, c) in coeffs.iter_mut().enumerate() {
            *c = *c * (T::one() - idx::<T>(n) / total);
        }
    }
    let system = SystemParams::Coulomb(*p);
    let mut values = expand(&system, &coeffs, grid)?;
    let peak = values.iter().fold(T::zero(), |m, v| m.max(v.abs()));
    if peak > T::zero() {
        for v in &mut values {
            *v = *v / peak;
        }
    }
    GridFunction::new(grid.to_vec(), values)
}

/// Potential energy at `x`, including the centrifugal term for Coulomb.
pub fn potential_at<T: Real>(system: &SystemParams<T>, x: T) -> T {
    match system {
        SystemParams::Well(p) => p.potential(x),
        SystemParams::Scarf(p) => p.potential(x),
        SystemParams::Coulomb(p) => {
            let l = idx::<T>(p.ell() as usize);
            p.charge() / x + l * (l + T::one()) / (lit::<T>(2.0) * x * x)
        }
        SystemParams::Morse(p) => p.potential(x),
    }
}

/// `max |(-ψ''/2 + Vψ - Eψ)| / max |Eψ|` over interior points, with `ψ''` from
/// central differences. Points where the potential is singular are skipped.
///
/// Fails with [`TraError::GridTooCoarse`] when the spacing exceeds the inverse
/// of the largest classically allowed wavenumber.
pub fn residual_check<T: Real>(system: &SystemParams<T>, energy: T, psi: &GridFunction<T>) -> Result<T> {
    let x = psi.abscissae();
    let f = psi.values();
    if x.len() < 5 {
        return Err(TraError::Domain("residual check needs at least 5 grid points".into()));
    }
    let h = (x[x.len() - 1] - x[0]) / idx::<T>(x.len() - 1);
    let uniform_tol = h * lit(1e-6);
    if x.windows(2).any(|w| ((w[1] - w[0]) - h).abs() > uniform_tol) {
        return Err(TraError::Domain("residual check needs a uniform grid".into()));
    }
    let mut worst = T::zero();
    let mut scale = T::zero();
    let mut wavenumber = T::zero();
    for i in 0..x.len() {
        scale = scale.max((energy * f[i]).abs());
        if i == 0 || i + 1 == x.len() {
            continue;
        }
        let v = potential_at(system, x[i]);
        if !v.is_finite() {
            continue;
        }
        if energy > v {
            wavenumber = wavenumber.max((lit::<T>(2.0) * (energy - v)).sqrt());
        }
        let second = (f[i + 1] - f[i] - f[i] + f[i - 1]) / (h * h);
        let r = -second / lit(2.0) + (v - energy) * f[i];
        worst = worst.max(r.abs());
    }
    if wavenumber * h > T::one() {
        return Err(TraError::GridTooCoarse(format!(
            "spacing {h} exceeds the local wavelength scale 1/{wavenumber}"
        )));
    }
    if !(scale > T::zero()) {
        return Err(TraError::Domain("residual is undefined for E ψ ≡ 0".into()));
    }
    Ok(worst / scale)
}

/// Strict sign changes of `psi`, ignoring `boundary_pad` points at each end
/// and exact zeros.
pub fn count_nodes<T: Real>(psi: &GridFunction<T>, boundary_pad: usize) -> usize {
    let v = psi.values();
    if v.len() <= 2 * boundary_pad {
        return 0;
    }
    let mut last = T::zero();
    let mut count = 0;
    for &val in &v[boundary_pad..v.len() - boundary_pad] {
        if val == T::zero() {
            continue;
        }
        if last != T::zero() && (val > T::zero()) != (last > T::zero()) {
            count += 1;
        }
        last = val;
    }
    count
}
