//! Tridiagonal wave-operator representations for the supported systems.
//!
//! Spectra produced from these matrices are in the dimensionless unit
//! `ε = 2E/λ²`; [`energy_unit`](WellParams::energy_unit) converts back.

use crate::error::{Result, TraError};
use crate::opoly::RecurrenceSpec;
use crate::real::{idx, lit, Real};

/// Symmetric tridiagonal matrix stored as its diagonal and first off-diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct SymTridiag<T> {
    diag: Vec<T>,
    off: Vec<T>,
}

impl<T: Real> SymTridiag<T> {
    pub fn new(diag: Vec<T>, off: Vec<T>) -> Result<Self> {
        if diag.is_empty() {
            return Err(TraError::Domain("matrix dimension must be at least 1".into()));
        }
        if off.len() + 1 != diag.len() {
            return Err(TraError::Domain(format!(
                "off-diagonal length {} does not match dimension {}",
                off.len(),
                diag.len()
            )));
        }
        if let Some(i) = diag.iter().position(|v| !v.is_finite()) {
            return Err(TraError::NonFinite(i));
        }
        if let Some(i) = off.iter().position(|v| !v.is_finite()) {
            return Err(TraError::NonFinite(i));
        }
        Ok(SymTridiag { diag, off })
    }

    /// Samples `diag(n)` for `n < size` and `off(n)` for `n < size - 1`.
    pub fn from_fn(size: usize, diag: impl Fn(usize) -> T, off: impl Fn(usize) -> T) -> Result<Self> {
        let d = (0..size).map(&diag).collect();
        let o = (0..size.saturating_sub(1)).map(&off).collect();
        Self::new(d, o)
    }

    /// Symmetrized Jacobi matrix of a recursion: diagonal `a_n/c_n`,
    /// off-diagonal `b_n / sqrt(c_n c_{n+1})`. Requires `c_n > 0`.
    pub fn from_recurrence(rec: &RecurrenceSpec<T>, size: usize) -> Result<Self> {
        for n in 0..size {
            rec.check(n)?;
            if !(rec.c(n) > T::zero()) {
                return Err(TraError::InvalidRecurrence {
                    family: rec.label().to_string(),
                    index: n,
                    reason: "c_n must be positive to symmetrize",
                });
            }
        }
        Self::from_fn(
            size,
            |n| rec.a(n) / rec.c(n),
            |n| rec.b(n) / (rec.c(n) * rec.c(n + 1)).sqrt(),
        )
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    pub fn diag(&self) -> &[T] {
        &self.diag
    }

    pub fn off(&self) -> &[T] {
        &self.off
    }

    /// Maximum absolute row sum.
    pub fn norm_inf(&self) -> T {
        let n = self.dim();
        (0..n)
            .map(|i| {
                let left = if i > 0 { self.off[i - 1].abs() } else { T::zero() };
                let right = if i + 1 < n { self.off[i].abs() } else { T::zero() };
                self.diag[i].abs() + left + right
            })
            .fold(T::zero(), T::max)
    }

    /// Leading `k × k` principal submatrix.
    pub fn leading(&self, k: usize) -> Result<Self> {
        let k = k.min(self.dim());
        Self::new(self.diag[..k].to_vec(), self.off[..k.saturating_sub(1)].to_vec())
    }

    /// Same matrix with every off-diagonal entry negated.
    pub fn negated_off(&self) -> Self {
        SymTridiag {
            diag: self.diag.clone(),
            off: self.off.iter().map(|&v| -v).collect(),
        }
    }

    /// `T v`.
    pub fn apply(&self, v: &[T]) -> Vec<T> {
        let n = self.dim();
        (0..n)
            .map(|i| {
                let mut s = self.diag[i] * v[i];
                if i > 0 {
                    s = s + self.off[i - 1] * v[i - 1];
                }
                if i + 1 < n {
                    s = s + self.off[i] * v[i + 1];
                }
                s
            })
            .collect()
    }
}

/// Infinite square well of width `L` with a sinusoidal bottom `V0 sin(πx/L)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WellParams<T> {
    v0: T,
    length: T,
}

impl<T: Real> WellParams<T> {
    pub fn new(v0: T, length: T) -> Result<Self> {
        if !(length > T::zero()) || !length.is_finite() {
            return Err(TraError::Domain(format!("well width L = {length} must be positive")));
        }
        if !v0.is_finite() {
            return Err(TraError::Domain(format!("V0 = {v0} must be finite")));
        }
        Ok(WellParams { v0, length })
    }

    /// Well with amplitude given as `γ = 2V0/λ²` (i.e. `V0` in units of `λ²/2`).
    pub fn from_gamma(gamma: T, length: T) -> Result<Self> {
        let w = Self::new(T::zero(), length)?;
        Self::new(gamma * w.energy_unit(), length)
    }

    pub fn v0(&self) -> T {
        self.v0
    }

    pub fn length(&self) -> T {
        self.length
    }

    /// `λ = π/L`.
    pub fn lambda(&self) -> T {
        T::PI() / self.length
    }

    /// `γ = 2V0/λ²`.
    pub fn gamma(&self) -> T {
        self.v0 / self.energy_unit()
    }

    /// `λ²/2`, the energy carried by one unit of `ε`.
    pub fn energy_unit(&self) -> T {
        let l = self.lambda();
        l * l / lit(2.0)
    }

    pub fn potential(&self, x: T) -> T {
        self.v0 * (self.lambda() * x).sin()
    }
}

/// Generalized trigonometric Scarf potential
/// `(V+ - V- sin(πx/L)) / cos²(πx/L) + V0 sin(πx/L)` on `|x| ≤ L/2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScarfParams<T> {
    v0: T,
    v_plus: T,
    v_minus: T,
    length: T,
}

impl<T: Real> ScarfParams<T> {
    pub fn new(v0: T, v_plus: T, v_minus: T, length: T) -> Result<Self> {
        if !(length > T::zero()) || !length.is_finite() {
            return Err(TraError::Domain(format!("well width L = {length} must be positive")));
        }
        if !(v0.is_finite() && v_plus.is_finite() && v_minus.is_finite()) {
            return Err(TraError::Domain("potential parameters must be finite".into()));
        }
        let p = ScarfParams {
            v0,
            v_plus,
            v_minus,
            length,
        };
        let lambda = p.lambda();
        let bound = v_minus.abs() - lambda * lambda / lit(8.0);
        if v_plus < bound {
            return Err(TraError::RealityViolation {
                v_plus: v_plus.to_f64().unwrap_or(f64::NAN),
                bound: bound.to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(p)
    }

    /// Parameters given in units of `λ²/2`.
    pub fn from_reduced(u0: T, u_plus: T, u_minus: T, length: T) -> Result<Self> {
        if !(length > T::zero()) || !length.is_finite() {
            return Err(TraError::Domain(format!("well width L = {length} must be positive")));
        }
        let lambda = T::PI() / length;
        let unit = lambda * lambda / lit(2.0);
        Self::new(u0 * unit, u_plus * unit, u_minus * unit, length)
    }

    pub fn v0(&self) -> T {
        self.v0
    }

    pub fn v_plus(&self) -> T {
        self.v_plus
    }

    pub fn v_minus(&self) -> T {
        self.v_minus
    }

    pub fn length(&self) -> T {
        self.length
    }

    pub fn lambda(&self) -> T {
        T::PI() / self.length
    }

    pub fn energy_unit(&self) -> T {
        let l = self.lambda();
        l * l / lit(2.0)
    }

    /// `U0 = 2V0/λ²`.
    pub fn u0(&self) -> T {
        self.v0 / self.energy_unit()
    }

    /// `μ = +sqrt(1/4 + (2/λ²)(V+ - V-))`.
    pub fn mu(&self) -> T {
        (lit::<T>(0.25) + (self.v_plus - self.v_minus) / self.energy_unit())
            .max(T::zero())
            .sqrt()
    }

    /// `ν = +sqrt(1/4 + (2/λ²)(V+ + V-))`.
    pub fn nu(&self) -> T {
        (lit::<T>(0.25) + (self.v_plus + self.v_minus) / self.energy_unit())
            .max(T::zero())
            .sqrt()
    }

    /// Potential at `x`; infinite on the walls when the `1/cos²` term is active.
    pub fn potential(&self, x: T) -> T {
        let t = self.lambda() * x;
        let (s, c) = t.sin_cos();
        let singular = self.v_plus - self.v_minus * s;
        let smooth = self.v0 * s;
        if singular == T::zero() {
            smooth
        } else {
            singular / (c * c) + smooth
        }
    }
}

/// Repulsive Coulomb scattering `V(r) = Z/r` in partial wave `ℓ`, basis scale `λ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoulombParams<T> {
    charge: T,
    ell: u32,
    lambda: T,
    energy: T,
}

impl<T: Real> CoulombParams<T> {
    pub fn new(charge: T, ell: u32, lambda: T, energy: T) -> Result<Self> {
        if !(charge > T::zero()) || !charge.is_finite() {
            return Err(TraError::Domain(format!("charge Z = {charge} must be positive")));
        }
        if !(lambda > T::zero()) || !lambda.is_finite() {
            return Err(TraError::Domain(format!("basis scale λ = {lambda} must be positive")));
        }
        if !(energy > T::zero()) || !energy.is_finite() {
            return Err(TraError::Domain(format!(
                "scattering energy E = {energy} must be positive"
            )));
        }
        Ok(CoulombParams {
            charge,
            ell,
            lambda,
            energy,
        })
    }

    pub fn charge(&self) -> T {
        self.charge
    }

    pub fn ell(&self) -> u32 {
        self.ell
    }

    pub fn lambda(&self) -> T {
        self.lambda
    }

    pub fn energy(&self) -> T {
        self.energy
    }

    /// `γ = Z/λ`.
    pub fn gamma(&self) -> T {
        self.charge / self.lambda
    }

    /// `κ = sqrt(2E)`.
    pub fn kappa(&self) -> T {
        (lit::<T>(2.0) * self.energy).sqrt()
    }

    /// `ε = (κ/λ)²`.
    pub fn epsilon(&self) -> T {
        let r = self.kappa() / self.lambda;
        r * r
    }

    /// Laguerre index `ν = 2ℓ + 1`.
    pub fn laguerre_order(&self) -> T {
        idx::<T>(2 * self.ell as usize + 1)
    }

    /// `cos θ = (ε - 1/4)/(ε + 1/4)`.
    pub fn cos_theta(&self) -> T {
        let e = self.epsilon();
        let q = lit::<T>(0.25);
        (e - q) / (e + q)
    }
}

/// Two-parameter Morse potential `(λ²/8) e^{2λx} + V1 e^{λx}` with free basis index `ν`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MorseParams<T> {
    lambda: T,
    v1: T,
    v2: T,
    nu: T,
}

impl<T: Real> MorseParams<T> {
    /// Default basis index `ν = 1`.
    pub fn new(lambda: T, v1: T) -> Result<Self> {
        if !(lambda > T::zero()) || !lambda.is_finite() {
            return Err(TraError::Domain(format!("λ = {lambda} must be positive")));
        }
        if !v1.is_finite() {
            return Err(TraError::Domain(format!("V1 = {v1} must be finite")));
        }
        Ok(MorseParams {
            lambda,
            v1,
            v2: lambda * lambda / lit(8.0),
            nu: T::one(),
        })
    }

    pub fn with_nu(mut self, nu: T) -> Result<Self> {
        if !(nu > -T::one()) || !nu.is_finite() {
            return Err(TraError::Domain(format!("basis index ν = {nu} must exceed -1")));
        }
        self.nu = nu;
        Ok(self)
    }

    /// Overrides the `e^{2λx}` strength. Only `V2 = λ²/8` admits a tridiagonal
    /// representation; anything else is rejected by [`validate_basis_choice`].
    pub fn with_declared_v2(mut self, v2: T) -> Self {
        self.v2 = v2;
        self
    }

    pub fn lambda(&self) -> T {
        self.lambda
    }

    pub fn v1(&self) -> T {
        self.v1
    }

    pub fn v2(&self) -> T {
        self.v2
    }

    pub fn nu(&self) -> T {
        self.nu
    }

    pub fn energy_unit(&self) -> T {
        self.lambda * self.lambda / lit(2.0)
    }

    /// `U1 = 2V1/λ²`.
    pub fn u1(&self) -> T {
        self.v1 / self.energy_unit()
    }

    /// `U2 = 2V2/λ²`.
    pub fn u2(&self) -> T {
        self.v2 / self.energy_unit()
    }

    /// Number of bound states: the number of `k ≥ 0` with `k + 1/2 + U1 < 0`.
    pub fn bound_state_count(&self) -> usize {
        let top = -self.u1() - lit(0.5);
        if top <= T::zero() {
            0
        } else {
            top.ceil().to_usize().unwrap_or(0)
        }
    }

    pub fn potential(&self, x: T) -> T {
        let y = (self.lambda * x).exp();
        self.v2 * y * y + self.v1 * y
    }
}

/// Any of the supported physical systems.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SystemParams<T> {
    Well(WellParams<T>),
    Scarf(ScarfParams<T>),
    Coulomb(CoulombParams<T>),
    Morse(MorseParams<T>),
}

/// Classical polynomial family carried by the basis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BasisFamily<T> {
    /// `L_n^ν(y)`.
    Laguerre { nu: T },
    /// `U_n(y)`.
    ChebyshevU,
    /// `P_n^{(μ,ν)}(y)`.
    Jacobi { mu: T, nu: T },
}

/// Basis selected for a system together with its forced exponents.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BasisChoice<T> {
    pub family: BasisFamily<T>,
    /// Exponent of `y` (Laguerre), `(1-y²)` (Chebyshev) or `(1-y)` (Jacobi).
    pub alpha: T,
    /// Exponent of `(1+y)` for the Jacobi basis, `None` otherwise.
    pub beta: Option<T>,
    /// Constraint that made the representation tridiagonal.
    pub constraint: &'static str,
}

/// Selects the basis for `system` and checks the tridiagonality constraints.
pub fn validate_basis_choice<T: Real>(system: &SystemParams<T>) -> Result<BasisChoice<T>> {
    let half = lit::<T>(0.5);
    let quarter = lit::<T>(0.25);
    match system {
        SystemParams::Coulomb(p) => Ok(BasisChoice {
            family: BasisFamily::Laguerre { nu: p.laguerre_order() },
            alpha: idx::<T>(p.ell() as usize + 1),
            beta: None,
            constraint: "2α = ν + 1 and ν = 2ℓ + 1",
        }),
        SystemParams::Well(_) => Ok(BasisChoice {
            family: BasisFamily::ChebyshevU,
            alpha: half,
            beta: None,
            constraint: "α = 1/2",
        }),
        SystemParams::Scarf(p) => {
            let (mu, nu) = (p.mu(), p.nu());
            Ok(BasisChoice {
                family: BasisFamily::Jacobi { mu, nu },
                alpha: mu / lit(2.0) + quarter,
                beta: Some(nu / lit(2.0) + quarter),
                constraint: "(p, q) = (0, 0): 2α = μ + 1/2 and 2β = ν + 1/2",
            })
        }
        SystemParams::Morse(p) => {
            let u2 = p.u2();
            let tol = lit::<T>(64.0) * T::epsilon();
            if (u2 - quarter).abs() > tol {
                return Err(TraError::Inconsistent {
                    constraint: format!("Morse basis with 2α = ν + 1 requires U2 = 2V2/λ² = 1/4, got U2 = {u2}"),
                });
            }
            if !(p.nu() > -T::one()) {
                return Err(TraError::Inconsistent {
                    constraint: format!("Laguerre index ν = {} must exceed -1", p.nu()),
                });
            }
            Ok(BasisChoice {
                family: BasisFamily::Laguerre { nu: p.nu() },
                alpha: (p.nu() + T::one()) / lit(2.0),
                beta: None,
                constraint: "2α = ν + 1 with U2 = 1/4",
            })
        }
    }
}

fn require_dim(size: usize) -> Result<()> {
    if size == 0 {
        return Err(TraError::Domain("basis size N must be at least 1".into()));
    }
    Ok(())
}

/// Sinusoidal-well recursion: `a_n = (n+1)²`, `b_n = γ/2`, `c_n = 1`.
pub fn well_recurrence<T: Real>(p: &WellParams<T>) -> RecurrenceSpec<T> {
    let half_gamma = p.gamma() / lit(2.0);
    RecurrenceSpec::symmetric(
        "sinusoidal well",
        |n| {
            let m = idx::<T>(n + 1);
            m * m
        },
        move |_| half_gamma,
    )
}

/// Truncated sinusoidal-well matrix in units of `λ²/2`.
pub fn well_matrix<T: Real>(p: &WellParams<T>, size: usize) -> Result<SymTridiag<T>> {
    require_dim(size)?;
    let rec = well_recurrence(p);
    SymTridiag::from_fn(size, |n| rec.a(n), |n| rec.b(n))
}

fn scarf_coefficients<T: Real>(p: &ScarfParams<T>) -> (impl Fn(usize) -> T + Copy, impl Fn(usize) -> T + Copy) {
    let (mu, nu, u0) = (p.mu(), p.nu(), p.u0());
    let one = T::one();
    let two = lit::<T>(2.0);
    let diag = move |n: usize| {
        let nf = idx::<T>(n);
        let s = two * nf + mu + nu;
        let shifted = nf + (mu + nu + one) / two;
        let num = nu * nu - mu * mu;
        let c_n = if num == T::zero() {
            T::zero()
        } else {
            num / (s * (s + two))
        };
        shifted * shifted + u0 * c_n
    };
    let off = move |n: usize| {
        let nf = idx::<T>(n);
        let s = two * nf + mu + nu;
        let left = ((nf + one) * (nf + mu + nu + one) / (s + one)).sqrt();
        let right = ((nf + mu + one) * (nf + nu + one) / (s + lit(3.0))).sqrt();
        u0 * two / (s + two) * left * right
    };
    (diag, off)
}

/// Scarf recursion: `a_n = (n + (μ+ν+1)/2)² + U0 C_n`, `b_n = U0 D_n`.
pub fn scarf_recurrence<T: Real>(p: &ScarfParams<T>) -> RecurrenceSpec<T> {
    let (diag, off) = scarf_coefficients(p);
    RecurrenceSpec::symmetric("generalized trigonometric Scarf", diag, off)
}

/// Truncated Scarf matrix in units of `λ²/2`.
pub fn scarf_matrix<T: Real>(p: &ScarfParams<T>, size: usize) -> Result<SymTridiag<T>> {
    require_dim(size)?;
    let (diag, off) = scarf_coefficients(p);
    SymTridiag::from_fn(size, diag, off)
}

fn morse_coefficients<T: Real>(p: &MorseParams<T>) -> (impl Fn(usize) -> T + Copy, impl Fn(usize) -> T + Copy) {
    let (nu, u1) = (p.nu(), p.u1());
    let one = T::one();
    let two = lit::<T>(2.0);
    let diag = move |n: usize| {
        let nf = idx::<T>(n);
        (two * nf + nu + one) * (nf + (nu + one) / two + u1) - (nu * nu - one) / lit(4.0)
    };
    let off = move |n: usize| {
        let nf = idx::<T>(n);
        -(nf + one + nu / two + u1) * ((nf + one) * (nf + nu + one)).sqrt()
    };
    (diag, off)
}

/// Morse recursion (case `U2 = 1/4`). The coefficient `b_n` vanishes where
/// `n + 1 + ν/2 + U1 = 0`, so the recursion is only valid below that index.
pub fn morse_recurrence<T: Real>(p: &MorseParams<T>) -> Result<RecurrenceSpec<T>> {
    validate_basis_choice(&SystemParams::Morse(*p))?;
    let (diag, off) = morse_coefficients(p);
    Ok(RecurrenceSpec::symmetric("Morse (continuous dual Hahn)", diag, off))
}

/// Truncated Morse matrix in units of `λ²/2`, off-diagonal sign as written.
pub fn morse_matrix<T: Real>(p: &MorseParams<T>, size: usize) -> Result<SymTridiag<T>> {
    require_dim(size)?;
    validate_basis_choice(&SystemParams::Morse(*p))?;
    let (diag, off) = morse_coefficients(p);
    SymTridiag::from_fn(size, diag, off)
}

/// Recursion evaluated at a fixed spectral variable `z`.
#[derive(Debug, Clone)]
pub struct FixedEnergyRecurrence<T> {
    pub recurrence: RecurrenceSpec<T>,
    pub z: T,
}

impl<T: Real> FixedEnergyRecurrence<T> {
    pub fn sequence(&self, n_max: usize) -> Result<crate::opoly::PolySequence<T>> {
        crate::opoly::eval_recursion(&self.recurrence, self.z, n_max)
    }
}

/// Coulomb recursion at the energy carried by `p`:
/// `z = -2γ/(ε+1/4)`, `a_n = -2(n+ℓ+1)(ε-1/4)/(ε+1/4)`, `b_n = sqrt((n+1)(n+2ℓ+2))`.
pub fn coulomb_recurrence<T: Real>(p: &CoulombParams<T>) -> FixedEnergyRecurrence<T> {
    let eps = p.epsilon();
    let q = lit::<T>(0.25);
    let ratio = (eps - q) / (eps + q);
    let ell = idx::<T>(p.ell() as usize);
    let two = lit::<T>(2.0);
    let one = T::one();
    let recurrence = RecurrenceSpec::symmetric(
        "Coulomb (Meixner-Pollaczek)",
        move |n| -two * (idx::<T>(n) + ell + one) * ratio,
        move |n| {
            let nf = idx::<T>(n);
            ((nf + one) * (nf + two * ell + two)).sqrt()
        },
    );
    FixedEnergyRecurrence {
        recurrence,
        z: -two * p.gamma() / (eps + q),
    }
}
