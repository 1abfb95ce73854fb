//! Finite-difference reference spectra for `-ψ''/2 + Vψ = Eψ` (ℏ = m = 1).

use crate::eig::{lowest_eigenvalues, SpectrumResult};
use crate::error::{Result, TraError};
use crate::real::{idx, lit, Real};
use crate::wavefun::{uniform_grid, GridFunction};
use crate::wavop::SymTridiag;

/// Boundary treatment at the grid ends.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Boundary {
    DirichletBoth,
    /// Dirichlet on the left; on the right the potential must be a wall high
    /// enough that the state has decayed, which is checked after solving.
    DirichletLeftDecayRight,
}

/// Potential sampled on a uniform grid whose end points carry `ψ = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct FDProblem<T> {
    potential: GridFunction<T>,
    boundary: Boundary,
}

/// Raw eigenvalues on spacings `2h` and `h` and their Richardson combination.
#[derive(Debug, Clone, PartialEq)]
pub struct FdSpectrum<T> {
    pub coarse: Vec<T>,
    pub fine: Vec<T>,
    pub extrapolated: Vec<T>,
}

impl<T: Real> FdSpectrum<T> {
    pub fn spectrum(&self) -> SpectrumResult<T> {
        SpectrumResult {
            eigenvalues: self.extrapolated.clone(),
            eigenvectors: None,
        }
    }
}

impl<T: Real> FDProblem<T> {
    /// `potential` must be sampled on a uniform grid of odd length ≥ 51;
    /// every second point forms the coarse grid.
    pub fn new(potential: GridFunction<T>, boundary: Boundary) -> Result<Self> {
        let x = potential.abscissae();
        if x.len() < 51 || x.len().is_multiple_of(2) {
            return Err(TraError::Domain(format!(
                "finite-difference grid needs an odd number ≥ 51 of points, got {}",
                x.len()
            )));
        }
        let h = spacing(x);
        if x.windows(2).any(|w| ((w[1] - w[0]) - h).abs() > h * lit(1e-6)) {
            return Err(TraError::Domain("finite-difference grid must be uniform".into()));
        }
        if let Some(i) = potential.values()[1..x.len() - 1].iter().position(|v| !v.is_finite()) {
            return Err(TraError::Domain(format!(
                "potential is not finite at interior point x = {}",
                x[i + 1]
            )));
        }
        Ok(FDProblem { potential, boundary })
    }

    /// Samples `v` on `points` equally spaced points of `[a, b]`.
    pub fn sample(v: impl Fn(T) -> T, a: T, b: T, points: usize, boundary: Boundary) -> Result<Self> {
        let grid = uniform_grid(a, b, points)?;
        Self::new(GridFunction::from_fn(grid, v)?, boundary)
    }

    pub fn potential(&self) -> &GridFunction<T> {
        &self.potential
    }

    pub fn boundary(&self) -> Boundary {
        self.boundary
    }

    /// Fine spacing `h`.
    pub fn spacing(&self) -> T {
        spacing(self.potential.abscissae())
    }
}

fn spacing<T: Real>(x: &[T]) -> T {
    (x[x.len() - 1] - x[0]) / idx::<T>(x.len() - 1)
}

fn levels<T: Real>(v: &[T], h: T, k: usize) -> Result<Vec<T>> {
    let inner = &v[1..v.len() - 1];
    let kin = T::one() / (h * h);
    let t = SymTridiag::from_fn(inner.len(), |i| kin + inner[i], |_| -kin / lit(2.0))?;
    Ok(lowest_eigenvalues(&t, k))
}

/// Lowest `k` levels of the three-point discretization on spacings `2h` and `h`,
/// plus `(4 E_h - E_{2h}) / 3`.
pub fn fd_spectrum<T: Real>(prob: &FDProblem<T>, k: usize) -> Result<FdSpectrum<T>> {
    let v = prob.potential.values();
    let h = prob.spacing();
    let coarse_v: Vec<T> = v.iter().step_by(2).copied().collect();
    if k == 0 || k + 1 > coarse_v.len() - 2 {
        return Err(TraError::Domain(format!(
            "requested {k} levels from a coarse grid of {} interior points",
            coarse_v.len() - 2
        )));
    }
    let want = k + 1;
    let coarse = levels(&coarse_v, h + h, want)?;
    let fine = levels(v, h, want)?;
    let three = lit::<T>(3.0);
    let extrapolated: Vec<T> = fine
        .iter()
        .zip(&coarse)
        .map(|(&f, &c)| (lit::<T>(4.0) * f - c) / three)
        .collect();
    for j in 0..k {
        let gap = extrapolated[j + 1] - extrapolated[j];
        let gap = if j > 0 {
            gap.min(extrapolated[j] - extrapolated[j - 1])
        } else {
            gap
        };
        let correction = (extrapolated[j] - fine[j]).abs();
        if correction > lit::<T>(0.01) * gap {
            return Err(TraError::GridTooCoarse(format!(
                "level {j}: extrapolation correction {correction} exceeds 1% of spacing {gap}"
            )));
        }
    }
    if prob.boundary == Boundary::DirichletLeftDecayRight {
        let wall = v[v.len() - 2];
        let top = extrapolated[k - 1];
        let margin = lit::<T>(10.0) * (top.abs() + T::one());
        if !(wall - top > margin) {
            return Err(TraError::Domain(format!(
                "right wall V = {wall} is not far enough above level {top}"
            )));
        }
    }
    Ok(FdSpectrum {
        coarse: coarse[..k].to_vec(),
        fine: fine[..k].to_vec(),
        extrapolated: extrapolated[..k].to_vec(),
    })
}
