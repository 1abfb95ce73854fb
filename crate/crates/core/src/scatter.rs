//! Phase shifts, bound spectra and asymptotic phase extraction.

use num_complex::Complex;

use crate::eig::SpectrumResult;
use crate::error::{Result, TraError};
use crate::lstsq;
use crate::opoly::PolySequence;
use crate::real::{idx, lit, wrap_angle, Real};
use crate::special::ln_gamma;
use crate::wavop::{coulomb_recurrence, CoulombParams, MorseParams};

pub use crate::special::log_gamma_complex;

/// How a phase shift is determined.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PhaseConvention {
    Exact,
    /// Only defined up to an additive multiple of π/2.
    ModuloHalfPi,
}

/// Phase shift in the principal range (-π, π].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseShift<T> {
    pub delta: T,
    pub convention: PhaseConvention,
}

impl<T: Real> PhaseShift<T> {
    fn new(delta: T, convention: PhaseConvention) -> Self {
        PhaseShift {
            delta: wrap_angle(delta),
            convention,
        }
    }
}

/// Unwrapped `arg Γ(ℓ + 1 - iη)` with Sommerfeld parameter `η = Z/κ` (any sign).
pub fn coulomb_phase<T: Real>(ell: u32, eta: T) -> Result<T> {
    Ok(ln_gamma(Complex::new(idx::<T>(ell as usize + 1), -eta))?.im)
}

/// Coulomb phase shift `arg Γ(ℓ + 1 - iZ/κ)`, defined modulo π/2.
pub fn coulomb_phase_shift<T: Real>(p: &CoulombParams<T>) -> Result<PhaseShift<T>> {
    let eta = p.charge() / p.kappa();
    Ok(PhaseShift::new(
        coulomb_phase(p.ell(), eta)?,
        PhaseConvention::ModuloHalfPi,
    ))
}

/// Bound-state energies `E_k = -(λ²/2)(k + 1/2 + U1)²` (physical units),
/// ascending, for every `k` with `k + 1/2 + U1 < 0`.
pub fn morse_bound_energies<T: Real>(p: &MorseParams<T>) -> SpectrumResult<T> {
    let count = p.bound_state_count();
    let unit = p.energy_unit();
    let u1 = p.u1();
    let eigenvalues = (0..count)
        .map(|k| {
            let s = idx::<T>(k) + lit(0.5) + u1;
            -unit * s * s
        })
        .collect();
    SpectrumResult {
        eigenvalues,
        eigenvectors: None,
    }
}

/// The three unwrapped terms `arg Γ(2iκ/λ)`, `arg Γ(1/2 + U1 + iκ/λ)` and
/// `arg Γ((ν+1)/2 + iκ/λ)` whose combination is the Morse phase shift.
pub fn morse_phase_terms<T: Real>(p: &MorseParams<T>, energy: T) -> Result<[T; 3]> {
    if !(energy > T::zero()) {
        return Err(TraError::Domain(format!(
            "scattering energy E = {energy} must be positive"
        )));
    }
    let k = (lit::<T>(2.0) * energy).sqrt() / p.lambda();
    let first = ln_gamma(Complex::new(T::zero(), k + k))?.im;
    let second = ln_gamma(Complex::new(lit::<T>(0.5) + p.u1(), k))?.im;
    let third = ln_gamma(Complex::new((p.nu() + T::one()) / lit(2.0), k))?.im;
    Ok([first, second, third])
}

/// Morse phase shift
/// `arg Γ(2iκ/λ) - arg Γ(1/2 + 2V1/λ² + iκ/λ) - 2 arg Γ((ν+1)/2 + iκ/λ)`, `κ = sqrt(2E)`.
///
/// The last term depends on the free basis index `ν`; it is kept as written.
pub fn morse_phase_shift<T: Real>(p: &MorseParams<T>, energy: T) -> Result<PhaseShift<T>> {
    let [a, b, c] = morse_phase_terms(p, energy)?;
    Ok(PhaseShift::new(a - b - (c + c), PhaseConvention::Exact))
}

/// Coefficient of `log n` in the oscillating phase.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LogTerm<T> {
    Fixed(T),
    Fitted,
}

/// Which oscillation drives the asymptotic phase.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Oscillation<T> {
    /// `n θ + φ log n + δ` (`ξ = 1`).
    Linear { log_term: LogTerm<T> },
    /// `φ log n + δ` (`θ = 0`).
    Logarithmic,
}

/// Model and fitting window for [`extract_phase`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymptoticModel<T> {
    pub oscillation: Oscillation<T>,
    /// Inclusive index window `[n0, n1]`, `n0 ≥ 1`.
    pub window: (usize, usize),
    /// Largest accepted relative RMS residual.
    pub tolerance: T,
    /// Adds `1/n` corrections to both quadratures of the envelope.
    pub corrections: bool,
}

impl<T: Real> AsymptoticModel<T> {
    /// `θ` fitted, `φ = 0`.
    pub fn linear(window: (usize, usize)) -> Self {
        AsymptoticModel {
            oscillation: Oscillation::Linear {
                log_term: LogTerm::Fixed(T::zero()),
            },
            window,
            tolerance: lit(1e-3),
            corrections: false,
        }
    }

    pub fn logarithmic(window: (usize, usize)) -> Self {
        AsymptoticModel {
            oscillation: Oscillation::Logarithmic,
            ..Self::linear(window)
        }
    }

    pub fn with_log_term(mut self, log_term: LogTerm<T>) -> Self {
        if let Oscillation::Linear { .. } = self.oscillation {
            self.oscillation = Oscillation::Linear { log_term };
        }
        self
    }

    pub fn with_tolerance(mut self, tolerance: T) -> Self {
        self.tolerance = tolerance;
        self
    }

    pub fn with_corrections(mut self, corrections: bool) -> Self {
        self.corrections = corrections;
        self
    }
}

/// Fitted `P_n ≈ n^{-τ} A cos(n^ξ θ + φ log n + δ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymptoticFit<T> {
    pub amplitude_envelope: T,
    pub tau: T,
    pub xi: T,
    pub theta: T,
    pub phi: T,
    /// Phase constant in (-π, π].
    pub delta_est: T,
    /// `‖P - model‖₂ / ‖P‖₂` over the window.
    pub residual: T,
}

struct Problem<'a, T> {
    ns: Vec<T>,
    logs: Vec<T>,
    data: &'a [T],
    oscillation: Oscillation<T>,
    corrections: bool,
}

impl<T: Real> Problem<'_, T> {
    /// `(τ, θ, φ)` from the free parameter vector.
    fn unpack(&self, q: &[T]) -> (T, T, T) {
        match self.oscillation {
            Oscillation::Linear {
                log_term: LogTerm::Fixed(phi),
            } => (q[0], q[1], phi),
            Oscillation::Linear {
                log_term: LogTerm::Fitted,
            } => (q[0], q[1], q[2]),
            Oscillation::Logarithmic => (q[0], T::zero(), q[1]),
        }
    }

    fn basis(&self, q: &[T]) -> Vec<Vec<T>> {
        let (tau, theta, phi) = self.unpack(q);
        let m = self.ns.len();
        let mut c = Vec::with_capacity(m);
        let mut s = Vec::with_capacity(m);
        for (&n, &ln) in self.ns.iter().zip(&self.logs) {
            let env = (-tau * ln).exp();
            let (sp, cp) = (n * theta + phi * ln).sin_cos();
            c.push(env * cp);
            s.push(env * sp);
        }
        let mut cols = vec![c, s];
        if self.corrections {
            let c1 = cols[0].iter().zip(&self.ns).map(|(&v, &n)| v / n).collect();
            let s1 = cols[1].iter().zip(&self.ns).map(|(&v, &n)| v / n).collect();
            cols.push(c1);
            cols.push(s1);
        }
        cols
    }

    /// Projected residual and linear coefficients at `q`.
    fn residual(&self, q: &[T]) -> Option<(Vec<T>, Vec<T>)> {
        let cols = self.basis(q);
        let coef = lstsq::solve(&cols, self.data)?;
        let r = (0..self.data.len())
            .map(|i| {
                let model = cols
                    .iter()
                    .zip(&coef)
                    .fold(T::zero(), |acc, (col, &c)| acc + c * col[i]);
                self.data[i] - model
            })
            .collect();
        Some((r, coef))
    }

    fn cost(&self, q: &[T]) -> T {
        self.residual(q)
            .map(|(r, _)| r.iter().fold(T::zero(), |s, &v| s + v * v))
            .unwrap_or_else(T::infinity)
    }
}

fn levenberg_marquardt<T: Real>(problem: &Problem<'_, T>, mut q: Vec<T>) -> Vec<T> {
    let k = q.len();
    let mut damping = lit::<T>(1e-3);
    let Some((mut r, _)) = problem.residual(&q) else {
        return q;
    };
    let mut cost = r.iter().fold(T::zero(), |s, &v| s + v * v);
    for _ in 0..200 {
        // central-difference Jacobian of the projected residual
        let mut jac: Vec<Vec<T>> = Vec::with_capacity(k);
        for i in 0..k {
            let h = lit::<T>(1e-6) * q[i].abs().max(T::one());
            let mut qp = q.clone();
            let mut qm = q.clone();
            qp[i] = qp[i] + h;
            qm[i] = qm[i] - h;
            let (Some((rp, _)), Some((rm, _))) = (problem.residual(&qp), problem.residual(&qm)) else {
                return q;
            };
            jac.push(rp.iter().zip(&rm).map(|(&a, &b)| (a - b) / (h + h)).collect());
        }
        let mut jtj = vec![vec![T::zero(); k]; k];
        let mut jtr = vec![T::zero(); k];
        for a in 0..k {
            for b in 0..k {
                jtj[a][b] = jac[a].iter().zip(&jac[b]).fold(T::zero(), |s, (&x, &y)| s + x * y);
            }
            jtr[a] = jac[a].iter().zip(&r).fold(T::zero(), |s, (&x, &y)| s + x * y);
        }
        let mut improved = false;
        for _ in 0..30 {
            let cols: Vec<Vec<T>> = (0..k)
                .map(|b| {
                    (0..k)
                        .map(|a| {
                            if a == b {
                                jtj[a][b] * (T::one() + damping) + T::min_positive_value()
                            } else {
                                jtj[a][b]
                            }
                        })
                        .collect()
                })
                .collect();
            let neg: Vec<T> = jtr.iter().map(|&v| -v).collect();
            let Some(step) = lstsq::solve(&cols, &neg) else {
                damping = damping * lit(10.0);
                continue;
            };
            let trial: Vec<T> = q.iter().zip(&step).map(|(&a, &b)| a + b).collect();
            let trial_cost = problem.cost(&trial);
            if trial_cost < cost {
                let rel = step
                    .iter()
                    .zip(&q)
                    .fold(T::zero(), |m, (&s, &v)| m.max(s.abs() / v.abs().max(T::one())));
                q = trial;
                let (nr, _) = problem.residual(&q).expect("accepted step is solvable");
                r = nr;
                let done = (cost - trial_cost) <= lit::<T>(1e-15) * cost || rel < lit::<T>(1e-13);
                cost = trial_cost;
                damping = (damping / lit(10.0)).max(lit(1e-12));
                improved = true;
                if done {
                    return q;
                }
                break;
            }
            damping = damping * lit(10.0);
        }
        if !improved {
            break;
        }
    }
    q
}

fn linear_fit_slope<T: Real>(x: &[T], y: &[T]) -> (T, T) {
    let n = idx::<T>(x.len());
    let mx = x.iter().fold(T::zero(), |s, &v| s + v) / n;
    let my = y.iter().fold(T::zero(), |s, &v| s + v) / n;
    let sxy = x.iter().zip(y).fold(T::zero(), |s, (&a, &b)| s + (a - mx) * (b - my));
    let sxx = x.iter().fold(T::zero(), |s, &a| s + (a - mx) * (a - mx));
    let slope = if sxx > T::zero() { sxy / sxx } else { T::zero() };
    (my - slope * mx, slope)
}

/// Envelope exponent from the decay of local mean squares.
fn envelope_guess<T: Real>(ns: &[T], data: &[T], chunks: usize) -> T {
    let len = data.len() / chunks;
    if len < 2 {
        return T::zero();
    }
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for c in 0..chunks {
        let part = &data[c * len..(c + 1) * len];
        let ms = part.iter().fold(T::zero(), |s, &v| s + v * v) / idx::<T>(len);
        if ms > T::zero() {
            xs.push(ns[c * len + len / 2].ln());
            ys.push(ms.ln());
        }
    }
    if xs.len() < 2 {
        return T::zero();
    }
    -linear_fit_slope(&xs, &ys).1 / lit(2.0)
}

/// Least-squares fit of `n^{-τ} A cos(n θ + φ log n + δ)` (or its `θ = 0`
/// variant) to the tail of a polynomial sequence.
pub fn extract_phase<T: Real>(seq: &PolySequence<T>, model: &AsymptoticModel<T>) -> Result<AsymptoticFit<T>> {
    let (n0, n1) = model.window;
    if seq.len() < 40 {
        return Err(TraError::Domain(format!(
            "asymptotic fit needs at least 40 terms, got {}",
            seq.len()
        )));
    }
    if n0 == 0 || n1 >= seq.len() || n1 < n0 + 8 {
        return Err(TraError::Domain(format!(
            "fit window [{n0}, {n1}] must satisfy 1 ≤ n0, n0 + 8 ≤ n1 < {}",
            seq.len()
        )));
    }
    let data = &seq.values[n0..=n1];
    if data.iter().any(|v| !v.is_finite()) {
        return Err(TraError::Numerical("non-finite sequence values in fit window".into()));
    }
    let ns: Vec<T> = (n0..=n1).map(idx::<T>).collect();
    let logs: Vec<T> = ns.iter().map(|n| n.ln()).collect();
    let problem = Problem {
        ns: ns.clone(),
        logs,
        data,
        oscillation: model.oscillation,
        corrections: model.corrections,
    };

    let start = match model.oscillation {
        Oscillation::Linear { log_term } => {
            // local frequency from P_{n+1} + P_{n-1} ≈ 2 cos(θ + φ/n) P_n
            let chunks = 4;
            let len = (n1 - n0) / chunks;
            let mut inv_n = Vec::new();
            let mut freq = Vec::new();
            for c in 0..chunks {
                let lo = n0.max(1) + c * len;
                let hi = (lo + len).min(n1);
                let mut num = T::zero();
                let mut den = T::zero();
                for n in lo.max(1)..hi {
                    let (pm, p, pp) = (seq.values[n - 1], seq.values[n], seq.values[n + 1]);
                    num = num + (pm + pp) * p;
                    den = den + p * p;
                }
                if den > T::zero() {
                    let cos = (num / (den + den)).max(-T::one()).min(T::one());
                    inv_n.push(T::one() / idx::<T>((lo + hi) / 2));
                    freq.push(cos.acos());
                }
            }
            if freq.is_empty() {
                return Err(TraError::Numerical("sequence vanishes on the fit window".into()));
            }
            let tau = envelope_guess(&ns, data, chunks);
            match log_term {
                LogTerm::Fitted => {
                    let (theta, phi) = linear_fit_slope(&inv_n, &freq);
                    vec![tau, theta, phi]
                }
                LogTerm::Fixed(_) => {
                    let theta = freq.iter().fold(T::zero(), |s, &v| s + v) / idx::<T>(freq.len());
                    vec![tau, theta]
                }
            }
        }
        Oscillation::Logarithmic => {
            // coarse scan over (τ, φ) on a subsample, refined below
            let stride = (data.len() / 200).max(1);
            let sub_idx: Vec<usize> = (0..data.len()).step_by(stride).collect();
            let sub_data: Vec<T> = sub_idx.iter().map(|&i| data[i]).collect();
            let sub = Problem {
                ns: sub_idx.iter().map(|&i| ns[i]).collect(),
                logs: sub_idx.iter().map(|&i| problem.logs[i]).collect(),
                data: &sub_data,
                oscillation: model.oscillation,
                corrections: false,
            };
            let span = problem.logs[problem.logs.len() - 1] - problem.logs[0];
            let tau0 = envelope_guess(&ns, data, 4);
            let mut best = (T::infinity(), vec![tau0, T::one()]);
            for it in 0..=24 {
                let tau = tau0 + lit::<T>(0.125) * (idx::<T>(it) - lit(12.0));
                for ip in 1..=240 {
                    // up to 40 half-periods over the window
                    let phi = idx::<T>(ip) * T::PI() / (lit::<T>(6.0) * span);
                    let q = vec![tau, phi];
                    let c = sub.cost(&q);
                    if c < best.0 {
                        best = (c, q);
                    }
                }
            }
            best.1
        }
    };

    // τ and τ - 1 trade places through the 1/n terms, so seed from the plain model
    let start = if model.corrections {
        let plain = Problem {
            corrections: false,
            ns: problem.ns.clone(),
            logs: problem.logs.clone(),
            ..problem
        };
        levenberg_marquardt(&plain, start)
    } else {
        start
    };
    let q = levenberg_marquardt(&problem, start);
    let (r, coef) = problem
        .residual(&q)
        .ok_or_else(|| TraError::Numerical("degenerate asymptotic basis".into()))?;
    let (tau, mut theta, mut phi) = problem.unpack(&q);
    let (c0, s0) = (coef[0], coef[1]);
    let mut delta = (-s0).atan2(c0);
    if theta < T::zero() {
        theta = -theta;
        phi = -phi;
        delta = -delta;
    }
    let norm = data.iter().fold(T::zero(), |s, &v| s + v * v).sqrt();
    let rnorm = r.iter().fold(T::zero(), |s, &v| s + v * v).sqrt();
    let residual = if norm > T::zero() { rnorm / norm } else { T::infinity() };
    if !(residual <= model.tolerance) {
        return Err(TraError::FitFailure {
            residual: residual.to_f64().unwrap_or(f64::NAN),
            tolerance: model.tolerance.to_f64().unwrap_or(f64::NAN),
        });
    }
    let xi = match model.oscillation {
        Oscillation::Linear { .. } => T::one(),
        Oscillation::Logarithmic => T::zero(),
    };
    Ok(AsymptoticFit {
        amplitude_envelope: (c0 * c0 + s0 * s0).sqrt(),
        tau,
        xi,
        theta,
        phi,
        delta_est: wrap_angle(delta),
        residual,
    })
}

/// Coulomb phase read off the asymptotics of the recursion-generated sequence.
///
/// The fitted constant of `cos(nθ + φ log n + δ_est)` contains, besides the
/// phase shift, the basis-dependent offset `φ log(2 sin θ) + (ℓ+1)θ` (modulo
/// π/2), which is removed using the fitted `θ`. The logarithmic rate is held
/// at its known value `φ = Z/κ`.
pub fn coulomb_phase_from_recursion<T: Real>(
    p: &CoulombParams<T>,
    window: (usize, usize),
    tolerance: T,
) -> Result<(AsymptoticFit<T>, PhaseShift<T>)> {
    let seq = coulomb_recurrence(p).sequence(window.1.max(40))?;
    let eta = p.charge() / p.kappa();
    let model = AsymptoticModel::linear(window)
        .with_log_term(LogTerm::Fixed(eta))
        .with_corrections(true)
        .with_tolerance(tolerance);
    let fit = extract_phase(&seq, &model)?;
    let ell = idx::<T>(p.ell() as usize);
    let offset = fit.phi * (lit::<T>(2.0) * fit.theta.sin()).ln() + (ell + T::one()) * fit.theta;
    Ok((
        fit,
        PhaseShift::new(fit.delta_est - offset, PhaseConvention::ModuloHalfPi),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::real::angle_distance_mod;

    #[test]
    fn vanishing_charge_has_zero_phase() {
        for ell in 0..4 {
            assert!(coulomb_phase(ell, 1e-14_f64).unwrap().abs() < 1e-12);
        }
    }

    #[test]
    fn ell_recurrence_of_phase() {
        for &eta in &[0.3_f64, 1.0, 2.7] {
            let d0 = coulomb_phase(0, eta).unwrap();
            let d1 = coulomb_phase(1, eta).unwrap();
            let expect = (-eta).atan2(1.0);
            assert!(angle_distance_mod(d1 - d0, expect, 2.0 * std::f64::consts::PI) < 1e-12);
        }
    }

    #[test]
    fn phase_odd_in_charge() {
        for &eta in &[0.1_f64, 1.0, 5.0, 20.0] {
            for ell in 0..3 {
                let sum = coulomb_phase(ell, eta).unwrap() + coulomb_phase(ell, -eta).unwrap();
                assert!(sum.abs() < 1e-12);
            }
        }
    }

    #[test]
    fn morse_bound_list() {
        let p = MorseParams::new(1.0, -2.0_f64).unwrap();
        let s = morse_bound_energies(&p);
        assert_eq!(s.eigenvalues, vec![-6.125, -3.125, -1.125, -0.125]);
        assert!(morse_bound_energies(&MorseParams::new(1.0, 0.0_f64).unwrap()).is_empty());
        let s = morse_bound_energies(&MorseParams::new(2.0, -2.0_f64).unwrap());
        assert_eq!(s.eigenvalues, vec![-0.5]);
    }

    #[test]
    fn morse_phase_composition() {
        let p = MorseParams::new(1.0, -2.0_f64).unwrap();
        let e = 0.5_f64;
        let k = (2.0 * e).sqrt();
        let terms = morse_phase_terms(&p, e).unwrap();
        assert_eq!(terms[0], log_gamma_complex(0.0, 2.0 * k).unwrap().1);
        assert_eq!(terms[1], log_gamma_complex(0.5 - 4.0, k).unwrap().1);
        assert_eq!(terms[2], log_gamma_complex(1.0, k).unwrap().1);
        let d = morse_phase_shift(&p, e).unwrap();
        assert!(
            angle_distance_mod(
                d.delta,
                terms[0] - terms[1] - 2.0 * terms[2],
                2.0 * std::f64::consts::PI
            ) < 1e-12
        );
        assert!(morse_phase_shift(&p, 0.0).is_err());
    }

    #[test]
    fn morse_phase_nu_dependence_is_isolated() {
        let e = 1.3_f64;
        let p1 = MorseParams::new(1.0, -2.0_f64).unwrap();
        let p2 = p1.with_nu(3.5).unwrap();
        let d1 = morse_phase_shift(&p1, e).unwrap().delta;
        let d2 = morse_phase_shift(&p2, e).unwrap().delta;
        let t1 = morse_phase_terms(&p1, e).unwrap()[2];
        let t2 = morse_phase_terms(&p2, e).unwrap()[2];
        assert!(angle_distance_mod(d2 - d1, -2.0 * (t2 - t1), 2.0 * std::f64::consts::PI) < 1e-12);
    }

    #[test]
    fn synthetic_cosine_recovered() {
        let values: Vec<f64> = (0..200).map(|n| (0.7 * n as f64 + 0.3).cos()).collect();
        let seq = PolySequence { z: 0.0, values };
        let fit = extract_phase(&seq, &AsymptoticModel::linear((20, 199)).with_tolerance(1e-8)).unwrap();
        assert!((fit.theta - 0.7).abs() < 1e-6);
        assert!((fit.delta_est - 0.3).abs() < 1e-6);
        assert!(fit.tau.abs() < 1e-6);
        assert!((fit.amplitude_envelope - 1.0).abs() < 1e-6);
    }

    #[test]
    fn synthetic_full_model_recovered() {
        let (tau, theta, phi, delta, amp) = (0.5, 1.1, 0.8, -2.0, 3.0);
        let values: Vec<f64> = (0..400)
            .map(|n| {
                let n = (n as f64).max(1.0);
                amp * n.powf(-tau) * (n * theta + phi * n.ln() + delta).cos()
            })
            .collect();
        let seq = PolySequence { z: 0.0, values };
        let model = AsymptoticModel::linear((60, 399))
            .with_log_term(LogTerm::Fitted)
            .with_tolerance(1e-8);
        let fit = extract_phase(&seq, &model).unwrap();
        assert!((fit.tau - tau).abs() < 1e-6, "{fit:?}");
        assert!((fit.theta - theta).abs() < 1e-6);
        assert!((fit.phi - phi).abs() < 1e-6);
        assert!((fit.delta_est - delta).abs() < 1e-6);

        let values: Vec<f64> = (0..3000)
            .map(|n| {
                let n = (n as f64).max(1.0);
                n.powf(-0.25) * (2.0 * n.ln() + 0.4).cos()
            })
            .collect();
        let seq = PolySequence { z: 0.0, values };
        let fit = extract_phase(&seq, &AsymptoticModel::logarithmic((20, 2999)).with_tolerance(1e-8)).unwrap();
        assert!(
            (fit.phi - 2.0).abs() < 1e-6 && (fit.delta_est - 0.4).abs() < 1e-6,
            "{fit:?}"
        );
        assert_eq!(fit.theta, 0.0);
    }

    #[test]
    fn fit_failure_reported() {
        let values: Vec<f64> = (0..100).map(|n| ((n * 7919) % 13) as f64 - 6.0).collect();
        let seq = PolySequence { z: 0.0, values };
        let err = extract_phase(&seq, &AsymptoticModel::linear((10, 99)).with_tolerance(1e-6)).unwrap_err();
        assert!(matches!(err, TraError::FitFailure { .. }));
        let short = PolySequence {
            z: 0.0,
            values: vec![1.0; 10],
        };
        assert!(extract_phase(&short, &AsymptoticModel::linear((1, 9))).is_err());
    }
}
