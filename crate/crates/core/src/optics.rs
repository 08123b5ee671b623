//! Truncated-Fock-space field states: coherent states, even/odd cat states,
//! the number-phase operator e^{iφ a†a}, and truncation-error accounting.
//!
//! The cavity field lives on the basis {|0⟩ … |n_max⟩}. The truncation level
//! is chosen by a tail-mass criterion instead of a fixed size: the Poisson
//! weight a coherent state would place above n_max must stay below a caller
//! budget `tail_epsilon`. Truncated states are renormalized, so the norm
//! invariant of the state type holds uniformly.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::hilbert::{CompositeSpace, Operator, StateVector};

/// Largest mean photon number |α|² the linear-space Poisson recurrences
/// support without underflow of e^{−|α|²}.
const MAX_MEAN_PHOTONS: f64 = 500.0;

/// Hard cap on the searched truncation level.
const N_MAX_CAP: usize = 4096;

/// Fock basis {|0⟩ … |n_max⟩} plus the tail-mass budget it must honor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FockTruncation {
    n_max: usize,
    tail_epsilon: f64,
}

impl FockTruncation {
    pub fn new(n_max: usize, tail_epsilon: f64) -> Result<Self> {
        if n_max < 1 {
            return Err(Error::InvalidArgument("truncation needs n_max >= 1".into()));
        }
        if !tail_epsilon.is_finite() || tail_epsilon <= 0.0 {
            return Err(Error::InvalidArgument(format!(
                "tail_epsilon must be positive, got {tail_epsilon}"
            )));
        }
        Ok(FockTruncation { n_max, tail_epsilon })
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn tail_epsilon(&self) -> f64 {
        self.tail_epsilon
    }

    /// Hilbert-space dimension n_max + 1.
    pub fn dim(&self) -> usize {
        self.n_max + 1
    }

    /// Errors unless the Poisson tail of |α|² beyond n_max fits the budget.
    fn check_tail(&self, alpha: Complex64) -> Result<()> {
        let tail = poisson_tail(alpha.norm_sqr(), self.n_max);
        if tail > self.tail_epsilon {
            return Err(Error::InsufficientTruncation {
                tail,
                epsilon: self.tail_epsilon,
                n_max: self.n_max,
            });
        }
        Ok(())
    }
}

/// Coherent field state |α⟩ under a chosen truncation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoherentSpec {
    pub alpha: Complex64,
    pub truncation: FockTruncation,
}

/// Photon-number parity of a cat state: even (+) or odd (−).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CatParity {
    Plus,
    Minus,
}

/// Cat state (|α⟩ ± |−α⟩)/√(N±) under a chosen truncation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CatState {
    pub parity: CatParity,
    pub alpha: Complex64,
    pub truncation: FockTruncation,
}

impl CatState {
    /// N± = 2(1 ± e^{−2|α|²}), the exact (untruncated) normalization.
    pub fn normalization(&self) -> f64 {
        let overlap = (-2.0 * self.alpha.norm_sqr()).exp();
        match self.parity {
            CatParity::Plus => 2.0 * (1.0 + overlap),
            CatParity::Minus => 2.0 * (1.0 - overlap),
        }
    }
}

fn check_mean_photons(alpha: Complex64) -> Result<()> {
    let lambda = alpha.norm_sqr();
    if lambda > MAX_MEAN_PHOTONS {
        return Err(Error::InvalidArgument(format!(
            "mean photon number {lambda} exceeds supported maximum {MAX_MEAN_PHOTONS}"
        )));
    }
    Ok(())
}

/// Σ_{n > n_max} e^{−λ} λ^n/n!, summed term by term.
///
/// Terms decay faster than geometrically once n > λ, so summation stops when
/// further terms cannot affect the result.
fn poisson_tail(lambda: f64, n_max: usize) -> f64 {
    if lambda == 0.0 {
        return 0.0;
    }
    let mut term = (-lambda).exp();
    for n in 1..=n_max {
        term *= lambda / n as f64;
    }
    let mut tail = 0.0;
    let mut n = n_max + 1;
    loop {
        term *= lambda / n as f64;
        tail += term;
        if (n as f64) > lambda && (term < 1e-300 || term < tail * 1e-18) {
            break;
        }
        n += 1;
        if n > n_max + 1_000_000 {
            break;
        }
    }
    tail
}

/// Unnormalized closed-form amplitudes c_n = e^{−|α|²/2} α^n/√n!.
fn coherent_amps(alpha: Complex64, n_max: usize) -> Vec<Complex64> {
    let mut amps = Vec::with_capacity(n_max + 1);
    let mut c = Complex64::new((-0.5 * alpha.norm_sqr()).exp(), 0.0);
    amps.push(c);
    for n in 1..=n_max {
        c *= alpha / (n as f64).sqrt();
        amps.push(c);
    }
    amps
}

/// The coherent state |α⟩, renormalized on the truncated space.
pub fn coherent_state(spec: &CoherentSpec) -> Result<StateVector> {
    check_mean_photons(spec.alpha)?;
    spec.truncation.check_tail(spec.alpha)?;
    let amps = coherent_amps(spec.alpha, spec.truncation.n_max());
    StateVector::normalized(CompositeSpace::single(spec.truncation.dim())?, amps)
}

/// The cat state (|α⟩ ± |−α⟩)/√(N±), renormalized on the truncated space.
///
/// Built as c_n(α)·(1 ± (−1)^n), so the suppressed-parity amplitudes are
/// exactly zero rather than a difference of rounded values.
pub fn cat_state(cat: &CatState) -> Result<StateVector> {
    check_mean_photons(cat.alpha)?;
    if cat.parity == CatParity::Minus && cat.alpha.norm_sqr() == 0.0 {
        return Err(Error::InvalidArgument(
            "odd cat state is undefined at alpha = 0".into(),
        ));
    }
    cat.truncation.check_tail(cat.alpha)?;
    let mut amps = coherent_amps(cat.alpha, cat.truncation.n_max());
    for (n, a) in amps.iter_mut().enumerate() {
        let keep = match cat.parity {
            CatParity::Plus => n % 2 == 0,
            CatParity::Minus => n % 2 == 1,
        };
        *a = if keep { 2.0 * *a } else { Complex64::new(0.0, 0.0) };
    }
    StateVector::normalized(CompositeSpace::single(cat.truncation.dim())?, amps)
}

/// Diagonal unitary e^{iφ a†a}: entry n is e^{iφn}.
pub fn number_phase_op(phi: f64, dim: usize) -> Result<Operator> {
    if dim < 2 {
        return Err(Error::InvalidArgument(format!(
            "number-phase operator needs dim >= 2, got {dim}"
        )));
    }
    let phases = (0..dim)
        .map(|n| Complex64::from_polar(1.0, phi * n as f64))
        .collect();
    Operator::diagonal_unitary(phases)
}

/// Smallest n_max whose Poisson tail mass beyond n_max is ≤ tail_epsilon.
pub fn choose_truncation(alpha: Complex64, tail_epsilon: f64) -> Result<FockTruncation> {
    if !(tail_epsilon > 0.0 && tail_epsilon < 1.0) {
        return Err(Error::InvalidArgument(format!(
            "tail_epsilon must lie in (0, 1), got {tail_epsilon}"
        )));
    }
    check_mean_photons(alpha)?;
    let lambda = alpha.norm_sqr();
    for n_max in 1..=N_MAX_CAP {
        let tail = poisson_tail(lambda, n_max);
        if tail <= tail_epsilon {
            return Ok(FockTruncation { n_max, tail_epsilon });
        }
    }
    Err(Error::InsufficientTruncation {
        tail: poisson_tail(lambda, N_MAX_CAP),
        epsilon: tail_epsilon,
        n_max: N_MAX_CAP,
    })
}
