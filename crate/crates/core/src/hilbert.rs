//! Composite-space complex state vectors and dense operators.
//!
//! A [`CompositeSpace`] is an ordered list of subsystem dimensions. Basis
//! ordering is lexicographic with subsystem 0 most significant: for dims
//! `[d0, d1, d2]` the basis index of digits `(i0, i1, i2)` is
//! `(i0 * d1 + i1) * d2 + i2`. Atoms come first, the cavity mode last, so
//! written-out kets read left to right like `|atom ...⟩|cavity⟩`.
//!
//! States and operators are immutable after construction; every operation
//! returns a fresh value and is safe to call from multiple threads.

use ndarray::Array2;
use num_complex::Complex64;
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::error::{Error, Result};

/// Global tolerance for unit-norm and unitarity checks.
pub const TOL: f64 = 1e-10;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Uniform f64 in [0, 1) from the top 53 bits of a u64 draw.
///
/// Hand-rolled so sampled outcomes are bit-identical across platforms and
/// rand releases; only the ChaCha8 stream itself is relied upon.
pub(crate) fn uniform01(rng: &mut impl RngCore) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / 9007199254740992.0)
}

/// Independent per-shot seed derived from (seed, shot_index), splitmix64 step.
pub fn derive_seed(seed: u64, shot_index: u64) -> u64 {
    let mut z = seed ^ shot_index.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(1);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Ordered list of subsystem dimensions of a tensor-product space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompositeSpace {
    dims: Vec<usize>,
}

impl CompositeSpace {
    /// Every dimension must be >= 2 and the list non-empty.
    pub fn new(dims: Vec<usize>) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::InvalidArgument("space needs at least one subsystem".into()));
        }
        if let Some(&d) = dims.iter().find(|&&d| d < 2) {
            return Err(Error::InvalidArgument(format!("subsystem dimension {d} < 2")));
        }
        Ok(CompositeSpace { dims })
    }

    /// n two-level subsystems.
    pub fn qubits(n: usize) -> Result<Self> {
        CompositeSpace::new(vec![2; n])
    }

    /// A single subsystem of the given dimension.
    pub fn single(dim: usize) -> Result<Self> {
        CompositeSpace::new(vec![dim])
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn subsystem_count(&self) -> usize {
        self.dims.len()
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().product()
    }

    /// Index stride of subsystem `k`: the product of all dimensions after it.
    pub fn stride(&self, k: usize) -> usize {
        self.dims[k + 1..].iter().product()
    }

    /// Digit of subsystem `k` inside a flat basis index.
    pub fn digit(&self, index: usize, k: usize) -> usize {
        (index / self.stride(k)) % self.dims[k]
    }

    pub fn index_of(&self, digits: &[usize]) -> usize {
        debug_assert_eq!(digits.len(), self.dims.len());
        digits
            .iter()
            .zip(&self.dims)
            .fold(0, |acc, (&i, &d)| acc * d + i)
    }

    pub fn digits_of(&self, index: usize) -> Vec<usize> {
        let mut digits = vec![0; self.dims.len()];
        let mut rem = index;
        for k in (0..self.dims.len()).rev() {
            digits[k] = rem % self.dims[k];
            rem /= self.dims[k];
        }
        digits
    }

    fn check_subsystem(&self, k: usize) -> Result<()> {
        if k >= self.dims.len() {
            return Err(Error::InvalidSubsystem {
                index: k,
                count: self.dims.len(),
            });
        }
        Ok(())
    }

    fn concat(&self, other: &CompositeSpace) -> CompositeSpace {
        let mut dims = self.dims.clone();
        dims.extend_from_slice(&other.dims);
        CompositeSpace { dims }
    }
}

/// Normalized complex amplitude vector over a [`CompositeSpace`].
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    space: CompositeSpace,
    amps: Vec<Complex64>,
}

impl StateVector {
    /// Wraps amplitudes that are already normalized to within [`TOL`].
    pub fn new(space: CompositeSpace, amps: Vec<Complex64>) -> Result<Self> {
        if amps.len() != space.total_dim() {
            return Err(Error::InvalidArgument(format!(
                "amplitude count {} does not match space dimension {}",
                amps.len(),
                space.total_dim()
            )));
        }
        let state = StateVector { space, amps };
        let norm = state.norm();
        if (norm - 1.0).abs() > TOL {
            return Err(Error::NormViolation { norm });
        }
        Ok(state)
    }

    /// Renormalizes the given amplitudes; errors on a vanishing vector.
    pub fn normalized(space: CompositeSpace, mut amps: Vec<Complex64>) -> Result<Self> {
        if amps.len() != space.total_dim() {
            return Err(Error::InvalidArgument(format!(
                "amplitude count {} does not match space dimension {}",
                amps.len(),
                space.total_dim()
            )));
        }
        let norm: f64 = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if norm < 1e-150 {
            return Err(Error::NormViolation { norm });
        }
        for a in &mut amps {
            *a /= norm;
        }
        Ok(StateVector { space, amps })
    }

    /// The basis state |index⟩.
    pub fn basis(space: CompositeSpace, index: usize) -> Result<Self> {
        let dim = space.total_dim();
        if index >= dim {
            return Err(Error::InvalidArgument(format!(
                "basis index {index} out of range for dimension {dim}"
            )));
        }
        let mut amps = vec![c(0.0, 0.0); dim];
        amps[index] = c(1.0, 0.0);
        Ok(StateVector { space, amps })
    }

    /// Single two-level subsystem with amplitudes (c0, c1).
    pub fn qubit(c0: Complex64, c1: Complex64) -> Result<Self> {
        StateVector::new(CompositeSpace::single(2)?, vec![c0, c1])
    }

    pub fn space(&self) -> &CompositeSpace {
        &self.space
    }

    pub fn amps(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn amp(&self, index: usize) -> Complex64 {
        self.amps[index]
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// ⟨self|other⟩.
    pub fn inner(&self, other: &StateVector) -> Result<Complex64> {
        if self.space != other.space {
            return Err(Error::SpaceMismatch {
                left: self.space.dims.clone(),
                right: other.space.dims.clone(),
            });
        }
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// Kronecker product with `other`, over the concatenated space.
    pub fn tensor(&self, other: &StateVector) -> StateVector {
        let space = self.space.concat(&other.space);
        let mut amps = Vec::with_capacity(self.amps.len() * other.amps.len());
        for a in &self.amps {
            for b in &other.amps {
                amps.push(a * b);
            }
        }
        StateVector { space, amps }
    }

    /// Applies `op` on a single subsystem, identity elsewhere.
    pub fn apply_on(&self, op: &Operator, target: usize) -> Result<StateVector> {
        self.space.check_subsystem(target)?;
        let d = self.space.dims[target];
        if op.dim != d {
            return Err(Error::DimensionMismatch {
                op_dim: op.dim,
                target_dim: d,
            });
        }
        op.require_unitary()?;

        let total = self.space.total_dim();
        let stride = self.space.stride(target);
        let mut out = vec![c(0.0, 0.0); total];

        if let Some(diag) = op.diag.as_deref() {
            for (idx, amp) in self.amps.iter().enumerate() {
                out[idx] = diag[(idx / stride) % d] * amp;
            }
        } else {
            let outer = total / (d * stride);
            for o in 0..outer {
                for s in 0..stride {
                    let base = o * d * stride + s;
                    for r in 0..d {
                        let mut acc = c(0.0, 0.0);
                        for col in 0..d {
                            acc += op.entries[[r, col]] * self.amps[base + col * stride];
                        }
                        out[base + r * stride] = acc;
                    }
                }
            }
        }
        self.finish_evolution(out)
    }

    /// Applies a joint unitary on an ordered pair of distinct subsystems.
    ///
    /// The operator acts on the basis |i_{t0}, i_{t1}⟩ with joint index
    /// `i_{t0} * dims[t1] + i_{t1}` (first target most significant).
    pub fn apply_joint(&self, op: &Operator, targets: (usize, usize)) -> Result<StateVector> {
        let (t0, t1) = targets;
        self.space.check_subsystem(t0)?;
        self.space.check_subsystem(t1)?;
        if t0 == t1 {
            return Err(Error::RepeatedTarget { index: t0 });
        }
        let (d0, d1) = (self.space.dims[t0], self.space.dims[t1]);
        if op.dim != d0 * d1 {
            return Err(Error::DimensionMismatch {
                op_dim: op.dim,
                target_dim: d0 * d1,
            });
        }
        op.require_unitary()?;

        let total = self.space.total_dim();
        let (s0, s1) = (self.space.stride(t0), self.space.stride(t1));
        let mut out = vec![c(0.0, 0.0); total];

        if let Some(diag) = op.diag.as_deref() {
            for (idx, amp) in self.amps.iter().enumerate() {
                let joint = ((idx / s0) % d0) * d1 + (idx / s1) % d1;
                out[idx] = diag[joint] * amp;
            }
        } else {
            for base in 0..total {
                if (base / s0) % d0 != 0 || (base / s1) % d1 != 0 {
                    continue;
                }
                for r0 in 0..d0 {
                    for r1 in 0..d1 {
                        let row = r0 * d1 + r1;
                        let mut acc = c(0.0, 0.0);
                        for c0 in 0..d0 {
                            for c1 in 0..d1 {
                                acc += op.entries[[row, c0 * d1 + c1]]
                                    * self.amps[base + c0 * s0 + c1 * s1];
                            }
                        }
                        out[base + r0 * s0 + r1 * s1] = acc;
                    }
                }
            }
        }
        self.finish_evolution(out)
    }

    /// Norm invariant enforced after every evolution.
    fn finish_evolution(&self, amps: Vec<Complex64>) -> Result<StateVector> {
        let state = StateVector {
            space: self.space.clone(),
            amps,
        };
        let norm = state.norm();
        if (norm - 1.0).abs() > TOL {
            return Err(Error::NormViolation { norm });
        }
        Ok(state)
    }

    /// |⟨self|other⟩| in [0, 1]; equals 1 iff the states agree up to a
    /// global phase.
    pub fn fidelity_up_to_phase(&self, other: &StateVector) -> Result<f64> {
        Ok(self.inner(other)?.norm().min(1.0))
    }

    /// Tr(ρ²) of the reduced density operator on one subsystem; 1 iff the
    /// state is a product across that cut.
    pub fn reduced_purity(&self, subsystem: usize) -> Result<f64> {
        self.space.check_subsystem(subsystem)?;
        let d = self.space.dims[subsystem];
        let stride = self.space.stride(subsystem);
        let total = self.space.total_dim();
        let outer = total / (d * stride);

        let mut purity = 0.0;
        for k in 0..d {
            for kp in 0..d {
                let mut rho = c(0.0, 0.0);
                for o in 0..outer {
                    let base = o * d * stride;
                    for s in 0..stride {
                        rho += self.amps[base + k * stride + s]
                            * self.amps[base + kp * stride + s].conj();
                    }
                }
                purity += rho.norm_sqr();
            }
        }
        Ok(purity)
    }

    /// Born marginal probabilities over the basis labels of one subsystem.
    pub fn marginals(&self, subsystem: usize) -> Result<Vec<f64>> {
        self.space.check_subsystem(subsystem)?;
        let d = self.space.dims[subsystem];
        let stride = self.space.stride(subsystem);
        let mut probs = vec![0.0; d];
        for (idx, amp) in self.amps.iter().enumerate() {
            probs[(idx / stride) % d] += amp.norm_sqr();
        }
        Ok(probs)
    }

    /// Projects one subsystem onto a basis label and renormalizes.
    ///
    /// Returns the Born probability of the label and the collapsed state on
    /// the full space.
    pub fn collapse(&self, subsystem: usize, label: usize) -> Result<(f64, StateVector)> {
        self.space.check_subsystem(subsystem)?;
        let d = self.space.dims[subsystem];
        if label >= d {
            return Err(Error::InvalidArgument(format!(
                "label {label} out of range for subsystem dimension {d}"
            )));
        }
        let stride = self.space.stride(subsystem);
        let mut amps = vec![c(0.0, 0.0); self.amps.len()];
        let mut prob = 0.0;
        for (idx, amp) in self.amps.iter().enumerate() {
            if (idx / stride) % d == label {
                amps[idx] = *amp;
                prob += amp.norm_sqr();
            }
        }
        if prob <= 0.0 {
            return Err(Error::ZeroProbabilityCollapse { subsystem, label });
        }
        let scale = 1.0 / prob.sqrt();
        for a in &mut amps {
            *a *= scale;
        }
        Ok((
            prob,
            StateVector {
                space: self.space.clone(),
                amps,
            },
        ))
    }

    /// Like [`collapse`](Self::collapse) but drops the collapsed subsystem,
    /// returning a state on the remaining factors.
    pub fn peel(&self, subsystem: usize, label: usize) -> Result<(f64, StateVector)> {
        self.space.check_subsystem(subsystem)?;
        if self.space.subsystem_count() == 1 {
            return Err(Error::InvalidArgument(
                "cannot peel the only subsystem of a space".into(),
            ));
        }
        let d = self.space.dims[subsystem];
        if label >= d {
            return Err(Error::InvalidArgument(format!(
                "label {label} out of range for subsystem dimension {d}"
            )));
        }
        let stride = self.space.stride(subsystem);
        let mut rest_dims = self.space.dims.clone();
        rest_dims.remove(subsystem);
        let rest_space = CompositeSpace { dims: rest_dims };

        let mut amps = Vec::with_capacity(rest_space.total_dim());
        let mut prob = 0.0;
        for (idx, amp) in self.amps.iter().enumerate() {
            if (idx / stride) % d == label {
                amps.push(*amp);
                prob += amp.norm_sqr();
            }
        }
        if prob <= 0.0 {
            return Err(Error::ZeroProbabilityCollapse { subsystem, label });
        }
        let scale = 1.0 / prob.sqrt();
        for a in &mut amps {
            *a *= scale;
        }
        Ok((prob, StateVector { space: rest_space, amps }))
    }

    /// Samples a projective measurement of one subsystem in its basis.
    ///
    /// The outcome is drawn from the Born marginals with a ChaCha8 stream
    /// seeded by `rng_seed`, so a fixed seed reproduces bit-identical
    /// results across runs and platforms.
    pub fn measure_subsystem(&self, subsystem: usize, rng_seed: u64) -> Result<MeasurementOutcome> {
        let probs = self.marginals(subsystem)?;
        let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
        let u = uniform01(&mut rng);
        let mut label = probs.len() - 1;
        let mut cum = 0.0;
        for (k, &p) in probs.iter().enumerate() {
            cum += p;
            if u < cum {
                label = k;
                break;
            }
        }
        // Guard against float slop at the top end of the CDF: never select a
        // zero-probability label.
        while probs[label] <= 0.0 {
            label -= 1;
        }
        let (probability, post_state) = self.collapse(subsystem, label)?;
        Ok(MeasurementOutcome {
            subsystem_index: subsystem,
            basis_label: label,
            probability,
            post_state,
        })
    }

    /// √⟨target|ρ_sub|target⟩ where ρ_sub is the reduced state on
    /// `subsystem` and `target` is a pure state on that subsystem alone.
    pub fn fidelity_vs_pure_on_subsystem(
        &self,
        subsystem: usize,
        target: &StateVector,
    ) -> Result<f64> {
        self.space.check_subsystem(subsystem)?;
        let d = self.space.dims[subsystem];
        if target.space.total_dim() != d {
            return Err(Error::SpaceMismatch {
                left: vec![d],
                right: target.space.dims.clone(),
            });
        }
        let stride = self.space.stride(subsystem);
        let total = self.space.total_dim();
        let outer = total / (d * stride);
        let mut fid_sq = 0.0;
        for o in 0..outer {
            let base = o * d * stride;
            for s in 0..stride {
                let mut overlap = c(0.0, 0.0);
                for k in 0..d {
                    overlap += target.amps[k].conj() * self.amps[base + k * stride + s];
                }
                fid_sq += overlap.norm_sqr();
            }
        }
        Ok(fid_sq.sqrt().min(1.0))
    }

    /// √⟨target|ρ_rest|target⟩ where ρ_rest is the reduced state on
    /// everything except `traced_subsystem` (factors kept in order) and
    /// `target` is a pure state on that complement.
    pub fn fidelity_vs_pure_on_complement(
        &self,
        traced_subsystem: usize,
        target: &StateVector,
    ) -> Result<f64> {
        self.space.check_subsystem(traced_subsystem)?;
        let d = self.space.dims[traced_subsystem];
        let stride = self.space.stride(traced_subsystem);
        let rest_dim = self.space.total_dim() / d;
        if target.space.total_dim() != rest_dim {
            return Err(Error::SpaceMismatch {
                left: vec![rest_dim],
                right: target.space.dims.clone(),
            });
        }
        let mut fid_sq = 0.0;
        for k in 0..d {
            let mut overlap = c(0.0, 0.0);
            let mut rest = 0;
            for (idx, amp) in self.amps.iter().enumerate() {
                if (idx / stride) % d == k {
                    overlap += target.amps[rest].conj() * amp;
                    rest += 1;
                }
            }
            fid_sq += overlap.norm_sqr();
        }
        Ok(fid_sq.sqrt().min(1.0))
    }
}

/// Result of sampling one subsystem in its computational basis.
#[derive(Debug, Clone)]
pub struct MeasurementOutcome {
    pub subsystem_index: usize,
    pub basis_label: usize,
    pub probability: f64,
    pub post_state: StateVector,
}

/// Dense square matrix acting on a single subsystem or a joint pair.
///
/// The diagonal is detected once at construction so the apply paths can
/// branch to an O(total_dim) phase multiply without rescanning the matrix.
#[derive(Debug, Clone)]
pub struct Operator {
    dim: usize,
    entries: Array2<Complex64>,
    unitary_flag: bool,
    diag: Option<Vec<Complex64>>,
}

/// Diagonal entries when every off-diagonal entry is exactly zero.
fn scan_diagonal(entries: &Array2<Complex64>, dim: usize) -> Option<Vec<Complex64>> {
    for i in 0..dim {
        for j in 0..dim {
            if i != j && (entries[[i, j]].re != 0.0 || entries[[i, j]].im != 0.0) {
                return None;
            }
        }
    }
    Some((0..dim).map(|i| entries[[i, i]]).collect())
}

impl Operator {
    /// Wraps a matrix after verifying ‖U†U − I‖_max ≤ [`TOL`].
    pub fn unitary(entries: Array2<Complex64>) -> Result<Self> {
        let (rows, cols) = entries.dim();
        if rows != cols {
            return Err(Error::InvalidArgument(format!(
                "operator matrix is {rows}x{cols}, not square"
            )));
        }
        let diag = scan_diagonal(&entries, rows);
        let op = Operator {
            dim: rows,
            entries,
            unitary_flag: true,
            diag,
        };
        let defect = op.unitarity_defect();
        if defect > TOL {
            return Err(Error::NonUnitary { defect });
        }
        Ok(op)
    }

    /// Diagonal unitary from unit-modulus phases.
    pub fn diagonal_unitary(phases: Vec<Complex64>) -> Result<Self> {
        let dim = phases.len();
        for p in &phases {
            if (p.norm() - 1.0).abs() > TOL {
                return Err(Error::NonUnitary {
                    defect: (p.norm_sqr() - 1.0).abs(),
                });
            }
        }
        let mut entries = Array2::from_elem((dim, dim), c(0.0, 0.0));
        for (i, p) in phases.iter().enumerate() {
            entries[[i, i]] = *p;
        }
        Ok(Operator {
            dim,
            entries,
            unitary_flag: true,
            diag: Some(phases),
        })
    }

    pub fn identity(dim: usize) -> Self {
        Operator {
            dim,
            entries: Array2::from_shape_fn((dim, dim), |(i, j)| {
                if i == j {
                    c(1.0, 0.0)
                } else {
                    c(0.0, 0.0)
                }
            }),
            unitary_flag: true,
            diag: Some(vec![c(1.0, 0.0); dim]),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &Array2<Complex64> {
        &self.entries
    }

    pub fn is_unitary(&self) -> bool {
        self.unitary_flag
    }

    fn require_unitary(&self) -> Result<()> {
        if !self.unitary_flag {
            return Err(Error::NonUnitary {
                defect: self.unitarity_defect(),
            });
        }
        Ok(())
    }

    /// ‖U†U − I‖_max, the worst entrywise deviation from unitarity.
    pub fn unitarity_defect(&self) -> f64 {
        let mut defect: f64 = 0.0;
        for i in 0..self.dim {
            for j in 0..self.dim {
                let mut acc = c(0.0, 0.0);
                for k in 0..self.dim {
                    acc += self.entries[[k, i]].conj() * self.entries[[k, j]];
                }
                let expect = if i == j { 1.0 } else { 0.0 };
                defect = defect.max((acc - c(expect, 0.0)).norm());
            }
        }
        defect
    }

    /// Diagonal entries when every off-diagonal entry is exactly zero
    /// (detected at construction).
    pub fn diagonal(&self) -> Option<Vec<Complex64>> {
        self.diag.clone()
    }

    pub fn adjoint(&self) -> Operator {
        let entries = Array2::from_shape_fn((self.dim, self.dim), |(i, j)| {
            self.entries[[j, i]].conj()
        });
        Operator {
            dim: self.dim,
            entries,
            unitary_flag: self.unitary_flag,
            diag: self.diag.as_ref().map(|d| d.iter().map(|p| p.conj()).collect()),
        }
    }

    /// Matrix product self · other.
    pub fn compose(&self, other: &Operator) -> Result<Operator> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                op_dim: self.dim,
                target_dim: other.dim,
            });
        }
        let entries = self.entries.dot(&other.entries);
        let diag = match (&self.diag, &other.diag) {
            (Some(a), Some(b)) => Some(a.iter().zip(b).map(|(x, y)| x * y).collect()),
            _ => scan_diagonal(&entries, self.dim),
        };
        Ok(Operator {
            dim: self.dim,
            entries,
            unitary_flag: self.unitary_flag && other.unitary_flag,
            diag,
        })
    }

    /// Kronecker product self ⊗ other.
    pub fn kron(&self, other: &Operator) -> Operator {
        let dim = self.dim * other.dim;
        let entries = Array2::from_shape_fn((dim, dim), |(i, j)| {
            let (i0, i1) = (i / other.dim, i % other.dim);
            let (j0, j1) = (j / other.dim, j % other.dim);
            self.entries[[i0, j0]] * other.entries[[i1, j1]]
        });
        let diag = match (&self.diag, &other.diag) {
            (Some(a), Some(b)) => {
                Some(a.iter().flat_map(|x| b.iter().map(move |y| x * y)).collect())
            }
            _ => None,
        };
        Operator {
            dim,
            entries,
            unitary_flag: self.unitary_flag && other.unitary_flag,
            diag,
        }
    }

    /// Largest entrywise |difference| against another operator.
    pub fn max_entry_deviation(&self, other: &Operator) -> f64 {
        let mut dev: f64 = 0.0;
        for i in 0..self.dim {
            for j in 0..self.dim {
                dev = dev.max((self.entries[[i, j]] - other.entries[[i, j]]).norm());
            }
        }
        dev
    }
}
