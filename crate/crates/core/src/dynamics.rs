//! Atom-field and single-atom unitaries: resonant Jaynes-Cummings evolution,
//! dispersive number-phase couplings, Hadamard, Ramsey rotations, and the
//! conversions between the dispersive phase φ and the knobs (g, Δ, τ).
//!
//! Basis conventions, fixed here and relied on everywhere downstream:
//! two-level atoms order their levels [e, f] = [0, 1]; three-level atoms
//! order theirs [f, g, e] = [0, 1, 2] so the {f, g} qubit subspace occupies
//! the leading 2×2 block and level e rides along inert.

use ndarray::array;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::hilbert::{Operator, StateVector, TOL};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Two-level atom, levels [e, f] = indices [0, 1].
pub struct TwoLevelAtom;

impl TwoLevelAtom {
    pub const E: usize = 0;
    pub const F: usize = 1;
    pub const DIM: usize = 2;
}

/// Three-level cascade atom; the {f, g} pair is the working qubit and e is
/// never populated by any operation here.
pub struct ThreeLevelAtom;

impl ThreeLevelAtom {
    pub const F: usize = 0;
    pub const G: usize = 1;
    pub const E: usize = 2;
    pub const DIM: usize = 3;
}

/// Physical knobs of a dispersive interaction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InteractionParams {
    pub g: f64,
    pub delta: f64,
    pub tau: f64,
}

impl InteractionParams {
    pub fn new(g: f64, delta: f64, tau: f64) -> Result<Self> {
        if !g.is_finite() || g <= 0.0 {
            return Err(Error::InvalidArgument(format!(
                "coupling constant must be positive, got {g}"
            )));
        }
        if delta == 0.0 {
            return Err(Error::InvalidArgument(
                "detuning must be nonzero for dispersive operations".into(),
            ));
        }
        Ok(InteractionParams { g, delta, tau })
    }

    /// φ = g²τ/Δ, recomputed on access.
    pub fn phi(&self) -> f64 {
        self.g * self.g * self.tau / self.delta
    }
}

/// Resonant Jaynes-Cummings rotation by the dimensionless pulse area gτ.
///
/// Acts on the manifolds {|e,n⟩, |f,n+1⟩} with mixing angle θ = gτ√(n+1):
/// |e,n⟩ → cos θ |e,n⟩ − i sin θ |f,n+1⟩ and symmetrically on the partner;
/// |f,0⟩ is left alone. The atom subsystem must be two-level with the
/// [e, f] ordering above.
///
/// Errors if the input holds population above 1e−12 on |e, n_max⟩, the one
/// state whose partner |f, n_max+1⟩ falls outside the truncated space.
pub fn jc_resonant(
    state: &StateVector,
    g_tau: f64,
    atom: usize,
    cavity: usize,
) -> Result<StateVector> {
    let dims = state.space().dims();
    if atom >= dims.len() || cavity >= dims.len() {
        return Err(Error::InvalidSubsystem {
            index: atom.max(cavity),
            count: dims.len(),
        });
    }
    if atom == cavity {
        return Err(Error::RepeatedTarget { index: atom });
    }
    if dims[atom] != TwoLevelAtom::DIM {
        return Err(Error::DimensionMismatch {
            op_dim: TwoLevelAtom::DIM,
            target_dim: dims[atom],
        });
    }
    let cav_dim = dims[cavity];
    let n_max = cav_dim - 1;
    let s_atom = state.space().stride(atom);
    let s_cav = state.space().stride(cavity);

    let mut leak = 0.0;
    for (idx, amp) in state.amps().iter().enumerate() {
        if (idx / s_atom) % 2 == TwoLevelAtom::E && (idx / s_cav) % cav_dim == n_max {
            leak += amp.norm_sqr();
        }
    }
    if leak > 1e-12 {
        return Err(Error::TruncationLeakage { population: leak });
    }

    let mut out = state.amps().to_vec();
    for idx in 0..out.len() {
        let a_lvl = (idx / s_atom) % 2;
        let n = (idx / s_cav) % cav_dim;
        if a_lvl != TwoLevelAtom::E || n >= n_max {
            continue;
        }
        let partner = idx + s_atom + s_cav; // |f, n+1⟩ with the same rest
        let theta = g_tau * ((n + 1) as f64).sqrt();
        let (cos_t, sin_t) = (theta.cos(), theta.sin());
        let ae = out[idx];
        let af = out[partner];
        out[idx] = cos_t * ae - c(0.0, sin_t) * af;
        out[partner] = cos_t * af - c(0.0, sin_t) * ae;
    }
    StateVector::new(state.space().clone(), out)
}

/// Dispersive two-level evolution, a joint diagonal unitary on
/// atom ⊗ cavity (dim 2·cavity_dim): |e,n⟩ picks up e^{−iφ(n+1)} and
/// |f,n⟩ picks up e^{iφn}.
pub fn u1_dispersive(phi: f64, cavity_dim: usize) -> Result<Operator> {
    if cavity_dim < 2 {
        return Err(Error::InvalidArgument(format!(
            "cavity dimension must be >= 2, got {cavity_dim}"
        )));
    }
    let mut phases = Vec::with_capacity(2 * cavity_dim);
    for n in 0..cavity_dim {
        phases.push(Complex64::from_polar(1.0, -phi * (n as f64 + 1.0)));
    }
    for n in 0..cavity_dim {
        phases.push(Complex64::from_polar(1.0, phi * n as f64));
    }
    Operator::diagonal_unitary(phases)
}

/// Dispersive three-level evolution, a joint diagonal unitary on
/// atom ⊗ cavity (dim 3·cavity_dim): |f,n⟩ picks up e^{iφn}; |g,n⟩ and
/// |e,n⟩ are untouched.
pub fn u2_dispersive(phi: f64, cavity_dim: usize) -> Result<Operator> {
    if cavity_dim < 2 {
        return Err(Error::InvalidArgument(format!(
            "cavity dimension must be >= 2, got {cavity_dim}"
        )));
    }
    let mut phases = Vec::with_capacity(3 * cavity_dim);
    for n in 0..cavity_dim {
        phases.push(Complex64::from_polar(1.0, phi * n as f64));
    }
    phases.extend(std::iter::repeat_n(c(1.0, 0.0), 2 * cavity_dim));
    Operator::diagonal_unitary(phases)
}

/// Same dispersive coupling restricted to a two-level {f, g} atom
/// (ordering [f, g] = [0, 1]); used for the cavity-preparation atom, whose
/// e level never enters the protocol.
pub fn u2_dispersive_two_level(phi: f64, cavity_dim: usize) -> Result<Operator> {
    if cavity_dim < 2 {
        return Err(Error::InvalidArgument(format!(
            "cavity dimension must be >= 2, got {cavity_dim}"
        )));
    }
    let mut phases = Vec::with_capacity(2 * cavity_dim);
    for n in 0..cavity_dim {
        phases.push(Complex64::from_polar(1.0, phi * n as f64));
    }
    phases.extend(std::iter::repeat_n(c(1.0, 0.0), cavity_dim));
    Operator::diagonal_unitary(phases)
}

/// The 2×2 Hadamard gate (1/√2)·\[\[1,1\],\[1,−1\]\].
pub fn hadamard() -> Operator {
    let s = 1.0 / 2f64.sqrt();
    Operator::unitary(array![[c(s, 0.0), c(s, 0.0)], [c(s, 0.0), c(-s, 0.0)]])
        .expect("constant matrix is unitary")
}

/// Embeds a 2×2 gate into the {f, g} block of a three-level atom, leaving
/// level e untouched.
pub fn embed_qubit_gate(gate: &Operator) -> Result<Operator> {
    if gate.dim() != 2 {
        return Err(Error::DimensionMismatch {
            op_dim: gate.dim(),
            target_dim: 2,
        });
    }
    let e = gate.entries();
    Operator::unitary(array![
        [e[[0, 0]], e[[0, 1]], c(0.0, 0.0)],
        [e[[1, 0]], e[[1, 1]], c(0.0, 0.0)],
        [c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]
    ])
}

/// First Ramsey rotation on {f, g}: [[c_g, c_f], [−c_f*, c_g*]], which sends
/// |g⟩ to c_f|f⟩ + c_g|g⟩ for real coefficients.
pub fn ramsey_r1(c_f: Complex64, c_g: Complex64) -> Result<Operator> {
    let norm = c_f.norm_sqr() + c_g.norm_sqr();
    if (norm - 1.0).abs() > TOL {
        return Err(Error::CoefficientNorm { norm });
    }
    Operator::unitary(array![[c_g, c_f], [-c_f.conj(), c_g.conj()]])
}

/// Second Ramsey rotation on {f, g}: (1/√2)[[1, −i], [−i, 1]].
pub fn ramsey_r2() -> Operator {
    let s = 1.0 / 2f64.sqrt();
    Operator::unitary(array![[c(s, 0.0), c(0.0, -s)], [c(0.0, -s), c(s, 0.0)]])
        .expect("constant matrix is unitary")
}

/// Interaction time realizing a dispersive phase: τ = φ·Δ/g².
pub fn tau_for_phi(phi: f64, g: f64, delta: f64) -> Result<f64> {
    if !g.is_finite() || g <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "coupling constant must be positive, got {g}"
        )));
    }
    if delta == 0.0 {
        return Err(Error::InvalidArgument("detuning must be nonzero".into()));
    }
    Ok(phi * delta / (g * g))
}

/// Dispersive phase from an interaction time: φ = g²τ/Δ.
pub fn phi_for_tau(tau: f64, g: f64, delta: f64) -> Result<f64> {
    if !g.is_finite() || g <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "coupling constant must be positive, got {g}"
        )));
    }
    if delta == 0.0 {
        return Err(Error::InvalidArgument("detuning must be nonzero".into()));
    }
    Ok(g * g * tau / delta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::CompositeSpace;
    use crate::optics::{self, CatParity, CatState, CoherentSpec};
    use rand_chacha::ChaCha8Rng;
    use rand_core::{RngCore, SeedableRng};
    use std::f64::consts::PI;

    const HALF_PI: f64 = PI / 2.0;

    fn atom_cavity(atom_amps: [Complex64; 2], cav_dim: usize, n: usize) -> StateVector {
        let atom =
            StateVector::new(CompositeSpace::single(2).unwrap(), atom_amps.to_vec()).unwrap();
        let cav = StateVector::basis(CompositeSpace::single(cav_dim).unwrap(), n).unwrap();
        atom.tensor(&cav)
    }

    fn uniform(rng: &mut ChaCha8Rng) -> f64 {
        (rng.next_u64() >> 11) as f64 * (1.0 / 9007199254740992.0)
    }

    #[test]
    fn half_pi_pulse_transfers_excitation() {
        // |e⟩|0⟩ → −i|f⟩|1⟩ at gτ = π/2
        let s = atom_cavity([c(1.0, 0.0), c(0.0, 0.0)], 3, 0);
        let out = jc_resonant(&s, HALF_PI, 0, 1).unwrap();
        let f1 = TwoLevelAtom::F * 3 + 1;
        assert!((out.amp(f1) - c(0.0, -1.0)).norm() < 1e-12);
        for idx in [0, 2, 3, 5] {
            assert!(out.amp(idx).norm() < 1e-12);
        }
    }

    #[test]
    fn ground_vacuum_does_not_evolve() {
        let s = atom_cavity([c(0.0, 0.0), c(1.0, 0.0)], 3, 0);
        for g_tau in [0.3, HALF_PI, 2.0, PI] {
            let out = jc_resonant(&s, g_tau, 0, 1).unwrap();
            assert_eq!(out.amp(3), c(1.0, 0.0));
        }
    }

    #[test]
    fn half_pi_pulse_prepares_minus_superposition() {
        // (|f⟩ − i|e⟩)/√2 ⊗ |0⟩ → |f⟩ ⊗ (|0⟩−|1⟩)/√2
        let r = 1.0 / 2f64.sqrt();
        let s = atom_cavity([c(0.0, -r), c(r, 0.0)], 3, 0);
        let out = jc_resonant(&s, HALF_PI, 0, 1).unwrap();
        let f_minus = StateVector::new(
            CompositeSpace::new(vec![2, 3]).unwrap(),
            vec![
                c(0.0, 0.0),
                c(0.0, 0.0),
                c(0.0, 0.0),
                c(r, 0.0),
                c(-r, 0.0),
                c(0.0, 0.0),
            ],
        )
        .unwrap();
        assert!(out.fidelity_up_to_phase(&f_minus).unwrap() > 1.0 - 1e-12);
        for (a, b) in out.amps().iter().zip(f_minus.amps()) {
            assert!((a - b).norm() < 1e-12);
        }
    }

    #[test]
    fn two_inversion_pulses_give_minus_identity_on_manifold() {
        // A full population-inversion pulse on the {|e,n⟩, |f,n+1⟩} manifold
        // has mixing angle π/2, i.e. gτ = (π/2)/√(n+1); two in a row must
        // act as −identity there.
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for n in 0..4usize {
            let g_tau = HALF_PI / ((n + 1) as f64).sqrt();
            let (x, y) = (uniform(&mut rng) - 0.5, uniform(&mut rng) - 0.5);
            let norm = (x * x + y * y).sqrt();
            let cav_dim = 6;
            let mut amps = vec![c(0.0, 0.0); 2 * cav_dim];
            amps[n] = c(x / norm, 0.0); // |e, n⟩
            amps[cav_dim + n + 1] = c(0.0, y / norm); // |f, n+1⟩
            let s = StateVector::new(CompositeSpace::new(vec![2, cav_dim]).unwrap(), amps)
                .unwrap();
            let out = jc_resonant(&jc_resonant(&s, g_tau, 0, 1).unwrap(), g_tau, 0, 1).unwrap();
            for (a, b) in out.amps().iter().zip(s.amps()) {
                assert!((a + b).norm() < 1e-12, "n = {n}");
            }
        }
    }

    #[test]
    fn jc_preserves_norm_on_random_states() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let space = CompositeSpace::new(vec![2, 5]).unwrap();
        for _ in 0..20 {
            let mut amps: Vec<Complex64> = (0..10)
                .map(|_| c(uniform(&mut rng) - 0.5, uniform(&mut rng) - 0.5))
                .collect();
            amps[4] = c(0.0, 0.0); // clear |e, n_max⟩
            let s = StateVector::normalized(space.clone(), amps).unwrap();
            let g_tau = uniform(&mut rng) * PI;
            let out = jc_resonant(&s, g_tau, 0, 1).unwrap();
            assert!((out.norm() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn jc_rejects_top_level_population() {
        let s = atom_cavity([c(1.0, 0.0), c(0.0, 0.0)], 3, 2); // |e, n_max⟩
        let err = jc_resonant(&s, HALF_PI, 0, 1).unwrap_err();
        assert!(matches!(err, Error::TruncationLeakage { .. }));
    }

    #[test]
    fn jc_rejects_non_two_level_atom() {
        let s = StateVector::basis(CompositeSpace::new(vec![3, 3]).unwrap(), 0).unwrap();
        assert!(jc_resonant(&s, HALF_PI, 0, 1).is_err());
    }

    #[test]
    fn u1_reproduces_closed_form_phase_pattern() {
        // φ = π on ½(|e⟩+|f⟩)(|0⟩−|1⟩) → ½(−|e⟩+|f⟩)(|0⟩+|1⟩)
        let h = 0.5;
        let s = StateVector::new(
            CompositeSpace::new(vec![2, 2]).unwrap(),
            vec![c(h, 0.0), c(-h, 0.0), c(h, 0.0), c(-h, 0.0)],
        )
        .unwrap();
        let out = s.apply_joint(&u1_dispersive(PI, 2).unwrap(), (0, 1)).unwrap();
        let target = StateVector::new(
            CompositeSpace::new(vec![2, 2]).unwrap(),
            vec![c(-h, 0.0), c(-h, 0.0), c(h, 0.0), c(h, 0.0)],
        )
        .unwrap();
        assert!(out.fidelity_up_to_phase(&target).unwrap() >= 1.0 - 1e-12);
        for (a, b) in out.amps().iter().zip(target.amps()) {
            assert!((a - b).norm() < 1e-12);
        }
    }

    #[test]
    fn u1_pi_flips_excited_vacuum() {
        let s = atom_cavity([c(1.0, 0.0), c(0.0, 0.0)], 2, 0);
        let out = s.apply_joint(&u1_dispersive(PI, 2).unwrap(), (0, 1)).unwrap();
        assert!((out.amp(0) - c(-1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn u1_two_pi_is_identity() {
        let op = u1_dispersive(2.0 * PI, 8).unwrap();
        assert!(op.max_entry_deviation(&Operator::identity(16)) < 1e-12);
    }

    #[test]
    fn dispersives_are_diagonal() {
        assert!(u1_dispersive(1.1, 5).unwrap().diagonal().is_some());
        assert!(u2_dispersive(1.1, 5).unwrap().diagonal().is_some());
        assert!(u2_dispersive_two_level(1.1, 5).unwrap().diagonal().is_some());
    }

    #[test]
    fn u2_pi_flips_coherent_amplitude_sign() {
        let truncation = optics::choose_truncation(c(2.0, 0.0), 1e-12).unwrap();
        let dim = truncation.dim();
        let atom = StateVector::basis(CompositeSpace::single(3).unwrap(), ThreeLevelAtom::F)
            .unwrap();
        let plus = optics::coherent_state(&CoherentSpec { alpha: c(2.0, 0.0), truncation })
            .unwrap();
        let minus = optics::coherent_state(&CoherentSpec { alpha: c(-2.0, 0.0), truncation })
            .unwrap();
        let out = atom
            .tensor(&plus)
            .apply_joint(&u2_dispersive(PI, dim).unwrap(), (0, 1))
            .unwrap();
        let target = atom.tensor(&minus);
        assert!(out.fidelity_up_to_phase(&target).unwrap() >= 1.0 - 10.0 * 1e-12);
    }

    #[test]
    fn u2_pi_reflects_odd_cat_through_atom_branch() {
        // (|f⟩+|g⟩)/√2 ⊗ |cat−⟩ → (−|f⟩+|g⟩)/√2 ⊗ |cat−⟩, exact because the
        // odd cat is an exact −1 eigenstate of e^{iπn}.
        let truncation = optics::choose_truncation(c(2.0, 0.0), 1e-12).unwrap();
        let dim = truncation.dim();
        let cat = optics::cat_state(&CatState {
            parity: CatParity::Minus,
            alpha: c(2.0, 0.0),
            truncation,
        })
        .unwrap();
        let r = 1.0 / 2f64.sqrt();
        let atom_in = StateVector::new(
            CompositeSpace::single(3).unwrap(),
            vec![c(r, 0.0), c(r, 0.0), c(0.0, 0.0)],
        )
        .unwrap();
        let atom_out = StateVector::new(
            CompositeSpace::single(3).unwrap(),
            vec![c(-r, 0.0), c(r, 0.0), c(0.0, 0.0)],
        )
        .unwrap();
        let out = atom_in
            .tensor(&cat)
            .apply_joint(&u2_dispersive(PI, dim).unwrap(), (0, 1))
            .unwrap();
        let target = atom_out.tensor(&cat);
        assert!(out.fidelity_up_to_phase(&target).unwrap() >= 1.0 - 1e-12);
    }

    #[test]
    fn u2_leaves_level_e_alone() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let space = CompositeSpace::new(vec![3, 4]).unwrap();
        let amps: Vec<Complex64> = (0..12)
            .map(|_| c(uniform(&mut rng) - 0.5, uniform(&mut rng) - 0.5))
            .collect();
        let s = StateVector::normalized(space, amps).unwrap();
        let out = s.apply_joint(&u2_dispersive(1.37, 4).unwrap(), (0, 1)).unwrap();
        for n in 0..4 {
            let idx = ThreeLevelAtom::E * 4 + n;
            assert_eq!(out.amp(idx), s.amp(idx));
        }
    }

    #[test]
    fn u2_two_pi_is_identity() {
        let op = u2_dispersive(2.0 * PI, 6).unwrap();
        assert!(op.max_entry_deviation(&Operator::identity(18)) < 1e-12);
        let op2 = u2_dispersive_two_level(2.0 * PI, 6).unwrap();
        assert!(op2.max_entry_deviation(&Operator::identity(12)) < 1e-12);
    }

    #[test]
    fn hadamard_actions() {
        let h = hadamard();
        let r = 1.0 / 2f64.sqrt();
        let zero = StateVector::basis(CompositeSpace::single(2).unwrap(), 0).unwrap();
        let one = StateVector::basis(CompositeSpace::single(2).unwrap(), 1).unwrap();
        let plus = zero.apply_on(&h, 0).unwrap();
        assert!((plus.amp(0) - c(r, 0.0)).norm() < 1e-12);
        assert!((plus.amp(1) - c(r, 0.0)).norm() < 1e-12);
        let minus = one.apply_on(&h, 0).unwrap();
        assert!((minus.amp(0) - c(r, 0.0)).norm() < 1e-12);
        assert!((minus.amp(1) - c(-r, 0.0)).norm() < 1e-12);
        assert!(h.compose(&h).unwrap().max_entry_deviation(&Operator::identity(2)) < 1e-12);
    }

    #[test]
    fn embedded_gate_keeps_e_inert() {
        let h3 = embed_qubit_gate(&hadamard()).unwrap();
        let e_state =
            StateVector::basis(CompositeSpace::single(3).unwrap(), ThreeLevelAtom::E).unwrap();
        let out = e_state.apply_on(&h3, 0).unwrap();
        assert_eq!(out.amp(ThreeLevelAtom::E), c(1.0, 0.0));
        let f_state =
            StateVector::basis(CompositeSpace::single(3).unwrap(), ThreeLevelAtom::F).unwrap();
        let out = f_state.apply_on(&h3, 0).unwrap();
        let r = 1.0 / 2f64.sqrt();
        assert!((out.amp(ThreeLevelAtom::F) - c(r, 0.0)).norm() < 1e-12);
        assert!((out.amp(ThreeLevelAtom::G) - c(r, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn r1_identity_case() {
        let r1 = ramsey_r1(c(0.0, 0.0), c(1.0, 0.0)).unwrap();
        assert!(r1.max_entry_deviation(&Operator::identity(2)) < 1e-15);
    }

    #[test]
    fn r1_rotates_g_into_superposition() {
        let (cf, cg) = (0.6, 0.8);
        let r1 = ramsey_r1(c(cf, 0.0), c(cg, 0.0)).unwrap();
        let g_state = StateVector::basis(CompositeSpace::single(2).unwrap(), 1).unwrap();
        let out = g_state.apply_on(&r1, 0).unwrap();
        assert!((out.amp(0) - c(cf, 0.0)).norm() < 1e-12);
        assert!((out.amp(1) - c(cg, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn r1_unitary_for_random_coefficients() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..50 {
            let raw = [
                c(uniform(&mut rng) - 0.5, uniform(&mut rng) - 0.5),
                c(uniform(&mut rng) - 0.5, uniform(&mut rng) - 0.5),
            ];
            let norm = (raw[0].norm_sqr() + raw[1].norm_sqr()).sqrt();
            let r1 = ramsey_r1(raw[0] / norm, raw[1] / norm).unwrap();
            assert!(r1.unitarity_defect() <= 1e-10);
        }
    }

    #[test]
    fn r1_rejects_unnormalized_coefficients() {
        let err = ramsey_r1(c(1.0, 0.0), c(1.0, 0.0)).unwrap_err();
        assert!(matches!(err, Error::CoefficientNorm { .. }));
    }

    #[test]
    fn r2_actions_and_unitarity() {
        let r2 = ramsey_r2();
        let r = 1.0 / 2f64.sqrt();
        let f_state = StateVector::basis(CompositeSpace::single(2).unwrap(), 0).unwrap();
        let out = f_state.apply_on(&r2, 0).unwrap();
        assert!((out.amp(0) - c(r, 0.0)).norm() < 1e-12);
        assert!((out.amp(1) - c(0.0, -r)).norm() < 1e-12);
        let g_state = StateVector::basis(CompositeSpace::single(2).unwrap(), 1).unwrap();
        let out = g_state.apply_on(&r2, 0).unwrap();
        assert!((out.amp(0) - c(0.0, -r)).norm() < 1e-12);
        assert!((out.amp(1) - c(r, 0.0)).norm() < 1e-12);
        assert!(
            r2.compose(&r2.adjoint())
                .unwrap()
                .max_entry_deviation(&Operator::identity(2))
                < 1e-12
        );
    }

    #[test]
    fn tau_reproduces_hardware_interaction_time() {
        let g = 2.0 * PI * 25.0e3;
        let delta = 2.0 * PI * 100.0e3;
        let tau = tau_for_phi(PI, g, delta).unwrap();
        assert!((tau / 8.0e-5 - 1.0).abs() < 1e-12);
        assert_eq!(tau_for_phi(0.0, g, delta).unwrap(), 0.0);
    }

    #[test]
    fn tau_phi_round_trip() {
        let g = 2.0 * PI * 25.0e3;
        let delta = 2.0 * PI * 100.0e3;
        for phi in [0.1, 1.0, PI, 2.0 * PI] {
            let back = phi_for_tau(tau_for_phi(phi, g, delta).unwrap(), g, delta).unwrap();
            assert!((back - phi).abs() < 1e-12);
        }
    }

    #[test]
    fn tau_rejects_zero_coupling() {
        assert!(tau_for_phi(PI, 0.0, 1.0).is_err());
        assert!(phi_for_tau(1.0, 1.0, 0.0).is_err());
    }

    #[test]
    fn interaction_params_phi() {
        let p = InteractionParams::new(2.0 * PI * 25.0e3, 2.0 * PI * 100.0e3, 8.0e-5).unwrap();
        assert!((p.phi() - PI).abs() < 1e-12);
        assert!(InteractionParams::new(1.0, 0.0, 1.0).is_err());
    }
}
