//! Entangling operations built on the half-revival evolution: the separable
//! gate G_θ, field-measurement POVMs M and L, GHZ and W generation, the
//! effective three-qubit form of the evolution operator, and the two-mode
//! Bell measurement circuit.
//!
//! Throughout, U denotes evolution under e^{-iVt} for half a revival time
//! and θ = δ_N t_r/2. All 4×4 matrices live in the Bell basis
//! (|Ψ⁻⟩, |Ψ⁺⟩, |Φ⁻⟩, |Φ⁺⟩).

use nalgebra::{Matrix4, SMatrix};
use num_complex::Complex64 as C64;

use crate::error::{NltcError, Result};
use crate::evolution::{evolve_exact, evolve_mode_a, evolve_mode_b};
use crate::hilbert::{
    apply_atomic_gate, apply_sz_rotation, build_initial, build_initial_two_mode,
    coherent_amplitudes, default_n_max, AtomicDensityMatrix, BellAmplitudes,
    CoherentSpec, JointState, ATOM_DIM, EE, GG, PSI_MINUS, PSI_PLUS,
};
use crate::model::{IntensityModel, LinearizedSpectrum, ModelKind};

/// Gate angle θ = δ_N t_r/2, always derived from a linearized spectrum.
/// The `idealized` constructor exists for the pointer-basis protocol paths
/// where θ is a free test parameter.
#[derive(Debug, Clone, Copy)]
pub struct ThetaAngle(f64);

impl ThetaAngle {
    pub fn from_spectrum(spectrum: &LinearizedSpectrum) -> Self {
        Self(spectrum.theta())
    }

    pub fn idealized(theta: f64) -> Self {
        Self(theta)
    }

    pub fn value(&self) -> f64 {
        self.0
    }
}

/// G_θ = g_θ ⊗ g_θ with g_θ = cos(θ/2) 𝕀 + i sin(θ/2) σ_x. Maps
/// |Ψ⁺⟩ → |Ψ_θ⟩ and |Φ⁺⟩ → −|Φ_θ⟩ while fixing the antisymmetric states.
pub fn gate_g_theta(theta: ThetaAngle) -> Matrix4<C64> {
    let (c, s) = (theta.0.cos(), theta.0.sin());
    let mut g = Matrix4::zeros();
    g[(0, 0)] = C64::ONE;
    g[(2, 2)] = C64::ONE;
    g[(1, 1)] = C64::new(c, 0.0);
    g[(3, 1)] = C64::new(0.0, s);
    g[(1, 3)] = C64::new(0.0, s);
    g[(3, 3)] = C64::new(c, 0.0);
    g
}

/// e^{i S_z angle} as a Bell-basis matrix: the Ψ sector is untouched and
/// (Φ⁻, Φ⁺) rotate through cos·𝕀 − i sin·σ_x.
pub fn gate_sz_rotation(angle: f64) -> Matrix4<C64> {
    let (c, s) = (angle.cos(), angle.sin());
    let mut g = Matrix4::zeros();
    g[(0, 0)] = C64::ONE;
    g[(1, 1)] = C64::ONE;
    g[(2, 2)] = C64::new(c, 0.0);
    g[(3, 3)] = C64::new(c, 0.0);
    g[(2, 3)] = C64::new(0.0, -s);
    g[(3, 2)] = C64::new(0.0, -s);
    g
}

/// POVM element implemented by finding the field in |α⟩:
/// M = |Ψ⁻⟩⟨Ψ⁻| + |Φ⁻⟩⟨Φ⁻|.
pub fn m_operator() -> Matrix4<C64> {
    Matrix4::from_diagonal(&nalgebra::Vector4::new(C64::ONE, C64::ZERO, C64::ONE, C64::ZERO))
}

/// POVM element implemented by finding the field in |−α⟩:
/// L = |Ψ⁺⟩⟨Ψ⁺| − |Φ⁺⟩⟨Φ⁺|.
pub fn l_operator() -> Matrix4<C64> {
    Matrix4::from_diagonal(&nalgebra::Vector4::new(C64::ZERO, C64::ONE, C64::ZERO, -C64::ONE))
}

/// K = |Ψ_θ⟩⟨Ψ⁺| + |Φ_θ⟩⟨Φ⁺|, the half-revival action on the symmetric
/// sector; Hermitian with K² = L².
pub fn k_operator(theta: ThetaAngle) -> Matrix4<C64> {
    let (c, s) = (theta.0.cos(), theta.0.sin());
    let mut k = Matrix4::zeros();
    k[(1, 1)] = C64::new(c, 0.0);
    k[(3, 1)] = C64::new(0.0, s);
    k[(1, 3)] = C64::new(0.0, -s);
    k[(3, 3)] = C64::new(-c, 0.0);
    k
}

fn bell_vector(b: &BellAmplitudes) -> nalgebra::Vector4<C64> {
    nalgebra::Vector4::new(b.c_minus, b.c_plus, b.d_minus, b.d_plus)
}

fn bell_from_vector(v: &nalgebra::Vector4<C64>) -> BellAmplitudes {
    BellAmplitudes::new(v[0], v[1], v[2], v[3])
}

/// Apply a Bell-basis gate to atomic amplitudes.
pub fn apply_gate_to_atoms(gate: &Matrix4<C64>, atoms: &BellAmplitudes) -> BellAmplitudes {
    bell_from_vector(&(gate * bell_vector(atoms)))
}

/// Pointer value of a field measurement outcome: the coherent state ±α.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pointer {
    Plus,
    Minus,
}

impl Pointer {
    pub fn sign(&self) -> f64 {
        match self {
            Pointer::Plus => 1.0,
            Pointer::Minus => -1.0,
        }
    }
}

impl std::fmt::Display for Pointer {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Pointer::Plus => write!(f, "+a"),
            Pointer::Minus => write!(f, "-a"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutcomeLabel {
    Single(Pointer),
    TwoMode(Pointer, Pointer),
}

impl std::fmt::Display for OutcomeLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            OutcomeLabel::Single(p) => write!(f, "{p}"),
            OutcomeLabel::TwoMode(a, b) => write!(f, "({a},{b})"),
        }
    }
}

/// Result of projecting the oscillator(s) onto coherent pointers. Outcomes
/// below the resolvable probability threshold carry no postselected state.
#[derive(Debug, Clone)]
pub struct MeasurementOutcome {
    pub label: OutcomeLabel,
    pub probability: f64,
    pub postselected_bell: Option<BellAmplitudes>,
    pub postselected_atoms: Option<AtomicDensityMatrix>,
}

const OUTCOME_FLOOR: f64 = 1e-12;

fn outcome_from_unnormalized(label: OutcomeLabel, w: [C64; ATOM_DIM]) -> MeasurementOutcome {
    let probability: f64 = w.iter().map(|c| c.norm_sqr()).sum();
    if probability < OUTCOME_FLOOR {
        return MeasurementOutcome { label, probability, postselected_bell: None, postselected_atoms: None };
    }
    let n = probability.sqrt();
    // storage (Psi-, Psi+, gg, ee) -> Bell amplitudes
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let bell = BellAmplitudes::new(
        w[PSI_MINUS] / n,
        w[PSI_PLUS] / n,
        (w[GG] - w[EE]) * s / n,
        (w[GG] + w[EE]) * s / n,
    );
    MeasurementOutcome {
        label,
        probability,
        postselected_atoms: Some(AtomicDensityMatrix::from_pure(&bell)),
        postselected_bell: Some(bell),
    }
}

/// Project the single oscillator of `state` onto the coherent pointer ±α and
/// renormalize the atomic remainder. For half-revival outputs the +α outcome
/// implements M and the −α outcome implements L, up to e^{-2N} pointer
/// overlap.
pub fn povm_measure(state: &JointState, alpha: f64, pointer: Pointer) -> Result<MeasurementOutcome> {
    if state.mode_count != 1 {
        return Err(NltcError::DimensionMismatch("povm_measure expects a single-mode state".into()));
    }
    let coh = coherent_amplitudes(C64::new(pointer.sign() * alpha, 0.0), state.n_max);
    let mut w = [C64::ZERO; ATOM_DIM];
    for (a, slot) in w.iter_mut().enumerate() {
        let mut acc = C64::ZERO;
        for (n, c) in coh.iter().enumerate() {
            acc += c.conj() * state.at(a, n);
        }
        *slot = acc;
    }
    Ok(outcome_from_unnormalized(OutcomeLabel::Single(pointer), w))
}

/// The atomic state splitter: G_θ followed by half a revival of evolution,
/// sending |ψ⟩|α⟩ to (c₋|Ψ⁻⟩ + d₋|Φ⁻⟩)|α⟩ + (c₊|Ψ⁺⟩ − d₊|Φ⁺⟩)|−α⟩.
/// Returns the evolved state and its fidelity against that target form.
pub fn split_step(
    atoms: &BellAmplitudes,
    alpha: f64,
    model: &IntensityModel,
    spectrum: &LinearizedSpectrum,
) -> Result<(JointState, f64)> {
    let n_max = default_n_max(alpha * alpha);
    let mut st = build_initial(atoms, &CoherentSpec::real(alpha), n_max)?;
    apply_atomic_gate(&mut st, &gate_g_theta(ThetaAngle::from_spectrum(spectrum)));
    let st = evolve_exact(&st, model, spectrum.t_revival / 2.0)?;

    let split_atoms_plus =
        BellAmplitudes::new(atoms.c_minus, C64::ZERO, atoms.d_minus, C64::ZERO);
    let split_atoms_minus =
        BellAmplitudes::new(C64::ZERO, atoms.c_plus, C64::ZERO, -atoms.d_plus);
    let mut target = superpose_components(
        n_max,
        &[(split_atoms_plus, alpha), (split_atoms_minus, -alpha)],
    )?;
    target.normalize();
    let fidelity = st.inner(&target)?.norm_sqr();
    Ok((st, fidelity))
}

/// Σ_j |atoms_j⟩|label_j⟩ materialized onto the truncated Fock space.
fn superpose_components(
    n_max: usize,
    comps: &[(BellAmplitudes, f64)],
) -> Result<JointState> {
    let mut st = JointState::zero(n_max, 1)?;
    for (atoms, label) in comps {
        let coh = coherent_amplitudes(C64::new(*label, 0.0), n_max);
        let (cg, ce) = atoms.bare_gg_ee();
        for (n, p) in coh.iter().enumerate() {
            *st.at_mut(PSI_MINUS, n) += atoms.c_minus * p;
            *st.at_mut(PSI_PLUS, n) += atoms.c_plus * p;
            *st.at_mut(GG, n) += cg * p;
            *st.at_mut(EE, n) += ce * p;
        }
    }
    Ok(st)
}

/// GHZ generation: U G_θ |gg⟩|α⟩ = (|gg⟩|α,−⟩ + |ee⟩|α,+⟩)/√2 with the cat
/// states |α,±⟩ = −(|−α⟩ ± |α⟩)/√2 as the third qubit.
pub struct GhzOutcome {
    pub state: JointState,
    pub fidelity: f64,
}

pub fn generate_ghz(
    alpha: f64,
    model: &IntensityModel,
    spectrum: &LinearizedSpectrum,
) -> Result<GhzOutcome> {
    if alpha * alpha < 20.0 {
        log::warn!("cat-state qubit needs <a,+|a,-> ~ 0; N = {:.1} is small", alpha * alpha);
    }
    let (state, _) = split_step(&BellAmplitudes::gg(), alpha, model, spectrum)?;
    // ideal target: |gg>(|a> - |-a>)/2 - |ee>(|a> + |-a>)/2, normalized on
    // the truncated space
    let n_max = state.n_max;
    let half = C64::new(0.5, 0.0);
    let gg_cat = BellAmplitudes::from_bare(half, C64::ZERO, C64::ZERO, C64::ZERO);
    let ee_cat = BellAmplitudes::from_bare(C64::ZERO, C64::ZERO, C64::ZERO, -half);
    let mut target = superpose_components(
        n_max,
        &[(gg_cat, alpha), (scale(&gg_cat, -C64::ONE), -alpha), (ee_cat, alpha), (ee_cat, -alpha)],
    )?;
    target.normalize();
    let fidelity = state.inner(&target)?.norm_sqr();
    Ok(GhzOutcome { state, fidelity })
}

fn scale(b: &BellAmplitudes, f: C64) -> BellAmplitudes {
    BellAmplitudes::new(b.c_minus * f, b.c_plus * f, b.d_minus * f, b.d_plus * f)
}

/// The evolution operator restricted to the pointer span {|α⟩, |−α⟩},
/// treated as orthonormal: U ≃ M⊗𝕀 + K⊗|−α⟩⟨α| + K*⊗|α⟩⟨−α| on the
/// 4 (Bell) × 2 (pointer) space, index = 2·atom + pointer with |α⟩ ↦ 0.
pub fn effective_three_qubit(theta: ThetaAngle) -> SMatrix<C64, 8, 8> {
    let m = m_operator();
    let k = k_operator(theta);
    let mut u = SMatrix::<C64, 8, 8>::zeros();
    for a in 0..4 {
        for b in 0..4 {
            u[(2 * a, 2 * b)] = m[(a, b)] + k[(a, b)].conj() * 0.0;
            u[(2 * a + 1, 2 * b + 1)] = m[(a, b)];
            u[(2 * a + 1, 2 * b)] = k[(a, b)];
            u[(2 * a, 2 * b + 1)] = k[(a, b)].conj();
        }
    }
    u
}

/// The separable rotation completing the W-state chain: t₁ ⊗ t₂ with
/// t₁ (g−e)/√2 ↦ |e⟩, (g+e)/√2 ↦ −|g⟩ and t₂ (g+e)/√2 ↦ |e⟩,
/// (g−e)/√2 ↦ −|g⟩. It sends the separable branch (Ψ⁻+Φ⁻)/√2 to |ee⟩ and
/// −|Φ⁺⟩ to |Ψ⁺⟩.
pub fn w_gate_t() -> Matrix4<C64> {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let t1 = nalgebra::Matrix2::new(
        C64::new(-s, 0.0), C64::new(-s, 0.0),
        C64::new(s, 0.0), C64::new(-s, 0.0),
    );
    let t2 = nalgebra::Matrix2::new(
        C64::new(-s, 0.0), C64::new(s, 0.0),
        C64::new(s, 0.0), C64::new(s, 0.0),
    );
    let bare = t1.kronecker(&t2);
    let b = crate::hilbert::bell_to_bare_matrix();
    b.adjoint() * bare * b
}

/// Initial atomic state of the W protocol:
/// χ(θ) = (|Ψ⁻⟩ + |Φ⁻⟩)/√6 + √(2/3)(i sin θ |Ψ⁺⟩ + cos θ |Φ⁺⟩).
/// Under U its stationary third lands on |α⟩ as the product (g−e)(g+e)/2
/// while the symmetric part maps onto −√(2/3)|Φ⁺⟩|−α⟩; w_gate_t then
/// produces the W form (|ee⟩|α⟩ + |ge⟩|−α⟩ + |eg⟩|−α⟩)/√3 exactly.
pub fn w_initial_atoms(theta: ThetaAngle) -> BellAmplitudes {
    let r6 = 1.0 / 6.0_f64.sqrt();
    let r23 = (2.0 / 3.0_f64).sqrt();
    BellAmplitudes::new(
        C64::new(r6, 0.0),
        C64::new(0.0, r23 * theta.0.sin()),
        C64::new(r6, 0.0),
        C64::new(r23 * theta.0.cos(), 0.0),
    )
}

/// The separable intermediate appearing in the published W-state chain,
/// |ψ₂⟩ = (|Ψ⁻⟩ + i|Φ⁻⟩ − i√2|Φ⁺⟩)/2; its concurrence vanishes exactly.
pub fn w_separable_intermediate() -> BellAmplitudes {
    let h = C64::new(0.5, 0.0);
    BellAmplitudes::new(h, C64::ZERO, C64::I * 0.5, -C64::I * std::f64::consts::FRAC_1_SQRT_2)
}

/// W fidelity of the chain T·U·(χ ⊗ |α⟩-pointer) in the idealized
/// orthonormal-pointer model; equals one when χ is built at the same θ.
pub fn w_idealized_fidelity(theta: ThetaAngle) -> f64 {
    let u = effective_three_qubit(theta);
    let chi = w_initial_atoms(theta);
    let mut psi = SMatrix::<C64, 8, 1>::zeros();
    for (a, c) in chi.as_array().iter().enumerate() {
        psi[2 * a] = *c;
    }
    let mut out = u * psi;
    let t = w_gate_t();
    let mut rotated = SMatrix::<C64, 8, 1>::zeros();
    for a in 0..4 {
        for b in 0..4 {
            for p in 0..2 {
                rotated[2 * a + p] += t[(a, b)] * out[2 * b + p];
            }
        }
    }
    out = rotated;
    // W target: (1/sqrt3)|ee>|0> + sqrt(2/3)|Psi+>|1>; |ee> = (Phi+ - Phi-)/sqrt2
    let r3 = 1.0 / 3.0_f64.sqrt();
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let mut w = SMatrix::<C64, 8, 1>::zeros();
    w[2 * 3] = C64::new(r3 * s, 0.0);
    w[2 * 2] = C64::new(-r3 * s, 0.0);
    w[2 * 1 + 1] = C64::new((2.0 / 3.0_f64).sqrt(), 0.0);
    (w.adjoint() * out)[(0, 0)].norm_sqr()
}

/// Scan integer N for a gate angle θ(N) ≡ π/4 (mod 2π). Only the ion trap
/// admits solutions: δ_N/|ω'_N| is constant for BS and θ(N) sticks to
/// multiples of π for TC.
pub fn w_admissible_scan(
    omega: f64,
    kind: ModelKind,
    n_range: (u64, u64),
    residual_limit: f64,
) -> Result<(u64, f64)> {
    let target = std::f64::consts::FRAC_PI_4;
    let tau = 2.0 * std::f64::consts::PI;
    let mut best: Option<(u64, f64)> = None;
    for n in n_range.0..=n_range.1 {
        let model = match kind {
            ModelKind::TavisCummings => IntensityModel::tavis_cummings(omega),
            ModelKind::BuckSukumar => IntensityModel::buck_sukumar(omega),
            ModelKind::IonTrap => IntensityModel::ion_trap_at(omega, n as f64),
        };
        let spec = model.linearize(n as f64)?;
        let theta = spec.theta().rem_euclid(tau);
        let res = (theta - target).abs().min(tau - (theta - target).abs());
        if best.map(|(_, r)| res < r).unwrap_or(true) {
            best = Some((n, res));
        }
    }
    match best {
        Some((n, res)) if res < residual_limit => Ok((n, res)),
        Some((_, res)) => Err(NltcError::ThetaMismatch(format!(
            "best θ residual {res:.4} rad over N ∈ {n_range:?} exceeds {residual_limit}"
        ))),
        None => Err(NltcError::ThetaMismatch("empty scan range".into())),
    }
}

pub struct WOutcome {
    pub n_mean: u64,
    pub theta_residual: f64,
    pub state: JointState,
    pub fidelity: f64,
}

/// Full W-state generation on the ion trap: scan for an admissible N, build
/// χ(π/4)|α⟩, evolve half a revival, rotate with T and score against the W
/// form (|ee⟩|α⟩ + |ge⟩|−α⟩ + |eg⟩|−α⟩)/√3.
pub fn generate_w(omega: f64, kind: ModelKind, n_range: (u64, u64)) -> Result<WOutcome> {
    let (n, theta_residual) = w_admissible_scan(omega, kind, n_range, 0.01)?;
    let model = IntensityModel::ion_trap_at(omega, n as f64);
    let spectrum = model.linearize(n as f64)?;
    let alpha = (n as f64).sqrt();
    let n_max = default_n_max(n as f64);
    let theta = ThetaAngle::idealized(std::f64::consts::FRAC_PI_4);

    let chi = w_initial_atoms(theta);
    let st = build_initial(&chi, &CoherentSpec::real(alpha), n_max)?;
    let mut st = evolve_exact(&st, &model, spectrum.t_revival / 2.0)?;
    apply_atomic_gate(&mut st, &w_gate_t());

    let r3 = 1.0 / 3.0_f64.sqrt();
    let ee = scale(&BellAmplitudes::ee(), C64::new(r3, 0.0));
    let psip = scale(&BellAmplitudes::psi_plus(), C64::new((2.0 / 3.0_f64).sqrt(), 0.0));
    let mut target = superpose_components(n_max, &[(ee, alpha), (psip, -alpha)])?;
    target.normalize();
    let fidelity = st.inner(&target)?.norm_sqr();
    Ok(WOutcome { n_mean: n, theta_residual, state: st, fidelity })
}

/// Bell-state target postselected by each two-mode outcome, as validated
/// against the exact evolution: (α,α) → Ψ⁻, (α,−α) → Φ⁻, (−α,α) → Φ⁺,
/// (−α,−α) → Ψ⁺, with probabilities |c₋|², |d₋|², |d₊|², |c₊|².
pub fn bell_target(label: OutcomeLabel) -> Option<BellAmplitudes> {
    match label {
        OutcomeLabel::TwoMode(Pointer::Plus, Pointer::Plus) => Some(BellAmplitudes::psi_minus()),
        OutcomeLabel::TwoMode(Pointer::Plus, Pointer::Minus) => Some(BellAmplitudes::phi_minus()),
        OutcomeLabel::TwoMode(Pointer::Minus, Pointer::Plus) => Some(BellAmplitudes::phi_plus()),
        OutcomeLabel::TwoMode(Pointer::Minus, Pointer::Minus) => Some(BellAmplitudes::psi_plus()),
        OutcomeLabel::Single(_) => None,
    }
}

/// The complete Bell measurement circuit
/// 𝒰 = e^{-iS_zπ/2} G†_θ U_b e^{iS_zπ/2} U_a G_θ applied to
/// |ψ⟩|α⟩_a|α⟩_b, followed by discrimination of the four pointer
/// combinations. Outcomes are ordered (++, +-, -+, --).
pub fn bell_measurement(
    atoms: &BellAmplitudes,
    alpha_a: f64,
    alpha_b: f64,
    model: &IntensityModel,
    spectrum: &LinearizedSpectrum,
) -> Result<Vec<MeasurementOutcome>> {
    let n_max = default_n_max(alpha_a.max(alpha_b).powi(2));
    if n_max > 512 {
        return Err(NltcError::SizeGuard(format!(
            "two-mode Bell measurement capped at n_max 512 per mode, needs {n_max}; \
             use the pointer-basis variant for large N"
        )));
    }
    let mut st = build_initial_two_mode(
        atoms,
        &CoherentSpec::real(alpha_a),
        &CoherentSpec::real(alpha_b),
        n_max,
    )?;
    let spectral = model.tabulate_spectrum(n_max)?;
    let t_half = spectrum.t_revival / 2.0;
    let theta = ThetaAngle::from_spectrum(spectrum);
    let g = gate_g_theta(theta);

    apply_atomic_gate(&mut st, &g);
    evolve_mode_a(&mut st, &spectral, t_half)?;
    apply_sz_rotation(&mut st, std::f64::consts::FRAC_PI_2);
    evolve_mode_b(&mut st, &spectral, t_half)?;
    apply_atomic_gate(&mut st, &g.adjoint());
    apply_sz_rotation(&mut st, -std::f64::consts::FRAC_PI_2);

    let dim = st.fock_dim();
    let mut outcomes = Vec::with_capacity(4);
    for pa in [Pointer::Plus, Pointer::Minus] {
        let ca = coherent_amplitudes(C64::new(pa.sign() * alpha_a, 0.0), n_max);
        for pb in [Pointer::Plus, Pointer::Minus] {
            let cb = coherent_amplitudes(C64::new(pb.sign() * alpha_b, 0.0), n_max);
            let mut w = [C64::ZERO; ATOM_DIM];
            for (a, slot) in w.iter_mut().enumerate() {
                let mut acc = C64::ZERO;
                for n in 0..dim {
                    let pre = ca[n].conj();
                    let row = &st.amp[(a * dim + n) * dim..(a * dim + n) * dim + dim];
                    let inner: C64 = row.iter().zip(&cb).map(|(x, c)| c.conj() * x).sum();
                    acc += pre * inner;
                }
                *slot = acc;
            }
            outcomes.push(outcome_from_unnormalized(OutcomeLabel::TwoMode(pa, pb), w));
        }
    }
    Ok(outcomes)
}

/// Pointer-basis Bell measurement for large N: the same circuit evaluated
/// with the effective three-qubit operator per mode, on the 4 × 2 × 2 space
/// indexed (atom, pointer_a, pointer_b). Returns the four outcomes in the
/// same order as [`bell_measurement`].
pub fn bell_measurement_pointer_basis(
    atoms: &BellAmplitudes,
    theta: ThetaAngle,
) -> Vec<MeasurementOutcome> {
    let mut psi = [[C64::ZERO; 4]; ATOM_DIM]; // [atom][ptr_a*2+ptr_b]
    for (a, c) in atoms.as_array().iter().enumerate() {
        psi[a][0] = *c; // both pointers |alpha>
    }
    let apply_atomic = |psi: &mut [[C64; 4]; ATOM_DIM], g: &Matrix4<C64>| {
        for k in 0..4 {
            let col = [psi[0][k], psi[1][k], psi[2][k], psi[3][k]];
            for a in 0..ATOM_DIM {
                psi[a][k] = (0..4).map(|b| g[(a, b)] * col[b]).sum();
            }
        }
    };
    let u_eff = effective_three_qubit(theta);
    let apply_mode = |psi: &mut [[C64; 4]; ATOM_DIM], mode_b: bool| {
        let mut out = [[C64::ZERO; 4]; ATOM_DIM];
        for a_out in 0..ATOM_DIM {
            for p_out in 0..2 {
                for a_in in 0..ATOM_DIM {
                    for p_in in 0..2 {
                        let g = u_eff[(2 * a_out + p_out, 2 * a_in + p_in)];
                        if g == C64::ZERO {
                            continue;
                        }
                        for other in 0..2 {
                            let (ko, ki) = if mode_b {
                                (other * 2 + p_out, other * 2 + p_in)
                            } else {
                                (p_out * 2 + other, p_in * 2 + other)
                            };
                            out[a_out][ko] += g * psi[a_in][ki];
                        }
                    }
                }
            }
        }
        *psi = out;
    };
    let g = gate_g_theta(theta);
    apply_atomic(&mut psi, &g);
    apply_mode(&mut psi, false);
    apply_atomic(&mut psi, &gate_sz_rotation(std::f64::consts::FRAC_PI_2));
    apply_mode(&mut psi, true);
    apply_atomic(&mut psi, &g.adjoint());
    apply_atomic(&mut psi, &gate_sz_rotation(-std::f64::consts::FRAC_PI_2));

    let pointers = [Pointer::Plus, Pointer::Minus];
    let mut outcomes = Vec::with_capacity(4);
    for (ia, pa) in pointers.iter().enumerate() {
        for (ib, pb) in pointers.iter().enumerate() {
            let k = ia * 2 + ib;
            // here the amplitudes are already in the Bell basis
            let w = [psi[0][k], psi[1][k], psi[2][k], psi[3][k]];
            let probability: f64 = w.iter().map(|c| c.norm_sqr()).sum();
            let label = OutcomeLabel::TwoMode(*pa, *pb);
            if probability < OUTCOME_FLOOR {
                outcomes.push(MeasurementOutcome {
                    label,
                    probability,
                    postselected_bell: None,
                    postselected_atoms: None,
                });
            } else {
                let n = probability.sqrt();
                let bell = BellAmplitudes::new(w[0] / n, w[1] / n, w[2] / n, w[3] / n);
                outcomes.push(MeasurementOutcome {
                    label,
                    probability,
                    postselected_atoms: Some(AtomicDensityMatrix::from_pure(&bell)),
                    postselected_bell: Some(bell),
                });
            }
        }
    }
    outcomes
}
