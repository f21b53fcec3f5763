//! State representations: Bell-basis atomic amplitudes, truncated Fock
//! spaces, joint atom-oscillator states for one and two modes, reduced
//! density matrices and Haar-random sampling.
//!
//! Joint states store the atomic index in the order (Ψ⁻, Ψ⁺, gg, ee):
//! the interaction couples (gg, Ψ⁺, ee) within each excitation block while
//! Ψ⁻ is stationary, so this is the natural frame for the propagator.
//! Bell-basis views convert on demand.

use nalgebra::{DMatrix, Matrix4, SMatrix};
use num_complex::Complex64 as C64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{NltcError, Result};
use crate::model::ln_factorial;

pub const ATOM_DIM: usize = 4;
/// Storage indices.
pub const PSI_MINUS: usize = 0;
pub const PSI_PLUS: usize = 1;
pub const GG: usize = 2;
pub const EE: usize = 3;

const TAIL_TOL_BUILD: f64 = 1e-8;

/// Default Fock truncation for a coherent state with mean quantum number N:
/// ⌈N + 8√N⌉ keeps more than ±8σ of the Poisson distribution.
pub fn default_n_max(n_mean: f64) -> usize {
    (n_mean + 8.0 * n_mean.sqrt()).ceil() as usize
}

/// Amplitudes of a two-qubit pure state in the Bell basis
/// (|Ψ⁻⟩, |Ψ⁺⟩, |Φ⁻⟩, |Φ⁺⟩).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BellAmplitudes {
    pub c_minus: C64,
    pub c_plus: C64,
    pub d_minus: C64,
    pub d_plus: C64,
}

impl BellAmplitudes {
    pub fn new(c_minus: C64, c_plus: C64, d_minus: C64, d_plus: C64) -> Self {
        Self { c_minus, c_plus, d_minus, d_plus }
    }

    /// From bare-basis amplitudes (gg, ge, eg, ee).
    pub fn from_bare(gg: C64, ge: C64, eg: C64, ee: C64) -> Self {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        Self {
            c_minus: (ge - eg) * s,
            c_plus: (ge + eg) * s,
            d_minus: (gg - ee) * s,
            d_plus: (gg + ee) * s,
        }
    }

    /// Bare-basis amplitudes (gg, ge, eg, ee).
    pub fn to_bare(&self) -> [C64; 4] {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        [
            (self.d_minus + self.d_plus) * s,
            (self.c_minus + self.c_plus) * s,
            (self.c_plus - self.c_minus) * s,
            (self.d_plus - self.d_minus) * s,
        ]
    }

    /// (c_g, c_e): amplitudes on |gg⟩ and |ee⟩, d_± = (c_g ± c_e)/√2.
    pub fn bare_gg_ee(&self) -> (C64, C64) {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        ((self.d_minus + self.d_plus) * s, (self.d_plus - self.d_minus) * s)
    }

    pub fn norm_sq(&self) -> f64 {
        self.c_minus.norm_sqr() + self.c_plus.norm_sqr() + self.d_minus.norm_sqr()
            + self.d_plus.norm_sqr()
    }

    pub fn normalized(&self) -> Self {
        let n = self.norm_sq().sqrt();
        Self {
            c_minus: self.c_minus / n,
            c_plus: self.c_plus / n,
            d_minus: self.d_minus / n,
            d_plus: self.d_plus / n,
        }
    }

    pub fn as_array(&self) -> [C64; 4] {
        [self.c_minus, self.c_plus, self.d_minus, self.d_plus]
    }

    pub fn gg() -> Self {
        Self::from_bare(C64::ONE, C64::ZERO, C64::ZERO, C64::ZERO)
    }

    pub fn ee() -> Self {
        Self::from_bare(C64::ZERO, C64::ZERO, C64::ZERO, C64::ONE)
    }

    pub fn psi_minus() -> Self {
        Self::new(C64::ONE, C64::ZERO, C64::ZERO, C64::ZERO)
    }

    pub fn psi_plus() -> Self {
        Self::new(C64::ZERO, C64::ONE, C64::ZERO, C64::ZERO)
    }

    pub fn phi_minus() -> Self {
        Self::new(C64::ZERO, C64::ZERO, C64::ONE, C64::ZERO)
    }

    pub fn phi_plus() -> Self {
        Self::new(C64::ZERO, C64::ZERO, C64::ZERO, C64::ONE)
    }
}

/// A coherent state |α e^{iφ}⟩ with α ≥ 0; the mean quantum number is α².
#[derive(Debug, Clone, Copy)]
pub struct CoherentSpec {
    pub alpha: f64,
    pub phase: f64,
}

impl CoherentSpec {
    pub fn new(alpha: f64, phase: f64) -> Self {
        assert!(alpha >= 0.0, "coherent amplitude must be nonnegative, got {alpha}");
        Self { alpha, phase }
    }

    pub fn real(alpha: f64) -> Self {
        Self::new(alpha, 0.0)
    }

    pub fn n_mean(&self) -> f64 {
        self.alpha * self.alpha
    }

    pub fn label(&self) -> C64 {
        C64::from_polar(self.alpha, self.phase)
    }
}

/// Truncated Fock coefficients of a coherent state with complex label β:
/// p_n e^{i n arg β} with p_n = e^{-|β|²/2} |β|^n / √(n!). The complex-label
/// form is what the drifting components α e^{∓iω' t} need.
pub fn coherent_amplitudes(label: C64, n_max: usize) -> Vec<C64> {
    let r = label.norm();
    if r == 0.0 {
        let mut v = vec![C64::ZERO; n_max + 1];
        v[0] = C64::ONE;
        return v;
    }
    let phase = label.arg();
    let ln_r = r.ln();
    (0..=n_max)
        .map(|n| {
            let ln_mag = -r * r / 2.0 + n as f64 * ln_r - 0.5 * ln_factorial(n);
            C64::from_polar(ln_mag.exp(), phase * n as f64)
        })
        .collect()
}

/// Truncated coherent coefficient vector with the tail-mass check.
pub fn coherent_fock(spec: &CoherentSpec, n_max: usize) -> Result<Vec<C64>> {
    let v = coherent_amplitudes(spec.label(), n_max);
    let norm: f64 = v.iter().map(|c| c.norm_sqr()).sum();
    let tail = 1.0 - norm;
    if tail > TAIL_TOL_BUILD {
        return Err(NltcError::Truncation { tail, limit: TAIL_TOL_BUILD });
    }
    Ok(v)
}

/// Joint state of the two atoms and one or two bosonic modes on a truncated
/// Fock space. Amplitudes are laid out as [atom][n] (or [atom][n][m]).
#[derive(Debug, Clone)]
pub struct JointState {
    pub n_max: usize,
    pub mode_count: usize,
    pub amp: Vec<C64>,
}

impl JointState {
    pub fn zero(n_max: usize, mode_count: usize) -> Result<Self> {
        if mode_count == 2 && n_max > 4096 {
            return Err(NltcError::SizeGuard(format!(
                "two-mode truncation n_max = {n_max} exceeds the 4096 memory guard"
            )));
        }
        assert!(mode_count == 1 || mode_count == 2);
        let per_atom = (n_max + 1).pow(mode_count as u32);
        Ok(Self { n_max, mode_count, amp: vec![C64::ZERO; ATOM_DIM * per_atom] })
    }

    pub fn fock_dim(&self) -> usize {
        self.n_max + 1
    }

    #[inline]
    pub fn idx(&self, atom: usize, n: usize) -> usize {
        debug_assert!(self.mode_count == 1);
        atom * self.fock_dim() + n
    }

    #[inline]
    pub fn idx2(&self, atom: usize, n: usize, m: usize) -> usize {
        debug_assert!(self.mode_count == 2);
        (atom * self.fock_dim() + n) * self.fock_dim() + m
    }

    #[inline]
    pub fn at(&self, atom: usize, n: usize) -> C64 {
        self.amp[self.idx(atom, n)]
    }

    #[inline]
    pub fn at_mut(&mut self, atom: usize, n: usize) -> &mut C64 {
        let k = self.idx(atom, n);
        &mut self.amp[k]
    }

    #[inline]
    pub fn at2(&self, atom: usize, n: usize, m: usize) -> C64 {
        self.amp[self.idx2(atom, n, m)]
    }

    #[inline]
    pub fn at2_mut(&mut self, atom: usize, n: usize, m: usize) -> &mut C64 {
        let k = self.idx2(atom, n, m);
        &mut self.amp[k]
    }

    pub fn norm_sq(&self) -> f64 {
        self.amp.iter().map(|c| c.norm_sqr()).sum()
    }

    pub fn normalize(&mut self) {
        let n = self.norm_sq().sqrt();
        if n > 0.0 {
            for c in &mut self.amp {
                *c /= n;
            }
        }
    }

    /// Probability mass in the top five Fock levels of each mode, the
    /// truncation-leak indicator.
    pub fn tail_mass(&self) -> f64 {
        let dim = self.fock_dim();
        let lo = dim.saturating_sub(5);
        let mut mass = 0.0;
        match self.mode_count {
            1 => {
                for a in 0..ATOM_DIM {
                    for n in lo..dim {
                        mass += self.at(a, n).norm_sqr();
                    }
                }
            }
            _ => {
                for a in 0..ATOM_DIM {
                    for n in 0..dim {
                        for m in 0..dim {
                            if n >= lo || m >= lo {
                                mass += self.at2(a, n, m).norm_sqr();
                            }
                        }
                    }
                }
            }
        }
        mass
    }

    pub fn inner(&self, other: &Self) -> Result<C64> {
        if self.amp.len() != other.amp.len() {
            return Err(NltcError::DimensionMismatch(format!(
                "{} vs {} amplitudes",
                self.amp.len(),
                other.amp.len()
            )));
        }
        Ok(self.amp.iter().zip(&other.amp).map(|(a, b)| a.conj() * b).sum())
    }

    /// Expectation of the excitation number I = a†a + S_z (+ b†b for two
    /// modes), the first constant of motion.
    pub fn excitation_expectation(&self) -> f64 {
        let dim = self.fock_dim();
        let sz = [0.0, 0.0, -1.0, 1.0];
        let mut acc = 0.0;
        for a in 0..ATOM_DIM {
            for n in 0..dim {
                match self.mode_count {
                    1 => acc += (n as f64 + sz[a]) * self.at(a, n).norm_sqr(),
                    _ => {
                        for m in 0..dim {
                            acc += (n as f64 + m as f64 + sz[a])
                                * self.at2(a, n, m).norm_sqr();
                        }
                    }
                }
            }
        }
        acc
    }

    /// Expectation of S², the second constant of motion: 0 on the singlet
    /// Ψ⁻ and 2 on the triplet (Ψ⁺, gg, ee).
    pub fn s_squared_expectation(&self) -> f64 {
        let dim = self.fock_dim();
        let per_atom = (dim).pow(self.mode_count as u32);
        let singlet: f64 = self.amp[..per_atom].iter().map(|c| c.norm_sqr()).sum();
        2.0 * (self.norm_sq() - singlet)
    }
}

/// Product state |ψ⟩|α e^{iφ}⟩ on the truncated Fock space.
pub fn build_initial(atoms: &BellAmplitudes, field: &CoherentSpec, n_max: usize) -> Result<JointState> {
    let p = coherent_fock(field, n_max)?;
    let (cg, ce) = atoms.bare_gg_ee();
    let mut st = JointState::zero(n_max, 1)?;
    for n in 0..=n_max {
        *st.at_mut(PSI_MINUS, n) = atoms.c_minus * p[n];
        *st.at_mut(PSI_PLUS, n) = atoms.c_plus * p[n];
        *st.at_mut(GG, n) = cg * p[n];
        *st.at_mut(EE, n) = ce * p[n];
    }
    let tail = st.tail_mass();
    if tail > TAIL_TOL_BUILD {
        return Err(NltcError::Truncation { tail, limit: TAIL_TOL_BUILD });
    }
    Ok(st)
}

/// Product state |ψ⟩|α_a⟩|α_b⟩ for the two-mode protocols.
pub fn build_initial_two_mode(
    atoms: &BellAmplitudes,
    field_a: &CoherentSpec,
    field_b: &CoherentSpec,
    n_max: usize,
) -> Result<JointState> {
    let pa = coherent_fock(field_a, n_max)?;
    let pb = coherent_fock(field_b, n_max)?;
    let (cg, ce) = atoms.bare_gg_ee();
    let at = [atoms.c_minus, atoms.c_plus, cg, ce];
    let mut st = JointState::zero(n_max, 2)?;
    for (a, &amp_a) in at.iter().enumerate() {
        if amp_a == C64::ZERO {
            continue;
        }
        for n in 0..=n_max {
            let pre = amp_a * pa[n];
            for m in 0..=n_max {
                *st.at2_mut(a, n, m) = pre * pb[m];
            }
        }
    }
    Ok(st)
}

/// Pure two-qubit state drawn from the Haar (unitarily invariant) measure:
/// a complex Gaussian 4-vector, normalized.
pub fn haar_random_two_qubit<R: Rng + ?Sized>(rng: &mut R) -> BellAmplitudes {
    let mut draw = || {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        C64::new(re, im)
    };
    BellAmplitudes::new(draw(), draw(), draw(), draw()).normalized()
}

/// 4×4 reduced density matrix of the atoms in the Bell basis
/// (|Ψ⁻⟩, |Ψ⁺⟩, |Φ⁻⟩, |Φ⁺⟩).
#[derive(Debug, Clone)]
pub struct AtomicDensityMatrix(pub Matrix4<C64>);

/// Storage (Ψ⁻, Ψ⁺, gg, ee) → Bell (Ψ⁻, Ψ⁺, Φ⁻, Φ⁺) change of basis.
fn storage_to_bell_matrix() -> Matrix4<C64> {
    let s = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let mut m = Matrix4::zeros();
    m[(0, 0)] = C64::ONE;
    m[(1, 1)] = C64::ONE;
    m[(2, 2)] = s;
    m[(2, 3)] = -s;
    m[(3, 2)] = s;
    m[(3, 3)] = s;
    m
}

/// Bell (Ψ⁻, Ψ⁺, Φ⁻, Φ⁺) → bare computational (gg, ge, eg, ee) change of
/// basis; columns are the Bell states.
pub fn bell_to_bare_matrix() -> Matrix4<C64> {
    let s = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let mut m = Matrix4::zeros();
    // |Psi-> = (ge - eg)/sqrt2, |Psi+> = (ge + eg)/sqrt2
    m[(1, 0)] = s;
    m[(2, 0)] = -s;
    m[(1, 1)] = s;
    m[(2, 1)] = s;
    // |Phi-> = (gg - ee)/sqrt2, |Phi+> = (gg + ee)/sqrt2
    m[(0, 2)] = s;
    m[(3, 2)] = -s;
    m[(0, 3)] = s;
    m[(3, 3)] = s;
    m
}

impl AtomicDensityMatrix {
    pub fn new(m: Matrix4<C64>) -> Result<Self> {
        let herm = (m - m.adjoint()).norm();
        if herm > 1e-10 {
            return Err(NltcError::InvalidDensityMatrix(format!("non-Hermitian by {herm:.2e}")));
        }
        let tr = (m.trace().re - 1.0).abs();
        if tr > 1e-10 {
            return Err(NltcError::InvalidDensityMatrix(format!("trace off unity by {tr:.2e}")));
        }
        Ok(Self(m))
    }

    pub fn from_pure(amps: &BellAmplitudes) -> Self {
        let v = nalgebra::Vector4::from_row_slice(&[
            amps.c_minus,
            amps.c_plus,
            amps.d_minus,
            amps.d_plus,
        ]);
        Self(&v * v.adjoint())
    }

    pub fn purity(&self) -> f64 {
        (&self.0 * &self.0).trace().re
    }

    /// Same operator written in the bare computational basis (gg, ge, eg, ee).
    pub fn to_bare(&self) -> Matrix4<C64> {
        let b = bell_to_bare_matrix();
        &b * &self.0 * b.adjoint()
    }

    pub fn diagonal(&self) -> [f64; 4] {
        [self.0[(0, 0)].re, self.0[(1, 1)].re, self.0[(2, 2)].re, self.0[(3, 3)].re]
    }
}

/// Trace out the oscillator(s): ρ_at = Tr_osc |Ψ⟩⟨Ψ|, returned in the Bell
/// basis.
pub fn partial_trace_atoms(state: &JointState) -> AtomicDensityMatrix {
    let per_atom = state.fock_dim().pow(state.mode_count as u32);
    let mut rho = Matrix4::<C64>::zeros();
    for a in 0..ATOM_DIM {
        for b in 0..ATOM_DIM {
            let mut acc = C64::ZERO;
            for k in 0..per_atom {
                acc += state.amp[a * per_atom + k] * state.amp[b * per_atom + k].conj();
            }
            rho[(a, b)] = acc;
        }
    }
    let t = storage_to_bell_matrix();
    AtomicDensityMatrix(&t * rho * t.adjoint())
}

/// Trace out the atoms of a single-mode state: ρ_os = Tr_at |Ψ⟩⟨Ψ|.
pub fn partial_trace_oscillator(state: &JointState) -> DMatrix<C64> {
    assert_eq!(state.mode_count, 1, "oscillator reduction is defined per mode");
    let dim = state.fock_dim();
    let mut rho = DMatrix::<C64>::zeros(dim, dim);
    for a in 0..ATOM_DIM {
        let row = &state.amp[a * dim..(a + 1) * dim];
        for n in 0..dim {
            for m in 0..dim {
                rho[(n, m)] += row[n] * row[m].conj();
            }
        }
    }
    rho
}

/// Apply an atomic gate given in the Bell basis to a joint state.
pub fn apply_atomic_gate(state: &mut JointState, gate_bell: &SMatrix<C64, 4, 4>) {
    let t = storage_to_bell_matrix();
    let g = t.adjoint() * gate_bell * t;
    // storage-basis action... columns mix the atomic index only
    let per_atom = state.fock_dim().pow(state.mode_count as u32);
    let mut scratch = [C64::ZERO; ATOM_DIM];
    for k in 0..per_atom {
        for (a, s) in scratch.iter_mut().enumerate() {
            *s = state.amp[a * per_atom + k];
        }
        for a in 0..ATOM_DIM {
            let mut acc = C64::ZERO;
            for (b, s) in scratch.iter().enumerate() {
                acc += g[(a, b)] * s;
            }
            state.amp[a * per_atom + k] = acc;
        }
    }
}

/// e^{i S_z angle}: in the storage basis a pure phase,
/// gg → e^{-i angle} gg and ee → e^{+i angle} ee.
pub fn apply_sz_rotation(state: &mut JointState, angle: f64) {
    let per_atom = state.fock_dim().pow(state.mode_count as u32);
    let pg = C64::from_polar(1.0, -angle);
    let pe = C64::from_polar(1.0, angle);
    for k in 0..per_atom {
        state.amp[GG * per_atom + k] *= pg;
        state.amp[EE * per_atom + k] *= pe;
    }
}

/// Lab-frame ↔ interaction-frame conversion. The interaction picture of the
/// dynamics is |Ψ⟩ = e^{-iIφ} e^{iIωt} |Ψ⟩_lab; this applies the inverse,
/// phasing each basis state by its I-eigenvalue (n + S_z).
pub fn to_lab_frame(state: &JointState, omega_free: f64, t: f64, phi: f64) -> JointState {
    let mut out = state.clone();
    let dim = state.fock_dim();
    let sz = [0.0, 0.0, -1.0, 1.0];
    for a in 0..ATOM_DIM {
        for n in 0..dim {
            match state.mode_count {
                1 => {
                    let i_eig = n as f64 + sz[a];
                    let ph = C64::from_polar(1.0, i_eig * (phi - omega_free * t));
                    let k = out.idx(a, n);
                    out.amp[k] *= ph;
                }
                _ => {
                    for m in 0..dim {
                        let i_eig = (n + m) as f64 + sz[a];
                        let ph = C64::from_polar(1.0, i_eig * (phi - omega_free * t));
                        let k = out.idx2(a, n, m);
                        out.amp[k] *= ph;
                    }
                }
            }
        }
    }
    out
}
