//! Time evolution: the exact block propagator, a dense-exponential oracle,
//! the coherent-state approximate solution and its closed forms at
//! fractional revival times.
//!
//! Everything here works in the interaction picture of the resonant frame;
//! e^{-iVt} conserves the excitation number, so the propagator factors into
//! blocks coupling (gg, n+1), (Ψ⁺, n), (ee, n-1) with the exact frequencies
//! ν_n = √(Ω_n² + Ω_{n-1}²).

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;

use crate::error::{NltcError, Result};
use crate::hilbert::{
    coherent_amplitudes, BellAmplitudes, JointState, ATOM_DIM, EE, GG, PSI_MINUS, PSI_PLUS,
};
use crate::model::{IntensityModel, LinearizedSpectrum, SpectralData};

const LEAK_TOL: f64 = 1e-6;

/// sin(x)/x, series-expanded near zero.
fn sinc(x: f64) -> f64 {
    if x.abs() < 1e-4 {
        1.0 - x * x / 6.0 * (1.0 - x * x / 20.0)
    } else {
        x.sin() / x
    }
}

/// One 3x3 interaction-picture block at fixed excitation number, in the
/// degenerate-safe parametrization
/// U = [[1 + A²q, -iAr, ABq], [-iAr, c, -iBr], [ABq, -iBr, 1 + B²q]]
/// with q = (cos νt - 1)/ν² and r = sin(νt)/ν.
#[derive(Debug, Clone, Copy)]
struct Block {
    a: f64,
    b: f64,
    c: f64,
    q: f64,
    r: f64,
}

impl Block {
    fn new(a: f64, b: f64, t: f64) -> Self {
        let nu = (a * a + b * b).sqrt();
        let half = sinc(nu * t / 2.0) * t / 2.0;
        Self {
            a,
            b,
            c: (nu * t).cos(),
            q: -2.0 * half * half,
            r: sinc(nu * t) * t,
        }
    }

    /// Apply to (gg[n+1], psi+[n], ee[n-1]).
    #[inline]
    fn apply(&self, g: C64, p: C64, e: C64) -> (C64, C64, C64) {
        let (a, b) = (self.a, self.b);
        let i = C64::I;
        let g2 = (1.0 + a * a * self.q) * g - i * (a * self.r) * p + (a * b * self.q) * e;
        let p2 = -i * (a * self.r) * g + self.c * p - i * (b * self.r) * e;
        let e2 = (a * b * self.q) * g - i * (b * self.r) * p + (1.0 + b * b * self.q) * e;
        (g2, p2, e2)
    }
}

/// Exact propagator e^{-iVt} on a truncated Fock space, cached per time
/// point. Evolution to any t is a single application; no time stepping.
pub struct BlockPropagator {
    n_max: usize,
    t: f64,
    /// blocks for excitation number 1..=n_max-1 (full 3x3)
    full: Vec<Block>,
    /// the n = 0 two-level block (gg[1], psi+[0]) angle Ω₀ t
    edge0: (f64, f64),
    /// the truncated top block (psi+[n_max], ee[n_max-1]) angle Ω_{n_max-1} t
    edge_top: (f64, f64),
}

impl BlockPropagator {
    pub fn new(spectral: &SpectralData, t: f64) -> Self {
        let n_max = spectral.n_max;
        let om = &spectral.capital_omega;
        let full = (1..n_max)
            .map(|n| Block::new(om[n], om[n - 1], t))
            .collect();
        let a0 = om[0] * t;
        let atop = if n_max >= 1 { om[n_max - 1] * t } else { 0.0 };
        Self {
            n_max,
            t,
            full,
            edge0: (a0.cos(), a0.sin()),
            edge_top: (atop.cos(), atop.sin()),
        }
    }

    pub fn time(&self) -> f64 {
        self.t
    }

    /// Apply to a single-mode amplitude slab through an index map; the map
    /// lets the same propagator act on either mode of a two-mode state.
    fn apply_indexed<F: Fn(usize, usize) -> usize>(&self, amp: &mut [C64], idx: F) {
        let n_max = self.n_max;
        let i = C64::I;
        // n = 0 block
        if n_max >= 1 {
            let (c, s) = self.edge0;
            let g = amp[idx(GG, 1)];
            let p = amp[idx(PSI_PLUS, 0)];
            amp[idx(GG, 1)] = c * g - i * s * p;
            amp[idx(PSI_PLUS, 0)] = -i * s * g + c * p;
        }
        for (k, blk) in self.full.iter().enumerate() {
            let n = k + 1;
            let (g, p, e) = blk.apply(amp[idx(GG, n + 1)], amp[idx(PSI_PLUS, n)], amp[idx(EE, n - 1)]);
            amp[idx(GG, n + 1)] = g;
            amp[idx(PSI_PLUS, n)] = p;
            amp[idx(EE, n - 1)] = e;
        }
        // truncated top block: the gg[n_max+1] partner is outside the space
        if n_max >= 1 {
            let (c, s) = self.edge_top;
            let p = amp[idx(PSI_PLUS, n_max)];
            let e = amp[idx(EE, n_max - 1)];
            amp[idx(PSI_PLUS, n_max)] = c * p - i * s * e;
            amp[idx(EE, n_max - 1)] = -i * s * p + c * e;
        }
        // gg[0], ee[n_max] and every psi- amplitude are stationary
    }

    pub fn apply(&self, state: &mut JointState) -> Result<()> {
        if state.mode_count != 1 {
            return Err(NltcError::DimensionMismatch(
                "block propagator acts on single-mode states; use evolve_mode_a/b".into(),
            ));
        }
        if state.n_max != self.n_max {
            return Err(NltcError::DimensionMismatch(format!(
                "state n_max {} vs propagator {}",
                state.n_max, self.n_max
            )));
        }
        let dim = state.fock_dim();
        self.apply_indexed(&mut state.amp, |a, n| a * dim + n);
        Ok(())
    }

    /// Check unitarity of every cached block (used by tests).
    pub fn max_unitarity_defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for blk in &self.full {
            let cols = [
                blk.apply(C64::ONE, C64::ZERO, C64::ZERO),
                blk.apply(C64::ZERO, C64::ONE, C64::ZERO),
                blk.apply(C64::ZERO, C64::ZERO, C64::ONE),
            ];
            for (i, ci) in cols.iter().enumerate() {
                for (j, cj) in cols.iter().enumerate() {
                    let dot = ci.0.conj() * cj.0 + ci.1.conj() * cj.1 + ci.2.conj() * cj.2;
                    let target = if i == j { C64::ONE } else { C64::ZERO };
                    worst = worst.max((dot - target).norm());
                }
            }
        }
        worst
    }
}

/// Evolve a single-mode joint state for time t under the exact propagator.
pub fn evolve_exact(state: &JointState, model: &IntensityModel, t: f64) -> Result<JointState> {
    let spectral = model.tabulate_spectrum(state.n_max)?;
    let prop = BlockPropagator::new(&spectral, t);
    let mut out = state.clone();
    prop.apply(&mut out)?;
    let tail = out.tail_mass();
    if tail > LEAK_TOL {
        return Err(NltcError::Truncation { tail, limit: LEAK_TOL });
    }
    Ok(out)
}

/// Evolve mode a of a two-mode state: the propagator acts on the [atom][n]
/// slab for every Fock index of mode b.
pub fn evolve_mode_a(state: &mut JointState, spectral: &SpectralData, t: f64) -> Result<()> {
    if state.mode_count != 2 {
        return Err(NltcError::DimensionMismatch("evolve_mode_a needs a two-mode state".into()));
    }
    let dim = state.fock_dim();
    let prop = BlockPropagator::new(spectral, t);
    for m in 0..dim {
        prop.apply_indexed(&mut state.amp, |a, n| (a * dim + n) * dim + m);
    }
    Ok(())
}

/// Evolve mode b of a two-mode state.
pub fn evolve_mode_b(state: &mut JointState, spectral: &SpectralData, t: f64) -> Result<()> {
    if state.mode_count != 2 {
        return Err(NltcError::DimensionMismatch("evolve_mode_b needs a two-mode state".into()));
    }
    let dim = state.fock_dim();
    let prop = BlockPropagator::new(spectral, t);
    for n in 0..dim {
        prop.apply_indexed(&mut state.amp, |a, m| (a * dim + n) * dim + m);
    }
    Ok(())
}

const ORACLE_N_MAX: usize = 64;

/// Dense verification path: build V = Ω (f(a†a) a S₊ + a† f(a†a) S₋) from
/// the operator definition in the bare product basis and exponentiate it by
/// Hermitian eigendecomposition. Independent of the block bookkeeping above.
pub fn evolve_oracle(state: &JointState, model: &IntensityModel, t: f64) -> Result<JointState> {
    if state.mode_count != 1 {
        return Err(NltcError::DimensionMismatch("oracle acts on single-mode states".into()));
    }
    if state.n_max > ORACLE_N_MAX {
        return Err(NltcError::SizeGuard(format!(
            "dense oracle limited to n_max <= {ORACLE_N_MAX}, got {}",
            state.n_max
        )));
    }
    let fdim = state.fock_dim();
    let dim = ATOM_DIM * fdim;

    // field operators
    let mut fa = DMatrix::<C64>::zeros(fdim, fdim); // f(a†a) a
    let mut adf = DMatrix::<C64>::zeros(fdim, fdim); // a† f(a†a)
    for n in 1..fdim {
        let lower = (n as f64).sqrt() * model.f_eigenvalue(n - 1);
        fa[(n - 1, n)] = C64::new(lower, 0.0);
        adf[(n, n - 1)] = C64::new(lower, 0.0);
    }
    // S- = |g><e|_1 + |g><e|_2 in the bare order (gg, ge, eg, ee)
    let mut s_minus = DMatrix::<C64>::zeros(4, 4);
    s_minus[(0, 1)] = C64::ONE; // ge -> gg
    s_minus[(0, 2)] = C64::ONE; // eg -> gg
    s_minus[(1, 3)] = C64::ONE; // ee -> ge
    s_minus[(2, 3)] = C64::ONE; // ee -> eg
    let s_plus = s_minus.adjoint();

    let om = C64::new(model.omega_coupling, 0.0);
    let v = (s_plus.kronecker(&fa) + s_minus.kronecker(&adf)) * om;

    let eig = nalgebra::SymmetricEigen::new(v);
    // bare vector from storage rows
    let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
    let mut bare = DMatrix::<C64>::zeros(dim, 1);
    for n in 0..fdim {
        let (pm, pp) = (state.at(PSI_MINUS, n), state.at(PSI_PLUS, n));
        bare[(n, 0)] = state.at(GG, n);
        bare[(fdim + n, 0)] = (pp + pm) * inv_sqrt2;
        bare[(2 * fdim + n, 0)] = (pp - pm) * inv_sqrt2;
        bare[(3 * fdim + n, 0)] = state.at(EE, n);
    }
    let mut coeffs = eig.eigenvectors.adjoint() * &bare;
    for (k, lam) in eig.eigenvalues.iter().enumerate() {
        coeffs[(k, 0)] *= C64::from_polar(1.0, -lam * t);
    }
    let evolved = &eig.eigenvectors * coeffs;

    let mut out = JointState::zero(state.n_max, 1)?;
    for n in 0..fdim {
        let (ge, eg) = (evolved[(fdim + n, 0)], evolved[(2 * fdim + n, 0)]);
        *out.at_mut(GG, n) = evolved[(n, 0)];
        *out.at_mut(PSI_MINUS, n) = (ge - eg) * inv_sqrt2;
        *out.at_mut(PSI_PLUS, n) = (ge + eg) * inv_sqrt2;
        *out.at_mut(EE, n) = evolved[(3 * fdim + n, 0)];
    }
    Ok(out)
}

/// The coherent-state approximate solution: a stationary component
/// (c₋|Ψ⁻⟩ + d₋|Φ⁻⟩)|α⟩ plus two drifting coherent components dressed by
/// e^{∓i(δ_N + S_z ω'_N)t}|φ_±⟩|α e^{∓iω'_N t}⟩ with b_± = (c₊ ± d₊)/√2.
#[derive(Debug, Clone)]
pub struct ApproxState {
    pub atoms: BellAmplitudes,
    pub b_plus: C64,
    pub b_minus: C64,
    pub alpha: f64,
    pub spectrum: LinearizedSpectrum,
    pub t: f64,
}

/// Build the approximate state at time t.
pub fn approx_state(
    atoms: &BellAmplitudes,
    alpha: f64,
    spectrum: &LinearizedSpectrum,
    t: f64,
) -> ApproxState {
    if alpha * alpha < 20.0 {
        log::warn!(
            "coherent-state approximation assumes N >> 1; N = {:.1} is small",
            alpha * alpha
        );
    }
    let s = std::f64::consts::FRAC_1_SQRT_2;
    ApproxState {
        atoms: *atoms,
        b_plus: (atoms.c_plus + atoms.d_plus) * s,
        b_minus: (atoms.c_plus - atoms.d_plus) * s,
        alpha,
        spectrum: *spectrum,
        t,
    }
}

impl ApproxState {
    /// Closed-form normalization 𝒩(t) with h(t) = δ_N t + N sin ω'_N t,
    /// as published. See `norm_sq_exact` for the exact squared norm of the
    /// two-component ansatz, which differs in the interference term by the
    /// stationary-state weight d₋.
    pub fn normalization(&self) -> f64 {
        let n = self.alpha * self.alpha;
        let th = self.spectrum.omega_prime_n * self.t;
        let h = self.spectrum.delta_n * self.t + n * th.sin();
        let e1 = (-2.0 * n * (th / 2.0).sin().powi(2)).exp();
        let e2 = (-2.0 * n * th.sin().powi(2)).exp();
        let cross = self.b_plus.conj() * self.b_minus * C64::from_polar(1.0, 2.0 * h);
        let inter = self.b_plus * C64::from_polar(1.0, -h) + self.b_minus * C64::from_polar(1.0, h);
        1.0 + 2.0 * cross.re * e2 * th.sin().powi(2)
            - std::f64::consts::SQRT_2 * inter.im * e1 * th.sin()
    }

    /// Exact ⟨num|num⟩ of the unnormalized ansatz, from the closed-form
    /// coherent-state overlaps.
    pub fn norm_sq_exact(&self) -> f64 {
        let n = self.alpha * self.alpha;
        let th = self.spectrum.omega_prime_n * self.t;
        let h = self.spectrum.delta_n * self.t + n * th.sin();
        let e1 = (-2.0 * n * (th / 2.0).sin().powi(2)).exp();
        let e2 = (-2.0 * n * th.sin().powi(2)).exp();
        let cross = self.b_plus.conj()
            * self.b_minus
            * C64::from_polar(1.0, 2.0 * self.spectrum.delta_n * self.t + n * (2.0 * th).sin());
        let inter = self.atoms.d_minus.conj()
            * (self.b_plus * C64::from_polar(1.0, -h) + self.b_minus * C64::from_polar(1.0, h));
        1.0 + 2.0 * cross.re * e2 * th.sin().powi(2)
            - std::f64::consts::SQRT_2 * inter.im * e1 * th.sin()
    }

    /// Materialize the unnormalized numerator onto a truncated Fock space.
    pub fn materialize(&self, n_max: usize) -> Result<JointState> {
        let mut st = JointState::zero(n_max, 1)?;
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let stat = coherent_amplitudes(C64::new(self.alpha, 0.0), n_max);
        for (k, p) in stat.iter().enumerate() {
            *st.at_mut(PSI_MINUS, k) += self.atoms.c_minus * p;
            *st.at_mut(GG, k) += self.atoms.d_minus * s * p;
            *st.at_mut(EE, k) -= self.atoms.d_minus * s * p;
        }
        let th = self.spectrum.omega_prime_n * self.t;
        let (ct, sin_t) = (th.cos(), th.sin());
        for (bpm, sign) in [(self.b_plus, 1.0), (self.b_minus, -1.0)] {
            if bpm == C64::ZERO {
                continue;
            }
            let pref = bpm * C64::from_polar(1.0, -sign * self.spectrum.delta_n * self.t) * s;
            let label = C64::from_polar(self.alpha, -sign * th);
            let drift = coherent_amplitudes(label, n_max);
            // e^{∓iS_z θ'} dressing: Φ⁺ coefficient ±cos θ', Φ⁻ coefficient i sin θ'
            let phi_plus = C64::new(sign * ct, 0.0);
            let phi_minus = C64::new(0.0, sin_t);
            let cg = (phi_plus + phi_minus) * s;
            let ce = (phi_plus - phi_minus) * s;
            for (k, p) in drift.iter().enumerate() {
                *st.at_mut(PSI_PLUS, k) += pref * p;
                *st.at_mut(GG, k) += pref * cg * p;
                *st.at_mut(EE, k) += pref * ce * p;
            }
        }
        Ok(st)
    }

    /// Materialized and normalized to unit norm.
    pub fn materialize_normalized(&self, n_max: usize) -> Result<JointState> {
        let mut st = self.materialize(n_max)?;
        st.normalize();
        Ok(st)
    }
}

/// One separable component: an atomic state times a superposition of
/// coherent states Σ_j amp_j |label_j⟩.
#[derive(Debug, Clone)]
pub struct RevivalComponent {
    pub atoms: BellAmplitudes,
    pub field: Vec<(C64, C64)>,
}

impl RevivalComponent {
    fn accumulate(&self, st: &mut JointState) {
        let (cg, ce) = self.atoms.bare_gg_ee();
        for &(amp, label) in &self.field {
            if amp == C64::ZERO {
                continue;
            }
            let coh = coherent_amplitudes(label, st.n_max);
            for (k, p) in coh.iter().enumerate() {
                let w = amp * p;
                *st.at_mut(PSI_MINUS, k) += self.atoms.c_minus * w;
                *st.at_mut(PSI_PLUS, k) += self.atoms.c_plus * w;
                *st.at_mut(GG, k) += cg * w;
                *st.at_mut(EE, k) += ce * w;
            }
        }
    }
}

/// Closed-form state at a fractional revival time: stationary part
/// (c₋|Ψ⁻⟩ + d₋|Φ⁻⟩)|α⟩ plus the time-dependent part |Υ⟩, kept separate.
#[derive(Debug, Clone)]
pub struct RevivalState {
    pub stationary: RevivalComponent,
    pub time_dependent: RevivalComponent,
}

impl RevivalState {
    pub fn materialize(&self, n_max: usize) -> Result<JointState> {
        let mut st = JointState::zero(n_max, 1)?;
        self.stationary.accumulate(&mut st);
        self.time_dependent.accumulate(&mut st);
        Ok(st)
    }
}

fn stationary_part(atoms: &BellAmplitudes, alpha: f64) -> RevivalComponent {
    RevivalComponent {
        atoms: BellAmplitudes::new(atoms.c_minus, C64::ZERO, atoms.d_minus, C64::ZERO),
        field: vec![(C64::ONE, C64::new(alpha, 0.0))],
    }
}

/// |Υ(k t_r/4)⟩ for odd k: the atoms factor out into (|Ψ⁺⟩ + i^k|Φ⁻⟩)/√2
/// regardless of the initial condition, against a two-component cat of the
/// drifting coherent states. The overall weight r stays with the field
/// amplitudes b_±.
pub fn quarter_revival_state(
    atoms: &BellAmplitudes,
    alpha: f64,
    spectrum: &LinearizedSpectrum,
    k: i64,
) -> Result<RevivalState> {
    if k.rem_euclid(2) != 1 {
        return Err(NltcError::Domain(format!("quarter-revival closed form needs odd k, got {k}")));
    }
    let t = spectrum.t_revival * k as f64 / 4.0;
    let th = spectrum.omega_prime_n * t; // an odd multiple of ±π/2
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let sk = th.sin(); // ±1
    let factor_atoms = BellAmplitudes::new(
        C64::ZERO,
        C64::new(s, 0.0),
        C64::new(0.0, sk * s),
        C64::ZERO,
    );
    let sspec = approx_state(atoms, alpha, spectrum, t);
    let field = vec![
        (sspec.b_plus * C64::from_polar(1.0, -spectrum.delta_n * t), C64::from_polar(alpha, -th)),
        (sspec.b_minus * C64::from_polar(1.0, spectrum.delta_n * t), C64::from_polar(alpha, th)),
    ];
    Ok(RevivalState {
        stationary: stationary_part(atoms, alpha),
        time_dependent: RevivalComponent { atoms: factor_atoms, field },
    })
}

/// Coefficients (c_k, d_k) of |ζ_{2,k}⟩ = c_k|Ψ⁺⟩ + d_k|Φ⁺⟩ at odd half
/// revivals, with θ_k = δ_N k t_r/2.
pub fn half_revival_coefficients(
    atoms: &BellAmplitudes,
    spectrum: &LinearizedSpectrum,
    k: i64,
) -> (C64, C64) {
    let theta_k = spectrum.delta_n * spectrum.t_revival * k as f64 / 2.0;
    let (c, s) = (theta_k.cos(), theta_k.sin());
    let ck = atoms.c_plus * c - C64::I * atoms.d_plus * s;
    let dk = C64::I * atoms.c_plus * s - atoms.d_plus * c;
    (ck, dk)
}

/// |Υ(k t_r/2)⟩ = (c_k|Ψ⁺⟩ + d_k|Φ⁺⟩)|−α⟩ for odd k.
pub fn half_revival_state(
    atoms: &BellAmplitudes,
    alpha: f64,
    spectrum: &LinearizedSpectrum,
    k: i64,
) -> Result<RevivalState> {
    if k.rem_euclid(2) != 1 {
        return Err(NltcError::Domain(format!("half-revival closed form needs odd k, got {k}")));
    }
    let (ck, dk) = half_revival_coefficients(atoms, spectrum, k);
    Ok(RevivalState {
        stationary: stationary_part(atoms, alpha),
        time_dependent: RevivalComponent {
            atoms: BellAmplitudes::new(C64::ZERO, ck, C64::ZERO, dk),
            field: vec![(C64::ONE, C64::new(-alpha, 0.0))],
        },
    })
}
