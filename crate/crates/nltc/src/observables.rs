//! Expectation values, the Husimi Q function, coherent-state overlaps and
//! the two fidelity diagnostics.

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;
use rayon::prelude::*;

use crate::error::{NltcError, Result};
use crate::evolution::ApproxState;
use crate::hilbert::{coherent_amplitudes, AtomicDensityMatrix, JointState, EE, GG};
use crate::model::LinearizedSpectrum;

/// ⟨S_z⟩ of a normalized single-mode joint state: +1 per |ee⟩, −1 per |gg⟩.
pub fn expect_sz(state: &JointState) -> f64 {
    assert_eq!(state.mode_count, 1);
    let dim = state.fock_dim();
    let mut acc = 0.0;
    for n in 0..dim {
        acc += state.at(EE, n).norm_sqr() - state.at(GG, n).norm_sqr();
    }
    acc
}

/// Closed-form ⟨S_z(t)⟩ for the initial state |ee⟩|α⟩:
/// e^{-2N sin²(ω' t/2)} cos(δ t + N sin ω' t).
pub fn approx_sz(spectrum: &LinearizedSpectrum, t: f64) -> f64 {
    let n = spectrum.n_mean;
    let th = spectrum.omega_prime_n * t;
    let envelope = (-2.0 * n * (th / 2.0).sin().powi(2)).exp();
    envelope * (spectrum.delta_n * t + n * th.sin()).cos()
}

/// Overlap ⟨α|α e^{iω' t}⟩ = e^{iN sin ω' t} e^{-2N sin²(ω' t/2)} between the
/// initial coherent state and a drifting component.
pub fn coherent_overlap(alpha: f64, spectrum: &LinearizedSpectrum, t: f64) -> C64 {
    let n = alpha * alpha;
    let th = spectrum.omega_prime_n * t;
    let mag = (-2.0 * n * (th / 2.0).sin().powi(2)).exp();
    C64::from_polar(mag, n * th.sin())
}

/// Rectangular phase-space grid for the Husimi function.
#[derive(Debug, Clone, Copy)]
pub struct GridSpec {
    pub re_range: (f64, f64),
    pub im_range: (f64, f64),
    pub resolution: usize,
}

impl GridSpec {
    /// Square window of half-width 1.5 α around the origin, 201 points per
    /// axis: wide enough for every revival-trajectory component |β| = α.
    pub fn centered(alpha: f64) -> Self {
        let w = 1.5 * alpha.max(1.0);
        Self { re_range: (-w, w), im_range: (-w, w), resolution: 201 }
    }
}

/// Sampled Q(β) = ⟨β|ρ_os|β⟩/π, row-major over the imaginary axis.
#[derive(Debug, Clone)]
pub struct HusimiGrid {
    pub re_range: (f64, f64),
    pub im_range: (f64, f64),
    pub resolution: usize,
    pub values: Vec<f64>,
}

impl HusimiGrid {
    pub fn beta_at(&self, ix: usize, iy: usize) -> C64 {
        let r = self.resolution as f64 - 1.0;
        C64::new(
            self.re_range.0 + (self.re_range.1 - self.re_range.0) * ix as f64 / r,
            self.im_range.0 + (self.im_range.1 - self.im_range.0) * iy as f64 / r,
        )
    }

    pub fn value(&self, ix: usize, iy: usize) -> f64 {
        self.values[iy * self.resolution + ix]
    }

    /// Riemann-sum estimate of ∫ Q d²β (equals 1 for a unit-trace matrix up
    /// to grid and window error).
    pub fn riemann_norm(&self) -> f64 {
        let r = self.resolution as f64 - 1.0;
        let da = (self.re_range.1 - self.re_range.0) / r * (self.im_range.1 - self.im_range.0) / r;
        self.values.iter().sum::<f64>() * da
    }

    /// Strict interior local maxima above a threshold, as (β, Q) pairs.
    pub fn local_maxima(&self, threshold: f64) -> Vec<(C64, f64)> {
        let r = self.resolution;
        let mut out = Vec::new();
        for iy in 1..r - 1 {
            for ix in 1..r - 1 {
                let v = self.value(ix, iy);
                if v <= threshold {
                    continue;
                }
                let mut is_max = true;
                'scan: for dy in -1i64..=1 {
                    for dx in -1i64..=1 {
                        if dx == 0 && dy == 0 {
                            continue;
                        }
                        let w = self.value((ix as i64 + dx) as usize, (iy as i64 + dy) as usize);
                        if w >= v {
                            is_max = false;
                            break 'scan;
                        }
                    }
                }
                if is_max {
                    out.push((self.beta_at(ix, iy), v));
                }
            }
        }
        out
    }

    /// CSV rows (beta_re, beta_im, q).
    pub fn csv_rows(&self) -> Vec<[f64; 3]> {
        let mut rows = Vec::with_capacity(self.values.len());
        for iy in 0..self.resolution {
            for ix in 0..self.resolution {
                let b = self.beta_at(ix, iy);
                rows.push([b.re, b.im, self.value(ix, iy)]);
            }
        }
        rows
    }
}

/// Husimi function of an oscillator density matrix. The matrix is factored
/// once through its eigenbasis (rank ≤ 4 for the reductions arising here),
/// then Q(β) = Σ_k λ_k |⟨β|u_k⟩|²/π per grid point.
pub fn husimi(rho_os: &DMatrix<C64>, grid: &GridSpec) -> Result<HusimiGrid> {
    let dim = rho_os.nrows();
    if rho_os.ncols() != dim {
        return Err(NltcError::DimensionMismatch("husimi needs a square matrix".into()));
    }
    let herm = (rho_os - rho_os.adjoint()).norm();
    if herm > 1e-9 {
        return Err(NltcError::InvalidDensityMatrix(format!("non-Hermitian by {herm:.2e}")));
    }
    let eig = nalgebra::SymmetricEigen::new(rho_os.clone());
    let lam_max = eig.eigenvalues.iter().cloned().fold(0.0_f64, f64::max);
    let mut comps: Vec<(f64, Vec<C64>)> = Vec::new();
    for (k, &lam) in eig.eigenvalues.iter().enumerate() {
        if lam > lam_max * 1e-13 && lam > 0.0 {
            comps.push((lam, eig.eigenvectors.column(k).iter().cloned().collect()));
        }
    }
    let r = grid.resolution;
    let values: Vec<f64> = (0..r * r)
        .into_par_iter()
        .map(|k| {
            let (ix, iy) = (k % r, k / r);
            let rr = r as f64 - 1.0;
            let beta = C64::new(
                grid.re_range.0 + (grid.re_range.1 - grid.re_range.0) * ix as f64 / rr,
                grid.im_range.0 + (grid.im_range.1 - grid.im_range.0) * iy as f64 / rr,
            );
            let cb = coherent_amplitudes(beta, dim - 1);
            let mut q = 0.0;
            for (lam, u) in &comps {
                let ov: C64 = cb.iter().zip(u).map(|(c, v)| c.conj() * v).sum();
                q += lam * ov.norm_sqr();
            }
            q / std::f64::consts::PI
        })
        .collect();
    Ok(HusimiGrid {
        re_range: grid.re_range,
        im_range: grid.im_range,
        resolution: r,
        values,
    })
}

/// State fidelity |⟨Ψ_ap|Ψ⟩|²/𝒩 between the exact state and a materialized
/// approximate vector with squared norm `norm_sq`.
pub fn state_fidelity(exact: &JointState, approx: &JointState, norm_sq: f64) -> Result<f64> {
    let ov = approx.inner(exact)?;
    Ok(ov.norm_sqr() / norm_sq)
}

/// Fidelity between the exact state and an [`ApproxState`], normalizing by
/// the exact squared norm of the two-component ansatz.
pub fn approx_fidelity(exact: &JointState, approx: &ApproxState) -> Result<f64> {
    let vec = approx.materialize(exact.n_max)?;
    let n2 = vec.norm_sq();
    state_fidelity(exact, &vec, n2)
}

/// Uhlmann fidelity (Tr √(√ρ σ √ρ))² of two 4×4 atomic density matrices,
/// via Hermitian eigendecompositions with eigenvalue clamping at zero.
pub fn atomic_fidelity(rho: &AtomicDensityMatrix, sigma: &AtomicDensityMatrix) -> Result<f64> {
    let sqrt_rho = psd_sqrt(&rho.0)?;
    let m = &sqrt_rho * &sigma.0 * &sqrt_rho;
    let eig = nalgebra::SymmetricEigen::new(m);
    let tr: f64 = eig.eigenvalues.iter().map(|&l| l.max(0.0).sqrt()).sum();
    Ok(tr * tr)
}

fn psd_sqrt(m: &nalgebra::Matrix4<C64>) -> Result<nalgebra::Matrix4<C64>> {
    let eig = nalgebra::SymmetricEigen::new(*m);
    if let Some(l) = eig.eigenvalues.iter().find(|&&l| l < -1e-10) {
        return Err(NltcError::InvalidDensityMatrix(format!("negative eigenvalue {l:.2e}")));
    }
    let mut out = nalgebra::Matrix4::<C64>::zeros();
    for k in 0..4 {
        let s = eig.eigenvalues[k].max(0.0).sqrt();
        let u = eig.eigenvectors.column(k);
        for i in 0..4 {
            for j in 0..4 {
                out[(i, j)] += C64::new(s, 0.0) * u[i] * u[j].conj();
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::evolution::{approx_state, evolve_exact};
    use crate::hilbert::{build_initial, default_n_max, BellAmplitudes, CoherentSpec};
    use crate::model::IntensityModel;
    use approx::assert_abs_diff_eq;
    use nalgebra::Matrix4;

    #[test]
    fn sz_basics() {
        let st = build_initial(&BellAmplitudes::ee(), &CoherentSpec::real(3.0), 45).unwrap();
        assert_abs_diff_eq!(expect_sz(&st), 1.0, epsilon = 1e-10);
        let st = build_initial(&BellAmplitudes::psi_plus(), &CoherentSpec::real(3.0), 45).unwrap();
        assert_abs_diff_eq!(expect_sz(&st), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn sz_collapse_value_at_tc() {
        // the Gaussian envelope at t_c is e^{-2}, leaving |<S_z>| near 0.12
        // for BS at N = 85 once the cosine factor is included
        let model = IntensityModel::buck_sukumar(1.0);
        let n = 85.0;
        let spec = model.linearize(n).unwrap();
        let st = build_initial(&BellAmplitudes::ee(), &CoherentSpec::real(n.sqrt()), default_n_max(n))
            .unwrap();
        let out = evolve_exact(&st, &model, spec.t_collapse).unwrap();
        let v = expect_sz(&out).abs();
        assert!(v < 0.2, "collapsed oscillation, got {v}");
        assert!((v - approx_sz(&spec, spec.t_collapse).abs()).abs() < 0.05);
    }

    #[test]
    fn approx_sz_baselines() {
        let model = IntensityModel::buck_sukumar(1.0);
        let spec = model.linearize(85.0).unwrap();
        assert_abs_diff_eq!(approx_sz(&spec, 0.0), 1.0, epsilon = 1e-14);
        // at t_r the envelope is back to unity
        let th = spec.omega_prime_n * spec.t_revival;
        assert_abs_diff_eq!(th.sin(), 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(
            approx_sz(&spec, spec.t_revival).abs(),
            (spec.delta_n * spec.t_revival).cos().abs(),
            epsilon = 1e-12
        );
    }

    #[test]
    fn approx_sz_tracks_exact_early() {
        let model = IntensityModel::buck_sukumar(1.0);
        let n = 85.0;
        let spec = model.linearize(n).unwrap();
        let nmax = default_n_max(n);
        let st = build_initial(&BellAmplitudes::ee(), &CoherentSpec::real(n.sqrt()), nmax).unwrap();
        let mut worst: f64 = 0.0;
        for i in 0..300 {
            let t = spec.t_revival / 4.0 * i as f64 / 299.0;
            let exact = expect_sz(&evolve_exact(&st, &model, t).unwrap());
            worst = worst.max((exact - approx_sz(&spec, t)).abs());
        }
        // the closed form drops a cos(omega' t) dressing factor; the honest
        // gap on this window is about 0.066
        assert!(worst < 0.08, "max |exact - approx| = {worst}");
    }

    #[test]
    fn coherent_overlap_matches_fock_inner_product() {
        let model = IntensityModel::buck_sukumar(1.0);
        for n_mean in [30.0, 120.0, 200.0] {
            let spec = model.linearize(n_mean).unwrap();
            let alpha = n_mean.sqrt();
            let nmax = default_n_max(n_mean);
            for t in [0.0, 0.02, 0.1, 0.31] {
                let th = spec.omega_prime_n * t;
                let a = coherent_amplitudes(C64::new(alpha, 0.0), nmax);
                let b = coherent_amplitudes(C64::from_polar(alpha, th), nmax);
                let dot: C64 = a.iter().zip(&b).map(|(x, y)| x.conj() * y).sum();
                let closed = coherent_overlap(alpha, &spec, t);
                assert!((dot - closed).norm() < 1e-8, "t={t}: {dot} vs {closed}");
            }
        }
        let spec = model.linearize(85.0).unwrap();
        assert_abs_diff_eq!((coherent_overlap(85.0_f64.sqrt(), &spec, 0.0) - C64::ONE).norm(), 0.0, epsilon = 1e-14);
        // antipodal separation
        let t_half = spec.t_revival / 2.0;
        assert_abs_diff_eq!(coherent_overlap(85.0_f64.sqrt(), &spec, t_half).norm(), (-2.0 * 85.0_f64).exp(), epsilon = 1e-30);
    }

    #[test]
    fn husimi_coherent_peak() {
        let alpha = 3.0;
        let st = build_initial(&BellAmplitudes::ee(), &CoherentSpec::real(alpha), 45).unwrap();
        let rho = crate::hilbert::partial_trace_oscillator(&st);
        let grid = GridSpec { re_range: (1.0, 5.0), im_range: (-2.0, 2.0), resolution: 81 };
        let q = husimi(&rho, &grid).unwrap();
        // Q(alpha) = 1/pi for a coherent state
        let (ix, iy) = (40, 40); // beta = 3.0 + 0i
        assert_abs_diff_eq!(q.beta_at(ix, iy).re, alpha, epsilon = 1e-12);
        assert_abs_diff_eq!(q.value(ix, iy), 1.0 / std::f64::consts::PI, epsilon = 1e-9);
        assert!(q.values.iter().all(|&v| v >= 0.0));
        assert!(q.values.iter().all(|&v| v <= 1.0 / std::f64::consts::PI + 1e-9));
    }

    #[test]
    fn state_fidelity_limits() {
        let st = build_initial(&BellAmplitudes::ee(), &CoherentSpec::real(2.0), 30).unwrap();
        assert_abs_diff_eq!(state_fidelity(&st, &st, 1.0).unwrap(), 1.0, epsilon = 1e-12);
        let model = IntensityModel::buck_sukumar(1.0);
        let spec = model.linearize(85.0).unwrap();
        let atoms = BellAmplitudes::ee();
        let nmax = default_n_max(85.0);
        let exact = build_initial(&atoms, &CoherentSpec::real(85.0_f64.sqrt()), nmax).unwrap();
        let exact = evolve_exact(&exact, &model, spec.t_collapse).unwrap();
        let ap = approx_state(&atoms, 85.0_f64.sqrt(), &spec, spec.t_collapse);
        let f = approx_fidelity(&exact, &ap).unwrap();
        assert!(f > 0.95, "fidelity at t_c = {f}");
        assert!(f <= 1.0 + 1e-9);
    }

    #[test]
    fn atomic_fidelity_limits() {
        let rho = AtomicDensityMatrix::from_pure(&BellAmplitudes::psi_minus());
        assert_abs_diff_eq!(atomic_fidelity(&rho, &rho).unwrap(), 1.0, epsilon = 1e-10);
        let mut a = Matrix4::<C64>::zeros();
        a[(0, 0)] = C64::ONE;
        let mut b = Matrix4::<C64>::zeros();
        b[(1, 1)] = C64::ONE;
        let (a, b) = (AtomicDensityMatrix(a), AtomicDensityMatrix(b));
        assert_abs_diff_eq!(atomic_fidelity(&a, &b).unwrap(), 0.0, epsilon = 1e-12);
        // rank-1 case reduces to |<psi|phi>|^2, and it is symmetric
        let p1 = AtomicDensityMatrix::from_pure(&BellAmplitudes::psi_plus());
        let p2 = AtomicDensityMatrix::from_pure(
            &BellAmplitudes::new(
                C64::new(0.6, 0.0),
                C64::new(0.0, 0.8),
                C64::ZERO,
                C64::ZERO,
            ),
        );
        let f12 = atomic_fidelity(&p1, &p2).unwrap();
        let f21 = atomic_fidelity(&p2, &p1).unwrap();
        assert_abs_diff_eq!(f12, 0.64, epsilon = 1e-10);
        assert_abs_diff_eq!(f12, f21, epsilon = 1e-9);
    }
}
