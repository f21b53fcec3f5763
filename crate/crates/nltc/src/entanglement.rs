//! Two-qubit concurrence and purity, plus the closed-form predictions at
//! fractional revival times.
//!
//! For the pure initial state c₋|Ψ⁻⟩ + c₊|Ψ⁺⟩ + d₋|Φ⁻⟩ + d₊|Φ⁺⟩ the
//! concurrence is |c₋² − d₋² − c₊² + d₊²| (complex squares); the reduced
//! atomic state at odd quarter revivals carries only the stationary part
//! |c₋² − d₋²|, and at odd half revivals ||c₋² − d₋²| − |d₊² − c₊²||.

use nalgebra::Matrix4;
use num_complex::Complex64 as C64;

use crate::error::{NltcError, Result};
use crate::hilbert::{AtomicDensityMatrix, BellAmplitudes};

/// σ_y ⊗ σ_y in the bare computational basis (gg, ge, eg, ee).
fn sigma_yy() -> Matrix4<C64> {
    let mut m = Matrix4::zeros();
    m[(0, 3)] = -C64::ONE;
    m[(1, 2)] = C64::ONE;
    m[(2, 1)] = C64::ONE;
    m[(3, 0)] = -C64::ONE;
    m
}

/// Wootters concurrence C = max(0, λ₁ − λ₂ − λ₃ − λ₄) with λ_i the square
/// roots of the eigenvalues of ρ ρ̃ in decreasing order. The spin flip
/// ρ̃ = σ_y⊗σ_y ρ* σ_y⊗σ_y conjugates in the computational basis, so the
/// Bell-basis input is rotated there first. The λ_i come from the Hermitian
/// form √ρ ρ̃ √ρ, which shares the spectrum of ρ ρ̃.
pub fn concurrence(rho: &AtomicDensityMatrix) -> Result<f64> {
    let bare = rho.to_bare();
    let eig = nalgebra::SymmetricEigen::new(bare);
    if let Some(l) = eig.eigenvalues.iter().find(|&&l| l < -1e-10) {
        return Err(NltcError::InvalidDensityMatrix(format!("negative eigenvalue {l:.2e}")));
    }
    // clamp eigenvalue noise before the square roots; sqrt turns 1e-16
    // rounding into 1e-8 otherwise
    let lmax = eig.eigenvalues.iter().cloned().fold(0.0_f64, f64::max);
    let clamp = |l: f64, scale: f64| if l < scale * 1e-13 { 0.0 } else { l.sqrt() };
    let mut sqrt_rho = Matrix4::<C64>::zeros();
    for k in 0..4 {
        let s = clamp(eig.eigenvalues[k], lmax);
        let u = eig.eigenvectors.column(k);
        for i in 0..4 {
            for j in 0..4 {
                sqrt_rho[(i, j)] += C64::new(s, 0.0) * u[i] * u[j].conj();
            }
        }
    }
    let yy = sigma_yy();
    let tilde = yy * bare.conjugate() * yy;
    let m = &sqrt_rho * tilde * &sqrt_rho;
    let eig = nalgebra::SymmetricEigen::new(m);
    let lmax = eig.eigenvalues.iter().cloned().fold(0.0_f64, f64::max);
    let mut lam: Vec<f64> = eig.eigenvalues.iter().map(|&l| clamp(l, lmax)).collect();
    lam.sort_by(|a, b| b.total_cmp(a));
    Ok((lam[0] - lam[1] - lam[2] - lam[3]).max(0.0))
}

/// Pure-state concurrence |c₋² − d₋² − c₊² + d₊²|.
pub fn pure_concurrence(atoms: &BellAmplitudes) -> f64 {
    let q = atoms.c_minus * atoms.c_minus - atoms.d_minus * atoms.d_minus
        - atoms.c_plus * atoms.c_plus
        + atoms.d_plus * atoms.d_plus;
    q.norm()
}

/// Closed-form concurrence of ρ_at at odd quarter revivals: |c₋² − d₋²|.
pub fn predicted_concurrence_quarter(atoms: &BellAmplitudes) -> f64 {
    (atoms.c_minus * atoms.c_minus - atoms.d_minus * atoms.d_minus).norm()
}

/// Closed-form concurrence of ρ_at at odd half revivals:
/// ||c₋² − d₋²| − |d₊² − c₊²||, never exceeding the initial concurrence.
pub fn predicted_concurrence_half(atoms: &BellAmplitudes) -> f64 {
    let stat = (atoms.c_minus * atoms.c_minus - atoms.d_minus * atoms.d_minus).norm();
    let drift = (atoms.d_plus * atoms.d_plus - atoms.c_plus * atoms.c_plus).norm();
    (stat - drift).abs()
}

/// Purity Tr ρ² of the reduced atomic state.
pub fn purity(rho: &AtomicDensityMatrix) -> f64 {
    rho.purity()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RevivalFraction {
    Quarter,
    Half,
}

/// Closed-form atomic purity at the fractional revival times, in terms of
/// the stationary weight p = |c₋|² + |d₋|²: p² + (1−p)(1−|c₋|²) at odd
/// quarters, p² + (1−p)² at odd halves.
pub fn predicted_purity(atoms: &BellAmplitudes, which: RevivalFraction) -> f64 {
    let p = atoms.c_minus.norm_sqr() + atoms.d_minus.norm_sqr();
    match which {
        RevivalFraction::Quarter => p * p + (1.0 - p) * (1.0 - atoms.c_minus.norm_sqr()),
        RevivalFraction::Half => p * p + (1.0 - p) * (1.0 - p),
    }
}
