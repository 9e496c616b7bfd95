//! Hoffman and Alon–Milman bounds with their stability versions.

use crate::perm::factorial;
use crate::rat::{rat_int, rat_u64, Rat};
use crate::spectra::{cayley_spectrum, GraphKind};
use crate::{Error, Result};
use num_traits::{One, Signed, Zero};

/// Spectral data the bound calculators consume.
///
/// Adjacency eigenvalues (`degree`, `lambda_min`, `lambda_k`) and Laplacian
/// eigenvalues (`mu2`, `mu_m`) may come from different Cayley graphs on the
/// same vertex set.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectralBoundInput {
    /// Number of vertices.
    pub vertex_count: u64,
    /// Top adjacency eigenvalue.
    pub degree: Rat,
    /// Least adjacency eigenvalue.
    pub lambda_min: Rat,
    /// Least adjacency eigenvalue strictly above `lambda_min`.
    pub lambda_k: Rat,
    /// Second-smallest Laplacian eigenvalue.
    pub mu2: Rat,
    /// Smallest Laplacian eigenvalue above `mu2`.
    pub mu_m: Rat,
}

impl SpectralBoundInput {
    pub fn new(
        vertex_count: u64,
        degree: Rat,
        lambda_min: Rat,
        lambda_k: Rat,
        mu2: Rat,
        mu_m: Rat,
    ) -> Result<Self> {
        if lambda_min > lambda_k || lambda_k > degree {
            return Err(Error::Invalid(
                "need lambda_min <= lambda_K <= degree".into(),
            ));
        }
        if mu2.is_negative() || mu2 > mu_m {
            return Err(Error::Invalid("need 0 <= mu2 <= mu_M".into()));
        }
        Ok(Self {
            vertex_count,
            degree,
            lambda_min,
            lambda_k,
            mu2,
            mu_m,
        })
    }

    /// Bundles the derangement-graph adjacency spectrum and the
    /// transposition-graph Laplacian spectrum of S_n.
    pub fn for_symmetric_group(n: usize) -> Result<Self> {
        if n < 4 {
            return Err(Error::SmallN { n, min: 4 });
        }
        let der = cayley_spectrum(n, GraphKind::Derangement)?;
        let lmin = der.min_eigenvalue();
        let lk = der
            .rows
            .iter()
            .map(|r| r.eigenvalue)
            .filter(|&e| e > lmin)
            .min()
            .ok_or_else(|| Error::DegenerateSpectrum("single eigenvalue".into()))?;
        let trans = cayley_spectrum(n, GraphKind::Transposition)?;
        let missing = || Error::DegenerateSpectrum("fewer than three distinct mu".into());
        Self::new(
            factorial(n),
            rat_u64(der.degree),
            rat_int(lmin),
            rat_int(lk),
            rat_int(trans.mu2.ok_or_else(missing)?),
            rat_int(trans.mu_m.ok_or_else(missing)?),
        )
    }
}

/// Ratio bound on an independent set: |X| <= (-lambda_min / (d - lambda_min)) |V|.
pub fn hoffman_bound(input: &SpectralBoundInput) -> Result<Rat> {
    if !input.lambda_min.is_negative() || !input.degree.is_positive() {
        return Err(Error::DegenerateSpectrum(
            "ratio bound needs lambda_min < 0 < degree".into(),
        ));
    }
    let neg = -&input.lambda_min;
    Ok(&neg / (&input.degree + &neg) * rat_u64(input.vertex_count))
}

/// Bound on the squared distance from an independent set's indicator to
/// span{f} plus the lambda_min eigenspace:
/// ((1 - alpha)|lambda_min| - d alpha) / (|lambda_min| - |lambda_K|) * alpha.
///
/// Negative exactly when alpha exceeds the Hoffman ratio (infeasible alpha).
pub fn hoffman_stability(input: &SpectralBoundInput, alpha: &Rat) -> Result<Rat> {
    if alpha.is_negative() || alpha > &Rat::one() {
        return Err(Error::Invalid("need 0 <= alpha <= 1".into()));
    }
    let lm = input.lambda_min.abs();
    let lk = input.lambda_k.abs();
    if lm <= lk {
        return Err(Error::DegenerateSpectrum(
            "stability needs |lambda_min| > |lambda_K|".into(),
        ));
    }
    let numer = (Rat::one() - alpha) * &lm - &input.degree * alpha;
    Ok(numer / (lm - lk) * alpha)
}

/// Edge-count lower bound e(S, S^c) >= mu2 |S| (|V| - |S|) / |V|.
pub fn alon_milman_bound(mu2: &Rat, size: u64, total: u64) -> Rat {
    assert!(size <= total && total > 0, "need 0 <= |S| <= |V|, |V| > 0");
    mu2 * rat_u64(size) * rat_u64(total - size) / rat_u64(total)
}

/// Bound on the squared distance from a set's indicator to the bottom two
/// Laplacian eigenspaces: gamma * alpha / (mu_M - mu2).
pub fn alon_milman_stability(mu2: &Rat, mu_m: &Rat, gamma: &Rat, alpha: &Rat) -> Result<Rat> {
    if gamma.is_negative() {
        return Err(Error::Invalid("need gamma >= 0".into()));
    }
    if mu_m <= mu2 {
        return Err(Error::DegenerateSpectrum(
            "stability needs mu_M > mu2".into(),
        ));
    }
    Ok(gamma * alpha / (mu_m - mu2))
}
