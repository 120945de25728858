//! Named matrices and seeded samplers with prescribed condition number.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::classes::{AccretiveDissipativeMatrix, HighamMatrix};
use crate::error::{Error, Result};
use crate::matrix::{ComplexDenseMatrix, C64};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SpectrumStyle {
    PinnedEndpointsUniform,
    #[default]
    LogUniform,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SamplerConfig {
    pub n: usize,
    pub omega: f64,
    pub seed: u64,
    #[serde(default)]
    pub spectrum_style: SpectrumStyle,
}

impl SamplerConfig {
    pub fn new(n: usize, omega: f64, seed: u64) -> Self {
        SamplerConfig {
            n,
            omega,
            seed,
            spectrum_style: SpectrumStyle::default(),
        }
    }

    pub fn with_style(self, spectrum_style: SpectrumStyle) -> Self {
        SamplerConfig {
            spectrum_style,
            ..self
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(Error::DomainError(format!(
                "sampler needs n >= 2, got {}",
                self.n
            )));
        }
        check_omega(self.omega)
    }
}

fn check_omega(omega: f64) -> Result<()> {
    if omega >= 1.0 && omega.is_finite() {
        Ok(())
    } else {
        Err(Error::DomainError(format!("omega = {omega} must be >= 1")))
    }
}

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// `(A_minus, A_plus)`: unit diagonal `1+i` and off-diagonal `t(1+i)` and
/// `t(1-i)` respectively, `t = (w-1)/(w+1)`.
pub fn extremal_pair(omega: f64) -> Result<(HighamMatrix, HighamMatrix)> {
    check_omega(omega)?;
    let t = (omega - 1.0) / (omega + 1.0);
    let build = |off: C64| {
        HighamMatrix::new(ComplexDenseMatrix::from_rows(&[
            [c(1.0, 1.0), off],
            [off, c(1.0, 1.0)],
        ]))
    };
    Ok((build(c(t, t))?, build(c(t, -t))?))
}

/// `(1+i) diag(w, 1, ..., 1)`.
pub fn diag_lower_example(omega: f64, n: usize) -> Result<HighamMatrix> {
    check_omega(omega)?;
    if n < 2 {
        return Err(Error::DomainError(format!("need n >= 2, got {n}")));
    }
    let mut d = vec![1.0; n];
    d[0] = omega;
    let b = ComplexDenseMatrix::from_real_diagonal(&d);
    HighamMatrix::from_parts(b.clone(), b)
}

#[derive(Debug, Clone)]
pub struct GapExamples {
    /// `B + iC` with `B = [[1, r], [r, 1]]`, `C = [[1, ir/2], [-ir/2, 1]]`.
    pub gap1: AccretiveDissipativeMatrix,
    /// `[[1+i, 2r], [0, 1+i]]`.
    pub gap2: AccretiveDissipativeMatrix,
    /// `(1+i) diag(w, 1, 1)`.
    pub gap3: HighamMatrix,
}

pub fn gap_examples(r: f64, omega: f64) -> Result<GapExamples> {
    if !(r > 0.0 && r < 1.0) {
        return Err(Error::DomainError(format!("r = {r} must lie in (0, 1)")));
    }
    if !(omega > 1.0 && omega.is_finite()) {
        return Err(Error::DomainError(format!("omega = {omega} must exceed 1")));
    }
    let b = ComplexDenseMatrix::from_real_rows(&[[1.0, r], [r, 1.0]]);
    let cpart = ComplexDenseMatrix::from_rows(&[
        [c(1.0, 0.0), c(0.0, r / 2.0)],
        [c(0.0, -r / 2.0), c(1.0, 0.0)],
    ]);
    let gap1 = AccretiveDissipativeMatrix::from_parts(b, cpart)?;
    let gap2 = AccretiveDissipativeMatrix::new(ComplexDenseMatrix::from_rows(&[
        [c(1.0, 1.0), c(2.0 * r, 0.0)],
        [c(0.0, 0.0), c(1.0, 1.0)],
    ]))?;
    let gap3 = diag_lower_example(omega, 3)?;
    Ok(GapExamples { gap1, gap2, gap3 })
}

fn spectrum(cfg: &SamplerConfig, rng: &mut ChaCha8Rng) -> Vec<f64> {
    let n = cfg.n;
    let mut eig = Vec::with_capacity(n);
    eig.push(1.0);
    eig.push(cfg.omega);
    let log_omega = cfg.omega.ln();
    for _ in 2..n {
        let u: f64 = rng.gen();
        eig.push(match cfg.spectrum_style {
            SpectrumStyle::PinnedEndpointsUniform => 1.0 + u * (cfg.omega - 1.0),
            SpectrumStyle::LogUniform => (u * log_omega).exp().clamp(1.0, cfg.omega),
        });
    }
    eig
}

/// Haar-distributed unitary (orthogonal when `complex` is false) as the `Q`
/// factor of a Gaussian matrix. Gram-Schmidt, applied twice for stability,
/// yields the factorization whose `R` has a positive real diagonal, which is
/// the phase normalization that makes `Q` Haar.
fn haar(n: usize, complex: bool, rng: &mut ChaCha8Rng) -> ComplexDenseMatrix {
    let mut cols: Vec<Vec<C64>> = (0..n)
        .map(|_| {
            (0..n)
                .map(|_| {
                    let re: f64 = rng.sample(StandardNormal);
                    let im: f64 = if complex {
                        rng.sample(StandardNormal)
                    } else {
                        0.0
                    };
                    c(re, im)
                })
                .collect()
        })
        .collect();
    for j in 0..n {
        let (done, rest) = cols.split_at_mut(j);
        let cj = &mut rest[0];
        for _ in 0..2 {
            for ci in done.iter() {
                let proj: C64 = ci.iter().zip(cj.iter()).map(|(a, b)| a.conj() * b).sum();
                for (x, a) in cj.iter_mut().zip(ci) {
                    *x -= a * proj;
                }
            }
        }
        let norm = cj.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        for x in cj.iter_mut() {
            *x /= norm;
        }
    }
    ComplexDenseMatrix::from_fn(n, n, |i, j| cols[j][i])
}

fn conjugated(q: &ComplexDenseMatrix, eig: &[f64]) -> ComplexDenseMatrix {
    let n = eig.len();
    ComplexDenseMatrix::from_fn(n, n, |i, j| {
        (0..n).map(|t| q[(i, t)] * eig[t] * q[(j, t)].conj()).sum()
    })
    .hermitian_symmetrized()
}

fn sample_pd(cfg: &SamplerConfig, complex: bool, rng: &mut ChaCha8Rng) -> ComplexDenseMatrix {
    let eig = spectrum(cfg, rng);
    let q = haar(cfg.n, complex, rng);
    conjugated(&q, &eig)
}

/// Real SPD matrix `Q diag(1, w, ...) Q^T` with Haar `Q`.
pub fn random_spd(cfg: &SamplerConfig) -> Result<ComplexDenseMatrix> {
    cfg.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    Ok(sample_pd(cfg, false, &mut rng))
}

/// Hermitian PD matrix `U diag(1, w, ...) U^*` with Haar `U`.
pub fn random_hpd(cfg: &SamplerConfig) -> Result<ComplexDenseMatrix> {
    cfg.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    Ok(sample_pd(cfg, true, &mut rng))
}

/// `B + iC` with `B`, `C` independent real SPD samples, both of condition `w`.
pub fn random_higham(cfg: &SamplerConfig) -> Result<HighamMatrix> {
    cfg.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let b = sample_pd(cfg, false, &mut rng);
    let cpart = sample_pd(cfg, false, &mut rng);
    HighamMatrix::from_parts(b, cpart)
}

/// `B + iC` with `B`, `C` independent Hermitian PD samples, both of condition `w`.
pub fn random_ad(cfg: &SamplerConfig) -> Result<AccretiveDissipativeMatrix> {
    cfg.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let b = sample_pd(cfg, true, &mut rng);
    let cpart = sample_pd(cfg, true, &mut rng);
    AccretiveDissipativeMatrix::from_parts(b, cpart)
}

/// Seed of sample `index` within cell `(n, omega_index)`: a splitmix64 hash of
/// the cell coordinates plus the sample index.
pub fn sample_seed(seed: u64, n: usize, omega_index: usize, index: u64) -> u64 {
    let mut h = splitmix64(seed);
    h = splitmix64(h ^ n as u64);
    h = splitmix64(h ^ omega_index as u64);
    h.wrapping_add(index)
}

fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}
