//! Grayscale images, Gaussian noise, and the smoothed-TV denoising
//! objective.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::objective::FnObjective;
use crate::vector::Vector;

/// A row-major grayscale image with intensities in `[0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct ImageGray {
    width: usize,
    height: usize,
    pixels: Vec<f64>,
}

impl ImageGray {
    pub fn new(width: usize, height: usize, pixels: Vec<f64>) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::InvalidConfig(
                "image dimensions must be positive".to_string(),
            ));
        }
        if pixels.len() != width * height {
            return Err(Error::DimensionMismatch {
                expected: width * height,
                actual: pixels.len(),
            });
        }
        for (index, &value) in pixels.iter().enumerate() {
            if !value.is_finite() {
                return Err(Error::NonFinite { index, value });
            }
            if !(0.0..=1.0).contains(&value) {
                return Err(Error::InvalidConfig(format!(
                    "pixel {index} = {value} outside [0, 1]"
                )));
            }
        }
        Ok(ImageGray {
            width,
            height,
            pixels,
        })
    }

    /// Builds an image, clamping each finite sample into `[0, 1]`. Intended
    /// for solver iterates, which are not range-constrained.
    pub fn from_clamped(width: usize, height: usize, pixels: &[f64]) -> Result<Self> {
        let clamped: Vec<f64> = pixels.iter().map(|v| v.clamp(0.0, 1.0)).collect();
        Self::new(width, height, clamped)
    }

    pub fn constant(width: usize, height: usize, value: f64) -> Result<Self> {
        Self::new(width, height, vec![value; width * height])
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn pixels(&self) -> &[f64] {
        &self.pixels
    }

    pub fn to_vector(&self) -> Vector {
        Vector::new(self.pixels.clone()).expect("image pixels are finite")
    }
}

/// Adds seeded i.i.d. Gaussian noise of standard deviation `sigma_frac`
/// (on the `[0, 1]` intensity scale) to every pixel, clamping the result
/// back into range.
///
/// Determinism contract: identical `(img, sigma_frac, seed)` give identical
/// outputs on one platform. Variates come from a ChaCha8 stream through the
/// standard-normal sampler, one per pixel in row-major order.
pub fn add_gaussian_noise(img: &ImageGray, sigma_frac: f64, seed: u64) -> Result<ImageGray> {
    if !(sigma_frac > 0.0 && sigma_frac < 1.0) {
        return Err(Error::InvalidConfig(format!(
            "sigma_frac must lie in (0, 1), got {sigma_frac}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pixels: Vec<f64> = img
        .pixels
        .iter()
        .map(|&p| {
            let z: f64 = rng.sample(StandardNormal);
            (p + sigma_frac * z).clamp(0.0, 1.0)
        })
        .collect();
    ImageGray::new(img.width, img.height, pixels)
}

/// Denoising problem description: the observed image plus the
/// regularization weight and the edge-penalty smoothing constant.
#[derive(Debug, Clone)]
pub struct DenoiseSpec {
    pub noisy: ImageGray,
    pub lambda: f64,
    pub eps_smooth: f64,
}

impl DenoiseSpec {
    pub fn new(noisy: ImageGray, lambda: f64, eps_smooth: f64) -> Result<Self> {
        if !(lambda >= 0.0 && lambda.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "lambda must be nonnegative, got {lambda}"
            )));
        }
        if !(eps_smooth > 0.0 && eps_smooth.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "eps_smooth must be positive, got {eps_smooth}"
            )));
        }
        Ok(DenoiseSpec {
            noisy,
            lambda,
            eps_smooth,
        })
    }
}

/// Smoothed total-variation restoration objective
///
/// ```text
/// f(x) = 1/2 ||x - b||^2 + lambda * sum_edges phi(x_i - x_j),
/// phi(u) = sqrt(u^2 + eps^2) - eps
/// ```
///
/// over 4-neighbor grid adjacency (each edge counted once). `phi` is
/// infinitely differentiable, so the objective is smooth, bounded below by
/// zero, and has a Lipschitz gradient on bounded boxes.
pub fn denoise_objective(spec: &DenoiseSpec) -> FnObjective {
    let width = spec.noisy.width;
    let height = spec.noisy.height;
    let n = width * height;
    let lambda = spec.lambda;
    let eps_sq = spec.eps_smooth * spec.eps_smooth;
    let eps = spec.eps_smooth;
    let b = spec.noisy.pixels.clone();
    let b_grad = b.clone();

    let phi = move |u: f64| (u * u + eps_sq).sqrt() - eps;
    let dphi = move |u: f64| u / (u * u + eps_sq).sqrt();

    FnObjective::new(
        "denoise",
        n,
        move |x| {
            let mut f = 0.5
                * x.iter()
                    .zip(b.iter())
                    .map(|(xi, bi)| (xi - bi) * (xi - bi))
                    .sum::<f64>();
            for r in 0..height {
                for c in 0..width {
                    let i = r * width + c;
                    if c + 1 < width {
                        f += lambda * phi(x[i] - x[i + 1]);
                    }
                    if r + 1 < height {
                        f += lambda * phi(x[i] - x[i + width]);
                    }
                }
            }
            f
        },
        move |x| {
            let mut g: Vec<f64> = x
                .iter()
                .zip(b_grad.iter())
                .map(|(xi, bi)| xi - bi)
                .collect();
            for r in 0..height {
                for c in 0..width {
                    let i = r * width + c;
                    if c + 1 < width {
                        let d = lambda * dphi(x[i] - x[i + 1]);
                        g[i] += d;
                        g[i + 1] -= d;
                    }
                    if r + 1 < height {
                        let d = lambda * dphi(x[i] - x[i + width]);
                        g[i] += d;
                        g[i + width] -= d;
                    }
                }
            }
            g
        },
    )
}

/// Relative Euclidean error `||truth - restored||_2 / ||truth||_2`; lower
/// is better.
pub fn rmse(truth: &ImageGray, restored: &ImageGray) -> Result<f64> {
    if truth.width != restored.width || truth.height != restored.height {
        return Err(Error::DimensionMismatch {
            expected: truth.width * truth.height,
            actual: restored.width * restored.height,
        });
    }
    let truth_norm = truth.pixels.iter().map(|a| a * a).sum::<f64>().sqrt();
    if truth_norm == 0.0 {
        return Err(Error::ZeroTruthNorm);
    }
    let diff_norm = truth
        .pixels
        .iter()
        .zip(restored.pixels.iter())
        .map(|(a, b)| (a - b) * (a - b))
        .sum::<f64>()
        .sqrt();
    Ok(diff_norm / truth_norm)
}
