//! Forward and inverse short-time Fourier transforms.

use ndarray::{Array2, ArrayView2};
use num_complex::Complex64;
use rustfft::FftPlanner;
use std::ops::Range;

use crate::error::{Error, Result};
use crate::spectrum::StftConfig;

/// Forward STFT of a real signal: one-sided complex spectrogram `[F, T]`
/// with `F = frame_len / 2 + 1` and `T = (len - frame_len) / hop + 1`.
///
/// Frames are windowed before the FFT; samples past the last full frame
/// are dropped.
pub fn stft(signal: &[f64], cfg: &StftConfig) -> Result<Array2<Complex64>> {
    cfg.validate()?;
    if signal.len() < cfg.frame_len {
        return Err(Error::InputTooShort {
            min: cfg.frame_len,
            got: signal.len(),
        });
    }
    let n = cfg.frame_len;
    let frames = cfg.frames_for(signal.len());
    let bins = cfg.bins();
    let window = cfg.window_samples();

    let fft = FftPlanner::new().plan_fft_forward(n);
    let mut out = Array2::zeros((bins, frames));
    let mut buf = vec![Complex64::default(); n];
    for t in 0..frames {
        let start = t * cfg.hop;
        for i in 0..n {
            buf[i] = Complex64::new(signal[start + i] * window[i], 0.0);
        }
        fft.process(&mut buf);
        for f in 0..bins {
            out[(f, t)] = buf[f];
        }
    }
    Ok(out)
}

/// Inverse STFT by windowed overlap-add; returns `(T-1)*hop + frame_len`
/// samples. The DC and Nyquist bins are treated as real on synthesis so
/// the output is exactly real.
pub fn istft(spec: &ArrayView2<'_, Complex64>, cfg: &StftConfig) -> Result<Vec<f64>> {
    cfg.validate()?;
    let (bins, frames) = spec.dim();
    if bins != cfg.bins() {
        return Err(Error::ShapeMismatch(format!(
            "spectrogram has {} bins, config expects {}",
            bins,
            cfg.bins()
        )));
    }
    let n = cfg.frame_len;
    let window = cfg.window_samples();
    let mut out = vec![0.0; frames.saturating_sub(1) * cfg.hop + n];

    let ifft = FftPlanner::new().plan_fft_inverse(n);
    let mut buf = vec![Complex64::default(); n];
    let inv_n = 1.0 / n as f64;
    for t in 0..frames {
        buf[0] = Complex64::new(spec[(0, t)].re, 0.0);
        buf[n / 2] = Complex64::new(spec[(n / 2, t)].re, 0.0);
        for f in 1..n / 2 {
            buf[f] = spec[(f, t)];
            buf[n - f] = spec[(f, t)].conj();
        }
        ifft.process(&mut buf);
        let start = t * cfg.hop;
        for i in 0..n {
            out[start + i] += buf[i].re * inv_n * window[i];
        }
    }
    Ok(out)
}

/// Sample range with full overlap-add coverage: round trips are exact here
/// and only here. The first and last half-frame are excluded.
pub fn interior_range(cfg: &StftConfig, frames: usize) -> Range<usize> {
    cfg.hop..frames * cfg.hop
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::Array2;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    fn white_noise(len: usize, seed: u64) -> Vec<f64> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..len).map(|_| rng.gen_range(-1.0..1.0)).collect()
    }

    #[test]
    fn zero_signal_gives_zero_spectrogram() {
        let cfg = StftConfig::default();
        let spec = stft(&vec![0.0; 16_000], &cfg).unwrap();
        assert_eq!(spec.dim(), (161, 99));
        assert!(spec.iter().all(|v| v.norm() == 0.0));
        let sig = istft(&spec.view(), &cfg).unwrap();
        assert!(sig.iter().all(|&v| v == 0.0));
    }

    #[test]
    fn too_short_input_errors() {
        let cfg = StftConfig::default();
        let err = stft(&vec![0.0; 319], &cfg).unwrap_err();
        assert!(err.to_string().contains("too short"));
    }

    #[test]
    fn sinusoid_peaks_at_dft_bin() {
        // 1 kHz at fs 16 kHz with a 320-sample frame lands on bin
        // 1000 / 16000 * 320 = 20 exactly.
        let cfg = StftConfig::default();
        let fs = cfg.sample_rate as f64;
        let sig: Vec<f64> = (0..16_000)
            .map(|i| (2.0 * std::f64::consts::PI * 1000.0 * i as f64 / fs).sin())
            .collect();
        let spec = stft(&sig, &cfg).unwrap();
        for t in 0..spec.ncols() {
            let mags: Vec<f64> = (0..spec.nrows()).map(|f| spec[(f, t)].norm()).collect();
            let peak = mags
                .iter()
                .enumerate()
                .max_by(|a, b| a.1.total_cmp(b.1))
                .unwrap()
                .0;
            assert_eq!(peak, 20, "frame {t}");
        }
    }

    #[test]
    fn round_trip_is_exact_in_the_interior() {
        let cfg = StftConfig::default();
        let x = white_noise(16_000, 7);
        let spec = stft(&x, &cfg).unwrap();
        let y = istft(&spec.view(), &cfg).unwrap();
        assert_eq!(y.len(), x.len());
        let interior = interior_range(&cfg, spec.ncols());
        let peak = x.iter().fold(0.0f64, |a, &v| a.max(v.abs()));
        for i in interior {
            assert!(
                (y[i] - x[i]).abs() < 1e-9 * peak,
                "sample {i}: {} vs {}",
                y[i],
                x[i]
            );
        }
    }

    #[test]
    fn single_unit_dc_bin_synthesizes_scaled_window() {
        // One frame, X[0] = 1, everything else 0: the inverse DFT is the
        // constant 1/N, so the output is window / N.
        let cfg = StftConfig::default();
        let mut spec = Array2::zeros((cfg.bins(), 1));
        spec[(0, 0)] = Complex64::new(1.0, 0.0);
        let sig = istft(&spec.view(), &cfg).unwrap();
        let w = cfg.window_samples();
        let n = cfg.frame_len as f64;
        for i in 0..cfg.frame_len {
            assert!((sig[i] - w[i] / n).abs() < 1e-15, "sample {i}");
        }
    }

    #[test]
    fn linearity() {
        let cfg = StftConfig::default();
        let x = white_noise(3_200, 1);
        let y = white_noise(3_200, 2);
        let (a, b) = (0.75, -1.25);
        let combo: Vec<f64> = x.iter().zip(&y).map(|(&u, &v)| a * u + b * v).collect();
        let sx = stft(&x, &cfg).unwrap();
        let sy = stft(&y, &cfg).unwrap();
        let sc = stft(&combo, &cfg).unwrap();
        let scale: f64 = sc.iter().map(|v| v.norm()).fold(0.0, f64::max);
        for (idx, v) in sc.indexed_iter() {
            let want = sx[idx] * a + sy[idx] * b;
            assert!((v - want).norm() < 1e-12 * scale);
        }
    }

    #[test]
    fn per_frame_energy_identity() {
        // One-sided Parseval with the unnormalized forward FFT:
        // |X_0|^2 + |X_{N/2}|^2 + 2 sum_{0<f<N/2} |X_f|^2 = N * sum_n (x w)^2.
        let cfg = StftConfig::default();
        let x = white_noise(1_600, 11);
        let spec = stft(&x, &cfg).unwrap();
        let w = cfg.window_samples();
        let n = cfg.frame_len;
        for t in 0..spec.ncols() {
            let mut lhs = spec[(0, t)].norm_sqr() + spec[(n / 2, t)].norm_sqr();
            for f in 1..n / 2 {
                lhs += 2.0 * spec[(f, t)].norm_sqr();
            }
            let rhs: f64 = (0..n)
                .map(|i| {
                    let v = x[t * cfg.hop + i] * w[i];
                    v * v
                })
                .sum::<f64>()
                * n as f64;
            assert!((lhs - rhs).abs() < 1e-9 * rhs.max(1.0));
        }
    }
}
