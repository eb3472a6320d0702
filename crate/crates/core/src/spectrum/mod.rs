//! Windowed STFT/ISTFT engine and the complex spectrogram data model.
//!
//! The analysis/synthesis pair uses a square-root Hann window on both sides
//! at 50% overlap, which satisfies the constant-overlap-add condition with
//! unit gain: reconstruction is exact (double precision) away from the
//! first and last frame. Frames that do not fit at the tail of a signal are
//! dropped; no implicit padding is applied.

mod stft;
pub mod wav;

pub use stft::{interior_range, istft, stft};

use ndarray::{Array2, Array3, ArrayView2};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Analysis window shape.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Window {
    SqrtHann,
}

/// Frame/hop/window configuration shared by every spectrogram.
///
/// Defaults to 16 kHz with 20 ms frames and a 10 ms hop (320/160 samples).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StftConfig {
    pub sample_rate: u32,
    pub frame_len: usize,
    pub hop: usize,
    pub window: Window,
}

impl Default for StftConfig {
    fn default() -> Self {
        Self {
            sample_rate: 16_000,
            frame_len: 320,
            hop: 160,
            window: Window::SqrtHann,
        }
    }
}

impl StftConfig {
    /// Builds a validated config. The hop must be exactly half the frame
    /// length: that is the overlap the sqrt-Hann pair needs for perfect
    /// reconstruction.
    pub fn new(sample_rate: u32, frame_len: usize, hop: usize, window: Window) -> Result<Self> {
        let cfg = Self {
            sample_rate,
            frame_len,
            hop,
            window,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.sample_rate == 0 {
            return Err(Error::InvalidConfig("sample_rate must be > 0".into()));
        }
        if self.frame_len == 0 {
            return Err(Error::InvalidConfig("frame_len must be > 0".into()));
        }
        if self.hop * 2 != self.frame_len {
            return Err(Error::InvalidConfig(format!(
                "hop * 2 must equal frame_len (got hop {}, frame_len {})",
                self.hop, self.frame_len
            )));
        }
        Ok(())
    }

    /// Number of one-sided frequency bins, `frame_len / 2 + 1`.
    pub fn bins(&self) -> usize {
        self.frame_len / 2 + 1
    }

    /// Number of full frames that fit in a signal of `len` samples.
    pub fn frames_for(&self, len: usize) -> usize {
        if len < self.frame_len {
            0
        } else {
            (len - self.frame_len) / self.hop + 1
        }
    }

    /// Center frequency of `bin` in Hz.
    pub fn bin_hz(&self, bin: usize) -> f64 {
        bin as f64 * self.sample_rate as f64 / self.frame_len as f64
    }

    /// The analysis/synthesis window. For sqrt-Hann (periodic) this is
    /// `sin(pi n / N)`, whose squares sum to exactly 1 at 50% overlap.
    pub fn window_samples(&self) -> Vec<f64> {
        let n = self.frame_len as f64;
        (0..self.frame_len)
            .map(|i| (std::f64::consts::PI * i as f64 / n).sin())
            .collect()
    }
}

/// Complex T-F tensor for an M-microphone capture, `[M, F, T]`.
#[derive(Debug, Clone, PartialEq)]
pub struct MultiChannelSpectrogram {
    pub data: Array3<Complex64>,
    pub config: StftConfig,
}

impl MultiChannelSpectrogram {
    pub fn new(data: Array3<Complex64>, config: StftConfig) -> Result<Self> {
        if data.shape()[0] == 0 {
            return Err(Error::ShapeMismatch("need at least one channel".into()));
        }
        if data.shape()[1] != config.bins() {
            return Err(Error::ShapeMismatch(format!(
                "bin count {} does not match config ({})",
                data.shape()[1],
                config.bins()
            )));
        }
        Ok(Self { data, config })
    }

    /// Transforms one time-domain signal per channel. All channels must
    /// share the same length.
    pub fn from_signals(signals: &[Vec<f64>], config: StftConfig) -> Result<Self> {
        if signals.is_empty() {
            return Err(Error::ShapeMismatch("need at least one channel".into()));
        }
        let len = signals[0].len();
        if signals.iter().any(|s| s.len() != len) {
            return Err(Error::ShapeMismatch(
                "all channels must have equal length".into(),
            ));
        }
        let first = stft(&signals[0], &config)?;
        let (f, t) = first.dim();
        let mut data = Array3::zeros((signals.len(), f, t));
        data.index_axis_mut(ndarray::Axis(0), 0).assign(&first);
        for (m, sig) in signals.iter().enumerate().skip(1) {
            let spec = stft(sig, &config)?;
            data.index_axis_mut(ndarray::Axis(0), m).assign(&spec);
        }
        Ok(Self { data, config })
    }

    pub fn channels(&self) -> usize {
        self.data.shape()[0]
    }

    pub fn bins(&self) -> usize {
        self.data.shape()[1]
    }

    pub fn frames(&self) -> usize {
        self.data.shape()[2]
    }

    pub fn channel(&self, m: usize) -> ArrayView2<'_, Complex64> {
        self.data.index_axis(ndarray::Axis(0), m)
    }
}

/// Complex T-F pair for left/right ear signals, each `[F, T]`.
#[derive(Debug, Clone, PartialEq)]
pub struct BinauralSpectrogram {
    pub left: Array2<Complex64>,
    pub right: Array2<Complex64>,
    pub config: StftConfig,
}

impl BinauralSpectrogram {
    pub fn new(
        left: Array2<Complex64>,
        right: Array2<Complex64>,
        config: StftConfig,
    ) -> Result<Self> {
        if left.dim() != right.dim() {
            return Err(Error::ShapeMismatch(format!(
                "left {:?} vs right {:?}",
                left.dim(),
                right.dim()
            )));
        }
        if left.nrows() != config.bins() {
            return Err(Error::ShapeMismatch(format!(
                "bin count {} does not match config ({})",
                left.nrows(),
                config.bins()
            )));
        }
        Ok(Self {
            left,
            right,
            config,
        })
    }

    pub fn zeros(frames: usize, config: StftConfig) -> Self {
        let shape = (config.bins(), frames);
        Self {
            left: Array2::zeros(shape),
            right: Array2::zeros(shape),
            config,
        }
    }

    pub fn bins(&self) -> usize {
        self.left.nrows()
    }

    pub fn frames(&self) -> usize {
        self.left.ncols()
    }

    /// Inverse-transforms both ears back to time-domain signals.
    pub fn to_signals(&self) -> Result<(Vec<f64>, Vec<f64>)> {
        let l = istft(&self.left.view(), &self.config)?;
        let r = istft(&self.right.view(), &self.config)?;
        Ok((l, r))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_config_matches_16khz_20ms_10ms() {
        let cfg = StftConfig::default();
        assert_eq!(cfg.sample_rate, 16_000);
        assert_eq!(cfg.frame_len, 320);
        assert_eq!(cfg.hop, 160);
        assert_eq!(cfg.bins(), 161);
        cfg.validate().unwrap();
    }

    #[test]
    fn rejects_bad_overlap() {
        assert!(StftConfig::new(16_000, 320, 80, Window::SqrtHann).is_err());
        assert!(StftConfig::new(16_000, 0, 0, Window::SqrtHann).is_err());
        assert!(StftConfig::new(0, 320, 160, Window::SqrtHann).is_err());
    }

    #[test]
    fn window_squares_sum_to_one_at_half_overlap() {
        let cfg = StftConfig::default();
        let w = cfg.window_samples();
        for i in 0..cfg.hop {
            let s = w[i] * w[i] + w[i + cfg.hop] * w[i + cfg.hop];
            assert!((s - 1.0).abs() < 1e-12, "cola sum {s} at {i}");
        }
    }

    #[test]
    fn binaural_shape_checked() {
        let cfg = StftConfig::default();
        let ok = BinauralSpectrogram::new(
            Array2::zeros((161, 4)),
            Array2::zeros((161, 4)),
            cfg,
        );
        assert!(ok.is_ok());
        let bad = BinauralSpectrogram::new(Array2::zeros((161, 4)), Array2::zeros((161, 5)), cfg);
        assert!(bad.is_err());
    }
}
