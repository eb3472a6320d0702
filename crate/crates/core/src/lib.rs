//! Simulated conference-room capture and binaural rendering workbench.
//!
//! The crate covers the full desk-scale pipeline:
//!
//! - [`spectrum`]: windowed STFT/ISTFT engine and the complex spectrogram
//!   data model shared by every other module, plus WAV I/O.
//! - [`scene`]: room/array/source sampling, image-method room impulse
//!   responses and SNR-controlled mixing into an M-channel capture.
//! - [`hrtf`]: parametric spherical-head binaural rendering (Woodworth ITD
//!   plus first-order head-shadow ILD) used for ground-truth targets.
//! - [`baselines`]: classical reference pipelines — MVDR beamforming with
//!   HRTF post-filtering, and multichannel inverse filtering (MINT).
//! - [`loss`]: the composite spectral objective (real/imaginary, magnitude,
//!   magnitude-weighted ILD) with analytic gradients.
//! - [`metrics`]: interaural time/level difference and spectral distance
//!   evaluation between an estimate and its binaural target.
//! - [`trainer`]: a desk-scale trainable per-frequency filter estimator
//!   optimized with Adam under a plateau-halving learning-rate schedule.
//! - [`manifest`]: JSON schemas for scene manifests and run manifests.
//!
//! Batch operations are data-parallel via rayon when the `parallel` feature
//! (default) is enabled; disabling it yields a fully sequential build.
//! Results are bit-identical across thread counts and both feature modes.

pub mod baselines;
pub mod error;
pub mod hrtf;
pub mod loss;
pub mod manifest;
pub mod metrics;
pub mod scene;
pub mod spectrum;
pub mod trainer;

mod linalg;
mod parallel;

pub use error::{Error, Result};

/// Speed of sound used throughout, in m/s.
pub const SPEED_OF_SOUND: f64 = 343.0;
