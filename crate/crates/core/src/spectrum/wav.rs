//! WAV read/write: PCM 16-bit and IEEE float32, mono or multi-channel.
//!
//! No resampling: callers that expect a fixed rate get an error on
//! mismatch.

use std::path::Path;

use crate::error::{Error, Result};

/// De-interleaved WAV contents.
#[derive(Debug, Clone)]
pub struct WavData {
    pub channels: Vec<Vec<f64>>,
    pub sample_rate: u32,
}

impl WavData {
    pub fn num_channels(&self) -> usize {
        self.channels.len()
    }

    pub fn len(&self) -> usize {
        self.channels.first().map_or(0, Vec::len)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Reads a WAV file. PCM16 samples are scaled to [-1, 1) by 1/32768;
/// float32 samples pass through.
pub fn read_wav(path: &Path) -> Result<WavData> {
    let mut reader = hound::WavReader::open(path)?;
    let spec = reader.spec();
    let n_ch = spec.channels as usize;
    if n_ch == 0 {
        return Err(Error::UnsupportedWav("zero channels".into()));
    }
    let interleaved: Vec<f64> = match (spec.sample_format, spec.bits_per_sample) {
        (hound::SampleFormat::Float, 32) => reader
            .samples::<f32>()
            .map(|s| s.map(f64::from).map_err(Error::from))
            .collect::<Result<_>>()?,
        (hound::SampleFormat::Int, 16) => reader
            .samples::<i16>()
            .map(|s| s.map(|v| f64::from(v) / 32768.0).map_err(Error::from))
            .collect::<Result<_>>()?,
        (fmt, bits) => {
            return Err(Error::UnsupportedWav(format!(
                "{fmt:?} {bits}-bit (only PCM16 and float32 are supported)"
            )))
        }
    };
    let frames = interleaved.len() / n_ch;
    let mut channels = vec![Vec::with_capacity(frames); n_ch];
    for (i, s) in interleaved.iter().enumerate() {
        channels[i % n_ch].push(*s);
    }
    Ok(WavData {
        channels,
        sample_rate: spec.sample_rate,
    })
}

/// Reads a mono WAV, optionally enforcing a sample rate.
pub fn read_mono_wav(path: &Path, expected_rate: Option<u32>) -> Result<Vec<f64>> {
    let data = read_wav(path)?;
    if let Some(rate) = expected_rate {
        if data.sample_rate != rate {
            return Err(Error::SampleRateMismatch {
                expected: rate,
                got: data.sample_rate,
            });
        }
    }
    if data.num_channels() != 1 {
        return Err(Error::UnsupportedWav(format!(
            "{} has {} channels, expected mono",
            path.display(),
            data.num_channels()
        )));
    }
    Ok(data.channels.into_iter().next().unwrap())
}

/// Writes channels as interleaved IEEE float32.
pub fn write_wav_f32(path: &Path, channels: &[Vec<f64>], sample_rate: u32) -> Result<()> {
    check_channels(channels)?;
    let spec = hound::WavSpec {
        channels: channels.len() as u16,
        sample_rate,
        bits_per_sample: 32,
        sample_format: hound::SampleFormat::Float,
    };
    let mut writer = hound::WavWriter::create(path, spec)?;
    for i in 0..channels[0].len() {
        for ch in channels {
            writer.write_sample(ch[i] as f32)?;
        }
    }
    writer.finalize()?;
    Ok(())
}

/// Writes channels as interleaved PCM16 with saturation.
pub fn write_wav_i16(path: &Path, channels: &[Vec<f64>], sample_rate: u32) -> Result<()> {
    check_channels(channels)?;
    let spec = hound::WavSpec {
        channels: channels.len() as u16,
        sample_rate,
        bits_per_sample: 16,
        sample_format: hound::SampleFormat::Int,
    };
    let mut writer = hound::WavWriter::create(path, spec)?;
    for i in 0..channels[0].len() {
        for ch in channels {
            let v = (ch[i] * 32768.0).round().clamp(-32768.0, 32767.0) as i16;
            writer.write_sample(v)?;
        }
    }
    writer.finalize()?;
    Ok(())
}

fn check_channels(channels: &[Vec<f64>]) -> Result<()> {
    if channels.is_empty() {
        return Err(Error::ShapeMismatch("no channels to write".into()));
    }
    let len = channels[0].len();
    if channels.iter().any(|c| c.len() != len) {
        return Err(Error::ShapeMismatch(
            "all channels must have equal length".into(),
        ));
    }
    Ok(())
}
