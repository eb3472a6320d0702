//! Scene sampling and acoustic simulation: rooms, microphone arrays,
//! source placement, image-method impulse responses and SNR-controlled
//! mixing.
//!
//! Coordinate frame: x along the room length, y along the width, z up.
//! Azimuths are measured in the horizontal plane around the array center,
//! 0 degrees along +x and positive toward +y (the listener's left). All
//! sources and the array sit at the same height.

mod image_method;
mod mix;

pub use image_method::{
    default_max_order, eyring_rt60, image_method_rir, rir_transfer, rt60_to_reflection,
    simulate_rir_set, simulate_rir_set_seq, RirSet,
};
pub use mix::{fft_convolve, mix_scene, MixOutput};

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// 3-D point in meters.
pub type Vec3 = [f64; 3];

pub(crate) fn dist3(a: Vec3, b: Vec3) -> f64 {
    let d = [a[0] - b[0], a[1] - b[1], a[2] - b[2]];
    (d[0] * d[0] + d[1] * d[1] + d[2] * d[2]).sqrt()
}

/// Microphone array layout.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ArrayLayout {
    Uca,
}

/// Uniform circular array description. Mic positions are derived from the
/// layout: `num_mics` points equally spaced on a horizontal circle of the
/// given diameter, mic 0 at azimuth 0.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ArrayGeometry {
    pub layout: ArrayLayout,
    pub num_mics: usize,
    pub diameter_m: f64,
    pub center_m: Vec3,
}

impl ArrayGeometry {
    /// Default six-element UCA, 8 cm diameter.
    pub fn uca_default(center_m: Vec3) -> Self {
        Self {
            layout: ArrayLayout::Uca,
            num_mics: 6,
            diameter_m: 0.08,
            center_m,
        }
    }

    pub fn new(num_mics: usize, diameter_m: f64, center_m: Vec3) -> Result<Self> {
        if num_mics == 0 {
            return Err(Error::InvalidConfig("num_mics must be >= 1".into()));
        }
        if num_mics > 1 && diameter_m <= 0.0 {
            return Err(Error::InvalidConfig(
                "diameter must be > 0 so mics are distinct".into(),
            ));
        }
        Ok(Self {
            layout: ArrayLayout::Uca,
            num_mics,
            diameter_m,
            center_m,
        })
    }

    /// Absolute mic positions.
    pub fn mic_positions(&self) -> Vec<Vec3> {
        let r = self.diameter_m / 2.0;
        (0..self.num_mics)
            .map(|m| {
                let phi = 2.0 * std::f64::consts::PI * m as f64 / self.num_mics as f64;
                [
                    self.center_m[0] + r * phi.cos(),
                    self.center_m[1] + r * phi.sin(),
                    self.center_m[2],
                ]
            })
            .collect()
    }
}

/// Box room with a uniform wall reflection coefficient derived from RT60
/// via Eyring's formula.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RoomSpec {
    pub length_m: f64,
    pub width_m: f64,
    pub height_m: f64,
    pub rt60_s: f64,
    pub reflection: f64,
}

impl RoomSpec {
    pub fn new(length_m: f64, width_m: f64, height_m: f64, rt60_s: f64) -> Result<Self> {
        if length_m <= 0.0 || width_m <= 0.0 || height_m <= 0.0 {
            return Err(Error::InvalidConfig("room dimensions must be > 0".into()));
        }
        let reflection = rt60_to_reflection(rt60_s, length_m, width_m, height_m)?;
        Ok(Self {
            length_m,
            width_m,
            height_m,
            rt60_s,
            reflection,
        })
    }

    /// Room with explicit reflection coefficient; `reflection = 0` is
    /// anechoic. RT60 is back-filled from Eyring (0 when anechoic).
    pub fn with_reflection(
        length_m: f64,
        width_m: f64,
        height_m: f64,
        reflection: f64,
    ) -> Result<Self> {
        if length_m <= 0.0 || width_m <= 0.0 || height_m <= 0.0 {
            return Err(Error::InvalidConfig("room dimensions must be > 0".into()));
        }
        if !(0.0..1.0).contains(&reflection) {
            return Err(Error::InvalidConfig(format!(
                "reflection must be in [0, 1), got {reflection}"
            )));
        }
        let rt60_s = if reflection == 0.0 {
            0.0
        } else {
            eyring_rt60(reflection, length_m, width_m, height_m)
        };
        Ok(Self {
            length_m,
            width_m,
            height_m,
            rt60_s,
            reflection,
        })
    }

    pub fn volume(&self) -> f64 {
        self.length_m * self.width_m * self.height_m
    }

    pub fn surface_area(&self) -> f64 {
        2.0 * (self.length_m * self.width_m
            + self.length_m * self.height_m
            + self.width_m * self.height_m)
    }

    pub fn contains(&self, p: Vec3) -> bool {
        p[0] > 0.0
            && p[0] < self.length_m
            && p[1] > 0.0
            && p[1] < self.width_m
            && p[2] > 0.0
            && p[2] < self.height_m
    }

    /// Distance from `p` to the nearest wall (negative outside).
    pub fn wall_margin(&self, p: Vec3) -> f64 {
        let dx = p[0].min(self.length_m - p[0]);
        let dy = p[1].min(self.width_m - p[1]);
        let dz = p[2].min(self.height_m - p[2]);
        dx.min(dy).min(dz)
    }
}

/// One point source: azimuth/distance relative to the array center plus
/// the resolved absolute position.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SourceSpec {
    pub azimuth_deg: f64,
    pub distance_m: f64,
    pub position_m: Vec3,
}

impl SourceSpec {
    pub fn from_polar(center: Vec3, azimuth_deg: f64, distance_m: f64) -> Self {
        let az = azimuth_deg.to_radians();
        Self {
            azimuth_deg,
            distance_m,
            position_m: [
                center[0] + distance_m * az.cos(),
                center[1] + distance_m * az.sin(),
                center[2],
            ],
        }
    }
}

/// Full generative description of one simulated scene.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SceneSpec {
    pub room: RoomSpec,
    pub array: ArrayGeometry,
    pub target: SourceSpec,
    pub noises: Vec<SourceSpec>,
    pub snr_db: f64,
    pub seed: u64,
    #[serde(default)]
    pub speech_wav: Option<String>,
    #[serde(default)]
    pub noise_wavs: Vec<String>,
}

/// Sampling ranges for [`sample_scene`]. Defaults follow the conference
/// simulation protocol: rooms 3-10 m on a side, RT60 0.2-0.7 s, sources
/// 0.5-2 m from the array within +/-90 degrees, SNR 0-30 dB, and at least
/// 1 m between any source (or the array center) and the walls.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SamplingRanges {
    pub room_length_m: (f64, f64),
    pub room_width_m: (f64, f64),
    pub room_height_m: (f64, f64),
    pub rt60_s: (f64, f64),
    pub target_azimuth_deg: (f64, f64),
    pub source_distance_m: (f64, f64),
    pub noise_azimuth_deg: (f64, f64),
    pub noise_count: (usize, usize),
    pub snr_db: (f64, f64),
    pub wall_margin_m: f64,
    pub source_height_m: f64,
}

impl Default for SamplingRanges {
    fn default() -> Self {
        Self {
            room_length_m: (3.0, 10.0),
            room_width_m: (3.0, 10.0),
            room_height_m: (2.5, 4.0),
            rt60_s: (0.2, 0.7),
            target_azimuth_deg: (-90.0, 90.0),
            source_distance_m: (0.5, 2.0),
            noise_azimuth_deg: (-90.0, 90.0),
            noise_count: (1, 3),
            snr_db: (0.0, 30.0),
            wall_margin_m: 1.0,
            source_height_m: 1.5,
        }
    }
}

impl SamplingRanges {
    pub fn validate(&self) -> Result<()> {
        let pairs = [
            ("room_length_m", self.room_length_m),
            ("room_width_m", self.room_width_m),
            ("room_height_m", self.room_height_m),
            ("rt60_s", self.rt60_s),
            ("target_azimuth_deg", self.target_azimuth_deg),
            ("source_distance_m", self.source_distance_m),
            ("noise_azimuth_deg", self.noise_azimuth_deg),
            ("snr_db", self.snr_db),
        ];
        for (name, (lo, hi)) in pairs {
            if !(lo <= hi) {
                return Err(Error::InvalidConfig(format!(
                    "{name}: min {lo} > max {hi}"
                )));
            }
        }
        if self.noise_count.0 > self.noise_count.1 {
            return Err(Error::InvalidConfig("noise_count: min > max".into()));
        }
        if self.rt60_s.0 <= 0.0 {
            return Err(Error::InvalidConfig("rt60 must be > 0".into()));
        }
        if self.wall_margin_m < 0.0 {
            return Err(Error::InvalidConfig("wall margin must be >= 0".into()));
        }
        Ok(())
    }
}

const PLACEMENT_RETRIES: usize = 1000;

fn uniform(rng: &mut ChaCha8Rng, range: (f64, f64)) -> f64 {
    if range.0 == range.1 {
        range.0
    } else {
        rng.gen_range(range.0..=range.1)
    }
}

/// Samples a full scene. Deterministic for a fixed `(seed, ranges)` pair;
/// placements that violate the wall margin are re-drawn up to a bounded
/// retry count.
pub fn sample_scene(seed: u64, ranges: &SamplingRanges) -> Result<SceneSpec> {
    ranges.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let room = RoomSpec::new(
        uniform(&mut rng, ranges.room_length_m),
        uniform(&mut rng, ranges.room_width_m),
        uniform(&mut rng, ranges.room_height_m),
        uniform(&mut rng, ranges.rt60_s),
    )?;

    let margin = ranges.wall_margin_m;
    let h = ranges.source_height_m;
    if h < margin || h > room.height_m - margin {
        return Err(Error::InfeasibleGeometry(format!(
            "source height {h} m violates the {margin} m margin in a {} m tall room",
            room.height_m
        )));
    }
    if room.length_m <= 2.0 * margin || room.width_m <= 2.0 * margin {
        return Err(Error::InfeasibleGeometry(
            "room too small for wall margins".into(),
        ));
    }

    // Array center and target are drawn together so a cramped center can be
    // abandoned rather than starving the target placement.
    let mut placed = None;
    for _ in 0..PLACEMENT_RETRIES {
        let center = [
            uniform(&mut rng, (margin, room.length_m - margin)),
            uniform(&mut rng, (margin, room.width_m - margin)),
            h,
        ];
        let target = SourceSpec::from_polar(
            center,
            uniform(&mut rng, ranges.target_azimuth_deg),
            uniform(&mut rng, ranges.source_distance_m),
        );
        if room.wall_margin(target.position_m) >= margin {
            placed = Some((center, target));
            break;
        }
    }
    let (center, target) = placed.ok_or_else(|| {
        Error::InfeasibleGeometry("could not place array and target within margins".into())
    })?;

    let n_noises = rng.gen_range(ranges.noise_count.0..=ranges.noise_count.1);
    let mut noises = Vec::with_capacity(n_noises);
    for i in 0..n_noises {
        let mut found = None;
        for _ in 0..PLACEMENT_RETRIES {
            let n = SourceSpec::from_polar(
                center,
                uniform(&mut rng, ranges.noise_azimuth_deg),
                uniform(&mut rng, ranges.source_distance_m),
            );
            if room.wall_margin(n.position_m) >= margin {
                found = Some(n);
                break;
            }
        }
        noises.push(found.ok_or_else(|| {
            Error::InfeasibleGeometry(format!("could not place noise source {i}"))
        })?);
    }

    Ok(SceneSpec {
        room,
        array: ArrayGeometry::uca_default(center),
        target,
        noises,
        snr_db: uniform(&mut rng, ranges.snr_db),
        seed,
        speech_wav: None,
        noise_wavs: Vec::new(),
    })
}

/// Independent constraint checker for a sampled scene. Re-derives source
/// positions from their polar coordinates and verifies every range and
/// margin; used by tests and the simulation audit.
pub fn validate_scene(spec: &SceneSpec, ranges: &SamplingRanges) -> Result<()> {
    let fail = |msg: String| Err(Error::InfeasibleGeometry(msg));
    let in_range = |v: f64, (lo, hi): (f64, f64)| v >= lo - 1e-9 && v <= hi + 1e-9;

    let room = &spec.room;
    if !in_range(room.length_m, ranges.room_length_m)
        || !in_range(room.width_m, ranges.room_width_m)
        || !in_range(room.height_m, ranges.room_height_m)
        || !in_range(room.rt60_s, ranges.rt60_s)
    {
        return fail(format!("room out of range: {room:?}"));
    }
    if !in_range(spec.snr_db, ranges.snr_db) {
        return fail(format!("snr {} out of range", spec.snr_db));
    }
    if spec.noises.len() < ranges.noise_count.0 || spec.noises.len() > ranges.noise_count.1 {
        return fail(format!("noise count {} out of range", spec.noises.len()));
    }

    let margin = ranges.wall_margin_m - 1e-9;
    let center = spec.array.center_m;
    if room.wall_margin(center) < margin {
        return fail("array center violates wall margin".into());
    }

    let check_source = |s: &SourceSpec, az_range: (f64, f64), what: &str| -> Result<()> {
        if !in_range(s.azimuth_deg, az_range) {
            return fail(format!("{what} azimuth {} out of range", s.azimuth_deg));
        }
        if !in_range(s.distance_m, ranges.source_distance_m) {
            return fail(format!("{what} distance {} out of range", s.distance_m));
        }
        let expect = SourceSpec::from_polar(center, s.azimuth_deg, s.distance_m);
        if dist3(expect.position_m, s.position_m) > 1e-9 {
            return fail(format!("{what} position inconsistent with polar coords"));
        }
        if room.wall_margin(s.position_m) < margin {
            return fail(format!("{what} violates wall margin"));
        }
        Ok(())
    };
    check_source(&spec.target, ranges.target_azimuth_deg, "target")?;
    for (i, n) in spec.noises.iter().enumerate() {
        check_source(n, ranges.noise_azimuth_deg, &format!("noise {i}"))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_scene() {
        let ranges = SamplingRanges::default();
        let a = sample_scene(42, &ranges).unwrap();
        let b = sample_scene(42, &ranges).unwrap();
        assert_eq!(a, b);
        let c = sample_scene(43, &ranges).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn sampled_scenes_respect_every_range() {
        let ranges = SamplingRanges::default();
        let mut room_min = f64::INFINITY;
        let mut room_max = f64::NEG_INFINITY;
        let mut rt_min = f64::INFINITY;
        let mut rt_max = f64::NEG_INFINITY;
        for seed in 0..10_000 {
            let spec = sample_scene(seed, &ranges).unwrap();
            validate_scene(&spec, &ranges).unwrap();
            room_min = room_min.min(spec.room.length_m).min(spec.room.width_m);
            room_max = room_max.max(spec.room.length_m).max(spec.room.width_m);
            rt_min = rt_min.min(spec.room.rt60_s);
            rt_max = rt_max.max(spec.room.rt60_s);
            let m = spec.room.wall_margin(spec.target.position_m);
            assert!(m >= 1.0 - 1e-9, "seed {seed}: target margin {m}");
            for n in &spec.noises {
                assert!(spec.room.wall_margin(n.position_m) >= 1.0 - 1e-9);
            }
        }
        assert!(room_min >= 3.0 && room_max <= 10.0);
        assert!((3.0..4.0).contains(&room_min), "empirical min {room_min}");
        assert!((9.0..=10.0).contains(&room_max), "empirical max {room_max}");
        assert!(rt_min >= 0.2 && rt_max <= 0.7);
    }

    #[test]
    fn uca_positions_are_equally_spaced() {
        let geom = ArrayGeometry::uca_default([2.0, 3.0, 1.5]);
        let pos = geom.mic_positions();
        assert_eq!(pos.len(), 6);
        for (i, p) in pos.iter().enumerate() {
            let r = dist3(*p, geom.center_m);
            assert!((r - 0.04).abs() < 1e-12, "mic {i} radius {r}");
        }
        // 60 degree spacing: adjacent chord length 2 r sin(30 deg) = r.
        for i in 0..6 {
            let chord = dist3(pos[i], pos[(i + 1) % 6]);
            assert!((chord - 0.04).abs() < 1e-12);
        }
    }

    #[test]
    fn validator_catches_bad_scenes() {
        let ranges = SamplingRanges::default();
        let mut spec = sample_scene(7, &ranges).unwrap();
        spec.target.position_m[0] = 0.5; // breaks polar consistency and margin
        assert!(validate_scene(&spec, &ranges).is_err());

        let mut spec2 = sample_scene(7, &ranges).unwrap();
        spec2.snr_db = 99.0;
        assert!(validate_scene(&spec2, &ranges).is_err());
    }

    #[test]
    fn infeasible_margins_error() {
        let ranges = SamplingRanges {
            room_height_m: (2.5, 2.5),
            source_height_m: 2.0, // only 0.5 m below the ceiling
            ..SamplingRanges::default()
        };
        assert!(matches!(
            sample_scene(1, &ranges),
            Err(Error::InfeasibleGeometry(_))
        ));
    }
}
