//! Seeded synthetic point-cloud generators.
//!
//! A generator spec is `family:key=value,key=value`. Unknown keys are
//! rejected. Every family is deterministic for a given seed.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_distr::{Distribution, Normal};
use scalestab::{ChaCha8Rng, PointCloud};

use crate::commands::CliError;

const MAX_GENERATED_POINTS: usize = 20_000;

pub fn generate(spec: &str, seed: u64) -> Result<PointCloud, CliError> {
    let (family, params) = parse_spec(spec)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let points = match family.as_str() {
        "circle" => circle(&params, &mut rng)?,
        "square" => square(&params, &mut rng)?,
        "gaussian-blobs" => gaussian_blobs(&params, &mut rng)?,
        "rgb-pixels" => rgb_pixels(&params)?,
        "grid" => grid(&params)?,
        other => {
            return Err(CliError::Validation(format!(
                "unknown generator family {other:?}; known: circle, square, gaussian-blobs, rgb-pixels, grid"
            )))
        }
    };
    PointCloud::new(points).map_err(CliError::from)
}

fn parse_spec(spec: &str) -> Result<(String, BTreeMap<String, f64>), CliError> {
    let (family, rest) = match spec.split_once(':') {
        Some((family, rest)) => (family, rest),
        None => (spec, ""),
    };
    let mut params = BTreeMap::new();
    for part in rest.split(',').filter(|p| !p.trim().is_empty()) {
        let (key, value) = part.split_once('=').ok_or_else(|| {
            CliError::Validation(format!("generator parameter {part:?} is not key=value"))
        })?;
        let value: f64 = value.trim().parse().map_err(|_| {
            CliError::Validation(format!("generator parameter {key} has non-numeric value {value:?}"))
        })?;
        params.insert(key.trim().to_string(), value);
    }
    Ok((family.trim().to_string(), params))
}

struct Params {
    family: &'static str,
    map: BTreeMap<String, f64>,
}

impl Params {
    fn new(family: &'static str, map: &BTreeMap<String, f64>, known: &[&str]) -> Result<Self, CliError> {
        for key in map.keys() {
            if !known.contains(&key.as_str()) {
                return Err(CliError::Validation(format!(
                    "unknown parameter {key:?} for generator {family}; known: {}",
                    known.join(", ")
                )));
            }
        }
        Ok(Self {
            family,
            map: map.clone(),
        })
    }

    fn get_f64(&self, key: &str, default: f64) -> f64 {
        self.map.get(key).copied().unwrap_or(default)
    }

    fn get_usize(&self, key: &str, default: usize) -> Result<usize, CliError> {
        match self.map.get(key) {
            None => Ok(default),
            Some(&v) => {
                if v.fract() == 0.0 && v >= 1.0 && v <= MAX_GENERATED_POINTS as f64 {
                    Ok(v as usize)
                } else {
                    Err(CliError::Validation(format!(
                        "{}: parameter {key}={v} must be an integer in 1..={MAX_GENERATED_POINTS}",
                        self.family
                    )))
                }
            }
        }
    }
}

fn circle(map: &BTreeMap<String, f64>, rng: &mut ChaCha8Rng) -> Result<Vec<Vec<f64>>, CliError> {
    let p = Params::new("circle", map, &["points", "radius", "jitter"])?;
    let n = p.get_usize("points", 12)?;
    let radius = p.get_f64("radius", 1.0);
    let jitter = p.get_f64("jitter", 0.0);
    Ok((0..n)
        .map(|i| {
            let base = 2.0 * PI * i as f64 / n as f64;
            let angle = if jitter > 0.0 {
                base + rng.random_range(-jitter..=jitter) * PI / n as f64
            } else {
                base
            };
            vec![radius * angle.cos(), radius * angle.sin()]
        })
        .collect())
}

fn square(map: &BTreeMap<String, f64>, rng: &mut ChaCha8Rng) -> Result<Vec<Vec<f64>>, CliError> {
    let p = Params::new("square", map, &["points", "side"])?;
    let n = p.get_usize("points", 16)?;
    let side = p.get_f64("side", 1.0);
    Ok((0..n)
        .map(|_| {
            // uniform position along the perimeter
            let u: f64 = rng.random_range(0.0..4.0);
            let edge = u.floor() as usize;
            let t = (u - edge as f64) * side;
            match edge {
                0 => vec![t, 0.0],
                1 => vec![side, t],
                2 => vec![side - t, side],
                _ => vec![0.0, side - t],
            }
        })
        .collect())
}

fn gaussian_blobs(
    map: &BTreeMap<String, f64>,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<Vec<f64>>, CliError> {
    let p = Params::new(
        "gaussian-blobs",
        map,
        &["points", "blobs", "dim", "stddev", "spread"],
    )?;
    let n = p.get_usize("points", 32)?;
    let blobs = p.get_usize("blobs", 2)?;
    let dim = p.get_usize("dim", 2)?;
    let stddev = p.get_f64("stddev", 0.1);
    let spread = p.get_f64("spread", 1.0);
    if stddev <= 0.0 {
        return Err(CliError::Validation(
            "gaussian-blobs: stddev must be positive".into(),
        ));
    }
    let normal = Normal::new(0.0, stddev)
        .map_err(|e| CliError::Validation(format!("gaussian-blobs: {e}")))?;
    let centers: Vec<Vec<f64>> = (0..blobs)
        .map(|_| (0..dim).map(|_| rng.random_range(0.0..=spread)).collect())
        .collect();
    Ok((0..n)
        .map(|i| {
            let center = &centers[i % blobs];
            center.iter().map(|&c| c + normal.sample(rng)).collect()
        })
        .collect())
}

/// Deterministic gradient image: channel values sweep linearly with the
/// pixel position, giving `width * height` points in `[0, 255]^3`.
fn rgb_pixels(map: &BTreeMap<String, f64>) -> Result<Vec<Vec<f64>>, CliError> {
    let p = Params::new("rgb-pixels", map, &["width", "height"])?;
    let width = p.get_usize("width", 8)?;
    let height = p.get_usize("height", 8)?;
    check_count(width.checked_mul(height), "rgb-pixels")?;
    let scale = |num: usize, den: usize| {
        if den == 0 {
            0.0
        } else {
            255.0 * num as f64 / den as f64
        }
    };
    let mut points = Vec::with_capacity(width * height);
    for y in 0..height {
        for x in 0..width {
            points.push(vec![
                scale(x, width - 1),
                scale(y, height - 1),
                scale(x + y, width + height - 2),
            ]);
        }
    }
    Ok(points)
}

fn grid(map: &BTreeMap<String, f64>) -> Result<Vec<Vec<f64>>, CliError> {
    let p = Params::new("grid", map, &["side", "dim", "spacing"])?;
    let side = p.get_usize("side", 3)?;
    let dim = p.get_usize("dim", 2)?;
    let spacing = p.get_f64("spacing", 1.0);
    let mut count: Option<usize> = Some(1);
    for _ in 0..dim {
        count = count.and_then(|c| c.checked_mul(side));
    }
    check_count(count, "grid")?;
    let total = count.expect("checked above");
    let mut points = Vec::with_capacity(total);
    for index in 0..total {
        let mut rest = index;
        let mut point = Vec::with_capacity(dim);
        for _ in 0..dim {
            point.push((rest % side) as f64 * spacing);
            rest /= side;
        }
        points.push(point);
    }
    Ok(points)
}

fn check_count(count: Option<usize>, family: &str) -> Result<(), CliError> {
    match count {
        Some(c) if c <= MAX_GENERATED_POINTS => Ok(()),
        _ => Err(CliError::Validation(format!(
            "{family}: requested point count exceeds the generator cap of {MAX_GENERATED_POINTS}"
        ))),
    }
}
