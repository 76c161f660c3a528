//! Plain-text ingestion and emission: point-cloud CSV, PPM (P3) images,
//! and the JSON wire formats for transforms, diagrams, and distance
//! results.
//!
//! CSV point clouds are headerless, one comma-separated row of decimal
//! coordinates per point. Emitted floats carry 17 significant digits so a
//! round trip through text reproduces the exact f64 values.

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::metric::{PointCloud, ScalingTransform};
use crate::persistence::PersistenceDiagram;

/// Formats a float with 17 significant digits, enough to round-trip f64.
pub fn format_f64(value: f64) -> String {
    format!("{value:.16e}")
}

pub fn parse_point_cloud_csv(text: &str) -> Result<PointCloud> {
    let mut points: Vec<Vec<f64>> = Vec::new();
    let mut expected_width: Option<usize> = None;
    for (index, raw_line) in text.lines().enumerate() {
        let line_number = index + 1;
        let line = raw_line.trim();
        if line.is_empty() {
            continue;
        }
        let mut row = Vec::new();
        for field in line.split(',') {
            let field = field.trim();
            let value: f64 = field.parse().map_err(|_| Error::CsvParse {
                line: line_number,
                message: format!("non-numeric field {field:?}"),
            })?;
            if !value.is_finite() {
                return Err(Error::CsvParse {
                    line: line_number,
                    message: format!("non-finite coordinate {value}"),
                });
            }
            row.push(value);
        }
        match expected_width {
            None => expected_width = Some(row.len()),
            Some(width) if width != row.len() => {
                return Err(Error::CsvParse {
                    line: line_number,
                    message: format!("row has {} fields, expected {width}", row.len()),
                });
            }
            Some(_) => {}
        }
        points.push(row);
    }
    if points.is_empty() {
        return Err(Error::CsvParse {
            line: 0,
            message: "no data rows".into(),
        });
    }
    PointCloud::new(points)
}

pub fn render_point_cloud_csv(cloud: &PointCloud) -> String {
    let mut out = String::new();
    for point in cloud.points() {
        let row: Vec<String> = point.iter().map(|&x| format_f64(x)).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

/// Parses a plain-text PPM (P3) image into a cloud of `[r, g, b]` pixel
/// vectors, row-major.
pub fn parse_ppm_p3(text: &str) -> Result<PointCloud> {
    let mut tokens = text
        .lines()
        .map(|line| line.split('#').next().unwrap_or(""))
        .flat_map(|line| {
            line.split_whitespace()
                .map(str::to_owned)
                .collect::<Vec<_>>()
        });
    let magic = tokens
        .next()
        .ok_or_else(|| Error::PpmParse("empty file".into()))?;
    if magic != "P3" {
        return Err(Error::PpmParse(format!(
            "expected magic 'P3', found {magic:?}"
        )));
    }
    let mut read_usize = |what: &str| -> Result<usize> {
        let token = tokens
            .next()
            .ok_or_else(|| Error::PpmParse(format!("missing {what}")))?;
        token
            .parse()
            .map_err(|_| Error::PpmParse(format!("invalid {what} {token:?}")))
    };
    let width = read_usize("width")?;
    let height = read_usize("height")?;
    let max_value = read_usize("max value")?;
    if width == 0 || height == 0 {
        return Err(Error::PpmParse("image has no pixels".into()));
    }
    if max_value == 0 {
        return Err(Error::PpmParse("max value must be positive".into()));
    }
    let mut points = Vec::with_capacity(width * height);
    for pixel in 0..width * height {
        let mut rgb = [0.0f64; 3];
        for channel in &mut rgb {
            let sample = read_usize(&format!("sample in pixel {pixel}"))?;
            if sample > max_value {
                return Err(Error::PpmParse(format!(
                    "sample {sample} exceeds max value {max_value}"
                )));
            }
            *channel = sample as f64;
        }
        points.push(rgb.to_vec());
    }
    PointCloud::new(points)
}

pub fn parse_transform_json(text: &str) -> Result<ScalingTransform> {
    Ok(serde_json::from_str(text)?)
}

pub fn render_transform_json(transform: &ScalingTransform) -> String {
    serde_json::to_string(transform).expect("transform serialization cannot fail")
}

pub fn parse_diagram_json(text: &str) -> Result<PersistenceDiagram> {
    Ok(serde_json::from_str(text)?)
}

pub fn render_diagram_json(diagram: &PersistenceDiagram) -> String {
    serde_json::to_string(diagram).expect("diagram serialization cannot fail")
}

/// Which diagram distance a [`DistanceResult`] reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DistanceMetric {
    Bottleneck,
    Wasserstein,
}

/// A diagram-distance value for emission:
/// `{"metric": ..., "p": ..., "value": v | "inf"}`. Infinite distances
/// (unequal essential counts) serialize as the string `"inf"`.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceResult {
    pub metric: DistanceMetric,
    pub p: Option<f64>,
    pub value: f64,
}

impl Serialize for DistanceResult {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("DistanceResult", 3)?;
        s.serialize_field("metric", &self.metric)?;
        s.serialize_field("p", &self.p)?;
        if self.value.is_finite() {
            s.serialize_field("value", &self.value)?;
        } else {
            s.serialize_field("value", "inf")?;
        }
        s.end()
    }
}
