//! Tolerance manifest: per-identity tolerances and default parameter grids,
//! read from TOML.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::OnceLock;

use num_complex::Complex64;
use serde::Deserialize;
use thiserror::Error;

use crate::literal::parse_complex;
use crate::verify::report::ParamPoint;

/// The manifest compiled into the library.
pub const DEFAULT_MANIFEST: &str = include_str!("default_manifest.toml");

#[derive(Debug, Error)]
pub enum ManifestError {
    #[error("cannot read manifest {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("malformed manifest: {0}")]
    Parse(String),
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum Literal {
    Number(f64),
    Text(String),
}

impl Literal {
    fn to_complex(&self) -> Result<Complex64, ManifestError> {
        match self {
            Literal::Number(x) => Ok(Complex64::new(*x, 0.0)),
            Literal::Text(s) => parse_complex(s)
                .ok_or_else(|| ManifestError::Parse(format!("bad complex literal {s:?}"))),
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawEntry {
    tolerance: Option<f64>,
    grid: Option<BTreeMap<String, Vec<Literal>>>,
    points: Option<Vec<BTreeMap<String, Literal>>>,
    qgrid: Option<String>,
}

/// Settings for one identity label.
#[derive(Debug, Clone, PartialEq)]
pub struct ManifestEntry {
    pub tolerance: f64,
    /// Default parameter points, in lexicographic parameter order.
    pub points: Vec<ParamPoint>,
    /// Default q-grid specification for limit studies.
    pub qgrid: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Manifest {
    entries: BTreeMap<String, ManifestEntry>,
}

/// Orders points by their values in key order, comparing `(re, im)`.
pub fn sort_points(points: &mut [ParamPoint]) {
    points.sort_by(|p, q| {
        for ((_, a), (_, b)) in p.iter().zip(q.iter()) {
            let o = a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im));
            if o.is_ne() {
                return o;
            }
        }
        p.len().cmp(&q.len())
    });
}

/// Cartesian product of named axes.
pub fn expand_grid(axes: &BTreeMap<String, Vec<Complex64>>) -> Vec<ParamPoint> {
    let mut points = vec![ParamPoint::new()];
    for (name, values) in axes {
        let mut next = Vec::with_capacity(points.len() * values.len());
        for p in &points {
            for v in values {
                let mut p = p.clone();
                p.insert(name.clone(), *v);
                next.push(p);
            }
        }
        points = next;
    }
    sort_points(&mut points);
    points
}

impl Manifest {
    pub fn from_toml_str(text: &str) -> Result<Self, ManifestError> {
        let raw: BTreeMap<String, RawEntry> =
            toml::from_str(text).map_err(|e| ManifestError::Parse(e.to_string()))?;
        let mut entries = BTreeMap::new();
        for (label, e) in raw {
            let tolerance = e
                .tolerance
                .ok_or_else(|| ManifestError::Parse(format!("[{label}] has no tolerance")))?;
            if tolerance.is_nan() || tolerance <= 0.0 {
                return Err(ManifestError::Parse(format!("[{label}] tolerance must be positive")));
            }
            let mut points = Vec::new();
            if let Some(grid) = &e.grid {
                let mut axes = BTreeMap::new();
                for (k, vs) in grid {
                    let vs = vs.iter().map(Literal::to_complex).collect::<Result<Vec<_>, _>>()?;
                    axes.insert(k.clone(), vs);
                }
                points.extend(expand_grid(&axes));
            }
            if let Some(list) = &e.points {
                for raw_point in list {
                    let mut p = ParamPoint::new();
                    for (k, v) in raw_point {
                        p.insert(k.clone(), v.to_complex()?);
                    }
                    points.push(p);
                }
                sort_points(&mut points);
            }
            entries.insert(label, ManifestEntry { tolerance, points, qgrid: e.qgrid });
        }
        Ok(Self { entries })
    }

    /// The built-in manifest.
    pub fn builtin() -> &'static Manifest {
        static BUILTIN: OnceLock<Manifest> = OnceLock::new();
        BUILTIN.get_or_init(|| Manifest::from_toml_str(DEFAULT_MANIFEST).expect("built-in manifest parses"))
    }

    /// The built-in manifest with the entries of the file at `path` laid
    /// over it, label by label.
    pub fn load(path: &Path) -> Result<Self, ManifestError> {
        let text = std::fs::read_to_string(path)
            .map_err(|source| ManifestError::Io { path: path.display().to_string(), source })?;
        let overlay = Self::from_toml_str(&text)?;
        let mut merged = Self::builtin().clone();
        merged.entries.extend(overlay.entries);
        Ok(merged)
    }

    pub fn entry(&self, label: &str) -> Option<&ManifestEntry> {
        self.entries.get(label)
    }

    pub fn tolerance(&self, label: &str) -> Option<f64> {
        self.entry(label).map(|e| e.tolerance)
    }

    pub fn labels(&self) -> impl Iterator<Item = &str> {
        self.entries.keys().map(String::as_str)
    }
}

/// Built-in tolerance for `label`.
///
/// # Panics
/// When `label` has no entry in the built-in manifest.
pub fn default_tolerance(label: &str) -> f64 {
    Manifest::builtin()
        .tolerance(label)
        .unwrap_or_else(|| panic!("no built-in tolerance for identity {label:?}"))
}
