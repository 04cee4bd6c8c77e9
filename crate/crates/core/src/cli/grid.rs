//! Parsing of `name=value` arguments and scan grids.

use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::cli::CliError;
use crate::literal::parse_complex;
use crate::verify::ParamPoint;

fn split_assignment(arg: &str) -> Result<(&str, &str), CliError> {
    match arg.split_once('=') {
        Some((k, v)) if !k.is_empty() && !v.is_empty() => Ok((k, v)),
        _ => Err(CliError::MalformedParam(arg.into())),
    }
}

fn literal(name: &str, text: &str) -> Result<Complex64, CliError> {
    parse_complex(text).ok_or_else(|| CliError::MalformedParam(format!("{name}={text}")))
}

/// Parses `name=value` pairs into a single point. Returns the point and the
/// arguments left over as `name=value` text for keys listed in `reserved`.
pub fn parse_point(args: &[String], reserved: &[&str]) -> Result<(ParamPoint, BTreeMap<String, String>), CliError> {
    let mut point = ParamPoint::new();
    let mut extra = BTreeMap::new();
    for arg in args {
        let (k, v) = split_assignment(arg)?;
        if point.contains_key(k) || extra.contains_key(k) {
            return Err(CliError::MalformedParam(format!("{k} given twice")));
        }
        if reserved.contains(&k) {
            extra.insert(k.to_string(), v.to_string());
        } else {
            point.insert(k.to_string(), literal(k, v)?);
        }
    }
    Ok((point, extra))
}

/// Values of one axis: `start:stop:count` (linear, endpoints included),
/// `v1,v2,...`, or a single literal.
pub fn parse_axis(name: &str, spec: &str) -> Result<Vec<Complex64>, CliError> {
    let bad = || CliError::MalformedGrid(format!("{name}={spec}"));
    if spec.contains(':') {
        let parts: Vec<&str> = spec.split(':').collect();
        let [start, stop, count] = parts[..] else { return Err(bad()) };
        let start = parse_complex(start).ok_or_else(bad)?;
        let stop = parse_complex(stop).ok_or_else(bad)?;
        let count: usize = count.parse().map_err(|_| bad())?;
        return match count {
            0 => Err(bad()),
            1 => Ok(vec![start]),
            n => Ok((0..n).map(|i| start + (stop - start) * (i as f64 / (n - 1) as f64)).collect()),
        };
    }
    spec.split(',').map(|s| parse_complex(s).ok_or_else(bad)).collect()
}

/// Parses grid arguments into axes.
pub fn parse_grid(args: &[String]) -> Result<BTreeMap<String, Vec<Complex64>>, CliError> {
    let mut axes = BTreeMap::new();
    for arg in args {
        let (k, v) = split_assignment(arg)?;
        if axes.insert(k.to_string(), parse_axis(k, v)?).is_some() {
            return Err(CliError::MalformedGrid(format!("{k} given twice")));
        }
    }
    Ok(axes)
}
