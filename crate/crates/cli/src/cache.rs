//! JSON-lines curve caches, one record per line, validated on load by
//! recomputing the discriminant. Corrupted caches are reported, never
//! silently reused.

use num_bigint::BigInt;
use std::path::Path;

use hyperorbit::curves::{enumerate_curves, CurveRecord, HyperCurve};

use crate::CliError;

pub fn curves_with_cache(
    n: usize,
    x: u64,
    cache_dir: Option<&Path>,
) -> Result<Vec<HyperCurve>, CliError> {
    let Some(dir) = cache_dir else {
        return Ok(enumerate_curves(n, &BigInt::from(x))?);
    };
    std::fs::create_dir_all(dir)?;
    let path = dir.join(format!("curves_n{}_x{}.jsonl", n, x));
    if path.exists() {
        let text = std::fs::read_to_string(&path)?;
        let mut curves = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let record: CurveRecord = serde_json::from_str(line).map_err(|e| {
                CliError::validation(format!(
                    "corrupted cache {} line {}: {}",
                    path.display(),
                    lineno + 1,
                    e
                ))
            })?;
            let curve = record.to_curve_validated().map_err(|_| {
                CliError::validation(format!(
                    "corrupted cache {} line {}: discriminant mismatch",
                    path.display(),
                    lineno + 1
                ))
            })?;
            curves.push(curve);
        }
        return Ok(curves);
    }
    let curves = enumerate_curves(n, &BigInt::from(x))?;
    let mut body = String::new();
    for curve in &curves {
        body.push_str(&serde_json::to_string(&CurveRecord::from_curve(curve)).unwrap());
        body.push('\n');
    }
    std::fs::write(&path, body)?;
    Ok(curves)
}
