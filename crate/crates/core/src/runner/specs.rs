//! Textual weight and symbol specifications.

use std::path::Path;

use crate::error::{Error, Result};
use crate::symbols::{classical_symbol, SymbolPair};
use crate::weights::{named_weight, NamedWeight, Weight};

const CUSTOM: &str = "custom:";

fn resolve(base: Option<&Path>, file: &str) -> std::path::PathBuf {
    let p = Path::new(file);
    match base {
        Some(dir) if p.is_relative() => dir.join(p),
        _ => p.to_path_buf(),
    }
}

/// A built-in weight name (`uniform`, `chernykh1`, `chernykh2`, `v_star`,
/// `v_hat`) or `custom:<file>` with an `s V(s)` table. Relative paths are
/// taken from `base`.
pub fn parse_weight_spec(spec: &str, base: Option<&Path>) -> Result<Weight> {
    let spec = spec.trim();
    if let Some(file) = spec.strip_prefix(CUSTOM) {
        return Weight::read_table(resolve(base, file));
    }
    let name: NamedWeight = spec.parse()?;
    Ok(named_weight(name))
}

/// `classical:m` or `custom:<file>` with a `t psi` table.
pub fn parse_symbol_spec(spec: &str, base: Option<&Path>) -> Result<SymbolPair> {
    let spec = spec.trim();
    if let Some(file) = spec.strip_prefix(CUSTOM) {
        return SymbolPair::read_table(resolve(base, file));
    }
    if let Some(m) = spec.strip_prefix("classical:") {
        let m: u32 = m
            .trim()
            .parse()
            .map_err(|_| Error::InvalidSymbol(format!("bad order in `{spec}`")))?;
        return classical_symbol(m);
    }
    Err(Error::InvalidSymbol(format!(
        "unknown symbol `{spec}`; expected `classical:m` or `custom:<file>`"
    )))
}

/// Parses an exponent: a number or `inf`.
pub fn parse_exponent(text: &str) -> Result<f64> {
    match text.trim() {
        "inf" | "infinity" | "Inf" => Ok(f64::INFINITY),
        t => t
            .parse::<f64>()
            .ok()
            .filter(|p| *p >= 1.0)
            .ok_or_else(|| Error::InvalidArgument(format!("p must be a number >= 1 or `inf`, got `{t}`"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weight_names() {
        assert_eq!(parse_weight_spec("v_hat", None).unwrap().label(), "v_hat");
        let err = parse_weight_spec("vhat", None).unwrap_err().to_string();
        assert!(err.contains("chernykh1") && err.contains("v_star"), "{err}");
    }

    #[test]
    fn symbol_specs() {
        assert_eq!(
            parse_symbol_spec("classical:3", None).unwrap().classical_order(),
            Some(3)
        );
        assert!(parse_symbol_spec("classical:0", None).is_err());
        assert!(parse_symbol_spec("classical:x", None).is_err());
        assert!(parse_symbol_spec("sine", None).is_err());
    }

    #[test]
    fn exponents() {
        assert_eq!(parse_exponent("inf").unwrap(), f64::INFINITY);
        assert_eq!(parse_exponent("4").unwrap(), 4.0);
        assert!(parse_exponent("0.5").is_err());
    }
}
