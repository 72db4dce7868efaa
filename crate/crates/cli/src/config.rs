//! Layered settings: command-line flags over a key=value file over defaults.

use std::collections::BTreeMap;

/// Keys accepted both as `--key` flags and in config files.
pub const KEYS: &[&str] = &[
    "basis",
    "n",
    "beta",
    "sigma",
    "parity",
    "ortho",
    "operator",
    "potential",
    "grid",
    "s-values",
    "n1",
    "n2",
    "out",
    "levels",
    "npoints",
    "half-width",
];

pub type Layer = BTreeMap<String, String>;

fn normalize(key: &str) -> String {
    key.trim().replace('_', "-")
}

/// Parses `key = value` lines; `#` starts a comment line, surrounding quotes are dropped.
pub fn parse_file(text: &str) -> Result<Layer, String> {
    let mut out = Layer::new();
    for (k, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| format!("config line {}: expected key=value", k + 1))?;
        let key = normalize(key);
        if !KEYS.contains(&key.as_str()) {
            return Err(format!("config line {}: unknown key '{key}'", k + 1));
        }
        let value = value.trim();
        let value = value
            .strip_prefix('"')
            .and_then(|v| v.strip_suffix('"'))
            .unwrap_or(value);
        if out.insert(key.clone(), value.to_string()).is_some() {
            return Err(format!("config line {}: duplicate key '{key}'", k + 1));
        }
    }
    Ok(out)
}

/// Later layers win.
pub fn merge(layers: &[&Layer]) -> Layer {
    let mut out = Layer::new();
    for layer in layers {
        for (k, v) in layer.iter() {
            out.insert(k.clone(), v.clone());
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn file_syntax() {
        let l = parse_file("# demo\nbasis = ho\nn=50\npotential = \"1*exp(-9r^2) -1*exp(-r^2)\"\ns_values=0,1\n").unwrap();
        assert_eq!(l["basis"], "ho");
        assert_eq!(l["n"], "50");
        assert_eq!(l["potential"], "1*exp(-9r^2) -1*exp(-r^2)");
        assert_eq!(l["s-values"], "0,1");
        assert!(parse_file("colour=red").is_err());
        assert!(parse_file("n 50").is_err());
        assert!(parse_file("n=1\nn=2").is_err());
    }

    #[test]
    fn later_layers_win() {
        let a: Layer = [("n".to_string(), "1".to_string()), ("beta".to_string(), "2".to_string())].into();
        let b: Layer = [("n".to_string(), "3".to_string())].into();
        let m = merge(&[&a, &b]);
        assert_eq!(m["n"], "3");
        assert_eq!(m["beta"], "2");
    }
}
