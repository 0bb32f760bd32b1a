use std::f64::consts::PI;

use crate::CliError;

/// Comma-separated non-negative integers, e.g. `3,3`.
pub fn quantum_number(s: &str) -> Result<Vec<u64>, CliError> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<u64>()
                .map_err(|_| CliError::Usage(format!("bad quantum number entry {t:?} in {s:?}")))
        })
        .collect()
}

/// A real number, optionally a multiple of π: `0.3`, `pi`, `pi/2`, `3pi/4`, `-0.5*pi`.
pub fn real(s: &str) -> Result<f64, CliError> {
    let bad = || CliError::Usage(format!("cannot read {s:?} as a number"));
    let t = s.trim().replace('π', "pi");
    let Some((coef, rest)) = t.split_once("pi") else {
        return t.parse().map_err(|_| bad());
    };
    let coef = coef.trim_end_matches('*');
    let c: f64 = match coef {
        "" | "+" => 1.0,
        "-" => -1.0,
        c => c.parse().map_err(|_| bad())?,
    };
    let d: f64 = match rest {
        "" => 1.0,
        r => r.strip_prefix('/').ok_or_else(bad)?.parse().map_err(|_| bad())?,
    };
    Ok(c * PI / d)
}

pub fn point(s: &str) -> Result<Vec<f64>, CliError> {
    s.split(',').map(real).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reals() {
        assert_eq!(real("0.25").unwrap(), 0.25);
        assert_eq!(real("pi").unwrap(), PI);
        assert_eq!(real("pi/2").unwrap(), PI / 2.0);
        assert_eq!(real("3pi/4").unwrap(), 3.0 * PI / 4.0);
        assert_eq!(real("-0.5*pi").unwrap(), -0.5 * PI);
        assert!(real("pi/").is_err());
        assert!(real("x").is_err());
    }

    #[test]
    fn quantum_numbers() {
        assert_eq!(quantum_number("3, 2").unwrap(), [3, 2]);
        assert!(quantum_number("3,-1").is_err());
    }
}
