//! Command-line syntax for matrices and models.
//!
//! Matrices: `[[a,b],[c,d]]` (whitespace allowed) or `a,b;c,d`.
//! Models: `suspension:<matrix>`, `surface:g=<genus>`, `orbifold:2,3,<n>`.

use anosov_core::models::Model;
use anosov_core::{HyperbolicMatrix, Mat2};
use num_bigint::BigInt;

pub fn parse_matrix(input: &str) -> Result<Mat2, String> {
    let compact: String = input.chars().filter(|c| !c.is_whitespace()).collect();
    let rows: Vec<&str> = if compact.starts_with('[') {
        compact
            .strip_prefix("[[")
            .and_then(|s| s.strip_suffix("]]"))
            .ok_or_else(|| format!("malformed matrix '{input}': expected [[a,b],[c,d]]"))?
            .split("],[")
            .collect()
    } else {
        compact.split(';').collect()
    };
    if rows.len() != 2 {
        return Err(format!("malformed matrix '{input}': expected 2 rows, found {}", rows.len()));
    }
    let mut entries = Vec::with_capacity(4);
    for row in rows {
        let tokens: Vec<&str> = row.split(',').collect();
        if tokens.len() != 2 {
            return Err(format!("malformed matrix row '{row}': expected 2 entries"));
        }
        for token in tokens {
            let value: BigInt = token
                .parse()
                .map_err(|_| format!("invalid matrix entry '{token}'"))?;
            entries.push(value);
        }
    }
    let [a, b, c, d]: [BigInt; 4] = entries.try_into().expect("2×2 entries");
    Ok(Mat2 { a, b, c, d })
}

pub fn parse_hyperbolic(input: &str) -> Result<HyperbolicMatrix, String> {
    let m = parse_matrix(input)?;
    HyperbolicMatrix::new(m).map_err(|e| format!("'{input}': {e}"))
}

pub fn parse_model(input: &str) -> Result<Model, String> {
    let (kind, rest) = input
        .split_once(':')
        .ok_or_else(|| format!("malformed model '{input}': expected <kind>:<data>"))?;
    match kind.trim() {
        "suspension" => Ok(Model::Suspension(parse_hyperbolic(rest)?)),
        "surface" => {
            let genus = rest
                .trim()
                .strip_prefix("g=")
                .ok_or_else(|| format!("malformed surface '{rest}': expected g=<genus>"))?;
            let genus: u64 = genus
                .parse()
                .map_err(|_| format!("invalid genus '{genus}'"))?;
            Model::surface(genus).map_err(|e| e.to_string())
        }
        "orbifold" => {
            let orders: Vec<&str> = rest.split(',').map(str::trim).collect();
            match orders.as_slice() {
                ["2", "3", n] => {
                    let n: u64 = n.parse().map_err(|_| format!("invalid cone order '{n}'"))?;
                    Model::orbifold(n).map_err(|e| e.to_string())
                }
                _ => Err(format!("unsupported orbifold signature '{rest}': expected 2,3,<n>")),
            }
        }
        other => Err(format!("unknown model kind '{other}'")),
    }
}
