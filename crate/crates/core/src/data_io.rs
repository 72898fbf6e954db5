//! Dataset loading, the embedded elephants data and the pseudo-data
//! generator.

use std::io::Write;
use std::path::Path;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::unit_lindley::UnitLindley;

/// Share of newborn elephants with heads up at mid-pregnancy across herd
/// sizes: 27 values, 2 zeros and 6 ones.
pub const ELEPHANTS: [f64; 27] = [
    0.0000, 1.0000, 0.8000, 0.2500, 0.5714, 1.0000, 0.0000, 0.2500, 0.5000, 1.0000, 1.0000, 0.7000,
    1.0000, 0.1429, 0.2667, 1.0000, 0.5000, 0.4000, 0.6765, 0.4359, 0.0541, 0.4490, 0.4150, 0.6923,
    0.1429, 0.0707, 0.0605,
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Source {
    Embedded,
    File,
    Generated,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Dataset {
    pub name: String,
    pub values: Vec<f64>,
    pub source: Source,
}

impl Dataset {
    pub fn new(name: impl Into<String>, values: Vec<f64>, source: Source) -> Result<Self> {
        let name = name.into();
        if name.is_empty() {
            return Err(Error::InvalidArgument("dataset name must not be empty".into()));
        }
        validate_range(&values)?;
        Ok(Self { name, values, source })
    }

    pub fn elephants() -> Self {
        Self {
            name: "elephants".into(),
            values: ELEPHANTS.to_vec(),
            source: Source::Embedded,
        }
    }

    /// Single-column CSV with a `y` header. Values use the shortest
    /// representation that parses back to the same `f64`.
    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "y")?;
        for v in &self.values {
            writeln!(out, "{v}")?;
        }
        Ok(())
    }
}

fn validate_range(values: &[f64]) -> Result<()> {
    match values.iter().position(|v| !(0.0..=1.0).contains(v)) {
        Some(index) => Err(Error::OutOfRange {
            index,
            value: values[index],
        }),
        None => Ok(()),
    }
}

/// Parses whitespace-, newline- or comma-separated values. A first
/// non-blank line without any numeric token is treated as a header.
pub fn parse_values(text: &str) -> Result<Vec<f64>> {
    let mut values = Vec::new();
    let mut seen_content = false;
    for (line_idx, line) in text.lines().enumerate() {
        let tokens = tokenize(line);
        if tokens.is_empty() {
            continue;
        }
        let first_content = !seen_content;
        seen_content = true;
        if first_content && tokens.iter().all(|(_, t)| parse_token(t).is_none()) {
            continue;
        }
        for (col, tok) in tokens {
            match parse_token(tok) {
                Some(v) => values.push(v),
                None => {
                    return Err(Error::Parse {
                        line: line_idx + 1,
                        column: col + 1,
                        token: tok.to_string(),
                    })
                }
            }
        }
    }
    Ok(values)
}

fn parse_token(tok: &str) -> Option<f64> {
    let trimmed = tok.trim_matches('"');
    trimmed.parse::<f64>().ok()
}

// (char column, token) pairs.
fn tokenize(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start: Option<usize> = None;
    for (i, c) in line.char_indices() {
        let sep = c == ',' || c == ';' || c.is_whitespace();
        match (sep, start) {
            (true, Some(s)) => {
                out.push((s, &line[s..i]));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s, &line[s..]));
    }
    out.into_iter()
        .map(|(byte, tok)| (line[..byte].chars().count(), tok))
        .collect()
}

/// Loads an embedded dataset by name (`elephants`) or a text/CSV file.
pub fn load(path_or_name: &str) -> Result<Dataset> {
    if path_or_name == "elephants" {
        return Ok(Dataset::elephants());
    }
    let path = Path::new(path_or_name);
    if !path.exists() {
        return Err(Error::UnknownDataset(path_or_name.to_string()));
    }
    let text = std::fs::read_to_string(path)?;
    let values = parse_values(&text)?;
    if values.is_empty() {
        return Err(Error::EmptyDataset);
    }
    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .filter(|s| !s.is_empty())
        .unwrap_or_else(|| path_or_name.to_string());
    Dataset::new(name, values, Source::File)
}

/// Layout of a generated pseudo dataset.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PseudoLayout {
    pub zeros: usize,
    pub ones: usize,
    pub interior: usize,
    pub theta: f64,
}

impl PseudoLayout {
    /// 30 zeros, 50 ones and 220 unit-Lindley(1.444589) values.
    pub const DEFAULT: PseudoLayout = PseudoLayout {
        zeros: 30,
        ones: 50,
        interior: 220,
        theta: 1.444589,
    };

    /// 20 zeros, 60 ones and 190 interior values.
    pub const APPENDIX_B: PseudoLayout = PseudoLayout {
        zeros: 20,
        ones: 60,
        interior: 190,
        theta: 1.444589,
    };
}

impl Default for PseudoLayout {
    fn default() -> Self {
        Self::DEFAULT
    }
}

/// Concatenates zeros, unit-Lindley draws and ones, in that order.
pub fn generate_pseudo(seed: u64, layout: PseudoLayout) -> Result<Dataset> {
    let ul = UnitLindley::new(layout.theta)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut values = vec![0.0; layout.zeros];
    values.extend(ul.sample_n(layout.interior, &mut rng));
    values.extend(std::iter::repeat_n(1.0, layout.ones));
    Ok(Dataset {
        name: format!("pseudo{}", values.len()),
        values,
        source: Source::Generated,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::inference::{mle, partition};

    #[test]
    fn embedded_elephants() {
        let d = load("elephants").unwrap();
        assert_eq!(d.values.len(), 27);
        assert_eq!(d.values.iter().filter(|&&v| v == 0.0).count(), 2);
        assert_eq!(d.values.iter().filter(|&&v| v == 1.0).count(), 6);
        assert_eq!(d.source, Source::Embedded);
        // Golden checksum of the listing.
        let sum: f64 = d.values.iter().sum();
        assert!((sum - 13.3779).abs() < 1e-12, "{sum}");
        assert_eq!(d.values[18], 0.6765);
        assert_eq!(d.values[26], 0.0605);
    }

    #[test]
    fn files_and_formats() {
        let dir = tempfile::tempdir().unwrap();
        let single = dir.path().join("one.txt");
        std::fs::write(&single, "0.5\n").unwrap();
        assert_eq!(load(single.to_str().unwrap()).unwrap().values, vec![0.5]);

        let mixed = dir.path().join("mixed.txt");
        std::fs::write(&mixed, "0.1, 0.2 0.3\n\n0.4,0.5\n").unwrap();
        assert_eq!(load(mixed.to_str().unwrap()).unwrap().values, vec![0.1, 0.2, 0.3, 0.4, 0.5]);

        let csv = dir.path().join("with_header.csv");
        std::fs::write(&csv, "\"y\"\n0\n1\n0.25\n").unwrap();
        let d = load(csv.to_str().unwrap()).unwrap();
        assert_eq!(d.values, vec![0.0, 1.0, 0.25]);
        assert_eq!(d.name, "with_header");
    }

    #[test]
    fn rejections() {
        let dir = tempfile::tempdir().unwrap();
        let bad = dir.path().join("bad.txt");
        std::fs::write(&bad, "0.1\n0.2 abc\n").unwrap();
        match load(bad.to_str().unwrap()) {
            Err(Error::Parse { line, column, token }) => {
                assert_eq!((line, column), (2, 5));
                assert_eq!(token, "abc");
            }
            other => panic!("{other:?}"),
        }
        let out = dir.path().join("out.txt");
        std::fs::write(&out, "0.3\n1.2\n").unwrap();
        match load(out.to_str().unwrap()) {
            Err(Error::OutOfRange { index, value }) => {
                assert_eq!(index, 1);
                assert_eq!(value, 1.2);
            }
            other => panic!("{other:?}"),
        }
        let empty = dir.path().join("empty.csv");
        std::fs::write(&empty, "y\n").unwrap();
        assert!(matches!(load(empty.to_str().unwrap()), Err(Error::EmptyDataset)));
        assert!(matches!(load("no-such-file-or-dataset"), Err(Error::UnknownDataset(_))));
    }

    #[test]
    fn pseudo_defaults() {
        let d = generate_pseudo(99, PseudoLayout::default()).unwrap();
        assert_eq!(d.values.len(), 300);
        let est = mle(&partition(&d.values).unwrap());
        assert_eq!(est.alpha, 80.0 / 300.0);
        assert_eq!(est.p, 50.0 / 80.0);
        assert!((est.alpha - 0.2667).abs() < 5e-5);
        let b = generate_pseudo(99, PseudoLayout::APPENDIX_B).unwrap();
        assert_eq!(b.values.len(), 270);
    }

    #[test]
    fn pseudo_interior_only_and_deterministic() {
        let layout = PseudoLayout {
            zeros: 0,
            ones: 0,
            interior: 50,
            theta: 2.0,
        };
        let a = generate_pseudo(5, layout).unwrap();
        assert!(a.values.iter().all(|&v| v > 0.0 && v < 1.0));
        assert_eq!(a, generate_pseudo(5, layout).unwrap());
        assert_ne!(a.values, generate_pseudo(6, layout).unwrap().values);
    }

    #[test]
    fn pseudo_theta_consistency() {
        let layout = PseudoLayout {
            zeros: 0,
            ones: 0,
            interior: 100_000,
            theta: 1.444589,
        };
        let d = generate_pseudo(2, layout).unwrap();
        let theta = mle(&partition(&d.values).unwrap()).theta.unwrap();
        assert!((theta - 1.4446).abs() < 0.01, "{theta}");
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn csv_round_trip_is_bit_exact(values in prop::collection::vec(0.0f64..=1.0, 1..50)) {
                let d = Dataset::new("rt", values, Source::Generated).unwrap();
                let mut buf = Vec::new();
                d.write_csv(&mut buf).unwrap();
                let back = parse_values(std::str::from_utf8(&buf).unwrap()).unwrap();
                prop_assert_eq!(back.len(), d.values.len());
                for (a, b) in back.iter().zip(&d.values) {
                    prop_assert_eq!(a.to_bits(), b.to_bits());
                }
            }
        }
    }
}
