//! Plain-text tensor files.
//!
//! ```text
//! # comments and blank lines are ignored
//! order 3
//! dim 3
//! format coo          # or: dense
//! entries
//! 1 3 3 1.0           # coo: 1-based indices then the value
//! ```
//!
//! A dense payload is `dim^order` whitespace-separated values in lexicographic
//! order (first index slowest), spread over any number of lines. Unlisted coo
//! entries are zero; repeated coo indices are rejected. Values are written
//! with 17 significant digits so that a write/read cycle is exact.

use std::collections::HashSet;
use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::tensor::Tensor;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TensorFormat {
    Dense,
    Coo,
}

impl FromStr for TensorFormat {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "dense" => Ok(TensorFormat::Dense),
            "coo" => Ok(TensorFormat::Coo),
            other => Err(format!("unknown format '{other}' (expected dense or coo)")),
        }
    }
}

impl std::fmt::Display for TensorFormat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            TensorFormat::Dense => "dense",
            TensorFormat::Coo => "coo",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TensorFile {
    pub format: TensorFormat,
    pub tensor: Tensor,
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

fn strip_comment(line: &str) -> &str {
    line.split('#').next().unwrap_or("").trim()
}

impl TensorFile {
    pub fn new(format: TensorFormat, tensor: Tensor) -> Self {
        TensorFile { format, tensor }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut order: Option<usize> = None;
        let mut dim: Option<usize> = None;
        let mut format: Option<TensorFormat> = None;
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, strip_comment(l)));
        let mut last_line = 0;

        // Header.
        let mut found_entries = false;
        for (lineno, line) in lines.by_ref() {
            last_line = lineno;
            if line.is_empty() {
                continue;
            }
            let mut fields = line.split_whitespace();
            let key = fields.next().unwrap_or_default();
            if key == "entries" {
                found_entries = true;
                break;
            }
            let value = fields
                .next()
                .ok_or_else(|| parse_err(lineno, format!("field '{key}' has no value")))?;
            if fields.next().is_some() {
                return Err(parse_err(lineno, format!("field '{key}' has trailing tokens")));
            }
            let dup = || parse_err(lineno, format!("field '{key}' given twice"));
            match key {
                "order" => {
                    let v = value
                        .parse()
                        .map_err(|_| parse_err(lineno, format!("order: '{value}' is not an integer")))?;
                    if order.replace(v).is_some() {
                        return Err(dup());
                    }
                }
                "dim" => {
                    let v = value
                        .parse()
                        .map_err(|_| parse_err(lineno, format!("dim: '{value}' is not an integer")))?;
                    if dim.replace(v).is_some() {
                        return Err(dup());
                    }
                }
                "format" => {
                    let v = value.parse().map_err(|e: String| parse_err(lineno, e))?;
                    if format.replace(v).is_some() {
                        return Err(dup());
                    }
                }
                other => return Err(parse_err(lineno, format!("unknown field '{other}'"))),
            }
        }
        if !found_entries {
            return Err(parse_err(last_line.max(1), "missing 'entries' section"));
        }
        let order = order.ok_or_else(|| parse_err(last_line, "missing field 'order'"))?;
        let dim = dim.ok_or_else(|| parse_err(last_line, "missing field 'dim'"))?;
        let format = format.ok_or_else(|| parse_err(last_line, "missing field 'format'"))?;
        let header_line = last_line;
        let mut tensor =
            Tensor::zeros(order, dim).map_err(|e| parse_err(header_line, e.to_string()))?;
        let len = tensor.entries().len();

        match format {
            TensorFormat::Dense => {
                let mut values = Vec::with_capacity(len);
                for (lineno, line) in lines {
                    last_line = lineno;
                    for tok in line.split_whitespace() {
                        let v: f64 = tok
                            .parse()
                            .map_err(|_| parse_err(lineno, format!("entry '{tok}' is not a number")))?;
                        if !v.is_finite() {
                            return Err(parse_err(lineno, format!("entry '{tok}' is not finite")));
                        }
                        values.push(v);
                        if values.len() > len {
                            return Err(parse_err(
                                lineno,
                                format!("more than {len} dense entries"),
                            ));
                        }
                    }
                }
                if values.len() != len {
                    return Err(parse_err(
                        last_line,
                        format!("expected {len} dense entries, found {}", values.len()),
                    ));
                }
                tensor = Tensor::new(order, dim, values)?;
            }
            TensorFormat::Coo => {
                let mut seen = HashSet::new();
                let mut idx = vec![0usize; order];
                for (lineno, line) in lines {
                    if line.is_empty() {
                        continue;
                    }
                    let toks: Vec<&str> = line.split_whitespace().collect();
                    if toks.len() != order + 1 {
                        return Err(parse_err(
                            lineno,
                            format!("expected {} indices and a value, found {} fields", order, toks.len()),
                        ));
                    }
                    for (k, tok) in toks[..order].iter().enumerate() {
                        let i: usize = tok.parse().map_err(|_| {
                            parse_err(lineno, format!("index {}: '{tok}' is not an integer", k + 1))
                        })?;
                        if i < 1 || i > dim {
                            return Err(parse_err(
                                lineno,
                                format!("index {}: {i} outside [1, {dim}]", k + 1),
                            ));
                        }
                        idx[k] = i - 1;
                    }
                    let tok = toks[order];
                    let v: f64 = tok
                        .parse()
                        .map_err(|_| parse_err(lineno, format!("value '{tok}' is not a number")))?;
                    if !v.is_finite() {
                        return Err(parse_err(lineno, format!("value '{tok}' is not finite")));
                    }
                    let pos = tensor.position(&idx);
                    if !seen.insert(pos) {
                        return Err(parse_err(lineno, format!("duplicate index {:?}", toks[..order].join(" "))));
                    }
                    tensor.set(&idx, v)?;
                }
            }
        }
        Ok(TensorFile { format, tensor })
    }

    pub fn render(&self) -> String {
        let t = &self.tensor;
        let n = t.dim();
        let mut out = String::new();
        let _ = writeln!(out, "order {}", t.order());
        let _ = writeln!(out, "dim {}", n);
        let _ = writeln!(out, "format {}", self.format);
        out.push_str("entries\n");
        match self.format {
            TensorFormat::Dense => {
                for row in t.entries().chunks(n) {
                    let line: Vec<String> = row.iter().map(|v| format!("{v:.16e}")).collect();
                    out.push_str(&line.join(" "));
                    out.push('\n');
                }
            }
            TensorFormat::Coo => {
                for (pos, &v) in t.entries().iter().enumerate() {
                    if v == 0.0 {
                        continue;
                    }
                    for i in t.multi_index(pos) {
                        let _ = write!(out, "{} ", i + 1);
                    }
                    let _ = writeln!(out, "{v:.16e}");
                }
            }
        }
        out
    }

    pub fn read(path: impl AsRef<Path>) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::parse(&text)
    }

    pub fn write(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.render())?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_coo_with_comments() {
        let text = "# example\norder 2\ndim 2\nformat coo\nentries\n1 2 3.5 # a12\n\n2 1 -1e-3\n";
        let f = TensorFile::parse(text).unwrap();
        assert_eq!(f.format, TensorFormat::Coo);
        assert_eq!(f.tensor.entries(), &[0.0, 3.5, -1e-3, 0.0]);
    }

    #[test]
    fn parses_dense_over_lines() {
        let text = "order 3\ndim 2\nformat dense\nentries\n1 2 3\n4 5\n6 7 8\n";
        let f = TensorFile::parse(text).unwrap();
        assert_eq!(f.tensor.entries(), &[1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0]);
    }

    fn line_of(err: Error) -> usize {
        match err {
            Error::Parse { line, .. } => line,
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn malformed_files_report_line() {
        let cases = [
            ("order 2\ndim 2\nformat coo\nentries\n1 3 1.0\n", 5),
            ("order 2\ndim 2\nformat coo\nentries\n1 1 1.0\n1 1 2.0\n", 6),
            ("order 2\ndim 2\nformat dense\nentries\n1 2 3\n", 5),
            ("order 2\ndim 2\nformat dense\nentries\n1 2 x 4\n", 5),
            ("order 2\nsize 2\n", 2),
            ("order two\n", 1),
            ("order 2\ndim 2\nformat csv\n", 3),
            ("order 2\norder 3\n", 2),
            ("order 2\ndim 2\nformat coo\nentries\n1 1\n", 5),
            ("order 2\ndim 2\nformat dense\nentries\n1 2 3 inf\n", 5),
        ];
        for (text, line) in cases {
            let err = TensorFile::parse(text).unwrap_err();
            assert_eq!(line_of(err), line, "{text:?}");
        }
        assert!(TensorFile::parse("order 2\ndim 2\nformat dense\n").is_err());
        assert!(TensorFile::parse("dim 2\nformat dense\nentries\n1 2 3 4\n").is_err());
    }

    proptest! {
        #[test]
        fn write_read_is_exact(
            dense in any::<bool>(),
            order in 2usize..5,
            dim in 1usize..4,
            seed in any::<u64>(),
        ) {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let t = Tensor::from_fn(order, dim, |_| {
                if rng.gen_bool(0.3) { 0.0 } else { rng.gen_range(-1.0..1.0) * 10f64.powi(rng.gen_range(-300..300)) }
            }).unwrap();
            let format = if dense { TensorFormat::Dense } else { TensorFormat::Coo };
            let file = TensorFile::new(format, t);
            let back = TensorFile::parse(&file.render()).unwrap();
            prop_assert_eq!(back, file);
        }
    }
}
