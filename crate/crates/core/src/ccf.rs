//! The `ccf 1` text format.
//!
//! ```text
//! ccf 1
//! n=<int> r=<int>
//! <n lines of n space-separated color ids>
//! ```
//!
//! [`write`] emits exactly this layout with a trailing newline. [`parse`]
//! accepts it with `\r\n` line endings and trailing blank lines tolerated.

use thiserror::Error;

use crate::{validate_configuration_with_cap, Color, Configuration, CoreError, DEFAULT_N_CAP};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CcfError {
    #[error("line 1: expected header \"ccf 1\"")]
    BadHeader,
    #[error("line 2: expected \"n=<int> r=<int>\"")]
    BadDimensions,
    #[error("line {line}: {msg}")]
    BadRow { line: usize, msg: String },
    #[error("expected {expected} matrix rows, found {found}")]
    RowCount { expected: usize, found: usize },
    #[error("header declares rank {declared} but the matrix has rank {actual}")]
    RankMismatch { declared: usize, actual: usize },
    #[error(transparent)]
    Invalid(#[from] CoreError),
}

pub fn parse(text: &str) -> Result<Configuration, CcfError> {
    parse_with_cap(text, DEFAULT_N_CAP)
}

pub fn parse_with_cap(text: &str, cap: usize) -> Result<Configuration, CcfError> {
    let mut lines = text.lines().map(|l| l.strip_suffix('\r').unwrap_or(l));
    if lines.next().map(str::trim_end) != Some("ccf 1") {
        return Err(CcfError::BadHeader);
    }
    let (n, r) = lines.next().and_then(parse_dimensions).ok_or(CcfError::BadDimensions)?;
    if n == 0 {
        return Err(CoreError::Empty.into());
    }
    if n > cap {
        return Err(CoreError::TooLarge { n, cap }.into());
    }
    let mut rows: Vec<Vec<Color>> = Vec::with_capacity(n);
    for (idx, line) in lines.enumerate() {
        let lineno = idx + 3;
        if rows.len() == n {
            if line.trim().is_empty() {
                continue;
            }
            return Err(CcfError::RowCount { expected: n, found: n + 1 });
        }
        let row = line
            .split(' ')
            .filter(|s| !s.is_empty())
            .map(|tok| {
                tok.parse::<Color>()
                    .map_err(|_| CcfError::BadRow { line: lineno, msg: format!("bad color id {tok:?}") })
            })
            .collect::<Result<Vec<_>, _>>()?;
        if row.len() != n {
            return Err(CcfError::BadRow {
                line: lineno,
                msg: format!("expected {n} entries, found {}", row.len()),
            });
        }
        rows.push(row);
    }
    if rows.len() != n {
        return Err(CcfError::RowCount { expected: n, found: rows.len() });
    }
    let cfg = validate_configuration_with_cap(&rows, cap)?;
    if cfg.rank() != r {
        return Err(CcfError::RankMismatch { declared: r, actual: cfg.rank() });
    }
    Ok(cfg)
}

fn parse_dimensions(line: &str) -> Option<(usize, usize)> {
    let mut parts = line.split_whitespace();
    let n = parts.next()?.strip_prefix("n=")?.parse().ok()?;
    let r = parts.next()?.strip_prefix("r=")?.parse().ok()?;
    parts.next().is_none().then_some((n, r))
}

pub fn write(cfg: &Configuration) -> String {
    let n = cfg.n();
    let mut out = format!("ccf 1\nn={} r={}\n", n, cfg.rank());
    for u in 0..n {
        let row: Vec<String> = cfg.row(u).iter().map(|c| c.to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const TRIANGLE: &str = "ccf 1\nn=3 r=2\n0 1 1\n1 0 1\n1 1 0\n";

    #[test]
    fn round_trip() {
        let cfg = parse(TRIANGLE).unwrap();
        assert_eq!(cfg.rank(), 2);
        assert_eq!(write(&cfg), TRIANGLE);
    }

    #[test]
    fn crlf_accepted() {
        let text = TRIANGLE.replace('\n', "\r\n");
        assert_eq!(parse(&text).unwrap(), parse(TRIANGLE).unwrap());
    }

    #[test]
    fn rejects() {
        assert_eq!(parse("ccf 2\n"), Err(CcfError::BadHeader));
        assert_eq!(parse("ccf 1\nn=3\n"), Err(CcfError::BadDimensions));
        assert_eq!(parse("ccf 1\nn=3 r=3\n0 1 1\n1 0 1\n1 1 0\n"), Err(CcfError::RankMismatch { declared: 3, actual: 2 }));
        assert!(matches!(parse("ccf 1\nn=2 r=2\n0 1\n"), Err(CcfError::RowCount { expected: 2, found: 1 })));
        assert!(matches!(parse("ccf 1\nn=2 r=2\n0 x\n1 0\n"), Err(CcfError::BadRow { line: 3, .. })));
        assert!(matches!(
            parse("ccf 1\nn=3 r=3\n0 1 1\n2 0 1\n1 1 0\n"),
            Err(CcfError::Invalid(CoreError::PairingUndefined { .. }))
        ));
        assert!(matches!(parse("ccf 1\nn=99999 r=1\n"), Err(CcfError::Invalid(CoreError::TooLarge { .. }))));
    }
}
