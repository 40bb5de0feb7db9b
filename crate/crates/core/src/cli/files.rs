use crate::error::{Error, Result};
use crate::tridiag::{parse_reals, write_reals};

/// Reads a series file: header `n m`, then `m` lines of `n` reals.
pub fn parse_series(text: &str) -> Result<Vec<Vec<f64>>> {
    let mut lines = text.lines().enumerate().map(|(k, l)| (k + 1, l.trim())).filter(|(_, l)| !l.is_empty());
    let (hl, header) = lines.next().ok_or(Error::Parse { line: 1, message: "missing `n m` header".into() })?;
    let dims: Vec<usize> = header
        .split_whitespace()
        .map(|t| t.parse::<usize>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| Error::Parse { line: hl, message: format!("expected `n m`, found {header:?}") })?;
    let [n, m] = dims[..] else {
        return Err(Error::Parse { line: hl, message: format!("expected `n m`, found {header:?}") });
    };
    let mut series = Vec::with_capacity(m);
    let mut last = hl;
    for (line, body) in lines {
        if series.len() == m {
            return Err(Error::Parse { line, message: format!("more than {m} right-hand sides") });
        }
        let row = parse_reals(body, line)?;
        if row.len() != n {
            return Err(Error::Parse { line, message: format!("expected {n} values, found {}", row.len()) });
        }
        series.push(row);
        last = line;
    }
    if series.len() != m {
        return Err(Error::Parse {
            line: last + 1,
            message: format!("expected {m} right-hand sides, found {}", series.len()),
        });
    }
    Ok(series)
}

/// Writes the series format read by [`parse_series`].
pub fn write_series(series: &[Vec<f64>]) -> String {
    let n = series.first().map_or(0, Vec::len);
    let mut out = format!("{n} {}\n", series.len());
    for row in series {
        write_reals(&mut out, row);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let s = vec![vec![1.0, 2.5, -3.0], vec![0.0, 1e-300, 7.0]];
        assert_eq!(parse_series(&write_series(&s)).unwrap(), s);
    }

    #[test]
    fn errors_carry_line_numbers() {
        assert!(matches!(parse_series("3 1\n1 2\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_series("3 2\n1 2 3\n"), Err(Error::Parse { line: 3, .. })));
        assert!(matches!(parse_series("3\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_series("1 1\n\n1\n2\n"), Err(Error::Parse { line: 4, .. })));
    }
}
