//! Grid text format: a line with the order `n`, then `n` lines of `n`
//! characters from `{B, R}`. The final newline is optional.

use std::fmt;
use std::str::FromStr;

use super::{BicoloredGrid, Color, GridError};

fn parse_error(line: usize, column: usize, message: impl Into<String>) -> GridError {
    GridError::Parse {
        line,
        column,
        message: message.into(),
    }
}

impl FromStr for BicoloredGrid {
    type Err = GridError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let mut lines = text.lines().map(|l| l.strip_suffix('\r').unwrap_or(l));
        let header = lines
            .next()
            .ok_or_else(|| parse_error(1, 1, "empty input, expected the order n"))?;
        let n: usize = header
            .trim()
            .parse()
            .map_err(|_| parse_error(1, 1, format!("expected the order n, found {header:?}")))?;
        super::check_order(n).map_err(|e| parse_error(1, 1, e.to_string()))?;

        let mut colors = Vec::with_capacity(n * n);
        for r in 0..n {
            let line_no = r + 2;
            let line = lines
                .next()
                .ok_or_else(|| parse_error(line_no, 1, format!("expected {n} rows, found {r}")))?;
            let mut count = 0;
            for (k, ch) in line.chars().enumerate() {
                let color = match ch {
                    'B' => Color::Blue,
                    'R' => Color::Red,
                    other => {
                        return Err(parse_error(
                            line_no,
                            k + 1,
                            format!("unexpected character {other:?}, expected 'B' or 'R'"),
                        ))
                    }
                };
                if count == n {
                    return Err(parse_error(line_no, k + 1, format!("row longer than {n}")));
                }
                colors.push(color);
                count += 1;
            }
            if count < n {
                return Err(parse_error(
                    line_no,
                    count + 1,
                    format!("row has {count} cells, expected {n}"),
                ));
            }
        }
        for (k, extra) in lines.enumerate() {
            if !extra.trim().is_empty() {
                return Err(parse_error(
                    n + 2 + k,
                    1,
                    "unexpected content after the last row",
                ));
            }
        }
        BicoloredGrid::new(n, colors)
    }
}

impl fmt::Display for BicoloredGrid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.n)?;
        for r in 0..self.n {
            let row: String = (0..self.n).map(|c| self.get(r, c).to_char()).collect();
            writeln!(f, "{row}")?;
        }
        Ok(())
    }
}
