//! Line-oriented sequence files.
//!
//! One sequence per line, digits `0`..`9` for `q <= 10`. For `q = 4` the
//! letters `A C G T` (either case) are accepted as aliases of `0 1 2 3`.
//! Blank lines and lines starting with `#` are skipped. Whitespace inside
//! a line is ignored.

use crate::error::{Error, Result};
use crate::sequence::{check_alphabet, QarySequence};

const ACGT: [char; 4] = ['A', 'C', 'G', 'T'];

fn letter_value(c: char, q: u8) -> Option<u8> {
    if let Some(d) = c.to_digit(10) {
        return (d < q as u32).then_some(d as u8);
    }
    if q == 4 {
        return ACGT
            .iter()
            .position(|&l| l == c.to_ascii_uppercase())
            .map(|p| p as u8);
    }
    None
}

/// Parses a sequence file. All sequences must share one length.
pub fn parse_sequences(text: &str, q: u8) -> Result<Vec<QarySequence>> {
    check_alphabet(q)?;
    if q > 10 {
        return Err(Error::unsupported(format!(
            "text format supports q <= 10, got {q}"
        )));
    }
    let mut out: Vec<QarySequence> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut symbols = Vec::with_capacity(line.len());
        for c in line.chars().filter(|c| !c.is_whitespace()) {
            match letter_value(c, q) {
                Some(v) => symbols.push(v),
                None => {
                    return Err(Error::Parse {
                        line: line_no,
                        message: format!("character {c:?} is not a letter of the {q}-ary alphabet"),
                    })
                }
            }
        }
        if let Some(first) = out.first() {
            if first.len() != symbols.len() {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!(
                        "sequence has length {}, expected {}",
                        symbols.len(),
                        first.len()
                    ),
                });
            }
        }
        out.push(QarySequence::new(q, symbols).map_err(|e| Error::Parse {
            line: line_no,
            message: e.to_string(),
        })?);
    }
    Ok(out)
}

/// Renders one sequence; `acgt` selects letters for `q = 4`.
pub fn render(x: &QarySequence, acgt: bool) -> String {
    let letters = acgt && x.q() == 4;
    x.symbols()
        .iter()
        .map(|&s| {
            if letters {
                ACGT[s as usize]
            } else {
                char::from_digit(s as u32, 36).unwrap_or('?')
            }
        })
        .collect()
}

/// Renders a list of sequences, one per line, with a trailing newline.
pub fn render_all<'a>(xs: impl IntoIterator<Item = &'a QarySequence>, acgt: bool) -> String {
    let mut out = String::new();
    for x in xs {
        out.push_str(&render(x, acgt));
        out.push('\n');
    }
    out
}
