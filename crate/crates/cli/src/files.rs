//! Line-oriented text formats for states, certificates, and coefficient
//! tables. Every number is written with 17 significant digits so files
//! round-trip doubles losslessly, and identical inputs always serialize to
//! identical bytes.

use std::fmt::Write as _;
use std::path::Path;

use qsep_core::{
    BasisKind, BitIndex, CoefficientTable, Complex64, ComplexMatrix, DensityMatrix, ProductTerm,
    SeparableDecomposition,
};

use crate::CliError;

pub const STATE_HEADER: &str = "qsep/1 state";
pub const CERTIFICATE_HEADER: &str = "qsep/1 certificate";
pub const TABLE_HEADER: &str = "qsep/1 table";

pub fn fmt_f64(x: f64) -> String {
    // Collapse -0.0 so equal values never print two ways.
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{x:.16e}")
}

fn fmt_complex(z: Complex64) -> String {
    format!("[{}, {}]", fmt_f64(z.re), fmt_f64(z.im))
}

fn parse_error(path: &Path, line: usize, msg: impl Into<String>) -> CliError {
    CliError::Parse {
        path: path.display().to_string(),
        line,
        msg: msg.into(),
    }
}

pub fn read_to_string(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        context: format!("reading {}", path.display()),
        source,
    })
}

pub fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents).map_err(|source| CliError::Io {
        context: format!("writing {}", path.display()),
        source,
    })
}

/// Split a line into bracketed groups; each group body has its brackets
/// stripped. Errors name the 1-based group that went wrong.
fn bracket_groups<'a>(
    path: &Path,
    line_no: usize,
    line: &'a str,
) -> Result<Vec<&'a str>, CliError> {
    let mut groups = Vec::new();
    let mut rest = line;
    loop {
        match rest.find('[') {
            None => {
                if !rest.trim().is_empty() && groups.is_empty() {
                    return Err(parse_error(path, line_no, "expected a [..] group"));
                }
                if !rest.trim().is_empty() {
                    return Err(parse_error(
                        path,
                        line_no,
                        format!("unexpected trailing text {:?}", rest.trim()),
                    ));
                }
                return Ok(groups);
            }
            Some(start) => {
                let after = &rest[start + 1..];
                let end = after.find(']').ok_or_else(|| {
                    parse_error(path, line_no, "unterminated [..] group")
                })?;
                groups.push(&after[..end]);
                rest = &after[end + 1..];
            }
        }
    }
}

fn parse_floats(
    path: &Path,
    line_no: usize,
    entry: usize,
    body: &str,
    want: usize,
) -> Result<Vec<f64>, CliError> {
    let parts: Vec<&str> = body.split(',').collect();
    if parts.len() != want {
        return Err(parse_error(
            path,
            line_no,
            format!("entry {entry}: expected {want} comma-separated values"),
        ));
    }
    parts
        .iter()
        .map(|p| {
            p.trim().parse::<f64>().map_err(|_| {
                parse_error(
                    path,
                    line_no,
                    format!("entry {entry}: invalid number {:?}", p.trim()),
                )
            })
        })
        .collect()
}

/// Lines with content, paired with their 1-based position in the file.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty())
}

fn expect_header<'a>(
    path: &Path,
    lines: &mut impl Iterator<Item = (usize, &'a str)>,
    want: &str,
) -> Result<(), CliError> {
    match lines.next() {
        Some((_, l)) if l == want => Ok(()),
        Some((no, l)) => Err(parse_error(
            path,
            no,
            format!("expected header {want:?}, found {l:?}"),
        )),
        None => Err(parse_error(path, 1, "empty file")),
    }
}

fn expect_keyed_usize<'a>(
    path: &Path,
    lines: &mut impl Iterator<Item = (usize, &'a str)>,
    key: &str,
) -> Result<usize, CliError> {
    match lines.next() {
        Some((no, l)) => {
            let value = l
                .strip_prefix(key)
                .and_then(|r| r.trim_start().strip_prefix('='))
                .map(str::trim)
                .ok_or_else(|| parse_error(path, no, format!("expected \"{key} = <int>\"")))?;
            value
                .parse::<usize>()
                .map_err(|_| parse_error(path, no, format!("invalid integer {value:?}")))
        }
        None => Err(parse_error(path, 1, format!("missing \"{key} = <int>\" line"))),
    }
}

pub fn read_state(path: &Path) -> Result<DensityMatrix, CliError> {
    let text = read_to_string(path)?;
    let mut lines = content_lines(&text);
    expect_header(path, &mut lines, STATE_HEADER)?;
    let n = expect_keyed_usize(path, &mut lines, "n")?;
    if n == 0 || n > qsep_core::MAX_BITS {
        return Err(parse_error(
            path,
            2,
            format!("n must be between 1 and {}", qsep_core::MAX_BITS),
        ));
    }
    let dim = 1usize << n;
    let mut m = ComplexMatrix::zeros(dim);
    for row in 0..dim {
        let (no, line) = lines
            .next()
            .ok_or_else(|| parse_error(path, 0, format!("missing matrix row {row}")))?;
        let groups = bracket_groups(path, no, line)?;
        if groups.len() != dim {
            return Err(parse_error(
                path,
                no,
                format!("row {row}: expected {dim} entries, found {}", groups.len()),
            ));
        }
        for (col, body) in groups.iter().enumerate() {
            let v = parse_floats(path, no, col + 1, body, 2)?;
            m.set(row, col, Complex64::new(v[0], v[1]));
        }
    }
    if let Some((no, l)) = lines.next() {
        return Err(parse_error(path, no, format!("unexpected extra line {l:?}")));
    }
    DensityMatrix::new(m).map_err(CliError::Core)
}

pub fn render_state(rho: &DensityMatrix) -> String {
    let dim = rho.dim();
    let mut out = String::new();
    let _ = writeln!(out, "{STATE_HEADER}");
    let _ = writeln!(out, "n = {}", rho.qubits());
    for r in 0..dim {
        let row: Vec<String> = (0..dim).map(|c| fmt_complex(rho.entry(r, c))).collect();
        let _ = writeln!(out, "{}", row.join(" "));
    }
    out
}

pub fn read_certificate(path: &Path) -> Result<SeparableDecomposition, CliError> {
    let text = read_to_string(path)?;
    let mut lines = content_lines(&text);
    expect_header(path, &mut lines, CERTIFICATE_HEADER)?;
    let n = expect_keyed_usize(path, &mut lines, "n")?;
    if n == 0 || n > qsep_core::MAX_BITS {
        return Err(parse_error(
            path,
            2,
            format!("n must be between 1 and {}", qsep_core::MAX_BITS),
        ));
    }
    let count = expect_keyed_usize(path, &mut lines, "terms")?;
    let mut terms = Vec::with_capacity(count);
    for t in 0..count {
        let (no, line) = lines
            .next()
            .ok_or_else(|| parse_error(path, 0, format!("missing term {t}")))?;
        let rest = line
            .strip_prefix("p")
            .and_then(|r| r.trim_start().strip_prefix('='))
            .ok_or_else(|| parse_error(path, no, "expected \"p = <weight> bloch = ...\""))?;
        let (weight_part, bloch_part) = rest
            .split_once("bloch")
            .ok_or_else(|| parse_error(path, no, "missing \"bloch =\" section"))?;
        let weight = weight_part.trim().parse::<f64>().map_err(|_| {
            parse_error(path, no, format!("invalid weight {:?}", weight_part.trim()))
        })?;
        let bloch_body = bloch_part
            .trim_start()
            .strip_prefix('=')
            .ok_or_else(|| parse_error(path, no, "missing \"=\" after \"bloch\""))?;
        let groups = bracket_groups(path, no, bloch_body)?;
        if groups.len() != n {
            return Err(parse_error(
                path,
                no,
                format!("term {t}: expected {n} Bloch triples, found {}", groups.len()),
            ));
        }
        let mut bloch = Vec::with_capacity(n);
        for (i, body) in groups.iter().enumerate() {
            let v = parse_floats(path, no, i + 1, body, 3)?;
            bloch.push([v[0], v[1], v[2]]);
        }
        terms.push(ProductTerm { weight, bloch });
    }
    if let Some((no, l)) = lines.next() {
        return Err(parse_error(path, no, format!("unexpected extra line {l:?}")));
    }
    Ok(SeparableDecomposition { n, terms })
}

pub fn render_certificate(dec: &SeparableDecomposition) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{CERTIFICATE_HEADER}");
    let _ = writeln!(out, "n = {}", dec.n);
    let _ = writeln!(out, "terms = {}", dec.terms.len());
    for term in &dec.terms {
        let triples: Vec<String> = term
            .bloch
            .iter()
            .map(|m| {
                format!(
                    "[{}, {}, {}]",
                    fmt_f64(m[0]),
                    fmt_f64(m[1]),
                    fmt_f64(m[2])
                )
            })
            .collect();
        let _ = writeln!(
            out,
            "p = {} bloch = {}",
            fmt_f64(term.weight),
            triples.join(" ")
        );
    }
    out
}

pub fn render_table(table: &CoefficientTable) -> String {
    let n = table.n();
    let dim = table.dim();
    let basis = match table.basis() {
        BasisKind::Adjusted => "adjusted",
        BasisKind::Spin => "spin",
    };
    let mut out = String::new();
    let _ = writeln!(out, "{TABLE_HEADER}");
    let _ = writeln!(out, "basis = {basis}");
    let _ = writeln!(out, "n = {n}");
    for j in 0..dim {
        let jb = BitIndex::new(n, j).expect("in range");
        for k in 0..dim {
            let kb = BitIndex::new(n, k).expect("in range");
            let _ = writeln!(out, "j={jb} k={kb} {}", fmt_complex(table.get(j, k)));
        }
    }
    out
}
