//! Text formats for Hamiltonians and states.
//!
//! ```text
//! hamx 1 dim=<n> unit=<tag>          pauli 1 qubits=<k> unit=<tag>     state 1 dim=<n>
//! <row> <col> <re> [<im>]            <re> [<im>] <P><q> ...            <index> <re> [<im>]
//! ```
//!
//! `#` starts a comment. HAMX entries must have `row <= col`; the lower
//! triangle is implied. Pauli qubit `q` is bit `q` of the basis index.

use std::collections::HashMap;

use nalgebra::DVector;
use num_complex::Complex64;

use super::hamiltonian::{Hamiltonian, StateVector};
use crate::error::{Error, Result};
use crate::warning::Warning;

pub const DEFAULT_ENERGY_UNIT: &str = "hartree";

/// States whose norm deviates from 1 by more than this are flagged on load.
pub const STATE_NORM_WARN_TOL: f64 = 1e-6;

struct Header<'a> {
    line: usize,
    kind: &'a str,
    fields: HashMap<&'a str, &'a str>,
}

impl Header<'_> {
    fn get_usize(&self, key: &str) -> Result<usize> {
        let raw = self
            .fields
            .get(key)
            .ok_or_else(|| Error::parse(self.line, format!("{} header is missing `{key}=`", self.kind)))?;
        raw.parse()
            .map_err(|_| Error::parse(self.line, format!("`{key}={raw}` is not a non-negative integer")))
    }

    fn unit(&self) -> String {
        self.fields
            .get("unit")
            .map_or(DEFAULT_ENERGY_UNIT, |u| *u)
            .to_string()
    }
}

/// Non-empty lines with comments removed, numbered from 1.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("").trim();
        (!l.is_empty()).then_some((i + 1, l))
    })
}

fn parse_header(line: usize, text: &str) -> Result<Header<'_>> {
    let mut tokens = text.split_whitespace();
    let kind = tokens.next().unwrap_or_default();
    match tokens.next() {
        Some("1") => {}
        Some(v) => return Err(Error::parse(line, format!("unsupported {kind} version `{v}`"))),
        None => return Err(Error::parse(line, format!("{kind} header is missing a version"))),
    }
    let mut fields = HashMap::new();
    for tok in tokens {
        let (k, v) = tok
            .split_once('=')
            .ok_or_else(|| Error::parse(line, format!("expected key=value in header, found `{tok}`")))?;
        fields.insert(k, v);
    }
    Ok(Header { line, kind, fields })
}

fn parse_f64(line: usize, tok: &str, what: &str) -> Result<f64> {
    let v: f64 = tok
        .parse()
        .map_err(|_| Error::parse(line, format!("invalid {what} `{tok}`")))?;
    if !v.is_finite() {
        return Err(Error::parse(line, format!("{what} `{tok}` is not finite")));
    }
    Ok(v)
}

fn parse_index(line: usize, tok: &str, what: &str) -> Result<usize> {
    tok.parse()
        .map_err(|_| Error::parse(line, format!("invalid {what} `{tok}`")))
}

/// Loads a HAMX or PAULI document, dispatching on the header keyword.
pub fn parse_hamiltonian(text: &str, max_dim: usize) -> Result<Hamiltonian> {
    let mut lines = content_lines(text);
    let (line, first) = lines
        .next()
        .ok_or_else(|| Error::parse(1, "empty Hamiltonian file"))?;
    let header = parse_header(line, first)?;
    match header.kind {
        "hamx" => parse_hamx_body(&header, lines, max_dim),
        "pauli" => parse_pauli_body(&header, lines, max_dim),
        other => Err(Error::parse(
            line,
            format!("expected `hamx` or `pauli` header, found `{other}`"),
        )),
    }
}

fn parse_hamx_body<'a>(
    header: &Header<'_>,
    lines: impl Iterator<Item = (usize, &'a str)>,
    max_dim: usize,
) -> Result<Hamiltonian> {
    let dim = header.get_usize("dim")?;
    if dim == 0 {
        return Err(Error::parse(header.line, "dim must be positive"));
    }
    if dim > max_dim {
        return Err(Error::Resource { dim, limit: max_dim });
    }
    let mut entries = Vec::new();
    let mut lines_of = Vec::new();
    let mut seen: HashMap<(usize, usize), usize> = HashMap::new();
    for (line, text) in lines {
        let toks: Vec<&str> = text.split_whitespace().collect();
        if !(3..=4).contains(&toks.len()) {
            return Err(Error::parse(line, "expected `<row> <col> <re> [<im>]`"));
        }
        let r = parse_index(line, toks[0], "row")?;
        let c = parse_index(line, toks[1], "column")?;
        let re = parse_f64(line, toks[2], "real part")?;
        let im = match toks.get(3) {
            Some(t) => parse_f64(line, t, "imaginary part")?,
            None => 0.0,
        };
        if let Some(prev) = seen.insert((r, c), line) {
            return Err(Error::parse(
                line,
                format!("duplicate entry ({r}, {c}), first given on line {prev}"),
            ));
        }
        entries.push((r, c, Complex64::new(re, im)));
        lines_of.push(line);
    }
    Hamiltonian::from_entries(dim, entries, header.unit()).map_err(|e| match e {
        // Entry-level errors carry the entry position; map it to the file line.
        Error::AtLine { line, source } => Error::AtLine {
            line: lines_of[line - 1],
            source,
        },
        Error::Parse { line, message } => Error::Parse {
            line: lines_of[line - 1],
            message,
        },
        e => e,
    })
}

/// A tensor product of single-qubit Paulis with a complex coefficient.
#[derive(Debug, Clone, PartialEq)]
pub struct PauliTerm {
    pub coefficient: Complex64,
    /// `(operator, qubit)` with operator one of `X`, `Y`, `Z`.
    pub ops: Vec<(char, usize)>,
}

impl PauliTerm {
    /// Real-coefficient term.
    pub fn new(coefficient: f64, ops: Vec<(char, usize)>) -> Self {
        PauliTerm {
            coefficient: Complex64::new(coefficient, 0.0),
            ops,
        }
    }
}

fn parse_pauli_term(line: usize, text: &str, qubits: usize) -> Result<PauliTerm> {
    let toks: Vec<&str> = text.split_whitespace().collect();
    let re = parse_f64(line, toks[0], "coefficient")?;
    let mut rest = &toks[1..];
    let mut im = 0.0;
    if let Some(tok) = rest.first() {
        if let Ok(v) = tok.parse::<f64>() {
            if !v.is_finite() {
                return Err(Error::parse(line, format!("coefficient `{tok}` is not finite")));
            }
            im = v;
            rest = &rest[1..];
        }
    }
    if rest.is_empty() {
        return Err(Error::parse(
            line,
            "term has no Pauli operators (use `I` for identity)",
        ));
    }
    let mut ops = Vec::new();
    let mut used = vec![false; qubits];
    for &tok in rest {
        if tok == "I" {
            continue;
        }
        let mut chars = tok.chars();
        let op = chars.next().unwrap_or(' ');
        if !matches!(op, 'I' | 'X' | 'Y' | 'Z') {
            return Err(Error::parse(line, format!("unknown Pauli operator `{tok}`")));
        }
        let q = parse_index(line, chars.as_str(), "qubit index")?;
        if q >= qubits {
            return Err(Error::AtLine {
                line,
                source: Box::new(Error::IndexOutOfRange {
                    index: q,
                    dim: qubits,
                }),
            });
        }
        if used[q] {
            return Err(Error::parse(line, format!("qubit {q} appears twice in one term")));
        }
        used[q] = true;
        if op != 'I' {
            ops.push((op, q));
        }
    }
    Ok(PauliTerm {
        coefficient: Complex64::new(re, im),
        ops,
    })
}

fn parse_pauli_body<'a>(
    header: &Header<'_>,
    lines: impl Iterator<Item = (usize, &'a str)>,
    max_dim: usize,
) -> Result<Hamiltonian> {
    let qubits = header.get_usize("qubits")?;
    if qubits == 0 {
        return Err(Error::parse(header.line, "qubits must be positive"));
    }
    let dim = 1usize
        .checked_shl(qubits as u32)
        .filter(|&d| qubits < usize::BITS as usize && d <= max_dim)
        .ok_or(Error::Resource {
            dim: if qubits < usize::BITS as usize {
                1 << qubits
            } else {
                usize::MAX
            },
            limit: max_dim,
        })?;
    let mut terms = Vec::new();
    for (line, text) in lines {
        terms.push(parse_pauli_term(line, text, qubits)?);
    }
    pauli_sum(qubits, dim, &terms, header.unit())
}

/// Expands a Pauli sum into a sparse Hamiltonian on `2^qubits` states.
pub fn pauli_to_hamiltonian(qubits: usize, terms: &[PauliTerm], unit: &str) -> Result<Hamiltonian> {
    if qubits == 0 || qubits >= usize::BITS as usize {
        return Err(Error::domain("qubits", qubits as f64, "must be positive"));
    }
    for t in terms {
        if let Some(&(_, q)) = t.ops.iter().find(|(_, q)| *q >= qubits) {
            return Err(Error::IndexOutOfRange {
                index: q,
                dim: qubits,
            });
        }
    }
    pauli_sum(qubits, 1 << qubits, terms, unit.to_string())
}

fn pauli_sum(_qubits: usize, dim: usize, terms: &[PauliTerm], unit: String) -> Result<Hamiltonian> {
    // <b ^ x| P |b> = i^{#Y} (-1)^{popcount(b & z)}
    let mut acc: HashMap<(usize, usize), Complex64> = HashMap::new();
    let mut scale = 0.0f64;
    for term in terms {
        let (mut x, mut z, mut ny) = (0usize, 0usize, 0u32);
        for &(op, q) in &term.ops {
            match op {
                'X' => x |= 1 << q,
                'Z' => z |= 1 << q,
                'Y' => {
                    x |= 1 << q;
                    z |= 1 << q;
                    ny += 1;
                }
                _ => {}
            }
        }
        let phase = match ny % 4 {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        };
        let base = term.coefficient * phase;
        scale = scale.max(term.coefficient.norm());
        for b in 0..dim {
            let v = if (b & z).count_ones() % 2 == 0 {
                base
            } else {
                -base
            };
            *acc.entry((b ^ x, b)).or_default() += v;
        }
    }
    let tol = 1e-12 * scale.max(f64::MIN_POSITIVE);
    let mut entries = Vec::new();
    for (&(r, c), &v) in &acc {
        if r > c {
            continue;
        }
        if r == c {
            if v.im.abs() > tol {
                return Err(Error::Hermiticity(format!(
                    "diagonal entry ({r}, {r}) has imaginary part {}; Pauli coefficients must be real",
                    v.im
                )));
            }
            if v.re.abs() > tol {
                entries.push((r, r, Complex64::new(v.re, 0.0)));
            }
            continue;
        }
        let lower = acc.get(&(c, r)).copied().unwrap_or_default();
        if (lower - v.conj()).norm() > tol {
            return Err(Error::Hermiticity(format!(
                "entries ({r}, {c}) and ({c}, {r}) are not conjugate; Pauli coefficients must be real"
            )));
        }
        if v.norm() > tol {
            entries.push((r, c, v));
        }
    }
    for (&(r, c), &v) in &acc {
        if r > c && v.norm() > tol && !acc.contains_key(&(c, r)) {
            return Err(Error::Hermiticity(format!(
                "entry ({r}, {c}) has no conjugate partner"
            )));
        }
    }
    Hamiltonian::from_entries(dim, entries, unit)
}

/// Loads a STATE document, normalizing it. A warning is returned when the
/// stored norm was off by more than [`STATE_NORM_WARN_TOL`].
pub fn parse_state(text: &str) -> Result<(StateVector, Vec<Warning>)> {
    let mut lines = content_lines(text);
    let (line, first) = lines.next().ok_or_else(|| Error::parse(1, "empty state file"))?;
    let header = parse_header(line, first)?;
    if header.kind != "state" {
        return Err(Error::parse(
            line,
            format!("expected `state` header, found `{}`", header.kind),
        ));
    }
    let dim = header.get_usize("dim")?;
    if dim == 0 {
        return Err(Error::parse(line, "dim must be positive"));
    }
    let mut amps = DVector::<Complex64>::zeros(dim);
    let mut seen = vec![false; dim];
    for (line, text) in lines {
        let toks: Vec<&str> = text.split_whitespace().collect();
        if !(2..=3).contains(&toks.len()) {
            return Err(Error::parse(line, "expected `<index> <re> [<im>]`"));
        }
        let i = parse_index(line, toks[0], "index")?;
        if i >= dim {
            return Err(Error::IndexOutOfRange { index: i, dim }.at_line(line));
        }
        if std::mem::replace(&mut seen[i], true) {
            return Err(Error::parse(line, format!("duplicate amplitude for index {i}")));
        }
        let re = parse_f64(line, toks[1], "real part")?;
        let im = match toks.get(2) {
            Some(t) => parse_f64(line, t, "imaginary part")?,
            None => 0.0,
        };
        amps[i] = Complex64::new(re, im);
    }
    let (state, norm) = StateVector::normalize(amps)?;
    let mut warnings = Vec::new();
    if (norm - 1.0).abs() > STATE_NORM_WARN_TOL {
        warnings.push(Warning::Renormalized { norm });
    }
    Ok((state, warnings))
}

/// Writes a Hamiltonian in HAMX form with round-trip float formatting.
pub fn write_hamx(h: &Hamiltonian) -> String {
    let mut out = format!("hamx 1 dim={} unit={}\n", h.dim(), h.energy_unit());
    for &(r, c, v) in h.entries() {
        if v.im == 0.0 {
            out.push_str(&format!("{r} {c} {:e}\n", v.re));
        } else {
            out.push_str(&format!("{r} {c} {:e} {:e}\n", v.re, v.im));
        }
    }
    out
}

/// Writes a state in STATE form, skipping zero amplitudes.
pub fn write_state(s: &StateVector) -> String {
    let mut out = format!("state 1 dim={}\n", s.dim());
    for (i, a) in s.amplitudes().iter().enumerate() {
        if *a == Complex64::new(0.0, 0.0) {
            continue;
        }
        if a.im == 0.0 {
            out.push_str(&format!("{i} {:e}\n", a.re));
        } else {
            out.push_str(&format!("{i} {:e} {:e}\n", a.re, a.im));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const CAP: usize = 1 << 14;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn hamx_diagonal() {
        let h = parse_hamiltonian("hamx 1 dim=2 unit=hartree\n0 0 -1.0\n1 1 1.0\n", CAP).unwrap();
        assert_eq!(h.dim(), 2);
        assert_eq!(h.to_dense()[(0, 0)], c(-1.0, 0.0));
        assert_eq!(h.to_dense()[(1, 1)], c(1.0, 0.0));
        assert_eq!(h.energy_unit(), "hartree");
    }

    #[test]
    fn hamx_comments_and_complex() {
        let text = "# header comment\nhamx 1 dim=2\n\n0 1 0.5 -0.25 # coupling\n";
        let h = parse_hamiltonian(text, CAP).unwrap();
        let m = h.to_dense();
        assert_eq!(m[(0, 1)], c(0.5, -0.25));
        assert_eq!(m[(1, 0)], c(0.5, 0.25));
        assert_eq!(h.energy_unit(), DEFAULT_ENERGY_UNIT);
    }

    #[test]
    fn hamx_errors_carry_line_numbers() {
        let err = parse_hamiltonian("hamx 1 dim=2\n0 0 1\n1 0 0.5\n", CAP).unwrap_err();
        match err {
            Error::AtLine { line, source } => {
                assert_eq!(line, 3);
                assert!(matches!(*source, Error::Hermiticity(_)));
            }
            other => panic!("{other:?}"),
        }
        let err = parse_hamiltonian("hamx 1 dim=2\n0 5 1\n", CAP).unwrap_err();
        assert!(matches!(err, Error::AtLine { line: 2, .. }));
        let err = parse_hamiltonian("hamx 1 dim=2\n0 x 1\n", CAP).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        let err = parse_hamiltonian("hamx 1 dim=2\n0 1 1\n\n0 1 2\n", CAP).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 4, .. }));
        assert!(matches!(
            parse_hamiltonian("hamx 2 dim=2\n", CAP),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse_hamiltonian("hamx 1 dim=64\n", 32),
            Err(Error::Resource { .. })
        ));
    }

    #[test]
    fn pauli_z() {
        let h = parse_hamiltonian("pauli 1 qubits=1\n1.0 Z0\n", CAP).unwrap();
        let m = h.to_dense();
        assert_eq!(m[(0, 0)], c(1.0, 0.0));
        assert_eq!(m[(1, 1)], c(-1.0, 0.0));
        assert_eq!(m[(0, 1)], c(0.0, 0.0));
    }

    #[test]
    fn pauli_y_and_identity() {
        let h = parse_hamiltonian("pauli 1 qubits=1\n2.0 Y0\n0.5 I\n", CAP).unwrap();
        let m = h.to_dense();
        assert_eq!(m[(0, 1)], c(0.0, -2.0));
        assert_eq!(m[(1, 0)], c(0.0, 2.0));
        assert_eq!(m[(0, 0)], c(0.5, 0.0));
    }

    #[test]
    fn pauli_errors() {
        assert!(matches!(
            parse_hamiltonian("pauli 1 qubits=2\n1.0 X2\n", CAP),
            Err(Error::AtLine { line: 2, .. })
        ));
        assert!(matches!(
            parse_hamiltonian("pauli 1 qubits=2\n1.0 X0 Z0\n", CAP),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_hamiltonian("pauli 1 qubits=2\n1.0 W0\n", CAP),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_hamiltonian("pauli 1 qubits=15\n1.0 Z0\n", CAP),
            Err(Error::Resource { .. })
        ));
        assert!(matches!(
            parse_hamiltonian("pauli 1 qubits=1\n1.0 1.0 X0\n", CAP),
            Err(Error::Hermiticity(_))
        ));
    }

    #[test]
    fn state_parsing() {
        let (s, w) = parse_state("state 1 dim=4\n0 1\n3 0 1\n").unwrap();
        assert_eq!(w.len(), 1);
        let r = std::f64::consts::FRAC_1_SQRT_2;
        assert!((s.amplitudes()[0] - c(r, 0.0)).norm() < 1e-15);
        assert!((s.amplitudes()[3] - c(0.0, r)).norm() < 1e-15);

        let (_, w) = parse_state("state 1 dim=2\n1 1.0\n").unwrap();
        assert!(w.is_empty());
        assert!(matches!(parse_state("state 1 dim=2\n"), Err(Error::ZeroNorm)));
        assert!(matches!(
            parse_state("state 1 dim=2\n2 1\n"),
            Err(Error::AtLine { line: 2, .. })
        ));
        assert!(matches!(
            parse_state("state 1 dim=2\n0 1\n0 1\n"),
            Err(Error::Parse { line: 3, .. })
        ));
    }

    #[test]
    fn hamx_round_trip() {
        let h = parse_hamiltonian("hamx 1 dim=3 unit=ev\n0 0 0.1\n0 2 0.3 0.7\n1 2 -2e-3\n", CAP).unwrap();
        let again = parse_hamiltonian(&write_hamx(&h), CAP).unwrap();
        assert_eq!(h, again);
    }
}
