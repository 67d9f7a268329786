//! DIMACS CNF reading and writing.
//!
//! The projection set is read from `c ind v1 v2 ... 0` comment lines. Several
//! such lines are unioned; without any, every variable is projected.

use std::fmt::Write as _;
use std::io::Read;

use indsup_core::padoa::PadoaInstance;
use indsup_core::{CnfFormula, Lit, Var};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("line {line}: malformed header: {reason}")]
    Header { line: usize, reason: String },
    #[error("line {line}: clause before `p cnf` header")]
    MissingHeader { line: usize },
    #[error("line {line}: invalid token `{token}`")]
    Token { line: usize, token: String },
    #[error("line {line}: literal {lit} outside declared range 1..={num_vars}")]
    LitOutOfRange { line: usize, lit: i64, num_vars: u32 },
    #[error("line {line}: clause is not terminated by 0")]
    UnterminatedClause { line: usize },
    #[error("line {line}: `c ind` line is not terminated by 0")]
    UnterminatedInd { line: usize },
    #[error("no `p cnf` header found")]
    NoHeader,
    #[error("read failed: {0}")]
    Io(String),
}

pub fn read_dimacs<R: Read>(mut reader: R) -> Result<CnfFormula, ParseError> {
    let mut text = String::new();
    reader
        .read_to_string(&mut text)
        .map_err(|e| ParseError::Io(e.to_string()))?;
    parse_dimacs(&text)
}

pub fn parse_dimacs(text: &str) -> Result<CnfFormula, ParseError> {
    let mut formula: Option<CnfFormula> = None;
    // (line, literal) pairs seen in `c ind` lines, checked once the header is known
    let mut ind: Vec<(usize, i64)> = Vec::new();
    let mut saw_ind = false;
    let mut clause: Vec<Lit> = Vec::new();
    let mut clause_start = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() {
            continue;
        }
        if trimmed.starts_with('%') {
            break;
        }
        if let Some(rest) = trimmed.strip_prefix('c') {
            let mut words = rest.split_whitespace();
            if words.next() == Some("ind") {
                saw_ind = true;
                let mut terminated = false;
                for w in words {
                    let x: i64 = w.parse().map_err(|_| ParseError::Token {
                        line,
                        token: w.to_string(),
                    })?;
                    if x == 0 {
                        terminated = true;
                        break;
                    }
                    ind.push((line, x));
                }
                if !terminated {
                    return Err(ParseError::UnterminatedInd { line });
                }
            }
            continue;
        }
        if let Some(rest) = trimmed.strip_prefix('p') {
            if formula.is_some() {
                return Err(header_err(line, "duplicate header"));
            }
            formula = Some(parse_header(line, rest)?);
            continue;
        }
        let f = formula.as_mut().ok_or(ParseError::MissingHeader { line })?;
        for w in trimmed.split_whitespace() {
            let x: i64 = w.parse().map_err(|_| ParseError::Token {
                line,
                token: w.to_string(),
            })?;
            if clause.is_empty() {
                clause_start = line;
            }
            if x == 0 {
                f.add_clause(&clause).expect("literals checked against header");
                clause.clear();
                continue;
            }
            clause.push(checked_lit(line, x, f.num_vars())?);
        }
    }

    if !clause.is_empty() {
        return Err(ParseError::UnterminatedClause { line: clause_start });
    }
    let mut f = formula.ok_or(ParseError::NoHeader)?;
    if saw_ind {
        let n = f.num_vars();
        let mut vars = Vec::with_capacity(ind.len());
        for (line, x) in ind {
            if x < 0 {
                return Err(ParseError::Token {
                    line,
                    token: x.to_string(),
                });
            }
            vars.push(checked_lit(line, x, n)?.var());
        }
        f.set_projection(vars).expect("variables checked against header");
    }
    Ok(f)
}

fn header_err(line: usize, reason: &str) -> ParseError {
    ParseError::Header {
        line,
        reason: reason.to_string(),
    }
}

fn parse_header(line: usize, rest: &str) -> Result<CnfFormula, ParseError> {
    let words: Vec<&str> = rest.split_whitespace().collect();
    match words.as_slice() {
        ["cnf", vars, clauses] => {
            let n: u32 = vars.parse().map_err(|_| header_err(line, "bad variable count"))?;
            let _: u64 = clauses.parse().map_err(|_| header_err(line, "bad clause count"))?;
            if n > i32::MAX as u32 {
                return Err(header_err(line, "variable count too large"));
            }
            Ok(CnfFormula::new(n))
        }
        _ => Err(header_err(line, "expected `p cnf <vars> <clauses>`")),
    }
}

fn checked_lit(line: usize, x: i64, num_vars: u32) -> Result<Lit, ParseError> {
    if x == 0 || x.unsigned_abs() > u64::from(num_vars) {
        return Err(ParseError::LitOutOfRange { line, lit: x, num_vars });
    }
    Ok(Lit::new(Var::new(x.unsigned_abs() as u32), x > 0))
}

fn push_clause(out: &mut String, c: &[Lit]) {
    for l in c {
        write!(out, "{l} ").unwrap();
    }
    out.push_str("0\n");
}

fn push_ind(out: &mut String, vars: &[Var]) {
    out.push_str("c ind ");
    for v in vars {
        write!(out, "{v} ").unwrap();
    }
    out.push_str("0\n");
}

/// Writes `f` as DIMACS. A `c ind` line is only emitted when the projection
/// set is not all variables.
pub fn write_dimacs(f: &CnfFormula) -> String {
    let mut out = String::new();
    writeln!(out, "p cnf {} {}", f.num_vars(), f.num_clauses()).unwrap();
    if f.projection().len() != f.num_vars() as usize {
        push_ind(&mut out, f.projection());
    }
    for c in f.clauses() {
        push_clause(&mut out, c);
    }
    out
}

/// Writes the duplicated formula with a comment block naming the copy and
/// selector of every original variable.
pub fn write_padoa(inst: &PadoaInstance) -> String {
    let n = inst.num_orig_vars();
    let mut out = String::new();
    writeln!(out, "c padoa instance over {n} original variables").unwrap();
    writeln!(out, "c x 1..{n}  y {}..{}  z {}..{}", n + 1, 2 * n, 2 * n + 1, inst.psi.num_vars()).unwrap();
    for v in (1..=n).map(Var::new) {
        match inst.z_of(v) {
            Some(z) => writeln!(out, "c map x {v} y {} z {z}", inst.y_of(v)).unwrap(),
            None => writeln!(out, "c map x {v} y {}", inst.y_of(v)).unwrap(),
        }
    }
    out.push_str(&write_dimacs(&inst.psi));
    out
}
