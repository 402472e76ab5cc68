use std::fmt::Write;

use super::{Clause, CnfFormula, Literal};
use crate::error::{Error, Result};

const MAX_PARSE_ARITY: usize = 4;

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

/// Parses DIMACS CNF. Clauses may span lines; each ends with `0`.
///
/// A line starting with `%` ends the clause section (SATLIB convention).
pub fn parse_dimacs(text: &str) -> Result<CnfFormula> {
    let mut header: Option<(u32, usize)> = None;
    let mut formula = CnfFormula::default();
    let mut current: Vec<Literal> = Vec::new();
    let mut current_start = 0;
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        last_line = line_no;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        if line.starts_with('%') {
            break;
        }
        if line.starts_with('p') {
            if header.is_some() {
                return Err(parse_err(line_no, "duplicate header"));
            }
            let parts: Vec<&str> = line.split_whitespace().collect();
            if parts.len() != 4 || parts[0] != "p" || parts[1] != "cnf" {
                return Err(parse_err(line_no, "malformed header, expected `p cnf <vars> <clauses>`"));
            }
            let n: u32 = parts[2]
                .parse()
                .map_err(|_| parse_err(line_no, "bad variable count in header"))?;
            let m: usize = parts[3]
                .parse()
                .map_err(|_| parse_err(line_no, "bad clause count in header"))?;
            header = Some((n, m));
            formula = CnfFormula::new(n);
            continue;
        }
        let Some((n, _)) = header else {
            return Err(parse_err(line_no, "clause before header"));
        };
        for tok in line.split_whitespace() {
            let x: i64 = tok
                .parse()
                .map_err(|_| parse_err(line_no, format!("bad literal `{tok}`")))?;
            if current.is_empty() {
                current_start = line_no;
            }
            if x == 0 {
                if current.is_empty() {
                    return Err(parse_err(line_no, "empty clause"));
                }
                if current.len() > MAX_PARSE_ARITY {
                    return Err(parse_err(
                        current_start,
                        format!("clause has {} literals, at most {MAX_PARSE_ARITY} allowed", current.len()),
                    ));
                }
                formula
                    .clauses
                    .push(Clause::new(std::mem::take(&mut current)));
                continue;
            }
            if x.unsigned_abs() > n as u64 {
                return Err(parse_err(
                    line_no,
                    format!("variable index {} out of range (header declares {n})", x.unsigned_abs()),
                ));
            }
            current.push(Literal::from_dimacs(x).expect("nonzero"));
        }
    }

    let Some((_, m)) = header else {
        return Err(parse_err(last_line.max(1), "missing header"));
    };
    if !current.is_empty() {
        return Err(parse_err(current_start, "clause not terminated by 0"));
    }
    if formula.num_clauses() != m {
        return Err(parse_err(
            last_line.max(1),
            format!("header declares {m} clauses, found {}", formula.num_clauses()),
        ));
    }
    Ok(formula)
}

/// Canonical DIMACS: header, one clause per line, LF endings, no comments.
pub fn emit_dimacs(f: &CnfFormula) -> String {
    let mut out = String::new();
    writeln!(out, "p cnf {} {}", f.num_vars(), f.num_clauses()).unwrap();
    for c in f.clauses() {
        for l in c.iter() {
            write!(out, "{} ", l.to_dimacs()).unwrap();
        }
        out.push_str("0\n");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_file() {
        let f = parse_dimacs("p cnf 1 1\n1 0").unwrap();
        assert_eq!(f.num_vars(), 1);
        assert_eq!(f.clauses(), &[Clause::from_dimacs(&[1])]);
    }

    #[test]
    fn transcription() {
        let f = parse_dimacs("p cnf 3 2\n1 -2 3 0\n-1 2 0").unwrap();
        assert_eq!(f.num_vars(), 3);
        assert_eq!(
            f.clauses(),
            &[Clause::from_dimacs(&[1, -2, 3]), Clause::from_dimacs(&[-1, 2])]
        );
    }

    #[test]
    fn comments_and_multiline_clauses() {
        let f = parse_dimacs("c hello\np cnf 3 1\n1 -2\n 3 0\n").unwrap();
        assert_eq!(f.clauses(), &[Clause::from_dimacs(&[1, -2, 3])]);
    }

    #[test]
    fn out_of_range_index() {
        match parse_dimacs("p cnf 2 1\n3 0") {
            Err(Error::Parse { line, message }) => {
                assert_eq!(line, 2);
                assert!(message.contains("out of range"));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn malformed_header() {
        assert!(matches!(
            parse_dimacs("p dnf 2 1\n1 0"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse_dimacs("p cnf x 1\n1 0"),
            Err(Error::Parse { line: 1, .. })
        ));
    }

    #[test]
    fn empty_clause_line() {
        assert!(matches!(
            parse_dimacs("p cnf 2 2\n1 0\n0\n"),
            Err(Error::Parse { line: 3, .. })
        ));
    }

    #[test]
    fn clause_count_mismatch() {
        assert!(parse_dimacs("p cnf 2 2\n1 0\n").is_err());
    }

    #[test]
    fn emit_canonical() {
        let f = CnfFormula::from_dimacs_clauses(1, &[&[1]]).unwrap();
        assert_eq!(emit_dimacs(&f), "p cnf 1 1\n1 0\n");
        assert_eq!(emit_dimacs(&CnfFormula::new(0)), "p cnf 0 0\n");
    }

    #[test]
    fn canonical_bytes_roundtrip() {
        let text = "p cnf 4 3\n1 -2 3 0\n-4 0\n2 4 0\n";
        assert_eq!(emit_dimacs(&parse_dimacs(text).unwrap()), text);
    }
}
