use std::fmt::Write;

use crate::error::{Error, Result};
use crate::formula::{Assignment, Clause, CnfFormula, Literal};

/// A 0/1 program: maximize one variable subject to `x_a + x_b + x_c = 1`
/// constraints. Variables are 1-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IlpInstance {
    num_vars: u32,
    constraints: Vec<[u32; 3]>,
    objective: u32,
}

impl IlpInstance {
    pub fn new(num_vars: u32, constraints: Vec<[u32; 3]>, objective: u32) -> Result<Self> {
        let bad = |msg: String| Err(Error::InvalidArgument(msg));
        if objective == 0 || objective > num_vars {
            return bad(format!("objective x{objective} is not declared"));
        }
        for (i, c) in constraints.iter().enumerate() {
            if c.iter().any(|&x| x == 0 || x > num_vars) {
                return bad(format!("constraint {i} references an undeclared variable"));
            }
            if c[0] == c[1] || c[1] == c[2] || c[0] == c[2] {
                return bad(format!("constraint {i} repeats a variable"));
            }
        }
        Ok(IlpInstance {
            num_vars,
            constraints,
            objective,
        })
    }

    /// One constraint per clause of a monotone formula with 3-literal clauses.
    pub fn from_monotone(f: &CnfFormula, objective: u32) -> Result<Self> {
        f.check_arity(3, 3, "exactly 3 literals")?;
        f.check_monotone()?;
        let cs = f
            .clauses()
            .iter()
            .map(|c| {
                let l = c.literals();
                [l[0].var(), l[1].var(), l[2].var()]
            })
            .collect();
        IlpInstance::new(f.num_vars(), cs, objective)
    }

    pub fn num_vars(&self) -> u32 {
        self.num_vars
    }

    pub fn constraints(&self) -> &[[u32; 3]] {
        &self.constraints
    }

    pub fn objective(&self) -> u32 {
        self.objective
    }

    /// The constraint system read as an exactly-one formula; its ex-1 models
    /// are the feasible points.
    pub fn to_cnf(&self) -> CnfFormula {
        let clauses = self
            .constraints
            .iter()
            .map(|c| Clause::new(c.iter().map(|&x| Literal::pos(x)).collect()))
            .collect();
        CnfFormula::from_clauses(self.num_vars, clauses).expect("validated on construction")
    }

    pub fn is_feasible(&self, point: &Assignment) -> Result<bool> {
        self.to_cnf().evaluate_ex1(point)
    }

    pub fn objective_value(&self, point: &Assignment) -> i64 {
        point.value(self.objective) as i64
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("maximize x{}\n", self.objective);
        for c in &self.constraints {
            writeln!(out, "x{} + x{} + x{} = 1", c[0], c[1], c[2]).unwrap();
        }
        out.push_str("binary all\n");
        out
    }
}

/// Parses the text form. The variable count is the largest index mentioned.
pub fn parse_ilp(text: &str) -> Result<IlpInstance> {
    let perr = |line, message: &str| Error::Parse {
        line,
        message: message.to_string(),
    };
    let var = |tok: &str, ln| -> Result<u32> {
        tok.strip_prefix('x')
            .and_then(|s| s.parse::<u32>().ok())
            .filter(|&x| x > 0)
            .ok_or_else(|| perr(ln, &format!("bad variable `{tok}`")))
    };
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (hl, header) = lines.next().ok_or_else(|| perr(1, "missing objective line"))?;
    let objective = match header.split_whitespace().collect::<Vec<_>>().as_slice() {
        ["maximize", v] => var(v, hl)?,
        _ => return Err(perr(hl, "expected `maximize x<i>`")),
    };
    let mut constraints = Vec::new();
    let mut closed = false;
    for (ln, line) in lines {
        if closed {
            return Err(perr(ln, "text after `binary all`"));
        }
        if line == "binary all" {
            closed = true;
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        match toks.as_slice() {
            [a, "+", b, "+", c, "=", "1"] => constraints.push([var(a, ln)?, var(b, ln)?, var(c, ln)?]),
            _ => return Err(perr(ln, "expected `x<a> + x<b> + x<c> = 1`")),
        }
    }
    if !closed {
        return Err(perr(text.lines().count().max(1), "missing `binary all`"));
    }
    let n = constraints.iter().flatten().copied().chain([objective]).max().unwrap();
    IlpInstance::new(n, constraints, objective).map_err(|e| perr(hl, &e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_round_trip() {
        let ilp = IlpInstance::new(4, vec![[1, 2, 3], [2, 3, 4]], 1).unwrap();
        let text = ilp.to_text();
        assert_eq!(text, "maximize x1\nx1 + x2 + x3 = 1\nx2 + x3 + x4 = 1\nbinary all\n");
        assert_eq!(parse_ilp(&text).unwrap(), ilp);
    }

    #[test]
    fn rejects_malformed() {
        assert!(parse_ilp("maximize x1\nx1 + x2 = 1\nbinary all\n").is_err());
        assert!(parse_ilp("maximize x1\nx1 + x2 + x3 = 1\n").is_err());
        assert!(IlpInstance::new(3, vec![[1, 1, 2]], 1).is_err());
        assert!(IlpInstance::new(3, vec![[1, 2, 3]], 4).is_err());
    }
}
