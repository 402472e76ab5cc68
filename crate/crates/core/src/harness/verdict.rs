use std::fmt::Write;

use num_bigint::BigUint;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    /// A budget ran out. Never counts as a pass.
    Skip,
}

impl Status {
    pub fn label(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skip => "skip",
        }
    }
}

/// Serialized source and target of a failing case.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub source: String,
    pub target: String,
}

/// Outcome of one case or gadget check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub id: usize,
    /// Chain, or `gadget:<name>`.
    pub name: String,
    pub seed: Option<u64>,
    pub source: String,
    pub source_count: Option<BigUint>,
    pub target_count: Option<BigUint>,
    pub multiplier: BigUint,
    pub offset: BigUint,
    /// `target_count == multiplier * source_count + offset`, or for gadgets
    /// the gadget property itself.
    pub relation_holds: bool,
    /// The target is planar whenever the chain promises it (see
    /// [`super::Planarity`]).
    pub planarity_holds: bool,
    /// Lifted solutions checked, when the case asked for it.
    pub witness_holds: Option<bool>,
    pub status: Status,
    pub detail: String,
    pub counterexample: Option<Counterexample>,
}

impl Verdict {
    pub(crate) fn new(id: usize, name: impl Into<String>, seed: Option<u64>, source: impl Into<String>) -> Self {
        Verdict {
            id,
            name: name.into(),
            seed,
            source: source.into(),
            source_count: None,
            target_count: None,
            multiplier: 1u32.into(),
            offset: 0u32.into(),
            relation_holds: false,
            planarity_holds: false,
            witness_holds: None,
            status: Status::Fail,
            detail: String::new(),
            counterexample: None,
        }
    }

    pub(crate) fn settle(mut self) -> Self {
        if self.status != Status::Skip {
            let ok = self.relation_holds && self.planarity_holds && self.witness_holds != Some(false);
            self.status = if ok { Status::Pass } else { Status::Fail };
        }
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// One `key=value` line; counterexamples follow on lines starting with
    /// `  source|` and `  target|`.
    pub fn to_text(&self) -> String {
        let opt = |c: &Option<BigUint>| c.as_ref().map_or("-".to_string(), |c| c.to_string());
        let mut out = format!(
            "verdict id={} status={} name={} seed={} source={} source_count={} target_count={} relation={}*s+{} relation_holds={} planarity_holds={} witness={}",
            self.id,
            self.status.label(),
            self.name,
            self.seed.map_or("-".to_string(), |s| s.to_string()),
            self.source,
            opt(&self.source_count),
            opt(&self.target_count),
            self.multiplier,
            self.offset,
            self.relation_holds,
            self.planarity_holds,
            match self.witness_holds {
                None => "-",
                Some(true) => "ok",
                Some(false) => "bad",
            },
        );
        if !self.detail.is_empty() {
            write!(out, " detail={:?}", self.detail).unwrap();
        }
        out.push('\n');
        if let Some(cx) = &self.counterexample {
            for l in cx.source.lines() {
                writeln!(out, "  source|{l}").unwrap();
            }
            for l in cx.target.lines() {
                writeln!(out, "  target|{l}").unwrap();
            }
        }
        out
    }
}

/// Pass, fail and skip totals.
pub fn tally(v: &[Verdict]) -> (usize, usize, usize) {
    let n = |s| v.iter().filter(|x| x.status == s).count();
    (n(Status::Pass), n(Status::Fail), n(Status::Skip))
}

/// True when every verdict passed.
pub fn all_hold(v: &[Verdict]) -> bool {
    v.iter().all(Verdict::passed)
}
