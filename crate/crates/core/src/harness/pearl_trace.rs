use std::fmt;

use crate::game::{Game, PearlTree};
use crate::search::{MoveOrdering, SearchContext};
use crate::sss::{sss_star, OpenSnapshot, SssStatus};
use crate::tt::TtConfig;
use crate::value::{Value, VALUE_INF};

use super::HarnessError;

const EXPECTED_RETURNS: [Value; 4] = [41, 36, 35, 35];
const EXPECTED_LEAVES: &str = "egkmnost";
const EXPECTED_VALUE: Value = 35;

/// Stored bounds a pass must leave behind: (pass, node, lower, upper), where
/// `None` means "not checked".
const EXPECTED_BOUNDS: [(usize, char, Option<Value>, Option<Value>); 10] = [
    (1, 'a', None, Some(41)),
    (1, 'h', None, Some(36)),
    (1, 'l', None, Some(36)),
    (2, 'a', None, Some(36)),
    (2, 'b', None, Some(12)),
    (2, 'd', None, Some(5)),
    (3, 'a', None, Some(35)),
    (3, 'l', None, Some(35)),
    (4, 'a', Some(35), None),
    (4, 'l', Some(35), None),
];

const EXPECTED_OPEN: [&[(char, Value)]; 4] = [
    &[('e', 41), ('m', 36), ('k', 34), ('g', 12)],
    &[('m', 36), ('k', 34), ('g', 12), ('n', 5)],
    &[('o', 35), ('k', 34), ('g', 12), ('n', 5)],
    &[('a', 35)],
];

const TRACKED: &str = "abdhilp";

/// Bounds of one node after a pass, in MAX's terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NodeBounds {
    pub node: char,
    pub lower: Value,
    pub upper: Value,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PassTrace {
    pub gamma: Value,
    pub g: Value,
    pub bounds: Vec<NodeBounds>,
}

/// AB-SSS* and SSS* on the four-pass example tree, side by side.
#[derive(Clone, Debug)]
pub struct PearlTrace {
    pub passes: Vec<PassTrace>,
    pub leaf_order: String,
    pub value: Value,
    pub open_snapshots: Vec<Vec<OpenSnapshot>>,
    pub sss_value: Value,
    /// Every deviation from the expected trace, in the order found.
    pub mismatches: Vec<String>,
}

impl PearlTrace {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }

    pub fn mt_returns(&self) -> Vec<Value> {
        self.passes.iter().map(|p| p.g).collect()
    }
}

fn show(v: Value) -> String {
    if v >= VALUE_INF {
        "inf".into()
    } else if v <= -VALUE_INF {
        "-inf".into()
    } else {
        v.to_string()
    }
}

impl fmt::Display for PearlTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.passes.iter().enumerate() {
            writeln!(f, "pass {}: MT(a, {}) = {}", i + 1, show(p.gamma), p.g)?;
            let b: Vec<String> = p
                .bounds
                .iter()
                .map(|n| format!("{}[{},{}]", n.node, show(n.lower), show(n.upper)))
                .collect();
            writeln!(f, "  stored: {}", b.join(" "))?;
            if let Some(open) = self.open_snapshots.get(i) {
                let o: Vec<String> = open.iter().map(|s| s.to_string()).collect();
                writeln!(f, "  OPEN:   ({})", o.join(", "))?;
            }
        }
        writeln!(f, "leaf order: {}", self.leaf_order)?;
        writeln!(f, "value: AB-SSS* {}, SSS* {}", self.value, self.sss_value)?;
        if self.passed() {
            write!(f, "trace matches")
        } else {
            for m in &self.mismatches {
                writeln!(f, "MISMATCH {m}")?;
            }
            Ok(())
        }
    }
}

/// Replays the example and checks it against the hard-coded expected trace.
pub fn trace_pearl() -> Result<PearlTrace, HarnessError> {
    let t = PearlTree::default();
    let depth = t.height();
    let root = t.root();
    let mut ctx = SearchContext::new(&t, TtConfig::lossless())
        .with_ordering(MoveOrdering::Static)
        .with_leaf_trace();

    let mut passes = Vec::new();
    let (mut f_minus, mut f_plus) = (-VALUE_INF, VALUE_INF);
    let mut gamma = VALUE_INF;
    while f_minus < f_plus && passes.len() < 16 {
        let g = ctx.mt(&root, depth, gamma);
        if g < gamma {
            f_plus = g;
        } else {
            f_minus = g;
        }
        let bounds = TRACKED
            .chars()
            .map(|c| {
                let (lower, upper) = ctx
                    .absolute_bounds(&t.node(c))
                    .map_or((-VALUE_INF, VALUE_INF), |(lo, hi, _)| (lo, hi));
                NodeBounds { node: c, lower, upper }
            })
            .collect();
        passes.push(PassTrace { gamma, g, bounds });
        gamma = g;
    }
    let name_of = |key: u64| {
        (b'a'..=b'u')
            .map(char::from)
            .find(|&c| t.state_key(&t.node(c)) == key)
            .unwrap_or('?')
    };
    let leaf_order: String = ctx
        .stats
        .leaf_trace
        .as_deref()
        .unwrap_or_default()
        .iter()
        .map(|l| name_of(l.key))
        .collect();

    let sss = sss_star(&t, root, depth)?;
    let open_snapshots: Vec<Vec<OpenSnapshot>> = sss.snapshots().into_iter().map(|s| s.to_vec()).collect();

    let mut trace = PearlTrace {
        passes,
        leaf_order,
        value: f_minus,
        open_snapshots,
        sss_value: sss.value,
        mismatches: Vec::new(),
    };
    trace.mismatches = check(&trace);
    Ok(trace)
}

fn check(t: &PearlTrace) -> Vec<String> {
    let mut out = Vec::new();
    if t.mt_returns() != EXPECTED_RETURNS {
        out.push(format!(
            "MT returns {:?}, expected {:?}",
            t.mt_returns(),
            EXPECTED_RETURNS
        ));
    }
    if t.leaf_order != EXPECTED_LEAVES {
        out.push(format!("leaf order {}, expected {EXPECTED_LEAVES}", t.leaf_order));
    }
    if t.value != EXPECTED_VALUE || t.sss_value != EXPECTED_VALUE {
        out.push(format!(
            "values AB-SSS* {} / SSS* {}, expected {EXPECTED_VALUE}",
            t.value, t.sss_value
        ));
    }
    for (pass, node, lo, hi) in EXPECTED_BOUNDS {
        let got = t
            .passes
            .get(pass - 1)
            .and_then(|p| p.bounds.iter().find(|b| b.node == node));
        let Some(got) = got else {
            out.push(format!("pass {pass}: no bounds recorded for {node}"));
            continue;
        };
        if lo.is_some_and(|v| v != got.lower) || hi.is_some_and(|v| v != got.upper) {
            out.push(format!(
                "pass {pass}: {node} has [{},{}], expected [{},{}]",
                show(got.lower),
                show(got.upper),
                lo.map_or("*".into(), show),
                hi.map_or("*".into(), show)
            ));
        }
    }
    if t.open_snapshots.len() != EXPECTED_OPEN.len() {
        out.push(format!(
            "{} solved OPEN snapshots, expected {}",
            t.open_snapshots.len(),
            EXPECTED_OPEN.len()
        ));
    }
    for (i, (got, want)) in t.open_snapshots.iter().zip(EXPECTED_OPEN).enumerate() {
        let want: Vec<OpenSnapshot> = want
            .iter()
            .map(|&(c, v)| OpenSnapshot::new(&c.to_string(), SssStatus::Solved, v))
            .collect();
        if *got != want {
            let g: Vec<String> = got.iter().map(|s| s.to_string()).collect();
            let w: Vec<String> = want.iter().map(|s| s.to_string()).collect();
            out.push(format!(
                "OPEN after pass {}: ({}), expected ({})",
                i + 1,
                g.join(", "),
                w.join(", ")
            ));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn example_trace_matches() {
        let t = trace_pearl().unwrap();
        assert!(t.passed(), "{t}");
        assert_eq!(t.mt_returns(), vec![41, 36, 35, 35]);
        assert!(t
            .to_string()
            .contains("OPEN:   (<e,S,41>, <m,S,36>, <k,S,34>, <g,S,12>)"));
    }

    #[test]
    fn check_reports_divergence() {
        let mut t = trace_pearl().unwrap();
        t.passes[0].g = 40;
        t.leaf_order = "eg".into();
        let m = check(&t);
        assert_eq!(m.len(), 2, "{m:?}");
        assert!(m[0].starts_with("MT returns [40, 36, 35, 35]"));
    }
}
