//! Structured verdict reports.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use uso_core::{Automorphism, DimSet};

/// Automorphism as flip mask plus 1-based permutation images.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AutomorphismRecord {
    pub flip: Vec<usize>,
    pub perm: Vec<usize>,
}

impl From<&Automorphism> for AutomorphismRecord {
    fn from(a: &Automorphism) -> Self {
        AutomorphismRecord {
            flip: a.flip.iter().collect(),
            perm: a.perm.images(),
        }
    }
}

impl AutomorphismRecord {
    pub fn to_automorphism(&self) -> Result<Automorphism, String> {
        let perm = uso_core::Permutation::from_images(&self.perm).map_err(|e| e.to_string())?;
        let flip = DimSet::from_dims(self.flip.iter().copied());
        Automorphism::new(flip, perm).map_err(|e| e.to_string())
    }
}

/// Vertices are written as sorted dimension lists.
pub fn vertex(v: DimSet) -> Vec<usize> {
    v.iter().collect()
}

pub fn to_dimset(v: &[usize]) -> DimSet {
    DimSet::from_dims(v.iter().copied())
}

/// Evidence attached to a verdict. `target` names the input the witness refers to.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Witness {
    /// Two vertices violating the pairwise USO criterion.
    UsoViolation {
        target: String,
        u: Vec<usize>,
        v: Vec<usize>,
    },
    /// A directed cycle in the L-graph of `vertex`.
    LGraphCycle {
        target: String,
        vertex: Vec<usize>,
        cycle: Vec<usize>,
    },
    /// Vertices without outgoing edges.
    Sinks {
        target: String,
        sinks: Vec<Vec<usize>>,
    },
    /// Internally disjoint directed paths from the source to the sink.
    DisjointPaths {
        target: String,
        source: Vec<usize>,
        sink: Vec<usize>,
        paths: Vec<Vec<Vec<usize>>>,
    },
    /// Directed cycle in the two layers above the sink of a pseudo-USO.
    PseudoCycle {
        target: String,
        base: Vec<usize>,
        cycle: Vec<Vec<usize>>,
    },
    /// A face spanned at `vertex` that is not uniform.
    LocalUniformity {
        target: String,
        vertex: Vec<usize>,
        side: String,
        offender: Vec<usize>,
        dim: usize,
    },
    /// `automorphism` maps `from` onto `to`.
    Isomorphism {
        from: String,
        to: String,
        automorphism: AutomorphismRecord,
    },
    /// The image of `target` under `automorphism` has property L.
    PropertyLCopy {
        target: String,
        automorphism: AutomorphismRecord,
    },
    /// A census output directory whose class files can be re-checked.
    CensusDirectory { dir: String, n: usize },
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    /// Named input and output files.
    pub inputs: BTreeMap<String, String>,
    /// Additional parameters and values.
    pub details: BTreeMap<String, serde_json::Value>,
    pub verdicts: BTreeMap<String, bool>,
    pub witnesses: Vec<Witness>,
    pub timings_ms: BTreeMap<String, f64>,
    /// Outcome that decides the exit code.
    pub holds: bool,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            command: command.to_string(),
            ..Default::default()
        }
    }

    pub fn input(&mut self, name: &str, path: &str) -> &mut Self {
        self.inputs.insert(name.to_string(), path.to_string());
        self
    }

    pub fn detail(&mut self, key: &str, value: impl Into<serde_json::Value>) -> &mut Self {
        self.details.insert(key.to_string(), value.into());
        self
    }

    pub fn verdict(&mut self, key: &str, value: bool) -> &mut Self {
        self.verdicts.insert(key.to_string(), value);
        self
    }

    pub fn timing(&mut self, key: &str, started: std::time::Instant) -> &mut Self {
        self.timings_ms
            .insert(key.to_string(), started.elapsed().as_secs_f64() * 1e3);
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "{}: {}",
            self.command,
            if self.holds { "holds" } else { "fails" }
        );
        for (k, v) in &self.inputs {
            let _ = writeln!(s, "  {k}: {v}");
        }
        for (k, v) in &self.details {
            let _ = writeln!(s, "  {k} = {v}");
        }
        for (k, v) in &self.verdicts {
            let _ = writeln!(s, "  {k}: {}", if *v { "yes" } else { "no" });
        }
        for w in &self.witnesses {
            let _ = writeln!(s, "  witness: {}", describe(w));
        }
        for (k, v) in &self.timings_ms {
            let _ = writeln!(s, "  time {k}: {v:.1} ms");
        }
        s
    }
}

fn set(v: &[usize]) -> String {
    to_dimset(v).to_string()
}

fn arrows(items: impl IntoIterator<Item = String>) -> String {
    let items: Vec<String> = items.into_iter().collect();
    let mut s = items.join(" -> ");
    if let Some(first) = items.first() {
        s.push_str(" -> ");
        s.push_str(first);
    }
    s
}

fn describe(w: &Witness) -> String {
    match w {
        Witness::UsoViolation { target, u, v } => {
            format!(
                "{target}: vertices {} and {} violate the pairwise criterion",
                set(u),
                set(v)
            )
        }
        Witness::LGraphCycle {
            target,
            vertex,
            cycle,
        } => format!(
            "{target}: L-graph of {} has cycle {}",
            set(vertex),
            arrows(cycle.iter().map(|d| d.to_string()))
        ),
        Witness::Sinks { target, sinks } => format!(
            "{target}: sinks {}",
            sinks.iter().map(|v| set(v)).collect::<Vec<_>>().join(" ")
        ),
        Witness::DisjointPaths {
            target,
            source,
            sink,
            paths,
        } => format!(
            "{target}: {} disjoint paths from {} to {}",
            paths.len(),
            set(source),
            set(sink)
        ),
        Witness::PseudoCycle {
            target,
            base,
            cycle,
        } => format!(
            "{target}: cycle above {}: {}",
            set(base),
            arrows(cycle.iter().map(|v| set(v)))
        ),
        Witness::LocalUniformity {
            target,
            vertex,
            side,
            offender,
            dim,
        } => format!(
            "{target}: {side} face at {} is not uniform ({} along {dim})",
            set(vertex),
            set(offender)
        ),
        Witness::Isomorphism {
            from,
            to,
            automorphism,
        } => format!(
            "{from} -> {to}: flip {} perm {:?}",
            set(&automorphism.flip),
            automorphism.perm
        ),
        Witness::PropertyLCopy {
            target,
            automorphism,
        } => format!(
            "{target}: image under flip {} perm {:?} has property L",
            set(&automorphism.flip),
            automorphism.perm
        ),
        Witness::CensusDirectory { dir, n } => format!("census of dimension {n} in {dir}"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip() {
        let mut r = Report::new("check");
        r.input("input", "a.uso").verdict("uso", true);
        r.witnesses.push(Witness::LGraphCycle {
            target: "input".into(),
            vertex: vec![],
            cycle: vec![1, 3, 2],
        });
        r.holds = true;
        let back: Report = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(back, r);
        assert!(r.to_text().contains("1 -> 3 -> 2 -> 1"));
    }
}
