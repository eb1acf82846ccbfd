//! Subcommand implementations. Every command returns a [`Report`]; errors are input errors.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Mutex;
use std::time::Instant;

use anyhow::{anyhow, bail, Context, Result};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use uso_core::analysis::{
    find_pseudo_cycle, holt_klee, is_pseudo_uso, is_uso, local_uniformity_violation, uso_violation,
    validate_disjoint_paths, validate_pseudo_cycle, PseudoCycleWitness, UniformSide,
};
use uso_core::constructions::{
    matching_reversal, pcube_kaleidoscope, product_kaleidoscope, recursively_combed, uniform_uso,
    CombedSpec, Matching,
};
use uso_core::iso::{
    are_isomorphic, census_shard, census_shard_depth, exists_property_l_copy, is_canonical,
    merge_records, shard_prefixes, IsoClassRecord, ENUMERATION_MAX_DIM,
};
use uso_core::lcp::{dcube_outmap, pcube_outmap};
use uso_core::lgraph::{has_property_l, property_l_holds, validate_property_l_witness};
use uso_core::{Automorphism, DimSet, OutMap, Permutation};

use crate::formats::{max_dim, parse_lcp, parse_uso, write_lcp, write_uso, LcpInstance};
use crate::report::{to_dimset, vertex, AutomorphismRecord, Report, Witness};

pub fn read_uso(path: &Path) -> Result<OutMap> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_uso(&text).map_err(|e| anyhow!("{}: {e}", path.display()))
}

pub fn read_lcp(path: &Path) -> Result<LcpInstance> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_lcp(&text).map_err(|e| anyhow!("{}: {e}", path.display()))
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir)?;
    }
    fs::write(path, contents).with_context(|| format!("writing {}", path.display()))
}

fn path_str(p: &Path) -> String {
    p.display().to_string()
}

fn violation_witness(target: &str, o: &OutMap) -> Option<Witness> {
    uso_violation(o).map(|(u, v)| Witness::UsoViolation {
        target: target.into(),
        u: vertex(u),
        v: vertex(v),
    })
}

fn lgraph_witness(target: &str, o: &OutMap) -> (bool, Option<Witness>) {
    let r = has_property_l(o);
    let w = r.witness.map(|w| Witness::LGraphCycle {
        target: target.into(),
        vertex: vertex(w.vertex),
        cycle: w.cycle,
    });
    (r.holds, w)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum CheckKind {
    Uso,
    PropertyL,
    HoltKlee,
    LocallyUniform,
    Pseudo,
}

pub fn cmd_check(which: CheckKind, path: &Path) -> Result<Report> {
    let started = Instant::now();
    let o = read_uso(path)?;
    let mut r = Report::new("check");
    r.input("input", &path_str(path));
    r.detail("dimension", o.dim());
    let uso = is_uso(&o);
    let t = "input";
    match which {
        CheckKind::Uso => {
            r.detail("property", "uso");
            r.verdict("uso", uso);
            r.holds = uso;
            if uso {
                let sink = o.vertices().find(|&v| o.out(v).is_empty()).unwrap();
                r.witnesses.push(Witness::Sinks {
                    target: t.into(),
                    sinks: vec![vertex(sink)],
                });
            } else {
                r.witnesses.extend(violation_witness(t, &o));
            }
        }
        CheckKind::PropertyL => {
            r.detail("property", "property-l");
            let (holds, w) = lgraph_witness(t, &o);
            r.verdict("uso", uso).verdict("property_l", holds);
            r.witnesses.extend(w);
            r.holds = holds;
        }
        CheckKind::HoltKlee => {
            r.detail("property", "holt-klee");
            r.verdict("uso", uso);
            if uso {
                let hk = holt_klee(&o)?;
                r.verdict("holt_klee", hk.holds);
                r.detail("disjoint_paths", hk.paths.len());
                r.witnesses.push(Witness::DisjointPaths {
                    target: t.into(),
                    source: vertex(hk.source),
                    sink: vertex(hk.sink),
                    paths: hk
                        .paths
                        .iter()
                        .map(|p| p.iter().map(|&v| vertex(v)).collect())
                        .collect(),
                });
                r.holds = hk.holds;
            } else {
                r.witnesses.extend(violation_witness(t, &o));
            }
        }
        CheckKind::LocallyUniform => {
            r.detail("property", "locally-uniform");
            r.verdict("uso", uso);
            if uso {
                let v = local_uniformity_violation(&o);
                r.verdict("locally_uniform", v.is_none());
                r.holds = v.is_none();
                if let Some(v) = v {
                    r.witnesses.push(Witness::LocalUniformity {
                        target: t.into(),
                        vertex: vertex(v.vertex),
                        side: side_name(v.side).into(),
                        offender: vertex(v.offender),
                        dim: v.dim,
                    });
                }
            } else {
                r.witnesses.extend(violation_witness(t, &o));
            }
        }
        CheckKind::Pseudo => {
            r.detail("property", "pseudo");
            let pseudo = is_pseudo_uso(&o)?;
            r.verdict("uso", uso).verdict("pseudo_uso", pseudo);
            r.holds = pseudo;
            let sinks: Vec<DimSet> = o.vertices().filter(|&v| o.out(v).is_empty()).collect();
            r.witnesses.push(Witness::Sinks {
                target: t.into(),
                sinks: sinks.iter().map(|&s| vertex(s)).collect(),
            });
            if pseudo && o.dim() >= 3 {
                if let Some(&s) = sinks.first() {
                    let w = find_pseudo_cycle(&o, s)?;
                    r.witnesses.push(Witness::PseudoCycle {
                        target: t.into(),
                        base: vertex(w.base),
                        cycle: w.cycle.iter().map(|&v| vertex(v)).collect(),
                    });
                }
            }
        }
    }
    r.timing("total", started);
    Ok(r)
}

fn side_name(s: UniformSide) -> &'static str {
    match s {
        UniformSide::Incoming => "incoming",
        UniformSide::Outgoing => "outgoing",
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum BuildKind {
    Pcube,
    Dcube,
    KaleidoscopeProduct,
    KaleidoscopePmatrix,
    Combed,
    Uniform,
    MatchingReversal,
}

#[derive(Clone, Debug, Default)]
pub struct BuildArgs {
    pub input: Option<PathBuf>,
    pub dim: Option<usize>,
    pub spec: Option<String>,
    /// Whitespace-separated `vertex:dim` pairs, vertex given by its index.
    pub matching: Option<String>,
    pub out: PathBuf,
    /// Where to write the blown-up LCP for `kaleidoscope-pmatrix`.
    pub lcp_out: Option<PathBuf>,
}

fn require_input(args: &BuildArgs) -> Result<&Path> {
    args.input
        .as_deref()
        .ok_or_else(|| anyhow!("this build kind needs --input"))
}

fn require_dim(args: &BuildArgs) -> Result<usize> {
    let n = args
        .dim
        .ok_or_else(|| anyhow!("this build kind needs --dim"))?;
    if n > max_dim() {
        bail!(
            "dimension {n} exceeds the cap of {} (set USO_MAX_DIM to raise it)",
            max_dim()
        );
    }
    Ok(n)
}

pub fn parse_matching(n: usize, s: &str) -> Result<Matching> {
    let edges = s
        .split(|c: char| c.is_whitespace() || c == ';' || c == ',')
        .filter(|t| !t.is_empty())
        .map(|t| {
            let (v, d) = t
                .split_once(':')
                .ok_or_else(|| anyhow!("matching edge {t:?} is not vertex:dim"))?;
            let v: u32 = v.parse().with_context(|| format!("vertex in {t:?}"))?;
            let d: usize = d.parse().with_context(|| format!("dimension in {t:?}"))?;
            Ok((DimSet(v), d))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Matching::new(n, edges)?)
}

pub fn cmd_build(kind: BuildKind, args: &BuildArgs) -> Result<Report> {
    let started = Instant::now();
    let mut r = Report::new("build");
    let o = match kind {
        BuildKind::Pcube | BuildKind::Dcube => {
            let path = require_input(args)?;
            r.input("lcp", &path_str(path));
            let inst = read_lcp(path)?;
            if kind == BuildKind::Pcube {
                r.detail("kind", "pcube");
                pcube_outmap(&inst.m, &inst.q)?
            } else {
                r.detail("kind", "dcube");
                dcube_outmap(&inst.m, &inst.q)?
            }
        }
        BuildKind::KaleidoscopeProduct => {
            let path = require_input(args)?;
            r.input("base", &path_str(path));
            r.detail("kind", "kaleidoscope-product");
            let phi = read_uso(path)?;
            if 2 * phi.dim() > max_dim() {
                bail!(
                    "kaleidoscope dimension {} exceeds the cap of {}",
                    2 * phi.dim(),
                    max_dim()
                );
            }
            product_kaleidoscope(&phi)?
        }
        BuildKind::KaleidoscopePmatrix => {
            let path = require_input(args)?;
            r.input("lcp", &path_str(path));
            r.detail("kind", "kaleidoscope-pmatrix");
            let inst = read_lcp(path)?;
            if 2 * inst.q.len() > max_dim() {
                bail!(
                    "kaleidoscope dimension {} exceeds the cap of {}",
                    2 * inst.q.len(),
                    max_dim()
                );
            }
            let k = pcube_kaleidoscope(&inst.m, &inst.q)?;
            if let Some(p) = &args.lcp_out {
                write_file(
                    p,
                    &write_lcp(&LcpInstance {
                        m: k.matrix.clone(),
                        q: k.rhs.clone(),
                    }),
                )?;
                r.input("lcp_output", &path_str(p));
            }
            k.outmap
        }
        BuildKind::Combed => {
            let n = require_dim(args)?;
            let spec = args
                .spec
                .as_deref()
                .ok_or_else(|| anyhow!("combed needs --spec"))?;
            r.detail("kind", "combed").detail("spec", spec);
            recursively_combed(&CombedSpec::parse(n, spec)?)
        }
        BuildKind::Uniform => {
            let n = require_dim(args)?;
            r.detail("kind", "uniform");
            uniform_uso(n)?
        }
        BuildKind::MatchingReversal => {
            let n = require_dim(args)?;
            let text = args.matching.as_deref().unwrap_or("");
            r.detail("kind", "matching-reversal")
                .detail("matching", text);
            matching_reversal(n, &parse_matching(n, text)?)?
        }
    };
    write_file(&args.out, &write_uso(&o))?;
    r.input("output", &path_str(&args.out));
    r.detail("dimension", o.dim());
    let uso = is_uso(&o);
    let (pl, w) = lgraph_witness("output", &o);
    r.verdict("uso", uso).verdict("property_l", pl);
    r.witnesses.extend(w);
    r.holds = uso;
    r.timing("total", started);
    Ok(r)
}

#[derive(Clone, Debug)]
pub enum TransformOp {
    Reverse(DimSet),
    Mirror(DimSet),
    Permute(Vec<usize>),
    Automorph(DimSet, Vec<usize>),
    /// First automorphism (enumeration order) whose image has property L.
    Sweep,
}

fn check_set(o: &OutMap, s: DimSet) -> Result<()> {
    if !s.is_subset(DimSet::full(o.dim())) {
        bail!("set {s} is not a subset of [{}]", o.dim());
    }
    Ok(())
}

pub fn cmd_transform(path: &Path, op: &TransformOp, out: Option<&Path>) -> Result<Report> {
    let started = Instant::now();
    let o = read_uso(path)?;
    let mut r = Report::new("transform");
    r.input("input", &path_str(path));
    let before = property_l_holds(&o);
    r.verdict("property_l_before", before);
    let image = match op {
        TransformOp::Reverse(s) => {
            check_set(&o, *s)?;
            r.detail("op", "reverse").detail("set", s.to_string());
            Some(o.reverse(*s))
        }
        TransformOp::Mirror(s) => {
            check_set(&o, *s)?;
            r.detail("op", "mirror").detail("set", s.to_string());
            Some(o.mirror(*s))
        }
        TransformOp::Permute(p) => {
            r.detail("op", "permute").detail("perm", p.clone());
            Some(o.permute_dims(&Permutation::from_images(p)?)?)
        }
        TransformOp::Automorph(s, p) => {
            check_set(&o, *s)?;
            r.detail("op", "automorph")
                .detail("set", s.to_string())
                .detail("perm", p.clone());
            let a = Automorphism::new(*s, Permutation::from_images(p)?)?;
            Some(o.apply_automorphism(&a)?)
        }
        TransformOp::Sweep => {
            r.detail("op", "sweep");
            match exists_property_l_copy(&o)? {
                Some(a) => {
                    r.witnesses.push(Witness::PropertyLCopy {
                        target: "input".into(),
                        automorphism: AutomorphismRecord::from(&a),
                    });
                    Some(o.apply_automorphism(&a)?)
                }
                None => None,
            }
        }
    };
    match image {
        Some(img) => {
            let after = property_l_holds(&img);
            r.verdict("property_l_after", after)
                .verdict("property_l_changed", after != before)
                .verdict("uso", is_uso(&img));
            if let Some(p) = out {
                write_file(p, &write_uso(&img))?;
                r.input("output", &path_str(p));
            }
            r.holds = true;
        }
        None => {
            r.verdict("property_l_copy", false);
            r.holds = false;
        }
    }
    r.timing("total", started);
    Ok(r)
}

pub fn cmd_iso(first: &Path, second: &Path) -> Result<Report> {
    let started = Instant::now();
    let a = read_uso(first)?;
    let b = read_uso(second)?;
    let mut r = Report::new("iso");
    r.input("first", &path_str(first))
        .input("second", &path_str(second));
    let found = are_isomorphic(&a, &b)?;
    r.verdict("isomorphic", found.is_some());
    if let Some(h) = found {
        r.witnesses.push(Witness::Isomorphism {
            from: "first".into(),
            to: "second".into(),
            automorphism: AutomorphismRecord::from(&h),
        });
        r.holds = true;
    }
    r.timing("total", started);
    Ok(r)
}

/// Class record as persisted by the census.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassEntry {
    pub file: String,
    pub table: Vec<u32>,
    pub class_size: u64,
    pub has_property_l_member: bool,
    pub witness: Option<AutomorphismRecord>,
}

impl ClassEntry {
    fn from_record(file: String, r: &IsoClassRecord) -> Self {
        ClassEntry {
            file,
            table: r.canonical.table().to_vec(),
            class_size: r.class_size,
            has_property_l_member: r.has_property_l_member,
            witness: r
                .witness_automorphism
                .as_ref()
                .map(AutomorphismRecord::from),
        }
    }

    fn to_record(&self, n: usize) -> Result<IsoClassRecord> {
        Ok(IsoClassRecord {
            canonical: OutMap::new(n, self.table.clone())?,
            class_size: self.class_size,
            has_property_l_member: self.has_property_l_member,
            witness_automorphism: self
                .witness
                .as_ref()
                .map(|w| w.to_automorphism())
                .transpose()
                .map_err(|e| anyhow!(e))?,
        })
    }
}

/// Resumable census progress.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct CensusState {
    pub n: usize,
    pub shards: Vec<Vec<u32>>,
    /// Finished shard index to its class records.
    pub done: BTreeMap<usize, Vec<ClassEntry>>,
}

pub const STATE_FILE: &str = "census-state.json";
pub const CLASSES_FILE: &str = "classes.json";

#[derive(Clone, Debug)]
pub struct CensusArgs {
    pub n: usize,
    pub heavy: bool,
    pub resume: bool,
    pub jobs: Option<usize>,
    pub out: PathBuf,
    /// Stop after this many new shards (leaves a checkpoint).
    pub max_shards: Option<usize>,
}

fn save_state(dir: &Path, state: &CensusState) -> Result<()> {
    let tmp = dir.join(format!("{STATE_FILE}.tmp"));
    fs::write(&tmp, serde_json::to_string(state)?)?;
    fs::rename(&tmp, dir.join(STATE_FILE))?;
    Ok(())
}

pub fn class_file_name(k: usize) -> String {
    format!("class-{:05}.uso", k + 1)
}

pub fn cmd_census(args: &CensusArgs) -> Result<Report> {
    let started = Instant::now();
    let n = args.n;
    if n > ENUMERATION_MAX_DIM {
        bail!("census is available for n <= {ENUMERATION_MAX_DIM}");
    }
    if n == 4 && !args.heavy {
        bail!("the 4-dimensional census is heavy; pass --heavy to run it");
    }
    fs::create_dir_all(&args.out)?;
    let shards = shard_prefixes(n, census_shard_depth(n))?;
    let state_path = args.out.join(STATE_FILE);
    let mut state = CensusState {
        n,
        shards: shards.clone(),
        done: BTreeMap::new(),
    };
    let mut resumed = 0;
    if args.resume && state_path.exists() {
        let old: CensusState = serde_json::from_str(&fs::read_to_string(&state_path)?)
            .context("reading census checkpoint")?;
        if old.n != n || old.shards != shards {
            bail!(
                "checkpoint in {} belongs to a different census",
                args.out.display()
            );
        }
        resumed = old.done.len();
        state.done = old.done;
    }
    save_state(&args.out, &state)?;

    let mut todo: Vec<usize> = (0..shards.len())
        .filter(|k| !state.done.contains_key(k))
        .collect();
    if let Some(cap) = args.max_shards {
        todo.truncate(cap);
    }
    let state = Mutex::new(state);
    let run = || -> Result<()> {
        todo.par_iter().try_for_each(|&k| -> Result<()> {
            let records = census_shard(n, &shards[k])?;
            let entries = records
                .iter()
                .map(|r| ClassEntry::from_record(String::new(), r))
                .collect();
            let mut st = state.lock().unwrap();
            st.done.insert(k, entries);
            save_state(&args.out, &st)
        })
    };
    match args.jobs {
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j.max(1))
            .build()?
            .install(run)?,
        None => run()?,
    }
    let state = state.into_inner().unwrap();

    let mut r = Report::new("census");
    r.input("output_dir", &path_str(&args.out));
    r.detail("dimension", n)
        .detail("shards", shards.len())
        .detail("shards_resumed", resumed)
        .detail("shards_done", state.done.len());
    let complete = state.done.len() == shards.len();
    r.verdict("complete", complete);
    if !complete {
        r.holds = false;
        r.timing("total", started);
        return Ok(r);
    }

    let parts = state
        .done
        .values()
        .map(|v| v.iter().map(|e| e.to_record(n)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    let records = merge_records(parts);
    let mut entries = Vec::with_capacity(records.len());
    for (k, rec) in records.iter().enumerate() {
        let name = class_file_name(k);
        fs::write(args.out.join(&name), write_uso(&rec.canonical))?;
        entries.push(ClassEntry::from_record(name, rec));
    }
    fs::write(
        args.out.join(CLASSES_FILE),
        serde_json::to_string_pretty(&entries)?,
    )?;
    let without = records.iter().filter(|r| !r.has_property_l_member).count();
    let total: u64 = records.iter().map(|r| r.class_size).sum();
    r.detail("classes", records.len())
        .detail("classes_without_property_l_member", without)
        .detail("usos", total);
    r.witnesses.push(Witness::CensusDirectory {
        dir: path_str(&args.out),
        n,
    });
    r.holds = true;
    r.timing("total", started);
    Ok(r)
}

/// Re-checks every class file of a finished census directory.
pub fn verify_census_dir(dir: &Path, n: usize) -> Result<Vec<String>> {
    let entries: Vec<ClassEntry> =
        serde_json::from_str(&fs::read_to_string(dir.join(CLASSES_FILE))?)?;
    let problems: Vec<String> = entries
        .par_iter()
        .filter_map(|e| {
            let check = || -> Result<Option<String>> {
                let o = read_uso(&dir.join(&e.file))?;
                if o.dim() != n || o.table() != e.table.as_slice() {
                    return Ok(Some(format!("{}: file does not match the index", e.file)));
                }
                if !is_canonical(&o)? {
                    return Ok(Some(format!("{}: not canonical", e.file)));
                }
                let fresh = IsoClassRecord::for_canonical(o);
                if fresh != e.to_record(n)? {
                    return Ok(Some(format!(
                        "{}: class data differs on recomputation",
                        e.file
                    )));
                }
                Ok(None)
            };
            check().unwrap_or_else(|err| Some(format!("{}: {err}", e.file)))
        })
        .collect();
    Ok(problems)
}

/// Replays the witnesses of a saved report against its input files.
pub fn cmd_verify_report(path: &Path) -> Result<Report> {
    let started = Instant::now();
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let saved: Report = serde_json::from_str(&text).context("parsing report")?;
    let base = path.parent().unwrap_or(Path::new("."));
    let resolve = |name: &str| -> Result<PathBuf> {
        let p = saved
            .inputs
            .get(name)
            .ok_or_else(|| anyhow!("report has no input named {name:?}"))?;
        let p = PathBuf::from(p);
        Ok(if p.is_absolute() || p.exists() {
            p
        } else {
            base.join(p)
        })
    };
    let load = |name: &str| -> Result<OutMap> { read_uso(&resolve(name)?) };

    let mut r = Report::new("verify-report");
    r.input("report", &path_str(path));
    r.detail("command", saved.command.clone())
        .detail("witnesses", saved.witnesses.len());
    let mut all = true;
    for (k, w) in saved.witnesses.iter().enumerate() {
        let ok = verify_witness(w, &load, &resolve)?;
        r.verdict(&format!("witness_{k}"), ok);
        all &= ok;
    }
    r.holds = all;
    r.timing("total", started);
    Ok(r)
}

fn verify_witness(
    w: &Witness,
    load: &dyn Fn(&str) -> Result<OutMap>,
    resolve: &dyn Fn(&str) -> Result<PathBuf>,
) -> Result<bool> {
    Ok(match w {
        Witness::UsoViolation { target, u, v } => {
            let o = load(target)?;
            let (u, v) = (to_dimset(u), to_dimset(v));
            let size = o.num_vertices() as u32;
            u != v
                && u.bits() < size
                && v.bits() < size
                && ((o.out(u) ^ o.out(v)) & (u ^ v)).is_empty()
        }
        Witness::LGraphCycle {
            target,
            vertex,
            cycle,
        } => {
            let o = load(target)?;
            validate_property_l_witness(
                &o,
                &uso_core::PropertyLWitness {
                    vertex: to_dimset(vertex),
                    cycle: cycle.clone(),
                },
            )
        }
        Witness::Sinks { target, sinks } => {
            let o = load(target)?;
            sinks.iter().all(|s| {
                let s = to_dimset(s);
                (s.bits() as usize) < o.num_vertices() && o.out(s).is_empty()
            })
        }
        Witness::DisjointPaths {
            target,
            source,
            sink,
            paths,
        } => {
            let o = load(target)?;
            let paths: Vec<Vec<DimSet>> = paths
                .iter()
                .map(|p| p.iter().map(|v| to_dimset(v)).collect())
                .collect();
            validate_disjoint_paths(&o, to_dimset(source), to_dimset(sink), &paths)
        }
        Witness::PseudoCycle {
            target,
            base,
            cycle,
        } => {
            let o = load(target)?;
            validate_pseudo_cycle(
                &o,
                &PseudoCycleWitness {
                    base: to_dimset(base),
                    cycle: cycle.iter().map(|v| to_dimset(v)).collect(),
                },
            )
        }
        Witness::LocalUniformity {
            target,
            vertex: v,
            side,
            offender,
            dim,
        } => {
            let o = load(target)?;
            local_uniformity_violation(&o).is_some_and(|x| {
                x.vertex == to_dimset(v)
                    && side_name(x.side) == side
                    && x.offender == to_dimset(offender)
                    && x.dim == *dim
            })
        }
        Witness::Isomorphism {
            from,
            to,
            automorphism,
        } => {
            let a = load(from)?;
            let b = load(to)?;
            match automorphism.to_automorphism() {
                Ok(h) => a.apply_automorphism(&h).is_ok_and(|img| img == b),
                Err(_) => false,
            }
        }
        Witness::PropertyLCopy {
            target,
            automorphism,
        } => {
            let o = load(target)?;
            match automorphism.to_automorphism() {
                Ok(h) => o
                    .apply_automorphism(&h)
                    .is_ok_and(|img| property_l_holds(&img)),
                Err(_) => false,
            }
        }
        Witness::CensusDirectory { dir, n } => {
            let dir = resolve_dir(dir, resolve);
            verify_census_dir(&dir, *n)?.is_empty()
        }
    })
}

fn resolve_dir(dir: &str, resolve: &dyn Fn(&str) -> Result<PathBuf>) -> PathBuf {
    resolve("output_dir").unwrap_or_else(|_| PathBuf::from(dir))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matching_syntax() {
        let m = parse_matching(2, "1:2").unwrap();
        assert_eq!(m.edges(), &[(DimSet::singleton(1), 2)]);
        assert!(parse_matching(2, "1-2").is_err());
        assert!(parse_matching(2, "0:1 1:1").is_err());
    }
}
