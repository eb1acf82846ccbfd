//! Acceptance checks, one line per criterion. Runs without the libtest harness.

use std::time::{Duration, Instant};

use num_traits::Signed;
use uso_cli::commands::{cmd_census, verify_census_dir, CensusArgs};
use uso_core::analysis::{
    check_locally_uniform, directed_cycle, find_pseudo_cycle, holt_klee, is_pseudo_uso, is_uso,
    longest_directed_path_length, pseudo_outdegree_parity, validate_disjoint_paths,
    validate_pseudo_cycle, OutdegreeParity,
};
use uso_core::constructions::{
    blowup_pmatrix, is_kaleidoscope, pcube_kaleidoscope, product_kaleidoscope, recursively_combed,
    CombedSpec,
};
use uso_core::cube::Face;
use uso_core::iso::{
    all_automorphisms, are_isomorphic, census, enumerate_usos, exists_property_l_copy,
};
use uso_core::lcp::{dcube_outmap, facet_rhs, is_p_matrix, pcube_outmap, schur_reduce};
use uso_core::lgraph::{
    all_orientations, has_property_l, lgraph, property_l_holds, validate_property_l_witness,
};
use uso_core::linalg::{rat_vec, Rational, RationalMatrix};
use uso_core::random::{random_diag_dominant, random_generic_rhs, random_spd, seeded_rng};
use uso_core::{DimSet, OutMap};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn spinner_matrix() -> RationalMatrix {
    RationalMatrix::from_i64_rows(&[[1, 2, 0], [0, 1, 2], [2, 0, 1]]).unwrap()
}

fn spinner() -> OutMap {
    pcube_outmap(&spinner_matrix(), &rat_vec(&[1, 1, 1])).unwrap()
}

fn table(rows: &[[i64; 2]; 4]) -> OutMap {
    // rows are (vertex index, mask) pairs for a 2-cube
    let mut t = vec![0u32; 4];
    for [v, m] in rows {
        t[*v as usize] = *m as u32;
    }
    OutMap::new(2, t).unwrap()
}

fn ac1() -> Outcome {
    let o = spinner();
    ensure(is_uso(&o), "spinner P-cube is not a USO")?;
    let g = lgraph(&o, DimSet::EMPTY);
    ensure(
        g.has_arc(1, 3) && g.has_arc(3, 2) && g.has_arc(2, 1),
        format!("empty-set L-graph arcs are {:?}", g.arcs()),
    )?;
    let r = has_property_l(&o);
    let w = r.witness.clone().ok_or("spinner passes property L")?;
    ensure(
        !r.holds && w.vertex == DimSet::EMPTY && w.cycle == vec![1, 3, 2],
        "wrong witness",
    )?;
    ensure(
        validate_property_l_witness(&o, &w),
        "witness does not validate",
    )?;
    let printed = RationalMatrix::from_i64_rows(&[[1, 2, 0], [0, 1, 2], [2, 1, 0]]).unwrap();
    ensure(
        !is_p_matrix(&printed).unwrap(),
        "row (2,1,0) variant unexpectedly a P-matrix",
    )?;
    Ok(format!(
        "spinner table {:?}, cycle 1->3->2->1 at {{}}; uses row 3 = (2,0,1), the (2,1,0) printing is not a P-matrix",
        o.table()
    ))
}

fn ac2() -> Outcome {
    let m = RationalMatrix::from_i64_rows(&[[5, -10, 2], [-10, 41, -6], [2, -6, 1]]).unwrap();
    let d = dcube_outmap(&m, &rat_vec(&[1, -7, 1])).map_err(|e| e.to_string())?;
    ensure(has_property_l(&d).holds, "D-cube fails property L")?;
    let cyc = directed_cycle(&d).ok_or("D-cube is acyclic")?;
    let a = are_isomorphic(&spinner(), &d)
        .map_err(|e| e.to_string())?
        .ok_or("not isomorphic to the spinner")?;
    ensure(
        spinner().apply_automorphism(&a).unwrap() == d,
        "witness does not map",
    )?;
    Ok(format!(
        "D-cube {:?} has property L, cycle of length {}, spinner -> D-cube via {a}",
        d.table(),
        cyc.len()
    ))
}

fn ac3() -> Outcome {
    let eye = table(&[[0, 0], [1, 1], [2, 2], [3, 3]]);
    let bow = table(&[[0, 0], [1, 3], [2, 2], [3, 1]]);
    let twin = table(&[[0, 0], [1, 3], [2, 3], [3, 0]]);
    let cyc = table(&[[0, 2], [1, 1], [2, 1], [3, 2]]);
    for (name, o) in [("eye", &eye), ("bow", &bow)] {
        ensure(
            is_uso(o) && property_l_holds(o),
            format!("{name} is not a property-L USO"),
        )?;
    }
    for (name, o) in [("twin peak", &twin), ("cycle", &cyc)] {
        ensure(
            is_pseudo_uso(o).unwrap(),
            format!("{name} is not a pseudo-USO"),
        )?;
        ensure(
            !lgraph(o, DimSet::EMPTY).is_acyclic(),
            format!("{name} has an acyclic L-graph at {{}}"),
        )?;
    }
    ensure(
        twin.reverse(DimSet::singleton(2)) == cyc,
        "twin peak reversed along 2 is not the cycle",
    )?;
    Ok("eye/bow property L; twin peak/cycle pseudo with cyclic L-graphs; twin peak reversed along 2 = cycle".into())
}

fn ac4() -> Outcome {
    let mut total = 0;
    let mut with_l = 0;
    for o in all_orientations(3).unwrap() {
        total += 1;
        if property_l_holds(&o) {
            with_l += 1;
            ensure(
                is_uso(&o),
                format!("property-L table {:?} is not a USO", o.table()),
            )?;
        }
    }
    ensure(total == 4096, format!("{total} tables"))?;
    Ok(format!(
        "{total} tables, {with_l} with property L, all USOs"
    ))
}

fn ac5() -> Outcome {
    let mut counts = Vec::new();
    for n in 1..=3 {
        let mut all: Vec<OutMap> = (0..1u64 << CombedSpec::spec_len(n))
            .map(|i| recursively_combed(&CombedSpec::from_index(n, i).unwrap()))
            .collect();
        ensure(
            all.iter().all(|o| is_uso(o) && property_l_holds(o)),
            format!("a combed {n}-cube fails"),
        )?;
        all.sort();
        all.dedup();
        counts.push(all.len());
    }
    ensure(counts == vec![2, 8, 128], format!("counts {counts:?}"))?;
    Ok(format!("distinct combed USOs for n=1,2,3: {counts:?}"))
}

fn ac6() -> Outcome {
    let c = census(3).map_err(|e| e.to_string())?;
    let without = c.iter().filter(|r| !r.has_property_l_member).count();
    let total: u64 = c.iter().map(|r| r.class_size).sum();
    ensure(
        c.len() == 19 && without == 0 && total == 744,
        format!("{} classes, {without} without L, {total} USOs", c.len()),
    )?;
    Ok(format!(
        "{} classes over {total} USOs, all with a property-L member",
        c.len()
    ))
}

fn ac7() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let out = dir.path().join("census-4");
    let args = CensusArgs {
        n: 4,
        heavy: true,
        resume: false,
        jobs: None,
        out: out.clone(),
        max_shards: Some(100),
    };
    // interrupted run, then resume from the checkpoint
    let partial = cmd_census(&args).map_err(|e| e.to_string())?;
    ensure(!partial.holds, "partial run claims completion")?;
    let full = cmd_census(&CensusArgs {
        resume: true,
        max_shards: None,
        ..args
    })
    .map_err(|e| e.to_string())?;
    let classes = full.details["classes"].as_u64().unwrap_or(0);
    let without = full.details["classes_without_property_l_member"]
        .as_u64()
        .unwrap_or(0);
    let usos = full.details["usos"].as_u64().unwrap_or(0);
    ensure(
        classes == 14614 && without == 9 && usos == 5_541_744,
        format!("{classes} classes, {without} without L, {usos} USOs"),
    )?;
    let problems = verify_census_dir(&out, 4).map_err(|e| e.to_string())?;
    ensure(
        problems.is_empty(),
        format!("re-verification: {:?}", problems.first()),
    )?;
    Ok(format!(
        "{classes} classes, {without} without a property-L member, {usos} USOs; resumed after 100 shards; all class files re-verified"
    ))
}

fn ac8() -> Outcome {
    let phi = spinner();
    let product = product_kaleidoscope(&phi).map_err(|e| e.to_string())?;
    let k =
        pcube_kaleidoscope(&spinner_matrix(), &rat_vec(&[1, 1, 1])).map_err(|e| e.to_string())?;
    let expected = RationalMatrix::from_i64_rows(&[
        [1, 2, 0, 2, 2, 0],
        [0, 1, 2, 0, 2, 2],
        [2, 0, 1, 2, 0, 2],
        [0, 2, 0, 1, 2, 0],
        [0, 0, 2, 0, 1, 2],
        [2, 0, 0, 2, 0, 1],
    ])
    .unwrap();
    ensure(
        k.matrix == expected,
        "blown-up matrix differs from the 6x6 example",
    )?;
    ensure(k.rhs == rat_vec(&[1; 6]), "rhs is not all ones")?;
    let count = all_automorphisms(6).unwrap().count();
    ensure(count == 46080, format!("{count} automorphisms"))?;
    for (name, psi) in [("product", &product), ("P-matrix", &k.outmap)] {
        ensure(
            is_uso(psi) && is_kaleidoscope(psi, &phi).unwrap(),
            format!("{name} is not a kaleidoscope"),
        )?;
        if let Some(a) = exists_property_l_copy(psi).map_err(|e| e.to_string())? {
            return Err(format!("{name} kaleidoscope has a property-L copy via {a}"));
        }
    }
    Ok(format!(
        "both 6-dim kaleidoscopes: none of the {count} automorphic images has property L"
    ))
}

fn ac9() -> Outcome {
    ensure(
        is_p_matrix(&blowup_pmatrix(&spinner_matrix()).unwrap()).unwrap(),
        "spinner blow-up",
    )?;
    let mut rng = seeded_rng(909);
    for k in 0..20 {
        let n = 1 + k % 5;
        let a = random_diag_dominant(&mut rng, n);
        let m = blowup_pmatrix(&a).map_err(|e| e.to_string())?;
        ensure(
            is_p_matrix(&m).unwrap(),
            format!("blow-up {k} (n = {n}) is not a P-matrix"),
        )?;
    }
    Ok("spinner and 20 random diagonally dominant blow-ups pass all principal minors".into())
}

struct Instance {
    m: RationalMatrix,
    q: Vec<Rational>,
    o: OutMap,
}

fn dcube_suite() -> Vec<Instance> {
    let mut rng = seeded_rng(1010);
    (0..100)
        .map(|k| {
            let n = 1 + k % 6;
            let m = random_spd(&mut rng, n);
            let (q, o) = random_generic_rhs(&mut rng, &m, 200).expect("generic rhs");
            Instance { m, q, o }
        })
        .collect()
}

fn check_instance(inst: &Instance) -> Result<(), String> {
    let Instance { m, q, o } = inst;
    let n = o.dim();
    ensure(is_uso(o) && property_l_holds(o), "not a property-L USO")?;
    let g = lgraph(o, DimSet::EMPTY);
    for s in 1..=n {
        for t in (1..=n).filter(|&t| t != s) {
            let (s0, t0) = (s - 1, t - 1);
            let moved = &q[t0] - &m[(t0, s0)] * &q[s0] / &m[(s0, s0)];
            let predicted = (&q[t0] * moved).is_negative();
            ensure(
                g.has_arc(s, t) == predicted,
                format!("arc criterion at ({s},{t})"),
            )?;
            if g.has_arc(s, t) {
                let left = &m[(s0, s0)] * &q[t0] * &q[t0];
                let right = &m[(t0, t0)] * &q[s0] * &q[s0];
                ensure(
                    left.is_positive() && left < right,
                    format!("chain inequality at ({s},{t})"),
                )?;
            }
        }
    }
    for k in 1..=n {
        let face = Face::new(DimSet::singleton(k), DimSet::full(n)).unwrap();
        let reduced = schur_reduce(m, k).map_err(|e| e.to_string())?;
        let rhs = facet_rhs(m, q, k).map_err(|e| e.to_string())?;
        let sub = dcube_outmap(&reduced, &rhs).map_err(|e| e.to_string())?;
        ensure(
            o.face_subcube(&face).unwrap() == sub,
            format!("facet {k} differs from the reduced D-cube"),
        )?;
    }
    Ok(())
}

fn ac10(suite: &[Instance]) -> Outcome {
    for (k, inst) in suite.iter().enumerate() {
        check_instance(inst).map_err(|e| format!("instance {k}: {e}"))?;
    }
    Ok(format!("{} random SPD instances (n <= 6): property L, arc criterion, chain inequality, facet reduction", suite.len()))
}

fn ac11() -> Outcome {
    let mut counts = Vec::new();
    let mut walks = 0;
    for n in 2..=3 {
        let mut count = 0;
        for o in all_orientations(n).unwrap() {
            if !is_pseudo_uso(&o).unwrap() {
                continue;
            }
            count += 1;
            let sinks = o.vertices().filter(|&v| o.out(v).is_empty()).count();
            ensure(
                sinks == 0 || sinks == 2,
                format!("{sinks} sinks in {:?}", o.table()),
            )?;
            ensure(
                pseudo_outdegree_parity(&o) != OutdegreeParity::Mixed,
                format!("mixed parity in {:?}", o.table()),
            )?;
            if n == 3 && o.out(DimSet::EMPTY).is_empty() {
                let w = find_pseudo_cycle(&o, DimSet::EMPTY).map_err(|e| e.to_string())?;
                ensure(
                    validate_pseudo_cycle(&o, &w),
                    "pseudo cycle does not validate",
                )?;
                walks += 1;
            }
        }
        counts.push(count);
    }
    ensure(walks > 0, "no 3-dim pseudo-USO with a sink at {}")?;
    Ok(format!(
        "pseudo-USOs for n=2,3: {counts:?}; {walks} validated cycle walks"
    ))
}

fn ac12(suite: &[Instance]) -> Outcome {
    let hk = holt_klee(&spinner()).unwrap();
    ensure(
        hk.holds && validate_disjoint_paths(&spinner(), hk.source, hk.sink, &hk.paths),
        "spinner fails",
    )?;
    let failing = enumerate_usos(3)
        .unwrap()
        .find(|o| !holt_klee(o).unwrap().holds)
        .ok_or("no dim-3 USO fails Holt-Klee")?;
    for (k, inst) in suite.iter().enumerate() {
        let r = holt_klee(&inst.o).unwrap();
        ensure(
            r.holds && validate_disjoint_paths(&inst.o, r.source, r.sink, &r.paths),
            format!("P-cube {k} fails Holt-Klee"),
        )?;
    }
    Ok(format!(
        "spinner passes; first failing dim-3 USO {:?}; all {} suite P-cubes pass",
        failing.table(),
        suite.len()
    ))
}

fn ac13() -> Outcome {
    let mut count = 0;
    let mut longest = 0;
    for o in enumerate_usos(3).unwrap() {
        if check_locally_uniform(&o).unwrap() {
            count += 1;
            let len = longest_directed_path_length(&o).unwrap();
            ensure(len <= 6, format!("path of length {len} in {:?}", o.table()))?;
            longest = longest.max(len);
        }
    }
    Ok(format!(
        "{count} locally uniform dim-3 USOs, longest directed path {longest}"
    ))
}

fn main() {
    // libtest arguments such as --nocapture are accepted and ignored
    let mut failures = 0;
    let mut report = |id: &str, budget: Duration, f: &mut dyn FnMut() -> Outcome| {
        let started = Instant::now();
        let outcome = f();
        let took = started.elapsed();
        let outcome = match outcome {
            Ok(msg) if took > budget => Err(format!("{msg}; took {took:?}, budget {budget:?}")),
            other => other,
        };
        match outcome {
            Ok(msg) => println!("PASS {id}: {msg} ({:.2?})", took),
            Err(msg) => {
                failures += 1;
                println!("FAIL {id}: {msg} ({:.2?})", took)
            }
        }
    };
    let secs = Duration::from_secs;
    report("AC1", secs(1), &mut ac1);
    report("AC2", secs(1), &mut ac2);
    report("AC3", secs(1), &mut ac3);
    report("AC4", secs(5), &mut ac4);
    report("AC5", secs(5), &mut ac5);
    report("AC6", secs(60), &mut ac6);
    report("AC7", secs(3600), &mut ac7);
    report("AC8", secs(600), &mut ac8);
    report("AC9", secs(120), &mut ac9);
    let mut suite = Vec::new();
    report("AC10", secs(300), &mut || {
        suite = dcube_suite();
        ac10(&suite)
    });
    report("AC11", secs(30), &mut ac11);
    report("AC12", secs(120), &mut || ac12(&suite));
    report("AC13", secs(120), &mut ac13);
    if failures > 0 {
        println!("{failures} acceptance criteria failed");
        std::process::exit(1);
    }
}
