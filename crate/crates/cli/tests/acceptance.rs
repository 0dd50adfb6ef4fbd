//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any
//! criterion fails.

use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::Instant;

use wschreier::catalog::{frames_up_to, inverse_monoids_up_to, monoids_up_to, split_extensions_up_to};
use wschreier::lambda::{central_idempotent_homs, pointwise_product, DEFAULT_ACTION_SEARCH_LIMIT};
use wschreier::{
    all_retractions, artin_glueing, artin_like_action, build_extension, enumerate_inverse_actions, enumerate_wactions,
    extension_morphism, extensions_equivalent, extract_waction, find_retraction, glueing_equals_lambda, glueing_join,
    lambda_action_leq, lambda_product, verify_split_extension, waction_leq, ActionTable, EnumerationBound,
    ExtensionCandidate, FiniteMonoid, InverseAction, InverseStructure, MeetHom, MonoidHom, Partition, SplitExtension,
    WActPair,
};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(failures: Vec<String>, summary: String) -> Outcome {
    match failures.first() {
        None => Outcome { pass: true, detail: summary },
        Some(first) => Outcome { pass: false, detail: format!("{} failures, first: {first}; {summary}", failures.len()) },
    }
}

/// Every inverse catalog pair with its enumerated actions.
fn inverse_pairs(max: usize) -> Vec<(InverseStructure, InverseStructure, Vec<InverseAction>)> {
    let inv = inverse_monoids_up_to(max);
    let mut out = Vec::new();
    for n in &inv {
        for h in &inv {
            let actions = enumerate_inverse_actions(n, h, DEFAULT_ACTION_SEARCH_LIMIT).expect("catalog search fits the limit");
            out.push((n.clone(), h.clone(), actions));
        }
    }
    out
}

fn name(m: &FiniteMonoid) -> String {
    m.name().unwrap_or("?").to_string()
}

fn lambda_products_are_weakly_schreier() -> Outcome {
    let start = Instant::now();
    let mut failures = Vec::new();
    let (mut pairs, mut actions) = (0, 0);
    for (n, h, acts) in inverse_pairs(4) {
        pairs += 1;
        for a in &acts {
            actions += 1;
            let where_ = format!("N={} H={} action={:?}", name(n.base()), name(h.base()), a.table());
            let lp = match lambda_product(a) {
                Ok(lp) => lp,
                Err(e) => {
                    failures.push(format!("{where_}: {e}"));
                    continue;
                }
            };
            let ext = lp.extension();
            let candidate = ExtensionCandidate {
                n: ext.n().clone(),
                g: ext.g().clone(),
                h: ext.h().clone(),
                k: ext.k().map().to_vec(),
                e: ext.e().map().to_vec(),
                s: ext.s().map().to_vec(),
            };
            if let Err(e) = verify_split_extension(&candidate) {
                failures.push(format!("{where_}: {e}"));
            }
            if let Err(e) = find_retraction(ext) {
                failures.push(format!("{where_}: {e}"));
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    if secs >= 60.0 {
        failures.push(format!("took {secs:.1}s"));
    }
    outcome(failures, format!("{actions} actions over {pairs} inverse catalog pairs in {secs:.2}s"))
}

fn extracted_action_is_original() -> Outcome {
    let mut failures = Vec::new();
    let mut actions = 0;
    for (n, h, acts) in inverse_pairs(4) {
        for a in &acts {
            actions += 1;
            let lp = lambda_product(a).expect("checked by criterion 1");
            let p = extract_waction(lp.extension(), &lp.first_projection());
            if p.action() != a.table() {
                failures.push(format!("N={} H={} {:?} came back as {:?}", name(n.base()), name(h.base()), a.table(), p.action()));
            }
        }
    }
    outcome(failures, format!("{actions} actions compared entrywise"))
}

fn small_catalog_pairs(limit: usize) -> Vec<(FiniteMonoid, FiniteMonoid)> {
    let cat = monoids_up_to(4);
    let mut out = Vec::new();
    for n in &cat {
        for h in &cat {
            if n.size() * h.size() <= limit {
                out.push((n.clone(), h.clone()));
            }
        }
    }
    out
}

fn round_trips() -> Outcome {
    let mut failures = Vec::new();
    let (mut pairs, mut objects) = (0, 0);
    for (n, h) in small_catalog_pairs(9) {
        pairs += 1;
        for p in enumerate_wactions(&n, &h, EnumerationBound(9)).expect("within the bound") {
            objects += 1;
            let where_ = format!("N={} H={} fibers={:?} action={:?}", name(&n), name(&h), p.relation().fibers(), p.action());
            let ext = match build_extension(&p) {
                Ok(ext) => ext,
                Err(e) => {
                    failures.push(format!("{where_}: build failed: {e}"));
                    continue;
                }
            };
            let q = match find_retraction(&ext) {
                Ok(q) => q,
                Err(e) => {
                    failures.push(format!("{where_}: {e}"));
                    continue;
                }
            };
            let back = extract_waction(&ext, &q);
            if !back.same_class(&p) {
                failures.push(format!("{where_}: extract after build changed the pair"));
                continue;
            }
            match build_extension(&back).map(|again| extensions_equivalent(&ext, &again)) {
                Ok(Ok(true)) => {}
                _ => failures.push(format!("{where_}: build after extract is not equivalent")),
            }
        }
    }
    outcome(failures, format!("{objects} pairs over {pairs} catalog (N,H) with |N|·|H| ≤ 9"))
}

fn order_characterization() -> Outcome {
    let mut failures = Vec::new();
    let mut compared = 0;
    for (n, h, acts) in inverse_pairs(3) {
        let exts: Vec<SplitExtension> = acts.iter().map(|a| lambda_product(a).unwrap().extension().clone()).collect();
        for (a, ea) in acts.iter().zip(&exts) {
            for (b, eb) in acts.iter().zip(&exts) {
                compared += 1;
                let by_action = lambda_action_leq(a, b);
                let by_morphism = extension_morphism(ea, eb).unwrap().is_some();
                if by_action != by_morphism {
                    failures.push(format!(
                        "N={} H={} {:?} vs {:?}: action order {by_action}, morphism {by_morphism}",
                        name(n.base()),
                        name(h.base()),
                        a.table(),
                        b.table()
                    ));
                }
            }
        }
    }
    outcome(failures, format!("{compared} ordered pairs, |N|,|H| ≤ 3"))
}

fn constant_actions_collapse() -> Outcome {
    let sl3 = wschreier::fixtures::sl3();
    let sl2 = wschreier::fixtures::sl2();
    let n = wschreier::inverse_structure(&sl3).unwrap();
    let h = wschreier::inverse_structure(&sl2).unwrap();
    // the non-identity element of H acts as the constant a, resp. 0
    let alpha = |u| InverseAction::new(&n, &h, ActionTable::from_fn(2, 3, |x, m| if x == 0 { m } else { u })).unwrap();
    let (a, z) = (alpha(1), alpha(2));
    let mut failures = Vec::new();
    if a.table() == z.table() {
        failures.push("tables coincide".to_string());
    }
    let (la, lz) = (lambda_product(&a).unwrap(), lambda_product(&z).unwrap());
    if !extensions_equivalent(la.extension(), lz.extension()).unwrap() {
        failures.push("extensions are not equivalent".to_string());
    }
    let pa = extract_waction(la.extension(), &la.first_projection());
    let pz = extract_waction(lz.extension(), &lz.first_projection());
    if pa.relation() != pz.relation() {
        failures.push("admissible relations differ".to_string());
    }
    let expected = vec![Partition::discrete(3), Partition::total(3)];
    if pa.relation().fibers() != expected.as_slice() {
        failures.push(format!("fibers {:?}", pa.relation().fibers()));
    }
    if !pa.same_class(&pz) {
        failures.push("actions are not equivalent".to_string());
    }
    outcome(failures, format!("|G| = {} for both, identity fiber discrete, other fiber total", la.carrier().len()))
}

fn pair_of(n: &InverseStructure, h: &InverseStructure, f: &MonoidHom) -> WActPair {
    let lp = lambda_product(&artin_like_action(n, h, f).unwrap()).unwrap();
    extract_waction(lp.extension(), &lp.first_projection())
}

/// `j` is above `a` and `b` and below every upper bound in `all`.
fn is_join(a: &WActPair, b: &WActPair, j: &WActPair, all: &[WActPair]) -> Result<usize, String> {
    if !waction_leq(a, j) || !waction_leq(b, j) {
        return Err("not an upper bound".to_string());
    }
    let uppers: Vec<&WActPair> = all.iter().filter(|u| waction_leq(a, u) && waction_leq(b, u)).collect();
    match uppers.iter().find(|u| !waction_leq(j, u)) {
        Some(u) => Err(format!("not below the upper bound {:?} / {:?}", u.relation().fibers(), u.action())),
        None => Ok(uppers.len()),
    }
}

fn artin_joins() -> Outcome {
    let mut failures = Vec::new();
    let (mut checked, mut bounds) = (0, 0);
    let inv = inverse_monoids_up_to(4);
    for n in &inv {
        for h in &inv {
            if n.base().size() * h.base().size() > 9 {
                continue;
            }
            let all: Vec<WActPair> = enumerate_wactions(n.base(), h.base(), EnumerationBound(9)).unwrap().collect();
            let homs = central_idempotent_homs(h.base(), n.base());
            for f in &homs {
                for g in &homs {
                    checked += 1;
                    let fg = pointwise_product(f, g).unwrap();
                    let (pf, pg, pj) = (pair_of(n, h, f), pair_of(n, h, g), pair_of(n, h, &fg));
                    match is_join(&pf, &pg, &pj, &all) {
                        Ok(k) => bounds += k,
                        Err(e) => failures.push(format!(
                            "N={} H={} f={:?} g={:?}: {e}",
                            name(n.base()),
                            name(h.base()),
                            f.map(),
                            g.map()
                        )),
                    }
                }
            }
        }
    }
    outcome(failures, format!("{checked} pairs (f,g), {bounds} upper bounds checked, |N|·|H| ≤ 9"))
}

fn glueing_identification() -> Outcome {
    let mut failures = Vec::new();
    let frames = frames_up_to(5);
    let (mut maps, mut joins) = (0, 0);
    for h in &frames {
        for n in &frames {
            let homs = MeetHom::all(h, n);
            for f in &homs {
                maps += 1;
                if !glueing_equals_lambda(f) {
                    failures.push(format!("Gl({:?}) from {} to {}", f.hom().map(), name(h.base()), name(n.base())));
                }
            }
            if n.size() * h.size() > 9 {
                continue;
            }
            let all: Vec<WActPair> = enumerate_wactions(n.base(), h.base(), EnumerationBound(9)).unwrap().collect();
            let pair = |f: &MeetHom| {
                let ext = artin_glueing(f).extension;
                extract_waction(&ext, &find_retraction(&ext).unwrap())
            };
            for f in &homs {
                for g in &homs {
                    joins += 1;
                    let m = glueing_join(f, g).unwrap();
                    if let Err(e) = is_join(&pair(f), &pair(g), &pair(&m), &all) {
                        failures.push(format!("Gl of {:?} ∧ {:?}: {e}", f.hom().map(), g.hom().map()));
                    }
                }
            }
        }
    }
    outcome(failures, format!("{maps} meet-homs between {} frames of size ≤ 5, {joins} joins", frames.len()))
}

fn retraction_independence() -> Outcome {
    let mut failures = Vec::new();
    let (mut exts, mut retractions) = (0, 0);
    for ext in split_extensions_up_to(4).iter().filter(|e| e.is_weakly_schreier()) {
        exts += 1;
        let qs = all_retractions(ext);
        retractions += qs.len();
        let first = extract_waction(ext, &qs[0]);
        if let Some(q) = qs[1..].iter().find(|q| !extract_waction(ext, q).same_class(&first)) {
            failures.push(format!("G={:?}: retraction {:?} disagrees", ext.g().table(), q.map()));
        }
    }
    outcome(failures, format!("{exts} weakly Schreier catalog extensions, {retractions} retractions"))
}

// ---------------------------------------------------------------------------
// CLI

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

fn run_cli(args: &[String], dir: &Path) -> (Vec<u8>, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_wschreier"))
        .args(args)
        .current_dir(dir)
        .env_remove("WSCHREIER_BOUND")
        .output()
        .expect("binary runs");
    (out.stdout, out.status.code().unwrap_or(-1))
}

fn files(ext: &str) -> Vec<String> {
    let mut v: Vec<String> = std::fs::read_dir(fixtures())
        .unwrap()
        .filter_map(|e| e.ok())
        .map(|e| e.file_name().to_string_lossy().into_owned())
        .filter(|f| f.ends_with(ext))
        .collect();
    v.sort();
    v
}

fn args(s: &[&str]) -> Vec<String> {
    s.iter().map(|x| x.to_string()).collect()
}

/// Parse the edges of a DOT file and check acyclicity and transitive
/// reduction.
fn dot_is_hasse(dot: &str) -> Result<(), String> {
    let mut nodes = BTreeSet::new();
    let mut edges: BTreeMap<String, BTreeSet<String>> = BTreeMap::new();
    for line in dot.lines().map(str::trim) {
        if let Some((a, b)) = line.trim_end_matches(';').split_once(" -> ") {
            edges.entry(a.to_string()).or_default().insert(b.to_string());
            nodes.insert(a.to_string());
            nodes.insert(b.to_string());
        } else if line.starts_with('c') && line.contains("[label") {
            nodes.insert(line.split_whitespace().next().unwrap().to_string());
        }
    }
    let reach = |from: &str, skip_direct: Option<&str>| -> BTreeSet<String> {
        let mut seen = BTreeSet::new();
        let mut stack: Vec<String> = edges
            .get(from)
            .into_iter()
            .flatten()
            .filter(|t| Some(t.as_str()) != skip_direct)
            .cloned()
            .collect();
        while let Some(x) = stack.pop() {
            if seen.insert(x.clone()) {
                stack.extend(edges.get(&x).into_iter().flatten().cloned());
            }
        }
        seen
    };
    for v in &nodes {
        if reach(v, None).contains(v) {
            return Err(format!("cycle through {v}"));
        }
        for t in edges.get(v).into_iter().flatten() {
            if reach(v, Some(t)).contains(t) {
                return Err(format!("edge {v} -> {t} is implied by a longer path"));
            }
        }
    }
    Ok(())
}

fn cli_determinism() -> Outcome {
    let dir = fixtures();
    let scratch = std::env::temp_dir().join(format!("wschreier-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&scratch).unwrap();
    let out = |f: &str| scratch.join(f).display().to_string();

    let mons = files(".mon");
    let acts = files(".act");
    let exts = files(".ext");
    let maps = files(".map");
    let mut runs: Vec<Vec<String>> = Vec::new();
    for m in &mons {
        runs.push(args(&["check", m]));
        runs.push(args(&["check", m, "--as-frame"]));
        runs.push(args(&["inverse", m]));
    }
    for a in &acts {
        runs.push(args(&["lambda", a]));
        runs.push(args(&["lambda", a, "--emit", &out(&a.replace(".act", ".ext"))]));
    }
    for f in &maps {
        runs.push(args(&["glue", f]));
        runs.push(args(&["glue", f, "--emit", &out(&f.replace(".map", ".ext"))]));
    }
    for e in &exts {
        runs.push(args(&["extract", e]));
    }
    let sides: Vec<&String> = acts.iter().chain(&exts).collect();
    for a in &sides {
        for b in &sides {
            runs.push(args(&["compare", a, b]));
        }
    }
    for f in &maps {
        for g in &maps {
            runs.push(args(&["join", f, g]));
        }
    }
    let small = ["t1.mon", "c2.mon", "sl2.mon", "sl3.mon", "r2.mon", "sl2xsl2.mon"];
    for n in small {
        for h in small {
            runs.push(args(&["enumerate", n, h]));
            runs.push(args(&["enumerate", n, h, "--actions"]));
            runs.push(args(&["enumerate", n, h, "--wactions", "--limit", "3"]));
            runs.push(args(&["poset", n, h, "--dot", &out(&format!("{n}-{h}.dot"))]));
        }
    }

    // exit-code contract on representative inputs
    let expected: Vec<(Vec<String>, i32)> = vec![
        (args(&["check", "c2.mon"]), 0),
        (args(&["check", "diamond.mon", "--as-frame"]), 1),
        (args(&["check", "nonassoc.mon"]), 1),
        (args(&["check", "syntax.mon"]), 2),
        (args(&["check", "missing.mon"]), 2),
        (args(&["inverse", "sl3.mon"]), 0),
        (args(&["inverse", "r2.mon"]), 1),
        (args(&["lambda", "alpha_a.act"]), 0),
        (args(&["lambda", "bad.act"]), 1),
        (args(&["lambda", "incomplete.act"]), 2),
        (args(&["lambda", "c2.mon"]), 2),
        (args(&["glue", "f_a.map"]), 0),
        (args(&["glue", "into_diamond.map"]), 1),
        (args(&["extract", "gl_id.ext"]), 0),
        (args(&["extract", "not_ws.ext"]), 1),
        (args(&["extract", "bad_section.ext"]), 1),
        (args(&["compare", "product.ext", "gl_id.ext"]), 0),
        (args(&["compare", "alpha_a.act", "gl_id.ext"]), 2),
        (args(&["join", "id.map", "top.map"]), 0),
        (args(&["join", "flip.map", "flip.map"]), 1),
        (args(&["join", "id.map", "f_a.map"]), 2),
        (args(&["enumerate", "sl2.mon", "sl2.mon"]), 0),
        (args(&["enumerate", "sl2.mon", "r2.mon", "--actions"]), 1),
        (args(&["enumerate", "diamond.mon", "diamond.mon"]), 2),
        (args(&["poset", "sl2.mon", "sl2.mon", "--dot", &out("contract.dot")]), 0),
        (args(&["frobnicate", "c2.mon"]), 2),
        (args(&["check", "c2.mon", "--bogus"]), 2),
        (args(&["enumerate", "sl2.mon", "sl2.mon", "--actions", "--wactions"]), 2),
    ];
    runs.extend(expected.iter().map(|(a, _)| a.clone()));

    let mut failures = Vec::new();
    let mut codes = BTreeMap::new();
    for r in &runs {
        let (first, c1) = run_cli(r, &dir);
        let (second, c2) = run_cli(r, &dir);
        if first != second || c1 != c2 {
            failures.push(format!("{r:?} differs between runs"));
        }
        if !(0..=2).contains(&c1) {
            failures.push(format!("{r:?} exited with {c1}"));
        }
        let text = String::from_utf8_lossy(&first);
        let status = text.lines().find_map(|l| l.strip_prefix("status: ")).unwrap_or("");
        let code_word = ["pass", "fail", "error"].get(c1 as usize).copied().unwrap_or("?");
        if status != code_word {
            failures.push(format!("{r:?}: status {status:?} with exit {c1}"));
        }
        codes.insert(r.clone(), c1);
    }
    for (r, want) in &expected {
        if codes[r] != *want {
            failures.push(format!("{r:?} exited {} instead of {want}", codes[r]));
        }
    }
    let mut dots = 0;
    for entry in std::fs::read_dir(&scratch).unwrap().filter_map(|e| e.ok()) {
        let p = entry.path();
        if p.extension().and_then(|e| e.to_str()) == Some("dot") {
            dots += 1;
            if let Err(e) = dot_is_hasse(&std::fs::read_to_string(&p).unwrap()) {
                failures.push(format!("{}: {e}", p.display()));
            }
        }
    }
    let _ = std::fs::remove_dir_all(&scratch);
    outcome(failures, format!("{} invocations run twice, {} exit codes pinned, {dots} DOT files checked", runs.len(), expected.len()))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 9] = [
        ("λ-products are weakly Schreier", lambda_products_are_weakly_schreier),
        ("extracted action equals the original", extracted_action_is_original),
        ("build and extract are mutually inverse", round_trips),
        ("action order matches extension morphisms", order_characterization),
        ("two constant actions on (SL3, SL2) give one extension", constant_actions_collapse),
        ("α_{f·g} is the join of α_f and α_g", artin_joins),
        ("glueings are λ-products and meets give joins", glueing_identification),
        ("Schreier retractions give one class", retraction_independence),
        ("CLI is deterministic and honours exit codes", cli_determinism),
    ];
    let mut failed = 0;
    for (i, (title, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = check();
        let verdict = if o.pass { "PASS" } else { "FAIL" };
        if !o.pass {
            failed += 1;
        }
        println!("criterion {}: {verdict} {title} ({}; {:.2}s)", i + 1, o.detail, start.elapsed().as_secs_f64());
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
