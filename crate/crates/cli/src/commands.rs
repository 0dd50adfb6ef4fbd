use std::path::Path;

use itertools::Itertools;
use wschreier::dot::{emit_dot, hasse};
use wschreier::extension::ExtensionError;
use wschreier::format::{write_extension_doc, write_monoid, ExtensionDoc};
use wschreier::lambda::{central_idempotent_homs, pointwise_product, DEFAULT_ACTION_SEARCH_LIMIT};
use wschreier::monoid::MonoidError;
use wschreier::waction::BoundExceeded;
use wschreier::{
    all_retractions, artin_glueing, artin_like_action, check_frame, check_hom, check_inverse_action,
    enumerate_inverse_actions, enumerate_wactions, extension_morphism, extensions_equivalent, extract_waction,
    find_retraction, glueing_equals_lambda, inverse_structure, lambda_action_leq, lambda_product,
    verify_split_extension, waction_leq, ActionTable, Elem, EnumerationBound, FiniteMonoid, InverseAction,
    InverseStructure, MeetHom, SplitExtension, WActPair,
};

use crate::load;
use crate::report::{input, math, Outcome, Report, Stop};

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn elems(m: &FiniteMonoid, xs: impl IntoIterator<Item = Elem>) -> String {
    xs.into_iter().map(|x| m.label(x)).join(" ")
}

fn pairs(n: &FiniteMonoid, h: &FiniteMonoid, carrier: &[(Elem, Elem)]) -> String {
    carrier.iter().map(|&(x, y)| format!("({},{})", n.label(x), h.label(y))).join(" ")
}

fn table_rows(act: &ActionTable) -> String {
    (0..act.h_size()).map(|h| (0..act.n_size()).map(|n| act.get(h, n)).join(" ")).join(" | ")
}

fn fibers(p: &WActPair) -> String {
    p.relation()
        .fibers()
        .iter()
        .map(|f| f.blocks().iter().map(|b| format!("{{{}}}", b.iter().join(" "))).join(""))
        .join(" | ")
}

fn bound() -> Result<EnumerationBound, Stop> {
    EnumerationBound::from_env().map_err(input)
}

fn refused(e: BoundExceeded) -> Stop {
    input(e.to_string())
}

fn inverse_of(which: &str, m: &FiniteMonoid) -> Result<InverseStructure, Stop> {
    inverse_structure(m).map_err(|e| math(format!("{which} is not an inverse monoid: {e}")))
}

fn extension_error(e: ExtensionError) -> Stop {
    if e.is_format() {
        input(e.to_string())
    } else {
        math(e.to_string())
    }
}

/// Write `f` and the three monoid files `<stem>.N.mon`, `<stem>.G.mon`,
/// `<stem>.H.mon` next to it.
fn emit_extension(r: &mut Report, f: &Path, name: &str, ext: &SplitExtension) -> Outcome {
    let stem = f.file_stem().and_then(|s| s.to_str()).ok_or_else(|| input(format!("{}: no file stem", f.display())))?;
    let dir = f.parent().unwrap_or(Path::new(""));
    let mut refs = Vec::new();
    for (part, m) in [("N", ext.n()), ("G", ext.g()), ("H", ext.h())] {
        let file = format!("{stem}.{part}.mon");
        let path = dir.join(&file);
        std::fs::write(&path, write_monoid(m, Some(&format!("{name}.{part}"))))
            .map_err(|e| input(format!("{}: {e}", path.display())))?;
        r.add("emitted", path.display());
        refs.push(file);
    }
    let doc = ExtensionDoc {
        name: name.to_string(),
        n: refs[0].clone(),
        g: refs[1].clone(),
        h: refs[2].clone(),
        k: ext.k().map().to_vec(),
        e: ext.e().map().to_vec(),
        s: ext.s().map().to_vec(),
    };
    std::fs::write(f, write_extension_doc(&doc)).map_err(|e| input(format!("{}: {e}", f.display())))?;
    r.add("emitted", f.display());
    Ok(())
}

pub fn check(r: &mut Report, path: &Path, as_frame: bool) -> Outcome {
    let doc = load::monoid_doc(path)?;
    let m = match doc.build() {
        Ok(m) => m,
        Err(MonoidError::Format(e)) => return Err(input(format!("{}: {e}", path.display()))),
        Err(e) => {
            r.fail("monoid", format!("invalid ({e})"));
            return Ok(());
        }
    };
    r.add("monoid", "valid");
    r.add("name", &doc.name);
    r.add("size", m.size());
    r.add("identity", m.label(m.identity()));
    r.add("idempotents", elems(&m, m.idempotents()));
    r.add("commutative", yes_no(m.is_commutative()));
    match inverse_structure(&m) {
        Ok(_) if m.is_group() => r.add("inverse", "yes (group)"),
        Ok(_) => r.add("inverse", "yes"),
        Err(e) => r.add("inverse", format!("no ({e})")),
    }
    if as_frame {
        match check_frame(&m) {
            Ok(f) => r.add("frame", format!("yes (top {}, bottom {})", m.label(f.top()), m.label(f.bottom()))),
            Err(e) => r.fail("frame", format!("no ({e})")),
        }
    }
    Ok(())
}

pub fn inverse(r: &mut Report, path: &Path) -> Outcome {
    let m = load::monoid(path)?;
    let inv = inverse_of("the monoid", &m)?;
    r.add("inverse", "yes");
    for a in m.elements() {
        r.add(format!("inverse {}", m.label(a)), m.label(inv.inverse(a)));
    }
    r.add("idempotents", elems(&m, m.idempotents()));
    Ok(())
}

fn inverse_action(a: &load::Action) -> Result<InverseAction, Stop> {
    let n = inverse_of("N", &a.n)?;
    let h = inverse_of("H", &a.h)?;
    check_inverse_action(&n, &h, a.table.clone()).map_err(|e| math(format!("not an action: {e}")))
}

pub fn lambda(r: &mut Report, path: &Path, emit: Option<&Path>) -> Outcome {
    let a = load::action(path)?;
    r.add("action", &a.name);
    r.add("sizes", format!("|N|={} |H|={}", a.n.size(), a.h.size()));
    let act = inverse_action(&a)?;
    r.add("action_laws", "ok");
    let lp = lambda_product(&act).map_err(|e| math(e.to_string()))?;
    r.add("carrier", pairs(&a.n, &a.h, lp.carrier()));
    r.add("size", lp.carrier().len());
    r.add("split_extension", "valid");
    let ext = lp.extension();
    r.add("weakly_schreier", yes_no(find_retraction(ext).is_ok()));
    let q = lp.first_projection();
    r.add("retraction", elems(&a.n, q.map().iter().copied()));
    let back = extract_waction(ext, &q);
    let matches = back.action() == act.table();
    if matches {
        r.add("extracted_action_matches", "yes");
    } else {
        r.fail("extracted_action_matches", "no");
    }
    if let Some(f) = emit {
        emit_extension(r, f, &a.name, ext)?;
    }
    Ok(())
}

fn meet_hom(m: &load::Map) -> Result<MeetHom, Stop> {
    let h = check_frame(&m.source).map_err(|e| math(format!("source is not a frame: {e}")))?;
    let n = check_frame(&m.target).map_err(|e| math(format!("target is not a frame: {e}")))?;
    MeetHom::new(&h, &n, &m.values).map_err(|e| math(format!("not meet-preserving: {e}")))
}

pub fn glue(r: &mut Report, path: &Path, emit: Option<&Path>) -> Outcome {
    let m = load::map(path)?;
    r.add("map", &m.name);
    let f = meet_hom(&m)?;
    r.add("meet_hom", "yes");
    let gl = artin_glueing(&f);
    r.add("carrier", pairs(&m.target, &m.source, &gl.carrier));
    r.add("size", gl.carrier.len());
    r.add("frame", "yes");
    if glueing_equals_lambda(&f) {
        r.add("lambda_product_agrees", "yes");
    } else {
        r.fail("lambda_product_agrees", "no");
    }
    if let Some(out) = emit {
        emit_extension(r, out, &m.name, &gl.extension)?;
    }
    Ok(())
}

pub fn extract(r: &mut Report, path: &Path) -> Outcome {
    let e = load::extension(path)?;
    r.add("extension", &e.name);
    let ext = verify_split_extension(&e.candidate).map_err(extension_error)?;
    r.add("split_extension", "valid");
    let q = find_retraction(&ext).map_err(extension_error)?;
    r.add("weakly_schreier", "yes");
    r.add("retraction", elems(ext.n(), q.map().iter().copied()));
    let p = extract_waction(&ext, &q);
    let all = all_retractions(&ext);
    r.add("retractions", all.len());
    if all.iter().all(|q2| extract_waction(&ext, q2).same_class(&p)) {
        r.add("retractions_agree", "yes");
    } else {
        r.fail("retractions_agree", "no");
    }
    r.add("classes", p.relation().num_classes());
    r.add("fibers", fibers(&p));
    r.add("action", table_rows(p.action()));
    Ok(())
}

enum Side {
    Action(Box<InverseAction>, SplitExtension),
    Extension(SplitExtension),
}

impl Side {
    fn extension(&self) -> &SplitExtension {
        match self {
            Side::Action(_, e) | Side::Extension(e) => e,
        }
    }
}

fn side(path: &Path) -> Result<Side, Stop> {
    match path.extension().and_then(|e| e.to_str()) {
        Some("act") => {
            let act = inverse_action(&load::action(path)?)?;
            let lp = lambda_product(&act).map_err(|e| math(e.to_string()))?;
            Ok(Side::Action(Box::new(act), lp.extension().clone()))
        }
        Some("ext") => {
            let e = load::extension(path)?;
            Ok(Side::Extension(verify_split_extension(&e.candidate).map_err(extension_error)?))
        }
        _ => Err(input(format!("{}: expected a .act or .ext file", path.display()))),
    }
}

pub fn compare(r: &mut Report, a: &Path, b: &Path) -> Outcome {
    let (sa, sb) = (side(a)?, side(b)?);
    let (ea, eb) = (sa.extension(), sb.extension());
    if ea.n() != eb.n() || ea.h() != eb.h() {
        return Err(input("the two sides are over different N or H"));
    }
    let ab = extension_morphism(ea, eb).map_err(extension_error)?;
    let ba = extension_morphism(eb, ea).map_err(extension_error)?;
    r.add("a_le_b", yes_no(ab.is_some()));
    r.add("b_le_a", yes_no(ba.is_some()));
    if let Some(f) = &ab {
        r.add("morphism_a_b", f.map().iter().join(" "));
    }
    r.add("equivalent", yes_no(extensions_equivalent(ea, eb).map_err(extension_error)?));
    if let (Side::Action(x, _), Side::Action(y, _)) = (&sa, &sb) {
        let (xy, yx) = (lambda_action_leq(x, y), lambda_action_leq(y, x));
        r.add("action_order", format!("a_le_b={} b_le_a={}", yes_no(xy), yes_no(yx)));
        if xy == ab.is_some() && yx == ba.is_some() {
            r.add("orders_agree", "yes");
        } else {
            r.fail("orders_agree", "no");
        }
    }
    Ok(())
}

pub fn join(r: &mut Report, fp: &Path, gp: &Path) -> Outcome {
    let (fm, gm) = (load::map(fp)?, load::map(gp)?);
    if fm.source != gm.source || fm.target != gm.target {
        return Err(input("the two maps have different source or target"));
    }
    let (hm, nm) = (&fm.source, &fm.target);
    let hom = |m: &load::Map| check_hom(hm, nm, &m.values).map_err(|e| math(format!("{}: {e}", m.name)));
    let (f, g) = (hom(&fm)?, hom(&gm)?);
    let n = inverse_of("the target", nm)?;
    let h = inverse_of("the source", hm)?;
    let fg = pointwise_product(&f, &g).map_err(|e| math(e.to_string()))?;
    r.add("product", elems(nm, fg.map().iter().copied()));
    let pair_of = |m: &wschreier::MonoidHom| -> Result<WActPair, Stop> {
        let act = artin_like_action(&n, &h, m).map_err(|e| math(e.to_string()))?;
        let lp = lambda_product(&act).map_err(|e| math(e.to_string()))?;
        Ok(extract_waction(lp.extension(), &lp.first_projection()))
    };
    let (pf, pg, pj) = (pair_of(&f)?, pair_of(&g)?, pair_of(&fg)?);
    r.add("join_action", table_rows(pj.action()));
    if waction_leq(&pf, &pj) && waction_leq(&pg, &pj) {
        r.add("upper_bound", "yes");
    } else {
        r.fail("upper_bound", "no");
    }
    match enumerate_wactions(nm, hm, bound()?) {
        Ok(all) => {
            let uppers: Vec<WActPair> = all.filter(|u| waction_leq(&pf, u) && waction_leq(&pg, u)).collect();
            if uppers.iter().all(|u| waction_leq(&pj, u)) {
                r.add("least", format!("yes (below all {} enumerated upper bounds)", uppers.len()));
            } else {
                r.fail("least", "no");
            }
        }
        Err(e) => r.add("least", format!("skipped ({e})")),
    }
    r.add("central_idempotent_homs", central_idempotent_homs(hm, nm).len());
    Ok(())
}

pub fn enumerate(r: &mut Report, np: &Path, hp: &Path, actions: bool, limit: Option<usize>) -> Outcome {
    let (nm, hm) = (load::monoid(np)?, load::monoid(hp)?);
    let shown = limit.unwrap_or(usize::MAX);
    if actions {
        r.add("mode", "actions");
        let (n, h) = (inverse_of("N", &nm)?, inverse_of("H", &hm)?);
        let all = enumerate_inverse_actions(&n, &h, DEFAULT_ACTION_SEARCH_LIMIT).map_err(|e| input(e.to_string()))?;
        r.add("count", all.len());
        for (i, a) in all.iter().take(shown).enumerate() {
            r.add(format!("action {i}"), table_rows(a.table()));
        }
    } else {
        r.add("mode", "wactions");
        let all: Vec<WActPair> = enumerate_wactions(&nm, &hm, bound()?).map_err(refused)?.collect();
        r.add("count", all.len());
        for (i, p) in all.iter().take(shown).enumerate() {
            r.add(
                format!("pair {i}"),
                format!("size={} fibers={} action={}", p.relation().num_classes(), fibers(p), table_rows(p.action())),
            );
        }
    }
    Ok(())
}

pub fn poset(r: &mut Report, np: &Path, hp: &Path, out: &Path) -> Outcome {
    let (nm, hm) = (load::monoid(np)?, load::monoid(hp)?);
    let all: Vec<WActPair> = enumerate_wactions(&nm, &hm, bound()?).map_err(refused)?.collect();
    let diagram = hasse(all.len(), |a, b| waction_leq(&all[a], &all[b]));
    let dot = emit_dot(&all, waction_leq);
    std::fs::write(out, &dot).map_err(|e| input(format!("{}: {e}", out.display())))?;
    r.add("pairs", all.len());
    r.add("classes", diagram.classes.len());
    r.add("covers", diagram.covers.len());
    r.add("dot", out.display());
    Ok(())
}
