use std::error::Error;
use std::fs;
use std::path::Path;
use std::sync::Arc;

use modal_core::io;
use modal_core::kernel::Kernel;
use modal_core::nuclei::{
    check_nucleus, coframe_check, downset_frame, enumerate_nuclei, fracture_taut_witness, mk_closed, mk_dneg, mk_open,
    FinitePoset, Frame, Nucleus, Violation,
};
use modal_core::sheaves::{
    fracture_check, glue_unglue_is_iso, is_sheaf, unglue, unglue_glue_is_iso, Presheaf, PresheafMap, Subterminal,
    Topology,
};
use modal_core::suite::{self, Guards};
use modal_core::syntax::{parse, print};

use crate::report::RunReport;

type Result<T> = std::result::Result<T, Box<dyn Error>>;

const DEFAULT_BUDGET: u64 = 120;

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()).into())
}

fn load_frame(path: &Path) -> Result<(Arc<FinitePoset>, Frame)> {
    let poset = io::load_poset(path)?;
    let frame = downset_frame(&poset)?;
    Ok((Arc::new(poset), frame))
}

fn element(frame: &Frame, q: &str) -> Result<usize> {
    let bits = io::parse_down_set(frame.poset(), q)?;
    Ok(frame.index_of(bits).expect("down-sets are frame elements"))
}

fn violation(f: &Frame, v: &Violation) -> String {
    match *v {
        Violation::NotInflationary { at } => format!("not inflationary at {}", f.show(at)),
        Violation::NotIdempotent { at } => format!("not idempotent at {}", f.show(at)),
        Violation::NotMeetPreserving { left, right } => {
            format!("does not preserve the meet of {} and {}", f.show(left), f.show(right))
        }
        _ => v.to_string(),
    }
}

/// The nucleus named on the command line. A raw table that breaks the laws
/// is recorded as a failed check and yields `None`.
fn nucleus(frame: &Frame, spec: Option<&str>, table: Option<&Path>, report: &mut RunReport) -> Result<Option<Nucleus>> {
    if let Some(spec) = spec {
        return Ok(Some(io::parse_nucleus_spec(frame, spec)?));
    }
    let table = io::load_nucleus_table(frame, table.expect("clap requires one of the two"))?;
    match check_nucleus(frame, &table) {
        Ok(()) => {
            report.pass("nucleus laws");
            Ok(Some(Nucleus::new(frame, table).expect("checked")))
        }
        Err(v) => {
            report.fail("nucleus laws", violation(frame, &v));
            Ok(None)
        }
    }
}

/// The constructor names under which `j` arises.
fn constructor_names(frame: &Frame, j: &Nucleus) -> Vec<String> {
    let mut names = Vec::new();
    if *j == Nucleus::identity(frame) {
        names.push("id".to_string());
    }
    if *j == Nucleus::top(frame) {
        names.push("top".to_string());
    }
    if *j == mk_dneg(frame) {
        names.push("dneg".to_string());
    }
    for q in frame.elements() {
        if *j == mk_open(frame, q) {
            names.push(format!("open:{}", frame.show(q)));
        }
    }
    for q in frame.elements() {
        if *j == mk_closed(frame, q) {
            names.push(format!("closed:{}", frame.show(q)));
        }
    }
    names
}

fn sizes(x: &Presheaf) -> String {
    let poset = x.poset();
    let parts: Vec<String> = (0..x.points()).map(|p| format!("{}={}", poset.name(p), x.size(p))).collect();
    format!("[{}]", parts.join(" "))
}

fn map_text(h: &PresheafMap, x: &Presheaf, y: &Presheaf) -> String {
    let poset = x.poset();
    let parts: Vec<String> = (0..x.points())
        .map(|p| {
            let (from, to) = (x.labels(p), y.labels(p));
            let entries: Vec<String> = (0..x.size(p)).map(|i| format!("{}->{}", from[i], to[h.at(p, i)])).collect();
            format!("{}: {{{}}}", poset.name(p), entries.join(", "))
        })
        .collect();
    parts.join("; ")
}

pub fn check(file: &Path) -> Result<RunReport> {
    let text = read(file)?;
    let source = parse(&text).map_err(|e| format!("{}: {e}", file.display()))?;
    let result = Kernel::new().check_file(&source);
    let mut report = RunReport::new("check");
    for d in &result.checked {
        report.pass(&d.name);
    }
    if let Some(f) = &result.error {
        let kind = f.error.root().name();
        report.fail(&f.name, format!("{}:{}:{}: {kind}: {}", file.display(), f.line, f.col, f.error));
    }
    Ok(report)
}

pub fn eval(file: &Path, def: &str) -> Result<RunReport> {
    let text = read(file)?;
    let source = parse(&text).map_err(|e| format!("{}: {e}", file.display()))?;
    let Some(pos) = source.defs.iter().position(|d| d.name == def) else {
        return Err(format!("{}: no definition `{def}`", file.display()).into());
    };
    let mut report = RunReport::new("eval");
    let mut kernel = Kernel::new();
    for d in &source.defs[..=pos] {
        if let Err(e) = kernel.define(d) {
            let (line, col) = (d.line, d.col);
            report.fail(&d.name, format!("{}:{line}:{col}: {}: {e}", file.display(), e.root().name()));
            return Ok(report);
        }
    }
    report.note(format!("type: {}", print(kernel.type_of(def).unwrap())));
    report.note(format!("normal form: {}", print(&kernel.normal_form(def).unwrap())));
    report.pass(def);
    Ok(report)
}

pub fn nuclei(
    poset: &Path,
    enumerate: bool,
    coframe: bool,
    taut: Option<&str>,
    table: Option<&Path>,
) -> Result<RunReport> {
    let (_, frame) = load_frame(poset)?;
    let mut report = RunReport::new("nuclei");
    report.note(format!("frame: {} down-sets", frame.len()));
    let nothing_asked = !coframe && taut.is_none() && table.is_none();
    if enumerate || nothing_asked {
        let all = enumerate_nuclei(&frame)?;
        report.note(format!("{} nuclei:", all.len()));
        for j in &all {
            let names = constructor_names(&frame, j);
            let aka = if names.is_empty() { String::new() } else { format!(" = {}", names.join(" = ")) };
            report.note(format!("  {}{aka}", j.show(&frame)));
        }
        let bad = all.iter().find_map(|j| check_nucleus(&frame, j.table()).err().map(|v| (j, v)));
        match bad {
            None => report.pass(format!("enumeration: {} nuclei satisfy the laws", all.len())),
            Some((j, v)) => report.fail("enumeration", format!("{} {}", j.show(&frame), violation(&frame, &v))),
        }
    }
    if coframe {
        match coframe_check(&frame)? {
            None => report.pass("coframe distributivity"),
            Some(w) => {
                let family: Vec<String> = w.family.iter().map(|k| k.show(&frame)).collect();
                report.fail(
                    "coframe distributivity",
                    format!("j = {} over the family [{}]", w.j.show(&frame), family.join(", ")),
                )
            }
        }
    }
    if let Some(q) = taut {
        let qi = element(&frame, q)?;
        let name = format!("fracture tautology at q = {}", frame.show(qi));
        match fracture_taut_witness(&frame, qi) {
            None => report.pass(name),
            Some(a) => report.fail(name, format!("fails at a = {}", frame.show(a))),
        }
    }
    if let Some(path) = table {
        let table = io::load_nucleus_table(&frame, path)?;
        match check_nucleus(&frame, &table) {
            Ok(()) => report.pass(format!("nucleus laws for {}", path.display())),
            Err(v) => report.fail(format!("nucleus laws for {}", path.display()), violation(&frame, &v)),
        }
    }
    Ok(report)
}

pub fn sheafify(poset: &Path, presheaf: &Path, spec: Option<&str>, table: Option<&Path>) -> Result<RunReport> {
    let (poset_arc, frame) = load_frame(poset)?;
    let x = io::load_presheaf(presheaf, &poset_arc)?;
    let mut report = RunReport::new("sheafify");
    let Some(j) = nucleus(&frame, spec, table, &mut report)? else {
        return Ok(report);
    };
    let top = Topology::new(&frame, &j);
    report.note(format!("nucleus: {}", j.show(&frame)));
    report.note(format!("input: {x:?}"));
    let input_sheaf = is_sheaf(&x, top);
    report.note(format!("input is {}a sheaf", if input_sheaf { "" } else { "not " }));
    let (sx, unit) = modal_core::sheaves::sheafify(&x, top);
    report.note(format!("sheafification: {sx:?}"));
    report.note(format!("unit: {}", map_text(&unit, &x, &sx)));
    report.item("sheafification is a sheaf", is_sheaf(&sx, top), None);
    let (ssx, unit2) = modal_core::sheaves::sheafify(&sx, top);
    report.item("sheafification is idempotent", unit2.is_iso(&ssx), None);
    if input_sheaf {
        report.item("unit is invertible on a sheaf", unit.is_iso(&sx), None);
    }
    Ok(report)
}

pub fn fracture(poset: &Path, presheaf: &Path, q: &str) -> Result<RunReport> {
    let (poset_arc, _) = load_frame(poset)?;
    let x = io::load_presheaf(presheaf, &poset_arc)?;
    let bits = io::parse_down_set(&poset_arc, q)?;
    let q = Subterminal::new(&poset_arc, bits)?;
    let mut report = RunReport::new("fracture");
    let r = fracture_check(q, &x);
    report.note(format!("X: {}", sizes(&r.x)));
    report.note(format!("open part: {}", sizes(&r.open)));
    report.note(format!("closed part: {}", sizes(&r.closed)));
    report.note(format!("closed part of the open part: {}", sizes(&r.mixed)));
    match &r.witness {
        None => report.item("fracture square is a pullback", r.verdict, None),
        Some(w) => report.fail("fracture square is a pullback", format!("{w:?}")),
    }
    report.item("glue(unglue(X)) is isomorphic to X", glue_unglue_is_iso(&x, q), None);
    report.item("unglue(glue(unglue(X))) is isomorphic to unglue(X)", unglue_glue_is_iso(&unglue(&x, q), q)?, None);
    Ok(report)
}

pub fn factorize(poset: &Path, map: &Path, spec: Option<&str>, table: Option<&Path>) -> Result<RunReport> {
    let (poset_arc, frame) = load_frame(poset)?;
    let (x, y, h) = io::load_map(map, &poset_arc)?;
    let mut report = RunReport::new("factorize");
    let Some(j) = nucleus(&frame, spec, table, &mut report)? else {
        return Ok(report);
    };
    let top = Topology::new(&frame, &j);
    report.note(format!("nucleus: {}", j.show(&frame)));
    let fac = modal_core::sheaves::factorize(&h, &x, &y, top);
    report.note(format!("middle object: {:?}", fac.z));
    report.note(format!("left map: {}", map_text(&fac.left, &x, &fac.z)));
    report.note(format!("right map: {}", map_text(&fac.right, &fac.z, &y)));
    match fac.verify(&h, &x, &y, top) {
        Ok(()) => report.pass("composite is the map; left fibers connected; right fibers sheaves"),
        Err(e) => report.fail("factorization", e),
    }
    Ok(report)
}

pub fn suite(criteria: &[u8]) -> Result<RunReport> {
    let budget = match std::env::var("MODAL_SUITE_BUDGET") {
        Ok(s) => {
            s.trim().parse::<u64>().map_err(|_| format!("MODAL_SUITE_BUDGET must be a number of seconds, not `{s}`"))?
        }
        Err(_) => DEFAULT_BUDGET,
    };
    let guards = Guards::for_budget(budget);
    let mut report = RunReport::new("suite");
    report.note(format!("budget: {budget} s"));
    for s in guards.shrunken() {
        report.note(format!("shrunken guard: {s}"));
    }
    let criteria: Vec<u8> = if criteria.is_empty() { (1..=9).collect() } else { criteria.to_vec() };
    for o in suite::run(&criteria, &guards) {
        report.item(format!("{}. {} [{} instances]", o.criterion, o.title, o.instances), o.passed, o.witness);
    }
    Ok(report)
}
