//! Helpers shared by the integration tests: independent oracles, a noisy
//! document renderer, model mutators and fixture facts.
#![allow(dead_code)]

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::{Command, Output};

use phase::model::*;
use rand::seq::SliceRandom;
use rand::Rng;

pub const FIXTURES: [&str; 4] = ["c1", "c1_v2", "c2", "c3"];
pub const CASES: [&str; 3] = ["c1", "c2", "c3"];

/// (boundary, in-scope nodes, in-scope edges).
pub type BoundarySize = (&'static str, usize, usize);

/// Hand-counted boundary scopes per case.
pub const BOUNDARY_SIZES: [(&str, [BoundarySize; 3]); 3] = [
    ("c1", [("SB1", 5, 7), ("SB2", 4, 4), ("SB3", 4, 7)]),
    ("c2", [("SB1", 3, 5), ("SB2", 3, 5), ("SB3", 3, 4)]),
    ("c3", [("SB1", 4, 7), ("SB2", 4, 6), ("SB3", 3, 4)]),
];

pub fn crate_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

pub fn fixture_path(name: &str) -> String {
    format!("fixtures/{name}.phase")
}

pub fn fixture_text(name: &str) -> String {
    std::fs::read_to_string(crate_dir().join(fixture_path(name))).unwrap()
}

pub fn fixture(name: &str) -> Model {
    let path = fixture_path(name);
    phase::dsl::parse(&fixture_text(name), &path)
        .into_result()
        .unwrap_or_else(|d| panic!("{path}: {d:?}"))
}

/// Runs the `phase` binary from the crate directory.
pub fn phase(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_phase"))
        .args(args)
        .current_dir(crate_dir())
        .env_remove("NO_COLOR")
        .output()
        .expect("spawning phase")
}

pub fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

pub fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

// ---------------------------------------------------------------------------
// validate oracle

/// (code, subject, offending reference) for one expected diagnostic.
pub type Finding = (String, ElementRef, Option<String>);

fn r(class: ElementClass, id: &str) -> ElementRef {
    ElementRef::new(class, id)
}

/// Expected validation findings, computed by scanning the element lists
/// for every reference.
pub fn oracle_validate(m: &Model) -> Vec<Finding> {
    let mut out: Vec<Finding> = Vec::new();
    let node = |id: &Ident| m.nodes.iter().any(|n| n.id == *id);
    let edge = |id: &Ident| m.edges.iter().find(|e| e.id == *id);
    let dangling = |out: &mut Vec<Finding>, ok: bool, subject: ElementRef, id: &Ident| {
        if !ok {
            out.push(("V001".into(), subject, Some(id.to_string())));
        }
    };

    for b in &m.boundaries {
        for n in &b.includes {
            dangling(&mut out, node(n), r(ElementClass::Boundary, b.id.as_str()), n);
        }
    }
    for h in &m.hazards {
        let me = r(ElementClass::Hazard, h.id.as_str());
        dangling(&mut out, m.boundaries.iter().any(|b| b.id == h.boundary), me.clone(), &h.boundary);
        if h.leads_to.is_empty() {
            out.push(("V004".into(), me.clone(), None));
        }
        for l in &h.leads_to {
            dangling(&mut out, m.losses.iter().any(|x| x.id == *l), me.clone(), l);
        }
    }
    for e in &m.edges {
        let me = r(ElementClass::Edge, e.id.as_str());
        dangling(&mut out, node(&e.source), me.clone(), &e.source);
        dangling(&mut out, node(&e.target), me.clone(), &e.target);
        if e.source == e.target {
            out.push(("W001".into(), me, None));
        }
    }
    for u in &m.ucas {
        let me = r(ElementClass::Uca, u.id.as_str());
        if let Some(s) = &u.source {
            dangling(&mut out, node(s), me.clone(), s);
        }
        let target = edge(&u.action);
        dangling(&mut out, target.is_some(), me.clone(), &u.action);
        if let Some(e) = target {
            if e.kind != EdgeKind::ControlAction {
                out.push(("V003".into(), me.clone(), Some(u.action.to_string())));
            }
            if let Some(s) = &u.source {
                if *s != e.source {
                    out.push(("V002".into(), me.clone(), Some(s.to_string())));
                }
            }
        }
        if u.hazards.is_empty() {
            out.push(("V004".into(), me.clone(), None));
        }
        for h in &u.hazards {
            dangling(&mut out, m.hazards.iter().any(|x| x.id == *h), me.clone(), h);
        }
    }
    for s in &m.scenarios {
        let me = r(ElementClass::Scenario, s.id.as_str());
        dangling(&mut out, m.ucas.iter().any(|u| u.id == s.uca), me.clone(), &s.uca);
        for e in &s.elements {
            dangling(&mut out, node(e) || edge(e).is_some(), me.clone(), e);
        }
    }
    for q in &m.requirements {
        let me = r(ElementClass::Requirement, q.id.as_str());
        if q.scenarios.is_empty() {
            out.push(("V004".into(), me.clone(), None));
        }
        for s in &q.scenarios {
            dangling(&mut out, m.scenarios.iter().any(|x| x.id == *s), me.clone(), s);
        }
    }
    for (i, a) in m.assessments.iter().enumerate() {
        let me = ElementRef::new(ElementClass::Assessment, format!("{}/{}", a.action, a.guide_type));
        match edge(&a.action) {
            None => out.push(("V001".into(), me.clone(), Some(a.action.to_string()))),
            Some(e) if e.kind != EdgeKind::ControlAction => {
                out.push(("V003".into(), me.clone(), Some(a.action.to_string())))
            }
            Some(_) => {}
        }
        let earlier = m.assessments[..i]
            .iter()
            .any(|b| b.action == a.action && b.guide_type == a.guide_type);
        if earlier {
            out.push(("V005".into(), me, None));
        }
    }
    out.sort();
    out
}

pub fn findings(diags: &[phase::Diagnostic]) -> Vec<Finding> {
    let mut out: Vec<Finding> = diags
        .iter()
        .map(|d| (d.code.to_string(), d.subject.clone().expect("validation diagnostics name a subject"), d.reference.clone()))
        .collect();
    out.sort();
    out
}

// ---------------------------------------------------------------------------
// trace oracle

/// Everything downstream of a loss, computed as a fixed point over the
/// reference relation instead of a tree walk.
pub fn oracle_trace(m: &Model, loss: &str) -> BTreeSet<ElementRef> {
    let mut losses: BTreeSet<&str> = BTreeSet::from([loss]);
    let mut hazards = BTreeSet::new();
    let mut ucas = BTreeSet::new();
    let mut scenarios = BTreeSet::new();
    let mut requirements = BTreeSet::new();
    loop {
        let before = (losses.len(), hazards.len(), ucas.len(), scenarios.len(), requirements.len());
        for h in &m.hazards {
            if h.leads_to.iter().any(|l| l == loss) {
                hazards.insert(h.id.as_str());
            }
        }
        for u in &m.ucas {
            if u.hazards.iter().any(|h| hazards.contains(h.as_str())) {
                ucas.insert(u.id.as_str());
            }
        }
        for s in &m.scenarios {
            if ucas.contains(s.uca.as_str()) {
                scenarios.insert(s.id.as_str());
            }
        }
        for q in &m.requirements {
            if q.scenarios.iter().any(|s| scenarios.contains(s.as_str())) {
                requirements.insert(q.id.as_str());
            }
        }
        losses.insert(loss);
        if before == (losses.len(), hazards.len(), ucas.len(), scenarios.len(), requirements.len()) {
            break;
        }
    }
    let mut out = BTreeSet::new();
    for (class, ids) in [
        (ElementClass::Loss, &losses),
        (ElementClass::Hazard, &hazards),
        (ElementClass::Uca, &ucas),
        (ElementClass::Scenario, &scenarios),
        (ElementClass::Requirement, &requirements),
    ] {
        out.extend(ids.iter().map(|id| r(class, id)));
    }
    out
}

// ---------------------------------------------------------------------------
// strongly connected components oracle

/// Node sets of the cycles (SCCs with two or more nodes) among control
/// actions, from a transitive-closure matrix.
#[allow(clippy::needless_range_loop)]
pub fn oracle_cycles(nodes: &[&str], edges: &[(&str, &str)]) -> BTreeSet<BTreeSet<String>> {
    let n = nodes.len();
    let at = |id: &str| nodes.iter().position(|x| *x == id);
    let mut reach = vec![vec![false; n]; n];
    for (a, b) in edges {
        if let (Some(i), Some(j)) = (at(a), at(b)) {
            reach[i][j] = true;
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if reach[i][k] && reach[k][j] {
                    reach[i][j] = true;
                }
            }
        }
    }
    let mut out = BTreeSet::new();
    for i in 0..n {
        let comp: BTreeSet<String> = (0..n)
            .filter(|&j| i == j || (reach[i][j] && reach[j][i]))
            .map(|j| nodes[j].to_string())
            .collect();
        if comp.len() >= 2 {
            out.insert(comp);
        }
    }
    out
}

// ---------------------------------------------------------------------------
// noisy renderer

fn q(text: &str) -> String {
    let mut s = String::from("\"");
    for c in text.chars() {
        match c {
            '"' => s.push_str("\\\""),
            '\\' => s.push_str("\\\\"),
            c => s.push(c),
        }
    }
    s.push('"');
    s
}

fn l(ids: &[Ident], rng: &mut impl Rng) -> String {
    let sep = *[",", ", ", " , ", ",\t"].choose(rng).unwrap();
    let inner: Vec<&str> = ids.iter().map(|i| i.as_str()).collect();
    if rng.gen_bool(0.2) {
        format!("[ {} ]", inner.join(sep))
    } else {
        format!("[{}]", inner.join(sep))
    }
}

/// Joins `head` and `parts` in random order with random spacing, inline
/// comments and line continuations.
fn statement(head: String, mut parts: Vec<String>, rng: &mut impl Rng) -> String {
    parts.shuffle(rng);
    let mut out = head;
    for p in parts {
        match rng.gen_range(0..6) {
            0 => out.push_str(" \\\n    "),
            1 => out.push('\t'),
            2 => out.push_str("   "),
            _ => out.push(' '),
        }
        out.push_str(&p);
    }
    if rng.gen_bool(0.2) {
        out.push_str("  # trailing \"comment\" with = and [x]");
    }
    out
}

/// Renders `m` as a document that differs from the canonical form in
/// everything the grammar allows to vary: attribute order, whitespace,
/// comments, continuations, blank lines and how classes interleave.
pub fn noisy_render(m: &Model, rng: &mut impl Rng) -> String {
    let mut classes: Vec<Vec<String>> = Vec::new();
    classes.push(
        m.losses
            .iter()
            .map(|x| statement(format!("loss {}", x.id), vec![q(&x.description), format!("category={}", x.category)], rng))
            .collect(),
    );
    classes.push(
        m.boundaries
            .iter()
            .map(|x| {
                let mut parts = vec![q(&x.name)];
                if let Some(s) = x.stage {
                    parts.push(format!("stage={s}"));
                }
                if !x.includes.is_empty() || rng.gen_bool(0.5) {
                    parts.push(format!("includes={}", l(&x.includes, rng)));
                }
                statement(format!("boundary {}", x.id), parts, rng)
            })
            .collect(),
    );
    classes.push(
        m.hazards
            .iter()
            .map(|x| {
                let parts = vec![q(&x.description), format!("boundary={}", x.boundary), format!("leads_to={}", l(&x.leads_to, rng))];
                statement(format!("hazard {}", x.id), parts, rng)
            })
            .collect(),
    );
    classes.push(
        m.nodes
            .iter()
            .map(|x| {
                let mut parts = vec![q(&x.name), format!("kind={}", x.kind)];
                if let Some(p) = &x.process_model {
                    parts.push(format!("process_model={}", q(p)));
                }
                if let Some(c) = &x.control_algorithm {
                    parts.push(format!("control_algorithm={}", q(c)));
                }
                statement(format!("node {}", x.id), parts, rng)
            })
            .collect(),
    );
    classes.push(
        m.edges
            .iter()
            .map(|x| {
                let kw = match x.kind {
                    EdgeKind::ControlAction => "action",
                    EdgeKind::Feedback => "feedback",
                    EdgeKind::IoLink => "iolink",
                };
                let parts = vec![format!("from={}", x.source), format!("to={}", x.target), q(&x.label)];
                statement(format!("{kw} {}", x.id), parts, rng)
            })
            .collect(),
    );
    classes.push(
        m.ucas
            .iter()
            .map(|x| {
                let mut parts = vec![
                    format!("action={}", x.action),
                    format!("type={}", x.guide_type),
                    format!("category={}", x.category),
                    format!("context={}", q(&x.context)),
                    format!("hazards={}", l(&x.hazards, rng)),
                ];
                if let Some(s) = &x.source {
                    parts.push(format!("source={s}"));
                }
                statement(format!("uca {}", x.id), parts, rng)
            })
            .collect(),
    );
    classes.push(
        m.scenarios
            .iter()
            .map(|x| {
                let mut parts = vec![format!("uca={}", x.uca), format!("class={}", x.class), q(&x.description)];
                if !x.elements.is_empty() || rng.gen_bool(0.5) {
                    parts.push(format!("elements={}", l(&x.elements, rng)));
                }
                statement(format!("scenario {}", x.id), parts, rng)
            })
            .collect(),
    );
    classes.push(
        m.requirements
            .iter()
            .map(|x| statement(format!("requirement {}", x.id), vec![format!("scenarios={}", l(&x.scenarios, rng)), q(&x.text)], rng))
            .collect(),
    );
    classes.push(
        m.assessments
            .iter()
            .map(|x| {
                let parts = vec![
                    format!("action={}", x.action),
                    format!("type={}", x.guide_type),
                    format!("verdict={}", x.verdict),
                    format!("rationale={}", q(&x.rationale)),
                ];
                statement("assess".to_string(), parts, rng)
            })
            .collect(),
    );

    // interleave classes, keeping each class in declaration order
    let mut queues: Vec<std::collections::VecDeque<String>> = classes.into_iter().map(Into::into).collect();
    let mut lines: Vec<String> = Vec::new();
    if rng.gen_bool(0.5) {
        lines.push("# generated document".into());
    }
    if let Some(name) = &m.name {
        lines.push(format!("model {}", q(name)));
    }
    loop {
        let live: Vec<usize> = (0..queues.len()).filter(|&i| !queues[i].is_empty()).collect();
        let Some(&i) = live.choose(rng) else { break };
        lines.push(queues[i].pop_front().unwrap());
        match rng.gen_range(0..8) {
            0 => lines.push(String::new()),
            1 => lines.push("   # comment line".into()),
            2 => lines.push("\t".into()),
            _ => {}
        }
    }
    let mut text = lines.join(if rng.gen_bool(0.2) { "\r\n" } else { "\n" });
    if rng.gen_bool(0.5) {
        text.push('\n');
    }
    text
}

// ---------------------------------------------------------------------------
// model mutators

fn fresh_ident(prefix: &str, rng: &mut impl Rng) -> Ident {
    Ident::new(format!("{prefix}{}", rng.gen_range(100..10_000))).unwrap()
}

/// Injects the defects the generator never produces on its own: role
/// mismatches, UCAs or waivers on non-control edges, empty lists, duplicate
/// waivers and self-loops.
pub fn perturb(m: &mut Model, rng: &mut impl Rng) {
    for _ in 0..rng.gen_range(0..4) {
        match rng.gen_range(0..6) {
            0 if !m.ucas.is_empty() && !m.nodes.is_empty() => {
                let n = m.nodes.choose(rng).unwrap().id.clone();
                m.ucas.choose_mut(rng).unwrap().source = Some(n);
            }
            1 if !m.ucas.is_empty() && !m.edges.is_empty() => {
                let e = m.edges.choose(rng).unwrap().id.clone();
                m.ucas.choose_mut(rng).unwrap().action = e;
            }
            2 if !m.hazards.is_empty() => m.hazards.choose_mut(rng).unwrap().leads_to.clear(),
            3 if !m.assessments.is_empty() => {
                let mut a = m.assessments.choose(rng).unwrap().clone();
                a.rationale.push_str(" again");
                m.assessments.push(a);
            }
            4 if !m.nodes.is_empty() => {
                let n = m.nodes.choose(rng).unwrap().id.clone();
                m.edges.push(Edge {
                    id: fresh_ident("LOOP", rng),
                    kind: EdgeKind::IoLink,
                    source: n.clone(),
                    target: n,
                    label: "self".into(),
                });
            }
            5 if !m.edges.is_empty() => {
                let e = m.edges.choose(rng).unwrap().id.clone();
                m.assessments.push(Assessment {
                    action: e,
                    guide_type: *GuideType::ALL.choose(rng).unwrap(),
                    verdict: Verdict::NotHazardous,
                    rationale: "r".into(),
                });
            }
            _ => {}
        }
    }
    if let Some(b) = m.boundaries.first_mut() {
        if rng.gen_bool(0.1) {
            b.includes.push(Ident::new("Nowhere").unwrap());
        }
    }
}

/// A random edit of `m`: some elements removed, some fields changed, some
/// elements added, the name possibly changed. Ids stay unique per class.
pub fn mutate(m: &Model, rng: &mut impl Rng) -> Model {
    let mut out = m.clone();
    let drop = |len: usize, rng: &mut dyn rand::RngCore| -> Option<usize> {
        if len > 0 && rng.gen_bool(0.3) {
            Some(rng.gen_range(0..len))
        } else {
            None
        }
    };
    if let Some(i) = drop(out.losses.len(), rng) {
        out.losses.remove(i);
    }
    if let Some(i) = drop(out.nodes.len(), rng) {
        out.nodes.remove(i);
    }
    if let Some(i) = drop(out.edges.len(), rng) {
        out.edges.remove(i);
    }
    if let Some(i) = drop(out.ucas.len(), rng) {
        out.ucas.remove(i);
    }
    if let Some(i) = drop(out.assessments.len(), rng) {
        out.assessments.remove(i);
    }
    if let Some(n) = out.nodes.choose_mut(rng) {
        if rng.gen_bool(0.5) {
            n.process_model = if n.process_model.is_some() { None } else { Some("new map".into()) };
        }
        if rng.gen_bool(0.3) {
            n.kind = *NodeKind::ALL.choose(rng).unwrap();
        }
    }
    if let Some(e) = out.edges.choose_mut(rng) {
        if rng.gen_bool(0.5) {
            e.label.push_str(" (revised)");
        }
    }
    if let Some(h) = out.hazards.choose_mut(rng) {
        if rng.gen_bool(0.5) {
            h.leads_to.reverse();
            h.leads_to.push(Ident::new("L999").unwrap());
        }
    }
    if let Some(b) = out.boundaries.choose_mut(rng) {
        if rng.gen_bool(0.3) {
            b.stage = None;
        }
    }
    if let Some(u) = out.ucas.choose_mut(rng) {
        if rng.gen_bool(0.4) {
            u.source = None;
        }
    }
    if let Some(a) = out.assessments.choose_mut(rng) {
        if rng.gen_bool(0.4) {
            a.rationale = "revised".into();
        }
    }
    if rng.gen_bool(0.5) {
        out.nodes.push(Node {
            id: fresh_ident("NEW", rng),
            name: "added".into(),
            kind: NodeKind::Team,
            process_model: None,
            control_algorithm: None,
        });
    }
    if rng.gen_bool(0.5) && !out.nodes.is_empty() {
        let a = out.nodes.choose(rng).unwrap().id.clone();
        let b = out.nodes.choose(rng).unwrap().id.clone();
        out.edges.push(Edge {
            id: fresh_ident("CAX", rng),
            kind: EdgeKind::ControlAction,
            source: a,
            target: b,
            label: "added".into(),
        });
    }
    if rng.gen_bool(0.3) {
        out.name = match out.name {
            Some(_) => None,
            None => Some("renamed".into()),
        };
    }
    dedup_ids(&mut out);
    out
}

fn dedup_ids(m: &mut Model) {
    let mut seen = BTreeSet::new();
    m.nodes.retain(|n| seen.insert(n.id.clone()));
    let mut seen = BTreeSet::new();
    m.edges.retain(|e| seen.insert(e.id.clone()));
}

// ---------------------------------------------------------------------------
// dot structure

/// (nodes, edges) of a dot document, after checking its overall shape:
/// one `digraph` block, balanced braces and quotes, and every edge endpoint
/// declared as a node.
pub fn dot_counts(dot: &str) -> Result<(usize, usize), String> {
    let body = dot
        .strip_prefix("digraph ")
        .ok_or("missing digraph header")?
        .trim_end();
    if !body.ends_with('}') {
        return Err("unterminated graph".into());
    }
    let mut depth = 0i32;
    let mut in_str = false;
    let mut escaped = false;
    for c in body.chars() {
        if in_str {
            match (escaped, c) {
                (true, _) => escaped = false,
                (false, '\\') => escaped = true,
                (false, '"') => in_str = false,
                _ => {}
            }
            continue;
        }
        match c {
            '"' => in_str = true,
            '{' => depth += 1,
            '}' => {
                depth -= 1;
                if depth < 0 {
                    return Err("unbalanced braces".into());
                }
            }
            _ => {}
        }
    }
    if depth != 0 || in_str {
        return Err("unbalanced braces or quotes".into());
    }

    let quoted_id = |s: &str| -> Option<(String, usize)> {
        let s = s.strip_prefix('"')?;
        let end = s.find('"')?;
        Some((s[..end].to_string(), end + 2))
    };
    let mut nodes = BTreeSet::new();
    let mut edges = Vec::new();
    for line in dot.lines().map(str::trim) {
        let Some((first, used)) = quoted_id(line) else { continue };
        let rest = &line[used..];
        if let Some(rest) = rest.strip_prefix(" -> ") {
            let (second, _) = quoted_id(rest).ok_or("malformed edge")?;
            edges.push((first, second));
        } else if rest.starts_with(" [") && !nodes.insert(first.clone()) {
            return Err(format!("node `{first}` declared twice"));
        }
    }
    for (a, b) in &edges {
        if !nodes.contains(a) || !nodes.contains(b) {
            return Err(format!("edge {a} -> {b} uses an undeclared node"));
        }
    }
    Ok((nodes.len(), edges.len()))
}
