//! Structural comparison of two model versions.
//!
//! Elements are matched by (class, id). A renamed element is therefore a
//! removal plus an addition. Reference lists are compared as sets, so
//! reordering `[a,b]` to `[b,a]` is not a change; any change to free text is.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt::{self, Write};

use serde::Serialize;
use thiserror::Error;

use crate::model::*;

/// Comparable value of one element field.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(untagged)]
pub enum FieldValue {
    Absent,
    Text(String),
    Set(BTreeSet<String>),
}

impl fmt::Display for FieldValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldValue::Absent => f.write_str("(absent)"),
            FieldValue::Text(t) => write!(f, "{t:?}"),
            FieldValue::Set(items) => {
                write!(f, "[{}]", items.iter().cloned().collect::<Vec<_>>().join(","))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot set field `{field}` of {class}: {reason}")]
pub struct FieldError {
    pub class: ElementClass,
    pub field: String,
    pub reason: String,
}

/// Field-level access used by diff and replay.
pub trait Fields {
    const CLASS: ElementClass;

    fn key(&self) -> String;
    fn fields(&self) -> Vec<(&'static str, FieldValue)>;
    fn set_field(&mut self, field: &str, value: &FieldValue) -> Result<(), FieldError>;
}

fn text(s: &str) -> FieldValue {
    FieldValue::Text(s.to_string())
}

fn opt_text(s: Option<&str>) -> FieldValue {
    s.map_or(FieldValue::Absent, text)
}

fn set(ids: &[Ident]) -> FieldValue {
    FieldValue::Set(ids.iter().map(|i| i.to_string()).collect())
}

fn field_error(class: ElementClass, field: &str, reason: impl Into<String>) -> FieldError {
    FieldError {
        class,
        field: field.to_string(),
        reason: reason.into(),
    }
}

fn get_text(class: ElementClass, field: &str, value: &FieldValue) -> Result<String, FieldError> {
    match value {
        FieldValue::Text(t) => Ok(t.clone()),
        _ => Err(field_error(class, field, "expected text")),
    }
}

fn get_opt_text(class: ElementClass, field: &str, value: &FieldValue) -> Result<Option<String>, FieldError> {
    match value {
        FieldValue::Absent => Ok(None),
        other => get_text(class, field, other).map(Some),
    }
}

fn get_ident(class: ElementClass, field: &str, value: &FieldValue) -> Result<Ident, FieldError> {
    Ident::new(get_text(class, field, value)?).map_err(|e| field_error(class, field, e.to_string()))
}

fn get_set(class: ElementClass, field: &str, value: &FieldValue) -> Result<Vec<Ident>, FieldError> {
    match value {
        FieldValue::Set(items) => items
            .iter()
            .map(|i| Ident::new(i.clone()).map_err(|e| field_error(class, field, e.to_string())))
            .collect(),
        _ => Err(field_error(class, field, "expected a set")),
    }
}

fn get_enum<T>(class: ElementClass, field: &str, value: &FieldValue, parse: fn(&str) -> Option<T>) -> Result<T, FieldError> {
    let t = get_text(class, field, value)?;
    parse(&t).ok_or_else(|| field_error(class, field, format!("invalid value `{t}`")))
}

fn unknown(class: ElementClass, field: &str) -> FieldError {
    field_error(class, field, "no such field")
}

impl Fields for Loss {
    const CLASS: ElementClass = ElementClass::Loss;

    fn key(&self) -> String {
        self.id.to_string()
    }

    fn fields(&self) -> Vec<(&'static str, FieldValue)> {
        vec![("description", text(&self.description)), ("category", text(self.category.as_str()))]
    }

    fn set_field(&mut self, field: &str, v: &FieldValue) -> Result<(), FieldError> {
        let c = Self::CLASS;
        match field {
            "description" => self.description = get_text(c, field, v)?,
            "category" => self.category = get_enum(c, field, v, LossCategory::from_keyword)?,
            _ => return Err(unknown(c, field)),
        }
        Ok(())
    }
}

impl Fields for SystemBoundary {
    const CLASS: ElementClass = ElementClass::Boundary;

    fn key(&self) -> String {
        self.id.to_string()
    }

    fn fields(&self) -> Vec<(&'static str, FieldValue)> {
        vec![
            ("name", text(&self.name)),
            ("stage", opt_text(self.stage.map(Stage::as_str))),
            ("includes", set(&self.includes)),
        ]
    }

    fn set_field(&mut self, field: &str, v: &FieldValue) -> Result<(), FieldError> {
        let c = Self::CLASS;
        match field {
            "name" => self.name = get_text(c, field, v)?,
            "stage" => {
                self.stage = match v {
                    FieldValue::Absent => None,
                    v => Some(get_enum(c, field, v, Stage::from_keyword)?),
                }
            }
            "includes" => self.includes = get_set(c, field, v)?,
            _ => return Err(unknown(c, field)),
        }
        Ok(())
    }
}

impl Fields for Hazard {
    const CLASS: ElementClass = ElementClass::Hazard;

    fn key(&self) -> String {
        self.id.to_string()
    }

    fn fields(&self) -> Vec<(&'static str, FieldValue)> {
        vec![
            ("description", text(&self.description)),
            ("boundary", text(self.boundary.as_str())),
            ("leads_to", set(&self.leads_to)),
        ]
    }

    fn set_field(&mut self, field: &str, v: &FieldValue) -> Result<(), FieldError> {
        let c = Self::CLASS;
        match field {
            "description" => self.description = get_text(c, field, v)?,
            "boundary" => self.boundary = get_ident(c, field, v)?,
            "leads_to" => self.leads_to = get_set(c, field, v)?,
            _ => return Err(unknown(c, field)),
        }
        Ok(())
    }
}

impl Fields for Node {
    const CLASS: ElementClass = ElementClass::Node;

    fn key(&self) -> String {
        self.id.to_string()
    }

    fn fields(&self) -> Vec<(&'static str, FieldValue)> {
        vec![
            ("name", text(&self.name)),
            ("kind", text(self.kind.as_str())),
            ("process_model", opt_text(self.process_model.as_deref())),
            ("control_algorithm", opt_text(self.control_algorithm.as_deref())),
        ]
    }

    fn set_field(&mut self, field: &str, v: &FieldValue) -> Result<(), FieldError> {
        let c = Self::CLASS;
        match field {
            "name" => self.name = get_text(c, field, v)?,
            "kind" => self.kind = get_enum(c, field, v, NodeKind::from_keyword)?,
            "process_model" => self.process_model = get_opt_text(c, field, v)?,
            "control_algorithm" => self.control_algorithm = get_opt_text(c, field, v)?,
            _ => return Err(unknown(c, field)),
        }
        Ok(())
    }
}

impl Fields for Edge {
    const CLASS: ElementClass = ElementClass::Edge;

    fn key(&self) -> String {
        self.id.to_string()
    }

    fn fields(&self) -> Vec<(&'static str, FieldValue)> {
        vec![
            ("kind", text(self.kind.as_str())),
            ("from", text(self.source.as_str())),
            ("to", text(self.target.as_str())),
            ("label", text(&self.label)),
        ]
    }

    fn set_field(&mut self, field: &str, v: &FieldValue) -> Result<(), FieldError> {
        let c = Self::CLASS;
        match field {
            "kind" => self.kind = get_enum(c, field, v, EdgeKind::from_keyword)?,
            "from" => self.source = get_ident(c, field, v)?,
            "to" => self.target = get_ident(c, field, v)?,
            "label" => self.label = get_text(c, field, v)?,
            _ => return Err(unknown(c, field)),
        }
        Ok(())
    }
}

impl Fields for Uca {
    const CLASS: ElementClass = ElementClass::Uca;

    fn key(&self) -> String {
        self.id.to_string()
    }

    fn fields(&self) -> Vec<(&'static str, FieldValue)> {
        vec![
            ("source", opt_text(self.source.as_ref().map(Ident::as_str))),
            ("action", text(self.action.as_str())),
            ("type", text(self.guide_type.as_str())),
            ("category", text(self.category.as_str())),
            ("context", text(&self.context)),
            ("hazards", set(&self.hazards)),
        ]
    }

    fn set_field(&mut self, field: &str, v: &FieldValue) -> Result<(), FieldError> {
        let c = Self::CLASS;
        match field {
            "source" => {
                self.source = match v {
                    FieldValue::Absent => None,
                    v => Some(get_ident(c, field, v)?),
                }
            }
            "action" => self.action = get_ident(c, field, v)?,
            "type" => self.guide_type = get_enum(c, field, v, GuideType::from_keyword)?,
            "category" => self.category = get_enum(c, field, v, UcaCategory::from_keyword)?,
            "context" => self.context = get_text(c, field, v)?,
            "hazards" => self.hazards = get_set(c, field, v)?,
            _ => return Err(unknown(c, field)),
        }
        Ok(())
    }
}

impl Fields for LossScenario {
    const CLASS: ElementClass = ElementClass::Scenario;

    fn key(&self) -> String {
        self.id.to_string()
    }

    fn fields(&self) -> Vec<(&'static str, FieldValue)> {
        vec![
            ("uca", text(self.uca.as_str())),
            ("class", text(self.class.as_str())),
            ("description", text(&self.description)),
            ("elements", set(&self.elements)),
        ]
    }

    fn set_field(&mut self, field: &str, v: &FieldValue) -> Result<(), FieldError> {
        let c = Self::CLASS;
        match field {
            "uca" => self.uca = get_ident(c, field, v)?,
            "class" => self.class = get_enum(c, field, v, ScenarioClass::from_keyword)?,
            "description" => self.description = get_text(c, field, v)?,
            "elements" => self.elements = get_set(c, field, v)?,
            _ => return Err(unknown(c, field)),
        }
        Ok(())
    }
}

impl Fields for SafetyRequirement {
    const CLASS: ElementClass = ElementClass::Requirement;

    fn key(&self) -> String {
        self.id.to_string()
    }

    fn fields(&self) -> Vec<(&'static str, FieldValue)> {
        vec![("scenarios", set(&self.scenarios)), ("text", text(&self.text))]
    }

    fn set_field(&mut self, field: &str, v: &FieldValue) -> Result<(), FieldError> {
        let c = Self::CLASS;
        match field {
            "scenarios" => self.scenarios = get_set(c, field, v)?,
            "text" => self.text = get_text(c, field, v)?,
            _ => return Err(unknown(c, field)),
        }
        Ok(())
    }
}

impl Fields for Assessment {
    const CLASS: ElementClass = ElementClass::Assessment;

    fn key(&self) -> String {
        Assessment::key(self)
    }

    fn fields(&self) -> Vec<(&'static str, FieldValue)> {
        vec![
            ("action", text(self.action.as_str())),
            ("type", text(self.guide_type.as_str())),
            ("verdict", text(self.verdict.as_str())),
            ("rationale", text(&self.rationale)),
        ]
    }

    fn set_field(&mut self, field: &str, v: &FieldValue) -> Result<(), FieldError> {
        let c = Self::CLASS;
        match field {
            "action" => self.action = get_ident(c, field, v)?,
            "type" => self.guide_type = get_enum(c, field, v, GuideType::from_keyword)?,
            "verdict" => self.verdict = get_enum(c, field, v, Verdict::from_keyword)?,
            "rationale" => self.rationale = get_text(c, field, v)?,
            _ => return Err(unknown(c, field)),
        }
        Ok(())
    }
}

type FieldTable = BTreeMap<ElementRef, Vec<(&'static str, FieldValue)>>;

fn table_of<T: Fields>(out: &mut FieldTable, items: &[T]) {
    for item in items {
        out.entry(ElementRef::new(T::CLASS, item.key())).or_insert_with(|| item.fields());
    }
}

/// Every element's comparable fields, keyed by reference. On duplicate keys
/// the first declaration wins.
pub fn field_table(model: &Model) -> FieldTable {
    let mut out = BTreeMap::new();
    table_of(&mut out, &model.losses);
    table_of(&mut out, &model.boundaries);
    table_of(&mut out, &model.hazards);
    table_of(&mut out, &model.nodes);
    table_of(&mut out, &model.edges);
    table_of(&mut out, &model.ucas);
    table_of(&mut out, &model.scenarios);
    table_of(&mut out, &model.requirements);
    table_of(&mut out, &model.assessments);
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FieldChange {
    pub field: String,
    pub old: FieldValue,
    pub new: FieldValue,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Modification {
    pub element: ElementRef,
    pub changes: Vec<FieldChange>,
}

/// Difference between two model versions. Each list is sorted by class
/// order then id.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct ChangeSet {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub model_name: Option<FieldChange>,
    pub added: Vec<ElementRef>,
    pub removed: Vec<ElementRef>,
    pub modified: Vec<Modification>,
}

pub fn diff(old: &Model, new: &Model) -> ChangeSet {
    let before = field_table(old);
    let after = field_table(new);
    let mut changes = ChangeSet::default();
    if old.name != new.name {
        changes.model_name = Some(FieldChange {
            field: "name".into(),
            old: opt_text(old.name.as_deref()),
            new: opt_text(new.name.as_deref()),
        });
    }
    for (element, fields) in &before {
        match after.get(element) {
            None => changes.removed.push(element.clone()),
            Some(now) => {
                let changed: Vec<FieldChange> = fields
                    .iter()
                    .zip(now)
                    .filter(|((_, a), (_, b))| a != b)
                    .map(|((field, a), (_, b))| FieldChange {
                        field: field.to_string(),
                        old: a.clone(),
                        new: b.clone(),
                    })
                    .collect();
                if !changed.is_empty() {
                    changes.modified.push(Modification {
                        element: element.clone(),
                        changes: changed,
                    });
                }
            }
        }
    }
    changes.added = after.keys().filter(|k| !before.contains_key(*k)).cloned().collect();
    changes
}

fn replay_class<T: Fields + Clone>(
    out: &mut Vec<T>,
    old: &[T],
    new: &[T],
    changes: &ChangeSet,
) -> Result<(), FieldError> {
    let removed: HashSet<&str> = changes
        .removed
        .iter()
        .filter(|r| r.class == T::CLASS)
        .map(|r| r.id.as_str())
        .collect();
    let modified: BTreeMap<&str, &Modification> = changes
        .modified
        .iter()
        .filter(|m| m.element.class == T::CLASS)
        .map(|m| (m.element.id.as_str(), m))
        .collect();
    let mut seen = HashSet::new();
    for item in old {
        let key = item.key();
        if removed.contains(key.as_str()) || !seen.insert(key.clone()) {
            continue;
        }
        let mut item = item.clone();
        if let Some(m) = modified.get(key.as_str()) {
            for change in &m.changes {
                item.set_field(&change.field, &change.new)?;
            }
        }
        out.push(item);
    }
    let added: HashSet<&str> = changes
        .added
        .iter()
        .filter(|r| r.class == T::CLASS)
        .map(|r| r.id.as_str())
        .collect();
    for item in new {
        let key = item.key();
        if added.contains(key.as_str()) && seen.insert(key) {
            out.push(item.clone());
        }
    }
    Ok(())
}

impl ChangeSet {
    pub fn is_empty(&self) -> bool {
        self.model_name.is_none() && self.added.is_empty() && self.removed.is_empty() && self.modified.is_empty()
    }

    /// Rebuilds the newer model from `old`: drops removed elements, applies
    /// every field change, then appends added elements taken from `new`.
    /// Element order may differ from `new`, and reference lists come back
    /// sorted; compare results with [`field_table`].
    pub fn replay(&self, old: &Model, new: &Model) -> Result<Model, FieldError> {
        let mut out = Model {
            name: old.name.clone(),
            ..Model::default()
        };
        if let Some(change) = &self.model_name {
            out.name = get_opt_text(ElementClass::Loss, "name", &change.new)?;
        }
        replay_class(&mut out.losses, &old.losses, &new.losses, self)?;
        replay_class(&mut out.boundaries, &old.boundaries, &new.boundaries, self)?;
        replay_class(&mut out.hazards, &old.hazards, &new.hazards, self)?;
        replay_class(&mut out.nodes, &old.nodes, &new.nodes, self)?;
        replay_class(&mut out.edges, &old.edges, &new.edges, self)?;
        replay_class(&mut out.ucas, &old.ucas, &new.ucas, self)?;
        replay_class(&mut out.scenarios, &old.scenarios, &new.scenarios, self)?;
        replay_class(&mut out.requirements, &old.requirements, &new.requirements, self)?;
        replay_class(&mut out.assessments, &old.assessments, &new.assessments, self)?;
        Ok(out)
    }

    pub fn render(&self) -> String {
        if self.is_empty() {
            return "no changes\n".to_string();
        }
        let mut out = String::new();
        if let Some(change) = &self.model_name {
            writeln!(out, "model name: {} -> {}", change.old, change.new).unwrap();
        }
        for (title, items) in [("added", &self.added), ("removed", &self.removed)] {
            if !items.is_empty() {
                writeln!(out, "{title}:").unwrap();
                for item in items {
                    writeln!(out, "  {item}").unwrap();
                }
            }
        }
        if !self.modified.is_empty() {
            out.push_str("modified:\n");
            for m in &self.modified {
                writeln!(out, "  {}", m.element).unwrap();
                for c in &m.changes {
                    writeln!(out, "    {}: {} -> {}", c.field, c.old, c.new).unwrap();
                }
            }
        }
        if !self.added.is_empty() && !self.removed.is_empty() {
            out.push_str("note: elements are matched by id; a renamed element shows as one removal plus one addition\n");
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ChangeKind {
    Added,
    Modified,
}

/// A changed node or edge and the analysis artifacts that depend on it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReviewItem {
    pub element: ElementRef,
    pub change: ChangeKind,
    pub ucas: Vec<Ident>,
    pub scenarios: Vec<Ident>,
    pub hazards: Vec<Ident>,
    pub losses: Vec<Ident>,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct DanglingReference {
    pub removed: ElementRef,
    pub referrer: ElementRef,
    pub field: &'static str,
}

/// Everything in the new model that needs another look after a change.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct ImpactReport {
    /// Added or modified nodes and edges; all of them need re-review.
    pub rereview: Vec<ReviewItem>,
    /// References in the new model that point at removed elements.
    pub dangling: Vec<DanglingReference>,
}

impl ImpactReport {
    pub fn is_empty(&self) -> bool {
        self.rereview.is_empty() && self.dangling.is_empty()
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        if self.is_empty() {
            out.push_str("impact: none\n");
            return out;
        }
        out.push_str("impact:\n");
        for item in &self.rereview {
            let change = match item.change {
                ChangeKind::Added => "added",
                ChangeKind::Modified => "modified",
            };
            writeln!(out, "  re-review required: {} ({change})", item.element).unwrap();
            for (title, ids) in [
                ("ucas", &item.ucas),
                ("scenarios", &item.scenarios),
                ("hazards", &item.hazards),
                ("losses", &item.losses),
            ] {
                if !ids.is_empty() {
                    let ids: Vec<&str> = ids.iter().map(Ident::as_str).collect();
                    writeln!(out, "    {title}: {}", ids.join(", ")).unwrap();
                }
            }
        }
        for d in &self.dangling {
            writeln!(out, "  dangling: {} `{}` still points at removed {}", d.referrer, d.field, d.removed).unwrap();
        }
        out
    }
}

/// Propagates a change set through `new`.
///
/// For each added or modified node: UCAs sourced at it. For each added or
/// modified edge: UCAs on it. In both cases also the scenarios naming the
/// element and the hazards and losses those UCAs reach. Removed elements
/// yield the references in `new` that still point at them.
pub fn impact(changes: &ChangeSet, new: &Model) -> ImpactReport {
    let mut report = ImpactReport::default();
    let touched = changes
        .added
        .iter()
        .map(|r| (r, ChangeKind::Added))
        .chain(changes.modified.iter().map(|m| (&m.element, ChangeKind::Modified)));
    for (element, change) in touched {
        let ucas: Vec<&Uca> = match element.class {
            ElementClass::Node => new
                .ucas
                .iter()
                .filter(|u| u.source.as_ref().is_some_and(|s| *s == element.id.as_str()))
                .collect(),
            ElementClass::Edge => new.ucas.iter().filter(|u| u.action == element.id.as_str()).collect(),
            _ => continue,
        };
        let hazard_ids: HashSet<&str> = ucas.iter().flat_map(|u| u.hazards.iter().map(Ident::as_str)).collect();
        let hazards: Vec<&Hazard> = new.hazards.iter().filter(|h| hazard_ids.contains(h.id.as_str())).collect();
        let loss_ids: HashSet<&str> = hazards.iter().flat_map(|h| h.leads_to.iter().map(Ident::as_str)).collect();
        report.rereview.push(ReviewItem {
            element: element.clone(),
            change,
            ucas: ucas.iter().map(|u| u.id.clone()).collect(),
            scenarios: new
                .scenarios
                .iter()
                .filter(|s| s.elements.iter().any(|e| *e == element.id.as_str()))
                .map(|s| s.id.clone())
                .collect(),
            hazards: hazards.iter().map(|h| h.id.clone()).collect(),
            losses: new
                .losses
                .iter()
                .filter(|l| loss_ids.contains(l.id.as_str()))
                .map(|l| l.id.clone())
                .collect(),
        });
    }

    let removed: HashSet<&ElementRef> = changes.removed.iter().collect();
    if !removed.is_empty() {
        let nodes: HashSet<&str> = new.nodes.iter().map(|n| n.id.as_str()).collect();
        let edges: HashSet<&str> = new.edges.iter().map(|e| e.id.as_str()).collect();
        for (referrer, field, class, target) in outgoing_references(new) {
            let hit = ElementRef::new(class, target);
            if !removed.contains(&hit) {
                continue;
            }
            // scenario elements may name either a node or an edge
            if field == "elements" && (nodes.contains(target) || edges.contains(target)) {
                continue;
            }
            report.dangling.push(DanglingReference {
                removed: hit,
                referrer,
                field,
            });
        }
        report.dangling.sort();
        report.dangling.dedup();
    }
    report
}

/// Every (referrer, field, target class, target id) in the model. Scenario
/// elements are listed once as a node and once as an edge reference.
fn outgoing_references(model: &Model) -> Vec<(ElementRef, &'static str, ElementClass, &str)> {
    let mut out = Vec::new();
    let r = |class, id: &Ident| ElementRef::new(class, id.as_str());
    for b in &model.boundaries {
        for n in &b.includes {
            out.push((r(ElementClass::Boundary, &b.id), "includes", ElementClass::Node, n.as_str()));
        }
    }
    for h in &model.hazards {
        out.push((r(ElementClass::Hazard, &h.id), "boundary", ElementClass::Boundary, h.boundary.as_str()));
        for l in &h.leads_to {
            out.push((r(ElementClass::Hazard, &h.id), "leads_to", ElementClass::Loss, l.as_str()));
        }
    }
    for e in &model.edges {
        out.push((r(ElementClass::Edge, &e.id), "from", ElementClass::Node, e.source.as_str()));
        out.push((r(ElementClass::Edge, &e.id), "to", ElementClass::Node, e.target.as_str()));
    }
    for u in &model.ucas {
        if let Some(s) = &u.source {
            out.push((r(ElementClass::Uca, &u.id), "source", ElementClass::Node, s.as_str()));
        }
        out.push((r(ElementClass::Uca, &u.id), "action", ElementClass::Edge, u.action.as_str()));
        for h in &u.hazards {
            out.push((r(ElementClass::Uca, &u.id), "hazards", ElementClass::Hazard, h.as_str()));
        }
    }
    for s in &model.scenarios {
        out.push((r(ElementClass::Scenario, &s.id), "uca", ElementClass::Uca, s.uca.as_str()));
        for e in &s.elements {
            out.push((r(ElementClass::Scenario, &s.id), "elements", ElementClass::Node, e.as_str()));
            out.push((r(ElementClass::Scenario, &s.id), "elements", ElementClass::Edge, e.as_str()));
        }
    }
    for q in &model.requirements {
        for s in &q.scenarios {
            out.push((r(ElementClass::Requirement, &q.id), "scenarios", ElementClass::Scenario, s.as_str()));
        }
    }
    for a in &model.assessments {
        out.push((ElementRef::new(ElementClass::Assessment, a.key()), "action", ElementClass::Edge, a.action.as_str()));
    }
    out
}
