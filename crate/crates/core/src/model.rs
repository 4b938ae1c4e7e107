//! In-memory representation of a hazard analysis document.
//!
//! A [`Model`] is a flat registry of losses, system boundaries, hazards,
//! control-structure nodes and edges, unsafe control actions, loss scenarios,
//! safety requirements and waiver assessments. Identifiers are namespaced per
//! element class, so a loss and a hazard may share the same id text.
//!
//! Cross-references are stored as plain identifiers and are *not* checked on
//! construction; see [`crate::analysis::validate`].

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use serde::{Serialize, Serializer};
use thiserror::Error;

macro_rules! keyword_enum {
    ($(#[$meta:meta])* $name:ident { $($variant:ident => $text:literal),+ $(,)? }) => {
        $(#[$meta])*
        #[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
        pub enum $name {
            $($variant),+
        }

        impl $name {
            pub const ALL: &'static [$name] = &[$($name::$variant),+];

            pub fn as_str(self) -> &'static str {
                match self {
                    $($name::$variant => $text),+
                }
            }

            pub fn from_keyword(text: &str) -> Option<Self> {
                match text {
                    $($text => Some($name::$variant),)+
                    _ => None,
                }
            }

            /// Accepted spellings, `|`-separated, for error messages.
            pub fn expected() -> String {
                Self::ALL.iter().map(|v| v.as_str()).collect::<Vec<_>>().join("|")
            }
        }

        impl ::std::fmt::Display for $name {
            fn fmt(&self, f: &mut ::std::fmt::Formatter<'_>) -> ::std::fmt::Result {
                f.write_str(self.as_str())
            }
        }

        impl ::serde::Serialize for $name {
            fn serialize<S: ::serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
                s.serialize_str(self.as_str())
            }
        }
    };
}

pub(crate) use keyword_enum;

keyword_enum! {
    /// Harm taxonomy for losses.
    LossCategory {
        SafetyCritical => "safety-critical",
        PerformanceRelated => "performance-related",
        Sociotechnical => "sociotechnical",
    }
}

keyword_enum! {
    /// Lifecycle stage a system boundary is drawn around.
    Stage {
        DataCollection => "data-collection",
        ModelDevelopment => "model-development",
        UseOperation => "use-operation",
        Other => "other",
    }
}

keyword_enum! {
    NodeKind {
        Human => "human",
        Team => "team",
        Organization => "organization",
        TechnicalArtifact => "technical-artifact",
        AiModel => "ai-model",
        AutomatedSystem => "automated-system",
    }
}

keyword_enum! {
    EdgeKind {
        ControlAction => "control-action",
        Feedback => "feedback",
        IoLink => "io-link",
    }
}

keyword_enum! {
    /// The way a control action can be unsafe. Doubles as the column set of
    /// the coverage matrix.
    GuideType {
        Provided => "provided",
        NotProvided => "not-provided",
        WrongTiming => "wrong-timing",
        StoppedTooSoonAppliedTooLong => "stopped-too-soon-applied-too-long",
    }
}

/// Guide types as a fixed-size array, in coverage column order.
pub const GUIDE_TYPES: [GuideType; 4] = [
    GuideType::Provided,
    GuideType::NotProvided,
    GuideType::WrongTiming,
    GuideType::StoppedTooSoonAppliedTooLong,
];

keyword_enum! {
    UcaCategory {
        Functional => "functional",
        DesignOrMisuse => "design-or-misuse",
        CommunicationCoordination => "communication-coordination",
    }
}

keyword_enum! {
    ScenarioClass {
        Organizational => "organizational",
        Interaction => "interaction",
        Technical => "technical",
    }
}

keyword_enum! {
    Verdict {
        NotHazardous => "not-hazardous",
    }
}

keyword_enum! {
    /// Namespaces for identifiers.
    ElementClass {
        Loss => "loss",
        Boundary => "boundary",
        Hazard => "hazard",
        Node => "node",
        Edge => "edge",
        Uca => "uca",
        Scenario => "scenario",
        Requirement => "requirement",
        Assessment => "assessment",
    }
}

/// Error returned when an identifier passed to a query does not resolve.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown {class} `{id}`")]
pub struct ReferenceError {
    pub class: ElementClass,
    pub id: String,
}

impl ReferenceError {
    pub fn new(class: ElementClass, id: impl Into<String>) -> Self {
        ReferenceError {
            class,
            id: id.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid identifier `{0}`: expected a letter followed by letters, digits, `_` or `-`")]
pub struct InvalidIdent(pub String);

/// An element identifier: a letter followed by letters, digits, `_` or `-`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Ident(String);

impl Ident {
    pub fn new(text: impl Into<String>) -> Result<Self, InvalidIdent> {
        let text = text.into();
        if Self::is_valid(&text) {
            Ok(Ident(text))
        } else {
            Err(InvalidIdent(text))
        }
    }

    pub fn is_valid(text: &str) -> bool {
        let mut chars = text.chars();
        match chars.next() {
            Some(c) if c.is_ascii_alphabetic() => {}
            _ => return false,
        }
        chars.all(is_ident_continue)
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

pub(crate) fn is_ident_continue(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '-'
}

impl fmt::Display for Ident {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl AsRef<str> for Ident {
    fn as_ref(&self) -> &str {
        &self.0
    }
}

impl std::borrow::Borrow<str> for Ident {
    fn borrow(&self) -> &str {
        &self.0
    }
}

impl TryFrom<&str> for Ident {
    type Error = InvalidIdent;

    fn try_from(value: &str) -> Result<Self, Self::Error> {
        Ident::new(value)
    }
}

impl PartialEq<str> for Ident {
    fn eq(&self, other: &str) -> bool {
        self.0 == other
    }
}

impl PartialEq<&str> for Ident {
    fn eq(&self, other: &&str) -> bool {
        self.0 == *other
    }
}

impl Serialize for Ident {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Loss {
    pub id: Ident,
    pub description: String,
    pub category: LossCategory,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SystemBoundary {
    pub id: Ident,
    pub name: String,
    pub stage: Option<Stage>,
    pub includes: Vec<Ident>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Hazard {
    pub id: Ident,
    pub description: String,
    pub boundary: Ident,
    pub leads_to: Vec<Ident>,
}

/// A participant in the control structure. Whether it acts as a controller
/// or a controlled process depends only on the edges attached to it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Node {
    pub id: Ident,
    pub name: String,
    pub kind: NodeKind,
    pub process_model: Option<String>,
    pub control_algorithm: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Edge {
    pub id: Ident,
    pub kind: EdgeKind,
    pub source: Ident,
    pub target: Ident,
    pub label: String,
}

impl Edge {
    pub fn is_control(&self) -> bool {
        self.kind == EdgeKind::ControlAction
    }
}

/// Unsafe control action.
///
/// `source` is normally derived from the `from=` node of the referenced
/// action when the document is parsed. It is `None` only when the action
/// did not resolve at parse time.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Uca {
    pub id: Ident,
    pub source: Option<Ident>,
    pub action: Ident,
    pub guide_type: GuideType,
    pub category: UcaCategory,
    pub context: String,
    pub hazards: Vec<Ident>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LossScenario {
    pub id: Ident,
    pub uca: Ident,
    pub class: ScenarioClass,
    pub description: String,
    /// Node or edge ids implicated in the causal story.
    pub elements: Vec<Ident>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SafetyRequirement {
    pub id: Ident,
    pub scenarios: Vec<Ident>,
    pub text: String,
}

/// A recorded decision that one (action, guide type) cell is not hazardous.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Assessment {
    pub action: Ident,
    pub guide_type: GuideType,
    pub verdict: Verdict,
    pub rationale: String,
}

impl Assessment {
    /// Identity used for spans, diffs and reports: `ACTION/guide-type`.
    pub fn key(&self) -> String {
        format!("{}/{}", self.action, self.guide_type)
    }
}

/// A location in a source document. Line and column are 1-based; columns
/// count characters, not bytes.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Span {
    pub file: String,
    pub line: u32,
    pub column: u32,
}

impl Span {
    pub fn new(file: impl Into<String>, line: u32, column: u32) -> Self {
        Span {
            file: file.into(),
            line,
            column,
        }
    }
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.file, self.line, self.column)
    }
}

/// A typed pointer to an element: its class plus its identifier text.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct ElementRef {
    pub class: ElementClass,
    pub id: String,
}

impl ElementRef {
    pub fn new(class: ElementClass, id: impl Into<String>) -> Self {
        ElementRef {
            class,
            id: id.into(),
        }
    }
}

impl fmt::Display for ElementRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.class, self.id)
    }
}

/// Declaration sites of elements. Never part of model equality.
#[derive(Debug, Clone, Default)]
pub struct SourceMap {
    elements: BTreeMap<ElementRef, Span>,
    assessments: Vec<Span>,
}

impl SourceMap {
    pub fn get(&self, element: &ElementRef) -> Option<&Span> {
        self.elements.get(element)
    }

    pub fn insert(&mut self, element: ElementRef, span: Span) {
        self.elements.entry(element).or_insert(span);
    }

    /// Span of the assessment at `index` in declaration order.
    pub fn assessment(&self, index: usize) -> Option<&Span> {
        self.assessments.get(index)
    }

    pub fn push_assessment(&mut self, span: Span) {
        self.assessments.push(span);
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty() && self.assessments.is_empty()
    }
}

/// A complete analysis document.
#[derive(Debug, Clone, Default, Serialize)]
pub struct Model {
    pub name: Option<String>,
    pub losses: Vec<Loss>,
    pub boundaries: Vec<SystemBoundary>,
    pub hazards: Vec<Hazard>,
    pub nodes: Vec<Node>,
    pub edges: Vec<Edge>,
    pub ucas: Vec<Uca>,
    pub scenarios: Vec<LossScenario>,
    pub requirements: Vec<SafetyRequirement>,
    pub assessments: Vec<Assessment>,
    #[serde(skip)]
    pub spans: SourceMap,
}

impl PartialEq for Model {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name
            && self.losses == other.losses
            && self.boundaries == other.boundaries
            && self.hazards == other.hazards
            && self.nodes == other.nodes
            && self.edges == other.edges
            && self.ucas == other.ucas
            && self.scenarios == other.scenarios
            && self.requirements == other.requirements
            && self.assessments == other.assessments
    }
}

impl Eq for Model {}

/// Borrowed view of any element.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Element<'a> {
    Loss(&'a Loss),
    Boundary(&'a SystemBoundary),
    Hazard(&'a Hazard),
    Node(&'a Node),
    Edge(&'a Edge),
    Uca(&'a Uca),
    Scenario(&'a LossScenario),
    Requirement(&'a SafetyRequirement),
    Assessment(&'a Assessment),
}

fn find<'a, T>(items: &'a [T], id: &str, key: impl Fn(&T) -> &Ident) -> Option<&'a T> {
    items.iter().find(|item| key(item).as_str() == id)
}

impl Model {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn is_empty(&self) -> bool {
        self.losses.is_empty()
            && self.boundaries.is_empty()
            && self.hazards.is_empty()
            && self.nodes.is_empty()
            && self.edges.is_empty()
            && self.ucas.is_empty()
            && self.scenarios.is_empty()
            && self.requirements.is_empty()
            && self.assessments.is_empty()
    }

    /// Finds the element with `id` in `class`. Assessments are addressed by
    /// their `ACTION/guide-type` key.
    pub fn lookup(&self, class: ElementClass, id: &str) -> Option<Element<'_>> {
        match class {
            ElementClass::Loss => self.loss(id).map(Element::Loss),
            ElementClass::Boundary => self.boundary(id).map(Element::Boundary),
            ElementClass::Hazard => self.hazard(id).map(Element::Hazard),
            ElementClass::Node => self.node(id).map(Element::Node),
            ElementClass::Edge => self.edge(id).map(Element::Edge),
            ElementClass::Uca => self.uca(id).map(Element::Uca),
            ElementClass::Scenario => self.scenario(id).map(Element::Scenario),
            ElementClass::Requirement => self.requirement(id).map(Element::Requirement),
            ElementClass::Assessment => self
                .assessments
                .iter()
                .find(|a| a.key() == id)
                .map(Element::Assessment),
        }
    }

    pub fn loss(&self, id: &str) -> Option<&Loss> {
        find(&self.losses, id, |e| &e.id)
    }

    pub fn boundary(&self, id: &str) -> Option<&SystemBoundary> {
        find(&self.boundaries, id, |e| &e.id)
    }

    pub fn hazard(&self, id: &str) -> Option<&Hazard> {
        find(&self.hazards, id, |e| &e.id)
    }

    pub fn node(&self, id: &str) -> Option<&Node> {
        find(&self.nodes, id, |e| &e.id)
    }

    pub fn edge(&self, id: &str) -> Option<&Edge> {
        find(&self.edges, id, |e| &e.id)
    }

    pub fn uca(&self, id: &str) -> Option<&Uca> {
        find(&self.ucas, id, |e| &e.id)
    }

    pub fn scenario(&self, id: &str) -> Option<&LossScenario> {
        find(&self.scenarios, id, |e| &e.id)
    }

    pub fn requirement(&self, id: &str) -> Option<&SafetyRequirement> {
        find(&self.requirements, id, |e| &e.id)
    }

    /// Span of the element's declaration, when the model came from a parse.
    pub fn span_of(&self, element: &ElementRef) -> Option<&Span> {
        if element.class == ElementClass::Assessment {
            let index = self.assessments.iter().position(|a| a.key() == element.id)?;
            return self.spans.assessment(index);
        }
        self.spans.get(element)
    }

    /// Every identified element, in canonical class order then declaration
    /// order.
    pub fn element_refs(&self) -> Vec<ElementRef> {
        fn refs<T>(out: &mut Vec<ElementRef>, class: ElementClass, items: &[T], id: impl Fn(&T) -> String) {
            out.extend(items.iter().map(|item| ElementRef::new(class, id(item))));
        }
        let mut out = Vec::new();
        refs(&mut out, ElementClass::Loss, &self.losses, |e| e.id.to_string());
        refs(&mut out, ElementClass::Boundary, &self.boundaries, |e| e.id.to_string());
        refs(&mut out, ElementClass::Hazard, &self.hazards, |e| e.id.to_string());
        refs(&mut out, ElementClass::Node, &self.nodes, |e| e.id.to_string());
        refs(&mut out, ElementClass::Edge, &self.edges, |e| e.id.to_string());
        refs(&mut out, ElementClass::Uca, &self.ucas, |e| e.id.to_string());
        refs(&mut out, ElementClass::Scenario, &self.scenarios, |e| e.id.to_string());
        refs(&mut out, ElementClass::Requirement, &self.requirements, |e| e.id.to_string());
        refs(&mut out, ElementClass::Assessment, &self.assessments, |e| e.key());
        out
    }

    /// Nodes included by `boundary`, and the edges with both endpoints among
    /// them. Unresolved `includes` entries are skipped.
    pub fn elements_in_boundary(&self, boundary: &str) -> Result<BoundaryScope<'_>, ReferenceError> {
        let sb = self
            .boundary(boundary)
            .ok_or_else(|| ReferenceError::new(ElementClass::Boundary, boundary))?;
        let mut seen = HashSet::new();
        let nodes: Vec<&Node> = sb
            .includes
            .iter()
            .filter(|id| seen.insert(id.as_str()))
            .filter_map(|id| self.node(id.as_str()))
            .collect();
        let member: HashSet<&str> = nodes.iter().map(|n| n.id.as_str()).collect();
        let edges = self
            .edges
            .iter()
            .filter(|e| member.contains(e.source.as_str()) && member.contains(e.target.as_str()))
            .collect();
        Ok(BoundaryScope { nodes, edges })
    }

    /// All nodes and edges, as if the whole model were one boundary.
    pub fn whole_scope(&self) -> BoundaryScope<'_> {
        BoundaryScope {
            nodes: self.nodes.iter().collect(),
            edges: self.edges.iter().collect(),
        }
    }

    /// Resolves an optional boundary id into a scope.
    pub fn scope(&self, boundary: Option<&str>) -> Result<BoundaryScope<'_>, ReferenceError> {
        match boundary {
            Some(id) => self.elements_in_boundary(id),
            None => Ok(self.whole_scope()),
        }
    }
}

/// The nodes and edges inside one system boundary.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryScope<'a> {
    pub nodes: Vec<&'a Node>,
    pub edges: Vec<&'a Edge>,
}

impl BoundaryScope<'_> {
    pub fn control_actions(&self) -> impl Iterator<Item = &Edge> + '_ {
        self.edges.iter().copied().filter(|e| e.is_control())
    }
}

/// Hash lookup tables over a model. First declaration wins on duplicate ids.
#[derive(Debug)]
pub struct ModelIndex<'a> {
    pub losses: HashMap<&'a str, &'a Loss>,
    pub boundaries: HashMap<&'a str, &'a SystemBoundary>,
    pub hazards: HashMap<&'a str, &'a Hazard>,
    pub nodes: HashMap<&'a str, &'a Node>,
    pub edges: HashMap<&'a str, &'a Edge>,
    pub ucas: HashMap<&'a str, &'a Uca>,
    pub scenarios: HashMap<&'a str, &'a LossScenario>,
    pub requirements: HashMap<&'a str, &'a SafetyRequirement>,
}

fn table<'a, T>(items: &'a [T], id: impl Fn(&'a T) -> &'a Ident) -> HashMap<&'a str, &'a T> {
    let mut map = HashMap::with_capacity(items.len());
    for item in items {
        map.entry(id(item).as_str()).or_insert(item);
    }
    map
}

impl<'a> ModelIndex<'a> {
    pub fn new(model: &'a Model) -> Self {
        ModelIndex {
            losses: table(&model.losses, |e| &e.id),
            boundaries: table(&model.boundaries, |e| &e.id),
            hazards: table(&model.hazards, |e| &e.id),
            nodes: table(&model.nodes, |e| &e.id),
            edges: table(&model.edges, |e| &e.id),
            ucas: table(&model.ucas, |e| &e.id),
            scenarios: table(&model.scenarios, |e| &e.id),
            requirements: table(&model.requirements, |e| &e.id),
        }
    }

    pub fn contains(&self, class: ElementClass, id: &str) -> bool {
        match class {
            ElementClass::Loss => self.losses.contains_key(id),
            ElementClass::Boundary => self.boundaries.contains_key(id),
            ElementClass::Hazard => self.hazards.contains_key(id),
            ElementClass::Node => self.nodes.contains_key(id),
            ElementClass::Edge => self.edges.contains_key(id),
            ElementClass::Uca => self.ucas.contains_key(id),
            ElementClass::Scenario => self.scenarios.contains_key(id),
            ElementClass::Requirement => self.requirements.contains_key(id),
            ElementClass::Assessment => false,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn id(s: &str) -> Ident {
        Ident::new(s).unwrap()
    }

    fn node(name: &str) -> Node {
        Node {
            id: id(name),
            name: name.to_string(),
            kind: NodeKind::Human,
            process_model: None,
            control_algorithm: None,
        }
    }

    fn edge(name: &str, kind: EdgeKind, from: &str, to: &str) -> Edge {
        Edge {
            id: id(name),
            kind,
            source: id(from),
            target: id(to),
            label: String::new(),
        }
    }

    #[test]
    fn ident_rules() {
        assert!(Ident::is_valid("L1"));
        assert!(Ident::is_valid("C1_SB-3"));
        assert!(!Ident::is_valid(""));
        assert!(!Ident::is_valid("1L"));
        assert!(!Ident::is_valid("_x"));
        assert!(!Ident::is_valid("a b"));
        assert!(!Ident::is_valid("é"));
        assert!(Ident::new("9").is_err());
    }

    #[test]
    fn keyword_round_trip() {
        for g in GuideType::ALL {
            assert_eq!(GuideType::from_keyword(g.as_str()), Some(*g));
        }
        assert_eq!(LossCategory::from_keyword("fast"), None);
        assert_eq!(
            GuideType::expected(),
            "provided|not-provided|wrong-timing|stopped-too-soon-applied-too-long"
        );
    }

    #[test]
    fn lookup_is_namespaced() {
        let mut m = Model::new();
        m.losses.push(Loss {
            id: id("L1"),
            description: "x".into(),
            category: LossCategory::Sociotechnical,
        });
        assert!(matches!(m.lookup(ElementClass::Loss, "L1"), Some(Element::Loss(_))));
        assert_eq!(m.lookup(ElementClass::Hazard, "L1"), None);
        assert_eq!(Model::new().lookup(ElementClass::Loss, "L1"), None);
        assert_eq!(m.lookup(ElementClass::Node, "does-not-exist"), None);
    }

    #[test]
    fn boundary_scope_filters_edges() {
        let mut m = Model::new();
        for n in ["A", "B", "C"] {
            m.nodes.push(node(n));
        }
        m.edges.push(edge("E1", EdgeKind::ControlAction, "A", "B"));
        m.edges.push(edge("E2", EdgeKind::ControlAction, "B", "C"));
        m.edges.push(edge("E3", EdgeKind::Feedback, "B", "A"));
        m.boundaries.push(SystemBoundary {
            id: id("SB"),
            name: "s".into(),
            stage: None,
            includes: vec![id("A"), id("B"), id("A"), id("Ghost")],
        });
        m.boundaries.push(SystemBoundary {
            id: id("Empty"),
            name: "e".into(),
            stage: None,
            includes: vec![],
        });
        let scope = m.elements_in_boundary("SB").unwrap();
        let nodes: Vec<_> = scope.nodes.iter().map(|n| n.id.as_str()).collect();
        let edges: Vec<_> = scope.edges.iter().map(|e| e.id.as_str()).collect();
        assert_eq!(nodes, ["A", "B"]);
        assert_eq!(edges, ["E1", "E3"]);

        let empty = m.elements_in_boundary("Empty").unwrap();
        assert!(empty.nodes.is_empty() && empty.edges.is_empty());

        let err = m.elements_in_boundary("NOPE").unwrap_err();
        assert_eq!(err, ReferenceError::new(ElementClass::Boundary, "NOPE"));
        assert_eq!(err.to_string(), "unknown boundary `NOPE`");
    }

    #[test]
    fn equality_ignores_spans() {
        let mut a = Model::new();
        a.nodes.push(node("A"));
        let mut b = a.clone();
        b.spans.insert(ElementRef::new(ElementClass::Node, "A"), Span::new("f", 3, 1));
        assert_eq!(a, b);
        b.nodes[0].name = "changed".into();
        assert_ne!(a, b);
    }
}
