use std::collections::{BTreeSet, HashSet};
use std::fmt::Write;

use serde::Serialize;

use crate::model::*;

/// One element of a traceability tree with the elements that depend on it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceNode {
    pub element: ElementRef,
    pub label: String,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub children: Vec<TraceNode>,
}

impl TraceNode {
    fn leaf(class: ElementClass, id: &Ident, label: &str) -> Self {
        TraceNode {
            element: ElementRef::new(class, id.as_str()),
            label: label.to_string(),
            children: Vec::new(),
        }
    }

    /// Number of levels below this node; a lone root has depth 0.
    pub fn depth(&self) -> usize {
        self.children.iter().map(|c| c.depth() + 1).max().unwrap_or(0)
    }

    /// Every element in the tree, root included.
    pub fn elements(&self) -> BTreeSet<ElementRef> {
        let mut out = BTreeSet::new();
        self.collect(&mut out);
        out
    }

    fn collect(&self, out: &mut BTreeSet<ElementRef>) {
        out.insert(self.element.clone());
        for c in &self.children {
            c.collect(out);
        }
    }

    /// Elements at `level` (0 = root), duplicates included.
    pub fn level(&self, level: usize) -> Vec<&TraceNode> {
        if level == 0 {
            return vec![self];
        }
        self.children.iter().flat_map(|c| c.level(level - 1)).collect()
    }

    /// Indented text, two spaces per level.
    pub fn render(&self) -> String {
        let mut out = String::new();
        self.render_into(&mut out, 0);
        out
    }

    fn render_into(&self, out: &mut String, depth: usize) {
        writeln!(out, "{:indent$}{} {}: {}", "", self.element.class, self.element.id, self.label, indent = depth * 2).unwrap();
        for c in &self.children {
            c.render_into(out, depth + 1);
        }
    }
}

/// Traces a loss down the chain hazard → UCA → scenario → requirement.
pub fn trace_loss(model: &Model, loss: &str) -> Result<TraceNode, ReferenceError> {
    let root = model
        .loss(loss)
        .ok_or_else(|| ReferenceError::new(ElementClass::Loss, loss))?;
    let mut tree = TraceNode::leaf(ElementClass::Loss, &root.id, &root.description);
    for h in model.hazards.iter().filter(|h| h.leads_to.contains(&root.id)) {
        let mut hazard = TraceNode::leaf(ElementClass::Hazard, &h.id, &h.description);
        for u in model.ucas.iter().filter(|u| u.hazards.contains(&h.id)) {
            let mut uca = TraceNode::leaf(ElementClass::Uca, &u.id, &u.context);
            for s in model.scenarios.iter().filter(|s| s.uca == u.id) {
                let mut scenario = TraceNode::leaf(ElementClass::Scenario, &s.id, &s.description);
                scenario.children = model
                    .requirements
                    .iter()
                    .filter(|r| r.scenarios.contains(&s.id))
                    .map(|r| TraceNode::leaf(ElementClass::Requirement, &r.id, &r.text))
                    .collect();
                uca.children.push(scenario);
            }
            hazard.children.push(uca);
        }
        tree.children.push(hazard);
    }
    Ok(tree)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceItem {
    pub id: Ident,
    pub label: String,
}

impl TraceItem {
    fn new(id: &Ident, label: &str) -> Self {
        TraceItem {
            id: id.clone(),
            label: label.to_string(),
        }
    }
}

/// What one actor controls and can therefore mitigate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Accountability {
    pub node: TraceItem,
    /// Control actions issued by the node.
    pub control_actions: Vec<TraceItem>,
    /// UCAs on those actions.
    pub ucas: Vec<TraceItem>,
    pub hazards: Vec<TraceItem>,
    pub losses: Vec<TraceItem>,
    /// Scenarios naming the node in their `elements`.
    pub scenarios: Vec<TraceItem>,
}

impl Accountability {
    pub fn is_empty(&self) -> bool {
        self.control_actions.is_empty()
            && self.ucas.is_empty()
            && self.hazards.is_empty()
            && self.losses.is_empty()
            && self.scenarios.is_empty()
    }

    pub fn render(&self) -> String {
        let mut out = format!("node {}: {}\n", self.node.id, self.node.label);
        for (title, items) in [
            ("control actions", &self.control_actions),
            ("unsafe control actions", &self.ucas),
            ("hazards", &self.hazards),
            ("losses", &self.losses),
            ("scenarios citing this node", &self.scenarios),
        ] {
            writeln!(out, "  {title}:").unwrap();
            if items.is_empty() {
                out.push_str("    (none)\n");
            }
            for item in items {
                writeln!(out, "    {}: {}", item.id, item.label).unwrap();
            }
        }
        out
    }
}

/// Accountability view for one node. Every list is in declaration order.
pub fn trace_node(model: &Model, node: &str) -> Result<Accountability, ReferenceError> {
    let n = model
        .node(node)
        .ok_or_else(|| ReferenceError::new(ElementClass::Node, node))?;
    let actions: Vec<&Edge> = model
        .edges
        .iter()
        .filter(|e| e.is_control() && e.source == n.id)
        .collect();
    let action_ids: HashSet<&str> = actions.iter().map(|e| e.id.as_str()).collect();
    let ucas: Vec<&Uca> = model
        .ucas
        .iter()
        .filter(|u| action_ids.contains(u.action.as_str()))
        .collect();
    let hazard_ids: HashSet<&str> = ucas.iter().flat_map(|u| u.hazards.iter().map(Ident::as_str)).collect();
    let hazards: Vec<&Hazard> = model
        .hazards
        .iter()
        .filter(|h| hazard_ids.contains(h.id.as_str()))
        .collect();
    let loss_ids: HashSet<&str> = hazards.iter().flat_map(|h| h.leads_to.iter().map(Ident::as_str)).collect();

    Ok(Accountability {
        node: TraceItem::new(&n.id, &n.name),
        control_actions: actions.iter().map(|e| TraceItem::new(&e.id, &e.label)).collect(),
        ucas: ucas.iter().map(|u| TraceItem::new(&u.id, &u.context)).collect(),
        hazards: hazards.iter().map(|h| TraceItem::new(&h.id, &h.description)).collect(),
        losses: model
            .losses
            .iter()
            .filter(|l| loss_ids.contains(l.id.as_str()))
            .map(|l| TraceItem::new(&l.id, &l.description))
            .collect(),
        scenarios: model
            .scenarios
            .iter()
            .filter(|s| s.elements.contains(&n.id))
            .map(|s| TraceItem::new(&s.id, &s.description))
            .collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::parse;

    const DOC: &str = r#"
loss L1 "life" category=safety-critical
loss L2 "orphan" category=sociotechnical
boundary SB "b" includes=[A, B]
hazard H1 "h1" boundary=SB leads_to=[L1]
hazard H2 "h2" boundary=SB leads_to=[L1]
node A "a" kind=human
node B "b" kind=ai-model
node C "c" kind=team
action CA1 from=A to=B "act"
uca U1 action=CA1 type=provided category=functional context="u1" hazards=[H1]
uca U2 action=CA1 type=not-provided category=functional context="u2" hazards=[H2]
scenario S1 uca=U1 class=technical "s1" elements=[C]
requirement R1 scenarios=[S1] "r1"
"#;

    fn model() -> Model {
        parse(DOC, "t").into_result().unwrap()
    }

    #[test]
    fn two_hazards_two_ucas() {
        let tree = trace_loss(&model(), "L1").unwrap();
        assert_eq!(tree.level(1).len(), 2);
        assert_eq!(tree.level(2).len(), 2);
        assert_eq!(tree.depth(), 4);
        assert_eq!(
            tree.render(),
            "loss L1: life\n  hazard H1: h1\n    uca U1: u1\n      scenario S1: s1\n        requirement R1: r1\n  hazard H2: h2\n    uca U2: u2\n"
        );
    }

    #[test]
    fn loss_without_hazards() {
        let tree = trace_loss(&model(), "L2").unwrap();
        assert_eq!(tree.depth(), 0);
        assert_eq!(tree.elements().len(), 1);
        assert_eq!(trace_loss(&model(), "L7").unwrap_err().class, ElementClass::Loss);
    }

    #[test]
    fn accountability() {
        let m = model();
        let a = trace_node(&m, "A").unwrap();
        assert_eq!(a.control_actions.len(), 1);
        assert_eq!(a.ucas.iter().map(|u| u.id.as_str()).collect::<Vec<_>>(), ["U1", "U2"]);
        assert_eq!(a.hazards.len(), 2);
        assert_eq!(a.losses.len(), 1);
        assert!(a.scenarios.is_empty());

        assert!(trace_node(&m, "B").unwrap().is_empty());

        let c = trace_node(&m, "C").unwrap();
        assert!(c.control_actions.is_empty() && c.ucas.is_empty() && c.hazards.is_empty());
        assert_eq!(c.scenarios.len(), 1);
        assert!(trace_node(&m, "Z").is_err());
    }
}
