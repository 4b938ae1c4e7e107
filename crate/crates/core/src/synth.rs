//! Seeded random models for benchmarks and property tests.
//!
//! Free text is drawn from a pool that exercises quoting: embedded quotes,
//! backslashes, `#`, `=`, brackets and non-ASCII characters.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::model::*;

const WORDS: &[&str] = &[
    "alarm",
    "pump",
    "dose",
    "model",
    "\"quoted\"",
    "back\\slash",
    "#not-a-comment",
    "key=value",
    "[bracket]",
    "a,b",
    "Ärztin",
    "血糖",
    "naïve",
    "→",
    "late",
    "drift",
    "",
];

/// Element counts and shape switches. Counts of dependent classes are
/// clamped to zero when what they must reference is absent, so with
/// `dangling_rate == 0` and `self_loops == false` the result validates
/// without errors.
#[derive(Debug, Clone, PartialEq)]
pub struct SynthConfig {
    pub name: bool,
    pub losses: usize,
    pub boundaries: usize,
    pub hazards: usize,
    pub nodes: usize,
    pub control_actions: usize,
    pub feedback: usize,
    pub io_links: usize,
    pub ucas: usize,
    pub scenarios: usize,
    pub requirements: usize,
    pub assessments: usize,
    /// Control actions only run from earlier to later nodes.
    pub acyclic: bool,
    /// Allow edges whose endpoints coincide.
    pub self_loops: bool,
    /// Chance that any single reference is replaced by an undeclared id.
    pub dangling_rate: f64,
}

impl Default for SynthConfig {
    fn default() -> Self {
        SynthConfig {
            name: true,
            losses: 3,
            boundaries: 2,
            hazards: 4,
            nodes: 5,
            control_actions: 6,
            feedback: 4,
            io_links: 1,
            ucas: 6,
            scenarios: 4,
            requirements: 3,
            assessments: 2,
            acyclic: false,
            self_loops: false,
            dangling_rate: 0.0,
        }
    }
}

impl SynthConfig {
    /// Counts scaled linearly by `n`, for benchmarks.
    pub fn scaled(n: usize) -> Self {
        SynthConfig {
            losses: 2 * n,
            boundaries: n,
            hazards: 4 * n,
            nodes: 5 * n,
            control_actions: 10 * n,
            feedback: 6 * n,
            io_links: 2 * n,
            ucas: 15 * n,
            scenarios: 10 * n,
            requirements: 6 * n,
            assessments: 5 * n,
            ..SynthConfig::default()
        }
    }

    /// Random counts with `total` elements at most, all classes allowed.
    pub fn random_small(rng: &mut impl Rng, total: usize) -> Self {
        let mut counts = [0usize; 11];
        for _ in 0..rng.gen_range(0..=total) {
            counts[rng.gen_range(0..counts.len())] += 1;
        }
        let [losses, boundaries, hazards, nodes, control_actions, feedback, io_links, ucas, scenarios, requirements, assessments] =
            counts;
        SynthConfig {
            name: rng.gen_bool(0.5),
            losses,
            boundaries,
            hazards,
            nodes,
            control_actions,
            feedback,
            io_links,
            ucas,
            scenarios,
            requirements,
            assessments,
            acyclic: rng.gen_bool(0.5),
            self_loops: false,
            dangling_rate: 0.0,
        }
    }
}

struct Gen {
    rng: ChaCha8Rng,
    dangling_rate: f64,
    ghosts: usize,
}

impl Gen {
    fn text(&mut self) -> String {
        let n = self.rng.gen_range(1..=4);
        (0..n)
            .map(|_| *WORDS.choose(&mut self.rng).unwrap())
            .collect::<Vec<_>>()
            .join(" ")
    }

    fn ident(prefix: &str, i: usize) -> Ident {
        Ident::new(format!("{prefix}{}", i + 1)).unwrap()
    }

    /// A reference into `pool`, or occasionally an undeclared id.
    fn pick(&mut self, pool: &[Ident]) -> Ident {
        if pool.is_empty() || self.rng.gen_bool(self.dangling_rate) {
            self.ghosts += 1;
            return Ident::new(format!("Ghost{}", self.ghosts)).unwrap();
        }
        pool.choose(&mut self.rng).unwrap().clone()
    }

    fn subset(&mut self, pool: &[Ident], min: usize) -> Vec<Ident> {
        let n = self.rng.gen_range(min.min(pool.len())..=pool.len().min(3));
        let mut out: Vec<Ident> = pool.choose_multiple(&mut self.rng, n).cloned().collect();
        for item in &mut out {
            if self.rng.gen_bool(self.dangling_rate) {
                self.ghosts += 1;
                *item = Ident::new(format!("Ghost{}", self.ghosts)).unwrap();
            }
        }
        if out.len() < min {
            out.push(self.pick(pool));
        }
        out
    }

    fn choose<T: Copy>(&mut self, options: &[T]) -> T {
        *options.choose(&mut self.rng).unwrap()
    }
}

/// Generates a model deterministically from `seed`.
pub fn generate(seed: u64, cfg: &SynthConfig) -> Model {
    let mut g = Gen {
        rng: ChaCha8Rng::seed_from_u64(seed),
        dangling_rate: cfg.dangling_rate,
        ghosts: 0,
    };
    let mut cfg = cfg.clone();
    if cfg.losses == 0 || cfg.boundaries == 0 {
        cfg.hazards = 0;
    }
    let edge_capable = cfg.nodes >= 2 || (cfg.nodes == 1 && cfg.self_loops);
    if !edge_capable {
        cfg.control_actions = 0;
        cfg.feedback = 0;
        cfg.io_links = 0;
    }
    if cfg.control_actions == 0 || cfg.hazards == 0 {
        cfg.ucas = 0;
    }
    if cfg.control_actions == 0 {
        cfg.assessments = 0;
    }
    if cfg.ucas == 0 {
        cfg.scenarios = 0;
    }
    if cfg.scenarios == 0 {
        cfg.requirements = 0;
    }
    cfg.assessments = cfg.assessments.min(4 * cfg.control_actions);

    let mut m = Model::new();
    if cfg.name {
        m.name = Some(g.text());
    }

    for i in 0..cfg.losses {
        m.losses.push(Loss {
            id: Gen::ident("L", i),
            description: g.text(),
            category: g.choose(LossCategory::ALL),
        });
    }
    let node_ids: Vec<Ident> = (0..cfg.nodes).map(|i| Gen::ident("N", i)).collect();
    for i in 0..cfg.boundaries {
        let includes = g.subset(&node_ids, 0);
        let stage = if g.rng.gen_bool(0.7) {
            Some(g.choose(Stage::ALL))
        } else {
            None
        };
        m.boundaries.push(SystemBoundary {
            id: Gen::ident("SB", i),
            name: g.text(),
            stage,
            includes,
        });
    }
    let loss_ids: Vec<Ident> = m.losses.iter().map(|l| l.id.clone()).collect();
    let boundary_ids: Vec<Ident> = m.boundaries.iter().map(|b| b.id.clone()).collect();
    for i in 0..cfg.hazards {
        m.hazards.push(Hazard {
            id: Gen::ident("H", i),
            description: g.text(),
            boundary: g.pick(&boundary_ids),
            leads_to: g.subset(&loss_ids, 1),
        });
    }
    for id in &node_ids {
        let process_model = g.rng.gen_bool(0.5).then(|| g.text());
        let control_algorithm = g.rng.gen_bool(0.3).then(|| g.text());
        m.nodes.push(Node {
            id: id.clone(),
            name: g.text(),
            kind: g.choose(NodeKind::ALL),
            process_model,
            control_algorithm,
        });
    }

    let endpoints = |g: &mut Gen, ordered: bool| -> (Ident, Ident) {
        let n = node_ids.len();
        if n == 1 || (cfg.self_loops && g.rng.gen_bool(0.1)) {
            let a = g.rng.gen_range(0..n);
            return (node_ids[a].clone(), node_ids[a].clone());
        }
        let a = g.rng.gen_range(0..n);
        let mut b = g.rng.gen_range(0..n - 1);
        if b >= a {
            b += 1;
        }
        let (a, b) = if ordered && a > b { (b, a) } else { (a, b) };
        let mut source = node_ids[a].clone();
        let mut target = node_ids[b].clone();
        if g.rng.gen_bool(g.dangling_rate) {
            source = g.pick(&[]);
        }
        if g.rng.gen_bool(g.dangling_rate) {
            target = g.pick(&[]);
        }
        (source, target)
    };
    for (count, kind, prefix) in [
        (cfg.control_actions, EdgeKind::ControlAction, "CA"),
        (cfg.feedback, EdgeKind::Feedback, "FB"),
        (cfg.io_links, EdgeKind::IoLink, "IO"),
    ] {
        for i in 0..count {
            let (source, target) = endpoints(&mut g, cfg.acyclic && kind == EdgeKind::ControlAction);
            m.edges.push(Edge {
                id: Gen::ident(prefix, i),
                kind,
                source,
                target,
                label: g.text(),
            });
        }
    }

    let actions: Vec<&Edge> = m.edges.iter().filter(|e| e.is_control()).collect();
    let action_ids: Vec<Ident> = actions.iter().map(|e| e.id.clone()).collect();
    let hazard_ids: Vec<Ident> = m.hazards.iter().map(|h| h.id.clone()).collect();
    for i in 0..cfg.ucas {
        let edge = *actions.choose(&mut g.rng).unwrap();
        let action = if g.rng.gen_bool(g.dangling_rate) {
            g.pick(&[])
        } else {
            edge.id.clone()
        };
        let source = g.rng.gen_bool(0.3).then(|| edge.source.clone());
        m.ucas.push(Uca {
            id: Gen::ident("U", i),
            source,
            action,
            guide_type: g.choose(GuideType::ALL),
            category: g.choose(UcaCategory::ALL),
            context: g.text(),
            hazards: g.subset(&hazard_ids, 1),
        });
    }
    let uca_ids: Vec<Ident> = m.ucas.iter().map(|u| u.id.clone()).collect();
    let elements: Vec<Ident> = node_ids.iter().chain(m.edges.iter().map(|e| &e.id)).cloned().collect();
    for i in 0..cfg.scenarios {
        m.scenarios.push(LossScenario {
            id: Gen::ident("S", i),
            uca: g.pick(&uca_ids),
            class: g.choose(ScenarioClass::ALL),
            description: g.text(),
            elements: g.subset(&elements, 0),
        });
    }
    let scenario_ids: Vec<Ident> = m.scenarios.iter().map(|s| s.id.clone()).collect();
    for i in 0..cfg.requirements {
        m.requirements.push(SafetyRequirement {
            id: Gen::ident("R", i),
            scenarios: g.subset(&scenario_ids, 1),
            text: g.text(),
        });
    }

    let mut cells: Vec<(Ident, GuideType)> = action_ids
        .iter()
        .flat_map(|a| GuideType::ALL.iter().map(move |g| (a.clone(), *g)))
        .collect();
    cells.shuffle(&mut g.rng);
    for (action, guide_type) in cells.into_iter().take(cfg.assessments) {
        let action = if g.rng.gen_bool(g.dangling_rate) { g.pick(&[]) } else { action };
        m.assessments.push(Assessment {
            action,
            guide_type,
            verdict: Verdict::NotHazardous,
            rationale: g.text(),
        });
    }
    m
}
