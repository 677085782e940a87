use std::collections::{BTreeMap, BTreeSet};

use super::{graphical_matrix, graphical_realize_named, BooleanNetwork, GraphicalFamily, LabeledMatrix, Node};
use crate::error::{Error, Result};
use crate::extend::{apply_placement, NcfPlacement};

/// One new regulation `source → target` added to a nested canalizing node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NcfConnection {
    pub source: String,
    pub target: String,
    pub placement: NcfPlacement,
}

/// How the simple networks are wired together along each edge of `Q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Connections {
    /// Block `(i, j)` has one row per node of network `j` and one column per
    /// node of network `i`; it must be non-zero for every edge of `Q`.
    Graphical {
        family: GraphicalFamily,
        blocks: BTreeMap<(usize, usize), LabeledMatrix>,
    },
    /// Applied in order; placements refer to the target's current inputs.
    Ncf(Vec<NcfConnection>),
}

fn check_q_graph(m: usize, q_graph: &BTreeSet<(usize, usize)>) -> Result<()> {
    for &(i, j) in q_graph {
        if j >= m {
            return Err(Error::Order(format!("edge ({}, {}) names a missing network", i + 1, j + 1)));
        }
        if i >= j {
            return Err(Error::Order(format!(
                "edge ({}, {}) does not follow the order of the networks",
                i + 1,
                j + 1
            )));
        }
    }
    Ok(())
}

/// Assembles `simple` (in order) into one network whose components are
/// connected exactly along `q_graph`.
pub fn compose(
    simple: &[BooleanNetwork],
    q_graph: &BTreeSet<(usize, usize)>,
    connections: &Connections,
) -> Result<BooleanNetwork> {
    if simple.is_empty() {
        return Err(Error::Network("nothing to compose".into()));
    }
    check_q_graph(simple.len(), q_graph)?;
    match connections {
        Connections::Graphical { family, blocks } => compose_graphical(simple, q_graph, *family, blocks),
        Connections::Ncf(additions) => compose_ncf(simple, q_graph, additions),
    }
}

fn offsets(simple: &[BooleanNetwork]) -> Vec<usize> {
    simple
        .iter()
        .scan(0, |acc, f| {
            let start = *acc;
            *acc += f.len();
            Some(start)
        })
        .collect()
}

fn compose_graphical(
    simple: &[BooleanNetwork],
    q_graph: &BTreeSet<(usize, usize)>,
    family: GraphicalFamily,
    blocks: &BTreeMap<(usize, usize), LabeledMatrix>,
) -> Result<BooleanNetwork> {
    if let Some(&(i, j)) = blocks.keys().find(|e| !q_graph.contains(e)) {
        return Err(Error::Contradiction(format!(
            "a block is given for ({}, {}), which is not an edge of Q",
            i + 1,
            j + 1
        )));
    }
    let start = offsets(simple);
    let n: usize = simple.iter().map(BooleanNetwork::len).sum();
    let mut w = LabeledMatrix::zeros(n, n, family.z())?;
    for (k, f) in simple.iter().enumerate() {
        let wk = graphical_matrix(f, family)?;
        for r in 0..f.len() {
            for c in 0..f.len() {
                w.set(start[k] + r, start[k] + c, wk.get(r, c))?;
            }
        }
    }
    for &(i, j) in q_graph {
        let edge = format!("({}, {})", i + 1, j + 1);
        let p = blocks
            .get(&(i, j))
            .ok_or_else(|| Error::Contradiction(format!("edge {edge} of Q has no connection block")))?;
        if p.rows() != simple[j].len() || p.cols() != simple[i].len() {
            return Err(Error::Shape(format!(
                "block for {edge} is {}×{}, expected {}×{}",
                p.rows(),
                p.cols(),
                simple[j].len(),
                simple[i].len()
            )));
        }
        if p.z() != family.z() {
            return Err(Error::Family(format!("block for {edge} uses z = {}", p.z())));
        }
        if p.is_zero() {
            return Err(Error::Contradiction(format!(
                "block for {edge} is zero, so the networks would not be connected"
            )));
        }
        for r in 0..p.rows() {
            for c in 0..p.cols() {
                w.set(start[j] + r, start[i] + c, p.get(r, c))?;
            }
        }
    }
    let names = simple.iter().flat_map(BooleanNetwork::names).collect();
    graphical_realize_named(&w, family, names)
}

fn compose_ncf(
    simple: &[BooleanNetwork],
    q_graph: &BTreeSet<(usize, usize)>,
    additions: &[NcfConnection],
) -> Result<BooleanNetwork> {
    let mut union = simple[0].clone();
    for f in &simple[1..] {
        union = union.disjoint_union(f)?;
    }
    let start = offsets(simple);
    let component = |v: usize| start.iter().rposition(|&s| s <= v).expect("offsets start at 0");
    let names = union.names();
    let lookup = |name: &str| {
        names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::Network(format!("unknown node `{name}`")))
    };
    let mut nodes: Vec<Node> = union.nodes;
    let mut used = BTreeSet::new();
    for add in additions {
        let s = lookup(&add.source)?;
        let t = lookup(&add.target)?;
        let edge = (component(s), component(t));
        if !q_graph.contains(&edge) {
            return Err(Error::Contradiction(format!(
                "`{}` → `{}` joins networks {} and {}, which Q does not connect",
                add.source,
                add.target,
                edge.0 + 1,
                edge.1 + 1
            )));
        }
        used.insert(edge);
        let node = &mut nodes[t];
        if node.inputs.contains(&s) {
            return Err(Error::Placement(format!("`{}` already reads `{}`", add.target, add.source)));
        }
        node.function = apply_placement(&node.function, &add.placement, node.inputs.len())
            .map_err(|e| match e {
                Error::NotNestedCanalizing(_) => {
                    Error::NotNestedCanalizing(format!(" (node `{}`)", add.target))
                }
                other => other,
            })?;
        node.inputs.push(s);
    }
    if let Some(&(i, j)) = q_graph.iter().find(|e| !used.contains(e)) {
        return Err(Error::Contradiction(format!(
            "edge ({}, {}) of Q has no connection",
            i + 1,
            j + 1
        )));
    }
    BooleanNetwork::from_nodes(nodes)
}
