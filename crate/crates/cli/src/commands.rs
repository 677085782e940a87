use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;

use boolnet::boolfn::BooleanFunction;
use boolnet::extend::{
    count_extensions_general, count_ncf_extensions, ncf_placements, apply_placement, NcfPlacement,
};
use boolnet::io::{
    emit_decomposition_dot, emit_dot, emit_json, emit_network, emit_tables, parse_network, parse_tables,
    CountDoc, DecompositionDoc, NetworkDoc, NodeReport,
};
use boolnet::network::{
    compose as compose_networks, count_graphical_compositions, count_graphical_extensions,
    count_network_extensions, scc_decompose, Connections, CutPolicy, ExtensionMode, GraphicalFamily,
    LabeledMatrix, NcfConnection, Node,
};
use boolnet::verify::run_checks;
use boolnet::{BooleanNetwork, LayerStructure};
use clap::{Args, ValueEnum};
use num_bigint::BigUint;

use crate::{CliError, DocFormat, NetworkFormat, Output, PolicyArg, ReportFormat};

type Result<T> = std::result::Result<T, CliError>;

fn read_source(file: Option<&PathBuf>) -> Result<String> {
    match file {
        Some(path) if path.as_os_str() != "-" => fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display()))),
        _ => {
            let mut text = String::new();
            io::stdin()
                .read_to_string(&mut text)
                .map_err(|e| CliError::Usage(format!("cannot read stdin: {e}")))?;
            Ok(text)
        }
    }
}

/// Table files start with a `.variables` header; anything else is rules.
fn load_network(file: Option<&PathBuf>) -> Result<BooleanNetwork> {
    let text = read_source(file)?;
    let is_tables = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .find(|l| !l.is_empty())
        .is_some_and(|l| l.starts_with(".variables"));
    let f = if is_tables { parse_tables(&text)? } else { parse_network(&text)? };
    Ok(f)
}

fn write_out(out: &Output, text: &str) -> Result<()> {
    match &out.output {
        Some(path) => fs::write(path, text)
            .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut stdout = io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| CliError::Failed(format!("cannot write output: {e}")))
        }
    }
}

fn render_network(f: &BooleanNetwork, format: NetworkFormat) -> String {
    match format {
        NetworkFormat::Rules => emit_network(f),
        NetworkFormat::Tables => emit_tables(f),
        NetworkFormat::Json => emit_json(&NetworkDoc::from(f)),
        NetworkFormat::Dot => emit_dot(f),
    }
}

fn report_text(r: &NodeReport) -> String {
    let mut s = format!("{} <- {}\n", r.name, r.inputs.join(" "));
    s.push_str(&format!("  table: {}\n", r.table));
    s.push_str(&format!("  essential: {}\n", r.essential.join(" ")));
    let pairs: Vec<String> = r
        .canalizing_pairs
        .iter()
        .map(|p| format!("{}={}->{}", p.variable, p.input, p.output))
        .collect();
    s.push_str(&format!("  canalizing: {}\n", if pairs.is_empty() { "none".into() } else { pairs.join(" ") }));
    s.push_str(&format!("  nested canalizing: {}\n", if r.nested_canalizing { "yes" } else { "no" }));
    let sizes: Vec<String> = r.layer_structure.iter().map(ToString::to_string).collect();
    s.push_str(&format!("  layer structure: [{}]\n", sizes.join(",")));
    s.push_str(&format!("  depth: {}\n", r.depth));
    if !r.core_variables.is_empty() {
        s.push_str(&format!("  core: {}\n", r.core_variables.join(" ")));
    }
    s
}

pub fn analyze(file: Option<PathBuf>, node: Option<String>, format: ReportFormat, out: &Output) -> Result<()> {
    let f = load_network(file.as_ref())?;
    let indices: Vec<usize> = match &node {
        Some(name) => vec![f.index_of(name).ok_or_else(|| CliError::Usage(format!("no node `{name}`")))?],
        None => (0..f.len()).collect(),
    };
    let reports: Vec<NodeReport> = indices.iter().map(|&i| NodeReport::new(&f, i)).collect();
    let text = match format {
        ReportFormat::Text => reports.iter().map(report_text).collect(),
        ReportFormat::Json => emit_json(&reports),
    };
    write_out(out, &text)
}

fn parse_family(name: &str) -> Result<GraphicalFamily> {
    name.parse().map_err(|e: boolnet::Error| CliError::Usage(e.to_string()))
}

fn parse_map(spec: &str) -> Result<BTreeMap<String, bool>> {
    spec.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|item| {
            let (k, v) = item
                .split_once('=')
                .ok_or_else(|| CliError::Usage(format!("expected NAME=0|1, got `{item}`")))?;
            let v = match v.trim() {
                "0" => false,
                "1" => true,
                other => return Err(CliError::Usage(format!("value for `{}` must be 0 or 1, got `{other}`", k.trim()))),
            };
            Ok((k.trim().to_string(), v))
        })
        .collect()
}

pub fn decompose(
    file: Option<PathBuf>,
    policy: PolicyArg,
    map: Option<String>,
    family: Option<String>,
    format: DocFormat,
    out: &Output,
) -> Result<()> {
    if map.is_some() && !matches!(policy, PolicyArg::Map) {
        return Err(CliError::Usage("--map needs --policy map".into()));
    }
    if family.is_some() && !matches!(policy, PolicyArg::Graphical) {
        return Err(CliError::Usage("--family needs --policy graphical".into()));
    }
    let policy = match policy {
        PolicyArg::Zeros => CutPolicy::Zeros,
        PolicyArg::Ncf => CutPolicy::NcfDefault,
        PolicyArg::Map => CutPolicy::Explicit(parse_map(map.as_deref().unwrap_or(""))?),
        PolicyArg::Graphical => {
            let name = family.ok_or_else(|| CliError::Usage("--policy graphical needs --family".into()))?;
            CutPolicy::Graphical(parse_family(&name)?)
        }
    };
    let f = load_network(file.as_ref())?;
    let d = scc_decompose(&f, &policy)?;
    let text = match format {
        DocFormat::Json => emit_json(&DecompositionDoc::from(&d)),
        DocFormat::Dot => emit_decomposition_dot(&f, &d),
        DocFormat::Text => {
            let mut s = format!("policy: {}\n", policy.name());
            for (i, g) in d.simple_networks.iter().enumerate() {
                s.push_str(&format!("X{}: {}\n", i + 1, g.names().join(" ")));
            }
            let q: Vec<String> = d.q_graph.iter().map(|(i, j)| format!("{}-{}", i + 1, j + 1)).collect();
            s.push_str(&format!("Q: {}\n", q.join(",")));
            for (i, g) in d.simple_networks.iter().enumerate() {
                s.push_str(&format!("\n# X{}\n{}", i + 1, emit_network(g)));
            }
            s
        }
    };
    write_out(out, &text)
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CountMode {
    General,
    Ncf,
    Graphical,
    Network,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum ExtensionArg {
    General,
    Ncf,
}

#[derive(Args)]
pub struct CountArgs {
    #[arg(long, value_enum)]
    mode: CountMode,
    /// Inputs of the function being extended (general).
    #[arg(long)]
    n: Option<usize>,
    /// Number of new inputs (general, ncf).
    #[arg(long)]
    q: Option<usize>,
    /// Layer structure, e.g. `2,1,2` (ncf).
    #[arg(long)]
    layers: Option<String>,
    #[arg(long)]
    n1: Option<usize>,
    #[arg(long)]
    n2: Option<usize>,
    /// Component sizes, e.g. `2,2` (graphical, all acyclic graphs).
    #[arg(long)]
    sizes: Option<String>,
    #[arg(long)]
    z: Option<u8>,
    /// Network file (network).
    file: Option<PathBuf>,
    /// Number of upstream nodes (network).
    #[arg(long)]
    upstream: Option<usize>,
    /// Which extensions of each node to count (network).
    #[arg(long, value_enum)]
    extensions: Option<ExtensionArg>,
    #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
    format: ReportFormat,
    #[command(flatten)]
    out: Output,
}

fn parse_list(flag: &str, text: &str) -> Result<Vec<usize>> {
    text.split(',')
        .map(|s| {
            s.trim()
                .parse()
                .map_err(|_| CliError::Usage(format!("--{flag} expects comma-separated integers, got `{text}`")))
        })
        .collect()
}

fn need<T: Copy>(flag: &str, value: Option<T>) -> Result<T> {
    value.ok_or_else(|| CliError::Usage(format!("this mode needs --{flag}")))
}

pub fn count(a: CountArgs) -> Result<()> {
    let given: Vec<(&str, bool)> = vec![
        ("n", a.n.is_some()),
        ("q", a.q.is_some()),
        ("layers", a.layers.is_some()),
        ("n1", a.n1.is_some()),
        ("n2", a.n2.is_some()),
        ("sizes", a.sizes.is_some()),
        ("z", a.z.is_some()),
        ("file", a.file.is_some()),
        ("upstream", a.upstream.is_some()),
        ("extensions", a.extensions.is_some()),
    ];
    let allowed: &[&str] = match a.mode {
        CountMode::General => &["n", "q"],
        CountMode::Ncf => &["layers", "q"],
        CountMode::Graphical => &["n1", "n2", "sizes", "z"],
        CountMode::Network => &["file", "upstream", "extensions"],
    };
    if let Some((flag, _)) = given.iter().find(|(flag, set)| *set && !allowed.contains(flag)) {
        return Err(CliError::Usage(format!("--{flag} does not apply to this mode")));
    }
    let mut params: Vec<(&str, String)> = Vec::new();
    let (mode, count): (&str, BigUint) = match a.mode {
        CountMode::General => {
            let (n, q) = (need("n", a.n)?, need("q", a.q)?);
            params.extend([("n", n.to_string()), ("q", q.to_string())]);
            ("general", count_extensions_general(n, q)?)
        }
        CountMode::Ncf => {
            let layers = a.layers.as_deref().ok_or_else(|| CliError::Usage("this mode needs --layers".into()))?;
            let q = need("q", a.q)?;
            let ls = LayerStructure::ncf(parse_list("layers", layers)?)?;
            params.extend([("layers", layers.to_string()), ("q", q.to_string())]);
            ("ncf", count_ncf_extensions(&ls, q)?)
        }
        CountMode::Graphical => {
            let z = need("z", a.z)?;
            params.push(("z", z.to_string()));
            match (&a.sizes, a.n1, a.n2) {
                (Some(sizes), None, None) => {
                    let sizes_list = parse_list("sizes", sizes)?;
                    let (by_graphs, closed) = count_graphical_compositions(&sizes_list, z)?;
                    if by_graphs != closed {
                        return Err(CliError::Failed(format!(
                            "sum over acyclic graphs gives {by_graphs} but z^M gives {closed}"
                        )));
                    }
                    params.push(("sizes", sizes.clone()));
                    ("graphical", closed)
                }
                (None, Some(n1), Some(n2)) => {
                    params.extend([("n1", n1.to_string()), ("n2", n2.to_string())]);
                    ("graphical", count_graphical_extensions(n1, n2, z)?)
                }
                _ => return Err(CliError::Usage("graphical mode needs either --n1 and --n2, or --sizes".into())),
            }
        }
        CountMode::Network => {
            let file = a.file.as_ref().ok_or_else(|| CliError::Usage("this mode needs a network file".into()))?;
            let m = need("upstream", a.upstream)?;
            let ext = need("extensions", a.extensions)?;
            let g = load_network(Some(file))?;
            let (name, mode) = match ext {
                ExtensionArg::General => ("general", ExtensionMode::General),
                ExtensionArg::Ncf => ("ncf", ExtensionMode::Ncf),
            };
            params.extend([("upstream", m.to_string()), ("extensions", name.to_string())]);
            ("network", count_network_extensions(m, &g, mode)?)
        }
    };
    let text = match a.format {
        ReportFormat::Text => format!("{count}\n"),
        ReportFormat::Json => emit_json(&CountDoc::new(mode, &params, &count)),
    };
    write_out(&a.out, &text)
}

pub fn extend(
    file: Option<PathBuf>,
    node: &str,
    list: bool,
    placement: Option<String>,
    new_var: Option<String>,
    format: NetworkFormat,
    out: &Output,
) -> Result<()> {
    let f = load_network(file.as_ref())?;
    let t = f.index_of(node).ok_or_else(|| CliError::Usage(format!("no node `{node}`")))?;
    let names = f.input_names(t);
    if list {
        let placements = ncf_placements(&f.node(t).function)?;
        let text: String = placements
            .iter()
            .enumerate()
            .map(|(i, p)| format!("{}\t{}\n", i + 1, p.to_spec(&names)))
            .collect();
        return write_out(out, &text);
    }
    let spec = placement.ok_or_else(|| CliError::Usage("give --list or --placement".into()))?;
    let var = new_var.ok_or_else(|| CliError::Usage("--placement needs --new-var".into()))?;
    let p = NcfPlacement::parse_spec(&spec, &names)?;
    let mut nodes: Vec<Node> = f.nodes().to_vec();
    let source = match f.index_of(&var) {
        Some(s) => s,
        None => {
            nodes.push(Node { name: var.clone(), inputs: Vec::new(), function: BooleanFunction::constant(0, false) });
            nodes.len() - 1
        }
    };
    let target = &mut nodes[t];
    if target.inputs.contains(&source) {
        return Err(CliError::Domain(boolnet::Error::Placement(format!("`{node}` already reads `{var}`"))));
    }
    target.function = apply_placement(&target.function, &p, target.inputs.len())?;
    target.inputs.push(source);
    let g = BooleanNetwork::from_nodes(nodes)?;
    write_out(out, &render_network(&g, format))
}

fn parse_edge(text: &str, m: usize) -> Result<(usize, usize)> {
    let bad = || CliError::Usage(format!("edge `{text}` must look like I-J with 1 ≤ I, J ≤ {m}"));
    let (i, j) = text.split_once('-').ok_or_else(bad)?;
    let i: usize = i.trim().parse().map_err(|_| bad())?;
    let j: usize = j.trim().parse().map_err(|_| bad())?;
    if i == 0 || j == 0 || i > m || j > m {
        return Err(bad());
    }
    Ok((i - 1, j - 1))
}

fn parse_block(text: &str, z: u8) -> Result<LabeledMatrix> {
    let rows = text
        .split(';')
        .map(|row| {
            row.split(',')
                .map(|v| match (v.trim().parse::<i8>(), z) {
                    (Ok(-1), 3) => Ok(2),
                    (Ok(x), _) if x >= 0 => Ok(x as u8),
                    _ => Err(CliError::Usage(format!("bad matrix entry `{}`", v.trim()))),
                })
                .collect::<Result<Vec<u8>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(LabeledMatrix::from_rows(rows, z)?)
}

pub fn compose(
    files: &[PathBuf],
    q: &str,
    connections: &[String],
    family: &str,
    format: NetworkFormat,
    out: &Output,
) -> Result<()> {
    let simple = files.iter().map(|p| load_network(Some(p))).collect::<Result<Vec<_>>>()?;
    let q_graph: BTreeSet<(usize, usize)> = q
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|e| parse_edge(e, simple.len()))
        .collect::<Result<_>>()?;
    let conn = if family.eq_ignore_ascii_case("ncf") {
        let mut inputs: BTreeMap<String, Vec<String>> = BTreeMap::new();
        for g in &simple {
            for (i, node) in g.nodes().iter().enumerate() {
                inputs.insert(node.name.clone(), g.input_names(i));
            }
        }
        let mut adds = Vec::new();
        for c in connections {
            let bad = || CliError::Usage(format!("connection `{c}` must look like SOURCE->TARGET@PLACEMENT"));
            let (edge, spec) = c.split_once('@').ok_or_else(bad)?;
            let (source, target) = edge.split_once("->").ok_or_else(bad)?;
            let (source, target) = (source.trim().to_string(), target.trim().to_string());
            let current = inputs.get_mut(&target).ok_or_else(|| CliError::Usage(format!("no node `{target}`")))?;
            let placement = NcfPlacement::parse_spec(spec.trim(), current)?;
            current.push(source.clone());
            adds.push(NcfConnection { source, target, placement });
        }
        Connections::Ncf(adds)
    } else {
        let family = parse_family(family)?;
        let mut blocks = BTreeMap::new();
        for c in connections {
            let (edge, matrix) = c
                .split_once('=')
                .ok_or_else(|| CliError::Usage(format!("connection `{c}` must look like I-J=ROWS")))?;
            let edge = parse_edge(edge, simple.len())?;
            if blocks.insert(edge, parse_block(matrix, family.z())?).is_some() {
                return Err(CliError::Usage(format!("two blocks for edge {}-{}", edge.0 + 1, edge.1 + 1)));
            }
        }
        Connections::Graphical { family, blocks }
    };
    let f = compose_networks(&simple, &q_graph, &conn)?;
    write_out(out, &render_network(&f, format))
}

pub fn verify(only: Option<String>, inject_fault: bool, out: &Output) -> Result<()> {
    let results = run_checks(only.as_deref(), inject_fault).map_err(|e| match e {
        boolnet::Error::UnknownCheck(_) => CliError::Usage(e.to_string()),
        other => CliError::Domain(other),
    })?;
    let text: String = results
        .iter()
        .map(|r| format!("{} {}: {}\n", if r.passed { "PASS" } else { "FAIL" }, r.name, r.detail))
        .collect();
    write_out(out, &text)?;
    let failed = results.iter().filter(|r| !r.passed).count();
    if failed > 0 {
        return Err(CliError::Failed(format!("{failed} of {} checks failed", results.len())));
    }
    Ok(())
}
