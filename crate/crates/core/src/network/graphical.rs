//! Networks fully described by an edge-labelled matrix.
//!
//! Row `j` of the matrix lists the regulators of node `j`: entry `(j, i)`
//! is 0 when node `i` does not regulate node `j`. For the three-label
//! families, label 1 is a positive and label 2 a negative regulation.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::One;

use super::{BooleanNetwork, Node};
use crate::boolfn::BooleanFunction;
use crate::error::{Error, Result};
use crate::extend::ExtensionCount;

/// Largest number of component pairs for which
/// [`count_graphical_compositions`] enumerates acyclic graphs.
pub const MAX_COMPOSITION_PAIRS: usize = 21;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GraphicalFamily {
    Linear,
    Conjunctive,
    Disjunctive,
    AndNot,
    OrNot,
}

impl GraphicalFamily {
    pub const ALL: [GraphicalFamily; 5] = [
        GraphicalFamily::Linear,
        GraphicalFamily::Conjunctive,
        GraphicalFamily::Disjunctive,
        GraphicalFamily::AndNot,
        GraphicalFamily::OrNot,
    ];

    /// Number of edge labels, including 0.
    pub fn z(self) -> u8 {
        match self {
            GraphicalFamily::AndNot | GraphicalFamily::OrNot => 3,
            _ => 2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            GraphicalFamily::Linear => "linear",
            GraphicalFamily::Conjunctive => "conjunctive",
            GraphicalFamily::Disjunctive => "disjunctive",
            GraphicalFamily::AndNot => "and-not",
            GraphicalFamily::OrNot => "or-not",
        }
    }

    /// Value of a node with no regulators (the empty XOR, AND, or OR).
    pub fn empty_value(self) -> bool {
        matches!(self, GraphicalFamily::Conjunctive | GraphicalFamily::AndNot)
    }

    /// The node function for regulator labels `labels` (all non-zero).
    fn realize(self, labels: &[u8]) -> BooleanFunction {
        let literal = |x: bool, label: u8| if label == 2 { !x } else { x };
        BooleanFunction::from_fn(labels.len(), |x| match self {
            GraphicalFamily::Linear => x.iter().fold(false, |a, &b| a ^ b),
            GraphicalFamily::Conjunctive => x.iter().all(|&b| b),
            GraphicalFamily::Disjunctive => x.iter().any(|&b| b),
            GraphicalFamily::AndNot => x.iter().zip(labels).all(|(&b, &l)| literal(b, l)),
            GraphicalFamily::OrNot => x.iter().zip(labels).any(|(&b, &l)| literal(b, l)),
        })
        .expect("regulator count within arity limit")
    }

    /// Input values under which each literal of `f` is inert, so fixing any
    /// subset of inputs leaves the family function of the rest.
    pub(crate) fn neutral_inputs(self, f: &BooleanFunction) -> Option<Vec<bool>> {
        let labels = self.recognize(f)?;
        Some(
            labels
                .iter()
                .map(|&l| match self {
                    GraphicalFamily::Linear | GraphicalFamily::Disjunctive => false,
                    GraphicalFamily::Conjunctive => true,
                    GraphicalFamily::AndNot => l == 1,
                    GraphicalFamily::OrNot => l == 2,
                })
                .collect(),
        )
    }

    /// Labels that would realize `f`, if `f` belongs to the family.
    fn recognize(self, f: &BooleanFunction) -> Option<Vec<u8>> {
        let n = f.arity();
        let labels = match self {
            GraphicalFamily::Linear | GraphicalFamily::Conjunctive | GraphicalFamily::Disjunctive => vec![1; n],
            GraphicalFamily::AndNot | GraphicalFamily::OrNot => {
                let target = self == GraphicalFamily::AndNot;
                let mut rows = (0..f.table().len()).filter(|&r| f.bit(r) == target);
                let row = rows.next()?;
                if rows.next().is_some() {
                    return None;
                }
                // AND-NOT is true only where every literal holds; OR-NOT is
                // false only where every literal fails.
                f.assignment(row).iter().map(|&b| if b == target { 1 } else { 2 }).collect()
            }
        };
        (self.realize(&labels) == *f).then_some(labels)
    }
}

impl FromStr for GraphicalFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace('_', "-").as_str() {
            "linear" | "xor" => Ok(GraphicalFamily::Linear),
            "conjunctive" | "and" => Ok(GraphicalFamily::Conjunctive),
            "disjunctive" | "or" => Ok(GraphicalFamily::Disjunctive),
            "and-not" | "andnot" => Ok(GraphicalFamily::AndNot),
            "or-not" | "ornot" => Ok(GraphicalFamily::OrNot),
            other => Err(Error::Family(format!("unknown family `{other}`"))),
        }
    }
}

impl fmt::Display for GraphicalFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A `rows × cols` matrix over `{0, …, z-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LabeledMatrix {
    rows: usize,
    cols: usize,
    z: u8,
    entries: Vec<u8>,
}

impl LabeledMatrix {
    pub fn zeros(rows: usize, cols: usize, z: u8) -> Result<Self> {
        if z < 2 {
            return Err(Error::Family(format!("alphabet size {z} is below 2")));
        }
        Ok(Self { rows, cols, z, entries: vec![0; rows * cols] })
    }

    pub fn from_rows(rows: Vec<Vec<u8>>, z: u8) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Shape("rows have different lengths".into()));
        }
        let mut m = Self::zeros(rows.len(), cols, z)?;
        for (i, row) in rows.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, v)?;
            }
        }
        Ok(m)
    }

    /// Every matrix of the given shape, in lexicographic order of entries.
    pub fn all(rows: usize, cols: usize, z: u8) -> Result<Vec<LabeledMatrix>> {
        let cells = rows * cols;
        let total = (z as u64).checked_pow(cells as u32).filter(|&t| t <= 1 << 20).ok_or_else(|| {
            Error::Resource(format!("{z}^{cells} matrices is too many to list"))
        })?;
        (0..total)
            .map(|mut code| {
                let mut m = Self::zeros(rows, cols, z)?;
                for cell in (0..cells).rev() {
                    m.entries[cell] = (code % z as u64) as u8;
                    code /= z as u64;
                }
                Ok(m)
            })
            .collect()
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn z(&self) -> u8 {
        self.z
    }

    pub fn get(&self, row: usize, col: usize) -> u8 {
        self.entries[row * self.cols + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: u8) -> Result<()> {
        if value >= self.z {
            return Err(Error::Family(format!("label {value} outside 0..{}", self.z)));
        }
        self.entries[row * self.cols + col] = value;
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&v| v == 0)
    }

    pub fn row(&self, row: usize) -> &[u8] {
        &self.entries[row * self.cols..(row + 1) * self.cols]
    }

    /// Entries as signed labels, with 2 shown as −1 when `z = 3`.
    pub fn signed_rows(&self) -> Vec<Vec<i8>> {
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .map(|&v| if self.z == 3 && v == 2 { -1 } else { v as i8 })
                    .collect()
            })
            .collect()
    }

    /// Copies `block` into this matrix with its top-left corner at `(row, col)`.
    fn paste(&mut self, row: usize, col: usize, block: &LabeledMatrix) {
        for r in 0..block.rows {
            for c in 0..block.cols {
                self.entries[(row + r) * self.cols + col + c] = block.get(r, c);
            }
        }
    }

    /// The `rows × cols` block starting at `(row, col)`.
    pub fn block(&self, row: usize, col: usize, rows: usize, cols: usize) -> LabeledMatrix {
        let mut m = LabeledMatrix { rows, cols, z: self.z, entries: vec![0; rows * cols] };
        for r in 0..rows {
            for c in 0..cols {
                m.entries[r * cols + c] = self.get(row + r, col + c);
            }
        }
        m
    }
}

impl fmt::Display for LabeledMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .signed_rows()
            .iter()
            .map(|r| r.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(","))
            .collect();
        write!(f, "[{}]", rows.join(";"))
    }
}

fn check_family(w: &LabeledMatrix, family: GraphicalFamily) -> Result<()> {
    if w.z != family.z() {
        return Err(Error::Family(format!(
            "{family} networks use z = {}, matrix has z = {}",
            family.z(),
            w.z
        )));
    }
    Ok(())
}

/// The network described by the square matrix `w`, with nodes `x1, …, xn`.
pub fn graphical_realize(w: &LabeledMatrix, family: GraphicalFamily) -> Result<BooleanNetwork> {
    let names = (1..=w.rows).map(|i| format!("x{i}")).collect();
    graphical_realize_named(w, family, names)
}

pub fn graphical_realize_named(w: &LabeledMatrix, family: GraphicalFamily, names: Vec<String>) -> Result<BooleanNetwork> {
    check_family(w, family)?;
    if w.rows != w.cols {
        return Err(Error::Shape(format!("{}×{} matrix is not square", w.rows, w.cols)));
    }
    if names.len() != w.rows {
        return Err(Error::Shape(format!("{} names for {} nodes", names.len(), w.rows)));
    }
    let nodes = names
        .into_iter()
        .enumerate()
        .map(|(j, name)| {
            let inputs: Vec<usize> = (0..w.cols).filter(|&i| w.get(j, i) != 0).collect();
            let labels: Vec<u8> = inputs.iter().map(|&i| w.get(j, i)).collect();
            let function = if labels.is_empty() {
                BooleanFunction::constant(0, family.empty_value())
            } else {
                family.realize(&labels)
            };
            Node { name, inputs, function }
        })
        .collect();
    BooleanNetwork::from_nodes(nodes)
}

/// Reads back the matrix of a network from the given family.
pub fn graphical_matrix(f: &BooleanNetwork, family: GraphicalFamily) -> Result<LabeledMatrix> {
    let mut w = LabeledMatrix::zeros(f.len(), f.len(), family.z())?;
    for (j, node) in f.nodes().iter().enumerate() {
        let labels = if node.inputs.is_empty() {
            (node.function.is_constant() == Some(family.empty_value())).then(Vec::new)
        } else {
            family.recognize(&node.function)
        };
        let labels = labels.ok_or_else(|| {
            Error::Family(format!("node `{}` is not a {family} function of its inputs", node.name))
        })?;
        for (&i, &label) in node.inputs.iter().zip(&labels) {
            w.set(j, i, label)?;
        }
    }
    Ok(w)
}

/// The block lower-triangular matrix `[[w1, 0], [p, w2]]`: the second
/// network extended by the first through connection block `p`.
pub fn graphical_extend(w1: &LabeledMatrix, w2: &LabeledMatrix, p: &LabeledMatrix) -> Result<LabeledMatrix> {
    if w1.rows != w1.cols || w2.rows != w2.cols {
        return Err(Error::Shape("diagonal blocks must be square".into()));
    }
    if p.rows != w2.rows || p.cols != w1.rows {
        return Err(Error::Shape(format!(
            "connection block is {}×{}, expected {}×{}",
            p.rows, p.cols, w2.rows, w1.rows
        )));
    }
    if w1.z != w2.z || w1.z != p.z {
        return Err(Error::Family("matrices use different alphabets".into()));
    }
    let n = w1.rows + w2.rows;
    let mut w = LabeledMatrix::zeros(n, n, w1.z)?;
    w.paste(0, 0, w1);
    w.paste(w1.rows, 0, p);
    w.paste(w1.rows, w1.rows, w2);
    Ok(w)
}

fn z_pow(z: u8, exp: usize) -> BigUint {
    BigUint::from(z).pow(exp as u32)
}

/// Number of ways an `n2`-node graphical network can be extended by an
/// `n1`-node one: `z^(n1·n2)`.
pub fn count_graphical_extensions(n1: usize, n2: usize, z: u8) -> Result<ExtensionCount> {
    if n1 == 0 || n2 == 0 || z < 2 {
        return Err(Error::Shape(format!("need n1, n2 ≥ 1 and z ≥ 2 (got {n1}, {n2}, {z})")));
    }
    Ok(z_pow(z, n1 * n2))
}

/// Acyclic graphs compatible with a fixed order of `m` components: `2^(m(m−1)/2)`.
pub fn count_acyclic_graphs(m: usize) -> Result<ExtensionCount> {
    if m == 0 {
        return Err(Error::Shape("need at least one component".into()));
    }
    Ok(BigUint::one() << (m * (m - 1) / 2))
}

/// Graphs of all networks with simple networks of the given sizes, in
/// order: the sum over acyclic graphs `Q` of `Π_{(i,j)∈Q} (z^(ni·nj) − 1)`,
/// and `z^M` with `M = Σ_{i<j} ni·nj`. The two agree.
pub fn count_graphical_compositions(sizes: &[usize], z: u8) -> Result<(ExtensionCount, ExtensionCount)> {
    if sizes.is_empty() || sizes.contains(&0) || z < 2 {
        return Err(Error::Shape(format!("need positive sizes and z ≥ 2 (got {sizes:?}, {z})")));
    }
    let pairs: Vec<(usize, usize)> = (0..sizes.len())
        .flat_map(|i| (i + 1..sizes.len()).map(move |j| (i, j)))
        .collect();
    if pairs.len() > MAX_COMPOSITION_PAIRS {
        return Err(Error::Resource(format!(
            "{} components give 2^{} acyclic graphs to enumerate",
            sizes.len(),
            pairs.len()
        )));
    }
    let weights: Vec<BigUint> = pairs.iter().map(|&(i, j)| z_pow(z, sizes[i] * sizes[j]) - 1u8).collect();
    let mut by_graphs = BigUint::default();
    for q in 0u64..1 << pairs.len() {
        let product: BigUint = weights
            .iter()
            .enumerate()
            .filter(|(e, _)| q >> e & 1 == 1)
            .map(|(_, w)| w)
            .product();
        by_graphs += product;
    }
    let m: usize = pairs.iter().map(|&(i, j)| sizes[i] * sizes[j]).sum();
    Ok((by_graphs, z_pow(z, m)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m2(rows: Vec<Vec<u8>>) -> LabeledMatrix {
        LabeledMatrix::from_rows(rows, 2).unwrap()
    }

    fn m3(rows: Vec<Vec<u8>>) -> LabeledMatrix {
        LabeledMatrix::from_rows(rows, 3).unwrap()
    }

    fn func(n: usize, f: impl Fn(&[bool]) -> bool) -> BooleanFunction {
        BooleanFunction::from_fn(n, f).unwrap()
    }

    #[test]
    fn linear_realization() {
        let f = graphical_realize(&m2(vec![vec![1, 1], vec![1, 0]]), GraphicalFamily::Linear).unwrap();
        assert_eq!(f.node(0).inputs, vec![0, 1]);
        assert_eq!(f.node(0).function, func(2, |x| x[0] ^ x[1]));
        assert_eq!(f.node(1).inputs, vec![0]);
        assert_eq!(f.node(1).function, func(1, |x| x[0]));
    }

    #[test]
    fn and_not_realization() {
        let f = graphical_realize(&m3(vec![vec![0, 2], vec![1, 1]]), GraphicalFamily::AndNot).unwrap();
        assert_eq!(f.node(0).inputs, vec![1]);
        assert_eq!(f.node(0).function, func(1, |x| !x[0]));
        assert_eq!(f.node(1).function, func(2, |x| x[0] && x[1]));
    }

    #[test]
    fn zero_matrix_gives_constants() {
        for family in GraphicalFamily::ALL {
            let w = LabeledMatrix::zeros(3, 3, family.z()).unwrap();
            let f = graphical_realize(&w, family).unwrap();
            for node in f.nodes() {
                assert!(node.inputs.is_empty());
                assert_eq!(node.function.is_constant(), Some(family.empty_value()));
            }
        }
    }

    #[test]
    fn family_mismatch() {
        let w = m2(vec![vec![1]]);
        assert!(matches!(graphical_realize(&w, GraphicalFamily::AndNot), Err(Error::Family(_))));
        assert!(LabeledMatrix::from_rows(vec![vec![2]], 2).is_err());
    }

    #[test]
    fn matrix_round_trip_every_small_matrix() {
        for family in GraphicalFamily::ALL {
            for w in LabeledMatrix::all(2, 2, family.z()).unwrap() {
                let f = graphical_realize(&w, family).unwrap();
                assert_eq!(graphical_matrix(&f, family).unwrap(), w, "{family} {w}");
            }
        }
    }

    #[test]
    fn recognition_rejects_foreign_functions() {
        let w = m2(vec![vec![1, 1], vec![1, 0]]);
        let linear = graphical_realize(&w, GraphicalFamily::Linear).unwrap();
        assert!(graphical_matrix(&linear, GraphicalFamily::Conjunctive).is_err());
        assert!(graphical_matrix(&linear, GraphicalFamily::AndNot).is_err());
    }

    #[test]
    fn block_extension() {
        let w1 = m2(vec![vec![1, 1], vec![1, 0]]);
        let w2 = m2(vec![vec![0, 1], vec![1, 1]]);
        let p = m2(vec![vec![1, 0], vec![1, 1]]);
        let w = graphical_extend(&w1, &w2, &p).unwrap();
        assert_eq!(w, m2(vec![vec![1, 1, 0, 0], vec![1, 0, 0, 0], vec![1, 0, 0, 1], vec![1, 1, 1, 1]]));
        let f = graphical_realize(&w, GraphicalFamily::Linear).unwrap();
        assert_eq!(f.node(2).function, func(2, |x| x[0] ^ x[1]));
        assert_eq!(f.node(2).inputs, vec![0, 3]);
        assert!(graphical_extend(&w1, &w2, &m2(vec![vec![1, 0]])).is_err());
        let zero = graphical_extend(&w1, &w2, &LabeledMatrix::zeros(2, 2, 2).unwrap()).unwrap();
        assert!(zero.block(2, 0, 2, 2).is_zero() && zero.block(0, 2, 2, 2).is_zero());
    }

    #[test]
    fn counts() {
        assert_eq!(count_graphical_extensions(2, 2, 2).unwrap(), BigUint::from(16u8));
        assert_eq!(count_graphical_extensions(2, 2, 3).unwrap(), BigUint::from(81u8));
        assert!(count_graphical_extensions(2, 0, 2).is_err());
        assert_eq!(count_acyclic_graphs(1).unwrap(), BigUint::from(1u8));
        assert_eq!(count_acyclic_graphs(2).unwrap(), BigUint::from(2u8));
        assert_eq!(count_acyclic_graphs(3).unwrap(), BigUint::from(8u8));
        let (a, b) = count_graphical_compositions(&[2, 2], 2).unwrap();
        assert_eq!((a, b), (BigUint::from(16u8), BigUint::from(16u8)));
        let (a, b) = count_graphical_compositions(&[1, 1, 1], 2).unwrap();
        assert_eq!((a, b), (BigUint::from(8u8), BigUint::from(8u8)));
        let (a, b) = count_graphical_compositions(&[3], 3).unwrap();
        assert_eq!((a, b), (BigUint::one(), BigUint::one()));
    }

    #[test]
    fn signed_display() {
        let w = m3(vec![vec![0, 2], vec![1, 1]]);
        assert_eq!(w.to_string(), "[0,-1;1,1]");
    }
}
