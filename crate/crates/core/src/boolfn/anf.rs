use std::fmt;

use super::BooleanFunction;

/// A product of distinct inputs; bit `i` set means input `i` is a factor.
/// The empty monomial is the constant 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub u64);

impl Monomial {
    pub fn variables(self) -> Vec<usize> {
        (0..64).filter(|i| self.0 >> i & 1 == 1).collect()
    }

    pub fn degree(self) -> u32 {
        self.0.count_ones()
    }
}

/// Algebraic normal form: the XOR of its monomials equals the function.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Anf {
    pub arity: usize,
    /// Sorted by the ascending list of their variables, constant last.
    pub monomials: Vec<Monomial>,
}

impl Anf {
    pub fn evaluate(&self, assignment: &[bool]) -> bool {
        self.monomials
            .iter()
            .filter(|m| m.variables().iter().all(|&v| assignment[v]))
            .count()
            % 2
            == 1
    }

    /// Renders with the given input names, e.g. `x1*x2 + x1 + 1`.
    pub fn display_with<'a>(&'a self, names: &'a [String]) -> impl fmt::Display + 'a {
        AnfDisplay { anf: self, names }
    }
}

struct AnfDisplay<'a> {
    anf: &'a Anf,
    names: &'a [String],
}

impl fmt::Display for AnfDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.anf.monomials.is_empty() {
            return f.write_str("0");
        }
        for (i, m) in self.anf.monomials.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if m.0 == 0 {
                f.write_str("1")?;
            } else {
                let names: Vec<&str> = m.variables().iter().map(|&v| self.names[v].as_str()).collect();
                f.write_str(&names.join("*"))?;
            }
        }
        Ok(())
    }
}

/// Möbius transform of the truth table over the subset lattice.
pub fn anf(f: &BooleanFunction) -> Anf {
    let n = f.arity();
    let mut coeffs: Vec<bool> = f.table().to_vec();
    let mut step = 1;
    while step < coeffs.len() {
        for r in 0..coeffs.len() {
            if r & step != 0 {
                coeffs[r] ^= coeffs[r ^ step];
            }
        }
        step <<= 1;
    }
    // Row bit (n-1-i) belongs to input i.
    let mut monomials: Vec<Monomial> = coeffs
        .iter()
        .enumerate()
        .filter(|(_, &c)| c)
        .map(|(r, _)| {
            let mask = (0..n).filter(|&i| r >> (n - 1 - i) & 1 == 1).fold(0u64, |m, i| m | 1 << i);
            Monomial(mask)
        })
        .collect();
    monomials.sort_by(|a, b| match (a.0, b.0) {
        (0, 0) => std::cmp::Ordering::Equal,
        (0, _) => std::cmp::Ordering::Greater,
        (_, 0) => std::cmp::Ordering::Less,
        _ => a.variables().cmp(&b.variables()),
    });
    Anf { arity: n, monomials }
}
