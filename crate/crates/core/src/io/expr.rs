use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use super::{strip_comment, ParseError};
use crate::boolfn::{anf, BooleanFunction, MAX_ARITY};
use crate::error::Result;
use crate::network::BooleanNetwork;

/// Largest arity for which the emitter tries a sum of prime implicants.
const MAX_PRIME_ARITY: usize = 8;

/// A Boolean expression over named variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Const(bool),
    Var(String),
    Not(Box<Expr>),
    And(Vec<Expr>),
    Xor(Vec<Expr>),
    Or(Vec<Expr>),
}

impl Expr {
    /// Variables in order of first appearance.
    pub fn variables(&self) -> Vec<String> {
        fn walk(e: &Expr, seen: &mut BTreeSet<String>, out: &mut Vec<String>) {
            match e {
                Expr::Const(_) => {}
                Expr::Var(v) => {
                    if seen.insert(v.clone()) {
                        out.push(v.clone());
                    }
                }
                Expr::Not(inner) => walk(inner, seen, out),
                Expr::And(items) | Expr::Xor(items) | Expr::Or(items) => {
                    items.iter().for_each(|i| walk(i, seen, out));
                }
            }
        }
        let mut out = Vec::new();
        walk(self, &mut BTreeSet::new(), &mut out);
        out
    }

    pub fn eval(&self, value: &dyn Fn(&str) -> bool) -> bool {
        match self {
            Expr::Const(b) => *b,
            Expr::Var(v) => value(v),
            Expr::Not(inner) => !inner.eval(value),
            Expr::And(items) => items.iter().all(|i| i.eval(value)),
            Expr::Xor(items) => items.iter().fold(false, |a, i| a ^ i.eval(value)),
            Expr::Or(items) => items.iter().any(|i| i.eval(value)),
        }
    }

    /// Truth table with inputs in order of first appearance.
    pub fn to_function(&self) -> Result<(Vec<String>, BooleanFunction)> {
        let vars = self.variables();
        let index: HashMap<&str, usize> = vars.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect();
        let f = BooleanFunction::from_fn(vars.len(), |x| self.eval(&|v| x[index[v]]))?;
        Ok((vars, f))
    }

    fn level(&self) -> u8 {
        match self {
            Expr::Or(items) | Expr::Xor(items) | Expr::And(items) if items.len() == 1 => items[0].level(),
            Expr::Or(items) | Expr::Xor(items) | Expr::And(items) if items.is_empty() => 3,
            Expr::Or(_) => 0,
            Expr::Xor(_) => 1,
            Expr::And(_) => 2,
            _ => 3,
        }
    }

    fn write(&self, f: &mut fmt::Formatter<'_>, min_level: u8) -> fmt::Result {
        if self.level() < min_level {
            f.write_str("(")?;
            self.write(f, 0)?;
            return f.write_str(")");
        }
        let (items, op, child_level, empty) = match self {
            Expr::Const(b) => return write!(f, "{}", u8::from(*b)),
            Expr::Var(v) => return f.write_str(v),
            Expr::Not(inner) => {
                f.write_str("!")?;
                return inner.write(f, 3);
            }
            Expr::Or(items) => (items, " | ", 1, "0"),
            Expr::Xor(items) => (items, " ^ ", 2, "0"),
            Expr::And(items) => (items, " & ", 3, "1"),
        };
        match items.as_slice() {
            [] => f.write_str(empty),
            [only] => only.write(f, min_level),
            _ => {
                for (k, item) in items.iter().enumerate() {
                    if k > 0 {
                        f.write_str(op)?;
                    }
                    item.write(f, child_level)?;
                }
                Ok(())
            }
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write(f, 0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Const(bool),
    Not,
    And,
    Xor,
    Or,
    Open,
    Close,
    Assign,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Const(b) => write!(f, "`{}`", u8::from(*b)),
            Tok::Not => f.write_str("`!`"),
            Tok::And => f.write_str("`&`"),
            Tok::Xor => f.write_str("`^`"),
            Tok::Or => f.write_str("`|`"),
            Tok::Open => f.write_str("`(`"),
            Tok::Close => f.write_str("`)`"),
            Tok::Assign => f.write_str("`=`"),
        }
    }
}

/// Tokens with their 1-based columns.
fn tokenize(text: &str, line: usize) -> std::result::Result<Vec<(Tok, usize)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        let single = match c {
            '!' => Some(Tok::Not),
            '&' => Some(Tok::And),
            '^' => Some(Tok::Xor),
            '|' => Some(Tok::Or),
            '(' => Some(Tok::Open),
            ')' => Some(Tok::Close),
            '=' => Some(Tok::Assign),
            _ => None,
        };
        if let Some(tok) = single {
            out.push((tok, col));
            i += 1;
        } else if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((Tok::Ident(chars[start..i].iter().collect()), col));
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            match digits.as_str() {
                "0" => out.push((Tok::Const(false), col)),
                "1" => out.push((Tok::Const(true), col)),
                _ => return Err(ParseError::new(line, col, format!("`{digits}` is not a constant (use 0 or 1)"))),
            }
        } else {
            return Err(ParseError::new(line, col, format!("unexpected character `{c}`")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: &'a [(Tok, usize)],
    pos: usize,
    line: usize,
    end_col: usize,
    /// Every identifier read, with its column.
    uses: Vec<(String, usize)>,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_col, |&(_, c)| c)
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError::new(self.line, self.col(), message)
    }

    fn binary(
        &mut self,
        op: Tok,
        make: fn(Vec<Expr>) -> Expr,
        next: fn(&mut Self) -> std::result::Result<Expr, ParseError>,
    ) -> std::result::Result<Expr, ParseError> {
        let mut items = vec![next(self)?];
        while self.peek() == Some(&op) {
            self.pos += 1;
            items.push(next(self)?);
        }
        Ok(if items.len() == 1 { items.pop().expect("one item") } else { make(items) })
    }

    fn or(&mut self) -> std::result::Result<Expr, ParseError> {
        self.binary(Tok::Or, Expr::Or, Self::xor)
    }

    fn xor(&mut self) -> std::result::Result<Expr, ParseError> {
        self.binary(Tok::Xor, Expr::Xor, Self::and)
    }

    fn and(&mut self) -> std::result::Result<Expr, ParseError> {
        self.binary(Tok::And, Expr::And, Self::unary)
    }

    fn unary(&mut self) -> std::result::Result<Expr, ParseError> {
        if self.peek() == Some(&Tok::Not) {
            self.pos += 1;
            return Ok(Expr::Not(Box::new(self.unary()?)));
        }
        self.primary()
    }

    fn primary(&mut self) -> std::result::Result<Expr, ParseError> {
        let col = self.col();
        match self.peek().cloned() {
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                self.uses.push((name.clone(), col));
                Ok(Expr::Var(name))
            }
            Some(Tok::Const(b)) => {
                self.pos += 1;
                Ok(Expr::Const(b))
            }
            Some(Tok::Open) => {
                self.pos += 1;
                let inner = self.or()?;
                if self.peek() != Some(&Tok::Close) {
                    return Err(match self.peek() {
                        Some(t) => self.error(format!("expected `)`, found {t}")),
                        None => ParseError::new(self.line, col, "unclosed `(`"),
                    });
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(t) => Err(self.error(format!("expected an operand, found {t}"))),
            None => Err(self.error("expected an operand, found end of line")),
        }
    }

    fn finish(&self) -> std::result::Result<(), ParseError> {
        match self.peek() {
            None => Ok(()),
            Some(t) => Err(self.error(format!("unexpected {t}"))),
        }
    }
}

/// Parses one expression (reported as line 1).
pub fn parse_expression(text: &str) -> std::result::Result<Expr, ParseError> {
    let toks = tokenize(text, 1)?;
    let mut p = Parser { toks: &toks, pos: 0, line: 1, end_col: text.chars().count() + 1, uses: Vec::new() };
    let e = p.or()?;
    p.finish()?;
    Ok(e)
}

/// Parses a rule file into a network; node order is declaration order and
/// each node's inputs follow their first appearance in its rule.
pub fn parse_network(src: &str) -> Result<BooleanNetwork> {
    struct Rule {
        line: usize,
        name: String,
        expr: Expr,
    }
    let mut rules = Vec::new();
    let mut declared: BTreeMap<String, usize> = BTreeMap::new();
    let mut uses = Vec::new();
    for (k, raw) in src.lines().enumerate() {
        let line = k + 1;
        let text = strip_comment(raw);
        if text.trim().is_empty() {
            continue;
        }
        let toks = tokenize(text, line)?;
        let end_col = text.trim_end().chars().count() + 1;
        let name = match toks.first() {
            Some((Tok::Ident(name), col)) => {
                if let Some(first) = declared.get(name) {
                    return Err(ParseError::new(
                        line,
                        *col,
                        format!("`{name}` is already defined on line {first}"),
                    )
                    .into());
                }
                name.clone()
            }
            Some((t, col)) => return Err(ParseError::new(line, *col, format!("expected a node name, found {t}")).into()),
            None => unreachable!("line has content"),
        };
        match toks.get(1) {
            Some((Tok::Assign, _)) => {}
            Some((t, col)) => return Err(ParseError::new(line, *col, format!("expected `=`, found {t}")).into()),
            None => return Err(ParseError::new(line, end_col, "expected `=`").into()),
        }
        if toks.len() == 2 {
            return Err(ParseError::new(line, end_col, "empty right-hand side").into());
        }
        let mut p = Parser { toks: &toks[2..], pos: 0, line, end_col, uses: Vec::new() };
        let expr = p.or()?;
        p.finish()?;
        uses.extend(p.uses.into_iter().map(|(n, col)| (n, line, col)));
        declared.insert(name.clone(), line);
        rules.push(Rule { line, name, expr });
    }
    if let Some((name, line, col)) = uses.iter().find(|(n, _, _)| !declared.contains_key(n)) {
        return Err(ParseError::new(*line, *col, format!("undefined node `{name}`")).into());
    }
    let compiled = rules
        .into_iter()
        .map(|r| {
            let n = r.expr.variables().len();
            if n > MAX_ARITY {
                return Err(ParseError::new(
                    r.line,
                    1,
                    format!("rule reads {n} nodes, more than the supported {MAX_ARITY}"),
                )
                .into());
            }
            let (inputs, f) = r.expr.to_function()?;
            Ok((r.name, inputs, f))
        })
        .collect::<Result<Vec<_>>>()?;
    BooleanNetwork::from_rules(compiled)
}

fn literal(names: &[String], var: usize, value: bool) -> Expr {
    let v = Expr::Var(names[var].clone());
    if value {
        v
    } else {
        Expr::Not(Box::new(v))
    }
}

/// Prime implicants as `(free-variable mask, values)` over bit `i` = input `i`.
fn prime_implicants(f: &BooleanFunction) -> Vec<(u32, u32)> {
    let n = f.arity();
    let code = |row: usize| -> u32 {
        f.assignment(row).iter().enumerate().map(|(i, &b)| u32::from(b) << i).sum()
    };
    let mut current: BTreeSet<(u32, u32)> =
        (0..f.table().len()).filter(|&r| f.bit(r)).map(|r| (0, code(r))).collect();
    let mut primes = Vec::new();
    while !current.is_empty() {
        let mut next = BTreeSet::new();
        let mut merged = BTreeSet::new();
        let cubes: Vec<(u32, u32)> = current.iter().copied().collect();
        for (a, &(free_a, val_a)) in cubes.iter().enumerate() {
            for &(free_b, val_b) in &cubes[a + 1..] {
                let diff = val_a ^ val_b;
                if free_a == free_b && diff.count_ones() == 1 {
                    next.insert((free_a | diff, val_a & !diff));
                    merged.insert((free_a, val_a));
                    merged.insert((free_b, val_b));
                }
            }
        }
        primes.extend(cubes.into_iter().filter(|c| !merged.contains(c)));
        current = next;
    }
    let key = |&(free, val): &(u32, u32)| -> Vec<(usize, bool)> {
        (0..n).filter(|i| free >> i & 1 == 0).map(|i| (i, val >> i & 1 == 1)).collect()
    };
    primes.sort_by_key(key);
    primes
}

fn sum_of_products(names: &[String], cubes: impl Iterator<Item = (u32, u32)>) -> Expr {
    let n = names.len();
    Expr::Or(
        cubes
            .map(|(free, val)| {
                Expr::And((0..n).filter(|i| free >> i & 1 == 0).map(|i| literal(names, i, val >> i & 1 == 1)).collect())
            })
            .collect(),
    )
}

fn minterms(f: &BooleanFunction, names: &[String], value: bool) -> Expr {
    let rows = (0..f.table().len()).filter(|&r| f.bit(r) == value);
    let cubes = rows.map(|r| (0, f.assignment(r).iter().enumerate().map(|(i, &b)| u32::from(b) << i).sum()));
    sum_of_products(names, cubes)
}

/// An expression for `f` over `names` (its inputs, in order) that parses
/// back to the same function with the same input order. The shortest of a
/// sum of prime implicants and the algebraic normal form is used when its
/// variables appear in input order; otherwise a sum of minterms.
pub fn emit_expression(f: &BooleanFunction, names: &[String]) -> Expr {
    if let Some(b) = f.is_constant() {
        return Expr::Const(b);
    }
    let mut candidates = Vec::new();
    if f.arity() <= MAX_PRIME_ARITY {
        candidates.push(sum_of_products(names, prime_implicants(f).into_iter()));
    }
    let normal_form = anf(f);
    candidates.push(Expr::Xor(
        normal_form
            .monomials
            .iter()
            .map(|m| match m.variables().as_slice() {
                [] => Expr::Const(true),
                vars => Expr::And(vars.iter().map(|&v| Expr::Var(names[v].clone())).collect()),
            })
            .collect(),
    ));
    let valid: Vec<(String, Expr)> = candidates
        .into_iter()
        .filter(|e| e.variables() == names)
        .map(|e| (e.to_string(), e))
        .collect();
    if let Some((_, best)) = valid.into_iter().min_by_key(|(s, _)| s.len()) {
        return best;
    }
    let ones = minterms(f, names, true);
    let zeros = Expr::Not(Box::new(minterms(f, names, false)));
    if zeros.to_string().len() < ones.to_string().len() {
        zeros
    } else {
        ones
    }
}

/// The network as a rule file, one `name = expression` line per node.
pub fn emit_network(f: &BooleanNetwork) -> String {
    let mut out = String::new();
    for (i, node) in f.nodes().iter().enumerate() {
        let expr = emit_expression(&node.function, &f.input_names(i));
        out.push_str(&format!("{} = {expr}\n", node.name));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    const EXAMPLE: &str = "x1 = x2 & x1\nx2 = !x1\nx3 = x1 | !x4\nx4 = (x1 & !x2) | (x3 & x4)\n";

    fn func(n: usize, f: impl Fn(&[bool]) -> bool) -> BooleanFunction {
        BooleanFunction::from_fn(n, f).unwrap()
    }

    fn parse_error(src: &str) -> ParseError {
        match parse_network(src) {
            Err(Error::Parse(e)) => e,
            other => panic!("expected a parse error for {src:?}, got {other:?}"),
        }
    }

    #[test]
    fn example_network() {
        let f = parse_network(EXAMPLE).unwrap();
        assert_eq!(f.names(), ["x1", "x2", "x3", "x4"]);
        assert_eq!(f.input_names(0), ["x2", "x1"]);
        assert_eq!(f.node(0).function, func(2, |x| x[0] && x[1]));
        assert_eq!(f.input_names(3), ["x1", "x2", "x3", "x4"]);
        assert_eq!(f.node(3).function, func(4, |x| (x[0] && !x[1]) || (x[2] && x[3])));
    }

    #[test]
    fn constants_and_precedence() {
        let f = parse_network("a = 1").unwrap();
        assert_eq!(f.node(0).function, BooleanFunction::constant(0, true));
        let f = parse_network("a = b & 0 ^ 1\nb = a").unwrap();
        assert!(f.node(0).inputs.is_empty());
        assert_eq!(f.node(0).function.is_constant(), Some(true));
        let e = parse_expression("a | b ^ c & d").unwrap();
        assert_eq!(
            e,
            Expr::Or(vec![
                Expr::Var("a".into()),
                Expr::Xor(vec![Expr::Var("b".into()), Expr::And(vec![Expr::Var("c".into()), Expr::Var("d".into())])]),
            ])
        );
        assert_eq!(parse_expression("!a & b").unwrap().to_string(), "!a & b");
        assert_eq!(parse_expression("!(a & b)").unwrap().to_string(), "!(a & b)");
    }

    #[test]
    fn negation_loop() {
        let f = parse_network("a = b ^ 1\nb = a").unwrap();
        assert_eq!(f.node(0).function, func(1, |x| !x[0]));
        assert_eq!(f.input_names(1), ["a"]);
    }

    #[test]
    fn comments_and_blank_lines() {
        let f = parse_network("# header\n\n a = b # trailing\nb = a\n").unwrap();
        assert_eq!(f.len(), 2);
    }

    #[test]
    fn positioned_errors() {
        let e = parse_error("a = (b & a\nb = a");
        assert_eq!((e.line, e.column), (1, 5));
        let e = parse_error("a = b\nb = c");
        assert_eq!((e.line, e.column), (2, 5));
        assert!(e.message.contains("undefined"));
        let e = parse_error("a = 1\na = 0");
        assert_eq!((e.line, e.column), (2, 1));
        let e = parse_error("a =   ");
        assert!(e.message.contains("empty"));
        let e = parse_error("a = b &\nb = a");
        assert_eq!((e.line, e.column), (1, 8));
        let e = parse_error("a = 2");
        assert_eq!((e.line, e.column), (1, 5));
        let e = parse_error("a = a $ a");
        assert_eq!((e.line, e.column), (1, 7));
        let e = parse_error("a b");
        assert_eq!((e.line, e.column), (1, 3));
        let e = parse_error("a = a)");
        assert_eq!((e.line, e.column), (1, 6));
    }

    #[test]
    fn emitted_expressions_read_naturally() {
        let names: Vec<String> = ["a", "b", "c", "d"].iter().map(|s| s.to_string()).collect();
        let f = func(4, |x| (x[0] && !x[1]) || (x[2] && x[3]));
        assert_eq!(emit_expression(&f, &names).to_string(), "a & !b | c & d");
        let xor = func(3, |x| x[0] ^ x[1] ^ x[2]);
        assert_eq!(emit_expression(&xor, &names[..3]).to_string(), "a ^ b ^ c");
        let not = func(1, |x| !x[0]);
        assert_eq!(emit_expression(&not, &names[..1]).to_string(), "!a");
    }

    #[test]
    fn emitter_keeps_input_order() {
        // (a | b) & c: the prime implicants a & c, b & c list c before b.
        let names: Vec<String> = ["a", "b", "c"].iter().map(|s| s.to_string()).collect();
        let f = func(3, |x| (x[0] || x[1]) && x[2]);
        let e = emit_expression(&f, &names);
        assert_eq!(e.variables(), names);
        assert_eq!(e.to_function().unwrap().1, f);
    }

    #[test]
    fn round_trip_example() {
        let f = parse_network(EXAMPLE).unwrap();
        assert_eq!(parse_network(&emit_network(&f)).unwrap(), f);
    }
}
