use std::collections::BTreeMap;

use super::{is_identifier, strip_comment, ParseError};
use crate::boolfn::BooleanFunction;
use crate::error::{Error, Result};
use crate::network::{BooleanNetwork, Node};

const HEADER: &str = ".variables";

/// Reads a table file:
///
/// ```text
/// .variables x1 x2
/// x1 <- x2 x1 : 0001
/// x2 <- x1 : 10
/// ```
///
/// Nodes follow the header order; records may come in any order but every
/// node needs exactly one.
pub fn parse_tables(src: &str) -> Result<BooleanNetwork> {
    let mut names: Option<Vec<String>> = None;
    let mut records: BTreeMap<String, (usize, Vec<String>, BooleanFunction)> = BTreeMap::new();
    let mut last_line = 0;
    for (k, raw) in src.lines().enumerate() {
        let line = k + 1;
        last_line = line;
        let text = strip_comment(raw);
        let trimmed = text.trim();
        if trimmed.is_empty() {
            continue;
        }
        let indent = text.len() - text.trim_start().len() + 1;
        let err = |col: usize, msg: String| -> Error { ParseError::new(line, col, msg).into() };
        let Some(vars) = &names else {
            let Some(rest) = trimmed.strip_prefix(HEADER) else {
                return Err(err(indent, format!("expected the `{HEADER}` header")));
            };
            let list: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
            if list.is_empty() {
                return Err(err(indent, "no variables declared".into()));
            }
            for (i, v) in list.iter().enumerate() {
                let col = text.find(v.as_str()).map_or(indent, |c| c + 1);
                if !is_identifier(v) {
                    return Err(err(col, format!("`{v}` is not a valid name")));
                }
                if list[..i].contains(v) {
                    return Err(err(col, format!("`{v}` is declared twice")));
                }
            }
            names = Some(list);
            continue;
        };
        let (lhs, rest) = text
            .split_once("<-")
            .ok_or_else(|| err(indent, "expected `target <- inputs : bits`".into()))?;
        let (inputs_text, bits_text) = rest
            .split_once(':')
            .ok_or_else(|| err(indent, "expected `:` before the truth table".into()))?;
        let target = lhs.trim();
        if !vars.iter().any(|v| v == target) {
            return Err(err(indent, format!("unknown node `{target}`")));
        }
        if let Some((first, _, _)) = records.get(target) {
            return Err(err(indent, format!("`{target}` already has a table on line {first}")));
        }
        let inputs_col = lhs.len() + 3;
        let inputs: Vec<String> = inputs_text.split_whitespace().map(str::to_string).collect();
        for name in &inputs {
            if !vars.contains(name) {
                let col = inputs_col + inputs_text.find(name.as_str()).unwrap_or(0);
                return Err(err(col, format!("unknown input `{name}`")));
            }
        }
        let bits = bits_text.trim();
        let bits_col = inputs_col + inputs_text.len() + 1 + (bits_text.len() - bits_text.trim_start().len());
        let expected = 1usize.checked_shl(inputs.len() as u32).unwrap_or(usize::MAX);
        if bits.len() != expected {
            return Err(err(
                bits_col,
                format!("{} inputs need {expected} bits, found {}", inputs.len(), bits.len()),
            ));
        }
        let f = BooleanFunction::from_bits(bits).map_err(|e| err(bits_col, e.to_string()))?;
        records.insert(target.to_string(), (line, inputs, f));
    }
    let names = names.ok_or_else(|| Error::from(ParseError::new(last_line.max(1), 1, "missing header")))?;
    let mut rules = Vec::with_capacity(names.len());
    for name in names {
        let (_, inputs, f) = records
            .remove(&name)
            .ok_or_else(|| Error::from(ParseError::new(last_line.max(1), 1, format!("no table for `{name}`"))))?;
        rules.push((name, inputs, f));
    }
    BooleanNetwork::from_rules(rules)
}

/// Writes the network in the format read by [`parse_tables`].
pub fn emit_tables(f: &BooleanNetwork) -> String {
    let mut out = format!("{HEADER} {}\n", f.names().join(" "));
    for (i, Node { name, function, .. }) in f.nodes().iter().enumerate() {
        let inputs = f.input_names(i);
        let sep = if inputs.is_empty() { "" } else { " " };
        out.push_str(&format!("{name} <- {}{sep}: {}\n", inputs.join(" "), function.to_bitstring()));
    }
    out
}
