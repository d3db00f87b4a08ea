//! Parsing of JSON flags and set shorthands.

use delsarte::group::{Group, GroupSpec, Subset};
use serde::de::DeserializeOwned;
use serde_json::Value;

use crate::CliError;

/// Deserializes a flag value, reporting line and column on malformed input.
pub fn parse_json<T: DeserializeOwned>(flag: &str, text: &str) -> Result<T, CliError> {
    serde_json::from_str(text).map_err(|e| {
        let msg = e.to_string();
        let msg = msg.split(" at line ").next().unwrap_or(&msg).to_string();
        CliError::usage(format!(
            "{flag}: invalid JSON at line {}, column {}: {msg}",
            e.line(),
            e.column()
        ))
    })
}

pub fn parse_group(text: &str) -> Result<Group, CliError> {
    let spec: GroupSpec = parse_json("--group", text)?;
    Group::try_from(spec).map_err(CliError::from)
}

/// Accepted forms:
///
/// * `empty`, `all`
/// * `a..b`, or a two-element list `[a,b]` with `a < 0 <= b`: the residues `a, ..., b`
/// * any other list of integers: residues of a cyclic group
/// * a list of integer lists: coordinate tuples
pub fn parse_set(flag: &str, text: &str, g: &Group) -> Result<Subset, CliError> {
    let t = text.trim();
    match t {
        "empty" => return Ok(Subset::empty(g)),
        "all" => return Ok(Subset::full(g)),
        _ => {}
    }
    if let Some((a, b)) = t.split_once("..") {
        let (a, b) = (parse_int(flag, a)?, parse_int(flag, b)?);
        return interval(flag, g, a, b);
    }
    let v: Value = parse_json(flag, t)?;
    let Value::Array(items) = v else {
        return Err(CliError::usage(format!(
            "{flag}: expected `empty`, `all`, `a..b` or a JSON list"
        )));
    };
    if items.iter().all(Value::is_i64) {
        let r: Vec<i64> = items.iter().filter_map(Value::as_i64).collect();
        if r.len() == 2 && r[0] < 0 && r[1] >= 0 {
            return interval(flag, g, r[0], r[1]);
        }
        return Subset::from_residues(g, &r).map_err(CliError::from);
    }
    let mut coords = Vec::with_capacity(items.len());
    for item in &items {
        let tuple = item
            .as_array()
            .and_then(|a| a.iter().map(Value::as_i64).collect::<Option<Vec<_>>>())
            .ok_or_else(|| {
                CliError::usage(format!(
                    "{flag}: elements must be integers or integer lists"
                ))
            })?;
        coords.push(tuple);
    }
    Subset::from_coords(g, &coords).map_err(CliError::from)
}

fn parse_int(flag: &str, s: &str) -> Result<i64, CliError> {
    s.trim()
        .parse()
        .map_err(|_| CliError::usage(format!("{flag}: `{s}` is not an integer")))
}

fn interval(flag: &str, g: &Group, a: i64, b: i64) -> Result<Subset, CliError> {
    if a > b {
        return Err(CliError::usage(format!("{flag}: empty interval {a}..{b}")));
    }
    let r: Vec<i64> = (a..=b).collect();
    Subset::from_residues(g, &r).map_err(CliError::from)
}

/// Sorted coordinate tuples, the wire form of a set.
pub fn set_to_json(s: &Subset) -> Value {
    Value::Array(
        s.to_coords()
            .into_iter()
            .map(|e| Value::from(e.0))
            .collect(),
    )
}
