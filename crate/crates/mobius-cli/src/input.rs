//! JSON input parsing for the structure formats, with position-specific
//! error messages.

use std::fs;
use std::rc::Rc;

use serde_json::Value;

use mobius_core::forest::RootedForest;
use mobius_core::poset::Poset;
use mobius_core::ptree::{OpDecl, PForest, PTree, Signature};

#[derive(Debug)]
pub struct InputError(pub String);

impl std::fmt::Display for InputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl std::error::Error for InputError {}

fn err<T>(msg: impl Into<String>) -> Result<T, InputError> {
    Err(InputError(msg.into()))
}

/// Inline JSON when the argument looks like JSON, file contents
/// otherwise.
pub fn load_source(arg: &str) -> Result<Value, InputError> {
    let text = if arg.trim_start().starts_with('{') || arg.trim_start().starts_with('[') {
        arg.to_string()
    } else {
        fs::read_to_string(arg).map_err(|e| InputError(format!("cannot read {arg}: {e}")))?
    };
    serde_json::from_str(&text).map_err(|e| InputError(format!("malformed JSON: {e}")))
}

pub fn parse_poset(v: &Value) -> Result<Poset, InputError> {
    let obj = match v.as_object() {
        Some(o) => o,
        None => return err("poset input must be an object {\"n\":..., \"covers\":[...]}"),
    };
    let n = match obj.get("n").and_then(Value::as_u64) {
        Some(n) => n as usize,
        None => return err("poset input: field \"n\" must be a non-negative integer"),
    };
    let mut covers = Vec::new();
    if let Some(raw) = obj.get("covers") {
        let arr = match raw.as_array() {
            Some(a) => a,
            None => return err("poset input: field \"covers\" must be an array of pairs"),
        };
        for (idx, pair) in arr.iter().enumerate() {
            let pair = match pair.as_array() {
                Some(p) if p.len() == 2 => p,
                _ => return err(format!("covers[{idx}]: expected a pair [i, j]")),
            };
            let i = pair[0].as_u64();
            let j = pair[1].as_u64();
            match (i, j) {
                (Some(i), Some(j)) => covers.push((i as usize, j as usize)),
                _ => return err(format!("covers[{idx}]: entries must be integers")),
            }
        }
    }
    Poset::new(n, &covers).map_err(|e| InputError(format!("poset input: {e}")))
}

pub fn parse_forest(v: &Value) -> Result<RootedForest, InputError> {
    let obj = match v.as_object() {
        Some(o) => o,
        None => return err("forest input must be an object {\"parent\": [...]}"),
    };
    let raw = match obj.get("parent").and_then(Value::as_array) {
        Some(a) => a,
        None => return err("forest input: field \"parent\" must be an array"),
    };
    let mut parent = Vec::with_capacity(raw.len());
    for (idx, entry) in raw.iter().enumerate() {
        if entry.is_null() {
            parent.push(None);
        } else if let Some(p) = entry.as_u64() {
            parent.push(Some(p as usize));
        } else {
            return err(format!("parent[{idx}]: expected an integer or null"));
        }
    }
    RootedForest::new(parent).map_err(|e| InputError(format!("forest input: {e}")))
}

pub fn parse_signature(v: &Value) -> Result<Signature, InputError> {
    let obj = match v.as_object() {
        Some(o) => o,
        None => return err("signature must be an object {\"colors\":[...], \"ops\":[...]}"),
    };
    let colors: Vec<String> = match obj.get("colors").and_then(Value::as_array) {
        Some(a) => {
            let mut out = Vec::new();
            for (idx, c) in a.iter().enumerate() {
                match c.as_str() {
                    Some(s) => out.push(s.to_string()),
                    None => return err(format!("colors[{idx}]: expected a string")),
                }
            }
            out
        }
        None => return err("signature: field \"colors\" must be an array of strings"),
    };
    let color_index = |raw: &Value, at: &str| -> Result<usize, InputError> {
        if let Some(name) = raw.as_str() {
            match colors.iter().position(|c| c == name) {
                Some(i) => Ok(i),
                None => err(format!("{at}: unknown color \"{name}\"")),
            }
        } else if let Some(i) = raw.as_u64() {
            if (i as usize) < colors.len() {
                Ok(i as usize)
            } else {
                err(format!("{at}: color index {i} out of range"))
            }
        } else {
            err(format!("{at}: expected a color name or index"))
        }
    };
    let mut ops = Vec::new();
    if let Some(raw_ops) = obj.get("ops") {
        let arr = match raw_ops.as_array() {
            Some(a) => a,
            None => return err("signature: field \"ops\" must be an array"),
        };
        for (idx, op) in arr.iter().enumerate() {
            let op = match op.as_object() {
                Some(o) => o,
                None => return err(format!("ops[{idx}]: expected an object")),
            };
            let name = op
                .get("name")
                .and_then(Value::as_str)
                .unwrap_or(&format!("op{idx}"))
                .to_string();
            let out = match op.get("out") {
                Some(raw) => color_index(raw, &format!("ops[{idx}].out"))?,
                None => return err(format!("ops[{idx}]: missing \"out\" color")),
            };
            let mut inputs = Vec::new();
            if let Some(raw_in) = op.get("in") {
                let arr = match raw_in.as_array() {
                    Some(a) => a,
                    None => return err(format!("ops[{idx}].in: expected an array")),
                };
                for (slot, raw) in arr.iter().enumerate() {
                    inputs.push(color_index(raw, &format!("ops[{idx}].in[{slot}]"))?);
                }
            }
            ops.push(OpDecl { name, out, inputs });
        }
    }
    Signature::new(colors, ops).map_err(|e| InputError(format!("signature: {e}")))
}

/// A tree is `{"op": ..., "children": [...]}` with `{"edge": color}`
/// leaves; a forest is an array of trees.
pub fn parse_pforest(v: &Value, sig: &Rc<Signature>) -> Result<PForest, InputError> {
    let comps = match v {
        Value::Array(items) => {
            let mut out = Vec::new();
            for (idx, item) in items.iter().enumerate() {
                out.push(parse_ptree(item, sig, &format!("[{idx}]"))?);
            }
            out
        }
        _ => vec![parse_ptree(v, sig, "")?],
    };
    let forest = PForest::new(comps);
    forest
        .validate(sig)
        .map_err(|e| InputError(format!("tree input: {e}")))?;
    Ok(forest)
}

fn parse_ptree(v: &Value, sig: &Rc<Signature>, path: &str) -> Result<PTree, InputError> {
    let obj = match v.as_object() {
        Some(o) => o,
        None => return err(format!("tree{path}: expected an object")),
    };
    if let Some(edge) = obj.get("edge") {
        let color = if let Some(name) = edge.as_str() {
            match sig.colors.iter().position(|c| c == name) {
                Some(i) => i,
                None => return err(format!("tree{path}.edge: unknown color \"{name}\"")),
            }
        } else if let Some(i) = edge.as_u64() {
            i as usize
        } else {
            return err(format!("tree{path}.edge: expected a color name or index"));
        };
        return Ok(PTree::Edge(color));
    }
    let op = match obj.get("op") {
        Some(raw) => {
            if let Some(name) = raw.as_str() {
                match sig.ops.iter().position(|o| o.name == name) {
                    Some(i) => i,
                    None => return err(format!("tree{path}.op: unknown operation \"{name}\"")),
                }
            } else if let Some(i) = raw.as_u64() {
                i as usize
            } else {
                return err(format!("tree{path}.op: expected an operation name or index"));
            }
        }
        None => return err(format!("tree{path}: missing \"op\" or \"edge\"")),
    };
    let mut children = Vec::new();
    if let Some(raw) = obj.get("children") {
        let arr = match raw.as_array() {
            Some(a) => a,
            None => return err(format!("tree{path}.children: expected an array")),
        };
        for (idx, child) in arr.iter().enumerate() {
            children.push(parse_ptree(child, sig, &format!("{path}.children[{idx}]"))?);
        }
    }
    Ok(PTree::Node { op, children })
}
