//! Input parsing: graphs from files, vectors/pairs/partitions from files or
//! inline literals.

use std::fs;
use std::path::Path;
use std::sync::Arc;

use serde_json::Value;
use setpair::graph::Graph;
use setpair::kcut::{BlockVector, KPartition};
use setpair::{SetPair, VertexSet};

use crate::CliError;

pub fn load_graph(path: &Path) -> Result<Arc<Graph>, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::usage(format!("cannot read {}: {e}", path.display())))?;
    let g = Graph::parse_edge_list_str(&text)
        .map_err(|e| CliError::usage(format!("{}: {e}", path.display())))?;
    Ok(Arc::new(g))
}

/// A vector argument is either a path to a whitespace-separated file or an
/// inline literal like `(1,-1,0)` / `1 -1 0`.
pub fn load_vector(spec: &str, n: usize) -> Result<Vec<f64>, CliError> {
    let text = if Path::new(spec).is_file() {
        fs::read_to_string(spec).map_err(|e| CliError::usage(format!("cannot read {spec}: {e}")))?
    } else {
        spec.to_string()
    };
    let cleaned: String =
        text.chars().map(|c| if c == '(' || c == ')' || c == '[' || c == ']' || c == ',' { ' ' } else { c }).collect();
    let values: Result<Vec<f64>, _> = cleaned.split_whitespace().map(|f| f.parse::<f64>()).collect();
    let values = values.map_err(|e| CliError::usage(format!("bad vector entry: {e}")))?;
    if values.is_empty() {
        return Err(CliError::usage("empty vector"));
    }
    if values.len() != n {
        return Err(CliError::usage(format!("vector has {} entries, graph has n={n}", values.len())));
    }
    if values.iter().any(|v| !v.is_finite()) {
        return Err(CliError::usage("vector entries must be finite"));
    }
    Ok(values)
}

/// Block vectors: a file in the `l` lines × `n` decimals format, or an
/// inline literal with `;` separating blocks.
pub fn load_block_vector(spec: &str, n: usize) -> Result<BlockVector, CliError> {
    let text = if Path::new(spec).is_file() {
        fs::read_to_string(spec).map_err(|e| CliError::usage(format!("cannot read {spec}: {e}")))?
    } else {
        spec.replace(';', "\n")
    };
    let cleaned: String =
        text.chars().map(|c| if c == '(' || c == ')' || c == '[' || c == ']' || c == ',' { ' ' } else { c }).collect();
    let bv = BlockVector::parse_str(&cleaned)
        .map_err(|e| CliError::usage(format!("bad block vector: {e}")))?;
    if bv.n() != n {
        return Err(CliError::usage(format!(
            "block vector has n={} per block, graph has n={n}",
            bv.n()
        )));
    }
    Ok(bv)
}

fn labels_to_set(v: &Value, n: usize, field: &str) -> Result<VertexSet, CliError> {
    let arr = v
        .as_array()
        .ok_or_else(|| CliError::usage(format!("witness field {field:?} must be an array")))?;
    let mut indices = Vec::with_capacity(arr.len());
    for item in arr {
        let label = item
            .as_u64()
            .ok_or_else(|| CliError::usage(format!("witness field {field:?} holds non-integers")))?;
        if label == 0 || label as usize > n {
            return Err(CliError::usage(format!("vertex {label} out of range 1..={n}")));
        }
        indices.push(label as usize - 1);
    }
    Ok(VertexSet::from_indices(n, indices))
}

pub enum WitnessArg {
    Pair(SetPair),
    Triple([VertexSet; 3]),
}

/// Parse `{"a":[...],"b":[...]}` (pair) or `{"a":..,"b":..,"c":..}` (triple).
pub fn parse_witness(text: &str, n: usize) -> Result<WitnessArg, CliError> {
    let v: Value = serde_json::from_str(text)
        .map_err(|e| CliError::usage(format!("bad witness JSON: {e}")))?;
    let a = labels_to_set(v.get("a").ok_or_else(|| CliError::usage("witness needs field \"a\""))?, n, "a")?;
    let b = labels_to_set(v.get("b").ok_or_else(|| CliError::usage("witness needs field \"b\""))?, n, "b")?;
    if let Some(c) = v.get("c") {
        let c = labels_to_set(c, n, "c")?;
        Ok(WitnessArg::Triple([a, b, c]))
    } else {
        let pair =
            SetPair::new(a, b).map_err(|e| CliError::usage(format!("bad witness pair: {e}")))?;
        Ok(WitnessArg::Pair(pair))
    }
}

/// Parse `{"parts":[[...],[...],...]}`.
pub fn parse_partition(text: &str, n: usize) -> Result<KPartition, CliError> {
    let v: Value = serde_json::from_str(text)
        .map_err(|e| CliError::usage(format!("bad partition JSON: {e}")))?;
    let parts_val = v
        .get("parts")
        .and_then(|p| p.as_array())
        .ok_or_else(|| CliError::usage("partition needs an array field \"parts\""))?;
    let mut parts = Vec::with_capacity(parts_val.len());
    for (i, part) in parts_val.iter().enumerate() {
        parts.push(labels_to_set(part, n, &format!("parts[{i}]"))?);
    }
    KPartition::new(n, parts).map_err(|e| CliError::usage(format!("bad partition: {e}")))
}
