use std::path::{Path, PathBuf};

use qdescent::permgrp::{GroupFile, PermGroup};
use qdescent::quartic::{CurveFile, TernaryQuartic};
use serde::de::DeserializeOwned;
use serde_json::json;

use crate::{CliResult, Context, Failure};

fn malformed(message: impl Into<String>, path: &Path) -> Failure {
    Failure::Malformed { message: message.into(), context: json!({ "input": path }) }
}

fn read_json<T: DeserializeOwned>(path: &Path) -> CliResult<T> {
    let text = std::fs::read_to_string(path).map_err(|e| malformed(e.to_string(), path))?;
    serde_json::from_str(&text).map_err(|e| malformed(e.to_string(), path))
}

pub fn curve(path: &Path) -> CliResult<TernaryQuartic> {
    let file: CurveFile = read_json(path)?;
    TernaryQuartic::from_file(&file).map_err(|e| malformed(e.to_string(), path))
}

pub fn group(path: &Path) -> CliResult<PermGroup> {
    let file: GroupFile = read_json(path)?;
    file.load().ctx(json!({ "group": path }))
}

/// A parsed `place:groupfile[:imC]` argument.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalSpec {
    pub place: String,
    pub p: u64,
    pub group: PathBuf,
    /// `dim im C_v`.
    pub im_c_dim: Option<usize>,
}

pub fn local_spec(text: &str) -> CliResult<LocalSpec> {
    let bad = |m: String| Failure::Malformed { message: m, context: json!({ "local": text }) };
    let parts: Vec<&str> = text.split(':').collect();
    let (place, group, im_c) = match parts.as_slice() {
        [place, group] => (*place, *group, None),
        [place, group, im_c] => (*place, *group, Some(*im_c)),
        _ => return Err(bad("expected place:groupfile[:imC]".into())),
    };
    let p: u64 = place.parse().map_err(|_| bad(format!("place {place:?} is not a prime number")))?;
    let im_c_dim = im_c
        .map(|s| {
            let size: u64 = s.parse().map_err(|_| bad(format!("image size {s:?} is not an integer")))?;
            if !size.is_power_of_two() {
                return Err(bad(format!("image size {size} is not a power of 2")));
            }
            Ok(size.trailing_zeros() as usize)
        })
        .transpose()?;
    Ok(LocalSpec { place: place.to_string(), p, group: PathBuf::from(group), im_c_dim })
}
