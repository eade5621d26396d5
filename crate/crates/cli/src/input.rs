//! Argument decoding. Every failure here is a usage error.

use std::collections::BTreeMap;
use std::fs;
use std::io::Read;
use std::path::Path;

use cuspidal_core::format::{graph_from_json, parse_chain};
use cuspidal_core::num_bigint::BigInt;
use cuspidal_core::{CharPairSeq, Chain, CurveCandidate, DualGraph};

use crate::{CliError, GraphArgs};

/// Inline JSON, `-` for stdin, or a path to a file.
fn json_source(arg: &str) -> Result<String, CliError> {
    let trimmed = arg.trim_start();
    if trimmed.starts_with('{') || trimmed.starts_with('[') {
        return Ok(arg.to_owned());
    }
    if arg == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| CliError::Usage(format!("cannot read standard input: {e}")))?;
        return Ok(s);
    }
    fs::read_to_string(Path::new(arg)).map_err(|e| CliError::Usage(format!("cannot read {arg}: {e}")))
}

pub fn pairs(arg: &str) -> Result<CharPairSeq, CliError> {
    let text = json_source(arg)?;
    let raw: Vec<(u64, u64)> =
        serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("invalid pair sequence: {e}")))?;
    CharPairSeq::new(raw).map_err(|e| CliError::domain("pairs", e))
}

pub fn candidate(arg: &str) -> Result<CurveCandidate, CliError> {
    let text = json_source(arg)?;
    serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("invalid candidate: {e}")))
}

pub fn chain(text: &str, vars: &[String]) -> Result<Chain, CliError> {
    let mut bound = BTreeMap::new();
    for v in vars {
        let (name, value) = v
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("expected NAME=VALUE, got {v:?}")))?;
        let value: i64 = value
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("invalid value in {v:?}")))?;
        bound.insert(name.trim().to_owned(), value);
    }
    parse_chain(text, &bound).map_err(|e| CliError::Usage(e.to_string()))
}

pub fn graph(args: &GraphArgs) -> Result<DualGraph, CliError> {
    match (&args.graph, &args.chain) {
        (Some(g), _) => {
            let text = json_source(g)?;
            graph_from_json(&text).map_err(|e| CliError::Usage(format!("invalid graph: {e}")))
        }
        (None, Some(c)) => Ok(chain(c, &args.vars)?.to_graph()),
        (None, None) => Err(CliError::Usage("one of --graph or --chain is required".into())),
    }
}

/// `"a0:b1,b2,..."`; the coefficient list may be empty.
pub fn affine(arg: &str) -> Result<(BigInt, Vec<BigInt>), CliError> {
    let bad = || CliError::Usage(format!("expected CONST:COEF,COEF,... got {arg:?}"));
    let (c, rest) = arg.split_once(':').ok_or_else(bad)?;
    let c: BigInt = c.trim().parse().map_err(|_| bad())?;
    let coeffs = if rest.trim().is_empty() {
        Vec::new()
    } else {
        rest.split(',')
            .map(|x| x.trim().parse::<BigInt>().map_err(|_| bad()))
            .collect::<Result<_, _>>()?
    };
    Ok((c, coeffs))
}
