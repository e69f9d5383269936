//! Input parsing and JSON encodings.
//!
//! Scalars are written as `"p/q"` strings for exact values (decimal numbers
//! behind `--decimal`) and read from either strings or JSON numbers. Objects
//! go through `serde_json::Value`, whose map keeps keys sorted.

use csn::assoc::{AssocFace, Subflag};
use csn::metric::DissimilarityMatrix;
use csn::moduli::{EmbeddedPoint, ModuliPoint};
use csn::{CircularOrdering, ExactScalar, NetworkPoint, PolygonRep, Scalar, Split, SplitSystem, WeightedSplitSystem};
use serde_json::{json, Map, Value};

use crate::CliError;

pub fn scalar_json<T: Scalar>(x: &T, decimal: bool) -> Value {
    if decimal {
        serde_json::Number::from_f64(x.to_f64()).map_or(Value::Null, Value::Number)
    } else {
        Value::String(x.render())
    }
}

pub fn parse_scalar_value<T: Scalar>(v: &Value) -> Result<T, CliError> {
    let text = match v {
        Value::String(s) => s.clone(),
        Value::Number(n) => n.to_string(),
        other => return Err(CliError::input(format!("expected a number, got {other}"))),
    };
    T::parse_scalar(&text).ok_or_else(|| CliError::input(format!("cannot read {text:?} as a number")))
}

/// `"1,2,3"`, `"(1,2,3)"`, or whitespace separated.
pub fn parse_ordering(text: &str) -> Result<CircularOrdering, CliError> {
    let cleaned = text.trim().trim_start_matches(['(', '[']).trim_end_matches([')', ']']);
    let seq = cleaned
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<usize>().map_err(|_| CliError::input(format!("bad taxon {t:?} in ordering"))))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(CircularOrdering::new(seq)?)
}

fn ordering_value(v: &Value) -> Result<CircularOrdering, CliError> {
    let seq: Vec<usize> = serde_json::from_value(v.clone())
        .map_err(|e| CliError::input(format!("ordering must be a list of taxa: {e}")))?;
    Ok(CircularOrdering::new(seq)?)
}

fn block_value(v: &Value, n: usize) -> Result<Split, CliError> {
    let side: Vec<usize> =
        serde_json::from_value(v.clone()).map_err(|e| CliError::input(format!("block must be a list of taxa: {e}")))?;
    Ok(Split::new(n, &side)?)
}

fn field<'a>(obj: &'a Value, key: &str) -> Result<&'a Value, CliError> {
    obj.get(key).ok_or_else(|| CliError::input(format!("missing field {key:?}")))
}

fn array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>, CliError> {
    v.as_array().ok_or_else(|| CliError::input(format!("{what} must be an array")))
}

pub fn parse_json(text: &str) -> Result<Value, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::input(format!("invalid JSON: {e}")))
}

/// Dissimilarity matrix as text (`n`, then `n` rows with an optional leading
/// label; `#` starts a comment) or JSON `{"rows": [[...], ...]}`.
pub fn parse_matrix<T: Scalar>(text: &str) -> Result<DissimilarityMatrix<T>, CliError> {
    if text.trim_start().starts_with('{') {
        let doc = parse_json(text)?;
        let rows = array(field(&doc, "rows")?, "rows")?
            .iter()
            .map(|row| array(row, "a row")?.iter().map(parse_scalar_value).collect::<Result<Vec<T>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        return Ok(DissimilarityMatrix::from_rows(rows)?);
    }
    let mut lines = text.lines().map(|l| l.split('#').next().unwrap_or("").trim()).filter(|l| !l.is_empty());
    let header = lines.next().ok_or_else(|| CliError::input("empty matrix file"))?;
    let n: usize = header
        .split_whitespace()
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| CliError::input(format!("first line must be the taxon count, got {header:?}")))?;
    let mut rows = Vec::with_capacity(n);
    for (i, line) in lines.enumerate() {
        let tokens: Vec<&str> = line.split_whitespace().collect();
        let entries = match tokens.len() {
            k if k == n => &tokens[..],
            k if k == n + 1 => &tokens[1..],
            k => return Err(CliError::input(format!("row {} has {k} entries, expected {n}", i + 1))),
        };
        let row = entries
            .iter()
            .map(|t| T::parse_scalar(t).ok_or_else(|| CliError::input(format!("bad entry {t:?} in row {}", i + 1))))
            .collect::<Result<Vec<T>, _>>()?;
        rows.push(row);
    }
    if rows.len() != n {
        return Err(CliError::input(format!("expected {n} rows, found {}", rows.len())));
    }
    Ok(DissimilarityMatrix::from_rows(rows)?)
}

pub fn matrix_json<T: Scalar>(d: &DissimilarityMatrix<T>, decimal: bool) -> Value {
    let rows: Vec<Value> =
        d.rows().iter().map(|r| Value::Array(r.iter().map(|x| scalar_json(x, decimal)).collect())).collect();
    json!({ "n": d.n(), "rows": rows })
}

pub fn matrix_text<T: Scalar>(d: &DissimilarityMatrix<T>, decimal: bool) -> String {
    let mut out = format!("{}\n", d.n());
    for (i, row) in d.rows().iter().enumerate() {
        let cells: Vec<String> =
            row.iter().map(|x| if decimal { x.to_f64().to_string() } else { x.render() }).collect();
        out.push_str(&format!("{} {}\n", i + 1, cells.join(" ")));
    }
    out
}

/// `{"n": 5, "splits": [{"block": [1, 2], "weight": "1/2"}, ...]}`; a block
/// may name either side and weights are optional.
type SplitEntries<T> = Vec<(Split, Option<T>)>;

pub fn parse_split_doc<T: Scalar>(doc: &Value) -> Result<(usize, SplitEntries<T>), CliError> {
    let n = field(doc, "n")?.as_u64().ok_or_else(|| CliError::input("n must be an integer"))? as usize;
    let mut out = Vec::new();
    for entry in array(field(doc, "splits")?, "splits")? {
        let split = block_value(field(entry, "block")?, n)?;
        let weight = entry.get("weight").map(parse_scalar_value).transpose()?;
        out.push((split, weight));
    }
    Ok((n, out))
}

pub fn parse_split_system(doc: &Value) -> Result<SplitSystem, CliError> {
    let (n, entries) = parse_split_doc::<f64>(doc)?;
    Ok(SplitSystem::new(n, entries.into_iter().map(|(s, _)| s))?)
}

/// Missing weights count as 1.
pub fn parse_weighted_system<T: Scalar>(doc: &Value) -> Result<WeightedSplitSystem<T>, CliError> {
    let (n, entries) = parse_split_doc::<T>(doc)?;
    Ok(WeightedSplitSystem::new(n, entries.into_iter().map(|(s, w)| (s, w.unwrap_or_else(T::one))))?)
}

fn split_entry<T: Scalar>(s: &Split, weight: Option<&T>, decimal: bool) -> Value {
    let mut obj = Map::new();
    obj.insert("block".into(), json!(s.block()));
    if let Some(w) = weight {
        obj.insert("weight".into(), scalar_json(w, decimal));
    }
    Value::Object(obj)
}

pub fn weighted_system_json<T: Scalar>(w: &WeightedSplitSystem<T>, decimal: bool) -> Value {
    let splits: Vec<Value> = w.iter().map(|(s, x)| split_entry(s, Some(x), decimal)).collect();
    json!({ "n": w.n(), "splits": splits })
}

/// `{"ordering": [...], "diagonals": [{"block": [...], "weight": ...}]}`.
pub fn parse_polygon<T: Scalar>(doc: &Value) -> Result<PolygonRep<T>, CliError> {
    let ordering = ordering_value(field(doc, "ordering")?)?;
    let n = ordering.n();
    let mut entries = Vec::new();
    for entry in array(field(doc, "diagonals")?, "diagonals")? {
        let split = block_value(field(entry, "block")?, n)?;
        let weight = entry.get("weight").map(parse_scalar_value::<T>).transpose()?;
        entries.push((split, weight));
    }
    let weighted = entries.iter().filter(|(_, w)| w.is_some()).count();
    if weighted != 0 && weighted != entries.len() {
        return Err(CliError::input("either every diagonal carries a weight or none does"));
    }
    if weighted != 0 {
        let sys = WeightedSplitSystem::new(n, entries.into_iter().map(|(s, w)| (s, w.expect("weighted"))))?;
        Ok(PolygonRep::weighted(&sys, &ordering)?)
    } else {
        let sys = SplitSystem::new(n, entries.into_iter().map(|(s, _)| s))?;
        Ok(PolygonRep::new(&sys, &ordering)?)
    }
}

pub fn polygon_json<T: Scalar>(p: &PolygonRep<T>, decimal: bool) -> Value {
    let diagonals: Vec<Value> =
        p.diagonals().iter().map(|d| split_entry(d, p.weights().and_then(|w| w.get(d)), decimal)).collect();
    json!({ "ordering": p.ordering().as_slice(), "diagonals": diagonals })
}

pub fn face_json(f: &AssocFace) -> Value {
    let diagonals: Vec<Value> = f.diagonals().iter().map(|d| split_entry::<f64>(d, None, false)).collect();
    json!({ "ordering": f.labeling().as_slice(), "diagonals": diagonals })
}

fn parse_face(doc: &Value, chamber: &CircularOrdering) -> Result<AssocFace, CliError> {
    if let Some(o) = doc.get("ordering") {
        if &ordering_value(o)? != chamber {
            return Err(CliError::input("every face must be drawn on the point's chamber"));
        }
    }
    let diagonals = array(field(doc, "diagonals")?, "diagonals")?
        .iter()
        .map(|e| block_value(field(e, "block")?, chamber.n()))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(AssocFace::new(chamber, diagonals)?)
}

/// `{"chamber": [...], "subflag": [face, ...], "coefficients": ["1/4", ...]}`.
pub fn parse_moduli_point<T: ExactScalar>(doc: &Value) -> Result<ModuliPoint<T>, CliError> {
    let chamber = ordering_value(field(doc, "chamber")?)?;
    let faces = array(field(doc, "subflag")?, "subflag")?
        .iter()
        .map(|f| parse_face(f, &chamber))
        .collect::<Result<Vec<_>, _>>()?;
    let coefficients = array(field(doc, "coefficients")?, "coefficients")?
        .iter()
        .map(parse_scalar_value)
        .collect::<Result<Vec<T>, _>>()?;
    Ok(ModuliPoint::new(Subflag::new(faces)?, coefficients)?)
}

pub fn moduli_point_json<T: ExactScalar>(p: &ModuliPoint<T>) -> Value {
    json!({
        "chamber": p.labeling().as_slice(),
        "subflag": p.subflag().faces().iter().map(face_json).collect::<Vec<_>>(),
        "coefficients": p.coefficients().iter().map(|a| scalar_json(a, false)).collect::<Vec<_>>(),
    })
}

fn block_key(s: &Split) -> String {
    s.block().iter().map(|t| t.to_string()).collect::<Vec<_>>().join(",")
}

/// `{"n": 5, "chamber": [...], "coordinates": {"1,2": "1/2", ...}}`, keyed by canonical block.
pub fn embedded_point_json<T: ExactScalar>(x: &EmbeddedPoint<T>, decimal: bool) -> Value {
    let coords: Map<String, Value> = x.point().iter().map(|(s, w)| (block_key(s), scalar_json(w, decimal))).collect();
    json!({ "n": x.point().n(), "chamber": x.chamber().as_slice(), "coordinates": coords })
}

pub fn parse_embedded_point<T: ExactScalar>(doc: &Value) -> Result<EmbeddedPoint<T>, CliError> {
    let chamber = ordering_value(field(doc, "chamber")?)?;
    let n = chamber.n();
    if let Some(stated) = doc.get("n").and_then(Value::as_u64) {
        if stated as usize != n {
            return Err(CliError::input(format!("n = {stated} but the chamber has {n} taxa")));
        }
    }
    let coords = field(doc, "coordinates")?
        .as_object()
        .ok_or_else(|| CliError::input("coordinates must be an object keyed by block"))?;
    let mut entries = Vec::new();
    for (key, value) in coords {
        let side = key
            .split(',')
            .map(|t| t.trim().parse::<usize>().map_err(|_| CliError::input(format!("bad block key {key:?}"))))
            .collect::<Result<Vec<_>, _>>()?;
        entries.push((Split::new(n, &side)?, parse_scalar_value::<T>(value)?));
    }
    Ok(EmbeddedPoint::new(chamber, NetworkPoint::new(n, entries)?)?)
}

pub fn ordering_json(o: &CircularOrdering) -> Value {
    json!(o.as_slice())
}
