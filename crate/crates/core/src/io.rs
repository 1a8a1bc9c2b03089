//! Text formats: CSV and JSON input, canonical JSON output.
//!
//! Canonical JSON has no whitespace, object keys in lexicographic order,
//! integral reals written without a fractional part and every other real
//! in its shortest round-trip decimal form. An empty fusion result is
//! written as `null`.

use serde_json::{json, Map, Number, Value};

use crate::chains::{validate_graded, GradedFamily};
use crate::error::{Error, Result};
use crate::infosys::{ApproximationPair, InformationTable, SensitivityRecord};
use crate::intervals::{FaultDistribution, FusionResult, GradedIntervals, Interval, IntervalDistribution};
use crate::partitions::{validate_granular, GranularSet, Partition};

/// Encoding of an interval list.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IntervalFormat {
    /// Header `lo,hi`, one interval per row.
    Csv,
    /// Array of two-element arrays.
    Json,
}

// ---------------------------------------------------------------------------
// Canonical writer

fn real(x: f64) -> Value {
    // Integral values are stored as integers so they print without ".0".
    if x.fract() == 0.0 && x.abs() < 9.0e15 {
        Value::from(x as i64)
    } else {
        Number::from_f64(x).map_or(Value::Null, Value::Number)
    }
}

fn write_number(n: &Number, out: &mut String) {
    if n.is_i64() || n.is_u64() {
        out.push_str(&n.to_string());
    } else {
        // Display gives the shortest digits that round-trip, without exponent.
        let x = n.as_f64().unwrap_or(f64::NAN);
        out.push_str(&format!("{x}"));
    }
}

fn write_value(v: &Value, out: &mut String) {
    match v {
        Value::Null => out.push_str("null"),
        Value::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
        Value::Number(n) => write_number(n, out),
        Value::String(s) => out.push_str(&Value::String(s.clone()).to_string()),
        Value::Array(items) => {
            out.push('[');
            for (i, item) in items.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                write_value(item, out);
            }
            out.push(']');
        }
        Value::Object(map) => {
            let mut keys: Vec<&String> = map.keys().collect();
            keys.sort();
            out.push('{');
            for (i, key) in keys.into_iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                out.push_str(&Value::String(key.clone()).to_string());
                out.push(':');
                write_value(&map[key], out);
            }
            out.push('}');
        }
    }
}

/// Renders a JSON value canonically.
pub fn to_canonical_string(v: &Value) -> String {
    let mut out = String::new();
    write_value(v, &mut out);
    out
}

// ---------------------------------------------------------------------------
// Values

pub fn interval_value(iv: &Interval) -> Value {
    json!([real(iv.lo()), real(iv.hi())])
}

pub fn fusion_value(r: &FusionResult) -> Value {
    r.interval().map_or(Value::Null, interval_value)
}

pub fn intervals_value(ivs: &[Interval]) -> Value {
    Value::Array(ivs.iter().map(interval_value).collect())
}

pub fn graded_intervals_value(g: &GradedIntervals) -> Value {
    json!({
        "f_min": g.f_min(),
        "levels": g.levels().iter().map(fusion_value).collect::<Vec<_>>(),
    })
}

pub fn distribution_value(d: &IntervalDistribution) -> Value {
    let atoms: Vec<Value> = d
        .atoms()
        .iter()
        .map(|(r, p)| json!({ "interval": fusion_value(r), "p": real(*p) }))
        .collect();
    json!({ "atoms": atoms })
}

pub fn partition_value(p: &Partition) -> Value {
    json!({ "blocks": p.blocks() })
}

pub fn granular_value(g: &GranularSet) -> Value {
    json!({ "levels": g.levels().iter().map(partition_value).collect::<Vec<_>>() })
}

pub fn family_value(f: &GradedFamily<String>) -> Value {
    json!({ "levels": f.levels() })
}

pub fn approximation_value(a: &ApproximationPair) -> Value {
    json!({ "lower": a.lower, "upper": a.upper })
}

pub fn sensitivity_value(records: &[SensitivityRecord]) -> Value {
    Value::Array(
        records
            .iter()
            .map(|r| {
                json!({
                    "accuracy": real(r.accuracy),
                    "attribute_count": r.attribute_count,
                    "boundary_size": r.boundary_size,
                    "level_index": r.level_index,
                    "lower_size": r.lower_size,
                    "upper_size": r.upper_size,
                })
            })
            .collect(),
    )
}

pub fn serialize_fusion(r: &FusionResult) -> String {
    to_canonical_string(&fusion_value(r))
}

pub fn serialize_intervals(ivs: &[Interval]) -> String {
    to_canonical_string(&intervals_value(ivs))
}

pub fn serialize_graded_intervals(g: &GradedIntervals) -> String {
    to_canonical_string(&graded_intervals_value(g))
}

pub fn serialize_distribution(d: &IntervalDistribution) -> String {
    to_canonical_string(&distribution_value(d))
}

pub fn serialize_partition(p: &Partition) -> String {
    to_canonical_string(&partition_value(p))
}

pub fn serialize_granular(g: &GranularSet) -> String {
    to_canonical_string(&granular_value(g))
}

pub fn serialize_family(f: &GradedFamily<String>) -> String {
    to_canonical_string(&family_value(f))
}

pub fn serialize_approximation(a: &ApproximationPair) -> String {
    to_canonical_string(&approximation_value(a))
}

pub fn serialize_sensitivity(records: &[SensitivityRecord]) -> String {
    to_canonical_string(&sensitivity_value(records))
}

// ---------------------------------------------------------------------------
// JSON readers

fn parse_json(text: &str) -> Result<Value> {
    serde_json::from_str(text)
        .map_err(|e| Error::parse(format!("line {}, column {}", e.line(), e.column()), "invalid JSON"))
}

fn as_array<'a>(v: &'a Value, at: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| Error::parse(at, "expected an array"))
}

fn as_object<'a>(v: &'a Value, at: &str) -> Result<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| Error::parse(at, "expected an object"))
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str, at: &str) -> Result<&'a Value> {
    obj.get(key)
        .ok_or_else(|| Error::parse(at, format!("missing key {key:?}")))
}

fn as_f64(v: &Value, at: &str) -> Result<f64> {
    v.as_f64().ok_or_else(|| Error::parse(at, "expected a number"))
}

fn as_usize(v: &Value, at: &str) -> Result<usize> {
    v.as_u64()
        .and_then(|n| usize::try_from(n).ok())
        .ok_or_else(|| Error::parse(at, "expected a nonnegative integer"))
}

fn as_string_list(v: &Value, at: &str) -> Result<Vec<String>> {
    as_array(v, at)?
        .iter()
        .enumerate()
        .map(|(i, s)| {
            s.as_str()
                .map(str::to_owned)
                .ok_or_else(|| Error::parse(format!("{at}[{}]", i + 1), "expected a string"))
        })
        .collect()
}

fn interval_from_value(v: &Value, at: &str) -> Result<Interval> {
    let pair = as_array(v, at)?;
    if pair.len() != 2 {
        return Err(Error::parse(at, "expected [lo, hi]"));
    }
    let lo = as_f64(&pair[0], at)?;
    let hi = as_f64(&pair[1], at)?;
    Interval::new(lo, hi).map_err(|e| Error::parse(at, e.to_string()))
}

fn fusion_from_value(v: &Value, at: &str) -> Result<FusionResult> {
    if v.is_null() {
        Ok(FusionResult::Empty)
    } else {
        interval_from_value(v, at).map(FusionResult::NonEmpty)
    }
}

fn intervals_from_json(text: &str) -> Result<Vec<Interval>> {
    let doc = parse_json(text)?;
    as_array(&doc, "document")?
        .iter()
        .enumerate()
        .map(|(i, v)| interval_from_value(v, &format!("element {}", i + 1)))
        .collect()
}

fn intervals_from_csv(text: &str) -> Result<Vec<Interval>> {
    let mut lines = data_lines(text);
    match lines.next() {
        Some((_, header)) if split_row(header) == ["lo", "hi"] => {}
        Some((n, _)) => return Err(Error::parse(format!("line {n}"), "expected header lo,hi")),
        None => return Err(Error::parse("line 1", "missing header lo,hi")),
    }
    lines
        .map(|(n, line)| {
            let at = format!("line {n}");
            let cells = split_row(line);
            if cells.len() != 2 {
                return Err(Error::parse(at, "expected two fields"));
            }
            let num = |s: &str| {
                s.parse::<f64>()
                    .map_err(|_| Error::parse(&at, format!("not a number: {s:?}")))
            };
            Interval::new(num(cells[0])?, num(cells[1])?).map_err(|e| Error::parse(&at, e.to_string()))
        })
        .collect()
}

/// Reads intervals in file order.
pub fn parse_intervals(text: &str, format: IntervalFormat) -> Result<Vec<Interval>> {
    match format {
        IntervalFormat::Csv => intervals_from_csv(text),
        IntervalFormat::Json => intervals_from_json(text),
    }
}

/// A JSON array of arrays of names, validated as a nested chain.
pub fn parse_chain(text: &str) -> Result<GradedFamily<String>> {
    let doc = parse_json(text)?;
    let levels = as_array(&doc, "document")?
        .iter()
        .enumerate()
        .map(|(i, level)| as_string_list(level, &format!("level {}", i + 1)))
        .collect::<Result<Vec<_>>>()?;
    validate_graded(levels)
}

/// A JSON object mapping fault counts to probabilities, e.g.
/// `{"0":0.5,"1":0.5}`.
pub fn parse_fault_distribution(text: &str) -> Result<FaultDistribution> {
    let doc = parse_json(text)?;
    let support = as_object(&doc, "document")?
        .iter()
        .map(|(k, v)| {
            let at = format!("key {k:?}");
            let f = k
                .parse::<usize>()
                .map_err(|_| Error::parse(&at, "fault count must be a nonnegative integer"))?;
            Ok((f, as_f64(v, &at)?))
        })
        .collect::<Result<Vec<_>>>()?;
    FaultDistribution::new(support)
}

pub fn parse_fusion(text: &str) -> Result<FusionResult> {
    fusion_from_value(&parse_json(text)?, "document")
}

pub fn parse_graded_intervals(text: &str) -> Result<GradedIntervals> {
    let doc = parse_json(text)?;
    let obj = as_object(&doc, "document")?;
    let f_min = as_usize(field(obj, "f_min", "document")?, "f_min")?;
    let levels = as_array(field(obj, "levels", "document")?, "levels")?
        .iter()
        .enumerate()
        .map(|(i, v)| fusion_from_value(v, &format!("levels[{}]", i + 1)))
        .collect::<Result<Vec<_>>>()?;
    GradedIntervals::new(f_min, levels)
}

pub fn parse_distribution(text: &str) -> Result<IntervalDistribution> {
    let doc = parse_json(text)?;
    let obj = as_object(&doc, "document")?;
    let atoms = as_array(field(obj, "atoms", "document")?, "atoms")?
        .iter()
        .enumerate()
        .map(|(i, atom)| {
            let at = format!("atoms[{}]", i + 1);
            let atom = as_object(atom, &at)?;
            let result = fusion_from_value(field(atom, "interval", &at)?, &at)?;
            let p = as_f64(field(atom, "p", &at)?, &at)?;
            Ok((result, p))
        })
        .collect::<Result<Vec<_>>>()?;
    IntervalDistribution::new(atoms)
}

fn partition_from_value(v: &Value, at: &str) -> Result<Partition> {
    let obj = as_object(v, at)?;
    let blocks = as_array(field(obj, "blocks", at)?, at)?
        .iter()
        .enumerate()
        .map(|(i, b)| as_string_list(b, &format!("{at}.blocks[{}]", i + 1)))
        .collect::<Result<Vec<_>>>()?;
    Partition::from_blocks(blocks)
}

pub fn parse_partition(text: &str) -> Result<Partition> {
    partition_from_value(&parse_json(text)?, "document")
}

/// Reads a finest-first granular set; a `"granular"` flag is ignored.
pub fn parse_granular(text: &str) -> Result<GranularSet> {
    let doc = parse_json(text)?;
    let obj = as_object(&doc, "document")?;
    let levels = as_array(field(obj, "levels", "document")?, "levels")?
        .iter()
        .enumerate()
        .map(|(i, v)| partition_from_value(v, &format!("levels[{}]", i + 1)))
        .collect::<Result<Vec<_>>>()?;
    validate_granular(levels)
}

/// Reads `{"levels": [[...], ...]}`.
pub fn parse_family(text: &str) -> Result<GradedFamily<String>> {
    let doc = parse_json(text)?;
    let obj = as_object(&doc, "document")?;
    let levels = as_array(field(obj, "levels", "document")?, "levels")?
        .iter()
        .enumerate()
        .map(|(i, v)| as_string_list(v, &format!("levels[{}]", i + 1)))
        .collect::<Result<Vec<_>>>()?;
    validate_graded(levels)
}

pub fn parse_approximation(text: &str) -> Result<ApproximationPair> {
    let doc = parse_json(text)?;
    let obj = as_object(&doc, "document")?;
    let lower = as_string_list(field(obj, "lower", "document")?, "lower")?;
    let upper = as_string_list(field(obj, "upper", "document")?, "upper")?;
    if let Some(x) = lower.iter().find(|x| !upper.contains(x)) {
        return Err(Error::parse("lower", format!("object {x:?} missing from upper")));
    }
    Ok(ApproximationPair { lower, upper })
}

pub fn parse_sensitivity(text: &str) -> Result<Vec<SensitivityRecord>> {
    let doc = parse_json(text)?;
    as_array(&doc, "document")?
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let at = format!("record {}", i + 1);
            let obj = as_object(v, &at)?;
            let get = |key: &str| as_usize(field(obj, key, &at)?, &at);
            let record = SensitivityRecord {
                level_index: get("level_index")?,
                attribute_count: get("attribute_count")?,
                lower_size: get("lower_size")?,
                upper_size: get("upper_size")?,
                boundary_size: get("boundary_size")?,
                accuracy: as_f64(field(obj, "accuracy", &at)?, &at)?,
            };
            if record.lower_size > record.upper_size
                || record.boundary_size != record.upper_size - record.lower_size
                || !(0.0..=1.0).contains(&record.accuracy)
            {
                return Err(Error::parse(at, "inconsistent sizes or accuracy"));
            }
            Ok(record)
        })
        .collect()
}

// ---------------------------------------------------------------------------
// CSV

/// Nonblank lines with 1-based line numbers; a trailing `\r` is dropped.
fn data_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, line)| (i + 1, line.strip_suffix('\r').unwrap_or(line)))
        .filter(|(_, line)| !line.trim().is_empty())
}

fn split_row(line: &str) -> Vec<&str> {
    line.split(',').map(str::trim).collect()
}

/// Reads a table with header `object,<attr1>,<attr2>,...`; rows keep
/// their file order.
pub fn parse_table(text: &str) -> Result<InformationTable> {
    let mut lines = data_lines(text);
    let (header_line, header) = lines.next().ok_or_else(|| Error::parse("line 1", "missing header"))?;
    let header = split_row(header);
    if header[0] != "object" {
        return Err(Error::parse(
            format!("line {header_line}"),
            "first header field must be \"object\"",
        ));
    }
    let attributes: Vec<String> = header[1..].iter().map(|s| s.to_string()).collect();
    for (j, name) in attributes.iter().enumerate() {
        check_token(name, header_line, j + 2)?;
        if attributes[..j].contains(name) {
            return Err(Error::parse(
                format!("line {header_line}, column {}", j + 2),
                format!("duplicate attribute {name:?}"),
            ));
        }
    }

    let mut objects: Vec<String> = Vec::new();
    let mut values: Vec<Vec<String>> = Vec::new();
    for (n, line) in lines {
        let cells = split_row(line);
        if cells.len() != header.len() {
            return Err(Error::parse(
                format!("line {n}"),
                format!("expected {} fields, found {}", header.len(), cells.len()),
            ));
        }
        for (j, cell) in cells.iter().enumerate() {
            check_token(cell, n, j + 1)?;
        }
        if objects.iter().any(|o| o == cells[0]) {
            return Err(Error::parse(
                format!("line {n}"),
                format!("duplicate object {:?}", cells[0]),
            ));
        }
        objects.push(cells[0].to_string());
        values.push(cells[1..].iter().map(|s| s.to_string()).collect());
    }
    if objects.is_empty() {
        return Err(Error::parse(format!("line {}", header_line + 1), "no objects"));
    }
    InformationTable::new(objects, attributes, values)
}

fn check_token(token: &str, line: usize, column: usize) -> Result<()> {
    let at = || format!("line {line}, column {column}");
    if token.is_empty() {
        return Err(Error::parse(at(), "empty cell"));
    }
    if token.contains('"') {
        return Err(Error::parse(at(), "quoted fields are not supported"));
    }
    Ok(())
}

/// Splits a comma-separated list of names; the empty string is the empty list.
pub fn parse_name_list(text: &str) -> Vec<String> {
    if text.trim().is_empty() {
        return Vec::new();
    }
    text.split(',').map(|s| s.trim().to_string()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intervals::{fuse, graded_fusion, random_graded};

    fn iv(lo: f64, hi: f64) -> Interval {
        Interval::new(lo, hi).unwrap()
    }

    #[test]
    fn interval_csv() {
        let ivs = parse_intervals("lo,hi\n0,10\n2,8\n", IntervalFormat::Csv).unwrap();
        assert_eq!(ivs, vec![iv(0.0, 10.0), iv(2.0, 8.0)]);
        let err = parse_intervals("lo,hi\n5,1\n", IntervalFormat::Csv).unwrap_err();
        assert!(
            matches!(&err, Error::Parse { location, .. } if location == "line 2"),
            "{err}"
        );
        assert!(parse_intervals("lo,hi\n1,inf\n", IntervalFormat::Csv).is_err());
        assert!(parse_intervals("lo,hi\n1,x\n", IntervalFormat::Csv).is_err());
        assert!(parse_intervals("a,b\n1,2\n", IntervalFormat::Csv).is_err());
        assert_eq!(
            parse_intervals("lo,hi\r\n1.5,2\r\n\r\n", IntervalFormat::Csv).unwrap(),
            vec![iv(1.5, 2.0)]
        );
    }

    #[test]
    fn interval_json() {
        assert_eq!(
            parse_intervals("[[4,8]]", IntervalFormat::Json).unwrap(),
            vec![iv(4.0, 8.0)]
        );
        let err = parse_intervals("[[4,8],[3,1]]", IntervalFormat::Json).unwrap_err();
        assert!(matches!(&err, Error::Parse { location, .. } if location == "element 2"));
        assert!(parse_intervals("[[4,8,9]]", IntervalFormat::Json).is_err());
        assert!(parse_intervals("[[4,8]", IntervalFormat::Json).is_err());
    }

    #[test]
    fn table_csv() {
        let t = parse_table("object,a,b\nx, 1 ,2\ny,1,3\n").unwrap();
        assert_eq!(t.objects(), &["x", "y"]);
        assert_eq!(t.value(0, 0), "1");

        let header_only = parse_table("object,a,b\n").unwrap_err();
        assert!(header_only.to_string().contains("no objects"));
        let ragged = parse_table("object,a,b\nx,1\n").unwrap_err();
        assert!(ragged.to_string().contains("line 2"));
        let empty = parse_table("object,a,b\nx,1,\n").unwrap_err();
        assert!(empty.to_string().contains("empty cell"));
        assert!(parse_table("object,a,a\nx,1,2\n").is_err());
        assert!(parse_table("object,a\nx,1\nx,2\n").is_err());
        assert!(parse_table("obj,a\nx,1\n").is_err());
        assert!(parse_table("object,a\nx,\"1\"\n").is_err());
    }

    #[test]
    fn chain_json() {
        assert_eq!(parse_chain(r#"[["P_1"],["P_1","P_2"]]"#).unwrap().len(), 2);
        assert_eq!(
            parse_chain(r#"[["P_1"],["P_2"]]"#).unwrap_err(),
            Error::NotNested { index: 0 }
        );
        let single = parse_chain("[[]]").unwrap();
        assert_eq!(single.len(), 1);
        assert!(single.levels()[0].is_empty());
        assert!(parse_chain("[]").is_err());
        assert!(parse_chain("[[1]]").unwrap_err().is_format());
    }

    #[test]
    fn fault_distribution_json() {
        let d = parse_fault_distribution(r#"{"0":0.5,"1":0.3,"2":0.2}"#).unwrap();
        assert_eq!(d.support(), &[(0, 0.5), (1, 0.3), (2, 0.2)]);
        assert!(parse_fault_distribution(r#"{"-1":1}"#).is_err());
        assert!(parse_fault_distribution(r#"{"0":0.5}"#).is_err());
    }

    #[test]
    fn canonical_output() {
        let p = Partition::from_blocks(vec![vec!["O1".into(), "O2".into()], vec!["O3".into()]]).unwrap();
        assert_eq!(serialize_partition(&p), r#"{"blocks":[["O1","O2"],["O3"]]}"#);

        let ivs = [iv(0.0, 1.0), iv(5.0, 6.0)];
        let g = graded_fusion(&ivs, 0, 1).unwrap();
        assert_eq!(serialize_graded_intervals(&g), r#"{"f_min":0,"levels":[null,[0,6]]}"#);
        assert_eq!(serialize_fusion(&fuse(&[iv(-0.5, 2.25)], 0).unwrap()), "[-0.5,2.25]");

        let three = [iv(0.0, 10.0), iv(2.0, 8.0), iv(4.0, 12.0)];
        let d = random_graded(&three, &FaultDistribution::new(vec![(0, 0.5), (1, 0.5)]).unwrap()).unwrap();
        assert_eq!(
            serialize_distribution(&d),
            r#"{"atoms":[{"interval":[2,10],"p":0.5},{"interval":[4,8],"p":0.5}]}"#
        );

        let a = ApproximationPair {
            lower: vec!["b".into()],
            upper: vec!["b".into(), "a".into()],
        };
        assert_eq!(serialize_approximation(&a), r#"{"lower":["b"],"upper":["b","a"]}"#);
    }

    #[test]
    fn names() {
        assert!(parse_name_list("").is_empty());
        assert_eq!(parse_name_list("P_1, P_2"), vec!["P_1", "P_2"]);
    }

    #[test]
    fn reals_round_trip() {
        for x in [0.1, 1.0 / 3.0, -2.5e-7, 1.0e300, 5e-324, 12345678.875, 9.5e15] {
            let text = serialize_fusion(&FusionResult::NonEmpty(iv(x, x)));
            let back = parse_fusion(&text).unwrap();
            assert_eq!(back.interval().unwrap().lo().to_bits(), x.to_bits(), "{text}");
        }
    }
}
