//! The JSON group file:
//!
//! ```json
//! {
//!   "format_version": 1,
//!   "elements": ["e", "a"],
//!   "identity": "e",
//!   "table": [
//!     [["e", "e"], ["a", "a"]],
//!     [["a", "a"], ["e", "e"]]
//!   ]
//! }
//! ```
//!
//! Element names are opaque strings and indices follow list order. Reading
//! moves the identity to the front and sorts each cell by index; writing
//! emits that canonical form, one table row per line.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::Path;

use serde::Deserialize;
use twovalued::{ElementId, Error, Pair, Result, TwoValuedGroup};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct GroupFile {
    format_version: u32,
    elements: Vec<String>,
    identity: String,
    table: Vec<Vec<Vec<String>>>,
}

fn parse_error(context: impl Into<String>, message: impl Into<String>) -> Error {
    Error::Parse {
        context: context.into(),
        message: message.into(),
    }
}

pub fn parse_group(text: &str) -> Result<TwoValuedGroup> {
    let file: GroupFile = serde_json::from_str(text).map_err(|e| {
        parse_error(
            format!("line {} column {}", e.line(), e.column()),
            e.to_string(),
        )
    })?;
    if file.format_version != FORMAT_VERSION {
        return Err(parse_error(
            "format_version",
            format!(
                "unsupported version {}, expected {FORMAT_VERSION}",
                file.format_version
            ),
        ));
    }
    let n = file.elements.len();
    let mut index: HashMap<&str, usize> = HashMap::with_capacity(n);
    for (i, name) in file.elements.iter().enumerate() {
        if index.insert(name.as_str(), i).is_some() {
            return Err(parse_error(
                format!("elements[{i}]"),
                format!("duplicate name {name:?}"),
            ));
        }
    }
    let identity = *index
        .get(file.identity.as_str())
        .ok_or_else(|| parse_error("identity", format!("{:?} is not an element", file.identity)))?;

    let cells: usize = file.table.iter().map(Vec::len).sum();
    if file.table.len() != n || file.table.iter().any(|row| row.len() != n) {
        return Err(Error::NonSquareTable {
            size: n,
            cells,
            expected: n * n,
        });
    }
    // identity first, everything else in file order
    let order: Vec<usize> = std::iter::once(identity)
        .chain((0..n).filter(|&i| i != identity))
        .collect();
    let mut position = vec![0; n];
    for (new, &old) in order.iter().enumerate() {
        position[old] = new;
    }
    let mut table = vec![Pair::doubled(ElementId::IDENTITY); n * n];
    for (r, row) in file.table.iter().enumerate() {
        for (c, cell) in row.iter().enumerate() {
            let context = || format!("table[{r}][{c}]");
            if cell.len() != 2 {
                return Err(parse_error(
                    context(),
                    format!("cell has {} entries, expected 2", cell.len()),
                ));
            }
            let lookup = |name: &String| {
                index
                    .get(name.as_str())
                    .map(|&i| ElementId::new(position[i]))
                    .ok_or_else(|| parse_error(context(), format!("unknown element {name:?}")))
            };
            let pair = Pair::new(lookup(&cell[0])?, lookup(&cell[1])?);
            table[position[r] * n + position[c]] = pair;
        }
    }
    let names = order.iter().map(|&i| file.elements[i].clone()).collect();
    TwoValuedGroup::from_table(names, table)
}

pub fn render_group(g: &TwoValuedGroup) -> String {
    let q = |s: &str| serde_json::to_string(s).expect("strings serialize");
    let mut out = String::new();
    out.push_str("{\n");
    let _ = writeln!(out, "  \"format_version\": {FORMAT_VERSION},");
    let names: Vec<String> = g.names().iter().map(|s| q(s)).collect();
    let _ = writeln!(out, "  \"elements\": [{}],", names.join(", "));
    let _ = writeln!(out, "  \"identity\": {},", q(g.name(g.identity())));
    out.push_str("  \"table\": [\n");
    for a in g.elements() {
        let cells: Vec<String> = g
            .elements()
            .map(|b| {
                let p = g.mul(a, b);
                format!("[{}, {}]", q(g.name(p.lo())), q(g.name(p.hi())))
            })
            .collect();
        let sep = if a.index() + 1 < g.size() { "," } else { "" };
        let _ = writeln!(out, "    [{}]{sep}", cells.join(", "));
    }
    out.push_str("  ]\n}\n");
    out
}

pub fn read_group(path: impl AsRef<Path>) -> Result<TwoValuedGroup> {
    let path = path.as_ref();
    let text =
        std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_group(&text).map_err(|e| match e {
        Error::Parse { context, message } => Error::Parse {
            context: format!("{}: {context}", path.display()),
            message,
        },
        other => other,
    })
}

pub fn write_group(path: impl AsRef<Path>, g: &TwoValuedGroup) -> Result<()> {
    let path = path.as_ref();
    std::fs::write(path, render_group(g)).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

/// The canonical rendering of a file's contents.
pub fn canonicalize(text: &str) -> Result<String> {
    Ok(render_group(&parse_group(text)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use twovalued::constructions::{principal, special_series};

    #[test]
    fn round_trip() {
        let g = principal(&[2, 12]).unwrap();
        let text = render_group(&g);
        assert_eq!(parse_group(&text).unwrap(), g);
        assert_eq!(canonicalize(&text).unwrap(), text);
    }

    #[test]
    fn y2_cells() {
        let names = ["e", "s", "x", "y", "z"].map(String::from).to_vec();
        let y2 = special_series(2).unwrap().with_names(names);
        let text = render_group(&y2);
        let value: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(value["table"][2][3], serde_json::json!(["z", "z"]));
        assert_eq!(value["table"][2][2], serde_json::json!(["e", "s"]));
        assert_eq!(value["table"].as_array().unwrap().len(), 5);
    }

    #[test]
    fn identity_moves_to_front_and_cells_sort() {
        let text = r#"{"format_version": 1, "elements": ["a", "e"], "identity": "e",
            "table": [[["e", "e"], ["a", "a"]], [["a", "a"], ["e", "e"]]]}"#;
        let g = parse_group(text).unwrap();
        assert_eq!(g.names(), &["e".to_string(), "a".to_string()]);
        assert_eq!(
            g.mul(ElementId::new(1), ElementId::new(1)),
            Pair::doubled(ElementId::IDENTITY)
        );
        let canon = canonicalize(text).unwrap();
        assert!(canon.contains("\"elements\": [\"e\", \"a\"]"));
    }

    #[test]
    fn malformed_inputs() {
        let three = r#"{"format_version": 1, "elements": ["e"], "identity": "e",
            "table": [[["e", "e", "e"]]]}"#;
        match parse_group(three) {
            Err(Error::Parse { context, .. }) => assert_eq!(context, "table[0][0]"),
            other => panic!("{other:?}"),
        }
        let ragged = r#"{"format_version": 1, "elements": ["e", "a"], "identity": "e",
            "table": [[["e", "e"], ["a", "a"]]]}"#;
        assert!(matches!(
            parse_group(ragged),
            Err(Error::NonSquareTable { .. })
        ));
        assert!(matches!(parse_group("{"), Err(Error::Parse { .. })));
        let unknown = r#"{"format_version": 1, "elements": ["e"], "identity": "e",
            "table": [[["e", "b"]]]}"#;
        assert!(matches!(parse_group(unknown), Err(Error::Parse { .. })));
        let version = r#"{"format_version": 2, "elements": ["e"], "identity": "e",
            "table": [[["e", "e"]]]}"#;
        assert!(matches!(parse_group(version), Err(Error::Parse { .. })));
    }
}
