//! Text format for arrangements (TOML). The writer is canonical: one curve
//! and one point per line, in declaration order.

use super::Arrangement;
use crate::{Error, Result};

fn quote(s: &str) -> String {
    toml::Value::String(s.to_string()).to_string()
}

pub fn to_toml(a: &Arrangement) -> String {
    let mut out = String::new();
    out.push_str(&format!("line_arrangement = {}\n", a.line_arrangement));
    out.push_str(&format!("blocks = {}\n", a.blocks));
    out.push_str(&format!(
        "surface = {{ name = {}, c1_sq = {}, c2 = {} }}\n",
        quote(&a.surface.name),
        a.surface.c1_sq,
        a.surface.c2
    ));
    out.push_str("curves = [\n");
    for c in &a.curves {
        out.push_str(&format!(
            "  {{ id = {}, genus = {}, self_int = {}, block = {}, u = {} }},\n",
            quote(&c.id),
            c.genus,
            c.self_int,
            c.block,
            c.u
        ));
    }
    out.push_str("]\npoints = [\n");
    for p in &a.points {
        let ids: Vec<String> = p.curves.iter().map(|id| quote(id)).collect();
        out.push_str(&format!("  [{}],\n", ids.join(", ")));
    }
    out.push_str("]\n");
    out
}

/// Parses the format written by [`to_toml`]; any equivalent TOML layout
/// (array-of-tables, comments, reordering) is accepted too.
pub fn from_toml(text: &str) -> Result<Arrangement> {
    toml::from_str(text).map_err(|e| Error::Parse {
        what: "arrangement file",
        message: e.to_string(),
    })
}
