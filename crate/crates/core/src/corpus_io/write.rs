use std::fmt::Write;

use crate::coeff::{Field, Poly};
use crate::multilinear::Space;

use super::bundle::{Bundle, Expectation};

fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\t' => out.push_str("\\t"),
            '\r' => out.push_str("\\r"),
            c if c.is_control() => {
                let _ = write!(out, "\\u{:04X}", c as u32);
            }
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

fn key(s: &str) -> String {
    if !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-') {
        s.to_string()
    } else {
        quote(s)
    }
}

/// `{ a = "..", b = ".." }` over the nonzero coordinates, in basis order.
fn vector(space: &Space, coords: &[Poly]) -> String {
    let parts: Vec<String> = coords
        .iter()
        .enumerate()
        .filter(|(_, p)| !p.is_zero())
        .map(|(k, p)| format!("{} = {}", key(space.label(k)), quote(&p.to_string())))
        .collect();
    if parts.is_empty() {
        "{}".to_string()
    } else {
        format!("{{ {} }}", parts.join(", "))
    }
}

fn list(items: impl IntoIterator<Item = String>) -> String {
    let items: Vec<String> = items.into_iter().collect();
    format!("[{}]", items.join(", "))
}

/// Canonical text of a bundle: sections in a fixed order, names sorted,
/// entries in basis order, zero coordinates omitted.
pub fn serialize_bundle(bundle: &Bundle) -> String {
    let mut out = String::new();
    let field = match bundle.ring.field() {
        Field::Rationals => "Q".to_string(),
        Field::Prime(p) => format!("F{p}"),
    };
    let _ = writeln!(out, "[ring]\nfield = {}\nparameters = {}", quote(&field), list(bundle.ring.params().iter().map(|p| quote(p))));

    if !bundle.spaces.is_empty() {
        out.push_str("\n[spaces]\n");
        for (name, space) in &bundle.spaces {
            let _ = writeln!(out, "{} = {}", key(name), list(space.basis().iter().map(|b| quote(b))));
        }
    }

    for (name, b) in &bundle.bilinear {
        let _ = writeln!(out, "\n[bilinear.{}]", key(name));
        let _ = writeln!(out, "left = {}\nright = {}\ntarget = {}", quote(b.left().name()), quote(b.right().name()), quote(b.target().name()));
        let mut rows = Vec::new();
        for i in 0..b.left().dim() {
            for j in 0..b.right().dim() {
                let image = b.image(i, j);
                if image.iter().any(|p| !p.is_zero()) {
                    rows.push(format!(
                        "  {{ row = {}, col = {}, out = {} }},",
                        quote(b.left().label(i)),
                        quote(b.right().label(j)),
                        vector(b.target(), &image)
                    ));
                }
            }
        }
        if rows.is_empty() {
            out.push_str("entries = []\n");
        } else {
            let _ = writeln!(out, "entries = [\n{}\n]", rows.join("\n"));
        }
    }

    for (name, m) in &bundle.linear {
        let _ = writeln!(out, "\n[linear.{}]", key(name));
        let _ = writeln!(out, "source = {}\ntarget = {}", quote(m.source().name()), quote(m.target().name()));
        let _ = writeln!(out, "\n[linear.{}.columns]", key(name));
        for c in 0..m.source().dim() {
            let col = m.column(c);
            if col.iter().any(|p| !p.is_zero()) {
                let _ = writeln!(out, "{} = {}", key(m.source().label(c)), vector(m.target(), &col));
            }
        }
    }

    for (name, e) in &bundle.elements {
        let _ = writeln!(out, "\n[elements.{}]", key(name));
        let space = &bundle.spaces[&e.space];
        let _ = writeln!(out, "space = {}\ncoords = {}", quote(&e.space), vector(space, &e.coords));
    }

    for c in &bundle.claims {
        out.push_str("\n[[claims]]\n");
        let _ = writeln!(out, "kind = {}", quote(c.kind.name()));
        let binds: Vec<String> = c.bind.iter().map(|(r, n)| format!("{} = {}", key(r), quote(n))).collect();
        let _ = writeln!(out, "bind = {{ {} }}", binds.join(", "));
        if let Some(e) = &c.expect {
            let _ = writeln!(out, "expect = {}", quote(e.label()));
            if !matches!(e, Expectation::Holds) {
                let _ = writeln!(out, "constraints = {}", list(e.constraints().iter().map(|p| quote(&p.to_string()))));
            }
        }
        if let Some(n) = &c.note {
            let _ = writeln!(out, "note = {}", quote(n));
        }
    }
    out
}
