//! Text, DOT and JSON formats for graphs, algebras and witnesses, plus the
//! two-part report layout used by the command line tool.
//!
//! Graph files:
//!
//! ```text
//! unilie-graph v1 q=4 p=3
//! # tail head color, 1-based
//! 1 2 1
//! ```
//!
//! With `undirected` after `p=`, each line is an edge `a b color` and arcs
//! point from the smaller endpoint. Algebra files list `i j k sign` for
//! `[v_i, v_j] = sign z_k` under a `unilie-algebra v1 q= p=` header.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::graph::{ColoredArc, ColoredDigraph};
use crate::lie::{IsoWitness, StructureTensor};
use crate::linalg::{format_rat, parse_rat, RatMatrix};

pub const GRAPH_MAGIC: &str = "unilie-graph";
pub const ALGEBRA_MAGIC: &str = "unilie-algebra";
pub const WITNESS_MAGIC: &str = "unilie-witness";

/// Anything the readers can produce.
#[derive(Debug, Clone)]
pub enum Document {
    Graph(ColoredDigraph),
    Algebra(StructureTensor),
    Witness { q: usize, p: usize, witness: IsoWitness },
}

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

/// Non-empty, non-comment lines with 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
}

struct Header {
    line: usize,
    magic: String,
    fields: Vec<(String, String)>,
    flags: Vec<String>,
}

impl Header {
    fn get(&self, key: &str) -> Option<&str> {
        self.fields.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    fn num(&self, key: &str) -> Result<usize> {
        let v = self.get(key).ok_or_else(|| perr(self.line, format!("header is missing {key}=")))?;
        v.parse().map_err(|_| perr(self.line, format!("{key}= must be a number, got '{v}'")))
    }
}

fn header(line: usize, text: &str) -> Result<Header> {
    let mut words = text.split_whitespace();
    let magic = words.next().unwrap_or("").to_string();
    match words.next() {
        Some("v1") => {}
        Some(v) => return Err(perr(line, format!("unsupported version '{v}'"))),
        None => return Err(perr(line, "header is missing the version")),
    }
    let mut fields = Vec::new();
    let mut flags = Vec::new();
    for w in words {
        match w.split_once('=') {
            Some((k, v)) => fields.push((k.to_string(), v.to_string())),
            None => flags.push(w.to_string()),
        }
    }
    Ok(Header {
        line,
        magic,
        fields,
        flags,
    })
}

fn parse_index(line: usize, word: &str, what: &str) -> Result<usize> {
    match word.parse::<usize>() {
        Ok(v) if v >= 1 => Ok(v),
        _ => Err(perr(line, format!("{what} must be a positive integer, got '{word}'"))),
    }
}

fn parse_sign(line: usize, word: &str) -> Result<i8> {
    match word {
        "+1" | "1" | "+" => Ok(1),
        "-1" | "-" => Ok(-1),
        _ => Err(perr(line, format!("sign must be +1 or -1, got '{word}'"))),
    }
}

/// Read any text document by its header.
pub fn read_document(text: &str) -> Result<Document> {
    let mut lines = content_lines(text);
    let (n, first) = lines.next().ok_or_else(|| perr(1, "empty input"))?;
    let h = header(n, first)?;
    let body: Vec<(usize, Vec<&str>)> = lines.map(|(n, l)| (n, l.split_whitespace().collect())).collect();
    match h.magic.as_str() {
        GRAPH_MAGIC => read_graph_body(&h, &body).map(Document::Graph),
        ALGEBRA_MAGIC => read_algebra_body(&h, &body).map(Document::Algebra),
        WITNESS_MAGIC => read_witness_body(&h, &body),
        m => Err(perr(n, format!("unknown format '{m}'"))),
    }
}

fn read_graph_body(h: &Header, body: &[(usize, Vec<&str>)]) -> Result<ColoredDigraph> {
    let (q, p) = (h.num("q")?, h.num("p")?);
    let undirected = h.flags.iter().any(|f| f == "undirected");
    if let Some(f) = h.flags.iter().find(|f| *f != "undirected") {
        return Err(perr(h.line, format!("unknown header flag '{f}'")));
    }
    let mut arcs = Vec::new();
    for (n, words) in body {
        if words.len() != 3 {
            return Err(perr(*n, format!("expected 'tail head color', got {} fields", words.len())));
        }
        let a = parse_index(*n, words[0], "vertex")?;
        let b = parse_index(*n, words[1], "vertex")?;
        let c = parse_index(*n, words[2], "color")?;
        arcs.push((a, b, c));
    }
    if undirected {
        let zero: Vec<(usize, usize, usize)> = arcs.iter().map(|&(a, b, c)| (a - 1, b - 1, c - 1)).collect();
        ColoredDigraph::from_undirected(q, p, &zero)
    } else {
        ColoredDigraph::from_one_based(q, p, &arcs)
    }
}

/// Parse a graph file.
pub fn read_graph(text: &str) -> Result<ColoredDigraph> {
    match read_document(text)? {
        Document::Graph(g) => Ok(g),
        _ => Err(perr(1, format!("expected a {GRAPH_MAGIC} file"))),
    }
}

pub fn write_graph(g: &ColoredDigraph) -> String {
    let mut out = format!("{GRAPH_MAGIC} v1 q={} p={}\n", g.q(), g.p());
    for a in g.arcs() {
        out.push_str(&format!("{} {} {}\n", a.tail + 1, a.head + 1, a.color + 1));
    }
    out
}

fn read_algebra_body(h: &Header, body: &[(usize, Vec<&str>)]) -> Result<StructureTensor> {
    let (q, p) = (h.num("q")?, h.num("p")?);
    if let Some(f) = h.flags.first() {
        return Err(perr(h.line, format!("unknown header flag '{f}'")));
    }
    let mut entries = Vec::new();
    for (n, words) in body {
        if words.len() != 4 {
            return Err(perr(*n, format!("expected 'i j k sign', got {} fields", words.len())));
        }
        entries.push((
            parse_index(*n, words[0], "generator")?,
            parse_index(*n, words[1], "generator")?,
            parse_index(*n, words[2], "central index")?,
            parse_sign(*n, words[3])?,
        ));
    }
    StructureTensor::from_one_based(q, p, &entries)
}

/// Parse an algebra file; a graph file is accepted too and converted.
pub fn read_algebra(text: &str) -> Result<StructureTensor> {
    match read_document(text)? {
        Document::Algebra(t) => Ok(t),
        Document::Graph(g) => Ok(StructureTensor::from_graph(&g)),
        _ => Err(perr(1, format!("expected a {ALGEBRA_MAGIC} or {GRAPH_MAGIC} file"))),
    }
}

pub fn write_algebra(t: &StructureTensor) -> String {
    let mut out = format!("{ALGEBRA_MAGIC} v1 q={} p={}\n", t.q(), t.p());
    for b in t.brackets() {
        out.push_str(&format!(
            "{} {} {} {}\n",
            b.i + 1,
            b.j + 1,
            b.k + 1,
            if b.sign > 0 { "+1" } else { "-1" }
        ));
    }
    out
}

fn read_witness_body(h: &Header, body: &[(usize, Vec<&str>)]) -> Result<Document> {
    let (q, p) = (h.num("q")?, h.num("p")?);
    let kind = h.get("kind").ok_or_else(|| perr(h.line, "header is missing kind="))?;
    let witness = match kind {
        "signed-perm" => {
            let mut vp = vec![None; q];
            let mut cp = vec![None; p];
            for (n, words) in body {
                // v <i> -> <±j>
                if words.len() != 4 || words[2] != "->" {
                    return Err(perr(*n, "expected 'v i -> ±j' or 'z k -> ±l'"));
                }
                let (table, limit) = match words[0] {
                    "v" => (&mut vp, q),
                    "z" => (&mut cp, p),
                    o => return Err(perr(*n, format!("expected v or z, got '{o}'"))),
                };
                let from = parse_index(*n, words[1], "index")?;
                let (sign, target) = match words[3].strip_prefix('-') {
                    Some(rest) => (-1i8, rest),
                    None => (1i8, words[3].strip_prefix('+').unwrap_or(words[3])),
                };
                let to = parse_index(*n, target, "index")?;
                if from > limit || to > limit {
                    return Err(perr(*n, format!("index out of range 1..={limit}")));
                }
                if table[from - 1].replace((to - 1, sign)).is_some() {
                    return Err(perr(*n, format!("{} {from} assigned twice", words[0])));
                }
            }
            let unpack = |t: Vec<Option<(usize, i8)>>, what: &str| -> Result<(Vec<usize>, Vec<i8>)> {
                let mut perm = Vec::new();
                let mut signs = Vec::new();
                for (i, e) in t.into_iter().enumerate() {
                    let (to, s) = e.ok_or_else(|| perr(h.line, format!("no image given for {what}{}", i + 1)))?;
                    perm.push(to);
                    signs.push(s);
                }
                Ok((perm, signs))
            };
            let (vertex_perm, vertex_signs) = unpack(vp, "v")?;
            let (color_perm, color_signs) = unpack(cp, "z")?;
            IsoWitness::SignedPerm {
                vertex_perm,
                color_perm,
                vertex_signs,
                color_signs,
            }
        }
        "general-linear" => {
            let block_respecting = match h.get("block") {
                None | Some("false") => false,
                Some("true") => true,
                Some(o) => return Err(perr(h.line, format!("block= must be true or false, got '{o}'"))),
            };
            let dim = q + p;
            let mut cols: Vec<Option<Vec<_>>> = vec![None; dim];
            for (n, words) in body {
                if words.first() != Some(&"col") || words.len() != dim + 2 {
                    return Err(perr(*n, format!("expected 'col <a>' followed by {dim} entries")));
                }
                let a = parse_index(*n, words[1], "column")?;
                if a > dim {
                    return Err(perr(*n, format!("column out of range 1..={dim}")));
                }
                let entries = words[2..]
                    .iter()
                    .map(|w| parse_rat(w).ok_or_else(|| perr(*n, format!("bad rational '{w}'"))))
                    .collect::<Result<Vec<_>>>()?;
                if cols[a - 1].replace(entries).is_some() {
                    return Err(perr(*n, format!("column {a} given twice")));
                }
            }
            let cols = cols
                .into_iter()
                .enumerate()
                .map(|(i, c)| c.ok_or_else(|| perr(h.line, format!("column {} missing", i + 1))))
                .collect::<Result<Vec<_>>>()?;
            IsoWitness::GeneralLinear {
                matrix: RatMatrix::from_columns(&cols)?,
                block_respecting,
            }
        }
        o => return Err(perr(h.line, format!("unknown witness kind '{o}'"))),
    };
    Ok(Document::Witness { q, p, witness })
}

pub fn read_witness(text: &str) -> Result<(usize, usize, IsoWitness)> {
    match read_document(text)? {
        Document::Witness { q, p, witness } => Ok((q, p, witness)),
        _ => Err(perr(1, format!("expected a {WITNESS_MAGIC} file"))),
    }
}

pub fn write_witness(q: usize, p: usize, w: &IsoWitness) -> String {
    match w {
        IsoWitness::SignedPerm {
            vertex_perm,
            color_perm,
            vertex_signs,
            color_signs,
        } => {
            let mut out = format!("{WITNESS_MAGIC} v1 kind=signed-perm q={q} p={p}\n");
            for (i, (&t, &s)) in vertex_perm.iter().zip(vertex_signs).enumerate() {
                out.push_str(&format!("v {} -> {}{}\n", i + 1, if s < 0 { "-" } else { "+" }, t + 1));
            }
            for (k, (&t, &s)) in color_perm.iter().zip(color_signs).enumerate() {
                out.push_str(&format!("z {} -> {}{}\n", k + 1, if s < 0 { "-" } else { "+" }, t + 1));
            }
            out
        }
        IsoWitness::GeneralLinear {
            matrix,
            block_respecting,
        } => {
            let mut out = format!("{WITNESS_MAGIC} v1 kind=general-linear q={q} p={p} block={block_respecting}\n");
            for c in 0..matrix.cols() {
                let entries: Vec<String> = matrix.column(c).iter().map(format_rat).collect();
                out.push_str(&format!("col {} {}\n", c + 1, entries.join(" ")));
            }
            out
        }
    }
}

/// Colors cycled through by the DOT writer.
pub const PALETTE: [&str; 12] = [
    "#e41a1c", "#377eb8", "#4daf4a", "#984ea3", "#ff7f00", "#a65628", "#f781bf", "#999999", "#66c2a5", "#fc8d62",
    "#8da0cb", "#e7298a",
];

pub fn write_dot(g: &ColoredDigraph) -> String {
    let mut out = format!("// {GRAPH_MAGIC} q={} p={}\ndigraph G {{\n  node [shape=circle];\n", g.q(), g.p());
    for v in 0..g.q() {
        out.push_str(&format!("  v{};\n", v + 1));
    }
    for a in g.arcs() {
        out.push_str(&format!(
            "  v{} -> v{} [color=\"{}\", label=\"z{}\"];\n",
            a.tail + 1,
            a.head + 1,
            PALETTE[a.color % PALETTE.len()],
            a.color + 1
        ));
    }
    out.push_str("}\n");
    out
}

/// Read back the DOT written by [`write_dot`].
pub fn read_dot(text: &str) -> Result<ColoredDigraph> {
    let mut lines = text.lines().enumerate();
    let (_, first) = lines.next().ok_or_else(|| perr(1, "empty input"))?;
    let rest = first
        .strip_prefix("// ")
        .and_then(|r| r.strip_prefix(GRAPH_MAGIC))
        .ok_or_else(|| perr(1, "missing unilie DOT header comment"))?;
    let h = header(1, &format!("{GRAPH_MAGIC} v1{rest}"))?;
    let (q, p) = (h.num("q")?, h.num("p")?);
    let mut arcs = Vec::new();
    for (i, line) in lines {
        let line = line.trim();
        let Some((lhs, attrs)) = line.split_once('[') else {
            continue;
        };
        let Some((a, b)) = lhs.split_once("->") else {
            continue;
        };
        let n = i + 1;
        let vertex = |s: &str| parse_index(n, s.trim().trim_start_matches('v'), "vertex");
        let label = attrs
            .split("label=\"z")
            .nth(1)
            .and_then(|s| s.split('"').next())
            .ok_or_else(|| perr(n, "arc without a z label"))?;
        arcs.push(ColoredArc::new(
            vertex(a)? - 1,
            vertex(b)? - 1,
            parse_index(n, label, "color")? - 1,
        ));
    }
    ColoredDigraph::new(q, p, arcs)
}

#[derive(Debug, Serialize, Deserialize)]
struct GraphData {
    format: String,
    q: usize,
    p: usize,
    arcs: Vec<[usize; 3]>,
}

#[derive(Debug, Serialize, Deserialize)]
struct AlgebraData {
    format: String,
    q: usize,
    p: usize,
    brackets: Vec<(usize, usize, usize, i8)>,
}

pub fn graph_data(g: &ColoredDigraph) -> Value {
    serde_json::to_value(GraphData {
        format: GRAPH_MAGIC.into(),
        q: g.q(),
        p: g.p(),
        arcs: g.arcs().iter().map(|a| [a.tail + 1, a.head + 1, a.color + 1]).collect(),
    })
    .expect("plain data")
}

pub fn algebra_data(t: &StructureTensor) -> Value {
    serde_json::to_value(AlgebraData {
        format: ALGEBRA_MAGIC.into(),
        q: t.q(),
        p: t.p(),
        brackets: t.brackets().iter().map(|b| (b.i + 1, b.j + 1, b.k + 1, b.sign)).collect(),
    })
    .expect("plain data")
}

fn json_err(e: serde_json::Error) -> Error {
    perr(e.line(), e.to_string())
}

/// Read a JSON graph or algebra written by [`graph_data`] or
/// [`algebra_data`].
pub fn read_data(text: &str) -> Result<Document> {
    let v: Value = serde_json::from_str(text).map_err(json_err)?;
    match v.get("format").and_then(Value::as_str) {
        Some(GRAPH_MAGIC) => {
            let d: GraphData = serde_json::from_value(v).map_err(json_err)?;
            let arcs: Vec<(usize, usize, usize)> = d.arcs.iter().map(|a| (a[0], a[1], a[2])).collect();
            Ok(Document::Graph(ColoredDigraph::from_one_based(d.q, d.p, &arcs)?))
        }
        Some(ALGEBRA_MAGIC) => {
            let d: AlgebraData = serde_json::from_value(v).map_err(json_err)?;
            Ok(Document::Algebra(StructureTensor::from_one_based(d.q, d.p, &d.brackets)?))
        }
        _ => Err(perr(1, "JSON input needs a known \"format\" field")),
    }
}

/// Read any supported serialization: text formats, JSON data or DOT.
pub fn read_any(text: &str) -> Result<Document> {
    let t = text.trim_start();
    if t.starts_with('{') {
        read_data(text)
    } else if t.starts_with("//") {
        read_dot(text).map(Document::Graph)
    } else {
        read_document(text)
    }
}

/// Human prose followed by a fenced machine-readable JSON section.
pub fn render_report(human: &str, data: &Value) -> String {
    let mut out = human.trim_end().to_string();
    out.push_str("\n\n```json\n");
    out.push_str(&serde_json::to_string_pretty(data).expect("plain data"));
    out.push_str("\n```\n");
    out
}

/// Extract the JSON section of a report.
pub fn report_data(text: &str) -> Result<Value> {
    let start = text.find("```json\n").ok_or_else(|| perr(1, "report has no json section"))? + 8;
    let end = text[start..].find("\n```").ok_or_else(|| perr(1, "unterminated json section"))?;
    serde_json::from_str(&text[start..start + end]).map_err(json_err)
}
