//! Instance file formats. Every format is line based, with `%` starting a
//! comment line and a header line naming the kind. Points, vertices, states
//! and letters are 1-based; Cayley-table indices are 0-based.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use invsemi::automata::InverseAutomaton;
use invsemi::hardness::ncl::{Config, NclMachine};
use invsemi::hardness::ugap::Graph;
use invsemi::{CayleyTable, PartialBijection};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("line {line}: {msg}")]
    Line { line: usize, msg: String },
    #[error("{0}")]
    Other(String),
}

fn err<T>(line: usize, msg: impl Into<String>) -> Result<T, FormatError> {
    Err(FormatError::Line { line, msg: msg.into() })
}

pub fn read(path: &Path) -> Result<String, FormatError> {
    std::fs::read_to_string(path).map_err(|source| FormatError::Io { path: path.display().to_string(), source })
}

/// Non-comment, non-blank lines with their 1-based line numbers.
fn lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty() && !l.starts_with('%'))
}

/// The header keyword of a file.
pub fn kind_of(text: &str) -> Option<&str> {
    lines(text).next().and_then(|(_, l)| l.split_whitespace().next())
}

fn split_kw(l: &str) -> (&str, &str) {
    match l.split_once(char::is_whitespace) {
        Some((k, r)) => (k, r.trim()),
        None => (l, ""),
    }
}

fn parse_usize(line: usize, tok: &str) -> Result<usize, FormatError> {
    tok.parse().or_else(|_| err(line, format!("expected a number, got {tok:?}")))
}

fn parse_header(line: usize, l: &str, kind: &str) -> Result<usize, FormatError> {
    let (k, rest) = split_kw(l);
    if k != kind {
        return err(line, format!("expected header `{kind} <n>`"));
    }
    parse_usize(line, rest)
}

fn parse_pb(line: usize, n: usize, text: &str) -> Result<PartialBijection, FormatError> {
    let count = text.split_whitespace().count();
    if count != n {
        return err(line, format!("expected {n} images, got {count}"));
    }
    text.parse().or_else(|e| err(line, format!("{e}")))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PbFile {
    pub degree: usize,
    /// Generators with optional names.
    pub gens: Vec<(Option<String>, PartialBijection)>,
    pub target: Option<PartialBijection>,
    pub s: Option<PartialBijection>,
    pub t: Option<PartialBijection>,
}

impl PbFile {
    pub fn parse(text: &str) -> Result<Self, FormatError> {
        let mut it = lines(text);
        let (l0, h) = it.next().ok_or_else(|| FormatError::Other("empty pb file".into()))?;
        let degree = parse_header(l0, h, "pb")?;
        let mut f = PbFile { degree, gens: Vec::new(), target: None, s: None, t: None };
        for (ln, l) in it {
            let (k, rest) = split_kw(l);
            match k {
                "gen" => {
                    let (name, imgs) = match rest.split_once(':') {
                        Some((name, imgs)) => (Some(name.trim().to_string()), imgs),
                        None => (None, rest),
                    };
                    f.gens.push((name, parse_pb(ln, degree, imgs)?));
                }
                "target" => f.target = Some(parse_pb(ln, degree, rest)?),
                "s" => f.s = Some(parse_pb(ln, degree, rest)?),
                "t" => f.t = Some(parse_pb(ln, degree, rest)?),
                other => return err(ln, format!("unknown record {other:?} in pb file")),
            }
        }
        if f.gens.is_empty() {
            return Err(FormatError::Other("pb file has no generators".into()));
        }
        Ok(f)
    }

    pub fn serialize(&self) -> String {
        let mut s = format!("pb {}\n", self.degree);
        for (name, g) in &self.gens {
            match name {
                Some(n) => writeln!(s, "gen {n}: {g}"),
                None => writeln!(s, "gen {g}"),
            }
            .expect("string write");
        }
        for (kw, x) in [("target", &self.target), ("s", &self.s), ("t", &self.t)] {
            if let Some(x) = x {
                writeln!(s, "{kw} {x}").expect("string write");
            }
        }
        s
    }

    pub fn generators(&self) -> Vec<PartialBijection> {
        self.gens.iter().map(|(_, g)| g.clone()).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CtFile {
    pub table: CayleyTable,
    pub gens: Option<Vec<usize>>,
    pub target: Option<usize>,
    pub s: Option<usize>,
    pub t: Option<usize>,
}

impl CtFile {
    pub fn parse(text: &str) -> Result<Self, FormatError> {
        let mut it = lines(text).peekable();
        let (l0, h) = it.next().ok_or_else(|| FormatError::Other("empty ct file".into()))?;
        let n = parse_header(l0, h, "ct")?;
        let mut rows = Vec::with_capacity(n);
        let mut first_row = l0 + 1;
        for i in 0..n {
            let (ln, l) = it.next().ok_or_else(|| FormatError::Other(format!("ct file ends after {i} of {n} rows")))?;
            if i == 0 {
                first_row = ln;
            }
            let row = l.split_whitespace().map(|t| parse_usize(ln, t)).collect::<Result<Vec<_>, _>>()?;
            if row.len() != n {
                return err(ln, format!("row has {} entries, expected {n}", row.len()));
            }
            rows.push(row);
        }
        let table = CayleyTable::new(rows).or_else(|e| err(first_row, format!("invalid table: {e}")))?;
        let mut f = CtFile { table, gens: None, target: None, s: None, t: None };
        let index = |ln: usize, tok: &str| -> Result<usize, FormatError> {
            let i = parse_usize(ln, tok)?;
            if i >= n {
                return err(ln, format!("index {i} out of range for a table of size {n}"));
            }
            Ok(i)
        };
        for (ln, l) in it {
            let (k, rest) = split_kw(l);
            match k {
                "gens" => f.gens = Some(rest.split_whitespace().map(|t| index(ln, t)).collect::<Result<_, _>>()?),
                "target" => f.target = Some(index(ln, rest)?),
                "s" => f.s = Some(index(ln, rest)?),
                "t" => f.t = Some(index(ln, rest)?),
                other => return err(ln, format!("unknown record {other:?} in ct file")),
            }
        }
        Ok(f)
    }

    pub fn serialize(&self) -> String {
        let n = self.table.size();
        let mut s = format!("ct {n}\n");
        for row in self.table.rows() {
            let r: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            writeln!(s, "{}", r.join(" ")).expect("string write");
        }
        if let Some(g) = &self.gens {
            let r: Vec<String> = g.iter().map(|x| x.to_string()).collect();
            writeln!(s, "gens {}", r.join(" ")).expect("string write");
        }
        for (kw, x) in [("target", self.target), ("s", self.s), ("t", self.t)] {
            if let Some(x) = x {
                writeln!(s, "{kw} {x}").expect("string write");
            }
        }
        s
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphFile {
    pub graph: Graph,
    pub s: Option<usize>,
    pub t: Option<usize>,
}

impl GraphFile {
    pub fn parse(text: &str) -> Result<Self, FormatError> {
        let mut it = lines(text);
        let (l0, h) = it.next().ok_or_else(|| FormatError::Other("empty graph file".into()))?;
        let n = parse_header(l0, h, "graph")?;
        let vertex = |ln: usize, tok: &str| -> Result<usize, FormatError> {
            let v = parse_usize(ln, tok)?;
            if v == 0 || v > n {
                return err(ln, format!("vertex {v} out of range 1..{n}"));
            }
            Ok(v - 1)
        };
        let (mut edges, mut s, mut t) = (Vec::new(), None, None);
        for (ln, l) in it {
            let (k, rest) = split_kw(l);
            let toks: Vec<&str> = rest.split_whitespace().collect();
            match (k, toks.as_slice()) {
                ("edge", [a, b]) => {
                    let (a, b) = (vertex(ln, a)?, vertex(ln, b)?);
                    if a == b {
                        return err(ln, "self-loop");
                    }
                    edges.push((a, b));
                }
                ("s", [v]) => s = Some(vertex(ln, v)?),
                ("t", [v]) => t = Some(vertex(ln, v)?),
                _ => return err(ln, format!("bad record {l:?} in graph file")),
            }
        }
        let graph = Graph::new(n, edges).map_err(|e| FormatError::Other(e.to_string()))?;
        Ok(GraphFile { graph, s, t })
    }

    pub fn serialize(&self) -> String {
        let mut out = format!("graph {}\n", self.graph.n);
        for &(a, b) in &self.graph.edges {
            writeln!(out, "edge {} {}", a + 1, b + 1).expect("string write");
        }
        for (kw, x) in [("s", self.s), ("t", self.t)] {
            if let Some(x) = x {
                writeln!(out, "{kw} {}", x + 1).expect("string write");
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NclFile {
    pub machine: NclMachine,
    pub cs: Config,
    pub ct: Config,
}

fn parse_config(ln: usize, rest: &str, m: usize) -> Result<Config, FormatError> {
    let c = rest
        .split_whitespace()
        .map(|t| match t {
            "<" => Ok(true),
            ">" => Ok(false),
            other => err(ln, format!("orientation must be < or >, got {other:?}")),
        })
        .collect::<Result<Config, _>>()?;
    if c.len() != m {
        return err(ln, format!("{} orientations for {m} edges", c.len()));
    }
    Ok(c)
}

fn config_text(c: &[bool]) -> String {
    c.iter().map(|&b| if b { "<" } else { ">" }).collect::<Vec<_>>().join(" ")
}

impl NclFile {
    pub fn parse(text: &str) -> Result<Self, FormatError> {
        let mut it = lines(text);
        let (l0, h) = it.next().ok_or_else(|| FormatError::Other("empty ncl file".into()))?;
        let n = parse_header(l0, h, "ncl")?;
        let mut edges = Vec::new();
        let (mut cs, mut ct) = (None, None);
        let mut pending = Vec::new();
        for (ln, l) in it {
            let (k, rest) = split_kw(l);
            match k {
                "edge" => {
                    let toks: Vec<&str> = rest.split_whitespace().collect();
                    let [a, b, w] = toks.as_slice() else { return err(ln, "expected `edge u v w`") };
                    let (a, b, w) = (parse_usize(ln, a)?, parse_usize(ln, b)?, parse_usize(ln, w)?);
                    if a == 0 || b == 0 || a > n || b > n {
                        return err(ln, "vertex out of range");
                    }
                    if w != 1 && w != 2 {
                        return err(ln, "weight must be 1 or 2");
                    }
                    edges.push((a - 1, b - 1, w as u8));
                }
                "config-s" => pending.push((ln, true, rest.to_string())),
                "config-t" => pending.push((ln, false, rest.to_string())),
                other => return err(ln, format!("unknown record {other:?} in ncl file")),
            }
        }
        for (ln, is_s, rest) in pending {
            let c = parse_config(ln, &rest, edges.len())?;
            if is_s {
                cs = Some(c);
            } else {
                ct = Some(c);
            }
        }
        let machine = NclMachine::new(n, edges).map_err(|e| FormatError::Other(e.to_string()))?;
        let cs = cs.ok_or_else(|| FormatError::Other("missing config-s".into()))?;
        let ct = ct.ok_or_else(|| FormatError::Other("missing config-t".into()))?;
        for c in [&cs, &ct] {
            machine.check_config(c).map_err(|e| FormatError::Other(e.to_string()))?;
        }
        Ok(NclFile { machine, cs, ct })
    }

    pub fn serialize(&self) -> String {
        let mut out = format!("ncl {}\n", self.machine.vertices());
        for &(a, b, w) in self.machine.edges() {
            writeln!(out, "edge {} {} {w}", a + 1, b + 1).expect("string write");
        }
        writeln!(out, "config-s {}", config_text(&self.cs)).expect("string write");
        writeln!(out, "config-t {}", config_text(&self.ct)).expect("string write");
        out
    }
}

/// Parses one or more automata; each starts with an `ia` header.
pub fn parse_ia(text: &str) -> Result<Vec<InverseAutomaton>, FormatError> {
    struct Pending {
        line: usize,
        states: usize,
        inv: Vec<usize>,
        trans: Vec<Vec<(usize, usize)>>,
        start: Option<usize>,
        accept: Vec<usize>,
    }
    fn finish(p: Pending) -> Result<InverseAutomaton, FormatError> {
        let start = p.start.ok_or(FormatError::Line { line: p.line, msg: "automaton has no start state".into() })?;
        InverseAutomaton::new(p.states, p.inv, &p.trans, start, &p.accept).or_else(|e| err(p.line, e.to_string()))
    }
    let mut out = Vec::new();
    let mut cur: Option<Pending> = None;
    for (ln, l) in lines(text) {
        let (k, rest) = split_kw(l);
        let toks: Vec<&str> = rest.split_whitespace().collect();
        if k == "ia" {
            if let Some(p) = cur.take() {
                out.push(finish(p)?);
            }
            let (mut states, mut letters) = (None, None);
            for t in &toks {
                match t.split_once('=') {
                    Some(("states", v)) => states = Some(parse_usize(ln, v)?),
                    Some(("alphabet", v)) => letters = Some(parse_usize(ln, v)?),
                    _ => return err(ln, format!("bad header field {t:?}")),
                }
            }
            let (Some(states), Some(k)) = (states, letters) else { return err(ln, "expected `ia states=<m> alphabet=<k>`") };
            cur = Some(Pending { line: ln, states, inv: (0..k).collect(), trans: vec![Vec::new(); k], start: None, accept: Vec::new() });
            continue;
        }
        let Some(p) = cur.as_mut() else { return err(ln, "record before `ia` header") };
        let k_letters = p.trans.len();
        let num = |ln: usize, t: &str, max: usize, what: &str| -> Result<usize, FormatError> {
            let v = parse_usize(ln, t)?;
            if v == 0 || v > max {
                return err(ln, format!("{what} {v} out of range 1..{max}"));
            }
            Ok(v - 1)
        };
        match (k, toks.as_slice()) {
            ("inv", [a, b]) => {
                let (a, b) = (num(ln, a, k_letters, "letter")?, num(ln, b, k_letters, "letter")?);
                p.inv[a] = b;
                p.inv[b] = a;
            }
            ("trans", [q, a, r]) => {
                let (q, a, r) = (num(ln, q, p.states, "state")?, num(ln, a, k_letters, "letter")?, num(ln, r, p.states, "state")?);
                p.trans[a].push((q, r));
            }
            ("start", [q]) => p.start = Some(num(ln, q, p.states, "state")?),
            ("accept", qs) => {
                for q in qs {
                    p.accept.push(num(ln, q, p.states, "state")?);
                }
            }
            _ => return err(ln, format!("bad record {l:?} in ia file")),
        }
    }
    if let Some(p) = cur.take() {
        out.push(finish(p)?);
    }
    if out.is_empty() {
        return Err(FormatError::Other("no automata in file".into()));
    }
    Ok(out)
}

pub fn serialize_ia(a: &InverseAutomaton) -> String {
    let mut out = format!("ia states={} alphabet={}\n", a.states(), a.letters());
    for (x, &y) in a.involution().iter().enumerate() {
        if x < y {
            writeln!(out, "inv {} {}", x + 1, y + 1).expect("string write");
        }
    }
    for x in 0..a.letters() {
        for (q, r) in a.transitions(x) {
            writeln!(out, "trans {} {} {}", q + 1, x + 1, r + 1).expect("string write");
        }
    }
    writeln!(out, "start {}", a.start() + 1).expect("string write");
    let acc: Vec<String> = a.accepting().iter().map(|q| (q + 1).to_string()).collect();
    writeln!(out, "accept {}", acc.join(" ")).expect("string write");
    out
}

/// An equation word symbol as written: a constant name, a variable, or a
/// barred variable `X~`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WordSym {
    Name(String),
    Bar(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EqnFile {
    /// Path of the ambient pb file, as written.
    pub over: String,
    pub vars: Vec<(String, Option<String>)>,
    pub consts: Vec<(String, PartialBijection)>,
    pub equations: Vec<(Vec<WordSym>, Vec<WordSym>)>,
}

impl EqnFile {
    pub fn parse(text: &str) -> Result<Self, FormatError> {
        let mut it = lines(text);
        let (l0, h) = it.next().ok_or_else(|| FormatError::Other("empty eqn file".into()))?;
        let (k, rest) = split_kw(h);
        let toks: Vec<&str> = rest.split_whitespace().collect();
        let over = match (k, toks.as_slice()) {
            ("eqn", ["over", path]) => path.to_string(),
            _ => return err(l0, "expected header `eqn over <pb-file>`"),
        };
        let mut f = EqnFile { over, vars: Vec::new(), consts: Vec::new(), equations: Vec::new() };
        let word = |ln: usize, s: &str| -> Result<Vec<WordSym>, FormatError> {
            let w: Vec<WordSym> = s
                .split_whitespace()
                .map(|t| match t.strip_suffix('~') {
                    Some(v) => WordSym::Bar(v.to_string()),
                    None => WordSym::Name(t.to_string()),
                })
                .collect();
            if w.is_empty() {
                return err(ln, "empty word");
            }
            Ok(w)
        };
        for (ln, l) in it {
            let (k, rest) = split_kw(l);
            match k {
                "var" => {
                    let toks: Vec<&str> = rest.split_whitespace().collect();
                    match toks.as_slice() {
                        [x] => f.vars.push((x.to_string(), None)),
                        [x, "in", p] => f.vars.push((x.to_string(), Some(p.to_string()))),
                        _ => return err(ln, "expected `var X [in <pb-file>]`"),
                    }
                }
                "const" => {
                    let (name, imgs) = split_kw(rest);
                    let n = imgs.split_whitespace().count();
                    f.consts.push((name.to_string(), parse_pb(ln, n, imgs)?));
                }
                "eq" => {
                    let Some((l, r)) = rest.split_once('=') else { return err(ln, "expected `eq <word> = <word>`") };
                    f.equations.push((word(ln, l)?, word(ln, r)?));
                }
                other => return err(ln, format!("unknown record {other:?} in eqn file")),
            }
        }
        for (l, r) in &f.equations {
            for s in l.iter().chain(r) {
                let (WordSym::Name(x) | WordSym::Bar(x)) = s;
                let is_var = f.vars.iter().any(|(v, _)| v == x);
                let is_const = f.consts.iter().any(|(c, _)| c == x);
                match s {
                    WordSym::Bar(_) if !is_var => return Err(FormatError::Other(format!("only variables can be barred: {x:?}"))),
                    WordSym::Name(_) if !is_var && !is_const => return Err(FormatError::Other(format!("undeclared symbol {x:?}"))),
                    _ => {}
                }
            }
        }
        Ok(f)
    }

    pub fn serialize(&self) -> String {
        let mut out = format!("eqn over {}\n", self.over);
        for (name, c) in &self.consts {
            writeln!(out, "const {name} {c}").expect("string write");
        }
        for (x, p) in &self.vars {
            match p {
                Some(p) => writeln!(out, "var {x} in {p}"),
                None => writeln!(out, "var {x}"),
            }
            .expect("string write");
        }
        let w = |w: &[WordSym]| {
            w.iter()
                .map(|s| match s {
                    WordSym::Name(x) => x.clone(),
                    WordSym::Bar(x) => format!("{x}~"),
                })
                .collect::<Vec<_>>()
                .join(" ")
        };
        for (l, r) in &self.equations {
            writeln!(out, "eq {} = {}", w(l), w(r)).expect("string write");
        }
        out
    }
}

/// Resolves a path written inside an instance file relative to that file.
pub fn relative_to(file: &Path, written: &str) -> PathBuf {
    let p = Path::new(written);
    if p.is_absolute() {
        return p.to_path_buf();
    }
    file.parent().map_or_else(|| p.to_path_buf(), |d| d.join(p))
}
