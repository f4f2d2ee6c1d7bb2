//! Graphviz export and a syntactic checker for the emitted subset of DOT.

use std::collections::BTreeSet;
use std::fmt::Write;

use crate::bits::PointSet;
use crate::lattice::FiniteLattice;
use crate::spectra::{BitopSpectrum, ClassicalSpectrum};

fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' | '\\' => {
                out.push('\\');
                out.push(c);
            }
            '\n' => out.push_str("\\n"),
            _ => out.push(c),
        }
    }
    out.push('"');
    out
}

/// Hasse diagram, bottom at the bottom. Node ids are element names.
pub fn lattice_to_dot(l: &FiniteLattice) -> String {
    let mut out = format!("digraph {} {{\n  rankdir=BT;\n", quote(l.name()));
    for name in l.names() {
        let _ = writeln!(out, "  {};", quote(name));
    }
    for (a, b) in l.covers() {
        let _ = writeln!(
            out,
            "  {} -> {};",
            quote(l.elem_name(a)),
            quote(l.elem_name(b))
        );
    }
    out.push_str("}\n");
    out
}

type Edges = Vec<(usize, usize)>;

/// Strict covers of a preorder on `0..n` plus one undirected edge per pair
/// of distinct equivalent points.
fn preorder_edges(n: usize, leq: impl Fn(usize, usize) -> bool) -> (Edges, Edges) {
    let lt = |x: usize, y: usize| leq(x, y) && !leq(y, x);
    let mut covers = Vec::new();
    let mut equiv = Vec::new();
    for x in 0..n {
        for y in 0..n {
            if lt(x, y) && !(0..n).any(|z| lt(x, z) && lt(z, y)) {
                covers.push((x, y));
            }
            if x < y && leq(x, y) && leq(y, x) {
                equiv.push((x, y));
            }
        }
    }
    (covers, equiv)
}

fn elems_containing(l: &FiniteLattice, sets: &[PointSet], p: usize) -> String {
    let names: Vec<&str> = (0..l.len())
        .filter(|&x| sets[x].contains(p))
        .map(|x| l.elem_name(x))
        .collect();
    format!("{{{}}}", names.join(","))
}

/// Points labeled `(I;F)` with the elements whose `delta` / `epsilon` sets
/// contain them. Solid edges are tau-specialization covers, dashed edges
/// sigma-specialization covers.
pub fn bitop_to_dot(s: &BitopSpectrum<'_>) -> String {
    let l = s.lattice();
    let mut out = format!(
        "digraph {} {{\n  rankdir=BT;\n  node [shape=box];\n",
        quote(&format!("spec_B({})", l.name()))
    );
    for (p, pair) in s.points().iter().enumerate() {
        let label = format!(
            "{}\ndelta: {}\neps: {}",
            pair.set_label(l),
            elems_containing(l, s.deltas(), p),
            elems_containing(l, s.epsilons(), p)
        );
        let _ = writeln!(out, "  p{p} [label={}];", quote(&label));
    }
    let space = s.space();
    for (style, leq) in [
        (
            "solid",
            &(|x, y| space.leq_tau(x, y)) as &dyn Fn(usize, usize) -> bool,
        ),
        ("dashed", &|x, y| space.leq_sigma(x, y)),
    ] {
        let (covers, equiv) = preorder_edges(s.len(), leq);
        for (x, y) in covers {
            let _ = writeln!(out, "  p{x} -> p{y} [style={style}];");
        }
        for (x, y) in equiv {
            let _ = writeln!(out, "  p{x} -> p{y} [style={style}, dir=none];");
        }
    }
    out.push_str("}\n");
    out
}

/// Prime ideals with their `d` annotations and Zariski specialization.
pub fn classical_to_dot(s: &ClassicalSpectrum<'_>) -> String {
    let l = s.lattice();
    let mut out = format!(
        "digraph {} {{\n  rankdir=BT;\n  node [shape=box];\n",
        quote(&format!("spec({})", l.name()))
    );
    for p in 0..s.len() {
        let label = format!(
            "{}\nd: {}",
            l.set_name(s.points()[p].set()),
            elems_containing(l, s.dmap(), p)
        );
        let _ = writeln!(out, "  P{p} [label={}];", quote(&label));
    }
    let (covers, _) = preorder_edges(s.len(), |x, y| s.space().leq(x, y));
    for (x, y) in covers {
        let _ = writeln!(out, "  P{x} -> P{y};");
    }
    out.push_str("}\n");
    out
}

/// Node and edge counts of a validated document.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DotSummary {
    pub nodes: usize,
    pub edges: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Id(String),
    Arrow,
    Sym(char),
}

fn lex(text: &str) -> Result<Vec<Tok>, String> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
        } else if c == '"' {
            chars.next();
            let mut s = String::new();
            loop {
                match chars.next() {
                    Some('"') => break,
                    Some('\\') => match chars.next() {
                        Some(e) => {
                            s.push('\\');
                            s.push(e);
                        }
                        None => return Err("unterminated escape".into()),
                    },
                    Some(ch) => s.push(ch),
                    None => return Err("unterminated string".into()),
                }
            }
            out.push(Tok::Id(s));
        } else if c.is_ascii_alphanumeric() || c == '_' || c == '.' {
            let mut s = String::new();
            while let Some(&ch) = chars.peek() {
                if ch.is_ascii_alphanumeric() || ch == '_' || ch == '.' {
                    s.push(ch);
                    chars.next();
                } else {
                    break;
                }
            }
            out.push(Tok::Id(s));
        } else if c == '-' {
            chars.next();
            match chars.next() {
                Some('>') => out.push(Tok::Arrow),
                _ => return Err("`-` not followed by `>`".into()),
            }
        } else if "{}[];,=".contains(c) {
            chars.next();
            out.push(Tok::Sym(c));
        } else {
            return Err(format!("unexpected character `{c}`"));
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.at).cloned();
        self.at += 1;
        t
    }

    fn id(&mut self) -> Result<String, String> {
        match self.next() {
            Some(Tok::Id(s)) => Ok(s),
            t => Err(format!("expected identifier, found {t:?}")),
        }
    }

    fn sym(&mut self, c: char) -> Result<(), String> {
        match self.next() {
            Some(Tok::Sym(d)) if d == c => Ok(()),
            t => Err(format!("expected `{c}`, found {t:?}")),
        }
    }

    fn attr_list(&mut self) -> Result<(), String> {
        while self.peek() == Some(&Tok::Sym('[')) {
            self.next();
            while self.peek() != Some(&Tok::Sym(']')) {
                self.id()?;
                self.sym('=')?;
                self.id()?;
                if matches!(self.peek(), Some(Tok::Sym(',' | ';'))) {
                    self.next();
                }
            }
            self.sym(']')?;
        }
        Ok(())
    }
}

/// Checks `text` against the DOT grammar restricted to what this module
/// emits: one `digraph`, node, edge, attribute and `a=b` statements, no
/// subgraphs or ports.
pub fn validate_dot(text: &str) -> Result<DotSummary, String> {
    let mut p = Parser {
        toks: lex(text)?,
        at: 0,
    };
    match p.next() {
        Some(Tok::Id(k)) if k == "digraph" => {}
        t => return Err(format!("expected `digraph`, found {t:?}")),
    }
    if matches!(p.peek(), Some(Tok::Id(_))) {
        p.next();
    }
    p.sym('{')?;
    let mut nodes = BTreeSet::new();
    let mut edges = 0;
    loop {
        match p.peek() {
            Some(Tok::Sym('}')) => {
                p.next();
                break;
            }
            Some(Tok::Sym(';')) => {
                p.next();
            }
            Some(Tok::Id(_)) => {
                let first = p.id()?;
                if matches!(first.as_str(), "graph" | "node" | "edge")
                    && p.peek() == Some(&Tok::Sym('['))
                {
                    p.attr_list()?;
                } else if p.peek() == Some(&Tok::Sym('=')) {
                    p.next();
                    p.id()?;
                } else {
                    nodes.insert(first);
                    while p.peek() == Some(&Tok::Arrow) {
                        p.next();
                        nodes.insert(p.id()?);
                        edges += 1;
                    }
                    p.attr_list()?;
                }
            }
            t => return Err(format!("unexpected {t:?}")),
        }
    }
    if p.at != p.toks.len() {
        return Err("trailing tokens after the graph".into());
    }
    Ok(DotSummary {
        nodes: nodes.len(),
        edges,
    })
}
