//! Line-based text formats.
//!
//! ```text
//! lattice M5
//! elements 0 a b c 1
//! cover 0 a
//! cover a 1      # comments run to end of line
//! ```
//!
//! Homomorphism files start with `hom <name> from <lattice> to <lattice>`
//! followed by one `map <source> <target>` line per source element.

use thiserror::Error;

use crate::lattice::{FiniteLattice, LatticeError, LatticeHom};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum CatalogError {
    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("line {line}, column {column}: unknown element `{name}`")]
    UnknownElement {
        line: usize,
        column: usize,
        name: String,
    },
    #[error("hom file expects lattice `{expected}` but got `{found}`")]
    LatticeMismatch { expected: String, found: String },
    #[error("exhaustive enumeration supports at most {max} elements, asked for {requested}")]
    SizeBoundExceeded { requested: usize, max: usize },
    #[error("random generation needs a seed")]
    MissingSeed,
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// Parsed form of a lattice file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeDoc {
    pub name: String,
    pub elements: Vec<String>,
    pub covers: Vec<(String, String)>,
}

impl LatticeDoc {
    pub fn build(&self) -> Result<FiniteLattice, CatalogError> {
        let idx = |s: &str| {
            self.elements
                .iter()
                .position(|e| e == s)
                .expect("checked while parsing")
        };
        let covers: Vec<(usize, usize)> =
            self.covers.iter().map(|(a, b)| (idx(a), idx(b))).collect();
        Ok(FiniteLattice::build(
            self.name.clone(),
            self.elements.clone(),
            &covers,
        )?)
    }
}

struct Token<'t> {
    text: &'t str,
    column: usize,
}

/// Splits a line into whitespace-separated tokens with 1-based columns,
/// dropping anything after `#`.
fn tokens(line: &str) -> Vec<Token<'_>> {
    let body = line.split('#').next().unwrap_or("");
    let mut out = Vec::new();
    let mut start = None;
    for (col, (i, c)) in body.char_indices().enumerate() {
        match (c.is_whitespace(), start) {
            (false, None) => start = Some((i, col + 1)),
            (true, Some((s, sc))) => {
                out.push(Token {
                    text: &body[s..i],
                    column: sc,
                });
                start = None;
            }
            _ => {}
        }
    }
    if let Some((s, sc)) = start {
        out.push(Token {
            text: &body[s..],
            column: sc,
        });
    }
    out
}

fn parse_err(line: usize, column: usize, message: impl Into<String>) -> CatalogError {
    CatalogError::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// Nonempty lines as `(line number, tokens)`.
fn lines(text: &str) -> impl Iterator<Item = (usize, Vec<Token<'_>>)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, tokens(l)))
        .filter(|(_, t)| !t.is_empty())
}

fn expect_keyword(ln: usize, toks: &[Token<'_>], kw: &str) -> Result<(), CatalogError> {
    if toks[0].text != kw {
        return Err(parse_err(
            ln,
            toks[0].column,
            format!("expected `{kw}`, found `{}`", toks[0].text),
        ));
    }
    Ok(())
}

fn expect_arity(ln: usize, toks: &[Token<'_>], n: usize, what: &str) -> Result<(), CatalogError> {
    if toks.len() != n {
        let col = toks.get(n).or(toks.last()).map_or(1, |t| t.column);
        return Err(parse_err(
            ln,
            col,
            format!("`{what}` takes {} argument(s)", n - 1),
        ));
    }
    Ok(())
}

pub fn parse_doc(text: &str) -> Result<LatticeDoc, CatalogError> {
    let mut it = lines(text);
    let (ln, head) = it.next().ok_or_else(|| parse_err(1, 1, "empty document"))?;
    expect_keyword(ln, &head, "lattice")?;
    expect_arity(ln, &head, 2, "lattice")?;
    let name = head[1].text.to_string();

    let (ln, els) = it
        .next()
        .ok_or_else(|| parse_err(ln + 1, 1, "missing `elements` line"))?;
    expect_keyword(ln, &els, "elements")?;
    if els.len() < 2 {
        return Err(parse_err(
            ln,
            els[0].column,
            "`elements` needs at least one name",
        ));
    }
    let mut elements: Vec<String> = Vec::new();
    for t in &els[1..] {
        if elements.iter().any(|e| e == t.text) {
            return Err(parse_err(
                ln,
                t.column,
                format!("duplicate element `{}`", t.text),
            ));
        }
        elements.push(t.text.to_string());
    }

    let mut covers = Vec::new();
    for (ln, toks) in it {
        expect_keyword(ln, &toks, "cover")?;
        expect_arity(ln, &toks, 3, "cover")?;
        for t in &toks[1..] {
            if !elements.iter().any(|e| e == t.text) {
                return Err(CatalogError::UnknownElement {
                    line: ln,
                    column: t.column,
                    name: t.text.to_string(),
                });
            }
        }
        if toks[1].text == toks[2].text {
            return Err(parse_err(
                ln,
                toks[2].column,
                format!("reflexive cover `{}`", toks[1].text),
            ));
        }
        covers.push((toks[1].text.to_string(), toks[2].text.to_string()));
    }
    Ok(LatticeDoc {
        name,
        elements,
        covers,
    })
}

/// Parses and validates a lattice file.
pub fn parse_lattice(text: &str) -> Result<FiniteLattice, CatalogError> {
    parse_doc(text)?.build()
}

/// Renders `l` in the lattice format with its cover relation.
pub fn render(l: &FiniteLattice) -> String {
    let mut out = format!("lattice {}\nelements {}\n", l.name(), l.names().join(" "));
    for (a, b) in l.covers() {
        out.push_str(&format!("cover {} {}\n", l.elem_name(a), l.elem_name(b)));
    }
    out
}

/// Parses a homomorphism file against already loaded lattices.
pub fn parse_hom<'a>(
    text: &str,
    source: &'a FiniteLattice,
    target: &'a FiniteLattice,
) -> Result<LatticeHom<'a>, CatalogError> {
    let mut it = lines(text);
    let (ln, head) = it.next().ok_or_else(|| parse_err(1, 1, "empty document"))?;
    expect_keyword(ln, &head, "hom")?;
    expect_arity(ln, &head, 6, "hom")?;
    if head[2].text != "from" {
        return Err(parse_err(ln, head[2].column, "expected `from`"));
    }
    if head[4].text != "to" {
        return Err(parse_err(ln, head[4].column, "expected `to`"));
    }
    for (t, l) in [(&head[3], source), (&head[5], target)] {
        if t.text != l.name() {
            return Err(CatalogError::LatticeMismatch {
                expected: t.text.to_string(),
                found: l.name().to_string(),
            });
        }
    }
    let mut map: Vec<Option<usize>> = vec![None; source.len()];
    for (ln, toks) in it {
        expect_keyword(ln, &toks, "map")?;
        expect_arity(ln, &toks, 3, "map")?;
        let lookup = |l: &FiniteLattice, t: &Token<'_>| {
            l.index_of(t.text)
                .ok_or_else(|| CatalogError::UnknownElement {
                    line: ln,
                    column: t.column,
                    name: t.text.to_string(),
                })
        };
        let x = lookup(source, &toks[1])?;
        let y = lookup(target, &toks[2])?;
        if map[x].replace(y).is_some() {
            return Err(parse_err(
                ln,
                toks[1].column,
                format!("`{}` mapped twice", toks[1].text),
            ));
        }
    }
    let map = map
        .iter()
        .enumerate()
        .map(|(x, m)| {
            m.ok_or_else(|| LatticeError::MissingMapping(source.elem_name(x).to_string()))
        })
        .collect::<Result<Vec<usize>, _>>()?;
    Ok(LatticeHom::new(source, target, map)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::named;
    use crate::lattice::Bound;

    const M5: &str = "\
# the diamond with three atoms
lattice M5
elements 0 a b c 1

cover 0 a
cover 0 b
cover 0 c
cover a 1   # upper half
cover b 1
cover c 1
";

    #[test]
    fn parses_m5() {
        let l = parse_lattice(M5).unwrap();
        assert_eq!(l.len(), 5);
        assert_eq!(l, named::m5());
    }

    #[test]
    fn reflexive_cover_is_a_parse_error() {
        let err = parse_lattice("lattice x\nelements a b\ncover a a\n").unwrap_err();
        assert_eq!(
            err,
            CatalogError::Parse {
                line: 3,
                column: 9,
                message: "reflexive cover `a`".into()
            }
        );
    }

    #[test]
    fn missing_lub_is_reported() {
        let err = parse_lattice("lattice v\nelements 0 a b\ncover 0 a\ncover 0 b\n").unwrap_err();
        assert_eq!(
            err,
            CatalogError::Lattice(LatticeError::NotALattice {
                x: "a".into(),
                y: "b".into(),
                bound: Bound::Join
            })
        );
    }

    #[test]
    fn diagnostics_carry_positions() {
        let err = parse_lattice("lattice x\nelements a b\n  cover a z\n").unwrap_err();
        assert_eq!(
            err,
            CatalogError::UnknownElement {
                line: 3,
                column: 11,
                name: "z".into()
            }
        );
        assert!(matches!(
            parse_lattice("lattice x\nelements a a\n"),
            Err(CatalogError::Parse {
                line: 2,
                column: 12,
                ..
            })
        ));
        assert!(matches!(
            parse_lattice("elements a\n"),
            Err(CatalogError::Parse {
                line: 1,
                column: 1,
                ..
            })
        ));
        assert!(matches!(parse_lattice(""), Err(CatalogError::Parse { .. })));
        assert!(matches!(
            parse_lattice("lattice x\nelements a b\ncover a b c\n"),
            Err(CatalogError::Parse {
                line: 3,
                column: 11,
                ..
            })
        ));
        assert!(matches!(
            parse_lattice("lattice x\nelements a b\ncover a b\ncover b a\n"),
            Err(CatalogError::Lattice(LatticeError::CyclicCovers(_)))
        ));
    }

    #[test]
    fn render_round_trips_the_catalog() {
        for l in named::catalog() {
            let text = render(&l);
            let back = parse_lattice(&text).unwrap();
            assert_eq!(back, l);
            assert_eq!(render(&back), text);
        }
    }

    #[test]
    fn hom_files() {
        let c2 = named::chain(2);
        let m5 = named::m5();
        let f = parse_hom("hom inc from chain2 to M5\nmap 0 0\nmap 1 a\n", &c2, &m5).unwrap();
        assert_eq!(f.map(), &[0, 1]);
        assert_eq!(
            parse_hom("hom inc from chain2 to M5\nmap 0 0\n", &c2, &m5).unwrap_err(),
            CatalogError::Lattice(LatticeError::MissingMapping("1".into()))
        );
        let d = named::diamond();
        let err = parse_hom(
            "hom bad from diamond to chain2\nmap 0 0\nmap a 1\nmap b 1\nmap 1 0\n",
            &d,
            &c2,
        )
        .unwrap_err();
        assert!(
            matches!(err, CatalogError::Lattice(LatticeError::NotAHom { .. })),
            "{err}"
        );
        assert!(matches!(
            parse_hom("hom inc from chain3 to M5\n", &c2, &m5),
            Err(CatalogError::LatticeMismatch { .. })
        ));
        assert!(matches!(
            parse_hom("hom inc from chain2 to M5\nmap 0 0\nmap 0 a\n", &c2, &m5),
            Err(CatalogError::Parse { line: 3, .. })
        ));
    }
}
