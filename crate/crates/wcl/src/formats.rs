//! Configuration literals, model files and CSV tables.

use std::collections::BTreeSet;

use wcl_core::focl::{Component, ComponentType, Model};
use wcl_core::interaction::{NamedConfiguration, Port};
use wcl_core::semiring::SemiringId;
use wcl_core::styles::{DistanceMatrix, PriorityTable};

use crate::error::{Error, Result};
use crate::syntax::{tokenize, ParseError, Span, Tok, Token};

struct Cursor<'a> {
    src: &'a str,
    toks: Vec<Token>,
    pos: usize,
}

impl Cursor<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn span(&self) -> Span {
        self.toks[self.pos].span
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if t.tok != Tok::Eof {
            self.pos += 1;
        }
        t
    }

    fn fail(&self, what: &str) -> ParseError {
        let found = match self.peek() {
            Tok::Eof => "unexpected end of input".to_string(),
            t => format!("unexpected {}", t.describe()),
        };
        ParseError::new(self.src, self.span(), found, vec![what.to_string()])
    }

    fn expect(&mut self, tok: Tok) -> Result<Span, ParseError> {
        if *self.peek() == tok {
            Ok(self.bump().span)
        } else {
            Err(self.fail(&format!("`{}`", tok.symbol())))
        }
    }

    fn port(&mut self) -> Result<Port, ParseError> {
        let Tok::Ident(first) = self.peek().clone() else {
            return Err(self.fail("port"));
        };
        self.bump();
        if *self.peek() != Tok::Dot {
            return Ok(Port::new(first));
        }
        self.bump();
        match self.peek().clone() {
            Tok::Ident(name) => {
                self.bump();
                Ok(Port::qualified(first, name))
            }
            _ => Err(self.fail("port name")),
        }
    }
}

/// Parses `{ {p, q}, {p} }`. Whitespace-insensitive; `#` starts a comment.
pub fn parse_configuration(src: &str) -> Result<NamedConfiguration, ParseError> {
    let mut c = Cursor {
        src,
        toks: tokenize(src)?,
        pos: 0,
    };
    let open = c.expect(Tok::LBrace)?;
    let mut out = NamedConfiguration::new();
    if *c.peek() == Tok::RBrace {
        return Err(ParseError::new(src, open.to(c.span()), "configurations must be nonempty", Vec::new()));
    }
    loop {
        let start = c.expect(Tok::LBrace)?;
        let mut a = BTreeSet::new();
        if *c.peek() == Tok::RBrace {
            return Err(ParseError::new(src, start.to(c.span()), "interactions must be nonempty", Vec::new()));
        }
        loop {
            a.insert(c.port()?);
            if *c.peek() == Tok::Comma {
                c.bump();
                continue;
            }
            c.expect(Tok::RBrace)?;
            break;
        }
        out.insert(a);
        if *c.peek() == Tok::Comma {
            c.bump();
            continue;
        }
        c.expect(Tok::RBrace)?;
        break;
    }
    if *c.peek() != Tok::Eof {
        return Err(c.fail("end of input"));
    }
    Ok(out)
}

/// Prints a named configuration in canonical literal form.
pub fn format_configuration(gamma: &NamedConfiguration) -> String {
    let inner: Vec<String> = gamma
        .iter()
        .map(|a| format!("{{{}}}", a.iter().map(Port::to_string).collect::<Vec<_>>().join(", ")))
        .collect();
    format!("{{{}}}", inner.join(", "))
}

/// Parses a model file:
///
/// ```text
/// type M ports m
/// type T ports t1, t2
/// component b1 : M
/// component r1, r2 : T
/// ```
pub fn parse_model(src: &str) -> Result<Model, ParseError> {
    let mut types: Vec<(ComponentType, Span)> = Vec::new();
    let mut comps: Vec<(Component, Span)> = Vec::new();
    let mut offset = 0;
    for line in src.split_inclusive('\n') {
        let base = offset;
        offset += line.len();
        let text = line.split('#').next().unwrap_or("");
        if text.trim().is_empty() {
            continue;
        }
        let toks: Vec<Token> = tokenize(text)
            .map_err(|e| shift(src, e, base))?
            .into_iter()
            .map(|t| Token {
                tok: t.tok,
                span: Span::new(t.span.start + base, t.span.end + base),
            })
            .collect();
        let line_span = toks[0].span.to(toks[toks.len() - 1].span);
        let mut c = Cursor { src, toks, pos: 0 };
        let Tok::Ident(kw) = c.peek().clone() else {
            return Err(c.fail("`type` or `component`"));
        };
        match kw.as_str() {
            "type" => {
                c.bump();
                let name = ident(&mut c, "type name")?;
                match c.peek() {
                    Tok::Ident(s) if s == "ports" => {
                        c.bump();
                    }
                    _ => return Err(c.fail("`ports`")),
                }
                let mut ports = vec![ident(&mut c, "port name")?];
                while *c.peek() == Tok::Comma {
                    c.bump();
                    ports.push(ident(&mut c, "port name")?);
                }
                end(&mut c)?;
                types.push((ComponentType::new(name, ports), line_span));
            }
            "component" => {
                c.bump();
                let mut names = vec![ident(&mut c, "component name")?];
                while *c.peek() == Tok::Comma {
                    c.bump();
                    names.push(ident(&mut c, "component name")?);
                }
                c.expect(Tok::Colon)?;
                let tspan = c.span();
                let ctype = ident(&mut c, "type name")?;
                end(&mut c)?;
                if !types.iter().any(|(t, _)| t.name == ctype) {
                    return Err(ParseError::new(src, tspan, format!("unknown component type `{ctype}`"), Vec::new()));
                }
                comps.extend(names.into_iter().map(|n| (Component::new(n, ctype.clone()), line_span)));
            }
            _ => return Err(c.fail("`type` or `component`")),
        }
    }
    let whole = Span::new(0, src.len());
    let locate = |e: &wcl_core::Error| -> Span {
        let name = match e {
            wcl_core::Error::DuplicateType(n) => n.split('.').next().unwrap_or(n),
            wcl_core::Error::DuplicateComponent(n) => n,
            _ => return whole,
        };
        comps
            .iter()
            .filter(|(c, _)| c.name == name)
            .map(|(_, s)| *s)
            .chain(types.iter().filter(|(t, _)| t.name == name).map(|(_, s)| *s))
            .nth(1)
            .unwrap_or(whole)
    };
    let ts = types.iter().map(|(t, _)| t.clone()).collect();
    let cs = comps.iter().map(|(c, _)| c.clone()).collect();
    Model::new(ts, cs).map_err(|e| ParseError::new(src, locate(&e), e.to_string(), Vec::new()))
}

fn shift(src: &str, e: ParseError, base: usize) -> ParseError {
    let span = Span::new(e.span.start + base, e.span.end + base);
    ParseError::new(src, span, e.message, e.expected)
}

fn ident(c: &mut Cursor<'_>, what: &str) -> Result<String, ParseError> {
    match c.peek().clone() {
        Tok::Ident(s) => {
            c.bump();
            Ok(s)
        }
        _ => Err(c.fail(what)),
    }
}

fn end(c: &mut Cursor<'_>) -> Result<(), ParseError> {
    if *c.peek() == Tok::Eof {
        Ok(())
    } else {
        Err(c.fail("end of line"))
    }
}

/// Reads a header-less CSV table of trimmed cells. Lines starting with `#`
/// are skipped.
pub fn read_table(text: &str, origin: &str) -> Result<Vec<Vec<String>>> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .flexible(true)
        .from_reader(text.as_bytes());
    let mut rows = Vec::new();
    for rec in rdr.records() {
        let rec = rec.map_err(|e| Error::Table {
            origin: origin.to_string(),
            message: e.to_string(),
        })?;
        if rec.iter().all(str::is_empty) {
            continue;
        }
        rows.push(rec.iter().map(str::to_string).collect());
    }
    if rows.is_empty() {
        return Err(Error::Table {
            origin: origin.to_string(),
            message: "empty table".into(),
        });
    }
    Ok(rows)
}

/// An n×n distance matrix from CSV text.
pub fn distance_matrix(text: &str, origin: &str) -> Result<DistanceMatrix> {
    let rows = read_table(text, origin)?;
    let mut out = Vec::with_capacity(rows.len());
    for (i, row) in rows.iter().enumerate() {
        let mut r = Vec::with_capacity(row.len());
        for (j, cell) in row.iter().enumerate() {
            let x: f64 = cell.parse().map_err(|_| Error::Table {
                origin: origin.to_string(),
                message: format!("row {}, column {}: `{cell}` is not a number", i + 1, j + 1),
            })?;
            r.push(x);
        }
        out.push(r);
    }
    DistanceMatrix::new(out).map_err(|e| Error::Table {
        origin: origin.to_string(),
        message: e.to_string(),
    })
}

/// A weight table with entries read by `sr`.
pub fn priority_table(text: &str, origin: &str, sr: SemiringId) -> Result<PriorityTable> {
    let rows = read_table(text, origin)?;
    let mut out = Vec::with_capacity(rows.len());
    for (i, row) in rows.iter().enumerate() {
        let mut r = Vec::with_capacity(row.len());
        for (j, cell) in row.iter().enumerate() {
            r.push(sr.parse_weight(cell).map_err(|e| Error::Table {
                origin: origin.to_string(),
                message: format!("row {}, column {}: {e}", i + 1, j + 1),
            })?);
        }
        out.push(r);
    }
    PriorityTable::new(out).map_err(|e| Error::Table {
        origin: origin.to_string(),
        message: e.to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn configuration_literal_round_trip() {
        let g = parse_configuration(" { {q, p} ,{p}}").unwrap();
        assert_eq!(format_configuration(&g), "{{p}, {p, q}}");
        let g = parse_configuration("{{b1.m, d1.s}}").unwrap();
        assert_eq!(format_configuration(&g), "{{b1.m, d1.s}}");
        assert_eq!(parse_configuration(&format_configuration(&g)).unwrap(), g);
    }

    #[test]
    fn configuration_errors() {
        assert!(parse_configuration("{}").unwrap_err().message.contains("nonempty"));
        assert!(parse_configuration("{{}}").unwrap_err().message.contains("nonempty"));
        let e = parse_configuration("{{p}").unwrap_err();
        assert_eq!(e.column, 5);
    }

    #[test]
    fn model_file() {
        let m = parse_model("# pub/sub\ntype P ports p\ntype T ports t1, t2\n\ncomponent p1, p2 : P\ncomponent r1 : T # topic\n").unwrap();
        assert_eq!(m.components().len(), 3);
        assert_eq!(m.universe().len(), 4);
        let e = parse_model("type P ports p\ncomponent x : Q\n").unwrap_err();
        assert_eq!((e.line, e.column), (2, 15));
        let e = parse_model("type P ports p\ncomponent x : P\ncomponent x : P\n").unwrap_err();
        assert_eq!(e.line, 3);
        assert!(parse_model("kind P\n").is_err());
    }

    #[test]
    fn tables() {
        let m = distance_matrix("0,1,2\n1,0,3\n2,3,0\n", "m.csv").unwrap();
        assert_eq!(m.get(1, 2), 3.0);
        assert!(distance_matrix("0,1\n1,0\n", "m.csv").is_err());
        assert!(distance_matrix("0,x,2\n1,0,3\n2,3,0\n", "m.csv").unwrap_err().to_string().contains("row 1, column 2"));
        let t = priority_table("0.5, 0.25\n1, 0\n", "w.csv", SemiringId::Viterbi).unwrap();
        assert_eq!((t.rows(), t.cols()), (2, 2));
        assert!(priority_table("2\n", "w.csv", SemiringId::Viterbi).is_err());
    }
}
