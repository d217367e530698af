use super::{ParseError, Span};

#[derive(Clone, Debug, PartialEq)]
pub enum Tok {
    Ident(String),
    Number(String),
    /// `inf` or `-inf`.
    Inf(bool),
    LBrace,
    RBrace,
    LParen,
    RParen,
    Comma,
    Colon,
    Dot,
    Bang,
    Amp,
    Pipe,
    Tilde,
    Plus,
    OPlus,
    OTimes,
    OUplus,
    Wedge,
    Vee,
    Arrow,
    Eq,
    Neq,
    AndAnd,
    Eof,
}

impl Tok {
    pub fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Number(s) => format!("number `{s}`"),
            Tok::Inf(false) => "`inf`".into(),
            Tok::Inf(true) => "`-inf`".into(),
            Tok::Eof => "end of input".into(),
            t => format!("`{}`", t.symbol()),
        }
    }

    pub fn symbol(&self) -> &'static str {
        match self {
            Tok::LBrace => "{",
            Tok::RBrace => "}",
            Tok::LParen => "(",
            Tok::RParen => ")",
            Tok::Comma => ",",
            Tok::Colon => ":",
            Tok::Dot => ".",
            Tok::Bang => "!",
            Tok::Amp => "&",
            Tok::Pipe => "|",
            Tok::Tilde => "~",
            Tok::Plus => "+",
            Tok::OPlus => "(+)",
            Tok::OTimes => "(*)",
            Tok::OUplus => "(#)",
            Tok::Wedge => "/\\",
            Tok::Vee => "\\/",
            Tok::Arrow => "=>",
            Tok::Eq => "=",
            Tok::Neq => "!=",
            Tok::AndAnd => "&&",
            _ => "",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Token {
    pub tok: Tok,
    pub span: Span,
}

pub fn tokenize(src: &str) -> Result<Vec<Token>, ParseError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        if c == b'#' {
            // Comment to end of line.
            while i < bytes.len() && bytes[i] != b'\n' {
                i += 1;
            }
            continue;
        }
        let start = i;
        let rest = &src[i..];
        let fixed: &[(&str, Tok)] = &[
            ("(+)", Tok::OPlus),
            ("(*)", Tok::OTimes),
            ("(#)", Tok::OUplus),
            ("/\\", Tok::Wedge),
            ("\\/", Tok::Vee),
            ("=>", Tok::Arrow),
            ("!=", Tok::Neq),
            ("&&", Tok::AndAnd),
            ("-inf", Tok::Inf(true)),
        ];
        if let Some((s, t)) = fixed.iter().find(|(s, _)| rest.starts_with(s)) {
            if !(matches!(t, Tok::Inf(true)) && rest[4..].starts_with(is_ident_char)) {
                i += s.len();
                out.push(Token {
                    tok: t.clone(),
                    span: Span::new(start, i),
                });
                continue;
            }
        }
        let single = match c {
            b'{' => Some(Tok::LBrace),
            b'}' => Some(Tok::RBrace),
            b'(' => Some(Tok::LParen),
            b')' => Some(Tok::RParen),
            b',' => Some(Tok::Comma),
            b':' => Some(Tok::Colon),
            b'.' => Some(Tok::Dot),
            b'!' => Some(Tok::Bang),
            b'&' => Some(Tok::Amp),
            b'|' => Some(Tok::Pipe),
            b'~' => Some(Tok::Tilde),
            b'+' => Some(Tok::Plus),
            b'=' => Some(Tok::Eq),
            _ => None,
        };
        if let Some(tok) = single {
            i += 1;
            out.push(Token {
                tok,
                span: Span::new(start, i),
            });
            continue;
        }
        if c.is_ascii_digit() {
            i = scan_number(bytes, i);
            out.push(Token {
                tok: Tok::Number(src[start..i].to_string()),
                span: Span::new(start, i),
            });
            continue;
        }
        if c.is_ascii_alphabetic() || c == b'_' {
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            let word = &src[start..i];
            let tok = if word == "inf" {
                Tok::Inf(false)
            } else {
                Tok::Ident(word.to_string())
            };
            out.push(Token {
                tok,
                span: Span::new(start, i),
            });
            continue;
        }
        let ch = rest.chars().next().unwrap_or('?');
        return Err(ParseError::new(
            src,
            Span::new(start, start + ch.len_utf8()),
            format!("unexpected character `{ch}`"),
            Vec::new(),
        ));
    }
    out.push(Token {
        tok: Tok::Eof,
        span: Span::new(src.len(), src.len()),
    });
    Ok(out)
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

fn scan_number(b: &[u8], mut i: usize) -> usize {
    while i < b.len() && b[i].is_ascii_digit() {
        i += 1;
    }
    if i + 1 < b.len() && b[i] == b'.' && b[i + 1].is_ascii_digit() {
        i += 1;
        while i < b.len() && b[i].is_ascii_digit() {
            i += 1;
        }
    }
    if i < b.len() && (b[i] == b'e' || b[i] == b'E') {
        let mut j = i + 1;
        if j < b.len() && (b[j] == b'+' || b[j] == b'-') {
            j += 1;
        }
        if j < b.len() && b[j].is_ascii_digit() {
            while j < b.len() && b[j].is_ascii_digit() {
                j += 1;
            }
            i = j;
        }
    }
    i
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toks(s: &str) -> Vec<Tok> {
        tokenize(s).unwrap().into_iter().map(|t| t.tok).collect()
    }

    #[test]
    fn operators() {
        assert_eq!(
            toks("(+) (*) (#) /\\ \\/ => != && ( + )"),
            vec![
                Tok::OPlus,
                Tok::OTimes,
                Tok::OUplus,
                Tok::Wedge,
                Tok::Vee,
                Tok::Arrow,
                Tok::Neq,
                Tok::AndAnd,
                Tok::LParen,
                Tok::Plus,
                Tok::RParen,
                Tok::Eof
            ]
        );
    }

    #[test]
    fn numbers_and_infinities() {
        assert_eq!(
            toks("2.5 1e-3 inf -inf 7"),
            vec![
                Tok::Number("2.5".into()),
                Tok::Number("1e-3".into()),
                Tok::Inf(false),
                Tok::Inf(true),
                Tok::Number("7".into()),
                Tok::Eof
            ]
        );
    }

    #[test]
    fn comments_and_qualified_ports() {
        assert_eq!(
            toks("{b1.m} # trailing\n"),
            vec![
                Tok::LBrace,
                Tok::Ident("b1".into()),
                Tok::Dot,
                Tok::Ident("m".into()),
                Tok::RBrace,
                Tok::Eof
            ]
        );
    }

    #[test]
    fn bad_character_position() {
        let e = tokenize("{p}\n  $").unwrap_err();
        assert_eq!((e.line, e.column), (2, 3));
    }
}
