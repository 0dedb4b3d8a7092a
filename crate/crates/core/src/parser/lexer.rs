use crate::error::{Error, Result, SourceSpan};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Cmp {
    Lt,
    Le,
    Eq,
    Ne,
    Ge,
    Gt,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Int(i64),
    If,
    Dot,
    Comma,
    LParen,
    RParen,
    LBrace,
    RBrace,
    /// Comparator, with `true` when written as a single `=`.
    Cmp(Cmp, bool),
    /// `#true`.
    True,
}

#[derive(Clone, Debug)]
pub struct Token {
    pub tok: Tok,
    pub span: SourceSpan,
}

pub fn describe(t: Option<&Tok>) -> String {
    match t {
        None => "end of input".into(),
        Some(Tok::Ident(s)) => format!("`{s}`"),
        Some(Tok::Int(i)) => format!("`{i}`"),
        Some(Tok::If) => "`:-`".into(),
        Some(Tok::Dot) => "`.`".into(),
        Some(Tok::True) => "`#true`".into(),
        Some(Tok::Comma) => "`,`".into(),
        Some(Tok::LParen) => "`(`".into(),
        Some(Tok::RParen) => "`)`".into(),
        Some(Tok::LBrace) => "`{`".into(),
        Some(Tok::RBrace) => "`}`".into(),
        Some(Tok::Cmp(..)) => "comparator".into(),
    }
}

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
    line: usize,
    col: usize,
}

impl<'a> Cursor<'a> {
    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn peek2(&self) -> Option<char> {
        let mut it = self.src[self.pos..].chars();
        it.next();
        it.next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn span_from(&self, start: (usize, usize, usize)) -> SourceSpan {
        SourceSpan {
            line: start.1,
            column: start.2,
            start: start.0,
            end: self.pos,
        }
    }

    fn mark(&self) -> (usize, usize, usize) {
        (self.pos, self.line, self.col)
    }
}

fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '\''
}

pub fn tokenize(src: &str) -> Result<Vec<Token>> {
    let mut cur = Cursor {
        src,
        pos: 0,
        line: 1,
        col: 1,
    };
    let mut out = Vec::new();
    while let Some(c) = cur.peek() {
        if c.is_whitespace() {
            cur.bump();
            continue;
        }
        if c == '%' {
            while let Some(c) = cur.peek() {
                if c == '\n' {
                    break;
                }
                cur.bump();
            }
            continue;
        }
        let start = cur.mark();
        let tok = match c {
            '.' => {
                cur.bump();
                Tok::Dot
            }
            ',' => {
                cur.bump();
                Tok::Comma
            }
            '(' => {
                cur.bump();
                Tok::LParen
            }
            ')' => {
                cur.bump();
                Tok::RParen
            }
            '{' => {
                cur.bump();
                Tok::LBrace
            }
            '}' => {
                cur.bump();
                Tok::RBrace
            }
            ':' => {
                cur.bump();
                if cur.peek() == Some('-') {
                    cur.bump();
                    Tok::If
                } else {
                    return Err(Error::Parse {
                        span: cur.span_from(start),
                        message: "expected `:-`".into(),
                    });
                }
            }
            '<' | '>' | '=' | '!' => {
                cur.bump();
                let eq_next = cur.peek() == Some('=');
                if eq_next {
                    cur.bump();
                }
                match (c, eq_next) {
                    ('<', false) => Tok::Cmp(Cmp::Lt, false),
                    ('<', true) => Tok::Cmp(Cmp::Le, false),
                    ('>', false) => Tok::Cmp(Cmp::Gt, false),
                    ('>', true) => Tok::Cmp(Cmp::Ge, false),
                    ('=', false) => Tok::Cmp(Cmp::Eq, true),
                    ('=', true) => Tok::Cmp(Cmp::Eq, false),
                    ('!', true) => Tok::Cmp(Cmp::Ne, false),
                    _ => {
                        return Err(Error::Parse {
                            span: cur.span_from(start),
                            message: "expected `!=`".into(),
                        })
                    }
                }
            }
            '-' if cur.peek2().is_some_and(|d| d.is_ascii_digit()) => {
                cur.bump();
                lex_int(&mut cur, start, true)?
            }
            d if d.is_ascii_digit() => lex_int(&mut cur, start, false)?,
            '#' if cur.src[cur.pos..].starts_with("#true")
                && !cur.src[cur.pos + 5..].starts_with(is_ident_char) =>
            {
                for _ in 0..5 {
                    cur.bump();
                }
                Tok::True
            }
            c if is_ident_start(c) => {
                let mut s = String::new();
                while let Some(c) = cur.peek().filter(|&c| is_ident_char(c)) {
                    s.push(c);
                    cur.bump();
                }
                Tok::Ident(s)
            }
            other => {
                cur.bump();
                return Err(Error::Parse {
                    span: cur.span_from(start),
                    message: format!("unexpected character `{other}`"),
                });
            }
        };
        out.push(Token {
            tok,
            span: cur.span_from(start),
        });
    }
    Ok(out)
}

fn lex_int(cur: &mut Cursor<'_>, start: (usize, usize, usize), negative: bool) -> Result<Tok> {
    let digits_from = cur.pos;
    while cur.peek().is_some_and(|c| c.is_ascii_digit()) {
        cur.bump();
    }
    let text = &cur.src[digits_from..cur.pos];
    let v: i64 = text.parse().map_err(|_| Error::Parse {
        span: cur.span_from(start),
        message: format!("integer `{text}` out of range"),
    })?;
    Ok(Tok::Int(if negative { -v } else { v }))
}
