//! Surface syntax for c-atom programs.
//!
//! ```text
//! program  := { rule "." } ;
//! rule     := head [ ":-" body ] | ":-" body ;
//! head     := "bot" | catom ;
//! body     := lit { "," lit } ;
//! lit      := [ "not" ] catom ;
//! catom    := ATOM | "(" set "," "{" [ set { "," set } ] "}" ")" | agg | "#true" ;
//! set      := "{" [ ATOM { "," ATOM } ] "}" ;
//! agg      := ("count" set | ("sum"|"avg"|"min"|"max") "{" wa { "," wa } "}") CMP INT
//!           | INT "{" celem { "," celem } "}" INT ;
//! wa       := ATOM "=" INT ;  celem := [ "not" ] ATOM ;
//! CMP      := "<=" | "<" | ">=" | ">" | "==" | "=" | "!=" ;
//! ```
//!
//! `%` starts a line comment. Atoms are identifiers optionally followed by a
//! parenthesised list of identifiers or integers (`p(1)`, `taken(s1,ai)`)
//! and are treated as opaque names.

mod aggregate;
mod lexer;

use std::collections::BTreeSet;
use std::sync::Arc;

pub use aggregate::{
    expand_aggregate, AggBound, AggElement, AggregateKind, AggregateSugar, Comparator,
};

use crate::error::{Error, Result, SourceSpan};
use crate::model::{AtomTable, CAtom, Interpretation, Program, Rule};
use lexer::{describe, Tok, Token};

#[derive(Debug)]
struct Name {
    text: String,
    span: SourceSpan,
}

#[derive(Debug)]
enum CAtomSyntax {
    Atom(Name),
    Explicit {
        domain: Vec<Name>,
        solutions: Vec<(Vec<Name>, SourceSpan)>,
        span: SourceSpan,
    },
    Aggregate(AggregateSugar, SourceSpan),
}

impl CAtomSyntax {
    fn span(&self) -> SourceSpan {
        match self {
            CAtomSyntax::Atom(n) => n.span,
            CAtomSyntax::Explicit { span, .. } | CAtomSyntax::Aggregate(_, span) => *span,
        }
    }

    fn names(&self) -> Vec<&str> {
        match self {
            CAtomSyntax::Atom(n) => vec![n.text.as_str()],
            CAtomSyntax::Explicit {
                domain, solutions, ..
            } => domain
                .iter()
                .chain(solutions.iter().flat_map(|(s, _)| s.iter()))
                .map(|n| n.text.as_str())
                .collect(),
            CAtomSyntax::Aggregate(s, _) => s.elements.iter().map(|e| e.atom.as_str()).collect(),
        }
    }
}

#[derive(Debug)]
struct RuleSyntax {
    /// `None` for ⊥.
    head: Option<CAtomSyntax>,
    pos: Vec<CAtomSyntax>,
    neg: Vec<CAtomSyntax>,
}

const AGGREGATES: [&str; 5] = ["count", "sum", "avg", "min", "max"];

struct Parser<'a> {
    src: &'a str,
    toks: Vec<Token>,
    pos: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn peek_at(&self, k: usize) -> Option<&Tok> {
        self.toks.get(self.pos + k).map(|t| &t.tok)
    }

    fn span_here(&self) -> SourceSpan {
        match self.toks.get(self.pos) {
            Some(t) => t.span,
            None => eof_span(self.src),
        }
    }

    fn prev_end(&self) -> usize {
        self.pos
            .checked_sub(1)
            .map(|i| self.toks[i].span.end)
            .unwrap_or(0)
    }

    fn error<T>(&self, expected: &str) -> Result<T> {
        Err(Error::Parse {
            span: self.span_here(),
            message: format!("expected {expected}, found {}", describe(self.peek())),
        })
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == Some(tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: &Tok, what: &str) -> Result<SourceSpan> {
        if self.peek() == Some(tok) {
            Ok(self.next().unwrap().span)
        } else {
            self.error(what)
        }
    }

    fn is_keyword(&self, kw: &str) -> bool {
        matches!(self.peek(), Some(Tok::Ident(s)) if s == kw)
    }

    fn join(&self, start: SourceSpan) -> SourceSpan {
        SourceSpan {
            end: self.prev_end().max(start.start),
            ..start
        }
    }

    fn program(&mut self) -> Result<Vec<RuleSyntax>> {
        let mut rules = Vec::new();
        while self.peek().is_some() {
            rules.push(self.rule()?);
            self.expect(&Tok::Dot, "`.` at the end of the rule")?;
        }
        Ok(rules)
    }

    fn rule(&mut self) -> Result<RuleSyntax> {
        let head = if self.peek() == Some(&Tok::If) {
            None
        } else if self.is_keyword("bot") {
            self.pos += 1;
            None
        } else {
            Some(self.catom()?)
        };
        let headless = head.is_none() && self.peek() == Some(&Tok::If);
        let mut pos = Vec::new();
        let mut neg = Vec::new();
        if self.eat(&Tok::If) {
            loop {
                if self.is_keyword("not") {
                    self.pos += 1;
                    neg.push(self.catom()?);
                } else {
                    pos.push(self.catom()?);
                }
                if !self.eat(&Tok::Comma) {
                    break;
                }
            }
        } else if headless {
            return self.error("a rule body");
        }
        Ok(RuleSyntax { head, pos, neg })
    }

    fn atom_name(&mut self) -> Result<Name> {
        let start = self.span_here();
        let mut text = match self.peek() {
            Some(Tok::Ident(s)) if s == "not" || s == "bot" => {
                return Err(Error::Parse {
                    span: start,
                    message: format!("`{s}` is a keyword and cannot name an atom"),
                })
            }
            Some(Tok::Ident(s)) => s.clone(),
            _ => return self.error("an atom"),
        };
        self.pos += 1;
        if self.eat(&Tok::LParen) {
            text.push('(');
            loop {
                match self.peek() {
                    Some(Tok::Ident(s)) => text.push_str(s),
                    Some(Tok::Int(i)) => text.push_str(&i.to_string()),
                    _ => return self.error("an identifier or integer argument"),
                }
                self.pos += 1;
                if self.eat(&Tok::Comma) {
                    text.push(',');
                    continue;
                }
                self.expect(&Tok::RParen, "`)` or `,` in atom arguments")?;
                text.push(')');
                break;
            }
        }
        Ok(Name {
            text,
            span: self.join(start),
        })
    }

    fn set(&mut self) -> Result<(Vec<Name>, SourceSpan)> {
        let start = self.expect(&Tok::LBrace, "`{`")?;
        let mut items = Vec::new();
        if !self.eat(&Tok::RBrace) {
            loop {
                items.push(self.atom_name()?);
                if self.eat(&Tok::Comma) {
                    continue;
                }
                self.expect(&Tok::RBrace, "`}` or `,`")?;
                break;
            }
        }
        Ok((items, self.join(start)))
    }

    fn catom(&mut self) -> Result<CAtomSyntax> {
        let start = self.span_here();
        match self.peek() {
            Some(Tok::LParen) => {
                self.pos += 1;
                let (domain, _) = self.set()?;
                self.expect(&Tok::Comma, "`,` after the c-atom domain")?;
                self.expect(&Tok::LBrace, "`{` opening the solution family")?;
                let mut solutions = Vec::new();
                if !self.eat(&Tok::RBrace) {
                    loop {
                        solutions.push(self.set()?);
                        if self.eat(&Tok::Comma) {
                            continue;
                        }
                        self.expect(&Tok::RBrace, "`}` or `,` in the solution family")?;
                        break;
                    }
                }
                self.expect(&Tok::RParen, "`)` closing the c-atom")?;
                Ok(CAtomSyntax::Explicit {
                    domain,
                    solutions,
                    span: self.join(start),
                })
            }
            Some(Tok::Int(_)) => self.choice(start),
            Some(Tok::True) => {
                self.pos += 1;
                let span = self.join(start);
                Ok(CAtomSyntax::Explicit {
                    domain: Vec::new(),
                    solutions: vec![(Vec::new(), span)],
                    span,
                })
            }
            Some(Tok::Ident(s))
                if AGGREGATES.contains(&s.as_str()) && self.peek_at(1) == Some(&Tok::LBrace) =>
            {
                self.aggregate(start)
            }
            Some(Tok::Ident(s)) if s == "bot" => {
                Err(semantic(start, "`bot` may only appear as a rule head"))
            }
            Some(Tok::Ident(_)) => Ok(CAtomSyntax::Atom(self.atom_name()?)),
            _ => self.error("a c-atom"),
        }
    }

    fn int(&mut self, what: &str) -> Result<i64> {
        match self.peek() {
            Some(Tok::Int(i)) => {
                let i = *i;
                self.pos += 1;
                Ok(i)
            }
            _ => self.error(what),
        }
    }

    fn choice(&mut self, start: SourceSpan) -> Result<CAtomSyntax> {
        let lo = self.int("a lower bound")?;
        self.expect(&Tok::LBrace, "`{` after the lower bound")?;
        let mut elements = Vec::new();
        loop {
            let negated = if self.is_keyword("not") {
                self.pos += 1;
                true
            } else {
                false
            };
            let n = self.atom_name()?;
            elements.push(AggElement {
                atom: n.text,
                weight: 1,
                negated,
            });
            if self.eat(&Tok::Comma) {
                continue;
            }
            self.expect(&Tok::RBrace, "`}` or `,` in the choice atom")?;
            break;
        }
        let hi = self.int("an upper bound")?;
        Ok(CAtomSyntax::Aggregate(
            AggregateSugar {
                kind: AggregateKind::Choice,
                elements,
                bound: AggBound::Range(lo, hi),
            },
            self.join(start),
        ))
    }

    fn aggregate(&mut self, start: SourceSpan) -> Result<CAtomSyntax> {
        let kind = match self.next().map(|t| t.tok) {
            Some(Tok::Ident(s)) => match s.as_str() {
                "count" => AggregateKind::Count,
                "sum" => AggregateKind::Sum,
                "avg" => AggregateKind::Avg,
                "min" => AggregateKind::Min,
                _ => AggregateKind::Max,
            },
            _ => unreachable!("checked by caller"),
        };
        let elements = if kind == AggregateKind::Count {
            self.set()?
                .0
                .into_iter()
                .map(|n| AggElement::plain(n.text))
                .collect()
        } else {
            self.expect(&Tok::LBrace, "`{`")?;
            let mut v = Vec::new();
            loop {
                let n = self.atom_name()?;
                match self.peek() {
                    Some(Tok::Cmp(Comparator::Eq, true)) => self.pos += 1,
                    _ => return self.error("`=` and a weight"),
                }
                let w = self.int("an integer weight")?;
                v.push(AggElement::weighted(n.text, w));
                if self.eat(&Tok::Comma) {
                    continue;
                }
                self.expect(&Tok::RBrace, "`}` or `,` in the aggregate")?;
                break;
            }
            v
        };
        let op = match self.peek() {
            Some(Tok::Cmp(c, _)) => {
                let c = *c;
                self.pos += 1;
                c
            }
            _ => return self.error("a comparator"),
        };
        let rhs = self.int("an integer bound")?;
        Ok(CAtomSyntax::Aggregate(
            AggregateSugar {
                kind,
                elements,
                bound: AggBound::Compare(op, rhs),
            },
            self.join(start),
        ))
    }
}

fn eof_span(src: &str) -> SourceSpan {
    let start = src.char_indices().last().map(|(i, _)| i).unwrap_or(0);
    let before = &src[..start];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    SourceSpan {
        line,
        column,
        start,
        end: src.len(),
    }
}

fn semantic(span: SourceSpan, message: impl Into<String>) -> Error {
    Error::Semantic {
        span,
        message: message.into(),
    }
}

fn resolve_catom(syn: &CAtomSyntax, atoms: &AtomTable) -> Result<CAtom> {
    let id = |n: &Name| atoms.lookup(&n.text).expect("universe contains every name");
    match syn {
        CAtomSyntax::Atom(n) => Ok(CAtom::elementary(id(n))),
        CAtomSyntax::Explicit {
            domain,
            solutions,
            span,
        } => {
            let mut d = Interpretation::new();
            for n in domain {
                if !d.insert(id(n)) {
                    return Err(semantic(
                        n.span,
                        format!("atom `{}` repeated in the domain", n.text),
                    ));
                }
            }
            let mut sols = BTreeSet::new();
            for (sol, sspan) in solutions {
                let mut s = Interpretation::new();
                for n in sol {
                    if !d.contains(id(n)) {
                        return Err(semantic(
                            n.span,
                            format!("atom `{}` of a solution is not in the domain", n.text),
                        ));
                    }
                    if !s.insert(id(n)) {
                        return Err(semantic(
                            n.span,
                            format!("atom `{}` repeated in a solution", n.text),
                        ));
                    }
                }
                if !sols.insert(s) {
                    return Err(semantic(*sspan, "solution listed twice"));
                }
            }
            CAtom::new(&d, sols).map_err(|e| semantic(*span, e.to_string()))
        }
        CAtomSyntax::Aggregate(s, span) => {
            expand_aggregate(s, atoms).map_err(|e| semantic(*span, e.to_string()))
        }
    }
}

fn resolve_list(list: &[CAtomSyntax], atoms: &AtomTable) -> Result<Vec<CAtom>> {
    let mut out: Vec<CAtom> = Vec::with_capacity(list.len());
    for syn in list {
        let a = resolve_catom(syn, atoms)?;
        if out.contains(&a) {
            return Err(semantic(syn.span(), "c-atom repeated in the rule body"));
        }
        out.push(a);
    }
    Ok(out)
}

/// Parses program text, expanding all sugar into explicit c-atoms.
///
/// The universe of the resulting program is the set of atom names occurring
/// anywhere in the text.
pub fn parse_program(text: &str) -> Result<Program> {
    let toks = lexer::tokenize(text)?;
    let mut p = Parser {
        src: text,
        toks,
        pos: 0,
    };
    let rules = p.program()?;

    let names = rules.iter().flat_map(|r| {
        r.head
            .iter()
            .chain(&r.pos)
            .chain(&r.neg)
            .flat_map(|c| c.names())
    });
    let atoms = Arc::new(AtomTable::new(names));

    let mut out = Vec::with_capacity(rules.len());
    for r in &rules {
        let head = match &r.head {
            Some(h) => resolve_catom(h, &atoms)?,
            None => CAtom::bottom(),
        };
        let pos = resolve_list(&r.pos, &atoms)?;
        let neg = resolve_list(&r.neg, &atoms)?;
        out.push(Rule::new(head, pos, neg));
    }
    Program::new(atoms, out)
}

/// Canonical text of a rule, without the terminating `.`.
pub fn render_rule(r: &Rule, atoms: &AtomTable) -> String {
    let body: Vec<String> = r
        .pos()
        .iter()
        .map(|a| a.render(atoms))
        .chain(r.neg().iter().map(|a| format!("not {}", a.render(atoms))))
        .collect();
    match (r.is_constraint(), body.is_empty()) {
        (true, true) => "bot".to_string(),
        (true, false) => format!(":- {}", body.join(", ")),
        (false, true) => r.head().render(atoms),
        (false, false) => format!("{} :- {}", r.head().render(atoms), body.join(", ")),
    }
}

/// Canonical text: one rule per line, sugar emitted in explicit form.
pub fn render(p: &Program) -> String {
    p.rules()
        .iter()
        .map(|r| format!("{}.", render_rule(r, p.atoms())))
        .collect::<Vec<_>>()
        .join("\n")
}
