//! Parser for the query subset, used by the round-trip tests and the
//! golden-file comparisons. Reports byte offsets on syntax errors and
//! names any SPARQL feature outside the subset.

use crate::kb::{Iri, Term};

use super::ast::*;
use super::SparqlError;

const UNSUPPORTED: &[&str] = &[
    "OPTIONAL", "UNION", "ORDER", "GROUP", "LIMIT", "OFFSET", "ASK", "CONSTRUCT", "DESCRIBE",
    "BIND", "VALUES", "MINUS", "SERVICE", "GRAPH", "HAVING", "DISTINCT",
];

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Word(String),
    Var(String),
    Prefixed(String, String),
    IriRef(String),
    Str(String),
    Num(String),
    LBrace,
    RBrace,
    LParen,
    RParen,
    Comma,
    Dot,
}

struct Lexer<'a> {
    text: &'a str,
    pos: usize,
    tokens: Vec<(Tok, usize)>,
}

impl<'a> Lexer<'a> {
    fn run(text: &'a str) -> Result<Vec<(Tok, usize)>, SparqlError> {
        let mut lx = Lexer {
            text,
            pos: 0,
            tokens: Vec::new(),
        };
        lx.lex()?;
        Ok(lx.tokens)
    }

    fn rest(&self) -> &str {
        &self.text[self.pos..]
    }

    fn lex(&mut self) -> Result<(), SparqlError> {
        while self.pos < self.text.len() {
            let rest = self.rest();
            let c = rest.chars().next().unwrap();
            let start = self.pos;
            if c.is_whitespace() {
                self.pos += c.len_utf8();
                continue;
            }
            match c {
                '{' => self.push(Tok::LBrace, start, 1),
                '}' => self.push(Tok::RBrace, start, 1),
                '(' => self.push(Tok::LParen, start, 1),
                ')' => self.push(Tok::RParen, start, 1),
                ',' => self.push(Tok::Comma, start, 1),
                '.' => self.push(Tok::Dot, start, 1),
                '?' => {
                    let name: String = rest[1..]
                        .chars()
                        .take_while(|c| c.is_alphanumeric() || *c == '_')
                        .collect();
                    if name.is_empty() {
                        return Err(SparqlError::Parse {
                            offset: start,
                            message: "`?` must be followed by a variable name".into(),
                        });
                    }
                    let len = 1 + name.len();
                    self.push(Tok::Var(name), start, len);
                }
                '"' => {
                    let inner: String = rest[1..].chars().take_while(|c| *c != '"').collect();
                    if rest[1..].len() == inner.len() {
                        return Err(SparqlError::Parse {
                            offset: start,
                            message: "unterminated string literal".into(),
                        });
                    }
                    let len = inner.len() + 2;
                    self.push(Tok::Str(inner), start, len);
                }
                '<' => {
                    let inner: String = rest[1..].chars().take_while(|c| *c != '>').collect();
                    if rest[1..].len() == inner.len() {
                        return Err(SparqlError::Parse {
                            offset: start,
                            message: "unterminated IRI reference".into(),
                        });
                    }
                    let len = inner.len() + 2;
                    self.push(Tok::IriRef(inner), start, len);
                }
                c if c.is_ascii_digit() || c == '-' => {
                    let num: String = rest
                        .chars()
                        .take_while(|c| c.is_ascii_digit() || *c == '-' || *c == '.')
                        .collect();
                    // a bare `.` separator must not be eaten as part of a number
                    let num = num.trim_end_matches('.').to_string();
                    let len = num.len();
                    self.push(Tok::Num(num), start, len);
                }
                c if c.is_alphanumeric() || c == '_' => {
                    let word: String = rest
                        .chars()
                        .take_while(|c| c.is_alphanumeric() || *c == '_')
                        .collect();
                    let after = &rest[word.len()..];
                    if let Some(local_part) = after.strip_prefix(':') {
                        let local: String = local_part
                            .chars()
                            .take_while(|c| c.is_alphanumeric() || *c == '_')
                            .collect();
                        if local.is_empty() {
                            let len = word.len() + 1;
                            self.push(Tok::Word(word), start, len);
                        } else {
                            let len = word.len() + 1 + local.len();
                            self.push(Tok::Prefixed(word, local), start, len);
                        }
                    } else {
                        let len = word.len();
                        self.push(Tok::Word(word), start, len);
                    }
                }
                other => {
                    return Err(SparqlError::Parse {
                        offset: start,
                        message: format!("unexpected character `{other}`"),
                    });
                }
            }
        }
        Ok(())
    }

    fn push(&mut self, tok: Tok, start: usize, len: usize) {
        self.tokens.push((tok, start));
        self.pos = start + len;
    }
}

struct Parser {
    tokens: Vec<(Tok, usize)>,
    idx: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.idx).map(|(t, _)| t)
    }

    fn offset(&self) -> usize {
        self.tokens
            .get(self.idx)
            .map(|(_, o)| *o)
            .unwrap_or_else(|| self.tokens.last().map(|(_, o)| *o + 1).unwrap_or(0))
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.tokens.get(self.idx).map(|(t, _)| t.clone());
        self.idx += 1;
        t
    }

    fn err(&self, message: impl Into<String>) -> SparqlError {
        SparqlError::Parse {
            offset: self.offset(),
            message: message.into(),
        }
    }

    fn expect(&mut self, tok: Tok) -> Result<(), SparqlError> {
        match self.next() {
            Some(t) if t == tok => Ok(()),
            other => Err(SparqlError::Parse {
                offset: self.tokens.get(self.idx - 1).map(|(_, o)| *o).unwrap_or(0),
                message: format!("expected {tok:?}, found {other:?}"),
            }),
        }
    }

    fn expect_word(&mut self, kw: &str) -> Result<(), SparqlError> {
        match self.next() {
            Some(Tok::Word(w)) if w.eq_ignore_ascii_case(kw) => Ok(()),
            other => Err(SparqlError::Parse {
                offset: self.tokens.get(self.idx - 1).map(|(_, o)| *o).unwrap_or(0),
                message: format!("expected `{kw}`, found {other:?}"),
            }),
        }
    }

    fn check_supported(&self, word: &str, offset: usize) -> Result<(), SparqlError> {
        let upper = word.to_ascii_uppercase();
        if UNSUPPORTED.contains(&upper.as_str()) {
            return Err(SparqlError::Unsupported {
                feature: upper,
                offset,
            });
        }
        Ok(())
    }

    fn parse_query(&mut self) -> Result<SelectQuery, SparqlError> {
        // PREFIX headers are validated and skipped; the AST keeps
        // prefixed names symbolic.
        while matches!(self.peek(), Some(Tok::Word(w)) if w.eq_ignore_ascii_case("PREFIX")) {
            self.next();
            match self.next() {
                Some(Tok::Word(_)) => {}
                Some(Tok::Prefixed(_, _)) => {}
                _ => return Err(self.err("expected prefix name after PREFIX")),
            }
            // the lexer may fold `name:` + `<iri>`; accept both shapes
            match self.next() {
                Some(Tok::IriRef(_)) => {}
                _ => return Err(self.err("expected <iri> in PREFIX declaration")),
            }
        }
        let q = self.parse_select()?;
        if self.peek().is_some() {
            return Err(self.err("trailing tokens after query"));
        }
        q.validate()?;
        Ok(q)
    }

    fn parse_select(&mut self) -> Result<SelectQuery, SparqlError> {
        let offset = self.offset();
        match self.next() {
            Some(Tok::Word(w)) if w.eq_ignore_ascii_case("SELECT") => {}
            Some(Tok::Word(w)) => {
                self.check_supported(&w, offset)?;
                return Err(SparqlError::Parse {
                    offset,
                    message: format!("expected SELECT, found `{w}`"),
                });
            }
            other => {
                return Err(SparqlError::Parse {
                    offset,
                    message: format!("expected SELECT, found {other:?}"),
                })
            }
        }
        let projection = self.parse_projection()?;
        self.expect_word("WHERE")?;
        self.expect(Tok::LBrace)?;
        let group = self.parse_group()?;
        Ok(SelectQuery { projection, group })
    }

    fn parse_projection(&mut self) -> Result<Projection, SparqlError> {
        match self.peek() {
            Some(Tok::LParen) => {
                self.next();
                let offset = self.offset();
                let func = match self.next() {
                    Some(Tok::Word(w)) => {
                        self.check_supported(&w, offset)?;
                        AggFn::from_name(&w).ok_or(SparqlError::Parse {
                            offset,
                            message: format!("unknown aggregate `{w}`"),
                        })?
                    }
                    other => {
                        return Err(SparqlError::Parse {
                            offset,
                            message: format!("expected aggregate name, found {other:?}"),
                        })
                    }
                };
                self.expect(Tok::LParen)?;
                let input = self.parse_var()?;
                self.expect(Tok::RParen)?;
                self.expect_word("AS")?;
                let alias = self.parse_var()?;
                self.expect(Tok::RParen)?;
                Ok(Projection::Aggregate(Aggregate { func, input, alias }))
            }
            _ => {
                let mut vars = Vec::new();
                while let Some(Tok::Var(_)) = self.peek() {
                    vars.push(self.parse_var()?);
                }
                if vars.is_empty() {
                    return Err(self.err("expected projection variables or an aggregate"));
                }
                Ok(Projection::Vars(vars))
            }
        }
    }

    fn parse_var(&mut self) -> Result<Var, SparqlError> {
        match self.next() {
            Some(Tok::Var(name)) => Ok(Var(name)),
            other => Err(SparqlError::Parse {
                offset: self.tokens.get(self.idx - 1).map(|(_, o)| *o).unwrap_or(0),
                message: format!("expected a variable, found {other:?}"),
            }),
        }
    }

    fn parse_group(&mut self) -> Result<Vec<GroupItem>, SparqlError> {
        let mut items = Vec::new();
        loop {
            match self.peek() {
                None => return Err(self.err("unclosed group")),
                Some(Tok::RBrace) => {
                    self.next();
                    if items.is_empty() {
                        return Err(SparqlError::Invalid("empty group".into()));
                    }
                    return Ok(items);
                }
                Some(Tok::LBrace) => {
                    self.next();
                    let sub = self.parse_select()?;
                    self.expect(Tok::RBrace)?;
                    items.push(GroupItem::SubQuery(sub));
                }
                Some(Tok::Word(w)) if w.eq_ignore_ascii_case("FILTER") => {
                    self.next();
                    items.push(GroupItem::Filter(self.parse_filter()?));
                }
                Some(Tok::Word(w)) => {
                    let w = w.clone();
                    self.check_supported(&w, self.offset())?;
                    return Err(self.err(format!("unexpected word `{w}` in group")));
                }
                _ => {
                    items.push(GroupItem::Pattern(self.parse_pattern()?));
                }
            }
        }
    }

    fn parse_filter(&mut self) -> Result<RegexFilter, SparqlError> {
        self.expect(Tok::LParen)?;
        self.expect_word("regex")?;
        self.expect(Tok::LParen)?;
        self.expect_word("str")?;
        self.expect(Tok::LParen)?;
        let var = self.parse_var()?;
        self.expect(Tok::RParen)?;
        self.expect(Tok::Comma)?;
        let pattern = match self.next() {
            Some(Tok::Str(s)) => s,
            other => {
                return Err(SparqlError::Parse {
                    offset: self.tokens.get(self.idx - 1).map(|(_, o)| *o).unwrap_or(0),
                    message: format!("expected pattern string, found {other:?}"),
                })
            }
        };
        let flags = if matches!(self.peek(), Some(Tok::Comma)) {
            self.next();
            match self.next() {
                Some(Tok::Str(s)) => s,
                other => {
                    return Err(SparqlError::Parse {
                        offset: self.tokens.get(self.idx - 1).map(|(_, o)| *o).unwrap_or(0),
                        message: format!("expected flag string, found {other:?}"),
                    })
                }
            }
        } else {
            String::new()
        };
        if !matches!(flags.as_str(), "" | "i") {
            return Err(SparqlError::Invalid(format!(
                "unsupported regex flags `{flags}`"
            )));
        }
        self.expect(Tok::RParen)?;
        self.expect(Tok::RParen)?;
        Ok(RegexFilter { var, pattern, flags })
    }

    fn parse_pattern(&mut self) -> Result<TriplePattern, SparqlError> {
        let subject = self.parse_node()?;
        let offset = self.offset();
        let predicate = match self.next() {
            Some(Tok::Prefixed(p, l)) => Iri::new(&p, &l),
            other => {
                return Err(SparqlError::Parse {
                    offset,
                    message: format!("expected a prefixed predicate, found {other:?}"),
                })
            }
        };
        let object = self.parse_node()?;
        if matches!(self.peek(), Some(Tok::Dot)) {
            self.next();
        }
        Ok(TriplePattern::new(subject, predicate, object))
    }

    fn parse_node(&mut self) -> Result<PatternNode, SparqlError> {
        let offset = self.offset();
        match self.next() {
            Some(Tok::Var(name)) => Ok(PatternNode::Var(Var(name))),
            Some(Tok::Prefixed(p, l)) => Ok(PatternNode::iri(Iri::new(&p, &l))),
            Some(Tok::Str(s)) => Ok(PatternNode::Term(Term::Str(s))),
            Some(Tok::Num(n)) => {
                let term = if n.contains('.') {
                    Term::Dec(n.parse().map_err(|_| SparqlError::Parse {
                        offset,
                        message: format!("bad decimal `{n}`"),
                    })?)
                } else {
                    Term::Int(n.parse().map_err(|_| SparqlError::Parse {
                        offset,
                        message: format!("bad integer `{n}`"),
                    })?)
                };
                Ok(PatternNode::Term(term))
            }
            Some(Tok::Word(w)) => {
                self.check_supported(&w, offset)?;
                Err(SparqlError::Parse {
                    offset,
                    message: format!("expected a term, found `{w}`"),
                })
            }
            other => Err(SparqlError::Parse {
                offset,
                message: format!("expected a term, found {other:?}"),
            }),
        }
    }
}

pub fn parse(text: &str) -> Result<SelectQuery, SparqlError> {
    let tokens = Lexer::run(text)?;
    let mut parser = Parser { tokens, idx: 0 };
    parser.parse_query()
}
