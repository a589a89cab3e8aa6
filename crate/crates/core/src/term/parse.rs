//! Recursive-descent reader for the term grammar.
//!
//! ```text
//! term := "box" | "succ(" term ")" | "sup(" arm {"," arm} ")"
//!       | "wsum(" seq ")" | "supseq(" seq ")" | "ex1" | ... | "ex4"
//! arm  := term ["*" (nat | "w")]
//! seq  := "[" [term {"," term}] "]" ( "(" term {"," term} ")" | gen ) | gen
//! gen  := "gen(" term ";" ctx ")"
//! ```
//! A context is a term with exactly one `_`.

use super::{ComponentSeq, Context, Mult, Term};
use crate::error::{Error, Result};

pub const BUILTIN_NAMES: [(&str, &str); 4] = [
    ("ex1", "wsum(gen(box; succ(sup(_*2))))"),
    ("ex2", "wsum(gen(box; sup(succ(_)*w)))"),
    ("ex3", "wsum(gen(wsum([](box)); succ(sup(succ(_)*2))))"),
    ("ex4", "wsum(gen(sup(succ(box)*3); succ(sup(_*2))))"),
];

pub fn parse_term(text: &str) -> Result<Term> {
    let mut p = Parser::new(text);
    let node = p.node()?;
    p.finish()?;
    to_term(&node)
}

pub fn parse_context(text: &str) -> Result<Context> {
    let mut p = Parser::new(text);
    let node = p.node()?;
    p.finish()?;
    let holes = node.holes();
    if holes != 1 {
        return Err(Error::Syntax {
            pos: 0,
            msg: format!("a context needs exactly one '_', found {holes}"),
        });
    }
    to_context(&node)
}

enum Node {
    Hole(usize),
    Box,
    Term(Term),
    Succ(Box<Node>),
    Sup(Vec<(Node, Mult)>),
    WSum(usize, Seq),
    SupSeq(usize, Seq),
}

enum Seq {
    Periodic {
        prefix: Vec<Node>,
        cycle: Vec<Node>,
    },
    Generated {
        prefix: Vec<Node>,
        base: Box<Node>,
        ctx: Box<Node>,
        ctx_pos: usize,
    },
}

impl Node {
    fn holes(&self) -> usize {
        match self {
            Node::Hole(_) => 1,
            Node::Box | Node::Term(_) => 0,
            Node::Succ(c) => c.holes(),
            Node::Sup(arms) => arms.iter().map(|(a, _)| a.holes()).sum(),
            Node::WSum(_, s) | Node::SupSeq(_, s) => match s {
                Seq::Periodic { prefix, cycle } => prefix.iter().chain(cycle).map(Node::holes).sum(),
                Seq::Generated { prefix, base, .. } => {
                    prefix.iter().map(Node::holes).sum::<usize>() + base.holes()
                }
            },
        }
    }

    fn first_hole(&self) -> Option<usize> {
        match self {
            Node::Hole(p) => Some(*p),
            Node::Box | Node::Term(_) => None,
            Node::Succ(c) => c.first_hole(),
            Node::Sup(arms) => arms.iter().find_map(|(a, _)| a.first_hole()),
            Node::WSum(_, s) | Node::SupSeq(_, s) => match s {
                Seq::Periodic { prefix, cycle } => prefix.iter().chain(cycle).find_map(Node::first_hole),
                Seq::Generated { prefix, base, .. } => prefix
                    .iter()
                    .find_map(Node::first_hole)
                    .or_else(|| base.first_hole()),
            },
        }
    }
}

fn to_term(node: &Node) -> Result<Term> {
    Ok(match node {
        Node::Hole(pos) => {
            return Err(Error::Syntax {
                pos: *pos,
                msg: "'_' is only allowed inside gen(...; context)".into(),
            })
        }
        Node::Box => Term::Box,
        Node::Term(t) => t.clone(),
        Node::Succ(c) => Term::succ(to_term(c)?),
        Node::Sup(arms) => {
            let arms = arms
                .iter()
                .map(|(a, m)| Ok((to_term(a)?, *m)))
                .collect::<Result<Vec<_>>>()?;
            Term::sup(arms)?
        }
        Node::WSum(_, s) => Term::wsum(to_seq(s)?),
        Node::SupSeq(pos, s) => {
            let seq = to_seq(s)?;
            Term::supseq(seq).map_err(|_| Error::Syntax {
                pos: *pos,
                msg: "supseq takes a gen(...) sequence".into(),
            })?
        }
    })
}

fn to_seq(s: &Seq) -> Result<ComponentSeq> {
    match s {
        Seq::Periodic { prefix, cycle } => ComponentSeq::periodic(
            prefix.iter().map(to_term).collect::<Result<_>>()?,
            cycle.iter().map(to_term).collect::<Result<_>>()?,
        ),
        Seq::Generated {
            prefix,
            base,
            ctx,
            ctx_pos,
        } => {
            let holes = ctx.holes();
            if holes != 1 {
                return Err(Error::Syntax {
                    pos: *ctx_pos,
                    msg: format!("a context needs exactly one '_', found {holes}"),
                });
            }
            Ok(ComponentSeq::generated(
                prefix.iter().map(to_term).collect::<Result<_>>()?,
                to_term(base)?,
                to_context(ctx)?,
            ))
        }
    }
}

fn to_context(node: &Node) -> Result<Context> {
    if node.holes() == 0 {
        return Ok(Context::Closed(to_term(node)?));
    }
    Ok(match node {
        Node::Hole(_) => Context::Hole,
        Node::Succ(c) => Context::Succ(Box::new(to_context(c)?)),
        Node::Sup(arms) => {
            if arms.iter().any(|(_, m)| *m == Mult::Finite(0)) {
                return Err(Error::Precondition("multiplicity 0".into()));
            }
            Context::Sup(
                arms.iter()
                    .map(|(a, m)| Ok((to_context(a)?, *m)))
                    .collect::<Result<_>>()?,
            )
        }
        Node::WSum(_, Seq::Periodic { prefix, cycle }) => Context::WSum {
            prefix: prefix.iter().map(to_context).collect::<Result<_>>()?,
            cycle: cycle.iter().map(to_context).collect::<Result<_>>()?,
        },
        Node::WSum(pos, _) | Node::SupSeq(pos, _) => {
            return Err(Error::Syntax {
                pos: node.first_hole().unwrap_or(*pos),
                msg: "the hole may not sit inside a generated sequence or supseq".into(),
            })
        }
        Node::Box | Node::Term(_) => unreachable!("hole-free nodes handled above"),
    })
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Parser {
            src: text.as_bytes(),
            pos: 0,
        }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected '{}'", c as char))
        }
    }

    fn finish(&mut self) -> Result<()> {
        if self.peek().is_some() {
            return self.err("trailing input");
        }
        Ok(())
    }

    fn ident(&mut self) -> String {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphanumeric() {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn nat(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected a number or 'w'");
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .expect("ascii digits")
            .parse()
            .or_else(|_| {
                self.pos = start;
                self.err("number out of range")
            })
    }

    fn node(&mut self) -> Result<Node> {
        self.skip_ws();
        let start = self.pos;
        if self.eat(b'_') {
            return Ok(Node::Hole(start));
        }
        let word = self.ident();
        match word.as_str() {
            "box" => Ok(Node::Box),
            "succ" => {
                self.expect(b'(')?;
                let c = self.node()?;
                self.expect(b')')?;
                Ok(Node::Succ(Box::new(c)))
            }
            "sup" => {
                self.expect(b'(')?;
                let mut arms = vec![self.arm()?];
                while self.eat(b',') {
                    arms.push(self.arm()?);
                }
                self.expect(b')')?;
                Ok(Node::Sup(arms))
            }
            "wsum" => {
                self.expect(b'(')?;
                let s = self.seq()?;
                self.expect(b')')?;
                Ok(Node::WSum(start, s))
            }
            "supseq" => {
                self.expect(b'(')?;
                let s = self.seq()?;
                if matches!(s, Seq::Periodic { .. }) {
                    self.pos = start;
                    return self.err("supseq takes a gen(...) sequence");
                }
                self.expect(b')')?;
                Ok(Node::SupSeq(start, s))
            }
            name => {
                if let Some((_, text)) = BUILTIN_NAMES.iter().find(|(n, _)| *n == name) {
                    return Ok(Node::Term(parse_term(text)?));
                }
                self.pos = start;
                if name.is_empty() {
                    self.err("expected a term")
                } else {
                    self.err(format!("unknown name '{name}'"))
                }
            }
        }
    }

    fn arm(&mut self) -> Result<(Node, Mult)> {
        let n = self.node()?;
        if !self.eat(b'*') {
            return Ok((n, Mult::ONE));
        }
        if self.peek() == Some(b'w') {
            self.pos += 1;
            return Ok((n, Mult::Omega));
        }
        let at = self.pos;
        let k = self.nat()?;
        if k == 0 {
            self.pos = at;
            return self.err("multiplicity 0");
        }
        Ok((n, Mult::Finite(k)))
    }

    fn list_until(&mut self, close: u8) -> Result<Vec<Node>> {
        let mut out = Vec::new();
        if self.eat(close) {
            return Ok(out);
        }
        loop {
            out.push(self.node()?);
            if self.eat(close) {
                return Ok(out);
            }
            self.expect(b',')?;
        }
    }

    fn seq(&mut self) -> Result<Seq> {
        let mut prefix = Vec::new();
        if self.eat(b'[') {
            prefix = self.list_until(b']')?;
            if self.eat(b'(') {
                let at = self.pos;
                let cycle = self.list_until(b')')?;
                if cycle.is_empty() {
                    self.pos = at;
                    return self.err("empty cycle");
                }
                return Ok(Seq::Periodic { prefix, cycle });
            }
        }
        let at = self.pos;
        if self.ident() != "gen" {
            self.pos = at;
            return self.err("expected '(' cycle or gen(...)");
        }
        self.expect(b'(')?;
        let base = self.node()?;
        self.expect(b';')?;
        self.skip_ws();
        let ctx_pos = self.pos;
        let ctx = self.node()?;
        self.expect(b')')?;
        Ok(Seq::Generated {
            prefix,
            base: Box::new(base),
            ctx: Box::new(ctx),
            ctx_pos,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_terms() {
        assert_eq!(parse_term("box").unwrap(), Term::Box);
        assert_eq!(parse_term(" wsum( [ ] ( box ) ) ").unwrap(), Term::ray());
        assert_eq!(parse_term("succ(succ(box))").unwrap(), Term::chain(2));
    }

    #[test]
    fn round_trips() {
        for text in [
            "sup(box*w,succ(box)*3,box)",
            "wsum([succ(box)](box,sup(box*2)))",
            "wsum(gen(box; succ(sup(_*2))))",
            "wsum([box,box]gen(box; succ(sup(_*2))))",
            "supseq(gen(box; wsum([](_))))",
            "wsum(gen(box; sup(wsum([box](_,box)),succ(box)*w)))",
        ] {
            let t = parse_term(text).unwrap();
            assert_eq!(t.to_string(), text);
            assert_eq!(parse_term(&t.to_string()).unwrap(), t);
        }
    }

    #[test]
    fn builtins_expand() {
        for (name, text) in BUILTIN_NAMES {
            assert_eq!(parse_term(name).unwrap(), parse_term(text).unwrap());
        }
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_term("sup(box*0)").unwrap_err();
        assert!(matches!(e, Error::Syntax { pos: 8, .. }), "{e:?}");
        assert!(matches!(parse_term("wsum([]())"), Err(Error::Syntax { .. })));
        assert!(matches!(
            parse_term("succ(box"),
            Err(Error::Syntax { pos: 8, .. })
        ));
        assert!(matches!(parse_term("boxx"), Err(Error::Syntax { pos: 0, .. })));
        assert!(parse_term("wsum(gen(box; succ(box)))").is_err());
        assert!(parse_term("wsum(gen(box; sup(_,_)))").is_err());
        assert!(parse_term("succ(_)").is_err());
        assert!(parse_term("supseq([](box))").is_err());
        assert!(parse_term("wsum(gen(box; wsum(gen(box; _))))").is_err());
    }

    #[test]
    fn contexts() {
        let c = parse_context("succ(sup(_*2))").unwrap();
        assert_eq!(c.substitute(&Term::Box).size(), Some(2));
        assert!(parse_context("box").is_err());
    }
}
