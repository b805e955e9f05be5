//! Recursive-descent parser for declaration files.
//!
//! Statements are keyword-introduced, so newlines carry no meaning and a
//! declaration ends where the next `ob`/`hom`/`term` (or the end of input)
//! begins. Terms are typechecked as they are declared; a term body may
//! mention earlier terms, which are inlined immediately.

use super::lexer::{tokenize, Token, TokenKind};
use super::{typecheck, Expression, FrontendError, Signature};
use crate::diagram::PortType;

pub fn parse(source: &str) -> Result<(Signature, Vec<(String, Expression)>), FrontendError> {
    let mut p = Parser {
        tokens: tokenize(source)?,
        pos: 0,
        sig: Signature::new(),
        terms: Vec::new(),
    };
    p.file()?;
    Ok((p.sig, p.terms))
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    sig: Signature,
    terms: Vec<(String, Expression)>,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn bump(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn err(&self, tok: &Token, msg: impl Into<String>) -> FrontendError {
        FrontendError::SyntaxError {
            line: tok.line,
            col: tok.col,
            msg: msg.into(),
        }
    }

    fn expect(&mut self, kind: &TokenKind) -> Result<Token, FrontendError> {
        if &self.peek().kind == kind {
            Ok(self.bump())
        } else {
            let found = self.peek().clone();
            Err(self.err(&found, format!("expected {kind}, found {}", found.kind)))
        }
    }

    fn expect_ident(&mut self, what: &str) -> Result<(String, Token), FrontendError> {
        let tok = self.peek().clone();
        if let TokenKind::Ident(name) = &tok.kind {
            let name = name.clone();
            self.bump();
            Ok((name, tok))
        } else {
            Err(self.err(&tok, format!("expected {what}, found {}", tok.kind)))
        }
    }

    fn file(&mut self) -> Result<(), FrontendError> {
        loop {
            match self.peek().kind {
                TokenKind::Eof => return Ok(()),
                TokenKind::KwOb => self.ob_decl()?,
                TokenKind::KwHom => self.hom_decl()?,
                TokenKind::KwTerm => self.term_decl()?,
                _ => {
                    let tok = self.peek().clone();
                    return Err(self.err(
                        &tok,
                        format!("expected `ob`, `hom`, or `term`, found {}", tok.kind),
                    ));
                }
            }
        }
    }

    fn ob_decl(&mut self) -> Result<(), FrontendError> {
        self.bump();
        let (first, _) = self.expect_ident("an object name")?;
        self.sig.declare_object(PortType::new(first));
        while let TokenKind::Ident(name) = &self.peek().kind {
            let t = PortType::new(name.clone());
            self.bump();
            self.sig.declare_object(t);
        }
        Ok(())
    }

    fn check_fresh(&self, name: &str, tok: &Token) -> Result<(), FrontendError> {
        let taken =
            self.sig.generator(name).is_some() || self.terms.iter().any(|(n, _)| n == name);
        if taken {
            Err(self.err(tok, format!("`{name}` is already defined")))
        } else {
            Ok(())
        }
    }

    fn hom_decl(&mut self) -> Result<(), FrontendError> {
        self.bump();
        let (name, tok) = self.expect_ident("a generator name")?;
        self.check_fresh(&name, &tok)?;
        self.expect(&TokenKind::Colon)?;
        let dom = self.type_list()?;
        self.expect(&TokenKind::Arrow)?;
        let cod = self.type_list()?;
        self.sig.declare_generator(&name, dom, cod)?;
        Ok(())
    }

    fn term_decl(&mut self) -> Result<(), FrontendError> {
        self.bump();
        let (name, tok) = self.expect_ident("a term name")?;
        self.check_fresh(&name, &tok)?;
        self.expect(&TokenKind::Equals)?;
        let e = self.expr()?;
        typecheck(&e, &self.sig)?;
        self.terms.push((name, e));
        Ok(())
    }

    fn expr(&mut self) -> Result<Expression, FrontendError> {
        let mut e = self.tensor()?;
        while self.peek().kind == TokenKind::Semi {
            self.bump();
            e = Expression::Seq(Box::new(e), Box::new(self.tensor()?));
        }
        Ok(e)
    }

    fn tensor(&mut self) -> Result<Expression, FrontendError> {
        let mut e = self.atom()?;
        while self.peek().kind == TokenKind::Star {
            self.bump();
            e = Expression::Tensor(Box::new(e), Box::new(self.atom()?));
        }
        Ok(e)
    }

    fn atom(&mut self) -> Result<Expression, FrontendError> {
        let tok = self.peek().clone();
        match &tok.kind {
            TokenKind::KwUnit => {
                self.bump();
                Ok(Expression::Unit)
            }
            TokenKind::Ident(name) => {
                let name = name.clone();
                self.bump();
                if self.sig.generator(&name).is_some() {
                    return Ok(Expression::Gen(name));
                }
                if let Some((_, e)) = self.terms.iter().find(|(n, _)| *n == name) {
                    return Ok(e.clone());
                }
                Err(FrontendError::UnknownSymbol { name })
            }
            TokenKind::KwId => {
                self.bump();
                self.expect(&TokenKind::LBracket)?;
                let ts = self.type_list()?;
                self.expect(&TokenKind::RBracket)?;
                Ok(Expression::Id(ts))
            }
            TokenKind::KwBraid => {
                self.bump();
                self.expect(&TokenKind::LBracket)?;
                let a = self.type_list()?;
                self.expect(&TokenKind::Pipe)?;
                let b = self.type_list()?;
                self.expect(&TokenKind::RBracket)?;
                Ok(Expression::Braid(a, b))
            }
            TokenKind::KwPerm => {
                self.bump();
                self.expect(&TokenKind::LBracket)?;
                let ts = self.type_list()?;
                self.expect(&TokenKind::Pipe)?;
                let sigma = self.cycles(ts.len())?;
                self.expect(&TokenKind::RBracket)?;
                Ok(Expression::Perm(ts, sigma))
            }
            TokenKind::LParen => {
                self.bump();
                let e = self.expr()?;
                self.expect(&TokenKind::RParen)?;
                Ok(e)
            }
            _ => Err(self.err(&tok, format!("expected an expression, found {}", tok.kind))),
        }
    }

    /// `I` alone is the empty list; otherwise objects joined by `*`.
    fn type_list(&mut self) -> Result<Vec<PortType>, FrontendError> {
        if self.peek().kind == TokenKind::KwUnit {
            self.bump();
            return Ok(vec![]);
        }
        let mut ts = vec![self.object()?];
        while self.peek().kind == TokenKind::Star {
            self.bump();
            ts.push(self.object()?);
        }
        Ok(ts)
    }

    fn object(&mut self) -> Result<PortType, FrontendError> {
        let (name, _) = self.expect_ident("an object")?;
        if !self.sig.has_object(&PortType::new(name.clone())) {
            return Err(FrontendError::UnknownSymbol { name });
        }
        Ok(PortType::new(name))
    }

    /// One-line cycle notation over 1..=n. Entries not mentioned are fixed
    /// points; within a cycle each entry maps to the next, wrapping around.
    fn cycles(&mut self, n: usize) -> Result<Vec<usize>, FrontendError> {
        let mut sigma: Vec<usize> = (1..=n).collect();
        let mut seen = vec![false; n];
        let opener = self.peek().clone();
        if opener.kind != TokenKind::LParen {
            return Err(self.err(&opener, "expected a cycle like (1 2)"));
        }
        while self.peek().kind == TokenKind::LParen {
            self.bump();
            let mut entries = Vec::new();
            loop {
                let tok = self.peek().clone();
                match tok.kind {
                    TokenKind::Number(k) => {
                        self.bump();
                        if k == 0 || k > n {
                            return Err(self.err(
                                &tok,
                                format!("cycle entry {k} is outside 1..={n}"),
                            ));
                        }
                        if std::mem::replace(&mut seen[k - 1], true) {
                            return Err(
                                self.err(&tok, format!("cycle entry {k} appears twice"))
                            );
                        }
                        entries.push(k);
                    }
                    TokenKind::RParen => {
                        self.bump();
                        break;
                    }
                    _ => {
                        return Err(self.err(
                            &tok,
                            format!("expected a number or `)`, found {}", tok.kind),
                        ))
                    }
                }
            }
            if entries.is_empty() {
                return Err(self.err(&opener, "empty cycle"));
            }
            for (i, &k) in entries.iter().enumerate() {
                sigma[k - 1] = entries[(i + 1) % entries.len()];
            }
        }
        Ok(sigma)
    }
}
