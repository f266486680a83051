//! Text format for presentations.
//!
//! ```text
//! # comment
//! gens a b c d e f;             # involutive generators
//! free x;                       # generators without the g² relator
//! coxeter [3,3,4,3,3];          # string-diagram relators on all generators
//! coxeter [4,3] on b c d;       # ... or on the listed ones
//! let s = d^(c b);              # ^(word) is conjugation: (c b)⁻¹ d (c b)
//! let t = c^(d e);
//! rel (a s t)^4;                # ^n is a power, n ≥ 1
//! rel x';                       # ' is the inverse
//! sub VERTEX = b c d e f;       # one generator word per factor ...
//! sub T = d1 d2, c1 c2, a;      # ... or comma separated words
//! ```

use std::collections::HashMap;

use super::{Letter, Presentation, PresentationError, Word};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Int(i64),
    Punct(char),
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(text: &str) -> Result<Vec<Token>, PresentationError> {
    let mut out = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let chars: Vec<char> = line.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let (line, col) = (lineno + 1, i + 1);
            if c == '#' {
                break;
            } else if c.is_whitespace() {
                i += 1;
            } else if c.is_ascii_alphabetic() || c == '_' {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push(Token { tok: Tok::Ident(chars[start..i].iter().collect()), line, col });
            } else if c.is_ascii_digit() {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                let v = s.parse().map_err(|_| PresentationError::Syntax {
                    line,
                    col,
                    msg: format!("integer {s} out of range"),
                })?;
                out.push(Token { tok: Tok::Int(v), line, col });
            } else if "()[],;=^'-".contains(c) {
                out.push(Token { tok: Tok::Punct(c), line, col });
                i += 1;
            } else {
                return Err(PresentationError::Syntax { line, col, msg: format!("unexpected character {c:?}") });
            }
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    pres: Presentation,
    lets: HashMap<String, Word>,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn here(&self) -> (usize, usize) {
        match self.toks.get(self.pos).or_else(|| self.toks.last()) {
            Some(t) => (t.line, t.col),
            None => (1, 1),
        }
    }

    fn error<T>(&self, msg: impl Into<String>) -> Result<T, PresentationError> {
        let (line, col) = self.here();
        Err(PresentationError::Syntax { line, col, msg: msg.into() })
    }

    fn is_punct(&self, c: char) -> bool {
        self.peek() == Some(&Tok::Punct(c))
    }

    fn expect_punct(&mut self, c: char) -> Result<(), PresentationError> {
        if self.is_punct(c) {
            self.pos += 1;
            Ok(())
        } else {
            self.error(format!("expected `{c}`"))
        }
    }

    fn ident(&mut self) -> Result<String, PresentationError> {
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            _ => self.error("expected a name"),
        }
    }

    fn int(&mut self) -> Result<i64, PresentationError> {
        match self.peek() {
            Some(&Tok::Int(v)) => {
                self.pos += 1;
                Ok(v)
            }
            _ => self.error("expected an integer"),
        }
    }

    fn starts_factor(&self) -> bool {
        matches!(self.peek(), Some(Tok::Ident(_)) | Some(Tok::Int(1)) | Some(Tok::Punct('(')))
    }

    fn word(&mut self) -> Result<Word, PresentationError> {
        if !self.starts_factor() {
            return self.error("expected a word");
        }
        let mut w = Word::empty();
        while self.starts_factor() {
            w = w.concat(&self.factor()?);
        }
        Ok(w)
    }

    fn factor(&mut self) -> Result<Word, PresentationError> {
        let (line, col) = self.here();
        let mut w = match self.peek().cloned() {
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                if let Some(g) = self.pres.generator_index(&name) {
                    Word::letter(Letter::gen(g))
                } else if let Some(w) = self.lets.get(&name) {
                    w.clone()
                } else {
                    return Err(PresentationError::UndefinedName { line, col, name });
                }
            }
            Some(Tok::Int(1)) => {
                self.pos += 1;
                Word::empty()
            }
            Some(Tok::Punct('(')) => {
                self.pos += 1;
                let w = self.word()?;
                self.expect_punct(')')?;
                w
            }
            _ => return self.error("expected a generator, name or `(`"),
        };
        loop {
            if self.is_punct('\'') {
                self.pos += 1;
                w = w.inverse();
            } else if self.is_punct('^') {
                self.pos += 1;
                let (line, col) = self.here();
                if self.is_punct('(') {
                    self.pos += 1;
                    let y = self.word()?;
                    self.expect_punct(')')?;
                    w = y.inverse().concat(&w).concat(&y);
                } else if self.is_punct('-') {
                    self.pos += 1;
                    let k = self.int()?;
                    return Err(PresentationError::BadPower { line, col, power: -k });
                } else {
                    let k = self.int()?;
                    if k < 1 {
                        return Err(PresentationError::BadPower { line, col, power: k });
                    }
                    w = w.pow(k as usize);
                }
            } else {
                return Ok(w);
            }
        }
    }

    fn declare(&mut self, involutive: bool) -> Result<(), PresentationError> {
        let mut names = self.pres.names().to_vec();
        let mut flags = self.pres.involutive().to_vec();
        while let Some(Tok::Ident(_)) = self.peek() {
            let (line, col) = self.here();
            let name = self.ident()?;
            if names.contains(&name) || self.lets.contains_key(&name) || is_keyword(&name) {
                return Err(PresentationError::Syntax { line, col, msg: format!("`{name}` is already defined") });
            }
            names.push(name);
            flags.push(involutive);
        }
        // Rebuild so the new g² relators are present; keep everything else.
        let old = std::mem::replace(&mut self.pres, Presentation::new(names, flags));
        for r in old.extra_relators() {
            self.pres.add_relator(r.clone())?;
        }
        for (name, words) in old.subgroups() {
            self.pres.set_subgroup(name, words.clone())?;
        }
        Ok(())
    }

    fn coxeter(&mut self) -> Result<(), PresentationError> {
        self.expect_punct('[')?;
        let mut labels = Vec::new();
        loop {
            let (line, col) = self.here();
            let k = self.int()?;
            if k < 2 {
                return Err(PresentationError::Syntax { line, col, msg: format!("Coxeter label {k} is below 2") });
            }
            labels.push(k as u32);
            if self.is_punct(',') {
                self.pos += 1;
            } else {
                break;
            }
        }
        self.expect_punct(']')?;
        let gens: Vec<usize> = if matches!(self.peek(), Some(Tok::Ident(s)) if s == "on") {
            self.pos += 1;
            let mut gens = Vec::new();
            while let Some(Tok::Ident(_)) = self.peek() {
                let (line, col) = self.here();
                let name = self.ident()?;
                match self.pres.generator_index(&name) {
                    Some(g) => gens.push(g),
                    None => return Err(PresentationError::UndefinedName { line, col, name }),
                }
            }
            gens
        } else {
            (0..self.pres.ngens()).collect()
        };
        if gens.len() != labels.len() + 1 {
            return self.error(format!(
                "Coxeter symbol with {} labels needs {} generators, found {}",
                labels.len(),
                labels.len() + 1,
                gens.len()
            ));
        }
        for i in 0..gens.len() {
            for j in i + 1..gens.len() {
                let k = if j == i + 1 { labels[i] } else { 2 };
                self.pres.add_relator(Word::gens(&[gens[i], gens[j]]).pow(k as usize))?;
            }
        }
        Ok(())
    }

    fn subgroup_items(&mut self) -> Result<Vec<Word>, PresentationError> {
        let mut items: Vec<Vec<Word>> = vec![Vec::new()];
        let mut saw_comma = false;
        loop {
            if self.is_punct(',') {
                self.pos += 1;
                saw_comma = true;
                items.push(Vec::new());
            } else if self.starts_factor() {
                let f = self.factor()?;
                items.last_mut().expect("non-empty").push(f);
            } else {
                break;
            }
        }
        if saw_comma {
            items
                .into_iter()
                .map(|factors| {
                    if factors.is_empty() {
                        self.error("empty word in subgroup list")
                    } else {
                        Ok(factors.iter().fold(Word::empty(), |acc, f| acc.concat(f)))
                    }
                })
                .collect()
        } else {
            Ok(items.pop().expect("non-empty"))
        }
    }

    fn statement(&mut self) -> Result<(), PresentationError> {
        let (line, col) = self.here();
        let kw = self.ident()?;
        match kw.as_str() {
            "gens" => self.declare(true)?,
            "free" => self.declare(false)?,
            "coxeter" => self.coxeter()?,
            "let" => {
                let (nline, ncol) = self.here();
                let name = self.ident()?;
                if self.pres.generator_index(&name).is_some() || is_keyword(&name) {
                    return Err(PresentationError::Syntax {
                        line: nline,
                        col: ncol,
                        msg: format!("`{name}` is already a generator or keyword"),
                    });
                }
                self.expect_punct('=')?;
                let w = self.word()?;
                self.lets.insert(name, w);
            }
            "rel" => loop {
                let w = self.word()?;
                self.pres.add_relator(w)?;
                if self.is_punct(',') {
                    self.pos += 1;
                } else {
                    break;
                }
            },
            "sub" => {
                let name = self.ident()?;
                self.expect_punct('=')?;
                let words = self.subgroup_items()?;
                self.pres.set_subgroup(&name, words)?;
            }
            other => {
                return Err(PresentationError::Syntax { line, col, msg: format!("unknown statement `{other}`") })
            }
        }
        self.expect_punct(';')
    }
}

fn is_keyword(s: &str) -> bool {
    matches!(s, "gens" | "free" | "coxeter" | "let" | "rel" | "sub" | "on")
}

/// Parses the presentation text format described in the module docs.
pub fn parse(text: &str) -> Result<Presentation, PresentationError> {
    let mut p = Parser { toks: lex(text)?, pos: 0, pres: Presentation::new(vec![], vec![]), lets: HashMap::new() };
    while p.pos < p.toks.len() {
        p.statement()?;
    }
    Ok(p.pres)
}
