//! Human-readable presentations, words and rewriting-system fixtures.
//!
//! Presentation grammar:
//!
//! ```text
//! presentation := '<' [name (',' name)*] '|' [word (',' word)*] '>'
//! word         := factor ('*'? factor)*
//! factor       := atom ('^' integer)?
//! atom         := name | '1' | '(' word ')' | '[' word ',' word ']'
//! ```
//!
//! `#` starts a comment running to the end of the line. `[u,v]` is
//! `u v u^-1 v^-1`. A zero exponent is an error.

use std::fmt;

use freeiso::word_problem::{RewritingError, RewritingSystem, Rule};
use freeiso::{Letter, Presentation, Word};
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Position {
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("{pos}: unknown generator '{name}'")]
    UnknownGenerator { name: String, pos: Position },
    #[error("{pos}: exponent must be nonzero")]
    ZeroExponent { pos: Position },
    #[error("{pos}: unbalanced '{open}', expected '{close}'")]
    Unbalanced { open: char, close: char, pos: Position },
    #[error("{pos}: unexpected '{found}', expected {expected}")]
    Unexpected { found: char, expected: &'static str, pos: Position },
    #[error("{pos}: unexpected end of input, expected {expected}")]
    UnexpectedEnd { expected: &'static str, pos: Position },
    #[error("{pos}: exponent out of range")]
    ExponentRange { pos: Position },
    #[error("{pos}: duplicate generator name '{name}'")]
    DuplicateName { name: String, pos: Position },
}

struct Cursor<'a> {
    src: &'a str,
    at: usize,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str) -> Self {
        Cursor { src, at: 0 }
    }

    fn pos_of(&self, at: usize) -> Position {
        let before = &self.src[..at];
        let line = before.matches('\n').count() + 1;
        let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
        Position { line, column }
    }

    fn pos(&self) -> Position {
        self.pos_of(self.at)
    }

    fn skip_ws(&mut self) {
        loop {
            let rest = &self.src[self.at..];
            let trimmed = rest.trim_start();
            self.at += rest.len() - trimmed.len();
            if trimmed.starts_with('#') {
                self.at += trimmed.find('\n').unwrap_or(trimmed.len());
            } else {
                return;
            }
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.at..].chars().next()
    }

    fn bump(&mut self) {
        if let Some(c) = self.src[self.at..].chars().next() {
            self.at += c.len_utf8();
        }
    }

    fn expect(&mut self, c: char, expected: &'static str) -> Result<(), ParseError> {
        match self.peek() {
            Some(d) if d == c => {
                self.bump();
                Ok(())
            }
            Some(found) => Err(ParseError::Unexpected { found, expected, pos: self.pos() }),
            None => Err(ParseError::UnexpectedEnd { expected, pos: self.pos() }),
        }
    }

    fn close(&mut self, open: char, close: char, open_at: usize) -> Result<(), ParseError> {
        if self.peek() == Some(close) {
            self.bump();
            Ok(())
        } else {
            Err(ParseError::Unbalanced { open, close, pos: self.pos_of(open_at) })
        }
    }

    fn name(&mut self) -> Option<(String, usize)> {
        self.skip_ws();
        let rest = &self.src[self.at..];
        let mut chars = rest.char_indices();
        match chars.next() {
            Some((_, c)) if c.is_alphabetic() || c == '_' => {}
            _ => return None,
        }
        let end = chars.find(|&(_, c)| !(c.is_alphanumeric() || c == '_')).map_or(rest.len(), |(i, _)| i);
        let start = self.at;
        self.at += end;
        Some((rest[..end].to_string(), start))
    }

    fn integer(&mut self) -> Result<i64, ParseError> {
        self.skip_ws();
        let start = self.at;
        let rest = &self.src[self.at..];
        let sign = usize::from(rest.starts_with('-') || rest.starts_with('+'));
        let digits = rest[sign..].find(|c: char| !c.is_ascii_digit()).unwrap_or(rest.len() - sign);
        if digits == 0 {
            return match rest[sign..].chars().next() {
                Some(found) => Err(ParseError::Unexpected { found, expected: "an integer", pos: self.pos_of(start + sign) }),
                None => Err(ParseError::UnexpectedEnd { expected: "an integer", pos: self.pos_of(start + sign) }),
            };
        }
        self.at += sign + digits;
        let k: i64 = rest[..sign + digits].parse().map_err(|_| ParseError::ExponentRange { pos: self.pos_of(start) })?;
        if k == 0 {
            return Err(ParseError::ZeroExponent { pos: self.pos_of(start) });
        }
        if k.unsigned_abs() > 1 << 20 {
            return Err(ParseError::ExponentRange { pos: self.pos_of(start) });
        }
        Ok(k)
    }
}

struct WordParser<'n> {
    names: &'n [String],
}

impl WordParser<'_> {
    fn starts_factor(c: char) -> bool {
        c.is_alphabetic() || c == '_' || c == '1' || c == '(' || c == '['
    }

    fn word(&self, cur: &mut Cursor) -> Result<Word, ParseError> {
        let mut w = self.factor(cur)?;
        loop {
            match cur.peek() {
                Some('*') => {
                    cur.bump();
                    w = w.concat(&self.factor(cur)?);
                }
                Some(c) if Self::starts_factor(c) => w = w.concat(&self.factor(cur)?),
                _ => return Ok(w),
            }
        }
    }

    fn factor(&self, cur: &mut Cursor) -> Result<Word, ParseError> {
        let base = self.atom(cur)?;
        if cur.peek() == Some('^') {
            cur.bump();
            let k = cur.integer()?;
            return Ok(base.pow(k));
        }
        Ok(base)
    }

    fn atom(&self, cur: &mut Cursor) -> Result<Word, ParseError> {
        let expected = "a generator, '1', '(' or '['";
        match cur.peek() {
            Some('1') => {
                cur.bump();
                Ok(Word::identity())
            }
            Some('(') => {
                let open_at = cur.at;
                cur.bump();
                let w = self.word(cur)?;
                cur.close('(', ')', open_at)?;
                Ok(w)
            }
            Some('[') => {
                let open_at = cur.at;
                cur.bump();
                let u = self.word(cur)?;
                if cur.peek() != Some(',') {
                    return Err(ParseError::Unbalanced { open: '[', close: ']', pos: cur.pos_of(open_at) });
                }
                cur.bump();
                let v = self.word(cur)?;
                cur.close('[', ']', open_at)?;
                Ok(Word::commutator(&u, &v))
            }
            Some(c) if c.is_alphabetic() || c == '_' => {
                let (name, at) = cur.name().expect("peeked a name start");
                match self.names.iter().position(|n| *n == name) {
                    Some(i) => Ok(Word::generator(i)),
                    None => Err(ParseError::UnknownGenerator { name, pos: cur.pos_of(at) }),
                }
            }
            Some(found) => Err(ParseError::Unexpected { found, expected, pos: cur.pos() }),
            None => Err(ParseError::UnexpectedEnd { expected, pos: cur.pos() }),
        }
    }
}

/// Parses a presentation. Relators are cyclically reduced and trivial ones
/// dropped, as by [`Presentation::new`].
pub fn parse_presentation(text: &str) -> Result<Presentation, ParseError> {
    let mut cur = Cursor::new(text);
    cur.skip_ws();
    let open_at = cur.at;
    cur.expect('<', "'<'")?;
    let mut names: Vec<String> = Vec::new();
    if cur.peek() != Some('|') {
        loop {
            let Some((name, at)) = cur.name() else {
                return Err(match cur.peek() {
                    Some(found) => ParseError::Unexpected { found, expected: "a generator name", pos: cur.pos() },
                    None => ParseError::UnexpectedEnd { expected: "a generator name", pos: cur.pos() },
                });
            };
            if names.contains(&name) {
                return Err(ParseError::DuplicateName { name, pos: cur.pos_of(at) });
            }
            names.push(name);
            match cur.peek() {
                Some(',') => cur.bump(),
                _ => break,
            }
        }
    }
    cur.expect('|', "',' or '|'")?;
    let parser = WordParser { names: &names };
    let mut relators = Vec::new();
    if cur.peek() != Some('>') && cur.peek().is_some() {
        loop {
            relators.push(parser.word(&mut cur)?);
            match cur.peek() {
                Some(',') => cur.bump(),
                _ => break,
            }
        }
    }
    if cur.peek() != Some('>') {
        return Err(match cur.peek() {
            Some(found) if found != ']' && found != ')' => {
                ParseError::Unexpected { found, expected: "',' or '>'", pos: cur.pos() }
            }
            _ => ParseError::Unbalanced { open: '<', close: '>', pos: cur.pos_of(open_at) },
        });
    }
    cur.bump();
    if let Some(found) = cur.peek() {
        return Err(ParseError::Unexpected { found, expected: "end of input", pos: cur.pos() });
    }
    Ok(Presentation::new(names, relators).expect("names are distinct and relators in range"))
}

/// Parses a single word over `names`.
pub fn parse_word(text: &str, names: &[String]) -> Result<Word, ParseError> {
    let mut cur = Cursor::new(text);
    let w = WordParser { names }.word(&mut cur)?;
    match cur.peek() {
        None => Ok(w),
        Some(found) => Err(ParseError::Unexpected { found, expected: "end of word", pos: cur.pos() }),
    }
}

/// Parses `w1, w2, ...`; commas inside commutator brackets do not separate.
pub fn parse_word_list(text: &str, names: &[String]) -> Result<Vec<Word>, ParseError> {
    let mut cur = Cursor::new(text);
    let parser = WordParser { names };
    let mut out = Vec::new();
    if cur.peek().is_none() {
        return Ok(out);
    }
    loop {
        out.push(parser.word(&mut cur)?);
        match cur.peek() {
            Some(',') => cur.bump(),
            None => return Ok(out),
            Some(found) => return Err(ParseError::Unexpected { found, expected: "',' or end of list", pos: cur.pos() }),
        }
    }
}

/// Maximal runs of one letter, as `(letter, run length)`.
fn runs(letters: &[Letter]) -> Vec<(Letter, usize)> {
    let mut out: Vec<(Letter, usize)> = Vec::new();
    for &l in letters {
        match out.last_mut() {
            Some((m, k)) if *m == l => *k += 1,
            _ => out.push((l, 1)),
        }
    }
    out
}

fn format_run(l: Letter, k: usize, names: &[String]) -> String {
    let name = &names[l.gen_index()];
    match (l.sign(), k) {
        (1, 1) => name.clone(),
        (1, k) => format!("{name}^{k}"),
        (_, k) => format!("{name}^-{k}"),
    }
}

/// `a^2*b^-1`, or `1` for the identity.
pub fn format_word(w: &Word, names: &[String]) -> String {
    format_letters(w.letters(), names)
}

/// Like [`format_word`] but for letter strings that need not be reduced.
pub fn format_letters(letters: &[Letter], names: &[String]) -> String {
    if letters.is_empty() {
        return "1".into();
    }
    runs(letters).into_iter().map(|(l, k)| format_run(l, k, names)).collect::<Vec<_>>().join("*")
}

/// Inverse of [`parse_presentation`] up to whitespace and sugar.
pub fn print_presentation(p: &Presentation) -> String {
    let names = p.generator_names();
    let rels: Vec<String> = p.relators().iter().map(|r| format_word(r, names)).collect();
    format!("<{} | {}>", names.join(", "), rels.join(", "))
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FixtureError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: unknown generator '{name}'")]
    UnknownGenerator { line: usize, name: String },
    #[error("missing 'order:' line")]
    MissingOrder,
    #[error(transparent)]
    System(#[from] RewritingError),
}

/// Letters separated by whitespace or `*`: `a`, `a^-1`, `a^k`, or `1`.
/// No free reduction is applied.
fn parse_letters(s: &str, names: &[String], line: usize) -> Result<Vec<Letter>, FixtureError> {
    let mut out = Vec::new();
    for tok in s.split(|c: char| c.is_whitespace() || c == '*').filter(|t| !t.is_empty()) {
        if tok == "1" {
            continue;
        }
        let (name, k) = match tok.split_once('^') {
            Some((n, e)) => {
                let k: i64 = e.parse().map_err(|_| FixtureError::Syntax { line, message: format!("bad exponent in '{tok}'") })?;
                if k == 0 {
                    return Err(FixtureError::Syntax { line, message: "exponent must be nonzero".into() });
                }
                (n, k)
            }
            None => (tok, 1),
        };
        let g = names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| FixtureError::UnknownGenerator { line, name: name.to_string() })?;
        let l = Letter::new(g, k < 0);
        out.extend(std::iter::repeat_n(l, k.unsigned_abs() as usize));
    }
    Ok(out)
}

/// Reads the line format
///
/// ```text
/// order: a a^-1 b b^-1
/// rule: b a -> a b
/// ```
///
/// where `order` lists every letter once, smallest first. `#` comments and
/// blank lines are ignored.
pub fn parse_rewriting_system(text: &str, names: &[String]) -> Result<RewritingSystem, FixtureError> {
    let mut order = None;
    let mut rules = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        if let Some(rest) = content.strip_prefix("order:") {
            order = Some(parse_letters(rest, names, line)?);
        } else if let Some(rest) = content.strip_prefix("rule:") {
            let (lhs, rhs) = rest
                .split_once("->")
                .ok_or_else(|| FixtureError::Syntax { line, message: "expected 'lhs -> rhs'".into() })?;
            rules.push(Rule { lhs: parse_letters(lhs, names, line)?, rhs: parse_letters(rhs, names, line)? });
        } else {
            return Err(FixtureError::Syntax { line, message: "expected 'order:' or 'rule:'".into() });
        }
    }
    let order = order.ok_or(FixtureError::MissingOrder)?;
    Ok(RewritingSystem::with_order(names.len(), order, rules)?)
}

fn spaced(letters: &[Letter], names: &[String]) -> String {
    if letters.is_empty() {
        return "1".into();
    }
    letters
        .iter()
        .map(|l| if l.sign() > 0 { names[l.gen_index()].clone() } else { format!("{}^-1", names[l.gen_index()]) })
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn print_rewriting_system(s: &RewritingSystem, names: &[String]) -> String {
    let mut out = format!("order: {}\n", spaced(s.order(), names));
    for r in s.rules() {
        out.push_str(&format!("rule: {} -> {}\n", spaced(&r.lhs, names), spaced(&r.rhs, names)));
    }
    out
}
