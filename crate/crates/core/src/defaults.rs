//! Default knowledge over a single variable.
//!
//! A knowledge base is a frame plus an ordered list of statements:
//!
//! ```text
//! frame: a,b,c,d
//! V is {a,b}                             # absolute: m(A) = 1
//! typically V is {b,c} strength 0.95     # typical: m(B) = 0.95, m(X) = 0.05
//! ```
//!
//! Inference combines the compiled statements in file order. Under Dempster's
//! rule a default that conflicts with absolute knowledge is discarded, and
//! between two conflicting defaults the stronger one keeps more belief.
//! Strengths in the 0.9 to 0.99 range behave like everyday "typically"; two
//! conflicting defaults of equal priority are better given modest strengths.

use std::fmt;

use thiserror::Error;

use crate::combination::{combine, CombinationRule};
use crate::entailment::weaken_to;
use crate::error::{Error, Result};
use crate::frame::{FocalSet, Frame};
use crate::mass::{parse_rational, Mass};
use crate::structure::{BeliefStructure, ProbabilityInterval};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {kind}")]
pub struct KbError {
    pub line: usize,
    pub column: usize,
    pub kind: KbErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KbErrorKind {
    #[error("{0}")]
    Parse(String),
    #[error("unknown atom `{0}`")]
    UnknownAtom(String),
    #[error("variable `{found}` does not match `{expected}`")]
    VariableMismatch { expected: String, found: String },
    #[error("statement before the `frame:` line")]
    MissingFrame,
    #[error("strength {0} must lie strictly between 0 and 1")]
    StrengthOutOfRange(String),
    #[error("no statements")]
    NoStatements,
}

impl KbErrorKind {
    pub fn name(&self) -> &'static str {
        match self {
            KbErrorKind::Parse(_) => "parse-error",
            KbErrorKind::UnknownAtom(_) => "unknown-atom",
            KbErrorKind::VariableMismatch { .. } => "variable-mismatch",
            KbErrorKind::MissingFrame => "missing-frame",
            KbErrorKind::StrengthOutOfRange(_) => "strength-out-of-range",
            KbErrorKind::NoStatements => "no-statements",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Statement {
    /// `V is A`
    Absolute(FocalSet),
    /// `typically V is B strength α`, with `0 < α < 1`
    Typical { set: FocalSet, strength: Mass },
}

impl Statement {
    pub fn absolute(set: FocalSet) -> Result<Self> {
        if set.is_empty() {
            return Err(Error::EmptyTarget);
        }
        Ok(Statement::Absolute(set))
    }

    pub fn typical(set: FocalSet, strength: Mass) -> Result<Self> {
        if set.is_empty() {
            return Err(Error::EmptyTarget);
        }
        if strength.is_zero() || strength.is_one() {
            return Err(KbError { line: 0, column: 0, kind: KbErrorKind::StrengthOutOfRange(strength.to_string()) }.into());
        }
        Ok(Statement::Typical { set, strength })
    }

    pub fn set(&self) -> &FocalSet {
        match self {
            Statement::Absolute(set) | Statement::Typical { set, .. } => set,
        }
    }

    /// `{A: 1}` for absolute knowledge, `{B: α, X: 1 - α}` for a default.
    pub fn compile(&self) -> BeliefStructure {
        match self {
            Statement::Absolute(set) => BeliefStructure::new(set.frame(), [(set.clone(), Mass::one())]),
            Statement::Typical { set, strength } => BeliefStructure::simple_support(set, strength.clone()),
        }
        .expect("statement invariants give a valid structure")
    }
}

#[derive(Clone, Debug)]
pub struct KnowledgeBase {
    frame: Frame,
    variable: String,
    statements: Vec<Statement>,
    /// Source line of each statement, for diagnostics.
    lines: Vec<usize>,
}

impl PartialEq for KnowledgeBase {
    fn eq(&self, other: &Self) -> bool {
        self.frame == other.frame && self.variable == other.variable && self.statements == other.statements
    }
}

impl Eq for KnowledgeBase {}

impl KnowledgeBase {
    pub fn new(frame: Frame, variable: impl Into<String>, statements: Vec<Statement>) -> Result<Self> {
        let variable = variable.into();
        if !is_name(&variable) || KEYWORDS.contains(&variable.as_str()) {
            return Err(KbError { line: 0, column: 0, kind: KbErrorKind::Parse(format!("invalid variable name `{variable}`")) }.into());
        }
        if statements.is_empty() {
            return Err(KbError { line: 0, column: 0, kind: KbErrorKind::NoStatements }.into());
        }
        for s in &statements {
            frame.ensure_same(s.set().frame())?;
        }
        // positions in the canonical text, frame on line 1
        let lines = (2..statements.len() + 2).collect();
        Ok(KnowledgeBase { frame, variable, statements, lines })
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn variable(&self) -> &str {
        &self.variable
    }

    pub fn statements(&self) -> &[Statement] {
        &self.statements
    }

    pub fn statement_lines(&self) -> &[usize] {
        &self.lines
    }

    /// Conjunction of all statements, left to right.
    pub fn infer(&self, rule: &CombinationRule) -> Result<BeliefStructure> {
        let compiled: Vec<BeliefStructure> = self.statements.iter().map(Statement::compile).collect();
        let mut acc = compiled[0].clone();
        for (i, next) in compiled.iter().enumerate().skip(1) {
            acc = match combine(&acc, next, rule) {
                Ok(c) => c,
                Err(Error::TotalConflict) => {
                    let with = (0..i).find(|&j| combine(&compiled[j], next, rule) == Err(Error::TotalConflict));
                    return Err(Error::StatementConflict { line: self.lines[i], with_line: with.map(|j| self.lines[j]) });
                }
                Err(e) => return Err(e),
            };
        }
        Ok(acc)
    }

    pub fn query(&self, rule: &CombinationRule, set: &FocalSet) -> Result<ProbabilityInterval> {
        self.infer(rule)?.prob_interval(set)
    }

    /// The inferred structure restated as "typically `target`", with
    /// strength `Bel(target)`.
    pub fn typical_summary(&self, rule: &CombinationRule, target: &FocalSet) -> Result<BeliefStructure> {
        weaken_to(&self.infer(rule)?, target)
    }

    /// Canonical source text; parses back to an equal knowledge base.
    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for KnowledgeBase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "frame: {}", self.frame.atoms().join(","))?;
        for s in &self.statements {
            match s {
                Statement::Absolute(set) => writeln!(f, "{} is {set}", self.variable)?,
                Statement::Typical { set, strength } => {
                    writeln!(f, "typically {} is {set} strength {strength}", self.variable)?
                }
            }
        }
        Ok(())
    }
}

const KEYWORDS: [&str; 4] = ["frame", "is", "typically", "strength"];

fn is_name(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_alphanumeric() || matches!(c, '_' | '-' | '\''))
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Word(String),
    LBrace,
    RBrace,
    Comma,
    Colon,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    column: usize,
}

fn describe(tok: Option<&Token>) -> String {
    match tok.map(|t| &t.tok) {
        None => "end of line".into(),
        Some(Tok::Word(w)) => format!("`{w}`"),
        Some(Tok::LBrace) => "`{`".into(),
        Some(Tok::RBrace) => "`}`".into(),
        Some(Tok::Comma) => "`,`".into(),
        Some(Tok::Colon) => "`:`".into(),
    }
}

fn tokenize(line: &str, number: usize) -> std::result::Result<Vec<Token>, KbError> {
    let mut tokens = Vec::new();
    let mut chars = line.chars().enumerate().peekable();
    while let Some((i, c)) = chars.next() {
        let column = i + 1;
        let tok = match c {
            '#' => break,
            c if c.is_whitespace() => continue,
            '{' => Tok::LBrace,
            '}' => Tok::RBrace,
            ',' => Tok::Comma,
            ':' => Tok::Colon,
            c if is_word_char(c) => {
                let mut word = c.to_string();
                while let Some(&(_, c)) = chars.peek() {
                    if !is_word_char(c) {
                        break;
                    }
                    word.push(c);
                    chars.next();
                }
                Tok::Word(word)
            }
            other => {
                return Err(KbError { line: number, column, kind: KbErrorKind::Parse(format!("unexpected character `{other}`")) })
            }
        };
        tokens.push(Token { tok, column });
    }
    Ok(tokens)
}

fn is_word_char(c: char) -> bool {
    c.is_alphanumeric() || matches!(c, '_' | '-' | '\'' | '.' | '/' | '+')
}

struct LineParser<'a> {
    tokens: &'a [Token],
    pos: usize,
    line: usize,
    end_column: usize,
}

impl<'a> LineParser<'a> {
    fn err(&self, column: usize, kind: KbErrorKind) -> KbError {
        KbError { line: self.line, column, kind }
    }

    fn here(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end_column, |t| t.column)
    }

    fn unexpected(&self, wanted: &str) -> KbError {
        let found = describe(self.tokens.get(self.pos));
        self.err(self.here(), KbErrorKind::Parse(format!("expected {wanted}, found {found}")))
    }

    fn expect(&mut self, tok: Tok, wanted: &str) -> std::result::Result<(), KbError> {
        if self.tokens.get(self.pos).map(|t| &t.tok) == Some(&tok) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.unexpected(wanted))
        }
    }

    fn word(&mut self, wanted: &str) -> std::result::Result<(String, usize), KbError> {
        match self.tokens.get(self.pos) {
            Some(Token { tok: Tok::Word(w), column }) => {
                self.pos += 1;
                Ok((w.clone(), *column))
            }
            _ => Err(self.unexpected(wanted)),
        }
    }

    fn keyword(&mut self, kw: &str) -> std::result::Result<(), KbError> {
        match self.tokens.get(self.pos) {
            Some(Token { tok: Tok::Word(w), .. }) if w == kw => {
                self.pos += 1;
                Ok(())
            }
            _ => Err(self.unexpected(&format!("`{kw}`"))),
        }
    }

    fn name(&mut self, wanted: &str) -> std::result::Result<(String, usize), KbError> {
        let (w, column) = self.word(wanted)?;
        if !is_name(&w) || KEYWORDS.contains(&w.as_str()) {
            return Err(self.err(column, KbErrorKind::Parse(format!("`{w}` is not a valid name"))));
        }
        Ok((w, column))
    }

    fn name_list(&mut self, wanted: &str, closing: Option<Tok>) -> std::result::Result<Vec<(String, usize)>, KbError> {
        let mut names = vec![self.name(wanted)?];
        loop {
            match (self.tokens.get(self.pos).map(|t| &t.tok), &closing) {
                (Some(Tok::Comma), _) => {
                    self.pos += 1;
                    names.push(self.name(wanted)?);
                }
                (Some(t), Some(c)) if t == c => {
                    self.pos += 1;
                    return Ok(names);
                }
                (None, None) => return Ok(names),
                _ => return Err(self.unexpected(if closing.is_some() { "`,` or `}`" } else { "`,` or end of line" })),
            }
        }
    }

    fn set(&mut self, frame: &Frame) -> std::result::Result<FocalSet, KbError> {
        self.expect(Tok::LBrace, "`{`")?;
        if self.tokens.get(self.pos).map(|t| &t.tok) == Some(&Tok::RBrace) {
            return Err(self.err(self.here(), KbErrorKind::Parse("sets must name at least one atom".into())));
        }
        let mut atoms = Vec::new();
        for (atom, column) in self.name_list("an atom name", Some(Tok::RBrace))? {
            if frame.index_of(&atom).is_none() {
                return Err(self.err(column, KbErrorKind::UnknownAtom(atom)));
            }
            atoms.push(atom);
        }
        Ok(frame.set(&atoms).expect("atoms checked"))
    }

    fn finish(&self) -> std::result::Result<(), KbError> {
        if self.pos < self.tokens.len() {
            Err(self.unexpected("end of line"))
        } else {
            Ok(())
        }
    }
}

/// Parses the line-oriented knowledge-base language.
pub fn parse_kb(text: &str) -> std::result::Result<KnowledgeBase, KbError> {
    let mut frame: Option<Frame> = None;
    let mut variable: Option<String> = None;
    let mut statements = Vec::new();
    let mut lines = Vec::new();
    let mut last_line = 0;

    for (index, raw) in text.lines().enumerate() {
        let number = index + 1;
        last_line = number;
        let tokens = tokenize(raw, number)?;
        if tokens.is_empty() {
            continue;
        }
        let mut p = LineParser { tokens: &tokens, pos: 0, line: number, end_column: raw.chars().count() + 1 };
        let first = match &tokens[0].tok {
            Tok::Word(w) => w.as_str(),
            _ => return Err(p.unexpected("`frame:` or a statement")),
        };

        if first == "frame" && tokens.get(1).map(|t| &t.tok) == Some(&Tok::Colon) {
            if frame.is_some() {
                return Err(p.err(1, KbErrorKind::Parse("frame declared twice".into())));
            }
            p.pos = 2;
            let names = p.name_list("an atom name", None)?;
            let atoms: Vec<String> = names.iter().map(|(n, _)| n.clone()).collect();
            frame = Some(Frame::new(atoms).map_err(|e| p.err(names[0].1, KbErrorKind::Parse(e.to_string())))?);
            continue;
        }

        let Some(frame) = frame.as_ref() else {
            return Err(p.err(tokens[0].column, KbErrorKind::MissingFrame));
        };
        let typical = first == "typically";
        if typical {
            p.pos = 1;
        }
        let (var, var_column) = p.name("a variable name")?;
        match &variable {
            Some(expected) if *expected != var => {
                return Err(p.err(var_column, KbErrorKind::VariableMismatch { expected: expected.clone(), found: var }))
            }
            Some(_) => {}
            None => variable = Some(var),
        }
        p.keyword("is")?;
        let set = p.set(frame)?;
        let statement = if typical {
            p.keyword("strength")?;
            let (literal, column) = p.word("a strength")?;
            let value = parse_rational(&literal)
                .map_err(|_| p.err(column, KbErrorKind::Parse(format!("`{literal}` is not a number"))))?;
            let strength = Mass::from_ratio(value)
                .ok()
                .filter(|s| !s.is_zero() && !s.is_one())
                .ok_or_else(|| p.err(column, KbErrorKind::StrengthOutOfRange(literal.clone())))?;
            Statement::Typical { set, strength }
        } else {
            Statement::Absolute(set)
        };
        p.finish()?;
        statements.push(statement);
        lines.push(number);
    }

    let Some(frame) = frame else {
        return Err(KbError { line: last_line.max(1), column: 1, kind: KbErrorKind::MissingFrame });
    };
    if statements.is_empty() {
        return Err(KbError { line: last_line.max(1), column: 1, kind: KbErrorKind::NoStatements });
    }
    Ok(KnowledgeBase { frame, variable: variable.expect("set with first statement"), statements, lines })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(p: i64, q: i64) -> Mass {
        Mass::new(p, q).unwrap()
    }

    fn kind(text: &str) -> (usize, usize, KbErrorKind) {
        let e = parse_kb(text).unwrap_err();
        (e.line, e.column, e.kind)
    }

    #[test]
    fn parses_the_basic_example() {
        let kb = parse_kb("frame: a,b,c,d\nV is {a,b}\ntypically V is {b,c} strength 0.95\n").unwrap();
        let x = kb.frame().clone();
        assert_eq!(kb.variable(), "V");
        assert_eq!(
            kb.statements(),
            &[
                Statement::Absolute(x.set(["a", "b"]).unwrap()),
                Statement::Typical { set: x.set(["b", "c"]).unwrap(), strength: m(19, 20) },
            ]
        );
        assert_eq!(kb.statement_lines(), &[2, 3]);
    }

    #[test]
    fn whitespace_and_comments() {
        let kb = parse_kb("# defaults\n  frame :a , b\n\n typically  V is{ a }strength 9/10 # strong\n").unwrap();
        assert_eq!(kb.statements().len(), 1);
        assert_eq!(kb.statement_lines(), &[4]);
    }

    #[test]
    fn error_classes() {
        assert_eq!(kind("typically V is {a} strength 0.9\n"), (1, 1, KbErrorKind::MissingFrame));
        assert_eq!(
            kind("frame: a,b\ntypically V is {a,e} strength 0.9"),
            (2, 19, KbErrorKind::UnknownAtom("e".into()))
        );
        assert_eq!(
            kind("frame: a,b\nV is {a}\nW is {b}"),
            (3, 1, KbErrorKind::VariableMismatch { expected: "V".into(), found: "W".into() })
        );
        assert_eq!(
            kind("frame: a,b\ntypically V is {a} strength 1"),
            (2, 29, KbErrorKind::StrengthOutOfRange("1".into()))
        );
        assert_eq!(kind("frame: a,b\ntypically V is {a} strength 0").2, KbErrorKind::StrengthOutOfRange("0".into()));
        assert_eq!(kind("frame: a,b\ntypically V is {a} strength 1.5").2, KbErrorKind::StrengthOutOfRange("1.5".into()));
        assert_eq!(kind("frame: a,b\n").2, KbErrorKind::NoStatements);
        assert_eq!(kind("").2, KbErrorKind::MissingFrame);
        for bad in [
            "frame: a,b\ntypically V is {a}",
            "frame: a,b\nV is {}",
            "frame: a,b\nV is {a",
            "frame: a,b\nV are {a}",
            "frame: a,b\nV is {a} strength 0.5",
            "frame: a,b\ntypically V is {a} strength lots",
            "frame: a,a\nV is {a}",
            "frame: a,b\nframe: a,b\nV is {a}",
            "frame: a;b\nV is {a}",
            "frame: a,b\nis is {a}",
        ] {
            assert!(matches!(parse_kb(bad).unwrap_err().kind, KbErrorKind::Parse(_)), "{bad}");
        }
    }

    #[test]
    fn serialization_round_trips() {
        let text = "frame: a,b,c,d\n# c\nV is {b,a}\ntypically V is {c,b} strength 0.95\ntypically V is {d} strength 1/3\n";
        let kb = parse_kb(text).unwrap();
        let canonical = kb.to_text();
        assert_eq!(canonical, "frame: a,b,c,d\nV is {a,b}\ntypically V is {b,c} strength 19/20\ntypically V is {d} strength 1/3\n");
        assert_eq!(parse_kb(&canonical).unwrap(), kb);
    }

    #[test]
    fn compile_statements() {
        let x = Frame::new(["a", "b", "c", "d"]).unwrap();
        let ab = x.set(["a", "b"]).unwrap();
        let bc = x.set(["b", "c"]).unwrap();
        let abs = Statement::absolute(ab.clone()).unwrap().compile();
        assert_eq!(abs.mass(&ab).unwrap(), Mass::one());
        let typ = Statement::typical(bc.clone(), m(19, 20)).unwrap().compile();
        assert_eq!(typ, BeliefStructure::simple_support(&bc, m(19, 20)).unwrap());
        let whole = Statement::typical(x.full(), m(1, 2)).unwrap().compile();
        assert_eq!(whole, BeliefStructure::vacuous(&x));
        assert!(Statement::typical(bc.clone(), Mass::one()).is_err());
        assert_eq!(Statement::absolute(x.empty_set()).unwrap_err(), Error::EmptyTarget);
    }

    #[test]
    fn absolute_then_typical() {
        let kb = parse_kb("frame: a,b,c,d\nV is {a,b}\ntypically V is {b,c} strength 0.9").unwrap();
        let x = kb.frame().clone();
        let out = kb.infer(&CombinationRule::Dempster).unwrap();
        let expected = BeliefStructure::new(
            &x,
            [(x.set(["b"]).unwrap(), m(9, 10)), (x.set(["a", "b"]).unwrap(), m(1, 10))],
        )
        .unwrap();
        assert_eq!(out, expected);
        let a = x.set(["a", "b"]).unwrap();
        assert_eq!(out.bel(&a).unwrap(), Mass::one());
        assert_eq!(out.pl(&a).unwrap(), Mass::one());

        let kb = parse_kb("frame: a,b,c,d\nV is {a,b}\ntypically V is {c,d} strength 0.9").unwrap();
        assert_eq!(kb.infer(&CombinationRule::Dempster).unwrap(), Statement::Absolute(a).compile());
    }

    #[test]
    fn conflicting_defaults() {
        let kb = parse_kb("frame: a,b,c,d\ntypically V is {a,b} strength 0.99\ntypically V is {c,d} strength 0.9").unwrap();
        let x = kb.frame().clone();
        let (a, b) = (x.set(["a", "b"]).unwrap(), x.set(["c", "d"]).unwrap());
        let out = kb.infer(&CombinationRule::Dempster).unwrap();
        assert_eq!(out.mass(&a).unwrap(), m(990, 1090));
        assert_eq!(out.mass(&b).unwrap(), m(90, 1090));
        assert_eq!(out.mass(&x.full()).unwrap(), m(10, 1090));
        assert!(out.bel(&a).unwrap() > out.bel(&b).unwrap());
        let iv = kb.query(&CombinationRule::Dempster, &a).unwrap();
        assert_eq!((iv.lower, iv.upper), (m(990, 1090), m(1000, 1090)));
        let union = kb.query(&CombinationRule::Dempster, &x.full().complement().union(&a.union(&b).unwrap()).unwrap()).unwrap();
        assert!(union.lower >= m(98, 100));

        let kb = parse_kb("frame: a,b,c,d\ntypically V is {a,b} strength 0.95\ntypically V is {c,d} strength 0.95").unwrap();
        let out = kb.infer(&CombinationRule::Dempster).unwrap();
        assert_eq!(out.mass(&a).unwrap(), m(19, 39));
        assert_eq!(out.mass(&b).unwrap(), m(19, 39));
        assert_eq!(out.mass(&x.full()).unwrap(), m(1, 39));

        let kb = parse_kb("frame: a,b,c,d\ntypically V is {a,b} strength 1/2\ntypically V is {c,d} strength 0.5").unwrap();
        let iv = kb.query(&CombinationRule::Dempster, &a).unwrap();
        assert_eq!((iv.lower, iv.upper), (m(1, 3), m(2, 3)));
    }

    #[test]
    fn contradictory_absolutes_name_the_pair() {
        let kb = parse_kb("frame: a,b,c\n# two facts\nV is {a,b}\ntypically V is {b} strength 0.5\nV is {c}\n").unwrap();
        assert_eq!(
            kb.infer(&CombinationRule::Dempster).unwrap_err(),
            Error::StatementConflict { line: 5, with_line: Some(3) }
        );
        // collective conflict with no single offending partner
        let kb = parse_kb("frame: a,b,c\nV is {a,b}\nV is {b,c}\nV is {a,c}\n").unwrap();
        assert_eq!(kb.infer(&CombinationRule::Dempster).unwrap_err(), Error::StatementConflict { line: 4, with_line: None });
    }

    #[test]
    fn summaries() {
        let kb = parse_kb("frame: a,b,c,d\ntypically V is {a,b} strength 0.9\ntypically V is {b,c} strength 0.8").unwrap();
        let x = kb.frame().clone();
        let meet = x.set(["b"]).unwrap();
        let s = kb.typical_summary(&CombinationRule::Dempster, &meet).unwrap();
        assert_eq!(s, BeliefStructure::simple_support(&meet, m(72, 100)).unwrap());
        assert_eq!(kb.typical_summary(&CombinationRule::Dempster, &x.full()).unwrap(), BeliefStructure::vacuous(&x));
        let single = parse_kb("frame: a,b\ntypically V is {a} strength 0.9").unwrap();
        let a = single.frame().set(["a"]).unwrap();
        assert_eq!(single.typical_summary(&CombinationRule::Dempster, &a).unwrap(), single.statements()[0].compile());
    }
}
