//! The two-sorted language: propositional formulas, beliefs, disbeliefs and
//! information sets, together with the `.bdl` line format.
//!
//! The disbelief marker is a line-level prefix (`D:`), never a connective, so
//! sentences such as `p | D: q` cannot be written down at all.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Classical propositional formula.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Atom(String),
    Top,
    Bottom,
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
}

/// Returns true if `name` matches `[a-z][a-z0-9_]*` and is not a keyword.
pub fn is_atom_name(name: &str) -> bool {
    let mut chars = name.chars();
    let head_ok = matches!(chars.next(), Some('a'..='z'));
    head_ok
        && chars.all(|c| matches!(c, 'a'..='z' | '0'..='9' | '_'))
        && name != "true"
        && name != "false"
}

impl Formula {
    /// Panics if `name` is not a valid atom name.
    pub fn atom(name: impl Into<String>) -> Formula {
        let name = name.into();
        assert!(is_atom_name(&name), "invalid atom name {name:?}");
        Formula::Atom(name)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(self) -> Formula {
        Formula::Not(Box::new(self))
    }

    pub fn and(self, rhs: Formula) -> Formula {
        Formula::And(Box::new(self), Box::new(rhs))
    }

    pub fn or(self, rhs: Formula) -> Formula {
        Formula::Or(Box::new(self), Box::new(rhs))
    }

    pub fn implies(self, rhs: Formula) -> Formula {
        Formula::Implies(Box::new(self), Box::new(rhs))
    }

    pub fn iff(self, rhs: Formula) -> Formula {
        Formula::Iff(Box::new(self), Box::new(rhs))
    }

    /// Left-nested conjunction; `true` when empty.
    pub fn conjunction<I: IntoIterator<Item = Formula>>(items: I) -> Formula {
        items.into_iter().reduce(Formula::and).unwrap_or(Formula::Top)
    }

    /// Left-nested disjunction; `false` when empty.
    pub fn disjunction<I: IntoIterator<Item = Formula>>(items: I) -> Formula {
        items.into_iter().reduce(Formula::or).unwrap_or(Formula::Bottom)
    }

    /// `exactly_one(a, b, c)` is `a & !b & !c | !a & b & !c | !a & !b & c`.
    pub fn exactly_one(atoms: &[Formula]) -> Formula {
        Formula::disjunction((0..atoms.len()).map(|i| {
            Formula::conjunction(atoms.iter().enumerate().map(|(j, a)| {
                if i == j {
                    a.clone()
                } else {
                    a.clone().not()
                }
            }))
        }))
    }

    /// Adds every atom name occurring in the formula to `out`.
    pub fn collect_atoms<'a>(&'a self, out: &mut BTreeSet<&'a str>) {
        match self {
            Formula::Atom(name) => {
                out.insert(name.as_str());
            }
            Formula::Top | Formula::Bottom => {}
            Formula::Not(f) => f.collect_atoms(out),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) | Formula::Iff(a, b) => {
                a.collect_atoms(out);
                b.collect_atoms(out);
            }
        }
    }

    pub fn atoms(&self) -> BTreeSet<&str> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    /// Number of nodes in the syntax tree.
    pub fn size(&self) -> usize {
        match self {
            Formula::Atom(_) | Formula::Top | Formula::Bottom => 1,
            Formula::Not(f) => 1 + f.size(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) | Formula::Iff(a, b) => {
                1 + a.size() + b.size()
            }
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Formula::Atom(_) | Formula::Top | Formula::Bottom => 0,
            Formula::Not(f) => 1 + f.depth(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) | Formula::Iff(a, b) => {
                1 + a.depth().max(b.depth())
            }
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Formula::Iff(..) => 1,
            Formula::Implies(..) => 2,
            Formula::Or(..) => 3,
            Formula::And(..) => 4,
            Formula::Not(_) => 5,
            Formula::Atom(_) | Formula::Top | Formula::Bottom => 6,
        }
    }
}

fn write_operand(f: &mut fmt::Formatter<'_>, operand: &Formula, min_prec: u8) -> fmt::Result {
    if operand.precedence() < min_prec {
        write!(f, "({operand})")
    } else {
        write!(f, "{operand}")
    }
}

/// Renders with the fewest parentheses that still parse back to the same tree.
impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Atom(name) => f.write_str(name),
            Formula::Top => f.write_str("true"),
            Formula::Bottom => f.write_str("false"),
            Formula::Not(inner) => {
                f.write_str("!")?;
                write_operand(f, inner, 5)
            }
            Formula::And(a, b) => {
                write_operand(f, a, 4)?;
                f.write_str(" & ")?;
                write_operand(f, b, 5)
            }
            Formula::Or(a, b) => {
                write_operand(f, a, 3)?;
                f.write_str(" | ")?;
                write_operand(f, b, 4)
            }
            // right-associative
            Formula::Implies(a, b) => {
                write_operand(f, a, 3)?;
                f.write_str(" -> ")?;
                write_operand(f, b, 2)
            }
            Formula::Iff(a, b) => {
                write_operand(f, a, 1)?;
                f.write_str(" <-> ")?;
                write_operand(f, b, 2)
            }
        }
    }
}

impl FromStr for Formula {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_formula(s)
    }
}

impl Serialize for Formula {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Formula {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        parse_formula(&text).map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SentenceKind {
    Belief,
    Disbelief,
}

/// A belief `φ` or a disbelief `φ̄`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Sentence {
    pub kind: SentenceKind,
    pub body: Formula,
}

impl Sentence {
    pub fn belief(body: Formula) -> Sentence {
        Sentence { kind: SentenceKind::Belief, body }
    }

    pub fn disbelief(body: Formula) -> Sentence {
        Sentence { kind: SentenceKind::Disbelief, body }
    }

    pub fn is_belief(&self) -> bool {
        self.kind == SentenceKind::Belief
    }

    pub fn is_disbelief(&self) -> bool {
        self.kind == SentenceKind::Disbelief
    }
}

impl fmt::Display for Sentence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            SentenceKind::Belief => write!(f, "B: {}", self.body),
            SentenceKind::Disbelief => write!(f, "D: {}", self.body),
        }
    }
}

pub fn render(sentence: &Sentence) -> String {
    sentence.to_string()
}

impl FromStr for Sentence {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_sentence(s)
    }
}

impl Serialize for Sentence {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Sentence {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        parse_sentence(&text).map_err(serde::de::Error::custom)
    }
}

/// A finite set of sentences. Membership is structural: `p` and `p & p` are
/// two different beliefs.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct InformationSet {
    sentences: BTreeSet<Sentence>,
}

impl InformationSet {
    pub fn new() -> InformationSet {
        InformationSet::default()
    }

    pub fn insert(&mut self, sentence: Sentence) -> bool {
        self.sentences.insert(sentence)
    }

    pub fn remove(&mut self, sentence: &Sentence) -> bool {
        self.sentences.remove(sentence)
    }

    pub fn contains(&self, sentence: &Sentence) -> bool {
        self.sentences.contains(sentence)
    }

    /// A copy with `sentence` added.
    pub fn with(&self, sentence: Sentence) -> InformationSet {
        let mut out = self.clone();
        out.insert(sentence);
        out
    }

    pub fn union(&self, other: &InformationSet) -> InformationSet {
        self.iter().chain(other.iter()).cloned().collect()
    }

    pub fn is_subset(&self, other: &InformationSet) -> bool {
        self.sentences.is_subset(&other.sentences)
    }

    pub fn len(&self) -> usize {
        self.sentences.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sentences.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Sentence> + '_ {
        self.sentences.iter()
    }

    /// Γ_B
    pub fn beliefs(&self) -> impl Iterator<Item = &Formula> + '_ {
        self.sentences.iter().filter(|s| s.is_belief()).map(|s| &s.body)
    }

    /// Γ_D, as the disbelieved formulas ψ of each ψ̄.
    pub fn disbeliefs(&self) -> impl Iterator<Item = &Formula> + '_ {
        self.sentences.iter().filter(|s| s.is_disbelief()).map(|s| &s.body)
    }

    /// The belief projection as an information set.
    pub fn belief_part(&self) -> InformationSet {
        self.iter().filter(|s| s.is_belief()).cloned().collect()
    }

    pub fn disbelief_part(&self) -> InformationSet {
        self.iter().filter(|s| s.is_disbelief()).cloned().collect()
    }

    /// Γ̄_D = { ¬ψ | ψ̄ ∈ Γ_D }.
    pub fn dual_disbeliefs(&self) -> BTreeSet<Formula> {
        self.disbeliefs().map(|f| f.clone().not()).collect()
    }

    pub fn atoms(&self) -> BTreeSet<&str> {
        let mut out = BTreeSet::new();
        for s in &self.sentences {
            s.body.collect_atoms(&mut out);
        }
        out
    }

    /// `.bdl` rendering: one sentence per line.
    pub fn to_bdl(&self) -> String {
        let mut out = String::new();
        for s in &self.sentences {
            out.push_str(&s.to_string());
            out.push('\n');
        }
        out
    }
}

impl FromIterator<Sentence> for InformationSet {
    fn from_iter<I: IntoIterator<Item = Sentence>>(iter: I) -> Self {
        InformationSet { sentences: iter.into_iter().collect() }
    }
}

impl<'a> IntoIterator for &'a InformationSet {
    type Item = &'a Sentence;
    type IntoIter = std::collections::btree_set::Iter<'a, Sentence>;

    fn into_iter(self) -> Self::IntoIter {
        self.sentences.iter()
    }
}

impl Extend<Sentence> for InformationSet {
    fn extend<I: IntoIterator<Item = Sentence>>(&mut self, iter: I) {
        self.sentences.extend(iter)
    }
}

/// Inline rendering, e.g. `{B: q, D: q}`.
impl fmt::Display for InformationSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, s) in self.sentences.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{s}")?;
        }
        f.write_str("}")
    }
}

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

/// Syntax error at a 1-based line and column.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}, column {column}: expected {}, found {found}", expected_list(.expected))]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub found: String,
    pub expected: Vec<&'static str>,
}

fn expected_list(expected: &[&'static str]) -> String {
    match expected {
        [] => "nothing".to_string(),
        [one] => one.to_string(),
        many => format!("one of {}", many.join(", ")),
    }
}

/// All line errors of a `.bdl` document.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{}", .errors.iter().map(ToString::to_string).collect::<Vec<_>>().join("\n"))]
pub struct DocumentError {
    pub errors: Vec<ParseError>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Ident(String),
    True,
    False,
    Bang,
    Amp,
    Pipe,
    Arrow,
    DoubleArrow,
    LParen,
    RParen,
    End,
}

impl Token {
    fn describe(&self) -> String {
        match self {
            Token::Ident(name) => format!("atom `{name}`"),
            Token::True => "`true`".into(),
            Token::False => "`false`".into(),
            Token::Bang => "`!`".into(),
            Token::Amp => "`&`".into(),
            Token::Pipe => "`|`".into(),
            Token::Arrow => "`->`".into(),
            Token::DoubleArrow => "`<->`".into(),
            Token::LParen => "`(`".into(),
            Token::RParen => "`)`".into(),
            Token::End => "end of input".into(),
        }
    }
}

const EXPECT_OPERAND: &[&str] = &["atom", "`true`", "`false`", "`!`", "`(`"];

struct Parser {
    tokens: Vec<(Token, usize)>,
    pos: usize,
    line: usize,
    column_offset: usize,
}

fn tokenize(text: &str, line: usize, column_offset: usize) -> Result<Vec<(Token, usize)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        let rest = &chars[i..];
        match c {
            ' ' | '\t' | '\r' => {
                i += 1;
                continue;
            }
            '!' => tokens.push((Token::Bang, col)),
            '&' => tokens.push((Token::Amp, col)),
            '|' => tokens.push((Token::Pipe, col)),
            '(' => tokens.push((Token::LParen, col)),
            ')' => tokens.push((Token::RParen, col)),
            '-' if rest.starts_with(&['-', '>']) => {
                tokens.push((Token::Arrow, col));
                i += 2;
                continue;
            }
            '<' if rest.starts_with(&['<', '-', '>']) => {
                tokens.push((Token::DoubleArrow, col));
                i += 3;
                continue;
            }
            'a'..='z' => {
                let start = i;
                while i < chars.len() && matches!(chars[i], 'a'..='z' | '0'..='9' | '_') {
                    i += 1;
                }
                let word: String = chars[start..i].iter().collect();
                let token = match word.as_str() {
                    "true" => Token::True,
                    "false" => Token::False,
                    _ => Token::Ident(word),
                };
                tokens.push((token, col));
                continue;
            }
            other => {
                return Err(ParseError {
                    line,
                    column: col + column_offset,
                    found: format!("character `{other}`"),
                    expected: EXPECT_OPERAND.iter().copied().chain(["binary connective"]).collect(),
                })
            }
        }
        i += 1;
    }
    tokens.push((Token::End, chars.len() + 1));
    Ok(tokens)
}

impl Parser {
    fn new(text: &str, line: usize, column_offset: usize) -> Result<Parser, ParseError> {
        Ok(Parser { tokens: tokenize(text, line, column_offset)?, pos: 0, line, column_offset })
    }

    fn peek(&self) -> &Token {
        &self.tokens[self.pos].0
    }

    fn bump(&mut self) -> Token {
        let token = self.tokens[self.pos].0.clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        token
    }

    fn error(&self, expected: &[&'static str]) -> ParseError {
        let (token, col) = &self.tokens[self.pos];
        ParseError {
            line: self.line,
            column: col + self.column_offset,
            found: token.describe(),
            expected: expected.to_vec(),
        }
    }

    fn formula(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.implication()?;
        while *self.peek() == Token::DoubleArrow {
            self.bump();
            let rhs = self.implication()?;
            lhs = lhs.iff(rhs);
        }
        Ok(lhs)
    }

    fn implication(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.disjunction()?;
        if *self.peek() == Token::Arrow {
            self.bump();
            let rhs = self.implication()?;
            return Ok(lhs.implies(rhs));
        }
        Ok(lhs)
    }

    fn disjunction(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.conjunction()?;
        while *self.peek() == Token::Pipe {
            self.bump();
            lhs = lhs.or(self.conjunction()?);
        }
        Ok(lhs)
    }

    fn conjunction(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.unary()?;
        while *self.peek() == Token::Amp {
            self.bump();
            lhs = lhs.and(self.unary()?);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        match self.peek().clone() {
            Token::Bang => {
                self.bump();
                Ok(self.unary()?.not())
            }
            Token::Ident(name) => {
                self.bump();
                Ok(Formula::Atom(name))
            }
            Token::True => {
                self.bump();
                Ok(Formula::Top)
            }
            Token::False => {
                self.bump();
                Ok(Formula::Bottom)
            }
            Token::LParen => {
                self.bump();
                let inner = self.formula()?;
                if *self.peek() != Token::RParen {
                    return Err(self.error(&["`)`", "`&`", "`|`", "`->`", "`<->`"]));
                }
                self.bump();
                Ok(inner)
            }
            _ => Err(self.error(EXPECT_OPERAND)),
        }
    }

    fn finish(&mut self) -> Result<(), ParseError> {
        if *self.peek() == Token::End {
            Ok(())
        } else {
            Err(self.error(&["`&`", "`|`", "`->`", "`<->`", "end of input"]))
        }
    }
}

fn parse_formula_at(text: &str, line: usize, column_offset: usize) -> Result<Formula, ParseError> {
    let mut parser = Parser::new(text, line, column_offset)?;
    let formula = parser.formula()?;
    parser.finish()?;
    Ok(formula)
}

/// Parses a formula; `!` binds tighter than `&`, then `|`, `->` (right
/// associative), `<->` (left associative).
pub fn parse_formula(text: &str) -> Result<Formula, ParseError> {
    parse_formula_at(text, 1, 0)
}

/// Splits a single `.bdl` line (already stripped of comments) into its kind
/// and the formula text with its column offset.
fn split_prefix(line: &str) -> (SentenceKind, &str, usize) {
    let trimmed = line.trim_start();
    let lead = line.len() - trimmed.len();
    if let Some(rest) = trimmed.strip_prefix("B:") {
        (SentenceKind::Belief, rest, lead + 2)
    } else if let Some(rest) = trimmed.strip_prefix("D:") {
        (SentenceKind::Disbelief, rest, lead + 2)
    } else {
        (SentenceKind::Belief, trimmed, lead)
    }
}

fn parse_sentence_at(text: &str, line: usize) -> Result<Sentence, ParseError> {
    let (kind, body, offset) = split_prefix(text);
    let offset = text[..offset].chars().count();
    let body = parse_formula_at(body, line, offset)?;
    Ok(Sentence { kind, body })
}

/// Parses one sentence in line syntax: `B: φ`, `D: φ` or a bare `φ`.
pub fn parse_sentence(text: &str) -> Result<Sentence, ParseError> {
    parse_sentence_at(text, 1)
}

/// Parses a `.bdl` document. Errors from every line are collected.
pub fn parse_information_set(document: &str) -> Result<InformationSet, DocumentError> {
    let mut set = InformationSet::new();
    let mut errors = Vec::new();
    for (idx, raw) in document.lines().enumerate() {
        let content = raw.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        match parse_sentence_at(content, idx + 1) {
            Ok(sentence) => {
                set.insert(sentence);
            }
            Err(err) => errors.push(err),
        }
    }
    if errors.is_empty() {
        Ok(set)
    } else {
        Err(DocumentError { errors })
    }
}

impl FromStr for InformationSet {
    type Err = DocumentError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_information_set(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(name: &str) -> Formula {
        Formula::atom(name)
    }

    #[test]
    fn implication() {
        assert_eq!(parse_formula("p -> q").unwrap(), a("p").implies(a("q")));
    }

    #[test]
    fn precedence_not_and_or() {
        assert_eq!(
            parse_formula("!p & q | r").unwrap(),
            a("p").not().and(a("q")).or(a("r"))
        );
    }

    #[test]
    fn implication_is_right_associative() {
        assert_eq!(
            parse_formula("a -> b -> c").unwrap(),
            a("a").implies(a("b").implies(a("c")))
        );
    }

    #[test]
    fn iff_is_left_associative() {
        assert_eq!(
            parse_formula("a <-> b <-> c").unwrap(),
            a("a").iff(a("b")).iff(a("c"))
        );
    }

    #[test]
    fn literals_are_keywords() {
        assert_eq!(parse_formula("true & !false").unwrap(), Formula::Top.and(Formula::Bottom.not()));
        assert!(!is_atom_name("true"));
        assert!(is_atom_name("t1"));
        assert!(is_atom_name("x_2"));
        assert!(!is_atom_name("P"));
        assert!(!is_atom_name("1p"));
    }

    #[test]
    fn error_reports_position_and_expectations() {
        let err = parse_formula("p & ").unwrap_err();
        assert_eq!((err.line, err.column), (1, 5));
        assert!(err.expected.contains(&"atom"));
        assert_eq!(err.found, "end of input");

        let err = parse_formula("(p | q").unwrap_err();
        assert!(err.expected.contains(&"`)`"));

        let err = parse_formula("p q").unwrap_err();
        assert_eq!(err.column, 3);

        let err = parse_formula("p ^ q").unwrap_err();
        assert_eq!(err.column, 3);
        assert!(err.found.contains('^'));
    }

    #[test]
    fn example_one_document() {
        let set = parse_information_set("B: p -> q\nD: q").unwrap();
        assert_eq!(set.beliefs().collect::<Vec<_>>(), vec![&a("p").implies(a("q"))]);
        assert_eq!(set.disbeliefs().collect::<Vec<_>>(), vec![&a("q")]);
    }

    #[test]
    fn empty_document() {
        assert!(parse_information_set("").unwrap().is_empty());
        assert!(parse_information_set("# only a comment\n\n   \n").unwrap().is_empty());
    }

    #[test]
    fn bare_lines_are_beliefs() {
        let set = parse_information_set("a | b\nD: a\nD: b").unwrap();
        assert_eq!(set.beliefs().cloned().collect::<Vec<_>>(), vec![a("a").or(a("b"))]);
        assert_eq!(set.disbeliefs().cloned().collect::<Vec<_>>(), vec![a("a"), a("b")]);
        assert_eq!(set.len(), 3);
    }

    #[test]
    fn duplicates_collapse_but_equivalents_do_not() {
        let set = parse_information_set("p\nB: p\np & p # trailing comment").unwrap();
        assert_eq!(set.len(), 2);
    }

    #[test]
    fn document_errors_are_aggregated() {
        let err = parse_information_set("p\nD: p &\nq\nB: ) q").unwrap_err();
        let lines: Vec<_> = err.errors.iter().map(|e| e.line).collect();
        assert_eq!(lines, vec![2, 4]);
        // column counts from the start of the line, prefix included; end of input is one past the last char
        assert_eq!(err.errors[0].column, 7);
        assert_eq!(err.errors[1].column, 4);
    }

    #[test]
    fn render_examples() {
        assert_eq!(render(&Sentence::disbelief(a("q"))), "D: q");
        assert_eq!(render(&Sentence::belief(a("p").implies(a("q")))), "B: p -> q");
        assert_eq!(render(&Sentence::belief(a("a").and(a("b")).or(a("c")))), "B: a & b | c");
    }

    #[test]
    fn render_keeps_needed_parentheses() {
        let cases = [
            a("a").or(a("b").or(a("c"))),
            a("a").implies(a("b")).implies(a("c")),
            a("a").iff(a("b").iff(a("c"))),
            a("a").or(a("b")).not(),
            a("a").and(a("b").or(a("c"))),
            a("a").not().not(),
        ];
        let rendered: Vec<_> = cases.iter().map(ToString::to_string).collect();
        assert_eq!(
            rendered,
            ["a | (b | c)", "(a -> b) -> c", "a <-> (b <-> c)", "!(a | b)", "a & (b | c)", "!!a"]
        );
        for f in cases {
            assert_eq!(parse_formula(&f.to_string()).unwrap(), f);
        }
    }

    #[test]
    fn projections_and_dual() {
        let set = parse_information_set("p\nD: q\nD: !q").unwrap();
        let dual = set.dual_disbeliefs();
        assert_eq!(dual.len(), 2);
        assert!(dual.contains(&a("q").not()));
        assert!(dual.contains(&a("q").not().not()));
        assert_eq!(set.belief_part().len() + set.disbelief_part().len(), set.len());
    }

    #[test]
    fn exactly_one_expansion() {
        let f = Formula::exactly_one(&[a("t1"), a("t2")]);
        assert_eq!(f.to_string(), "t1 & !t2 | !t1 & t2");
    }

    #[test]
    fn serde_uses_line_syntax() {
        let set = parse_information_set("p -> q\nD: q").unwrap();
        let json = serde_json::to_string(&set).unwrap();
        assert_eq!(json, r#"["B: p -> q","D: q"]"#);
        let back: InformationSet = serde_json::from_str(&json).unwrap();
        assert_eq!(back, set);
    }
}
