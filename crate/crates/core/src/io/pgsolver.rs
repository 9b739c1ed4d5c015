use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::game::{GameError, ParityGame, Player, Priority, VertexIndex};

/// Which end of the priority order is decisive.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum Convention {
    /// The least priority seen infinitely often decides (used internally).
    #[default]
    Min,
    /// The greatest priority seen infinitely often decides.
    Max,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexRecord {
    pub id: u64,
    pub priority: Priority,
    pub owner: Player,
    pub successors: Vec<u64>,
    pub name: Option<String>,
}

/// A game as written in a PGSolver file, before renumbering.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GameDocument {
    pub declared_max_id: Option<u64>,
    pub start: Option<u64>,
    pub vertices: Vec<VertexRecord>,
    pub convention: Convention,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Position {
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}", self.line, self.column)
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum ParseErrorKind {
    #[error("duplicate vertex id {0}")]
    DuplicateId(u64),
    #[error("vertex {vertex} has successor {successor}, which is not declared")]
    DanglingSuccessor { vertex: u64, successor: u64 },
    #[error("empty successor list at vertex {0}")]
    EmptySuccessors(u64),
    #[error("malformed token `{found}`, expected {expected}")]
    MalformedToken { found: String, expected: &'static str },
    #[error("missing `;` after the record of vertex {0}")]
    MissingSemicolon(u64),
    #[error("unexpected end of input, expected {0}")]
    UnexpectedEnd(&'static str),
    #[error("unterminated string")]
    UnterminatedString,
    #[error("the game has no vertices")]
    NoVertices,
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
#[error("{position}: {kind}")]
pub struct ParseError {
    pub position: Position,
    pub kind: ParseErrorKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(super) enum Token {
    Number(u64),
    Word(String),
    Str(String),
    Comma,
    Semicolon,
}

impl Token {
    fn describe(&self) -> String {
        match self {
            Token::Number(n) => n.to_string(),
            Token::Word(w) => w.clone(),
            Token::Str(s) => format!("\"{s}\""),
            Token::Comma => ",".into(),
            Token::Semicolon => ";".into(),
        }
    }
}

pub(super) fn tokenize(text: &str) -> Result<Vec<(Token, Position)>, ParseError> {
    let mut tokens = Vec::new();
    let mut chars = text.chars().peekable();
    let (mut line, mut column) = (1, 1);

    macro_rules! bump {
        () => {{
            let c = chars.next();
            if c == Some('\n') {
                line += 1;
                column = 1;
            } else if c.is_some() {
                column += 1;
            }
            c
        }};
    }

    while let Some(&c) = chars.peek() {
        let at = Position { line, column };
        match c {
            c if c.is_whitespace() => {
                bump!();
            }
            '-' => {
                bump!();
                if chars.peek() == Some(&'-') {
                    while chars.peek().is_some_and(|&c| c != '\n') {
                        bump!();
                    }
                } else {
                    return Err(ParseError {
                        position: at,
                        kind: ParseErrorKind::MalformedToken {
                            found: "-".into(),
                            expected: "a token",
                        },
                    });
                }
            }
            ',' => {
                bump!();
                tokens.push((Token::Comma, at));
            }
            ';' => {
                bump!();
                tokens.push((Token::Semicolon, at));
            }
            '"' => {
                bump!();
                let mut s = String::new();
                loop {
                    match bump!() {
                        None => {
                            return Err(ParseError {
                                position: at,
                                kind: ParseErrorKind::UnterminatedString,
                            })
                        }
                        Some('"') => break,
                        Some('\\') => match bump!() {
                            Some(escaped) => s.push(escaped),
                            None => {
                                return Err(ParseError {
                                    position: at,
                                    kind: ParseErrorKind::UnterminatedString,
                                })
                            }
                        },
                        Some(other) => s.push(other),
                    }
                }
                tokens.push((Token::Str(s), at));
            }
            _ => {
                let mut word = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_whitespace() || matches!(c, ',' | ';' | '"') {
                        break;
                    }
                    word.push(c);
                    bump!();
                }
                let token = if word.chars().all(|c| c.is_ascii_digit()) {
                    match word.parse() {
                        Ok(n) => Token::Number(n),
                        Err(_) => {
                            return Err(ParseError {
                                position: at,
                                kind: ParseErrorKind::MalformedToken {
                                    found: word,
                                    expected: "a number that fits in 64 bits",
                                },
                            })
                        }
                    }
                } else {
                    Token::Word(word)
                };
                tokens.push((token, at));
            }
        }
    }
    Ok(tokens)
}

struct Parser {
    tokens: Vec<(Token, Position)>,
    index: usize,
    end: Position,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.index).map(|(t, _)| t)
    }

    fn position(&self) -> Position {
        self.tokens.get(self.index).map_or(self.end, |(_, p)| *p)
    }

    fn error(&self, kind: ParseErrorKind) -> ParseError {
        ParseError {
            position: self.position(),
            kind,
        }
    }

    fn unexpected(&self, expected: &'static str) -> ParseError {
        match self.peek() {
            Some(token) => self.error(ParseErrorKind::MalformedToken {
                found: token.describe(),
                expected,
            }),
            None => self.error(ParseErrorKind::UnexpectedEnd(expected)),
        }
    }

    fn number(&mut self, expected: &'static str) -> Result<u64, ParseError> {
        match self.peek() {
            Some(&Token::Number(n)) => {
                self.index += 1;
                Ok(n)
            }
            _ => Err(self.unexpected(expected)),
        }
    }

    fn eat(&mut self, token: &Token) -> bool {
        if self.peek() == Some(token) {
            self.index += 1;
            true
        } else {
            false
        }
    }

    fn header(&mut self, keyword: &str) -> Result<Option<u64>, ParseError> {
        if !matches!(self.peek(), Some(Token::Word(w)) if w == keyword) {
            return Ok(None);
        }
        self.index += 1;
        let n = self.number("a number")?;
        if !self.eat(&Token::Semicolon) {
            return Err(self.unexpected("`;`"));
        }
        Ok(Some(n))
    }
}

/// Parses the PGSolver text format. Owner 0 is the even player, owner 1
/// the odd player. Comments run from `--` to the end of the line.
pub fn parse_pgsolver(text: &str) -> Result<GameDocument, ParseError> {
    let tokens = tokenize(text)?;
    let lines = text.split('\n').count();
    let last_len = text.rsplit('\n').next().map_or(0, |l| l.chars().count());
    let mut parser = Parser {
        tokens,
        index: 0,
        end: Position {
            line: lines,
            column: last_len + 1,
        },
    };

    let declared_max_id = parser.header("parity")?;
    let start = parser.header("start")?;

    let mut vertices = Vec::new();
    let mut seen: HashSet<u64> = HashSet::new();
    let mut successor_positions = Vec::new();
    while parser.peek().is_some() {
        let record_at = parser.position();
        let id = parser.number("a vertex id")?;
        if !seen.insert(id) {
            return Err(ParseError {
                position: record_at,
                kind: ParseErrorKind::DuplicateId(id),
            });
        }
        let priority = parser.number("a priority")?;
        let priority = Priority::try_from(priority).map_err(|_| ParseError {
            position: record_at,
            kind: ParseErrorKind::MalformedToken {
                found: priority.to_string(),
                expected: "a priority below 2^32",
            },
        })?;
        let owner = match parser.peek() {
            Some(Token::Number(0)) => Player::Even,
            Some(Token::Number(1)) => Player::Odd,
            _ => return Err(parser.unexpected("owner 0 or 1")),
        };
        parser.index += 1;

        if !matches!(parser.peek(), Some(Token::Number(_))) {
            if matches!(parser.peek(), Some(Token::Semicolon | Token::Str(_)) | None) {
                return Err(parser.error(ParseErrorKind::EmptySuccessors(id)));
            }
            return Err(parser.unexpected("a successor id"));
        }
        let mut successors = Vec::new();
        let mut positions = Vec::new();
        loop {
            positions.push(parser.position());
            successors.push(parser.number("a successor id")?);
            if !parser.eat(&Token::Comma) {
                break;
            }
        }
        let name = match parser.peek() {
            Some(Token::Str(s)) => {
                let s = s.clone();
                parser.index += 1;
                Some(s)
            }
            _ => None,
        };
        if !parser.eat(&Token::Semicolon) {
            return Err(match parser.peek() {
                Some(Token::Number(_)) | None => parser.error(ParseErrorKind::MissingSemicolon(id)),
                Some(_) => parser.unexpected("`;`"),
            });
        }
        successor_positions.push(positions);
        vertices.push(VertexRecord {
            id,
            priority,
            owner,
            successors,
            name,
        });
    }

    if vertices.is_empty() {
        return Err(parser.error(ParseErrorKind::NoVertices));
    }
    for (record, positions) in vertices.iter().zip(&successor_positions) {
        for (&successor, &position) in record.successors.iter().zip(positions) {
            if !seen.contains(&successor) {
                return Err(ParseError {
                    position,
                    kind: ParseErrorKind::DanglingSuccessor {
                        vertex: record.id,
                        successor,
                    },
                });
            }
        }
    }

    Ok(GameDocument {
        declared_max_id,
        start,
        vertices,
        convention: Convention::Min,
    })
}

/// Canonical text: a `parity` header with the largest id, vertices by
/// ascending id, successors ascending without repeats, one record per line.
pub fn write_pgsolver(doc: &GameDocument) -> String {
    let mut records: Vec<&VertexRecord> = doc.vertices.iter().collect();
    records.sort_by_key(|r| r.id);
    let max_id = records.last().map_or(0, |r| r.id);

    let mut out = format!("parity {max_id};\n");
    if let Some(start) = doc.start {
        writeln!(out, "start {start};").unwrap();
    }
    for record in records {
        let successors: BTreeSet<u64> = record.successors.iter().copied().collect();
        let successors: Vec<String> = successors.iter().map(u64::to_string).collect();
        write!(
            out,
            "{} {} {} {}",
            record.id,
            record.priority,
            record.owner.to_index(),
            successors.join(",")
        )
        .unwrap();
        if let Some(name) = &record.name {
            write!(out, " \"{}\"", name.replace('\\', "\\\\").replace('"', "\\\"")).unwrap();
        }
        out.push_str(";\n");
    }
    out
}

/// Maps every priority `p` to `P - p`, where `P` is the least even number
/// at or above the largest priority. Parities are kept and the order is
/// reversed, so winners do not change.
pub fn convert_convention(doc: &GameDocument, target: Convention) -> GameDocument {
    let mut converted = doc.clone();
    if doc.convention == target {
        return converted;
    }
    let max = doc.vertices.iter().map(|r| r.priority).max().unwrap_or(0);
    let top = max + max % 2;
    for record in &mut converted.vertices {
        record.priority = top - record.priority;
    }
    converted.convention = target;
    converted
}

/// A document's game in the min convention, with vertices indexed by
/// ascending id. Also returns the id of every index.
pub fn to_game(doc: &GameDocument) -> Result<(ParityGame, Vec<u64>), GameError> {
    let doc = convert_convention(doc, Convention::Min);
    let mut records: Vec<&VertexRecord> = doc.vertices.iter().collect();
    records.sort_by_key(|r| r.id);
    let ids: Vec<u64> = records.iter().map(|r| r.id).collect();
    let index: HashMap<u64, VertexIndex> = ids.iter().enumerate().map(|(i, &id)| (id, i)).collect();

    let mut successors = Vec::with_capacity(records.len());
    for record in &records {
        let mut list = Vec::with_capacity(record.successors.len());
        for s in &record.successors {
            let &w = index.get(s).ok_or(GameError::DanglingEdge {
                from: index[&record.id],
                to: usize::try_from(*s).unwrap_or(usize::MAX),
            })?;
            list.push(w);
        }
        successors.push(list);
    }
    let game = ParityGame::new(
        records.iter().map(|r| r.owner).collect(),
        records.iter().map(|r| r.priority).collect(),
        successors,
    )?;
    let names = records.iter().map(|r| r.name.clone()).collect();
    Ok((game.with_names(names), ids))
}

/// A min-convention document for `game`, using `ids` (or the indices) as
/// vertex ids.
pub fn from_game(game: &ParityGame, ids: Option<&[u64]>) -> GameDocument {
    let id = |v: VertexIndex| ids.map_or(v as u64, |ids| ids[v]);
    GameDocument {
        declared_max_id: None,
        start: None,
        vertices: game
            .vertices()
            .map(|v| VertexRecord {
                id: id(v),
                priority: game.priority(v),
                owner: game.owner(v),
                successors: game.successors(v).iter().map(|&w| id(w)).collect(),
                name: game.name(v).map(str::to_string),
            })
            .collect(),
        convention: Convention::Min,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples::six_vertex_example;

    #[test]
    fn two_vertex_game() {
        let doc = parse_pgsolver("parity 1; 0 0 0 0,1; 1 3 1 0;").unwrap();
        assert_eq!(doc.declared_max_id, Some(1));
        let (game, ids) = to_game(&doc).unwrap();
        assert_eq!(ids, vec![0, 1]);
        assert_eq!(game.owners(), &[Player::Even, Player::Odd]);
        assert_eq!(game.priorities(), &[0, 3]);
        assert_eq!(game.successors(0), &[0, 1]);
        assert_eq!(game.successors(1), &[0]);
    }

    #[test]
    fn example_round_trip() {
        let game = six_vertex_example();
        let text = write_pgsolver(&from_game(&game, None));
        assert_eq!(
            text,
            "parity 5;\n0 0 1 0,1 \"v1\";\n1 3 0 0,2 \"v2\";\n2 3 0 1,3 \"v3\";\n\
             3 2 1 4,5 \"v4\";\n4 0 1 5 \"v5\";\n5 1 1 3 \"v6\";\n"
        );
        let doc = parse_pgsolver(&text).unwrap();
        assert_eq!(write_pgsolver(&doc), text);
        let (back, _) = to_game(&doc).unwrap();
        assert_eq!(back.priorities(), game.priorities());
        assert_eq!(back.owners(), game.owners());
        assert_eq!(back.names(), game.names());
        for v in game.vertices() {
            let mut a = back.successors(v).to_vec();
            let mut b = game.successors(v).to_vec();
            a.sort();
            b.sort();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn errors_carry_positions() {
        let err = parse_pgsolver("0 2 0 ;").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::EmptySuccessors(0));
        assert_eq!(err.to_string(), "line 1, column 7: empty successor list at vertex 0");

        let err = parse_pgsolver("0 0 0 0;\n0 1 1 0;").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::DuplicateId(0));
        assert_eq!(err.position, Position { line: 2, column: 1 });

        let err = parse_pgsolver("0 0 0 0,7;").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::DanglingSuccessor { vertex: 0, successor: 7 });
        assert_eq!(err.position.column, 9);

        let err = parse_pgsolver("0 0 0 0\n1 0 0 0;").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::MissingSemicolon(0));
        assert_eq!(err.position.line, 2);

        let err = parse_pgsolver("0 0 x 0;").unwrap_err();
        assert!(matches!(err.kind, ParseErrorKind::MalformedToken { .. }));
        assert_eq!(parse_pgsolver("-- nothing\n").unwrap_err().kind, ParseErrorKind::NoVertices);
    }

    #[test]
    fn comments_whitespace_and_names() {
        let text = "-- header\nparity 2 ;\nstart 0;\n0 1 1 1 , 2 \"a \\\"q\\\" b\" ; -- trailing\n1 2 0 0;2 0 0 2;";
        let doc = parse_pgsolver(text).unwrap();
        assert_eq!(doc.start, Some(0));
        assert_eq!(doc.vertices[0].name.as_deref(), Some("a \"q\" b"));
        assert_eq!(doc.vertices[0].successors, vec![1, 2]);
        let canonical = write_pgsolver(&doc);
        assert!(canonical.contains("\"a \\\"q\\\" b\""));
        assert_eq!(write_pgsolver(&parse_pgsolver(&canonical).unwrap()), canonical);
    }

    #[test]
    fn convention_conversion() {
        let doc = parse_pgsolver("0 0 0 1; 1 1 0 2; 2 2 1 3; 3 3 1 0;").unwrap();
        let max = GameDocument {
            convention: Convention::Max,
            ..doc.clone()
        };
        let min = convert_convention(&max, Convention::Min);
        let prios: Vec<_> = min.vertices.iter().map(|r| r.priority).collect();
        assert_eq!(prios, vec![4, 3, 2, 1]);
        assert_eq!(convert_convention(&min, Convention::Max), max);

        let flat = parse_pgsolver("0 2 0 0;").unwrap();
        let flat = convert_convention(&GameDocument { convention: Convention::Max, ..flat }, Convention::Min);
        assert_eq!(flat.vertices[0].priority % 2, 0);
    }
}
