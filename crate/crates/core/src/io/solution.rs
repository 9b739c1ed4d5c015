use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::game::{ParityGame, Player, Strategy, VertexIndex, VertexSet};
use crate::solvers::{SolveResult, SolveStats};

use super::pgsolver::{tokenize, ParseError, ParseErrorKind, Position, Token};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WinnerRecord {
    pub vertex: u64,
    /// 0 for the even player, 1 for the odd player.
    pub winner: u8,
}

/// Winners and optional strategy choices, keyed by vertex id.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct SolutionDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub algorithm: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub winners: Vec<WinnerRecord>,
    #[serde(default)]
    pub strategy: BTreeMap<u64, u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stats: Option<SolveStats>,
    #[serde(skip)]
    pub names: BTreeMap<u64, String>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SolutionError {
    #[error("solution mentions vertex {0}, which the game does not have")]
    UnknownVertex(u64),
    #[error("solution gives no winner for vertex {0}")]
    MissingWinner(u64),
    #[error("winner of vertex {vertex} is {bit}, expected 0 or 1")]
    BadWinner { vertex: u64, bit: u8 },
    #[error("strategy entry at vertex {0}, which its owner does not win")]
    StrategyForLoser(u64),
}

impl SolutionDocument {
    /// Records a solver result; strategy entries are kept only where the
    /// owner wins.
    pub fn from_result(
        game: &ParityGame,
        ids: &[u64],
        result: &SolveResult,
        algorithm: &str,
        with_strategies: bool,
    ) -> Self {
        let winners = game
            .vertices()
            .map(|v| WinnerRecord {
                vertex: ids[v],
                winner: result.winner(v).to_index() as u8,
            })
            .collect();
        let mut strategy = BTreeMap::new();
        if with_strategies {
            for player in [Player::Even, Player::Odd] {
                for (v, w) in result.strategy(player).iter() {
                    if result.winner(v) == player {
                        strategy.insert(ids[v], ids[w]);
                    }
                }
            }
        }
        SolutionDocument {
            algorithm: Some(algorithm.to_string()),
            seed: None,
            winners,
            strategy,
            stats: Some(result.stats.clone()),
            names: game
                .vertices()
                .filter_map(|v| game.name(v).map(|n| (ids[v], n.to_string())))
                .collect(),
        }
    }

    /// Rebuilds regions and strategies over `game`, whose vertex `v` has id `ids[v]`.
    pub fn to_result(&self, game: &ParityGame, ids: &[u64]) -> Result<SolveResult, SolutionError> {
        let n = game.num_vertices();
        let index: HashMap<u64, VertexIndex> = ids.iter().enumerate().map(|(i, &id)| (id, i)).collect();
        let lookup = |id: u64| index.get(&id).copied().ok_or(SolutionError::UnknownVertex(id));

        let mut winner: Vec<Option<Player>> = vec![None; n];
        for record in &self.winners {
            let v = lookup(record.vertex)?;
            let player = Player::from_index(record.winner as usize).ok_or(SolutionError::BadWinner {
                vertex: record.vertex,
                bit: record.winner,
            })?;
            winner[v] = Some(player);
        }
        if let Some(v) = winner.iter().position(Option::is_none) {
            return Err(SolutionError::MissingWinner(ids[v]));
        }
        let winner: Vec<Player> = winner.into_iter().flatten().collect();

        let mut even_strategy = Strategy::new(Player::Even, n);
        let mut odd_strategy = Strategy::new(Player::Odd, n);
        for (&from, &to) in &self.strategy {
            let v = lookup(from)?;
            let w = lookup(to)?;
            if winner[v] != game.owner(v) {
                return Err(SolutionError::StrategyForLoser(from));
            }
            match game.owner(v) {
                Player::Even => even_strategy.set(v, w),
                Player::Odd => odd_strategy.set(v, w),
            }
        }
        let even_region = VertexSet::from_vertices(n, (0..n).filter(|&v| winner[v] == Player::Even));
        Ok(SolveResult {
            odd_region: even_region.complement(),
            even_region,
            even_strategy,
            odd_strategy,
            measure: None,
            stats: self.stats.clone().unwrap_or_default(),
        })
    }
}

/// PGSolver-style solution text: `paritysol <max id>;` followed by
/// `<id> <winner> [<successor>];` records, ascending by id. Strategy moves
/// are annotated with vertex names where known.
pub fn write_solution(doc: &SolutionDocument) -> String {
    let mut winners: Vec<&WinnerRecord> = doc.winners.iter().collect();
    winners.sort_by_key(|r| r.vertex);
    let max_id = winners.last().map_or(0, |r| r.vertex);
    let mut out = format!("paritysol {max_id};\n");
    if let Some(algorithm) = &doc.algorithm {
        writeln!(out, "-- algorithm {algorithm}").unwrap();
    }
    if let Some(stats) = &doc.stats {
        writeln!(
            out,
            "-- stats lifts={} tops={} sccs={} millis={:.3}",
            stats.lifts, stats.tops, stats.sccs, stats.millis
        )
        .unwrap();
    }
    let label = |id: u64| doc.names.get(&id).cloned().unwrap_or_else(|| id.to_string());
    for record in winners {
        match doc.strategy.get(&record.vertex) {
            Some(&to) => writeln!(
                out,
                "{} {} {}; -- {} -> {}",
                record.vertex,
                record.winner,
                to,
                label(record.vertex),
                label(to)
            )
            .unwrap(),
            None => writeln!(out, "{} {};", record.vertex, record.winner).unwrap(),
        }
    }
    out
}

/// Reads the format written by [`write_solution`]; comments are ignored.
pub fn parse_solution(text: &str) -> Result<SolutionDocument, ParseError> {
    let tokens = tokenize(text)?;
    let mut doc = SolutionDocument::default();
    let mut i = 0;
    let end = Position {
        line: text.split('\n').count(),
        column: 1,
    };
    let at = |i: usize| tokens.get(i).map_or(end, |(_, p)| *p);
    let fail = |i: usize, expected: &'static str| ParseError {
        position: at(i),
        kind: match tokens.get(i) {
            Some((token, _)) => ParseErrorKind::MalformedToken {
                found: format!("{token:?}"),
                expected,
            },
            None => ParseErrorKind::UnexpectedEnd(expected),
        },
    };
    let number = |i: usize, expected: &'static str| match tokens.get(i) {
        Some((Token::Number(n), _)) => Ok(*n),
        _ => Err(fail(i, expected)),
    };

    if matches!(tokens.first(), Some((Token::Word(w), _)) if w == "paritysol") {
        number(1, "a number")?;
        if !matches!(tokens.get(2), Some((Token::Semicolon, _))) {
            return Err(fail(2, "`;`"));
        }
        i = 3;
    }
    while i < tokens.len() {
        let vertex = number(i, "a vertex id")?;
        let bit = number(i + 1, "winner 0 or 1")?;
        if bit > 1 {
            return Err(fail(i + 1, "winner 0 or 1"));
        }
        doc.winners.push(WinnerRecord {
            vertex,
            winner: bit as u8,
        });
        i += 2;
        if let Some((Token::Number(to), _)) = tokens.get(i) {
            doc.strategy.insert(vertex, *to);
            i += 1;
        }
        if !matches!(tokens.get(i), Some((Token::Semicolon, _))) {
            return Err(fail(i, "`;`"));
        }
        i += 1;
    }
    Ok(doc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples::six_vertex_example;
    use crate::solvers::{solve_with_strategies, LiftPolicy};
    use crate::verify::check_partition;

    #[test]
    fn example_solution_text() {
        let game = six_vertex_example();
        let ids: Vec<u64> = (0..6).collect();
        let result = solve_with_strategies(&game, LiftPolicy::Worklist);
        let doc = SolutionDocument::from_result(&game, &ids, &result, "spm-within", true);
        let text = write_solution(&doc);
        assert!(text.contains("3 1 5; -- v4 -> v6"), "{text}");
        assert!(text.contains("1 0 0; -- v2 -> v1"), "{text}");

        let back = parse_solution(&text).unwrap();
        assert_eq!(back.winners, doc.winners);
        assert_eq!(back.strategy, doc.strategy);
        let rebuilt = back.to_result(&game, &ids).unwrap();
        assert!(check_partition(&game, &rebuilt).passed());
    }

    #[test]
    fn rejects_inconsistent_solutions() {
        let game = six_vertex_example();
        let ids: Vec<u64> = (0..6).collect();
        let doc = parse_solution("0 0; 1 0; 2 0; 3 1; 4 1;").unwrap();
        assert_eq!(doc.to_result(&game, &ids).unwrap_err(), SolutionError::MissingWinner(5));
        let doc = parse_solution("0 0; 1 0; 2 0; 3 1; 4 1; 5 1; 9 0;").unwrap();
        assert_eq!(doc.to_result(&game, &ids).unwrap_err(), SolutionError::UnknownVertex(9));
        let doc = parse_solution("0 0; 1 1 0; 2 0; 3 1; 4 1; 5 1;").unwrap();
        assert_eq!(doc.to_result(&game, &ids).unwrap_err(), SolutionError::StrategyForLoser(1));
        assert!(parse_solution("0 2;").is_err());
        assert!(parse_solution("0 1 3").is_err());
    }
}
