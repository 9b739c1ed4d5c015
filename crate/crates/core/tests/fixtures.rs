use std::fs;
use std::path::PathBuf;

use spm_core::io::{parse_pgsolver, to_game, write_pgsolver};
use spm_core::play::zielonka;
use spm_core::solvers::{espm, solve_with_strategies, spm};
use spm_core::verify::check_partition;
use spm_core::LiftPolicy;

fn fixtures() -> Vec<PathBuf> {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/fixtures");
    let mut files: Vec<PathBuf> = fs::read_dir(dir).unwrap().map(|e| e.unwrap().path()).collect();
    files.sort();
    files
}

#[test]
fn fixtures_are_canonical() {
    let files = fixtures();
    assert_eq!(files.len(), 50);
    for path in files {
        let text = fs::read_to_string(&path).unwrap();
        let doc = parse_pgsolver(&text).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        assert_eq!(write_pgsolver(&doc), text, "{}", path.display());
    }
}

#[test]
fn fixtures_solve_consistently() {
    for path in fixtures() {
        let (game, _) = to_game(&parse_pgsolver(&fs::read_to_string(&path).unwrap()).unwrap()).unwrap();
        let reference = zielonka(&game).even_region;
        for result in [
            spm(&game, LiftPolicy::Worklist),
            espm(&game, LiftPolicy::RoundRobin),
            solve_with_strategies(&game, LiftPolicy::Random { seed: 7 }),
        ] {
            assert_eq!(result.even_region, reference, "{}", path.display());
        }
        let within = solve_with_strategies(&game, LiftPolicy::Worklist);
        assert!(check_partition(&game, &within).passed(), "{}", path.display());
    }
}

#[test]
fn sparse_ids_and_escapes() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/fixtures/sparse_ids.gm");
    let doc = parse_pgsolver(&fs::read_to_string(path).unwrap()).unwrap();
    assert_eq!(doc.start, Some(7));
    let (game, ids) = to_game(&doc).unwrap();
    assert_eq!(ids, [3, 7, 12, 40]);
    assert_eq!(game.name(0), Some("say \"hi\""));
    assert_eq!(game.name(1), Some("back\\slash"));
    assert_eq!(game.successors(3), [0, 1, 2]);
}
