#![allow(dead_code)]

use spm_core::io::{generate, to_game, Family};
use spm_core::ParityGame;

/// Seeded random games with `1..=max_n` vertices and `1..=max_d` priorities.
pub fn corpus(count: usize, max_n: usize, max_d: u32, salt: u64) -> Vec<ParityGame> {
    (0..count)
        .map(|i| {
            let n = 1 + i % max_n;
            let d = 1 + (i / max_n) as u32 % max_d;
            let max_out = 1 + (i / 3) % n.min(4);
            let family = Family::Random {
                n,
                d,
                min_out: 1,
                max_out,
            };
            let doc = generate(family, salt.wrapping_mul(1_000_003) + i as u64).expect("valid family");
            to_game(&doc).expect("generated games are total").0
        })
        .collect()
}
