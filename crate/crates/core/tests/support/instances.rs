//! The class instances whose semi-norms are pinned in `golden/seminorms.json`:
//! every homology generator in dimensions 1 and 2 of the bundled complexes,
//! plus seeded random rational combinations of them.

#![allow(dead_code)]

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use symnorm::chain::ChainTerm;
use symnorm::homology::HomologyEngine;
use symnorm::rational::{format_q, q};
use symnorm::{corpus, Chain, Q, SimplicialComplex};

pub const COMBINATIONS: usize = 20;
pub const SEED: u64 = 0x5eed_0001;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Golden {
    pub complex: String,
    pub dim: usize,
    pub label: String,
    pub representative: Vec<ChainTerm>,
    pub seminorm: String,
    pub normalised_seminorm: String,
}

pub struct Instance {
    pub complex: &'static str,
    pub dim: usize,
    pub label: String,
    pub representative: Chain,
}

fn random_q(rng: &mut ChaCha8Rng) -> Q {
    q(rng.gen_range(-6..=6), rng.gen_range(1..=5))
}

/// Generators, then `COMBINATIONS` random combinations spread round-robin
/// over the `(complex, dim)` groups with non-trivial homology.
pub fn instances() -> Vec<(Instance, SimplicialComplex)> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut out = Vec::new();
    let mut groups = Vec::new();
    for (stem, k) in corpus::all() {
        let h = HomologyEngine::new(&k);
        for dim in [1, 2] {
            let gens = h.generators(dim).unwrap();
            for (i, g) in gens.iter().enumerate() {
                out.push((
                    Instance {
                        complex: stem,
                        dim,
                        label: format!("generator {i}"),
                        representative: g.clone(),
                    },
                    k.clone(),
                ));
            }
            if !gens.is_empty() {
                groups.push((stem, dim, gens, k.clone()));
            }
        }
    }
    for i in 0..COMBINATIONS {
        let (stem, dim, gens, k) = &groups[i % groups.len()];
        let scalars: Vec<Q> = loop {
            let s: Vec<Q> = gens.iter().map(|_| random_q(&mut rng)).collect();
            if s.iter().any(|x| !x.is_zero()) {
                break s;
            }
        };
        let rep = Chain::linear_combine(*dim, &scalars, gens).unwrap();
        let label = format!(
            "combination {i}: [{}]",
            scalars.iter().map(format_q).collect::<Vec<_>>().join(", ")
        );
        out.push((
            Instance {
                complex: stem,
                dim: *dim,
                label,
                representative: rep,
            },
            k.clone(),
        ));
    }
    out
}

pub fn golden_path() -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../core/tests/golden/seminorms.json")
}

pub fn load_golden() -> Vec<Golden> {
    let text = std::fs::read_to_string(golden_path()).expect("golden file present");
    serde_json::from_str(&text).expect("golden file parses")
}
