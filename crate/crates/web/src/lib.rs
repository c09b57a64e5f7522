//! wasm-bindgen bindings for the static demo page in `www/`.
//!
//! Every exported function takes and returns JSON strings. The plain-Rust
//! versions in [`api`] do the work and are what the native tests call.

use wasm_bindgen::prelude::*;

pub mod api {
    use serde::Serialize;
    use symnorm::homology::HomologyEngine;
    use symnorm::l1opt::NormSolver;
    use symnorm::rational::format_q;
    use symnorm::symm::Symmetriser;
    use symnorm::{corpus, Chain, SimplicialComplex};

    pub type Result<T> = std::result::Result<T, String>;

    /// Kept low so the page stays responsive.
    pub const DEMO_CAP: usize = 4;

    fn complex(json: &str) -> Result<SimplicialComplex> {
        SimplicialComplex::load(json).map_err(|e| e.to_string())
    }

    pub fn corpus_names() -> String {
        let names: Vec<&str> = corpus::ALL.iter().map(|(s, _)| *s).collect();
        serde_json::to_string(&names).unwrap()
    }

    pub fn corpus_complex(stem: &str) -> Result<String> {
        corpus::ALL
            .iter()
            .find(|(s, _)| *s == stem)
            .map(|(_, doc)| doc.to_string())
            .ok_or_else(|| format!("no bundled complex named {stem}"))
    }

    #[derive(Serialize)]
    struct Betti {
        name: String,
        faces: usize,
        betti: Vec<usize>,
    }

    pub fn betti_numbers(complex_json: &str) -> Result<String> {
        let k = complex(complex_json)?;
        let h = HomologyEngine::with_cap(&k, DEMO_CAP);
        let top = k.dimension().min(DEMO_CAP - 1);
        let betti = (0..=top)
            .map(|n| h.betti(n))
            .collect::<symnorm::Result<Vec<_>>>()
            .map_err(|e| e.to_string())?;
        Ok(serde_json::to_string(&Betti {
            name: k.name().to_string(),
            faces: k.face_count(),
            betti,
        })
        .unwrap())
    }

    pub fn symmetrise(complex_json: &str, chain_json: &str) -> Result<String> {
        let k = complex(complex_json)?;
        let c = Chain::from_json(chain_json, None).map_err(|e| e.to_string())?;
        c.validate(&k).map_err(|e| e.to_string())?;
        let s = Symmetriser::new(DEMO_CAP)
            .symmetrise(&c)
            .map_err(|e| e.to_string())?;
        Ok(s.to_json())
    }

    #[derive(Serialize)]
    struct Seminorms {
        dim: usize,
        generator: usize,
        generators: usize,
        seminorm: String,
        normalised_seminorm: String,
        equal: bool,
        optimal_chain: String,
        optimal_normalised_chain: String,
    }

    pub fn seminorms(complex_json: &str, dim: usize, generator: usize) -> Result<String> {
        let k = complex(complex_json)?;
        let solver = NormSolver::with_cap(&k, DEMO_CAP);
        let gens = solver.homology().generators(dim).map_err(|e| e.to_string())?;
        let c = gens.get(generator).ok_or_else(|| {
            format!("H_{dim} has {} generators, asked for {generator}", gens.len())
        })?;
        let report = solver.verify_equality(c).map_err(|e| e.to_string())?;
        Ok(serde_json::to_string(&Seminorms {
            dim,
            generator,
            generators: gens.len(),
            seminorm: format_q(&report.seminorm),
            normalised_seminorm: format_q(&report.normalised_seminorm),
            equal: report.seminorm == report.normalised_seminorm,
            optimal_chain: report.optimal_chain.to_string(),
            optimal_normalised_chain: report.optimal_normalised_chain.to_string(),
        })
        .unwrap())
    }
}

fn js(r: api::Result<String>) -> Result<String, JsError> {
    r.map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = corpusNames)]
pub fn corpus_names() -> String {
    api::corpus_names()
}

#[wasm_bindgen(js_name = corpusComplex)]
pub fn corpus_complex(stem: &str) -> Result<String, JsError> {
    js(api::corpus_complex(stem))
}

#[wasm_bindgen(js_name = bettiNumbers)]
pub fn betti_numbers(complex_json: &str) -> Result<String, JsError> {
    js(api::betti_numbers(complex_json))
}

#[wasm_bindgen]
pub fn symmetrise(complex_json: &str, chain_json: &str) -> Result<String, JsError> {
    js(api::symmetrise(complex_json, chain_json))
}

#[wasm_bindgen]
pub fn seminorms(complex_json: &str, dim: usize, generator: usize) -> Result<String, JsError> {
    js(api::seminorms(complex_json, dim, generator))
}
