//! Searching for indecomposable representations over small prime fields.

use std::sync::Arc;

use titsform::fixtures;
use titsform::realize::{self, SearchConfig, SearchMode};
use titsform::IntVector;

fn main() -> titsform::Result<()> {
    let b11 = Arc::new(fixtures::load("b11.quiver")?.presentation().expect("quiver").clone());
    let ones = IntVector::new(vec![1; b11.n()]);
    let out = realize::search_realization(b11, &ones, &SearchConfig::default())?;
    let rep = out.realization.expect("all ones is realizable");
    println!("B11, dimension {ones}: {}", serde_json::to_string(&rep.to_json()).expect("serializable"));

    let doc = fixtures::load("b01.quiver")?;
    let b01 = Arc::new(doc.presentation().expect("quiver").clone());
    let y = doc.vector("y").expect("fixture vector");
    let family = realize::search_all(b01.clone(), y, 2, 10)?;
    println!("B01, dimension {y}: {} isomorphism classes over F_2", family.len());

    let random = SearchConfig {
        p: 5,
        mode: SearchMode::Random { samples: 500, seed: 11 },
        threads: 1,
    };
    let out = realize::search_realization(b01, y, &random)?;
    println!("B01 over F_5, random mode: found = {}", out.realization.is_some());
    Ok(())
}
