//! Negative vectors attached to slender hypercritical forms: the all-pairs
//! form on four vertices, and a hypercritical restriction found by the scan.

use titsform::classify::{self, ClassifyConfig};
use titsform::fixtures;

fn main() -> titsform::Result<()> {
    let cfg = ClassifyConfig::default();

    let q = fixtures::load("q_m.quiver")?.form();
    let h = classify::hypercritical_witnesses(&q, &cfg)?;
    println!("q_M: v = {} (q = {}), w = {} (q = {})", h.v, q.evaluate(&h.v)?, h.w, q.evaluate(&h.w)?);

    let q = fixtures::load("commutative_eleven.quiver")?.form();
    let subsets = classify::hypercritical_restrictions(&q, &cfg)?;
    println!("{} hypercritical restrictions in the eleven-vertex form", subsets.len());
    let j = &subsets[0];
    let r = q.restrict(j)?;
    let h = classify::hypercritical_witnesses(&r, &cfg)?;
    println!("J = {j:?}: v = {} (q = {}), w = {} (q = {})", h.v, r.evaluate(&h.v)?, h.w, r.evaluate(&h.w)?);
    Ok(())
}
