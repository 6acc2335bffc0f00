//! Weak positivity and weak non-negativity verdicts with their witnesses.

use titsform::classify::{self, ClassifyConfig};
use titsform::fixtures;

fn main() -> titsform::Result<()> {
    let cfg = ClassifyConfig::default();
    for name in ["a3.form", "kronecker2.form", "kronecker3.form", "b11.quiver", "commutative_eleven.quiver"] {
        let q = fixtures::load(name)?.form();
        let r = classify::is_weakly_nonnegative(&q, &cfg)?;
        print!("{name:28} {}", r.verdict);
        if let (Some(w), Some(val)) = (&r.witness, r.witness_value) {
            print!("  witness {w}, q = {val}");
        }
        println!();
        for c in &r.critical {
            println!("    critical J = {:?}, z = {}", c.subset, c.vector);
        }
    }
    Ok(())
}
