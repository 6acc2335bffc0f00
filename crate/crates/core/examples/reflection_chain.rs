//! Reflection chains: a root y below v reached by simple reflections, with an
//! anisotropic interval and q(v - y) = 0.

use titsform::classify::ClassifyConfig;
use titsform::fixtures;
use titsform::roots::RootAnalyzer;
use titsform::Error;

fn main() -> titsform::Result<()> {
    let cfg = ClassifyConfig::default();
    for name in ["commutative_eleven.quiver", "single_exceptional.quiver", "two_exceptional_chain.form"] {
        let doc = fixtures::load(name)?;
        let v = doc.vector("v").expect("fixture vector");
        let a = RootAnalyzer::new(doc.form(), cfg)?;
        match a.reflection_chain(v) {
            Ok(c) => {
                a.check_chain(v, &c)?;
                println!("{name}: start {}, sequence {:?}, y = {}", c.start, c.sequence, c.root);
            }
            Err(e @ Error::NoReflectionChain(_)) => println!("{name}: {e}"),
            Err(e) => return Err(e),
        }
    }
    Ok(())
}
