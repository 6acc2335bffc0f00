//! The finite root system of a weakly positive form.

use titsform::classify::ClassifyConfig;
use titsform::fixtures;
use titsform::roots::RootAnalyzer;

fn main() -> titsform::Result<()> {
    let a = RootAnalyzer::new(fixtures::load("two_maximal.form")?.form(), ClassifyConfig::default())?;
    let roots = a.positive_roots()?;
    println!("{} positive roots", roots.len());
    for v in roots.iter().filter(|v| v.is_omnipresent()) {
        let r = a.analyze(v)?;
        if r.locally_maximal {
            println!("{v}: maximal = {}, exceptional = {:?}", r.maximal, r.exceptional.map(|e| (e.case, e.indices)));
        }
    }
    Ok(())
}
