//! Omnipresent roots of weakly non-negative forms: local maximality,
//! maximality and exceptional indices.

use titsform::classify::ClassifyConfig;
use titsform::fixtures;
use titsform::roots::RootAnalyzer;

fn main() -> titsform::Result<()> {
    let cfg = ClassifyConfig::default();
    for name in ["maximal_twelve.form", "single_exceptional.quiver", "locally_maximal.quiver"] {
        let doc = fixtures::load(name)?;
        let labels = doc.labels();
        let a = RootAnalyzer::new(doc.form(), cfg)?;
        println!("{name} ({})", a.verdict());
        for (vname, v) in &doc.vectors {
            let r = a.analyze(v)?;
            let e = r
                .exceptional
                .map(|e| format!("case {:?} at {:?}", e.case, e.indices.iter().map(|&i| &labels[i]).collect::<Vec<_>>()))
                .unwrap_or_default();
            println!("  {vname} = {v}: locally maximal {}, maximal {} {e}", r.locally_maximal, r.maximal);
        }
        let o = a.omnipresent_roots()?;
        println!("  {} omnipresent roots with coordinates up to 12, complete: {}", o.roots.len(), o.complete);
    }
    Ok(())
}
