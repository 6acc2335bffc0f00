//! A full analysis report, serialized and re-verified.

use titsform::classify::ClassifyConfig;
use titsform::fixtures;
use titsform::report::AnalysisReport;

fn main() -> titsform::Result<()> {
    let cfg = ClassifyConfig::default();
    let r = AnalysisReport::build(&fixtures::load("exceptional_pair.quiver")?, &cfg)?;
    let text = serde_json::to_string_pretty(&r).expect("serializable");
    let back: AnalysisReport = serde_json::from_str(&text).expect("round trip");
    back.verify(&cfg)?;
    println!("{text}");
    Ok(())
}
