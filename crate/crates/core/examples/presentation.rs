//! Parsing a bound quiver and reading off its Tits form.

use titsform::{parse_presentation, IntVector};

const TEXT: &str = "
# A commutative square.
[quiver]
vertex a
vertex b
vertex c
vertex d
arrow x: a -> b
arrow y: b -> d
arrow u: a -> c
arrow w: c -> d
[relations]
rel square: x.y - u.w
";

fn main() -> titsform::Result<()> {
    let p = parse_presentation(TEXT)?;
    let q = p.tits_form();
    println!("vertices: {:?}", p.quiver().vertices());
    for (i, j, c) in q.edges() {
        println!("q_{i}{j} = {c}");
    }
    let dim = IntVector::new(vec![1, 1, 1, 1]);
    println!("<d, d> = {} = q(d) = {}", p.euler_bilinear(&dim, &dim)?, q.evaluate(&dim)?);
    println!("{}", serde_json::to_string_pretty(&p.to_json()).expect("serializable"));
    Ok(())
}
