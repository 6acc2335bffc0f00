//! Tits form of the quotient by a vertex against the restricted form.

use titsform::fixtures;

fn main() -> titsform::Result<()> {
    for name in ["b10.quiver", "b11.quiver"] {
        let p = fixtures::load(name)?.presentation().expect("quiver fixture").clone();
        let m = p.quiver().vertex_index("m").expect("vertex m");
        let bar = p.quotient_by_vertex("m")?;
        let rest: Vec<usize> = (0..p.n()).filter(|&i| i != m).collect();
        let restricted = p.tits_form().restrict(&rest)?;
        let qbar = bar.tits_form();
        let names = bar.quiver().vertices();
        println!("{name}: {} relations left after killing m", bar.relations().len());
        for i in 0..rest.len() {
            for j in i + 1..rest.len() {
                if qbar.coeff(i, j) != restricted.coeff(i, j) {
                    println!("  ({}, {}): restriction {}, quotient {}", names[i], names[j], restricted.coeff(i, j), qbar.coeff(i, j));
                }
            }
        }
    }
    Ok(())
}
