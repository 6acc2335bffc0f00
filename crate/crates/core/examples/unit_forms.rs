//! Building a unit form by hand, evaluating it and applying reflections.

use titsform::{IntVector, UnitForm};

fn main() -> titsform::Result<()> {
    // Dynkin A3: 1 - 2 - 3.
    let q = UnitForm::from_edges(3, &[(0, 1, -1), (1, 2, -1)])?;
    let v = IntVector::new(vec![1, 1, 1]);
    println!("q{v} = {}", q.evaluate(&v)?);
    println!("pairings q(v, e_i) = {:?}", q.pairings(&v)?);

    let mut x = IntVector::unit(3, 0);
    for i in [1, 2] {
        x = q.reflect(&x, i)?;
        println!("after s_{}: {x}, q = {}", i + 1, q.evaluate(&x)?);
    }

    let w = IntVector::new(vec![2, 1, 0]);
    println!("q(v, w) = {}", q.bilinear(&v, &w)?);
    println!("Gram matrix: {:?}", q.gram());
    Ok(())
}
