//! Picks roots of unity whose bracket is 1 on a box exactly at multiples of a
//! chosen dimension vector, then decides rigidity for the resulting classes.
//!
//! ```text
//! cargo run --example generic_eigenvalues
//! ```

use dsforge::roots::{DimVector, Weights};
use dsforge::solver::{decide_rigid, generic_xi, Problem};

fn main() -> dsforge::Result<()> {
    let w = Weights::new(vec![3, 3, 2])?;
    let alpha = DimVector::from_flat(&w, &[3, 2, 1, 2, 1, 1])?;
    let g = generic_xi(&w, &alpha, &alpha.scale(2), None, 7)?;
    println!("N = {}, exponents {:?}", g.order, g.exponents);
    println!("box points checked: {}", g.points_checked);
    println!("multiples of alpha in the box: {}", g.multiples_in_box.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "));

    let p = Problem::from_type(g.t, alpha)?;
    let v = decide_rigid(&p)?;
    println!("rigid irreducible solution: {:?} ({})", v.answer, v.reason);
    Ok(())
}
