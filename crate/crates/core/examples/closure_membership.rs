//! Orbit-closure membership by rank conditions, with an explicit flag
//! certificate that can be re-checked independently.
//!
//! ```text
//! cargo run --example closure_membership
//! ```

use dsforge::classes::{class_from_jordan, JordanBlock, JordanForm};
use dsforge::closure::{build_triple, closure_contains, gh_leq, verify_triple};
use dsforge::Scalar;

fn form(blocks: &[(i64, usize)]) -> JordanForm {
    JordanForm::new(
        blocks
            .iter()
            .map(|&(e, size)| JordanBlock { eigenvalue: Scalar::from_int(e), size, count: 1 })
            .collect(),
    )
}

fn main() -> dsforge::Result<()> {
    // Nilpotent 4x4 forms: (3,1) degenerates to (2,2) but not the other way.
    let a = form(&[(0, 3), (0, 1)]);
    let b = form(&[(0, 2), (0, 2)]);
    println!("(2,2) in closure of (3,1): {}", gh_leq(&a, &b)?);
    println!("(3,1) in closure of (2,2): {}", gh_leq(&b, &a)?);

    // Mixed eigenvalues: a 2x2 block for 1 plus -1, against the semisimple form.
    let c = class_from_jordan(&form(&[(1, 2), (-1, 1)]), None)?;
    let m = form(&[(1, 1), (1, 1), (-1, 1)]).representative();
    println!("class: eigenvalues {:?}, dims {:?}", c.eigenvalues.iter().map(ToString::to_string).collect::<Vec<_>>(), c.dims);
    println!("diag(1, 1, -1) in closure: {}", closure_contains(&c, &m)?);

    let cert = build_triple(&c, &m)?;
    println!("certificate dims {:?}, reductions {:?}", cert.dims, cert.reductions);
    println!("certificate verifies: {}", verify_triple(&cert, &m, &c.eigenvalues)?);
    Ok(())
}
