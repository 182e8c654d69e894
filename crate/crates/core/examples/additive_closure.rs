//! The additive problem `A_1 + ... + A_k = 0` with rational eigenvalues.
//!
//! ```text
//! cargo run --example additive_closure
//! ```

use dsforge::classes::ClassSpec;
use dsforge::solver::{decide_closure_additive, Problem};
use dsforge::Scalar;

fn class(eigs: &[i64], dims: &[usize]) -> dsforge::Result<ClassSpec> {
    ClassSpec::new(eigs.iter().map(|&e| Scalar::from_int(e)).collect(), dims.to_vec())
}

fn main() -> dsforge::Result<()> {
    let cases = [
        ("traces sum to 0", vec![class(&[1, -1], &[2, 1])?, class(&[2, -2], &[2, 1])?, class(&[3, -3], &[2, 1])?]),
        ("traces sum to 1", vec![class(&[1, 0], &[2, 1])?, class(&[2, -2], &[2, 1])?, class(&[3, -3], &[2, 1])?]),
        ("two nilpotent 2x2 blocks", vec![class(&[0, 0], &[2, 1])?, class(&[0, 0], &[2, 1])?]),
        ("scalar 1 against nilpotent", vec![class(&[1], &[2])?, class(&[0, 0], &[2, 1])?]),
    ];
    for (name, classes) in cases {
        let p = Problem::new(classes)?;
        let v = decide_closure_additive(&p)?;
        println!("{name}: alpha = {}, {:?} ({})", p.alpha(), v.answer, v.reason);
    }
    Ok(())
}
