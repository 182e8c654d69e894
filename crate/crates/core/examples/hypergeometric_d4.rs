//! Rank-2 tuples on the D4 graph: three 2x2 classes with distinct eigenvalue
//! pairs admit a solution exactly when the product of all eigenvalues is 1.
//!
//! ```text
//! cargo run --example hypergeometric_d4
//! ```

use dsforge::classes::ClassSpec;
use dsforge::solver::{decide_closure_multiplicative, verify_solution, Problem, VerifyMode};
use dsforge::Scalar;

fn classes(exponents: [[i64; 2]; 3]) -> dsforge::Result<Vec<ClassSpec>> {
    exponents
        .iter()
        .map(|&[a, b]| ClassSpec::new(vec![Scalar::root_of_unity(12, a)?, Scalar::root_of_unity(12, b)?], vec![2, 1]))
        .collect()
}

fn main() -> dsforge::Result<()> {
    for exps in [[[1, 2], [3, 4], [0, 2]], [[1, 2], [3, 4], [0, 3]]] {
        let p = Problem::new(classes(exps)?)?;
        let v = decide_closure_multiplicative(&p)?;
        let sum: i64 = exps.iter().flatten().sum();
        println!("exponents of z12 {exps:?} (sum {sum}): {:?} -- {}", v.answer, v.reason);
        if let Some(c) = &v.construction {
            for (i, m) in c.mats.iter().enumerate() {
                println!("  A_{} = {:?}", i + 1, m.to_rows().iter().map(|r| r.iter().map(ToString::to_string).collect::<Vec<_>>()).collect::<Vec<_>>());
            }
            println!("  verified: {}", verify_solution(&c.mats, &p, VerifyMode::Closure)?.ok);
        }
    }
    Ok(())
}
