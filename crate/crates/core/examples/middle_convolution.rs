//! Middle convolution of a rigid 2x2 triple: the dimension jumps as the type
//! predicts, and convolving twice returns an isomorphic representation.
//!
//! ```text
//! cargo run --example middle_convolution
//! ```

use dsforge::classes::ClassSpec;
use dsforge::convolution::{collapsing_status, convolve, r0_prime};
use dsforge::linalg::hom_space;
use dsforge::solver::{construct_rigid, Problem, VertexOrder};
use dsforge::Scalar;

fn main() -> dsforge::Result<()> {
    let z = |k| Scalar::root_of_unity(12, k);
    let p = Problem::new(vec![
        ClassSpec::new(vec![z(1)?, z(2)?], vec![2, 1])?,
        ClassSpec::new(vec![z(3)?, z(4)?], vec![2, 1])?,
        ClassSpec::new(vec![z(0)?, z(2)?], vec![2, 1])?,
    ])?;
    let t = p.type_data();
    let rep = construct_rigid(&p, VertexOrder::CenterFirst)?;
    println!("start: dim {}, dimension vector {}", rep.dim(), rep.dimension_vector(t)?);
    println!("lambda = prod of first eigenvalues = {}", t.first_product());
    println!("noncollapsing: {}", collapsing_status(&rep, t)?.is_noncollapsing());

    let (conv, t2) = convolve(&rep, t)?;
    assert_eq!(t2, r0_prime(t)?);
    println!("after R_0: dim {}, dimension vector {}", conv.dim(), conv.dimension_vector(&t2)?);
    for (i, row) in t2.rows.iter().enumerate() {
        println!("  arm {}: {:?}", i + 1, row.iter().map(ToString::to_string).collect::<Vec<_>>());
    }

    let (back, t3) = convolve(&conv, &t2)?;
    println!("twice: dim {}, type restored {}", back.dim(), &t3 == t);
    println!("isomorphic to start: {}", hom_space(back.mats(), rep.mats())?.isomorphism.is_isomorphic());
    Ok(())
}
