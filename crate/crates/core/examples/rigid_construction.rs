//! Builds the rigid irreducible 3x3 tuple with two regular semisimple classes
//! and one pseudo-reflection, then checks it with both vertex orders.
//!
//! ```text
//! cargo run --example rigid_construction
//! ```

use dsforge::classes::ClassSpec;
use dsforge::linalg::{generated_algebra_dim, hom_space};
use dsforge::solver::{construct_rigid, decide_rigid, verify_solution, Problem, VerifyMode, VertexOrder};
use dsforge::parse_scalar;

fn class(eigs: &[&str], dims: &[usize]) -> dsforge::Result<ClassSpec> {
    ClassSpec::new(eigs.iter().map(|e| parse_scalar(e)).collect::<dsforge::Result<_>>()?, dims.to_vec())
}

fn main() -> dsforge::Result<()> {
    let p = Problem::new(vec![
        class(&["z9", "z9^2", "z9^4"], &[3, 2, 1])?,
        class(&["z4", "z4^3", "1"], &[3, 2, 1])?,
        class(&["1", "z9^2"], &[3, 1])?,
    ])?;
    println!("dimension vector {}", p.alpha());
    let verdict = decide_rigid(&p)?;
    println!("rigid solution exists: {:?} ({})", verdict.answer, verdict.reason);

    let a = construct_rigid(&p, VertexOrder::CenterFirst)?;
    let b = construct_rigid(&p, VertexOrder::ArmsFirst)?;
    for (name, rep) in [("center first", &a), ("arms first", &b)] {
        let report = verify_solution(rep.mats(), &p, VerifyMode::Exact)?;
        println!("{name}: product and classes ok = {}, algebra dim = {}", report.ok, generated_algebra_dim(rep.mats())?);
    }
    println!("isomorphic: {}", hom_space(a.mats(), b.mats())?.isomorphism.is_isomorphic());
    Ok(())
}
