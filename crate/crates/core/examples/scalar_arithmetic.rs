//! Exact arithmetic with roots of unity: parsing, mixed field orders, inverses.
//!
//! ```text
//! cargo run --example scalar_arithmetic
//! ```

use dsforge::{parse_scalar, Scalar};

fn main() -> dsforge::Result<()> {
    let a = parse_scalar("z3 + 2*z4^3")?;
    let b = parse_scalar("1/2 - z12^5")?;
    println!("a = {a}   (lives in Q(zeta_{}))", a.order());
    println!("b = {b}   (lives in Q(zeta_{}))", b.order());

    let prod = &a * &b;
    println!("a * b = {prod}");
    let inv = a.inv()?;
    println!("1 / a = {inv}");
    assert!((&a * &inv).is_one());

    // Sums of all N-th roots of unity vanish.
    let mut total = Scalar::zero();
    for k in 0..7 {
        total = &total + &Scalar::root_of_unity(7, k)?;
    }
    println!("1 + z7 + ... + z7^6 = {total}");
    Ok(())
}
