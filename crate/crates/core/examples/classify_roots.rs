//! Classifies dimension vectors on star-shaped graphs as real roots, imaginary
//! roots or non-roots, and prints `p(alpha) = 1 - q(alpha)`.
//!
//! ```text
//! cargo run --example classify_roots
//! ```

use dsforge::roots::{classify, p, DimVector, Weights};

fn main() -> dsforge::Result<()> {
    let cases: [(&[usize], &[i64]); 6] = [
        (&[2, 2, 2], &[1, 0, 0, 0]),
        (&[2, 2, 2], &[2, 1, 1, 1]),
        (&[2, 2, 2], &[3, 1, 1, 1]),
        (&[2, 2, 2, 2], &[2, 1, 1, 1, 1]),
        (&[3, 3, 3], &[3, 2, 1, 2, 1, 2, 1]),
        (&[6, 3, 2], &[6, 5, 4, 3, 2, 1, 4, 2, 3]),
    ];
    for (w, flat) in cases {
        let weights = Weights::new(w.to_vec())?;
        let alpha = DimVector::from_flat(&weights, flat)?;
        let class = classify(&weights, &alpha)?;
        println!(
            "w = {w:?}  alpha = {alpha}  ->  {:?}, strict = {}, p = {}",
            class.tag,
            class.strict,
            p(&weights, &alpha)?
        );
    }
    Ok(())
}
