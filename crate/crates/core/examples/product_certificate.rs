//! The determinant test `det(A - tB)` for a pair of maps between homologies.

use l2betti::sutured::{product_certificate, ProductCertificateInput};

fn main() -> l2betti::Result<()> {
    let cases = [
        ("identity pair", vec![vec![1, 0], vec![0, 1]], vec![vec![1, 0], vec![0, 1]]),
        ("shear", vec![vec![1, 1], vec![0, 1]], vec![vec![2, 0], vec![1, 1]]),
        ("all ones", vec![vec![1, 1], vec![1, 1]], vec![vec![1, 1], vec![1, 1]]),
    ];
    for (name, a, b) in cases {
        let rep = product_certificate(&ProductCertificateInput::from_i64(vec![(a, b)]))?;
        println!("{name:<14} det(A - tB) = {:<20} certified: {}", rep.determinants[0].to_string(), rep.certified);
    }
    Ok(())
}
