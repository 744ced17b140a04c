//! Entropy and mutual information over discrete symbols.
//!
//! Demonstrates the histogram estimators on hand-sized inputs and checks
//! the two MI routes (entropy identity vs direct double sum) against each
//! other.
//!
//! Run: cargo run --example mutual_information

use hyperspec::info_theory::{
    entropy, joint_entropy, mutual_information, mutual_information_direct, Histogram1D,
    JointHistogram,
};

fn main() -> hyperspec::Result<()> {
    // a fair coin carries one bit
    let fair = Histogram1D::from_counts(vec![1, 1]);
    println!("H(fair coin)        = {:.6} bits", entropy(&fair)?);

    // a 1:3 biased coin carries less
    let biased = Histogram1D::from_counts(vec![1, 3]);
    println!("H(1:3 biased coin)  = {:.6} bits", entropy(&biased)?);

    // joint distribution with correlated cells
    let joint = JointHistogram::from_grid(&[vec![4, 1], vec![1, 4]]);
    println!("H(X, Y)             = {:.6} bits", joint_entropy(&joint)?);

    // MI of paired sequences through both routes
    let x = [0u32, 0, 0, 0, 0, 1, 1, 1, 1, 1];
    let y = [0u32, 0, 0, 0, 1, 0, 1, 1, 1, 1];
    let eq_entropy = mutual_information(&x, &y)?;
    let eq_direct = mutual_information_direct(&x, &y)?;
    println!("\nI(X, Y) entropy route = {eq_entropy:.12} bits");
    println!("I(X, Y) direct route  = {eq_direct:.12} bits");
    println!("route difference      = {:.3e}", (eq_entropy - eq_direct).abs());

    // independent pairing carries no information
    let indep_x = [0u32, 0, 1, 1];
    let indep_y = [0u32, 1, 0, 1];
    println!(
        "\nI(independent pairing) = {} bits",
        mutual_information(&indep_x, &indep_y)?
    );

    // identical sequences: MI collapses to the entropy
    let z = [0u32, 1, 2, 0, 1, 2];
    let self_mi = mutual_information(&z, &z)?;
    let h = entropy(&Histogram1D::from_symbols(&z))?;
    println!("I(Z, Z) = {self_mi:.6} bits = H(Z) = {h:.6} bits");
    Ok(())
}
