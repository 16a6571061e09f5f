//! Minimal tour: compose two pin maps in superposed orders, measure the
//! control, and see where work extraction switches on.

use ergoswitch_core::ergotropy::daemonic_ergotropy;
use ergoswitch_core::scenarios::{closed_form, product_input, switched_pin_maps};
use ergoswitch_core::thermo::Hamiltonian;

fn main() {
    let beta = 0.5; // maps
    let sc = switched_pin_maps(beta, 2).unwrap();
    let h = Hamiltonian::qubit();

    println!(
        "maps at beta = {beta}; activation needs beta_in > {}",
        2.0 * beta
    );
    println!(
        "{:>8} {:>14} {:>14}",
        "beta_in", "W_d (pipeline)", "W_d (closed)"
    );
    for k in 0..=8 {
        let beta_in = 0.25 * k as f64;
        let joint = product_input(beta_in, 2).unwrap();
        let out = sc.apply(&joint).unwrap();
        let report = daemonic_ergotropy(&out, 2, 2, &h, None).unwrap();
        let closed = closed_form::w_d_product(beta_in, beta, 2);
        println!("{beta_in:>8.2} {:>14.9} {:>14.9}", report.value, closed);
    }
}
