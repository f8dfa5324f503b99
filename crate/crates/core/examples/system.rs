//! Builds the Coxeter system for a few `(n, m)` and prints its matrices.
//!
//! ```text
//! cargo run --example system -- 3 3
//! ```

use movcone::group::{psi_matrix, EigenData};
use movcone::{group, CoxeterSystem};

fn main() -> movcone::Result<()> {
    let args: Vec<u32> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let (n, m) = match args.as_slice() {
        [n, m] => (*n, *m as usize),
        _ => (2, 3),
    };
    let sys = CoxeterSystem::new(n, m, true)?;
    println!("Gram matrix Q:\n{}", sys.gram());
    println!("signature {:?}, lorentzian = {}", sys.gram().signature()?, sys.is_lorentzian());
    for (i, t) in sys.generators().iter().enumerate() {
        println!("t_{}:\n{t}", i + 1);
    }
    println!("quadric Q^:\n{}", sys.quadric_matrix()?);
    println!("psi*_(1,2):\n{}", psi_matrix(&sys, 1, 2)?);
    match group::eigen_pair(&sys, 1, 2)? {
        EigenData::Hyperbolic(p) => println!("t_1 t_2: lambda = {} ~ {:.6}", p.eigenvalue, p.eigenvalue.to_f64()),
        EigenData::Unipotent => println!("t_1 t_2 is unipotent"),
        EigenData::FiniteOrder => println!("t_1 t_2 has order 3"),
    }
    Ok(())
}
