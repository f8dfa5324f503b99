//! Boundary cones of the movable cone: exact eigenvectors of `t_i t_j` and
//! their translates, all on the quadric.
//!
//! ```text
//! cargo run --example boundary -- 4 2
//! ```

use movcone::atlas::{boundary_patches, isotropy_value};
use movcone::group::{eigen_pair, EigenData};
use movcone::CoxeterSystem;

fn main() -> movcone::Result<()> {
    let mut args = std::env::args().skip(1);
    let n: u32 = args.next().and_then(|a| a.parse().ok()).unwrap_or(3);
    let depth: u32 = args.next().and_then(|a| a.parse().ok()).unwrap_or(1);
    let sys = CoxeterSystem::new(n, 3, true)?;

    if let EigenData::Hyperbolic(p) = eigen_pair(&sys, 1, 2)? {
        println!("lambda = {}", p.eigenvalue);
        let v: Vec<String> = p.eigenvector.iter().map(ToString::to_string).collect();
        println!("v_lambda = ({})", v.join(", "));
    }
    let patches = boundary_patches(&sys, depth, movcone::word_budget())?;
    println!("{} patches up to depth {depth}", patches.len());
    for p in patches.iter().take(6) {
        let q = isotropy_value(&sys, &p.apex)?;
        let apex: Vec<String> = p.apex.iter().map(|x| format!("{:.5}", x.to_f64())).collect();
        println!(
            "pair {:?} word {:?}: apex ~ ({}) base {:?}, apex isotropic: {}",
            p.pair,
            p.word,
            apex.join(", "),
            p.base_rays,
            q.signum().is_eq()
        );
    }
    Ok(())
}
