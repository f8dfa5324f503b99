//! The symmetric `(2, 3)` example: `Z/2 ∗ Z`, the classes `D₁, D₂`, and both
//! pictures.
//!
//! ```text
//! cargo run --example symmetric -- 4
//! ```

use movcone::export::json::SymLayer;
use movcone::export::svg::{render_symmetric, RenderConfig};
use movcone::symmetric::{self, PsefLayer};

fn main() -> movcone::Result<()> {
    let depth: u32 = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(3);
    let (a, b) = symmetric::sym_generators();
    println!("a =\n{a}b =\n{b}");
    println!("a·b·a = psi*_(2,3): {}", symmetric::sym_relation_check());

    let (d1, d2) = symmetric::d_classes();
    println!("D1 = {d1:?}, D2 = {d2:?}");
    let cones = symmetric::sym_enumerate(depth, movcone::word_budget())?;
    println!(
        "{} translates of the fundamental domain, disjoint interiors: {}",
        cones.len(),
        symmetric::interiors_disjoint(&cones)
    );
    let patches = symmetric::psef_patches(depth, movcone::word_budget())?;
    let proven = patches.iter().filter(|p| p.layer == PsefLayer::Proven).count();
    println!("{proven} proven segments, {} expected cones", patches.len() - proven);

    let cfg = RenderConfig::with_depth(depth);
    let budget = movcone::word_budget();
    for (layer, file) in [(SymLayer::Movable, "symmetric_movable.svg"), (SymLayer::Psef, "symmetric_psef.svg")] {
        let svg = render_symmetric(layer, &cfg, budget)?;
        std::fs::write(file, svg).map_err(|e| movcone::Error::Parse(e.to_string()))?;
        println!("wrote {file}");
    }
    Ok(())
}
