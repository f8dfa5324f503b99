//! Enumerates chambers of the Tits cone and writes the chart picture.
//!
//! ```text
//! cargo run --example chamber_tiling -- 3 4 tiling.svg
//! ```

use movcone::atlas;
use movcone::export::svg::{render_chambers, RenderConfig};
use movcone::CoxeterSystem;

fn main() -> movcone::Result<()> {
    let mut args = std::env::args().skip(1);
    let n: u32 = args.next().and_then(|a| a.parse().ok()).unwrap_or(2);
    let depth: u32 = args.next().and_then(|a| a.parse().ok()).unwrap_or(4);
    let out = args.next().unwrap_or_else(|| format!("chambers_n{n}.svg"));

    let sys = CoxeterSystem::new(n, 3, true)?;
    for ch in atlas::fundamental_domain(&sys) {
        println!("fundamental domain: word {:?} rays {:?}", ch.word, ch.rays);
    }
    let chambers = atlas::enumerate_chambers(&sys, depth, movcone::word_budget())?;
    println!("{} chambers up to depth {depth}", chambers.len());
    if let Some(last) = chambers.last() {
        println!("deepest: {:?} -> {:?}", last.word, last.rays);
    }
    let svg = render_chambers(&sys, &RenderConfig::with_depth(depth), movcone::word_budget())?;
    std::fs::write(&out, svg).map_err(|e| movcone::Error::Parse(e.to_string()))?;
    println!("wrote {out}");
    Ok(())
}
