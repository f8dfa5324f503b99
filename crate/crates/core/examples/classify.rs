//! Locates divisor classes in the fundamental domain and rebuilds them
//! from the answer.
//!
//! ```text
//! cargo run --example classify -- -3,5,9
//! ```

use movcone::atlas::{classify, DEFAULT_MAX_STEPS};
use movcone::export::json::parse_class;
use movcone::CoxeterSystem;

fn main() -> movcone::Result<()> {
    let sys = CoxeterSystem::new(2, 3, true)?;
    let inputs: Vec<String> = match std::env::args().nth(1) {
        Some(s) => vec![s],
        None => ["1,1,1", "-1,4,5", "-3,5,9", "1/2,-1/3,5", "-1,-1,-1"].map(String::from).to_vec(),
    };
    for input in inputs {
        let d = parse_class(&input)?;
        match classify(&sys, &d, DEFAULT_MAX_STEPS) {
            Ok(r) => {
                println!(
                    "{input:>12}: t-word {:?}, psi-word {:?}, model X_{}, nef coords {:?}",
                    r.t_word,
                    r.psi_word,
                    r.model_index,
                    r.nef_coords.iter().map(ToString::to_string).collect::<Vec<_>>()
                );
                assert_eq!(r.reconstruct(&sys)?, d);
            }
            Err(e) => println!("{input:>12}: {e}"),
        }
    }
    Ok(())
}
