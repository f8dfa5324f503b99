//! The group generated by the `ψ*_{i,j}`: normal forms, conversion from
//! `t`-words, and a collision search confirming the free product.
//!
//! ```text
//! cargo run --release --example free_product
//! ```

use movcone::group::{psi_from_t, t_normal_form, verify_free, PsiWord, TWord};
use movcone::CoxeterSystem;

fn main() -> movcone::Result<()> {
    let sys = CoxeterSystem::new(2, 3, true)?;
    let w = PsiWord::from_triples(&[(1, 2, 1), (2, 3, -2), (1, 3, 1)])?;
    let nf = t_normal_form(&sys, &w)?;
    println!("{w:?} = {:?} · Per{:?}", nf.t_word, nf.perm.images());
    assert_eq!(nf.matrix(&sys)?, w.matrix(&sys)?);

    let t = TWord(vec![1, 2, 3, 1, 2]);
    println!("t-word {t:?} lies in the chamber of {:?}", psi_from_t(&sys, &t)?);

    for (n, m, depth) in [(2, 3, 4), (3, 3, 4), (3, 4, 3)] {
        let sys = CoxeterSystem::new(n, m, true)?;
        let r = verify_free(&sys, depth, movcone::word_budget())?;
        println!(
            "n = {n}, m = {m}, depth {depth}: {} words, {} collisions",
            r.words_checked, r.collisions
        );
    }
    Ok(())
}
