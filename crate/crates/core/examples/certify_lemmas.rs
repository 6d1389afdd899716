//! Sign certificates for the built-in lemma polynomials.
use polya::polycert::{build_lemma_polynomial, certify_nonpositive, LemmaName, DEFAULT_MAX_DEPTH};

fn main() -> polya::Result<()> {
    for name in LemmaName::ALL {
        let p = build_lemma_polynomial(name);
        let Some(dx) = name.target_dx() else {
            println!("{name}: certified through its shifted form");
            continue;
        };
        match certify_nonpositive(&p, &dx, DEFAULT_MAX_DEPTH) {
            Ok(c) => println!(
                "{name}: degree {:?}, <= 0 on (0, {dx}] with {} pieces at depth {}, recheck {}",
                p.degree(),
                c.pieces.len(),
                c.depth,
                c.recheck(&p)
            ),
            Err(e) => println!("{name}: {e}"),
        }
    }
    Ok(())
}
