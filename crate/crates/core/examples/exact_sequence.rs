//! Element-by-element audit of ker Π and ker W = im Π, and the split decomposition.

use avglie::cli::{Document, Object};
use avglie::extensions::{check_split_semidirect, exact_sequence_audit};

fn main() -> avglie::Result<()> {
    for name in ["split_f2.json", "phi_twisted_f2.json", "scrambled_f3.json"] {
        let path = format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
        let Object::Extension(e) =
            Object::from_document(&Document::parse(&std::fs::read_to_string(path).unwrap())?)?
        else {
            unreachable!()
        };
        let a = exact_sequence_audit(&e)?;
        println!(
            "{name}: |Aut_h| = {}, |kernel| = {}, |pairs| = {}, |image| = {}, inducible = {}, holds = {}",
            a.restrictable,
            a.kernel,
            a.pairs,
            a.image,
            a.inducible,
            a.holds()
        );
        match check_split_semidirect(&e, &e.section_or_default()) {
            Ok(split) => println!(
                "  split: {:?}",
                split
                    .counts
                    .map(|c| (c.restrictable, c.compatible, c.kernel))
            ),
            Err(err) => println!("  not split along this section: {err}"),
        }
    }
    Ok(())
}
