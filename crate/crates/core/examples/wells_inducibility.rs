//! Wells classes on the F_2 fixture where swapping the base coordinates cannot be lifted.

use avglie::cli::{Document, Object};
use avglie::extensions::{
    abelian_wells, lift_automorphism, project_automorphism, wells_class, AutomorphismPair,
};

fn load(name: &str) -> Object {
    let path = format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
    let doc = Document::parse(&std::fs::read_to_string(path).expect("fixture exists"))
        .expect("fixture parses");
    Object::from_document(&doc).expect("fixture is valid")
}

fn main() -> avglie::Result<()> {
    let Object::Extension(e) = load("phi_twisted_f2.json") else {
        unreachable!()
    };
    for name in ["pair_identity_f2.json", "pair_swap_f2.json"] {
        let Object::Pair(pair) = load(name) else {
            unreachable!()
        };
        let w = wells_class(&pair, &e)?;
        let abelian = abelian_wells(&pair, &e)?;
        println!(
            "{name}: inducible = {:?}, abelian class zero = {}",
            w.inducible(),
            abelian.is_zero_class()
        );
        if let Some(phi) = w.witness() {
            let gamma = lift_automorphism(&pair, &e, phi)?;
            let back: AutomorphismPair = project_automorphism(&e, &gamma)?;
            println!("  lift projects back: {}", back == pair);
        }
    }
    Ok(())
}
