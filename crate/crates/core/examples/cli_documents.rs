//! Writing a document and running the command line in-process.

use avglie::cli::{run, Object};
use avglie::{AveragingLieAlgebra, Field, LieAlgebra};

fn main() -> std::io::Result<()> {
    let a = AveragingLieAlgebra::with_identity(LieAlgebra::abelian(Field::Prime(5), 2));
    let path = std::env::temp_dir().join("avglie-example.json");
    std::fs::write(
        &path,
        Object::AveragingLieAlgebra(a).to_document().to_json(),
    )?;
    let code = run(
        ["avglie", "check", path.to_str().unwrap()],
        &mut std::io::stdout(),
        &mut std::io::stderr(),
    );
    println!("exit code {code}");
    std::fs::remove_file(path)
}
