//! Check the sample derivations, then break one and see where it fails.

use std::path::Path;

use lcr::proof::{check_derivation, DerivationDoc};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("data/derivations");
    let mut files: Vec<_> = std::fs::read_dir(&dir)?.collect::<Result<_, _>>()?;
    files.sort_by_key(|e| e.path());
    for entry in files {
        let doc = DerivationDoc::from_json(&std::fs::read_to_string(entry.path())?)?;
        let d = doc.to_derivation()?;
        let goal = doc.goal()?.expect("sample files carry a goal");
        let verdict = match check_derivation(&d, &goal) {
            Ok(()) => "accepted".to_string(),
            Err(e) => format!("rejected: {e}"),
        };
        println!("{}: {verdict}", entry.file_name().to_string_lossy());
    }

    let text = std::fs::read_to_string(dir.join("rcec_commute.json"))?;
    let broken = text.replacen("(p => q & r) <-> (p => r & q)\", \"rule\"", "(p => q & r) <-> (p => q & q)\", \"rule\"", 1);
    let doc = DerivationDoc::from_json(&broken)?;
    let err = check_derivation(&doc.to_derivation()?, &doc.goal()?.unwrap()).unwrap_err();
    println!("mutated: {err}");
    Ok(())
}
