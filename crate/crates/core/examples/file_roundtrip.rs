//! Writes the corpus to a directory and reads it back.

use l2betti::builders::corpus::corpus;
use l2betti::io::{load, save, to_text};

fn main() -> l2betti::Result<()> {
    let dir = std::env::args().nth(1).map(std::path::PathBuf::from).unwrap_or_else(std::env::temp_dir);
    for (name, doc) in corpus()? {
        let path = dir.join(format!("{name}.cx"));
        save(&path, &doc)?;
        let back = load(&path)?;
        let identical = to_text(&back) == std::fs::read_to_string(&path)?;
        println!("{} equal={} byte-identical={identical}", path.display(), back == doc);
    }
    Ok(())
}
