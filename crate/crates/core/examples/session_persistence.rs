//! Storing sessions as JSON documents and updating them under a file lock.
//!
//! `cargo run --example session_persistence`

use repgrid::store::{load_file, save_file, update_file};
use repgrid::{Phase, Session, SessionStore};

fn main() -> repgrid::Result<()> {
    let dir = std::env::temp_dir().join(format!("repgrid-example-{}", std::process::id()));
    let store = SessionStore::open(&dir)?;

    let id = store.create(None, &Session::with_default_catalogs("facilitator"))?;
    store.update(&id, |s| s.advance_phase(Phase::Survey, "facilitator"))?;
    let loaded = store.load(&id)?;
    println!("session {id} is in {} with {} audit entries", loaded.phase(), loaded.audit_log().len());

    // a single file outside any store
    let path = dir.join("standalone.json");
    save_file(&path, &loaded)?;
    let failed = update_file(&path, |s| s.advance_phase(Phase::Setup, "facilitator"));
    println!("backwards move refused: {}", failed.unwrap_err());
    assert_eq!(load_file(&path)?, loaded);

    let text = std::fs::read_to_string(&path)?;
    println!("document begins:\n{}", text.lines().take(4).collect::<Vec<_>>().join("\n"));

    std::fs::remove_dir_all(&dir)?;
    Ok(())
}
