//! Session files on local storage.
//!
//! Writes go to a temporary file that is renamed over the target, so readers
//! always see the last committed snapshot. Writers take a per-session lock
//! inside the process plus an advisory lock on `<file>.lock`, which keeps the
//! CLI and a running service from interleaving updates to the same file.

use std::collections::HashMap;
use std::fs::{self, File, OpenOptions};
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};
use crate::session::Session;

pub fn load_file(path: &Path) -> Result<Session> {
    let text = fs::read_to_string(path)?;
    Session::from_json(&text)
}

pub fn save_file(path: &Path, session: &Session) -> Result<()> {
    let tmp = sibling(path, ".tmp");
    {
        let mut f = File::create(&tmp)?;
        f.write_all(session.to_json().as_bytes())?;
        f.sync_all()?;
    }
    fs::rename(&tmp, path)?;
    Ok(())
}

/// Runs `f` on the stored session under an exclusive file lock and commits
/// the result only if `f` succeeds.
pub fn update_file<T>(path: &Path, f: impl FnOnce(&mut Session) -> Result<T>) -> Result<T> {
    let _guard = FileLock::acquire(path)?;
    let mut session = load_file(path)?;
    let out = f(&mut session)?;
    save_file(path, &session)?;
    Ok(out)
}

fn sibling(path: &Path, suffix: &str) -> PathBuf {
    let mut name = path.as_os_str().to_owned();
    name.push(suffix);
    PathBuf::from(name)
}

struct FileLock(File);

impl FileLock {
    fn acquire(path: &Path) -> io::Result<Self> {
        let file = OpenOptions::new()
            .create(true)
            .truncate(false)
            .write(true)
            .open(sibling(path, ".lock"))?;
        file.lock()?;
        Ok(Self(file))
    }
}

impl Drop for FileLock {
    fn drop(&mut self) {
        let _ = self.0.unlock();
    }
}

/// Ids become file names, so they are restricted to `[A-Za-z0-9_-]`.
pub fn is_valid_session_id(id: &str) -> bool {
    !id.is_empty()
        && id.len() <= 64
        && id
            .chars()
            .all(|c| c.is_ascii_alphanumeric() || c == '-' || c == '_')
}

/// A directory of `<id>.json` session documents.
#[derive(Debug)]
pub struct SessionStore {
    dir: PathBuf,
    locks: Mutex<HashMap<String, Arc<Mutex<()>>>>,
}

impl SessionStore {
    pub fn open(dir: impl Into<PathBuf>) -> Result<Self> {
        let dir = dir.into();
        fs::create_dir_all(&dir)?;
        Ok(Self {
            dir,
            locks: Mutex::new(HashMap::new()),
        })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path(&self, id: &str) -> Result<PathBuf> {
        if !is_valid_session_id(id) {
            return Err(Error::NotFound(id.to_owned()));
        }
        Ok(self.dir.join(format!("{id}.json")))
    }

    fn session_lock(&self, id: &str) -> Arc<Mutex<()>> {
        let mut locks = self.locks.lock().unwrap_or_else(|e| e.into_inner());
        locks.entry(id.to_owned()).or_default().clone()
    }

    /// Stores a new session under `id`, or a fresh random id.
    pub fn create(&self, id: Option<&str>, session: &Session) -> Result<String> {
        let id = match id {
            Some(id) if is_valid_session_id(id) => id.to_owned(),
            Some(id) => {
                return Err(Error::invalid(format!(
                    "invalid session id {id:?}: use letters, digits, '-' or '_'"
                )))
            }
            None => uuid::Uuid::new_v4().simple().to_string(),
        };
        let path = self.path(&id)?;
        let lock = self.session_lock(&id);
        let _held = lock.lock().unwrap_or_else(|e| e.into_inner());
        let _file = FileLock::acquire(&path)?;
        if path.exists() {
            return Err(Error::invalid(format!("session {id} already exists")));
        }
        save_file(&path, session)?;
        Ok(id)
    }

    /// The last committed snapshot. Never waits on writers.
    pub fn load(&self, id: &str) -> Result<Session> {
        let path = self.path(id)?;
        match fs::read_to_string(&path) {
            Ok(text) => Session::from_json(&text),
            Err(e) if e.kind() == io::ErrorKind::NotFound => Err(Error::NotFound(id.to_owned())),
            Err(e) => Err(e.into()),
        }
    }

    pub fn update<T>(&self, id: &str, f: impl FnOnce(&mut Session) -> Result<T>) -> Result<T> {
        let path = self.path(id)?;
        let lock = self.session_lock(id);
        let _held = lock.lock().unwrap_or_else(|e| e.into_inner());
        if !path.exists() {
            return Err(Error::NotFound(id.to_owned()));
        }
        update_file(&path, f)
    }
}
