//! Append-only fingerprint cache.
//!
//! One record per line: `key<TAB>homfly<TAB>jones<TAB>alexander<TAB>components<TAB>checksum`
//! where the key is the canonical dPD code of the diagram and the checksum
//! is the SHA-256 of everything before it. Lines with a bad checksum or
//! truncated fields are ignored and recomputed.

use std::collections::HashMap;
use std::fs::{File, OpenOptions};
use std::io::{self, BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use crate::invariants::text::FingerprintText;
use crate::invariants::Fingerprint;

fn checksum(body: &str) -> String {
    hex::encode(&Sha256::digest(body.as_bytes())[..8])
}

fn encode(key: &str, f: &Fingerprint) -> String {
    let t = FingerprintText::from(f.clone());
    let body = format!("{key}\t{}\t{}\t{}\t{}", t.homfly, t.jones, t.alexander, t.components);
    let sum = checksum(&body);
    format!("{body}\t{sum}")
}

fn decode(line: &str) -> Option<(String, Fingerprint)> {
    let (body, sum) = line.rsplit_once('\t')?;
    if checksum(body) != sum {
        return None;
    }
    let mut parts = body.split('\t');
    let key = parts.next()?.to_string();
    let text = FingerprintText {
        homfly: parts.next()?.to_string(),
        jones: parts.next()?.to_string(),
        alexander: parts.next()?.to_string(),
        components: parts.next()?.parse().ok()?,
    };
    if parts.next().is_some() {
        return None;
    }
    Some((key, Fingerprint::try_from(text).ok()?))
}

#[derive(Debug, Default)]
pub struct FingerprintCache {
    path: Option<PathBuf>,
    entries: HashMap<String, Fingerprint>,
    /// Lines skipped on load because they failed validation.
    pub rejected: usize,
}

impl FingerprintCache {
    /// A cache that is never persisted.
    pub fn in_memory() -> Self {
        Self::default()
    }

    pub fn open(path: &Path) -> io::Result<Self> {
        let mut cache = FingerprintCache { path: Some(path.to_path_buf()), ..Default::default() };
        match File::open(path) {
            Ok(f) => {
                for line in BufReader::new(f).lines() {
                    let line = line?;
                    match decode(&line) {
                        Some((k, fp)) => {
                            cache.entries.insert(k, fp);
                        }
                        None => cache.rejected += 1,
                    }
                }
            }
            Err(e) if e.kind() == io::ErrorKind::NotFound => {}
            Err(e) => return Err(e),
        }
        if cache.rejected > 0 {
            log::warn!("{}: ignored {} damaged cache lines", path.display(), cache.rejected);
        }
        Ok(cache)
    }

    pub fn get(&self, key: &str) -> Option<&Fingerprint> {
        self.entries.get(key)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Adds records, appending the new ones to the backing file. Keys
    /// already present are skipped, so repeated appends are harmless.
    pub fn extend(&mut self, records: impl IntoIterator<Item = (String, Fingerprint)>) -> io::Result<()> {
        let mut lines = String::new();
        for (k, f) in records {
            if self.entries.contains_key(&k) {
                continue;
            }
            lines.push_str(&encode(&k, &f));
            lines.push('\n');
            self.entries.insert(k, f);
        }
        if let (Some(path), false) = (&self.path, lines.is_empty()) {
            let mut file = OpenOptions::new().create(true).append(true).open(path)?;
            // A previous run may have died mid-line; start on a fresh line.
            if file.metadata()?.len() > 0 && !ends_with_newline(path)? {
                file.write_all(b"\n")?;
            }
            file.write_all(lines.as_bytes())?;
        }
        Ok(())
    }
}

fn ends_with_newline(path: &Path) -> io::Result<bool> {
    use std::io::{Read, Seek, SeekFrom};
    let mut f = File::open(path)?;
    f.seek(SeekFrom::End(-1))?;
    let mut b = [0u8];
    f.read_exact(&mut b)?;
    Ok(b[0] == b'\n')
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn survives_damage_and_reload() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("fp.cache");
        let mut c = FingerprintCache::open(&path).unwrap();
        c.extend([("k1".to_string(), Fingerprint::unknot())]).unwrap();
        c.extend([("k1".to_string(), Fingerprint::unknot())]).unwrap();
        // truncated trailing record
        std::fs::OpenOptions::new().append(true).open(&path).unwrap().write_all(b"k2\t1*v^0").unwrap();
        let mut c = FingerprintCache::open(&path).unwrap();
        assert_eq!((c.len(), c.rejected), (1, 1));
        c.extend([("k3".to_string(), Fingerprint::unknot())]).unwrap();
        let c = FingerprintCache::open(&path).unwrap();
        assert_eq!((c.len(), c.rejected), (2, 1));
        assert_eq!(c.get("k3"), Some(&Fingerprint::unknot()));
    }
}
