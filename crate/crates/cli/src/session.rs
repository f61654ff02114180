//! Session directories: content-addressed artifacts with a manifest that
//! records the producing command, so any artifact can be reproduced by
//! rerunning its manifest entry.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use sha2::{Digest, Sha256};

pub fn sha256_hex(bytes: &[u8]) -> String {
    let mut h = Sha256::new();
    h.update(bytes);
    let out = h.finalize();
    out.iter().map(|b| format!("{b:02x}")).collect()
}

pub struct Session {
    dir: PathBuf,
}

impl Session {
    pub fn open(dir: &Path) -> Result<Self> {
        fs::create_dir_all(dir)
            .with_context(|| format!("cannot create session directory {}", dir.display()))?;
        Ok(Session {
            dir: dir.to_path_buf(),
        })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    /// Stores an artifact addressed by a digest of its producing command,
    /// parameters and input digests. Reruns of the same command map to the
    /// same file; the manifest gains one `key=value` line per artifact.
    pub fn record(
        &self,
        kind: &str,
        cmd: &str,
        params: &str,
        inputs: &[String],
        content: &str,
    ) -> Result<PathBuf> {
        let address = format!("{kind}\n{cmd}\n{params}\n{}", inputs.join(","));
        let id = &sha256_hex(address.as_bytes())[..12];
        let name = format!("{kind}-{id}.txt");
        let path = self.dir.join(&name);
        fs::write(&path, content)
            .with_context(|| format!("cannot write artifact {}", path.display()))?;
        let line = format!(
            "artifact={name} kind={kind} cmd={cmd} params={params} inputs={} content_sha256={}\n",
            inputs.join(","),
            sha256_hex(content.as_bytes()),
        );
        let manifest = self.dir.join("manifest.txt");
        let existing = fs::read_to_string(&manifest).unwrap_or_default();
        if !existing.contains(&line) {
            let mut f = fs::OpenOptions::new()
                .create(true)
                .append(true)
                .open(&manifest)
                .context("cannot open manifest")?;
            f.write_all(line.as_bytes())
                .context("cannot append manifest line")?;
        }
        Ok(path)
    }
}
