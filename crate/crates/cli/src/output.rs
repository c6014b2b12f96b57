use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{Context, Result};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

/// Run metadata embedded in every output.
pub struct Meta {
    pub command: &'static str,
    pub config: Value,
    pub config_sha256: String,
    pub seed: u64,
    pub started: Instant,
    pub record_wall_time: bool,
}

impl Meta {
    pub fn new<C: Serialize>(
        command: &'static str,
        config: &C,
        seed: u64,
        record_wall_time: bool,
    ) -> Result<Self> {
        let config = serde_json::to_value(config)?;
        // serde_json maps are ordered by key, so this text is canonical.
        let canonical = serde_json::to_string(&config)?;
        Ok(Meta {
            command,
            config_sha256: hex::encode(Sha256::digest(canonical.as_bytes())),
            config,
            seed,
            started: Instant::now(),
            record_wall_time,
        })
    }

    fn wall_time(&self) -> Option<f64> {
        self.record_wall_time
            .then(|| (self.started.elapsed().as_secs_f64() * 1e3).round() / 1e3)
    }

    pub fn json(&self) -> Value {
        let mut v = json!({
            "tool": "riesz-witness",
            "version": env!("CARGO_PKG_VERSION"),
            "command": self.command,
            "seed": self.seed,
            "config_sha256": self.config_sha256,
            "config": self.config,
        });
        if let Some(t) = self.wall_time() {
            v["wall_time_s"] = json!(t);
        }
        v
    }

    fn csv_footer(&self) -> String {
        let mut s = format!(
            "# tool=riesz-witness\n# version={}\n# command={}\n# seed={}\n# config_sha256={}\n",
            env!("CARGO_PKG_VERSION"),
            self.command,
            self.seed,
            self.config_sha256
        );
        if let Some(t) = self.wall_time() {
            s.push_str(&format!("# wall_time_s={t}\n"));
        }
        s
    }
}

/// Files of one run, written only after every computation has succeeded.
pub struct Outputs {
    dir: PathBuf,
    files: Vec<(String, String)>,
}

impl Outputs {
    pub fn new(dir: &Path) -> Self {
        Outputs {
            dir: dir.to_path_buf(),
            files: Vec::new(),
        }
    }

    pub fn json(&mut self, name: &str, meta: &Meta, result: Value) -> Result<()> {
        let doc = json!({ "meta": meta.json(), "result": result });
        let mut text = serde_json::to_string_pretty(&doc)?;
        text.push('\n');
        self.files.push((name.to_string(), text));
        Ok(())
    }

    pub fn csv(&mut self, name: &str, meta: &Meta, header: &str, rows: &[String]) {
        let mut text = String::new();
        text.push_str(header);
        text.push('\n');
        for r in rows {
            text.push_str(r);
            text.push('\n');
        }
        text.push_str(&meta.csv_footer());
        self.files.push((name.to_string(), text));
    }

    /// Writes every file through a temporary name and renames it into
    /// place, so a failed run leaves no partial output behind.
    pub fn commit(self) -> Result<Vec<PathBuf>> {
        fs::create_dir_all(&self.dir)
            .with_context(|| format!("creating output directory {}", self.dir.display()))?;
        let mut staged = Vec::new();
        for (name, text) in &self.files {
            let tmp = self.dir.join(format!(".{name}.partial"));
            fs::write(&tmp, text).with_context(|| format!("writing {}", tmp.display()))?;
            staged.push((tmp, self.dir.join(name)));
        }
        let mut written = Vec::new();
        for (tmp, dst) in staged {
            fs::rename(&tmp, &dst).with_context(|| format!("moving output to {}", dst.display()))?;
            written.push(dst);
        }
        Ok(written)
    }
}
