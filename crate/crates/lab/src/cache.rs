use std::collections::HashMap;
use std::path::PathBuf;
use std::sync::{Arc, Mutex};

use monodromy::germs::{read_coeff_csv, write_coeff_csv};
use monodromy::C64;
use sha2::{Digest, Sha256};

use crate::error::{LabError, LabResult};

/// Coefficient lists keyed by `(family and parameters, M)`, kept in memory
/// and, when a directory is set, as `n,re,im` CSV files.
#[derive(Debug, Default)]
pub struct CoeffCache {
    dir: Option<PathBuf>,
    memo: Mutex<HashMap<(String, usize), Arc<Vec<C64>>>>,
}

impl CoeffCache {
    pub fn new(dir: Option<PathBuf>) -> Self {
        Self { dir, memo: Mutex::new(HashMap::new()) }
    }

    pub fn file_for(&self, key: &str, m: usize) -> Option<PathBuf> {
        let digest = Sha256::digest(key.as_bytes());
        let hex: String = digest.iter().take(8).map(|b| format!("{b:02x}")).collect();
        Some(self.dir.as_ref()?.join(format!("coeffs-{hex}-M{m}.csv")))
    }

    pub fn get(&self, key: &str, m: usize, compute: impl FnOnce() -> Vec<C64>) -> LabResult<Arc<Vec<C64>>> {
        let id = (key.to_string(), m);
        if let Some(v) = self.memo.lock().expect("cache lock").get(&id) {
            return Ok(v.clone());
        }
        let path = self.file_for(key, m);
        let loaded = match &path {
            Some(p) if p.exists() => Some(read_coeff_csv(p)?).filter(|v| v.len() == m),
            _ => None,
        };
        let coeffs = match loaded {
            Some(v) => v,
            None => {
                let v = compute();
                if let Some(p) = &path {
                    let dir = p.parent().expect("cache files live in a directory");
                    std::fs::create_dir_all(dir).map_err(|e| LabError::io(dir, e))?;
                    write_coeff_csv(p, &v)?;
                    std::fs::write(p.with_extension("key"), key).map_err(|e| LabError::io(p, e))?;
                }
                v
            }
        };
        let coeffs = Arc::new(coeffs);
        self.memo.lock().expect("cache lock").insert(id, coeffs.clone());
        Ok(coeffs)
    }
}
