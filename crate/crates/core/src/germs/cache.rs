use std::fs;
use std::path::Path;

use num_complex::Complex64;

use crate::error::{Error, Result};

fn io_err(path: &Path, e: impl std::fmt::Display) -> Error {
    Error::Io { path: path.display().to_string(), message: e.to_string() }
}

/// Writes coefficients as CSV with header `n,re,im`, via a temporary file and a rename.
pub fn write_coeff_csv(path: &Path, coefficients: &[Complex64]) -> Result<()> {
    let tmp = path.with_extension("csv.tmp");
    {
        let mut w = csv::Writer::from_path(&tmp).map_err(|e| io_err(&tmp, e))?;
        w.write_record(["n", "re", "im"]).map_err(|e| io_err(&tmp, e))?;
        for (n, c) in coefficients.iter().enumerate() {
            w.write_record([n.to_string(), format!("{:e}", c.re), format!("{:e}", c.im)])
                .map_err(|e| io_err(&tmp, e))?;
        }
        w.flush().map_err(|e| io_err(&tmp, e))?;
    }
    fs::rename(&tmp, path).map_err(|e| io_err(path, e))
}

/// Reads a `n,re,im` coefficient file; rows must be numbered consecutively from 0.
pub fn read_coeff_csv(path: &Path) -> Result<Vec<Complex64>> {
    let mut r = csv::Reader::from_path(path).map_err(|e| io_err(path, e))?;
    let mut out = Vec::new();
    for (i, row) in r.deserialize::<(usize, f64, f64)>().enumerate() {
        let (n, re, im) = row.map_err(|e| io_err(path, e))?;
        if n != i {
            return Err(io_err(path, format!("row {i} is numbered {n}")));
        }
        out.push(Complex64::new(re, im));
    }
    Ok(out)
}
