//! Witness files: exact subspaces stored as `"num/den"` strings together with
//! the form they were checked against. Loading always re-verifies.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use spinorlab_core::admissible::BilinearForm;
use spinorlab_core::linalg::rank;
use spinorlab_core::scalar::rational_from_str;
use spinorlab_core::scalar::serde_strings::fraction;
use spinorlab_core::subspace_lab::{verify_isotropic_witness, Spin45Result, WitnessReport};
use spinorlab_core::{build_rep, ExactMatrix, Rational, Signature};

use crate::report::SCHEMA;
use crate::{LabError, LabResult};

pub const SPIN45_KIND: &str = "spin45-isotropic";

/// Directory holding archived witnesses, relative to the repository root.
pub const WITNESS_DIR: &str = "witnesses";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FormRecord {
    pub sigma: i8,
    pub tau: i8,
    pub h: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WitnessFile {
    pub schema: String,
    pub kind: String,
    pub signature: [usize; 2],
    pub seed: u64,
    pub candidates_tried: u64,
    pub form: FormRecord,
    pub basis: Vec<Vec<String>>,
    pub image_dim: usize,
}

fn strings(rows: &[Vec<Rational>]) -> Vec<Vec<String>> {
    rows.iter().map(|r| r.iter().map(fraction).collect()).collect()
}

fn parse(rows: &[Vec<String>]) -> LabResult<Vec<Vec<Rational>>> {
    rows.iter()
        .map(|r| {
            r.iter().map(|s| rational_from_str(s).ok_or_else(|| LabError::Witness(format!("not a rational: {s:?}")))).collect()
        })
        .collect()
}

pub fn default_path(dir: &Path, seed: u64) -> PathBuf {
    dir.join(format!("spin45_seed{seed}.json"))
}

impl WitnessFile {
    pub fn from_spin45(result: &Spin45Result, h: &BilinearForm) -> Self {
        WitnessFile {
            schema: SCHEMA.into(),
            kind: SPIN45_KIND.into(),
            signature: [4, 5],
            seed: result.seed,
            candidates_tried: result.candidates_tried,
            form: FormRecord {
                sigma: h.sigma,
                tau: h.tau,
                h: strings(&(0..h.h.rows()).map(|r| h.h.row(r).to_vec()).collect::<Vec<_>>()),
            },
            basis: strings(&result.witness),
            image_dim: result.report.image_dim,
        }
    }

    pub fn save(&self, path: &Path) -> LabResult<()> {
        if let Some(dir) = path.parent() {
            std::fs::create_dir_all(dir)?;
        }
        std::fs::write(path, serde_json::to_string_pretty(self)? + "\n")?;
        Ok(())
    }

    pub fn load(path: &Path) -> LabResult<Self> {
        Ok(serde_json::from_str(&std::fs::read_to_string(path)?)?)
    }

    /// Rebuilds the representation, checks that the stored form is a
    /// nondegenerate admissible form of the stated type, and re-verifies the
    /// subspace from scratch.
    pub fn reverify(&self) -> LabResult<WitnessReport> {
        if self.schema != SCHEMA || self.kind != SPIN45_KIND {
            return Err(LabError::Witness(format!("unexpected schema/kind {}/{}", self.schema, self.kind)));
        }
        let sig = Signature::new(self.signature[0], self.signature[1])?;
        let rep = build_rep(sig)?;
        let rows = parse(&self.form.h)?;
        if rows.len() != rep.dim || rows.iter().any(|r| r.len() != rep.dim) {
            return Err(LabError::Witness("form has the wrong shape".into()));
        }
        let h = ExactMatrix::from_rows(rows);
        let form = BilinearForm { nondegenerate: rank(&h) == rep.dim, h, sigma: self.form.sigma, tau: self.form.tau };
        if !form.nondegenerate || !form.is_admissible(&rep) {
            return Err(LabError::Witness("stored form is not a nondegenerate admissible form".into()));
        }
        let basis = parse(&self.basis)?;
        if basis.iter().any(|v| v.len() != rep.dim) {
            return Err(LabError::Witness("basis vectors have the wrong length".into()));
        }
        let report = verify_isotropic_witness(&rep, &form, &basis)?;
        if report.image_dim != self.image_dim {
            return Err(LabError::Witness(format!("stored image dim {} but recomputed {}", self.image_dim, report.image_dim)));
        }
        Ok(report)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use spinorlab_core::subspace_lab::{spin45_search, spin45_setup};

    fn fresh() -> WitnessFile {
        let (_, h) = spin45_setup().unwrap();
        WitnessFile::from_spin45(&spin45_search(1, 1000).unwrap(), &h)
    }

    #[test]
    fn round_trip_reverifies() {
        let w = fresh();
        let text = serde_json::to_string(&w).unwrap();
        let back: WitnessFile = serde_json::from_str(&text).unwrap();
        assert_eq!(back, w);
        assert!(back.reverify().unwrap().valid(4));
        assert!(w.basis.iter().flatten().all(|x| x.contains('/')));
    }

    #[test]
    fn tampering_is_caught() {
        let mut w = fresh();
        w.image_dim = 3;
        assert!(w.reverify().is_err());
        let mut w = fresh();
        w.form.tau = -w.form.tau;
        assert!(w.reverify().is_err());
        let mut w = fresh();
        w.basis[0][0] = "x".into();
        assert!(w.reverify().is_err());
    }
}
