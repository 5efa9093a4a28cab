use std::path::{Path, PathBuf};

use fanolab::cubic_model::{sample_generic_instance, Instance};
use serde_json::{json, Value};

use crate::{Common, InputError};

pub struct Loaded {
    pub instance: Instance,
    pub provenance: Value,
}

pub fn read_instance(path: &Path) -> Result<Instance, InputError> {
    let text = std::fs::read_to_string(path).map_err(|e| InputError(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn file_name(path: &Path) -> String {
    path.file_name().map_or_else(|| path.display().to_string(), |n| n.to_string_lossy().into_owned())
}

pub fn from_file(path: &Path) -> Result<Loaded, InputError> {
    let instance = read_instance(path)?;
    let provenance = json!({
        "source": "file",
        "file": file_name(path),
        "label": instance.label,
        "seed": instance.seed,
        "claimed_type": instance.claimed_type,
    });
    Ok(Loaded { instance, provenance })
}

/// The instance named by `--instance`, or a sample for `--i` and `--seed`.
/// A sampling failure is a finding, not an input error, so it comes back as `Ok(Err(..))`.
pub fn load(common: &Common) -> Result<Result<Loaded, String>, InputError> {
    match (&common.instance, common.i) {
        (Some(p), _) => Ok(Ok(from_file(p)?)),
        (None, Some(i)) => Ok(sample_generic_instance(i, common.seed)
            .map(|instance| Loaded {
                provenance: json!({
                    "source": "sampled",
                    "i": i,
                    "seed": common.seed,
                    "claimed_type": instance.claimed_type,
                }),
                instance,
            })
            .map_err(|e| e.to_string())),
        (None, None) => Err(InputError("give --instance <path> or --i <2|3|4>".into())),
    }
}

/// Instance files directly inside `dir`, sorted by name.
pub fn corpus_files(dir: &Path) -> Result<Vec<PathBuf>, InputError> {
    let mut out: Vec<PathBuf> = std::fs::read_dir(dir)
        .map_err(|e| InputError(format!("{}: {e}", dir.display())))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    out.sort();
    if out.is_empty() {
        return Err(InputError(format!("no instance files in {}", dir.display())));
    }
    Ok(out)
}
