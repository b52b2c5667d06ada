//! Named groups: closed-form builders, catalog files and corpus loading.

use std::collections::{BTreeMap, HashMap};
use std::path::Path;
use std::sync::{Arc, Mutex};

use crate::error::{input, Error, Result};
use crate::perm::{semidirect_product, Group};

pub mod builders;
mod format;

pub use format::{
    automorphism_spec, parse_file, parse_str, Builder, CatalogEntry, EntryKind, Flags, ImageText,
};

/// A catalog group after construction.
#[derive(Clone, Debug)]
pub struct BuiltGroup {
    pub name: String,
    pub group: Arc<Group>,
    pub flags: Flags,
    pub semidirect: Option<SemidirectInfo>,
}

/// How a semidirect record was assembled.
#[derive(Clone, Debug)]
pub struct SemidirectInfo {
    pub base_name: String,
    pub base_order: usize,
    pub base_abelian: bool,
    /// Order of the group generated by the automorphisms.
    pub acting_order: usize,
}

impl SemidirectInfo {
    pub fn coprime(&self) -> bool {
        num_integer::gcd(self.base_order, self.acting_order) == 1
    }
}

/// Catalog entries by name, built lazily and memoised.
#[derive(Debug, Default)]
pub struct Catalog {
    entries: BTreeMap<String, CatalogEntry>,
    cap: usize,
    built: Mutex<HashMap<String, Arc<BuiltGroup>>>,
}

impl Catalog {
    pub fn new(entries: Vec<CatalogEntry>, cap: usize) -> Result<Catalog> {
        let mut map = BTreeMap::new();
        for e in entries {
            if let Some(prev) = map.get(&e.name) {
                let prev: &CatalogEntry = prev;
                return Err(Error::Parse {
                    file: e.file.clone(),
                    line: e.line,
                    msg: format!(
                        "duplicate group name {:?} (first defined at {}:{})",
                        e.name, prev.file, prev.line
                    ),
                });
            }
            map.insert(e.name.clone(), e);
        }
        Ok(Catalog {
            entries: map,
            cap,
            built: Mutex::new(HashMap::new()),
        })
    }

    /// Entry names in sorted order.
    pub fn names(&self) -> Vec<String> {
        self.entries.keys().cloned().collect()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entry(&self, name: &str) -> Option<&CatalogEntry> {
        self.entries.get(name)
    }

    pub fn build(&self, name: &str) -> Result<Arc<BuiltGroup>> {
        self.build_depth(name, 0)
    }

    fn build_depth(&self, name: &str, depth: usize) -> Result<Arc<BuiltGroup>> {
        if let Some(b) = self.built.lock().unwrap().get(name) {
            return Ok(b.clone());
        }
        if depth > self.entries.len() {
            return input(format!("semidirect records around {name:?} form a cycle"));
        }
        let Some(e) = self.entries.get(name) else {
            return input(format!("no catalog group named {name:?}"));
        };
        let cap = e.cap.unwrap_or(self.cap);
        let located = |err: Error| match err {
            Error::Input(msg) => Error::Parse {
                file: e.file.clone(),
                line: e.line,
                msg,
            },
            other => other,
        };
        let (group, semidirect) = match &e.kind {
            EntryKind::Generators { degree, generators } => (
                Group::generate(*degree, generators.clone(), cap).map_err(located)?,
                None,
            ),
            EntryKind::Builder(b) => (build_family(b, cap).map_err(located)?, None),
            EntryKind::Semidirect {
                base,
                automorphisms,
            } => {
                let base_built = self.build_depth(base, depth + 1)?;
                let bg = &base_built.group;
                let specs = automorphisms
                    .iter()
                    .map(|imgs| automorphism_spec(imgs, bg.degree()))
                    .collect::<Result<Vec<_>>>()
                    .map_err(located)?;
                let sd = semidirect_product(bg, &specs, cap).map_err(located)?;
                let info = SemidirectInfo {
                    base_name: base.clone(),
                    base_order: bg.order(),
                    base_abelian: bg.is_abelian(),
                    acting_order: sd.acting.order(),
                };
                (sd.group, Some(info))
            }
        };
        let built = Arc::new(BuiltGroup {
            name: name.to_string(),
            group: Arc::new(group),
            flags: e.flags,
            semidirect,
        });
        Ok(self
            .built
            .lock()
            .unwrap()
            .entry(name.to_string())
            .or_insert(built)
            .clone())
    }
}

pub fn build_family(b: &Builder, cap: usize) -> Result<Group> {
    match *b {
        Builder::Cyclic(n) => builders::cyclic(n, cap),
        Builder::Dihedral(n) => builders::dihedral(n, cap),
        Builder::Symmetric(n) => builders::symmetric(n, cap),
        Builder::Alternating(n) => builders::alternating(n, cap),
        Builder::Psl2(q) => builders::psl2(q, cap),
        Builder::Psl2Gamma(q, e) => builders::psl2_gamma(q, e, cap),
    }
}

/// Parses every `*.grp` file of `dir` (sorted by file name).
pub fn load_corpus(dir: &Path, cap: usize) -> Result<Catalog> {
    let mut files: Vec<_> = std::fs::read_dir(dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "grp"))
        .collect();
    files.sort();
    let mut entries = Vec::new();
    for f in files {
        entries.extend(parse_file(&f)?);
    }
    Catalog::new(entries, cap)
}
