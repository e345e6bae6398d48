//! Reading posets, presheaves, presheaf maps and nuclei from JSON files.
//!
//! A poset is `{"elements": [ids], "covers": [[lower, upper], ...]}`.
//!
//! A presheaf on a poset given separately is
//! `{"poset": <name or inline poset>, "sets": {p: [ids]}, "restrictions": {"p>q": {id: id}}}`.
//! Restrictions along every covering pair are required (they may be omitted
//! when the source set is empty); any other listed restriction must agree
//! with the composite.
//!
//! A map is `{"source": <presheaf>, "target": <presheaf>, "components": {p: {id: id}}}`
//! where each presheaf is inline or a path relative to the map file.
//!
//! A raw nucleus table is `{"[a]": ["a", "b"], ...}`, keyed by down-sets as
//! printed by [`Frame::show`](crate::nuclei::Frame::show).

use std::collections::{BTreeMap, HashMap};
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::Deserialize;
use thiserror::Error;

use crate::nuclei::{mk_closed, mk_dneg, mk_open, FinitePoset, Frame, NucleiError, Nucleus};
use crate::sheaves::{Presheaf, PresheafMap, SheafError};

#[derive(Debug, Error)]
pub enum InputError {
    #[error("{path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Nuclei(#[from] NucleiError),
    #[error(transparent)]
    Sheaf(#[from] SheafError),
}

type Result<T> = std::result::Result<T, InputError>;

fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(InputError::Invalid(msg.into()))
}

/// An element identifier: a string or a non-negative integer.
#[derive(Clone, Debug, Deserialize, PartialEq, Eq, PartialOrd, Ord)]
#[serde(untagged)]
enum Id {
    Name(String),
    Number(u64),
}

impl Id {
    fn text(&self) -> String {
        match self {
            Id::Name(s) => s.clone(),
            Id::Number(n) => n.to_string(),
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PosetDoc {
    elements: Vec<Id>,
    #[serde(default)]
    covers: Vec<(Id, Id)>,
}

impl PosetDoc {
    fn build(self) -> Result<FinitePoset> {
        let names: Vec<String> = self.elements.iter().map(Id::text).collect();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        let covers: Vec<(String, String)> = self.covers.iter().map(|(a, b)| (a.text(), b.text())).collect();
        let cover_refs: Vec<(&str, &str)> = covers.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
        Ok(FinitePoset::from_named(&refs, &cover_refs)?)
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PresheafDoc {
    /// A name, which is not checked, or an inline poset.
    #[serde(default)]
    poset: Option<serde_json::Value>,
    sets: BTreeMap<String, Vec<Id>>,
    #[serde(default)]
    restrictions: BTreeMap<String, BTreeMap<String, Id>>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum PresheafRef {
    Path(String),
    Inline(PresheafDoc),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MapDoc {
    source: PresheafRef,
    target: PresheafRef,
    components: BTreeMap<String, BTreeMap<String, Id>>,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| InputError::Read { path: path.to_path_buf(), source })
}

pub fn parse_poset(text: &str) -> Result<FinitePoset> {
    serde_json::from_str::<PosetDoc>(text)?.build()
}

pub fn load_poset(path: &Path) -> Result<FinitePoset> {
    parse_poset(&read(path)?)
}

fn point(poset: &FinitePoset, name: &str) -> Result<usize> {
    poset.index(name).ok_or_else(|| InputError::Invalid(format!("unknown element `{name}`")))
}

/// Index of each identifier in its stalk.
fn stalk_index(ids: &[String]) -> HashMap<&str, usize> {
    ids.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect()
}

/// Resolves `{id: id}` into a function between stalks given by their labels.
fn function(what: &str, table: &BTreeMap<String, Id>, from: &[String], to: &[String]) -> Result<Vec<usize>> {
    let target = stalk_index(to);
    if let Some(k) = table.keys().find(|k| !from.contains(k)) {
        return invalid(format!("{what}: `{k}` is not in the source set"));
    }
    from.iter()
        .map(|x| {
            let y = table.get(x).ok_or_else(|| InputError::Invalid(format!("{what}: no image for `{x}`")))?;
            target
                .get(y.text().as_str())
                .copied()
                .ok_or_else(|| InputError::Invalid(format!("{what}: `{}` is not in the target set", y.text())))
        })
        .collect()
}

fn build_presheaf(doc: PresheafDoc, poset: &Arc<FinitePoset>) -> Result<Presheaf> {
    if let Some(inline @ serde_json::Value::Object(_)) = doc.poset {
        if serde_json::from_value::<PosetDoc>(inline)?.build()? != **poset {
            return invalid("the presheaf's inline poset differs from the one given");
        }
    }
    let n = poset.len();
    let mut labels = vec![Vec::new(); n];
    for (name, ids) in &doc.sets {
        let p = point(poset, name)?;
        let ls: Vec<String> = ids.iter().map(Id::text).collect();
        if stalk_index(&ls).len() != ls.len() {
            return invalid(format!("duplicate element in the set at `{name}`"));
        }
        labels[p] = ls;
    }
    let mut given = HashMap::new();
    for (key, table) in &doc.restrictions {
        let Some((hi, lo)) = key.split_once('>') else {
            return invalid(format!("restriction key `{key}` is not of the form `p>q`"));
        };
        let (hi, lo) = (point(poset, hi.trim())?, point(poset, lo.trim())?);
        if !poset.leq(lo, hi) {
            return invalid(format!("no restriction {key}: `{}` is not below `{}`", poset.name(lo), poset.name(hi)));
        }
        given.insert((hi, lo), function(&format!("restriction {key}"), table, &labels[hi], &labels[lo])?);
    }
    let covers = poset.covers();
    let mut maps = HashMap::new();
    for &(lo, hi) in &covers {
        match given.get(&(hi, lo)) {
            Some(m) => {
                maps.insert((hi, lo), m.clone());
            }
            None if labels[hi].is_empty() => {
                maps.insert((hi, lo), Vec::new());
            }
            None => return invalid(format!("missing restriction {}>{}", poset.name(hi), poset.name(lo))),
        }
    }
    let sizes = labels.iter().map(Vec::len).collect();
    let x = Presheaf::from_covers(poset.clone(), sizes, &maps)?.with_labels(labels)?;
    for (&(hi, lo), m) in &given {
        if m.iter().enumerate().any(|(i, &y)| x.res(hi, lo, i) != y) {
            return invalid(format!(
                "restriction {}>{} disagrees with the composite along covers",
                poset.name(hi),
                poset.name(lo)
            ));
        }
    }
    Ok(x)
}

pub fn parse_presheaf(text: &str, poset: &Arc<FinitePoset>) -> Result<Presheaf> {
    build_presheaf(serde_json::from_str(text)?, poset)
}

pub fn load_presheaf(path: &Path, poset: &Arc<FinitePoset>) -> Result<Presheaf> {
    parse_presheaf(&read(path)?, poset)
}

/// A map together with its source and target. Relative presheaf paths are
/// resolved against `dir`.
pub fn parse_map(text: &str, poset: &Arc<FinitePoset>, dir: &Path) -> Result<(Presheaf, Presheaf, PresheafMap)> {
    let doc: MapDoc = serde_json::from_str(text)?;
    let resolve = |r: PresheafRef| match r {
        PresheafRef::Path(p) => load_presheaf(&dir.join(p), poset),
        PresheafRef::Inline(d) => build_presheaf(d, poset),
    };
    let x = resolve(doc.source)?;
    let y = resolve(doc.target)?;
    let mut comps = vec![Vec::new(); poset.len()];
    for (name, table) in &doc.components {
        let p = point(poset, name)?;
        comps[p] = function(&format!("component at `{name}`"), table, &x.labels(p), &y.labels(p))?;
    }
    for (p, c) in comps.iter().enumerate() {
        if c.len() != x.size(p) {
            return invalid(format!("missing component at `{}`", poset.name(p)));
        }
    }
    let h = PresheafMap::new(&x, &y, comps)?;
    Ok((x, y, h))
}

pub fn load_map(path: &Path, poset: &Arc<FinitePoset>) -> Result<(Presheaf, Presheaf, PresheafMap)> {
    let dir = path.parent().unwrap_or(Path::new("."));
    parse_map(&read(path)?, poset, dir)
}

/// A down-set written as comma-separated element names, optionally in
/// brackets; `[]` or the empty string is the empty down-set.
pub fn parse_down_set(poset: &FinitePoset, text: &str) -> Result<u64> {
    let inner = text.trim();
    let inner = inner.strip_prefix('[').and_then(|s| s.strip_suffix(']')).unwrap_or(inner);
    let names: Vec<&str> = inner.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
    Ok(poset.down_set_of(&names)?)
}

/// `id`, `top`, `dneg`, `open:q` or `closed:q` with `q` a down-set.
pub fn parse_nucleus_spec(frame: &Frame, spec: &str) -> Result<Nucleus> {
    let element = |q: &str| -> Result<usize> {
        let bits = parse_down_set(frame.poset(), q)?;
        Ok(frame.index_of(bits).expect("down-sets are frame elements"))
    };
    match spec.trim() {
        "id" => Ok(Nucleus::identity(frame)),
        "top" => Ok(Nucleus::top(frame)),
        "dneg" => Ok(mk_dneg(frame)),
        s => match s.split_once(':') {
            Some(("open", q)) => Ok(mk_open(frame, element(q)?)),
            Some(("closed", q)) => Ok(mk_closed(frame, element(q)?)),
            _ => invalid(format!("unknown nucleus `{spec}`; expected id, top, dneg, open:<q> or closed:<q>")),
        },
    }
}

/// A table of images indexed like the frame's carrier. The table is not
/// checked against the nucleus laws.
pub fn parse_nucleus_table(frame: &Frame, text: &str) -> Result<Vec<usize>> {
    let doc: BTreeMap<String, Vec<Id>> = serde_json::from_str(text)?;
    let poset = frame.poset();
    let mut table = vec![None; frame.len()];
    for (key, image) in &doc {
        let a = frame.index_of(parse_down_set(poset, key)?).expect("down-sets are frame elements");
        let names: Vec<String> = image.iter().map(Id::text).collect();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        let b = frame.index_of(poset.down_set_of(&refs)?).expect("down-sets are frame elements");
        if table[a].replace(b).is_some() {
            return invalid(format!("`{key}` is listed twice"));
        }
    }
    table
        .into_iter()
        .enumerate()
        .map(|(a, b)| b.ok_or_else(|| InputError::Invalid(format!("no image for {}", frame.show(a)))))
        .collect()
}

pub fn load_nucleus_table(frame: &Frame, path: &Path) -> Result<Vec<usize>> {
    parse_nucleus_table(frame, &read(path)?)
}
