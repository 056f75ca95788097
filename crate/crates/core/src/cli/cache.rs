//! On-disk cache of group enumerations.
//!
//! Layout (little-endian): magic, format version `u32`, descriptor (`u16`
//! length + UTF-8), variant `u8` (0 matrix, 1 permutation), `p: u32`,
//! `f: u32`, `n: u16` (matrix size or degree), element count `u64`, then
//! the elements in enumeration order (matrices as row-major `u16` field
//! indices, permutations as 1-based `u8` images), then a class flag `u8`
//! with optional class runs (`u32` count, then per class a `u32` length and
//! `u32` indices), and finally the SHA-256 of everything before it.

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use sha2::{Digest, Sha256};

use crate::classical::{make_group, GroupSpec};
use crate::gf::FieldElement;
use crate::grp::classes::{ClassData, ConjugacyClass};
use crate::grp::group::ElementSet;
use crate::grp::{Element, Enumeration, Group, Matrix, Perm};
use crate::{Error, Result};

pub const FORMAT_VERSION: u32 = 1;
const MAGIC: &[u8; 8] = b"TWOFUSN\0";

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CacheStatus {
    Hit,
    /// No usable file; built and stored.
    Built,
    /// A file was present but stale; rebuilt and stored.
    Rebuilt(String),
    /// No cache directory was given.
    Uncached,
}

impl CacheStatus {
    pub fn note(&self) -> Option<String> {
        match self {
            CacheStatus::Rebuilt(why) => Some(format!("cache rebuilt ({why})")),
            _ => None,
        }
    }
}

pub fn cache_path(dir: &Path, descriptor: &str) -> PathBuf {
    let name: String = descriptor
        .chars()
        .map(|c| if c.is_ascii_alphanumeric() { c } else { '_' })
        .collect();
    dir.join(format!("{name}.tfc"))
}

fn put_u16(b: &mut Vec<u8>, x: u16) {
    b.extend_from_slice(&x.to_le_bytes());
}

fn put_u32(b: &mut Vec<u8>, x: u32) {
    b.extend_from_slice(&x.to_le_bytes());
}

/// Serialises an enumerated group.
pub fn encode(g: &Group, spec: &GroupSpec, version: u32) -> Result<Vec<u8>> {
    let e = g.enumeration()?;
    let mut b = Vec::with_capacity(64 + e.len() * 32);
    b.extend_from_slice(MAGIC);
    put_u32(&mut b, version);
    let d = spec.to_string();
    put_u16(&mut b, d.len() as u16);
    b.extend_from_slice(d.as_bytes());
    let amb = g.ambient();
    match amb.field() {
        Some(f) => {
            b.push(0);
            put_u32(&mut b, f.characteristic());
            put_u32(&mut b, f.degree());
            put_u16(&mut b, amb.dim() as u16);
        }
        None => {
            b.push(1);
            put_u32(&mut b, 0);
            put_u32(&mut b, 0);
            put_u16(&mut b, amb.dim() as u16);
        }
    }
    b.extend_from_slice(&(e.len() as u64).to_le_bytes());
    for x in e.iter() {
        match x {
            Element::Matrix(m) => m.entries().for_each(|v| put_u16(&mut b, v.0 as u16)),
            Element::Perm(p) => b.extend(p.images().map(|i| i as u8 + 1)),
        }
    }
    match g.classes.get() {
        Some(c) => {
            b.push(1);
            put_u32(&mut b, c.classes.len() as u32);
            for cl in &c.classes {
                put_u32(&mut b, cl.members.len() as u32);
                cl.members.iter().for_each(|&m| put_u32(&mut b, m));
            }
        }
        None => b.push(0),
    }
    let digest = Sha256::digest(&b);
    b.extend_from_slice(&digest[..]);
    Ok(b)
}

struct Reader<'a> {
    b: &'a [u8],
    pos: usize,
}

impl Reader<'_> {
    fn take(&mut self, n: usize) -> Result<&[u8]> {
        let end = self.pos.checked_add(n).filter(|&e| e <= self.b.len());
        let end = end.ok_or_else(|| Error::Integrity("truncated cache file".into()))?;
        let s = &self.b[self.pos..end];
        self.pos = end;
        Ok(s)
    }

    fn u8(&mut self) -> Result<u8> {
        Ok(self.take(1)?[0])
    }

    fn u16(&mut self) -> Result<u16> {
        Ok(u16::from_le_bytes(self.take(2)?.try_into().unwrap()))
    }

    fn u32(&mut self) -> Result<u32> {
        Ok(u32::from_le_bytes(self.take(4)?.try_into().unwrap()))
    }

    fn u64(&mut self) -> Result<u64> {
        Ok(u64::from_le_bytes(self.take(8)?.try_into().unwrap()))
    }
}

pub enum Decoded {
    /// Written by another format version.
    Stale(u32),
    Group(Group),
}

/// Parses a cache file for `spec`, verifying the digest and every element.
pub fn decode(bytes: &[u8], spec: &GroupSpec) -> Result<Decoded> {
    if bytes.len() < MAGIC.len() + 4 + 32 || &bytes[..MAGIC.len()] != MAGIC {
        return Err(Error::Integrity("bad magic".into()));
    }
    let mut r = Reader {
        b: bytes,
        pos: MAGIC.len(),
    };
    let version = r.u32()?;
    if version != FORMAT_VERSION {
        return Ok(Decoded::Stale(version));
    }
    let (body, digest) = bytes.split_at(bytes.len() - 32);
    if Sha256::digest(body)[..] != *digest {
        return Err(Error::Integrity("digest mismatch".into()));
    }
    r.b = body;
    let dlen = r.u16()? as usize;
    let descriptor = std::str::from_utf8(r.take(dlen)?).map_err(|_| Error::Integrity("descriptor is not UTF-8".into()))?;
    if descriptor != spec.to_string() {
        return Err(Error::Integrity(format!("file holds {descriptor}, wanted {spec}")));
    }
    let g = make_group(spec)?;
    let amb = g.ambient().clone();
    let variant = r.u8()?;
    let (p, f, n) = (r.u32()?, r.u32()?, r.u16()? as usize);
    match (variant, amb.field()) {
        (0, Some(fld)) if fld.characteristic() == p && fld.degree() == f && amb.dim() == n => {}
        (1, None) if amb.dim() == n => {}
        _ => return Err(Error::Integrity("header does not match the group".into())),
    }
    let count = r.u64()? as usize;
    let mut set = ElementSet::with_capacity_and_hasher(count, Default::default());
    for _ in 0..count {
        let x = if variant == 0 {
            let raw = r.take(2 * n * n)?;
            let e: Vec<FieldElement> = raw
                .chunks_exact(2)
                .map(|c| FieldElement(u16::from_le_bytes([c[0], c[1]]) as u32))
                .collect();
            Element::Matrix(Matrix::from_entries(n, &e))
        } else {
            let raw = r.take(n)?;
            let im: Vec<usize> = raw.iter().map(|&v| (v as usize).wrapping_sub(1)).collect();
            Element::Perm(Perm::from_images(&im).map_err(|_| Error::Integrity("bad permutation".into()))?)
        };
        amb.validate(&x).map_err(|e| Error::Integrity(e.to_string()))?;
        if amb.canon(x.clone()) != x || !set.insert(x) {
            return Err(Error::Integrity("non-canonical or repeated element".into()));
        }
    }
    if !g.gens().iter().all(|x| set.contains(x)) {
        return Err(Error::Integrity("generators missing from payload".into()));
    }
    let classes = if r.u8()? == 1 {
        let k = r.u32()? as usize;
        let mut classes = Vec::with_capacity(k);
        let mut class_of = vec![u32::MAX; count];
        for id in 0..k {
            let len = r.u32()? as usize;
            let mut members = Vec::with_capacity(len);
            for _ in 0..len {
                let m = r.u32()?;
                if m as usize >= count || class_of[m as usize] != u32::MAX {
                    return Err(Error::Integrity("bad class run".into()));
                }
                class_of[m as usize] = id as u32;
                members.push(m);
            }
            let rep = members
                .iter()
                .map(|&i| &set[i as usize])
                .min()
                .ok_or_else(|| Error::Integrity("empty class".into()))?
                .clone();
            classes.push(ConjugacyClass { rep, members });
        }
        if class_of.contains(&u32::MAX) {
            return Err(Error::Integrity("class runs do not cover the group".into()));
        }
        Some(ClassData { classes, class_of })
    } else {
        None
    };
    if r.pos != body.len() {
        return Err(Error::Integrity("trailing bytes".into()));
    }
    g.install_enumeration(Enumeration::from_set(set))?;
    if let Some(c) = classes {
        let _ = g.classes.set(Arc::new(c));
    }
    Ok(Decoded::Group(g))
}

/// Writes the enumeration of `g` (which must be enumerated) to `dir`.
pub fn store(g: &Group, spec: &GroupSpec, dir: &Path) -> Result<PathBuf> {
    fs::create_dir_all(dir)?;
    let path = cache_path(dir, &spec.to_string());
    let bytes = encode(g, spec, FORMAT_VERSION)?;
    let tmp = path.with_extension(format!("tmp{}", std::process::id()));
    fs::write(&tmp, bytes)?;
    fs::rename(&tmp, &path)?;
    Ok(path)
}

/// `Ok(None)` when there is no file.
pub fn load(spec: &GroupSpec, dir: &Path) -> Result<Option<Decoded>> {
    let path = cache_path(dir, &spec.to_string());
    match fs::read(&path) {
        Ok(bytes) => decode(&bytes, spec).map(Some),
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok(None),
        Err(e) => Err(e.into()),
    }
}

/// An enumerated group, from the cache when possible. Integrity failures
/// are returned as errors, never silently repaired.
pub fn load_or_build(spec: &GroupSpec, dir: Option<&Path>, cap: usize) -> Result<(Group, CacheStatus)> {
    let Some(dir) = dir else {
        let g = make_group(spec)?;
        g.enumerate_with_cap(cap)?;
        return Ok((g, CacheStatus::Uncached));
    };
    let status = match load(spec, dir)? {
        Some(Decoded::Group(g)) => return Ok((g, CacheStatus::Hit)),
        Some(Decoded::Stale(v)) => CacheStatus::Rebuilt(format!("format version {v}, current {FORMAT_VERSION}")),
        None => CacheStatus::Built,
    };
    let g = make_group(spec)?;
    g.enumerate_with_cap(cap)?;
    store(&g, spec, dir)?;
    Ok((g, status))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grp::conjugacy_classes;

    #[test]
    fn round_trip_and_stale_version() {
        let dir = tempfile::tempdir().unwrap();
        let spec: GroupSpec = "PSL(3,3)".parse().unwrap();
        let (g, st) = load_or_build(&spec, Some(dir.path()), 1 << 20).unwrap();
        assert_eq!(st, CacheStatus::Built);
        conjugacy_classes(&g).unwrap();
        store(&g, &spec, dir.path()).unwrap();
        let (h, st) = load_or_build(&spec, Some(dir.path()), 1 << 20).unwrap();
        assert_eq!(st, CacheStatus::Hit);
        assert_eq!(h.order().unwrap(), 5616);
        let a: Vec<_> = g.enumeration().unwrap().iter().cloned().collect();
        let b: Vec<_> = h.enumeration().unwrap().iter().cloned().collect();
        assert_eq!(a, b);
        assert_eq!(conjugacy_classes(&h).unwrap().classes.len(), 12);
        let stale = encode(&g, &spec, FORMAT_VERSION + 1).unwrap();
        fs::write(cache_path(dir.path(), "PSL(3,3)"), stale).unwrap();
        let (_, st) = load_or_build(&spec, Some(dir.path()), 1 << 20).unwrap();
        assert!(st.note().unwrap().contains("cache rebuilt"));
    }

    #[test]
    fn corruption_is_an_integrity_error() {
        let dir = tempfile::tempdir().unwrap();
        let spec: GroupSpec = "Alt(5)".parse().unwrap();
        load_or_build(&spec, Some(dir.path()), 1000).unwrap();
        let path = cache_path(dir.path(), "Alt(5)");
        let mut bytes = fs::read(&path).unwrap();
        let k = bytes.len() / 2;
        bytes[k] ^= 0x55;
        fs::write(&path, bytes).unwrap();
        assert!(matches!(load_or_build(&spec, Some(dir.path()), 1000), Err(Error::Integrity(_))));
    }
}
