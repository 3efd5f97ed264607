//! Binary dumps of enumerated groups: `BFG1`, a little-endian u64 element
//! count, then each canonical key as a u32 length followed by its bytes.

use std::collections::HashMap;
use std::fs;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};

use super::{closure, FiniteGroup, Group};

const MAGIC: &[u8; 4] = b"BFG1";

/// Environment variable naming the directory for cached closures.
pub const CACHE_ENV: &str = "BEAUVILLE_CACHE_DIR";

pub fn write_dump<G: Group>(g: &FiniteGroup<G>, path: &Path) -> Result<()> {
    let mut out = BufWriter::new(fs::File::create(path)?);
    out.write_all(MAGIC)?;
    out.write_all(&(g.order() as u64).to_le_bytes())?;
    let mut buf = Vec::new();
    for &e in g.elements() {
        buf.clear();
        g.group().encode(e, &mut buf);
        out.write_all(&(buf.len() as u32).to_le_bytes())?;
        out.write_all(&buf)?;
    }
    out.flush()?;
    Ok(())
}

/// Reads a dump written by [`write_dump`]; `generators` are attached to the
/// result and must be members.
pub fn read_dump<G: Group>(group: G, generators: &[G::Elem], path: &Path) -> Result<FiniteGroup<G>> {
    let bytes = fs::read(path)?;
    let bad = |what: &str| Error::Malformed(format!("{}: {what}", path.display()));
    if bytes.len() < 12 || &bytes[..4] != MAGIC {
        return Err(bad("not a BFG1 group dump"));
    }
    let count = u64::from_le_bytes(bytes[4..12].try_into().unwrap()) as usize;
    let mut pos = 12;
    let mut elements = Vec::with_capacity(count);
    let mut index = HashMap::with_capacity(count);
    for i in 0..count {
        let len_bytes = bytes.get(pos..pos + 4).ok_or_else(|| bad("truncated"))?;
        let len = u32::from_le_bytes(len_bytes.try_into().unwrap()) as usize;
        pos += 4;
        let key = bytes.get(pos..pos + len).ok_or_else(|| bad("truncated"))?;
        pos += len;
        let e = group.decode(key).ok_or_else(|| bad("undecodable element"))?;
        if index.insert(e, i as u32).is_some() {
            return Err(bad("duplicate element"));
        }
        elements.push(e);
    }
    if pos != bytes.len() {
        return Err(bad("trailing bytes"));
    }
    if elements.first() != Some(&group.identity()) {
        return Err(bad("first element is not the identity"));
    }
    if generators.iter().any(|g| !index.contains_key(g)) {
        return Err(bad("generators missing from dump"));
    }
    Ok(FiniteGroup::from_parts(group, generators.to_vec(), elements, index))
}

/// Closure with an on-disk cache under `$BEAUVILLE_CACHE_DIR/<name>.bfg`.
/// Without the variable this is a plain [`closure`].
pub fn cached_closure<G: Group + Clone>(
    group: G,
    generators: &[G::Elem],
    name: &str,
    bound: usize,
) -> Result<FiniteGroup<G>> {
    let Some(dir) = std::env::var_os(CACHE_ENV).map(PathBuf::from) else {
        return closure(group, generators, bound);
    };
    let path = dir.join(format!("{name}.bfg"));
    if let Ok(g) = read_dump(group.clone(), generators, &path) {
        return Ok(g);
    }
    let g = closure(group, generators, bound)?;
    fs::create_dir_all(&dir)?;
    write_dump(&g, &path)?;
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grouptool::small::Metacyclic;
    use crate::grouptool::DEFAULT_BOUND;

    #[test]
    fn round_trip() {
        let g = Metacyclic::new(3);
        let full = closure(g, &g.generators(), DEFAULT_BOUND).unwrap();
        let dir = std::env::temp_dir().join(format!("bfg-test-{}", std::process::id()));
        fs::create_dir_all(&dir).unwrap();
        let path = dir.join("m27.bfg");
        write_dump(&full, &path).unwrap();
        let back = read_dump(g, &g.generators(), &path).unwrap();
        assert_eq!(back.elements(), full.elements());
        let raw = fs::read(&path).unwrap();
        assert_eq!(&raw[..4], b"BFG1");
        assert_eq!(u64::from_le_bytes(raw[4..12].try_into().unwrap()), 27);
        fs::write(&path, b"nope").unwrap();
        assert!(read_dump(g, &[], &path).is_err());
        fs::remove_dir_all(&dir).unwrap();
    }
}
