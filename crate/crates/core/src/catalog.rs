//! Built-in group fixtures.
//!
//! The files under `catalog/` are generated by `scripts/gen_catalog.py`.

use crate::groupfile::GroupFile;

const SOURCES: &[(&str, &str)] = &[
    ("c2", include_str!("../catalog/c2.group")),
    ("c4", include_str!("../catalog/c4.group")),
    ("c6", include_str!("../catalog/c6.group")),
    ("s3", include_str!("../catalog/s3.group")),
    ("d8", include_str!("../catalog/d8.group")),
    ("q8", include_str!("../catalog/q8.group")),
    ("d12", include_str!("../catalog/d12.group")),
    ("a4", include_str!("../catalog/a4.group")),
    ("sl23", include_str!("../catalog/sl23.group")),
    ("s4", include_str!("../catalog/s4.group")),
    ("gl23", include_str!("../catalog/gl23.group")),
    ("q16", include_str!("../catalog/q16.group")),
    ("sd16", include_str!("../catalog/sd16.group")),
    ("d16", include_str!("../catalog/d16.group")),
    ("c2xq8", include_str!("../catalog/c2xq8.group")),
    ("s3xc4", include_str!("../catalog/s3xc4.group")),
    ("a5", include_str!("../catalog/a5.group")),
    ("s5", include_str!("../catalog/s5.group")),
    ("es32p", include_str!("../catalog/es32p.group")),
    ("es32m", include_str!("../catalog/es32m.group")),
    ("2a8", include_str!("../catalog/2a8.group")),
];

/// Every fixture, slow ones included, in catalog order.
pub fn catalog() -> Vec<GroupFile> {
    SOURCES
        .iter()
        .map(|(key, text)| GroupFile::parse(text).unwrap_or_else(|e| panic!("catalog entry {key}: {e}")))
        .collect()
}

/// Fixtures swept by default.
pub fn standard() -> Vec<GroupFile> {
    catalog().into_iter().filter(|f| !f.slow).collect()
}

/// Looks up a fixture by key (`q8`, `q8.group`) or by display name (`Q8`, `GL(2,3)`).
pub fn lookup(name: &str) -> Option<GroupFile> {
    let key = name.strip_suffix(".group").unwrap_or(name);
    let key = std::path::Path::new(key).file_name()?.to_str()?;
    SOURCES
        .iter()
        .position(|(k, _)| k.eq_ignore_ascii_case(key))
        .map(|i| GroupFile::parse(SOURCES[i].1).expect("catalog entry parses"))
        .or_else(|| catalog().into_iter().find(|f| f.name.eq_ignore_ascii_case(name)))
}
