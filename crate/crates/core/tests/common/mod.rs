#![allow(dead_code)]

use std::sync::Arc;

use clifford_count::catalog;
use clifford_count::clifford::{Ambient, Triple};
use clifford_count::group::DEFAULT_ORDER_CAP;
use clifford_count::groupfile::LoadedGroup;

pub fn load(name: &str) -> LoadedGroup {
    catalog::lookup(name).unwrap_or_else(|| panic!("no catalog group {name}")).load(DEFAULT_ORDER_CAP).unwrap()
}

pub fn standard() -> Vec<LoadedGroup> {
    catalog::standard().iter().map(|f| f.load(DEFAULT_ORDER_CAP).unwrap()).collect()
}

pub fn ambient(g: &LoadedGroup) -> Arc<Ambient> {
    Ambient::new(g.group.clone())
}

pub fn triple(name: &str, normal: &str, theta: usize) -> Triple {
    let g = load(name);
    let amb = ambient(&g);
    Triple::new(&amb, &g.normal(normal).unwrap(), theta).unwrap()
}
