//! Clifford-theoretic data for a triple `(G, N, θ)`: orbits and (extended)
//! inertia groups, extensions `θ_x` of `θ` to `N⟨x⟩`, goodness, the
//! σ-indicator, and the Gow indicator.
//!
//! Everything is expressed in the element indices of the ambient group `G`.
//! Subgroups such as `G_θ`, `G*_θ` and `N⟨x⟩` are [`Subgroup`]s of `G` and
//! are interned, so each distinct subgroup builds its table and characters
//! once per [`Ambient`].

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use bitvec::prelude::*;
use serde::Serialize;

use crate::chartab::{character_table_at, CharacterTable, ClassFunction};
use crate::error::{Error, Result};
use crate::group::{Elem, GroupTable, QuotientGroup, Subgroup};
use crate::par::{self, Execution};

/// A group together with caches shared by every triple built over it.
pub struct Ambient {
    group: Arc<GroupTable>,
    whole: Subgroup,
    exec: Execution,
    interned: Mutex<HashMap<Vec<Elem>, Subgroup>>,
}

impl std::fmt::Debug for Ambient {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Ambient").field("group", &self.group.name()).finish_non_exhaustive()
    }
}

impl Ambient {
    pub fn new(group: Arc<GroupTable>) -> Arc<Ambient> {
        Ambient::with_execution(group, Execution::default())
    }

    pub fn with_execution(group: Arc<GroupTable>, exec: Execution) -> Arc<Ambient> {
        let whole = Subgroup::whole(&group);
        Arc::new(Ambient { group, whole, exec, interned: Mutex::new(HashMap::new()) })
    }

    pub fn group(&self) -> &Arc<GroupTable> {
        &self.group
    }

    pub fn whole(&self) -> &Subgroup {
        &self.whole
    }

    pub fn exec(&self) -> Execution {
        self.exec
    }

    /// Common conductor for every character computed here: `exponent(G)`.
    pub fn conductor(&self) -> u32 {
        self.group.exponent()
    }

    /// Returns the canonical copy of `s`, sharing its lazily built tables.
    pub fn intern(&self, s: Subgroup) -> Subgroup {
        if s.is_whole() {
            return self.whole.clone();
        }
        let mut map = self.interned.lock().unwrap();
        map.entry(s.members().to_vec()).or_insert(s).clone()
    }

    /// `Irr(S)` with values at the ambient conductor.
    pub fn irr(&self, s: &Subgroup) -> Result<Arc<CharacterTable>> {
        character_table_at(s.local(), self.conductor(), self.exec)
    }

    /// `Irr(G)`.
    pub fn irr_g(&self) -> Result<Arc<CharacterTable>> {
        self.irr(&self.whole)
    }
}

/// `θ^g(n) = θ(g n g⁻¹)` for a character `θ` of `n.local()`.
pub fn conjugate_character(n: &Subgroup, theta: &ClassFunction, g: Elem) -> ClassFunction {
    let parent = n.parent();
    let gi = parent.inv(g);
    let local = n.local();
    let values = local
        .classes()
        .reps()
        .iter()
        .map(|&r| {
            let m = parent.conj(n.members()[r as usize], gi);
            theta.at(n.local_index(m).expect("N is normal")).clone()
        })
        .collect();
    ClassFunction::new(local.clone(), values)
}

/// Whether `χ^y = ψ` for characters of `l.local()`, where `y` normalizes `l`.
pub fn conjugate_equals(l: &Subgroup, chi: &ClassFunction, y: Elem, psi: &ClassFunction) -> bool {
    let parent = l.parent();
    let yi = parent.inv(y);
    let local = l.local();
    local.classes().reps().iter().enumerate().all(|(c, &r)| {
        let m = parent.conj(l.members()[r as usize], yi);
        chi.at(l.local_index(m).expect("y normalizes the subgroup")) == psi.at_class(c)
    })
}

/// Whether `ψ`, a character of `host.local()`, restricts to `θ` on `n ≤ host`.
pub fn restricts_to(host: &Subgroup, psi: &ClassFunction, n: &Subgroup, theta: &ClassFunction) -> bool {
    n.local().classes().reps().iter().enumerate().all(|(c, &r)| {
        let m = n.members()[r as usize];
        psi.at(host.local_index(m).expect("n lies in host")) == theta.at_class(c)
    })
}

/// θ's orbit and stabilizers.
#[derive(Clone, Debug)]
pub struct InertiaData {
    pub theta: ClassFunction,
    /// Distinct conjugates `θ^g`, starting with `θ`.
    pub orbit: Vec<ClassFunction>,
    /// `G_θ = {g : θ^g = θ}`.
    pub inertia: Subgroup,
    /// `G*_θ = {g : θ^g ∈ {θ, θ̄}}`.
    pub extended_inertia: Subgroup,
    pub theta_is_real: bool,
    pub dual_is_g_conjugate: bool,
}

/// Computes [`InertiaData`] by sweeping the cosets of `n` in `G`.
pub fn inertia_data(n: &Subgroup, theta: &ClassFunction) -> Result<InertiaData> {
    if !theta.is_irreducible() {
        return Err(Error::NotIrreducible);
    }
    let g = n.parent();
    let dual = theta.conjugate();
    let theta_is_real = *theta == dual;
    let mut seen = bitvec![0; g.order()];
    let mut orbit = vec![theta.clone()];
    let mut fix = Vec::new();
    let mut ext = Vec::new();
    for x in g.elements() {
        if seen[x as usize] {
            continue;
        }
        let coset: Vec<Elem> = n.members().iter().map(|&m| g.mul(m, x)).collect();
        for &c in &coset {
            seen.set(c as usize, true);
        }
        let conj = conjugate_character(n, theta, x);
        if conj == *theta {
            fix.extend_from_slice(&coset);
            ext.extend_from_slice(&coset);
        } else if conj == dual {
            ext.extend_from_slice(&coset);
        }
        if !orbit.contains(&conj) {
            orbit.push(conj);
        }
    }
    let dual_is_g_conjugate = orbit.contains(&dual);
    Ok(InertiaData {
        theta: theta.clone(),
        orbit,
        inertia: Subgroup::from_members(g, fix),
        extended_inertia: Subgroup::from_members(g, ext),
        theta_is_real,
        dual_is_g_conjugate,
    })
}

/// The extensions of `θ` to `L = N⟨x⟩`.
#[derive(Clone, Debug)]
pub struct ExtensionFamily {
    pub x: Elem,
    pub local: Subgroup,
    table: Arc<CharacterTable>,
    /// Indices into `Irr(L)` of the characters restricting to `θ`.
    pub members: Vec<usize>,
}

impl ExtensionFamily {
    pub fn extensions(&self) -> impl Iterator<Item = &ClassFunction> {
        self.members.iter().map(|&i| &self.table.irreducibles()[i])
    }

    /// The canonical `θ_x`: first extension in table order.
    pub fn chosen(&self) -> &ClassFunction {
        &self.table.irreducibles()[self.members[0]]
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn table(&self) -> &Arc<CharacterTable> {
        &self.table
    }
}

/// One row of a [`SigmaReport`], for a class of `Ḡ_θ = G_θ/N`.
#[derive(Clone, Debug, Serialize)]
pub struct SigmaRow {
    pub class: usize,
    pub size: usize,
    /// Ambient representative: the smallest element of the class
    /// representative's coset.
    pub rep: Elem,
    /// Order of the coset in `Ḡ_θ`.
    pub order: u32,
    pub good: bool,
    pub sigma: i8,
    pub witness: Option<Elem>,
    pub two_regular: bool,
    /// Whether the class is closed under inversion in `Ḡ_θ`.
    pub real: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SigmaReport {
    pub rows: Vec<SigmaRow>,
}

impl SigmaReport {
    pub fn good_count(&self) -> usize {
        self.rows.iter().filter(|r| r.good).count()
    }

    /// `#(σ = +1) − #(σ = −1)` over the good classes.
    pub fn signed_count(&self) -> i64 {
        self.rows.iter().filter(|r| r.good).map(|r| r.sigma as i64).sum()
    }
}

/// One row of a [`GowReport`], for an involution of `G*_θ/N`.
#[derive(Clone, Debug, Serialize)]
pub struct GowRow {
    pub coset: Elem,
    pub rep: Elem,
    pub eps: i8,
    /// Whether the coset lies in `Ḡ_θ`.
    pub in_inertia: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct GowReport {
    pub rows: Vec<GowRow>,
}

impl GowReport {
    pub fn plus(&self) -> usize {
        self.rows.iter().filter(|r| r.eps == 1).count()
    }

    pub fn minus(&self) -> usize {
        self.rows.iter().filter(|r| r.eps == -1).count()
    }
}

/// A triple `(G, N, θ)` with its inertia data and lazily built quotients.
pub struct Triple {
    ambient: Arc<Ambient>,
    label: String,
    normal: Subgroup,
    theta_index: Option<usize>,
    inertia: InertiaData,
    quotient_inertia: OnceLock<QuotientGroup>,
    quotient_extended: OnceLock<QuotientGroup>,
    families: Mutex<HashMap<Elem, Arc<ExtensionFamily>>>,
    sigma_rows: OnceLock<SigmaReport>,
    gow_rows: OnceLock<GowReport>,
}

impl std::fmt::Debug for Triple {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Triple")
            .field("group", &self.ambient.group.name())
            .field("normal", &self.normal.order())
            .field("theta", &self.theta_index)
            .finish_non_exhaustive()
    }
}

impl Triple {
    /// `θ` is the `theta_index`-th irreducible of `N` in canonical order.
    pub fn new(ambient: &Arc<Ambient>, normal: &Subgroup, theta_index: usize) -> Result<Triple> {
        let normal = ambient.intern(normal.clone());
        let table = ambient.irr(&normal)?;
        let theta = table.get(theta_index).cloned().ok_or_else(|| {
            Error::Precondition(format!("theta index {theta_index} out of range 0..{}", table.len()))
        })?;
        let mut t = Triple::from_character(ambient, &normal, theta)?;
        t.theta_index = Some(theta_index);
        t.label = format!("{}|N{}|theta{}", ambient.group.name(), normal.order(), theta_index);
        Ok(t)
    }

    /// `θ` given directly as an irreducible character of `normal.local()`.
    pub fn from_character(ambient: &Arc<Ambient>, normal: &Subgroup, theta: ClassFunction) -> Result<Triple> {
        if !Arc::ptr_eq(normal.parent(), &ambient.group) {
            return Err(Error::GroupMismatch);
        }
        if !normal.is_normal() {
            return Err(Error::NotNormal(format!("subgroup of order {}", normal.order())));
        }
        let normal = ambient.intern(normal.clone());
        let mut inertia = inertia_data(&normal, &theta)?;
        inertia.inertia = ambient.intern(inertia.inertia);
        inertia.extended_inertia = ambient.intern(inertia.extended_inertia);
        Ok(Triple {
            ambient: ambient.clone(),
            label: format!("{}|N{}", ambient.group.name(), normal.order()),
            normal,
            theta_index: None,
            inertia,
            quotient_inertia: OnceLock::new(),
            quotient_extended: OnceLock::new(),
            families: Mutex::new(HashMap::new()),
            sigma_rows: OnceLock::new(),
            gow_rows: OnceLock::new(),
        })
    }

    /// Replaces the label used in verification subjects.
    pub fn with_label(mut self, label: impl Into<String>) -> Triple {
        self.label = label.into();
        self
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn ambient(&self) -> &Arc<Ambient> {
        &self.ambient
    }

    pub fn group(&self) -> &Arc<GroupTable> {
        &self.ambient.group
    }

    pub fn normal(&self) -> &Subgroup {
        &self.normal
    }

    pub fn theta(&self) -> &ClassFunction {
        &self.inertia.theta
    }

    pub fn theta_index(&self) -> Option<usize> {
        self.theta_index
    }

    pub fn inertia(&self) -> &InertiaData {
        &self.inertia
    }

    /// `Ḡ_θ = G_θ/N`.
    pub fn quotient_inertia(&self) -> &QuotientGroup {
        self.quotient_inertia.get_or_init(|| {
            QuotientGroup::of(&self.inertia.inertia, &self.normal).expect("N is normal in G_θ")
        })
    }

    /// `Ḡ*_θ = G*_θ/N`.
    pub fn quotient_extended(&self) -> &QuotientGroup {
        self.quotient_extended.get_or_init(|| {
            QuotientGroup::of(&self.inertia.extended_inertia, &self.normal).expect("N is normal in G*_θ")
        })
    }

    pub fn conjugate_theta(&self, g: Elem) -> ClassFunction {
        conjugate_character(&self.normal, self.theta(), g)
    }

    /// `θ^e = θ̄`.
    pub fn sends_theta_to_dual(&self, e: Elem) -> bool {
        let inr = &self.inertia;
        if !inr.extended_inertia.contains(e) {
            return false;
        }
        inr.theta_is_real || !inr.inertia.contains(e)
    }

    fn require_inertia(&self, x: Elem) -> Result<()> {
        if self.inertia.inertia.contains(x) {
            Ok(())
        } else {
            Err(Error::NotInInertia(x as usize))
        }
    }

    /// `N⟨x⟩`.
    pub fn local_subgroup(&self, x: Elem) -> Subgroup {
        let mut gens = self.normal.generators().to_vec();
        gens.push(x);
        self.ambient.intern(Subgroup::generated_by(self.group(), &gens))
    }

    /// All extensions of `θ` to `N⟨x⟩`; `x` must lie in `G_θ`.
    pub fn extensions(&self, x: Elem) -> Result<Arc<ExtensionFamily>> {
        self.require_inertia(x)?;
        if let Some(f) = self.families.lock().unwrap().get(&x) {
            return Ok(f.clone());
        }
        let l = self.local_subgroup(x);
        let table = self.ambient.irr(&l)?;
        let members: Vec<usize> = table
            .irreducibles()
            .iter()
            .enumerate()
            .filter(|(_, chi)| restricts_to(&l, chi, &self.normal, self.theta()))
            .map(|(i, _)| i)
            .collect();
        if members.is_empty() {
            return Err(Error::Defect("an invariant character has no extension to N<x>".into()));
        }
        let fam = Arc::new(ExtensionFamily { x, local: l, table, members });
        Ok(self.families.lock().unwrap().entry(x).or_insert(fam).clone())
    }

    /// `C_{G_θ}(x̄) = {y ∈ G_θ : [x, y] ∈ N}`.
    pub fn coset_centralizer(&self, x: Elem) -> Subgroup {
        self.inertia.inertia.coset_centralizer(&self.normal, x)
    }

    /// Goodness of `x̄` with respect to a chosen extension `ext` of `θ` to `N⟨x⟩`.
    pub fn is_good_with(&self, x: Elem, ext: &ClassFunction) -> Result<bool> {
        self.require_inertia(x)?;
        let l = self.local_subgroup(x);
        let c = self.coset_centralizer(x);
        Ok(c.members().iter().all(|&y| conjugate_equals(&l, ext, y, ext)))
    }

    /// `θ_x^y = θ_x` for every `y ∈ C_{G_θ}(x̄)`.
    pub fn is_good(&self, x: Elem) -> Result<bool> {
        let fam = self.extensions(x)?;
        self.is_good_with(x, fam.chosen())
    }

    /// Elements `e ∈ G*_θ` with `x·x^e ∈ N` and `θ^e = θ̄`, ascending.
    pub fn witnesses(&self, x: Elem) -> Vec<Elem> {
        self.inertia
            .extended_inertia
            .inverting_set(&self.normal, x)
            .into_iter()
            .filter(|&e| self.sends_theta_to_dual(e))
            .collect()
    }

    /// `+1` if `ext^e = conj(ext)` on `N⟨x⟩`, else `−1`.
    pub fn sigma_with(&self, x: Elem, ext: &ClassFunction, e: Elem) -> i8 {
        let l = self.local_subgroup(x);
        if conjugate_equals(&l, ext, e, &ext.conjugate()) {
            1
        } else {
            -1
        }
    }

    /// σ(x̄) with the first witness found, or `0` if there is none. Callers
    /// are expected to pass good elements.
    pub fn sigma(&self, x: Elem) -> Result<(i8, Option<Elem>)> {
        let fam = self.extensions(x)?;
        let g = self.group();
        let found = self.inertia.extended_inertia.members().iter().copied().find(|&e| {
            self.normal.contains(g.mul(x, g.conj(x, e))) && self.sends_theta_to_dual(e)
        });
        Ok(match found {
            Some(e) => (self.sigma_with(x, fam.chosen(), e), Some(e)),
            None => (0, None),
        })
    }

    /// Gow indicator `ε_t(θ) = (1/|N|) Σ_{n∈N} θ((nt)²)`; requires `t² ∈ N`.
    pub fn gow(&self, t: Elem) -> Result<i8> {
        gow_indicator(&self.normal, self.theta(), t)
    }

    /// Per-class goodness and σ over `Ḡ_θ`.
    pub fn sigma_report(&self) -> Result<&SigmaReport> {
        if let Some(r) = self.sigma_rows.get() {
            return Ok(r);
        }
        let r = self.compute_sigma_report()?;
        Ok(self.sigma_rows.get_or_init(|| r))
    }

    fn compute_sigma_report(&self) -> Result<SigmaReport> {
        let q = self.quotient_inertia();
        let qt = q.table();
        let cl = qt.classes();
        let classes: Vec<usize> = (0..cl.len()).collect();
        let rows = par::map_slice(self.ambient.exec, &classes, |&c| -> Result<SigmaRow> {
            let x = q.section(cl.rep(c));
            let good = self.is_good(x)?;
            let (sigma, witness) = if good { self.sigma(x)? } else { (0, None) };
            let order = cl.element_order(c);
            Ok(SigmaRow {
                class: c,
                size: cl.size(c),
                rep: x,
                order,
                good,
                sigma,
                witness,
                two_regular: order % 2 == 1,
                real: cl.is_real(c),
            })
        });
        Ok(SigmaReport { rows: rows.into_iter().collect::<Result<_>>()? })
    }

    /// Gow indicators over the involutions of `G*_θ/N`.
    pub fn gow_report(&self) -> Result<&GowReport> {
        if let Some(r) = self.gow_rows.get() {
            return Ok(r);
        }
        let r = self.compute_gow_report()?;
        Ok(self.gow_rows.get_or_init(|| r))
    }

    fn compute_gow_report(&self) -> Result<GowReport> {
        let q = self.quotient_extended();
        let cosets = q.involution_cosets();
        let rows = par::map_slice(self.ambient.exec, &cosets, |&c| -> Result<GowRow> {
            let t = q.section(c);
            Ok(GowRow { coset: c, rep: t, eps: self.gow(t)?, in_inertia: self.inertia.inertia.contains(t) })
        });
        Ok(GowReport { rows: rows.into_iter().collect::<Result<_>>()? })
    }
}

/// `ε_t(θ)` for a character `θ` of `n.local()` and `t` with `t² ∈ N`.
pub fn gow_indicator(n: &Subgroup, theta: &ClassFunction, t: Elem) -> Result<i8> {
    let g = n.parent();
    if !n.contains(g.mul(t, t)) {
        return Err(Error::NotInvolutionCoset(t as usize));
    }
    let mut sum = crate::cyclotomic::Cyclotomic::zero(theta.degree().conductor());
    for &m in n.members() {
        let nt = g.mul(m, t);
        let sq = g.mul(nt, nt);
        sum = &sum + theta.at(n.local_index(sq).unwrap());
    }
    let order = num_rational::BigRational::from_integer(n.order().into());
    let v = sum.div_rational(&order)?;
    match v.is_rational_integer() {
        Some(k @ -1..=1) => Ok(k as i8),
        _ => Err(Error::Defect(format!("Gow indicator evaluated to {v}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::group::DEFAULT_ORDER_CAP;

    fn triple(name: &str, normal: &str, theta: usize) -> Triple {
        let g = catalog::lookup(name).unwrap().load(DEFAULT_ORDER_CAP).unwrap();
        let amb = Ambient::new(g.group.clone());
        Triple::new(&amb, &g.normal(normal).unwrap(), theta).unwrap()
    }

    #[test]
    fn s3_over_c3() {
        let t = triple("s3", "C3", 1);
        let inr = t.inertia();
        assert_eq!(inr.inertia.order(), 3);
        assert_eq!(inr.extended_inertia.order(), 6);
        assert!(!inr.theta_is_real && inr.dual_is_g_conjugate);
        let g = t.group().clone();
        let tr = g.elements().find(|&x| g.element_order(x) == 2).unwrap();
        assert_eq!(t.conjugate_theta(tr), t.theta().conjugate());
        assert_eq!(t.gow(tr).unwrap(), 1);
        assert!(matches!(t.is_good(tr), Err(Error::NotInInertia(_))));
    }

    #[test]
    fn q8_gow_types() {
        let t = triple("q8", "Z", 1);
        let rep = t.gow_report().unwrap();
        assert_eq!((rep.plus(), rep.minus()), (1, 3));
        assert_eq!(rep.rows[0].eps, 1);
        let fam = t.extensions(t.group().generators()[0]).unwrap();
        assert_eq!(fam.len(), 2);
    }

    #[test]
    fn gl23_sigma() {
        let t = triple("gl23", "Z", 1);
        let rep = t.sigma_report().unwrap();
        let mut sig: Vec<i8> = rep.rows.iter().filter(|r| r.good).map(|r| r.sigma).collect();
        sig.sort();
        assert_eq!(sig, vec![-1, 1, 1]);
        assert!(rep.rows.iter().filter(|r| r.good).all(|r| r.real));
    }
}
