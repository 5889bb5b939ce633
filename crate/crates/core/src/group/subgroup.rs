use std::sync::{Arc, OnceLock};

use bitvec::prelude::*;

use super::{Elem, GroupTable};
use crate::error::{Error, Result};

/// A subgroup of a [`GroupTable`], kept as a sorted member list plus a bitset.
///
/// Subgroups are compared by member set. Each lazily owns a local
/// [`GroupTable`] whose element `i` is `members()[i]`.
#[derive(Clone)]
pub struct Subgroup {
    parent: Arc<GroupTable>,
    members: Vec<Elem>,
    mask: BitVec,
    gens: Vec<Elem>,
    is_normal: bool,
    // shared between clones so an interned subgroup builds its table once
    local: Arc<OnceLock<Arc<GroupTable>>>,
}

impl std::fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Subgroup")
            .field("parent", &self.parent.name())
            .field("order", &self.members.len())
            .field("is_normal", &self.is_normal)
            .finish()
    }
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.parent, &other.parent) && self.members == other.members
    }
}

impl Eq for Subgroup {}

fn closure(parent: &GroupTable, gens: &[Elem]) -> (Vec<Elem>, BitVec) {
    let mut mask = bitvec![0; parent.order()];
    mask.set(0, true);
    let mut members = vec![0];
    let mut head = 0;
    while head < members.len() {
        let a = members[head];
        head += 1;
        for &s in gens {
            let b = parent.mul(a, s);
            if !mask[b as usize] {
                mask.set(b as usize, true);
                members.push(b);
            }
        }
    }
    members.sort_unstable();
    (members, mask)
}

impl Subgroup {
    fn build(parent: &Arc<GroupTable>, members: Vec<Elem>, mask: BitVec, gens: Vec<Elem>) -> Subgroup {
        let is_normal = members.len() == parent.order()
            || parent
                .generators()
                .iter()
                .all(|&s| members.iter().all(|&m| mask[parent.conj(m, s) as usize]));
        Subgroup { parent: parent.clone(), members, mask, gens, is_normal, local: Arc::new(OnceLock::new()) }
    }

    /// Smallest subgroup containing `gens`.
    pub fn generated_by(parent: &Arc<GroupTable>, gens: &[Elem]) -> Subgroup {
        let gens: Vec<Elem> = gens.iter().copied().filter(|&g| g != 0).collect();
        let (members, mask) = closure(parent, &gens);
        Subgroup::build(parent, members, mask, gens)
    }

    /// Subgroup generated by words in the parent's generators. Each word is a
    /// list of signed 1-based generator positions; negative means inverse.
    pub fn from_words(parent: &Arc<GroupTable>, words: &[Vec<i64>]) -> Result<Subgroup> {
        let gens = parent.generators();
        let mut elems = Vec::with_capacity(words.len());
        for w in words {
            let mut x = 0;
            for &k in w {
                let pos = k.unsigned_abs() as usize;
                if k == 0 || pos > gens.len() {
                    return Err(Error::UnknownGenerator(k));
                }
                let g = gens[pos - 1];
                x = parent.mul(x, if k < 0 { parent.inv(g) } else { g });
            }
            elems.push(x);
        }
        Ok(Subgroup::generated_by(parent, &elems))
    }

    /// Subgroup with the given member set, which must already be closed.
    pub(crate) fn from_members(parent: &Arc<GroupTable>, mut members: Vec<Elem>) -> Subgroup {
        members.sort_unstable();
        members.dedup();
        let mut mask = bitvec![0; parent.order()];
        for &m in &members {
            mask.set(m as usize, true);
        }
        debug_assert!(
            members.len() > 256 || members.iter().all(|&a| members.iter().all(|&b| mask[parent.mul(a, b) as usize]))
        );
        let gens = greedy_generators(parent, &members);
        Subgroup::build(parent, members, mask, gens)
    }

    /// Members of `parent` satisfying `pred`; the predicate must define a subgroup.
    pub(crate) fn filter(host: &Subgroup, pred: impl Fn(Elem) -> bool) -> Subgroup {
        let members = host.members.iter().copied().filter(|&y| pred(y)).collect();
        Subgroup::from_members(&host.parent, members)
    }

    pub fn whole(parent: &Arc<GroupTable>) -> Subgroup {
        let members: Vec<Elem> = parent.elements().collect();
        let mask = bitvec![1; parent.order()];
        let gens = parent.generators().to_vec();
        Subgroup::build(parent, members, mask, gens)
    }

    pub fn trivial(parent: &Arc<GroupTable>) -> Subgroup {
        Subgroup::generated_by(parent, &[])
    }

    pub fn parent(&self) -> &Arc<GroupTable> {
        &self.parent
    }

    pub fn members(&self) -> &[Elem] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn generators(&self) -> &[Elem] {
        &self.gens
    }

    pub fn is_normal(&self) -> bool {
        self.is_normal
    }

    pub fn is_whole(&self) -> bool {
        self.members.len() == self.parent.order()
    }

    #[inline]
    pub fn contains(&self, g: Elem) -> bool {
        self.mask[g as usize]
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.members.iter().all(|&m| other.contains(m))
    }

    /// Position of `g` in the member list, i.e. its index in [`Subgroup::local`].
    pub fn local_index(&self, g: Elem) -> Option<Elem> {
        if self.is_whole() {
            return Some(g);
        }
        self.members.binary_search(&g).ok().map(|i| i as Elem)
    }

    /// The subgroup as a group in its own right; the whole group maps to its parent.
    pub fn local(&self) -> &Arc<GroupTable> {
        self.local.get_or_init(|| {
            if self.is_whole() {
                return self.parent.clone();
            }
            let n = self.members.len();
            let name = format!("{}<{}>", self.parent.name(), n);
            let gens: Vec<Elem> = self.gens.iter().map(|&g| self.local_index(g).unwrap()).collect();
            let right: Vec<Vec<Elem>> = self
                .gens
                .iter()
                .map(|&s| {
                    self.members
                        .iter()
                        .map(|&m| self.local_index(self.parent.mul(m, s)).unwrap())
                        .collect()
                })
                .collect();
            let project = || {
                let mut project = vec![Elem::MAX; self.parent.order()];
                for (i, &m) in self.members.iter().enumerate() {
                    project[m as usize] = i as Elem;
                }
                (self.parent.clone(), self.members.clone(), project)
            };
            Arc::new(GroupTable::from_right_action(name, n, gens, right, project))
        })
    }

    /// This subgroup viewed inside `host.local()`; requires `self ≤ host`.
    pub fn relative_to(&self, host: &Subgroup) -> Subgroup {
        assert!(self.is_subgroup_of(host), "not contained in host");
        let local = host.local();
        let members = self.members.iter().map(|&m| host.local_index(m).unwrap()).collect();
        Subgroup::from_members(local, members)
    }

    /// Join `⟨self, other⟩`.
    pub fn join(&self, other: &Subgroup) -> Subgroup {
        if other.is_subgroup_of(self) {
            return self.clone();
        }
        if self.is_subgroup_of(other) {
            return other.clone();
        }
        let gens: Vec<Elem> = self.gens.iter().chain(&other.gens).copied().collect();
        Subgroup::generated_by(&self.parent, &gens)
    }

    /// `{y ∈ self : [x, y] ∈ n}`, the centralizer of the coset `n·x`.
    pub fn coset_centralizer(&self, n: &Subgroup, x: Elem) -> Subgroup {
        let g = &self.parent;
        Subgroup::filter(self, |y| n.contains(g.commutator(x, y)))
    }

    /// `{y ∈ self : x^y ∈ n·x ∪ n·x⁻¹}`.
    pub fn extended_coset_centralizer(&self, n: &Subgroup, x: Elem) -> Subgroup {
        let g = &self.parent;
        let xi = g.inv(x);
        Subgroup::filter(self, |y| {
            let c = g.conj(x, y);
            n.contains(g.mul(c, xi)) || n.contains(g.mul(c, x))
        })
    }

    /// `{y ∈ self : x · x^y ∈ n}`, the elements inverting the coset of `x`.
    pub fn inverting_set(&self, n: &Subgroup, x: Elem) -> Vec<Elem> {
        let g = &self.parent;
        self.members.iter().copied().filter(|&y| n.contains(g.mul(x, g.conj(x, y)))).collect()
    }
}

fn greedy_generators(parent: &GroupTable, members: &[Elem]) -> Vec<Elem> {
    let mut gens = Vec::new();
    let mut reached = bitvec![0; parent.order()];
    reached.set(0, true);
    let mut list = vec![0];
    for &m in members {
        if reached[m as usize] {
            continue;
        }
        gens.push(m);
        let mut head = 0;
        while head < list.len() {
            let a = list[head];
            head += 1;
            for &s in &gens {
                let b = parent.mul(a, s);
                if !reached[b as usize] {
                    reached.set(b as usize, true);
                    list.push(b);
                }
            }
        }
    }
    gens
}

/// All normal subgroups, ordered by size and then member list.
/// Smallest normal subgroup containing `x`. Conjugates are added one at a
/// time, so the generating set stays small.
pub fn normal_closure(parent: &Arc<GroupTable>, x: Elem) -> Subgroup {
    let mut gens = if x == 0 { Vec::new() } else { vec![x] };
    let (mut members, mut mask) = closure(parent, &gens);
    'grow: loop {
        for i in 0..gens.len() {
            for &s in parent.generators() {
                let c = parent.conj(gens[i], s);
                if !mask[c as usize] {
                    gens.push(c);
                    (members, mask) = closure(parent, &gens);
                    continue 'grow;
                }
            }
        }
        break;
    }
    Subgroup::build(parent, members, mask, gens)
}

pub fn normal_subgroups(parent: &Arc<GroupTable>) -> Vec<Subgroup> {
    let cl = parent.classes();
    let mut found: Vec<Subgroup> = Vec::new();
    let push = |s: Subgroup, found: &mut Vec<Subgroup>| {
        if !found.iter().any(|t| t.members == s.members) {
            found.push(s);
            true
        } else {
            false
        }
    };
    for c in 0..cl.len() {
        push(normal_closure(parent, cl.rep(c)), &mut found);
    }
    let mut i = 0;
    while i < found.len() {
        let mut j = 0;
        while j < i {
            let joined = found[i].join(&found[j]);
            push(joined, &mut found);
            j += 1;
        }
        i += 1;
    }
    found.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.members.cmp(&b.members)));
    found
}
