use std::sync::Arc;

use super::{Elem, GroupTable, Subgroup};
use crate::error::{Error, Result};

/// The quotient `H/N` of a subgroup `H` by a subgroup `N ⊴ H`, both living in
/// the same parent group. Cosets are numbered by their smallest member.
#[derive(Clone, Debug)]
pub struct QuotientGroup {
    host: Subgroup,
    kernel: Subgroup,
    table: Arc<GroupTable>,
    /// Coset index per parent element; `Elem::MAX` outside the host.
    projection: Vec<Elem>,
    section: Vec<Elem>,
}

impl QuotientGroup {
    /// `G/N` for a normal subgroup of the whole group.
    pub fn new(kernel: &Subgroup) -> Result<QuotientGroup> {
        QuotientGroup::of(&Subgroup::whole(kernel.parent()), kernel)
    }

    /// `host/kernel`; the kernel must be a normal subgroup of the host.
    pub fn of(host: &Subgroup, kernel: &Subgroup) -> Result<QuotientGroup> {
        let g = host.parent();
        if !kernel.is_subgroup_of(host) {
            return Err(Error::NotNormal("kernel is not contained in the host".into()));
        }
        let normal = host
            .generators()
            .iter()
            .all(|&s| kernel.members().iter().all(|&m| kernel.contains(g.conj(m, s))));
        if !normal {
            return Err(Error::NotNormal(format!("subgroup of order {} is not normal", kernel.order())));
        }
        let mut projection = vec![Elem::MAX; g.order()];
        let mut section = Vec::new();
        for &x in host.members() {
            if projection[x as usize] != Elem::MAX {
                continue;
            }
            let q = section.len() as Elem;
            section.push(x);
            for &n in kernel.members() {
                projection[g.mul(n, x) as usize] = q;
            }
        }
        let n = section.len();
        let gens: Vec<Elem> = host.generators().iter().map(|&s| projection[s as usize]).collect();
        let right: Vec<Vec<Elem>> = host
            .generators()
            .iter()
            .map(|&s| section.iter().map(|&x| projection[g.mul(x, s) as usize]).collect())
            .collect();
        let name = format!("{}/{}", g.name(), kernel.order());
        let lifted = || (g.clone(), section.clone(), projection.clone());
        let table = Arc::new(GroupTable::from_right_action(name, n, gens, right, lifted));
        Ok(QuotientGroup { host: host.clone(), kernel: kernel.clone(), table, projection, section })
    }

    pub fn parent(&self) -> &Arc<GroupTable> {
        self.host.parent()
    }

    pub fn host(&self) -> &Subgroup {
        &self.host
    }

    pub fn kernel(&self) -> &Subgroup {
        &self.kernel
    }

    pub fn table(&self) -> &Arc<GroupTable> {
        &self.table
    }

    pub fn order(&self) -> usize {
        self.section.len()
    }

    /// Coset of a host element.
    pub fn projection(&self, g: Elem) -> Elem {
        let q = self.projection[g as usize];
        assert!(q != Elem::MAX, "element {g} is outside the host");
        q
    }

    /// Smallest member of coset `q`.
    pub fn section(&self, q: Elem) -> Elem {
        self.section[q as usize]
    }

    /// Cosets whose square is trivial, the identity first.
    pub fn involution_cosets(&self) -> Vec<Elem> {
        self.table.elements().filter(|&q| self.table.element_order(q) <= 2).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{enumerate_group, GroupSpec};

    #[test]
    fn s3_mod_c3() {
        let g = Arc::new(
            enumerate_group(
                "s3",
                &GroupSpec::Permutations { degree: 3, generators: vec![vec![2, 3, 1], vec![2, 1, 3]] },
                100,
            )
            .unwrap(),
        );
        let c3 = Subgroup::generated_by(&g, &[g.generators()[0]]);
        let q = QuotientGroup::new(&c3).unwrap();
        assert_eq!(q.order(), 2);
        assert_eq!(q.involution_cosets(), vec![0, 1]);
        for a in g.elements() {
            assert_eq!(q.projection(q.section(q.projection(a))), q.projection(a));
            for b in g.elements() {
                assert_eq!(q.projection(g.mul(a, b)), q.table().mul(q.projection(a), q.projection(b)));
            }
        }
        let c2 = Subgroup::generated_by(&g, &[g.generators()[1]]);
        assert!(matches!(QuotientGroup::new(&c2), Err(Error::NotNormal(_))));
        assert_eq!(QuotientGroup::new(&Subgroup::whole(&g)).unwrap().order(), 1);
        let t = QuotientGroup::new(&Subgroup::trivial(&g)).unwrap();
        assert_eq!(t.order(), 6);
    }
}
