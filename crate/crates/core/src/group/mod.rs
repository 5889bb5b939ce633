//! Finite groups given by permutation generators or Cayley tables.
//!
//! Elements are dense indices `0..order` with `0` the identity. Groups of
//! order at most [`DENSE_LIMIT`] get a full multiplication table; larger
//! permutation groups multiply on demand through a hash of their images.

mod classes;
mod quotient;
mod subgroup;

use std::collections::{HashMap, VecDeque};
use std::sync::{Arc, Mutex, OnceLock};

use crate::chartab::CharacterTable;
use crate::error::{Error, Result};
use crate::par::{self, Execution};

pub use classes::ConjClassSet;
pub use quotient::QuotientGroup;
pub use subgroup::{normal_closure, normal_subgroups, Subgroup};

/// Element index inside a [`GroupTable`].
pub type Elem = u32;

/// Groups up to this order store a full multiplication table.
pub const DENSE_LIMIT: usize = 4096;

/// Default bound on the order of an enumerated group.
pub const DEFAULT_ORDER_CAP: usize = 20000;

/// Input description of a group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    /// Permutations of `1..=degree`, each given as its list of images.
    Permutations { degree: usize, generators: Vec<Vec<usize>> },
    /// Full table with 0-based entries; row and column 0 belong to the identity.
    Cayley { table: Vec<Vec<usize>> },
}

struct PermStore {
    degree: usize,
    images: Vec<u16>,
    index: HashMap<Box<[u16]>, Elem>,
}

impl PermStore {
    fn perm(&self, a: Elem) -> &[u16] {
        let d = self.degree;
        &self.images[a as usize * d..(a as usize + 1) * d]
    }

    fn mul(&self, a: Elem, b: Elem) -> Elem {
        thread_local! {
            static SCRATCH: std::cell::RefCell<Vec<u16>> = const { std::cell::RefCell::new(Vec::new()) };
        }
        let (pa, pb) = (self.perm(a), self.perm(b));
        SCRATCH.with(|s| {
            let mut s = s.borrow_mut();
            s.clear();
            s.extend(pa.iter().map(|&i| pb[i as usize]));
            self.index[&s[..]]
        })
    }

    fn inv(&self, a: Elem) -> Elem {
        let pa = self.perm(a);
        let mut q = vec![0u16; self.degree];
        for (i, &j) in pa.iter().enumerate() {
            q[j as usize] = i as u16;
        }
        self.index[&q[..]]
    }
}

enum Backend {
    Dense(Vec<Elem>),
    Perm(PermStore),
    /// Multiplication delegated to a parent group through `lift`/`project`.
    Lifted { parent: Arc<GroupTable>, lift: Vec<Elem>, project: Vec<Elem> },
}

/// A fully enumerated finite group.
pub struct GroupTable {
    name: String,
    order: usize,
    backend: Backend,
    inv: Vec<Elem>,
    generators: Vec<Elem>,
    element_orders: Vec<u32>,
    exponent: u32,
    classes: OnceLock<ConjClassSet>,
    pub(crate) char_tables: Mutex<HashMap<u32, Arc<CharacterTable>>>,
}

impl std::fmt::Debug for GroupTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("GroupTable")
            .field("name", &self.name)
            .field("order", &self.order)
            .finish_non_exhaustive()
    }
}

/// BFS spanning tree of the right Cayley graph, used to fill dense tables.
struct Tree {
    order: Vec<Elem>,
    parent: Vec<Elem>,
    via: Vec<u32>,
}

fn spanning_tree(n: usize, right: &[Vec<Elem>]) -> Tree {
    let mut parent = vec![Elem::MAX; n];
    let mut via = vec![0; n];
    let mut order = Vec::with_capacity(n);
    parent[0] = 0;
    order.push(0);
    let mut head = 0;
    while head < order.len() {
        let a = order[head];
        head += 1;
        for (s, r) in right.iter().enumerate() {
            let b = r[a as usize];
            if parent[b as usize] == Elem::MAX {
                parent[b as usize] = a;
                via[b as usize] = s as u32;
                order.push(b);
            }
        }
    }
    Tree { order, parent, via }
}

fn dense_table(n: usize, right: &[Vec<Elem>]) -> Vec<Elem> {
    let tree = spanning_tree(n, right);
    assert_eq!(tree.order.len(), n, "generators do not reach every element");
    let mut t = vec![0; n * n];
    for a in 0..n {
        let row = &mut t[a * n..(a + 1) * n];
        row[0] = a as Elem;
        for &b in &tree.order[1..] {
            let prev = row[tree.parent[b as usize] as usize];
            row[b as usize] = right[tree.via[b as usize] as usize][prev as usize];
        }
    }
    t
}

impl GroupTable {
    fn finish(name: String, order: usize, backend: Backend, generators: Vec<Elem>) -> GroupTable {
        let mut g = GroupTable {
            name,
            order,
            backend,
            inv: Vec::new(),
            generators,
            element_orders: Vec::new(),
            exponent: 1,
            classes: OnceLock::new(),
            char_tables: Mutex::new(HashMap::new()),
        };
        g.inv = match &g.backend {
            Backend::Dense(t) => (0..order)
                .map(|a| t[a * order..(a + 1) * order].iter().position(|&x| x == 0).unwrap() as Elem)
                .collect(),
            Backend::Perm(p) => (0..order as Elem).map(|a| p.inv(a)).collect(),
            Backend::Lifted { parent, lift, project } => {
                lift.iter().map(|&x| project[parent.inv(x) as usize]).collect()
            }
        };
        g.element_orders = (0..order as Elem)
            .map(|a| {
                let (mut x, mut k) = (a, 1);
                while x != 0 {
                    x = g.mul(x, a);
                    k += 1;
                }
                k
            })
            .collect();
        g.exponent = g
            .element_orders
            .iter()
            .fold(1u64, |acc, &o| num_integer::lcm(acc, o as u64)) as u32;
        g
    }

    /// Builds a group from right-multiplication maps by its generators.
    ///
    /// `right[s][a]` is the index of `a · gens[s]`; `lifted` supplies the
    /// fallback representation for groups above [`DENSE_LIMIT`].
    pub(crate) fn from_right_action(
        name: String,
        n: usize,
        gens: Vec<Elem>,
        right: Vec<Vec<Elem>>,
        lifted: impl FnOnce() -> (Arc<GroupTable>, Vec<Elem>, Vec<Elem>),
    ) -> GroupTable {
        let backend = if n <= DENSE_LIMIT {
            Backend::Dense(dense_table(n, &right))
        } else {
            let (parent, lift, project) = lifted();
            Backend::Lifted { parent, lift, project }
        };
        GroupTable::finish(name, n, backend, gens)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.order as Elem
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        match &self.backend {
            Backend::Dense(t) => t[a as usize * self.order + b as usize],
            Backend::Perm(p) => p.mul(a, b),
            Backend::Lifted { parent, lift, project } => {
                project[parent.mul(lift[a as usize], lift[b as usize]) as usize]
            }
        }
    }

    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        self.inv[a as usize]
    }

    /// `x^y = y⁻¹ x y`.
    pub fn conj(&self, x: Elem, y: Elem) -> Elem {
        self.mul(self.mul(self.inv(y), x), y)
    }

    /// `[x, y] = x⁻¹ y⁻¹ x y`.
    pub fn commutator(&self, x: Elem, y: Elem) -> Elem {
        self.mul(self.inv(x), self.conj(x, y))
    }

    pub fn pow(&self, a: Elem, k: i64) -> Elem {
        let o = self.element_orders[a as usize] as i64;
        let mut e = k.rem_euclid(o);
        let (mut base, mut acc) = (a, 0);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Generator indices in input order.
    pub fn generators(&self) -> &[Elem] {
        &self.generators
    }

    pub fn element_order(&self, a: Elem) -> u32 {
        self.element_orders[a as usize]
    }

    pub fn element_orders(&self) -> &[u32] {
        &self.element_orders
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    pub fn is_dense(&self) -> bool {
        matches!(self.backend, Backend::Dense(_))
    }

    /// Image list (1-based) for permutation-backed groups.
    pub fn permutation(&self, a: Elem) -> Option<Vec<usize>> {
        match &self.backend {
            Backend::Perm(p) => Some(p.perm(a).iter().map(|&i| i as usize + 1).collect()),
            _ => None,
        }
    }

    pub fn classes(&self) -> &ConjClassSet {
        self.classes.get_or_init(|| ConjClassSet::compute(self))
    }

    /// Checks associativity exhaustively up to order 2000, on a fixed sample above.
    pub fn check_associativity(&self, exec: Execution) -> bool {
        let n = self.order as Elem;
        let triple_ok = |a: Elem, b: Elem, c: Elem| {
            self.mul(self.mul(a, b), c) == self.mul(a, self.mul(b, c))
        };
        if self.order <= 2000 {
            par::map_range(exec, self.order, |a| {
                let a = a as Elem;
                (0..n).all(|b| (0..n).all(|c| triple_ok(a, b, c)))
            })
            .into_iter()
            .all(|ok| ok)
        } else {
            let mut state: u64 = 0x9e37_79b9_7f4a_7c15;
            let mut next = || {
                state ^= state << 13;
                state ^= state >> 7;
                state ^= state << 17;
                (state % n as u64) as Elem
            };
            (0..200_000).all(|_| {
                let (a, b, c) = (next(), next(), next());
                triple_ok(a, b, c)
            })
        }
    }
}

fn validate_permutation(pos: usize, degree: usize, images: &[usize]) -> Result<()> {
    if images.len() != degree {
        return Err(Error::InvalidPermutation {
            generator: pos,
            reason: format!("expected {degree} images, found {}", images.len()),
        });
    }
    let mut seen = vec![0usize; degree + 1];
    for (i, &im) in images.iter().enumerate() {
        if im == 0 || im > degree {
            return Err(Error::InvalidPermutation {
                generator: pos,
                reason: format!("image {im} at position {} is outside 1..={degree}", i + 1),
            });
        }
        if seen[im] != 0 {
            return Err(Error::InvalidPermutation {
                generator: pos,
                reason: format!("image {im} repeated at positions {} and {}", seen[im], i + 1),
            });
        }
        seen[im] = i + 1;
    }
    Ok(())
}

/// Enumerates the group described by `spec`, breadth first over the generators.
pub fn enumerate_group(name: &str, spec: &GroupSpec, cap: usize) -> Result<GroupTable> {
    match spec {
        GroupSpec::Permutations { degree, generators } => enumerate_perms(name, *degree, generators, cap),
        GroupSpec::Cayley { table } => from_cayley(name, table, cap),
    }
}

fn enumerate_perms(name: &str, degree: usize, generators: &[Vec<usize>], cap: usize) -> Result<GroupTable> {
    if degree > u16::MAX as usize {
        return Err(Error::Precondition(format!("degree {degree} is too large")));
    }
    for (i, g) in generators.iter().enumerate() {
        validate_permutation(i + 1, degree, g)?;
    }
    let gens: Vec<Vec<u16>> = generators
        .iter()
        .map(|g| g.iter().map(|&i| (i - 1) as u16).collect())
        .collect();
    let identity: Vec<u16> = (0..degree as u16).collect();
    let mut images = identity.clone();
    let mut index: HashMap<Box<[u16]>, Elem> = HashMap::new();
    index.insert(identity.into_boxed_slice(), 0);
    let mut right: Vec<Vec<Elem>> = vec![Vec::new(); gens.len()];
    let mut queue = VecDeque::from([0 as Elem]);
    let mut count = 1usize;
    let mut scratch = vec![0u16; degree];
    while let Some(a) = queue.pop_front() {
        for (s, g) in gens.iter().enumerate() {
            let base = a as usize * degree;
            for i in 0..degree {
                scratch[i] = g[images[base + i] as usize];
            }
            let b = match index.get(&scratch[..]) {
                Some(&b) => b,
                None => {
                    if count >= cap {
                        return Err(Error::OrderCapExceeded { cap });
                    }
                    let b = count as Elem;
                    count += 1;
                    images.extend_from_slice(&scratch);
                    index.insert(scratch.clone().into_boxed_slice(), b);
                    queue.push_back(b);
                    b
                }
            };
            right[s].push(b);
        }
    }
    let gen_elems: Vec<Elem> = right.iter().map(|r| r[0]).collect();
    let backend = if count <= DENSE_LIMIT {
        Backend::Dense(dense_table(count, &right))
    } else {
        Backend::Perm(PermStore { degree, images, index })
    };
    Ok(GroupTable::finish(name.to_string(), count, backend, gen_elems))
}

fn from_cayley(name: &str, table: &[Vec<usize>], cap: usize) -> Result<GroupTable> {
    let n = table.len();
    if n == 0 {
        return Err(Error::NotAGroup("empty table".into()));
    }
    if n > cap {
        return Err(Error::OrderCapExceeded { cap });
    }
    for (i, row) in table.iter().enumerate() {
        if row.len() != n {
            return Err(Error::NotAGroup(format!("row {i} has {} entries, expected {n}", row.len())));
        }
        if let Some(j) = row.iter().position(|&x| x >= n) {
            return Err(Error::NotAGroup(format!("entry ({i}, {j}) is out of range")));
        }
    }
    for g in 0..n {
        if table[0][g] != g || table[g][0] != g {
            return Err(Error::NotAGroup("element 0 is not an identity".into()));
        }
    }
    for a in 0..n {
        if !table[a].contains(&0) {
            return Err(Error::NotAGroup(format!("element {a} has no inverse")));
        }
        let mut seen = vec![false; n];
        for &x in &table[a] {
            if std::mem::replace(&mut seen[x], true) {
                return Err(Error::NotAGroup(format!("row {a} repeats entry {x}")));
            }
        }
    }
    let flat: Vec<Elem> = table.iter().flatten().map(|&x| x as Elem).collect();
    // greedy generating set, needed for class orbits
    let mut gens = Vec::new();
    let mut reached = vec![false; n];
    reached[0] = true;
    for g in 1..n {
        if reached[g] {
            continue;
        }
        gens.push(g as Elem);
        let mut stack: Vec<usize> = (0..n).filter(|&x| reached[x]).collect();
        while let Some(x) = stack.pop() {
            for &s in &gens {
                let y = flat[x * n + s as usize] as usize;
                if !reached[y] {
                    reached[y] = true;
                    stack.push(y);
                }
            }
        }
    }
    let g = GroupTable::finish(name.to_string(), n, Backend::Dense(flat), gens);
    if !g.check_associativity(Execution::default()) {
        return Err(Error::NotAGroup("multiplication is not associative".into()));
    }
    Ok(g)
}
