use super::{Elem, GroupTable};

/// Conjugacy classes in canonical order: element order, then size, then
/// smallest member. Class 0 is the identity.
#[derive(Clone, Debug)]
pub struct ConjClassSet {
    classes: Vec<Vec<Elem>>,
    reps: Vec<Elem>,
    class_of: Vec<u32>,
    inverse_class: Vec<u32>,
    centralizer_orders: Vec<usize>,
    /// `powers[c][l]` is the class of `rep_c^l` for `l < order(rep_c)`.
    powers: Vec<Vec<u32>>,
}

impl ConjClassSet {
    pub(crate) fn compute(g: &GroupTable) -> ConjClassSet {
        let n = g.order();
        let mut seen = vec![false; n];
        let mut raw: Vec<Vec<Elem>> = Vec::new();
        for a in g.elements() {
            if seen[a as usize] {
                continue;
            }
            seen[a as usize] = true;
            let mut orbit = vec![a];
            let mut head = 0;
            while head < orbit.len() {
                let x = orbit[head];
                head += 1;
                for &s in g.generators() {
                    let y = g.conj(x, s);
                    if !seen[y as usize] {
                        seen[y as usize] = true;
                        orbit.push(y);
                    }
                }
            }
            orbit.sort_unstable();
            raw.push(orbit);
        }
        raw.sort_by_key(|c| (g.element_order(c[0]), c.len(), c[0]));
        let mut class_of = vec![0u32; n];
        for (i, c) in raw.iter().enumerate() {
            for &x in c {
                class_of[x as usize] = i as u32;
            }
        }
        let reps: Vec<Elem> = raw.iter().map(|c| c[0]).collect();
        let inverse_class = reps.iter().map(|&r| class_of[g.inv(r) as usize]).collect();
        let centralizer_orders = raw.iter().map(|c| n / c.len()).collect();
        let powers = reps
            .iter()
            .map(|&r| {
                let mut out = Vec::new();
                let mut x = 0;
                for _ in 0..g.element_order(r) {
                    out.push(class_of[x as usize]);
                    x = g.mul(x, r);
                }
                out
            })
            .collect();
        ConjClassSet { classes: raw, reps, class_of, inverse_class, centralizer_orders, powers }
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Sorted members of class `c`.
    pub fn members(&self, c: usize) -> &[Elem] {
        &self.classes[c]
    }

    pub fn size(&self, c: usize) -> usize {
        self.classes[c].len()
    }

    pub fn rep(&self, c: usize) -> Elem {
        self.reps[c]
    }

    pub fn reps(&self) -> &[Elem] {
        &self.reps
    }

    pub fn class_of(&self, g: Elem) -> usize {
        self.class_of[g as usize] as usize
    }

    /// The class `K°` of inverses.
    pub fn inverse_class(&self, c: usize) -> usize {
        self.inverse_class[c] as usize
    }

    pub fn centralizer_order(&self, c: usize) -> usize {
        self.centralizer_orders[c]
    }

    /// Class of the `k`-th powers of class `c`.
    pub fn power_class(&self, c: usize, k: i64) -> usize {
        let p = &self.powers[c];
        p[k.rem_euclid(p.len() as i64) as usize] as usize
    }

    /// Order of the elements of class `c`.
    pub fn element_order(&self, c: usize) -> u32 {
        self.powers[c].len() as u32
    }

    pub fn is_real(&self, c: usize) -> bool {
        self.inverse_class(c) == c
    }
}
