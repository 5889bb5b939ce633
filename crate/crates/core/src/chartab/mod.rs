//! Class functions and character tables with exact values.

mod dixon;

use std::cmp::Ordering;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::group::{Elem, GroupTable, Subgroup};
use crate::par::Execution;


fn rat(n: usize) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// A class function on a group: one value per conjugacy class, in the
/// canonical class order of [`GroupTable::classes`].
#[derive(Clone, Debug)]
pub struct ClassFunction {
    group: Arc<GroupTable>,
    values: Vec<Cyclotomic>,
}

impl PartialEq for ClassFunction {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.group, &other.group) && self.values == other.values
    }
}

impl Eq for ClassFunction {}

impl ClassFunction {
    pub fn new(group: Arc<GroupTable>, values: Vec<Cyclotomic>) -> ClassFunction {
        assert_eq!(values.len(), group.classes().len(), "one value per class expected");
        ClassFunction { group, values }
    }

    pub fn trivial(group: &Arc<GroupTable>, conductor: u32) -> ClassFunction {
        let r = group.classes().len();
        ClassFunction::new(group.clone(), vec![Cyclotomic::one(conductor); r])
    }

    /// The character of the regular representation.
    pub fn regular(group: &Arc<GroupTable>, conductor: u32) -> ClassFunction {
        let r = group.classes().len();
        let mut values = vec![Cyclotomic::zero(conductor); r];
        values[0] = Cyclotomic::from_integer(conductor, group.order() as i64);
        ClassFunction::new(group.clone(), values)
    }

    pub fn group(&self) -> &Arc<GroupTable> {
        &self.group
    }

    pub fn values(&self) -> &[Cyclotomic] {
        &self.values
    }

    pub fn at_class(&self, c: usize) -> &Cyclotomic {
        &self.values[c]
    }

    /// Value at an element.
    pub fn at(&self, g: Elem) -> &Cyclotomic {
        &self.values[self.group.classes().class_of(g)]
    }

    pub fn degree(&self) -> &Cyclotomic {
        &self.values[0]
    }

    /// Degree as an integer, when the value at the identity is one.
    pub fn degree_int(&self) -> Option<i64> {
        self.values[0].is_rational_integer()
    }

    pub fn conjugate(&self) -> ClassFunction {
        let values = self.values.iter().map(Cyclotomic::conjugate).collect();
        ClassFunction { group: self.group.clone(), values }
    }

    pub fn is_real(&self) -> bool {
        self.values.iter().all(Cyclotomic::is_real)
    }

    fn check_same(&self, other: &ClassFunction) -> Result<()> {
        if Arc::ptr_eq(&self.group, &other.group) {
            Ok(())
        } else {
            Err(Error::GroupMismatch)
        }
    }

    pub fn add(&self, other: &ClassFunction) -> Result<ClassFunction> {
        self.check_same(other)?;
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect();
        Ok(ClassFunction { group: self.group.clone(), values })
    }

    pub fn sub(&self, other: &ClassFunction) -> Result<ClassFunction> {
        self.check_same(other)?;
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a - b).collect();
        Ok(ClassFunction { group: self.group.clone(), values })
    }

    /// Pointwise product.
    pub fn mul(&self, other: &ClassFunction) -> Result<ClassFunction> {
        self.check_same(other)?;
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a * b).collect();
        Ok(ClassFunction { group: self.group.clone(), values })
    }

    pub fn scale_int(&self, k: i64) -> ClassFunction {
        let values = self.values.iter().map(|v| v.scale_int(k)).collect();
        ClassFunction { group: self.group.clone(), values }
    }

    /// `(1/|G|) Σ_g a(g) · conj(b(g))`.
    pub fn inner_product(&self, other: &ClassFunction) -> Result<Cyclotomic> {
        self.check_same(other)?;
        let cl = self.group.classes();
        let sum: Cyclotomic = (0..cl.len())
            .map(|c| (&self.values[c] * &other.values[c].conjugate()).scale(&rat(cl.size(c))))
            .sum();
        sum.div_rational(&rat(self.group.order()))
    }

    /// Inner product that must be a rational integer (e.g. between characters).
    pub fn multiplicity(&self, other: &ClassFunction) -> Result<i64> {
        self.inner_product(other)?
            .is_rational_integer()
            .ok_or_else(|| Error::Defect("inner product of characters is not an integer".into()))
    }

    /// `⟨χ, χ⟩ = 1` and `χ(1) > 0`.
    pub fn is_irreducible(&self) -> bool {
        self.multiplicity(self).ok() == Some(1) && self.degree_int().is_some_and(|d| d > 0)
    }

    /// Restriction to `h`, a subgroup of this function's group; the result
    /// lives on `h.local()`.
    pub fn restrict(&self, h: &Subgroup) -> Result<ClassFunction> {
        if !Arc::ptr_eq(&self.group, h.parent()) {
            return Err(Error::GroupMismatch);
        }
        let local = h.local();
        let values = local
            .classes()
            .reps()
            .iter()
            .map(|&r| self.at(h.members()[r as usize]).clone())
            .collect();
        Ok(ClassFunction { group: local.clone(), values })
    }

    /// Induction from `h.local()` (this function's group) to `h.parent()`.
    pub fn induce(&self, h: &Subgroup) -> Result<ClassFunction> {
        if !Arc::ptr_eq(&self.group, h.local()) {
            return Err(Error::GroupMismatch);
        }
        let g = h.parent();
        let cl = g.classes();
        let conductor = self.values[0].conductor();
        let mut sums = vec![Cyclotomic::zero(conductor); cl.len()];
        for (i, &m) in h.members().iter().enumerate() {
            let c = cl.class_of(m);
            sums[c] = &sums[c] + self.at(i as Elem);
        }
        let hord = rat(h.order());
        let values = sums
            .into_iter()
            .enumerate()
            .map(|(c, s)| s.scale(&(rat(cl.centralizer_order(c)) / &hord)))
            .collect();
        Ok(ClassFunction { group: g.clone(), values })
    }

    /// Frobenius–Schur indicator `(1/|G|) Σ_g χ(g²)`.
    pub fn fs_indicator(&self) -> Cyclotomic {
        let cl = self.group.classes();
        let sum: Cyclotomic = (0..cl.len())
            .map(|c| self.values[cl.power_class(c, 2)].scale(&rat(cl.size(c))))
            .sum();
        sum.div_rational(&rat(self.group.order())).expect("group order is nonzero")
    }

    /// `ω_χ(K⁺) = |K| χ(g_K) / χ(1)`.
    pub fn central_character_value(&self, c: usize) -> Result<Cyclotomic> {
        if !self.is_irreducible() {
            return Err(Error::NotIrreducible);
        }
        Ok(self.central_value_unchecked(c))
    }

    pub(crate) fn central_value_unchecked(&self, c: usize) -> Cyclotomic {
        let cl = self.group.classes();
        let d = self.values[0].to_rational().expect("degree is rational");
        self.values[c].scale(&(rat(cl.size(c)) / d))
    }

    pub(crate) fn embed(&self, conductor: u32) -> ClassFunction {
        let values = self.values.iter().map(|v| v.embed(conductor)).collect();
        ClassFunction { group: self.group.clone(), values }
    }

    /// Lexicographic comparison of the value lists.
    pub fn cmp_values(&self, other: &ClassFunction) -> Ordering {
        for (a, b) in self.values.iter().zip(&other.values) {
            let o = a.cmp_canonical(b);
            if o != Ordering::Equal {
                return o;
            }
        }
        self.values.len().cmp(&other.values.len())
    }
}

/// All irreducible characters of a group.
///
/// Rows are ordered by degree, with the trivial character first and ties
/// broken by comparing canonical value lists at the group's own exponent.
#[derive(Debug)]
pub struct CharacterTable {
    group: Arc<GroupTable>,
    conductor: u32,
    prime: u64,
    irreducibles: Vec<ClassFunction>,
}

impl CharacterTable {
    pub fn group(&self) -> &Arc<GroupTable> {
        &self.group
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    /// The prime used by the modular eigenvector computation.
    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn irreducibles(&self) -> &[ClassFunction] {
        &self.irreducibles
    }

    pub fn len(&self) -> usize {
        self.irreducibles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.irreducibles.is_empty()
    }

    pub fn get(&self, i: usize) -> Option<&ClassFunction> {
        self.irreducibles.get(i)
    }

    pub fn degrees(&self) -> Vec<i64> {
        self.irreducibles.iter().map(|c| c.degree_int().unwrap_or(0)).collect()
    }

    /// Index of an irreducible equal to `chi`.
    pub fn position(&self, chi: &ClassFunction) -> Option<usize> {
        self.irreducibles.iter().position(|x| x == chi)
    }

    /// Class of `k`-th powers of class `c`.
    pub fn power_map(&self, c: usize, k: i64) -> usize {
        self.group.classes().power_class(c, k)
    }
}

/// Character table with values at conductor `exponent(G)`.
pub fn character_table(group: &Arc<GroupTable>) -> Result<Arc<CharacterTable>> {
    character_table_at(group, group.exponent(), Execution::default())
}

/// Character table with values embedded at `conductor`, a multiple of
/// `exponent(G)`. Tables are cached per group and conductor.
pub fn character_table_at(group: &Arc<GroupTable>, conductor: u32, exec: Execution) -> Result<Arc<CharacterTable>> {
    let e = group.exponent();
    if !conductor.is_multiple_of(e) {
        return Err(Error::Precondition(format!(
            "conductor {conductor} is not a multiple of the group exponent {e}"
        )));
    }
    if let Some(t) = group.char_tables.lock().unwrap().get(&conductor) {
        return Ok(t.clone());
    }
    let table = if conductor == e {
        let (prime, rows) = dixon::irreducible_values(group, exec)?;
        let mut irreducibles: Vec<ClassFunction> =
            rows.into_iter().map(|v| ClassFunction::new(group.clone(), v)).collect();
        let trivial_key = |c: &ClassFunction| !c.values.iter().all(|v| v.is_rational_integer() == Some(1));
        irreducibles.sort_by(|a, b| {
            a.degree_int()
                .cmp(&b.degree_int())
                .then_with(|| trivial_key(a).cmp(&trivial_key(b)))
                .then_with(|| a.cmp_values(b))
        });
        CharacterTable { group: group.clone(), conductor, prime, irreducibles }
    } else {
        let base = character_table_at(group, e, exec)?;
        CharacterTable {
            group: group.clone(),
            conductor,
            prime: base.prime,
            irreducibles: base.irreducibles.iter().map(|c| c.embed(conductor)).collect(),
        }
    };
    let table = Arc::new(table);
    Ok(group.char_tables.lock().unwrap().entry(conductor).or_insert(table).clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{enumerate_group, GroupSpec};

    fn group(degree: usize, gens: Vec<Vec<usize>>) -> Arc<GroupTable> {
        Arc::new(enumerate_group("t", &GroupSpec::Permutations { degree, generators: gens }, 1000).unwrap())
    }

    #[test]
    fn c2_table() {
        let g = group(2, vec![vec![2, 1]]);
        let t = character_table(&g).unwrap();
        let vals: Vec<Vec<i64>> = t
            .irreducibles()
            .iter()
            .map(|c| c.values().iter().map(|v| v.is_rational_integer().unwrap()).collect())
            .collect();
        assert_eq!(vals, vec![vec![1, 1], vec![1, -1]]);
    }

    #[test]
    fn s3_degrees_and_induction() {
        let g = group(3, vec![vec![2, 3, 1], vec![2, 1, 3]]);
        let t = character_table(&g).unwrap();
        assert_eq!(t.degrees(), vec![1, 1, 2]);
        let c3 = Subgroup::generated_by(&g, &[g.generators()[0]]);
        let tn = character_table_at(c3.local(), g.exponent(), Execution::Sequential).unwrap();
        let theta = &tn.irreducibles()[1];
        let ind = theta.induce(&c3).unwrap();
        assert_eq!(t.position(&ind), Some(2));
        // S3 transposition class on the degree-2 character
        assert!(t.irreducibles()[2].central_character_value(1).unwrap().is_zero());
    }

    #[test]
    fn regular_character_contains_trivial_once() {
        let g = group(4, vec![vec![2, 3, 4, 1], vec![4, 3, 2, 1]]);
        let reg = ClassFunction::regular(&g, g.exponent());
        let one = ClassFunction::trivial(&g, g.exponent());
        assert_eq!(reg.multiplicity(&one).unwrap(), 1);
        assert_eq!(one.fs_indicator().is_rational_integer(), Some(1));
    }
}
