//! Dixon–Schneider: irreducible characters from common eigenvectors of the
//! class multiplication matrices over a prime field.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::fp::{self, Fp};
use crate::group::GroupTable;
use crate::par::{self, Execution};

/// `A_j[i][k] = #{y ∈ K_j : g_k y⁻¹ ∈ K_i}` reduced mod `p`, so that the
/// central character vector `w` satisfies `A_j w = ω(K_j) w`.
pub(crate) fn class_matrix(g: &GroupTable, j: usize, p: u64) -> Vec<Vec<u64>> {
    let cl = g.classes();
    let r = cl.len();
    let mut a = vec![vec![0u64; r]; r];
    for k in 0..r {
        let gk = cl.rep(k);
        for &y in cl.members(j) {
            let i = cl.class_of(g.mul(gk, g.inv(y)));
            a[i][k] += 1;
        }
    }
    for row in a.iter_mut() {
        for x in row.iter_mut() {
            *x %= p;
        }
    }
    a
}

/// A subspace of `F_p^r` kept as a basis in reduced row echelon form.
struct Space {
    basis: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

impl Space {
    fn new(f: Fp, mut rows: Vec<Vec<u64>>) -> Space {
        let pivots = fp::rref(f, &mut rows);
        Space { basis: rows, pivots }
    }

    fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Splits into eigenspaces of `a` restricted to this (invariant) space.
    fn split(&self, f: Fp, a: &[Vec<u64>]) -> Result<Vec<Space>> {
        let d = self.dim();
        let r = a.len();
        // c[b][col] = coordinate b of A·v_col
        let mut c = vec![vec![0u64; d]; d];
        for (col, v) in self.basis.iter().enumerate() {
            let u: Vec<u64> = (0..r)
                .map(|i| a[i].iter().zip(v).fold(0, |acc, (&x, &y)| f.add(acc, f.mul(x, y))))
                .collect();
            for (b, &pc) in self.pivots.iter().enumerate() {
                c[b][col] = u[pc];
            }
        }
        let poly = fp::charpoly(f, &c);
        let lambdas = fp::roots(f, &poly);
        if lambdas.len() == 1 {
            return Ok(vec![Space { basis: self.basis.clone(), pivots: self.pivots.clone() }]);
        }
        let mut out = Vec::new();
        let mut total = 0;
        for lam in lambdas {
            let mut m = c.clone();
            for (i, row) in m.iter_mut().enumerate() {
                row[i] = f.sub(row[i], lam);
            }
            let ker = fp::kernel(f, &m, d);
            total += ker.len();
            let rows = ker
                .iter()
                .map(|coef| {
                    let mut x = vec![0u64; r];
                    for (b, &cb) in coef.iter().enumerate() {
                        if cb != 0 {
                            for (xi, &vi) in x.iter_mut().zip(&self.basis[b]) {
                                *xi = f.add(*xi, f.mul(cb, vi));
                            }
                        }
                    }
                    x
                })
                .collect();
            out.push(Space::new(f, rows));
        }
        if total != d {
            return Err(Error::Defect(format!(
                "class matrix is not diagonalizable mod {} on a space of dimension {d}",
                f.p
            )));
        }
        Ok(out)
    }
}

/// Irreducible characters as rows of values at conductor `exponent(G)`, in
/// the order the eigenspaces were found. Also returns the prime used.
pub(crate) fn irreducible_values(g: &GroupTable, exec: Execution) -> Result<(u64, Vec<Vec<Cyclotomic>>)> {
    let cl = g.classes();
    let r = cl.len();
    let n = g.order() as u64;
    let e = g.exponent();
    let p = fp::choose_prime(e as u64, n);
    let f = Fp::new(p);

    let matrices = par::map_range(exec, r, |j| if j == 0 { Vec::new() } else { class_matrix(g, j, p) });

    let identity: Vec<Vec<u64>> = (0..r).map(|i| (0..r).map(|k| u64::from(i == k)).collect()).collect();
    let mut spaces = vec![Space::new(f, identity)];
    for a in matrices.iter().skip(1) {
        if spaces.iter().all(|s| s.dim() == 1) {
            break;
        }
        let mut next = Vec::new();
        for s in spaces {
            if s.dim() == 1 {
                next.push(s);
            } else {
                next.extend(s.split(f, a)?);
            }
        }
        spaces = next;
    }
    if spaces.len() != r {
        return Err(Error::Defect(format!(
            "eigenspace splitting stalled with {} of {r} characters",
            spaces.len()
        )));
    }

    let z = f.pow(fp::primitive_root(f), (p - 1) / e as u64);
    let rows = par::map_slice(exec, &spaces, |s| lift_character(g, f, z, &s.basis[0]));
    let rows = rows.into_iter().collect::<Result<Vec<_>>>()?;
    let total: u64 = rows
        .iter()
        .map(|row| {
            let d = row[0].is_rational_integer().unwrap_or(0) as u64;
            d * d
        })
        .sum();
    if total != n {
        return Err(Error::Defect(format!("squared degrees sum to {total}, expected {n}")));
    }
    Ok((p, rows))
}

fn lift_character(g: &GroupTable, f: Fp, z: u64, w: &[u64]) -> Result<Vec<Cyclotomic>> {
    let cl = g.classes();
    let r = cl.len();
    let n = g.order() as u64;
    let e = g.exponent();
    let inv0 = f.inv(w[0]);
    let w: Vec<u64> = w.iter().map(|&x| f.mul(x, inv0)).collect();
    let s = (0..r).fold(0, |acc, k| {
        let t = f.mul(f.mul(w[k], w[cl.inverse_class(k)]), f.inv(cl.size(k) as u64 % f.p));
        f.add(acc, t)
    });
    let d2 = f.mul(n % f.p, f.inv(s));
    let deg = (1..)
        .take_while(|d| d * d <= n)
        .find(|&d| n.is_multiple_of(d) && f.mul(d % f.p, d % f.p) == d2)
        .ok_or_else(|| Error::Defect("no admissible character degree".into()))?;
    let values: Vec<u64> = (0..r)
        .map(|k| f.mul(f.mul(w[k], deg % f.p), f.inv(cl.size(k) as u64 % f.p)))
        .collect();
    (0..r)
        .map(|k| {
            let o = cl.element_order(k);
            let zo = f.pow(z, (e / o) as u64);
            let inv_o = f.inv(o as u64);
            let mut raw = Vec::new();
            let mut total = 0;
            for m in 0..o {
                // (1/o) Σ_l χ(g^l) z_o^{-ml}
                let step = f.pow(f.inv(zo), m as u64);
                let mut acc = 0;
                let mut zpow = 1;
                for l in 0..o {
                    acc = f.add(acc, f.mul(values[cl.power_class(k, l as i64)], zpow));
                    zpow = f.mul(zpow, step);
                }
                let mult = f.mul(acc, inv_o);
                if mult > deg {
                    return Err(Error::Defect(format!("eigenvalue multiplicity {mult} exceeds degree {deg}")));
                }
                total += mult;
                if mult != 0 {
                    raw.push((m * (e / o), BigRational::from_integer(BigInt::from(mult))));
                }
            }
            if total != deg {
                return Err(Error::Defect("eigenvalue multiplicities do not sum to the degree".into()));
            }
            Ok(Cyclotomic::from_raw(e, raw))
        })
        .collect()
}
