//! Prime-field linear algebra used by the character-table solver.

/// Arithmetic modulo a prime `p < 2^32`.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Fp {
    pub p: u64,
}

impl Fp {
    pub fn new(p: u64) -> Self {
        debug_assert!(is_prime(p));
        Fp { p }
    }

    #[inline]
    pub fn add(self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn mul(self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    pub fn neg(self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    pub fn pow(self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1 % self.p;
        a %= self.p;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    pub fn inv(self, a: u64) -> u64 {
        assert!(!a.is_multiple_of(self.p), "inverse of zero in F_{}", self.p);
        self.pow(a, self.p - 2)
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Smallest generator of the multiplicative group of `F_p`.
pub(crate) fn primitive_root(f: Fp) -> u64 {
    let factors = prime_factors(f.p - 1);
    (2..f.p)
        .find(|&g| factors.iter().all(|&q| f.pow(g, (f.p - 1) / q) != 1))
        .unwrap_or(1)
}

/// Smallest prime `p ≡ 1 (mod exponent)` with `p² > 4·order`.
pub(crate) fn choose_prime(exponent: u64, order: u64) -> u64 {
    let mut p = exponent + 1;
    loop {
        if p * p > 4 * order && is_prime(p) {
            return p;
        }
        p += exponent;
    }
}

/// Reduces `rows` in place to reduced row echelon form; returns pivot columns.
pub(crate) fn rref(f: Fp, rows: &mut Vec<Vec<u64>>) -> Vec<usize> {
    let cols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, p);
        let inv = f.inv(rows[r][c]);
        for x in rows[r].iter_mut() {
            *x = f.mul(*x, inv);
        }
        for i in 0..rows.len() {
            if i != r && rows[i][c] != 0 {
                let m = rows[i][c];
                for j in c..cols {
                    let t = f.mul(m, rows[r][j]);
                    rows[i][j] = f.sub(rows[i][j], t);
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

/// Basis of the right kernel `{v : M v = 0}` of an `m × n` matrix.
pub(crate) fn kernel(f: Fp, m: &[Vec<u64>], n: usize) -> Vec<Vec<u64>> {
    let mut rows: Vec<Vec<u64>> = m.to_vec();
    let pivots = if rows.is_empty() { Vec::new() } else { rref(f, &mut rows) };
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![0; n];
            v[fc] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(rows[r][fc]);
            }
            v
        })
        .collect()
}

/// Characteristic polynomial `det(xI - A)`, coefficients from constant term up.
///
/// Uses a similarity reduction to upper Hessenberg form, so it is valid in
/// any characteristic.
pub(crate) fn charpoly(f: Fp, a: &[Vec<u64>]) -> Vec<u64> {
    let n = a.len();
    let mut h: Vec<Vec<u64>> = a.to_vec();
    for j in 0..n.saturating_sub(2) {
        let Some(i) = (j + 1..n).find(|&i| h[i][j] != 0) else {
            continue;
        };
        if i != j + 1 {
            h.swap(i, j + 1);
            for row in h.iter_mut() {
                row.swap(i, j + 1);
            }
        }
        let inv = f.inv(h[j + 1][j]);
        for r in j + 2..n {
            if h[r][j] == 0 {
                continue;
            }
            let u = f.mul(h[r][j], inv);
            for c in 0..n {
                let t = f.mul(u, h[j + 1][c]);
                h[r][c] = f.sub(h[r][c], t);
            }
            for row in h.iter_mut() {
                let t = f.mul(u, row[r]);
                row[j + 1] = f.add(row[j + 1], t);
            }
        }
    }
    // p[m] is the characteristic polynomial of the leading m × m block
    let mut p: Vec<Vec<u64>> = vec![vec![1]];
    for m in 0..n {
        let mut next = vec![0; m + 2];
        for (k, &c) in p[m].iter().enumerate() {
            next[k + 1] = f.add(next[k + 1], c);
            next[k] = f.sub(next[k], f.mul(h[m][m], c));
        }
        let mut prod = 1;
        for i in (0..m).rev() {
            prod = f.mul(prod, h[i + 1][i]);
            let coef = f.mul(h[i][m], prod);
            if coef != 0 {
                for (k, &c) in p[i].iter().enumerate() {
                    next[k] = f.sub(next[k], f.mul(coef, c));
                }
            }
        }
        p.push(next);
    }
    p.pop().unwrap()
}

pub(crate) fn eval_poly(f: Fp, poly: &[u64], x: u64) -> u64 {
    poly.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, x), c))
}

/// All roots in `F_p` by exhaustive evaluation, ascending.
pub(crate) fn roots(f: Fp, poly: &[u64]) -> Vec<u64> {
    (0..f.p).filter(|&x| eval_poly(f, poly, x) == 0).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn neg(f: Fp, v: i64) -> u64 {
        v.rem_euclid(f.p as i64) as u64
    }

    #[test]
    fn prime_choice() {
        assert_eq!(choose_prime(2, 2), 3);
        assert_eq!(choose_prime(4, 8), 13);
        assert_eq!(choose_prime(12, 48), 37);
        assert_eq!(choose_prime(840, 40320), 2521);
    }

    #[test]
    fn primitive_roots() {
        assert_eq!(primitive_root(Fp::new(7)), 3);
        assert_eq!(primitive_root(Fp::new(13)), 2);
    }

    #[test]
    fn charpoly_matches_determinant_expansion() {
        let f = Fp::new(13);
        // [[2,1,0],[1,3,1],[0,1,4]] has charpoly x^3 - 9x^2 + 24x - 18
        let a = vec![vec![2, 1, 0], vec![1, 3, 1], vec![0, 1, 4]];
        let expect = vec![neg(f, -18), 24 % 13, neg(f, -9), 1];
        assert_eq!(charpoly(f, &a), expect);
        // a permutation-like matrix that needs a row swap
        let b = vec![vec![0, 0, 1], vec![1, 0, 0], vec![0, 1, 0]];
        assert_eq!(charpoly(f, &b), vec![neg(f, -1), 0, 0, 1]);
    }

    #[test]
    fn kernel_of_rank_one() {
        let f = Fp::new(5);
        let k = kernel(f, &[vec![1, 2, 3]], 3);
        assert_eq!(k.len(), 2);
        for v in k {
            let s = (v[0] + 2 * v[1] + 3 * v[2]) % 5;
            assert_eq!(s, 0);
        }
    }
}
