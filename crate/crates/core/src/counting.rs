//! Theorem-level counts and the brute-force oracles they are compared with.
//!
//! The theorem sides use only goodness, σ and Gow indicators from
//! [`crate::clifford`]. The oracle sides use only the character table of `G`
//! with restriction, induction, inner products and complex conjugation.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;
use serde_json::{json, Value};

use crate::chartab::ClassFunction;
use crate::clifford::{conjugate_equals, gow_indicator, restricts_to, Ambient, Triple};
use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::group::{normal_subgroups, Elem, QuotientGroup, Subgroup};
use crate::groupfile::LoadedGroup;
use crate::par::{self, Execution};

/// A theorem value paired with an independently computed oracle value.
#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub subject: String,
    pub theorem_value: i64,
    pub oracle_value: i64,
    pub witnesses: Value,
    pub pass: bool,
}

impl VerificationReport {
    fn new(subject: String, theorem_value: i64, oracle_value: i64, witnesses: Value) -> Self {
        VerificationReport { subject, theorem_value, oracle_value, witnesses, pass: theorem_value == oracle_value }
    }
}

/// Outcome of a check with a precondition.
#[derive(Clone, Debug, Serialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum Check {
    Ran(VerificationReport),
    Skipped { subject: String, reason: String },
}

impl Check {
    /// Skipped checks count as passing.
    pub fn passed(&self) -> bool {
        match self {
            Check::Ran(r) => r.pass,
            Check::Skipped { .. } => true,
        }
    }

    pub fn ran(&self) -> bool {
        matches!(self, Check::Ran(_))
    }
}

/// Result of an exhaustive property check.
#[derive(Clone, Debug, Serialize)]
pub struct PropertyCheck {
    pub name: &'static str,
    pub checked: usize,
    pub failures: Vec<String>,
}

impl PropertyCheck {
    fn new(name: &'static str) -> Self {
        PropertyCheck { name, checked: 0, failures: Vec::new() }
    }

    fn record(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(detail());
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn int(v: &Cyclotomic, what: &str) -> Result<i64> {
    v.is_rational_integer()
        .ok_or_else(|| Error::Defect(format!("{what} is not an integer: {v}")))
}

fn rat(n: usize) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// A constituent of `θ↑G`.
#[derive(Clone, Debug, Serialize)]
pub struct OverRow {
    /// Index into `Irr(G)`.
    pub index: usize,
    pub degree: i64,
    /// `⟨χ↓N, θ⟩`.
    pub multiplicity: i64,
    pub indicator: i64,
    pub real: bool,
}

/// `Irr(G | θ)` by restriction and inner products.
pub fn irr_over_oracle(t: &Triple) -> Result<Vec<OverRow>> {
    let irr = t.ambient().irr_g()?;
    let mut rows = Vec::new();
    for (index, chi) in irr.irreducibles().iter().enumerate() {
        let m = chi.restrict(t.normal())?.multiplicity(t.theta())?;
        if m != 0 {
            rows.push(OverRow {
                index,
                degree: chi.degree_int().unwrap_or(0),
                multiplicity: m,
                indicator: int(&chi.fs_indicator(), "Frobenius-Schur indicator")?,
                real: *chi == chi.conjugate(),
            });
        }
    }
    Ok(rows)
}

fn dual_flag(t: &Triple) -> Value {
    if t.inertia().dual_is_g_conjugate {
        Value::Null
    } else {
        json!("dual character is not G-conjugate to theta")
    }
}

/// Number of θ-good classes of `G_θ/N` against `|Irr(G | θ)|`.
pub fn gallagher_count(t: &Triple) -> Result<VerificationReport> {
    let rep = t.sigma_report()?;
    let good: Vec<Value> = rep
        .rows
        .iter()
        .filter(|r| r.good)
        .map(|r| json!({"class": r.class, "rep": r.rep, "order": r.order}))
        .collect();
    let oracle = irr_over_oracle(t)?.len() as i64;
    Ok(VerificationReport::new(
        format!("gallagher {}", t.label()),
        rep.good_count() as i64,
        oracle,
        json!({ "good_classes": good }),
    ))
}

/// `#σ₊ − #σ₋` good classes against the number of real `χ ∈ Irr(G | θ)`.
pub fn count_real_theorem(t: &Triple) -> Result<VerificationReport> {
    let oracle = irr_over_oracle(t)?.iter().filter(|r| r.real).count() as i64;
    let subject = format!("count-real {}", t.label());
    if !t.inertia().dual_is_g_conjugate {
        let w = json!({ "flag": dual_flag(t), "good_classes": [] });
        return Ok(VerificationReport::new(subject, 0, oracle, w));
    }
    let rep = t.sigma_report()?;
    let good: Vec<Value> = rep
        .rows
        .iter()
        .filter(|r| r.good)
        .map(|r| json!({"class": r.class, "rep": r.rep, "order": r.order, "sigma": r.sigma, "witness": r.witness}))
        .collect();
    Ok(VerificationReport::new(subject, rep.signed_count(), oracle, json!({ "flag": null, "good_classes": good })))
}

/// Signed count of involution types in `G*_θ/N` against `ε(θ↑G)`.
pub fn epsilon_induced_theorem(t: &Triple) -> Result<VerificationReport> {
    let rep = t.gow_report()?;
    let theorem: i64 = rep.rows.iter().map(|r| r.eps as i64).sum();
    let induced = t.theta().induce(t.normal())?;
    let oracle = int(&induced.fs_indicator(), "indicator of the induced character")?;
    let rows: Vec<Value> = rep
        .rows
        .iter()
        .map(|r| json!({"coset": r.coset, "rep": r.rep, "eps": r.eps, "in_inertia": r.in_inertia}))
        .collect();
    Ok(VerificationReport::new(
        format!("epsilon-induced {}", t.label()),
        theorem,
        oracle,
        json!({ "flag": dual_flag(t), "plus": rep.plus(), "minus": rep.minus(), "involutions": rows }),
    ))
}

/// The three headline comparisons for one triple.
pub fn theorem_reports(t: &Triple) -> Result<Vec<VerificationReport>> {
    Ok(vec![gallagher_count(t)?, count_real_theorem(t)?, epsilon_induced_theorem(t)?])
}

/// One class of `G/Z` in the central-subgroup bookkeeping.
#[derive(Clone, Debug, Serialize)]
pub struct ZClassRow {
    /// The classes of `G` mapping onto this class.
    pub preimages: Vec<usize>,
    /// Element order in `G/Z`.
    pub order: u32,
    pub splitting: bool,
    pub real: bool,
    pub from_non_real: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CentralZReport {
    pub subject: String,
    pub splitting: usize,
    pub real_splitting: usize,
    pub real_splitting_from_non_real: usize,
    /// `real_splitting − 2 · real_splitting_from_non_real`.
    pub value: i64,
    /// Real characters of `G` lying over `ζ`.
    pub oracle: i64,
    /// ζ-good classes of `G/Z`, from the goodness machinery.
    pub good_classes: usize,
    /// `#σ₊ − #σ₋` from the σ machinery.
    pub sigma_count: i64,
    pub classes: Vec<ZClassRow>,
    pub pass: bool,
}

/// Real characters over the nontrivial character of a central subgroup of
/// order 2, counted from the classes of `G/Z`.
pub fn central_z_corollary(amb: &Arc<Ambient>, z: &Subgroup) -> Result<CentralZReport> {
    let g = amb.group();
    if z.order() != 2 || !Arc::ptr_eq(z.parent(), g) {
        return Err(Error::Precondition("Z must be a subgroup of order 2".into()));
    }
    let zel = z.members()[1];
    if g.generators().iter().any(|&s| g.mul(s, zel) != g.mul(zel, s)) {
        return Err(Error::Precondition("Z is not central".into()));
    }
    let cl = g.classes();
    let mut rows = Vec::new();
    for k in 0..cl.len() {
        let partner = cl.class_of(g.mul(zel, cl.rep(k)));
        if partner < k {
            continue;
        }
        let inv = cl.inverse_class(k);
        let splitting = partner != k;
        let real = inv == k || inv == partner;
        let rep = cl.rep(k);
        let order = (1..=g.element_order(rep)).find(|&m| z.contains(g.pow(rep, m as i64))).unwrap_or(1);
        rows.push(ZClassRow {
            preimages: if splitting { vec![k, partner] } else { vec![k] },
            order,
            splitting,
            real,
            from_non_real: splitting && real && inv != k,
        });
    }
    let splitting = rows.iter().filter(|r| r.splitting).count();
    let real_splitting = rows.iter().filter(|r| r.splitting && r.real).count();
    let from_non_real = rows.iter().filter(|r| r.from_non_real).count();
    let value = real_splitting as i64 - 2 * from_non_real as i64;

    let t = Triple::new(amb, z, 1)?;
    let oracle = irr_over_oracle(&t)?.iter().filter(|r| r.real).count() as i64;
    let sigma = t.sigma_report()?;
    let good_classes = sigma.good_count();
    let sigma_count = sigma.signed_count();
    let pass = value == oracle && good_classes == splitting && sigma_count == value;
    Ok(CentralZReport {
        subject: format!("central-z {}", g.name()),
        splitting,
        real_splitting,
        real_splitting_from_non_real: from_non_real,
        value,
        oracle,
        good_classes,
        sigma_count,
        classes: rows,
        pass,
    })
}

/// For real `θ` with `|G_θ/N|` odd: a unique real extension of `θ` to `G_θ`
/// and a unique real character over `θ`, the former inducing the latter.
pub fn richards_check(t: &Triple) -> Result<Check> {
    let subject = format!("richards {}", t.label());
    let inr = t.inertia();
    let index = inr.inertia.order() / t.normal().order();
    if !inr.theta_is_real || index.is_multiple_of(2) {
        return Ok(Check::Skipped { subject, reason: "requires real theta and |G_theta/N| odd".into() });
    }
    let amb = t.ambient();
    let host = &inr.inertia;
    let irr_h = amb.irr(host)?;
    let real_ext: Vec<&ClassFunction> = irr_h
        .irreducibles()
        .iter()
        .filter(|psi| psi.is_real() && restricts_to(host, psi, t.normal(), t.theta()))
        .collect();
    let over = irr_over_oracle(t)?;
    let real_over: Vec<&OverRow> = over.iter().filter(|r| r.real).collect();
    let mut induces = false;
    if let ([psi], [row]) = (real_ext.as_slice(), real_over.as_slice()) {
        let irr = amb.irr_g()?;
        induces = psi.induce(host)? == irr.irreducibles()[row.index];
    }
    let mut report = VerificationReport::new(
        subject,
        real_ext.len() as i64,
        real_over.len() as i64,
        json!({ "inertia_index": index, "real_extensions": real_ext.len(), "induces": induces }),
    );
    report.pass = report.pass && real_ext.len() == 1 && induces;
    Ok(Check::Ran(report))
}

/// The 2-defect-zero corollaries, for `θ` with `|N|/θ(1)` odd.
pub fn defect_zero_check(t: &Triple) -> Result<Check> {
    let subject = format!("defect-zero {}", t.label());
    let deg = t.theta().degree_int().unwrap_or(0) as usize;
    if deg == 0 || !t.normal().order().is_multiple_of(deg) || (t.normal().order() / deg).is_multiple_of(2) {
        return Ok(Check::Skipped { subject, reason: "requires |N|/theta(1) odd".into() });
    }
    let g = t.group();
    let inr = t.inertia();
    let induced = t.theta().induce(t.normal())?;
    let eps = int(&induced.fs_indicator(), "indicator of the induced character")?;
    if inr.theta_is_real {
        let q = t.quotient_inertia();
        let inv = q.involution_cosets().len() as i64;
        return Ok(Check::Ran(VerificationReport::new(subject, inv, eps, json!({ "case": "real" }))));
    }
    let q = t.quotient_extended();
    let outside: Vec<Elem> = q
        .involution_cosets()
        .into_iter()
        .filter(|&c| !inr.inertia.contains(q.section(c)))
        .collect();
    let coset_has_involution = |c: Elem| {
        let s = q.section(c);
        t.normal().members().iter().any(|&n| g.element_order(g.mul(n, s)) <= 2)
    };
    // (2) every involution outside Ḡ_θ lifts to an involution of G
    let lifts = outside.iter().all(|&c| coset_has_involution(c));
    // (3) ε(θ↑G) ≠ 0 forces a complement to G_θ in G*_θ
    let splits = inr
        .extended_inertia
        .members()
        .iter()
        .any(|&x| !inr.inertia.contains(x) && g.element_order(x) == 2);
    let claim3 = eps == 0 || splits;
    // (4) some χ over θ with ε(χ) = +1 and odd multiplicity
    let claim4 = if inr.dual_is_g_conjugate {
        Some(irr_over_oracle(t)?.iter().any(|r| r.indicator == 1 && r.multiplicity % 2 == 1))
    } else {
        None
    };
    let mut report = VerificationReport::new(
        subject,
        outside.len() as i64,
        eps,
        json!({
            "case": "non-real",
            "involutions_lift": lifts,
            "splitting_claim": claim3,
            "odd_real_constituent": claim4,
            "flag": dual_flag(t),
        }),
    );
    report.pass = report.pass && lifts && claim3 && claim4 != Some(false);
    Ok(Check::Ran(report))
}

/// `ω_χ(T) = (|G|/χ(1))²` and `ω_χ(T_R) = ε(χ)² (|G|/χ(1))²` for every `χ ∈ Irr(G)`.
pub fn verify_central_identities(amb: &Arc<Ambient>) -> Result<VerificationReport> {
    let g = amb.group();
    let cl = g.classes();
    let irr = amb.irr_g()?;
    let conductor = amb.conductor();
    let mut passing = 0;
    let mut rows = Vec::new();
    for (i, chi) in irr.irreducibles().iter().enumerate() {
        let omega: Vec<Cyclotomic> = (0..cl.len()).map(|k| chi.central_value_unchecked(k)).collect();
        let mut t = Cyclotomic::zero(conductor);
        let mut tr = Cyclotomic::zero(conductor);
        for k in 0..cl.len() {
            let c = rat(cl.centralizer_order(k));
            t = &t + &(&omega[cl.inverse_class(k)] * &omega[k]).scale(&c);
            tr = &tr + &(&omega[k] * &omega[k]).scale(&c);
        }
        let d = chi.degree_int().unwrap_or(0);
        let full = (g.order() as i64 / d).pow(2);
        let expect_r = if chi.is_real() { full } else { 0 };
        let ok = t.is_rational_integer() == Some(full) && tr.is_rational_integer() == Some(expect_r);
        if ok {
            passing += 1;
        }
        rows.push(json!({"chi": i, "omega_T": t.to_string(), "omega_T_R": tr.to_string(), "expected_T": full, "expected_T_R": expect_r}));
    }
    Ok(VerificationReport::new(
        format!("central-identities {}", g.name()),
        passing,
        irr.len() as i64,
        json!({ "characters": rows }),
    ))
}

/// `Σ_{x∈Hg} |χ(x)|² = |H|` on every right coset, when `χ↓H` is irreducible.
pub fn coset_norm_check(amb: &Arc<Ambient>, h: &Subgroup, chi_index: usize) -> Result<Check> {
    let g = amb.group();
    let irr = amb.irr_g()?;
    let chi = irr
        .get(chi_index)
        .ok_or_else(|| Error::Precondition(format!("character index {chi_index} out of range")))?;
    let subject = format!("coset-norm {}|H{}|chi{}", g.name(), h.order(), chi_index);
    if !chi.restrict(h)?.is_irreducible() {
        return Ok(Check::Skipped { subject, reason: "restriction is reducible".into() });
    }
    let mut seen = vec![false; g.order()];
    let (mut cosets, mut good) = (0, 0);
    let target = Cyclotomic::from_integer(amb.conductor(), h.order() as i64);
    for x in g.elements() {
        if seen[x as usize] {
            continue;
        }
        let mut sum = Cyclotomic::zero(amb.conductor());
        for &m in h.members() {
            let y = g.mul(m, x);
            seen[y as usize] = true;
            let v = chi.at(y);
            sum = &sum + &(v * &v.conjugate());
        }
        cosets += 1;
        if sum == target {
            good += 1;
        }
    }
    Ok(Check::Ran(VerificationReport::new(subject, good, cosets, json!({ "cosets": cosets }))))
}

/// Structural properties of goodness, σ and Gow indicators for one triple.
pub fn structural_checks(t: &Triple) -> Result<Vec<PropertyCheck>> {
    let g = t.group().clone();
    let n = t.normal();
    let inr = t.inertia();
    let q = t.quotient_inertia();
    let qt = q.table();
    let qcl = qt.classes();
    let sigma = t.sigma_report()?;
    let real_invariant = inr.theta_is_real && inr.inertia.is_whole();

    let mut well_defined = PropertyCheck::new("sigma well-defined over witnesses and extensions");
    let mut ext_independent = PropertyCheck::new("goodness independent of the extension");
    let mut ext_count = PropertyCheck::new("extension count equals |N<x>:N|");
    let mut constancy = PropertyCheck::new("goodness and sigma constant on classes");
    let mut two_regular = PropertyCheck::new("2-regular cosets are good, sigma +1 when real");
    let mut involution = PropertyCheck::new("good involutions: sigma +1 iff theta_x real");
    let mut footnote = PropertyCheck::new("sigma = (-1)^(1+eps_e(theta_x)^2) when e^2 in N<x>");
    let mut omega_hom = PropertyCheck::new("y -> omega_y is multiplicative on C(x)");

    // every coset of Ḡ_θ, so class constancy sees every element
    for qx in qt.elements() {
        let x = q.section(qx);
        let row = &sigma.rows[qcl.class_of(qx)];
        let fam = t.extensions(x)?;
        let l_index = fam.local.order() / n.order();
        ext_count.record(fam.len() == l_index, || format!("x={x}: {} extensions, index {l_index}", fam.len()));
        let good = t.is_good(x)?;
        let verdicts: Vec<bool> = fam.extensions().map(|e| t.is_good_with(x, e)).collect::<Result<_>>()?;
        ext_independent.record(verdicts.iter().all(|&v| v == good), || format!("x={x}: {verdicts:?}"));
        let (s, _) = if good { t.sigma(x)? } else { (0, None) };
        constancy.record(good == row.good && s == row.sigma, || {
            format!("x={x}: ({good}, {s}) vs class {} ({}, {})", row.class, row.good, row.sigma)
        });
        if good {
            let witnesses = t.witnesses(x);
            let expected = if witnesses.is_empty() { 0 } else { s };
            for e in &witnesses {
                for ext in fam.extensions() {
                    let v = t.sigma_with(x, ext, *e);
                    well_defined.record(v == expected, || format!("x={x}, e={e}: {v} vs {expected}"));
                }
                let e2 = g.mul(*e, *e);
                if real_invariant && fam.local.contains(e2) {
                    let eps = gow_indicator(&fam.local, fam.chosen(), *e)?;
                    let predicted = if eps == 0 { -1 } else { 1 };
                    footnote.record(predicted == s, || format!("x={x}, e={e}: eps {eps}, sigma {s}"));
                }
            }
        }
        // σ is +1 on real 2-regular classes; a non-real class has no witness, so σ = 0
        if real_invariant && qt.element_order(qx) % 2 == 1 {
            let expected = if row.real { 1 } else { 0 };
            two_regular.record(good && s == expected, || format!("x={x}: good {good}, sigma {s}, real {}", row.real));
        }
        if real_invariant && qt.element_order(qx) <= 2 && good {
            let real_ext = fam.chosen().is_real();
            involution.record((s == 1) == real_ext, || format!("x={x}: sigma {s}, theta_x real {real_ext}"));
        }
        // ω_y: the linear character of N<x>/N with θ_x^y = ω_y θ_x
        let lin: Vec<&ClassFunction> = fam
            .table()
            .irreducibles()
            .iter()
            .filter(|c| c.degree_int() == Some(1) && n.members().iter().all(|&m| c.at(fam.local.local_index(m).unwrap()).is_rational_integer() == Some(1)))
            .collect();
        let theta_x = fam.chosen();
        let cent = t.coset_centralizer(x);
        let omega_of = |y: Elem| -> Vec<usize> {
            lin.iter()
                .enumerate()
                .filter(|(_, lam)| {
                    let prod = lam.mul(theta_x).expect("same group");
                    conjugate_equals(&fam.local, theta_x, y, &prod)
                })
                .map(|(i, _)| i)
                .collect()
        };
        let omegas: Vec<Vec<usize>> = cent.members().iter().map(|&y| omega_of(y)).collect();
        let unique = omegas.iter().all(|o| o.len() == 1);
        omega_hom.record(unique, || format!("x={x}: omega_y not unique"));
        if unique {
            for (i, &y) in cent.members().iter().enumerate() {
                for &s_gen in cent.generators() {
                    let ys = g.mul(y, s_gen);
                    let j = cent.members().binary_search(&ys).expect("centralizer is closed");
                    let js = cent.members().binary_search(&s_gen).expect("generator lies in centralizer");
                    let prod = lin[omegas[i][0]].mul(lin[omegas[js][0]]).expect("same group");
                    omega_hom.record(prod == *lin[omegas[j][0]], || format!("x={x}: omega_(y s) != omega_y omega_s"));
                }
            }
        }
    }

    // Gow indicators on every coset of G/N squaring into N
    let mut gow_range = PropertyCheck::new("Gow indicator in {-1,0,1}, nonzero iff theta^t = dual");
    let full = QuotientGroup::new(n)?;
    let dual = t.theta().conjugate();
    for c in full.involution_cosets() {
        let tt = full.section(c);
        let eps = t.gow(tt)?;
        let inverts = t.conjugate_theta(tt) == dual;
        gow_range.record((eps != 0) == inverts, || format!("t={tt}: eps {eps}, theta^t = dual {inverts}"));
    }

    let mut extended = PropertyCheck::new("eps(theta^G) = eps(theta^G*)");
    let induced = t.theta().induce(n)?;
    let eps_g = induced.fs_indicator();
    let star = &inr.extended_inertia;
    let n_in_star = n.relative_to(star);
    let theta_star = ClassFunction::new(n_in_star.local().clone(), t.theta().values().to_vec());
    let eps_star = theta_star.induce(&n_in_star)?.fs_indicator();
    extended.record(eps_g == eps_star, || format!("{eps_g} vs {eps_star}"));

    let mut count1 = PropertyCheck::new("eps(theta^G) = sum of Gow indicators over involutions of G/N");
    if real_invariant {
        let total: i64 = full.involution_cosets().iter().map(|&c| t.gow(full.section(c)).map(i64::from)).sum::<Result<i64>>()?;
        let e = int(&eps_g, "indicator of the induced character")?;
        count1.record(total == e, || format!("{total} vs {e}"));
    }

    Ok(vec![
        well_defined,
        ext_independent,
        ext_count,
        constancy,
        two_regular,
        involution,
        footnote,
        omega_hom,
        gow_range,
        extended,
        count1,
    ])
}

/// Orthogonality, degree and indicator identities of a character table.
pub fn chartab_integrity(amb: &Arc<Ambient>) -> Result<Vec<PropertyCheck>> {
    let g = amb.group();
    let cl = g.classes();
    let irr = amb.irr_g()?;
    let chars = irr.irreducibles();
    let conductor = amb.conductor();

    let mut rows = PropertyCheck::new("row orthogonality");
    for (i, a) in chars.iter().enumerate() {
        for (j, b) in chars.iter().enumerate() {
            let ip = a.inner_product(b)?;
            rows.record(ip.is_rational_integer() == Some((i == j) as i64), || format!("<chi{i}, chi{j}> = {ip}"));
        }
    }

    let mut cols = PropertyCheck::new("column orthogonality");
    let conj: Vec<ClassFunction> = chars.iter().map(ClassFunction::conjugate).collect();
    for a in 0..cl.len() {
        for b in 0..cl.len() {
            let s: Cyclotomic = chars
                .iter()
                .zip(&conj)
                .map(|(x, xc)| x.at_class(a) * xc.at_class(b))
                .fold(Cyclotomic::zero(conductor), |acc, v| &acc + &v);
            let expect = if a == b { cl.centralizer_order(a) as i64 } else { 0 };
            cols.record(s.is_rational_integer() == Some(expect), || format!("classes {a},{b}: {s}"));
        }
    }

    let mut degrees = PropertyCheck::new("sum of squared degrees");
    let total: i64 = irr.degrees().iter().map(|d| d * d).sum();
    degrees.record(total == g.order() as i64, || format!("{total} vs {}", g.order()));

    let mut indicators = PropertyCheck::new("indicator in {-1,0,1}, zero iff non-real");
    let mut involutions = PropertyCheck::new("sum of eps(chi) chi(1) counts solutions of g^2 = 1");
    let mut weighted = 0i64;
    for (i, chi) in chars.iter().enumerate() {
        let e = chi.fs_indicator();
        let v = e.is_rational_integer();
        let ok = match v {
            Some(0) => !chi.is_real(),
            Some(1) | Some(-1) => chi.is_real(),
            _ => false,
        };
        indicators.record(ok, || format!("chi{i}: indicator {e}"));
        weighted += v.unwrap_or(0) * chi.degree_int().unwrap_or(0);
    }
    let solutions = g.elements().filter(|&x| g.element_order(x) <= 2).count() as i64;
    involutions.record(weighted == solutions, || format!("{weighted} vs {solutions}"));

    Ok(vec![rows, cols, degrees, indicators, involutions])
}

/// Frobenius reciprocity `⟨θ↑G, χ⟩ = ⟨θ, χ↓H⟩` for every `θ ∈ Irr(H)`, `χ ∈ Irr(G)`.
pub fn frobenius_reciprocity(amb: &Arc<Ambient>, h: &Subgroup) -> Result<PropertyCheck> {
    let mut check = PropertyCheck::new("Frobenius reciprocity");
    let h = amb.intern(h.clone());
    let irr = amb.irr_g()?;
    let irr_h = amb.irr(&h)?;
    for (i, theta) in irr_h.irreducibles().iter().enumerate() {
        let up = theta.induce(&h)?;
        for (j, chi) in irr.irreducibles().iter().enumerate() {
            let a = up.inner_product(chi)?;
            let b = theta.inner_product(&chi.restrict(&h)?)?;
            check.record(a == b, || format!("theta{i}, chi{j}: {a} vs {b}"));
        }
    }
    Ok(check)
}

/// Name for a normal subgroup: its declared name, `1`, `G`, or `N<order>.<k>`.
pub fn normal_label(loaded: &LoadedGroup, s: &Subgroup, k: usize) -> String {
    if let Some((name, _)) = loaded.normals.iter().find(|(_, d)| d.members() == s.members()) {
        return name.clone();
    }
    if s.order() == 1 {
        "1".into()
    } else if s.is_whole() {
        "G".into()
    } else {
        format!("N{}.{}", s.order(), k)
    }
}

/// Every `(N, θ)` of a group, with labels.
pub fn all_triples(amb: &Arc<Ambient>, loaded: &LoadedGroup) -> Result<Vec<Triple>> {
    let mut out = Vec::new();
    for (k, s) in normal_subgroups(amb.group()).iter().enumerate() {
        let label = normal_label(loaded, s, k);
        let s = amb.intern(s.clone());
        let count = amb.irr(&s)?.len();
        for i in 0..count {
            let t = Triple::new(amb, &s, i)?.with_label(format!("{}|{}|theta{}", loaded.file.name, label, i));
            out.push(t);
        }
    }
    Ok(out)
}

/// Theorem reports for every triple of a group.
pub fn sweep_group(loaded: &LoadedGroup, exec: Execution) -> Result<Vec<VerificationReport>> {
    let amb = Ambient::with_execution(loaded.group.clone(), exec);
    let triples = all_triples(&amb, loaded)?;
    let per = par::map_slice(exec, &triples, theorem_reports);
    let mut out = Vec::new();
    for r in per {
        out.extend(r?);
    }
    Ok(out)
}

/// Subgroups used for the coset-norm identity: every normal subgroup and
/// the cyclic subgroup of every class representative.
pub fn coset_norm_subgroups(amb: &Arc<Ambient>) -> Vec<Subgroup> {
    let g = amb.group();
    let mut out = normal_subgroups(g);
    for &r in g.classes().reps() {
        let c = Subgroup::generated_by(g, &[r]);
        if !out.contains(&c) {
            out.push(c);
        }
    }
    out
}

/// Every verification for one group, merged in canonical order.
#[derive(Clone, Debug, Serialize)]
pub struct GroupVerification {
    pub group: String,
    pub order: usize,
    pub triples: usize,
    pub theorems: Vec<VerificationReport>,
    pub corollaries: Vec<Check>,
    pub structural: Vec<PropertyCheck>,
    pub integrity: Vec<PropertyCheck>,
    pub central_identities: VerificationReport,
    pub coset_norms: Vec<Check>,
    pub central_z: Vec<CentralZReport>,
}

impl GroupVerification {
    pub fn passed(&self) -> bool {
        self.theorems.iter().all(|r| r.pass)
            && self.corollaries.iter().all(Check::passed)
            && self.structural.iter().all(PropertyCheck::passed)
            && self.integrity.iter().all(PropertyCheck::passed)
            && self.central_identities.pass
            && self.coset_norms.iter().all(Check::passed)
            && self.central_z.iter().all(|r| r.pass)
    }

    /// Subjects of everything that failed.
    pub fn failures(&self) -> Vec<String> {
        let mut out: Vec<String> = self.theorems.iter().filter(|r| !r.pass).map(|r| r.subject.clone()).collect();
        for c in self.corollaries.iter().chain(&self.coset_norms) {
            if let Check::Ran(r) = c {
                if !r.pass {
                    out.push(r.subject.clone());
                }
            }
        }
        for p in self.structural.iter().chain(&self.integrity) {
            out.extend(p.failures.iter().map(|f| format!("{} {}: {}", self.group, p.name, f)));
        }
        if !self.central_identities.pass {
            out.push(self.central_identities.subject.clone());
        }
        out.extend(self.central_z.iter().filter(|r| !r.pass).map(|r| r.subject.clone()));
        out
    }
}

fn merge(into: &mut Vec<PropertyCheck>, label: &str, checks: Vec<PropertyCheck>) {
    for c in checks {
        let slot = match into.iter_mut().find(|p| p.name == c.name) {
            Some(p) => p,
            None => {
                into.push(PropertyCheck::new(c.name));
                into.last_mut().expect("just pushed")
            }
        };
        slot.checked += c.checked;
        slot.failures.extend(c.failures.into_iter().map(|f| format!("{label}: {f}")));
    }
}

/// Runs every check on one group. With `thorough` unset only the theorem
/// sweep, table integrity, central identities and the central-subgroup
/// corollary run; the exhaustive element-wise checks are skipped.
pub fn verify_group(loaded: &LoadedGroup, exec: Execution, thorough: bool) -> Result<GroupVerification> {
    let amb = Ambient::with_execution(loaded.group.clone(), exec);
    let g = amb.group();
    let triples = all_triples(&amb, loaded)?;

    let per = par::map_slice(exec, &triples, |t| -> Result<_> {
        let theorems = theorem_reports(t)?;
        if !thorough {
            return Ok((theorems, Vec::new(), Vec::new()));
        }
        let cor = vec![richards_check(t)?, defect_zero_check(t)?];
        Ok((theorems, cor, structural_checks(t)?))
    });
    let mut theorems = Vec::new();
    let mut corollaries = Vec::new();
    let mut structural = Vec::new();
    for (t, r) in triples.iter().zip(per) {
        let (th, cor, st) = r?;
        theorems.extend(th);
        corollaries.extend(cor);
        merge(&mut structural, t.label(), st);
    }

    let mut coset_norms = Vec::new();
    if thorough {
        let n_irr = amb.irr_g()?.len();
        for h in coset_norm_subgroups(&amb) {
            for i in 0..n_irr {
                coset_norms.push(coset_norm_check(&amb, &h, i)?);
            }
        }
    }

    let mut central_z = Vec::new();
    for (_, z) in &loaded.normals {
        let central = z.order() == 2
            && g.generators().iter().all(|&s| g.mul(s, z.members()[1]) == g.mul(z.members()[1], s));
        if central {
            central_z.push(central_z_corollary(&amb, z)?);
        }
    }

    Ok(GroupVerification {
        group: loaded.file.name.clone(),
        order: g.order(),
        triples: triples.len(),
        theorems,
        corollaries,
        structural,
        integrity: chartab_integrity(&amb)?,
        central_identities: verify_central_identities(&amb)?,
        coset_norms,
        central_z,
    })
}
