//! Brute-force enumeration of the special fiber of the local model over
//! `F_q`.
//!
//! A point is a periodic lattice chain `tV_i ⊂ L_i ⊂ V_i` of corank `d`,
//! stored as the subspaces `U_i = L_i / tV_i` of `V_i / tV_i = F_q^N`. In the
//! standard basis of the chain the transition `V_{i-1} → V_i` reduces to the
//! map killing coordinate `i` (1-based), and `V_N = t⁻¹V_0` closes the chain.
//! For `GSp_2n` the subspaces at slots `0` and `n` are Lagrangian for the
//! anti-diagonal form `Ĩ` and slot `2n - j` is the annihilator of slot `j`.
//!
//! The relative position of a point is read slot by slot from Schubert cells
//! against the flag `F_{i,j}` induced by the chain on `V_i / tV_i`, which is
//! spanned by the coordinates `i+1, …, N, 1, …, i` in that order. The
//! monomial chain `t_λ w̄ · V_•` has `U_i` spanned by the coordinates `k`
//! with `λ_k - [w̄⁻¹(k) ≤ i] + [k ≤ i] = 0`; inverting this gives `x = t_λ w̄`.
//! The stratum of the point is indexed by `x⁻¹`, which lies in `Adm(μ)`
//! for `μ = (0^{N-d}, (-1)^d)`.

pub mod field;
pub mod subspace;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::affine::AffineElt;
use crate::error::{Error, Result};
use crate::group::{Coweight, Family, Group, GroupDatum, Perm};
use crate::stratify::{adm_set, standard_mu};

pub use field::Field;
pub use subspace::{all_subspaces, Subspace};

/// Largest field size accepted by the enumerator.
pub const MAX_Q: usize = 4;
/// Largest `n` for `GL_n`.
pub const MAX_GL_N: usize = 3;
/// Largest `n` for `GSp_2n`.
pub const MAX_GSP_N: usize = 2;

/// A point of the special fiber: one subspace `U_i ⊂ F_q^N` per slot.
#[derive(Clone, Debug)]
pub struct ChainPoint {
    group: Group,
    field: Arc<Field>,
    slots: Vec<Subspace>,
}

impl PartialEq for ChainPoint {
    fn eq(&self, other: &Self) -> bool {
        self.group == other.group && self.field.size() == other.field.size() && self.slots == other.slots
    }
}

impl Eq for ChainPoint {}

impl ChainPoint {
    pub fn group(&self) -> Group {
        self.group
    }

    pub fn q(&self) -> usize {
        self.field.size()
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn slots(&self) -> &[Subspace] {
        &self.slots
    }

    /// Jump sets of every slot against its chain flag, 0-based.
    pub fn jump_sets(&self) -> Vec<Vec<usize>> {
        let n = self.group.dim();
        (0..n).map(|i| self.slots[i].jump_set(&self.field, &flag_order(n, i))).collect()
    }

    /// Generator matrices of the lattices `L_i` over `F_q[t]/(t²)` in the
    /// basis of `V_i`, one block per slot. Each row is a generator: the
    /// reduced basis of `U_i` followed by `t·e_k` for the non-pivot
    /// coordinates `k`. Entries are `0`, `c`, `t` or `ct` with `c` a field
    /// element code.
    pub fn dump(&self) -> String {
        let n = self.group.dim();
        let mut out = String::new();
        for (i, u) in self.slots.iter().enumerate() {
            let _ = writeln!(out, "slot {i}");
            let mut pivots = Vec::new();
            for row in u.basis() {
                pivots.push(row.iter().position(|&x| x != 0).expect("reduced rows are nonzero"));
                let toks: Vec<String> = row.iter().map(|c| c.to_string()).collect();
                let _ = writeln!(out, "  {}", toks.join(" "));
            }
            for k in (0..n).filter(|k| !pivots.contains(k)) {
                let toks: Vec<&str> = (0..n).map(|c| if c == k { "t" } else { "0" }).collect();
                let _ = writeln!(out, "  {}", toks.join(" "));
            }
        }
        out
    }
}

/// `(i, i+1, …, N-1, 0, …, i-1)`: the order in which the chain flag on
/// `V_i / tV_i` picks up coordinates.
fn flag_order(n: usize, i: usize) -> Vec<usize> {
    (i..n).chain(0..i).collect()
}

/// `Ĩ` with `Ĩ_{k, N+1-k} = 1` for `k ≤ n` and `-1` for `k > n`.
fn symplectic_gram(f: &Field, n: usize) -> Vec<Vec<u8>> {
    let m = 2 * n;
    let mut g = vec![vec![0u8; m]; m];
    for (k, row) in g.iter_mut().enumerate() {
        row[m - 1 - k] = if k < n { 1 } else { f.neg(1) };
    }
    g
}

struct Setup {
    group: Group,
    corank: usize,
    field: Arc<Field>,
    gram: Option<Vec<Vec<u8>>>,
}

fn setup(d: &GroupDatum, mu: &Coweight, q: usize) -> Result<Setup> {
    let group = d.group;
    let limit = match group.family {
        Family::Gl => MAX_GL_N,
        Family::Gsp => MAX_GSP_N,
    };
    if group.n > limit {
        return Err(Error::OutOfBounds(format!("{group} exceeds the enumeration bound n ≤ {limit}")));
    }
    if q > MAX_Q {
        return Err(Error::OutOfBounds(format!("q = {q} exceeds {MAX_Q}")));
    }
    group.check_vector(mu.as_slice())?;
    let corank = mu.as_slice().iter().filter(|&&x| x == -1).count();
    let standard = standard_mu(d, corank)?;
    if mu.dominant() != standard.dominant() {
        return Err(Error::InvalidArgument(format!(
            "{mu} is not in the orbit of {standard}; the enumerator uses entries in {{0, -1}}"
        )));
    }
    let field = Arc::new(Field::new(q)?);
    let gram = (group.family == Family::Gsp).then(|| symplectic_gram(&field, group.n));
    Ok(Setup {
        group,
        corank,
        field,
        gram,
    })
}

/// All points of the special fiber over `F_q`, in a deterministic order.
pub fn enumerate_special_fiber(d: &GroupDatum, mu: &Coweight, q: usize) -> Result<Vec<ChainPoint>> {
    let s = setup(d, mu, q)?;
    let m = s.group.dim();
    let f = &*s.field;
    let grass = all_subspaces(f, m, m - s.corank);
    let lagrangian: Vec<Subspace> = match &s.gram {
        Some(g) => grass.iter().filter(|u| u.is_isotropic(f, g)).cloned().collect(),
        None => Vec::new(),
    };
    let first = if s.gram.is_some() { &lagrangian } else { &grass };
    let chains: Vec<Vec<Vec<Subspace>>> = first
        .par_iter()
        .map(|u0| {
            let mut out = Vec::new();
            let mut chain = vec![u0.clone()];
            extend_chain(&s, &grass, &lagrangian, &mut chain, &mut out);
            out
        })
        .collect();
    Ok(chains
        .into_iter()
        .flatten()
        .map(|slots| ChainPoint {
            group: s.group,
            field: s.field.clone(),
            slots,
        })
        .collect())
}

fn extend_chain(
    s: &Setup,
    grass: &[Subspace],
    lagrangian: &[Subspace],
    chain: &mut Vec<Subspace>,
    out: &mut Vec<Vec<Subspace>>,
) {
    let f = &*s.field;
    let m = s.group.dim();
    let j = chain.len();
    let image = chain[j - 1].kill_coordinate(f, j - 1);
    if j == m {
        if chain[0].contains(f, &image) {
            out.push(chain.clone());
        }
        return;
    }
    if let Some(g) = &s.gram {
        let n = s.group.n;
        if j > n {
            let dual = chain[m - j].annihilator(f, g);
            if dual.contains(f, &image) {
                chain.push(dual);
                extend_chain(s, grass, lagrangian, chain, out);
                chain.pop();
            }
            return;
        }
        if j == n {
            for u in lagrangian.iter().filter(|u| u.contains(f, &image)) {
                chain.push(u.clone());
                extend_chain(s, grass, lagrangian, chain, out);
                chain.pop();
            }
            return;
        }
    }
    for u in grass.iter().filter(|u| u.contains(f, &image)) {
        chain.push(u.clone());
        extend_chain(s, grass, lagrangian, chain, out);
        chain.pop();
    }
}

/// Recovers `x = t_λ w̄` with `L_• = x · V_•` up to the Iwahori from the
/// slot-wise jump sets.
fn position_from_jumps(group: Group, jumps: &[Vec<usize>]) -> Result<AffineElt> {
    let m = group.dim();
    let bad = |why: String| Error::Normalization(format!("jump sets {jumps:?}: {why}"));
    let lambda: Vec<i64> = (0..m).map(|k| 1 - jumps[0].contains(&k) as i64).collect();
    // first slot i at which w̄⁻¹(k) ≤ i, i.e. w̄⁻¹(k) itself (1-based)
    let mut winv = vec![m; m];
    let mut prev: BTreeSet<usize> = BTreeSet::new();
    for i in 1..m {
        let mut set = BTreeSet::new();
        for k in 0..m {
            let a = lambda[k] + (k < i) as i64 - 1 + jumps[i].contains(&k) as i64;
            match a {
                0 => {}
                1 => {
                    set.insert(k);
                }
                _ => return Err(bad(format!("indicator {a} at slot {i}, coordinate {k}"))),
            }
        }
        if set.len() != i || !prev.is_subset(&set) {
            return Err(bad(format!("slot {i} does not extend the previous flag")));
        }
        for &k in set.difference(&prev) {
            winv[k] = i;
        }
        prev = set;
    }
    let winv = Perm::from_images(winv.into_iter().map(|x| x - 1).collect())?;
    let wbar = winv.inverse();
    match group.family {
        Family::Gl => AffineElt::new(group, lambda, wbar),
        Family::Gsp => {
            if !wbar.is_symplectic() {
                return Err(bad(format!("finite part {wbar:?} is not symplectic")));
            }
            AffineElt::new(group, lambda, wbar).map_err(|e| bad(e.to_string()))
        }
    }
}

/// The relative position `x` of a point with respect to the standard chain:
/// `L_• = x · V_•` modulo the Iwahori.
pub fn rel_position_iwahori(point: &ChainPoint) -> Result<AffineElt> {
    position_from_jumps(point.group, &point.jump_sets())
}

/// The Kottwitz-Rapoport stratum containing the point: the inverse of its
/// relative position.
pub fn stratum_of(point: &ChainPoint) -> Result<AffineElt> {
    Ok(rel_position_iwahori(point)?.inverse())
}

/// Jump sets of the monomial chain in stratum `w`.
pub fn monomial_jump_sets(w: &AffineElt) -> Result<Vec<Vec<usize>>> {
    let x = w.inverse();
    let m = x.group().dim();
    let lam = x.nu().as_slice();
    let winv = x.wbar().inverse();
    let mut out = Vec::with_capacity(m);
    for i in 0..m {
        let mut s = Vec::new();
        for k in 0..m {
            let c = lam[k] - (winv.image(k) < i) as i64 + (k < i) as i64;
            match c {
                0 => s.push(k),
                1 => {}
                _ => {
                    return Err(Error::InvalidArgument(format!(
                        "{w} does not give a chain between tV_• and V_•"
                    )))
                }
            }
        }
        out.push(s);
    }
    Ok(out)
}

/// `dim(U_i ∩ F_{i,j})` for every slot `i` and flag step `j`.
fn rank_profile(jumps: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let m = jumps.len();
    (0..m)
        .map(|i| {
            let order = flag_order(m, i);
            (0..=m).map(|j| order[..j].iter().filter(|k| jumps[i].contains(k)).count()).collect()
        })
        .collect()
}

fn dominates(a: &[Vec<usize>], b: &[Vec<usize>]) -> bool {
    a.iter().zip(b).all(|(x, y)| x.iter().zip(y).all(|(p, r)| p >= r))
}

/// The enumerated special fiber together with the stratum of every point.
#[derive(Clone, Debug)]
pub struct SpecialFiber {
    pub group: Group,
    pub mu: Coweight,
    pub q: usize,
    pub points: Vec<ChainPoint>,
    pub strata: Vec<AffineElt>,
    ranks: Vec<Vec<Vec<usize>>>,
}

impl SpecialFiber {
    pub fn new(d: &GroupDatum, mu: &Coweight, q: usize) -> Result<Self> {
        let points = enumerate_special_fiber(d, mu, q)?;
        let jumps: Vec<Vec<Vec<usize>>> = points.par_iter().map(|p| p.jump_sets()).collect();
        let strata = jumps
            .iter()
            .map(|j| Ok(position_from_jumps(d.group, j)?.inverse()))
            .collect::<Result<Vec<_>>>()?;
        let ranks = jumps.iter().map(|j| rank_profile(j)).collect();
        Ok(SpecialFiber {
            group: d.group,
            mu: mu.clone(),
            q,
            points,
            strata,
            ranks,
        })
    }

    pub fn total(&self) -> u64 {
        self.points.len() as u64
    }

    pub fn counts(&self) -> BTreeMap<AffineElt, u64> {
        let mut out = BTreeMap::new();
        for w in &self.strata {
            *out.entry(w.clone()).or_insert(0) += 1;
        }
        out
    }

    /// Indices of the points satisfying the rank conditions of stratum `w`,
    /// which cut out its closure.
    pub fn closure_points(&self, w: &AffineElt) -> Result<Vec<usize>> {
        let target = rank_profile(&monomial_jump_sets(w)?);
        Ok((0..self.points.len()).filter(|&i| dominates(&self.ranks[i], &target)).collect())
    }

    /// Whether stratum `w` lies in the closure of stratum `w2`.
    pub fn closure_witness(&self, w: &AffineElt, w2: &AffineElt) -> Result<bool> {
        let a = rank_profile(&monomial_jump_sets(w)?);
        let b = rank_profile(&monomial_jump_sets(w2)?);
        Ok(dominates(&a, &b))
    }

    /// Compares geometric closures with the Bruhat order on every pair of
    /// strata and checks the point count of every closure.
    pub fn closure_report(&self, d: &GroupDatum) -> Result<ClosureReport> {
        let adm = adm_set(d, &self.mu)?;
        let mut report = ClosureReport::default();
        for w2 in &adm {
            let pts = self.closure_points(w2)?;
            let seen: BTreeSet<&AffineElt> = pts.iter().map(|&i| &self.strata[i]).collect();
            let ideal = d.lower_ideal(w2)?;
            let expected: u64 = ideal.iter().map(|x| (self.q as u64).pow(x.length() as u32)).sum();
            if pts.len() as u64 != expected {
                report.count_mismatches.push(format!("{w2}: {} points, expected {expected}", pts.len()));
            }
            for w in &adm {
                report.pairs_checked += 1;
                let geo = self.closure_witness(w, w2)?;
                let bru = d.bruhat_leq(w, w2)?;
                if geo != bru || geo != seen.contains(w) {
                    report.order_mismatches.push(format!("{w} vs {w2}: geometric {geo}, Bruhat {bru}"));
                }
            }
        }
        Ok(report)
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct ClosureReport {
    pub pairs_checked: usize,
    pub order_mismatches: Vec<String>,
    pub count_mismatches: Vec<String>,
}

impl ClosureReport {
    pub fn passed(&self) -> bool {
        self.order_mismatches.is_empty() && self.count_mismatches.is_empty()
    }
}

/// Whether stratum `w` lies in the closure of stratum `w2`, decided by the
/// rank conditions on the enumerated points.
pub fn closure_witness(d: &GroupDatum, mu: &Coweight, q: usize, w: &AffineElt, w2: &AffineElt) -> Result<bool> {
    let adm = adm_set(d, mu)?;
    for x in [w, w2] {
        if !adm.contains(x) {
            return Err(Error::NotAdmissible(x.to_string()));
        }
    }
    let fiber = SpecialFiber::new(d, mu, q)?;
    let pts = fiber.closure_points(w2)?;
    Ok(pts.iter().any(|&i| &fiber.strata[i] == w))
}

#[derive(Clone, Debug, Serialize)]
pub struct StratumCount {
    pub w: AffineElt,
    pub length: usize,
    pub count: u64,
    pub expected: u64,
    pub matches: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct StrataCountReport {
    pub group: Group,
    pub mu: Coweight,
    pub q: usize,
    pub total: u64,
    pub expected_total: u64,
    pub strata: Vec<StratumCount>,
    /// Number of strata of maximal dimension.
    pub components: usize,
    pub violations: Vec<String>,
}

impl StrataCountReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    /// Tab-separated table: element, length, count, expected, match.
    pub fn to_tsv(&self) -> String {
        let mut out = String::from("element\tlength\tcount\texpected\tmatch\n");
        for s in &self.strata {
            let _ = writeln!(out, "{}\t{}\t{}\t{}\t{}", s.w.to_text(), s.length, s.count, s.expected, s.matches);
        }
        let _ = writeln!(out, "total\t\t{}\t{}\t{}", self.total, self.expected_total, self.total == self.expected_total);
        out
    }
}

fn count_report(d: &GroupDatum, fiber: &SpecialFiber) -> Result<StrataCountReport> {
    let adm = adm_set(d, &fiber.mu)?;
    let counts = fiber.counts();
    let q = fiber.q as u64;
    let mut violations = Vec::new();
    let keys: BTreeSet<&AffineElt> = adm.iter().chain(counts.keys()).collect();
    let strata: Vec<StratumCount> = keys
        .into_iter()
        .map(|w| {
            let count = counts.get(w).copied().unwrap_or(0);
            let expected = if adm.contains(w) { q.pow(w.length() as u32) } else { 0 };
            if count == 0 {
                violations.push(format!("empty stratum {w}"));
            } else if !adm.contains(w) {
                violations.push(format!("stratum {w} is not admissible"));
            } else if count != expected {
                violations.push(format!("stratum {w}: {count} points, expected {expected}"));
            }
            StratumCount {
                w: w.clone(),
                length: w.length(),
                count,
                expected,
                matches: count == expected,
            }
        })
        .collect();
    let expected_total = adm.iter().map(|w| q.pow(w.length() as u32)).sum();
    let top = strata.iter().map(|s| s.length).max().unwrap_or(0);
    Ok(StrataCountReport {
        group: fiber.group,
        mu: fiber.mu.clone(),
        q: fiber.q,
        total: fiber.total(),
        expected_total,
        components: strata.iter().filter(|s| s.length == top && s.count > 0).count(),
        strata,
        violations,
    })
}

/// Point count of every stratum against `q^{ℓ(w)}`.
pub fn strata_point_counts(d: &GroupDatum, mu: &Coweight, q: usize) -> Result<StrataCountReport> {
    count_report(d, &SpecialFiber::new(d, mu, q)?)
}

impl SpecialFiber {
    pub fn count_report(&self, d: &GroupDatum) -> Result<StrataCountReport> {
        count_report(d, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::build_group_datum;

    fn gl(n: usize) -> Arc<GroupDatum> {
        build_group_datum(Family::Gl, n).unwrap()
    }

    #[test]
    fn gl2_totals() {
        let d = gl(2);
        let mu = standard_mu(&d, 1).unwrap();
        for q in [2, 3, 4] {
            let pts = enumerate_special_fiber(&d, &mu, q).unwrap();
            assert_eq!(pts.len(), 2 * q + 1);
            let r = strata_point_counts(&d, &mu, q).unwrap();
            assert!(r.passed(), "{:?}", r.violations);
            let mut lens: Vec<u64> = r.strata.iter().map(|s| s.count).collect();
            lens.sort_unstable();
            assert_eq!(lens, vec![1, q as u64, q as u64]);
        }
    }

    #[test]
    fn enumeration_is_duplicate_free() {
        let d = gl(3);
        let mu = standard_mu(&d, 1).unwrap();
        let pts = enumerate_special_fiber(&d, &mu, 2).unwrap();
        for (i, a) in pts.iter().enumerate() {
            assert!(pts[i + 1..].iter().all(|b| a != b));
        }
    }

    #[test]
    fn monomial_points_round_trip() {
        for (fam, n, dd) in [(Family::Gl, 2, 1), (Family::Gl, 3, 1), (Family::Gl, 3, 2), (Family::Gsp, 2, 2)] {
            let d = build_group_datum(fam, n).unwrap();
            let mu = standard_mu(&d, dd).unwrap();
            for w in adm_set(&d, &mu).unwrap() {
                let j = monomial_jump_sets(&w).unwrap();
                assert_eq!(position_from_jumps(d.group, &j).unwrap().inverse(), w);
            }
        }
    }

    #[test]
    fn unique_closed_point_is_tau() {
        let d = gl(3);
        let mu = standard_mu(&d, 1).unwrap();
        let r = strata_point_counts(&d, &mu, 3).unwrap();
        let tau = d.tau_element(&mu).unwrap();
        let ones: Vec<_> = r.strata.iter().filter(|s| s.count == 1).collect();
        assert_eq!(ones.len(), 1);
        assert_eq!(ones[0].w, tau);
    }

    #[test]
    fn closure_small_cases() {
        let d = gl(2);
        let mu = standard_mu(&d, 1).unwrap();
        let tau = d.tau_element(&mu).unwrap();
        let trans: Vec<_> = d.weyl_orbit(&mu).unwrap().iter().map(|l| d.translation(l).unwrap()).collect();
        assert!(closure_witness(&d, &mu, 2, &tau, &trans[0]).unwrap());
        assert!(!closure_witness(&d, &mu, 2, &trans[0], &trans[1]).unwrap());
        assert!(closure_witness(&d, &mu, 2, &trans[1], &trans[1]).unwrap());
        let fiber = SpecialFiber::new(&d, &mu, 3).unwrap();
        assert!(fiber.closure_report(&d).unwrap().passed());
    }

    #[test]
    fn bounds_and_orbits() {
        let d = gl(4);
        let mu = standard_mu(&d, 1).unwrap();
        assert!(matches!(enumerate_special_fiber(&d, &mu, 2), Err(Error::OutOfBounds(_))));
        let d = gl(2);
        let mu = standard_mu(&d, 1).unwrap();
        assert!(matches!(enumerate_special_fiber(&d, &mu, 5), Err(Error::OutOfBounds(_))));
        assert!(enumerate_special_fiber(&d, &mu, 6).is_err());
        let shifted = d.coweight(vec![1, 0]).unwrap();
        assert!(matches!(enumerate_special_fiber(&d, &shifted, 2), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn dump_shape() {
        let d = gl(2);
        let mu = standard_mu(&d, 1).unwrap();
        let pts = enumerate_special_fiber(&d, &mu, 2).unwrap();
        let text = pts[0].dump();
        assert_eq!(text.lines().count(), 2 * 3);
        assert!(text.lines().all(|l| l.starts_with("slot") || l.split_whitespace().count() == 2));
    }
}
