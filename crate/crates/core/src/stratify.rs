//! Admissible and permissible sets and the Kottwitz-Rapoport stratification.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::Serialize;

use crate::affine::AffineElt;
use crate::error::{Error, Result};
use crate::group::{Coweight, Family, GroupDatum, Perm};
use crate::scalar::Rational;

/// `Adm(μ) = {w : w ≤ t_ν for some ν ∈ Wμ}`.
pub fn adm_set(d: &GroupDatum, mu: &Coweight) -> Result<BTreeSet<AffineElt>> {
    let orbit = d.weyl_orbit(mu)?;
    let ideals: Vec<_> = orbit
        .par_iter()
        .map(|nu| d.lower_ideal(&d.translation(nu)?))
        .collect::<Result<_>>()?;
    Ok(ideals.iter().flat_map(|s| s.iter().cloned()).collect())
}

/// Whether `v` lies in the convex hull of `Wμ`: the decreasing rearrangement
/// of `v` is dominated by that of `μ`. For `GSp` this is the type `C`
/// dominance order because `v` and `μ` are both self-dual.
pub fn in_convex_hull(mu: &Coweight, v: &[Rational]) -> bool {
    let mut sorted = v.to_vec();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    let top = mu.dominant();
    let mut acc_v = Rational::from_integer(0);
    let mut acc_m = Rational::from_integer(0);
    for (a, &b) in sorted.iter().zip(top.as_slice()) {
        acc_v += a;
        acc_m += Rational::from_integer(b);
        if acc_v > acc_m {
            return false;
        }
    }
    acc_v == acc_m
}

/// Lattice points `ν` with `min μ ≤ ν_i ≤ max μ` and the Kottwitz invariant
/// of `μ`.
fn candidate_translations(d: &GroupDatum, mu: &Coweight) -> Vec<Vec<i64>> {
    let m = d.dim();
    let lo = *mu.as_slice().iter().min().unwrap_or(&0);
    let hi = *mu.as_slice().iter().max().unwrap_or(&0);
    let kappa = d.group.kappa(mu.as_slice());
    let half = match d.group.family {
        Family::Gl => m,
        Family::Gsp => m / 2,
    };
    let mut out = Vec::new();
    let mut cur = vec![lo; half];
    loop {
        let full: Option<Vec<i64>> = match d.group.family {
            Family::Gl => (cur.iter().sum::<i64>() == kappa).then(|| cur.clone()),
            Family::Gsp => {
                let mut v = cur.clone();
                let tail: Vec<i64> = cur.iter().rev().map(|a| kappa - a).collect();
                v.extend(tail);
                v.iter().all(|x| (lo..=hi).contains(x)).then_some(v)
            }
        };
        out.extend(full);
        let mut k = 0;
        loop {
            if k == half {
                return out;
            }
            if cur[k] < hi {
                cur[k] += 1;
                break;
            }
            cur[k] = lo;
            k += 1;
        }
    }
}

/// `Perm(μ) = {x ∈ W_aff τ_μ : x(a) − a ∈ Conv(Wμ) for every vertex a}`.
pub fn perm_set(d: &GroupDatum, mu: &Coweight) -> Result<BTreeSet<AffineElt>> {
    d.group.check_vector(mu.as_slice())?;
    let verts = d.base_alcove_vertices();
    let nus = candidate_translations(d, mu);
    let found: Vec<Vec<AffineElt>> = d
        .finite_weyl
        .par_iter()
        .map(|w: &Perm| {
            nus.iter()
                .filter_map(|nu| {
                    let x = AffineElt::from_parts(d.group, Coweight(nu.clone()), w.clone());
                    verts
                        .iter()
                        .all(|a| {
                            let diff: Vec<Rational> =
                                x.act(a).iter().zip(a).map(|(p, q)| p - q).collect();
                            in_convex_hull(mu, &diff)
                        })
                        .then_some(x)
                })
                .collect()
        })
        .collect();
    Ok(found.into_iter().flatten().collect())
}

/// Outcome of comparing `Adm(μ)` with `Perm(μ)`.
#[derive(Clone, Debug, Serialize)]
pub struct PermAdmReport {
    pub mu: Coweight,
    pub minuscule: bool,
    /// `false` when `μ` is not minuscule, so equality is not predicted.
    pub in_theorem_scope: bool,
    pub adm_size: usize,
    pub perm_size: usize,
    pub equal: bool,
    pub adm_subset_perm: bool,
    pub only_in_adm: Vec<AffineElt>,
    pub only_in_perm: Vec<AffineElt>,
}

impl PermAdmReport {
    /// The verdict that applies to `μ`: equality for minuscule `μ`, and
    /// inclusion otherwise.
    pub fn passed(&self) -> bool {
        if self.in_theorem_scope {
            self.equal
        } else {
            self.adm_subset_perm
        }
    }
}

pub fn verify_perm_eq_adm(d: &GroupDatum, mu: &Coweight) -> Result<PermAdmReport> {
    let adm = adm_set(d, mu)?;
    let perm = perm_set(d, mu)?;
    let minuscule = mu.is_minuscule(d.group);
    let only_in_adm: Vec<_> = adm.difference(&perm).cloned().collect();
    let only_in_perm: Vec<_> = perm.difference(&adm).cloned().collect();
    Ok(PermAdmReport {
        mu: mu.clone(),
        minuscule,
        in_theorem_scope: minuscule,
        adm_size: adm.len(),
        perm_size: perm.len(),
        equal: only_in_adm.is_empty() && only_in_perm.is_empty(),
        adm_subset_perm: only_in_adm.is_empty(),
        only_in_adm,
        only_in_perm,
    })
}

fn require_adm(d: &GroupDatum, w: &AffineElt, mu: &Coweight) -> Result<()> {
    for nu in d.weyl_orbit(mu)? {
        if d.bruhat_leq(w, &d.translation(&nu)?)? {
            return Ok(());
        }
    }
    Err(Error::NotAdmissible(w.to_string()))
}

/// `{x ∈ Adm(μ) : x ≤ w}`.
pub fn closure_set(d: &GroupDatum, w: &AffineElt, mu: &Coweight) -> Result<BTreeSet<AffineElt>> {
    require_adm(d, w, mu)?;
    Ok((*d.lower_ideal(w)?).clone())
}

/// `r(w)`: half the number of fixed points of `w̄` in `S_2n`.
pub fn p_rank(d: &GroupDatum, w: &AffineElt) -> Result<usize> {
    if d.group.family != Family::Gsp {
        return Err(Error::WrongFamily {
            op: "p_rank",
            expected: "GSp",
        });
    }
    Ok(w.wbar().fixed_points() / 2)
}

/// `{t_λ : λ ∈ Wμ}`.
pub fn smooth_locus(d: &GroupDatum, mu: &Coweight) -> Result<BTreeSet<AffineElt>> {
    d.weyl_orbit(mu)?.iter().map(|nu| d.translation(nu)).collect()
}

/// Strata of maximal p-rank; these are the translation elements.
pub fn ordinary_locus(d: &GroupDatum, mu: &Coweight) -> Result<BTreeSet<AffineElt>> {
    if d.group.family != Family::Gsp {
        return Err(Error::WrongFamily {
            op: "ordinary_locus",
            expected: "GSp",
        });
    }
    let n = d.group.n;
    let adm = adm_set(d, mu)?;
    let mut out = BTreeSet::new();
    for w in adm {
        if p_rank(d, &w)? == n {
            out.insert(w);
        }
    }
    Ok(out)
}

fn require_minuscule(d: &GroupDatum, mu: &Coweight) -> Result<()> {
    d.group.check_vector(mu.as_slice())?;
    if !mu.is_minuscule(d.group) {
        return Err(Error::NotMinuscule(mu.to_string()));
    }
    Ok(())
}

/// Maps each element of `Adm(μ)` of colength one to the translations above it.
pub fn codim1_incidence(d: &GroupDatum, mu: &Coweight) -> Result<BTreeMap<AffineElt, Vec<AffineElt>>> {
    require_minuscule(d, mu)?;
    let top = d.translation(mu)?.length();
    let trans = smooth_locus(d, mu)?;
    let adm = adm_set(d, mu)?;
    let mut out = BTreeMap::new();
    for x in adm.into_iter().filter(|x| x.length() + 1 == top) {
        let above = trans
            .iter()
            .filter(|t| d.bruhat_leq(&x, t).unwrap_or(false))
            .cloned()
            .collect();
        out.insert(x, above);
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct StratumReport {
    pub w: AffineElt,
    pub length: usize,
    pub closure: Vec<AffineElt>,
    pub is_translation: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p_rank: Option<usize>,
    pub is_in_smooth_locus: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct StratificationReport {
    pub mu: Coweight,
    pub strata: Vec<StratumReport>,
    /// Number of irreducible components, i.e. of top-dimensional strata.
    pub components: usize,
    pub top_dimension: usize,
}

pub fn stratification_report(d: &GroupDatum, mu: &Coweight) -> Result<StratificationReport> {
    require_minuscule(d, mu)?;
    let adm = adm_set(d, mu)?;
    let smooth = smooth_locus(d, mu)?;
    let top = d.translation(mu)?.length();
    let strata = adm
        .iter()
        .map(|w| {
            Ok(StratumReport {
                w: w.clone(),
                length: w.length(),
                closure: d.lower_ideal(w)?.iter().cloned().collect(),
                is_translation: w.is_translation(),
                p_rank: match d.group.family {
                    Family::Gsp => Some(p_rank(d, w)?),
                    Family::Gl => None,
                },
                is_in_smooth_locus: smooth.contains(w),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let components = strata.iter().filter(|s| s.length == top).count();
    Ok(StratificationReport {
        mu: mu.clone(),
        strata,
        components,
        top_dimension: top,
    })
}

/// The stratification document exchanged with the command line tool.
pub fn stratify_json(d: &GroupDatum, mu: &Coweight) -> Result<serde_json::Value> {
    let adm = adm_set(d, mu)?;
    let perm = perm_set(d, mu)?;
    let report = stratification_report(d, mu)?;
    let txt = |it: &mut dyn Iterator<Item = &AffineElt>| it.map(|x| x.to_text()).collect::<Vec<_>>();
    let strata: Vec<serde_json::Value> = report
        .strata
        .iter()
        .map(|s| {
            let mut o = serde_json::json!({
                "w": s.w.to_text(),
                "length": s.length,
                "smooth": s.is_in_smooth_locus,
                "closure": txt(&mut s.closure.iter()),
            });
            if let Some(r) = s.p_rank {
                o["p_rank"] = r.into();
            }
            o
        })
        .collect();
    Ok(serde_json::json!({
        "mu": mu.as_slice(),
        "adm": txt(&mut adm.iter()),
        "perm": txt(&mut perm.iter()),
        "equal": adm == perm,
        "strata": strata,
        "components": report.components,
    }))
}

/// `(0^{n-d}, (-1)^d)` for `GL_n` and `(0^n, (-1)^n)` for `GSp_2n`.
pub fn standard_mu(d: &GroupDatum, dd: usize) -> Result<Coweight> {
    let n = d.group.n;
    match d.group.family {
        Family::Gl => {
            if dd > n {
                return Err(Error::InvalidArgument(format!("d = {dd} exceeds n = {n}")));
            }
            Ok(Coweight((0..n).map(|i| if i < n - dd { 0 } else { -1 }).collect()))
        }
        Family::Gsp => Ok(Coweight((0..2 * n).map(|i| if i < n { 0 } else { -1 }).collect())),
    }
}
