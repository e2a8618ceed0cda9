//! Newton and Kottwitz points of elements of `W̃`, the set `B(G, μ)` and the
//! Mazur inequality over `Adm(μ)`. Only split groups are handled, so
//! Frobenius acts trivially on `W̃`.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::Zero;
use serde::Serialize;

use crate::affine::AffineElt;
use crate::error::{Error, Result};
use crate::group::{Coweight, Family, Group, GroupDatum};
use crate::scalar::{format_rational, Rational};
use crate::stratify::adm_set;

/// Largest rank parameter accepted by [`b_of_g_mu`].
pub const MAX_B_RANK: usize = 6;

/// Dominant slope vector. For `GSp` the vector is self-dual, and the
/// similitude coordinate is `ν_i + ν_{2n+1-i}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NewtonPoint {
    pub group: Group,
    pub nu: Vec<Rational>,
}

impl NewtonPoint {
    fn new(group: Group, mut nu: Vec<Rational>) -> Self {
        nu.sort_unstable_by(|a, b| b.cmp(a));
        NewtonPoint { group, nu }
    }

    pub fn from_coweight(group: Group, lambda: &Coweight) -> Self {
        Self::new(group, lambda.as_slice().iter().map(|&x| Rational::from_integer(x)).collect())
    }

    /// Similitude coordinate (GSp only).
    pub fn similitude(&self) -> Option<Rational> {
        match self.group.family {
            Family::Gsp => Some(self.nu[0] + self.nu[self.nu.len() - 1]),
            Family::Gl => None,
        }
    }

    /// Central: every root pairs to zero.
    pub fn is_central(&self) -> bool {
        self.nu.windows(2).all(|w| w[0] == w[1])
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.nu.iter().map(format_rational).collect()
    }
}

impl fmt::Display for NewtonPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.to_strings().join(","))
    }
}

impl Serialize for NewtonPoint {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_strings().serialize(s)
    }
}

/// `κ_G`: coordinate sum for `GL`, similitude degree for `GSp`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct KottwitzPoint(pub i64);

/// `ν̄_x`: with `s` the order of `w̄`, `x^s = t_η` and `ν̄ = dom(η / s)`.
pub fn newton_point(x: &AffineElt) -> NewtonPoint {
    let s = x.wbar().order() as i64;
    let xs = x.pow(s);
    debug_assert!(xs.is_translation());
    NewtonPoint::new(
        x.group(),
        xs.nu().as_slice().iter().map(|&e| Rational::new(e, s)).collect(),
    )
}

pub fn kottwitz_point(x: &AffineElt) -> KottwitzPoint {
    KottwitzPoint(x.kappa())
}

pub fn is_basic(x: &AffineElt) -> bool {
    newton_point(x).is_central()
}

/// Result of a dominance comparison. Points with different Kottwitz
/// invariants are `incomparable` and never `leq`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Dominance {
    pub leq: bool,
    pub incomparable: bool,
}

/// `ν ⪯ ν'`: `ν' − ν` is a nonnegative combination of simple coroots.
pub fn dominance_leq(nu: &[Rational], nu2: &[Rational]) -> Dominance {
    let sort = |v: &[Rational]| {
        let mut v = v.to_vec();
        v.sort_unstable_by(|a, b| b.cmp(a));
        v
    };
    let (a, b) = (sort(nu), sort(nu2));
    if a.len() != b.len() || a.iter().sum::<Rational>() != b.iter().sum::<Rational>() {
        return Dominance {
            leq: false,
            incomparable: true,
        };
    }
    let mut pa = Rational::zero();
    let mut pb = Rational::zero();
    let leq = a.iter().zip(&b).all(|(x, y)| {
        pa += x;
        pb += y;
        pa <= pb
    });
    Dominance {
        leq,
        incomparable: false,
    }
}

pub fn newton_leq(a: &NewtonPoint, b: &NewtonPoint) -> Dominance {
    if a.group != b.group {
        return Dominance {
            leq: false,
            incomparable: true,
        };
    }
    dominance_leq(&a.nu, &b.nu)
}

/// `B(G, μ)`: slope vectors built from isoclinic blocks with strictly
/// decreasing slopes, Kottwitz point `μ^♮` and `ν ⪯ μ̄`. Sorted along a
/// linear extension of the dominance order, basic point first.
pub fn b_of_g_mu(d: &GroupDatum, mu: &Coweight) -> Result<Vec<NewtonPoint>> {
    d.group.check_vector(mu.as_slice())?;
    if d.group.n > MAX_B_RANK {
        return Err(Error::OutOfBounds(format!(
            "B(G, mu) enumeration supports n <= {MAX_B_RANK}"
        )));
    }
    let m = d.dim();
    let top = NewtonPoint::from_coweight(d.group, mu);
    let total: i64 = mu.as_slice().iter().sum();
    let lo = *mu.as_slice().iter().min().unwrap_or(&0);
    let hi = *mu.as_slice().iter().max().unwrap_or(&0);
    let mut out = BTreeSet::new();
    let mut blocks: Vec<(i64, usize)> = Vec::new();
    enumerate_blocks(m, total, lo, hi, None, &mut blocks, &mut |bl| {
        let nu: Vec<Rational> = bl
            .iter()
            .flat_map(|&(mj, nj)| std::iter::repeat_n(Rational::new(mj, nj as i64), nj))
            .collect();
        if d.group.family == Family::Gsp {
            let c = nu[0] + nu[m - 1];
            if (0..m).any(|i| nu[i] + nu[m - 1 - i] != c) {
                return;
            }
        }
        let p = NewtonPoint::new(d.group, nu);
        if newton_leq(&p, &top).leq {
            out.insert(p);
        }
    });
    let mut v: Vec<NewtonPoint> = out.into_iter().collect();
    v.sort_by_key(|p| {
        let mut acc = Rational::zero();
        let weight: Rational = p
            .nu
            .iter()
            .map(|x| {
                acc += x;
                acc
            })
            .sum();
        (weight, p.clone())
    });
    Ok(v)
}

fn enumerate_blocks(
    remaining: usize,
    remaining_total: i64,
    lo: i64,
    hi: i64,
    prev_slope: Option<Rational>,
    blocks: &mut Vec<(i64, usize)>,
    emit: &mut dyn FnMut(&[(i64, usize)]),
) {
    if remaining == 0 {
        if remaining_total == 0 {
            emit(blocks);
        }
        return;
    }
    for nj in 1..=remaining {
        for mj in (lo * nj as i64)..=(hi * nj as i64) {
            let slope = Rational::new(mj, nj as i64);
            if prev_slope.is_some_and(|p| slope >= p) {
                continue;
            }
            blocks.push((mj, nj));
            enumerate_blocks(remaining - nj, remaining_total - mj, lo, hi, Some(slope), blocks, emit);
            blocks.pop();
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct MazurReport {
    pub mu: Coweight,
    pub kappa: KottwitzPoint,
    /// Every admissible element has the Kottwitz point of `t_μ`.
    pub kottwitz_ok: bool,
    /// Every admissible element satisfies `ν̄_x ⪯ μ̄`.
    pub dominance_ok: bool,
    pub violations: Vec<AffineElt>,
    /// Newton points attained on `Adm(μ)`.
    pub attained: Vec<NewtonPoint>,
    pub b_set: Vec<NewtonPoint>,
    pub exhausts_b_set: bool,
}

impl MazurReport {
    pub fn ok(&self) -> bool {
        self.kottwitz_ok && self.dominance_ok
    }

    pub fn to_json(&self) -> serde_json::Value {
        let b_set: Vec<_> = self
            .b_set
            .iter()
            .map(|p| {
                serde_json::json!({
                    "nu": p.to_strings(),
                    "kappa": self.kappa.0,
                    "basic": p.is_central(),
                })
            })
            .collect();
        serde_json::json!({
            "mu": self.mu.as_slice(),
            "b_set": b_set,
            "mazur_ok": self.ok(),
        })
    }
}

/// Checks the Mazur inequality on every element of `Adm(μ)`.
pub fn mazur_check(d: &GroupDatum, mu: &Coweight) -> Result<MazurReport> {
    d.group.check_vector(mu.as_slice())?;
    if !mu.is_minuscule(d.group) {
        return Err(Error::NotMinuscule(mu.to_string()));
    }
    let kappa = KottwitzPoint(d.group.kappa(mu.as_slice()));
    let top = NewtonPoint::from_coweight(d.group, mu);
    let adm = adm_set(d, mu)?;
    let mut violations = Vec::new();
    let mut kottwitz_ok = true;
    let mut dominance_ok = true;
    let mut attained = BTreeSet::new();
    for x in &adm {
        let p = newton_point(x);
        let k_ok = kottwitz_point(x) == kappa;
        let d_ok = newton_leq(&p, &top).leq;
        kottwitz_ok &= k_ok;
        dominance_ok &= d_ok;
        if !(k_ok && d_ok) {
            violations.push(x.clone());
        }
        attained.insert(p);
    }
    let b_set = b_of_g_mu(d, mu)?;
    let b: BTreeSet<_> = b_set.iter().cloned().collect();
    let exhausts_b_set = attained == b;
    Ok(MazurReport {
        mu: mu.clone(),
        kappa,
        kottwitz_ok,
        dominance_ok,
        violations,
        attained: attained.into_iter().collect(),
        b_set,
        exhausts_b_set,
    })
}
