//! Elements `t_ν w̄` of the extended affine Weyl group.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{Coweight, Family, Group, GroupDatum, Perm};
use crate::scalar::Rational;

/// `t_ν w̄`, acting on the apartment by `v ↦ ν + w̄ v`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "ElementJson", into = "ElementJson")]
pub struct AffineElt {
    group: Group,
    nu: Coweight,
    wbar: Perm,
}

#[derive(Serialize, Deserialize)]
struct ElementJson {
    nu: Vec<i64>,
    wbar: Vec<usize>,
    group: Group,
}

impl From<AffineElt> for ElementJson {
    fn from(x: AffineElt) -> Self {
        ElementJson {
            wbar: x.wbar.one_line(),
            nu: x.nu.into_vec(),
            group: x.group,
        }
    }
}

impl TryFrom<ElementJson> for AffineElt {
    type Error = Error;

    fn try_from(j: ElementJson) -> Result<Self> {
        AffineElt::new(j.group, j.nu, Perm::from_one_line(&j.wbar)?)
    }
}

impl AffineElt {
    pub(crate) fn from_parts(group: Group, nu: Coweight, wbar: Perm) -> Self {
        AffineElt { group, nu, wbar }
    }

    /// Validating constructor.
    pub fn new(group: Group, nu: Vec<i64>, wbar: Perm) -> Result<Self> {
        let group = group.validate()?;
        group.check_vector(&nu)?;
        if wbar.len() != group.dim() {
            return Err(Error::DimensionMismatch {
                expected: group.dim(),
                got: wbar.len(),
            });
        }
        if group.family == Family::Gsp && !wbar.is_symplectic() {
            return Err(Error::InvalidArgument(format!(
                "{:?} is not in the finite Weyl group of {group}",
                wbar.one_line()
            )));
        }
        Ok(AffineElt {
            group,
            nu: Coweight(nu),
            wbar,
        })
    }

    pub fn identity(group: Group) -> Self {
        AffineElt {
            group,
            nu: Coweight::zero(group),
            wbar: Perm::identity(group.dim()),
        }
    }

    pub fn group(&self) -> Group {
        self.group
    }

    /// Translation part `λ(x) = ν`.
    pub fn nu(&self) -> &Coweight {
        &self.nu
    }

    pub fn wbar(&self) -> &Perm {
        &self.wbar
    }

    pub fn is_translation(&self) -> bool {
        self.wbar.is_identity()
    }

    pub fn is_identity(&self) -> bool {
        self.is_translation() && self.nu.as_slice().iter().all(|&x| x == 0)
    }

    pub fn multiply(&self, other: &AffineElt) -> Result<AffineElt> {
        if self.group != other.group {
            return Err(Error::GroupMismatch {
                left: self.group,
                right: other.group,
            });
        }
        Ok(self.mul_unchecked(other))
    }

    /// Product assuming both factors belong to the same group.
    pub fn mul_unchecked(&self, other: &AffineElt) -> AffineElt {
        debug_assert_eq!(self.group, other.group);
        let moved = self.wbar.act(other.nu.as_slice());
        AffineElt {
            group: self.group,
            nu: Coweight(self.nu.as_slice().iter().zip(&moved).map(|(a, b)| a + b).collect()),
            wbar: self.wbar.compose(&other.wbar),
        }
    }

    /// `(t_ν w̄)⁻¹ = t_{-w̄⁻¹ν} w̄⁻¹`.
    pub fn inverse(&self) -> AffineElt {
        let winv = self.wbar.inverse();
        let nu = winv.act(self.nu.as_slice()).into_iter().map(|x| -x).collect();
        AffineElt {
            group: self.group,
            nu: Coweight(nu),
            wbar: winv,
        }
    }

    pub fn pow(&self, k: i64) -> AffineElt {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut out = AffineElt::identity(self.group);
        for _ in 0..k.unsigned_abs() {
            out = out.mul_unchecked(&base);
        }
        out
    }

    /// Number of affine root hyperplanes separating the base alcove from its
    /// image.
    pub fn length(&self) -> usize {
        let winv = self.wbar.inverse();
        let nu = self.nu.as_slice();
        self.group
            .positive_root_pairs()
            .into_iter()
            .map(|(i, j)| {
                let delta = i64::from(winv.image(i) > winv.image(j));
                (nu[i] - nu[j] + delta).unsigned_abs() as usize
            })
            .sum()
    }

    /// Image of a rational point under `v ↦ ν + w̄ v`.
    pub fn act(&self, v: &[Rational]) -> Vec<Rational> {
        self.wbar
            .act(v)
            .into_iter()
            .zip(self.nu.as_slice())
            .map(|(x, &t)| x + Rational::from_integer(t))
            .collect()
    }

    /// Kottwitz invariant; identifies the component in `W̃ / W_aff ≅ Ω`.
    pub fn kappa(&self) -> i64 {
        self.group.kappa(self.nu.as_slice())
    }

    /// Canonical text form `t[ν]*w[one-line]`.
    pub fn to_text(&self) -> String {
        self.to_string()
    }

    pub fn parse(group: Group, s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("malformed element `{s}`"));
        let body = s.trim().strip_prefix("t[").ok_or_else(bad)?;
        let (nu, rest) = body.split_once("]*w[").ok_or_else(bad)?;
        let w = rest.strip_suffix(']').ok_or_else(bad)?;
        let nu = parse_list::<i64>(nu).ok_or_else(bad)?;
        let w = parse_list::<usize>(w).ok_or_else(bad)?;
        AffineElt::new(group, nu, Perm::from_one_line(&w)?)
    }
}

fn parse_list<T: FromStr>(s: &str) -> Option<Vec<T>> {
    if s.trim().is_empty() {
        return Some(Vec::new());
    }
    s.split(',').map(|x| x.trim().parse().ok()).collect()
}

impl fmt::Display for AffineElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: Vec<String>| v.join(",");
        write!(
            f,
            "t[{}]*w[{}]",
            join(self.nu.as_slice().iter().map(ToString::to_string).collect()),
            join(self.wbar.one_line().iter().map(ToString::to_string).collect())
        )
    }
}

impl std::ops::Mul for &AffineElt {
    type Output = AffineElt;

    fn mul(self, rhs: &AffineElt) -> AffineElt {
        assert_eq!(self.group, rhs.group, "group mismatch in product");
        self.mul_unchecked(rhs)
    }
}

impl GroupDatum {
    fn check(&self, x: &AffineElt) -> Result<()> {
        if x.group != self.group {
            return Err(Error::GroupMismatch {
                left: self.group,
                right: x.group,
            });
        }
        Ok(())
    }

    /// Affine simple reflections `s_0, ..., s_l`.
    pub fn simple_reflections(&self) -> &[AffineElt] {
        &self.s_aff
    }

    /// The length-zero element in the same `W_aff`-coset as `x`.
    pub fn omega_of(&self, x: &AffineElt) -> AffineElt {
        self.tau1.pow(-x.kappa())
    }

    /// `τ_μ`: the length-zero element congruent to `t_μ` modulo `W_aff`.
    pub fn tau_element(&self, mu: &Coweight) -> Result<AffineElt> {
        self.group.check_vector(mu.as_slice())?;
        Ok(self.tau1.pow(-self.group.kappa(mu.as_slice())))
    }

    /// Indices of simple reflections `s` with `ℓ(s x) < ℓ(x)`.
    pub fn left_descents(&self, x: &AffineElt) -> Vec<usize> {
        let l = x.length();
        (0..self.s_aff.len())
            .filter(|&k| self.s_aff[k].mul_unchecked(x).length() < l)
            .collect()
    }

    /// Indices of simple reflections `s` with `ℓ(x s) < ℓ(x)`.
    pub fn right_descents(&self, x: &AffineElt) -> Vec<usize> {
        let l = x.length();
        (0..self.s_aff.len())
            .filter(|&k| x.mul_unchecked(&self.s_aff[k]).length() < l)
            .collect()
    }

    /// Writes `x = s_{i_1} ⋯ s_{i_k} ω` with a reduced word and `ω ∈ Ω`.
    pub fn omega_decompose(&self, x: &AffineElt) -> Result<(Vec<usize>, AffineElt)> {
        self.check(x)?;
        let mut word = Vec::with_capacity(x.length());
        let mut cur = x.clone();
        let mut l = cur.length();
        while l > 0 {
            let (k, next) = self
                .s_aff
                .iter()
                .enumerate()
                .map(|(k, s)| (k, s.mul_unchecked(&cur)))
                .find(|(_, y)| y.length() < l)
                .ok_or_else(|| Error::Normalization(format!("no descent for {cur}")))?;
            word.push(k);
            cur = next;
            l -= 1;
        }
        Ok((word, cur))
    }

    /// Product `s_{i_1} ⋯ s_{i_k} ω`.
    pub fn from_word(&self, word: &[usize], omega: &AffineElt) -> AffineElt {
        word.iter()
            .rev()
            .fold(omega.clone(), |acc, &k| self.s_aff[k].mul_unchecked(&acc))
    }

    pub fn multiply(&self, x: &AffineElt, y: &AffineElt) -> Result<AffineElt> {
        self.check(x)?;
        x.multiply(y)
    }

    pub fn length(&self, x: &AffineElt) -> usize {
        x.length()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::build_group_datum;
    use proptest::prelude::*;

    fn elt(g: Group, nu: Vec<i64>, w: &[usize]) -> AffineElt {
        AffineElt::new(g, nu, Perm::from_one_line(w).unwrap()).unwrap()
    }

    /// Oracle: count affine hyperplanes `α = k` strictly between the
    /// barycenter `b` of the base alcove and `x(b)`.
    fn hyperplane_count(d: &GroupDatum, x: &AffineElt) -> usize {
        let b = d.alcove_barycenter();
        let xb = x.act(&b);
        d.positive_roots
            .iter()
            .map(|r| {
                let a = (b[r.i] - b[r.j]).floor().to_integer();
                let c = (xb[r.i] - xb[r.j]).floor().to_integer();
                (a - c).unsigned_abs() as usize
            })
            .sum()
    }

    #[test]
    fn length_examples() {
        let g = Group::gl(3);
        assert_eq!(elt(g, vec![1, 0, 0], &[1, 2, 3]).length(), 2);
        let d = build_group_datum(Family::Gl, 3).unwrap();
        assert_eq!(d.tau1.length(), 0);
        assert_eq!(AffineElt::identity(g).length(), 0);
        for s in &d.s_aff {
            assert_eq!(s.length(), 1);
            assert!(s.mul_unchecked(s).is_identity());
        }
    }

    #[test]
    fn gl_mu_length() {
        for n in 2..=5 {
            for dd in 0..=n {
                let g = Group::gl(n);
                let mut nu = vec![0; n];
                for x in nu.iter_mut().skip(n - dd) {
                    *x = -1;
                }
                let t = AffineElt::from_parts(g, Coweight(nu), Perm::identity(n));
                assert_eq!(t.length(), dd * (n - dd));
            }
        }
    }

    #[test]
    fn tau_forms() {
        for n in 2..=5 {
            let d = build_group_datum(Family::Gl, n).unwrap();
            for dd in 0..=n {
                let mut mu = vec![0; n];
                for x in mu.iter_mut().skip(n - dd) {
                    *x = -1;
                }
                let tau = d.tau_element(&Coweight(mu.clone())).unwrap();
                let mut nu = vec![0; n];
                for x in nu.iter_mut().take(dd) {
                    *x = -1;
                }
                let expect = AffineElt::from_parts(d.group, Coweight(nu), Perm::cycle(n).pow(dd as i64));
                assert_eq!(tau, expect);
                assert_eq!(tau.length(), 0);
                let t = d.translation(&Coweight(mu)).unwrap();
                assert_eq!(t.mul_unchecked(&tau.inverse()).kappa(), 0);
            }
        }
        for n in 1..=3 {
            let d = build_group_datum(Family::Gsp, n).unwrap();
            let mut mu = vec![0; 2 * n];
            let mut nu = vec![0; 2 * n];
            for k in 0..n {
                mu[n + k] = -1;
                nu[k] = -1;
            }
            let tau = d.tau_element(&Coweight(mu)).unwrap();
            let expect = AffineElt::from_parts(d.group, Coweight(nu), Perm::cycle(2 * n).pow(n as i64));
            assert_eq!(tau, expect);
            assert_eq!(tau.length(), 0);
        }
        let d = build_group_datum(Family::Gl, 3).unwrap();
        assert!(d.tau_element(&Coweight::zero(d.group)).unwrap().is_identity());
    }

    #[test]
    fn omega_elements_stabilize_alcove() {
        for (f, n) in [(Family::Gl, 3), (Family::Gl, 4), (Family::Gsp, 2), (Family::Gsp, 3)] {
            let d = build_group_datum(f, n).unwrap();
            for k in -3..=3 {
                let w = d.tau1.pow(k);
                assert!(d.in_base_alcove(&w.act(&d.alcove_barycenter())));
            }
        }
    }

    #[test]
    fn omega_decompose_examples() {
        let d = build_group_datum(Family::Gl, 2).unwrap();
        let (w, om) = d.omega_decompose(&d.tau1).unwrap();
        assert!(w.is_empty());
        assert_eq!(om, d.tau1);
        let t = d.translation(&Coweight(vec![0, -1])).unwrap();
        let (w, om) = d.omega_decompose(&t).unwrap();
        assert_eq!(w.len(), 1);
        assert_eq!(om, d.tau_element(&Coweight(vec![0, -1])).unwrap());
    }

    #[test]
    fn s0_is_affine_reflection_of_highest_root() {
        for (f, n) in [(Family::Gl, 3), (Family::Gsp, 2)] {
            let d = build_group_datum(f, n).unwrap();
            let theta = &d.positive_roots[d.highest_root];
            let s0 = &d.s_aff[0];
            assert_eq!(s0.nu().as_slice(), theta.coroot.iter().map(|x| -x).collect::<Vec<_>>());
        }
    }

    #[test]
    fn text_and_json_roundtrip() {
        let g = Group::gsp(2);
        let x = elt(g, vec![0, -1, 0, -1], &[2, 1, 4, 3]);
        assert_eq!(x.to_text(), "t[0,-1,0,-1]*w[2,1,4,3]");
        assert_eq!(AffineElt::parse(g, &x.to_text()).unwrap(), x);
        let j = serde_json::to_string(&x).unwrap();
        assert_eq!(serde_json::from_str::<AffineElt>(&j).unwrap(), x);
        assert!(AffineElt::parse(g, "t[0,0]*w[1,2]").is_err());
        assert!(AffineElt::new(g, vec![0, 0, 0, 0], Perm::from_one_line(&[2, 1, 3, 4]).unwrap()).is_err());
    }

    #[test]
    fn group_mismatch() {
        let a = AffineElt::identity(Group::gl(2));
        let b = AffineElt::identity(Group::gl(3));
        assert!(a.multiply(&b).is_err());
    }

    fn arb_elt(f: Family, n: usize) -> impl Strategy<Value = AffineElt> {
        let d = build_group_datum(f, n).unwrap();
        let k = d.s_aff.len();
        (proptest::collection::vec(0..k, 0..12), -3i64..=3).prop_map(move |(w, o)| {
            d.from_word(&w, &d.tau1.pow(o))
        })
    }

    fn arb_any() -> impl Strategy<Value = AffineElt> {
        prop_oneof![
            arb_elt(Family::Gl, 2),
            arb_elt(Family::Gl, 3),
            arb_elt(Family::Gl, 4),
            arb_elt(Family::Gsp, 1),
            arb_elt(Family::Gsp, 2),
            arb_elt(Family::Gsp, 3),
        ]
    }

    proptest! {
        #[test]
        fn length_matches_hyperplane_oracle(x in arb_any()) {
            let d = build_group_datum(x.group().family, x.group().n).unwrap();
            prop_assert_eq!(x.length(), hyperplane_count(&d, &x));
        }

        #[test]
        fn length_inverse_invariant(x in arb_any()) {
            prop_assert_eq!(x.length(), x.inverse().length());
        }

        #[test]
        fn length_changes_by_one(x in arb_any()) {
            let d = build_group_datum(x.group().family, x.group().n).unwrap();
            for s in &d.s_aff {
                let l = x.mul_unchecked(s).length() as i64;
                prop_assert_eq!((l - x.length() as i64).abs(), 1);
            }
        }

        #[test]
        fn omega_invariance(x in arb_any(), k in -2i64..=2) {
            let d = build_group_datum(x.group().family, x.group().n).unwrap();
            let w = d.tau1.pow(k);
            prop_assert_eq!(w.mul_unchecked(&x).length(), x.length());
            prop_assert_eq!(x.mul_unchecked(&w).length(), x.length());
        }

        #[test]
        fn decompose_roundtrip(x in arb_any()) {
            let d = build_group_datum(x.group().family, x.group().n).unwrap();
            let (word, om) = d.omega_decompose(&x).unwrap();
            prop_assert_eq!(word.len(), x.length());
            prop_assert_eq!(om.length(), 0);
            prop_assert_eq!(d.from_word(&word, &om), x);
        }

        #[test]
        fn group_laws(x in arb_elt(Family::Gl, 3), y in arb_elt(Family::Gl, 3), z in arb_elt(Family::Gl, 3)) {
            prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
            prop_assert_eq!((&x * &y).inverse(), &y.inverse() * &x.inverse());
            prop_assert!((&x * &x.inverse()).is_identity());
        }

        #[test]
        fn action_is_homomorphism(x in arb_any(), y0 in -2i64..=2) {
            let d = build_group_datum(x.group().family, x.group().n).unwrap();
            let y = d.tau1.pow(y0);
            let b = d.alcove_barycenter();
            prop_assert_eq!(x.mul_unchecked(&y).act(&b), x.act(&y.act(&b)));
        }

        #[test]
        fn translations_commute(a in proptest::collection::vec(-3i64..=3, 3), b in proptest::collection::vec(-3i64..=3, 3)) {
            let g = Group::gl(3);
            let ta = AffineElt::from_parts(g, Coweight(a.clone()), Perm::identity(3));
            let tb = AffineElt::from_parts(g, Coweight(b.clone()), Perm::identity(3));
            let sum: Vec<i64> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
            prop_assert_eq!(&ta * &tb, AffineElt::from_parts(g, Coweight(sum), Perm::identity(3)));
            let expect: usize = g.positive_root_pairs().iter().map(|&(i, j)| (a[i] - a[j]).unsigned_abs() as usize).sum();
            prop_assert_eq!(ta.length(), expect);
        }
    }
}
