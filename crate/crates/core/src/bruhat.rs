//! Bruhat order on the extended affine Weyl group.
//!
//! Comparisons use the lifting property along left descents, which is the
//! subword property unrolled one letter at a time. Results and lower order
//! ideals are memoized inside the [`GroupDatum`].

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::affine::AffineElt;
use crate::error::{Error, Result};
use crate::group::GroupDatum;

impl GroupDatum {
    fn same_group(&self, x: &AffineElt, y: &AffineElt) -> Result<()> {
        for z in [x, y] {
            if z.group() != self.group {
                return Err(Error::GroupMismatch {
                    left: self.group,
                    right: z.group(),
                });
            }
        }
        Ok(())
    }

    /// `x ≤ y` in the Bruhat order. Elements in different components of
    /// `W̃ / W_aff` are incomparable.
    pub fn bruhat_leq(&self, x: &AffineElt, y: &AffineElt) -> Result<bool> {
        self.same_group(x, y)?;
        if x.kappa() != y.kappa() {
            return Ok(false);
        }
        Ok(self.leq_rec(x, y, x.length(), y.length()))
    }

    fn leq_rec(&self, x: &AffineElt, y: &AffineElt, lx: usize, ly: usize) -> bool {
        if lx > ly {
            return false;
        }
        if ly == 0 || lx == ly {
            return x == y;
        }
        if lx == 0 {
            return true;
        }
        let key = (x.clone(), y.clone());
        if let Some(&b) = self.leq_cache.read().expect("cache poisoned").get(&key) {
            return b;
        }
        let (s, sy) = self.first_left_descent(y, ly);
        let sx = s.mul_unchecked(x);
        let out = if sx.length() < lx {
            self.leq_rec(&sx, &sy, lx - 1, ly - 1)
        } else {
            self.leq_rec(x, &sy, lx, ly - 1)
        };
        self.leq_cache.write().expect("cache poisoned").insert(key, out);
        out
    }

    fn first_left_descent(&self, y: &AffineElt, ly: usize) -> (&AffineElt, AffineElt) {
        self.s_aff
            .iter()
            .map(|s| (s, s.mul_unchecked(y)))
            .find(|(_, sy)| sy.length() < ly)
            .expect("element of positive length has a left descent")
    }

    /// `{x : x ≤ y}`.
    pub fn lower_ideal(&self, y: &AffineElt) -> Result<Arc<BTreeSet<AffineElt>>> {
        if y.group() != self.group {
            return Err(Error::GroupMismatch {
                left: self.group,
                right: y.group(),
            });
        }
        Ok(self.ideal_rec(y))
    }

    fn ideal_rec(&self, y: &AffineElt) -> Arc<BTreeSet<AffineElt>> {
        if let Some(s) = self.ideal_cache.read().expect("cache poisoned").get(y) {
            return s.clone();
        }
        let ly = y.length();
        let out = if ly == 0 {
            Arc::new(BTreeSet::from([y.clone()]))
        } else {
            let (s, sy) = self.first_left_descent(y, ly);
            let below = self.ideal_rec(&sy);
            let mut set: BTreeSet<AffineElt> = (*below).clone();
            set.extend(below.iter().map(|z| s.mul_unchecked(z)));
            Arc::new(set)
        };
        self.ideal_cache
            .write()
            .expect("cache poisoned")
            .insert(y.clone(), out.clone());
        out
    }

    /// Elements covered by `y` in the Bruhat order.
    pub fn lower_covers(&self, y: &AffineElt) -> Result<Vec<AffineElt>> {
        let l = y.length();
        if l == 0 {
            return Ok(Vec::new());
        }
        Ok(self
            .lower_ideal(y)?
            .iter()
            .filter(|x| x.length() + 1 == l)
            .cloned()
            .collect())
    }
}

/// `x ≤ y` using the process-wide datum for their group.
pub fn bruhat_leq(x: &AffineElt, y: &AffineElt) -> Result<bool> {
    let g = x.group();
    crate::group::build_group_datum(g.family, g.n)?.bruhat_leq(x, y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{build_group_datum, Coweight, Family, Group};
    use proptest::prelude::*;

    /// Oracle: all products of subwords of a fixed reduced word of `y`.
    fn subword_ideal(d: &GroupDatum, y: &AffineElt) -> BTreeSet<AffineElt> {
        let (word, om) = d.omega_decompose(y).unwrap();
        let k = word.len();
        (0u32..(1 << k))
            .map(|mask| {
                let sub: Vec<usize> = (0..k).filter(|i| mask & (1 << i) != 0).map(|i| word[i]).collect();
                d.from_word(&sub, &om)
            })
            .collect()
    }

    #[test]
    fn ideal_matches_subwords_exhaustively() {
        for (f, n) in [(Family::Gl, 2), (Family::Gl, 3), (Family::Gsp, 1), (Family::Gsp, 2)] {
            let d = build_group_datum(f, n).unwrap();
            // every element of length ≤ 5 reachable from the identity
            let mut layer = vec![d.identity()];
            let mut all = BTreeSet::new();
            for _ in 0..=5 {
                let mut next = BTreeSet::new();
                for y in &layer {
                    all.insert(y.clone());
                    for s in &d.s_aff {
                        let z = y.mul_unchecked(s);
                        if z.length() > y.length() {
                            next.insert(z);
                        }
                    }
                }
                layer = next.into_iter().collect();
            }
            for y in &all {
                let oracle = subword_ideal(&d, y);
                assert_eq!(*d.lower_ideal(y).unwrap(), oracle, "{y}");
                for x in &all {
                    assert_eq!(d.bruhat_leq(x, y).unwrap(), oracle.contains(x), "{x} <= {y}");
                }
            }
        }
    }

    #[test]
    fn examples() {
        let d = build_group_datum(Family::Gl, 2).unwrap();
        let mu = Coweight(vec![0, -1]);
        let t = d.translation(&mu).unwrap();
        let tau = d.tau_element(&mu).unwrap();
        assert!(d.bruhat_leq(&t, &t).unwrap());
        assert!(d.bruhat_leq(&tau, &t).unwrap());
        assert!(!d.bruhat_leq(&t, &tau).unwrap());
        assert!(!d.bruhat_leq(&d.identity(), &t).unwrap());
        let other = AffineElt::identity(Group::gl(3));
        assert!(d.bruhat_leq(&other, &t).is_err());
    }

    #[test]
    fn covers_have_colength_one() {
        let d = build_group_datum(Family::Gsp, 2).unwrap();
        let t = d.translation(&Coweight(vec![0, 0, -1, -1])).unwrap();
        let covers = d.lower_covers(&t).unwrap();
        assert!(!covers.is_empty());
        assert!(covers.iter().all(|c| c.length() + 1 == t.length()));
    }

    fn arb(f: Family, n: usize, max: usize) -> impl Strategy<Value = AffineElt> {
        let d = build_group_datum(f, n).unwrap();
        let k = d.s_aff.len();
        proptest::collection::vec(0..k, 0..max).prop_map(move |w| d.from_word(&w, &d.identity()))
    }

    proptest! {
        #[test]
        fn partial_order_axioms(x in arb(Family::Gl, 3, 7), y in arb(Family::Gl, 3, 7), z in arb(Family::Gl, 3, 7)) {
            let d = build_group_datum(Family::Gl, 3).unwrap();
            let le = |a: &AffineElt, b: &AffineElt| d.bruhat_leq(a, b).unwrap();
            prop_assert!(le(&x, &x));
            if le(&x, &y) && le(&y, &x) { prop_assert_eq!(&x, &y); }
            if le(&x, &y) && le(&y, &z) { prop_assert!(le(&x, &z)); }
            if le(&x, &y) { prop_assert!(x.length() <= y.length()); }
        }

        #[test]
        fn leq_matches_subwords(x in arb(Family::Gsp, 2, 7), y in arb(Family::Gsp, 2, 7)) {
            let d = build_group_datum(Family::Gsp, 2).unwrap();
            prop_assert_eq!(d.bruhat_leq(&x, &y).unwrap(), subword_ideal(&d, &y).contains(&x));
        }

        #[test]
        fn inversion_is_order_automorphism(x in arb(Family::Gsp, 2, 6), y in arb(Family::Gsp, 2, 6)) {
            let d = build_group_datum(Family::Gsp, 2).unwrap();
            prop_assert_eq!(d.bruhat_leq(&x, &y).unwrap(), d.bruhat_leq(&x.inverse(), &y.inverse()).unwrap());
        }
    }

    #[test]
    fn distinct_components_incomparable() {
        let d = build_group_datum(Family::Gl, 3).unwrap();
        let x = d.identity();
        let y = d.tau1.mul_unchecked(&d.s_aff[1]);
        assert!(!d.bruhat_leq(&x, &y).unwrap());
        assert!(!d.bruhat_leq(&y, &x).unwrap());
    }
}
