use std::collections::BTreeSet;

use parahoric::{build_group_datum, AffineElt, Family, Group};

fn ball(f: Family, n: usize, radius: usize, omega: &AffineElt) -> BTreeSet<AffineElt> {
    let d = build_group_datum(f, n).unwrap();
    let mut all = BTreeSet::from([omega.clone()]);
    let mut frontier = vec![omega.clone()];
    for _ in 0..radius {
        let mut next = Vec::new();
        for x in &frontier {
            for s in d.simple_reflections() {
                let y = s.mul_unchecked(x);
                if y.length() > x.length() && all.insert(y.clone()) {
                    next.push(y);
                }
            }
        }
        frontier = next;
    }
    all
}

fn to_gl(x: &AffineElt) -> AffineElt {
    let g = Group::gl(x.group().dim());
    AffineElt::new(g, x.nu().as_slice().to_vec(), x.wbar().clone()).unwrap()
}

/// The Bruhat order of the symplectic affine Weyl group agrees with the
/// order induced from `GL_2n` through the permutation model.
#[test]
fn gsp_bruhat_order_is_induced_from_gl() {
    let sp = build_group_datum(Family::Gsp, 2).unwrap();
    let gl = build_group_datum(Family::Gl, 4).unwrap();
    let tau = sp.tau_element(&sp.coweight(vec![0, 0, -1, -1]).unwrap()).unwrap();
    let mut pairs = 0;
    for omega in [sp.identity(), tau] {
        let elts: Vec<_> = ball(Family::Gsp, 2, 8, &omega).into_iter().collect();
        for x in &elts {
            for y in &elts {
                let native = sp.bruhat_leq(x, y).unwrap();
                let induced = gl.bruhat_leq(&to_gl(x), &to_gl(y)).unwrap();
                assert_eq!(native, induced, "{x} ≤ {y}");
                pairs += 1;
            }
        }
    }
    assert!(pairs > 10_000, "{pairs}");
}

#[test]
fn gsp_length_differs_from_gl_length() {
    let sp = build_group_datum(Family::Gsp, 2).unwrap();
    // s_1 = (12)(34) is simple for GSp_4 but has length 2 in GL_4
    let s1 = &sp.simple_reflections()[1];
    assert_eq!(s1.length(), 1);
    assert_eq!(to_gl(s1).length(), 2);
}
