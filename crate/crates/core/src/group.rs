//! Root data for `GL_n` and `GSp_2n`, the finite Weyl group as permutations,
//! coweights, and the base alcove.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::affine::AffineElt;
use crate::error::{Error, Result};
use crate::scalar::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Gl,
    Gsp,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Gl => "GL",
            Family::Gsp => "GSp",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "gl" => Ok(Family::Gl),
            "gsp" => Ok(Family::Gsp),
            other => Err(Error::Parse(format!("unknown group family `{other}`"))),
        }
    }
}

/// Group tag: family plus rank parameter. For `GSp` the rank parameter is
/// the half-rank, so vectors have length `2n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Group {
    pub family: Family,
    pub n: usize,
}

impl Group {
    pub fn gl(n: usize) -> Self {
        Group { family: Family::Gl, n }
    }

    pub fn gsp(n: usize) -> Self {
        Group { family: Family::Gsp, n }
    }

    /// Ambient dimension of the standard representation.
    pub fn dim(self) -> usize {
        match self.family {
            Family::Gl => self.n,
            Family::Gsp => 2 * self.n,
        }
    }

    pub fn validate(self) -> Result<Self> {
        let min = match self.family {
            Family::Gl => 2,
            Family::Gsp => 1,
        };
        if self.n < min {
            return Err(Error::RankTooSmall {
                family: self.family.name(),
                n: self.n,
                min,
            });
        }
        Ok(self)
    }

    /// Positive roots as index pairs `(i, j)` standing for `e_i - e_j`.
    pub fn positive_root_pairs(self) -> Vec<(usize, usize)> {
        let m = self.dim();
        let mut out = Vec::new();
        for i in 0..m {
            for j in (i + 1)..m {
                let keep = match self.family {
                    Family::Gl => true,
                    Family::Gsp => i < self.n && j <= m - 1 - i,
                };
                if keep {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Checks that `v` is a coweight of this group.
    pub fn coweight(self, v: Vec<i64>) -> Result<Coweight> {
        self.check_vector(&v)?;
        Ok(Coweight(v))
    }

    pub(crate) fn check_vector(self, v: &[i64]) -> Result<()> {
        if v.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: v.len(),
            });
        }
        if self.family == Family::Gsp {
            let m = v.len();
            let c = v[0] + v[m - 1];
            if (0..m).any(|i| v[i] + v[m - 1 - i] != c) {
                return Err(Error::InvalidCoweight {
                    group: self,
                    reason: "a_i + b_i is not constant".into(),
                });
            }
        }
        Ok(())
    }

    /// Kottwitz invariant of a coweight: coordinate sum for `GL`, similitude
    /// coordinate `c` for `GSp`.
    pub fn kappa(self, v: &[i64]) -> i64 {
        match self.family {
            Family::Gl => v.iter().sum(),
            Family::Gsp => v[0] + v[v.len() - 1],
        }
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            Family::Gl => write!(f, "GL_{}", self.n),
            Family::Gsp => write!(f, "GSp_{}", 2 * self.n),
        }
    }
}

/// Integer vector in the cocharacter lattice.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Coweight(pub(crate) Vec<i64>);

impl Coweight {
    pub fn zero(group: Group) -> Self {
        Coweight(vec![0; group.dim()])
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<i64> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn neg(&self) -> Self {
        Coweight(self.0.iter().map(|x| -x).collect())
    }

    pub fn add(&self, other: &Coweight) -> Self {
        Coweight(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Coweight) -> Self {
        Coweight(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, k: i64) -> Self {
        Coweight(self.0.iter().map(|a| a * k).collect())
    }

    /// Dominant representative of the Weyl orbit (weakly decreasing).
    pub fn dominant(&self) -> Self {
        let mut v = self.0.clone();
        v.sort_unstable_by(|a, b| b.cmp(a));
        Coweight(v)
    }

    pub fn is_dominant(&self) -> bool {
        self.0.windows(2).all(|w| w[0] >= w[1])
    }

    /// Minuscule: all pairings with roots lie in `{-1, 0, 1}`.
    pub fn is_minuscule(&self, group: Group) -> bool {
        group
            .positive_root_pairs()
            .iter()
            .all(|&(i, j)| (self.0[i] - self.0[j]).abs() <= 1)
    }

    /// `-w_0 λ`, the dominant coweight dual to `λ`.
    pub fn dual(&self) -> Self {
        self.neg().dominant()
    }
}

impl fmt::Display for Coweight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, x) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// Permutation of `0..m` in one-line notation: `w.0[i] = w(i)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(pub(crate) Vec<u8>);

impl Perm {
    pub fn identity(m: usize) -> Self {
        Perm((0..m as u8).collect())
    }

    /// Builds a permutation from 0-based images, checking bijectivity.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let m = images.len();
        let mut seen = vec![false; m];
        for &x in &images {
            if x >= m || seen[x] {
                return Err(Error::Parse(format!("{images:?} is not a permutation")));
            }
            seen[x] = true;
        }
        Ok(Perm(images.into_iter().map(|x| x as u8).collect()))
    }

    /// Builds a permutation from 1-based one-line notation.
    pub fn from_one_line(images: &[usize]) -> Result<Self> {
        if images.contains(&0) {
            return Err(Error::Parse("one-line notation is 1-based".into()));
        }
        Self::from_images(images.iter().map(|x| x - 1).collect())
    }

    pub fn one_line(&self) -> Vec<usize> {
        self.0.iter().map(|&x| x as usize + 1).collect()
    }

    pub fn transposition(m: usize, a: usize, b: usize) -> Self {
        let mut p = Self::identity(m);
        p.0.swap(a, b);
        p
    }

    /// The cycle `i ↦ i+1 (mod m)`.
    pub fn cycle(m: usize) -> Self {
        Perm((0..m).map(|i| ((i + 1) % m) as u8).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn image(&self, i: usize) -> usize {
        self.0[i] as usize
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    /// `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Perm) -> Perm {
        Perm(other.0.iter().map(|&i| self.0[i as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut out = vec![0u8; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            out[x as usize] = i as u8;
        }
        Perm(out)
    }

    pub fn pow(&self, k: i64) -> Perm {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut out = Perm::identity(self.len());
        for _ in 0..k.unsigned_abs() {
            out = out.compose(&base);
        }
        out
    }

    /// Acts on a vector by moving coordinate `i` to position `w(i)`.
    pub fn act<T: Clone>(&self, v: &[T]) -> Vec<T> {
        let mut out = v.to_vec();
        for (i, x) in v.iter().enumerate() {
            out[self.0[i] as usize] = x.clone();
        }
        out
    }

    pub fn fixed_points(&self) -> usize {
        self.0.iter().enumerate().filter(|&(i, &x)| i == x as usize).count()
    }

    /// Order of the permutation (lcm of its cycle lengths).
    pub fn order(&self) -> u64 {
        let m = self.len();
        let mut seen = vec![false; m];
        let mut ord = 1u64;
        for s in 0..m {
            if seen[s] {
                continue;
            }
            let mut len = 0u64;
            let mut i = s;
            while !seen[i] {
                seen[i] = true;
                i = self.0[i] as usize;
                len += 1;
            }
            ord = num_integer::lcm(ord, len);
        }
        ord
    }

    /// Commutes with the involution `i ↦ m-1-i`.
    pub fn is_symplectic(&self) -> bool {
        let m = self.len();
        (0..m).all(|i| self.0[m - 1 - i] as usize == m - 1 - self.0[i] as usize)
    }
}

/// Positive root `e_i - e_j` with its coroot.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Root {
    pub i: usize,
    pub j: usize,
    pub vector: Vec<i64>,
    pub coroot: Vec<i64>,
}

/// Root datum together with the affine Weyl group generators.
pub struct GroupDatum {
    pub group: Group,
    pub positive_roots: Vec<Root>,
    /// Indices into `positive_roots`.
    pub simple_roots: Vec<usize>,
    pub highest_root: usize,
    pub rho: Vec<Rational>,
    pub finite_generators: Vec<Perm>,
    pub finite_weyl: Vec<Perm>,
    /// `s_0, s_1, ..., s_l`.
    pub s_aff: Vec<AffineElt>,
    /// Generator of the length-zero subgroup.
    pub tau1: AffineElt,
    pub(crate) leq_cache: RwLock<HashMap<(AffineElt, AffineElt), bool>>,
    pub(crate) ideal_cache: RwLock<HashMap<AffineElt, Arc<BTreeSet<AffineElt>>>>,
}

impl fmt::Debug for GroupDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GroupDatum")
            .field("group", &self.group)
            .field("positive_roots", &self.positive_roots.len())
            .finish()
    }
}

fn unit_diff(m: usize, i: usize, j: usize) -> Vec<i64> {
    let mut v = vec![0; m];
    v[i] += 1;
    v[j] -= 1;
    v
}

/// Builds (or fetches from a process-wide cache) the datum for a group.
pub fn build_group_datum(family: Family, n: usize) -> Result<Arc<GroupDatum>> {
    static REGISTRY: OnceLock<RwLock<HashMap<Group, Arc<GroupDatum>>>> = OnceLock::new();
    let group = Group { family, n }.validate()?;
    let reg = REGISTRY.get_or_init(Default::default);
    if let Some(d) = reg.read().expect("registry poisoned").get(&group) {
        return Ok(d.clone());
    }
    let d = Arc::new(GroupDatum::new(group));
    Ok(reg
        .write()
        .expect("registry poisoned")
        .entry(group)
        .or_insert(d)
        .clone())
}

impl GroupDatum {
    fn new(group: Group) -> Self {
        let m = group.dim();
        let n = group.n;
        let positive_roots: Vec<Root> = group
            .positive_root_pairs()
            .into_iter()
            .map(|(i, j)| {
                let vector = unit_diff(m, i, j);
                let coroot = match group.family {
                    Family::Gl => vector.clone(),
                    Family::Gsp if j == m - 1 - i => vector.clone(),
                    Family::Gsp => {
                        let mut c = vector.clone();
                        c[m - 1 - j] += 1;
                        c[m - 1 - i] -= 1;
                        c
                    }
                };
                Root { i, j, vector, coroot }
            })
            .collect();
        let find = |i: usize, j: usize| {
            positive_roots
                .iter()
                .position(|r| r.i == i && r.j == j)
                .expect("root present")
        };
        let simple_count = match group.family {
            Family::Gl => n - 1,
            Family::Gsp => n,
        };
        let simple_roots: Vec<usize> = (0..simple_count).map(|i| find(i, i + 1)).collect();
        let highest_root = find(0, m - 1);

        let mut rho = vec![Rational::zero(); m];
        for r in &positive_roots {
            for (k, x) in r.vector.iter().enumerate() {
                rho[k] += Rational::new(*x, 2);
            }
        }

        let finite_generators: Vec<Perm> = (0..simple_count)
            .map(|i| match group.family {
                Family::Gl => Perm::transposition(m, i, i + 1),
                Family::Gsp if i + 1 == n => Perm::transposition(m, n - 1, n),
                Family::Gsp => Perm::transposition(m, i, i + 1)
                    .compose(&Perm::transposition(m, m - 2 - i, m - 1 - i)),
            })
            .collect();
        let finite_weyl = close_under(&finite_generators, m);

        let theta = &positive_roots[highest_root];
        let s_theta = Perm::transposition(m, 0, m - 1);
        let s0 = AffineElt::from_parts(group, Coweight(theta.coroot.iter().map(|x| -x).collect()), s_theta);
        let mut s_aff = vec![s0];
        s_aff.extend(
            finite_generators
                .iter()
                .map(|p| AffineElt::from_parts(group, Coweight::zero(group), p.clone())),
        );

        let tau1 = match group.family {
            Family::Gl => {
                let mut nu = vec![0; m];
                nu[0] = -1;
                AffineElt::from_parts(group, Coweight(nu), Perm::cycle(m))
            }
            Family::Gsp => {
                let mut nu = vec![0; m];
                for x in nu.iter_mut().take(n) {
                    *x = -1;
                }
                AffineElt::from_parts(group, Coweight(nu), Perm::cycle(m).pow(n as i64))
            }
        };

        GroupDatum {
            group,
            positive_roots,
            simple_roots,
            highest_root,
            rho,
            finite_generators,
            finite_weyl,
            s_aff,
            tau1,
            leq_cache: RwLock::new(HashMap::new()),
            ideal_cache: RwLock::new(HashMap::new()),
        }
    }

    pub fn dim(&self) -> usize {
        self.group.dim()
    }

    /// Order of the finite Weyl group.
    pub fn weyl_order(&self) -> usize {
        self.finite_weyl.len()
    }

    pub fn coweight(&self, v: Vec<i64>) -> Result<Coweight> {
        self.group.coweight(v)
    }

    pub fn identity(&self) -> AffineElt {
        AffineElt::identity(self.group)
    }

    pub fn translation(&self, nu: &Coweight) -> Result<AffineElt> {
        self.group.check_vector(nu.as_slice())?;
        Ok(AffineElt::from_parts(self.group, nu.clone(), Perm::identity(self.dim())))
    }

    /// `⟨2ρ, λ⟩` for dominant `λ`, equal to `ℓ(t_λ)`.
    pub fn two_rho_pairing(&self, lambda: &Coweight) -> Rational {
        self.rho
            .iter()
            .zip(lambda.as_slice())
            .map(|(r, x)| r * Rational::from_integer(2 * x))
            .sum()
    }

    /// Finite Weyl orbit of a coweight, sorted.
    pub fn weyl_orbit(&self, lambda: &Coweight) -> Result<Vec<Coweight>> {
        self.group.check_vector(lambda.as_slice())?;
        let mut seen = BTreeSet::new();
        let mut queue = VecDeque::from([lambda.clone()]);
        seen.insert(lambda.clone());
        while let Some(v) = queue.pop_front() {
            for g in &self.finite_generators {
                let w = Coweight(g.act(v.as_slice()));
                if seen.insert(w.clone()) {
                    queue.push_back(w);
                }
            }
        }
        Ok(seen.into_iter().collect())
    }

    /// Vertices of the closure of the base alcove. For `GL_n` these are taken
    /// in the slice of coordinate sum `-k` for the `k`-th vertex, which is a
    /// choice of representative modulo the central line.
    pub fn base_alcove_vertices(&self) -> Vec<Vec<Rational>> {
        let m = self.dim();
        let n = self.group.n;
        match self.group.family {
            Family::Gl => (0..n)
                .map(|k| {
                    (0..m)
                        .map(|i| Rational::from_integer(if i < k { -1 } else { 0 }))
                        .collect()
                })
                .collect(),
            Family::Gsp => (0..=n)
                .map(|k| {
                    (0..m)
                        .map(|i| {
                            if i < k {
                                Rational::new(-1, 2)
                            } else if i >= m - k {
                                Rational::new(1, 2)
                            } else {
                                Rational::zero()
                            }
                        })
                        .collect()
                })
                .collect(),
        }
    }

    /// Whether `v` lies in the open base alcove: `-1 < α(v) < 0` for every
    /// positive root.
    pub fn in_base_alcove(&self, v: &[Rational]) -> bool {
        self.positive_roots.iter().all(|r| {
            let a = v[r.i] - v[r.j];
            a > Rational::from_integer(-1) && a < Rational::zero()
        })
    }

    /// A point in the open base alcove (its barycenter).
    pub fn alcove_barycenter(&self) -> Vec<Rational> {
        let verts = self.base_alcove_vertices();
        let k = verts.len() as i64;
        let mut out = vec![Rational::zero(); self.dim()];
        for v in &verts {
            for (o, x) in out.iter_mut().zip(v) {
                *o += x / Rational::from_integer(k);
            }
        }
        out
    }
}

/// `⟨α, λ⟩` for a character vector `α`.
pub fn pairing(root: &[i64], lambda: &Coweight) -> Result<i64> {
    if root.len() != lambda.len() {
        return Err(Error::DimensionMismatch {
            expected: root.len(),
            got: lambda.len(),
        });
    }
    Ok(root.iter().zip(lambda.as_slice()).map(|(a, b)| a * b).sum())
}

fn close_under(gens: &[Perm], m: usize) -> Vec<Perm> {
    let mut seen = BTreeSet::new();
    let id = Perm::identity(m);
    seen.insert(id.clone());
    let mut queue = VecDeque::from([id]);
    while let Some(p) = queue.pop_front() {
        for g in gens {
            let q = g.compose(&p);
            if seen.insert(q.clone()) {
                queue.push_back(q);
            }
        }
    }
    seen.into_iter().collect()
}
