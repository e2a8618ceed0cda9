//! Subspaces of `F_q^N` in reduced row echelon form.

use super::field::Field;

/// Subspace of `F_q^N` stored by its reduced row echelon basis, which makes
/// equality and hashing canonical.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    ambient: usize,
    rows: Vec<Vec<u8>>,
}

/// Reduces `rows` to reduced row echelon form, dropping zero rows.
pub fn rref(f: &Field, mut rows: Vec<Vec<u8>>, ncols: usize) -> Vec<Vec<u8>> {
    let mut r = 0;
    for c in 0..ncols {
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
                let factor = rows[i][c];
                for k in 0..ncols {
                    let sub = f.mul(factor, rows[r][k]);
                    rows[i][k] = f.sub(rows[i][k], sub);
                }
            }
        }
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    rows
}

impl Subspace {
    pub fn span(f: &Field, ambient: usize, vectors: Vec<Vec<u8>>) -> Self {
        debug_assert!(vectors.iter().all(|v| v.len() == ambient));
        Subspace {
            ambient,
            rows: rref(f, vectors, ambient),
        }
    }

    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, rows: Vec::new() }
    }

    /// Span of the standard basis vectors indexed by `coords`.
    pub fn coordinate(f: &Field, ambient: usize, coords: impl IntoIterator<Item = usize>) -> Self {
        let vecs = coords
            .into_iter()
            .map(|k| {
                let mut v = vec![0; ambient];
                v[k] = 1;
                v
            })
            .collect();
        Self::span(f, ambient, vecs)
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn basis(&self) -> &[Vec<u8>] {
        &self.rows
    }

    pub fn sum(&self, f: &Field, other: &Subspace) -> Subspace {
        let mut v = self.rows.clone();
        v.extend(other.rows.iter().cloned());
        Subspace::span(f, self.ambient, v)
    }

    pub fn contains(&self, f: &Field, other: &Subspace) -> bool {
        other.dim() <= self.dim() && self.sum(f, other).dim() == self.dim()
    }

    pub fn intersection_dim(&self, f: &Field, other: &Subspace) -> usize {
        self.dim() + other.dim() - self.sum(f, other).dim()
    }

    /// Image under the map that zeroes coordinate `k`.
    pub fn kill_coordinate(&self, f: &Field, k: usize) -> Subspace {
        let v = self
            .rows
            .iter()
            .map(|r| {
                let mut r = r.clone();
                r[k] = 0;
                r
            })
            .collect();
        Subspace::span(f, self.ambient, v)
    }

    /// `{y : b(u, y) = 0 for all u}` for the bilinear form with Gram matrix
    /// `gram`.
    pub fn annihilator(&self, f: &Field, gram: &[Vec<u8>]) -> Subspace {
        let n = self.ambient;
        // rows of U·G; the annihilator is their null space
        let mut m: Vec<Vec<u8>> = self
            .rows
            .iter()
            .map(|u| {
                (0..n)
                    .map(|j| (0..n).fold(0, |acc, i| f.add(acc, f.mul(u[i], gram[i][j]))))
                    .collect()
            })
            .collect();
        m = rref(f, m, n);
        let pivots: Vec<usize> = m.iter().map(|r| r.iter().position(|&x| x != 0).expect("nonzero row")).collect();
        let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
        let basis = free
            .iter()
            .map(|&fc| {
                let mut v = vec![0u8; n];
                v[fc] = 1;
                for (r, &pc) in m.iter().zip(&pivots) {
                    v[pc] = f.neg(r[fc]);
                }
                v
            })
            .collect();
        Subspace::span(f, n, basis)
    }

    /// Whether `b(u, u') = 0` on all pairs of basis vectors.
    pub fn is_isotropic(&self, f: &Field, gram: &[Vec<u8>]) -> bool {
        let n = self.ambient;
        self.rows.iter().all(|u| {
            self.rows.iter().all(|w| {
                let mut acc = 0;
                for i in 0..n {
                    for j in 0..n {
                        acc = f.add(acc, f.mul(u[i], f.mul(gram[i][j], w[j])));
                    }
                }
                acc == 0
            })
        })
    }

    /// Schubert cell of the subspace relative to the flag
    /// `F_j = span(e_{order[0]}, ..., e_{order[j-1]})`: the coordinates
    /// `order[j-1]` at which `dim(U ∩ F_j)` jumps.
    pub fn jump_set(&self, f: &Field, order: &[usize]) -> Vec<usize> {
        let mut out = Vec::new();
        let mut prev = 0;
        for j in 1..=order.len() {
            let flag = Subspace::coordinate(f, self.ambient, order[..j].iter().copied());
            let d = self.intersection_dim(f, &flag);
            if d > prev {
                out.push(order[j - 1]);
                prev = d;
            }
        }
        out.sort_unstable();
        out
    }
}

/// All `k`-dimensional subspaces of `F_q^n`.
pub fn all_subspaces(f: &Field, n: usize, k: usize) -> Vec<Subspace> {
    let mut out = Vec::new();
    for pivots in combinations(n, k) {
        // free entries: row r, column c > pivots[r], c not a pivot
        let slots: Vec<(usize, usize)> = (0..k)
            .flat_map(|r| {
                let pv = &pivots;
                ((pv[r] + 1)..n).filter(move |c| !pv.contains(c)).map(move |c| (r, c))
            })
            .collect();
        let q = f.size();
        let total = q.pow(slots.len() as u32);
        for code in 0..total {
            let mut rows = vec![vec![0u8; n]; k];
            for (r, &p) in pivots.iter().enumerate() {
                rows[r][p] = 1;
            }
            let mut c = code;
            for &(r, col) in &slots {
                rows[r][col] = (c % q) as u8;
                c /= q;
            }
            out.push(Subspace { ambient: n, rows });
        }
    }
    out
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gaussian_binomial(n: u32, k: u32, q: u64) -> u64 {
        let mut num = 1u64;
        let mut den = 1u64;
        for i in 0..k {
            num *= q.pow(n - i) - 1;
            den *= q.pow(i + 1) - 1;
        }
        num / den
    }

    #[test]
    fn grassmannian_sizes() {
        for q in [2usize, 3, 4] {
            let f = Field::new(q).unwrap();
            for n in 1..=4 {
                for k in 0..=n {
                    let all = all_subspaces(&f, n, k);
                    assert_eq!(all.len() as u64, gaussian_binomial(n as u32, k as u32, q as u64));
                    // canonical: re-reducing is a no-op
                    for s in &all {
                        assert_eq!(&Subspace::span(&f, n, s.basis().to_vec()), s);
                    }
                }
            }
        }
    }

    #[test]
    fn annihilator_and_isotropy() {
        let f = Field::new(3).unwrap();
        let neg1 = f.neg(1);
        let gram = vec![
            vec![0, 0, 0, 1],
            vec![0, 0, 1, 0],
            vec![0, neg1, 0, 0],
            vec![neg1, 0, 0, 0],
        ];
        let lag: Vec<_> = all_subspaces(&f, 4, 2)
            .into_iter()
            .filter(|u| u.is_isotropic(&f, &gram))
            .collect();
        // Lagrangian planes in F_q^4: (q+1)(q^2+1)
        assert_eq!(lag.len(), 4 * 10);
        for u in &lag {
            assert_eq!(&u.annihilator(&f, &gram), u);
        }
        let line = Subspace::coordinate(&f, 4, [0]);
        assert_eq!(line.annihilator(&f, &gram).dim(), 3);
    }

    #[test]
    fn jumps() {
        let f = Field::new(2).unwrap();
        let u = Subspace::span(&f, 3, vec![vec![1, 1, 0]]);
        assert_eq!(u.jump_set(&f, &[0, 1, 2]), vec![1]);
        assert_eq!(u.jump_set(&f, &[1, 2, 0]), vec![0]);
        assert!(u.kill_coordinate(&f, 1).contains(&f, &Subspace::coordinate(&f, 3, [0])));
    }
}
