//! The Lie algebra of a split simple group: Chevalley structure constants,
//! brackets, centralizers, and the p-operation.
//!
//! Basis order: cocharacter-basis elements h_1..h_l, then e_beta for the
//! positive roots in height-lex order, then e_{-beta} in the same order.
//!
//! Signs are fixed by the extraspecial-pair scheme: for each non-simple
//! positive root the special decomposition with smallest first component
//! gets the positive constant p+1, and every other constant is forced from
//! those by the standard identities. Any consistent choice gives an
//! isomorphic algebra; this one makes outputs reproducible.

use num_rational::Ratio;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::fq::{Elt, Fq};
use crate::fqmat::Mat;
use crate::roots::RootDatum;

type R64 = Ratio<i64>;

/// Signed root index: +(r+1) for positive root r, -(r+1) for its negative.
pub type SignedRoot = i32;

#[derive(Clone, Debug)]
pub struct ChevalleyAlgebra {
    pub datum: RootDatum,
    pub p: u64,
    field: Option<Fq>,
    n_pos: usize,
    /// structure constants N_{a,b} over signed root pairs; absent when a+b
    /// is not a root (a = -b is the Cartan case, handled separately)
    n_table: HashMap<(SignedRoot, SignedRoot), i64>,
    /// signed index of a+b when a+b is a root
    sum_table: HashMap<(SignedRoot, SignedRoot), SignedRoot>,
    /// coroot of each positive root over the cocharacter basis
    coroot_cochar: Vec<Vec<i64>>,
    /// pairing[k][r] = <beta_r, h_k>
    pairing: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraElement {
    pub field: Fq,
    pub coords: Vec<Elt>,
}

impl ChevalleyAlgebra {
    /// The algebra over F_p (p prime), or the integral form when p = 0.
    pub fn new(datum: RootDatum, p: u64) -> Result<Self> {
        let field = if p == 0 { None } else { Some(Fq::prime(p)?) };
        let n_pos = datum.num_positive_roots();
        let rank = datum.rank;

        let pos_coords: Vec<Vec<i64>> =
            datum.positive_roots.iter().map(|r| r.alpha_coords.clone()).collect();
        let coords_of = |sr: SignedRoot| -> Vec<i64> {
            let r = (sr.unsigned_abs() as usize) - 1;
            if sr > 0 {
                pos_coords[r].clone()
            } else {
                pos_coords[r].iter().map(|&x| -x).collect()
            }
        };

        let mut index_of: HashMap<Vec<i64>, SignedRoot> = HashMap::new();
        for r in 0..n_pos {
            index_of.insert(coords_of((r + 1) as i32), (r + 1) as i32);
            index_of.insert(coords_of(-((r + 1) as i32)), -((r + 1) as i32));
        }

        let add =
            |a: &[i64], b: &[i64]| -> Vec<i64> { a.iter().zip(b).map(|(x, y)| x + y).collect() };
        let len2 = |v: &[i64]| -> i64 {
            let mut s = 0;
            for i in 0..rank {
                for j in 0..rank {
                    s += v[i] * v[j] * datum.length_halves[i] * datum.cartan[i][j];
                }
            }
            s
        };
        // largest k with b - k a still a root
        let string_down = |a: SignedRoot, b: SignedRoot| -> i64 {
            let ac = coords_of(a);
            let mut probe = coords_of(b);
            let mut k = 0;
            loop {
                probe = probe.iter().zip(&ac).map(|(x, y)| x - y).collect();
                if probe.iter().all(|&x| x == 0) || !index_of.contains_key(&probe) {
                    break;
                }
                k += 1;
            }
            k
        };

        let mut n_table: HashMap<(SignedRoot, SignedRoot), i64> = HashMap::new();

        // positive pairs, by increasing height of the sum
        for g in 0..n_pos {
            let gamma = &datum.positive_roots[g];
            if gamma.height == 1 {
                continue;
            }
            let mut specials: Vec<(i32, i32)> = Vec::new();
            for xi in 0..g {
                let xs = (xi + 1) as i32;
                let eta_coords: Vec<i64> = gamma
                    .alpha_coords
                    .iter()
                    .zip(&datum.positive_roots[xi].alpha_coords)
                    .map(|(a, b)| a - b)
                    .collect();
                if let Some(&es) = index_of.get(&eta_coords) {
                    if es > xs {
                        specials.push((xs, es));
                    }
                }
            }
            assert!(!specials.is_empty(), "non-simple root without special pair");
            specials.sort();
            let (a, b) = specials[0];
            let n_ab = string_down(a, b) + 1;
            n_table.insert((a, b), n_ab);
            n_table.insert((b, a), -n_ab);

            let gamma_len = len2(&gamma.alpha_coords);
            for &(xi, eta) in specials.iter().skip(1) {
                // Jacobi on (xi, eta, -a, -b) solves for N_{xi,eta}
                let term =
                    |p1: SignedRoot, q1: SignedRoot, p2: SignedRoot, q2: SignedRoot| -> R64 {
                        let s1 = add(&coords_of(p1), &coords_of(q1));
                        if s1.iter().all(|&x| x == 0) || !index_of.contains_key(&s1) {
                            return R64::zero();
                        }
                        let c1 = resolve(&n_table, &index_of, &coords_of, &len2, p1, q1);
                        let c2 = resolve(&n_table, &index_of, &coords_of, &len2, p2, q2);
                        Ratio::new(c1 * c2, len2(&s1))
                    };
                let t2 = term(eta, -a, xi, -b);
                let t3 = term(-a, xi, eta, -b);
                let val = (t2 + t3) * Ratio::new(gamma_len, n_ab);
                assert!(val.is_integer(), "structure constant recursion must be integral");
                let v = val.to_integer();
                let expect = string_down(xi, eta) + 1;
                assert_eq!(v.abs(), expect, "constant magnitude must be p+1");
                n_table.insert((xi, eta), v);
                n_table.insert((eta, xi), -v);
            }
        }

        // complete the table over all signed pairs
        let mut full = n_table.clone();
        let mut sum_table = HashMap::new();
        for i in 1..=(n_pos as i32) {
            for a in [i, -i] {
                for j in 1..=(n_pos as i32) {
                    for b in [j, -j] {
                        if a == -b {
                            continue;
                        }
                        let s = add(&coords_of(a), &coords_of(b));
                        if let Some(&si) = index_of.get(&s) {
                            sum_table.insert((a, b), si);
                            full.entry((a, b)).or_insert_with(|| {
                                resolve(&n_table, &index_of, &coords_of, &len2, a, b)
                            });
                        }
                    }
                }
            }
        }

        let coroot_cochar = (0..n_pos).map(|r| datum.coroot_in_cochar_basis(r)).collect::<Vec<_>>();
        let pairing: Vec<Vec<i64>> = (0..rank)
            .map(|k| {
                (0..n_pos)
                    .map(|r| {
                        datum
                            .pairing_weight_cochar(&datum.positive_roots[r].omega_coords, k)
                            .expect("roots lie in every character lattice")
                    })
                    .collect()
            })
            .collect();

        Ok(ChevalleyAlgebra {
            datum,
            p,
            field,
            n_pos,
            n_table: full,
            sum_table,
            coroot_cochar,
            pairing,
        })
    }

    pub fn dim(&self) -> usize {
        self.datum.rank + 2 * self.n_pos
    }

    pub fn rank(&self) -> usize {
        self.datum.rank
    }

    pub fn num_positive_roots(&self) -> usize {
        self.n_pos
    }

    /// The algebra's own prime field (p > 0 forms only).
    pub fn base_field(&self) -> Fq {
        self.field.expect("integral form has no base field")
    }

    /// Basis index of e_beta for a signed root.
    pub fn root_basis_index(&self, sr: SignedRoot) -> usize {
        let r = (sr.unsigned_abs() as usize) - 1;
        if sr > 0 {
            self.datum.rank + r
        } else {
            self.datum.rank + self.n_pos + r
        }
    }

    /// The signed root of a basis index, when it is a root vector.
    pub fn basis_signed_root(&self, idx: usize) -> Option<SignedRoot> {
        if idx < self.datum.rank {
            return None;
        }
        let r = idx - self.datum.rank;
        Some(if r < self.n_pos { (r + 1) as i32 } else { -((r - self.n_pos + 1) as i32) })
    }

    /// Structure constant N_{a,b}; zero when a+b is not a root.
    pub fn structure_constant(&self, a: SignedRoot, b: SignedRoot) -> i64 {
        *self.n_table.get(&(a, b)).unwrap_or(&0)
    }

    pub fn sum_root(&self, a: SignedRoot, b: SignedRoot) -> Option<SignedRoot> {
        self.sum_table.get(&(a, b)).copied()
    }

    /// <beta_r, h_k> for the k-th cocharacter basis element.
    pub fn cartan_pairing(&self, k: usize, r: usize) -> i64 {
        self.pairing[k][r]
    }

    pub fn coroot_cochar(&self, r: usize) -> &[i64] {
        &self.coroot_cochar[r]
    }

    pub fn zero(&self, f: Fq) -> AlgebraElement {
        AlgebraElement { field: f, coords: vec![0; self.dim()] }
    }

    pub fn basis_element(&self, f: Fq, idx: usize) -> AlgebraElement {
        let mut x = self.zero(f);
        x.coords[idx] = f.one();
        x
    }

    pub fn root_vector(&self, f: Fq, sr: SignedRoot) -> AlgebraElement {
        self.basis_element(f, self.root_basis_index(sr))
    }

    pub fn cartan_element(&self, f: Fq, cochar_coords: &[i64]) -> AlgebraElement {
        let mut x = self.zero(f);
        for (k, &c) in cochar_coords.iter().enumerate() {
            x.coords[k] = f.from_i64(c);
        }
        x
    }

    fn check_field(&self, f: Fq) -> Result<()> {
        if self.p != 0 && f.characteristic() != self.p {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    /// Bracket over the common field of x and y (which may be an extension
    /// of the algebra's prime field).
    pub fn bracket(&self, x: &AlgebraElement, y: &AlgebraElement) -> Result<AlgebraElement> {
        if x.field != y.field {
            return Err(Error::FieldMismatch);
        }
        self.check_field(x.field)?;
        let f = x.field;
        let rank = self.datum.rank;
        let mut out = self.zero(f);
        // [h, e_beta] terms
        for k in 0..rank {
            let (hx, hy) = (x.coords[k], y.coords[k]);
            if hx == 0 && hy == 0 {
                continue;
            }
            for r in 0..self.n_pos {
                let c = self.pairing[k][r];
                if c == 0 {
                    continue;
                }
                let cf = f.from_i64(c);
                for (positive, off) in [(true, rank + r), (false, rank + self.n_pos + r)] {
                    let scf = if positive { cf } else { f.neg(cf) };
                    if hx != 0 && y.coords[off] != 0 {
                        let t = f.mul(f.mul(hx, y.coords[off]), scf);
                        out.coords[off] = f.add(out.coords[off], t);
                    }
                    if hy != 0 && x.coords[off] != 0 {
                        let t = f.mul(f.mul(hy, x.coords[off]), scf);
                        out.coords[off] = f.sub(out.coords[off], t);
                    }
                }
            }
        }
        // [e_a, e_b] terms
        for i in rank..self.dim() {
            let xi = x.coords[i];
            if xi == 0 {
                continue;
            }
            let a = self.basis_signed_root(i).unwrap();
            for j in rank..self.dim() {
                let yj = y.coords[j];
                if yj == 0 {
                    continue;
                }
                let b = self.basis_signed_root(j).unwrap();
                let prod = f.mul(xi, yj);
                if a == -b {
                    let r = (a.unsigned_abs() as usize) - 1;
                    for k in 0..rank {
                        let mut c = f.mul(prod, f.from_i64(self.coroot_cochar[r][k]));
                        if a < 0 {
                            c = f.neg(c);
                        }
                        out.coords[k] = f.add(out.coords[k], c);
                    }
                } else if let Some(s) = self.sum_root(a, b) {
                    let n = self.structure_constant(a, b);
                    if n != 0 {
                        let idx = self.root_basis_index(s);
                        let t = f.mul(prod, f.from_i64(n));
                        out.coords[idx] = f.add(out.coords[idx], t);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Integral-form bracket, for the mod-p compatibility checks.
    pub fn bracket_z(&self, x: &[i64], y: &[i64]) -> Vec<i64> {
        let rank = self.datum.rank;
        let mut out = vec![0i64; self.dim()];
        for k in 0..rank {
            for r in 0..self.n_pos {
                let c = self.pairing[k][r];
                if c == 0 {
                    continue;
                }
                for (sgn, off) in [(1i64, rank + r), (-1, rank + self.n_pos + r)] {
                    out[off] += sgn * c * (x[k] * y[off] - y[k] * x[off]);
                }
            }
        }
        for i in rank..self.dim() {
            if x[i] == 0 {
                continue;
            }
            let a = self.basis_signed_root(i).unwrap();
            for j in rank..self.dim() {
                if y[j] == 0 {
                    continue;
                }
                let b = self.basis_signed_root(j).unwrap();
                let prod = x[i] * y[j];
                if a == -b {
                    let r = (a.unsigned_abs() as usize) - 1;
                    let s = if a > 0 { 1 } else { -1 };
                    for k in 0..rank {
                        out[k] += s * prod * self.coroot_cochar[r][k];
                    }
                } else if let Some(si) = self.sum_root(a, b) {
                    out[self.root_basis_index(si)] += prod * self.structure_constant(a, b);
                }
            }
        }
        out
    }

    /// Adjoint action matrix of x: columns are [x, basis_j].
    pub fn ad_matrix(&self, x: &AlgebraElement) -> Result<Mat> {
        let f = x.field;
        let mut m = Mat::zeros(f, self.dim(), self.dim());
        for j in 0..self.dim() {
            let ej = self.basis_element(f, j);
            let col = self.bracket(x, &ej)?;
            for i in 0..self.dim() {
                m[(i, j)] = col.coords[i];
            }
        }
        Ok(m)
    }

    /// Centralizer of a single element.
    pub fn centralizer(&self, x: &AlgebraElement) -> Result<Subalgebra> {
        self.centralizer_of_span(std::slice::from_ref(x))
    }

    /// Centralizer of the span of the given elements: the joint kernel of
    /// their adjoint actions.
    pub fn centralizer_of_span(&self, xs: &[AlgebraElement]) -> Result<Subalgebra> {
        let f = xs.first().map(|x| x.field).unwrap_or_else(|| self.base_field());
        let mut stacked = Mat::zeros(f, 0, self.dim());
        for x in xs {
            stacked = stacked.vstack(&self.ad_matrix(x)?);
        }
        let kernel = stacked.kernel();
        Ok(Subalgebra::from_rows(self.dim(), f, kernel))
    }

    /// dim of the adjoint-group orbit through x, computed as
    /// dim g - dim z_g(x). The certificates that consume this record the
    /// orbit identity as an assumption.
    pub fn orbit_dim(&self, x: &AlgebraElement) -> Result<usize> {
        Ok(self.dim() - self.centralizer(x)?.dim())
    }

    /// rho(x) for a list of prime-field action matrices, over x's field.
    pub fn act(&self, x: &AlgebraElement, rho: &[Mat]) -> Mat {
        let f = x.field;
        let dim_v = rho[0].rows;
        let mut m = Mat::zeros(f, dim_v, dim_v);
        for (k, a) in rho.iter().enumerate() {
            if x.coords[k] == 0 {
                continue;
            }
            for i in 0..dim_v {
                for j in 0..dim_v {
                    if a[(i, j)] != 0 {
                        // prime-field entries embed as constants
                        let t = f.mul(x.coords[k], a[(i, j)]);
                        m[(i, j)] = f.add(m[(i, j)], t);
                    }
                }
            }
        }
        m
    }

    /// The p-th power x^{[p]} computed through a faithful module action.
    pub fn p_power(&self, x: &AlgebraElement, rho: &[Mat]) -> Result<AlgebraElement> {
        assert_eq!(rho.len(), self.dim(), "one action matrix per basis element");
        if self.p == 0 {
            return Err(Error::Invalid("p-operation needs p > 0".into()));
        }
        let f = x.field;
        let dim_v = rho[0].rows;
        let mp = self.act(x, rho).pow(self.p);
        // solve sum_k y_k rho_k = rho(x)^p
        let mut flat = Mat::zeros(f, dim_v * dim_v, self.dim());
        for (k, a) in rho.iter().enumerate() {
            for i in 0..dim_v {
                for j in 0..dim_v {
                    if a[(i, j)] != 0 {
                        flat[(i * dim_v + j, k)] = a[(i, j)];
                    }
                }
            }
        }
        let mut rhs = vec![0; dim_v * dim_v];
        for i in 0..dim_v {
            for j in 0..dim_v {
                rhs[i * dim_v + j] = mp[(i, j)];
            }
        }
        if flat.rank() < self.dim() {
            return Err(Error::Invalid("representation is not faithful".into()));
        }
        let y = flat.solve(&rhs).ok_or(Error::PPowerOutsideImage)?;
        Ok(AlgebraElement { field: f, coords: y })
    }

    /// Whether S is a toral subalgebra: abelian, and every basis vector
    /// lies in the span of its iterated p-th powers.
    pub fn is_toral_subalgebra(&self, s: &Subalgebra, rho: &[Mat]) -> Result<bool> {
        let f = s.field;
        let d = s.dim();
        for i in 0..d {
            for j in i + 1..d {
                let br = self.bracket(&s.element(i), &s.element(j))?;
                if !br.coords.iter().all(|&c| c == 0) {
                    return Ok(false);
                }
            }
        }
        for i in 0..d {
            let x = s.element(i);
            let mut span = Mat::zeros(f, 0, self.dim());
            let mut cur = x.clone();
            loop {
                cur = self.p_power(&cur, rho)?;
                let mut row = Mat::zeros(f, 1, self.dim());
                row.set_row(0, &cur.coords);
                let cand = span.vstack(&row);
                if cand.rank() == span.rows {
                    break;
                }
                span = cand;
                // keep the span echelonized so `rows` stays the rank
                span.echelonize();
                let r = span.rank();
                let mut trimmed = Mat::zeros(f, r, self.dim());
                for t in 0..r {
                    trimmed.set_row(t, span.row(t));
                }
                span = trimmed;
                if span.rows > self.dim() {
                    return Err(Error::Invalid("p-power iteration failed to stabilize".into()));
                }
            }
            if span.transpose().solve(&x.coords).is_none() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// A subspace of the algebra given by an echelonized row basis.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Subalgebra {
    pub field: Fq,
    pub basis: Mat,
    pub abelian: Option<bool>,
    pub toral: Option<bool>,
    pub central: Option<bool>,
}

impl Subalgebra {
    pub fn from_rows(ambient_dim: usize, field: Fq, rows: Vec<Vec<Elt>>) -> Self {
        let mut m = Mat::zeros(field, rows.len(), ambient_dim);
        for (i, r) in rows.iter().enumerate() {
            m.set_row(i, r);
        }
        m.echelonize();
        let rank = m.rank();
        let mut basis = Mat::zeros(field, rank, ambient_dim);
        for i in 0..rank {
            basis.set_row(i, m.row(i));
        }
        Subalgebra { field, basis, abelian: None, toral: None, central: None }
    }

    pub fn dim(&self) -> usize {
        self.basis.rows
    }

    pub fn element(&self, i: usize) -> AlgebraElement {
        AlgebraElement { field: self.field, coords: self.basis.row(i).to_vec() }
    }
}

/// Resolves a structure constant for an arbitrary signed pair from the
/// positive-positive table, via N_{a,b} = -N_{-a,-b} and the three-term
/// identity N_{a,b}/(c,c) = N_{b,c}/(a,a) for a+b+c = 0.
fn resolve(
    table: &HashMap<(SignedRoot, SignedRoot), i64>,
    index_of: &HashMap<Vec<i64>, SignedRoot>,
    coords_of: &impl Fn(SignedRoot) -> Vec<i64>,
    len2: &impl Fn(&[i64]) -> i64,
    a: SignedRoot,
    b: SignedRoot,
) -> i64 {
    let sum: Vec<i64> = coords_of(a).iter().zip(&coords_of(b)).map(|(x, y)| x + y).collect();
    if sum.iter().all(|&v| v == 0) || !index_of.contains_key(&sum) {
        return 0;
    }
    if a > 0 && b > 0 {
        return *table.get(&(a, b)).expect("positive pair must already be known");
    }
    if a < 0 && b < 0 {
        return -resolve(table, index_of, coords_of, len2, -a, -b);
    }
    if a < 0 {
        return -resolve(table, index_of, coords_of, len2, b, a);
    }
    // a > 0, b < 0
    let delta = index_of[&sum];
    let la = len2(&coords_of(a));
    let lb = len2(&coords_of(b));
    let ld = len2(&coords_of(delta));
    if delta > 0 {
        // N_{a,b} = -(d,d)/(a,a) N_{-b,delta}, with (-b) + delta = a
        let n = resolve(table, index_of, coords_of, len2, -b, delta);
        let v = Ratio::new(-ld * n, la);
        assert!(v.is_integer());
        v.to_integer()
    } else {
        // N_{a,b} = -(d,d)/(b,b) N_{a,-delta}, with a + (-delta) = -b
        let n = resolve(table, index_of, coords_of, len2, a, -delta);
        let v = Ratio::new(-ld * n, lb);
        assert!(v.is_integer());
        v.to_integer()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::roots::{IsogenySpec, RootDatum, TypeLabel};
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn algebra(label: char, rank: usize, p: u64) -> ChevalleyAlgebra {
        let d = RootDatum::new(
            TypeLabel::from_char(label).unwrap(),
            rank,
            IsogenySpec::SimplyConnected,
        )
        .unwrap();
        ChevalleyAlgebra::new(d, p).unwrap()
    }

    #[test]
    fn constant_magnitudes_are_string_lengths() {
        for (l, r) in [('A', 3), ('B', 3), ('C', 3), ('D', 4), ('G', 2), ('F', 4)] {
            let alg = algebra(l, r, 5);
            let np = alg.num_positive_roots() as i32;
            for a in (-np..=np).filter(|&x| x != 0) {
                for b in (-np..=np).filter(|&x| x != 0) {
                    if alg.sum_root(a, b).is_some() {
                        let n = alg.structure_constant(a, b);
                        assert!(n != 0, "root sum with zero constant: {l}{r} {a} {b}");
                        assert!(n.abs() <= 4);
                        assert_eq!(alg.structure_constant(a, b), -alg.structure_constant(b, a));
                        assert_eq!(alg.structure_constant(a, b), -alg.structure_constant(-a, -b));
                    }
                }
            }
        }
    }

    #[test]
    fn chevalley_relations() {
        let alg = algebra('B', 2, 7);
        let f = alg.base_field();
        for r in 0..alg.num_positive_roots() {
            let e = alg.root_vector(f, (r + 1) as i32);
            let fneg = alg.root_vector(f, -((r + 1) as i32));
            let h = alg.bracket(&e, &fneg).unwrap();
            let expected = alg.cartan_element(f, alg.coroot_cochar(r));
            assert_eq!(h, expected, "[e, e_-] must be the coroot");
        }
        let h1 = alg.basis_element(f, 0);
        let h2 = alg.basis_element(f, 1);
        assert!(alg.bracket(&h1, &h2).unwrap().coords.iter().all(|&c| c == 0));
        for k in 0..alg.rank() {
            for r in 0..alg.num_positive_roots() {
                let h = alg.basis_element(f, k);
                let e = alg.root_vector(f, (r + 1) as i32);
                let br = alg.bracket(&h, &e).unwrap();
                let mut expect = alg.zero(f);
                expect.coords[alg.root_basis_index((r + 1) as i32)] =
                    f.from_i64(alg.cartan_pairing(k, r));
                assert_eq!(br, expect);
            }
        }
        // e_a, e_b with a+b neither root nor zero bracket to 0
        let np = alg.num_positive_roots() as i32;
        let mut found = false;
        for a in 1..=np {
            for b in 1..=np {
                if a != b && alg.sum_root(a, b).is_none() {
                    let x = alg.root_vector(f, a);
                    let y = alg.root_vector(f, b);
                    assert!(alg.bracket(&x, &y).unwrap().coords.iter().all(|&c| c == 0));
                    found = true;
                }
            }
        }
        assert!(found);
    }

    fn jacobi_holds(
        alg: &ChevalleyAlgebra,
        x: &AlgebraElement,
        y: &AlgebraElement,
        z: &AlgebraElement,
    ) -> bool {
        let t1 = alg.bracket(&alg.bracket(x, y).unwrap(), z).unwrap();
        let t2 = alg.bracket(&alg.bracket(y, z).unwrap(), x).unwrap();
        let t3 = alg.bracket(&alg.bracket(z, x).unwrap(), y).unwrap();
        let f = x.field;
        (0..alg.dim()).all(|i| f.add(f.add(t1.coords[i], t2.coords[i]), t3.coords[i]) == 0)
    }

    #[test]
    fn jacobi_exhaustive_small_ranks() {
        for (l, r, p) in
            [('A', 2, 5), ('B', 2, 3), ('C', 3, 7), ('G', 2, 5), ('A', 3, 2), ('B', 3, 5), ('D', 4, 3)]
        {
            let alg = algebra(l, r, p);
            let f = alg.base_field();
            let n = alg.dim();
            for i in 0..n {
                for j in i + 1..n {
                    for k in j + 1..n {
                        let (x, y, z) = (
                            alg.basis_element(f, i),
                            alg.basis_element(f, j),
                            alg.basis_element(f, k),
                        );
                        assert!(jacobi_holds(&alg, &x, &y, &z), "{l}{r} p={p} ({i},{j},{k})");
                    }
                }
            }
        }
    }

    #[test]
    fn jacobi_randomized_higher_rank() {
        let alg = algebra('D', 5, 3);
        let f = alg.base_field();
        let mut rng = StdRng::seed_from_u64(11);
        let mut rand_elt = |rng: &mut StdRng| AlgebraElement {
            field: f,
            coords: (0..alg.dim()).map(|_| f.from_i64(rng.gen_range(0..3))).collect(),
        };
        for _ in 0..200 {
            let x = rand_elt(&mut rng);
            let y = rand_elt(&mut rng);
            let z = rand_elt(&mut rng);
            assert!(jacobi_holds(&alg, &x, &y, &z));
        }
    }

    #[test]
    fn bracket_mod_p_compatible_with_integral_form() {
        let algz = algebra('C', 3, 0);
        let algp = algebra('C', 3, 5);
        let f = algp.base_field();
        let mut rng = StdRng::seed_from_u64(5);
        for _ in 0..50 {
            let x: Vec<i64> = (0..algz.dim()).map(|_| rng.gen_range(-10..10)).collect();
            let y: Vec<i64> = (0..algz.dim()).map(|_| rng.gen_range(-10..10)).collect();
            let bz = algz.bracket_z(&x, &y);
            let xp =
                AlgebraElement { field: f, coords: x.iter().map(|&v| f.from_i64(v)).collect() };
            let yp =
                AlgebraElement { field: f, coords: y.iter().map(|&v| f.from_i64(v)).collect() };
            let bp = algp.bracket(&xp, &yp).unwrap();
            for i in 0..algz.dim() {
                assert_eq!(f.from_i64(bz[i]), bp.coords[i]);
            }
        }
    }

    #[test]
    fn centralizer_of_zero_and_generic_cartan() {
        let alg = algebra('A', 2, 7);
        let f = alg.base_field();
        let zero = alg.zero(f);
        assert_eq!(alg.centralizer(&zero).unwrap().dim(), alg.dim());
        // all root pairings nonzero mod 7: <a1,h> = -1, <a2,h> = 5, <a1+a2,h> = 4
        let h = alg.cartan_element(f, &[1, 3]);
        let c = alg.centralizer(&h).unwrap();
        assert_eq!(c.dim(), alg.rank());
        assert_eq!(alg.orbit_dim(&h).unwrap(), alg.dim() - alg.rank());
    }

    #[test]
    fn field_mismatch_is_an_error() {
        let alg = algebra('A', 2, 5);
        let f5 = alg.base_field();
        let f7 = Fq::prime(7).unwrap();
        let x = alg.zero(f5);
        let y = AlgebraElement { field: f7, coords: vec![0; alg.dim()] };
        assert!(matches!(alg.bracket(&x, &y), Err(Error::FieldMismatch)));
    }
}
