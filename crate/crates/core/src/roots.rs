//! Root systems, dominant weights, and isogeny lattices.
//!
//! Weight coefficient strings `c1 c2 ... cl` follow the numbering of the
//! dimension tables this toolkit reproduces: for types B, C and D the
//! indices run opposite to Bourbaki, so the *last* fundamental weight is
//! the natural (vector) one and the first is the spin / half-spin weight.
//! Type A is numbered as in Bourbaki. The convention is pinned by tests:
//! `weyl_dim(C4, 0100) = 48`, `weyl_dim(C5, 10000) = 132`, and the natural
//! module of so_n is `L(omega_l)`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qmat::{hermite_normal_form, q_from, QMat, Q, Z};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TypeLabel {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl TypeLabel {
    pub fn from_char(c: char) -> Result<Self> {
        match c.to_ascii_uppercase() {
            'A' => Ok(TypeLabel::A),
            'B' => Ok(TypeLabel::B),
            'C' => Ok(TypeLabel::C),
            'D' => Ok(TypeLabel::D),
            'E' => Ok(TypeLabel::E),
            'F' => Ok(TypeLabel::F),
            'G' => Ok(TypeLabel::G),
            other => Err(Error::UnknownType(other.to_string())),
        }
    }

    pub fn as_char(&self) -> char {
        match self {
            TypeLabel::A => 'A',
            TypeLabel::B => 'B',
            TypeLabel::C => 'C',
            TypeLabel::D => 'D',
            TypeLabel::E => 'E',
            TypeLabel::F => 'F',
            TypeLabel::G => 'G',
        }
    }

    pub fn valid_rank(&self, rank: usize) -> bool {
        match self {
            TypeLabel::A => rank >= 1,
            TypeLabel::B | TypeLabel::C => rank >= 2,
            TypeLabel::D => rank >= 4,
            TypeLabel::E => (6..=8).contains(&rank),
            TypeLabel::F => rank == 4,
            TypeLabel::G => rank == 2,
        }
    }
}

/// Whether p is a special characteristic for this type: 2 for B, C, F4;
/// 3 for G2 (a p-valent bond in the diagram).
pub fn is_special_characteristic(label: TypeLabel, p: u64) -> bool {
    match label {
        TypeLabel::B | TypeLabel::C | TypeLabel::F => p == 2,
        TypeLabel::G => p == 3,
        _ => false,
    }
}

/// Cartan matrix in the convention C[i][j] = <alpha_j, alpha_i^vee>, so the
/// j-th column is alpha_j written in fundamental-weight coordinates.
fn cartan_matrix(label: TypeLabel, rank: usize) -> Vec<Vec<i64>> {
    let mut c = vec![vec![0i64; rank]; rank];
    for (i, row) in c.iter_mut().enumerate() {
        row[i] = 2;
    }
    let edge = |c: &mut Vec<Vec<i64>>, i: usize, j: usize| {
        c[i][j] = -1;
        c[j][i] = -1;
    };
    match label {
        TypeLabel::A => {
            for i in 0..rank - 1 {
                edge(&mut c, i, i + 1);
            }
        }
        TypeLabel::B => {
            // node 1 is the short (spin) end: <alpha_2, alpha_1^vee> = -2
            for i in 0..rank - 1 {
                edge(&mut c, i, i + 1);
            }
            c[0][1] = -2;
        }
        TypeLabel::C => {
            // node 1 is the long end: <alpha_1, alpha_2^vee> = -2
            for i in 0..rank - 1 {
                edge(&mut c, i, i + 1);
            }
            c[1][0] = -2;
        }
        TypeLabel::D => {
            // nodes 1 and 2 are the fork (half-spin) ends, both attached to 3
            edge(&mut c, 0, 2);
            edge(&mut c, 1, 2);
            for i in 2..rank - 1 {
                edge(&mut c, i, i + 1);
            }
        }
        TypeLabel::E => {
            // Bourbaki: chain 1-3-4-5-6(-7-8), node 2 attached to 4
            edge(&mut c, 0, 2);
            edge(&mut c, 2, 3);
            edge(&mut c, 1, 3);
            edge(&mut c, 3, 4);
            edge(&mut c, 4, 5);
            if rank >= 7 {
                edge(&mut c, 5, 6);
            }
            if rank == 8 {
                edge(&mut c, 6, 7);
            }
        }
        TypeLabel::F => {
            edge(&mut c, 0, 1);
            edge(&mut c, 1, 2);
            edge(&mut c, 2, 3);
            c[2][1] = -2; // <alpha_2, alpha_3^vee> = -2 (alpha_3 short)
        }
        TypeLabel::G => {
            edge(&mut c, 0, 1);
            c[1][0] = -3; // alpha_2 short
        }
    }
    c
}

/// Half squared lengths d_i = (alpha_i, alpha_i)/2, normalized so short
/// simple roots have d = 1.
fn root_length_halves(label: TypeLabel, rank: usize) -> Vec<i64> {
    match label {
        TypeLabel::A | TypeLabel::D | TypeLabel::E => vec![1; rank],
        TypeLabel::B => {
            let mut d = vec![2; rank];
            d[0] = 1;
            d
        }
        TypeLabel::C => {
            let mut d = vec![1; rank];
            d[0] = 2;
            d
        }
        TypeLabel::F => vec![2, 2, 1, 1],
        TypeLabel::G => vec![3, 1],
    }
}

/// A positive root, stored in simple-root coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PositiveRoot {
    /// coefficients over the simple roots
    pub alpha_coords: Vec<i64>,
    /// the same root in fundamental-weight coordinates
    pub omega_coords: Vec<i64>,
    pub height: i64,
    /// coordinates of the coroot over the simple coroots
    pub coroot_coords: Vec<i64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum IsogenySpec {
    SimplyConnected,
    Adjoint,
    /// D with even rank: character lattice generated by the root lattice
    /// and the first fork (half-spin) weight.
    HalfSpin,
    /// B/D: generated by the root lattice and the vector weight omega_l;
    /// for B this coincides with the adjoint form.
    SpecialOrthogonal,
    /// Type A only: SL_n / mu_m for m dividing n.
    Quotient(u64),
}

impl IsogenySpec {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "sc" | "simply-connected" => Ok(IsogenySpec::SimplyConnected),
            "adjoint" | "ad" => Ok(IsogenySpec::Adjoint),
            "half-spin" | "halfspin" => Ok(IsogenySpec::HalfSpin),
            "so" | "special-orthogonal" => Ok(IsogenySpec::SpecialOrthogonal),
            other => {
                if let Some(m) = other.strip_prefix("mu:") {
                    let m: u64 = m
                        .parse()
                        .map_err(|_| Error::BadIsogeny(format!("bad quotient spec {other}")))?;
                    Ok(IsogenySpec::Quotient(m))
                } else {
                    Err(Error::BadIsogeny(other.to_string()))
                }
            }
        }
    }

    pub fn as_string(&self) -> String {
        match self {
            IsogenySpec::SimplyConnected => "sc".into(),
            IsogenySpec::Adjoint => "adjoint".into(),
            IsogenySpec::HalfSpin => "half-spin".into(),
            IsogenySpec::SpecialOrthogonal => "so".into(),
            IsogenySpec::Quotient(m) => format!("mu:{m}"),
        }
    }
}

/// A root system plus a character/cocharacter lattice pair pinning an
/// isogeny type. Immutable after construction.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RootDatum {
    pub label: TypeLabel,
    pub rank: usize,
    pub isogeny: IsogenySpec,
    pub cartan: Vec<Vec<i64>>,
    /// d_i = (alpha_i, alpha_i) / 2
    pub length_halves: Vec<i64>,
    /// positive roots in height-increasing order, ties broken
    /// lexicographically on simple-root coordinates
    pub positive_roots: Vec<PositiveRoot>,
    /// rows form a basis of the character lattice T^* in omega-coordinates
    /// (Hermite normal form, hence canonical)
    pub char_lattice: Vec<Vec<i64>>,
    /// rows form the dual basis of the cocharacter lattice, over the simple
    /// coroots, scaled by `cochar_den`
    pub cochar_num: Vec<Vec<i64>>,
    pub cochar_den: i64,
    /// order of the fundamental group P/Q
    pub fundamental_group_order: i64,
    /// index of the root lattice inside the character lattice
    pub char_lattice_index_over_root: i64,
}

impl RootDatum {
    pub fn new(label: TypeLabel, rank: usize, isogeny: IsogenySpec) -> Result<Self> {
        if !label.valid_rank(rank) {
            return Err(Error::UnknownType(format!("{}{}", label.as_char(), rank)));
        }
        let cartan = cartan_matrix(label, rank);
        let length_halves = root_length_halves(label, rank);
        let positive_roots = close_positive_roots(&cartan, &length_halves);
        let expected = expected_positive_count(label, rank);
        assert_eq!(
            positive_roots.len(),
            expected,
            "positive root closure disagrees with the classical count"
        );

        let fundamental_group_order = {
            let c = QMat::from_i64_rows(&cartan);
            det_of_integer_matrix(&c).abs().to_i64().expect("small determinant")
        };

        let char_lattice = char_lattice_basis(label, rank, isogeny, &cartan)?;
        let (cochar_num, cochar_den) = dual_basis(&char_lattice);

        // index of Q inside T^*: |P/Q| / |P/T^*|, with |P/T^*| = |det M|
        let m = QMat::from_i64_rows(&char_lattice);
        let det_m = det_of_integer_matrix(&m).abs().to_i64().expect("small determinant");
        if det_m == 0 || fundamental_group_order % det_m != 0 {
            return Err(Error::BadIsogeny("lattice is not between root and weight lattices".into()));
        }
        let char_lattice_index_over_root = fundamental_group_order / det_m;

        Ok(RootDatum {
            label,
            rank,
            isogeny,
            cartan,
            length_halves,
            positive_roots,
            char_lattice,
            cochar_num,
            cochar_den,
            fundamental_group_order,
            char_lattice_index_over_root,
        })
    }

    pub fn num_positive_roots(&self) -> usize {
        self.positive_roots.len()
    }

    /// Dimension of the ambient simple group / its Lie algebra.
    pub fn group_dim(&self) -> usize {
        2 * self.num_positive_roots() + self.rank
    }

    pub fn simple_root_omega(&self, i: usize) -> Vec<i64> {
        (0..self.rank).map(|k| self.cartan[k][i]).collect()
    }

    /// Position of the i-th simple root in the positive-root list (the
    /// height-1 block is sorted lexicographically, so this is a permutation).
    pub fn simple_root_position(&self, i: usize) -> usize {
        self.positive_roots
            .iter()
            .position(|r| r.height == 1 && r.alpha_coords[i] == 1)
            .expect("simple roots are positive roots")
    }

    /// <beta, alpha_i^vee> for beta in simple-root coordinates.
    pub fn pairing_with_simple_coroot(&self, alpha_coords: &[i64], i: usize) -> i64 {
        (0..self.rank).map(|j| self.cartan[i][j] * alpha_coords[j]).sum()
    }

    /// <mu, beta^vee> for mu in omega-coordinates and a positive root index.
    pub fn pairing_weight_coroot(&self, mu: &[i64], root_idx: usize) -> i64 {
        let cr = &self.positive_roots[root_idx].coroot_coords;
        (0..self.rank).map(|i| mu[i] * cr[i]).sum()
    }

    /// <mu, h_k> for the k-th cocharacter basis element; errors when the
    /// pairing is not integral (weight outside the character lattice).
    pub fn pairing_weight_cochar(&self, mu: &[i64], k: usize) -> Result<i64> {
        let num: i64 = (0..self.rank).map(|i| mu[i] * self.cochar_num[k][i]).sum();
        if num % self.cochar_den != 0 {
            return Err(Error::WeightNotInLattice(format!("{mu:?}")));
        }
        Ok(num / self.cochar_den)
    }

    /// Coordinates of beta^vee over the cocharacter basis (always integral:
    /// the coroot lattice is contained in every cocharacter lattice).
    pub fn coroot_in_cochar_basis(&self, root_idx: usize) -> Vec<i64> {
        let c = &self.positive_roots[root_idx].coroot_coords;
        (0..self.rank)
            .map(|i| (0..self.rank).map(|j| c[j] * self.char_lattice[i][j]).sum())
            .collect()
    }

    /// Membership of an omega-coordinate weight in the character lattice.
    pub fn weight_in_char_lattice(&self, mu: &[i64]) -> bool {
        (0..self.rank).all(|k| self.pairing_weight_cochar(mu, k).is_ok())
    }

    /// Weyl dimension formula, evaluated exactly.
    pub fn weyl_dim(&self, lambda: &DominantWeight) -> Result<BigInt> {
        if lambda.coeffs.len() != self.rank {
            return Err(Error::Invalid(format!(
                "weight has {} coefficients, rank is {}",
                lambda.coeffs.len(),
                self.rank
            )));
        }
        let mut num = BigInt::one();
        let mut den = BigInt::one();
        for r in 0..self.num_positive_roots() {
            let cr = &self.positive_roots[r].coroot_coords;
            let rho_pair: i64 = cr.iter().sum();
            let lam_pair: i64 = (0..self.rank).map(|i| lambda.coeffs[i] * cr[i]).sum();
            num *= BigInt::from(lam_pair + rho_pair);
            den *= BigInt::from(rho_pair);
        }
        let (q, r) = num_integer::Integer::div_rem(&num, &den);
        assert!(r.is_zero(), "Weyl dimension must be an integer");
        Ok(q)
    }

    /// Simple reflection s_i acting on cocharacter-basis coordinates:
    /// h -> h - <alpha_i, h> alpha_i^vee.
    pub fn simple_reflection_on_cochar(&self, i: usize, x: &[i64]) -> Vec<i64> {
        let alpha_omega = self.simple_root_omega(i);
        let pair: i64 = (0..self.rank)
            .map(|k| {
                let num: i64 = (0..self.rank).map(|t| alpha_omega[t] * self.cochar_num[k][t]).sum();
                debug_assert_eq!(num % self.cochar_den, 0);
                x[k] * (num / self.cochar_den)
            })
            .sum();
        // coords of alpha_i^vee over the cochar basis
        let simple_coroot: Vec<i64> = {
            let mut c = vec![0i64; self.rank];
            c[i] = 1;
            (0..self.rank)
                .map(|k| (0..self.rank).map(|j| c[j] * self.char_lattice[k][j]).sum())
                .collect()
        };
        (0..self.rank).map(|k| x[k] - pair * simple_coroot[k]).collect()
    }

    /// Canonical JSON form for persistence and golden tests.
    pub fn to_canonical_json(&self) -> String {
        serde_json::to_string(self).expect("root datum serializes")
    }
}

fn expected_positive_count(label: TypeLabel, rank: usize) -> usize {
    match label {
        TypeLabel::A => rank * (rank + 1) / 2,
        TypeLabel::B | TypeLabel::C => rank * rank,
        TypeLabel::D => rank * (rank - 1),
        TypeLabel::E => match rank {
            6 => 36,
            7 => 63,
            _ => 120,
        },
        TypeLabel::F => 24,
        TypeLabel::G => 6,
    }
}

/// Closure of the simple roots under root addition, using root strings.
fn close_positive_roots(cartan: &[Vec<i64>], d: &[i64]) -> Vec<PositiveRoot> {
    let rank = cartan.len();
    let mut found: std::collections::HashSet<Vec<i64>> = std::collections::HashSet::new();
    let mut by_height: Vec<Vec<Vec<i64>>> = vec![Vec::new()];
    for i in 0..rank {
        let mut v = vec![0i64; rank];
        v[i] = 1;
        found.insert(v.clone());
        by_height[0].push(v);
    }
    loop {
        let last = by_height.last().unwrap().clone();
        let mut next = Vec::new();
        for beta in &last {
            for i in 0..rank {
                // r = largest k with beta - k alpha_i a root
                let mut r = 0i64;
                let mut probe = beta.clone();
                loop {
                    probe[i] -= 1;
                    if probe[i] >= 0 && found.contains(&probe) {
                        r += 1;
                    } else {
                        break;
                    }
                }
                let pairing: i64 = (0..rank).map(|j| cartan[i][j] * beta[j]).sum();
                if r - pairing > 0 {
                    let mut gamma = beta.clone();
                    gamma[i] += 1;
                    if found.insert(gamma.clone()) {
                        next.push(gamma);
                    }
                }
            }
        }
        if next.is_empty() {
            break;
        }
        next.sort();
        next.dedup();
        by_height.push(next);
    }
    let mut all: Vec<Vec<i64>> = found.into_iter().collect();
    all.sort_by_key(|v| (v.iter().sum::<i64>(), v.clone()));
    all.into_iter()
        .map(|alpha_coords| {
            let height: i64 = alpha_coords.iter().sum();
            let omega_coords: Vec<i64> = (0..rank)
                .map(|i| (0..rank).map(|j| cartan[i][j] * alpha_coords[j]).sum())
                .collect();
            // (beta, beta) = sum_{ij} a_i a_j d_i C[i][j]
            let len2: i64 = (0..rank)
                .map(|i| {
                    (0..rank)
                        .map(|j| alpha_coords[i] * alpha_coords[j] * d[i] * cartan[i][j])
                        .sum::<i64>()
                })
                .sum();
            let coroot_coords: Vec<i64> = (0..rank)
                .map(|j| {
                    let num = alpha_coords[j] * 2 * d[j];
                    assert_eq!(num % len2, 0, "coroot coordinates must be integral");
                    num / len2
                })
                .collect();
            PositiveRoot { alpha_coords, omega_coords, height, coroot_coords }
        })
        .collect()
}

fn char_lattice_basis(
    label: TypeLabel,
    rank: usize,
    isogeny: IsogenySpec,
    cartan: &[Vec<i64>],
) -> Result<Vec<Vec<i64>>> {
    let mut gens: Vec<Vec<Z>> = Vec::new();
    let root_rows = || -> Vec<Vec<Z>> {
        (0..rank)
            .map(|j| (0..rank).map(|i| Z::from(cartan[i][j])).collect())
            .collect()
    };
    match isogeny {
        IsogenySpec::SimplyConnected => {
            return Ok((0..rank)
                .map(|i| (0..rank).map(|j| i64::from(i == j)).collect())
                .collect());
        }
        IsogenySpec::Adjoint => {
            gens.extend(root_rows());
        }
        IsogenySpec::HalfSpin => {
            if label != TypeLabel::D || rank % 2 != 0 {
                return Err(Error::BadIsogeny(
                    "half-spin lattices exist only for D with even rank".into(),
                ));
            }
            gens.extend(root_rows());
            let mut w = vec![Z::zero(); rank];
            w[0] = Z::one(); // first fork weight
            gens.push(w);
        }
        IsogenySpec::SpecialOrthogonal => {
            if !matches!(label, TypeLabel::B | TypeLabel::D) {
                return Err(Error::BadIsogeny("SO forms exist only for types B and D".into()));
            }
            gens.extend(root_rows());
            let mut w = vec![Z::zero(); rank];
            w[rank - 1] = Z::one(); // vector weight
            gens.push(w);
        }
        IsogenySpec::Quotient(m) => {
            if label != TypeLabel::A {
                return Err(Error::BadIsogeny("mu-quotients are specified for type A only".into()));
            }
            let n = rank as u64 + 1;
            if m == 0 || n % m != 0 {
                return Err(Error::BadIsogeny(format!(
                    "mu_{m} is not a subgroup of the center of SL_{n}"
                )));
            }
            gens.extend(root_rows());
            let mut w = vec![Z::zero(); rank];
            w[0] = Z::from(m);
            gens.push(w);
        }
    }
    let (h, _) = hermite_normal_form(&gens);
    let basis: Vec<Vec<i64>> = h
        .into_iter()
        .filter(|row| row.iter().any(|x| !x.is_zero()))
        .map(|row| row.iter().map(|x| x.to_i64().expect("small lattice entries")).collect())
        .collect();
    if basis.len() != rank {
        return Err(Error::BadIsogeny("character lattice is not full rank".into()));
    }
    Ok(basis)
}

/// Dual basis of the given row lattice: N = (M^T)^{-1}, returned as an
/// integer matrix plus common denominator.
fn dual_basis(char_lattice: &[Vec<i64>]) -> (Vec<Vec<i64>>, i64) {
    let rank = char_lattice.len();
    let m = QMat::from_i64_rows(char_lattice);
    let n = m.transpose().inverse().expect("lattice basis is invertible");
    let mut den = Z::one();
    for i in 0..rank {
        for j in 0..rank {
            den = num_integer::lcm(den.clone(), n[(i, j)].denom().clone());
        }
    }
    let den_i = den.to_i64().expect("small denominator");
    let num = (0..rank)
        .map(|i| {
            (0..rank)
                .map(|j| {
                    let v: Q = &n[(i, j)] * BigRational::from_integer(den.clone());
                    assert!(v.is_integer());
                    v.to_integer().to_i64().expect("small numerator")
                })
                .collect()
        })
        .collect();
    (num, den_i)
}

fn det_of_integer_matrix(m: &QMat) -> BigInt {
    // fraction-free enough for our sizes: echelonize a copy, track pivots
    let n = m.rows;
    let mut a = m.clone();
    let mut det = Q::one();
    let mut r = 0;
    for c in 0..n {
        if r == n {
            break;
        }
        let Some(pr) = (r..n).find(|&i| !a[(i, c)].is_zero()) else {
            return BigInt::zero();
        };
        if pr != r {
            for j in 0..n {
                let t = a[(r, j)].clone();
                a[(r, j)] = a[(pr, j)].clone();
                a[(pr, j)] = t;
            }
            det = -det;
        }
        det *= a[(r, c)].clone();
        let inv = a[(r, c)].recip();
        for j in c..n {
            let v = &a[(r, j)] * &inv;
            a[(r, j)] = v;
        }
        for i in r + 1..n {
            if !a[(i, c)].is_zero() {
                let f = a[(i, c)].clone();
                for j in c..n {
                    let s = &f * &a[(r, j)];
                    a[(i, j)] -= s;
                }
            }
        }
        r += 1;
    }
    assert!(det.is_integer());
    det.to_integer()
}

/// A dominant weight in fundamental-weight coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DominantWeight {
    pub coeffs: Vec<i64>,
}

impl DominantWeight {
    pub fn new(coeffs: Vec<i64>) -> Result<Self> {
        if coeffs.iter().any(|&c| c < 0) {
            return Err(Error::NotDominant(format!("{coeffs:?}")));
        }
        Ok(DominantWeight { coeffs })
    }

    /// Parses the `c1 c2 ... cl` shorthand ("0100"), or a comma-separated
    /// list for coefficients above 9.
    pub fn parse(s: &str, rank: usize) -> Result<Self> {
        let coeffs: Vec<i64> = if s.contains(',') {
            s.split(',')
                .map(|t| t.trim().parse::<i64>().map_err(|_| Error::NotDominant(s.into())))
                .collect::<Result<_>>()?
        } else {
            s.chars()
                .map(|c| c.to_digit(10).map(i64::from).ok_or_else(|| Error::NotDominant(s.into())))
                .collect::<Result<_>>()?
        };
        if coeffs.len() != rank {
            return Err(Error::Invalid(format!(
                "weight string {s:?} has {} coefficients, rank is {rank}",
                coeffs.len()
            )));
        }
        DominantWeight::new(coeffs)
    }

    pub fn shorthand(&self) -> String {
        if self.coeffs.iter().all(|&c| c < 10) {
            self.coeffs.iter().map(|c| c.to_string()).collect()
        } else {
            self.coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn is_restricted(&self, p: u64) -> bool {
        self.coeffs.iter().all(|&c| (c as u64) < p)
    }
}

/// lambda = lambda0 + p lambda1 with lambda0 restricted; also reports
/// whether each part lies in the character lattice of `datum` (they need
/// not, even when lambda does).
pub fn decompose_weight(
    datum: &RootDatum,
    lambda: &DominantWeight,
    p: u64,
) -> (DominantWeight, DominantWeight, bool, bool) {
    let p = p as i64;
    let l0: Vec<i64> = lambda.coeffs.iter().map(|&c| c % p).collect();
    let l1: Vec<i64> = lambda.coeffs.iter().map(|&c| c / p).collect();
    let in0 = datum.weight_in_char_lattice(&l0);
    let in1 = datum.weight_in_char_lattice(&l1);
    (DominantWeight { coeffs: l0 }, DominantWeight { coeffs: l1 }, in0, in1)
}

/// The dimension bound constants consumed from part I (one row per type
/// and characteristic class). Exact rational: the A-type bound for odd p
/// is 2.25 (l+1)^2 and must never be rounded.
pub fn bound_b(label: TypeLabel, rank: usize, p: u64) -> Result<BigRational> {
    if is_special_characteristic(label, p) {
        return Err(Error::SpecialCharacteristic { label: label.as_char(), rank, p });
    }
    let l = rank as i64;
    let v = match label {
        TypeLabel::A => {
            if p == 2 {
                q_from(2 * l * l + 4 * l)
            } else {
                BigRational::new(Z::from(9 * (l + 1) * (l + 1)), Z::from(4))
            }
        }
        TypeLabel::B => q_from(8 * l * l),
        TypeLabel::C => q_from(6 * l * l),
        TypeLabel::D => {
            if p == 2 {
                q_from(4 * l * l)
            } else {
                q_from(2 * (2 * l - 1) * (2 * l - 1))
            }
        }
        TypeLabel::G => q_from(48),
        TypeLabel::F => q_from(240),
        TypeLabel::E => match rank {
            6 => q_from(360),
            7 => q_from(630),
            _ => q_from(1200),
        },
    };
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn datum(label: char, rank: usize, iso: IsogenySpec) -> RootDatum {
        RootDatum::new(TypeLabel::from_char(label).unwrap(), rank, iso).unwrap()
    }

    fn sc(label: char, rank: usize) -> RootDatum {
        datum(label, rank, IsogenySpec::SimplyConnected)
    }

    fn wd(d: &RootDatum, s: &str) -> i64 {
        d.weyl_dim(&DominantWeight::parse(s, d.rank).unwrap())
            .unwrap()
            .to_i64()
            .unwrap()
    }

    #[test]
    fn root_counts_and_dimensions() {
        // 2 * #positive + rank = classical group dimension
        let table = [
            ('A', 2, 8),
            ('A', 5, 35),
            ('B', 2, 10),
            ('B', 4, 36),
            ('C', 3, 21),
            ('C', 4, 36),
            ('D', 4, 28),
            ('D', 8, 120),
            ('E', 6, 78),
            ('E', 7, 133),
            ('E', 8, 248),
            ('F', 4, 52),
            ('G', 2, 14),
        ];
        for (l, r, dim) in table {
            let d = sc(l, r);
            assert_eq!(d.group_dim(), dim, "{l}{r}");
        }
    }

    #[test]
    fn a2_has_six_roots_dim_eight() {
        let d = sc('A', 2);
        assert_eq!(2 * d.num_positive_roots(), 6);
        assert_eq!(d.group_dim(), 8);
    }

    #[test]
    fn c4_adjoint_has_32_roots_dim_36() {
        let d = datum('C', 4, IsogenySpec::Adjoint);
        assert_eq!(2 * d.num_positive_roots(), 32);
        assert_eq!(d.group_dim(), 36);
    }

    #[test]
    fn positive_roots_are_height_sorted() {
        let d = sc('D', 5);
        for w in d.positive_roots.windows(2) {
            assert!(
                (w[0].height, &w[0].alpha_coords) < (w[1].height, &w[1].alpha_coords),
                "order must be height-lex"
            );
        }
    }

    #[test]
    fn duality_of_lattices() {
        for (l, r, iso) in [
            ('A', 3, IsogenySpec::Adjoint),
            ('A', 7, IsogenySpec::Quotient(4)),
            ('D', 8, IsogenySpec::HalfSpin),
            ('D', 5, IsogenySpec::SpecialOrthogonal),
            ('C', 4, IsogenySpec::SimplyConnected),
            ('E', 6, IsogenySpec::Adjoint),
        ] {
            let d = datum(l, r, iso);
            // pairing of char basis with cochar basis is the identity
            for i in 0..d.rank {
                for k in 0..d.rank {
                    let num: i64 =
                        (0..d.rank).map(|t| d.char_lattice[i][t] * d.cochar_num[k][t]).sum();
                    assert_eq!(num, d.cochar_den * i64::from(i == k));
                }
            }
            // all roots lie in the character lattice
            for root in &d.positive_roots {
                assert!(d.weight_in_char_lattice(&root.omega_coords));
            }
            assert_eq!(d.fundamental_group_order % d.char_lattice_index_over_root, 0);
        }
    }

    #[test]
    fn half_spin_d8_contains_one_fork_weight() {
        let d = datum('D', 8, IsogenySpec::HalfSpin);
        let mut fork1 = vec![0i64; 8];
        fork1[0] = 1;
        let mut fork2 = vec![0i64; 8];
        fork2[1] = 1;
        let mut vector = vec![0i64; 8];
        vector[7] = 1;
        assert!(d.weight_in_char_lattice(&fork1));
        assert!(!d.weight_in_char_lattice(&fork2));
        assert!(!d.weight_in_char_lattice(&vector));
        assert_eq!(d.char_lattice_index_over_root, 2);
    }

    #[test]
    fn half_spin_requires_even_d() {
        assert!(RootDatum::new(TypeLabel::D, 5, IsogenySpec::HalfSpin).is_err());
        assert!(RootDatum::new(TypeLabel::A, 4, IsogenySpec::HalfSpin).is_err());
    }

    #[test]
    fn bad_quotients_rejected() {
        assert!(RootDatum::new(TypeLabel::A, 7, IsogenySpec::Quotient(3)).is_err());
        assert!(RootDatum::new(TypeLabel::A, 7, IsogenySpec::Quotient(4)).is_ok());
        assert!(RootDatum::new(TypeLabel::C, 4, IsogenySpec::Quotient(2)).is_err());
    }

    #[test]
    fn weyl_dims_pin_the_numbering() {
        // the anchors that fix the weight numbering convention
        assert_eq!(wd(&sc('C', 4), "0100"), 48);
        assert_eq!(wd(&sc('B', 2), "11"), 16);
        assert_eq!(wd(&sc('C', 5), "10000"), 132);
        assert_eq!(wd(&sc('C', 5), "01000"), 165);
        assert_eq!(wd(&sc('B', 3), "101"), 48);
        assert_eq!(wd(&sc('D', 4), "1001"), 56);
        assert_eq!(wd(&sc('D', 5), "20000"), 126);
        // natural modules: L(omega_l) for B, C, D
        assert_eq!(wd(&sc('B', 3), "001"), 7);
        assert_eq!(wd(&sc('C', 4), "0001"), 8);
        assert_eq!(wd(&sc('D', 5), "00001"), 10);
        // spin-side: first fundamental weight
        assert_eq!(wd(&sc('B', 3), "100"), 8);
        assert_eq!(wd(&sc('D', 5), "10000"), 16);
        assert_eq!(wd(&sc('C', 4), "1000"), 42);
        // trivector Weyl modules for C: binom(2l,3) - 2l at omega_{l-2}
        assert_eq!(wd(&sc('C', 5), "00100"), 110);
        assert_eq!(wd(&sc('C', 6), "000100"), 208);
    }

    #[test]
    fn wedge_dims_for_type_a() {
        // (A_{n-1}, omega_e) -> C(n, e)
        assert_eq!(wd(&sc('A', 8), "00100000"), 84);
        assert_eq!(wd(&sc('A', 7), "0001000"), 70);
        assert_eq!(wd(&sc('A', 3), "010"), 6);
        assert_eq!(wd(&sc('A', 15), "0,0,1,0,0,0,0,0,0,0,0,0,0,0,0"), 560);
    }

    #[test]
    fn decompose_and_recompose() {
        let d = sc('A', 3);
        let lam = DominantWeight::parse("210", 3).unwrap();
        // "omega_2 + 2 omega_1" example: lambda = (2,1,0), p = 2
        let (l0, l1, _, _) = decompose_weight(&d, &lam, 2);
        assert_eq!(l0.coeffs, vec![0, 1, 0]);
        assert_eq!(l1.coeffs, vec![1, 0, 0]);
        // restricted weights decompose trivially
        let lam = DominantWeight::parse("12", 2).unwrap();
        let d2 = sc('B', 2);
        let (l0, l1, _, _) = decompose_weight(&d2, &lam, 5);
        assert_eq!(l0.coeffs, vec![1, 2]);
        assert!(l1.is_zero());
    }

    #[test]
    fn exhaustive_decompose_bijection_small_ranks() {
        for (l, r) in [('A', 2), ('B', 2), ('C', 3), ('A', 4)] {
            let d = sc(l, r);
            for p in [2u64, 3, 5] {
                let pp = (p * p) as i64;
                let mut coeffs = vec![0i64; r];
                loop {
                    let lam = DominantWeight { coeffs: coeffs.clone() };
                    let (l0, l1, _, _) = decompose_weight(&d, &lam, p);
                    assert!(l0.is_restricted(p));
                    for i in 0..r {
                        assert_eq!(l0.coeffs[i] + (p as i64) * l1.coeffs[i], coeffs[i]);
                    }
                    // increment odometer over coefficients < p^2
                    let mut k = 0;
                    while k < r {
                        coeffs[k] += 1;
                        if coeffs[k] < pp {
                            break;
                        }
                        coeffs[k] = 0;
                        k += 1;
                    }
                    if k == r {
                        break;
                    }
                }
            }
        }
    }

    #[test]
    fn bound_table() {
        use num_traits::ToPrimitive;
        assert_eq!(bound_b(TypeLabel::E, 8, 7).unwrap().to_integer().to_i64(), Some(1200));
        assert_eq!(bound_b(TypeLabel::G, 2, 5).unwrap().to_integer().to_i64(), Some(48));
        assert_eq!(bound_b(TypeLabel::A, 3, 2).unwrap().to_integer().to_i64(), Some(30));
        assert_eq!(bound_b(TypeLabel::A, 4, 2).unwrap().to_integer().to_i64(), Some(48));
        // non-integral A bound: 2.25 * 16 = 36 exactly for l = 3, use l = 2: 2.25 * 9 = 20.25
        let b = bound_b(TypeLabel::A, 2, 3).unwrap();
        assert_eq!(b, BigRational::new(Z::from(81), Z::from(4)));
        assert!(b > q_from(20) && b < q_from(21));
        assert!(bound_b(TypeLabel::B, 4, 2).is_err());
        assert!(bound_b(TypeLabel::G, 2, 3).is_err());
    }

    #[test]
    fn canonical_json_roundtrip() {
        let d = datum('D', 5, IsogenySpec::SpecialOrthogonal);
        let s = d.to_canonical_json();
        let back: RootDatum = serde_json::from_str(&s).unwrap();
        assert_eq!(back.to_canonical_json(), s);
    }
}
