//! Straightening engine for a Verma module of highest weight lambda over Q.
//!
//! Vectors are exact rational combinations of PBW monomials
//! f_{b1}^{a1} ... f_{bN}^{aN} v+ over the positive roots in height-lex
//! order. The engine rewrites left multiplication by any e_beta or f_beta
//! into normal form and evaluates the contravariant (Shapovalov) pairing
//! by the adjunction <f_s u, w> = <u, e_s w>. Everything is memoized per
//! monomial; this is what makes deep modules affordable.

use num_rational::BigRational;
use num_traits::{One, Zero};
use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::rc::Rc;

use crate::chevalley::ChevalleyAlgebra;
use crate::qmat::Q;

/// Exponent vector over the positive roots.
pub type Mono = Vec<u8>;
/// A Verma vector: monomial -> coefficient.
pub type VVec = BTreeMap<Mono, Q>;

pub fn vvec_add_term(target: &mut VVec, m: Mono, c: Q) {
    if c.is_zero() {
        return;
    }
    let e = target.entry(m.clone()).or_insert_with(Q::zero);
    *e += c;
    if e.is_zero() {
        target.remove(&m);
    }
}

pub fn vvec_scale_add(target: &mut VVec, scale: &Q, src: &VVec) {
    if scale.is_zero() {
        return;
    }
    for (m, c) in src {
        vvec_add_term(target, m.clone(), c * scale);
    }
}

pub struct VermaEngine<'a> {
    pub alg: &'a ChevalleyAlgebra,
    pub lambda: Vec<i64>,
    n_pos: usize,
    f_cache: RefCell<HashMap<(usize, Mono), Rc<VVec>>>,
    e_cache: RefCell<HashMap<(usize, Mono), Rc<VVec>>>,
    pair_cache: RefCell<HashMap<(Mono, Mono), Q>>,
}

impl<'a> VermaEngine<'a> {
    pub fn new(alg: &'a ChevalleyAlgebra, lambda: Vec<i64>) -> Self {
        let n_pos = alg.num_positive_roots();
        VermaEngine {
            alg,
            lambda,
            n_pos,
            f_cache: RefCell::new(HashMap::new()),
            e_cache: RefCell::new(HashMap::new()),
            pair_cache: RefCell::new(HashMap::new()),
        }
    }

    pub fn empty_mono(&self) -> Mono {
        vec![0; self.n_pos]
    }

    pub fn highest_weight_vector(&self) -> VVec {
        let mut v = VVec::new();
        v.insert(self.empty_mono(), Q::one());
        v
    }

    /// Weight of (monomial applied to v+), in omega-coordinates.
    pub fn weight_of_mono(&self, m: &Mono) -> Vec<i64> {
        let rank = self.alg.datum.rank;
        let mut w = self.lambda.clone();
        for (r, &e) in m.iter().enumerate() {
            if e > 0 {
                let root = &self.alg.datum.positive_roots[r].omega_coords;
                for i in 0..rank {
                    w[i] -= (e as i64) * root[i];
                }
            }
        }
        w
    }

    fn first_nonzero(m: &Mono) -> Option<usize> {
        m.iter().position(|&e| e > 0)
    }

    /// <wt, beta_r^vee> for a weight in omega-coordinates.
    fn coroot_pairing(&self, wt: &[i64], r: usize) -> i64 {
        self.alg.datum.pairing_weight_coroot(wt, r)
    }

    /// Left-multiplies v+ words by f_{beta_r} and renormalizes.
    pub fn apply_f_mono(&self, r: usize, m: &Mono) -> Rc<VVec> {
        if let Some(hit) = self.f_cache.borrow().get(&(r, m.clone())) {
            return hit.clone();
        }
        let result = self.apply_f_mono_inner(r, m);
        let rc = Rc::new(result);
        self.f_cache.borrow_mut().insert((r, m.clone()), rc.clone());
        rc
    }

    fn apply_f_mono_inner(&self, r: usize, m: &Mono) -> VVec {
        let mut out = VVec::new();
        let Some(s) = Self::first_nonzero(m) else {
            let mut mm = m.clone();
            mm[r] += 1;
            out.insert(mm, Q::one());
            return out;
        };
        if r <= s {
            let mut mm = m.clone();
            mm[r] += 1;
            out.insert(mm, Q::one());
            return out;
        }
        // commute f_r past f_s^a
        let a = m[s];
        let mut rest = m.clone();
        rest[s] = 0;
        // main term: f_s^a (f_r rest)
        let main = self.apply_f_mono(r, &rest);
        for (mm, c) in main.iter() {
            debug_assert!(Self::first_nonzero(mm).map_or(true, |t| t >= s));
            let mut m2 = mm.clone();
            m2[s] += a;
            vvec_add_term(&mut out, m2, c.clone());
        }
        // corrections: sum_k f_s^k [f_r, f_s] f_s^{a-1-k} rest
        let sr = (r + 1) as i32;
        let ss = (s + 1) as i32;
        if let Some(t_signed) = self.alg.sum_root(sr, ss) {
            debug_assert!(t_signed > 0);
            let t = (t_signed - 1) as usize;
            // [f_r, f_s] = N_{-r,-s} f_{r+s}
            let n = self.alg.structure_constant(-sr, -ss);
            let nq = Q::from_integer(n.into());
            for k in 0..a {
                let mut mk = rest.clone();
                mk[s] = a - 1 - k;
                let inner = self.apply_f_mono(t, &mk);
                for (mm, c) in inner.iter() {
                    debug_assert!(Self::first_nonzero(mm).map_or(true, |t2| t2 >= s));
                    let mut m2 = mm.clone();
                    m2[s] += k;
                    vvec_add_term(&mut out, m2, c * &nq);
                }
            }
        }
        out
    }

    pub fn apply_f(&self, r: usize, v: &VVec) -> VVec {
        let mut out = VVec::new();
        for (m, c) in v {
            vvec_scale_add(&mut out, c, &self.apply_f_mono(r, m));
        }
        out
    }

    /// Prepends f_s^k to every monomial of v; falls back to repeated
    /// straightened multiplication when a support monomial starts below s.
    fn prepend_power(&self, s: usize, k: u8, v: VVec) -> VVec {
        if k == 0 {
            return v;
        }
        let safe = v.keys().all(|m| Self::first_nonzero(m).map_or(true, |t| t >= s));
        if safe {
            let mut out = VVec::new();
            for (m, c) in v {
                let mut m2 = m;
                m2[s] += k;
                out.insert(m2, c);
            }
            out
        } else {
            let mut cur = v;
            for _ in 0..k {
                cur = self.apply_f(s, &cur);
            }
            cur
        }
    }

    /// e_{beta_r} acting on (monomial) v+, straightened.
    pub fn apply_e_mono(&self, r: usize, m: &Mono) -> Rc<VVec> {
        if let Some(hit) = self.e_cache.borrow().get(&(r, m.clone())) {
            return hit.clone();
        }
        let result = self.apply_e_mono_inner(r, m);
        let rc = Rc::new(result);
        self.e_cache.borrow_mut().insert((r, m.clone()), rc.clone());
        rc
    }

    fn apply_e_mono_inner(&self, r: usize, m: &Mono) -> VVec {
        let mut out = VVec::new();
        let Some(s) = Self::first_nonzero(m) else {
            return out; // e v+ = 0
        };
        let a = m[s];
        let mut rest = m.clone();
        rest[s] = 0;
        // main: f_s^a (e_r rest)
        let main = self.apply_e_mono(r, &rest);
        out = self.prepend_power(s, a, (*main).clone());
        // corrections
        if r == s {
            // sum_k f_s^k h f_s^{a-1-k} rest, h = coroot of beta_s
            let mut scalar = 0i64;
            let rest_wt = self.weight_of_mono(&rest);
            for k in 0..a {
                // weight of f_s^{a-1-k} rest v+
                let steps = (a - 1 - k) as i64;
                let mut wt = rest_wt.clone();
                for i in 0..wt.len() {
                    wt[i] -= steps * self.alg.datum.positive_roots[s].omega_coords[i];
                }
                scalar += self.coroot_pairing(&wt, s);
            }
            let mut m2 = m.clone();
            m2[s] -= 1;
            vvec_add_term(&mut out, m2, Q::from_integer(scalar.into()));
        } else {
            let sr = (r + 1) as i32;
            let ss = (s + 1) as i32;
            if let Some(d_signed) = self.alg.sum_root(sr, -ss) {
                // [e_r, f_s] = N_{r,-s} e_{r-s}  (or f_{s-r} when negative)
                let n = self.alg.structure_constant(sr, -ss);
                let nq = Q::from_integer(n.into());
                for k in 0..a {
                    let mut mk = rest.clone();
                    mk[s] = a - 1 - k;
                    let inner: VVec = if d_signed > 0 {
                        (*self.apply_e_mono((d_signed - 1) as usize, &mk)).clone()
                    } else {
                        (*self.apply_f_mono((-d_signed - 1) as usize, &mk)).clone()
                    };
                    let prepped = self.prepend_power(s, k, inner);
                    vvec_scale_add(&mut out, &nq, &prepped);
                }
            }
        }
        out
    }

    pub fn apply_e(&self, r: usize, v: &VVec) -> VVec {
        let mut out = VVec::new();
        for (m, c) in v {
            vvec_scale_add(&mut out, c, &self.apply_e_mono(r, m));
        }
        out
    }

    /// Contravariant pairing of two monomials of equal content.
    pub fn pair_mono(&self, m: &Mono, mp: &Mono) -> Q {
        debug_assert_eq!(self.weight_of_mono(m), self.weight_of_mono(mp));
        let Some(s) = Self::first_nonzero(m) else {
            return Q::one(); // <v+, v+> = 1
        };
        let key = (m.clone(), mp.clone());
        if let Some(hit) = self.pair_cache.borrow().get(&key) {
            return hit.clone();
        }
        let mut mt = m.clone();
        mt[s] -= 1;
        let ev = self.apply_e_mono(s, mp);
        let mut acc = Q::zero();
        for (m2, c) in ev.iter() {
            if !c.is_zero() {
                acc += c * self.pair_mono(&mt, m2);
            }
        }
        self.pair_cache.borrow_mut().insert(key, acc.clone());
        acc
    }

    /// Bilinear extension of the pairing to vectors (equal weight).
    pub fn pair_vec(&self, v: &VVec, w: &VVec) -> Q {
        let mut acc = Q::zero();
        for (m, c) in v {
            if c.is_zero() {
                continue;
            }
            for (mp, cp) in w {
                if cp.is_zero() {
                    continue;
                }
                acc += c * cp * self.pair_mono(m, mp);
            }
        }
        acc
    }

    /// f_r^{(k)} v = f_r^k v / k!
    pub fn apply_f_divided(&self, r: usize, k: u8, v: &VVec) -> VVec {
        let mut cur = v.clone();
        let mut fact = BigRational::one();
        for i in 1..=k {
            cur = self.apply_f(r, &cur);
            fact *= BigRational::from_integer((i as i64).into());
        }
        let inv = fact.recip();
        let mut out = VVec::new();
        vvec_scale_add(&mut out, &inv, &cur);
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::roots::{IsogenySpec, RootDatum, TypeLabel};

    fn engine_for(label: char, rank: usize, lambda: Vec<i64>) -> (ChevalleyAlgebra, Vec<i64>) {
        let d = RootDatum::new(
            TypeLabel::from_char(label).unwrap(),
            rank,
            IsogenySpec::SimplyConnected,
        )
        .unwrap();
        (ChevalleyAlgebra::new(d, 0).unwrap(), lambda)
    }

    #[test]
    fn sl2_shapovalov_values() {
        // <f^k v, f^k v> = k! * lambda (lambda-1) ... (lambda-k+1)
        let (alg, lam) = engine_for('A', 1, vec![5]);
        let eng = VermaEngine::new(&alg, lam);
        let mut v = eng.highest_weight_vector();
        let mut expected = Q::one();
        for k in 1..=7i64 {
            v = eng.apply_f(0, &v);
            expected *= Q::from_integer((k * (5 - k + 1)).into());
            let m: Mono = vec![k as u8];
            assert_eq!(eng.pair_mono(&m, &m), expected, "k = {k}");
        }
        // f^6 v+ has zero norm onward for lambda = 5 (the 6-dim module ends)
        let m6: Mono = vec![6];
        assert!(eng.pair_mono(&m6, &m6).is_zero());
    }

    #[test]
    fn pairing_is_symmetric_in_sl3() {
        let (alg, lam) = engine_for('A', 2, vec![2, 1]);
        let eng = VermaEngine::new(&alg, lam);
        // monomials of content alpha1 + alpha2: f_{a1} f_{a2} orderings and
        // the single f_{a1+a2}
        let np = alg.num_positive_roots();
        assert_eq!(np, 3);
        let mut m1: Mono = vec![0; np];
        m1[0] = 1;
        m1[1] = 1;
        let mut m2: Mono = vec![0; np];
        m2[2] = 1;
        assert_eq!(eng.pair_mono(&m1, &m2), eng.pair_mono(&m2, &m1));
        assert_eq!(eng.pair_mono(&m1, &m1), eng.pair_mono(&m1, &m1));
    }

    #[test]
    fn weights_track_content() {
        let (alg, lam) = engine_for('B', 2, vec![1, 1]);
        let eng = VermaEngine::new(&alg, lam.clone());
        let v = eng.highest_weight_vector();
        let pos = alg.datum.simple_root_position(0);
        let fv = eng.apply_f(pos, &v);
        for m in fv.keys() {
            let w = eng.weight_of_mono(m);
            let alpha1 = alg.datum.simple_root_omega(0);
            for i in 0..2 {
                assert_eq!(w[i], lam[i] - alpha1[i]);
            }
        }
    }

    #[test]
    fn e_then_f_on_highest_weight() {
        // e_i f_j v+ = delta_ij <lambda, alpha_i^vee> v+
        let (alg, lam) = engine_for('A', 2, vec![3, 4]);
        let eng = VermaEngine::new(&alg, lam);
        for i in 0..2 {
            for j in 0..2 {
                let pi = alg.datum.simple_root_position(i);
                let pj = alg.datum.simple_root_position(j);
                let fv = eng.apply_f(pj, &eng.highest_weight_vector());
                let efv = eng.apply_e(pi, &fv);
                if i == j {
                    let expect = if i == 0 { 3 } else { 4 };
                    assert_eq!(efv.len(), 1);
                    assert_eq!(
                        efv.get(&eng.empty_mono()).unwrap(),
                        &Q::from_integer(expect.into())
                    );
                } else {
                    assert!(efv.is_empty());
                }
            }
        }
    }
}
