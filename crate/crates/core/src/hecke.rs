//! The Hecke algebra over `ℤ[v, v⁻¹]` with `q = v⁻²`, the trace `τ` and the
//! graded ranks it predicts.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::coxeter::{CoxeterMatrix, CoxeterSystem, Generator, Order, Word};
use crate::error::{Error, Result};

/// A Laurent polynomial in `v` with integer coefficients.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly { coeffs: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::monomial(0, BigInt::one())
    }

    /// `c·v^k`.
    pub fn monomial(k: i64, c: BigInt) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(k, c);
        }
        LaurentPoly { coeffs }
    }

    /// `q^i = v^{-2i}`.
    pub fn q_pow(i: i64) -> Self {
        Self::monomial(-2 * i, BigInt::one())
    }

    pub fn q() -> Self {
        Self::q_pow(1)
    }

    /// `Σ c_i q^i` from `(i, c_i)` pairs.
    pub fn from_q_coeffs(coeffs: &[(i64, i64)]) -> Self {
        let mut out = Self::zero();
        for &(i, c) in coeffs {
            out = out.add(&Self::monomial(-2 * i, BigInt::from(c)));
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coefficient(&self, k: i64) -> BigInt {
        self.coeffs.get(&k).cloned().unwrap_or_default()
    }

    /// `(exponent of v, coefficient)` pairs in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.coeffs.iter().map(|(k, c)| (*k, c))
    }

    pub fn add(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut coeffs = self.coeffs.clone();
        for (k, c) in &other.coeffs {
            let e = coeffs.entry(*k).or_insert_with(BigInt::zero);
            *e += c;
            if e.is_zero() {
                coeffs.remove(k);
            }
        }
        LaurentPoly { coeffs }
    }

    pub fn neg(&self) -> LaurentPoly {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }

    pub fn sub(&self, other: &LaurentPoly) -> LaurentPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut coeffs: BTreeMap<i64, BigInt> = BTreeMap::new();
        for (a, c) in &self.coeffs {
            for (b, d) in &other.coeffs {
                *coeffs.entry(a + b).or_insert_with(BigInt::zero) += c * d;
            }
        }
        coeffs.retain(|_, c| !c.is_zero());
        LaurentPoly { coeffs }
    }

    /// Coefficients as a polynomial in `q`, indexed by the power of `q`.
    /// Fails if an odd power of `v` occurs.
    pub fn q_coefficients(&self) -> Result<BTreeMap<i64, BigInt>> {
        let mut out = BTreeMap::new();
        for (k, c) in &self.coeffs {
            if k % 2 != 0 {
                return Err(Error::Internal(format!("odd power v^{k} in {}", self.render_v())));
            }
            out.insert(-k / 2, c.clone());
        }
        Ok(out)
    }

    /// Highest power of `q`, if this is a nonzero polynomial in `q`.
    pub fn q_degree(&self) -> Option<i64> {
        self.coeffs.keys().next().map(|k| -k / 2)
    }

    /// Renders as a polynomial in `q`, e.g. `1 + 2q`, falling back to powers
    /// of `v` when an odd power is present.
    pub fn render_q(&self) -> String {
        match self.q_coefficients() {
            Ok(c) => render_terms(c.iter().map(|(i, c)| (*i, c)), "q"),
            Err(_) => self.render_v(),
        }
    }

    pub fn render_v(&self) -> String {
        render_terms(self.coeffs.iter().map(|(k, c)| (*k, c)), "v")
    }
}

fn render_terms<'a>(terms: impl Iterator<Item = (i64, &'a BigInt)>, var: &str) -> String {
    let mut out = String::new();
    for (k, c) in terms {
        let neg = c < &BigInt::zero();
        let abs = if neg { -c } else { c.clone() };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let body = match k {
            0 => format!("{abs}"),
            1 => String::from(var),
            _ => format!("{var}^{k}"),
        };
        if k != 0 && !abs.is_one() {
            out.push_str(&format!("{abs}"));
        }
        out.push_str(&body);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_q())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_q())
    }
}

/// An element `Σ p_x T_x` of the Hecke algebra, keyed by canonical words.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct HeckeElement {
    coeffs: BTreeMap<Word, LaurentPoly>,
}

impl HeckeElement {
    pub fn zero() -> Self {
        HeckeElement { coeffs: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::basis_canonical(Word::empty())
    }

    fn basis_canonical(w: Word) -> Self {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(w, LaurentPoly::one());
        HeckeElement { coeffs }
    }

    /// `T_w` for the element represented by the reduced word `w`.
    pub fn basis(sys: &CoxeterSystem, w: &[Generator]) -> Self {
        Self::basis_canonical(sys.canonical(w))
    }

    pub fn coefficient(&self, w: &Word) -> LaurentPoly {
        self.coeffs.get(w).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Word, &LaurentPoly)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn add_term(&mut self, w: Word, p: &LaurentPoly) {
        if p.is_zero() {
            return;
        }
        let sum = match self.coeffs.get(&w) {
            Some(old) => old.add(p),
            None => p.clone(),
        };
        if sum.is_zero() {
            self.coeffs.remove(&w);
        } else {
            self.coeffs.insert(w, sum);
        }
    }

    pub fn add(&self, other: &HeckeElement) -> HeckeElement {
        let mut out = self.clone();
        for (w, p) in &other.coeffs {
            out.add_term(w.clone(), p);
        }
        out
    }

    pub fn scale(&self, c: &LaurentPoly) -> HeckeElement {
        let mut out = HeckeElement::zero();
        for (w, p) in &self.coeffs {
            out.add_term(w.clone(), &p.mul(c));
        }
        out
    }

    /// `h · T_s`.
    pub fn mul_ts_right(&self, sys: &CoxeterSystem, s: Generator) -> HeckeElement {
        let q = LaurentPoly::q();
        let q_minus_one = q.sub(&LaurentPoly::one());
        let mut out = HeckeElement::zero();
        for (x, p) in &self.coeffs {
            let (xs, descent) = sys.step(x, s);
            if descent {
                out.add_term(xs, &p.mul(&q));
                out.add_term(x.clone(), &p.mul(&q_minus_one));
            } else {
                out.add_term(xs, p);
            }
        }
        out
    }

    /// `h · T_{s_1} ⋯ T_{s_k}`, a product of generators (not necessarily
    /// reduced).
    pub fn mul_word_right(&self, sys: &CoxeterSystem, w: &[Generator]) -> HeckeElement {
        w.iter().fold(self.clone(), |acc, &s| acc.mul_ts_right(sys, s))
    }

    pub fn mul(&self, sys: &CoxeterSystem, other: &HeckeElement) -> HeckeElement {
        let mut out = HeckeElement::zero();
        for (y, c) in &other.coeffs {
            out = out.add(&self.mul_word_right(sys, y).scale(c));
        }
        out
    }

    /// `(1 + T_{s_1}) ⋯ (1 + T_{s_n})`.
    pub fn product_one_plus(sys: &CoxeterSystem, word: &[Generator]) -> HeckeElement {
        let mut h = HeckeElement::one();
        for &s in word {
            h = h.add(&h.mul_ts_right(sys, s));
        }
        h
    }

    /// The coefficient of `T_1`.
    pub fn tau(&self) -> LaurentPoly {
        self.coefficient(&Word::empty())
    }

    pub fn render(&self, labels: Option<&[String]>) -> String {
        if self.is_zero() {
            return String::from("0");
        }
        let mut parts = Vec::new();
        for (w, p) in &self.coeffs {
            let name = if w.is_empty() { String::from("1") } else { w.render(labels) };
            parts.push(format!("({})T[{name}]", p.render_q()));
        }
        parts.join(" + ")
    }
}

impl fmt::Debug for HeckeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(None))
    }
}

/// `τ(T_x T_{y⁻¹})`.
pub fn tau_pairing(sys: &CoxeterSystem, x: &[Generator], y: &[Generator]) -> LaurentPoly {
    let y_inv: Vec<Generator> = y.iter().rev().copied().collect();
    HeckeElement::basis(sys, x)
        .mul(sys, &HeckeElement::basis(sys, &y_inv))
        .tau()
}

/// The `(i, n_i)` with `τ((1+T_{s_1})⋯(1+T_{s_n})) = Σ n_i q^i`.
pub fn graded_rank(sys: &CoxeterSystem, word: &[Generator]) -> Result<Vec<(i64, BigInt)>> {
    let t = HeckeElement::product_one_plus(sys, word).tau();
    Ok(t.q_coefficients()?.into_iter().collect())
}

/// `Z_0 = 1`, `Z_{2k-1} = T_sT_rT_s⋯` and `Z_{2k} = T_rT_sT_r⋯` (k factors),
/// as generator words for `s = 0`, `r = 1`.
pub fn z_word(j: usize) -> Word {
    if j == 0 {
        Word::empty()
    } else if j % 2 == 1 {
        Word::alternating(0, 1, j.div_ceil(2))
    } else {
        Word::alternating(1, 0, j / 2)
    }
}

/// Everything computed while checking the expansion
/// `(1+T_s)(1+T_r)⋯ (2n factors) = Σ_j p_{j,n} Z_j`.
#[derive(Clone, Debug)]
pub struct ZReport {
    pub m: Order,
    pub n: usize,
    /// `p_{j,n}` for `j = 0..4n`.
    pub coefficients: Vec<LaurentPoly>,
    /// `τ(Z_j)` in the group with the given `m`, for `j = 0..4m`; empty
    /// when `m` is infinite.
    pub tau_z: Vec<LaurentPoly>,
    /// `τ` of the full product, computed directly.
    pub tau_product: LaurentPoly,
}

/// Computes the `p_{j,n}` and checks the degree bounds
/// `deg p_{j,n} < n − ⌊j/4⌋`, `p_{4n−1,n} = 1` and, for finite `m`, the
/// values of `τ(Z_j)` and their consistency with `τ` of the product.
///
/// Products of the `Z_j` are distinct basis elements only in the infinite
/// dihedral group, so the coefficients are extracted there and then read in
/// the group with the requested `m` through the algebra map between the two.
pub fn verify_z_decomposition(m: Order, n: usize) -> Result<ZReport> {
    let fail = |j: usize, detail: String| Error::VerificationFailure {
        index: format!("j = {j}"),
        detail,
    };
    let universal = CoxeterSystem::new(CoxeterMatrix::dihedral(Order::Infinite)?);
    let word = Word::alternating(0, 1, 2 * n);
    let product = HeckeElement::product_one_plus(&universal, &word);
    let mut coefficients = Vec::with_capacity(4 * n);
    for j in 0..4 * n {
        coefficients.push(product.coefficient(&z_word(j)));
    }
    let accounted = (0..4 * n).filter(|&j| !coefficients[j].is_zero()).count();
    if accounted != product.iter().count() {
        return Err(fail(4 * n, String::from("product has terms outside Z_0..Z_{4n-1}")));
    }
    for (j, p) in coefficients.iter().enumerate() {
        let qc = p.q_coefficients().map_err(|e| fail(j, format!("{e}")))?;
        if qc.keys().any(|&i| i < 0) {
            return Err(fail(j, format!("p_{{{j},{n}}} = {p} is not a polynomial in q")));
        }
        if let Some(d) = p.q_degree() {
            let bound = n as i64 - (j / 4) as i64;
            if d >= bound {
                return Err(fail(j, format!("deg p_{{{j},{n}}} = {d} is not below {bound}")));
            }
        }
    }
    if n > 0 && coefficients[4 * n - 1] != LaurentPoly::one() {
        return Err(fail(
            4 * n - 1,
            format!("p_{{{},{n}}} = {} is not 1", 4 * n - 1, coefficients[4 * n - 1]),
        ));
    }

    let mut tau_z = Vec::new();
    let mut tau_product = product.tau();
    if let Some(mf) = m.finite() {
        let sys = CoxeterSystem::new(CoxeterMatrix::dihedral(m)?);
        let top = 4 * mf - 1;
        for j in 0..=top.max(4 * n - 1) {
            let t = HeckeElement::one().mul_word_right(&sys, &z_word(j)).tau();
            if j <= top {
                let expected = if j == 0 {
                    LaurentPoly::one()
                } else if j == top {
                    LaurentPoly::q_pow(mf as i64)
                } else {
                    LaurentPoly::zero()
                };
                if t != expected {
                    return Err(fail(j, format!("τ(Z_{j}) = {t}, expected {expected}")));
                }
            }
            tau_z.push(t);
        }
        tau_product = HeckeElement::product_one_plus(&sys, &word).tau();
        let mut via_z = LaurentPoly::zero();
        for (j, p) in coefficients.iter().enumerate() {
            via_z = via_z.add(&p.mul(&tau_z[j]));
        }
        if via_z != tau_product {
            return Err(fail(
                4 * n,
                format!("Σ p_j τ(Z_j) = {via_z} differs from τ of the product {tau_product}"),
            ));
        }
        tau_z.truncate(top + 1);
    }
    Ok(ZReport { m, n, coefficients, tau_z, tau_product })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn dihedral(m: u32) -> CoxeterSystem {
        CoxeterSystem::new(CoxeterMatrix::dihedral(Order::Finite(m)).unwrap())
    }

    fn qp(c: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_q_coeffs(c)
    }

    #[test]
    fn laurent_arithmetic() {
        let a = qp(&[(0, 1), (1, 2)]);
        assert_eq!(a.mul(&a), qp(&[(0, 1), (1, 4), (2, 4)]));
        assert!(a.sub(&a).is_zero());
        assert_eq!(a.render_q(), "1 + 2q");
        assert_eq!(qp(&[(2, -1), (0, 3)]).render_q(), "3 - q^2");
        assert_eq!(LaurentPoly::monomial(1, BigInt::from(2)).render_q(), "2v");
        assert!(LaurentPoly::monomial(1, BigInt::one()).q_coefficients().is_err());
    }

    #[test]
    fn quadratic_relation() {
        let sys = dihedral(3);
        let ts = HeckeElement::basis(&sys, &[0]);
        assert_eq!(HeckeElement::one().mul_ts_right(&sys, 0), ts);
        let sq = ts.mul_ts_right(&sys, 0);
        assert_eq!(sq.tau(), LaurentPoly::q());
        assert_eq!(sq.coefficient(&Word::from(&[0][..])), qp(&[(1, 1), (0, -1)]));
        let srs = HeckeElement::basis(&sys, &[0, 1]).mul_ts_right(&sys, 0);
        assert_eq!(srs, HeckeElement::basis(&sys, &[0, 1, 0]));
    }

    #[test]
    fn one_plus_squares() {
        let sys = dihedral(3);
        let p = HeckeElement::product_one_plus(&sys, &[0, 0]);
        let one_plus_q = qp(&[(0, 1), (1, 1)]);
        assert_eq!(p.tau(), one_plus_q);
        assert_eq!(p.coefficient(&Word::from(&[0][..])), one_plus_q);
        assert_eq!(p.iter().count(), 2);
    }

    #[test]
    fn srsr_product() {
        let sys = dihedral(3);
        let p = HeckeElement::product_one_plus(&sys, &[0, 1, 0, 1]);
        assert_eq!(p.tau(), qp(&[(0, 1), (1, 2)]));
        let rank = graded_rank(&sys, &[0, 1, 0, 1]).unwrap();
        assert_eq!(rank, vec![(0, BigInt::from(1)), (1, BigInt::from(2))]);
        assert_eq!(graded_rank(&sys, &[]).unwrap(), vec![(0, BigInt::from(1))]);
        assert_eq!(graded_rank(&sys, &[0]).unwrap(), vec![(0, BigInt::from(1))]);
    }

    #[test]
    fn tau_pairing_examples() {
        let sys = dihedral(3);
        assert_eq!(tau_pairing(&sys, &[0], &[0]), LaurentPoly::q());
        assert_eq!(tau_pairing(&sys, &[], &[]), LaurentPoly::one());
        assert!(tau_pairing(&sys, &[0, 1], &[1, 0]).is_zero());
        let w0 = [0, 1, 0];
        let t = HeckeElement::basis(&sys, &w0);
        assert_eq!(t.mul(&sys, &t).tau(), LaurentPoly::q_pow(3));
    }

    #[test]
    fn z_decomposition_small_cases() {
        for m in [2, 3, 4, 6] {
            let r = verify_z_decomposition(Order::Finite(m), 1).unwrap();
            assert_eq!(r.coefficients[3], LaurentPoly::one());
        }
        let r = verify_z_decomposition(Order::Finite(3), 3).unwrap();
        assert_eq!(r.tau_z[11], LaurentPoly::q_pow(3));
        assert!(r.tau_z[5].is_zero());
        assert!(verify_z_decomposition(Order::Infinite, 3).is_ok());
    }
}
