//! The polynomial ring `R` generated by one variable `x_s` per simple
//! reflection, the reflection action on it and the splitting
//! `R = R^s ⊕ x_s R^s`.
//!
//! Variables have degree 2, so a monomial of total exponent `e` sits in
//! degree `2e`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cell::RefCell;
use core::fmt;
use core::str::FromStr;

use crate::coxeter::{CoxeterMatrix, Generator, Order, Word, MAX_RANK};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

const TOTAL_SHIFT: u32 = 56;

const fn var_shift(s: usize) -> u32 {
    8 * (MAX_RANK - 1 - s) as u32
}

/// A monomial `x_0^{e_0} ⋯ x_6^{e_6}` packed into a word.
///
/// The top byte holds the total exponent and the remaining bytes the
/// exponents of `x_0, …, x_6` from most to least significant, so comparing
/// the packed integers is exactly graded-lexicographic comparison and
/// multiplying monomials is integer addition.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial(u64);

impl Monomial {
    pub const ONE: Monomial = Monomial(0);

    pub fn var(s: Generator) -> Self {
        debug_assert!(s < MAX_RANK);
        Monomial((1u64 << TOTAL_SHIFT) | (1u64 << var_shift(s)))
    }

    pub fn from_exponents(exps: &[u32]) -> Self {
        assert!(exps.len() <= MAX_RANK, "too many variables");
        let mut bits = 0u64;
        let mut total = 0u32;
        for (s, &e) in exps.iter().enumerate() {
            assert!(e < 256, "exponent too large");
            bits |= (e as u64) << var_shift(s);
            total += e;
        }
        assert!(total < 256, "total degree too large");
        Monomial(bits | ((total as u64) << TOTAL_SHIFT))
    }

    /// Sum of the exponents; the degree in `R` is twice this.
    pub fn total(self) -> u32 {
        (self.0 >> TOTAL_SHIFT) as u32
    }

    pub fn degree(self) -> i64 {
        2 * self.total() as i64
    }

    pub fn exponent(self, s: Generator) -> u32 {
        ((self.0 >> var_shift(s)) & 0xff) as u32
    }

    pub fn exponents(self, rank: usize) -> Vec<u32> {
        (0..rank).map(|s| self.exponent(s)).collect()
    }

    pub fn mul(self, other: Monomial) -> Monomial {
        debug_assert!(self.total() + other.total() < 256);
        Monomial(self.0 + other.0)
    }

    /// `self / x_s`, if `x_s` divides `self`.
    pub fn div_var(self, s: Generator) -> Option<Monomial> {
        if self.exponent(s) == 0 {
            None
        } else {
            Some(Monomial(self.0 - Monomial::var(s).0))
        }
    }

    fn fmt_with(self, f: &mut dyn fmt::Write, labels: Option<&[String]>) -> fmt::Result {
        let mut first = true;
        for s in 0..MAX_RANK {
            let e = self.exponent(s);
            if e == 0 {
                continue;
            }
            if !first {
                f.write_char('*')?;
            }
            first = false;
            match labels.and_then(|l| l.get(s)) {
                Some(name) => write!(f, "x_{name}")?,
                None => write!(f, "x{s}")?,
            }
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if *self == Monomial::ONE {
            return f.write_str("1");
        }
        self.fmt_with(f, None)
    }
}

/// A polynomial with exact rational coefficients.
///
/// Terms are kept sorted by decreasing monomial with no zero coefficients,
/// so equality is structural.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Polynomial {
    terms: Vec<(Monomial, Scalar)>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Scalar::ONE)
    }

    pub fn constant(c: Scalar) -> Self {
        Self::term(Monomial::ONE, c)
    }

    pub fn var(s: Generator) -> Self {
        Self::term(Monomial::var(s), Scalar::ONE)
    }

    pub fn term(m: Monomial, c: Scalar) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            Polynomial { terms: vec![(m, c)] }
        }
    }

    /// Builds a polynomial from arbitrary terms, merging duplicates.
    pub fn from_terms(mut terms: Vec<(Monomial, Scalar)>) -> Self {
        terms.sort_by(|a, b| b.0.cmp(&a.0));
        let mut out: Vec<(Monomial, Scalar)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some(last) if last.0 == m => last.1 += &c,
                _ => out.push((m, c)),
            }
        }
        out.retain(|t| !t.1.is_zero());
        Polynomial { terms: out }
    }

    pub fn terms(&self) -> &[(Monomial, Scalar)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| *m == Monomial::ONE)
    }

    pub fn constant_term(&self) -> Scalar {
        match self.terms.last() {
            Some((m, c)) if *m == Monomial::ONE => c.clone(),
            _ => Scalar::ZERO,
        }
    }

    pub fn coefficient(&self, m: Monomial) -> Scalar {
        match self.terms.binary_search_by(|t| m.cmp(&t.0)) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => Scalar::ZERO,
        }
    }

    /// Degree of the leading term, or `None` for zero.
    pub fn degree(&self) -> Option<i64> {
        self.terms.first().map(|t| t.0.degree())
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some(t) => self.terms.iter().all(|u| u.0.total() == t.0.total()),
        }
    }

    /// The homogeneous component of the given degree.
    pub fn component(&self, degree: i64) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().filter(|t| t.0.degree() == degree).cloned().collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: Monomial) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(n, a)| (n.mul(m), a.clone())).collect(),
        }
    }

    /// `self + c·other`, merging the sorted term lists.
    pub fn add_scaled(&self, other: &Polynomial, c: &Scalar) -> Polynomial {
        if c.is_zero() || other.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() || j < b.len() {
            if j == b.len() || (i < a.len() && a[i].0 > b[j].0) {
                out.push(a[i].clone());
                i += 1;
            } else if i == a.len() || b[j].0 > a[i].0 {
                out.push((b[j].0, &b[j].1 * c));
                j += 1;
            } else {
                let s = &a[i].1 + &(&b[j].1 * c);
                if !s.is_zero() {
                    out.push((a[i].0, s));
                }
                i += 1;
                j += 1;
            }
        }
        Polynomial { terms: out }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        self.add_scaled(other, &Scalar::ONE)
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add_scaled(other, &Scalar::from_int(-1))
    }

    pub fn neg(&self) -> Polynomial {
        self.scale(&Scalar::from_int(-1))
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero();
        }
        if other.terms.len() == 1 {
            let (m, c) = &other.terms[0];
            return self.mul_monomial(*m).scale(c);
        }
        if self.terms.len() == 1 {
            return other.mul(self);
        }
        let mut acc: BTreeMap<Monomial, Scalar> = BTreeMap::new();
        for (m, a) in &self.terms {
            for (n, b) in &other.terms {
                let p = a * b;
                acc.entry(m.mul(*n)).and_modify(|c| *c += &p).or_insert(p);
            }
        }
        Polynomial {
            terms: acc.into_iter().rev().filter(|t| !t.1.is_zero()).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut out = Polynomial::one();
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// Exact division by the variable `x_s`; `None` if some term is not
    /// divisible.
    pub fn div_var(&self, s: Generator) -> Option<Polynomial> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            terms.push((m.div_var(s)?, c.clone()));
        }
        Some(Polynomial { terms })
    }

    /// Renders with variable names `x_<label>` (or `x<i>` without labels).
    pub fn render(&self, labels: Option<&[String]>) -> String {
        if self.is_zero() {
            return String::from("0");
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if *m == Monomial::ONE {
                out.push_str(&format!("{abs}"));
            } else {
                if !abs.is_one() {
                    out.push_str(&format!("{abs}*"));
                }
                m.fmt_with(&mut out, labels).expect("writing to a string");
            }
        }
        out
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(None))
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(None))
    }
}

impl From<Scalar> for Polynomial {
    fn from(c: Scalar) -> Self {
        Polynomial::constant(c)
    }
}

/// Parse error for the textual polynomial format.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("cannot parse polynomial: {0}")]
pub struct ParsePolynomialError(pub String);

/// Parses the output of [`Polynomial::render`] without labels, e.g.
/// `x0^2 - 1/2*x0*x1 + 3`.
impl FromStr for Polynomial {
    type Err = ParsePolynomialError;

    fn from_str(s: &str) -> core::result::Result<Self, Self::Err> {
        let err = || ParsePolynomialError(String::from(s));
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(err());
        }
        let mut terms = Vec::new();
        let mut rest = compact.as_str();
        while !rest.is_empty() {
            let neg = rest.starts_with('-');
            if rest.starts_with('-') || rest.starts_with('+') {
                rest = &rest[1..];
            }
            let end = rest[1.min(rest.len())..]
                .find(['+', '-'])
                .map(|i| i + 1)
                .unwrap_or(rest.len());
            let term = &rest[..end];
            rest = &rest[end..];
            let mut coeff = Scalar::ONE;
            let mut exps = [0u32; MAX_RANK];
            for factor in term.split('*') {
                if let Some(v) = factor.strip_prefix('x') {
                    let (idx, e) = match v.split_once('^') {
                        Some((i, e)) => (i, e.parse::<u32>().map_err(|_| err())?),
                        None => (v, 1),
                    };
                    let idx: usize = idx.parse().map_err(|_| err())?;
                    if idx >= MAX_RANK {
                        return Err(err());
                    }
                    exps[idx] += e;
                } else {
                    let c: Scalar = factor.parse().map_err(|_| err())?;
                    coeff = &coeff * &c;
                }
            }
            if neg {
                coeff = -coeff;
            }
            terms.push((Monomial::from_exponents(&exps), coeff));
        }
        Ok(Polynomial::from_terms(terms))
    }
}

/// Number of monomials of degree `d` in `rank` variables of degree 2.
pub fn graded_dimension(rank: usize, d: i64) -> usize {
    if d < 0 || d % 2 != 0 {
        return 0;
    }
    let e = (d / 2) as usize;
    // binomial(e + rank - 1, rank - 1)
    let mut num: u128 = 1;
    for i in 0..rank.saturating_sub(1) {
        num = num * (e + 1 + i) as u128 / (i + 1) as u128;
    }
    if rank == 0 {
        return usize::from(e == 0);
    }
    num as usize
}

/// All monomials of degree `d` in `rank` variables, in decreasing order.
pub fn monomials_of_degree(rank: usize, d: i64) -> Vec<Monomial> {
    if d < 0 || d % 2 != 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut exps = vec![0u32; rank];
    fn rec(pos: usize, left: u32, exps: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if pos + 1 == exps.len() {
            exps[pos] = left;
            out.push(Monomial::from_exponents(exps));
            return;
        }
        for e in (0..=left).rev() {
            exps[pos] = e;
            rec(pos + 1, left - e, exps, out);
        }
    }
    if rank == 0 {
        if d == 0 {
            out.push(Monomial::ONE);
        }
        return out;
    }
    rec(0, (d / 2) as u32, &mut exps, &mut out);
    out
}

/// Default Cartan entries `(a(s,t), a(t,s))` for `s < t`.
pub fn default_cartan_pair(m: Order) -> (i64, i64) {
    match m {
        Order::Finite(2) => (0, 0),
        Order::Finite(3) => (-1, -1),
        Order::Finite(4) => (-1, -2),
        Order::Finite(6) => (-1, -3),
        _ => (-2, -2),
    }
}

fn compatibility_product(m: Order) -> Option<i64> {
    match m {
        Order::Finite(2) => Some(0),
        Order::Finite(3) => Some(1),
        Order::Finite(4) => Some(2),
        Order::Finite(6) => Some(3),
        Order::Infinite => Some(4),
        _ => None,
    }
}

/// A realization of the Coxeter group on the span of the variables:
/// `s · x_t = x_t − a(s,t) x_s`.
///
/// Carries memo tables for the action and the splitting of monomials.
#[derive(Debug)]
pub struct CartanRealization {
    matrix: CoxeterMatrix,
    a: Vec<Vec<Scalar>>,
    images: Vec<Polynomial>,
    action_cache: RefCell<BTreeMap<(Generator, Monomial), Polynomial>>,
    split_cache: RefCell<BTreeMap<(Generator, Monomial), (Polynomial, Polynomial)>>,
}

impl Clone for CartanRealization {
    fn clone(&self) -> Self {
        CartanRealization::new(self.matrix.clone(), self.a.clone())
            .expect("a validated realization stays valid")
    }
}

impl PartialEq for CartanRealization {
    fn eq(&self, other: &Self) -> bool {
        self.matrix == other.matrix && self.a == other.a
    }
}

impl CartanRealization {
    /// The integral default realization of a Coxeter matrix.
    pub fn default_for(matrix: &CoxeterMatrix) -> Self {
        Self::with_overrides(matrix, &[]).expect("default realizations are valid")
    }

    /// The default realization with some entries `a(i,j)` replaced.
    pub fn with_overrides(
        matrix: &CoxeterMatrix,
        overrides: &[(Generator, Generator, Scalar)],
    ) -> Result<Self> {
        let n = matrix.rank();
        let mut a = vec![vec![Scalar::ZERO; n]; n];
        for s in 0..n {
            a[s][s] = Scalar::from_int(2);
            for t in s + 1..n {
                let (x, y) = default_cartan_pair(matrix.order(s, t));
                a[s][t] = Scalar::from_int(x);
                a[t][s] = Scalar::from_int(y);
            }
        }
        for (i, j, v) in overrides {
            if *i >= n || *j >= n {
                return Err(Error::InvalidRealization(format!(
                    "entry ({i},{j}) out of range for rank {n}"
                )));
            }
            a[*i][*j] = v.clone();
        }
        Self::new(matrix.clone(), a)
    }

    /// Validates the diagonal, the pairwise compatibility condition and the
    /// braid relations on the generators.
    pub fn new(matrix: CoxeterMatrix, a: Vec<Vec<Scalar>>) -> Result<Self> {
        let n = matrix.rank();
        if a.len() != n || a.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidRealization(format!("matrix must be {n}x{n}")));
        }
        for s in 0..n {
            if a[s][s] != Scalar::from_int(2) {
                return Err(Error::InvalidRealization(format!("a({s},{s}) must be 2")));
            }
            for t in 0..n {
                if s == t {
                    continue;
                }
                let m = matrix.order(s, t);
                let want = compatibility_product(m).expect("validated Coxeter matrix");
                if &a[s][t] * &a[t][s] != Scalar::from_int(want) {
                    return Err(Error::InvalidRealization(format!(
                        "a({s},{t})·a({t},{s}) = {} but m({s},{t}) = {m} requires {want}",
                        &a[s][t] * &a[t][s]
                    )));
                }
                if want == 0 && !(a[s][t].is_zero() && a[t][s].is_zero()) {
                    return Err(Error::InvalidRealization(format!(
                        "a({s},{t}) and a({t},{s}) must both vanish for m = 2"
                    )));
                }
            }
        }
        let mut images = Vec::with_capacity(n * n);
        for s in 0..n {
            for t in 0..n {
                // s · x_t = x_t − a(s,t) x_s
                let p = Polynomial::var(t).add_scaled(&Polynomial::var(s), &-&a[s][t]);
                images.push(p);
            }
        }
        let cr = CartanRealization {
            matrix,
            a,
            images,
            action_cache: RefCell::new(BTreeMap::new()),
            split_cache: RefCell::new(BTreeMap::new()),
        };
        if let Some(msg) = cr.braid_failure() {
            return Err(Error::InvalidRealization(msg));
        }
        Ok(cr)
    }

    /// Builds without the braid check, for exercising the checks themselves.
    pub fn new_unchecked(matrix: CoxeterMatrix, a: Vec<Vec<Scalar>>) -> Self {
        let n = matrix.rank();
        let mut images = Vec::with_capacity(n * n);
        for s in 0..n {
            for t in 0..n {
                images.push(Polynomial::var(t).add_scaled(&Polynomial::var(s), &-&a[s][t]));
            }
        }
        CartanRealization {
            matrix,
            a,
            images,
            action_cache: RefCell::new(BTreeMap::new()),
            split_cache: RefCell::new(BTreeMap::new()),
        }
    }

    /// First braid relation that fails on some variable, if any.
    pub fn braid_failure(&self) -> Option<String> {
        let n = self.rank();
        for s in 0..n {
            if self.act_gen(s, &self.act_gen(s, &Polynomial::var(s))) != Polynomial::var(s)
                || self.act_gen(s, &Polynomial::var(s)) != Polynomial::var(s).neg()
            {
                return Some(format!("{s} does not act as a reflection"));
            }
            for t in s + 1..n {
                let Some(m) = self.matrix.order(s, t).finite() else {
                    continue;
                };
                let lhs = Word::alternating(s, t, m);
                let rhs = Word::alternating(t, s, m);
                for u in 0..n {
                    let x = Polynomial::var(u);
                    if self.act(&lhs, &x) != self.act(&rhs, &x) {
                        return Some(format!(
                            "braid relation of length {m} between {s} and {t} fails on x{u}"
                        ));
                    }
                }
            }
        }
        None
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn coxeter_matrix(&self) -> &CoxeterMatrix {
        &self.matrix
    }

    pub fn entry(&self, s: Generator, t: Generator) -> &Scalar {
        &self.a[s][t]
    }

    pub fn entries(&self) -> &[Vec<Scalar>] {
        &self.a
    }

    fn act_monomial(&self, s: Generator, m: Monomial) -> Polynomial {
        if let Some(p) = self.action_cache.borrow().get(&(s, m)) {
            return p.clone();
        }
        let n = self.rank();
        let mut p = Polynomial::one();
        for t in 0..n {
            let e = m.exponent(t);
            if e > 0 {
                p = p.mul(&self.images[s * n + t].pow(e));
            }
        }
        self.action_cache.borrow_mut().insert((s, m), p.clone());
        p
    }

    /// `s · p`.
    pub fn act_gen(&self, s: Generator, p: &Polynomial) -> Polynomial {
        let mut acc: BTreeMap<Monomial, Scalar> = BTreeMap::new();
        for (m, c) in p.terms() {
            for (n, d) in self.act_monomial(s, *m).terms() {
                let v = c * d;
                acc.entry(*n).and_modify(|x| *x += &v).or_insert(v);
            }
        }
        Polynomial::from_terms(acc.into_iter().collect())
    }

    /// `w · p`; the rightmost letter acts first.
    pub fn act(&self, w: &[Generator], p: &Polynomial) -> Polynomial {
        let mut out = p.clone();
        for &s in w.iter().rev() {
            out = self.act_gen(s, &out);
        }
        out
    }

    fn split_monomial(&self, s: Generator, m: Monomial) -> Result<(Polynomial, Polynomial)> {
        if let Some(hit) = self.split_cache.borrow().get(&(s, m)) {
            return Ok(hit.clone());
        }
        let p = Polynomial::term(m, Scalar::ONE);
        let sp = self.act_monomial(s, m);
        let half = Scalar::new(1, 2);
        let inv = p.add(&sp).scale(&half);
        let anti = p.sub(&sp).scale(&half);
        let quotient = anti.div_var(s).ok_or_else(|| {
            Error::Internal(format!("({m:?} - s{s}·{m:?})/2 is not divisible by x{s}"))
        })?;
        self.split_cache.borrow_mut().insert((s, m), (inv.clone(), quotient.clone()));
        Ok((inv, quotient))
    }

    /// `(P_s(p), I′_s(p))` with `p = P_s(p) + x_s·I′_s(p)`, both parts
    /// `s`-invariant.
    pub fn decompose(&self, s: Generator, p: &Polynomial) -> Result<(Polynomial, Polynomial)> {
        let mut inv: BTreeMap<Monomial, Scalar> = BTreeMap::new();
        let mut quo: BTreeMap<Monomial, Scalar> = BTreeMap::new();
        for (m, c) in p.terms() {
            let (a, b) = self.split_monomial(s, *m)?;
            for (n, d) in a.terms() {
                let v = c * d;
                inv.entry(*n).and_modify(|x| *x += &v).or_insert(v);
            }
            for (n, d) in b.terms() {
                let v = c * d;
                quo.entry(*n).and_modify(|x| *x += &v).or_insert(v);
            }
        }
        Ok((
            Polynomial::from_terms(inv.into_iter().collect()),
            Polynomial::from_terms(quo.into_iter().collect()),
        ))
    }

    /// `(p + s·p)/2`.
    pub fn p_s(&self, s: Generator, p: &Polynomial) -> Polynomial {
        p.add(&self.act_gen(s, p)).scale(&Scalar::new(1, 2))
    }

    /// `(p − s·p)/2`.
    pub fn i_s(&self, s: Generator, p: &Polynomial) -> Polynomial {
        p.sub(&self.act_gen(s, p)).scale(&Scalar::new(1, 2))
    }

    /// `(p − s·p)/(2x_s)`.
    pub fn iprime_s(&self, s: Generator, p: &Polynomial) -> Result<Polynomial> {
        self.i_s(s, p).div_var(s).ok_or_else(|| {
            Error::Internal(format!("(p - s{s}·p)/2 is not divisible by x{s} for p = {p}"))
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a2() -> CartanRealization {
        CartanRealization::default_for(&CoxeterMatrix::dihedral(Order::Finite(3)).unwrap())
    }

    fn x(s: usize) -> Polynomial {
        Polynomial::var(s)
    }

    fn c(n: i64, d: i64) -> Polynomial {
        Polynomial::constant(Scalar::new(n, d))
    }

    #[test]
    fn monomial_order_is_grlex() {
        let x0 = Monomial::var(0);
        let x1 = Monomial::var(1);
        assert!(x0 > x1);
        assert!(x1.mul(x1) > x0);
        assert!(x0.mul(x1) > x1.mul(x1));
        assert_eq!(x0.mul(x1).div_var(0), Some(x1));
        assert_eq!(x1.div_var(0), None);
        assert_eq!(Monomial::from_exponents(&[2, 1]).degree(), 6);
    }

    #[test]
    fn arithmetic() {
        let p = x(0).add(&x(1));
        let sq = p.mul(&p);
        let expected = x(0).pow(2).add(&x(0).mul(&x(1)).scale(&Scalar::from_int(2))).add(&x(1).pow(2));
        assert_eq!(sq, expected);
        assert!(p.sub(&p).is_zero());
        assert_eq!(sq.degree(), Some(4));
        assert!(sq.is_homogeneous());
        assert!(!sq.add(&Polynomial::one()).is_homogeneous());
        assert_eq!(sq.add(&c(3, 2)).constant_term(), Scalar::new(3, 2));
    }

    #[test]
    fn render_and_parse() {
        let p = x(0).pow(2).sub(&x(0).mul(&x(1)).scale(&Scalar::new(1, 2))).add(&c(-3, 1));
        assert_eq!(p.render(None), "x0^2 - 1/2*x0*x1 - 3");
        assert_eq!(p.render(None).parse::<Polynomial>().unwrap(), p);
        assert_eq!("0".parse::<Polynomial>().unwrap(), Polynomial::zero());
        assert_eq!("-x1".parse::<Polynomial>().unwrap(), x(1).neg());
        let labels = [String::from("s"), String::from("r")];
        assert_eq!(x(0).mul(&x(1)).render(Some(&labels)), "x_s*x_r");
        assert!("x0^".parse::<Polynomial>().is_err());
    }

    #[test]
    fn action_examples() {
        let cr = a2();
        assert_eq!(cr.act(&[0], &x(0)), x(0).neg());
        assert_eq!(cr.act(&[0], &x(1)), x(1).add(&x(0)));
        let p = x(0).mul(&x(1)).add(&x(1).pow(3));
        assert_eq!(cr.act(&[0, 0], &p), p);
        // leftmost letter acts last: (s r)·x_s = s·(x_s + x_r) = x_r
        assert_eq!(cr.act(&[0, 1], &x(0)), x(1));
    }

    #[test]
    fn operator_examples() {
        let cr = a2();
        assert!(cr.p_s(0, &x(0)).is_zero());
        assert_eq!(cr.p_s(0, &x(0).pow(2)), x(0).pow(2));
        assert_eq!(cr.p_s(0, &x(1)), x(1).add(&x(0).scale(&Scalar::new(1, 2))));
        assert_eq!(cr.i_s(0, &x(0)), x(0));
        assert!(cr.i_s(0, &Polynomial::one()).is_zero());
        let xsxt = x(0).mul(&x(1));
        assert_eq!(cr.i_s(0, &xsxt), xsxt.add(&x(0).pow(2).scale(&Scalar::new(1, 2))));
        assert_eq!(cr.iprime_s(0, &x(0)).unwrap(), Polynomial::one());
        assert!(cr.iprime_s(0, &Polynomial::one()).unwrap().is_zero());
        assert_eq!(cr.iprime_s(0, &x(1)).unwrap(), c(-1, 2));
    }

    #[test]
    fn decompose_examples() {
        let cr = a2();
        assert_eq!(cr.decompose(0, &Polynomial::zero()).unwrap(), (Polynomial::zero(), Polynomial::zero()));
        assert_eq!(cr.decompose(0, &x(0).pow(3)).unwrap(), (Polynomial::zero(), x(0).pow(2)));
        let (a, b) = cr.decompose(0, &x(1)).unwrap();
        assert_eq!(a, x(1).add(&x(0).scale(&Scalar::new(1, 2))));
        assert_eq!(b, c(-1, 2));
    }

    #[test]
    fn default_realizations_satisfy_braids() {
        for m in [2, 3, 4, 6] {
            let cm = CoxeterMatrix::dihedral(Order::Finite(m)).unwrap();
            let cr = CartanRealization::default_for(&cm);
            assert!(cr.braid_failure().is_none(), "m = {m}");
        }
        let cm = CoxeterMatrix::dihedral(Order::Infinite).unwrap();
        assert!(CartanRealization::default_for(&cm).braid_failure().is_none());
    }

    #[test]
    fn bad_realizations_rejected() {
        let cm = CoxeterMatrix::dihedral(Order::Finite(3)).unwrap();
        assert!(CartanRealization::with_overrides(&cm, &[(0, 1, Scalar::from_int(-2))]).is_err());
        let cm4 = CoxeterMatrix::dihedral(Order::Finite(4)).unwrap();
        // a(s,t)a(t,s) = 2 is satisfied with the roles swapped.
        assert!(CartanRealization::with_overrides(
            &cm4,
            &[(0, 1, Scalar::from_int(-2)), (1, 0, Scalar::from_int(-1))]
        )
        .is_ok());
        assert!(CartanRealization::with_overrides(&cm4, &[(0, 1, Scalar::new(-1, 2))]).is_err());
    }

    #[test]
    fn graded_dimensions() {
        assert_eq!(graded_dimension(2, 0), 1);
        assert_eq!(graded_dimension(2, 4), 3);
        assert_eq!(graded_dimension(3, 4), 6);
        assert_eq!(graded_dimension(3, -2), 0);
        assert_eq!(graded_dimension(3, 3), 0);
        for r in 1..4 {
            for d in 0..5 {
                assert_eq!(monomials_of_degree(r, 2 * d).len(), graded_dimension(r, 2 * d));
            }
        }
    }
}
