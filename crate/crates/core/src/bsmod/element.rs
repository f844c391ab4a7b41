use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use super::context::Context;
use crate::coxeter::{Generator, Word};
use crate::error::{Error, Result};
use crate::poly::{Monomial, Polynomial};
use crate::scalar::Scalar;

/// A normal-basis vector: bit `p` is the exponent at word position `p`.
pub type Mask = u64;

/// Left coefficients on the normal basis; zero coefficients are never stored.
pub type Coeffs = BTreeMap<Mask, Polynomial>;

pub(crate) fn add_term(c: &mut Coeffs, mask: Mask, p: &Polynomial) {
    if p.is_zero() {
        return;
    }
    match c.get_mut(&mask) {
        Some(old) => {
            let sum = old.add(p);
            if sum.is_zero() {
                c.remove(&mask);
            } else {
                *old = sum;
            }
        }
        None => {
            c.insert(mask, p.clone());
        }
    }
}

pub(crate) fn add_scaled_coeffs(acc: &mut Coeffs, other: &Coeffs, factor: &Polynomial) {
    if factor.is_zero() {
        return;
    }
    let unit = factor == &Polynomial::one();
    for (m, p) in other {
        if unit {
            add_term(acc, *m, p);
        } else {
            add_term(acc, *m, &p.mul(factor));
        }
    }
}

/// `"1011"` for a mask over `len` positions, position 0 first.
pub fn mask_string(mask: Mask, len: usize) -> String {
    (0..len).map(|p| if mask >> p & 1 == 1 { '1' } else { '0' }).collect()
}

/// Inverse of [`mask_string`].
pub fn parse_mask(s: &str) -> Result<Mask> {
    if s.len() > 64 {
        return Err(Error::PreconditionViolation(format!("bit string too long: {s}")));
    }
    let mut m = 0;
    for (p, ch) in s.chars().enumerate() {
        match ch {
            '0' => {}
            '1' => m |= 1 << p,
            _ => return Err(Error::PreconditionViolation(format!("bad bit string {s:?}"))),
        }
    }
    Ok(m)
}

pub(crate) fn popcount(m: Mask) -> i64 {
    m.count_ones() as i64
}

/// An element of `θ_{t_1}⋯θ_{t_k}` in the normal basis.
#[derive(Clone, PartialEq, Eq)]
pub struct BSElement {
    word: Word,
    coeffs: Coeffs,
}

impl BSElement {
    pub fn zero(word: Word) -> Self {
        BSElement { word, coeffs: Coeffs::new() }
    }

    /// `p · (1 ⊗ x^{mask})`.
    pub fn basis(word: Word, mask: Mask, p: Polynomial) -> Self {
        let mut coeffs = Coeffs::new();
        add_term(&mut coeffs, mask, &p);
        BSElement { word, coeffs }
    }

    /// `1 ⊗ x_{t_1} ⊗ ⋯ ⊗ x_{t_k}` (the element `1` of `R` for the empty word).
    pub fn normal_element(word: &Word) -> Self {
        let mask = full_mask(word.len());
        Self::basis(word.clone(), mask, Polynomial::one())
    }

    pub fn from_coeffs(word: Word, mut coeffs: Coeffs) -> Self {
        coeffs.retain(|_, p| !p.is_zero());
        BSElement { word, coeffs }
    }

    /// An element of `R`.
    pub fn from_polynomial(p: Polynomial) -> Self {
        Self::basis(Word::empty(), 0, p)
    }

    /// Normal form of `Σ p_0 ⊗ p_1 ⊗ ⋯ ⊗ p_k` over `word`.
    pub fn normalize(ctx: &Context, word: &Word, raw: &[Vec<Polynomial>]) -> Result<Self> {
        let mut out = BSElement::zero(word.clone());
        for tuple in raw {
            if tuple.len() != word.len() + 1 {
                return Err(Error::PreconditionViolation(format!(
                    "tensor of {} factors over a word of length {}",
                    tuple.len(),
                    word.len()
                )));
            }
            // p_0 ⊗ ⋯ ⊗ p_k = (((p_0 ⊗ 1 ⊗ ⋯) · …): push factors in from the left.
            let mut partial = BSElement::basis(Word::empty(), 0, tuple[0].clone());
            for (pos, p) in tuple[1..].iter().enumerate() {
                let w = word.slice(0, pos + 1);
                let mut next = Coeffs::new();
                for (mask, c) in &partial.coeffs {
                    ctx.settle_into(&w, pos + 1, *mask, c, p, &mut next);
                }
                partial = BSElement { word: w, coeffs: next };
            }
            out = out.add(&partial);
        }
        Ok(out)
    }

    pub fn word(&self) -> &Word {
        &self.word
    }

    pub fn coeffs(&self) -> &Coeffs {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Coeffs {
        self.coeffs
    }

    pub fn coefficient(&self, mask: Mask) -> Polynomial {
        self.coeffs.get(&mask).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of the normal element.
    pub fn normal_part(&self) -> Polynomial {
        self.coefficient(full_mask(self.word.len()))
    }

    pub fn add(&self, other: &BSElement) -> BSElement {
        debug_assert_eq!(self.word, other.word);
        let mut coeffs = self.coeffs.clone();
        for (m, p) in &other.coeffs {
            add_term(&mut coeffs, *m, p);
        }
        BSElement { word: self.word.clone(), coeffs }
    }

    pub fn sub(&self, other: &BSElement) -> BSElement {
        self.add(&other.scale(&Scalar::from_int(-1)))
    }

    pub fn scale(&self, c: &Scalar) -> BSElement {
        let coeffs = if c.is_zero() {
            Coeffs::new()
        } else {
            self.coeffs.iter().map(|(m, p)| (*m, p.scale(c))).collect()
        };
        BSElement { word: self.word.clone(), coeffs }
    }

    pub fn left_mul(&self, p: &Polynomial) -> BSElement {
        let mut coeffs = Coeffs::new();
        add_scaled_coeffs(&mut coeffs, &self.coeffs, p);
        BSElement { word: self.word.clone(), coeffs }
    }

    pub fn right_mul(&self, ctx: &Context, p: &Polynomial) -> BSElement {
        let mut coeffs = Coeffs::new();
        for (mask, c) in &self.coeffs {
            let img = ctx.basis_right_mul(&self.word, *mask, p);
            add_scaled_coeffs(&mut coeffs, &img, c);
        }
        BSElement { word: self.word.clone(), coeffs }
    }

    /// Degree of a homogeneous element, `None` for zero or inhomogeneous.
    pub fn degree(&self) -> Option<i64> {
        let mut deg = None;
        for (m, p) in &self.coeffs {
            if !p.is_homogeneous() {
                return None;
            }
            let d = p.degree()? + 2 * popcount(*m);
            match deg {
                None => deg = Some(d),
                Some(e) if e != d => return None,
                _ => {}
            }
        }
        deg
    }

    /// Belongs to `R⁺ · θ`: no coefficient has a constant term.
    pub fn is_superior(&self) -> bool {
        self.coeffs.values().all(|p| p.constant_term().is_zero())
    }

    /// Congruent to the normal element modulo `R⁺ · θ`.
    pub fn is_normalsup(&self) -> bool {
        let normal = full_mask(self.word.len());
        self.coeffs.iter().all(|(m, p)| {
            let c = p.constant_term();
            if *m == normal {
                c.is_one()
            } else {
                c.is_zero()
            }
        }) && !self.normal_part().is_zero()
    }

    /// The explicit tensors `c ⊗ x^{i_1} ⊗ ⋯`, one per basis vector.
    pub fn denormalize(&self) -> Vec<Vec<Polynomial>> {
        self.coeffs
            .iter()
            .map(|(mask, c)| {
                let mut t = Vec::with_capacity(self.word.len() + 1);
                t.push(c.clone());
                for (p, &s) in self.word.iter().enumerate() {
                    t.push(if mask >> p & 1 == 1 { Polynomial::var(s) } else { Polynomial::one() });
                }
                t
            })
            .collect()
    }

    pub fn render(&self, labels: Option<&[String]>) -> String {
        if self.is_zero() {
            return String::from("0");
        }
        let k = self.word.len();
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .map(|(m, p)| format!("({})[{}]", p.render(labels), mask_string(*m, k)))
            .collect();
        parts.join(" + ")
    }
}

impl fmt::Debug for BSElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} over {}", self.render(None), self.word)
    }
}

pub(crate) fn full_mask(len: usize) -> Mask {
    if len == 0 {
        0
    } else {
        Mask::MAX >> (64 - len)
    }
}

/// `x_s` if the bit is set, else `1`.
pub(crate) fn basis_factor(s: Generator, bit: Mask) -> Polynomial {
    if bit & 1 == 1 {
        Polynomial::term(Monomial::var(s), Scalar::ONE)
    } else {
        Polynomial::one()
    }
}
