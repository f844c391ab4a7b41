use alloc::format;
use alloc::rc::Rc;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use super::context::{BraidComposite, Context};
use super::element::{add_scaled_coeffs, add_term, basis_factor, mask_string, popcount, BSElement, Coeffs, Mask};
use crate::coxeter::{Generator, Word};
use crate::error::{Error, Result};
use crate::poly::Polynomial;

/// A bimodule morphism `θ_source → θ_target`, stored as the images of the
/// normal basis of the source. `degree` is `deg f(e) − deg e`.
#[derive(Clone, PartialEq, Eq)]
pub struct BSMorphism {
    source: Word,
    target: Word,
    images: Vec<Coeffs>,
    degree: i64,
}

/// Outcome of [`BSMorphism::validate`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub right_linear: bool,
    pub homogeneous: bool,
    /// Human-readable descriptions of the first failures found.
    pub witnesses: Vec<String>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.right_linear && self.homogeneous
    }
}

fn mismatch(expected: &Word, found: &Word) -> Error {
    Error::WordMismatch { expected: format!("{expected}"), found: format!("{found}") }
}

impl BSMorphism {
    pub fn new(source: Word, target: Word, images: Vec<Coeffs>, degree: i64) -> Result<Self> {
        if images.len() != 1usize << source.len() {
            return Err(Error::PreconditionViolation(format!(
                "{} images given for a source of length {}",
                images.len(),
                source.len()
            )));
        }
        Ok(BSMorphism { source, target, images, degree })
    }

    pub fn identity(word: &Word) -> Self {
        let images = (0..1u64 << word.len())
            .map(|m| {
                let mut c = Coeffs::new();
                c.insert(m, Polynomial::one());
                c
            })
            .collect();
        BSMorphism { source: word.clone(), target: word.clone(), images, degree: 0 }
    }

    pub fn zero(source: Word, target: Word, degree: i64) -> Self {
        let images = vec![Coeffs::new(); 1 << source.len()];
        BSMorphism { source, target, images, degree }
    }

    /// `m^s : θ_s → R, p ⊗ q ↦ pq`.
    pub fn m_s(s: Generator) -> Self {
        let images = vec![coeffs_at(0, Polynomial::one()), coeffs_at(0, Polynomial::var(s))];
        BSMorphism { source: Word::new(vec![s]), target: Word::empty(), images, degree: 0 }
    }

    /// `i^s_0 : θ_sθ_s → R, p ⊗ q ⊗ r ↦ p I′_s(q) r`.
    pub fn i_s0(s: Generator) -> Self {
        let images = vec![
            Coeffs::new(),
            coeffs_at(0, Polynomial::one()),
            Coeffs::new(),
            coeffs_at(0, Polynomial::var(s)),
        ];
        BSMorphism { source: Word::new(vec![s, s]), target: Word::empty(), images, degree: -2 }
    }

    /// `i^s_1 : θ_sθ_s → θ_s, p ⊗ q ⊗ r ↦ p I′_s(q) ⊗ r`.
    pub fn i_s1(s: Generator) -> Self {
        let images = vec![
            Coeffs::new(),
            coeffs_at(0, Polynomial::one()),
            Coeffs::new(),
            coeffs_at(1, Polynomial::one()),
        ];
        BSMorphism { source: Word::new(vec![s, s]), target: Word::new(vec![s]), images, degree: -2 }
    }

    pub fn source(&self) -> &Word {
        &self.source
    }

    pub fn target(&self) -> &Word {
        &self.target
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn images(&self) -> &[Coeffs] {
        &self.images
    }

    pub fn image(&self, mask: Mask) -> BSElement {
        BSElement::from_coeffs(self.target.clone(), self.images[mask as usize].clone())
    }

    pub fn is_zero(&self) -> bool {
        self.images.iter().all(|c| c.is_empty())
    }

    pub(crate) fn apply_coeffs(&self, e: &Coeffs) -> Coeffs {
        let mut out = Coeffs::new();
        for (m, c) in e {
            add_scaled_coeffs(&mut out, &self.images[*m as usize], c);
        }
        out
    }

    pub fn apply(&self, e: &BSElement) -> Result<BSElement> {
        if e.word() != &self.source {
            return Err(mismatch(&self.source, e.word()));
        }
        Ok(BSElement::from_coeffs(self.target.clone(), self.apply_coeffs(e.coeffs())))
    }

    /// `self ∘ f`.
    pub fn compose(&self, f: &BSMorphism) -> Result<BSMorphism> {
        if f.target != self.source {
            return Err(mismatch(&self.source, &f.target));
        }
        let images = f.images.iter().map(|img| self.apply_coeffs(img)).collect();
        Ok(BSMorphism {
            source: f.source.clone(),
            target: self.target.clone(),
            images,
            degree: self.degree + f.degree,
        })
    }

    pub fn add(&self, other: &BSMorphism) -> Result<BSMorphism> {
        if self.source != other.source {
            return Err(mismatch(&self.source, &other.source));
        }
        if self.target != other.target {
            return Err(mismatch(&self.target, &other.target));
        }
        let images = self
            .images
            .iter()
            .zip(&other.images)
            .map(|(a, b)| {
                let mut c = a.clone();
                add_scaled_coeffs(&mut c, b, &Polynomial::one());
                c
            })
            .collect();
        Ok(BSMorphism { images, ..self.clone() })
    }

    pub fn scale(&self, c: &crate::Scalar) -> BSMorphism {
        let p = Polynomial::constant(c.clone());
        let images = self
            .images
            .iter()
            .map(|img| {
                let mut out = Coeffs::new();
                add_scaled_coeffs(&mut out, img, &p);
                out
            })
            .collect();
        BSMorphism { images, ..self.clone() }
    }

    /// `f · p : m ↦ f(m)·p`, the right action of `R` on `Hom`.
    pub fn right_mul(&self, ctx: &Context, p: &Polynomial) -> BSMorphism {
        let images = self
            .images
            .iter()
            .map(|img| {
                BSElement::from_coeffs(self.target.clone(), img.clone())
                    .right_mul(ctx, p)
                    .into_coeffs()
            })
            .collect();
        let shift = p.degree().unwrap_or(0);
        BSMorphism { images, degree: self.degree + shift, ..self.clone() }
    }

    /// `Id_{θ_left} ⊗ self ⊗ Id_{θ_right}`.
    pub fn tensor_id(&self, ctx: &Context, left: &Word, right: &Word) -> BSMorphism {
        let (l, n) = (left.len(), self.source.len());
        let k = self.target.len();
        let source = left.concat(&self.source).concat(right);
        let target = left.concat(&self.target).concat(right);
        let mut images = Vec::with_capacity(1 << source.len());
        for mask in 0..1u64 << source.len() {
            let lbits = mask & ((1 << l) - 1);
            let mid = (mask >> l) & ((1 << n) - 1);
            let rbits = mask >> (l + n);
            let mut out = Coeffs::new();
            for (d, c) in &self.images[mid as usize] {
                let tail = (d << l) | (rbits << (l + k));
                if l == 0 {
                    add_term(&mut out, tail, c);
                } else {
                    let top = lbits >> (l - 1);
                    let content = c.mul(&basis_factor(left[l - 1], top));
                    let m = tail | (lbits & !(1 << (l - 1)));
                    ctx.settle_into(&target, l, m, &Polynomial::one(), &content, &mut out);
                }
            }
            images.push(out);
        }
        BSMorphism { source, target, images, degree: self.degree }
    }

    /// Right linearity against every generator variable on every basis
    /// vector, and homogeneity of degree `self.degree`.
    pub fn validate(&self, ctx: &Context) -> ValidationReport {
        let mut report = ValidationReport { right_linear: true, homogeneous: true, witnesses: Vec::new() };
        let n = self.source.len();
        for mask in 0..1u64 << n {
            let img = &self.images[mask as usize];
            for (d, c) in img {
                let ok = c.is_homogeneous()
                    && c.degree().unwrap_or(0) + 2 * popcount(*d) - 2 * popcount(mask) == self.degree;
                if !ok {
                    report.homogeneous = false;
                    if report.witnesses.len() < 8 {
                        report.witnesses.push(format!(
                            "image of [{}] has coefficient {} on [{}], not of degree {}",
                            mask_string(mask, n),
                            c,
                            mask_string(*d, self.target.len()),
                            self.degree
                        ));
                    }
                }
            }
            for u in 0..ctx.rank() {
                let x = Polynomial::var(u);
                let lhs = self.apply_coeffs(&ctx.basis_right_mul(&self.source, mask, &x));
                let rhs = BSElement::from_coeffs(self.target.clone(), img.clone())
                    .right_mul(ctx, &x)
                    .into_coeffs();
                if lhs != rhs {
                    report.right_linear = false;
                    if report.witnesses.len() < 8 {
                        report.witnesses.push(format!(
                            "f([{}]·x{u}) = {} but f([{}])·x{u} = {}",
                            mask_string(mask, n),
                            BSElement::from_coeffs(self.target.clone(), lhs).render(None),
                            mask_string(mask, n),
                            BSElement::from_coeffs(self.target.clone(), rhs).render(None),
                        ));
                    }
                }
            }
        }
        report
    }

    /// `𝔉(f)(m) = x_s ⊗ f(1 ⊗ m) + 1 ⊗ f(1 ⊗ x_s m)` for `f : θ_sθ_M → θ_N`,
    /// giving `θ_M → θ_sθ_N` of degree `δ + 2`.
    pub fn adjoint_f(&self, ctx: &Context) -> Result<BSMorphism> {
        let Some(&s) = self.source.first() else {
            return Err(Error::WordMismatch {
                expected: String::from("a source starting with a generator"),
                found: format!("{}", self.source),
            });
        };
        let m_word = self.source.slice(1, self.source.len());
        let target = Word::new(vec![s]).concat(&self.target);
        let xs = Polynomial::var(s);
        let mut images = Vec::with_capacity(1 << m_word.len());
        for a in 0..1u64 << m_word.len() {
            let mut out = Coeffs::new();
            prepend_into(ctx, s, &xs, &self.images[(a << 1) as usize], &mut out);
            prepend_into(ctx, s, &Polynomial::one(), &self.images[((a << 1) | 1) as usize], &mut out);
            images.push(out);
        }
        Ok(BSMorphism { source: m_word, target, images, degree: self.degree + 2 })
    }

    /// Inverse of [`adjoint_f`](Self::adjoint_f): writing
    /// `g(m) = 1 ⊗ g_1(m) + x_s ⊗ g_2(m)`, sends `g` to `λ ⊗ m ↦ λ g_2(m)`.
    pub fn adjoint_g(&self, ctx: &Context) -> Result<BSMorphism> {
        let Some(&s) = self.target.first() else {
            return Err(Error::WordMismatch {
                expected: String::from("a target starting with a generator"),
                found: format!("{}", self.target),
            });
        };
        let n_word = self.target.slice(1, self.target.len());
        let source = Word::new(vec![s]).concat(&self.source);
        let cr = ctx.realization();
        let mut images = vec![Coeffs::new(); 1 << source.len()];
        for a in 0..1u64 << self.source.len() {
            let mut g1 = Coeffs::new();
            let mut g2 = Coeffs::new();
            for (b, c) in &self.images[a as usize] {
                let (inv, quo) = cr.decompose(s, c)?;
                let lead = basis_factor(s, *b);
                add_term(&mut g1, b >> 1, &inv.mul(&lead));
                add_term(&mut g2, b >> 1, &quo.mul(&lead));
            }
            images[(a << 1) as usize] = g2;
            images[((a << 1) | 1) as usize] = g1;
        }
        Ok(BSMorphism { source, target: n_word, images, degree: self.degree - 2 })
    }

    /// Human-readable table of images.
    pub fn render(&self, labels: Option<&[String]>) -> String {
        let mut out = String::new();
        let n = self.source.len();
        for (mask, img) in self.images.iter().enumerate() {
            out.push_str(&format!(
                "[{}] -> {}\n",
                mask_string(mask as Mask, n),
                BSElement::from_coeffs(self.target.clone(), img.clone()).render(labels)
            ));
        }
        out
    }
}

impl fmt::Debug for BSMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} -> {} (degree {})", self.source, self.target, self.degree)?;
        f.write_str(&self.render(None))
    }
}

fn coeffs_at(mask: Mask, p: Polynomial) -> Coeffs {
    let mut c = Coeffs::new();
    add_term(&mut c, mask, &p);
    c
}

/// Adds `p ⊗ n` to `out`, for `n` over `N̄` and the result over `s·N̄`.
fn prepend_into(ctx: &Context, s: Generator, p: &Polynomial, n: &Coeffs, out: &mut Coeffs) {
    for (d, c) in n {
        let (inv, quo) = ctx
            .realization()
            .decompose(s, c)
            .expect("the splitting of a validated realization is exact");
        add_term(out, d << 1, &p.mul(&inv));
        add_term(out, (d << 1) | 1, &p.mul(&quo));
    }
}

const WRAP_M: u8 = 0;
const WRAP_I0: u8 = 1;
const WRAP_I1: u8 = 2;

impl Context {
    fn wrapped(&self, kind: u8, left: &Word, s: Generator) -> Rc<BSMorphism> {
        let key = (kind, left.clone(), s);
        if let Some(hit) = self.wrapped_cache.borrow().get(&key) {
            return hit.clone();
        }
        let base = match kind {
            WRAP_M => BSMorphism::m_s(s),
            WRAP_I0 => BSMorphism::i_s0(s),
            _ => BSMorphism::i_s1(s),
        };
        let f = Rc::new(base.tensor_id(self, left, &Word::empty()));
        self.wrapped_cache.borrow_mut().insert(key, f.clone());
        f
    }

    /// `Id_{θ_left} ⊗ m^s`, memoized.
    pub fn wrapped_m(&self, left: &Word, s: Generator) -> Rc<BSMorphism> {
        self.wrapped(WRAP_M, left, s)
    }

    /// `Id_{θ_left} ⊗ i^s_0`, memoized.
    pub fn wrapped_i0(&self, left: &Word, s: Generator) -> Rc<BSMorphism> {
        self.wrapped(WRAP_I0, left, s)
    }

    /// `Id_{θ_left} ⊗ i^s_1`, memoized.
    pub fn wrapped_i1(&self, left: &Word, s: Generator) -> Rc<BSMorphism> {
        self.wrapped(WRAP_I1, left, s)
    }

    /// `F(t̄)`: the composite of the braid morphisms `Id ⊗ f_{a,b} ⊗ Id` along
    /// the chosen braid path from `t̄` to a reduced word ending in `s`.
    pub fn braid_composite(&self, t: &Word, s: Generator) -> Result<Rc<BraidComposite>> {
        let key = (t.clone(), s);
        if let Some(hit) = self.composite_cache.borrow().get(&key) {
            return Ok(hit.clone());
        }
        let path = self.system().braid_path(t, s)?;
        let words = self.system().replay(t, &path)?;
        let mut f = BSMorphism::identity(t);
        for (mv, before) in path.iter().zip(&words) {
            let m = self
                .system()
                .matrix()
                .order(mv.first, mv.second)
                .finite()
                .expect("braid moves only exist for finite orders");
            let fsr = self.solve_braid(mv.first, mv.second)?;
            let left = before.slice(0, mv.position);
            let right = before.slice(mv.position + m, before.len());
            f = fsr.tensor_id(self, &left, &right).compose(&f)?;
        }
        let out = Rc::new(BraidComposite { path, words, morphism: Rc::new(f) });
        self.composite_cache.borrow_mut().insert(key, out.clone());
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::{CoxeterMatrix, Order};
    use crate::Scalar;

    fn a2() -> Context {
        Context::new(CoxeterMatrix::dihedral(Order::Finite(3)).unwrap())
    }

    fn w(v: &[usize]) -> Word {
        Word::from(v)
    }

    fn x(s: usize) -> Polynomial {
        Polynomial::var(s)
    }

    #[test]
    fn structural_morphisms() {
        let ctx = a2();
        let m = BSMorphism::m_s(0);
        assert_eq!(m.image(1), BSElement::from_polynomial(x(0)));
        assert_eq!(m.image(0), BSElement::from_polynomial(Polynomial::one()));
        let i0 = BSMorphism::i_s0(0);
        assert_eq!(i0.image(0b01), BSElement::from_polynomial(Polynomial::one()));
        assert!(i0.image(0b00).is_zero());
        let i1 = BSMorphism::i_s1(0);
        assert_eq!(i1.image(0b11), BSElement::basis(w(&[0]), 1, Polynomial::one()));
        for f in [m, i0, i1] {
            assert!(f.validate(&ctx).passed(), "{f:?}");
        }
    }

    #[test]
    fn corrupted_morphism_fails_validation() {
        let ctx = a2();
        let mut images = BSMorphism::m_s(0).images().to_vec();
        images[1] = coeffs_at(0, x(1));
        let bad = BSMorphism::new(w(&[0]), w(&[]), images, 0).unwrap();
        let report = bad.validate(&ctx);
        assert!(!report.passed());
        assert!(!report.witnesses.is_empty());
    }

    #[test]
    fn composition_and_application() {
        let ctx = a2();
        let m = BSMorphism::m_s(0);
        assert_eq!(m.compose(&BSMorphism::identity(&w(&[0]))).unwrap(), m);
        let chain = m.compose(&BSMorphism::i_s1(0)).unwrap();
        assert_eq!(chain.degree(), -2);
        let e = BSElement::basis(w(&[0, 0]), 0b11, Polynomial::one());
        assert_eq!(chain.apply(&e).unwrap(), BSElement::from_polynomial(x(0)));
        assert!(m.compose(&m).is_err());
        assert!(chain.validate(&ctx).passed());
    }

    #[test]
    fn tensor_with_identity() {
        let ctx = a2();
        let m = BSMorphism::m_s(0);
        assert_eq!(m.tensor_id(&ctx, &w(&[]), &w(&[])), m);
        let t = m.tensor_id(&ctx, &w(&[]), &w(&[1]));
        assert_eq!(t.image(0b11), BSElement::basis(w(&[1]), 1, x(0)));
        let u = m.tensor_id(&ctx, &w(&[1]), &w(&[]));
        // 1 ⊗ 1 ⊗ x_s ↦ 1 ⊗ x_s, renormalized over θ_r.
        let expected = BSElement::normalize(&ctx, &w(&[1]), &[vec![Polynomial::one(), x(0)]]).unwrap();
        assert_eq!(u.image(0b10), expected);
        for f in [t, u] {
            assert!(f.validate(&ctx).passed());
        }
    }

    #[test]
    fn adjunction_round_trip() {
        let ctx = a2();
        let m = BSMorphism::m_s(0);
        let fm = m.adjoint_f(&ctx).unwrap();
        assert_eq!(fm.degree(), 2);
        // 1 ↦ x_s ⊗ 1 + 1 ⊗ x_s
        let expected = BSElement::basis(w(&[0]), 0, x(0)).add(&BSElement::basis(w(&[0]), 1, Polynomial::one()));
        assert_eq!(fm.image(0), expected);
        assert!(fm.validate(&ctx).passed());
        assert_eq!(fm.adjoint_g(&ctx).unwrap(), m);
        let i0 = BSMorphism::i_s0(0);
        assert_eq!(i0.adjoint_f(&ctx).unwrap().adjoint_g(&ctx).unwrap(), i0);
        let id = BSMorphism::identity(&w(&[0]));
        let g = id.adjoint_g(&ctx).unwrap();
        assert_eq!(g.adjoint_f(&ctx).unwrap(), id);
        assert!(m.adjoint_g(&ctx).is_err());
    }

    #[test]
    fn right_multiple_of_morphism() {
        let ctx = a2();
        let f = BSMorphism::m_s(0).right_mul(&ctx, &x(1));
        assert_eq!(f.degree(), 2);
        assert!(f.validate(&ctx).passed());
        assert_eq!(f.scale(&Scalar::ZERO).is_zero(), true);
    }
}
