use alloc::collections::BTreeMap;
use alloc::rc::Rc;
use alloc::vec;
use alloc::vec::Vec;
use core::cell::RefCell;

use super::element::{add_term, Coeffs, Mask};
use super::morphism::BSMorphism;
use crate::coxeter::{BraidMove, CoxeterMatrix, CoxeterSystem, Generator, Word};
use crate::error::Result;
use crate::poly::{CartanRealization, Monomial, Polynomial};

/// The morphism `F_n(t̄)` obtained by following a braid path, with the path
/// itself and every intermediate word.
#[derive(Clone, Debug)]
pub struct BraidComposite {
    pub path: Vec<BraidMove>,
    pub words: Vec<Word>,
    pub morphism: Rc<BSMorphism>,
}

type SettleKey = (Word, Mask, Monomial);

/// A Coxeter system with a realization, plus memo tables shared by the
/// bimodule computations. Memoized values depend only on their keys.
#[derive(Debug)]
pub struct Context {
    sys: CoxeterSystem,
    cr: CartanRealization,
    settle_cache: RefCell<BTreeMap<SettleKey, Rc<Vec<(Mask, Polynomial)>>>>,
    pub(super) braid_cache: RefCell<BTreeMap<(Generator, Generator), Rc<BSMorphism>>>,
    pub(super) composite_cache: RefCell<BTreeMap<(Word, Generator), Rc<BraidComposite>>>,
    pub(super) wrapped_cache: RefCell<BTreeMap<(u8, Word, Generator), Rc<BSMorphism>>>,
}

impl Context {
    /// Context with the default realization.
    pub fn new(matrix: CoxeterMatrix) -> Self {
        let cr = CartanRealization::default_for(&matrix);
        Self::with_realization(cr)
    }

    pub fn with_realization(cr: CartanRealization) -> Self {
        Context {
            sys: CoxeterSystem::new(cr.coxeter_matrix().clone()),
            cr,
            settle_cache: RefCell::new(BTreeMap::new()),
            braid_cache: RefCell::new(BTreeMap::new()),
            composite_cache: RefCell::new(BTreeMap::new()),
            wrapped_cache: RefCell::new(BTreeMap::new()),
        }
    }

    pub fn system(&self) -> &CoxeterSystem {
        &self.sys
    }

    pub fn realization(&self) -> &CartanRealization {
        &self.cr
    }

    pub fn rank(&self) -> usize {
        self.sys.rank()
    }

    /// Normal form of `1 ⊗ x^{low} ⊗ m ⊗ …` where the monomial `m` sits in
    /// slot `j = prefix.len()` and the slots `1..j` hold the basis factors
    /// selected by `low` (bits `0..j-1`, bit `j-1` clear). Returns the
    /// coefficients on masks over bits `0..j`.
    fn settle_monomial(&self, prefix: &[Generator], low: Mask, m: Monomial) -> Rc<Vec<(Mask, Polynomial)>> {
        let j = prefix.len();
        if j == 0 || m == Monomial::ONE {
            return Rc::new(vec![(low, Polynomial::term(m, crate::Scalar::ONE))]);
        }
        let key = (Word::from(prefix), low, m);
        if let Some(hit) = self.settle_cache.borrow().get(&key) {
            return hit.clone();
        }
        let (inv, quo) = self
            .cr
            .decompose(prefix[j - 1], &Polynomial::term(m, crate::Scalar::ONE))
            .expect("the splitting of a validated realization is exact");
        let mut acc = Coeffs::new();
        for (part, bit) in [(inv, 0 as Mask), (quo, 1 as Mask)] {
            if part.is_zero() {
                continue;
            }
            let hi = bit << (j - 1);
            if j == 1 {
                add_term(&mut acc, hi | low, &part);
                continue;
            }
            let below = (low >> (j - 2)) & 1;
            let content = if below == 1 {
                part.mul_monomial(Monomial::var(prefix[j - 2]))
            } else {
                part
            };
            let low2 = low & !(1 << (j - 2));
            for (nu, c) in content.terms() {
                for (mask, q) in self.settle_monomial(&prefix[..j - 1], low2, *nu).iter() {
                    add_term(&mut acc, mask | hi, &q.scale(c));
                }
            }
        }
        let out: Rc<Vec<(Mask, Polynomial)>> = Rc::new(acc.into_iter().collect());
        self.settle_cache.borrow_mut().insert(key, out.clone());
        out
    }

    /// Adds to `out` the normal form of `c · (1 ⊗ x^{mask} … ⊗ q ⊗ …)` where
    /// `q` multiplies slot `j` (so bit `j-1` of `mask` must be clear) and
    /// `c` is a left coefficient.
    pub(crate) fn settle_into(
        &self,
        word: &[Generator],
        j: usize,
        mask: Mask,
        c: &Polynomial,
        q: &Polynomial,
        out: &mut Coeffs,
    ) {
        if j == 0 {
            add_term(out, mask, &c.mul(q));
            return;
        }
        debug_assert_eq!(mask >> (j - 1) & 1, 0);
        let low_bits: Mask = (1 << j) - 1;
        let high = mask & !low_bits;
        let low = mask & low_bits;
        for (m, a) in q.terms() {
            for (lm, p) in self.settle_monomial(&word[..j], low, *m).iter() {
                add_term(out, high | lm, &c.mul(p).scale(a));
            }
        }
    }

    /// Right multiplication of a basis vector by a polynomial.
    pub fn basis_right_mul(&self, word: &[Generator], mask: Mask, p: &Polynomial) -> Coeffs {
        let mut out = Coeffs::new();
        let k = word.len();
        if k == 0 {
            add_term(&mut out, 0, p);
            return out;
        }
        let top = (mask >> (k - 1)) & 1;
        let q = if top == 1 {
            p.mul_monomial(Monomial::var(word[k - 1]))
        } else {
            p.clone()
        };
        self.settle_into(word, k, mask & !(1 << (k - 1)), &Polynomial::one(), &q, &mut out);
        out
    }

    /// Checks that the realization still passes its braid tests.
    pub fn check_realization(&self) -> Result<()> {
        match self.cr.braid_failure() {
            None => Ok(()),
            Some(msg) => Err(crate::Error::InvalidRealization(msg)),
        }
    }
}
