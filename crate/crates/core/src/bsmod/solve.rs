use alloc::collections::BTreeMap;
use alloc::format;
use alloc::rc::Rc;
use alloc::vec::Vec;

use super::context::Context;
use super::element::{popcount, Coeffs, Mask};
use super::morphism::BSMorphism;
use crate::coxeter::{Generator, Word};
use crate::error::{Error, Result};
use crate::linalg::{axpy, rref, Echelon, SparseVec};
use crate::poly::{monomials_of_degree, Monomial, Polynomial};
use crate::scalar::Scalar;

/// An element of `θ_Y` whose coordinates are linear forms in unknowns.
type Parametric = BTreeMap<(Mask, Monomial), SparseVec>;

fn add_form(p: &mut Parametric, key: (Mask, Monomial), a: &Scalar, form: &SparseVec) {
    let entry = p.entry(key).or_default();
    axpy(entry, a, form);
    if entry.is_empty() {
        p.remove(&key);
    }
}

fn reduce_parametric(p: &mut Parametric, constraints: &Echelon) {
    let old = core::mem::take(p);
    for (key, form) in old {
        let form = constraints.reduce(form);
        if !form.is_empty() {
            p.insert(key, form);
        }
    }
}

struct Unknowns {
    next: usize,
}

impl Unknowns {
    /// A generic element of `θ_Y` of total degree `deg`.
    fn fresh(&mut self, rank: usize, target_len: usize, deg: i64) -> Parametric {
        let mut out = Parametric::new();
        for d in 0..1u64 << target_len {
            let rest = deg - 2 * popcount(d);
            if rest < 0 {
                continue;
            }
            for m in monomials_of_degree(rank, rest) {
                let mut form = SparseVec::new();
                form.insert(self.next, Scalar::ONE);
                self.next += 1;
                out.insert((d, m), form);
            }
        }
        out
    }
}

fn left_mul(p: &Parametric, q: &Polynomial, a: &Scalar, out: &mut Parametric) {
    for ((d, mu), form) in p {
        for (nu, c) in q.terms() {
            add_form(out, (*d, mu.mul(*nu)), &(a * c), form);
        }
    }
}

impl Context {
    /// A basis of the degree-`delta` bimodule morphisms `θ_source → θ_target`.
    ///
    /// The image of each basis vector `1 ⊗ x^b` is solved for one level
    /// `|b|` at a time: right linearity against `x_u` on level `i` expresses
    /// the level `i+1` images through the lower ones, and whatever is left
    /// over becomes a linear constraint on the unknowns.
    pub fn solve_hom_degree(&self, source: &Word, target: &Word, delta: i64) -> Vec<BSMorphism> {
        let rank = self.rank();
        let n = source.len();
        let k = target.len();
        let vars: Vec<Polynomial> = (0..rank).map(Polynomial::var).collect();
        let src_table: Vec<Vec<Coeffs>> = (0..1u64 << n)
            .map(|b| vars.iter().map(|x| self.basis_right_mul(source, b, x)).collect())
            .collect();
        let tgt_table: Vec<Vec<Coeffs>> = (0..1u64 << k)
            .map(|d| vars.iter().map(|x| self.basis_right_mul(target, d, x)).collect())
            .collect();

        let mut levels: Vec<Vec<Mask>> = alloc::vec![Vec::new(); n + 1];
        for b in 0..1u64 << n {
            levels[popcount(b) as usize].push(b);
        }
        let mut unknowns = Unknowns { next: 0 };
        let mut constraints = Echelon::new();
        let mut images: Vec<Option<Parametric>> = alloc::vec![None; 1 << n];
        images[0] = Some(unknowns.fresh(rank, k, delta));

        for i in 0..=n {
            let cols = if i < n { levels[i + 1].clone() } else { Vec::new() };
            let col_index: BTreeMap<Mask, usize> = cols.iter().enumerate().map(|(j, c)| (*c, j)).collect();
            let mut kappa: Vec<Vec<Scalar>> = Vec::new();
            let mut rhs: Vec<Parametric> = Vec::new();
            for &b in &levels[i] {
                let fb = images[b as usize].as_ref().expect("lower levels are solved first");
                for u in 0..rank {
                    let mut row = alloc::vec![Scalar::ZERO; cols.len()];
                    // F[b]·x_u
                    let mut r = Parametric::new();
                    for ((d, mu), form) in fb {
                        for (d2, q) in &tgt_table[*d as usize][u] {
                            for (nu, c) in q.terms() {
                                add_form(&mut r, (*d2, mu.mul(*nu)), c, form);
                            }
                        }
                    }
                    for (c, coef) in &src_table[b as usize][u] {
                        if let Some(&j) = col_index.get(c) {
                            row[j] = coef.constant_term();
                        } else {
                            let fc = images[*c as usize].as_ref().expect("lower levels are solved first");
                            left_mul(fc, coef, &Scalar::from_int(-1), &mut r);
                        }
                    }
                    kappa.push(row);
                    rhs.push(r);
                }
            }
            let red = rref(&kappa, cols.len());
            let transformed: Vec<Parametric> = red
                .transform
                .iter()
                .map(|trow| {
                    let mut acc = Parametric::new();
                    for (a, r) in trow.iter().zip(&rhs) {
                        if a.is_zero() {
                            continue;
                        }
                        for (key, form) in r {
                            add_form(&mut acc, *key, a, form);
                        }
                    }
                    acc
                })
                .collect();
            let mut grew = false;
            for zero_row in &transformed[red.pivots.len()..] {
                for form in zero_row.values() {
                    grew |= constraints.insert(form.clone());
                }
            }
            // Keep the forms short by eliminating solved unknowns right away.
            let mut transformed = transformed;
            if grew {
                for img in images.iter_mut().flatten() {
                    reduce_parametric(img, &constraints);
                }
                for t in transformed.iter_mut() {
                    reduce_parametric(t, &constraints);
                }
            }
            let pivot_cols: Vec<usize> = red.pivots.clone();
            let deg = 2 * (i as i64 + 1) + delta;
            for (j, &c) in cols.iter().enumerate() {
                if !pivot_cols.contains(&j) {
                    images[c as usize] = Some(unknowns.fresh(rank, k, deg));
                }
            }
            for (row, &pc) in pivot_cols.iter().enumerate() {
                let mut value = transformed[row].clone();
                for (j, &c) in cols.iter().enumerate() {
                    let a = &red.reduced[row][j];
                    if j == pc || a.is_zero() {
                        continue;
                    }
                    let fc = images[c as usize].as_ref().expect("free columns are assigned");
                    for (key, form) in fc {
                        add_form(&mut value, *key, &-a, form);
                    }
                }
                images[cols[pc] as usize] = Some(value);
            }
        }

        let reduced: Vec<BTreeMap<(Mask, Monomial), SparseVec>> = images
            .into_iter()
            .map(|img| {
                img.expect("every level is solved")
                    .into_iter()
                    .map(|(key, form)| (key, constraints.reduce(form)))
                    .filter(|(_, form)| !form.is_empty())
                    .collect()
            })
            .collect();
        let free: Vec<usize> = (0..unknowns.next).filter(|p| !constraints.is_pivot(*p)).collect();
        free.iter()
            .map(|&param| {
                let imgs = reduced
                    .iter()
                    .map(|img| {
                        let mut by_mask: BTreeMap<Mask, Vec<(Monomial, Scalar)>> = BTreeMap::new();
                        for ((d, mu), form) in img {
                            if let Some(c) = form.get(&param) {
                                by_mask.entry(*d).or_default().push((*mu, c.clone()));
                            }
                        }
                        by_mask.into_iter().map(|(d, t)| (d, Polynomial::from_terms(t))).collect()
                    })
                    .collect();
                BSMorphism::new(source.clone(), target.clone(), imgs, delta)
                    .expect("one image per basis vector")
            })
            .collect()
    }

    /// The braid morphism `f_{s,r} : θ_sθ_rθ_s⋯ → θ_rθ_sθ_r⋯` (`m(s,r)`
    /// factors each), normalized so the normal element goes to an element
    /// with normal part 1.
    pub fn solve_braid(&self, s: Generator, r: Generator) -> Result<Rc<BSMorphism>> {
        if let Some(hit) = self.braid_cache.borrow().get(&(s, r)) {
            return Ok(hit.clone());
        }
        self.system().matrix().check_letters(&[s, r])?;
        let Some(m) = self.system().matrix().order(s, r).finite() else {
            return Err(Error::PreconditionViolation(format!(
                "no braid relation between {s} and {r}: their order is infinite"
            )));
        };
        if s == r {
            return Err(Error::PreconditionViolation(format!("braid morphism needs two distinct generators, got {s} twice")));
        }
        let x = Word::alternating(s, r, m);
        let y = Word::alternating(r, s, m);
        let basis = self.solve_hom_degree(&x, &y, 0);
        if basis.len() != 1 {
            return Err(Error::Internal(format!(
                "degree-zero morphisms {x} -> {y} form a space of dimension {}, expected 1",
                basis.len()
            )));
        }
        let f = &basis[0];
        let lead = f.image(super::element::full_mask(m)).normal_part().constant_term();
        if lead.is_zero() {
            return Err(Error::Internal(format!("braid morphism {x} -> {y} kills the normal element")));
        }
        let f = Rc::new(f.scale(&lead.recip()));
        self.braid_cache.borrow_mut().insert((s, r), f.clone());
        Ok(f)
    }
}
