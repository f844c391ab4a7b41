//! Light leaves: the binary tree of morphisms out of a Bott–Samelson
//! bimodule, the leaves with target `R`, their triangularity with respect to
//! the order `≺`, and the resulting bases of general Hom spaces.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::rc::Rc;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::bsmod::{mask_string, BSElement, BSMorphism, Coeffs, Context, Mask};
use crate::coxeter::{BraidMove, Generator, Word};
use crate::error::{Error, Result};
use crate::hecke::{HeckeElement, LaurentPoly};
use crate::poly::Polynomial;
use crate::scalar::Scalar;

/// A bit-vector `(i_1, …, i_n)`, stored with `i_1` first.
pub type Bits = Vec<u8>;

pub fn bits_to_mask(bits: &[u8]) -> Mask {
    bits.iter().enumerate().fold(0, |m, (p, b)| m | ((*b as Mask & 1) << p))
}

pub fn mask_to_bits(mask: Mask, len: usize) -> Bits {
    (0..len).map(|p| ((mask >> p) & 1) as u8).collect()
}

pub fn render_bits(bits: &[u8]) -> String {
    mask_string(bits_to_mask(bits), bits.len())
}

/// Everything about a node of the tree except its morphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Skeleton {
    pub bits_i: Bits,
    pub bits_j: Bits,
    pub target: Word,
    pub weight: usize,
    /// `(stage, path)` for every descent step, stages counted from 1.
    pub path_log: Vec<(usize, Vec<BraidMove>)>,
}

impl Skeleton {
    pub fn root() -> Self {
        Skeleton { bits_i: Vec::new(), bits_j: Vec::new(), target: Word::empty(), weight: 0, path_log: Vec::new() }
    }

    pub fn is_light(&self) -> bool {
        self.target.is_empty()
    }

    pub fn degree(&self) -> i64 {
        -2 * self.weight as i64
    }
}

/// A node of the tree together with its morphism `θ_{s_1}⋯θ_{s_n} → θ_target`.
#[derive(Clone, Debug)]
pub struct Leaf {
    pub skeleton: Skeleton,
    pub morphism: Rc<BSMorphism>,
}

impl Leaf {
    /// `Id : R → R`.
    pub fn root() -> Self {
        Leaf { skeleton: Skeleton::root(), morphism: Rc::new(BSMorphism::identity(&Word::empty())) }
    }

    pub fn bits_i(&self) -> &[u8] {
        &self.skeleton.bits_i
    }

    pub fn bits_j(&self) -> &[u8] {
        &self.skeleton.bits_j
    }

    pub fn target(&self) -> &Word {
        &self.skeleton.target
    }

    pub fn weight(&self) -> usize {
        self.skeleton.weight
    }
}

/// The skeleton one stage further down, and the braid path used if `s` is
/// a descent of the current target.
pub fn step_skeleton(ctx: &Context, node: &Skeleton, i: u8, s: Generator) -> Result<Skeleton> {
    ctx.system().matrix().check_letters(&[s])?;
    let stage = node.bits_i.len() + 1;
    let mut next = node.clone();
    next.bits_i.push(i);
    if !ctx.system().descends_right(&node.target, s) {
        next.bits_j.push(0);
        if i == 1 {
            next.target = node.target.pushed(s);
        }
    } else {
        next.bits_j.push(1);
        next.weight += 1;
        let composite = ctx.braid_composite(&node.target, s)?;
        let moved = composite.words.last().expect("replay keeps the starting word");
        next.target = if i == 0 { moved.slice(0, moved.len() - 1) } else { moved.clone() };
        next.path_log.push((stage, composite.path.clone()));
    }
    Ok(next)
}

/// `f^j_{i,n}(a)`, with `j` determined by whether `s` is a right descent of
/// the target of `a`.
pub fn step(ctx: &Context, leaf: &Leaf, i: u8, s: Generator) -> Result<Leaf> {
    let skeleton = step_skeleton(ctx, &leaf.skeleton, i, s)?;
    let t = &leaf.skeleton.target;
    let extended = leaf.morphism.tensor_id(ctx, &Word::empty(), &Word::from(vec![s]));
    let morphism = if skeleton.bits_j.last() == Some(&0) {
        if i == 0 {
            ctx.wrapped_m(t, s).compose(&extended)?
        } else {
            extended
        }
    } else {
        let composite = ctx.braid_composite(t, s)?;
        let moved = composite.words.last().expect("replay keeps the starting word");
        let braided = composite
            .morphism
            .tensor_id(ctx, &Word::empty(), &Word::from(vec![s]))
            .compose(&extended)?;
        let left = moved.slice(0, moved.len() - 1);
        let cap = if i == 0 { ctx.wrapped_i0(&left, s) } else { ctx.wrapped_i1(&left, s) };
        cap.compose(&braided)?
    };
    Ok(Leaf { skeleton, morphism: Rc::new(morphism) })
}

/// All `2^n` skeletons, ordered lexicographically by `ī`.
pub fn skeleton_tree(ctx: &Context, word: &Word) -> Result<Vec<Skeleton>> {
    ctx.system().matrix().check_letters(word)?;
    let mut level = vec![Skeleton::root()];
    for &s in word.iter() {
        let mut next = Vec::with_capacity(level.len() * 2);
        for node in &level {
            for i in 0..2 {
                next.push(step_skeleton(ctx, node, i, s)?);
            }
        }
        level = next;
    }
    Ok(level)
}

/// The full tree `A_n`: all `2^n` leaves ordered lexicographically by `ī`.
pub fn build_tree(ctx: &Context, word: &Word) -> Result<Vec<Leaf>> {
    ctx.system().matrix().check_letters(word)?;
    let mut level = vec![Leaf::root()];
    for &s in word.iter() {
        let mut next = Vec::with_capacity(level.len() * 2);
        for node in &level {
            for i in 0..2 {
                next.push(step(ctx, node, i, s)?);
            }
        }
        level = next;
    }
    Ok(level)
}

fn grow_light(ctx: &Context, word: &Word, node: Leaf, out: &mut Vec<Leaf>) -> Result<()> {
    let stage = node.skeleton.bits_i.len();
    if stage == word.len() {
        if node.skeleton.is_light() {
            out.push(node);
        }
        return Ok(());
    }
    let remaining = word.len() - stage - 1;
    for i in 0..2 {
        // A cheap look at the skeleton first: a target longer than the
        // number of remaining steps can no longer reach `R`.
        let sk = step_skeleton(ctx, &node.skeleton, i, word[stage])?;
        if sk.target.len() > remaining {
            continue;
        }
        grow_light(ctx, word, step(ctx, &node, i, word[stage])?, out)?;
    }
    Ok(())
}

/// `A′_n`: the leaves with target `R`, sorted by `≺`.
pub fn light_leaves(ctx: &Context, word: &Word) -> Result<Vec<Leaf>> {
    ctx.system().matrix().check_letters(word)?;
    let mut out = Vec::new();
    grow_light(ctx, word, Leaf::root(), &mut out)?;
    out.sort_by(|a, b| compare_bits(a.bits_i(), b.bits_i()).expect("equal lengths"));
    Ok(out)
}

/// `I_n`: the index vectors of the light leaves, sorted by `≺`.
pub fn light_indices(ctx: &Context, word: &Word) -> Result<Vec<Bits>> {
    let mut out: Vec<Bits> = skeleton_tree(ctx, word)?
        .into_iter()
        .filter(Skeleton::is_light)
        .map(|s| s.bits_i)
        .collect();
    out.sort_by(|a, b| compare_bits(a, b).expect("equal lengths"));
    Ok(out)
}

/// The total order `≺` on `{0,1}^n`: a larger bit sum is greater; on equal
/// sums the vector carrying the 1 at the first difference is smaller.
pub fn compare_bits(a: &[u8], b: &[u8]) -> Result<Ordering> {
    if a.len() != b.len() {
        return Err(Error::PreconditionViolation(format!(
            "comparing bit-vectors of lengths {} and {}",
            a.len(),
            b.len()
        )));
    }
    let sa: u32 = a.iter().map(|&x| x as u32).sum();
    let sb: u32 = b.iter().map(|&x| x as u32).sum();
    if sa != sb {
        return Ok(sa.cmp(&sb));
    }
    match a.iter().zip(b).find(|(x, y)| x != y) {
        None => Ok(Ordering::Equal),
        Some((1, _)) => Ok(Ordering::Less),
        Some(_) => Ok(Ordering::Greater),
    }
}

pub fn precedes(a: &[u8], b: &[u8]) -> Result<bool> {
    Ok(compare_bits(a, b)? == Ordering::Less)
}

/// Entries `f_ī(x_ī′)` for light leaves `ī, ī′` in `≺` order, reduced to
/// their constant terms.
#[derive(Clone, Debug)]
pub struct EvaluationMatrix {
    pub indices: Vec<Bits>,
    pub entries: Vec<Vec<Scalar>>,
    /// Positions `(row, col)` where the unitriangularity fails.
    pub failures: Vec<(usize, usize)>,
}

impl EvaluationMatrix {
    pub fn is_unitriangular(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn evaluation_matrix(ctx: &Context, word: &Word) -> Result<EvaluationMatrix> {
    let leaves = light_leaves(ctx, word)?;
    let indices: Vec<Bits> = leaves.iter().map(|l| l.skeleton.bits_i.clone()).collect();
    let n = leaves.len();
    let mut entries = vec![vec![Scalar::ZERO; n]; n];
    let mut failures = Vec::new();
    for (r, leaf) in leaves.iter().enumerate() {
        let sum_r: usize = indices[r].iter().map(|&b| b as usize).sum();
        for (c, col) in indices.iter().enumerate() {
            let sum_c: usize = col.iter().map(|&b| b as usize).sum();
            // f_ī(x_ī′) has degree 2(Σī′ − Σī), so it vanishes below the diagonal block.
            if sum_r <= sum_c {
                let img = &leaf.morphism.images()[bits_to_mask(col) as usize];
                entries[r][c] = img.get(&0).map(Polynomial::constant_term).unwrap_or(Scalar::ZERO);
            }
            let expected_zero = compare_bits(&indices[r], col)? == Ordering::Greater;
            let ok = if r == c {
                entries[r][c].is_one()
            } else {
                !expected_zero || entries[r][c].is_zero()
            };
            if !ok {
                failures.push((r, c));
            }
        }
    }
    Ok(EvaluationMatrix { indices, entries, failures })
}

/// `Σ q^{weight}` over the leaves of `A_n` whose target represents `x`, keyed
/// by the canonical word of `x`.
pub fn graded_census(ctx: &Context, word: &Word) -> Result<BTreeMap<Word, LaurentPoly>> {
    let mut census: BTreeMap<Word, LaurentPoly> = BTreeMap::new();
    for sk in skeleton_tree(ctx, word)? {
        let x = ctx.system().canonical(&sk.target);
        let entry = census.entry(x).or_insert_with(LaurentPoly::zero);
        *entry = entry.add(&LaurentPoly::q_pow(sk.weight as i64));
    }
    Ok(census)
}

/// Compares the census with `(1+T_{s_1})⋯(1+T_{s_n}) = Σ p^x T_x`.
pub fn census_matches_hecke(ctx: &Context, word: &Word) -> Result<bool> {
    let census = graded_census(ctx, word)?;
    let product = HeckeElement::product_one_plus(ctx.system(), word);
    let from_hecke: BTreeMap<Word, LaurentPoly> =
        product.iter().filter(|(_, p)| !p.is_zero()).map(|(w, p)| (w.clone(), p.clone())).collect();
    Ok(census == from_hecke)
}

/// At every stage `m`, `f^m_ī(x^m_ī)` is normalsup; checked along the path
/// of one index vector.
pub fn normalsup_chain(ctx: &Context, word: &Word, bits: &[u8]) -> Result<bool> {
    if bits.len() != word.len() {
        return Err(Error::PreconditionViolation(format!(
            "index of length {} for a word of length {}",
            bits.len(),
            word.len()
        )));
    }
    let mut leaf = Leaf::root();
    for (m, (&s, &i)) in word.iter().zip(bits).enumerate() {
        leaf = step(ctx, &leaf, i, s)?;
        let x = BSElement::basis(word.slice(0, m + 1), bits_to_mask(&bits[..=m]), Polynomial::one());
        if !leaf.morphism.apply(&x)?.is_normalsup() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// One element of the basis of `Hom(θ_source, θ_target)` built from a light
/// leaf of `rev(target)·source`.
#[derive(Clone, Debug)]
pub struct HomBasisElement {
    pub leaf_bits: Bits,
    pub weight: usize,
    pub morphism: BSMorphism,
}

/// A basis of `Hom(θ_source, θ_target)` as a right `R`-module:
/// `m ↦ Σ_ī x^g_ī · f_α((1 ⊗ x^d_{ī^c(op)}) ⊗ m)` for each light leaf `f_α`
/// of `rev(target)·source`, summing over all `ī ∈ {0,1}^k`.
pub fn hom_basis(ctx: &Context, source: &Word, target: &Word) -> Result<Vec<HomBasisElement>> {
    let k = target.len();
    let n = source.len();
    let word = target.reversed().concat(source);
    let leaves = light_leaves(ctx, &word)?;
    let mut out = Vec::with_capacity(leaves.len());
    for leaf in &leaves {
        let mut images: Vec<Coeffs> = Vec::with_capacity(1 << n);
        for b in 0..1u64 << n {
            let mut acc = BSElement::zero(target.clone());
            for ibits in 0..1u64 << k {
                // The reversed-word slot of t_p sits at k−p and carries 1−i_p.
                let mut dmask: Mask = 0;
                for p in 0..k {
                    if (ibits >> p) & 1 == 0 {
                        dmask |= 1 << (k - 1 - p);
                    }
                }
                let value = leaf.morphism.images()[(dmask | (b << k)) as usize]
                    .get(&0)
                    .cloned()
                    .unwrap_or_default();
                if value.is_zero() {
                    continue;
                }
                let mut tuple = vec![Polynomial::one()];
                for p in 0..k {
                    tuple.push(if (ibits >> p) & 1 == 1 { Polynomial::var(target[p]) } else { Polynomial::one() });
                }
                // x_{t_1}^{i_1} ⊗ ⋯ ⊗ x_{t_k}^{i_k} ⊗ 1, times the value on the right.
                tuple.rotate_left(1);
                tuple[k] = value;
                acc = acc.add(&BSElement::normalize(ctx, target, &[tuple])?);
            }
            images.push(acc.into_coeffs());
        }
        let morphism = BSMorphism::new(source.clone(), target.clone(), images, leaf.morphism.degree() + 2 * k as i64)?;
        out.push(HomBasisElement { leaf_bits: leaf.skeleton.bits_i.clone(), weight: leaf.weight(), morphism });
    }
    Ok(out)
}

/// The same basis obtained by applying the adjunction `𝔉` `k` times.
pub fn hom_basis_by_adjunction(ctx: &Context, source: &Word, target: &Word) -> Result<Vec<BSMorphism>> {
    let word = target.reversed().concat(source);
    light_leaves(ctx, &word)?
        .iter()
        .map(|leaf| {
            let mut f = (*leaf.morphism).clone();
            for _ in 0..target.len() {
                f = f.adjoint_f(ctx)?;
            }
            Ok(f)
        })
        .collect()
}

/// Human-readable rendering of the tree: one line per node, indented by
/// stage, showing the map applied and the resulting target.
pub fn render_tree(ctx: &Context, word: &Word, labels: Option<&[String]>) -> Result<String> {
    let mut out = String::new();
    let name = |w: &Word| if w.is_empty() { String::from("R") } else { w.render(labels) };
    out.push_str(&format!("{}\n", name(word)));
    fn walk(
        ctx: &Context,
        word: &Word,
        node: &Skeleton,
        out: &mut String,
        name: &dyn Fn(&Word) -> String,
    ) -> Result<()> {
        let stage = node.bits_i.len();
        if stage == word.len() {
            return Ok(());
        }
        for i in 0..2 {
            let next = step_skeleton(ctx, node, i, word[stage])?;
            let j = next.bits_j[stage];
            let map = match (j, i) {
                (0, 0) => "mult",
                (0, _) => "id",
                (_, 0) => "braid, cap",
                _ => "braid, keep",
            };
            let light = if stage + 1 == word.len() && next.is_light() { "  *light*" } else { "" };
            out.push_str(&format!(
                "{}{} [{}] -> {} (weight {}){}\n",
                "  ".repeat(stage + 1),
                render_bits(&next.bits_i),
                map,
                name(&next.target),
                next.weight,
                light
            ));
            walk(ctx, word, &next, out, name)?;
        }
        Ok(())
    }
    walk(ctx, word, &Skeleton::root(), &mut out, &name)?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::{CoxeterMatrix, Order};

    fn ctx(m: u32) -> Context {
        Context::new(CoxeterMatrix::dihedral(Order::Finite(m)).unwrap())
    }

    fn w(v: &[usize]) -> Word {
        Word::from(v)
    }

    #[test]
    fn order_on_bits() {
        assert!(precedes(&[1, 0], &[0, 1]).unwrap());
        assert!(precedes(&[1, 0], &[1, 1]).unwrap());
        assert!(!precedes(&[1, 1], &[1, 0]).unwrap());
        assert!(!precedes(&[0, 1], &[0, 1]).unwrap());
        assert!(precedes(&[1], &[0, 1]).is_err());
    }

    #[test]
    fn first_stage() {
        let c = ctx(3);
        let tree = build_tree(&c, &w(&[0])).unwrap();
        assert_eq!(tree.len(), 2);
        assert_eq!(*tree[0].morphism, BSMorphism::m_s(0));
        assert_eq!(*tree[1].morphism, BSMorphism::identity(&w(&[0])));
        assert_eq!(tree[1].target(), &w(&[0]));
    }

    #[test]
    fn descent_branch_on_repeated_letter() {
        let c = ctx(3);
        let tree = build_tree(&c, &w(&[0, 0])).unwrap();
        let leaf = tree.iter().find(|l| l.bits_i() == [1, 0]).unwrap();
        assert_eq!(leaf.bits_j(), [0, 1]);
        assert!(leaf.target().is_empty());
        assert_eq!(leaf.weight(), 1);
        assert_eq!(*leaf.morphism, BSMorphism::i_s0(0));
        assert!(leaf.skeleton.path_log[0].1.is_empty());
    }

    #[test]
    fn srsr_example() {
        let c = ctx(3);
        let word = w(&[0, 1, 0, 1]);
        let light = light_leaves(&c, &word).unwrap();
        assert_eq!(light.len(), 3);
        let mut weights: Vec<usize> = light.iter().map(Leaf::weight).collect();
        weights.sort();
        assert_eq!(weights, vec![0, 1, 1]);
        assert_eq!(light.iter().filter(|l| l.bits_i()[0] == 1).count(), 1);
        assert_eq!(build_tree(&c, &word).unwrap().len(), 16);
        for l in &light {
            assert!(l.morphism.validate(&c).passed());
            assert_eq!(l.morphism.degree(), -2 * l.weight() as i64);
            let si: usize = l.bits_i().iter().map(|&b| b as usize).sum();
            let sj: usize = l.bits_j().iter().map(|&b| b as usize).sum();
            assert_eq!(si, sj);
            assert!(normalsup_chain(&c, &word, l.bits_i()).unwrap());
        }
        assert!(evaluation_matrix(&c, &word).unwrap().is_unitriangular());
        assert!(census_matches_hecke(&c, &word).unwrap());
        let indices = light_indices(&c, &word).unwrap();
        assert_eq!(indices, light.iter().map(|l| l.bits_i().to_vec()).collect::<Vec<_>>());
    }

    #[test]
    fn empty_and_single_words() {
        let c = ctx(3);
        let e = evaluation_matrix(&c, &w(&[])).unwrap();
        assert_eq!(e.entries, vec![vec![Scalar::ONE]]);
        assert_eq!(light_leaves(&c, &w(&[0])).unwrap().len(), 1);
        let census = graded_census(&c, &w(&[0])).unwrap();
        assert_eq!(census.len(), 2);
        assert!(census.values().all(|p| *p == LaurentPoly::one()));
    }

    #[test]
    fn hom_basis_small() {
        let c = ctx(3);
        let basis = hom_basis(&c, &w(&[0]), &w(&[0])).unwrap();
        let mut weights: Vec<usize> = basis.iter().map(|b| b.weight).collect();
        weights.sort();
        assert_eq!(weights, vec![0, 1]);
        let adj = hom_basis_by_adjunction(&c, &w(&[0]), &w(&[0])).unwrap();
        for (b, a) in basis.iter().zip(&adj) {
            assert!(b.morphism.validate(&c).passed());
            assert_eq!(&b.morphism, a);
        }
        let plain = hom_basis(&c, &w(&[0, 1]), &w(&[])).unwrap();
        let leaves = light_leaves(&c, &w(&[0, 1])).unwrap();
        assert_eq!(plain.len(), leaves.len());
        for (b, l) in plain.iter().zip(&leaves) {
            assert_eq!(b.morphism, *l.morphism);
        }
    }

    #[test]
    fn tree_rendering_marks_light_leaves() {
        let c = ctx(3);
        let text = render_tree(&c, &w(&[0, 1, 0, 1]), None).unwrap();
        assert_eq!(text.matches("*light*").count(), 3);
    }
}
