//! Independent oracle: Coxeter groups through faithful representations and
//! their Hecke algebras, computed without the library's word problem.

#![allow(dead_code)]

use std::collections::{BTreeMap, VecDeque};

use soergel_core::{CoxeterMatrix, Order, Word};

/// A group element as the image of a fixed faithful representation.
pub type Elt = Vec<i64>;

/// Polynomial in `q` as exponent → coefficient.
pub type QPoly = BTreeMap<i64, i64>;

pub struct Group {
    pub rank: usize,
    gens: Vec<Box<dyn Fn(&Elt) -> Elt>>,
    pub identity: Elt,
    pub length: BTreeMap<Elt, usize>,
}

impl Group {
    fn build(rank: usize, identity: Elt, gens: Vec<Box<dyn Fn(&Elt) -> Elt>>) -> Self {
        let mut length = BTreeMap::new();
        length.insert(identity.clone(), 0);
        let mut queue = VecDeque::from([identity.clone()]);
        while let Some(x) = queue.pop_front() {
            let l = length[&x];
            for g in &gens {
                let y = g(&x);
                if !length.contains_key(&y) {
                    length.insert(y.clone(), l + 1);
                    queue.push_back(y);
                }
            }
        }
        Group { rank, gens, identity, length }
    }

    /// The dihedral group of order `2m` as affine maps `x ↦ εx + k (mod m)`,
    /// stored as `[ε, k]`; `s = [-1, 0]`, `r = [-1, 1]`, acting on the right.
    pub fn dihedral(m: i64) -> Self {
        let refl = |k: i64| {
            move |x: &Elt| -> Elt {
                // x ∘ σ_k where σ_k(y) = k − y: (ε, c) ∘ (−1, k) = (−ε, εk + c)
                vec![-x[0], (x[0] * k + x[1]).rem_euclid(m)]
            }
        };
        Group::build(2, vec![1, 0], vec![Box::new(refl(0)), Box::new(refl(1))])
    }

    /// The symmetric group on `n + 1` points, `s_i` swapping positions `i, i+1`.
    pub fn symmetric(n: usize) -> Self {
        let gens: Vec<Box<dyn Fn(&Elt) -> Elt>> = (0..n)
            .map(|i| {
                Box::new(move |x: &Elt| {
                    let mut y = x.clone();
                    y.swap(i, i + 1);
                    y
                }) as Box<dyn Fn(&Elt) -> Elt>
            })
            .collect();
        Group::build(n, (0..=n as i64).collect(), gens)
    }

    pub fn times(&self, x: &Elt, s: usize) -> Elt {
        (self.gens[s])(x)
    }

    pub fn element(&self, word: &[usize]) -> Elt {
        word.iter().fold(self.identity.clone(), |x, &s| self.times(&x, s))
    }

    pub fn len(&self, x: &Elt) -> usize {
        self.length[x]
    }

    /// `h · T_s` in the standard basis.
    pub fn hecke_times(&self, h: &BTreeMap<Elt, QPoly>, s: usize) -> BTreeMap<Elt, QPoly> {
        let mut out: BTreeMap<Elt, QPoly> = BTreeMap::new();
        for (x, p) in h {
            let xs = self.times(x, s);
            if self.len(&xs) > self.len(x) {
                add(out.entry(xs).or_default(), p, 0, 1);
            } else {
                // T_x T_s = (q−1) T_x + q T_{xs}
                add(out.entry(x.clone()).or_default(), p, 1, 1);
                add(out.entry(x.clone()).or_default(), p, 0, -1);
                add(out.entry(xs).or_default(), p, 1, 1);
            }
        }
        out.retain(|_, p| !p.is_empty());
        out
    }

    /// `(1+T_{s_1})⋯(1+T_{s_n}) = Σ p^x T_x`.
    pub fn product_one_plus(&self, word: &[usize]) -> BTreeMap<Elt, QPoly> {
        let mut h = BTreeMap::from([(self.identity.clone(), QPoly::from([(0, 1)]))]);
        for &s in word {
            let t = self.hecke_times(&h, s);
            for (x, p) in t {
                add(h.entry(x).or_default(), &p, 0, 1);
            }
            h.retain(|_, p| !p.is_empty());
        }
        h
    }

    pub fn tau_of_product(&self, word: &[usize]) -> QPoly {
        self.product_one_plus(word).remove(&self.identity).unwrap_or_default()
    }
}

/// `acc += c · q^shift · p`
pub fn add(acc: &mut QPoly, p: &QPoly, shift: i64, c: i64) {
    for (e, v) in p {
        let entry = acc.entry(e + shift).or_insert(0);
        *entry += c * v;
        if *entry == 0 {
            acc.remove(&(e + shift));
        }
    }
}

pub fn qpoly_of(l: &soergel_core::LaurentPoly) -> QPoly {
    l.q_coefficients()
        .expect("a polynomial in q")
        .into_iter()
        .map(|(e, c)| (e, i64::try_from(c).expect("small coefficient")))
        .collect()
}

/// Number of monomials of degree `d` (with `deg x = 2`) in `rank` variables.
pub fn dim_r(rank: usize, d: i64) -> usize {
    if d < 0 || d % 2 != 0 {
        return 0;
    }
    let k = (d / 2) as usize;
    // C(k + rank − 1, rank − 1)
    let mut num = 1usize;
    for i in 0..rank - 1 {
        num = num * (k + 1 + i) / (i + 1);
    }
    num
}

/// The systems of the test corpus: dihedral with `m ∈ {2,3,4,6}` and the
/// rank-3 chain with orders 3, 3 and 2.
pub fn corpus() -> Vec<(String, CoxeterMatrix, Group)> {
    let mut out = Vec::new();
    for m in [2u32, 3, 4, 6] {
        out.push((
            format!("I2({m})"),
            CoxeterMatrix::dihedral(Order::Finite(m)).unwrap(),
            Group::dihedral(m as i64),
        ));
    }
    let a3 = CoxeterMatrix::from_pairs(3, &[(0, 1, Order::Finite(3)), (1, 2, Order::Finite(3)), (0, 2, Order::Finite(2))])
        .unwrap();
    out.push((String::from("A3"), a3, Group::symmetric(3)));
    out
}

/// All words of length at most `max` over `rank` letters.
pub fn words(rank: usize, max: usize) -> Vec<Word> {
    let mut out = vec![Word::empty()];
    let mut level = vec![Word::empty()];
    for _ in 0..max {
        let mut next = Vec::new();
        for w in &level {
            for s in 0..rank {
                next.push(w.pushed(s));
            }
        }
        out.extend(next.iter().cloned());
        level = next;
    }
    out
}

/// `T_g Z_j` for `g = 0` (`s`) or `1` (`r`), by the rules
/// `T_s Z_j = (q−1)Z_j + qZ_{j−1}` (j odd), `T_r Z_j = (q−1)Z_j + qZ_{j−3}`
/// (j even, `Z_{−1}` read as `Z_0`), `T_s Z_j = Z_{j+1}` (j even),
/// `T_r Z_j = Z_{j+3}` (j odd) and `T_r Z_0 = Z_2`.
fn z_left(g: usize, j: usize) -> Vec<(usize, QPoly)> {
    let one = QPoly::from([(0, 1)]);
    let q = QPoly::from([(1, 1)]);
    let q_minus_1 = QPoly::from([(1, 1), (0, -1)]);
    match (g, j) {
        (1, 0) => vec![(2, one)],
        (0, j) if j % 2 == 0 => vec![(j + 1, one)],
        (0, j) => vec![(j, q_minus_1), (j - 1, q)],
        (_, j) if j % 2 == 1 => vec![(j + 3, one)],
        (_, 2) => vec![(2, q_minus_1), (0, q)],
        (_, j) => vec![(j, q_minus_1), (j - 3, q)],
    }
}

fn z_apply(g: usize, p: &[QPoly]) -> Vec<QPoly> {
    let mut out = vec![QPoly::new(); p.len() + 4];
    for (j, c) in p.iter().enumerate() {
        if c.is_empty() {
            continue;
        }
        for (k, f) in z_left(g, j) {
            add(&mut out[k], &mul(c, &f), 0, 1);
        }
    }
    out
}

fn z_sum(a: &[QPoly], b: &[QPoly]) -> Vec<QPoly> {
    let mut out = vec![QPoly::new(); a.len().max(b.len())];
    for (j, c) in a.iter().enumerate().chain(b.iter().enumerate()) {
        add(&mut out[j], c, 0, 1);
    }
    out
}

/// `p_{j,n}` with `((1+T_s)(1+T_r))^n = Σ_j p_{j,n} Z_j`, obtained by
/// multiplying on the left one factor at a time.
pub fn z_coefficients(n: usize) -> Vec<QPoly> {
    let mut p = vec![QPoly::from([(0, 1)])];
    for _ in 0..n {
        let q = z_sum(&p, &z_apply(1, &p));
        p = z_sum(&q, &z_apply(0, &q));
    }
    while p.last().is_some_and(|c| c.is_empty()) {
        p.pop();
    }
    p
}

pub fn mul(a: &QPoly, b: &QPoly) -> QPoly {
    let mut out = QPoly::new();
    for (e, c) in b {
        add(&mut out, a, *e, *c);
    }
    out
}
