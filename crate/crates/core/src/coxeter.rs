//! Word combinatorics for an arbitrary Coxeter system.
//!
//! Group elements are handled through words in the generators. Reduction and
//! canonical forms follow Tits' solution of the word problem: two reduced
//! words represent the same element iff they are connected by braid moves, so
//! the canonical form of an element is the lexicographically least word in
//! the braid-move closure of any of its reduced expressions.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::format;
use alloc::rc::Rc;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cell::RefCell;
use core::fmt;
use core::ops::Deref;

use crate::error::{Error, Result};

/// Index of a simple reflection, in `0..rank`.
pub type Generator = usize;

/// Largest supported rank. Monomials pack one exponent byte per generator.
pub const MAX_RANK: usize = 7;

/// The order `m(s,t)` of a product of two generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Order {
    Finite(u32),
    Infinite,
}

impl Order {
    pub fn finite(self) -> Option<usize> {
        match self {
            Order::Finite(m) => Some(m as usize),
            Order::Infinite => None,
        }
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(m) => write!(f, "{m}"),
            Order::Infinite => f.write_str("inf"),
        }
    }
}

/// Symmetric table of the orders `m(s,t)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoxeterMatrix {
    rank: usize,
    entries: Vec<Order>,
}

impl CoxeterMatrix {
    /// Builds and validates a matrix from its full table.
    ///
    /// Off-diagonal orders are restricted to 2, 3, 4, 6 and infinity: these
    /// are exactly the values with a realization over the rationals.
    pub fn new(table: Vec<Vec<Order>>) -> Result<Self> {
        let rank = table.len();
        if rank == 0 || rank > MAX_RANK {
            return Err(Error::InvalidCoxeterMatrix(format!(
                "rank must be between 1 and {MAX_RANK}, got {rank}"
            )));
        }
        let mut entries = Vec::with_capacity(rank * rank);
        for (i, row) in table.iter().enumerate() {
            if row.len() != rank {
                return Err(Error::InvalidCoxeterMatrix(format!(
                    "row {i} has {} entries, expected {rank}",
                    row.len()
                )));
            }
            entries.extend_from_slice(row);
        }
        let cm = CoxeterMatrix { rank, entries };
        for s in 0..rank {
            if cm.order(s, s) != Order::Finite(1) {
                return Err(Error::InvalidCoxeterMatrix(format!("m({s},{s}) must be 1")));
            }
            for t in 0..rank {
                if cm.order(s, t) != cm.order(t, s) {
                    return Err(Error::InvalidCoxeterMatrix(format!(
                        "m({s},{t}) = {} differs from m({t},{s}) = {}",
                        cm.order(s, t),
                        cm.order(t, s)
                    )));
                }
                if s != t {
                    match cm.order(s, t) {
                        Order::Finite(2 | 3 | 4 | 6) | Order::Infinite => {}
                        other => {
                            return Err(Error::InvalidCoxeterMatrix(format!(
                                "m({s},{t}) = {other} is not supported: only 2, 3, 4, 6 and inf \
                                 admit a rational realization"
                            )))
                        }
                    }
                }
            }
        }
        Ok(cm)
    }

    /// Builds a matrix from the off-diagonal entries of each unordered pair.
    pub fn from_pairs(rank: usize, pairs: &[(Generator, Generator, Order)]) -> Result<Self> {
        if rank == 0 || rank > MAX_RANK {
            return Err(Error::InvalidCoxeterMatrix(format!(
                "rank must be between 1 and {MAX_RANK}, got {rank}"
            )));
        }
        let mut table = vec![vec![Order::Infinite; rank]; rank];
        let mut seen = BTreeSet::new();
        for &(i, j, m) in pairs {
            if i >= rank || j >= rank || i == j {
                return Err(Error::InvalidCoxeterMatrix(format!("bad pair ({i},{j})")));
            }
            let key = (i.min(j), i.max(j));
            if !seen.insert(key) {
                return Err(Error::InvalidCoxeterMatrix(format!("pair ({i},{j}) given twice")));
            }
            table[i][j] = m;
            table[j][i] = m;
        }
        for (i, row) in table.iter_mut().enumerate() {
            row[i] = Order::Finite(1);
        }
        for i in 0..rank {
            for j in i + 1..rank {
                if !seen.contains(&(i, j)) {
                    return Err(Error::InvalidCoxeterMatrix(format!("pair ({i},{j}) missing")));
                }
            }
        }
        Self::new(table)
    }

    /// Rank-two system with `m(0,1) = m`.
    pub fn dihedral(m: Order) -> Result<Self> {
        Self::from_pairs(2, &[(0, 1, m)])
    }

    /// The symmetric group `S_{n+1}` with its Coxeter generators.
    pub fn type_a(n: usize) -> Result<Self> {
        let mut pairs = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let m = if j == i + 1 { 3 } else { 2 };
                pairs.push((i, j, Order::Finite(m)));
            }
        }
        Self::from_pairs(n, &pairs)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn order(&self, s: Generator, t: Generator) -> Order {
        self.entries[s * self.rank + t]
    }

    pub fn check_letters(&self, w: &[Generator]) -> Result<()> {
        match w.iter().find(|&&s| s >= self.rank) {
            Some(&letter) => Err(Error::InvalidGenerator { letter, rank: self.rank }),
            None => Ok(()),
        }
    }
}

/// A finite sequence of generators. The empty word is the identity.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<Generator>);

impl Word {
    pub fn new(letters: Vec<Generator>) -> Self {
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[Generator] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Generator> {
        self.0
    }

    pub fn push(&mut self, s: Generator) {
        self.0.push(s);
    }

    /// `self · s` as a word.
    pub fn pushed(&self, s: Generator) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + 1);
        v.extend_from_slice(&self.0);
        v.push(s);
        Word(v)
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    /// Alternating word `s t s …` of the given length.
    pub fn alternating(s: Generator, t: Generator, len: usize) -> Word {
        Word((0..len).map(|i| if i % 2 == 0 { s } else { t }).collect())
    }

    pub fn slice(&self, start: usize, end: usize) -> Word {
        Word(self.0[start..end].to_vec())
    }

    /// Comma separated letters, using `labels` when given.
    pub fn render(&self, labels: Option<&[String]>) -> String {
        let mut out = String::new();
        for (i, &s) in self.0.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            match labels.and_then(|l| l.get(s)) {
                Some(name) => out.push_str(name),
                None => out.push_str(&format!("{s}")),
            }
        }
        out
    }
}

impl Deref for Word {
    type Target = [Generator];
    fn deref(&self) -> &[Generator] {
        &self.0
    }
}

impl From<Vec<Generator>> for Word {
    fn from(v: Vec<Generator>) -> Self {
        Word(v)
    }
}

impl From<&[Generator]> for Word {
    fn from(v: &[Generator]) -> Self {
        Word(v.to_vec())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.render(None))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Replacement of the alternating subword `first second first …` of length
/// `m(first, second)` starting at `position` by `second first second …`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BraidMove {
    pub position: usize,
    pub first: Generator,
    pub second: Generator,
}

impl BraidMove {
    pub fn apply(&self, w: &Word, cm: &CoxeterMatrix) -> Result<Word> {
        let m = cm.order(self.first, self.second).finite().filter(|_| self.first != self.second);
        let Some(m) = m else {
            return Err(Error::PreconditionViolation(format!(
                "no braid relation between {} and {}",
                self.first, self.second
            )));
        };
        let from = Word::alternating(self.first, self.second, m);
        let end = self.position + m;
        if end > w.len() || w[self.position..end] != from[..] {
            return Err(Error::PreconditionViolation(format!(
                "braid move {self:?} does not match {w}"
            )));
        }
        let mut out = w.0.clone();
        out[self.position..end].copy_from_slice(&Word::alternating(self.second, self.first, m));
        Ok(Word(out))
    }
}

/// A Coxeter matrix together with memo tables for the word problem.
///
/// Caches only ever store values that are recomputed identically, so sharing
/// one system between callers is safe.
#[derive(Debug)]
pub struct CoxeterSystem {
    matrix: CoxeterMatrix,
    closures: RefCell<BTreeMap<Word, Rc<Vec<Word>>>>,
    products: RefCell<BTreeMap<(Word, Generator), (Word, bool)>>,
}

impl Clone for CoxeterSystem {
    fn clone(&self) -> Self {
        CoxeterSystem::new(self.matrix.clone())
    }
}

impl CoxeterSystem {
    pub fn new(matrix: CoxeterMatrix) -> Self {
        CoxeterSystem {
            matrix,
            closures: RefCell::new(BTreeMap::new()),
            products: RefCell::new(BTreeMap::new()),
        }
    }

    pub fn matrix(&self) -> &CoxeterMatrix {
        &self.matrix
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank
    }

    /// All braid moves applicable to `w`, with their results, ordered by
    /// position and then by resulting word.
    pub fn braid_moves(&self, w: &Word) -> Vec<(BraidMove, Word)> {
        let mut out = Vec::new();
        for pos in 0..w.len() {
            let s = w[pos];
            if pos + 1 >= w.len() {
                break;
            }
            let t = w[pos + 1];
            if s == t {
                continue;
            }
            let Some(m) = self.matrix.order(s, t).finite() else {
                continue;
            };
            let mv = BraidMove { position: pos, first: s, second: t };
            if let Ok(next) = mv.apply(w, &self.matrix) {
                out.push((mv, next));
            }
            let _ = m;
        }
        out.sort_by(|a, b| (a.0.position, &a.1).cmp(&(b.0.position, &b.1)));
        out
    }

    /// The braid-move closure of `w`, sorted. Memoized on the least member.
    pub fn braid_closure(&self, w: &Word) -> Rc<Vec<Word>> {
        if let Some(c) = self.closures.borrow().get(w) {
            return c.clone();
        }
        let mut seen = BTreeSet::new();
        let mut queue = VecDeque::new();
        seen.insert(w.clone());
        queue.push_back(w.clone());
        while let Some(u) = queue.pop_front() {
            for (_, v) in self.braid_moves(&u) {
                if seen.insert(v.clone()) {
                    queue.push_back(v);
                }
            }
        }
        let all: Rc<Vec<Word>> = Rc::new(seen.into_iter().collect());
        let mut cache = self.closures.borrow_mut();
        for member in all.iter() {
            cache.insert(member.clone(), all.clone());
        }
        all
    }

    /// Canonical form of `u·s` for a canonical reduced `u`, and whether `s`
    /// is a right descent of `u`.
    fn times_generator(&self, u: &Word, s: Generator) -> (Word, bool) {
        let key = (u.clone(), s);
        if let Some(hit) = self.products.borrow().get(&key) {
            return hit.clone();
        }
        let closure = self.braid_closure(u);
        let result = match closure.iter().find(|e| e.last() == Some(&s)) {
            Some(e) => {
                let shorter = e.slice(0, e.len() - 1);
                (self.braid_closure(&shorter)[0].clone(), true)
            }
            None => (self.braid_closure(&u.pushed(s))[0].clone(), false),
        };
        self.products.borrow_mut().insert(key, result.clone());
        result
    }

    /// Canonical reduced word for the element represented by `w`.
    pub fn reduce(&self, w: &[Generator]) -> Word {
        let mut u = Word::empty();
        for &s in w {
            u = self.times_generator(&u, s).0;
        }
        u
    }

    /// Lexicographically least reduced expression of `w`; same as [`reduce`].
    ///
    /// [`reduce`]: CoxeterSystem::reduce
    pub fn canonical(&self, w: &[Generator]) -> Word {
        self.reduce(w)
    }

    pub fn length(&self, w: &[Generator]) -> usize {
        self.reduce(w).len()
    }

    pub fn is_reduced(&self, w: &[Generator]) -> bool {
        self.length(w) == w.len()
    }

    pub fn equal(&self, u: &[Generator], v: &[Generator]) -> bool {
        self.reduce(u) == self.reduce(v)
    }

    /// True iff `ℓ(ws) < ℓ(w)`.
    pub fn descends_right(&self, w: &[Generator], s: Generator) -> bool {
        let u = self.reduce(w);
        self.times_generator(&u, s).1
    }

    /// Canonical form of `w·s` together with the descent flag, for a `w`
    /// already in canonical form.
    pub fn step(&self, canonical_w: &Word, s: Generator) -> (Word, bool) {
        self.times_generator(canonical_w, s)
    }

    /// All reduced expressions of the element represented by `w`, sorted.
    pub fn reduced_expressions(&self, w: &[Generator]) -> Vec<Word> {
        let u = self.reduce(w);
        (*self.braid_closure(&u)).clone()
    }

    /// Shortest sequence of braid moves turning the reduced word `t` into a
    /// word ending with `s`. Breadth-first, expanding moves in order of
    /// (position, resulting word), so the first path found is the
    /// lexicographically least among the shortest ones.
    pub fn braid_path(&self, t: &Word, s: Generator) -> Result<Vec<BraidMove>> {
        if !self.is_reduced(t) {
            return Err(Error::PreconditionViolation(format!("{t} is not reduced")));
        }
        if !self.descends_right(t, s) {
            return Err(Error::PreconditionViolation(format!(
                "{s} is not a right descent of {t}"
            )));
        }
        if t.last() == Some(&s) {
            return Ok(Vec::new());
        }
        let mut parent: BTreeMap<Word, (Word, BraidMove)> = BTreeMap::new();
        let mut queue = VecDeque::new();
        queue.push_back(t.clone());
        let mut visited = BTreeSet::new();
        visited.insert(t.clone());
        while let Some(u) = queue.pop_front() {
            for (mv, v) in self.braid_moves(&u) {
                if !visited.insert(v.clone()) {
                    continue;
                }
                parent.insert(v.clone(), (u.clone(), mv));
                if v.last() == Some(&s) {
                    let mut path = Vec::new();
                    let mut cur = v;
                    while let Some((prev, mv)) = parent.get(&cur) {
                        path.push(*mv);
                        cur = prev.clone();
                    }
                    path.reverse();
                    return Ok(path);
                }
                queue.push_back(v);
            }
        }
        Err(Error::Internal(format!("no braid path from {t} to a word ending in {s}")))
    }

    /// Replays a braid path, returning every intermediate word (including the
    /// start and the end).
    pub fn replay(&self, t: &Word, path: &[BraidMove]) -> Result<Vec<Word>> {
        let mut words = vec![t.clone()];
        let mut cur = t.clone();
        for mv in path {
            cur = mv.apply(&cur, &self.matrix)?;
            words.push(cur.clone());
        }
        Ok(words)
    }

    /// Every element of length at most `max_len`, as canonical words.
    pub fn elements_up_to(&self, max_len: usize) -> Vec<Word> {
        let mut all = BTreeSet::new();
        let mut frontier = vec![Word::empty()];
        all.insert(Word::empty());
        for _ in 0..max_len {
            let mut next = Vec::new();
            for u in &frontier {
                for s in 0..self.rank() {
                    let (v, down) = self.step(u, s);
                    if !down && all.insert(v.clone()) {
                        next.push(v);
                    }
                }
            }
            frontier = next;
        }
        all.into_iter().collect()
    }
}
