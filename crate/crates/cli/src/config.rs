//! The line-oriented system description:
//!
//! ```text
//! rank 2
//! m 0 1 3
//! cartan 0 1 -1/1
//! label 0 s
//! label 1 r
//! ```

use std::collections::BTreeMap;

use soergel_core::bsmod::Context;
use soergel_core::{CartanRealization, CoxeterMatrix, Generator, Order, Scalar, Word};

#[derive(Clone, Debug)]
pub struct Config {
    pub matrix: CoxeterMatrix,
    pub cartan: Vec<(Generator, Generator, Scalar)>,
    pub labels: Vec<String>,
}

impl Config {
    /// `m(s,r) = 3` with generators labelled `s` and `r`.
    pub fn default_a2() -> Self {
        Config {
            matrix: CoxeterMatrix::dihedral(Order::Finite(3)).expect("valid"),
            cartan: Vec::new(),
            labels: vec!["s".into(), "r".into()],
        }
    }

    pub fn parse(text: &str) -> Result<Self, String> {
        let mut rank = None;
        let mut pairs = Vec::new();
        let mut cartan: BTreeMap<(Generator, Generator), Scalar> = BTreeMap::new();
        let mut labels: BTreeMap<Generator, String> = BTreeMap::new();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: &str| format!("line {}: {msg}: {raw}", n + 1);
            let fields: Vec<&str> = line.split_whitespace().collect();
            let index = |s: &str| s.parse::<Generator>().map_err(|_| err("expected a generator index"));
            match fields[0] {
                "rank" => {
                    if fields.len() != 2 {
                        return Err(err("expected `rank N`"));
                    }
                    if rank.is_some() {
                        return Err(err("rank given twice"));
                    }
                    rank = Some(fields[1].parse::<usize>().map_err(|_| err("bad rank"))?);
                }
                "m" => {
                    if fields.len() != 4 {
                        return Err(err("expected `m I J V`"));
                    }
                    let m = match fields[3] {
                        "inf" => Order::Infinite,
                        v => Order::Finite(v.parse().map_err(|_| err("order must be an integer or inf"))?),
                    };
                    pairs.push((index(fields[1])?, index(fields[2])?, m));
                }
                "cartan" => {
                    if fields.len() != 4 {
                        return Err(err("expected `cartan I J NUM/DEN`"));
                    }
                    let v: Scalar = fields[3].parse().map_err(|_| err("bad rational"))?;
                    if cartan.insert((index(fields[1])?, index(fields[2])?), v).is_some() {
                        return Err(err("cartan entry given twice"));
                    }
                }
                "label" => {
                    if fields.len() != 3 {
                        return Err(err("expected `label I NAME`"));
                    }
                    let name = fields[2];
                    if name.contains(',') {
                        return Err(err("labels cannot contain commas"));
                    }
                    if labels.values().any(|l| l == name) {
                        return Err(err("label used twice"));
                    }
                    if labels.insert(index(fields[1])?, name.to_string()).is_some() {
                        return Err(err("generator labelled twice"));
                    }
                }
                key => return Err(err(&format!("unknown key `{key}`"))),
            }
        }
        let rank = rank.ok_or("missing `rank N`")?;
        let matrix = CoxeterMatrix::from_pairs(rank, &pairs).map_err(|e| e.to_string())?;
        if let Some((&i, _)) = labels.iter().find(|(&i, _)| i >= rank) {
            return Err(format!("label for generator {i} out of range for rank {rank}"));
        }
        let labels = (0..rank).map(|i| labels.get(&i).cloned().unwrap_or_else(|| i.to_string())).collect();
        let cartan = cartan.into_iter().map(|((i, j), v)| (i, j, v)).collect();
        Ok(Config { matrix, cartan, labels })
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn realization(&self) -> Result<CartanRealization, String> {
        CartanRealization::with_overrides(&self.matrix, &self.cartan).map_err(|e| e.to_string())
    }

    pub fn context(&self) -> Result<Context, String> {
        Ok(Context::with_realization(self.realization()?))
    }

    /// Comma separated labels or indices; the empty string is the empty word.
    pub fn parse_word(&self, csv: &str) -> Result<Word, String> {
        let csv = csv.trim();
        if csv.is_empty() {
            return Ok(Word::empty());
        }
        let mut letters = Vec::new();
        for part in csv.split(',') {
            let part = part.trim();
            let s = match self.labels.iter().position(|l| l == part) {
                Some(s) => s,
                None => part.parse::<Generator>().map_err(|_| format!("unknown letter `{part}`"))?,
            };
            if s >= self.rank() {
                return Err(format!("letter `{part}` out of range for rank {}", self.rank()));
            }
            letters.push(s);
        }
        Ok(Word::from(letters))
    }
}
