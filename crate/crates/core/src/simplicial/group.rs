use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use num_bigint::BigInt;

use super::{AbstractComplex, Simplex, Vertex};
use crate::error::{Error, Result};
use crate::f2linalg::{smith_normal_form, IntMatrix};

use super::homology::HomologyGroup;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(generator: usize) -> Self {
        Letter {
            generator,
            inverse: false,
        }
    }

    pub fn inv(self) -> Self {
        Letter {
            inverse: !self.inverse,
            ..self
        }
    }

    /// Coset-table column: `2g` for `g`, `2g + 1` for `g^-1`.
    fn column(self) -> usize {
        2 * self.generator + usize::from(self.inverse)
    }
}

/// Finite presentation. `labels[g]` names generator `g` (for edge-path
/// groups, the non-tree edge it comes from).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupPresentation {
    pub labels: Vec<String>,
    pub relators: Vec<Vec<Letter>>,
}

impl GroupPresentation {
    /// Relators given as strings over single-letter generators; upper case is
    /// the inverse, e.g. `"abAB"`.
    pub fn from_words(generators: &str, relators: &[&str]) -> Result<Self> {
        let gens: Vec<char> = generators.chars().collect();
        let mut out = Vec::new();
        for r in relators {
            let mut word = Vec::new();
            for c in r.chars() {
                let lower = c.to_ascii_lowercase();
                let g = gens.iter().position(|&x| x == lower).ok_or_else(|| {
                    Error::input(format!("unknown generator {c:?} in relator {r:?}"))
                })?;
                word.push(Letter {
                    generator: g,
                    inverse: c.is_ascii_uppercase(),
                });
            }
            out.push(word);
        }
        Ok(GroupPresentation {
            labels: gens.iter().map(char::to_string).collect(),
            relators: out,
        })
    }

    pub fn generator_count(&self) -> usize {
        self.labels.len()
    }

    pub fn format_word(&self, word: &[Letter]) -> String {
        if word.is_empty() {
            return "1".into();
        }
        word.iter()
            .map(|l| {
                let name = &self.labels[l.generator];
                if l.inverse {
                    format!("{name}^-1")
                } else {
                    name.clone()
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Display for GroupPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rels: Vec<String> = self.relators.iter().map(|r| self.format_word(r)).collect();
        write!(f, "< {} | {} >", self.labels.join(", "), rels.join(", "))
    }
}

fn free_reduce(word: Vec<Letter>) -> Vec<Letter> {
    let mut out: Vec<Letter> = Vec::with_capacity(word.len());
    for l in word {
        if out.last() == Some(&l.inv()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

/// Edge-path group of the 2-skeleton. A BFS spanning tree rooted at the
/// basepoint (default: smallest vertex) is collapsed; each remaining edge
/// `{a < b}` is a generator oriented from `a` to `b`, and every triangle
/// `{a < b < c}` contributes `g_ab g_bc g_ac^-1`. Trivial relators are dropped.
pub fn fundamental_group(
    k: &AbstractComplex,
    basepoint: Option<Vertex>,
) -> Result<GroupPresentation> {
    let root = match basepoint {
        Some(v) if k.vertices().contains(&v) => v,
        Some(v) => return Err(Error::input(format!("basepoint {v} is not a vertex"))),
        None => *k
            .vertices()
            .first()
            .ok_or_else(|| Error::input("the empty complex has no fundamental group"))?,
    };
    if !k.is_connected() {
        return Err(Error::input("complex is not connected"));
    }
    let edges = k.simplices_of_dim(1);
    let mut adjacency: BTreeMap<Vertex, Vec<Vertex>> = BTreeMap::new();
    for e in &edges {
        let (a, b) = (e.vertices()[0], e.vertices()[1]);
        adjacency.entry(a).or_default().push(b);
        adjacency.entry(b).or_default().push(a);
    }
    let mut tree = std::collections::BTreeSet::new();
    let mut seen = std::collections::BTreeSet::from([root]);
    let mut queue = VecDeque::from([root]);
    while let Some(v) = queue.pop_front() {
        for &w in adjacency.get(&v).into_iter().flatten() {
            if seen.insert(w) {
                tree.insert(Simplex::from_sorted(vec![v.min(w), v.max(w)]));
                queue.push_back(w);
            }
        }
    }
    let mut index = BTreeMap::new();
    let mut labels = Vec::new();
    for e in &edges {
        if !tree.contains(e) {
            index.insert(e.clone(), labels.len());
            labels.push(format!("{e}"));
        }
    }
    let letter = |a: Vertex, b: Vertex, inverse: bool| {
        index
            .get(&Simplex::from_sorted(vec![a, b]))
            .map(|&g| Letter {
                generator: g,
                inverse,
            })
    };
    let mut relators = Vec::new();
    for t in k.simplices_of_dim(2) {
        let [a, b, c] = [t.vertices()[0], t.vertices()[1], t.vertices()[2]];
        let word: Vec<Letter> = [letter(a, b, false), letter(b, c, false), letter(a, c, true)]
            .into_iter()
            .flatten()
            .collect();
        let word = free_reduce(word);
        if !word.is_empty() {
            relators.push(word);
        }
    }
    Ok(GroupPresentation { labels, relators })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CosetOutcome {
    /// The table closed; this is the group order.
    Order(usize),
    /// More than `limit` cosets were needed.
    Exceeded { limit: usize },
}

struct CosetTable {
    columns: usize,
    table: Vec<Vec<Option<usize>>>,
    parent: Vec<usize>,
    limit: usize,
}

struct LimitHit;

impl CosetTable {
    fn find(&mut self, mut c: usize) -> usize {
        let mut root = c;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        while self.parent[c] != root {
            let next = self.parent[c];
            self.parent[c] = root;
            c = next;
        }
        root
    }

    fn is_live(&self, c: usize) -> bool {
        self.parent[c] == c
    }

    fn define(&mut self, c: usize, x: usize) -> Result<(), LimitHit> {
        if self.table.len() >= self.limit {
            return Err(LimitHit);
        }
        let n = self.table.len();
        self.table.push(vec![None; self.columns]);
        self.parent.push(n);
        self.table[c][x] = Some(n);
        self.table[n][x ^ 1] = Some(c);
        Ok(())
    }

    fn merge(&mut self, a: usize, b: usize, queue: &mut Vec<usize>) {
        let (a, b) = (self.find(a), self.find(b));
        if a == b {
            return;
        }
        let (keep, drop) = (a.min(b), a.max(b));
        self.parent[drop] = keep;
        queue.push(drop);
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        let mut queue = Vec::new();
        self.merge(a, b, &mut queue);
        let mut i = 0;
        while i < queue.len() {
            let g = queue[i];
            i += 1;
            for x in 0..self.columns {
                let Some(d) = self.table[g][x] else { continue };
                self.table[d][x ^ 1] = None;
                let mu = self.find(g);
                let nu = self.find(d);
                if let Some(t) = self.table[mu][x] {
                    self.merge(nu, t, &mut queue);
                } else if let Some(t) = self.table[nu][x ^ 1] {
                    self.merge(mu, t, &mut queue);
                } else {
                    self.table[mu][x] = Some(nu);
                    self.table[nu][x ^ 1] = Some(mu);
                }
            }
        }
    }

    fn scan_and_fill(&mut self, c: usize, word: &[usize]) -> Result<(), LimitHit> {
        let mut f = c;
        let mut b = c;
        // Unscanned letters are `word[i..j]`.
        let mut i = 0usize;
        let mut j = word.len();
        loop {
            while i < j {
                let Some(n) = self.table[f][word[i]] else {
                    break;
                };
                f = n;
                i += 1;
            }
            if i == j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j > i {
                let Some(n) = self.table[b][word[j - 1] ^ 1] else {
                    break;
                };
                b = n;
                j -= 1;
            }
            if i == j {
                self.coincidence(f, b);
                return Ok(());
            }
            if j == i + 1 {
                self.table[f][word[i]] = Some(b);
                self.table[b][word[i] ^ 1] = Some(f);
                return Ok(());
            }
            self.define(f, word[i])?;
        }
    }
}

/// Todd–Coxeter enumeration of the cosets of the trivial subgroup (HLT
/// strategy, relators in input order, cosets processed FIFO). `limit` caps the
/// total number of cosets ever defined.
pub fn coset_enumeration(p: &GroupPresentation, limit: usize) -> CosetOutcome {
    let columns = 2 * p.generator_count();
    let mut t = CosetTable {
        columns,
        table: vec![vec![None; columns]],
        parent: vec![0],
        limit: limit.max(1),
    };
    let relators: Vec<Vec<usize>> = p
        .relators
        .iter()
        .map(|r| r.iter().map(|l| l.column()).collect())
        .collect();
    let mut c = 0;
    while c < t.table.len() {
        let step = (|| -> Result<(), LimitHit> {
            for r in &relators {
                if !t.is_live(c) {
                    break;
                }
                t.scan_and_fill(c, r)?;
            }
            for x in 0..columns {
                if t.is_live(c) && t.table[c][x].is_none() {
                    t.define(c, x)?;
                }
            }
            Ok(())
        })();
        if step.is_err() {
            return CosetOutcome::Exceeded { limit };
        }
        c += 1;
    }
    CosetOutcome::Order((0..t.table.len()).filter(|&c| t.is_live(c)).count())
}

/// Abelianization as `Z^r ⊕ torsion`, from the SNF of the exponent-sum matrix.
pub fn abelianization(p: &GroupPresentation) -> HomologyGroup {
    let n = p.generator_count();
    let mut m = IntMatrix::zeros(p.relators.len(), n);
    for (i, r) in p.relators.iter().enumerate() {
        for l in r {
            let cur = m.get(i, l.generator).clone();
            let delta = if l.inverse { -1 } else { 1 };
            m.set(i, l.generator, cur + BigInt::from(delta));
        }
    }
    let snf = smith_normal_form(&m);
    HomologyGroup {
        rank: n - snf.rank(),
        torsion: snf.torsion(),
    }
}
