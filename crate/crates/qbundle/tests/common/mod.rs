#![allow(dead_code)]

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use qbundle::instances::{self, InstanceBundle};
use qbundle::ncalg::{Elem, Monomial, MonomialWindow, Presentation, Scalar, Terms};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const BUILTINS: [&str; 4] = ["torus", "su_q2", "smash_w", "hopf_u1"];

pub fn bundle(name: &str) -> InstanceBundle {
    instances::load(name).unwrap_or_else(|e| panic!("{name}: {e}"))
}

/// A word of single letters `g^{±1}`.
type Letters = Vec<(usize, i32)>;

#[derive(Clone, Copy, Debug)]
pub enum Strategy {
    Leftmost,
    Rightmost,
    Random,
}

enum Rel {
    Skew(Scalar),
    General(Vec<(Letters, Scalar)>),
}

/// Brute-force string rewriting straight from the written relations, one step at a time,
/// with the redex picked by a strategy.
pub struct Rewriter {
    pres: Arc<Presentation>,
    rels: HashMap<(usize, usize), Rel>,
}

fn letters(blocks: &[(usize, i32)]) -> Letters {
    blocks.iter().flat_map(|&(g, e)| std::iter::repeat((g, e.signum())).take(e.unsigned_abs() as usize)).collect()
}

fn add(t: &mut BTreeMap<Letters, Scalar>, w: Letters, c: Scalar) {
    let e = t.entry(w).or_insert_with(Scalar::zero);
    *e = &*e + &c;
    if e.is_zero() {
        let k: Vec<_> = t.iter().filter(|(_, v)| v.is_zero()).map(|(k, _)| k.clone()).collect();
        for k in k {
            t.remove(&k);
        }
    }
}

impl Rewriter {
    pub fn new(pres: &Arc<Presentation>) -> Self {
        let mut rels = HashMap::new();
        for r in pres.relations() {
            let (y, x) = (r.first, r.second);
            let rel = if y > x && r.rhs.len() == 1 && r.rhs[0].0 == vec![(x, 1), (y, 1)] {
                Rel::Skew(r.rhs[0].1.clone())
            } else {
                Rel::General(r.rhs.iter().map(|(w, c)| (letters(w), c.clone())).collect())
            };
            rels.insert((y, x), rel);
        }
        Rewriter { pres: pres.clone(), rels }
    }

    fn skew(&self, y: usize, x: usize) -> Option<&Scalar> {
        match self.rels.get(&(y, x)) {
            Some(Rel::Skew(c)) => Some(c),
            _ => None,
        }
    }

    /// Every one-step rewrite of `w`: each is a position and the resulting combination.
    fn steps(&self, w: &Letters) -> Vec<Vec<(Letters, Scalar)>> {
        let mut out = Vec::new();
        for i in 0..w.len().saturating_sub(1) {
            let ((y, s), (x, t)) = (w[i], w[i + 1]);
            let splice = |mid: &[(usize, i32)]| [&w[..i], mid, &w[i + 2..]].concat();
            if y == x {
                if s == -t {
                    out.push(vec![(splice(&[]), Scalar::one())]);
                } else if let Some(Rel::General(rhs)) = self.rels.get(&(y, x)) {
                    out.push(rhs.iter().map(|(r, c)| (splice(r), c.clone())).collect());
                }
                continue;
            }
            match self.rels.get(&(y, x)) {
                Some(Rel::Skew(c)) => {
                    let f = c.pow(s as i64 * t as i64).expect("skew factors are units");
                    out.push(vec![(splice(&[(x, t), (y, s)]), f)]);
                }
                Some(Rel::General(rhs)) if s > 0 && t > 0 => {
                    out.push(rhs.iter().map(|(r, c)| (splice(r), c.clone())).collect());
                }
                _ => {}
            }
        }
        // x moves left past letters it skew-commutes with onto a general rule z·x.
        for i in 1..w.len() {
            let (x, t) = w[i];
            if t < 0 {
                continue;
            }
            let mut factor = Scalar::one();
            let mut j = i;
            while j > 0 {
                let (wj, kj) = w[j - 1];
                if let (Some(Rel::General(rhs)), true) = (self.rels.get(&(wj, x)), kj > 0) {
                    if j == i {
                        break;
                    }
                    let mid: Letters = w[j..i].to_vec();
                    out.push(
                        rhs.iter()
                            .map(|(r, c)| ([&w[..j - 1], &r[..], &mid[..], &w[i + 1..]].concat(), &factor * c))
                            .collect(),
                    );
                    break;
                }
                match self.skew(x, wj) {
                    Some(c) => factor = &factor * &c.pow(-(kj as i64) * t as i64).expect("unit"),
                    None => break,
                }
                j -= 1;
            }
        }
        out
    }

    fn degree(&self, w: &Letters) -> u32 {
        w.iter().map(|&(g, _)| self.pres.gen(g).form_degree).sum()
    }

    /// Rewrites until no step applies and returns the result as merged monomials.
    pub fn normalize(&self, word: &[(usize, i32)], strategy: Strategy, rng: &mut ChaCha8Rng) -> Terms {
        let mut cur: BTreeMap<Letters, Scalar> = BTreeMap::new();
        let start = letters(word);
        if self.degree(&start) <= self.pres.cap() {
            cur.insert(start, Scalar::one());
        }
        for _ in 0..100_000 {
            let reducible: Vec<(Letters, Vec<Vec<(Letters, Scalar)>>)> = cur
                .keys()
                .map(|w| (w.clone(), self.steps(w)))
                .filter(|(_, s)| !s.is_empty())
                .collect();
            let Some((w, steps)) = (match strategy {
                Strategy::Random => reducible.choose(rng).cloned(),
                _ => reducible.into_iter().next(),
            }) else {
                break;
            };
            let step = match strategy {
                Strategy::Leftmost => steps[0].clone(),
                Strategy::Rightmost => steps[steps.len() - 1].clone(),
                Strategy::Random => steps.choose(rng).cloned().unwrap(),
            };
            let c = cur.remove(&w).unwrap();
            for (r, k) in step {
                if self.degree(&r) <= self.pres.cap() {
                    add(&mut cur, r, &c * &k);
                }
            }
        }
        let mut out = Terms::new();
        for (w, c) in cur {
            let mut blocks: Vec<(usize, i32)> = Vec::new();
            for (g, e) in w {
                match blocks.last_mut() {
                    Some((h, k)) if *h == g => *k += e,
                    _ => blocks.push((g, e)),
                }
                if blocks.last().is_some_and(|b| b.1 == 0) {
                    blocks.pop();
                }
            }
            let m = Monomial::from_blocks(blocks);
            let e = out.entry(m.clone()).or_insert_with(Scalar::zero);
            *e = &*e + &c;
            if e.is_zero() {
                out.remove(&m);
            }
        }
        out
    }
}

pub fn random_word(pres: &Presentation, rng: &mut ChaCha8Rng, max_len: usize) -> Vec<(usize, i32)> {
    let n = rng.gen_range(0..=max_len);
    (0..n)
        .map(|_| {
            let g = rng.gen_range(0..pres.gens().len());
            let e = if pres.gen(g).invertible && rng.gen_bool(0.5) { -1 } else { 1 };
            (g, e)
        })
        .collect()
}

pub fn random_scalar(rng: &mut ChaCha8Rng) -> Scalar {
    let c = [-3i64, -2, -1, 1, 2, 3][rng.gen_range(0..6)];
    &Scalar::from_int(c) * &Scalar::q_pow(rng.gen_range(-2..=2))
}

pub fn random_elem(pres: &Arc<Presentation>, basis: &[Monomial], rng: &mut ChaCha8Rng) -> Elem {
    let mut e = Elem::zero(pres);
    for _ in 0..rng.gen_range(1..=3) {
        let m = basis.choose(rng).unwrap().clone();
        e = &e + &Elem::monomial(pres, m).scale(&random_scalar(rng));
    }
    e
}

/// Random words of length ≤ 6 on every built-in total space: the engine's normal form
/// must equal brute-force rewriting under leftmost, rightmost and random strategies.
pub fn confluence_suite(cases: usize, seed: u64) -> Vec<String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let bundles: Vec<InstanceBundle> = BUILTINS.iter().map(|n| bundle(n)).collect();
    let rewriters: Vec<Rewriter> = bundles.iter().map(|b| Rewriter::new(b.total())).collect();
    let mut failures = Vec::new();
    for i in 0..cases {
        let k = i % bundles.len();
        let pres = bundles[k].total();
        let word = random_word(pres, &mut rng, 6);
        let engine = match pres.normalize_word(&word) {
            Ok(t) => t,
            Err(e) => {
                failures.push(format!("{}: {}: {e}", bundles[k].name, pres.render_word(&word)));
                continue;
            }
        };
        for s in [Strategy::Leftmost, Strategy::Rightmost, Strategy::Random] {
            let oracle = rewriters[k].normalize(&word, s, &mut rng);
            if oracle != engine {
                failures.push(format!("{}: {} ({s:?})", bundles[k].name, pres.render_word(&word)));
            }
        }
    }
    failures
}

/// `(xy)z = x(yz)` for random combinations of window monomials, forms included.
pub fn associativity_suite(cases: usize, seed: u64) -> Vec<String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let bundles: Vec<InstanceBundle> = BUILTINS.iter().map(|n| bundle(n)).collect();
    let bases: Vec<Vec<Monomial>> = bundles
        .iter()
        .map(|b| MonomialWindow::new(1).with_forms(b.total().cap().min(2)).enumerate(b.total()).unwrap())
        .collect();
    let mut failures = Vec::new();
    for i in 0..cases {
        let k = i % bundles.len();
        let pres = bundles[k].total();
        let [x, y, z] = [0; 3].map(|_| random_elem(pres, &bases[k], &mut rng));
        let lhs = x.mul(&y).and_then(|xy| xy.mul(&z));
        let rhs = y.mul(&z).and_then(|yz| x.mul(&yz));
        match (lhs, rhs) {
            (Ok(l), Ok(r)) if l == r => {}
            (l, r) => failures.push(format!("{}: ({x})({y})({z}): {l:?} vs {r:?}", bundles[k].name)),
        }
    }
    failures
}
