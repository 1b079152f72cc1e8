//! Brute-force oracles shared by the integration tests. They use only the
//! structure constants of an algebra and plain rational elimination, never the
//! engine's evaluation or rank code.

#![allow(dead_code)]

use colorlie::algebra::GradedAlgebra;
use colorlie::group::GroupElement;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Q = BigRational;

pub struct Oracle {
    pub dim: usize,
    pub degrees: Vec<GroupElement>,
    table: Vec<Vec<(usize, Q)>>,
}

impl Oracle {
    pub fn new(a: &GradedAlgebra) -> Self {
        let dim = a.dim();
        let mut table = vec![Vec::new(); dim * dim];
        for c in a.constants() {
            table[c.i * dim + c.j].push((c.k, c.coeff.clone()));
        }
        Oracle {
            dim,
            degrees: a.degrees().to_vec(),
            table,
        }
    }

    pub fn mul(&self, u: &[Q], v: &[Q]) -> Vec<Q> {
        let mut out = vec![Q::zero(); self.dim];
        for (i, x) in u.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in v.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                for (k, c) in &self.table[i * self.dim + j] {
                    out[*k] += x * y * c;
                }
            }
        }
        out
    }

    pub fn unit(&self, i: usize) -> Vec<Q> {
        let mut v = vec![Q::zero(); self.dim];
        v[i] = Q::one();
        v
    }

    pub fn basis_of(&self, g: GroupElement) -> Vec<usize> {
        (0..self.dim).filter(|&i| self.degrees[i] == g).collect()
    }
}

/// Bracketing tree over variable positions.
#[derive(Clone, Debug)]
pub enum Tree {
    Leaf(usize),
    Node(Box<Tree>, Box<Tree>),
}

impl Tree {
    pub fn eval(&self, o: &Oracle, values: &[Vec<Q>]) -> Vec<Q> {
        match self {
            Tree::Leaf(v) => values[*v].clone(),
            Tree::Node(l, r) => o.mul(&l.eval(o, values), &r.eval(o, values)),
        }
    }
}

fn trees_over(leaves: &[usize]) -> Vec<Tree> {
    if leaves.len() == 1 {
        return vec![Tree::Leaf(leaves[0])];
    }
    let mut out = Vec::new();
    for cut in 1..leaves.len() {
        for l in trees_over(&leaves[..cut]) {
            for r in trees_over(&leaves[cut..]) {
                out.push(Tree::Node(Box::new(l.clone()), Box::new(r.clone())));
            }
        }
    }
    out
}

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// All bracketings of all orderings of `0..n`.
pub fn all_monomials(n: usize) -> Vec<Tree> {
    permutations(n).iter().flat_map(|p| trees_over(p)).collect()
}

/// Left-normed monomials starting with variable 0.
pub fn left_normed_monomials(n: usize) -> Vec<Tree> {
    permutations(n - 1)
        .into_iter()
        .map(|p| {
            let mut t = Tree::Leaf(0);
            for v in p {
                t = Tree::Node(Box::new(t), Box::new(Tree::Leaf(v + 1)));
            }
            t
        })
        .collect()
}

/// Rank by plain Gaussian elimination over the rationals.
pub fn rank(mut rows: Vec<Vec<Q>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let pivot = rows[r][c].clone();
        let prow = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = &row[c] / &pivot;
            for (x, y) in row.iter_mut().zip(&prow).skip(c) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    r
}

/// Rank of the monomials evaluated on every tuple drawn from `choices`
/// (one list of basis indices per variable).
pub fn evaluation_rank(o: &Oracle, monomials: &[Tree], choices: &[Vec<usize>]) -> usize {
    let mut tuples: Vec<Vec<usize>> = vec![vec![]];
    for c in choices {
        tuples = tuples
            .into_iter()
            .flat_map(|t| {
                c.iter().map(move |&i| {
                    let mut t = t.clone();
                    t.push(i);
                    t
                })
            })
            .collect();
    }
    let rows: Vec<Vec<Q>> = monomials
        .iter()
        .map(|m| {
            tuples
                .iter()
                .flat_map(|t| {
                    let values: Vec<Vec<Q>> = t.iter().map(|&i| o.unit(i)).collect();
                    m.eval(o, &values)
                })
                .collect()
        })
        .collect();
    rank(rows)
}

pub fn codim(a: &GradedAlgebra, n: usize, lie: bool) -> usize {
    let o = Oracle::new(a);
    let ms = if lie { left_normed_monomials(n) } else { all_monomials(n) };
    let all: Vec<usize> = (0..o.dim).collect();
    evaluation_rank(&o, &ms, &vec![all; n])
}

/// Component `(k_e, k_a, k_b, k_ab)`: the first `k_e` variables take degree
/// `e`, and so on.
pub fn graded_component(a: &GradedAlgebra, key: [usize; 4]) -> usize {
    let o = Oracle::new(a);
    let n: usize = key.iter().sum();
    let mut choices = Vec::new();
    for (g, &k) in GroupElement::ALL.iter().zip(&key) {
        for _ in 0..k {
            choices.push(o.basis_of(*g));
        }
    }
    evaluation_rank(&o, &all_monomials(n), &choices)
}

/// Standard Young tableaux of the shape, by filling cells one number at a
/// time.
pub fn count_standard_tableaux(shape: &[usize]) -> u64 {
    fn go(filled: &mut Vec<usize>, shape: &[usize], left: usize) -> u64 {
        if left == 0 {
            return 1;
        }
        let mut total = 0;
        for r in 0..shape.len() {
            let ok = filled[r] < shape[r] && (r == 0 || filled[r - 1] > filled[r]);
            if ok {
                filled[r] += 1;
                total += go(filled, shape, left - 1);
                filled[r] -= 1;
            }
        }
        total
    }
    let n = shape.iter().sum();
    go(&mut vec![0; shape.len()], shape, n)
}

pub fn multinomial(key: &[usize; 4]) -> u128 {
    let fact = |k: usize| (1..=k as u128).product::<u128>();
    fact(key.iter().sum()) / key.iter().map(|&k| fact(k)).product::<u128>()
}
