//! Multilinear polynomials of the absolutely free algebra: bracketing-tree
//! monomials, alternation, the symmetric-group action, evaluation in a
//! graded algebra, and the color sign calculus for left-normed monomials.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{GradedAlgebra, StructureTable};
use crate::error::{Error, Result};
use crate::group::{group_mul, GroupElement, SignTable};
use crate::linalg::{add_vectors, format_rational, parse_rational, qi, zero_vector, Vector, Q};
use crate::perm::{all_permutations, factorial, Permutation};
use crate::ring::Ring;

/// Variable label.
pub type Var = u32;

/// Largest alternation expanded into explicit terms (8!).
pub const ALT_EXPANSION_CAP: u128 = 40_320;

/// Largest alternation summed term by term in [`alt_evaluate`] (10!).
pub const ALT_EVALUATION_CAP: u128 = 3_628_800;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Monomial {
    Leaf(Var),
    Node(Box<Monomial>, Box<Monomial>),
}

impl Monomial {
    pub fn leaf(v: Var) -> Self {
        Monomial::Leaf(v)
    }

    pub fn bracket(a: Monomial, b: Monomial) -> Self {
        Monomial::Node(Box::new(a), Box::new(b))
    }

    /// `[x_{w1}, x_{w2}, ..., x_{wn}]` folded left to right.
    pub fn left_normed(word: &[Var]) -> Self {
        assert!(!word.is_empty(), "left-normed word must be nonempty");
        Self::left_normed_of(word.iter().map(|&v| Monomial::Leaf(v)).collect())
    }

    /// Left-normed product of arbitrary factors.
    pub fn left_normed_of(items: Vec<Monomial>) -> Self {
        let mut it = items.into_iter();
        let first = it.next().expect("left-normed product needs a factor");
        it.fold(first, Monomial::bracket)
    }

    pub fn degree(&self) -> usize {
        match self {
            Monomial::Leaf(_) => 1,
            Monomial::Node(a, b) => a.degree() + b.degree(),
        }
    }

    /// Leaves from left to right.
    pub fn leaves(&self) -> Vec<Var> {
        let mut out = Vec::with_capacity(self.degree());
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves(&self, out: &mut Vec<Var>) {
        match self {
            Monomial::Leaf(v) => out.push(*v),
            Monomial::Node(a, b) => {
                a.collect_leaves(out);
                b.collect_leaves(out);
            }
        }
    }

    pub fn var_set(&self) -> BTreeSet<Var> {
        self.leaves().into_iter().collect()
    }

    pub fn is_multilinear(&self) -> bool {
        let leaves = self.leaves();
        leaves.len() == leaves.iter().collect::<BTreeSet<_>>().len()
    }

    /// The word `w` if `self = [x_{w1}, ..., x_{wn}]`.
    pub fn as_left_normed(&self) -> Option<Vec<Var>> {
        match self {
            Monomial::Leaf(v) => Some(vec![*v]),
            Monomial::Node(a, b) => match **b {
                Monomial::Leaf(v) => {
                    let mut w = a.as_left_normed()?;
                    w.push(v);
                    Some(w)
                }
                _ => None,
            },
        }
    }

    pub fn relabel(&self, f: &impl Fn(Var) -> Var) -> Monomial {
        match self {
            Monomial::Leaf(v) => Monomial::Leaf(f(*v)),
            Monomial::Node(a, b) => Monomial::bracket(a.relabel(f), b.relabel(f)),
        }
    }

    /// Replaces the leaf `var` by `with`.
    pub fn substitute(&self, var: Var, with: &Monomial) -> Monomial {
        match self {
            Monomial::Leaf(v) if *v == var => with.clone(),
            Monomial::Leaf(_) => self.clone(),
            Monomial::Node(a, b) => Monomial::bracket(a.substitute(var, with), b.substitute(var, with)),
        }
    }

    /// Bracketing shape with leaves replaced by `0`.
    pub fn shape(&self) -> Monomial {
        self.relabel(&|_| 0)
    }

    /// Fills the leaves of `self` (a shape) with `word` in order.
    pub fn fill(&self, word: &[Var]) -> Monomial {
        let mut it = word.iter().copied();
        let out = self.fill_from(&mut it);
        debug_assert!(it.next().is_none());
        out
    }

    fn fill_from(&self, it: &mut impl Iterator<Item = Var>) -> Monomial {
        match self {
            Monomial::Leaf(_) => Monomial::Leaf(it.next().expect("word shorter than shape")),
            Monomial::Node(a, b) => {
                let l = a.fill_from(it);
                let r = b.fill_from(it);
                Monomial::bracket(l, r)
            }
        }
    }

    pub fn compile(&self) -> CompiledMonomial {
        let mut ops = Vec::with_capacity(2 * self.degree());
        self.compile_into(&mut ops);
        CompiledMonomial { ops }
    }

    fn compile_into(&self, ops: &mut Vec<Op>) {
        match self {
            Monomial::Leaf(v) => ops.push(Op::Push(*v)),
            Monomial::Node(a, b) => {
                a.compile_into(ops);
                b.compile_into(ops);
                ops.push(Op::Mul);
            }
        }
    }

    /// Exact value in `a` with variable values supplied by `value`.
    pub fn eval_in<'a>(&self, a: &GradedAlgebra, value: &impl Fn(Var) -> &'a [Q]) -> Vector {
        match self {
            Monomial::Leaf(v) => value(*v).to_vec(),
            Monomial::Node(l, r) => {
                let lv = l.eval_in(a, value);
                if lv.iter().all(Zero::is_zero) {
                    return lv;
                }
                let rv = r.eval_in(a, value);
                a.multiply_unchecked(&lv, &rv)
            }
        }
    }
}

impl fmt::Display for Monomial {
    /// Nested pairs such as `((1 2) (3 4))`; a left-normed monomial prints as
    /// a flat list, so `(1 2 3)` is `[[x1,x2],x3]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Monomial::Leaf(v) => write!(f, "{v}"),
            Monomial::Node(a, b) => match self.as_left_normed() {
                Some(word) => {
                    let parts: Vec<String> = word.iter().map(|v| v.to_string()).collect();
                    write!(f, "({})", parts.join(" "))
                }
                None => write!(f, "({a} {b})"),
            },
        }
    }
}

impl FromStr for Monomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let tokens = tokenize(s)?;
        let mut pos = 0;
        let m = parse_item(&tokens, &mut pos)?;
        if pos != tokens.len() {
            return Err(Error::Parse(format!("trailing input in monomial {s:?}")));
        }
        Ok(m)
    }
}

#[derive(Debug, PartialEq)]
enum Token {
    Open,
    Close,
    Num(Var),
}

fn tokenize(s: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            '(' | '[' => out.push(Token::Open),
            ')' | ']' => out.push(Token::Close),
            c if c.is_whitespace() || c == ',' => {}
            c if c.is_ascii_digit() => {
                let start = i;
                while i + 1 < chars.len() && chars[i + 1].is_ascii_digit() {
                    i += 1;
                }
                let text: String = chars[start..=i].iter().collect();
                let v = text
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad variable {text:?}")))?;
                out.push(Token::Num(v));
            }
            _ => return Err(Error::Parse(format!("unexpected character {c:?} in monomial"))),
        }
        i += 1;
    }
    Ok(out)
}

fn parse_item(tokens: &[Token], pos: &mut usize) -> Result<Monomial> {
    match tokens.get(*pos) {
        Some(Token::Num(v)) => {
            *pos += 1;
            Ok(Monomial::Leaf(*v))
        }
        Some(Token::Open) => {
            *pos += 1;
            let mut items = Vec::new();
            while tokens.get(*pos) != Some(&Token::Close) {
                if *pos >= tokens.len() {
                    return Err(Error::Parse("unclosed bracket in monomial".into()));
                }
                items.push(parse_item(tokens, pos)?);
            }
            *pos += 1;
            if items.len() < 2 {
                return Err(Error::Parse("a bracket needs at least two factors".into()));
            }
            Ok(Monomial::left_normed_of(items))
        }
        _ => Err(Error::Parse("expected a variable or '('".into())),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Op {
    Push(Var),
    Mul,
}

/// Postfix program of a monomial for repeated evaluation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompiledMonomial {
    ops: Vec<Op>,
}

impl CompiledMonomial {
    pub fn ops(&self) -> &[Op] {
        &self.ops
    }

    /// `values[v]` is the value of variable `v`.
    pub fn eval<R: Ring>(&self, ring: &R, table: &StructureTable<R>, values: &[Vec<R::El>]) -> Vec<R::El> {
        let mut stack: Vec<Vec<R::El>> = Vec::with_capacity(8);
        for op in &self.ops {
            match op {
                Op::Push(v) => stack.push(values[*v as usize].clone()),
                Op::Mul => {
                    let r = stack.pop().expect("well-formed program");
                    let l = stack.pop().expect("well-formed program");
                    stack.push(table.multiply(ring, &l, &r));
                }
            }
        }
        stack.pop().expect("well-formed program")
    }
}

/// Rational combination of multilinear monomials on a common variable set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultilinearPoly {
    vars: Vec<Var>,
    terms: BTreeMap<Monomial, Q>,
    degrees: Option<BTreeMap<Var, GroupElement>>,
}

impl MultilinearPoly {
    pub fn zero(vars: impl IntoIterator<Item = Var>) -> Self {
        let vars: BTreeSet<Var> = vars.into_iter().collect();
        MultilinearPoly {
            vars: vars.into_iter().collect(),
            terms: BTreeMap::new(),
            degrees: None,
        }
    }

    pub fn monomial(m: Monomial) -> Result<Self> {
        Self::from_terms(vec![(Q::one(), m)])
    }

    pub fn from_terms(terms: Vec<(Q, Monomial)>) -> Result<Self> {
        let Some((_, first)) = terms.first() else {
            return Err(Error::InvalidArgument("use MultilinearPoly::zero for the empty sum".into()));
        };
        let mut p = Self::zero(first.var_set());
        for (c, m) in terms {
            p.add_term(c, m)?;
        }
        Ok(p)
    }

    pub fn add_term(&mut self, c: Q, m: Monomial) -> Result<()> {
        if !m.is_multilinear() {
            return Err(Error::InvalidArgument(format!("monomial {m} is not multilinear")));
        }
        let vs: Vec<Var> = m.var_set().into_iter().collect();
        if vs != self.vars {
            return Err(Error::InvalidArgument(format!(
                "monomial {m} has variables {vs:?}, polynomial has {:?}",
                self.vars
            )));
        }
        if c.is_zero() {
            return Ok(());
        }
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
        Ok(())
    }

    pub fn with_degrees(mut self, degrees: BTreeMap<Var, GroupElement>) -> Result<Self> {
        if degrees.keys().copied().collect::<Vec<_>>() != self.vars {
            return Err(Error::InvalidArgument("degree assignment must cover exactly the variables".into()));
        }
        self.degrees = Some(degrees);
        Ok(self)
    }

    pub fn degrees(&self) -> Option<&BTreeMap<Var, GroupElement>> {
        self.degrees.as_ref()
    }

    pub fn vars(&self) -> &[Var] {
        &self.vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Q)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> Q {
        self.terms.get(m).cloned().unwrap_or_else(Q::zero)
    }

    pub fn add(&self, other: &MultilinearPoly) -> Result<MultilinearPoly> {
        let mut out = self.clone();
        if other.vars != out.vars {
            return Err(Error::InvalidArgument("adding polynomials on different variables".into()));
        }
        for (m, c) in &other.terms {
            out.add_term(c.clone(), m.clone())?;
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Q) -> MultilinearPoly {
        let mut out = Self::zero(self.vars.iter().copied());
        out.degrees = self.degrees.clone();
        if !c.is_zero() {
            out.terms = self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect();
        }
        out
    }

    /// Applies a variable renaming to every monomial.
    pub fn relabel(&self, f: &impl Fn(Var) -> Var) -> Result<MultilinearPoly> {
        let mut out = Self::zero(self.vars.iter().map(|&v| f(v)));
        if out.vars.len() != self.vars.len() {
            return Err(Error::VariableCollision("relabeling is not injective".into()));
        }
        for (m, c) in &self.terms {
            out.add_term(c.clone(), m.relabel(f))?;
        }
        if let Some(d) = &self.degrees {
            out.degrees = Some(d.iter().map(|(v, g)| (f(*v), *g)).collect());
        }
        Ok(out)
    }

    /// `(coefficient, monomial)` strings, e.g. `[["1", "(1 2)"], ["-1", "(2 1)"]]`.
    pub fn to_pairs(&self) -> Vec<(String, String)> {
        self.terms
            .iter()
            .map(|(m, c)| (format_rational(c), m.to_string()))
            .collect()
    }

    pub fn from_pairs(pairs: &[(String, String)]) -> Result<MultilinearPoly> {
        let terms = pairs
            .iter()
            .map(|(c, m)| Ok((parse_rational(c)?, m.parse::<Monomial>()?)))
            .collect::<Result<Vec<_>>>()?;
        Self::from_terms(terms)
    }
}

impl fmt::Display for MultilinearPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{}*{}", format_rational(c), m)?;
        }
        Ok(())
    }
}

/// Values of variables in a target algebra.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Evaluation {
    #[serde(with = "evaluation_serde")]
    values: BTreeMap<Var, Vector>,
}

mod evaluation_serde {
    use super::*;

    pub fn serialize<S: serde::Serializer>(v: &BTreeMap<Var, Vector>, s: S) -> std::result::Result<S::Ok, S::Error> {
        let m: BTreeMap<String, Vec<String>> = v
            .iter()
            .map(|(k, vec)| (k.to_string(), vec.iter().map(format_rational).collect()))
            .collect();
        m.serialize(s)
    }

    pub fn deserialize<'de, D: serde::Deserializer<'de>>(d: D) -> std::result::Result<BTreeMap<Var, Vector>, D::Error> {
        use serde::de::Error as _;
        let m: BTreeMap<String, Vec<String>> = BTreeMap::deserialize(d)?;
        m.into_iter()
            .map(|(k, vec)| {
                let key: Var = k.parse().map_err(D::Error::custom)?;
                let vals = vec
                    .iter()
                    .map(|x| parse_rational(x).map_err(D::Error::custom))
                    .collect::<std::result::Result<Vector, _>>()?;
                Ok((key, vals))
            })
            .collect()
    }
}

impl Evaluation {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_map(values: BTreeMap<Var, Vector>) -> Self {
        Evaluation { values }
    }

    pub fn set(&mut self, v: Var, value: Vector) {
        self.values.insert(v, value);
    }

    pub fn with(mut self, v: Var, value: Vector) -> Self {
        self.set(v, value);
        self
    }

    pub fn get(&self, v: Var) -> Option<&Vector> {
        self.values.get(&v)
    }

    pub fn values(&self) -> &BTreeMap<Var, Vector> {
        &self.values
    }

    pub(crate) fn lookup(&self, v: Var) -> &[Q] {
        &self.values[&v]
    }

    /// `v_i` takes the value previously held by `perm_target(v_i)`.
    pub fn permuted(&self, vars: &[Var], p: &Permutation) -> Evaluation {
        let mut out = self.clone();
        for (i, &v) in vars.iter().enumerate() {
            out.values.insert(v, self.values[&vars[p.apply(i)]].clone());
        }
        out
    }
}

fn check_evaluation(f: &MultilinearPoly, a: &GradedAlgebra, e: &Evaluation) -> Result<()> {
    for &v in f.vars() {
        let val = e.get(v).ok_or(Error::MissingVariable(v))?;
        a.check_len(val)?;
        if let Some(degs) = f.degrees() {
            let g = degs[&v];
            for (i, x) in val.iter().enumerate() {
                if !x.is_zero() && a.degree(i) != g {
                    return Err(Error::DegreeMismatch {
                        var: v,
                        detail: format!("value has a nonzero coordinate {i} of degree {}, expected {g}", a.degree(i)),
                    });
                }
            }
        }
    }
    Ok(())
}

/// `f(e)` computed exactly in `a`.
pub fn evaluate(f: &MultilinearPoly, a: &GradedAlgebra, e: &Evaluation) -> Result<Vector> {
    check_evaluation(f, a, e)?;
    Ok(evaluate_unchecked(f, a, e))
}

pub(crate) fn evaluate_unchecked(f: &MultilinearPoly, a: &GradedAlgebra, e: &Evaluation) -> Vector {
    let lookup = |v: Var| e.lookup(v);
    let mut acc = zero_vector(a.dim());
    for (m, c) in f.terms() {
        let val = m.eval_in(a, &lookup);
        for (x, y) in acc.iter_mut().zip(&val) {
            if !y.is_zero() {
                *x += c * y;
            }
        }
    }
    acc
}

fn sorted_subset(f: &MultilinearPoly, y: &[Var]) -> Result<Vec<Var>> {
    let set: BTreeSet<Var> = y.iter().copied().collect();
    if set.len() != y.len() {
        return Err(Error::InvalidArgument("alternating set has repeated variables".into()));
    }
    for v in &set {
        if !f.vars().contains(v) {
            return Err(Error::InvalidArgument(format!("variable {v} is not in the polynomial")));
        }
    }
    Ok(set.into_iter().collect())
}

/// `sum_{s in S_Y} sgn(s) f(.., y_{s(1)}, .., y_{s(k)}, ..)`, expanded.
pub fn alt_on_set(f: &MultilinearPoly, y: &[Var]) -> Result<MultilinearPoly> {
    let ys = sorted_subset(f, y)?;
    let needed = factorial(ys.len());
    if needed > ALT_EXPANSION_CAP {
        return Err(Error::CapExceeded {
            what: format!("alternation on {} variables", ys.len()),
            needed,
            cap: ALT_EXPANSION_CAP,
        });
    }
    let mut out = MultilinearPoly::zero(f.vars().iter().copied());
    out.degrees = f.degrees.clone();
    for p in all_permutations(ys.len()) {
        let sign = qi(p.sign() as i64);
        let rename = |v: Var| match ys.iter().position(|&w| w == v) {
            Some(i) => ys[p.apply(i)],
            None => v,
        };
        for (m, c) in f.terms() {
            out.add_term(c * &sign, m.relabel(&rename))?;
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AltMode {
    /// Every permutation of the set.
    Full,
    /// `samples` seeded random permutations (with repetition).
    Sampled { samples: usize, seed: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AltEvaluation {
    pub value: Vector,
    pub terms: u128,
    pub complete: bool,
}

/// Value of `alt_on_set(f, y)` at `e` without expanding the alternation.
pub fn alt_evaluate(f: &MultilinearPoly, y: &[Var], a: &GradedAlgebra, e: &Evaluation, mode: AltMode) -> Result<AltEvaluation> {
    let ys = sorted_subset(f, y)?;
    check_evaluation(f, a, e)?;
    let term = |p: &Permutation| -> Vector {
        let pe = e.permuted(&ys, p);
        let v = evaluate_unchecked(f, a, &pe);
        if p.sign() < 0 {
            v.into_iter().map(|x| -x).collect()
        } else {
            v
        }
    };
    let zero = || zero_vector(a.dim());
    match mode {
        AltMode::Full => {
            let needed = factorial(ys.len());
            if needed > ALT_EVALUATION_CAP {
                return Err(Error::CapExceeded {
                    what: format!("full alternation on {} variables", ys.len()),
                    needed,
                    cap: ALT_EVALUATION_CAP,
                });
            }
            let perms: Vec<Permutation> = all_permutations(ys.len()).collect();
            let value = perms
                .par_iter()
                .map(term)
                .reduce(zero, |x, y| add_vectors(&x, &y));
            Ok(AltEvaluation {
                value,
                terms: needed,
                complete: true,
            })
        }
        AltMode::Sampled { samples, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let perms: Vec<Permutation> = (0..samples)
                .map(|_| Permutation::random(ys.len(), &mut rng))
                .collect();
            let value = perms
                .par_iter()
                .map(term)
                .reduce(zero, |x, y| add_vectors(&x, &y));
            Ok(AltEvaluation {
                value,
                terms: samples as u128,
                complete: false,
            })
        }
    }
}

/// `lambda_w` in `m_w(g_1 x_1, .., g_n x_n) = g_1..g_n (x) lambda_w m_w(x_1, .., x_n)`
/// for the left-normed word `w`; `degrees[v - 1]` is the degree of variable `v`.
pub fn color_sign(word: &[Var], degrees: &[GroupElement], s: &SignTable) -> Result<i8> {
    let deg = |v: Var| -> Result<GroupElement> {
        v.checked_sub(1)
            .and_then(|i| degrees.get(i as usize).copied())
            .ok_or(Error::MissingVariable(v))
    };
    let Some((&first, rest)) = word.split_first() else {
        return Err(Error::InvalidArgument("empty word".into()));
    };
    let mut acc = deg(first)?;
    let mut sign = 1i8;
    for &v in rest {
        let g = deg(v)?;
        sign *= s.get(acc, g);
        acc = group_mul(acc, g);
    }
    Ok(sign)
}

/// `sum a_w m_w -> sum lambda_w a_w m_w` on left-normed polynomials with a
/// common first variable.
pub fn tilde_transform(f: &MultilinearPoly, degrees: &[GroupElement], s: &SignTable) -> Result<MultilinearPoly> {
    let mut out = MultilinearPoly::zero(f.vars().iter().copied());
    out.degrees = f.degrees.clone();
    let mut first: Option<Var> = None;
    for (m, c) in f.terms() {
        let word = m.as_left_normed().ok_or(Error::NotLeftNormed)?;
        match first {
            None => first = Some(word[0]),
            Some(v) if v != word[0] => return Err(Error::NotLeftNormed),
            _ => {}
        }
        let sign = color_sign(&word, degrees, s)?;
        out.add_term(c * qi(sign as i64), m.clone())?;
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MonomialShape {
    AllBracketings,
    LeftNormedFirstFixed,
}

/// Bracketing shapes with `n` leaves, ordered by the size of the left factor
/// and then recursively.
pub fn bracketing_shapes(n: usize) -> Vec<Monomial> {
    assert!(n >= 1);
    let mut table: Vec<Vec<Monomial>> = vec![Vec::new(), vec![Monomial::Leaf(0)]];
    for k in 2..=n {
        let mut shapes = Vec::new();
        for left in 1..k {
            for l in &table[left] {
                for r in &table[k - left] {
                    shapes.push(Monomial::bracket(l.clone(), r.clone()));
                }
            }
        }
        table.push(shapes);
    }
    table.swap_remove(n)
}

/// Multilinear monomials on `x_1..x_n`: every bracketing with every leaf word
/// (`Catalan(n-1) * n!`), or left-normed words starting with `x_1`
/// (`(n-1)!`). Ordered by shape, then leaf word lexicographically.
pub fn enumerate_monomials(n: usize, shape: MonomialShape) -> Vec<Monomial> {
    assert!(n >= 1, "n must be positive");
    match shape {
        MonomialShape::AllBracketings => {
            let words: Vec<Vec<Var>> = all_permutations(n)
                .map(|p| p.images().iter().map(|&i| i as Var + 1).collect())
                .collect();
            bracketing_shapes(n)
                .iter()
                .flat_map(|s| words.iter().map(move |w| s.fill(w)))
                .collect()
        }
        MonomialShape::LeftNormedFirstFixed => all_permutations(n - 1)
            .map(|p| {
                let mut w: Vec<Var> = vec![1];
                w.extend(p.images().iter().map(|&i| i as Var + 2));
                Monomial::left_normed(&w)
            })
            .collect(),
    }
}

/// `(s f)(x_1, .., x_n) = f(x_{s(1)}, .., x_{s(n)})`: leaf `i` becomes `s(i)`.
pub fn sn_act(sigma: &Permutation, f: &MultilinearPoly) -> Result<MultilinearPoly> {
    let n = sigma.len();
    let expected: Vec<Var> = (1..=n as Var).collect();
    if f.vars() != expected.as_slice() {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: f.vars().len(),
        });
    }
    f.relabel(&|v: Var| sigma.apply(v as usize - 1) as Var + 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{sl2_factory, tensor_color_construct, tensor_element, tensor_index};
    use crate::group::{canonical_cocycle, Bicharacter, GroupElement as G};
    use crate::linalg::unit_vector;

    fn lm(w: &[Var]) -> Monomial {
        Monomial::left_normed(w)
    }

    fn poly(terms: &[(i64, Monomial)]) -> MultilinearPoly {
        MultilinearPoly::from_terms(terms.iter().map(|(c, m)| (qi(*c), m.clone())).collect()).unwrap()
    }

    #[test]
    fn display_and_parse() {
        let m = Monomial::bracket(lm(&[1, 2]), lm(&[3, 4]));
        assert_eq!(m.to_string(), "((1 2) (3 4))");
        assert_eq!(lm(&[1, 2, 3]).to_string(), "(1 2 3)");
        assert_eq!("((1 2) (3 4))".parse::<Monomial>().unwrap(), m);
        assert_eq!("[1, 2, 3]".parse::<Monomial>().unwrap(), lm(&[1, 2, 3]));
        assert!("(1)".parse::<Monomial>().is_err());
        assert!("(1 2".parse::<Monomial>().is_err());
    }

    #[test]
    fn enumerate_counts() {
        assert_eq!(enumerate_monomials(3, MonomialShape::AllBracketings).len(), 12);
        assert_eq!(enumerate_monomials(4, MonomialShape::LeftNormedFirstFixed).len(), 6);
        assert_eq!(enumerate_monomials(5, MonomialShape::AllBracketings).len(), 1680);
        assert_eq!(enumerate_monomials(1, MonomialShape::AllBracketings), vec![Monomial::Leaf(1)]);
        let ln = enumerate_monomials(3, MonomialShape::LeftNormedFirstFixed);
        assert_eq!(ln, vec![lm(&[1, 2, 3]), lm(&[1, 3, 2])]);
    }

    #[test]
    fn evaluate_sl2_bracket() {
        let sl2 = sl2_factory();
        let f = MultilinearPoly::monomial(lm(&[1, 2])).unwrap();
        let e = Evaluation::new().with(1, unit_vector(3, 0)).with(2, unit_vector(3, 2));
        assert_eq!(evaluate(&f, &sl2, &e).unwrap(), unit_vector(3, 1));
        let z = f.scale(&qi(0));
        assert_eq!(evaluate(&z, &sl2, &e).unwrap(), zero_vector(3));
        assert!(matches!(
            evaluate(&f, &sl2, &Evaluation::new().with(1, unit_vector(3, 0))),
            Err(Error::MissingVariable(2))
        ));
    }

    #[test]
    fn evaluate_color_anticommutativity_instance() {
        let sl2 = sl2_factory();
        let l = tensor_color_construct(&sl2, canonical_cocycle().table()).unwrap();
        let beta = Bicharacter::canonical().get(G::A, G::B) as i64;
        let f = poly(&[(1, lm(&[1, 2])), (beta, lm(&[2, 1]))]);
        let u = vec![qi(1), qi(-2), qi(3)];
        let v = vec![qi(0), qi(5), qi(-1)];
        let e = Evaluation::new()
            .with(1, tensor_element(&[qi(0), qi(1), qi(0), qi(0)], &u))
            .with(2, tensor_element(&[qi(0), qi(0), qi(1), qi(0)], &v));
        assert_eq!(evaluate(&f, &l, &e).unwrap(), zero_vector(12));
    }

    #[test]
    fn degree_checked_evaluation() {
        let l = tensor_color_construct(&sl2_factory(), canonical_cocycle().table()).unwrap();
        let f = MultilinearPoly::monomial(lm(&[1, 2]))
            .unwrap()
            .with_degrees([(1, G::A), (2, G::B)].into_iter().collect())
            .unwrap();
        let good = Evaluation::new()
            .with(1, unit_vector(12, tensor_index(G::A, 0, 3)))
            .with(2, unit_vector(12, tensor_index(G::B, 2, 3)));
        assert!(evaluate(&f, &l, &good).is_ok());
        let bad = good.clone().with(2, unit_vector(12, tensor_index(G::E, 2, 3)));
        assert!(matches!(evaluate(&f, &l, &bad), Err(Error::DegreeMismatch { var: 2, .. })));
    }

    #[test]
    fn alternation_examples() {
        let f = MultilinearPoly::monomial(lm(&[1, 2])).unwrap();
        assert_eq!(alt_on_set(&f, &[1]).unwrap(), f);
        let alt = alt_on_set(&f, &[1, 2]).unwrap();
        assert_eq!(alt, poly(&[(1, lm(&[1, 2])), (-1, lm(&[2, 1]))]));
        let g = MultilinearPoly::monomial(lm(&[1, 2, 3, 4])).unwrap();
        let once = alt_on_set(&g, &[1, 2, 4]).unwrap();
        let twice = alt_on_set(&once, &[1, 2, 4]).unwrap();
        assert_eq!(twice, once.scale(&qi(6)));
        let big = MultilinearPoly::monomial(lm(&(1..=9).collect::<Vec<_>>())).unwrap();
        assert!(matches!(alt_on_set(&big, &(1..=9).collect::<Vec<_>>()), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn alt_evaluate_repeated_vector_vanishes() {
        let sl2 = sl2_factory();
        let f = MultilinearPoly::monomial(lm(&[1, 2, 3, 4])).unwrap();
        let u = vec![qi(1), qi(2), qi(-1)];
        let e = Evaluation::new()
            .with(1, vec![qi(3), qi(0), qi(1)])
            .with(2, u.clone())
            .with(3, vec![qi(0), qi(1), qi(1)])
            .with(4, u);
        let r = alt_evaluate(&f, &[2, 4], &sl2, &e, AltMode::Full).unwrap();
        assert_eq!(r.value, zero_vector(3));
    }

    #[test]
    fn color_sign_examples() {
        let s = canonical_cocycle();
        let t = s.table();
        assert_eq!(color_sign(&[1, 2, 3], &[G::E, G::E, G::E], t).unwrap(), 1);
        assert_eq!(color_sign(&[1, 2], &[G::A, G::B], t).unwrap(), 1);
        assert_eq!(color_sign(&[2, 1], &[G::A, G::B], t).unwrap(), -1);
    }

    #[test]
    fn tilde_rejects_non_left_normed() {
        let s = canonical_cocycle();
        let f = MultilinearPoly::monomial(Monomial::bracket(lm(&[1, 2]), lm(&[3, 4]))).unwrap();
        assert!(matches!(
            tilde_transform(&f, &[G::A; 4], s.table()),
            Err(Error::NotLeftNormed)
        ));
        let g = poly(&[(1, lm(&[1, 2])), (1, lm(&[2, 1]))]);
        assert!(matches!(tilde_transform(&g, &[G::A; 2], s.table()), Err(Error::NotLeftNormed)));
    }

    #[test]
    fn sn_act_examples() {
        let f = MultilinearPoly::monomial(lm(&[1, 2])).unwrap();
        let t = Permutation::transposition(2, 0, 1);
        assert_eq!(sn_act(&t, &f).unwrap(), MultilinearPoly::monomial(lm(&[2, 1])).unwrap());
        assert_eq!(sn_act(&Permutation::identity(2), &f).unwrap(), f);
        assert!(sn_act(&Permutation::identity(3), &f).is_err());
    }

    #[test]
    fn pairs_round_trip() {
        let f = poly(&[(2, lm(&[1, 2, 3])), (-1, Monomial::bracket(Monomial::Leaf(3), lm(&[1, 2])))]);
        let back = MultilinearPoly::from_pairs(&f.to_pairs()).unwrap();
        assert_eq!(back, f);
    }
}
