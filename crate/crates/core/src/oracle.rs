//! Brute-force ground truth for the counting engine.
//!
//! Two independent enumerations of the expressions on `k` distinct
//! variables:
//!
//! * **Tree enumeration** walks every expression tree whose leaves are
//!   `x1..xk` (each exactly once), whose internal nodes are `+ - * /`, and
//!   where any node may carry one unary minus. Stacked minuses are skipped:
//!   `-(-e) = e`, so every equivalence class keeps a representative. Each
//!   tree is evaluated to a canonical fraction and the fractions are
//!   deduplicated.
//! * **Grammar enumeration** builds sum-type, product-type, Π2-type and
//!   Π1-type expressions structurally, fixing operand order by "the part
//!   containing the lowest variable comes first". It never deduplicates, so
//!   a duplicate in its output would contradict the uniqueness theorems the
//!   recurrence relies on.

use std::collections::{HashMap, HashSet};
use std::io::{self, Write};
use std::rc::Rc;

use rayon::prelude::*;

use crate::counting::BigCount;
use crate::error::{Error, Result};
use crate::expr::{BinOp, Expr};
use crate::symbolic::{Fraction, Var, VarSet};

/// Default largest `k` the oracle accepts (about 10^6 trees).
pub const DEFAULT_CUTOFF: usize = 4;
/// Largest `k` reachable with [`OracleConfig::allow_large`] (about 2*10^8 trees).
pub const LARGE_CUTOFF: usize = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleConfig {
    pub cutoff: usize,
    /// Split the work into (shape, labelling) units and run them on the rayon
    /// pool. Results are identical to the sequential run.
    pub parallel: bool,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            cutoff: DEFAULT_CUTOFF,
            parallel: true,
        }
    }
}

impl OracleConfig {
    pub fn sequential() -> Self {
        OracleConfig {
            parallel: false,
            ..Self::default()
        }
    }

    /// Raises the cutoff to [`LARGE_CUTOFF`].
    pub fn allow_large(mut self) -> Self {
        self.cutoff = self.cutoff.max(LARGE_CUTOFF);
        self
    }

    /// Rejects `k = 0` and `k` above the cutoff.
    pub fn check(&self, k: usize) -> Result<()> {
        if k == 0 {
            return Err(Error::Domain("k must be at least 1".into()));
        }
        if k > self.cutoff {
            return Err(Error::CutoffExceeded {
                k,
                cutoff: self.cutoff,
            });
        }
        Ok(())
    }
}

/// Distinct canonical fractions whose variable set is exactly `{x1..xk}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassSet {
    k: usize,
    classes: HashSet<Fraction>,
}

impl ClassSet {
    pub fn new(k: usize) -> Self {
        ClassSet {
            k,
            classes: HashSet::new(),
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn contains(&self, f: &Fraction) -> bool {
        self.classes.contains(f)
    }

    /// Inserts `f`, returning whether it was new. Panics if `f` does not
    /// contain exactly the variables `x1..xk`.
    pub fn insert(&mut self, f: Fraction) -> bool {
        assert!(
            f.vars() == full_varset(self.k),
            "class {f} does not contain exactly x1..x{}",
            self.k
        );
        self.classes.insert(f)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Fraction> {
        self.classes.iter()
    }

    /// Members in a fixed total order.
    pub fn sorted(&self) -> Vec<&Fraction> {
        let mut v: Vec<_> = self.classes.iter().collect();
        v.sort_unstable();
        v
    }

    /// Writes one canonical fraction per line, in [`ClassSet::sorted`] order.
    pub fn dump<W: Write>(&self, mut out: W) -> io::Result<()> {
        for f in self.sorted() {
            writeln!(out, "{f}")?;
        }
        Ok(())
    }

    fn merge(mut self, other: ClassSet) -> ClassSet {
        let (mut big, small) = if self.classes.len() >= other.classes.len() {
            (std::mem::take(&mut self.classes), other.classes)
        } else {
            (other.classes, std::mem::take(&mut self.classes))
        };
        big.extend(small);
        ClassSet {
            k: self.k,
            classes: big,
        }
    }
}

fn full_varset(k: usize) -> VarSet {
    (1..=k as Var).collect()
}

/// Unlabelled binary tree shape.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Shape {
    Leaf,
    Node(Rc<Shape>, Rc<Shape>),
}

impl Shape {
    pub fn leaves(&self) -> usize {
        match self {
            Shape::Leaf => 1,
            Shape::Node(l, r) => l.leaves() + r.leaves(),
        }
    }
}

/// All binary tree shapes with `n` leaves (a Catalan number of them).
pub fn shapes(n: usize) -> Vec<Rc<Shape>> {
    let mut table: Vec<Vec<Rc<Shape>>> = vec![Vec::new(), vec![Rc::new(Shape::Leaf)]];
    for size in 2..=n {
        let mut here = Vec::new();
        for left in 1..size {
            for l in &table[left] {
                for r in &table[size - left] {
                    here.push(Rc::new(Shape::Node(l.clone(), r.clone())));
                }
            }
        }
        table.push(here);
    }
    table.get(n).cloned().unwrap_or_default()
}

/// All orderings of `1..=k`.
fn labellings(k: usize) -> Vec<Vec<Var>> {
    fn go(rest: &mut Vec<Var>, cur: &mut Vec<Var>, out: &mut Vec<Vec<Var>>) {
        if rest.is_empty() {
            out.push(cur.clone());
            return;
        }
        for i in 0..rest.len() {
            let v = rest.remove(i);
            cur.push(v);
            go(rest, cur, out);
            cur.pop();
            rest.insert(i, v);
        }
    }
    let mut out = Vec::new();
    go(&mut (1..=k as Var).collect(), &mut Vec::new(), &mut out);
    out
}

/// Every decorated tree for one shape and leaf labelling: each internal
/// node gets one of four operators and every node optionally one minus.
pub fn trees_for(shape: &Shape, labels: &[Var]) -> Vec<Expr> {
    match shape {
        Shape::Leaf => vec![Expr::neg(Expr::Var(labels[0])), Expr::Var(labels[0])],
        Shape::Node(l, r) => {
            let split = l.leaves();
            let lefts = trees_for(l, &labels[..split]);
            let rights = trees_for(r, &labels[split..]);
            let mut out = Vec::with_capacity(lefts.len() * rights.len() * 8);
            for a in &lefts {
                for b in &rights {
                    for op in BinOp::ALL {
                        let node = Expr::binary(op, a.clone(), b.clone());
                        out.push(Expr::neg(node.clone()));
                        out.push(node);
                    }
                }
            }
            out
        }
    }
}

/// Calls `f` on every tree counted by the tree enumeration for `k`.
pub fn for_each_tree(k: usize, mut f: impl FnMut(&Expr)) {
    for shape in shapes(k) {
        for labels in labellings(k) {
            trees_for(&shape, &labels).iter().for_each(&mut f);
        }
    }
}

/// Number of raw trees: `Catalan(k-1) * k! * 4^(k-1) * 2^(2k-1)`.
pub fn raw_tree_count(k: usize) -> u128 {
    let catalan = shapes(k).len() as u128;
    let fact: u128 = (1..=k as u128).product();
    catalan * fact * 4u128.pow(k as u32 - 1) * 2u128.pow(2 * k as u32 - 1)
}

/// Values of every decorated tree for one shape and labelling, in the same
/// order as [`trees_for`]. Subtree values are computed once and reused, but
/// nothing is deduplicated.
fn values_for(shape: &Shape, labels: &[Var]) -> Result<Vec<Fraction>> {
    match shape {
        Shape::Leaf => {
            let x = Fraction::var(labels[0]);
            Ok(vec![-&x, x])
        }
        Shape::Node(l, r) => {
            let split = l.leaves();
            let lefts = values_for(l, &labels[..split])?;
            let rights = values_for(r, &labels[split..])?;
            let mut out = Vec::with_capacity(lefts.len() * rights.len() * 8);
            for a in &lefts {
                for b in &rights {
                    for op in BinOp::ALL {
                        let v = match op {
                            BinOp::Add => a.add(b),
                            BinOp::Sub => a.sub(b),
                            BinOp::Mul => a.mul(b),
                            BinOp::Div => {
                                // Sum- and product-type expressions are never zero.
                                assert!(!b.is_zero(), "zero divisor on distinct variables");
                                a.div(b)?
                            }
                        };
                        out.push(-&v);
                        out.push(v);
                    }
                }
            }
            Ok(out)
        }
    }
}

fn unit_classes(k: usize, shape: &Shape, labels: &[Var]) -> Result<ClassSet> {
    let mut set = ClassSet::new(k);
    for v in values_for(shape, labels)? {
        set.insert(v);
    }
    Ok(set)
}

/// Equivalence classes of all expressions on `x1..xk`, with the default
/// configuration.
pub fn enumerate_tree_classes(k: usize) -> Result<ClassSet> {
    enumerate_tree_classes_with(k, &OracleConfig::default())
}

pub fn enumerate_tree_classes_with(k: usize, config: &OracleConfig) -> Result<ClassSet> {
    config.check(k)?;
    let units: Vec<(usize, Vec<Var>)> = (0..shapes(k).len())
        .flat_map(|s| labellings(k).into_iter().map(move |l| (s, l)))
        .collect();
    if config.parallel {
        // Shapes hold `Rc`s, so each worker rebuilds its own.
        units
            .into_par_iter()
            .map_init(
                || shapes(k),
                |shapes, (s, labels)| unit_classes(k, &shapes[s], &labels),
            )
            .try_reduce(|| ClassSet::new(k), |a, b| Ok(a.merge(b)))
    } else {
        let shapes = shapes(k);
        units.iter().try_fold(ClassSet::new(k), |acc, (s, labels)| {
            Ok(acc.merge(unit_classes(k, &shapes[*s], labels)?))
        })
    }
}

/// Same classes, obtained by building every tree and calling
/// [`Expr::evaluate`] on it. Slower; used to cross-check the shared-subtree
/// evaluation.
pub fn enumerate_tree_classes_naive(k: usize, config: &OracleConfig) -> Result<ClassSet> {
    config.check(k)?;
    let mut set = ClassSet::new(k);
    let mut failure = None;
    for_each_tree(k, |t| match t.evaluate() {
        Ok(f) => {
            set.insert(f);
        }
        Err(e) => failure = Some(e),
    });
    match failure {
        Some(e) => Err(e),
        None => Ok(set),
    }
}

/// Number of equivalence classes on `k` distinct variables.
pub fn oracle_count(k: usize) -> Result<BigCount> {
    oracle_count_with(k, &OracleConfig::default())
}

pub fn oracle_count_with(k: usize, config: &OracleConfig) -> Result<BigCount> {
    enumerate_tree_classes_with(k, config).map(|s| BigCount::from(s.len()))
}

/// Which family the grammar enumeration produces.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GrammarKind {
    /// Sum-type expressions (`S_k` of them).
    Sum,
    /// Product-type expressions (`P_k`).
    Product,
    /// Products of at least two sums, one representative per sign pair (`Q_k`).
    Pi2,
    /// Π2-type or sum-type, one representative per sign pair (`R_k`).
    Pi1,
}

/// Structural type and depth of a generated expression. Depth-0 expressions
/// are exactly `±xi`, which are both sum-type and product-type.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GrammarTag {
    pub kind: GrammarKind,
    pub depth: u32,
}

impl GrammarTag {
    fn leaf(kind: GrammarKind) -> Self {
        GrammarTag { kind, depth: 0 }
    }

    /// Depth this expression contributes as a summand of a sum.
    fn as_summand(self) -> u32 {
        match self.kind {
            _ if self.depth == 0 => 0,
            GrammarKind::Sum => self.depth - 1,
            _ => self.depth,
        }
    }

    /// Depth this expression contributes as a factor of a product.
    fn as_factor(self) -> u32 {
        match self.kind {
            _ if self.depth == 0 => 0,
            GrammarKind::Sum => self.depth,
            _ => self.depth - 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrammarItem {
    pub value: Fraction,
    pub tag: GrammarTag,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum List {
    Sum,
    SumRep,
    Product,
    ProductRep,
    Any,
    Pi2,
    Pi1,
}

type Mask = u32;

#[derive(Default)]
struct Grammar {
    memo: HashMap<(Mask, List), Rc<Vec<GrammarItem>>>,
}

fn lowest_bit(mask: Mask) -> Mask {
    mask & mask.wrapping_neg()
}

/// Nonempty proper submasks of `mask`.
fn proper_submasks(mask: Mask) -> impl Iterator<Item = Mask> {
    let mut sub = mask;
    std::iter::from_fn(move || {
        sub = (sub.wrapping_sub(1)) & mask;
        (sub != 0).then_some(sub)
    })
}

/// Proper submasks containing the lowest variable of `mask`, i.e. the
/// `C(k-1, j-1)` choices for the first operand.
fn first_operand_masks(mask: Mask) -> impl Iterator<Item = Mask> {
    let low = lowest_bit(mask);
    proper_submasks(mask).filter(move |s| s & low != 0)
}

fn single_var(mask: Mask) -> Var {
    mask.trailing_zeros() + 1
}

impl Grammar {
    fn get(&mut self, mask: Mask, list: List) -> Rc<Vec<GrammarItem>> {
        if let Some(v) = self.memo.get(&(mask, list)) {
            return v.clone();
        }
        let items = Rc::new(self.build(mask, list));
        self.memo.insert((mask, list), items.clone());
        items
    }

    fn build(&mut self, mask: Mask, list: List) -> Vec<GrammarItem> {
        if mask.count_ones() == 1 {
            let x = Fraction::var(single_var(mask));
            let pos = |kind| GrammarItem {
                value: x.clone(),
                tag: GrammarTag::leaf(kind),
            };
            let both = |kind| {
                vec![
                    GrammarItem {
                        value: -&x,
                        tag: GrammarTag::leaf(kind),
                    },
                    pos(kind),
                ]
            };
            return match list {
                List::Sum | List::Any => both(GrammarKind::Sum),
                List::Product => both(GrammarKind::Product),
                List::SumRep => vec![pos(GrammarKind::Sum)],
                List::ProductRep | List::Pi2 | List::Pi1 => vec![pos(GrammarKind::Product)],
            };
        }
        match list {
            List::Sum => self.sums(mask, List::Product),
            List::SumRep => self.sums(mask, List::ProductRep),
            List::ProductRep => {
                let mut out = self.get(mask, List::Pi2).as_ref().clone();
                for t in proper_submasks(mask) {
                    let nums = self.get(t, List::Pi1);
                    let dens = self.get(mask ^ t, List::Pi1);
                    for n in nums.iter() {
                        for d in dens.iter() {
                            out.push(product_item(
                                n.value.div(&d.value).expect("nonzero"),
                                n.tag,
                                d.tag,
                            ));
                        }
                    }
                }
                out
            }
            List::Product => self
                .get(mask, List::ProductRep)
                .iter()
                .flat_map(|it| {
                    [
                        GrammarItem {
                            value: -&it.value,
                            tag: it.tag,
                        },
                        it.clone(),
                    ]
                })
                .collect(),
            List::Any => {
                let mut out = self.get(mask, List::Sum).as_ref().clone();
                out.extend(self.get(mask, List::Product).iter().cloned());
                out
            }
            List::Pi2 => {
                let mut out = Vec::new();
                for t in first_operand_masks(mask) {
                    let sums = self.get(t, List::SumRep);
                    let rest = self.get(mask ^ t, List::Pi1);
                    for s in sums.iter() {
                        for r in rest.iter() {
                            out.push(product_item(s.value.mul(&r.value), s.tag, r.tag));
                        }
                    }
                }
                out
            }
            List::Pi1 => {
                let mut out = self.get(mask, List::Pi2).as_ref().clone();
                out.extend(self.get(mask, List::SumRep).iter().cloned());
                out
            }
        }
    }

    /// `first + rest` with `first` drawn from `first_list` on a set holding
    /// the lowest variable and `rest` any expression on the complement.
    fn sums(&mut self, mask: Mask, first_list: List) -> Vec<GrammarItem> {
        let mut out = Vec::new();
        for t in first_operand_masks(mask) {
            let firsts = self.get(t, first_list);
            let rests = self.get(mask ^ t, List::Any);
            for p in firsts.iter() {
                for a in rests.iter() {
                    let depth = p.tag.as_summand().max(a.tag.as_summand()) + 1;
                    out.push(GrammarItem {
                        value: p.value.add(&a.value),
                        tag: GrammarTag {
                            kind: GrammarKind::Sum,
                            depth,
                        },
                    });
                }
            }
        }
        out
    }
}

fn product_item(value: Fraction, a: GrammarTag, b: GrammarTag) -> GrammarItem {
    let depth = a.as_factor().max(b.as_factor()) + 1;
    GrammarItem {
        value,
        tag: GrammarTag {
            kind: GrammarKind::Product,
            depth,
        },
    }
}

/// Structurally generated expressions of the given family on `x1..xk`,
/// with their tags. No deduplication is performed.
pub fn enumerate_grammar_tagged(
    k: usize,
    kind: GrammarKind,
    config: &OracleConfig,
) -> Result<Vec<GrammarItem>> {
    config.check(k)?;
    let mask: Mask = (1 << k) - 1;
    let list = match kind {
        GrammarKind::Sum => List::Sum,
        GrammarKind::Product => List::Product,
        GrammarKind::Pi2 => List::Pi2,
        GrammarKind::Pi1 => List::Pi1,
    };
    let mut grammar = Grammar::default();
    Ok(grammar.get(mask, list).as_ref().clone())
}

/// Structurally generated fractions of the given family on `x1..xk`.
pub fn enumerate_grammar(k: usize, kind: GrammarKind) -> Result<Vec<Fraction>> {
    Ok(enumerate_grammar_tagged(k, kind, &OracleConfig::default())?
        .into_iter()
        .map(|it| it.value)
        .collect())
}

/// Top-level decompositions of a tree on distinct variables, used to check
/// the uniqueness theorems on enumerated trees.
pub mod decompose {
    use super::*;

    fn strip_negations(mut e: &Expr) -> &Expr {
        while let Expr::Neg(c) = e {
            e = c;
        }
        e
    }

    /// Summands (with signs pushed in) if the tree is a sum at the top,
    /// looking through unary minus and subtraction.
    pub fn summands(tree: &Expr) -> Result<Option<Vec<Fraction>>> {
        let t = tree.eliminate_subtraction();
        if !matches!(strip_negations(&t), Expr::Binary(BinOp::Add, ..)) {
            return Ok(None);
        }
        let mut out = Vec::new();
        collect_summands(&t, false, &mut out)?;
        Ok(Some(out))
    }

    fn collect_summands(e: &Expr, negated: bool, out: &mut Vec<Fraction>) -> Result<()> {
        match e {
            Expr::Neg(c) => collect_summands(c, !negated, out),
            Expr::Binary(BinOp::Add, l, r) => {
                collect_summands(l, negated, out)?;
                collect_summands(r, negated, out)
            }
            other => {
                let v = other.evaluate()?;
                out.push(if negated { -v } else { v });
                Ok(())
            }
        }
    }

    /// Numerator and denominator factors (signs dropped) if the tree is a
    /// product or quotient at the top.
    pub fn factors(tree: &Expr) -> Result<Option<(Vec<Fraction>, Vec<Fraction>)>> {
        let t = tree.eliminate_subtraction();
        if !matches!(
            strip_negations(&t),
            Expr::Binary(BinOp::Mul | BinOp::Div, ..)
        ) {
            return Ok(None);
        }
        let (mut num, mut den) = (Vec::new(), Vec::new());
        collect_factors(&t, false, &mut num, &mut den)?;
        Ok(Some((num, den)))
    }

    fn collect_factors(
        e: &Expr,
        inverted: bool,
        num: &mut Vec<Fraction>,
        den: &mut Vec<Fraction>,
    ) -> Result<()> {
        match e {
            Expr::Neg(c) => collect_factors(c, inverted, num, den),
            Expr::Binary(BinOp::Mul, l, r) => {
                collect_factors(l, inverted, num, den)?;
                collect_factors(r, inverted, num, den)
            }
            Expr::Binary(BinOp::Div, l, r) => {
                collect_factors(l, inverted, num, den)?;
                collect_factors(r, !inverted, num, den)
            }
            other => {
                let v = other.evaluate()?;
                if inverted {
                    den.push(v)
                } else {
                    num.push(v)
                }
                Ok(())
            }
        }
    }
}
