//! Skeletal finite sets and function tables.
//!
//! A [`FinSet`] is `{0, …, size-1}`; optional labels are presentation-only
//! and never affect equality. A [`FinFn`] is a total function given by its
//! table. Conventions pinned here and relied on everywhere else:
//!
//! * products pair row-major: `(i, j) ↦ i * b.size + j`;
//! * coproducts inject left first: `inl i = i`, `inr j = a.size + j`;
//! * `enumerate_fns(a, b)` yields all `b.size ^ a.size` tables in
//!   lexicographic order, and the elements of `exponential(a, b)` are
//!   exactly those ranks, so `eval ∘ ⟨rank, x⟩` is table lookup.

use std::fmt;

use crate::budget::{admitted_pow, Budget};
use crate::{Error, Result};

/// A finite set `{0, …, size-1}`.
#[derive(Debug, Clone, Eq)]
pub struct FinSet {
    pub size: usize,
    /// Display names for elements; ignored by equality and hashing.
    pub labels: Option<Vec<String>>,
}

impl FinSet {
    pub fn of(size: usize) -> Self {
        FinSet { size, labels: None }
    }

    pub fn labelled(labels: Vec<String>) -> Self {
        FinSet {
            size: labels.len(),
            labels: Some(labels),
        }
    }

    pub fn contains(&self, x: usize) -> bool {
        x < self.size
    }
}

impl PartialEq for FinSet {
    fn eq(&self, other: &Self) -> bool {
        self.size == other.size
    }
}

impl std::hash::Hash for FinSet {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.size.hash(state);
    }
}

impl fmt::Display for FinSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.size)
    }
}

/// A total function between finite sets, as a lookup table.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FinFn {
    pub dom: FinSet,
    pub cod: FinSet,
    pub table: Vec<usize>,
}

impl FinFn {
    /// Validates that the table has `dom.size` entries, all below `cod.size`.
    pub fn new(dom: FinSet, cod: FinSet, table: Vec<usize>) -> Result<Self> {
        if table.len() != dom.size {
            return Err(Error::Shape(format!(
                "function table has {} entries for a domain of size {}",
                table.len(),
                dom.size
            )));
        }
        if let Some((i, &v)) = table.iter().enumerate().find(|(_, &v)| v >= cod.size) {
            return Err(Error::Shape(format!(
                "table entry {i} is {v}, beyond codomain size {}",
                cod.size
            )));
        }
        Ok(FinFn { dom, cod, table })
    }

    pub fn identity(a: &FinSet) -> Self {
        FinFn {
            dom: a.clone(),
            cod: a.clone(),
            table: (0..a.size).collect(),
        }
    }

    /// The unique map out of the empty set.
    pub fn empty_into(cod: &FinSet) -> Self {
        FinFn {
            dom: FinSet::of(0),
            cod: cod.clone(),
            table: Vec::new(),
        }
    }

    /// Constant function with value `v`.
    pub fn constant(dom: &FinSet, cod: &FinSet, v: usize) -> Result<Self> {
        FinFn::new(dom.clone(), cod.clone(), vec![v; dom.size])
    }

    pub fn apply(&self, x: usize) -> usize {
        self.table[x]
    }

    pub fn is_identity(&self) -> bool {
        self.dom == self.cod && self.table.iter().enumerate().all(|(i, &v)| i == v)
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.cod.size];
        self.table.iter().all(|&v| !std::mem::replace(&mut seen[v], true))
    }

    pub fn is_surjective(&self) -> bool {
        let mut seen = vec![false; self.cod.size];
        for &v in &self.table {
            seen[v] = true;
        }
        seen.into_iter().all(|b| b)
    }

    pub fn is_bijective(&self) -> bool {
        self.dom.size == self.cod.size && self.is_injective()
    }

    /// Inverse table of a bijection.
    pub fn inverse(&self) -> Result<FinFn> {
        if !self.is_bijective() {
            return Err(Error::Precondition(format!("{self} is not bijective")));
        }
        let mut table = vec![0; self.cod.size];
        for (i, &v) in self.table.iter().enumerate() {
            table[v] = i;
        }
        Ok(FinFn {
            dom: self.cod.clone(),
            cod: self.dom.clone(),
            table,
        })
    }
}

impl fmt::Display for FinFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, v) in self.table.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]:{}->{}", self.dom.size, self.cod.size)
    }
}

/// `g ∘ f` — `g` after `f`. Errors when `f.cod` and `g.dom` differ in size.
pub fn compose(g: &FinFn, f: &FinFn) -> Result<FinFn> {
    if f.cod.size != g.dom.size {
        return Err(Error::ComposeMismatch {
            f: f.to_string(),
            g: g.to_string(),
            f_cod: f.cod.size,
            g_dom: g.dom.size,
        });
    }
    Ok(FinFn {
        dom: f.dom.clone(),
        cod: g.cod.clone(),
        table: f.table.iter().map(|&x| g.table[x]).collect(),
    })
}

/// Rank of a table among all functions `a → b` in lexicographic order.
pub fn fn_rank(table: &[usize], b_size: usize) -> usize {
    table.iter().fold(0, |acc, &v| acc * b_size + v)
}

/// Inverse of [`fn_rank`]: the `rank`-th table of length `a_size` over `b_size`.
pub fn fn_unrank(mut rank: usize, a_size: usize, b_size: usize) -> Vec<usize> {
    let mut table = vec![0; a_size];
    for slot in table.iter_mut().rev() {
        if b_size > 0 {
            *slot = rank % b_size;
            rank /= b_size;
        }
    }
    table
}

/// All functions `a → b` in lexicographic table order.
///
/// Refuses when `b.size ^ a.size` exceeds the budget. The degenerate case
/// `a` empty yields exactly the empty function; `b` empty with `a` nonempty
/// yields nothing.
pub fn enumerate_fns(a: &FinSet, b: &FinSet, budget: Budget) -> Result<Vec<FinFn>> {
    let count = count_fns(a, b, budget)?;
    let mut out = Vec::with_capacity(count as usize);
    for rank in 0..count as usize {
        out.push(FinFn {
            dom: a.clone(),
            cod: b.clone(),
            table: fn_unrank(rank, a.size, b.size),
        });
    }
    Ok(out)
}

/// `b.size ^ a.size`, budget-checked (0 when `b` is empty and `a` is not).
pub fn count_fns(a: &FinSet, b: &FinSet, budget: Budget) -> Result<u64> {
    if a.size == 0 {
        return Ok(1);
    }
    if b.size == 0 {
        return Ok(0);
    }
    admitted_pow(
        budget,
        &format!("functions {} -> {}", a.size, b.size),
        b.size as u64,
        a.size as u32,
    )
}

/// Product with row-major pairing and both projections.
pub fn product(a: &FinSet, b: &FinSet) -> (FinSet, FinFn, FinFn) {
    let p = FinSet::of(a.size * b.size);
    let proj1 = FinFn {
        dom: p.clone(),
        cod: a.clone(),
        table: (0..p.size).map(|i| i / b.size.max(1)).collect(),
    };
    let proj2 = FinFn {
        dom: p.clone(),
        cod: b.clone(),
        table: (0..p.size).map(|i| i % b.size.max(1)).collect(),
    };
    (p, proj1, proj2)
}

/// Index of `(i, j)` in `product(a, b)`.
pub fn pair(b: &FinSet, i: usize, j: usize) -> usize {
    i * b.size + j
}

/// Coproduct with `inl` first and both injections.
pub fn coproduct(a: &FinSet, b: &FinSet) -> (FinSet, FinFn, FinFn) {
    let s = FinSet::of(a.size + b.size);
    let inl = FinFn {
        dom: a.clone(),
        cod: s.clone(),
        table: (0..a.size).collect(),
    };
    let inr = FinFn {
        dom: b.clone(),
        cod: s.clone(),
        table: (a.size..a.size + b.size).collect(),
    };
    (s, inl, inr)
}

/// Exponential `b^a` whose elements are the lexicographic function ranks,
/// together with `eval : b^a × a → b`, `eval(⟨f, x⟩) = f(x)`.
pub fn exponential(a: &FinSet, b: &FinSet, budget: Budget) -> Result<(FinSet, FinFn)> {
    let count = count_fns(a, b, budget)? as usize;
    let exp = FinSet::of(count);
    let (dom, _, _) = product(&exp, a);
    let mut table = Vec::with_capacity(dom.size);
    for rank in 0..count {
        let f = fn_unrank(rank, a.size, b.size);
        table.extend(f);
    }
    Ok((
        exp,
        FinFn {
            dom,
            cod: b.clone(),
            table,
        },
    ))
}

/// Currying matching the indexing of [`exponential`]:
/// for `h : a × b → c`, `curry(h)(i)` is the rank of `j ↦ h(⟨i, j⟩)`.
pub fn curry(h: &FinFn, a: &FinSet, b: &FinSet, c: &FinSet) -> Result<FinFn> {
    if h.dom.size != a.size * b.size || h.cod.size != c.size {
        return Err(Error::Shape(format!(
            "curry: {h} is not a map {}x{} -> {}",
            a.size, b.size, c.size
        )));
    }
    let exp_size = {
        let mut n: usize = 1;
        for _ in 0..b.size {
            n = n.saturating_mul(c.size);
        }
        n
    };
    let table = (0..a.size)
        .map(|i| {
            let slice: Vec<usize> = (0..b.size).map(|j| h.table[pair(b, i, j)]).collect();
            fn_rank(&slice, c.size)
        })
        .collect();
    Ok(FinFn {
        dom: a.clone(),
        cod: FinSet::of(exp_size),
        table,
    })
}

/// `f × g : a × c → b × d` on row-major pairs.
pub fn parallel(f: &FinFn, g: &FinFn) -> FinFn {
    let (dom, _, _) = product(&f.dom, &g.dom);
    let (cod, _, _) = product(&f.cod, &g.cod);
    let mut table = Vec::with_capacity(dom.size);
    for i in 0..f.dom.size {
        for j in 0..g.dom.size {
            table.push(pair(&g.cod, f.table[i], g.table[j]));
        }
    }
    FinFn { dom, cod, table }
}

/// `[f, g] : a + c → b` for `f : a → b`, `g : c → b`.
pub fn copair(f: &FinFn, g: &FinFn) -> Result<FinFn> {
    if f.cod.size != g.cod.size {
        return Err(Error::Shape(format!(
            "copair: codomains {} and {} differ",
            f.cod.size, g.cod.size
        )));
    }
    let (dom, _, _) = coproduct(&f.dom, &g.dom);
    let mut table = f.table.clone();
    table.extend_from_slice(&g.table);
    Ok(FinFn {
        dom,
        cod: f.cod.clone(),
        table,
    })
}

/// `f + g : a + c → b + d`.
pub fn sum(f: &FinFn, g: &FinFn) -> FinFn {
    let (dom, _, _) = coproduct(&f.dom, &g.dom);
    let (cod, _, _) = coproduct(&f.cod, &g.cod);
    let mut table: Vec<usize> = f.table.clone();
    table.extend(g.table.iter().map(|&v| v + f.cod.size));
    FinFn { dom, cod, table }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compose_by_index_chasing() {
        // Oracle: chase each index by hand. g = [0,0] : 2 -> 1 after
        // f = [1,0] : 2 -> 2 sends 0 ↦ g(1) = 0 and 1 ↦ g(0) = 0.
        let f = FinFn::new(FinSet::of(2), FinSet::of(2), vec![1, 0]).unwrap();
        let g = FinFn::new(FinSet::of(2), FinSet::of(1), vec![0, 0]).unwrap();
        let gf = compose(&g, &f).unwrap();
        assert_eq!(gf.table, vec![0, 0]);
        assert_eq!(gf.dom.size, 2);
        assert_eq!(gf.cod.size, 1);
    }

    #[test]
    fn compose_mismatch_names_both_sides() {
        let f = FinFn::new(FinSet::of(1), FinSet::of(3), vec![2]).unwrap();
        let g = FinFn::new(FinSet::of(2), FinSet::of(1), vec![0, 0]).unwrap();
        match compose(&g, &f) {
            Err(Error::ComposeMismatch { f_cod, g_dom, .. }) => {
                assert_eq!((f_cod, g_dom), (3, 2));
            }
            other => panic!("expected mismatch, got {other:?}"),
        }
    }

    #[test]
    fn enumerate_fns_is_lexicographic() {
        let fns = enumerate_fns(&FinSet::of(2), &FinSet::of(2), Budget::default()).unwrap();
        let tables: Vec<Vec<usize>> = fns.into_iter().map(|f| f.table).collect();
        assert_eq!(
            tables,
            vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]
        );
    }

    #[test]
    fn enumerate_counts_match_powers() {
        let budget = Budget::default();
        for a in 0..4usize {
            for b in 0..4usize {
                let expected: usize = if a == 0 {
                    1
                } else if b == 0 {
                    0
                } else {
                    b.pow(a as u32)
                };
                let fns = enumerate_fns(&FinSet::of(a), &FinSet::of(b), budget).unwrap();
                assert_eq!(fns.len(), expected, "count of {a}->{b}");
                // Duplicate-free: ranks are strictly increasing.
                let ranks: Vec<usize> = fns.iter().map(|f| fn_rank(&f.table, b)).collect();
                assert!(ranks.windows(2).all(|w| w[0] < w[1]));
            }
        }
    }

    #[test]
    fn rank_unrank_roundtrip() {
        for rank in 0..27 {
            let t = fn_unrank(rank, 3, 3);
            assert_eq!(fn_rank(&t, 3), rank);
        }
    }

    #[test]
    fn enumeration_overflow_carries_count() {
        match enumerate_fns(&FinSet::of(30), &FinSet::of(3), Budget(1000)) {
            Err(Error::BudgetExceeded { count, .. }) => {
                assert_eq!(count, 3u128.pow(30));
            }
            other => panic!("expected overflow, got {other:?}"),
        }
    }

    #[test]
    fn product_projections() {
        let (p, p1, p2) = product(&FinSet::of(2), &FinSet::of(3));
        assert_eq!(p.size, 6);
        for i in 0..2 {
            for j in 0..3 {
                let idx = pair(&FinSet::of(3), i, j);
                assert_eq!(p1.apply(idx), i);
                assert_eq!(p2.apply(idx), j);
            }
        }
    }

    #[test]
    fn coproduct_injections_are_disjoint_and_cover() {
        let (s, inl, inr) = coproduct(&FinSet::of(2), &FinSet::of(3));
        assert_eq!(s.size, 5);
        let mut hit = vec![false; 5];
        for &v in inl.table.iter().chain(inr.table.iter()) {
            assert!(!hit[v], "injections overlap at {v}");
            hit[v] = true;
        }
        assert!(hit.into_iter().all(|b| b));
    }

    #[test]
    fn exponential_eval_agrees_with_lookup() {
        // |3^2| = 9, and eval(⟨f, x⟩) = f(x) for the rank encoding.
        let a = FinSet::of(2);
        let b = FinSet::of(3);
        let (exp, eval) = exponential(&a, &b, Budget::default()).unwrap();
        assert_eq!(exp.size, 9);
        for rank in 0..exp.size {
            let f = fn_unrank(rank, a.size, b.size);
            for x in 0..a.size {
                assert_eq!(eval.apply(pair(&a, rank, x)), f[x]);
            }
        }
    }

    #[test]
    fn curry_satisfies_eval_law() {
        // eval ∘ (curry h × id) = h for all h on sets of size ≤ 2.
        let budget = Budget::default();
        for a in 0..3usize {
            for b in 0..3usize {
                for c in 1..3usize {
                    let (aset, bset, cset) = (FinSet::of(a), FinSet::of(b), FinSet::of(c));
                    let (prod, _, _) = product(&aset, &bset);
                    for h in enumerate_fns(&prod, &cset, budget).unwrap() {
                        let cur = curry(&h, &aset, &bset, &cset).unwrap();
                        let (_, eval) = exponential(&bset, &cset, budget).unwrap();
                        let spread = parallel(&cur, &FinFn::identity(&bset));
                        let lhs = compose(&eval, &spread).unwrap();
                        assert_eq!(lhs.table, h.table, "a={a} b={b} c={c}");
                    }
                }
            }
        }
    }

    #[test]
    fn labels_do_not_affect_equality() {
        let plain = FinSet::of(2);
        let tagged = FinSet::labelled(vec!["x".into(), "y".into()]);
        assert_eq!(plain, tagged);
    }
}
