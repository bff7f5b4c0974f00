//! Enumeration of all natural transformations between two set-valued
//! functors, as constraint propagation over one variable per element.
//!
//! A transformation assigns to each element `e` of `F z` a value in `G z`.
//! Every arrow `m : z → w` forces `t_w(F m e) = G m (t_z e)`, a functional
//! binary constraint. Arc consistency plus minimum-domain search keeps this
//! tractable where the raw product of component spaces would be astronomical.

use crate::budget::Budget;
use crate::finset::FinFn;
use crate::{Error, Result};

use super::{NatTrans, SetFunctor};

/// A small bitset domain over `0..n`.
#[derive(Clone)]
struct Domain {
    words: Vec<u64>,
    count: usize,
}

impl Domain {
    fn full(n: usize) -> Self {
        let mut words = vec![u64::MAX; n.div_ceil(64)];
        if n % 64 != 0 {
            if let Some(last) = words.last_mut() {
                *last = (1u64 << (n % 64)) - 1;
            }
        }
        if n == 0 {
            words.clear();
        }
        Domain { words, count: n }
    }

    fn contains(&self, v: usize) -> bool {
        self.words[v / 64] >> (v % 64) & 1 == 1
    }

    fn remove(&mut self, v: usize) -> bool {
        let had = self.contains(v);
        if had {
            self.words[v / 64] &= !(1u64 << (v % 64));
            self.count -= 1;
        }
        had
    }

    fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(w, &bits)| {
            let mut rest = bits;
            std::iter::from_fn(move || {
                if rest == 0 {
                    None
                } else {
                    let b = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    Some(w * 64 + b)
                }
            })
        })
    }

    fn solo(&self) -> usize {
        self.iter().next().expect("nonempty domain")
    }
}

/// `value(b) = map[value(a)]`, with `a != b`.
struct Constraint {
    a: usize,
    b: usize,
    map: Vec<usize>,
}

struct Search<'p> {
    constraints: &'p [Constraint],
    adj: &'p [Vec<usize>],
    budget: u64,
    nodes: u64,
    solutions: Vec<Vec<usize>>,
}

impl Search<'_> {
    /// Restores arc consistency starting from the given queue; returns
    /// false on a domain wipe-out.
    fn propagate(&self, domains: &mut [Domain], queue: &mut Vec<usize>) -> bool {
        let mut queued = vec![false; self.constraints.len()];
        for &c in queue.iter() {
            queued[c] = true;
        }
        while let Some(ci) = queue.pop() {
            queued[ci] = false;
            let Constraint { a, b, map } = &self.constraints[ci];
            let (a, b) = (*a, *b);
            let mut touched_a = false;
            let mut touched_b = false;
            // Forward: D_b keeps only the image of D_a.
            let mut image = vec![0u64; domains[b].words.len()];
            for u in domains[a].iter() {
                let v = map[u];
                image[v / 64] |= 1 << (v % 64);
            }
            let stale: Vec<usize> = domains[b]
                .iter()
                .filter(|&v| image[v / 64] >> (v % 64) & 1 == 0)
                .collect();
            for v in stale {
                domains[b].remove(v);
                touched_b = true;
            }
            // Backward: D_a keeps only preimages of D_b.
            let drop: Vec<usize> = domains[a]
                .iter()
                .filter(|&u| !domains[b].contains(map[u]))
                .collect();
            for u in drop {
                domains[a].remove(u);
                touched_a = true;
            }
            if domains[a].count == 0 || domains[b].count == 0 {
                return false;
            }
            for (changed, var) in [(touched_a, a), (touched_b, b)] {
                if changed {
                    for &c in &self.adj[var] {
                        if !queued[c] {
                            queued[c] = true;
                            queue.push(c);
                        }
                    }
                }
            }
        }
        true
    }

    fn dfs(&mut self, domains: &mut [Domain]) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::BudgetExceeded {
                what: "transformation search nodes".into(),
                count: self.nodes as u128,
                budget: self.budget,
            });
        }
        let pick = (0..domains.len())
            .filter(|&v| domains[v].count > 1)
            .min_by_key(|&v| domains[v].count);
        let Some(var) = pick else {
            self.solutions.push(domains.iter().map(Domain::solo).collect());
            return Ok(());
        };
        let values: Vec<usize> = domains[var].iter().collect();
        for v in values {
            let mut child: Vec<Domain> = domains.to_vec();
            for u in child[var].iter().filter(|&u| u != v).collect::<Vec<_>>() {
                child[var].remove(u);
            }
            let mut queue: Vec<usize> = self.adj[var].clone();
            if self.propagate(&mut child, &mut queue) {
                self.dfs(&mut child)?;
            }
        }
        Ok(())
    }
}

/// All natural transformations `f ⇒ g`, sorted by their flattened
/// component tables. The budget bounds search nodes explored.
pub fn enumerate_nat_trans(
    f: &SetFunctor,
    g: &SetFunctor,
    budget: Budget,
) -> Result<Vec<NatTrans>> {
    if *f.src != *g.src {
        return Err(Error::Shape("functors live on different categories".into()));
    }
    let cat = &f.src;
    let n = cat.objects();

    let mut base = vec![0usize; n + 1];
    for z in 0..n {
        base[z + 1] = base[z] + f.on_obj(z).size;
    }
    let n_vars = base[n];

    let mut domains: Vec<Domain> = (0..n)
        .flat_map(|z| (0..f.on_obj(z).size).map(move |_| z))
        .map(|z| Domain::full(g.on_obj(z).size))
        .collect();

    let mut constraints = Vec::new();
    for m in cat.arrows() {
        let fm = f.on_arrow_ref(m);
        let gm = g.on_arrow_ref(m);
        for e in 0..fm.dom.size {
            let a = base[m.src] + e;
            let b = base[m.dst] + fm.table[e];
            if a == b {
                // Unary: value must be a fixed point of the action.
                let stale: Vec<usize> = domains[a]
                    .iter()
                    .filter(|&v| gm.table[v] != v)
                    .collect();
                for v in stale {
                    domains[a].remove(v);
                }
            } else {
                constraints.push(Constraint {
                    a,
                    b,
                    map: gm.table.clone(),
                });
            }
        }
    }

    let mut adj = vec![Vec::new(); n_vars];
    for (ci, c) in constraints.iter().enumerate() {
        adj[c.a].push(ci);
        adj[c.b].push(ci);
    }

    if domains.iter().any(|d| d.count == 0) {
        return Ok(Vec::new());
    }

    let mut search = Search {
        constraints: &constraints,
        adj: &adj,
        budget: budget.0,
        nodes: 0,
        solutions: Vec::new(),
    };
    let mut queue: Vec<usize> = (0..constraints.len()).collect();
    if search.propagate(&mut domains, &mut queue) {
        search.dfs(&mut domains)?;
    }

    let mut out: Vec<NatTrans> = search
        .solutions
        .into_iter()
        .map(|assignment| NatTrans {
            components: (0..n)
                .map(|z| FinFn {
                    dom: f.on_obj(z).clone(),
                    cod: g.on_obj(z).clone(),
                    table: assignment[base[z]..base[z + 1]].to_vec(),
                })
                .collect(),
        })
        .collect();
    out.sort_by_key(NatTrans::flat_key);
    debug_assert!(out.windows(2).all(|w| w[0] != w[1]));
    Ok(out)
}
