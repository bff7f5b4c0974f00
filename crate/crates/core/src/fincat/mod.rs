//! Deep finite categories.
//!
//! A [`FinCat`] stores its hom-sets as sized index ranges, identities as
//! indices, and composition as explicit tables. An arrow is identified by
//! `(src, dst, idx)` — see [`Mor`]. Category-law checking is exhaustive and
//! produces reports with witnesses; a violating table is data, not a panic.

mod functor;
mod nat_enum;
mod universe;

pub use functor::{
    check_cat_functor, check_naturality, check_set_functor, compose_set_functor, constant_functor,
    j_plus, j_times, polynomial_functor, random_polynomial, representable_presheaf, CatFunctor,
    NatTrans, SetFunctor,
};
pub use nat_enum::enumerate_nat_trans;
pub use universe::Universe;

use std::fmt;
use std::rc::Rc;

use crate::budget::Budget;
use crate::finset::{fn_rank, fn_unrank, FinFn, FinSet};
use crate::report::Report;
use crate::{Error, Result};

/// An arrow of a [`FinCat`]: source object, target object, and index into
/// the hom-set `hom(src, dst)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mor {
    pub src: usize,
    pub dst: usize,
    pub idx: usize,
}

impl fmt::Display for Mor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}->{}#{}", self.src, self.dst, self.idx)
    }
}

/// A finite category with explicit composition tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinCat {
    n_objects: usize,
    /// `hom[x][y]` = number of arrows `x → y`.
    hom: Vec<Vec<usize>>,
    /// `ids[x]` = index of the identity in `hom(x, x)`.
    ids: Vec<usize>,
    /// `comp[x][y][z][g * hom(x,y) + f]` = index of `g ∘ f` in `hom(x, z)`
    /// for `f : x → y` and `g : y → z`.
    comp: Vec<Vec<Vec<Vec<usize>>>>,
}

impl FinCat {
    /// Builds a category from a composition rule, validating shape.
    pub fn from_comp_fn(
        n_objects: usize,
        hom: Vec<Vec<usize>>,
        ids: Vec<usize>,
        mut compose: impl FnMut(usize, usize, usize, usize, usize) -> usize,
    ) -> Result<Self> {
        if hom.len() != n_objects || ids.len() != n_objects {
            return Err(Error::Shape(format!(
                "category tables sized for {} objects, declared {}",
                hom.len(),
                n_objects
            )));
        }
        for (x, row) in hom.iter().enumerate() {
            if row.len() != n_objects {
                return Err(Error::Shape(format!("hom row {x} has {} entries", row.len())));
            }
            if ids[x] >= hom[x][x] {
                return Err(Error::Shape(format!(
                    "identity index {} out of hom({x},{x}) of size {}",
                    ids[x], hom[x][x]
                )));
            }
        }
        let mut comp = Vec::with_capacity(n_objects);
        for x in 0..n_objects {
            let mut per_y = Vec::with_capacity(n_objects);
            for y in 0..n_objects {
                let mut per_z = Vec::with_capacity(n_objects);
                for z in 0..n_objects {
                    let mut table = Vec::with_capacity(hom[x][y] * hom[y][z]);
                    for g in 0..hom[y][z] {
                        for f in 0..hom[x][y] {
                            let c = compose(x, y, z, g, f);
                            if c >= hom[x][z] {
                                return Err(Error::Shape(format!(
                                    "composite of {y}->{z}#{g} after {x}->{y}#{f} is {c}, \
                                     out of hom({x},{z}) of size {}",
                                    hom[x][z]
                                )));
                            }
                            table.push(c);
                        }
                    }
                    per_z.push(table);
                }
                per_y.push(per_z);
            }
            comp.push(per_y);
        }
        Ok(FinCat {
            n_objects,
            hom,
            ids,
            comp,
        })
    }

    pub fn objects(&self) -> usize {
        self.n_objects
    }

    pub fn hom_size(&self, x: usize, y: usize) -> usize {
        self.hom[x][y]
    }

    pub fn id(&self, x: usize) -> Mor {
        Mor {
            src: x,
            dst: x,
            idx: self.ids[x],
        }
    }

    pub fn arrows_between(&self, x: usize, y: usize) -> impl Iterator<Item = Mor> + '_ {
        (0..self.hom[x][y]).map(move |idx| Mor { src: x, dst: y, idx })
    }

    pub fn arrows(&self) -> impl Iterator<Item = Mor> + '_ {
        (0..self.n_objects).flat_map(move |x| {
            (0..self.n_objects).flat_map(move |y| self.arrows_between(x, y))
        })
    }

    /// `g ∘ f`. Errors when the middles do not meet.
    pub fn compose(&self, g: Mor, f: Mor) -> Result<Mor> {
        if f.dst != g.src {
            return Err(Error::ComposeMismatch {
                f: f.to_string(),
                g: g.to_string(),
                f_cod: f.dst,
                g_dom: g.src,
            });
        }
        let idx = self.comp[f.src][f.dst][g.dst][g.idx * self.hom[f.src][f.dst] + f.idx];
        Ok(Mor {
            src: f.src,
            dst: g.dst,
            idx,
        })
    }

    /// The opposite category: arrows reversed, same indices.
    pub fn op(&self) -> FinCat {
        let n = self.n_objects;
        let hom: Vec<Vec<usize>> = (0..n)
            .map(|x| (0..n).map(|y| self.hom[y][x]).collect())
            .collect();
        // In the opposite, g' ∘ f' (f' : x → y, g' : y → z) is (f ∘ g)
        // computed in the original on f : y → x after g : z → y.
        FinCat::from_comp_fn(n, hom, self.ids.clone(), |x, y, z, g, f| {
            let orig_f = Mor { src: z, dst: y, idx: g };
            let orig_g = Mor { src: y, dst: x, idx: f };
            self.compose(orig_g, orig_f).expect("op composition shape").idx
        })
        .expect("op of a valid category is valid")
    }
}

/// The discrete category on `n` objects.
pub fn discrete_category(n: usize) -> FinCat {
    let hom = (0..n)
        .map(|x| (0..n).map(|y| usize::from(x == y)).collect())
        .collect();
    FinCat::from_comp_fn(n, hom, vec![0; n], |_, _, _, _, _| 0).expect("discrete is valid")
}

/// The poset category `0 → 1` (two objects, one non-identity arrow).
pub fn poset_two() -> FinCat {
    let hom = vec![vec![1, 1], vec![0, 1]];
    FinCat::from_comp_fn(2, hom, vec![0, 0], |_, _, _, _, _| 0).expect("poset is valid")
}

/// Full subcategory of finite sets on the given sizes, together with the
/// inclusion functor. Object `i` stands for a set of size `sizes[i]`;
/// `hom(x, y)` is every function table, indexed lexicographically.
pub fn subuniverse(sizes: &[usize], budget: Budget) -> Result<(Rc<FinCat>, SetFunctor)> {
    let n = sizes.len();
    let mut hom = vec![vec![0usize; n]; n];
    for x in 0..n {
        for y in 0..n {
            hom[x][y] = crate::finset::count_fns(
                &FinSet::of(sizes[x]),
                &FinSet::of(sizes[y]),
                budget,
            )? as usize;
        }
    }
    let ids = sizes
        .iter()
        .map(|&s| fn_rank(&(0..s).collect::<Vec<_>>(), s))
        .collect();
    let cat = FinCat::from_comp_fn(n, hom, ids, |x, y, z, g, f| {
        let ft = fn_unrank(f, sizes[x], sizes[y]);
        let gt = fn_unrank(g, sizes[y], sizes[z]);
        let composite: Vec<usize> = ft.iter().map(|&v| gt[v]).collect();
        fn_rank(&composite, sizes[z])
    })?;
    let cat = Rc::new(cat);
    let inclusion = SetFunctor::from_arrow_fn(
        Rc::clone(&cat),
        sizes.iter().map(|&s| FinSet::of(s)).collect(),
        |m| {
            FinFn {
                dom: FinSet::of(sizes[m.src]),
                cod: FinSet::of(sizes[m.dst]),
                table: fn_unrank(m.idx, sizes[m.src], sizes[m.dst]),
            }
        },
    )?;
    Ok((cat, inclusion))
}

/// `subuniverse([0, 1, …, k])`: the skeleton of finite sets up to size `k`.
///
/// `k ≤ 4`; hom-sets grow as `k^k` and the point is desk-scale checking.
pub fn fin_skeleton(k: usize, budget: Budget) -> Result<(Rc<FinCat>, SetFunctor)> {
    if k > 4 {
        return Err(Error::Precondition(format!(
            "fin_skeleton truncation {k} exceeds 4"
        )));
    }
    let sizes: Vec<usize> = (0..=k).collect();
    subuniverse(&sizes, budget)
}

/// Exhaustive category-law check: identity absorption and associativity
/// over every composable pair and triple.
pub fn check_category(cat: &FinCat, budget: Budget) -> Result<Report> {
    let n = cat.objects();
    let mut pairs: u128 = 0;
    let mut triples: u128 = 0;
    for x in 0..n {
        for y in 0..n {
            let fs = cat.hom_size(x, y) as u128;
            pairs += fs;
            for z in 0..n {
                let gs = cat.hom_size(y, z) as u128;
                for w in 0..n {
                    triples += fs * gs * cat.hom_size(z, w) as u128;
                }
            }
        }
    }
    budget.admit("category triples", pairs + triples)?;

    let mut report = Report::new();
    let mut id_witness = None;
    let mut id_cases = 0u64;
    for f in cat.arrows() {
        id_cases += 1;
        let left = cat.compose(cat.id(f.dst), f)?;
        let right = cat.compose(f, cat.id(f.src))?;
        if left != f || right != f {
            id_witness.get_or_insert(format!(
                "identity law breaks at {f}: id∘f = {left}, f∘id = {right}"
            ));
        }
    }
    report.equation("category/identity", id_cases, id_witness);

    let mut assoc_witness = None;
    let mut assoc_cases = 0u64;
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                for w in 0..n {
                    for f in cat.arrows_between(x, y) {
                        for g in cat.arrows_between(y, z) {
                            let gf = cat.compose(g, f)?;
                            for h in cat.arrows_between(z, w) {
                                assoc_cases += 1;
                                let hg = cat.compose(h, g)?;
                                if cat.compose(h, gf)? != cat.compose(hg, f)? {
                                    assoc_witness.get_or_insert(format!(
                                        "associativity breaks at h={h}, g={g}, f={f}"
                                    ));
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    report.equation("category/associativity", assoc_cases, assoc_witness);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn skeleton_hom_sizes_are_powers() {
        let (cat, _) = fin_skeleton(2, Budget::default()).unwrap();
        // hom(m, n) has n^m elements; hom(0, 0) = 1 (the empty identity).
        assert_eq!(cat.hom_size(0, 0), 1);
        assert_eq!(cat.hom_size(2, 2), 4);
        assert_eq!(cat.hom_size(1, 2), 2);
        assert_eq!(cat.hom_size(2, 1), 1);
        assert_eq!(cat.hom_size(2, 0), 0);
        assert!(check_category(&cat, Budget::default()).unwrap().all_pass());
    }

    #[test]
    fn skeleton_composition_matches_table_composition() {
        let budget = Budget::default();
        let (cat, incl) = fin_skeleton(2, budget).unwrap();
        for x in 0..cat.objects() {
            for y in 0..cat.objects() {
                for z in 0..cat.objects() {
                    for f in cat.arrows_between(x, y) {
                        for g in cat.arrows_between(y, z) {
                            let gf = cat.compose(g, f).unwrap();
                            let via_tables =
                                crate::finset::compose(&incl.on_arrow(g), &incl.on_arrow(f))
                                    .unwrap();
                            assert_eq!(incl.on_arrow(gf), via_tables);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn op_is_involutive_and_lawful() {
        let (cat, _) = fin_skeleton(2, Budget::default()).unwrap();
        let op = cat.op();
        assert!(check_category(&op, Budget::default()).unwrap().all_pass());
        assert_eq!(op.op(), *cat);
    }

    #[test]
    fn discrete_and_poset_are_lawful() {
        assert!(check_category(&discrete_category(3), Budget::default())
            .unwrap()
            .all_pass());
        let p = poset_two();
        assert!(check_category(&p, Budget::default()).unwrap().all_pass());
        assert_eq!(p.hom_size(0, 1), 1);
        assert_eq!(p.hom_size(1, 0), 0);
    }

    #[test]
    fn broken_composition_is_reported_not_panicked() {
        // A two-object "category" whose composite of the only non-identity
        // arrows is wired to the wrong identity.
        let hom = vec![vec![2, 0], vec![0, 1]];
        let cat = FinCat::from_comp_fn(2, hom, vec![0, 0], |_, _, _, g, f| {
            // hom(0,0) = {id, e}; declare e ∘ e = e but id ∘ e = id (wrong).
            if g == 0 && f == 1 {
                0
            } else if g == 1 || f == 1 {
                1
            } else {
                0
            }
        })
        .unwrap();
        let report = check_category(&cat, Budget::default()).unwrap();
        assert!(!report.all_pass());
        let failing: Vec<_> = report.failures().collect();
        assert!(failing.iter().any(|c| c.id == "category/identity"));
    }
}
