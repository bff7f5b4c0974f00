//! Kleisli and Eilenberg–Moore constructions for relative monads.
//!
//! The Kleisli category of a relative monad keeps the index objects and
//! takes `hom(X, Y) = FinSet(J X, T Y)`, with the units as identities and
//! `ℓ ∘ k := ℓ* ∘ k` as composition; [`kleisli_build`] materialises it as
//! a deep [`FinCat`] with Kleisli maps numbered by their function rank.
//! The construction splits the monad into an adjunction-like pair: a
//! functor `𝕁 → Kl` sending `f` to `η ∘ J f` and an action `Kl → FinSet`
//! sending an arrow to its lifting, whose composite is the monad's own
//! functorial action.  [`kleisli_adjunction_check`] verifies all of that.
//!
//! Algebras live in [`em`]: the structure-per-map form, the single-map
//! form over the Kan extension of `T`, and the exact translation between
//! them.  [`splitting`] treats both constructions as instances of one
//! notion — a category through which the monad factors — and verifies
//! that the Kleisli factorisation maps into any other and any other maps
//! into algebras, uniquely.  [`compare`] relates the Kleisli and algebra
//! worlds of a relative monad with those of the ordinary monads it
//! restricts or extends to.

use std::rc::Rc;

use crate::budget::Budget;
use crate::fincat::{
    check_cat_functor, check_category, check_set_functor, CatFunctor, FinCat, Mor, SetFunctor,
};
use crate::finset::{compose, count_fns, fn_rank, fn_unrank, FinFn};
use crate::relmon::{merge_tagged, RelMonadData};
use crate::report::Report;
use crate::{Error, Result};

pub mod compare;
pub mod em;
pub mod splitting;

pub use compare::{
    comparison_flat, comparison_flat_check, comparison_sharp_check, flat_algebra, ord_algebra_check,
    sharp_kleisli_functor, FlatComparison, OrdAlgebra,
};
pub use em::{
    alt_to_em, em_alt_check, em_alt_morphism_check, em_alt_roundtrip, em_check, em_morphism_check,
    em_to_alt, free_em, EMAlgebra, EMAltAlgebra, EMAltOps,
};
pub use splitting::{
    em_splitting, kleisli_splitting, splitting_check, splitting_morphisms, Splitting,
    SplittingMorphisms,
};

/// The Kleisli category of a relative monad, as a deep category whose
/// arrow `X → Y # i` is the map `J X → T Y` with function rank `i`.
///
/// The lifting of every arrow is precomputed, so decoding arrows to maps
/// ([`Self::map_of`]), encoding maps to arrows ([`Self::arrow_of`]), and
/// reading off liftings ([`Self::lift_of`]) are all table lookups.
#[derive(Clone)]
pub struct KleisliCat {
    /// The monad the category was built from.
    pub t: RelMonadData,
    /// The category itself: objects are the index objects.
    pub cat: Rc<FinCat>,
    /// `lifts[x][y][i]` is the lifting `k*` of the arrow `x → y # i`.
    lifts: Vec<Vec<Vec<FinFn>>>,
}

impl std::fmt::Debug for KleisliCat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("KleisliCat")
            .field("objects", &self.cat.objects())
            .finish_non_exhaustive()
    }
}

/// Builds the Kleisli category, enumerating every hom-set within budget.
///
/// The laws are not assumed: a lifting that breaks them yields a category
/// whose `check_category` fails with a witness, so defects surface in the
/// report rather than here.  Only genuine construction problems — budget,
/// or a lifting returning malformed tables — are errors.
pub fn kleisli_build(t: &RelMonadData, budget: Budget) -> Result<KleisliCat> {
    let n = t.objects();
    let mut hom = vec![vec![0usize; n]; n];
    for x in 0..n {
        for y in 0..n {
            hom[x][y] = count_fns(t.j.on_obj(x), &t.t[y], budget)? as usize;
        }
    }
    let mut entries: u128 = 0;
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                entries += hom[x][y] as u128 * hom[y][z] as u128;
            }
        }
    }
    budget.admit("Kleisli composition entries", entries)?;

    let mut lifts: Vec<Vec<Vec<FinFn>>> = Vec::with_capacity(n);
    for x in 0..n {
        let mut per_y = Vec::with_capacity(n);
        for y in 0..n {
            let jx = t.j.on_obj(x);
            let maps = (0..hom[x][y])
                .map(|r| {
                    let k = FinFn {
                        dom: jx.clone(),
                        cod: t.t[y].clone(),
                        table: fn_unrank(r, jx.size, t.t[y].size),
                    };
                    t.star(x, y, &k)
                })
                .collect::<Result<Vec<_>>>()?;
            per_y.push(maps);
        }
        lifts.push(per_y);
    }

    let ids = (0..n)
        .map(|x| fn_rank(&t.unit[x].table, t.t[x].size))
        .collect();
    let j = Rc::clone(&t.j);
    let cat = FinCat::from_comp_fn(n, hom, ids, |x, y, z, g, f| {
        let f_table = fn_unrank(f, j.on_obj(x).size, t.t[y].size);
        let lifted = &lifts[y][z][g];
        let composite: Vec<usize> = f_table.iter().map(|&v| lifted.table[v]).collect();
        fn_rank(&composite, t.t[z].size)
    })?;

    Ok(KleisliCat {
        t: t.clone(),
        cat: Rc::new(cat),
        lifts,
    })
}

impl KleisliCat {
    /// Decodes an arrow into the Kleisli map `J src → T dst` it stands for.
    pub fn map_of(&self, m: Mor) -> Result<FinFn> {
        self.check_arrow(m)?;
        let dom = self.t.j.on_obj(m.src).clone();
        let cod = self.t.t[m.dst].clone();
        let table = fn_unrank(m.idx, dom.size, cod.size);
        Ok(FinFn { dom, cod, table })
    }

    /// Encodes a Kleisli map `J x → T y` as the arrow carrying its rank.
    pub fn arrow_of(&self, x: usize, y: usize, k: &FinFn) -> Result<Mor> {
        if x >= self.cat.objects() || y >= self.cat.objects() {
            return Err(Error::Scope {
                index: x.max(y),
                scope: self.cat.objects(),
            });
        }
        if k.dom != *self.t.j.on_obj(x) || k.cod != self.t.t[y] {
            return Err(Error::Shape(format!(
                "map {k} is not J({x}) → T({y}) ({} → {})",
                self.t.j.on_obj(x).size,
                self.t.t[y].size
            )));
        }
        Ok(Mor {
            src: x,
            dst: y,
            idx: fn_rank(&k.table, k.cod.size),
        })
    }

    /// The precomputed lifting `k*` of the arrow `m`.
    pub fn lift_of(&self, m: Mor) -> Result<&FinFn> {
        self.check_arrow(m)?;
        Ok(&self.lifts[m.src][m.dst][m.idx])
    }

    fn check_arrow(&self, m: Mor) -> Result<()> {
        let n = self.cat.objects();
        if m.src >= n || m.dst >= n {
            return Err(Error::Scope {
                index: m.src.max(m.dst),
                scope: n,
            });
        }
        if m.idx >= self.cat.hom_size(m.src, m.dst) {
            return Err(Error::Shape(format!(
                "no arrow {m}: hom has {} entries",
                self.cat.hom_size(m.src, m.dst)
            )));
        }
        Ok(())
    }

    /// The functor `𝕁 → Kl` fixing objects and sending `f` to `η ∘ J f`.
    pub fn left_functor(&self) -> Result<CatFunctor> {
        let j = &self.t.j;
        let n = self.cat.objects();
        let mut images: Vec<Vec<Vec<usize>>> = Vec::with_capacity(n);
        for x in 0..n {
            let mut per_y = Vec::with_capacity(n);
            for y in 0..n {
                let ranks = j
                    .src
                    .arrows_between(x, y)
                    .map(|m| {
                        let k = compose(&self.t.unit[y], j.on_arrow_ref(m))?;
                        Ok(fn_rank(&k.table, k.cod.size))
                    })
                    .collect::<Result<Vec<_>>>()?;
                per_y.push(ranks);
            }
            images.push(per_y);
        }
        CatFunctor::from_arrow_fn(
            Rc::clone(&j.src),
            Rc::clone(&self.cat),
            (0..n).collect(),
            |m| images[m.src][m.dst][m.idx],
        )
    }

    /// The action `Kl → FinSet` with `X ↦ T X` on objects and `k ↦ k*` on
    /// arrows.
    pub fn right_functor(&self) -> Result<SetFunctor> {
        SetFunctor::from_arrow_fn(Rc::clone(&self.cat), self.t.t.clone(), |m| {
            self.lifts[m.src][m.dst][m.idx].clone()
        })
    }
}

/// Builds the Kleisli category and verifies the whole package: category
/// laws, functoriality of both legs, that their composite is the monad's
/// own action, and that the identities are exactly the units.
pub fn kleisli_adjunction_check(t: &RelMonadData, budget: Budget) -> Result<Report> {
    let kl = kleisli_build(t, budget)?;
    let mut report = Report::new();

    merge_tagged(
        &mut report,
        "kleisli/category",
        check_category(&kl.cat, budget)?,
    );

    let left = kl.left_functor()?;
    merge_tagged(
        &mut report,
        "kleisli/left-functor",
        check_cat_functor(&left, budget)?,
    );

    let right = kl.right_functor()?;
    merge_tagged(
        &mut report,
        "kleisli/right-functor",
        check_set_functor(&right, budget)?,
    );

    let mut witness = None;
    let mut cases = 0u64;
    for f in t.j.src.arrows() {
        cases += 1;
        let through = right.on_arrow_ref(left.on_arrow(f));
        let direct = t.functor_action(f)?;
        if *through != direct {
            witness = Some(format!(
                "at {f}: the split action gives {through}, the monad's own {direct}"
            ));
            break;
        }
    }
    report.equation("kleisli/composite-action", cases, witness);

    let mut witness = None;
    let mut cases = 0u64;
    for x in 0..t.objects() {
        cases += 1;
        let id = kl.cat.id(x);
        let eta = kl.arrow_of(x, x, &t.unit[x])?;
        if id != eta {
            witness = Some(format!("at X{x}: identity is {id}, the unit encodes as {eta}"));
            break;
        }
    }
    report.equation("kleisli/unit-is-identity", cases, witness);

    Ok(report)
}
