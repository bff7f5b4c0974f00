//! Comparisons between the Kleisli and algebra worlds of a relative monad
//! and those of an ordinary monad.
//!
//! Going one way, an ordinary monad `M` restricted along `J` has a Kleisli
//! category that embeds fully faithfully into `M`'s own (cut down to the
//! universe): the hom-sets `maps(J X, M(J Y))` and `maps(U, M(V))` contain
//! literally the same tables, so the embedding is the identity on ranks.
//! Ordinary `M`-algebras transport to algebras of the restriction by
//! `χ f := a ∘ M f`, and ordinary morphisms stay morphisms.
//!
//! Going the other way, a relative monad `T` extended to `T♯` on the
//! universe receives a comparison `k ↦ ρ ∘ k` from its own Kleisli
//! category, fully faithful exactly when the extension unit `ρ` is
//! bijective.  An ordinary `T♯`-algebra is literally a single-map algebra
//! of `T` — the extension's value is the same coend the single-map
//! presentation is written against — and the round trip through the
//! per-map presentation is exact.

use std::rc::Rc;

use crate::budget::Budget;
use crate::fincat::{check_cat_functor, CatFunctor, SetFunctor};
use crate::finset::{compose, count_fns, fn_unrank, FinFn, FinSet};
use crate::kleisli_em::em::{em_check, em_morphism_check, EMAlgebra, EMAltAlgebra, EMAltOps};
use crate::kleisli_em::{kleisli_build, KleisliCat};
use crate::relmon::{extend, extension_unit, merge_tagged, restrict, MonadData, RelMonadData};
use crate::report::Report;
use crate::{Error, Result};

/// An algebra of an ordinary monad: a carrier and an action `M A → A`.
#[derive(Debug, Clone, PartialEq)]
pub struct OrdAlgebra {
    pub carrier: FinSet,
    pub action: FinFn,
}

/// Checks the two ordinary algebra laws, `a ∘ η = id` and
/// `a ∘ μ = a ∘ M a`.
pub fn ord_algebra_check(m: &MonadData, a: &OrdAlgebra, _budget: Budget) -> Result<Report> {
    let ma = m.on_set(&a.carrier)?;
    if a.action.dom != ma || a.action.cod != a.carrier {
        return Err(Error::Shape(format!(
            "action {} does not run M A → A ({} → {})",
            a.action, ma.size, a.carrier.size
        )));
    }
    let mut report = Report::new();

    let back = compose(&a.action, &m.unit(&a.carrier)?)?;
    let witness = (!back.is_identity()).then(|| format!("a∘η = {back}"));
    report.equation("ord-em/unit", a.carrier.size as u64, witness);

    let lhs = compose(&a.action, &m.mult(&a.carrier)?)?;
    let rhs = compose(&a.action, &m.on_map(&a.action)?)?;
    let witness = (lhs != rhs).then(|| format!("a∘μ = {lhs} but a∘Ma = {rhs}"));
    report.equation("ord-em/assoc", lhs.dom.size as u64, witness);

    Ok(report)
}

/// The restriction of `m` along `j` with the embedding of its Kleisli
/// category into the ambient one.
pub struct FlatComparison {
    /// The restricted monad `T X = M (J X)`.
    pub flat: RelMonadData,
    /// Its Kleisli category.
    pub flat_kleisli: KleisliCat,
    /// The ambient monad's Kleisli category, cut down to the universe.
    pub ambient_kleisli: KleisliCat,
    /// The embedding; identity on arrow ranks.
    pub to_ambient: CatFunctor,
}

/// Builds the restriction and its Kleisli embedding.  Every value of `j`
/// must be an object of the monad's universe.
pub fn comparison_flat(
    m: &MonadData,
    j: &Rc<SetFunctor>,
    budget: Budget,
) -> Result<FlatComparison> {
    let flat = restrict(m, j)?;
    let ambient_rel = restrict(m, &Rc::new(m.universe.incl.clone()))?;
    let flat_kleisli = kleisli_build(&flat, budget)?;
    let ambient_kleisli = kleisli_build(&ambient_rel, budget)?;
    let n = flat.objects();
    let mut obj = Vec::with_capacity(n);
    for x in 0..n {
        obj.push(m.universe.require_object(j.on_obj(x).size)?);
    }
    for x in 0..n {
        for y in 0..n {
            let here = flat_kleisli.cat.hom_size(x, y);
            let there = ambient_kleisli.cat.hom_size(obj[x], obj[y]);
            if here != there {
                return Err(Error::Shape(format!(
                    "hom({x},{y}) has {here} arrows but its image has {there}"
                )));
            }
        }
    }
    let to_ambient = CatFunctor::from_arrow_fn(
        flat_kleisli.cat.clone(),
        ambient_kleisli.cat.clone(),
        obj,
        |m| m.idx,
    )?;
    Ok(FlatComparison {
        flat,
        flat_kleisli,
        ambient_kleisli,
        to_ambient,
    })
}

/// Transports an ordinary algebra to the restriction: `χ f := a ∘ M f`.
pub fn flat_algebra(
    m: &MonadData,
    j: &Rc<SetFunctor>,
    a: &OrdAlgebra,
    budget: Budget,
) -> Result<EMAlgebra> {
    let flat = restrict(m, j)?;
    EMAlgebra::new(&flat, a.carrier.clone(), budget, |_z, f| {
        compose(&a.action, &m.on_map(f)?)
    })
}

/// Verifies the restriction comparison: the embedding is a fully faithful
/// functor, lawful ordinary algebras transport to lawful algebras, and
/// ordinary morphisms between the given algebras stay morphisms.
pub fn comparison_flat_check(
    m: &MonadData,
    j: &Rc<SetFunctor>,
    algebras: &[OrdAlgebra],
    budget: Budget,
) -> Result<Report> {
    let cmp = comparison_flat(m, j, budget)?;
    let mut report = Report::new();

    merge_tagged(
        &mut report,
        "flat/kleisli-functor",
        check_cat_functor(&cmp.to_ambient, budget)?,
    );

    let n = cmp.flat.objects();
    let mut witness = None;
    let mut cases = 0u64;
    'ff: for x in 0..n {
        for y in 0..n {
            let tx = cmp.to_ambient.on_obj(x);
            let ty = cmp.to_ambient.on_obj(y);
            let mut seen = vec![false; cmp.ambient_kleisli.cat.hom_size(tx, ty)];
            for a in cmp.flat_kleisli.cat.arrows_between(x, y) {
                cases += 1;
                let img = cmp.to_ambient.on_arrow(a);
                if seen[img.idx] {
                    witness = Some(format!("at {a}: the image {img} is hit twice"));
                    break 'ff;
                }
                seen[img.idx] = true;
            }
            if let Some(miss) = seen.iter().position(|s| !s) {
                witness = Some(format!(
                    "hom({tx},{ty}) arrow {miss} is not in the image"
                ));
                break 'ff;
            }
        }
    }
    report.equation("flat/fully-faithful", cases, witness);

    let mut lawful = Vec::new();
    let mut witness = None;
    let mut cases = 0u64;
    for (i, a) in algebras.iter().enumerate() {
        cases += 1;
        let transported = flat_algebra(m, j, a, budget)?;
        let ord_pass = ord_algebra_check(m, a, budget)?.all_pass();
        if ord_pass {
            lawful.push((i, transported.clone()));
            if witness.is_none() {
                if let Some(c) = em_check(&transported, budget)?.failures().next() {
                    witness = Some(format!(
                        "algebra {i} is lawful but its transport fails {}: {}",
                        c.id,
                        c.detail.clone().unwrap_or_default()
                    ));
                }
            }
        }
    }
    report.equation("flat/algebras", cases, witness);

    let mut witness = None;
    let mut cases = 0u64;
    'morph: for &(i, ref flat_a) in &lawful {
        for &(k, ref flat_b) in &lawful {
            let (a, b) = (&algebras[i], &algebras[k]);
            let count = count_fns(&a.carrier, &b.carrier, budget)? as usize;
            for r in 0..count {
                let h = FinFn {
                    dom: a.carrier.clone(),
                    cod: b.carrier.clone(),
                    table: fn_unrank(r, a.carrier.size, b.carrier.size),
                };
                cases += 1;
                let ord_morphism =
                    compose(&h, &a.action)? == compose(&b.action, &m.on_map(&h)?)?;
                if ord_morphism
                    && !em_morphism_check(flat_a, flat_b, &h, budget)?.all_pass()
                {
                    witness = Some(format!(
                        "h = {h} is a morphism from {i} to {k} but its transport is not"
                    ));
                    break 'morph;
                }
            }
        }
    }
    report.equation("flat/morphisms", cases, witness);

    Ok(report)
}

struct SharpParts {
    kl: KleisliCat,
    kl_sharp: KleisliCat,
    sharp: MonadData,
    functor: CatFunctor,
}

fn sharp_parts(t: &RelMonadData, sizes: &[usize], budget: Budget) -> Result<SharpParts> {
    let sharp = extend(t, sizes, budget)?;
    let rho = extension_unit(t, sizes, budget)?;
    let kl = kleisli_build(t, budget)?;
    let ambient_rel = restrict(&sharp, &Rc::new(sharp.universe.incl.clone()))?;
    let kl_sharp = kleisli_build(&ambient_rel, budget)?;
    let n = t.objects();
    let mut obj = Vec::with_capacity(n);
    for x in 0..n {
        obj.push(sharp.universe.require_object(t.j.on_obj(x).size)?);
    }
    let mut arr: Vec<Vec<Vec<usize>>> = vec![vec![Vec::new(); n]; n];
    for x in 0..n {
        for y in 0..n {
            for mor in kl.cat.arrows_between(x, y) {
                let image = compose(&rho.components[y], &kl.map_of(mor)?)?;
                arr[x][y].push(kl_sharp.arrow_of(obj[x], obj[y], &image)?.idx);
            }
        }
    }
    let functor = CatFunctor::from_arrow_fn(kl.cat.clone(), kl_sharp.cat.clone(), obj, |m| {
        arr[m.src][m.dst][m.idx]
    })?;
    Ok(SharpParts {
        kl,
        kl_sharp,
        sharp,
        functor,
    })
}

/// The comparison `Kl(T) → Kl(T♯)` sending `k` to `ρ ∘ k`, where `T♯` is
/// the extension of `t` to the universe with the given sizes.
pub fn sharp_kleisli_functor(
    t: &RelMonadData,
    sizes: &[usize],
    budget: Budget,
) -> Result<CatFunctor> {
    Ok(sharp_parts(t, sizes, budget)?.functor)
}

/// Verifies the extension comparison: the Kleisli functor is fully
/// faithful, the free ordinary algebras of `T♯` satisfy the single-map
/// laws of `t` as they stand, and their round trip through the per-map
/// presentation is exact.
pub fn comparison_sharp_check(
    t: &RelMonadData,
    sizes: &[usize],
    budget: Budget,
) -> Result<Report> {
    let parts = sharp_parts(t, sizes, budget)?;
    let mut report = Report::new();

    merge_tagged(
        &mut report,
        "sharp/kleisli-functor",
        check_cat_functor(&parts.functor, budget)?,
    );

    let n = t.objects();
    let mut witness = None;
    let mut cases = 0u64;
    'ff: for x in 0..n {
        for y in 0..n {
            let tx = parts.functor.on_obj(x);
            let ty = parts.functor.on_obj(y);
            let hom_there = parts.kl_sharp.cat.hom_size(tx, ty);
            if parts.kl.cat.hom_size(x, y) != hom_there {
                witness = Some(format!(
                    "hom({x},{y}) has {} arrows but its image hom has {hom_there}",
                    parts.kl.cat.hom_size(x, y)
                ));
                break 'ff;
            }
            let mut seen = vec![false; hom_there];
            for a in parts.kl.cat.arrows_between(x, y) {
                cases += 1;
                let img = parts.functor.on_arrow(a);
                if seen[img.idx] {
                    witness = Some(format!("at {a}: the image {img} is hit twice"));
                    break 'ff;
                }
                seen[img.idx] = true;
            }
        }
    }
    report.equation("sharp/fully-faithful", cases, witness);

    let mut law_witness = None;
    let mut law_cases = 0u64;
    let mut trip_witness = None;
    let mut trip_cases = 0u64;
    for &s in parts.sharp.universe.sizes() {
        let a = FinSet::of(s);
        let carrier = parts.sharp.on_set(&a)?;
        let alt = EMAltAlgebra {
            carrier: carrier.clone(),
            structure: parts.sharp.mult(&a)?,
        };
        let ops = EMAltOps::new(t, &carrier, budget)?;

        let laws = ops.laws(&alt)?;
        law_cases += laws.total_cases();
        if law_witness.is_none() {
            law_witness = laws
                .failures()
                .next()
                .map(|c| format!("free algebra at size {s}: {c:?}"));
        }

        let family = ops.to_family(&alt)?;
        trip_cases += 1;
        if trip_witness.is_none() {
            if let Some(c) = em_check(&family, budget)?.failures().next() {
                trip_witness = Some(format!(
                    "per-map image of the free algebra at size {s} fails {}",
                    c.id
                ));
            } else if ops.from_family(&family)? != alt {
                trip_witness = Some(format!(
                    "the free algebra at size {s} does not survive the round trip"
                ));
            }
        }
    }
    report.equation("sharp/free-algebra", law_cases, law_witness);
    report.equation("sharp/algebra-roundtrip", trip_cases, trip_witness);

    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{fin_skeleton, Universe};
    use crate::kleisli_em::free_em;
    use crate::relmon::testing::{powerset_monad_ops, powerset_restriction};

    fn skeleton(k: usize) -> Rc<SetFunctor> {
        let (_, incl) = fin_skeleton(k, Budget::default()).unwrap();
        Rc::new(incl)
    }

    fn powerset_monad(trunc: usize) -> MonadData {
        MonadData::new(
            Universe::fin(trunc, Budget::default()).unwrap(),
            Rc::new(powerset_monad_ops(Budget::default())),
        )
    }

    #[test]
    fn restriction_embeds_kleisli_categories_rank_for_rank() {
        let m = powerset_monad(2);
        let j = skeleton(2);
        let budget = Budget::default();
        let cmp = comparison_flat(&m, &j, budget).unwrap();
        for a in cmp.flat_kleisli.cat.arrows() {
            let img = cmp.to_ambient.on_arrow(a);
            assert_eq!(img.idx, a.idx);
            assert_eq!(
                cmp.ambient_kleisli.map_of(img).unwrap().table,
                cmp.flat_kleisli.map_of(a).unwrap().table,
            );
        }
    }

    #[test]
    fn the_restriction_comparison_passes_with_algebras_onboard() {
        let m = powerset_monad(2);
        let j = skeleton(2);
        let budget = Budget::default();

        // free algebras on two universe objects plus the two-element
        // semilattice given by bitwise union
        let free = |s: usize| -> OrdAlgebra {
            let a = FinSet::of(s);
            OrdAlgebra {
                carrier: m.on_set(&a).unwrap(),
                action: m.mult(&a).unwrap(),
            }
        };
        let join = OrdAlgebra {
            carrier: FinSet::of(2),
            action: FinFn::new(FinSet::of(4), FinSet::of(2), vec![0, 0, 1, 1]).unwrap(),
        };
        assert!(ord_algebra_check(&m, &join, budget).unwrap().all_pass());
        let algebras = vec![free(0), free(1), join];

        let report = comparison_flat_check(&m, &j, &algebras, budget).unwrap();
        assert!(report.all_pass(), "{:?}", report.failures().next());
        let ids: Vec<&str> = report.checks.iter().map(|c| c.id.as_str()).collect();
        assert_eq!(
            ids,
            [
                "flat/kleisli-functor",
                "flat/fully-faithful",
                "flat/algebras",
                "flat/morphisms",
            ]
        );
    }

    #[test]
    fn transported_free_algebras_are_the_frees_of_the_restriction() {
        let m = powerset_monad(2);
        let j = skeleton(2);
        let budget = Budget::default();
        let flat = restrict(&m, &j).unwrap();
        for x in 0..flat.objects() {
            let ord = OrdAlgebra {
                carrier: m.on_set(j.on_obj(x)).unwrap(),
                action: m.mult(j.on_obj(x)).unwrap(),
            };
            let transported = flat_algebra(&m, &j, &ord, budget).unwrap();
            assert_eq!(transported, free_em(&flat, x, budget).unwrap());
        }
    }

    #[test]
    fn the_extension_comparison_passes_for_the_powerset_restriction() {
        let t = powerset_restriction(&skeleton(2));
        let budget = Budget(4_000_000);
        let report = comparison_sharp_check(&t, &[0, 1, 2], budget).unwrap();
        assert!(report.all_pass(), "{:?}", report.failures().next());
        let ids: Vec<&str> = report.checks.iter().map(|c| c.id.as_str()).collect();
        assert_eq!(
            ids,
            [
                "sharp/kleisli-functor",
                "sharp/fully-faithful",
                "sharp/free-algebra",
                "sharp/algebra-roundtrip",
            ]
        );
    }

    #[test]
    fn the_extension_comparison_is_an_isomorphism_for_the_trivial_monad() {
        let t = RelMonadData::trivial(skeleton(2));
        let budget = Budget::default();
        let functor = sharp_kleisli_functor(&t, &[0, 1, 2], budget).unwrap();
        let report = check_cat_functor(&functor, budget).unwrap();
        assert!(report.all_pass());
        for x in 0..t.objects() {
            assert_eq!(functor.on_obj(x), x);
        }
    }
}
