//! Ordinary monads on the ambient world of finite sets, and their
//! restriction to relative monads along a functor into that world.
//!
//! A [`MonadData`] pairs callable structure — [`MonadOps`], total on any
//! finite set within budget — with a [`Universe`], the subcategory on which
//! the laws are actually verified.  Carriers can outgrow any fixed
//! truncation (already `T³` of a four-element set is astronomically large
//! for the powerset), so [`check_monad_laws`] treats a refusal at one
//! object as a recorded gap, not a failure: a law passes when it holds at
//! every object where the structure could be computed, and a law that
//! could be computed nowhere is reported as skipped.
//!
//! [`restrict`] pulls a monad back along `J : 𝕁 → FinSet` to the relative
//! monad `T♭ X := T (J X)`, and [`mu_flat_check`] verifies that the
//! multiplication this induces on the coend side agrees pointwise with the
//! one obtained abstractly from the restricted lifting.

use std::rc::Rc;

use crate::budget::Budget;
use crate::fincat::{check_naturality, check_set_functor, NatTrans, SetFunctor, Universe};
use crate::finset::{compose, FinFn, FinSet};
use crate::kan::{alpha_bar_bar, lambda_bar, LanObject};
use crate::report::{Check, Report, Status};
use crate::{Error, Result};

use super::monoid::mu_from_star;
use super::{merge_tagged, RelMonadData, RelMonadMorphism};

/// Callable monad structure, total on all finite sets within budget.
///
/// `on_set`/`on_map` give the functor, `unit`/`mult` its structure maps at
/// any set.  An implementation may refuse a call — by budget when the
/// result is too large, or by name when a component would need something
/// unavailable — but it must never silently truncate.
pub trait MonadOps {
    fn on_set(&self, x: &FinSet) -> Result<FinSet>;
    fn on_map(&self, f: &FinFn) -> Result<FinFn>;
    fn unit(&self, x: &FinSet) -> Result<FinFn>;
    fn mult(&self, x: &FinSet) -> Result<FinFn>;
}

/// A monad presented by ops plus the universe its laws are checked on.
#[derive(Clone)]
pub struct MonadData {
    pub universe: Universe,
    ops: Rc<dyn MonadOps>,
}

impl std::fmt::Debug for MonadData {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("MonadData")
            .field("universe", &self.universe.sizes())
            .finish_non_exhaustive()
    }
}

impl MonadData {
    pub fn new(universe: Universe, ops: Rc<dyn MonadOps>) -> MonadData {
        MonadData { universe, ops }
    }

    pub fn on_set(&self, x: &FinSet) -> Result<FinSet> {
        self.ops.on_set(x)
    }

    pub fn on_map(&self, f: &FinFn) -> Result<FinFn> {
        let lifted = self.ops.on_map(f)?;
        if lifted.dom != self.on_set(&f.dom)? || lifted.cod != self.on_set(&f.cod)? {
            return Err(Error::Shape(format!(
                "action on {f} runs {} → {}, expected T applied to both ends",
                lifted.dom.size, lifted.cod.size
            )));
        }
        Ok(lifted)
    }

    pub fn unit(&self, x: &FinSet) -> Result<FinFn> {
        let unit = self.ops.unit(x)?;
        if unit.dom != *x || unit.cod != self.on_set(x)? {
            return Err(Error::Shape(format!(
                "unit at a set of size {} runs {} → {}",
                x.size, unit.dom.size, unit.cod.size
            )));
        }
        Ok(unit)
    }

    pub fn mult(&self, x: &FinSet) -> Result<FinFn> {
        let tx = self.on_set(x)?;
        let mult = self.ops.mult(x)?;
        if mult.dom != self.on_set(&tx)? || mult.cod != tx {
            return Err(Error::Shape(format!(
                "multiplication at a set of size {} runs {} → {}",
                x.size, mult.dom.size, mult.cod.size
            )));
        }
        Ok(mult)
    }

    /// Kleisli lifting: `k* := μ_Y ∘ T k` for `k : X → T Y`.
    pub fn star(&self, k: &FinFn, y: &FinSet) -> Result<FinFn> {
        if k.cod != self.on_set(y)? {
            return Err(Error::Shape(format!(
                "Kleisli map has codomain {}, expected T of a set of size {}",
                k.cod.size, y.size
            )));
        }
        compose(&self.mult(y)?, &self.on_map(k)?)
    }

    /// The functor materialised on the universe.
    pub fn ambient_functor(&self) -> Result<SetFunctor> {
        let cat = Rc::clone(&self.universe.cat);
        let n = cat.objects();
        let obj = (0..n)
            .map(|i| self.on_set(self.universe.incl.on_obj(i)))
            .collect::<Result<Vec<_>>>()?;
        let mut actions = std::collections::HashMap::new();
        for m in cat.arrows() {
            actions.insert(m, self.on_map(self.universe.incl.on_arrow_ref(m))?);
        }
        SetFunctor::from_arrow_fn(cat, obj, |m| actions[&m].clone())
    }
}

/// The identity monad on a universe: `T X = X` with identity structure.
pub fn identity_monad(universe: Universe) -> MonadData {
    struct IdentityOps;
    impl MonadOps for IdentityOps {
        fn on_set(&self, x: &FinSet) -> Result<FinSet> {
            Ok(x.clone())
        }
        fn on_map(&self, f: &FinFn) -> Result<FinFn> {
            Ok(f.clone())
        }
        fn unit(&self, x: &FinSet) -> Result<FinFn> {
            Ok(FinFn::identity(x))
        }
        fn mult(&self, x: &FinSet) -> Result<FinFn> {
            Ok(FinFn::identity(x))
        }
    }
    MonadData::new(universe, Rc::new(IdentityOps))
}

/// Whether an error means "could not be computed here" rather than
/// "computed and wrong": such objects are recorded as gaps by the law
/// checks instead of failing them.
fn is_refusal(e: &Error) -> bool {
    matches!(
        e,
        Error::BudgetExceeded { .. } | Error::OutOfUniverse { .. } | Error::Precondition(_)
    )
}

/// Runs one equation at every universe object, tolerating refusals.
fn law_over_objects(
    report: &mut Report,
    id: &str,
    universe: &Universe,
    mut check: impl FnMut(&FinSet) -> Result<Option<String>>,
) -> Result<()> {
    let mut witness = None;
    let mut cases = 0u64;
    let mut gaps: Vec<String> = Vec::new();
    for i in 0..universe.cat.objects() {
        let x = universe.incl.on_obj(i);
        match check(x) {
            Ok(None) => cases += 1,
            Ok(Some(w)) => {
                witness = Some(w);
                break;
            }
            Err(e) if is_refusal(&e) => gaps.push(format!("size {}: {e}", x.size)),
            Err(e) => return Err(e),
        }
    }
    if let Some(w) = witness {
        report.push(Check::fail(id, w, cases));
    } else if cases == 0 && !gaps.is_empty() {
        report.push(Check::skipped(id, gaps.join("; ")));
    } else {
        report.push(Check {
            id: id.to_string(),
            status: Status::Pass,
            detail: (!gaps.is_empty()).then(|| format!("not computable at {}", gaps.join("; "))),
            cases,
        });
    }
    Ok(())
}

/// Checks the functor laws, naturality of unit and multiplication, and the
/// three monad equations over every universe object that fits the budget.
pub fn check_monad_laws(m: &MonadData, budget: Budget) -> Result<Report> {
    let mut report = Report::new();
    let universe = &m.universe;

    let ambient = match m.ambient_functor() {
        Ok(f) => f,
        Err(e) if is_refusal(&e) => {
            report.push(Check::skipped("monad/functor", e.to_string()));
            return Ok(report);
        }
        Err(e) => return Err(e),
    };
    merge_tagged(
        &mut report,
        "monad/functor",
        check_set_functor(&ambient, budget)?,
    );

    let units = (0..universe.cat.objects())
        .map(|i| m.unit(universe.incl.on_obj(i)))
        .collect::<Result<Vec<_>>>()?;
    merge_tagged(
        &mut report,
        "monad/unit-natural",
        check_naturality(
            &universe.incl,
            &ambient,
            &NatTrans {
                components: units.clone(),
            },
            budget,
        )?,
    );

    // T∘T on the universe, where it can be computed at all.
    let squared: Result<SetFunctor> = (|| {
        let obj = (0..universe.cat.objects())
            .map(|i| m.on_set(ambient.on_obj(i)))
            .collect::<Result<Vec<_>>>()?;
        let mut actions = std::collections::HashMap::new();
        for mor in universe.cat.arrows() {
            actions.insert(mor, m.on_map(ambient.on_arrow_ref(mor))?);
        }
        SetFunctor::from_arrow_fn(Rc::clone(&universe.cat), obj, |mor| actions[&mor].clone())
    })();
    match squared {
        Ok(tt) => {
            let mults = (0..universe.cat.objects())
                .map(|i| m.mult(universe.incl.on_obj(i)))
                .collect::<Result<Vec<_>>>()?;
            merge_tagged(
                &mut report,
                "monad/mult-natural",
                check_naturality(&tt, &ambient, &NatTrans { components: mults }, budget)?,
            );
        }
        Err(e) if is_refusal(&e) => {
            report.push(Check::skipped("monad/mult-natural", e.to_string()))
        }
        Err(e) => return Err(e),
    }

    law_over_objects(&mut report, "monad/unit-left", universe, |x| {
        let composite = compose(&m.mult(x)?, &m.unit(&m.on_set(x)?)?)?;
        Ok((!composite.is_identity()).then(|| format!("μ∘η_T = {composite} at size {}", x.size)))
    })?;

    law_over_objects(&mut report, "monad/unit-right", universe, |x| {
        let composite = compose(&m.mult(x)?, &m.on_map(&m.unit(x)?)?)?;
        Ok((!composite.is_identity()).then(|| format!("μ∘Tη = {composite} at size {}", x.size)))
    })?;

    law_over_objects(&mut report, "monad/assoc", universe, |x| {
        let mu = m.mult(x)?;
        let lhs = compose(&mu, &m.on_map(&mu)?)?;
        let rhs = compose(&mu, &m.mult(&m.on_set(x)?)?)?;
        Ok((lhs != rhs).then(|| {
            format!("μ∘Tμ ≠ μ∘μ_T at size {}: {lhs} vs {rhs}", x.size)
        }))
    })?;

    Ok(report)
}

/// Restricts a monad along `j`: carriers `T (J X)`, units at the images,
/// lifting by the ambient Kleisli lifting.  Every value of `j` must be an
/// object of the monad's universe.
pub fn restrict(m: &MonadData, j: &Rc<SetFunctor>) -> Result<RelMonadData> {
    let n = j.src.objects();
    for x in 0..n {
        m.universe.require_object(j.on_obj(x).size)?;
    }
    let t = (0..n)
        .map(|x| m.on_set(j.on_obj(x)))
        .collect::<Result<Vec<_>>>()?;
    let unit = (0..n)
        .map(|x| m.unit(j.on_obj(x)))
        .collect::<Result<Vec<_>>>()?;
    let ambient = m.clone();
    let weight = Rc::clone(j);
    let star = Rc::new(move |_x: usize, y: usize, k: &FinFn| {
        ambient.star(k, weight.on_obj(y))
    });
    RelMonadData::new(Rc::clone(j), t, unit, star)
}

/// A morphism of monads over a shared universe, with components computed
/// on demand at any set.
#[derive(Clone)]
pub struct MonadMorphism {
    pub src: MonadData,
    pub tgt: MonadData,
    at: Rc<dyn Fn(&FinSet) -> Result<FinFn>>,
}

impl std::fmt::Debug for MonadMorphism {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("MonadMorphism")
            .field("universe", &self.src.universe.sizes())
            .finish_non_exhaustive()
    }
}

impl MonadMorphism {
    pub fn new(
        src: MonadData,
        tgt: MonadData,
        at: Rc<dyn Fn(&FinSet) -> Result<FinFn>>,
    ) -> Result<MonadMorphism> {
        if src.universe.sizes() != tgt.universe.sizes() {
            return Err(Error::Shape(
                "morphism endpoints live on different universes".into(),
            ));
        }
        Ok(MonadMorphism { src, tgt, at })
    }

    pub fn identity(m: &MonadData) -> MonadMorphism {
        let ops = m.clone();
        MonadMorphism {
            src: m.clone(),
            tgt: m.clone(),
            at: Rc::new(move |x| Ok(FinFn::identity(&ops.on_set(x)?))),
        }
    }

    /// The component `σ_X : T X → T′ X`, shape-checked.
    pub fn component(&self, x: &FinSet) -> Result<FinFn> {
        let sigma = (self.at)(x)?;
        if sigma.dom != self.src.on_set(x)? || sigma.cod != self.tgt.on_set(x)? {
            return Err(Error::Shape(format!(
                "component at a set of size {} runs {} → {}",
                x.size, sigma.dom.size, sigma.cod.size
            )));
        }
        Ok(sigma)
    }
}

/// Checks unit and multiplication compatibility and naturality of a monad
/// morphism over its universe, with the same refusal tolerance as
/// [`check_monad_laws`].
pub fn check_monad_morphism(mor: &MonadMorphism, budget: Budget) -> Result<Report> {
    let mut report = Report::new();
    let universe = &mor.src.universe;

    law_over_objects(&mut report, "monad-morphism/unit", universe, |x| {
        let lhs = compose(&mor.component(x)?, &mor.src.unit(x)?)?;
        let rhs = mor.tgt.unit(x)?;
        Ok((lhs != rhs).then(|| format!("σ∘η = {lhs} but η′ = {rhs} at size {}", x.size)))
    })?;

    law_over_objects(&mut report, "monad-morphism/mult", universe, |x| {
        let lhs = compose(&mor.component(x)?, &mor.src.mult(x)?)?;
        let tx = mor.src.on_set(x)?;
        let across = compose(&mor.tgt.on_map(&mor.component(x)?)?, &mor.component(&tx)?)?;
        let rhs = compose(&mor.tgt.mult(x)?, &across)?;
        Ok((lhs != rhs).then(|| {
            format!("σ∘μ = {lhs} but μ′∘T′σ∘σ_T = {rhs} at size {}", x.size)
        }))
    })?;

    budget.admit(
        "universe arrows",
        universe.cat.arrows().count() as u128,
    )?;
    let mut witness = None;
    let mut cases = 0u64;
    let mut gaps: Vec<String> = Vec::new();
    for m in universe.cat.arrows() {
        let f = universe.incl.on_arrow_ref(m);
        let outcome = (|| {
            let lhs = compose(&mor.component(&f.cod)?, &mor.src.on_map(f)?)?;
            let rhs = compose(&mor.tgt.on_map(f)?, &mor.component(&f.dom)?)?;
            Ok::<Option<String>, Error>(
                (lhs != rhs).then(|| format!("at {f}: σ∘Tf = {lhs} but T′f∘σ = {rhs}")),
            )
        })();
        match outcome {
            Ok(None) => cases += 1,
            Ok(Some(w)) => {
                witness = Some(w);
                break;
            }
            Err(e) if is_refusal(&e) => gaps.push(e.to_string()),
            Err(e) => return Err(e),
        }
    }
    if let Some(w) = witness {
        report.push(Check::fail("monad-morphism/naturality", w, cases));
    } else if cases == 0 && !gaps.is_empty() {
        report.push(Check::skipped("monad-morphism/naturality", gaps.join("; ")));
    } else {
        report.push(Check::pass("monad-morphism/naturality", cases));
    }

    Ok(report)
}

/// Restricts a monad morphism along `j` to a morphism of the restrictions.
pub fn restrict_morphism(mor: &MonadMorphism, j: &Rc<SetFunctor>) -> Result<RelMonadMorphism> {
    let src = restrict(&mor.src, j)?;
    let tgt = restrict(&mor.tgt, j)?;
    let components = (0..j.src.objects())
        .map(|x| mor.component(j.on_obj(x)))
        .collect::<Result<Vec<_>>>()?;
    RelMonadMorphism::new(src, tgt, components)
}

/// Verifies that the multiplication induced on the restriction agrees with
/// the ambient one: at every index object the factorised `μ` equals
/// `μ_{J X} ∘ T λ̄ ∘ ᾱ̄_{T,J}` computed from the monad's own structure.
pub fn mu_flat_check(m: &MonadData, j: &Rc<SetFunctor>, budget: Budget) -> Result<Report> {
    let flat = restrict(m, j)?;
    let monoid = mu_from_star(&flat, budget)?;
    let ambient = m.ambient_functor()?;
    let mut report = Report::new();

    let mut witness = None;
    let mut cases = 0u64;
    for x in 0..j.src.objects() {
        let lan_g = LanObject::new(j, j, &flat.t[x], budget)?;
        let across = alpha_bar_bar(&monoid.tensor.at[x], &lan_g, &ambient, &m.universe)?;
        let collapse = m.on_map(&lambda_bar(&lan_g)?)?;
        let composite = compose(&m.mult(j.on_obj(x))?, &compose(&collapse, &across)?)?;
        cases += 1;
        if composite != monoid.mu.components[x] {
            witness = Some(format!(
                "at X{x}: μ_J∘Tλ̄∘ᾱ̄ = {composite} but factorised μ = {}",
                monoid.mu.components[x]
            ));
            break;
        }
    }
    report.equation("mu-flat/agree", cases, witness);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::fin_skeleton;
    use crate::finset::{count_fns, fn_unrank};
    use crate::relmon::testing::{powerset_monad_ops, powerset_restriction};
    use crate::relmon::{check_morphism, check_relmonad_laws, Mode};

    fn skeleton(k: usize) -> Rc<SetFunctor> {
        let (_, incl) = fin_skeleton(k, Budget::default()).unwrap();
        Rc::new(incl)
    }

    #[test]
    fn identity_monad_passes_its_laws() {
        let m = identity_monad(Universe::fin(3, Budget::default()).unwrap());
        let report = check_monad_laws(&m, Budget::default()).unwrap();
        assert!(report.all_pass(), "{:?}", report.failures().next());
        assert!(report.checks.iter().all(|c| c.status == Status::Pass));
    }

    #[test]
    fn powerset_monad_passes_where_computable() {
        let budget = Budget(4_000_000);
        let m = MonadData::new(
            Universe::fin(3, budget).unwrap(),
            Rc::new(powerset_monad_ops(budget)),
        );
        let report = check_monad_laws(&m, budget).unwrap();
        assert!(report.all_pass(), "{:?}", report.failures().next());
        // T³ at the three-element set is out of reach and recorded as such.
        let assoc = report
            .checks
            .iter()
            .find(|c| c.id == "monad/assoc")
            .unwrap();
        assert_eq!(assoc.status, Status::Pass);
        assert!(assoc.detail.as_deref().unwrap().contains("size 3"));
        assert!(assoc.cases >= 3);
    }

    #[test]
    fn restriction_of_powerset_matches_the_bitmask_instance() {
        let j = skeleton(2);
        let m = MonadData::new(
            Universe::fin(2, Budget::default()).unwrap(),
            Rc::new(powerset_monad_ops(Budget::default())),
        );
        let flat = restrict(&m, &j).unwrap();
        let direct = powerset_restriction(&j);

        assert_eq!(flat.t, direct.t);
        assert_eq!(flat.unit, direct.unit);
        for x in 0..flat.objects() {
            for y in 0..flat.objects() {
                let count =
                    count_fns(j.on_obj(x), &flat.t[y], Budget::default()).unwrap() as usize;
                for rank in 0..count {
                    let k = FinFn {
                        dom: j.on_obj(x).clone(),
                        cod: flat.t[y].clone(),
                        table: fn_unrank(rank, j.on_obj(x).size, flat.t[y].size),
                    };
                    assert_eq!(
                        flat.star(x, y, &k).unwrap(),
                        direct.star(x, y, &k).unwrap()
                    );
                }
            }
        }

        let report = check_relmonad_laws(&flat, Mode::Exhaustive, Budget::default()).unwrap();
        assert!(report.all_pass(), "{:?}", report.failures().next());
    }

    #[test]
    fn restriction_of_identity_is_trivial() {
        let j = skeleton(2);
        let m = identity_monad(Universe::fin(2, Budget::default()).unwrap());
        let flat = restrict(&m, &j).unwrap();
        let triv = RelMonadData::trivial(Rc::clone(&j));
        assert_eq!(flat.t, triv.t);
        assert_eq!(flat.unit, triv.unit);
        let k = FinFn::new(j.on_obj(2).clone(), j.on_obj(1).clone(), vec![0, 0]).unwrap();
        assert_eq!(flat.star(2, 1, &k).unwrap(), triv.star(2, 1, &k).unwrap());
    }

    #[test]
    fn restriction_requires_the_universe_to_contain_the_image() {
        let j = skeleton(3);
        let m = identity_monad(Universe::fin(2, Budget::default()).unwrap());
        assert!(matches!(
            restrict(&m, &j),
            Err(Error::OutOfUniverse { size: 3 })
        ));
    }

    #[test]
    fn induced_multiplication_agrees_with_the_ambient_composite() {
        let j = skeleton(2);

        let id = identity_monad(Universe::fin(2, Budget::default()).unwrap());
        let report = mu_flat_check(&id, &j, Budget::default()).unwrap();
        assert!(report.all_pass(), "{:?}", report.failures().next());

        let m = MonadData::new(
            Universe::new(&[0, 1, 2, 4], Budget::default()).unwrap(),
            Rc::new(powerset_monad_ops(Budget::default())),
        );
        let report = mu_flat_check(&m, &j, Budget::default()).unwrap();
        assert!(report.all_pass(), "{:?}", report.failures().next());
    }

    #[test]
    fn singleton_inclusion_is_a_monad_morphism() {
        let universe = Universe::fin(2, Budget::default()).unwrap();
        let src = identity_monad(universe.clone());
        let tgt = MonadData::new(universe, Rc::new(powerset_monad_ops(Budget::default())));
        let singletons = tgt.clone();
        let mor = MonadMorphism::new(src, tgt, Rc::new(move |x| singletons.unit(x))).unwrap();
        let report = check_monad_morphism(&mor, Budget::default()).unwrap();
        assert!(report.all_pass(), "{:?}", report.failures().next());

        let j = skeleton(2);
        let flat = restrict_morphism(&mor, &j).unwrap();
        let report = check_morphism(&flat, Mode::Exhaustive, Budget::default()).unwrap();
        assert!(report.all_pass(), "{:?}", report.failures().next());
    }

    #[test]
    fn damaged_morphism_component_is_caught() {
        let universe = Universe::fin(2, Budget::default()).unwrap();
        let m = MonadData::new(
            universe.clone(),
            Rc::new(powerset_monad_ops(Budget::default())),
        );
        let ops = m.clone();
        let mor = MonadMorphism::new(
            m.clone(),
            m,
            Rc::new(move |x| {
                let mut id = FinFn::identity(&ops.on_set(x)?);
                if id.table.len() >= 2 {
                    id.table.swap(0, 1);
                }
                Ok(id)
            }),
        )
        .unwrap();
        let report = check_monad_morphism(&mor, Budget::default()).unwrap();
        assert!(!report.all_pass());
    }

    #[test]
    fn identity_morphism_passes() {
        let m = MonadData::new(
            Universe::fin(2, Budget::default()).unwrap(),
            Rc::new(powerset_monad_ops(Budget::default())),
        );
        let mor = MonadMorphism::identity(&m);
        let report = check_monad_morphism(&mor, Budget::default()).unwrap();
        assert!(report.all_pass(), "{:?}", report.failures().next());
    }
}
