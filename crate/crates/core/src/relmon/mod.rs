//! Relative monads on a fixed set-valued functor.
//!
//! Fix a functor `J : 𝕁 → FinSet` on a finite category.  A relative monad
//! on `J` assigns to every index object `X` a carrier `T X` and a unit
//! `η_X : J X → T X`, together with a lifting sending each Kleisli map
//! `k : J X → T Y` to `k* : T X → T Y`.  Three equations are expected:
//!
//! * `k* ∘ η = k`          (lifting extends the map it came from)
//! * `η* = id`             (lifting a unit does nothing)
//! * `(ℓ* ∘ k)* = ℓ* ∘ k*` (lifting respects Kleisli composition)
//!
//! [`check_relmonad_laws`] verifies all three over the whole space of
//! Kleisli maps when the budget allows, or over seeded random draws when it
//! does not; either way the mode lands in the report so a reader can tell
//! which evidence they are looking at.  The functorial action
//! `T f := (η ∘ J f)*` and the unit's naturality are consequences of the
//! laws, so they are derived here rather than carried as extra data.
//!
//! The lifting itself is an opaque closure: deep instances capture lookup
//! tables, while instances defined by code (powersets, vectors, states)
//! compute `k*` on demand.  Everything downstream — the skew-monoid view in
//! [`monoid`], restriction and extension against ordinary monads in
//! [`monad`] and [`extend`], the element-level mirror in [`shallow`] — goes
//! through this one interface.

use std::fmt;
use std::rc::Rc;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::budget::Budget;
use crate::fincat::{Mor, NatTrans, SetFunctor};
use crate::finset::{compose, count_fns, fn_unrank, FinFn, FinSet};
use crate::report::{Check, Report, Status};
use crate::{Error, Result};

mod extend;
mod monad;
mod monoid;
mod shallow;

pub use extend::{coreflection_check, extend, extend_morphism, extension_unit, restriction_counit};
pub use monad::{
    check_monad_laws, check_monad_morphism, identity_monad, mu_flat_check, restrict,
    restrict_morphism, MonadData, MonadMorphism, MonadOps,
};
pub use monoid::{
    mu_from_star, skew_monoid_check, skew_monoid_morphism_check, star_from_mu, SkewMonoid,
};
pub use shallow::{
    deep_of_shallow, shallow_laws, shallow_of_deep, DeepShallow, ShallowInstance, ShallowSuite,
};

/// A relative monad presented by explicit carriers, units, and a lifting.
#[derive(Clone)]
pub struct RelMonadData {
    /// The functor the monad is relative to.
    pub j: Rc<SetFunctor>,
    /// Carrier `T X` for each index object.
    pub t: Vec<FinSet>,
    /// Unit `η_X : J X → T X` for each index object.
    pub unit: Vec<FinFn>,
    star: Rc<dyn Fn(usize, usize, &FinFn) -> Result<FinFn>>,
}

impl fmt::Debug for RelMonadData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RelMonadData")
            .field("objects", &self.objects())
            .field("carriers", &self.t.iter().map(|s| s.size).collect::<Vec<_>>())
            .finish_non_exhaustive()
    }
}

impl RelMonadData {
    /// Bundles the data after checking every unit has the right shape.
    ///
    /// The lifting receives `(x, y, k)` with `k : J x → T y` already
    /// validated and must return a map `T x → T y`; [`Self::star`] checks
    /// the output shape on every call, so a malformed lifting is caught the
    /// first time it is used.
    pub fn new(
        j: Rc<SetFunctor>,
        t: Vec<FinSet>,
        unit: Vec<FinFn>,
        star: Rc<dyn Fn(usize, usize, &FinFn) -> Result<FinFn>>,
    ) -> Result<RelMonadData> {
        let n = j.src.objects();
        if t.len() != n || unit.len() != n {
            return Err(Error::Shape(format!(
                "expected {n} carriers and {n} units, got {} and {}",
                t.len(),
                unit.len()
            )));
        }
        for x in 0..n {
            if unit[x].dom != *j.on_obj(x) || unit[x].cod != t[x] {
                return Err(Error::Shape(format!(
                    "unit at object {x} runs {} → {}, expected {} → {}",
                    unit[x].dom.size,
                    unit[x].cod.size,
                    j.on_obj(x).size,
                    t[x].size
                )));
            }
        }
        Ok(RelMonadData { j, t, unit, star })
    }

    /// The instance with `T = J`, identity units, and identity lifting.
    pub fn trivial(j: Rc<SetFunctor>) -> RelMonadData {
        let n = j.src.objects();
        let t: Vec<FinSet> = (0..n).map(|x| j.on_obj(x).clone()).collect();
        let unit = (0..n).map(|x| FinFn::identity(j.on_obj(x))).collect();
        RelMonadData {
            j,
            t,
            unit,
            star: Rc::new(|_, _, k| Ok(k.clone())),
        }
    }

    /// Number of objects of the index category.
    pub fn objects(&self) -> usize {
        self.j.src.objects()
    }

    /// Lifts a Kleisli map `k : J x → T y` to `k* : T x → T y`.
    pub fn star(&self, x: usize, y: usize, k: &FinFn) -> Result<FinFn> {
        if x >= self.objects() || y >= self.objects() {
            return Err(Error::Scope {
                index: x.max(y),
                scope: self.objects(),
            });
        }
        if k.dom != *self.j.on_obj(x) || k.cod != self.t[y] {
            return Err(Error::Shape(format!(
                "Kleisli map runs {} → {}, expected J({x}) → T({y}) = {} → {}",
                k.dom.size,
                k.cod.size,
                self.j.on_obj(x).size,
                self.t[y].size
            )));
        }
        let lifted = (self.star)(x, y, k)?;
        if lifted.dom != self.t[x] || lifted.cod != self.t[y] {
            return Err(Error::Shape(format!(
                "lifting of {k} runs {} → {}, expected T({x}) → T({y})",
                lifted.dom.size, lifted.cod.size
            )));
        }
        Ok(lifted)
    }

    /// The action on an index arrow: `T f := (η ∘ J f)*`.
    pub fn functor_action(&self, f: Mor) -> Result<FinFn> {
        let jf = self.j.on_arrow_ref(f);
        self.star(f.src, f.dst, &compose(&self.unit[f.dst], jf)?)
    }

    /// Materialises [`Self::functor_action`] as a functor `𝕁 → FinSet`.
    pub fn underlying_functor(&self) -> Result<Rc<SetFunctor>> {
        let mut actions = std::collections::HashMap::new();
        for m in self.j.src.arrows() {
            actions.insert(m, self.functor_action(m)?);
        }
        let f = SetFunctor::from_arrow_fn(Rc::clone(&self.j.src), self.t.clone(), |m| {
            actions[&m].clone()
        })?;
        Ok(Rc::new(f))
    }

    /// The unit components bundled as a transformation `J ⇒ T`.
    ///
    /// Naturality of the bundle is one of the facts the law suite verifies;
    /// this constructor does not assume it.
    pub fn unit_nat(&self) -> NatTrans {
        NatTrans {
            components: self.unit.clone(),
        }
    }
}

/// How a law suite walks a space of Kleisli maps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// Visit every map, refusing upfront if the count blows the budget.
    Exhaustive,
    /// Draw `draws` pseudo-random instantiations per law from a fixed seed.
    Sampled { seed: u64, draws: u32 },
}

impl Mode {
    fn as_check(self, id: &str) -> Check {
        let detail = match self {
            Mode::Exhaustive => "exhaustive".to_string(),
            Mode::Sampled { seed, draws } => {
                format!("sampled: seed {seed}, {draws} draws per law")
            }
        };
        Check {
            id: id.to_string(),
            status: Status::Pass,
            detail: Some(detail),
            cases: 0,
        }
    }
}

/// Folds a sub-report into a single check under `id`, keeping the first
/// failing sub-check's identity and witness.
pub(crate) fn merge_tagged(report: &mut Report, id: &str, sub: Report) {
    let cases = sub.total_cases();
    let witness = sub.failures().next().map(|c| match &c.detail {
        Some(detail) => format!("{}: {detail}", c.id),
        None => c.id.clone(),
    });
    report.equation(id, cases, witness);
}

/// All maps `a → b` in rank order, without materialising the whole list.
fn hom_iter(a: &FinSet, b: &FinSet, budget: Budget) -> Result<impl Iterator<Item = FinFn>> {
    let count = count_fns(a, b, budget)? as usize;
    let (a, b) = (a.clone(), b.clone());
    Ok((0..count).map(move |r| FinFn {
        dom: a.clone(),
        cod: b.clone(),
        table: fn_unrank(r, a.size, b.size),
    }))
}

/// Checks the three relative monad laws, plus naturality of the unit and
/// functoriality of the derived action (both consequences, both checked
/// independently so a broken lifting is pinned to the first law it breaks).
pub fn check_relmonad_laws(t: &RelMonadData, mode: Mode, budget: Budget) -> Result<Report> {
    let mut report = Report::new();
    report.push(mode.as_check("relmon/mode"));
    match mode {
        Mode::Exhaustive => exhaustive_laws(t, budget, &mut report)?,
        Mode::Sampled { seed, draws } => sampled_laws(t, seed, draws, &mut report)?,
    }
    derived_structure(t, &mut report)?;
    Ok(report)
}

fn exhaustive_laws(t: &RelMonadData, budget: Budget, report: &mut Report) -> Result<()> {
    let n = t.objects();

    let mut single: u128 = 0;
    let mut pairs: u128 = 0;
    for x in 0..n {
        for y in 0..n {
            let kc = count_fns(t.j.on_obj(x), &t.t[y], budget)? as u128;
            single += kc;
            for z in 0..n {
                pairs += kc * count_fns(t.j.on_obj(y), &t.t[z], budget)? as u128;
            }
        }
    }
    budget.admit("Kleisli maps", single)?;
    budget.admit("Kleisli map pairs", pairs)?;

    let mut witness = None;
    let mut cases = 0u64;
    'unit: for x in 0..n {
        for y in 0..n {
            for k in hom_iter(t.j.on_obj(x), &t.t[y], budget)? {
                let back = compose(&t.star(x, y, &k)?, &t.unit[x])?;
                cases += 1;
                if back != k {
                    witness = Some(format!("at (X{x}, Y{y}): k={k} but k*∘η={back}"));
                    break 'unit;
                }
            }
        }
    }
    report.equation("relmon/right-unit", cases, witness);

    let mut witness = None;
    let mut cases = 0u64;
    for x in 0..n {
        let lifted = t.star(x, x, &t.unit[x])?;
        cases += 1;
        if !lifted.is_identity() {
            witness = Some(format!("at X{x}: η* = {lifted}"));
            break;
        }
    }
    report.equation("relmon/left-unit", cases, witness);

    let mut witness = None;
    let mut cases = 0u64;
    'assoc: for y in 0..n {
        for z in 0..n {
            for l in hom_iter(t.j.on_obj(y), &t.t[z], budget)? {
                let l_star = t.star(y, z, &l)?;
                for x in 0..n {
                    for k in hom_iter(t.j.on_obj(x), &t.t[y], budget)? {
                        let joint = t.star(x, z, &compose(&l_star, &k)?)?;
                        let split = compose(&l_star, &t.star(x, y, &k)?)?;
                        cases += 1;
                        if joint != split {
                            witness = Some(format!(
                                "at (X{x}, Y{y}, Z{z}): k={k}, l={l}: (l*∘k)*={joint} but l*∘k*={split}"
                            ));
                            break 'assoc;
                        }
                    }
                }
            }
        }
    }
    report.equation("relmon/assoc", cases, witness);
    Ok(())
}

fn sampled_laws(t: &RelMonadData, seed: u64, draws: u32, report: &mut Report) -> Result<()> {
    let n = t.objects();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    // Pairs (x, y) whose Kleisli hom J x → T y is nonempty.
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|x| (0..n).map(move |y| (x, y)))
        .filter(|&(x, y)| t.t[y].size > 0 || t.j.on_obj(x).size == 0)
        .collect();
    let triples: Vec<(usize, usize, usize)> = pairs
        .iter()
        .flat_map(|&(x, y)| (0..n).map(move |z| (x, y, z)))
        .filter(|&(_, y, z)| t.t[z].size > 0 || t.j.on_obj(y).size == 0)
        .collect();

    let draw = |rng: &mut ChaCha8Rng, x: usize, y: usize| -> FinFn {
        let dom = t.j.on_obj(x).clone();
        let cod = t.t[y].clone();
        let table = (0..dom.size).map(|_| rng.gen_range(0..cod.size)).collect();
        FinFn { dom, cod, table }
    };

    if pairs.is_empty() {
        report.push(Check::skipped("relmon/right-unit", "no Kleisli maps to sample"));
    } else {
        let mut witness = None;
        let mut cases = 0u64;
        for _ in 0..draws {
            let (x, y) = pairs[rng.gen_range(0..pairs.len())];
            let k = draw(&mut rng, x, y);
            let back = compose(&t.star(x, y, &k)?, &t.unit[x])?;
            cases += 1;
            if back != k {
                witness = Some(format!("at (X{x}, Y{y}): k={k} but k*∘η={back}"));
                break;
            }
        }
        report.equation("relmon/right-unit", cases, witness);
    }

    if n == 0 {
        report.push(Check::skipped("relmon/left-unit", "no objects to sample"));
    } else {
        let mut witness = None;
        let mut cases = 0u64;
        for _ in 0..draws {
            let x = rng.gen_range(0..n);
            let lifted = t.star(x, x, &t.unit[x])?;
            cases += 1;
            if !lifted.is_identity() {
                witness = Some(format!("at X{x}: η* = {lifted}"));
                break;
            }
        }
        report.equation("relmon/left-unit", cases, witness);
    }

    if triples.is_empty() {
        report.push(Check::skipped("relmon/assoc", "no composable Kleisli pairs to sample"));
    } else {
        let mut witness = None;
        let mut cases = 0u64;
        for _ in 0..draws {
            let (x, y, z) = triples[rng.gen_range(0..triples.len())];
            let k = draw(&mut rng, x, y);
            let l = draw(&mut rng, y, z);
            let l_star = t.star(y, z, &l)?;
            let joint = t.star(x, z, &compose(&l_star, &k)?)?;
            let split = compose(&l_star, &t.star(x, y, &k)?)?;
            cases += 1;
            if joint != split {
                witness = Some(format!(
                    "at (X{x}, Y{y}, Z{z}): k={k}, l={l}: (l*∘k)*={joint} but l*∘k*={split}"
                ));
                break;
            }
        }
        report.equation("relmon/assoc", cases, witness);
    }
    Ok(())
}

/// Functor laws for the derived action and naturality of the unit.
fn derived_structure(t: &RelMonadData, report: &mut Report) -> Result<()> {
    let cat = &t.j.src;

    let mut witness = None;
    let mut cases = 0u64;
    for x in 0..cat.objects() {
        let action = t.functor_action(cat.id(x))?;
        cases += 1;
        if !action.is_identity() {
            witness = Some(format!("T(id_{x}) = {action}"));
            break;
        }
    }
    report.equation("relmon/action-identity", cases, witness);

    let mut witness = None;
    let mut cases = 0u64;
    'comp: for f in cat.arrows() {
        for g in cat.arrows() {
            if g.src != f.dst {
                continue;
            }
            let gf = cat.compose(g, f)?;
            let joint = t.functor_action(gf)?;
            let split = compose(&t.functor_action(g)?, &t.functor_action(f)?)?;
            cases += 1;
            if joint != split {
                witness = Some(format!("T({g}∘{f}) = {joint} but T{g}∘T{f} = {split}"));
                break 'comp;
            }
        }
    }
    report.equation("relmon/action-composition", cases, witness);

    let mut witness = None;
    let mut cases = 0u64;
    for f in cat.arrows() {
        let via_t = compose(&t.functor_action(f)?, &t.unit[f.src])?;
        let via_j = compose(&t.unit[f.dst], t.j.on_arrow_ref(f))?;
        cases += 1;
        if via_t != via_j {
            witness = Some(format!("at {f}: Tf∘η = {via_t} but η∘Jf = {via_j}"));
            break;
        }
    }
    report.equation("relmon/unit-natural", cases, witness);
    Ok(())
}

/// A morphism of relative monads over the same base functor.
#[derive(Clone, Debug)]
pub struct RelMonadMorphism {
    pub src: RelMonadData,
    pub tgt: RelMonadData,
    /// Component `σ_X : T X → T′ X` per index object.
    pub components: Vec<FinFn>,
}

impl RelMonadMorphism {
    pub fn new(
        src: RelMonadData,
        tgt: RelMonadData,
        components: Vec<FinFn>,
    ) -> Result<RelMonadMorphism> {
        if *src.j != *tgt.j {
            return Err(Error::Shape(
                "morphism endpoints are relative to different functors".into(),
            ));
        }
        let n = src.objects();
        if components.len() != n {
            return Err(Error::Shape(format!(
                "expected {n} components, got {}",
                components.len()
            )));
        }
        for x in 0..n {
            if components[x].dom != src.t[x] || components[x].cod != tgt.t[x] {
                return Err(Error::Shape(format!(
                    "component at object {x} runs {} → {}, expected {} → {}",
                    components[x].dom.size,
                    components[x].cod.size,
                    src.t[x].size,
                    tgt.t[x].size
                )));
            }
        }
        Ok(RelMonadMorphism {
            src,
            tgt,
            components,
        })
    }

    /// The identity morphism on `t`.
    pub fn identity(t: &RelMonadData) -> RelMonadMorphism {
        let components = t.t.iter().map(FinFn::identity).collect();
        RelMonadMorphism {
            src: t.clone(),
            tgt: t.clone(),
            components,
        }
    }

    pub fn component(&self, x: usize) -> &FinFn {
        &self.components[x]
    }
}

/// Checks that a family of components is a morphism of relative monads:
/// compatibility with the units, with the liftings, and — independently,
/// since it is not taken on faith from the other two — naturality over the
/// derived functorial actions.
pub fn check_morphism(m: &RelMonadMorphism, mode: Mode, budget: Budget) -> Result<Report> {
    let mut report = Report::new();
    report.push(mode.as_check("morphism/mode"));
    let n = m.src.objects();

    let mut witness = None;
    let mut cases = 0u64;
    for x in 0..n {
        let pushed = compose(&m.components[x], &m.src.unit[x])?;
        cases += 1;
        if pushed != m.tgt.unit[x] {
            witness = Some(format!(
                "at X{x}: σ∘η = {pushed} but η′ = {}",
                m.tgt.unit[x]
            ));
            break;
        }
    }
    report.equation("morphism/unit", cases, witness);

    match mode {
        Mode::Exhaustive => {
            let mut total: u128 = 0;
            for x in 0..n {
                for y in 0..n {
                    total += count_fns(m.src.j.on_obj(x), &m.src.t[y], budget)? as u128;
                }
            }
            budget.admit("Kleisli maps", total)?;

            let mut witness = None;
            let mut cases = 0u64;
            'kleisli: for x in 0..n {
                for y in 0..n {
                    for k in hom_iter(m.src.j.on_obj(x), &m.src.t[y], budget)? {
                        cases += 1;
                        if let Some(w) = kleisli_defect(m, x, y, &k)? {
                            witness = Some(w);
                            break 'kleisli;
                        }
                    }
                }
            }
            report.equation("morphism/kleisli", cases, witness);
        }
        Mode::Sampled { seed, draws } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(1));
            let pairs: Vec<(usize, usize)> = (0..n)
                .flat_map(|x| (0..n).map(move |y| (x, y)))
                .filter(|&(x, y)| m.src.t[y].size > 0 || m.src.j.on_obj(x).size == 0)
                .collect();
            if pairs.is_empty() {
                report.push(Check::skipped("morphism/kleisli", "no Kleisli maps to sample"));
            } else {
                let mut witness = None;
                let mut cases = 0u64;
                for _ in 0..draws {
                    let (x, y) = pairs[rng.gen_range(0..pairs.len())];
                    let dom = m.src.j.on_obj(x).clone();
                    let cod = m.src.t[y].clone();
                    let table = (0..dom.size).map(|_| rng.gen_range(0..cod.size)).collect();
                    let k = FinFn { dom, cod, table };
                    cases += 1;
                    if let Some(w) = kleisli_defect(m, x, y, &k)? {
                        witness = Some(w);
                        break;
                    }
                }
                report.equation("morphism/kleisli", cases, witness);
            }
        }
    }

    let mut witness = None;
    let mut cases = 0u64;
    for f in m.src.j.src.arrows() {
        let lhs = compose(&m.components[f.dst], &m.src.functor_action(f)?)?;
        let rhs = compose(&m.tgt.functor_action(f)?, &m.components[f.src])?;
        cases += 1;
        if lhs != rhs {
            witness = Some(format!("at {f}: σ∘Tf = {lhs} but T′f∘σ = {rhs}"));
            break;
        }
    }
    report.equation("morphism/naturality", cases, witness);

    Ok(report)
}

fn kleisli_defect(
    m: &RelMonadMorphism,
    x: usize,
    y: usize,
    k: &FinFn,
) -> Result<Option<String>> {
    let lhs = compose(&m.components[y], &m.src.star(x, y, k)?)?;
    let pushed = compose(&m.components[y], k)?;
    let rhs = compose(&m.tgt.star(x, y, &pushed)?, &m.components[x])?;
    Ok(if lhs == rhs {
        None
    } else {
        Some(format!(
            "at (X{x}, Y{y}): k={k}: σ∘k* = {lhs} but (σ∘k)*∘σ = {rhs}"
        ))
    })
}

#[cfg(test)]
pub(crate) mod testing {
    use super::monad::MonadOps;
    use super::*;
    use crate::budget::admitted_pow;

    /// The powerset monad with subsets encoded as bitmask ranks.
    pub(crate) struct PowersetMonadOps {
        budget: Budget,
    }

    pub(crate) fn powerset_monad_ops(budget: Budget) -> PowersetMonadOps {
        PowersetMonadOps { budget }
    }

    impl MonadOps for PowersetMonadOps {
        fn on_set(&self, x: &FinSet) -> Result<FinSet> {
            let size = admitted_pow(self.budget, "subsets", 2, x.size as u32)?;
            Ok(FinSet::of(size as usize))
        }

        fn on_map(&self, f: &FinFn) -> Result<FinFn> {
            let dom = self.on_set(&f.dom)?;
            let cod = self.on_set(&f.cod)?;
            self.budget.admit(
                "subset images",
                dom.size as u128 * f.dom.size.max(1) as u128,
            )?;
            let table = (0..dom.size)
                .map(|s| {
                    (0..f.dom.size)
                        .filter(|i| s & (1 << i) != 0)
                        .fold(0, |acc, i| acc | 1 << f.table[i])
                })
                .collect();
            FinFn::new(dom, cod, table)
        }

        fn unit(&self, x: &FinSet) -> Result<FinFn> {
            let cod = self.on_set(x)?;
            let table = (0..x.size).map(|i| 1usize << i).collect();
            FinFn::new(x.clone(), cod, table)
        }

        fn mult(&self, x: &FinSet) -> Result<FinFn> {
            let tx = self.on_set(x)?;
            let ttx = self.on_set(&tx)?;
            self.budget.admit(
                "subset unions",
                ttx.size as u128 * tx.size.max(1) as u128,
            )?;
            let table = (0..ttx.size)
                .map(|s| {
                    (0..tx.size)
                        .filter(|i| s & (1 << i) != 0)
                        .fold(0, |acc, i| acc | i)
                })
                .collect();
            FinFn::new(ttx, tx, table)
        }
    }

    /// Subsets of `J X` as bitmasks: `η` picks singletons and the lifting
    /// unions the chosen subsets over the members.
    pub(crate) fn powerset_restriction(j: &Rc<SetFunctor>) -> RelMonadData {
        let n = j.src.objects();
        let t: Vec<FinSet> = (0..n)
            .map(|x| FinSet::of(1usize << j.on_obj(x).size))
            .collect();
        let unit = (0..n)
            .map(|x| {
                let dom = j.on_obj(x).clone();
                let table = (0..dom.size).map(|i| 1usize << i).collect();
                FinFn {
                    dom,
                    cod: t[x].clone(),
                    table,
                }
            })
            .collect();
        let weight = Rc::clone(j);
        let star = Rc::new(move |x: usize, _y: usize, k: &FinFn| {
            let jx = weight.on_obj(x).size;
            let table: Vec<usize> = (0..1usize << jx)
                .map(|s| {
                    (0..jx)
                        .filter(|i| s & (1 << i) != 0)
                        .fold(0, |acc, i| acc | k.table[i])
                })
                .collect();
            FinFn::new(FinSet::of(1 << jx), k.cod.clone(), table)
        });
        RelMonadData::new(Rc::clone(j), t, unit, star).expect("shapes agree by construction")
    }
}
