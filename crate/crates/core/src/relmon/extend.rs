//! Extension of a relative monad to an ordinary monad, and the unit and
//! counit tying extension to restriction.
//!
//! The extended functor is `T♯ := Lan_J T`, available at every point the
//! budget admits.  Its unit is `Lan η ∘ λ̄⁻¹` and its multiplication
//! `Lan μ ∘ ᾱ⁻¹`, with `λ̄` and `ᾱ` the structure maps of the Kan tensor at
//! the point in question.  Over a truncated index category those maps need
//! not be invertible, so both are computed forwards, checked to be
//! bijections, and inverted as tables; a point where one is not a
//! bijection is refused with the name of the missing inverse.  [`extend`]
//! performs that check at every universe object up front, so the returned
//! monad's structure is total on its universe; carriers and actions remain
//! available at arbitrary points beyond it.
//!
//! Extension and restriction are adjoint.  [`extension_unit`] gives
//! `ρ : T → (T♯)♭` (componentwise the coend injection at the identity),
//! [`restriction_counit`] gives `ε : (m♭)♯ → m` (componentwise
//! `T λ̄ ∘ ᾱ̄`), and [`coreflection_check`] verifies both are morphisms and
//! that the two triangle composites are identities.

use std::rc::Rc;

use crate::budget::Budget;
use crate::fincat::{NatTrans, SetFunctor, Universe};
use crate::finset::{compose, FinFn, FinSet};
use crate::kan::{
    alpha_bar, alpha_bar_bar, lambda_bar, lan_map, lan_nat, rho_component, LanObject,
    TensorFunctor,
};
use crate::report::Report;
use crate::{Error, Result};

use super::monad::{restrict, MonadData, MonadMorphism, MonadOps};
use super::monoid::mu_from_star;
use super::{check_monad_morphism, check_morphism, merge_tagged, Mode, RelMonadData,
    RelMonadMorphism};

struct LanMonadOps {
    j: Rc<SetFunctor>,
    t: Rc<SetFunctor>,
    unit: NatTrans,
    mu: NatTrans,
    tensor: TensorFunctor,
    budget: Budget,
}

impl LanMonadOps {
    fn lan_at(&self, x: &FinSet) -> Result<LanObject> {
        LanObject::new(&self.j, &self.t, x, self.budget)
    }
}

/// Checks bijectivity before inverting, refusing with the map's name.
fn verified_inverse(forward: &FinFn, name: &str, size: usize) -> Result<FinFn> {
    if !forward.is_bijective() {
        return Err(Error::Precondition(format!(
            "{name} at a point of size {size} is not bijective ({} → {}), \
             and the extension needs its inverse",
            forward.dom.size, forward.cod.size
        )));
    }
    forward.inverse()
}

impl MonadOps for LanMonadOps {
    fn on_set(&self, x: &FinSet) -> Result<FinSet> {
        Ok(self.lan_at(x)?.carrier.clone())
    }

    fn on_map(&self, f: &FinFn) -> Result<FinFn> {
        lan_map(&self.lan_at(&f.dom)?, &self.lan_at(&f.cod)?, f)
    }

    fn unit(&self, x: &FinSet) -> Result<FinFn> {
        let lan_j = LanObject::new(&self.j, &self.j, x, self.budget)?;
        let back = verified_inverse(&lambda_bar(&lan_j)?, "the counit", x.size)?;
        compose(&lan_nat(&lan_j, &self.lan_at(x)?, &self.unit)?, &back)
    }

    fn mult(&self, x: &FinSet) -> Result<FinFn> {
        let lan_tt = LanObject::new(&self.j, &self.tensor.functor, x, self.budget)?;
        let lan_t = self.lan_at(x)?;
        let target = self.lan_at(&lan_t.carrier)?;
        let forward = alpha_bar(&lan_tt, &self.tensor, &lan_t, &target)?;
        let back = verified_inverse(&forward, "the associator", x.size)?;
        compose(&lan_nat(&lan_tt, &lan_t, &self.mu)?, &back)
    }
}

/// Extends a relative monad to an ordinary monad on the universe with the
/// given sizes.
///
/// Fails when the index category's own structure stands in the way: the
/// counit or associator not being bijective at some universe object is
/// reported by name, and a carrier beyond the budget is refused rather
/// than approximated.  On success, every universe object has verified
/// unit and multiplication components; carriers and the functorial action
/// remain available at any point within budget, universe or not.
pub fn extend(t: &RelMonadData, sizes: &[usize], budget: Budget) -> Result<MonadData> {
    let monoid = mu_from_star(t, budget)?;
    let universe = Universe::new(sizes, budget)?;
    let ops = LanMonadOps {
        j: Rc::clone(&t.j),
        t: monoid.t,
        unit: monoid.unit,
        mu: monoid.mu,
        tensor: monoid.tensor,
        budget,
    };
    for &s in sizes {
        let x = FinSet::of(s);
        ops.unit(&x)?;
        ops.mult(&x)?;
    }
    Ok(MonadData::new(universe, Rc::new(ops)))
}

/// Extends a morphism of relative monads to a morphism of the extensions,
/// componentwise by the functorial action of the Kan extension.
pub fn extend_morphism(
    m: &RelMonadMorphism,
    sizes: &[usize],
    budget: Budget,
) -> Result<MonadMorphism> {
    let src = extend(&m.src, sizes, budget)?;
    let tgt = extend(&m.tgt, sizes, budget)?;
    let j = Rc::clone(&m.src.j);
    let src_func = m.src.underlying_functor()?;
    let tgt_func = m.tgt.underlying_functor()?;
    let sigma = NatTrans {
        components: m.components.clone(),
    };
    let at = Rc::new(move |x: &FinSet| {
        lan_nat(
            &LanObject::new(&j, &src_func, x, budget)?,
            &LanObject::new(&j, &tgt_func, x, budget)?,
            &sigma,
        )
    });
    MonadMorphism::new(src, tgt, at)
}

/// The unit of the extension–restriction adjunction at `t`: the morphism
/// `T → (T♯)♭` whose component at `x` is the coend injection at `id_{J x}`.
pub fn extension_unit(
    t: &RelMonadData,
    sizes: &[usize],
    budget: Budget,
) -> Result<RelMonadMorphism> {
    let sharp = extend(t, sizes, budget)?;
    let flat = restrict(&sharp, &t.j)?;
    let t_func = t.underlying_functor()?;
    let components = (0..t.objects())
        .map(|x| {
            let lan = LanObject::new(&t.j, &t_func, t.j.on_obj(x), budget)?;
            rho_component(&lan, x)
        })
        .collect::<Result<Vec<_>>>()?;
    RelMonadMorphism::new(t.clone(), flat, components)
}

/// The counit of the adjunction at an ordinary monad `m`: the morphism
/// `(m♭)♯ → m` whose component at `X` collapses a coend class `(z, g, e)`
/// to `T λ̄ (ᾱ̄ (z, g, e)) = T(λ̄)(T(ι g)(e))`.
pub fn restriction_counit(
    m: &MonadData,
    j: &Rc<SetFunctor>,
    budget: Budget,
) -> Result<MonadMorphism> {
    let flat = restrict(m, j)?;
    let sharp = extend(&flat, m.universe.sizes(), budget)?;
    let flat_func = flat.underlying_functor()?;
    let ambient = m.ambient_functor()?;
    let inner = m.clone();
    let weight = Rc::clone(j);
    let at = Rc::new(move |x: &FinSet| {
        let lan_fg = LanObject::new(&weight, &flat_func, x, budget)?;
        let lan_g = LanObject::new(&weight, &weight, x, budget)?;
        let across = alpha_bar_bar(&lan_fg, &lan_g, &ambient, &inner.universe)?;
        let collapse = inner.on_map(&lambda_bar(&lan_g)?)?;
        compose(&collapse, &across)
    });
    MonadMorphism::new(sharp, m.clone(), at)
}

/// Verifies the adjunction between extension and restriction around a
/// relative monad `t` and an ordinary monad `m` over the same functor:
/// the unit is a morphism with bijective components, the counit is a
/// morphism of monads, and both triangle composites are identities.
pub fn coreflection_check(t: &RelMonadData, m: &MonadData, budget: Budget) -> Result<Report> {
    let mut report = Report::new();
    let sizes = m.universe.sizes();

    let rho = extension_unit(t, sizes, budget)?;
    merge_tagged(
        &mut report,
        "coreflection/unit-morphism",
        check_morphism(&rho, Mode::Exhaustive, budget)?,
    );

    let mut witness = None;
    let mut cases = 0u64;
    for (x, component) in rho.components.iter().enumerate() {
        cases += 1;
        if !component.is_bijective() {
            witness = Some(format!(
                "ρ at X{x} is {} → {} and not bijective",
                component.dom.size, component.cod.size
            ));
            break;
        }
    }
    report.equation("coreflection/unit-bijective", cases, witness);

    let eps = restriction_counit(m, &t.j, budget)?;
    merge_tagged(
        &mut report,
        "coreflection/counit-morphism",
        check_monad_morphism(&eps, budget)?,
    );

    // ε_{t♯} ∘ (ρ_t)♯ = id at every universe object.
    let sharp = extend(t, sizes, budget)?;
    let eps_sharp = restriction_counit(&sharp, &t.j, budget)?;
    let t_func = t.underlying_functor()?;
    let around = restrict(&sharp, &t.j)?.underlying_functor()?;
    let rho_nat = NatTrans {
        components: rho.components.clone(),
    };
    let mut witness = None;
    let mut cases = 0u64;
    for &s in sizes {
        let x = FinSet::of(s);
        let src_lan = LanObject::new(&t.j, &t_func, &x, budget)?;
        let mid_lan = LanObject::new(&t.j, &around, &x, budget)?;
        let pushed = lan_nat(&src_lan, &mid_lan, &rho_nat)?;
        let composite = compose(&eps_sharp.component(&x)?, &pushed)?;
        cases += 1;
        if !composite.is_identity() {
            witness = Some(format!("at size {s}: ε_♯∘ρ♯ = {composite}"));
            break;
        }
    }
    report.equation("coreflection/triangle-extension", cases, witness);

    // (ε_m)♭ ∘ ρ_{m♭} = id at every index object.
    let flat_m = restrict(m, &t.j)?;
    let flat_func = flat_m.underlying_functor()?;
    let mut witness = None;
    let mut cases = 0u64;
    for x in 0..t.objects() {
        let lan = LanObject::new(&t.j, &flat_func, t.j.on_obj(x), budget)?;
        let injected = rho_component(&lan, x)?;
        let composite = compose(&eps.component(t.j.on_obj(x))?, &injected)?;
        cases += 1;
        if !composite.is_identity() {
            witness = Some(format!("at X{x}: ε♭∘ρ♭ = {composite}"));
            break;
        }
    }
    report.equation("coreflection/triangle-restriction", cases, witness);

    Ok(report)
}
