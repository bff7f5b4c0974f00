//! The tensor `F ⋅ G = Lan_J F ∘ G` on functors out of the index category,
//! and the structure maps of the induced skew-monoidal structure:
//!
//! * `ρ_F : F ⇒ F⋅J`, componentwise `ι id`;
//! * `λ̄_X : Lan_J J X → X`, the factorisation of `g ↦ g`;
//! * `ᾱ̄_{F,G} : Lan_J (F∘G) X → F (Lan_J G X)` for an ambient endofunctor
//!   `F`, the factorisation of `g ↦ F(ι g)`;
//! * `ᾱ_{F,G} : Lan_J (F⋅G) X → Lan_J F (Lan_J G X)`, the special case
//!   `F := Lan_J F`, the factorisation of `g ↦ [λg′. ι(ι g ∘ g′)]`.

use std::rc::Rc;

use crate::budget::Budget;
use crate::fincat::{SetFunctor, Universe};
use crate::finset::{compose, FinFn, FinSet};
use crate::{Error, Result};

use super::{lan_map, LanObject};

/// A materialised tensor `F ⋅ G` together with the per-object extensions
/// needed to interpret its elements.
#[derive(Debug, Clone)]
pub struct TensorFunctor {
    pub f: Rc<SetFunctor>,
    pub g: Rc<SetFunctor>,
    /// `F ⋅ G` as a functor on the index category; its value at `z` is the
    /// carrier of `at[z]`.
    pub functor: Rc<SetFunctor>,
    /// `Lan_J F (G z)` per object `z`.
    pub at: Vec<Rc<LanObject>>,
}

/// Builds `F ⋅ G`, extending `F` along the weight at every `G z` and
/// acting on arrows by the functorial action of the extension.
pub fn tensor_functor(
    j: &Rc<SetFunctor>,
    f: &Rc<SetFunctor>,
    g: &SetFunctor,
    budget: Budget,
) -> Result<TensorFunctor> {
    if *j.src != *g.src {
        return Err(Error::Shape(
            "tensor factors live on different categories".into(),
        ));
    }
    let cat = Rc::clone(&j.src);
    let n = cat.objects();
    let at: Vec<Rc<LanObject>> = (0..n)
        .map(|z| Ok(Rc::new(LanObject::new(j, f, g.on_obj(z), budget)?)))
        .collect::<Result<_>>()?;

    let mut actions: Vec<Vec<Vec<FinFn>>> = Vec::with_capacity(n);
    for z in 0..n {
        let mut per_w = Vec::with_capacity(n);
        for w in 0..n {
            let maps = cat
                .arrows_between(z, w)
                .map(|m| lan_map(&at[z], &at[w], g.on_arrow_ref(m)))
                .collect::<Result<Vec<_>>>()?;
            per_w.push(maps);
        }
        actions.push(per_w);
    }
    let obj = at.iter().map(|l| l.carrier.clone()).collect();
    let functor = Rc::new(SetFunctor::from_arrow_fn(cat, obj, |m| {
        actions[m.src][m.dst][m.idx].clone()
    })?);

    Ok(TensorFunctor {
        f: Rc::clone(f),
        g: Rc::new(g.clone()),
        functor,
        at,
    })
}

/// The component of `ρ_F` at `z`: the injection at the identity of `J z`
/// into the extension of `F` at `J z` (which `lan` must be).
pub fn rho_component(lan: &LanObject, z: usize) -> Result<FinFn> {
    let jz = lan.weight().on_obj(z);
    if lan.x() != jz {
        return Err(Error::Shape(format!(
            "extension point has size {}, expected the weight value {} at {z}",
            lan.x().size,
            jz.size
        )));
    }
    lan.iota(z, &FinFn::identity(jz))
}

/// `λ̄` at the point of `lan`, which must extend the weight itself.
pub fn lambda_bar(lan: &LanObject) -> Result<FinFn> {
    if lan.extended() != lan.weight() {
        return Err(Error::Shape(
            "unit map only exists on the extension of the weight".into(),
        ));
    }
    let cod = lan.x().clone();
    lan.factorize(|_, g| Ok(g.clone()), &cod)
}

/// `ᾱ̄_{F,G}` at the point of `lan_fg` for an ambient endofunctor `f_endo`
/// of `universe`: sends the class of `(z, g, e)` to `F(ι g)(e)`.
///
/// `lan_fg` must extend the pointwise composite `F∘G` and `lan_g` the
/// functor `G` at the same point; all the sets `G z` and the carrier of
/// `lan_g` must be universe objects.
pub fn alpha_bar_bar(
    lan_fg: &LanObject,
    lan_g: &LanObject,
    f_endo: &SetFunctor,
    universe: &Universe,
) -> Result<FinFn> {
    if lan_fg.weight() != lan_g.weight() || lan_fg.x() != lan_g.x() {
        return Err(Error::Shape(
            "composite and inner extensions disagree on the weight or point".into(),
        ));
    }
    let cod = universe.value_of(f_endo, &lan_g.carrier)?;
    lan_fg.factorize(
        |z, g| universe.apply_endo(f_endo, &lan_g.iota(z, g)?),
        &cod,
    )
}

/// `ᾱ_{F,G}` at the point `X` of `lan_tensor`: the factorisation of
/// `g ↦ [λg′. ι(ι g ∘ g′)]`, reading inner coend points off `tensor.at`.
///
/// `lan_tensor` must extend `tensor.functor` at some `X`, `lan_g` must
/// extend `G` at the same `X`, and `target` must extend `F` at the carrier
/// of `lan_g`.
pub fn alpha_bar(
    lan_tensor: &LanObject,
    tensor: &TensorFunctor,
    lan_g: &LanObject,
    target: &LanObject,
) -> Result<FinFn> {
    if lan_tensor.extended() != &tensor.functor {
        return Err(Error::Shape(
            "outer extension is not of the given tensor".into(),
        ));
    }
    if lan_g.extended() != &tensor.g || lan_g.x() != lan_tensor.x() {
        return Err(Error::Shape(
            "inner extension does not match the tensor's right factor".into(),
        ));
    }
    if target.extended() != &tensor.f || *target.x() != lan_g.carrier {
        return Err(Error::Shape(
            "target does not extend the left factor at the inner carrier".into(),
        ));
    }
    lan_tensor.factorize(
        |z, g| {
            let outer = lan_g.iota(z, g)?;
            let inner_lan = &tensor.at[z];
            let table = (0..inner_lan.classes())
                .map(|w| {
                    let e = inner_lan.rep(w);
                    target.class_of(e.z, &compose(&outer, &e.g)?, e.x)
                })
                .collect::<Result<Vec<_>>>()?;
            FinFn::new(inner_lan.carrier.clone(), target.carrier.clone(), table)
        },
        &target.carrier,
    )
}

/// The three structure maps instantiated at one point.
#[derive(Debug, Clone)]
pub struct StructureMaps {
    /// Unit components, per index object `z`: `F z → Lan F (J z)`.
    pub rho: Vec<FinFn>,
    /// Counit at the point: `Lan J X → X`.
    pub lambda_bar: FinFn,
    /// Associator at the point: `Lan (F⋅G) X → Lan F (Lan G X)`.
    pub alpha_bar: FinFn,
}

/// Computes every unit component `ρ_F`, the counit `λ̄_X`, and the
/// associator `ᾱ_{F,G}` at `X` in one go.
pub fn structure_maps(
    j: &Rc<SetFunctor>,
    f: &Rc<SetFunctor>,
    g: &Rc<SetFunctor>,
    x: &FinSet,
    budget: Budget,
) -> Result<StructureMaps> {
    let rho = (0..j.src.objects())
        .map(|z| rho_component(&LanObject::new(j, f, j.on_obj(z), budget)?, z))
        .collect::<Result<Vec<_>>>()?;
    let lan_j_x = LanObject::new(j, j, x, budget)?;
    let tensor = tensor_functor(j, f, g, budget)?;
    let lan_tensor = LanObject::new(j, &tensor.functor, x, budget)?;
    let lan_g_x = LanObject::new(j, g, x, budget)?;
    let target = LanObject::new(j, f, &lan_g_x.carrier, budget)?;
    Ok(StructureMaps {
        rho,
        lambda_bar: lambda_bar(&lan_j_x)?,
        alpha_bar: alpha_bar(&lan_tensor, &tensor, &lan_g_x, &target)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{
        check_set_functor, constant_functor, j_times, polynomial_functor, subuniverse,
    };
    use crate::finset::FinSet;

    fn setup() -> (Rc<SetFunctor>, Rc<SetFunctor>) {
        let (_, incl) = subuniverse(&[0, 1, 2], Budget::default()).unwrap();
        let incl = Rc::new(incl);
        let poly = Rc::new(polynomial_functor(&incl, 1, &[1]));
        (incl, poly)
    }

    #[test]
    fn tensor_is_a_lawful_functor() {
        let budget = Budget::default();
        let (incl, poly) = setup();
        let tensor = tensor_functor(&incl, &poly, &incl, budget).unwrap();
        assert!(check_set_functor(&tensor.functor, budget).unwrap().all_pass());
    }

    #[test]
    fn unit_after_point_is_identity() {
        let budget = Budget::default();
        let (incl, _) = setup();
        // λ̄ ∘ ι id = id at every index object: coherence triangle (a).
        for z in 0..3 {
            let lan = LanObject::new(&incl, &incl, incl.on_obj(z), budget).unwrap();
            let rho = rho_component(&lan, z).unwrap();
            let unit = lambda_bar(&lan).unwrap();
            assert!(compose(&unit, &rho).unwrap().is_identity());
        }
    }

    #[test]
    fn product_weight_unit_is_evaluation_not_injective() {
        let budget = Budget::default();
        let (_, incl4) = subuniverse(&[0, 1, 2, 4], budget).unwrap();
        let incl4 = Rc::new(incl4);
        let j = Rc::new(j_times(&incl4, 2));
        let x = FinSet::of(2);
        let lan = LanObject::new(&j, &j, &x, budget).unwrap();
        // Lan_J J X ≅ J (X^S): carrier (2²)·2 = 8 mapping onto X of size 2.
        assert_eq!(lan.classes(), 8);
        let unit = lambda_bar(&lan).unwrap();
        let mut seen = vec![Vec::new(); 2];
        for (e, &v) in unit.table.iter().enumerate() {
            seen[v].push(e);
        }
        assert!(seen.iter().all(|pre| pre.len() > 1), "unit map collapses");
    }

    #[test]
    fn alpha_on_constant_functors_is_bijective() {
        let budget = Budget::default();
        let (incl, _) = setup();
        let cat = Rc::clone(&incl.src);
        let f = Rc::new(constant_functor(Rc::clone(&cat), FinSet::of(2)));
        let g = constant_functor(Rc::clone(&cat), FinSet::of(2));
        let x = FinSet::of(2);
        let tensor = tensor_functor(&incl, &f, &g, budget).unwrap();
        let lan_tensor = LanObject::new(&incl, &tensor.functor, &x, budget).unwrap();
        let lan_g = LanObject::new(&incl, &Rc::new(g), &x, budget).unwrap();
        let target = LanObject::new(&incl, &f, &lan_g.carrier, budget).unwrap();
        let a = alpha_bar(&lan_tensor, &tensor, &lan_g, &target).unwrap();
        assert!(a.is_bijective());
    }

    #[test]
    fn alpha_bar_bar_agrees_with_alpha_bar_on_extensions() {
        // When the ambient endofunctor is itself an extension (restricted
        // to the universe), the two associativity maps must agree.
        let budget = Budget::default();
        let universe = Universe::new(&[0, 1, 2, 3, 4], budget).unwrap();
        let (_, small_incl) = subuniverse(&[0, 1], budget).unwrap();
        let j = Rc::new(small_incl);
        let g = Rc::new(polynomial_functor(&j, 1, &[1]));

        // F := the extension of J itself, as an endofunctor of the universe.
        let lans_at: Vec<LanObject> = universe
            .sizes()
            .iter()
            .map(|&s| LanObject::new(&j, &j, &FinSet::of(s), budget).unwrap())
            .collect();
        let f_endo = SetFunctor::from_arrow_fn(
            Rc::clone(&universe.cat),
            lans_at.iter().map(|l| l.carrier.clone()).collect(),
            |m| {
                lan_map(
                    &lans_at[m.src],
                    &lans_at[m.dst],
                    universe.incl.on_arrow_ref(m),
                )
                .unwrap()
            },
        )
        .unwrap();

        let x = FinSet::of(2);
        let lan_g = LanObject::new(&j, &g, &x, budget).unwrap();

        // Composite F∘G on the index category via the universe.
        let fg = Rc::new(
            SetFunctor::from_arrow_fn(
                Rc::clone(&j.src),
                (0..2)
                    .map(|z| universe.value_of(&f_endo, g.on_obj(z)).unwrap())
                    .collect(),
                |m| universe.apply_endo(&f_endo, g.on_arrow_ref(m)).unwrap(),
            )
            .unwrap(),
        );
        let lan_fg = LanObject::new(&j, &fg, &x, budget).unwrap();
        let doubled = alpha_bar_bar(&lan_fg, &lan_g, &f_endo, &universe).unwrap();

        // The same map through the tensor machinery.
        let tensor = tensor_functor(&j, &j, &g, budget).unwrap();
        assert_eq!(*tensor.functor, *fg);
        let target = LanObject::new(&j, &j, &lan_g.carrier, budget).unwrap();
        let via_tensor = alpha_bar(&lan_fg, &tensor, &lan_g, &target).unwrap();
        assert_eq!(doubled.table, via_tensor.table);
    }

    #[test]
    fn structure_maps_natural_in_the_point() {
        let budget = Budget::default();
        let (incl, poly) = setup();
        let g = Rc::new(polynomial_functor(&incl, 0, &[1]));
        let x = FinSet::of(2);
        let y = FinSet::of(3);
        let at_x = structure_maps(&incl, &poly, &g, &x, budget).unwrap();
        let at_y = structure_maps(&incl, &poly, &g, &y, budget).unwrap();

        let tensor = tensor_functor(&incl, &poly, &g, budget).unwrap();
        let lan_j_x = LanObject::new(&incl, &incl, &x, budget).unwrap();
        let lan_j_y = LanObject::new(&incl, &incl, &y, budget).unwrap();
        let lan_g_x = LanObject::new(&incl, &g, &x, budget).unwrap();
        let lan_g_y = LanObject::new(&incl, &g, &y, budget).unwrap();
        let lan_t_x = LanObject::new(&incl, &tensor.functor, &x, budget).unwrap();
        let lan_t_y = LanObject::new(&incl, &tensor.functor, &y, budget).unwrap();
        let lan_f_gx = LanObject::new(&incl, &poly, &lan_g_x.carrier, budget).unwrap();
        let lan_f_gy = LanObject::new(&incl, &poly, &lan_g_y.carrier, budget).unwrap();

        for p in crate::finset::enumerate_fns(&x, &y, budget).unwrap() {
            let lhs = compose(&p, &at_x.lambda_bar).unwrap();
            let rhs =
                compose(&at_y.lambda_bar, &lan_map(&lan_j_x, &lan_j_y, &p).unwrap()).unwrap();
            assert_eq!(lhs, rhs);

            let inner = lan_map(&lan_g_x, &lan_g_y, &p).unwrap();
            let lhs = compose(
                &lan_map(&lan_f_gx, &lan_f_gy, &inner).unwrap(),
                &at_x.alpha_bar,
            )
            .unwrap();
            let rhs =
                compose(&at_y.alpha_bar, &lan_map(&lan_t_x, &lan_t_y, &p).unwrap()).unwrap();
            assert_eq!(lhs, rhs);
        }
    }
}
