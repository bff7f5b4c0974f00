//! Inverse structure maps, available when the weight is well-behaved at
//! the sizes involved.
//!
//! * the unit is inverted by factoring `g ↦ F(h)` where `h` is the unique
//!   index arrow with value `g`;
//! * the counit is inverted by injecting each point through a one-element
//!   weight value;
//! * the associator is inverted by gluing each map into the inner
//!   extension back into a single coend point over a sum-shaped object.
//!
//! Every returned map is verified to be a two-sided inverse before this
//! module hands it out; a weight that defeats one of the constructions is
//! refused with the condition it fails.

use std::rc::Rc;

use crate::budget::Budget;
use crate::fincat::{Mor, SetFunctor};
use crate::finset::{compose, FinFn, FinSet};
use crate::{Error, Result};

use super::wellbehaved::{glue_decode, GlueOutcome};
use super::{alpha_bar, lambda_bar, rho_component, tensor_functor, LanObject};

/// Verified inverses of the three structure maps at one point.
#[derive(Debug, Clone)]
pub struct IsoInverses {
    /// Per index object `z`: `Lan F (J z) → F z`.
    pub rho_inv: Vec<FinFn>,
    /// `X → Lan J X`.
    pub lambda_bar_inv: FinFn,
    /// `Lan F (Lan G X) → Lan (F⋅G) X`.
    pub alpha_bar_inv: FinFn,
}

fn arrow_with_value(j: &SetFunctor, a: usize, b: usize, g: &FinFn) -> Result<Mor> {
    j.src
        .arrows_between(a, b)
        .find(|&m| j.on_arrow_ref(m).table == g.table)
        .ok_or_else(|| {
            Error::Precondition(format!(
                "weight is not fully faithful: no index arrow {a}->{b} has value {g}"
            ))
        })
}

fn verify_inverse(forward: &FinFn, backward: &FinFn, what: &str) -> Result<()> {
    if !compose(backward, forward)?.is_identity() || !compose(forward, backward)?.is_identity() {
        return Err(Error::Precondition(format!(
            "computed {what} inverse is not two-sided; \
             the weight is not well-behaved at these sizes"
        )));
    }
    Ok(())
}

/// Computes and verifies the inverse structure maps for the weight `j`,
/// the factors `f`, `g`, and the point `x`.
pub fn iso_inverses(
    j: &Rc<SetFunctor>,
    f: &Rc<SetFunctor>,
    g: &Rc<SetFunctor>,
    x: &FinSet,
    budget: Budget,
) -> Result<IsoInverses> {
    let n = j.src.objects();

    let mut rho_inv = Vec::with_capacity(n);
    for z in 0..n {
        let lan = LanObject::new(j, f, j.on_obj(z), budget)?;
        let inv = lan.factorize(
            |w, gm| Ok(f.on_arrow(arrow_with_value(j, w, z, gm)?)),
            f.on_obj(z),
        )?;
        verify_inverse(&rho_component(&lan, z)?, &inv, "unit")?;
        rho_inv.push(inv);
    }

    let lan_j_x = LanObject::new(j, j, x, budget)?;
    let unit_obj = (0..n).find(|&z| j.on_obj(z).size == 1).ok_or_else(|| {
        Error::Precondition(
            "counit inverse needs an index object with a one-element value".into(),
        )
    })?;
    let table = (0..x.size)
        .map(|e| {
            let gm = FinFn::constant(j.on_obj(unit_obj), x, e)?;
            lan_j_x.class_of(unit_obj, &gm, 0)
        })
        .collect::<Result<Vec<_>>>()?;
    let lambda_bar_inv = FinFn::new(x.clone(), lan_j_x.carrier.clone(), table)?;
    verify_inverse(&lambda_bar(&lan_j_x)?, &lambda_bar_inv, "counit")?;

    let tensor = tensor_functor(j, f, g, budget)?;
    let lan_tensor = LanObject::new(j, &tensor.functor, x, budget)?;
    let lan_g_x = LanObject::new(j, g, x, budget)?;
    let target = LanObject::new(j, f, &lan_g_x.carrier, budget)?;
    let alpha = alpha_bar(&lan_tensor, &tensor, &lan_g_x, &target)?;
    let alpha_bar_inv = target.factorize(
        |z, gm| {
            // gm : J z → Lan G X is pointwise classes; glue them into one
            // coend point (W, glue, k) and land in the tensor's extension.
            let d = match glue_decode(j, g, &lan_g_x, &gm.table) {
                GlueOutcome::Found(d) => d,
                GlueOutcome::Missing { size } => return Err(Error::OutOfUniverse { size }),
            };
            let glue = FinFn::new(j.on_obj(d.w_obj).clone(), x.clone(), d.glue_table)?;
            let outer = lan_tensor.iota(d.w_obj, &glue)?;
            let k = FinFn::new(j.on_obj(z).clone(), g.on_obj(d.w_obj).clone(), d.k_table)?;
            let inner = tensor.at[d.w_obj].iota(z, &k)?;
            compose(&outer, &inner)
        },
        &lan_tensor.carrier,
    )?;
    verify_inverse(&alpha, &alpha_bar_inv, "associator")?;

    Ok(IsoInverses {
        rho_inv,
        lambda_bar_inv,
        alpha_bar_inv,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{constant_functor, fin_skeleton, j_times, subuniverse};

    #[test]
    fn skeleton_weight_has_all_inverses() {
        let budget = Budget::default();
        let (_, incl) = fin_skeleton(2, budget).unwrap();
        let j = Rc::new(incl);
        let x = FinSet::of(2);
        let inv = iso_inverses(&j, &j, &j, &x, budget).unwrap();
        assert_eq!(inv.rho_inv.len(), 3);
        for (z, r) in inv.rho_inv.iter().enumerate() {
            assert!(r.is_bijective());
            assert_eq!(r.cod.size, j.on_obj(z).size);
        }
        assert!(inv.lambda_bar_inv.is_bijective());
        assert!(inv.alpha_bar_inv.is_bijective());
    }

    #[test]
    fn constant_factors_have_a_bijective_associator_inverse() {
        let budget = Budget::default();
        let (cat, incl) = subuniverse(&[0, 1, 2], budget).unwrap();
        let j = Rc::new(incl);
        let c = Rc::new(constant_functor(Rc::clone(&cat), FinSet::of(2)));
        let inv = iso_inverses(&j, &c, &c, &FinSet::of(2), budget).unwrap();
        assert!(inv.alpha_bar_inv.is_bijective());

        // Verify against the forward map recomputed from scratch.
        let tensor = tensor_functor(&j, &c, &c, budget).unwrap();
        let lan_tensor = LanObject::new(&j, &tensor.functor, &FinSet::of(2), budget).unwrap();
        let lan_g = LanObject::new(&j, &c, &FinSet::of(2), budget).unwrap();
        let target = LanObject::new(&j, &c, &lan_g.carrier, budget).unwrap();
        let alpha = alpha_bar(&lan_tensor, &tensor, &lan_g, &target).unwrap();
        assert!(compose(&alpha, &inv.alpha_bar_inv).unwrap().is_identity());
        assert!(compose(&inv.alpha_bar_inv, &alpha).unwrap().is_identity());
    }

    #[test]
    fn product_weight_is_refused_as_not_fully_faithful() {
        let budget = Budget::default();
        let (_, incl) = subuniverse(&[0, 1, 2], budget).unwrap();
        let incl = Rc::new(incl);
        let j = Rc::new(j_times(&incl, 2));
        let err = iso_inverses(&j, &incl, &incl, &FinSet::of(2), budget).unwrap_err();
        assert!(matches!(err, Error::Precondition(_)));
        assert!(err.to_string().contains("fully faithful"));
    }

    #[test]
    fn missing_one_element_value_is_refused_by_name() {
        let budget = Budget::default();
        let (_, incl) = subuniverse(&[0, 2], budget).unwrap();
        let j = Rc::new(incl);
        let err = iso_inverses(&j, &j, &j, &FinSet::of(2), budget).unwrap_err();
        assert!(matches!(err, Error::Precondition(_)));
        assert!(err.to_string().contains("one-element value"));
    }
}
