//! The five skew-monoidal coherence diagrams for the tensor induced by a
//! weight, decided by composing the structure-map tables pointwise.
//!
//! The unit triangles indexed by the index category — (a) and (d) — are
//! checked at every index object. The remaining diagrams are checked in
//! their generalised form at arbitrary points: (b) as
//! `Lan F λ̄ ∘ ᾱ_{F,J} ∘ Lan ρ_F = id`, (c) as
//! `λ̄ ∘ ᾱ_{J,F} = Lan λ_F`, and (e) as the pentagon
//! `Lan F ᾱ_{G,H} ∘ ᾱ_{F,G⋅H} ∘ Lan α_{F,G,H} = ᾱ_{F,G} ∘ ᾱ_{F⋅G,H}` —
//! each at the given point and at every value of the remaining functor,
//! which makes the original functor-category diagrams instances.

use std::rc::Rc;

use crate::budget::Budget;
use crate::fincat::{NatTrans, SetFunctor};
use crate::finset::{compose, FinSet};
use crate::report::Report;
use crate::Result;

use super::{
    alpha_bar, lambda_bar, lan_map, lan_nat, rho_component, tensor_functor, LanObject,
};

fn triangle_a(j: &Rc<SetFunctor>, z: usize, budget: Budget) -> Result<Option<String>> {
    let lan = LanObject::new(j, j, j.on_obj(z), budget)?;
    let composite = compose(&lambda_bar(&lan)?, &rho_component(&lan, z)?)?;
    Ok((!composite.is_identity())
        .then(|| format!("unit triangle at object {z}: composite {composite}")))
}

fn triangle_b(
    j: &Rc<SetFunctor>,
    f: &Rc<SetFunctor>,
    x: &FinSet,
    budget: Budget,
) -> Result<Option<String>> {
    let n = j.src.objects();
    let tensor_fj = tensor_functor(j, f, j, budget)?;
    let lan_f_x = LanObject::new(j, f, x, budget)?;
    let lan_tensor_x = LanObject::new(j, &tensor_fj.functor, x, budget)?;
    let rho_f = NatTrans {
        components: (0..n)
            .map(|z| rho_component(&tensor_fj.at[z], z))
            .collect::<Result<_>>()?,
    };
    let embed = lan_nat(&lan_f_x, &lan_tensor_x, &rho_f)?;
    let lan_j_x = LanObject::new(j, j, x, budget)?;
    let lan_f_lanjx = LanObject::new(j, f, &lan_j_x.carrier, budget)?;
    let assoc = alpha_bar(&lan_tensor_x, &tensor_fj, &lan_j_x, &lan_f_lanjx)?;
    let collapse = lan_map(&lan_f_lanjx, &lan_f_x, &lambda_bar(&lan_j_x)?)?;
    let composite = compose(&collapse, &compose(&assoc, &embed)?)?;
    Ok((!composite.is_identity())
        .then(|| format!("right unit at point of size {}: composite {composite}", x.size)))
}

fn triangle_c(
    j: &Rc<SetFunctor>,
    f: &Rc<SetFunctor>,
    x: &FinSet,
    budget: Budget,
) -> Result<Option<String>> {
    let n = j.src.objects();
    let tensor_jf = tensor_functor(j, j, f, budget)?;
    let lan_tensor_x = LanObject::new(j, &tensor_jf.functor, x, budget)?;
    let lan_f_x = LanObject::new(j, f, x, budget)?;
    let lan_j_lanfx = LanObject::new(j, j, &lan_f_x.carrier, budget)?;
    let assoc = alpha_bar(&lan_tensor_x, &tensor_jf, &lan_f_x, &lan_j_lanfx)?;
    let lhs = compose(&lambda_bar(&lan_j_lanfx)?, &assoc)?;
    let lambda_f = NatTrans {
        components: (0..n)
            .map(|z| lambda_bar(&tensor_jf.at[z]))
            .collect::<Result<_>>()?,
    };
    let rhs = lan_nat(&lan_tensor_x, &lan_f_x, &lambda_f)?;
    Ok((lhs != rhs).then(|| {
        format!(
            "left unit at point of size {}: via associator {lhs}, direct {rhs}",
            x.size
        )
    }))
}

fn triangle_d(
    j: &Rc<SetFunctor>,
    f: &Rc<SetFunctor>,
    g: &Rc<SetFunctor>,
    z: usize,
    budget: Budget,
) -> Result<Option<String>> {
    let tensor_fg = tensor_functor(j, f, g, budget)?;
    let jz = j.on_obj(z);
    let lan_tensor_jz = LanObject::new(j, &tensor_fg.functor, jz, budget)?;
    let lan_g_jz = LanObject::new(j, g, jz, budget)?;
    let lan_f_langjz = LanObject::new(j, f, &lan_g_jz.carrier, budget)?;
    let assoc = alpha_bar(&lan_tensor_jz, &tensor_fg, &lan_g_jz, &lan_f_langjz)?;
    let lhs = compose(&assoc, &rho_component(&lan_tensor_jz, z)?)?;
    let rhs = lan_map(&tensor_fg.at[z], &lan_f_langjz, &rho_component(&lan_g_jz, z)?)?;
    Ok((lhs != rhs)
        .then(|| format!("unit exchange at object {z}: around {lhs}, direct {rhs}")))
}

fn pentagon(
    j: &Rc<SetFunctor>,
    f: &Rc<SetFunctor>,
    g: &Rc<SetFunctor>,
    h: &Rc<SetFunctor>,
    x: &FinSet,
    budget: Budget,
) -> Result<Option<String>> {
    let n = j.src.objects();
    let tensor_gh = tensor_functor(j, g, h, budget)?;
    let tensor_fg = tensor_functor(j, f, g, budget)?;
    let tensor_f_gh = tensor_functor(j, f, &tensor_gh.functor, budget)?;
    let tensor_fg_h = tensor_functor(j, &tensor_fg.functor, h, budget)?;

    let lan_src = LanObject::new(j, &tensor_fg_h.functor, x, budget)?;
    let lan_f_gh_x = LanObject::new(j, &tensor_f_gh.functor, x, budget)?;

    let assoc_inside = NatTrans {
        components: (0..n)
            .map(|z| {
                alpha_bar(
                    &tensor_fg_h.at[z],
                    &tensor_fg,
                    &tensor_gh.at[z],
                    &tensor_f_gh.at[z],
                )
            })
            .collect::<Result<_>>()?,
    };
    let step1 = lan_nat(&lan_src, &lan_f_gh_x, &assoc_inside)?;

    let lan_gh_x = LanObject::new(j, &tensor_gh.functor, x, budget)?;
    let lan_f_langhx = LanObject::new(j, f, &lan_gh_x.carrier, budget)?;
    let step2 = alpha_bar(&lan_f_gh_x, &tensor_f_gh, &lan_gh_x, &lan_f_langhx)?;

    let lan_h_x = LanObject::new(j, h, x, budget)?;
    let lan_g_lanhx = LanObject::new(j, g, &lan_h_x.carrier, budget)?;
    let inner = alpha_bar(&lan_gh_x, &tensor_gh, &lan_h_x, &lan_g_lanhx)?;
    let lan_f_final = LanObject::new(j, f, &lan_g_lanhx.carrier, budget)?;
    let step3 = lan_map(&lan_f_langhx, &lan_f_final, &inner)?;
    let lhs = compose(&step3, &compose(&step2, &step1)?)?;

    let lan_fg_lanhx = LanObject::new(j, &tensor_fg.functor, &lan_h_x.carrier, budget)?;
    let right1 = alpha_bar(&lan_src, &tensor_fg_h, &lan_h_x, &lan_fg_lanhx)?;
    let right2 = alpha_bar(&lan_fg_lanhx, &tensor_fg, &lan_g_lanhx, &lan_f_final)?;
    let rhs = compose(&right2, &right1)?;

    Ok((lhs != rhs).then(|| {
        format!(
            "pentagon at point of size {}: long side {lhs}, short side {rhs}",
            x.size
        )
    }))
}

/// Evaluates the five coherence diagrams for the tensor induced by `j`,
/// instantiated with the functors `f, g, h, k` and the point `x`.
pub fn skew_coherence_check(
    j: &Rc<SetFunctor>,
    f: &Rc<SetFunctor>,
    g: &Rc<SetFunctor>,
    h: &Rc<SetFunctor>,
    k: &Rc<SetFunctor>,
    x: &FinSet,
    budget: Budget,
) -> Result<Report> {
    let n = j.src.objects();
    let mut report = Report::new();

    let mut witness = None;
    for z in 0..n {
        if witness.is_none() {
            witness = triangle_a(j, z, budget)?;
        }
    }
    report.equation("skew/unit-triangle", n as u64, witness);

    // Points for the generalised diagrams: the given one plus the values
    // of the functor that the original functor-category diagram closes
    // over, so those diagrams are covered as instances.
    let points_from = |side: &Rc<SetFunctor>| -> Vec<FinSet> {
        let mut pts = vec![x.clone()];
        for z in 0..n {
            let v = side.on_obj(z).clone();
            if !pts.contains(&v) {
                pts.push(v);
            }
        }
        pts
    };

    let b_points = points_from(g);
    let mut witness = None;
    for p in &b_points {
        if witness.is_none() {
            witness = triangle_b(j, f, p, budget)?;
        }
    }
    report.equation("skew/right-unit", b_points.len() as u64, witness);

    let c_points = points_from(g);
    let mut witness = None;
    for p in &c_points {
        if witness.is_none() {
            witness = triangle_c(j, f, p, budget)?;
        }
    }
    report.equation("skew/left-unit", c_points.len() as u64, witness);

    let mut witness = None;
    for z in 0..n {
        if witness.is_none() {
            witness = triangle_d(j, f, g, z, budget)?;
        }
    }
    report.equation("skew/unit-exchange", n as u64, witness);

    let e_points = points_from(k);
    let mut witness = None;
    for p in &e_points {
        if witness.is_none() {
            witness = pentagon(j, f, g, h, p, budget)?;
        }
    }
    report.equation("skew/pentagon", e_points.len() as u64, witness);

    Ok(report)
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::fincat::{constant_functor, j_plus, random_polynomial, subuniverse};

    #[test]
    fn skeleton_weight_satisfies_all_diagrams() {
        let budget = Budget::default();
        let (_, incl) = subuniverse(&[0, 1, 2], budget).unwrap();
        let incl = Rc::new(incl);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let fs: Vec<Rc<SetFunctor>> = (0..4)
            .map(|_| Rc::new(random_polynomial(&mut rng, &incl, 1, 2, 1)))
            .collect();
        let report = skew_coherence_check(
            &incl,
            &fs[0],
            &fs[1],
            &fs[2],
            &fs[3],
            &FinSet::of(2),
            budget,
        )
        .unwrap();
        assert!(report.all_pass(), "{:?}", report.failures().collect::<Vec<_>>());
    }

    #[test]
    fn sum_weight_passes_coherence_yet_has_non_bijective_associator() {
        let budget = Budget::default();
        let (_, incl) = subuniverse(&[0, 1], budget).unwrap();
        let incl = Rc::new(incl);
        let j = Rc::new(j_plus(&incl, 1));
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let fs: Vec<Rc<SetFunctor>> = (0..4)
            .map(|_| Rc::new(random_polynomial(&mut rng, &incl, 1, 2, 1)))
            .collect();
        let report =
            skew_coherence_check(&j, &fs[0], &fs[1], &fs[2], &fs[3], &FinSet::of(2), budget)
                .unwrap();
        assert!(report.all_pass(), "{:?}", report.failures().collect::<Vec<_>>());

        // The identity weight factors expose a strictly non-surjective
        // associator at a two-point set.
        let x = FinSet::of(2);
        let tensor = tensor_functor(&j, &incl, &incl, budget).unwrap();
        let lan_tensor = LanObject::new(&j, &tensor.functor, &x, budget).unwrap();
        let lan_g = LanObject::new(&j, &incl, &x, budget).unwrap();
        let target = LanObject::new(&j, &incl, &lan_g.carrier, budget).unwrap();
        let assoc = alpha_bar(&lan_tensor, &tensor, &lan_g, &target).unwrap();
        assert!(!assoc.is_bijective());
        assert!(assoc.dom.size < assoc.cod.size);
    }

    #[test]
    fn empty_functors_pass_vacuously() {
        let budget = Budget::default();
        let (cat, incl) = subuniverse(&[0, 1, 2], budget).unwrap();
        let incl = Rc::new(incl);
        let empty = Rc::new(constant_functor(Rc::clone(&cat), FinSet::of(0)));
        let report = skew_coherence_check(
            &incl,
            &empty,
            &empty,
            &empty,
            &empty,
            &FinSet::of(2),
            budget,
        )
        .unwrap();
        assert!(report.all_pass());
    }
}
