//! The multiplication presentation of a relative monad.
//!
//! Lifting and multiplication determine each other.  The family
//! `θ(z, g) = g*` over the coend points of `(T⋅T) X = Lan_J T (T X)` is
//! natural precisely because of the lifting laws, so it factors to a single
//! map `μ_X : (T⋅T) X → T X`; conversely `k* = μ_Y ∘ ι k` recovers the
//! lifting from the multiplication.  [`mu_from_star`] and [`star_from_mu`]
//! implement the two directions, and the round trip is exact on tables —
//! the tests here and the instance suites downstream hold it to that.
//!
//! On the multiplication side the monad laws become the three diagrams of
//! a monoid under the Kan tensor, with the unitors and associator supplied
//! by [`crate::kan`]; [`skew_monoid_check`] verifies them, and
//! [`skew_monoid_morphism_check`] the corresponding two diagrams (plus
//! naturality) for a family of components between two monoids.

use std::rc::Rc;

use crate::budget::Budget;
use crate::fincat::{check_naturality, NatTrans, SetFunctor};
use crate::finset::{compose, FinFn, FinSet};
use crate::kan::{alpha_bar, lambda_bar, lan_map, lan_nat, rho_component, tensor_functor};
use crate::kan::{LanObject, TensorFunctor};
use crate::report::Report;
use crate::{Error, Result};

use super::{merge_tagged, RelMonadData};

/// A monoid under the Kan tensor: a functor `T`, a unit `J ⇒ T`, and a
/// multiplication `T⋅T ⇒ T`.
#[derive(Debug, Clone)]
pub struct SkewMonoid {
    pub j: Rc<SetFunctor>,
    /// The underlying functor of the monoid.
    pub t: Rc<SetFunctor>,
    /// Unit components `J X → T X`.
    pub unit: NatTrans,
    /// Multiplication components `(T⋅T) X → T X`.
    pub mu: NatTrans,
    /// The tensor `T⋅T` with its per-object coends, for interpreting `μ`.
    pub tensor: TensorFunctor,
}

/// Collapses the lifting of `t` into multiplication components.
///
/// Each `μ_X` is the factorisation of the family `g ↦ g*` through the
/// coend at `T X`; the factorisation itself checks the family is natural,
/// so a lifting that breaks associativity or the right unit law is refused
/// here with a witness rather than silently folded into a table.
pub fn mu_from_star(t: &RelMonadData, budget: Budget) -> Result<SkewMonoid> {
    let t_func = t.underlying_functor()?;
    let tensor = tensor_functor(&t.j, &t_func, &t_func, budget)?;
    let mut mu = Vec::with_capacity(t.objects());
    for x in 0..t.objects() {
        mu.push(tensor.at[x].factorize(|z, g| t.star(z, x, g), &t.t[x])?);
    }
    Ok(SkewMonoid {
        j: Rc::clone(&t.j),
        t: t_func,
        unit: t.unit_nat(),
        mu: NatTrans { components: mu },
        tensor,
    })
}

/// Recovers the lifting from a monoid: `k* := μ_Y ∘ ι k`.
pub fn star_from_mu(m: &SkewMonoid) -> Result<RelMonadData> {
    let n = m.j.src.objects();
    let carriers: Vec<FinSet> = (0..n).map(|x| m.t.on_obj(x).clone()).collect();
    let at = m.tensor.at.clone();
    let mu = m.mu.components.clone();
    let star = Rc::new(move |x: usize, y: usize, k: &FinFn| {
        compose(&mu[y], &at[y].iota(x, k)?)
    });
    RelMonadData::new(
        Rc::clone(&m.j),
        carriers,
        m.unit.components.clone(),
        star,
    )
}

/// Runs a per-object diagram.  A precondition refusal — typically the
/// factorisation rejecting a family that is not natural, which for broken
/// monoid data is the diagram's way of failing — is recorded as a failing
/// case with the refusal as witness; other errors propagate.
fn diagram_over_objects(
    report: &mut Report,
    id: &str,
    n: usize,
    mut body: impl FnMut(usize) -> Result<Option<String>>,
) -> Result<()> {
    let mut witness = None;
    let mut cases = 0u64;
    for x in 0..n {
        cases += 1;
        match body(x) {
            Ok(None) => {}
            Ok(Some(w)) => {
                witness = Some(w);
                break;
            }
            Err(Error::Precondition(msg)) => {
                witness = Some(format!("at X{x}: {msg}"));
                break;
            }
            Err(e) => return Err(e),
        }
    }
    report.equation(id, cases, witness);
    Ok(())
}

/// Checks the three monoid diagrams and naturality of the multiplication.
pub fn skew_monoid_check(m: &SkewMonoid, budget: Budget) -> Result<Report> {
    let mut report = Report::new();
    let n = m.j.src.objects();

    // μ ∘ Lan η = λ̄ at every T x.
    diagram_over_objects(&mut report, "monoid/right-unit", n, |x| {
        let point = m.t.on_obj(x);
        let lan_j = LanObject::new(&m.j, &m.j, point, budget)?;
        let lan_eta = lan_nat(&lan_j, &m.tensor.at[x], &m.unit)?;
        let lhs = compose(&m.mu.components[x], &lan_eta)?;
        let rhs = lambda_bar(&lan_j)?;
        Ok((lhs != rhs).then(|| format!("at X{x}: μ∘Lan η = {lhs} but λ̄ = {rhs}")))
    })?;

    // μ ∘ Lan T η ∘ ρ = id at every T x.
    diagram_over_objects(&mut report, "monoid/left-unit", n, |x| {
        let lan_at_jx = LanObject::new(&m.j, &m.t, m.j.on_obj(x), budget)?;
        let rho = rho_component(&lan_at_jx, x)?;
        let push_unit = lan_map(&lan_at_jx, &m.tensor.at[x], &m.unit.components[x])?;
        let composite = compose(&m.mu.components[x], &compose(&push_unit, &rho)?)?;
        Ok((!composite.is_identity()).then(|| format!("at X{x}: μ∘(Lan T η)∘ρ = {composite}")))
    })?;

    // μ ∘ Lan T μ ∘ ᾱ = μ ∘ Lan μ at every T x.
    diagram_over_objects(&mut report, "monoid/assoc", n, |x| {
        let point = m.t.on_obj(x);
        let lan_tt = LanObject::new(&m.j, &m.tensor.functor, point, budget)?;
        let target = LanObject::new(&m.j, &m.t, &m.tensor.at[x].carrier, budget)?;
        let assoc = alpha_bar(&lan_tt, &m.tensor, &m.tensor.at[x], &target)?;
        let push_mu = lan_map(&target, &m.tensor.at[x], &m.mu.components[x])?;
        let lhs = compose(&m.mu.components[x], &compose(&push_mu, &assoc)?)?;
        let rhs = compose(&m.mu.components[x], &lan_nat(&lan_tt, &m.tensor.at[x], &m.mu)?)?;
        Ok((lhs != rhs).then(|| {
            format!("at X{x}: μ∘(Lan T μ)∘ᾱ = {lhs} but μ∘(Lan μ) = {rhs}")
        }))
    })?;

    merge_tagged(
        &mut report,
        "monoid/mult-natural",
        check_naturality(&m.tensor.functor, &m.t, &m.mu, budget)?,
    );
    Ok(report)
}

/// Checks that `sigma` is a morphism of monoids: it must commute with the
/// units, commute with the multiplications, and be natural.
pub fn skew_monoid_morphism_check(
    src: &SkewMonoid,
    tgt: &SkewMonoid,
    sigma: &NatTrans,
    budget: Budget,
) -> Result<Report> {
    if *src.j != *tgt.j {
        return Err(Error::Shape(
            "monoids are tensored over different weights".into(),
        ));
    }
    let n = src.j.src.objects();
    if sigma.components.len() != n {
        return Err(Error::Shape("morphism has wrong arity".into()));
    }
    let mut report = Report::new();

    let mut witness = None;
    let mut cases = 0u64;
    for x in 0..n {
        let pushed = compose(&sigma.components[x], &src.unit.components[x])?;
        cases += 1;
        if pushed != tgt.unit.components[x] {
            witness = Some(format!(
                "at X{x}: σ∘η = {pushed} but η′ = {}",
                tgt.unit.components[x]
            ));
            break;
        }
    }
    report.equation("monoid-morphism/unit", cases, witness);

    // σ ∘ μ = μ′ ∘ (Lan σ) ∘ (Lan T σ) at every x: push the point with
    // σ_x first, then switch the extended functor with σ.
    diagram_over_objects(&mut report, "monoid-morphism/mult", n, |x| {
        let mid = LanObject::new(&src.j, &src.t, tgt.t.on_obj(x), budget)?;
        let push_point = lan_map(&src.tensor.at[x], &mid, &sigma.components[x])?;
        let push_functor = lan_nat(&mid, &tgt.tensor.at[x], sigma)?;
        let rhs = compose(
            &tgt.mu.components[x],
            &compose(&push_functor, &push_point)?,
        )?;
        let lhs = compose(&sigma.components[x], &src.mu.components[x])?;
        Ok((lhs != rhs).then(|| {
            format!("at X{x}: σ∘μ = {lhs} but μ′∘(Lan σ)∘(Lan T σ) = {rhs}")
        }))
    })?;

    merge_tagged(
        &mut report,
        "monoid-morphism/naturality",
        check_naturality(&src.t, &tgt.t, sigma, budget)?,
    );
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::fin_skeleton;
    use crate::finset::count_fns;
    use crate::relmon::testing::powerset_restriction;
    use crate::relmon::{check_relmonad_laws, Mode};

    fn skeleton(k: usize) -> Rc<SetFunctor> {
        let (_, incl) = fin_skeleton(k, Budget::default()).unwrap();
        Rc::new(incl)
    }

    #[test]
    fn trivial_multiplication_is_the_counit() {
        let j = skeleton(2);
        let m = mu_from_star(&RelMonadData::trivial(Rc::clone(&j)), Budget::default()).unwrap();
        for x in 0..j.src.objects() {
            let lan = LanObject::new(&j, &j, j.on_obj(x), Budget::default()).unwrap();
            assert_eq!(m.mu.components[x], lambda_bar(&lan).unwrap());
        }
    }

    #[test]
    fn monoid_diagrams_hold_for_trivial_and_powerset() {
        let j = skeleton(2);
        for t in [
            RelMonadData::trivial(Rc::clone(&j)),
            powerset_restriction(&j),
        ] {
            let m = mu_from_star(&t, Budget::default()).unwrap();
            let report = skew_monoid_check(&m, Budget::default()).unwrap();
            assert!(report.all_pass(), "{:?}", report.failures().next());
        }
    }

    #[test]
    fn lifting_multiplication_round_trip_is_exact() {
        let j = skeleton(2);
        let t = powerset_restriction(&j);
        let m = mu_from_star(&t, Budget::default()).unwrap();
        let back = star_from_mu(&m).unwrap();

        assert_eq!(t.t, back.t);
        assert_eq!(t.unit, back.unit);
        let n = t.objects();
        for x in 0..n {
            for y in 0..n {
                let count =
                    count_fns(t.j.on_obj(x), &t.t[y], Budget::default()).unwrap() as usize;
                for rank in 0..count {
                    let k = FinFn {
                        dom: t.j.on_obj(x).clone(),
                        cod: t.t[y].clone(),
                        table: crate::finset::fn_unrank(rank, t.j.on_obj(x).size, t.t[y].size),
                    };
                    assert_eq!(
                        t.star(x, y, &k).unwrap(),
                        back.star(x, y, &k).unwrap(),
                        "liftings disagree at ({x}, {y}), k={k}"
                    );
                }
            }
        }

        let again = mu_from_star(&back, Budget::default()).unwrap();
        assert_eq!(m.mu, again.mu);
        assert_eq!(m.unit, again.unit);
    }

    #[test]
    fn reconstructed_lifting_passes_the_law_suite() {
        let j = skeleton(2);
        let m = mu_from_star(&powerset_restriction(&j), Budget::default()).unwrap();
        let back = star_from_mu(&m).unwrap();
        let report = check_relmonad_laws(&back, Mode::Exhaustive, Budget::default()).unwrap();
        assert!(report.all_pass(), "{:?}", report.failures().next());
    }

    #[test]
    fn non_natural_lifting_is_refused_with_a_witness() {
        let j = skeleton(2);
        let good = powerset_restriction(&j);
        let broken = RelMonadData::new(
            Rc::clone(&j),
            good.t.clone(),
            good.unit.clone(),
            // Sends everything to the image of the first member, which is
            // not stable under reindexing the coend point.
            Rc::new(|_, _, k| {
                let v = if k.dom.size > 0 { k.table[0] } else { 0 };
                FinFn::constant(&FinSet::of(1usize << k.dom.size), &k.cod, v)
            }),
        )
        .unwrap();
        match mu_from_star(&broken, Budget::default()) {
            Err(Error::Precondition(msg)) => assert!(msg.contains("natural"), "{msg}"),
            other => panic!("expected a naturality refusal, got {other:?}"),
        }
    }

    #[test]
    fn perturbed_multiplication_fails_a_diagram() {
        let j = skeleton(2);
        let mut m = mu_from_star(&powerset_restriction(&j), Budget::default()).unwrap();
        // Swap the values of two classes the left unit diagram pins: the
        // classes of (η_X, e) must map to e, so exchanging two of them is
        // never a no-op.
        let last = m.mu.components.len() - 1;
        let eta = m.unit.components[last].clone();
        let c0 = m.tensor.at[last].class_of(last, &eta, 0).unwrap();
        let c1 = m.tensor.at[last].class_of(last, &eta, 1).unwrap();
        assert_ne!(
            m.mu.components[last].table[c0],
            m.mu.components[last].table[c1]
        );
        m.mu.components[last].table.swap(c0, c1);
        let report = skew_monoid_check(&m, Budget::default()).unwrap();
        let failed: Vec<&str> = report.failures().map(|c| c.id.as_str()).collect();
        assert!(failed.contains(&"monoid/left-unit"), "{failed:?}");
    }

    #[test]
    fn singleton_inclusion_is_a_monoid_morphism() {
        let j = skeleton(2);
        let triv = RelMonadData::trivial(Rc::clone(&j));
        let pow = powerset_restriction(&j);
        let src = mu_from_star(&triv, Budget::default()).unwrap();
        let tgt = mu_from_star(&pow, Budget::default()).unwrap();
        let sigma = NatTrans {
            components: pow.unit.clone(),
        };
        let report = skew_monoid_morphism_check(&src, &tgt, &sigma, Budget::default()).unwrap();
        assert!(report.all_pass(), "{:?}", report.failures().next());
    }

    #[test]
    fn damaged_components_fail_the_morphism_diagrams() {
        let j = skeleton(2);
        let pow = powerset_restriction(&j);
        let m = mu_from_star(&pow, Budget::default()).unwrap();
        let mut components: Vec<FinFn> = pow.t.iter().map(FinFn::identity).collect();
        let last = components.len() - 1;
        components[last].table.swap(0, 3);
        let sigma = NatTrans { components };
        let report = skew_monoid_morphism_check(&m, &m, &sigma, Budget::default()).unwrap();
        let failed: Vec<&str> = report.failures().map(|c| c.id.as_str()).collect();
        assert!(failed.contains(&"monoid-morphism/mult"), "{failed:?}");
        assert!(failed.contains(&"monoid-morphism/naturality"), "{failed:?}");
    }
}
