//! Eilenberg–Moore algebras of a relative monad, in both presentations.
//!
//! The per-map form ([`EMAlgebra`]) equips a carrier `X` with a family `χ`
//! turning each `f : J Z → X` into `χ f : T Z → X`, subject to two laws:
//! `χ f ∘ η = f`, and `χ(χ f ∘ k) = χ f ∘ k*`.  The single-map form
//! ([`EMAltAlgebra`]) instead gives one map `x : Lan_J T X → X` making the
//! unit and multiplication diagrams commute — `x ∘ Lan η = λ̄` and
//! `x ∘ Lan μ = x ∘ Lan T x ∘ ᾱ`.
//!
//! The two presentations are exactly equivalent: a lawful family is
//! natural, so it factors through the coend to a single map (`x = [χ]`),
//! and composing with the coend injections recovers it (`χ g = x ∘ ι g`).
//! [`EMAltOps`] bundles the Kan-extension data needed at one carrier so
//! the conversions and the diagram checks share their setup, and
//! [`em_alt_roundtrip`] drives the full translation loop: both law pairs,
//! both round trips held to table equality, and the transport of
//! morphisms between the presentations.
//!
//! The family `χ` ranges over the index objects of the truncated category,
//! exactly the range the engine can enumerate; carriers are kept small
//! enough that the map spaces stay within budget.

use crate::budget::Budget;
use crate::finset::{compose, count_fns, fn_rank, fn_unrank, FinFn, FinSet};
use crate::kan::{alpha_bar, lambda_bar, lan_map, lan_nat, LanObject};
use crate::relmon::{mu_from_star, RelMonadData};
use crate::report::Report;
use crate::{Error, Result};

/// An algebra in the per-map presentation: a carrier with a structure
/// table `χ(Z, f)` for every index object `Z` and map `f : J Z → X`.
#[derive(Clone)]
pub struct EMAlgebra {
    /// The monad the algebra is for.
    pub t: RelMonadData,
    /// The underlying set.
    pub carrier: FinSet,
    /// `chi[z][r]` is `χ f : T z → carrier` for the `f` with rank `r`.
    chi: Vec<Vec<FinFn>>,
}

impl std::fmt::Debug for EMAlgebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("EMAlgebra")
            .field("carrier", &self.carrier.size)
            .finish_non_exhaustive()
    }
}

impl PartialEq for EMAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.carrier == other.carrier && self.chi == other.chi
    }
}

impl EMAlgebra {
    /// Tabulates a structure rule over every `(Z, f)` pair, validating
    /// each produced map runs `T Z → carrier`.
    pub fn new(
        t: &RelMonadData,
        carrier: FinSet,
        budget: Budget,
        mut structure: impl FnMut(usize, &FinFn) -> Result<FinFn>,
    ) -> Result<EMAlgebra> {
        let n = t.objects();
        let mut chi = Vec::with_capacity(n);
        for z in 0..n {
            let jz = t.j.on_obj(z);
            let count = count_fns(jz, &carrier, budget)? as usize;
            let mut per_g = Vec::with_capacity(count);
            for r in 0..count {
                let g = FinFn {
                    dom: jz.clone(),
                    cod: carrier.clone(),
                    table: fn_unrank(r, jz.size, carrier.size),
                };
                let c = structure(z, &g)?;
                if c.dom != t.t[z] || c.cod != carrier {
                    return Err(Error::Shape(format!(
                        "structure at (Z{z}, {g}) is {c}, expected {} → {}",
                        t.t[z].size, carrier.size
                    )));
                }
                per_g.push(c);
            }
            chi.push(per_g);
        }
        Ok(EMAlgebra {
            t: t.clone(),
            carrier,
            chi,
        })
    }

    /// Looks up `χ f` for a map `f : J z → carrier`.
    pub fn chi(&self, z: usize, f: &FinFn) -> Result<&FinFn> {
        if z >= self.chi.len() {
            return Err(Error::Scope {
                index: z,
                scope: self.chi.len(),
            });
        }
        if f.dom != *self.t.j.on_obj(z) || f.cod != self.carrier {
            return Err(Error::Shape(format!(
                "map {f} is not J({z}) → carrier ({} → {})",
                self.t.j.on_obj(z).size,
                self.carrier.size
            )));
        }
        Ok(&self.chi[z][fn_rank(&f.table, self.carrier.size)])
    }

    /// All maps `J z → carrier` in rank order.
    pub fn maps_into(&self, z: usize) -> impl Iterator<Item = FinFn> + '_ {
        let dom = self.t.j.on_obj(z).clone();
        let cod = self.carrier.clone();
        (0..self.chi[z].len()).map(move |r| FinFn {
            dom: dom.clone(),
            cod: cod.clone(),
            table: fn_unrank(r, dom.size, cod.size),
        })
    }

    /// The raw structure tables, indexed `[z][rank of f]`.
    pub fn tables(&self) -> &[Vec<FinFn>] {
        &self.chi
    }
}

/// The free algebra on an index object: carrier `T x`, structure `k ↦ k*`.
pub fn free_em(t: &RelMonadData, x: usize, budget: Budget) -> Result<EMAlgebra> {
    if x >= t.objects() {
        return Err(Error::Scope {
            index: x,
            scope: t.objects(),
        });
    }
    EMAlgebra::new(t, t.t[x].clone(), budget, |z, g| t.star(z, x, g))
}

/// Checks the two algebra laws over every enumerated map.
pub fn em_check(a: &EMAlgebra, budget: Budget) -> Result<Report> {
    let t = &a.t;
    let n = t.objects();
    let mut report = Report::new();

    let mut witness = None;
    let mut cases = 0u64;
    'unit: for z in 0..n {
        for g in a.maps_into(z) {
            cases += 1;
            let back = compose(a.chi(z, &g)?, &t.unit[z])?;
            if back != g {
                witness = Some(format!("at (Z{z}, {g}): χg∘η = {back}"));
                break 'unit;
            }
        }
    }
    report.equation("em/unit", cases, witness);

    let mut star_cases: u128 = 0;
    for z in 0..n {
        for w in 0..n {
            star_cases += a.chi[z].len() as u128
                * count_fns(t.j.on_obj(w), &t.t[z], budget)? as u128;
        }
    }
    budget.admit("algebra lifting comparisons", star_cases)?;

    let mut witness = None;
    let mut cases = 0u64;
    'star: for z in 0..n {
        for g in a.maps_into(z) {
            let chi_g = a.chi(z, &g)?.clone();
            for w in 0..n {
                let jw = t.j.on_obj(w);
                let k_count = count_fns(jw, &t.t[z], budget)? as usize;
                for r in 0..k_count {
                    let k = FinFn {
                        dom: jw.clone(),
                        cod: t.t[z].clone(),
                        table: fn_unrank(r, jw.size, t.t[z].size),
                    };
                    cases += 1;
                    let lhs = a.chi(w, &compose(&chi_g, &k)?)?;
                    let rhs = compose(&chi_g, &t.star(w, z, &k)?)?;
                    if *lhs != rhs {
                        witness = Some(format!(
                            "at (Z{z}, W{w}, g={g}, k={k}): χ(χg∘k) = {lhs} but χg∘k* = {rhs}"
                        ));
                        break 'star;
                    }
                }
            }
        }
    }
    report.equation("em/star", cases, witness);

    Ok(report)
}

/// Checks that `h` is a morphism of algebras: `h ∘ χ f = χ′(h ∘ f)` for
/// every enumerated `(Z, f)`.  Both algebras must be for the same monad.
pub fn em_morphism_check(
    src: &EMAlgebra,
    tgt: &EMAlgebra,
    h: &FinFn,
    _budget: Budget,
) -> Result<Report> {
    if h.dom != src.carrier || h.cod != tgt.carrier {
        return Err(Error::Shape(format!(
            "map {h} does not run between the carriers ({} → {})",
            src.carrier.size, tgt.carrier.size
        )));
    }
    if src.t.objects() != tgt.t.objects() {
        return Err(Error::Shape(
            "algebras live over different index categories".into(),
        ));
    }
    let mut report = Report::new();
    let mut witness = None;
    let mut cases = 0u64;
    'outer: for z in 0..src.chi.len() {
        for f in src.maps_into(z) {
            cases += 1;
            let lhs = compose(h, src.chi(z, &f)?)?;
            let rhs = tgt.chi(z, &compose(h, &f)?)?;
            if lhs != *rhs {
                witness = Some(format!(
                    "at (Z{z}, {f}): h∘χf = {lhs} but χ′(h∘f) = {rhs}"
                ));
                break 'outer;
            }
        }
    }
    report.equation("em-morphism/commute", cases, witness);
    Ok(report)
}

/// An algebra in the single-map presentation: one structure map off the
/// Kan extension of `T` at the carrier.
#[derive(Debug, Clone, PartialEq)]
pub struct EMAltAlgebra {
    pub carrier: FinSet,
    /// `x : Lan_J T carrier → carrier`.
    pub structure: FinFn,
}

/// The Kan-extension data for single-map algebras at one carrier: the
/// coend, the tensor `T⋅T` over it, and the four precomputed sides of the
/// two diagrams.  Building this once lets a whole batch of candidate
/// structures be vetted at one factorisation each.
pub struct EMAltOps {
    t: RelMonadData,
    budget: Budget,
    /// The carrier the data was built at.
    pub carrier: FinSet,
    lan_t: LanObject,
    target: LanObject,
    lan_eta: FinFn,
    collapse: FinFn,
    lan_mu: FinFn,
    assoc: FinFn,
}

impl EMAltOps {
    /// Assembles the Kan data at `carrier`.  The monad itself must be
    /// lawful — its multiplication is read off the lifting here, and a
    /// lifting whose family fails to be natural is refused.
    pub fn new(t: &RelMonadData, carrier: &FinSet, budget: Budget) -> Result<EMAltOps> {
        let monoid = mu_from_star(t, budget)?;
        let lan_j = LanObject::new(&t.j, &t.j, carrier, budget)?;
        let lan_t = LanObject::new(&t.j, &monoid.t, carrier, budget)?;
        let lan_tt = LanObject::new(&t.j, &monoid.tensor.functor, carrier, budget)?;
        let target = LanObject::new(&t.j, &monoid.t, &lan_t.carrier, budget)?;
        let lan_eta = lan_nat(&lan_j, &lan_t, &monoid.unit)?;
        let collapse = lambda_bar(&lan_j)?;
        let lan_mu = lan_nat(&lan_tt, &lan_t, &monoid.mu)?;
        let assoc = alpha_bar(&lan_tt, &monoid.tensor, &lan_t, &target)?;
        Ok(EMAltOps {
            t: t.clone(),
            budget,
            carrier: carrier.clone(),
            lan_t,
            target,
            lan_eta,
            collapse,
            lan_mu,
            assoc,
        })
    }

    /// Size of `Lan_J T` at the carrier — the domain a structure map needs.
    pub fn point_count(&self) -> usize {
        self.lan_t.classes()
    }

    /// The coend injection `ι g : T z → Lan_J T carrier`.
    pub fn injection(&self, z: usize, g: &FinFn) -> Result<FinFn> {
        self.lan_t.iota(z, g)
    }

    fn require_shape(&self, a: &EMAltAlgebra) -> Result<()> {
        if a.carrier != self.carrier {
            return Err(Error::Shape(format!(
                "algebra carrier has size {}, the data was built at {}",
                a.carrier.size, self.carrier.size
            )));
        }
        if a.structure.dom != self.lan_t.carrier || a.structure.cod != self.carrier {
            return Err(Error::Shape(format!(
                "structure {} does not run Lan T X → X ({} → {})",
                a.structure,
                self.lan_t.carrier.size,
                self.carrier.size
            )));
        }
        Ok(())
    }

    /// Checks the unit and multiplication diagrams for one structure map.
    pub fn laws(&self, a: &EMAltAlgebra) -> Result<Report> {
        self.require_shape(a)?;
        let mut report = Report::new();

        let lhs = compose(&a.structure, &self.lan_eta)?;
        let witness = (lhs != self.collapse)
            .then(|| format!("x∘Lan η = {lhs} but λ̄ = {}", self.collapse));
        report.equation("em-alt/unit", self.lan_eta.dom.size as u64, witness);

        let push = lan_map(&self.target, &self.lan_t, &a.structure)?;
        let lhs = compose(&a.structure, &self.lan_mu)?;
        let rhs = compose(&a.structure, &compose(&push, &self.assoc)?)?;
        let witness =
            (lhs != rhs).then(|| format!("x∘Lan μ = {lhs} but x∘(Lan T x)∘ᾱ = {rhs}"));
        report.equation("em-alt/mult", self.lan_mu.dom.size as u64, witness);

        Ok(report)
    }

    /// Factors a per-map algebra through the coend: `x := [χ]`.
    ///
    /// A family that is not natural — one that could not have come from a
    /// lawful algebra — is refused with the violated generator as witness.
    pub fn from_family(&self, a: &EMAlgebra) -> Result<EMAltAlgebra> {
        if a.carrier != self.carrier {
            return Err(Error::Shape(format!(
                "algebra carrier has size {}, the data was built at {}",
                a.carrier.size, self.carrier.size
            )));
        }
        let structure = self
            .lan_t
            .factorize(|z, g| a.chi(z, g).cloned(), &self.carrier)?;
        Ok(EMAltAlgebra {
            carrier: self.carrier.clone(),
            structure,
        })
    }

    /// Reads a per-map algebra off a single structure map: `χ g := x ∘ ι g`.
    pub fn to_family(&self, a: &EMAltAlgebra) -> Result<EMAlgebra> {
        self.require_shape(a)?;
        EMAlgebra::new(&self.t, self.carrier.clone(), self.budget, |z, g| {
            compose(&a.structure, &self.lan_t.iota(z, g)?)
        })
    }
}

/// Checks the two single-map diagrams, building the Kan data on the spot.
pub fn em_alt_check(t: &RelMonadData, a: &EMAltAlgebra, budget: Budget) -> Result<Report> {
    EMAltOps::new(t, &a.carrier, budget)?.laws(a)
}

/// Converts per-map to single-map: the factorisation `x = [χ]`.
pub fn em_to_alt(t: &RelMonadData, a: &EMAlgebra, budget: Budget) -> Result<EMAltAlgebra> {
    EMAltOps::new(t, &a.carrier, budget)?.from_family(a)
}

/// Converts single-map to per-map: `χ g = x ∘ ι g`.
pub fn alt_to_em(t: &RelMonadData, a: &EMAltAlgebra, budget: Budget) -> Result<EMAlgebra> {
    EMAltOps::new(t, &a.carrier, budget)?.to_family(a)
}

/// Checks that `h` is a morphism of single-map algebras:
/// `h ∘ x = y ∘ Lan T h`.
pub fn em_alt_morphism_check(
    t: &RelMonadData,
    src: &EMAltAlgebra,
    tgt: &EMAltAlgebra,
    h: &FinFn,
    budget: Budget,
) -> Result<Report> {
    if h.dom != src.carrier || h.cod != tgt.carrier {
        return Err(Error::Shape(format!(
            "map {h} does not run between the carriers ({} → {})",
            src.carrier.size, tgt.carrier.size
        )));
    }
    let t_func = t.underlying_functor()?;
    let lan_src = LanObject::new(&t.j, &t_func, &src.carrier, budget)?;
    let lan_tgt = LanObject::new(&t.j, &t_func, &tgt.carrier, budget)?;
    check_alt_morphism(&lan_src, &lan_tgt, src, tgt, h)
}

fn check_alt_morphism(
    lan_src: &LanObject,
    lan_tgt: &LanObject,
    src: &EMAltAlgebra,
    tgt: &EMAltAlgebra,
    h: &FinFn,
) -> Result<Report> {
    let pushed = lan_map(lan_src, lan_tgt, h)?;
    let lhs = compose(h, &src.structure)?;
    let rhs = compose(&tgt.structure, &pushed)?;
    let mut report = Report::new();
    let witness = (lhs != rhs).then(|| format!("h∘x = {lhs} but y∘(Lan T h) = {rhs}"));
    report.equation("em-alt-morphism/commute", lhs.dom.size as u64, witness);
    Ok(report)
}

/// The full translation loop at one algebra: both law pairs, exact round
/// trips in both directions, and agreement of the two morphism notions on
/// every endomorphism of the carrier.
pub fn em_alt_roundtrip(t: &RelMonadData, a: &EMAlgebra, budget: Budget) -> Result<Report> {
    let ops = EMAltOps::new(t, &a.carrier, budget)?;
    let mut report = em_check(a, budget)?;

    let alt = ops.from_family(a)?;
    report.extend(ops.laws(&alt)?);

    let family = ops.to_family(&alt)?;
    let mut witness = None;
    let mut cases = 0u64;
    'family: for z in 0..t.objects() {
        for g in a.maps_into(z) {
            cases += 1;
            let before = a.chi(z, &g)?;
            let after = family.chi(z, &g)?;
            if before != after {
                witness = Some(format!(
                    "at (Z{z}, {g}): χ = {before} but the round trip gives {after}"
                ));
                break 'family;
            }
        }
    }
    report.equation("em-roundtrip/family", cases, witness);

    let again = ops.from_family(&family)?;
    let witness = (again.structure != alt.structure).then(|| {
        format!(
            "x = {} but the round trip gives {}",
            alt.structure, again.structure
        )
    });
    report.equation(
        "em-roundtrip/structure",
        alt.structure.dom.size as u64,
        witness,
    );

    let endo_count = count_fns(&a.carrier, &a.carrier, budget)? as usize;
    let mut witness = None;
    let mut cases = 0u64;
    for r in 0..endo_count {
        let h = FinFn {
            dom: a.carrier.clone(),
            cod: a.carrier.clone(),
            table: fn_unrank(r, a.carrier.size, a.carrier.size),
        };
        cases += 1;
        let as_family = em_morphism_check(a, a, &h, budget)?.all_pass();
        let as_structure =
            check_alt_morphism(&ops.lan_t, &ops.lan_t, &alt, &alt, &h)?.all_pass();
        if as_family != as_structure {
            witness = Some(format!(
                "h = {h} is a morphism in one presentation only \
                 (per-map: {as_family}, single-map: {as_structure})"
            ));
            break;
        }
    }
    report.equation("em-roundtrip/morphisms", cases, witness);

    Ok(report)
}
