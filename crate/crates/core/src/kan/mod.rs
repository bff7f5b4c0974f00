//! Left Kan extensions along a set-valued functor, computed pointwise.
//!
//! For functors `J, F : 𝕁 → FinSet` and a finite set `X`, the value
//! `Lan_J F X` is the quotient of `Σ Z. (J Z → X) × F Z` by the least
//! equivalence with `(Z, g∘Jh, x) ∼ (W, g, F h x)` for every `h : Z → W`.
//! [`LanObject`] materialises this quotient with a union-find structure;
//! canonical class representatives are lexicographically least in
//! `(z, g.table, x)`, so repeated runs and golden files agree byte for byte.
//!
//! Everything downstream — the functorial actions [`lan_map`] and
//! [`lan_nat`], the skew-monoidal structure maps in [`tensor`], the
//! coherence checker in [`coherence`] — factors through
//! [`LanObject::factorize`], which insists on natural input families and
//! returns a witness when given anything else.

use std::fmt;
use std::rc::Rc;

use crate::budget::{admitted_pow, Budget};
use crate::fincat::{NatTrans, SetFunctor};
use crate::finset::{compose, fn_rank, fn_unrank, FinFn, FinSet};
use crate::unionfind::UnionFind;
use crate::{Error, Result};

mod tensor;
pub use tensor::{
    alpha_bar, alpha_bar_bar, lambda_bar, rho_component, structure_maps, tensor_functor,
    StructureMaps, TensorFunctor,
};

mod coherence;
pub use coherence::skew_coherence_check;

mod wellbehaved;
pub use wellbehaved::{wellbehaved_check, Verdict, WellBehaved};

mod iso;
pub use iso::{iso_inverses, IsoInverses};

/// One point of the coend before quotienting: an object `z` of the index
/// category, a map `g : J z → X`, and an element `x` of `F z`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoendElement {
    pub z: usize,
    pub g: FinFn,
    pub x: usize,
}

impl fmt::Display for CoendElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(z{}, g={}, x{})", self.z, self.g, self.x)
    }
}

/// The value of `Lan_J F` at one set `X`: the coend quotient, its class
/// structure, and enough indexing to convert between raw coend points and
/// classes in both directions.
#[derive(Debug, Clone)]
pub struct LanObject {
    j: Rc<SetFunctor>,
    f: Rc<SetFunctor>,
    x: FinSet,
    /// Dense block start per index object; the dense index of `(z, g, x)`
    /// is `base[z] + rank(g)·|F z| + x`.
    base: Vec<usize>,
    g_count: Vec<usize>,
    class_of: Vec<usize>,
    reps: Vec<usize>,
    pub carrier: FinSet,
}

impl LanObject {
    /// Builds the quotient, merging along every generator.
    pub fn new(
        j: &Rc<SetFunctor>,
        f: &Rc<SetFunctor>,
        x: &FinSet,
        budget: Budget,
    ) -> Result<LanObject> {
        if *j.src != *f.src {
            return Err(Error::Shape(
                "weight and extended functor live on different categories".into(),
            ));
        }
        let cat = Rc::clone(&j.src);
        let n = cat.objects();

        let mut base = vec![0usize; n + 1];
        let mut g_count = vec![0usize; n];
        for z in 0..n {
            let gc = admitted_pow(budget, "maps into X", x.size as u64, j.on_obj(z).size as u32)?;
            g_count[z] = gc as usize;
            base[z + 1] = base[z]
                .checked_add(g_count[z].checked_mul(f.on_obj(z).size).ok_or_else(|| {
                    Error::Shape("coend block size overflow".into())
                })?)
                .ok_or_else(|| Error::Shape("coend index overflow".into()))?;
        }
        budget.admit("coend points", base[n] as u128)?;

        let mut generator_count: u128 = 0;
        for m in cat.arrows() {
            if m == cat.id(m.src) {
                continue;
            }
            generator_count += (g_count[m.dst] * f.on_obj(m.src).size) as u128;
        }
        budget.admit("coend generators", generator_count)?;

        let mut uf = UnionFind::new(base[n]);
        for m in cat.arrows() {
            if m == cat.id(m.src) {
                continue;
            }
            let (z, w) = (m.src, m.dst);
            let jh = j.on_arrow_ref(m);
            let fh = f.on_arrow_ref(m);
            let (fz, fw) = (f.on_obj(z).size, f.on_obj(w).size);
            for gw_rank in 0..g_count[w] {
                let gw = fn_unrank(gw_rank, j.on_obj(w).size, x.size);
                let pulled: Vec<usize> = jh.table.iter().map(|&e| gw[e]).collect();
                let pulled_rank = fn_rank(&pulled, x.size);
                for xe in 0..fz {
                    uf.union(
                        base[z] + pulled_rank * fz + xe,
                        base[w] + gw_rank * fw + fh.table[xe],
                    );
                }
            }
        }

        let (class_of, classes) = uf.canonical_classes();
        let mut reps = vec![usize::MAX; classes];
        for (idx, &c) in class_of.iter().enumerate() {
            if reps[c] == usize::MAX {
                reps[c] = idx;
            }
        }

        Ok(LanObject {
            j: Rc::clone(j),
            f: Rc::clone(f),
            x: x.clone(),
            base,
            g_count,
            class_of,
            reps,
            carrier: FinSet::of(classes),
        })
    }

    pub fn x(&self) -> &FinSet {
        &self.x
    }

    pub fn weight(&self) -> &Rc<SetFunctor> {
        &self.j
    }

    pub fn extended(&self) -> &Rc<SetFunctor> {
        &self.f
    }

    pub fn classes(&self) -> usize {
        self.carrier.size
    }

    /// All maps `J z → X` in rank order.
    pub fn maps_from(&self, z: usize) -> impl Iterator<Item = FinFn> + '_ {
        let dom = self.j.on_obj(z).clone();
        let cod = self.x.clone();
        (0..self.g_count[z]).map(move |r| FinFn {
            dom: dom.clone(),
            cod: cod.clone(),
            table: fn_unrank(r, dom.size, cod.size),
        })
    }

    fn dense_index(&self, z: usize, g: &FinFn, x: usize) -> Result<usize> {
        if z >= self.g_count.len() {
            return Err(Error::Shape(format!("no index object {z}")));
        }
        if g.dom != *self.j.on_obj(z) || g.cod != self.x {
            return Err(Error::Shape(format!(
                "map {g} does not have shape J {z} → X ({} → {})",
                self.j.on_obj(z).size,
                self.x.size
            )));
        }
        let fz = self.f.on_obj(z).size;
        if x >= fz {
            return Err(Error::Shape(format!(
                "element {x} outside F {z} of size {fz}"
            )));
        }
        Ok(self.base[z] + fn_rank(&g.table, self.x.size) * fz + x)
    }

    /// The class of the coend point `(z, g, x)`.
    pub fn class_of(&self, z: usize, g: &FinFn, x: usize) -> Result<usize> {
        Ok(self.class_of[self.dense_index(z, g, x)?])
    }

    /// The canonical (lexicographically least) representative of a class.
    pub fn rep(&self, class: usize) -> CoendElement {
        self.element_at(self.reps[class])
    }

    fn element_at(&self, idx: usize) -> CoendElement {
        let z = self.base.partition_point(|&b| b <= idx) - 1;
        let fz = self.f.on_obj(z).size;
        let off = idx - self.base[z];
        CoendElement {
            z,
            g: FinFn {
                dom: self.j.on_obj(z).clone(),
                cod: self.x.clone(),
                table: fn_unrank(off / fz, self.j.on_obj(z).size, self.x.size),
            },
            x: off % fz,
        }
    }

    /// The injection `ι g : F z → Lan_J F X` for `g : J z → X`.
    pub fn iota(&self, z: usize, g: &FinFn) -> Result<FinFn> {
        let fz = self.f.on_obj(z);
        let table = (0..fz.size)
            .map(|x| self.class_of(z, g, x))
            .collect::<Result<Vec<_>>>()?;
        FinFn::new(fz.clone(), self.carrier.clone(), table)
    }

    /// Factors a family `θ(z, g) : F z → cod` through the quotient.
    ///
    /// The family must be natural — `θ(z, g∘Jh) = θ(w, g) ∘ F h` for every
    /// `h : z → w` — and this is checked over every generator before the
    /// quotient map is read off the canonical representatives; the result
    /// is finally re-checked against every coend point, so a non-natural
    /// family can never silently produce a map.
    pub fn factorize(
        &self,
        mut theta: impl FnMut(usize, &FinFn) -> Result<FinFn>,
        cod: &FinSet,
    ) -> Result<FinFn> {
        let cat = &self.j.src;
        let n = cat.objects();

        let mut tables: Vec<Vec<FinFn>> = Vec::with_capacity(n);
        for z in 0..n {
            let mut per_g = Vec::with_capacity(self.g_count[z]);
            for g in self.maps_from(z) {
                let t = theta(z, &g)?;
                if t.dom != *self.f.on_obj(z) || t.cod != *cod {
                    return Err(Error::Shape(format!(
                        "family value at (z{z}, {g}) is {t}, expected {} → {}",
                        self.f.on_obj(z).size,
                        cod.size
                    )));
                }
                per_g.push(t);
            }
            tables.push(per_g);
        }

        for m in cat.arrows() {
            if m == cat.id(m.src) {
                continue;
            }
            let (z, w) = (m.src, m.dst);
            let jh = self.j.on_arrow_ref(m);
            let fh = self.f.on_arrow_ref(m);
            for (gw_rank, gw) in self.maps_from(w).enumerate() {
                let pulled: Vec<usize> = jh.table.iter().map(|&e| gw.table[e]).collect();
                let pulled_rank = fn_rank(&pulled, self.x.size);
                let lhs = &tables[z][pulled_rank];
                let rhs = &tables[w][gw_rank];
                for xe in 0..self.f.on_obj(z).size {
                    if lhs.table[xe] != rhs.table[fh.table[xe]] {
                        return Err(Error::Precondition(format!(
                            "family is not natural at {m} with g={gw}, x={xe}: \
                             θ(z{z}, g∘Jh) sends it to {} but θ(w{w}, g)∘Fh to {}",
                            lhs.table[xe], rhs.table[fh.table[xe]]
                        )));
                    }
                }
            }
        }

        let table: Vec<usize> = self
            .reps
            .iter()
            .map(|&idx| {
                let e = self.element_at(idx);
                tables[e.z][fn_rank(&e.g.table, self.x.size)].table[e.x]
            })
            .collect();

        for (idx, &c) in self.class_of.iter().enumerate() {
            let e = self.element_at(idx);
            let got = tables[e.z][fn_rank(&e.g.table, self.x.size)].table[e.x];
            if got != table[c] {
                return Err(Error::Precondition(format!(
                    "family is inconsistent on a class: {e} maps to {got}, \
                     its representative {} to {}",
                    self.rep(c),
                    table[c]
                )));
            }
        }

        FinFn::new(self.carrier.clone(), cod.clone(), table)
    }

    fn same_functors(&self, other: &LanObject) -> bool {
        *self.j == *other.j && *self.f == *other.f
    }
}

/// The action of `Lan_J F` on `f : X → Y`, as the factorisation of
/// `g ↦ ι(f∘g)` through the source quotient.
pub fn lan_map(src: &LanObject, tgt: &LanObject, f: &FinFn) -> Result<FinFn> {
    if !src.same_functors(tgt) {
        return Err(Error::Shape(
            "source and target extensions are of different functors".into(),
        ));
    }
    if f.dom != src.x || f.cod != tgt.x {
        return Err(Error::Shape(format!(
            "map {f} does not run between the extension points ({} → {})",
            src.x.size, tgt.x.size
        )));
    }
    src.factorize(
        |z, g| tgt.iota(z, &compose(f, g)?),
        &tgt.carrier,
    )
}

/// The component at `X` of `Lan_J τ` for `τ : F ⇒ G`, as the factorisation
/// of `g ↦ ι_G g ∘ τ_z` through the `F`-side quotient.
pub fn lan_nat(src: &LanObject, tgt: &LanObject, tau: &NatTrans) -> Result<FinFn> {
    if *src.j != *tgt.j || src.x != tgt.x {
        return Err(Error::Shape(
            "extensions disagree on the weight or the point".into(),
        ));
    }
    if tau.components.len() != src.j.src.objects() {
        return Err(Error::Shape("transformation has wrong arity".into()));
    }
    src.factorize(
        |z, g| compose(&tgt.iota(z, g)?, tau.component(z)),
        &tgt.carrier,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{
        check_naturality, constant_functor, enumerate_nat_trans, fin_skeleton, j_plus,
        polynomial_functor, subuniverse,
    };
    use crate::finset::enumerate_fns;

    fn rc(f: SetFunctor) -> Rc<SetFunctor> {
        Rc::new(f)
    }

    #[test]
    fn skeleton_weight_collapses_singleton_point() {
        let budget = Budget::default();
        let (_, incl) = fin_skeleton(2, budget).unwrap();
        let j = rc(incl);
        let lan = LanObject::new(&j, &j, &FinSet::of(1), budget).unwrap();
        assert_eq!(lan.classes(), 1);
    }

    #[test]
    fn sum_weight_counts_match_closed_form() {
        let budget = Budget::default();
        let (_, incl) = subuniverse(&[0, 1, 2], budget).unwrap();
        let incl = rc(incl);
        let j = rc(j_plus(&incl, 1));
        // Lan_J F X ≅ F X × X^E whenever X is itself an index object.
        let x = FinSet::of(2);
        let lan = LanObject::new(&j, &incl, &x, budget).unwrap();
        assert_eq!(lan.classes(), 4);
        // F = 1 + z has |F 2| = 3, so the closed form gives 3·2¹ classes.
        let poly = rc(polynomial_functor(&incl, 1, &[1]));
        let lan_poly = LanObject::new(&j, &poly, &x, budget).unwrap();
        assert_eq!(lan_poly.classes(), 6);
    }

    #[test]
    fn empty_functor_has_empty_extension() {
        let budget = Budget::default();
        let (cat, incl) = subuniverse(&[0, 1, 2], budget).unwrap();
        let j = rc(incl);
        let empty = rc(constant_functor(Rc::clone(&cat), FinSet::of(0)));
        let lan = LanObject::new(&j, &empty, &FinSet::of(3), budget).unwrap();
        assert_eq!(lan.classes(), 0);
    }

    #[test]
    fn quotient_respects_every_generator() {
        let budget = Budget::default();
        let (cat, incl) = subuniverse(&[0, 1, 2], budget).unwrap();
        let incl = rc(incl);
        let f = rc(polynomial_functor(&incl, 1, &[1, 2]));
        let x = FinSet::of(2);
        let lan = LanObject::new(&incl, &f, &x, budget).unwrap();
        for m in cat.arrows() {
            let jh = incl.on_arrow_ref(m);
            let fh = f.on_arrow_ref(m);
            for g in lan.maps_from(m.dst) {
                let pulled = compose(&g, jh).unwrap();
                for x_el in 0..f.on_obj(m.src).size {
                    assert_eq!(
                        lan.class_of(m.src, &pulled, x_el).unwrap(),
                        lan.class_of(m.dst, &g, fh.table[x_el]).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn representatives_are_lexicographically_least() {
        let budget = Budget::default();
        let (_, incl) = subuniverse(&[0, 1, 2], budget).unwrap();
        let incl = rc(incl);
        let lan = LanObject::new(&incl, &incl, &FinSet::of(2), budget).unwrap();
        for c in 0..lan.classes() {
            let rep = lan.rep(c);
            let rep_key = (rep.z, rep.g.table.clone(), rep.x);
            for z in 0..3 {
                for g in lan.maps_from(z) {
                    for x in 0..incl.on_obj(z).size {
                        if lan.class_of(z, &g, x).unwrap() == c {
                            assert!(rep_key <= (z, g.table.clone(), x));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn factorize_of_iota_is_identity() {
        let budget = Budget::default();
        let (_, incl) = subuniverse(&[0, 1, 2], budget).unwrap();
        let incl = rc(incl);
        let f = rc(polynomial_functor(&incl, 0, &[1]));
        let lan = LanObject::new(&incl, &f, &FinSet::of(2), budget).unwrap();
        let u = lan.factorize(|z, g| lan.iota(z, g), &lan.carrier.clone()).unwrap();
        assert!(u.is_identity());
    }

    #[test]
    fn factorize_satisfies_the_projection_law() {
        let budget = Budget::default();
        let (_, incl) = subuniverse(&[0, 1, 2], budget).unwrap();
        let incl = rc(incl);
        let lan = LanObject::new(&incl, &incl, &FinSet::of(2), budget).unwrap();
        // A natural family built from a map out of the point: θ g = f ∘ g.
        let f = FinFn::new(FinSet::of(2), FinSet::of(3), vec![2, 0]).unwrap();
        let u = lan
            .factorize(|_, g| compose(&f, g), &FinSet::of(3))
            .unwrap();
        for z in 0..3 {
            for g in lan.maps_from(z) {
                let lhs = compose(&u, &lan.iota(z, &g).unwrap()).unwrap();
                let rhs = compose(&f, &g).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn factorize_rejects_non_natural_families() {
        let budget = Budget::default();
        let (_, incl) = subuniverse(&[0, 1, 2], budget).unwrap();
        let incl = rc(incl);
        let lan = LanObject::new(&incl, &incl, &FinSet::of(2), budget).unwrap();
        // Depends on the rank of g alone, which no natural family does.
        let err = lan
            .factorize(
                |z, g| {
                    let parity = fn_rank(&g.table, 2) % 2;
                    FinFn::constant(incl.on_obj(z), &FinSet::of(2), parity)
                },
                &FinSet::of(2),
            )
            .unwrap_err();
        assert!(matches!(err, Error::Precondition(_)));
        assert!(err.to_string().contains("not natural"));
    }

    #[test]
    fn factorizations_are_unique_among_all_candidates() {
        let budget = Budget::default();
        let (cat, incl) = subuniverse(&[0, 1, 2], budget).unwrap();
        let incl = rc(incl);
        let x = FinSet::of(2);
        let y = FinSet::of(2);
        let lan = LanObject::new(&incl, &incl, &x, budget).unwrap();
        // Enumerate every natural family θ as a transformation between the
        // contravariant functors z ↦ (J z → X) and z ↦ (F z → Y).
        let opcat = Rc::new(cat.op());
        let mk_presheaf = |target: &FinSet| {
            SetFunctor::from_arrow_fn(
                Rc::clone(&opcat),
                (0..3).map(|z| FinSet::of(target.size.pow(incl.on_obj(z).size as u32))).collect(),
                |m| {
                    // m : z → w in the opposite is h : w → z; act g ↦ g∘Jh.
                    let h = incl.on_arrow_ref(crate::fincat::Mor {
                        src: m.dst,
                        dst: m.src,
                        idx: m.idx,
                    });
                    let dom_size = target.size.pow(incl.on_obj(m.src).size as u32);
                    let table = (0..dom_size)
                        .map(|r| {
                            let g = fn_unrank(r, incl.on_obj(m.src).size, target.size);
                            let pulled: Vec<usize> =
                                h.table.iter().map(|&e| g[e]).collect();
                            fn_rank(&pulled, target.size)
                        })
                        .collect();
                    FinFn {
                        dom: FinSet::of(dom_size),
                        cod: FinSet::of(target.size.pow(incl.on_obj(m.dst).size as u32)),
                        table,
                    }
                },
            )
            .unwrap()
        };
        let hom_jx = mk_presheaf(&x);
        let hom_fy = mk_presheaf(&y);
        let families = enumerate_nat_trans(&hom_jx, &hom_fy, budget).unwrap();
        assert!(!families.is_empty());
        let all_candidates = enumerate_fns(&lan.carrier, &y, budget).unwrap();
        for tau in &families {
            assert!(check_naturality(&hom_jx, &hom_fy, tau, budget).unwrap().all_pass());
            let mut theta = |z: usize, g: &FinFn| {
                let r = fn_rank(&g.table, x.size);
                let out = tau.component(z).table[r];
                FinFn::new(
                    incl.on_obj(z).clone(),
                    y.clone(),
                    fn_unrank(out, incl.on_obj(z).size, y.size),
                )
            };
            let u = lan.factorize(&mut theta, &y).unwrap();
            let matching: Vec<&FinFn> = all_candidates
                .iter()
                .filter(|cand| {
                    (0..3).all(|z| {
                        lan.maps_from(z).all(|g| {
                            let via = compose(cand, &lan.iota(z, &g).unwrap()).unwrap();
                            let direct = theta(z, &g).unwrap();
                            via == direct
                        })
                    })
                })
                .collect();
            assert_eq!(matching, vec![&u]);
        }
    }

    #[test]
    fn lan_map_is_functorial() {
        let budget = Budget::default();
        let (_, incl) = subuniverse(&[0, 1, 2], budget).unwrap();
        let incl = rc(incl);
        let f = rc(polynomial_functor(&incl, 1, &[1]));
        let x = FinSet::of(2);
        let y = FinSet::of(3);
        let z = FinSet::of(2);
        let lx = LanObject::new(&incl, &f, &x, budget).unwrap();
        let ly = LanObject::new(&incl, &f, &y, budget).unwrap();
        let lz = LanObject::new(&incl, &f, &z, budget).unwrap();
        assert!(lan_map(&lx, &lx, &FinFn::identity(&x)).unwrap().is_identity());
        for p in enumerate_fns(&x, &y, budget).unwrap() {
            let lp = lan_map(&lx, &ly, &p).unwrap();
            for q in enumerate_fns(&y, &z, budget).unwrap() {
                let lq = lan_map(&ly, &lz, &q).unwrap();
                let direct = lan_map(&lx, &lz, &compose(&q, &p).unwrap()).unwrap();
                assert_eq!(direct, compose(&lq, &lp).unwrap());
            }
        }
    }

    #[test]
    fn lan_nat_of_identity_is_identity() {
        let budget = Budget::default();
        let (cat, incl) = subuniverse(&[0, 1, 2], budget).unwrap();
        let incl = rc(incl);
        let lan = LanObject::new(&incl, &incl, &FinSet::of(3), budget).unwrap();
        let id = NatTrans {
            components: (0..cat.objects())
                .map(|z| FinFn::identity(incl.on_obj(z)))
                .collect(),
        };
        assert!(lan_nat(&lan, &lan, &id).unwrap().is_identity());
    }

    #[test]
    fn lan_nat_commutes_with_iota() {
        let budget = Budget::default();
        let (_, incl) = subuniverse(&[0, 1, 2], budget).unwrap();
        let incl = rc(incl);
        let g = rc(polynomial_functor(&incl, 1, &[1]));
        let x = FinSet::of(2);
        let lf = LanObject::new(&incl, &incl, &x, budget).unwrap();
        let lg = LanObject::new(&incl, &g, &x, budget).unwrap();
        // τ : Id ⇒ 1 + Id is the right-summand injection, pointwise z ↦ 1+z.
        let tau = NatTrans {
            components: (0..3)
                .map(|z| {
                    FinFn::new(
                        incl.on_obj(z).clone(),
                        g.on_obj(z).clone(),
                        (0..incl.on_obj(z).size).map(|e| e + 1).collect(),
                    )
                    .unwrap()
                })
                .collect(),
        };
        let ln = lan_nat(&lf, &lg, &tau).unwrap();
        for z in 0..3 {
            for gm in lf.maps_from(z) {
                let lhs = compose(&ln, &lf.iota(z, &gm).unwrap()).unwrap();
                let rhs = compose(&lg.iota(z, &gm).unwrap(), tau.component(z)).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn budget_refusal_counts_coend_points() {
        let (_, incl) = subuniverse(&[0, 1, 2], Budget::default()).unwrap();
        let incl = rc(incl);
        let err = LanObject::new(&incl, &incl, &FinSet::of(64), Budget(100)).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { .. }));
    }
}
