//! Functors out of a finite category, either into skeletal finite sets
//! ([`SetFunctor`]) or into another finite category ([`CatFunctor`]), and
//! natural transformations between set-valued functors.

use std::rc::Rc;

use rand::Rng;

use crate::budget::Budget;
use crate::finset::{compose, fn_rank, fn_unrank, FinFn, FinSet};
use crate::report::Report;
use crate::{Error, Result};

use super::{FinCat, Mor};

/// A functor `src → Set` given by explicit object and arrow tables.
#[derive(Debug, Clone, PartialEq)]
pub struct SetFunctor {
    pub src: Rc<FinCat>,
    obj: Vec<FinSet>,
    /// `arr[x][y][idx]` is the table of `F(x→y#idx) : F x → F y`.
    arr: Vec<Vec<Vec<FinFn>>>,
}

impl SetFunctor {
    /// Builds from an arrow rule, validating endpoint sizes.
    pub fn from_arrow_fn(
        src: Rc<FinCat>,
        obj: Vec<FinSet>,
        mut action: impl FnMut(Mor) -> FinFn,
    ) -> Result<Self> {
        let n = src.objects();
        if obj.len() != n {
            return Err(Error::Shape(format!(
                "functor object table has {} entries for {} objects",
                obj.len(),
                n
            )));
        }
        let mut arr = Vec::with_capacity(n);
        for x in 0..n {
            let mut per_y = Vec::with_capacity(n);
            for y in 0..n {
                let mut maps = Vec::with_capacity(src.hom_size(x, y));
                for m in src.arrows_between(x, y) {
                    let f = action(m);
                    if f.dom != obj[x] || f.cod != obj[y] {
                        return Err(Error::Shape(format!(
                            "action on {m} is {f}, expected {} -> {}",
                            obj[x].size, obj[y].size
                        )));
                    }
                    maps.push(f);
                }
                per_y.push(maps);
            }
            arr.push(per_y);
        }
        Ok(SetFunctor { src, obj, arr })
    }

    pub fn on_obj(&self, x: usize) -> &FinSet {
        &self.obj[x]
    }

    pub fn on_arrow(&self, m: Mor) -> FinFn {
        self.arr[m.src][m.dst][m.idx].clone()
    }

    pub fn on_arrow_ref(&self, m: Mor) -> &FinFn {
        &self.arr[m.src][m.dst][m.idx]
    }
}

/// A functor between finite categories, by object and arrow index tables.
#[derive(Debug, Clone, PartialEq)]
pub struct CatFunctor {
    pub src: Rc<FinCat>,
    pub tgt: Rc<FinCat>,
    obj: Vec<usize>,
    arr: Vec<Vec<Vec<usize>>>,
}

impl CatFunctor {
    pub fn from_arrow_fn(
        src: Rc<FinCat>,
        tgt: Rc<FinCat>,
        obj: Vec<usize>,
        mut action: impl FnMut(Mor) -> usize,
    ) -> Result<Self> {
        let n = src.objects();
        if obj.len() != n {
            return Err(Error::Shape(format!(
                "functor object table has {} entries for {} objects",
                obj.len(),
                n
            )));
        }
        if let Some(&o) = obj.iter().find(|&&o| o >= tgt.objects()) {
            return Err(Error::Shape(format!("object image {o} outside target")));
        }
        let mut arr = Vec::with_capacity(n);
        for x in 0..n {
            let mut per_y = Vec::with_capacity(n);
            for y in 0..n {
                let mut maps = Vec::with_capacity(src.hom_size(x, y));
                for m in src.arrows_between(x, y) {
                    let idx = action(m);
                    if idx >= tgt.hom_size(obj[x], obj[y]) {
                        return Err(Error::Shape(format!(
                            "action on {m} has index {idx}, hom({},{}) has {}",
                            obj[x],
                            obj[y],
                            tgt.hom_size(obj[x], obj[y])
                        )));
                    }
                    maps.push(idx);
                }
                per_y.push(maps);
            }
            arr.push(per_y);
        }
        Ok(CatFunctor { src, tgt, obj, arr })
    }

    pub fn on_obj(&self, x: usize) -> usize {
        self.obj[x]
    }

    pub fn on_arrow(&self, m: Mor) -> Mor {
        Mor {
            src: self.obj[m.src],
            dst: self.obj[m.dst],
            idx: self.arr[m.src][m.dst][m.idx],
        }
    }
}

/// `outer ∘ inner : C → Set` for `inner : C → D`, `outer : D → Set`.
pub fn compose_set_functor(outer: &SetFunctor, inner: &CatFunctor) -> Result<SetFunctor> {
    if *outer.src != *inner.tgt {
        return Err(Error::Shape(
            "composition endpoints do not meet: outer source differs from inner target".into(),
        ));
    }
    let obj = (0..inner.src.objects())
        .map(|x| outer.on_obj(inner.on_obj(x)).clone())
        .collect();
    SetFunctor::from_arrow_fn(Rc::clone(&inner.src), obj, |m| {
        outer.on_arrow(inner.on_arrow(m))
    })
}

/// Functor laws for a set-valued functor: identities and all composites.
pub fn check_set_functor(f: &SetFunctor, budget: Budget) -> Result<Report> {
    let cat = &f.src;
    let n = cat.objects();
    let mut pair_count: u128 = 0;
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                pair_count += (cat.hom_size(x, y) * cat.hom_size(y, z)) as u128;
            }
        }
    }
    budget.admit("functor composable pairs", pair_count)?;

    let mut report = Report::new();
    let mut id_witness = None;
    for x in 0..n {
        if !f.on_arrow_ref(cat.id(x)).is_identity() {
            id_witness.get_or_insert(format!(
                "action on id of object {x} is {}, not the identity",
                f.on_arrow_ref(cat.id(x))
            ));
        }
    }
    report.equation("functor/identity", n as u64, id_witness);

    let mut comp_witness = None;
    let mut cases = 0u64;
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                for g in cat.arrows_between(y, z) {
                    let fg = f.on_arrow_ref(g);
                    for m in cat.arrows_between(x, y) {
                        cases += 1;
                        let direct = f.on_arrow_ref(cat.compose(g, m)?);
                        let staged = compose(fg, f.on_arrow_ref(m))?;
                        if *direct != staged {
                            comp_witness.get_or_insert(format!(
                                "action on {g} ∘ {m} is {direct}, but composing actions gives {staged}"
                            ));
                        }
                    }
                }
            }
        }
    }
    report.equation("functor/composition", cases, comp_witness);
    Ok(report)
}

/// Functor laws for a functor between finite categories.
pub fn check_cat_functor(f: &CatFunctor, budget: Budget) -> Result<Report> {
    let cat = &f.src;
    let n = cat.objects();
    let mut pair_count: u128 = 0;
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                pair_count += (cat.hom_size(x, y) * cat.hom_size(y, z)) as u128;
            }
        }
    }
    budget.admit("functor composable pairs", pair_count)?;

    let mut report = Report::new();
    let mut id_witness = None;
    for x in 0..n {
        let image = f.on_arrow(cat.id(x));
        if image != f.tgt.id(f.on_obj(x)) {
            id_witness.get_or_insert(format!("action on id of object {x} is {image}"));
        }
    }
    report.equation("functor/identity", n as u64, id_witness);

    let mut comp_witness = None;
    let mut cases = 0u64;
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                for g in cat.arrows_between(y, z) {
                    for m in cat.arrows_between(x, y) {
                        cases += 1;
                        let direct = f.on_arrow(cat.compose(g, m)?);
                        let staged = f.tgt.compose(f.on_arrow(g), f.on_arrow(m))?;
                        if direct != staged {
                            comp_witness.get_or_insert(format!(
                                "action on {g} ∘ {m} is {direct}, composing actions gives {staged}"
                            ));
                        }
                    }
                }
            }
        }
    }
    report.equation("functor/composition", cases, comp_witness);
    Ok(report)
}

/// A natural transformation between two set-valued functors on the same
/// source, as one component table per object.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NatTrans {
    pub components: Vec<FinFn>,
}

impl NatTrans {
    pub fn component(&self, x: usize) -> &FinFn {
        &self.components[x]
    }

    /// Key for deterministic ordering: flattened component tables.
    pub fn flat_key(&self) -> Vec<usize> {
        self.components
            .iter()
            .flat_map(|c| c.table.iter().copied())
            .collect()
    }
}

/// Naturality of `t : f ⇒ g` over every arrow of the source.
pub fn check_naturality(
    f: &SetFunctor,
    g: &SetFunctor,
    t: &NatTrans,
    budget: Budget,
) -> Result<Report> {
    if *f.src != *g.src {
        return Err(Error::Shape("functors live on different categories".into()));
    }
    let cat = &f.src;
    let n = cat.objects();
    if t.components.len() != n {
        return Err(Error::Shape(format!(
            "{} components for {} objects",
            t.components.len(),
            n
        )));
    }
    for x in 0..n {
        let c = &t.components[x];
        if c.dom != *f.on_obj(x) || c.cod != *g.on_obj(x) {
            return Err(Error::Shape(format!(
                "component at {x} is {c}, expected {} -> {}",
                f.on_obj(x).size,
                g.on_obj(x).size
            )));
        }
    }
    let arrow_count: u128 = (0..n)
        .flat_map(|x| (0..n).map(move |y| (x, y)))
        .map(|(x, y)| cat.hom_size(x, y) as u128)
        .sum();
    budget.admit("naturality squares", arrow_count)?;

    let mut witness = None;
    let mut cases = 0u64;
    for m in cat.arrows() {
        cases += 1;
        let lhs = compose(&t.components[m.dst], f.on_arrow_ref(m))?;
        let rhs = compose(g.on_arrow_ref(m), &t.components[m.src])?;
        if lhs != rhs {
            witness.get_or_insert(format!(
                "square at {m}: t∘F = {lhs} but G∘t = {rhs}"
            ));
        }
    }
    let mut report = Report::new();
    report.equation("naturality", cases, witness);
    Ok(report)
}

/// The constant functor at `value` (arrows act as the identity).
pub fn constant_functor(src: Rc<FinCat>, value: FinSet) -> SetFunctor {
    let n = src.objects();
    SetFunctor::from_arrow_fn(src, vec![value.clone(); n], |_| FinFn::identity(&value))
        .expect("constant functor is well-shaped")
}

/// Polynomial functor `z ↦ c + Σᵢ zᵃⁱ` over an inclusion-like functor
/// `base` (its object sets are the `z`). Power blocks are rank-encoded in
/// the order given; arrows act by post-composition on each block.
pub fn polynomial_functor(base: &SetFunctor, constant: usize, powers: &[usize]) -> SetFunctor {
    let src = Rc::clone(&base.src);
    let value_size = |z: usize| -> usize {
        let s = base.on_obj(z).size;
        constant
            + powers
                .iter()
                .map(|&a| s.checked_pow(a as u32).expect("polynomial size overflow"))
                .sum::<usize>()
    };
    let obj: Vec<FinSet> = (0..src.objects()).map(|z| FinSet::of(value_size(z))).collect();
    SetFunctor::from_arrow_fn(Rc::clone(&src), obj.clone(), |m| {
        let f = base.on_arrow_ref(m);
        let (s_dom, s_cod) = (f.dom.size, f.cod.size);
        let mut table = Vec::with_capacity(obj[m.src].size);
        for e in 0..constant {
            table.push(e);
        }
        let mut cod_offset = constant;
        for &a in powers {
            for r in 0..s_dom.pow(a as u32) {
                let tuple = fn_unrank(r, a, s_dom);
                let mapped: Vec<usize> = tuple.iter().map(|&v| f.table[v]).collect();
                table.push(cod_offset + fn_rank(&mapped, s_cod));
            }
            cod_offset += s_cod.pow(a as u32);
        }
        FinFn {
            dom: obj[m.src].clone(),
            cod: obj[m.dst].clone(),
            table,
        }
    })
    .expect("polynomial functor is well-shaped")
}

/// A seeded random polynomial functor: small constant, up to three power
/// blocks with exponents at most `max_exp`.
pub fn random_polynomial(
    rng: &mut impl Rng,
    base: &SetFunctor,
    max_constant: usize,
    max_blocks: usize,
    max_exp: usize,
) -> SetFunctor {
    let constant = rng.gen_range(0..=max_constant);
    let blocks = rng.gen_range(0..=max_blocks);
    let powers: Vec<usize> = (0..blocks).map(|_| rng.gen_range(0..=max_exp)).collect();
    polynomial_functor(base, constant, &powers)
}

/// `z ↦ z × s` over an inclusion-like `base`, pairing row-major with the
/// `s` component last.
pub fn j_times(base: &SetFunctor, s: usize) -> SetFunctor {
    let src = Rc::clone(&base.src);
    let obj: Vec<FinSet> = (0..src.objects())
        .map(|z| FinSet::of(base.on_obj(z).size * s))
        .collect();
    SetFunctor::from_arrow_fn(Rc::clone(&src), obj.clone(), |m| {
        let f = base.on_arrow_ref(m);
        let mut table = Vec::with_capacity(obj[m.src].size);
        for i in 0..f.dom.size {
            for k in 0..s {
                table.push(f.table[i] * s + k);
            }
        }
        FinFn {
            dom: obj[m.src].clone(),
            cod: obj[m.dst].clone(),
            table,
        }
    })
    .expect("product functor is well-shaped")
}

/// `z ↦ z + e` over an inclusion-like `base`, left summand first.
pub fn j_plus(base: &SetFunctor, e: usize) -> SetFunctor {
    let src = Rc::clone(&base.src);
    let obj: Vec<FinSet> = (0..src.objects())
        .map(|z| FinSet::of(base.on_obj(z).size + e))
        .collect();
    SetFunctor::from_arrow_fn(Rc::clone(&src), obj.clone(), |m| {
        let f = base.on_arrow_ref(m);
        let mut table: Vec<usize> = f.table.clone();
        table.extend((0..e).map(|k| f.cod.size + k));
        FinFn {
            dom: obj[m.src].clone(),
            cod: obj[m.dst].clone(),
            table,
        }
    })
    .expect("sum functor is well-shaped")
}

/// The presheaf `hom(−, x)` on `opcat`, which must be the opposite of
/// `cat`. Element `i` of the value at `z` is the arrow `z→x#i` of `cat`;
/// an op-arrow acts by precomposition.
pub fn representable_presheaf(
    cat: &Rc<FinCat>,
    opcat: &Rc<FinCat>,
    x: usize,
) -> Result<SetFunctor> {
    if **opcat != cat.op() {
        return Err(Error::Shape("second argument is not the opposite category".into()));
    }
    let obj: Vec<FinSet> = (0..cat.objects())
        .map(|z| FinSet::of(cat.hom_size(z, x)))
        .collect();
    SetFunctor::from_arrow_fn(Rc::clone(opcat), obj.clone(), |m| {
        // m : z → w in the opposite is h : w → z in cat; act by f ↦ f ∘ h.
        let h = Mor {
            src: m.dst,
            dst: m.src,
            idx: m.idx,
        };
        let table = (0..cat.hom_size(m.src, x))
            .map(|i| {
                cat.compose(
                    Mor {
                        src: m.src,
                        dst: x,
                        idx: i,
                    },
                    h,
                )
                .expect("representable composition shape")
                .idx
            })
            .collect();
        FinFn {
            dom: obj[m.src].clone(),
            cod: obj[m.dst].clone(),
            table,
        }
    })
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::super::subuniverse;
    use super::*;

    fn universe() -> (Rc<FinCat>, SetFunctor) {
        subuniverse(&[0, 1, 2], Budget::default()).unwrap()
    }

    #[test]
    fn inclusion_is_a_lawful_functor() {
        let (_, incl) = universe();
        assert!(check_set_functor(&incl, Budget::default()).unwrap().all_pass());
    }

    #[test]
    fn polynomial_action_matches_hand_computation() {
        let (cat, incl) = universe();
        // F z = 1 + z², objects sized 1, 2, 5 over the universe {0, 1, 2}.
        let f = polynomial_functor(&incl, 1, &[2]);
        assert_eq!(f.on_obj(0).size, 1);
        assert_eq!(f.on_obj(1).size, 2);
        assert_eq!(f.on_obj(2).size, 5);
        assert!(check_set_functor(&f, Budget::default()).unwrap().all_pass());
        // The swap on the two-element object sends the pair (i, j) to
        // (swap i, swap j); pairs are rank-encoded after the constant.
        let swap = cat
            .arrows_between(2, 2)
            .find(|&m| incl.on_arrow_ref(m).table == [1, 0])
            .unwrap();
        // Ranks: (0,0)=0, (0,1)=1, (1,0)=2, (1,1)=3, all shifted by one;
        // the swap therefore acts as 0↦3, 1↦2, 2↦1, 3↦0 on pair ranks.
        assert_eq!(f.on_arrow_ref(swap).table, [0, 4, 3, 2, 1]);
    }

    #[test]
    fn zeroth_power_is_a_constant_block() {
        let (_, incl) = universe();
        let f = polynomial_functor(&incl, 0, &[0, 1]);
        assert_eq!(f.on_obj(0).size, 1);
        assert_eq!(f.on_obj(2).size, 3);
        assert!(check_set_functor(&f, Budget::default()).unwrap().all_pass());
    }

    #[test]
    fn product_and_sum_functors_are_lawful_with_expected_tables() {
        let (cat, incl) = universe();
        let jt = j_times(&incl, 2);
        let jp = j_plus(&incl, 1);
        assert!(check_set_functor(&jt, Budget::default()).unwrap().all_pass());
        assert!(check_set_functor(&jp, Budget::default()).unwrap().all_pass());
        assert_eq!(jt.on_obj(2).size, 4);
        assert_eq!(jp.on_obj(2).size, 3);
        let swap = cat
            .arrows_between(2, 2)
            .find(|&m| incl.on_arrow_ref(m).table == [1, 0])
            .unwrap();
        // (i, k) ↦ (swap i, k) row-major; the sum fixes the extra point.
        assert_eq!(jt.on_arrow_ref(swap).table, [2, 3, 0, 1]);
        assert_eq!(jp.on_arrow_ref(swap).table, [1, 0, 2]);
    }

    #[test]
    fn constant_functor_is_lawful() {
        let (cat, _) = universe();
        let k = constant_functor(Rc::clone(&cat), FinSet::of(3));
        assert!(check_set_functor(&k, Budget::default()).unwrap().all_pass());
        for m in cat.arrows() {
            assert!(k.on_arrow_ref(m).is_identity());
        }
    }

    #[test]
    fn representable_presheaf_is_lawful_with_hom_sizes() {
        let (cat, _) = universe();
        let opcat = Rc::new(cat.op());
        let y = representable_presheaf(&cat, &opcat, 2).unwrap();
        assert!(check_set_functor(&y, Budget::default()).unwrap().all_pass());
        for z in 0..cat.objects() {
            assert_eq!(y.on_obj(z).size, cat.hom_size(z, 2));
        }
        let wrong = Rc::clone(&cat);
        assert!(representable_presheaf(&cat, &wrong, 2).is_err());
    }

    #[test]
    fn naturality_checker_accepts_and_rejects() {
        let (cat, incl) = universe();
        let f = polynomial_functor(&incl, 0, &[1]);
        let id = NatTrans {
            components: (0..cat.objects())
                .map(|z| FinFn::identity(incl.on_obj(z)))
                .collect(),
        };
        assert!(check_naturality(&incl, &f, &id, Budget::default())
            .unwrap()
            .all_pass());
        let mut bad = id.clone();
        bad.components[2].table = vec![0, 0];
        let report = check_naturality(&incl, &f, &bad, Budget::default()).unwrap();
        assert!(!report.all_pass());
        let failure = report.failures().next().unwrap();
        assert!(failure.detail.as_ref().unwrap().contains("square"));
    }

    #[test]
    fn random_polynomials_are_seed_deterministic_and_lawful() {
        let (_, incl) = universe();
        let mut a = ChaCha8Rng::seed_from_u64(7);
        let mut b = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..10 {
            let fa = random_polynomial(&mut a, &incl, 2, 3, 2);
            let fb = random_polynomial(&mut b, &incl, 2, 3, 2);
            assert_eq!(fa, fb);
            assert!(check_set_functor(&fa, Budget::default()).unwrap().all_pass());
        }
    }

    #[test]
    fn composition_with_a_cat_functor_relabels_objects() {
        let (cat, incl) = universe();
        // The endofunctor that collapses everything onto the one-point
        // object by constant arrows.
        let point = CatFunctor::from_arrow_fn(
            Rc::clone(&cat),
            Rc::clone(&cat),
            vec![1; cat.objects()],
            |_| 0,
        )
        .unwrap();
        assert!(check_cat_functor(&point, Budget::default()).unwrap().all_pass());
        let composed = compose_set_functor(&incl, &point).unwrap();
        for z in 0..cat.objects() {
            assert_eq!(composed.on_obj(z).size, 1);
        }
        assert!(check_set_functor(&composed, Budget::default()).unwrap().all_pass());
    }
}
