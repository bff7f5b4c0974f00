//! Splittings of a relative monad through an auxiliary category.
//!
//! A splitting is a category `D` with functors `L : 𝕁 → D` and
//! `R : D → Set` plus a bijection `φ : maps(J X, R Y) ≅ D(L X, Y)`,
//! natural in both variables, such that `R∘L`, `φ⁻¹(id)`, and
//! `k ↦ R(φ k)` recover the monad's carriers, units, and lifting.  The
//! Kleisli category and the algebra category both split a lawful monad,
//! and they sit at the two ends of the range: every splitting receives a
//! unique structure-preserving functor from the Kleisli one and emits a
//! unique one into the algebra one.
//!
//! [`splitting_morphisms`] builds both canonical functors and verifies
//! their defining equations; the uniqueness claims are settled by
//! enumerating the full candidate space when it fits the budget and are
//! otherwise reported as skipped, never assumed.

use std::rc::Rc;

use crate::budget::Budget;
use crate::fincat::{check_cat_functor, CatFunctor, FinCat, Mor, SetFunctor};
use crate::finset::{compose, count_fns, fn_rank, fn_unrank, FinFn};
use crate::kleisli_em::em::{em_check, em_morphism_check, free_em, EMAlgebra};
use crate::kleisli_em::{kleisli_build, KleisliCat};
use crate::relmon::{merge_tagged, RelMonadData};
use crate::report::{Check, Report};
use crate::{Error, Result};

/// A category through which a relative monad factors, with the mediating
/// bijection stored as explicit rank tables.
#[derive(Clone)]
pub struct Splitting {
    /// The restriction the monad is relative to.
    pub j: Rc<SetFunctor>,
    /// The factoring category `D`.
    pub cat: Rc<FinCat>,
    /// `L : 𝕁 → D`.
    pub left: CatFunctor,
    /// `R : D → Set`.
    pub right: SetFunctor,
    /// `phi[x][y][rank of k] = index of φ k in hom(L x, y)`.
    phi: Vec<Vec<Vec<usize>>>,
    /// Inverse tables: `unphi[x][y][index] = rank`.
    unphi: Vec<Vec<Vec<usize>>>,
}

impl std::fmt::Debug for Splitting {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Splitting")
            .field("objects", &self.cat.objects())
            .finish_non_exhaustive()
    }
}

impl Splitting {
    /// Bundles the data, checking the endpoints line up and that every
    /// `phi[x][y]` is a bijection onto the hom-set it lands in.
    pub fn new(
        j: Rc<SetFunctor>,
        cat: Rc<FinCat>,
        left: CatFunctor,
        right: SetFunctor,
        phi: Vec<Vec<Vec<usize>>>,
        budget: Budget,
    ) -> Result<Splitting> {
        if *left.src != *j.src {
            return Err(Error::Shape(
                "the left functor does not start at the index category".into(),
            ));
        }
        if *left.tgt != *cat || *right.src != *cat {
            return Err(Error::Shape(
                "the functors do not meet in the factoring category".into(),
            ));
        }
        let n_j = j.src.objects();
        let n_d = cat.objects();
        if phi.len() != n_j {
            return Err(Error::Shape(format!(
                "phi has {} rows for {n_j} index objects",
                phi.len()
            )));
        }
        let mut unphi = Vec::with_capacity(n_j);
        for (x, row) in phi.iter().enumerate() {
            if row.len() != n_d {
                return Err(Error::Shape(format!(
                    "phi row {x} has {} entries for {n_d} objects",
                    row.len()
                )));
            }
            let mut inv_row = Vec::with_capacity(n_d);
            for (y, table) in row.iter().enumerate() {
                let maps = count_fns(j.on_obj(x), right.on_obj(y), budget)?;
                let hom = cat.hom_size(left.on_obj(x), y);
                if maps != hom as u64 || table.len() as u64 != maps {
                    return Err(Error::Shape(format!(
                        "phi at (X{x}, D{y}) relates {maps} maps to a hom-set of size {hom} \
                         via {} entries",
                        table.len()
                    )));
                }
                let mut inv = vec![usize::MAX; hom];
                for (rank, &idx) in table.iter().enumerate() {
                    if idx >= hom {
                        return Err(Error::Shape(format!(
                            "phi at (X{x}, D{y}) sends rank {rank} to {idx}, hom has {hom}"
                        )));
                    }
                    if inv[idx] != usize::MAX {
                        return Err(Error::Shape(format!(
                            "phi at (X{x}, D{y}) is not injective: ranks {} and {rank} \
                             both land on {idx}",
                            inv[idx]
                        )));
                    }
                    inv[idx] = rank;
                }
                inv_row.push(inv);
            }
            unphi.push(inv_row);
        }
        Ok(Splitting {
            j,
            cat,
            left,
            right,
            phi,
            unphi,
        })
    }

    /// `φ k : L x → y` for `k : J x → R y`.
    pub fn phi(&self, x: usize, y: usize, k: &FinFn) -> Result<Mor> {
        if x >= self.phi.len() || y >= self.cat.objects() {
            return Err(Error::Scope {
                index: x.max(y),
                scope: self.phi.len().max(self.cat.objects()),
            });
        }
        if k.dom != *self.j.on_obj(x) || k.cod != *self.right.on_obj(y) {
            return Err(Error::Shape(format!(
                "map {k} is not J({x}) → R({y}) ({} → {})",
                self.j.on_obj(x).size,
                self.right.on_obj(y).size
            )));
        }
        Ok(Mor {
            src: self.left.on_obj(x),
            dst: y,
            idx: self.phi[x][y][fn_rank(&k.table, k.cod.size)],
        })
    }

    /// `φ⁻¹ m : J x → R y` for `m : L x → y`.
    pub fn phi_inv(&self, x: usize, m: Mor) -> Result<FinFn> {
        if x >= self.phi.len() || m.dst >= self.cat.objects() {
            return Err(Error::Scope {
                index: x.max(m.dst),
                scope: self.phi.len().max(self.cat.objects()),
            });
        }
        if m.src != self.left.on_obj(x) || m.idx >= self.cat.hom_size(m.src, m.dst) {
            return Err(Error::Shape(format!(
                "arrow {m} does not start at L({x}) = {}",
                self.left.on_obj(x)
            )));
        }
        let dom = self.j.on_obj(x).clone();
        let cod = self.right.on_obj(m.dst).clone();
        let table = fn_unrank(self.unphi[x][m.dst][m.idx], dom.size, cod.size);
        Ok(FinFn { dom, cod, table })
    }

    /// The monad the splitting presents: carriers `R(L x)`, units
    /// `φ⁻¹(id)`, lifting `k ↦ R(φ k)`.
    pub fn induced_monad(&self) -> Result<RelMonadData> {
        let n_j = self.j.src.objects();
        let mut t = Vec::with_capacity(n_j);
        let mut unit = Vec::with_capacity(n_j);
        for x in 0..n_j {
            let lx = self.left.on_obj(x);
            t.push(self.right.on_obj(lx).clone());
            unit.push(self.phi_inv(x, self.cat.id(lx))?);
        }
        let s = self.clone();
        let star = Rc::new(move |x: usize, y: usize, k: &FinFn| -> Result<FinFn> {
            let m = s.phi(x, s.left.on_obj(y), k)?;
            Ok(s.right.on_arrow(m))
        });
        RelMonadData::new(Rc::clone(&self.j), t, unit, star)
    }
}

/// Checks that `s` splits `t`: the induced data matches and `φ` is
/// natural in both variables.
pub fn splitting_check(t: &RelMonadData, s: &Splitting, budget: Budget) -> Result<Report> {
    if *t.j != *s.j {
        return Err(Error::Shape(
            "the splitting is over a different restriction".into(),
        ));
    }
    let n_j = t.objects();
    let n_d = s.cat.objects();
    let mut report = Report::new();

    let mut witness = None;
    let mut cases = 0u64;
    'monad: for x in 0..n_j {
        let lx = s.left.on_obj(x);
        cases += 1;
        if *s.right.on_obj(lx) != t.t[x] {
            witness = Some(format!(
                "at X{x}: R(L x) has size {}, T x has {}",
                s.right.on_obj(lx).size,
                t.t[x].size
            ));
            break;
        }
        let eta = s.phi_inv(x, s.cat.id(lx))?;
        if eta != t.unit[x] {
            witness = Some(format!(
                "at X{x}: φ⁻¹(id) = {eta} but η = {}",
                t.unit[x]
            ));
            break;
        }
        for y in 0..n_j {
            let k_count = count_fns(t.j.on_obj(x), &t.t[y], budget)? as usize;
            for r in 0..k_count {
                let k = FinFn {
                    dom: t.j.on_obj(x).clone(),
                    cod: t.t[y].clone(),
                    table: fn_unrank(r, t.j.on_obj(x).size, t.t[y].size),
                };
                cases += 1;
                let via = s.right.on_arrow(s.phi(x, s.left.on_obj(y), &k)?);
                let direct = t.star(x, y, &k)?;
                if via != direct {
                    witness = Some(format!(
                        "at (X{x}, Y{y}, k={k}): R(φ k) = {via} but k* = {direct}"
                    ));
                    break 'monad;
                }
            }
        }
    }
    report.equation("splitting/induces-monad", cases, witness);

    let mut left_cases: u128 = 0;
    for m in t.j.src.arrows() {
        for y in 0..n_d {
            left_cases += count_fns(t.j.on_obj(m.dst), s.right.on_obj(y), budget)? as u128;
        }
    }
    budget.admit("splitting naturality squares", left_cases)?;

    let mut witness = None;
    let mut cases = 0u64;
    'left: for m in t.j.src.arrows() {
        for y in 0..n_d {
            let k_count = count_fns(t.j.on_obj(m.dst), s.right.on_obj(y), budget)? as usize;
            for r in 0..k_count {
                let k = FinFn {
                    dom: t.j.on_obj(m.dst).clone(),
                    cod: s.right.on_obj(y).clone(),
                    table: fn_unrank(r, t.j.on_obj(m.dst).size, s.right.on_obj(y).size),
                };
                cases += 1;
                let lhs = s.phi(m.src, y, &compose(&k, t.j.on_arrow_ref(m))?)?;
                let rhs = s.cat.compose(s.phi(m.dst, y, &k)?, s.left.on_arrow(m))?;
                if lhs != rhs {
                    witness = Some(format!(
                        "at ({m} in the index, D{y}, k={k}): φ(k∘Jm) = {lhs} but φ(k)∘Lm = {rhs}"
                    ));
                    break 'left;
                }
            }
        }
    }
    report.equation("splitting/natural-left", cases, witness);

    let mut right_cases: u128 = 0;
    for d in s.cat.arrows() {
        for x in 0..n_j {
            right_cases += count_fns(t.j.on_obj(x), s.right.on_obj(d.src), budget)? as u128;
        }
    }
    budget.admit("splitting naturality squares", right_cases)?;

    let mut witness = None;
    let mut cases = 0u64;
    'right: for d in s.cat.arrows() {
        for x in 0..n_j {
            let k_count = count_fns(t.j.on_obj(x), s.right.on_obj(d.src), budget)? as usize;
            for r in 0..k_count {
                let k = FinFn {
                    dom: t.j.on_obj(x).clone(),
                    cod: s.right.on_obj(d.src).clone(),
                    table: fn_unrank(r, t.j.on_obj(x).size, s.right.on_obj(d.src).size),
                };
                cases += 1;
                let lhs = s.phi(x, d.dst, &compose(s.right.on_arrow_ref(d), &k)?)?;
                let rhs = s.cat.compose(d, s.phi(x, d.src, &k)?)?;
                if lhs != rhs {
                    witness = Some(format!(
                        "at ({d} in D, X{x}, k={k}): φ(Rd∘k) = {lhs} but d∘φ(k) = {rhs}"
                    ));
                    break 'right;
                }
            }
        }
    }
    report.equation("splitting/natural-right", cases, witness);

    Ok(report)
}

/// The Kleisli category as a splitting: `φ` is the identity on ranks.
pub fn kleisli_splitting(kl: &KleisliCat, budget: Budget) -> Result<Splitting> {
    let n = kl.cat.objects();
    let phi = (0..n)
        .map(|x| {
            (0..n)
                .map(|y| (0..kl.cat.hom_size(x, y)).collect())
                .collect()
        })
        .collect();
    Splitting::new(
        kl.t.j.clone(),
        kl.cat.clone(),
        kl.left_functor()?,
        kl.right_functor()?,
        phi,
        budget,
    )
}

/// The full subcategory of algebras on a user-chosen list, as a
/// splitting.  The list must contain the free algebra on every index
/// object — `L` lands on those — and every listed algebra must be lawful
/// enough for its structure maps to be morphisms out of the frees.
pub fn em_splitting(
    t: &RelMonadData,
    algebras: &[EMAlgebra],
    budget: Budget,
) -> Result<Splitting> {
    let n = algebras.len();
    if n == 0 {
        return Err(Error::Shape("at least one algebra is needed".into()));
    }
    let mut homs: Vec<Vec<Vec<FinFn>>> = vec![Vec::new(); n];
    let mut pos: Vec<Vec<Vec<Option<usize>>>> = vec![Vec::new(); n];
    for a in 0..n {
        for b in 0..n {
            let count =
                count_fns(&algebras[a].carrier, &algebras[b].carrier, budget)? as usize;
            let mut list = Vec::new();
            let mut places = vec![None; count];
            for r in 0..count {
                let h = FinFn {
                    dom: algebras[a].carrier.clone(),
                    cod: algebras[b].carrier.clone(),
                    table: fn_unrank(r, algebras[a].carrier.size, algebras[b].carrier.size),
                };
                if em_morphism_check(&algebras[a], &algebras[b], &h, budget)?.all_pass() {
                    places[r] = Some(list.len());
                    list.push(h);
                }
            }
            homs[a].push(list);
            pos[a].push(places);
        }
    }

    let hom_sizes: Vec<Vec<usize>> = homs
        .iter()
        .map(|row| row.iter().map(|l| l.len()).collect())
        .collect();
    let ids: Vec<usize> = (0..n)
        .map(|a| {
            let id_rank = fn_rank(
                &(0..algebras[a].carrier.size).collect::<Vec<_>>(),
                algebras[a].carrier.size,
            );
            pos[a][a][id_rank].expect("the identity is a morphism")
        })
        .collect();
    let carriers: Vec<_> = algebras.iter().map(|a| a.carrier.clone()).collect();
    let cat = Rc::new(FinCat::from_comp_fn(n, hom_sizes, ids, |x, y, z, g, f| {
        let composite =
            compose(&homs[y][z][g], &homs[x][y][f]).expect("endpoints match");
        pos[x][z][fn_rank(&composite.table, carriers[z].size)]
            .expect("morphisms compose to morphisms")
    })?);

    let base = t.j.src.clone();
    let n_j = t.objects();
    let mut l_obj = Vec::with_capacity(n_j);
    for x in 0..n_j {
        let free = free_em(t, x, budget)?;
        let found = algebras.iter().position(|a| *a == free).ok_or_else(|| {
            Error::Precondition(format!(
                "the free algebra on X{x} must be among the given algebras"
            ))
        })?;
        l_obj.push(found);
    }
    let mut l_arr: Vec<Vec<Vec<usize>>> = vec![vec![Vec::new(); n_j]; n_j];
    for x in 0..n_j {
        for y in 0..n_j {
            for m in base.arrows_between(x, y) {
                let action = t.functor_action(m)?;
                let idx = pos[l_obj[x]][l_obj[y]]
                    [fn_rank(&action.table, algebras[l_obj[y]].carrier.size)]
                .ok_or_else(|| {
                    Error::Precondition(format!(
                        "the action of {m} is not a morphism between the free algebras"
                    ))
                })?;
                l_arr[x][y].push(idx);
            }
        }
    }
    let left = CatFunctor::from_arrow_fn(base, Rc::clone(&cat), l_obj.clone(), |m| {
        l_arr[m.src][m.dst][m.idx]
    })?;

    let right = SetFunctor::from_arrow_fn(
        Rc::clone(&cat),
        algebras.iter().map(|a| a.carrier.clone()).collect(),
        |m| homs[m.src][m.dst][m.idx].clone(),
    )?;

    let mut phi = Vec::with_capacity(n_j);
    for x in 0..n_j {
        let mut row = Vec::with_capacity(n);
        for (y, alg) in algebras.iter().enumerate() {
            let count = count_fns(t.j.on_obj(x), &alg.carrier, budget)? as usize;
            let mut table = Vec::with_capacity(count);
            for r in 0..count {
                let k = FinFn {
                    dom: t.j.on_obj(x).clone(),
                    cod: alg.carrier.clone(),
                    table: fn_unrank(r, t.j.on_obj(x).size, alg.carrier.size),
                };
                let chi = alg.chi(x, &k)?;
                let idx = pos[l_obj[x]][y][fn_rank(&chi.table, alg.carrier.size)]
                    .ok_or_else(|| {
                        Error::Precondition(format!(
                            "χ at (X{x}, {k}) is not a morphism out of the free algebra; \
                             algebra {y} does not satisfy the laws"
                        ))
                    })?;
                table.push(idx);
            }
            row.push(table);
        }
        phi.push(row);
    }

    Splitting::new(t.j.clone(), cat, left, right, phi, budget)
}

/// The canonical functors out of the Kleisli splitting and into the
/// algebra splitting, with the defining equations checked and the
/// uniqueness of each functor settled by exhausting the candidate space
/// when the budget admits it.
pub struct SplittingMorphisms {
    /// `V : Kl(T) → D`, arrow `k ↦ φ k`.
    pub from_kleisli: CatFunctor,
    /// Per `D`-object algebra `(R y, k ↦ R(φ k))`.
    pub to_em: Vec<EMAlgebra>,
    pub report: Report,
}

struct MixedRadix {
    digits: Vec<usize>,
    radices: Vec<usize>,
    done: bool,
}

impl MixedRadix {
    fn new(radices: Vec<usize>) -> MixedRadix {
        let done = radices.contains(&0);
        MixedRadix {
            digits: vec![0; radices.len()],
            radices,
            done,
        }
    }
}

impl Iterator for MixedRadix {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.digits.clone();
        let mut i = 0;
        loop {
            if i == self.digits.len() {
                self.done = true;
                break;
            }
            self.digits[i] += 1;
            if self.digits[i] < self.radices[i] {
                break;
            }
            self.digits[i] = 0;
            i += 1;
        }
        Some(out)
    }
}

/// Builds both canonical comparisons for a splitting of `t`.
pub fn splitting_morphisms(
    t: &RelMonadData,
    s: &Splitting,
    budget: Budget,
) -> Result<SplittingMorphisms> {
    if *t.j != *s.j {
        return Err(Error::Shape(
            "the splitting is over a different restriction".into(),
        ));
    }
    let n_j = t.objects();
    for x in 0..n_j {
        if *s.right.on_obj(s.left.on_obj(x)) != t.t[x] {
            return Err(Error::Shape(format!(
                "the splitting does not induce the monad's carrier at X{x}"
            )));
        }
    }
    let kl = kleisli_build(t, budget)?;
    let kl_left = kl.left_functor()?;
    let mut report = Report::new();

    // V : Kl(T) → D sends the arrow for k : J x → T y to φ k.
    let mut v_arr: Vec<Vec<Vec<usize>>> = vec![vec![Vec::new(); n_j]; n_j];
    for x in 0..n_j {
        for y in 0..n_j {
            for m in kl.cat.arrows_between(x, y) {
                let img = s.phi(x, s.left.on_obj(y), &kl.map_of(m)?)?;
                v_arr[x][y].push(img.idx);
            }
        }
    }
    let v_obj: Vec<usize> = (0..n_j).map(|x| s.left.on_obj(x)).collect();
    let from_kleisli = CatFunctor::from_arrow_fn(
        kl.cat.clone(),
        Rc::clone(&s.cat),
        v_obj,
        |m| v_arr[m.src][m.dst][m.idx],
    )?;

    merge_tagged(
        &mut report,
        "split-initial/functor",
        check_cat_functor(&from_kleisli, budget)?,
    );

    let mut witness = None;
    let mut cases = 0u64;
    for f in t.j.src.arrows() {
        cases += 1;
        let via = from_kleisli.on_arrow(kl_left.on_arrow(f));
        let direct = s.left.on_arrow(f);
        if via != direct {
            witness = Some(format!("at {f}: V(L f) = {via} but L′f = {direct}"));
            break;
        }
    }
    report.equation("split-initial/left", cases, witness);

    let mut witness = None;
    let mut cases = 0u64;
    for m in kl.cat.arrows() {
        cases += 1;
        let via = s.right.on_arrow_ref(from_kleisli.on_arrow(m));
        let direct = kl.lift_of(m)?;
        if via != direct {
            witness = Some(format!("at {m}: R′(V m) = {via} but the lifting is {direct}"));
            break;
        }
    }
    report.equation("split-initial/right", cases, witness);

    report.push(initial_uniqueness(t, s, &kl, &kl_left, &from_kleisli, budget)?);

    // The algebra on R y: structure k ↦ R(φ k).
    let mut to_em = Vec::with_capacity(s.cat.objects());
    for y in 0..s.cat.objects() {
        to_em.push(EMAlgebra::new(
            t,
            s.right.on_obj(y).clone(),
            budget,
            |z, g| Ok(s.right.on_arrow(s.phi(z, y, g)?)),
        )?);
    }

    let mut witness = None;
    let mut cases = 0u64;
    for (y, alg) in to_em.iter().enumerate() {
        let sub = em_check(alg, budget)?;
        cases += sub.total_cases();
        if witness.is_none() {
            witness = sub
                .failures()
                .next()
                .map(|c| format!("at D{y}: {}", c.detail.clone().unwrap_or_default()));
        }
    }
    report.equation("split-terminal/algebras", cases, witness);

    let mut witness = None;
    let mut cases = 0u64;
    for d in s.cat.arrows() {
        let sub = em_morphism_check(
            &to_em[d.src],
            &to_em[d.dst],
            s.right.on_arrow_ref(d),
            budget,
        )?;
        cases += sub.total_cases();
        if witness.is_none() {
            witness = sub
                .failures()
                .next()
                .map(|c| format!("at {d}: {}", c.detail.clone().unwrap_or_default()));
        }
    }
    report.equation("split-terminal/morphisms", cases, witness);

    let mut witness = None;
    let mut cases = 0u64;
    for x in 0..n_j {
        cases += 1;
        let free = free_em(t, x, budget)?;
        if to_em[s.left.on_obj(x)] != free {
            witness = Some(format!(
                "at X{x}: the algebra over L x differs from the free algebra"
            ));
            break;
        }
    }
    if witness.is_none() {
        for f in t.j.src.arrows() {
            cases += 1;
            let via = s.right.on_arrow(s.left.on_arrow(f));
            let direct = t.functor_action(f)?;
            if via != direct {
                witness = Some(format!(
                    "at {f}: R(L f) = {via} but the action is {direct}"
                ));
                break;
            }
        }
    }
    report.equation("split-terminal/free", cases, witness);

    report.push(terminal_uniqueness(t, s, &to_em, budget)?);

    Ok(SplittingMorphisms {
        from_kleisli,
        to_em,
        report,
    })
}

/// Exhausts every functor `Kl(T) → D` and counts those satisfying the
/// three comparison equations; exactly one must survive.
fn initial_uniqueness(
    t: &RelMonadData,
    s: &Splitting,
    kl: &KleisliCat,
    kl_left: &CatFunctor,
    canonical: &CatFunctor,
    budget: Budget,
) -> Result<Check> {
    const ID: &str = "split-initial/unique";
    const SKIP: &str = "uniqueness: skipped (budget)";
    let n_j = t.objects();
    let n_d = s.cat.objects();

    let Some(obj_count) = (n_d as u128).checked_pow(n_j as u32) else {
        return Ok(Check::skipped(ID, SKIP));
    };
    if budget.admit("uniqueness object maps", obj_count).is_err() {
        return Ok(Check::skipped(ID, SKIP));
    }
    let mut total: u128 = 0;
    for obj in MixedRadix::new(vec![n_d; n_j]) {
        let mut per: u128 = 1;
        for x in 0..n_j {
            for y in 0..n_j {
                let h = kl.cat.hom_size(x, y) as u32;
                let d = s.cat.hom_size(obj[x], obj[y]) as u128;
                per = match d.checked_pow(h).and_then(|p| per.checked_mul(p)) {
                    Some(p) => p,
                    None => return Ok(Check::skipped(ID, SKIP)),
                };
            }
        }
        total = match total.checked_add(per) {
            Some(v) => v,
            None => return Ok(Check::skipped(ID, SKIP)),
        };
    }
    if budget.admit("uniqueness candidates", total).is_err() {
        return Ok(Check::skipped(ID, SKIP));
    }

    let slots: Vec<Mor> = kl.cat.arrows().collect();
    let mut survivors = 0usize;
    let mut witness = None;
    for obj in MixedRadix::new(vec![n_d; n_j]) {
        let radices: Vec<usize> = slots
            .iter()
            .map(|m| s.cat.hom_size(obj[m.src], obj[m.dst]))
            .collect();
        'cand: for digits in MixedRadix::new(radices) {
            let cand = CatFunctor::from_arrow_fn(kl.cat.clone(), Rc::clone(&s.cat), obj.clone(), |m| {
                let slot = slots.iter().position(|n| *n == m).expect("arrow listed");
                digits[slot]
            })?;
            for x in 0..n_j {
                if cand.on_obj(x) != s.left.on_obj(x) {
                    continue 'cand;
                }
            }
            for f in t.j.src.arrows() {
                if cand.on_arrow(kl_left.on_arrow(f)) != s.left.on_arrow(f) {
                    continue 'cand;
                }
            }
            if !check_cat_functor(&cand, budget)?.all_pass() {
                continue 'cand;
            }
            for m in &slots {
                if s.right.on_arrow_ref(cand.on_arrow(*m)) != kl.lift_of(*m)? {
                    continue 'cand;
                }
                let pinned = s.phi(m.src, cand.on_obj(m.dst), &kl.map_of(*m)?)?;
                if cand.on_arrow(*m) != pinned {
                    continue 'cand;
                }
            }
            survivors += 1;
            if cand != *canonical {
                witness = Some("a different functor satisfies the equations".to_string());
            }
        }
    }
    if survivors != 1 && witness.is_none() {
        witness = Some(format!("{survivors} functors satisfy the equations"));
    }
    Ok(match witness {
        None => Check::pass(ID, total as u64),
        Some(w) => Check::fail(ID, w, total as u64),
    })
}

/// Exhausts, object by object, every algebra structure on `R y` and
/// counts those compatible with `φ`, the laws, and the `D`-arrows;
/// exactly the canonical one must survive at each object.  The
/// compatibility equation constrains each object independently, so the
/// product space can be scanned one object at a time.
fn terminal_uniqueness(
    t: &RelMonadData,
    s: &Splitting,
    to_em: &[EMAlgebra],
    budget: Budget,
) -> Result<Check> {
    const ID: &str = "split-terminal/unique";
    const SKIP: &str = "uniqueness: skipped (budget)";
    let n_j = t.objects();
    let n_d = s.cat.objects();

    let mut per_object: Vec<u128> = Vec::with_capacity(n_d);
    let mut total: u128 = 0;
    for y in 0..n_d {
        let ry = s.right.on_obj(y).size;
        let mut count: u128 = 1;
        for z in 0..n_j {
            let tables = (ry as u128).checked_pow(t.t[z].size as u32);
            let g_count = (ry as u128).checked_pow(t.j.on_obj(z).size as u32);
            let contribution = match (tables, g_count) {
                (Some(tb), Some(g)) if g <= u32::MAX as u128 => tb.checked_pow(g as u32),
                _ => None,
            };
            count = match contribution.and_then(|c| count.checked_mul(c)) {
                Some(c) => c,
                None => return Ok(Check::skipped(ID, SKIP)),
            };
        }
        total = match total.checked_add(count) {
            Some(v) => v,
            None => return Ok(Check::skipped(ID, SKIP)),
        };
        per_object.push(count);
    }
    if budget.admit("uniqueness candidates", total).is_err() {
        return Ok(Check::skipped(ID, SKIP));
    }

    let mut witness = None;
    'objects: for y in 0..n_d {
        let ry = s.right.on_obj(y).clone();
        // one slot per (z, rank of g : J z → R y); radix = tables T z → R y
        let mut slot_offset = Vec::with_capacity(n_j);
        let mut radices = Vec::new();
        for z in 0..n_j {
            slot_offset.push(radices.len());
            let g_count = count_fns(t.j.on_obj(z), &ry, budget)? as usize;
            let table_count = count_fns(&t.t[z], &ry, budget)? as usize;
            radices.extend(vec![table_count; g_count]);
        }
        let mut survivors = 0usize;
        for digits in MixedRadix::new(radices) {
            let cand = EMAlgebra::new(t, ry.clone(), budget, |z, g| {
                let slot = slot_offset[z] + fn_rank(&g.table, ry.size);
                Ok(FinFn {
                    dom: t.t[z].clone(),
                    cod: ry.clone(),
                    table: fn_unrank(digits[slot], t.t[z].size, ry.size),
                })
            })?;
            if !phi_compatible(t, s, y, &cand, budget)? {
                continue;
            }
            if !em_check(&cand, budget)?.all_pass() {
                continue;
            }
            let mut arrows_ok = true;
            for d in s.cat.arrows() {
                let ok = if d.src == y && d.dst == y {
                    em_morphism_check(&cand, &cand, s.right.on_arrow_ref(d), budget)?
                        .all_pass()
                } else if d.src == y {
                    em_morphism_check(&cand, &to_em[d.dst], s.right.on_arrow_ref(d), budget)?
                        .all_pass()
                } else if d.dst == y {
                    em_morphism_check(&to_em[d.src], &cand, s.right.on_arrow_ref(d), budget)?
                        .all_pass()
                } else {
                    true
                };
                if !ok {
                    arrows_ok = false;
                    break;
                }
            }
            if !arrows_ok {
                continue;
            }
            survivors += 1;
            if cand != to_em[y] {
                witness = Some(format!(
                    "at D{y}: a different structure satisfies the equations"
                ));
                break 'objects;
            }
        }
        if survivors != 1 {
            witness = Some(format!(
                "at D{y}: {survivors} structures satisfy the equations"
            ));
            break;
        }
    }
    Ok(match witness {
        None => Check::pass(ID, total as u64),
        Some(w) => Check::fail(ID, w, total as u64),
    })
}

fn phi_compatible(
    t: &RelMonadData,
    s: &Splitting,
    y: usize,
    cand: &EMAlgebra,
    _budget: Budget,
) -> Result<bool> {
    for z in 0..t.objects() {
        for g in cand.maps_into(z) {
            if *cand.chi(z, &g)? != s.right.on_arrow(s.phi(z, y, &g)?) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::fin_skeleton;
    use crate::relmon::testing::powerset_restriction;
    use crate::report::Status;

    fn skeleton(k: usize) -> Rc<SetFunctor> {
        let (_, incl) = fin_skeleton(k, Budget::default()).unwrap();
        Rc::new(incl)
    }

    fn status_of<'r>(report: &'r Report, id: &str) -> &'r Check {
        report
            .checks
            .iter()
            .find(|c| c.id == id)
            .unwrap_or_else(|| panic!("missing check {id}"))
    }

    #[test]
    fn the_kleisli_category_splits_the_monad() {
        let t = powerset_restriction(&skeleton(2));
        let budget = Budget(4_000_000);
        let kl = kleisli_build(&t, budget).unwrap();
        let s = kleisli_splitting(&kl, budget).unwrap();
        let report = splitting_check(&t, &s, budget).unwrap();
        assert!(report.all_pass(), "{:?}", report.failures().next());

        let induced = s.induced_monad().unwrap();
        for x in 0..t.objects() {
            assert_eq!(induced.t[x], t.t[x]);
            assert_eq!(induced.unit[x], t.unit[x]);
        }
    }

    #[test]
    fn the_algebra_category_splits_the_monad() {
        let t = powerset_restriction(&skeleton(2));
        let budget = Budget(4_000_000);
        let algebras: Vec<_> = (0..t.objects())
            .map(|x| free_em(&t, x, budget).unwrap())
            .collect();
        let s = em_splitting(&t, &algebras, budget).unwrap();
        let report = splitting_check(&t, &s, budget).unwrap();
        assert!(report.all_pass(), "{:?}", report.failures().next());
    }

    #[test]
    fn canonical_morphisms_exist_and_uniqueness_is_skipped_when_large() {
        let t = powerset_restriction(&skeleton(2));
        let budget = Budget(4_000_000);
        let kl = kleisli_build(&t, budget).unwrap();
        let s = kleisli_splitting(&kl, budget).unwrap();
        let ms = splitting_morphisms(&t, &s, budget).unwrap();
        assert!(ms.report.all_pass(), "{:?}", ms.report.failures().next());

        // out of the Kleisli splitting into itself: the identity functor
        for m in kl.cat.arrows() {
            assert_eq!(ms.from_kleisli.on_arrow(m), m);
        }
        // the algebra over each object is the free one
        for x in 0..t.objects() {
            assert_eq!(ms.to_em[x], free_em(&t, x, budget).unwrap());
        }
        // the candidate spaces overflow the budget here and say so
        for id in ["split-initial/unique", "split-terminal/unique"] {
            let check = status_of(&ms.report, id);
            assert_eq!(check.status, Status::Skipped);
            assert_eq!(check.detail.as_deref(), Some("uniqueness: skipped (budget)"));
        }
    }

    #[test]
    fn uniqueness_is_settled_exhaustively_on_a_small_universe() {
        let t = powerset_restriction(&skeleton(1));
        let budget = Budget::default();
        let kl = kleisli_build(&t, budget).unwrap();

        for s in [
            kleisli_splitting(&kl, budget).unwrap(),
            em_splitting(
                &t,
                &(0..t.objects())
                    .map(|x| free_em(&t, x, budget).unwrap())
                    .collect::<Vec<_>>(),
                budget,
            )
            .unwrap(),
        ] {
            assert!(splitting_check(&t, &s, budget).unwrap().all_pass());
            let ms = splitting_morphisms(&t, &s, budget).unwrap();
            assert!(ms.report.all_pass(), "{:?}", ms.report.failures().next());
            for id in ["split-initial/unique", "split-terminal/unique"] {
                let check = status_of(&ms.report, id);
                assert_eq!(check.status, Status::Pass, "{id} was not settled");
                assert!(check.cases > 1, "{id} scanned only {} candidates", check.cases);
            }
        }
    }

    #[test]
    fn a_shuffled_bijection_is_rejected_as_a_splitting() {
        let t = powerset_restriction(&skeleton(1));
        let budget = Budget::default();
        let kl = kleisli_build(&t, budget).unwrap();
        let n = kl.cat.objects();
        let mut phi: Vec<Vec<Vec<usize>>> = (0..n)
            .map(|x| {
                (0..n)
                    .map(|y| (0..kl.cat.hom_size(x, y)).collect())
                    .collect()
            })
            .collect();
        phi[1][1].swap(0, 1);
        let s = Splitting::new(
            t.j.clone(),
            kl.cat.clone(),
            kl.left_functor().unwrap(),
            kl.right_functor().unwrap(),
            phi,
            budget,
        )
        .unwrap();
        let report = splitting_check(&t, &s, budget).unwrap();
        let failed: Vec<&str> = report.failures().map(|c| c.id.as_str()).collect();
        assert!(
            failed.contains(&"splitting/induces-monad"),
            "failed: {failed:?}"
        );
    }
}
