//! Element-level relative monad instances.
//!
//! Deep instances enumerate carriers as dense tables; shallow ones compute
//! on whatever element representation suits them (terms, vectors,
//! functions), which is the only way to reach instances whose carriers are
//! infinite or merely enormous.  A [`ShallowInstance`] supplies units and
//! the lifting over printable elements, and [`shallow_laws`] checks the
//! three laws on a caller-supplied suite of objects, sample elements, and
//! Kleisli tables, reporting witnesses via `Debug`.
//!
//! The two layers reflect into each other.  [`shallow_of_deep`] views any
//! deep instance shallowly, so one suite driver covers both; and
//! [`deep_of_shallow`] tabulates a shallow instance over an explicit
//! finite enumeration of its carriers, after which every deep construction
//! — law sweeps, Kan extensions, the multiplication view — applies to it.

use std::fmt::Debug;
use std::rc::Rc;

use crate::fincat::SetFunctor;
use crate::finset::{FinFn, FinSet};
use crate::report::Report;
use crate::{Error, Result};

use super::RelMonadData;

/// Relative monad structure computed on elements.
///
/// `arg_count(x)` is the size of the value of the base functor at `x`; a
/// Kleisli map out of `x` is tabulated as a slice of that length.  `star`
/// may assume the table has exactly that length and that the element
/// belongs to the carrier at `x`.
pub trait ShallowInstance {
    /// Object representation: a scope, a dimension, a finite set…
    type Obj: Clone + Debug;
    /// Element representation of the carrier at an object.
    type Elem: Clone + PartialEq + Debug;

    fn arg_count(&self, x: &Self::Obj) -> usize;
    fn unit(&self, x: &Self::Obj, arg: usize) -> Self::Elem;
    fn star(&self, x: &Self::Obj, y: &Self::Obj, k: &[Self::Elem], e: &Self::Elem)
        -> Self::Elem;
}

/// A finite test bed for a shallow instance: objects with sample elements,
/// and Kleisli tables between them (indices into `objects`).
#[derive(Debug, Clone)]
pub struct ShallowSuite<I: ShallowInstance> {
    pub objects: Vec<(I::Obj, Vec<I::Elem>)>,
    /// `(source, target, table)` with the table indexed by the source's
    /// arguments.
    pub maps: Vec<(usize, usize, Vec<I::Elem>)>,
}

impl<I: ShallowInstance> ShallowSuite<I> {
    fn validate(&self, inst: &I) -> Result<()> {
        for (i, (sx, sy, table)) in self.maps.iter().enumerate() {
            let (x, _) = self
                .objects
                .get(*sx)
                .ok_or(Error::Scope {
                    index: *sx,
                    scope: self.objects.len(),
                })?;
            if *sy >= self.objects.len() {
                return Err(Error::Scope {
                    index: *sy,
                    scope: self.objects.len(),
                });
            }
            if table.len() != inst.arg_count(x) {
                return Err(Error::Shape(format!(
                    "map {i} has {} entries for an object with {} arguments",
                    table.len(),
                    inst.arg_count(x)
                )));
            }
        }
        Ok(())
    }
}

/// Checks the three laws over the suite: lifted tables agree with their
/// entries on units, lifting the unit table fixes every sample element,
/// and lifting distributes over composition of the suite's tables.
pub fn shallow_laws<I: ShallowInstance>(inst: &I, suite: &ShallowSuite<I>) -> Result<Report> {
    suite.validate(inst)?;
    let mut report = Report::new();

    let mut witness = None;
    let mut cases = 0u64;
    'unit: for (sx, sy, k) in &suite.maps {
        let x = &suite.objects[*sx].0;
        let y = &suite.objects[*sy].0;
        for arg in 0..inst.arg_count(x) {
            let lifted = inst.star(x, y, k, &inst.unit(x, arg));
            cases += 1;
            if lifted != k[arg] {
                witness = Some(format!(
                    "map {sx}→{sy} at argument {arg}: k*(unit) = {lifted:?} but k gives {:?}",
                    k[arg]
                ));
                break 'unit;
            }
        }
    }
    report.equation("shallow/right-unit", cases, witness);

    let mut witness = None;
    let mut cases = 0u64;
    'left: for (i, (x, samples)) in suite.objects.iter().enumerate() {
        let units: Vec<I::Elem> = (0..inst.arg_count(x)).map(|a| inst.unit(x, a)).collect();
        for e in samples {
            let lifted = inst.star(x, x, &units, e);
            cases += 1;
            if lifted != *e {
                witness = Some(format!("object {i}: unit-table* sends {e:?} to {lifted:?}"));
                break 'left;
            }
        }
    }
    report.equation("shallow/left-unit", cases, witness);

    let mut witness = None;
    let mut cases = 0u64;
    'assoc: for (i, (kx, ky, k)) in suite.maps.iter().enumerate() {
        for (j, (lx, lz, l)) in suite.maps.iter().enumerate() {
            if lx != ky {
                continue;
            }
            let x = &suite.objects[*kx].0;
            let y = &suite.objects[*ky].0;
            let z = &suite.objects[*lz].0;
            let composite: Vec<I::Elem> = k.iter().map(|e| inst.star(y, z, l, e)).collect();
            for e in &suite.objects[*kx].1 {
                let joint = inst.star(x, z, &composite, e);
                let split = inst.star(y, z, l, &inst.star(x, y, k, e));
                cases += 1;
                if joint != split {
                    witness = Some(format!(
                        "maps {i} then {j} on {e:?}: (l*∘k)* gives {joint:?} but l*∘k* gives {split:?}"
                    ));
                    break 'assoc;
                }
            }
        }
    }
    report.equation("shallow/assoc", cases, witness);

    Ok(report)
}

/// A deep instance viewed shallowly: objects are index-object numbers,
/// elements are carrier indices.
#[derive(Clone, Debug)]
pub struct DeepShallow {
    t: RelMonadData,
}

pub fn shallow_of_deep(t: &RelMonadData) -> DeepShallow {
    DeepShallow { t: t.clone() }
}

impl ShallowInstance for DeepShallow {
    type Obj = usize;
    type Elem = usize;

    fn arg_count(&self, x: &usize) -> usize {
        self.t.j.on_obj(*x).size
    }

    fn unit(&self, x: &usize, arg: usize) -> usize {
        self.t.unit[*x].apply(arg)
    }

    fn star(&self, x: &usize, y: &usize, k: &[usize], e: &usize) -> usize {
        let table = FinFn::new(
            self.t.j.on_obj(*x).clone(),
            self.t.t[*y].clone(),
            k.to_vec(),
        )
        .expect("Kleisli table must match the argument count");
        self.t
            .star(*x, *y, &table)
            .expect("a valid table lifts")
            .apply(*e)
    }
}

/// Tabulates a shallow instance into a deep one.
///
/// `objs[i]` is the shallow object standing at index object `i`, and
/// `elems[i]` enumerates the whole carrier there (duplicates rejected).
/// The argument counts must match the weight's values, and the lifting
/// must stay inside the enumerations — any excursion is an error naming
/// the stray element, since it means the enumeration was not closed.
pub fn deep_of_shallow<I>(
    inst: I,
    j: &Rc<SetFunctor>,
    objs: Vec<I::Obj>,
    elems: Vec<Vec<I::Elem>>,
) -> Result<RelMonadData>
where
    I: ShallowInstance + 'static,
{
    let n = j.src.objects();
    if objs.len() != n || elems.len() != n {
        return Err(Error::Shape(format!(
            "expected {n} objects and {n} carrier enumerations, got {} and {}",
            objs.len(),
            elems.len()
        )));
    }
    for x in 0..n {
        if inst.arg_count(&objs[x]) != j.on_obj(x).size {
            return Err(Error::Shape(format!(
                "object {x} has {} arguments but the weight's value has size {}",
                inst.arg_count(&objs[x]),
                j.on_obj(x).size
            )));
        }
        for a in 0..elems[x].len() {
            for b in a + 1..elems[x].len() {
                if elems[x][a] == elems[x][b] {
                    return Err(Error::Shape(format!(
                        "carrier enumeration of object {x} repeats {:?}",
                        elems[x][a]
                    )));
                }
            }
        }
    }

    let t: Vec<FinSet> = elems.iter().map(|es| FinSet::of(es.len())).collect();
    let unit = (0..n)
        .map(|x| {
            let table = (0..j.on_obj(x).size)
                .map(|arg| {
                    let e = inst.unit(&objs[x], arg);
                    elems[x].iter().position(|c| *c == e).ok_or_else(|| {
                        Error::Shape(format!(
                            "unit of object {x} at argument {arg} gives {e:?}, \
                             which the carrier enumeration lacks"
                        ))
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            FinFn::new(j.on_obj(x).clone(), t[x].clone(), table)
        })
        .collect::<Result<Vec<_>>>()?;

    let inst = Rc::new(inst);
    let objs = Rc::new(objs);
    let elems = Rc::new(elems);
    let carriers = t.clone();
    let star = Rc::new(move |x: usize, y: usize, k: &FinFn| {
        let decoded: Vec<I::Elem> = k.table.iter().map(|&r| elems[y][r].clone()).collect();
        let table = elems[x]
            .iter()
            .map(|e| {
                let lifted = inst.star(&objs[x], &objs[y], &decoded, e);
                elems[y].iter().position(|c| *c == lifted).ok_or_else(|| {
                    Error::Shape(format!(
                        "lifting produced {lifted:?}, which the carrier \
                         enumeration of object {y} lacks"
                    ))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        FinFn::new(carriers[x].clone(), carriers[y].clone(), table)
    });
    RelMonadData::new(Rc::clone(j), t, unit, star)
}
