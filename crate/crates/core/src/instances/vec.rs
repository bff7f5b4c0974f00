//! Vectors over a semiring as a relative monad.
//!
//! The carrier at dimension `m` is the set of length-`m` vectors of scalars;
//! the unit sends dimension `i` to the `i`-th basis vector, and a Kleisli
//! map `m → n` is exactly an `m × n` matrix acting by
//! `(A★x)(j) = Σ_i A(i,j) × x(i)`. Booleans give the powerset, naturals the
//! multiset. The instance exists at two depths: [`VecInstance`] computes on
//! vectors directly (any semiring, sampled laws), and [`vec_relmonad`]
//! tabulates it over a finite scalar carrier so the whole deep toolkit —
//! exhaustive law sweeps, Kan extensions, Kleisli categories — applies.
//!
//! Deep carriers are numbered by the rank of the vector's scalar-index
//! table ([`vec_rank`]/[`vec_unrank`] translate), so matrices, subsets, and
//! carrier points convert without ambiguity.

use std::rc::Rc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::budget::{admitted_pow, Budget};
use crate::fincat::SetFunctor;
use crate::finset::{fn_rank, fn_unrank, FinFn};
use crate::relmon::{deep_of_shallow, RelMonadData, ShallowInstance};
use crate::report::{Check, Report, Status};
use crate::{Error, Result};

use super::semiring::{Booleans, NatCap, Naturals, Semiring};

/// A dense `rows × cols` matrix of scalars, row-major.
///
/// Rows index the domain dimension and columns the codomain, so row `i` is
/// the vector the matrix assigns to basis vector `i`.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<E> {
    pub rows: usize,
    pub cols: usize,
    entries: Vec<E>,
}

impl<E: Clone> Matrix<E> {
    pub fn new(rows: usize, cols: usize, entries: Vec<E>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Shape(format!(
                "matrix {rows}×{cols} needs {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        Ok(Matrix {
            rows,
            cols,
            entries,
        })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> E) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Matrix {
            rows,
            cols,
            entries,
        }
    }

    pub fn from_rows(rows: Vec<Vec<E>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::Shape(format!(
                "ragged matrix: a row has {} entries, the first has {cols}",
                bad.len()
            )));
        }
        let m = rows.len();
        Ok(Matrix {
            rows: m,
            cols,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn entry(&self, i: usize, j: usize) -> &E {
        &self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[E] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    /// The unit `m × m` matrix — the tabulated unit of the instance.
    pub fn identity<R: Semiring<Elem = E>>(r: &R, m: usize) -> Self {
        Matrix::from_fn(m, m, |i, j| if i == j { r.one() } else { r.zero() })
    }
}

/// The lifting `(A★x)(j) = Σ_i A(i,j) × x(i)`, summed in index order from 0.
pub fn mat_apply<R: Semiring>(r: &R, a: &Matrix<R::Elem>, x: &[R::Elem]) -> Result<Vec<R::Elem>> {
    if x.len() != a.rows {
        return Err(Error::Shape(format!(
            "vector of length {} against a {}×{} matrix",
            x.len(),
            a.rows,
            a.cols
        )));
    }
    Ok((0..a.cols)
        .map(|j| {
            (0..a.rows).fold(r.zero(), |acc, i| {
                r.add(&acc, &r.mul(a.entry(i, j), &x[i]))
            })
        })
        .collect())
}

/// Triple-loop matrix product `C(i,j) = Σ_t A(i,t) × B(t,j)`.
///
/// Deliberately written from the textbook definition, independent of
/// [`mat_apply`], so Kleisli composition has something external to agree
/// with.
pub fn mat_mul<R: Semiring>(
    r: &R,
    a: &Matrix<R::Elem>,
    b: &Matrix<R::Elem>,
) -> Result<Matrix<R::Elem>> {
    if a.cols != b.rows {
        return Err(Error::Shape(format!(
            "cannot multiply {}×{} by {}×{}",
            a.rows, a.cols, b.rows, b.cols
        )));
    }
    let mut entries = Vec::with_capacity(a.rows * b.cols);
    for i in 0..a.rows {
        for j in 0..b.cols {
            let mut acc = r.zero();
            for t in 0..a.cols {
                acc = r.add(&acc, &r.mul(a.entry(i, t), b.entry(t, j)));
            }
            entries.push(acc);
        }
    }
    Matrix::new(a.rows, b.cols, entries)
}

/// The vector instance on elements: objects are dimensions, elements are
/// scalar vectors of that length.
#[derive(Debug, Clone)]
pub struct VecInstance<R: Semiring> {
    pub scalars: R,
}

impl<R: Semiring> ShallowInstance for VecInstance<R> {
    type Obj = usize;
    type Elem = Vec<R::Elem>;

    fn arg_count(&self, m: &usize) -> usize {
        *m
    }

    fn unit(&self, m: &usize, i: usize) -> Vec<R::Elem> {
        (0..*m)
            .map(|j| {
                if i == j {
                    self.scalars.one()
                } else {
                    self.scalars.zero()
                }
            })
            .collect()
    }

    fn star(&self, _m: &usize, n: &usize, k: &[Vec<R::Elem>], x: &Vec<R::Elem>) -> Vec<R::Elem> {
        let r = &self.scalars;
        (0..*n)
            .map(|j| {
                (0..k.len()).fold(r.zero(), |acc, i| r.add(&acc, &r.mul(&k[i][j], &x[i])))
            })
            .collect()
    }
}

/// The multiset instance on elements: vectors of exact natural counts.
pub fn multiset_instance() -> VecInstance<Naturals> {
    VecInstance { scalars: Naturals }
}

/// Decodes a deep carrier point: vector number `rank` at dimension `dim`.
pub fn vec_unrank<R: Semiring>(r: &R, rank: usize, dim: usize) -> Result<Vec<R::Elem>> {
    let all = r
        .elements()
        .ok_or_else(|| Error::Precondition(format!("semiring {} is not finite", r.name())))?;
    Ok(fn_unrank(rank, dim, all.len())
        .into_iter()
        .map(|i| all[i].clone())
        .collect())
}

/// Encodes a vector as its deep carrier number.
pub fn vec_rank<R: Semiring>(r: &R, v: &[R::Elem]) -> Result<usize> {
    let all = r
        .elements()
        .ok_or_else(|| Error::Precondition(format!("semiring {} is not finite", r.name())))?;
    let table = v
        .iter()
        .map(|e| {
            all.iter()
                .position(|c| c == e)
                .ok_or_else(|| Error::Shape(format!("{e:?} is not a scalar of {}", r.name())))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(fn_rank(&table, all.len()))
}

/// Tabulates the vector instance over a finite scalar carrier: the carrier
/// at each index object is all vectors of that dimension, numbered by
/// [`vec_rank`].
pub fn vec_relmonad<R>(r: R, j: &Rc<SetFunctor>, budget: Budget) -> Result<RelMonadData>
where
    R: Semiring + 'static,
{
    let all = r
        .elements()
        .ok_or_else(|| Error::Precondition(format!("semiring {} is not finite", r.name())))?;
    let n = j.src.objects();
    let mut objs = Vec::with_capacity(n);
    let mut elems = Vec::with_capacity(n);
    for x in 0..n {
        let dim = j.on_obj(x).size;
        let count = admitted_pow(budget, "vectors", all.len().max(1) as u64, dim as u32)?;
        objs.push(dim);
        elems.push(
            (0..count as usize)
                .map(|rank| {
                    fn_unrank(rank, dim, all.len())
                        .into_iter()
                        .map(|i| all[i].clone())
                        .collect::<Vec<_>>()
                })
                .collect::<Vec<_>>(),
        );
    }
    deep_of_shallow(VecInstance { scalars: r }, j, objs, elems)
}

/// The powerset instance: vectors over the booleans, with a subset encoded
/// as its indicator vector.
pub fn powerset_relmonad(j: &Rc<SetFunctor>, budget: Budget) -> Result<RelMonadData> {
    vec_relmonad(Booleans, j, budget)
}

/// The deep multiset stand-in: counts saturate at `cap`, so the top value
/// reads "`cap` or more". Excluded from the law suites (see [`NatCap`]);
/// exact multisets live in [`multiset_instance`].
pub fn multiset_relmonad_capped(
    cap: u64,
    j: &Rc<SetFunctor>,
    budget: Budget,
) -> Result<RelMonadData> {
    vec_relmonad(NatCap::new(cap), j, budget)
}

/// Decodes a deep Kleisli map `k : J x → T y` into the matrix whose row `i`
/// is the vector `k(i)`.
pub fn matrix_of_kleisli<R: Semiring>(
    r: &R,
    t: &RelMonadData,
    x: usize,
    y: usize,
    k: &FinFn,
) -> Result<Matrix<R::Elem>> {
    let m = t.j.on_obj(x).size;
    let n = t.j.on_obj(y).size;
    if k.dom.size != m || k.cod.size != t.t[y].size {
        return Err(Error::Shape(format!(
            "Kleisli map {k} does not run J({x}) → T({y})"
        )));
    }
    let rows = k
        .table
        .iter()
        .map(|&rank| vec_unrank(r, rank, n))
        .collect::<Result<Vec<_>>>()?;
    let a = Matrix::from_rows(rows)?;
    // A dimension-zero domain leaves the column count underdetermined.
    Ok(Matrix {
        rows: m,
        cols: n,
        entries: a.entries,
    })
}

/// Encodes an `m × n` matrix as the deep Kleisli map `J x → T y`.
pub fn kleisli_of_matrix<R: Semiring>(
    r: &R,
    t: &RelMonadData,
    x: usize,
    y: usize,
    a: &Matrix<R::Elem>,
) -> Result<FinFn> {
    let m = t.j.on_obj(x).size;
    let n = t.j.on_obj(y).size;
    if a.rows != m || a.cols != n {
        return Err(Error::Shape(format!(
            "matrix {}×{} against objects of dimensions {m} and {n}",
            a.rows, a.cols
        )));
    }
    let table = (0..m)
        .map(|i| vec_rank(r, a.row(i)))
        .collect::<Result<Vec<_>>>()?;
    FinFn::new(t.j.on_obj(x).clone(), t.t[y].clone(), table)
}

/// Checks that Kleisli composition in the deep instance is matrix product:
/// for every composable pair of matrices, the lifting of one row by the
/// other equals the triple-loop product row for row.
pub fn vec_kleisli_vs_product<R>(r: &R, t: &RelMonadData, budget: Budget) -> Result<Report>
where
    R: Semiring,
{
    let name = r.name();
    let n = t.objects();
    let mut total: u128 = 0;
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let first = t.t[y].size.max(1).pow(t.j.on_obj(x).size as u32) as u128;
                let second = t.t[z].size.max(1).pow(t.j.on_obj(y).size as u32) as u128;
                total += first * second;
            }
        }
    }
    budget.admit("matrix pairs", total)?;

    let mut report = Report::new();
    let mut witness = None;
    let mut cases = 0u64;
    'pairs: for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let first = t.t[y].size.max(1).pow(t.j.on_obj(x).size as u32);
                let second = t.t[z].size.max(1).pow(t.j.on_obj(y).size as u32);
                for ka in 0..first {
                    let k = FinFn::new(
                        t.j.on_obj(x).clone(),
                        t.t[y].clone(),
                        fn_unrank(ka, t.j.on_obj(x).size, t.t[y].size),
                    )?;
                    let a = matrix_of_kleisli(r, t, x, y, &k)?;
                    for lb in 0..second {
                        let l = FinFn::new(
                            t.j.on_obj(y).clone(),
                            t.t[z].clone(),
                            fn_unrank(lb, t.j.on_obj(y).size, t.t[z].size),
                        )?;
                        let b = matrix_of_kleisli(r, t, y, z, &l)?;
                        let composite = crate::finset::compose(&t.star(y, z, &l)?, &k)?;
                        let product = mat_mul(r, &a, &b)?;
                        cases += 1;
                        if composite != kleisli_of_matrix(r, t, x, z, &product)? {
                            witness = Some(format!(
                                "at (X{x}, Y{y}, Z{z}), maps #{ka} then #{lb}: \
                                 Kleisli composite disagrees with the matrix product"
                            ));
                            break 'pairs;
                        }
                    }
                }
            }
        }
    }
    report.equation(&format!("vec/{name}/kleisli-matmul"), cases, witness);
    Ok(report)
}

/// Seeded sampled law suite for the vector instance over any semiring:
/// `samples` random instantiations per law at dimensions drawn from `dims`,
/// plus the matrix-product comparison.
pub fn vec_laws_sampled<R: Semiring>(
    r: &R,
    dims: &[usize],
    samples: u32,
    seed: u64,
) -> Result<Report> {
    if dims.is_empty() {
        return Err(Error::Precondition("no dimensions to sample at".into()));
    }
    let name = r.name();
    let mut report = Report::new();
    report.push(Check {
        id: format!("vec/{name}/mode"),
        status: Status::Pass,
        detail: Some(format!("sampled: seed {seed}, {samples} draws per law")),
        cases: 0,
    });
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pick = |rng: &mut ChaCha8Rng| dims[(rng.next_u64() % dims.len() as u64) as usize];
    let vector =
        |rng: &mut ChaCha8Rng, m: usize| -> Vec<R::Elem> { (0..m).map(|_| r.sample(rng)).collect() };
    let matrix = |rng: &mut ChaCha8Rng, m: usize, n: usize| -> Matrix<R::Elem> {
        Matrix::from_fn(m, n, |_, _| r.sample(rng))
    };
    let basis = |m: usize, i: usize| -> Vec<R::Elem> {
        (0..m)
            .map(|j| if i == j { r.one() } else { r.zero() })
            .collect()
    };

    let mut witness = None;
    let mut cases = 0u64;
    for _ in 0..samples {
        let (m, n) = (pick(&mut rng), pick(&mut rng));
        let a = matrix(&mut rng, m, n);
        if m == 0 {
            continue;
        }
        let i = (rng.next_u64() % m as u64) as usize;
        let lifted = mat_apply(r, &a, &basis(m, i))?;
        cases += 1;
        if witness.is_none() && lifted != a.row(i) {
            witness = Some(format!(
                "{m}×{n} matrix {a:?} at basis {i}: A★(unit) = {lifted:?} but row {i} is {:?}",
                a.row(i)
            ));
        }
    }
    report.equation(&format!("vec/{name}/right-unit"), cases, witness);

    let mut witness = None;
    for _ in 0..samples {
        let m = pick(&mut rng);
        let x = vector(&mut rng, m);
        let lifted = mat_apply(r, &Matrix::identity(r, m), &x)?;
        if witness.is_none() && lifted != x {
            witness = Some(format!("identity matrix sends {x:?} to {lifted:?}"));
        }
    }
    report.equation(&format!("vec/{name}/left-unit"), samples as u64, witness);

    let mut assoc = None;
    let mut product = None;
    for _ in 0..samples {
        let (m, n, p) = (pick(&mut rng), pick(&mut rng), pick(&mut rng));
        let a = matrix(&mut rng, m, n);
        let b = matrix(&mut rng, n, p);
        let x = vector(&mut rng, m);
        // The Kleisli composite B★ ∘ A, tabulated row by row.
        let composite = Matrix::from_rows(
            (0..m)
                .map(|i| mat_apply(r, &b, a.row(i)))
                .collect::<Result<Vec<_>>>()?,
        )?;
        let composite = Matrix {
            rows: m,
            cols: p,
            ..composite
        };
        if assoc.is_none() {
            let joint = mat_apply(r, &composite, &x)?;
            let split = mat_apply(r, &b, &mat_apply(r, &a, &x)?)?;
            if joint != split {
                assoc = Some(format!(
                    "A={a:?}, B={b:?}, x={x:?}: (B★∘A)★x = {joint:?} but B★(A★x) = {split:?}"
                ));
            }
        }
        if product.is_none() && composite != mat_mul(r, &a, &b)? {
            product = Some(format!(
                "A={a:?}, B={b:?}: Kleisli composite {composite:?} is not the product"
            ));
        }
    }
    report.equation(&format!("vec/{name}/assoc"), samples as u64, assoc);
    report.equation(
        &format!("vec/{name}/kleisli-matmul"),
        samples as u64,
        product,
    );
    Ok(report)
}
