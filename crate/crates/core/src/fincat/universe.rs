//! A fixed full subcategory of finite sets acting as the ambient world
//! for deep endofunctors: ordinary monads live on a [`Universe`], and
//! constructions that need to apply such an endofunctor to a set first
//! locate the set (by size) among the universe objects.

use std::rc::Rc;

use crate::budget::Budget;
use crate::finset::{fn_rank, FinFn, FinSet};
use crate::{Error, Result};

use super::{subuniverse, FinCat, Mor, SetFunctor};

#[derive(Debug, Clone)]
pub struct Universe {
    pub cat: Rc<FinCat>,
    pub incl: SetFunctor,
    sizes: Vec<usize>,
}

impl Universe {
    pub fn new(sizes: &[usize], budget: Budget) -> Result<Universe> {
        let (cat, incl) = subuniverse(sizes, budget)?;
        Ok(Universe {
            cat,
            incl,
            sizes: sizes.to_vec(),
        })
    }

    /// The sets `{0, …, k}`, the truncation of all finite sets.
    pub fn fin(k: usize, budget: Budget) -> Result<Universe> {
        Universe::new(&(0..=k).collect::<Vec<_>>(), budget)
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn object_of_size(&self, n: usize) -> Option<usize> {
        self.sizes.iter().position(|&s| s == n)
    }

    pub fn require_object(&self, n: usize) -> Result<usize> {
        self.object_of_size(n)
            .ok_or(Error::OutOfUniverse { size: n })
    }

    /// The arrow of the universe with the same table as `f`; fails with an
    /// out-of-universe error when either endpoint size is missing.
    pub fn mor_of_fn(&self, f: &FinFn) -> Result<Mor> {
        let src = self.require_object(f.dom.size)?;
        let dst = self.require_object(f.cod.size)?;
        Ok(Mor {
            src,
            dst,
            idx: fn_rank(&f.table, f.cod.size),
        })
    }

    /// Applies an endofunctor of the universe to a set given by size.
    pub fn value_of(&self, endo: &SetFunctor, s: &FinSet) -> Result<FinSet> {
        self.check_endo(endo)?;
        Ok(endo.on_obj(self.require_object(s.size)?).clone())
    }

    /// Applies an endofunctor of the universe to an arbitrary function
    /// between universe-sized sets.
    pub fn apply_endo(&self, endo: &SetFunctor, f: &FinFn) -> Result<FinFn> {
        self.check_endo(endo)?;
        Ok(endo.on_arrow(self.mor_of_fn(f)?))
    }

    fn check_endo(&self, endo: &SetFunctor) -> Result<()> {
        if *endo.src != *self.cat {
            return Err(Error::Shape(
                "endofunctor does not live on this universe".into(),
            ));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::polynomial_functor;
    use crate::finset::compose;

    #[test]
    fn arrow_lookup_roundtrips_tables() {
        let u = Universe::new(&[0, 1, 2, 4], Budget::default()).unwrap();
        let f = FinFn::new(FinSet::of(2), FinSet::of(4), vec![3, 1]).unwrap();
        let m = u.mor_of_fn(&f).unwrap();
        assert_eq!(*u.incl.on_arrow_ref(m), f);
        let missing = FinFn::new(FinSet::of(3), FinSet::of(2), vec![0, 0, 1]).unwrap();
        assert!(matches!(
            u.mor_of_fn(&missing),
            Err(Error::OutOfUniverse { size: 3 })
        ));
    }

    #[test]
    fn endofunctor_application_matches_direct_action() {
        let u = Universe::new(&[0, 1, 2, 4], Budget::default()).unwrap();
        let poly = polynomial_functor(&u.incl, 2, &[1]);
        let f = FinFn::new(FinSet::of(2), FinSet::of(2), vec![1, 0]).unwrap();
        let lifted = u.apply_endo(&poly, &f).unwrap();
        assert_eq!(lifted.dom.size, 4);
        // Constants fixed, the identity-power block permuted alongside.
        assert_eq!(lifted.table, vec![0, 1, 3, 2]);
        let g = FinFn::new(FinSet::of(2), FinSet::of(4), vec![2, 0]).unwrap();
        let gf = u.apply_endo(&poly, &compose(&g, &f).unwrap()).unwrap();
        assert_eq!(
            gf,
            compose(&u.apply_endo(&poly, &g).unwrap(), &lifted).unwrap()
        );
    }
}
