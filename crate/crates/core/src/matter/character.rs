use std::ops::Mul;

use num_complex::Complex64;
use rayon::prelude::*;

use super::action::GroupAction;
use super::rep::{OneDimRep, UnitaryRep};
use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::group::{ConjugacyClassTable, GroupRef};
use crate::numeric;

/// Relative tolerance between the snapped determinant and the float one.
const DET_CROSSCHECK: f64 = 1e-9;

/// Groups up to this order get a check on every class member.
const FULL_CLASS_CHECK: usize = 48;

/// One exact value per conjugacy class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassFunction {
    values: Vec<Cyclotomic>,
}

impl ClassFunction {
    pub fn new(values: Vec<Cyclotomic>) -> Self {
        Self { values }
    }

    pub fn constant(classes: &ConjugacyClassTable, value: Cyclotomic) -> Self {
        Self::new(vec![value; classes.len()])
    }

    /// Samples an element-wise function on each class, failing with
    /// [`Error::ClassInconsistency`] if sampled members disagree.
    pub fn from_element_fn<F>(classes: &ConjugacyClassTable, f: F) -> Result<Self>
    where
        F: Fn(usize) -> Result<Cyclotomic> + Sync,
    {
        let full = classes.group_order() <= FULL_CLASS_CHECK;
        let values = (0..classes.len())
            .into_par_iter()
            .map(|c| {
                let members = classes.members(c);
                let v = f(members[0])?;
                let samples: Vec<usize> = if full {
                    members[1..].to_vec()
                } else {
                    vec![members[members.len() / 2], members[members.len() - 1]]
                };
                for m in samples {
                    if f(m)? != v {
                        return Err(Error::ClassInconsistency { class: c });
                    }
                }
                Ok(v)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { values })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn value(&self, class: usize) -> &Cyclotomic {
        &self.values[class]
    }

    pub fn values(&self) -> &[Cyclotomic] {
        &self.values
    }

    pub fn pow(&self, e: u64) -> Self {
        Self::new(self.values.iter().map(|v| v.pow(e)).collect())
    }

    pub fn to_complex(&self) -> Vec<Complex64> {
        self.values.iter().map(Cyclotomic::to_complex).collect()
    }
}

impl Mul for &ClassFunction {
    type Output = ClassFunction;
    fn mul(self, rhs: Self) -> ClassFunction {
        assert_eq!(self.len(), rhs.len(), "class functions on different class tables");
        ClassFunction::new(self.values.iter().zip(&rhs.values).map(|(a, b)| a * b).collect())
    }
}

fn check_table(group: &GroupRef, classes: &ConjugacyClassTable) -> Result<()> {
    // Class tables carry no group handle, so only the order can be compared.
    if group.order() == classes.group_order() {
        Ok(())
    } else {
        Err(Error::GroupMismatch)
    }
}

/// `C ↦ |Fix(g)|` for `g ∈ C`.
pub fn fixed_point_character(action: &GroupAction, classes: &ConjugacyClassTable) -> Result<ClassFunction> {
    check_table(action.group(), classes)?;
    ClassFunction::from_element_fn(classes, |g| Ok(Cyclotomic::from_integer(1, action.fixed_points(g) as i64)))
}

/// `C ↦ tr ρ(g)`.
pub fn rep_character(rep: &UnitaryRep, classes: &ConjugacyClassTable) -> Result<ClassFunction> {
    check_table(rep.group(), classes)?;
    let values = classes
        .reps()
        .par_iter()
        .map(|&g| match rep.exact_matrix(g) {
            Some(m) => Ok(m.trace()),
            None => {
                let m = rep.group().element_order(g);
                let mults = rep.eigenvalue_multiplicities(g)?;
                let mut acc = Cyclotomic::zero(m);
                for (k, &c) in mults.iter().enumerate() {
                    acc += &Cyclotomic::zeta_power(m, k as i64).scale_int(c as i64);
                }
                Ok(acc)
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ClassFunction::new(values))
}

/// `C ↦ det(1 + sign·ρ(g))`, the character of the exterior algebra of `ρ`
/// (for `sign = -1`, its super-trace).
///
/// The value is assembled exactly from snapped eigenvalues and compared with
/// a floating-point determinant.
pub fn fermion_site_character(rep: &UnitaryRep, sign: i8, classes: &ConjugacyClassTable) -> Result<ClassFunction> {
    assert!(sign == 1 || sign == -1, "sign must be ±1");
    check_table(rep.group(), classes)?;
    let dim = rep.dim();
    let values = classes
        .reps()
        .par_iter()
        .map(|&g| {
            let m = rep.group().element_order(g);
            let mults = rep.eigenvalue_multiplicities(g)?;
            let mut acc = Cyclotomic::one(m);
            for (k, &c) in mults.iter().enumerate() {
                if c == 0 {
                    continue;
                }
                let factor = &Cyclotomic::one(m) + &Cyclotomic::zeta_power(m, k as i64).scale_int(sign as i64);
                acc *= &factor.pow(c as u64);
            }
            let mut shifted = rep.matrix(g).to_vec();
            for (i, z) in shifted.iter_mut().enumerate() {
                *z *= sign as f64;
                if i % (dim + 1) == 0 {
                    *z += 1.0;
                }
            }
            let float = numeric::det(&shifted, dim);
            let exact = acc.to_complex();
            if (float - exact).norm() > DET_CROSSCHECK * exact.norm().max(1.0) {
                return Err(Error::SnapFailure {
                    element: g,
                    detail: format!("snapped determinant {exact} differs from {float}"),
                });
            }
            Ok(acc)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ClassFunction::new(values))
}

/// `C ↦ σ(g)`.
pub fn one_dim_character(sigma: &OneDimRep, classes: &ConjugacyClassTable) -> Result<ClassFunction> {
    check_table(sigma.group(), classes)?;
    ClassFunction::from_element_fn(classes, |g| Ok(sigma.value(g)))
}
