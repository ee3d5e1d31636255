//! Distance two-point functions of map and hypermap families, computed
//! twice: from the mobile recurrences and from the closed forms, with
//! continued-fraction, asymptotic and numeric cross-checks.

mod asym;
mod closed;
mod contfrac;
mod cpq;
mod recurrence;

pub use asym::{estimate_edge_constant, exact_constants, AsymConstants};
pub use closed::{quartic_root_sum_residual, two_param_roots, two_param_trees, verify_ansatz, AnsatzReport};
pub use contfrac::continued_fraction_rs;
pub use cpq::{cpq_identity_check, CpqReport};

use crate::rat::Rat;
use crate::series::{Series, Series2, SeriesError};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TwoPointError {
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error("observable {0:?} is not defined for family {1:?}")]
    UndefinedObservable(Observable, Family),
    #[error("root-face type {0:?} is not admissible for family {1:?}")]
    InadmissibleType((i64, i64, i64), Family),
    #[error("branch selection failed: {0}")]
    Branch(String),
    #[error("estimator needs at least order 50, got {0}")]
    EstimatorOrderTooSmall(i64),
    #[error("cpq check: {0}")]
    Cpq(String),
}

/// The map and hypermap families whose two-point functions are computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Family {
    GeneralMap,
    BipartiteMap,
    GeneralHypermap,
    ThreeHypermap,
    ThreeConstellation,
    GeneralMapTwoParam,
    BipartiteMapTwoParam,
    GeneralHypermapTwoParam,
}

impl Family {
    pub fn all() -> [Family; 8] {
        [
            Family::GeneralMap,
            Family::BipartiteMap,
            Family::GeneralHypermap,
            Family::ThreeHypermap,
            Family::ThreeConstellation,
            Family::GeneralMapTwoParam,
            Family::BipartiteMapTwoParam,
            Family::GeneralHypermapTwoParam,
        ]
    }

    pub fn two_param(self) -> bool {
        matches!(
            self,
            Family::GeneralMapTwoParam
                | Family::BipartiteMapTwoParam
                | Family::GeneralHypermapTwoParam
        )
    }

    /// How far the recurrence couples neighboring indices.
    pub fn reach(self) -> usize {
        match self {
            Family::ThreeHypermap | Family::ThreeConstellation => 2,
            _ => 1,
        }
    }

    /// Observables defined for the family.
    pub fn observables(self) -> &'static [Observable] {
        use Observable::*;
        match self {
            Family::GeneralMap => &[T, R, SSq, V],
            Family::BipartiteMap => &[T, R, V],
            Family::GeneralHypermap => &[T, HyperR],
            Family::ThreeHypermap | Family::ThreeConstellation => &[T, R, V],
            Family::GeneralMapTwoParam => &[T, U, R, SSq],
            Family::BipartiteMapTwoParam => &[T, U, R],
            Family::GeneralHypermapTwoParam => &[T, U, HyperR],
        }
    }

    pub fn parse(s: &str) -> Option<Family> {
        Some(match s {
            "general" => Family::GeneralMap,
            "bipartite" => Family::BipartiteMap,
            "hypermap" => Family::GeneralHypermap,
            "three-hypermap" | "3-hypermap" => Family::ThreeHypermap,
            "three-constellation" | "3-constellation" => Family::ThreeConstellation,
            "general-2p" => Family::GeneralMapTwoParam,
            "bipartite-2p" => Family::BipartiteMapTwoParam,
            "hypermap-2p" => Family::GeneralHypermapTwoParam,
            _ => return None,
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::GeneralMap => "general",
            Family::BipartiteMap => "bipartite",
            Family::GeneralHypermap => "hypermap",
            Family::ThreeHypermap => "three-hypermap",
            Family::ThreeConstellation => "three-constellation",
            Family::GeneralMapTwoParam => "general-2p",
            Family::BipartiteMapTwoParam => "bipartite-2p",
            Family::GeneralHypermapTwoParam => "hypermap-2p",
        }
    }
}

/// Observables housed by a table. `SSq` is the level generating function
/// (a square, kept on the integer grid); `HyperR` the hyperedge-type one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Observable {
    T,
    U,
    R,
    SSq,
    V,
    HyperR,
}

impl Observable {
    pub fn name(self) -> &'static str {
        match self {
            Observable::T => "T",
            Observable::U => "U",
            Observable::R => "R",
            Observable::SSq => "S^2",
            Observable::V => "V",
            Observable::HyperR => "calR",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    Recurrence,
    ClosedForm,
}

/// One- or two-parameter series, depending on the family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Value {
    One(Series),
    Two(Series2),
}

impl Value {
    pub fn one(&self) -> &Series {
        match self {
            Value::One(s) => s,
            Value::Two(_) => panic!("expected a one-parameter series"),
        }
    }

    pub fn two(&self) -> &Series2 {
        match self {
            Value::Two(s) => s,
            Value::One(_) => panic!("expected a two-parameter series"),
        }
    }

    /// Specialize two-parameter series at a rational `z`.
    pub fn eval_z(&self, z: &Rat) -> Series {
        match self {
            Value::One(s) => s.clone(),
            Value::Two(s) => s.eval_z(z),
        }
    }
}

/// A family's two-point functions on an index window, with one series per
/// observable and index.
#[derive(Debug, Clone)]
pub struct TwoPointTable {
    pub family: Family,
    pub i_max: usize,
    pub trunc: i64,
    pub provenance: Provenance,
    /// `observables[obs][i]` is the series at index `i` (entries below the
    /// observable's minimal index are zero/one placeholders as defined).
    pub observables: BTreeMap<Observable, Vec<Value>>,
}

impl TwoPointTable {
    pub fn get(&self, obs: Observable, i: usize) -> Result<&Value, TwoPointError> {
        self.observables
            .get(&obs)
            .and_then(|v| v.get(i))
            .ok_or(TwoPointError::UndefinedObservable(obs, self.family))
    }

    pub fn series(&self, obs: Observable, i: usize) -> Result<&Series, TwoPointError> {
        Ok(self.get(obs, i)?.one())
    }

    pub fn series2(&self, obs: Observable, i: usize) -> Result<&Series2, TwoPointError> {
        Ok(self.get(obs, i)?.two())
    }
}

/// Solve the family's mobile recurrence order-by-order on a padded index
/// window and assemble all observables. Coefficients are exact and
/// independent of the padding.
pub fn solve_recurrence(
    family: Family,
    i_max: usize,
    trunc: i64,
) -> Result<TwoPointTable, TwoPointError> {
    let (t, u) = recurrence::t_and_u(family, i_max + 2, trunc);
    assemble_observables(family, i_max, trunc, Provenance::Recurrence, t, u)
}

/// Compute all observables from the closed forms: the algebraic `T`, the
/// in-disk characteristic roots, and the paper's product displays.
pub fn closed_form(
    family: Family,
    i_max: usize,
    trunc: i64,
) -> Result<TwoPointTable, TwoPointError> {
    closed::closed_form(family, i_max, trunc)
}

/// Assemble the derived observables from the `T` (and `U`) sequences.
pub fn assemble_observables(
    family: Family,
    i_max: usize,
    trunc: i64,
    provenance: Provenance,
    t: Vec<Value>,
    u: Option<Vec<Value>>,
) -> Result<TwoPointTable, TwoPointError> {
    let mut observables = BTreeMap::new();
    match family {
        Family::GeneralMap | Family::BipartiteMap => {
            let t1: Vec<&Series> = t.iter().map(|v| v.one()).collect();
            let one = Series::one(crate::series::Grid::One, trunc);
            let tt = Series::var(crate::series::Grid::One, trunc);
            let mut r = Vec::new();
            let mut ssq = Vec::new();
            let mut v = Vec::new();
            for i in 0..=i_max {
                let ri = one.add(&tt.mul(t1[i]).mul(t1[i + 1])).truncate(trunc);
                v.push(Value::One(ri.log()?));
                r.push(Value::One(ri));
                if family == Family::GeneralMap {
                    ssq.push(Value::One(tt.mul(t1[i + 1]).mul(t1[i + 1]).truncate(trunc)));
                }
            }
            observables.insert(Observable::R, r);
            observables.insert(Observable::V, v);
            if family == Family::GeneralMap {
                observables.insert(Observable::SSq, ssq);
            }
        }
        Family::GeneralHypermap => {
            let t1: Vec<&Series> = t.iter().map(|v| v.one()).collect();
            let one = Series::one(crate::series::Grid::One, trunc);
            let tt = Series::var(crate::series::Grid::One, trunc);
            let t2 = tt.mul(&tt);
            let mut hr = Vec::new();
            for i in 0..=i_max {
                let prod = t2.mul(t1[i]).mul(t1[i + 1]).mul(t1[i + 2]);
                hr.push(Value::One(one.add(&prod).truncate(trunc)));
            }
            observables.insert(Observable::HyperR, hr);
        }
        Family::ThreeHypermap | Family::ThreeConstellation => {
            let t1: Vec<&Series> = t.iter().map(|v| v.one()).collect();
            let one = Series::one(crate::series::Grid::One, trunc);
            let tt = Series::var(crate::series::Grid::One, trunc);
            let zero = Series::zero(crate::series::Grid::One, trunc);
            let mut r = Vec::new();
            let mut v = Vec::new();
            for i in 0..=i_max {
                let prev = if i == 0 { &zero } else { t1[i - 1] };
                let neighbor_sum = if family == Family::ThreeHypermap {
                    prev.add(t1[i]).add(t1[i + 1]).add(t1[i + 2])
                } else {
                    prev.add(t1[i + 2])
                };
                let ri = one.add(&tt.mul(t1[i]).mul(t1[i + 1]).mul(&neighbor_sum)).truncate(trunc);
                v.push(Value::One(ri.log()?));
                r.push(Value::One(ri));
            }
            observables.insert(Observable::R, r);
            observables.insert(Observable::V, v);
        }
        Family::GeneralMapTwoParam | Family::BipartiteMapTwoParam => {
            let u = u.as_ref().expect("two-parameter families carry U");
            let one = Series2::one(trunc);
            let tt = Series2::var_t(trunc);
            let mut r = Vec::new();
            let mut ssq = Vec::new();
            for i in 0..=i_max {
                let ri =
                    one.add(&tt.mul(u[i].two()).mul(t[i + 1].two())).truncate(trunc);
                r.push(Value::Two(ri));
                if family == Family::GeneralMapTwoParam {
                    ssq.push(Value::Two(
                        tt.mul(t[i + 1].two()).mul(t[i + 1].two()).truncate(trunc),
                    ));
                }
            }
            observables.insert(Observable::R, r);
            if family == Family::GeneralMapTwoParam {
                observables.insert(Observable::SSq, ssq);
            }
        }
        Family::GeneralHypermapTwoParam => {
            let u = u.as_ref().expect("two-parameter families carry U");
            let one = Series2::one(trunc);
            let t2 = Series2::var_t(trunc).powi(2);
            let mut hr = Vec::new();
            for i in 0..=i_max {
                let prod = t2.mul(u[i].two()).mul(u[i + 1].two()).mul(t[i + 2].two());
                hr.push(Value::Two(one.add(&prod).truncate(trunc)));
            }
            observables.insert(Observable::HyperR, hr);
        }
    }
    let trim = |v: Vec<Value>| -> Vec<Value> { v.into_iter().take(i_max + 1).collect() };
    observables.insert(Observable::T, trim(t));
    if let Some(u) = u {
        observables.insert(Observable::U, trim(u));
    }
    let observables = observables
        .into_iter()
        .map(|(k, v)| {
            let v = if v.len() > i_max + 1 { v.into_iter().take(i_max + 1).collect() } else { v };
            (k, v)
        })
        .collect();
    Ok(TwoPointTable { family, i_max, trunc, provenance, observables })
}

/// The triple-index generating function `t * T_{i1+1} T_{i2+1} T_{i3+1}` of
/// the triangular families, restricted to the admissible root-face types.
pub fn triple_r(
    family: Family,
    table: &TwoPointTable,
    i1: i64,
    i2: i64,
    i3: i64,
) -> Result<Series, TwoPointError> {
    if !admissible_triple(family, i1, i2, i3) {
        return Err(TwoPointError::InadmissibleType((i1, i2, i3), family));
    }
    let t = table.observables.get(&Observable::T).expect("T always present");
    let idx = |i: i64| -> &Series { t[(i + 1) as usize].one() };
    let tt = Series::var(crate::series::Grid::One, table.trunc);
    Ok(tt.mul(idx(i1)).mul(idx(i2)).mul(idx(i3)).truncate(table.trunc))
}

/// The admissible root-face counterclockwise types `(j, ...)`.
pub fn admissible_triple(family: Family, i1: i64, i2: i64, i3: i64) -> bool {
    let (a, b) = (i2 - i1, i3 - i1);
    match family {
        Family::ThreeHypermap => matches!(
            (a, b),
            (-1, -2) | (-1, -1) | (-1, 0) | (-1, 1) | (0, -1) | (0, 0) | (0, 1) | (1, 0) | (1, 1) | (2, 1)
        ),
        Family::ThreeConstellation => matches!((a, b), (-1, -2) | (-1, 1) | (2, 1)),
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    #[test]
    fn general_map_t_matches_hand_iteration() {
        let table = solve_recurrence(Family::GeneralMap, 4, 6).unwrap();
        let t1 = table.series(Observable::T, 1).unwrap();
        // T_1 = 1 + 2t + 9t^2 + ... (two iterations by hand).
        assert_eq!(t1.coeff(0), rat(1));
        assert_eq!(t1.coeff(1), rat(2));
        assert_eq!(t1.coeff(2), rat(9));
        // T_0 = 0 is the boundary condition.
        assert!(table.series(Observable::T, 0).unwrap().is_zero());
    }

    #[test]
    fn recurrence_is_padding_independent() {
        for family in [Family::GeneralMap, Family::ThreeHypermap, Family::BipartiteMapTwoParam] {
            let a = solve_recurrence(family, 3, 8).unwrap();
            let (t_b, _) = recurrence::t_and_u_padded(family, 5, 8, 6);
            for i in 0..=3 {
                match (&a.observables[&Observable::T][i], &t_b[i]) {
                    (Value::One(x), Value::One(y)) => assert_eq!(x, &y.truncate(x.trunc_units())),
                    (Value::Two(x), Value::Two(y)) => assert_eq!(x, &y.truncate(x.trunc_order())),
                    _ => unreachable!(),
                }
            }
        }
    }

    #[test]
    fn two_param_reduces_at_z_one() {
        let two = solve_recurrence(Family::GeneralMapTwoParam, 3, 8).unwrap();
        let one = solve_recurrence(Family::GeneralMap, 3, 8).unwrap();
        for i in 0..=3 {
            let reduced = two.series2(Observable::T, i).unwrap().eval_z(&rat(1));
            assert_eq!(&reduced, one.series(Observable::T, i).unwrap());
            let u_reduced = two.series2(Observable::U, i).unwrap().eval_z(&rat(1));
            assert_eq!(&u_reduced, one.series(Observable::T, i).unwrap());
        }
    }

    #[test]
    fn admissible_types() {
        assert!(admissible_triple(Family::ThreeHypermap, 5, 4, 3));
        assert!(admissible_triple(Family::ThreeHypermap, 5, 7, 6));
        assert!(!admissible_triple(Family::ThreeHypermap, 5, 7, 7));
        assert!(admissible_triple(Family::ThreeConstellation, 5, 4, 3));
        assert!(!admissible_triple(Family::ThreeConstellation, 5, 4, 4));
    }
}
