#![allow(dead_code)]

use dealab::data::{Dataset, Dmu};
use dealab::rational::Rational;
use dealab::solver::{LpProblem, Relation, Sense};
use itertools::Itertools;
use num_traits::{One, Zero};
use proptest::prelude::*;

/// Solves a square system by Gauss-Jordan elimination; `None` if singular.
pub fn solve_square(mut a: Vec<Vec<Rational>>, mut b: Vec<Rational>) -> Option<Vec<Rational>> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        b.swap(col, pivot);
        let inv = Rational::one() / &a[col][col];
        for j in 0..n {
            a[col][j] = &a[col][j] * &inv;
        }
        b[col] = &b[col] * &inv;
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for j in 0..n {
                    let t = &f * &a[col][j];
                    a[r][j] -= t;
                }
                let t = &f * &b[col];
                b[r] -= t;
            }
        }
    }
    Some(b)
}

/// Every vertex of a bounded LP's feasible region, found by intersecting
/// each `n`-subset of constraint hyperplanes (rows and variable bounds).
pub fn brute_vertices(lp: &LpProblem) -> Vec<Vec<Rational>> {
    let n = lp.var_count();
    let mut planes: Vec<(Vec<Rational>, Rational)> = lp
        .constraints
        .iter()
        .map(|c| (c.coeffs.clone(), c.rhs.clone()))
        .collect();
    for (j, b) in lp.bounds.iter().enumerate() {
        let mut unit = vec![Rational::zero(); n];
        unit[j] = Rational::one();
        planes.push((unit.clone(), b.lower.clone()));
        if let Some(u) = &b.upper {
            planes.push((unit, u.clone()));
        }
    }
    let mut found: Vec<Vec<Rational>> = Vec::new();
    for subset in (0..planes.len()).combinations(n) {
        let a = subset.iter().map(|&i| planes[i].0.clone()).collect();
        let b = subset.iter().map(|&i| planes[i].1.clone()).collect();
        if let Some(x) = solve_square(a, b) {
            if lp.is_feasible(&x) && !found.contains(&x) {
                found.push(x);
            }
        }
    }
    found
}

/// Optimum over the vertex list, or `None` when there is no vertex.
pub fn brute_optimum(lp: &LpProblem) -> Option<Rational> {
    let values = brute_vertices(lp).into_iter().map(|x| lp.objective_value(&x));
    match lp.sense {
        Sense::Minimize => values.min(),
        Sense::Maximize => values.max(),
    }
}

pub fn r(v: i64) -> Rational {
    Rational::from_integer(v.into())
}

/// Random LP with every variable boxed in `[0, u]`, so it is never unbounded.
pub fn bounded_lp(max_vars: usize, max_rows: usize) -> impl Strategy<Value = LpProblem> {
    (1..=max_vars, 1..=max_rows).prop_flat_map(|(n, rows)| {
        (
            any::<bool>(),
            prop::collection::vec(-3i64..=3, n),
            prop::collection::vec((prop::collection::vec(-3i64..=3, n), 0usize..3, -2i64..=6), rows),
            prop::collection::vec(1i64..=4, n),
        )
            .prop_map(|(maximize, c, rows, upper)| {
                let sense = if maximize { Sense::Maximize } else { Sense::Minimize };
                let mut lp = LpProblem::new(sense, c.into_iter().map(r).collect());
                for (coeffs, rel, rhs) in rows {
                    let rel = [Relation::Le, Relation::Eq, Relation::Ge][rel];
                    lp.add_constraint(coeffs.into_iter().map(r).collect(), rel, r(rhs));
                }
                for (j, u) in upper.into_iter().enumerate() {
                    lp.set_bounds(j, Rational::zero(), Some(r(u)));
                }
                lp
            })
    })
}

/// Random integer dataset: `n` DMUs, `m` inputs and `m` outputs in `1..=9`.
pub fn integer_dataset(max_n: usize, max_dim: usize) -> impl Strategy<Value = Dataset> {
    (1..=max_n, 1..=max_dim).prop_flat_map(|(n, m)| {
        prop::collection::vec((prop::collection::vec(1i64..=9, m), prop::collection::vec(1i64..=9, m)), n).prop_map(
            |rows| {
                let dmus = rows
                    .iter()
                    .enumerate()
                    .map(|(i, (x, y))| Dmu::integer(format!("D{i}"), x, y))
                    .collect();
                Dataset::new(dmus).expect("valid random dataset")
            },
        )
    })
}

/// 1-input/1-output integer dataset with small values, for grid checks.
pub fn planar_dataset(max_n: usize, max_value: i64) -> impl Strategy<Value = Dataset> {
    prop::collection::btree_set((1..=max_value, 0..=max_value), 1..=max_n).prop_map(|points| {
        let dmus = points
            .iter()
            .enumerate()
            .map(|(i, &(x, y))| Dmu::integer(format!("D{i}"), &[x], &[y]))
            .collect();
        Dataset::new(dmus).expect("valid planar dataset")
    })
}
