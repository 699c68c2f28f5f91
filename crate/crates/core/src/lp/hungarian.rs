use alloc::vec;
use alloc::vec::Vec;

use super::{dual_feasible, check_cs, DualVector, LpError, Regime};
use crate::instance::Vertex;
use crate::matching::{Graph, Matching};
use crate::weights::EdgeWeights;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SolveMode {
    /// Any matching; the dual is nonnegative everywhere.
    Free,
    /// Left-perfect matchings only; left dual values may be negative.
    LeftPerfect,
}

/// A maximum-weight matching together with an optimal integral dual of equal
/// objective.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Optimum {
    pub matching: Matching,
    pub dual: DualVector,
    pub value: i64,
}

/// Maximum-weight matching by the Hungarian method with potentials.
///
/// Pivot ties go to the lowest column (right vertex) id. In `Free` mode
/// edges of weight zero are left out of the returned matching.
pub fn max_weight_matching(
    g: &Graph,
    w: &EdgeWeights,
    mode: SolveMode,
) -> Result<Optimum, LpError> {
    assert_eq!(w.len(), g.edge_count());
    if w.as_slice().iter().any(|&x| x < 0) {
        return Err(LpError::NegativeWeight);
    }
    let lefts: Vec<Vertex> = g.left_vertices().collect();
    let rights: Vec<Vertex> = g.right_vertices().collect();
    let mut col_of = vec![usize::MAX; g.vertex_count()];
    for (j, &h) in rights.iter().enumerate() {
        col_of[h.index()] = j;
    }
    let max_w = w.max();

    let (rows, cols, filler) = match mode {
        SolveMode::LeftPerfect => {
            if lefts.len() > rights.len() {
                return Err(LpError::Infeasible);
            }
            // Any assignment through a non-edge costs more than every
            // assignment that avoids them.
            let big = (max_w + 1) * (lefts.len() as i64 + 1) * 4;
            (lefts.len(), rights.len(), big)
        }
        SolveMode::Free => {
            let n = lefts.len().max(rights.len());
            (n, n, 0)
        }
    };
    let mut cost = vec![vec![filler; cols]; rows];
    let mut real = vec![vec![false; cols]; rows];
    for (i, &a) in lefts.iter().enumerate() {
        for (e, h) in g.neighbors(a) {
            cost[i][col_of[h.index()]] = -w[e];
            real[i][col_of[h.index()]] = true;
        }
    }

    let (row_pot, col_pot, col_row) = hungarian(&cost);

    let mut matching = Matching::empty(g.vertex_count());
    let mut y = vec![0i64; g.vertex_count()];
    match mode {
        SolveMode::LeftPerfect => {
            for (j, &r) in col_row.iter().enumerate() {
                if let Some(i) = r {
                    if !real[i][j] {
                        return Err(LpError::Infeasible);
                    }
                    matching
                        .insert(lefts[i], rights[j])
                        .expect("assignment is a matching");
                }
            }
            for (i, &a) in lefts.iter().enumerate() {
                y[a.index()] = -row_pot[i];
            }
            for (j, &h) in rights.iter().enumerate() {
                y[h.index()] = -col_pot[j];
                debug_assert!(col_row[j].is_some() || col_pot[j] == 0);
            }
        }
        SolveMode::Free => {
            // Shift so the smallest row value is zero; column values stay
            // nonnegative because every padded weight is nonnegative.
            let shift = (0..rows).map(|i| -row_pot[i]).min().unwrap_or(0);
            let row_y = |i: usize| -row_pot[i] - shift;
            let col_y = |j: usize| -col_pot[j] + shift;
            for i in 0..rows {
                assert!(
                    i < lefts.len() || row_y(i) == 0,
                    "padding rows carry no dual value"
                );
            }
            for j in 0..cols {
                assert!(
                    j < rights.len() || col_y(j) == 0,
                    "padding columns carry no dual value"
                );
            }
            for (i, &a) in lefts.iter().enumerate() {
                y[a.index()] = row_y(i);
            }
            for (j, &h) in rights.iter().enumerate() {
                y[h.index()] = col_y(j);
            }
            for (j, &r) in col_row.iter().enumerate().take(rights.len()) {
                if let Some(i) = r.filter(|&i| i < lefts.len() && real[i][j]) {
                    let e = g.edge_id(lefts[i], rights[j]).expect("real edge");
                    if w[e] > 0 {
                        matching
                            .insert(lefts[i], rights[j])
                            .expect("assignment is a matching");
                    }
                }
            }
        }
    }

    let regime = match mode {
        SolveMode::Free => Regime::Symmetric,
        SolveMode::LeftPerfect => Regime::LeftFree,
    };
    let dual = DualVector::new(regime, y);
    let value = w.of(g, &matching);
    assert_eq!(dual.objective(), value, "strong duality");
    assert_eq!(dual_feasible(g, w, &dual), Ok(()), "dual feasibility");
    assert_eq!(check_cs(g, &matching, w, &dual), Ok(()), "complementary slackness");
    Ok(Optimum {
        matching,
        dual,
        value,
    })
}

/// Minimum-cost assignment of every row (`rows <= cols`). Returns row and
/// column potentials with `u[i] + v[j] <= cost[i][j]`, equality on assigned
/// cells, and the row assigned to each column.
fn hungarian(cost: &[Vec<i64>]) -> (Vec<i64>, Vec<i64>, Vec<Option<usize>>) {
    let n = cost.len();
    let m = cost.first().map_or(0, Vec::len);
    assert!(n <= m);
    // 1-based with column 0 as the virtual root.
    let mut u = vec![0i64; n + 1];
    let mut v = vec![0i64; m + 1];
    let mut p = vec![0usize; m + 1];
    let mut way = vec![0usize; m + 1];
    for i in 1..=n {
        p[0] = i;
        let mut j0 = 0;
        let mut minv = vec![i64::MAX; m + 1];
        let mut used = vec![false; m + 1];
        loop {
            used[j0] = true;
            let i0 = p[j0];
            let mut delta = i64::MAX;
            let mut j1 = 0;
            for j in 1..=m {
                if used[j] {
                    continue;
                }
                let cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
                if cur < minv[j] {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if minv[j] < delta {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for j in 0..=m {
                if used[j] {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if p[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }
    let col_row = (1..=m).map(|j| p[j].checked_sub(1)).collect();
    (u[1..].to_vec(), v[1..].to_vec(), col_row)
}
