//! Smith normal form over the integers.
//!
//! Deterministic elimination: the pivot is always an entry of minimal nonzero
//! absolute value in the remaining block (first such entry in row-major
//! order). Transformations are tracked together with their inverses.

use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::{Int, MatZ};

/// `U · A · V = S` with `U`, `V` unimodular and `S` diagonal.
#[derive(Clone, Debug)]
pub struct SnfResult {
    pub u: MatZ,
    pub s: MatZ,
    pub v: MatZ,
    pub u_inv: MatZ,
    pub v_inv: MatZ,
    /// Diagonal of `S`, length `min(rows, cols)`; each divides the next and
    /// zeros trail.
    pub elementary_divisors: Vec<Int>,
}

impl SnfResult {
    pub fn rank(&self) -> usize {
        self.elementary_divisors
            .iter()
            .filter(|d| !d.is_zero())
            .count()
    }

    /// Divisors greater than one: the torsion of the cokernel.
    pub fn torsion(&self) -> Vec<Int> {
        self.elementary_divisors
            .iter()
            .filter(|d| **d > Int::from(1))
            .cloned()
            .collect()
    }
}

struct Tracker {
    a: MatZ,
    u: MatZ,
    u_inv: MatZ,
    v: MatZ,
    v_inv: MatZ,
    track: bool,
}

impl Tracker {
    /// row_i += c * row_k
    fn add_row(&mut self, i: usize, k: usize, c: &Int) {
        add_row(&mut self.a, i, k, c);
        if self.track {
            add_row(&mut self.u, i, k, c);
            add_col(&mut self.u_inv, k, i, &-c);
        }
    }

    /// col_j += c * col_k
    fn add_col(&mut self, j: usize, k: usize, c: &Int) {
        add_col(&mut self.a, j, k, c);
        if self.track {
            add_col(&mut self.v, j, k, c);
            add_row(&mut self.v_inv, k, j, &-c);
        }
    }

    fn swap_rows(&mut self, i: usize, k: usize) {
        self.a.swap_rows(i, k);
        if self.track {
            self.u.swap_rows(i, k);
            self.u_inv.swap_cols(i, k);
        }
    }

    fn swap_cols(&mut self, j: usize, k: usize) {
        self.a.swap_cols(j, k);
        if self.track {
            self.v.swap_cols(j, k);
            self.v_inv.swap_rows(j, k);
        }
    }

    fn negate_row(&mut self, i: usize) {
        negate_row(&mut self.a, i);
        if self.track {
            negate_row(&mut self.u, i);
            let rows = self.u_inv.rows();
            for r in 0..rows {
                let x = &mut self.u_inv[(r, i)];
                *x = -std::mem::take(x);
            }
        }
    }
}

fn add_row(m: &mut MatZ, i: usize, k: usize, c: &Int) {
    if c.is_zero() {
        return;
    }
    for j in 0..m.cols() {
        let t = &m[(k, j)] * c;
        if !t.is_zero() {
            m[(i, j)] += t;
        }
    }
}

fn add_col(m: &mut MatZ, j: usize, k: usize, c: &Int) {
    if c.is_zero() {
        return;
    }
    for i in 0..m.rows() {
        let t = &m[(i, k)] * c;
        if !t.is_zero() {
            m[(i, j)] += t;
        }
    }
}

fn negate_row(m: &mut MatZ, i: usize) {
    for x in m.row_mut(i) {
        *x = -std::mem::take(x);
    }
}

fn min_pivot(a: &MatZ, k: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in k..a.rows() {
        for j in k..a.cols() {
            let x = &a[(i, j)];
            if x.is_zero() {
                continue;
            }
            match best {
                Some((bi, bj)) if a[(bi, bj)].abs() <= x.abs() => {}
                _ => best = Some((i, j)),
            }
        }
    }
    best
}

/// Full Smith normal form with transformation matrices.
pub fn smith_normal_form(a: &MatZ) -> SnfResult {
    run(a, true)
}

/// Elementary divisors only (no transformation bookkeeping).
pub fn elementary_divisors(a: &MatZ) -> Vec<Int> {
    run(a, false).elementary_divisors
}

fn run(a: &MatZ, track: bool) -> SnfResult {
    let (m, n) = (a.rows(), a.cols());
    let mut t = Tracker {
        a: a.clone(),
        u: if track { MatZ::identity(m) } else { MatZ::zeros(0, 0) },
        u_inv: if track { MatZ::identity(m) } else { MatZ::zeros(0, 0) },
        v: if track { MatZ::identity(n) } else { MatZ::zeros(0, 0) },
        v_inv: if track { MatZ::identity(n) } else { MatZ::zeros(0, 0) },
        track,
    };
    let steps = m.min(n);
    for k in 0..steps {
        let Some((pi, pj)) = min_pivot(&t.a, k) else {
            break;
        };
        t.swap_rows(k, pi);
        t.swap_cols(k, pj);
        loop {
            // Reduce column k below the pivot.
            let mut dirty = false;
            for i in k + 1..m {
                if t.a[(i, k)].is_zero() {
                    continue;
                }
                let q = t.a[(i, k)].div_floor(&t.a[(k, k)]);
                t.add_row(i, k, &-q);
                if !t.a[(i, k)].is_zero() {
                    dirty = true;
                }
            }
            // Reduce row k right of the pivot.
            for j in k + 1..n {
                if t.a[(k, j)].is_zero() {
                    continue;
                }
                let q = t.a[(k, j)].div_floor(&t.a[(k, k)]);
                t.add_col(j, k, &-q);
                if !t.a[(k, j)].is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                // A smaller remainder appeared; move it to the pivot slot.
                let (pi, pj) = min_pivot_cross(&t.a, k);
                t.swap_rows(k, pi);
                t.swap_cols(k, pj);
                continue;
            }
            // Row and column are clear; enforce divisibility of the rest.
            let piv = t.a[(k, k)].clone();
            let bad = (k + 1..m)
                .flat_map(|i| (k + 1..n).map(move |j| (i, j)))
                .find(|&(i, j)| !t.a[(i, j)].is_multiple_of(&piv));
            match bad {
                Some((i, _)) => t.add_row(k, i, &Int::from(1)),
                None => break,
            }
        }
        if t.a[(k, k)].is_negative() {
            t.negate_row(k);
        }
    }
    let elementary_divisors = (0..steps).map(|i| t.a[(i, i)].clone()).collect();
    SnfResult {
        u: t.u,
        s: t.a,
        v: t.v,
        u_inv: t.u_inv,
        v_inv: t.v_inv,
        elementary_divisors,
    }
}

/// Minimal nonzero entry among row k and column k (from the pivot onwards).
fn min_pivot_cross(a: &MatZ, k: usize) -> (usize, usize) {
    let mut best = (k, k);
    let mut best_abs: Option<Int> = None;
    let cands = (k..a.rows())
        .map(|i| (i, k))
        .chain((k + 1..a.cols()).map(|j| (k, j)));
    for (i, j) in cands {
        let x = a[(i, j)].abs();
        if x.is_zero() {
            continue;
        }
        if best_abs.as_ref().is_none_or(|b| x < *b) {
            best = (i, j);
            best_abs = Some(x);
        }
    }
    best
}
