//! Shared test helpers.

#![allow(dead_code)]

use std::collections::{HashMap, HashSet};

use arroids::arrangement::{ArrangementData, CurveArrangement};
use arroids::Arroid;
use num_traits::ToPrimitive;

/// Point records as sorted member lists, sorted.
pub fn incidence(a: &Arroid) -> Vec<Vec<String>> {
    let mut out: Vec<Vec<String>> = a
        .points()
        .iter()
        .map(|p| {
            let mut m = p.members.clone();
            m.sort();
            m
        })
        .collect();
    out.sort();
    out
}

/// Counts connected components of the real complement of an explicit
/// arrangement by brute force. Samples the surface of the cube
/// `max(|x|,|y|,|z|) = n` at integer points, labels each sample with the
/// sign of every curve equation, and flood-fills between neighbouring
/// samples with equal labels. Every region of the projective plane lifts
/// to two antipodal components once a line is present. Near a point where
/// several curves cross, the sectors are thinner than the grid and leave
/// isolated specks of a few samples; components below `MIN_SIZE` samples
/// are ignored.
const MIN_SIZE: usize = 8;

pub fn grid_b0(arr: &CurveArrangement, n: i64) -> usize {
    let ArrangementData::Explicit(curves) = &arr.data else {
        panic!("grid oracle needs equations");
    };
    let polys: Vec<Vec<f64>> = curves
        .iter()
        .map(|c| c.coeffs.iter().map(|q| q.to_f64().unwrap()).collect())
        .collect();
    let eval = |c: &[f64], p: [f64; 3]| -> f64 {
        let [x, y, z] = p;
        if c.len() == 3 {
            c[0] * x + c[1] * y + c[2] * z
        } else {
            c[0] * x * x + c[1] * y * y + c[2] * z * z + c[3] * x * y + c[4] * x * z + c[5] * y * z
        }
    };
    let mut label: HashMap<[i64; 3], u64> = HashMap::new();
    for i in -n..=n {
        for j in -n..=n {
            for k in -n..=n {
                if i.abs().max(j.abs()).max(k.abs()) != n {
                    continue;
                }
                let p = [i as f64, j as f64, k as f64];
                let mut code = 0u64;
                let mut on_curve = false;
                for (t, c) in polys.iter().enumerate() {
                    let v = eval(c, p);
                    if v.abs() < 1e-9 {
                        on_curve = true;
                        break;
                    }
                    if v > 0.0 {
                        code |= 1 << t;
                    }
                }
                if !on_curve {
                    label.insert([i, j, k], code);
                }
            }
        }
    }
    let mut seen: HashSet<[i64; 3]> = HashSet::new();
    let mut components = 0;
    let keys: Vec<[i64; 3]> = label.keys().copied().collect();
    for start in keys {
        if seen.contains(&start) {
            continue;
        }
        let code = label[&start];
        let mut stack = vec![start];
        seen.insert(start);
        let mut size = 0;
        while let Some(p) = stack.pop() {
            size += 1;
            for axis in 0..3 {
                for step in [-1, 1] {
                    let mut q = p;
                    q[axis] += step;
                    if label.get(&q) == Some(&code) && !seen.contains(&q) {
                        seen.insert(q);
                        stack.push(q);
                    }
                }
            }
        }
        if size >= MIN_SIZE {
            components += 1;
        }
    }
    assert_eq!(components % 2, 0, "components should pair up antipodally");
    components / 2
}
