//! Clusters of curves along one curve, and the sufficient conditions for
//! unique balancing they give.

use std::collections::BTreeSet;

use serde::Serialize;

use super::{arroid_of, CurveArrangement};
use crate::arroid::Point;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Aqueduct {
    pub line: String,
    pub from: String,
    pub to: String,
}

/// A maximal cluster on a curve.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Cluster {
    pub curves: Vec<String>,
    pub contains_line: bool,
    pub contains_conic: bool,
    /// Conics whose four points on the curve are joined by at least five
    /// lines. Only filled in when the curve is a conic.
    pub sources: Vec<String>,
    /// Conics joined by at least four lines; sources are reservoirs too.
    pub reservoirs: Vec<String>,
    pub aqueducts: Vec<Aqueduct>,
    pub is_balancing_supply_system: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClusterAnalysis {
    pub curve: String,
    pub clusters: Vec<Cluster>,
}

/// Union–find over curve positions.
fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    let mut y = x;
    while parent[y] != r {
        let next = parent[y];
        parent[y] = r;
        y = next;
    }
    r
}

pub fn cluster_analysis(arr: &CurveArrangement, curve: &str) -> Result<ClusterAnalysis> {
    let a = arroid_of(arr)?;
    let ci = a.position(curve).map_err(|_| Error::UnknownCurve(curve.to_string()))?;
    let degree = |id: &str| a.degree(id).expect("member of the arroid");
    let on_c: Vec<&Point> = a.points().iter().filter(|p| p.contains(curve)).collect();

    let n = a.len();
    let mut parent: Vec<usize> = (0..n).collect();
    let mut incident = BTreeSet::new();
    for p in &on_c {
        let others: Vec<usize> = a.member_indices(p).into_iter().filter(|&k| k != ci).collect();
        for &k in &others {
            incident.insert(k);
        }
        for w in others.windows(2) {
            let (x, y) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
            parent[x] = y;
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut roots: Vec<usize> = Vec::new();
    for &k in &incident {
        let r = find(&mut parent, k);
        match roots.iter().position(|&x| x == r) {
            Some(g) => groups[g].push(k),
            None => {
                roots.push(r);
                groups.push(vec![k]);
            }
        }
    }

    let ids: Vec<&str> = a.ids().collect();
    let is_conic = degree(curve) == 2;
    let clusters = groups
        .into_iter()
        .map(|g| {
            let curves: Vec<String> = g.iter().map(|&k| ids[k].to_string()).collect();
            let lines: Vec<&str> = g.iter().map(|&k| ids[k]).filter(|id| degree(id) == 1).collect();
            let conics: Vec<&str> = g.iter().map(|&k| ids[k]).filter(|id| degree(id) == 2).collect();
            let mut cl = Cluster {
                contains_line: !lines.is_empty(),
                contains_conic: !conics.is_empty(),
                curves,
                sources: vec![],
                reservoirs: vec![],
                aqueducts: vec![],
                is_balancing_supply_system: false,
            };
            if is_conic {
                fill_supply_data(&mut cl, &on_c, &lines, &conics);
            }
            cl
        })
        .collect();
    Ok(ClusterAnalysis {
        curve: curve.to_string(),
        clusters,
    })
}

/// Sources, reservoirs, aqueducts and the supply-system flag for a cluster
/// on a conic.
fn fill_supply_data(cl: &mut Cluster, on_c: &[&Point], lines: &[&str], conics: &[&str]) {
    let shared = |c: &str| -> Vec<usize> { (0..on_c.len()).filter(|&k| on_c[k].contains(c)).collect() };
    // a line joins two of the points when it passes through both
    let joins = |pts: &[usize]| -> usize {
        lines
            .iter()
            .filter(|l| pts.iter().filter(|&&k| on_c[k].contains(l)).count() >= 2)
            .count()
    };
    for c in conics {
        let pts = shared(c);
        if pts.len() != 4 {
            continue;
        }
        let j = joins(&pts);
        if j >= 5 {
            cl.sources.push(c.to_string());
        }
        if j >= 4 {
            cl.reservoirs.push(c.to_string());
        }
    }
    for (x, c1) in conics.iter().enumerate() {
        for c2 in &conics[x + 1..] {
            let (p1, p2) = (shared(c1), shared(c2));
            for l in lines {
                let hit = p1
                    .iter()
                    .any(|&u| on_c[u].contains(l) && p2.iter().any(|&v| v != u && on_c[v].contains(l)));
                if hit {
                    cl.aqueducts.push(Aqueduct {
                        line: l.to_string(),
                        from: c1.to_string(),
                        to: c2.to_string(),
                    });
                }
            }
        }
    }
    let has_source = !cl.sources.is_empty();
    let all_reservoirs = conics.iter().all(|c| cl.reservoirs.iter().any(|r| r == c));
    // every conic must reach a source along aqueducts
    let mut reached: BTreeSet<&str> = cl.sources.iter().map(String::as_str).collect();
    loop {
        let before = reached.len();
        for aq in &cl.aqueducts {
            if reached.contains(aq.from.as_str()) {
                reached.insert(aq.to.as_str());
            }
            if reached.contains(aq.to.as_str()) {
                reached.insert(aq.from.as_str());
            }
        }
        if reached.len() == before {
            break;
        }
    }
    let linked = conics.iter().all(|c| reached.contains(c));
    cl.is_balancing_supply_system = has_source && all_reservoirs && linked;
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BalanceGuarantee {
    Guaranteed,
    Unknown,
}

/// For a line: every cluster contains a line. For a conic: every maximal
/// cluster contains a conic and is a balancing supply system. These are
/// sufficient conditions only.
pub fn sufficient_unique_balance(arr: &CurveArrangement, curve: &str) -> Result<BalanceGuarantee> {
    let an = cluster_analysis(arr, curve)?;
    let conic = arr.kind(curve)? == super::CurveKind::Conic;
    let ok = an.clusters.iter().all(|c| {
        if conic {
            c.contains_conic && c.is_balancing_supply_system
        } else {
            c.contains_line
        }
    });
    Ok(if ok {
        BalanceGuarantee::Guaranteed
    } else {
        BalanceGuarantee::Unknown
    })
}
