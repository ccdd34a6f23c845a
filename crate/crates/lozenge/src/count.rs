//! Exact weighted tiling-count oracles.
//!
//! Three mutually independent routes compute the weighted tiling count
//! `M(R)` (the sum over tilings of the product of lozenge weights):
//!
//! * [`count_tilings`] — broken-profile dynamic programming over the dual
//!   graph, scanning cells row by row and memoizing on the set of cells
//!   already matched ahead of the scan front;
//! * [`count_tilings_determinant`] — the determinant of a signed bipartite
//!   adjacency matrix under a planar (Kasteleyn-style) edge signing computed
//!   from the geometric embedding, evaluated in exact rational arithmetic;
//! * [`enumerate_tilings`] — explicit backtracking enumeration for tiny
//!   regions.
//!
//! The three never share intermediate results; the verification harness
//! cross-checks them on every region it touches.

use crate::error::{Error, Result};
use crate::lattice::{DualGraph, Lozenge, Orient, Region, Tiling, TriCell};
use crate::Rat;
use num_traits::{One, Signed, Zero};
use std::collections::{BTreeMap, HashMap};

/// Hard cap on the number of cells simultaneously matched ahead of the DP
/// scan front; regions that exceed it are rejected with a capacity error.
pub const FRONTIER_CAP: usize = 64;

/// Weighted tiling count via broken-profile dynamic programming.
///
/// Returns 0 for unbalanced or untileable regions and 1 for the empty region.
pub fn count_tilings(r: &Region) -> Result<Rat> {
    if !r.is_balanced() {
        return Ok(Rat::zero());
    }
    // Scan order: bottom row to top, left to right inside a row. Every dual
    // edge then joins cells that are close in scan order, keeping the set of
    // "matched ahead" cells small.
    let mut cells: Vec<TriCell> = r.cells.iter().cloned().collect();
    cells.sort_by_key(|c| (c.j, 2 * c.i + c.j + i64::from(c.orient == Orient::Down)));
    let index: BTreeMap<TriCell, usize> = cells.iter().enumerate().map(|(k, c)| (*c, k)).collect();

    // Forward adjacency: for cell k, the in-region neighbors with larger scan
    // index, with edge weights.
    let mut ahead: Vec<Vec<(usize, Rat)>> = vec![Vec::new(); cells.len()];
    for (k, c) in cells.iter().enumerate() {
        for n in r.neighbors_in(c) {
            let m = index[&n];
            if m > k {
                let l = Lozenge::new(*c, n)?;
                ahead[k].push((m, r.weight(&l)));
            }
        }
    }

    // memo[(k, pending)] = weighted count of completions, where `pending` is
    // the sorted set of cells at index ≥ k already matched by earlier cells.
    let mut memo: HashMap<(usize, Vec<usize>), Rat> = HashMap::new();

    fn go(
        k: usize,
        pending: &mut Vec<usize>,
        ahead: &[Vec<(usize, Rat)>],
        memo: &mut HashMap<(usize, Vec<usize>), Rat>,
    ) -> Result<Rat> {
        if k == ahead.len() {
            return Ok(Rat::one()); // pending is necessarily empty here
        }
        if pending.len() > FRONTIER_CAP {
            return Err(Error::Capacity(format!(
                "DP frontier exceeded {FRONTIER_CAP} cells"
            )));
        }
        let key = (k, pending.clone());
        if let Some(v) = memo.get(&key) {
            return Ok(v.clone());
        }
        let result = if let Some(pos) = pending.iter().position(|&p| p == k) {
            // Cell k was already matched by an earlier cell.
            pending.remove(pos);
            let v = go(k + 1, pending, ahead, memo)?;
            pending.insert(pos, k);
            v
        } else {
            // Cell k must be matched to a later neighbor not yet taken.
            let mut acc = Rat::zero();
            for (m, w) in &ahead[k] {
                if pending.contains(m) {
                    continue;
                }
                let pos = pending.partition_point(|&p| p < *m);
                pending.insert(pos, *m);
                acc += w * go(k + 1, pending, ahead, memo)?;
                pending.remove(pos);
            }
            acc
        };
        memo.insert(key, result.clone());
        Ok(result)
    }

    go(0, &mut Vec::new(), &ahead, &mut memo)
}

/// Weighted tiling count via an exact determinant under a planar edge signing.
///
/// Builds the geometric planar embedding of the dual graph, signs the edges so
/// that every bounded face has an odd number of edges oriented clockwise, and
/// evaluates `|det K|` of the signed Up×Down weight matrix per connected
/// component.
pub fn count_tilings_determinant(r: &Region) -> Result<Rat> {
    if !r.is_balanced() {
        return Ok(Rat::zero());
    }
    let g = r.dual_graph();
    if g.cells.is_empty() {
        return Ok(Rat::one());
    }
    let mut total = Rat::one();
    for comp in connected_components(&g) {
        total *= component_determinant(&g, &comp)?;
        if total.is_zero() {
            return Ok(Rat::zero());
        }
    }
    Ok(total)
}

fn connected_components(g: &DualGraph) -> Vec<Vec<usize>> {
    let n = g.cells.len();
    let mut adj = vec![Vec::new(); n];
    for (u, v, _) in &g.edges {
        adj[*u].push(*v);
        adj[*v].push(*u);
    }
    let mut comp = vec![usize::MAX; n];
    let mut out = Vec::new();
    for start in 0..n {
        if comp[start] != usize::MAX {
            continue;
        }
        let id = out.len();
        let mut stack = vec![start];
        let mut members = Vec::new();
        comp[start] = id;
        while let Some(u) = stack.pop() {
            members.push(u);
            for &v in &adj[u] {
                if comp[v] == usize::MAX {
                    comp[v] = id;
                    stack.push(v);
                }
            }
        }
        members.sort_unstable();
        out.push(members);
    }
    out
}

/// Matching count of one connected component by signed determinant.
fn component_determinant(g: &DualGraph, members: &[usize]) -> Result<Rat> {
    let in_comp: std::collections::HashSet<usize> = members.iter().cloned().collect();
    let edges: Vec<(usize, usize, Rat)> = g
        .edges
        .iter()
        .filter(|(u, _, _)| in_comp.contains(u))
        .cloned()
        .collect();
    let ups: Vec<usize> = members
        .iter()
        .cloned()
        .filter(|&k| g.cells[k].orient == Orient::Up)
        .collect();
    let downs: Vec<usize> = members
        .iter()
        .cloned()
        .filter(|&k| g.cells[k].orient == Orient::Down)
        .collect();
    if ups.len() != downs.len() {
        return Ok(Rat::zero());
    }
    if ups.is_empty() {
        return Ok(Rat::one());
    }
    let signs = kasteleyn_signs(g, members, &edges);
    let up_pos: HashMap<usize, usize> = ups.iter().enumerate().map(|(a, &k)| (k, a)).collect();
    let down_pos: HashMap<usize, usize> = downs.iter().enumerate().map(|(a, &k)| (k, a)).collect();
    let n = ups.len();
    let mut mat = vec![vec![Rat::zero(); n]; n];
    for (e, (u, v, w)) in edges.iter().enumerate() {
        let s = if signs[e] { w.clone() } else { -w.clone() };
        mat[up_pos[u]][down_pos[v]] = s;
    }
    Ok(determinant(mat).abs())
}

/// Exact determinant by rational Gaussian elimination with partial pivoting.
fn determinant(mut m: Vec<Vec<Rat>>) -> Rat {
    let n = m.len();
    let mut det = Rat::one();
    for col in 0..n {
        let Some(pivot_row) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return Rat::zero();
        };
        if pivot_row != col {
            m.swap(pivot_row, col);
            det = -det;
        }
        let pivot = m[col][col].clone();
        det *= &pivot;
        for row in col + 1..n {
            if m[row][col].is_zero() {
                continue;
            }
            let factor = &m[row][col] / &pivot;
            for k in col..n {
                let sub = &factor * &m[col][k];
                m[row][k] -= sub;
            }
        }
    }
    det
}

/// Compute an edge signing (`true` = +, `false` = −) such that every bounded
/// face of the geometric embedding has an odd number of clockwise edges.
fn kasteleyn_signs(g: &DualGraph, members: &[usize], edges: &[(usize, usize, Rat)]) -> Vec<bool> {
    // Geometric centroid per cell gives the planar embedding.
    let pos: HashMap<usize, (f64, f64)> = members
        .iter()
        .map(|&k| {
            let cs = g.cells[k].corners();
            let x = (cs[0].0 + cs[1].0 + cs[2].0) / 3.0;
            let y = (cs[0].1 + cs[1].1 + cs[2].1) / 3.0;
            (k, (x, y))
        })
        .collect();

    // Rotation system: incident edge indices sorted counterclockwise.
    let mut incident: HashMap<usize, Vec<(f64, usize, usize)>> = HashMap::new();
    for (e, (u, v, _)) in edges.iter().enumerate() {
        let (ux, uy) = pos[u];
        let (vx, vy) = pos[v];
        incident
            .entry(*u)
            .or_default()
            .push(((vy - uy).atan2(vx - ux), e, *v));
        incident
            .entry(*v)
            .or_default()
            .push(((uy - vy).atan2(ux - vx), e, *u));
    }
    for list in incident.values_mut() {
        list.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    }

    // Trace faces with the face-on-the-left rule: after arriving at v along
    // edge e from u, leave along the incident edge clockwise-next after e.
    // Half-edge id: 2e for (u→v), 2e+1 for (v→u).
    let next_half = |h: usize| -> usize {
        let e = h / 2;
        let (u, v, _) = &edges[e];
        let at = if h % 2 == 0 { *v } else { *u };
        let from = if h % 2 == 0 { *u } else { *v };
        let list = &incident[&at];
        let idx = list
            .iter()
            .position(|&(_, le, lv)| le == e && lv == from)
            .expect("half-edge in rotation");
        let (_, ne, nv) = list[(idx + list.len() - 1) % list.len()];
        // Outgoing half-edge of edge ne leaving `at`.
        let (nu, _, _) = &edges[ne];
        if *nu == at {
            debug_assert_ne!(nv, at);
            2 * ne
        } else {
            2 * ne + 1
        }
    };

    let mut face_of = vec![usize::MAX; 2 * edges.len()];
    let mut faces: Vec<Vec<usize>> = Vec::new(); // half-edges per face
    for h0 in 0..2 * edges.len() {
        if face_of[h0] != usize::MAX {
            continue;
        }
        let id = faces.len();
        let mut walk = Vec::new();
        let mut h = h0;
        loop {
            face_of[h] = id;
            walk.push(h);
            h = next_half(h);
            if h == h0 {
                break;
            }
        }
        faces.push(walk);
    }

    // The unbounded face is the one with the most negative signed area.
    let signed_area = |walk: &[usize]| -> f64 {
        let mut a = 0.0;
        for &h in walk {
            let (u, v, _) = &edges[h / 2];
            let (from, to) = if h % 2 == 0 { (*u, *v) } else { (*v, *u) };
            let (x1, y1) = pos[&from];
            let (x2, y2) = pos[&to];
            a += x1 * y2 - x2 * y1;
        }
        a / 2.0
    };
    let outer = (0..faces.len())
        .min_by(|&a, &b| {
            signed_area(&faces[a])
                .partial_cmp(&signed_area(&faces[b]))
                .unwrap()
        })
        .expect("at least one face");

    // BFS tree over faces; tree edges are shared non-bridge graph edges.
    let mut parent_edge = vec![usize::MAX; faces.len()];
    let mut order = Vec::new();
    let mut visited = vec![false; faces.len()];
    visited[outer] = true;
    let mut queue = std::collections::VecDeque::from([outer]);
    while let Some(f) = queue.pop_front() {
        order.push(f);
        for &h in &faces[f] {
            let twin = h ^ 1;
            let nf = face_of[twin];
            if nf != f && !visited[nf] {
                visited[nf] = true;
                parent_edge[nf] = h / 2;
                queue.push_back(nf);
            }
        }
    }

    // Sign fixing: process faces deepest-first; flip the parent edge when the
    // face has an even number of clockwise edges. An edge (u→v) with sign +
    // counts as "clockwise" on a face that traverses it as v→u (the odd half),
    // and with sign − on the face that traverses it as u→v.
    let mut sign = vec![true; edges.len()];
    let clockwise_count = |f: usize, sign: &[bool]| -> usize {
        faces[f]
            .iter()
            .filter(|&&h| {
                let against = h % 2 == 1;
                sign[h / 2] == against
            })
            .count()
    };
    for &f in order.iter().rev() {
        if f == outer {
            continue;
        }
        if clockwise_count(f, &sign) % 2 == 0 {
            let e = parent_edge[f];
            debug_assert_ne!(e, usize::MAX, "bounded face without tree parent");
            sign[e] = !sign[e];
        }
    }
    sign
}

/// Result of explicit enumeration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Enumeration {
    /// All tilings, in a deterministic order.
    Complete(Vec<Tiling>),
    /// More than `limit` tilings exist; enumeration stopped.
    Truncated,
}

/// Enumerate all tilings of `r` by backtracking, up to `limit` of them.
pub fn enumerate_tilings(r: &Region, limit: usize) -> Enumeration {
    let mut out = Vec::new();
    let mut current: Vec<Lozenge> = Vec::new();
    let mut region = r.clone();
    if backtrack(&mut region, &mut current, &mut out, limit) {
        Enumeration::Complete(out)
    } else {
        Enumeration::Truncated
    }
}

/// Returns false when the limit was exceeded.
fn backtrack(
    region: &mut Region,
    current: &mut Vec<Lozenge>,
    out: &mut Vec<Tiling>,
    limit: usize,
) -> bool {
    let Some(&cell) = region.cells.iter().next() else {
        if out.len() >= limit {
            return false;
        }
        out.push(current.clone());
        return true;
    };
    for n in region.neighbors_in(&cell) {
        let l = Lozenge::new(cell, n).expect("adjacent");
        let saved = region.clone();
        *region = region.without_cells(&[cell, n]);
        current.push(l);
        let ok = backtrack(region, current, out, limit);
        current.pop();
        *region = saved;
        if !ok {
            return false;
        }
    }
    true
}

/// Weighted sum over an explicit tiling list (for cross-checking the oracles).
pub fn tiling_weight_sum(r: &Region, tilings: &[Tiling]) -> Rat {
    tilings
        .iter()
        .map(|t| {
            t.iter()
                .map(|l| r.weight(l))
                .fold(Rat::one(), |acc, w| acc * w)
        })
        .fold(Rat::zero(), |acc, w| acc + w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{down, up};
    use crate::{rat, ratio};

    fn unit_lozenge() -> Region {
        Region::from_cells([up(0, 1), down(0, 0)])
    }

    #[test]
    fn empty_region_counts_one() {
        let r = Region::default();
        assert_eq!(count_tilings(&r).unwrap(), rat(1));
        assert_eq!(count_tilings_determinant(&r).unwrap(), rat(1));
        assert_eq!(
            enumerate_tilings(&r, 10),
            Enumeration::Complete(vec![vec![]])
        );
    }

    #[test]
    fn single_weighted_lozenge() {
        let mut r = unit_lozenge();
        r.set_weight(up(0, 1), down(0, 0), ratio(1, 2)).unwrap();
        assert_eq!(count_tilings(&r).unwrap(), ratio(1, 2));
        assert_eq!(count_tilings_determinant(&r).unwrap(), ratio(1, 2));
    }

    #[test]
    fn unbalanced_counts_zero() {
        let r = Region::from_cells([up(0, 0)]);
        assert_eq!(count_tilings(&r).unwrap(), rat(0));
        assert_eq!(count_tilings_determinant(&r).unwrap(), rat(0));
        assert_eq!(enumerate_tilings(&r, 10), Enumeration::Complete(vec![]));
    }

    #[test]
    fn balanced_but_untileable() {
        // Two cells that are not adjacent.
        let r = Region::from_cells([up(0, 0), down(5, 5)]);
        assert_eq!(count_tilings(&r).unwrap(), rat(0));
        assert_eq!(count_tilings_determinant(&r).unwrap(), rat(0));
    }

    #[test]
    fn oracles_agree_on_random_strips() {
        // A 2×k parallelogram of cells has exactly one horizontal run of
        // lozenges plus mixed tilings; compare all three oracles.
        for k in 1..5i64 {
            let mut cells = Vec::new();
            for i in 0..k {
                cells.extend([up(i, 0), down(i, 0)]);
            }
            let r = Region::from_cells(cells);
            let dp = count_tilings(&r).unwrap();
            let det = count_tilings_determinant(&r).unwrap();
            assert_eq!(dp, det, "k={k}");
            if let Enumeration::Complete(ts) = enumerate_tilings(&r, 1000) {
                assert_eq!(dp, tiling_weight_sum(&r, &ts), "k={k}");
            } else {
                panic!("strip should enumerate");
            }
        }
    }
}
