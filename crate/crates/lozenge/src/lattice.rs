//! Triangular-lattice cells, weighted regions and dual graphs.
//!
//! Coordinate convention (fixed; every builder depends on it):
//!
//! * lattice point `(p,q)` embeds at Cartesian `(p + q/2, q·√3/2)`, so lines
//!   of constant `q` are horizontal;
//! * the up-pointing cell `Up(i,j)` has corners `(i,j)`, `(i+1,j)`, `(i,j+1)`;
//! * the down-pointing cell `Down(i,j)` has corners `(i+1,j)`, `(i,j+1)`,
//!   `(i+1,j+1)`;
//! * a lozenge is an adjacent Up/Down pair; it is *vertical* exactly when the
//!   shared edge is horizontal, i.e. the pair is `{Down(i,j), Up(i,j+1)}`.
//!
//! A region is a finite cell set plus a lozenge-weight map (absent = 1); in
//! this crate every non-unit weight is 1/2. Tilings of a region are perfect
//! matchings of its dual graph, and the weighted tiling count is the sum over
//! matchings of the product of edge weights.

use crate::error::{Error, Result};
use crate::Rat;
use num_traits::One;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

/// Orientation of a unit triangle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Orient {
    /// Up-pointing: corners `(i,j)`, `(i+1,j)`, `(i,j+1)`.
    #[serde(rename = "U")]
    Up,
    /// Down-pointing: corners `(i+1,j)`, `(i,j+1)`, `(i+1,j+1)`.
    #[serde(rename = "D")]
    Down,
}

/// A unit triangle on the lattice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct TriCell {
    pub i: i64,
    pub j: i64,
    #[serde(rename = "o")]
    pub orient: Orient,
}

/// Up-pointing cell at `(i,j)`.
pub fn up(i: i64, j: i64) -> TriCell {
    TriCell {
        i,
        j,
        orient: Orient::Up,
    }
}

/// Down-pointing cell at `(i,j)`.
pub fn down(i: i64, j: i64) -> TriCell {
    TriCell {
        i,
        j,
        orient: Orient::Down,
    }
}

impl TriCell {
    /// The three edge-adjacent cells (not filtered by any region).
    pub fn neighbors(&self) -> [TriCell; 3] {
        match self.orient {
            Orient::Up => [
                down(self.i, self.j),
                down(self.i - 1, self.j),
                down(self.i, self.j - 1),
            ],
            Orient::Down => [
                up(self.i, self.j),
                up(self.i + 1, self.j),
                up(self.i, self.j + 1),
            ],
        }
    }

    /// Cartesian coordinates of the three corners (for rendering).
    pub fn corners(&self) -> [(f64, f64); 3] {
        let pt = |p: i64, q: i64| (p as f64 + q as f64 / 2.0, q as f64 * 3f64.sqrt() / 2.0);
        match self.orient {
            Orient::Up => [
                pt(self.i, self.j),
                pt(self.i + 1, self.j),
                pt(self.i, self.j + 1),
            ],
            Orient::Down => [
                pt(self.i + 1, self.j),
                pt(self.i, self.j + 1),
                pt(self.i + 1, self.j + 1),
            ],
        }
    }
}

/// An unordered adjacent Up/Down pair, stored in canonical (sorted) order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Lozenge(pub TriCell, pub TriCell);

impl Lozenge {
    /// Canonicalise an adjacent pair; errors if the cells are not adjacent.
    pub fn new(a: TriCell, b: TriCell) -> Result<Lozenge> {
        if !a.neighbors().contains(&b) {
            return Err(Error::Parameter(format!("cells {a:?} and {b:?} not adjacent")));
        }
        Ok(if a <= b { Lozenge(a, b) } else { Lozenge(b, a) })
    }

    /// True when the shared edge is horizontal: the pair `{Down(i,j), Up(i,j+1)}`.
    pub fn is_vertical(&self) -> bool {
        let (a, b) = (self.0, self.1);
        let (d, u) = if a.orient == Orient::Down { (a, b) } else { (b, a) };
        d.orient == Orient::Down && u.orient == Orient::Up && u.i == d.i && u.j == d.j + 1
    }
}

/// A finite weighted region.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Region {
    pub cells: BTreeSet<TriCell>,
    /// Lozenge weights; positions absent from the map have weight 1.
    pub weights: BTreeMap<Lozenge, Rat>,
}

/// Result of exhaustive forced-lozenge elimination.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ForcedReduction {
    /// No forced lozenges remain; the original count is
    /// `multiplier · count(region)`.
    Reduced { region: Region, multiplier: Rat },
    /// Some cell became isolated: the region has no tiling at all.
    Untileable,
}

/// One tiling: a set of lozenges exactly covering the region.
pub type Tiling = Vec<Lozenge>;

/// The weighted dual graph of a region, in a flat indexed form for oracles.
#[derive(Debug, Clone)]
pub struct DualGraph {
    /// Vertex per cell, in the region's canonical cell order.
    pub cells: Vec<TriCell>,
    /// Edges as index pairs (up-cell index, down-cell index) with weights.
    pub edges: Vec<(usize, usize, Rat)>,
}

impl Region {
    /// Region from a plain cell list, all weights 1.
    pub fn from_cells<I: IntoIterator<Item = TriCell>>(cells: I) -> Region {
        Region {
            cells: cells.into_iter().collect(),
            weights: BTreeMap::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// Assign weight `w` to the lozenge position `{a,b}` (both cells must be
    /// in the region).
    pub fn set_weight(&mut self, a: TriCell, b: TriCell, w: Rat) -> Result<()> {
        if !self.cells.contains(&a) || !self.cells.contains(&b) {
            return Err(Error::Parameter(format!(
                "weighted lozenge {a:?}-{b:?} not inside the region"
            )));
        }
        self.weights.insert(Lozenge::new(a, b)?, w);
        Ok(())
    }

    /// Weight of a lozenge position (1 when unassigned).
    pub fn weight(&self, l: &Lozenge) -> Rat {
        self.weights.get(l).cloned().unwrap_or_else(Rat::one)
    }

    /// True iff #up-pointing cells = #down-pointing cells.
    pub fn is_balanced(&self) -> bool {
        let ups = self
            .cells
            .iter()
            .filter(|c| c.orient == Orient::Up)
            .count();
        2 * ups == self.cells.len()
    }

    /// Neighbors of `c` that lie inside the region.
    pub fn neighbors_in(&self, c: &TriCell) -> Vec<TriCell> {
        c.neighbors()
            .into_iter()
            .filter(|n| self.cells.contains(n))
            .collect()
    }

    /// Remove a set of cells, dropping any weights that touch them.
    pub fn without_cells(&self, removed: &[TriCell]) -> Region {
        let removed: BTreeSet<_> = removed.iter().cloned().collect();
        let cells: BTreeSet<_> = self.cells.difference(&removed).cloned().collect();
        let weights = self
            .weights
            .iter()
            .filter(|(l, _)| cells.contains(&l.0) && cells.contains(&l.1))
            .map(|(l, w)| (*l, w.clone()))
            .collect();
        Region { cells, weights }
    }

    /// The weighted dual graph: vertex per cell, edge per in-region
    /// adjacent Up/Down pair.
    pub fn dual_graph(&self) -> DualGraph {
        let cells: Vec<TriCell> = self.cells.iter().cloned().collect();
        let index: BTreeMap<TriCell, usize> =
            cells.iter().enumerate().map(|(k, c)| (*c, k)).collect();
        let mut edges = Vec::new();
        for (k, c) in cells.iter().enumerate() {
            if c.orient != Orient::Up {
                continue;
            }
            for n in self.neighbors_in(c) {
                let l = Lozenge::new(*c, n).expect("neighbor is adjacent");
                edges.push((k, index[&n], self.weight(&l)));
            }
        }
        DualGraph { cells, edges }
    }

    /// Repeatedly remove cells of dual degree 1 together with their unique
    /// partner, accumulating the removed lozenge weights. A cell of degree 0
    /// (while cells remain) makes the region untileable.
    pub fn remove_forced(&self) -> ForcedReduction {
        let mut region = self.clone();
        let mut multiplier = Rat::one();
        loop {
            let mut forced: Option<(TriCell, TriCell)> = None;
            for c in &region.cells {
                let ns = region.neighbors_in(c);
                match ns.len() {
                    0 => return ForcedReduction::Untileable,
                    1 => {
                        forced = Some((*c, ns[0]));
                        break;
                    }
                    _ => {}
                }
            }
            match forced {
                None => {
                    return ForcedReduction::Reduced { region, multiplier };
                }
                Some((c, partner)) => {
                    let l = Lozenge::new(c, partner).expect("adjacent");
                    multiplier *= region.weight(&l);
                    region = region.without_cells(&[c, partner]);
                }
            }
        }
    }

    /// Serialize to the JSON interchange format.
    pub fn to_json(&self) -> String {
        let file = RegionFile {
            cells: self.cells.iter().cloned().collect(),
            weights: self
                .weights
                .iter()
                .map(|(l, w)| WeightEntry {
                    a: l.0,
                    b: l.1,
                    w: format_rat(w),
                })
                .collect(),
        };
        serde_json::to_string_pretty(&file).expect("region serialization")
    }

    /// Parse from the JSON interchange format.
    pub fn from_json(text: &str) -> Result<Region> {
        let file: RegionFile =
            serde_json::from_str(text).map_err(|e| Error::Usage(format!("bad region file: {e}")))?;
        let mut region = Region::from_cells(file.cells);
        for e in file.weights {
            let w = parse_rat(&e.w)?;
            region.set_weight(e.a, e.b, w)?;
        }
        Ok(region)
    }

    /// Deterministic ASCII rendering: one character per cell, rows from top
    /// (largest `j`) to bottom; `^`/`v` cells, `#` marks a cell touching a
    /// weighted lozenge position.
    pub fn render_ascii(&self) -> String {
        if self.cells.is_empty() {
            return "(empty region)\n".into();
        }
        let weighted: BTreeSet<TriCell> = self
            .weights
            .keys()
            .flat_map(|l| [l.0, l.1])
            .collect();
        // Column index 2i+j keeps horizontally adjacent cells adjacent.
        let col = |c: &TriCell| 2 * c.i + c.j + if c.orient == Orient::Down { 1 } else { 0 };
        let min_j = self.cells.iter().map(|c| c.j).min().unwrap();
        let max_j = self.cells.iter().map(|c| c.j).max().unwrap();
        let min_col = self.cells.iter().map(col).min().unwrap();
        let mut out = String::new();
        for j in (min_j..=max_j).rev() {
            let row: Vec<&TriCell> = self.cells.iter().filter(|c| c.j == j).collect();
            let width = row.iter().map(|c| col(c) - min_col).max().unwrap_or(0) as usize;
            let mut line = vec![' '; width + 1];
            for c in row {
                let ch = if weighted.contains(c) {
                    '#'
                } else if c.orient == Orient::Up {
                    '^'
                } else {
                    'v'
                };
                line[(col(c) - min_col) as usize] = ch;
            }
            let s: String = line.into_iter().collect();
            out.push_str(s.trim_end());
            out.push('\n');
        }
        out
    }

    /// Deterministic self-contained SVG rendering; weighted lozenge positions
    /// are shaded.
    pub fn render_svg(&self) -> String {
        let unit = 40.0;
        let mut min_x = f64::MAX;
        let mut max_x = f64::MIN;
        let mut min_y = f64::MAX;
        let mut max_y = f64::MIN;
        for c in &self.cells {
            for (x, y) in c.corners() {
                min_x = min_x.min(x);
                max_x = max_x.max(x);
                min_y = min_y.min(y);
                max_y = max_y.max(y);
            }
        }
        if self.cells.is_empty() {
            min_x = 0.0;
            max_x = 1.0;
            min_y = 0.0;
            max_y = 1.0;
        }
        let pad = 0.2;
        let w = (max_x - min_x + 2.0 * pad) * unit;
        let h = (max_y - min_y + 2.0 * pad) * unit;
        // SVG y grows downward; flip vertically.
        let tx = |x: f64| (x - min_x + pad) * unit;
        let ty = |y: f64| (max_y - y + pad) * unit;
        let mut out = String::new();
        let _ = writeln!(
            out,
            "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {w:.2} {h:.2}\">"
        );
        for c in &self.cells {
            let pts: Vec<String> = c
                .corners()
                .iter()
                .map(|&(x, y)| format!("{:.2},{:.2}", tx(x), ty(y)))
                .collect();
            let _ = writeln!(
                out,
                "  <polygon class=\"cell\" points=\"{}\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>",
                pts.join(" ")
            );
        }
        for (l, wt) in &self.weights {
            // Shade the weighted lozenge as the union outline of its two cells.
            let mut pts: BTreeSet<(i64, i64)> = BTreeSet::new();
            for c in [l.0, l.1] {
                let raw = match c.orient {
                    Orient::Up => [(c.i, c.j), (c.i + 1, c.j), (c.i, c.j + 1)],
                    Orient::Down => [(c.i + 1, c.j), (c.i, c.j + 1), (c.i + 1, c.j + 1)],
                };
                pts.extend(raw);
            }
            let corner_xy: Vec<(f64, f64)> = pts
                .iter()
                .map(|&(p, q)| (p as f64 + q as f64 / 2.0, q as f64 * 3f64.sqrt() / 2.0))
                .collect();
            let cx = corner_xy.iter().map(|p| p.0).sum::<f64>() / corner_xy.len() as f64;
            let cy = corner_xy.iter().map(|p| p.1).sum::<f64>() / corner_xy.len() as f64;
            let _ = writeln!(
                out,
                "  <circle class=\"weight\" cx=\"{:.2}\" cy=\"{:.2}\" r=\"{:.2}\" fill=\"gray\" opacity=\"0.6\"><title>{}</title></circle>",
                tx(cx),
                ty(cy),
                0.22 * unit,
                format_rat(wt)
            );
        }
        out.push_str("</svg>\n");
        out
    }
}

#[derive(Serialize, Deserialize)]
struct RegionFile {
    cells: Vec<TriCell>,
    #[serde(default)]
    weights: Vec<WeightEntry>,
}

#[derive(Serialize, Deserialize)]
struct WeightEntry {
    a: TriCell,
    b: TriCell,
    w: String,
}

/// Render a rational as `p/q`, omitting `/q` when the value is integral.
pub fn format_rat(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parse a `p` or `p/q` fraction string.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let parse_int = |t: &str| {
        t.trim()
            .parse::<crate::Int>()
            .map_err(|_| Error::Usage(format!("bad integer {t:?}")))
    };
    match s.split_once('/') {
        None => Ok(Rat::from_integer(parse_int(s)?)),
        Some((p, q)) => {
            let den = parse_int(q)?;
            if den == crate::int(0) {
                return Err(Error::Usage("zero denominator".into()));
            }
            Ok(Rat::new(parse_int(p)?, den))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio;

    #[test]
    fn neighbor_convention() {
        assert_eq!(
            up(0, 0).neighbors(),
            [down(0, 0), down(-1, 0), down(0, -1)]
        );
        assert_eq!(down(0, 0).neighbors(), [up(0, 0), up(1, 0), up(0, 1)]);
        assert_eq!(up(2, 5).neighbors(), [down(2, 5), down(1, 5), down(2, 4)]);
    }

    #[test]
    fn neighbor_symmetry() {
        for c in [up(0, 0), down(3, -2), up(-1, 4), down(0, 0)] {
            for n in c.neighbors() {
                assert!(n.neighbors().contains(&c));
            }
        }
    }

    #[test]
    fn vertical_classification() {
        // {Down(i,j), Up(i,j+1)} is vertical; the other two adjacencies are not.
        assert!(Lozenge::new(down(2, 3), up(2, 4)).unwrap().is_vertical());
        assert!(!Lozenge::new(up(0, 0), down(0, 0)).unwrap().is_vertical());
        assert!(!Lozenge::new(down(0, 0), up(1, 0)).unwrap().is_vertical());
        assert!(Lozenge::new(up(5, 5), down(5, 4)).unwrap().is_vertical());
    }

    #[test]
    fn balance() {
        assert!(Region::default().is_balanced());
        assert!(!Region::from_cells([up(0, 0)]).is_balanced());
        assert!(Region::from_cells([up(0, 0), down(0, 0)]).is_balanced());
    }

    #[test]
    fn forced_single_lozenge() {
        let r = Region::from_cells([up(0, 0), down(0, 0)]);
        match r.remove_forced() {
            ForcedReduction::Reduced { region, multiplier } => {
                assert!(region.is_empty());
                assert_eq!(multiplier, crate::rat(1));
            }
            ForcedReduction::Untileable => panic!("single lozenge is tileable"),
        }
    }

    #[test]
    fn forced_single_lozenge_weighted() {
        let mut r = Region::from_cells([up(0, 1), down(0, 0)]);
        r.set_weight(up(0, 1), down(0, 0), ratio(1, 2)).unwrap();
        match r.remove_forced() {
            ForcedReduction::Reduced { region, multiplier } => {
                assert!(region.is_empty());
                assert_eq!(multiplier, ratio(1, 2));
            }
            ForcedReduction::Untileable => panic!(),
        }
    }

    #[test]
    fn forced_isolated_cell() {
        let r = Region::from_cells([up(0, 0)]);
        assert_eq!(r.remove_forced(), ForcedReduction::Untileable);
    }

    #[test]
    fn dual_graph_tiny() {
        assert!(Region::default().dual_graph().edges.is_empty());
        let g = Region::from_cells([up(0, 0), down(0, 0)]).dual_graph();
        assert_eq!(g.cells.len(), 2);
        assert_eq!(g.edges.len(), 1);
    }

    #[test]
    fn json_roundtrip() {
        let mut r = Region::from_cells([up(0, 1), down(0, 0), up(1, 0), down(1, 0)]);
        r.set_weight(up(0, 1), down(0, 0), ratio(1, 2)).unwrap();
        let text = r.to_json();
        let back = Region::from_json(&text).unwrap();
        assert_eq!(r, back);
    }

    #[test]
    fn rat_wire_format() {
        assert_eq!(format_rat(&crate::rat(20)), "20");
        assert_eq!(format_rat(&ratio(3, 8)), "3/8");
        assert_eq!(parse_rat("20").unwrap(), crate::rat(20));
        assert_eq!(parse_rat("3/8").unwrap(), ratio(3, 8));
        assert!(parse_rat("1/0").is_err());
    }

    #[test]
    fn ascii_render_markers() {
        let mut r = Region::from_cells([up(0, 1), down(0, 0)]);
        r.set_weight(up(0, 1), down(0, 0), ratio(1, 2)).unwrap();
        let art = r.render_ascii();
        assert!(art.contains('#'));
        assert_eq!(Region::default().render_ascii(), "(empty region)\n");
    }

    #[test]
    fn svg_render_counts_cells() {
        let r = Region::from_cells([up(0, 0), down(0, 0)]);
        let svg = r.render_svg();
        assert_eq!(svg.matches("<polygon").count(), 2);
    }
}
