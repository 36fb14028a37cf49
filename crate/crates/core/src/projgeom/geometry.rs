use std::collections::HashMap;

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::error::{Error, Result};

/// A finite point-line geometry with lines stored as sorted point rows.
///
/// Points and lines carry string labels for interchange; internally they are
/// indexed `0..n` in label-insertion order, and witnesses use those indices.
#[derive(Debug, Clone)]
pub struct PointLineGeometry {
    point_labels: Vec<String>,
    line_labels: Vec<String>,
    lines: Vec<Vec<u32>>,
    point_lines: Vec<Vec<u32>>,
    line_sets: Vec<FixedBitSet>,
}

/// Configuration of points and lines exhibiting an axiom failure.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub points: Vec<u32>,
    pub lines: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomResult {
    pub axiom: String,
    pub passed: bool,
    pub witness: Option<Witness>,
}

impl AxiomResult {
    pub(crate) fn pass(axiom: &str) -> Self {
        AxiomResult { axiom: axiom.into(), passed: true, witness: None }
    }

    pub(crate) fn fail(axiom: &str, points: Vec<u32>, lines: Vec<u32>) -> Self {
        AxiomResult { axiom: axiom.into(), passed: false, witness: Some(Witness { points, lines }) }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub results: Vec<AxiomResult>,
}

impl AxiomReport {
    pub fn all_pass(&self) -> bool {
        self.results.iter().all(|r| r.passed)
    }

    pub fn get(&self, axiom: &str) -> Option<&AxiomResult> {
        self.results.iter().find(|r| r.axiom == axiom)
    }

    pub fn passed(&self, axiom: &str) -> bool {
        self.get(axiom).is_some_and(|r| r.passed)
    }
}

impl PointLineGeometry {
    /// Builds a geometry on points `0..n_points` with the given point rows.
    pub fn new(n_points: usize, lines: Vec<Vec<u32>>) -> Result<Self> {
        let point_labels = (0..n_points).map(|i| i.to_string()).collect();
        let line_labels = (0..lines.len()).map(|i| i.to_string()).collect();
        Self::with_labels(point_labels, line_labels, lines)
    }

    pub fn with_labels(
        point_labels: Vec<String>,
        line_labels: Vec<String>,
        mut lines: Vec<Vec<u32>>,
    ) -> Result<Self> {
        let n = point_labels.len();
        if line_labels.len() != lines.len() {
            return Err(Error::InvalidInput("line label count mismatch".into()));
        }
        let mut point_lines = vec![Vec::new(); n];
        let mut line_sets = Vec::with_capacity(lines.len());
        for (l, row) in lines.iter_mut().enumerate() {
            row.sort_unstable();
            row.dedup();
            let mut set = FixedBitSet::with_capacity(n);
            for &p in row.iter() {
                if p as usize >= n {
                    return Err(Error::InvalidInput(format!("line {l} has unknown point {p}")));
                }
                set.insert(p as usize);
                point_lines[p as usize].push(l as u32);
            }
            line_sets.push(set);
        }
        Ok(PointLineGeometry { point_labels, line_labels, lines, point_lines, line_sets })
    }

    pub fn num_points(&self) -> usize {
        self.point_labels.len()
    }

    pub fn num_lines(&self) -> usize {
        self.lines.len()
    }

    pub fn line(&self, l: u32) -> &[u32] {
        &self.lines[l as usize]
    }

    pub fn lines(&self) -> &[Vec<u32>] {
        &self.lines
    }

    pub fn lines_through(&self, p: u32) -> &[u32] {
        &self.point_lines[p as usize]
    }

    pub fn point_label(&self, p: u32) -> &str {
        &self.point_labels[p as usize]
    }

    pub fn line_label(&self, l: u32) -> &str {
        &self.line_labels[l as usize]
    }

    pub fn incident(&self, p: u32, l: u32) -> bool {
        self.line_sets[l as usize].contains(p as usize)
    }

    /// Lines through both points, in increasing order.
    pub fn lines_through_pair(&self, p: u32, q: u32) -> Vec<u32> {
        self.point_lines[p as usize]
            .iter()
            .copied()
            .filter(|&l| self.incident(q, l))
            .collect()
    }

    /// The smallest line through `p` and `q`, if any.
    pub fn join(&self, p: u32, q: u32) -> Option<u32> {
        self.point_lines[p as usize].iter().copied().find(|&l| self.incident(q, l))
    }

    pub fn collinear(&self, p: u32, q: u32) -> bool {
        p == q || self.join(p, q).is_some()
    }

    pub fn incidence_count(&self) -> usize {
        self.lines.iter().map(Vec::len).sum()
    }

    /// Interchange text: `p <id>`, `l <id>`, `i <pid> <lid>`, one per line.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for p in &self.point_labels {
            s.push_str(&format!("p {p}\n"));
        }
        for l in &self.line_labels {
            s.push_str(&format!("l {l}\n"));
        }
        for (l, row) in self.lines.iter().enumerate() {
            for &p in row {
                s.push_str(&format!("i {} {}\n", self.point_labels[p as usize], self.line_labels[l]));
            }
        }
        s
    }

    pub fn parse_text(text: &str) -> Result<Self> {
        let mut points: Vec<String> = Vec::new();
        let mut lines: Vec<String> = Vec::new();
        let mut pidx: HashMap<String, u32> = HashMap::new();
        let mut lidx: HashMap<String, u32> = HashMap::new();
        let mut inc: Vec<(String, String, usize)> = Vec::new();
        for (no, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let toks: Vec<&str> = line.split_whitespace().collect();
            let bad = || Error::Parse(format!("line {}: cannot parse '{raw}'", no + 1));
            match toks.as_slice() {
                ["p", id] => {
                    if pidx.insert(id.to_string(), points.len() as u32).is_some() {
                        return Err(Error::Parse(format!("line {}: repeated point id {id}", no + 1)));
                    }
                    points.push(id.to_string());
                }
                ["l", id] => {
                    if lidx.insert(id.to_string(), lines.len() as u32).is_some() {
                        return Err(Error::Parse(format!("line {}: repeated line id {id}", no + 1)));
                    }
                    lines.push(id.to_string());
                }
                ["i", p, l] => inc.push((p.to_string(), l.to_string(), no + 1)),
                _ => return Err(bad()),
            }
        }
        let mut rows = vec![Vec::new(); lines.len()];
        for (p, l, no) in inc {
            let pi = *pidx
                .get(&p)
                .ok_or_else(|| Error::Parse(format!("line {no}: unknown point {p}")))?;
            let li = *lidx
                .get(&l)
                .ok_or_else(|| Error::Parse(format!("line {no}: unknown line {l}")))?;
            rows[li as usize].push(pi);
        }
        PointLineGeometry::with_labels(points, lines, rows)
    }

    /// Grid geometry on `X x Y`: rows and columns are the lines.
    pub fn grid(x: usize, y: usize) -> Self {
        let mut lines = Vec::new();
        for i in 0..x {
            lines.push((0..y).map(|j| (i * y + j) as u32).collect());
        }
        for j in 0..y {
            lines.push((0..x).map(|i| (i * y + j) as u32).collect());
        }
        PointLineGeometry::new(x * y, lines).unwrap()
    }

    pub fn check_pg_axioms(&self) -> AxiomReport {
        AxiomReport { results: vec![self.pg1(), self.pg2(), self.pg3(), self.pg4()] }
    }

    fn pg1(&self) -> AxiomResult {
        match self.lines.iter().position(|r| r.len() < 3) {
            Some(l) => AxiomResult::fail("PG1", self.lines[l].clone(), vec![l as u32]),
            None => AxiomResult::pass("PG1"),
        }
    }

    fn pg2(&self) -> AxiomResult {
        let n = self.num_points() as u32;
        for p in 0..n {
            for q in p + 1..n {
                let through = self.lines_through_pair(p, q);
                if through.len() != 1 {
                    return AxiomResult::fail("PG2", vec![p, q], through);
                }
            }
        }
        AxiomResult::pass("PG2")
    }

    fn pg3(&self) -> AxiomResult {
        if self.num_lines() >= 2 {
            AxiomResult::pass("PG3")
        } else {
            AxiomResult::fail("PG3", vec![], (0..self.num_lines() as u32).collect())
        }
    }

    /// Veblen: for distinct `p, q, r` and a line `l` meeting `p v q` and
    /// `p v r` in two distinct points, `l` meets `q v r`. A missing join
    /// `q v r` under a satisfied premise counts as a violation.
    fn pg4(&self) -> AxiomResult {
        let n = self.num_points() as u32;
        for p in 0..n {
            for q in 0..n {
                if q == p {
                    continue;
                }
                let Some(pq) = self.join(p, q) else { continue };
                for r in 0..n {
                    if r == p || r == q {
                        continue;
                    }
                    let Some(pr) = self.join(p, r) else { continue };
                    let qr = self.join(q, r);
                    let (a_set, b_set) = (&self.line_sets[pq as usize], &self.line_sets[pr as usize]);
                    for l in 0..self.num_lines() as u32 {
                        let ls = &self.line_sets[l as usize];
                        let mut a = ls.intersection(a_set);
                        let Some(a0) = a.next() else { continue };
                        let a1 = a.next();
                        let mut b = ls.intersection(b_set);
                        let Some(b0) = b.next() else { continue };
                        let b1 = b.next();
                        // distinct points exist unless both meets are the same single point
                        if a1.is_none() && b1.is_none() && a0 == b0 {
                            continue;
                        }
                        let meets = qr.is_some_and(|m| {
                            ls.intersection(&self.line_sets[m as usize]).next().is_some()
                        });
                        if !meets {
                            let mut lines = vec![l, pq, pr];
                            lines.extend(qr);
                            return AxiomResult::fail("PG4", vec![p, q, r], lines);
                        }
                    }
                }
            }
        }
        AxiomResult::pass("PG4")
    }

    /// Smallest subspace containing `s`: closed under joining collinear pairs.
    pub fn subspace_closure(&self, s: &[u32]) -> Vec<u32> {
        let mut set = FixedBitSet::with_capacity(self.num_points());
        for &p in s {
            set.insert(p as usize);
        }
        self.close_set(&mut set);
        set.ones().map(|p| p as u32).collect()
    }

    pub(crate) fn close_set(&self, set: &mut FixedBitSet) {
        loop {
            let mut grew = false;
            for ls in &self.line_sets {
                let mut it = ls.intersection(set);
                if it.next().is_some() && it.next().is_some() && !ls.is_subset(set) {
                    set.union_with(ls);
                    grew = true;
                }
            }
            if !grew {
                return;
            }
        }
    }

    pub fn is_subspace(&self, s: &[u32]) -> bool {
        let mut sorted = s.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        self.subspace_closure(&sorted) == sorted
    }

    /// Rank along a greedy maximal chain of subspaces; `rk(empty) = -1`.
    pub fn subspace_rank(&self, x: &[u32]) -> Result<i64> {
        let mut target = x.to_vec();
        target.sort_unstable();
        target.dedup();
        if self.subspace_closure(&target) != target {
            return Err(Error::NotClosed);
        }
        let mut cur = FixedBitSet::with_capacity(self.num_points());
        let mut rank = -1i64;
        for &p in &target {
            if cur.contains(p as usize) {
                continue;
            }
            cur.insert(p as usize);
            self.close_set(&mut cur);
            rank += 1;
        }
        Ok(rank)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn fano() -> PointLineGeometry {
        let lines = vec![
            vec![0, 1, 2],
            vec![0, 3, 4],
            vec![0, 5, 6],
            vec![1, 3, 5],
            vec![1, 4, 6],
            vec![2, 3, 6],
            vec![2, 4, 5],
        ];
        PointLineGeometry::new(7, lines).unwrap()
    }

    #[test]
    fn fano_satisfies_pg() {
        assert!(fano().check_pg_axioms().all_pass());
    }

    #[test]
    fn short_line_fails_pg1() {
        let g = PointLineGeometry::new(3, vec![vec![0, 1], vec![0, 1, 2]]).unwrap();
        let r = g.check_pg_axioms();
        let pg1 = r.get("PG1").unwrap();
        assert!(!pg1.passed);
        assert_eq!(pg1.witness.as_ref().unwrap().lines, vec![0]);
    }

    #[test]
    fn grid_fails_veblen() {
        let r = PointLineGeometry::grid(3, 3).check_pg_axioms();
        assert!(r.passed("PG1") && r.passed("PG3"));
        assert!(!r.passed("PG4"));
    }

    #[test]
    fn text_round_trip() {
        let g = fano();
        let h = PointLineGeometry::parse_text(&g.to_text()).unwrap();
        assert_eq!(h.lines(), g.lines());
        assert!(PointLineGeometry::parse_text("p a\np a\n").is_err());
        assert!(PointLineGeometry::parse_text("p a\nl x\ni a y\n").is_err());
        assert!(PointLineGeometry::parse_text("q 1\n").is_err());
    }

    #[test]
    fn closure_and_rank() {
        let g = fano();
        assert_eq!(g.subspace_closure(&[3]), vec![3]);
        assert_eq!(g.subspace_closure(&[0, 1]), vec![0, 1, 2]);
        assert_eq!(g.subspace_closure(&[0, 1, 3]).len(), 7);
        assert_eq!(g.subspace_rank(&[]).unwrap(), -1);
        assert_eq!(g.subspace_rank(&[4]).unwrap(), 0);
        assert_eq!(g.subspace_rank(&[0, 1, 2]).unwrap(), 1);
        assert_eq!(g.subspace_rank(&(0..7).collect::<Vec<_>>()).unwrap(), 2);
        assert_eq!(g.subspace_rank(&[0, 1]), Err(Error::NotClosed));
    }
}
