//! Exact line-transversal decisions and minimum line piercing.
//!
//! All decisions are made over a finite candidate system: the lines through
//! every pair of member vertices. A transversal of closed convex polygons can
//! be translated and rotated until it touches two vertices (or contains an
//! edge, which is a vertex pair of one member) without losing any member, so
//! the candidate set is complete for existence and counting questions.

use itertools::Itertools;
use std::collections::BTreeSet;

use crate::error::Error;
use crate::family::Family;
use crate::geom::{line_meets_body, Line, RationalPoint};
use crate::rat::rat;

/// Deduplicated candidate lines in canonical sorted order.
#[derive(Debug, Clone)]
pub struct CandidateLineSet {
    pub lines: Vec<Line>,
}

/// A verified piercing: every member meets its assigned line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PiercingSolution {
    pub lines: Vec<Line>,
    /// For each family member, the index into `lines` of a line meeting it.
    pub assignment: Vec<usize>,
}

/// All lines through every pair of distinct vertices drawn from the union of
/// member vertex sets, deduplicated by canonical form. A family whose members
/// share a single vertex gets one horizontal line through it.
pub fn candidate_lines(f: &Family) -> Result<CandidateLineSet, Error> {
    if f.is_empty() {
        return Err(Error::InvalidArgument("empty family".into()));
    }
    let vertices: Vec<&RationalPoint> = f
        .members
        .iter()
        .flat_map(|m| m.vertices())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    candidate_lines_from_vertices(&vertices)
}

fn candidate_lines_from_vertices(vertices: &[&RationalPoint]) -> Result<CandidateLineSet, Error> {
    if vertices.len() == 1 {
        let p = vertices[0];
        let horizontal = Line::from_coeffs(rat(0), rat(1), p.y.clone())?;
        return Ok(CandidateLineSet {
            lines: vec![horizontal],
        });
    }
    let mut set = BTreeSet::new();
    for (a, b) in vertices.iter().tuple_combinations() {
        set.insert(Line::through(a, b)?);
    }
    Ok(CandidateLineSet {
        lines: set.into_iter().collect(),
    })
}

/// Exact transversal decision for a subfamily: the lexicographically least
/// candidate line meeting every subset member, or None.
pub fn has_line_transversal(f: &Family, subset: &[usize]) -> Result<Option<Line>, Error> {
    if subset.is_empty() {
        return Err(Error::InvalidArgument("empty subset".into()));
    }
    for &i in subset {
        if i >= f.len() {
            return Err(Error::InvalidArgument(format!("index {i} out of range")));
        }
    }
    let vertices: Vec<&RationalPoint> = subset
        .iter()
        .flat_map(|&i| f.members[i].vertices())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let candidates = candidate_lines_from_vertices(&vertices)?;
    for line in &candidates.lines {
        if subset.iter().all(|&i| line_meets_body(line, &f.members[i])) {
            return Ok(Some(line.clone()));
        }
    }
    Ok(None)
}

/// Maximum number of members any line meets, with a witness line.
pub fn max_line_hits(f: &Family) -> Result<(usize, Line), Error> {
    let candidates = candidate_lines(f)?;
    let mut best: Option<(usize, Line)> = None;
    for line in &candidates.lines {
        let hits = f
            .members
            .iter()
            .filter(|m| line_meets_body(line, m))
            .count();
        if best.as_ref().is_none_or(|(b, _)| hits > *b) {
            best = Some((hits, line.clone()));
        }
    }
    Ok(best.expect("nonempty candidate set"))
}

/// Arithmetic feasibility of piercing a generated construction with `a`
/// lines: any line meets at most 6 members and a line through the special
/// member meets at most 5, so a lines can cover at most 6(a-1)+5 of the
/// 3(k-1) members.
pub fn count_bound_check(f: &Family, a: u32) -> Result<bool, Error> {
    let meta = f.construction.as_ref().ok_or_else(|| {
        Error::InvalidArgument("family lacks construction metadata".into())
    })?;
    let k = meta.k as i64;
    Ok(6 * (a as i64 - 1) + 5 >= 3 * (k - 1))
}

/// Exact minimum piercing by candidate lines via branch-and-bound set cover.
/// Returns None when the minimum exceeds `budget`. Ties among optimal
/// solutions break lexicographically by canonical line form.
pub fn min_piercing_lines(f: &Family, budget: usize) -> Result<Option<PiercingSolution>, Error> {
    if budget == 0 {
        return Err(Error::InvalidArgument("budget must be at least 1".into()));
    }
    let candidates = candidate_lines(f)?;
    let n = f.len();
    assert!(n <= 128, "set-cover solver uses 128-bit member masks");
    let full: u128 = if n == 128 { !0 } else { (1u128 << n) - 1 };

    // Candidate -> mask of members met; drop lines dominated by another line
    // appearing earlier or covering a strict superset.
    let mut masked: Vec<(u128, Line)> = Vec::new();
    for line in &candidates.lines {
        let mut mask = 0u128;
        for (i, m) in f.members.iter().enumerate() {
            if line_meets_body(line, m) {
                mask |= 1 << i;
            }
        }
        if mask != 0 {
            masked.push((mask, line.clone()));
        }
    }
    // Keep maximal masks only; on equal masks the lexicographically smaller
    // line (earlier in candidate order) survives.
    let mut keep: Vec<(u128, Line)> = Vec::new();
    for (mask, line) in &masked {
        if masked
            .iter()
            .any(|(other, ol)| (other & mask) == *mask && (other != mask || ol < line))
        {
            continue;
        }
        keep.push((*mask, line.clone()));
    }
    if keep.iter().fold(0u128, |acc, (m, _)| acc | m) != full {
        // Cannot happen: every member has a vertex, and some candidate passes
        // through each vertex.
        return Err(Error::Validation("candidate system does not cover family".into()));
    }

    let solver = CoverSolver { sets: &keep, full };
    let best = solver.solve(budget);
    let Some(indices) = best else {
        return Ok(None);
    };
    let lines: Vec<Line> = indices.iter().map(|&i| keep[i].1.clone()).collect();
    let mut assignment = Vec::with_capacity(n);
    for m in &f.members {
        let j = lines
            .iter()
            .position(|l| line_meets_body(l, m))
            .expect("cover is verified");
        assignment.push(j);
    }
    Ok(Some(PiercingSolution { lines, assignment }))
}

struct CoverSolver<'a> {
    sets: &'a [(u128, Line)],
    full: u128,
}

impl<'a> CoverSolver<'a> {
    fn solve(&self, budget: usize) -> Option<Vec<usize>> {
        // Greedy cover as an initial upper bound.
        let mut best: Option<Vec<usize>> = self.greedy();
        let mut chosen = Vec::new();
        self.branch(0, &mut chosen, &mut best);
        match best {
            Some(sol) if sol.len() <= budget => Some(sol),
            _ => None,
        }
    }

    fn greedy(&self) -> Option<Vec<usize>> {
        let mut covered = 0u128;
        let mut picked = Vec::new();
        while covered != self.full {
            let (i, _) = self
                .sets
                .iter()
                .enumerate()
                .max_by_key(|(i, (m, _))| ((m & !covered).count_ones(), usize::MAX - i))?;
            if self.sets[i].0 & !covered == 0 {
                return None;
            }
            covered |= self.sets[i].0;
            picked.push(i);
        }
        picked.sort_unstable();
        Some(picked)
    }

    fn branch(&self, covered: u128, chosen: &mut Vec<usize>, best: &mut Option<Vec<usize>>) {
        if covered == self.full {
            let mut sol = chosen.clone();
            sol.sort_unstable();
            let better = match best {
                None => true,
                Some(b) => {
                    sol.len() < b.len() || (sol.len() == b.len() && self.lex_less(&sol, b))
                }
            };
            if better {
                *best = Some(sol);
            }
            return;
        }
        if let Some(b) = best {
            // Simple lower bound: at least one more line is needed; allow
            // equal-size completions through for the lexicographic tie-break.
            if chosen.len() + 1 > b.len() {
                return;
            }
        }
        // Branch on the uncovered member with the fewest covering lines.
        let uncovered = self.full & !covered;
        let mut pick: Option<(usize, Vec<usize>)> = None;
        for i in 0..128 {
            let bit = 1u128 << i;
            if uncovered & bit == 0 {
                continue;
            }
            let covers: Vec<usize> = self
                .sets
                .iter()
                .enumerate()
                .filter(|(_, (m, _))| m & bit != 0)
                .map(|(j, _)| j)
                .collect();
            if pick.as_ref().is_none_or(|(_, c)| covers.len() < c.len()) {
                pick = Some((i, covers));
            }
        }
        let (_, covers) = pick.expect("uncovered member exists");
        for j in covers {
            chosen.push(j);
            self.branch(covered | self.sets[j].0, chosen, best);
            chosen.pop();
        }
    }

    fn lex_less(&self, a: &[usize], b: &[usize]) -> bool {
        let la: Vec<&Line> = a.iter().map(|&i| &self.sets[i].1).sorted().collect();
        let lb: Vec<&Line> = b.iter().map(|&i| &self.sets[i].1).sorted().collect();
        la < lb
    }
}

/// Re-verifies a piercing solution exactly against a family.
pub fn verify_piercing(f: &Family, sol: &PiercingSolution) -> bool {
    if sol.assignment.len() != f.len() {
        return false;
    }
    f.members.iter().zip(&sol.assignment).all(|(m, &j)| {
        sol.lines
            .get(j)
            .is_some_and(|line| line_meets_body(line, m))
    })
}
