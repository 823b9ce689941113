//! Lattice paths, horizontal distance and the ν-Tamari cover relation.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::limits::Limits;

/// A unit step. `N < E`, so sorting paths orders them lexicographically
/// with north steps first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Step {
    N,
    E,
}

impl Step {
    pub fn as_char(self) -> char {
        match self {
            Step::N => 'N',
            Step::E => 'E',
        }
    }
}

impl TryFrom<char> for Step {
    type Error = Error;

    fn try_from(c: char) -> Result<Self> {
        match c {
            'N' => Ok(Step::N),
            'E' => Ok(Step::E),
            other => Err(Error::InvalidStep(other)),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GridPoint {
    pub x: usize,
    pub y: usize,
}

impl GridPoint {
    pub fn new(x: usize, y: usize) -> Self {
        GridPoint { x, y }
    }
}

/// A nonempty sequence of N/E steps starting at the origin.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LatticePath {
    steps: Vec<Step>,
}

impl LatticePath {
    pub fn from_steps(steps: Vec<Step>) -> Result<Self> {
        if steps.is_empty() {
            return Err(Error::EmptyPath);
        }
        Ok(LatticePath { steps })
    }

    /// Parses an uppercase `N`/`E` string.
    pub fn parse(text: &str) -> Result<Self> {
        let steps = text
            .chars()
            .map(Step::try_from)
            .collect::<Result<Vec<_>>>()?;
        Self::from_steps(steps)
    }

    /// `(NE)^n`, the minimal Dyck path of semilength `n`.
    pub fn dyck_staircase(n: usize) -> Result<Self> {
        Self::from_steps([Step::N, Step::E].repeat(n))
    }

    /// `E(NE)^(n-1)`.
    pub fn east_staircase(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyPath);
        }
        let mut steps = vec![Step::E];
        steps.extend([Step::N, Step::E].repeat(n - 1));
        Self::from_steps(steps)
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    /// Number of steps ℓ.
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn north_count(&self) -> usize {
        self.steps.iter().filter(|&&s| s == Step::N).count()
    }

    pub fn east_count(&self) -> usize {
        self.len() - self.north_count()
    }

    pub fn endpoint(&self) -> GridPoint {
        GridPoint::new(self.east_count(), self.north_count())
    }

    /// Heights of the grid points `0..=ℓ`.
    pub fn heights(&self) -> Vec<usize> {
        let mut h = Vec::with_capacity(self.len() + 1);
        let mut y = 0;
        h.push(0);
        for &s in &self.steps {
            if s == Step::N {
                y += 1;
            }
            h.push(y);
        }
        h
    }

    /// The `ℓ + 1` grid points visited, origin first.
    pub fn points(&self) -> impl Iterator<Item = GridPoint> + '_ {
        let origin = std::iter::once(GridPoint::new(0, 0));
        let rest = self.steps.iter().scan(GridPoint::new(0, 0), |p, &s| {
            match s {
                Step::N => p.y += 1,
                Step::E => p.x += 1,
            }
            Some(*p)
        });
        origin.chain(rest)
    }

    /// True iff every grid point of `self` is weakly left of ν at its height.
    pub fn lies_weakly_above(&self, ctx: &NuContext) -> Result<bool> {
        ctx.check_endpoints(self)?;
        Ok(self
            .points()
            .all(|p| ctx.signed_distance(p).is_some_and(|d| d >= 0)))
    }
}

impl fmt::Display for LatticePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.steps {
            write!(f, "{}", s.as_char())?;
        }
        Ok(())
    }
}

impl FromStr for LatticePath {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

impl Serialize for LatticePath {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for LatticePath {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        LatticePath::parse(&s).map_err(serde::de::Error::custom)
    }
}

/// A fixed reference path ν with its height profile and fixed positions.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NuContext {
    nu: LatticePath,
    heights: Vec<usize>,
    /// `fixed[k]` is the largest index `i` with `heights[i] == k`.
    fixed: Vec<usize>,
}

impl NuContext {
    pub fn new(nu: LatticePath) -> Self {
        let heights = nu.heights();
        let top = nu.north_count();
        let mut fixed = vec![0; top + 1];
        for (i, &h) in heights.iter().enumerate() {
            fixed[h] = i;
        }
        NuContext { nu, heights, fixed }
    }

    pub fn parse(text: &str) -> Result<Self> {
        LatticePath::parse(text).map(Self::new)
    }

    /// ν = (NE)^n: the classical Tamari lattice Tam_n.
    pub fn dyck(n: usize) -> Result<Self> {
        LatticePath::dyck_staircase(n).map(Self::new)
    }

    /// ν = E(NE)^(n-1), the reference path whose bracket vectors also
    /// encode Tam_n.
    pub fn east_dyck(n: usize) -> Result<Self> {
        LatticePath::east_staircase(n).map(Self::new)
    }

    pub fn nu(&self) -> &LatticePath {
        &self.nu
    }

    pub fn heights(&self) -> &[usize] {
        &self.heights
    }

    pub fn fixed_positions(&self) -> &[usize] {
        &self.fixed
    }

    pub fn fixed_position(&self, k: usize) -> usize {
        self.fixed[k]
    }

    /// Endpoint height of ν.
    pub fn n_nu(&self) -> usize {
        self.fixed.len() - 1
    }

    pub fn ell(&self) -> usize {
        self.nu.len()
    }

    /// If ν = E(NE)^(k-1), returns `k`.
    pub fn east_dyck_size(&self) -> Option<usize> {
        let s = self.nu.steps();
        if s[0] != Step::E || s.len().is_multiple_of(2) {
            return None;
        }
        s[1..]
            .chunks(2)
            .all(|c| c == [Step::N, Step::E])
            .then_some(s.len().div_ceil(2))
    }

    /// x-coordinate of the last point of ν at height `y`.
    fn x_end(&self, y: usize) -> usize {
        self.fixed[y] - y
    }

    pub(crate) fn signed_distance(&self, p: GridPoint) -> Option<isize> {
        (p.y <= self.n_nu()).then(|| self.x_end(p.y) as isize - p.x as isize)
    }

    /// Maximum number of east steps from `point` before being strictly
    /// right of ν.
    pub fn horizontal_distance(&self, point: GridPoint) -> Result<usize> {
        match self.signed_distance(point) {
            Some(d) if d >= 0 => Ok(d as usize),
            _ => Err(Error::PointBelowPath {
                x: point.x,
                y: point.y,
            }),
        }
    }

    fn check_endpoints(&self, mu: &LatticePath) -> Result<()> {
        let (a, b) = (mu.endpoint(), self.nu.endpoint());
        if a != b {
            return Err(Error::EndpointMismatch(a.x, a.y, b.x, b.y));
        }
        Ok(())
    }

    /// Errors unless `mu` is an element of Tam(ν).
    pub fn require_member(&self, mu: &LatticePath) -> Result<()> {
        if mu.lies_weakly_above(self)? {
            Ok(())
        } else {
            Err(Error::NotWeaklyAbove(mu.to_string()))
        }
    }

    /// All of Tam(ν) in lexicographic order with `N < E`.
    pub fn enumerate(&self) -> Result<Vec<LatticePath>> {
        self.enumerate_with(&Limits::default())
    }

    pub fn enumerate_with(&self, limits: &Limits) -> Result<Vec<LatticePath>> {
        limits.check_ell(self.ell())?;
        let mut out = Vec::new();
        let mut steps = Vec::with_capacity(self.ell());
        self.extend_paths(&mut steps, GridPoint::new(0, 0), &mut out);
        Ok(out)
    }

    fn extend_paths(&self, steps: &mut Vec<Step>, at: GridPoint, out: &mut Vec<LatticePath>) {
        if steps.len() == self.ell() {
            out.push(LatticePath {
                steps: steps.clone(),
            });
            return;
        }
        let top = self.n_nu();
        let right = self.ell() - top;
        if at.y < top {
            steps.push(Step::N);
            self.extend_paths(steps, GridPoint::new(at.x, at.y + 1), out);
            steps.pop();
        }
        if at.x < right && at.x < self.x_end(at.y) {
            steps.push(Step::E);
            self.extend_paths(steps, GridPoint::new(at.x + 1, at.y), out);
            steps.pop();
        }
    }

    fn distances(&self, mu: &LatticePath) -> Vec<isize> {
        mu.points()
            .map(|p| self.signed_distance(p).unwrap_or(isize::MIN))
            .collect()
    }

    /// First point index after `start` with the same horizontal distance.
    fn subpath_end(dist: &[isize], start: usize) -> Option<usize> {
        (start + 1..dist.len()).find(|&j| dist[j] == dist[start])
    }

    /// Elements covering `mu`: for `mu = X E D Y` with `D` starting with N
    /// and ending at the next point of equal horizontal distance, the path
    /// `X D E Y`.
    pub fn covers_up(&self, mu: &LatticePath) -> Vec<LatticePath> {
        debug_assert!(mu.lies_weakly_above(self).unwrap_or(false));
        let s = mu.steps();
        let dist = self.distances(mu);
        let mut out = Vec::new();
        for i in 0..s.len().saturating_sub(1) {
            if s[i] != Step::E || s[i + 1] != Step::N {
                continue;
            }
            // D runs from point i+1 to point `end`, i.e. steps i+1..end.
            let Some(end) = Self::subpath_end(&dist, i + 1) else {
                continue;
            };
            let mut steps = Vec::with_capacity(s.len());
            steps.extend_from_slice(&s[..i]);
            steps.extend_from_slice(&s[i + 1..end]);
            steps.push(Step::E);
            steps.extend_from_slice(&s[end..]);
            out.push(LatticePath { steps });
        }
        out.sort();
        out
    }

    /// Elements covered by `mu`: for `mu = X D E Y` where shifting `D` one
    /// unit right stays weakly above ν, the path `X E D Y`.
    pub fn covers_down(&self, mu: &LatticePath) -> Vec<LatticePath> {
        debug_assert!(mu.lies_weakly_above(self).unwrap_or(false));
        let s = mu.steps();
        let dist = self.distances(mu);
        let mut out = Vec::new();
        for start in 0..s.len() {
            if s[start] != Step::N || dist[start] < 1 {
                continue;
            }
            let Some(end) = Self::subpath_end(&dist, start) else {
                continue;
            };
            if end >= s.len() || s[end] != Step::E {
                continue;
            }
            let mut steps = Vec::with_capacity(s.len());
            steps.extend_from_slice(&s[..start]);
            steps.push(Step::E);
            steps.extend_from_slice(&s[start..end]);
            steps.extend_from_slice(&s[end + 1..]);
            out.push(LatticePath { steps });
        }
        out.sort();
        out
    }

    /// The maximal element: all north steps first.
    pub fn top(&self) -> LatticePath {
        let mut steps = vec![Step::N; self.n_nu()];
        steps.extend(std::iter::repeat_n(Step::E, self.ell() - self.n_nu()));
        LatticePath { steps }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> LatticePath {
        LatticePath::parse(s).unwrap()
    }

    #[test]
    fn parse_examples() {
        let mu = p("NENENEEENE");
        assert_eq!(mu.north_count(), 4);
        assert_eq!(mu.len(), 10);
        assert_eq!(p("E").heights(), vec![0, 0]);
        assert_eq!(LatticePath::parse("XY"), Err(Error::InvalidStep('X')));
        assert_eq!(LatticePath::parse(""), Err(Error::EmptyPath));
        assert_eq!(mu.to_string(), "NENENEEENE");
    }

    #[test]
    fn context_fixed_positions() {
        let ctx = NuContext::parse("ENNEEEENNE").unwrap();
        assert_eq!(ctx.heights(), &[0, 0, 1, 2, 2, 2, 2, 2, 3, 4, 4]);
        assert_eq!(ctx.fixed_positions(), &[1, 2, 7, 8, 10]);
        assert_eq!(ctx.n_nu(), 4);
        assert_eq!(ctx.ell(), 10);
        let e = NuContext::east_dyck(4).unwrap();
        assert_eq!(e.nu().to_string(), "ENENENE");
        assert_eq!(e.fixed_positions(), &[1, 3, 5, 7]);
        assert_eq!(e.east_dyck_size(), Some(4));
        assert_eq!(NuContext::parse("E").unwrap().east_dyck_size(), Some(1));
        assert_eq!(NuContext::dyck(2).unwrap().east_dyck_size(), None);
        assert_eq!(NuContext::parse("ENEN").unwrap().east_dyck_size(), None);
    }

    #[test]
    fn horizontal_distance_examples() {
        let ctx = NuContext::dyck(3).unwrap();
        assert_eq!(ctx.horizontal_distance(GridPoint::new(3, 3)), Ok(0));
        assert_eq!(ctx.horizontal_distance(GridPoint::new(0, 2)), Ok(2));
        assert_eq!(ctx.horizontal_distance(GridPoint::new(0, 0)), Ok(0));
        assert!(ctx.horizontal_distance(GridPoint::new(2, 1)).is_err());
        // brute force: step east until strictly right of ν
        for n in 1..5 {
            let ctx = NuContext::dyck(n).unwrap();
            for y in 0..=n {
                for x in 0..=y {
                    assert_eq!(ctx.horizontal_distance(GridPoint::new(x, y)), Ok(y - x));
                }
            }
        }
    }

    #[test]
    fn weakly_above_examples() {
        let nu = NuContext::parse("ENNEEEENNE").unwrap();
        assert_eq!(p("NENENEEENE").lies_weakly_above(&nu), Ok(true));
        assert_eq!(nu.nu().lies_weakly_above(&nu), Ok(true));
        let ne = NuContext::parse("NE").unwrap();
        assert_eq!(p("EN").lies_weakly_above(&ne), Ok(false));
        assert!(matches!(
            p("NNE").lies_weakly_above(&ne),
            Err(Error::EndpointMismatch(..))
        ));
    }

    #[test]
    fn enumeration_examples() {
        let all = NuContext::dyck(3).unwrap().enumerate().unwrap();
        assert_eq!(all.len(), 5);
        let mut sorted = all.clone();
        sorted.sort();
        assert_eq!(all, sorted);
        assert_eq!(NuContext::parse("NE").unwrap().enumerate().unwrap().len(), 1);
        assert_eq!(NuContext::east_dyck(3).unwrap().enumerate().unwrap().len(), 5);
        assert!(NuContext::dyck(14).unwrap().enumerate().is_err());
    }

    #[test]
    fn enumeration_matches_filter_of_all_paths() {
        for nu in ["ENNEEEENNE", "EENNEN", "NNEEEN", "ENENE", "EEE"] {
            let ctx = NuContext::parse(nu).unwrap();
            let (l, n) = (ctx.ell(), ctx.n_nu());
            let mut brute = Vec::new();
            for mask in 0u32..(1 << l) {
                if mask.count_ones() as usize != n {
                    continue;
                }
                let steps = (0..l)
                    .map(|i| if mask >> (l - 1 - i) & 1 == 1 { Step::N } else { Step::E })
                    .collect();
                let path = LatticePath::from_steps(steps).unwrap();
                if path.lies_weakly_above(&ctx).unwrap() {
                    brute.push(path);
                }
            }
            brute.sort();
            assert_eq!(ctx.enumerate().unwrap(), brute, "nu = {nu}");
        }
    }

    #[test]
    fn cover_examples() {
        let t2 = NuContext::dyck(2).unwrap();
        assert_eq!(t2.covers_up(&p("NENE")), vec![p("NNEE")]);
        assert_eq!(t2.covers_down(&p("NNEE")), vec![p("NENE")]);
        let t3 = NuContext::dyck(3).unwrap();
        assert!(t3.covers_up(&t3.top()).is_empty());
        assert!(t3.covers_down(t3.nu()).is_empty());
        assert_eq!(t3.covers_up(t3.nu()).len(), 2);
        assert_eq!(t3.covers_down(&t3.top()).len(), 2);
    }

    #[test]
    fn covers_are_mutually_inverse() {
        for nu in ["ENNEEEENNE", "NENENENE", "ENENENE", "EENNENEN", "NNEENE"] {
            let ctx = NuContext::parse(nu).unwrap();
            let all = ctx.enumerate().unwrap();
            for mu in &all {
                for up in ctx.covers_up(mu) {
                    assert!(up.lies_weakly_above(&ctx).unwrap());
                    assert!(ctx.covers_down(&up).contains(mu));
                }
                for down in ctx.covers_down(mu) {
                    assert!(down.lies_weakly_above(&ctx).unwrap());
                    assert!(ctx.covers_up(&down).contains(mu));
                }
            }
        }
    }

    #[test]
    fn points_and_heights_agree() {
        let mu = p("NNEENEEN");
        let hs = mu.heights();
        for (i, pt) in mu.points().enumerate() {
            assert_eq!(pt.y, hs[i]);
            assert_eq!(pt.x + pt.y, i);
        }
        assert!(hs.windows(2).all(|w| w[0] <= w[1]));
    }
}
