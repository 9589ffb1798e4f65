//! Root-system data for the simple types A–G.
//!
//! Vertices follow the Onishchik–Vinberg numbering used throughout the crate:
//!
//! * `A_n`: path `1 - 2 - ... - n`.
//! * `B_n`: path with a double bond `n-1 => n`, `α_n` short.
//! * `C_n`: path with a double bond `n-1 <= n`, `α_n` long.
//! * `D_n`: path `1 - ... - n-2` with leaves `n-1` and `n` on `n-2`.
//! * `E_6`: path `1 - ... - 5`, leaf `6` on `3`.
//! * `E_7`: path `1 - ... - 6`, leaf `7` on `4`.
//! * `E_8`: path `1 - ... - 7`, leaf `8` on `5`.
//! * `F_4`: `1 - 2 <= 3 - 4`, with `α_1, α_2` short.
//! * `G_2`: triple bond between `1` (short) and `2` (long).
//!
//! Arrows point from the long root to the short one. A [`DynkinDiagram`] stores
//! vertices 0-based (index `i` is vertex `i + 1`); an [`ExtendedDiagram`]
//! uses index 0 for the lowest root and `k` for `α_k`.
//!
//! Translation to Bourbaki numbering (vertex → Bourbaki index) is
//! the identity for A–D and G, and otherwise:
//!
//! | type | 1 | 2 | 3 | 4 | 5 | 6 | 7 | 8 |
//! |------|---|---|---|---|---|---|---|---|
//! | E6   | 1 | 3 | 4 | 5 | 6 | 2 |   |   |
//! | E7   | 7 | 6 | 5 | 4 | 3 | 1 | 2 |   |
//! | E8   | 8 | 7 | 6 | 5 | 4 | 3 | 1 | 2 |
//! | F4   | 4 | 3 | 2 | 1 |   |   |   |   |

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest rank accepted for the classical series; labelings are packed into a `u64`.
pub const MAX_RANK: usize = 63;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Series {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Series {
    pub const ALL: [Series; 7] = [
        Series::A,
        Series::B,
        Series::C,
        Series::D,
        Series::E,
        Series::F,
        Series::G,
    ];

    fn letter(self) -> char {
        match self {
            Series::A => 'A',
            Series::B => 'B',
            Series::C => 'C',
            Series::D => 'D',
            Series::E => 'E',
            Series::F => 'F',
            Series::G => 'G',
        }
    }

    fn from_letter(c: char) -> Option<Series> {
        Some(match c.to_ascii_uppercase() {
            'A' => Series::A,
            'B' => Series::B,
            'C' => Series::C,
            'D' => Series::D,
            'E' => Series::E,
            'F' => Series::F,
            'G' => Series::G,
            _ => return None,
        })
    }

    /// Inclusive rank bounds.
    pub fn rank_bounds(self) -> (usize, usize) {
        match self {
            Series::A => (1, MAX_RANK),
            Series::B => (2, MAX_RANK),
            Series::C => (3, MAX_RANK),
            Series::D => (4, MAX_RANK),
            Series::E => (6, 8),
            Series::F => (4, 4),
            Series::G => (2, 2),
        }
    }
}

/// A simple type such as `E8` or `B5`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawType")]
pub struct DynkinType {
    series: Series,
    rank: usize,
}

#[derive(Deserialize)]
struct RawType {
    series: Series,
    rank: usize,
}

impl TryFrom<RawType> for DynkinType {
    type Error = Error;

    fn try_from(raw: RawType) -> Result<Self> {
        DynkinType::new(raw.series, raw.rank)
    }
}

impl DynkinType {
    pub fn new(series: Series, rank: usize) -> Result<Self> {
        let (lo, hi) = series.rank_bounds();
        if rank < lo || rank > hi {
            return Err(Error::InvalidType(format!(
                "{}{} (rank must be in {lo}..={hi})",
                series.letter(),
                rank
            )));
        }
        Ok(DynkinType { series, rank })
    }

    pub fn series(self) -> Series {
        self.series
    }

    pub fn rank(self) -> usize {
        self.rank
    }

    pub fn is_simply_laced(self) -> bool {
        matches!(self.series, Series::A | Series::D | Series::E)
    }

    /// Every type of rank `rank`, in series order.
    pub fn all_of_rank(rank: usize) -> Vec<DynkinType> {
        Series::ALL
            .iter()
            .filter_map(|&s| DynkinType::new(s, rank).ok())
            .collect()
    }

    /// Map from vertex (1-based) to Bourbaki index (1-based); entry `0` is unused.
    pub fn ov_to_bourbaki(self) -> Vec<usize> {
        let table: &[usize] = match (self.series, self.rank) {
            (Series::E, 6) => &[0, 1, 3, 4, 5, 6, 2],
            (Series::E, 7) => &[0, 7, 6, 5, 4, 3, 1, 2],
            (Series::E, 8) => &[0, 8, 7, 6, 5, 4, 3, 1, 2],
            (Series::F, 4) => &[0, 4, 3, 2, 1],
            _ => return (0..=self.rank).collect(),
        };
        table.to_vec()
    }

    /// Inverse of [`DynkinType::ov_to_bourbaki`].
    pub fn bourbaki_to_ov(self) -> Vec<usize> {
        let fwd = self.ov_to_bourbaki();
        let mut inv = vec![0; fwd.len()];
        for (ov, &b) in fwd.iter().enumerate() {
            inv[b] = ov;
        }
        inv
    }
}

impl fmt::Display for DynkinType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.series.letter(), self.rank)
    }
}

impl FromStr for DynkinType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let series = chars
            .next()
            .and_then(Series::from_letter)
            .ok_or_else(|| Error::InvalidType(s.to_string()))?;
        let rest = chars.as_str().trim_start_matches('_');
        let rank = rest
            .parse::<usize>()
            .map_err(|_| Error::InvalidType(s.to_string()))?;
        DynkinType::new(series, rank)
    }
}

/// Bond between two vertices, given as 0-based indices. For multiple bonds
/// the first vertex is the long root.
#[derive(Clone, Copy, Debug)]
struct Bond(usize, usize, i32);

fn bonds(t: DynkinType) -> Vec<Bond> {
    let n = t.rank;
    let chain = |len: usize| (0..len.saturating_sub(1)).map(|i| Bond(i, i + 1, 1));
    match t.series {
        Series::A => chain(n).collect(),
        Series::B => chain(n - 1).chain([Bond(n - 2, n - 1, 2)]).collect(),
        Series::C => chain(n - 1).chain([Bond(n - 1, n - 2, 2)]).collect(),
        Series::D => chain(n - 2)
            .chain([Bond(n - 3, n - 2, 1), Bond(n - 3, n - 1, 1)])
            .collect(),
        Series::E => {
            let branch = n - 4; // vertices 3, 4, 5 for E6, E7, E8
            chain(n - 1).chain([Bond(branch, n - 1, 1)]).collect()
        }
        Series::F => vec![Bond(0, 1, 1), Bond(2, 1, 2), Bond(2, 3, 1)],
        Series::G => vec![Bond(1, 0, 3)],
    }
}

fn cartan_from_bonds(n: usize, bonds: &[Bond]) -> Vec<Vec<i32>> {
    let mut c = vec![vec![0; n]; n];
    for (i, row) in c.iter_mut().enumerate() {
        row[i] = 2;
    }
    for &Bond(long, short, mult) in bonds {
        c[long][short] = -mult;
        c[short][long] = -1;
    }
    c
}

/// A Dynkin diagram with its Cartan pairings `cartan[i][k] = <α_i, α_k^∨>`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DynkinDiagram {
    dtype: DynkinType,
    cartan: Vec<Vec<i32>>,
}

/// Builds the diagram of `dtype` in Onishchik–Vinberg numbering.
pub fn build_diagram(dtype: DynkinType) -> DynkinDiagram {
    DynkinDiagram {
        dtype,
        cartan: cartan_from_bonds(dtype.rank, &bonds(dtype)),
    }
}

impl DynkinDiagram {
    pub fn dtype(&self) -> DynkinType {
        self.dtype
    }

    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    pub fn cartan(&self) -> &[Vec<i32>] {
        &self.cartan
    }

    /// `<α_i, α_k^∨>` for 0-based vertices.
    pub fn pairing(&self, i: usize, k: usize) -> i32 {
        self.cartan[i][k]
    }

    /// All vertices joined to `i` by an edge of any multiplicity.
    pub fn neighbors(&self, i: usize) -> Vec<usize> {
        (0..self.rank())
            .filter(|&k| k != i && self.cartan[i][k] != 0)
            .collect()
    }

    /// Neighbors `k` whose pairing `<α_i, α_k^∨>` is odd. Short neighbors
    /// across a double bond are the ones left out.
    pub fn counted_neighbors(&self, i: usize) -> Vec<usize> {
        (0..self.rank())
            .filter(|&k| k != i && self.cartan[i][k] % 2 != 0)
            .collect()
    }

    /// Connected components of the support of `bits` (bit `i` set means vertex
    /// `i` carries a 1). A boxed 1 at `boxed` counts as one extra support
    /// vertex hanging off that vertex.
    pub fn component_count(&self, bits: &[bool], boxed: Option<usize>) -> usize {
        let boxes: Vec<usize> = boxed.into_iter().collect();
        support_components(self.rank(), |i, k| self.cartan[i][k] != 0, bits, &boxes)
    }
}

/// Counts support components on an arbitrary graph given by `adjacent`.
/// Each entry of `boxes` is a virtual always-1 vertex attached to that vertex.
pub(crate) fn support_components(
    n: usize,
    adjacent: impl Fn(usize, usize) -> bool,
    bits: &[bool],
    boxes: &[usize],
) -> usize {
    let total = n + boxes.len();
    let on = |v: usize| v >= n || bits[v];
    let linked = |u: usize, v: usize| -> bool {
        match (u >= n, v >= n) {
            (false, false) => u != v && adjacent(u, v),
            (true, false) => boxes[u - n] == v,
            (false, true) => boxes[v - n] == u,
            (true, true) => false,
        }
    };
    let mut seen = vec![false; total];
    let mut count = 0;
    for start in 0..total {
        if seen[start] || !on(start) {
            continue;
        }
        count += 1;
        seen[start] = true;
        let mut stack = vec![start];
        while let Some(u) = stack.pop() {
            for v in 0..total {
                if !seen[v] && on(v) && linked(u, v) {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
    }
    count
}

/// Lowest-root bonds: `(k, <α_0, α_k^∨>, <α_k, α_0^∨>)` with `k` a vertex.
fn lowest_root_bonds(t: DynkinType) -> Vec<(usize, i32, i32)> {
    let n = t.rank;
    match (t.series, n) {
        (Series::A, 1) => vec![(1, -2, -2)],
        (Series::A, _) => vec![(1, -1, -1), (n, -1, -1)],
        (Series::B, 2) => vec![(2, -2, -1)],
        (Series::B, _) => vec![(2, -1, -1)],
        (Series::C, _) => vec![(1, -2, -1)],
        (Series::D, _) => vec![(2, -1, -1)],
        (Series::E, 6) | (Series::E, 7) => vec![(6, -1, -1)],
        (Series::E, _) => vec![(1, -1, -1)],
        (Series::F, _) => vec![(4, -1, -1)],
        (Series::G, _) => vec![(2, -1, -1)],
    }
}

/// Extended (affine) diagram: index 0 is the lowest root `α_0 = -θ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtendedDiagram {
    base: DynkinDiagram,
    cartan: Vec<Vec<i32>>,
    marks: Vec<u64>,
    comarks: Vec<u64>,
}

/// Builds the extended diagram, computing marks and comarks as the primitive
/// positive null vectors of the extended Cartan matrix.
pub fn extend(base: &DynkinDiagram) -> ExtendedDiagram {
    let n = base.rank();
    let mut cartan = vec![vec![0; n + 1]; n + 1];
    cartan[0][0] = 2;
    for i in 0..n {
        for k in 0..n {
            cartan[i + 1][k + 1] = base.cartan[i][k];
        }
    }
    for (k, a0k, ak0) in lowest_root_bonds(base.dtype) {
        cartan[0][k] = a0k;
        cartan[k][0] = ak0;
    }
    // Σ_i m_i <α_i, α_k^∨> = 0 for all k, and Σ_k <α_i, α_k^∨> m_k^∨ = 0 for all i.
    let transpose: Vec<Vec<i32>> = (0..=n)
        .map(|i| (0..=n).map(|k| cartan[k][i]).collect())
        .collect();
    let marks = primitive_null_vector(&transpose);
    let comarks = primitive_null_vector(&cartan);
    ExtendedDiagram {
        base: base.clone(),
        cartan,
        marks,
        comarks,
    }
}

/// Null vector of a corank-1 matrix with `x_0 = 1`, scaled to coprime integers.
fn primitive_null_vector(m: &[Vec<i32>]) -> Vec<u64> {
    let size = m.len();
    let n = size - 1;
    // Solve m[1..][1..] x = -m[1..][0] over the rationals.
    let mut aug: Vec<Vec<Ratio<i64>>> = (1..size)
        .map(|i| {
            let mut row: Vec<Ratio<i64>> =
                (1..size).map(|k| Ratio::from_integer(m[i][k] as i64)).collect();
            row.push(Ratio::from_integer(-(m[i][0] as i64)));
            row
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !aug[r][col].is_zero())
            .expect("finite-type Cartan matrix is nonsingular");
        aug.swap(col, pivot);
        let p = aug[col][col];
        for v in aug[col].iter_mut() {
            *v /= p;
        }
        for r in 0..n {
            if r != col && !aug[r][col].is_zero() {
                let f = aug[r][col];
                for c in 0..=n {
                    let delta = f * aug[col][c];
                    aug[r][c] -= delta;
                }
            }
        }
    }
    let mut x: Vec<Ratio<i64>> = vec![Ratio::one()];
    x.extend(aug.iter().map(|row| row[n]));
    let lcm = x
        .iter()
        .fold(1i64, |acc, v| num_integer::lcm(acc, *v.denom()));
    let ints: Vec<i64> = x.iter().map(|v| (v * lcm).to_integer()).collect();
    let g = ints.iter().fold(0i64, |acc, v| num_integer::gcd(acc, *v));
    ints.iter()
        .map(|v| {
            let q = v / g;
            debug_assert!(q > 0);
            q as u64
        })
        .collect()
}

impl ExtendedDiagram {
    pub fn base(&self) -> &DynkinDiagram {
        &self.base
    }

    pub fn rank(&self) -> usize {
        self.base.rank()
    }

    /// `(n+1) × (n+1)` pairings, index 0 being the lowest root.
    pub fn cartan(&self) -> &[Vec<i32>] {
        &self.cartan
    }

    pub fn marks(&self) -> &[u64] {
        &self.marks
    }

    pub fn comarks(&self) -> &[u64] {
        &self.comarks
    }

    /// Marks vector is a left null vector, comarks a right null vector.
    pub fn null_vectors_hold(&self) -> bool {
        let n = self.cartan.len();
        let left = (0..n).all(|k| {
            (0..n)
                .map(|i| self.marks[i] as i64 * self.cartan[i][k] as i64)
                .sum::<i64>()
                == 0
        });
        let right = (0..n).all(|i| {
            (0..n)
                .map(|k| self.cartan[i][k] as i64 * self.comarks[k] as i64)
                .sum::<i64>()
                == 0
        });
        left && right
    }
}

/// An involutive permutation of the vertices (0-based) preserving the Cartan matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DiagramAutomorphism {
    perm: Vec<usize>,
}

impl DiagramAutomorphism {
    pub fn identity(n: usize) -> Self {
        DiagramAutomorphism {
            perm: (0..n).collect(),
        }
    }

    /// Validates that `perm` is an involution preserving `diagram`'s pairings.
    pub fn new(diagram: &DynkinDiagram, perm: Vec<usize>) -> Result<Self> {
        let n = diagram.rank();
        let ok = perm.len() == n
            && perm.iter().all(|&p| p < n)
            && (0..n).all(|i| perm[perm[i]] == i)
            && (0..n).all(|i| (0..n).all(|k| diagram.cartan[perm[i]][perm[k]] == diagram.cartan[i][k]));
        if ok {
            Ok(DiagramAutomorphism { perm })
        } else {
            Err(Error::Argument(format!(
                "{perm:?} is not an involutive automorphism of {}",
                diagram.dtype
            )))
        }
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn apply(&self, i: usize) -> usize {
        self.perm[i]
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| i == p)
    }

    /// Fixed vertices in increasing order.
    pub fn fixed_points(&self) -> Vec<usize> {
        (0..self.perm.len()).filter(|&i| self.perm[i] == i).collect()
    }
}

/// All involutive automorphisms of `diagram`, identity first.
pub fn automorphisms(diagram: &DynkinDiagram) -> Vec<DiagramAutomorphism> {
    let mut out: Vec<DiagramAutomorphism> = isomorphisms(diagram.cartan(), diagram.cartan(), usize::MAX)
        .into_iter()
        .filter(|p| (0..p.len()).all(|i| p[p[i]] == i))
        .map(|perm| DiagramAutomorphism { perm })
        .collect();
    out.sort_by(|a, b| (!a.is_identity()).cmp(&!b.is_identity()).then(a.perm.cmp(&b.perm)));
    out
}

/// Bijections `σ` with `target[σ(j)][σ(l)] == source[j][l]`, up to `limit` of them.
fn isomorphisms(source: &[Vec<i32>], target: &[Vec<i32>], limit: usize) -> Vec<Vec<usize>> {
    let n = source.len();
    let mut found = Vec::new();
    if target.len() != n {
        return found;
    }
    let mut image = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn rec(
        j: usize,
        source: &[Vec<i32>],
        target: &[Vec<i32>],
        image: &mut [usize],
        used: &mut [bool],
        found: &mut Vec<Vec<usize>>,
        limit: usize,
    ) {
        let n = source.len();
        if found.len() >= limit {
            return;
        }
        if j == n {
            found.push(image.to_vec());
            return;
        }
        for cand in 0..n {
            if used[cand] {
                continue;
            }
            let consistent = (0..j).all(|l| {
                target[cand][image[l]] == source[j][l] && target[image[l]][cand] == source[l][j]
            });
            if !consistent {
                continue;
            }
            image[j] = cand;
            used[cand] = true;
            rec(j + 1, source, target, image, used, found, limit);
            used[cand] = false;
            image[j] = usize::MAX;
        }
    }
    rec(0, source, target, &mut image, &mut used, &mut found, limit);
    found
}

/// Identifies a connected Cartan matrix as a standard diagram. Returns the type
/// and, for each standard vertex, the row of `cartan` it corresponds to.
pub fn classify(cartan: &[Vec<i32>]) -> Option<(DynkinType, Vec<usize>)> {
    let k = cartan.len();
    for t in DynkinType::all_of_rank(k) {
        let std = build_diagram(t);
        if let Some(map) = isomorphisms(std.cartan(), cartan, 1).into_iter().next() {
            return Some((t, map));
        }
    }
    None
}

/// Splits the induced subgraph of the extended diagram on `keep` (extended
/// indices, 0 = lowest root) into classified components. Each component comes
/// with the extended index of every standard vertex; components are ordered by
/// their smallest extended index.
pub fn subdiagram(ext: &ExtendedDiagram, keep: &[usize]) -> Result<Vec<(DynkinDiagram, Vec<usize>)>> {
    let n = ext.rank();
    if keep.is_empty() {
        return Err(Error::UnsupportedSubset("empty vertex set".into()));
    }
    let mut set: Vec<usize> = keep.to_vec();
    set.sort_unstable();
    set.dedup();
    if set.len() != keep.len() {
        return Err(Error::UnsupportedSubset(format!("repeated vertex in {keep:?}")));
    }
    if let Some(&bad) = set.iter().find(|&&v| v > n) {
        return Err(Error::UnsupportedSubset(format!(
            "vertex {bad} outside 0..={n}"
        )));
    }
    let c = ext.cartan();
    let mut assigned = vec![false; set.len()];
    let mut out = Vec::new();
    for s in 0..set.len() {
        if assigned[s] {
            continue;
        }
        let mut comp = vec![s];
        assigned[s] = true;
        let mut idx = 0;
        while idx < comp.len() {
            let u = set[comp[idx]];
            for (t, &v) in set.iter().enumerate() {
                if !assigned[t] && c[u][v] != 0 {
                    assigned[t] = true;
                    comp.push(t);
                }
            }
            idx += 1;
        }
        let mut verts: Vec<usize> = comp.iter().map(|&t| set[t]).collect();
        verts.sort_unstable();
        let induced: Vec<Vec<i32>> = verts
            .iter()
            .map(|&u| verts.iter().map(|&v| c[u][v]).collect())
            .collect();
        let (dtype, map) = classify(&induced).ok_or_else(|| {
            Error::UnsupportedSubset(format!(
                "vertices {verts:?} do not form a finite-type Dynkin diagram"
            ))
        })?;
        let ambient: Vec<usize> = map.iter().map(|&r| verts[r]).collect();
        out.push((build_diagram(dtype), ambient));
    }
    Ok(out)
}

/// Serializable dump of a diagram with its extension data.
#[derive(Clone, Debug, Serialize)]
pub struct DiagramDump {
    #[serde(rename = "type")]
    pub dtype: DynkinType,
    pub cartan: Vec<Vec<i32>>,
    pub extended_cartan: Vec<Vec<i32>>,
    pub marks: Vec<u64>,
    pub comarks: Vec<u64>,
}

impl From<&ExtendedDiagram> for DiagramDump {
    fn from(e: &ExtendedDiagram) -> Self {
        DiagramDump {
            dtype: e.base.dtype,
            cartan: e.base.cartan.clone(),
            extended_cartan: e.cartan.clone(),
            marks: e.marks.clone(),
            comarks: e.comarks.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ty(s: &str) -> DynkinType {
        s.parse().unwrap()
    }

    fn all_types(max_rank: usize) -> Vec<DynkinType> {
        (1..=max_rank).flat_map(DynkinType::all_of_rank).collect()
    }

    #[test]
    fn rank_bounds() {
        assert!(DynkinType::new(Series::A, 0).is_err());
        assert!(DynkinType::new(Series::B, 1).is_err());
        assert!(DynkinType::new(Series::C, 2).is_err());
        assert!(DynkinType::new(Series::D, 3).is_err());
        assert!(DynkinType::new(Series::E, 9).is_err());
        assert!(DynkinType::new(Series::F, 5).is_err());
        assert!(DynkinType::new(Series::G, 3).is_err());
        assert!("E8".parse::<DynkinType>().is_ok());
        assert!("X3".parse::<DynkinType>().is_err());
    }

    #[test]
    fn small_cartans() {
        assert_eq!(build_diagram(ty("A2")).cartan(), &[vec![2, -1], vec![-1, 2]]);
        let b3 = build_diagram(ty("B3"));
        assert_eq!(b3.pairing(1, 2), -2);
        assert_eq!(b3.pairing(2, 1), -1);
        let g2 = build_diagram(ty("G2"));
        let mut off = vec![g2.pairing(0, 1), g2.pairing(1, 0)];
        off.sort();
        assert_eq!(off, vec![-3, -1]);
    }

    #[test]
    fn drawn_shapes() {
        let d = build_diagram(ty("D6"));
        assert_eq!(d.neighbors(3), vec![2, 4, 5]);
        let e6 = build_diagram(ty("E6"));
        assert_eq!(e6.neighbors(2), vec![1, 3, 5]);
        let e7 = build_diagram(ty("E7"));
        assert_eq!(e7.neighbors(3), vec![2, 4, 6]);
        let e8 = build_diagram(ty("E8"));
        assert_eq!(e8.neighbors(4), vec![3, 5, 7]);
        // F4: 2 <= 3, α_2 short.
        let f4 = build_diagram(ty("F4"));
        assert_eq!(f4.pairing(2, 1), -2);
        assert_eq!(f4.pairing(1, 2), -1);
        // C_n: α_n long.
        let c4 = build_diagram(ty("C4"));
        assert_eq!(c4.pairing(3, 2), -2);
    }

    #[test]
    fn cartan_integers() {
        for t in all_types(9) {
            let d = build_diagram(t);
            let n = d.rank();
            for i in 0..n {
                assert_eq!(d.pairing(i, i), 2);
                for k in 0..n {
                    if i != k {
                        let (a, b) = (d.pairing(i, k), d.pairing(k, i));
                        assert!([0, -1, -2, -3].contains(&a));
                        assert_eq!(a == 0, b == 0);
                        assert!((0..=3).contains(&(a * b)), "{t}");
                    }
                }
            }
        }
    }

    #[test]
    fn counted_neighbors_rules() {
        let b5 = build_diagram(ty("B5"));
        assert_eq!(b5.counted_neighbors(3), vec![2]);
        assert_eq!(b5.counted_neighbors(4), vec![3]);
        let g2 = build_diagram(ty("G2"));
        assert_eq!(g2.counted_neighbors(0), vec![1]);
        assert_eq!(g2.counted_neighbors(1), vec![0]);
    }

    #[test]
    fn marks_and_comarks() {
        for t in all_types(9) {
            let e = extend(&build_diagram(t));
            assert_eq!(e.marks()[0], 1, "{t}");
            assert_eq!(e.comarks()[0], 1, "{t}");
            assert!(e.null_vectors_hold(), "{t}");
            if t.is_simply_laced() {
                assert_eq!(e.marks(), e.comarks(), "{t}");
            }
        }
        assert!(extend(&build_diagram(ty("A5"))).marks().iter().all(|&m| m == 1));
        let e8 = extend(&build_diagram(ty("E8")));
        assert_eq!(e8.marks(), &[1, 2, 3, 4, 5, 6, 4, 2, 3]);
        let d4 = extend(&build_diagram(ty("D4")));
        assert_eq!(d4.marks(), &[1, 1, 2, 1, 1]);
        assert_eq!(d4.cartan()[0][2], -1);
        let b4 = extend(&build_diagram(ty("B4")));
        assert_eq!(b4.marks(), &[1, 1, 2, 2, 2]);
        assert_eq!(b4.comarks(), &[1, 1, 2, 2, 1]);
        let f4 = extend(&build_diagram(ty("F4")));
        assert_eq!(f4.marks(), &[1, 2, 4, 3, 2]);
        let g2 = extend(&build_diagram(ty("G2")));
        assert_eq!(g2.marks(), &[1, 3, 2]);
    }

    #[test]
    fn automorphism_lists() {
        let a3 = automorphisms(&build_diagram(ty("A3")));
        assert_eq!(a3.len(), 2);
        assert!(a3[0].is_identity());
        assert_eq!(a3[1].perm(), &[2, 1, 0]);
        assert_eq!(automorphisms(&build_diagram(ty("E7"))).len(), 1);
        assert_eq!(automorphisms(&build_diagram(ty("E6"))).len(), 2);
        assert_eq!(automorphisms(&build_diagram(ty("D4"))).len(), 4);
        assert_eq!(automorphisms(&build_diagram(ty("D6"))).len(), 2);
        assert_eq!(automorphisms(&build_diagram(ty("B4"))).len(), 1);
        for t in all_types(8) {
            let d = build_diagram(t);
            for a in automorphisms(&d) {
                assert!(DiagramAutomorphism::new(&d, a.perm().to_vec()).is_ok());
            }
        }
    }

    #[test]
    fn subdiagrams() {
        let e8 = extend(&build_diagram(ty("E8")));
        let keep: Vec<usize> = (0..=8).filter(|&v| v != 4).collect();
        let parts = subdiagram(&e8, &keep).unwrap();
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[0].0.dtype(), ty("A4"));
        assert_eq!(parts[0].1, vec![0, 1, 2, 3]);
        assert_eq!(parts[1].0.dtype(), ty("A4"));
        let mut right = parts[1].1.clone();
        right.sort();
        assert_eq!(right, vec![5, 6, 7, 8]);

        let e7 = extend(&build_diagram(ty("E7")));
        let parts = subdiagram(&e7, &[1, 2, 4, 5, 6, 7]).unwrap();
        let types: Vec<String> = parts.iter().map(|p| p.0.dtype().to_string()).collect();
        assert_eq!(types, vec!["A2", "A4"]);

        let d5 = extend(&build_diagram(ty("D5")));
        let parts = subdiagram(&d5, &[1]).unwrap();
        assert_eq!(parts.len(), 1);
        assert_eq!(parts[0].0.dtype(), ty("A1"));

        let a3 = extend(&build_diagram(ty("A3")));
        assert!(matches!(subdiagram(&a3, &[0, 1, 2, 3]), Err(Error::UnsupportedSubset(_))));
        assert!(subdiagram(&a3, &[0, 1, 3]).is_ok());
        assert!(subdiagram(&a3, &[]).is_err());
        assert!(subdiagram(&a3, &[5]).is_err());
    }

    #[test]
    fn full_subset_is_identity() {
        for t in all_types(8) {
            let d = build_diagram(t);
            let e = extend(&d);
            let all: Vec<usize> = (1..=t.rank()).collect();
            let parts = subdiagram(&e, &all).unwrap();
            assert_eq!(parts.len(), 1);
            assert_eq!(parts[0].0, d);
            assert_eq!(parts[0].1, all, "{t}");
        }
    }

    #[test]
    fn bourbaki_translation_roundtrip() {
        for t in all_types(8) {
            let fwd = t.ov_to_bourbaki();
            let inv = t.bourbaki_to_ov();
            for v in 1..=t.rank() {
                assert_eq!(inv[fwd[v]], v);
            }
        }
        // The E8 vertex with mark 5 is Bourbaki α_5.
        assert_eq!(ty("E8").ov_to_bourbaki()[4], 5);
    }

    #[test]
    fn components_with_box() {
        let a9 = build_diagram(ty("A9"));
        let bits: Vec<bool> = "110100111".chars().map(|c| c == '1').collect();
        assert_eq!(a9.component_count(&bits, None), 3);
        let zero = vec![false; 9];
        assert_eq!(a9.component_count(&zero, None), 0);
        assert_eq!(a9.component_count(&zero, Some(4)), 1);
    }

    #[test]
    fn type_json() {
        let t: DynkinType = serde_json::from_str(r#"{"series":"E","rank":8}"#).unwrap();
        assert_eq!(t, ty("E8"));
        assert!(serde_json::from_str::<DynkinType>(r#"{"series":"E","rank":9}"#).is_err());
        assert_eq!(serde_json::to_string(&t).unwrap(), r#"{"series":"E","rank":8}"#);
    }
}
