//! The puzzle engine: labelings over ℤ/2, moves, and orbit enumeration.
//!
//! A move at vertex `i` replaces `a_i` by `a_i + t_i + Σ a_k`, the sum running
//! over the neighbors `k` of `i` with `<α_i, α_k^∨>` odd. The twist bit `t_i`
//! plays the role of a boxed 1 hanging off a black vertex; it is never stored
//! as an extra vertex.
//!
//! Labelings are packed into a `u64` with vertex 1 as the least significant
//! bit. The canonical representative of a class is its member with the
//! smallest packed value, i.e. the lex-min string when read from vertex `n`
//! down to vertex 1. This picks left-packed representatives such as `1010`
//! over `0101`. Class ids are assigned in order of their representative.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::dynkin::{support_components, DynkinDiagram, DynkinType, MAX_RANK};
use crate::error::{Error, Result};

/// Default bound on the size of a connected board handed to the enumerator.
pub const DEFAULT_CAP: usize = 24;

/// A 0/1 assignment to the vertices of a board.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Labeling {
    len: usize,
    bits: u64,
}

impl Labeling {
    pub fn zero(len: usize) -> Self {
        assert!(len <= MAX_RANK, "labeling length {len} exceeds {MAX_RANK}");
        Labeling { len, bits: 0 }
    }

    /// Builds a labeling from its packed form (vertex 1 in bit 0).
    pub fn from_packed(len: usize, bits: u64) -> Self {
        assert!(len <= MAX_RANK);
        debug_assert!(len == 64 || bits >> len == 0);
        Labeling { len, bits }
    }

    /// Labeling with 1s exactly at the given 0-based vertices.
    pub fn from_support(len: usize, ones: &[usize]) -> Self {
        let mut l = Labeling::zero(len);
        for &i in ones {
            l.set(i, true);
        }
        l
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut l = Labeling::zero(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            l.set(i, b);
        }
        l
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn packed(&self) -> u64 {
        self.bits
    }

    fn mask(&self, i: usize) -> u64 {
        assert!(i < self.len, "vertex {i} out of range for length {}", self.len);
        1u64 << i
    }

    pub fn get(&self, i: usize) -> bool {
        self.bits & self.mask(i) != 0
    }

    pub fn set(&mut self, i: usize, v: bool) {
        let m = self.mask(i);
        if v {
            self.bits |= m;
        } else {
            self.bits &= !m;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.bits == 0
    }

    pub fn weight(&self) -> u32 {
        self.bits.count_ones()
    }

    pub fn to_bools(&self) -> Vec<bool> {
        (0..self.len).map(|i| self.get(i)).collect()
    }

    /// Vertices `range` as a new labeling.
    pub fn slice(&self, start: usize, len: usize) -> Labeling {
        assert!(start + len <= self.len);
        let mask = if len == 64 { u64::MAX } else { (1u64 << len) - 1 };
        Labeling {
            len,
            bits: (self.bits >> start) & mask,
        }
    }

    /// `self` followed by `other`.
    pub fn concat(&self, other: &Labeling) -> Labeling {
        let len = self.len + other.len;
        assert!(len <= MAX_RANK);
        Labeling {
            len,
            bits: self.bits | (other.bits << self.len),
        }
    }

    /// Picks out the given vertices, in the given order.
    pub fn restrict(&self, vertices: &[usize]) -> Labeling {
        let mut out = Labeling::zero(vertices.len());
        for (j, &v) in vertices.iter().enumerate() {
            out.set(j, self.get(v));
        }
        out
    }
}

impl fmt::Display for Labeling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for Labeling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Labeling({self})")
    }
}

impl FromStr for Labeling {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.len() > MAX_RANK {
            return Err(Error::Argument(format!("labeling longer than {MAX_RANK}")));
        }
        let mut l = Labeling::zero(s.len());
        for (i, c) in s.chars().enumerate() {
            match c {
                '0' => {}
                '1' => l.set(i, true),
                _ => return Err(Error::Argument(format!("bad labeling {s:?}"))),
            }
        }
        Ok(l)
    }
}

impl Serialize for Labeling {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawBits {
    Text(String),
    List(Vec<u8>),
}

impl RawBits {
    fn into_bools(self) -> std::result::Result<Vec<bool>, String> {
        match self {
            RawBits::Text(s) => s
                .chars()
                .map(|c| match c {
                    '0' => Ok(false),
                    '1' => Ok(true),
                    _ => Err(format!("bad bit {c:?}")),
                })
                .collect(),
            RawBits::List(v) => v
                .into_iter()
                .map(|b| match b {
                    0 => Ok(false),
                    1 => Ok(true),
                    _ => Err(format!("bad bit {b}")),
                })
                .collect(),
        }
    }
}

impl<'de> Deserialize<'de> for Labeling {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let bools = RawBits::deserialize(d)?
            .into_bools()
            .map_err(serde::de::Error::custom)?;
        if bools.len() > MAX_RANK {
            return Err(serde::de::Error::custom("labeling too long"));
        }
        Ok(Labeling::from_bools(&bools))
    }
}

/// Black/white vertex pattern `t`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Coloring {
    bits: Vec<bool>,
}

impl Coloring {
    pub fn white(n: usize) -> Self {
        Coloring {
            bits: vec![false; n],
        }
    }

    /// Coloring with the given 0-based vertices black.
    pub fn with_black(n: usize, black: &[usize]) -> Result<Self> {
        let mut bits = vec![false; n];
        for &b in black {
            if b >= n {
                return Err(Error::Argument(format!(
                    "black vertex {} outside 1..={n}",
                    b + 1
                )));
            }
            bits[b] = true;
        }
        Ok(Coloring { bits })
    }

    pub fn from_bools(bits: Vec<bool>) -> Self {
        Coloring { bits }
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn is_black(&self, i: usize) -> bool {
        self.bits[i]
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn black(&self) -> Vec<usize> {
        (0..self.bits.len()).filter(|&i| self.bits[i]).collect()
    }

    pub fn is_white(&self) -> bool {
        self.bits.iter().all(|b| !b)
    }
}

impl fmt::Display for Coloring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for Coloring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Coloring({self})")
    }
}

impl Serialize for Coloring {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Coloring {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let bits = RawBits::deserialize(d)?
            .into_bools()
            .map_err(serde::de::Error::custom)?;
        Ok(Coloring { bits })
    }
}

/// Vertices in a contiguous index range that form a union of connected
/// components of the board.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub start: usize,
    pub len: usize,
    /// Standard type, when the block was built from one.
    pub dtype: Option<DynkinType>,
}

/// A board: Cartan pairings (possibly block-diagonal) plus a coloring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PuzzleInstance {
    cartan: Vec<Vec<i32>>,
    coloring: Coloring,
    /// Packed mask of the counted neighbors of each vertex.
    masks: Vec<u64>,
    blocks: Vec<Block>,
}

impl PuzzleInstance {
    pub fn new(diagram: &DynkinDiagram, coloring: Coloring) -> Result<Self> {
        Self::disjoint(&[(diagram.clone(), coloring)])
    }

    pub fn untwisted(diagram: &DynkinDiagram) -> Self {
        Self::new(diagram, Coloring::white(diagram.rank())).expect("white coloring fits")
    }

    /// Board with zero vertices; it has exactly one labeling.
    pub fn empty() -> Self {
        PuzzleInstance {
            cartan: Vec::new(),
            coloring: Coloring::white(0),
            masks: Vec::new(),
            blocks: Vec::new(),
        }
    }

    /// Disjoint union of colored diagrams, indexed consecutively.
    pub fn disjoint(parts: &[(DynkinDiagram, Coloring)]) -> Result<Self> {
        let n: usize = parts.iter().map(|(d, _)| d.rank()).sum();
        check_len(n)?;
        let mut cartan = vec![vec![0; n]; n];
        let mut bits = Vec::with_capacity(n);
        let mut blocks = Vec::new();
        let mut start = 0;
        for (d, c) in parts {
            let k = d.rank();
            if c.len() != k {
                return Err(Error::Argument(format!(
                    "coloring of length {} for a board of rank {k}",
                    c.len()
                )));
            }
            for i in 0..k {
                for j in 0..k {
                    cartan[start + i][start + j] = d.pairing(i, j);
                }
            }
            bits.extend_from_slice(c.bits());
            blocks.push(Block {
                start,
                len: k,
                dtype: Some(d.dtype()),
            });
            start += k;
        }
        Ok(Self::assemble(cartan, Coloring::from_bools(bits), blocks))
    }

    /// Board from raw pairings. Off-diagonal zero pattern must be symmetric.
    pub fn from_cartan(cartan: Vec<Vec<i32>>, coloring: Coloring) -> Result<Self> {
        let n = cartan.len();
        check_len(n)?;
        if coloring.len() != n || cartan.iter().any(|r| r.len() != n) {
            return Err(Error::Argument("pairing matrix and coloring sizes disagree".into()));
        }
        for i in 0..n {
            for k in 0..n {
                if (cartan[i][k] == 0) != (cartan[k][i] == 0) {
                    return Err(Error::Argument(format!(
                        "pairing pattern not symmetric at ({}, {})",
                        i + 1,
                        k + 1
                    )));
                }
            }
        }
        let blocks = contiguous_blocks(&cartan);
        Ok(Self::assemble(cartan, coloring, blocks))
    }

    fn assemble(cartan: Vec<Vec<i32>>, coloring: Coloring, blocks: Vec<Block>) -> Self {
        let n = cartan.len();
        let masks = (0..n)
            .map(|i| {
                (0..n)
                    .filter(|&k| k != i && cartan[i][k] % 2 != 0)
                    .fold(0u64, |m, k| m | (1u64 << k))
            })
            .collect();
        PuzzleInstance {
            cartan,
            coloring,
            masks,
            blocks,
        }
    }

    pub fn len(&self) -> usize {
        self.cartan.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cartan.is_empty()
    }

    pub fn cartan(&self) -> &[Vec<i32>] {
        &self.cartan
    }

    pub fn coloring(&self) -> &Coloring {
        &self.coloring
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    /// Counted neighbors of `i` as 0-based vertex indices.
    pub fn counted_neighbors(&self, i: usize) -> Vec<usize> {
        let n = self.len();
        (0..n)
            .filter(|&k| self.masks[i] & (1u64 << k) != 0)
            .collect()
    }

    pub fn apply_move(&self, a: &Labeling, i: usize) -> Labeling {
        assert_eq!(a.len(), self.len(), "labeling length mismatch");
        let flip = ((a.bits & self.masks[i]).count_ones() & 1 == 1) ^ self.coloring.is_black(i);
        if flip {
            Labeling {
                len: a.len,
                bits: a.bits ^ (1u64 << i),
            }
        } else {
            *a
        }
    }

    pub fn is_fixed(&self, a: &Labeling) -> bool {
        (0..self.len()).all(|i| self.apply_move(a, i) == *a)
    }

    /// Every labeling reachable from `a`, sorted.
    pub fn orbit_of(&self, a: &Labeling, cap: usize) -> Result<Vec<Labeling>> {
        check_cap(self.len(), cap)?;
        let mut seen = std::collections::HashSet::new();
        let mut queue = VecDeque::from([*a]);
        seen.insert(*a);
        while let Some(x) = queue.pop_front() {
            for i in 0..self.len() {
                let y = self.apply_move(&x, i);
                if seen.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        let mut out: Vec<Labeling> = seen.into_iter().collect();
        out.sort();
        Ok(out)
    }

    /// Support components of `a`, counting one boxed 1 on every black vertex
    /// when `with_boxes` is set.
    pub fn component_count(&self, a: &Labeling, with_boxes: bool) -> usize {
        let boxes = if with_boxes { self.coloring.black() } else { Vec::new() };
        support_components(self.len(), |i, k| self.cartan[i][k] != 0, &a.to_bools(), &boxes)
    }

    pub fn enumerate_orbits(&self) -> Result<OrbitDecomposition> {
        self.enumerate_orbits_with_cap(DEFAULT_CAP)
    }

    /// Partitions all labelings into classes. Each block is solved on its own
    /// and the results are combined as a product.
    pub fn enumerate_orbits_with_cap(&self, cap: usize) -> Result<OrbitDecomposition> {
        if self.blocks.is_empty() {
            return Ok(OrbitDecomposition {
                len: 0,
                factors: Vec::new(),
            });
        }
        let mut decomps = Vec::with_capacity(self.blocks.len());
        for b in &self.blocks {
            check_cap(b.len, cap)?;
            decomps.push(self.enumerate_block(b));
        }
        Ok(product_decomposition(&decomps))
    }

    fn enumerate_block(&self, b: &Block) -> OrbitDecomposition {
        let len = b.len;
        let local: Vec<(u64, bool)> = (0..len)
            .map(|i| {
                let g = b.start + i;
                let m = (0..len)
                    .filter(|&k| k != i && self.cartan[g][b.start + k] % 2 != 0)
                    .fold(0u64, |m, k| m | (1u64 << k));
                (m, self.coloring.is_black(g))
            })
            .collect();
        let total = 1usize << len;
        let mut class_of = vec![u32::MAX; total];
        let mut reps = Vec::new();
        let mut sizes = Vec::new();
        let mut stack = Vec::new();
        for start in 0..total {
            if class_of[start] != u32::MAX {
                continue;
            }
            let id = reps.len() as u32;
            reps.push(start as u64);
            class_of[start] = id;
            stack.push(start as u64);
            let mut size = 0u64;
            while let Some(x) = stack.pop() {
                size += 1;
                for (i, &(mask, twist)) in local.iter().enumerate() {
                    if ((x & mask).count_ones() & 1 == 1) ^ twist {
                        let y = x ^ (1u64 << i);
                        if class_of[y as usize] == u32::MAX {
                            class_of[y as usize] = id;
                            stack.push(y);
                        }
                    }
                }
            }
            sizes.push(size);
        }
        OrbitDecomposition {
            len,
            factors: vec![Factor {
                offset: 0,
                len,
                class_of,
                reps,
                sizes,
            }],
        }
    }
}

fn check_len(n: usize) -> Result<()> {
    if n > MAX_RANK {
        return Err(Error::Argument(format!("board has {n} vertices, at most {MAX_RANK} supported")));
    }
    Ok(())
}

fn check_cap(n: usize, cap: usize) -> Result<()> {
    if n > cap {
        return Err(Error::CapExceeded { vertices: n, cap });
    }
    Ok(())
}

/// Splits the board into contiguous ranges closed under adjacency. Falls
/// back to a single block when components interleave.
fn contiguous_blocks(cartan: &[Vec<i32>]) -> Vec<Block> {
    let n = cartan.len();
    let mut blocks = Vec::new();
    let mut start = 0;
    while start < n {
        // Grow the range until no vertex inside touches a vertex beyond it.
        let mut end = start + 1;
        let mut i = start;
        while i < end {
            for k in end..n {
                if cartan[i][k] != 0 {
                    end = k + 1;
                }
            }
            i += 1;
        }
        blocks.push(Block {
            start,
            len: end - start,
            dtype: None,
        });
        start = end;
    }
    blocks
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Factor {
    offset: usize,
    len: usize,
    class_of: Vec<u32>,
    reps: Vec<u64>,
    sizes: Vec<u64>,
}

/// Partition of all labelings of a board into move classes. Internally a
/// product of per-block tables; class ids run in mixed radix with the last
/// block most significant, which keeps ids sorted by representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitDecomposition {
    len: usize,
    factors: Vec<Factor>,
}

impl OrbitDecomposition {
    /// Length of the labelings being classified.
    pub fn labeling_len(&self) -> usize {
        self.len
    }

    pub fn num_classes(&self) -> usize {
        self.factors.iter().map(|f| f.reps.len()).product()
    }

    fn split(&self, mut id: usize) -> Vec<usize> {
        let mut parts = vec![0; self.factors.len()];
        for (j, f) in self.factors.iter().enumerate() {
            parts[j] = id % f.reps.len();
            id /= f.reps.len();
        }
        parts
    }

    fn join(&self, parts: impl Iterator<Item = usize>) -> usize {
        let parts: Vec<usize> = parts.collect();
        self.factors
            .iter()
            .zip(parts)
            .rev()
            .fold(0, |acc, (f, p)| acc * f.reps.len() + p)
    }

    pub fn class_of(&self, a: &Labeling) -> usize {
        assert_eq!(a.len(), self.len, "labeling length mismatch");
        self.join(
            self.factors
                .iter()
                .map(|f| f.class_of[a.slice(f.offset, f.len).packed() as usize] as usize),
        )
    }

    pub fn same_class(&self, a: &Labeling, b: &Labeling) -> bool {
        self.class_of(a) == self.class_of(b)
    }

    /// Lex-min member of class `id`.
    pub fn rep(&self, id: usize) -> Labeling {
        self.split(id)
            .into_iter()
            .zip(&self.factors)
            .fold(Labeling::zero(0), |acc, (p, f)| {
                acc.concat(&Labeling::from_packed(f.len, f.reps[p]))
            })
    }

    pub fn reps(&self) -> Vec<Labeling> {
        (0..self.num_classes()).map(|id| self.rep(id)).collect()
    }

    pub fn size(&self, id: usize) -> u64 {
        self.split(id)
            .into_iter()
            .zip(&self.factors)
            .map(|(p, f)| f.sizes[p])
            .product()
    }

    pub fn sizes(&self) -> Vec<u64> {
        (0..self.num_classes()).map(|id| self.size(id)).collect()
    }

    pub fn zero_class(&self) -> usize {
        self.join(self.factors.iter().map(|f| f.class_of[0] as usize))
    }

    pub fn in_zero_class(&self, a: &Labeling) -> bool {
        self.class_of(a) == self.zero_class()
    }

    /// All members of class `id`, sorted.
    pub fn members(&self, id: usize) -> Vec<Labeling> {
        let mut out = vec![Labeling::zero(0)];
        for (p, f) in self.split(id).into_iter().zip(&self.factors) {
            let part: Vec<Labeling> = (0..f.class_of.len())
                .filter(|&x| f.class_of[x] as usize == p)
                .map(|x| Labeling::from_packed(f.len, x as u64))
                .collect();
            out = out
                .iter()
                .flat_map(|a| part.iter().map(move |b| a.concat(b)))
                .collect();
        }
        out
    }

    pub fn zero_class_members(&self) -> Vec<Labeling> {
        self.members(self.zero_class())
    }
}

/// Product of decompositions of consecutive blocks.
pub fn product_decomposition(decomps: &[OrbitDecomposition]) -> OrbitDecomposition {
    let mut factors = Vec::new();
    let mut offset = 0;
    for d in decomps {
        for f in &d.factors {
            let mut g = f.clone();
            g.offset += offset;
            factors.push(g);
        }
        offset += d.len;
    }
    assert!(offset <= MAX_RANK);
    OrbitDecomposition {
        len: offset,
        factors,
    }
}

/// Support components on a diagram, with an optional boxed 1 at `boxed`.
pub fn component_count(d: &DynkinDiagram, a: &Labeling, boxed: Option<usize>) -> usize {
    d.component_count(&a.to_bools(), boxed)
}

/// `r` ones at positions 1, 3, …, 2r−1 of a path with `n` vertices.
pub fn xi(n: usize, r: usize) -> Result<Labeling> {
    if r > n.div_ceil(2) || n > MAX_RANK {
        return Err(Error::Argument(format!("xi: r = {r} out of range for n = {n}")));
    }
    Ok(Labeling::from_support(n, &(0..r).map(|j| 2 * j).collect::<Vec<_>>()))
}

/// `r` ones at positions n, n−2, …, n−2(r−1).
pub fn eta(n: usize, r: usize) -> Result<Labeling> {
    if r > n.div_ceil(2) || n > MAX_RANK {
        return Err(Error::Argument(format!("eta: r = {r} out of range for n = {n}")));
    }
    Ok(Labeling::from_support(n, &(0..r).map(|j| n - 1 - 2 * j).collect::<Vec<_>>()))
}

/// `η_p` on vertices `1..m−1`, a 0 at `m`, and `ξ_q` on `m+1..n`.
pub fn pq(m: usize, n: usize, p: usize, q: usize) -> Result<Labeling> {
    if m == 0 || m > n {
        return Err(Error::Argument(format!("pq: twist vertex {m} outside 1..={n}")));
    }
    let left = eta(m - 1, p)?;
    let right = xi(n - m, q)?;
    Ok(left.concat(&Labeling::zero(1)).concat(&right))
}

/// `(l, r)` for a path labeling twisted at the 1-based vertex `m`: the
/// numbers of support components strictly left and right of `m`, ignoring
/// the component that contains `m` itself.
pub fn lr(a: &Labeling, m: usize) -> (usize, usize) {
    let n = a.len();
    assert!(m >= 1 && m <= n);
    let bits = a.to_bools();
    let count = |range: Vec<usize>| -> usize {
        let mut comps = 0;
        let mut prev_on = bits[m - 1]; // touching m counts as already inside the box component
        for i in range {
            if bits[i] && !prev_on {
                comps += 1;
            }
            prev_on = bits[i];
        }
        comps
    };
    let l = count((0..m - 1).rev().collect());
    let r = count((m..n).collect());
    (l, r)
}

/// The orbit invariant `r − l` on a path twisted at `m`.
pub fn r_minus_l(a: &Labeling, m: usize) -> i64 {
    let (l, r) = lr(a, m);
    r as i64 - l as i64
}

/// Orbit invariant on `D_n` twisted at `m ≤ n−2`:
/// `((κ+λ) mod 2)(1 − a_{n−2}) + r(a) − l(a)` with `a` the restriction to the
/// long arm and `κ, λ` the two leaves.
pub fn delta(d: &Labeling, m: usize) -> i64 {
    let n = d.len();
    assert!(n >= 4 && m >= 1 && m <= n - 2);
    let a = d.slice(0, n - 2);
    let leaves = (d.get(n - 2) as i64 + d.get(n - 1) as i64) % 2;
    leaves * (1 - a.get(n - 3) as i64) + r_minus_l(&a, m)
}
