//! Coroot-lattice arithmetic for subgroups generated by subsets of the
//! extended diagram: coroot matrices, Smith normal form, `π_1` orders, and
//! the mod-2 maps between labelings.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::dynkin::{build_diagram, extend, subdiagram, DynkinDiagram, DynkinType};
use crate::error::{Error, Result};
use crate::forms::RealFormSpec;
use crate::puzzle::{Coloring, Labeling};

/// Dense integer matrix with exact entries.
#[derive(Clone, PartialEq, Eq)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<BigInt>>,
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntegerMatrix {
            rows,
            cols,
            data: vec![vec![BigInt::zero(); cols]; rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i][i] = BigInt::one();
        }
        m
    }

    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Argument("ragged matrix".into()));
        }
        Ok(IntegerMatrix {
            rows: rows.len(),
            cols,
            data: rows
                .iter()
                .map(|r| r.iter().cloned().map(Into::into).collect())
                .collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i][j] = v;
    }

    pub fn mul(&self, other: &IntegerMatrix) -> IntegerMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self.data[i][k].is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i][j] += &self.data[i][k] * &other.data[k][j];
                }
            }
        }
        out
    }

    /// Entries reduced mod 2.
    pub fn mod2(&self) -> Vec<Vec<u8>> {
        self.data
            .iter()
            .map(|r| r.iter().map(|v| v.mod_floor(&BigInt::from(2)).to_u8().unwrap()).collect())
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        self.data.swap(a, b);
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        for r in &mut self.data {
            r.swap(a, b);
        }
    }

    /// row[dst] += f · row[src]
    fn add_row(&mut self, dst: usize, src: usize, f: &BigInt) {
        for j in 0..self.cols {
            let d = &self.data[src][j] * f;
            self.data[dst][j] += d;
        }
    }

    /// col[dst] += f · col[src]
    fn add_col(&mut self, dst: usize, src: usize, f: &BigInt) {
        for r in &mut self.data {
            let d = &r[src] * f;
            r[dst] += d;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for v in &mut self.data[i] {
            *v = -&*v;
        }
    }
}

impl fmt::Debug for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries(self.data.iter().map(|r| r.iter().map(|v| v.to_string()).collect::<Vec<_>>()))
            .finish()
    }
}

impl Serialize for IntegerMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> = self
            .data
            .iter()
            .map(|r| r.iter().map(|v| v.to_string()).collect())
            .collect();
        rows.serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntegerMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows: Vec<Vec<String>> = Vec::deserialize(d)?;
        let parsed: Vec<Vec<BigInt>> = rows
            .iter()
            .map(|r| r.iter().map(|s| s.parse::<BigInt>().map_err(D::Error::custom)).collect())
            .collect::<std::result::Result<_, _>>()?;
        IntegerMatrix::from_rows(&parsed).map_err(D::Error::custom)
    }
}

/// `U · M · V = D` with `U`, `V` unimodular and `D` diagonal, each diagonal
/// entry dividing the next.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub diagonal: Vec<BigInt>,
    pub u: IntegerMatrix,
    pub v: IntegerMatrix,
}

impl SmithForm {
    pub fn diagonal_matrix(&self) -> IntegerMatrix {
        let mut d = IntegerMatrix::zeros(self.u.rows(), self.v.cols());
        for (i, x) in self.diagonal.iter().enumerate() {
            d.set(i, i, x.clone());
        }
        d
    }
}

pub fn smith_normal_form(m: &IntegerMatrix) -> Vec<BigInt> {
    smith_with_transforms(m).diagonal
}

/// Smith normal form, pivoting on the smallest nonzero entry.
pub fn smith_with_transforms(m: &IntegerMatrix) -> SmithForm {
    let (rows, cols) = (m.rows, m.cols);
    let mut a = m.clone();
    let mut u = IntegerMatrix::identity(rows);
    let mut v = IntegerMatrix::identity(cols);
    let steps = rows.min(cols);
    for t in 0..steps {
        loop {
            // Smallest nonzero entry in the trailing block.
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if !a.data[i][j].is_zero()
                        && best.map_or(true, |(bi, bj)| a.data[i][j].abs() < a.data[bi][bj].abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else { break };
            a.swap_rows(t, pi);
            u.swap_rows(t, pi);
            a.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let mut clean = true;
            for i in t + 1..rows {
                if a.data[i][t].is_zero() {
                    continue;
                }
                let q = -a.data[i][t].div_floor(&a.data[t][t]);
                a.add_row(i, t, &q);
                u.add_row(i, t, &q);
                clean &= a.data[i][t].is_zero();
            }
            for j in t + 1..cols {
                if a.data[t][j].is_zero() {
                    continue;
                }
                let q = -a.data[t][j].div_floor(&a.data[t][t]);
                a.add_col(j, t, &q);
                v.add_col(j, t, &q);
                clean &= a.data[t][j].is_zero();
            }
            if !clean {
                continue;
            }
            // Pivot must divide the rest of the block.
            let bad = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !a.data[i][j].is_multiple_of(&a.data[t][t]));
            match bad {
                Some((i, _)) => {
                    let one = BigInt::one();
                    a.add_row(t, i, &one);
                    u.add_row(t, i, &one);
                }
                None => break,
            }
        }
        if a.data[t][t].is_negative() {
            a.negate_row(t);
            u.negate_row(t);
        }
    }
    let diagonal = (0..steps).map(|i| a.data[i][i].clone()).collect();
    SmithForm { diagonal, u, v }
}

/// Fraction-free (Bareiss) determinant of a square matrix.
pub fn determinant(m: &IntegerMatrix) -> BigInt {
    assert_eq!(m.rows, m.cols, "determinant of a non-square matrix");
    let n = m.rows;
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.data.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = num / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Columns `α_j^∨` for `j ∈ keep` (in the given order) in the basis
/// `α_1^∨..α_n^∨`; vertex 0 contributes `−Σ m_k^∨ α_k^∨`.
pub fn coroot_matrix(ambient: DynkinType, keep: &[usize]) -> Result<IntegerMatrix> {
    let ext = extend(&build_diagram(ambient));
    subdiagram(&ext, keep)?;
    Ok(coroot_columns(ambient.rank(), ext.comarks(), keep))
}

fn coroot_columns(n: usize, comarks: &[u64], cols: &[usize]) -> IntegerMatrix {
    let mut m = IntegerMatrix::zeros(n, cols.len());
    for (c, &j) in cols.iter().enumerate() {
        if j == 0 {
            for k in 1..=n {
                m.set(k - 1, c, -BigInt::from(comarks[k]));
            }
        } else {
            m.set(j - 1, c, BigInt::one());
        }
    }
    m
}

/// Product of the nonzero invariant factors: the order of the torsion of the cokernel.
pub fn torsion_order(m: &IntegerMatrix) -> BigInt {
    smith_normal_form(m)
        .into_iter()
        .filter(|d| !d.is_zero())
        .fold(BigInt::one(), |acc, d| acc * d)
}

/// Subgroup generated by the root subgroups of the kept vertices.
#[derive(Clone, Debug, Serialize)]
pub struct SubgroupSpec {
    pub ambient: RealFormSpec,
    /// Extended indices; 0 is the lowest root.
    pub keep: Vec<usize>,
    pub use_extended: bool,
}

impl SubgroupSpec {
    pub fn new(ambient: RealFormSpec, keep: Vec<usize>, use_extended: bool) -> Result<Self> {
        if keep.is_empty() {
            return Err(Error::UnsupportedSubset("no vertices kept".into()));
        }
        if !use_extended && keep.contains(&0) {
            return Err(Error::Argument(
                "vertex 0 is only available with the extended diagram".into(),
            ));
        }
        let ext = extend(&ambient.diagram());
        subdiagram(&ext, &keep)?;
        Ok(SubgroupSpec {
            ambient,
            keep,
            use_extended,
        })
    }

    /// Keeps everything except `removed` (within `Π`, or `{0..n}` when extended).
    pub fn removing(ambient: RealFormSpec, removed: &[usize], use_extended: bool) -> Result<Self> {
        let n = ambient.dtype.rank();
        if let Some(&bad) = removed.iter().find(|&&r| r > n || (r == 0 && !use_extended)) {
            return Err(Error::Argument(format!("cannot remove vertex {bad}")));
        }
        let start = if use_extended { 0 } else { 1 };
        let keep = (start..=n).filter(|v| !removed.contains(v)).collect();
        Self::new(ambient, keep, use_extended)
    }

    /// Components of the subgroup diagram with their extended indices.
    pub fn components(&self) -> Vec<(DynkinDiagram, Vec<usize>)> {
        let ext = extend(&self.ambient.diagram());
        subdiagram(&ext, &self.keep).expect("validated on construction")
    }

    /// Extended indices in subgroup-board order.
    pub fn board_vertices(&self) -> Vec<usize> {
        self.components().into_iter().flat_map(|(_, v)| v).collect()
    }
}

pub fn fundamental_group_order(spec: &SubgroupSpec) -> Result<u64> {
    let m = coroot_matrix(spec.ambient.dtype, &spec.board_vertices())?;
    torsion_order(&m)
        .to_u64()
        .ok_or_else(|| Error::Argument("fundamental group order overflows u64".into()))
}

/// The ℤ/2-linear map from subgroup labelings to ambient labelings.
#[derive(Clone, Debug, Serialize)]
pub struct EmbeddingMap {
    /// `n × |S|`, rows indexed by ambient vertices `1..n`.
    pub matrix_mod2: Vec<Vec<u8>>,
    pub integer_matrix: IntegerMatrix,
    pub pi1_order: u64,
}

impl EmbeddingMap {
    /// Wraps a raw mod-2 matrix (`ambient_len × sub_len`).
    pub fn from_mod2(matrix_mod2: Vec<Vec<u8>>, sub_len: usize) -> Result<Self> {
        if matrix_mod2.iter().any(|r| r.len() != sub_len || r.iter().any(|&x| x > 1)) {
            return Err(Error::Argument("embedding matrix must be 0/1 with one column per sub-vertex".into()));
        }
        let integer_matrix = IntegerMatrix::from_rows(
            &matrix_mod2
                .iter()
                .map(|r| r.iter().map(|&x| x as i64).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
        )?;
        Ok(EmbeddingMap {
            matrix_mod2,
            integer_matrix,
            pi1_order: 1,
        })
    }

    /// Coordinate inclusion of sub-vertices `targets[j]` (0-based ambient vertices).
    pub fn inclusion(ambient_len: usize, targets: &[usize]) -> Result<Self> {
        let mut m = vec![vec![0u8; targets.len()]; ambient_len];
        for (j, &t) in targets.iter().enumerate() {
            if t >= ambient_len {
                return Err(Error::Argument(format!("target vertex {} outside board", t + 1)));
            }
            m[t][j] = 1;
        }
        Self::from_mod2(m, targets.len())
    }

    pub fn source_len(&self) -> usize {
        self.integer_matrix.cols()
    }

    pub fn target_len(&self) -> usize {
        self.matrix_mod2.len()
    }

    pub fn apply(&self, a: &Labeling) -> Result<Labeling> {
        if a.len() != self.source_len() {
            return Err(Error::Argument(format!(
                "labeling of length {} for a map from length {}",
                a.len(),
                self.source_len()
            )));
        }
        let mut out = Labeling::zero(self.target_len());
        for (i, row) in self.matrix_mod2.iter().enumerate() {
            let bit = row
                .iter()
                .enumerate()
                .filter(|&(j, &x)| x == 1 && a.get(j))
                .count()
                % 2;
            out.set(i, bit == 1);
        }
        Ok(out)
    }

    pub fn rank_mod2(&self) -> usize {
        gf2_rank(&self.matrix_mod2)
    }

    pub fn is_injective(&self) -> bool {
        self.rank_mod2() == self.source_len()
    }
}

/// Rank over ℤ/2 of a 0/1 matrix.
pub fn gf2_rank(m: &[Vec<u8>]) -> usize {
    let cols = m.first().map_or(0, |r| r.len());
    assert!(cols <= 64);
    let mut rows: Vec<u64> = m
        .iter()
        .map(|r| r.iter().enumerate().fold(0u64, |acc, (j, &x)| acc | ((x as u64 & 1) << j)))
        .collect();
    let mut rank = 0;
    for c in 0..cols {
        let bit = 1u64 << c;
        if let Some(p) = (rank..rows.len()).find(|&r| rows[r] & bit != 0) {
            rows.swap(rank, p);
            let pivot = rows[rank];
            for (r, row) in rows.iter_mut().enumerate() {
                if r != rank && *row & bit != 0 {
                    *row ^= pivot;
                }
            }
            rank += 1;
        }
    }
    rank
}

pub fn embedding_mod2(spec: &SubgroupSpec) -> Result<EmbeddingMap> {
    let integer_matrix = coroot_matrix(spec.ambient.dtype, &spec.board_vertices())?;
    let pi1_order = torsion_order(&integer_matrix)
        .to_u64()
        .ok_or_else(|| Error::Argument("fundamental group order overflows u64".into()))?;
    Ok(EmbeddingMap {
        matrix_mod2: integer_matrix.mod2(),
        integer_matrix,
        pi1_order,
    })
}

/// Coloring of the subgroup board: ambient bits on kept simple vertices, and
/// `Σ m_j t_j mod 2` on vertex 0.
pub fn induced_coloring(spec: &SubgroupSpec) -> Result<Coloring> {
    if !spec.ambient.is_inner() {
        return Err(Error::OuterAmbient(spec.ambient.name()));
    }
    let ext = extend(&spec.ambient.diagram());
    let t = &spec.ambient.coloring;
    let t0 = (1..=ext.rank())
        .filter(|&j| t.is_black(j - 1))
        .map(|j| ext.marks()[j])
        .sum::<u64>()
        % 2
        == 1;
    Ok(Coloring::from_bools(
        spec.board_vertices()
            .into_iter()
            .map(|v| if v == 0 { t0 } else { t.is_black(v - 1) })
            .collect(),
    ))
}
