//! Real forms: Kac diagrams, twisting diagrams, the outer-form reduction to
//! the fixed subdiagram `D^τ`, a catalog of named forms, and closed-form
//! orbit counts used as oracles.
//!
//! Canonical labels:
//!
//! * `X_n^(m)` — inner form twisted at vertex `m` (`m = 0` is compact),
//!   e.g. `E7^(7)`. Several black vertices are written `A5^(2,5)`.
//! * `X_n^tau` — outer form with white `D^τ`, e.g. `E6^tau`.
//! * `X_n^tau(m)` — outer form with vertex `m` of `D^τ` black, e.g. `D6^tau(2)`.

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use crate::dynkin::{
    build_diagram, extend, DiagramAutomorphism, DynkinDiagram, DynkinType, ExtendedDiagram, Series,
};
use crate::error::{Error, Result};
use crate::puzzle::{Coloring, Labeling, OrbitDecomposition, PuzzleInstance, DEFAULT_CAP};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum KacKind {
    /// One black vertex `i ≠ 0`, of mark 2.
    TypeI,
    /// Black vertices `0` and `i`, both of mark 1.
    TypeII,
}

/// Extended diagram with a black/white pattern `ν_0..ν_n`.
#[derive(Clone, Debug)]
pub struct KacDiagram {
    pub ext: ExtendedDiagram,
    pub nu: Vec<u8>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KacCheck {
    pub valid: bool,
    pub weighted_sum: u64,
    pub kind: Option<KacKind>,
    pub message: String,
}

impl KacDiagram {
    pub fn new(dtype: DynkinType, black: &[usize]) -> Self {
        let ext = extend(&build_diagram(dtype));
        let mut nu = vec![0; dtype.rank() + 1];
        for &b in black {
            nu[b] = 1;
        }
        KacDiagram { ext, nu }
    }

    pub fn black(&self) -> Vec<usize> {
        (0..self.nu.len()).filter(|&j| self.nu[j] != 0).collect()
    }
}

pub fn validate_kac(kd: &KacDiagram) -> KacCheck {
    let marks = kd.ext.marks();
    if kd.nu.len() != marks.len() {
        return KacCheck {
            valid: false,
            weighted_sum: 0,
            kind: None,
            message: format!("expected {} entries, got {}", marks.len(), kd.nu.len()),
        };
    }
    if kd.nu.iter().any(|&v| v > 1) {
        return KacCheck {
            valid: false,
            weighted_sum: 0,
            kind: None,
            message: "entries must be 0 or 1".into(),
        };
    }
    let sum: u64 = kd.nu.iter().zip(marks).map(|(&v, &m)| v as u64 * m).sum();
    let black = kd.black();
    let kind = match black.as_slice() {
        [i] if *i != 0 => Some(KacKind::TypeI),
        [0, i] if *i != 0 => Some(KacKind::TypeII),
        _ => None,
    };
    let valid = sum == 2 && kind.is_some();
    let message = if valid {
        "ok".to_string()
    } else if sum != 2 {
        format!("weighted sum of black vertices is {sum}, not 2")
    } else {
        format!("black vertices {black:?} are neither {{i}} nor {{0, i}}")
    };
    KacCheck {
        valid,
        weighted_sum: sum,
        kind: if valid { kind } else { None },
        message,
    }
}

/// Drops vertex 0: the coloring is `t_j = ν_j` for `j = 1..n`.
pub fn kac_to_twisting(kd: &KacDiagram) -> Result<(DynkinDiagram, Coloring)> {
    let check = validate_kac(kd);
    if !check.valid {
        return Err(Error::InvalidKac(check.message));
    }
    let bits = kd.nu[1..].iter().map(|&v| v == 1).collect();
    Ok((kd.ext.base().clone(), Coloring::from_bools(bits)))
}

/// A twisted form: diagram, involution `τ`, and coloring.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RealFormSpec {
    #[serde(rename = "type")]
    pub dtype: DynkinType,
    pub tau: DiagramAutomorphism,
    pub coloring: Coloring,
    pub display_name: Option<String>,
    /// Kac pattern `ν_0..ν_n`, when the catalog knows one.
    pub kac: Option<Vec<u8>>,
}

impl RealFormSpec {
    /// Inner form with the given 1-based black vertices.
    pub fn inner(dtype: DynkinType, black: &[usize]) -> Result<Self> {
        let n = dtype.rank();
        let idx: Vec<usize> = black
            .iter()
            .map(|&b| {
                if b == 0 || b > n {
                    Err(Error::InvalidSpec(format!("vertex {b} outside 1..={n} of {dtype}")))
                } else {
                    Ok(b - 1)
                }
            })
            .collect::<Result<_>>()?;
        Ok(RealFormSpec {
            dtype,
            tau: DiagramAutomorphism::identity(n),
            coloring: Coloring::with_black(n, &idx)?,
            display_name: None,
            kac: None,
        })
    }

    /// Outer form: the standard nontrivial involution of `dtype`, with an
    /// optional black vertex (1-based) on `D^τ`.
    pub fn outer(dtype: DynkinType, black: Option<usize>) -> Result<Self> {
        let d = build_diagram(dtype);
        let tau = standard_involution(&d)?;
        let n = dtype.rank();
        let idx: Vec<usize> = black.into_iter().map(|b| b.wrapping_sub(1)).collect();
        if idx.iter().any(|&i| i >= n || tau.apply(i) != i) {
            return Err(Error::InvalidSpec(format!(
                "black vertex {:?} is not fixed by the involution of {dtype}",
                black
            )));
        }
        Ok(RealFormSpec {
            dtype,
            tau,
            coloring: Coloring::with_black(n, &idx)?,
            display_name: None,
            kac: None,
        })
    }

    /// Arbitrary triple; validates `τ` and the support of the coloring.
    pub fn from_parts(dtype: DynkinType, tau: Vec<usize>, coloring: Coloring) -> Result<Self> {
        let d = build_diagram(dtype);
        let tau = DiagramAutomorphism::new(&d, tau).map_err(|e| Error::InvalidSpec(e.to_string()))?;
        if coloring.len() != dtype.rank() {
            return Err(Error::InvalidSpec(format!(
                "coloring has {} entries for {dtype}",
                coloring.len()
            )));
        }
        let spec = RealFormSpec {
            dtype,
            tau,
            coloring,
            display_name: None,
            kac: None,
        };
        spec.check_support()?;
        Ok(spec)
    }

    fn named(mut self, name: &str) -> Self {
        self.display_name = Some(name.to_string());
        self
    }

    fn with_kac(mut self, nu: Vec<u8>) -> Self {
        self.kac = Some(nu);
        self
    }

    fn check_support(&self) -> Result<()> {
        if let Some(b) = self.coloring.black().into_iter().find(|&b| self.tau.apply(b) != b) {
            return Err(Error::InvalidSpec(format!(
                "black vertex {} lies outside the fixed subdiagram",
                b + 1
            )));
        }
        Ok(())
    }

    pub fn is_inner(&self) -> bool {
        self.tau.is_identity()
    }

    pub fn diagram(&self) -> DynkinDiagram {
        build_diagram(self.dtype)
    }

    /// 1-based black vertices.
    pub fn black(&self) -> Vec<usize> {
        self.coloring.black().into_iter().map(|b| b + 1).collect()
    }

    pub fn label(&self) -> String {
        let black: Vec<String> = self.black().iter().map(|b| b.to_string()).collect();
        if self.is_inner() {
            if black.is_empty() {
                format!("{}^(0)", self.dtype)
            } else {
                format!("{}^({})", self.dtype, black.join(","))
            }
        } else if black.is_empty() {
            format!("{}^tau", self.dtype)
        } else {
            format!("{}^tau({})", self.dtype, black.join(","))
        }
    }

    pub fn name(&self) -> String {
        self.display_name.clone().unwrap_or_else(|| self.label())
    }
}

impl fmt::Display for RealFormSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// The involution used for outer forms: the nontrivial symmetry of `A_n`,
/// `D_n` (swapping `n−1` and `n`; for `D_4` this choice among three), or `E_6`.
pub fn standard_involution(d: &DynkinDiagram) -> Result<DiagramAutomorphism> {
    let t = d.dtype();
    let n = t.rank();
    let perm: Vec<usize> = match t.series() {
        Series::A if n >= 2 => (0..n).map(|i| n - 1 - i).collect(),
        Series::D => {
            let mut p: Vec<usize> = (0..n).collect();
            p.swap(n - 2, n - 1);
            p
        }
        Series::E if n == 6 => vec![4, 3, 2, 1, 0, 5],
        _ => {
            return Err(Error::InvalidSpec(format!("{t} has no outer forms")));
        }
    };
    DiagramAutomorphism::new(d, perm)
}

/// Inner puzzle on `D^τ` together with the way back to `D`.
#[derive(Clone, Debug)]
pub struct ReducedPuzzle {
    pub instance: PuzzleInstance,
    /// `D^τ` as 0-based vertices of `D`, increasing.
    pub vertices: Vec<usize>,
    pub full_rank: usize,
}

impl ReducedPuzzle {
    /// Zero extension of a `D^τ` labeling to `D`.
    pub fn lift(&self, a: &Labeling) -> Labeling {
        let mut out = Labeling::zero(self.full_rank);
        for (j, &v) in self.vertices.iter().enumerate() {
            out.set(v, a.get(j));
        }
        out
    }

    pub fn restrict(&self, a: &Labeling) -> Labeling {
        a.restrict(&self.vertices)
    }
}

/// Restricts the puzzle to `D^τ`. For inner forms this is the full board.
pub fn reduce_outer(spec: &RealFormSpec) -> Result<ReducedPuzzle> {
    spec.check_support()?;
    let d = spec.diagram();
    let n = d.rank();
    if spec.is_inner() {
        return Ok(ReducedPuzzle {
            instance: PuzzleInstance::new(&d, spec.coloring.clone())?,
            vertices: (0..n).collect(),
            full_rank: n,
        });
    }
    let fixed = spec.tau.fixed_points();
    if fixed.is_empty() {
        return Ok(ReducedPuzzle {
            instance: PuzzleInstance::empty(),
            vertices: fixed,
            full_rank: n,
        });
    }
    let cartan: Vec<Vec<i32>> = fixed
        .iter()
        .map(|&i| fixed.iter().map(|&k| d.pairing(i, k)).collect())
        .collect();
    let coloring = Coloring::from_bools(fixed.iter().map(|&i| spec.coloring.is_black(i)).collect());
    Ok(ReducedPuzzle {
        instance: PuzzleInstance::from_cartan(cartan, coloring)?,
        vertices: fixed,
        full_rank: n,
    })
}

pub fn h1_decomposition(spec: &RealFormSpec, cap: usize) -> Result<(ReducedPuzzle, OrbitDecomposition)> {
    let reduced = reduce_outer(spec)?;
    let decomp = reduced.instance.enumerate_orbits_with_cap(cap)?;
    Ok((reduced, decomp))
}

pub fn h1_cardinality(spec: &RealFormSpec) -> Result<usize> {
    Ok(h1_decomposition(spec, DEFAULT_CAP)?.1.num_classes())
}

/// One `τ`-symmetric labeling of `D` per class: lifts of the canonical
/// representatives on `D^τ`.
pub fn h1_representatives(spec: &RealFormSpec) -> Result<Vec<Labeling>> {
    let (reduced, decomp) = h1_decomposition(spec, DEFAULT_CAP)?;
    Ok(decomp.reps().iter().map(|r| reduced.lift(r)).collect())
}

/// Checks exhaustively that on `τ`-invariant labelings of `D`, the
/// equivalence generated by the moves at fixed vertices, paired moves
/// `M_j M_τ(j)` (`M_j M_τ(j) M_j` for an adjacent pair), and "same restriction to `D^τ`" coincides with equivalence
/// of the restrictions in the reduced puzzle.
pub fn check_restriction_equivalence(spec: &RealFormSpec, cap: usize) -> Result<bool> {
    let (reduced, decomp) = h1_decomposition(spec, cap)?;
    let d = spec.diagram();
    let n = d.rank();
    if n > cap {
        return Err(Error::CapExceeded { vertices: n, cap });
    }
    let full = PuzzleInstance::new(&d, spec.coloring.clone())?;
    let tau = &spec.tau;
    let fixed = tau.fixed_points();
    let pairs: Vec<usize> = (0..n).filter(|&j| tau.apply(j) > j).collect();
    let free: Vec<usize> = fixed.iter().chain(&pairs).copied().collect();

    let invariant = |a: &Labeling| (0..n).all(|i| a.get(i) == a.get(tau.apply(i)));
    let mut members = Vec::with_capacity(1 << free.len());
    for x in 0u64..(1 << free.len()) {
        let mut a = Labeling::zero(n);
        for (b, &v) in free.iter().enumerate() {
            if x >> b & 1 == 1 {
                a.set(v, true);
                a.set(tau.apply(v), true);
            }
        }
        members.push(a);
    }
    let index: HashMap<Labeling, usize> = members.iter().enumerate().map(|(i, a)| (*a, i)).collect();
    let mut parent: Vec<usize> = (0..members.len()).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let union = |p: &mut Vec<usize>, a: usize, b: usize| {
        let (ra, rb) = (find(p, a), find(p, b));
        if ra != rb {
            p[ra.max(rb)] = ra.min(rb);
        }
    };
    for (idx, a) in members.iter().enumerate() {
        let mut images = Vec::new();
        for &i in &fixed {
            images.push(full.apply_move(a, i));
        }
        for &j in &pairs {
            let tj = tau.apply(j);
            let mut b = full.apply_move(&full.apply_move(a, j), tj);
            // adjacent pair (middle of A_2k): the orbit's longest element is s_j s_τj s_j
            if d.cartan()[j][tj] != 0 {
                b = full.apply_move(&b, j);
            }
            images.push(b);
        }
        images.push(reduced.lift(&reduced.restrict(a)));
        for b in images {
            if !invariant(&b) {
                return Ok(false);
            }
            union(&mut parent, idx, index[&b]);
        }
    }
    for x in 0..members.len() {
        for y in x + 1..members.len() {
            let same_here = find(&mut parent, x) == find(&mut parent, y);
            let same_reduced =
                decomp.same_class(&reduced.restrict(&members[x]), &reduced.restrict(&members[y]));
            if same_here != same_reduced {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn ceil_half(x: i64) -> i64 {
    x.div_euclid(2) + x.rem_euclid(2)
}

fn a_count(n: i64, m: i64) -> i64 {
    if m == 0 {
        ceil_half(n) + 1
    } else {
        ceil_half(m - 1) + 1 + ceil_half(n - m)
    }
}

/// Orbit count from the case-by-case formulas, without enumeration.
pub fn closed_form_count(spec: &RealFormSpec) -> Result<usize> {
    let t = spec.dtype;
    let n = t.rank() as i64;
    let black = spec.black();
    let unavailable = || Error::NotAvailable(spec.label());
    if !spec.is_inner() {
        let count = match t.series() {
            Series::A if n % 2 == 0 => 1,
            Series::A => {
                if black.is_empty() {
                    2
                } else {
                    1
                }
            }
            Series::D => match black.as_slice() {
                [] => ceil_half(n - 2) + 1,
                [m] => a_count(n - 2, *m as i64),
                _ => return Err(unavailable()),
            },
            Series::E => 2,
            _ => return Err(unavailable()),
        };
        return Ok(count as usize);
    }
    let count = match (t.series(), black.as_slice()) {
        (Series::A, []) => a_count(n, 0),
        (Series::A, [m]) => a_count(n, *m as i64),
        (Series::A, [m, last]) if *last as i64 == n => {
            let m = *m as i64;
            ceil_half(m - 1) + 1 + ceil_half(n - 1 - m) + (m % 2)
        }
        (Series::B, []) => ceil_half(n - 1) + 2,
        (Series::B, [m]) if (*m as i64) < n => {
            let m = *m as i64;
            a_count(n - 1, m) + (1 - m % 2)
        }
        (Series::B, [_]) => ceil_half(n - 1) + 1 + (1 - n % 2),
        (Series::C, []) => n + 1,
        (Series::C, [m]) if (*m as i64) < n => n + 1,
        (Series::C, [_]) => 1,
        (Series::D, []) => ceil_half(n - 2) + 1 + if n % 2 == 0 { 3 } else { 1 },
        (Series::D, [m]) if (*m as i64) <= n - 2 => {
            let k = n / 2;
            if n % 2 == 1 {
                k + 2
            } else if *m % 2 == 0 {
                k + 3
            } else {
                k
            }
        }
        (Series::D, [_]) => 2,
        (Series::E, _) | (Series::F, _) | (Series::G, _) => {
            return exceptional_count(&spec.label()).ok_or_else(unavailable);
        }
        _ => return Err(unavailable()),
    };
    Ok(count as usize)
}

fn exceptional_count(label: &str) -> Option<usize> {
    Some(match label {
        "E6^(0)" | "E6^(2)" | "E6^(1)" => 3,
        "E7^(0)" | "E7^(2)" => 4,
        "E7^(7)" | "E7^(1)" => 2,
        "E8^(0)" | "E8^(7)" | "E8^(1)" => 3,
        "F4^(0)" | "F4^(4)" | "F4^(1)" => 3,
        "G2^(0)" | "G2^(2)" => 2,
        _ => return None,
    })
}

/// Exceptional noncompact forms: name, type, outer flag, twist vertex, Kac pattern.
type ExceptionalRow = (&'static str, &'static str, bool, Option<usize>, &'static [u8]);

const EXCEPTIONAL: &[ExceptionalRow] = &[
    ("EI", "E6", true, Some(6), &[]),
    ("EII", "E6", false, Some(2), &[0, 0, 1, 0, 0, 0, 0]),
    ("EIII", "E6", false, Some(1), &[1, 1, 0, 0, 0, 0, 0]),
    ("EIV", "E6", true, None, &[]),
    ("EV", "E7", false, Some(7), &[0, 0, 0, 0, 0, 0, 0, 1]),
    ("EVI", "E7", false, Some(2), &[0, 0, 1, 0, 0, 0, 0, 0]),
    ("EVII", "E7", false, Some(1), &[1, 1, 0, 0, 0, 0, 0, 0]),
    ("EVIII", "E8", false, Some(7), &[0, 0, 0, 0, 0, 0, 0, 1, 0]),
    ("EIX", "E8", false, Some(1), &[0, 1, 0, 0, 0, 0, 0, 0, 0]),
    ("FI", "F4", false, Some(4), &[0, 0, 0, 0, 1]),
    ("FII", "F4", false, Some(1), &[0, 1, 0, 0, 0]),
    ("G2split", "G2", false, Some(2), &[0, 0, 1]),
];

/// Kac pattern of an inner form twisted at `m`: type II when `m` has mark 1,
/// type I otherwise.
fn classical_kac(dtype: DynkinType, m: usize) -> Vec<u8> {
    let ext = extend(&build_diagram(dtype));
    let mut nu = vec![0; dtype.rank() + 1];
    nu[m] = 1;
    if ext.marks()[m] == 1 {
        nu[0] = 1;
    }
    nu
}

fn inner_named(dtype: DynkinType, m: usize, name: &str) -> Result<RealFormSpec> {
    if m == 0 {
        return Ok(RealFormSpec::inner(dtype, &[])?.named(name));
    }
    Ok(RealFormSpec::inner(dtype, &[m])?
        .named(name)
        .with_kac(classical_kac(dtype, m)))
}

fn ty(series: Series, rank: usize, name: &str) -> Result<DynkinType> {
    DynkinType::new(series, rank).map_err(|_| {
        Error::Catalog(format!(
            "{name}: rank {rank} is below the supported range for type {series:?}"
        ))
    })
}

fn parse_args(name: &str, inner: &str) -> Result<Vec<usize>> {
    inner
        .split(',')
        .map(|s| {
            s.trim()
                .parse::<usize>()
                .map_err(|_| Error::Catalog(format!("bad parameter {s:?} in {name}")))
        })
        .collect()
}

/// Parses `Head(args)` into the head and the raw argument text.
fn split_call(name: &str) -> Option<(&str, &str)> {
    let open = name.find('(')?;
    let inner = name[open + 1..].strip_suffix(')')?;
    Some((&name[..open], inner))
}

/// Looks up a real form by name. Accepted forms: `SU(n)`, `SU(p,q)`,
/// `SL(n,R)`, `SL(n,H)`, `Spin(n)`, `Spin(p,q)`, `SpinStar(2n)` / `Spin*(2n)`,
/// `Sp(n)`, `Sp(p,q)`, `SpR(2n)` / `Sp(2n,R)`, `EI`…`EIX`, `FI`, `FII`,
/// `G2compact`, `G2split`, a bare type such as `E8` (compact form), or a
/// canonical label such as `D6^(2)` or `D6^tau(2)`.
pub fn named_form(name: &str) -> Result<RealFormSpec> {
    let name = name.trim();
    let err = |msg: &str| Error::Catalog(format!("{name}: {msg}"));
    if let Some(&(n, t, outer, twist, nu)) = EXCEPTIONAL.iter().find(|r| r.0 == name) {
        let dtype: DynkinType = t.parse()?;
        let spec = if outer {
            RealFormSpec::outer(dtype, twist)?
        } else {
            RealFormSpec::inner(dtype, &twist.into_iter().collect::<Vec<_>>())?.with_kac(nu.to_vec())
        };
        return Ok(spec.named(n));
    }
    if name == "G2compact" {
        return Ok(RealFormSpec::inner("G2".parse()?, &[])?.named(name));
    }
    if name.contains('^') {
        return parse_label(name);
    }
    if let Ok(t) = name.parse::<DynkinType>() {
        return Ok(RealFormSpec::inner(t, &[])?.named(name));
    }
    let (head, inner) = split_call(name).ok_or_else(|| err("unknown form"))?;
    let upper_inner = inner.replace(' ', "").to_ascii_uppercase();
    match head {
        "SL" => {
            let (num, field) = upper_inner
                .split_once(',')
                .ok_or_else(|| err("expected SL(n,R) or SL(n,H)"))?;
            let k: usize = num.parse().map_err(|_| err("bad size"))?;
            match field {
                "R" => {
                    if k < 2 {
                        return Err(err("need n >= 2"));
                    }
                    if k == 2 {
                        return inner_named(ty(Series::A, 1, name)?, 1, name);
                    }
                    let rank = k - 1;
                    let t = ty(Series::A, rank, name)?;
                    let black = if rank % 2 == 1 { Some(rank / 2 + 1) } else { None };
                    Ok(RealFormSpec::outer(t, black)?.named(name))
                }
                "H" => {
                    if k == 0 {
                        return Err(err("need n >= 1"));
                    }
                    if k == 1 {
                        return Ok(RealFormSpec::inner(ty(Series::A, 1, name)?, &[])?.named(name));
                    }
                    Ok(RealFormSpec::outer(ty(Series::A, 2 * k - 1, name)?, None)?.named(name))
                }
                _ => Err(err("field must be R or H")),
            }
        }
        "Sp" if upper_inner.ends_with(",R") => {
            let size: usize = upper_inner
                .trim_end_matches(",R")
                .parse()
                .map_err(|_| err("bad size"))?;
            symplectic_real(name, size)
        }
        "SpR" => {
            let size: usize = upper_inner.parse().map_err(|_| err("bad size"))?;
            symplectic_real(name, size)
        }
        "SU" | "Sp" | "Spin" | "SpinStar" | "Spin*" => {
            let args = parse_args(name, inner)?;
            match (head, args.as_slice()) {
                ("SU", [k]) => inner_named(ty(Series::A, k.saturating_sub(1), name)?, 0, name),
                ("SU", [p, q]) => inner_named(ty(Series::A, (p + q).saturating_sub(1), name)?, *p.min(q), name),
                ("Sp", [k]) => inner_named(ty(Series::C, *k, name)?, 0, name),
                ("Sp", [p, q]) => inner_named(ty(Series::C, p + q, name)?, *p.min(q), name),
                ("Spin", [k]) => spin(name, *k, 0),
                ("Spin", [p, q]) => spin(name, *p, *q),
                ("SpinStar" | "Spin*", [k]) => {
                    if k % 2 != 0 {
                        return Err(err("argument must be even"));
                    }
                    inner_named(ty(Series::D, k / 2, name)?, k / 2, name)
                }
                _ => Err(err("wrong number of parameters")),
            }
        }
        _ => Err(err("unknown form")),
    }
}

fn symplectic_real(name: &str, size: usize) -> Result<RealFormSpec> {
    if size % 2 != 0 {
        return Err(Error::Catalog(format!("{name}: size must be even")));
    }
    inner_named(ty(Series::C, size / 2, name)?, size / 2, name)
}

fn spin(name: &str, p: usize, q: usize) -> Result<RealFormSpec> {
    let total = p + q;
    if total % 2 == 1 {
        let n = (total - 1) / 2;
        let t = ty(Series::B, n, name)?;
        let even = if p % 2 == 0 { p } else { q };
        return inner_named(t, even / 2, name);
    }
    let n = total / 2;
    let t = ty(Series::D, n, name)?;
    if p % 2 == 0 {
        let m = (p / 2).min(q / 2);
        return inner_named(t, m, name);
    }
    // Spin(2m+1, 2(n-m)-1): outer, Kac vertex m on the long arm.
    let mut m = (p - 1) / 2;
    if m > n - 2 {
        m = (q - 1) / 2;
    }
    let black = if m == 0 { None } else { Some(m) };
    Ok(RealFormSpec::outer(t, black)?.named(name))
}

fn parse_label(label: &str) -> Result<RealFormSpec> {
    let err = || Error::Catalog(format!("{label}: bad label, expected X_n^(m) or X_n^tau(m)"));
    let (t, rest) = label.split_once('^').ok_or_else(err)?;
    let dtype: DynkinType = t.parse()?;
    let spec = if let Some(rest) = rest.strip_prefix("tau") {
        let black = if rest.is_empty() {
            None
        } else {
            let inner = rest.strip_prefix('(').and_then(|r| r.strip_suffix(')')).ok_or_else(err)?;
            Some(inner.trim().parse::<usize>().map_err(|_| err())?)
        };
        RealFormSpec::outer(dtype, black)?
    } else {
        let inner = rest.strip_prefix('(').and_then(|r| r.strip_suffix(')')).ok_or_else(err)?;
        let black: Vec<usize> = parse_args(label, inner)?.into_iter().filter(|&b| b != 0).collect();
        let mut spec = RealFormSpec::inner(dtype, &black)?;
        if let [m] = black.as_slice() {
            spec = spec.with_kac(classical_kac(dtype, *m));
        }
        spec
    };
    Ok(spec)
}

/// Names of the exceptional real forms, in table order.
pub fn exceptional_names() -> impl Iterator<Item = &'static str> {
    EXCEPTIONAL.iter().map(|row| row.0)
}

/// Named forms over classical ranks `≤ max_rank`, then the exceptional list.
pub fn catalog(max_rank: usize) -> Vec<RealFormSpec> {
    let mut out = Vec::new();
    let mut push = |name: String| {
        if let Ok(s) = named_form(&name) {
            out.push(s);
        }
    };
    for n in 1..=max_rank {
        push(format!("SU({})", n + 1));
        for m in 1..=n.div_ceil(2) {
            push(format!("SU({},{})", m, n + 1 - m));
        }
    }
    for size in 3..=max_rank + 1 {
        push(format!("SL({size},R)"));
    }
    for k in 2..=(max_rank + 1) / 2 {
        push(format!("SL({k},H)"));
    }
    for n in 2..=max_rank {
        push(format!("Spin({})", 2 * n + 1));
        for m in 1..n {
            push(format!("Spin({},{})", 2 * m, 2 * n + 1 - 2 * m));
        }
        push(format!("Spin({},1)", 2 * n));
    }
    for n in 3..=max_rank {
        push(format!("Sp({n})"));
        for m in 1..=n / 2 {
            push(format!("Sp({},{})", m, n - m));
        }
        push(format!("SpR({})", 2 * n));
    }
    for n in 4..=max_rank {
        push(format!("Spin({})", 2 * n));
        for m in 1..=n / 2 {
            push(format!("Spin({},{})", 2 * m, 2 * n - 2 * m));
        }
        push(format!("SpinStar({})", 2 * n));
        for m in 0..=(n - 1) / 2 {
            push(format!("Spin({},{})", 2 * m + 1, 2 * (n - m) - 1));
        }
    }
    for t in ["E6", "E7", "E8", "F4"] {
        push(t.to_string());
    }
    push("G2compact".to_string());
    for row in EXCEPTIONAL {
        push(row.0.to_string());
    }
    out
}
