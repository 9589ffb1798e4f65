//! Connected components of `(G/H)(ℝ)` for subgroups `H` generated by a
//! subset of the (extended) diagram.
//!
//! Pipeline: build the subgroup board with its induced coloring, take one
//! representative per class (`Ξ`), push each through the mod-2 map `ι`, and
//! keep the ones landing in the ambient class of zero (`Ξ_0`). The answer is
//! `|Ξ_0|`.

use serde::Serialize;

use crate::dynkin::Series;
use crate::error::{Error, Result};
use crate::forms::RealFormSpec;
use crate::lattice::{embedding_mod2, induced_coloring, EmbeddingMap, SubgroupSpec};
use crate::puzzle::{Coloring, Labeling, PuzzleInstance, DEFAULT_CAP};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Pi0Result {
    pub count: usize,
    pub pi1_order: u64,
    pub xi: Vec<Labeling>,
    pub xi0: Vec<Labeling>,
    pub ambient_class_count: usize,
    pub subgroup_class_count: usize,
    /// Components of the subgroup board, e.g. `A2^(0) x A4^(1)`.
    pub subgroup: String,
}

/// Label of a colored board built from blocks of known type.
fn board_label(inst: &PuzzleInstance) -> String {
    if inst.is_empty() {
        return "empty".into();
    }
    inst.blocks()
        .iter()
        .map(|b| {
            let black: Vec<String> = (0..b.len)
                .filter(|&i| inst.coloring().is_black(b.start + i))
                .map(|i| (i + 1).to_string())
                .collect();
            let name = b.dtype.map_or_else(|| format!("?{}", b.len), |t| t.to_string());
            if black.is_empty() {
                format!("{name}^(0)")
            } else {
                format!("{name}^({})", black.join(","))
            }
        })
        .collect::<Vec<_>>()
        .join(" x ")
}

/// The subgroup board (components in order, induced coloring) and `ι`.
pub fn subgroup_puzzle(spec: &SubgroupSpec) -> Result<(PuzzleInstance, EmbeddingMap)> {
    if !spec.ambient.is_inner() {
        return Err(Error::OuterAmbient(spec.ambient.name()));
    }
    let iota = embedding_mod2(spec)?;
    if iota.pi1_order % 2 == 0 {
        return Err(Error::EvenFundamentalGroup(iota.pi1_order));
    }
    let coloring = induced_coloring(spec)?;
    let mut parts = Vec::new();
    let mut offset = 0;
    for (d, _) in spec.components() {
        let k = d.rank();
        let c = Coloring::from_bools(coloring.bits()[offset..offset + k].to_vec());
        parts.push((d, c));
        offset += k;
    }
    Ok((PuzzleInstance::disjoint(&parts)?, iota))
}

pub fn pi0_count(spec: &SubgroupSpec) -> Result<Pi0Result> {
    pi0_count_with_cap(spec, DEFAULT_CAP)
}

pub fn pi0_count_with_cap(spec: &SubgroupSpec, cap: usize) -> Result<Pi0Result> {
    let (sub, iota) = subgroup_puzzle(spec)?;
    let ambient = PuzzleInstance::new(&spec.ambient.diagram(), spec.ambient.coloring.clone())?;
    let mut result = pi0_core(&sub, &iota, &ambient, cap)?;
    result.pi1_order = iota.pi1_order;
    Ok(result)
}

/// Same recipe with a caller-supplied map; no `π_1` check is made.
pub fn pi0_with_custom_embedding(
    sub: &PuzzleInstance,
    iota: &EmbeddingMap,
    ambient: &PuzzleInstance,
) -> Result<Pi0Result> {
    pi0_core(sub, iota, ambient, DEFAULT_CAP)
}

fn pi0_core(
    sub: &PuzzleInstance,
    iota: &EmbeddingMap,
    ambient: &PuzzleInstance,
    cap: usize,
) -> Result<Pi0Result> {
    if iota.source_len() != sub.len() || iota.target_len() != ambient.len() {
        return Err(Error::Argument(format!(
            "map is {}×{}, boards have {} and {} vertices",
            iota.target_len(),
            iota.source_len(),
            ambient.len(),
            sub.len()
        )));
    }
    let sub_orbits = sub.enumerate_orbits_with_cap(cap)?;
    let amb_orbits = ambient.enumerate_orbits_with_cap(cap)?;
    let xi = sub_orbits.reps();
    let mut xi0 = Vec::new();
    for x in &xi {
        if amb_orbits.in_zero_class(&iota.apply(x)?) {
            xi0.push(*x);
        }
    }
    Ok(Pi0Result {
        count: xi0.len(),
        pi1_order: iota.pi1_order,
        xi,
        xi0,
        ambient_class_count: amb_orbits.num_classes(),
        subgroup_class_count: sub_orbits.num_classes(),
        subgroup: board_label(sub),
    })
}

/// Outer `D_N` ambient with `D^τ = A_{N−2}` twisted at `m`, removing vertex
/// `r` of the long arm. Writing `N = m + n + 1` and `k = m + n − r`, the
/// recipe needs `2 ≤ k < n`. Reduces to the inner pair
/// `A_{N−2}^(m) ⊃ A_{N−2}^(m) ∖ {r}`.
pub fn reduced_pi0(ambient: &RealFormSpec, removed: usize) -> Result<Pi0Result> {
    let t = ambient.dtype;
    let black = ambient.black();
    let domain_err = || {
        Error::OuterAmbient(format!(
            "{} (built-in outer recipe covers outer D_N twisted at m >= 1 on the long arm; use a custom embedding otherwise)",
            ambient.name()
        ))
    };
    if ambient.is_inner() || t.series() != Series::D {
        return Err(domain_err());
    }
    let [m] = black.as_slice() else {
        return Err(domain_err());
    };
    let big_n = t.rank();
    let n = big_n - 1 - m;
    if removed == 0 || removed > big_n - 2 {
        return Err(Error::Argument(format!(
            "vertex {removed} is not on the long arm 1..={}",
            big_n - 2
        )));
    }
    let k = (big_n - 1).checked_sub(removed).unwrap_or(0);
    if !(2 <= k && k < n) {
        return Err(Error::Argument(format!(
            "removing vertex {removed} gives k = {k}; the recipe needs 2 <= k < {n}"
        )));
    }
    let arm = big_n - 2;
    let g_prime = RealFormSpec::inner(crate::dynkin::DynkinType::new(Series::A, arm)?, &[*m])?;
    let h_prime = SubgroupSpec::removing(g_prime, &[removed], false)?;
    pi0_count(&h_prime)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::named_form;

    fn remove(form: &str, v: &[usize]) -> Pi0Result {
        let spec = SubgroupSpec::removing(named_form(form).unwrap(), v, false).unwrap();
        pi0_count(&spec).unwrap()
    }

    #[test]
    fn e7_examples() {
        let r = remove("EV", &[3]);
        assert_eq!(r.count, 3);
        assert_eq!(r.subgroup_class_count, 6);
        assert_eq!(r.subgroup, "A2^(0) x A4^(4)");
        assert_eq!(remove("EV", &[2]).count, 2);
        assert_eq!(remove("EV", &[1]).count, 1);
    }

    #[test]
    fn e8_extended() {
        let spec = SubgroupSpec::removing(named_form("EVIII").unwrap(), &[4], true).unwrap();
        let r = pi0_count(&spec).unwrap();
        assert_eq!(r.pi1_order, 5);
        assert_eq!(r.subgroup_class_count, 9);
        assert_eq!(r.subgroup, "A4^(0) x A4^(1)");
        // vertex 0 carries comarks 2,3,4,5,6,4,2,3 → image e2+e4+e8
        let (sub, iota) = subgroup_puzzle(&spec).unwrap();
        let e0 = Labeling::from_support(sub.len(), &[0]);
        assert_eq!(iota.apply(&e0).unwrap().to_string(), "01010001");
        // hand count of ι-images against "odd components with box, minus ℓ'₂"
        assert_eq!(r.count, 4);
    }

    #[test]
    fn whole_group_gives_one() {
        for name in ["EV", "FI", "SU(2,3)", "G2split", "Sp(2,2)"] {
            let spec = SubgroupSpec::removing(named_form(name).unwrap(), &[], false).unwrap();
            let r = pi0_count(&spec).unwrap();
            assert_eq!(r.count, 1, "{name}");
            assert_eq!(r.pi1_order, 1);
        }
    }

    #[test]
    fn even_kernel_refused() {
        let spec = SubgroupSpec::new(named_form("D4").unwrap(), vec![0, 1, 3, 4], true).unwrap();
        assert!(matches!(pi0_count(&spec), Err(Error::EvenFundamentalGroup(2))));
    }

    #[test]
    fn spin_star() {
        for n in 4..=8usize {
            let name = format!("SpinStar({})", 2 * n);
            assert_eq!(remove(&name, &[n - 1]).count, n.div_ceil(4), "{name}");
            for m in 1..=n - 2 {
                assert_eq!(remove(&name, &[m]).count, (m + 1).div_ceil(2), "{name} minus {m}");
            }
        }
    }

    #[test]
    fn spin_odd_odd_recipe() {
        let r = reduced_pi0(&named_form("Spin(5,7)").unwrap(), 3).unwrap();
        assert_eq!(r.count, 2);
        let r = reduced_pi0(&named_form("Spin(5,9)").unwrap(), 3).unwrap();
        assert_eq!(r.count, 2);
        assert!(reduced_pi0(&named_form("Spin(5,7)").unwrap(), 2).is_err());
        assert!(matches!(
            reduced_pi0(&named_form("EV").unwrap(), 3),
            Err(Error::OuterAmbient(_))
        ));
    }

    #[test]
    fn custom_embedding_dimension_check() {
        let sub = PuzzleInstance::untwisted(&crate::dynkin::build_diagram("A2".parse().unwrap()));
        let amb = PuzzleInstance::untwisted(&crate::dynkin::build_diagram("A4".parse().unwrap()));
        let bad = EmbeddingMap::inclusion(4, &[0, 1, 2]).unwrap();
        assert!(pi0_with_custom_embedding(&sub, &bad, &amb).is_err());
        let ok = EmbeddingMap::inclusion(4, &[0, 1]).unwrap();
        assert_eq!(pi0_with_custom_embedding(&sub, &ok, &amb).unwrap().count, 1);
    }
}
