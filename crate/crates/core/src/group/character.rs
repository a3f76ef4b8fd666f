//! Character tables by simultaneous diagonalization of class-sum matrices.

use std::cmp::Ordering;

use super::{conjugacy_classes, ConjugacyClass, FiniteGroup, GroupError, Subgroup};
use crate::linalg::{self, real, CMatrix, C64};
use crate::tol;

/// Largest group order accepted by [`character_table`].
pub const DEFAULT_ORDER_BOUND: usize = 64;

#[derive(Debug, Clone, PartialEq)]
pub struct Irrep {
    pub name: String,
    pub dim: usize,
    /// Character value on each conjugacy class, in class order.
    pub values: Vec<C64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CharacterTable {
    pub group: FiniteGroup,
    pub classes: Vec<ConjugacyClass>,
    pub irreps: Vec<Irrep>,
    class_of: Vec<usize>,
}

impl CharacterTable {
    pub fn len(&self) -> usize {
        self.irreps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.irreps.is_empty()
    }

    /// Index of the class containing element `g`.
    pub fn class_of(&self, g: usize) -> usize {
        self.class_of[g]
    }

    /// χ_irrep(g) for an element index.
    pub fn value(&self, irrep: usize, g: usize) -> C64 {
        self.irreps[irrep].values[self.class_of[g]]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.irreps.iter().position(|r| r.name == name)
    }

    /// Max deviation from row orthogonality, scaled by |G|.
    pub fn row_orthogonality_defect(&self) -> f64 {
        let n = self.group.order() as f64;
        let mut worst: f64 = 0.0;
        for (i, a) in self.irreps.iter().enumerate() {
            for (j, b) in self.irreps.iter().enumerate() {
                let s: C64 = self
                    .classes
                    .iter()
                    .enumerate()
                    .map(|(k, c)| a.values[k] * b.values[k].conj() * c.size() as f64)
                    .sum();
                let target = if i == j { n } else { 0.0 };
                worst = worst.max((s - real(target)).norm() / n);
            }
        }
        worst
    }

    /// Max deviation from column orthogonality, scaled by |G|.
    pub fn column_orthogonality_defect(&self) -> f64 {
        let n = self.group.order() as f64;
        let mut worst: f64 = 0.0;
        for (k, ck) in self.classes.iter().enumerate() {
            for l in 0..self.classes.len() {
                let s: C64 = self.irreps.iter().map(|r| r.values[k] * r.values[l].conj()).sum();
                let target = if k == l { n / ck.size() as f64 } else { 0.0 };
                worst = worst.max((s - real(target)).norm() / n);
            }
        }
        worst
    }
}

pub fn character_table(g: &FiniteGroup) -> Result<CharacterTable, GroupError> {
    character_table_with_bound(g, DEFAULT_ORDER_BOUND)
}

pub fn character_table_with_bound(g: &FiniteGroup, bound: usize) -> Result<CharacterTable, GroupError> {
    let order = g.order();
    if order > bound {
        return Err(GroupError::TooLarge { order, bound });
    }
    let classes = conjugacy_classes(g);
    let r = classes.len();
    let mut class_of = vec![0; order];
    for (k, c) in classes.iter().enumerate() {
        for &m in &c.members {
            class_of[m] = k;
        }
    }

    // (M_i)_{jk} = number of (a, b) ∈ C_i × C_j with a·b equal to the representative of C_k.
    let mut family = Vec::with_capacity(r);
    for ci in &classes {
        let mut m = CMatrix::zeros(r, r);
        for (j, cj) in classes.iter().enumerate() {
            for &a in &ci.members {
                for &b in &cj.members {
                    let p = g.mul(a, b);
                    let k = class_of[p];
                    if p == classes[k].representative {
                        m[(j, k)] += real(1.0);
                    }
                }
            }
        }
        family.push(m);
    }
    let spaces = linalg::joint_eigenspaces(r, &family)
        .map_err(|_| GroupError::OrthogonalityFailure { defect: f64::INFINITY })?;
    if spaces.len() != r || spaces.iter().any(|s| s.ncols() != 1) {
        return Err(GroupError::OrthogonalityFailure { defect: f64::INFINITY });
    }

    let mut irreps = Vec::with_capacity(r);
    for s in &spaces {
        // The class-sum eigenvector is transposed relative to M_i's action:
        // M_i w = ω_i w with w_k = ω_k, normalized by w_0 = 1.
        let w0 = s[(0, 0)];
        if w0.norm() < tol::PROPORTIONAL {
            return Err(GroupError::OrthogonalityFailure { defect: f64::INFINITY });
        }
        let w: Vec<C64> = (0..r).map(|k| s[(k, 0)] / w0).collect();
        let norm: f64 = classes.iter().zip(&w).map(|(c, x)| x.norm_sqr() / c.size() as f64).sum();
        let dim_f = (order as f64 / norm).sqrt();
        let dim = tol::round_integer(dim_f)
            .filter(|&d| d > 0)
            .ok_or(GroupError::OrthogonalityFailure { defect: (dim_f - dim_f.round()).abs() })?
            as usize;
        let values = classes
            .iter()
            .zip(&w)
            .map(|(c, x)| snap(*x * (dim as f64) / c.size() as f64))
            .collect();
        irreps.push(Irrep { name: String::new(), dim, values });
    }
    irreps.sort_by(compare_rows);
    assign_names(&mut irreps);

    let table = CharacterTable { group: g.clone(), classes, irreps, class_of };
    let dim_sum: usize = table.irreps.iter().map(|i| i.dim * i.dim).sum();
    let defect = table.row_orthogonality_defect().max(table.column_orthogonality_defect());
    if dim_sum != order || defect > tol::tau() * 10.0 {
        return Err(GroupError::OrthogonalityFailure { defect });
    }
    Ok(table)
}

/// Rounds parts that are within 1e-10 of a multiple of 1/2.
fn snap(z: C64) -> C64 {
    let f = |x: f64| {
        let h = (x * 2.0).round() / 2.0;
        if (x - h).abs() < 1e-10 {
            h + 0.0
        } else {
            x
        }
    };
    C64::new(f(z.re), f(z.im))
}

fn is_trivial(r: &Irrep) -> bool {
    r.values.iter().all(|v| (v - real(1.0)).norm() < tol::PROPORTIONAL)
}

/// Trivial first, then by dimension, then lexicographically by values with
/// each value compared by real part then imaginary part, both descending.
fn compare_rows(a: &Irrep, b: &Irrep) -> Ordering {
    is_trivial(b)
        .cmp(&is_trivial(a))
        .then(a.dim.cmp(&b.dim))
        .then_with(|| {
            for (x, y) in a.values.iter().zip(&b.values) {
                let o = linalg::quantize(y.re)
                    .cmp(&linalg::quantize(x.re))
                    .then(linalg::quantize(y.im).cmp(&linalg::quantize(x.im)));
                if o != Ordering::Equal {
                    return o;
                }
            }
            Ordering::Equal
        })
}

fn base_name(r: &Irrep) -> String {
    if is_trivial(r) {
        return "Gamma1".into();
    }
    if r.dim == 1 {
        if r.values.iter().all(|v| v.im.abs() < tol::PROPORTIONAL) {
            return "Gamma-1".into();
        }
        let omega = C64::from_polar(1.0, 2.0 * std::f64::consts::PI / 3.0);
        let cube_roots = r.values.iter().all(|v| (v * v * v - real(1.0)).norm() < tol::PROPORTIONAL);
        if cube_roots {
            let first = r.values.iter().find(|v| v.im.abs() > tol::PROPORTIONAL).unwrap();
            return if (first - omega).norm() < tol::PROPORTIONAL { "Gamma_w" } else { "Gamma_wbar" }.into();
        }
    }
    format!("Gamma{}", r.dim)
}

fn assign_names(irreps: &mut [Irrep]) {
    let bases: Vec<String> = irreps.iter().map(base_name).collect();
    for i in 0..irreps.len() {
        let total = bases.iter().filter(|b| **b == bases[i]).count();
        let nth = bases[..i].iter().filter(|b| **b == bases[i]).count();
        irreps[i].name = if total == 1 || nth == 0 {
            bases[i].clone()
        } else {
            format!("{}_{}", bases[i], nth + 1)
        };
    }
}

/// ⟨Res_H Γ, γ⟩ = (1/|H|) Σ_{h∈H} χ_Γ(h)·conj(χ_γ(h)).
pub fn restrict_multiplicity(
    parent: &CharacterTable,
    irrep: usize,
    sub: &Subgroup,
    sub_table: &CharacterTable,
    sub_irrep: usize,
) -> Result<usize, GroupError> {
    let s: C64 = sub
        .members
        .iter()
        .enumerate()
        .map(|(local, &h)| parent.value(irrep, h) * sub_table.value(sub_irrep, local).conj())
        .sum();
    let m = s / sub.order() as f64;
    match tol::round_integer(m.re) {
        Some(k) if k >= 0 && m.im.abs() <= tol::INTEGER_RESIDUAL => Ok(k as usize),
        _ => Err(GroupError::NonIntegerMultiplicity { value: m.re }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{centralizer, preset};

    fn omega() -> C64 {
        C64::from_polar(1.0, 2.0 * std::f64::consts::PI / 3.0)
    }

    fn assert_row(t: &CharacterTable, i: usize, expected: &[C64]) {
        for (k, e) in expected.iter().enumerate() {
            assert!((t.irreps[i].values[k] - e).norm() < 1e-12, "row {i} class {k}: {:?}", t.irreps[i].values);
        }
    }

    #[test]
    fn s3_table() {
        let t = character_table(&preset("s3").unwrap()).unwrap();
        let names: Vec<&str> = t.irreps.iter().map(|r| r.name.as_str()).collect();
        assert_eq!(names, ["Gamma1", "Gamma-1", "Gamma2"]);
        assert_row(&t, 0, &[real(1.0), real(1.0), real(1.0)]);
        assert_row(&t, 1, &[real(1.0), real(-1.0), real(1.0)]);
        assert_row(&t, 2, &[real(2.0), real(0.0), real(-1.0)]);
    }

    #[test]
    fn z3_table() {
        let t = character_table(&preset("z3").unwrap()).unwrap();
        let w = omega();
        assert_row(&t, 1, &[real(1.0), w, w.conj()]);
        assert_row(&t, 2, &[real(1.0), w.conj(), w]);
        assert_eq!(t.irreps[1].name, "Gamma_w");
        assert_eq!(t.irreps[2].name, "Gamma_wbar");
    }

    #[test]
    fn z2_table() {
        let t = character_table(&preset("z2").unwrap()).unwrap();
        assert_row(&t, 0, &[real(1.0), real(1.0)]);
        assert_row(&t, 1, &[real(1.0), real(-1.0)]);
    }

    #[test]
    fn bound_is_enforced() {
        let g = preset("z5").unwrap();
        assert_eq!(character_table_with_bound(&g, 4).unwrap_err(), GroupError::TooLarge { order: 5, bound: 4 });
    }

    #[test]
    fn s3_restrictions() {
        let g = preset("s3").unwrap();
        let t = character_table(&g).unwrap();
        let nx = centralizer(&g, g.index_of("x").unwrap());
        let ny = centralizer(&g, g.index_of("y").unwrap());
        let tx = character_table(&nx.as_group).unwrap();
        let ty = character_table(&ny.as_group).unwrap();
        let gamma2 = t.index_of("Gamma2").unwrap();
        let sign = t.index_of("Gamma-1").unwrap();
        assert_eq!(restrict_multiplicity(&t, gamma2, &nx, &tx, 0).unwrap(), 1);
        assert_eq!(restrict_multiplicity(&t, gamma2, &nx, &tx, 1).unwrap(), 1);
        assert_eq!(restrict_multiplicity(&t, sign, &ny, &ty, 0).unwrap(), 1);
        assert_eq!(restrict_multiplicity(&t, sign, &nx, &tx, 0).unwrap(), 0);
        assert_eq!(restrict_multiplicity(&t, 0, &ny, &ty, 0).unwrap(), 1);
        // Γ2 restricted to Z3 is Γω ⊕ Γω̄.
        assert_eq!(restrict_multiplicity(&t, gamma2, &ny, &ty, 1).unwrap(), 1);
        assert_eq!(restrict_multiplicity(&t, gamma2, &ny, &ty, 2).unwrap(), 1);
    }
}
