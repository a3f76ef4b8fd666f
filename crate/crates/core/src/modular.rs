//! Modular data of quantum doubles and generic anyon theories.
//!
//! Anyons of D(G) are pairs (conjugacy class, irrep of the centralizer of
//! the class representative). The S-matrix is built from characters only,
//! fusion comes from the Verlinde formula, and every theory can be put
//! through [`validate_theory`].

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::group::{centralizer, character_table, CharacterTable, FiniteGroup, GroupError, Subgroup};
use crate::linalg::{self, real, CMatrix, C64};
use crate::tol;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ModularError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("S-matrix is not unitary (defect {defect:e})")]
    NotUnitary { defect: f64 },
    #[error("S-matrix row 0 is not strictly positive at column {column}")]
    NonPositiveVacuumRow { column: usize },
    #[error("fusion coefficient N[{a}][{b}][{c}] = {value} is not an integer")]
    NonIntegerFusion { a: usize, b: usize, c: usize, value: f64 },
    #[error("fusion coefficient N[{a}][{b}][{c}] = {value} is negative")]
    NegativeFusion { a: usize, b: usize, c: usize, value: i64 },
    #[error("anyon {a} has no unique antiparticle")]
    NoAntiparticle { a: usize },
    #[error("inconsistent theory data: {0}")]
    Shape(String),
}

/// Flux/charge classification of a quantum-double anyon.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AnyonKind {
    Vacuum,
    Chargeon,
    Fluxon,
    Dyon,
}

impl fmt::Display for AnyonKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            AnyonKind::Vacuum => "vacuum",
            AnyonKind::Chargeon => "chargeon",
            AnyonKind::Fluxon => "fluxon",
            AnyonKind::Dyon => "dyon",
        };
        f.write_str(s)
    }
}

/// Flux and charge of a quantum-double anyon.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DoubleLabel {
    pub class_index: usize,
    pub irrep_index: usize,
    /// Names of the conjugacy class representative and centralizer irrep.
    pub class_name: String,
    pub irrep_name: String,
    pub kind: AnyonKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnyonLabel {
    pub display_name: String,
    /// Present for anyons of a built quantum double; catalog theories use
    /// opaque names only.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub double: Option<DoubleLabel>,
}

impl AnyonLabel {
    pub fn opaque(name: impl Into<String>) -> Self {
        Self { display_name: name.into(), double: None }
    }
}

/// Fusion coefficients N[a][b][c], stored densely.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FusionRules {
    n: usize,
    data: Vec<u32>,
}

impl FusionRules {
    pub fn zeros(n: usize) -> Self {
        Self { n, data: vec![0; n * n * n] }
    }

    pub fn from_nested(nested: &[Vec<Vec<u32>>]) -> Result<Self, ModularError> {
        let n = nested.len();
        let mut f = Self::zeros(n);
        for (a, rows) in nested.iter().enumerate() {
            if rows.len() != n || rows.iter().any(|r| r.len() != n) {
                return Err(ModularError::Shape(format!("fusion tensor slice {a} is not {n}×{n}")));
            }
            for (b, r) in rows.iter().enumerate() {
                for (c, &v) in r.iter().enumerate() {
                    f.set(a, b, c, v);
                }
            }
        }
        Ok(f)
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn get(&self, a: usize, b: usize, c: usize) -> u32 {
        self.data[(a * self.n + b) * self.n + c]
    }

    pub fn set(&mut self, a: usize, b: usize, c: usize, v: u32) {
        let n = self.n;
        self.data[(a * n + b) * n + c] = v;
    }

    /// Outcomes of a × b with multiplicities, in index order.
    pub fn product(&self, a: usize, b: usize) -> Vec<(usize, u32)> {
        (0..self.n).map(|c| (c, self.get(a, b, c))).filter(|&(_, m)| m > 0).collect()
    }

    pub fn to_nested(&self) -> Vec<Vec<Vec<u32>>> {
        (0..self.n)
            .map(|a| (0..self.n).map(|b| (0..self.n).map(|c| self.get(a, b, c)).collect()).collect())
            .collect()
    }

    /// The matrix (N_a)_{bc} = N[a][b][c].
    pub fn slice(&self, a: usize) -> CMatrix {
        CMatrix::from_fn(self.n, self.n, |b, c| real(self.get(a, b, c) as f64))
    }

    /// Restriction to a subset of labels, preserving the given order.
    pub fn restrict(&self, keep: &[usize]) -> Self {
        let mut f = Self::zeros(keep.len());
        for (i, &a) in keep.iter().enumerate() {
            for (j, &b) in keep.iter().enumerate() {
                for (k, &c) in keep.iter().enumerate() {
                    f.set(i, j, k, self.get(a, b, c));
                }
            }
        }
        f
    }

    /// Formats a × b as `C ⊕ D ⊕ 2E` using the supplied names.
    pub fn format_product(&self, a: usize, b: usize, names: &[String]) -> String {
        let terms: Vec<String> = self
            .product(a, b)
            .into_iter()
            .map(|(c, m)| if m == 1 { names[c].clone() } else { format!("{m}{}", names[c]) })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" ⊕ ")
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AnyonTheory {
    pub name: String,
    pub labels: Vec<AnyonLabel>,
    pub s: CMatrix,
    /// Topological spins; `None` for theories whose T is not stored.
    pub t: Option<Vec<C64>>,
    pub fusion: FusionRules,
    pub dims: Vec<f64>,
    pub total_dim: f64,
}

impl AnyonTheory {
    /// Assembles a theory from an S-matrix, deriving fusion and dimensions.
    pub fn from_modular_data(
        name: impl Into<String>,
        labels: Vec<AnyonLabel>,
        s: CMatrix,
        t: Option<Vec<C64>>,
    ) -> Result<Self, ModularError> {
        let n = s.nrows();
        if !s.is_square() || labels.len() != n || t.as_ref().is_some_and(|t| t.len() != n) {
            return Err(ModularError::Shape(format!(
                "{} labels, S is {}×{}, T has {} entries",
                labels.len(),
                s.nrows(),
                s.ncols(),
                t.as_ref().map_or(n, Vec::len)
            )));
        }
        let fusion = verlinde_fusion(&s)?;
        let (dims, total_dim) = quantum_dims(&s);
        Ok(Self { name: name.into(), labels, s, t, fusion, dims, total_dim })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn names(&self) -> Vec<String> {
        self.labels.iter().map(|l| l.display_name.clone()).collect()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.labels.iter().position(|l| l.display_name == name)
    }

    pub fn to_json(&self) -> TheoryJson {
        let pair = |z: &C64| [z.re, z.im];
        TheoryJson {
            name: self.name.clone(),
            labels: self.names(),
            s: linalg::to_rows(&self.s).iter().map(|r| r.iter().map(pair).collect()).collect(),
            t: self.t.as_ref().map(|t| t.iter().map(pair).collect()),
            n: self.fusion.to_nested(),
            dims: self.dims.clone(),
            total_dim: self.total_dim,
        }
    }

    /// Rebuilds a theory from its JSON form; the stored N is kept as given.
    pub fn from_json(j: &TheoryJson) -> Result<Self, ModularError> {
        let n = j.labels.len();
        if j.s.len() != n || j.s.iter().any(|r| r.len() != n) {
            return Err(ModularError::Shape("S must be square with one row per label".into()));
        }
        let s = CMatrix::from_fn(n, n, |a, b| C64::new(j.s[a][b][0], j.s[a][b][1]));
        let t = j.t.as_ref().map(|t| t.iter().map(|p| C64::new(p[0], p[1])).collect::<Vec<_>>());
        if t.as_ref().is_some_and(|t| t.len() != n) {
            return Err(ModularError::Shape("T must have one entry per label".into()));
        }
        let fusion = if j.n.is_empty() { verlinde_fusion(&s)? } else { FusionRules::from_nested(&j.n)? };
        if fusion.len() != n {
            return Err(ModularError::Shape("N must be n×n×n".into()));
        }
        let (dims, total_dim) = if j.dims.len() == n { (j.dims.clone(), j.total_dim) } else { quantum_dims(&s) };
        Ok(Self {
            name: j.name.clone(),
            labels: j.labels.iter().map(AnyonLabel::opaque).collect(),
            s,
            t,
            fusion,
            dims,
            total_dim,
        })
    }
}

/// Theory export format; complex numbers are `[re, im]` pairs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TheoryJson {
    #[serde(default)]
    pub name: String,
    pub labels: Vec<String>,
    #[serde(rename = "S")]
    pub s: Vec<Vec<[f64; 2]>>,
    #[serde(rename = "T", default, skip_serializing_if = "Option::is_none")]
    pub t: Option<Vec<[f64; 2]>>,
    #[serde(rename = "N", default)]
    pub n: Vec<Vec<Vec<u32>>>,
    #[serde(default)]
    pub dims: Vec<f64>,
    #[serde(default)]
    pub total_dim: f64,
}

/// Group data shared by the S- and T-matrix constructions.
#[derive(Debug, Clone)]
pub struct DoubleData {
    pub group: FiniteGroup,
    pub table: CharacterTable,
    /// One entry per conjugacy class, for the class representative.
    pub centralizers: Vec<Subgroup>,
    pub centralizer_tables: Vec<CharacterTable>,
    /// (class index, centralizer irrep index) per anyon, in canonical order.
    pub anyons: Vec<(usize, usize)>,
}

impl DoubleData {
    pub fn new(g: &FiniteGroup) -> Result<Self, GroupError> {
        let table = character_table(g)?;
        let mut centralizers = Vec::new();
        let mut centralizer_tables = Vec::new();
        let mut anyons = Vec::new();
        for (k, c) in table.classes.iter().enumerate() {
            let n = centralizer(g, c.representative);
            let t = character_table(&n.as_group)?;
            anyons.extend((0..t.len()).map(|i| (k, i)));
            centralizers.push(n);
            centralizer_tables.push(t);
        }
        Ok(Self { group: g.clone(), table, centralizers, centralizer_tables, anyons })
    }

    /// χ_Γ(h) for a parent element h lying in the centralizer of class k.
    fn centralizer_character(&self, class: usize, irrep: usize, h: usize) -> Option<C64> {
        let local = self.centralizers[class].local_index(h)?;
        Some(self.centralizer_tables[class].value(irrep, local))
    }

    pub fn kind(&self, anyon: usize) -> AnyonKind {
        let (class, irrep) = self.anyons[anyon];
        match (class == 0, irrep == 0) {
            (true, true) => AnyonKind::Vacuum,
            (true, false) => AnyonKind::Chargeon,
            (false, true) => AnyonKind::Fluxon,
            (false, false) => AnyonKind::Dyon,
        }
    }

    pub fn dim(&self, anyon: usize) -> usize {
        let (class, irrep) = self.anyons[anyon];
        self.table.classes[class].size() * self.centralizer_tables[class].irreps[irrep].dim
    }

    fn display_names(&self) -> Vec<String> {
        let g = &self.group;
        let n = g.order();
        let cyclic = g.is_abelian() && (0..n).any(|x| g.element_order(x) == n);
        let count = self.anyons.len();
        self.anyons
            .iter()
            .enumerate()
            .map(|(idx, &(flux, charge))| {
                if cyclic && n == 2 {
                    ["1", "e", "m", "em"][idx].to_string()
                } else if cyclic && n <= 9 {
                    let e = if charge == 0 { String::new() } else { format!("e{charge}") };
                    let m = if flux == 0 { String::new() } else { format!("m{flux}") };
                    if e.is_empty() && m.is_empty() {
                        "1".into()
                    } else {
                        e + &m
                    }
                } else if count <= 26 {
                    ((b'A' + idx as u8) as char).to_string()
                } else {
                    format!("a{idx}")
                }
            })
            .collect()
    }

    pub fn labels(&self) -> Vec<AnyonLabel> {
        let names = self.display_names();
        self.anyons
            .iter()
            .enumerate()
            .map(|(idx, &(class, irrep))| AnyonLabel {
                display_name: names[idx].clone(),
                double: Some(DoubleLabel {
                    class_index: class,
                    irrep_index: irrep,
                    class_name: self.group.element_name(self.table.classes[class].representative).to_string(),
                    irrep_name: self.centralizer_tables[class].irreps[irrep].name.clone(),
                    kind: self.kind(idx),
                }),
            })
            .collect()
    }

    /// S-matrix from characters of centralizers, summed over all of G.
    pub fn smatrix(&self) -> CMatrix {
        let n = self.anyons.len();
        let g = &self.group;
        let reps: Vec<usize> = self.table.classes.iter().map(|c| c.representative).collect();
        CMatrix::from_fn(n, n, |a, b| {
            let (ca, ia) = self.anyons[a];
            let (cb, ib) = self.anyons[b];
            let (ga, gb) = (reps[ca], reps[cb]);
            let norm = (self.centralizers[ca].order() * self.centralizers[cb].order()) as f64;
            let mut acc = C64::new(0.0, 0.0);
            for h in 0..g.order() {
                let conj_b = g.conjugate(h, gb);
                let Some(x) = self.centralizer_character(ca, ia, conj_b) else { continue };
                let back = g.mul(g.mul(g.inv(h), g.inv(ga)), h);
                let y = self
                    .centralizer_character(cb, ib, back)
                    .expect("h⁻¹g⁻¹h commutes with the second representative");
                acc += x * y;
            }
            acc / norm
        })
    }

    pub fn tmatrix(&self) -> Vec<C64> {
        self.anyons
            .iter()
            .map(|&(class, irrep)| {
                let rep = self.table.classes[class].representative;
                let dim = self.centralizer_tables[class].irreps[irrep].dim as f64;
                self.centralizer_character(class, irrep, rep).expect("rep lies in its centralizer") / dim
            })
            .collect()
    }
}

pub fn smatrix_double(g: &FiniteGroup) -> Result<CMatrix, ModularError> {
    let s = DoubleData::new(g)?.smatrix();
    let defect = linalg::unitarity_defect(&s);
    if defect > tol::tau() {
        return Err(ModularError::NotUnitary { defect });
    }
    Ok(s)
}

pub fn tmatrix_double(g: &FiniteGroup) -> Result<Vec<C64>, ModularError> {
    Ok(DoubleData::new(g)?.tmatrix())
}

pub fn build_double(g: &FiniteGroup) -> Result<AnyonTheory, ModularError> {
    let data = DoubleData::new(g)?;
    let s = data.smatrix();
    let defect = linalg::unitarity_defect(&s);
    if defect > tol::tau() {
        return Err(ModularError::NotUnitary { defect });
    }
    let name = format!("D({})", if g.name().is_empty() { "G" } else { g.name() });
    AnyonTheory::from_modular_data(name, data.labels(), s, Some(data.tmatrix()))
}

/// Verlinde formula N[a][b][c] = Σ_z S[a][z]·S[b][z]·conj(S[c][z]) / S[0][z].
pub fn verlinde_fusion(s: &CMatrix) -> Result<FusionRules, ModularError> {
    let n = s.nrows();
    if !s.is_square() {
        return Err(ModularError::Shape("S must be square".into()));
    }
    for z in 0..n {
        let v = s[(0, z)];
        if v.re <= tol::tau() || v.im.abs() > tol::tau() {
            return Err(ModularError::NonPositiveVacuumRow { column: z });
        }
    }
    let mut f = FusionRules::zeros(n);
    for a in 0..n {
        for b in 0..n {
            let w: Vec<C64> = (0..n).map(|z| s[(a, z)] * s[(b, z)] / s[(0, z)]).collect();
            for c in 0..n {
                let v: C64 = (0..n).map(|z| w[z] * s[(c, z)].conj()).sum();
                let value = v.re;
                let k = tol::round_integer(value)
                    .filter(|_| v.im.abs() <= tol::INTEGER_RESIDUAL)
                    .ok_or(ModularError::NonIntegerFusion { a, b, c, value })?;
                if k < 0 {
                    return Err(ModularError::NegativeFusion { a, b, c, value: k });
                }
                f.set(a, b, c, k as u32);
            }
        }
    }
    Ok(f)
}

/// ā for every a: the unique b with |Σ_z S[a][z]·S[b][z]| ≈ 1.
pub fn antiparticles(s: &CMatrix) -> Result<Vec<usize>, ModularError> {
    let n = s.nrows();
    (0..n)
        .map(|a| {
            let hits: Vec<usize> = (0..n)
                .filter(|&b| {
                    let v: C64 = (0..n).map(|z| s[(a, z)] * s[(b, z)]).sum();
                    (v.norm() - 1.0).abs() <= 1e-6
                })
                .collect();
            match hits.as_slice() {
                [b] => Ok(*b),
                _ => Err(ModularError::NoAntiparticle { a }),
            }
        })
        .collect()
}

/// Quantum dimensions S[0][a]/S[0][0] and total dimension 1/S[0][0].
pub fn quantum_dims(s: &CMatrix) -> (Vec<f64>, f64) {
    let s00 = s[(0, 0)].re;
    let dims = (0..s.ncols()).map(|a| s[(0, a)].re / s00).collect();
    (dims, 1.0 / s00)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidationReport {
    pub theory: String,
    pub checks: Vec<Check>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "validation of {}:", self.theory)?;
        for c in &self.checks {
            writeln!(f, "  [{}] {}: {}", if c.passed { "pass" } else { "FAIL" }, c.name, c.detail)?;
        }
        Ok(())
    }
}

/// Checks every theory invariant; failures are reported, never raised.
pub fn validate_theory(t: &AnyonTheory) -> ValidationReport {
    let tau = tol::tau();
    let n = t.len();
    let s = &t.s;
    let mut checks = Vec::new();
    let mut push = |name, passed, detail: String| checks.push(Check { name, passed, detail });

    let shape_ok = s.nrows() == n && s.ncols() == n && t.fusion.len() == n && t.dims.len() == n;
    push("shape", shape_ok, format!("{n} labels, S {}×{}, N rank {}", s.nrows(), s.ncols(), t.fusion.len()));
    if !shape_ok {
        return ValidationReport { theory: t.name.clone(), checks };
    }

    let defect = linalg::unitarity_defect(s);
    push("unitary", defect <= tau, format!("max |SS† − 1| = {defect:.3e}"));

    let sym = linalg::max_abs_diff(s, &s.transpose());
    let sym_conj = linalg::max_abs_diff(&s.transpose(), &s.conjugate());
    push(
        "symmetric",
        sym.min(sym_conj) <= tau,
        format!("max |S − Sᵀ| = {sym:.3e}, max |Sᵀ − S*| = {sym_conj:.3e}"),
    );

    let positive = (0..n).all(|a| s[(0, a)].re > tau && s[(0, a)].im.abs() <= tau && s[(a, 0)].re > tau && s[(a, 0)].im.abs() <= tau);
    push("vacuum row positive", positive, "S[0][a] and S[a][0] real and > 0".into());

    let row_dims = (0..n).map(|a| (s[(0, a)].re - t.dims[a] / t.total_dim).abs()).fold(0.0, f64::max);
    push("S[0][a] = d_a/D", row_dims <= tau, format!("max deviation {row_dims:.3e}"));

    if let Some(spins) = &t.t {
        let vac = (spins[0] - real(1.0)).norm();
        let modulus = spins.iter().map(|z| (z.norm() - 1.0).abs()).fold(0.0, f64::max);
        push("T unit modulus", vac <= tau && modulus <= tau, format!("|T0 − 1| = {vac:.3e}, max ||T| − 1| = {modulus:.3e}"));
    }

    let vacuum_identity = (0..n).all(|a| (0..n).all(|b| t.fusion.get(0, a, b) == u32::from(a == b)));
    push("vacuum fusion", vacuum_identity, "N[0][a][b] = δ_ab".into());

    let mut bad_anti = Vec::new();
    for a in 0..n {
        let partners: Vec<usize> = (0..n).filter(|&b| t.fusion.get(a, b, 0) > 0).collect();
        if partners.len() != 1 || t.fusion.get(a, partners[0], 0) != 1 {
            bad_anti.push(t.labels[a].display_name.clone());
        }
    }
    push("unique antiparticle", bad_anti.is_empty(), if bad_anti.is_empty() { "every a has one ā".into() } else { format!("violated for {}", bad_anti.join(", ")) });

    let mut dim_defect: f64 = 0.0;
    for a in 0..n {
        for b in 0..n {
            let rhs: f64 = (0..n).map(|c| t.fusion.get(a, b, c) as f64 * t.dims[c]).sum();
            dim_defect = dim_defect.max((t.dims[a] * t.dims[b] - rhs).abs());
        }
    }
    push("d_a d_b = Σ N d_c", dim_defect <= 1e-6, format!("max deviation {dim_defect:.3e}"));

    let d2: f64 = t.dims.iter().map(|d| d * d).sum();
    let d_defect = (d2 - t.total_dim * t.total_dim).abs();
    push("D² = Σ d²", d_defect <= 1e-6, format!("Σ d² = {d2:.6}, D² = {:.6}", t.total_dim * t.total_dim));

    let assoc = associativity_violation(&t.fusion);
    push("fusion associative", assoc.is_none(), match assoc {
        None => "(a×b)×c = a×(b×c)".into(),
        Some((a, b, c, d)) => format!("fails at ({a},{b},{c}) → {d}"),
    });

    let (verlinde_ok, detail) = match verlinde_fusion(s) {
        Ok(v) if v == t.fusion => (true, "stored N equals Verlinde(S)".to_string()),
        Ok(_) => (false, "stored N differs from Verlinde(S)".to_string()),
        Err(e) => (false, e.to_string()),
    };
    push("Verlinde consistent", verlinde_ok, detail);

    ValidationReport { theory: t.name.clone(), checks }
}

/// First (a, b, c, d) with Σ_e N[a][b][e]·N[e][c][d] ≠ Σ_f N[b][c][f]·N[a][f][d].
fn associativity_violation(f: &FusionRules) -> Option<(usize, usize, usize, usize)> {
    let n = f.len();
    let products: Vec<Vec<(usize, u32)>> =
        (0..n * n).map(|ab| f.product(ab / n, ab % n)).collect();
    let mut left = vec![0u64; n];
    let mut right = vec![0u64; n];
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                left.iter_mut().for_each(|x| *x = 0);
                right.iter_mut().for_each(|x| *x = 0);
                for &(e, m) in &products[a * n + b] {
                    for &(d, k) in &products[e * n + c] {
                        left[d] += u64::from(m) * u64::from(k);
                    }
                }
                for &(g, m) in &products[b * n + c] {
                    for &(d, k) in &products[a * n + g] {
                        right[d] += u64::from(m) * u64::from(k);
                    }
                }
                if let Some(d) = (0..n).find(|&d| left[d] != right[d]) {
                    return Some((a, b, c, d));
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::preset;

    fn s3() -> AnyonTheory {
        build_double(&preset("s3").unwrap()).unwrap()
    }

    #[test]
    fn s3_labels_and_kinds() {
        let t = s3();
        assert_eq!(t.names(), ["A", "B", "C", "D", "E", "F", "G", "H"]);
        let kinds: Vec<AnyonKind> = t.labels.iter().map(|l| l.double.as_ref().unwrap().kind).collect();
        use AnyonKind::*;
        assert_eq!(kinds, [Vacuum, Chargeon, Chargeon, Fluxon, Dyon, Fluxon, Dyon, Dyon]);
        let dims: Vec<i64> = t.dims.iter().map(|d| tol::round_integer(*d).unwrap()).collect();
        assert_eq!(dims, [1, 1, 2, 3, 3, 2, 2, 2]);
        assert!((t.total_dim - 6.0).abs() < 1e-12);
    }

    #[test]
    fn s3_spins() {
        let t = s3();
        let spins = t.t.as_ref().unwrap();
        let w = C64::from_polar(1.0, 2.0 * std::f64::consts::PI / 3.0);
        assert!((spins[0] - real(1.0)).norm() < 1e-12);
        assert!((spins[4] - real(-1.0)).norm() < 1e-12);
        assert!((spins[6] - w).norm() < 1e-12);
    }

    #[test]
    fn z3_fusion() {
        let t = build_double(&preset("z3").unwrap()).unwrap();
        assert_eq!(t.names(), ["1", "e1", "e2", "m1", "e1m1", "e2m1", "m2", "e1m2", "e2m2"]);
        let e1 = t.index_of("e1").unwrap();
        let e2 = t.index_of("e2").unwrap();
        assert_eq!(t.fusion.product(e1, e2), vec![(0, 1)]);
        assert_eq!(t.fusion.product(e1, e1), vec![(e2, 1)]);
    }

    #[test]
    fn z2_names() {
        let t = build_double(&preset("z2").unwrap()).unwrap();
        assert_eq!(t.names(), ["1", "e", "m", "em"]);
    }

    #[test]
    fn validation_catches_duplicated_row() {
        let mut t = s3();
        assert!(validate_theory(&t).passed());
        let row = t.s.row(1).into_owned();
        t.s.set_row(2, &row);
        let report = validate_theory(&t);
        assert!(!report.check("unitary").unwrap().passed);
    }

    #[test]
    fn validation_catches_bad_fusion_dimension() {
        let mut t = s3();
        let d = t.index_of("D").unwrap();
        t.fusion.set(d, d, 0, 2);
        let report = validate_theory(&t);
        assert!(!report.check("d_a d_b = Σ N d_c").unwrap().passed);
    }

    #[test]
    fn json_round_trip_preserves_data() {
        let t = s3();
        let text = serde_json::to_string(&t.to_json()).unwrap();
        let back = AnyonTheory::from_json(&serde_json::from_str(&text).unwrap()).unwrap();
        assert_eq!(linalg::max_abs_diff(&back.s, &t.s), 0.0);
        assert_eq!(back.fusion, t.fusion);
        assert_eq!(back.dims, t.dims);
    }

    #[test]
    fn antiparticles_of_z3() {
        let t = build_double(&preset("z3").unwrap()).unwrap();
        let anti = antiparticles(&t.s).unwrap();
        assert_eq!(anti[t.index_of("e1").unwrap()], t.index_of("e2").unwrap());
        assert_eq!(anti[t.index_of("e1m1").unwrap()], t.index_of("e2m2").unwrap());
    }
}
