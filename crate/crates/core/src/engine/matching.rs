//! Identification of a reduced theory with a catalog entry.

use serde::{Deserialize, Serialize};

use crate::catalog::{Catalog, CatalogEntry, MergeMap};
use crate::linalg::{self, real, CMatrix, C64};
use crate::modular::AnyonKind;
use crate::tol;

const MAX_SOLUTIONS: usize = 100_000;

/// A theory presented for matching: its S, and optionally T and the
/// flux/charge type of each label (used only to rank equivalent matches).
#[derive(Debug, Clone, Copy)]
pub struct Presented<'a> {
    pub names: &'a [String],
    pub s: &'a CMatrix,
    pub t: Option<&'a [C64]>,
    pub kinds: Option<&'a [AnyonKind]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "via", rename_all = "snake_case")]
pub enum MatchVia {
    Direct,
    Split { merge_map: String },
}

#[derive(Debug, Clone, PartialEq)]
pub struct SplitWitness {
    pub matched: bool,
    /// Reduced label index → merge group index.
    pub permutation: Vec<usize>,
    pub symmetric_block: CMatrix,
    /// Antisymmetric combinations dropped from the catalog theory, e.g. `e1-e2`.
    pub antisymmetric: Vec<String>,
    pub violation: Option<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CatalogMatch {
    pub key: String,
    pub name: String,
    pub via: MatchVia,
    /// Reduced label (or split component) → catalog label.
    pub relabeling: Vec<(String, String)>,
    /// Name of a stored correspondence equal to the relabeling.
    pub correspondence: Option<String>,
    pub split: Option<SplitWitness>,
}

fn close(a: C64, b: C64) -> bool {
    (a - b).norm() <= tol::tau().max(1e-9) * 10.0
}

/// All vacuum-fixing permutations p with a[i][j] = b[p(i)][p(j)] (and
/// T, when both sides have it); the one agreeing with the most label types
/// is returned, earliest in search order on ties.
fn best_permutation(
    a: &CMatrix,
    b: &CMatrix,
    ta: Option<&[C64]>,
    tb: Option<&[C64]>,
    ka: Option<&[AnyonKind]>,
    kb: Option<&[AnyonKind]>,
) -> Option<Vec<usize>> {
    let n = a.nrows();
    if b.nrows() != n || n == 0 {
        return None;
    }
    let t_ok = |i: usize, j: usize| match (ta, tb) {
        (Some(x), Some(y)) => close(x[i], y[j]),
        _ => true,
    };
    let kind_score = |p: &[usize]| match (ka, kb) {
        (Some(x), Some(y)) => (0..n).filter(|&i| x[i] == y[p[i]]).count(),
        _ => 0,
    };
    if !close(a[(0, 0)], b[(0, 0)]) || !t_ok(0, 0) {
        return None;
    }
    let mut best: Option<(usize, Vec<usize>)> = None;
    let mut found = 0usize;
    let mut p = vec![0usize];
    let mut used = vec![false; n];
    used[0] = true;
    #[allow(clippy::too_many_arguments)]
    fn rec(
        p: &mut Vec<usize>,
        used: &mut [bool],
        a: &CMatrix,
        b: &CMatrix,
        t_ok: &dyn Fn(usize, usize) -> bool,
        score: &dyn Fn(&[usize]) -> usize,
        best: &mut Option<(usize, Vec<usize>)>,
        found: &mut usize,
    ) {
        let n = a.nrows();
        if *found >= MAX_SOLUTIONS {
            return;
        }
        let i = p.len();
        if i == n {
            *found += 1;
            let s = score(p);
            if best.as_ref().is_none_or(|(bs, _)| s > *bs) {
                *best = Some((s, p.clone()));
            }
            return;
        }
        for j in 0..n {
            if used[j] || !t_ok(i, j) || !close(a[(i, i)], b[(j, j)]) {
                continue;
            }
            let fits = (0..i).all(|k| close(a[(i, k)], b[(j, p[k])]) && close(a[(k, i)], b[(p[k], j)]));
            if fits {
                used[j] = true;
                p.push(j);
                rec(p, used, a, b, t_ok, score, best, found);
                p.pop();
                used[j] = false;
            }
        }
    }
    rec(&mut p, &mut used, a, b, &t_ok, &kind_score, &mut best, &mut found);
    best.map(|(_, p)| p)
}

/// Vacuum-fixing relabeling onto an entry of the same size, if S (and T
/// when both are known) agree entrywise.
pub fn match_direct(x: &Presented, entry: &CatalogEntry) -> Option<Vec<usize>> {
    best_permutation(
        x.s,
        &entry.theory.s,
        x.t,
        entry.theory.t.as_deref(),
        x.kinds,
        entry.kinds.as_deref(),
    )
}

/// Checks that the catalog S is block diagonal in the basis of symmetric
/// and antisymmetric combinations of merged labels, and that the symmetric
/// block equals the reduced S up to a vacuum-fixing permutation.
pub fn split_check(x: &Presented, entry: &CatalogEntry, merge: &MergeMap) -> SplitWitness {
    let cat = &entry.theory;
    let n = cat.len();
    let fail = |msg: String| SplitWitness {
        matched: false,
        permutation: vec![],
        symmetric_block: CMatrix::zeros(0, 0),
        antisymmetric: vec![],
        violation: Some(msg),
    };
    let mut groups = Vec::new();
    let mut covered = vec![false; n];
    for g in &merge.groups {
        let mut idx = Vec::new();
        for name in g {
            let Some(i) = cat.index_of(name) else {
                return fail(format!("merge map names unknown label {name}"));
            };
            if std::mem::replace(&mut covered[i], true) {
                return fail(format!("label {name} appears twice in the merge map"));
            }
            idx.push(i);
        }
        groups.push(idx);
    }
    if covered.iter().any(|c| !c) {
        return fail("merge map does not cover every catalog label".into());
    }
    if groups.first().is_none_or(|g| g != &vec![0]) {
        return fail("vacuum must be merged alone and listed first".into());
    }
    if groups.len() != x.s.nrows() {
        return fail(format!("{} merged labels against {} reduced labels", groups.len(), x.s.nrows()));
    }

    // Rows of `u`: symmetric vectors first, then the antisymmetric ones.
    let mut sym = Vec::new();
    let mut anti = Vec::new();
    let mut anti_names = Vec::new();
    for g in &groups {
        let scale = 1.0 / (g.len() as f64).sqrt();
        let mut v = vec![real(0.0); n];
        for &i in g {
            v[i] = real(scale);
        }
        sym.push(v);
        for k in 1..g.len() {
            // Orthonormal differences: Helmert-style contrasts within the group.
            let mut w = vec![real(0.0); n];
            let norm = ((k * (k + 1)) as f64).sqrt();
            for &i in &g[..k] {
                w[i] = real(1.0 / norm);
            }
            w[g[k]] = real(-(k as f64) / norm);
            anti.push(w);
            anti_names.push(format!("{}-{}", cat.labels[g[0]].display_name, cat.labels[g[k]].display_name));
        }
    }
    let rows: Vec<Vec<C64>> = sym.iter().chain(&anti).cloned().collect();
    let u = linalg::from_rows(&rows);
    let rotated = &u * &cat.s * u.transpose();
    let m = sym.len();
    for i in 0..rotated.nrows() {
        for j in 0..rotated.ncols() {
            if (i < m) != (j < m) && !close(rotated[(i, j)], real(0.0)) {
                return fail(format!("off-diagonal block entry ({i}, {j}) = {:.6}", rotated[(i, j)]));
            }
        }
    }
    let block = rotated.view((0, 0), (m, m)).into_owned();
    let group_t: Option<Vec<C64>> = match &cat.t {
        Some(t) => {
            for g in &groups {
                if g.iter().any(|&i| !close(t[i], t[g[0]])) {
                    return fail(format!("spins differ inside merged group {}", cat.labels[g[0]].display_name));
                }
            }
            Some(groups.iter().map(|g| t[g[0]]).collect())
        }
        None => None,
    };
    let group_kinds: Option<Vec<AnyonKind>> =
        entry.kinds.as_ref().map(|k| groups.iter().map(|g| k[g[0]]).collect());
    match best_permutation(x.s, &block, x.t, group_t.as_deref(), x.kinds, group_kinds.as_deref()) {
        Some(p) => SplitWitness {
            matched: true,
            permutation: p,
            symmetric_block: block,
            antisymmetric: anti_names,
            violation: None,
        },
        None => {
            let mut w = fail("symmetric block differs from the reduced S under every relabeling".into());
            w.symmetric_block = block;
            w.antisymmetric = anti_names;
            w
        }
    }
}

fn split_relabeling(x: &Presented, merge: &MergeMap, perm: &[usize]) -> Vec<(String, String)> {
    let mut out = Vec::new();
    for (i, &g) in perm.iter().enumerate() {
        let group = &merge.groups[g];
        if group.len() == 1 {
            out.push((x.names[i].clone(), group[0].clone()));
        } else {
            for (k, label) in group.iter().enumerate() {
                let suffix = (b'a' + k as u8) as char;
                out.push((format!("{}_{suffix}", x.names[i]), label.clone()));
            }
        }
    }
    out
}

fn correspondence_name(entry: &CatalogEntry, relabeling: &[(String, String)]) -> Option<String> {
    let mut want = relabeling.to_vec();
    want.sort();
    entry
        .correspondences
        .iter()
        .find(|c| {
            let mut have = c.pairs.clone();
            have.sort();
            have == want
        })
        .map(|c| c.name.clone())
}

/// Direct match against entries of equal size, then split matches against
/// every stored merge map.
pub fn match_catalog(x: &Presented, catalog: &Catalog) -> Option<CatalogMatch> {
    for entry in catalog.all_of_size(x.s.nrows()) {
        if let Some(p) = match_direct(x, entry) {
            let names = entry.theory.names();
            let relabeling: Vec<(String, String)> =
                p.iter().enumerate().map(|(i, &j)| (x.names[i].clone(), names[j].clone())).collect();
            return Some(CatalogMatch {
                key: entry.key.clone(),
                name: entry.name().to_string(),
                via: MatchVia::Direct,
                correspondence: correspondence_name(entry, &relabeling),
                relabeling,
                split: None,
            });
        }
    }
    for entry in catalog.entries() {
        for merge in &entry.merge_maps {
            if merge.groups.len() != x.s.nrows() {
                continue;
            }
            let w = split_check(x, entry, merge);
            if w.matched {
                let relabeling = split_relabeling(x, merge, &w.permutation);
                return Some(CatalogMatch {
                    key: entry.key.clone(),
                    name: entry.name().to_string(),
                    via: MatchVia::Split { merge_map: merge.name.clone() },
                    correspondence: correspondence_name(entry, &relabeling),
                    relabeling,
                    split: Some(w),
                });
            }
        }
    }
    None
}
