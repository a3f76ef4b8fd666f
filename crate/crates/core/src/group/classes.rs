//! Conjugacy classes and centralizers.

use super::FiniteGroup;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjugacyClass {
    /// Smallest member index.
    pub representative: usize,
    /// Sorted member indices.
    pub members: Vec<usize>,
}

impl ConjugacyClass {
    pub fn size(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, g: usize) -> bool {
        self.members.binary_search(&g).is_ok()
    }
}

/// A subgroup together with its induced multiplication table.
///
/// Element `k` of `as_group` is parent element `members[k]`; element names
/// are inherited from the parent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgroup {
    pub parent_order: usize,
    pub members: Vec<usize>,
    pub as_group: FiniteGroup,
}

impl Subgroup {
    /// Builds the subgroup on a set of parent elements; `None` if the set is
    /// not closed under multiplication or is empty.
    pub fn from_members(parent: &FiniteGroup, members: &[usize]) -> Option<Self> {
        let mut members = members.to_vec();
        members.sort_unstable();
        members.dedup();
        if members.is_empty() {
            return None;
        }
        let local = |g: usize| members.binary_search(&g).ok();
        let mut table = Vec::with_capacity(members.len());
        for &a in &members {
            let row = members
                .iter()
                .map(|&b| local(parent.mul(a, b)))
                .collect::<Option<Vec<_>>>()?;
            table.push(row);
        }
        let names = members.iter().map(|&g| parent.element_name(g).to_string()).collect();
        // A finite subset closed under multiplication is a subgroup.
        let as_group = FiniteGroup::new(parent.name(), table, names).ok()?;
        Some(Self { parent_order: parent.order(), members, as_group })
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    /// Subgroup index of a parent element.
    pub fn local_index(&self, g: usize) -> Option<usize> {
        self.members.binary_search(&g).ok()
    }

    pub fn contains(&self, g: usize) -> bool {
        self.local_index(g).is_some()
    }
}

/// Classes with the identity class first, ordered by smallest member.
pub fn conjugacy_classes(g: &FiniteGroup) -> Vec<ConjugacyClass> {
    let n = g.order();
    let mut assigned = vec![false; n];
    let mut classes = Vec::new();
    let mut seeds: Vec<usize> = std::iter::once(g.identity())
        .chain((0..n).filter(|&i| i != g.identity()))
        .collect();
    seeds.dedup();
    for x in seeds {
        if assigned[x] {
            continue;
        }
        let mut members: Vec<usize> = (0..n).map(|z| g.conjugate(z, x)).collect();
        members.sort_unstable();
        members.dedup();
        for &m in &members {
            assigned[m] = true;
        }
        classes.push(ConjugacyClass { representative: members[0], members });
    }
    classes
}

/// `{ z : z·x = x·z }`.
pub fn centralizer(g: &FiniteGroup, x: usize) -> Subgroup {
    let members: Vec<usize> = (0..g.order()).filter(|&z| g.mul(z, x) == g.mul(x, z)).collect();
    Subgroup::from_members(g, &members).expect("centralizers are subgroups")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::preset;

    fn names(g: &FiniteGroup, idx: &[usize]) -> Vec<String> {
        idx.iter().map(|&i| g.element_name(i).to_string()).collect()
    }

    #[test]
    fn s3_classes() {
        let g = preset("s3").unwrap();
        let cls = conjugacy_classes(&g);
        let listed: Vec<Vec<String>> = cls.iter().map(|c| names(&g, &c.members)).collect();
        assert_eq!(listed, vec![vec!["e"], vec!["x", "xy", "xy2"], vec!["y", "y2"]]);
    }

    #[test]
    fn z3_classes_are_singletons() {
        let g = preset("z3").unwrap();
        let cls = conjugacy_classes(&g);
        assert_eq!(cls.len(), 3);
        assert!(cls.iter().all(|c| c.size() == 1));
        assert_eq!(cls[0].representative, g.identity());
    }

    #[test]
    fn s3_centralizers() {
        let g = preset("s3").unwrap();
        let x = g.index_of("x").unwrap();
        let y = g.index_of("y").unwrap();
        assert_eq!(names(&g, &centralizer(&g, x).members), vec!["e", "x"]);
        assert_eq!(names(&g, &centralizer(&g, y).members), vec!["e", "y", "y2"]);
        assert_eq!(centralizer(&g, g.identity()).order(), 6);
    }

    #[test]
    fn non_closed_subset_rejected() {
        let g = preset("s3").unwrap();
        let x = g.index_of("x").unwrap();
        let y = g.index_of("y").unwrap();
        assert!(Subgroup::from_members(&g, &[g.identity(), x, y]).is_none());
    }
}
