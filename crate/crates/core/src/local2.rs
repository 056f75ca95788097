//! 2-local predicates: k-connectivity of 2-groups, k-generation,
//! the intersections `Δ_G(E)`, k-balance and the closure `W_A`.

use std::collections::VecDeque;

use rustc_hash::FxHashMap;

use crate::grp::classes::{centralizer, normalizer};
use crate::grp::pgroup::{elementary_abelian, subgroups, EaLattice, EaSubgroup};
use crate::grp::small::SmallGroup;
use crate::grp::{odd_core, Element, Group, Subgroup, DEFAULT_CAP};
use crate::{Error, Result};

/// Largest 2-group accepted by the connectivity test.
pub const CONNECTIVITY_LIMIT: usize = 1 << 13;
/// Largest `|G|` accepted by [`gamma_sk`].
pub const GENERATION_LIMIT: u128 = 1_000_000;
/// Largest `|G|` accepted by the balance computations.
pub const BALANCE_LIMIT: u128 = 100_000;

/// The containment graph on elementary abelian subgroups of rank `>= k`.
#[derive(Clone, Debug)]
pub struct ConnectivityReport {
    pub k: usize,
    pub vertices: usize,
    pub components: usize,
    /// Component count from a separate union-find pass.
    pub union_find_components: usize,
    /// A path between the first and the last vertex, when one exists.
    pub witness: Option<Vec<usize>>,
    lattice: EaLattice,
    adjacency: Vec<Vec<usize>>,
}

impl ConnectivityReport {
    pub fn is_connected(&self) -> bool {
        self.components <= 1
    }

    pub fn vertex(&self, i: usize) -> &EaSubgroup {
        &self.lattice.subgroups[i]
    }

    pub fn lattice(&self) -> &EaLattice {
        &self.lattice
    }

    /// Vertices along a shortest chain from `a` to `b`, each containing or
    /// contained in the next.
    pub fn path(&self, a: usize, b: usize) -> Option<Vec<usize>> {
        let n = self.vertices;
        if a >= n || b >= n {
            return None;
        }
        let mut prev = vec![usize::MAX; n];
        prev[a] = a;
        let mut queue = VecDeque::from([a]);
        while let Some(v) = queue.pop_front() {
            if v == b {
                let mut out = vec![b];
                let mut x = b;
                while x != a {
                    x = prev[x];
                    out.push(x);
                }
                out.reverse();
                return Some(out);
            }
            for &w in &self.adjacency[v] {
                if prev[w] == usize::MAX {
                    prev[w] = v;
                    queue.push_back(w);
                }
            }
        }
        None
    }
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// k-connectivity of a 2-group given as a [`SmallGroup`].
pub fn k_connected_small(sg: &SmallGroup, k: usize) -> Result<ConnectivityReport> {
    if sg.order() > CONNECTIVITY_LIMIT {
        return Err(Error::SizeCap(format!("2-group of order {} above {CONNECTIVITY_LIMIT}", sg.order())));
    }
    let lattice = elementary_abelian(sg, k)?;
    let n = lattice.subgroups.len();
    let mut adjacency = vec![Vec::new(); n];
    for &(a, b) in &lattice.covers {
        adjacency[a].push(b);
        adjacency[b].push(a);
    }
    let mut comp = vec![usize::MAX; n];
    let mut components = 0;
    for start in 0..n {
        if comp[start] != usize::MAX {
            continue;
        }
        comp[start] = components;
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for &w in &adjacency[v] {
                if comp[w] == usize::MAX {
                    comp[w] = components;
                    stack.push(w);
                }
            }
        }
        components += 1;
    }
    let mut parent: Vec<usize> = (0..n).collect();
    for &(a, b) in &lattice.covers {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra.max(rb)] = ra.min(rb);
        }
    }
    let union_find_components = (0..n).filter(|&i| find(&mut parent, i) == i).count();
    if union_find_components != components {
        return Err(Error::Internal(format!(
            "{components} components by search but {union_find_components} by union-find"
        )));
    }
    let mut report = ConnectivityReport {
        k,
        vertices: n,
        components,
        union_find_components,
        witness: None,
        lattice,
        adjacency,
    };
    if n > 0 {
        report.witness = report.path(0, n - 1);
    }
    Ok(report)
}

/// k-connectivity of a concrete 2-group.
pub fn k_connected(p: &Subgroup, k: usize) -> Result<ConnectivityReport> {
    k_connected_small(&SmallGroup::from_subgroup(p)?, k)
}

/// Whether the 2-group has a normal elementary abelian subgroup of rank at
/// least `2^(k-1) + 1`.
pub fn normal_ea_test_small(sg: &SmallGroup, k: usize) -> Result<bool> {
    let need = (1usize << k.saturating_sub(1)) + 1;
    if (1usize << need.min(63)) > sg.order() {
        return Ok(false);
    }
    let lattice = elementary_abelian(sg, need)?;
    let all = sg.all();
    Ok(lattice.subgroups.iter().any(|e| sg.is_normal(&e.elements, &all)))
}

pub fn normal_ea_test(p: &Subgroup, k: usize) -> Result<bool> {
    normal_ea_test_small(&SmallGroup::from_subgroup(p)?, k)
}

fn subgroup_of(s: &Subgroup, sg: &SmallGroup, idx: &[u16]) -> Subgroup {
    let elems: Vec<Element> = idx.iter().map(|&i| sg.element(i).unwrap().clone()).collect();
    Subgroup::from_closed_elements(s.ambient(), elems)
}

/// `Γ_{S,k}(G)`: the join of `N_G(T)` over `T <= S` of 2-rank at least `k`.
/// Normalizers are taken for one `T` per `S`-class; the join contains `S`
/// whenever any `T` qualifies, so it is closed under `S`-conjugation.
pub fn gamma_sk(g: &Group, s: &Subgroup, k: usize) -> Result<Subgroup> {
    let order = g.order()?;
    if order > GENERATION_LIMIT {
        return Err(Error::SizeCap(format!("|G| = {order} above {GENERATION_LIMIT}")));
    }
    g.enumerate_with_cap(DEFAULT_CAP)?;
    let sg = SmallGroup::from_subgroup(s)?;
    let subs = subgroups(&sg)?;
    let rank_k: Vec<_> = elementary_abelian(&sg, k)?
        .subgroups
        .into_iter()
        .filter(|e| e.rank() == k)
        .map(|e| sg.bits(&e.elements))
        .collect();
    let amb = g.ambient();
    let mut gamma = Subgroup::trivial(amb);
    let mut seen: rustc_hash::FxHashSet<Vec<u16>> = Default::default();
    let all = sg.all();
    for t in &subs {
        if seen.contains(t) {
            continue;
        }
        let tb = sg.bits(t);
        if !rank_k.iter().any(|e| e.is_subset(&tb)) {
            continue;
        }
        for &x in &all {
            seen.insert(sg.conj_set(t, x));
        }
        let n = normalizer(g, &subgroup_of(s, &sg, t))?;
        if !n.gens().iter().all(|x| gamma.contains(x)) {
            gamma = gamma.join(&n)?;
        }
    }
    Ok(gamma)
}

pub fn is_k_generated(g: &Group, s: &Subgroup, k: usize) -> Result<bool> {
    Ok(gamma_sk(g, s, k)?.order() as u128 == g.order()?)
}

fn check_balance_size(g: &Group) -> Result<()> {
    let order = g.order()?;
    if order > BALANCE_LIMIT {
        return Err(Error::SizeCap(format!("|G| = {order} above {BALANCE_LIMIT}")));
    }
    g.enumerate_with_cap(DEFAULT_CAP)?;
    Ok(())
}

fn check_elementary_abelian(g: &Group, a: &Subgroup) -> Result<usize> {
    let amb = g.ambient();
    let els = a.elements();
    if !els.iter().all(|x| amb.is_identity(&amb.mul(x, x))) {
        return Err(Error::Precondition("subgroup is not elementary abelian".into()));
    }
    Ok(els.len().trailing_zeros() as usize)
}

/// `O(C_G(a))`, memoised per involution.
struct OddCores<'a> {
    g: &'a Group,
    cache: FxHashMap<Element, (Subgroup, Subgroup)>,
}

impl<'a> OddCores<'a> {
    fn new(g: &'a Group) -> Self {
        OddCores {
            g,
            cache: FxHashMap::default(),
        }
    }

    /// `(C_G(a), O(C_G(a)))`.
    fn get(&mut self, a: &Element) -> Result<&(Subgroup, Subgroup)> {
        if !self.cache.contains_key(a) {
            let c = centralizer(self.g, std::slice::from_ref(a))?;
            let cg = c.to_group("C_G(a)");
            let o = odd_core(&cg)?;
            self.cache.insert(a.clone(), (c, o));
        }
        Ok(&self.cache[a])
    }
}

fn delta_with(cores: &mut OddCores, e: &Subgroup) -> Result<Subgroup> {
    let amb = cores.g.ambient().clone();
    let mut out: Option<Subgroup> = None;
    for a in e.elements() {
        if amb.is_identity(a) {
            continue;
        }
        let o = cores.get(a)?.1.clone();
        out = Some(match out {
            None => o,
            Some(d) => d.intersection(&o),
        });
    }
    out.ok_or_else(|| Error::Precondition("E must have rank at least 1".into()))
}

/// `Δ_G(E)`: the intersection of `O(C_G(a))` over `a` in `E#`.
pub fn delta_e(g: &Group, e: &Subgroup) -> Result<Subgroup> {
    check_balance_size(g)?;
    check_elementary_abelian(g, e)?;
    delta_with(&mut OddCores::new(g), e)
}

/// Rank-`k` subgroups of an elementary abelian group.
fn rank_k_subgroups(a: &Subgroup, k: usize) -> Result<Vec<Subgroup>> {
    let sg = SmallGroup::from_subgroup(a)?;
    Ok(elementary_abelian(&sg, k)?
        .subgroups
        .into_iter()
        .filter(|e| e.rank() == k)
        .map(|e| subgroup_of(a, &sg, &e.elements))
        .collect())
}

#[derive(Clone, Debug)]
pub struct Violation {
    pub e: Vec<Element>,
    pub a: Element,
    pub element: Element,
}

#[derive(Clone, Debug)]
pub struct BalanceReport {
    pub k: usize,
    pub rank: usize,
    /// Pairs `(E, a)` examined.
    pub checked: usize,
    pub violation: Option<Violation>,
}

impl BalanceReport {
    pub fn is_balanced(&self) -> bool {
        self.violation.is_none()
    }
}

fn balance_with(cores: &mut OddCores, a: &Subgroup, k: usize, rank: usize) -> Result<BalanceReport> {
    let amb = cores.g.ambient().clone();
    let mut checked = 0;
    for e in rank_k_subgroups(a, k)? {
        let d = delta_with(cores, &e)?;
        for x in a.elements() {
            if amb.is_identity(x) {
                continue;
            }
            checked += 1;
            let (c, o) = cores.get(x)?;
            if let Some(y) = d.elements().iter().find(|y| c.contains(y) && !o.contains(y)) {
                let v = Violation {
                    e: e.elements().to_vec(),
                    a: x.clone(),
                    element: y.clone(),
                };
                return Ok(BalanceReport {
                    k,
                    rank,
                    checked,
                    violation: Some(v),
                });
            }
        }
    }
    Ok(BalanceReport {
        k,
        rank,
        checked,
        violation: None,
    })
}

/// Checks `Δ_G(E) ∩ C_G(a) <= O(C_G(a))` for all rank-`k` `E <= A` and
/// `a` in `A#`, stopping at the first violation.
pub fn is_k_balanced(g: &Group, a: &Subgroup, k: usize) -> Result<BalanceReport> {
    check_balance_size(g)?;
    let rank = check_elementary_abelian(g, a)?;
    if rank < k {
        return Err(Error::Precondition(format!("m(A) = {rank} is below k = {k}")));
    }
    balance_with(&mut OddCores::new(g), a, k, rank)
}

/// `W_A`: the join of `Δ_G(E)` over rank-`k` `E <= A`. When `G` is
/// k-balanced with respect to `A` and `m(A) >= k + 2`, the result is checked
/// to have odd order.
pub fn w_closure(g: &Group, a: &Subgroup, k: usize) -> Result<Subgroup> {
    check_balance_size(g)?;
    let rank = check_elementary_abelian(g, a)?;
    if rank < k + 1 {
        return Err(Error::Precondition(format!("m(A) = {rank} is below k + 1 = {}", k + 1)));
    }
    let mut cores = OddCores::new(g);
    let mut w = Subgroup::trivial(g.ambient());
    for e in rank_k_subgroups(a, k)? {
        let d = delta_with(&mut cores, &e)?;
        if !d.gens().iter().all(|x| w.contains(x)) {
            w = w.join(&d)?;
        }
    }
    if rank >= k + 2 && balance_with(&mut cores, a, k, rank)?.is_balanced() && w.order() % 2 == 0 {
        return Err(Error::Internal(format!("W_A has even order {} in a balanced case", w.order())));
    }
    Ok(w)
}

/// A table of the direct product `A × B`, with `(a, b)` numbered
/// `a * |B| + b`.
pub fn direct_product(a: &SmallGroup, b: &SmallGroup) -> Result<SmallGroup> {
    let (na, nb) = (a.order(), b.order());
    let n = na * nb;
    let mut table = vec![0u16; n * n];
    for x in 0..n {
        let (xa, xb) = ((x / nb) as u16, (x % nb) as u16);
        for y in 0..n {
            let (ya, yb) = ((y / nb) as u16, (y % nb) as u16);
            table[x * n + y] = (a.mul(xa, ya) as usize * nb + b.mul(xb, yb) as usize) as u16;
        }
    }
    SmallGroup::from_table(n, table)
}

/// Cyclic group of order `n` as a table.
pub fn cyclic(n: usize) -> Result<SmallGroup> {
    let table = (0..n * n).map(|i| ((i / n + i % n) % n) as u16).collect();
    SmallGroup::from_table(n, table)
}

/// Dihedral group of order `n` (`n >= 4`), elements `r^i s^j` numbered
/// `2i + j`.
pub fn dihedral(n: usize) -> Result<SmallGroup> {
    let m = n / 2;
    let mut table = vec![0u16; n * n];
    for x in 0..n {
        let (i, j) = (x / 2, x % 2);
        for y in 0..n {
            let (k, l) = (y / 2, y % 2);
            // r^i s^j r^k s^l = r^(i ± k) s^(j + l)
            let r = if j == 0 { (i + k) % m } else { (i + m - k) % m };
            table[x * n + y] = (2 * r + (j + l) % 2) as u16;
        }
    }
    SmallGroup::from_table(n, table)
}

/// A fixed collection of 2-groups of order at most `max_order`: cyclic,
/// elementary abelian, dihedral, quaternion, semidihedral and wreathed
/// Sylow subgroups of small classical groups, and direct products.
pub fn two_group_library(max_order: usize) -> Result<Vec<(String, SmallGroup)>> {
    use crate::classical::{sylow2, GroupSpec};
    let mut base: Vec<(String, SmallGroup)> = Vec::new();
    for m in 1..=6 {
        base.push((format!("C{}", 1 << m), cyclic(1 << m)?));
    }
    for m in 3..=6 {
        base.push((format!("D{}", 1 << m), dihedral(1 << m)?));
    }
    for spec in ["SL(2,3)", "SL(2,7)", "SL(2,17)", "GL(2,3)", "GL(2,7)", "GL(2,5)", "SU(3,3)", "PSL(3,3)"] {
        let (_, s) = sylow2(&spec.parse::<GroupSpec>()?)?;
        base.push((format!("Syl2({spec})"), SmallGroup::from_subgroup(&s)?));
    }
    let c2 = cyclic(2)?;
    let mut out: Vec<(String, SmallGroup)> = Vec::new();
    let mut e = cyclic(2)?;
    while e.order() * 2 <= max_order {
        e = direct_product(&e, &c2)?;
        out.push((format!("E{}", e.order()), direct_product(&cyclic(1)?, &e)?));
    }
    let factors: Vec<(String, SmallGroup)> = vec![
        ("C2".into(), cyclic(2)?),
        ("C4".into(), cyclic(4)?),
        ("E4".into(), direct_product(&c2, &c2)?),
    ];
    let mut products = Vec::new();
    for (bn, b) in &base {
        for (fname, f) in &factors {
            if b.order() * f.order() <= max_order {
                products.push((format!("{bn}x{fname}"), direct_product(b, f)?));
            }
        }
    }
    let small: Vec<&(String, SmallGroup)> = base.iter().filter(|(_, g)| g.order() == 8).collect();
    for (i, (an, a)) in small.iter().map(|p| (&p.0, &p.1)).enumerate() {
        for (bn, b) in small.iter().skip(i).map(|p| (&p.0, &p.1)) {
            if a.order() * b.order() <= max_order {
                products.push((format!("{an}x{bn}"), direct_product(a, b)?));
            }
        }
    }
    out.extend(base.into_iter().filter(|(_, g)| g.order() <= max_order));
    out.extend(products);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classical::{generation_subgroups, sylow2, GroupSpec, Sign};
    use crate::grp::{Ambient, Group};

    fn perm_group(degree: usize, gens: &[&[&[usize]]]) -> Group {
        let amb = Ambient::permutations(degree);
        let gens: Vec<Element> = gens.iter().map(|c| amb.perm(c).unwrap()).collect();
        let g = Group::new(amb, gens, "G").unwrap();
        g.enumerate().unwrap();
        g
    }

    fn sub(g: &Group, gens: &[&[&[usize]]]) -> Subgroup {
        let gens: Vec<Element> = gens.iter().map(|c| g.ambient().perm(c).unwrap()).collect();
        Subgroup::generated(g.ambient(), &gens, DEFAULT_CAP).unwrap()
    }

    #[test]
    fn connectivity_examples() {
        let e16 = two_group_library(16).unwrap().into_iter().find(|(n, _)| n == "E16").unwrap().1;
        let r = k_connected_small(&e16, 3).unwrap();
        assert_eq!(r.vertices, 16);
        assert!(r.is_connected());
        assert_eq!(r.witness.as_ref().unwrap().first(), Some(&0));
        let q8 = SmallGroup::from_subgroup(&sylow2(&"SL(2,3)".parse().unwrap()).unwrap().1).unwrap();
        let r = k_connected_small(&q8, 2).unwrap();
        assert_eq!(r.vertices, 0);
        assert!(r.is_connected());
    }

    #[test]
    fn normal_ea_examples() {
        let d8 = dihedral(8).unwrap();
        let d8c2 = direct_product(&d8, &cyclic(2).unwrap()).unwrap();
        assert!(normal_ea_test_small(&d8c2, 2).unwrap());
        assert!(k_connected_small(&d8c2, 2).unwrap().is_connected());
        let q8 = SmallGroup::from_subgroup(&sylow2(&"SL(2,3)".parse().unwrap()).unwrap().1).unwrap();
        assert!(!normal_ea_test_small(&q8, 2).unwrap());
        let lib = two_group_library(32).unwrap();
        let e32 = &lib.iter().find(|(n, _)| n == "E32").unwrap().1;
        assert!(normal_ea_test_small(e32, 3).unwrap());
    }

    #[test]
    fn generation_examples() {
        for spec in ["SL(3,3)", "SU(3,3)"] {
            let (g, s) = sylow2(&spec.parse::<GroupSpec>().unwrap()).unwrap();
            assert!(is_k_generated(&g, &s, 2).unwrap(), "{spec}");
        }
        let d = generation_subgroups(3, 3, Sign::Plus).unwrap();
        let j = d.blocks[0].join(&d.blocks[1]).unwrap();
        assert_eq!(j.order(), 5616);
    }

    #[test]
    fn delta_examples() {
        // C3 x C2 x C2
        let g = perm_group(7, &[&[&[1, 2, 3]], &[&[4, 5]], &[&[6, 7]]]);
        let e = sub(&g, &[&[&[4, 5]], &[&[6, 7]]]);
        assert_eq!(delta_e(&g, &e).unwrap().order(), 3);
        assert!(is_k_balanced(&g, &e, 1).unwrap().is_balanced());
        // S3 x C2
        let g = perm_group(5, &[&[&[1, 2, 3]], &[&[1, 2]], &[&[4, 5]]]);
        let e = sub(&g, &[&[&[4, 5]]]);
        assert_eq!(delta_e(&g, &e).unwrap().order(), 3);
        // A4
        let g = perm_group(4, &[&[&[1, 2, 3]], &[&[1, 2], &[3, 4]]]);
        let v = sub(&g, &[&[&[1, 2], &[3, 4]], &[&[1, 3], &[2, 4]]]);
        assert!(is_k_balanced(&g, &v, 1).unwrap().is_balanced());
        // C3 x E8
        let g = perm_group(9, &[&[&[1, 2, 3]], &[&[4, 5]], &[&[6, 7]], &[&[8, 9]]]);
        let a = sub(&g, &[&[&[4, 5]], &[&[6, 7]], &[&[8, 9]]]);
        assert_eq!(w_closure(&g, &a, 1).unwrap().order(), 3);
    }

    #[test]
    fn library_orders() {
        let lib = two_group_library(64).unwrap();
        assert!(lib.len() >= 30);
        assert!(lib.iter().all(|(_, g)| g.order() <= 64 && g.order().is_power_of_two()));
    }
}
