use std::fmt;
use std::sync::{Arc, OnceLock};

use indexmap::IndexSet;
use rustc_hash::{FxBuildHasher, FxHashSet};

use super::classes::ClassData;
use super::element::{Ambient, Element};
use crate::{Error, Result};

/// Default bound on the number of elements a closure may produce.
pub const DEFAULT_CAP: usize = 10_000_000;

pub(crate) type ElementSet = IndexSet<Element, FxBuildHasher>;

/// A complete element store. Indices are stable: BFS layer order from the
/// identity, then insertion order within a layer.
#[derive(Clone)]
pub struct Enumeration {
    set: ElementSet,
}

impl Enumeration {
    pub(crate) fn from_set(set: ElementSet) -> Enumeration {
        Enumeration { set }
    }

    pub fn len(&self) -> usize {
        self.set.len()
    }

    pub fn is_empty(&self) -> bool {
        self.set.is_empty()
    }

    pub fn get(&self, i: usize) -> &Element {
        &self.set[i]
    }

    pub fn index_of(&self, x: &Element) -> Option<usize> {
        self.set.get_index_of(x)
    }

    pub fn contains(&self, x: &Element) -> bool {
        self.set.contains(x)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Element> {
        self.set.iter()
    }
}

/// BFS closure of `gens` under right multiplication.
pub(crate) fn bfs_closure(amb: &Ambient, gens: &[Element], cap: usize) -> Result<ElementSet> {
    let mut set = ElementSet::default();
    set.insert(amb.identity());
    let mut i = 0;
    let mut fresh = Vec::with_capacity(gens.len());
    while i < set.len() {
        {
            let x = &set[i];
            for g in gens {
                let y = amb.mul(x, g);
                if !set.contains(&y) {
                    fresh.push(y);
                }
            }
        }
        for y in fresh.drain(..) {
            if set.contains(&y) {
                continue;
            }
            if set.len() >= cap {
                return Err(Error::CapExceeded {
                    found: set.len(),
                    cap,
                });
            }
            set.insert(y);
        }
        i += 1;
    }
    Ok(set)
}

fn check_gens(amb: &Ambient, gens: &[Element]) -> Result<Vec<Element>> {
    gens.iter()
        .map(|g| {
            amb.validate(g)?;
            Ok(amb.canon(g.clone()))
        })
        .collect()
}

/// A finitely generated group inside an [`Ambient`], with an optional
/// complete enumeration and conjugacy-class data filled on demand.
#[derive(Clone)]
pub struct Group {
    ambient: Arc<Ambient>,
    gens: Vec<Element>,
    descriptor: String,
    order_hint: Option<u128>,
    enumeration: OnceLock<Arc<Enumeration>>,
    pub(crate) classes: OnceLock<Arc<ClassData>>,
}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Group")
            .field("descriptor", &self.descriptor)
            .field("gens", &self.gens.len())
            .field("order", &self.order_hint)
            .field("enumerated", &self.is_enumerated())
            .finish()
    }
}

impl Group {
    /// A lazily enumerated group. Generators are validated and reduced to
    /// canonical representatives.
    pub fn new(ambient: Arc<Ambient>, gens: Vec<Element>, descriptor: impl Into<String>) -> Result<Group> {
        let gens = check_gens(&ambient, &gens)?;
        Ok(Group {
            ambient,
            gens,
            descriptor: descriptor.into(),
            order_hint: None,
            enumeration: OnceLock::new(),
            classes: OnceLock::new(),
        })
    }

    /// Records a known order, used when the group is never enumerated.
    pub fn with_order(mut self, order: u128) -> Group {
        self.order_hint = Some(order);
        self
    }

    pub fn ambient(&self) -> &Arc<Ambient> {
        &self.ambient
    }

    pub fn gens(&self) -> &[Element] {
        &self.gens
    }

    pub fn descriptor(&self) -> &str {
        &self.descriptor
    }

    pub fn order_hint(&self) -> Option<u128> {
        self.order_hint
    }

    pub fn identity(&self) -> Element {
        self.ambient.identity()
    }

    pub fn is_enumerated(&self) -> bool {
        self.enumeration.get().is_some()
    }

    pub fn enumerate(&self) -> Result<&Arc<Enumeration>> {
        self.enumerate_with_cap(DEFAULT_CAP)
    }

    pub fn enumerate_with_cap(&self, cap: usize) -> Result<&Arc<Enumeration>> {
        if let Some(e) = self.enumeration.get() {
            return Ok(e);
        }
        if let Some(o) = self.order_hint {
            if o > cap as u128 {
                return Err(Error::OrderCap {
                    descriptor: self.descriptor.clone(),
                    order: o,
                    cap: cap as u128,
                });
            }
        }
        let set = bfs_closure(&self.ambient, &self.gens, cap)?;
        if let Some(o) = self.order_hint {
            if o != set.len() as u128 {
                return Err(Error::Internal(format!(
                    "{} enumerated to {} elements, expected {o}",
                    self.descriptor,
                    set.len()
                )));
            }
        }
        let _ = self.enumeration.set(Arc::new(Enumeration::from_set(set)));
        Ok(self.enumeration.get().unwrap())
    }

    /// The enumeration if already present.
    pub fn enumeration(&self) -> Result<&Arc<Enumeration>> {
        self.enumeration
            .get()
            .ok_or_else(|| Error::NotEnumerated(self.descriptor.clone()))
    }

    /// Installs an externally produced enumeration (e.g. from the cache).
    pub(crate) fn install_enumeration(&self, e: Enumeration) -> Result<()> {
        if let Some(o) = self.order_hint {
            if o != e.len() as u128 {
                return Err(Error::Integrity(format!(
                    "{}: cached payload has {} elements, expected {o}",
                    self.descriptor,
                    e.len()
                )));
            }
        }
        let _ = self.enumeration.set(Arc::new(e));
        Ok(())
    }

    /// Exact order: the enumeration size, else the recorded order, else
    /// enumerates.
    pub fn order(&self) -> Result<u128> {
        if let Some(e) = self.enumeration.get() {
            return Ok(e.len() as u128);
        }
        if let Some(o) = self.order_hint {
            return Ok(o);
        }
        Ok(self.enumerate()?.len() as u128)
    }

    /// Membership; enumerates if needed.
    pub fn contains(&self, x: &Element) -> Result<bool> {
        Ok(self.enumerate()?.contains(x))
    }

    /// The whole group as a [`Subgroup`] of itself.
    pub fn as_subgroup(&self) -> Result<Subgroup> {
        let e = self.enumerate()?;
        let mut elements: Vec<Element> = e.iter().cloned().collect();
        elements.sort_unstable();
        Ok(Subgroup {
            ambient: self.ambient.clone(),
            gens: self.gens.clone(),
            elements: Arc::new(elements),
        })
    }

    pub fn mul(&self, a: &Element, b: &Element) -> Element {
        self.ambient.mul(a, b)
    }

    pub fn inv(&self, a: &Element) -> Element {
        self.ambient.inv(a)
    }

    pub fn conj(&self, x: &Element, g: &Element) -> Element {
        self.ambient.conj(x, g)
    }

    pub fn element_order(&self, x: &Element) -> u64 {
        self.ambient.order(x)
    }
}

/// BFS-closes `gens` and returns the enumerated group.
pub fn generate(ambient: Arc<Ambient>, gens: &[Element], cap: usize) -> Result<Group> {
    if cap > DEFAULT_CAP {
        return Err(Error::Precondition(format!("cap {cap} above {DEFAULT_CAP}")));
    }
    let g = Group::new(ambient, gens.to_vec(), "generated")?;
    g.enumerate_with_cap(cap)?;
    Ok(g)
}

/// A subgroup held as its sorted element list together with generators.
#[derive(Clone)]
pub struct Subgroup {
    ambient: Arc<Ambient>,
    gens: Vec<Element>,
    elements: Arc<Vec<Element>>,
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subgroup(order {}, gens {:?})", self.order(), self.gens)
    }
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.elements == other.elements
    }
}

impl Eq for Subgroup {}

impl Subgroup {
    pub fn generated(ambient: &Arc<Ambient>, gens: &[Element], cap: usize) -> Result<Subgroup> {
        let gens = check_gens(ambient, gens)?;
        let set = bfs_closure(ambient, &gens, cap)?;
        let mut elements: Vec<Element> = set.into_iter().collect();
        elements.sort_unstable();
        Ok(Subgroup {
            ambient: ambient.clone(),
            gens,
            elements: Arc::new(elements),
        })
    }

    pub fn trivial(ambient: &Arc<Ambient>) -> Subgroup {
        Subgroup {
            ambient: ambient.clone(),
            gens: Vec::new(),
            elements: Arc::new(vec![ambient.identity()]),
        }
    }

    /// From a set of elements that is already known to be closed. A small
    /// generating set is picked greedily in canonical order.
    pub fn from_closed_elements(ambient: &Arc<Ambient>, mut elements: Vec<Element>) -> Subgroup {
        elements.sort_unstable();
        elements.dedup();
        let gens = greedy_generators(ambient, &elements);
        Subgroup {
            ambient: ambient.clone(),
            gens,
            elements: Arc::new(elements),
        }
    }

    /// Like [`Subgroup::from_closed_elements`] but checks closure first.
    pub fn from_elements(ambient: &Arc<Ambient>, elements: Vec<Element>) -> Result<Subgroup> {
        let set: FxHashSet<&Element> = elements.iter().collect();
        if !set.contains(&ambient.identity()) {
            return Err(Error::Precondition("subset lacks the identity".into()));
        }
        for a in &elements {
            for b in &elements {
                if !set.contains(&ambient.mul(a, b)) {
                    return Err(Error::Precondition("subset is not closed".into()));
                }
            }
        }
        Ok(Subgroup::from_closed_elements(ambient, elements))
    }

    pub(crate) fn from_parts(ambient: Arc<Ambient>, gens: Vec<Element>, elements: Vec<Element>) -> Subgroup {
        debug_assert!(elements.windows(2).all(|w| w[0] < w[1]));
        Subgroup {
            ambient,
            gens,
            elements: Arc::new(elements),
        }
    }

    pub fn ambient(&self) -> &Arc<Ambient> {
        &self.ambient
    }

    pub fn gens(&self) -> &[Element] {
        &self.gens
    }

    /// Elements in canonical order.
    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, x: &Element) -> bool {
        self.elements.binary_search(x).is_ok()
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.order() <= other.order() && self.elements.iter().all(|x| other.contains(x))
    }

    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        let (small, big) = if self.order() <= other.order() { (self, other) } else { (other, self) };
        let elements: Vec<Element> = small.elements.iter().filter(|x| big.contains(x)).cloned().collect();
        Subgroup::from_closed_elements(&self.ambient, elements)
    }

    pub fn join(&self, other: &Subgroup) -> Result<Subgroup> {
        if other.is_subgroup_of(self) {
            return Ok(self.clone());
        }
        if self.is_subgroup_of(other) {
            return Ok(other.clone());
        }
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Subgroup::generated(&self.ambient, &gens, DEFAULT_CAP)
    }

    pub fn conjugate(&self, g: &Element) -> Subgroup {
        let gi = self.ambient.inv_raw(g);
        let mut elements: Vec<Element> =
            self.elements.iter().map(|x| self.ambient.conj_with(x, g, &gi)).collect();
        elements.sort_unstable();
        let gens = self.gens.iter().map(|x| self.ambient.conj_with(x, g, &gi)).collect();
        Subgroup {
            ambient: self.ambient.clone(),
            gens,
            elements: Arc::new(elements),
        }
    }

    /// `true` when the order is a power of two.
    pub fn is_two_group(&self) -> bool {
        self.order().is_power_of_two()
    }

    /// This subgroup as a standalone, already enumerated group.
    pub fn to_group(&self, descriptor: impl Into<String>) -> Group {
        let g = Group {
            ambient: self.ambient.clone(),
            gens: self.gens.clone(),
            descriptor: descriptor.into(),
            order_hint: Some(self.order() as u128),
            enumeration: OnceLock::new(),
            classes: OnceLock::new(),
        };
        let set: ElementSet = self.elements.iter().cloned().collect();
        let _ = g.enumeration.set(Arc::new(Enumeration::from_set(set)));
        g
    }
}

/// Picks generators in canonical order, skipping anything already generated.
pub(crate) fn greedy_generators(amb: &Arc<Ambient>, elements: &[Element]) -> Vec<Element> {
    let mut gens: Vec<Element> = Vec::new();
    let mut have: ElementSet = ElementSet::default();
    have.insert(amb.identity());
    for x in elements {
        if have.len() == elements.len() {
            break;
        }
        if have.contains(x) {
            continue;
        }
        gens.push(x.clone());
        have = bfs_closure(amb, &gens, DEFAULT_CAP).expect("subgroup closure within cap");
    }
    gens
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a4_from_three_cycles() {
        let amb = Ambient::permutations(4);
        let a = amb.perm(&[&[1, 2, 3]]).unwrap();
        let b = amb.perm(&[&[2, 3, 4]]).unwrap();
        let g = generate(amb.clone(), &[a, b], 100).unwrap();
        assert_eq!(g.order().unwrap(), 12);
    }

    #[test]
    fn empty_generators_give_trivial_group() {
        let amb = Ambient::permutations(3);
        let g = generate(amb, &[], 10).unwrap();
        assert_eq!(g.order().unwrap(), 1);
    }

    #[test]
    fn cap_reports_partial_count() {
        let amb = Ambient::permutations(5);
        let a = amb.perm(&[&[1, 2, 3, 4, 5]]).unwrap();
        let b = amb.perm(&[&[1, 2]]).unwrap();
        match generate(amb, &[a, b], 50) {
            Err(Error::CapExceeded { found, cap }) => {
                assert_eq!(cap, 50);
                assert_eq!(found, 50);
            }
            other => panic!("expected cap error, got {other:?}"),
        }
    }

    #[test]
    fn mixed_variants_rejected() {
        let amb = Ambient::permutations(3);
        let other = Ambient::permutations(4);
        let x = other.perm(&[&[1, 2]]).unwrap();
        assert!(matches!(generate(amb, &[x], 10), Err(Error::MixedVariants)));
    }

    #[test]
    fn closure_is_idempotent() {
        let amb = Ambient::permutations(4);
        let a = amb.perm(&[&[1, 2, 3, 4]]).unwrap();
        let b = amb.perm(&[&[1, 3]]).unwrap();
        let h = Subgroup::generated(&amb, &[a, b], 100).unwrap();
        let again = Subgroup::generated(&amb, h.elements(), 100).unwrap();
        assert_eq!(h, again);
        assert_eq!(h.order(), 8);
    }
}
