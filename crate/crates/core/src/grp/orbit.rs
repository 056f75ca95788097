use std::hash::Hash;

use indexmap::IndexSet;
use rustc_hash::FxBuildHasher;

use super::element::{Ambient, Element};
use super::group::{bfs_closure, ElementSet, Subgroup, DEFAULT_CAP};
use crate::{Error, Result};

const ROOT: u32 = u32::MAX;

/// An orbit under a right action of a generated group, with a Schreier
/// tree: each point remembers which point and generator produced it.
pub struct Orbit<T> {
    points: IndexSet<T, FxBuildHasher>,
    parent: Vec<(u32, u32)>,
}

impl<T: Clone + Eq + Hash> Orbit<T> {
    pub fn compute<F>(root: T, gens: &[Element], act: F, cap: usize) -> Result<Orbit<T>>
    where
        F: Fn(&T, usize) -> T,
    {
        let mut points: IndexSet<T, FxBuildHasher> = IndexSet::default();
        points.insert(root);
        let mut parent = vec![(ROOT, ROOT)];
        let mut i = 0;
        while i < points.len() {
            for j in 0..gens.len() {
                let y = act(&points[i], j);
                if !points.contains(&y) {
                    if points.len() >= cap {
                        return Err(Error::CapExceeded {
                            found: points.len(),
                            cap,
                        });
                    }
                    points.insert(y);
                    parent.push((i as u32, j as u32));
                }
            }
            i += 1;
        }
        Ok(Orbit { points, parent })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn point(&self, i: usize) -> &T {
        &self.points[i]
    }

    pub fn points(&self) -> impl Iterator<Item = &T> {
        self.points.iter()
    }

    pub fn position(&self, x: &T) -> Option<usize> {
        self.points.get_index_of(x)
    }

    /// Generator indices along the tree path from the root to point `i`.
    pub fn word(&self, mut i: usize) -> Vec<usize> {
        let mut w = Vec::new();
        while self.parent[i].0 != ROOT {
            let (p, g) = self.parent[i];
            w.push(g as usize);
            i = p as usize;
        }
        w.reverse();
        w
    }

    /// An element `u` with `root^u = point(i)`.
    pub fn transversal(&self, amb: &Ambient, gens: &[Element], i: usize) -> Element {
        let mut u = amb.identity();
        for g in self.word(i) {
            u = amb.mul(&u, &gens[g]);
        }
        u
    }

    /// All transversal elements, computed along the tree.
    pub fn transversals(&self, amb: &Ambient, gens: &[Element]) -> Vec<Element> {
        let mut out: Vec<Element> = Vec::with_capacity(self.len());
        out.push(amb.identity());
        for i in 1..self.len() {
            let (p, g) = self.parent[i];
            let u = amb.mul(&out[p as usize], &gens[g as usize]);
            out.push(u);
        }
        out
    }

    /// Point stabilizer via Schreier generators, stopping early once
    /// `target_order` (if known) is reached.
    pub fn stabilizer<F>(
        &self,
        amb: &std::sync::Arc<Ambient>,
        gens: &[Element],
        act: F,
        target_order: Option<u128>,
    ) -> Result<Subgroup>
    where
        F: Fn(&T, usize) -> T,
    {
        let reps = self.transversals(amb, gens);
        let mut stab_gens: Vec<Element> = Vec::new();
        let mut have: ElementSet = ElementSet::default();
        have.insert(amb.identity());
        'outer: for i in 0..self.len() {
            for (j, g) in gens.iter().enumerate() {
                if target_order.is_some_and(|t| have.len() as u128 >= t) {
                    break 'outer;
                }
                let y = act(&self.points[i], j);
                let k = self.position(&y).ok_or_else(|| {
                    Error::Internal("orbit not closed under the generators".into())
                })?;
                let s = amb.mul(&amb.mul_raw(&reps[i], g), &amb.inv_raw(&reps[k]));
                if !have.contains(&s) {
                    stab_gens.push(s);
                    have = bfs_closure(amb, &stab_gens, DEFAULT_CAP)?;
                }
            }
        }
        let mut elements: Vec<Element> = have.into_iter().collect();
        elements.sort_unstable();
        Ok(Subgroup::from_parts(amb.clone(), stab_gens, elements))
    }
}
