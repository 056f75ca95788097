use std::sync::Arc;

use fixedbitset::FixedBitSet;
use rustc_hash::FxHashMap;

use super::element::{Ambient, Element};
use super::group::Subgroup;
use crate::{Error, Result};

/// Groups of order up to this bound get a full multiplication table.
pub const TABLE_LIMIT: usize = 4096;
/// Largest order a [`SmallGroup`] accepts.
pub const SMALL_LIMIT: usize = 1 << 13;

struct Concrete {
    ambient: Arc<Ambient>,
    elements: Vec<Element>,
    index: FxHashMap<Element, u16>,
}

/// A small group with elements numbered `0..n`: either a concrete subgroup
/// (numbered in canonical element order) or an abstract table.
pub struct SmallGroup {
    n: usize,
    identity: u16,
    inv: Vec<u16>,
    orders: Vec<u32>,
    table: Option<Vec<u16>>,
    concrete: Option<Concrete>,
}

impl std::fmt::Debug for SmallGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "SmallGroup(order {})", self.n)
    }
}

impl SmallGroup {
    pub fn from_subgroup(h: &Subgroup) -> Result<SmallGroup> {
        let n = h.order();
        if n > SMALL_LIMIT {
            return Err(Error::SizeCap(format!("group of order {n} above {SMALL_LIMIT}")));
        }
        let amb = h.ambient().clone();
        let elements = h.elements().to_vec();
        let index: FxHashMap<Element, u16> =
            elements.iter().enumerate().map(|(i, x)| (x.clone(), i as u16)).collect();
        let identity = index[&amb.identity()];
        let mut sg = SmallGroup {
            n,
            identity,
            inv: Vec::new(),
            orders: Vec::new(),
            table: None,
            concrete: Some(Concrete {
                ambient: amb.clone(),
                elements,
                index,
            }),
        };
        if n <= TABLE_LIMIT {
            let c = sg.concrete.as_ref().unwrap();
            let mut table = vec![0u16; n * n];
            for i in 0..n {
                for j in 0..n {
                    let p = amb.mul(&c.elements[i], &c.elements[j]);
                    table[i * n + j] = *c
                        .index
                        .get(&p)
                        .ok_or_else(|| Error::Precondition("element set is not closed".into()))?;
                }
            }
            sg.table = Some(table);
        }
        sg.finish()?;
        Ok(sg)
    }

    /// From a multiplication table `table[i*n + j] = i*j`.
    pub fn from_table(n: usize, table: Vec<u16>) -> Result<SmallGroup> {
        if table.len() != n * n || n == 0 || n > SMALL_LIMIT {
            return Err(Error::Precondition("bad multiplication table".into()));
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|j| table[e * n + j] as usize == j))
            .ok_or_else(|| Error::Precondition("table has no identity".into()))?;
        let mut sg = SmallGroup {
            n,
            identity: identity as u16,
            inv: Vec::new(),
            orders: Vec::new(),
            table: Some(table),
            concrete: None,
        };
        sg.finish()?;
        Ok(sg)
    }

    fn finish(&mut self) -> Result<()> {
        let n = self.n;
        let e = self.identity;
        let mut inv = vec![u16::MAX; n];
        let mut orders = vec![0u32; n];
        for i in 0..n {
            let mut x = i as u16;
            let mut k = 1u32;
            let mut prev = e;
            while x != e {
                prev = x;
                x = self.mul(x, i as u16);
                k += 1;
                if k as usize > n {
                    return Err(Error::Precondition("table is not a group".into()));
                }
            }
            orders[i] = k;
            inv[i] = if k == 1 { e } else { prev };
        }
        self.inv = inv;
        self.orders = orders;
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn identity(&self) -> u16 {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: u16, b: u16) -> u16 {
        match &self.table {
            Some(t) => t[a as usize * self.n + b as usize],
            None => {
                let c = self.concrete.as_ref().unwrap();
                let p = c.ambient.mul(&c.elements[a as usize], &c.elements[b as usize]);
                c.index[&p]
            }
        }
    }

    #[inline]
    pub fn inv(&self, a: u16) -> u16 {
        self.inv[a as usize]
    }

    /// `g^-1 x g`.
    #[inline]
    pub fn conj(&self, x: u16, g: u16) -> u16 {
        self.mul(self.mul(self.inv(g), x), g)
    }

    pub fn commutes(&self, a: u16, b: u16) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    pub fn element_order(&self, a: u16) -> u32 {
        self.orders[a as usize]
    }

    pub fn pow(&self, a: u16, e: u64) -> u16 {
        let k = e % self.orders[a as usize] as u64;
        let mut r = self.identity;
        for _ in 0..k {
            r = self.mul(r, a);
        }
        r
    }

    pub fn is_concrete(&self) -> bool {
        self.concrete.is_some()
    }

    pub fn ambient(&self) -> Option<&Arc<Ambient>> {
        self.concrete.as_ref().map(|c| &c.ambient)
    }

    pub fn element(&self, i: u16) -> Option<&Element> {
        self.concrete.as_ref().map(|c| &c.elements[i as usize])
    }

    pub fn index_of(&self, x: &Element) -> Option<u16> {
        self.concrete.as_ref().and_then(|c| c.index.get(x).copied())
    }

    pub fn all(&self) -> Vec<u16> {
        (0..self.n as u16).collect()
    }

    /// Closure of the given elements, sorted.
    pub fn closure(&self, gens: &[u16]) -> Vec<u16> {
        let mut seen = FixedBitSet::with_capacity(self.n);
        let mut out = vec![self.identity];
        seen.insert(self.identity as usize);
        let mut i = 0;
        while i < out.len() {
            let x = out[i];
            for &g in gens {
                let y = self.mul(x, g);
                if !seen.contains(y as usize) {
                    seen.insert(y as usize);
                    out.push(y);
                }
            }
            i += 1;
        }
        out.sort_unstable();
        out
    }

    /// Closure of `base` (a subgroup, sorted) and `extra`.
    pub fn join(&self, base: &[u16], extra: &[u16]) -> Vec<u16> {
        let mut gens = self.generators(base);
        gens.extend_from_slice(extra);
        self.closure(&gens)
    }

    pub fn bits(&self, elems: &[u16]) -> FixedBitSet {
        let mut b = FixedBitSet::with_capacity(self.n);
        for &x in elems {
            b.insert(x as usize);
        }
        b
    }

    /// A generating set of the subgroup `elems`, picked greedily.
    pub fn generators(&self, elems: &[u16]) -> Vec<u16> {
        let mut gens = Vec::new();
        let mut have = self.bits(&[self.identity]);
        let mut count = 1;
        for &x in elems {
            if count == elems.len() {
                break;
            }
            if have.contains(x as usize) {
                continue;
            }
            gens.push(x);
            let c = self.closure(&gens);
            count = c.len();
            have = self.bits(&c);
        }
        gens
    }

    pub fn is_normal(&self, sub: &[u16], within: &[u16]) -> bool {
        let b = self.bits(sub);
        let sg = self.generators(sub);
        self.generators(within)
            .iter()
            .all(|&g| sg.iter().all(|&h| b.contains(self.conj(h, g) as usize)))
    }

    /// Conjugate of a subgroup, sorted.
    pub fn conj_set(&self, sub: &[u16], g: u16) -> Vec<u16> {
        let mut v: Vec<u16> = sub.iter().map(|&x| self.conj(x, g)).collect();
        v.sort_unstable();
        v
    }

    pub fn center(&self) -> Vec<u16> {
        let gens = self.generators(&self.all());
        (0..self.n as u16).filter(|&x| gens.iter().all(|&g| self.commutes(x, g))).collect()
    }

    /// Centralizer of a set of elements, sorted.
    pub fn centralizer(&self, xs: &[u16]) -> Vec<u16> {
        (0..self.n as u16).filter(|&y| xs.iter().all(|&x| self.commutes(x, y))).collect()
    }

    /// Quotient by a normal subgroup, with a map from elements to cosets.
    /// Cosets are numbered by their least element.
    pub fn quotient(&self, normal: &[u16]) -> Result<(SmallGroup, Vec<u16>)> {
        if !self.is_normal(normal, &self.all()) {
            return Err(Error::Precondition("subgroup is not normal".into()));
        }
        let mut coset = vec![u16::MAX; self.n];
        let mut reps = Vec::new();
        for x in 0..self.n as u16 {
            if coset[x as usize] != u16::MAX {
                continue;
            }
            let id = reps.len() as u16;
            reps.push(x);
            for &h in normal {
                coset[self.mul(h, x) as usize] = id;
            }
        }
        let m = reps.len();
        let mut table = vec![0u16; m * m];
        for i in 0..m {
            for j in 0..m {
                table[i * m + j] = coset[self.mul(reps[i], reps[j]) as usize];
            }
        }
        Ok((SmallGroup::from_table(m, table)?, coset))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quotient_of_d8_by_center() {
        let amb = Ambient::permutations(4);
        let d8 = Subgroup::generated(
            &amb,
            &[amb.perm(&[&[1, 2, 3, 4]]).unwrap(), amb.perm(&[&[1, 3]]).unwrap()],
            100,
        )
        .unwrap();
        let sg = SmallGroup::from_subgroup(&d8).unwrap();
        let z = sg.center();
        assert_eq!(z.len(), 2);
        let (q, map) = sg.quotient(&z).unwrap();
        assert_eq!(q.order(), 4);
        assert!((0..4u16).all(|x| q.element_order(x) <= 2));
        assert_eq!(map.len(), 8);
    }
}
