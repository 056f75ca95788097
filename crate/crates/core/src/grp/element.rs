use std::fmt;
use std::sync::Arc;

use smallvec::SmallVec;

use crate::gf::{Field, FieldElement};
use crate::{Error, Result};

/// A permutation of `{0, .., degree-1}` stored by its image sequence.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(pub(crate) SmallVec<[u8; 16]>);

impl Perm {
    pub fn identity(degree: usize) -> Perm {
        Perm((0..degree as u8).collect())
    }

    /// From 0-based images; fails unless the sequence is a bijection.
    pub fn from_images(images: &[usize]) -> Result<Perm> {
        let n = images.len();
        if n > 255 {
            return Err(Error::Precondition("permutation degree above 255".into()));
        }
        let mut seen = vec![false; n];
        for &i in images {
            if i >= n || seen[i] {
                return Err(Error::Precondition(format!(
                    "{images:?} is not a permutation"
                )));
            }
            seen[i] = true;
        }
        Ok(Perm(images.iter().map(|&i| i as u8).collect()))
    }

    /// From 1-based cycles, e.g. `&[&[1, 2, 3], &[4, 5]]`.
    pub fn from_cycles(degree: usize, cycles: &[&[usize]]) -> Result<Perm> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (k, &a) in cycle.iter().enumerate() {
                let b = cycle[(k + 1) % cycle.len()];
                if a == 0 || a > degree || b == 0 || b > degree || touched[a - 1] {
                    return Err(Error::Precondition(format!("bad cycle {cycle:?}")));
                }
                touched[a - 1] = true;
                images[a - 1] = b - 1;
            }
        }
        Perm::from_images(&images)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i] as usize
    }

    pub fn images(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().map(|&x| x as usize)
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Perm) -> Perm {
        Perm(self.0.iter().map(|&i| other.0[i as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut out: SmallVec<[u8; 16]> = SmallVec::from_elem(0, self.0.len());
        for (i, &j) in self.0.iter().enumerate() {
            out[j as usize] = i as u8;
        }
        Perm(out)
    }

    /// Lengths of the nontrivial cycles, in decreasing order.
    pub fn cycle_type(&self) -> Vec<usize> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for i in 0..n {
            if seen[i] {
                continue;
            }
            let mut len = 0;
            let mut j = i;
            while !seen[j] {
                seen[j] = true;
                j = self.apply(j);
                len += 1;
            }
            if len > 1 {
                out.push(len);
            }
        }
        out.sort_unstable_by(|a, b| b.cmp(a));
        out
    }

    pub fn is_even(&self) -> bool {
        self.cycle_type().iter().map(|l| l - 1).sum::<usize>() % 2 == 0
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut wrote = false;
        for i in 0..n {
            if seen[i] || self.apply(i) == i {
                continue;
            }
            write!(f, "(")?;
            let mut j = i;
            let mut first = true;
            while !seen[j] {
                seen[j] = true;
                if !first {
                    write!(f, ",")?;
                }
                write!(f, "{}", j + 1)?;
                first = false;
                j = self.apply(j);
            }
            write!(f, ")")?;
            wrote = true;
        }
        if !wrote {
            write!(f, "()")?;
        }
        Ok(())
    }
}

/// A square matrix with entries stored as field indices, row-major.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matrix {
    pub(crate) n: u8,
    pub(crate) e: SmallVec<[u16; 16]>,
}

impl Matrix {
    pub fn dim(&self) -> usize {
        self.n as usize
    }

    pub fn entry(&self, i: usize, j: usize) -> FieldElement {
        FieldElement(self.e[i * self.n as usize + j] as u32)
    }

    pub fn entries(&self) -> impl Iterator<Item = FieldElement> + '_ {
        self.e.iter().map(|&x| FieldElement(x as u32))
    }

    pub fn from_entries(n: usize, entries: &[FieldElement]) -> Matrix {
        assert_eq!(entries.len(), n * n);
        Matrix {
            n: n as u8,
            e: entries.iter().map(|x| x.0 as u16).collect(),
        }
    }

    pub fn identity(n: usize) -> Matrix {
        let mut e: SmallVec<[u16; 16]> = SmallVec::from_elem(0, n * n);
        for i in 0..n {
            e[i * n + i] = 1;
        }
        Matrix { n: n as u8, e }
    }

    pub fn diagonal(diag: &[FieldElement]) -> Matrix {
        let n = diag.len();
        let mut e: SmallVec<[u16; 16]> = SmallVec::from_elem(0, n * n);
        for (i, d) in diag.iter().enumerate() {
            e[i * n + i] = d.0 as u16;
        }
        Matrix { n: n as u8, e }
    }

    /// Block-diagonal sum.
    pub fn block_diagonal(blocks: &[&Matrix]) -> Matrix {
        let n: usize = blocks.iter().map(|b| b.dim()).sum();
        let mut e: SmallVec<[u16; 16]> = SmallVec::from_elem(0, n * n);
        let mut off = 0;
        for b in blocks {
            let m = b.dim();
            for i in 0..m {
                for j in 0..m {
                    e[(off + i) * n + off + j] = b.e[i * m + j];
                }
            }
            off += m;
        }
        Matrix { n: n as u8, e }
    }

    pub fn is_diagonal(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| (0..n).all(|j| i == j || self.e[i * n + j] == 0))
    }

    pub fn is_monomial(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| (0..n).filter(|&j| self.e[i * n + j] != 0).count() == 1)
            && (0..n).all(|j| (0..n).filter(|&i| self.e[i * n + j] != 0).count() == 1)
    }

    /// Scalar value when the matrix is `lambda * I`.
    pub fn scalar_value(&self) -> Option<FieldElement> {
        let n = self.dim();
        let d = self.e[0];
        (self.is_diagonal() && (0..n).all(|i| self.e[i * n + i] == d))
            .then_some(FieldElement(d as u32))
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.dim();
        write!(f, "[")?;
        for i in 0..n {
            if i > 0 {
                write!(f, ";")?;
            }
            for j in 0..n {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", self.e[i * n + j])?;
            }
        }
        write!(f, "]")
    }
}

/// A group element: an invertible matrix or a permutation.
///
/// Equality, hashing and ordering are structural on the stored encoding;
/// ordering is the canonical order used for representatives.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Element {
    Matrix(Matrix),
    Perm(Perm),
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Matrix(m) => m.fmt(f),
            Element::Perm(p) => p.fmt(f),
        }
    }
}

impl Element {
    pub fn as_matrix(&self) -> Option<&Matrix> {
        match self {
            Element::Matrix(m) => Some(m),
            _ => None,
        }
    }

    pub fn as_perm(&self) -> Option<&Perm> {
        match self {
            Element::Perm(p) => Some(p),
            _ => None,
        }
    }
}

impl From<Perm> for Element {
    fn from(p: Perm) -> Self {
        Element::Perm(p)
    }
}

impl From<Matrix> for Element {
    fn from(m: Matrix) -> Self {
        Element::Matrix(m)
    }
}

/// What the elements of a group are: permutations of a fixed degree or
/// `n x n` matrices over a field.
#[derive(Clone, Debug)]
pub enum Shape {
    Perm { degree: usize },
    Matrix { n: usize, field: Arc<Field> },
}

/// Central subgroup modded out by an ambient; elements are then stored as
/// the least member of their coset.
#[derive(Clone, Debug)]
pub(crate) enum Center {
    Trivial,
    /// Nonzero scalars `lambda`, identity included.
    Scalars(Vec<u32>),
    Elements(Vec<Element>),
}

/// The arithmetic context shared by all elements of a group.
#[derive(Clone, Debug)]
pub struct Ambient {
    shape: Shape,
    center: Center,
}

impl Ambient {
    pub fn permutations(degree: usize) -> Arc<Ambient> {
        Arc::new(Ambient {
            shape: Shape::Perm { degree },
            center: Center::Trivial,
        })
    }

    pub fn matrices(n: usize, field: Arc<Field>) -> Result<Arc<Ambient>> {
        if field.order() > u16::MAX as u32 {
            return Err(Error::Precondition(format!(
                "matrix entries need a field of order below 2^16, got {}",
                field.order()
            )));
        }
        if n == 0 || n > 16 {
            return Err(Error::Precondition(format!("unsupported dimension {n}")));
        }
        Ok(Arc::new(Ambient {
            shape: Shape::Matrix { n, field },
            center: Center::Trivial,
        }))
    }

    /// Same shape, with the listed central elements modded out.
    pub(crate) fn with_center(&self, center: Vec<Element>) -> Result<Arc<Ambient>> {
        if !matches!(self.center, Center::Trivial) {
            return Err(Error::Precondition(
                "quotients of quotients are not supported".into(),
            ));
        }
        let center = match &self.shape {
            Shape::Matrix { .. } => {
                let scalars: Option<Vec<u32>> = center
                    .iter()
                    .map(|z| z.as_matrix().and_then(|m| m.scalar_value()).map(|s| s.0))
                    .collect();
                match scalars {
                    Some(mut s) => {
                        s.sort_unstable();
                        s.dedup();
                        Center::Scalars(s)
                    }
                    None => Center::Elements(center),
                }
            }
            Shape::Perm { .. } => Center::Elements(center),
        };
        Ok(Arc::new(Ambient {
            shape: self.shape.clone(),
            center,
        }))
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn field(&self) -> Option<&Arc<Field>> {
        match &self.shape {
            Shape::Matrix { field, .. } => Some(field),
            _ => None,
        }
    }

    pub fn dim(&self) -> usize {
        match &self.shape {
            Shape::Matrix { n, .. } => *n,
            Shape::Perm { degree } => *degree,
        }
    }

    pub fn is_quotient(&self) -> bool {
        !matches!(self.center, Center::Trivial)
    }

    /// Order of the modded-out central subgroup (1 for an honest ambient).
    pub fn center_order(&self) -> usize {
        match &self.center {
            Center::Trivial => 1,
            Center::Scalars(s) => s.len(),
            Center::Elements(e) => e.len(),
        }
    }

    /// The plain ambient of the same shape, with nothing modded out.
    pub fn cover(&self) -> Arc<Ambient> {
        Arc::new(Ambient {
            shape: self.shape.clone(),
            center: Center::Trivial,
        })
    }

    /// Lifts of the identity: the elements of the modded-out center.
    pub fn center_elements(&self) -> Vec<Element> {
        match &self.center {
            Center::Trivial => vec![self.identity()],
            Center::Scalars(s) => {
                let n = self.dim();
                s.iter()
                    .map(|&l| Element::Matrix(Matrix::diagonal(&vec![FieldElement(l); n])))
                    .collect()
            }
            Center::Elements(e) => e.clone(),
        }
    }

    pub fn identity(&self) -> Element {
        match &self.shape {
            Shape::Perm { degree } => Element::Perm(Perm::identity(*degree)),
            Shape::Matrix { n, .. } => Element::Matrix(Matrix::identity(*n)),
        }
    }

    pub fn is_identity(&self, x: &Element) -> bool {
        *x == self.identity()
    }

    /// Checks that `x` has this ambient's shape and is invertible.
    pub fn validate(&self, x: &Element) -> Result<()> {
        match (&self.shape, x) {
            (Shape::Perm { degree }, Element::Perm(p)) if p.degree() == *degree => Ok(()),
            (Shape::Matrix { n, field }, Element::Matrix(m)) if m.dim() == *n => {
                if m.e.iter().any(|&v| v as u32 >= field.order()) {
                    return Err(Error::Precondition("matrix entry out of field range".into()));
                }
                if self.det(x).0 == 0 {
                    return Err(Error::Precondition(format!("{x:?} is singular")));
                }
                Ok(())
            }
            _ => Err(Error::MixedVariants),
        }
    }

    /// Product without reducing modulo the center.
    pub fn mul_raw(&self, a: &Element, b: &Element) -> Element {
        match (a, b, &self.shape) {
            (Element::Perm(x), Element::Perm(y), _) => Element::Perm(x.then(y)),
            (Element::Matrix(x), Element::Matrix(y), Shape::Matrix { field, .. }) => {
                Element::Matrix(mat_mul(field, x, y))
            }
            _ => panic!("element variants do not match the ambient"),
        }
    }

    /// Product `a * b` (apply `a` first for permutations), reduced to the
    /// canonical coset representative.
    #[inline]
    pub fn mul(&self, a: &Element, b: &Element) -> Element {
        let p = self.mul_raw(a, b);
        self.canon(p)
    }

    pub fn inv_raw(&self, a: &Element) -> Element {
        match (a, &self.shape) {
            (Element::Perm(x), _) => Element::Perm(x.inverse()),
            (Element::Matrix(x), Shape::Matrix { field, .. }) => {
                Element::Matrix(mat_inv(field, x).expect("singular matrix in group"))
            }
            _ => panic!("element variant does not match the ambient"),
        }
    }

    pub fn inv(&self, a: &Element) -> Element {
        let i = self.inv_raw(a);
        self.canon(i)
    }

    /// `g^-1 x g`, given `g^-1`.
    #[inline]
    pub fn conj_with(&self, x: &Element, g: &Element, g_inv: &Element) -> Element {
        let t = self.mul_raw(g_inv, x);
        self.mul(&t, g)
    }

    pub fn conj(&self, x: &Element, g: &Element) -> Element {
        let gi = self.inv_raw(g);
        self.conj_with(x, g, &gi)
    }

    pub fn commutator(&self, a: &Element, b: &Element) -> Element {
        // [a, b] = a^-1 b^-1 a b
        let ai = self.inv_raw(a);
        let bi = self.inv_raw(b);
        let t = self.mul_raw(&ai, &bi);
        let t = self.mul_raw(&t, a);
        self.mul(&t, b)
    }

    pub fn pow(&self, a: &Element, mut e: u64) -> Element {
        let mut r = self.identity();
        let mut b = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(&r, &b);
            }
            b = self.mul(&b, &b);
            e >>= 1;
        }
        r
    }

    /// Order of `x` in the (possibly quotient) group.
    pub fn order(&self, x: &Element) -> u64 {
        let id = self.identity();
        let mut y = x.clone();
        let mut k = 1;
        while y != id {
            y = self.mul(&y, x);
            k += 1;
        }
        k
    }

    /// Least element of the coset `Z x`.
    #[inline]
    pub fn canon(&self, x: Element) -> Element {
        match &self.center {
            Center::Trivial => x,
            Center::Scalars(s) => {
                let (Element::Matrix(m), Shape::Matrix { field, .. }) = (&x, &self.shape) else {
                    return x;
                };
                let mut best: Option<Matrix> = None;
                for &l in s {
                    let cand = Matrix {
                        n: m.n,
                        e: m.e.iter().map(|&v| field.mul_raw(l, v as u32) as u16).collect(),
                    };
                    if best.as_ref().is_none_or(|b| cand < *b) {
                        best = Some(cand);
                    }
                }
                Element::Matrix(best.unwrap())
            }
            Center::Elements(zs) => zs
                .iter()
                .map(|z| self.mul_raw(z, &x))
                .min()
                .unwrap_or(x),
        }
    }

    /// Determinant of a matrix element (of a representative, for quotients).
    pub fn det(&self, x: &Element) -> FieldElement {
        match (x, &self.shape) {
            (Element::Matrix(m), Shape::Matrix { field, .. }) => mat_det(field, m),
            _ => FieldElement::ONE,
        }
    }

    pub fn matrix(&self, rows: &[&[i64]]) -> Result<Element> {
        let Shape::Matrix { n, field } = &self.shape else {
            return Err(Error::MixedVariants);
        };
        if rows.len() != *n || rows.iter().any(|r| r.len() != *n) {
            return Err(Error::Precondition("matrix shape mismatch".into()));
        }
        let entries: Vec<FieldElement> =
            rows.iter().flat_map(|r| r.iter().map(|&v| field.from_int(v))).collect();
        let x = Element::Matrix(Matrix::from_entries(*n, &entries));
        self.validate(&x)?;
        Ok(self.canon(x))
    }

    pub fn perm(&self, cycles: &[&[usize]]) -> Result<Element> {
        let Shape::Perm { degree } = &self.shape else {
            return Err(Error::MixedVariants);
        };
        Ok(self.canon(Element::Perm(Perm::from_cycles(*degree, cycles)?)))
    }
}

pub(crate) fn mat_mul(field: &Field, x: &Matrix, y: &Matrix) -> Matrix {
    let n = x.n as usize;
    let mut e: SmallVec<[u16; 16]> = SmallVec::from_elem(0, n * n);
    if field.is_prime_field() {
        let p = field.characteristic() as u64;
        for i in 0..n {
            for j in 0..n {
                let mut acc = 0u64;
                for k in 0..n {
                    acc += x.e[i * n + k] as u64 * y.e[k * n + j] as u64;
                }
                e[i * n + j] = (acc % p) as u16;
            }
        }
    } else {
        for i in 0..n {
            for k in 0..n {
                let a = x.e[i * n + k] as u32;
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    let b = y.e[k * n + j] as u32;
                    if b != 0 {
                        let prod = field.mul_raw(a, b);
                        e[i * n + j] = field.add_raw(e[i * n + j] as u32, prod) as u16;
                    }
                }
            }
        }
    }
    Matrix { n: x.n, e }
}

fn to_rows(m: &Matrix) -> Vec<Vec<FieldElement>> {
    let n = m.dim();
    (0..n).map(|i| (0..n).map(|j| m.entry(i, j)).collect()).collect()
}

pub(crate) fn mat_inv(field: &Field, m: &Matrix) -> Option<Matrix> {
    let n = m.dim();
    let mut a = to_rows(m);
    let mut inv: Vec<Vec<FieldElement>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { field.one() } else { field.zero() }).collect())
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| a[r][col].0 != 0)?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let pinv = field.inv(a[col][col])?;
        for j in 0..n {
            a[col][j] = field.mul(a[col][j], pinv);
            inv[col][j] = field.mul(inv[col][j], pinv);
        }
        for r in 0..n {
            if r != col && a[r][col].0 != 0 {
                let factor = a[r][col];
                for j in 0..n {
                    let t = field.mul(factor, a[col][j]);
                    a[r][j] = field.sub(a[r][j], t);
                    let t = field.mul(factor, inv[col][j]);
                    inv[r][j] = field.sub(inv[r][j], t);
                }
            }
        }
    }
    let flat: Vec<FieldElement> = inv.into_iter().flatten().collect();
    Some(Matrix::from_entries(n, &flat))
}

pub(crate) fn mat_det(field: &Field, m: &Matrix) -> FieldElement {
    let n = m.dim();
    let mut a = to_rows(m);
    let mut det = field.one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| a[r][col].0 != 0) else {
            return field.zero();
        };
        if pivot != col {
            a.swap(col, pivot);
            det = field.neg(det);
        }
        det = field.mul(det, a[col][col]);
        let pinv = field.inv(a[col][col]).unwrap();
        for r in col + 1..n {
            if a[r][col].0 != 0 {
                let factor = field.mul(a[r][col], pinv);
                for j in col..n {
                    let t = field.mul(factor, a[col][j]);
                    a[r][j] = field.sub(a[r][j], t);
                }
            }
        }
    }
    det
}

/// Rank of an arbitrary (not necessarily invertible) matrix.
pub(crate) fn mat_rank(field: &Field, rows: &[Vec<FieldElement>]) -> usize {
    let mut a = rows.to_vec();
    let nr = a.len();
    let nc = a.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..nc {
        let Some(pivot) = (rank..nr).find(|&r| a[r][col].0 != 0) else {
            continue;
        };
        a.swap(rank, pivot);
        let pinv = field.inv(a[rank][col]).unwrap();
        for r in 0..nr {
            if r != rank && a[r][col].0 != 0 {
                let factor = field.mul(a[r][col], pinv);
                for j in col..nc {
                    let t = field.mul(factor, a[rank][j]);
                    a[r][j] = field.sub(a[r][j], t);
                }
            }
        }
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn perm_basics() {
        let p = Perm::from_cycles(4, &[&[1, 2, 3, 4]]).unwrap();
        assert_eq!(p.cycle_type(), vec![4]);
        assert!(!p.is_even());
        assert_eq!(p.then(&p.inverse()), Perm::identity(4));
        assert_eq!(format!("{p:?}"), "(1,2,3,4)");
        assert!(Perm::from_images(&[0, 0]).is_err());
    }

    #[test]
    fn matrix_inverse_and_det() {
        let f = Arc::new(Field::new(5, 1).unwrap());
        let amb = Ambient::matrices(2, f.clone()).unwrap();
        let a = amb.matrix(&[&[1, 2], &[3, 4]]).unwrap();
        assert_eq!(amb.det(&a), f.from_int(-2));
        let ai = amb.inv(&a);
        assert_eq!(amb.mul(&a, &ai), amb.identity());
        assert!(amb.matrix(&[&[1, 2], &[2, 4]]).is_err());
    }

    #[test]
    fn extension_field_matrix_inverse() {
        let f = Arc::new(Field::new(3, 2).unwrap());
        let amb = Ambient::matrices(3, f.clone()).unwrap();
        let g = f.primitive();
        let m = Element::Matrix(Matrix::from_entries(
            3,
            &[g, f.one(), f.zero(), f.zero(), g, f.one(), f.one(), f.zero(), f.pow(g, 5)],
        ));
        amb.validate(&m).unwrap();
        assert_eq!(amb.mul(&m, &amb.inv(&m)), amb.identity());
        assert_eq!(amb.mul(&amb.inv(&m), &m), amb.identity());
    }

    #[test]
    fn scalar_quotient_canonicalises() {
        let f = Arc::new(Field::new(3, 1).unwrap());
        let amb = Ambient::matrices(2, f).unwrap();
        let minus = amb.matrix(&[&[2, 0], &[0, 2]]).unwrap();
        let q = amb.with_center(vec![amb.identity(), minus.clone()]).unwrap();
        assert_eq!(q.canon(minus), q.identity());
        let x = amb.matrix(&[&[0, 2], &[1, 0]]).unwrap();
        assert_eq!(q.order(&q.canon(x.clone())), 2);
        assert_eq!(amb.order(&x), 4);
    }
}
