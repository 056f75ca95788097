//! Linear, unitary, alternating and symmetric groups, M11, and explicit
//! constructions inside them.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::Serialize;

use crate::gf::{gcd, prime_factors, Field, FieldElement};
use crate::grp::element::{mat_det, mat_mul};
use crate::grp::group::bfs_closure;
use crate::grp::{Ambient, Element, Group, Matrix};
use crate::{Error, Result};

pub mod involutions;
pub mod special;
pub mod sylow;

pub use involutions::{involution_reps, match_involution_class, InvolutionLabel, InvolutionRep};
pub use special::{
    diagonal_two_torus, eigenvalues_in_field, explicit_sylow_a10, generation_subgroups, goldschmidt_test,
    lifted_involutions, GenerationData, LiftedInvolutions,
};
pub use sylow::{sylow2, sylow2_in};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Family {
    GL,
    SL,
    GU,
    SU,
    PGL,
    PSL,
    PGU,
    PSU,
    Alt,
    Sym,
    M11,
}

/// `+` for the linear families, `-` for the unitary ones.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

/// A group descriptor such as `PSL(3,3)`, `SU(3,5)`, `Alt(10)` or `M11`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct GroupSpec {
    pub family: Family,
    pub n: usize,
    /// Field order; 0 for the permutation families.
    pub q: u32,
}

/// `(p, f)` with `q = p^f`, `p` an odd prime.
pub fn odd_prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 3 || q % 2 == 0 {
        return None;
    }
    let ps = prime_factors(q as u64);
    if ps.len() != 1 {
        return None;
    }
    let p = ps[0] as u32;
    let mut f = 0;
    let mut r = q;
    while r > 1 {
        r /= p;
        f += 1;
    }
    Some((p, f))
}

impl GroupSpec {
    pub fn new(family: Family, n: usize, q: u32) -> Result<GroupSpec> {
        let spec = GroupSpec { family, n, q };
        match family {
            Family::M11 => Ok(GroupSpec { family, n: 11, q: 0 }),
            Family::Alt | Family::Sym => {
                if !(1..=64).contains(&n) {
                    return Err(Error::Precondition(format!("degree {n} outside 1..=64")));
                }
                Ok(GroupSpec { family, n, q: 0 })
            }
            _ => {
                if odd_prime_power(q).is_none() {
                    return Err(Error::Precondition(format!("q = {q} is not an odd prime power")));
                }
                if !(1..=16).contains(&n) {
                    return Err(Error::Precondition(format!("dimension {n} outside 1..=16")));
                }
                let field_order = if spec.is_unitary() { q as u64 * q as u64 } else { q as u64 };
                if field_order > u16::MAX as u64 {
                    return Err(Error::Precondition(format!("field of order {field_order} too large")));
                }
                Ok(spec)
            }
        }
    }

    /// `SL^eps`, `GL^eps`, `PSL^eps`, `PGL^eps` by sign.
    pub fn signed(sign: Sign, special: bool, projective: bool, n: usize, q: u32) -> Result<GroupSpec> {
        use Family::*;
        let family = match (sign, special, projective) {
            (Sign::Plus, false, false) => GL,
            (Sign::Plus, true, false) => SL,
            (Sign::Plus, false, true) => PGL,
            (Sign::Plus, true, true) => PSL,
            (Sign::Minus, false, false) => GU,
            (Sign::Minus, true, false) => SU,
            (Sign::Minus, false, true) => PGU,
            (Sign::Minus, true, true) => PSU,
        };
        GroupSpec::new(family, n, q)
    }

    pub fn parse(s: &str) -> Result<GroupSpec> {
        let bad = || Error::Precondition(format!("cannot parse group descriptor {s:?}"));
        if s == "M11" {
            return GroupSpec::new(Family::M11, 11, 0);
        }
        let (name, rest) = s.split_once('(').ok_or_else(bad)?;
        let args = rest.strip_suffix(')').ok_or_else(bad)?;
        let nums: Vec<&str> = args.split(',').collect();
        let int = |t: &str| t.parse::<u32>().map_err(|_| bad());
        let family = match name {
            "GL" => Family::GL,
            "SL" => Family::SL,
            "GU" => Family::GU,
            "SU" => Family::SU,
            "PGL" => Family::PGL,
            "PSL" => Family::PSL,
            "PGU" => Family::PGU,
            "PSU" => Family::PSU,
            "Alt" => Family::Alt,
            "Sym" => Family::Sym,
            _ => return Err(bad()),
        };
        match (family, nums.as_slice()) {
            (Family::Alt | Family::Sym, [n]) => GroupSpec::new(family, int(n)? as usize, 0),
            (Family::Alt | Family::Sym, _) => Err(bad()),
            (_, [n, q]) => GroupSpec::new(family, int(n)? as usize, int(q)?),
            _ => Err(bad()),
        }
    }

    pub fn is_matrix(&self) -> bool {
        !matches!(self.family, Family::Alt | Family::Sym | Family::M11)
    }

    pub fn is_unitary(&self) -> bool {
        matches!(self.family, Family::GU | Family::SU | Family::PGU | Family::PSU)
    }

    pub fn is_projective(&self) -> bool {
        matches!(self.family, Family::PGL | Family::PSL | Family::PGU | Family::PSU)
    }

    pub fn is_special(&self) -> bool {
        matches!(self.family, Family::SL | Family::SU | Family::PSL | Family::PSU)
    }

    pub fn sign(&self) -> Option<Sign> {
        if !self.is_matrix() {
            None
        } else if self.is_unitary() {
            Some(Sign::Minus)
        } else {
            Some(Sign::Plus)
        }
    }

    /// The matrix group a projective group is a quotient of.
    pub fn cover(&self) -> GroupSpec {
        use Family::*;
        let family = match self.family {
            PGL => GL,
            PSL => SL,
            PGU => GU,
            PSU => SU,
            f => f,
        };
        GroupSpec { family, ..*self }
    }

    /// `GL^eps` of the same dimension and field.
    pub fn general(&self) -> GroupSpec {
        match self.sign() {
            Some(Sign::Plus) => GroupSpec { family: Family::GL, ..*self },
            Some(Sign::Minus) => GroupSpec { family: Family::GU, ..*self },
            None => *self,
        }
    }

    /// `q = p^f` split into `(p, f)`.
    pub fn prime_power(&self) -> Option<(u32, u32)> {
        odd_prime_power(self.q)
    }

    /// The field the matrix entries live in: GF(q), or GF(q^2) for unitary
    /// families.
    pub fn field(&self) -> Result<Arc<Field>> {
        let (p, f) = self
            .prime_power()
            .ok_or_else(|| Error::Precondition(format!("{self} has no field")))?;
        let f = if self.is_unitary() { 2 * f } else { f };
        Ok(Arc::new(Field::new(p, f)?))
    }

    /// Closed-form group order.
    pub fn order(&self) -> u128 {
        let n = self.n as u32;
        let q = self.q as u128;
        let fact = |k: usize| (1..=k as u128).product::<u128>();
        let general = |s: i128| -> u128 {
            let mut o = q.pow(n * (n - 1) / 2);
            for i in 1..=n {
                let t = (q as i128).pow(i) - s.pow(i);
                o *= t as u128;
            }
            o
        };
        use Family::*;
        match self.family {
            GL => general(1),
            SL | PGL => general(1) / (q - 1),
            PSL => general(1) / (q - 1) / gcd(self.n as u64, (q - 1) as u64) as u128,
            GU => general(-1),
            SU | PGU => general(-1) / (q + 1),
            PSU => general(-1) / (q + 1) / gcd(self.n as u64, (q + 1) as u64) as u128,
            Alt => (fact(self.n) / 2).max(1),
            Sym => fact(self.n),
            M11 => 7920,
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            Family::M11 => write!(f, "M11"),
            Family::Alt => write!(f, "Alt({})", self.n),
            Family::Sym => write!(f, "Sym({})", self.n),
            fam => write!(f, "{fam:?}({},{})", self.n, self.q),
        }
    }
}

impl FromStr for GroupSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<GroupSpec> {
        GroupSpec::parse(s)
    }
}

/// Entrywise `x -> x^q` followed by transposition.
pub fn conjugate_transpose(field: &Field, m: &Matrix) -> Result<Matrix> {
    let n = m.dim();
    let mut e = vec![FieldElement::ZERO; n * n];
    for i in 0..n {
        for j in 0..n {
            e[j * n + i] = field.frobenius(m.entry(i, j))?;
        }
    }
    Ok(Matrix::from_entries(n, &e))
}

/// `M^* M = I` for the standard Hermitian form.
pub fn is_unitary(field: &Field, m: &Matrix) -> Result<bool> {
    let prod = mat_mul(field, &conjugate_transpose(field, m)?, m);
    Ok(prod == Matrix::identity(m.dim()))
}

/// `x^(q+1)` in GF(q^2).
pub(crate) fn norm(field: &Field, x: FieldElement) -> Result<FieldElement> {
    Ok(field.mul(x, field.frobenius(x)?))
}

/// Copies `block` into the identity of size `n` at diagonal offset `at`.
pub fn embed(n: usize, at: usize, block: &Matrix) -> Matrix {
    let k = block.dim();
    let mut e: Vec<FieldElement> = Matrix::identity(n).entries().collect();
    for i in 0..k {
        for j in 0..k {
            e[(at + i) * n + at + j] = block.entry(i, j);
        }
    }
    Matrix::from_entries(n, &e)
}

fn scalar(n: usize, l: FieldElement) -> Matrix {
    Matrix::diagonal(&vec![l; n])
}

/// All of `SU_2(q)` as `[[a, b], [-b^q, a^q]]` with `a^(q+1) + b^(q+1) = 1`.
pub fn su2_elements(field: &Field) -> Result<Vec<Matrix>> {
    let mut out = Vec::new();
    let norms: Vec<FieldElement> = field.elements().map(|x| norm(field, x)).collect::<Result<_>>()?;
    for a in field.elements() {
        for b in field.elements() {
            if field.add(norms[a.0 as usize], norms[b.0 as usize]) != field.one() {
                continue;
            }
            let e = [a, b, field.neg(field.frobenius(b)?), field.frobenius(a)?];
            out.push(Matrix::from_entries(2, &e));
        }
    }
    out.sort_unstable();
    Ok(out)
}

/// Generators for `SU_2(q)`: greedily by decreasing element order, then
/// canonical order, until the closure has `q(q^2 - 1)` elements.
fn su2_generators(field: &Arc<Field>, q: u32) -> Result<Vec<Matrix>> {
    let amb = Ambient::matrices(2, field.clone())?;
    let target = (q as usize) * (q as usize * q as usize - 1);
    let mut elems: Vec<(u64, Matrix)> = su2_elements(field)?
        .into_iter()
        .map(|m| (amb.order(&Element::Matrix(m.clone())), m))
        .collect();
    elems.sort_by(|a, b| b.0.cmp(&a.0).then_with(|| a.1.cmp(&b.1)));
    let mut gens: Vec<Element> = Vec::new();
    let mut have = bfs_closure(&amb, &gens, target)?;
    for (_, m) in elems {
        if have.len() == target {
            break;
        }
        let x = Element::Matrix(m);
        if have.contains(&x) {
            continue;
        }
        gens.push(x);
        have = bfs_closure(&amb, &gens, target)?;
    }
    if have.len() != target {
        return Err(Error::Internal("SU_2 generators do not generate".into()));
    }
    Ok(gens.into_iter().map(|x| x.as_matrix().unwrap().clone()).collect())
}

/// The scalars `lambda I` of the group described by `spec.cover()`.
pub fn center_scalars(spec: &GroupSpec) -> Result<Vec<FieldElement>> {
    let field = spec.field()?;
    let n = spec.n as u64;
    let q = spec.q as u64;
    let mut out = Vec::new();
    for l in field.elements().filter(|&l| l != FieldElement::ZERO) {
        let ok = match spec.cover().family {
            Family::GL => true,
            Family::SL => field.pow(l, n) == field.one(),
            Family::GU => field.pow(l, q + 1) == field.one(),
            Family::SU => field.pow(l, q + 1) == field.one() && field.pow(l, n) == field.one(),
            _ => false,
        };
        if ok {
            out.push(l);
        }
    }
    Ok(out)
}

/// Standard generators of the matrix group `spec.cover()` (no quotient).
fn matrix_generators(spec: &GroupSpec, field: &Arc<Field>) -> Result<Vec<Matrix>> {
    let n = spec.n;
    let q = spec.q;
    let mut gens = Vec::new();
    let cover = spec.cover();
    if !spec.is_unitary() {
        let omega = field.primitive();
        let basis: Vec<FieldElement> = (0..field.degree()).map(|k| field.pow(omega, k as u64)).collect();
        for i in 0..n.saturating_sub(1) {
            for &b in &basis {
                for (r, c) in [(i, i + 1), (i + 1, i)] {
                    let mut e: Vec<FieldElement> = Matrix::identity(n).entries().collect();
                    e[r * n + c] = b;
                    gens.push(Matrix::from_entries(n, &e));
                }
            }
        }
        if cover.family == Family::GL {
            let mut d = vec![field.one(); n];
            d[0] = omega;
            gens.push(Matrix::diagonal(&d));
        }
    } else {
        if n >= 2 {
            let blocks = su2_generators(field, q)?;
            for i in 0..n - 1 {
                for b in &blocks {
                    gens.push(embed(n, i, b));
                }
            }
        }
        if cover.family == Family::GU {
            let mut d = vec![field.one(); n];
            d[0] = field.pow(field.primitive(), q as u64 - 1);
            gens.push(Matrix::diagonal(&d));
        }
    }
    for g in &gens {
        let det = mat_det(field, g);
        if spec.is_special() && det != field.one() {
            return Err(Error::Internal(format!("generator of {spec} has determinant {}", det.0)));
        }
        if spec.is_unitary() && !is_unitary(field, g)? {
            return Err(Error::Internal(format!("generator of {spec} is not unitary")));
        }
    }
    Ok(gens)
}

/// The plain matrix ambient of a matrix spec (no quotient).
pub fn matrix_ambient(spec: &GroupSpec) -> Result<Arc<Ambient>> {
    Ambient::matrices(spec.n, spec.field()?)
}

/// The ambient a spec's group lives in; for projective families, the
/// quotient by the scalar center.
pub fn ambient(spec: &GroupSpec) -> Result<Arc<Ambient>> {
    match spec.family {
        Family::Alt | Family::Sym | Family::M11 => Ok(Ambient::permutations(spec.n)),
        _ => {
            let amb = matrix_ambient(spec)?;
            if spec.is_projective() {
                let center: Vec<Element> = center_scalars(spec)?
                    .into_iter()
                    .map(|l| Element::Matrix(scalar(spec.n, l)))
                    .collect();
                amb.with_center(center)
            } else {
                Ok(amb)
            }
        }
    }
}

fn perm_generators(spec: &GroupSpec) -> Vec<Vec<Vec<usize>>> {
    let n = spec.n;
    match spec.family {
        Family::M11 => vec![vec![(1..=11).collect()], vec![vec![3, 7, 11, 8], vec![4, 10, 5, 6]]],
        Family::Sym if n >= 2 => vec![vec![vec![1, 2]], vec![(1..=n).collect()]],
        Family::Alt if n >= 3 => {
            let long: Vec<usize> = if n % 2 == 1 { (1..=n).collect() } else { (2..=n).collect() };
            vec![vec![vec![1, 2, 3]], vec![long]]
        }
        _ => Vec::new(),
    }
}

/// The group with its standard generators, not yet enumerated; the order is
/// recorded from the closed form.
pub fn make_group(spec: &GroupSpec) -> Result<Group> {
    let amb = ambient(spec)?;
    let gens: Vec<Element> = if spec.is_matrix() {
        let field = spec.field()?;
        matrix_generators(spec, &field)?
            .into_iter()
            .map(|m| amb.canon(Element::Matrix(m)))
            .collect()
    } else {
        perm_generators(spec)
            .iter()
            .map(|cycles| {
                let c: Vec<&[usize]> = cycles.iter().map(|v| v.as_slice()).collect();
                amb.perm(&c)
            })
            .collect::<Result<_>>()?
    };
    Ok(Group::new(amb, gens, spec.to_string())?.with_order(spec.order()))
}

/// [`make_group`] followed by a full enumeration, refused above `cap`.
pub fn make_enumerated(spec: &GroupSpec, cap: usize) -> Result<Group> {
    let order = spec.order();
    if order > cap as u128 {
        return Err(Error::OrderCap {
            descriptor: spec.to_string(),
            order,
            cap: cap as u128,
        });
    }
    let g = make_group(spec)?;
    g.enumerate_with_cap(cap)?;
    Ok(g)
}

/// Determinant of a matrix in the field of the spec.
pub(crate) fn det_of(field: &Field, x: &Element) -> FieldElement {
    x.as_matrix().map(|m| mat_det(field, m)).unwrap_or(FieldElement::ZERO)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_round_trip() {
        for s in ["PSL(3,3)", "SU(3,5)", "Alt(10)", "M11", "GL(2,9)", "Sym(4)", "PGU(2,3)"] {
            assert_eq!(GroupSpec::parse(s).unwrap().to_string(), s);
        }
        assert!(GroupSpec::parse("psl(3,3)").is_err());
        assert!(GroupSpec::parse("PSL(3,4)").is_err());
        assert!(GroupSpec::parse("PSL(3)").is_err());
    }

    #[test]
    fn closed_form_orders() {
        let o = |s: &str| GroupSpec::parse(s).unwrap().order();
        assert_eq!(o("SL(2,3)"), 24);
        assert_eq!(o("PSL(2,9)"), 360);
        assert_eq!(o("PSL(3,3)"), 5616);
        assert_eq!(o("SU(3,3)"), 6048);
        assert_eq!(o("SL(3,5)"), 372000);
        assert_eq!(o("PSL(4,3)"), 6065280);
        assert_eq!(o("Alt(10)"), 1814400);
        assert_eq!(o("PSU(3,5)"), 126000);
    }

    #[test]
    fn enumerated_orders_match() {
        for s in [
            "SL(2,3)", "GL(2,3)", "PSL(2,9)", "SU(2,3)", "GU(2,3)", "PSU(2,5)", "PGL(2,5)",
            "PGU(2,3)", "SL(3,3)", "SU(3,3)", "Alt(7)", "Sym(5)", "M11", "Alt(4)", "SL(2,9)",
        ] {
            let spec = GroupSpec::parse(s).unwrap();
            let g = make_enumerated(&spec, 1_000_000).unwrap();
            assert_eq!(g.enumeration().unwrap().len() as u128, spec.order(), "{s}");
        }
    }

    #[test]
    fn order_cap_names_the_order() {
        let spec = GroupSpec::parse("PSL(4,3)").unwrap();
        match make_enumerated(&spec, 1000) {
            Err(Error::OrderCap { order, .. }) => assert_eq!(order, 6065280),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn su2_parametrisation_has_the_right_size() {
        let f = Field::new(5, 2).unwrap();
        assert_eq!(su2_elements(&f).unwrap().len(), 120);
    }
}
