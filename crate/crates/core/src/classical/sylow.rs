//! Sylow 2-subgroups: wreath/semidihedral base cases in dimension 2,
//! doubled by block swaps and assembled along the binary digits of `n`.

use std::sync::Arc;

use crate::gf::{two_part, Field, FieldElement};
use crate::grp::cores::image_in;
use crate::grp::element::{mat_det, mat_mul};
use crate::grp::pgroup::sylow2_search;
use crate::grp::{Ambient, Element, Group, Matrix, Subgroup, DEFAULT_CAP};
use crate::{Error, Result};

use super::{embed, is_unitary, make_group, matrix_ambient, norm, su2_elements, Family, GroupSpec, Sign};

fn two_part_u(n: u64) -> u64 {
    1 << n.trailing_zeros()
}

fn mat_pow(field: &Field, m: &Matrix, mut e: u64) -> Matrix {
    let mut r = Matrix::identity(m.dim());
    let mut b = m.clone();
    while e > 0 {
        if e & 1 == 1 {
            r = mat_mul(field, &r, &b);
        }
        b = mat_mul(field, &b, &b);
        e >>= 1;
    }
    r
}

/// A cyclic Sylow 2-subgroup of `GL_1^eps(q)`.
fn gl1(field: &Field, sign: Sign, q: u64) -> Matrix {
    let d = match sign {
        Sign::Plus => two_part_u(q - 1),
        Sign::Minus => two_part_u(q + 1),
    };
    let zeta = field.element_of_order(d).expect("2-part divides the group order");
    Matrix::diagonal(&[zeta])
}

/// Whether `GL_2^eps(q)` has wreathed (rather than semidihedral) Sylow
/// 2-subgroups.
pub fn gl2_is_wreathed(sign: Sign, q: u32) -> bool {
    matches!((sign, q % 4), (Sign::Plus, 1) | (Sign::Minus, 3))
}

/// All elements of `GL_2(q)` (or `GU_2(q)`) in canonical order.
fn gl2_elements(field: &Field, sign: Sign, q: u32) -> Result<Vec<Matrix>> {
    match sign {
        Sign::Plus => {
            let qq = q as usize;
            let mut out = Vec::new();
            for k in 0..qq.pow(4) {
                let e = [k / qq.pow(3), (k / qq.pow(2)) % qq, (k / qq) % qq, k % qq]
                    .map(|v| FieldElement(v as u32));
                let m = Matrix::from_entries(2, &e);
                if mat_det(field, &m) != FieldElement::ZERO {
                    out.push(m);
                }
            }
            Ok(out)
        }
        Sign::Minus => {
            // [[a, b], [-l b^q, l a^q]] with [[a, b], [-b^q, a^q]] in SU_2, l^(q+1) = 1
            let lambdas: Vec<FieldElement> = field
                .elements()
                .filter(|&l| l != FieldElement::ZERO && norm(field, l).ok() == Some(field.one()))
                .collect();
            let mut out = Vec::new();
            for m in su2_elements(field)? {
                for &l in &lambdas {
                    let d = Matrix::diagonal(&[field.one(), l]);
                    out.push(mat_mul(field, &d, &m));
                }
            }
            out.sort_unstable();
            Ok(out)
        }
    }
}

/// The semidihedral pair `(a, b)` of `GL_2^eps(q)` with `b = diag(1, -1)`,
/// `ord(a) = (q^2 - 1)_2` and `a^b = a^(2^(m-2) - 1)`; `a` is the least
/// such element in canonical order.
pub fn semidihedral_pair(field: &Field, sign: Sign, q: u32) -> Result<(Matrix, Matrix)> {
    if gl2_is_wreathed(sign, q) {
        return Err(Error::Precondition(format!("GL_2 for q = {q} has wreathed Sylow 2-subgroups")));
    }
    let qq = q as u64;
    let half = two_part_u(qq * qq - 1);
    let b = Matrix::diagonal(&[field.one(), field.neg(field.one())]);
    for a in gl2_elements(field, sign, q)? {
        let top = mat_pow(field, &a, half / 2);
        if top == Matrix::identity(2) || mat_mul(field, &top, &top) != Matrix::identity(2) {
            continue;
        }
        let ab = mat_mul(field, &mat_mul(field, &b, &a), &b);
        if ab == mat_pow(field, &a, half / 2 - 1) {
            return Ok((a, b));
        }
    }
    Err(Error::Internal(format!("no semidihedral pair in GL_2 for q = {q}")))
}

fn block_swap(n: usize, field: &Field) -> Matrix {
    let h = n / 2;
    let mut e = vec![FieldElement::ZERO; n * n];
    for i in 0..h {
        e[i * n + h + i] = field.one();
        e[(h + i) * n + i] = field.one();
    }
    Matrix::from_entries(n, &e)
}

/// Generators of a Sylow 2-subgroup of `GL_{2^r}^eps(q)`.
pub fn power_of_two_generators(field: &Field, sign: Sign, q: u32, r: u32) -> Result<Vec<Matrix>> {
    match r {
        0 => Ok(vec![gl1(field, sign, q as u64)]),
        1 => {
            if gl2_is_wreathed(sign, q) {
                let z = gl1(field, sign, q as u64).entry(0, 0);
                Ok(vec![Matrix::diagonal(&[z, field.one()]), block_swap(2, field)])
            } else {
                let (a, b) = semidihedral_pair(field, sign, q)?;
                Ok(vec![a, b])
            }
        }
        _ => {
            let n = 1usize << r;
            let mut gens: Vec<Matrix> = power_of_two_generators(field, sign, q, r - 1)?
                .iter()
                .map(|g| embed(n, 0, g))
                .collect();
            gens.push(block_swap(n, field));
            Ok(gens)
        }
    }
}

/// Generators of a Sylow 2-subgroup `W` of `GL_n^eps(q)`: block diagonal
/// over `n = 2^r1 + ... + 2^rt` with `r1 < ... < rt`.
pub fn gl_sylow_generators(field: &Field, sign: Sign, n: usize, q: u32) -> Result<Vec<Matrix>> {
    let mut gens = Vec::new();
    let mut at = 0;
    for r in 0..usize::BITS {
        if n >> r & 1 == 0 {
            continue;
        }
        for g in power_of_two_generators(field, sign, q, r)? {
            gens.push(embed(n, at, &g));
        }
        at += 1 << r;
    }
    if sign == Sign::Minus {
        for g in &gens {
            if !is_unitary(field, g)? {
                return Err(Error::Internal("Sylow generator is not unitary".into()));
            }
        }
    }
    Ok(gens)
}

/// `W` itself, as a subgroup of the plain `GL_n^eps(q)` ambient.
pub fn gl_sylow(spec: &GroupSpec) -> Result<Subgroup> {
    let general = spec.general();
    let amb = matrix_ambient(&general)?;
    let field = amb.field().unwrap().clone();
    let sign = spec.sign().ok_or_else(|| Error::Precondition(format!("{spec} is not a matrix group")))?;
    let gens: Vec<Element> = gl_sylow_generators(&field, sign, spec.n, spec.q)?
        .into_iter()
        .map(Element::Matrix)
        .collect();
    Subgroup::generated(&amb, &gens, DEFAULT_CAP)
}

fn sym_block(start: usize, r: u32, out: &mut Vec<Vec<Vec<usize>>>) {
    if r == 0 {
        return;
    }
    let h = 1usize << (r - 1);
    sym_block(start, r - 1, out);
    out.push((0..h).map(|i| vec![start + i, start + h + i]).collect());
}

/// Iterated wreath products `C2 wr ... wr C2` on consecutive blocks.
fn sym_sylow(amb: &Arc<Ambient>, n: usize) -> Result<Subgroup> {
    let mut cycles = Vec::new();
    let mut at = 1;
    for r in 0..usize::BITS {
        if n >> r & 1 == 1 {
            sym_block(at, r, &mut cycles);
            at += 1 << r;
        }
    }
    let gens: Vec<Element> = cycles
        .iter()
        .map(|c| {
            let c: Vec<&[usize]> = c.iter().map(|v| v.as_slice()).collect();
            amb.perm(&c)
        })
        .collect::<Result<_>>()?;
    Subgroup::generated(amb, &gens, DEFAULT_CAP)
}

fn is_even(x: &Element) -> bool {
    x.as_perm().map(|p| p.is_even()).unwrap_or(false)
}

/// A Sylow 2-subgroup of the group `g` built from `spec`, inside `g`'s ambient.
pub fn sylow2_in(g: &Group, spec: &GroupSpec) -> Result<Subgroup> {
    let target = two_part(spec.order() as i64)? as usize;
    let s = match spec.family {
        Family::Sym => sym_sylow(g.ambient(), spec.n)?,
        Family::Alt => {
            let s = sym_sylow(g.ambient(), spec.n)?;
            let even: Vec<Element> = s.elements().iter().filter(|x| is_even(x)).cloned().collect();
            Subgroup::from_closed_elements(g.ambient(), even)
        }
        Family::M11 => {
            g.enumerate()?;
            sylow2_search(g)?
        }
        _ => {
            let w = gl_sylow(spec)?;
            let field = w.ambient().field().unwrap().clone();
            let w = if spec.is_special() {
                let amb = w.ambient().clone();
                let sl: Vec<Element> = w
                    .elements()
                    .iter()
                    .filter(|x| super::det_of(&field, x) == field.one())
                    .cloned()
                    .collect();
                Subgroup::from_closed_elements(&amb, sl)
            } else {
                w
            };
            if spec.is_projective() {
                image_in(g.ambient(), &w)
            } else {
                w
            }
        }
    };
    if s.order() != target {
        return Err(Error::Internal(format!(
            "Sylow 2-subgroup of {spec} has order {}, expected {target}",
            s.order()
        )));
    }
    Ok(s)
}

/// The group of `spec` with its Sylow 2-subgroup.
pub fn sylow2(spec: &GroupSpec) -> Result<(Group, Subgroup)> {
    let g = make_group(spec)?;
    let s = sylow2_in(&g, spec)?;
    Ok((g, s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grp::{centralizer_of_subgroup, recognize_2_group, TwoGroupType};

    fn spec(s: &str) -> GroupSpec {
        GroupSpec::parse(s).unwrap()
    }

    #[test]
    fn small_types() {
        let t = |s: &str| recognize_2_group(&sylow2(&spec(s)).unwrap().1).unwrap();
        assert_eq!(t("SL(2,3)"), TwoGroupType::GeneralizedQuaternion(8));
        assert_eq!(t("PSL(2,7)"), TwoGroupType::Dihedral(8));
        assert_eq!(t("GL(2,3)"), TwoGroupType::Semidihedral(16));
        assert_eq!(t("GU(2,5)"), TwoGroupType::Semidihedral(16));
        assert_eq!(t("Sym(4)"), TwoGroupType::Dihedral(8));
        assert_eq!(t("Alt(6)"), TwoGroupType::Dihedral(8));
        assert_eq!(t("M11"), TwoGroupType::Semidihedral(16));
    }

    #[test]
    fn sylow_orders_are_two_parts() {
        for s in ["GL(3,3)", "SU(3,3)", "PSU(3,5)", "GL(6,3)", "SL(5,5)", "PGL(4,3)", "Sym(10)", "Alt(11)"] {
            let sp = spec(s);
            let (_, p) = sylow2(&sp).unwrap();
            assert_eq!(p.order() as u64, two_part(sp.order() as i64).unwrap(), "{s}");
        }
    }

    #[test]
    fn semidihedral_determinants_and_involutions() {
        for q in [3u32, 7, 11] {
            let field = Field::new(q, 1).unwrap();
            let (a, b) = semidihedral_pair(&field, Sign::Plus, q).unwrap();
            let m = (2 * two_part_u(q as u64 * q as u64 - 1)).trailing_zeros() as u64;
            let top = 1u64 << (m - 1);
            let minus = field.neg(field.one());
            let mut invs = vec![mat_pow(&field, &a, top / 2)];
            for l in 1..=top {
                let al = mat_pow(&field, &a, l);
                let alb = mat_mul(&field, &al, &b);
                let (d1, d2) = if l % 2 == 1 { (minus, field.one()) } else { (field.one(), minus) };
                assert_eq!(mat_det(&field, &al), d1);
                assert_eq!(mat_det(&field, &alb), d2);
                if l % 2 == 0 {
                    invs.push(alb);
                }
            }
            invs.sort();
            let w = gl_sylow(&spec(&format!("GL(2,{q})"))).unwrap();
            let amb = w.ambient();
            let mut found: Vec<Matrix> = w
                .elements()
                .iter()
                .filter(|x| amb.order(x) == 2)
                .map(|x| x.as_matrix().unwrap().clone())
                .collect();
            found.sort();
            assert_eq!(found, invs, "q = {q}");
        }
    }

    #[test]
    fn centralizer_of_special_part_is_block_scalar() {
        for (n, q) in [(2usize, 3u32), (2, 5), (3, 3), (3, 5), (4, 3), (4, 5)] {
            for sign in [Sign::Plus, Sign::Minus] {
                let gl = GroupSpec::signed(sign, false, false, n, q).unwrap();
                let sl = GroupSpec::signed(sign, true, false, n, q).unwrap();
                let w = gl_sylow(&gl).unwrap();
                let field = w.ambient().field().unwrap().clone();
                let s = sylow2_in(&make_group(&sl).unwrap(), &sl).unwrap();
                let c = centralizer_of_subgroup(&w.to_group("W"), &s).unwrap();
                // block sizes from the binary digits of n
                let blocks: Vec<usize> = (0..8).filter(|r| n >> r & 1 == 1).map(|r| 1 << r).collect();
                let qq = q as u64;
                let lambdas: Vec<FieldElement> = field
                    .elements()
                    .filter(|&l| {
                        l != FieldElement::ZERO
                            && field.element_order(l).unwrap().is_power_of_two()
                            && (sign == Sign::Plus && field.pow(l, qq - 1) == field.one()
                                || sign == Sign::Minus && field.pow(l, qq + 1) == field.one())
                    })
                    .collect();
                let expected = lambdas.len().pow(blocks.len() as u32);
                assert_eq!(c.order(), expected, "n={n} q={q} {sign:?}");
                for x in c.elements() {
                    let m = x.as_matrix().unwrap();
                    assert!(m.is_diagonal());
                    let mut at = 0;
                    for b in &blocks {
                        assert!((at..at + b).all(|i| m.entry(i, i) == m.entry(at, at)));
                        at += b;
                    }
                }
            }
        }
    }
}
