use std::sync::Arc;

use crate::gf::FieldElement;
use crate::grp::element::{mat_mul, mat_rank};
use crate::grp::{Ambient, Element, Group, Matrix, Subgroup, DEFAULT_CAP};
use crate::{Error, Result};

use super::involutions::{classify, InvolutionLabel};
use super::sylow::gl_sylow;
use super::{ambient, det_of, embed, make_group, matrix_ambient, Family, GroupSpec, Sign};

/// The diagonal `+-1` matrices of determinant 1 in `SL_n^eps(q)`.
pub fn diagonal_two_torus(n: usize, q: u32, sign: Sign) -> Result<Subgroup> {
    if n < 2 {
        return Err(Error::Precondition("n must be at least 2".into()));
    }
    let spec = GroupSpec::signed(sign, true, false, n, q)?;
    let amb = matrix_ambient(&spec)?;
    let field = amb.field().unwrap().clone();
    let minus = field.neg(field.one());
    let elements: Vec<Element> = (0u32..1 << n)
        .filter(|mask| mask.count_ones() % 2 == 0)
        .map(|mask| {
            let d: Vec<FieldElement> = (0..n)
                .map(|k| if mask >> k & 1 == 1 { minus } else { field.one() })
                .collect();
            Element::Matrix(Matrix::diagonal(&d))
        })
        .collect();
    Ok(Subgroup::from_closed_elements(&amb, elements))
}

/// Roots in the base field of the characteristic polynomial, each with its
/// algebraic multiplicity `n - rank((M - r)^n)`. For a quotient ambient the
/// canonical representative is used.
pub fn eigenvalues_in_field(amb: &Ambient, x: &Element) -> Result<Vec<(FieldElement, usize)>> {
    let field = amb
        .field()
        .ok_or_else(|| Error::Precondition("not a matrix".into()))?;
    let m = x.as_matrix().ok_or(Error::MixedVariants)?;
    let n = m.dim();
    let mut out = Vec::new();
    for r in field.elements() {
        let e: Vec<FieldElement> = (0..n * n)
            .map(|k| {
                let v = m.entry(k / n, k % n);
                if k / n == k % n {
                    field.sub(v, r)
                } else {
                    v
                }
            })
            .collect();
        let shifted = Matrix::from_entries(n, &e);
        let mut p = shifted.clone();
        for _ in 1..n {
            p = mat_mul(field, &p, &shifted);
        }
        let rows: Vec<Vec<FieldElement>> = (0..n).map(|i| (0..n).map(|j| p.entry(i, j)).collect()).collect();
        let mult = n - mat_rank(field, &rows);
        if mult > 0 {
            out.push((r, mult));
        }
    }
    Ok(out)
}

/// `[[0, l], [1, 0]] (+) [[0, -l], [1, 0]]` in `SL_4(q)` with `l` of
/// order 4; needs `q = 1 mod 4`.
pub fn order_four_block_matrix(q: u32) -> Result<(Arc<Ambient>, Element)> {
    let spec = GroupSpec::new(super::Family::SL, 4, q)?;
    let amb = matrix_ambient(&spec)?;
    let field = amb.field().unwrap().clone();
    let l = field
        .element_of_order(4)
        .ok_or_else(|| Error::Precondition(format!("GF({q}) has no element of order 4")))?;
    let z = FieldElement::ZERO;
    let one = field.one();
    let e = [
        z, l, z, z, //
        one, z, z, z, //
        z, z, z, field.neg(l), //
        z, z, one, z,
    ];
    let x = Element::Matrix(Matrix::from_entries(4, &e));
    amb.validate(&x)?;
    Ok((amb, x))
}

/// `n = 2` and `q = 3, 5 mod 8`; `(2, 3)` is excluded.
pub fn goldschmidt_test(n: usize, q: u32, _sign: Sign) -> Result<bool> {
    if n < 2 || (n, q) == (2, 3) {
        return Err(Error::Precondition(format!("(n, q) = ({n}, {q}) is excluded")));
    }
    if super::odd_prime_power(q).is_none() {
        return Err(Error::Precondition(format!("q = {q} is not an odd prime power")));
    }
    Ok(n == 2 && matches!(q % 8, 3 | 5))
}

/// Block-embedded `SL_2^eps(q)` copies along the diagonal, with monomial
/// conjugators between neighbours.
pub struct GenerationData {
    pub group: Group,
    pub blocks: Vec<Subgroup>,
    /// `blocks[i]^conjugators[i] = blocks[i + 1]`.
    pub conjugators: Vec<Element>,
}

pub fn generation_subgroups(n: usize, q: u32, sign: Sign) -> Result<GenerationData> {
    if n < 3 {
        return Err(Error::Precondition("n must be at least 3".into()));
    }
    let spec = GroupSpec::signed(sign, true, false, n, q)?;
    let group = make_group(&spec)?;
    let amb = group.ambient().clone();
    let field = amb.field().unwrap().clone();
    let small = make_group(&GroupSpec::signed(sign, true, false, 2, q)?)?;
    let mut blocks = Vec::new();
    for i in 0..n - 1 {
        let gens: Vec<Element> = small
            .gens()
            .iter()
            .map(|g| Element::Matrix(embed(n, i, g.as_matrix().unwrap())))
            .collect();
        blocks.push(Subgroup::generated(&amb, &gens, DEFAULT_CAP)?);
    }
    let mut conjugators = Vec::new();
    for i in 0..n - 2 {
        // the transposition (i, i+2) with one sign flipped
        let mut e = vec![FieldElement::ZERO; n * n];
        for k in 0..n {
            let j = if k == i {
                i + 2
            } else if k == i + 2 {
                i
            } else {
                k
            };
            e[k * n + j] = if k == i + 2 { field.neg(field.one()) } else { field.one() };
        }
        let m = Element::Matrix(Matrix::from_entries(n, &e));
        amb.validate(&m)?;
        if amb.det(&m) != field.one() {
            return Err(Error::Internal("monomial conjugator not in SL".into()));
        }
        let mut conj: Vec<Element> = blocks[i].elements().iter().map(|u| amb.conj(u, &m)).collect();
        conj.sort_unstable();
        if conj != blocks[i + 1].elements() {
            return Err(Error::Internal(format!("block {} does not conjugate to block {}", i + 1, i + 2)));
        }
        conjugators.push(m);
    }
    Ok(GenerationData {
        group,
        blocks,
        conjugators,
    })
}

/// Involutions of `W ∩ SL_n(q)` for the Sylow 2-subgroup `W` of
/// `GL_n(q)`, and their images in `PSL_n(q)`.
#[derive(Clone, Debug)]
pub struct LiftedInvolutions {
    pub sylow_order: usize,
    /// Involutions of `W ∩ SL_n(q)`.
    pub lifts: Vec<Element>,
    /// Distinct nontrivial images in `PSL_n(q)`.
    pub images: Vec<Element>,
    /// The class label of each image.
    pub labels: Vec<InvolutionLabel>,
}

pub fn lifted_involutions(n: usize, q: u32) -> Result<LiftedInvolutions> {
    let w = gl_sylow(&GroupSpec::new(Family::GL, n, q)?)?;
    let amb = w.ambient().clone();
    let field = amb.field().unwrap().clone();
    let psl = ambient(&GroupSpec::new(Family::PSL, n, q)?)?;
    let lifts: Vec<Element> = w
        .elements()
        .iter()
        .filter(|x| det_of(&field, x) == field.one() && amb.order(x) == 2)
        .cloned()
        .collect();
    let mut images: Vec<Element> = lifts
        .iter()
        .map(|x| psl.canon(x.clone()))
        .filter(|y| !psl.is_identity(y))
        .collect();
    images.sort_unstable();
    images.dedup();
    let labels = images.iter().map(|y| classify(&psl, y)).collect::<Result<Vec<_>>>()?;
    Ok(LiftedInvolutions {
        sylow_order: w.order(),
        lifts,
        images,
        labels,
    })
}

/// The explicit five-generator Sylow 2-subgroup of `A_10`.
pub fn explicit_sylow_a10() -> Result<Subgroup> {
    let amb = Ambient::permutations(10);
    let gens = [
        amb.perm(&[&[1, 2, 3, 4], &[9, 10]])?,
        amb.perm(&[&[1, 2], &[3, 4]])?,
        amb.perm(&[&[5, 6, 7, 8], &[9, 10]])?,
        amb.perm(&[&[5, 6], &[7, 8]])?,
        amb.perm(&[&[1, 5], &[2, 6], &[3, 7], &[4, 8]])?,
    ];
    Subgroup::generated(&amb, &gens, DEFAULT_CAP)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classical::ambient;
    use crate::grp::cores::image_in;

    #[test]
    fn lifted_involutions_of_psl43() {
        let l = lifted_involutions(4, 3).unwrap();
        assert_eq!(l.sylow_order, 512);
        assert_eq!(l.lifts.len(), 35);
        assert_eq!(l.images.len(), 17);
        assert!(l.labels.iter().all(|&t| t == InvolutionLabel::T(2)));
    }

    #[test]
    fn torus_orders() {
        for n in 2..=6 {
            assert_eq!(diagonal_two_torus(n, 3, Sign::Plus).unwrap().order(), 1 << (n - 1));
            assert_eq!(diagonal_two_torus(n, 5, Sign::Minus).unwrap().order(), 1 << (n - 1));
        }
    }

    #[test]
    fn eigenvalue_examples() {
        let (amb, m) = order_four_block_matrix(5).unwrap();
        assert!(eigenvalues_in_field(&amb, &m).unwrap().is_empty());
        let p = ambient(&GroupSpec::new(Family::PSL, 4, 5).unwrap()).unwrap();
        let img = image_in(&p, &Subgroup::generated(&amb, &[m], 100).unwrap());
        assert_eq!(img.order(), 4);
        let amb3 = Ambient::matrices(2, Arc::new(crate::gf::Field::new(3, 1).unwrap())).unwrap();
        let id = amb3.identity();
        assert_eq!(eigenvalues_in_field(&amb3, &id).unwrap(), vec![(FieldElement(1), 2)]);
        let d = amb3.matrix(&[&[1, 0], &[0, -1]]).unwrap();
        assert_eq!(eigenvalues_in_field(&amb3, &d).unwrap(), vec![(FieldElement(1), 1), (FieldElement(2), 1)]);
    }

    #[test]
    fn goldschmidt_examples() {
        assert!(goldschmidt_test(2, 5, Sign::Plus).unwrap());
        assert!(!goldschmidt_test(2, 7, Sign::Plus).unwrap());
        assert!(!goldschmidt_test(3, 3, Sign::Minus).unwrap());
        assert!(goldschmidt_test(2, 3, Sign::Plus).is_err());
    }

    #[test]
    fn unitary_blocks_have_su2_order() {
        let d = generation_subgroups(4, 3, Sign::Minus).unwrap();
        assert_eq!(d.blocks.len(), 3);
        assert!(d.blocks.iter().all(|u| u.order() == 24));
    }

    #[test]
    fn a10_sylow_counts() {
        let s = explicit_sylow_a10().unwrap();
        assert_eq!(s.order(), 128);
        let ct = |t: &[usize]| {
            s.elements()
                .iter()
                .filter(|x| x.as_perm().unwrap().cycle_type() == t)
                .count()
        };
        assert_eq!(ct(&[2, 2]), 14);
        assert_eq!(ct(&[2, 2, 2, 2]), 29);
    }
}
