//! Involution classes of `PSL_n(q)`, matched by the eigenstructure of a
//! lift rather than by searching the group.

use std::fmt;

use serde::Serialize;

use crate::gf::{gcd, Field, FieldElement};
use crate::grp::element::{mat_det, mat_mul, mat_rank};
use crate::grp::{Ambient, Element, Group, Matrix};
use crate::{Error, Result};

use super::{ambient, GroupSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum InvolutionLabel {
    T(usize),
    W,
}

impl fmt::Display for InvolutionLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InvolutionLabel::T(i) => write!(f, "t{i}"),
            InvolutionLabel::W => write!(f, "w"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct InvolutionRep {
    pub label: InvolutionLabel,
    /// The image in `PSL_n(q)`.
    pub element: Element,
    /// The matrix in `SL_n(q)` it was built from.
    pub lift: Matrix,
    pub rho: FieldElement,
    pub mu: Option<FieldElement>,
}

/// The parameters that decide which case applies.
struct Setup {
    field: Field,
    rho: FieldElement,
    mu: Option<FieldElement>,
    w_lift: Option<Matrix>,
}

fn setup(n: usize, field: Field) -> Setup {
    let q = field.order() as u64;
    let d = gcd(n as u64, q - 1);
    let rho = field.element_of_order(d).expect("d divides q - 1");
    let mu = field.sqrt(rho);
    let mut w_lift = None;
    if n % 2 == 0 && mu.is_none() {
        let h = n / 2;
        let mut e = vec![FieldElement::ZERO; n * n];
        for i in 0..h {
            e[i * n + h + i] = field.one();
            e[(h + i) * n + i] = rho;
        }
        let w = Matrix::from_entries(n, &e);
        if mat_det(&field, &w) == field.one() {
            w_lift = Some(w);
        }
    }
    Setup {
        field,
        rho,
        mu,
        w_lift,
    }
}

fn sign_diag(field: &Field, n: usize, i: usize, scale: FieldElement) -> Matrix {
    let d: Vec<FieldElement> = (0..n)
        .map(|k| if k < n - i { scale } else { field.neg(scale) })
        .collect();
    Matrix::diagonal(&d)
}

/// Representatives of the involution classes of `PSL_n(q)`:
/// `t_i` for even `2 <= i < n` when `n` is odd; `t_i` for `1 <= i <= n/2`
/// when `rho` is a square; otherwise even `t_i` with `i <= n/2`, plus `w`
/// when its lift has determinant 1.
pub fn involution_reps(n: usize, q: u32) -> Result<Vec<InvolutionRep>> {
    if n < 2 {
        return Err(Error::Precondition("n must be at least 2".into()));
    }
    let spec = GroupSpec::new(super::Family::PSL, n, q)?;
    let amb = ambient(&spec)?;
    let s = setup(n, (*spec.field()?).clone());
    let f = &s.field;
    let mut out = Vec::new();
    let mut push = |label, lift: Matrix| {
        out.push(InvolutionRep {
            label,
            element: amb.canon(Element::Matrix(lift.clone())),
            lift,
            rho: s.rho,
            mu: s.mu,
        })
    };
    if n % 2 == 1 {
        for i in (2..n).step_by(2) {
            push(InvolutionLabel::T(i), sign_diag(f, n, i, f.one()));
        }
    } else if let Some(mu) = s.mu {
        for i in 1..=n / 2 {
            let scale = if i % 2 == 1 { mu } else { f.one() };
            push(InvolutionLabel::T(i), sign_diag(f, n, i, scale));
        }
    } else {
        for i in (2..=n / 2).step_by(2) {
            push(InvolutionLabel::T(i), sign_diag(f, n, i, f.one()));
        }
        if let Some(w) = s.w_lift.clone() {
            push(InvolutionLabel::W, w);
        }
    }
    for r in &out {
        if mat_det(f, &r.lift) != f.one() {
            return Err(Error::Internal(format!("lift of {} is not in SL", r.label)));
        }
        if amb.order(&r.element) != 2 {
            return Err(Error::Internal(format!("{} is not an involution", r.label)));
        }
    }
    Ok(out)
}

/// The label of the representative `x` is conjugate to, read off a lift
/// `T` with `T^2 = lambda I`: for square `lambda = mu^2` the dimension of
/// the `-1`-eigenspace of `T / mu`, otherwise `w`.
pub fn match_involution_class(g: &Group, x: &Element) -> Result<InvolutionLabel> {
    classify(g.ambient(), x)
}

pub(crate) fn classify(amb: &Ambient, x: &Element) -> Result<InvolutionLabel> {
    let field = amb
        .field()
        .ok_or_else(|| Error::Precondition("not a matrix group".into()))?
        .clone();
    let n = amb.dim();
    let t = x.as_matrix().ok_or(Error::MixedVariants)?;
    if amb.is_identity(x) || !amb.is_identity(&amb.mul(x, x)) {
        return Err(Error::Precondition("element is not an involution".into()));
    }
    let t2 = mat_mul(&field, t, t);
    let lambda = t2
        .scalar_value()
        .ok_or_else(|| Error::Precondition("square of the lift is not scalar".into()))?;
    let s = setup(n, (*field).clone());
    let f = &s.field;
    let Some(mu) = f.sqrt(lambda) else {
        return if s.w_lift.is_some() {
            Ok(InvolutionLabel::W)
        } else {
            Err(Error::Internal("non-diagonalizable involution without a w class".into()))
        };
    };
    let inv = f.inv(mu).expect("lambda is nonzero");
    let rows: Vec<Vec<FieldElement>> = (0..n)
        .map(|r| {
            (0..n)
                .map(|c| {
                    let v = f.mul(t.entry(r, c), inv);
                    if r == c {
                        f.add(v, f.one())
                    } else {
                        v
                    }
                })
                .collect()
        })
        .collect();
    let i = n - mat_rank(f, &rows);
    let label = if n % 2 == 1 {
        if i % 2 == 0 {
            i
        } else {
            n - i
        }
    } else {
        i.min(n - i)
    };
    if label == 0 || (n % 2 == 1 && label % 2 == 1) || (n % 2 == 0 && s.mu.is_none() && label % 2 == 1) {
        return Err(Error::Internal(format!("eigenspace dimension {i} matches no representative")));
    }
    Ok(InvolutionLabel::T(label))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classical::make_group;
    use crate::grp::DEFAULT_CAP;

    fn labels(n: usize, q: u32) -> Vec<String> {
        involution_reps(n, q).unwrap().iter().map(|r| r.label.to_string()).collect()
    }

    #[test]
    fn representative_lists() {
        assert_eq!(labels(4, 3), ["t2", "w"]);
        assert_eq!(labels(3, 3), ["t2"]);
        assert_eq!(labels(4, 5), ["t2"]);
        assert_eq!(labels(2, 5), ["t1"]);
        assert_eq!(labels(2, 3), ["w"]);
        assert_eq!(labels(5, 3), ["t2", "t4"]);
    }

    #[test]
    fn reps_match_themselves() {
        for (n, q) in [(4usize, 3u32), (3, 3), (4, 5), (2, 5), (6, 3), (2, 7)] {
            let g = make_group(&GroupSpec::new(super::super::Family::PSL, n, q).unwrap()).unwrap();
            for r in involution_reps(n, q).unwrap() {
                assert_eq!(match_involution_class(&g, &r.element).unwrap(), r.label);
            }
        }
    }

    #[test]
    fn class_count_matches_brute_force_in_small_groups() {
        // PSL(2,5), PSL(3,3), PSL(2,9): classes of involutions by full class computation
        for (n, q) in [(2usize, 5u32), (3, 3), (2, 9), (2, 7)] {
            let spec = GroupSpec::new(super::super::Family::PSL, n, q).unwrap();
            let g = make_group(&spec).unwrap();
            g.enumerate_with_cap(DEFAULT_CAP).unwrap();
            let classes = crate::grp::conjugacy_classes(&g).unwrap();
            let inv_classes: Vec<_> = classes
                .classes
                .iter()
                .filter(|c| g.ambient().order(&c.rep) == 2)
                .collect();
            assert_eq!(inv_classes.len(), involution_reps(n, q).unwrap().len());
            // every involution gets the label of its class representative
            let e = g.enumeration().unwrap();
            for c in inv_classes {
                let l = match_involution_class(&g, &c.rep).unwrap();
                for &m in c.members.iter().take(50) {
                    assert_eq!(match_involution_class(&g, e.get(m as usize)).unwrap(), l);
                }
            }
        }
    }
}
