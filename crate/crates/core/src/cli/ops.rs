//! The operations a manifest check may name.

use std::collections::{BTreeMap, BTreeSet};
use std::path::PathBuf;
use std::sync::{Arc, Mutex};

use crate::classical::special::order_four_block_matrix;
use crate::classical::{
    ambient, diagonal_two_torus, eigenvalues_in_field, explicit_sylow_a10, generation_subgroups, goldschmidt_test,
    involution_reps, lifted_involutions, make_group, sylow2_in, GroupSpec, Sign,
};
use crate::fusion::{build_fusion, inner_fusion, is_isomorphic, FusionSystem, IsoOutcome};
use crate::gf::{tilde_related, two_part, Field};
use crate::grp::cores::image_in;
use crate::grp::{recognize_2_group, two_rank, Group, Subgroup};
use crate::local2::{is_k_generated, k_connected, k_connected_small, normal_ea_test_small, two_group_library};
use crate::{Error, Result};

use super::cache::load_or_build;
use super::manifest::CheckSpec;

/// Groups up to this order are enumerated and written to the cache
/// directory when one is given.
pub const CACHE_LIMIT: u128 = 400_000;
/// Cap for operations that enumerate a whole group.
pub const ENUMERATION_CAP: usize = 2_000_000;

/// What an operation measured.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Measured {
    Value(String),
    /// The computation ran into a search or size limit.
    Indeterminate(String),
}

impl<T: ToString> From<T> for Measured {
    fn from(v: T) -> Measured {
        Measured::Value(v.to_string())
    }
}

type Slot = Arc<Mutex<Option<Arc<Group>>>>;

/// Shared state for one suite run: the cache directory and the groups
/// built so far.
pub struct Context {
    cache_dir: Option<PathBuf>,
    groups: Mutex<BTreeMap<String, Slot>>,
    notes: Mutex<BTreeSet<String>>,
}

impl Context {
    pub fn new(cache_dir: Option<PathBuf>) -> Context {
        Context {
            cache_dir,
            groups: Mutex::new(BTreeMap::new()),
            notes: Mutex::new(BTreeSet::new()),
        }
    }

    pub fn cache_dir(&self) -> Option<&PathBuf> {
        self.cache_dir.as_ref()
    }

    /// Cache notes such as rebuilt files, sorted.
    pub fn notes(&self) -> Vec<String> {
        self.notes.lock().unwrap().iter().cloned().collect()
    }

    /// The group named by `descriptor`, built once per run. Small groups go
    /// through the on-disk cache.
    pub fn group(&self, descriptor: &str) -> Result<(GroupSpec, Arc<Group>)> {
        let spec: GroupSpec = descriptor.parse()?;
        let key = spec.to_string();
        let slot = self.groups.lock().unwrap().entry(key.clone()).or_default().clone();
        let mut slot = slot.lock().unwrap();
        if let Some(g) = slot.as_ref() {
            return Ok((spec, g.clone()));
        }
        let g = match &self.cache_dir {
            Some(dir) if spec.order() <= CACHE_LIMIT => {
                let (g, status) = load_or_build(&spec, Some(dir), ENUMERATION_CAP)?;
                if let Some(note) = status.note() {
                    self.notes.lock().unwrap().insert(format!("{key}: {note}"));
                }
                g
            }
            _ => make_group(&spec)?,
        };
        let g = Arc::new(g);
        *slot = Some(g.clone());
        Ok((spec, g))
    }

    fn sylow(&self, descriptor: &str) -> Result<(Arc<Group>, Subgroup)> {
        let (spec, g) = self.group(descriptor)?;
        let s = sylow2_in(&g, &spec)?;
        Ok((g, s))
    }

    fn fusion(&self, descriptor: &str) -> Result<FusionSystem> {
        let (g, s) = self.sylow(descriptor)?;
        build_fusion(&g, Some(&s))
    }
}

pub type OpFn = fn(&CheckSpec, &Context) -> Result<Measured>;

/// Registered operations: name, implementation, parameters.
pub const OPERATIONS: &[(&str, OpFn, &str)] = &[
    ("alt10.explicit_sylow", alt10_explicit_sylow, ""),
    ("classical.generation_join", generation_join, "n q sign"),
    ("classical.goldschmidt", goldschmidt, "n q sign"),
    ("classical.involution_reps", classical_involution_reps, "n q"),
    ("classical.lifted_involutions", classical_lifted_involutions, "n q"),
    ("classical.no_eigenvalue_matrix", no_eigenvalue_matrix, "q"),
    ("classical.torus_order", torus_order, "n q sign"),
    ("fusion.center", fusion_center, "group"),
    ("fusion.classes_via_subgroups", fusion_classes_via_subgroups, "group"),
    ("fusion.focal_order", fusion_focal, "group"),
    ("fusion.hyperfocal_order", fusion_hyperfocal, "group"),
    ("fusion.involution_classes", fusion_involution_classes, "group [sylow=explicit]"),
    ("fusion.isomorphic", fusion_isomorphic, "a b"),
    ("fusion.isomorphic_to_inner", fusion_isomorphic_to_inner, "a inner"),
    ("fusion.nilpotent", fusion_nilpotent, "group [system=inner]"),
    ("fusion.realization", fusion_realization, "group"),
    ("gf.frobenius_fixed", gf_frobenius_fixed, "p f"),
    ("gf.tilde", gf_tilde, "a b"),
    ("gf.two_part", gf_two_part, "n"),
    ("gf.unit_exponent", gf_unit_exponent, "p f"),
    ("group.order", group_order, "group"),
    ("local2.k_connected", local2_k_connected, "group k"),
    ("local2.k_generated", local2_k_generated, "group k"),
    ("local2.normal_ea_sweep", local2_normal_ea_sweep, "max_order ks"),
    ("sylow.order", sylow_order, "group"),
    ("sylow.rank", sylow_rank, "group"),
    ("sylow.type", sylow_type, "group"),
];

pub fn lookup(op: &str) -> Option<OpFn> {
    OPERATIONS.iter().find(|(name, _, _)| *name == op).map(|&(_, f, _)| f)
}

fn param_i64(c: &CheckSpec, key: &str) -> Result<i64> {
    let v = c.param(key)?;
    v.parse()
        .map_err(|_| Error::Precondition(format!("check `{}`: `{key}` = {v:?} is not an integer", c.id)))
}

fn param_u32(c: &CheckSpec, key: &str) -> Result<u32> {
    Ok(c.param_usize(key)? as u32)
}

fn param_sign(c: &CheckSpec) -> Result<Sign> {
    match c.params.get("sign").map(String::as_str) {
        None | Some("plus") | Some("+") => Ok(Sign::Plus),
        Some("minus") | Some("-") => Ok(Sign::Minus),
        Some(v) => Err(Error::Precondition(format!("check `{}`: unknown sign {v:?}", c.id))),
    }
}

fn bool_str(b: bool) -> Measured {
    b.into()
}

fn gf_two_part(c: &CheckSpec, _: &Context) -> Result<Measured> {
    Ok(two_part(param_i64(c, "n")?)?.into())
}

fn gf_tilde(c: &CheckSpec, _: &Context) -> Result<Measured> {
    Ok(bool_str(tilde_related(param_i64(c, "a")?, param_i64(c, "b")?)?))
}

fn gf_frobenius_fixed(c: &CheckSpec, _: &Context) -> Result<Measured> {
    let f = Field::new(param_u32(c, "p")?, param_u32(c, "f")?)?;
    let mut fixed = 0;
    for x in f.elements() {
        if f.frobenius(x)? == x {
            fixed += 1;
        }
    }
    Ok(fixed.into())
}

fn gf_unit_exponent(c: &CheckSpec, _: &Context) -> Result<Measured> {
    let f = Field::new(param_u32(c, "p")?, param_u32(c, "f")?)?;
    let e = f.elements().filter_map(|x| f.element_order(x)).max().unwrap_or(0);
    Ok(e.into())
}

fn group_order(c: &CheckSpec, ctx: &Context) -> Result<Measured> {
    let (_, g) = ctx.group(c.param("group")?)?;
    Ok(g.enumerate_with_cap(ENUMERATION_CAP)?.len().into())
}

fn sylow_type(c: &CheckSpec, ctx: &Context) -> Result<Measured> {
    let (_, s) = ctx.sylow(c.param("group")?)?;
    Ok(recognize_2_group(&s)?.into())
}

fn sylow_order(c: &CheckSpec, ctx: &Context) -> Result<Measured> {
    let (_, s) = ctx.sylow(c.param("group")?)?;
    Ok(s.order().into())
}

fn sylow_rank(c: &CheckSpec, ctx: &Context) -> Result<Measured> {
    let (_, s) = ctx.sylow(c.param("group")?)?;
    Ok(two_rank(&s)?.into())
}

fn classical_involution_reps(c: &CheckSpec, _: &Context) -> Result<Measured> {
    let reps = involution_reps(c.param_usize("n")?, param_u32(c, "q")?)?;
    let labels: Vec<String> = reps.iter().map(|r| r.label.to_string()).collect();
    Ok(labels.join(",").into())
}

/// `lifts/images/labels`.
fn classical_lifted_involutions(c: &CheckSpec, _: &Context) -> Result<Measured> {
    let l = lifted_involutions(c.param_usize("n")?, param_u32(c, "q")?)?;
    let labels: BTreeSet<String> = l.labels.iter().map(|t| t.to_string()).collect();
    let labels: Vec<String> = labels.into_iter().collect();
    Ok(format!("{}/{}/{}", l.lifts.len(), l.images.len(), labels.join(",")).into())
}

/// `eigenvalues/projective order`.
fn no_eigenvalue_matrix(c: &CheckSpec, _: &Context) -> Result<Measured> {
    let q = param_u32(c, "q")?;
    let (amb, m) = order_four_block_matrix(q)?;
    let eig = eigenvalues_in_field(&amb, &m)?;
    let p = ambient(&format!("PSL({},{q})", amb.dim()).parse()?)?;
    let img = image_in(&p, &Subgroup::generated(&amb, &[m], 1 << 10)?);
    Ok(format!("{}/{}", eig.len(), img.order()).into())
}

fn torus_order(c: &CheckSpec, _: &Context) -> Result<Measured> {
    let t = diagonal_two_torus(c.param_usize("n")?, param_u32(c, "q")?, param_sign(c)?)?;
    Ok(t.order().into())
}

/// Order of the join of the block subgroups. Construction fails if a
/// monomial conjugator does not carry one block onto the next.
fn generation_join(c: &CheckSpec, _: &Context) -> Result<Measured> {
    let d = generation_subgroups(c.param_usize("n")?, param_u32(c, "q")?, param_sign(c)?)?;
    let mut join = d.blocks[0].clone();
    for b in &d.blocks[1..] {
        join = join.join(b)?;
    }
    Ok(join.order().into())
}

fn goldschmidt(c: &CheckSpec, _: &Context) -> Result<Measured> {
    Ok(bool_str(goldschmidt_test(c.param_usize("n")?, param_u32(c, "q")?, param_sign(c)?)?))
}

/// `order/count of 2^2 involutions/count of 2^4 involutions`.
fn alt10_explicit_sylow(_: &CheckSpec, _: &Context) -> Result<Measured> {
    let s = explicit_sylow_a10()?;
    let count = |k: usize| {
        s.elements()
            .iter()
            .filter(|x| x.as_perm().is_some_and(|p| p.cycle_type() == vec![2; k]))
            .count()
    };
    Ok(format!("{}/{}/{}", s.order(), count(2), count(4)).into())
}

fn fusion_involution_classes(c: &CheckSpec, ctx: &Context) -> Result<Measured> {
    let f = match c.params.get("sylow").map(String::as_str) {
        Some("explicit") => {
            let (_, g) = ctx.group(c.param("group")?)?;
            build_fusion(&g, Some(&explicit_sylow_a10()?))?
        }
        Some(v) => return Err(Error::Precondition(format!("check `{}`: unknown sylow {v:?}", c.id))),
        None => ctx.fusion(c.param("group")?)?,
    };
    let mut sizes: Vec<usize> = f.involution_classes().iter().map(|&(_, n)| n).collect();
    sizes.sort_unstable();
    let sizes: Vec<String> = sizes.iter().map(usize::to_string).collect();
    Ok(sizes.join(",").into())
}

fn iso_measured(f1: &FusionSystem, f2: &FusionSystem) -> Result<Measured> {
    Ok(match is_isomorphic(f1, f2)? {
        IsoOutcome::Isomorphic(cert) => {
            if !cert.verify(f1, f2)? {
                return Err(Error::Integrity("certificate does not re-verify".into()));
            }
            "isomorphic".into()
        }
        IsoOutcome::NotIsomorphic { .. } => "not-isomorphic".into(),
        IsoOutcome::Indeterminate { reason } => Measured::Indeterminate(reason),
    })
}

fn fusion_isomorphic(c: &CheckSpec, ctx: &Context) -> Result<Measured> {
    let f1 = ctx.fusion(c.param("a")?)?;
    let f2 = ctx.fusion(c.param("b")?)?;
    iso_measured(&f1, &f2)
}

/// Compares `F(a)` with the inner fusion system of a Sylow 2-subgroup of
/// `inner`.
fn fusion_isomorphic_to_inner(c: &CheckSpec, ctx: &Context) -> Result<Measured> {
    let f1 = ctx.fusion(c.param("a")?)?;
    let (_, s) = ctx.sylow(c.param("inner")?)?;
    iso_measured(&f1, &inner_fusion(&s)?)
}

/// `|Z(F)|/whether Z(F) = S ∩ Z(G)`.
fn fusion_center(c: &CheckSpec, ctx: &Context) -> Result<Measured> {
    let f = ctx.fusion(c.param("group")?)?;
    let z = f.fusion_center()?;
    let g = f.group().expect("built from a group");
    g.enumerate_with_cap(ENUMERATION_CAP)?;
    let zg = f.meet(&crate::grp::center(g)?);
    Ok(format!("{}/{}", z.len(), z == zg).into())
}

fn fusion_focal(c: &CheckSpec, ctx: &Context) -> Result<Measured> {
    Ok(ctx.fusion(c.param("group")?)?.focal()?.len().into())
}

fn fusion_hyperfocal(c: &CheckSpec, ctx: &Context) -> Result<Measured> {
    Ok(ctx.fusion(c.param("group")?)?.hyperfocal()?.len().into())
}

fn fusion_nilpotent(c: &CheckSpec, ctx: &Context) -> Result<Measured> {
    let f = match c.params.get("system").map(String::as_str) {
        None | Some("group") => ctx.fusion(c.param("group")?)?,
        Some("inner") => inner_fusion(&ctx.sylow(c.param("group")?)?.1)?,
        Some(v) => return Err(Error::Precondition(format!("check `{}`: unknown system {v:?}", c.id))),
    };
    Ok(bool_str(f.is_nilpotent()?))
}

/// Every stored morphism is re-derived from its conjugating element.
fn fusion_realization(c: &CheckSpec, ctx: &Context) -> Result<Measured> {
    ctx.fusion(c.param("group")?)?.verify_realization()?;
    Ok("ok".into())
}

fn fusion_classes_via_subgroups(c: &CheckSpec, ctx: &Context) -> Result<Measured> {
    let f = ctx.fusion(c.param("group")?)?;
    let same = f.element_classes_via_subgroups()? == f.element_classes();
    Ok(if same { "consistent" } else { "inconsistent" }.into())
}

fn local2_k_generated(c: &CheckSpec, ctx: &Context) -> Result<Measured> {
    let (g, s) = ctx.sylow(c.param("group")?)?;
    Ok(bool_str(is_k_generated(&g, &s, c.param_usize("k")?)?))
}

/// Number of connected components.
fn local2_k_connected(c: &CheckSpec, ctx: &Context) -> Result<Measured> {
    let (_, s) = ctx.sylow(c.param("group")?)?;
    Ok(k_connected(&s, c.param_usize("k")?)?.components.into())
}

/// Number of library groups (and values of `k`) where the normal
/// elementary abelian criterion holds but the graph is disconnected.
fn local2_normal_ea_sweep(c: &CheckSpec, _: &Context) -> Result<Measured> {
    let ks: Vec<usize> = c
        .param("ks")?
        .split(',')
        .map(|k| k.trim().parse())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| Error::Precondition(format!("check `{}`: bad `ks`", c.id)))?;
    let mut violations = 0;
    for (_, sg) in two_group_library(c.param_usize("max_order")?)? {
        for &k in &ks {
            if normal_ea_test_small(&sg, k)? && !k_connected_small(&sg, k)?.is_connected() {
                violations += 1;
            }
        }
    }
    Ok(violations.into())
}
