//! `group info` and `fusion compare`.

use std::path::Path;

use serde::Serialize;

use super::cache::{load_or_build, CacheStatus};
use super::ops::{CACHE_LIMIT, ENUMERATION_CAP};
use crate::classical::{make_group, sylow2_in, GroupSpec};
use crate::fusion::{build_fusion, is_isomorphic, FusionSystem, IsoCertificate, IsoOutcome};
use crate::grp::{conjugacy_classes, recognize_2_group, two_rank};
use crate::Result;

#[derive(Clone, Debug, Serialize)]
pub struct GroupInfo {
    pub descriptor: String,
    pub order: u128,
    /// Present when the group was enumerated.
    pub enumerated: Option<usize>,
    pub conjugacy_classes: Option<usize>,
    pub sylow2_type: String,
    pub sylow2_order: usize,
    pub two_rank: usize,
    /// Sizes of the fusion classes of involutions in the Sylow 2-subgroup.
    pub involution_classes: Vec<usize>,
    pub cache: String,
}

pub fn group_info(descriptor: &str, cache_dir: Option<&Path>) -> Result<GroupInfo> {
    let spec: GroupSpec = descriptor.parse()?;
    let order = spec.order();
    let (g, status) = if order <= CACHE_LIMIT {
        load_or_build(&spec, cache_dir, ENUMERATION_CAP)?
    } else {
        (make_group(&spec)?, CacheStatus::Uncached)
    };
    let cache = match &status {
        CacheStatus::Hit => "hit".to_string(),
        CacheStatus::Built => "built".to_string(),
        CacheStatus::Rebuilt(_) => status.note().unwrap_or_default(),
        CacheStatus::Uncached => "none".to_string(),
    };
    let enumerated = g.enumeration().ok().map(|e| e.len());
    let conjugacy_classes = match enumerated {
        Some(_) => Some(conjugacy_classes(&g)?.classes.len()),
        None => None,
    };
    let s = sylow2_in(&g, &spec)?;
    let f = build_fusion(&g, Some(&s))?;
    let mut involution_classes: Vec<usize> = f.involution_classes().iter().map(|c| c.1).collect();
    involution_classes.sort_unstable();
    Ok(GroupInfo {
        descriptor: spec.to_string(),
        order,
        enumerated,
        conjugacy_classes,
        sylow2_type: recognize_2_group(&s)?.to_string(),
        sylow2_order: s.order(),
        two_rank: two_rank(&s)?,
        involution_classes,
        cache,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct Comparison {
    pub a: String,
    pub b: String,
    /// `isomorphic`, `not-isomorphic` or `indeterminate`.
    pub outcome: String,
    pub reason: Option<String>,
    pub certificate: Option<IsoCertificate>,
    /// Whether the certificate re-verified against both systems.
    pub verified: Option<bool>,
}

impl Comparison {
    pub fn decided(&self) -> bool {
        self.outcome != "indeterminate"
    }
}

fn fusion_of(descriptor: &str) -> Result<FusionSystem> {
    let spec: GroupSpec = descriptor.parse()?;
    let g = make_group(&spec)?;
    let s = sylow2_in(&g, &spec)?;
    build_fusion(&g, Some(&s))
}

/// Compares the 2-fusion systems of two groups.
pub fn fusion_compare(a: &str, b: &str) -> Result<Comparison> {
    let (f1, f2) = (fusion_of(a)?, fusion_of(b)?);
    let mut c = Comparison {
        a: a.to_string(),
        b: b.to_string(),
        outcome: String::new(),
        reason: None,
        certificate: None,
        verified: None,
    };
    match is_isomorphic(&f1, &f2)? {
        IsoOutcome::Isomorphic(cert) => {
            c.outcome = "isomorphic".into();
            c.verified = Some(cert.verify(&f1, &f2)?);
            c.certificate = Some(cert);
        }
        IsoOutcome::NotIsomorphic { reason } => {
            c.outcome = "not-isomorphic".into();
            c.reason = Some(reason);
        }
        IsoOutcome::Indeterminate { reason } => {
            c.outcome = "indeterminate".into();
            c.reason = Some(reason);
        }
    }
    Ok(c)
}
