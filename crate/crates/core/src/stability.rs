//! Generic ext, dimension-vector stability, and the doubling certificate.
//!
//! `ext(b, d) = max(0, max { -<b', d> : b' embeds generically in b })` and
//! `b'` embeds in `b` iff `ext(b', b - b') = 0`. Every nontrivial inner call
//! has a strictly smaller first argument, so the recursion terminates.
//!
//! Semistability of `alpha` at `theta`: `theta . alpha = 0` and
//! `theta . beta >= 0` on every generic subdimension vector.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use serde::Serialize;

use crate::doubling::{lift_dimension, lift_weight, DoublingMap, Representation};
use crate::error::{Error, Result};
use crate::forms::euler_pairing;
use crate::par::Exec;
use crate::quiver::{DimVector, Quiver, Weight};
use crate::DEFAULT_MAX_BOX;

type Key = (Vec<i64>, Vec<i64>);

/// Memoized generic ext on one quiver. Safe to share across threads.
#[derive(Debug)]
pub struct GenericExt {
    quiver: Quiver,
    max_box: u64,
    exec: Exec,
    memo: RwLock<HashMap<Key, i64>>,
    subdim_memo: RwLock<HashMap<Vec<i64>, Arc<Vec<DimVector>>>>,
}

impl Clone for GenericExt {
    fn clone(&self) -> Self {
        GenericExt {
            quiver: self.quiver.clone(),
            max_box: self.max_box,
            exec: self.exec,
            memo: RwLock::new(self.memo.read().expect("ext memo poisoned").clone()),
            subdim_memo: RwLock::new(
                self.subdim_memo
                    .read()
                    .expect("subdimension memo poisoned")
                    .clone(),
            ),
        }
    }
}

impl GenericExt {
    pub fn new(q: &Quiver) -> Self {
        GenericExt {
            quiver: q.clone(),
            max_box: DEFAULT_MAX_BOX,
            exec: Exec::default(),
            memo: RwLock::new(HashMap::new()),
            subdim_memo: RwLock::new(HashMap::new()),
        }
    }

    pub fn with_max_box(mut self, max_box: u64) -> Self {
        self.max_box = max_box;
        self
    }

    pub fn with_exec(mut self, exec: Exec) -> Self {
        self.exec = exec;
        self
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn max_box(&self) -> u64 {
        self.max_box
    }

    pub fn exec(&self) -> Exec {
        self.exec
    }

    /// Number of cached ext values.
    pub fn cached(&self) -> usize {
        self.memo.read().expect("ext memo poisoned").len()
    }

    fn check_dim(&self, v: &DimVector) -> Result<()> {
        DimVector::new(&self.quiver, v.entries().to_vec()).map(|_| ())
    }

    fn check_weight(&self, t: &Weight) -> Result<()> {
        Weight::new(&self.quiver, t.entries().to_vec()).map(|_| ())
    }

    fn check_box(&self, v: &DimVector) -> Result<usize> {
        let boxes = v.box_size();
        if boxes > self.max_box as u128 {
            return Err(Error::CapExceeded {
                boxes,
                cap: self.max_box,
            });
        }
        Ok(boxes as usize)
    }

    pub fn ext(&self, b: &DimVector, d: &DimVector) -> Result<i64> {
        self.check_dim(b)?;
        self.check_dim(d)?;
        self.check_box(b)?;
        Ok(self.ext_raw(b.entries(), d.entries()))
    }

    /// Generic hom, `ext + <b, d>`.
    pub fn hom(&self, b: &DimVector, d: &DimVector) -> Result<i64> {
        Ok(self.ext(b, d)? + euler_pairing(&self.quiver, b.entries(), d.entries()))
    }

    fn ext_raw(&self, b: &[i64], d: &[i64]) -> i64 {
        if b.iter().all(|&x| x == 0) || d.iter().all(|&x| x == 0) {
            return 0;
        }
        let key = (b.to_vec(), d.to_vec());
        if let Some(&v) = self.memo.read().expect("ext memo poisoned").get(&key) {
            return v;
        }
        let whole = DimVector::from_entries(b.to_vec());
        let mut best = 0;
        for sub in whole.below() {
            let value = -euler_pairing(&self.quiver, sub.entries(), d);
            // Only candidates that would raise the maximum need the embedding test.
            if value > best && self.embeds_raw(sub.entries(), b) {
                best = value;
            }
        }
        self.memo
            .write()
            .expect("ext memo poisoned")
            .insert(key, best);
        best
    }

    fn embeds_raw(&self, sub: &[i64], whole: &[i64]) -> bool {
        if sub.iter().all(|&x| x == 0) || sub == whole {
            return true;
        }
        let rest: Vec<i64> = whole.iter().zip(sub).map(|(w, s)| w - s).collect();
        self.ext_raw(sub, &rest) == 0
    }

    fn subdims_cached(&self, alpha: &DimVector) -> Arc<Vec<DimVector>> {
        if let Some(hit) = self
            .subdim_memo
            .read()
            .expect("subdimension memo poisoned")
            .get(alpha.entries())
        {
            return Arc::clone(hit);
        }
        let list: Vec<DimVector> = alpha
            .below()
            .filter(|b| self.embeds_raw(b.entries(), alpha.entries()))
            .collect();
        let list = Arc::new(list);
        self.subdim_memo
            .write()
            .expect("subdimension memo poisoned")
            .insert(alpha.entries().to_vec(), Arc::clone(&list));
        list
    }

    /// True when a generic representation of `whole` has a subrepresentation of dimension `sub`.
    pub fn embeds(&self, sub: &DimVector, whole: &DimVector) -> Result<bool> {
        self.check_dim(sub)?;
        self.check_dim(whole)?;
        if !sub.is_below(whole) {
            return Ok(false);
        }
        self.check_box(sub)?;
        Ok(self.embeds_raw(sub.entries(), whole.entries()))
    }

    /// All generic subdimension vectors of `alpha`, in box order.
    pub fn subdims(&self, alpha: &DimVector) -> Result<Vec<DimVector>> {
        self.check_dim(alpha)?;
        let n = self.check_box(alpha)?;
        let found = self.exec.map_range(n, |k| {
            let beta = alpha.box_point(k as u128);
            self.embeds_raw(beta.entries(), alpha.entries())
                .then_some(beta)
        });
        Ok(found.into_iter().flatten().collect())
    }

    pub fn is_semistable(&self, alpha: &DimVector, theta: &Weight) -> Result<bool> {
        self.check_dim(alpha)?;
        self.check_weight(theta)?;
        self.check_box(alpha)?;
        Ok(self.semistable_raw(alpha, theta))
    }

    fn semistable_raw(&self, alpha: &DimVector, theta: &Weight) -> bool {
        if alpha.is_zero() {
            return true;
        }
        if theta.pair(alpha) != 0 {
            return false;
        }
        !self
            .subdims_cached(alpha)
            .iter()
            .any(|beta| theta.pair(beta) < 0)
    }

    pub fn is_stable(&self, alpha: &DimVector, theta: &Weight) -> Result<bool> {
        self.check_dim(alpha)?;
        self.check_weight(theta)?;
        if alpha.is_zero() {
            return Err(Error::ZeroVector);
        }
        self.check_box(alpha)?;
        Ok(self.stable_raw(alpha, theta))
    }

    fn stable_raw(&self, alpha: &DimVector, theta: &Weight) -> bool {
        if alpha.is_zero() || theta.pair(alpha) != 0 {
            return false;
        }
        !self
            .subdims_cached(alpha)
            .iter()
            .any(|beta| !beta.is_zero() && beta != alpha && theta.pair(beta) <= 0)
    }

    /// Every `beta <= alpha` that is `theta`-semistable, zero included, in box order.
    pub fn enumerate_semistable(
        &self,
        alpha: &DimVector,
        theta: &Weight,
    ) -> Result<Vec<DimVector>> {
        self.check_dim(alpha)?;
        self.check_weight(theta)?;
        let n = self.check_box(alpha)?;
        let found = self.exec.map_range(n, |k| {
            let beta = alpha.box_point(k as u128);
            self.semistable_raw(&beta, theta).then_some(beta)
        });
        Ok(found.into_iter().flatten().collect())
    }

    /// Every nonzero `beta <= alpha` that is `theta`-stable, in box order.
    pub fn enumerate_stable(&self, alpha: &DimVector, theta: &Weight) -> Result<Vec<DimVector>> {
        self.check_dim(alpha)?;
        self.check_weight(theta)?;
        let n = self.check_box(alpha)?;
        let found = self.exec.map_range(n, |k| {
            let beta = alpha.box_point(k as u128);
            self.stable_raw(&beta, theta).then_some(beta)
        });
        Ok(found.into_iter().flatten().collect())
    }

    /// No split `gamma = beta + (gamma - beta)` with ext vanishing both ways.
    pub fn is_schur_root(&self, gamma: &DimVector) -> Result<bool> {
        self.check_dim(gamma)?;
        if gamma.is_zero() {
            return Err(Error::ZeroVector);
        }
        self.check_box(gamma)?;
        Ok(!gamma.below().any(|beta| {
            if beta.is_zero() || beta == *gamma {
                return false;
            }
            let rest = gamma.sub(&beta);
            self.ext_raw(beta.entries(), rest.entries()) == 0
                && self.ext_raw(rest.entries(), beta.entries()) == 0
        }))
    }
}

pub fn generic_ext(q: &Quiver, b: &DimVector, d: &DimVector) -> Result<i64> {
    GenericExt::new(q).ext(b, d)
}

pub fn generic_subdims(q: &Quiver, alpha: &DimVector) -> Result<Vec<DimVector>> {
    GenericExt::new(q).subdims(alpha)
}

pub fn is_semistable_dim(q: &Quiver, alpha: &DimVector, theta: &Weight) -> Result<bool> {
    GenericExt::new(q).is_semistable(alpha, theta)
}

pub fn is_stable_dim(q: &Quiver, alpha: &DimVector, theta: &Weight) -> Result<bool> {
    GenericExt::new(q).is_stable(alpha, theta)
}

pub fn enumerate_semistable_dims(
    q: &Quiver,
    alpha: &DimVector,
    theta: &Weight,
) -> Result<Vec<DimVector>> {
    GenericExt::new(q).enumerate_semistable(alpha, theta)
}

pub fn is_schur_root(q: &Quiver, gamma: &DimVector) -> Result<bool> {
    GenericExt::new(q).is_schur_root(gamma)
}

/// Outcome of [`verify_doubling_report`]. Failures are listed as readable strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DoublingCheck {
    pub n: i64,
    pub lifted_alpha: Vec<i64>,
    pub lifted_theta: Vec<i64>,
    /// Semistable vectors below the lifted `alpha`, zero included.
    pub semistable_count: usize,
    pub failures: Vec<String>,
}

impl DoublingCheck {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn verify_doubling(
    q: &Quiver,
    alpha: &DimVector,
    theta: &Weight,
    d: &DoublingMap,
    n: i64,
) -> Result<bool> {
    let source = GenericExt::new(q);
    let target = GenericExt::new(d.result());
    Ok(verify_doubling_report(&source, &target, alpha, theta, d, n)?.holds())
}

/// Checks that `gamma -> gamma^v` matches semistable and stable vectors below
/// `alpha` with those below `alpha^v`, and that nothing unbalanced is semistable.
pub fn verify_doubling_report(
    source: &GenericExt,
    target: &GenericExt,
    alpha: &DimVector,
    theta: &Weight,
    d: &DoublingMap,
    n: i64,
) -> Result<DoublingCheck> {
    if d.source() != source.quiver() || d.result() != target.quiver() {
        return Err(Error::DoublingMismatch(
            "doubling map does not match the quivers".into(),
        ));
    }
    source.check_dim(alpha)?;
    source.check_weight(theta)?;
    let lifted_alpha = lift_dimension(alpha, d)?;
    let lifted_theta = lift_weight(theta, d, n)?;
    target.check_box(&lifted_alpha)?;
    let mut failures = Vec::new();

    let semistable = target.enumerate_semistable(&lifted_alpha, &lifted_theta)?;
    for beta in &semistable {
        match d.descend_entries(beta.entries()) {
            None => failures.push(format!("unbalanced {beta} is semistable upstairs")),
            Some(g) => {
                let gamma = DimVector::from_entries(g);
                if !source.semistable_raw(&gamma, theta) {
                    failures.push(format!("{beta} is semistable upstairs but {gamma} is not"));
                }
            }
        }
    }

    let checks = source.exec.map_range(source.check_box(alpha)?, |k| {
        let gamma = alpha.box_point(k as u128);
        let up = DimVector::from_entries(d.lift_entries(gamma.entries()));
        let mut out = Vec::new();
        let (ss, ss_up) = (
            source.semistable_raw(&gamma, theta),
            target.semistable_raw(&up, &lifted_theta),
        );
        if ss != ss_up {
            out.push(format!(
                "semistability of {gamma} is {ss} but of {up} is {ss_up}"
            ));
        }
        let (st, st_up) = (
            source.stable_raw(&gamma, theta),
            target.stable_raw(&up, &lifted_theta),
        );
        if st != st_up {
            out.push(format!(
                "stability of {gamma} is {st} but of {up} is {st_up}"
            ));
        }
        out
    });
    failures.extend(checks.into_iter().flatten());

    Ok(DoublingCheck {
        n,
        lifted_alpha: lifted_alpha.entries().to_vec(),
        lifted_theta: lifted_theta.entries().to_vec(),
        semistable_count: semistable.len(),
        failures,
    })
}

const MAX_THIN_SUPPORT: usize = 24;

/// Closed subsets of the support of a thin representation, as bit masks over
/// the support's positions.
fn thin_closed_supports(q: &Quiver, x: &Representation) -> Result<(Vec<usize>, Vec<u64>)> {
    if x.dims().len() != q.vertex_count() || x.maps().len() != q.arrow_count() {
        return Err(Error::DomainMismatch {
            expected: q.vertex_count(),
            got: x.dims().len(),
        });
    }
    if let Some(i) = x.dims().iter().position(|&d| d > 1) {
        return Err(Error::NotThin(format!(
            "dimension {} at vertex `{}`",
            x.dims()[i],
            q.vertex_id(i)
        )));
    }
    let support: Vec<usize> = (0..q.vertex_count())
        .filter(|&i| x.dims()[i] == 1)
        .collect();
    if support.len() > MAX_THIN_SUPPORT {
        return Err(Error::CapExceeded {
            boxes: 1u128 << support.len(),
            cap: 1 << MAX_THIN_SUPPORT,
        });
    }
    let mut pos = vec![usize::MAX; q.vertex_count()];
    for (k, &i) in support.iter().enumerate() {
        pos[i] = k;
    }
    let edges: Vec<(usize, usize)> = q
        .arrows()
        .iter()
        .enumerate()
        .filter(|(i, a)| x.dims()[a.source] == 1 && x.dims()[a.target] == 1 && !x.map(*i).is_zero())
        .map(|(_, a)| (pos[a.source], pos[a.target]))
        .collect();
    let closed = (0..1u64 << support.len())
        .filter(|&s| {
            edges
                .iter()
                .all(|&(a, b)| s >> a & 1 == 0 || s >> b & 1 == 1)
        })
        .collect();
    Ok((support, closed))
}

fn mask_weight(support: &[usize], theta: &Weight, mask: u64) -> i64 {
    support
        .iter()
        .enumerate()
        .filter(|(k, _)| mask >> k & 1 == 1)
        .map(|(_, &i)| theta.entries()[i])
        .sum()
}

/// Semistability of a concrete thin representation via its closed supports.
pub fn thin_rep_semistable(q: &Quiver, x: &Representation, theta: &Weight) -> Result<bool> {
    Weight::new(q, theta.entries().to_vec())?;
    let (support, closed) = thin_closed_supports(q, x)?;
    let full = (1u64 << support.len()) - 1;
    Ok(mask_weight(&support, theta, full) == 0
        && closed.iter().all(|&s| mask_weight(&support, theta, s) >= 0))
}

/// Stable variant of [`thin_rep_semistable`]; the zero representation is never stable.
pub fn thin_rep_stable(q: &Quiver, x: &Representation, theta: &Weight) -> Result<bool> {
    Weight::new(q, theta.entries().to_vec())?;
    let (support, closed) = thin_closed_supports(q, x)?;
    if support.is_empty() {
        return Ok(false);
    }
    let full = (1u64 << support.len()) - 1;
    Ok(mask_weight(&support, theta, full) == 0
        && closed
            .iter()
            .filter(|&&s| s != 0 && s != full)
            .all(|&s| mask_weight(&support, theta, s) > 0))
}
