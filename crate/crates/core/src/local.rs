//! Representation types, local quiver settings, and smoothness verdicts.

use std::fmt;

use serde::Serialize;
use serde_json::json;

use crate::classify::classify;
use crate::error::{Error, Result};
use crate::forms::euler_pairing;
use crate::linalg::integer_rank;
use crate::quiver::{normalize_weight, DimVector, Quiver, Weight};
use crate::stability::GenericExt;
use crate::toric::simple_cycles;

/// A semistable representation type: stable dimension vectors with multiplicities.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RepType {
    slots: Vec<(DimVector, u64)>,
}

impl RepType {
    /// Caller guarantees every root is stable; checked only by [`local_setting`].
    pub fn new(slots: Vec<(DimVector, u64)>) -> Result<Self> {
        if let Some((_, 0)) = slots.iter().find(|(_, m)| *m == 0) {
            return Err(Error::InvalidArgument(
                "multiplicities must be positive".into(),
            ));
        }
        let len = slots.first().map(|(b, _)| b.len());
        if slots.iter().any(|(b, _)| Some(b.len()) != len) {
            return Err(Error::InvalidArgument(
                "slots live on different quivers".into(),
            ));
        }
        Ok(RepType { slots })
    }

    pub fn slots(&self) -> &[(DimVector, u64)] {
        &self.slots
    }

    pub fn total(&self, n: usize) -> DimVector {
        self.slots.iter().fold(DimVector::zero(n), |acc, (b, m)| {
            acc.add(&b.scale(*m as i64))
        })
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!(self
            .slots
            .iter()
            .map(|(b, m)| json!({ "root": b.entries(), "multiplicity": m }))
            .collect::<Vec<_>>())
    }
}

impl fmt::Display for RepType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.slots.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.slots.iter().map(|(b, m)| format!("{m}*{b}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Local quiver with one vertex per slot and dimension vector `mu`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LocalSetting {
    /// `arrows[i][j]` counts arrows from slot `i` to slot `j`.
    pub arrows: Vec<Vec<u64>>,
    pub mu: Vec<u64>,
}

impl LocalSetting {
    pub fn new(arrows: Vec<Vec<u64>>, mu: Vec<u64>) -> Result<Self> {
        if arrows.len() != mu.len() || arrows.iter().any(|r| r.len() != mu.len()) {
            return Err(Error::ShapeMismatch(
                "arrow matrix must be square of size |mu|".into(),
            ));
        }
        Ok(LocalSetting { arrows, mu })
    }

    /// One vertex with `loops` loops and dimension `n`.
    pub fn one_vertex(loops: u64, n: u64) -> Self {
        LocalSetting {
            arrows: vec![vec![loops]],
            mu: vec![n],
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.mu.len()
    }

    pub fn arrow_total(&self) -> u64 {
        self.arrows.iter().flatten().sum()
    }

    pub fn to_quiver(&self) -> Quiver {
        let mut edges = Vec::new();
        for (i, row) in self.arrows.iter().enumerate() {
            for (j, &c) in row.iter().enumerate() {
                edges.extend(std::iter::repeat_n((i, j), c as usize));
            }
        }
        Quiver::from_edges(self.mu.len(), &edges).expect("local quiver is well formed")
    }

    pub fn to_json(&self) -> serde_json::Value {
        let q = self.to_quiver();
        json!({
            "quiver": q.to_json_value(),
            "mu": q.vector_json(&self.mu.iter().map(|&m| m as i64).collect::<Vec<_>>()),
        })
    }

    fn restrict(&self, vertices: &[usize]) -> LocalSetting {
        LocalSetting {
            arrows: vertices
                .iter()
                .map(|&i| vertices.iter().map(|&j| self.arrows[i][j]).collect())
                .collect(),
            mu: vertices.iter().map(|&i| self.mu[i]).collect(),
        }
    }
}

/// Local setting of `tau`. Fails if some arrow count would be negative.
pub fn local_setting(q: &Quiver, tau: &RepType) -> Result<LocalSetting> {
    let roots: Vec<&DimVector> = tau.slots.iter().map(|(b, _)| b).collect();
    for b in &roots {
        DimVector::new(q, b.entries().to_vec())?;
    }
    let mut arrows = vec![vec![0u64; roots.len()]; roots.len()];
    for (i, bi) in roots.iter().enumerate() {
        for (j, bj) in roots.iter().enumerate() {
            let count = (i == j) as i64 - euler_pairing(q, bi.entries(), bj.entries());
            if count < 0 {
                return Err(Error::NegativeArrowCount {
                    from: i,
                    to: j,
                    count,
                });
            }
            arrows[i][j] = count as u64;
        }
    }
    Ok(LocalSetting {
        arrows,
        mu: tau.slots.iter().map(|(_, m)| *m).collect(),
    })
}

pub fn rep_types(q: &Quiver, alpha: &DimVector, theta: &Weight) -> Result<Vec<RepType>> {
    rep_types_with(&GenericExt::new(q), alpha, theta)
}

pub fn rep_types_with(g: &GenericExt, alpha: &DimVector, theta: &Weight) -> Result<Vec<RepType>> {
    if !g.is_semistable(alpha, theta)? {
        return Ok(Vec::new());
    }
    let stable = g.enumerate_stable(alpha, theta)?;
    rep_types_among(g, alpha, theta, &stable)
}

/// [`rep_types_with`] over a precomputed pool of `theta`-stable vectors.
///
/// The pool may exceed `alpha`; entries not below `alpha` are ignored. Every
/// stable vector below `alpha` must be present.
pub fn rep_types_among(
    g: &GenericExt,
    alpha: &DimVector,
    theta: &Weight,
    pool: &[DimVector],
) -> Result<Vec<RepType>> {
    if !g.is_semistable(alpha, theta)? {
        return Ok(Vec::new());
    }
    if alpha.is_zero() {
        return Ok(vec![RepType { slots: Vec::new() }]);
    }
    let stable: Vec<DimVector> = pool.iter().filter(|b| b.is_below(alpha)).cloned().collect();
    let stable = &stable;
    // Count vectors over the stable roots, then imaginary counts split into slots.
    let mut counts = Vec::new();
    let mut current = vec![0u64; stable.len()];
    count_vectors(stable, 0, alpha.clone(), &mut current, &mut counts);

    let q = g.quiver();
    let real: Vec<bool> = stable
        .iter()
        .map(|b| euler_pairing(q, b.entries(), b.entries()) == 1)
        .collect();
    let mut types = Vec::new();
    for c in counts {
        let mut choices: Vec<Vec<Vec<u64>>> = Vec::new();
        let mut roots = Vec::new();
        for (k, &ck) in c.iter().enumerate() {
            if ck == 0 {
                continue;
            }
            roots.push(k);
            choices.push(if real[k] {
                vec![vec![ck]]
            } else {
                partitions(ck)
            });
        }
        let mut pick = vec![0usize; choices.len()];
        loop {
            let slots = roots
                .iter()
                .zip(&pick)
                .enumerate()
                .flat_map(|(r, (&k, &p))| {
                    choices[r][p].iter().map(move |&m| (stable[k].clone(), m))
                })
                .collect();
            types.push(RepType { slots });
            // Odometer over the partition choices.
            let mut r = 0;
            while r < pick.len() {
                pick[r] += 1;
                if pick[r] < choices[r].len() {
                    break;
                }
                pick[r] = 0;
                r += 1;
            }
            if r == pick.len() {
                break;
            }
        }
    }
    Ok(types)
}

fn count_vectors(
    stable: &[DimVector],
    idx: usize,
    remaining: DimVector,
    current: &mut Vec<u64>,
    out: &mut Vec<Vec<u64>>,
) {
    if remaining.is_zero() {
        out.push(current.clone());
        return;
    }
    if idx == stable.len() {
        return;
    }
    let beta = &stable[idx];
    let max = beta
        .entries()
        .iter()
        .zip(remaining.entries())
        .filter(|(b, _)| **b > 0)
        .map(|(b, r)| r / b)
        .min()
        .unwrap_or(0);
    for c in (0..=max).rev() {
        current[idx] = c as u64;
        count_vectors(stable, idx + 1, remaining.sub(&beta.scale(c)), current, out);
    }
    current[idx] = 0;
}

/// Partitions of `n` as non-increasing part lists, largest first part first.
fn partitions(n: u64) -> Vec<Vec<u64>> {
    fn go(n: u64, max: u64, prefix: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if n == 0 {
            out.push(prefix.clone());
            return;
        }
        for part in (1..=max.min(n)).rev() {
            prefix.push(part);
            go(n - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum SmoothVerdict {
    Smooth,
    Singular,
    Unknown(String),
}

impl SmoothVerdict {
    pub fn is_singular(&self) -> bool {
        matches!(self, SmoothVerdict::Singular)
    }
}

impl fmt::Display for SmoothVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SmoothVerdict::Smooth => write!(f, "Smooth"),
            SmoothVerdict::Singular => write!(f, "Singular"),
            SmoothVerdict::Unknown(why) => write!(f, "Unknown ({why})"),
        }
    }
}

/// A verdict with the id of the rule that produced it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RuledVerdict {
    pub verdict: SmoothVerdict,
    pub rule: String,
}

impl RuledVerdict {
    fn new(verdict: SmoothVerdict, rule: &str) -> Self {
        RuledVerdict {
            verdict,
            rule: rule.to_string(),
        }
    }
}

/// Rules, in order:
/// - `R0` a disconnected setting is decided component by component;
/// - `R1` no oriented cycle (in particular no arrows): Smooth;
/// - `R2` one vertex with `k` loops and dimension `n`: Smooth if `n = 1`,
///   `k <= 1` or `(n, k) = (2, 2)`, Singular if `n >= 3` and `k >= 2`;
/// - `R3` all `mu = 1`: Smooth iff the simple cycles are linearly independent;
/// - `R4` Unknown.
pub fn setting_smooth(s: &LocalSetting) -> RuledVerdict {
    let q = s.to_quiver();
    if !q.has_oriented_cycle() {
        return RuledVerdict::new(SmoothVerdict::Smooth, "R1");
    }
    let comps = q.components();
    if comps.len() > 1 {
        let parts: Vec<RuledVerdict> = comps
            .iter()
            .map(|c| setting_smooth(&s.restrict(c)))
            .collect();
        let rules: Vec<&str> = parts.iter().map(|p| p.rule.as_str()).collect();
        let rule = format!("R0[{}]", rules.join(","));
        let verdict = if parts.iter().any(|p| p.verdict.is_singular()) {
            SmoothVerdict::Singular
        } else if parts.iter().all(|p| p.verdict == SmoothVerdict::Smooth) {
            SmoothVerdict::Smooth
        } else {
            SmoothVerdict::Unknown("a component is undecided".into())
        };
        return RuledVerdict { verdict, rule };
    }
    if s.vertex_count() == 1 {
        let (k, n) = (s.arrows[0][0], s.mu[0]);
        let verdict = if n == 1 || k <= 1 || (n, k) == (2, 2) {
            SmoothVerdict::Smooth
        } else if n >= 3 && k >= 2 {
            SmoothVerdict::Singular
        } else {
            SmoothVerdict::Unknown(format!("one vertex, {k} loops, dimension {n}"))
        };
        return RuledVerdict::new(verdict, "R2");
    }
    if s.mu.iter().all(|&m| m == 1) {
        let cycles: Vec<Vec<i64>> = simple_cycles(&q)
            .into_iter()
            .map(|c| c.exponents().to_vec())
            .collect();
        let verdict = if integer_rank(&cycles) == cycles.len() {
            SmoothVerdict::Smooth
        } else {
            SmoothVerdict::Singular
        };
        return RuledVerdict::new(verdict, "R3");
    }
    RuledVerdict::new(
        SmoothVerdict::Unknown(format!(
            "{} vertices with dimensions {:?}",
            s.vertex_count(),
            s.mu
        )),
        "R4",
    )
}

/// A representation type with its local setting and verdict.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypeReport {
    pub rep_type: RepType,
    pub setting: LocalSetting,
    pub verdict: RuledVerdict,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModuliVerdict {
    /// `alpha` is not semistable.
    Empty,
    Decided(SmoothVerdict),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuliReport {
    pub verdict: ModuliVerdict,
    pub types: Vec<TypeReport>,
}

impl ModuliReport {
    pub fn is_singular(&self) -> bool {
        matches!(
            self.verdict,
            ModuliVerdict::Decided(SmoothVerdict::Singular)
        )
    }

    pub fn to_json(&self) -> serde_json::Value {
        let verdict = match &self.verdict {
            ModuliVerdict::Empty => json!({ "verdict": "Empty" }),
            ModuliVerdict::Decided(SmoothVerdict::Unknown(why)) => {
                json!({ "verdict": "Unknown", "reason": why })
            }
            ModuliVerdict::Decided(v) => json!({ "verdict": v.to_string() }),
        };
        let types: Vec<serde_json::Value> = self
            .types
            .iter()
            .map(|t| {
                json!({
                    "type": t.rep_type.to_json(),
                    "setting": t.setting.to_json(),
                    "verdict": t.verdict.verdict.to_string(),
                    "rule": t.verdict.rule,
                })
            })
            .collect();
        let mut out = verdict;
        out["types"] = json!(types);
        out
    }
}

pub fn moduli_smooth(q: &Quiver, alpha: &DimVector, theta: &Weight) -> Result<ModuliReport> {
    moduli_smooth_with(&GenericExt::new(q), alpha, theta)
}

pub fn moduli_smooth_with(
    g: &GenericExt,
    alpha: &DimVector,
    theta: &Weight,
) -> Result<ModuliReport> {
    moduli_from_types(g, rep_types_with(g, alpha, theta)?)
}

/// [`moduli_smooth_with`] over a precomputed stable pool, see [`rep_types_among`].
pub fn moduli_smooth_among(
    g: &GenericExt,
    alpha: &DimVector,
    theta: &Weight,
    pool: &[DimVector],
) -> Result<ModuliReport> {
    moduli_from_types(g, rep_types_among(g, alpha, theta, pool)?)
}

/// Singular if any type is Singular, Smooth if all are Smooth, else Unknown.
fn moduli_from_types(g: &GenericExt, types: Vec<RepType>) -> Result<ModuliReport> {
    if types.is_empty() {
        return Ok(ModuliReport {
            verdict: ModuliVerdict::Empty,
            types: Vec::new(),
        });
    }
    let reports = types
        .into_iter()
        .map(|t| {
            let setting = local_setting(g.quiver(), &t)?;
            let verdict = setting_smooth(&setting);
            Ok(TypeReport {
                rep_type: t,
                setting,
                verdict,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let verdict = if reports.iter().any(|r| r.verdict.verdict.is_singular()) {
        SmoothVerdict::Singular
    } else if reports
        .iter()
        .all(|r| r.verdict.verdict == SmoothVerdict::Smooth)
    {
        SmoothVerdict::Smooth
    } else {
        SmoothVerdict::Unknown("some local setting is undecided".into())
    };
    Ok(ModuliReport {
        verdict: ModuliVerdict::Decided(verdict),
        types: reports,
    })
}

/// A singular moduli space on a wild quiver: `3 gamma` at `theta`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub gamma: DimVector,
    pub theta: Weight,
    pub triple: DimVector,
    pub setting: LocalSetting,
    pub verdict: RuledVerdict,
    /// True when the antisymmetrized weight failed and a bounded search was used.
    pub fallback_weight: bool,
}

impl Witness {
    pub fn to_json(&self, q: &Quiver) -> serde_json::Value {
        json!({
            "gamma": q.vector_json(self.gamma.entries()),
            "euler_form": euler_pairing(q, self.gamma.entries(), self.gamma.entries()),
            "theta": q.vector_json(self.theta.entries()),
            "three_gamma": q.vector_json(self.triple.entries()),
            "setting": self.setting.to_json(),
            "verdict": self.verdict.verdict.to_string(),
            "rule": self.verdict.rule,
            "fallback_weight": self.fallback_weight,
        })
    }
}

/// Largest total size of `gamma` searched.
pub const WITNESS_MAX_TOTAL: i64 = 10;
const FALLBACK_WEIGHT_BOUND: i64 = 3;

/// Vectors with non-negative entries and the given total, in lexicographic order.
fn with_total(n: usize, total: i64) -> Vec<DimVector> {
    fn go(n: usize, left: i64, prefix: &mut Vec<i64>, out: &mut Vec<DimVector>) {
        if prefix.len() + 1 == n {
            prefix.push(left);
            out.push(DimVector::from_entries(prefix.clone()));
            prefix.pop();
            return;
        }
        for x in 0..=left {
            prefix.push(x);
            go(n, left - x, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        go(n, total, &mut Vec::new(), &mut out);
    }
    out
}

/// `None` for Dynkin and extended Dynkin quivers.
pub fn singular_witness(q: &Quiver) -> Result<Option<Witness>> {
    singular_witness_with(&GenericExt::new(q))
}

pub fn singular_witness_with(g: &GenericExt) -> Result<Option<Witness>> {
    let q = g.quiver();
    if !classify(q)?.kind.is_wild() {
        return Ok(None);
    }
    let n = q.vertex_count();
    for total in 1..=WITNESS_MAX_TOTAL {
        for gamma in with_total(n, total) {
            let form = euler_pairing(q, gamma.entries(), gamma.entries());
            if form >= 0 || !g.is_schur_root(&gamma)? {
                continue;
            }
            let Some((theta, fallback_weight)) = witness_weight(g, &gamma)? else {
                continue;
            };
            let triple = gamma.scale(3);
            if !g.is_semistable(&triple, &theta)? {
                continue;
            }
            let tau = RepType {
                slots: vec![(gamma.clone(), 3)],
            };
            let setting = local_setting(q, &tau)?;
            let verdict = setting_smooth(&setting);
            debug_assert_eq!(setting, LocalSetting::one_vertex((1 - form) as u64, 3));
            if !verdict.verdict.is_singular() {
                continue;
            }
            return Ok(Some(Witness {
                gamma,
                theta,
                triple,
                setting,
                verdict,
                fallback_weight,
            }));
        }
    }
    Err(Error::WitnessNotFound(format!(
        "no Schur root with negative Euler form and total at most {WITNESS_MAX_TOTAL}"
    )))
}

/// `theta(i) = <e_i, gamma> - <gamma, e_i>`, else the first stable weight in a small box.
fn witness_weight(g: &GenericExt, gamma: &DimVector) -> Result<Option<(Weight, bool)>> {
    let q = g.quiver();
    let n = q.vertex_count();
    let anti: Vec<i64> = (0..n)
        .map(|i| {
            let e = DimVector::unit(n, i);
            euler_pairing(q, e.entries(), gamma.entries())
                - euler_pairing(q, gamma.entries(), e.entries())
        })
        .collect();
    let theta = normalize_weight(&Weight::from_entries(anti));
    if g.is_stable(gamma, &theta)? {
        return Ok(Some((theta, false)));
    }
    let side = 2 * FALLBACK_WEIGHT_BOUND + 1;
    let corner = DimVector::from_entries(vec![side - 1; n]);
    for point in corner.below() {
        let theta = Weight::from_entries(
            point
                .entries()
                .iter()
                .map(|x| x - FALLBACK_WEIGHT_BOUND)
                .collect(),
        );
        if theta.pair(gamma) == 0 && g.is_stable(gamma, &theta)? {
            return Ok(Some((normalize_weight(&theta), true)));
        }
    }
    Ok(None)
}
