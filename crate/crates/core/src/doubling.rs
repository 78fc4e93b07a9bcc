//! Vertex doubling and bipartification.
//!
//! Doubling `v` replaces it by a source-side copy `v-` and a target-side copy
//! `v+` (in place, so `v-` takes `v`'s index and `v+` the next one), redirects
//! every arrow leaving `v` to leave `v-` and every arrow entering `v` to enter
//! `v+`, and appends one new arrow `e: v- -> v+`. A loop at `v` becomes an
//! arrow `v- -> v+`.
//!
//! Dimension vectors lift by copying `alpha(v)` to both new vertices; the
//! weight `theta^{v,n}` puts `-n` on `v-` and `theta(v) + n` on `v+`.

use serde_json::json;

use crate::error::{Error, Result};
use num_traits::Zero;

use crate::linalg::RatMatrix;
use crate::quiver::{DimVector, Quiver, Weight};

/// The data of a single doubling `Q -> Q^v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DoublingMap {
    source: Quiver,
    vertex: usize,
    result: Quiver,
    minus: usize,
    plus: usize,
    /// Source vertex index -> result vertex index (`v` maps to `v+`).
    vertex_map: Vec<usize>,
    /// Source arrow index -> result arrow index.
    arrow_map: Vec<usize>,
    e: usize,
}

fn fresh(base: String, taken: impl Fn(&str) -> bool) -> String {
    let mut id = base;
    while taken(&id) {
        id.push('\'');
    }
    id
}

/// Doubles the vertex `v` of `q`.
pub fn double_vertex(q: &Quiver, v: &str) -> Result<DoublingMap> {
    let vi = q.vertex_index(v)?;
    double_vertex_at(q, vi)
}

pub fn double_vertex_at(q: &Quiver, vi: usize) -> Result<DoublingMap> {
    if vi >= q.vertex_count() {
        return Err(Error::InvalidArgument(format!(
            "vertex index {vi} out of range"
        )));
    }
    let v = q.vertex_id(vi);
    let taken_vertex = |id: &str| id != v && q.has_vertex(id);
    let minus_id = fresh(format!("{v}-"), taken_vertex);
    let plus_id = fresh(format!("{v}+"), |id| taken_vertex(id) || id == minus_id);
    let e_id = fresh(format!("e{v}"), |id| q.has_arrow(id));

    let mut ids = Vec::with_capacity(q.vertex_count() + 1);
    let mut vertex_map = Vec::with_capacity(q.vertex_count());
    for (i, id) in q.vertices().iter().enumerate() {
        if i == vi {
            ids.push(minus_id.clone());
            ids.push(plus_id.clone());
            vertex_map.push(ids.len() - 1);
        } else {
            ids.push(id.clone());
            vertex_map.push(ids.len() - 1);
        }
    }
    let (minus, plus) = (vi, vi + 1);
    let mut arrows = Vec::with_capacity(q.arrow_count() + 1);
    for a in q.arrows() {
        let s = if a.source == vi {
            minus
        } else {
            vertex_map[a.source]
        };
        let t = if a.target == vi {
            plus
        } else {
            vertex_map[a.target]
        };
        arrows.push((a.id.clone(), ids[s].clone(), ids[t].clone()));
    }
    arrows.push((e_id, minus_id, plus_id));
    let result = Quiver::new(ids, arrows)?;
    Ok(DoublingMap {
        source: q.clone(),
        vertex: vi,
        result,
        minus,
        plus,
        vertex_map,
        arrow_map: (0..q.arrow_count()).collect(),
        e: q.arrow_count(),
    })
}

impl DoublingMap {
    pub fn source(&self) -> &Quiver {
        &self.source
    }

    pub fn result(&self) -> &Quiver {
        &self.result
    }

    /// Index of the doubled vertex in the source quiver.
    pub fn vertex(&self) -> usize {
        self.vertex
    }

    pub fn minus(&self) -> usize {
        self.minus
    }

    pub fn plus(&self) -> usize {
        self.plus
    }

    /// Index of the new arrow `e` in the result quiver.
    pub fn e(&self) -> usize {
        self.e
    }

    pub fn lifted_arrow(&self, a: usize) -> usize {
        self.arrow_map[a]
    }

    /// Lifts a raw vector indexed by source vertices, copying the entry at `v`.
    pub fn lift_entries(&self, values: &[i64]) -> Vec<i64> {
        let mut out = vec![0; self.result.vertex_count()];
        for (i, &x) in values.iter().enumerate() {
            out[self.vertex_map[i]] = x;
        }
        out[self.minus] = values[self.vertex];
        out
    }

    /// Inverse of [`Self::lift_entries`] on balanced vectors; `None` if unbalanced.
    pub fn descend_entries(&self, values: &[i64]) -> Option<Vec<i64>> {
        if values[self.minus] != values[self.plus] {
            return None;
        }
        Some(self.vertex_map.iter().map(|&j| values[j]).collect())
    }

    pub fn to_json(&self) -> serde_json::Value {
        let arrow_map: serde_json::Map<String, serde_json::Value> = self
            .source
            .arrows()
            .iter()
            .enumerate()
            .map(|(i, a)| {
                (
                    a.id.clone(),
                    json!(self.result.arrows()[self.arrow_map[i]].id.clone()),
                )
            })
            .collect();
        json!({
            "source": self.source.to_json_value(),
            "vertex": self.source.vertex_id(self.vertex),
            "result": self.result.to_json_value(),
            "minus": self.result.vertex_id(self.minus),
            "plus": self.result.vertex_id(self.plus),
            "arrow_map": arrow_map,
            "e": self.result.arrows()[self.e].id.clone(),
        })
    }

    fn check_source_len(&self, len: usize) -> Result<()> {
        if len != self.source.vertex_count() {
            return Err(Error::DomainMismatch {
                expected: self.source.vertex_count(),
                got: len,
            });
        }
        Ok(())
    }
}

/// `alpha^v`.
pub fn lift_dimension(alpha: &DimVector, d: &DoublingMap) -> Result<DimVector> {
    d.check_source_len(alpha.len())?;
    Ok(DimVector::from_entries(d.lift_entries(alpha.entries())))
}

/// `theta^{v,n}`.
pub fn lift_weight(theta: &Weight, d: &DoublingMap, n: i64) -> Result<Weight> {
    d.check_source_len(theta.len())?;
    if n < 0 {
        return Err(Error::InvalidArgument(format!(
            "n must be non-negative, got {n}"
        )));
    }
    let mut out = d.lift_entries(theta.entries());
    out[d.minus] = -n;
    out[d.plus] = theta.entries()[d.vertex] + n;
    Ok(Weight::from_entries(out))
}

/// `1 + sum_i max(alpha(i) theta(i), 0)`.
pub fn sufficient_n(alpha: &DimVector, theta: &Weight) -> Result<i64> {
    if alpha.len() != theta.len() {
        return Err(Error::DomainMismatch {
            expected: alpha.len(),
            got: theta.len(),
        });
    }
    Ok(1 + alpha
        .entries()
        .iter()
        .zip(theta.entries())
        .map(|(a, t)| (a * t).max(0))
        .sum::<i64>())
}

/// How the shift `n` is chosen at each doubling step.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NChoice {
    /// [`sufficient_n`] of the current data.
    Auto,
    Fixed(i64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum Side {
    Minus,
    Plus,
}

/// Result of doubling every vertex of a quiver in canonical order.
#[derive(Debug, Clone)]
pub struct Bipartition {
    pub quiver: Quiver,
    pub dim: DimVector,
    pub weight: Weight,
    pub trail: Vec<DoublingMap>,
    /// The shift used at each step.
    pub shifts: Vec<i64>,
    /// Side of each result vertex.
    pub sides: Vec<Side>,
}

impl Bipartition {
    /// True when every arrow runs from a minus vertex to a plus vertex.
    pub fn is_bipartite(&self) -> bool {
        self.quiver
            .arrows()
            .iter()
            .all(|a| self.sides[a.source] == Side::Minus && self.sides[a.target] == Side::Plus)
    }

    /// Lifts a source dimension vector through the whole trail.
    pub fn lift_dimension(&self, gamma: &DimVector) -> Result<DimVector> {
        self.trail
            .iter()
            .try_fold(gamma.clone(), |g, d| lift_dimension(&g, d))
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "quiver": self.quiver.to_json_value(),
            "alpha": self.quiver.vector_json(self.dim.entries()),
            "theta": self.quiver.vector_json(self.weight.entries()),
            "shifts": self.shifts,
            "sides": self.sides,
            "bipartite": self.is_bipartite(),
            "trail": self.trail.iter().map(DoublingMap::to_json).collect::<Vec<_>>(),
        })
    }
}

/// Doubles every vertex of `q`, choosing `n` by [`sufficient_n`] at each step.
pub fn bipartify(q: &Quiver, alpha: &DimVector, theta: &Weight) -> Result<Bipartition> {
    bipartify_with(q, alpha, theta, NChoice::Auto)
}

pub fn bipartify_with(
    q: &Quiver,
    alpha: &DimVector,
    theta: &Weight,
    choice: NChoice,
) -> Result<Bipartition> {
    DimVector::new(q, alpha.entries().to_vec())?;
    Weight::new(q, theta.entries().to_vec())?;
    let mut quiver = q.clone();
    let mut dim = alpha.clone();
    let mut weight = theta.clone();
    // `None` marks a vertex that has not been doubled yet.
    let mut sides: Vec<Option<Side>> = vec![None; q.vertex_count()];
    let mut trail = Vec::with_capacity(q.vertex_count());
    let mut shifts = Vec::with_capacity(q.vertex_count());
    for original in q.vertices() {
        let vi = quiver.vertex_index(original)?;
        let d = double_vertex_at(&quiver, vi)?;
        let n = match choice {
            NChoice::Auto => sufficient_n(&dim, &weight)?,
            NChoice::Fixed(n) => n,
        };
        dim = lift_dimension(&dim, &d)?;
        weight = lift_weight(&weight, &d, n)?;
        sides.splice(vi..=vi, [Some(Side::Minus), Some(Side::Plus)]);
        quiver = d.result().clone();
        trail.push(d);
        shifts.push(n);
    }
    let sides = sides
        .into_iter()
        .map(|s| s.expect("every vertex doubled"))
        .collect();
    Ok(Bipartition {
        quiver,
        dim,
        weight,
        trail,
        shifts,
        sides,
    })
}

/// A point of the representation space: one matrix of shape
/// `alpha(head) x alpha(tail)` per arrow.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Representation {
    dims: Vec<usize>,
    maps: Vec<RatMatrix>,
}

impl Representation {
    pub fn new(q: &Quiver, dims: Vec<usize>, maps: Vec<RatMatrix>) -> Result<Self> {
        if dims.len() != q.vertex_count() {
            return Err(Error::DomainMismatch {
                expected: q.vertex_count(),
                got: dims.len(),
            });
        }
        if maps.len() != q.arrow_count() {
            return Err(Error::ShapeMismatch(format!(
                "{} matrices for {} arrows",
                maps.len(),
                q.arrow_count()
            )));
        }
        for (a, m) in q.arrows().iter().zip(&maps) {
            if m.shape() != (dims[a.target], dims[a.source]) {
                return Err(Error::ShapeMismatch(format!(
                    "arrow `{}` needs a {}x{} matrix, got {}x{}",
                    a.id,
                    dims[a.target],
                    dims[a.source],
                    m.rows(),
                    m.cols()
                )));
            }
        }
        Ok(Representation { dims, maps })
    }

    pub fn zero(q: &Quiver, dims: Vec<usize>) -> Result<Self> {
        let maps = q
            .arrows()
            .iter()
            .map(|a| RatMatrix::zeros(dims[a.target], dims[a.source]))
            .collect();
        Representation::new(q, dims, maps)
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim_vector(&self) -> DimVector {
        DimVector::from_entries(self.dims.iter().map(|&d| d as i64).collect())
    }

    pub fn map(&self, arrow: usize) -> &RatMatrix {
        &self.maps[arrow]
    }

    pub fn maps(&self) -> &[RatMatrix] {
        &self.maps
    }
}

/// An element of `Gl(alpha)`: one invertible block per vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupElement {
    blocks: Vec<RatMatrix>,
}

impl GroupElement {
    pub fn new(blocks: Vec<RatMatrix>) -> Result<Self> {
        for (i, b) in blocks.iter().enumerate() {
            if !b.is_square() {
                return Err(Error::NotSquare {
                    rows: b.rows(),
                    cols: b.cols(),
                });
            }
            if b.det()?.is_zero() {
                return Err(Error::Singular(format!("group block at vertex {i}")));
            }
        }
        Ok(GroupElement { blocks })
    }

    pub fn identity(dims: &[usize]) -> Self {
        GroupElement {
            blocks: dims.iter().map(|&d| RatMatrix::identity(d)).collect(),
        }
    }

    pub fn block(&self, i: usize) -> &RatMatrix {
        &self.blocks[i]
    }
}

/// `(g . x)(a) = g(head a) x(a) g(tail a)^{-1}`.
pub fn act(q: &Quiver, g: &GroupElement, x: &Representation) -> Result<Representation> {
    if g.blocks.len() != x.dims.len() {
        return Err(Error::DomainMismatch {
            expected: x.dims.len(),
            got: g.blocks.len(),
        });
    }
    for (i, b) in g.blocks.iter().enumerate() {
        if b.rows() != x.dims[i] {
            return Err(Error::ShapeMismatch(format!(
                "group block at vertex {i} has size {}, dimension is {}",
                b.rows(),
                x.dims[i]
            )));
        }
    }
    let inverses = g
        .blocks
        .iter()
        .map(RatMatrix::inverse)
        .collect::<Result<Vec<_>>>()?;
    let maps = q
        .arrows()
        .iter()
        .zip(&x.maps)
        .map(|(a, m)| RatMatrix::chain(&[&g.blocks[a.target], m, &inverses[a.source]]))
        .collect::<Result<Vec<_>>>()?;
    Representation::new(q, x.dims.clone(), maps)
}

fn check_source_rep(x: &Representation, d: &DoublingMap) -> Result<()> {
    if x.dims.len() != d.source.vertex_count() || x.maps.len() != d.source.arrow_count() {
        return Err(Error::DoublingMismatch(
            "representation does not live on the source quiver".into(),
        ));
    }
    Ok(())
}

fn check_result_rep(y: &Representation, d: &DoublingMap) -> Result<()> {
    if y.dims.len() != d.result.vertex_count() || y.maps.len() != d.result.arrow_count() {
        return Err(Error::DoublingMismatch(
            "representation does not live on the doubled quiver".into(),
        ));
    }
    if y.dims[d.minus] != y.dims[d.plus] {
        return Err(Error::Unbalanced {
            minus: y.dims[d.minus] as i64,
            plus: y.dims[d.plus] as i64,
        });
    }
    Ok(())
}

fn descend_dims(y: &Representation, d: &DoublingMap) -> Vec<usize> {
    d.vertex_map.iter().map(|&j| y.dims[j]).collect()
}

/// `iota(x)(a^v) = x(a)`, `iota(x)(e) = I`.
pub fn iota(x: &Representation, d: &DoublingMap) -> Result<Representation> {
    check_source_rep(x, d)?;
    let mut dims = vec![0usize; d.result.vertex_count()];
    for (i, &n) in x.dims.iter().enumerate() {
        dims[d.vertex_map[i]] = n;
    }
    dims[d.minus] = x.dims[d.vertex];
    let mut maps = vec![RatMatrix::zeros(0, 0); d.result.arrow_count()];
    for (i, m) in x.maps.iter().enumerate() {
        maps[d.arrow_map[i]] = m.clone();
    }
    maps[d.e] = RatMatrix::identity(x.dims[d.vertex]);
    Representation::new(&d.result, dims, maps)
}

/// `Phi(y)(a) = y(a^v) y(e)^*` for arrows leaving `v`, `y(a^v)` otherwise.
///
/// Defined for every balanced `y`: the adjugate needs no invertibility.
pub fn phi(y: &Representation, d: &DoublingMap) -> Result<Representation> {
    check_result_rep(y, d)?;
    let adj = y.maps[d.e].adjugate()?;
    descend_with(y, d, &adj)
}

/// `Psi(y)(a) = y(a^v) y(e)^{-1}` for arrows leaving `v`, `y(a^v)` otherwise.
pub fn psi(y: &Representation, d: &DoublingMap) -> Result<Representation> {
    check_result_rep(y, d)?;
    let inv = y.maps[d.e]
        .inverse()
        .map_err(|_| Error::Singular("y(e) is not invertible".into()))?;
    descend_with(y, d, &inv)
}

fn descend_with(y: &Representation, d: &DoublingMap, right: &RatMatrix) -> Result<Representation> {
    let maps = d
        .source
        .arrows()
        .iter()
        .enumerate()
        .map(|(i, a)| {
            let m = &y.maps[d.arrow_map[i]];
            if a.source == d.vertex {
                m.mul(right)
            } else {
                Ok(m.clone())
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Representation::new(&d.source, descend_dims(y, d), maps)
}

/// `gbar(i) = g(i)` away from `v`, `gbar(v) = g(v+)`.
pub fn restrict_group(g: &GroupElement, d: &DoublingMap) -> GroupElement {
    GroupElement {
        blocks: d.vertex_map.iter().map(|&j| g.blocks[j].clone()).collect(),
    }
}
