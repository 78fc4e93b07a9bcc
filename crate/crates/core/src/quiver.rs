//! Quivers, dimension vectors and weights.
//!
//! A quiver is stored as an ordered vertex list and an ordered arrow list. The
//! vertex order is the canonical index order for every vector and matrix
//! encoding in the crate; arrow order is preserved from the input.
//!
//! The text format is JSON:
//!
//! ```json
//! { "vertices": ["1", "2"],
//!   "arrows": [ { "id": "a12", "from": "1", "to": "2" } ] }
//! ```
//!
//! Dimension vectors and weights are JSON objects mapping vertex id to integer.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest magnitude accepted for a vector entry. Keeps every bilinear form
/// value comfortably inside `i64`.
pub const MAX_ENTRY: i64 = 1 << 24;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub id: String,
    pub source: usize,
    pub target: usize,
}

impl Arrow {
    pub fn is_loop(&self) -> bool {
        self.source == self.target
    }
}

/// A finite directed multigraph. Loops and parallel arrows are allowed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    index: HashMap<String, usize>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct ArrowRecord {
    id: String,
    from: String,
    to: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct QuiverRecord {
    vertices: Vec<String>,
    #[serde(default)]
    arrows: Vec<ArrowRecord>,
}

impl Quiver {
    /// Builds a quiver from vertex ids and `(arrow id, source id, target id)` triples.
    pub fn new<V, A>(vertices: V, arrows: A) -> Result<Self>
    where
        V: IntoIterator,
        V::Item: Into<String>,
        A: IntoIterator<Item = (String, String, String)>,
    {
        let vertices: Vec<String> = vertices.into_iter().map(Into::into).collect();
        let mut index = HashMap::with_capacity(vertices.len());
        for (i, v) in vertices.iter().enumerate() {
            if index.insert(v.clone(), i).is_some() {
                return Err(Error::InvalidQuiver(format!("duplicate vertex id `{v}`")));
            }
        }
        let mut seen = HashMap::new();
        let mut out = Vec::new();
        for (id, from, to) in arrows {
            if seen.insert(id.clone(), ()).is_some() {
                return Err(Error::InvalidQuiver(format!("duplicate arrow id `{id}`")));
            }
            let source = *index.get(&from).ok_or_else(|| {
                Error::InvalidQuiver(format!("arrow `{id}` starts at unknown vertex `{from}`"))
            })?;
            let target = *index.get(&to).ok_or_else(|| {
                Error::InvalidQuiver(format!("arrow `{id}` ends at unknown vertex `{to}`"))
            })?;
            out.push(Arrow { id, source, target });
        }
        Ok(Quiver {
            vertices,
            arrows: out,
            index,
        })
    }

    /// Builds a quiver on vertices `"1".."n"` from index pairs; arrows are named `a0, a1, ...`.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let vertices: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
        let mut arrows = Vec::with_capacity(edges.len());
        for (k, &(s, t)) in edges.iter().enumerate() {
            if s >= n || t >= n {
                return Err(Error::InvalidQuiver(format!("edge ({s},{t}) out of range")));
            }
            arrows.push((format!("a{k}"), vertices[s].clone(), vertices[t].clone()));
        }
        Quiver::new(vertices, arrows)
    }

    /// Parses the JSON quiver format.
    pub fn from_json(text: &str) -> Result<Self> {
        let record: QuiverRecord = serde_json::from_str(text)?;
        Quiver::new(
            record.vertices,
            record.arrows.into_iter().map(|a| (a.id, a.from, a.to)),
        )
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        let record = QuiverRecord {
            vertices: self.vertices.clone(),
            arrows: self
                .arrows
                .iter()
                .map(|a| ArrowRecord {
                    id: a.id.clone(),
                    from: self.vertices[a.source].clone(),
                    to: self.vertices[a.target].clone(),
                })
                .collect(),
        };
        serde_json::to_value(record).expect("quiver record serializes")
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn vertex_id(&self, i: usize) -> &str {
        &self.vertices[i]
    }

    pub fn vertex_index(&self, id: &str) -> Result<usize> {
        self.index
            .get(id)
            .copied()
            .ok_or_else(|| Error::UnknownVertex(id.to_string()))
    }

    pub fn has_vertex(&self, id: &str) -> bool {
        self.index.contains_key(id)
    }

    pub fn has_arrow(&self, id: &str) -> bool {
        self.arrows.iter().any(|a| a.id == id)
    }

    pub fn arrow_index(&self, id: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.id == id)
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Connected components of the underlying undirected graph, each sorted,
    /// listed by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.vertices.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for a in &self.arrows {
            let (r1, r2) = (find(&mut parent, a.source), find(&mut parent, a.target));
            if r1 != r2 {
                parent[r1.max(r2)] = r1.min(r2);
            }
        }
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for v in 0..n {
            let r = find(&mut parent, v);
            groups.entry(r).or_default().push(v);
        }
        groups.into_values().collect()
    }

    pub fn is_connected(&self) -> bool {
        !self.is_empty() && self.components().len() == 1
    }

    /// The full subquiver on the given vertices (in the given order).
    pub fn induced(&self, vertices: &[usize]) -> Quiver {
        let keep: HashMap<usize, usize> = vertices
            .iter()
            .enumerate()
            .map(|(new, &old)| (old, new))
            .collect();
        let ids: Vec<String> = vertices.iter().map(|&v| self.vertices[v].clone()).collect();
        let arrows = self
            .arrows
            .iter()
            .filter(|a| keep.contains_key(&a.source) && keep.contains_key(&a.target))
            .map(|a| {
                (
                    a.id.clone(),
                    self.vertices[a.source].clone(),
                    self.vertices[a.target].clone(),
                )
            })
            .collect::<Vec<_>>();
        Quiver::new(ids, arrows).expect("induced subquiver of a valid quiver is valid")
    }

    /// Splits the quiver into its connected components.
    pub fn split_components(&self) -> Vec<Quiver> {
        self.components().iter().map(|c| self.induced(c)).collect()
    }

    /// True when some oriented cycle (loops included) exists.
    pub fn has_oriented_cycle(&self) -> bool {
        let n = self.vertices.len();
        let mut indegree = vec![0usize; n];
        for a in &self.arrows {
            indegree[a.target] += 1;
        }
        let mut stack: Vec<usize> = (0..n).filter(|&v| indegree[v] == 0).collect();
        let mut removed = 0;
        while let Some(v) = stack.pop() {
            removed += 1;
            for a in self.arrows.iter().filter(|a| a.source == v) {
                indegree[a.target] -= 1;
                if indegree[a.target] == 0 {
                    stack.push(a.target);
                }
            }
        }
        removed < n
    }

    /// Vertices in a topological order, or `None` when there is an oriented cycle.
    /// Ties are broken by vertex index.
    pub fn topological_order(&self) -> Option<Vec<usize>> {
        let n = self.vertices.len();
        let mut indegree = vec![0usize; n];
        for a in &self.arrows {
            indegree[a.target] += 1;
        }
        let mut ready: std::collections::BTreeSet<usize> =
            (0..n).filter(|&v| indegree[v] == 0).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(&v) = ready.iter().next() {
            ready.remove(&v);
            order.push(v);
            for a in self.arrows.iter().filter(|a| a.source == v) {
                indegree[a.target] -= 1;
                if indegree[a.target] == 0 {
                    ready.insert(a.target);
                }
            }
        }
        (order.len() == n).then_some(order)
    }

    /// The quiver with every arrow reversed.
    pub fn opposite(&self) -> Quiver {
        let arrows = self
            .arrows
            .iter()
            .map(|a| {
                (
                    a.id.clone(),
                    self.vertices[a.target].clone(),
                    self.vertices[a.source].clone(),
                )
            })
            .collect::<Vec<_>>();
        Quiver::new(self.vertices.clone(), arrows).expect("opposite of a valid quiver")
    }

    /// Parses a vector given either inline (`"1,0,-2"`, canonical vertex order)
    /// or as a JSON object mapping vertex ids to integers.
    pub fn parse_vector(&self, text: &str) -> Result<Vec<i64>> {
        let trimmed = text.trim();
        if trimmed.starts_with('{') {
            let map: BTreeMap<String, i64> = serde_json::from_str(trimmed)?;
            let mut out = vec![0i64; self.vertex_count()];
            let mut seen = vec![false; self.vertex_count()];
            for (k, v) in map {
                let i = self.vertex_index(&k)?;
                out[i] = v;
                seen[i] = true;
            }
            if let Some(missing) = seen.iter().position(|s| !s) {
                return Err(Error::Parse(format!(
                    "vector object is missing vertex `{}`",
                    self.vertices[missing]
                )));
            }
            Ok(out)
        } else {
            let entries: Vec<i64> = if trimmed.is_empty() {
                Vec::new()
            } else {
                trimmed
                    .split(',')
                    .map(|s| {
                        s.trim()
                            .parse::<i64>()
                            .map_err(|e| Error::Parse(format!("bad integer `{s}`: {e}")))
                    })
                    .collect::<Result<_>>()?
            };
            if entries.len() != self.vertex_count() {
                return Err(Error::DomainMismatch {
                    expected: self.vertex_count(),
                    got: entries.len(),
                });
            }
            Ok(entries)
        }
    }

    /// JSON object mapping vertex ids to the given entries.
    pub fn vector_json(&self, entries: &[i64]) -> serde_json::Value {
        let map: serde_json::Map<String, serde_json::Value> = self
            .vertices
            .iter()
            .zip(entries)
            .map(|(k, v)| (k.clone(), serde_json::Value::from(*v)))
            .collect();
        serde_json::Value::Object(map)
    }

    pub fn dim(&self, entries: &[i64]) -> Result<DimVector> {
        DimVector::new(self, entries.to_vec())
    }

    pub fn weight(&self, entries: &[i64]) -> Result<Weight> {
        Weight::new(self, entries.to_vec())
    }
}

impl fmt::Display for Quiver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_json_value())
    }
}

/// Parses and validates a quiver in the JSON text format.
pub fn load_quiver(text: &str) -> Result<Quiver> {
    Quiver::from_json(text)
}

fn check_entries(entries: &[i64]) -> Result<()> {
    for &v in entries {
        if v.abs() > MAX_ENTRY {
            return Err(Error::EntryTooLarge {
                value: v,
                limit: MAX_ENTRY,
            });
        }
    }
    Ok(())
}

/// A non-negative integer vector indexed by the vertices of a quiver.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DimVector(Vec<i64>);

impl DimVector {
    pub fn new(q: &Quiver, entries: Vec<i64>) -> Result<Self> {
        if entries.len() != q.vertex_count() {
            return Err(Error::DomainMismatch {
                expected: q.vertex_count(),
                got: entries.len(),
            });
        }
        if let Some(i) = entries.iter().position(|&v| v < 0) {
            return Err(Error::NegativeDimension(q.vertex_id(i).to_string()));
        }
        check_entries(&entries)?;
        Ok(DimVector(entries))
    }

    /// Builds a vector without a quiver; entries must be non-negative.
    pub fn from_entries(entries: Vec<i64>) -> Self {
        assert!(
            entries.iter().all(|&v| v >= 0),
            "dimension entries must be non-negative"
        );
        DimVector(entries)
    }

    pub fn zero(n: usize) -> Self {
        DimVector(vec![0; n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        DimVector(v)
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&v| v == 0)
    }

    pub fn total(&self) -> i64 {
        self.0.iter().sum()
    }

    /// Componentwise `self <= other`.
    pub fn is_below(&self, other: &DimVector) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn add(&self, other: &DimVector) -> DimVector {
        DimVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self - other`; requires `other <= self`.
    pub fn sub(&self, other: &DimVector) -> DimVector {
        debug_assert!(other.is_below(self));
        DimVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, k: i64) -> DimVector {
        assert!(k >= 0);
        DimVector(self.0.iter().map(|a| a * k).collect())
    }

    /// Number of lattice points `beta <= self`, i.e. `prod(self(i) + 1)`.
    pub fn box_size(&self) -> u128 {
        self.0
            .iter()
            .try_fold(1u128, |acc, &v| acc.checked_mul(v as u128 + 1))
            .unwrap_or(u128::MAX)
    }

    /// The `k`-th point of the box below `self` in lexicographic order
    /// (last coordinate varies fastest).
    pub fn box_point(&self, mut k: u128) -> DimVector {
        let mut out = vec![0i64; self.0.len()];
        for i in (0..self.0.len()).rev() {
            let radix = self.0[i] as u128 + 1;
            out[i] = (k % radix) as i64;
            k /= radix;
        }
        DimVector(out)
    }

    /// All `beta <= self` in lexicographic order.
    pub fn below(&self) -> impl Iterator<Item = DimVector> + '_ {
        let n = self.box_size();
        (0..n).map(move |k| self.box_point(k))
    }
}

impl fmt::Display for DimVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, &self.0)
    }
}

/// An integer vector indexed by the vertices of a quiver.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight(Vec<i64>);

impl Weight {
    pub fn new(q: &Quiver, entries: Vec<i64>) -> Result<Self> {
        if entries.len() != q.vertex_count() {
            return Err(Error::DomainMismatch {
                expected: q.vertex_count(),
                got: entries.len(),
            });
        }
        check_entries(&entries)?;
        Ok(Weight(entries))
    }

    pub fn from_entries(entries: Vec<i64>) -> Self {
        Weight(entries)
    }

    pub fn zero(n: usize) -> Self {
        Weight(vec![0; n])
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&v| v == 0)
    }

    /// `sum_i theta(i) beta(i)`.
    pub fn pair(&self, beta: &DimVector) -> i64 {
        self.0.iter().zip(beta.entries()).map(|(t, b)| t * b).sum()
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, &self.0)
    }
}

fn write_tuple(f: &mut fmt::Formatter<'_>, v: &[i64]) -> fmt::Result {
    write!(f, "(")?;
    for (i, x) in v.iter().enumerate() {
        if i > 0 {
            write!(f, ",")?;
        }
        write!(f, "{x}")?;
    }
    write!(f, ")")
}

/// The primitive representative of the ray through `w`; the zero weight is
/// returned unchanged.
pub fn normalize_weight(w: &Weight) -> Weight {
    let g = w.0.iter().fold(0i64, |g, &x| g.gcd(&x));
    if g == 0 {
        return w.clone();
    }
    Weight(w.0.iter().map(|x| x / g).collect())
}
