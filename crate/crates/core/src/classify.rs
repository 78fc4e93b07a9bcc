//! Dynkin / extended Dynkin / wild classification of connected quivers.
//!
//! Two independent routes decide the class:
//!
//! 1. [`classify_by_form`]: exact positive (semi)definiteness of the symmetrized
//!    Euler form by fraction-free symmetric elimination. The type is then named
//!    from `(vertex count, determinant)` in the definite case and from the
//!    largest entry of the primitive radical vector in the semidefinite case.
//! 2. [`classify_by_shape`]: direct recognition of the ADE and affine ADE graphs
//!    on the underlying multigraph.
//!
//! [`classify`] runs both and fails loudly if they disagree.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{CheckedMul, CheckedSub, Signed, ToPrimitive};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::forms::symmetrized_matrix;
use crate::linalg::{primitive_integer_vector, RatMatrix};
use crate::quiver::Quiver;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum DynkinType {
    A(usize),
    D(usize),
    E6,
    E7,
    E8,
}

/// Affine types, indexed so that `Ã_n`, `D̃_n`, `Ẽ_n` have `n + 1` vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum AffineType {
    A(usize),
    D(usize),
    E6,
    E7,
    E8,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum GraphKind {
    Dynkin(DynkinType),
    ExtendedDynkin(AffineType),
    Wild,
}

impl GraphKind {
    pub fn is_wild(&self) -> bool {
        matches!(self, GraphKind::Wild)
    }

    pub fn is_tame(&self) -> bool {
        !self.is_wild()
    }
}

impl fmt::Display for DynkinType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DynkinType::A(n) => write!(f, "A{n}"),
            DynkinType::D(n) => write!(f, "D{n}"),
            DynkinType::E6 => write!(f, "E6"),
            DynkinType::E7 => write!(f, "E7"),
            DynkinType::E8 => write!(f, "E8"),
        }
    }
}

impl fmt::Display for AffineType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AffineType::A(n) => write!(f, "~A{n}"),
            AffineType::D(n) => write!(f, "~D{n}"),
            AffineType::E6 => write!(f, "~E6"),
            AffineType::E7 => write!(f, "~E7"),
            AffineType::E8 => write!(f, "~E8"),
        }
    }
}

impl fmt::Display for GraphKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphKind::Dynkin(t) => write!(f, "Dynkin {t}"),
            GraphKind::ExtendedDynkin(t) => write!(f, "extended Dynkin {t}"),
            GraphKind::Wild => write!(f, "wild"),
        }
    }
}

/// Outcome of the symmetric elimination on the Gram matrix `2I - A - A^T`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FormCertificate {
    /// Successive nested principal minors (the Bareiss pivots) that were used.
    pub pivots: Vec<String>,
    /// Vertices skipped because their row vanished in the Schur complement.
    pub skipped: Vec<usize>,
    /// Index of the first negative pivot or non-vanishing zero-pivot row, if any.
    pub failure: Option<usize>,
    pub positive_definite: bool,
    pub positive_semidefinite: bool,
    pub nullity: usize,
    /// Determinant of the Gram matrix.
    pub determinant: String,
    /// Primitive positive generator of the radical, when it is one-dimensional.
    pub radical: Option<Vec<i64>>,
}

/// The classification together with the evidence from both routes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GraphClass {
    pub kind: GraphKind,
    pub certificate: FormCertificate,
    /// The shape that was recognized, described in words.
    pub shape: String,
}

struct Elimination<T> {
    pivots: Vec<T>,
    skipped: Vec<usize>,
    failure: Option<usize>,
}

/// Fraction-free symmetric elimination deciding positive semidefiniteness.
///
/// Returns `None` when an intermediate value overflows `T`.
fn symmetric_bareiss<T>(gram: &[Vec<i64>]) -> Option<Elimination<T>>
where
    T: Clone + Integer + Signed + CheckedMul + CheckedSub + From<i64>,
{
    let n = gram.len();
    let mut m: Vec<Vec<T>> = gram
        .iter()
        .map(|row| row.iter().map(|&x| T::from(x)).collect())
        .collect();
    let mut active: Vec<usize> = (0..n).collect();
    let mut previous = T::one();
    let mut pivots = Vec::new();
    let mut skipped = Vec::new();
    while let Some(&k) = active.first() {
        let pivot = m[k][k].clone();
        if pivot.is_negative() {
            return Some(Elimination {
                pivots,
                skipped,
                failure: Some(k),
            });
        }
        active.remove(0);
        if pivot.is_zero() {
            if active.iter().any(|&j| !m[k][j].is_zero()) {
                return Some(Elimination {
                    pivots,
                    skipped,
                    failure: Some(k),
                });
            }
            skipped.push(k);
            continue;
        }
        for &i in &active {
            for &j in &active {
                let a = pivot.checked_mul(&m[i][j])?;
                let b = m[i][k].checked_mul(&m[k][j])?;
                let num = a.checked_sub(&b)?;
                debug_assert!(num.is_multiple_of(&previous));
                m[i][j] = num / previous.clone();
            }
        }
        previous = pivot.clone();
        pivots.push(pivot);
    }
    Some(Elimination {
        pivots,
        skipped,
        failure: None,
    })
}

fn eliminate(gram: &[Vec<i64>]) -> Elimination<BigInt> {
    match symmetric_bareiss::<i128>(gram) {
        Some(e) => Elimination {
            pivots: e.pivots.into_iter().map(BigInt::from).collect(),
            skipped: e.skipped,
            failure: e.failure,
        },
        None => symmetric_bareiss::<BigInt>(gram).expect("big integers do not overflow"),
    }
}

fn require_connected(q: &Quiver) -> Result<()> {
    if !q.is_connected() {
        return Err(Error::NotConnected);
    }
    Ok(())
}

/// Classifies by exact definiteness of the symmetrized Euler form.
pub fn classify_by_form(q: &Quiver) -> Result<(GraphKind, FormCertificate)> {
    require_connected(q)?;
    let gram = symmetrized_matrix(q);
    let n = gram.len();
    let elim = eliminate(&gram);
    let psd = elim.failure.is_none();
    let nullity = if psd { elim.skipped.len() } else { 0 };
    let pd = psd && nullity == 0;
    // With no skipped rows the last Bareiss pivot is the determinant.
    let determinant = if pd {
        elim.pivots
            .last()
            .cloned()
            .unwrap_or_else(|| BigInt::from(1))
    } else {
        RatMatrix::from_i64(&gram).det()?.to_integer()
    };

    let mut radical = None;
    if psd && nullity == 1 {
        let kernel = RatMatrix::from_i64(&gram).kernel();
        let v = primitive_integer_vector(&kernel[0]);
        radical = v.iter().map(|x| x.to_i64()).collect::<Option<Vec<i64>>>();
    }

    let kind = if pd {
        let det = determinant.to_i64().unwrap_or(i64::MAX);
        let t = match (n, det) {
            (n, d) if d == n as i64 + 1 => DynkinType::A(n),
            (n, 4) if n >= 4 => DynkinType::D(n),
            (6, 3) => DynkinType::E6,
            (7, 2) => DynkinType::E7,
            (8, 1) => DynkinType::E8,
            _ => {
                return Err(Error::ClassificationMismatch {
                    form: format!("positive definite with n={n}, det={determinant}"),
                    shape: "no Dynkin type has these invariants".into(),
                })
            }
        };
        GraphKind::Dynkin(t)
    } else if psd && nullity == 1 {
        let delta = radical
            .as_ref()
            .expect("connected semidefinite radical fits i64");
        let max = delta.iter().copied().max().unwrap_or(0);
        let t = match (max, n) {
            (1, n) => AffineType::A(n - 1),
            (2, n) if n >= 5 => AffineType::D(n - 1),
            (3, 7) => AffineType::E6,
            (4, 8) => AffineType::E7,
            (6, 9) => AffineType::E8,
            _ => {
                return Err(Error::ClassificationMismatch {
                    form: format!("semidefinite with radical {delta:?}"),
                    shape: "no affine type has this null root".into(),
                })
            }
        };
        GraphKind::ExtendedDynkin(t)
    } else {
        GraphKind::Wild
    };

    let certificate = FormCertificate {
        pivots: elim.pivots.iter().map(ToString::to_string).collect(),
        skipped: elim.skipped,
        failure: elim.failure,
        positive_definite: pd,
        positive_semidefinite: psd,
        nullity,
        determinant: determinant.to_string(),
        radical,
    };
    Ok((kind, certificate))
}

/// Classifies by recognizing the underlying multigraph directly.
pub fn classify_by_shape(q: &Quiver) -> Result<(GraphKind, String)> {
    require_connected(q)?;
    let n = q.vertex_count();
    let mut loops = 0usize;
    let mut multiplicity = vec![vec![0usize; n]; n];
    for a in q.arrows() {
        if a.is_loop() {
            loops += 1;
        } else {
            multiplicity[a.source][a.target] += 1;
            multiplicity[a.target][a.source] += 1;
        }
    }
    let edges = q.arrow_count();

    if loops > 0 {
        if n == 1 && loops == 1 {
            return Ok((
                GraphKind::ExtendedDynkin(AffineType::A(0)),
                "single loop".into(),
            ));
        }
        return Ok((GraphKind::Wild, "loop inside a larger graph".into()));
    }
    let max_mult = multiplicity.iter().flatten().copied().max().unwrap_or(0);
    if max_mult >= 3 {
        return Ok((GraphKind::Wild, format!("edge of multiplicity {max_mult}")));
    }
    if max_mult == 2 {
        if n == 2 && edges == 2 {
            return Ok((
                GraphKind::ExtendedDynkin(AffineType::A(1)),
                "double edge".into(),
            ));
        }
        return Ok((GraphKind::Wild, "double edge inside a larger graph".into()));
    }

    let neighbours: Vec<Vec<usize>> = (0..n)
        .map(|i| (0..n).filter(|&j| multiplicity[i][j] > 0).collect())
        .collect();
    let degree: Vec<usize> = neighbours.iter().map(Vec::len).collect();

    if edges == n {
        if degree.iter().all(|&d| d == 2) {
            return Ok((
                GraphKind::ExtendedDynkin(AffineType::A(n - 1)),
                format!("cycle on {n} vertices"),
            ));
        }
        return Ok((
            GraphKind::Wild,
            "unicyclic graph that is not a cycle".into(),
        ));
    }
    if edges > n {
        return Ok((GraphKind::Wild, "more than one independent cycle".into()));
    }

    // A tree from here on.
    let max_degree = degree.iter().copied().max().unwrap_or(0);
    if max_degree >= 5 {
        return Ok((GraphKind::Wild, format!("vertex of degree {max_degree}")));
    }
    if max_degree == 4 {
        if n == 5 {
            return Ok((
                GraphKind::ExtendedDynkin(AffineType::D(4)),
                "star with four arms".into(),
            ));
        }
        return Ok((GraphKind::Wild, "degree-4 vertex in a larger tree".into()));
    }
    let branches: Vec<usize> = (0..n).filter(|&v| degree[v] == 3).collect();

    // Length of the arm leaving `from` through `next`, counted in vertices,
    // or `None` if it hits another branch vertex.
    let arm = |from: usize, mut next: usize| -> Option<usize> {
        let mut prev = from;
        let mut len = 1;
        loop {
            match degree[next] {
                1 => return Some(len),
                2 => {
                    let step = neighbours[next].iter().copied().find(|&w| w != prev)?;
                    prev = next;
                    next = step;
                    len += 1;
                }
                _ => return None,
            }
        }
    };

    match branches.len() {
        0 => Ok((
            GraphKind::Dynkin(DynkinType::A(n)),
            format!("path on {n} vertices"),
        )),
        1 => {
            let c = branches[0];
            let mut arms: Vec<usize> = neighbours[c]
                .iter()
                .map(|&w| arm(c, w).expect("single branch vertex"))
                .collect();
            arms.sort_unstable();
            let kind = match (arms[0], arms[1], arms[2]) {
                (1, 1, r) => GraphKind::Dynkin(DynkinType::D(r + 3)),
                (1, 2, 2) => GraphKind::Dynkin(DynkinType::E6),
                (1, 2, 3) => GraphKind::Dynkin(DynkinType::E7),
                (1, 2, 4) => GraphKind::Dynkin(DynkinType::E8),
                (2, 2, 2) => GraphKind::ExtendedDynkin(AffineType::E6),
                (1, 3, 3) => GraphKind::ExtendedDynkin(AffineType::E7),
                (1, 2, 5) => GraphKind::ExtendedDynkin(AffineType::E8),
                _ => GraphKind::Wild,
            };
            Ok((kind, format!("star with arms {arms:?}")))
        }
        2 => {
            let ok = branches.iter().all(|&c| {
                let leaves = neighbours[c].iter().filter(|&&w| degree[w] == 1).count();
                leaves >= 2
            });
            if ok {
                Ok((
                    GraphKind::ExtendedDynkin(AffineType::D(n - 1)),
                    "two forks joined by a path".into(),
                ))
            } else {
                Ok((GraphKind::Wild, "two branch vertices with long arms".into()))
            }
        }
        b => Ok((GraphKind::Wild, format!("{b} branch vertices"))),
    }
}

/// Classifies a connected, non-empty quiver by its underlying graph.
pub fn classify(q: &Quiver) -> Result<GraphClass> {
    let (form_kind, certificate) = classify_by_form(q)?;
    let (shape_kind, shape) = classify_by_shape(q)?;
    if form_kind != shape_kind {
        return Err(Error::ClassificationMismatch {
            form: form_kind.to_string(),
            shape: format!("{shape_kind} ({shape})"),
        });
    }
    Ok(GraphClass {
        kind: form_kind,
        certificate,
        shape,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::euler_pairing;

    fn q(n: usize, edges: &[(usize, usize)]) -> Quiver {
        Quiver::from_edges(n, edges).unwrap()
    }

    fn kind(quiver: &Quiver) -> GraphKind {
        classify(quiver).unwrap().kind
    }

    #[test]
    fn single_arrow_is_a2() {
        let c = classify(&q(2, &[(0, 1)])).unwrap();
        assert_eq!(c.kind, GraphKind::Dynkin(DynkinType::A(2)));
        assert!(c.certificate.positive_definite);
        assert_eq!(c.certificate.determinant, "3");
    }

    #[test]
    fn oriented_cycles_are_affine_a() {
        for r in 0..6 {
            let edges: Vec<_> = (0..=r).map(|i| (i, (i + 1) % (r + 1))).collect();
            let c = classify(&q(r + 1, &edges)).unwrap();
            assert_eq!(
                c.kind,
                GraphKind::ExtendedDynkin(AffineType::A(r)),
                "r = {r}"
            );
            assert_eq!(c.certificate.radical, Some(vec![1; r + 1]));
        }
    }

    #[test]
    fn three_arrow_kronecker_is_wild() {
        let k3 = q(2, &[(0, 1), (0, 1), (0, 1)]);
        assert_eq!(kind(&k3), GraphKind::Wild);
        assert_eq!(euler_pairing(&k3, &[1, 1], &[1, 1]), -1);
    }

    #[test]
    fn named_types() {
        let star = |arms: &[usize]| {
            let mut edges = Vec::new();
            let mut next = 1;
            for &len in arms {
                let mut prev = 0;
                for _ in 0..len {
                    edges.push((prev, next));
                    prev = next;
                    next += 1;
                }
            }
            q(next, &edges)
        };
        assert_eq!(kind(&star(&[1, 1, 1])), GraphKind::Dynkin(DynkinType::D(4)));
        assert_eq!(kind(&star(&[1, 1, 4])), GraphKind::Dynkin(DynkinType::D(7)));
        assert_eq!(kind(&star(&[1, 2, 2])), GraphKind::Dynkin(DynkinType::E6));
        assert_eq!(kind(&star(&[1, 2, 3])), GraphKind::Dynkin(DynkinType::E7));
        assert_eq!(kind(&star(&[1, 2, 4])), GraphKind::Dynkin(DynkinType::E8));
        assert_eq!(
            kind(&star(&[2, 2, 2])),
            GraphKind::ExtendedDynkin(AffineType::E6)
        );
        assert_eq!(
            kind(&star(&[1, 3, 3])),
            GraphKind::ExtendedDynkin(AffineType::E7)
        );
        assert_eq!(
            kind(&star(&[1, 2, 5])),
            GraphKind::ExtendedDynkin(AffineType::E8)
        );
        assert_eq!(
            kind(&star(&[1, 1, 1, 1])),
            GraphKind::ExtendedDynkin(AffineType::D(4))
        );
        assert_eq!(kind(&star(&[2, 2, 3])), GraphKind::Wild);
        assert_eq!(kind(&star(&[1, 1, 1, 1, 1])), GraphKind::Wild);
        // ~D5: two forks joined by one edge.
        let d5 = q(6, &[(0, 1), (0, 2), (0, 3), (3, 4), (3, 5)]);
        assert_eq!(kind(&d5), GraphKind::ExtendedDynkin(AffineType::D(5)));
        assert_eq!(
            kind(&q(1, &[(0, 0)])),
            GraphKind::ExtendedDynkin(AffineType::A(0))
        );
        assert_eq!(
            kind(&q(2, &[(0, 1), (1, 0)])),
            GraphKind::ExtendedDynkin(AffineType::A(1))
        );
        assert_eq!(kind(&q(1, &[])), GraphKind::Dynkin(DynkinType::A(1)));
        assert_eq!(kind(&q(1, &[(0, 0), (0, 0)])), GraphKind::Wild);
    }

    #[test]
    fn rejects_disconnected_or_empty() {
        assert_eq!(classify(&q(2, &[])).unwrap_err(), Error::NotConnected);
        assert_eq!(classify(&q(0, &[])).unwrap_err(), Error::NotConnected);
    }

    #[test]
    fn orientation_and_labels_do_not_matter() {
        let a = q(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        let b = q(4, &[(1, 0), (1, 2), (3, 2), (3, 0)]);
        assert_eq!(kind(&a), kind(&b));
        assert_eq!(kind(&a), kind(&a.opposite()));
    }

    #[test]
    fn large_entries_fall_back_to_big_integers() {
        // A long path: pivots grow like i+1, fine; a dense wild graph with
        // many parallel edges forces large intermediate values.
        let mut edges = Vec::new();
        for i in 0..12 {
            for j in 0..12 {
                if i < j {
                    for _ in 0..(i + j) % 5 {
                        edges.push((i, j));
                    }
                }
            }
        }
        let quiver = q(12, &edges);
        let (k, cert) = classify_by_form(&quiver).unwrap();
        assert_eq!(k, GraphKind::Wild);
        assert!(cert.failure.is_some());
    }
}
