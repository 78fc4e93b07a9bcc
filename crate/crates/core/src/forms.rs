//! The Ringel (Euler) bilinear form and the Tits quadratic form.
//!
//! `<a, b> = sum_i a(i) b(i) - sum_{arrows x} a(tail x) b(head x)`.

use crate::error::{Error, Result};
use crate::quiver::{DimVector, Quiver};

/// The Ringel form on arbitrary integer vectors.
///
/// Lengths are not checked; callers are expected to pass vectors indexed by
/// the quiver's vertices.
pub fn euler_pairing(q: &Quiver, a: &[i64], b: &[i64]) -> i64 {
    let diagonal: i64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
    let arrows: i64 = q.arrows().iter().map(|x| a[x.source] * b[x.target]).sum();
    diagonal - arrows
}

fn check(q: &Quiver, v: &DimVector) -> Result<()> {
    if v.len() != q.vertex_count() {
        return Err(Error::DomainMismatch {
            expected: q.vertex_count(),
            got: v.len(),
        });
    }
    Ok(())
}

/// `<a, b>_Q`.
pub fn euler_form(q: &Quiver, a: &DimVector, b: &DimVector) -> Result<i64> {
    check(q, a)?;
    check(q, b)?;
    Ok(euler_pairing(q, a.entries(), b.entries()))
}

/// `q(a) = <a, a>_Q`.
pub fn tits_form(q: &Quiver, a: &DimVector) -> Result<i64> {
    euler_form(q, a, a)
}

/// The symmetrized form `(a, b) = <a, b> + <b, a>` as a Gram matrix in vertex
/// order. Orientation-independent; a loop contributes `-2` on the diagonal.
pub fn symmetrized_matrix(q: &Quiver) -> Vec<Vec<i64>> {
    let n = q.vertex_count();
    let mut m = vec![vec![0i64; n]; n];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 2;
    }
    for a in q.arrows() {
        m[a.source][a.target] -= 1;
        m[a.target][a.source] -= 1;
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn example() -> Quiver {
        Quiver::from_edges(2, &[(0, 0), (0, 1), (1, 0), (1, 1)]).unwrap()
    }

    fn d(v: &[i64]) -> DimVector {
        DimVector::from_entries(v.to_vec())
    }

    #[test]
    fn single_arrow() {
        let q = Quiver::from_edges(2, &[(0, 1)]).unwrap();
        assert_eq!(euler_form(&q, &d(&[1, 1]), &d(&[1, 1])).unwrap(), 1);
        assert_eq!(euler_form(&q, &d(&[1, 0]), &d(&[0, 1])).unwrap(), -1);
        assert_eq!(euler_form(&q, &d(&[0, 1]), &d(&[1, 0])).unwrap(), 0);
    }

    #[test]
    fn example_quiver() {
        assert_eq!(
            euler_form(&example(), &d(&[1, 1]), &d(&[1, 1])).unwrap(),
            -2
        );
        assert_eq!(euler_form(&example(), &d(&[0, 0]), &d(&[2, 3])).unwrap(), 0);
    }

    #[test]
    fn tits_form_values() {
        let k3 = Quiver::from_edges(2, &[(0, 1), (0, 1), (0, 1)]).unwrap();
        assert_eq!(tits_form(&k3, &d(&[1, 1])).unwrap(), -1);
        let jordan = Quiver::from_edges(1, &[(0, 0)]).unwrap();
        assert_eq!(tits_form(&jordan, &d(&[1])).unwrap(), 0);
        assert_eq!(tits_form(&k3, &d(&[0, 0])).unwrap(), 0);
    }

    #[test]
    fn domain_mismatch() {
        assert!(matches!(
            euler_form(&example(), &d(&[1]), &d(&[1, 1])),
            Err(Error::DomainMismatch { .. })
        ));
    }

    #[test]
    fn symmetrized_matrix_of_example() {
        assert_eq!(
            symmetrized_matrix(&example()),
            vec![vec![0, -2], vec![-2, 0]]
        );
    }

    proptest! {
        #[test]
        fn euler_form_is_bilinear(
            a in proptest::collection::vec(-20i64..20, 3),
            a2 in proptest::collection::vec(-20i64..20, 3),
            b in proptest::collection::vec(-20i64..20, 3),
            edges in proptest::collection::vec((0usize..3, 0usize..3), 0..7),
        ) {
            let q = Quiver::from_edges(3, &edges).unwrap();
            let sum: Vec<i64> = a.iter().zip(&a2).map(|(x, y)| x + y).collect();
            prop_assert_eq!(
                euler_pairing(&q, &sum, &b),
                euler_pairing(&q, &a, &b) + euler_pairing(&q, &a2, &b)
            );
            let sum_b: Vec<i64> = b.iter().zip(&a2).map(|(x, y)| x + y).collect();
            prop_assert_eq!(
                euler_pairing(&q, &a, &sum_b),
                euler_pairing(&q, &a, &b) + euler_pairing(&q, &a, &a2)
            );
        }
    }
}
