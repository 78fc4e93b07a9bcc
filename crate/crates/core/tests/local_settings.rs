mod common;

use std::collections::BTreeSet;

use common::*;
use proptest::prelude::*;
use quiver_moduli::classify::{classify, GraphKind};
use quiver_moduli::doubling::{
    bipartify_with, double_vertex_at, lift_dimension, lift_weight, sufficient_n, NChoice,
};
use quiver_moduli::enumerate::connected_quivers;
use quiver_moduli::forms::euler_pairing;
use quiver_moduli::local::{
    local_setting, rep_types_among, rep_types_with, setting_smooth, RepType,
};
use quiver_moduli::toric::{chart_irreducibles, flow_sections, simple_cycles};
use quiver_moduli::{normalize_weight, DimVector, Exec, GenericExt, Quiver, SmoothVerdict, Weight};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn weights(n: usize, bound: i64) -> BTreeSet<Weight> {
    DimVector::from_entries(vec![2 * bound; n])
        .below()
        .map(|p| {
            normalize_weight(&Weight::from_entries(
                p.entries().iter().map(|x| x - bound).collect(),
            ))
        })
        .collect()
}

/// Checks every non-empty moduli space of `q` with `alpha <= (3, ..., 3)`;
/// returns how many there were.
fn single_type_sweep(q: &Quiver) -> usize {
    let n = q.vertex_count();
    let g = GenericExt::new(q).with_exec(Exec::Sequential);
    let top = DimVector::from_entries(vec![3; n]);
    let mut nonempty = 0;
    for theta in weights(n, 1) {
        let pool = g.enumerate_stable(&top, &theta).unwrap();
        for alpha in top.below().filter(|a| !a.is_zero() && theta.pair(a) == 0) {
            let types = rep_types_among(&g, &alpha, &theta, &pool).unwrap();
            if types.is_empty() {
                continue;
            }
            nonempty += 1;
            assert_eq!(types.len(), 1, "{q} alpha {alpha} theta {theta}: {types:?}");
            let setting = local_setting(q, &types[0]).unwrap();
            assert!(
                !setting.to_quiver().has_oriented_cycle(),
                "{q} alpha {alpha} theta {theta}"
            );
            assert_eq!(setting_smooth(&setting).verdict, SmoothVerdict::Smooth);
        }
    }
    nonempty
}

#[test]
fn dynkin_moduli_have_a_single_acyclic_type() {
    let dynkin: Vec<Quiver> = connected_quivers(5, 4)
        .into_iter()
        .filter(|q| matches!(classify(q).unwrap().kind, GraphKind::Dynkin(_)))
        .collect();
    assert!(dynkin.len() >= 30, "{} Dynkin quivers", dynkin.len());
    let total: usize = Exec::default()
        .map(&dynkin, single_type_sweep)
        .into_iter()
        .sum();
    assert!(total > 1000, "only {total} non-empty moduli");
}

fn lift_type(ty: &RepType, d: &quiver_moduli::DoublingMap) -> RepType {
    RepType::new(
        ty.slots()
            .iter()
            .map(|(b, m)| (lift_dimension(b, d).unwrap(), *m))
            .collect(),
    )
    .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn settings_have_consistent_counts(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (q, alpha, theta) = random_balanced_instance(&mut rng, 3, 4, 2, 2);
        let g = GenericExt::new(&q);
        for ty in rep_types_with(&g, &alpha, &theta).unwrap() {
            prop_assert_eq!(ty.total(q.vertex_count()), alpha.clone());
            let s = local_setting(&q, &ty).unwrap();
            let sq = s.to_quiver();
            for (i, (beta, m)) in ty.slots().iter().enumerate() {
                prop_assert_eq!(s.mu[i], *m);
                let loops = sq.arrows().iter().filter(|a| a.source == i && a.target == i).count() as i64;
                prop_assert_eq!(loops, 1 - euler_pairing(&q, beta.entries(), beta.entries()));
                for (j, (gamma, _)) in ty.slots().iter().enumerate().filter(|(j, _)| *j != i) {
                    let count = sq.arrows().iter().filter(|a| a.source == i && a.target == j).count() as i64;
                    prop_assert_eq!(count, -euler_pairing(&q, beta.entries(), gamma.entries()));
                }
            }
        }
    }

    #[test]
    fn settings_coincide_under_doubling(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (q, alpha, theta) = random_balanced_instance(&mut rng, 3, 4, 2, 2);
        let n = sufficient_n(&alpha, &theta).unwrap();
        for v in 0..q.vertex_count() {
            let d = double_vertex_at(&q, v).unwrap();
            let lifted_alpha = lift_dimension(&alpha, &d).unwrap();
            let lifted_theta = lift_weight(&theta, &d, n).unwrap();
            let below: BTreeSet<RepType> = rep_types_with(&GenericExt::new(&q), &alpha, &theta)
                .unwrap()
                .into_iter()
                .collect();
            let above: BTreeSet<RepType> =
                rep_types_with(&GenericExt::new(d.result()), &lifted_alpha, &lifted_theta)
                    .unwrap()
                    .into_iter()
                    .collect();
            let lifted: BTreeSet<RepType> = below.iter().map(|t| lift_type(t, &d)).collect();
            prop_assert_eq!(&lifted, &above);
            for ty in &below {
                prop_assert_eq!(
                    local_setting(&q, ty).unwrap(),
                    local_setting(d.result(), &lift_type(ty, &d)).unwrap()
                );
            }
        }
    }
}

/// Projections to the source arrows of the irreducibles of the chart at the
/// product of all `e` arrows, for thin `alpha`, `theta = 0` and `n = 1`.
fn e_chart(q: &Quiver) -> (usize, BTreeSet<Vec<i64>>) {
    let n = q.vertex_count();
    let b = bipartify_with(
        q,
        &DimVector::from_entries(vec![1; n]),
        &Weight::zero(n),
        NChoice::Fixed(1),
    )
    .unwrap();
    let sections = flow_sections(&b.quiver, &b.weight, 1).unwrap();
    let m = q.arrow_count();
    let all_e: Vec<i64> = (0..b.quiver.arrow_count())
        .map(|a| i64::from(a >= m))
        .collect();
    let at = sections
        .iter()
        .position(|s| s.exponents() == all_e.as_slice())
        .expect("e product is a section");
    let irreducibles =
        chart_irreducibles(&b.quiver, &sections, at).expect("e product is a vertex chart");
    let projected = irreducibles.iter().map(|x| x[..m].to_vec()).collect();
    (irreducibles.len(), projected)
}

#[test]
fn e_chart_of_the_example_is_affine_three_space() {
    let q = example();
    let (count, projected) = e_chart(&q);
    assert_eq!(count, 3);
    let cycles: BTreeSet<Vec<i64>> = simple_cycles(&q)
        .iter()
        .map(|c| c.exponents().to_vec())
        .collect();
    assert_eq!(projected, cycles);
}

#[test]
fn e_chart_matches_source_cycles() {
    for q in connected_quivers(3, 4) {
        let (count, projected) = e_chart(&q);
        let cycles: BTreeSet<Vec<i64>> = simple_cycles(&q)
            .iter()
            .map(|c| c.exponents().to_vec())
            .collect();
        assert_eq!(count, cycles.len(), "{q}");
        assert_eq!(projected, cycles, "{q}");
    }
}
