mod common;

use proptest::prelude::*;

use common::*;
use hyperstp::{Error, Hypermatrix, Shape};

fn dims_strategy() -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(1usize..=5, 0..=5)
}

proptest! {
    #[test]
    fn linearize_delinearize_round_trip(dims in dims_strategy(), seed in any::<u64>()) {
        let s = Shape::new(dims).unwrap();
        let rank = (seed as usize % s.size()) + 1;
        let idx = s.delinearize(rank).unwrap();
        prop_assert_eq!(s.linearize(&idx).unwrap(), rank);
    }

    #[test]
    fn id_order_is_lexicographic_and_dense(dims in dims_strategy()) {
        let s = Shape::new(dims).unwrap();
        let all: Vec<Vec<usize>> = s.indices().map(|m| m.0).collect();
        prop_assert_eq!(all.len(), s.size());
        for (k, idx) in all.iter().enumerate() {
            prop_assert_eq!(s.linearize(idx).unwrap(), k + 1);
        }
        for w in all.windows(2) {
            prop_assert!(w[0] < w[1]);
        }
    }

    #[test]
    fn get_matches_flat_storage(dims in prop::collection::vec(1usize..=4, 1..=4), seed in any::<u64>()) {
        let a = rand_hm(&mut rng(seed), &dims);
        for (idx, v) in a.iter() {
            prop_assert_eq!(a.get(&idx).unwrap(), v);
            let rank = a.shape().linearize(&idx).unwrap();
            prop_assert_eq!(a.get_rank(rank).unwrap(), v);
        }
    }
}

#[test]
fn last_axis_varies_fastest() {
    let s = shape(&[2, 3, 4]);
    assert_eq!(s.linearize(&[1, 1, 2]).unwrap(), 2);
    assert_eq!(s.linearize(&[1, 2, 1]).unwrap(), 5);
    assert_eq!(s.linearize(&[2, 1, 1]).unwrap(), 13);
    assert_eq!(s.linearize(&[2, 3, 4]).unwrap(), 24);
}

#[test]
fn scalar_shape_has_one_entry() {
    let s = Shape::scalar();
    assert_eq!(s.size(), 1);
    assert_eq!(s.linearize(&[]).unwrap(), 1);
    assert_eq!(Hypermatrix::scalar(7i64).as_scalar(), Some(7));
}

#[test]
fn invalid_shapes_and_indices_are_rejected() {
    assert!(matches!(Shape::new(vec![2, 0]), Err(Error::ZeroDimension { axis: 2 })));
    assert!(matches!(Shape::new(vec![usize::MAX, 3]), Err(Error::SizeOverflow { .. })));
    let s = shape(&[2, 3]);
    assert!(matches!(s.linearize(&[3, 1]), Err(Error::IndexOutOfRange { axis: 1, .. })));
    assert!(matches!(s.linearize(&[0, 1]), Err(Error::IndexOutOfRange { .. })));
    assert!(matches!(s.linearize(&[1]), Err(Error::OrderMismatch { .. })));
    assert!(matches!(s.delinearize(7), Err(Error::RankOutOfRange { .. })));
    assert!(Hypermatrix::new(&[2, 2], vec![1i64, 2, 3]).is_err());
}

#[test]
fn integer_overflow_is_reported() {
    let a = Hypermatrix::new(&[1], vec![i64::MAX]).unwrap();
    assert!(matches!(a.try_add(&a), Err(Error::Overflow { .. })));
}
