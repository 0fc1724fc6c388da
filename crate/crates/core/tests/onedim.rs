use std::collections::BTreeSet;

use num_bigint::BigUint;
use proptest::prelude::*;

use crisscross::bounds::binomial;
use crisscross::onedim::{
    comp_rank, composition, inversions, one_deletion_ball, runs_count, sig_syndrome, signature, vt_decode_full,
    vt_decode_known_symbol, vt_syndromes,
};
use crisscross::{Composition, Error};

fn words(n: usize, q: u8) -> Vec<Vec<u8>> {
    (0..(q as usize).pow(n as u32))
        .map(|mut k| {
            (0..n)
                .map(|_| {
                    let d = (k % q as usize) as u8;
                    k /= q as usize;
                    d
                })
                .collect()
        })
        .collect()
}

/// Brute-force VT class membership: every pair of distinct class members
/// has disjoint single-deletion balls.
#[test]
fn vt_classes_are_single_deletion_codes() {
    for (n, q) in [(5usize, 2u8), (4, 3)] {
        let mut classes = std::collections::BTreeMap::<(usize, u32), Vec<Vec<u8>>>::new();
        for x in words(n, q) {
            classes.entry(vt_syndromes(&x, n, q as u32).unwrap()).or_default().push(x);
        }
        for book in classes.values() {
            let balls: Vec<BTreeSet<Vec<u8>>> = book.iter().map(|x| one_deletion_ball(x, 1)).collect();
            for a in 0..balls.len() {
                for b in a + 1..balls.len() {
                    assert!(balls[a].is_disjoint(&balls[b]), "n={n} q={q}: {:?} {:?}", book[a], book[b]);
                }
            }
        }
    }
}

#[test]
fn decoder_reports_run_of_deleted_symbol() {
    // deleting either 1 of the middle run gives the same y
    let x = [0u8, 1, 1, 2];
    let a = sig_syndrome(&x, 4);
    let d = vt_decode_known_symbol(&[0u8, 1, 2], &1, a, 4).unwrap();
    assert_eq!(d.sequence, x);
    assert_eq!(d.run, (2, 3));
    assert_eq!(d.run_len(), 2);
}

#[test]
fn wrong_length_and_alphabet_are_rejected() {
    assert!(matches!(vt_decode_full(&[0u8, 1], 0, 0, 5, 2), Err(Error::InvalidArgument(_))));
    assert!(matches!(vt_decode_full(&[0u8, 3], 0, 0, 3, 2), Err(Error::InvalidArgument(_))));
    assert!(vt_syndromes(&[0u8, 1], 3, 2).is_err());
    assert!(composition(&[0u8, 2], 2).is_err());
    assert!(runs_count::<u8>(&[]).is_err());
}

#[test]
fn comp_rank_enumerates_weak_compositions() {
    // all weak compositions of 4 into 3 parts, in increasing order
    let mut all: Vec<Composition> = Vec::new();
    for a in 0..=4u32 {
        for b in 0..=4 - a {
            all.push(Composition::from_counts(vec![a, b, 4 - a - b]));
        }
    }
    all.sort();
    let ranks: Vec<BigUint> = all.iter().map(comp_rank).collect();
    let expected: Vec<BigUint> = (0..all.len() as u32).map(BigUint::from).collect();
    assert_eq!(ranks, expected);
    assert_eq!(BigUint::from(all.len()), binomial(6, 2));
}

fn seq(q: u8, max: usize) -> impl Strategy<Value = Vec<u8>> {
    prop::collection::vec(0..q, 1..=max)
}

proptest! {
    #[test]
    fn full_decoder_inverts_any_deletion(x in seq(5, 12), p in any::<prop::sample::Index>()) {
        let n = x.len();
        prop_assume!(n >= 2);
        let (a, b) = vt_syndromes(&x, n, 5).unwrap();
        let mut y = x.clone();
        y.remove(p.index(n));
        prop_assert_eq!(vt_decode_full(&y, a, b, n, 5).unwrap(), x);
    }

    #[test]
    fn comp_rank_is_monotone(a in prop::collection::vec(0u32..5, 4), b in prop::collection::vec(0u32..5, 3)) {
        // pad b with one last part so both have the same total
        let total: u32 = a.iter().sum();
        let head: u32 = b.iter().sum();
        prop_assume!(head <= total);
        let mut b = b;
        b.push(total - head);
        let (ca, cb) = (Composition::from_counts(a), Composition::from_counts(b));
        prop_assert_eq!(ca.cmp(&cb), comp_rank(&ca).cmp(&comp_rank(&cb)));
    }

    #[test]
    fn signature_has_one_bit_per_step(x in seq(4, 10)) {
        let s = signature(&x).unwrap();
        prop_assert_eq!(s.len(), x.len() - 1);
        for (k, w) in x.windows(2).enumerate() {
            prop_assert_eq!(s[k] == 1, w[1] >= w[0]);
        }
    }

    // inserting v next to an equal symbol gives the same sequence; inserting
    // it one step further changes the inversion count by the number of
    // symbols it passes that compare strictly
    #[test]
    fn inversion_step(y in seq(4, 10), v in 0u8..4, p in any::<prop::sample::Index>()) {
        let k = p.index(y.len());
        let at = |pos: usize| {
            let mut x = y.clone();
            x.insert(pos, v);
            x
        };
        let (left, right) = (at(k), at(k + 1));
        let passed = y[k];
        let delta = inversions(&right) as i64 - inversions(&left) as i64;
        let expected = match passed.cmp(&v) {
            std::cmp::Ordering::Less => -1,
            std::cmp::Ordering::Equal => 0,
            std::cmp::Ordering::Greater => 1,
        };
        prop_assert_eq!(delta, expected);
    }

    #[test]
    fn deletion_ball_respects_run_bound(x in seq(3, 9), s in 1usize..3) {
        prop_assume!(s <= x.len());
        let runs = runs_count(&x).unwrap() as u64;
        let size = one_deletion_ball(&x, s).len() as u64;
        if runs + 1 >= s as u64 {
            prop_assert!(BigUint::from(size) >= binomial(runs + 1 - s as u64, s as u64));
        }
    }
}
