use std::collections::HashSet;

use proptest::collection::vec;
use proptest::prelude::*;

use dna_labeling::classical::{
    base_convert, derivative, integrate, tenengolts_decode, DigitString, HammingCode,
    TenengoltsParams,
};
use dna_labeling::codes::{
    e1_decode, e1_encode, e2_decode, e2_encode, lift_code, search_tenengolts_labeling_code,
    E1Layout, E2Layout,
};
use dna_labeling::oracle::{is_labeling_code, BallSemantics, ErrorSpec};
use dna_labeling::{invert_labeling, label_framed, Alphabet, FlankConvention, LabelSet};

fn dna_word(max: usize) -> impl Strategy<Value = Vec<u8>> {
    vec(0u8..4, 0..=max)
}

fn framed(x: &[u8]) -> Vec<u8> {
    label_framed(x, &LabelSet::minimal_dna(), FlankConvention::default()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn minimal_set_round_trip(x in dna_word(40), left in 0u8..4, right in 0u8..4) {
        let set = LabelSet::minimal_dna();
        let flanks = FlankConvention::new(left, right);
        let u = label_framed(&x, &set, flanks).unwrap();
        prop_assert_eq!(u.len(), x.len() + 1);
        prop_assert_eq!(invert_labeling(&u, &set, flanks).unwrap(), x);
    }

    #[test]
    fn all_labels_round_trip((q, x) in (2usize..=6).prop_flat_map(|q| (Just(q), vec(0..q as u8, 0..=24)))) {
        let set = LabelSet::all_labels(Alphabet::new(q).unwrap());
        let u = label_framed(&x, &set, FlankConvention::default()).unwrap();
        prop_assert_eq!(invert_labeling(&u, &set, FlankConvention::default()).unwrap(), x);
    }

    #[test]
    fn e1_corrects_one_indel(x in vec(0u8..4, 2..=24), pos in any::<prop::sample::Index>(), v in 0u8..11, insert in any::<bool>()) {
        let layout = E1Layout::new(x.len()).unwrap();
        let c = e1_encode(&x).unwrap();
        prop_assert_eq!(&c[..x.len()], &x[..]);
        prop_assert_eq!(c.len(), layout.n);
        let mut u = framed(&c);
        if insert {
            u.insert(pos.index(u.len() + 1), v);
        } else {
            u.remove(pos.index(u.len()));
        }
        prop_assert_eq!(e1_decode(&u, layout).unwrap(), x);
    }

    #[test]
    fn e2_corrects_one_substitution(x in vec(0u8..4, 2..=24), pos in any::<prop::sample::Index>(), shift in 0u8..11) {
        let layout = E2Layout::new(x.len()).unwrap();
        let c = e2_encode(&x).unwrap();
        prop_assert_eq!(&c[..x.len()], &x[..]);
        let mut u = framed(&c);
        let i = pos.index(u.len());
        u[i] = (u[i] + shift) % 11;
        prop_assert_eq!(e2_decode(&u, layout).unwrap(), x);
    }

    #[test]
    fn derivative_inverts((q, x) in (2usize..=16).prop_flat_map(|q| (Just(q), vec(0..q as u8, 0..=32)))) {
        prop_assert_eq!(integrate(&derivative(&x, q), q), x);
    }

    #[test]
    fn base_round_trip(v in 0u64..1_000_000, base in 2u32..=16) {
        let d = base_convert(v, base, 20).unwrap();
        prop_assert_eq!(d.width(), 20);
        prop_assert_eq!(d.value(), v);
        prop_assert_eq!(DigitString::from_digits(base, &d.digits).unwrap().value(), v);
    }

    #[test]
    fn hamming_corrects_one_substitution(
        (p, msg) in prop::sample::select(vec![3usize, 5, 7, 11, 13])
            .prop_flat_map(|p| (Just(p), vec(0..p as u8, 1..=20))),
        pos in any::<prop::sample::Index>(),
        shift in 0u8..13,
    ) {
        let code = HammingCode::for_message_len(p, msg.len()).unwrap();
        let c = code.encode(&msg).unwrap();
        prop_assert_eq!(&c[..msg.len()], &msg[..]);
        let mut w = c.clone();
        let i = pos.index(w.len());
        w[i] = ((w[i] as usize + shift as usize) % p) as u8;
        prop_assert_eq!(code.correct(&w).unwrap().0, c);
    }

    #[test]
    fn tenengolts_corrects_one_indel(
        x in vec(0u8..11, 2..=20),
        pos in any::<prop::sample::Index>(),
        v in 0u8..11,
        insert in any::<bool>(),
    ) {
        let (a, b) = TenengoltsParams::class_of(&x, 11);
        let params = TenengoltsParams::new(x.len(), 11, a, b).unwrap();
        let mut y = x.clone();
        if insert {
            y.insert(pos.index(y.len() + 1), v);
        } else {
            y.remove(pos.index(y.len()));
        }
        prop_assert_eq!(tenengolts_decode(&y, params).unwrap(), x);
    }

    // A code corrects one deletion exactly when it corrects one insertion.
    #[test]
    fn deletion_and_insertion_verdicts_agree(words in prop::collection::btree_set(vec(0u8..4, 3), 2..8)) {
        let code: Vec<Vec<u8>> = words.into_iter().collect();
        let set = LabelSet::minimal_dna();
        let check = |e| {
            is_labeling_code(&code, &set, FlankConvention::default(), e, BallSemantics::Permissive, 1 << 16)
                .unwrap()
                .passed
        };
        prop_assert_eq!(check(ErrorSpec::new(0, 0, 1)), check(ErrorSpec::new(0, 1, 0)));
    }
}

#[test]
fn lifted_tenengolts_classes_are_labeling_codes() {
    let set = LabelSet::minimal_dna();
    for n in 2..=5 {
        let found = search_tenengolts_labeling_code(n, &set, 1 << 12).unwrap();
        let labelings: HashSet<Vec<u8>> = dna_labeling::words::all_words(4, n)
            .map(|x| framed(&x))
            .filter(|u| dna_labeling::classical::tenengolts_member(u, found.params))
            .collect();
        let code = lift_code(&labelings, &set, FlankConvention::default());
        assert_eq!(code.len() as u64, found.size);
        assert!(code.iter().all(|x| found.contains(x)));
        for e in [ErrorSpec::new(0, 0, 1), ErrorSpec::new(0, 1, 0)] {
            let r = is_labeling_code(
                &code,
                &set,
                FlankConvention::default(),
                e,
                BallSemantics::Permissive,
                1 << 20,
            )
            .unwrap();
            assert!(r.passed, "n={n} e={e}: {r}");
        }
    }
}
