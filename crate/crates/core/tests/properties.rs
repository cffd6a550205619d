//! Invariance under change of pc presentation and of algebra basis.

mod common;

use std::sync::OnceLock;

use proptest::prelude::*;

use mipkit::algtable::build_aug_table;
use mipkit::canon::{canonical_form, random_filtered_basis_change, random_nilpotent_algebra};
use mipkit::invariants::{code_fingerprints, differing_entries, fingerprint};
use mipkit::jennings::{jennings_bound, jennings_series};
use mipkit::pcgroup::is_isomorphic_groups;
use mipkit::{corpus, Caps, PcPresentation};

fn groups() -> &'static [PcPresentation] {
    static GROUPS: OnceLock<Vec<PcPresentation>> = OnceLock::new();
    GROUPS.get_or_init(|| {
        let mut gs = common::corpus(2, 3);
        gs.extend(common::corpus(2, 4));
        gs.extend(common::corpus(3, 3));
        gs
    })
}

fn group_and_seed() -> impl Strategy<Value = (usize, u64)> {
    (0..groups().len(), any::<u64>())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn represented_groups_are_isomorphic((i, seed) in group_and_seed()) {
        let caps = Caps::default();
        let g = &groups()[i];
        let h = corpus::represent(g, seed);
        prop_assert!(is_isomorphic_groups(g, &h, &caps).unwrap());
    }

    #[test]
    fn fingerprint_ignores_the_presentation((i, seed) in group_and_seed()) {
        let caps = Caps::default();
        let g = &groups()[i];
        let h = corpus::represent(g, seed);
        let coded = code_fingerprints(&[fingerprint(g, &caps), fingerprint(&h, &caps)], &caps);
        prop_assert!(differing_entries(&coded[0], &coded[1]).is_empty());
    }

    #[test]
    fn jennings_data_ignores_the_presentation((i, seed) in group_and_seed()) {
        let caps = Caps::default();
        let g = &groups()[i];
        let h = corpus::represent(g, seed);
        let (jg, jh) = (jennings_series(g, &caps).unwrap(), jennings_series(&h, &caps).unwrap());
        prop_assert_eq!(&jg.graded_dims, &jh.graded_dims);
        prop_assert_eq!(jg.nil_index, jh.nil_index);
        prop_assert_eq!(jennings_bound(g, &h, &caps).unwrap(), jg.length());
    }

    #[test]
    fn certificates_ignore_filtered_basis_changes(seed in any::<u64>(), change in any::<u64>()) {
        let caps = Caps::default();
        let t = random_nilpotent_algebra(2 + (seed % 2) as u32, 5, seed).unwrap();
        let u = random_filtered_basis_change(&t, change);
        for n in 2..=t.trunc() {
            prop_assert_eq!(
                canonical_form(&t, n, &caps).unwrap(),
                canonical_form(&u, n, &caps).unwrap()
            );
        }
    }

    #[test]
    fn sct_text_round_trips(seed in any::<u64>()) {
        let t = random_nilpotent_algebra(3, 5, seed).unwrap();
        let back = mipkit::algtable::SCTable::parse(&t.to_sct()).unwrap();
        prop_assert_eq!(back.to_sct(), t.to_sct());
    }
}

proptest! {
    // Canonical forms of rank-4 groups dominate the run time.
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn certificates_ignore_the_presentation((i, seed) in group_and_seed()) {
        let caps = Caps::default();
        let g = &groups()[i];
        let h = corpus::represent(g, seed);
        let level = jennings_series(g, &caps).unwrap().nil_index.min(3);
        let a = canonical_form(&build_aug_table(g, level, &caps).unwrap(), level, &caps).unwrap();
        let b = canonical_form(&build_aug_table(&h, level, &caps).unwrap(), level, &caps).unwrap();
        prop_assert_eq!(a.digest(), b.digest());
    }
}
