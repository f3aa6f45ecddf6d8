use std::time::Instant;

use swhw_symcx::{law_suite, LAW_NAMES};

#[test]
fn law_suite_passes_across_seeds() {
    let start = Instant::now();
    for seed in 0..200 {
        let results = law_suite(seed, 12);
        assert_eq!(results.len(), LAW_NAMES.len());
        for r in results {
            assert!(r.passed, "seed {seed}: {} failed: {}", r.detail, r.name);
        }
    }
    eprintln!("200 seeds in {:?}", start.elapsed());
}
