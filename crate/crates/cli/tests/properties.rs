//! Literal parsing and report rendering invariants.

use proptest::prelude::*;
use qhyper::report::{ParamMap, VerificationReport};
use qhyper::ExactScalar;
use qhyper_cli::config::{parse_literal, parse_params, Cli};
use qhyper_cli::{RunConfig, ReportFile};
use clap::Parser;

fn big_gaussian() -> impl Strategy<Value = ExactScalar> {
    let part = (any::<i64>(), 1i64..=i64::MAX);
    (part.clone(), part, any::<bool>()).prop_map(|((a, b), (c, d), real)| if real { ExactScalar::ratio(a, b) } else { ExactScalar::gauss(a, b, c, d) })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn literals_round_trip(x in big_gaussian()) {
        prop_assert_eq!(parse_literal(&x.to_string()).unwrap(), x);
    }
}

fn config() -> RunConfig {
    RunConfig::from_cli(Cli::parse_from(["qhyper", "verify", "T_BAILEY41", "--n", "1"])).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn params_round_trip(xs in prop::collection::btree_map("[a-z]{1,3}", big_gaussian(), 0..5)) {
        let text = xs.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(",");
        prop_assert_eq!(parse_params(&text).unwrap(), xs);
    }

    #[test]
    fn csv_rows_match_json_entries(vals in prop::collection::vec((big_gaussian(), big_gaussian(), prop::option::of(0i64..20)), 0..12)) {
        let p: ParamMap = [("q".to_string(), ExactScalar::ratio(1, 2))].into_iter().collect();
        let entries: Vec<_> = vals.iter().map(|(l, r, n)| VerificationReport::exact("T_X", *n, &p, l, r)).collect();
        let file = ReportFile::new(config(), entries);
        let back = ReportFile::from_json(&file.to_json()).unwrap();
        prop_assert_eq!(&back, &file);
        let csv_text = back.to_csv();
        let mut rd = csv::Reader::from_reader(csv_text.as_bytes());
        prop_assert_eq!(rd.records().count(), file.entries.len());
    }
}
