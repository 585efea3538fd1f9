use std::io::Write;

use hypergraph_core::Hyperedge;
use itertools::Itertools;
use proptest::prelude::*;
use stream_engine::{
    parse_edge_list, write_edge_list, DedupPolicy, EdgeStream, SpaceMeter,
};

#[derive(Clone, Debug)]
enum MeterEvent {
    Charge(u64),
    ReleaseFraction(u8),
}

fn meter_events() -> impl Strategy<Value = Vec<MeterEvent>> {
    proptest::collection::vec(
        prop_oneof![
            (1u64..100).prop_map(MeterEvent::Charge),
            (0u8..=100).prop_map(MeterEvent::ReleaseFraction),
        ],
        0..200,
    )
}

fn edge_set_strategy() -> impl Strategy<Value = (usize, Vec<Vec<u32>>)> {
    (2usize..=4)
        .prop_flat_map(|k| {
            let n = 12u32;
            let slots: Vec<Vec<u32>> = (1..=n).combinations(k).collect();
            (
                Just(k),
                proptest::sample::subsequence(slots.clone(), 0..=slots.len().min(40)),
            )
        })
}

proptest! {
    /// Peak is exactly the running maximum of the charge balance.
    #[test]
    fn meter_peak_matches_event_log(events in meter_events()) {
        let mut meter = SpaceMeter::new();
        let mut balance = 0u64;
        let mut max_balance = 0u64;
        for ev in events {
            match ev {
                MeterEvent::Charge(w) => {
                    meter.charge(w);
                    balance += w;
                }
                MeterEvent::ReleaseFraction(pct) => {
                    let w = balance * pct as u64 / 100;
                    meter.release(w);
                    balance -= w;
                }
            }
            max_balance = max_balance.max(balance);
            prop_assert_eq!(meter.current_words(), balance);
            prop_assert_eq!(meter.peak_words(), max_balance);
        }
    }

    #[test]
    fn format_roundtrips_and_streams_deterministically((k, raw) in edge_set_strategy()) {
        let edges: Vec<Hyperedge> =
            raw.into_iter().map(|v| Hyperedge::new(v).unwrap()).collect();
        let n = 12u32;
        let text = write_edge_list(k, n, &edges);
        let parsed = parse_edge_list(&text, DedupPolicy::Strict).unwrap();
        prop_assert!(parsed.had_header);
        prop_assert_eq!(parsed.k, k);
        prop_assert_eq!(parsed.n, n);
        prop_assert_eq!(&parsed.edges, &edges);

        let stream = EdgeStream::from_edges(k, n, edges).unwrap();
        let mut meter = SpaceMeter::new();
        let a: Vec<Hyperedge> = stream.pass(&mut meter).cloned().collect();
        let b: Vec<Hyperedge> = stream.pass(&mut meter).cloned().collect();
        prop_assert_eq!(a, b);
        prop_assert_eq!(meter.passes_used(), 2);
        prop_assert_eq!(stream.m(), parsed.edges.len());
    }
}

#[test]
fn file_backed_stream_reads_edges() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    write!(file, "# block\n3 5 3\n1 2 3\n1 2 4\n3 4 5\n").unwrap();
    let stream = EdgeStream::from_file(file.path(), DedupPolicy::Strict).unwrap();
    assert_eq!((stream.k(), stream.n(), stream.m()), (3, 5, 3));
    let h = stream.to_hypergraph().unwrap();
    assert_eq!(h.m(), 3);
}

#[test]
fn file_parse_error_reports_line() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    write!(file, "3 5 2\n1 2 3\n1 2 99\n").unwrap();
    let err = EdgeStream::from_file(file.path(), DedupPolicy::Strict).unwrap_err();
    assert!(err.to_string().starts_with("line 3:"), "{err}");
}
