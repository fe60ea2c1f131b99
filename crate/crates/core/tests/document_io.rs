mod common;

use common::small_set;
use proptest::prelude::*;
use sechain::construct::build;
use sechain::graphs::{drawing_from_level, family};
use sechain::io::{parse, render_svg, serialize, Document};
use sechain::report::all_passed;

proptest! {
    #[test]
    fn point_documents_round_trip(set in small_set(12)) {
        let doc = Document::from_points(&set);
        let text = serialize(&doc);
        let back = parse(&text).unwrap();
        prop_assert_eq!(&back, &doc);
        prop_assert_eq!(serialize(&back), text);
        prop_assert_eq!(back.point_set().unwrap(), set);
    }

    #[test]
    fn parse_never_panics_on_truncation(cut in 0usize..2000) {
        let text = serialize(&Document::from_level(&build(2).unwrap()));
        let cut = cut.min(text.len());
        if cut < text.trim_end().len() {
            prop_assert!(parse(&text[..cut]).is_err());
        }
    }

    #[test]
    fn parse_never_panics_on_noise(s in "\\PC{0,64}") {
        let _ = parse(&s);
    }
}

#[test]
fn level_documents_round_trip_and_verify() {
    for k in 1..=5 {
        let level = build(k).unwrap();
        let doc = Document::from_level(&level);
        let back = parse(&serialize(&doc)).unwrap();
        assert_eq!(back, doc);
        let data = back.level_data().unwrap();
        assert_eq!(data.k, k);
        assert_eq!(data.a, level.a.points());
        assert_eq!(data.witness, level.witness);
        assert_eq!(data.eps_history, level.eps_history);
        assert!(all_passed(&back.verify().unwrap()));
    }
}

#[test]
fn graph_documents_round_trip() {
    let d = drawing_from_level(&build(3).unwrap()).unwrap();
    for doc in [Document::from_graph(3, &family(3), None), Document::from_graph(3, &d.graph, Some(&d.placement))] {
        let back = parse(&serialize(&doc)).unwrap();
        assert_eq!(back, doc);
        assert!(all_passed(&back.verify().unwrap()));
    }
    let (graph, placement) =
        parse(&serialize(&Document::from_graph(3, &d.graph, Some(&d.placement)))).unwrap().drawing().unwrap();
    assert_eq!(graph, d.graph);
    assert_eq!(placement.unwrap(), d.placement);
}

#[test]
fn svg_has_one_mark_per_point() {
    let level = build(3).unwrap();
    let svg = render_svg(&Document::from_level(&level)).unwrap();
    assert_eq!(svg.matches(r#"<circle class="p""#).count(), 8);
    assert_eq!(svg.matches(r#"<circle class="q""#).count(), 8);
    assert_eq!(svg.matches(r#"<circle class="witness""#).count(), 20);
}
