use parcay::builder::{build_sp, BuildError};
use parcay::constructions::multi_cycle_figure;
use parcay::graph::{isomorphic, IsoOptions};
use parcay::presentation::parse;
use parcay::suite::{MULTI_CYCLE_PP, MULTI_CYCLE_QUOTIENT_PP};

#[test]
fn multi_cycle_literal_is_infinite() {
    let p = parse(MULTI_CYCLE_PP).unwrap();
    assert_eq!(build_sp(&p, 20_000).unwrap_err(), BuildError::Overflow(20_000));
}

#[test]
fn multi_cycle_quotient_is_the_figure() {
    let p = parse(MULTI_CYCLE_QUOTIENT_PP).unwrap();
    let sp = build_sp(&p, 1000).unwrap();
    let fig = multi_cycle_figure();
    assert!(isomorphic(&sp.graph, &fig, IsoOptions::colours()).is_some());
    assert!(isomorphic(&sp.graph, &fig, IsoOptions::colours_and_classes()).is_some());
}
