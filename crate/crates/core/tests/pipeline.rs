use std::cmp::Ordering;

use proptest::prelude::*;

use newton_quintic::kneading::{build_polynomial_tree, kneading_determinant};
use newton_quintic::markov::{
    char_poly, entropy_at, markov_partition, transition_matrix, CurveBudget, EntropyMethod,
};
use newton_quintic::newton::{critical_orbit, find_superstable_parameter};
use newton_quintic::poly::IntPolynomial;
use newton_quintic::reduction::{c0, reduce, BringJerrardQuintic};
use newton_quintic::symbolic::{
    generate_tree, itinerary, kneading_data, order_compare, KneadingData, SymbolWord, Terminal,
};

fn superstable(word: &SymbolWord) -> f64 {
    find_superstable_parameter(word, (1e-3, c0() - 1e-9)).unwrap()
}

#[test]
fn parameter_order_reverses_kneading_order() {
    let tree = generate_tree(5);
    let mut words: Vec<&SymbolWord> = tree
        .nodes()
        .filter(|n| n.terminal == Terminal::C)
        .map(|n| &n.word)
        .collect();
    words.sort_by(|a, b| order_compare(a, b).unwrap());
    let params: Vec<f64> = words.iter().map(|w| superstable(w)).collect();
    for pair in params.windows(2) {
        assert!(pair[0] >= pair[1], "{params:?}");
    }
}

#[test]
fn superstable_itinerary_round_trip() {
    for node in generate_tree(5)
        .nodes()
        .filter(|n| n.terminal == Terminal::C)
    {
        let c = superstable(&node.word);
        let data = kneading_data(c, 200).unwrap();
        assert_eq!(data.y, node.word, "c = {c}");
        let zero = itinerary(c, 0.0, 200).unwrap();
        assert_eq!(zero, node.word.prepend(newton_quintic::symbolic::Symbol::C));
    }
}

#[test]
fn markov_charpoly_factors_through_kneading() {
    // det(I - tM) = (1 - t) * cleared numerator for every periodic leaf
    let tree = build_polynomial_tree(5).unwrap();
    let one_minus_t = IntPolynomial::one_minus_t_pow(1);
    for node in tree.nodes().filter(|n| n.node.terminal == Terminal::C) {
        let word = &node.node.word;
        let c = superstable(word);
        let orbit = critical_orbit(c, word.period().unwrap()).unwrap();
        let m = transition_matrix(&markov_partition(c, &orbit).unwrap()).unwrap();
        let d_m = char_poly(&m);
        let det =
            kneading_determinant(&KneadingData::from_kneading_sequence(word.clone())).unwrap();
        let cleared = det.cleared.unwrap();
        assert_eq!(cleared, node.cleared);
        let (q, r) = d_m.div_rem(&cleared).unwrap();
        assert!(r.is_zero(), "{word}: {d_m} / {cleared}");
        // the quotient is the extra (1 - t) of d_M = (1 - t)^2 d_Y
        assert!(q == one_minus_t || q == one_minus_t.neg(), "{word}: {q}");
    }
}

#[test]
fn reduced_quintic_in_band_has_entropy() {
    // x^5 - 1.5 x + 1.2 lands inside the window band
    let r = reduce(&BringJerrardQuintic::new(-1.5, 1.2).unwrap()).unwrap();
    let c = r.canonical_c().unwrap();
    assert!(0.0 < c && c < c0());
    let (e, _) = entropy_at(c, &CurveBudget::default()).unwrap();
    assert!(e.h > 0.0);
    assert!(matches!(
        e.method,
        EntropyMethod::CharPoly | EntropyMethod::Kneading | EntropyMethod::LapGrowth
    ));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn resolved_kneading_sequences_are_monotone(c1 in 0.05f64..1.64, c2 in 0.05f64..1.64) {
        let (lo, hi) = if c1 < c2 { (c1, c2) } else { (c2, c1) };
        let (Ok(a), Ok(b)) = (kneading_data(lo, 300), kneading_data(hi, 300)) else {
            return Ok(());
        };
        if let Ok(ord) = order_compare(&a.y, &b.y) {
            prop_assert_ne!(ord, Ordering::Less, "{} at {} vs {} at {}", a.y, lo, b.y, hi);
        }
    }
}
