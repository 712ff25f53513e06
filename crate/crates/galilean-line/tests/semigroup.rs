//! Map semigroup: associativity, the substitution law, the embedding of
//! the line group, and the inverse search.

use galilean_line::error::StructureError;
use galilean_line::line_group::compose;
use galilean_line::map_semigroup::{
    act_map, compose_map, gamma_law_residual, inverse_search, map_associativity_residual, MVJet, MapElement, Profile,
};
use galilean_line::random::{element_const_rot, trial_rng};
use galilean_line::scalar::{q, Rational};
use galilean_line::suites::random_map_element;
use proptest::prelude::*;

/// Degree-2 inputs compose three times without truncation loss at this
/// degree.
const DEGREE: usize = 8;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn composition_is_associative(seed in any::<u64>()) {
        let mut rng = trial_rng(seed, 0);
        let g: Vec<MapElement<Rational>> = (0..3).map(|_| random_map_element(&mut rng, DEGREE)).collect();
        prop_assert_eq!(map_associativity_residual(&g[2], &g[1], &g[0]).unwrap(), q(0, 1));
    }

    #[test]
    fn substitution_law(seed in any::<u64>()) {
        let mut rng = trial_rng(seed, 0);
        let (g2, g1) = (random_map_element::<Rational>(&mut rng, DEGREE), random_map_element(&mut rng, DEGREE));
        let f = MVJet::var(0, DEGREE).mul(&MVJet::var(3, DEGREE)).add(&MVJet::constant(q(1, 2), DEGREE));
        prop_assert_eq!(gamma_law_residual(&f, &g2, &g1).unwrap(), q(0, 1));
    }

    #[test]
    fn action_follows_composition(seed in any::<u64>()) {
        let mut rng = trial_rng(seed, 0);
        let (g2, g1) = (random_map_element::<Rational>(&mut rng, DEGREE), random_map_element(&mut rng, DEGREE));
        let p = [q(1, 3), q(-1, 2), q(0, 1), q(1, 4)];
        let g21 = compose_map(&g2, &g1).unwrap();
        prop_assert_eq!(act_map(&g21, &p), act_map(&g2, &act_map(&g1, &p)));
    }

    #[test]
    fn line_group_embeds(seed in any::<u64>()) {
        let mut rng = trial_rng(seed, 0);
        let order = 4;
        let (h2, h1) = (element_const_rot::<Rational>(&mut rng, 1, order), element_const_rot(&mut rng, 1, order));
        let m2 = MapElement::from_line_group(&h2, DEGREE).unwrap();
        let m1 = MapElement::from_line_group(&h1, DEGREE).unwrap();
        let h21 = compose(&h2, &h1).unwrap();
        let m21 = compose_map(&m2, &m1).unwrap();
        prop_assert_eq!(m21.distance(&MapElement::from_line_group(&h21, DEGREE).unwrap()), q(0, 1));
        prop_assert_eq!(m21.to_line_group(order), Some(h21));
    }
}

#[test]
fn identity_is_neutral() {
    let g = random_map_element::<Rational>(&mut trial_rng(4, 0), DEGREE);
    let e = MapElement::identity(DEGREE);
    assert_eq!(compose_map(&e, &g).unwrap(), g);
    assert_eq!(compose_map(&g, &e).unwrap(), g);
}

#[test]
fn degree_mismatch_is_reported() {
    let a = MapElement::<Rational>::identity(3);
    let b = MapElement::<Rational>::identity(4);
    assert_eq!(compose_map(&a, &b), Err(StructureError::DegreeMismatch(3, 4)));
}

#[test]
fn inverse_search_on_pinned_profiles() {
    for profile in Profile::ALL {
        for degree in [2, 3, 4] {
            let g = profile.element::<Rational>(degree);
            let rep = inverse_search(&g, 20, 1e-12).unwrap();
            assert_eq!(rep.residual_by_degree.len(), degree + 1, "{} d{degree}", profile.name());
            assert!(rep.converged, "{} d{degree}: {:?}", profile.name(), rep.diagnostic);
            assert_eq!(rep.residual, q(0, 1), "{} d{degree}", profile.name());
        }
    }
    assert!(inverse_search(&Profile::Translation.element::<f64>(2), 20, 0.0).is_err());
}
