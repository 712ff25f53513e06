//! The map semigroup with spacetime-dependent translations and time
//! shifts: composition, the embedding of the line group, and the
//! degree-by-degree inverse search.

use galilean_line::line_group::compose;
use galilean_line::map_semigroup::{compose_map, inverse_search, map_associativity_residual, MapElement, Profile};
use galilean_line::random::{element_const_rot, trial_rng};
use galilean_line::scalar::{rational_string, Rational};
use galilean_line::suites::random_map_element;

fn main() {
    let degree = 8;
    let mut rng = trial_rng(9, 0);
    let g: Vec<MapElement<Rational>> = (0..3).map(|_| random_map_element(&mut rng, degree)).collect();
    let r = map_associativity_residual(&g[2], &g[1], &g[0]).unwrap();
    println!("associativity residual at degree {degree}: {}", rational_string(&r));

    // Line-group elements embed as maps, and the embedding respects products.
    let order = 4;
    let h1 = element_const_rot::<Rational>(&mut rng, 1, order);
    let h2 = element_const_rot::<Rational>(&mut rng, 1, order);
    let m1 = MapElement::from_line_group(&h1, degree).unwrap();
    let m2 = MapElement::from_line_group(&h2, degree).unwrap();
    let prod = MapElement::from_line_group(&compose(&h2, &h1).unwrap(), degree).unwrap();
    let d = compose_map(&m2, &m1).unwrap().distance(&prod);
    println!("embedding homomorphism residual: {}", rational_string(&d));

    println!("\n{:<16} {:>6} {:>10} {:>24}", "profile", "degree", "converged", "residual");
    for profile in Profile::ALL {
        for degree in [2, 3, 4] {
            let rep = inverse_search(&profile.element::<Rational>(degree), 20, 1e-12).unwrap();
            println!("{:<16} {:>6} {:>10} {:>24}", profile.name(), degree, rep.converged, rational_string(&rep.residual));
        }
    }
}
