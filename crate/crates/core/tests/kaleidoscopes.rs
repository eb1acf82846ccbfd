use uso_core::analysis::is_uso;
use uso_core::constructions::{
    blowup_pmatrix, contains_copy, is_kaleidoscope, pcube_kaleidoscope, product_kaleidoscope,
};
use uso_core::cube::DimSet;
use uso_core::iso::{are_isomorphic, exists_property_l_copy};
use uso_core::lcp::{is_p_matrix, pcube_outmap};
use uso_core::lgraph::lgraph;
use uso_core::linalg::{rat_vec, RationalMatrix};
use uso_core::random::{random_diag_dominant, seeded_rng};
use uso_core::OutMap;

fn spinner_matrix() -> RationalMatrix {
    RationalMatrix::from_i64_rows(&[[1, 2, 0], [0, 1, 2], [2, 0, 1]]).unwrap()
}

fn spinner() -> OutMap {
    pcube_outmap(&spinner_matrix(), &rat_vec(&[1, 1, 1])).unwrap()
}

#[test]
fn blowup_of_spinner_matches_example() {
    let expected = RationalMatrix::from_i64_rows(&[
        [1, 2, 0, 2, 2, 0],
        [0, 1, 2, 0, 2, 2],
        [2, 0, 1, 2, 0, 2],
        [0, 2, 0, 1, 2, 0],
        [0, 0, 2, 0, 1, 2],
        [2, 0, 0, 2, 0, 1],
    ])
    .unwrap();
    assert_eq!(blowup_pmatrix(&spinner_matrix()).unwrap(), expected);
    assert!(is_p_matrix(&expected).unwrap());
}

#[test]
fn random_blowups_are_p_matrices() {
    let mut rng = seeded_rng(17);
    for n in 1..=4 {
        let a = random_diag_dominant(&mut rng, n);
        assert!(is_p_matrix(&blowup_pmatrix(&a).unwrap()).unwrap());
    }
}

fn check_contains_mirrors(psi: &OutMap, phi: &OutMap) {
    let n = phi.dim();
    for f in 0..1u32 << n {
        let mirrored = phi.mirror(DimSet(f));
        let at = contains_copy(psi, &mirrored)
            .unwrap()
            .expect("mirror image present");
        // L-graphs of the copy embed into those of ψ
        for w in mirrored.vertices() {
            let small = lgraph(&mirrored, w);
            let big = lgraph(psi, at | w);
            for (i, j) in small.arcs() {
                assert!(big.has_arc(i, j));
            }
        }
    }
}

#[test]
fn spinner_kaleidoscopes() {
    let phi = spinner();
    let product = product_kaleidoscope(&phi).unwrap();
    assert!(is_uso(&product));
    assert!(is_kaleidoscope(&product, &phi).unwrap());
    check_contains_mirrors(&product, &phi);

    let k = pcube_kaleidoscope(&spinner_matrix(), &rat_vec(&[1, 1, 1])).unwrap();
    assert_eq!(k.rhs, rat_vec(&[1; 6]));
    assert!(is_kaleidoscope(&k.outmap, &phi).unwrap());
    check_contains_mirrors(&k.outmap, &phi);

    // the two constructions give different cubes
    assert_eq!(are_isomorphic(&product, &k.outmap).unwrap(), None);
}

#[test]
fn spinner_kaleidoscopes_have_no_property_l_copy() {
    let phi = spinner();
    assert!(exists_property_l_copy(&phi).unwrap().is_some());
    let product = product_kaleidoscope(&phi).unwrap();
    assert_eq!(exists_property_l_copy(&product).unwrap(), None);
    let k = pcube_kaleidoscope(&spinner_matrix(), &rat_vec(&[1, 1, 1])).unwrap();
    assert_eq!(exists_property_l_copy(&k.outmap).unwrap(), None);
}
