use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use ssg_core::prolongation::{component, prolong, ssg};
use ssg_core::Supernumber;

fn ssg_fields(lay: &ssg::Layout) -> Vec<ssg_core::prolongation::VectorFieldSpec> {
    let k = lay.k;
    vec![
        ssg::l(k),
        ssg::p_x(k),
        ssg::p_t(k),
        ssg::q_x(lay.param(0)),
        ssg::q_t(lay.param(0)),
        ssg::d_phi(k),
        ssg::phi_scaling(k),
    ]
}

#[test]
fn ssg_recursive_matches_expanded() {
    let lay = ssg::Layout::default();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..4 {
        let p = lay.random_point(&mut rng).unwrap();
        for v in ssg_fields(&lay) {
            let rec = prolong(&v, &p).unwrap();
            let exp = ssg::prolong_expanded(&v, &p).unwrap();
            for (key, val) in &exp.entries {
                let d = val.max_abs_diff(rec.entries.get(key).unwrap());
                assert!(d < 1e-10, "{} {:?}: {d}", v.name, key);
            }
        }
    }
}

#[test]
fn ssg_symmetries_annihilate_criterion() {
    let lay = ssg::Layout::default();
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..4 {
        let p = lay.random_point(&mut rng).unwrap();
        for v in ssg_fields(&lay).into_iter().take(5) {
            let r = ssg::symmetry_residual(&v, &p).unwrap();
            assert!(r.norm_max() < 1e-10, "{}: {}", v.name, r.norm_max());
        }
        let q = ssg::onshell_substitute(&p).unwrap();
        let r = ssg::symmetry_residual(&ssg::d_phi(lay.k), &p).unwrap();
        let expect = -&q.dep(0).cos();
        assert!(r.max_abs_diff(&expect) < 1e-12);
    }
}

#[test]
fn component_recursive_matches_expanded_and_criterion() {
    let lay = component::Layout::default();
    let k = lay.k;
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..4 {
        let p = lay.random_point(&mut rng).unwrap();
        for v in [
            component::p_x(k),
            component::p_t(k),
            component::dilation(k),
            component::d_u(k),
        ] {
            let rec = prolong(&v, &p).unwrap();
            let exp = component::prolong_expanded(&v, &p).unwrap();
            for (key, val) in &exp.entries {
                let d = val.max_abs_diff(rec.entries.get(key).unwrap());
                assert!(d < 1e-10, "{} {:?}: {d}", v.name, key);
            }
        }
        for v in [component::p_x(k), component::p_t(k), component::dilation(k)] {
            for r in component::symmetry_residual(&v, &p).unwrap() {
                assert!(r.norm_max() < 1e-10, "{}: {}", v.name, r.norm_max());
            }
        }
        let r = component::symmetry_residual(&component::d_u(k), &p).unwrap();
        assert!(r.iter().map(Supernumber::norm_max).fold(0.0, f64::max) > 1e-3);
    }
}
