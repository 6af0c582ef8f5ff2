use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use ssg_core::reductions::{AnsatzProfiles, CaseId, ReductionCase};
use ssg_core::{GrassmannNumber, Parity};

type G = GrassmannNumber<f64>;

const K: usize = 10;

fn case(id: CaseId, eps: f64) -> ReductionCase {
    let param = if id.odd_parameter().is_some() {
        G::generator(K, 2)
    } else {
        G::zero(K)
    };
    ReductionCase::new(id, eps, param).unwrap()
}

#[test]
fn recombination_matches_full_residual() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let gens: Vec<usize> = (3..K).collect();
    for id in CaseId::ALL {
        for eps in [1.0, -1.0] {
            if !id.uses_eps() && eps < 0.0 {
                continue;
            }
            let c = case(id, eps);
            let mut worst: f64 = 0.0;
            for _ in 0..4 {
                let p = AnsatzProfiles::random(K, &gens, &mut rng).unwrap();
                let x = G::scalar(K, rng.gen_range(0.3..1.5));
                let t = G::scalar(K, rng.gen_range(0.3..1.5));
                worst = worst.max(c.consistency_at(&p, &x, &t).unwrap());
            }
            assert!(worst < 1e-10, "{id:?} eps={eps}: {worst:e}");
        }
    }
}

#[test]
fn ansatz_is_invariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let gens: Vec<usize> = (3..K).collect();
    for id in CaseId::ALL {
        let c = case(id, if id.uses_eps() { -1.0 } else { 1.0 });
        let p = AnsatzProfiles::random(K, &gens, &mut rng).unwrap();
        let d = c
            .invariance_defect(&p, &G::scalar(K, 0.7), &G::scalar(K, 1.1))
            .unwrap();
        assert!(d < 1e-12, "{id:?}: {d:e}");
    }
}

#[test]
fn component_cases() {
    use ssg_core::reductions::{ComponentCaseId, ComponentProfiles, Profile};
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let gens: Vec<usize> = (2..K).collect();
    for id in ComponentCaseId::ALL {
        let p = ComponentProfiles {
            u: Profile::random(K, Parity::Even, &gens, 3, &mut rng).unwrap(),
            phi: Profile::random(K, Parity::Odd, &gens, 2, &mut rng).unwrap(),
            psi: Profile::random(K, Parity::Odd, &gens, 2, &mut rng).unwrap(),
        };
        let x = G::scalar(K, 0.8);
        let t = G::scalar(K, 1.3);
        let c = id.consistency_at(&p, &x, &t).unwrap();
        let s = id.slice_defect(&p, &G::scalar(K, 0.9)).unwrap();
        assert!(c < 1e-12 && s < 1e-12, "{id:?}: {c:e} {s:e}");
    }
}
