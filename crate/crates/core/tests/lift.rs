use coaf::cone::{make_coconvex, CoconvexBody, Cone};
use coaf::family::CoconvexFamily;
use coaf::form::{Signature, SymmetricForm};
use coaf::generate::gen_coconvex_family;
use coaf::lift::{
    lift, verify_identity_q, verify_identity_v, verify_signature_argument, LiftedPoint, Status,
};
use coaf::polytope::convex_hull;
use coaf::rng::SplitMix64;
use coaf::scalar::{frac, int, vec_of};
use coaf::Error;
use num_traits::Zero;

fn tri_body(leg: i64) -> CoconvexBody {
    let k = convex_hull(
        vec![vec_of(&[leg, 0]), vec_of(&[0, leg])],
        vec![vec_of(&[1, 0]), vec_of(&[0, 1])],
    )
    .unwrap();
    make_coconvex(Cone::orthant(2), k).unwrap()
}

#[test]
fn unit_triangle_trapezoid() {
    let lf = lift(&CoconvexFamily::new(vec![tri_body(1)], vec![]).unwrap()).unwrap();
    // (9 − 1)/2
    assert_eq!(lf.lifted_volume(&[int(1)], &int(3)).unwrap(), int(4));
    assert_eq!(lf.c(), &frac(1, 2));
    assert_eq!(lf.c_prime(), frac(1, 2));
    let body = lf.lifted_body(&[int(1)], &int(3)).unwrap();
    assert_eq!(body.vertices().len(), 4);
}

#[test]
fn identity_v_on_triangle_samples() {
    let lf = lift(&CoconvexFamily::new(vec![tri_body(1)], vec![]).unwrap()).unwrap();
    let samples: Vec<LiftedPoint> = (1..=5)
        .map(|k| LiftedPoint {
            lambda: vec![frac(k, 2)],
            t: int(k + 1),
        })
        .collect();
    let r = verify_identity_v(&lf, &samples).unwrap();
    assert_eq!(r.status, Status::Ok);
    assert_eq!(r.samples, 5);
    let low = LiftedPoint {
        lambda: vec![int(2)],
        t: int(2),
    };
    assert!(matches!(
        verify_identity_v(&lf, &[low]),
        Err(Error::Precondition(_))
    ));
    let zero = LiftedPoint {
        lambda: vec![int(0)],
        t: int(2),
    };
    assert!(matches!(
        verify_identity_v(&lf, &[zero]),
        Err(Error::Precondition(_))
    ));
}

#[test]
fn triangle_lifted_form_is_hyperbolic() {
    let lf = lift(&CoconvexFamily::new(vec![tri_body(1)], vec![]).unwrap()).unwrap();
    let q = lf.forms().unwrap().quadratic;
    assert_eq!(q, SymmetricForm::diagonal(vec![int(-1), int(1)]));
    assert_eq!(lf.expected_quadratic().unwrap(), q);
    assert!(verify_signature_argument(&lf).unwrap().passed());
}

#[test]
fn homothetic_pair_tracks_zeros() {
    let fam = CoconvexFamily::new(vec![tri_body(1), tri_body(2)], vec![]).unwrap();
    let lf = lift(&fam).unwrap();
    // c·t² − Vol_β at λ = (1,1), t = 4
    assert_eq!(
        lf.lifted_volume(&[int(1), int(1)], &int(4)).unwrap(),
        frac(7, 2)
    );
    let q = lf.forms().unwrap().quadratic;
    assert_eq!(
        q.restrict(&[0, 1]),
        lf.co_forms().unwrap().quadratic.scale(&int(-1))
    );
    assert_eq!(q.signature(), Signature::new(1, 1, 1));
    assert_eq!(
        lf.co_forms().unwrap().quadratic.signature(),
        Signature::new(1, 0, 1)
    );
}

#[test]
fn random_families_satisfy_both_identities() {
    let mut rng = SplitMix64::new(51);
    for (d, n) in [(2, 2), (2, 3), (3, 1), (3, 2), (4, 1)] {
        let fam = gen_coconvex_family(&mut rng, d, n, 3).unwrap();
        let lf = lift(&fam).unwrap();
        let samples = lf.default_samples(5).unwrap();
        assert!(verify_identity_v(&lf, &samples).unwrap().passed());
        assert!(verify_identity_q(&lf).unwrap().passed());
        assert!(verify_signature_argument(&lf).unwrap().passed());
        assert_eq!(
            &lf.recovered_co_volume_polynomial().unwrap(),
            lf.co_volume_polynomial().unwrap()
        );
        // the t = 0 slice of Q_α is −Q^C
        let q = lf.forms().unwrap().quadratic;
        let idx: Vec<usize> = (0..n).collect();
        assert_eq!(
            q.restrict(&idx),
            lf.co_forms().unwrap().quadratic.scale(&int(-1))
        );
        assert!(q.entry(n, n) > &Zero::zero());
    }
}

#[test]
fn single_generator_in_three_dimensions() {
    let mut rng = SplitMix64::new(52);
    let fam = gen_coconvex_family(&mut rng, 3, 1, 3).unwrap();
    let lf = lift(&fam).unwrap();
    let sig = lf.forms().unwrap().quadratic.signature();
    assert_eq!(sig.pos, 1);
    assert!(sig.neg <= 2);
    assert_eq!(sig.pos + sig.neg + sig.zero, 2);
}

#[test]
fn report_json_shape() {
    let lf = lift(&CoconvexFamily::new(vec![tri_body(1)], vec![]).unwrap()).unwrap();
    let r = verify_identity_q(&lf).unwrap();
    let v = serde_json::to_value(&r).unwrap();
    assert_eq!(v["identity"], "Q");
    assert_eq!(v["status"], "ok");
    assert!(v["counterexample"].is_null());
    let s = serde_json::to_value(verify_signature_argument(&lf).unwrap()).unwrap();
    assert_eq!(s["identity"], "signature");
    let lifted = serde_json::to_value(&lf).unwrap();
    assert_eq!(lifted["c"], "1/2");
    assert_eq!(lifted["t0"], "1");
    assert_eq!(lifted["t1"], "3");
}
