use coaf::cone::{
    co_scale, co_sum, co_volume, make_coconvex, make_cone, CoconvexBody, Cone, Truncation,
};
use coaf::generate::{gen_coconvex_body, gen_cone};
use coaf::polytope::{clip, convex_hull, Halfspace, Polyhedron};
use coaf::rng::SplitMix64;
use coaf::scalar::{dot, frac, int, pow, vec_of};
use coaf::volume::volume;
use coaf::{Error, Scalar};
use num_traits::{Signed, Zero};

fn orthant_cut(d: usize, leg: i64) -> CoconvexBody {
    let pts: Vec<Vec<Scalar>> = (0..d)
        .map(|i| {
            let mut v = vec![int(0); d];
            v[i] = int(leg);
            v
        })
        .collect();
    let rays: Vec<Vec<Scalar>> = (0..d)
        .map(|i| {
            let mut v = vec![int(0); d];
            v[i] = int(1);
            v
        })
        .collect();
    make_coconvex(Cone::orthant(d), convex_hull(pts, rays).unwrap()).unwrap()
}

fn truncations(a: &CoconvexBody, rng: &mut SplitMix64) -> Vec<Truncation> {
    let d = a.dim();
    let mut out = vec![a.default_truncation()];
    for _ in 0..3 {
        let mut xi = vec![int(0); d];
        for n in a.cone().facet_normals() {
            let w = coaf::generate::gen_positive_rational(rng, 4);
            for (x, y) in xi.iter_mut().zip(n) {
                *x += &w * y;
            }
        }
        let t = a.max_level(&xi) + coaf::generate::gen_positive_rational(rng, 4);
        out.push(Truncation { xi, t });
    }
    out
}

#[test]
fn simplex_bodies_in_orthants() {
    // the region below x_1 + ... + x_d = leg has volume leg^d / d!
    assert_eq!(co_volume(&orthant_cut(2, 1), None).unwrap(), frac(1, 2));
    assert_eq!(co_volume(&orthant_cut(3, 2), None).unwrap(), frac(8, 6));
    assert_eq!(co_volume(&orthant_cut(4, 1), None).unwrap(), frac(1, 24));
}

#[test]
fn truncation_independence_on_random_bodies() {
    let mut rng = SplitMix64::new(31);
    for d in 2..=3 {
        for _ in 0..6 {
            let cone = gen_cone(&mut rng, d, 3).unwrap();
            let a = gen_coconvex_body(&mut rng, &cone, 3).unwrap();
            let ts = truncations(&a, &mut rng);
            let v0 = co_volume(&a, Some(&ts[0])).unwrap();
            assert!(v0.is_positive());
            for t in &ts[1..] {
                assert_eq!(co_volume(&a, Some(t)).unwrap(), v0);
            }
        }
    }
}

#[test]
fn volume_additivity_in_the_sector() {
    let mut rng = SplitMix64::new(32);
    let cone = gen_cone(&mut rng, 3, 3).unwrap();
    let a = gen_coconvex_body(&mut rng, &cone, 3).unwrap();
    let tr = a.default_truncation();
    let h = Halfspace::new(tr.xi.clone(), tr.t.clone()).unwrap();
    let sector = clip(cone.as_polyhedron(), &h).unwrap();
    let cut = clip(a.complement(), &h).unwrap();
    assert_eq!(
        volume(&sector).unwrap(),
        volume(&cut).unwrap() + co_volume(&a, Some(&tr)).unwrap()
    );
    let c = cone.sector_constant(&tr.xi).unwrap();
    assert_eq!(volume(&sector).unwrap(), c * pow(&tr.t, 3));
}

#[test]
fn sum_and_scale_laws() {
    let mut rng = SplitMix64::new(33);
    let cone = gen_cone(&mut rng, 2, 3).unwrap();
    let a = gen_coconvex_body(&mut rng, &cone, 3).unwrap();
    let b = gen_coconvex_body(&mut rng, &cone, 3).unwrap();
    let c = gen_coconvex_body(&mut rng, &cone, 3).unwrap();
    assert_eq!(co_sum(&a, &b).unwrap(), co_sum(&b, &a).unwrap());
    assert_eq!(
        co_sum(&co_sum(&a, &b).unwrap(), &c).unwrap(),
        co_sum(&a, &co_sum(&b, &c).unwrap()).unwrap()
    );
    let l = frac(5, 3);
    assert_eq!(
        co_scale(&l, &co_sum(&a, &b).unwrap()).unwrap(),
        co_sum(&co_scale(&l, &a).unwrap(), &co_scale(&l, &b).unwrap()).unwrap()
    );
    assert_eq!(
        co_volume(&co_scale(&l, &a).unwrap(), None).unwrap(),
        pow(&l, 2) * co_volume(&a, None).unwrap()
    );
    assert_eq!(co_scale(&int(1), &a).unwrap(), a);
    assert!(matches!(
        co_scale(&int(0), &a),
        Err(Error::NonPositiveScale(_))
    ));
}

#[test]
fn coconvex_sum_is_larger() {
    // the complement of A ⊕ B is K_A + K_B, which sits deeper in the cone
    let a = orthant_cut(2, 1);
    let b = orthant_cut(2, 2);
    let s = co_sum(&a, &b).unwrap();
    assert_eq!(s, orthant_cut(2, 3));
    assert_eq!(co_volume(&s, None).unwrap(), frac(9, 2));
}

#[test]
fn invalid_bodies_are_rejected() {
    let cone = Cone::orthant(2);
    let outside = convex_hull(
        vec![vec_of(&[-1, 1])],
        vec![vec_of(&[1, 0]), vec_of(&[0, 1])],
    )
    .unwrap();
    assert_eq!(
        make_coconvex(cone.clone(), outside).unwrap_err(),
        Error::ComplementNotInCone
    );
    let strip = convex_hull(
        vec![vec_of(&[1, 0])],
        vec![vec_of(&[1, 0]), vec_of(&[0, 1])],
    )
    .unwrap();
    assert_eq!(
        make_coconvex(cone.clone(), strip).unwrap_err(),
        Error::ComplementNotCompact
    );
    let whole = cone.as_polyhedron().clone();
    assert_eq!(
        make_coconvex(cone.clone(), whole).unwrap_err(),
        Error::EmptyInterior
    );
    let other = make_cone(vec![vec_of(&[1, 0]), vec_of(&[1, 1])]).unwrap();
    let k = convex_hull(
        vec![vec_of(&[1, 0])],
        vec![vec_of(&[1, 0]), vec_of(&[1, 1])],
    )
    .unwrap();
    assert_eq!(
        make_coconvex(other, k).unwrap_err(),
        Error::ComplementNotCompact
    );
    let bounded = Polyhedron::cube(2, int(1));
    assert_eq!(
        make_coconvex(cone, bounded).unwrap_err(),
        Error::ComplementNotCompact
    );
}

#[test]
fn cone_validation() {
    assert_eq!(
        make_cone(vec![vec_of(&[1, 0]), vec_of(&[-1, 0]), vec_of(&[0, 1])]).unwrap_err(),
        Error::NotStrictlyConvex
    );
    assert_eq!(
        make_cone(vec![vec_of(&[1, 1])]).unwrap_err(),
        Error::NotFullDimensional
    );
    let c = make_cone(vec![vec_of(&[1, 0]), vec_of(&[1, 2])]).unwrap();
    assert!(c.rays().iter().all(|r| dot(c.xi(), r).is_positive()));
    assert!(!c.xi().iter().all(Zero::is_zero));
}

#[test]
fn truncation_below_complement_is_rejected() {
    let a = orthant_cut(2, 2);
    let bad = Truncation {
        xi: vec_of(&[1, 1]),
        t: int(2),
    };
    assert!(matches!(
        co_volume(&a, Some(&bad)),
        Err(Error::InvalidTruncation(_))
    ));
    let flat = Truncation {
        xi: vec_of(&[1, 0]),
        t: int(5),
    };
    assert!(matches!(
        co_volume(&a, Some(&flat)),
        Err(Error::InvalidTruncation(_))
    ));
}

#[test]
fn json_round_trip() {
    let a = orthant_cut(3, 2);
    let s = serde_json::to_string(&a).unwrap();
    let back: CoconvexBody = serde_json::from_str(&s).unwrap();
    assert_eq!(back, a);
    let bad = r#"{"cone":{"rays":[[1,0],[0,1]]},"complement":{"dim":2,"vertices":[["1","0"]],"rays":[[1,0]]}}"#;
    assert!(serde_json::from_str::<CoconvexBody>(bad).is_err());
}
