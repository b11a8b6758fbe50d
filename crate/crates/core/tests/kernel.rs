use coaf::generate::gen_convex_body;
use coaf::polytope::{
    clip, contains, convex_hull, dd_convert, dd_convert_back, minkowski_sum, Halfspace, Polyhedron,
};
use coaf::rng::SplitMix64;
use coaf::scalar::{frac, int, vec_of};
use coaf::volume::volume;
use coaf::{Error, Scalar};
use num_traits::{Signed, Zero};

// Shoelace area of a polygon whose vertices are sorted by angle here.
fn shoelace(p: &Polyhedron) -> Scalar {
    let vs = p.vertices();
    let n = vs.len() as f64;
    let cx: f64 = vs.iter().map(|v| to_f64(&v[0])).sum::<f64>() / n;
    let cy: f64 = vs.iter().map(|v| to_f64(&v[1])).sum::<f64>() / n;
    let mut ring: Vec<&Vec<Scalar>> = vs.iter().collect();
    ring.sort_by(|a, b| {
        let ta = (to_f64(&a[1]) - cy).atan2(to_f64(&a[0]) - cx);
        let tb = (to_f64(&b[1]) - cy).atan2(to_f64(&b[0]) - cx);
        ta.partial_cmp(&tb).unwrap()
    });
    let mut twice = Scalar::zero();
    for i in 0..ring.len() {
        let (a, b) = (ring[i], ring[(i + 1) % ring.len()]);
        twice += &a[0] * &b[1] - &a[1] * &b[0];
    }
    (twice / int(2)).abs()
}

fn to_f64(x: &Scalar) -> f64 {
    use num_traits::ToPrimitive;
    x.to_f64().unwrap()
}

fn tetra_volume(p: &[Vec<Scalar>; 4]) -> Scalar {
    let r: Vec<Vec<Scalar>> = (1..4)
        .map(|i| (0..3).map(|j| &p[i][j] - &p[0][j]).collect())
        .collect();
    let det = &r[0][0] * (&r[1][1] * &r[2][2] - &r[1][2] * &r[2][1])
        - &r[0][1] * (&r[1][0] * &r[2][2] - &r[1][2] * &r[2][0])
        + &r[0][2] * (&r[1][0] * &r[2][1] - &r[1][1] * &r[2][0]);
    det.abs() / int(6)
}

#[test]
fn random_polygon_areas_match_shoelace() {
    let mut rng = SplitMix64::new(21);
    for _ in 0..40 {
        let p = gen_convex_body(&mut rng, 2, 5).unwrap();
        assert_eq!(volume(&p).unwrap(), shoelace(&p));
    }
}

#[test]
fn random_tetrahedra_match_determinant() {
    let mut rng = SplitMix64::new(22);
    let mut checked = 0;
    while checked < 20 {
        let pts: Vec<Vec<Scalar>> = (0..4)
            .map(|_| {
                (0..3)
                    .map(|_| coaf::generate::gen_rational(&mut rng, 4))
                    .collect()
            })
            .collect();
        let expected = tetra_volume(&[
            pts[0].clone(),
            pts[1].clone(),
            pts[2].clone(),
            pts[3].clone(),
        ]);
        if expected.is_zero() {
            continue;
        }
        assert_eq!(
            volume(&convex_hull(pts, vec![]).unwrap()).unwrap(),
            expected
        );
        checked += 1;
    }
}

#[test]
fn cross_polytope_in_four_dimensions() {
    let mut pts = Vec::new();
    for i in 0..4 {
        for s in [1, -1] {
            let mut v = vec![int(0); 4];
            v[i] = int(s);
            pts.push(v);
        }
    }
    let p = convex_hull(pts, vec![]).unwrap();
    assert_eq!(p.vertices().len(), 8);
    assert_eq!(dd_convert(&p).unwrap().len(), 16);
    // 2^d / d!
    assert_eq!(volume(&p).unwrap(), frac(16, 24));
}

#[test]
fn minkowski_sum_of_segments_is_a_zonotope() {
    let seg = |a: [i64; 2]| convex_hull(vec![vec_of(&[0, 0]), vec_of(&a)], vec![]).unwrap();
    let z = minkowski_sum(
        &minkowski_sum(&seg([2, 0]), &seg([0, 1])).unwrap(),
        &seg([1, 1]),
    )
    .unwrap();
    assert_eq!(z.vertices().len(), 6);
    // |det| summed over pairs: 2 + 2 + 1
    assert_eq!(volume(&z).unwrap(), int(5));
}

#[test]
fn clip_and_containment() {
    let cube = Polyhedron::cube(3, int(2));
    let h = Halfspace::new(vec_of(&[1, 1, 1]), int(3)).unwrap();
    let c = clip(&cube, &h).unwrap();
    assert!(contains(&cube, &c));
    assert!(!contains(&c, &cube));
    // cube minus the corner simplex of leg 3 trimmed by the cube walls
    assert_eq!(volume(&c).unwrap(), int(4));
}

#[test]
fn double_description_round_trip_on_random_bodies() {
    let mut rng = SplitMix64::new(23);
    for d in 2..=4 {
        for _ in 0..8 {
            let p = gen_convex_body(&mut rng, d, 4).unwrap();
            let h = dd_convert(&p).unwrap();
            assert!(h.len() > d);
            assert_eq!(dd_convert_back(d, &h).unwrap(), p);
        }
    }
}

#[test]
fn unbounded_and_empty_inputs() {
    let quadrant = Polyhedron::hull(
        vec![vec_of(&[0, 0])],
        vec![vec_of(&[1, 0]), vec_of(&[0, 1])],
    )
    .unwrap();
    assert_eq!(volume(&quadrant), Err(Error::Unbounded));
    assert!(matches!(
        convex_hull(vec![], vec![]),
        Err(Error::EmptyPointSet)
    ));
    let empty = clip(
        &Polyhedron::cube(2, int(1)),
        &Halfspace::new(vec_of(&[1, 0]), int(-1)).unwrap(),
    )
    .unwrap();
    assert!(empty.is_empty());
    assert_eq!(volume(&empty).unwrap(), int(0));
}

#[test]
fn generated_body_matches_golden_file() {
    let golden: Polyhedron =
        serde_json::from_str(include_str!("golden/body_seed1_d2.json")).unwrap();
    let p = gen_convex_body(&mut SplitMix64::new(1), 2, 3).unwrap();
    assert_eq!(p, golden);
    assert!(volume(&p).unwrap().is_positive());
}
