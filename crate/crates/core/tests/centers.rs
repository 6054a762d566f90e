use poncelet_core::{builtin_centers, center, excenters, parse_center, Line, Point, Triangle};
use proptest::prelude::*;

fn triangle() -> impl Strategy<Value = Triangle> {
    proptest::array::uniform6(-3.0..3.0f64)
        .prop_map(|v| Triangle::new(Point::xy(v[0], v[1]), Point::xy(v[2], v[3]), Point::xy(v[4], v[5]), 0.0))
        .prop_filter("well shaped", |t| {
            let [a, b, c] = t.sides();
            let min = a.min(b).min(c);
            min > 0.3 && t.signed_area().abs() > 0.1 * (a * b * c).powf(2.0 / 3.0)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    /// Every center commutes with similarities (rotation, scale, translation
    /// and reflection).
    #[test]
    fn centers_are_similarity_equivariant(
        tri in triangle(), rot in -3.1..3.1f64, scale in 0.2..5.0f64, tx in -2.0..2.0f64, ty in -2.0..2.0f64, flip in any::<bool>(),
    ) {
        let (s, c) = rot.sin_cos();
        let map = |p: Point| {
            let y = if flip { -p.y } else { p.y };
            Point::xy(scale * (c * p.x - s * y) + tx, scale * (s * p.x + c * y) + ty)
        };
        let image = tri.map(map);
        for def in builtin_centers() {
            let (Ok(a), Ok(b)) = (center(&tri, &def), center(&image, &def)) else { continue };
            let want = map(a);
            let size = 1.0 + want.norm() + scale * tri.perimeter();
            prop_assert!(b.dist(want) < 1e-9 * size, "{}: {:?} vs {:?}", def.label(), b, want);
        }
    }

    /// Centers do not depend on vertex labels; excenters follow their vertex.
    #[test]
    fn centers_ignore_labels(tri in triangle()) {
        let rolled = Triangle::new(tri.p2, tri.p3, tri.p1, 0.0);
        let swapped = Triangle::new(tri.p1, tri.p3, tri.p2, 0.0);
        for def in builtin_centers() {
            let Ok(x) = center(&tri, &def) else { continue };
            for other in [rolled, swapped] {
                let y = center(&other, &def).unwrap();
                prop_assert!(x.dist(y) < 1e-9 * (1.0 + x.norm()), "{}", def.label());
            }
        }
        let e = excenters(&tri).unwrap();
        let er = excenters(&rolled).unwrap();
        prop_assert!(e.get(2).dist(er.get(1)) < 1e-9 && e.get(3).dist(er.get(2)) < 1e-9 && e.get(1).dist(er.get(3)) < 1e-9);
    }

    #[test]
    fn classical_centers_match_constructions(tri in triangle()) {
        let get = |s: &str| center(&tri, &parse_center(s).unwrap()).unwrap();
        let [p1, p2, p3] = tri.vertices();
        // X1: equal distances to the side lines, inside
        let x1 = get("X1");
        let sides = [Line::through(p2, p3).unwrap(), Line::through(p1, p3).unwrap(), Line::through(p1, p2).unwrap()];
        let r: Vec<f64> = sides.iter().map(|l| l.distance(x1)).collect();
        prop_assert!((r[0] - r[1]).abs() < 1e-10 && (r[1] - r[2]).abs() < 1e-10);
        // inradius = area / semiperimeter
        prop_assert!((r[0] - tri.signed_area().abs() / (0.5 * tri.perimeter())).abs() < 1e-10);
        // X2 is the vertex mean
        let x2 = get("X2");
        prop_assert!(x2.dist((p1 + p2 + p3).scale(1.0 / 3.0)) < 1e-12);
        // X3 equidistant from the vertices; X4 on the altitudes
        let x3 = get("X3");
        prop_assert!((x3.dist(p1) - x3.dist(p2)).abs() < 1e-9 && (x3.dist(p1) - x3.dist(p3)).abs() < 1e-9);
        let x4 = get("X4");
        prop_assert!((x4 - p1).dot(p3 - p2).abs() < 1e-8 && (x4 - p2).dot(p3 - p1).abs() < 1e-8);
        // Euler line: X4 − X3 = 3 (X2 − X3)
        prop_assert!((x4 - x3).dist((x2 - x3).scale(3.0)) < 1e-8);
        // X40 (Bevan point) is the reflection of X1 in X3; X165 is the centroid of the excentral triangle
        prop_assert!(get("X40").dist(x3.scale(2.0) - x1) < 1e-8);
        let e = excenters(&tri).unwrap();
        prop_assert!(get("X165").dist((e.p1p + e.p2p + e.p3p).scale(1.0 / 3.0)) < 1e-8);
    }
}

#[test]
fn every_builtin_center_parses_from_its_label() {
    for def in builtin_centers() {
        assert_eq!(parse_center(&def.label()).unwrap(), def);
        assert_eq!(parse_center(&def.id.to_string()).unwrap(), def);
    }
    assert!(parse_center("X0").is_err());
    assert!(parse_center("centroid?").is_err());
}

#[test]
fn collinear_vertices_are_rejected() {
    let flat = Triangle::new(Point::xy(0.0, 0.0), Point::xy(1.0, 1.0), Point::xy(2.0, 2.0), 0.0);
    for def in builtin_centers() {
        assert!(center(&flat, &def).is_err(), "{}", def.label());
    }
    assert!(excenters(&flat).is_err());
}
