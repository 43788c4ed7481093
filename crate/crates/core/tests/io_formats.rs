use parammp::io::{drawing_coordinates, parse_plan, parse_problem, render_svg, serialize_plan, serialize_problem, ProblemDocument};
use parammp::verification::{random_query, seeded_rng, DEFAULT_RANGE};
use parammp::{plan, FrameMode, PlanOptions, Point, Query, SegmentKind};

fn parse_points(attr: &str) -> Vec<(f64, f64)> {
    attr.split_whitespace()
        .map(|pair| {
            let (x, y) = pair.split_once(',').unwrap();
            (x.parse().unwrap(), y.parse().unwrap())
        })
        .collect()
}

#[test]
fn svg_is_well_formed_and_markers_match() {
    let mut rng = seeded_rng(21);
    for (n, m, d, mode) in [(2, 2, 2, FrameMode::Fixed), (2, 2, 3, FrameMode::Fixed), (2, 3, 4, FrameMode::ObstaclePair)] {
        let q = random_query(&mut rng, n, m, d, DEFAULT_RANGE);
        let r = plan(&q, &PlanOptions::with_mode(mode)).unwrap();
        let svg = render_svg(&r, 32);
        assert_eq!(svg, render_svg(&r, 32));
        let doc = roxmltree::Document::parse(&svg).unwrap();
        let obstacles: Vec<_> = doc
            .descendants()
            .filter(|e| e.attribute("class") == Some("obstacle"))
            .collect();
        assert_eq!(obstacles.len(), m);
        for (node, o) in obstacles.iter().zip(q.obstacles()) {
            let (x, y) = drawing_coordinates(&r, o);
            assert_eq!(node.attribute("cx").unwrap().parse::<f64>().unwrap(), x);
            assert_eq!(node.attribute("cy").unwrap().parse::<f64>().unwrap(), y);
        }
        let robots = doc.descendants().filter(|e| e.attribute("class") == Some("robot")).count();
        assert_eq!(robots, n);
    }
}

#[test]
fn arc_polylines_respect_chord_error() {
    // Two robots that must trade places: the turn is a half circle in the plane.
    let p = |v: &[f64]| Point(v.to_vec());
    let q = Query::new(2, vec![p(&[0., 5.]), p(&[2., 7.])], vec![p(&[3., 9.]), p(&[1., 9.])], vec![p(&[10., 0.])]).unwrap();
    let r = plan(&q, &PlanOptions::with_mode(FrameMode::Fixed)).unwrap();
    assert_eq!(r.swap_count, 1);
    let samples = 16;
    let svg = render_svg(&r, samples);
    let doc = roxmltree::Document::parse(&svg).unwrap();
    let mut arcs = 0;
    for (robot, group) in doc
        .descendants()
        .filter(|e| e.attribute("class") == Some("robot"))
        .enumerate()
    {
        let lines: Vec<_> = group.children().filter(|c| c.has_tag_name("polyline")).collect();
        let segs = r.path.segments(robot);
        assert_eq!(lines.len(), segs.len());
        for (line, seg) in lines.iter().zip(segs) {
            let SegmentKind::Arc { center, radius, angle_start, angle_end, .. } = &seg.kind else {
                continue;
            };
            assert_eq!(line.attribute("data-kind"), Some("arc"));
            let pts = parse_points(line.attribute("points").unwrap());
            let dtheta = (angle_end - angle_start).abs() / samples as f64;
            let bound = radius * dtheta * dtheta / 8.0;
            for w in pts.windows(2) {
                let mid = ((w[0].0 + w[1].0) / 2.0, (w[0].1 + w[1].1) / 2.0);
                let to_center = ((mid.0 - center[0]).powi(2) + (mid.1 - center[1]).powi(2)).sqrt();
                assert!(radius - to_center <= bound + 1e-12, "chord sag {} > {bound}", radius - to_center);
                for v in w {
                    let on = ((v.0 - center[0]).powi(2) + (v.1 - center[1]).powi(2)).sqrt();
                    assert!((on - radius).abs() <= 1e-9);
                }
            }
            arcs += 1;
        }
    }
    assert_eq!(arcs, 2);
}

#[test]
fn plan_json_round_trip_matches_evaluation() {
    let mut rng = seeded_rng(22);
    for _ in 0..30 {
        let q = random_query(&mut rng, 2, 3, 4, DEFAULT_RANGE);
        let r = plan(&q, &PlanOptions::default()).unwrap();
        let back = parse_plan(&serialize_plan(&r)).unwrap();
        for k in 0..=200 {
            let t = k as f64 / 200.0;
            let a = r.path.evaluate(t).unwrap();
            let b = back.evaluate(t).unwrap();
            for (x, y) in a.robots.iter().zip(&b.robots) {
                assert!(x.dist(y) <= 1e-12);
            }
        }
    }
}

#[test]
fn problem_round_trip_on_random_documents() {
    let mut rng = seeded_rng(23);
    for k in 0..50 {
        let q = random_query(&mut rng, 1 + k % 3, 1 + k % 4, 2 + k % 3, DEFAULT_RANGE);
        let doc = ProblemDocument::from_query(&q, Some(FrameMode::Fixed));
        let text = serialize_problem(&doc);
        let again = parse_problem(&text).unwrap();
        assert_eq!(again, doc);
        assert_eq!(serialize_problem(&again), text);
        assert_eq!(again.query().unwrap(), q);
    }
}
