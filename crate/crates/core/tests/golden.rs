use phisoft::aggregation::{pfwa_geometric, weights_from_importances};
use phisoft::decision::{decide, DecisionConfig, RankingLine};
use phisoft::io::parse_csv;
use phisoft::laws::pfwa_fold;
use phisoft::{OrderKind, PfnOrdering, Pfn, PhiSoftSet};

const EXPERT_X: &str = include_str!("../../../data/physician_x.csv");
const EXPERT_Y: &str = include_str!("../../../data/physician_y.csv");

type Col = (&'static str, [(f64, f64); 4]);

const ALTS: [&str; 4] = ["p1", "p2", "p3", "p4"];

// Reference cell lists for the extended union and intersection.
const Z_LIST: [Col; 5] = [
    ("s1", [(0.7, 0.7), (0.5, 0.6), (0.5, 0.4), (0.7, 0.5)]),
    ("s2", [(0.6, 0.6), (0.1, 0.7), (0.3, 0.4), (0.5, 0.4)]),
    ("s3", [(0.6, 0.2), (0.4, 0.5), (0.9, 0.2), (0.6, 0.2)]),
    ("s5", [(0.8, 0.4), (0.8, 0.1), (0.6, 0.4), (0.6, 0.4)]),
    ("s6", [(0.4, 0.5), (0.5, 0.5), (0.6, 0.2), (0.8, 0.5)]),
];
const Z_IMPORTANCE: [(&str, (f64, f64)); 5] =
    [("s1", (0.5, 0.4)), ("s2", (0.1, 0.6)), ("s3", (0.7, 0.2)), ("s5", (0.4, 0.5)), ("s6", (0.6, 0.3))];

const T_LIST: [Col; 5] = [
    ("s1", [(0.7, 0.7), (0.5, 0.6), (0.5, 0.4), (0.7, 0.5)]),
    ("s2", [(0.6, 0.6), (0.1, 0.7), (0.3, 0.4), (0.5, 0.4)]),
    ("s3", [(0.4, 0.6), (0.3, 0.5), (0.7, 0.4), (0.5, 0.2)]),
    ("s5", [(0.6, 0.6), (0.5, 0.3), (0.2, 0.5), (0.5, 0.4)]),
    ("s6", [(0.1, 0.7), (0.2, 0.6), (0.4, 0.5), (0.5, 0.5)]),
];
const T_IMPORTANCE: [(&str, (f64, f64)); 5] =
    [("s1", (0.5, 0.4)), ("s2", (0.1, 0.6)), ("s3", (0.7, 0.2)), ("s5", (0.3, 0.6)), ("s6", (0.6, 0.3))];

// Reference restricted intersection.
const TR_TABLE: [Col; 3] = [
    ("s3", [(0.4, 0.6), (0.3, 0.5), (0.7, 0.4), (0.5, 0.2)]),
    ("s5", [(0.6, 0.6), (0.5, 0.3), (0.2, 0.5), (0.5, 0.4)]),
    ("s6", [(0.1, 0.7), (0.2, 0.6), (0.4, 0.5), (0.5, 0.5)]),
];

fn tables() -> (PhiSoftSet, PhiSoftSet) {
    (parse_csv(EXPERT_X.as_bytes()).unwrap(), parse_csv(EXPERT_Y.as_bytes()).unwrap())
}

fn p(m: f64, n: f64) -> Pfn {
    Pfn::new(m, n).unwrap()
}

fn exact(set: &PhiSoftSet, alt: &str, param: &str) -> (f64, f64) {
    let c = set.cell(alt, param).unwrap();
    (c.m(), c.n())
}

/// Cells that differ from the list, as `(alt, param, computed)`.
fn mismatches(set: &PhiSoftSet, list: &[Col]) -> Vec<(&'static str, &'static str, (f64, f64))> {
    let mut out = Vec::new();
    for (param, col) in list {
        for (alt, &want) in ALTS.iter().zip(col) {
            let got = exact(set, alt, param);
            if got != want {
                out.push((*alt, *param, got));
            }
        }
    }
    out
}

#[test]
fn inputs_parse() {
    let (x, y) = tables();
    let names = |s: &PhiSoftSet| s.parameters().iter().map(|p| p.name().to_string()).collect::<Vec<_>>();
    assert_eq!(names(&x), ["s1", "s3", "s5", "s6"]);
    assert_eq!(names(&y), ["s2", "s3", "s5", "s6"]);
    assert_eq!(exact(&x, "p3", "s3"), (0.9, 0.2));
    assert_eq!(y.parameter("s2").unwrap().importance(), p(0.1, 0.6));
}

#[test]
fn extended_union_matches_reference_except_one_cell() {
    let (x, y) = tables();
    let z = x.extended_union(&y).unwrap();
    assert_eq!(z.parameters().iter().map(|p| p.name()).collect::<Vec<_>>(), ["s1", "s2", "s3", "s5", "s6"]);
    // (0.8,0.4) ∨ (0.5,0.5) = (0.8,0.4); the reference has (0.8,0.5)
    assert_eq!(mismatches(&z, &Z_LIST), [("p4", "s6", (0.8, 0.4))]);
    for (name, (m, n)) in Z_IMPORTANCE {
        assert_eq!(z.parameter(name).unwrap().importance(), p(m, n), "{name}");
    }
}

#[test]
fn extended_intersection_matches_reference() {
    let (x, y) = tables();
    let t = x.extended_intersection(&y).unwrap();
    assert!(mismatches(&t, &T_LIST).is_empty(), "{:?}", mismatches(&t, &T_LIST));
    for (name, (m, n)) in T_IMPORTANCE {
        assert_eq!(t.parameter(name).unwrap().importance(), p(m, n), "{name}");
    }
}

#[test]
fn reference_union_table_divergences() {
    let (x, y) = tables();
    let z = x.extended_union(&y).unwrap();
    // the reference table has (0.9,0.4) where its cell list and the join give (0.9,0.2)
    assert_eq!(exact(&z, "p3", "s3"), (0.9, 0.2));
    assert_ne!(exact(&z, "p3", "s3"), (0.9, 0.4));
    assert_ne!(exact(&z, "p4", "s6"), (0.8, 0.5));
}

#[test]
fn restricted_union_matches_reference_lists() {
    let (x, y) = tables();
    let zr = x.restricted_union(&y).unwrap();
    let list: Vec<Col> = Z_LIST.iter().filter(|(s, _)| ["s3", "s5", "s6"].contains(s)).copied().collect();
    assert_eq!(mismatches(&zr, &list), [("p4", "s6", (0.8, 0.4))]);
    // the reference restricted-union table has row p4 = (0.6,0.2),(0.4,0.5),(0.6,0.3)
    assert_eq!(exact(&zr, "p4", "s3"), (0.6, 0.2));
    assert_ne!(exact(&zr, "p4", "s5"), (0.4, 0.5));
    assert_ne!(exact(&zr, "p4", "s6"), (0.6, 0.3));
    assert_eq!(zr.parameter("s5").unwrap().importance(), p(0.4, 0.5));
}

#[test]
fn restricted_intersection_matches_reference() {
    let (x, y) = tables();
    let tr = x.restricted_intersection(&y).unwrap();
    assert!(mismatches(&tr, &TR_TABLE).is_empty());
    assert_eq!(tr.parameter("s5").unwrap().importance(), p(0.3, 0.6));
    let t = x.extended_intersection(&y).unwrap();
    assert!(t.project(&["s3", "s5", "s6"]).unwrap().equals(&tr));
}

#[test]
fn importance_expectation_scores() {
    let (x, y) = tables();
    let t = x.extended_intersection(&y).unwrap();
    let es: Vec<f64> = t.importances().iter().map(|f| f.expectation_score()).collect();
    for (got, want) in es.iter().zip([0.545, 0.325, 0.725, 0.365, 0.635]) {
        assert!((got - want).abs() < 1e-15, "{got} vs {want}");
    }
}

#[test]
fn weight_vector() {
    let (x, y) = tables();
    let w = weights_from_importances(x.extended_intersection(&y).unwrap().parameters()).unwrap();
    let want = [0.21001927, 0.12524085, 0.27938343, 0.14065510, 0.24470135];
    for (got, want) in w.as_slice().iter().zip(want) {
        assert!((got - want).abs() < 1e-8, "{got} vs {want}");
    }
}

#[test]
fn decision_values() {
    let (x, y) = tables();
    let report = decide(&x, &y, DecisionConfig::default()).unwrap();
    let t = &report.combined;
    for row in &report.rows {
        let fold = pfwa_fold(t.row(row.alt.as_str()).unwrap(), &report.weights);
        assert!(row.apfdv.approx_eq_within(&fold, 1e-12), "{}", row.alt);
    }
    let reference = [(0.6314, 0.6434), (0.3601, 0.5271), (0.5156, 0.4358), (0.5554, 0.3642)];
    let derived = [(0.5172, 0.6436), (0.3596, 0.5273), (0.5154, 0.4359), (0.5553, 0.3648)];
    for ((row, pr), de) in report.rows.iter().zip(reference).zip(derived) {
        assert!(row.apfdv.approx_eq_within(&p(de.0, de.1), 1e-3), "{} {}", row.alt, row.apfdv);
        if row.alt.as_str() == "p1" {
            assert!((row.apfdv.m() - pr.0).abs() > 0.1);
        } else {
            assert!(row.apfdv.approx_eq_within(&p(pr.0, pr.1), 1e-3), "{}", row.alt);
        }
    }
    let es: Vec<f64> = report.rows.iter().map(|r| r.es).collect();
    assert!(es[0] - es[1] > 5e-4 && es[0] - es[1] < 2e-3, "{es:?}");
}

#[test]
fn ranking() {
    let (x, y) = tables();
    let report = decide(&x, &y, DecisionConfig::default()).unwrap();
    assert_eq!(RankingLine(&report.ranking).to_string(), "p4 > p3 > p1 > p2");
    assert_eq!(report.optimal().as_str(), "p4");
    let ranks: Vec<usize> = report.rows.iter().map(|r| r.rank).collect();
    assert_eq!(ranks, [3, 4, 2, 1]);
}

#[test]
fn p3_and_p4_via_closed_form() {
    let (x, y) = tables();
    let t = x.extended_intersection(&y).unwrap();
    let w = weights_from_importances(t.parameters()).unwrap();
    let p3 = pfwa_geometric(t.row("p3").unwrap(), &w).unwrap();
    assert!(p3.approx_eq_within(&p(0.5156, 0.4358), 5e-4), "{p3}");
}

#[test]
fn score_tie_pair() {
    let a = p(0.481, 0.402);
    let b = p(0.527, 0.456);
    let trunc = |x: f64| (x * 1e4).floor() / 1e4;
    assert_eq!(trunc(a.score()), 0.0697);
    assert_eq!(trunc(b.score()), 0.0697);
    assert_eq!(format!("{:.4}", a.score()), format!("{:.4}", b.score()));
    assert!(b.accuracy() > a.accuracy());
    assert_eq!(b.compare(&a, OrderKind::ScoreAccuracy), PfnOrdering::Greater);
}
