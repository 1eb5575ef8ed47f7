use cubulate_web::{classify_value, special_check_value, torus_arrangement_value};

#[test]
fn two_slopes_give_a_four_by_four_grid() {
    let v = torus_arrangement_value("1,0 0,1", 1);
    let d = &v["dual"];
    assert_eq!(d["positions"].as_array().unwrap().len(), 16);
    assert_eq!(d["edges"].as_array().unwrap().len(), 24);
    assert_eq!(d["squares"].as_array().unwrap().len(), 9);
    assert_eq!(d["interior_vertices"], 4);
    assert_eq!(v["lines"].as_array().unwrap().len(), 6);
}

#[test]
fn three_slopes_give_a_cubical_grid() {
    let d = &torus_arrangement_value("1,0;0,1;1,1", 1)["dual"];
    assert_eq!(d["dimension"], 3);
    assert_eq!(d["positions"].as_array().unwrap().len(), 64);
    assert_eq!(d["interior_vertices"], 8);
}

#[test]
fn bad_slopes_report_errors() {
    for s in ["", "1,0 1,0", "1;0", "x,1", "0,0"] {
        assert!(torus_arrangement_value(s, 1)["error"].is_string(), "{s}");
    }
    assert!(torus_arrangement_value("1,0", 0)["error"].is_string());
}

#[test]
fn classify_reports_verdicts_and_errors() {
    let sol = classify_value("block M hyperbolic boundaries=0\ngeometry Sol\n");
    assert_eq!(sol["vcs"], false);
    assert_eq!(sol["summary"], "VCS: no (geometric: Sol)");
    let bad = classify_value("torus T A.0 B.0 glue=1,0,0,1\n");
    assert!(bad["error"].as_str().unwrap().contains("error[unknown-block]"));
}

#[test]
fn moebius_strip_is_not_special() {
    let v = special_check_value("vertex A\nvertex B\nvertex p\nvertex q\ncube 2 A p B q\ncube 2 p B q A\n");
    assert_eq!(v["npc"], true);
    assert_eq!(v["special"], false);
    let planes = v["hyperplanes"].as_array().unwrap();
    assert_eq!(planes.iter().filter(|h| h["one_sided"] == true).count(), 1);
}
