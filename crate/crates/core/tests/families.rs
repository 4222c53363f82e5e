use hjekr::families::file::FamilyFile;
use hjekr::families::stripes::{unit_span, Stripes};
use hjekr::families::{bound_catalog, construction_registry, eta_image_family, Semantics};
use hjekr::registry::Params;
use hjekr::search::{instance_registry, max_clique, Budget, Status};
use hjekr::Ring;

fn ring(spec: &str) -> Ring {
    Ring::new(&spec.parse().unwrap()).unwrap()
}

#[test]
fn every_construction_round_trips_through_json() {
    let reg = construction_registry();
    for c in reg.iter() {
        let p: Params = if c.id().contains("stripes") {
            "ring=dual:q=2,s=0".parse().unwrap()
        } else {
            "ring=dual:q=2,s=0;n=4;k=2;t=1".parse().unwrap()
        };
        let fam = c.build(&p).unwrap();
        let back = FamilyFile::from_json(&FamilyFile::from_family(&fam).to_json()).unwrap().to_family().unwrap();
        assert_eq!(back.members, fam.members, "{}", c.id());
        assert_eq!(back.construction, c.id());
        assert!(back.validate_by_elements().unwrap().passed(), "{}", c.id());
        assert!(eta_image_family(&fam, 1).unwrap().validate().unwrap().passed(), "{}", c.id());
    }
}

#[test]
fn constructions_reject_bad_parameters() {
    let reg = construction_registry();
    let canonical = reg.get("canonical").unwrap();
    assert!(canonical.build(&"ring=gr:p=2,r=1;n=4;k=2;t=2".parse().unwrap()).is_err());
    assert!(canonical.build(&"n=4;k=2;t=1".parse().unwrap()).is_err());
    assert!(reg.get("codual").unwrap().build(&"ring=gr:p=2,r=1;n=5;k=2;t=1".parse().unwrap()).is_err());
    assert!(reg.get("stripes").unwrap().build(&"ring=gr:p=2,r=1;q=3".parse().unwrap()).is_err());
    assert!(reg.get("stripes").unwrap().build(&"ring=gf:q=2".parse().unwrap()).is_err());
}

#[test]
fn exact_semantics_is_stricter() {
    let fam = construction_registry().get("stripes").unwrap().build(&"ring=gr:p=2,r=1".parse().unwrap()).unwrap();
    let mut strict = fam.clone();
    strict.problem = strict.problem.clone().with_semantics(Semantics::Exact);
    // stripes inside H meet in more than a point
    assert!(!strict.validate().unwrap().passed());
    assert!(fam.validate().unwrap().passed());
}

#[test]
fn stripes_over_dual_numbers_match_z4() {
    let r = ring("dual:q=2,s=0");
    let s = Stripes::new(&r).unwrap();
    assert_eq!(s.len(), 420);
    let split = s.split_by_hyperplane(&unit_span(&r, 4, 0..3)).unwrap();
    assert_eq!((split.in_class.len(), split.direction.len(), split.inside.len()), (84, 28, 7));
    let res = max_clique(&s.graph(), Budget::UNLIMITED);
    assert_eq!(res.status, Status::Exact);
    assert_eq!(res.size, 63);
}

#[test]
fn splitter_agrees_with_full_search() {
    let reg = instance_registry();
    let p = "ring=gr:p=2,r=1".parse().unwrap();
    let full = reg.get("stripes").unwrap().solve(&p, Budget::UNLIMITED).unwrap();
    let split = reg.get("stripes-split").unwrap().solve(&p, Budget::UNLIMITED).unwrap();
    assert_eq!(full.size, split.size);
    assert_eq!(split.comparison("pencil-or-plane"), Some("true"));
    assert_eq!((full.vertices, full.edges), (split.vertices, split.edges));
    assert_ne!(full.hash, split.hash);
}

#[test]
fn catalog_is_complete() {
    let ids = bound_catalog().ids();
    for id in ["ekr", "ekr1", "hm", "hsieh", "tanaka", "tanaka-phg", "hjelmslev-ekr", "stripes-plane", "stripes-hyperplane"] {
        assert!(ids.contains(&id), "{id}");
    }
}
