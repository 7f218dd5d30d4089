use serde_yaml::Value;

fn doc() -> Value {
    serde_yaml::from_str(include_str!("../openapi.yaml")).expect("valid yaml")
}

#[test]
fn every_route_is_documented() {
    let doc = doc();
    let paths = doc["paths"].as_mapping().unwrap();
    for (path, method) in [
        ("/sessions", "post"),
        ("/sessions/{id}", "get"),
        ("/sessions/{id}/try-group", "post"),
        ("/sessions/{id}/accept", "post"),
        ("/sessions/{id}/undo", "post"),
        ("/sessions/{id}/hint", "get"),
    ] {
        let item = paths.get(path).unwrap_or_else(|| panic!("missing {path}"));
        assert!(item.get(method).is_some(), "{method} {path}");
    }
    assert_eq!(paths.len(), 6);
}

#[test]
fn references_resolve() {
    let text = include_str!("../openapi.yaml");
    let doc = doc();
    for r in text.split("$ref: \"#/").skip(1) {
        let target = &r[..r.find('"').unwrap()];
        let mut node = &doc;
        for part in target.split('/') {
            node = node
                .get(part)
                .unwrap_or_else(|| panic!("dangling ref {target}"));
        }
    }
}
