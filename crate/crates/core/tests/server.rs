use std::io::{Read, Write};
use std::net::{SocketAddr, TcpStream};
use std::sync::mpsc;
use std::sync::OnceLock;

use implify::api::{Api, Response};
use implify::dataset;
use serde_json::{json, Value};

fn api() -> &'static Api {
    static API: OnceLock<Api> = OnceLock::new();
    API.get_or_init(|| Api::new(dataset::spm2003(), false).unwrap())
}

fn get(path: &str, query: Option<&str>) -> Response {
    api().handle("GET", path, query, b"")
}

fn post(path: &str, body: Value) -> Response {
    api().handle("POST", path, None, body.to_string().as_bytes())
}

#[test]
fn every_success_carries_the_content_hash() {
    let hash = implify::format::content_hash(&dataset::spm2003());
    for path in ["/api/properties", "/api/table", "/api/open", "/api/rank"] {
        let r = get(path, None);
        assert_eq!(r.status, 200, "{path}");
        assert_eq!(r.body["hash"], hash.as_str(), "{path}");
    }
}

#[test]
fn properties_and_table() {
    let props = get("/api/properties", None).body;
    assert_eq!(props["properties"].as_array().unwrap().len(), 22);
    assert_eq!(props["properties"][19]["name"], "Ufin(Γ,T)");
    assert_eq!(props["properties"][19]["crit"], "max(s,b)");
    assert_eq!(props["properties"][1]["crit"], Value::Null);

    let table = get("/api/table", None).body;
    assert_eq!(table["n"], 22);
    assert_eq!(table["open"], 76);
    assert_eq!(table["entries"].as_array().unwrap().len(), 484);
    assert_eq!(table["entries"][5], "open");

    let open = get("/api/open", None).body;
    assert_eq!(open["count"], 76);
    assert_eq!(open["open"][0], json!([0, 5]));
}

#[test]
fn what_if_contract() {
    let r = post("/api/whatif", json!({"i": 12, "j": 5, "value": "implies"}));
    assert_eq!(r.status, 200);
    assert_eq!(r.body["status"], "consistent");
    assert_eq!(r.body["open_before"], 76);
    assert_eq!(r.body["open_after"], 33);
    assert_eq!(r.body["settled"].as_array().unwrap().len(), 43);

    let r = post("/api/whatif", json!({"i": 18, "j": 13, "value": "not_implies"}));
    assert_eq!(r.body["open_after"], 70);
    assert_eq!(r.body["settled"][0], json!({"i": 18, "j": 13, "value": "not_implies"}));

    // Hypotheses fold: both at once are contradictory.
    let r = post(
        "/api/whatif",
        json!({"i": 12, "j": 5, "value": "implies", "extra": [{"i": 16, "j": 3, "value": "not_implies"}]}),
    );
    assert_eq!(r.status, 200);
    assert_eq!(r.body["status"], "refuted");
    assert_eq!(r.body["open_after"], Value::Null);
    assert!(r.body["conflict"]["message"].as_str().unwrap().contains("conflict at"));
}

#[test]
fn what_if_errors() {
    let r = post("/api/whatif", json!({"i": 40, "j": 5, "value": "implies"}));
    assert_eq!((r.status, r.body["error"]["code"].as_str()), (400, Some("out_of_range")));
    let r = post("/api/whatif", json!({"i": 1, "j": 5, "value": "perhaps"}));
    assert_eq!((r.status, r.body["error"]["code"].as_str()), (400, Some("bad_value")));
    let r = api().handle("POST", "/api/whatif", None, b"{not json");
    assert_eq!((r.status, r.body["error"]["code"].as_str()), (400, Some("bad_request")));
}

#[test]
fn rank_and_explain() {
    let r = get("/api/rank", Some("value=implies&top=1")).body;
    assert_eq!(
        r["ranking"],
        json!([{"i": 12, "j": 5, "value": "implies", "settled_count": 43, "open_after": 33}])
    );
    let r = get("/api/rank", Some("value=not_implies&top=1")).body;
    assert_eq!(r["ranking"][0]["i"], 16);
    assert_eq!(get("/api/rank", None).body["ranking"].as_array().unwrap().len(), 152);
    assert_eq!(get("/api/rank", Some("top=x")).status, 400);

    let r = get("/api/explain", Some("i=0&j=21"));
    assert_eq!(r.status, 200);
    assert_eq!(r.body["trace"]["steps"].as_array().unwrap().len(), 7);
    assert!(r.body["text"].as_str().unwrap().starts_with("(0,21) = 1"));

    let r = get("/api/explain", Some("i=0&j=5"));
    assert_eq!((r.status, r.body["error"]["code"].as_str()), (422, Some("entry_open")));
    let r = get("/api/explain", Some("i=0&j=99"));
    assert_eq!(r.status, 400);
}

#[test]
fn routing_errors() {
    assert_eq!(get("/api/nothing", None).status, 404);
    assert_eq!(api().handle("DELETE", "/api/table", None, b"").status, 405);
    assert_eq!(get("/api/whatif", None).status, 405);
}

fn http(addr: SocketAddr, request: &str) -> (u16, Value) {
    let mut s = TcpStream::connect(addr).unwrap();
    s.write_all(request.as_bytes()).unwrap();
    let mut raw = String::new();
    s.read_to_string(&mut raw).unwrap();
    let status = raw[9..12].parse().unwrap();
    let body = raw.split_once("\r\n\r\n").unwrap().1;
    (status, serde_json::from_str(body).unwrap())
}

#[test]
fn serves_over_http() {
    let (tx, rx) = mpsc::channel();
    std::thread::spawn(move || {
        let api = Api::new(dataset::spm2003(), false).unwrap();
        implify::server::run(api, "127.0.0.1:0".parse().unwrap(), |a| tx.send(a).unwrap()).unwrap();
    });
    let addr = rx.recv().unwrap();

    let (status, body) = http(
        addr,
        "GET /api/table HTTP/1.1\r\nHost: x\r\nConnection: close\r\n\r\n",
    );
    assert_eq!((status, body["open"].clone()), (200, json!(76)));

    let payload = r#"{"i":16,"j":3,"value":"not_implies"}"#;
    let (status, body) = http(
        addr,
        &format!(
            "POST /api/whatif HTTP/1.1\r\nHost: x\r\nContent-Type: application/json\r\n\
             Content-Length: {}\r\nConnection: close\r\n\r\n{payload}",
            payload.len()
        ),
    );
    assert_eq!((status, body["open_after"].clone()), (200, json!(47)));

    let (status, body) = http(addr, "GET /nope HTTP/1.1\r\nHost: x\r\nConnection: close\r\n\r\n");
    assert_eq!((status, body["error"]["code"].clone()), (404, json!("not_found")));
}
