//! The JSON API answered in-process, without a socket. `implify serve`
//! exposes the same handler over HTTP.

use implify::api::Api;
use implify::dataset;

fn main() {
    let api = Api::new(dataset::spm2003(), false).unwrap();
    let show = |method: &str, path: &str, query: Option<&str>, body: &str| {
        let r = api.handle(method, path, query, body.as_bytes());
        let mut v = r.body;
        // The full tables are long; keep the output readable.
        if let Some(o) = v.as_object_mut() {
            o.remove("table");
            o.remove("entries");
        }
        println!("{method} {path} -> {}\n{v:#}\n", r.status);
    };
    show("GET", "/api/table", None, "");
    show("GET", "/api/rank", Some("value=not_implies&top=3"), "");
    show("POST", "/api/whatif", None, r#"{"i":18,"j":13,"value":"not_implies"}"#);
    show("GET", "/api/explain", Some("i=0&j=5"), "");
}
