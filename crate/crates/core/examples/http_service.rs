//! Driving the HTTP API in-process, the way the facilitator front end does.
//!
//! `cargo run --example http_service`
//!
//! To run the real server instead: `repgrid serve --port 8080 --data-dir ./sessions`.

use std::sync::Arc;

use axum::body::Body;
use axum::http::{Method, Request};
use http_body_util::BodyExt;
use repgrid::SessionStore;
use tower::ServiceExt;

async fn call(app: &axum::Router, method: Method, uri: &str, body: &str) -> (u16, String) {
    let req = Request::builder()
        .method(method)
        .uri(uri)
        .header("content-type", "application/json")
        .header("x-actor", "facilitator")
        .body(Body::from(body.to_owned()))
        .unwrap();
    let resp = app.clone().oneshot(req).await.unwrap();
    let status = resp.status().as_u16();
    let bytes = resp.into_body().collect().await.unwrap().to_bytes();
    (status, String::from_utf8_lossy(&bytes).into_owned())
}

#[tokio::main(flavor = "current_thread")]
async fn main() {
    let dir = std::env::temp_dir().join(format!("repgrid-http-{}", std::process::id()));
    let app = repgrid::service::router(Arc::new(SessionStore::open(&dir).unwrap()));

    let (status, _) = call(&app, Method::POST, "/sessions", r#"{"id": "demo"}"#).await;
    println!("create: {status}");

    call(&app, Method::POST, "/sessions/demo/phase", r#"{"phase": "CONSENSUS"}"#).await;
    for c in 1..=17 {
        for e in ["FREESTYLE", "HIGH", "MEDIUM", "LOW", "SCRIPTED"] {
            let v = if c == 16 && e == "FREESTYLE" { 3 } else { 2 };
            let uri = format!("/sessions/demo/consensus/C{c}/{e}");
            call(&app, Method::PUT, &uri, &format!(r#"{{"rating": {v}, "rationale": ""}}"#)).await;
        }
    }
    call(&app, Method::POST, "/sessions/demo/phase", r#"{"phase": "PRIORITIZATION"}"#).await;

    let (status, body) = call(&app, Method::PUT, "/sessions/demo/priorities", r#"{"dollars": {"C16": 90}}"#).await;
    println!("bad vote: {status} {body}");
    call(&app, Method::PUT, "/sessions/demo/priorities", r#"{"dollars": {"C16": 60, "C1": 40}}"#).await;

    let (_, body) = call(&app, Method::GET, "/sessions/demo/recommendation", "").await;
    let json: serde_json::Value = serde_json::from_str(&body).unwrap();
    for e in ["FREESTYLE", "HIGH", "MEDIUM", "LOW", "SCRIPTED"] {
        println!("  {e:<10} {}%", json["display_percentages"][e]);
    }

    let (_, csv) = call(&app, Method::GET, "/sessions/demo/report.csv", "").await;
    println!("report.csv tail: {}", csv.lines().last().unwrap());

    std::fs::remove_dir_all(&dir).unwrap();
}
