//! HTTP transport for [`Api`].

use std::net::SocketAddr;
use std::sync::Arc;

use axum::body::Bytes;
use axum::extract::State;
use axum::http::{header, Method, StatusCode, Uri};
use axum::response::{IntoResponse, Response};
use axum::Router;
use tokio::net::TcpListener;

use crate::api::Api;

async fn dispatch(State(api): State<Arc<Api>>, method: Method, uri: Uri, body: Bytes) -> Response {
    let r = api.handle(method.as_str(), uri.path(), uri.query(), &body);
    let status = StatusCode::from_u16(r.status).unwrap_or(StatusCode::INTERNAL_SERVER_ERROR);
    (
        status,
        [(header::CONTENT_TYPE, "application/json")],
        r.body.to_string(),
    )
        .into_response()
}

pub fn router(api: Arc<Api>) -> Router {
    Router::new().fallback(dispatch).with_state(api)
}

/// Serves until the listener fails.
pub async fn serve(api: Arc<Api>, listener: TcpListener) -> std::io::Result<()> {
    axum::serve(listener, router(api)).await
}

/// Binds `addr` and serves on a fresh runtime, blocking the caller.
/// `on_bound` sees the bound address before the first request is accepted.
pub fn run(api: Api, addr: SocketAddr, on_bound: impl FnOnce(SocketAddr)) -> std::io::Result<()> {
    let rt = tokio::runtime::Builder::new_multi_thread()
        .enable_io()
        .build()?;
    rt.block_on(async move {
        let listener = TcpListener::bind(addr).await?;
        on_bound(listener.local_addr()?);
        serve(Arc::new(api), listener).await
    })
}
